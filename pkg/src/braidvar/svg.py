"""Deterministic SVG rendering of fronts, rulings and morphisms.

Layout is fixed-grid and all coordinates are formatted with one decimal, so
identical inputs produce byte-identical documents.
"""

from __future__ import annotations

from .braids import BraidWord
from .rulings import DEPARTURE, SWITCH, NormalRuling
from .weaves import Morphism

_STEP_X = 40.0
_STEP_Y = 30.0
_MARGIN = 20.0


def _fmt(x: float) -> str:
    return f"{x:.1f}"


def _document(width: float, height: float, body: list[str]) -> str:
    head = (
        '<svg xmlns="http://www.w3.org/2000/svg" '
        f'width="{_fmt(width)}" height="{_fmt(height)}" '
        f'viewBox="0 0 {_fmt(width)} {_fmt(height)}">'
    )
    return "\n".join([head, *body, "</svg>"]) + "\n"


def render_ruling(braid: BraidWord, rho: NormalRuling | None = None) -> str:
    """Front of the braid with one column per letter; switch crossings are
    dotted, departures dashed."""
    n = braid.n
    r = len(braid.letters)
    width = 2 * _MARGIN + (r + 1) * _STEP_X
    height = 2 * _MARGIN + (n - 1) * _STEP_Y

    def ypos(strand: int) -> float:
        # strand 1 is drawn at the bottom
        return height - _MARGIN - (strand - 1) * _STEP_Y

    body = []
    positions = list(range(1, n + 1))
    xs = _MARGIN
    paths: dict[int, list[tuple[float, float]]] = {
        s: [(xs, ypos(s))] for s in positions
    }
    strand_at = {s: s for s in positions}  # position -> strand label
    for k, gen in enumerate(braid.letters):
        x1 = _MARGIN + (k + 1) * _STEP_X
        lo, hi = strand_at[gen], strand_at[gen + 1]
        for pos in positions:
            s = strand_at[pos]
            target = pos
            if pos == gen:
                target = gen + 1
            elif pos == gen + 1:
                target = gen
            paths[s].append((x1, ypos(target)))
        strand_at[gen], strand_at[gen + 1] = hi, lo
        label = rho.labels[k] if rho else None
        style = ""
        if label == SWITCH:
            style = ' stroke-dasharray="2,2"'
        elif label == DEPARTURE:
            style = ' stroke-dasharray="6,3"'
        cx = x1 - _STEP_X / 2
        cy = (ypos(gen) + ypos(gen + 1)) / 2
        body.append(
            f'<circle class="crossing{" " + label if label else ""}" '
            f'cx="{_fmt(cx)}" cy="{_fmt(cy)}" r="3.0" fill="none" stroke="black"{style}/>'
        )
    x_end = _MARGIN + (r + 1) * _STEP_X
    for pos in positions:
        paths[strand_at[pos]].append((x_end, ypos(pos)))
    for s in sorted(paths):
        pts = " ".join(f"{_fmt(x)},{_fmt(y)}" for x, y in paths[s])
        body.append(
            f'<polyline class="strand" points="{pts}" fill="none" stroke="black"/>'
        )
    return _document(width, height, body)


def render_weave(m: Morphism) -> str:
    """Layers stacked top to bottom; letters evenly spaced; trivalent moves
    drawn as filled triangles, cups as arcs, hexavalent moves as diamonds."""
    width = 2 * _MARGIN + max(len(layer) for layer in m.layers) * _STEP_X + _STEP_X
    height = 2 * _MARGIN + (len(m.layers) - 1) * _STEP_Y

    def xy(layer: int, pos: int) -> tuple[float, float]:
        return (_MARGIN + (pos + 1) * _STEP_X, _MARGIN + layer * _STEP_Y)

    body = []
    for k, layer in enumerate(m.layers):
        for pos, gen in enumerate(layer):
            x, y = xy(k, pos)
            body.append(
                f'<text class="letter" x="{_fmt(x)}" y="{_fmt(y)}" '
                f'font-size="10" text-anchor="middle">{gen}</text>'
            )
    for k, move in enumerate(m.moves):
        p = move.pos
        x0, y0 = xy(k, p)
        x1, y1 = xy(k + 1, p)
        ym = (y0 + y1) / 2
        if move.kind == "trivalent":
            body.append(
                f'<path class="trivalent" d="M {_fmt(x0 - 4)} {_fmt(ym - 4)} '
                f'L {_fmt(x0 + 4)} {_fmt(ym - 4)} L {_fmt(x0)} {_fmt(ym + 4)} Z" '
                'fill="black"/>'
            )
        elif move.kind == "cup":
            body.append(
                f'<path class="cup" d="M {_fmt(x0 - 6)} {_fmt(ym - 4)} '
                f'A 6.0 6.0 0 0 0 {_fmt(x0 + 6)} {_fmt(ym - 4)}" '
                'fill="none" stroke="black"/>'
            )
        elif move.kind == "hexavalent":
            body.append(
                f'<path class="hexavalent" d="M {_fmt(x0)} {_fmt(ym - 4)} '
                f'L {_fmt(x0 + 4)} {_fmt(ym)} L {_fmt(x0)} {_fmt(ym + 4)} '
                f'L {_fmt(x0 - 4)} {_fmt(ym)} Z" fill="none" stroke="black"/>'
            )
        else:
            body.append(
                f'<line class="distant" x1="{_fmt(x0 - 4)}" y1="{_fmt(ym)}" '
                f'x2="{_fmt(x0 + 4 + _STEP_X)}" y2="{_fmt(ym)}" stroke="black"/>'
            )
    return _document(width, height, body)
