"""Morse complex sequences as decorated braid words.

A state is an ordered list of atoms along the front: letters (a crossing
fused with the handleslide mark immediately to its left), free handleslide
marks and marked points.  Decorations are either *pinned* (they belong to
the structure, like the mark pair of a switch or the frame point of a
framed letter) or *mobile* (in transit to the right edge).

The monodromy of a state is the reversed-order product of the atom
matrices; every rewrite rule in this module preserves it exactly, which is
what the per-rule unit tests assert.  The transport rules are:

- two marks on the same strands merge additively,
- a mark crossing a letter on overlapping strands relabels its endpoints
  through the crossing and can spawn a second mark against the letter's
  value (the triangular-product identities),
- a mark on exactly the letter's strands is absorbed into its value,
- marked points rescale values they pass and slide along strands through
  crossings.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dataclass_field

from .braids import BraidWord
from .matrices import Handleslide, Letter, MarkedPoint, SquareMatrix, monodromy_product
from .rulings import DEPARTURE, RETURN, SWITCH, NormalRuling


@dataclass
class Cell:
    atom: object
    pinned: bool = False


@dataclass
class MCSState:
    n: int
    cells: list[Cell] = dataclass_field(default_factory=list)

    def atoms(self) -> list:
        return [c.atom for c in self.cells]

    def monodromy(self, field) -> SquareMatrix:
        return monodromy_product(self.atoms(), field, self.n)

    def dump(self) -> str:
        lines = []
        for c in self.cells:
            a = c.atom
            flag = "*" if c.pinned else " "
            if isinstance(a, Letter):
                lines.append(f"{flag} letter  s{a.i}  mark={a.value}")
            elif isinstance(a, Handleslide):
                lines.append(f"{flag} mark    ({a.i},{a.j})  value={a.value}")
            else:
                lines.append(f"{flag} point   strand {a.i}  value={a.value}")
        return "\n".join(lines)


class PieceMismatch(ValueError):
    """The supplied values do not lie in the piece of the given ruling."""


# -- one-step transport ------------------------------------------------------


def transport(mobile, obstacle, field):
    """Move ``mobile`` (a Handleslide or MarkedPoint) right past ``obstacle``.

    Returns ``(new_obstacle, moved)`` where ``moved`` is the list of mobile
    atoms now sitting to the right of the obstacle, in left-to-right order.
    ``new_obstacle is None`` signals that the mobile merged into a letter,
    whose replacement is then the first element of ``moved``.
    The defining property, checked exhaustively in the tests, is that the
    matrix product is unchanged.
    """
    if isinstance(mobile, Handleslide):
        u, v, c = mobile.i, mobile.j, mobile.value
        if isinstance(obstacle, Letter):
            i, z = obstacle.i, obstacle.value
            if (u, v) == (i, i + 1):
                return None, [Letter(i, z + c)]
            if v == i:
                return obstacle, [
                    Handleslide(u, i, -(c * z)),
                    Handleslide(u, i + 1, c),
                ]
            if u == i + 1:
                return obstacle, [
                    Handleslide(i + 1, v, c * z),
                    Handleslide(i, v, c),
                ]
            if u == i:
                return obstacle, [Handleslide(i + 1, v, c)]
            if v == i + 1:
                return obstacle, [Handleslide(u, i, c)]
            return obstacle, [mobile]
        if isinstance(obstacle, MarkedPoint):
            j, t = obstacle.i, obstacle.value
            if u == j:
                return obstacle, [Handleslide(u, v, t * c)]
            if v == j:
                return obstacle, [Handleslide(u, v, c / t)]
            return obstacle, [mobile]
        if isinstance(obstacle, Handleslide):
            a, b, m = obstacle.i, obstacle.j, obstacle.value
            if b == u:
                return obstacle, [Handleslide(a, v, c * m), mobile]
            if a == v:
                return obstacle, [Handleslide(u, b, -(c * m)), mobile]
            return obstacle, [mobile]
    if isinstance(mobile, MarkedPoint):
        j, t = mobile.i, mobile.value
        if isinstance(obstacle, Letter):
            i, z = obstacle.i, obstacle.value
            if j == i:
                return Letter(i, z / t), [MarkedPoint(i + 1, t)]
            if j == i + 1:
                return Letter(i, z * t), [MarkedPoint(i, t)]
            return obstacle, [mobile]
        if isinstance(obstacle, MarkedPoint):
            return obstacle, [mobile]
        if isinstance(obstacle, Handleslide):
            a, b, m = obstacle.i, obstacle.j, obstacle.value
            one = field.one
            if j == a:
                return obstacle, [mobile, Handleslide(a, b, m * (one - t))]
            if j == b:
                return obstacle, [mobile, Handleslide(a, b, m * (t - one) / t)]
            return obstacle, [mobile]
    raise TypeError(f"cannot transport {mobile!r} past {obstacle!r}")


def push_right(state: MCSState, field, drop_at_edge: bool = False) -> MCSState:
    """Commute every mobile decoration as far right as it goes.

    Mobiles stop at the right edge, where they are removed only if
    ``drop_at_edge`` is set (end-of-front cleanup).  Monodromy is preserved
    exactly; with dropping it is preserved up to the removed upper
    triangular residue.
    """
    cells = [Cell(c.atom, c.pinned) for c in state.cells]
    changed = True
    while changed:
        changed = False
        i = 0
        while i < len(cells) - 1:
            cur, nxt = cells[i], cells[i + 1]
            if not cur.pinned and not isinstance(cur.atom, Letter):
                new_obstacle, moved = transport(cur.atom, nxt.atom, field)
                if new_obstacle is None:
                    replacement = [Cell(moved[0], nxt.pinned)] + [
                        Cell(a) for a in moved[1:]
                    ]
                else:
                    replacement = [Cell(new_obstacle, nxt.pinned)] + [
                        Cell(a) for a in moved
                    ]
                cells[i : i + 2] = replacement
                changed = True
            else:
                i += 1
    if drop_at_edge:
        while cells and not cells[-1].pinned and not isinstance(cells[-1].atom, Letter):
            cells.pop()
    return MCSState(state.n, cells)


def mcs_monodromy(state: MCSState, field) -> SquareMatrix:
    return state.monodromy(field)


# -- the A-form <-> SR-form sweep ---------------------------------------------


@dataclass
class SRData:
    """SR-form coordinates of a ruling's piece: return marks and switch
    marks (the right mark of a switch is minus the inverse of the left)."""

    ruling: NormalRuling
    returns: list  # (letter index, value)
    switches: list  # (letter index, value)

    def switch_values(self) -> list:
        return [v for _, v in self.switches]

    def return_values(self) -> list:
        return [v for _, v in self.returns]


def _sweep_letter(pendings: list, gen: int, value, framed: bool, field):
    """Push all pendings (left-to-right order) past one letter and, when
    framed, past its frame point on the lower strand.  Returns the letter's
    accumulated value and the surviving pendings."""
    out: list = []
    cur = value
    for mobile in reversed(pendings):
        obstacle, moved = transport(mobile, Letter(gen, cur), field)
        if obstacle is None:
            cur = moved[0].value
            moved = []
        if framed:
            point = MarkedPoint(gen, -field.one)
            passed = []
            for atom in moved:
                _, m2 = transport(atom, point, field)
                passed.extend(m2)
            moved = passed
        out = moved + out
    return cur, out


def a_to_sr(
    braid: BraidWord, rho: NormalRuling, a_values: list, field, framed: bool = False
) -> SRData:
    """Left-to-right sweep converting A-form marks to SR-form marks.

    At each switch the accumulated mark must be invertible (otherwise the
    point lies in a different ruling's piece); a canceling pair is created
    there whose traveling half rewrites everything to the right.  At each
    departure the accumulated mark must vanish.  With ``framed`` the sweep
    runs against the frame points of value -1 on the lower strand of every
    crossing, which is how the switch marks become the s-variables.
    """
    if rho.braid != braid:
        raise ValueError("ruling belongs to a different braid")
    if len(a_values) != len(braid.letters):
        raise ValueError("need one A-form value per letter")
    pendings: list = []
    returns, switches = [], []
    for k, (gen, label) in enumerate(zip(braid.letters, rho.labels)):
        cur, pendings = _sweep_letter(pendings, gen, a_values[k], framed, field)
        if label == RETURN:
            returns.append((k, cur))
        elif label == SWITCH:
            if not cur.is_unit():
                raise PieceMismatch(f"zero mark at switch letter {k}")
            switches.append((k, cur))
            created = cur.inv()
            if framed:
                created = -created
            pendings = [Handleslide(gen, gen + 1, created)] + pendings
        else:
            if not cur.is_zero():
                raise PieceMismatch(f"nonzero mark {cur} at departure letter {k}")
    return SRData(rho, returns, switches)


def sr_to_a(braid: BraidWord, rho: NormalRuling, sr: SRData, field, framed: bool = False) -> list:
    """Inverse sweep: reconstruct the A-form marks from SR-form data.

    Replays the forward sweep; at each letter the final accumulated value is
    known from the SR data, the merge contributions of the pendings are
    known, and their difference is the A-form mark.
    """
    ret_vals = dict(sr.returns)
    swi_vals = dict(sr.switches)
    pendings: list = []
    a_values: list = []
    for k, (gen, label) in enumerate(zip(braid.letters, rho.labels)):
        if label == RETURN:
            target = ret_vals[k]
        elif label == SWITCH:
            target = swi_vals[k]
        else:
            target = field.zero
        merge = field.zero
        for mobile in pendings:
            if isinstance(mobile, Handleslide) and (mobile.i, mobile.j) == (gen, gen + 1):
                merge = merge + mobile.value
        a_k = target - merge
        a_values.append(a_k)
        cur, pendings = _sweep_letter(pendings, gen, a_k, framed, field)
        if label == SWITCH:
            if not cur.is_unit():
                raise PieceMismatch(f"zero mark at switch letter {k}")
            created = cur.inv()
            if framed:
                created = -created
            pendings = [Handleslide(gen, gen + 1, created)] + pendings
    return a_values


# -- the rational coordinate change between chart and SR coordinates ---------


def _letter_indices(cells: list[Cell]) -> list[int]:
    return [idx for idx, c in enumerate(cells) if isinstance(c.atom, Letter)]


def _flush_mobiles(state: MCSState, field) -> MCSState:
    return push_right(state, field, drop_at_edge=True)


def f_map(morphism, params: list, field) -> SRData:
    """Backward pass through a right simplifying morphism in SR mode.

    Starting from the all-zero bottom layer, each trivalent move is undone
    by choosing the next invertible parameter y: the merged letter splits
    into a letter with value a - 1/y and a switch letter carrying (y, -1/y),
    and the compensating pair of marked points (-y on the lower strand,
    1/y on the upper) is pushed off to the right.  Cup moves are undone with
    a free parameter.  Parameters are consumed bottom-most move first, the
    same order as the chart embedding.  The result is read off the top
    layer as SR-form coordinates.
    """
    from .weaves import chart_param_shape, underlying_ruling

    rho = underlying_ruling(morphism)
    spec = chart_param_shape(morphism)
    if len(params) != len(spec):
        raise ValueError(f"need {len(spec)} parameters, got {len(params)}")
    by_move = {k: (kind, value) for (kind, k), value in zip(spec, params)}

    n = morphism.n
    cells = [Cell(Letter(gen, field.zero)) for gen in morphism.layers[-1]]
    for k in range(len(morphism.moves) - 1, -1, -1):
        move = morphism.moves[k]
        p = move.pos
        letters = _letter_indices(cells)
        if move.kind == "distant":
            a, b = letters[p], letters[p + 1]
            cells[a].atom, cells[b].atom = (
                Letter(cells[b].atom.i, cells[b].atom.value),
                Letter(cells[a].atom.i, cells[a].atom.value),
            )
        elif move.kind == "hexavalent":
            idx = [letters[p], letters[p + 1], letters[p + 2]]
            la, lb, lc = (cells[j].atom for j in idx)
            a, b, c = la.value, lb.value, lc.value
            cells[idx[0]].atom = Letter(lb.i, c)
            cells[idx[1]].atom = Letter(la.i, b + c * a)
            cells[idx[2]].atom = Letter(lb.i, a)
        elif move.kind == "trivalent":
            kind, y = by_move[k]
            if not y.is_unit():
                raise ValueError("trivalent parameter must be invertible")
            idx = letters[p]
            gen = cells[idx].atom.i
            a = cells[idx].atom.value
            group = [
                Cell(Letter(gen, a - y.inv())),
                Cell(Letter(gen, y)),
                Cell(Handleslide(gen, gen + 1, -y.inv()), pinned=True),
                Cell(MarkedPoint(gen, -y)),
                Cell(MarkedPoint(gen + 1, y.inv())),
            ]
            cells[idx : idx + 1] = group
            state = _flush_mobiles(MCSState(n, cells), field)
            cells = state.cells
        elif move.kind == "cup":
            kind, x = by_move[k]
            gen = morphism.layers[k][p]
            insert_at = letters[p] if p < len(letters) else len(cells)
            group = [
                Cell(Letter(gen, x)),
                Cell(Letter(gen, field.zero)),
                Cell(Handleslide(gen, gen + 1, -x)),
            ]
            cells[insert_at:insert_at] = group
            state = _flush_mobiles(MCSState(n, cells), field)
            cells = state.cells

    return _read_sr(cells, rho, field)


def _read_sr(cells: list[Cell], rho: NormalRuling, field) -> SRData:
    letters = _letter_indices(cells)
    if len(letters) != len(rho.labels):
        raise ValueError("state does not match the ruling's braid")
    returns, switches = [], []
    for k, (idx, label) in enumerate(zip(letters, rho.labels)):
        green = cells[idx].atom.value
        if label == RETURN:
            returns.append((k, green))
        elif label == SWITCH:
            dash = None
            if idx + 1 < len(cells) and isinstance(cells[idx + 1].atom, Handleslide):
                dash = cells[idx + 1].atom.value
            if dash is None or not (dash + green.inv()).is_zero():
                raise ValueError(
                    f"switch letter {k} is not in SR shape (dash != -1/mark)"
                )
            switches.append((k, green))
        else:
            if not green.is_zero():
                raise ValueError(f"departure letter {k} has nonzero mark")
    return SRData(rho, returns, switches)


def f_map_inverse(morphism, sr: SRData, field) -> list:
    """Forward SR pass recovering the chart parameters from SR coordinates.

    Runs the moves of the morphism forwards on the SR-form state; at each
    trivalent move the switch letter's mark is the recovered invertible
    parameter and at each cup move the left letter's mark is the recovered
    free parameter.  Parameters are returned in the same order that
    :func:`f_map` and the chart embedding consume them."""
    from .weaves import underlying_ruling

    rho = underlying_ruling(morphism)
    if sr.ruling.labels != rho.labels:
        raise ValueError("SR data belongs to a different ruling")
    ret_vals = dict(sr.returns)
    swi_vals = dict(sr.switches)
    n = morphism.n
    cells: list[Cell] = []
    for k, (gen, label) in enumerate(zip(morphism.layers[0], rho.labels)):
        if label == RETURN:
            cells.append(Cell(Letter(gen, ret_vals[k])))
        elif label == SWITCH:
            y = swi_vals[k]
            if not y.is_unit():
                raise ValueError(f"switch coordinate {k} must be invertible")
            cells.append(Cell(Letter(gen, y)))
            cells.append(Cell(Handleslide(gen, gen + 1, -y.inv()), pinned=True))
        else:
            cells.append(Cell(Letter(gen, field.zero)))

    recovered: dict[int, object] = {}
    for k, move in enumerate(morphism.moves):
        p = move.pos
        letters = _letter_indices(cells)
        if move.kind == "distant":
            a, b = letters[p], letters[p + 1]
            cells[a].atom, cells[b].atom = cells[b].atom, cells[a].atom
        elif move.kind == "hexavalent":
            idx = [letters[p], letters[p + 1], letters[p + 2]]
            la, lb, lc = (cells[j].atom for j in idx)
            x, y, z = la.value, lb.value, lc.value
            cells[idx[0]].atom = Letter(lb.i, z)
            cells[idx[1]].atom = Letter(la.i, y - x * z)
            cells[idx[2]].atom = Letter(lb.i, x)
        elif move.kind == "trivalent":
            ia, ib = letters[p], letters[p + 1]
            gen = cells[ia].atom.i
            x = cells[ia].atom.value
            y = cells[ib].atom.value
            dash_idx = ib + 1
            if not (
                dash_idx < len(cells)
                and isinstance(cells[dash_idx].atom, Handleslide)
                and cells[dash_idx].pinned
            ):
                raise ValueError("trivalent move does not meet a switch in SR shape")
            if not y.is_unit():
                raise PieceMismatch("switch mark vanished during the forward pass")
            recovered[k] = y
            group = [
                Cell(Letter(gen, x + y.inv())),
                Cell(MarkedPoint(gen, -y.inv())),
                Cell(MarkedPoint(gen + 1, y)),
            ]
            cells[ia : dash_idx + 1] = group
            cells = _flush_mobiles(MCSState(n, cells), field).cells
        elif move.kind == "cup":
            ia, ib = letters[p], letters[p + 1]
            gen = cells[ia].atom.i
            x = cells[ia].atom.value
            y = cells[ib].atom.value
            if not y.is_zero():
                raise PieceMismatch("departure mark is nonzero during the forward pass")
            recovered[k] = x
            cells[ia : ib + 1] = [Cell(Handleslide(gen, gen + 1, x))]
            cells = _flush_mobiles(MCSState(n, cells), field).cells

    for idx in _letter_indices(cells):
        if not cells[idx].atom.value.is_zero():
            raise PieceMismatch("bottom layer is not the zero point")
    order = [k for k in range(len(morphism.moves) - 1, -1, -1) if k in recovered]
    return [recovered[k] for k in order]
