"""Cluster variables of the initial seed of a right inductive morphism.

Three routes are implemented and cross-checked:

- ``s_variables``: the framed sweep over the braid itself (the A-to-SR
  conversion run against frame points of value -1), whose switch marks are
  the s-variables;
- ``cluster_variables``: the inductive product formula driven by the
  covering relation of the Lusztig cycles;
- ``cluster_via_u``: the accumulated frame value on the upper strand at
  each trivalent move of the framed morphism pass.

The framed local rules are not copied from pictures; they are derived by
pushing the frame diagonals into the diagonal-times-letters normal form,
applying the unframed relation, and re-absorbing the diagonal.  In
particular at a trivalent move on framed inputs (x, u1), (y, u2) the merged
letter is (x - y^{-1} u1^{-2}, u1 u2 y) and the escaping mark, after
passing the new frame points, carries -1/(u2^2 y); at a hexavalent move the
frames travel with their crossings while the outer letters swap.
"""

from __future__ import annotations

from .braids import BraidWord
from .fields import FunctionField
from .matrices import Handleslide, Letter, MarkedPoint
from .mcs import Cell, MCSState, a_to_sr, push_right
from .rulings import NormalRuling
from .weaves import Morphism, covers, underlying_ruling


class HasDepartures(ValueError):
    """s- and cluster variables are defined for right inductive morphisms,
    which have no cup moves."""


def _formal_field(braid: BraidWord) -> tuple[FunctionField, list]:
    field = FunctionField()
    zs = [field.var(f"z{k + 1}", "top letter") for k in range(len(braid.letters))]
    return field, zs


def _require_inductive(m: Morphism) -> NormalRuling:
    rho = underlying_ruling(m)
    if rho.departures:
        raise HasDepartures("morphism has cup moves; no s-variables at departures")
    return rho


def s_variables(m: Morphism, field=None, top_values=None) -> list:
    """The framed value of the right input of each trivalent move, top
    frames set to one; equivalently the switch marks of the framed SR sweep."""
    rho = _require_inductive(m)
    braid = m.source
    if field is None:
        field, top_values = _formal_field(braid)
    sr = a_to_sr(braid, rho, list(top_values), field, framed=True)
    return sr.switch_values()


def cluster_variables(m: Morphism, field=None, top_values=None) -> list:
    """A_t = s_t * prod over covering trivalents t' of A_{t'}^{weight}."""
    _require_inductive(m)
    svals = s_variables(m, field, top_values)
    rel = covers(m)
    trivalents = [k for k, _ in m.trivalent_moves()]
    index_of = {k: j for j, k in enumerate(trivalents)}
    out: list = []
    for j, k in enumerate(trivalents):
        a = svals[j]
        for kp, weight in rel[k]:
            a = a * out[index_of[kp]] ** weight
        out.append(a)
    return out


# -- framed morphism pass ------------------------------------------------------


def _framed_cells(gen: int, z, u, field) -> list[Cell]:
    return [
        Cell(Letter(gen, z)),
        Cell(MarkedPoint(gen, -u.inv()), pinned=True),
        Cell(MarkedPoint(gen + 1, u), pinned=True),
    ]


def _letter_groups(cells: list[Cell]) -> list[tuple[int, int]]:
    """(start, end) atom-index ranges, one per letter with its frame points."""
    groups = []
    start = None
    for idx, c in enumerate(cells):
        if isinstance(c.atom, Letter):
            if start is not None:
                groups.append((start, idx))
            start = idx
    if start is not None:
        groups.append((start, len(cells)))
    return groups


def _frame_of(cells: list[Cell], start: int, end: int, field):
    """Recover (z, u) of a framed letter group."""
    letter = cells[start].atom
    u = None
    for c in cells[start + 1 : end]:
        if isinstance(c.atom, MarkedPoint) and c.atom.i == letter.i + 1:
            u = c.atom.value
    if u is None:
        raise ValueError("letter group is missing its frame point")
    return letter.value, u


def cluster_via_u(m: Morphism, field=None, top_values=None) -> list:
    """Cluster variables as accumulated frame values at the trivalent moves.

    Runs the morphism forwards on the framed state (every letter carries
    frame points; top frames are one) and reads, at each trivalent move, the
    value u1*u2*y placed on the upper strand."""
    _require_inductive(m)
    braid = m.source
    if field is None:
        field, top_values = _formal_field(braid)
    n = m.n
    cells: list[Cell] = []
    for gen, z in zip(braid.letters, top_values):
        cells.extend(_framed_cells(gen, z, field.one, field))

    uvars: list = []
    for k, move in enumerate(m.moves):
        groups = _letter_groups(cells)
        p = move.pos
        if move.kind == "distant":
            (s1, e1), (s2, e2) = groups[p], groups[p + 1]
            cells[s1:e2] = cells[s2:e2] + cells[s1:e1]
        elif move.kind == "hexavalent":
            (s1, e1), (s2, e2), (s3, e3) = groups[p], groups[p + 1], groups[p + 2]
            x, u1 = _frame_of(cells, s1, e1, field)
            y, u2 = _frame_of(cells, s2, e2, field)
            z, u3 = _frame_of(cells, s3, e3, field)
            gen_out = cells[s2].atom.i
            gen_mid = cells[s1].atom.i
            a = (u1 / u2) * z
            c = (u2 / u3) * x
            cross = u3 * u1 * x * z / u2
            if gen_mid == gen_out + 1:
                # pattern (i+1, i, i+1) -> (i, i+1, i)
                b = -(u3 / u1) * y - cross
            else:
                b = -(u3 / u1) * y + cross
            replacement = (
                _framed_cells(gen_out, a, u3, field)
                + _framed_cells(gen_mid, b, u2, field)
                + _framed_cells(gen_out, c, u1, field)
            )
            cells[s1:e3] = replacement
        elif move.kind == "trivalent":
            (s1, e1), (s2, e2) = groups[p], groups[p + 1]
            x, u1 = _frame_of(cells, s1, e1, field)
            y, u2 = _frame_of(cells, s2, e2, field)
            gen = cells[s1].atom.i
            if not y.is_unit():
                raise ValueError(f"zero right input at trivalent move {k}")
            u_new = u1 * u2 * y
            uvars.append(u_new)
            a = x - y.inv() * (u1 ** (-2))
            replacement = [
                Cell(Letter(gen, a)),
                Cell(Handleslide(gen, gen + 1, u1 * u1 * y)),
            ] + _framed_cells(gen, field.zero, u_new, field)[1:]
            cells[s1:e2] = replacement
            cells = push_right(MCSState(n, cells), field, drop_at_edge=True).cells
        else:
            raise HasDepartures("cup moves carry no u-variable")
    return uvars
