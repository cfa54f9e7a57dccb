"""Braid-category morphisms and the decomposition machinery built on them.

A :class:`Morphism` is a sequence of braid words in which consecutive words
differ by exactly one positioned move:

- ``distant``    swap two letters with distant colors,
- ``hexavalent`` rewrite (i, i+1, i) <-> (i+1, i, i+1) in place,
- ``trivalent``  merge two equal adjacent letters into one,
- ``cup``        delete two equal adjacent letters.

This is the combinatorial skeleton of a simplifying weave; trivalent and cup
moves carry dashed data once scalar values are attached.  Value propagation
follows the trivial-monodromy relations: at a trivalent the right input must
be invertible and the merged value is x + 1/y, at a cup the right input must
vanish, at a hexavalent (x, y, z) becomes (z, y - x z, x), and at a distant
move values travel with their letters.  Each trivalent or cup emits an upper
triangular matrix that is pushed to the right edge through the remaining
letters, rescaling them on the way.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from .braids import (
    BraidWord,
    apply_word_move,
    braid_move_path,
    canonical_reduced_word,
    demazure_product,
    half_twist,
    identity_perm,
    longest_perm,
    reduced_word_ending_with,
    right_ascent,
    right_mult_gen,
)
from .matrices import (
    Letter,
    SquareMatrix,
    braid_matrix,
    monodromy_product,
    permutation_matrix,
)
from .rulings import (
    DEPARTURE,
    RETURN,
    SWITCH,
    NormalRuling,
    maximal_ruling,
    require_longest,
)

MOVE_KINDS = ("distant", "hexavalent", "trivalent", "cup")


@dataclass(frozen=True)
class Move:
    kind: str
    pos: int

    def __post_init__(self):
        if self.kind not in MOVE_KINDS:
            raise ValueError(f"unknown move kind {self.kind!r}")


class InvalidMorphism(ValueError):
    pass


class TrivalentNeedsUnit(ValueError):
    def __init__(self, layer: int, pos: int):
        super().__init__(f"trivalent move at layer {layer}, position {pos} has zero right input")
        self.layer, self.pos = layer, pos


class CupNeedsZero(ValueError):
    def __init__(self, layer: int, pos: int):
        super().__init__(f"cup move at layer {layer}, position {pos} has nonzero right input")
        self.layer, self.pos = layer, pos


def apply_move(word: tuple[int, ...], move: Move) -> tuple[int, ...]:
    p = move.pos
    if move.kind == "distant":
        if p + 1 >= len(word) or abs(word[p] - word[p + 1]) < 2:
            raise InvalidMorphism(f"distant move does not apply at {p} in {word}")
        return word[:p] + (word[p + 1], word[p]) + word[p + 2 :]
    if move.kind == "hexavalent":
        if (
            p + 2 >= len(word)
            or word[p] != word[p + 2]
            or abs(word[p] - word[p + 1]) != 1
        ):
            raise InvalidMorphism(f"hexavalent move does not apply at {p} in {word}")
        a, b = word[p], word[p + 1]
        return word[:p] + (b, a, b) + word[p + 3 :]
    if move.kind == "trivalent":
        if p + 1 >= len(word) or word[p] != word[p + 1]:
            raise InvalidMorphism(f"trivalent move does not apply at {p} in {word}")
        return word[:p] + word[p + 1 :]
    if move.kind == "cup":
        if p + 1 >= len(word) or word[p] != word[p + 1]:
            raise InvalidMorphism(f"cup move does not apply at {p} in {word}")
        return word[:p] + word[p + 2 :]
    raise InvalidMorphism(f"unknown move {move!r}")


@dataclass(frozen=True)
class Morphism:
    """A morphism between positive braids: layers joined by single moves."""

    n: int
    layers: tuple[tuple[int, ...], ...]
    moves: tuple[Move, ...]

    def __post_init__(self):
        if len(self.layers) != len(self.moves) + 1:
            raise InvalidMorphism("need exactly one move between consecutive layers")
        for k, move in enumerate(self.moves):
            if apply_move(self.layers[k], move) != self.layers[k + 1]:
                raise InvalidMorphism(
                    f"move {move} does not transform layer {k} into layer {k + 1}"
                )

    @property
    def source(self) -> BraidWord:
        return BraidWord(self.n, self.layers[0])

    @property
    def target(self) -> BraidWord:
        return BraidWord(self.n, self.layers[-1])

    def shape(self) -> tuple[int, int]:
        """(number of trivalent moves, number of cup moves)."""
        t = sum(1 for m in self.moves if m.kind == "trivalent")
        c = sum(1 for m in self.moves if m.kind == "cup")
        return t, c

    def trivalent_moves(self) -> list[tuple[int, Move]]:
        return [(k, m) for k, m in enumerate(self.moves) if m.kind == "trivalent"]

    def to_json_dict(self) -> dict:
        return {
            "strands": self.n,
            "layers": [list(layer) for layer in self.layers],
            "moves": [{"kind": m.kind, "pos": m.pos} for m in self.moves],
        }

    @staticmethod
    def from_json_dict(data: dict) -> Morphism:
        return Morphism(
            data["strands"],
            tuple(tuple(layer) for layer in data["layers"]),
            tuple(Move(m["kind"], m["pos"]) for m in data["moves"]),
        )


# -- construction from a ruling --------------------------------------------


def build_right_simplifying(braid: BraidWord, rho: NormalRuling) -> Morphism:
    """The canonical right simplifying morphism of a ruling.

    Letters are processed left to right.  Return letters persist.  Before a
    Switch or Departure letter the simplified prefix, always a reduced word,
    is rewritten by hexavalent and distant moves to end with the matching
    generator; then a trivalent (Switch) or cup (Departure) move joins the
    two rightmost letters of the prefix region.  A final rewriting takes the
    last layer, a reduced word for w_0, to the half twist.
    """
    require_longest(braid)
    if rho.braid != braid or not rho.is_valid():
        raise ValueError("ruling does not belong to this braid or is invalid")
    n = braid.n
    layers = [braid.letters]
    moves: list[Move] = []
    word = list(braid.letters)
    prefix = 0
    v = identity_perm(n)

    def push_layer(move: Move) -> None:
        moves.append(move)
        layers.append(apply_move(layers[-1], move))

    for label, gen in zip(rho.labels, braid.letters):
        if label == RETURN:
            v = right_mult_gen(v, gen)
            prefix += 1
            continue
        target = reduced_word_ending_with(v, gen)
        if target is None:
            raise ValueError("ruling walk is inconsistent")
        for kind, p in braid_move_path(n, tuple(word[:prefix]), target):
            push_layer(Move(kind, p))
            word[:prefix] = apply_word_move(tuple(word[:prefix]), kind, p)
        if label == SWITCH:
            push_layer(Move("trivalent", prefix - 1))
            del word[prefix]
        else:
            push_layer(Move("cup", prefix - 1))
            del word[prefix - 1 : prefix + 1]
            prefix -= 1
            v = right_mult_gen(v, gen)
    final = tuple(word)
    for kind, p in braid_move_path(n, final, half_twist(n).letters):
        push_layer(Move(kind, p))
    return Morphism(n, tuple(layers), tuple(moves))


def underlying_ruling(m: Morphism) -> NormalRuling:
    """Recover the ruling of a right simplifying morphism: the top letters
    that feed trivalent moves are switches, those consumed by cups are
    departures, everything else is a return."""
    labels = [RETURN] * len(m.layers[0])
    for k, move in enumerate(m.moves):
        if move.kind not in ("trivalent", "cup"):
            continue
        top = trace_to_top(m, k, move.pos + 1)
        if top is None:
            raise ValueError("morphism is not right simplifying")
        labels[top] = SWITCH if move.kind == "trivalent" else DEPARTURE
    return NormalRuling(BraidWord(m.n, m.layers[0]), tuple(labels))


def trace_to_top(m: Morphism, layer: int, pos: int) -> int | None:
    """Trace the letter at (layer, pos) up to layer 0.

    Returns its top position, or None if the letter was created or rewritten
    by a trivalent, cup or hexavalent move on the way up.  Distant moves
    preserve the letter and are traced through.
    """
    for k in range(layer - 1, -1, -1):
        move = m.moves[k]
        p = move.pos
        if move.kind == "distant":
            if pos == p:
                pos = p + 1
            elif pos == p + 1:
                pos = p
        elif move.kind == "hexavalent":
            if p <= pos <= p + 2:
                return None
        elif move.kind == "trivalent":
            if pos == p:
                return None
            if pos > p:
                pos += 1
        elif move.kind == "cup":
            if pos >= p:
                pos += 2
    return pos


def is_right_simplifying_shaped(m: Morphism) -> bool:
    """True if every trivalent/cup move consumes a letter directly connected
    to the top layer (the defining property of right simplifying weaves)."""
    return all(
        trace_to_top(m, k, move.pos + 1) is not None
        for k, move in enumerate(m.moves)
        if move.kind in ("trivalent", "cup")
    )


# -- scalar propagation -----------------------------------------------------


def _braid_matrix_inverse(field, n: int, i: int, z) -> SquareMatrix:
    rows = [list(r) for r in SquareMatrix.identity(field, n).rows]
    rows[i - 1][i - 1] = -z
    rows[i - 1][i] = field.one
    rows[i][i - 1] = field.one
    rows[i][i] = field.zero
    return SquareMatrix(field, rows)


def _push_upper_right(
    field, n: int, v: SquareMatrix, gens: Sequence[int], values: list
) -> SquareMatrix:
    """Push the upper triangular matrix ``v`` rightwards through the letters
    ``gens[k]`` with values ``values[k]``, rescaling the values in place.
    Returns the residual matrix at the right edge."""
    for k, i in enumerate(gens):
        z = values[k]
        pivot = v[i - 1, i - 1]
        w = pivot.inv() * (v[i - 1, i] + z * v[i, i])
        v = braid_matrix(field, n, i, z) @ v @ _braid_matrix_inverse(field, n, i, w)
        values[k] = w
    return v


@dataclass
class MonodromyAssignment:
    """All layer values and dashed data of a trivial-monodromy assignment."""

    morphism: Morphism
    layer_values: list[list]
    trivalent_data: dict[int, tuple]
    cup_data: dict[int, object]
    residuals: dict[int, SquareMatrix]


def propagate_forward(m: Morphism, top_values: Sequence, field) -> MonodromyAssignment:
    """Propagate values from the top layer down through every move.

    Fails with :class:`TrivalentNeedsUnit` exactly when a trivalent move
    meets a zero right input and with :class:`CupNeedsZero` when a cup move
    meets a nonzero one.
    """
    if len(top_values) != len(m.layers[0]):
        raise ValueError("need one value per letter of the top layer")
    n = m.n
    values = list(top_values)
    layer_values = [list(values)]
    trivalent_data: dict[int, tuple] = {}
    cup_data: dict[int, object] = {}
    residuals: dict[int, SquareMatrix] = {}
    for k, move in enumerate(m.moves):
        p = move.pos
        if move.kind == "distant":
            values[p], values[p + 1] = values[p + 1], values[p]
        elif move.kind == "hexavalent":
            x, y, z = values[p], values[p + 1], values[p + 2]
            values[p : p + 3] = [z, y - x * z, x]
        elif move.kind == "trivalent":
            i = m.layers[k][p]
            x, y = values[p], values[p + 1]
            if not y.is_unit():
                raise TrivalentNeedsUnit(k, p)
            values[p : p + 2] = [x + y.inv()]
            dash = -y
            t1, t2 = -y.inv(), y
            v = SquareMatrix.identity(field, n)
            rows = [list(r) for r in v.rows]
            rows[i - 1][i - 1] = t1
            rows[i - 1][i] = field.one
            rows[i][i] = t2
            v = SquareMatrix(field, rows)
            rest = values[p + 1 :]
            residuals[k] = _push_upper_right(field, n, v, m.layers[k + 1][p + 1 :], rest)
            values[p + 1 :] = rest
            trivalent_data[k] = (t1, t2, dash)
        elif move.kind == "cup":
            i = m.layers[k][p]
            x, y = values[p], values[p + 1]
            if not y.is_zero():
                raise CupNeedsZero(k, p)
            del values[p : p + 2]
            rows = [list(r) for r in SquareMatrix.identity(field, n).rows]
            rows[i - 1][i] = x
            v = SquareMatrix(field, rows)
            rest = values[p:]
            residuals[k] = _push_upper_right(field, n, v, m.layers[k + 1][p:], rest)
            values[p:] = rest
            cup_data[k] = x
        layer_values.append(list(values))
    return MonodromyAssignment(m, layer_values, trivalent_data, cup_data, residuals)


def chart_param_shape(m: Morphism) -> list[tuple[str, int]]:
    """Parameters consumed by :func:`chart_embed`, in consumption order.

    One entry per trivalent ("unit") or cup ("free") move, listed from the
    bottom of the morphism upwards: the first parameter is consumed by the
    last such move of the morphism.
    """
    out = []
    for k in range(len(m.moves) - 1, -1, -1):
        if m.moves[k].kind == "trivalent":
            out.append(("unit", k))
        elif m.moves[k].kind == "cup":
            out.append(("free", k))
    return out


def chart_embed(m: Morphism, params: Sequence, field) -> list:
    """Run the moves backwards from the bottom layer and return top values.

    The bottom layer must be a reduced word for w_0; it is seeded with the
    all-zero assignment, the unique point of its variety.  Each trivalent
    move consumes one invertible parameter and each cup move one free
    parameter, in the order given by :func:`chart_param_shape` (bottom-most
    move first).  The output satisfies the braid variety membership for the
    top word.
    """
    n = m.n
    spec = chart_param_shape(m)
    if len(params) != len(spec):
        raise ValueError(f"need {len(spec)} parameters, got {len(params)}")
    values = [field.zero] * len(m.layers[-1])
    next_param = {k: (kind, value) for (kind, k), value in zip(spec, params)}
    for k in range(len(m.moves) - 1, -1, -1):
        move = m.moves[k]
        p = move.pos
        if move.kind == "distant":
            values[p], values[p + 1] = values[p + 1], values[p]
        elif move.kind == "hexavalent":
            a, b, c = values[p], values[p + 1], values[p + 2]
            values[p : p + 3] = [c, b + c * a, a]
        elif move.kind == "trivalent":
            kind, y = next_param[k]
            if not y.is_unit():
                raise ValueError(f"parameter for trivalent move {k} must be invertible")
            a = values[p]
            values[p : p + 1] = [a - y.inv(), y]
            i = m.layers[k][p]
            rows = [list(r) for r in SquareMatrix.identity(field, n).rows]
            rows[i - 1][i - 1] = -y
            rows[i - 1][i] = field.one
            rows[i][i] = y.inv()
            v = SquareMatrix(field, rows)
            rest = values[p + 2 :]
            _push_upper_right(field, n, v, m.layers[k][p + 2 :], rest)
            values[p + 2 :] = rest
        elif move.kind == "cup":
            kind, x = next_param[k]
            i = m.layers[k][p]
            values[p:p] = [x, field.zero]
            rows = [list(r) for r in SquareMatrix.identity(field, n).rows]
            rows[i - 1][i] = -x
            v = SquareMatrix(field, rows)
            rest = values[p + 2 :]
            _push_upper_right(field, n, v, m.layers[k][p + 2 :], rest)
            values[p + 2 :] = rest
    return values


def membership(braid: BraidWord, values: Sequence, field) -> bool:
    """Whether the braid matrix of ``values`` times w_0 is upper triangular."""
    atoms = [Letter(i, z) for i, z in zip(braid.letters, values)]
    mat = monodromy_product(atoms, field, braid.n)
    w0 = permutation_matrix(field, longest_perm(braid.n))
    return (mat @ w0).is_upper_triangular()


def classify_point(braid: BraidWord, values: Sequence, field) -> NormalRuling:
    """Greedy right-inductive classification of a braid variety point.

    Walks the letters left to right maintaining a simplified reduced prefix.
    Forced letters (length up) are returns; otherwise the prefix is
    rewritten to end with the matching generator and the arriving letter's
    current value decides: nonzero merges by a trivalent move (switch), zero
    dies in a cup move (departure).
    """
    require_longest(braid)
    if not membership(braid, values, field):
        raise ValueError("point does not lie on the braid variety")
    n = braid.n
    gens = list(braid.letters)
    vals = list(values)
    prefix = 0
    v = identity_perm(n)
    labels: list[str] = []
    while prefix < len(gens):
        gen = gens[prefix]
        if right_ascent(v, gen):
            labels.append(RETURN)
            v = right_mult_gen(v, gen)
            prefix += 1
            continue
        target = reduced_word_ending_with(v, gen)
        for kind, p in braid_move_path(n, tuple(gens[:prefix]), target):
            if kind == "distant":
                gens[p], gens[p + 1] = gens[p + 1], gens[p]
                vals[p], vals[p + 1] = vals[p + 1], vals[p]
            else:
                x, y, z = vals[p], vals[p + 1], vals[p + 2]
                gens[p : p + 3] = [gens[p + 1], gens[p], gens[p + 1]]
                vals[p : p + 3] = [z, y - x * z, x]
        x, y = vals[prefix - 1], vals[prefix]
        if y.is_unit():
            labels.append(SWITCH)
            vals[prefix - 1 : prefix + 1] = [x + y.inv()]
            del gens[prefix]
            t1, t2 = -y.inv(), y
            rows = [list(r) for r in SquareMatrix.identity(field, n).rows]
            rows[gen - 1][gen - 1] = t1
            rows[gen - 1][gen] = field.one
            rows[gen][gen] = t2
            v_mat = SquareMatrix(field, rows)
            rest = vals[prefix:]
            _push_upper_right(field, n, v_mat, gens[prefix:], rest)
            vals[prefix:] = rest
        else:
            labels.append(DEPARTURE)
            del vals[prefix - 1 : prefix + 1]
            del gens[prefix - 1 : prefix + 1]
            rows = [list(r) for r in SquareMatrix.identity(field, n).rows]
            rows[gen - 1][gen] = x
            v_mat = SquareMatrix(field, rows)
            prefix -= 1
            v = right_mult_gen(v, gen)
            rest = vals[prefix:]
            _push_upper_right(field, n, v_mat, gens[prefix:], rest)
            vals[prefix:] = rest
    ruling = NormalRuling(braid, tuple(labels))
    if not ruling.is_valid():
        raise ValueError("classification produced an invalid ruling")
    return ruling


def chart_points(m: Morphism, q_field) -> list[tuple]:
    """The full finite-field image of the chart of ``m``: one point per
    parameter tuple, as tuples of F_q values in top-letter order."""
    spec = chart_param_shape(m)
    pools = [
        list(q_field.units()) if kind == "unit" else list(q_field.elements())
        for kind, _ in spec
    ]
    points = []
    for combo in itertools.product(*pools):
        values = chart_embed(m, list(combo), q_field)
        points.append(tuple(values))
    return points


# -- Lusztig cycles ----------------------------------------------------------


@dataclass(frozen=True)
class LusztigCycle:
    """Nonnegative weights on the letters of every layer, seeded with weight
    one at the output of the originating trivalent move."""

    origin_move: int
    weights: tuple[tuple[int, ...], ...]

    def weight(self, layer: int, pos: int) -> int:
        return self.weights[layer][pos]


def lusztig_cycles(m: Morphism) -> list[LusztigCycle]:
    out = []
    for origin, _ in m.trivalent_moves():
        weights: list[tuple[int, ...]] = [
            tuple(0 for _ in layer) for layer in m.layers[: origin + 1]
        ]
        current = [0] * len(m.layers[origin + 1])
        current[m.moves[origin].pos] = 1
        weights.append(tuple(current))
        for k in range(origin + 1, len(m.moves)):
            move = m.moves[k]
            p = move.pos
            nxt = list(current)
            if move.kind == "distant":
                nxt[p], nxt[p + 1] = nxt[p + 1], nxt[p]
            elif move.kind == "hexavalent":
                a, b, c = current[p], current[p + 1], current[p + 2]
                m_ac = min(a, c)
                nxt[p : p + 3] = [b + c - m_ac, m_ac, a + b - m_ac]
            elif move.kind == "trivalent":
                nxt[p : p + 2] = [min(current[p], current[p + 1])]
            elif move.kind == "cup":
                del nxt[p : p + 2]
            current = nxt
            weights.append(tuple(current))
        out.append(LusztigCycle(origin, tuple(weights)))
    return out


def covers(m: Morphism) -> dict[int, list[tuple[int, int]]]:
    """For each trivalent move t (by move index), the list of pairs
    (t', exponent) of trivalent moves covering t, where the exponent is the
    covering cycle's weight at the northwest input of t."""
    cycles = {c.origin_move: c for c in lusztig_cycles(m)}
    rel: dict[int, list[tuple[int, int]]] = {}
    for t, move in m.trivalent_moves():
        rel[t] = []
        for tp, cycle in cycles.items():
            if tp == t:
                continue
            w = cycle.weight(t, move.pos)
            if w:
                rel[t].append((tp, w))
    return rel


# -- Y-trees and cycle deletion ----------------------------------------------


@dataclass(frozen=True)
class YTree:
    """Per-layer sets of marked letter positions forming a connected tree
    between trivalent vertices, following the local propagation models."""

    marks: tuple[frozenset[int], ...]

    def support_size(self) -> int:
        return sum(len(s) for s in self.marks)


class NotDeletable(ValueError):
    pass


def find_y_trees(m: Morphism) -> list[YTree]:
    """Enumerate the connected 0/1 cycles of the morphism.

    Branches are born at trivalent outputs, die into trivalent inputs, pass
    through or split/merge at hexavalent moves, ride along distant moves and
    must avoid cup letters.  Merging two branches of the same component
    would close a loop and is rejected, as is any disconnected final result.
    Degenerate trees with no branch vertex (I-shaped cycles) are included.
    """
    results: list[YTree] = []
    n_layers = len(m.layers)

    def search(k: int, marks: dict[int, int], uf: dict[int, int], acc, next_id: int):
        def find(x: int) -> int:
            while uf[x] != x:
                uf[x] = uf[uf[x]]
                x = uf[x]
            return x

        if k == n_layers - 1:
            if marks:
                return
            roots = {find(i) for i in range(next_id)}
            if next_id > 0 and len(roots) == 1:
                results.append(YTree(tuple(acc + [frozenset()])))
            return
        move = m.moves[k]
        p = move.pos
        acc2 = acc + [frozenset(marks)]

        def advance(new_marks: dict[int, int], new_uf: dict[int, int], nid: int):
            search(k + 1, new_marks, new_uf, acc2, nid)

        if move.kind == "distant":
            nm = {}
            for pos, b in marks.items():
                nm[p + 1 if pos == p else p if pos == p + 1 else pos] = b
            advance(nm, dict(uf), next_id)
        elif move.kind == "cup":
            if p in marks or p + 1 in marks:
                return
            nm = {pos - 2 if pos > p + 1 else pos: b for pos, b in marks.items()}
            advance(nm, dict(uf), next_id)
        elif move.kind == "trivalent":
            inside = [pos for pos in (p, p + 1) if pos in marks]
            if len(inside) == 2:
                return
            if len(inside) == 1:
                nm = {
                    (pos - 1 if pos > p + 1 else pos): b
                    for pos, b in marks.items()
                    if pos != inside[0]
                }
                advance(nm, dict(uf), next_id)
            else:
                nm = {(pos - 1 if pos > p + 1 else pos): b for pos, b in marks.items()}
                advance(dict(nm), dict(uf), next_id)
                born = dict(nm)
                born[p] = next_id
                uf2 = dict(uf)
                uf2[next_id] = next_id
                advance(born, uf2, next_id + 1)
        elif move.kind == "hexavalent":
            inside = sorted(pos for pos in (p, p + 1, p + 2) if pos in marks)
            nm = {pos: b for pos, b in marks.items() if pos not in inside}
            if not inside:
                advance(nm, dict(uf), next_id)
            elif inside == [p]:
                nm[p + 2] = marks[p]
                advance(nm, dict(uf), next_id)
            elif inside == [p + 2]:
                nm[p] = marks[p + 2]
                advance(nm, dict(uf), next_id)
            elif inside == [p + 1]:
                parent = marks[p + 1]
                uf2 = dict(uf)
                uf2[next_id] = parent
                uf2[next_id + 1] = parent
                nm[p] = next_id
                nm[p + 2] = next_id + 1
                advance(nm, uf2, next_id + 2)
            elif inside == [p, p + 2]:
                ra, rb = find(marks[p]), find(marks[p + 2])
                if ra == rb:
                    return
                uf2 = dict(uf)
                uf2[ra] = rb
                nm[p + 1] = marks[p]
                advance(nm, uf2, next_id)
            else:
                return

    search(0, {}, {}, [], 0)
    return results


def delete_cycle(m: Morphism, tree: YTree) -> Morphism:
    """Smooth the marked crossings in every layer and rebuild the moves.

    Deleting a starting mark turns its trivalent move into a cup; deleting a
    pass-through mark makes the move trivial (the layers are contracted);
    deleting a split mark at a hexavalent move leaves a trivalent move.  A
    merge mark cannot be deleted inside the simplifying-weave class and
    raises :class:`NotDeletable`.
    """
    if len(tree.marks) != len(m.layers):
        raise ValueError("tree does not match the morphism")

    def smooth(layer: int) -> tuple[int, ...]:
        marked = tree.marks[layer]
        return tuple(x for pos, x in enumerate(m.layers[layer]) if pos not in marked)

    def shift(layer: int, pos: int) -> int:
        return pos - sum(1 for q in tree.marks[layer] if q < pos)

    new_layers = [smooth(0)]
    new_moves: list[Move] = []
    for k, move in enumerate(m.moves):
        p = move.pos
        marks_in = tree.marks[k]
        marks_out = tree.marks[k + 1]
        keep: Move | None
        if move.kind == "distant":
            keep = None if (p in marks_in or p + 1 in marks_in) else Move("distant", shift(k, p))
        elif move.kind == "cup":
            keep = Move("cup", shift(k, p))
        elif move.kind == "trivalent":
            inside = [q for q in (p, p + 1) if q in marks_in]
            if inside:
                keep = None
            elif p in marks_out:
                keep = Move("cup", shift(k, p))
            else:
                keep = Move("trivalent", shift(k, p))
        else:  # hexavalent
            inside = sorted(q for q in (p, p + 1, p + 2) if q in marks_in)
            if inside in ([p], [p + 2]):
                keep = None
            elif inside == [p + 1]:
                keep = Move("trivalent", shift(k, p))
            elif inside == [p, p + 2]:
                raise NotDeletable(
                    "deleting a merging branch would leave the simplifying class"
                )
            else:
                keep = Move("hexavalent", shift(k, p))
        smoothed = smooth(k + 1)
        if keep is None:
            if smoothed != new_layers[-1]:
                raise NotDeletable("pass-through deletion did not contract cleanly")
            continue
        new_moves.append(keep)
        new_layers.append(smoothed)
    return Morphism(m.n, tuple(new_layers), tuple(new_moves))


# -- cycle decomposability ---------------------------------------------------


@dataclass
class DecompositionSearch:
    """Outcome of the bounded search for a decomposition by cycle deletion."""

    status: str  # "decomposable" | "no" | "budget_exhausted"
    braid: BraidWord
    tuple_found: list[Morphism]
    root_y_trees: int
    explored: int
    non_right_simplifying: list[Morphism]


def is_cycle_decomposable(
    braid: BraidWord, budget: int = 100_000, q: int = 3
) -> DecompositionSearch:
    """Search deletions of the maximal-ruling morphism for a decomposing
    tuple: charts pairwise disjoint over F_q and jointly covering the braid
    variety.  The search explores the deletion closure breadth first within
    ``budget`` nodes."""
    from .counting import enumerate_points  # local import to avoid a cycle

    require_longest(braid)
    from .fields import PrimeField

    q_field = PrimeField(q)
    all_points = frozenset(enumerate_points(braid, q))
    root = build_right_simplifying(braid, maximal_ruling(braid))

    seen: dict[tuple, Morphism] = {}
    charts: dict[tuple, frozenset] = {}
    not_right: list[Morphism] = []
    order: list[tuple] = []

    def key_of(m: Morphism) -> tuple:
        return (m.layers, m.moves)

    frontier = [root]
    seen[key_of(root)] = root
    order.append(key_of(root))
    explored = 0
    exhausted = False
    root_trees = len(find_y_trees(root))
    while frontier:
        nxt: list[Morphism] = []
        for mor in frontier:
            explored += 1
            if explored > budget:
                exhausted = True
                break
            for tree in find_y_trees(mor):
                try:
                    child = delete_cycle(mor, tree)
                except NotDeletable:
                    continue
                k = key_of(child)
                if k in seen:
                    continue
                seen[k] = child
                order.append(k)
                if not is_right_simplifying_shaped(child):
                    not_right.append(child)
                nxt.append(child)
        if exhausted:
            break
        frontier = nxt

    for k in order:
        charts[k] = frozenset(map(tuple, chart_points(seen[k], q_field)))

    # exact cover by chart images, required to contain the root chart
    root_key = key_of(root)
    piece_keys = [root_key] + [k for k in order if k != root_key]
    chosen: list[tuple] = []

    def cover(remaining: frozenset, start: int) -> bool:
        if not remaining:
            return True
        for idx in range(start, len(piece_keys)):
            k = piece_keys[idx]
            c = charts[k]
            if c and c <= remaining:
                chosen.append(k)
                if cover(remaining - c, idx + 1):
                    return True
                chosen.pop()
        return False

    found = False
    if charts[root_key] <= all_points:
        chosen.append(root_key)
        found = cover(all_points - charts[root_key], 1)
        if not found:
            chosen.pop()

    status = "decomposable" if found else ("budget_exhausted" if exhausted else "no")
    return DecompositionSearch(
        status=status,
        braid=braid,
        tuple_found=[seen[k] for k in chosen],
        root_y_trees=root_trees,
        explored=explored,
        non_right_simplifying=not_right,
    )
