"""Distinguished sequences and Deodhar piece shapes.

A distinguished sequence for a permutation u and a braid word is a walk
(v_0, ..., v_r) with v_0 = e, v_r = u, where each step satisfies exactly one
of

- case 1 (torus step):  v_j = v_{j-1} and v_j s_{i_j} < v_j,
- case 2 (cell step):   v_j = v_{j-1} s_{i_j} and v_j < v_{j-1},
- case 3 (fixed step):  v_j = v_{j-1} s_{i_j} and v_j > v_{j-1}.

The associated piece is a torus-times-cell of shape (C*)^t x C^c where t and
c count case-1 and case-2 steps.  Under the dictionary Switch <-> 1,
Departure <-> 2, Return <-> 3 these sequences are exactly the normal-ruling
labelings, which is the content of the decomposition-agreement theorems
verified in the test suite.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .braids import (
    BraidWord,
    Permutation,
    identity_perm,
    longest_perm,
    right_ascent,
    right_mult_gen,
)
from .rulings import DEPARTURE, RETURN, SWITCH, NormalRuling, require_longest

TORUS, CELL, FIXED = 1, 2, 3

_CASE_OF_LABEL = {SWITCH: TORUS, DEPARTURE: CELL, RETURN: FIXED}
_LABEL_OF_CASE = {TORUS: SWITCH, CELL: DEPARTURE, FIXED: RETURN}


@dataclass(frozen=True)
class DistinguishedSequence:
    braid: BraidWord
    perms: tuple[Permutation, ...]
    cases: tuple[int, ...]

    def __post_init__(self):
        r = len(self.braid.letters)
        if len(self.perms) != r + 1 or len(self.cases) != r:
            raise ValueError("sequence length mismatch")

    @property
    def end(self) -> Permutation:
        return self.perms[-1]

    def is_valid(self) -> bool:
        if self.perms[0] != identity_perm(self.braid.n):
            return False
        for j, (i, case) in enumerate(zip(self.braid.letters, self.cases)):
            v_prev, v = self.perms[j], self.perms[j + 1]
            ascent = right_ascent(v_prev, i)
            if case == TORUS and not (v == v_prev and not ascent):
                return False
            if case == CELL and not (v == right_mult_gen(v_prev, i) and not ascent):
                return False
            if case == FIXED and not (v == right_mult_gen(v_prev, i) and ascent):
                return False
        return True


def shape(seq: DistinguishedSequence) -> tuple[int, int]:
    """(t, c) = (#case-1 steps, #case-2 steps)."""
    return seq.cases.count(TORUS), seq.cases.count(CELL)


def enumerate_distinguished(
    braid: BraidWord, u: Permutation
) -> list[DistinguishedSequence]:
    """All distinguished sequences ending at u, depth first with branch
    order 3 < 1 < 2."""
    letters = braid.letters
    r = len(letters)
    out: list[DistinguishedSequence] = []

    def search(k: int, v: Permutation, perms: list[Permutation], cases: list[int]):
        if k == r:
            if v == u:
                out.append(DistinguishedSequence(braid, tuple(perms), tuple(cases)))
            return
        i = letters[k]
        if right_ascent(v, i):
            w = right_mult_gen(v, i)
            perms.append(w)
            cases.append(FIXED)
            search(k + 1, w, perms, cases)
            perms.pop()
            cases.pop()
        else:
            perms.append(v)
            cases.append(TORUS)
            search(k + 1, v, perms, cases)
            perms.pop()
            cases.pop()
            w = right_mult_gen(v, i)
            perms.append(w)
            cases.append(CELL)
            search(k + 1, w, perms, cases)
            perms.pop()
            cases.pop()

    start = identity_perm(braid.n)
    search(0, start, [start], [])
    return out


def ruling_to_sequence(rho: NormalRuling) -> DistinguishedSequence:
    """Switch -> case 1, Departure -> case 2, Return -> case 3."""
    if not rho.is_valid():
        raise ValueError("invalid ruling")
    perms = tuple(rho.walk())
    cases = tuple(_CASE_OF_LABEL[label] for label in rho.labels)
    return DistinguishedSequence(rho.braid, perms, cases)


def sequence_to_ruling(seq: DistinguishedSequence) -> NormalRuling:
    if not seq.is_valid() or seq.end != longest_perm(seq.braid.n):
        raise ValueError("not a valid distinguished sequence for the longest element")
    labels = tuple(_LABEL_OF_CASE[case] for case in seq.cases)
    rho = NormalRuling(seq.braid, labels)
    if not rho.is_valid():
        raise ValueError("sequence does not induce a valid ruling")
    return rho


def deodhar_point_count(braid: BraidWord, q: int) -> int:
    """Sum over distinguished sequences for w_0 of q^c (q-1)^t."""
    require_longest(braid)
    if q < 2:
        raise ValueError("q must be at least 2")
    total = 0
    for seq in enumerate_distinguished(braid, longest_perm(braid.n)):
        t, c = shape(seq)
        total += q**c * (q - 1) ** t
    return total


def sequences_to_json(braid: BraidWord, seqs: list[DistinguishedSequence]) -> str:
    return json.dumps(
        {
            "braid": list(braid.letters),
            "strands": braid.n,
            "sequences": [
                {
                    "perms": [[x + 1 for x in w] for w in seq.perms],
                    "cases": list(seq.cases),
                    "shape": list(shape(seq)),
                }
                for seq in seqs
            ],
        }
    )
