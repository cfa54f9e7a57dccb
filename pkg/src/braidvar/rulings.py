"""Normal rulings of the (-1)-closure of beta*Delta, encoded as labelings.

A ruling is stored purely as a {Return, Switch, Departure} label per letter
of beta.  Validity is decided by the induced permutation walk: starting from
the identity,

- a Return multiplies by the generator and must increase length,
- a Switch keeps the permutation, requiring the generator to be a descent,
- a Departure multiplies by the generator and must decrease length,

and the walk has to end at the longest element.  The crossings of the Delta
tail are forced departures and are not stored.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .braids import (
    BraidWord,
    Permutation,
    demazure_product,
    identity_perm,
    longest_perm,
    perm_length,
    right_ascent,
    right_mult_gen,
)

RETURN = "R"
SWITCH = "S"
DEPARTURE = "D"


class DemazureNotLongest(ValueError):
    """Raised when an operation requires delta(beta) = w_0."""


@dataclass(frozen=True)
class NormalRuling:
    braid: BraidWord
    labels: tuple[str, ...]

    def __post_init__(self):
        if len(self.labels) != len(self.braid.letters):
            raise ValueError("one label per letter required")
        bad = set(self.labels) - {RETURN, SWITCH, DEPARTURE}
        if bad:
            raise ValueError(f"unknown labels {bad}")

    @property
    def switches(self) -> int:
        return self.labels.count(SWITCH)

    @property
    def departures(self) -> int:
        return self.labels.count(DEPARTURE)

    @property
    def returns(self) -> int:
        return self.labels.count(RETURN)

    def label_string(self) -> str:
        return "".join(self.labels)

    def walk(self) -> list[Permutation]:
        """The permutation walk (v_0, ..., v_r) induced by the labels."""
        v = identity_perm(self.braid.n)
        out = [v]
        for i, label in zip(self.braid.letters, self.labels):
            ascent = right_ascent(v, i)
            if label == RETURN:
                if not ascent:
                    raise ValueError("return at a non-ascent letter")
                v = right_mult_gen(v, i)
            elif label == SWITCH:
                if ascent:
                    raise ValueError("switch at an ascent letter")
            else:
                if ascent:
                    raise ValueError("departure at an ascent letter")
                v = right_mult_gen(v, i)
            out.append(v)
        return out

    def is_valid(self) -> bool:
        try:
            walk = self.walk()
        except ValueError:
            return False
        return walk[-1] == longest_perm(self.braid.n)


def require_longest(braid: BraidWord) -> None:
    if demazure_product(braid) != longest_perm(braid.n):
        raise DemazureNotLongest(
            f"Demazure product of {braid} is not the longest element of S_{braid.n}"
        )


def enumerate_rulings(braid: BraidWord) -> list[NormalRuling]:
    """All normal rulings, depth first with branch order R < S < D.

    At an ascent only Return applies; at a descent both Switch and
    Departure apply, tried in that order.
    """
    require_longest(braid)
    n = braid.n
    w0 = longest_perm(n)
    target_len = perm_length(w0)
    letters = braid.letters
    r = len(letters)
    out: list[NormalRuling] = []

    def search(k: int, v: Permutation, length: int, labels: list[str]) -> None:
        if k == r:
            if v == w0:
                out.append(NormalRuling(braid, tuple(labels)))
            return
        # prune: each remaining letter raises the length by at most one
        if target_len - length > r - k:
            return
        i = letters[k]
        if right_ascent(v, i):
            labels.append(RETURN)
            search(k + 1, right_mult_gen(v, i), length + 1, labels)
            labels.pop()
        else:
            labels.append(SWITCH)
            search(k + 1, v, length, labels)
            labels.pop()
            labels.append(DEPARTURE)
            search(k + 1, right_mult_gen(v, i), length - 1, labels)
            labels.pop()

    search(0, identity_perm(n), 0, [])
    return out


def maximal_ruling(braid: BraidWord) -> NormalRuling:
    """The unique departure-free ruling with the most switches, built by the
    greedy left-to-right rule: Return when the length goes up, else Switch."""
    require_longest(braid)
    v = identity_perm(braid.n)
    labels = []
    for i in braid.letters:
        if right_ascent(v, i):
            labels.append(RETURN)
            v = right_mult_gen(v, i)
        else:
            labels.append(SWITCH)
    ruling = NormalRuling(braid, tuple(labels))
    assert ruling.is_valid()
    return ruling


def ruling_point_count(braid: BraidWord, q: int) -> int:
    """Sum over rulings of q^departures * (q-1)^switches."""
    if q < 2:
        raise ValueError("q must be at least 2")
    return sum(
        q**rho.departures * (q - 1) ** rho.switches for rho in enumerate_rulings(braid)
    )


def rulings_to_json(braid: BraidWord, rulings: list[NormalRuling]) -> str:
    return json.dumps(
        {
            "braid": list(braid.letters),
            "strands": braid.n,
            "rulings": [
                {
                    "labels": rho.label_string(),
                    "switches": rho.switches,
                    "departures": rho.departures,
                }
                for rho in rulings
            ],
        }
    )


def ruling_from_json(data: dict) -> NormalRuling:
    braid = BraidWord(data["strands"], tuple(data["braid"]))
    return NormalRuling(braid, tuple(data["labels"]))
