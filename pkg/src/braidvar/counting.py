"""Finite-field point counts and end-to-end decomposition verification.

The inner enumeration loop is provided by a compiled kernel when available
(``braidvar._speedups``, built from Cython) with a pure-Python fallback of
identical behavior; the backend is chosen once at import time and recorded
in :data:`BACKEND`.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field as dataclass_field

from .braids import BraidWord
from .fields import PrimeField
from .rulings import (
    NormalRuling,
    enumerate_rulings,
    require_longest,
    ruling_point_count,
)
from ._counting_py import BudgetExceeded, count_points as _count_pure

try:  # pragma: no cover - exercised via BACKEND checks
    from ._speedups import count_points as _count_fast

    BACKEND = "compiled"
except ImportError:  # pragma: no cover
    _count_fast = None
    BACKEND = "pure"


DEFAULT_BUDGET = 100_000_000


def default_budget() -> int:
    env = os.environ.get("BRAIDVAR_BUDGET")
    return int(env) if env else DEFAULT_BUDGET


def _count(letters, n, q, budget, collect, backend=None):
    impl = _count_pure if backend == "pure" or _count_fast is None else _count_fast
    try:
        return impl(letters, n, q, budget, collect)
    except RuntimeError as exc:  # normalize the compiled kernel's exception
        if exc.__class__.__name__ == "BudgetExceeded" and not isinstance(
            exc, BudgetExceeded
        ):
            raise BudgetExceeded(str(exc)) from None
        raise


def _check_prime(q: int) -> None:
    PrimeField(q)  # raises for non-primes


def brute_force_count(
    braid: BraidWord, q: int, budget: int | None = None, backend: str | None = None
) -> int:
    """#{z in F_q^l : B(z) w_0 upper triangular} by direct enumeration."""
    require_longest(braid)
    _check_prime(q)
    count, _ = _count(
        braid.letters, braid.n, q, budget or default_budget(), False, backend
    )
    return count


def enumerate_points(
    braid: BraidWord, q: int, budget: int | None = None, backend: str | None = None
) -> list[tuple[int, ...]]:
    """All points of the braid variety over F_q, as integer tuples."""
    require_longest(braid)
    _check_prime(q)
    _, points = _count(
        braid.letters, braid.n, q, budget or default_budget(), True, backend
    )
    return points


@dataclass
class CountReport:
    braid: BraidWord
    q: int
    brute_force: int
    by_rulings: int
    by_deodhar: int
    partition_ok: bool
    piece_sizes: dict[str, int]
    expected_sizes: dict[str, int]
    mismatches: list[str] = dataclass_field(default_factory=list)

    def to_json_dict(self) -> dict:
        return {
            "braid": list(self.braid.letters),
            "strands": self.braid.n,
            "q": self.q,
            "brute_force": self.brute_force,
            "by_rulings": self.by_rulings,
            "by_deodhar": self.by_deodhar,
            "partition_ok": self.partition_ok,
            "piece_sizes": self.piece_sizes,
            "expected_sizes": self.expected_sizes,
            "mismatches": self.mismatches,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict())

    def table(self) -> str:
        lines = [
            f"braid {self.braid} over F_{self.q}",
            f"  brute force count : {self.brute_force}",
            f"  by rulings        : {self.by_rulings}",
            f"  by Deodhar pieces : {self.by_deodhar}",
            f"  partition ok      : {self.partition_ok}",
        ]
        for labels in sorted(self.piece_sizes):
            got = self.piece_sizes[labels]
            want = self.expected_sizes[labels]
            status = "ok" if got == want else f"EXPECTED {want}"
            lines.append(f"    piece {labels}: {got} ({status})")
        lines.extend(f"  mismatch: {m}" for m in self.mismatches)
        return "\n".join(lines)


def verify_decomposition(
    braid: BraidWord, q: int, budget: int | None = None
) -> CountReport:
    """Classify every F_q point of the braid variety and compare the fibers
    against the predicted ruling pieces and the chart images."""
    from .deodhar import deodhar_point_count
    from .weaves import build_right_simplifying, chart_points, classify_point

    require_longest(braid)
    q_field = PrimeField(q)
    points = enumerate_points(braid, q, budget)
    rulings = enumerate_rulings(braid)
    expected = {
        rho.label_string(): q**rho.departures * (q - 1) ** rho.switches
        for rho in rulings
    }
    fibers: dict[str, set[tuple[int, ...]]] = {rho.label_string(): set() for rho in rulings}
    mismatches: list[str] = []
    for z in points:
        values = [q_field.from_int(v) for v in z]
        rho = classify_point(braid, values, q_field)
        key = rho.label_string()
        if key not in fibers:
            mismatches.append(f"point {z} classified to unlisted ruling {key}")
            fibers[key] = set()
        fibers[key].add(z)

    piece_sizes = {k: len(v) for k, v in fibers.items()}
    ok = piece_sizes == expected
    for rho in rulings:
        key = rho.label_string()
        if piece_sizes.get(key) != expected[key]:
            mismatches.append(
                f"fiber {key} has {piece_sizes.get(key, 0)} points, expected {expected[key]}"
            )
    for rho in rulings:
        m = build_right_simplifying(braid, rho)
        image = {
            tuple(x.value for x in point) for point in map(tuple, chart_points(m, q_field))
        }
        if not image <= fibers[rho.label_string()]:
            ok = False
            witness = sorted(image - fibers[rho.label_string()])[0]
            mismatches.append(
                f"chart of {rho.label_string()} leaves its fiber at {witness}"
            )
        if len(image) != expected[rho.label_string()]:
            ok = False
            mismatches.append(f"chart of {rho.label_string()} is not injective")

    by_rulings = ruling_point_count(braid, q)
    by_deodhar = deodhar_point_count(braid, q)
    ok = ok and len(points) == by_rulings == by_deodhar and not mismatches
    return CountReport(
        braid=braid,
        q=q,
        brute_force=len(points),
        by_rulings=by_rulings,
        by_deodhar=by_deodhar,
        partition_ok=ok,
        piece_sizes=piece_sizes,
        expected_sizes=expected,
        mismatches=mismatches,
    )
