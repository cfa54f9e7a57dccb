"""Pure-Python brute-force enumeration over F_q^r (fallback kernel).

Same algorithm as the compiled kernel: an odometer over the value vector
with prefix products cached per coordinate, so stepping the fastest
coordinate costs a single two-row update.
"""

from __future__ import annotations


class BudgetExceeded(RuntimeError):
    pass


def count_points(
    letters: tuple[int, ...],
    n: int,
    q: int,
    budget: int,
    collect: bool,
) -> tuple[int, list[tuple[int, ...]] | None]:
    """Count (and optionally collect) the z with B(z) * w_0 upper triangular.

    ``letters`` are 1-based generator indices; the returned points are
    tuples in letter order with entries in range(q).
    """
    r = len(letters)
    identity = tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))

    def step(mat, gen: int, z: int):
        i = gen - 1
        rows = list(mat)
        upper = rows[i + 1]
        rows[i], rows[i + 1] = upper, tuple(
            (a + z * b) % q for a, b in zip(rows[i], upper)
        )
        return tuple(rows)

    def member(mat) -> bool:
        for a in range(n):
            for c in range(n - a, n):
                if mat[a][c]:
                    return False
        return True

    if r == 0:
        ok = member(identity)
        return (1 if ok else 0), ([()] if ok and collect else ([] if collect else None))

    z = [0] * r
    mats = [identity] * (r + 1)
    for j in range(r):
        mats[j + 1] = step(mats[j], letters[j], 0)
    ops = r
    if ops > budget:
        raise BudgetExceeded(f"budget {budget} exceeded")
    count = 0
    points: list[tuple[int, ...]] | None = [] if collect else None
    while True:
        if member(mats[r]):
            count += 1
            if collect:
                points.append(tuple(z))
        k = r - 1
        while k >= 0 and z[k] == q - 1:
            z[k] = 0
            k -= 1
        if k < 0:
            break
        z[k] += 1
        ops += r - k
        if ops > budget:
            raise BudgetExceeded(f"budget {budget} exceeded after {ops} updates")
        for j in range(k, r):
            mats[j + 1] = step(mats[j], letters[j], z[j])
    return count, points
