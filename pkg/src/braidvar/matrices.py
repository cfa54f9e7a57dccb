"""Dense exact matrices and the generator matrices of the monodromy calculus.

Strands are numbered 1..n from bottom to top.  A braid word read left to
right multiplies in *reversed* order: the word s_{i_1}...s_{i_r} with values
z_1..z_r has matrix B_{i_r}(z_r) ... B_{i_1}(z_1).  That convention lives in
exactly one place, :func:`monodromy_product`; nothing else in the package
multiplies atom matrices directly.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence


class SquareMatrix:
    """Immutable n x n matrix over an exact field."""

    __slots__ = ("field", "n", "rows")

    def __init__(self, field, rows: Sequence[Sequence]):
        self.field = field
        self.rows = tuple(tuple(row) for row in rows)
        self.n = len(self.rows)
        if any(len(row) != self.n for row in self.rows):
            raise ValueError("matrix is not square")

    @staticmethod
    def identity(field, n: int) -> SquareMatrix:
        one, zero = field.one, field.zero
        return SquareMatrix(
            field, [[one if i == j else zero for j in range(n)] for i in range(n)]
        )

    @staticmethod
    def diagonal(field, entries: Sequence) -> SquareMatrix:
        zero = field.zero
        n = len(entries)
        return SquareMatrix(
            field, [[entries[i] if i == j else zero for j in range(n)] for i in range(n)]
        )

    def __matmul__(self, other: SquareMatrix) -> SquareMatrix:
        n = self.n
        zero = self.field.zero
        rows = []
        for i in range(n):
            row = []
            for j in range(n):
                acc = zero
                for k in range(n):
                    acc = acc + self.rows[i][k] * other.rows[k][j]
                row.append(acc)
            rows.append(row)
        return SquareMatrix(self.field, rows)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SquareMatrix):
            return NotImplemented
        if self.n != other.n:
            return False
        return all(
            (self.rows[i][j] - other.rows[i][j]).is_zero()
            for i in range(self.n)
            for j in range(self.n)
        )

    __hash__ = None

    def __getitem__(self, ij: tuple[int, int]):
        return self.rows[ij[0]][ij[1]]

    def is_upper_triangular(self) -> bool:
        return all(
            self.rows[i][j].is_zero() for i in range(self.n) for j in range(i)
        )

    def is_identity(self) -> bool:
        return self == SquareMatrix.identity(self.field, self.n)

    def __str__(self) -> str:
        return "\n".join("[" + ", ".join(str(x) for x in row) + "]" for row in self.rows)


# -- monodromy atoms -------------------------------------------------------


@dataclass(frozen=True)
class Crossing:
    """A bare crossing of strands i, i+1 (1-based)."""

    i: int


@dataclass(frozen=True)
class Handleslide:
    """A handleslide mark from strand i up to strand j (1 <= i < j <= n)."""

    i: int
    j: int
    value: object


@dataclass(frozen=True)
class MarkedPoint:
    """A marked point on strand i with invertible value."""

    i: int
    value: object


@dataclass(frozen=True)
class Letter:
    """A braid letter with its adjacent handleslide value: crossing i with a
    mark immediately to its left, equal to B_i(value) as a matrix."""

    i: int
    value: object


@dataclass(frozen=True)
class Scaling:
    """A frame pair on strands i, i+1: diag(..., -u^{-1}, u, ...)."""

    i: int
    value: object


Atom = Crossing | Handleslide | MarkedPoint | Letter | Scaling


def braid_matrix(field, n: int, i: int, z) -> SquareMatrix:
    """Identity with the 2x2 block [[0,1],[1,z]] at rows/columns (i, i+1)."""
    if not 1 <= i <= n - 1:
        raise ValueError(f"generator index {i} out of range for {n} strands")
    m = [list(row) for row in SquareMatrix.identity(field, n).rows]
    m[i - 1][i - 1] = field.zero
    m[i - 1][i] = field.one
    m[i][i - 1] = field.one
    m[i][i] = z
    return SquareMatrix(field, m)


def crossing_matrix(field, n: int, i: int) -> SquareMatrix:
    return braid_matrix(field, n, i, field.zero)


def handleslide_matrix(field, n: int, i: int, j: int, a) -> SquareMatrix:
    """S_{i,j}(a) = I + a E_{i,j} for strands i < j."""
    if not 1 <= i < j <= n:
        raise ValueError(f"handleslide strands ({i},{j}) out of range")
    m = [list(row) for row in SquareMatrix.identity(field, n).rows]
    m[i - 1][j - 1] = a
    return SquareMatrix(field, m)


def marked_point_matrix(field, n: int, i: int, t) -> SquareMatrix:
    if not 1 <= i <= n:
        raise ValueError(f"strand {i} out of range")
    if not t.is_unit():
        raise ZeroDivisionError(f"marked point on strand {i} must be invertible")
    entries = [field.one] * n
    entries[i - 1] = t
    return SquareMatrix.diagonal(field, entries)


def diagonal_pair_matrix(field, n: int, i: int, k: int, a, b) -> SquareMatrix:
    """diag(1,...,a,...,b,...,1) with a at strand i and b at strand k."""
    if not 1 <= i < k <= n:
        raise ValueError(f"diagonal pair strands ({i},{k}) out of range")
    entries = [field.one] * n
    entries[i - 1] = a
    entries[k - 1] = b
    return SquareMatrix.diagonal(field, entries)


def frame_matrix(field, n: int, i: int, u) -> SquareMatrix:
    """The frame pair on strands i, i+1: diag(..., -u^{-1}, u, ...)."""
    if not u.is_unit():
        raise ZeroDivisionError(f"frame on strand {i} must be invertible")
    return diagonal_pair_matrix(field, n, i, i + 1, -u.inv(), u)


def permutation_matrix(field, perm: Sequence[int]) -> SquareMatrix:
    """Matrix with entry 1 at (perm[b], b) for each column b (0-based images)."""
    n = len(perm)
    zero, one = field.zero, field.one
    rows = [[zero] * n for _ in range(n)]
    for b in range(n):
        rows[perm[b]][b] = one
    return SquareMatrix(field, rows)


def atom_matrix(atom: Atom, field, n: int) -> SquareMatrix:
    if isinstance(atom, Crossing):
        return crossing_matrix(field, n, atom.i)
    if isinstance(atom, Handleslide):
        return handleslide_matrix(field, n, atom.i, atom.j, atom.value)
    if isinstance(atom, MarkedPoint):
        return marked_point_matrix(field, n, atom.i, atom.value)
    if isinstance(atom, Letter):
        return braid_matrix(field, n, atom.i, atom.value)
    if isinstance(atom, Scaling):
        return frame_matrix(field, n, atom.i, atom.value)
    raise TypeError(f"unknown atom {atom!r}")


def monodromy_product(atoms: Iterable[Atom], field, n: int) -> SquareMatrix:
    """Product of atom matrices in reversed reading order.

    This is the single place that fixes the convention: atoms are listed left
    to right along the front, and the matrix of the whole configuration is
    the product of the atom matrices taken right to left.
    """
    out = SquareMatrix.identity(field, n)
    for atom in atoms:
        out = atom_matrix(atom, field, n) @ out
    return out


def push_diagonal_left(
    atoms: Sequence[Atom], field, n: int
) -> tuple[SquareMatrix, list[Letter]]:
    """Normal form diagonal x letters for a word of Letter, MarkedPoint and
    Scaling atoms.

    Returns ``(D, letters)`` with the matrix product of ``atoms`` equal to
    ``D @ monodromy_product(letters)``.  Letter values are rescaled by unit
    monomials in the marked-point and frame values; a letter crossing strands
    i, i+1 past a diagonal with entries (d_i, d_{i+1}) picks up the factor
    d_{i+1}/d_i and swaps the two entries.
    """
    diag = [field.one] * n
    letters: list[Letter] = []
    for atom in atoms:
        if isinstance(atom, MarkedPoint):
            if not atom.value.is_unit():
                raise ZeroDivisionError("marked point value must be invertible")
            diag[atom.i - 1] = diag[atom.i - 1] * atom.value
        elif isinstance(atom, Scaling):
            if not atom.value.is_unit():
                raise ZeroDivisionError("frame value must be invertible")
            diag[atom.i - 1] = diag[atom.i - 1] * (-atom.value.inv())
            diag[atom.i] = diag[atom.i] * atom.value
        elif isinstance(atom, Letter):
            i = atom.i
            lo, hi = diag[i - 1], diag[i]
            letters.append(Letter(i, atom.value * hi / lo))
            diag[i - 1], diag[i] = hi, lo
        else:
            raise TypeError(f"push_diagonal_left cannot handle {atom!r}")
    return SquareMatrix.diagonal(field, diag), letters


def upper_triangular_inverse(m: SquareMatrix) -> SquareMatrix:
    """Inverse of an invertible upper-triangular matrix by back substitution."""
    n, field = m.n, m.field
    inv = [[field.zero] * n for _ in range(n)]
    for i in range(n - 1, -1, -1):
        pivot = m.rows[i][i]
        if not pivot.is_unit():
            raise ZeroDivisionError("matrix is not invertible")
        inv[i][i] = pivot.inv()
        for j in range(i + 1, n):
            acc = field.zero
            for k in range(i + 1, j + 1):
                acc = acc + m.rows[i][k] * inv[k][j]
            inv[i][j] = -(pivot.inv()) * acc
    return SquareMatrix(field, inv)
