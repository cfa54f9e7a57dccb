# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled brute-force enumeration over F_q^r (hot kernel).

Mirrors _counting_py.count_points: odometer with cached prefix products,
flat C arrays, one two-row update per fastest-coordinate step.
"""

from libc.stdlib cimport calloc, free


class BudgetExceeded(RuntimeError):
    pass


def count_points(letters, int n, int q, long long budget, bint collect):
    cdef int r = len(letters)
    cdef int i, j, k, a, c, row
    cdef long long ops = 0, count = 0
    cdef list points = [] if collect else None

    if r == 0:
        return (1, ([()] if collect else None))

    cdef int* gens = <int*> calloc(r, sizeof(int))
    cdef int* z = <int*> calloc(r, sizeof(int))
    # mats[k] is an n*n block at offset k*n*n; mats[0] = identity
    cdef int* mats = <int*> calloc((r + 1) * n * n, sizeof(int))
    if gens == NULL or z == NULL or mats == NULL:
        free(gens); free(z); free(mats)
        raise MemoryError()

    try:
        for j in range(r):
            gens[j] = letters[j]
        for i in range(n):
            mats[i * n + i] = 1

        # step: mats[j+1] = B_{gens[j]}(z[j]) @ mats[j]
        for j in range(r):
            _apply(mats, j, n, q, gens[j], z[j])
        ops = r
        if ops > budget:
            raise BudgetExceeded("budget %d exceeded" % budget)

        while True:
            # membership: entry (a, c) with a + c >= n must vanish
            row = 1
            for a in range(1, n):
                for c in range(n - a, n):
                    if mats[r * n * n + a * n + c] != 0:
                        row = 0
                        break
                if row == 0:
                    break
            if row:
                count += 1
                if collect:
                    points.append(tuple([z[j] for j in range(r)]))
            k = r - 1
            while k >= 0 and z[k] == q - 1:
                z[k] = 0
                k -= 1
            if k < 0:
                break
            z[k] += 1
            ops += r - k
            if ops > budget:
                raise BudgetExceeded("budget %d exceeded" % budget)
            for j in range(k, r):
                _apply(mats, j, n, q, gens[j], z[j])
        return count, points
    finally:
        free(gens)
        free(z)
        free(mats)


cdef inline void _apply(int* mats, int j, int n, int q, int gen, int zj) nogil:
    # write B_gen(zj) @ mats[j] into mats[j+1]
    cdef int i = gen - 1
    cdef int col
    cdef int* src = mats + j * n * n
    cdef int* dst = mats + (j + 1) * n * n
    cdef int rr
    for rr in range(n):
        if rr != i and rr != i + 1:
            for col in range(n):
                dst[rr * n + col] = src[rr * n + col]
    for col in range(n):
        dst[i * n + col] = src[(i + 1) * n + col]
        dst[(i + 1) * n + col] = (src[i * n + col] + zj * src[(i + 1) * n + col]) % q
