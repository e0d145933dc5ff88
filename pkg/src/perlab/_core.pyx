# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled kernel for signed permutations; mirrors perlab._core_py."""

from itertools import permutations

BACKEND = "cython"

cdef enum:
    MAXRANK = 64


cpdef tuple compose(tuple a, tuple b):
    cdef Py_ssize_t i, m = len(b)
    cdef long x, y
    out = [0] * m
    for i in range(m):
        x = b[i]
        y = a[(x if x > 0 else -x) - 1]
        out[i] = y if x > 0 else -y
    return tuple(out)


cpdef tuple inverse(tuple t):
    cdef Py_ssize_t i, m = len(t)
    cdef long x
    out = [0] * m
    for i in range(m):
        x = t[i]
        if x > 0:
            out[x - 1] = i + 1
        else:
            out[-x - 1] = -(i + 1)
    return tuple(out)


cpdef long length(tuple t):
    cdef Py_ssize_t i, j, m = len(t)
    cdef long p[MAXRANK]
    cdef int s[MAXRANK]
    cdef long count = 0
    cdef long x
    if m > MAXRANK:
        raise ValueError("rank too large for the compiled kernel")
    for i in range(m):
        x = t[i]
        p[i] = x if x > 0 else -x
        s[i] = 1 if x > 0 else -1
    for i in range(m):
        if s[i] < 0:
            count += 1
        for j in range(i + 1, m):
            if p[i] < p[j]:
                if s[i] < 0:
                    count += 2
            else:
                count += 1
    return count


cpdef tuple act(tuple t, v):
    cdef Py_ssize_t i, m = len(t)
    cdef long x
    if len(v) != m:
        raise ValueError(f"dimension mismatch: {len(v)} vs rank {m}")
    out = [None] * m
    for i in range(m):
        x = t[i]
        c = v[i]
        if x > 0:
            out[x - 1] = c
        else:
            out[-x - 1] = -c
    return tuple(out)


cpdef bint is_involution(tuple t):
    cdef Py_ssize_t i, m = len(t)
    cdef long x, y
    for i in range(m):
        x = t[i]
        y = t[(x if x > 0 else -x) - 1]
        if x < 0:
            y = -y
        if y != i + 1:
            return False
    return True


cpdef list enumerate_all(int m):
    cdef unsigned long mask, nmasks = 1UL << m
    cdef Py_ssize_t i
    out = []
    for perm in permutations(range(1, m + 1)):
        for mask in range(nmasks):
            row = [0] * m
            for i in range(m):
                # bit i set means a minus sign; mask 0 comes first
                row[i] = -perm[i] if (mask >> (m - 1 - i)) & 1 else perm[i]
            out.append(tuple(row))
    return out
