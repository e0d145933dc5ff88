"""Pure-Python kernel for signed permutations.

A signed permutation of rank m is a tuple ``t`` of nonzero ints with
``t[i-1] = +-sigma(i)``.  It sends the basis vector e_i to sign(t_i) e_{|t_i|}.
The compiled module ``perlab._core`` exposes the same functions.
"""

from itertools import permutations, product

BACKEND = "python"


def compose(a, b):
    """Return a*b, i.e. apply b first and then a."""
    out = []
    for x in b:
        y = a[abs(x) - 1]
        out.append(y if x > 0 else -y)
    return tuple(out)


def inverse(t):
    out = [0] * len(t)
    for i, x in enumerate(t, start=1):
        out[abs(x) - 1] = i if x > 0 else -i
    return tuple(out)


def length(t):
    """Number of positive roots of C_m sent to negative roots."""
    m = len(t)
    count = 0
    for i in range(m):
        pi, si = abs(t[i]), (1 if t[i] > 0 else -1)
        if si < 0:
            count += 1
        for j in range(i + 1, m):
            pj, sj = abs(t[j]), (1 if t[j] > 0 else -1)
            if pi < pj:
                # e_i - e_j and e_i + e_j both lead with s_i at position pi
                if si < 0:
                    count += 2
            else:
                if sj > 0:
                    count += 1  # e_i - e_j leads with -s_j
                if sj < 0:
                    count += 1  # e_i + e_j leads with s_j
    return count


def act(t, v):
    """Image of the coordinate vector v; entries may be any ring elements."""
    if len(v) != len(t):
        raise ValueError(f"dimension mismatch: {len(v)} vs rank {len(t)}")
    out = [None] * len(t)
    for x, c in zip(t, v):
        out[abs(x) - 1] = c if x > 0 else -c
    return tuple(out)


def is_involution(t):
    for i, x in enumerate(t, start=1):
        y = t[abs(x) - 1]
        if (y if x > 0 else -y) != i:
            return False
    return True


def enumerate_all(m):
    """All 2^m m! signed permutations, permutation-major order."""
    out = []
    for perm in permutations(range(1, m + 1)):
        for signs in product((1, -1), repeat=m):
            out.append(tuple(s * p for s, p in zip(signs, perm)))
    return out
