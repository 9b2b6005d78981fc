"""Brute-force references used only by the tests."""

from itertools import product

from mpaz.levi import LeviSp


def levi_from_root_subset(n, subset):
    """Read off the Levi of Sp(2n) generated by a set of simple roots of type C_n.

    Roots are numbered 1..n: alpha_i = e_i - e_{i+1} for i < n, alpha_n = 2 e_n.
    """
    if n == 0:
        return LeviSp((), 0, 0)
    parts = []
    run = 1
    for i in range(1, n):
        if i in subset:
            run += 1
        else:
            parts.append(run)
            run = 1
    if n in subset:
        return LeviSp(tuple(parts), run, n)
    return LeviSp(tuple(parts) + (run,), 0, n)


def levis_from_roots(n):
    out = []
    for mask in product((0, 1), repeat=n):
        subset = {i + 1 for i, bit in enumerate(mask) if bit}
        out.append(levi_from_root_subset(n, subset))
    return out


def triples_brute(k_p, k_pp):
    """M(k', k'') by scanning every pair of 0/1 rows of every admissible length."""
    out = []
    for k in range(0, k_p + k_pp + 1):
        for row_p in product((0, 1), repeat=k):
            for row_pp in product((0, 1), repeat=k):
                if sum(row_p) != k_p or sum(row_pp) != k_pp:
                    continue
                if all(a or b for a, b in zip(row_p, row_pp)):
                    out.append((row_p, row_pp))
    return out
