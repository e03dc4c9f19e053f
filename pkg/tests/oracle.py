"""Brute-force reference implementations, independent of the package internals.

Only plain loops over tables are used here so that the package's engine,
canonical form and identity checker can be cross-checked against them.
"""

import itertools


def _tables(n):
    for flat in itertools.product(range(n), repeat=n * n):
        yield tuple(tuple(flat[i * n:(i + 1) * n]) for i in range(n))


def _associative(t, n):
    return all(t[t[x][y]][z] == t[x][t[y][z]] for x in range(n) for y in range(n) for z in range(n))


def _absorptive(m, j, n):
    r = range(n)
    return (all(j[m[y][x]][x] == x for x in r for y in r)          # (y^x)vx = x
            and all(m[x][j[x][y]] == x for x in r for y in r)      # x^(xvy) = x
            and all(m[j[y][x]][x] == x for x in r for y in r)      # (yvx)^x = x
            and all(j[x][m[x][y]] == x for x in r for y in r))     # xv(x^y) = x


def _commutative(t, n):
    return all(t[x][y] == t[y][x] for x in range(n) for y in range(n))


def _relabel(m, j, perm, n):
    inv = [0] * n
    for old, new in enumerate(perm):
        inv[new] = old
    rm = tuple(tuple(perm[m[inv[x]][inv[y]]] for y in range(n)) for x in range(n))
    rj = tuple(tuple(perm[j[inv[x]][inv[y]]] for y in range(n)) for x in range(n))
    return rm, rj


def naive_skew_lattices(n, lattices_only=False):
    """All skew lattices on {0..n-1} up to isomorphism, as (meet, join) pairs.

    Representatives are the lexicographically least relabeling found by
    trying every permutation.
    """
    bands = [t for t in _tables(n) if _associative(t, n)]
    if lattices_only:
        bands = [t for t in bands if _commutative(t, n)]
    seen = set()
    for m in bands:
        for j in bands:
            if not _absorptive(m, j, n):
                continue
            rep = min(_relabel(m, j, perm, n) for perm in itertools.permutations(range(n)))
            seen.add(rep)
    return sorted(seen)


def brute_isomorphic(a, b):
    if a.n != b.n:
        return False
    for perm in itertools.permutations(range(a.n)):
        if all(perm[a.meet[x][y]] == b.meet[perm[x]][perm[y]]
               and perm[a.join[x][y]] == b.join[perm[x]][perm[y]]
               for x in range(a.n) for y in range(a.n)):
            return True
    return False


def brute_holds(a, lhs, rhs, nvars):
    """Evaluate a pair of Python callables f(m, j, *vars) over every assignment."""
    return all(lhs(a.meet, a.join, *v) == rhs(a.meet, a.join, *v)
               for v in itertools.product(range(a.n), repeat=nvars))
