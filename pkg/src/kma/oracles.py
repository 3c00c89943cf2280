"""Independent brute-force reference computations used to cross-check the
fast paths.  Everything here is deliberately self-contained: no reflection
or classification code is shared with the main modules.
"""

from __future__ import annotations

import itertools
from fractions import Fraction


def _scan_symmetrizer(entries):
    n = len(entries)
    d = [None] * n
    d[0] = Fraction(1)
    stack = [0]
    while stack:
        i = stack.pop()
        for j in range(n):
            if i != j and entries[i][j] != 0 and d[j] is None:
                d[j] = d[i] * Fraction(entries[i][j], entries[j][i])
                stack.append(j)
    low = min(d)
    return [x / low for x in d]


def lattice_scan_real_roots(entries, height_cap: int) -> set[tuple[int, ...]]:
    """Real roots with |height| <= cap by exhaustive lattice scan: keep the
    nonnegative vectors whose norm equals a simple-root norm and whose
    height descent ends on a simple root, then mirror to negatives."""
    n = len(entries)
    d = _scan_symmetrizer(entries)
    b = [[Fraction(entries[i][j]) / d[j] for j in range(n)] for i in range(n)]
    simple_norms = {b[i][i] for i in range(n)}

    def norm(vec):
        return sum(vec[i] * vec[j] * b[i][j] for i in range(n) for j in range(n))

    def descends_to_simple(vec):
        v = list(vec)
        while True:
            if sum(v) == 1 and all(x in (0, 1) for x in v):
                return True
            pick = None
            for i in range(n):
                if sum(v[j] * entries[j][i] for j in range(n)) > 0:
                    pick = i
                    break
            if pick is None:
                return False
            c = sum(v[j] * entries[j][pick] for j in range(n))
            v[pick] -= c
            if any(x < 0 for x in v):
                return False

    found: set[tuple[int, ...]] = set()
    for vec in itertools.product(range(height_cap + 1), repeat=n):
        if sum(vec) == 0 or sum(vec) > height_cap:
            continue
        if norm(vec) in simple_norms and descends_to_simple(vec):
            found.add(vec)
            found.add(tuple(-x for x in vec))
    return found


def distinct_group_elements(entries, max_len: int) -> int:
    """Number of distinct Weyl elements among all letter tuples of length
    <= max_len, counted by exact matrix action on a provably generic
    rational point (independent of the word-reduction machinery)."""
    n = len(entries)

    def reflect(i, coords):
        c = sum(coords[j] * entries[i][j] for j in range(n))
        out = list(coords)
        out[i] -= c
        return tuple(out)

    # Point whose wall pairings are (1, q, q^2, ...) for huge q: a vanishing
    # integer combination sum k_i q^i needs some |k_i| >= q, far beyond any
    # root coefficient reachable at this depth, so the stabilizer is trivial.
    q = 10**6 + 3
    rhs = [Fraction(q**i) for i in range(n)]
    a = [[Fraction(entries[i][j]) for j in range(n)] for i in range(n)]
    aug = [row + [rhs[i]] for i, row in enumerate(a)]
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    base = tuple(aug[r][n] for r in range(n))
    images = {base}
    frontier = [base]
    for _ in range(max_len):
        nxt = []
        for p in frontier:
            for i in range(n):
                image = reflect(i, p)
                if image not in images:
                    images.add(image)
                    nxt.append(image)
        frontier = nxt
    return len(images)
