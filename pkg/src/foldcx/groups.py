"""Fundamental groups of 2-complexes and coset enumeration.

pi1_presentation reads a presentation off a spanning tree: one generator
per non-tree edge, one relator per face (its boundary word with tree edges
deleted, freely reduced).

coset_enumeration is a relator-table-filling (HLT style) Todd-Coxeter
enumeration of the cosets of the trivial subgroup, with immediate
coincidence handling.  It either closes the table, in which case the
number of live cosets is exactly the group order, or gives up when more
cosets than the cap have been defined.  A finished run is always correct;
overflow never is reported as an answer.
"""

from __future__ import annotations

from collections import deque

from .complexes import ComplexError, TwoComplex
from .presentations import Presentation, Word, free_reduce


def spanning_tree(cx: TwoComplex, basepoint: str) -> set[str]:
    """Edge ids of a BFS spanning tree rooted at basepoint."""
    adj: dict[str, list[tuple[str, str]]] = {v: [] for v in cx.vertices}
    for e in cx.edges:
        adj[e.tail].append((e.head, e.id))
        adj[e.head].append((e.tail, e.id))
    tree: set[str] = set()
    seen = {basepoint}
    queue = deque([basepoint])
    while queue:
        v = queue.popleft()
        for w, eid in sorted(adj[v]):
            if w not in seen:
                seen.add(w)
                tree.add(eid)
                queue.append(w)
    if len(seen) != len(cx.vertices):
        raise ComplexError("pi1_presentation needs a connected complex")
    return tree


def pi1_presentation(cx: TwoComplex, basepoint: str | None = None) -> Presentation:
    if not cx.vertices:
        raise ComplexError("pi1_presentation of the empty complex")
    base = basepoint if basepoint is not None else cx.vertices[0]
    if base not in cx.vertices:
        raise ComplexError(f"unknown basepoint {base!r}")
    tree = spanning_tree(cx, base)
    gens = tuple(e.id for e in cx.edges if e.id not in tree)
    relators = []
    for face in cx.faces:
        word: Word = tuple(
            (eid, sign) for eid, sign in face.boundary if eid not in tree
        )
        word = free_reduce(word)
        if word:
            relators.append(word)
    return Presentation(gens, tuple(relators))


def coset_enumeration(
    pres: Presentation, max_cosets: int = 100_000, cancel=None
) -> int | None:
    """Order of the presented group, or None when the table exceeds the cap
    or `cancel` (polled between scans) asks the run to stop.

    Cosets of the trivial subgroup are enumerated, so a closed table has
    one row per group element.
    """
    if max_cosets < 1:
        raise ComplexError("max_cosets must be at least 1")
    ngens = len(pres.generators)
    col = {}
    for k, g in enumerate(pres.generators):
        col[(g, 1)] = 2 * k
        col[(g, -1)] = 2 * k + 1
    ncols = 2 * ngens
    relator_cols = [[col[letter] for letter in w] for w in pres.relators]

    table: list[list[int | None]] = [[None] * ncols]
    parent = [0]
    dead = 0

    def rep(k: int) -> int:
        r = k
        while parent[r] != r:
            r = parent[r]
        while parent[k] != r:
            parent[k], k = r, parent[k]
        return r

    def define(a: int, x: int) -> int | None:
        if len(table) >= max_cosets:
            return None
        table.append([None] * ncols)
        parent.append(len(table) - 1)
        b = len(table) - 1
        table[a][x] = b
        table[b][x ^ 1] = a
        return b

    def coincidence(a: int, b: int) -> None:
        nonlocal dead
        queue = deque()

        def merge(x: int, y: int) -> None:
            nonlocal dead
            rx, ry = rep(x), rep(y)
            if rx != ry:
                lo, hi = min(rx, ry), max(rx, ry)
                parent[hi] = lo
                dead += 1
                queue.append(hi)

        merge(a, b)
        while queue:
            g = queue.popleft()
            for x in range(ncols):
                d = table[g][x]
                if d is None:
                    continue
                table[d][x ^ 1] = None
                mu, nu = rep(g), rep(d)
                if table[mu][x] is not None:
                    merge(nu, table[mu][x])
                elif table[nu][x ^ 1] is not None:
                    merge(mu, table[nu][x ^ 1])
                else:
                    table[mu][x] = nu
                    table[nu][x ^ 1] = mu

    def scan_and_fill(a: int, word: list[int]) -> bool:
        """Scan relator `word` at coset a, filling gaps; False on overflow."""
        f, i = a, 0
        b, j = a, len(word) - 1
        while True:
            while i <= j and table[f][word[i]] is not None:
                f = rep(table[f][word[i]])
                i += 1
            if i > j:
                if f != b:
                    coincidence(f, b)
                return True
            while j >= i and table[b][word[j] ^ 1] is not None:
                b = rep(table[b][word[j] ^ 1])
                j -= 1
            if j < i:
                coincidence(f, b)
                return True
            if i == j:
                table[f][word[i]] = b
                table[b][word[i] ^ 1] = f
                return True
            made = define(f, word[i])
            if made is None:
                return False

    # Scan passes repeat until one completes without defining or merging a
    # coset: coincidences can undefine entries of rows scanned earlier, so a
    # single sweep is not enough to certify closure.
    changed = True
    while changed:
        changed = False
        a = 0
        while a < len(table):
            if cancel is not None and cancel():
                return None
            if rep(a) != a:
                a += 1
                continue
            for word in relator_cols:
                before = (len(table), dead)
                if not scan_and_fill(a, word):
                    return None
                if (len(table), dead) != before:
                    changed = True
                if rep(a) != a:
                    break
            if rep(a) == a:
                for x in range(ncols):
                    if table[a][x] is None:
                        if define(a, x) is None:
                            return None
                        changed = True
            a += 1
    for a in range(len(table)):  # closure sanity: complete and consistent
        if rep(a) != a:
            continue
        assert all(entry is not None for entry in table[a])
        for word in relator_cols:
            b = a
            for x in word:
                b = rep(table[b][x])
            assert b == a
    return len(table) - dead
