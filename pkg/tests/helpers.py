"""Shared test utilities: disjoint unions and randomized pre-fold inputs."""

from __future__ import annotations

import random

from foldcx.complexes import Edge, Face, Morphism, TwoComplex
from foldcx.families import build_C, build_D, kp


def rename(f: Morphism, suffix: str) -> Morphism:
    ren = lambda x: f"{x}.{suffix}"
    cx = f.complex
    return Morphism(
        TwoComplex.make(
            [ren(v) for v in cx.vertices],
            [Edge(ren(e.id), ren(e.tail), ren(e.head)) for e in cx.edges],
            [
                Face(ren(x.id), tuple((ren(e), s) for e, s in x.boundary))
                for x in cx.faces
            ],
        ),
        f.presentation,
        {ren(e): lab for e, lab in f.edge_labels.items()},
        {ren(x): t for x, t in f.face_types.items()},
    )


def disjoint_union(parts: list[Morphism]) -> Morphism:
    pres = parts[0].presentation
    vertices, edges, faces, labels, types = [], [], [], {}, {}
    for k, part in enumerate(parts):
        p = rename(part, str(k))
        vertices += list(p.complex.vertices)
        edges += list(p.complex.edges)
        faces += list(p.complex.faces)
        labels.update(p.edge_labels)
        types.update(p.face_types)
    return Morphism(TwoComplex.make(vertices, edges, faces), pres, labels, types)


def quotient_vertices(f: Morphism, pairs) -> Morphism:
    """Glue vertex pairs without folding; the result stays a valid morphism
    but is typically no longer locally injective."""
    target: dict[str, str] = {}

    def resolve(v: str) -> str:
        while v in target:
            v = target[v]
        return v

    for u, v in pairs:
        ru, rv = resolve(u), resolve(v)
        if ru != rv:
            lo, hi = sorted((ru, rv))
            target[hi] = lo
    cx = f.complex
    edges = [Edge(e.id, resolve(e.tail), resolve(e.head)) for e in cx.edges]
    vertices = sorted({resolve(v) for v in cx.vertices})
    return Morphism(
        TwoComplex.make(vertices, edges, list(cx.faces)),
        f.presentation,
        dict(f.edge_labels),
        dict(f.face_types),
    )


def random_prefold(rng: random.Random) -> Morphism:
    """A random valid (usually non-immersed) morphism over the standard
    target: a disjoint union of small family complexes with a few vertex
    pairs glued together."""
    pool = [kp(), build_D(0), build_D(1), build_D(2), build_C(1), build_C(3)]
    parts = [rng.choice(pool) for _ in range(rng.randint(1, 3))]
    union = disjoint_union(parts)
    vertices = list(union.complex.vertices)
    pairs = [
        (rng.choice(vertices), rng.choice(vertices))
        for _ in range(rng.randint(1, 1 + len(vertices) // 2))
    ]
    return quotient_vertices(union, pairs)
