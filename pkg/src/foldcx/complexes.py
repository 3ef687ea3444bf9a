"""Combinatorial 2-complexes and combinatorial maps onto a presentation complex.

Cells are named by strings.  Wherever a deterministic choice among ids is
needed (quotients keep the smallest id of a merged class, conflicts are
processed smallest first) ids are compared in shortlex order: by length,
then lexicographically.

A face boundary is a cyclic sequence of signed edges, stored as a tuple of
(edge_id, sign) starting at a fixed position 0.  A Morphism labels every
edge with a generator of the target presentation (orientation normalized
so the label is always read with sign +1 along the edge) and assigns every
face a relator index; position p of the face's boundary must carry exactly
the letter at position p of that relator.  Side positions are therefore
absolute: the slot of a face side is the pair (relator index, position).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from .presentations import Presentation, Word, format_word, is_proper_power

SignedEdge = tuple[str, int]
SideSlot = tuple[int, int]  # (relator index, position in relator)


def id_key(cell_id: str) -> tuple[int, str]:
    """Shortlex sort key used for every deterministic choice among ids."""
    return (len(cell_id), cell_id)


def min_id(a: str, b: str) -> str:
    return a if id_key(a) <= id_key(b) else b


@dataclass(frozen=True)
class Edge:
    id: str
    tail: str
    head: str


@dataclass(frozen=True)
class Face:
    id: str
    boundary: tuple[SignedEdge, ...]


class ComplexError(ValueError):
    """Raised when a complex or morphism violates a structural precondition."""


@dataclass(frozen=True)
class TwoComplex:
    """Vertices, directed edges and faces with closed attaching boundaries."""

    vertices: tuple[str, ...]
    edges: tuple[Edge, ...]
    faces: tuple[Face, ...]

    @staticmethod
    def make(vertices, edges, faces) -> "TwoComplex":
        """Normalize inputs: sort each sort by id and check referential integrity."""
        vs = tuple(sorted(set(vertices), key=id_key))
        es = tuple(sorted(edges, key=lambda e: id_key(e.id)))
        fs = tuple(sorted(faces, key=lambda f: id_key(f.id)))
        cx = TwoComplex(vs, es, fs)
        if cx.structural_violations:
            raise ComplexError("; ".join(cx.structural_violations))
        return cx

    @cached_property
    def edge_by_id(self) -> dict[str, Edge]:
        return {e.id: e for e in self.edges}

    @cached_property
    def face_by_id(self) -> dict[str, Face]:
        return {f.id: f for f in self.faces}

    @cached_property
    def structural_violations(self) -> list[str]:
        out = []
        if len(set(self.vertices)) != len(self.vertices):
            out.append("duplicate vertex id")
        if len({e.id for e in self.edges}) != len(self.edges):
            out.append("duplicate edge id")
        if len({f.id for f in self.faces}) != len(self.faces):
            out.append("duplicate face id")
        vset = set(self.vertices)
        eids = {e.id for e in self.edges}
        for e in self.edges:
            if e.tail not in vset or e.head not in vset:
                out.append(f"edge {e.id} references missing vertex")
        for f in self.faces:
            if not f.boundary:
                out.append(f"face {f.id} has empty boundary")
                continue
            for eid, sign in f.boundary:
                if eid not in eids:
                    out.append(f"face {f.id} references missing edge {eid}")
                if sign not in (1, -1):
                    out.append(f"face {f.id} has a side with sign {sign}")
            if not out or all(eid in eids for eid, _ in f.boundary):
                path_ok = True
                n = len(f.boundary)
                for p in range(n):
                    eid, sign = f.boundary[p]
                    nid, nsign = f.boundary[(p + 1) % n]
                    e, ne = self.edge_by_id[eid], self.edge_by_id[nid]
                    end = e.head if sign > 0 else e.tail
                    start = ne.tail if nsign > 0 else ne.head
                    if end != start:
                        path_ok = False
                if not path_ok:
                    out.append(f"face {f.id} boundary is not a closed edge path")
        return out

    def side_start(self, side: SignedEdge) -> str:
        eid, sign = side
        e = self.edge_by_id[eid]
        return e.tail if sign > 0 else e.head

    def side_end(self, side: SignedEdge) -> str:
        eid, sign = side
        e = self.edge_by_id[eid]
        return e.head if sign > 0 else e.tail

    def edge_face_occurrences(self) -> dict[str, int]:
        """Total occurrence count of each edge over all face boundaries."""
        counts = {e.id: 0 for e in self.edges}
        for f in self.faces:
            for eid, _ in f.boundary:
                counts[eid] += 1
        return counts

    @cached_property
    def connected(self) -> bool:
        if not self.vertices:
            return True
        adj: dict[str, list[str]] = {v: [] for v in self.vertices}
        for e in self.edges:
            adj[e.tail].append(e.head)
            adj[e.head].append(e.tail)
        seen = {self.vertices[0]}
        stack = [self.vertices[0]]
        while stack:
            for w in adj[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == len(self.vertices)


def euler_characteristic(cx: TwoComplex) -> int:
    return len(cx.vertices) - len(cx.edges) + len(cx.faces)


def average_curvature(cx: TwoComplex) -> Fraction:
    """Euler characteristic divided by the number of 2-cells, exactly."""
    if not cx.faces:
        raise ComplexError("average curvature needs at least one face")
    return Fraction(euler_characteristic(cx), len(cx.faces))


def free_faces(cx: TwoComplex) -> set[str]:
    """Edges that occur exactly once, with multiplicity, over all boundaries."""
    return {eid for eid, n in cx.edge_face_occurrences().items() if n == 1}


def collapse_free_face(cx: TwoComplex, edge_id: str) -> TwoComplex:
    """Remove a free edge together with its unique incident face."""
    if edge_id not in free_faces(cx):
        raise ComplexError(f"edge {edge_id} is not a free face")
    (face,) = [f for f in cx.faces if any(eid == edge_id for eid, _ in f.boundary)]
    return TwoComplex.make(
        cx.vertices,
        [e for e in cx.edges if e.id != edge_id],
        [f for f in cx.faces if f.id != face.id],
    )


@dataclass(frozen=True)
class Morphism:
    """A combinatorial map from `complex` to the 2-complex of `presentation`.

    edge_labels maps each edge id to a generator (the edge is oriented so
    its label reads forward); face_types maps each face id to a relator
    index.  validate() reports every violated invariant instead of raising.
    """

    complex: TwoComplex
    presentation: Presentation
    edge_labels: dict[str, str]
    face_types: dict[str, int]

    def __post_init__(self):
        for word in self.presentation.relators:
            if is_proper_power(word):
                raise ComplexError(
                    "target relator {!r} is a proper power; side positions "
                    "would be ambiguous".format(format_word(word))
                )

    def relator(self, face_id: str) -> Word:
        return self.presentation.relators[self.face_types[face_id]]

    def side_slots(self, edge_id: str) -> list[tuple[str, int]]:
        """All (face id, position) traversing the edge, in sorted order."""
        out = []
        for f in self.complex.faces:
            for p, (eid, _) in enumerate(f.boundary):
                if eid == edge_id:
                    out.append((f.id, p))
        return out

    def slot_of(self, face_id: str, position: int) -> SideSlot:
        return (self.face_types[face_id], position)


def validate(f: Morphism) -> list[str]:
    """All violated invariants of the morphism, empty when valid."""
    out = list(f.complex.structural_violations)
    gens = set(f.presentation.generators)
    for e in f.complex.edges:
        label = f.edge_labels.get(e.id)
        if label is None:
            out.append(f"edge {e.id} has no label")
        elif label not in gens:
            out.append(f"edge {e.id} labeled with undeclared generator {label!r}")
    for face in f.complex.faces:
        rix = f.face_types.get(face.id)
        if rix is None:
            out.append(f"face {face.id} has no relator type")
            continue
        if not 0 <= rix < len(f.presentation.relators):
            out.append(f"face {face.id} has unknown relator type {rix}")
            continue
        word = f.presentation.relators[rix]
        if len(face.boundary) != len(word):
            out.append(
                f"face {face.id}: boundary/relator length mismatch "
                f"({len(face.boundary)} != {len(word)})"
            )
            continue
        for p, (eid, sign) in enumerate(face.boundary):
            label = f.edge_labels.get(eid)
            if label is None:
                continue
            gen, wsign = word[p]
            if label != gen or sign != wsign:
                out.append(
                    f"face {face.id} position {p} reads "
                    f"({label},{sign:+d}), relator has ({gen},{wsign:+d})"
                )
    return out


@dataclass(frozen=True)
class ImmersionWitness:
    """Names the cell where local injectivity fails and the colliding pair."""

    kind: str  # "vertex" or "edge"
    cell: str
    first: tuple
    second: tuple

    def __str__(self) -> str:
        return (
            f"{self.kind} {self.cell}: side {self.first} collides with {self.second}"
        )


def immersion_witness(f: Morphism) -> ImmersionWitness | None:
    """First local-injectivity failure in deterministic order, or None.

    Vertex links: no two outgoing edges with one label, no two incoming
    edges with one label.  Edge links: the slots (relator, position) of all
    face sides traversing one edge are pairwise distinct.  The result is
    cached on the morphism (values are immutable).
    """
    if "_immersion_cache" in f.__dict__:
        return f.__dict__["_immersion_cache"]
    problems = validate(f)
    if problems:
        raise ComplexError("invalid morphism: " + "; ".join(problems))
    witness = None
    seen_end: dict[tuple[str, str, int], str] = {}
    for e in f.complex.edges:
        label = f.edge_labels[e.id]
        for vertex, direction in ((e.tail, 1), (e.head, -1)):
            key = (vertex, label, direction)
            if key in seen_end:
                witness = ImmersionWitness(
                    "vertex",
                    vertex,
                    (seen_end[key], label, direction),
                    (e.id, label, direction),
                )
                break
            seen_end[key] = e.id
        if witness:
            break
    if witness is None:
        seen_slot: dict[tuple[str, SideSlot], tuple[str, int]] = {}
        for face in f.complex.faces:
            for p, (eid, _) in enumerate(face.boundary):
                slot = f.slot_of(face.id, p)
                key = (eid, slot)
                if key in seen_slot:
                    witness = ImmersionWitness(
                        "edge", eid, seen_slot[key] + slot, (face.id, p) + slot
                    )
                    break
                seen_slot[key] = (face.id, p)
            if witness:
                break
    f.__dict__["_immersion_cache"] = witness
    return witness


def is_immersion(f: Morphism) -> bool:
    return immersion_witness(f) is None


def presentation_complex(pres: Presentation) -> Morphism:
    """The identity-labeled complex of a presentation: one vertex, one loop
    per generator, one face per relator spelled along its boundary."""
    v = "v0"
    edges = [Edge(g, v, v) for g in pres.generators]
    faces = [
        Face(f"f{k}", tuple((gen, sign) for gen, sign in word))
        for k, word in enumerate(pres.relators)
    ]
    cx = TwoComplex.make([v], edges, faces)
    labels = {g: g for g in pres.generators}
    types = {f"f{k}": k for k in range(len(pres.relators))}
    return Morphism(cx, pres, labels, types)
