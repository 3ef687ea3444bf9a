"""Contractibility certificates.

A certificate is replayable evidence for (or against) contractibility:

  collapsible                a sequence of elementary collapses down to a
                             point; replay_collapse checks it
  simply-connected-acyclic   point homology plus a finished coset
                             enumeration of order 1; a connected 2-complex
                             with trivial fundamental group and trivial H2
                             is contractible
  not-contractible           a homology witness (nonzero Betti number or
                             torsion, or Euler characteristic != 1)
  unknown                    budgets exhausted before any of the above

Collapsibility is decided by backtracking over free-face collapse orders;
once no 2-cells remain the rest is forced (a graph collapses to a point
exactly when it is a tree, pruning leaves in any order).
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .complexes import ComplexError, TwoComplex, euler_characteristic, free_faces
from .groups import coset_enumeration, pi1_presentation
from .homology import HomologyProfile, homology

CollapseStep = tuple[str, str, str]  # ("edge-face", edge, face) | ("vertex-edge", v, e)

PI1_JUSTIFICATION = (
    "connected 2-complex with trivial fundamental group and trivial H2 "
    "is contractible"
)


@dataclass(frozen=True)
class Budgets:
    collapse_nodes: int = 20_000
    max_cosets: int = 100_000


def _tree_collapse(cx: TwoComplex, edges: set[str]) -> list[CollapseStep] | None:
    """Leaf-pruning order for the remaining 1-skeleton, or None if it is
    not a tree on all vertices."""
    if len(edges) != len(cx.vertices) - 1:
        return None
    degree = {v: 0 for v in cx.vertices}
    incident: dict[str, list] = {v: [] for v in cx.vertices}
    ends = {}
    for eid in edges:
        e = cx.edge_by_id[eid]
        degree[e.tail] += 1
        degree[e.head] += 1
        incident[e.tail].append(eid)
        incident[e.head].append(eid)
        ends[eid] = (e.tail, e.head)
    steps: list[CollapseStep] = []
    removed_e: set[str] = set()
    leaves = sorted(v for v, d in degree.items() if d == 1)
    while leaves:
        v = leaves.pop(0)
        if degree[v] != 1:
            continue
        (eid,) = [x for x in incident[v] if x not in removed_e]
        removed_e.add(eid)
        steps.append(("vertex-edge", v, eid))
        t, h = ends[eid]
        other = h if t == v else t
        degree[v] -= 1
        degree[other] -= 1
        if degree[other] == 1:
            leaves.append(other)
            leaves.sort()
    if len(removed_e) != len(edges):
        return None  # a cycle survived
    return steps


def collapsibility_search(
    cx: TwoComplex, budget: int = 20_000, cancel=None
) -> list[CollapseStep] | None:
    """A full collapse sequence to a single vertex, or None within budget.

    Backtracks over the order of free-face collapses; after the 2-cells
    are exhausted, degree-1 vertices are collapsed with their edges.
    `cancel`, when given, is polled between search nodes so callers may
    race strategies and abandon this one.
    """
    if not cx.vertices:
        raise ComplexError("collapsibility_search of the empty complex")
    face_edges = {f.id: [eid for eid, _ in f.boundary] for f in cx.faces}
    nodes = 0
    seen: set[frozenset] = set()

    def counts(edges: set[str], faces: set[str]) -> dict[str, int]:
        out = {e: 0 for e in edges}
        for fid in faces:
            for eid in face_edges[fid]:
                out[eid] += 1
        return out

    def dfs(edges: set[str], faces: set[str], steps: list) -> list | None:
        nonlocal nodes
        nodes += 1
        if nodes > budget or (cancel is not None and cancel()):
            return None
        if not faces:
            tail = _tree_collapse(cx, edges)
            if tail is None:
                return None
            return steps + tail
        occurrence = counts(edges, faces)
        moves = []
        for eid, n in occurrence.items():
            if n == 1:
                (fid,) = [f for f in faces if eid in face_edges[f]]
                moves.append((eid, fid))
        for eid, fid in sorted(moves):
            next_edges = edges - {eid}
            next_faces = faces - {fid}
            key = frozenset(next_edges) | frozenset("F" + f for f in next_faces)
            if key in seen:
                continue
            seen.add(key)
            found = dfs(next_edges, next_faces, steps + [("edge-face", eid, fid)])
            if found is not None:
                return found
        return None

    return dfs({e.id for e in cx.edges}, {f.id for f in cx.faces}, [])


def replay_collapse(cx: TwoComplex, steps: list[CollapseStep]) -> TwoComplex:
    """Apply a collapse sequence, checking each step is legal; the result
    of a full sequence is a single-vertex complex."""
    current = cx
    for kind, cell, other in steps:
        if kind == "edge-face":
            if cell not in free_faces(current):
                raise ComplexError(f"replay: edge {cell} is not free")
            if other not in current.face_by_id:
                raise ComplexError(f"replay: unknown face {other}")
            face = current.face_by_id[other]
            if all(eid != cell for eid, _ in face.boundary):
                raise ComplexError(f"replay: face {other} does not use edge {cell}")
            current = TwoComplex.make(
                current.vertices,
                [e for e in current.edges if e.id != cell],
                [f for f in current.faces if f.id != other],
            )
        elif kind == "vertex-edge":
            if current.faces and any(
                eid == other for f in current.faces for eid, _ in f.boundary
            ):
                raise ComplexError(f"replay: edge {other} still bounds a face")
            degree = sum(
                (e.tail == cell) + (e.head == cell) for e in current.edges
            )
            if degree != 1:
                raise ComplexError(f"replay: vertex {cell} has degree {degree}")
            current = TwoComplex.make(
                [v for v in current.vertices if v != cell],
                [e for e in current.edges if e.id != other],
                current.faces,
            )
        else:
            raise ComplexError(f"replay: unknown step kind {kind!r}")
    return current


@dataclass(frozen=True)
class Certificate:
    kind: str  # "collapsible" | "simply-connected-acyclic" | "not-contractible" | "unknown"
    homology: HomologyProfile | None
    collapse_sequence: tuple[CollapseStep, ...] | None = None
    coset_table_size: int | None = None
    reason: str | None = None

    @property
    def contractible(self) -> bool:
        return self.kind in ("collapsible", "simply-connected-acyclic")

    def as_dict(self) -> dict:
        doc: dict = {"kind": self.kind}
        if self.homology is not None:
            doc["homology"] = self.homology.as_dict()
        if self.collapse_sequence is not None:
            doc["collapse_sequence"] = [list(s) for s in self.collapse_sequence]
        if self.coset_table_size is not None:
            doc["coset_table_size"] = self.coset_table_size
            doc["justification"] = PI1_JUSTIFICATION
        if self.reason is not None:
            doc["reason"] = self.reason
        return doc

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2, sort_keys=True) + "\n"


def certify_contractible(cx: TwoComplex, budgets: Budgets = Budgets()) -> Certificate:
    if not cx.connected:
        raise ComplexError("certify_contractible needs a connected complex")
    profile = homology(cx)
    chi = euler_characteristic(cx)
    if not profile.is_point_like() or chi != 1:
        return Certificate(
            "not-contractible",
            profile,
            reason=f"homology {profile.as_dict()} with chi {chi}",
        )
    steps = collapsibility_search(cx, budgets.collapse_nodes)
    if steps is not None:
        final = replay_collapse(cx, steps)
        assert len(final.vertices) == 1 and not final.edges and not final.faces
        return Certificate("collapsible", profile, collapse_sequence=tuple(steps))
    order = coset_enumeration(pi1_presentation(cx), budgets.max_cosets)
    if order == 1:
        return Certificate(
            "simply-connected-acyclic", profile, coset_table_size=order
        )
    return Certificate(
        "unknown",
        profile,
        reason=f"collapse budget {budgets.collapse_nodes} and coset budget "
        f"{budgets.max_cosets} exhausted"
        if order is None
        else f"fundamental group order {order} not shown trivial",
    )
