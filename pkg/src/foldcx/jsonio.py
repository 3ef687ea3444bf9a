"""JSON serialization of labeled complexes and DOT export of 1-skeletons.

The JSON layout is fixed so that dump(load(text)) == text for any file
produced here: cells are listed in shortlex id order, keys in a fixed
order, indentation is two spaces.
"""

from __future__ import annotations

import json

from .complexes import Edge, Face, Morphism, TwoComplex
from .presentations import parse_presentation


def morphism_to_json(f: Morphism) -> str:
    cx = f.complex
    doc = {
        "presentation": str(f.presentation),
        "vertices": list(cx.vertices),
        "edges": [
            {"id": e.id, "tail": e.tail, "head": e.head, "label": f.edge_labels[e.id]}
            for e in cx.edges
        ],
        "faces": [
            {
                "id": face.id,
                "type": f.face_types[face.id],
                "boundary": [
                    ("+" if sign > 0 else "-") + eid for eid, sign in face.boundary
                ],
            }
            for face in cx.faces
        ],
    }
    return json.dumps(doc, indent=2) + "\n"


def _parse_side(text: str) -> tuple[str, int]:
    if len(text) < 2 or text[0] not in "+-":
        raise ValueError(f"boundary side {text!r} must look like '+edge' or '-edge'")
    return text[1:], 1 if text[0] == "+" else -1


def morphism_from_json(text: str) -> Morphism:
    doc = json.loads(text)
    pres = parse_presentation(doc["presentation"])
    edges = [Edge(e["id"], e["tail"], e["head"]) for e in doc["edges"]]
    faces = [
        Face(x["id"], tuple(_parse_side(s) for s in x["boundary"]))
        for x in doc["faces"]
    ]
    cx = TwoComplex.make(doc["vertices"], edges, faces)
    labels = {e["id"]: e["label"] for e in doc["edges"]}
    types = {x["id"]: int(x["type"]) for x in doc["faces"]}
    return Morphism(cx, pres, labels, types)


def export_dot(f: Morphism) -> str:
    """The 1-skeleton as a DOT digraph; arrows carry the edge orientation,
    attributes carry the generator label and edge id."""
    lines = ["digraph skeleton {"]
    for v in f.complex.vertices:
        lines.append(f'  "{v}";')
    for e in f.complex.edges:
        lines.append(
            f'  "{e.tail}" -> "{e.head}" [label="{f.edge_labels[e.id]}" id="{e.id}"];'
        )
    lines.append("}")
    return "\n".join(lines) + "\n"
