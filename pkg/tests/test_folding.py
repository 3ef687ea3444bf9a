import random

import pytest

from foldcx.canonical import canonical_form, isomorphic
from foldcx.complexes import (
    ComplexError,
    free_faces,
    is_immersion,
    validate,
)
from foldcx.families import build_C, build_D, classify, kp
from foldcx.folding import (
    FoldTrace,
    couple,
    fold,
    identify_edges,
    identify_vertices,
    replay_trace,
)
from helpers import disjoint_union, quotient_vertices, random_prefold


def cells(m):
    return (
        len(m.complex.vertices),
        len(m.complex.edges),
        len(m.complex.faces),
    )


def test_fold_fixpoint_on_immersion():
    folded, trace = fold(kp())
    assert len(trace) == 0
    assert folded == kp()


def test_fold_idempotent():
    rng = random.Random(3)
    for _ in range(10):
        noisy = random_prefold(rng)
        once, _ = fold(noisy)
        twice, trace = fold(once)
        assert len(trace) == 0
        assert canonical_form(twice) == canonical_form(once)


def test_fold_output_is_immersion_and_valid():
    rng = random.Random(4)
    for _ in range(25):
        folded, _ = fold(random_prefold(rng))
        assert validate(folded) == []
        assert is_immersion(folded)


def test_fold_never_increases_cells():
    rng = random.Random(5)
    for _ in range(25):
        noisy = random_prefold(rng)
        folded, _ = fold(noisy)
        assert all(a <= b for a, b in zip(cells(folded), cells(noisy)))


def test_two_short_faces_on_one_edge_merge():
    two = disjoint_union([build_D(0), build_D(0)])
    glued = quotient_vertices(two, [("v0.0", "v0.1")])
    # the two b-loops now share a vertex: folding merges the edges, which
    # forces the two short faces onto one slot and merges them
    folded, _ = fold(glued)
    assert cells(folded) == (1, 1, 1)
    assert str(classify(folded)) == "D:0"


def test_coupling_base_step_both_appearances():
    assert str(classify(couple(build_D(0), 1, 2, "b0"))) == "D:1"
    assert str(classify(couple(build_D(0), 1, 0, "b0"))) == "Dt:1"


def test_coupling_matches_construction():
    d1 = couple(build_D(0), 1, 2, "b0")
    assert isomorphic(d1, build_D(1)) is not None
    # iterate the construction: couple along the second appearance at the
    # free b-edge of the previous stage (ids in d1 are quotient names)
    free_b = next(
        e for e in sorted(free_faces(d1.complex)) if d1.edge_labels[e] == "b"
    )
    d2 = couple(d1, 1, 2, free_b)
    assert isomorphic(d2, build_D(2)) is not None


def test_couple_net_face_increase_at_most_one():
    for i in (0, 1, 2, 3):
        d = build_D(i)
        for t, p in ((0, 0), (1, 0), (1, 2)):
            result = couple(d, t, p, f"b{i}")
            assert len(result.complex.faces) <= len(d.complex.faces) + 1


def test_couple_label_mismatch_rejected():
    with pytest.raises(ComplexError, match="label mismatch"):
        couple(build_D(1), 1, 1, "b1")  # position 1 carries the letter a


def test_identify_edges_definition_of_c():
    for i in (1, 2, 3, 5):
        got = identify_edges(build_D(i), f"b{i}", "b0")
        assert isomorphic(got, build_C(i)) is not None


def test_identify_edges_intermediate_case():
    # gluing the last b to a middle one forces the shorter spacing cascade
    got = identify_edges(build_D(3), "b3", "b1")
    assert isomorphic(got, kp()) is not None


def test_identify_edges_rejects_mismatched_labels():
    with pytest.raises(ComplexError, match="labels differ"):
        identify_edges(build_D(1), "b1", "a1")


def test_identify_vertices_examples():
    assert str(classify(identify_vertices(build_C(3), "v0", "v1"))) == "C:1"
    with pytest.raises(ComplexError, match="distinct"):
        identify_vertices(build_C(3), "v0", "v0")


def test_moves_require_immersions():
    rng = random.Random(6)
    noisy = random_prefold(rng)
    while is_immersion(noisy):
        noisy = random_prefold(rng)
    with pytest.raises(ComplexError, match="expected an immersion"):
        identify_vertices(noisy, *noisy.complex.vertices[:2])


def test_trace_replay_reproduces_output():
    rng = random.Random(7)
    for _ in range(20):
        noisy = random_prefold(rng)
        folded, trace = fold(noisy)
        assert replay_trace(noisy, trace) == folded


def test_trace_json_lines_round_trip():
    rng = random.Random(8)
    noisy = random_prefold(rng)
    _, trace = fold(noisy)
    assert FoldTrace.from_json_lines(trace.to_json_lines()) == trace


def test_trace_covers_all_absorbed_cells():
    rng = random.Random(9)
    noisy = random_prefold(rng)
    folded, trace = fold(noisy)
    absorbed = {(e.kind, e.absorbed) for e in trace.events}
    lost_vertices = set(noisy.complex.vertices) - set(folded.complex.vertices)
    assert lost_vertices == {v for k, v in absorbed if k == "vertex-merge"}


def test_engines_agree():
    rng = random.Random(10)
    for _ in range(30):
        noisy = random_prefold(rng)
        worklist, _ = fold(noisy)
        rescan, _ = fold(noisy, rescan=True)
        assert canonical_form(worklist) == canonical_form(rescan)


def test_confluence_across_random_orders():
    rng = random.Random(11)
    for _ in range(15):
        noisy = random_prefold(rng)
        reference = canonical_form(fold(noisy)[0])
        for seed in range(8):
            shuffled, _ = fold(noisy, rng=random.Random(seed))
            assert canonical_form(shuffled) == reference


def test_deterministic_trace():
    rng = random.Random(12)
    noisy = random_prefold(rng)
    assert fold(noisy)[1] == fold(noisy)[1]
