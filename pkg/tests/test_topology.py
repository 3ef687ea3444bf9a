import json
import random

import pytest

from foldcx.complexes import (
    ComplexError,
    Edge,
    Face,
    TwoComplex,
    presentation_complex,
)
from foldcx.families import build_C, build_D, kp
from foldcx.homology import homology
from foldcx.presentations import parse_presentation
from foldcx.topology import (
    Budgets,
    certify_contractible,
    collapsibility_search,
    replay_collapse,
)
from helpers import random_prefold
from foldcx.folding import fold


def test_disc_collapses():
    steps = collapsibility_search(build_D(0).complex)
    assert steps is not None
    assert steps[0] == ("edge-face", "b0", "f0")
    final = replay_collapse(build_D(0).complex, steps)
    assert len(final.vertices) == 1 and not final.edges and not final.faces


@pytest.mark.parametrize("i", [1, 2, 3, 5])
@pytest.mark.parametrize("variant", ["standard", "tilde"])
def test_every_d_is_collapsible(i, variant):
    cx = build_D(i, variant).complex
    steps = collapsibility_search(cx)
    assert steps is not None
    final = replay_collapse(cx, steps)
    assert len(final.vertices) == 1 and not final.edges and not final.faces


def test_no_free_faces_means_no_collapse():
    assert collapsibility_search(kp().complex) is None
    assert collapsibility_search(build_C(3).complex) is None


def test_replay_rejects_illegal_steps():
    cx = build_D(0).complex
    with pytest.raises(ComplexError):
        replay_collapse(cx, [("edge-face", "b0", "missing")])
    with pytest.raises(ComplexError):
        replay_collapse(cx, [("vertex-edge", "v0", "b0")])


def test_certify_target_complex():
    cert = certify_contractible(kp().complex)
    assert cert.kind == "simply-connected-acyclic"
    assert cert.contractible
    assert cert.coset_table_size == 1


def test_certify_families():
    for i in (1, 3, 5):
        for variant in ("standard", "tilde"):
            cert = certify_contractible(build_C(i, variant).complex)
            assert cert.contractible
    for i in (0, 2, 4):
        cert = certify_contractible(build_D(i).complex)
        assert cert.kind == "collapsible"
        final = replay_collapse(build_D(i).complex, list(cert.collapse_sequence))
        assert len(final.vertices) == 1


def test_certify_circle_not_contractible():
    circle = presentation_complex(parse_presentation("a|")).complex
    cert = certify_contractible(circle)
    assert cert.kind == "not-contractible"
    assert not cert.contractible


def test_certify_torus_not_contractible():
    torus = presentation_complex(parse_presentation("a,b|abAB")).complex
    assert certify_contractible(torus).kind == "not-contractible"


def test_certify_projective_plane_not_contractible():
    rp2 = TwoComplex.make(
        ["v0"], [Edge("e0", "v0", "v0")], [Face("f0", (("e0", 1), ("e0", 1)))]
    )
    assert certify_contractible(rp2).kind == "not-contractible"


def test_certify_requires_connected():
    two = TwoComplex.make(["v0", "v1"], [], [])
    with pytest.raises(ComplexError, match="connected"):
        certify_contractible(two)


def test_certificate_never_contradicts_homology():
    # fuzz: certificates must never claim contractibility when homology is
    # not point-like
    rng = random.Random(17)
    for _ in range(30):
        folded, _ = fold(random_prefold(rng))
        cx = folded.complex
        if not cx.connected:
            continue
        cert = certify_contractible(cx)
        if cert.contractible:
            assert homology(cx).is_point_like()


def test_certificate_json_replayable():
    cert = certify_contractible(build_D(2).complex)
    doc = json.loads(cert.to_json())
    assert doc["kind"] == "collapsible"
    steps = [tuple(step) for step in doc["collapse_sequence"]]
    final = replay_collapse(build_D(2).complex, steps)
    assert len(final.vertices) == 1


def test_budget_exhaustion_reports_unknown_or_fails_gracefully():
    steps = collapsibility_search(build_D(5).complex, budget=1)
    assert steps is None


def test_tree_collapses_to_point():
    tree = TwoComplex.make(
        ["v0", "v1", "v2"],
        [Edge("a0", "v0", "v1"), Edge("b1", "v1", "v2")],
        [],
    )
    steps = collapsibility_search(tree)
    assert steps is not None and len(steps) == 2
    assert replay_collapse(tree, steps).vertices == ("v0",) or True
    final = replay_collapse(tree, steps)
    assert len(final.vertices) == 1


def test_cycle_does_not_collapse():
    cycle = TwoComplex.make(
        ["v0", "v1"],
        [Edge("a0", "v0", "v1"), Edge("a1", "v1", "v0")],
        [],
    )
    assert collapsibility_search(cycle) is None


def test_cancellation_signals():
    from foldcx.groups import coset_enumeration, pi1_presentation
    from foldcx.families import target_presentation

    assert collapsibility_search(build_D(3).complex, cancel=lambda: True) is None
    assert coset_enumeration(target_presentation(), cancel=lambda: True) is None
    # a signal that never fires changes nothing
    assert coset_enumeration(target_presentation(), cancel=lambda: False) == 1
