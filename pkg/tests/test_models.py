from __future__ import annotations

import warnings
from itertools import combinations

import pytest

from prefcycles import complex as cx
from prefcycles.complex import Identification, SurfaceTag
from prefcycles.errors import DomainError, LemmaViolation, PreconditionError, SemanticError
from prefcycles.models import (
    ALL_KINDS,
    CONTRADICTORY_REALISED,
    CONTRADICTORY_UNREALISED,
    EXPECTED,
    VALID_REALISED,
    VALID_UNREALISED,
    ModelKind,
    Regime,
    arrovian_model,
    arrow_check,
    build_model,
    punctured_variant,
    table1_report,
)
from prefcycles.nerve import cover_V, nerve
from prefcycles.preferences import enumerate_strict_orders, parse_element, valid_cycles
from prefcycles.social_choice import Dictator, PairwiseMajority, borda_table, random_iia_table

ORDERS = enumerate_strict_orders(3)
SUBSETS = [s for k in range(7) for s in combinations(ORDERS, k)]


@pytest.mark.parametrize("kind", ALL_KINDS)
def test_each_model_classifies_as_expected(kind):
    assert build_model(kind).classify().tag is EXPECTED[kind]


def test_model_cell_counts():
    assert build_model(CONTRADICTORY_UNREALISED).complex.counts == (3, 9, 6)
    assert build_model(CONTRADICTORY_REALISED).complex.counts == (3, 6, 4)


def test_kind_names_round_trip():
    for kind in ALL_KINDS:
        assert ModelKind.parse(kind.name) == kind
    with pytest.raises(DomainError):
        ModelKind.parse("bogus")


@pytest.mark.parametrize("kind", ALL_KINDS)
def test_non_orientable_exactly_when_contradictory(kind):
    assert cx.is_orientable(build_model(kind).complex) == (kind.regime is Regime.VALID)


def test_double_covers_of_contradictory_models():
    rp2 = cx.orientation_double_cover(build_model(CONTRADICTORY_REALISED).complex).cover
    s = cx.classify(rp2)
    assert s.tag is SurfaceTag.SPHERE and s.euler == 2
    klein = cx.orientation_double_cover(build_model(CONTRADICTORY_UNREALISED).complex).cover
    assert cx.classify(klein).tag is SurfaceTag.TORUS


def test_projective_plane_provenance_pairs_reversed_orders():
    model = build_model(CONTRADICTORY_REALISED)
    for lab, xs in model.provenance.items():
        if len(xs) == 2:
            assert xs[1] == xs[0].reversed()
        else:
            assert xs[0].contradictory


def test_gluing_only_the_cycle_faces_is_not_a_surface():
    # identifying just the two cycle faces of the sphere nerve pinches three edges
    n = nerve(cover_V())
    up, down = (str(c) for c in valid_cycles(3))
    g = Identification(2, up, down, n.face_orientation[up], n.face_orientation[down])
    q = cx.quotient(n.complex, [g])
    assert cx.euler_characteristic(q) == 1
    assert sum(len(s) == 3 for s in q.incidences().values()) == 3
    assert not cx.is_surface(q)


@pytest.mark.parametrize("mode", ["faces", "disc"])
@pytest.mark.parametrize("order", ORDERS)
def test_punctured_projective_plane_is_a_mobius_strip(order, mode):
    assert punctured_variant(CONTRADICTORY_REALISED, [order], mode=mode).classify().tag is SurfaceTag.MOBIUS_STRIP


def test_removing_cycles_from_the_sphere():
    up, down = (str(c) for c in valid_cycles(3))
    assert punctured_variant(VALID_REALISED, [up, down]).classify().tag is SurfaceTag.ANNULUS
    assert punctured_variant(VALID_REALISED, [up]).classify().tag is SurfaceTag.DISK
    assert punctured_variant(VALID_REALISED, [down], mode="disc").classify().tag is SurfaceTag.DISK


@pytest.mark.parametrize("kind", [CONTRADICTORY_REALISED, CONTRADICTORY_UNREALISED])
def test_removing_the_contradictory_cycle_is_rejected(kind):
    with pytest.raises(SemanticError) as info:
        punctured_variant(kind, ["1<3<2<1"])
    assert info.value.certificate["suggested_kind"] == VALID_UNREALISED.name


def test_unknown_removals():
    with pytest.raises(DomainError):
        punctured_variant(VALID_UNREALISED, ["1<2<3<1"])
    with pytest.raises(DomainError):
        punctured_variant(VALID_UNREALISED, ["1~2<3"])
    with pytest.raises(DomainError):
        punctured_variant(VALID_UNREALISED, ["1<2<3"], mode="shrink")


@pytest.mark.parametrize("kind", ALL_KINDS)
def test_disc_punctures_preserve_orientability(kind):
    base = cx.is_orientable(build_model(kind).complex)
    for subset in SUBSETS:
        c = punctured_variant(kind, subset, mode="disc").complex
        assert cx.is_surface(c)
        assert cx.is_orientable(c) == base
        assert len(cx.boundary_components(c)) == len(cx.boundary_components(build_model(kind).complex)) + len(
            {f for f in build_model(kind).provenance if set(build_model(kind).provenance[f]) & set(subset)})


@pytest.mark.parametrize("kind", ALL_KINDS)
def test_face_punctures_that_stay_surfaces_match_disc_punctures(kind):
    seen = 0
    for subset in SUBSETS:
        faces = punctured_variant(kind, subset).complex
        if not (faces.faces and cx.is_surface(faces) and cx.is_connected(faces)):
            continue
        seen += 1
        disc = punctured_variant(kind, subset, mode="disc").complex
        assert cx.classify(faces) == cx.classify(disc)
    assert seen >= 1


def test_arrovian_model_shapes():
    strict = [str(o) for o in ORDERS]
    assert arrovian_model([parse_element(x) for x in strict]).classify().tag is SurfaceTag.ANNULUS
    both = [parse_element(x) for x in strict + ["1<2<3<1", "1<3<2<1"]]
    assert arrovian_model(both).classify().tag is SurfaceTag.PROJECTIVE_PLANE
    with pytest.warns(UserWarning):
        one = arrovian_model([parse_element(x) for x in strict + ["1<3<2<1"]])
    assert one.classify().tag is SurfaceTag.PROJECTIVE_PLANE
    with pytest.raises(LemmaViolation):
        arrovian_model([parse_element(x) for x in strict[1:]])
    with pytest.raises(LemmaViolation):
        arrovian_model([parse_element(x) for x in strict + ["1~2<3"]])


def test_arrow_check_majority():
    v = arrow_check(PairwiseMajority(3))
    assert v.non_dictatorship and not v.orientable and v.theorem_holds
    assert v.surface.tag is SurfaceTag.PROJECTIVE_PLANE


def test_arrow_check_dictator():
    v = arrow_check(Dictator(0, 2))
    assert not v.non_dictatorship and v.orientable and v.theorem_holds
    assert v.surface.tag is SurfaceTag.ANNULUS and v.dictator == 0


def test_arrow_check_two_voter_majority():
    # tied majorities give weak cycles, which read as the contradictory cycle
    v = arrow_check(PairwiseMajority(2))
    assert v.surface.tag is SurfaceTag.PROJECTIVE_PLANE and v.theorem_holds
    assert v.to_json()["cycles"] == "contradictory"


def test_arrow_check_two_voter_majority_strict_reading():
    # with only strict cycles counted, two voters never reach a cycle and the verdict fails
    v = arrow_check(PairwiseMajority(2), cycles="strict")
    assert v.surface.tag is SurfaceTag.ANNULUS
    assert v.non_dictatorship and v.orientable and not v.theorem_holds


def test_arrow_check_requires_iia():
    with pytest.raises(PreconditionError, match="IIA"):
        arrow_check(borda_table(2))


@pytest.mark.parametrize("seed", range(4))
def test_theorem_holds_for_random_iia_tables(seed):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        assert arrow_check(random_iia_table(2, 3, seed)).theorem_holds


def test_table1_report():
    report = table1_report()
    assert report.passed
    text = report.text()
    assert "KleinBottle" in text and text.rstrip().endswith("PASS")
    data = report.to_json()
    assert data["result"] == "PASS" and [c["tag"] for c in data["cells"]] == [str(EXPECTED[k]) for k in ALL_KINDS]


def test_model_json():
    data = build_model(CONTRADICTORY_REALISED).to_json()
    assert data["kind"] == "contradictory-realised"
    assert ["1<2<3", "3<2<1"] in data["provenance"].values()
