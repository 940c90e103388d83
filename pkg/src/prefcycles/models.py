"""The four surface models of strict orders and cycles, punctures, and the Arrow check.

Models are indexed by whether cycles are valid (distinct objects) or
contradictory (one object), and whether they appear as faces (realised) or
only as holes (unrealised):

=============  ===================  =================
               unrealised           realised
=============  ===================  =================
valid          annulus nerve        sphere nerve
contradictory  boundaries glued     antipodal quotient
=============  ===================  =================
"""

from __future__ import annotations

import enum
import warnings
from dataclasses import dataclass, field

from . import complex as cx
from .errors import DomainError, LemmaViolation, PreconditionError, SemanticError
from .nerve import OrientedNerve, cover_U, cover_V, nerve
from .preferences import (
    PreferenceCycle,
    WeakOrder,
    decode,
    enumerate_strict_orders,
    parse_element,
)
from .social_choice import (
    DEFAULT_CAP,
    SocialWelfareFunction,
    _triple,
    check_iia,
    check_unanimity,
    find_dictator,
    image_elements,
    image_of_psi,
)


class Regime(enum.Enum):
    VALID = "valid"
    CONTRADICTORY = "contradictory"


class Realisation(enum.Enum):
    UNREALISED = "unrealised"
    REALISED = "realised"


@dataclass(frozen=True)
class ModelKind:
    regime: Regime
    realisation: Realisation

    @property
    def name(self) -> str:
        return f"{self.regime.value}-{self.realisation.value}"

    def __str__(self) -> str:
        return self.name

    @classmethod
    def parse(cls, text: str) -> ModelKind:
        for kind in ALL_KINDS:
            if kind.name == text:
                return kind
        raise DomainError(f"unknown model kind {text!r}; expected one of {[k.name for k in ALL_KINDS]}")


VALID_UNREALISED = ModelKind(Regime.VALID, Realisation.UNREALISED)
VALID_REALISED = ModelKind(Regime.VALID, Realisation.REALISED)
CONTRADICTORY_UNREALISED = ModelKind(Regime.CONTRADICTORY, Realisation.UNREALISED)
CONTRADICTORY_REALISED = ModelKind(Regime.CONTRADICTORY, Realisation.REALISED)
ALL_KINDS = (VALID_UNREALISED, VALID_REALISED, CONTRADICTORY_UNREALISED, CONTRADICTORY_REALISED)

EXPECTED = {
    VALID_UNREALISED: cx.SurfaceTag.ANNULUS,
    VALID_REALISED: cx.SurfaceTag.SPHERE,
    CONTRADICTORY_UNREALISED: cx.SurfaceTag.KLEIN_BOTTLE,
    CONTRADICTORY_REALISED: cx.SurfaceTag.PROJECTIVE_PLANE,
}


@dataclass
class Model:
    """A model complex plus, for every face, the ground elements it stands for."""

    kind: ModelKind
    complex: cx.DeltaComplex
    provenance: dict[str, tuple]
    alternatives: tuple[int, int, int]
    removed: tuple = ()

    def classify(self) -> cx.SurfaceType:
        return cx.classify(self.complex)

    def elements(self) -> list:
        return [x for xs in self.provenance.values() for x in xs]

    def to_json(self) -> dict:
        return cx.to_json(self.complex, kind=self.kind.name,
                          provenance={k: [str(x) for x in v] for k, v in self.provenance.items()},
                          removed=[str(x) for x in self.removed])


def _edge_between(c: cx.DeltaComplex, u: str, v: str) -> cx.Edge:
    for e in c.edges:
        if {e.tail, e.head} == {u, v}:
            return e
    raise DomainError(f"no edge between {u} and {v}")


def _swap(label_of: dict, label: str) -> str:
    i, j = label_of[label]
    return next(l for l, k in label_of.items() if k == (j, i))


def _contradictory_cycle(alts) -> PreferenceCycle:
    a, b, c = alts
    return PreferenceCycle.strict(a, b, c, contradictory=True)


def build_model(kind: ModelKind | str, alternatives=(1, 2, 3)) -> Model:
    if isinstance(kind, str):
        kind = ModelKind.parse(kind)
    realised = kind.realisation is Realisation.REALISED
    n: OrientedNerve = nerve(cover_V(alternatives) if realised else cover_U(alternatives))
    alts = tuple(sorted({a for k in n.cover.index for a in k}))
    base = n.complex
    provenance = {lab: (x,) for lab, x in n.provenance.items()}
    if kind.regime is Regime.VALID:
        return Model(kind, base, provenance, alts)

    if not realised:
        # glue the two boundary circuits so their reference orientations line up
        first, second = (n.boundary_orientation[str(c)] for c in sorted(
            (PreferenceCycle.strict(*alts), PreferenceCycle.strict(alts[0], alts[2], alts[1])), key=str))
        gluing = []
        for k in range(3):
            a0, a1 = first[k], first[(k + 1) % 3]
            b0, b1 = second[k], second[(k + 1) % 3]
            gluing.append(cx.Identification(1, _edge_between(base, a0, a1).label,
                                            _edge_between(base, b0, b1).label, (a0, a1), (b0, b1)))
        return Model(kind, cx.quotient(base, gluing), provenance, alts)

    # realised: identify every face with its reverse, vertex ij with vertex ji
    label_of = {n.cover.label(k): k for k in n.cover.index}
    gluing, paired = [], set()
    for lab, x in n.provenance.items():
        if lab in paired:
            continue
        partner = n.face_of(x.reversed())
        paired |= {lab, partner}
        corners = base.corners(lab)
        gluing.append(cx.Identification(2, lab, partner, corners,
                                        tuple(_swap(label_of, v) for v in corners)))
    quotient = cx.quotient(base, gluing)
    cycle = _contradictory_cycle(alts)
    merged = {}
    for f in quotient.faces:
        members = tuple(n.provenance[m] for m in f.label.split("|"))
        merged[f.label] = (cycle,) if isinstance(members[0], PreferenceCycle) else members
    return Model(kind, quotient, merged, alts)


def _as_element(x):
    return parse_element(x) if isinstance(x, str) else x


PUNCTURE_MODES = ("faces", "disc")


def punctured_variant(kind: ModelKind | str, removals, alternatives=(1, 2, 3),
                      mode: str = "faces") -> Model:
    """The model with the faces standing for ``removals`` punctured.

    ``mode="faces"`` deletes the open faces outright; ``mode="disc"`` cuts a small
    disc out of each face instead, which always leaves a surface. The two agree
    up to homeomorphism whenever face deletion itself leaves a surface.
    """
    if mode not in PUNCTURE_MODES:
        raise DomainError(f"unknown puncture mode {mode!r}; expected one of {PUNCTURE_MODES}")
    model = build_model(kind, alternatives)
    removals = [_as_element(r) for r in removals]
    contradictory = model.kind.regime is Regime.CONTRADICTORY
    drop = []
    for r in removals:
        if isinstance(r, PreferenceCycle) and contradictory:
            raise SemanticError(
                f"removing the cycle {r} from a contradictory model is not a puncture: it leaves "
                f"the strict orders alone, whose model is {VALID_UNREALISED.name}; build that instead",
                {"removal": str(r), "suggested_kind": VALID_UNREALISED.name})
        hits = [lab for lab, xs in model.provenance.items() if r in xs]
        if not hits:
            raise DomainError(f"{r} is not a face of the {model.kind.name} model",
                              {"removal": str(r), "faces": sorted(model.provenance)})
        drop.extend(h for h in hits if h not in drop)
    comp = (cx.puncture if mode == "faces" else cx.puncture_disc)(model.complex, *drop)
    provenance = {k: v for k, v in model.provenance.items() if k not in drop}
    return Model(model.kind, comp, provenance, model.alternatives, tuple(removals))


# -- Arrovian model ------------------------------------------------------------


def arrovian_model(image, alternatives=None) -> Model:
    """Model of an image of the restricted welfare function.

    All six strict orders are required. Without cycles the strict-order model
    (annulus) is returned; with one or both cycles, collapsed to the single
    contradictory cycle, the realised contradictory model.
    """
    elements = [decode(x) if not isinstance(x, (WeakOrder, PreferenceCycle)) else x for x in image]
    alts = alternatives or tuple(sorted({a for x in elements for a in x.alternatives}))
    if len(alts) != 3:
        raise LemmaViolation("image does not live on three alternatives",
                             {"image": [str(x) for x in elements]})
    alts = tuple(sorted(alts))
    orders = {x for x in elements if isinstance(x, WeakOrder) and x.is_strict}
    cycles = {x for x in elements if isinstance(x, PreferenceCycle)}
    other = [x for x in elements if x not in orders and x not in cycles]
    missing = set(enumerate_strict_orders(alts)) - orders
    if missing or other:
        raise LemmaViolation("image must contain every strict order and nothing but strict orders and cycles", {
            "image": [str(x) for x in elements],
            "missing": sorted(map(str, missing)),
            "unexpected": sorted(map(str, other)),
        })
    if not cycles:
        return build_model(VALID_UNREALISED, alts)
    if len(cycles) == 1:
        warnings.warn(f"image holds a single cycle {next(iter(cycles))}; treating it as cycle-bearing",
                      stacklevel=2)
    return build_model(CONTRADICTORY_REALISED, alts)


@dataclass
class ArrovianVerdict:
    image: list
    model: Model
    surface: cx.SurfaceType
    orientable: bool
    non_dictatorship: bool
    dictator: int | None
    swf: str = ""
    triple: tuple = ()
    cycles: str = "contradictory"

    @property
    def theorem_holds(self) -> bool:
        return self.non_dictatorship == (not self.orientable)

    def to_json(self) -> dict:
        return {
            "swf": self.swf,
            "triple": list(self.triple),
            "cycles": self.cycles,
            "image": [str(x) for x in self.image],
            "surface": self.surface.to_json(),
            "orientable": self.orientable,
            "non_dictatorship": self.non_dictatorship,
            "dictator": self.dictator,
            "theorem_holds": self.theorem_holds,
        }


def arrow_check(swf: SocialWelfareFunction, triple=None, domain: str = "weak",
                cap: int = DEFAULT_CAP, cycles: str = "contradictory") -> ArrovianVerdict:
    """Audit ``swf``, build the model of its restricted image and compare the
    orientability verdict with the presence of a dictator.

    ``cycles`` picks which aggregates count as strict on the triple; see
    :func:`~prefcycles.social_choice.psi_restriction`.
    """
    for name, check in (("Unanimity", check_unanimity), ("IIA", check_iia)):
        result = check(swf, cap)
        if not result.passed:
            raise PreconditionError(f"{name} audit failed for {swf}", result.certificate)
    b = _triple(swf, triple)
    image = image_elements(image_of_psi(swf, b, domain, cap, cycles=cycles))
    model = arrovian_model(image, b)
    surface = model.classify()
    dictator = find_dictator(swf, cap)
    return ArrovianVerdict(image, model, surface, surface.orientable, dictator is None, dictator,
                           str(swf), b, cycles)


# -- table report -------------------------------------------------------------


@dataclass
class Table1Report:
    cells: dict[ModelKind, cx.SurfaceType] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(self.cells.get(k) is not None and self.cells[k].tag is EXPECTED[k] for k in ALL_KINDS)

    def to_json(self) -> dict:
        return {
            "cells": [{"kind": k.name, "expected": str(EXPECTED[k]), **self.cells[k].to_json(),
                       "match": self.cells[k].tag is EXPECTED[k]} for k in ALL_KINDS],
            "result": "PASS" if self.passed else "FAIL",
        }

    def text(self) -> str:
        def cell(kind):
            got = self.cells[kind]
            mark = "" if got.tag is EXPECTED[kind] else f" (expected {EXPECTED[kind]})"
            return f"{got} chi={got.euler}{mark}"

        rows = [("", "unrealised", "realised")]
        for regime in Regime:
            rows.append((regime.value, cell(ModelKind(regime, Realisation.UNREALISED)),
                         cell(ModelKind(regime, Realisation.REALISED))))
        widths = [max(len(r[i]) for r in rows) for i in range(3)]
        lines = ["  ".join(r[i].ljust(widths[i]) for i in range(3)).rstrip() for r in rows]
        lines.append("PASS" if self.passed else "FAIL")
        return "\n".join(lines) + "\n"


def table1_report(alternatives=(1, 2, 3)) -> Table1Report:
    return Table1Report({k: build_model(k, alternatives).classify() for k in ALL_KINDS})
