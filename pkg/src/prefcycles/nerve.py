"""Covers of the three-alternative preference sets and their nerve complexes.

Cover sets are indexed by ordered pairs ``(i, j)``; the member set of ``(i, j)``
holds the ground elements in which ``i`` is strictly preferred to ``j`` (and,
for the cover with cycles, ``j`` is not also preferred to ``i``). Nerve
vertices are labelled ``"ij"``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Mapping

from . import complex as cx
from .errors import ConstructionError, DomainError, UnsupportedSizeError
from .preferences import PreferenceCycle, WeakOrder, encode, enumerate_strict_orders, valid_cycles

Element = WeakOrder | PreferenceCycle

# Planar drawing of the annulus nerve, keyed by alternative ranks (0-based).
PLANAR_LAYOUT: dict[tuple[int, int], tuple[float, float]] = {
    (0, 1): (6.0, 12.25),
    (1, 2): (3.0, 8.0),
    (2, 0): (9.0, 8.0),
    (0, 2): (5.25, 10.0),
    (2, 1): (6.75, 10.0),
    (1, 0): (6.0, 9.0),
}


def pair_label(i, j) -> str:
    return f"{i}{j}" if len(str(i)) == len(str(j)) == 1 else f"{i},{j}"


@dataclass(frozen=True)
class Cover:
    """Indexed family of subsets of a finite ground set."""

    ground: tuple
    members: Mapping[object, frozenset]
    tag: str = "custom"
    labels: Mapping[object, str] = field(default_factory=dict)

    def __post_init__(self):
        union = frozenset().union(*self.members.values()) if self.members else frozenset()
        if union != frozenset(self.ground):
            raise ConstructionError("cover members must union to the ground set",
                                    {"missing": sorted(map(str, frozenset(self.ground) - union)),
                                     "extra": sorted(map(str, union - frozenset(self.ground)))})

    @property
    def index(self) -> tuple:
        return tuple(self.members)

    def label(self, key) -> str:
        return self.labels.get(key, str(key))

    def intersection(self, keys: Iterable) -> frozenset:
        keys = list(keys)
        out = self.members[keys[0]]
        for k in keys[1:]:
            out = out & self.members[k]
        return out


def _triple(alternatives) -> tuple:
    alts = tuple(range(1, alternatives + 1)) if isinstance(alternatives, int) else tuple(alternatives)
    if len(alts) != 3 or len(set(alts)) != 3:
        raise UnsupportedSizeError(f"covers are defined over exactly 3 alternatives, got {len(alts)}")
    return tuple(sorted(alts))


def _pair_cover(ground: list, alts: tuple, tag: str, exclusive: bool) -> Cover:
    codes = {x: encode(x, alts) for x in ground}
    members, labels = {}, {}
    for i in alts:
        for j in alts:
            if i == j:
                continue
            members[(i, j)] = frozenset(
                x for x in ground
                if codes[x].prefers(i, j) and not (exclusive and codes[x].prefers(j, i)))
            labels[(i, j)] = pair_label(i, j)
    return Cover(tuple(ground), members, tag, labels)


def cover_U(alternatives=(1, 2, 3)) -> Cover:
    """Cover of the six strict orders: ``(i, j)`` holds the orders with ``i`` before ``j``."""
    alts = _triple(alternatives)
    return _pair_cover(enumerate_strict_orders(alts), alts, "strict", exclusive=False)


def cover_V(alternatives=(1, 2, 3)) -> Cover:
    """Cover of the strict orders and both cycles, with cycles read step by step."""
    alts = _triple(alternatives)
    ground = enumerate_strict_orders(alts) + list(valid_cycles(alts))
    return _pair_cover(ground, alts, "valid", exclusive=True)


@dataclass
class OrientedNerve:
    cover: Cover
    complex: cx.DeltaComplex
    provenance: dict[str, object]
    face_orientation: dict[str, tuple[str, str, str]]
    boundary_orientation: dict[str, tuple[str, str, str]]

    def face_of(self, element) -> str:
        for lab, x in self.provenance.items():
            if x == element:
                return lab
        raise DomainError(f"{element} is not a face of this nerve")

    def to_json(self) -> dict:
        return cx.to_json(
            self.complex,
            provenance={k: str(v) for k, v in self.provenance.items()},
            reference_orientation={
                "faces": {k: list(v) for k, v in self.face_orientation.items()},
                "boundaries": {k: list(v) for k, v in self.boundary_orientation.items()},
            },
        )


def _reference_order(element, labels: Mapping) -> tuple[str, str, str] | None:
    """``[ab, bc, ac]`` for the order a<b<c, ``[ab, bc, ca]`` for the cycle a<b<c<a."""
    if isinstance(element, WeakOrder) and element.is_strict and len(element.ranking) == 3:
        a, b, c = element.ranking
        return labels[(a, b)], labels[(b, c)], labels[(a, c)]
    if isinstance(element, PreferenceCycle) and len(element.elements) == 3:
        a, b, c = element.elements
        return labels[(a, b)], labels[(b, c)], labels[(c, a)]
    return None


def nerve(cover: Cover) -> OrientedNerve:
    """Nerve of ``cover`` up to dimension 2; higher intersections must be empty."""
    keys = [k for k in cover.index if cover.members[k]]
    lab = {k: cover.label(k) for k in keys}
    for quad in combinations(keys, 4):
        if cover.intersection(quad):
            raise ConstructionError("cover has a nonempty 4-fold intersection; nerve would exceed dimension 2",
                                    {"indices": [lab[k] for k in quad]})
    edges = [(lab[a], lab[b]) for a, b in combinations(keys, 2) if cover.intersection((a, b))]
    triangles, face_labels, provenance, orientation = [], [], {}, {}
    found = [(tri, cover.intersection(tri)) for tri in combinations(keys, 3)]
    position = {x: n for n, x in enumerate(cover.ground)}
    found = sorted(((t, c) for t, c in found if c), key=lambda tc: min(position[x] for x in tc[1]))
    for tri, common in found:
        if len(common) != 1:
            raise ConstructionError("triple intersection is not a single element",
                                    {"indices": [lab[k] for k in tri], "elements": sorted(map(str, common))})
        (element,) = common
        order = _reference_order(element, cover.labels)
        if order is None or set(order) != {lab[k] for k in tri}:
            order = tuple(sorted(lab[k] for k in tri))
        name = str(element)
        triangles.append(order)
        face_labels.append(name)
        provenance[name] = element
        orientation[name] = order
    comp = cx.from_simplices([lab[k] for k in keys], edges, triangles, face_labels)

    boundary = {}
    if len(cover.ground) and all(isinstance(k, tuple) and len(k) == 2 for k in keys):
        by_label = {v: k for k, v in lab.items()}
        for circuit in cx.boundary_components(comp):
            if not circuit.closed or len(circuit.vertices) != 3:
                continue
            idx = [by_label[v] for v in circuit.vertices]
            step = dict(idx)
            if len(step) != 3 or set(step.values()) != set(step):
                continue
            a = min(step)
            cyc = PreferenceCycle.strict(a, step[a], step[step[a]])
            boundary[str(cyc)] = _reference_order(cyc, cover.labels)
    return OrientedNerve(cover, comp, provenance, orientation, boundary)


def _signed_area(points) -> float:
    (x1, y1), (x2, y2), (x3, y3) = points
    return (x2 - x1) * (y3 - y1) - (x3 - x1) * (y2 - y1)


def reference_orientation_signature(n: OrientedNerve) -> dict[str, str]:
    """Counterclockwise/clockwise for each reference-oriented triangle in the planar drawing."""
    alts = sorted({a for k in n.cover.index if isinstance(k, tuple) for a in k})
    if len(alts) != 3 or set(n.cover.index) != {(a, b) for a in alts for b in alts if a != b}:
        raise DomainError("signature is only defined for pair-indexed covers over 3 alternatives")
    rank = {a: r for r, a in enumerate(alts)}
    point = {n.cover.label(k): PLANAR_LAYOUT[(rank[k[0]], rank[k[1]])] for k in n.cover.index}
    out = {}
    for name, order in list(n.face_orientation.items()) + list(n.boundary_orientation.items()):
        area = _signed_area([point[v] for v in order])
        out[name] = "counterclockwise" if area > 0 else "clockwise"
    return out
