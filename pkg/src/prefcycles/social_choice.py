"""Social welfare functions on small profile spaces and brute-force fairness audits.

Profiles are tuples of :class:`~prefcycles.preferences.WeakOrder`, one per
individual. Enumeration is lexicographic in (individual, weak-order index), so
the first individual varies slowest and certificates are reproducible.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from itertools import product
from pathlib import Path
from typing import Iterable, Iterator, Mapping

from .errors import ConstructionError, DomainError, PreconditionError, ResourceError
from .preferences import (
    TernaryCode,
    WeakOrder,
    decode,
    encode,
    enumerate_strict_orders,
    enumerate_weak_orders,
    pairs,
    parse_code,
    parse_element,
    restrict,
)

DEFAULT_CAP = 10**7


def _alts(alternatives) -> tuple[int, ...]:
    if isinstance(alternatives, int):
        return tuple(range(1, alternatives + 1))
    return tuple(sorted(alternatives))


def profile_text(profile) -> list[str]:
    return [str(o) for o in profile]


def enumerate_profiles(alternatives, n: int, domain: str = "weak",
                       cap: int = DEFAULT_CAP) -> Iterator[tuple[WeakOrder, ...]]:
    if domain == "weak":
        orders = enumerate_weak_orders(_alts(alternatives))
    elif domain == "strict":
        orders = enumerate_strict_orders(_alts(alternatives))
    else:
        raise DomainError(f"unknown profile domain {domain!r}")
    if len(orders) ** n > cap:
        raise ResourceError(
            f"{len(orders)}^{n} profiles exceed the enumeration cap {cap}",
            {"orders": len(orders), "individuals": n, "cap": cap},
        )
    return product(orders, repeat=n)


class SocialWelfareFunction:
    """Base class: maps an ``n``-individual profile over ``alternatives`` to a code."""

    n: int
    alternatives: tuple[int, ...]

    def _check(self, profile) -> None:
        if len(profile) != self.n:
            raise DomainError(f"profile has {len(profile)} orders, expected {self.n}")
        for o in profile:
            if not isinstance(o, WeakOrder) or o.alternatives != self.alternatives:
                raise DomainError(f"{o} is not a weak order over {self.alternatives}")

    def aggregate(self, profile) -> TernaryCode:
        self._check(profile)
        return self._aggregate(profile)

    def _aggregate(self, profile) -> TernaryCode:
        raise NotImplementedError

    def profiles(self, domain: str = "weak", cap: int = DEFAULT_CAP):
        return enumerate_profiles(self.alternatives, self.n, domain, cap)


@dataclass(frozen=True)
class PairwiseMajority(SocialWelfareFunction):
    n: int
    alternatives: tuple[int, ...] = (1, 2, 3)

    def _aggregate(self, profile) -> TernaryCode:
        def rel(a, b):
            ab = sum(o.prefers(a, b) for o in profile)
            ba = sum(o.prefers(b, a) for o in profile)
            return "<" if ab > ba else ">" if ba > ab else "~"

        return TernaryCode.from_relation(self.alternatives, rel)

    def __str__(self) -> str:
        return "pairwise-majority"


@dataclass(frozen=True)
class Dictator(SocialWelfareFunction):
    individual: int
    n: int
    alternatives: tuple[int, ...] = (1, 2, 3)

    def __post_init__(self):
        if not 0 <= self.individual < self.n:
            raise DomainError(f"dictator index {self.individual} outside 0..{self.n - 1}")

    def _aggregate(self, profile) -> TernaryCode:
        return encode(profile[self.individual], self.alternatives)

    def __str__(self) -> str:
        return f"dictator:{self.individual}"


@dataclass(frozen=True, eq=False)
class LookupTable(SocialWelfareFunction):
    n: int
    alternatives: tuple[int, ...]
    table: Mapping[tuple, TernaryCode] = field(repr=False)
    name: str = "table"

    def __post_init__(self):
        for p, code in self.table.items():
            if code.alternatives != self.alternatives:
                raise DomainError(f"table outcome {code} is not over {self.alternatives}")

    @classmethod
    def from_function(cls, n: int, alternatives, fn, name: str = "table",
                      cap: int = DEFAULT_CAP) -> LookupTable:
        alts = _alts(alternatives)
        return cls(n, alts, {p: fn(p) for p in enumerate_profiles(alts, n, "weak", cap)}, name)

    def _aggregate(self, profile) -> TernaryCode:
        try:
            return self.table[tuple(profile)]
        except KeyError:
            raise DomainError(f"profile {profile_text(profile)} missing from lookup table") from None

    def to_json(self) -> dict:
        return {
            "alternatives": list(self.alternatives),
            "individuals": self.n,
            "table": [{"profile": profile_text(p), "outcome": str(c)} for p, c in self.table.items()],
        }

    @classmethod
    def from_json(cls, data: dict, name: str = "table") -> LookupTable:
        alts = tuple(data["alternatives"])
        table = {}
        for row in data["table"]:
            profile = tuple(parse_element(t) for t in row["profile"])
            table[profile] = parse_code(row["outcome"], alts)
        swf = cls(int(data["individuals"]), alts, table, name)
        expected = len(enumerate_weak_orders(alts)) ** swf.n
        if len(table) != expected:
            raise DomainError(f"lookup table covers {len(table)} of {expected} profiles")
        return swf

    def __str__(self) -> str:
        return self.name


def parse_swf(text: str, n: int, alternatives=3) -> SocialWelfareFunction:
    """``pairwise-majority``, ``dictator:<i>`` or ``table:<path to JSON>``."""
    alts = _alts(alternatives)
    if text == "pairwise-majority":
        return PairwiseMajority(n, alts)
    if text.startswith("dictator:"):
        try:
            i = int(text.split(":", 1)[1])
        except ValueError:
            raise DomainError(f"bad dictator index in {text!r}") from None
        return Dictator(i, n, alts)
    if text.startswith("table:"):
        path = Path(text.split(":", 1)[1])
        try:
            data = json.loads(path.read_text())
            return LookupTable.from_json(data, name=text)
        except (OSError, json.JSONDecodeError, KeyError, TypeError) as exc:
            raise DomainError(f"cannot load lookup table from {path}: {exc}") from None
    raise DomainError(f"unknown social welfare function {text!r}")


# -- audits -----------------------------------------------------------------


@dataclass
class Check:
    passed: bool
    certificate: dict | None = None

    def to_json(self) -> dict:
        return {"passed": self.passed, "certificate": self.certificate}


@dataclass
class FairnessReport:
    unanimity: Check
    iia: Check
    dictator: int | None
    dictator_certificate: dict | None = None

    def to_json(self) -> dict:
        return {
            "unanimity": self.unanimity.to_json(),
            "iia": self.iia.to_json(),
            "dictator": self.dictator,
            "dictator_certificate": self.dictator_certificate,
        }


def _pair_value(o: WeakOrder, a: int, b: int) -> str:
    ra, rb = o.rank(a), o.rank(b)
    return "0" if ra < rb else "1" if ra > rb else "e"


def check_unanimity(swf: SocialWelfareFunction, cap: int = DEFAULT_CAP) -> Check:
    for p in swf.profiles(cap=cap):
        out = swf.aggregate(p)
        for a, b in pairs(swf.alternatives):
            for x, y in ((a, b), (b, a)):
                if all(o.prefers(x, y) for o in p) and not out.prefers(x, y):
                    return Check(False, {"profile": profile_text(p), "pair": [x, y],
                                         "aggregate": str(out)})
    return Check(True)


def check_iia(swf: SocialWelfareFunction, cap: int = DEFAULT_CAP) -> Check:
    seen: dict[tuple, tuple[tuple, str]] = {}
    for p in swf.profiles(cap=cap):
        out = swf.aggregate(p)
        for a, b in pairs(swf.alternatives):
            key = (a, b, tuple(_pair_value(o, a, b) for o in p))
            v = out.value(a, b)
            if key not in seen:
                seen[key] = (p, v)
            elif seen[key][1] != v:
                q, w = seen[key]
                return Check(False, {
                    "pair": [a, b],
                    "profiles": [profile_text(q), profile_text(p)],
                    "restricted_aggregates": [w, v],
                })
    return Check(True)


def _dictator_counterexample(swf, i: int, cap: int) -> dict | None:
    for p in swf.profiles(cap=cap):
        out = None
        for a in swf.alternatives:
            for b in swf.alternatives:
                if a != b and p[i].prefers(a, b):
                    out = out or swf.aggregate(p)
                    if not out.prefers(a, b):
                        return {"individual": i, "profile": profile_text(p), "pair": [a, b],
                                "aggregate": str(out)}
    return None


def find_dictator(swf: SocialWelfareFunction, cap: int = DEFAULT_CAP) -> int | None:
    for i in range(swf.n):
        if _dictator_counterexample(swf, i, cap) is None:
            return i
    return None


def audit(swf: SocialWelfareFunction, cap: int = DEFAULT_CAP) -> FairnessReport:
    d = find_dictator(swf, cap)
    certificate = None
    if d is None:
        certificate = {"outvoted": [_dictator_counterexample(swf, i, cap) for i in range(swf.n)]}
    return FairnessReport(check_unanimity(swf, cap), check_iia(swf, cap), d, certificate)


def replay(swf: SocialWelfareFunction, kind: str, certificate: dict) -> bool:
    """True when re-evaluating ``certificate`` reproduces the violation it records."""
    if kind == "unanimity":
        p = tuple(parse_element(t) for t in certificate["profile"])
        x, y = certificate["pair"]
        return all(o.prefers(x, y) for o in p) and not swf.aggregate(p).prefers(x, y)
    if kind == "iia":
        a, b = certificate["pair"]
        p, q = (tuple(parse_element(t) for t in prof) for prof in certificate["profiles"])
        same_input = all(_pair_value(x, a, b) == _pair_value(y, a, b) for x, y in zip(p, q))
        return same_input and swf.aggregate(p).value(a, b) != swf.aggregate(q).value(a, b)
    if kind == "dictator":
        p = tuple(parse_element(t) for t in certificate["profile"])
        a, b = certificate["pair"]
        i = certificate["individual"]
        return p[i].prefers(a, b) and not swf.aggregate(p).prefers(a, b)
    raise DomainError(f"unknown certificate kind {kind!r}")


# -- restriction to a triple ------------------------------------------------


@dataclass
class PsiRestriction:
    triple: tuple[int, int, int]
    domain: list[tuple]
    psi: dict[tuple, TernaryCode]
    commutes: bool
    violations: list[dict]

    @property
    def image(self) -> frozenset[TernaryCode]:
        return frozenset(self.psi.values())


def _triple(swf, triple) -> tuple[int, int, int]:
    b = tuple(sorted(triple)) if triple is not None else swf.alternatives[:3]
    if len(b) != 3 or len(set(b)) != 3:
        raise DomainError(f"{triple} is not a 3-element alternative set")
    if not set(b) <= set(swf.alternatives):
        raise DomainError(f"{b} is not a subset of {swf.alternatives}")
    return b


CYCLE_READINGS = ("strict", "contradictory")


def _in_domain(code: TernaryCode, cycles: str) -> bool:
    if code.is_strict:
        return True
    # read transitively, any cycle forces every strict preference, so it is strict too
    return cycles == "contradictory" and not code.is_weak_order


def psi_restriction(swf: SocialWelfareFunction, triple=None, domain: str = "weak",
                    cap: int = DEFAULT_CAP, check: bool = True, cycles: str = "strict") -> PsiRestriction:
    """Restrict ``swf`` to profiles whose aggregate is strict on ``triple``.

    Builds the induced map from restricted profiles to codes on the triple and
    verifies that restricting the aggregate equals applying the induced map to
    the restricted profile, for every profile in the domain.

    With ``cycles="strict"`` only strict orders and strict total cycles count as
    strict. With ``cycles="contradictory"`` every intransitive aggregate (for
    instance ``1~2, 2<3, 1~3``) is a contradictory cycle and joins the domain.
    """
    if cycles not in CYCLE_READINGS:
        raise DomainError(f"unknown cycle reading {cycles!r}; expected one of {CYCLE_READINGS}")
    b = _triple(swf, triple)
    if check:
        iia = check_iia(swf, cap)
        if not iia.passed:
            raise PreconditionError("IIA audit failed; the restricted function is ill-defined",
                                    iia.certificate)
    dom, psi = [], {}
    for p in enumerate_profiles(swf.alternatives, swf.n, domain, cap):
        out = swf.aggregate(p).restrict(b)
        if not _in_domain(out, cycles):
            continue
        dom.append(p)
        rp = restrict(p, b)
        if rp in psi and psi[rp] != out:
            raise ConstructionError("two preimages disagree; restricted function ill-defined", {
                "restricted_profile": profile_text(rp), "values": [str(psi[rp]), str(out)]})
        psi[rp] = out
    violations = []
    for p in dom:
        rp = restrict(p, b)
        if swf.aggregate(p).restrict(b) != psi[rp]:
            violations.append({"profile": profile_text(p)})
    return PsiRestriction(b, dom, psi, not violations, violations)


def image_of_psi(swf: SocialWelfareFunction, triple=None, domain: str = "weak",
                 cap: int = DEFAULT_CAP, cycles: str = "strict") -> frozenset[TernaryCode]:
    u = check_unanimity(swf, cap)
    if not u.passed:
        raise PreconditionError("Unanimity audit failed", u.certificate)
    return psi_restriction(swf, triple, domain, cap, cycles=cycles).image


def image_elements(image: Iterable[TernaryCode]) -> list:
    """Decoded image, strict orders first then cycles, each sorted by text."""
    decoded = [decode(c) for c in image]
    orders = sorted((x for x in decoded if isinstance(x, WeakOrder)), key=str)
    rest = sorted((x for x in decoded if not isinstance(x, WeakOrder)), key=str)
    return orders + rest


# -- fleet helpers ----------------------------------------------------------


def constant_table(n: int, alternatives, order: WeakOrder) -> LookupTable:
    code = encode(order, _alts(alternatives))
    return LookupTable.from_function(n, alternatives, lambda p: code, name=f"constant:{order}")


def borda_table(n: int, alternatives=3) -> LookupTable:
    """Borda count with ties: each alternative scores the number of alternatives
    strictly below it, summed over individuals."""
    alts = _alts(alternatives)

    def fn(p):
        score = {a: sum(sum(o.prefers(a, x) for x in alts) for o in p) for a in alts}
        return TernaryCode.from_relation(
            alts, lambda a, b: "<" if score[a] > score[b] else ">" if score[a] < score[b] else "~")

    return LookupTable.from_function(n, alts, fn, name="borda")


def random_iia_table(n: int, alternatives=3, seed: int = 0) -> LookupTable:
    """Seeded pairwise-local rule: each pair has its own deciding individual,
    ties fall through a shared random priority order of the others.

    Every such table satisfies Unanimity and IIA. It is dictatorial exactly when
    every pair draws the same deciding individual.
    """
    alts = _alts(alternatives)
    rng = random.Random(seed)
    top = {pr: rng.randrange(n) for pr in pairs(alts)}
    tail = list(range(n))
    rng.shuffle(tail)

    def fn(p):
        def rel(a, b):
            for i in [top[(a, b)]] + [j for j in tail if j != top[(a, b)]]:
                if p[i].prefers(a, b):
                    return "<"
                if p[i].prefers(b, a):
                    return ">"
            return "~"
        return TernaryCode.from_relation(alts, rel)

    return LookupTable.from_function(n, alts, fn, name=f"random-iia:{seed}")
