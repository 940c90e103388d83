"""Strict orders, weak orders, preference cycles and their ternary codes.

Alternatives are small integers. A chain ``a < b`` (written ``a≺b``) means
``a`` is strictly preferred to ``b``; ``a ~ b`` is indifference. Chains are
written most-preferred first, so ``WeakOrder.tiers[0]`` is the top tier.

Ternary codes store one value per unordered pair ``(a, b)`` with ``a < b``,
pairs in lexicographic order::

    "0"  a≺b        "1"  b≺a        "e"  a∼b

On three alternatives ``a < b < c`` the stored order is ``[(a,b), (a,c), (b,c)]``.
The cyclic presentation ``[(a,b), (b,c), (c,a)]`` (where the third slot reads
``0`` for c≺a) is available through :meth:`TernaryCode.cyclic_tuple`; in that
presentation ``a∼b≺c`` is ``(e,0,1)`` and the two strict cycles are
``(0,0,0)`` and ``(1,1,1)``.
"""

from __future__ import annotations

import re
from functools import lru_cache
from dataclasses import dataclass, field
from itertools import combinations, permutations, product
from typing import Iterable, Iterator, Mapping, Sequence, Union

from .errors import DomainError, UnsupportedSizeError

Alternative = int
VALUES = ("0", "1", "e")


def _alts(alternatives: Iterable[int] | int) -> tuple[int, ...]:
    if isinstance(alternatives, int):
        if alternatives < 1:
            raise DomainError("need at least one alternative")
        return tuple(range(1, alternatives + 1))
    alts = tuple(sorted(set(alternatives)))
    if not alts:
        raise DomainError("need at least one alternative")
    return alts


def pairs(alternatives: Iterable[int] | int) -> list[tuple[int, int]]:
    """Unordered pairs ``(a, b)``, ``a < b``, in lexicographic order."""
    return list(combinations(_alts(alternatives), 2))


@lru_cache(maxsize=None)
def _pair_index(alternatives: tuple[int, ...]) -> dict[tuple[int, int], int]:
    return {p: i for i, p in enumerate(combinations(alternatives, 2))}


def _name(a: int, names: Mapping[int, str] | None) -> str:
    return names[a] if names else str(a)


@dataclass(frozen=True)
class WeakOrder:
    tiers: tuple[frozenset[int], ...]

    def __post_init__(self):
        tiers = tuple(frozenset(t) for t in self.tiers)
        seen: set[int] = set()
        for t in tiers:
            if not t:
                raise DomainError("weak order tiers must be non-empty")
            if seen & t:
                raise DomainError("weak order tiers must be disjoint")
            seen |= t
        if not tiers:
            raise DomainError("weak order needs at least one alternative")
        object.__setattr__(self, "tiers", tiers)

    @property
    def alternatives(self) -> tuple[int, ...]:
        return tuple(sorted(a for t in self.tiers for a in t))

    def rank(self, a: int) -> int:
        for i, t in enumerate(self.tiers):
            if a in t:
                return i
        raise DomainError(f"alternative {a} not ranked by {self}")

    def prefers(self, a: int, b: int) -> bool:
        return self.rank(a) < self.rank(b)

    def indifferent(self, a: int, b: int) -> bool:
        return self.rank(a) == self.rank(b)

    @property
    def is_strict(self) -> bool:
        return all(len(t) == 1 for t in self.tiers)

    @property
    def ranking(self) -> tuple[int, ...]:
        if not self.is_strict:
            raise DomainError(f"{self} has ties; no ranking")
        return tuple(next(iter(t)) for t in self.tiers)

    def reversed(self) -> WeakOrder:
        return WeakOrder(self.tiers[::-1])

    def format(self, names: Mapping[int, str] | None = None) -> str:
        return "<".join("~".join(_name(a, names) for a in sorted(t)) for t in self.tiers)

    def __str__(self) -> str:
        return self.format()


def strict_order(*ranking: int) -> WeakOrder:
    return WeakOrder(tuple(frozenset([a]) for a in ranking))


@dataclass(frozen=True)
class PreferenceCycle:
    """A cyclic chain ``c0 s0 c1 s1 ... c(n-1) s(n-1) c0`` with steps ``<`` or ``~``.

    Stored rotated so the smallest alternative comes first. ``contradictory`` is
    a modelling flag set by whoever holds the cycle; it does not take part in
    equality.
    """

    elements: tuple[int, ...]
    steps: tuple[str, ...]
    contradictory: bool = field(default=False, compare=False)

    def __post_init__(self):
        elements = tuple(self.elements)
        steps = tuple(self.steps)
        if len(elements) < 3 or len(set(elements)) != len(elements):
            raise DomainError("a preference cycle needs at least 3 distinct alternatives")
        if len(steps) != len(elements) or any(s not in ("<", "~") for s in steps):
            raise DomainError("a preference cycle needs one '<' or '~' step per element")
        if "<" not in steps:
            raise DomainError("a cycle of indifferences is a weak order, not a cycle")
        k = elements.index(min(elements))
        object.__setattr__(self, "elements", elements[k:] + elements[:k])
        object.__setattr__(self, "steps", steps[k:] + steps[:k])

    @classmethod
    def strict(cls, *elements: int, contradictory: bool = False) -> PreferenceCycle:
        return cls(tuple(elements), ("<",) * len(elements), contradictory)

    @property
    def is_strict(self) -> bool:
        return all(s == "<" for s in self.steps)

    def is_total(self, alternatives: Iterable[int]) -> bool:
        return set(self.elements) == set(alternatives)

    @property
    def alternatives(self) -> tuple[int, ...]:
        return tuple(sorted(self.elements))

    def reversed(self) -> PreferenceCycle:
        n = len(self.elements)
        elements = tuple(self.elements[(-i) % n] for i in range(n))
        steps = tuple(self.steps[(-i - 1) % n] for i in range(n))
        return PreferenceCycle(elements, steps, self.contradictory)

    def format(self, names: Mapping[int, str] | None = None) -> str:
        out = [_name(self.elements[0], names)]
        for i, s in enumerate(self.steps):
            out.append(s)
            out.append(_name(self.elements[(i + 1) % len(self.elements)], names))
        return "".join(out)

    def __str__(self) -> str:
        return self.format()


@dataclass(frozen=True)
class TernaryCode:
    alternatives: tuple[int, ...]
    entries: tuple[str, ...]

    def __post_init__(self):
        alts = tuple(self.alternatives)
        if list(alts) != sorted(set(alts)):
            raise DomainError("code alternatives must be sorted and distinct")
        entries = tuple(str(v) for v in self.entries)
        if len(entries) != len(alts) * (len(alts) - 1) // 2:
            raise DomainError(f"expected one entry per pair of {alts}, got {len(entries)}")
        if any(v not in VALUES for v in entries):
            raise DomainError(f"code values must be in {VALUES}")
        object.__setattr__(self, "alternatives", alts)
        object.__setattr__(self, "entries", entries)

    @classmethod
    def from_relation(cls, alternatives: Iterable[int], rel) -> TernaryCode:
        """Build from ``rel(a, b)`` returning ``'<'``, ``'>'`` or ``'~'`` for ``a < b``."""
        alts = _alts(alternatives)
        sym = {"<": "0", ">": "1", "~": "e"}
        return cls(alts, tuple(sym[rel(a, b)] for a, b in pairs(alts)))

    def value(self, a: int, b: int) -> str:
        """Code value for the ordered pair, flipping when ``a > b``."""
        if a == b:
            return "e"
        lo, hi = min(a, b), max(a, b)
        try:
            v = self.entries[_pair_index(self.alternatives)[(lo, hi)]]
        except KeyError:
            raise DomainError(f"pair ({a}, {b}) not in {self.alternatives}") from None
        if a > b and v != "e":
            v = "1" if v == "0" else "0"
        return v

    def relation(self, a: int, b: int) -> str:
        return {"0": "<", "1": ">", "e": "~"}[self.value(a, b)]

    def prefers(self, a: int, b: int) -> bool:
        return self.value(a, b) == "0"

    def weakly_prefers(self, a: int, b: int) -> bool:
        return self.value(a, b) != "1"

    @property
    def is_strict(self) -> bool:
        return "e" not in self.entries

    @property
    def is_weak_order(self) -> bool:
        # completeness holds by construction; scan every triple for transitivity
        alts = self.alternatives
        for a in alts:
            for b in alts:
                for c in alts:
                    if (self.weakly_prefers(a, b) and self.weakly_prefers(b, c)
                            and not self.weakly_prefers(a, c)):
                        return False
        return True

    def restrict(self, subset: Iterable[int]) -> TernaryCode:
        sub = _alts(subset)
        if not set(sub) <= set(self.alternatives):
            raise DomainError(f"{sub} is not a subset of {self.alternatives}")
        return TernaryCode(sub, tuple(self.value(a, b) for a, b in pairs(sub)))

    def cyclic_tuple(self) -> tuple[str, str, str]:
        """Values on ``[(a,b), (b,c), (c,a)]`` for a three-alternative code."""
        if len(self.alternatives) != 3:
            raise UnsupportedSizeError("cyclic presentation needs exactly 3 alternatives")
        a, b, c = self.alternatives
        return (self.value(a, b), self.value(b, c), self.value(c, a))

    @classmethod
    def from_cyclic_tuple(cls, values: Sequence[str], alternatives: Iterable[int] = (1, 2, 3)) -> TernaryCode:
        alts = _alts(alternatives)
        if len(alts) != 3 or len(values) != 3:
            raise UnsupportedSizeError("cyclic presentation needs exactly 3 alternatives")
        a, b, c = alts
        given = {(a, b): str(values[0]), (b, c): str(values[1]), (c, a): str(values[2])}
        flip = {"0": "1", "1": "0", "e": "e"}
        ac = flip[given[(c, a)]]
        return cls(alts, (given[(a, b)], ac, given[(b, c)]))

    def __str__(self) -> str:
        return "(" + ",".join(self.entries) + ")"


@dataclass(frozen=True)
class CycleBearingRelation:
    """A code that is neither a weak order nor a single total cycle."""

    code: TernaryCode

    def __str__(self) -> str:
        return f"relation{self.code}"


Element = Union[WeakOrder, PreferenceCycle]
Profile = tuple  # tuple[WeakOrder, ...], individuals indexed 0..N-1


def _ordered_partitions(items: list[int]) -> Iterator[tuple[frozenset[int], ...]]:
    if not items:
        yield ()
        return
    for k in range(1, len(items) + 1):
        for first in combinations(items, k):
            rest = [x for x in items if x not in first]
            for tail in _ordered_partitions(rest):
                yield (frozenset(first),) + tail


def enumerate_strict_orders(alternatives: Iterable[int] | int) -> list[WeakOrder]:
    return [strict_order(*p) for p in permutations(_alts(alternatives))]


def enumerate_weak_orders(alternatives: Iterable[int] | int) -> list[WeakOrder]:
    return [WeakOrder(t) for t in _ordered_partitions(list(_alts(alternatives)))]


def enumerate_codes(alternatives: Iterable[int] | int) -> list[TernaryCode]:
    alts = _alts(alternatives)
    n = len(pairs(alts))
    return [TernaryCode(alts, vals) for vals in product(VALUES, repeat=n)]


def valid_cycles(alternatives: Iterable[int] | int = 3) -> tuple[PreferenceCycle, PreferenceCycle]:
    """The two strict total cycles ``a≺b≺c≺a`` and ``a≺c≺b≺a``."""
    alts = _alts(alternatives)
    if len(alts) != 3:
        raise UnsupportedSizeError(f"valid cycles are defined for 3 alternatives, got {len(alts)}")
    a, b, c = alts
    return (PreferenceCycle.strict(a, b, c), PreferenceCycle.strict(a, c, b))


def encode(x: Element, alternatives: Iterable[int] | None = None) -> TernaryCode:
    """Ternary code of a weak order or a total cycle.

    Cycles on more than three alternatives must be strict; their non-adjacent
    pairs follow the chain read from the smallest alternative, so only the
    closing pair is reversed (``a≺b≺c≺d≺a`` gives ``d≺a`` and ``a≺c``, ``b≺d``).
    """
    if isinstance(x, WeakOrder):
        alts = _alts(alternatives) if alternatives is not None else x.alternatives
        if set(alts) != set(x.alternatives):
            raise DomainError(f"{x} does not rank exactly {alts}")

        def rel(a, b):
            ra, rb = x.rank(a), x.rank(b)
            return "<" if ra < rb else ">" if ra > rb else "~"

        return TernaryCode.from_relation(alts, rel)
    if isinstance(x, PreferenceCycle):
        alts = _alts(alternatives) if alternatives is not None else x.alternatives
        if not x.is_total(alts):
            raise DomainError(f"cycle {x} is not total over {alts}")
        n = len(x.elements)
        pos = {a: i for i, a in enumerate(x.elements)}
        if n == 3:
            step = {}
            for i, s in enumerate(x.steps):
                step[(x.elements[i], x.elements[(i + 1) % n])] = s

            def rel(a, b):
                if (a, b) in step:
                    return step[(a, b)]
                s = step[(b, a)]
                return ">" if s == "<" else "~"

            return TernaryCode.from_relation(alts, rel)
        if not x.is_strict:
            raise DomainError("cycles on more than 3 alternatives must be strict to encode")
        first, last = x.elements[0], x.elements[-1]

        def rel(a, b):
            before = pos[a] < pos[b]
            if {a, b} == {first, last}:
                before = not before
            return "<" if before else ">"

        return TernaryCode.from_relation(alts, rel)
    raise DomainError(f"cannot encode {type(x).__name__}")


def _weak_order_from_code(code: TernaryCode) -> WeakOrder:
    above = {a: sum(code.prefers(b, a) for b in code.alternatives) for a in code.alternatives}
    levels = sorted(set(above.values()))
    return WeakOrder(tuple(frozenset(a for a in code.alternatives if above[a] == lv) for lv in levels))


def decode(code: TernaryCode) -> WeakOrder | PreferenceCycle | CycleBearingRelation:
    if code.is_weak_order:
        return _weak_order_from_code(code)
    alts = code.alternatives
    if len(alts) == 3:
        a = alts[0]
        for y, z in permutations(alts[1:]):
            seq = (a, y, z)
            rels = [code.relation(seq[i], seq[(i + 1) % 3]) for i in range(3)]
            if all(r in ("<", "~") for r in rels):
                return PreferenceCycle(seq, tuple(rels))
        raise AssertionError("intransitive 3-alternative code without a cycle")
    if code.is_strict:
        for rest in permutations(alts[1:]):
            cyc = PreferenceCycle.strict(alts[0], *rest)
            if encode(cyc) == code:
                return cyc
    return CycleBearingRelation(code)


def restrict(x, subset: Iterable[int]):
    """Restrict a profile, code, weak order or cycle to ``subset``.

    Cycles drop the removed alternatives from the chain; an indifference step
    survives only when every merged step was an indifference.
    """
    sub = set(subset)
    if isinstance(x, TernaryCode):
        return x.restrict(sub)
    if isinstance(x, WeakOrder):
        if not sub <= set(x.alternatives):
            raise DomainError(f"{sorted(sub)} is not a subset of {x.alternatives}")
        return WeakOrder(tuple(t & sub for t in x.tiers if t & sub))
    if isinstance(x, PreferenceCycle):
        if not sub <= set(x.elements):
            raise DomainError(f"{sorted(sub)} is not a subset of {x.alternatives}")
        if len(sub) < 3:
            raise DomainError("a cycle restricted to fewer than 3 alternatives is not a cycle")
        n = len(x.elements)
        start = next(i for i in range(n) if x.elements[i] in sub)
        elements, steps = [], []
        pending = None
        for k in range(n):
            i = (start + k) % n
            if x.elements[i] in sub:
                if pending is not None:
                    steps.append(pending)
                elements.append(x.elements[i])
                pending = x.steps[i]
            else:
                pending = "<" if "<" in (pending, x.steps[i]) else "~"
        steps.append(pending)
        return PreferenceCycle(tuple(elements), tuple(steps), x.contradictory)
    if isinstance(x, tuple):
        return tuple(restrict(o, sub) for o in x)
    raise DomainError(f"cannot restrict {type(x).__name__}")


_TOKEN = re.compile(r"\s*([^<~≺∼\s]+)\s*([<~≺∼]?)")


def parse_element(text: str) -> WeakOrder | PreferenceCycle:
    """Parse ``"1~2<3"`` (weak order) or ``"1<2<3<1"`` (cycle)."""
    tokens = [(m.group(1), m.group(2)) for m in _TOKEN.finditer(text.strip())]
    if not tokens or tokens[-1][1]:
        raise DomainError(f"malformed order text {text!r}")
    try:
        alts = [int(t) for t, _ in tokens]
    except ValueError:
        raise DomainError(f"alternatives must be integers in {text!r}") from None
    steps = ["<" if s in ("<", "≺") else "~" for _, s in tokens[:-1]]
    if len(alts) > 1 and alts[0] == alts[-1]:
        return PreferenceCycle(tuple(alts[:-1]), tuple(steps))
    if len(set(alts)) != len(alts):
        raise DomainError(f"repeated alternative in {text!r}")
    tiers: list[set[int]] = [{alts[0]}]
    for a, s in zip(alts[1:], steps):
        if s == "~":
            tiers[-1].add(a)
        else:
            tiers.append({a})
    return WeakOrder(tuple(frozenset(t) for t in tiers))


def parse_code(text: str, alternatives: Iterable[int] | int) -> TernaryCode:
    vals = [v.strip() for v in text.strip().strip("()").split(",") if v.strip()]
    return TernaryCode(_alts(alternatives), tuple(vals))
