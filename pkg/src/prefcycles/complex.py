"""Two-dimensional delta complexes: gluing, puncturing, orientability, classification.

A face is an ordered triple of edge references ``(edge, sign)``; ``sign = +1``
traverses the edge tail to head. Consecutive sides chain head to tail, so a
face with corners ``(u, v, w)`` runs ``u -> v -> w -> u``, and that traversal is
its stored orientation. Parallel edges, loops and faces with repeated corners
are all allowed, which is what quotients of simplicial complexes produce.

Orientation and the double cover only need every edge to border at most two
face-sides; classification additionally needs every vertex link to be a single
arc or cycle (:func:`is_surface`).
"""

from __future__ import annotations

import enum
import json
import math
from collections import defaultdict, deque
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import networkx as nx

from .errors import ConstructionError, DomainError, NonSurfaceError, PreconditionError


@dataclass(frozen=True)
class Edge:
    label: str
    tail: str
    head: str


@dataclass(frozen=True)
class Face:
    label: str
    sides: tuple[tuple[str, int], tuple[str, int], tuple[str, int]]


class DeltaComplex:
    """Immutable 2-dimensional delta complex."""

    __slots__ = ("vertices", "edges", "faces", "_edge", "_face")

    def __init__(self, vertices: Iterable[str], edges: Iterable[Edge | Sequence],
                 faces: Iterable[Face | Sequence]):
        self.vertices = tuple(str(v) for v in vertices)
        self.edges = tuple(e if isinstance(e, Edge) else Edge(str(e[2]), str(e[0]), str(e[1]))
                           for e in edges)
        self.faces = tuple(f if isinstance(f, Face) else Face(str(f[0]), tuple(f[1])) for f in faces)
        for kind, labels in (("vertex", self.vertices), ("edge", [e.label for e in self.edges]),
                             ("face", [f.label for f in self.faces])):
            if len(set(labels)) != len(labels):
                raise ConstructionError(f"duplicate {kind} label")
        vs = set(self.vertices)
        self._edge = {e.label: e for e in self.edges}
        self._face = {f.label: f for f in self.faces}
        for e in self.edges:
            if e.tail not in vs or e.head not in vs:
                raise ConstructionError(f"edge {e.label} references an unknown vertex")
        for f in self.faces:
            if len(f.sides) != 3:
                raise ConstructionError(f"face {f.label} must have 3 sides")
            for lab, sign in f.sides:
                if lab not in self._edge or sign not in (1, -1):
                    raise ConstructionError(f"face {f.label} has a bad side ({lab}, {sign})")
            ends = self.side_ends(f.label)
            for i in range(3):
                if ends[i][1] != ends[(i + 1) % 3][0]:
                    raise ConstructionError(f"edge chain of face {f.label} does not close")

    def edge(self, label: str) -> Edge:
        return self._edge[label]

    def face(self, label: str) -> Face:
        return self._face[label]

    def has_face(self, label: str) -> bool:
        return label in self._face

    def side_ends(self, face_label: str) -> list[tuple[str, str]]:
        out = []
        for lab, sign in self._face[face_label].sides:
            e = self._edge[lab]
            out.append((e.tail, e.head) if sign == 1 else (e.head, e.tail))
        return out

    def corners(self, face_label: str) -> tuple[str, str, str]:
        return tuple(s for s, _ in self.side_ends(face_label))

    def incidences(self) -> dict[str, list[tuple[str, int, int]]]:
        """Edge label -> face-sides ``(face, side index, sign)``, in face order."""
        inc: dict[str, list] = {e.label: [] for e in self.edges}
        for f in self.faces:
            for i, (lab, sign) in enumerate(f.sides):
                inc[lab].append((f.label, i, sign))
        return inc

    @property
    def counts(self) -> tuple[int, int, int]:
        return len(self.vertices), len(self.edges), len(self.faces)

    def __repr__(self) -> str:
        v, e, f = self.counts
        return f"DeltaComplex(V={v}, E={e}, F={f})"


def _side_corners(i: int, sign: int) -> tuple[int, int]:
    """Corner indices at the tail and head of the edge on side ``i``."""
    return (i, (i + 1) % 3) if sign == 1 else ((i + 1) % 3, i)


def from_simplices(vertices: Iterable, edges: Iterable[Sequence], triangles: Iterable[Sequence],
                   face_labels: Sequence[str] | None = None) -> DeltaComplex:
    """Delta complex of a simplicial complex.

    Each triangle keeps its given vertex order as its orientation. Edges are
    shared by unordered endpoints and point from the smaller to the larger label.
    """
    triangles = [tuple(str(v) for v in t) for t in triangles]
    verts = [str(v) for v in vertices]
    known = set(verts)
    for t in triangles:
        if len(t) != 3 or len(set(t)) != 3:
            raise ConstructionError(f"degenerate triangle {t}")
        for v in t:
            if v not in known:
                raise ConstructionError(f"triangle {t} references undeclared vertex {v}")
    keys: dict[frozenset, Edge] = {}

    def edge_for(a: str, b: str) -> Edge:
        k = frozenset((a, b))
        if k not in keys:
            tail, head = sorted((a, b))
            keys[k] = Edge(f"{tail}-{head}", tail, head)
        return keys[k]

    for e in edges:
        a, b = (str(v) for v in e)
        if a == b or a not in known or b not in known:
            raise ConstructionError(f"bad edge {e}")
        edge_for(a, b)
    faces = []
    labels = list(face_labels) if face_labels is not None else [f"f{i}" for i in range(len(triangles))]
    for lab, (u, v, w) in zip(labels, triangles):
        sides = []
        for a, b in ((u, v), (v, w), (w, u)):
            e = edge_for(a, b)
            sides.append((e.label, 1 if e.tail == a else -1))
        faces.append(Face(lab, tuple(sides)))
    return DeltaComplex(verts, sorted(keys.values(), key=lambda e: e.label), faces)


def from_triangles(triples: Iterable[Sequence], face_labels: Sequence[str] | None = None) -> DeltaComplex:
    triples = [tuple(str(v) for v in t) for t in triples]
    verts = sorted({v for t in triples for v in t})
    return from_simplices(verts, [], triples, face_labels)


def euler_characteristic(c: DeltaComplex) -> int:
    v, e, f = c.counts
    return v - e + f


def _require_pseudo_surface(c: DeltaComplex) -> dict[str, list]:
    inc = c.incidences()
    bad = {e: len(s) for e, s in inc.items() if len(s) > 2}
    if bad:
        raise NonSurfaceError("edges with more than two face-sides", {"edges": bad})
    return inc


# -- boundary, surface check, components ------------------------------------


@dataclass(frozen=True)
class BoundaryCircuit:
    vertices: tuple[str, ...]
    edges: tuple[str, ...]
    closed: bool


def boundary_components(c: DeltaComplex) -> list[BoundaryCircuit]:
    """Connected pieces of the boundary, each starting at its smallest vertex.

    Closed circuits are walked in the direction induced by the stored face
    orientations when those agree all the way round, otherwise towards the
    smaller neighbour.
    """
    inc = _require_pseudo_surface(c)
    bedges = [c.edge(e) for e, s in inc.items() if len(s) == 1]
    g = nx.MultiGraph()
    arcs = {}
    for e in bedges:
        g.add_edge(e.tail, e.head, key=e.label)
        _, _, sign = inc[e.label][0]
        arcs[e.label] = (e.tail, e.head) if sign == 1 else (e.head, e.tail)
    circuits = []
    for comp in sorted(nx.connected_components(g), key=min):
        sub = g.subgraph(comp)
        closed = all(d == 2 for _, d in sub.degree())
        labels = sorted(k for _, _, k in sub.edges(keys=True))
        if not closed:
            circuits.append(BoundaryCircuit(tuple(sorted(comp)), tuple(labels), False))
            continue
        outgoing = defaultdict(list)
        for k in labels:
            outgoing[arcs[k][0]].append(k)
        directed = all(len(outgoing[v]) == 1 for v in comp)
        start = min(comp)
        seq, used = [start], []
        v = start
        while len(used) < len(labels):
            if directed:
                k = outgoing[v][0]
                other = arcs[k][1]
            else:
                other, k = min((o, k) for _, o, k in sub.edges(v, keys=True) if k not in used)
            used.append(k)
            v = other
            if len(used) < len(labels):
                seq.append(v)
        circuits.append(BoundaryCircuit(tuple(seq), tuple(used), True))
    return circuits


@dataclass
class SurfaceReport:
    ok: bool
    defects: list[str] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.ok


def vertex_link(c: DeltaComplex, v: str) -> nx.MultiGraph:
    """Link of ``v``: nodes are edge-ends at ``v``, one link edge per face corner at ``v``."""
    g = nx.MultiGraph()
    for e in c.edges:
        if e.tail == v:
            g.add_node((e.label, "tail"))
        if e.head == v:
            g.add_node((e.label, "head"))
    for f in c.faces:
        sides = f.sides
        for i in range(3):
            if c.corners(f.label)[i] != v:
                continue
            arr_lab, arr_sign = sides[(i - 1) % 3]
            lv_lab, lv_sign = sides[i]
            arriving = (arr_lab, "head" if arr_sign == 1 else "tail")
            leaving = (lv_lab, "tail" if lv_sign == 1 else "head")
            g.add_edge(arriving, leaving, key=(f.label, i))
    return g


def is_surface(c: DeltaComplex) -> SurfaceReport:
    defects = []
    for e, sides in c.incidences().items():
        if len(sides) == 0:
            defects.append(f"edge {e} borders no face")
        elif len(sides) > 2:
            defects.append(f"edge {e} borders {len(sides)} face-sides")
    for v in c.vertices:
        link = vertex_link(c, v)
        n, m = link.number_of_nodes(), link.number_of_edges()
        if m == 0:
            defects.append(f"vertex {v} lies on no face")
            continue
        if nx.number_of_selfloops(link):
            defects.append(f"vertex {v} has a folded corner")
        elif not nx.is_connected(link):
            defects.append(f"vertex {v} link is disconnected (pinch point)")
        elif max(d for _, d in link.degree()) > 2 or m not in (n, n - 1):
            defects.append(f"vertex {v} link is not an arc or a cycle")
    return SurfaceReport(not defects, defects)


def _skeleton_graph(c: DeltaComplex) -> nx.MultiGraph:
    g = nx.MultiGraph()
    g.add_nodes_from(c.vertices)
    for e in c.edges:
        g.add_edge(e.tail, e.head, key=e.label)
    return g


def connected_components(c: DeltaComplex) -> list[DeltaComplex]:
    out = []
    for comp in sorted(nx.connected_components(_skeleton_graph(c)), key=min):
        edges = [e for e in c.edges if e.tail in comp]
        labels = {e.label for e in edges}
        faces = [f for f in c.faces if f.sides[0][0] in labels]
        out.append(DeltaComplex([v for v in c.vertices if v in comp], edges, faces))
    return out


def is_connected(c: DeltaComplex) -> bool:
    return len(connected_components(c)) <= 1


def face_adjacency(c: DeltaComplex) -> nx.MultiGraph:
    g = nx.MultiGraph()
    g.add_nodes_from(f.label for f in c.faces)
    for e, sides in c.incidences().items():
        for i in range(len(sides)):
            for j in range(i + 1, len(sides)):
                g.add_edge(sides[i][0], sides[j][0], key=e)
    return g


def face_components(c: DeltaComplex) -> list[list[str]]:
    order = {f.label: i for i, f in enumerate(c.faces)}
    comps = [sorted(comp, key=order.get) for comp in nx.connected_components(face_adjacency(c))]
    return sorted(comps, key=lambda comp: order[comp[0]])


# -- orientability ------------------------------------------------------------


@dataclass
class Orientation:
    """Result of orientation propagation.

    ``signs`` maps each face to +1 (keep stored order) or -1 (reverse) when a
    consistent choice exists. Otherwise ``conflict`` names the edge where the
    propagation disagreed and the loop of faces that closes through it.
    """

    orientable: bool
    signs: dict[str, int] | None = None
    conflict: dict | None = None


def _propagate(c: DeltaComplex, inc) -> tuple[dict[str, int], dict | None]:
    """Breadth-first sign propagation over face adjacency.

    Every face gets a sign even past a disagreement; the first disagreement is
    returned as a certificate (offending edge plus the loop of faces through it).
    """
    signs: dict[str, int] = {}
    parent: dict[str, str | None] = {}
    conflict = None

    def path(f):
        out = [f]
        while parent[f] is not None:
            f = parent[f]
            out.append(f)
        return out

    for seed in c.faces:
        if seed.label in signs:
            continue
        signs[seed.label] = 1
        parent[seed.label] = None
        queue = deque([seed.label])
        while queue:
            f = queue.popleft()
            for i, (e, d) in enumerate(c.face(f).sides):
                for g, j, d2 in inc[e]:
                    if (g, j) == (f, i):
                        continue
                    want = -signs[f] * d * d2
                    if g not in signs:
                        signs[g] = want
                        parent[g] = f
                        queue.append(g)
                    elif signs[g] != want and conflict is None:
                        pf, pg = path(f), path(g)
                        common = next(x for x in pf if x in pg)
                        loop = pf[: pf.index(common) + 1] + pg[: pg.index(common)][::-1]
                        conflict = {"edge": e, "faces": loop}
    return signs, conflict


def orient(c: DeltaComplex) -> Orientation:
    signs, conflict = _propagate(c, _require_pseudo_surface(c))
    if conflict is not None:
        return Orientation(False, None, conflict)
    return Orientation(True, signs)


def is_orientable(c: DeltaComplex) -> bool:
    return orient(c).orientable


# -- orientation double cover -------------------------------------------------


class _UnionFind:
    def __init__(self):
        self.parent: dict = {}

    def find(self, x):
        self.parent.setdefault(x, x)
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)

    def classes(self) -> dict:
        out = defaultdict(list)
        for item in list(self.parent):
            out[self.find(item)].append(item)
        return out


@dataclass
class DoubleCover:
    cover: DeltaComplex
    projection: dict[str, dict[str, str]]
    deck: dict[str, dict[str, str]]
    base_face_components: int

    @property
    def components(self) -> int:
        return len(connected_components(self.cover))

    @property
    def sheets_separate(self) -> bool:
        """True when every face-connected piece of the base lifts to two disjoint sheets."""
        return len(face_components(self.cover)) == 2 * self.base_face_components


def orientation_double_cover(c: DeltaComplex) -> DoubleCover:
    """Two-sheeted cover with one sheet per local orientation of each face.

    Sheets are glued across every shared edge so that the two induced edge
    directions cancel. At a vertex whose link falls apart (a pinch point) the
    lifts of the separate sectors are paired so each vertex still has exactly
    two preimages; cells outside every face are simply doubled.
    """
    inc = _require_pseudo_surface(c)
    signs, _ = _propagate(c, inc)
    vuf, euf = _UnionFind(), _UnionFind()
    for f in c.faces:
        for s in (1, -1):
            for i in range(3):
                vuf.find((f.label, s, i))
                euf.find((f.label, s, i))
    for e, sides in inc.items():
        if len(sides) != 2:
            continue
        (f1, i1, d1), (f2, i2, d2) = sides
        t1, h1 = _side_corners(i1, d1)
        t2, h2 = _side_corners(i2, d2)
        for s1 in (1, -1):
            s2 = -s1 * d1 * d2
            euf.union((f1, s1, i1), (f2, s2, i2))
            vuf.union((f1, s1, t1), (f2, s2, t2))
            vuf.union((f1, s1, h1), (f2, s2, h2))

    # sectors: groups of base corners whose lifts are connected
    sectors = _UnionFind()
    for members in vuf.classes().values():
        for f, _, i in members:
            sectors.union((f, i), (members[0][0], members[0][2]))
    vname: dict = {}
    for members in sectors.classes().values():
        f, i = min(members)
        base = c.corners(f)[i]
        plus = vuf.find((f, 1, i))
        for g, j in members:
            for s in (1, -1):
                sheet = signs[f] if vuf.find((g, s, j)) == plus else -signs[f]
                vname[(g, s, j)] = f"{base}^{0 if sheet == 1 else 1}"

    ename: dict = {}
    per_edge = defaultdict(list)
    for root, members in sorted(euf.classes().items()):
        f, _, i = root
        per_edge[c.face(f).sides[i][0]].append(members)
    for lab, classes in per_edge.items():
        for k, members in enumerate(classes):
            for item in members:
                ename[item] = f"{lab}^{k}"

    edges: dict[str, Edge] = {}
    for (f, s, i), lab in ename.items():
        if lab not in edges:
            t, h = _side_corners(i, c.face(f).sides[i][1])
            edges[lab] = Edge(lab, vname[(f, s, t)], vname[(f, s, h)])
    for e in c.edges:
        if not inc[e.label]:
            for k in (0, 1):
                edges[f"{e.label}^{k}"] = Edge(f"{e.label}^{k}", f"{e.tail}^{k}", f"{e.head}^{k}")
    faces = []
    fname = lambda f, s: f"{f}^{'+' if s == 1 else '-'}"
    for f in c.faces:
        d = [sign for _, sign in f.sides]
        faces.append(Face(fname(f.label, 1), tuple((ename[(f.label, 1, i)], d[i]) for i in range(3))))
        faces.append(Face(fname(f.label, -1), tuple((ename[(f.label, -1, i)], -d[i]) for i in (2, 1, 0))))
    verts = [f"{v}^{k}" for v in c.vertices for k in (0, 1)]
    cover = DeltaComplex(verts, sorted(edges.values(), key=lambda e: e.label), faces)

    up = lambda lab: lab.rsplit("^", 1)[0]
    swap = lambda lab: f"{up(lab)}^{1 - int(lab.rsplit('^', 1)[1])}"
    projection = {
        "vertices": {v: up(v) for v in cover.vertices},
        "edges": {e.label: up(e.label) for e in cover.edges},
        "faces": {f.label: up(f.label) for f in cover.faces},
    }
    deck = {"vertices": {v: swap(v) for v in cover.vertices}, "edges": {}, "faces": {}}
    for (f, s, i), lab in ename.items():
        other = ename[(f, -s, i)]
        if deck["edges"].setdefault(lab, other) != other:
            raise ConstructionError("sheet swap is not well defined on the cover")
    for e in c.edges:
        if not inc[e.label]:
            deck["edges"][f"{e.label}^0"], deck["edges"][f"{e.label}^1"] = f"{e.label}^1", f"{e.label}^0"
    for f in c.faces:
        deck["faces"][fname(f.label, 1)] = fname(f.label, -1)
        deck["faces"][fname(f.label, -1)] = fname(f.label, 1)
    for (f, s, i), lab in vname.items():
        if vname[(f, -s, i)] != swap(lab):
            raise ConstructionError("sheet swap is not well defined on the cover")
    return DoubleCover(cover, projection, deck, len(face_components(c)))


# -- quotients and punctures ------------------------------------------------


@dataclass(frozen=True)
class Identification:
    """Identify cell ``a`` with cell ``b`` of dimension ``dim`` so that
    ``a_vertices[k]`` lands on ``b_vertices[k]``."""

    dim: int
    a: str
    b: str
    a_vertices: tuple[str, ...] = ()
    b_vertices: tuple[str, ...] = ()


GluingSpec = Sequence[Identification]


class _EdgeUnion:
    """Union-find over edges tracking relative direction (+1 same, -1 reversed)."""

    def __init__(self, labels):
        self.parent = {l: l for l in labels}
        self.parity = {l: 1 for l in labels}

    def find(self, x):
        p = 1
        root = x
        while self.parent[root] != root:
            p *= self.parity[root]
            root = self.parent[root]
        return root, p

    def union(self, a, b, p):
        ra, pa = self.find(a)
        rb, pb = self.find(b)
        rel = pa * p * pb
        if ra == rb:
            if rel != 1:
                raise ConstructionError(f"edge {a} would be identified with its own reverse",
                                        {"edges": [a, b]})
            return
        if rb < ra:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.parity[rb] = rel


class _FaceUnion:
    """Union-find over faces tracking the corner permutation into the root face."""

    def __init__(self, labels):
        self.parent = {l: l for l in labels}
        self.perm = {l: (0, 1, 2) for l in labels}

    def find(self, x):
        perm = (0, 1, 2)
        root = x
        while self.parent[root] != root:
            step = self.perm[root]
            perm = tuple(step[perm[i]] for i in range(3))
            root = self.parent[root]
        return root, perm

    def union(self, a, b, corner_map):
        ra, pa = self.find(a)
        rb, pb = self.find(b)
        inv_a = [0, 0, 0]
        for i in range(3):
            inv_a[pa[i]] = i
        # ra corner -> a corner -> b corner -> rb corner
        rel = tuple(pb[corner_map[inv_a[k]]] for k in range(3))
        if ra == rb:
            if rel != (0, 1, 2):
                raise ConstructionError(f"face {a} would be identified with itself non-trivially",
                                        {"faces": [a, b]})
            return
        self.parent[ra] = rb
        self.perm[ra] = rel


def _cell_map(c: DeltaComplex, ident: Identification, corners_a, corners_b) -> list[int]:
    if len(set(corners_a)) != len(corners_a) or len(set(corners_b)) != len(corners_b):
        raise ConstructionError(
            f"cells {ident.a}/{ident.b} have repeated vertices; a vertex correspondence is ambiguous")
    if sorted(ident.a_vertices) != sorted(corners_a) or sorted(ident.b_vertices) != sorted(corners_b):
        raise ConstructionError(f"correspondence for {ident.a}/{ident.b} does not list their vertices")
    to_b = dict(zip(ident.a_vertices, ident.b_vertices))
    return [list(corners_b).index(to_b[v]) for v in corners_a]


def quotient(c: DeltaComplex, gluing: GluingSpec) -> DeltaComplex:
    """Identify cells of ``c`` and return the quotient complex.

    Identifying faces identifies their corresponding edges and vertices;
    identifying edges identifies their endpoints. Merged cells are labelled by
    joining member labels (``=`` for vertices and edges, ``|`` for faces).
    """
    vuf = _UnionFind()
    for v in c.vertices:
        vuf.find(v)
    eu = _EdgeUnion([e.label for e in c.edges])
    fu = _FaceUnion([f.label for f in c.faces])

    def glue_edges(ea, eb, p):
        eu.union(ea, eb, p)
        a, b = c.edge(ea), c.edge(eb)
        vuf.union(a.tail, b.tail if p == 1 else b.head)
        vuf.union(a.head, b.head if p == 1 else b.tail)

    for ident in gluing:
        if ident.dim == 0:
            if ident.a not in vuf.parent or ident.b not in vuf.parent:
                raise DomainError(f"unknown vertex in {ident}")
            vuf.union(ident.a, ident.b)
        elif ident.dim == 1:
            try:
                a, b = c.edge(ident.a), c.edge(ident.b)
            except KeyError:
                raise DomainError(f"unknown edge in {ident}") from None
            m = _cell_map(c, ident, (a.tail, a.head), (b.tail, b.head))
            if ident.a == ident.b and m != [0, 1]:
                raise ConstructionError(f"edge {ident.a} identified with its own reverse")
            glue_edges(ident.a, ident.b, 1 if m == [0, 1] else -1)
        elif ident.dim == 2:
            if not (c.has_face(ident.a) and c.has_face(ident.b)):
                raise DomainError(f"unknown face in {ident}")
            ca, cb = c.corners(ident.a), c.corners(ident.b)
            m = _cell_map(c, ident, ca, cb)
            fu.union(ident.a, ident.b, m)
            fa, fb = c.face(ident.a), c.face(ident.b)
            for i, (ea, da) in enumerate(fa.sides):
                j, k = m[i], m[(i + 1) % 3]
                if (j + 1) % 3 == k:
                    eb, db = fb.sides[j]
                else:
                    eb, db = fb.sides[k]
                    db = -db
                glue_edges(ea, eb, da * db)
        else:
            raise DomainError(f"cannot identify cells of dimension {ident.dim}")

    vclass = defaultdict(list)
    for v in c.vertices:
        vclass[vuf.find(v)].append(v)
    vlabel = {r: "=".join(ms) for r, ms in vclass.items()}
    eclass = defaultdict(list)
    for e in c.edges:
        eclass[eu.find(e.label)[0]].append(e.label)
    elabel = {r: "=".join(ms) for r, ms in eclass.items()}
    fclass = defaultdict(list)
    for f in c.faces:
        fclass[fu.find(f.label)[0]].append(f.label)

    vertices = [vlabel[vuf.find(v)] for v in c.vertices if vuf.find(v) == v]
    edges = []
    for r in eclass:
        e = c.edge(r)
        edges.append(Edge(elabel[r], vlabel[vuf.find(e.tail)], vlabel[vuf.find(e.head)]))
    faces = []
    for r, members in fclass.items():
        sides = []
        for lab, sign in c.face(r).sides:
            root, p = eu.find(lab)
            sides.append((elabel[root], sign * p))
        faces.append(Face("|".join(members), tuple(sides)))
    return DeltaComplex(vertices, edges, faces)


def puncture(c: DeltaComplex, *face_labels: str) -> DeltaComplex:
    """Remove the open faces; their edges and vertices stay."""
    for lab in face_labels:
        if not c.has_face(lab):
            raise DomainError(f"no face {lab!r} to puncture")
    drop = set(face_labels)
    return DeltaComplex(c.vertices, c.edges, [f for f in c.faces if f.label not in drop])


def puncture_disc(c: DeltaComplex, *face_labels: str) -> DeltaComplex:
    """Cut a small open disc out of the interior of each face.

    The face is replaced by a collar of six triangles around an inner triangle
    that is left out, so the result is a surface whenever ``c`` is, with one
    new boundary circle per punctured face and the same orientability.
    """
    for lab in face_labels:
        if not c.has_face(lab):
            raise DomainError(f"no face {lab!r} to puncture")
    drop = set(face_labels)
    vertices, edges, faces = list(c.vertices), list(c.edges), []
    for f in c.faces:
        if f.label not in drop:
            faces.append(f)
            continue
        corner = c.corners(f.label)
        inner = [f"{f.label}.{k}" for k in range(3)]
        vertices += inner
        for k in range(3):
            edges += [Edge(f"{f.label}.i{k}", inner[k], inner[(k + 1) % 3]),
                      Edge(f"{f.label}.s{k}", corner[k], inner[k]),
                      Edge(f"{f.label}.d{k}", corner[k], inner[(k + 1) % 3])]
        for k in range(3):
            nxt = (k + 1) % 3
            faces.append(Face(f"{f.label}.c{k}a", (f.sides[k], (f"{f.label}.s{nxt}", 1), (f"{f.label}.d{k}", -1))))
            faces.append(Face(f"{f.label}.c{k}b", ((f"{f.label}.d{k}", 1), (f"{f.label}.i{k}", -1),
                                                    (f"{f.label}.s{k}", -1))))
    return DeltaComplex(vertices, edges, faces)


def relabel(c: DeltaComplex, vertices: Mapping[str, str] | None = None,
            edges: Mapping[str, str] | None = None, faces: Mapping[str, str] | None = None) -> DeltaComplex:
    vm = vertices or {}
    em = edges or {}
    fm = faces or {}
    return DeltaComplex(
        [vm.get(v, v) for v in c.vertices],
        [Edge(em.get(e.label, e.label), vm.get(e.tail, e.tail), vm.get(e.head, e.head)) for e in c.edges],
        [Face(fm.get(f.label, f.label), tuple((em.get(l, l), s) for l, s in f.sides)) for f in c.faces],
    )


# -- classification -----------------------------------------------------------


class SurfaceTag(enum.Enum):
    SPHERE = "Sphere"
    DISK = "Disk"
    ANNULUS = "Annulus"
    MOBIUS_STRIP = "MobiusStrip"
    KLEIN_BOTTLE = "KleinBottle"
    PROJECTIVE_PLANE = "ProjectivePlane"
    TORUS = "Torus"
    OTHER = "Other"

    def __str__(self) -> str:
        return self.value


_TAGS = {
    (True, 2, 0): SurfaceTag.SPHERE,
    (True, 1, 1): SurfaceTag.DISK,
    (True, 0, 2): SurfaceTag.ANNULUS,
    (True, 0, 0): SurfaceTag.TORUS,
    (False, 0, 1): SurfaceTag.MOBIUS_STRIP,
    (False, 0, 0): SurfaceTag.KLEIN_BOTTLE,
    (False, 1, 0): SurfaceTag.PROJECTIVE_PLANE,
}


@dataclass(frozen=True)
class SurfaceType:
    tag: SurfaceTag
    connected: bool
    euler: int
    orientable: bool
    boundary_circles: int

    def __str__(self) -> str:
        return str(self.tag)

    def to_json(self) -> dict:
        return {"tag": str(self.tag), "connected": self.connected, "euler": self.euler,
                "orientable": self.orientable, "boundary_circles": self.boundary_circles}


def classify(c: DeltaComplex) -> SurfaceType:
    report = is_surface(c)
    if not report:
        raise NonSurfaceError("not a surface", {"defects": report.defects})
    if not c.faces or not is_connected(c):
        raise PreconditionError("classification needs a connected surface; split with "
                                "connected_components first")
    record = (is_orientable(c), euler_characteristic(c), len(boundary_components(c)))
    return SurfaceType(_TAGS.get(record, SurfaceTag.OTHER), True, record[1], record[0], record[2])


# -- serialisation ------------------------------------------------------------


def to_json(c: DeltaComplex, **annex) -> dict:
    out = {
        "vertices": list(c.vertices),
        "edges": [[e.tail, e.head, e.label] for e in c.edges],
        "faces": [[f"{lab}{'+' if s == 1 else '-'}" for lab, s in f.sides] for f in c.faces],
        "face_labels": [f.label for f in c.faces],
    }
    out.update(annex)
    return out


def from_json(data: Mapping) -> DeltaComplex:
    try:
        faces = []
        labels = data.get("face_labels") or [f"f{i}" for i in range(len(data["faces"]))]
        for lab, sides in zip(labels, data["faces"]):
            faces.append(Face(lab, tuple((s[:-1], 1 if s[-1] == "+" else -1) for s in sides)))
        return DeltaComplex(data["vertices"], [Edge(str(l), str(t), str(h)) for t, h, l in data["edges"]], faces)
    except (KeyError, TypeError, ValueError, IndexError) as exc:
        if isinstance(exc, ConstructionError):
            raise
        raise DomainError(f"malformed complex JSON: {exc}") from None


def dumps(c: DeltaComplex, **annex) -> str:
    return json.dumps(to_json(c, **annex), indent=2)


def to_off(c: DeltaComplex) -> str:
    """OFF text with vertices on a deterministic helix; only the incidences are meaningful."""
    n = max(len(c.vertices), 1)
    index = {v: i for i, v in enumerate(c.vertices)}
    lines = ["OFF", f"{len(c.vertices)} {len(c.faces)} {len(c.edges)}"]
    for i in range(len(c.vertices)):
        t = 2 * math.pi * i / n
        lines.append(f"{math.cos(t):.6f} {math.sin(t):.6f} {i / n:.6f}")
    for f in c.faces:
        lines.append("3 " + " ".join(str(index[v]) for v in c.corners(f.label)))
    return "\n".join(lines) + "\n"


def to_dot(c: DeltaComplex, name: str = "faces") -> str:
    """Face-adjacency graph: one node per face, one edge per shared edge."""
    lines = [f"graph {json.dumps(name)} {{"]
    for f in c.faces:
        lines.append(f"  {json.dumps(f.label)};")
    for e, sides in c.incidences().items():
        for i in range(len(sides)):
            for j in range(i + 1, len(sides)):
                lines.append(f"  {json.dumps(sides[i][0])} -- {json.dumps(sides[j][0])} [label={json.dumps(e)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
