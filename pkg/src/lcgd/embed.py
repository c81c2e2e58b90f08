"""Brute-force genus distributions by rotation-system enumeration.

Edge ``edges[p]`` contributes dart ``2p`` at its first endpoint and dart
``2p + 1`` at its second, so ``twin(d) = d ^ 1``.  A rotation at a vertex is
a cyclic order of its darts; faces are the orbits of

    succ(d) = next_rotation(twin(d))

i.e. cross the edge, then turn to the next dart around the far endpoint.

Enumeration order is canonical: vertices in declaration order form the
digits of a mixed-radix counter (first vertex most significant); at each
vertex the least dart is the anchor and the remaining darts run through
``itertools.permutations`` of their sorted order.  Reflections are not
identified, so a graph has exactly ``prod (deg(v) - 1)!`` rotation systems.

The batch enumerator traces faces for whole blocks of rotation systems at
once with numpy (orbit labels by pointer doubling).  Blocks of the index
space are independent, so ``jobs > 1`` farms contiguous blocks to worker
processes and adds the per-block histograms.
"""

from __future__ import annotations

import math
import os
import re
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import permutations

import numpy as np

from .chains import SingleRootPGD
from .seqcore import Seq, has_no_internal_zeros

DEFAULT_CAP = 10**7
BLOCK = 1 << 14


class GraphError(ValueError):
    pass


class CapExceeded(RuntimeError):
    def __init__(self, count: int, cap: int):
        super().__init__(
            f"{count} rotation systems exceed the enumeration cap {cap}; "
            f"raise the cap (--cap or LCGD_CAP) to run it"
        )
        self.count = count
        self.cap = cap


def default_cap() -> int:
    env = os.environ.get("LCGD_CAP")
    return int(env) if env else DEFAULT_CAP


# ---------------------------------------------------------------------------
# Graphs
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Graph:
    """Connected multigraph; loops and parallel edges allowed.

    ``edges`` holds ``(edge_id, u, v)`` triples.  Root markers are optional:
    a root vertex must be 2-valent, and both endpoints of a root edge must
    be 2-valent.
    """

    vertices: tuple
    edges: tuple
    root_vertices: tuple = ()
    root_edges: tuple = ()
    name: str = field(default="", compare=False)

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "edges", tuple(tuple(e) for e in self.edges))
        object.__setattr__(self, "root_vertices", tuple(self.root_vertices))
        object.__setattr__(self, "root_edges", tuple(self.root_edges))
        vs = set(self.vertices)
        if len(vs) != len(self.vertices):
            raise GraphError("duplicate vertex id")
        ids = [e[0] for e in self.edges]
        if len(set(ids)) != len(ids):
            raise GraphError("duplicate edge id")
        for eid, u, v in self.edges:
            if u not in vs or v not in vs:
                raise GraphError(f"edge {eid} has an unknown endpoint")
        if not self._connected():
            raise GraphError("graph is not connected")
        for r in self.root_vertices:
            self.check_root_vertex(r)
        for r in self.root_edges:
            self.check_root_edge(r)

    def _connected(self) -> bool:
        if not self.vertices:
            return False
        adj = {v: [] for v in self.vertices}
        for _, u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        seen = {self.vertices[0]}
        stack = [self.vertices[0]]
        while stack:
            for w in adj[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == len(self.vertices)

    @property
    def V(self) -> int:
        return len(self.vertices)

    @property
    def E(self) -> int:
        return len(self.edges)

    def degree(self, v) -> int:
        return sum((u == v) + (w == v) for _, u, w in self.edges)

    def edge(self, eid) -> tuple:
        for e in self.edges:
            if e[0] == eid:
                return e
        raise GraphError(f"unknown edge {eid}")

    def edge_index(self, eid) -> int:
        for p, e in enumerate(self.edges):
            if e[0] == eid:
                return p
        raise GraphError(f"unknown edge {eid}")

    def darts_at(self, v) -> list[int]:
        out = []
        for p, (_, a, b) in enumerate(self.edges):
            if a == v:
                out.append(2 * p)
            if b == v:
                out.append(2 * p + 1)
        return out

    def dart_vertex(self, d: int):
        _, a, b = self.edges[d >> 1]
        return b if d & 1 else a

    def check_root_vertex(self, v) -> None:
        if v not in self.vertices:
            raise GraphError(f"unknown root vertex {v}")
        if self.degree(v) != 2:
            raise GraphError(f"root vertex {v} has valence {self.degree(v)}, not 2")

    def check_root_edge(self, eid) -> None:
        _, a, b = self.edge(eid)
        if a == b or self.degree(a) != 2 or self.degree(b) != 2:
            raise GraphError(f"root edge {eid} needs two distinct 2-valent endpoints")

    def rotation_count(self) -> int:
        return math.prod(math.factorial(max(self.degree(v) - 1, 0)) for v in self.vertices)

    def with_roots(self, vertices=(), edges=()) -> Graph:
        return Graph(self.vertices, self.edges, tuple(vertices), tuple(edges), self.name)

    def to_json(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "edges": [{"id": e, "u": u, "v": v} for e, u, v in self.edges],
            "root_vertices": list(self.root_vertices),
            "root_edges": list(self.root_edges),
            **({"name": self.name} if self.name else {}),
        }

    @classmethod
    def from_json(cls, obj: dict) -> Graph:
        try:
            edges = [(e["id"], e["u"], e["v"]) for e in obj["edges"]]
            return cls(
                obj["vertices"], edges, obj.get("root_vertices", ()), obj.get("root_edges", ()), obj.get("name", "")
            )
        except (KeyError, TypeError) as exc:
            raise GraphError(f"malformed graph object: {exc}") from exc


def _next_id(ids) -> int:
    return max((i for i in ids if isinstance(i, int)), default=-1) + 1


def subdivide(g: Graph, eid) -> tuple[Graph, int]:
    """Insert a 2-valent vertex on edge ``eid``; returns the new vertex id.

    Edge ``eid`` keeps its first endpoint; the second half gets a fresh id.
    """
    _, u, v = g.edge(eid)
    w = _next_id(g.vertices)
    f = _next_id(e[0] for e in g.edges)
    edges = []
    for e in g.edges:
        if e[0] == eid:
            edges += [(eid, u, w), (f, w, v)]
        else:
            edges.append(e)
    roots = tuple(r for r in g.root_edges if r != eid)
    return Graph(g.vertices + (w,), edges, g.root_vertices, roots, g.name), w


def trisect(g: Graph, eid) -> tuple[Graph, int]:
    """Split edge ``eid`` into three segments; returns the middle edge id."""
    h, w1 = subdivide(g, eid)
    second = h.edges[h.edge_index(eid) + 1][0]
    h, _ = subdivide(h, second)
    return h, second


def _relabel(g: Graph, vstart: int, estart: int) -> tuple[Graph, dict, dict]:
    vmap = {v: vstart + i for i, v in enumerate(g.vertices)}
    emap = {e[0]: estart + i for i, e in enumerate(g.edges)}
    h = Graph(
        [vmap[v] for v in g.vertices],
        [(emap[e], vmap[u], vmap[v]) for e, u, v in g.edges],
        [vmap[v] for v in g.root_vertices],
        [emap[e] for e in g.root_edges],
        g.name,
    )
    return h, vmap, emap


def amalgamate_vertices(g: Graph, t, h: Graph, u) -> Graph:
    """Merge root vertex ``t`` of ``g`` with root vertex ``u`` of ``h``.

    Vertices and edges are renumbered ``0..``, ``g`` first.  The result is
    rooted at ``h``'s remaining root vertices.
    """
    g.check_root_vertex(t)
    h.check_root_vertex(u)
    g2, gv, _ = _relabel(g, 0, 0)
    h2, hv, _ = _relabel(h, g.V, g.E)
    merged = gv[t]
    fix = lambda x: merged if x == hv[u] else x
    vertices = g2.vertices + tuple(v for v in h2.vertices if v != hv[u])
    edges = g2.edges + tuple((e, fix(a), fix(b)) for e, a, b in h2.edges)
    roots = [hv[r] for r in h.root_vertices if r != u]
    return Graph(vertices, edges, roots, (), f"{g.name}*{h.name}")


def amalgamate_edges(g: Graph, e, h: Graph, f, flip: bool = False) -> Graph:
    """Merge root edge ``e`` of ``g`` with root edge ``f`` of ``h``.

    Endpoints are identified first-with-first (``flip`` crosses them); the
    merged edge keeps ``e``'s id.  The result is rooted at ``h``'s remaining
    root edges.
    """
    g.check_root_edge(e)
    h.check_root_edge(f)
    g2, gv, ge = _relabel(g, 0, 0)
    h2, hv, he = _relabel(h, g.V, g.E)
    _, a, b = g.edge(e)
    _, c, d = h.edge(f)
    if flip:
        c, d = d, c
    ident = {hv[c]: gv[a], hv[d]: gv[b]}
    fix = lambda x: ident.get(x, x)
    vertices = g2.vertices + tuple(v for v in h2.vertices if v not in ident)
    edges = g2.edges + tuple((i, fix(x), fix(y)) for i, x, y in h2.edges if i != he[f])
    roots = [he[r] for r in h.root_edges if r != f]
    return Graph(vertices, edges, (), roots, f"{g.name}*{h.name}")


# ---------------------------------------------------------------------------
# Named graphs
# ---------------------------------------------------------------------------


def _simple(name, n, pairs) -> Graph:
    return Graph(range(n), [(i, u, v) for i, (u, v) in enumerate(pairs)], name=name)


def complete(n: int) -> Graph:
    return _simple(f"K{n}", n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def wheel(n: int) -> Graph:
    """Hub 0 and rim 1..n; rim edges get ids 0..n-1, spokes n..2n-1."""
    rim = [(i, i % n + 1) for i in range(1, n + 1)]
    return _simple(f"W{n}", n + 1, rim + [(0, i) for i in range(1, n + 1)])


def mobius_ladder(rungs: int) -> Graph:
    """Cycle on ``2*rungs`` vertices plus the long diagonals (i, i + rungs)."""
    m = 2 * rungs
    return _simple(f"ML{rungs}", m, [(i, (i + 1) % m) for i in range(m)] + [(i, i + rungs) for i in range(rungs)])


def circulant(n: int, jumps=(1, 2)) -> Graph:
    name = f"circ({n}:{','.join(map(str, jumps))})"
    return _simple(name, n, [(i, (i + j) % n) for j in jumps for i in range(n)])


def cycle(n: int) -> Graph:
    return _simple(f"C{n}", n, [(i, (i + 1) % n) for i in range(n)])


def bouquet(n: int) -> Graph:
    return Graph([0], [(i, 0, 0) for i in range(n)], name=f"bouquet({n})")


def dipole(n: int) -> Graph:
    return Graph([0, 1], [(i, 0, 1) for i in range(n)], name=f"dipole({n})")


_NAMED = {
    "K": complete,
    "W": wheel,
    "ML": mobius_ladder,
    "C": cycle,
}


def builtin(name: str) -> Graph:
    """Named graph: K4, W4, ML4, C5, circ(7:1,2), bouquet(3), dipole(3)."""
    s = name.strip().replace(" ", "")
    m = re.fullmatch(r"circ\((\d+):(\d+(?:,\d+)*)\)", s)
    if m:
        return circulant(int(m[1]), tuple(int(j) for j in m[2].split(",")))
    m = re.fullmatch(r"(bouquet|dipole|cycle)\((\d+)\)", s)
    if m:
        return {"bouquet": bouquet, "dipole": dipole, "cycle": cycle}[m[1]](int(m[2]))
    m = re.fullmatch(r"(K|W|ML|C)(\d+)", s)
    if m:
        return _NAMED[m[1]](int(m[2]))
    raise GraphError(f"unknown graph name {name!r}")


def rooted_example(name: str, double: bool = False) -> Graph:
    """The rooted graphs of the four worked amalgamation chains.

    ``W4``/``ML4`` carry vertex roots at edge midpoints, ``K4`` and
    ``circ(7:1,2)`` edge roots at middle segments of trisected edges.  With
    ``double=True`` the doubly rooted amalgamand is returned (roots in the
    order first, second).
    """
    key = name.replace(" ", "")
    if key == "W4":
        g = wheel(4)
        # rim edges 0 and 2 are non-adjacent
        g, u = subdivide(g, 0)
        if not double:
            return g.with_roots([u])
        g, v = subdivide(g, 2)
        return g.with_roots([u, v])
    if key == "ML4":
        g = mobius_ladder(4)
        # roots on rim edges (the rungs give a different split); the second
        # root on the rim edge opposite the first
        g, u = subdivide(g, 0)
        if not double:
            return g.with_roots([u])
        g, v = subdivide(g, 4)
        return g.with_roots([u, v])
    if key == "K4":
        g = complete(4)
        # edges 0 = {0,1} and 5 = {2,3} are non-adjacent
        g, e = trisect(g, 0)
        if not double:
            return g.with_roots(edges=[e])
        g, f = trisect(g, 5)
        return g.with_roots(edges=[e, f])
    if key == "circ(7:1,2)":
        g = circulant(7)
        g, e = trisect(g, 0)
        if not double:
            return g.with_roots(edges=[e])
        g, f = trisect(g, 3)
        return g.with_roots(edges=[e, f])
    raise GraphError(f"no rooted example named {name!r}")


# ---------------------------------------------------------------------------
# Single rotation systems
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RotationSystem:
    """Cyclic dart order at every vertex (``rotation[v]`` is a tuple of darts)."""

    rotation: dict

    def successor_map(self) -> dict[int, int]:
        nxt = {}
        for cyc in self.rotation.values():
            for i, d in enumerate(cyc):
                nxt[d] = cyc[(i + 1) % len(cyc)]
        return nxt


@dataclass(frozen=True)
class FaceTrace:
    faces: tuple[tuple[int, ...], ...]
    V: int
    E: int

    @property
    def F(self) -> int:
        return len(self.faces)

    @property
    def genus(self) -> int:
        return (2 - self.V + self.E - self.F) // 2

    def face_of(self, dart: int) -> int:
        for i, f in enumerate(self.faces):
            if dart in f:
                return i
        raise KeyError(dart)


def check_rotation(g: Graph, rot: RotationSystem) -> None:
    seen = []
    for v in g.vertices:
        cyc = rot.rotation.get(v)
        if cyc is None:
            raise GraphError(f"no rotation at vertex {v}")
        if sorted(cyc) != g.darts_at(v):
            raise GraphError(f"rotation at {v} does not cover exactly its darts")
        seen.extend(cyc)
    if len(seen) != 2 * g.E or set(rot.rotation) != set(g.vertices):
        raise GraphError("malformed rotation system")


def trace_faces(g: Graph, rot: RotationSystem) -> FaceTrace:
    """Face orbits of ``d -> next(twin(d))``, each starting at its least dart."""
    check_rotation(g, rot)
    nxt = rot.successor_map()
    todo = set(range(2 * g.E))
    faces = []
    for start in range(2 * g.E):
        if start not in todo:
            continue
        orbit = []
        d = start
        while d in todo:
            todo.discard(d)
            orbit.append(d)
            d = nxt[d ^ 1]
        faces.append(tuple(orbit))
    if not faces:
        faces = [()]  # a lone vertex bounds one face
    tr = FaceTrace(tuple(faces), g.V, g.E)
    euler = 2 - g.V + g.E - tr.F
    if euler < 0 or euler % 2:
        raise GraphError(f"Euler count {euler} is not a nonnegative even number")
    return tr


def vertex_rotations(g: Graph, v) -> list[tuple[int, ...]]:
    darts = g.darts_at(v)
    if not darts:
        return [()]
    anchor, rest = darts[0], darts[1:]
    return [(anchor,) + p for p in permutations(rest)]


def rotation_system(g: Graph, index: int) -> RotationSystem:
    """The ``index``-th rotation system in canonical enumeration order."""
    choices = [vertex_rotations(g, v) for v in g.vertices]
    rot = {}
    for v, opts in reversed(list(zip(g.vertices, choices))):
        index, digit = divmod(index, len(opts))
        rot[v] = opts[digit]
    if index:
        raise IndexError("rotation index out of range")
    return RotationSystem({v: rot[v] for v in g.vertices})


def iter_rotation_systems(g: Graph):
    for i in range(g.rotation_count()):
        yield rotation_system(g, i)


# ---------------------------------------------------------------------------
# Batch enumeration
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class _Plan:
    ndarts: int
    V: int
    E: int
    total: int
    # per vertex: (stride, radix, dart columns, next-dart table of shape (radix, deg))
    digits: tuple
    root_pairs: tuple


def _plan(g: Graph, root_pairs) -> _Plan:
    digits = []
    stride = 1
    for v in reversed(g.vertices):
        darts = g.darts_at(v)
        opts = vertex_rotations(g, v)
        if len(opts) > 1:
            table = np.empty((len(opts), len(darts)), dtype=np.intp)
            col = {d: i for i, d in enumerate(darts)}
            for r, cyc in enumerate(opts):
                for i, d in enumerate(cyc):
                    table[r, col[d]] = cyc[(i + 1) % len(cyc)]
        else:
            cyc = opts[0]
            table = np.array([[cyc[(cyc.index(d) + 1) % len(cyc)] for d in darts]], dtype=np.intp)
        digits.append((stride, len(opts), np.array(darts, dtype=np.intp), table))
        stride *= len(opts)
    return _Plan(2 * g.E, g.V, g.E, stride, tuple(digits), tuple(root_pairs))


def _census_block(plan: _Plan, lo: int, hi: int) -> np.ndarray:
    """Histogram counts[genus, 1 + 2*root + same] over indices lo..hi-1.

    Column 0 counts every system; for root r, column ``1 + 2r`` counts the
    systems where its two darts lie in different faces, ``2 + 2r`` the same.
    """
    nd = plan.ndarts
    gmax = (2 - plan.V + plan.E) // 2 + 1
    out = np.zeros((gmax, 1 + 2 * len(plan.root_pairs)), dtype=np.int64)
    if nd == 0:
        out[0, 0] = hi - lo
        return out
    twin = np.arange(nd) ^ 1
    arange = np.arange(nd)
    steps = max(1, math.ceil(math.log2(nd)))
    for start in range(lo, hi, BLOCK):
        idx = np.arange(start, min(hi, start + BLOCK), dtype=np.int64)
        nxt = np.empty((len(idx), nd), dtype=np.intp)
        for stride, radix, cols, table in plan.digits:
            nxt[:, cols] = table[(idx // stride) % radix]
        p = nxt[:, twin]
        label = np.broadcast_to(arange, p.shape).copy()
        for _ in range(steps):
            label = np.minimum(label, np.take_along_axis(label, p, axis=1))
            p = np.take_along_axis(p, p, axis=1)
        faces = (label == arange).sum(axis=1)
        genus = (2 - plan.V + plan.E - faces) // 2
        out[:, 0] += np.bincount(genus, minlength=gmax)
        for r, (x, y) in enumerate(plan.root_pairs):
            same = label[:, x] == label[:, y]
            out[:, 1 + 2 * r] += np.bincount(genus[~same], minlength=gmax)
            out[:, 2 + 2 * r] += np.bincount(genus[same], minlength=gmax)
    return out


def _census_job(args):
    return _census_block(*args)


@dataclass(frozen=True)
class Census:
    """Genus distribution plus the d/s split for each requested root."""

    gamma: Seq
    partials: tuple[SingleRootPGD, ...]
    total: int


def census(g: Graph, roots=(), cap: int | None = None, jobs: int = 1, force: bool = False) -> Census:
    """Enumerate every rotation system of ``g`` once.

    ``roots`` is a list of ``("vertex", v)`` / ``("edge", e)`` pairs.  For a
    2-valent vertex the two corners are the orbits leaving along its two
    darts; for an edge root the two sides are the orbits of its two darts.
    """
    cap = default_cap() if cap is None else cap
    total = g.rotation_count()
    if total > cap and not force:
        raise CapExceeded(total, cap)
    pairs = []
    for kind, r in roots:
        if kind == "vertex":
            g.check_root_vertex(r)
            pairs.append(tuple(g.darts_at(r)))
        elif kind == "edge":
            g.check_root_edge(r)
            p = g.edge_index(r)
            pairs.append((2 * p, 2 * p + 1))
        else:
            raise GraphError(f"unknown root kind {kind!r}")
    plan = _plan(g, pairs)
    jobs = max(1, int(jobs))
    if jobs == 1 or total < 2 * BLOCK:
        hist = _census_block(plan, 0, total)
    else:
        nblocks = jobs * 4
        cuts = [total * i // nblocks for i in range(nblocks + 1)]
        with ProcessPoolExecutor(jobs) as ex:
            parts = ex.map(_census_job, [(plan, a, b) for a, b in zip(cuts, cuts[1:]) if b > a])
            hist = sum(parts)
    gamma = Seq(hist[:, 0].tolist())
    if hist[:, 0].sum() != total:
        raise RuntimeError("enumeration lost rotation systems")
    if not has_no_internal_zeros(gamma):
        raise RuntimeError(f"genus distribution {gamma} has internal zeros")
    parts = tuple(
        SingleRootPGD(Seq(hist[:, 1 + 2 * r].tolist()), Seq(hist[:, 2 + 2 * r].tolist()))
        for r in range(len(pairs))
    )
    return Census(gamma, parts, total)


def genus_distribution(g: Graph, cap: int | None = None, jobs: int = 1, force: bool = False) -> Seq:
    return census(g, cap=cap, jobs=jobs, force=force).gamma


def partials_vertex_root(g: Graph, v, cap: int | None = None, jobs: int = 1) -> SingleRootPGD:
    return census(g, [("vertex", v)], cap=cap, jobs=jobs).partials[0]


def partials_edge_root(g: Graph, e, cap: int | None = None, jobs: int = 1) -> SingleRootPGD:
    return census(g, [("edge", e)], cap=cap, jobs=jobs).partials[0]


def partials(g: Graph, cap: int | None = None, jobs: int = 1) -> SingleRootPGD:
    """Partials for the graph's single root marker."""
    roots = [("vertex", v) for v in g.root_vertices] + [("edge", e) for e in g.root_edges]
    if len(roots) != 1:
        raise GraphError(f"expected exactly one root marker, found {len(roots)}")
    return census(g, roots, cap=cap, jobs=jobs).partials[0]
