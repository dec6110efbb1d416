"""Floor diagrams: data model, validity rules, canonical form, symmetries.

A floor diagram is a weighted oriented tree. Vertices are either ``Div2``
(divergence 2, all incident edges and legs pointing in) or ``Div4``
(divergence 4). Legs are half-edges attached to one vertex and always point
toward it. Vertex ids are the indices ``0..V-1``.
"""
from __future__ import annotations

import itertools
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from typing import Iterable, Sequence

__all__ = [
    "DIV2",
    "DIV4",
    "Edge",
    "Leg",
    "FloorDiagram",
    "StructureError",
    "CurveClass",
    "Tangency",
    "Automorphism",
    "Poset",
    "validate",
    "is_valid",
    "divergence",
    "canonical_key",
    "vertex_automorphisms",
    "automorphisms",
    "marking_poset",
]

DIV2 = "Div2"
DIV4 = "Div4"
_KIND_DIVERGENCE = {DIV2: 2, DIV4: 4}


class StructureError(ValueError):
    """Malformed diagram data (dangling ids, unknown kinds, bad weights type)."""


@dataclass(frozen=True, order=True)
class Edge:
    src: int
    dst: int
    w: int


@dataclass(frozen=True, order=True)
class Leg:
    v: int
    w: int


@dataclass(frozen=True)
class FloorDiagram:
    kinds: tuple[str, ...]
    edges: tuple[Edge, ...] = ()
    legs: tuple[Leg, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "kinds", tuple(self.kinds))
        object.__setattr__(self, "edges", tuple(Edge(*e) if not isinstance(e, Edge) else e for e in self.edges))
        object.__setattr__(self, "legs", tuple(Leg(*l) if not isinstance(l, Leg) else l for l in self.legs))
        n = len(self.kinds)
        for k in self.kinds:
            if k not in _KIND_DIVERGENCE:
                raise StructureError(f"unknown vertex kind {k!r}")
        for e in self.edges:
            if not (0 <= e.src < n and 0 <= e.dst < n):
                raise StructureError(f"edge {e} refers to a missing vertex")
        for l in self.legs:
            if not 0 <= l.v < n:
                raise StructureError(f"leg {l} refers to a missing vertex")

    @property
    def n_vertices(self) -> int:
        return len(self.kinds)

    @property
    def degree(self) -> int:
        """Half the total leg weight (only meaningful if that total is even)."""
        return sum(l.w for l in self.legs) // 2

    def vertices_of_kind(self, kind: str) -> list[int]:
        return [v for v, k in enumerate(self.kinds) if k == kind]

    def legs_at(self, v: int) -> list[int]:
        """Leg indices attached to ``v``."""
        return [i for i, l in enumerate(self.legs) if l.v == v]

    def leg_weights(self) -> list[int]:
        return sorted(l.w for l in self.legs)

    def relabel(self, perm: Sequence[int]) -> "FloorDiagram":
        """Move vertex ``v`` to ``perm[v]``; legs and edges keep their order."""
        kinds = [None] * len(self.kinds)
        for v, k in enumerate(self.kinds):
            kinds[perm[v]] = k
        return FloorDiagram(
            tuple(kinds),
            tuple(Edge(perm[e.src], perm[e.dst], e.w) for e in self.edges),
            tuple(Leg(perm[l.v], l.w) for l in self.legs),
        )

    # JSON schema: {vertices:[{id,kind}], edges:[{src,dst,w}], legs:[{v,w}]}
    def to_dict(self) -> dict:
        return {
            "vertices": [{"id": v, "kind": k} for v, k in enumerate(self.kinds)],
            "edges": [{"src": e.src, "dst": e.dst, "w": e.w} for e in self.edges],
            "legs": [{"v": l.v, "w": l.w} for l in self.legs],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "FloorDiagram":
        ids = {}
        kinds = []
        for vert in data["vertices"]:
            if vert["id"] in ids:
                raise StructureError(f"duplicate vertex id {vert['id']!r}")
            ids[vert["id"]] = len(kinds)
            kinds.append(vert["kind"])

        def lookup(x):
            try:
                return ids[x]
            except KeyError:
                raise StructureError(f"dangling vertex id {x!r}") from None

        edges = tuple(Edge(lookup(e["src"]), lookup(e["dst"]), int(e["w"])) for e in data.get("edges", ()))
        legs = tuple(Leg(lookup(l["v"]), int(l["w"])) for l in data.get("legs", ()))
        return cls(tuple(kinds), edges, legs)


@dataclass(frozen=True)
class CurveClass:
    """``d*H - sum a_i E_i`` on the plane blown up at ``len(a)`` points."""

    d: int
    a: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "a", tuple(int(x) for x in self.a))
        if self.d < 1:
            raise ValueError("curve classes need d >= 1 (exceptional classes are not handled)")

    @property
    def n(self) -> int:
        return len(self.a)

    @property
    def conic_degree(self) -> int:
        """Intersection with the strict transform of the conic, 2d - sum(a)."""
        return 2 * self.d - sum(self.a)

    @property
    def m_beta(self) -> int:
        """Number of point constraints, 3d - sum(a) - 1."""
        return 3 * self.d - sum(self.a) - 1

    def __str__(self):
        return ",".join(str(x) for x in (self.d, *self.a))


@dataclass(frozen=True)
class Tangency:
    """Contact orders with the conic at fixed (``mu``) and moving (``nu``) points."""

    mu: tuple[int, ...] = ()
    nu: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "mu", tuple(int(x) for x in self.mu))
        object.__setattr__(self, "nu", tuple(int(x) for x in self.nu))
        if any(x <= 0 for x in self.mu + self.nu):
            raise ValueError("tangency orders must be positive")

    @property
    def total(self) -> int:
        return sum(self.mu) + sum(self.nu)

    def n_points(self, beta: CurveClass) -> int:
        """Points in general position: H.beta - 1 + len(nu)."""
        return beta.d - 1 + len(self.nu)


# ---------------------------------------------------------------------------
# validity


def divergence(g: FloorDiagram, v: int) -> int:
    if not 0 <= v < g.n_vertices:
        raise KeyError(f"unknown vertex {v}")
    div = sum(l.w for l in g.legs if l.v == v)
    for e in g.edges:
        if e.dst == v:
            div += e.w
        if e.src == v:
            div -= e.w
    return div


def _undirected_is_tree(g: FloorDiagram) -> tuple[bool, bool]:
    """Return (connected, acyclic) for the underlying multigraph."""
    n = g.n_vertices
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    acyclic = True
    for e in g.edges:
        a, b = find(e.src), find(e.dst)
        if a == b:
            acyclic = False
        else:
            parent[a] = b
    connected = n > 0 and len({find(v) for v in range(n)}) == 1
    return connected, acyclic


def _has_oriented_cycle(g: FloorDiagram) -> bool:
    out = defaultdict(list)
    indeg = [0] * g.n_vertices
    for e in g.edges:
        out[e.src].append(e.dst)
        indeg[e.dst] += 1
    stack = [v for v in range(g.n_vertices) if indeg[v] == 0]
    seen = 0
    while stack:
        v = stack.pop()
        seen += 1
        for w in out[v]:
            indeg[w] -= 1
            if indeg[w] == 0:
                stack.append(w)
    return seen != g.n_vertices


def validate(g: FloorDiagram) -> list[str]:
    """Names of every violated floor-diagram rule; an empty list means valid."""
    violations = []
    if g.n_vertices == 0:
        return ["empty"]
    if any(e.w <= 0 for e in g.edges) or any(l.w <= 0 for l in g.legs):
        violations.append("nonpositive_weight")
    connected, acyclic = _undirected_is_tree(g)
    if not connected:
        violations.append("not_connected")
    if not acyclic or len(g.edges) != g.n_vertices - 1:
        violations.append("not_a_tree")
    if _has_oriented_cycle(g):
        violations.append("oriented_cycle")
    for v, kind in enumerate(g.kinds):
        if divergence(g, v) != _KIND_DIVERGENCE[kind]:
            violations.append(f"divergence_mismatch:{v}")
        if kind == DIV2 and any(e.src == v for e in g.edges):
            violations.append(f"div2_not_sink:{v}")
    for e in g.edges:
        if g.kinds[e.src] == DIV2 and g.kinds[e.dst] == DIV2:
            violations.append("div2_edge")
            break
    total = sum(l.w for l in g.legs)
    if total % 2 or total == 0:
        violations.append("leg_sum_not_2d")
    elif len(g.vertices_of_kind(DIV2)) + 2 * len(g.vertices_of_kind(DIV4)) != total // 2:
        violations.append("floor_count")
    return violations


def is_valid(g: FloorDiagram) -> bool:
    return not validate(g)


# ---------------------------------------------------------------------------
# canonical form and automorphisms


def _adjacency(g: FloorDiagram):
    adj = defaultdict(list)  # v -> [(neighbour, direction, weight)]
    for e in g.edges:
        adj[e.src].append((e.dst, ">", e.w))
        adj[e.dst].append((e.src, "<", e.w))
    return adj


def _rooted_codes(g: FloorDiagram, leg_labels: Sequence[str] | None = None) -> list[str]:
    """Canonical string of the whole tree rooted at each vertex."""
    adj = _adjacency(g)
    legs = defaultdict(list)
    for i, l in enumerate(g.legs):
        legs[l.v].append(f"{l.w}{leg_labels[i]}" if leg_labels else str(l.w))

    def code(v, parent):
        children = sorted(
            f"{d}{w}{code(c, v)}" for c, d, w in adj[v] if c != parent
        )
        leg_str = ",".join(sorted(legs[v]))
        return f"({g.kinds[v][-1]}[{leg_str}]{''.join(children)})"

    return [code(r, None) for r in range(g.n_vertices)]


def canonical_key(g: FloorDiagram, leg_labels: Sequence[str] | None = None) -> bytes:
    """Labeling-independent encoding; equal exactly for isomorphic diagrams.

    ``leg_labels`` (one short string per leg) colours the legs; isomorphisms
    must then preserve colours too.
    """
    if leg_labels is not None and len(leg_labels) != len(g.legs):
        raise ValueError("need one label per leg")
    return min(_rooted_codes(g, leg_labels)).encode("ascii")


def vertex_automorphisms(g: FloorDiagram) -> list[tuple[int, ...]]:
    """Vertex permutations preserving kinds, oriented weighted edges and leg weights."""
    n = g.n_vertices
    codes = _rooted_codes(g)
    adj = _adjacency(g)
    order, parent_of = [0], {0: None}
    for v in order:
        for c, _, _ in adj[v]:
            if c not in parent_of:
                parent_of[c] = v
                order.append(c)
    if len(order) != n:
        raise ValueError("automorphisms need a connected diagram")
    link = {}
    for v in range(n):
        for c, d, w in adj[v]:
            link[(v, c)] = (d, w)

    found = []
    image: dict[int, int] = {}
    used: set[int] = set()

    def extend(i):
        if i == n:
            found.append(tuple(image[v] for v in range(n)))
            return
        u = order[i]
        p = parent_of[u]
        if p is None:
            candidates = range(n)
        else:
            candidates = [c for c, _, _ in adj[image[p]]]
        for t in candidates:
            if t in used or codes[t] != codes[u]:
                continue
            if p is not None and link[(image[p], t)] != link[(p, u)]:
                continue
            image[u] = t
            used.add(t)
            extend(i + 1)
            used.discard(t)
            del image[u]

    extend(0)
    return sorted(found)


@dataclass(frozen=True)
class Automorphism:
    vertices: tuple[int, ...]
    legs: tuple[int, ...]


def automorphisms(g: FloorDiagram) -> list[Automorphism]:
    """Full automorphism group acting on vertices and legs.

    Edges of a tree are determined by their endpoints, so the vertex part
    fixes the edge permutation. Legs of equal weight on one vertex permute
    freely, so the group order is ``|vertex group| * prod(k!)``; only call this
    on diagrams with few interchangeable legs.
    """
    classes = defaultdict(list)
    for i, l in enumerate(g.legs):
        classes[(l.v, l.w)].append(i)
    keys = sorted(classes)
    result = []
    for vperm in vertex_automorphisms(g):
        index_perms = [itertools.permutations(range(len(classes[k]))) for k in keys]
        for choice in itertools.product(*index_perms):
            legs = [0] * len(g.legs)
            for (v, w), sigma in zip(keys, choice):
                source, target = classes[(v, w)], classes[(vperm[v], w)]
                for i, leg in enumerate(source):
                    legs[leg] = target[sigma[i]]
            result.append(Automorphism(vperm, tuple(legs)))
    return result


# ---------------------------------------------------------------------------
# partial order used by markings


@dataclass(frozen=True)
class Poset:
    """Finite strict partial order; ``less`` holds every pair (a, b) with a < b."""

    elements: tuple
    less: frozenset = field(default_factory=frozenset)

    def is_less(self, a, b) -> bool:
        return (a, b) in self.less

    def below(self, b) -> set:
        return {a for a in self.elements if (a, b) in self.less}

    def comparable(self, a, b) -> bool:
        return (a, b) in self.less or (b, a) in self.less


def marking_poset(g: FloorDiagram, nu_legs: Iterable[int] = ()) -> Poset:
    """Order on Div4 vertices, edges and the chosen legs.

    Elements are ``("v", i)``, ``("e", i)`` and ``("l", i)``. A leg sits below
    its vertex; an edge sits above its source and below its target. The order
    is the reachability relation restricted to the domain.
    """
    nu_legs = sorted(set(nu_legs))
    for i in nu_legs:
        if not 0 <= i < len(g.legs):
            raise KeyError(f"unknown leg {i}")
    up = defaultdict(list)
    for i, l in enumerate(g.legs):
        up[("l", i)].append(("v", l.v))
    for i, e in enumerate(g.edges):
        up[("v", e.src)].append(("e", i))
        up[("e", i)].append(("v", e.dst))

    domain = (
        [("v", v) for v in g.vertices_of_kind(DIV4)]
        + [("e", i) for i in range(len(g.edges))]
        + [("l", i) for i in nu_legs]
    )
    dom = set(domain)
    less = set()
    for a in domain:
        stack, seen = list(up[a]), set()
        while stack:
            x = stack.pop()
            if x in seen:
                continue
            seen.add(x)
            if x in dom:
                less.add((a, x))
            stack.extend(up[x])
    return Poset(tuple(domain), frozenset(less))


def leg_weight_counter(g: FloorDiagram) -> Counter:
    return Counter(l.w for l in g.legs)
