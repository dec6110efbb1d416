"""Enumeration of genus-zero floor diagrams and of their markings.

Diagrams are generated from unlabeled tree shapes. Once every vertex has a
kind and a total leg weight, each edge orientation and weight is forced: the
flow through an edge equals the surplus ``sum(legs - divergence)`` of the
component on its source side. So the search runs over tree shapes, kind
assignments and leg totals, then splits each total into leg weights.

Markings are counted up to isomorphism. Legs of equal weight on one vertex
are interchangeable, so leg roles are tracked as per-vertex multisets and
only the (small) group of tree automorphisms is quotiented explicitly.
"""
from __future__ import annotations

import itertools
import json
import logging
import os
from collections import Counter, defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path

import networkx as nx

from .diagram import (
    DIV2,
    DIV4,
    CurveClass,
    Edge,
    FloorDiagram,
    Leg,
    Tangency,
    canonical_key,
    validate,
    vertex_automorphisms,
)
from .qlaurent import ONE, QLaurent, q_int, q_real_int

__all__ = [
    "CACHE_FORMAT",
    "FORMAT_VERSION",
    "DEFAULT_MAX_DEGREE",
    "DiagramTally",
    "Marking",
    "enumerate_diagrams",
    "count_markings",
    "marking_classes",
    "iter_markings",
    "refined_multiplicity",
    "real_multiplicity",
    "tally",
    "check_class_and_tangency",
]

log = logging.getLogger(__name__)

FORMAT_VERSION = 1
CACHE_FORMAT = FORMAT_VERSION
DEFAULT_MAX_DEGREE = 8
CACHE_ENV = "REFLOOR_CACHE"


# ---------------------------------------------------------------------------
# diagrams


def _tree_shapes(n: int) -> list[list[tuple[int, int]]]:
    if n == 1:
        return [[]]
    return [sorted(tuple(sorted(e)) for e in t.edges()) for t in nx.nonisomorphic_trees(n)]


def _partitions(total: int, largest: int | None = None):
    """Partitions of ``total`` as non-increasing tuples."""
    if largest is None:
        largest = total
    if total == 0:
        yield ()
        return
    for first in range(min(total, largest), 0, -1):
        for rest in _partitions(total - first, first):
            yield (first,) + rest


def _compositions(total: int, caps: list[int]):
    """Tuples x with 0 <= x[i] <= caps[i] and sum(x) == total."""
    if not caps:
        if total == 0:
            yield ()
        return
    rest_cap = sum(caps[1:])
    for x in range(max(0, total - rest_cap), min(caps[0], total) + 1):
        for tail in _compositions(total - x, caps[1:]):
            yield (x,) + tail


def _diagrams_for_shape(args) -> dict[bytes, FloorDiagram]:
    d, n_div4, edges = args
    n = n_div4 + (d - 2 * n_div4)
    adj = defaultdict(list)
    for a, b in edges:
        adj[a].append(b)
        adj[b].append(a)

    # for each edge (a, b): the set of vertices on a's side
    sides = []
    for a, b in edges:
        side, stack = {a}, [a]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in side and not (x == a and y == b):
                    side.add(y)
                    stack.append(y)
        sides.append(sorted(side))

    found: dict[bytes, FloorDiagram] = {}
    for div4 in itertools.combinations(range(n), n_div4):
        kinds = tuple(DIV4 if v in div4 else DIV2 for v in range(n))
        # Div2 vertices only touch Div4 vertices, through at most two edges
        if any(kinds[a] == DIV2 and kinds[b] == DIV2 for a, b in edges):
            continue
        if any(kinds[v] == DIV2 and len(adj[v]) > 2 for v in range(n)):
            continue
        div = [4 if k == DIV4 else 2 for k in kinds]
        caps = [2 * d if k == DIV4 else 2 - len(adj[v]) for v, k in enumerate(kinds)]
        for totals in _compositions(2 * d, caps):
            surplus = [totals[v] - div[v] for v in range(n)]
            oriented = []
            for (a, b), side in zip(edges, sides):
                flow = sum(surplus[x] for x in side)
                if flow == 0:
                    break
                oriented.append(Edge(a, b, flow) if flow > 0 else Edge(b, a, -flow))
            else:
                if any(kinds[e.src] == DIV2 for e in oriented):
                    continue
                per_vertex = [list(_partitions(totals[v])) for v in range(n)]
                for split in itertools.product(*per_vertex):
                    legs = tuple(Leg(v, w) for v in range(n) for w in split[v])
                    g = FloorDiagram(kinds, tuple(oriented), legs)
                    if validate(g):
                        continue
                    key = canonical_key(g)
                    if key not in found:
                        found[key] = g
    return found


def _normal_form(g: FloorDiagram) -> FloorDiagram:
    """Deterministic relabeling: BFS from a vertex achieving the minimal rooted code."""
    from .diagram import _rooted_codes  # local import keeps the helper private

    codes = _rooted_codes(g)
    root = min(range(g.n_vertices), key=lambda v: (codes[v], v))
    adj = defaultdict(list)
    for e in g.edges:
        adj[e.src].append(e.dst)
        adj[e.dst].append(e.src)
    order = [root]
    for v in order:
        for c in sorted(adj[v], key=lambda c: (codes[c], c)):
            if c not in order:
                order.append(c)
    perm = [0] * g.n_vertices
    for new, old in enumerate(order):
        perm[old] = new
    h = g.relabel(perm)
    return FloorDiagram(h.kinds, tuple(sorted(h.edges)), tuple(sorted(h.legs)))


def _cache_dir(cache_dir):
    if os.environ.get(CACHE_ENV):
        return Path(os.environ[CACHE_ENV])
    return Path(cache_dir) if cache_dir else None


def _cache_file(root: Path, d: int) -> Path:
    return root / f"diagrams-v{CACHE_FORMAT}-d{d}.json"


def _read_cache(path: Path, d: int):
    try:
        data = json.loads(path.read_text())
    except (OSError, ValueError):
        return None
    if data.get("format") != CACHE_FORMAT or data.get("degree") != d:
        return None
    return [FloorDiagram.from_dict(x) for x in data["diagrams"]]


def _write_cache(path: Path, d: int, diagrams) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    payload = {
        "format": CACHE_FORMAT,
        "degree": d,
        "diagrams": [dict(g.to_dict(), key=canonical_key(g).hex()) for g in diagrams],
    }
    tmp = path.with_suffix(".tmp")
    tmp.write_text(json.dumps(payload, indent=1))
    tmp.replace(path)


@lru_cache(maxsize=None)
def _generate(d: int, workers: int) -> tuple[FloorDiagram, ...]:
    jobs = []
    for n_div4 in range(d // 2 + 1):
        n_vertices = n_div4 + (d - 2 * n_div4)
        for shape in _tree_shapes(n_vertices):
            jobs.append((d, n_div4, shape))
    found: dict[bytes, FloorDiagram] = {}
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_diagrams_for_shape, jobs))
    else:
        parts = [_diagrams_for_shape(j) for j in jobs]
    for part in parts:
        for key, g in part.items():
            found.setdefault(key, g)
    return tuple(_normal_form(found[k]) for k in sorted(found))


def enumerate_diagrams(
    d: int,
    *,
    max_degree: int = DEFAULT_MAX_DEGREE,
    cache_dir: str | os.PathLike | None = None,
    workers: int = 1,
) -> list[FloorDiagram]:
    """All genus-zero floor diagrams of degree ``d`` up to isomorphism.

    The result is sorted by canonical key and does not depend on ``workers``.
    With a cache directory (argument or ``$REFLOOR_CACHE``) the list is read
    from / written to one JSON file per degree.
    """
    if not isinstance(d, int) or not 1 <= d <= max_degree:
        raise ValueError(f"degree must be in 1..{max_degree}, got {d!r}")
    root = _cache_dir(cache_dir)
    if root is not None:
        path = _cache_file(root, d)
        cached = _read_cache(path, d) if path.exists() else None
        if cached is not None:
            return cached
    diagrams = list(_generate(d, max(1, workers)))
    if root is not None:
        _write_cache(path, d, diagrams)
    return diagrams


# ---------------------------------------------------------------------------
# markings


@dataclass(frozen=True)
class Marking:
    """A marking modulo swaps of equal-weight legs on the same vertex.

    ``leg_roles[v]`` is the sorted multiset of roles of the legs at ``v``:
    ``("A", w, j)`` for a leg in A_j, ``("mu", w)`` and ``("nu", w, label)``.
    ``labels`` maps ``("v", i)`` and ``("e", i)`` to their position under the
    increasing bijection; nu legs carry their label inside their role.
    """

    leg_roles: tuple[tuple[tuple, ...], ...]
    labels: tuple[tuple[tuple[str, int], int], ...]


def check_class_and_tangency(beta: CurveClass, t: Tangency) -> None:
    if any(x < 0 for x in beta.a):
        raise ValueError(f"negative multiplicity in class {beta}")
    if beta.conic_degree < 0:
        raise ValueError(f"class {beta} meets the conic negatively ({beta.conic_degree})")
    if t.total != beta.conic_degree:
        raise ValueError(
            f"tangency orders sum to {t.total}, class {beta} needs {beta.conic_degree}"
        )


def _role_assignments(g: FloorDiagram, beta: CurveClass, t: Tangency):
    """Yield per-(vertex, weight) role data: (A labels per vertex, mu counts, nu counts)."""
    caps = Counter((l.v, l.w) for l in g.legs)
    vertices = range(g.n_vertices)

    def assign_a(j, caps, placed):
        if j == beta.n:
            yield placed, caps
            return
        k = beta.a[j]
        free = [v for v in vertices if caps[(v, 1)] > 0]
        for chosen in itertools.combinations(free, k):
            new_caps = caps.copy()
            for v in chosen:
                new_caps[(v, 1)] -= 1
            yield from assign_a(j + 1, new_caps, placed + [(v, j + 1) for v in chosen])

    mu_counts = Counter(t.mu)
    weights = sorted(set(w for _, w in caps) | set(mu_counts))
    for placed, rest in assign_a(0, caps, []):
        a_labels = defaultdict(list)
        for v, j in placed:
            a_labels[v].append(j)
        per_weight = []
        for w in weights:
            slots = [v for v in vertices if rest[(v, w)] > 0]
            per_weight.append(
                [(w, slots, split) for split in _compositions(mu_counts[w], [rest[(v, w)] for v in slots])]
            )
        for choice in itertools.product(*per_weight):
            mu_at, nu_at = {}, {}
            for w, slots, split in choice:
                for v, m in zip(slots, split):
                    if m:
                        mu_at[(v, w)] = m
                    if rest[(v, w)] - m:
                        nu_at[(v, w)] = rest[(v, w)] - m
            yield dict(a_labels), mu_at, nu_at


def _extensions(g: FloorDiagram, nu_at: dict):
    """Increasing bijections, with nu legs on one (vertex, weight) interchangeable.

    Yields ``labels`` dicts mapping ("v", i) / ("e", i) -> int and
    ("nu", v, w) -> sorted tuple of ints.
    """
    items = [("v", v) for v in g.vertices_of_kind(DIV4)] + [("e", i) for i in range(len(g.edges))]
    groups = sorted(nu_at)
    # predecessors in the reachability order, restricted to the domain
    below_vertex: dict[int, set] = defaultdict(set)
    incoming = defaultdict(list)
    for i, e in enumerate(g.edges):
        incoming[e.dst].append(i)

    @lru_cache(maxsize=None)
    def under(v):
        """Domain items strictly below vertex v (vertex excluded)."""
        out = set()
        for (gv, gw) in groups:
            if gv == v:
                out.add(("nu", gv, gw))
        for i in incoming[v]:
            out.add(("e", i))
            src = g.edges[i].src
            if g.kinds[src] == DIV4:
                out.add(("v", src))
            out |= under(src)
        return frozenset(out)

    preds = {}
    for it in items:
        if it[0] == "v":
            preds[it] = under(it[1])
        else:
            src = g.edges[it[1]].src
            preds[it] = under(src) | ({("v", src)} if g.kinds[src] == DIV4 else set())
    remaining = {("nu", v, w): nu_at[(v, w)] for v, w in groups}
    total = len(items) + sum(remaining.values())
    done: set = set()
    labels: dict = {}

    def ready(it):
        for p in preds[it]:
            if p[0] == "nu":
                if remaining[p]:
                    return False
            elif p not in done:
                return False
        return True

    def step(pos):
        if pos > total:
            yield {k: (tuple(v) if isinstance(v, list) else v) for k, v in labels.items()}
            return
        for grp in remaining:
            if remaining[grp]:
                remaining[grp] -= 1
                labels.setdefault(grp, []).append(pos)
                yield from step(pos + 1)
                labels[grp].pop()
                if not labels[grp]:
                    del labels[grp]
                remaining[grp] += 1
        for it in items:
            if it not in done and ready(it):
                done.add(it)
                labels[it] = pos
                yield from step(pos + 1)
                del labels[it]
                done.discard(it)

    yield from step(1)


def iter_markings(g: FloorDiagram, beta: CurveClass, t: Tangency):
    """Every marking of ``g``, modulo interchange of equal legs at a vertex."""
    if Counter(l.w for l in g.legs) != Counter(t.mu) + Counter(t.nu) + Counter({1: sum(beta.a)}):
        return
    for a_labels, mu_at, nu_at in _role_assignments(g, beta, t):
        for lab in _extensions(g, nu_at):
            roles = []
            for v in range(g.n_vertices):
                r = [("A", 1, j) for j in a_labels.get(v, ())]
                for (mv, w), m in mu_at.items():
                    if mv == v:
                        r.extend([("mu", w)] * m)
                for key, ls in lab.items():
                    if key[0] == "nu" and key[1] == v:
                        r.extend(("nu", key[2], x) for x in ls)
                roles.append(tuple(sorted(r)))
            labels = tuple(sorted((k, x) for k, x in lab.items() if k[0] != "nu"))
            yield Marking(tuple(roles), labels)


def _marking_code(g: FloorDiagram, m: Marking, perm):
    """The marking transported by a vertex automorphism, as a comparable tuple."""
    vlabel = {k[1]: x for k, x in m.labels if k[0] == "v"}
    verts = [None] * g.n_vertices
    for v in range(g.n_vertices):
        verts[perm[v]] = (vlabel.get(v, 0), m.leg_roles[v])
    edge_lab = sorted(
        ((perm[g.edges[k[1]].src], perm[g.edges[k[1]].dst]), x) for k, x in m.labels if k[0] == "e"
    )
    return tuple(verts), tuple(edge_lab)


def _coloring_code(g: FloorDiagram, m: Marking, perm):
    verts = [None] * g.n_vertices
    for v in range(g.n_vertices):
        verts[perm[v]] = tuple(sorted(role[:2] for role in m.leg_roles[v]))
    return tuple(verts)


def marking_classes(g: FloorDiagram, beta: CurveClass, t: Tangency) -> Counter:
    """Isomorphism classes of markings, grouped by leg colouring.

    The colouring of a marking forgets the index j of A_j and the labels of
    nu legs, keeping only which legs are mu, nu or exceptional. Returns a
    Counter from the canonical colouring (per-vertex sorted ``(role, weight)``
    tuples, in the diagram's own vertex order) to the number of classes.
    """
    check_class_and_tangency(beta, t)
    if g.degree != beta.d:
        raise ValueError(f"diagram has degree {g.degree}, class has d={beta.d}")
    symmetries = vertex_automorphisms(g)
    identity = tuple(range(g.n_vertices))
    out: Counter = Counter()
    if len(symmetries) == 1:
        for m in iter_markings(g, beta, t):
            out[_coloring_code(g, m, identity)] += 1
        return out
    seen = set()
    for m in iter_markings(g, beta, t):
        code = min(_marking_code(g, m, p) for p in symmetries)
        if code not in seen:
            seen.add(code)
            out[min(_coloring_code(g, m, p) for p in symmetries)] += 1
    return out


def count_markings(g: FloorDiagram, beta: CurveClass, t: Tangency) -> int:
    """Number of isomorphism classes of markings of class ``beta`` and type ``t``."""
    return sum(marking_classes(g, beta, t).values())


_ROLE_LETTER = {"A": "a", "mu": "m", "nu": "n"}


def _leg_colours(g: FloorDiagram, coloring) -> tuple[str, ...]:
    """Spread a per-vertex colouring over the diagram's legs."""
    pools = {v: defaultdict(list) for v in range(g.n_vertices)}
    for v, roles in enumerate(coloring):
        for role, w in roles:
            pools[v][w].append(_ROLE_LETTER[role])
    colours = []
    for l in g.legs:
        colours.append(pools[l.v][l.w].pop(0))
    return tuple(colours)


def refined_multiplicity(g: FloorDiagram, t: Tangency) -> QLaurent:
    """prod(nu) * prod over edges of [w]_q^2."""
    out = ONE
    for e in g.edges:
        out = out * q_int(e.w) ** 2
    nu_prod = 1
    for x in t.nu:
        nu_prod *= x
    return out * nu_prod


def real_multiplicity(g: FloorDiagram, t: Tangency) -> int:
    if any(e.w % 2 == 0 for e in g.edges):
        return 0
    out = 1
    for x in t.nu:
        out *= q_real_int(x)
    return out


@dataclass(frozen=True)
class DiagramTally:
    """One row of a count: a leg-coloured diagram and its contributions.

    ``leg_colours[i]`` is ``"m"``, ``"n"`` or ``"a"`` (mu, nu or exceptional
    leg) for ``diagram.legs[i]``; ``key`` is the canonical key of the
    coloured diagram.
    """

    diagram: FloorDiagram
    leg_colours: tuple[str, ...]
    key: bytes
    marking_count: int
    refined: QLaurent
    complex: int
    real: int

    def to_dict(self) -> dict:
        return {
            "diagram": self.diagram.to_dict(),
            "leg_colours": list(self.leg_colours),
            "canonical_key": self.key.hex(),
            "marking_count": self.marking_count,
            "complex": self.complex,
            "real": self.real,
            "refined": self.refined.to_pairs(),
        }


def _tally_one(args) -> list[DiagramTally]:
    g, beta, t = args
    rows = []
    unit = refined_multiplicity(g, t)
    real_unit = real_multiplicity(g, t)
    for coloring, count in marking_classes(g, beta, t).items():
        colours = _leg_colours(g, coloring)
        refined = unit * count
        rows.append(
            DiagramTally(
                diagram=g,
                leg_colours=colours,
                key=canonical_key(g, colours),
                marking_count=count,
                refined=refined,
                complex=refined.evaluate_at_sign(1),
                real=real_unit * count,
            )
        )
    return rows


def tally(
    beta: CurveClass,
    t: Tangency,
    *,
    workers: int = 1,
    cache_dir: str | os.PathLike | None = None,
) -> list[DiagramTally]:
    """One row per leg-coloured floor diagram admitting markings.

    Rows are ordered by canonical key, independent of ``workers``.
    """
    check_class_and_tangency(beta, t)
    needed = Counter(t.mu) + Counter(t.nu) + Counter({1: sum(beta.a)})
    candidates = [
        g for g in enumerate_diagrams(beta.d, cache_dir=cache_dir, workers=workers)
        if Counter(l.w for l in g.legs) == needed
    ]
    jobs = [(g, beta, t) for g in candidates]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_tally_one, jobs))
    else:
        rows = [_tally_one(j) for j in jobs]
    rows = [r for part in rows for r in part]
    rows.sort(key=lambda r: r.key)
    log.debug("tally %s %s: %d rows", beta, t, len(rows))
    return rows
