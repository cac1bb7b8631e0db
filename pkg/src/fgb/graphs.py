"""(n,k)-graphs and ⟨k over n⟩-graphs, forest collapses, and enumeration of their quotient complexes.

A graph is stored as a vertex count, a basepoint, an edge list of endpoint
pairs (loops allowed, multi-edges allowed), and ``k`` oriented embedded cycles.
Each cycle is ``(base, steps)`` where ``steps`` lists ``(edge_id, forward)``;
walking the steps from ``base`` returns to ``base``.  For the ``kn`` variant
the cycle base carries no meaning and canonical forms ignore it.
"""
from __future__ import annotations

import itertools
import json
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

from .errors import BudgetExceeded, InadmissibleEdge

__all__ = [
    "MultiGraph", "NkGraph", "ForestChain", "DualGraph", "validate", "dual_cycle_graph",
    "collapse_edge", "collapse_forest", "admissible_forests", "is_admissible_forest",
    "max_forest_avoiding", "blowups", "canonical", "enumerate_graphs", "quotient_dimension",
    "expected_dimension", "census", "rose", "to_text", "from_text", "Enumeration",
    "VERTEX_BUDGET",
]

VARIANTS = ("nk", "kn")
VERTEX_BUDGET = 8      # census vertex bound 2n+2k+c-1 allowed without an override

Step = tuple[int, bool]
Cycle = tuple[int, tuple[Step, ...]]


@dataclass(frozen=True)
class MultiGraph:
    nv: int
    edges: tuple[tuple[int, int], ...]
    basepoint: int = 0

    def degree(self) -> list[int]:
        deg = [0] * self.nv
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg

    def betti(self) -> int:
        return len(self.edges) - self.nv + _components(self.nv, self.edges)


@dataclass(frozen=True)
class NkGraph:
    n: int
    k: int
    nv: int
    basepoint: int
    edges: tuple[tuple[int, int], ...]
    cycles: tuple[Cycle, ...]
    variant: str = "nk"

    @property
    def graph(self) -> MultiGraph:
        return MultiGraph(self.nv, self.edges, self.basepoint)

    @property
    def ne(self) -> int:
        return len(self.edges)

    def cycle_edges(self) -> dict[int, int]:
        """edge id -> cycle index (0-based)."""
        return {eid: j for j, (_, steps) in enumerate(self.cycles) for eid, _ in steps}

    def cycle_vertices(self, j: int) -> list[int] | None:
        base, steps = self.cycles[j]
        cur, out = base, []
        for eid, fwd in steps:
            u, v = self.edges[eid]
            a, b = (u, v) if fwd else (v, u)
            if a != cur:
                return None
            out.append(cur)
            cur = b
        return out if cur == base and steps else None

    def hat_components(self) -> list[int]:
        """Component label of each vertex in the union of the cycles (Γ̂ vertices)."""
        uf = list(range(self.nv))
        for _, steps in self.cycles:
            for eid, _ in steps:
                u, v = self.edges[eid]
                _union(uf, u, v)
        return [_find(uf, x) for x in range(self.nv)]

    def cycle_components(self) -> int:
        """Number of connected components of the union of the cycles."""
        comp = self.hat_components()
        on = {v for j in range(self.k) for v in (self.cycle_vertices(j) or [])}
        return len({comp[v] for v in on})

    def __str__(self):
        return to_text(self)


def _find(uf, x):
    while uf[x] != x:
        uf[x] = uf[uf[x]]
        x = uf[x]
    return x


def _union(uf, a, b) -> bool:
    ra, rb = _find(uf, a), _find(uf, b)
    if ra == rb:
        return False
    uf[max(ra, rb)] = min(ra, rb)
    return True


def _components(nv: int, edges) -> int:
    uf = list(range(nv))
    c = nv
    for u, v in edges:
        if _union(uf, u, v):
            c -= 1
    return c


def rose(n: int, k: int, variant: str = "nk") -> NkGraph:
    """The reduced graph: one vertex, n plain petals and k cycle petals."""
    edges = ((0, 0),) * (n + k)
    cycles = tuple((0, ((n + j, True),)) for j in range(k))
    return NkGraph(n, k, 1, 0, edges, cycles, variant)


# -- validation -----------------------------------------------------------------------

@dataclass(frozen=True)
class DualGraph:
    """Bipartite incidence graph: ``("c", j)`` cycle nodes and ``("p", v)`` shared points."""

    nodes: tuple
    edges: tuple
    is_forest: bool


def dual_cycle_graph(g: NkGraph) -> DualGraph:
    verts = [set(g.cycle_vertices(j) or ()) for j in range(g.k)]
    count: dict[int, int] = {}
    for vs in verts:
        for v in vs:
            count[v] = count.get(v, 0) + 1
    shared = sorted(v for v, c in count.items() if c >= 2)
    nodes = tuple(("c", j + 1) for j in range(g.k)) + tuple(("p", v) for v in shared)
    index = {nd: i for i, nd in enumerate(nodes)}
    edges = tuple((("c", j + 1), ("p", v)) for j in range(g.k) for v in shared if v in verts[j])
    comps = _components(len(nodes), [(index[a], index[b]) for a, b in edges])
    return DualGraph(nodes, edges, len(edges) == len(nodes) - comps)


def validate(g: NkGraph) -> list[str]:
    """Violated conditions; empty iff ``g`` is a valid graph of its variant."""
    out: list[str] = []
    if g.variant not in VARIANTS:
        return [f"unknown variant {g.variant!r}"]
    if not 0 <= g.basepoint < g.nv:
        return ["basepoint out of range"]
    for u, v in g.edges:
        if not (0 <= u < g.nv and 0 <= v < g.nv):
            return ["edge endpoint out of range"]
    if len(g.cycles) != g.k:
        out.append(f"expected {g.k} cycles, found {len(g.cycles)}")
    if _components(g.nv, g.edges) != 1:
        out.append("not connected")
        return out
    if g.ne - g.nv + 1 != g.n + g.k:
        out.append(f"genus {g.ne - g.nv + 1} != n + k = {g.n + g.k}")
    for eid, (u, v) in enumerate(g.edges):
        if u != v and _components(g.nv, g.edges[:eid] + g.edges[eid + 1:]) != 1:
            out.append(f"separating edge {eid}")
    walks = []
    for j in range(len(g.cycles)):
        w = g.cycle_vertices(j)
        if w is None:
            out.append(f"cycle {j + 1} is not a closed walk from its base")
            walks.append(None)
            continue
        eids = [e for e, _ in g.cycles[j][1]]
        if len(set(w)) != len(w) or len(set(eids)) != len(eids):
            out.append(f"cycle {j + 1} is not embedded")
        walks.append(w)
    bases = {c[0] for c in g.cycles}
    deg = g.graph.degree()
    for v, d in enumerate(deg):
        if g.variant == "nk":
            if d < 2 or (d == 2 and v != g.basepoint and v not in bases):
                out.append(f"vertex {v} has valence {d}")
        elif d < (2 if v == g.basepoint else 3):
            out.append(f"vertex {v} has valence {d}")
    if any(w is None for w in walks):
        return out
    for a, b in itertools.combinations(range(len(walks)), 2):
        ea = {e for e, _ in g.cycles[a][1]}
        eb = {e for e, _ in g.cycles[b][1]}
        if ea & eb:
            out.append(f"cycles {a + 1} and {b + 1} share an edge")
        if len(set(walks[a]) & set(walks[b])) > 1:
            out.append(f"cycles {a + 1} and {b + 1} do not meet in at most a point")
    if not dual_cycle_graph(g).is_forest:
        out.append("dual graph of the cycles is not a forest")
    return out


# -- collapses ------------------------------------------------------------------------

def _edge_problem(g: NkGraph, eid: int, comp: list[int], cyc: dict[int, int]) -> str | None:
    u, v = g.edges[eid]
    if u == v:
        return "loop in Γ"
    if eid not in cyc and comp[u] == comp[v]:
        return "loop in Γ̂"
    return None


def collapse_forest(g: NkGraph, forest: Iterable[int]) -> NkGraph:
    """Collapse every edge of ``forest`` at once (no admissibility check)."""
    F = set(forest)
    uf = list(range(g.nv))
    for eid in F:
        _union(uf, *g.edges[eid])
    new_id: dict[int, int] = {}
    m = []
    for x in range(g.nv):
        r = _find(uf, x)
        if r not in new_id:
            new_id[r] = len(new_id)
        m.append(new_id[r])
    emap, edges = {}, []
    for eid, (u, v) in enumerate(g.edges):
        if eid not in F:
            emap[eid] = len(edges)
            edges.append((m[u], m[v]))
    cycles = tuple((m[b], tuple((emap[e], f) for e, f in steps if e not in F))
                   for b, steps in g.cycles)
    return NkGraph(g.n, g.k, len(new_id), m[g.basepoint], tuple(edges), cycles, g.variant)


def collapse_edge(g: NkGraph, eid: int) -> NkGraph:
    problem = _edge_problem(g, eid, g.hat_components(), g.cycle_edges())
    if problem:
        raise InadmissibleEdge(f"edge {eid} is a {problem}")
    return collapse_forest(g, [eid])


def is_admissible_forest(g: NkGraph, forest: Iterable[int]) -> bool:
    """Acyclic in Γ, and its non-cycle edges acyclic in Γ̂."""
    F = list(forest)
    uf = list(range(g.nv))
    for eid in F:
        if not _union(uf, *g.edges[eid]):
            return False
    comp = g.hat_components()
    cyc = g.cycle_edges()
    uf2 = {c: c for c in set(comp)}

    def find2(x):
        while uf2[x] != x:
            x = uf2[x]
        return x
    for eid in F:
        if eid in cyc:
            continue
        a, b = find2(comp[g.edges[eid][0]]), find2(comp[g.edges[eid][1]])
        if a == b:
            return False
        uf2[max(a, b)] = min(a, b)
    return True


def admissible_forests(g: NkGraph, max_size: int | None = None) -> list[tuple[int, ...]]:
    """All nonempty admissible forests, by increasing size then lexicographically."""
    top = g.nv - 1 if max_size is None else min(max_size, g.nv - 1)
    out = []
    for r in range(1, top + 1):
        for F in itertools.combinations(range(g.ne), r):
            if is_admissible_forest(g, F):
                out.append(F)
    return out


def max_forest_avoiding(g: NkGraph, eid: int | None = None) -> tuple[int, ...]:
    """A forest avoiding ``eid`` whose collapse is reduced.

    Every cycle keeps exactly one edge (``eid`` itself when it lies on that
    cycle); the remaining choice is a spanning forest of Γ̂ without ``eid``.
    """
    cyc = g.cycle_edges()
    F: list[int] = []
    for j, (_, steps) in enumerate(g.cycles):
        eids = [e for e, _ in steps]
        keep = eid if eid in eids else eids[0]
        F += [e for e in eids if e != keep]
    comp = g.hat_components()
    uf = {c: c for c in set(comp)}

    def find(x):
        while uf[x] != x:
            x = uf[x]
        return x
    for e, (u, v) in enumerate(g.edges):
        if e == eid or e in cyc:
            continue
        a, b = find(comp[u]), find(comp[v])
        if a != b:
            uf[max(a, b)] = min(a, b)
            F.append(e)
    F.sort()
    assert is_admissible_forest(g, F), "constructed forest is not admissible"
    return tuple(F)


@dataclass(frozen=True)
class ForestChain:
    host: NkGraph
    chain: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        sets = [frozenset(F) for F in self.chain]
        if not sets or not sets[0]:
            raise ValueError("a chain starts with a nonempty forest")
        for a, b in zip(sets, sets[1:]):
            if not a < b:
                raise ValueError("forests must be strictly nested")
        for F in self.chain:
            if not is_admissible_forest(self.host, F):
                raise InadmissibleEdge(f"{F} is not an admissible forest")

    @property
    def dimension(self) -> int:
        return len(self.chain)


# -- blow-ups -------------------------------------------------------------------------

def blowups(g: NkGraph) -> list[NkGraph]:
    """All graphs ``h`` with an admissible new edge ``e`` such that ``h/e == g``."""
    out = []
    E = g.ne
    for x in range(g.nv):
        darts = [(eid, end) for eid, uv in enumerate(g.edges) for end in (0, 1) if uv[end] == x]
        if len(darts) < 2:
            continue
        rest = darts[1:]
        for mask in range(1, 1 << len(rest)):
            T = {rest[i] for i in range(len(rest)) if mask >> i & 1}
            y = g.nv
            edges = [list(uv) for uv in g.edges]
            for eid, end in T:
                edges[eid][end] = y
            edges.append([x, y])
            options = _reroute_cycles(g, x, y, T, E)
            if options is None:
                continue
            stars = [x, y] if g.basepoint == x else [g.basepoint]
            et = tuple(tuple(e) for e in edges)
            for cyc_choice in options:
                for star in stars:
                    out.append(NkGraph(g.n, g.k, g.nv + 1, star, et, cyc_choice, g.variant))
    return out


def _reroute_cycles(g: NkGraph, x: int, y: int, T: set, new_eid: int):
    per_cycle: list[list[Cycle]] = []
    split = 0
    for j, (base, steps) in enumerate(g.cycles):
        walk = g.cycle_vertices(j)
        if x not in walk:
            per_cycle.append([(base, steps)])
            continue
        i = walk.index(x)
        eo, fo = steps[i]
        ei, fi = steps[i - 1]
        t_out = (eo, 0 if fo else 1) in T
        t_in = (ei, 1 if fi else 0) in T
        side = lambda t: y if t else x
        if t_out == t_in:
            per_cycle.append([(side(t_out) if base == x else base, steps)])
            continue
        split += 1
        new = (new_eid, not t_in)
        if base == x:
            opts = [(side(t_in), (new,) + steps), (side(t_out), steps + (new,))]
            if g.variant == "kn":
                opts = opts[:1]
        else:
            opts = [(base, steps[:i] + (new,) + steps[i:])]
        per_cycle.append(opts)
    if split > 1:
        return None
    return [tuple(c) for c in itertools.product(*per_cycle)]


# -- canonical forms ------------------------------------------------------------------

def _refine(g: NkGraph, labeled: bool) -> list[int]:
    deg = g.graph.degree()
    loops = [0] * g.nv
    adj: list[list[int]] = [[] for _ in range(g.nv)]
    for u, v in g.edges:
        if u == v:
            loops[u] += 1
        else:
            adj[u].append(v)
            adj[v].append(u)
    info: list[list] = [[] for _ in range(g.nv)]
    for j in range(g.k):
        base = g.cycles[j][0]
        for v in g.cycle_vertices(j):
            tag = (v == base) if g.variant == "nk" else False
            info[v].append((j, tag) if labeled else (0, tag))
    colour = [(v == g.basepoint, deg[v], loops[v], tuple(sorted(info[v]))) for v in range(g.nv)]
    colour = _compress(colour)
    while True:
        nxt = _compress([(colour[v], tuple(sorted(colour[w] for w in adj[v]))) for v in range(g.nv)])
        if len(set(nxt)) == len(set(colour)):
            return nxt
        colour = nxt


def _compress(cols):
    rank = {c: i for i, c in enumerate(sorted(set(cols)))}
    return [rank[c] for c in cols]


def _cert(g: NkGraph, pos: Sequence[int], walks, labeled: bool):
    edges = tuple(sorted((min(pos[u], pos[v]), max(pos[u], pos[v])) for u, v in g.edges))
    cyc = []
    for w in walks:
        seq = tuple(pos[v] for v in w)
        if g.variant == "kn":
            seq = min(seq[r:] + seq[:r] for r in range(len(seq)))
        cyc.append(seq)
    cyc = tuple(cyc) if labeled else tuple(sorted(cyc))
    return (g.nv, pos[g.basepoint], edges, cyc)


def canonical(g: NkGraph, up_to: str = "labeled") -> tuple[tuple, NkGraph]:
    """Minimal certificate over colour-respecting vertex orderings, and the graph it encodes.

    ``up_to="sigma"`` also identifies graphs that differ by relabeling the cycles.
    """
    labeled = up_to == "labeled"
    if up_to not in ("labeled", "sigma"):
        raise ValueError(f"up_to must be 'labeled' or 'sigma', got {up_to!r}")
    colour = _refine(g, labeled)
    classes: dict[int, list[int]] = {}
    for v, c in enumerate(colour):
        classes.setdefault(c, []).append(v)
    blocks = [classes[c] for c in sorted(classes)]
    walks = [g.cycle_vertices(j) for j in range(g.k)]
    best = None
    offsets = list(itertools.accumulate([0] + [len(b) for b in blocks]))
    for perms in itertools.product(*(itertools.permutations(b) for b in blocks)):
        pos = [0] * g.nv
        for off, p in zip(offsets, perms):
            for i, v in enumerate(p):
                pos[v] = off + i
        c = _cert(g, pos, walks, labeled)
        if best is None or c < best:
            best = c
    return best, _from_cert(g.n, g.k, g.variant, best)


def _from_cert(n: int, k: int, variant: str, cert) -> NkGraph:
    nv, star, edges, cycles = cert
    used: set[int] = set()
    out = []
    for seq in cycles:
        steps = []
        for a, b in zip(seq, seq[1:] + seq[:1]):
            key = (min(a, b), max(a, b))
            eid = next(e for e, uv in enumerate(edges) if uv == key and e not in used)
            used.add(eid)
            steps.append((eid, a <= b if a != b else True))
        # a 2-cycle through parallel edges walks back along the second edge
        out.append((seq[0], tuple(steps)))
    return NkGraph(n, k, nv, star, tuple(edges), tuple(out), variant)


# -- enumeration ----------------------------------------------------------------------

def census_vertex_bound(n: int, k: int, variant: str = "nk") -> int:
    if variant == "nk":
        return 2 * n + 3 * k - 1 if n >= 1 else 2 * k
    return 2 * n + 2 * k - 1 if n >= 1 else k


def expected_dimension(n: int, k: int, variant: str = "nk") -> int:
    if variant == "nk":
        return 2 * n + 3 * k - 2 if n >= 1 else 2 * k - 1
    return 2 * n + 2 * k - 2 if n >= 1 else k - 1


@dataclass
class Enumeration:
    n: int
    k: int
    variant: str
    up_to: str
    graphs: list[NkGraph]
    maximal: list[bool] = field(default_factory=list)

    @property
    def dimension(self) -> int:
        return max(g.nv for g in self.graphs) - 1


def enumerate_graphs(n: int, k: int, variant: str = "nk", up_to: str = "labeled",
                     budget: int = VERTEX_BUDGET, cache_dir: str | os.PathLike | None = None) -> Enumeration:
    """Every graph of the variant up to equivalence, reached by blow-ups from the rose."""
    if variant not in VARIANTS:
        raise ValueError(f"variant must be one of {VARIANTS}")
    if k < 0 or n < 0 or n + k == 0:
        raise ValueError("need n + k >= 1")
    if census_vertex_bound(n, k, variant) > budget:
        raise BudgetExceeded(f"({n},{k},{variant}) needs up to {census_vertex_bound(n, k, variant)} "
                             f"vertices; budget is {budget}")
    if cache_dir is not None:
        hit = _cache_read(cache_dir, n, k, variant, up_to)
        if hit is not None:
            return hit
    labeled = _bfs(n, k, variant)
    if up_to == "sigma":
        merged: dict[tuple, tuple[NkGraph, bool]] = {}
        for cert, (g, mx) in labeled.items():
            c, h = canonical(g, "sigma")
            if c not in merged:
                merged[c] = (h, mx)
        labeled = merged
    keys = sorted(labeled)
    res = Enumeration(n, k, variant, up_to, [labeled[c][0] for c in keys], [labeled[c][1] for c in keys])
    if cache_dir is not None:
        _cache_write(cache_dir, res)
    return res


def _bfs(n: int, k: int, variant: str) -> dict[tuple, tuple[NkGraph, bool]]:
    c0, g0 = canonical(rose(n, k, variant))
    seen: dict[tuple, NkGraph] = {c0: g0}
    has_child: set[tuple] = set()
    frontier = [c0]
    while frontier:
        nxt = []
        for c in frontier:
            g = seen[c]
            for h in blowups(g):
                if validate(h):
                    continue
                has_child.add(c)
                ch, hc = canonical(h)
                if ch not in seen:
                    seen[ch] = hc
                    nxt.append(ch)
        frontier = sorted(nxt)
    return {c: (g, c not in has_child) for c, g in seen.items()}


def quotient_dimension(n: int, k: int, variant: str = "nk", **kw) -> int:
    """Largest admissible forest over all graphs; each graph's largest forest has nv - 1 edges."""
    best = 0
    for g in enumerate_graphs(n, k, variant, **kw).graphs:
        F = max_forest_avoiding(g)
        assert len(F) == g.nv - 1
        best = max(best, len(F))
    return best


def census(n: int, k: int, **kw) -> list[dict]:
    """One row per maximally blown-up (n,k)-graph: its v, e, c and the formula verdict.

    The formulas rest on the valence pattern of the nk variant (valence 2 at the
    basepoint and each cycle base), so only that variant is censused.
    """
    rows = []
    en = enumerate_graphs(n, k, "nk", **kw)
    for g, mx in zip(en.graphs, en.maximal):
        if not mx:
            continue
        c = g.cycle_components()
        v, e = g.nv, g.ne
        rows.append({"v": v, "e": e, "c": c,
                     "v_formula": 2 * n + 2 * k + c - 1,
                     "e_formula": (3 * v - c - 1) / 2,
                     "ok": v == 2 * n + 2 * k + c - 1 and 2 * e == 3 * v - c - 1})
    return rows


# -- text exchange and caching --------------------------------------------------------

def to_text(g: NkGraph) -> str:
    lines = [f"{g.variant}-graph {g.n} {g.k}", f"vertices {g.nv}", f"basepoint {g.basepoint}"]
    lines += [f"edge {i} {u} {v}" for i, (u, v) in enumerate(g.edges)]
    for j, (base, steps) in enumerate(g.cycles, 1):
        lines.append(f"cycle {j} base {base} edges " + " ".join(str(e) for e, _ in steps))
    return "\n".join(lines) + "\n"


def from_text(text: str) -> NkGraph:
    """Parse the exchange format; traversal directions are recovered by walking from the base."""
    lines = [ln.split() for ln in text.strip().splitlines() if ln.strip()]
    head = lines[0]
    if len(head) != 3 or not head[0].endswith("-graph"):
        raise ValueError(f"bad header {' '.join(head)!r}")
    variant = head[0][: -len("-graph")]
    n, k = int(head[1]), int(head[2])
    nv = star = None
    edges: dict[int, tuple[int, int]] = {}
    raw_cycles = []
    for ln in lines[1:]:
        if ln[0] == "vertices":
            nv = int(ln[1])
        elif ln[0] == "basepoint":
            star = int(ln[1])
        elif ln[0] == "edge":
            edges[int(ln[1])] = (int(ln[2]), int(ln[3]))
        elif ln[0] == "cycle":
            if ln[2] != "base" or ln[4] != "edges":
                raise ValueError(f"bad cycle line {' '.join(ln)!r}")
            raw_cycles.append((int(ln[1]), int(ln[3]), [int(x) for x in ln[5:]]))
        else:
            raise ValueError(f"unknown record {ln[0]!r}")
    if nv is None or star is None:
        raise ValueError("missing vertices or basepoint")
    if sorted(edges) != list(range(len(edges))):
        raise ValueError("edge ids must be 0..E-1")
    et = tuple(edges[i] for i in range(len(edges)))
    cycles = []
    for _, base, eids in sorted(raw_cycles):
        cur, steps = base, []
        for e in eids:
            u, v = et[e]
            fwd = u == cur
            if not fwd and v != cur:
                raise ValueError(f"cycle edge {e} does not continue the walk")
            steps.append((e, fwd))
            cur = v if fwd else u
        cycles.append((base, tuple(steps)))
    return NkGraph(n, k, nv, star, et, tuple(cycles), variant)


def _cache_path(cache_dir, n, k, variant, up_to) -> Path:
    return Path(cache_dir) / f"{variant}_{n}_{k}_{up_to}.json"


def _cache_read(cache_dir, n, k, variant, up_to) -> Enumeration | None:
    p = _cache_path(cache_dir, n, k, variant, up_to)
    if not p.exists():
        return None
    data = json.loads(p.read_text())
    if data.get("key") != [n, k, variant, up_to]:
        return None
    return Enumeration(n, k, variant, up_to, [from_text(r) for r in data["graphs"]], data["maximal"])


def _cache_write(cache_dir, en: Enumeration) -> None:
    p = _cache_path(cache_dir, en.n, en.k, en.variant, en.up_to)
    p.parent.mkdir(parents=True, exist_ok=True)
    payload = {"key": [en.n, en.k, en.variant, en.up_to],
               "graphs": [to_text(g) for g in en.graphs], "maximal": en.maximal}
    tmp = p.with_suffix(".tmp")
    tmp.write_text(json.dumps(payload, sort_keys=True, indent=1))
    tmp.replace(p)
