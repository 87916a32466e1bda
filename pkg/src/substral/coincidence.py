"""Eventual coincidence, the overlap graph and spectrum verdicts."""

from __future__ import annotations

import time
from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction

from .field import FieldElement, Pisot, PisotVerdict, left_pf_eigenvector, pf_field, pisot_test
from .polynomial import RationalPolynomial, char_poly
from .substitution import (
    Periodicity,
    Substitution,
    abelianization,
    admissible_seed,
    final_letters_eventually_constant,
    initial_letter_injective,
    is_primitive,
    periodicity_heuristic,
)
from .tiling import FixedTiling, Patch, PatchTiling, Tile, TileSet, Tiling


class EndpointHit(ValueError):
    """The probe point is a tile endpoint, where the 0-patch holds two tiles."""


@dataclass(frozen=True)
class AnalysisConfig:
    n_max: int = 24
    samples: int = 64
    cap: int = 10_000
    window: int = 8
    tolerance: Fraction = Fraction(1, 10**9)
    periodicity_window: int = 64

    def __post_init__(self):
        for name in ("n_max", "samples", "cap", "window", "periodicity_window"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")
        if self.tolerance <= 0:
            raise ValueError("tolerance must be positive")


# -- pointwise coincidence ------------------------------------------------------


def _covering(tiling: Tiling, t: FieldElement) -> list[Tile]:
    tiles = list(tiling.tiles_between(t, t))
    if not tiles:
        raise ValueError("point lies outside the patch")
    for tile in tiles:
        if tile.left == t or tile.right == t:
            raise EndpointHit("point is a tile endpoint")
    return tiles


def coincidence_trace(tiling, other, t, n_max: int, tileset: TileSet | None = None):
    """Follow the tiles over ``t`` through up to ``n_max`` inflations.

    Returns ``(n, tiles)`` for the first n at which both inflated tilings
    carry the same tiles at lambda^n t, or ``(None, None)``. Only the tiles
    over the tracked point are ever inflated.
    """
    ts = tileset or tiling.tileset
    t = ts.to_field(t)
    a = _covering(tiling, t)
    b = _covering(other, t)
    point = t
    for n in range(n_max + 1):
        if {x.key() for x in a} == {x.key() for x in b}:
            return n, a
        if n == n_max:
            break
        point = ts.inflation * point
        a = [s for x in a for s in ts.inflate_tile(x) if s.left <= point <= s.right]
        b = [s for x in b for s in ts.inflate_tile(x) if s.left <= point <= s.right]
    return None, None


def eventually_coincident_at(tiling, other, t, n_max: int = 24, tileset: TileSet | None = None):
    """Least n <= n_max with equal 0-patches of Phi^n(T - t) and Phi^n(T' - t), else None."""
    return coincidence_trace(tiling, other, t, n_max, tileset)[0]


@dataclass(frozen=True)
class ProbeReport:
    lo: FieldElement
    hi: FieldElement
    samples: int
    hits: int
    levels: tuple  # coincidence level per sample, None for a miss
    covered: tuple  # disjoint open intervals (lo, hi), certified coincident
    uncovered: tuple
    coverage: FieldElement  # covered measure / (hi - lo)

    @property
    def hit_fraction(self) -> Fraction:
        return Fraction(self.hits, self.samples)


def _merge(intervals):
    out = []
    for lo, hi in sorted(intervals, key=lambda iv: iv[0]):
        if out and lo <= out[-1][1]:
            if hi > out[-1][1]:
                out[-1] = (out[-1][0], hi)
        else:
            out.append((lo, hi))
    return out


def dense_coincidence_probe(tiling, other, lo, hi, samples: int = 64, n_max: int = 24,
                            tileset: TileSet | None = None) -> ProbeReport:
    """Test eventual coincidence on a grid of ``samples`` midpoints of [lo, hi].

    A hit at level n through the shared tile S certifies coincidence on the
    whole open interval lambda^-n * int(S), so the report carries exactly
    certified covered intervals as well as raw hit counts.
    """
    ts = tileset or tiling.tileset
    lo, hi = ts.to_field(lo), ts.to_field(hi)
    if not lo < hi:
        raise ValueError("probe interval must have lo < hi")
    step = (hi - lo) / samples
    nudge = step / 2**16
    inv = ts.inflation.inverse()
    covered = []
    levels = []
    for m in range(samples):
        t = lo + step * Fraction(2 * m + 1, 2)
        for attempt, delta in enumerate((0, 1, -1, 2)):
            try:
                n, tiles = coincidence_trace(tiling, other, t + nudge * delta, n_max, ts)
                break
            except EndpointHit:
                if attempt == 3:
                    raise
        levels.append(n)
        if n is None:
            continue
        scale = inv**n
        a = max(tiles[0].left * scale, lo)
        b = min(tiles[-1].right * scale, hi)
        if a < b:
            covered.append((a, b))
    covered = _merge(covered)
    gaps = []
    cursor = lo
    for a, b in covered:
        if cursor < a:
            gaps.append((cursor, a))
        cursor = b
    if cursor < hi:
        gaps.append((cursor, hi))
    measure = sum((b - a for a, b in covered), ts.field.zero)
    return ProbeReport(
        lo, hi, samples, sum(n is not None for n in levels), tuple(levels),
        tuple(covered), tuple(gaps), measure / (hi - lo),
    )


# -- overlaps ------------------------------------------------------------------


@dataclass(frozen=True)
class OverlapClass:
    """An i-tile at 0 and a j-tile at ``offset`` with overlapping interiors."""

    i: int
    j: int
    offset: FieldElement

    @property
    def is_coincidence(self) -> bool:
        return self.i == self.j and self.offset.is_zero()

    def sort_key(self):
        return self.i, self.j, self.offset.coords

    def __str__(self):
        return f"({self.i},{self.j},{self.offset.decimal(6)})"


def canonical_overlap(i: int, j: int, offset: FieldElement) -> OverlapClass:
    s = offset.sign()
    if s < 0 or (s == 0 and j < i):
        return OverlapClass(j, i, -offset)
    return OverlapClass(i, j, offset)


def _pair_overlaps(left_tiles, right_tiles):
    """Canonical classes of interior-overlapping pairs from two sorted contiguous runs."""
    out = []
    p = q = 0
    while p < len(left_tiles) and q < len(right_tiles):
        a, b = left_tiles[p], right_tiles[q]
        if a.left < b.right and b.left < a.right:
            out.append(canonical_overlap(a.type_index, b.type_index, b.left - a.left))
        s = (a.right - b.right).sign()
        if s <= 0:
            p += 1
        if s >= 0:
            q += 1
    return out


def overlap_children(c: OverlapClass, tileset: TileSet) -> list[OverlapClass]:
    """Overlaps produced by inflating the pair, ordered by leftmost intersection point."""
    first = tileset.inflate_tile(tileset.tile(c.i, 0))
    second = tileset.inflate_tile(tileset.tile(c.j, c.offset))
    return _pair_overlaps(first, second)


def _rank(vectors) -> int:
    rows = [list(v) for v in vectors]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for col in range(ncols):
        piv = next((r for r in range(rank, len(rows)) if rows[r][col]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        for r in range(len(rows)):
            if r != rank and rows[r][col]:
                f = rows[r][col] / rows[rank][col]
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[rank])]
        rank += 1
    return rank


@dataclass(frozen=True)
class SeedOverlaps:
    seeds: tuple
    return_vectors: tuple
    span_rank: int
    degree: int
    seed_tiling: tuple  # (k, a, b)


def seed_overlaps(tileset: TileSet, window: int = 8, tiling: FixedTiling | None = None) -> SeedOverlaps:
    """Overlaps between the fixed tiling T and its translates T - w by return vectors w.

    Return vectors are differences of left endpoints of same-type tiles up
    to ``window`` times the longest tile; ``span_rank`` is the Q-rank of
    their coordinates, which must equal the field degree for the density
    requirement on the generated subgroup.
    """
    if tiling is None:
        k, a, b = admissible_seed(tileset.phi)
        tiling = FixedTiling(tileset, k, a, b)
    radius = tileset.max_length * window
    base = tiling.tiles_between(-radius, radius)
    by_type: dict[int, list[FieldElement]] = {}
    for t in base:
        by_type.setdefault(t.type_index, []).append(t.left)
    seen = set()
    vectors = []
    for lefts in by_type.values():
        for x, pos in enumerate(lefts):
            for later in lefts[x + 1:]:
                w = later - pos
                if w > radius:
                    break
                if w.coords not in seen:
                    seen.add(w.coords)
                    vectors.append(w)
    vectors.sort(key=lambda w: w.coords)
    seeds = set()
    for w in vectors:
        moved = tiling.tiles_between(-radius + w, radius + w).shifted(w)
        seeds.update(_pair_overlaps(base, moved))
    ordered = tuple(sorted(seeds, key=OverlapClass.sort_key))
    rank = _rank([w.coords for w in vectors]) if vectors else 0
    return SeedOverlaps(ordered, tuple(vectors), rank, tileset.field.degree,
                        (tiling.k, tiling.a, tiling.b))


@dataclass
class OverlapGraph:
    nodes: list
    edges: dict
    seeds: tuple
    cap: int
    truncated: bool = False

    def coincidences(self):
        return [n for n in self.nodes if n.is_coincidence]


def overlap_graph(tileset: TileSet, seeds, cap: int = 10_000) -> OverlapGraph:
    """Breadth-first closure of the seeds under ``overlap_children``."""
    index: dict[OverlapClass, None] = {}
    queue = deque()
    truncated = False
    for s in seeds:
        if s not in index:
            if len(index) >= cap:
                truncated = True
                break
            index[s] = None
            queue.append(s)
    edges: dict[OverlapClass, list[OverlapClass]] = {}
    if truncated:
        queue.clear()
    while queue:
        node = queue.popleft()
        children = list(dict.fromkeys(overlap_children(node, tileset)))
        edges[node] = children
        for ch in children:
            if ch in index:
                continue
            if len(index) >= cap:
                truncated = True
                break
            index[ch] = None
            queue.append(ch)
        if truncated:
            break
    return OverlapGraph(list(index), edges, tuple(seeds), cap, truncated)


# -- verdicts ---------------------------------------------------------------------


class Verdict(Enum):
    PDS_CERTIFIED_BY_THEOREM = "PDS_CERTIFIED_BY_THEOREM"
    PDS_CONSISTENT_BY_OVERLAP = "PDS_CONSISTENT_BY_OVERLAP"
    NOT_PDS_EVIDENCE = "NOT_PDS_EVIDENCE"
    INCONCLUSIVE = "INCONCLUSIVE"


@dataclass(frozen=True)
class SpectrumVerdict:
    kind: Verdict
    reason: str = ""
    cycle: tuple = ()

    @property
    def exit_code(self) -> int:
        return {
            Verdict.PDS_CERTIFIED_BY_THEOREM: 0,
            Verdict.PDS_CONSISTENT_BY_OVERLAP: 0,
            Verdict.NOT_PDS_EVIDENCE: 2,
            Verdict.INCONCLUSIVE: 3,
        }[self.kind]


def _reaching_coincidence(graph: OverlapGraph) -> set:
    parents: dict = {n: [] for n in graph.nodes}
    for src, children in graph.edges.items():
        for ch in children:
            parents.setdefault(ch, []).append(src)
    good = set(graph.coincidences())
    stack = list(good)
    while stack:
        n = stack.pop()
        for p in parents.get(n, ()):
            if p not in good:
                good.add(p)
                stack.append(p)
    return good


def _terminal_cycle(graph: OverlapGraph, bad: set) -> tuple:
    """A cycle inside the first terminal strongly connected component of ``bad``."""
    order = [n for n in graph.nodes if n in bad]
    pos = {n: k for k, n in enumerate(order)}
    succ = {n: [c for c in graph.edges.get(n, ()) if c in bad] for n in order}
    # iterative Tarjan
    idx, low, on, st, comps = {}, {}, set(), [], []
    counter = 0
    for root in order:
        if root in idx:
            continue
        work = [(root, 0)]
        idx[root] = low[root] = counter
        counter += 1
        st.append(root)
        on.add(root)
        while work:
            v, i = work[-1]
            if i < len(succ[v]):
                work[-1] = (v, i + 1)
                w = succ[v][i]
                if w not in idx:
                    idx[w] = low[w] = counter
                    counter += 1
                    st.append(w)
                    on.add(w)
                    work.append((w, 0))
                elif w in on:
                    low[v] = min(low[v], idx[w])
            else:
                work.pop()
                if work:
                    u = work[-1][0]
                    low[u] = min(low[u], low[v])
                if low[v] == idx[v]:
                    comp = []
                    while True:
                        w = st.pop()
                        on.discard(w)
                        comp.append(w)
                        if w == v:
                            break
                    comps.append(set(comp))
    terminal = [c for c in comps if all(ch in c for n in c for ch in succ[n])]
    comp = min(terminal, key=lambda c: min(pos[n] for n in c))
    start = min(comp, key=lambda n: pos[n])
    # shortest path start -> ... -> start inside the component
    prev = {}
    queue = deque([start])
    while queue:
        v = queue.popleft()
        for w in succ[v]:
            if w not in comp:
                continue
            if w == start:
                path = [v]
                while path[-1] != start:
                    path.append(prev[path[-1]])
                return tuple(reversed(path))
            if w not in prev:
                prev[w] = v
                queue.append(w)
    raise AssertionError("terminal component without a cycle")


def spectrum_verdict(graph: OverlapGraph, span_rank: int | None = None, degree: int | None = None) -> SpectrumVerdict:
    """Consistent with pure discrete spectrum iff every overlap reaches a coincidence."""
    if graph.truncated:
        return SpectrumVerdict(Verdict.INCONCLUSIVE, f"overlap graph truncated at {graph.cap} classes")
    if span_rank is not None and degree is not None and span_rank < degree:
        return SpectrumVerdict(
            Verdict.INCONCLUSIVE, f"return vectors span rank {span_rank} < field degree {degree}"
        )
    good = _reaching_coincidence(graph)
    bad = {n for n in graph.nodes if n not in good}
    if not bad:
        return SpectrumVerdict(Verdict.PDS_CONSISTENT_BY_OVERLAP, "every overlap leads to a coincidence")
    cycle = _terminal_cycle(graph, bad)
    return SpectrumVerdict(
        Verdict.NOT_PDS_EVIDENCE,
        f"{len(bad)} overlap classes never reach a coincidence",
        cycle,
    )


# -- the prototile pair ------------------------------------------------------


@dataclass(frozen=True)
class PrototilePair:
    i: int
    j: int
    power: int
    terminal_letter: int | None
    probe: ProbeReport
    interior: ProbeReport | None


def find_coincident_prototile_pair(tileset: TileSet, n_max: int = 24, samples: int = 64,
                                   threshold=Fraction(99, 100), power: int | None = None):
    """First pair i < j of right-aligned prototiles coincident on the final-letter interval.

    With f^k constant with value l, the tiles rho_i - omega_i and
    rho_j - omega_j under phi^k coincide on (-omega_l / lambda^k, 0). Returns
    ``(pair, reports)`` where ``pair`` is None when no pair reaches the
    threshold; ``reports`` lists the probe of every pair tried. ``power``
    replaces k by a multiple of it.
    """
    ok, k, letter = final_letters_eventually_constant(tileset.phi)
    if power is not None:
        if power < 1 or (ok and power % k):
            raise ValueError(f"power must be a positive multiple of {k if ok else 1}")
        k = power
    if ok:
        ts = tileset.power(k)
        eps = tileset.length(letter) / ts.inflation
    else:
        k, letter = k or 1, None
        ts = tileset.power(k)
        eps = min(tileset.lengths) / ts.inflation
    d = tileset.phi.d
    tried = []
    for i in range(1, d + 1):
        for j in range(i + 1, d + 1):
            ti = PatchTiling(ts, Patch([ts.tile(i, -ts.length(i))]))
            tj = PatchTiling(ts, Patch([ts.tile(j, -ts.length(j))]))
            probe = dense_coincidence_probe(ti, tj, -eps, 0, samples, n_max, ts)
            tried.append(((i, j), probe))
            if probe.coverage >= threshold:
                shorter = min(ts.length(i), ts.length(j))
                li = PatchTiling(ts, Patch([ts.tile(i, 0)]))
                lj = PatchTiling(ts, Patch([ts.tile(j, 0)]))
                interior = dense_coincidence_probe(li, lj, 0, shorter, samples, n_max, ts)
                return PrototilePair(i, j, k, letter, probe, interior), tried
    return None, tried


# -- certification ---------------------------------------------------------------


@dataclass
class HypothesisReport:
    primitive: bool
    primitive_power: int | None
    initial_injective: bool
    final_eventually_constant: bool
    final_power: int | None
    terminal_letter: int | None
    pisot: PisotVerdict | None
    non_periodic: Periodicity

    @property
    def theorem_applies(self) -> bool:
        return (
            self.primitive
            and self.initial_injective
            and self.final_eventually_constant
            and self.pisot is not None
            and self.pisot.verdict is Pisot.PISOT
            and self.non_periodic is not Periodicity.PERIODIC_DETECTED
        )


@dataclass
class CertificationReport:
    substitution: Substitution
    matrix: tuple
    char_poly: RationalPolynomial
    hypotheses: HypothesisReport
    tileset: TileSet | None
    overlap: SpectrumVerdict
    verdict: SpectrumVerdict
    seeds: SeedOverlaps | None = None
    graph: OverlapGraph | None = None
    prototile_pair: PrototilePair | None = None
    config: AnalysisConfig = field(default_factory=AnalysisConfig)
    timings: dict = field(default_factory=dict)


def theorem_certify(phi: Substitution, config: AnalysisConfig | None = None) -> CertificationReport:
    """Check the hypotheses of the coincidence theorem, then cross-check with the overlap graph.

    The theorem needs phi primitive with Pisot inflation, injective on
    initial letters and eventually constant on final letters.
    """
    config = config or AnalysisConfig()
    timings = {}
    clock = time.perf_counter()

    def lap(name):
        nonlocal clock
        now = time.perf_counter()
        timings[name] = now - clock
        clock = now

    matrix = abelianization(phi)
    cp = char_poly(matrix)
    primitive, ppow = is_primitive(matrix)
    injective = initial_letter_injective(phi)
    final_ok, final_k, letter = final_letters_eventually_constant(phi)
    lap("combinatorics")

    tileset = None
    pisot = None
    periodicity = Periodicity.UNKNOWN
    if primitive:
        field_ = pf_field(matrix)
        tileset = TileSet(phi, field_, left_pf_eigenvector(matrix, field_))
        pisot = pisot_test(field_, config.tolerance)
        periodicity = periodicity_heuristic(phi, config.periodicity_window, field_)
    lap("algebra")
    hyp = HypothesisReport(primitive, ppow, injective, final_ok, final_k, letter, pisot, periodicity)

    seeds = graph = pair = None
    if not primitive:
        overlap = SpectrumVerdict(Verdict.INCONCLUSIVE, "substitution is not primitive")
    elif pisot.verdict is Pisot.NOT_PISOT:
        overlap = SpectrumVerdict(
            Verdict.INCONCLUSIVE, "inflation is not Pisot; the overlap set is not finite"
        )
    else:
        seeds = seed_overlaps(tileset, config.window)
        graph = overlap_graph(tileset, seeds.seeds, config.cap)
        overlap = spectrum_verdict(graph, seeds.span_rank, seeds.degree)
    lap("overlap")
    if primitive:
        pair, _ = find_coincident_prototile_pair(tileset, config.n_max, config.samples)
    lap("prototile_pair")

    if hyp.theorem_applies:
        verdict = SpectrumVerdict(
            Verdict.PDS_CERTIFIED_BY_THEOREM,
            "primitive, Pisot, injective on initial letters, eventually constant on final letters",
        )
    else:
        verdict = overlap
    return CertificationReport(phi, matrix, cp, hyp, tileset, overlap, verdict, seeds, graph, pair,
                               config, timings)
