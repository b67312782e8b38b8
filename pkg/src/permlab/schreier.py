"""Labeled Schreier graphs: expansion, spectral gap, near-automorphisms.

A graph is a vertex set {0..n-1} with one permutation per generator label;
the directed labeled edge set is E = {(i, s, sigma_s(i))}.  Spectral and
expansion quantities live on the symmetrized multigraph whose generator
set is the collection of distinct permutations in {sigma_s} ∪ {sigma_s^-1}
(an involution contributes once).  Text I/O is 1-based like all other
surfaces of this package.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence

import numpy as np

from .errors import CapExceededError
from .groups import FiniteGroup, left_regular_permutation
from .perms import Permutation, hamming_distance, identity, parse_permutation

__all__ = [
    "LabeledSchreierGraph", "build_schreier_graph", "regular_action_graph",
    "directed_cycle_graph",
    "components", "component_mass_profile",
    "symmetrized_generators", "symmetrized_degree", "adjacency_matrix",
    "edge_expansion", "spectral_gap",
    "epsilon_defect", "is_epsilon_automorphism",
    "exact_automorphisms", "enumerate_eps_automorphisms",
    "induced_component_graph", "connected_label_isomorphic",
    "ClusterScan", "cluster_scan", "default_cluster_epsilon",
    "write_graph_file", "read_graph_file", "parse_graph_text",
    "graph_file_text", "histogram_csv",
    "EXPANSION_CAP", "EXHAUSTIVE_CAP", "CLUSTER_THRESHOLD",
]

EXPANSION_CAP = 24
EXHAUSTIVE_CAP = 8
CLUSTER_THRESHOLD = Fraction(3, 10)


@dataclass(frozen=True)
class LabeledSchreierGraph:
    labels: tuple[str, ...]
    images: tuple[Permutation, ...]

    def __post_init__(self):
        if not self.labels:
            raise ValueError("a Schreier graph needs at least one label")
        if len(self.labels) != len(self.images):
            raise ValueError("one permutation per label required")
        if len(set(self.labels)) != len(self.labels):
            raise ValueError("labels must be distinct")
        degrees = {p.degree for p in self.images}
        if len(degrees) != 1:
            raise ValueError(f"mixed degrees {sorted(degrees)}")
        for s in self.labels:
            if any(ch.isspace() for ch in s) or not s:
                raise ValueError(f"labels must be nonempty and space-free: {s!r}")

    @property
    def n(self) -> int:
        return self.images[0].degree

    @property
    def edge_count(self) -> int:
        return self.n * len(self.labels)

    def sigma(self, label: str) -> Permutation:
        return self.images[self.labels.index(label)]

    def edges(self) -> Iterator[tuple[int, str, int]]:
        for s, p in zip(self.labels, self.images):
            for i in range(self.n):
                yield i, s, p.apply(i)


def build_schreier_graph(images) -> LabeledSchreierGraph:
    """From {label: Permutation} or [(label, Permutation), ...]; label order
    is sorted for mappings, as given for sequences."""
    if isinstance(images, Mapping):
        items = sorted(images.items())
    else:
        items = list(images)
    return LabeledSchreierGraph(tuple(s for s, _ in items),
                                tuple(p for _, p in items))


def regular_action_graph(G: FiniteGroup) -> LabeledSchreierGraph:
    """Left-regular Schreier graph on G's elements, labels s1, s2, ...

    The trivial group gets a single identity loop so the graph is nonempty.
    """
    gens = G.generators
    if not gens:
        return LabeledSchreierGraph(("s1",), (identity(len(G)),))
    return LabeledSchreierGraph(
        tuple(f"s{k + 1}" for k in range(len(gens))),
        tuple(left_regular_permutation(G, g) for g in gens))


def directed_cycle_graph(n: int, label: str = "s1") -> LabeledSchreierGraph:
    if n < 1:
        raise ValueError("cycle length must be positive")
    rot = Permutation(tuple(list(range(1, n)) + [0]))
    return LabeledSchreierGraph((label,), (rot,))


# -- components ------------------------------------------------------------------

def components(g: LabeledSchreierGraph) -> list[frozenset[int]]:
    """Weakly connected components, largest first (ties by least vertex)."""
    seen = [False] * g.n
    out = []
    for start in range(g.n):
        if seen[start]:
            continue
        comp = {start}
        seen[start] = True
        queue = [start]
        while queue:
            x = queue.pop()
            for p in g.images:
                for y in (p.apply(x), p.inverse().apply(x)):
                    if not seen[y]:
                        seen[y] = True
                        comp.add(y)
                        queue.append(y)
        out.append(frozenset(comp))
    out.sort(key=lambda c: (-len(c), min(c)))
    return out


def component_mass_profile(g: LabeledSchreierGraph) -> list[Fraction]:
    return [Fraction(len(c), g.n) for c in components(g)]


# -- symmetrized multigraph quantities ----------------------------------------------

def symmetrized_generators(g: LabeledSchreierGraph) -> list[Permutation]:
    """Distinct permutations in {sigma_s} ∪ {sigma_s^-1}, sorted by images."""
    out = {p.images: p for p in g.images}
    for p in g.images:
        q = p.inverse()
        out.setdefault(q.images, q)
    return [out[k] for k in sorted(out)]


def symmetrized_degree(g: LabeledSchreierGraph) -> int:
    return len(symmetrized_generators(g))


def adjacency_matrix(g: LabeledSchreierGraph) -> np.ndarray:
    a = np.zeros((g.n, g.n), dtype=np.int64)
    for p in symmetrized_generators(g):
        for i in range(g.n):
            a[i, p.apply(i)] += 1
    return a


def edge_expansion(g: LabeledSchreierGraph, cap: int = EXPANSION_CAP) -> Fraction:
    """min over nonempty A, |A| <= n/2, of |boundary(A)| / (deg * |A|), exact."""
    n = g.n
    if n > cap:
        raise CapExceededError(f"edge expansion enumerates subsets; n capped at {cap}")
    if n < 2:
        raise ValueError("edge expansion needs at least two vertices")
    gens = symmetrized_generators(g)
    deg = len(gens)
    best = None
    verts = range(n)
    for size in range(1, n // 2 + 1):
        for subset in itertools.combinations(verts, size):
            a = set(subset)
            boundary = sum(1 for u in subset for p in gens if p.apply(u) not in a)
            value = Fraction(boundary, deg * size)
            if best is None or value < best:
                best = value
                if best == 0:
                    return best
    return best


def spectral_gap(g: LabeledSchreierGraph) -> float:
    """1 - lambda2/deg of the symmetrized adjacency; 0 iff disconnected
    (up to eigensolver precision)."""
    if g.n < 2:
        raise ValueError("the spectral gap needs at least two vertices")
    a = adjacency_matrix(g).astype(float)
    eigs = np.linalg.eigvalsh(a)
    lam2 = float(eigs[-2])
    deg = symmetrized_degree(g)
    return 1.0 - lam2 / deg


# -- epsilon-automorphisms ------------------------------------------------------------

def epsilon_defect(g: LabeledSchreierGraph, rho: Permutation) -> Fraction:
    """1 - (labeled directed edges preserved by rho) / |E|.

    An edge (i, s, j) is preserved when (rho(i), s, rho(j)) is also an edge,
    i.e. sigma_s(rho(i)) = rho(sigma_s(i)).  Loops count like any edge.
    """
    if rho.degree != g.n:
        raise ValueError(f"degree mismatch: graph {g.n}, permutation {rho.degree}")
    preserved = 0
    r = rho.images
    for p in g.images:
        pi = p.images
        preserved += sum(1 for i in range(g.n) if pi[r[i]] == r[pi[i]])
    return 1 - Fraction(preserved, g.edge_count)


def is_epsilon_automorphism(g: LabeledSchreierGraph, rho: Permutation,
                            eps) -> bool:
    return epsilon_defect(g, rho) <= eps


def exact_automorphisms(g: LabeledSchreierGraph) -> list[Permutation]:
    """All label-respecting graph automorphisms, by backtracking.

    Per component, the image of one root vertex determines the rest by
    propagation along generator edges; candidates are tried in vertex order,
    so the output is deterministic (sorted by image tuple).
    """
    comps = components(g)
    comp_of = [0] * g.n
    for ci, c in enumerate(comps):
        for v in c:
            comp_of[v] = ci
    roots = [min(c) for c in comps]
    gen_pairs = [(p.images, p.inverse().images) for p in g.images]

    def propagate(root: int, target: int, partial: list[int]) -> bool:
        # extend partial (a global image array, -1 unset) with root -> target
        if partial[root] != -1:
            return partial[root] == target
        partial[root] = target
        queue = [root]
        while queue:
            x = queue.pop()
            for fwd, bwd in gen_pairs:
                for nxt, img in ((fwd[x], fwd[partial[x]]),
                                 (bwd[x], bwd[partial[x]])):
                    if partial[nxt] == -1:
                        partial[nxt] = img
                        queue.append(nxt)
                    elif partial[nxt] != img:
                        return False
        return True

    results: list[Permutation] = []

    def backtrack(ci: int, partial: list[int]):
        if ci == len(comps):
            if len(set(partial)) == g.n:
                results.append(Permutation(tuple(partial)))
            return
        root = roots[ci]
        # the root can land anywhere in a component of matching size
        for target in range(g.n):
            if len(comps[comp_of[target]]) != len(comps[ci]):
                continue
            trial = partial[:]
            if propagate(root, target, trial):
                backtrack(ci + 1, trial)

    backtrack(0, [-1] * g.n)
    results.sort(key=lambda p: p.images)
    return results


def enumerate_eps_automorphisms(g: LabeledSchreierGraph, eps,
                                mode: str = "exhaustive",
                                restarts: int = 20,
                                seed: int = 0) -> list[Permutation]:
    """Automorphism-like maps with defect <= eps.

    exhaustive    complete scan of Sym(n); n <= EXHAUSTIVE_CAP.
    backtracking  exact automorphisms only; complete precisely when eps = 0.
    local-search  exact automorphisms plus hill-climbing descents from
                  seeded random starts; a sample, not an enumeration.
    """
    eps = Fraction(eps)
    if mode == "exhaustive":
        if g.n > EXHAUSTIVE_CAP:
            raise CapExceededError(
                f"exhaustive scan over Sym({g.n}) refused; cap {EXHAUSTIVE_CAP}")
        out = [Permutation(images)
               for images in itertools.permutations(range(g.n))
               if epsilon_defect(g, Permutation(images)) <= eps]
        return out
    if mode == "backtracking":
        if eps != 0:
            raise ValueError("backtracking mode enumerates exact automorphisms;"
                             " it is only complete for eps = 0")
        return exact_automorphisms(g)
    if mode != "local-search":
        raise ValueError(f"unknown mode {mode!r}")
    found = {p.images: p for p in exact_automorphisms(g)}
    rng = random.Random(seed)
    for _ in range(restarts):
        current = list(range(g.n))
        rng.shuffle(current)
        current_defect = epsilon_defect(g, Permutation(tuple(current)))
        improved = True
        while improved and current_defect > 0:
            improved = False
            for i in range(g.n):
                for j in range(i + 1, g.n):
                    current[i], current[j] = current[j], current[i]
                    d = epsilon_defect(g, Permutation(tuple(current)))
                    if d < current_defect:
                        current_defect = d
                        improved = True
                    else:
                        current[i], current[j] = current[j], current[i]
        if current_defect <= eps:
            found.setdefault(tuple(current), Permutation(tuple(current)))
    return [found[k] for k in sorted(found)]


def induced_component_graph(g: LabeledSchreierGraph,
                            comp: Iterable[int]) -> LabeledSchreierGraph:
    """Restriction of every label to a component, vertices renumbered in
    sorted order.  Components are generator-invariant, so this is total."""
    verts = sorted(comp)
    pos = {v: k for k, v in enumerate(verts)}
    images = []
    for p in g.images:
        try:
            images.append(Permutation(tuple(pos[p.apply(v)] for v in verts)))
        except KeyError:
            raise ValueError("vertex set is not generator-invariant") from None
    return LabeledSchreierGraph(g.labels, tuple(images))


def connected_label_isomorphic(g1: LabeledSchreierGraph,
                               g2: LabeledSchreierGraph) -> bool:
    """Whether a label-respecting isomorphism g1 -> g2 exists; g1 connected."""
    if g1.labels != g2.labels:
        raise ValueError("the graphs must share one label list")
    if g1.n != g2.n:
        return False
    if len(components(g1)) != 1:
        raise ValueError("the first graph must be connected")
    pairs1 = [(p.images, p.inverse().images) for p in g1.images]
    pairs2 = [(p.images, p.inverse().images) for p in g2.images]
    for target in range(g2.n):
        mapping = [-1] * g1.n
        mapping[0] = target
        queue = [0]
        ok = True
        while queue and ok:
            x = queue.pop()
            for (f1, b1), (f2, b2) in zip(pairs1, pairs2):
                for nxt, img in ((f1[x], f2[mapping[x]]), (b1[x], b2[mapping[x]])):
                    if mapping[nxt] == -1:
                        mapping[nxt] = img
                        queue.append(nxt)
                    elif mapping[nxt] != img:
                        ok = False
                        break
                if not ok:
                    break
        if ok and len(set(mapping)) == g1.n:
            return True
    return False


# -- cluster scans ----------------------------------------------------------------------

@dataclass(frozen=True)
class ClusterScan:
    epsilon: Fraction
    threshold: Fraction
    automorphisms: tuple[Permutation, ...]
    histogram: tuple[tuple[Fraction, int], ...]  # (distance, pair count)
    clusters: tuple[tuple[int, ...], ...]  # indices into automorphisms
    gap_interval: tuple[Fraction, Fraction]
    product_defects: tuple[tuple[tuple[int, int], Fraction], ...]


def cluster_scan(autos: Sequence[Permutation], g: LabeledSchreierGraph,
                 epsilon=Fraction(0), threshold=CLUSTER_THRESHOLD) -> ClusterScan:
    """Pairwise-distance histogram, distance-<=threshold clusters, the widest
    empty distance interval, and product-defect probes between clusters."""
    autos = list(autos)
    if len(autos) < 2:
        raise ValueError("cluster scans need at least two automorphisms")
    k = len(autos)
    dist: dict[tuple[int, int], Fraction] = {}
    hist: dict[Fraction, int] = {}
    for i in range(k):
        for j in range(i + 1, k):
            d = hamming_distance(autos[i], autos[j])
            dist[i, j] = d
            hist[d] = hist.get(d, 0) + 1
    # union-find clusters under distance <= threshold
    parent = list(range(k))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for (i, j), d in dist.items():
        if d <= threshold:
            ri, rj = find(i), find(j)
            if ri != rj:
                parent[max(ri, rj)] = min(ri, rj)
    groups: dict[int, list[int]] = {}
    for x in range(k):
        groups.setdefault(find(x), []).append(x)
    clusters = tuple(tuple(sorted(v)) for _root, v in sorted(groups.items()))
    # widest open interval between consecutive observed values (0, 1 anchored)
    points = sorted({Fraction(0), Fraction(1)} | set(hist))
    gap_lo, gap_hi = points[0], points[0]
    for a, b in zip(points, points[1:]):
        if b - a > gap_hi - gap_lo:
            gap_lo, gap_hi = a, b
    # representative-product probes, pairs of clusters in order
    probes = []
    for ci in range(len(clusters)):
        for cj in range(ci, len(clusters)):
            rep_i = autos[clusters[ci][0]]
            rep_j = autos[clusters[cj][0]]
            probes.append(((ci, cj), epsilon_defect(g, rep_i * rep_j)))
    return ClusterScan(
        epsilon=Fraction(epsilon), threshold=Fraction(threshold),
        automorphisms=tuple(autos),
        histogram=tuple(sorted(hist.items())),
        clusters=clusters,
        gap_interval=(gap_lo, gap_hi),
        product_defects=tuple(probes))


def default_cluster_epsilon(g: LabeledSchreierGraph) -> Fraction:
    """The measured spectral gap scaled by 1e-4, as an exact snapshot."""
    gap = spectral_gap(g)
    return Fraction(int(round(gap * 10 ** 8)), 10 ** 12)


# -- text I/O ------------------------------------------------------------------------------

def graph_file_text(g: LabeledSchreierGraph) -> str:
    lines = [f"n={g.n} labels={','.join(g.labels)}"]
    for i, s, j in g.edges():
        lines.append(f"{i + 1} {s} {j + 1}")
    return "\n".join(lines) + "\n"


def write_graph_file(g: LabeledSchreierGraph, path):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(graph_file_text(g))


def parse_graph_text(text: str) -> LabeledSchreierGraph:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty graph file")
    header = lines[0]
    parts = dict(item.split("=", 1) for item in header.split())
    try:
        n = int(parts["n"])
        labels = tuple(parts["labels"].split(","))
    except (KeyError, ValueError):
        raise ValueError(f"bad header: {header!r}") from None
    images = {s: [-1] * n for s in labels}
    for ln in lines[1:]:
        fields = ln.split()
        if len(fields) != 3:
            raise ValueError(f"bad edge line: {ln!r}")
        i, s, j = fields
        if s not in images:
            raise ValueError(f"unknown label {s!r} in edge line")
        iv, jv = int(i) - 1, int(j) - 1
        if not (0 <= iv < n and 0 <= jv < n):
            raise ValueError(f"vertex out of range in {ln!r}")
        if images[s][iv] != -1:
            raise ValueError(f"duplicate edge for vertex {i}, label {s}")
        images[s][iv] = jv
    perms = {}
    for s, imgs in images.items():
        if -1 in imgs:
            raise ValueError(f"label {s!r} is missing edges")
        perms[s] = Permutation(tuple(imgs))
    return LabeledSchreierGraph(labels, tuple(perms[s] for s in labels))


def read_graph_file(path) -> LabeledSchreierGraph:
    with open(path, encoding="utf-8") as fh:
        return parse_graph_text(fh.read())


def histogram_csv(scan: ClusterScan) -> str:
    lines = ["numerator,denominator,count"]
    for d, count in scan.histogram:
        lines.append(f"{d.numerator},{d.denominator},{count}")
    return "\n".join(lines) + "\n"
