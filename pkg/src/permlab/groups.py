"""Enumerated finite permutation groups and their definable-set algebra.

A :class:`FiniteGroup` stores every element as an image tuple, indexed
0..order-1 with the identity first for constructor groups.  Hot paths
(multiplication, centralizer scans, closures) work on indices and raw
tuples; :class:`~permlab.perms.Permutation` objects appear only at API
boundaries.  Groups are immutable after construction (the internal
caches only memoize pure queries), so sharing them between callers is
safe.
"""

from __future__ import annotations

import itertools
import re
from collections import Counter
from dataclasses import dataclass
from math import factorial, lcm
from typing import Iterable, Iterator, Mapping, Sequence

import numpy as np

from .errors import CapExceededError
from .perms import Permutation, parse_permutation

__all__ = [
    "FiniteGroup",
    "GroupSpec",
    "parse_group_spec",
    "construct_group",
    "default_corpus",
    "set_product",
    "generated_subgroup",
    "generating_subset",
    "is_subgroup",
    "subgroup_index",
    "iterated_product_stabilization",
    "internal_direct_factor_check",
    "subgroup_as_group",
    "element_order_spectrum",
    "is_abelian",
    "is_simple_bruteforce",
    "iter_alt_subgroups",
    "subgroup_search_iso_alt",
    "are_isomorphic",
    "left_regular_permutation",
    "right_regular_permutation",
]

ELEMENT_CAP = 10 ** 6
TABLE_CAP = 5000
SIMPLICITY_CAP = 10 ** 5
_NUMPY_SCAN_THRESHOLD = 4096


def _compose(p: tuple, q: tuple) -> tuple:
    """Apply q first: (p∘q)(i) = p(q(i))."""
    return tuple(p[j] for j in q)


def _invert(p: tuple) -> tuple:
    inv = [0] * len(p)
    for i, j in enumerate(p):
        inv[j] = i
    return tuple(inv)


def _tuple_order(p: tuple) -> int:
    seen = [False] * len(p)
    lengths = []
    for start in range(len(p)):
        if seen[start]:
            continue
        length = 1
        seen[start] = True
        j = p[start]
        while j != start:
            seen[j] = True
            length += 1
            j = p[j]
        lengths.append(length)
    return lcm(*lengths)


def _tuple_is_even(p: tuple) -> bool:
    seen = [False] * len(p)
    cycles = 0
    for start in range(len(p)):
        if seen[start]:
            continue
        cycles += 1
        j = p[start]
        while j != start:
            seen[j] = True
            j = p[j]
    return (len(p) - cycles) % 2 == 0


class FiniteGroup:
    """A finite group of permutations of one degree, fully enumerated."""

    def __init__(self, elements: Sequence[tuple], name: str,
                 generator_indices: Sequence[int] | None = None):
        if not elements:
            raise ValueError("a group needs at least the identity")
        self.name = name
        self.degree = len(elements[0])
        self._elements: list[tuple] = list(elements)
        self._index: dict[tuple, int] = {}
        for i, t in enumerate(self._elements):
            if len(t) != self.degree:
                raise ValueError("mixed degrees in element list")
            if t in self._index:
                raise ValueError("duplicate element in element list")
            self._index[t] = i
        ident = tuple(range(self.degree))
        if ident not in self._index:
            raise ValueError("identity missing from element list")
        self.identity_index = self._index[ident]
        self._generators = (tuple(generator_indices)
                            if generator_indices is not None else None)
        self._rows: list | None = (
            [None] * len(self._elements) if len(self._elements) <= TABLE_CAP else None)
        self._inverses: list[int] | None = None
        self._orders: list[int] = [0] * len(self._elements)
        self._classes: tuple[frozenset, ...] | None = None
        self._class_of: list[int] | None = None
        self._np_matrix_cache = None
        # memo tables for pure queries; keyed by frozensets of element indices
        self._centralizer_memo: dict[frozenset, frozenset] = {}
        self._subgroup_memo: dict[frozenset, bool] = {}
        self._subclass_reps_memo: dict[frozenset, tuple] = {}
        self._macro_memo: dict = {}
        self.spec: GroupSpec | None = None  # set by construct_group

    # -- basic queries ------------------------------------------------------

    def __len__(self) -> int:
        return len(self._elements)

    def __repr__(self) -> str:
        return f"<FiniteGroup {self.name} order {len(self)} degree {self.degree}>"

    def element(self, i: int) -> Permutation:
        return Permutation(self._elements[i])

    def element_tuple(self, i: int) -> tuple:
        return self._elements[i]

    def index_of(self, p: Permutation | tuple) -> int:
        t = p.images if isinstance(p, Permutation) else tuple(p)
        try:
            return self._index[t]
        except KeyError:
            raise ValueError(f"not an element of {self.name}: {t}") from None

    def __contains__(self, p) -> bool:
        t = p.images if isinstance(p, Permutation) else tuple(p)
        return t in self._index

    def elements(self) -> Iterator[Permutation]:
        return (Permutation(t) for t in self._elements)

    @property
    def generators(self) -> tuple[int, ...]:
        if self._generators is None:
            self._generators = tuple(generating_subset(self))
        return self._generators

    def generator_permutations(self) -> list[Permutation]:
        return [self.element(i) for i in self.generators]

    # -- arithmetic ---------------------------------------------------------

    def mul(self, i: int, j: int) -> int:
        if self._rows is not None:
            row = self._rows[i]
            if row is None:
                ti = self._elements[i]
                idx = self._index
                row = [idx[_compose(ti, t)] for t in self._elements]
                self._rows[i] = row
            return row[j]
        return self._index[_compose(self._elements[i], self._elements[j])]

    def inv(self, i: int) -> int:
        if self._inverses is None:
            idx = self._index
            self._inverses = [idx[_invert(t)] for t in self._elements]
        return self._inverses[i]

    def conj(self, i: int, by: int) -> int:
        """by · i · by^-1."""
        return self.mul(self.mul(by, i), self.inv(by))

    def power(self, i: int, k: int) -> int:
        if k < 0:
            return self.power(self.inv(i), -k)
        acc = self.identity_index
        base = i
        while k:
            if k & 1:
                acc = self.mul(acc, base)
            base = self.mul(base, base)
            k >>= 1
        return acc

    def order_of(self, i: int) -> int:
        o = self._orders[i]
        if o == 0:
            o = self._orders[i] = _tuple_order(self._elements[i])
        return o

    # -- conjugacy ----------------------------------------------------------

    def conjugacy_classes(self) -> tuple[frozenset, ...]:
        """Conjugacy classes, sorted by (size, least member)."""
        if self._classes is None:
            gens = self.generators
            gen_pairs = [(self._elements[g], _invert(self._elements[g]))
                         for g in gens]
            idx = self._index
            assigned = [-1] * len(self)
            raw: list[list[int]] = []
            for start in range(len(self)):
                if assigned[start] >= 0:
                    continue
                cid = len(raw)
                orbit = [start]
                assigned[start] = cid
                queue = [start]
                while queue:
                    x = queue.pop()
                    xt = self._elements[x]
                    for gt, git in gen_pairs:
                        y = idx[_compose(_compose(gt, xt), git)]
                        if assigned[y] < 0:
                            assigned[y] = cid
                            orbit.append(y)
                            queue.append(y)
                raw.append(orbit)
            order = sorted(range(len(raw)), key=lambda c: (len(raw[c]), min(raw[c])))
            self._classes = tuple(frozenset(raw[c]) for c in order)
            self._class_of = [0] * len(self)
            for new_cid, c in enumerate(self._classes):
                for x in c:
                    self._class_of[x] = new_cid
        return self._classes

    def class_representatives(self) -> list[int]:
        """Least member of each class, in (class size, member) order."""
        return [min(c) for c in self.conjugacy_classes()]

    def class_of(self, i: int) -> frozenset:
        self.conjugacy_classes()
        return self._classes[self._class_of[i]]

    # -- centralizers -------------------------------------------------------

    def _np_matrix(self):
        if self._np_matrix_cache is None:
            self._np_matrix_cache = np.array(self._elements, dtype=np.int32)
        return self._np_matrix_cache

    def centralizer_of(self, indices: Iterable[int]) -> frozenset:
        """Centralizer {x : xs = sx for all s in the given set} as index set."""
        key = frozenset(indices)
        cached = self._centralizer_memo.get(key)
        if cached is not None:
            return cached
        if not key:
            result = frozenset(range(len(self)))
        else:
            gens = generating_subset(self, key) or [self.identity_index]
            if len(self) >= _NUMPY_SCAN_THRESHOLD:
                mat = self._np_matrix()
                mask = np.ones(len(self), dtype=bool)
                for g in gens:
                    garr = np.array(self._elements[g], dtype=np.int32)
                    mask &= (mat[:, garr] == garr[mat]).all(axis=1)
                result = frozenset(np.nonzero(mask)[0].tolist())
            else:
                out = []
                rng = range(self.degree)
                for x, xt in enumerate(self._elements):
                    ok = True
                    for g in gens:
                        gt = self._elements[g]
                        for i in rng:
                            if xt[gt[i]] != gt[xt[i]]:
                                ok = False
                                break
                        if not ok:
                            break
                    if ok:
                        out.append(x)
                result = frozenset(out)
        self._centralizer_memo[key] = result
        return result


# ---------------------------------------------------------------------------
# group specs and constructors


@dataclass(frozen=True)
class GroupSpec:
    """Recipe for a constructor group.

    kind ∈ {sym, alt, cyclic, dihedral, psl2, generated}; `n` is the degree
    for sym/alt, the order for cyclic/dihedral, the odd prime p for psl2;
    `gens` holds cycle strings for kind=generated.
    """

    kind: str
    n: int = 0
    gens: tuple[str, ...] = ()

    def canonical_name(self) -> str:
        if self.kind == "generated":
            return "generated[" + ",".join(self.gens) + "]"
        return f"{self.kind}({self.n})"

    def as_dict(self) -> dict:
        if self.kind == "generated":
            return {"kind": "generated", "generators": list(self.gens)}
        return {"kind": self.kind, "n": self.n}


_SPEC_RE = re.compile(
    r"^(sym|alt|cyclic|dihedral|psl2)\s*[\s(:_]?\s*(\d+)\s*\)?$")
_ALIAS_RE = re.compile(r"^(z|d)\s*(\d+)$")


def parse_group_spec(spec) -> GroupSpec:
    """Accept GroupSpec, compact strings ('alt5', 'sym(4)', 'z6', 'd8',
    'psl2(7)', 'generated[(1 2 3),(2 3 4)]'), or dicts ({'kind': 'alt', 'n': 5})."""
    if isinstance(spec, GroupSpec):
        return spec
    if isinstance(spec, Mapping):
        kind = spec.get("kind")
        if kind == "generated":
            gens = spec.get("generators") or spec.get("gens")
            if not gens:
                raise ValueError("generated spec needs a 'generators' list")
            return GroupSpec("generated", 0, tuple(str(g).strip() for g in gens))
        if kind not in ("sym", "alt", "cyclic", "dihedral", "psl2"):
            raise ValueError(f"unknown group kind {kind!r}")
        return GroupSpec(kind, int(spec["n"]))
    text = str(spec).strip()
    low = text.lower()
    if low.startswith("generated"):
        body = text[len("generated"):].strip()
        if not (body.startswith("[") and body.endswith("]")) and \
           not (body.startswith("{") and body.endswith("}")):
            raise ValueError(f"bad generated spec: {spec!r}")
        inner = body[1:-1].strip()
        if not inner:
            raise ValueError("generated spec needs at least one generator")
        gens = tuple(part.strip() for part in inner.split(",") if part.strip())
        return GroupSpec("generated", 0, gens)
    m = _SPEC_RE.match(low)
    if m:
        return GroupSpec(m.group(1), int(m.group(2)))
    m = _ALIAS_RE.match(low)
    if m:
        kind = "cyclic" if m.group(1) == "z" else "dihedral"
        return GroupSpec(kind, int(m.group(2)))
    raise ValueError(f"unrecognized group spec: {spec!r}")


def _closure_tuples(gen_tuples: list[tuple], degree: int,
                    cap: int = ELEMENT_CAP) -> list[tuple]:
    ident = tuple(range(degree))
    seen = {ident}
    out = [ident]
    frontier = [ident]
    while frontier:
        new = []
        for x in frontier:
            for g in gen_tuples:
                y = _compose(g, x)
                if y not in seen:
                    seen.add(y)
                    out.append(y)
                    if len(out) > cap:
                        raise CapExceededError(
                            f"closure exceeded the element cap {cap}")
                    new.append(y)
        frontier = new
    return out


def _build_sym_or_alt(kind: str, n: int) -> FiniteGroup:
    if n < 1:
        raise ValueError("degree must be at least 1")
    if factorial(n) > 2 * ELEMENT_CAP:
        raise CapExceededError(f"{kind}({n}) exceeds the element cap {ELEMENT_CAP}")
    if kind == "sym":
        elems = [p for p in itertools.permutations(range(n))]
        gens: list[tuple] = []
        if n >= 2:
            t = list(range(n))
            t[0], t[1] = 1, 0
            gens.append(tuple(t))
        if n >= 3:
            gens.append(tuple(list(range(1, n)) + [0]))
    else:
        elems = [p for p in itertools.permutations(range(n)) if _tuple_is_even(p)]
        gens = []
        for k in range(2, n):
            t = list(range(n))
            t[0], t[1], t[k] = 1, k, 0
            gens.append(tuple(t))
    g = FiniteGroup(elems, f"{kind}({n})",
                    [elems.index(t) for t in gens] if gens else [])
    return g


def _build_cyclic(k: int) -> FiniteGroup:
    if k < 1:
        raise ValueError("cyclic order must be at least 1")
    if k == 1:
        return FiniteGroup([(0,)], "cyclic(1)", [])
    rot = tuple(list(range(1, k)) + [0])
    elems = _closure_tuples([rot], k)
    return FiniteGroup(elems, f"cyclic({k})", [elems.index(rot)])


def _build_dihedral(order: int) -> FiniteGroup:
    if order % 2 or order < 6:
        raise ValueError("dihedral order must be even and at least 6")
    k = order // 2
    rot = tuple(list(range(1, k)) + [0])
    refl = tuple((k - i) % k for i in range(k))
    elems = _closure_tuples([rot, refl], k)
    if len(elems) != order:
        raise RuntimeError("dihedral construction produced the wrong order")
    return FiniteGroup(elems, f"dihedral({order})",
                       [elems.index(rot), elems.index(refl)])


_PSL2_PRIMES = (5, 7, 11, 13)


def _build_psl2(p: int) -> FiniteGroup:
    if p not in _PSL2_PRIMES:
        raise ValueError(f"psl2 supports p in {_PSL2_PRIMES}, got {p}")
    inf = p  # point p is the projective point at infinity
    shift = tuple([(x + 1) % p for x in range(p)] + [inf])
    neg_inv = [0] * (p + 1)
    neg_inv[0] = inf
    neg_inv[inf] = 0
    for x in range(1, p):
        neg_inv[x] = (-pow(x, p - 2, p)) % p
    neg_inv_t = tuple(neg_inv)
    elems = _closure_tuples([shift, neg_inv_t], p + 1)
    expected = p * (p * p - 1) // 2
    if len(elems) != expected:
        raise RuntimeError(f"psl2({p}) closure has order {len(elems)}, expected {expected}")
    return FiniteGroup(elems, f"psl2({p})",
                       [elems.index(shift), elems.index(neg_inv_t)])


def _build_generated(gens: tuple[str, ...]) -> FiniteGroup:
    perms = [parse_permutation(g) for g in gens]
    degree = max(p.degree for p in perms)
    padded = []
    for p in perms:
        images = tuple(p.images) + tuple(range(p.degree, degree))
        padded.append(images)
    elems = _closure_tuples(padded, degree)
    name = "generated[" + ",".join(gens) + "]"
    return FiniteGroup(elems, name, [elems.index(t) for t in padded])


_CONSTRUCT_CACHE: dict[GroupSpec, FiniteGroup] = {}


def construct_group(spec) -> FiniteGroup:
    """Build (and cache) the group described by a GroupSpec / string / dict."""
    gspec = parse_group_spec(spec)
    cached = _CONSTRUCT_CACHE.get(gspec)
    if cached is not None:
        return cached
    if gspec.kind == "sym" or gspec.kind == "alt":
        g = _build_sym_or_alt(gspec.kind, gspec.n)
    elif gspec.kind == "cyclic":
        g = _build_cyclic(gspec.n)
    elif gspec.kind == "dihedral":
        g = _build_dihedral(gspec.n)
    elif gspec.kind == "psl2":
        g = _build_psl2(gspec.n)
    else:
        g = _build_generated(gspec.gens)
    g.spec = gspec
    _CONSTRUCT_CACHE[gspec] = g
    return g


def default_corpus() -> list[GroupSpec]:
    """The default verification corpus of constructor groups."""
    specs = [GroupSpec("alt", n) for n in (4, 5, 6)]
    specs += [GroupSpec("sym", n) for n in (3, 4, 5, 6)]
    specs += [GroupSpec("dihedral", n) for n in (8, 10, 12)]
    specs += [GroupSpec("cyclic", n) for n in range(2, 13)]
    specs += [GroupSpec("psl2", p) for p in (5, 7, 11)]
    return specs


# ---------------------------------------------------------------------------
# element-set algebra (ElementSet = frozenset of element indices)


def set_product(G: FiniteGroup, A: Iterable[int], B: Iterable[int]) -> frozenset:
    """{a·b : a ∈ A, b ∈ B} as an index set."""
    Bl = list(B)
    return frozenset(G.mul(a, b) for a in A for b in Bl)


def generating_subset(G: FiniteGroup, S: Iterable[int] | None = None) -> list[int]:
    """Greedy generating subset (least indices first) of the subgroup ⟨S⟩.

    With S omitted, a generating subset of the whole group (used when a
    group was built from a bare element list).
    """
    members = sorted(S) if S is not None else range(len(G))
    gens: list[int] = []
    closure = {G.identity_index}
    for x in members:
        if x not in closure:
            gens.append(x)
            closure = _close_indices(G, gens)
            if S is None and len(closure) == len(G):
                break
    return gens


def _close_indices(G: FiniteGroup, gens: Sequence[int],
                   cap: int | None = None) -> set[int]:
    out = {G.identity_index}
    frontier = [G.identity_index]
    while frontier:
        new = []
        for x in frontier:
            for g in gens:
                y = G.mul(g, x)
                if y not in out:
                    out.add(y)
                    if cap is not None and len(out) > cap:
                        return out
                    new.append(y)
        frontier = new
    return out


def generated_subgroup(G: FiniteGroup, S: Iterable[int]) -> frozenset:
    """Subgroup generated by S (the empty set generates the trivial subgroup)."""
    return frozenset(_close_indices(G, generating_subset(G, S)))


def is_subgroup(G: FiniteGroup, S: Iterable[int]) -> bool:
    """Closure check; in a finite group closure under · implies inverses."""
    key = frozenset(S)
    cached = G._subgroup_memo.get(key)
    if cached is not None:
        return cached
    ok = G.identity_index in key and all(
        G.mul(a, b) in key for a in key for b in key)
    G._subgroup_memo[key] = ok
    return ok


def subgroup_index(G: FiniteGroup, H: Iterable[int]) -> int:
    Hs = frozenset(H)
    if not is_subgroup(G, Hs):
        raise ValueError("index is only defined for subgroups")
    return len(G) // len(Hs)


def iterated_product_stabilization(G: FiniteGroup, A: Iterable[int],
                                   reading: str) -> frozenset:
    """Stabilized power chain of A under one of two readings.

    'literal':   the intersection of all powers A, A·A, A·A·A, …
    'generated': the subgroup generated by A (the limit of the ascending
                  chain whenever 1 ∈ A).
    """
    As = frozenset(A)
    if not As:
        raise ValueError("power chain of the empty set is undefined")
    if reading == "generated":
        return generated_subgroup(G, As)
    if reading != "literal":
        raise ValueError(f"unknown reading {reading!r}")
    current = As
    meet = set(As)
    seen = {current}
    while True:
        current = set_product(G, current, As)
        meet &= current
        if current in seen:
            return frozenset(meet)
        seen.add(current)


def internal_direct_factor_check(G: FiniteGroup, H: Iterable[int],
                                 A: Iterable[int], B: Iterable[int]) -> bool:
    """True iff A∩B = {1}, A and B commute elementwise, and A·B = H exactly."""
    Hs, As, Bs = frozenset(H), frozenset(A), frozenset(B)
    if not is_subgroup(G, Hs):
        raise ValueError("H must be a subgroup")
    if As & Bs != {G.identity_index}:
        return False
    for a in As:
        for b in Bs:
            if G.mul(a, b) != G.mul(b, a):
                return False
    prod = set_product(G, As, Bs)
    return len(prod) == len(As) * len(Bs) and prod == Hs


def subgroup_as_group(G: FiniteGroup, S: Iterable[int],
                      name: str | None = None) -> FiniteGroup:
    """Package a subgroup's index set as a standalone FiniteGroup."""
    idxs = sorted(frozenset(S))
    elems = [G.element_tuple(i) for i in idxs]
    return FiniteGroup(elems, name or f"sub({G.name},{len(idxs)})")


def element_order_spectrum(G: FiniteGroup,
                           S: Iterable[int] | None = None) -> Counter:
    members = range(len(G)) if S is None else S
    return Counter(G.order_of(x) for x in members)


def is_abelian(G: FiniteGroup) -> bool:
    gens = G.generators or [G.identity_index]
    return all(G.mul(a, b) == G.mul(b, a) for a in gens for b in gens)


def is_simple_bruteforce(G: FiniteGroup, cap: int = SIMPLICITY_CAP) -> bool:
    """Abstract simplicity: the normal closure of every nontrivial class is G.

    The trivial group is not simple.  Abelianness is NOT consulted here;
    Z/p is simple, and the non-abelian-simple classifier layers the extra
    check on top.
    """
    if len(G) > cap:
        raise CapExceededError(f"simplicity check capped at {cap} elements")
    if len(G) == 1:
        return False
    for cls in G.conjugacy_classes():
        if cls == frozenset((G.identity_index,)):
            continue
        if len(generated_subgroup(G, cls)) != len(G):
            return False
    return True


# ---------------------------------------------------------------------------
# Alt(l) subgroup search


_ALT_SPECTRUM_CACHE: dict[int, Counter] = {}


def _alt_spectrum(l: int) -> Counter:
    spec = _ALT_SPECTRUM_CACHE.get(l)
    if spec is None:
        spec = _ALT_SPECTRUM_CACHE[l] = element_order_spectrum(
            construct_group(GroupSpec("alt", l)))
    return spec


def _subgroup_class_reps(G: FiniteGroup, W: frozenset) -> tuple[int, ...]:
    """Conjugacy-class representatives of the subgroup W, computed within G."""
    cached = G._subclass_reps_memo.get(W)
    if cached is not None:
        return cached
    gens = generating_subset(G, W)
    assigned: set[int] = set()
    reps = []
    for start in sorted(W):
        if start in assigned:
            continue
        reps.append(start)
        queue = [start]
        assigned.add(start)
        while queue:
            x = queue.pop()
            for g in gens:
                y = G.conj(x, g)
                if y not in assigned:
                    assigned.add(y)
                    queue.append(y)
    result = tuple(reps)
    G._subclass_reps_memo[W] = result
    return result


def _close_pair(G: FiniteGroup, a: int, b: int, cap: int) -> set[int] | None:
    """⟨a, b⟩, or None as soon as the closure exceeds cap elements."""
    out = {G.identity_index}
    frontier = [G.identity_index]
    while frontier:
        new = []
        for x in frontier:
            for g in (a, b):
                y = G.mul(g, x)
                if y not in out:
                    if len(out) >= cap:
                        return None
                    out.add(y)
                    new.append(y)
        frontier = new
    return out


def iter_alt_subgroups(G: FiniteGroup, l: int,
                       within: Iterable[int] | None = None) -> Iterator[frozenset]:
    """Subgroups recognized as Alt(l) inside `within`, distinct as sets.

    Search: generating pairs in index order, the first generator restricted
    to conjugacy-class representatives of the ambient subgroup.  That prunes
    soundly for any conjugation-covariant use: the stream covers every
    conjugacy orbit of Alt(l)-subgroups of `within`, though not necessarily
    every individual copy.  Recognition: order l!/2, element-order spectrum
    match, brute-force simplicity for l >= 5.  Alt(4) is not simple, but
    {1: 1, 2: 3, 3: 8} is the spectrum of no other order-12 group, so order
    plus spectrum already decides l = 4.
    """
    if l < 4:
        raise ValueError("alt-subgroup search needs l >= 4")
    W = frozenset(within) if within is not None else frozenset(range(len(G)))
    target = factorial(l) // 2
    if target > len(W) or len(W) % target != 0:
        return
    if not is_subgroup(G, W):
        raise ValueError("the search region must be a subgroup")
    ref = _alt_spectrum(l)
    allowed = set(ref)
    reps = [r for r in _subgroup_class_reps(G, W)
            if r != G.identity_index and G.order_of(r) in allowed]
    members = [b for b in sorted(W)
               if b != G.identity_index and G.order_of(b) in allowed]
    seen: set[frozenset] = set()
    for a in reps:
        for b in members:
            S = _close_pair(G, a, b, target)
            if S is None or len(S) != target:
                continue
            fs = frozenset(S)
            if fs in seen:
                continue
            seen.add(fs)
            if Counter(G.order_of(x) for x in fs) != ref:
                continue
            if l >= 5 and not is_simple_bruteforce(subgroup_as_group(G, fs)):
                continue
            yield fs


def subgroup_search_iso_alt(G: FiniteGroup, l: int,
                            within: Iterable[int] | None = None) -> frozenset | None:
    """First subgroup isomorphic to Alt(l), or None."""
    return next(iter_alt_subgroups(G, l, within), None)


# ---------------------------------------------------------------------------
# isomorphism oracle (slow path, small groups only)


def are_isomorphic(G: FiniteGroup, H: FiniteGroup,
                   budget: int = 10 ** 6) -> bool:
    """Generator-image backtracking; intended as a test oracle for |G| ≤ ~10³."""
    if len(G) != len(H):
        return False
    if element_order_spectrum(G) != element_order_spectrum(H):
        return False
    gens = list(G.generators) or [G.identity_index]
    # express every element of G as a product of generators (BFS words)
    word: list[tuple[int, ...] | None] = [None] * len(G)
    word[G.identity_index] = ()
    frontier = [G.identity_index]
    while frontier:
        new = []
        for x in frontier:
            for gi, g in enumerate(gens):
                y = G.mul(g, x)
                if word[y] is None:
                    word[y] = (gi,) + word[x]
                    new.append(y)
        frontier = new
    by_order: dict[int, list[int]] = {}
    for x in range(len(H)):
        by_order.setdefault(H.order_of(x), []).append(x)
    candidate_lists = [by_order.get(G.order_of(g), []) for g in gens]
    total = 1
    for lst in candidate_lists:
        total *= len(lst)
        if total > budget:
            raise CapExceededError("isomorphism search budget exceeded")
    for images in itertools.product(*candidate_lists):
        mapped = [0] * len(G)
        ok = True
        for x in range(len(G)):
            val = H.identity_index
            for gi in reversed(word[x]):
                val = H.mul(images[gi], val)
            mapped[x] = val
        if len(set(mapped)) != len(G):
            continue
        for x in range(len(G)):
            for gi, g in enumerate(gens):
                if mapped[G.mul(g, x)] != H.mul(images[gi], mapped[x]):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            return True
    return False


# ---------------------------------------------------------------------------
# regular representations


def left_regular_permutation(G: FiniteGroup, i: int) -> Permutation:
    """x ↦ i·x on element indices (degree |G|)."""
    return Permutation(tuple(G.mul(i, x) for x in range(len(G))))


def right_regular_permutation(G: FiniteGroup, i: int) -> Permutation:
    """x ↦ x·i on element indices (degree |G|)."""
    return Permutation(tuple(G.mul(x, i) for x in range(len(G))))
