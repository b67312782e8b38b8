"""Rigidity probes: two-sided actions with inversion and double centralizers.

For a finite group G, the extended two-sided action on the elements of G is
generated by left translations x -> g*x, right translations x -> x*g^-1, and
the inversion flip x -> x^-1.  The flip conjugates each left translation to
the matching right translation, and the centralizer of the left-regular copy
inside the full symmetric group on G is exactly the right-regular copy, so
double centralizing recovers the left copy.  Centralizers of transitive
actions are computed by base-point propagation: a commuting permutation is
determined by the image of one point, pushed along generator edges.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import CapExceededError, DecompositionRequiredError
from .groups import (ELEMENT_CAP, FiniteGroup, _closure_tuples,
                     left_regular_permutation, right_regular_permutation,
                     set_product)
from .perms import CycleType, Permutation, hamming_distance, identity
from .schreier import (LabeledSchreierGraph, components,
                       connected_label_isomorphic, exact_automorphisms,
                       induced_component_graph)

__all__ = [
    "GroupAction", "action_from_group",
    "left_copy_permutations", "right_copy_permutations", "flip_permutation",
    "biregular_action",
    "centralizer_transitive_action", "centralizer_in_sym_bruteforce",
    "action_centralizer",
    "DoubleCentralizerReport", "double_centralizer_check",
    "BiregularReport", "biregular_double_centralizer",
    "is_regular_via_centralizer", "one_discrete_check", "class_power_types",
    "BRUTE_DEGREE_CAP", "CLASS_POWER_GROUP_CAP", "CLASS_POWER_EXPONENT_CAP",
]

BRUTE_DEGREE_CAP = 8
CLASS_POWER_GROUP_CAP = 10 ** 4
CLASS_POWER_EXPONENT_CAP = 6


@dataclass(frozen=True)
class GroupAction:
    """A list of labeled permutations of {0..n-1} generating the action."""

    labels: tuple[str, ...]
    images: tuple[Permutation, ...]
    name: str = field(default="", compare=False)

    def __post_init__(self):
        if not self.labels:
            raise ValueError("an action needs at least one generator")
        if len(self.labels) != len(self.images):
            raise ValueError("one permutation per label required")
        if len({p.degree for p in self.images}) != 1:
            raise ValueError("mixed degrees in action images")

    @property
    def degree(self) -> int:
        return self.images[0].degree

    def graph(self) -> LabeledSchreierGraph:
        return LabeledSchreierGraph(self.labels, self.images)

    def is_transitive(self) -> bool:
        return len(components(self.graph())) == 1

    def image_group(self, cap: int = ELEMENT_CAP) -> FiniteGroup:
        elements = _closure_tuples([p.images for p in self.images],
                                   self.degree, cap=cap)
        gens = [elements.index(p.images) for p in self.images]
        return FiniteGroup(elements, name=f"image({self.name or 'action'})",
                           generator_indices=gens)


def action_from_group(G: FiniteGroup) -> GroupAction:
    """G acting on its own points through its stored permutations."""
    perms = G.generator_permutations()
    if not perms:
        perms = [identity(G.degree)]
    return GroupAction(tuple(f"g{k + 1}" for k in range(len(perms))),
                       tuple(perms), name=G.name)


# -- the two-sided action -----------------------------------------------------------

def left_copy_permutations(G: FiniteGroup) -> list[Permutation]:
    return [left_regular_permutation(G, i) for i in range(len(G))]


def right_copy_permutations(G: FiniteGroup) -> list[Permutation]:
    return [right_regular_permutation(G, i) for i in range(len(G))]


def flip_permutation(G: FiniteGroup) -> Permutation:
    return Permutation(tuple(G.inv(x) for x in range(len(G))))


def biregular_action(G: FiniteGroup, cap: int = CLASS_POWER_GROUP_CAP) -> GroupAction:
    """The action generated by left translations, inverse right translations,
    and the flip, on the |G| elements of G.

    Labels: L<k> for x -> g_k*x, R<k> for x -> x*g_k^-1, t for x -> x^-1;
    the construction checks t*L<k>*t = R<k> pointwise.
    """
    if len(G) > cap:
        raise CapExceededError(f"two-sided action capped at groups of size {cap}")
    t = flip_permutation(G)
    labels: list[str] = []
    images: list[Permutation] = []
    for k, g in enumerate(G.generators):
        left = left_regular_permutation(G, g)
        right = right_regular_permutation(G, G.inv(g))
        if t * left * t != right:
            raise AssertionError("flip conjugation identity failed")
        labels += [f"L{k + 1}", f"R{k + 1}"]
        images += [left, right]
    labels.append("t")
    images.append(t)
    return GroupAction(tuple(labels), tuple(images), name=f"twosided({G.name})")


# -- centralizers of actions ---------------------------------------------------------

def centralizer_transitive_action(action: GroupAction,
                                  name: str | None = None) -> FiniteGroup:
    """Centralizer in Sym(n) of a transitive action, by base-point propagation.

    The commuting permutations are exactly the label-respecting automorphisms
    of the action's Schreier graph.
    """
    graph = action.graph()
    if len(components(graph)) != 1:
        raise ValueError("the action is intransitive; decompose it first")
    autos = exact_automorphisms(graph)
    return FiniteGroup([p.images for p in autos],
                       name=name or f"C({action.name or 'action'})")


def centralizer_in_sym_bruteforce(perms: Sequence[Permutation],
                                  cap: int = BRUTE_DEGREE_CAP) -> list[Permutation]:
    """Scan all of Sym(n) for permutations commuting with every given one."""
    perms = list(perms)
    if not perms:
        raise ValueError("at least one permutation is required")
    n = perms[0].degree
    if n > cap:
        raise CapExceededError(f"brute-force centralizer capped at degree {cap}")
    out = []
    for images in itertools.permutations(range(n)):
        if all(tuple(p.images[images[i]] for i in range(n)) ==
               tuple(images[p.images[i]] for i in range(n)) for p in perms):
            out.append(Permutation(images))
    return out


def action_centralizer(action: GroupAction) -> FiniteGroup:
    """Centralizer of a possibly intransitive action.

    Every commuting permutation maps orbits to label-isomorphic orbits, so
    when the orbits are pairwise non-isomorphic the centralizer is the direct
    product of the per-orbit centralizers.  Isomorphic orbit pairs would add
    swapping symmetries; that case raises DecompositionRequiredError so the
    caller decomposes the action instead of receiving a wrong product.
    """
    graph = action.graph()
    comps = components(graph)
    if len(comps) == 1:
        return centralizer_transitive_action(action)
    induced = [induced_component_graph(graph, c) for c in comps]
    for i in range(len(comps)):
        for j in range(i + 1, len(comps)):
            if len(comps[i]) == len(comps[j]) and \
                    connected_label_isomorphic(induced[i], induced[j]):
                raise DecompositionRequiredError(
                    f"orbits {sorted(comps[i])} and {sorted(comps[j])} are "
                    "label-isomorphic; the centralizer is not a plain product")
    n = graph.n
    per_comp: list[list[tuple[int, ...]]] = []
    for comp, sub in zip(comps, induced):
        verts = sorted(comp)
        embedded = []
        for a in exact_automorphisms(sub):
            img = list(range(n))
            for local, v in enumerate(verts):
                img[v] = verts[a.apply(local)]
            embedded.append(tuple(img))
        per_comp.append(embedded)
    total = 1
    for block in per_comp:
        total *= len(block)
        if total > ELEMENT_CAP:
            raise CapExceededError("centralizer product exceeds the element cap")
    elements = []
    for choice in itertools.product(*per_comp):
        img = list(range(n))
        for part in choice:
            for v in range(n):
                if part[v] != v:
                    img[v] = part[v]
        elements.append(tuple(img))
    return FiniteGroup(elements, name=f"C({action.name or 'action'})")


# -- double centralizers ---------------------------------------------------------------

def _centralizer_of_perms(perms: list[Permutation],
                          brute_cap: int) -> list[Permutation]:
    n = perms[0].degree
    action = GroupAction(tuple(f"p{k + 1}" for k in range(len(perms))),
                         tuple(perms))
    if action.is_transitive():
        C = centralizer_transitive_action(action)
        return [C.element(i) for i in range(len(C))]
    return centralizer_in_sym_bruteforce(perms, cap=brute_cap)


@dataclass(frozen=True)
class DoubleCentralizerReport:
    subgroup: tuple[Permutation, ...]
    centralizer: tuple[Permutation, ...]
    double: tuple[Permutation, ...]
    closes: bool


def double_centralizer_check(perms: Iterable[Permutation],
                             brute_cap: int = BRUTE_DEGREE_CAP) -> DoubleCentralizerReport:
    """Close the input under composition, centralize twice in Sym(n), and
    report whether the double centralizer equals the generated subgroup.

    Transitive stages use base-point propagation; intransitive stages fall
    back to the brute-force scan (degree capped)."""
    gens = list(perms)
    if not gens:
        raise ValueError("at least one permutation is required")
    n = gens[0].degree
    subgroup = sorted(_closure_tuples([p.images for p in gens], n))
    C = _centralizer_of_perms(gens, brute_cap)
    CC = _centralizer_of_perms(C, brute_cap)
    return DoubleCentralizerReport(
        subgroup=tuple(Permutation(t) for t in subgroup),
        centralizer=tuple(C),
        double=tuple(CC),
        closes={p.images for p in CC} == set(subgroup))


@dataclass(frozen=True)
class BiregularReport:
    group: str
    centralizer_is_right_copy: bool
    double_is_left_copy: bool
    flip_conjugates_centralizer_to_left: bool
    generator_identities: bool
    centralizer_order: int


def biregular_double_centralizer(G: FiniteGroup) -> BiregularReport:
    """Verify, on the left-regular copy of G, that the centralizer is the
    right-regular copy, that double centralizing returns the left copy, and
    that the flip conjugates the centralizer onto the left copy."""
    left = left_copy_permutations(G)
    right = right_copy_permutations(G)
    t = flip_permutation(G)
    gens = [left_regular_permutation(G, g) for g in G.generators] or [left[G.identity_index]]
    C = _centralizer_of_perms(gens, brute_cap=BRUTE_DEGREE_CAP)
    CC = _centralizer_of_perms(C, brute_cap=BRUTE_DEGREE_CAP)
    left_set = {p.images for p in left}
    gen_ok = all(
        t * left_regular_permutation(G, g) * t
        == right_regular_permutation(G, G.inv(g))
        for g in G.generators)
    return BiregularReport(
        group=G.name,
        centralizer_is_right_copy={p.images for p in C} == {p.images for p in right},
        double_is_left_copy={p.images for p in CC} == left_set,
        flip_conjugates_centralizer_to_left=
            {(t * c * t).images for c in C} == left_set,
        generator_identities=gen_ok,
        centralizer_order=len(C))


def is_regular_via_centralizer(action: GroupAction) -> bool:
    """A transitive action is regular exactly when its centralizer in the
    full symmetric group has order equal to the degree."""
    return len(centralizer_transitive_action(action)) == action.degree


def one_discrete_check(perms: Sequence[Permutation]) -> bool:
    """Whether all pairwise normalized Hamming distances equal one, i.e. the
    set is as spread out as permutations can be.  Vacuous below two entries."""
    perms = list(perms)
    return all(hamming_distance(p, q) == 1
               for i, p in enumerate(perms) for q in perms[i + 1:])


def class_power_types(G: FiniteGroup, g, k: int,
                      cap: int = CLASS_POWER_GROUP_CAP) -> set[CycleType]:
    """Cycle types of all products of k conjugates of g.

    The k-fold product set of the conjugacy class is grown one factor at a
    time; |G| and k are capped because the intermediate sets can reach |G|.
    """
    if not 1 <= k <= CLASS_POWER_EXPONENT_CAP:
        raise ValueError(f"k must lie in 1..{CLASS_POWER_EXPONENT_CAP}")
    if len(G) > cap:
        raise CapExceededError(f"class power types capped at groups of size {cap}")
    gi = g if isinstance(g, int) else G.index_of(g)
    cl = G.class_of(gi)
    current = frozenset(cl)
    for _ in range(k - 1):
        current = set_product(G, current, cl)
    return {G.element(x).cycle_type() for x in current}
