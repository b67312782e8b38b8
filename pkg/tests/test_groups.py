"""Group model: constructors, centralizers, classes, subgroup machinery."""

import itertools
from collections import Counter
from math import factorial

import pytest

from permlab.errors import CapExceededError
from permlab.groups import (
    GroupSpec,
    are_isomorphic,
    construct_group,
    default_corpus,
    element_order_spectrum,
    generated_subgroup,
    generating_subset,
    internal_direct_factor_check,
    is_abelian,
    is_simple_bruteforce,
    is_subgroup,
    iter_alt_subgroups,
    iterated_product_stabilization,
    left_regular_permutation,
    parse_group_spec,
    right_regular_permutation,
    set_product,
    subgroup_as_group,
    subgroup_index,
    subgroup_search_iso_alt,
)
from permlab.perms import Permutation, parse_permutation


def G(spec):
    return construct_group(spec)


def idx(group, cycles):
    return group.index_of(parse_permutation(f"{cycles} deg={group.degree}"))


# -- spec parsing -----------------------------------------------------------

def test_spec_string_forms():
    assert parse_group_spec("alt5") == GroupSpec("alt", 5)
    assert parse_group_spec("Alt(5)") == GroupSpec("alt", 5)
    assert parse_group_spec("sym:4") == GroupSpec("sym", 4)
    assert parse_group_spec("z6") == GroupSpec("cyclic", 6)
    assert parse_group_spec("d8") == GroupSpec("dihedral", 8)
    assert parse_group_spec("psl2_7") == GroupSpec("psl2", 7)
    assert parse_group_spec("psl2(11)") == GroupSpec("psl2", 11)
    s = parse_group_spec("generated[(1 2 3),(2 3 4)]")
    assert s.kind == "generated" and s.gens == ("(1 2 3)", "(2 3 4)")
    assert parse_group_spec({"kind": "alt", "n": 6}) == GroupSpec("alt", 6)
    with pytest.raises(ValueError):
        parse_group_spec("frobenius20")


def test_spec_canonical_name_round_trip():
    for spec in default_corpus():
        assert parse_group_spec(spec.canonical_name()) == spec
        assert parse_group_spec(spec.as_dict()) == spec


# -- constructor sanity -----------------------------------------------------

@pytest.mark.parametrize("kind,n,order", [
    ("sym", 1, 1), ("sym", 3, 6), ("sym", 5, 120),
    ("alt", 3, 3), ("alt", 4, 12), ("alt", 5, 60), ("alt", 6, 360),
    ("cyclic", 1, 1), ("cyclic", 12, 12),
    ("dihedral", 8, 8), ("dihedral", 12, 12),
])
def test_constructor_orders(kind, n, order):
    g = G(GroupSpec(kind, n))
    assert len(g) == order
    assert generated_subgroup(g, g.generators) == frozenset(range(order))


@pytest.mark.parametrize("p,order", [(5, 60), (7, 168), (11, 660), (13, 1092)])
def test_psl2_orders(p, order):
    g = G(GroupSpec("psl2", p))
    assert len(g) == order
    assert g.degree == p + 1


def test_generated_closure_alt4():
    g = G("generated[(1 2 3),(2 3 4)]")
    assert len(g) == 12
    assert all(_tuple_is_even_oracle(t) for t in (g.element_tuple(i) for i in range(12)))


def _tuple_is_even_oracle(t):
    inversions = sum(1 for i, j in itertools.combinations(range(len(t)), 2)
                     if t[i] > t[j])
    return inversions % 2 == 0


def test_group_arithmetic_consistency():
    g = G("sym4")
    for i in range(0, len(g), 5):
        for j in range(0, len(g), 7):
            pi, pj = g.element(i), g.element(j)
            assert g.element(g.mul(i, j)) == pi * pj
        assert g.element(g.inv(i)) == g.element(i).inverse()
        assert g.order_of(i) == g.element(i).order()
    assert g.power(idx(g, "(1 2 3 4)"), 2) == idx(g, "(1 3)(2 4)")
    assert g.power(idx(g, "(1 2 3 4)"), -1) == idx(g, "(1 4 3 2)")


def test_element_lookup_errors():
    g = G("alt4")
    with pytest.raises(ValueError):
        g.index_of(parse_permutation("(1 2) deg=4"))  # odd, not in Alt(4)
    with pytest.raises(ValueError):
        g.index_of(parse_permutation("(1 2 3)"))  # degree 3, group degree 4


# -- conjugacy classes ------------------------------------------------------

def brute_classes(g):
    classes = set()
    for x in range(len(g)):
        classes.add(frozenset(g.conj(x, by) for by in range(len(g))))
    return classes


@pytest.mark.parametrize("spec", ["sym3", "sym4", "alt4", "alt5", "d8", "z6"])
def test_conjugacy_classes_match_bruteforce(spec):
    g = G(spec)
    assert set(g.conjugacy_classes()) == brute_classes(g)
    sizes = [len(c) for c in g.conjugacy_classes()]
    assert sizes == sorted(sizes)
    assert sum(sizes) == len(g)


def test_class_of_membership():
    g = G("sym4")
    i = idx(g, "(1 2)")
    cls = g.class_of(i)
    assert len(cls) == 6
    assert all(g.element(x).cycle_type() == g.element(i).cycle_type() for x in cls)


# -- centralizers -----------------------------------------------------------

def brute_centralizer(g, targets):
    return frozenset(
        x for x in range(len(g))
        if all(g.mul(x, t) == g.mul(t, x) for t in targets))


def test_centralizer_sym3_example():
    g = G("sym3")
    c = g.centralizer_of([idx(g, "(1 2 3)")])
    assert len(c) == 3
    assert c == brute_centralizer(g, [idx(g, "(1 2 3)")])


def test_centralizer_of_empty_set_is_whole_group():
    g = G("sym3")
    assert g.centralizer_of([]) == frozenset(range(len(g)))


def test_centralizer_alt7_three_cycle():
    g = G("alt7")
    c = g.centralizer_of([idx(g, "(1 2 3)")])
    # |C_Alt(7)((1 2 3))| = |C_Sym(7)| / 2 = (3 * 4!) / 2 = 36
    assert len(c) == 36
    assert is_subgroup(g, c)


def test_centralizer_numpy_and_python_paths_agree():
    g = G("alt5")  # order 60, python path
    h = G("alt7")  # order 2520, numpy path
    for grp in (g, h):
        t = idx(grp, "(1 2)(3 4)")
        assert grp.centralizer_of([t]) == brute_centralizer(grp, [t])


def test_triple_centralizer_identity():
    # C(C(C(S))) = C(S) for a sample of seed sets
    g = G("sym4")
    seeds = [[idx(g, "(1 2)")], [idx(g, "(1 2 3)")],
             [idx(g, "(1 2 3 4)")], [idx(g, "(1 2)"), idx(g, "(3 4)")]]
    for s in seeds:
        c1 = g.centralizer_of(s)
        c2 = g.centralizer_of(c1)
        c3 = g.centralizer_of(c2)
        assert c3 == c1


# -- set algebra ------------------------------------------------------------

def test_class_squared_covers_alt4():
    g = G("sym4")
    cls = g.class_of(idx(g, "(1 2)"))
    prod = set_product(g, cls, cls)
    assert len(prod) == 12
    assert all(_tuple_is_even_oracle(g.element_tuple(x)) for x in prod)


def test_generated_subgroup_and_index():
    g = G("sym4")
    h = generated_subgroup(g, [idx(g, "(1 2 3)"), idx(g, "(1 2)(3 4)")])
    assert len(h) == 12
    assert subgroup_index(g, h) == 2
    assert is_subgroup(g, h)
    assert not is_subgroup(g, {idx(g, "(1 2 3)")})


def test_generating_subset_is_minimalish_and_generates():
    g = G("alt5")
    sub = generating_subset(g)
    assert len(generated_subgroup(g, sub)) == 60
    assert len(sub) <= 3


def test_power_chain_literal_vs_generated():
    g = G("sym3")
    # A = {(1 2)}: literal powers alternate {(1 2)}, {1}; intersection empty
    a = frozenset([idx(g, "(1 2)")])
    assert iterated_product_stabilization(g, a, "literal") == frozenset()
    assert iterated_product_stabilization(g, a, "generated") == \
        frozenset({g.identity_index, idx(g, "(1 2)")})
    # with the identity included the literal chain ascends to <A>
    b = a | {g.identity_index}
    assert iterated_product_stabilization(g, b, "literal") == \
        generated_subgroup(g, b)
    with pytest.raises(ValueError):
        iterated_product_stabilization(g, a, "sideways")


def test_direct_factor_example_centralizer_in_alt7():
    g = G("alt7")
    h = g.centralizer_of([idx(g, "(1 2 3)")])
    a = generated_subgroup(g, [idx(g, "(4 5 6)"), idx(g, "(4 5)(6 7)")])
    b = generated_subgroup(g, [idx(g, "(1 2 3)")])
    assert len(a) == 12 and len(b) == 3
    assert internal_direct_factor_check(g, h, a, b)
    # same A against a B that leaks outside the centralizer product fails
    bad_b = generated_subgroup(g, [idx(g, "(1 2 3)"), idx(g, "(4 5 6)")])
    assert not internal_direct_factor_check(g, h, a, bad_b)


def test_direct_factor_requires_subgroup():
    g = G("sym3")
    not_closed = {g.identity_index, idx(g, "(1 2)"), idx(g, "(1 3)")}
    with pytest.raises(ValueError):
        internal_direct_factor_check(
            g, not_closed, {g.identity_index}, not_closed)
    # trivial decomposition of a subgroup passes
    h = generated_subgroup(g, [idx(g, "(1 2 3)")])
    assert internal_direct_factor_check(g, h, h, {g.identity_index})


# -- simplicity and the corpus ----------------------------------------------

def test_simplicity_known_values():
    assert is_simple_bruteforce(G("alt5"))
    assert is_simple_bruteforce(G("alt6"))
    assert is_simple_bruteforce(G("psl2_7"))
    assert is_simple_bruteforce(G("z7"))  # simple but abelian
    assert not is_simple_bruteforce(G("alt4"))
    assert not is_simple_bruteforce(G("sym5"))
    assert not is_simple_bruteforce(G("d10"))
    assert not is_simple_bruteforce(G("z6"))
    assert not is_simple_bruteforce(G("cyclic1"))


def test_simplicity_cap():
    with pytest.raises(CapExceededError):
        is_simple_bruteforce(G("sym4"), cap=10)


def test_is_abelian():
    assert is_abelian(G("z12"))
    assert not is_abelian(G("d8"))
    assert not is_abelian(G("alt4"))


def test_corpus_simple_nonabelian_members():
    expected_simple_nonabelian = {"alt(5)", "alt(6)", "psl2(5)", "psl2(7)", "psl2(11)"}
    got = set()
    for spec in default_corpus():
        g = G(spec)
        if is_simple_bruteforce(g) and not is_abelian(g):
            got.add(spec.canonical_name())
    assert got == expected_simple_nonabelian


def test_spectrum_and_isomorphism_oracle():
    a5 = G("alt5")
    psl25 = G("psl2_5")
    assert element_order_spectrum(a5) == element_order_spectrum(psl25)
    assert are_isomorphic(a5, psl25)
    assert not are_isomorphic(G("d12"), G("alt4"))
    assert not are_isomorphic(G("z6"), G("sym3"))
    assert are_isomorphic(G("sym3"), G("d6"))


# -- Alt(l) subgroup search --------------------------------------------------

def test_alt_subgroup_search_finds_point_stabilizer():
    g = G("alt6")
    found = subgroup_search_iso_alt(g, 5)
    assert found is not None
    assert len(found) == 60
    sub = subgroup_as_group(g, found)
    assert are_isomorphic(sub, G("alt5"))


def test_alt_subgroup_search_within_centralizer():
    g = G("alt7")
    c = g.centralizer_of([idx(g, "(1 2 3)")])
    found = subgroup_search_iso_alt(g, 4, within=c)
    assert found is not None and len(found) == 12
    assert found <= c
    assert are_isomorphic(subgroup_as_group(g, found), G("alt4"))


def test_alt_subgroup_search_negative():
    assert subgroup_search_iso_alt(G("sym4"), 5) is None
    assert subgroup_search_iso_alt(G("alt5"), 6) is None
    # Sym(4) has no Alt(4)-isomorphic subgroup other than Alt(4) itself;
    # searching inside a Sylow-2 subgroup (order 8) must fail
    g = G("sym4")
    syl = generated_subgroup(g, [idx(g, "(1 2 3 4)"), idx(g, "(1 3)")])
    assert len(syl) == 8
    assert subgroup_search_iso_alt(g, 4, within=syl) is None


def test_alt_subgroup_search_rejects_small_l():
    with pytest.raises(ValueError):
        subgroup_search_iso_alt(G("alt5"), 3)


def test_iter_alt_subgroups_covers_all_orbits():
    # Alt(5) has exactly 5 subgroups isomorphic to Alt(4) (the point
    # stabilizers), all conjugate; the pruned stream must stay inside that
    # family and hit the (single) conjugacy orbit at least once
    g = G("alt5")
    brute = set()
    for a in range(len(g)):
        for b in range(a, len(g)):
            s = generated_subgroup(g, [a, b])
            if len(s) == 12:
                brute.add(s)
    assert len(brute) == 5
    subs = set(iter_alt_subgroups(g, 4))
    assert subs and subs <= brute


# -- regular representations -------------------------------------------------

def test_regular_representations():
    g = G("sym3")
    for i in range(len(g)):
        left = left_regular_permutation(g, i)
        right = right_regular_permutation(g, i)
        assert left.degree == len(g) and right.degree == len(g)
        assert left.apply(g.identity_index) == i
        assert right.apply(g.identity_index) == i
    a, b = 1, 2
    la, lb = left_regular_permutation(g, a), left_regular_permutation(g, b)
    assert la * lb == left_regular_permutation(g, g.mul(a, b))
    ra, rb = right_regular_permutation(g, a), right_regular_permutation(g, b)
    assert ra * rb == right_regular_permutation(g, g.mul(b, a))
    # left copy and right copy commute elementwise
    assert la * rb == rb * la
