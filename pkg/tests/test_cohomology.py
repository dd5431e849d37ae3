import itertools

import pytest
from hypothesis import given, settings, strategies as st

from oracles import coboundaries_cyclic, cocycles_cyclic, homomorphism_count, picd_oracle
from wcderived.cohomology import (
    Cocycle,
    FiniteGroup,
    GModule,
    coboundaries,
    coboundary_of,
    cocycles,
    cyclic_actions,
    h1,
    is_cocycle,
    parse_gmodule,
    picd_cocycle,
    small_groups,
    torsor_from_cocycle,
)
from wcderived.errors import GuardError, ValidationError
from wcderived.modarith import FiniteAbelianGroup

C2 = FiniteGroup.cyclic(2)
V = FiniteAbelianGroup([2, 2])
SWAP = GModule(C2, V, [[[1, 0], [0, 1]], [[0, 1], [1, 0]]])
TRIV = GModule.trivial_action(C2, V)


def vals(zs):
    return sorted(z.values for z in zs)


# ---- groups ----------------------------------------------------------------

def test_small_groups_orders_and_names():
    gs = small_groups()
    assert [g.size for g in gs] == [1, 2, 3, 4, 4, 5, 6, 6]
    assert sum(not g.is_abelian() for g in gs) == 1  # S3


@pytest.mark.parametrize("spec, size", [("C4", 4), ("C2xC2", 4), ("V4", 4), ("S3", 6), ("trivial", 1), ("C2xC3", 6)])
def test_group_parse(spec, size):
    assert FiniteGroup.parse(spec).size == size


@pytest.mark.parametrize("spec", ["D4", "Cx", "C0", ""])
def test_group_parse_rejects(spec):
    with pytest.raises(ValidationError):
        FiniteGroup.parse(spec)


def test_group_table_validation():
    with pytest.raises(ValidationError):
        FiniteGroup([[0, 1], [1, 1]])  # 1 has no inverse
    with pytest.raises(ValidationError):
        FiniteGroup([[0, 1, 2], [1, 0, 0], [2, 0, 1]])  # not a latin square
    with pytest.raises(GuardError):
        FiniteGroup.cyclic(9)


def test_group_inverse():
    S3 = FiniteGroup.symmetric3()
    assert all(S3.mul(g, S3.inverse(g)) == S3.identity for g in S3.elements())


# ---- modules ---------------------------------------------------------------

def test_gmodule_rejects_non_actions():
    with pytest.raises(ValidationError):
        GModule.cyclic(C2, 5, [1, 2])  # 2*2 != 1 mod 5
    with pytest.raises(ValidationError):
        GModule.cyclic(C2, 4, [1, 2])  # not bijective
    with pytest.raises(ValidationError):
        GModule(C2, V, [[[1, 0], [0, 1]]])
    with pytest.raises(GuardError):
        GModule.trivial_action(C2, FiniteAbelianGroup([100]))


@pytest.mark.parametrize("G", small_groups(), ids=lambda g: g.name)
@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_cyclic_actions_are_homomorphisms(G, n):
    acts = cyclic_actions(G, n)
    assert tuple([1 % n] * G.size) in acts
    brute = [
        m for m in itertools.product(range(n), repeat=G.size)
        if m[G.identity] == 1 % n
        and all(m[G.mul(g, h)] == m[g] * m[h] % n for g in G.elements() for h in G.elements())
    ]
    assert sorted(acts) == sorted(brute)


# ---- cocycles --------------------------------------------------------------

def test_cocycle_examples():
    assert len(cocycles(TRIV)) == 4
    assert vals(cocycles(SWAP)) == [((0, 0), (0, 0)), ((0, 0), (1, 1))]
    T = GModule.trivial_action(FiniteGroup.trivial(), FiniteAbelianGroup([3]))
    assert len(cocycles(T)) == 1


def test_coboundary_examples():
    assert vals(coboundaries(TRIV)) == [((0, 0), (0, 0))]
    assert vals(coboundaries(SWAP)) == [((0, 0), (0, 0)), ((0, 0), (1, 1))]
    neg = GModule.cyclic(C2, 4, [1, 3])
    assert vals(coboundaries(neg)) == [((0,), (0,)), ((0,), (2,))]
    assert coboundary_of(neg, (1,)).values == ((0,), (2,))


@pytest.mark.parametrize("example, size", [(TRIV, 4), (SWAP, 1)])
def test_h1_examples(example, size):
    assert h1(example).size == size


def test_h1_trivial_group():
    assert h1(GModule.trivial_action(FiniteGroup.trivial(), FiniteAbelianGroup([7]))).size == 1


@pytest.mark.parametrize("G", small_groups(), ids=lambda g: g.name)
def test_trivial_action_h1_is_hom(G):
    for n in (2, 3, 4, 6):
        M = GModule.trivial_action(G, FiniteAbelianGroup([n]))
        assert h1(M).size == homomorphism_count(G.table.tolist(), n)


@pytest.mark.parametrize("G", small_groups(), ids=lambda g: g.name)
def test_cocycles_match_unnormalized_brute_force(G):
    for n in (2, 3, 4, 5):
        for mult in cyclic_actions(G, n):
            M = GModule.cyclic(G, n, mult)
            brute = cocycles_cyclic(G.table.tolist(), G.identity, mult, n)
            assert [tuple(v[0] for v in z.values) for z in cocycles(M)] == brute
            assert [tuple(v[0] for v in b.values) for b in coboundaries(M)] == coboundaries_cyclic(mult, n)
            H = h1(M)
            assert H.size * len(H.b1) == len(H.z1)
            assert H.exponent_bound_holds()


def test_h1_representatives_are_coset_minima():
    M = GModule.cyclic(FiniteGroup.cyclic(2), 6, [1, 5])
    H = h1(M)
    for rep in H.representatives:
        coset = [rep + b for b in H.b1]
        assert rep == min(coset)
    for z in H.z1:
        r = H.class_of(z)
        assert r - z in set(H.b1)


def test_cocycle_validation():
    with pytest.raises(ValidationError):
        Cocycle.from_values(SWAP, [(0, 0), (1, 0)])  # violates the law
    with pytest.raises(ValidationError):
        Cocycle.from_values(SWAP, [(1, 1), (1, 1)])  # not normalized
    with pytest.raises(ValidationError):
        Cocycle.from_values(SWAP, [(0, 0)])
    assert not is_cocycle(SWAP, (0, 1))


def test_cocycle_guard():
    G = FiniteGroup.cyclic(8)
    M = GModule.trivial_action(G, FiniteAbelianGroup([64]))
    with pytest.raises(GuardError):
        cocycles(M)


# ---- twisted actions -------------------------------------------------------

def test_twist_zero_is_module_action():
    M = GModule.cyclic(FiniteGroup.cyclic(4), 5, [1, 2, 4, 3])
    zero = Cocycle(M, (0, 0, 0, 0))
    tw = torsor_from_cocycle(zero)
    assert all(tw(g, (y,)) == M.act(g, (y,)) for g in range(4) for y in range(5))


def test_twist_example_fourth_iterate():
    M = GModule.cyclic(FiniteGroup.cyclic(4), 5, [1, 2, 4, 3])
    alpha = Cocycle.from_values(M, [(0,), (1,), (3,), (2,)])  # alpha(generator) = 1
    tw = torsor_from_cocycle(alpha)
    for y in range(5):
        assert tw(1, (y,)) == ((2 * y + 1) % 5,)
        z = (y,)
        for _ in range(4):
            z = tw(1, z)
        assert z == (y,)


def test_twist_by_coboundary_is_translation_conjugate():
    M = GModule.cyclic(FiniteGroup.cyclic(4), 5, [1, 2, 4, 3])
    plain = torsor_from_cocycle(Cocycle(M, (0, 0, 0, 0)))
    for m in range(5):
        b = coboundary_of(M, (m,))
        tw = torsor_from_cocycle(b)
        for g in range(4):
            for y in range(5):
                # g*(y - m) + m = g.y under the twist by g.m - m
                assert tw(g, ((y - m) % 5,)) == (((M.act(g, (y,))[0]) - m) % 5,)
        assert tw.is_isomorphic_to(plain) is not None


def test_twisted_fixed_points():
    alpha = Cocycle.from_values(SWAP, [(0, 0), (1, 1)])
    tw = torsor_from_cocycle(alpha)
    # sigma*y = swap(y) + (1,1): fixed points are (a, a+1)
    assert tw.fixed_points() == [(0, 1), (1, 0)]


# ---- Pic^d -----------------------------------------------------------------

def test_picd_examples():
    M = GModule.cyclic(FiniteGroup.cyclic(4), 5, [1, 2, 4, 3])
    alpha = Cocycle.from_values(M, [(0,), (1,), (3,), (2,)])
    assert picd_cocycle(alpha, 1) == alpha
    assert picd_cocycle(alpha, 0) == Cocycle(M, (0, 0, 0, 0))
    beta = picd_cocycle(alpha, 3)
    assert beta(1) == (3,)
    assert beta.values == ((0,), (3,), (4,), (1,))


@pytest.mark.parametrize("G", [FiniteGroup.cyclic(2), FiniteGroup.cyclic(3), FiniteGroup.symmetric3()], ids=lambda g: g.name)
def test_picd_matches_divisor_oracle(G):
    for n in (3, 4, 6):
        for mult in cyclic_actions(G, n):
            M = GModule.cyclic(G, n, mult)
            for alpha in cocycles(M):
                a = tuple(v[0] for v in alpha.values)
                for d in range(0, 4):
                    beta = picd_cocycle(alpha, d)
                    assert tuple(v[0] for v in beta.values) == picd_oracle(G.table.tolist(), mult, n, a, d)


def test_picd_noncyclic_module():
    M = GModule(FiniteGroup.cyclic(2), FiniteAbelianGroup([2, 4]), [[[1, 0], [0, 1]], [[1, 0], [0, 3]]])
    for alpha in cocycles(M):
        for d in range(4):
            assert picd_cocycle(alpha, d) == alpha.scaled(d)


def test_picd_rejects_negative_degree():
    alpha = Cocycle.from_values(SWAP, [(0, 0), (1, 1)])
    with pytest.raises(ValidationError):
        picd_cocycle(alpha, -1)


@settings(max_examples=25, deadline=None)
@given(st.sampled_from([3, 4, 5, 7]), st.integers(0, 5), st.integers(0, 5), st.data())
def test_picd_additive(n, d1, d2, data):
    G = FiniteGroup.cyclic(2)
    mult = data.draw(st.sampled_from(cyclic_actions(G, n)))
    M = GModule.cyclic(G, n, mult)
    alpha = data.draw(st.sampled_from(cocycles(M)))
    if d1 + d2 <= 6:
        assert picd_cocycle(alpha, d1 + d2) == picd_cocycle(alpha, d1) + picd_cocycle(alpha, d2)


# ---- text format -----------------------------------------------------------

def test_parse_gmodule_text():
    text = """
    # C4 on Z/5 by multiplication with 2
    group C4
    module 5
    action 1
    action 2
    action 4
    action 3
    """
    M = parse_gmodule(text)
    assert M.group.size == 4 and M.act(1, (1,)) == (2,)
    S = parse_gmodule("group C2\nmodule 2 2\naction 1,0;0,1\naction 0,1;1,0\n")
    assert h1(S).size == 1
    T = parse_gmodule("group table\nrow 0 1\nrow 1 0\nmodule 2,2\naction trivial\n")
    assert h1(T).size == 4


@pytest.mark.parametrize("text", ["module 5\n", "group C2\n", "group C2\nmodule 5\nfoo 1\n", "group C2\nmodule 2,2\naction 1\naction 1\n"])
def test_parse_gmodule_rejects(text):
    with pytest.raises(ValidationError):
        parse_gmodule(text)
