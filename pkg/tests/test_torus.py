import itertools
import random

import pytest

from iqcluster.embedding import build_generators, sum_elements
from iqcluster.errors import NotDivisible, NotMonomial, NoUniformLeadingTerm
from iqcluster.quivers import build_sigma, build_zn
from iqcluster.scalars import ONE, QScalar
from iqcluster.torus import (
    TensorElement,
    TorusElement,
    qcommutator,
    render_element,
    tensor_embed,
)


def q(e2=2, c=1):
    return QScalar.q(e2, c)


def random_element(seed, rng, nterms=3, span=2):
    terms = {}
    for _ in range(nterms):
        e = tuple(rng.randint(-span, span) for _ in range(seed.size))
        terms[e] = q(rng.randint(-3, 3), rng.randint(-3, 3))
    return TorusElement(seed, terms)


# -- normal form and the defining relation ----------------------------------


def test_two_generator_relation():
    s = build_sigma(2)
    tab = build_generators(2)
    x1 = tab.X[(1, 1)]
    x3 = tab.X[(1, 2)]
    v1, v3 = s.vertex(("X", 1, 1)), s.vertex(("X", 1, 2))
    eps2 = s.weight2[v3][v1]  # 2 eps_{31}
    assert x1 * x3 == (x3 * x1).scale(q(2 * eps2))


def test_normal_form_is_association_free():
    s = build_sigma(2)
    rng = random.Random(11)
    for _ in range(25):
        a, b, c = (random_element(s, rng) for _ in range(3))
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c


def test_monomial_inverse():
    tab = build_generators(3)
    m = (tab.X[(1, 0)] * tab.X[(1, 1)]).scale(q(3))
    inv = m.monomial_inverse()
    assert m * inv == TorusElement.one(tab.seed)
    assert inv * m == TorusElement.one(tab.seed)


# -- star and renormalized monomials -----------------------------------------


def test_star_fixes_generators():
    tab = build_generators(2)
    for key, x in tab.X.items():
        assert x.star() == x


def test_star_is_an_anti_involution():
    s = build_sigma(2)
    rng = random.Random(5)
    for _ in range(20):
        f, g = random_element(s, rng), random_element(s, rng)
        assert f.star().star() == f
        assert (f * g).star() == g.star() * f.star()
        assert (f + g).star() == f.star() + g.star()


def test_renormalize_prefix_products():
    # :X_{i,0} ... X_{i,k}: = q^k X_{i,0} ... X_{i,k} for ranks >= 2
    for n in (2, 3, 4):
        tab = build_generators(n)
        for i in range(1, n + 1):
            prod = TorusElement.one(tab.seed)
            for t in range(n + 1):
                prod = prod * tab.X[(i, t)]
                assert tab.P[i][t] == prod.scale(q(2 * t))
            c = tab.X[(i, 0)] * prod
            assert tab.C[i] == c.scale(q(2 * n))


def test_renormalize_rank_one_needs_no_correction():
    tab = build_generators(1)
    prod = tab.X[(1, 0)] * tab.X[(1, 1)]
    assert prod.renormalize() == prod
    c = tab.X[(1, 0)] * prod
    assert tab.C[1] == c


def test_renormalize_fixed_and_idempotent():
    for n in (1, 2, 3, 4, 5):
        tab = build_generators(n)
        for i in range(1, n + 1):
            for t in range(n + 1):
                m = tab.P[i][t]
                assert m.star() == m
                assert m.renormalize() == m
        assert tab.C[i].star() == tab.C[i]
        assert tab.M.star() == tab.M


def test_renormalize_rejects_sums():
    tab = build_generators(2)
    with pytest.raises(NotMonomial):
        tab.iota_B[1].renormalize()


# -- commutation relations between prefix products ---------------------------


@pytest.mark.parametrize("n", [3, 4, 5])
def test_prefix_commutations_adjacent_rows(n):
    tab = build_generators(n)
    for i in range(1, n):
        for t in range(n + 1):
            for l in range(n + 1):
                f = tab.P[i][t]
                h = tab.P[i + 1][l]
                if (t, l) == (n - 1, 1):
                    assert f * h == (h * f).scale(q(-6))
                elif (t, l) == (n, 0):
                    assert f * h == (h * f).scale(q(2))
                elif l <= t:
                    assert f * h == (h * f).scale(q(-2))
                else:
                    assert f * h == (h * f).scale(q(2))


@pytest.mark.parametrize("n", [3, 4, 5])
def test_prefix_commutations_same_row(n):
    tab = build_generators(n)
    for i in range(1, n + 1):
        for l in range(n + 1):
            for m in range(l + 1, n + 1):
                f, h = tab.P[i][l], tab.P[i][m]
                if (l, m) == (0, n):
                    assert f * h == h * f
                else:
                    assert f * h == (h * f).scale(q(-4))


def test_prefix_commutations_distant_rows():
    for n in (3, 4):
        tab = build_generators(n)
        for i in range(1, n + 1):
            for j in range(i + 2, n + 1):
                for t in range(n + 1):
                    for l in range(n + 1):
                        f, h = tab.P[i][t], tab.P[j][l]
                        if (t, l) == (n + i - j, j - i):
                            assert f * h == (h * f).scale(q(-4))
                        elif (t, l) == (n + i - j + 1, j - i - 1):
                            assert f * h == (h * f).scale(q(4))
                        else:
                            assert f * h == h * f


def test_w_recombination_identity():
    # W_{i,n+i-j+1} + q W_{i,n+i-j-1} X_{j,j-i} = W_{i,n+i-j} (1 + q X_{j,j-i})
    for n, i, j in [(3, 1, 3), (4, 1, 3), (4, 2, 4), (4, 1, 4)]:
        tab = build_generators(n)
        x = tab.X[(j, j - i)]
        one = TorusElement.one(tab.seed)
        lhs = tab.W[i][n + i - j + 1] + (tab.W[i][n + i - j - 1] * x).scale(q(2))
        rhs = tab.W[i][n + i - j] * (one + x.scale(q(2)))
        assert lhs == rhs


# -- q-commutator -------------------------------------------------------------


def test_qcommutator_case_table():
    tab = build_generators(3)
    n = 3
    # f h = q h f        -> q^(-1/2) f h
    f, h = tab.P[1][1], tab.P[2][2]
    assert f * h == (h * f).scale(q(2))
    assert qcommutator(f, h) == (f * h).scale(q(-1))
    # f h = q^(-1) h f   -> 0
    f, h = tab.P[1][2], tab.P[2][1]  # (t,l)=(2,1)=(n-1,1) is excluded; use (2,2)
    f, h = tab.P[1][2], tab.P[2][2]
    assert f * h == (h * f).scale(q(-2))
    assert qcommutator(f, h).is_zero()
    # f h = q^(-3) h f   -> -q^(3/2) f h
    f, h = tab.P[1][n - 1], tab.P[2][1]
    assert f * h == (h * f).scale(q(-6))
    assert qcommutator(f, h) == (f * h).scale(-q(3))
    # f h = q^3 h f      -> (q + q^(-1)) q^(-3/2) f h
    f, h = tab.P[2][1], tab.P[1][n - 1]
    assert f * h == (h * f).scale(q(6))
    assert qcommutator(f, h) == (f * h).scale((q(2) + q(-2)) * q(-3))


def test_qcommutator_not_divisible():
    tab = build_generators(2)
    f = tab.X[(1, 1)]
    one = TorusElement.one(tab.seed)
    with pytest.raises(NotDivisible):
        qcommutator(f + one, one + one)


# -- leading terms -------------------------------------------------------------


def test_leading_term_of_embedded_generators():
    for n in (1, 2, 3):
        tab = build_generators(n)
        for i in range(1, n + 1):
            e, c = tab.iota_B[i].leading_term()
            v = tab.seed.vertex(("X", i, 0))
            assert e == tuple(1 if u == v else 0 for u in range(tab.seed.size))
            assert c == ONE


def test_leading_term_single_monomial():
    tab = build_generators(2)
    m = tab.P[1][2]
    assert m.leading_term() == m.as_monomial()


def test_leading_term_missing():
    tab = build_generators(2)
    f = tab.X[(1, 1)] + tab.X[(1, 2)]
    with pytest.raises(NoUniformLeadingTerm):
        f.leading_term()


# -- tensor embedding -----------------------------------------------------------


def test_tensor_embed_multiplicative():
    from iqcluster.quivers import build_dn

    zn = build_zn(2)
    sigma, dn = build_sigma(2), build_dn(2)
    rng = random.Random(23)
    for _ in range(6):
        f = random_element(zn, rng, nterms=2, span=1)
        g = random_element(zn, rng, nterms=2, span=1)
        ef = tensor_embed(f, sigma, dn)
        eg = tensor_embed(g, sigma, dn)
        assert tensor_embed(f * g, sigma, dn) == ef * eg
        assert tensor_embed(f + g, sigma, dn) == ef + eg


def test_tensor_embed_injective_on_monomials():
    from iqcluster.quivers import build_dn

    zn = build_zn(2)
    sigma, dn = build_sigma(2), build_dn(2)
    seen = {}
    rng = random.Random(3)
    for _ in range(40):
        e = tuple(rng.randint(-1, 1) for _ in range(zn.size))
        img = tensor_embed(TorusElement.monomial(zn, e), sigma, dn)
        ((key, _),) = img.terms.items()
        if key in seen:
            assert seen[key] == e
        seen[key] = e


def test_tensor_embed_glued_and_free_generators():
    from iqcluster.quivers import build_dn

    zn = build_zn(2)
    sigma, dn = build_sigma(2), build_dn(2)
    glued = zn.vertex(("X", 1, 0))
    a, b = zn.glue[glued]
    img = tensor_embed(TorusElement.generator(zn, glued), sigma, dn)
    ((key, c),) = img.terms.items()
    assert c == ONE
    assert key[0][a] == 1 and sum(map(abs, key[0])) == 1
    assert key[1][b] == 1 and sum(map(abs, key[1])) == 1
    # a Sigma-only vertex maps to X (x) 1
    lone = zn.vertex(("X", 1, 1))
    img = tensor_embed(TorusElement.generator(zn, lone), sigma, dn)
    ((key, _),) = img.terms.items()
    assert sum(map(abs, key[0])) == 1 and sum(map(abs, key[1])) == 0


# -- rendering ------------------------------------------------------------------


def test_render_element():
    # canonical rendering lists factors in the global (id) order, with the
    # coefficient adjusted to that order
    tab = build_generators(2)
    assert render_element(tab.iota_k[1], tab.figure_names) == "-q^(-2)*X3*X1*X5^2"
    assert render_element(TorusElement.zero(tab.seed)) == "0"
