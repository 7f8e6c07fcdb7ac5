import itertools

import pytest
from hypothesis import given, settings, strategies as st

from eqcoh.cellular import homotopy_group
from eqcoh.errors import DomainError
from eqcoh.reps import VirtualRep, hz_canonical, lam, phi, trivial
from eqcoh.ringstr import (
    CoeffRing,
    Q0,
    basis_monomial,
    conj_ring,
    injectivity_profile,
    normalize_class,
    q0_closed,
    q0_images,
    q0_via_tau,
    series_terms,
    t_exponent,
    underlying,
    verify_relation,
)
from eqcoh.ringstr.q0 import tau_composite_omega


# ---------------------------------------------------------------- normalization


def test_normalize_examples():
    c = normalize_class("a", 3, 2, 2)
    assert (c.kind, c.index, c.scalar) == ("a", 0, 3)
    c = normalize_class("u", 6, 3, 2)
    assert (c.index, c.scalar) == (1, 1)
    for p, m in ((2, 2), (3, 1), (5, 2)):
        assert normalize_class("a", p**m, p, m).as_poly(CoeffRing(p, m, "Z")) == 0
        assert normalize_class("u", p**m, p, m).as_poly(CoeffRing(p, m, "Z")) == 1
    with pytest.raises(DomainError):
        normalize_class("b", 1, 2, 1)


@given(st.sampled_from([(2, 2), (2, 3), (3, 2), (5, 1)]), st.integers(1, 200), st.integers(1, 200))
def test_normalize_gcd_scaling(pm, i, s):
    p, m = pm
    if s % p == 0:
        s += 1
    R = CoeffRing(p, m, "Z")
    lhs = normalize_class("a", s * i, p, m).as_poly(R)
    rhs = R.nf(s * normalize_class("a", i, p, m).as_poly(R))
    assert lhs == rhs
    assert normalize_class("u", s * i, p, m).index == normalize_class("u", i, p, m).index


def test_ring_domain():
    with pytest.raises(DomainError):
        CoeffRing(6, 1)
    with pytest.raises(DomainError):
        CoeffRing(2, 0)
    with pytest.raises(DomainError):
        CoeffRing(3, 1, "Q")


def test_eager_rewrites():
    R = CoeffRing(3, 3, "Z")
    assert R.nf(R.v(1) * R.u(1)) == R.u(0)
    assert R.nf(R.v(2) * R.a(2)) == R.nf(3 * R.a(1))
    assert R.v(3) == R.u(2)
    # coefficient groups shrink with the Euler index
    assert R.nf(9 * R.a(1)) == 0 and R.nf(9 * R.a(0)) != 0
    assert R.nf(100 * R.u(0)) == 100 * R.u(0)


# ---------------------------------------------------------------- q0


@pytest.mark.parametrize("mode", ["Z", "modp"])
def test_q0_examples(mode):
    for p, m in ((2, 1), (3, 2)):
        R = CoeffRing(p, m, mode)
        assert q0_closed(1, R) == R.u(0) * R.x
        assert q0_via_tau(1, R) == R.u(0) * R.x
    R = CoeffRing(2, 1, mode)
    assert q0_closed(2, R) == R.a(0) * R.x + R.u(0) * R.x**2


@pytest.mark.parametrize("p,m", [(2, 1), (2, 2), (3, 1), (3, 2), (5, 1)])
def test_q0_mod_p_product_formula(p, m):
    R = CoeffRing(p, m, "modp")
    prod_z, prod_a = R.one, R.one
    for i in range(1, p + 1):
        prod_z *= R.a_lam(i) + R.x * R.u_lam(i)
        prod_a *= R.a_lam(i)
    assert q0_closed(p, R) == R.nf(prod_z - prod_a)


@pytest.mark.parametrize("p,m", [(2, 2), (3, 2), (2, 3)])
@pytest.mark.parametrize("mode", ["Z", "modp"])
def test_closed_and_removal_calculus_agree_everywhere(p, m, mode):
    R = CoeffRing(p, m, mode)
    for d in range(1, p**m + 1):
        assert q0_closed(d, R) == q0_via_tau(d, R), d


@pytest.mark.parametrize("p,m,d", [(3, 1, 3), (2, 2, 4), (3, 2, 5)])
def test_composite_removal_on_omega(p, m, d):
    R = CoeffRing(p, m, "Z")
    for size in range(0, d):
        removals = list(range(1, size + 1))
        for t in range(0, 3):
            k = t + size + 3
            got = tau_composite_omega(removals, t, d, k, R)
            want = R.x ** (t + 1) * (R.a_lam(d) + R.u_lam(d) * R.x)
            for i in removals:
                want *= R.a_lam(i) + R.x * R.u_lam(i)
            assert got == R.nf(want)


@pytest.mark.parametrize("p,m", [(2, 2), (3, 2), (2, 3), (5, 1)])
def test_res_e_is_power_of_x(p, m):
    for mode in ("Z", "modp"):
        R = CoeffRing(p, m, mode)
        for d in range(1, p**m + 1):
            assert underlying(q0_closed(d, R), R) == R.x**d


def _random_poly(R, draw):
    gens = [R.g(j) for j in range(R.m + 1)] + [R.a(k) for k in range(R.m)] + [R.u(k) for k in range(R.m)]
    f = R.zero
    for _ in range(draw(st.integers(1, 3))):
        term = R.const(draw(st.integers(-5, 5)))
        for _ in range(draw(st.integers(0, 3))):
            term *= gens[draw(st.integers(0, len(gens) - 1))]
        f += term
    return R.nf(f)


@settings(max_examples=100)
@given(st.data(), st.sampled_from([(2, 1, "Z"), (2, 2, "Z"), (3, 1, "modp"), (2, 2, "modp"), (3, 2, "Z")]))
def test_q0_is_multiplicative(data, cfg):
    p, m, mode = cfg
    R = CoeffRing(p, m, mode)
    images = q0_images(R)
    f, g = _random_poly(R, data.draw), _random_poly(R, data.draw)
    assert Q0(R.nf(f * g), R, images) == R.nf(Q0(f, R, images) * Q0(g, R, images))


def test_polynomial_text_and_json():
    R = CoeffRing(2, 1, "Z")
    f = q0_closed(2, R)
    assert R.format(f) == "u0*x^2 + a0*x"
    assert R.as_json(f) == [{"coeff": 1, "exponents": {"u0": 1, "x": 2}}, {"coeff": 1, "exponents": {"a0": 1, "x": 1}}]
    assert R.format(R.nf(-3 * R.u(0) + 2)) == "-3*u0 + 2"
    assert R.format(R.zero) == "0"


# ---------------------------------------------------------------- series and relations


def test_series_examples():
    s = series_terms(1, 2, 1)
    R = s.R
    assert s.B[1] == R.a(0) + R.u(0) * R.x
    assert s.T[0] == R.g(0) + R.a(0)
    s = series_terms(2, 3, 2)
    assert s.images_match and s.factorization_ok
    with pytest.raises(DomainError):
        series_terms(3, 2, 2)


def test_rho_example_by_hand():
    res = verify_relation("rho", 2, 1, 1)
    assert res.ok and res.residual == "0"
    R = CoeffRing(2, 1, "modp")
    x, a, u = R.x, R.a(0), R.u(0)
    assert R.nf(u * (a * x + u * x**2)) == R.nf((u * x + a) ** 2 + a * (u * x + a))


def test_lemma_example():
    res = verify_relation("lemma", 3, 1, 1)
    assert res.ok
    R = CoeffRing(3, 1, "modp")
    a, u, x = R.a(0), R.u(0), R.x
    assert R.nf((a + x * u) * (2 * a + x * u)) == R.nf(2 * a**2 + x**2 * u**2)


def test_lewis_example_and_notes():
    assert verify_relation("lewis", 5).ok
    mu = verify_relation("mu", 3, 2, 2)
    assert mu.ok and mu.notes and "a_k^2" in mu.notes[0]
    assert not verify_relation("rho", 2, 1, 1).notes


def test_relation_domain():
    with pytest.raises(DomainError):
        verify_relation("rho", 2, 1, 2)
    with pytest.raises(DomainError):
        verify_relation("lemma", 2, 1, 0)
    with pytest.raises(DomainError):
        verify_relation("sigma", 2, 1, 1)
    with pytest.raises(DomainError):
        verify_relation("rho", 4, 1, 1)


def test_mu_needs_squared_classes_not_squared_scalars():
    # reading the squared class of a_{L^s} as (s a_k)^2 breaks the relation at (3, 2, 2)
    from eqcoh.ringstr import relations as rel

    R = CoeffRing(3, 2, "modp", gen="beta")
    literal = lambda f: R.nf(f**2)  # noqa: E731
    T, A = rel._chain(R, 2, R.g, literal)
    t = T[1]
    poly = R.nf(literal(R.v(2)) * R.g(2) - t**3 + literal(R.a_lam(3)) ** 2 * t * A[0] ** 2)
    images = {k: R.substitute(v, rel.squaring(R)) for k, v in q0_images(R).items()}
    assert Q0(poly, R, images) != 0
    assert verify_relation("mu", 3, 2, 2).ok


# ---------------------------------------------------------------- injectivity


def test_injectivity_small_example():
    prof = injectivity_profile(2, 1, 1)
    assert prof.source_orders == [None, 2, 2]
    assert prof.diagonal == [1, 1, 1] == prof.diagonal_formula
    assert prof.lower_triangular and prof.injective


def test_injectivity_p3_m2_j1():
    prof = injectivity_profile(3, 2, 1)
    assert prof.diagonal == prof.diagonal_formula
    assert prof.target_orders[1:] == [3**t for t in prof.t_formula[1:]]
    assert prof.injective


def _brute_injective(prof):
    cols = [c for c, q in enumerate(prof.source_orders) if q is not None]
    ranges = [range(prof.source_orders[c]) for c in cols]
    for combo in itertools.product(*ranges):
        if not any(combo):
            continue
        image = []
        for r, q in enumerate(prof.target_orders):
            val = sum(prof.matrix[r][c] * v for c, v in zip(cols, combo))
            image.append(val if q is None else val % q)
        if not any(image):
            return False
    return prof.matrix[0][0] != 0


@pytest.mark.parametrize("p,m,j", [(2, 1, 1), (2, 2, 1), (2, 2, 2), (2, 3, 2), (2, 3, 3), (3, 1, 1), (3, 2, 1), (3, 2, 2)])
def test_injectivity_against_brute_force(p, m, j):
    prof = injectivity_profile(p, m, j)
    assert prof.injective == _brute_injective(prof)


@pytest.mark.parametrize("p,m,j", [(2, 2, 2), (2, 3, 2), (3, 2, 1), (3, 2, 2)])
def test_profile_orders_match_cellular_oracle(p, m, j):
    prof = injectivity_profile(p, m, j)
    n = p**m
    zeta = lam(n, p ** (j - 1))
    for i in range(1, p**j):
        zeta = zeta + lam(n, i)
    for label, q in zip(prof.labels, prof.target_orders):
        h = homotopy_group(trivial(n, 2 * label) - zeta)
        assert h.order == q
    for label, q in zip(prof.labels, prof.source_orders):
        h = homotopy_group(phi(label, n) - zeta)
        assert h.order == q


def test_injectivity_fails_beyond_first_level_frozen():
    # exchange relations kill a_{zeta - phi_i} u_{phi_i} on the diagonal
    prof = injectivity_profile(2, 2, 2)
    assert prof.diagonal == [1, 2, 2, 0, 1]
    assert prof.diagonal_formula == [1, 2, 2, 1, 1]
    assert prof.lower_triangular and not prof.injective
    prof = injectivity_profile(2, 3, 2)
    assert prof.diagonal == [1, 2, 2, 2, 1] and not prof.injective


def test_t_exponent_values():
    # labels {1, 2, 3} + {2} over C_16 at j = 2: valuations 0, 1, 0, 1
    assert [t_exponent(2, 4, 2, i) for i in (0, 1, 2, 3)] == [3, 3, 4, 4]
    assert [t_exponent(3, 1, 1, i) for i in (0, 1, 2)] == [1, 1, 1]


def test_injectivity_domain():
    with pytest.raises(DomainError):
        injectivity_profile(2, 2, 3)


# ---------------------------------------------------------------- basis and conjugation


def test_basis_examples():
    for p, m in ((2, 2), (3, 2)):
        n = p**m
        b = basis_monomial(0, 1, p, m)
        assert str(b) == "alpha_phi1" and b.res_e_exponent == 1
        b = basis_monomial(1, 0, p, m)
        assert str(b) == f"alpha_phi{n}" and b.res_e_exponent == n
        b = basis_monomial(0, p + 1, p, m)
        assert str(b) == f"alpha_phi{p}*alpha_phi1" and b.res_e_exponent == p + 1
        assert b.degree_matches and b.leading_unit


@pytest.mark.parametrize("p,m", [(2, 1), (2, 2), (3, 1), (3, 2)])
def test_basis_leading_coefficient_is_one(p, m):
    for k in range(2):
        for i in range(p**m):
            b = basis_monomial(k, i, p, m)
            assert b.degree_matches and b.leading_unit


def test_conj_ring():
    c = conj_ring(4)
    assert c.generator_degree == VirtualRep.of(2, 1, sigma=1)
    assert c.powers[0][1] == VirtualRep.of(2, 0) and c.powers[0][2] == 0
    assert [e for _, _, e in c.powers] == [0, 1, 2, 3, 4]
    assert c.matches_decomposition
    assert c.as_dict()["powers"][2]["res_e"] == "x^2"
