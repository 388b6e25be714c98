import json
import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import random_form, random_linear_product
from fthreshold.arith import mult_order, truncate
from fthreshold.errors import DomainError, ResourceError
from fthreshold.fpt import (
    CertifiedOnly,
    ClosedFormN3,
    CriticalPointProvenance,
    Degenerate,
    FptConfig,
    TrivialRegion,
    denominator_analysis,
    fpt_homogeneous,
    fpt_n3_closed_form,
    fpt_quasi_homogeneous,
    ft_general,
    lct_expected,
    nu_oracle,
)
from fthreshold.fractal import LinearSystem
from fthreshold.gf import make_field
from fthreshold.parse import Sparse, parse_factored, parse_field, parse_form, parse_forms_list, parse_quasi_homogeneous
from fthreshold.poly import BinaryForm
from fthreshold.syzygy import maximal_ideal


def _qh(text, p, weights, k=1):
    F = make_field(p, k)
    return fpt_quasi_homogeneous(parse_quasi_homogeneous(text, F, weights), weights)


def test_xy_and_lct():
    assert fpt_homogeneous(parse_form("x*y", make_field(3))).value == 1
    assert lct_expected([1, 1, 1]) == Fraction(2, 3)
    assert lct_expected([5, 1, 1, 1]) == Fraction(1, 5)
    assert lct_expected([1, 1]) == 1
    assert lct_expected([1], degree=6, weights=(2, 3)) == Fraction(5, 6)


@pytest.mark.parametrize("p,expected", [(2, Fraction(1, 2)), (3, Fraction(2, 3)), (5, Fraction(3, 5)), (7, Fraction(2, 3))])
def test_three_lines(p, expected):
    F = make_field(p)
    G = parse_form("x*y*(x+y)", F)
    assert fpt_homogeneous(G).value == expected
    assert fpt_n3_closed_form((1, 1, 1), p).value == expected


def test_closed_form_provenance():
    r = fpt_n3_closed_form((1, 1, 1), 5)
    assert isinstance(r.provenance, ClosedFormN3) and r.provenance.case == "2b-ii"
    r = fpt_n3_closed_form((5, 1, 1), 5)
    assert r.value == Fraction(1, 5) and r.provenance.case == "1"
    assert isinstance(fpt_n3_closed_form((1, 1, 1), 3).provenance, TrivialRegion)
    with pytest.raises(DomainError):
        fpt_n3_closed_form((1, 1), 3)


@pytest.mark.parametrize("p,expected", [(2, "1/2"), (3, "2/3"), (5, "4/5"), (7, "5/6"), (11, "9/11"), (13, "5/6")])
def test_cusp(p, expected):
    assert _qh("x^3+y^2", p, (2, 3)).value == Fraction(expected)


def test_quasi_homogeneous_special_cases():
    assert _qh("x^2*y^3", 5, (1, 1)).value == Fraction(1, 3)  # homogeneous: delegated
    assert _qh("x^2*y^3", 5, (2, 7)).value == Fraction(1, 3)
    r = _qh("x^4*(x^3+y^2)", 7, (2, 3))
    assert r.value == Fraction(1, 4) and isinstance(r.provenance, Degenerate)
    # fpt(f^3) = fpt(f) / 3 below the degenerate range
    r = _qh("(x^3+y^2)^3", 7, (2, 3))
    assert r.value == Fraction(5, 18)
    with pytest.raises(DomainError):
        parse_quasi_homogeneous("x^3+y^3", make_field(5), (2, 3))


def test_nu_oracle_examples():
    F = make_field(3)
    m = maximal_ideal(F)
    x = parse_form("x", F)
    assert [nu_oracle(x, m, e) for e in (1, 2, 3)] == [2, 8, 26]
    assert nu_oracle(parse_form("x^2", F), m, 1) == 1
    with pytest.raises(ResourceError):
        nu_oracle(x, m, 12, cap=1000)


def test_denominator_analysis():
    assert denominator_analysis(Fraction(97, 875), 5) == (7, 3)
    r = fpt_homogeneous(parse_factored("(x*y)^49*((x+y)*(x+2*y)*(x+4*y))^13", make_field(7)))
    assert r.denominator_analysis == {"k": 1, "p_power": 3}


def test_certified_interval():
    F = make_field(5)
    system = LinearSystem.from_forms(parse_forms_list("x,y,x+y,x+2*y", F))
    m = maximal_ideal(F)
    short = ft_general(system, (1, 1, 6, 7), m, FptConfig(e_max=2))
    assert isinstance(short.provenance, CertifiedOnly) and short.value is None
    assert short.interval == (Fraction(16, 125), Fraction(2, 15))
    full = ft_general(system, (1, 1, 6, 7), m)
    assert full.value == Fraction(2, 15)
    lo, hi = short.interval
    assert lo <= full.value <= hi
    js = short.to_json()
    assert js["value"] == {"lo": "16/125", "hi": "2/15"} and js["provenance"]["kind"] == "CertifiedOnly"


def test_e_max_from_environment(monkeypatch):
    monkeypatch.setenv("FTHRESHOLD_E_MAX", "7")
    assert FptConfig().e_max == 7
    monkeypatch.setenv("FTHRESHOLD_E_MAX", "seven")
    with pytest.raises(DomainError):
        FptConfig()


def test_json_schema():
    r = fpt_homogeneous(parse_factored("x^2*y^2*(x^2+2*x*y+3*y^2)^7", parse_field("p=5;deg=2")))
    js = json.loads(json.dumps(r.to_json(diagnostics=True)))
    assert js["value"] == "97/875" and js["lambda"] == "1/9"
    assert js["critical_point"] == {"a": [27, 27, 97, 97], "q": 125}
    assert js["denominator_analysis"] == {"k": 7, "p_power": 3}
    assert js["provenance"]["kind"] == "CriticalPoint"
    assert js["diagnostics"][-1]["upper"] is True


def test_debug_oracle_cross_check():
    cfg = FptConfig(debug_oracle=True)
    assert fpt_homogeneous(parse_form("x*y*(x+y)*(x+2*y)", make_field(5)), cfg).exact


def test_rejects_bad_input():
    F = make_field(5)
    with pytest.raises(DomainError):
        fpt_homogeneous(BinaryForm.constant(F))
    system = LinearSystem.from_forms(parse_forms_list("x,y", F))
    with pytest.raises(DomainError):
        ft_general(system, (1, 0), maximal_ideal(F))
    with pytest.raises(DomainError):
        ft_general(system, (1, 2, 3), maximal_ideal(F))


# invariants on random products of linear forms

products = st.tuples(st.sampled_from([2, 3, 5, 7]), st.integers(0, 10**6))


def _random_product(p, seed, max_deg=14):
    return random_linear_product(make_field(p), random.Random(seed), max_deg=max_deg, max_forms=6)


@settings(max_examples=80, deadline=None)
@given(products)
def test_value_range_and_degenerate_rule(ps):
    p, seed = ps
    G, mults = _random_product(p, seed)
    r = fpt_homogeneous(G)
    d = sum(mults)
    lam = Fraction(2, d)
    if 2 * max(mults) > d:
        assert isinstance(r.provenance, Degenerate) and r.value == Fraction(1, max(mults))
        return
    if r.exact:
        assert 0 < r.value <= min(1, lam)
    else:
        lo, hi = r.interval
        assert 0 < lo < hi == lam


@settings(max_examples=80, deadline=None)
@given(products)
def test_forbidden_interval(ps):
    p, seed = ps
    G, mults = _random_product(p, seed)
    r = fpt_homogeneous(G)
    lam = r.lam
    if not r.exact or lam.denominator % p == 0 or lam > 1:
        return
    mu = mult_order(p, lam.denominator)
    assert not truncate(lam, p, mu) < r.value < lam


@settings(max_examples=80, deadline=None)
@given(products)
def test_critical_point_bound(ps):
    p, seed = ps
    G, mults = _random_product(p, seed)
    r = fpt_homogeneous(G)
    if not isinstance(r.provenance, CriticalPointProvenance):
        return
    c = r.critical_point.reduced()
    if c.q == 1 or all(x % p == 0 for x in c.a):
        return
    n, d = len(mults), sum(mults)
    assert 0 < r.lam - r.value <= Fraction(n - 2, c.q * d)


@settings(max_examples=40, deadline=None)
@given(products, st.integers(1, 2))
def test_nu_matches_threshold(ps, e):
    p, seed = ps
    G, _ = _random_product(p, seed, max_deg=10)
    r = fpt_homogeneous(G)
    if not r.exact or p**e * 2 > 60:
        return
    q = p**e
    assert nu_oracle(G, maximal_ideal(G.field), e) == math.ceil(q * r.value) - 1


def test_extension_field_inputs():
    # an irreducible quadratic factor splits over F_4
    r = fpt_homogeneous(parse_form("x*y*(x^2+x*y+y^2)", make_field(2)))
    assert r.extra["factorization"]["field"]["deg"] == 2
    assert r.exact and r.value <= Fraction(1, 2)


# quasi-homogeneous cross-checks against nu computed on g itself


def _nu_g(g: Sparse, q):
    best, a = 0, 0
    power = Sparse.const(g.field, 1)
    top = 2 * q
    while True:
        a += 1
        power = power * g
        if not power.terms:
            break
        if min(i + j for i, j in power.terms) > top:
            break
        if any(i < q and j < q for i, j in power.terms):
            best = a
        elif min(max(i, j) for i, j in power.terms) >= q:
            break
    return best


QH_CASES = [
    ("x^3+y^2", (2, 3)),
    ("x^5+y^2", (2, 5)),
    ("x^4+y^3", (3, 4)),
    ("x*(x^3+y^2)", (2, 3)),
    ("y*(x^5+x^2*y^2)", (2, 3)),
    ("x^6+x^3*y^2+y^4", (4, 6)),
    ("x^2*y*(x^3+y)", (1, 3)),
]


@pytest.mark.parametrize("p", [2, 3, 5, 7])
@pytest.mark.parametrize("text,weights", QH_CASES)
def test_quasi_homogeneous_against_nu(text, weights, p):
    F = make_field(p)
    g = parse_quasi_homogeneous(text, F, weights)
    r = fpt_quasi_homogeneous(g, weights)
    assert r.exact
    for e in (1, 2):
        q = p**e
        assert _nu_g(g, q) == math.ceil(q * r.value) - 1, (e, r.value)


@settings(max_examples=12, deadline=None)
@given(st.sampled_from([(5, (2, 3)), (7, (2, 3)), (7, (3, 5)), (11, (2, 5)), (5, (3, 4))]), st.integers(0, 10**6))
def test_square_free_quasi_homogeneous_shape(case, seed):
    p, (u, v) = case
    F = make_field(p)
    rng = random.Random(seed)
    D = rng.randint(1, 2)
    while True:
        H = random_form(F, D, rng)
        if H.coeffs[0] and H.coeffs[-1] and _square_free(H):
            break
    # g = H(X^v, Y^u)
    terms = {(v * (D - k), u * k): c for k, c in enumerate(H.coeffs) if c}
    g = Sparse(F, terms)
    r = fpt_quasi_homogeneous(g, (u, v))
    lam = Fraction(u + v, u * v * D)
    assert r.exact
    assert r.value == min(1, lam) or any(r.value == truncate(lam, p, e) for e in range(1, 40))


def _square_free(H):
    from fthreshold.poly import factor_linear

    return max(factor_linear(H).multiplicities) == 1
