import random

import pytest

from fthreshold.gf import make_field
from fthreshold.poly import BinaryForm, form_gcd

# filled in by test_acceptance.py, printed at the end of the run
ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE):
        status, note = ACCEPTANCE[key]
        terminalreporter.write_line("criterion %2d: %s  %s" % (key, status, note))


def random_form(F, d, rng):
    while True:
        coeffs = [F.random_code(rng) for _ in range(d + 1)]
        if any(coeffs):
            return BinaryForm(F, coeffs)


def random_coprime_triple(F, rng, max_deg=10):
    while True:
        fs = [random_form(F, rng.randint(1, max_deg), rng) for _ in range(3)]
        g = form_gcd(form_gcd(fs[0], fs[1]), fs[2])
        if g.degree == 0:
            return fs


def random_linear_product(F, rng, max_deg=12, max_forms=5):
    """A product of powers of distinct linear forms over F (which must be a prime field)."""
    pool = [BinaryForm(F, (1, c)) for c in range(F.p)] + [BinaryForm(F, (0, 1))]
    k = rng.randint(1, min(max_forms, len(pool)))
    forms = rng.sample(pool, k)
    total = rng.randint(k, max_deg)
    mults = [1] * k
    for _ in range(total - k):
        mults[rng.randrange(k)] += 1
    G = None
    for f, m in zip(forms, mults):
        f = f**m
        G = f if G is None else G * f
    return G, sorted(mults)


@pytest.fixture
def rng():
    return random.Random(12345)


@pytest.fixture(params=[2, 3, 5, 7])
def prime_field(request):
    return make_field(request.param, 1)


# independent oracles: they use only Field methods, never the kernels or syzygy code


def hand_rank(F, rows, ncols):
    M = [list(r) for r in rows]
    rank = 0
    for c in range(ncols):
        sel = next((i for i in range(rank, len(M)) if M[i][c]), None)
        if sel is None:
            continue
        M[rank], M[sel] = M[sel], M[rank]
        inv = F.inv(M[rank][c])
        M[rank] = [F.mul(inv, x) for x in M[rank]]
        for i in range(rank + 1, len(M)):
            f = M[i][c]
            if f:
                M[i] = [F.sub(a, F.mul(f, b)) for a, b in zip(M[i], M[rank])]
        rank += 1
    return rank


def hand_colength(forms):
    """dim k[x,y]/(forms) summed degree by degree."""
    F = forms[0].field
    top = sum(f.degree for f in forms)
    total = 0
    for d in range(top + 1):
        rows = []
        for g in forms:
            for k in range(d - g.degree + 1):
                row = [0] * (d + 1)
                for i, c in enumerate(g.coeffs):
                    row[i + k] = c
                rows.append(row)
        total += d + 1 - (hand_rank(F, rows, d + 1) if rows else 0)
    return total


def nu_by_coefficients(G, q):
    """max{a : G^a has a monomial x^i y^j with i, j < q}, i.e. G^a outside <x^q, y^q>."""
    d = G.degree
    best = 0
    power = None
    a = 0
    while (a + 1) * d <= 2 * q - 2:
        a += 1
        power = G if power is None else power * G
        D = a * d
        # coeffs[j] multiplies x^(D-j) y^j
        if any(c and D - j < q and j < q for j, c in enumerate(power.coeffs)):
            best = a
    return best
