import random

import pytest

from fthreshold import kernels
from fthreshold.gf import make_field

BACKENDS = sorted(kernels.available_backends())
FIELDS = [(2, 1), (2, 8), (5, 3), (7, 1), (3, 5)]


def _rank_by_hand(F, rows, ncols):
    # plain Gaussian elimination through the Field methods, independent of the kernels
    M = [list(r) for r in rows]
    rank = 0
    for c in range(ncols):
        sel = next((i for i in range(rank, len(M)) if M[i][c]), None)
        if sel is None:
            continue
        M[rank], M[sel] = M[sel], M[rank]
        inv = F.inv(M[rank][c])
        M[rank] = [F.mul(inv, x) for x in M[rank]]
        for i in range(len(M)):
            if i != rank and M[i][c]:
                f = M[i][c]
                M[i] = [F.sub(a, F.mul(f, b)) for a, b in zip(M[i], M[rank])]
        rank += 1
    return M[:rank]


def _mul_by_hand(F, f, g):
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        for j, b in enumerate(g):
            out[i + j] = F.add(out[i + j], F.mul(a, b))
    return out


def test_backend_selected():
    assert kernels.BACKEND in BACKENDS


@pytest.mark.parametrize("backend", BACKENDS)
@pytest.mark.parametrize("pk", FIELDS)
def test_rref_matches_reference(backend, pk):
    F = make_field(*pk)
    rng = random.Random(sum(pk))
    for nr, nc in ((5, 7), (12, 9), (20, 21)):
        rows = [[F.random_code(rng) if rng.random() < 0.6 else 0 for _ in range(nc)] for _ in range(nr)]
        got, piv = kernels.rref(F, rows, nc, backend=backend)
        want = _rank_by_hand(F, rows, nc)
        assert [list(r) for r in got] == want
        assert len(piv) == len(want)


@pytest.mark.parametrize("backend", BACKENDS)
@pytest.mark.parametrize("pk", FIELDS)
def test_polymul_matches_reference(backend, pk):
    F = make_field(*pk)
    rng = random.Random(7 * sum(pk))
    for la, lb in ((1, 1), (5, 9), (30, 17)):
        f = [F.random_code(rng) for _ in range(la)]
        g = [F.random_code(rng) for _ in range(lb)]
        assert list(kernels.polymul(f, g, F=F, backend=backend)) == _mul_by_hand(F, f, g)


def test_backends_agree():
    if len(BACKENDS) < 2:
        pytest.skip("compiled extension not built")
    F = make_field(2, 8)
    rng = random.Random(1)
    rows = [[F.random_code(rng) for _ in range(33)] for _ in range(30)]
    a = kernels.rref(F, rows, 33, backend="python")
    b = kernels.rref(F, rows, 33, backend="cython")
    assert [list(r) for r in a[0]] == [list(r) for r in b[0]] and list(a[1]) == list(b[1])
