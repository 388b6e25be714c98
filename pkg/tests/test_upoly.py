import random

import pytest

from fthreshold import upoly
from fthreshold.gf import make_field


def _prod(F, factors):
    out = [1]
    for h, m in factors:
        for _ in range(m):
            out = upoly.mul(F, out, h)
    return out


@pytest.mark.parametrize("pk", [(2, 1), (3, 1), (5, 2), (2, 3)])
def test_divmod_identity(pk):
    F = make_field(*pk)
    rng = random.Random(5)
    for _ in range(30):
        f = upoly.trim([F.random_code(rng) for _ in range(rng.randint(1, 12))])
        g = upoly.trim([F.random_code(rng) for _ in range(rng.randint(1, 6))])
        if not g:
            continue
        q, r = upoly.divmod_(F, f, g)
        assert upoly.add(F, upoly.mul(F, q, g), r) == f
        assert upoly.deg(r) < upoly.deg(g)


def test_gcd_of_products():
    F = make_field(7)
    a = [F.from_int(1), F.from_int(1)]  # 1 + t
    b = [F.from_int(2), F.from_int(1)]
    c = [F.from_int(3), 0, F.from_int(1)]
    g = upoly.gcd(F, upoly.mul(F, a, c), upoly.mul(F, b, c))
    assert g == upoly.monic(F, c)


def test_squarefree_decomposition_with_pth_powers():
    F = make_field(3)
    h1 = [F.from_int(1), 1]  # t + 1
    h2 = [1, 0, 1]  # t^2 + 1, irreducible mod 3
    f = _prod(F, [(h1, 3), (h2, 2)])
    parts = upoly.squarefree_decomposition(F, f)
    assert _prod(F, parts) == upoly.monic(F, f)
    assert sorted(m for _, m in parts) == [2, 3]


def test_ddf_and_roots():
    F = make_field(5)
    # (t-1)(t-2)(t^2+2), t^2+2 irreducible mod 5
    lin = _prod(F, [([F.from_int(-1), 1], 1), ([F.from_int(-2), 1], 1)])
    f = upoly.mul(F, lin, [F.from_int(2), 0, 1])
    assert upoly.ddf_degrees(F, f) == {1, 2}
    roots = upoly.find_roots(F, f)
    assert sorted(F.to_vector(r)[0] for r in roots) == [1, 2]
    assert sorted(upoly.split_roots(F, lin, random.Random(0))) == sorted(roots)


def test_roots_over_extension():
    F = make_field(2, 4)
    rng = random.Random(2)
    rs = set()
    while len(rs) < 5:
        rs.add(F.random_code(rng))
    f = _prod(F, [([F.neg(r), 1], 1) for r in rs])
    assert set(upoly.find_roots(F, f, seed=3)) == rs
