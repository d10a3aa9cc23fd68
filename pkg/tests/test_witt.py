import itertools
import json

import pytest
from hypothesis import given, strategies as st

from swanlab.errors import ConfigError
from swanlab.field import FieldConfig
from swanlab.oracle import TruncPoly
from swanlab.parser import parse_element
from swanlab.witt import (UnivPoly, build_context, fil_level, fil_membership,
                          fil_prime_membership, ghost_polynomials, q_apply, rescale,
                          restrict, teichmuller_at, verschiebung, witt_add, witt_frobenius,
                          witt_mul, witt_neg, witt_sub)

from conftest import rng_of, seeds


def _poly(terms, nv):
    """Build an integer polynomial from {exponent tuple: coefficient}."""
    out = UnivPoly(nv)
    for exps, c in terms.items():
        mono = UnivPoly.const(c, nv)
        for i, e in enumerate(exps):
            if e:
                mono = mono * UnivPoly.var(i, nv) ** e
        out = out + mono
    return out


def test_first_sum_polynomial_p2():
    # variables (X0, X1, Y0, Y1); over Z, S_1 = X1 + Y1 - X0*Y0
    s1 = ghost_polynomials(2, 1, "add")[1]
    want = _poly({(0, 1, 0, 0): 1, (0, 0, 0, 1): 1, (1, 0, 1, 0): -1}, 4)
    assert s1 == want


def test_first_sum_polynomial_p3():
    s1 = ghost_polynomials(3, 1, "add")[1]
    want = _poly({(0, 1, 0, 0): 1, (0, 0, 0, 1): 1, (2, 0, 1, 0): -1, (1, 0, 2, 0): -1}, 4)
    assert s1 == want


def test_q1_linear_part_p2():
    q1 = ghost_polynomials(2, 1, "q")[1]
    linear = _poly({(2, 0, 1, 0): 1, (0, 1, 0, 1): 1}, 4)
    assert (q1 - linear).in_ideal_of_products([2, 3])


@pytest.mark.parametrize("p", [2, 3])
@pytest.mark.parametrize("m", [0, 1, 2, 3])
def test_q_polynomials_linear_part_and_weight(p, m):
    nv = 2 * (m + 1)
    for i, q in enumerate(ghost_polynomials(p, m, "q")):
        linear = UnivPoly(nv)
        for j in range(i + 1):
            linear = linear + UnivPoly.var(j, nv) ** (p ** (i - j)) * UnivPoly.var(m + 1 + j, nv)
        assert (q - linear).in_ideal_of_products(range(m + 1, nv))
        weight = [p**j for j in range(m + 1)] + [0] * (m + 1)
        assert q.weights(weight) == {p**i}


def _teich(a, p, mod):
    t = a % mod
    while pow(t, p, mod) != t:
        t = pow(t, p, mod)
    return t


def _to_int(v, p):
    mod = p ** len(v)
    return sum(p**i * _teich(c.c[0], p, mod) for i, c in enumerate(v.comps)) % mod


@pytest.mark.parametrize("p,m", [(2, 0), (2, 2), (3, 1), (3, 3), (5, 1), (5, 2)])
def test_prime_field_witt_vectors_are_integers_mod_p_power(p, m):
    ctx = build_context(p, m)
    mod = p ** (m + 1)
    elems = range(p)
    vecs = [ctx.vector([TruncPoly(p, 1, [a]) for a in digits])
            for digits in itertools.islice(itertools.product(elems, repeat=m + 1), 60)]
    for a in vecs[:20]:
        for b in vecs:
            assert _to_int(witt_add(a, b), p) == (_to_int(a, p) + _to_int(b, p)) % mod
            assert _to_int(witt_mul(a, b), p) == (_to_int(a, p) * _to_int(b, p)) % mod
        assert _to_int(witt_neg(a), p) == (-_to_int(a, p)) % mod


def _random_trunc(ctx, k, rng):
    return ctx.vector([TruncPoly.random(ctx.p, k, rng) for _ in range(ctx.m + 1)])


@given(st.sampled_from([(2, 1), (2, 2), (3, 1), (3, 2), (5, 1)]), seeds)
def test_group_laws_over_truncated_ring(pm, seed):
    p, m = pm
    ctx = build_context(p, m)
    rng = rng_of(seed)
    x, y, z = (_random_trunc(ctx, 3, rng) for _ in range(3))
    assert witt_add(x, y) == witt_add(y, x)
    assert witt_add(witt_add(x, y), z) == witt_add(x, witt_add(y, z))
    assert witt_add(x, witt_neg(x)).is_zero()
    assert witt_sub(witt_add(x, y), y) == x


@given(st.sampled_from([(2, 1), (2, 2), (3, 1), (3, 2)]), seeds)
def test_p_times_is_v_of_f(pm, seed):
    p, m = pm
    ctx = build_context(p, m)
    x = _random_trunc(ctx, 4, rng_of(seed))
    total = x
    for _ in range(p - 1):
        total = witt_add(total, x)
    shifted = restrict(verschiebung(witt_frobenius(x)), m + 1)
    assert total == shifted


@given(st.sampled_from([(2, 1), (3, 2)]), seeds)
def test_q_identity_over_truncated_ring(pm, seed):
    p, m = pm
    ctx = build_context(p, m)
    rng = rng_of(seed)
    x, y = _random_trunc(ctx, 3, rng), _random_trunc(ctx, 3, rng)
    assert witt_add(x, q_apply(x, y)) == rescale(x, y)


def test_q_identity_with_zero_scale_is_zero():
    ctx = build_context(3, 2)
    rng = rng_of(1)
    x = _random_trunc(ctx, 3, rng)
    zero = ctx.vector([TruncPoly(3, 3, [])] * 3)
    assert q_apply(x, zero).is_zero()


def test_witt_over_laurent_elements(gf2y):
    ctx = build_context(2, 1)
    x = ctx.vector([parse_element("pi^-1", gf2y), gf2y.lzero()])
    assert witt_add(x, x).comps == (gf2y.lzero(), parse_element("pi^-2", gf2y))


def test_caps_and_cache(tmp_path, monkeypatch):
    with pytest.raises(ConfigError):
        build_context(7, 1)
    with pytest.raises(ConfigError):
        build_context(2, 4)
    monkeypatch.setenv("SWANLAB_CACHE_DIR", str(tmp_path))
    from swanlab import witt
    monkeypatch.setattr(witt, "_ctx_cache", {})
    ctx = build_context(3, 1)
    path = tmp_path / "witt-p3-m1.json"
    data = json.loads(path.read_text())
    assert data["format"] == "swanlab-wittpoly/1"
    monkeypatch.setattr(witt, "_ctx_cache", {})
    again = build_context(3, 1)
    assert [c.monos for c in again.add_polys] == [c.monos for c in ctx.add_polys]


def test_filtration_levels(gf2y):
    ctx = build_context(2, 1)
    y = gf2y.y
    x = ctx.vector([gf2y.laurent({-1: 1}), gf2y.laurent({-3: y})])
    assert fil_level(x) == 3
    assert fil_membership(x, 3) and not fil_membership(x, 2)
    assert fil_level(ctx.zero_like(gf2y.lzero())) is None


def test_fil_prime_componentwise(gf2y):
    ctx = build_context(2, 1)
    # n = 1: ord_2(2) = 1, so the last component may reach fil_2
    x = ctx.vector([gf2y.lzero(), gf2y.laurent({-2: 1})])
    assert fil_prime_membership(x, 1)
    assert not fil_membership(x, 1)
    # n = 2: ord_2(3) = 0, so fil'_2 = fil_2
    z = ctx.vector([gf2y.laurent({-1: 1}), gf2y.laurent({-3: 1})])
    assert not fil_prime_membership(z, 2)
    assert fil_prime_membership(z, 3)


def test_teichmuller_placement(gf3y):
    ctx = build_context(3, 2)
    a = gf3y.laurent({-1: gf3y.y})
    v = teichmuller_at(ctx, a, 1)
    assert v.comps[1] == a and v.comps[0].is_zero() and v.comps[2].is_zero()
