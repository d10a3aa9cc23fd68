import random

import pytest
from hypothesis import given, strategies as st

from swanlab.field import FieldConfig
from swanlab.oracle import (Report, TruncPoly, brute_reduce, fil_prime_by_generators,
                            fil_prime_generator_sample, random_fil_member,
                            random_fil_prime_componentwise, verify_frobenius_mod_p,
                            verify_ghost_components, verify_prime_field_addition,
                            verify_q_identity)
from swanlab.parser import parse_element
from swanlab.ramification import CharacterClass, swan
from swanlab.witt import build_context, fil_membership, fil_prime_membership

from conftest import rng_of, seeds


def vec(cfg, *comps):
    return build_context(cfg.p, len(comps) - 1).vector([parse_element(c, cfg) for c in comps])


def test_trunc_poly_arithmetic():
    t = TruncPoly(2, 3, [0, 1])
    assert t ** 3 == TruncPoly(2, 3, [])
    one = TruncPoly(2, 3, [1])
    assert (t + one) * (t + one) == TruncPoly(2, 3, [1, 0, 1])
    assert t * 3 == t
    assert TruncPoly(3, 2, [4, 5]) == TruncPoly(3, 2, [1, 2])
    assert (t - t).is_zero()


@pytest.mark.parametrize("p,m", [(2, 2), (3, 1), (5, 1)])
def test_universal_polynomials_against_integers(p, m):
    assert verify_ghost_components(p, m, trials=10).ok
    assert verify_frobenius_mod_p(p, m).ok
    assert verify_prime_field_addition(p, m, trials=50).ok


@pytest.mark.parametrize("zero_y", [False, True])
def test_q_identity_reports(zero_y):
    r = verify_q_identity(2, 2, 3, trials=30, seed=5, zero_y=zero_y)
    assert r.ok and r.trials == 30
    assert r.to_json()["failures"] == 0


def test_report_json_lists_witnesses():
    r = Report("demo", trials=3, failures=["a", "b"])
    assert not r.ok
    assert r.to_json() == {"name": "demo", "trials": 3, "failures": 2,
                           "witnesses": ["a", "b"], "ok": False}


def test_brute_reduce_examples():
    p2 = FieldConfig(2)
    rep, lvl = brute_reduce(vec(p2, "pi^-4 + pi^-1"))
    assert lvl == 0 and rep.is_zero()
    assert brute_reduce(vec(p2, "pi^-2"))[1] == 1
    p2y = FieldConfig(2, residue_kind="rational")
    assert brute_reduce(vec(p2y, "y*pi^-2"))[1] == 2
    assert brute_reduce(vec(p2, "pi^-1", "0"))[1] == 2


def test_brute_reduce_scope():
    with pytest.raises(ValueError):
        brute_reduce(vec(FieldConfig(5), "pi^-1"))


@given(st.sampled_from([(2, 0), (2, 1), (3, 0), (3, 1)]), st.integers(1, 6), seeds)
def test_brute_level_bounds_swan(pm, n, seed):
    p, m = pm
    cfg = FieldConfig(p, residue_kind="rational")
    ctx = build_context(p, m)
    x = random_fil_member(cfg, ctx, n, rng_of(seed))
    _, lvl = brute_reduce(x, depth=2, max_states=300)
    assert swan(CharacterClass(cfg, x)) <= lvl


def test_fil_prime_example():
    cfg = FieldConfig(2)
    x = vec(cfg, "0", "pi^-2")
    assert fil_prime_by_generators(x, 1)
    assert not fil_membership(x, 1)


@pytest.mark.parametrize("p,m,n", [(2, 1, 1), (2, 2, 3), (2, 2, 7), (3, 1, 2), (3, 2, 8), (3, 1, 4)])
def test_fil_prime_both_directions(p, m, n):
    cfg = FieldConfig(p, residue_kind="rational")
    assert fil_prime_generator_sample(cfg, n, m, trials=20, seed=n).ok


@given(st.sampled_from([(2, 1), (2, 2), (3, 1), (3, 2)]), st.integers(1, 12), seeds)
def test_generator_rule_agrees_with_componentwise_rule(pm, n, seed):
    p, m = pm
    cfg = FieldConfig(p, residue_kind="rational")
    ctx = build_context(p, m)
    rng = random.Random(seed)
    x = random_fil_prime_componentwise(cfg, ctx, n + rng.randrange(2), rng)
    assert fil_prime_by_generators(x, n) == fil_prime_membership(x, n)
