import random
from fractions import Fraction

import pytest
from hypothesis import settings, strategies as st

from swanlab.field import FieldConfig

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@pytest.fixture
def gf2y():
    return FieldConfig(2, residue_kind="rational")


@pytest.fixture
def gf3y():
    return FieldConfig(3, residue_kind="rational")


@pytest.fixture
def gf3():
    return FieldConfig(3)


CONFIGS = [
    FieldConfig(2), FieldConfig(3), FieldConfig(5),
    FieldConfig(2, residue_kind="rational"), FieldConfig(3, residue_kind="rational"),
    FieldConfig(5, residue_kind="rational"), FieldConfig(2, 2), FieldConfig(2, 2, residue_kind="rational"),
    FieldConfig(3, 2, residue_kind="rational"),
]

configs = st.sampled_from(CONFIGS)
seeds = st.integers(min_value=0, max_value=2**32 - 1)


def rng_of(seed):
    return random.Random(seed)


@st.composite
def residues(draw, cfg=None, nonzero=False, max_deg=2):
    cfg = cfg or draw(configs)
    rng = rng_of(draw(seeds))
    while True:
        f = cfg.random_residue(rng, max_deg=max_deg)
        if not (nonzero and f.is_zero()):
            return f


@st.composite
def laurents(draw, cfg, lo=-5, hi=2, max_deg=2):
    rng = rng_of(draw(seeds))
    return cfg.random_laurent(rng, lo=lo, hi=hi, density=Fraction(1, 2), max_deg=max_deg)


_ACCEPTANCE = []


def record_acceptance(line):
    """Print an acceptance verdict now and repeat it in the terminal summary."""
    print(line)
    _ACCEPTANCE.append(line)


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_ACCEPTANCE, key=lambda s: int(s.split()[1])):
            terminalreporter.write_line(line)
