import pytest
from hypothesis import given, strategies as st

from swanlab.errors import DivisionByZero, ParseError
from swanlab.field import FieldConfig
from swanlab.parser import parse_element, parse_residue, render

from conftest import CONFIGS, configs, laurents, residues


def test_monomial(gf2y):
    x = parse_element("y*pi^-2", gf2y)
    assert x == gf2y.laurent({-2: gf2y.y})


def test_rational_coefficient_support(gf3y):
    x = parse_element("(y+1)/y * pi^-3 + 1", gf3y)
    assert x.exponents() == [-3, 0]
    y = gf3y.y
    assert x.coefficient(-3) == (y + 1) / y
    assert x.coefficient(0) == gf3y.one


def test_trivial_character_expression():
    cfg = FieldConfig(2)
    x = parse_element("pi^-4 + pi^-1", cfg)
    assert x == cfg.laurent({-4: 1, -1: 1})


def test_precedence_and_unary_minus(gf3y):
    y = gf3y.y
    assert parse_element("-y + 2*y^2", gf3y) == gf3y.laurent({0: -y + y * y * 2})
    assert parse_element("1 - 2 - 3", gf3y) == gf3y.laurent({0: gf3y.constant(-4)})
    assert parse_element("(pi^-1)^2", gf3y) == gf3y.laurent({-2: 1})
    assert parse_element("2/pi", gf3y) == gf3y.laurent({-1: 2})


def test_integers_reduce_mod_p(gf3):
    assert parse_element("7", gf3) == gf3.laurent({0: 1})
    assert parse_element("3*pi", gf3).is_zero()


def test_generator_symbol():
    cfg = FieldConfig(2, 2)
    g = parse_element("g", cfg)
    assert parse_element("g^2 + g + 1", cfg).is_zero()
    assert g.coefficient(0) == cfg.g


@pytest.mark.parametrize("src,pos", [
    ("pi^-", 4),
    ("y +", 3),
    ("(y", 2),
    ("y $ 1", 2),
    ("z", 0),
    ("y pi", 2),
])
def test_parse_errors_carry_position(gf2y, src, pos):
    with pytest.raises(ParseError) as info:
        parse_element(src, gf2y)
    assert info.value.position == pos


def test_y_is_unknown_over_perfect_field(gf3):
    with pytest.raises(ParseError) as info:
        parse_element("y*pi", gf3)
    assert "y" not in info.value.expected


def test_division_rules(gf2y):
    with pytest.raises(DivisionByZero):
        parse_element("1/0", gf2y)
    with pytest.raises(ParseError):
        parse_element("1/(pi + 1)", gf2y)
    with pytest.raises(ParseError):
        parse_element("(1 + pi)^-1", gf2y)
    assert parse_element("(y*pi^2)^-1", gf2y) == gf2y.laurent({-2: gf2y.one / gf2y.y})


def test_parse_residue(gf3y):
    assert parse_residue("y^2 + 1", gf3y) == gf3y.y ** 2 + 1
    with pytest.raises(ParseError):
        parse_residue("y*pi", gf3y)


@given(configs, st.data())
def test_render_parse_roundtrip(cfg, data):
    x = data.draw(laurents(cfg))
    assert parse_element(render(x), cfg) == x


@given(configs, st.data())
def test_render_residue_roundtrip(cfg, data):
    f = data.draw(residues(cfg))
    assert parse_residue(render(f), cfg) == f


def test_render_is_canonical(gf2y):
    assert render(parse_element("pi^-2*y + pi^-2*y^2 + 0*pi", gf2y)) == "(y^2 + y)*pi^-2"
    assert render(gf2y.lzero()) == "0"
