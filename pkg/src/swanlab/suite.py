"""Curated rank-one characters used by the self-test and the test-suite.

Each entry names the field (p, q, residue kind) and the Witt components as
expression strings.  A few entries carry hand-derived conductor values.
"""

from __future__ import annotations

from dataclasses import dataclass

from .field import FieldConfig
from .parser import parse_element
from .ramification import CharacterClass


@dataclass(frozen=True)
class CuratedCharacter:
    name: str
    p: int
    residue: str
    witt: tuple
    q: int = 0
    expected: tuple = ()

    def config(self) -> FieldConfig:
        q = self.q or self.p
        e = 1
        while self.p**e < q:
            e += 1
        return FieldConfig(self.p, e, residue_kind=self.residue)

    def character(self) -> CharacterClass:
        cfg = self.config()
        return CharacterClass.from_components(cfg, [parse_element(s, cfg) for s in self.witt])


def _c(name, p, residue, witt, q=0, **expected):
    return CuratedCharacter(name, p, residue, tuple(witt), q, tuple(sorted(expected.items())))


# Expected values use the keys of the conductor JSON: graded forms are
# written as (alpha, beta) strings.
CURATED = [
    _c("p3-pi2", 3, "perfect", ["pi^-2"], sw=2, rsw=("0", "2"), sw_mod=2, rsw_mod=("0", "2"),
       log_slope=2, slope=3, log_char_point=("0", "1"), char_point=("0", "1")),
    _c("p2-ypi2", 2, "rational", ["y*pi^-2"], sw=2, rsw=("1", "0"), sw_mod=1,
       rsw_mod="unsupported_range", slope=None),
    _c("p2-V-pi1", 2, "perfect", ["pi^-1", "0"], sw=2, rsw=("0", "1")),
    _c("p2-pi3", 2, "perfect", ["pi^-3"], sw=3, sw_mod=3),
    _c("p2-trivial", 2, "perfect", ["pi^-4 + pi^-1"], sw=0, sw_mod=0),
    _c("p2-pi1", 2, "perfect", ["pi^-1"], sw=1, sw_mod=1),
    _c("p2-pi2", 2, "perfect", ["pi^-2"], sw=1),
    _c("p2-pi5-pi2", 2, "perfect", ["pi^-5 + pi^-2"]),
    _c("p2-m1-top", 2, "perfect", ["0", "pi^-3"]),
    _c("p2-m1-mixed", 2, "perfect", ["pi^-3", "pi^-1"]),
    _c("p2-m1-low", 2, "perfect", ["pi^-1", "pi^-5"]),
    _c("p2-m2-V2", 2, "perfect", ["pi^-1", "0", "0"]),
    _c("p2-m2-mixed", 2, "perfect", ["0", "pi^-1", "pi^-3"]),
    _c("p2-ypi4", 2, "rational", ["y*pi^-4"]),
    _c("p2-y2pi4", 2, "rational", ["y^2*pi^-4 + y*pi^-1"]),
    _c("p2-ratpi3", 2, "rational", ["(y + 1)/y*pi^-3"]),
    _c("p2-m1-ypi1", 2, "rational", ["y*pi^-1", "pi^-2"]),
    _c("p2-m1-ytop", 2, "rational", ["0", "y*pi^-2"]),
    _c("p2-m1-ymix", 2, "rational", ["pi^-2", "y*pi^-3"]),
    _c("p3-pi3-pi1", 3, "perfect", ["pi^-3 + pi^-1"]),
    _c("p3-pi9", 3, "perfect", ["pi^-9"], sw=1),
    _c("p3-m1", 3, "perfect", ["pi^-1", "pi^-2"]),
    _c("p3-m1-top", 3, "perfect", ["0", "2*pi^-5"]),
    _c("p3-ypi3", 3, "rational", ["y*pi^-3"]),
    _c("p3-y2pi6", 3, "rational", ["y^2*pi^-6 + pi^-2"]),
    _c("p3-m1-ypi1", 3, "rational", ["y*pi^-1", "0"]),
    _c("p3-m1-ymix", 3, "rational", ["pi^-1", "y*pi^-3"]),
    _c("p5-pi2", 5, "perfect", ["pi^-2"]),
    _c("p5-ypi5", 5, "rational", ["y*pi^-5"]),
    _c("p5-m1", 5, "perfect", ["pi^-1", "0"]),
    _c("gf4-gpi3", 2, "perfect", ["g*pi^-3"], q=4),
    _c("gf9-gpi2", 3, "perfect", ["g*pi^-2 + pi^-1"], q=9),
]


def curated(name: str) -> CuratedCharacter:
    for c in CURATED:
        if c.name == name:
            return c
    raise KeyError(name)
