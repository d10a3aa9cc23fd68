"""Exact arithmetic in the residue field F and in K = F[pi, 1/pi].

F is either a finite field GF(q) (perfect residue field, empty p-basis) or
the rational function field GF(q)(y) (p-basis {y}).  GF(q) is realised as
GF(p)[t]/(modulus) with a Conway polynomial unless the caller supplies an
irreducible modulus.  Finite-field elements are small integers whose base-p
digits are the coefficients in t; all operations go through lookup tables.

Polynomials over GF(q) are tuples of field integers, lowest degree first,
without trailing zeros (the zero polynomial is the empty tuple).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

from .errors import ConfigError, DivisionByZero, NotAPthPower

PERFECT = "perfect"
RATIONAL = "rational"

# Conway polynomials, coefficients lowest degree first.
CONWAY = {
    (2, 1): (1, 1),
    (2, 2): (1, 1, 1),
    (2, 3): (1, 1, 0, 1),
    (2, 4): (1, 1, 0, 0, 1),
    (3, 1): (1, 1),
    (3, 2): (2, 2, 1),
    (3, 3): (1, 2, 0, 1),
    (3, 4): (2, 0, 0, 2, 1),
    (5, 1): (3, 1),
    (5, 2): (2, 4, 1),
    (5, 3): (3, 3, 0, 1),
    (5, 4): (2, 4, 4, 0, 1),
    (7, 1): (4, 1),
    (7, 2): (3, 6, 1),
    (7, 3): (4, 0, 6, 1),
}

MAX_Q = 1024


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def ord_p(n: int, p: int) -> int:
    """p-adic valuation of a nonzero integer."""
    if n == 0:
        raise ValueError("ord_p(0) is infinite")
    r = 0
    n = abs(n)
    while n % p == 0:
        n //= p
        r += 1
    return r


def split_level(n: int, p: int) -> tuple[int, int]:
    """Write n = n0 * p**r with n0 prime to p; returns (n0, r)."""
    r = ord_p(n, p)
    return n // p**r, r


# --------------------------------------------------------------------------
# GF(q)


def _gfp_poly_mod(a, mod, p):
    a = list(a)
    dm = len(mod) - 1
    inv_lead = pow(mod[-1], p - 2, p)
    for i in range(len(a) - 1, dm - 1, -1):
        c = a[i] % p
        if c:
            c = c * inv_lead % p
            for j in range(dm + 1):
                a[i - dm + j] = (a[i - dm + j] - c * mod[j]) % p
    a = [c % p for c in a[:dm]]
    return a + [0] * (dm - len(a))


def _gfp_is_irreducible(mod, p):
    d = len(mod) - 1
    if d < 1 or mod[-1] % p == 0:
        return False
    # brute force over monic divisors of degree <= d/2
    for deg in range(1, d // 2 + 1):
        for idx in range(p**deg):
            cand = []
            v = idx
            for _ in range(deg):
                cand.append(v % p)
                v //= p
            cand.append(1)
            if not any(_gfp_poly_mod(mod, cand, p)):
                return False
    return True


class FiniteField:
    """GF(p^e) with table-driven arithmetic on integer-encoded elements."""

    def __init__(self, p: int, e: int, modulus=None):
        if not is_prime(p):
            raise ConfigError("characteristic %r is not prime" % p)
        if e < 1:
            raise ConfigError("extension degree must be >= 1")
        q = p**e
        if q > MAX_Q:
            raise ConfigError("q = %d exceeds the table limit %d" % (q, MAX_Q))
        if modulus is None:
            if (p, e) in CONWAY:
                modulus = CONWAY[(p, e)]
            else:
                modulus = self._first_irreducible(p, e)
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != e + 1 or modulus[-1] != 1:
            raise ConfigError("modulus must be monic of degree %d" % e)
        if not _gfp_is_irreducible(modulus, p):
            raise ConfigError("modulus %r is reducible over GF(%d)" % (modulus, p))
        self.p, self.e, self.q, self.modulus = p, e, q, modulus
        self._build_tables()

    @staticmethod
    def _first_irreducible(p, e):
        for idx in range(p**e):
            cand = []
            v = idx
            for _ in range(e):
                cand.append(v % p)
                v //= p
            cand.append(1)
            if _gfp_is_irreducible(cand, p):
                return tuple(cand)
        raise ConfigError("no irreducible polynomial found")  # unreachable

    def _digits(self, a):
        out = []
        for _ in range(self.e):
            out.append(a % self.p)
            a //= self.p
        return out

    def _encode(self, digits):
        v = 0
        for c in reversed(digits):
            v = v * self.p + c
        return v

    def _build_tables(self):
        p, e, q = self.p, self.e, self.q
        digits = [self._digits(a) for a in range(q)]
        self.add = [[self._encode([(x + y) % p for x, y in zip(digits[a], digits[b])])
                     for b in range(q)] for a in range(q)]
        self.neg = [self._encode([(-x) % p for x in digits[a]]) for a in range(q)]
        self.sub = [[self.add[a][self.neg[b]] for b in range(q)] for a in range(q)]

        def polymul(a, b):
            prod = [0] * (2 * e - 1)
            for i, x in enumerate(digits[a]):
                if x:
                    for j, y in enumerate(digits[b]):
                        prod[i + j] = (prod[i + j] + x * y) % p
            return self._encode(_gfp_poly_mod(prod, self.modulus, p))

        # find a primitive element, then build exp/log tables
        for g in range(1, q):
            exp = [1]
            x = 1
            for _ in range(q - 2):
                x = polymul(x, g)
                if x == 1:
                    break
                exp.append(x)
            if len(exp) == q - 1:
                break
        self.primitive = g
        log = [None] * q
        for i, x in enumerate(exp):
            log[x] = i
        mul = [[0] * q for _ in range(q)]
        for a in range(1, q):
            la = log[a]
            row = mul[a]
            for b in range(1, q):
                row[b] = exp[(la + log[b]) % (q - 1)]
        self.mul = mul
        self.inv = [None] + [exp[(-log[a]) % (q - 1)] for a in range(1, q)]
        self.frob = [self.power(a, p) for a in range(q)]
        self.frob_inv = [0] * q
        for a in range(q):
            self.frob_inv[self.frob[a]] = a
        # t itself; for e = 1 it is the root of x + c, i.e. -c
        self.gen = self._encode([-modc % p for modc in self.modulus[:1]]) if e == 1 else p

    def power(self, a, k):
        r = 1
        base = a
        if k < 0:
            base = self.inv[a]
            k = -k
        while k:
            if k & 1:
                r = self.mul[r][base]
            base = self.mul[base][base]
            k >>= 1
        return r

    def from_int(self, n: int) -> int:
        return n % self.p

    def random(self, rng: random.Random) -> int:
        return rng.randrange(self.q)


# --------------------------------------------------------------------------
# dense polynomials over GF(q)


def _trim(c):
    n = len(c)
    while n and c[n - 1] == 0:
        n -= 1
    return tuple(c[:n])


ONE_POLY = (1,)


def poly_add(F, a, b):
    if len(a) < len(b):
        a, b = b, a
    add = F.add
    out = list(a)
    for i, c in enumerate(b):
        out[i] = add[out[i]][c]
    return _trim(out)


def poly_neg(F, a):
    neg = F.neg
    return tuple(neg[c] for c in a)


def poly_sub(F, a, b):
    return poly_add(F, a, poly_neg(F, b))


def poly_scale(F, a, c):
    if c == 0:
        return ()
    row = F.mul[c]
    return tuple(row[x] for x in a)


def poly_mul(F, a, b):
    if not a or not b:
        return ()
    if len(a) == 1:
        return poly_scale(F, b, a[0])
    if len(b) == 1:
        return poly_scale(F, a, b[0])
    add, mul = F.add, F.mul
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            row = mul[x]
            for j, y in enumerate(b):
                if y:
                    out[i + j] = add[out[i + j]][row[y]]
    return _trim(out)


def poly_divmod(F, a, b):
    if not b:
        raise DivisionByZero("polynomial division by zero")
    if len(a) < len(b):
        return (), a
    add, mul, neg = F.add, F.mul, F.neg
    inv_lead = F.inv[b[-1]]
    r = list(a)
    db = len(b) - 1
    qt = [0] * (len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        c = r[i]
        if c:
            c = mul[c][inv_lead]
            qt[i - db] = c
            nc = neg[c]
            row = mul[nc]
            for j in range(db + 1):
                r[i - db + j] = add[r[i - db + j]][row[b[j]]]
    return _trim(qt), _trim(r[:db])


def poly_monic(F, a):
    if not a or a[-1] == 1:
        return a
    return poly_scale(F, a, F.inv[a[-1]])


def poly_gcd(F, a, b):
    while b:
        a, b = b, poly_divmod(F, a, b)[1]
    return poly_monic(F, a)


def poly_exact_div(F, a, b):
    qt, r = poly_divmod(F, a, b)
    if r:
        raise ArithmeticError("inexact polynomial division")
    return qt


def poly_deriv(F, a):
    add = F.add
    out = []
    for i in range(1, len(a)):
        c = 0
        for _ in range(i % F.p):
            c = add[c][a[i]]
        out.append(c)
    return _trim(out)


def poly_frobenius(F, a):
    """a(y) -> a(y)^p, i.e. coefficients to the p-th power at exponents * p."""
    if not a:
        return ()
    p = F.p
    frob = F.frob
    out = [0] * ((len(a) - 1) * p + 1)
    for i, c in enumerate(a):
        out[i * p] = frob[c]
    return tuple(out)


def poly_pow(F, a, k):
    r = ONE_POLY
    while k:
        if k & 1:
            r = poly_mul(F, r, a)
        a = poly_mul(F, a, a)
        k >>= 1
    return r


# --------------------------------------------------------------------------
# configuration


def coin(rng, prob) -> bool:
    """Exact Bernoulli draw; prob is a Fraction, int or decimal string."""
    prob = Fraction(str(prob))
    return rng.randrange(prob.denominator) < prob.numerator


@dataclass(frozen=True)
class FieldConfig:
    """Characteristic, GF(q) modulus and residue-field kind.

    ``residue_kind`` is ``"perfect"`` (F = GF(q)) or ``"rational"``
    (F = GF(q)(var)).
    """

    p: int
    e: int = 1
    residue_kind: str = PERFECT
    modulus: tuple | None = None
    var: str = "y"
    gf: FiniteField = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        if self.residue_kind not in (PERFECT, RATIONAL):
            raise ConfigError("unknown residue kind %r" % (self.residue_kind,))
        gf = FiniteField(self.p, self.e, self.modulus)
        object.__setattr__(self, "gf", gf)
        object.__setattr__(self, "modulus", gf.modulus)

    @property
    def q(self) -> int:
        return self.gf.q

    @property
    def perfect(self) -> bool:
        return self.residue_kind == PERFECT

    @property
    def pbasis_size(self) -> int:
        return 0 if self.perfect else 1

    def describe(self) -> dict:
        return {
            "p": self.p,
            "q": self.q,
            "modulus": list(self.modulus),
            "residue": PERFECT if self.perfect else "rational(%s)" % self.var,
        }

    # element constructors ------------------------------------------------

    def residue(self, num=(), den=ONE_POLY) -> "ResidueElem":
        return ResidueElem.make(self, tuple(num), tuple(den))

    def constant(self, c: int) -> "ResidueElem":
        """Embed an integer (mod p) or, with ``raw=True`` semantics, a GF(q) code."""
        return ResidueElem(self, _trim((c % self.p,)), ONE_POLY)

    def gf_element(self, code: int) -> "ResidueElem":
        return ResidueElem(self, _trim((code,)), ONE_POLY)

    @cached_property
    def zero(self) -> "ResidueElem":
        return ResidueElem(self, (), ONE_POLY)

    @cached_property
    def one(self) -> "ResidueElem":
        return ResidueElem(self, ONE_POLY, ONE_POLY)

    @cached_property
    def y(self) -> "ResidueElem":
        if self.perfect:
            raise ConfigError("perfect residue field has no p-basis variable")
        return ResidueElem(self, (0, 1), ONE_POLY)

    @cached_property
    def g(self) -> "ResidueElem":
        """The class of t in GF(p)[t]/(modulus)."""
        return self.gf_element(self.gf.gen)

    @cached_property
    def pi(self) -> "LaurentElem":
        return LaurentElem(self, {1: self.one})

    def laurent(self, terms) -> "LaurentElem":
        """Build a Laurent element from ``{exponent: ResidueElem or int}``."""
        out = {}
        for k, c in dict(terms).items():
            if isinstance(c, int):
                c = self.constant(c)
            if not c.is_zero():
                out[int(k)] = c
        return LaurentElem(self, out)

    def lzero(self) -> "LaurentElem":
        return LaurentElem(self, {})

    # random sampling ------------------------------------------------------

    def random_poly(self, rng, max_deg):
        gf = self.gf
        return _trim([gf.random(rng) for _ in range(max_deg + 1)])

    def random_residue(self, rng, max_deg=2, rational=True) -> "ResidueElem":
        if self.perfect:
            return self.gf_element(self.gf.random(rng))
        num = self.random_poly(rng, max_deg)
        den = ONE_POLY
        if rational and coin(rng, Fraction(3, 10)):
            den = self.random_poly(rng, max(1, max_deg - 1))
            if not den:
                den = ONE_POLY
        return ResidueElem.make(self, num, den)

    def random_laurent(self, rng, lo=-4, hi=1, density=Fraction(3, 5), **kw) -> "LaurentElem":
        terms = {}
        for k in range(lo, hi + 1):
            if coin(rng, density):
                c = self.random_residue(rng, **kw)
                if not c.is_zero():
                    terms[k] = c
        return LaurentElem(self, terms)


# --------------------------------------------------------------------------
# residue field elements


class ResidueElem:
    """Element num/den of F in canonical form (reduced, monic denominator)."""

    __slots__ = ("cfg", "num", "den", "_hash")

    def __init__(self, cfg: FieldConfig, num: tuple, den: tuple):
        self.cfg = cfg
        self.num = num
        self.den = den
        self._hash = None

    @classmethod
    def make(cls, cfg, num, den=ONE_POLY):
        F = cfg.gf
        num = _trim(num)
        den = _trim(den)
        if not den:
            raise DivisionByZero("zero denominator")
        if cfg.perfect and (len(num) > 1 or len(den) > 1):
            raise ConfigError("perfect residue field has no variable")
        if not num:
            return cls(cfg, (), ONE_POLY)
        if len(den) > 1:
            g = poly_gcd(F, num, den)
            if len(g) > 1:
                num = poly_exact_div(F, num, g)
                den = poly_exact_div(F, den, g)
        lead = den[-1]
        if lead != 1:
            inv = F.inv[lead]
            num = poly_scale(F, num, inv)
            den = poly_scale(F, den, inv)
        return cls(cfg, num, den)

    # basic predicates -----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.num

    def is_one(self) -> bool:
        return self.num == ONE_POLY and self.den == ONE_POLY

    def is_polynomial(self) -> bool:
        return self.den == ONE_POLY

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.cfg.constant(other)
        if not isinstance(other, ResidueElem):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def __bool__(self):
        return bool(self.num)

    def __repr__(self):
        from .parser import render_residue
        return "ResidueElem(%s)" % render_residue(self)

    # arithmetic -------------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, ResidueElem):
            return other
        if isinstance(other, int):
            return self.cfg.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        F = self.cfg.gf
        if not other.num:
            return self
        if not self.num:
            return other
        if self.den == other.den:
            num = poly_add(F, self.num, other.num)
            if self.den == ONE_POLY:
                return ResidueElem(self.cfg, num, ONE_POLY)
            return ResidueElem.make(self.cfg, num, self.den)
        num = poly_add(F, poly_mul(F, self.num, other.den), poly_mul(F, other.num, self.den))
        return ResidueElem.make(self.cfg, num, poly_mul(F, self.den, other.den))

    __radd__ = __add__

    def __neg__(self):
        return ResidueElem(self.cfg, poly_neg(self.cfg.gf, self.num), self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            c = other % self.cfg.p
            if c == 1:
                return self
            return ResidueElem(self.cfg, poly_scale(self.cfg.gf, self.num, c), self.den)
        if not isinstance(other, ResidueElem):
            return NotImplemented
        F = self.cfg.gf
        if not self.num or not other.num:
            return self.cfg.zero
        if self.den == ONE_POLY and other.den == ONE_POLY:
            return ResidueElem(self.cfg, poly_mul(F, self.num, other.num), ONE_POLY)
        n1, d1, n2, d2 = self.num, self.den, other.num, other.den
        if len(d2) > 1:
            g = poly_gcd(F, n1, d2)
            if len(g) > 1:
                n1, d2 = poly_exact_div(F, n1, g), poly_exact_div(F, d2, g)
        if len(d1) > 1:
            g = poly_gcd(F, n2, d1)
            if len(g) > 1:
                n2, d1 = poly_exact_div(F, n2, g), poly_exact_div(F, d1, g)
        num = poly_mul(F, n1, n2)
        den = poly_mul(F, d1, d2)
        # numerator/denominator already coprime; only normalise the lead
        lead = den[-1]
        if lead != 1:
            inv = F.inv[lead]
            num, den = poly_scale(F, num, inv), poly_scale(F, den, inv)
        return ResidueElem(self.cfg, num, den)

    __rmul__ = __mul__

    def inverse(self):
        if not self.num:
            raise DivisionByZero("inverse of zero in the residue field")
        return ResidueElem.make(self.cfg, self.den, self.num)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        if k == 0:
            return self.cfg.one
        F = self.cfg.gf
        if self.den == ONE_POLY:
            return ResidueElem(self.cfg, poly_pow(F, self.num, k), ONE_POLY)
        return ResidueElem(self.cfg, poly_pow(F, self.num, k), poly_pow(F, self.den, k))

    def frobenius(self):
        F = self.cfg.gf
        if self.den == ONE_POLY:
            return ResidueElem(self.cfg, poly_frobenius(F, self.num), ONE_POLY)
        return ResidueElem(self.cfg, poly_frobenius(F, self.num), poly_frobenius(F, self.den))

    # p-basis structure ----------------------------------------------------

    def pbasis_components(self) -> tuple:
        """Return (f_0, ..., f_{p-1}) with self = sum f_j^p y^j."""
        return p_basis_decompose(self)

    def is_pth_power(self) -> bool:
        return is_pth_power(self)

    def pth_root(self):
        return pth_root(self)

    def derivative(self):
        return partial_derivative(self)


def _poly_pbasis_split(F, a, p):
    parts = [[] for _ in range(p)]
    finv = F.frob_inv
    for i, c in enumerate(a):
        j, k = i % p, i // p
        part = parts[j]
        while len(part) <= k:
            part.append(0)
        part[k] = finv[c]
    return [_trim(part) for part in parts]


def p_basis_decompose(f: ResidueElem) -> tuple:
    """Unique (f_0, ..., f_{p-1}) with f = sum_j f_j^p * y^j.

    For a perfect residue field the p-basis is empty and only f_0 is nonzero.
    """
    cfg = f.cfg
    F = cfg.gf
    p = cfg.p
    if cfg.perfect:
        root = ResidueElem(cfg, _trim((F.frob_inv[f.num[0]],)) if f.num else (), ONE_POLY)
        return (root,) + (cfg.zero,) * (p - 1)
    # f = N D^{p-1} / D^p
    if f.den == ONE_POLY:
        parts = _poly_pbasis_split(F, f.num, p)
        return tuple(ResidueElem(cfg, part, ONE_POLY) for part in parts)
    scaled = poly_mul(F, f.num, poly_pow(F, f.den, p - 1))
    parts = _poly_pbasis_split(F, scaled, p)
    return tuple(ResidueElem.make(cfg, part, f.den) for part in parts)


def is_pth_power(f: ResidueElem) -> bool:
    return all(c.is_zero() for c in p_basis_decompose(f)[1:])


def pth_root(f: ResidueElem) -> ResidueElem:
    comps = p_basis_decompose(f)
    if any(not c.is_zero() for c in comps[1:]):
        raise NotAPthPower("element is not a p-th power")
    return comps[0]


def pth_power_root(f: ResidueElem, r: int):
    """Return gamma with gamma^(p^r) = f, or None."""
    g = f
    for _ in range(r):
        comps = p_basis_decompose(g)
        if any(not c.is_zero() for c in comps[1:]):
            return None
        g = comps[0]
    return g


def partial_derivative(f: ResidueElem) -> ResidueElem:
    cfg = f.cfg
    if cfg.perfect or not f.num:
        return cfg.zero
    F = cfg.gf
    dn = poly_deriv(F, f.num)
    if f.den == ONE_POLY:
        return ResidueElem(cfg, dn, ONE_POLY)
    dd = poly_deriv(F, f.den)
    num = poly_sub(F, poly_mul(F, dn, f.den), poly_mul(F, f.num, dd))
    return ResidueElem.make(cfg, num, poly_mul(F, f.den, f.den))


# --------------------------------------------------------------------------
# Laurent polynomials over F


class LaurentElem:
    """Finite sum of c_k * pi^k with c_k in F; the zero element has no terms."""

    __slots__ = ("cfg", "terms", "_key")

    def __init__(self, cfg: FieldConfig, terms: dict):
        self.cfg = cfg
        self.terms = terms
        self._key = None

    @classmethod
    def monomial(cls, c: ResidueElem, k: int) -> "LaurentElem":
        return cls(c.cfg, {k: c} if c.num else {})

    def key(self):
        if self._key is None:
            self._key = tuple(sorted(self.terms.items()))
        return self._key

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.cfg.laurent({0: other})
        if not isinstance(other, LaurentElem):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        from .parser import render_laurent
        return "LaurentElem(%s)" % render_laurent(self)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def valuation(self):
        """Least exponent, or None for zero (whose valuation is infinite)."""
        if not self.terms:
            return None
        return min(self.terms)

    def valuation_at_least(self, k: int) -> bool:
        return not self.terms or min(self.terms) >= k

    def leading_coefficient(self) -> ResidueElem:
        if not self.terms:
            return self.cfg.zero
        return self.terms[min(self.terms)]

    def coefficient(self, k: int) -> ResidueElem:
        return self.terms.get(k, self.cfg.zero)

    def exponents(self):
        return sorted(self.terms)

    def truncate_below(self, k: int) -> "LaurentElem":
        """Drop every term of exponent >= k."""
        return LaurentElem(self.cfg, {e: c for e, c in self.terms.items() if e < k})

    def shift(self, k: int) -> "LaurentElem":
        return LaurentElem(self.cfg, {e + k: c for e, c in self.terms.items()})

    # arithmetic -------------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, LaurentElem):
            return other
        if isinstance(other, ResidueElem):
            return LaurentElem.monomial(other, 0)
        if isinstance(other, int):
            return LaurentElem.monomial(self.cfg.constant(other), 0)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not other.terms:
            return self
        if not self.terms:
            return other
        out = dict(self.terms)
        for k, c in other.terms.items():
            cur = out.get(k)
            if cur is None:
                out[k] = c
            else:
                s = cur + c
                if s.num:
                    out[k] = s
                else:
                    del out[k]
        return LaurentElem(self.cfg, out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentElem(self.cfg, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            c = other % self.cfg.p
            if c == 0:
                return LaurentElem(self.cfg, {})
            if c == 1:
                return self
            return LaurentElem(self.cfg, {k: v * c for k, v in self.terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not self.terms or not other.terms:
            return LaurentElem(self.cfg, {})
        out = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                k = k1 + k2
                prod = c1 * c2
                cur = out.get(k)
                out[k] = prod if cur is None else cur + prod
        return LaurentElem(self.cfg, {k: c for k, c in out.items() if c.num})

    __rmul__ = __mul__

    def is_unit(self) -> bool:
        return len(self.terms) == 1

    def inverse(self) -> "LaurentElem":
        if len(self.terms) != 1:
            if not self.terms:
                raise DivisionByZero("inverse of zero")
            raise ArithmeticError("only monomials c*pi^k are invertible in F[pi, 1/pi]")
        (k, c), = self.terms.items()
        return LaurentElem(self.cfg, {-k: c.inverse()})

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        if k == 0:
            return LaurentElem(self.cfg, {0: self.cfg.one})
        if len(self.terms) == 1:
            (e, c), = self.terms.items()
            return LaurentElem(self.cfg, {e * k: c ** k})
        p = self.cfg.p
        if k % p == 0:
            return (self ** (k // p)).frobenius()
        result = None
        base = self
        while k:
            if k & 1:
                result = base if result is None else result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def frobenius(self) -> "LaurentElem":
        p = self.cfg.p
        return LaurentElem(self.cfg, {k * p: c.frobenius() for k, c in self.terms.items()})

    def dy(self) -> "LaurentElem":
        """Coefficient-wise derivative in the p-basis variable."""
        out = {}
        for k, c in self.terms.items():
            d = partial_derivative(c)
            if d.num:
                out[k] = d
        return LaurentElem(self.cfg, out)

    def pi_weighted(self) -> "LaurentElem":
        """sum k * c_k * pi^k (coefficient of dlog pi in d(self))."""
        out = {}
        for k, c in self.terms.items():
            if k % self.cfg.p:
                out[k] = c * k
        return LaurentElem(self.cfg, out)


def laurent_arith(x: LaurentElem, y: LaurentElem | None, op: str) -> LaurentElem:
    """Dispatch helper: ``op`` in add | mul | neg | frobenius."""
    if op == "add":
        return x + y
    if op == "mul":
        return x * y
    if op == "neg":
        return -x
    if op == "frobenius":
        return x.frobenius()
    raise ValueError("unknown Laurent operation %r" % op)
