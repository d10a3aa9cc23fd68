"""Witt vectors of finite length over rings of characteristic p.

The addition, negation and Q polynomials are produced over the integers by
the ghost-component recursion, checked for integrality, reduced mod p and
compiled for evaluation.  Components of a Witt vector can live in any ring
whose elements support ``+ - *``, ``** int``, ``* int`` and ``is_zero()``;
an optional ``frobenius()`` method is used to speed up p-th powers.

Exponent vectors of monomials are packed into a single Python int with
``BITS`` bits per variable, so multiplying monomials is integer addition.
"""

from __future__ import annotations

import json
import os
import tempfile
import threading

from .errors import ConfigError, IntegralityFailure
from .field import ord_p

BITS = 10
MASK = (1 << BITS) - 1
MAX_P = 5
MAX_M = 3
CACHE_FORMAT = "swanlab-wittpoly/1"


def pack(exps) -> int:
    key = 0
    for i, e in enumerate(exps):
        if e:
            key |= e << (BITS * i)
    return key


def unpack(key: int, nvars: int) -> tuple:
    return tuple((key >> (BITS * i)) & MASK for i in range(nvars))


class UnivPoly:
    """Sparse polynomial with integer coefficients in ``nvars`` variables."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: dict | None = None):
        self.nvars = nvars
        self.terms = terms if terms is not None else {}

    @classmethod
    def var(cls, i: int, nvars: int) -> "UnivPoly":
        return cls(nvars, {1 << (BITS * i): 1})

    @classmethod
    def const(cls, c: int, nvars: int) -> "UnivPoly":
        return cls(nvars, {0: c} if c else {})

    def __add__(self, other):
        out = dict(self.terms)
        for k, c in other.terms.items():
            s = out.get(k, 0) + c
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return UnivPoly(self.nvars, out)

    def __neg__(self):
        return UnivPoly(self.nvars, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c: int) -> "UnivPoly":
        if c == 0:
            return UnivPoly(self.nvars)
        return UnivPoly(self.nvars, {k: v * c for k, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        out = {}
        get = out.get
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                k = k1 + k2
                out[k] = get(k, 0) + c1 * c2
        return UnivPoly(self.nvars, {k: c for k, c in out.items() if c})

    def __pow__(self, k: int):
        result = UnivPoly.const(1, self.nvars)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        return isinstance(other, UnivPoly) and self.terms == other.terms

    def exact_div(self, d: int) -> "UnivPoly":
        out = {}
        for k, c in self.terms.items():
            qt, r = divmod(c, d)
            if r:
                raise IntegralityFailure(
                    "coefficient %d of monomial %r not divisible by %d"
                    % (c, unpack(k, self.nvars), d))
            out[k] = qt
        return UnivPoly(self.nvars, out)

    def mod(self, p: int) -> "UnivPoly":
        return UnivPoly(self.nvars, {k: c % p for k, c in self.terms.items() if c % p})

    def monomials(self):
        for k, c in self.terms.items():
            yield unpack(k, self.nvars), c

    def variables(self) -> set:
        used = set()
        for exps, _ in self.monomials():
            used.update(i for i, e in enumerate(exps) if e)
        return used

    def weights(self, weight) -> set:
        """Set of weighted degrees sum(weight[i] * e_i) over the monomials."""
        return {sum(w * e for w, e in zip(weight, exps)) for exps, _ in self.monomials()}

    def in_ideal_of_products(self, idx) -> bool:
        """True when every monomial has total degree >= 2 in the variables ``idx``."""
        return all(sum(exps[i] for i in idx) >= 2 for exps, _ in self.monomials())

    def in_ideal_of(self, idx) -> bool:
        return all(any(exps[i] for i in idx) for exps, _ in self.monomials())

    def __len__(self):
        return len(self.terms)


# --------------------------------------------------------------------------
# ghost recursion over the integers

_ghost_lock = threading.Lock()
_ghost_cache: dict = {}


def _ghost_solve(p, m, nvars, targets):
    """Solve sum_{i<=n} p^i P_i^{p^{n-i}} = targets[n] for P_0..P_m."""
    polys = []
    powers = []  # powers[i][k] = P_i^{p^k}
    for n in range(m + 1):
        rest = targets[n]
        for i in range(n):
            while len(powers[i]) <= n - i:
                powers[i].append(powers[i][-1] ** p)
            rest = rest - powers[i][n - i].scale(p**i)
        poly = rest.exact_div(p**n)
        polys.append(poly)
        powers.append([poly])
    return polys


def _ghost_component(p, n, var_index, nvars, factor=None):
    """w_n = sum_i p^i V_i^{p^(n-i)}; ``factor(i)`` optionally multiplies V_i."""
    total = UnivPoly(nvars)
    for i in range(n + 1):
        v = UnivPoly.var(var_index(i), nvars)
        if factor is not None:
            v = v * factor(i)
        total = total + (v ** (p ** (n - i))).scale(p**i)
    return total


def ghost_polynomials(p: int, m: int, kind: str) -> list:
    """Integer Witt polynomials of the given kind for lengths up to m+1.

    ``kind`` is ``add``, ``neg``, ``mul``, ``q`` (variables X_0..X_m,
    Y_0..Y_m) or ``frobenius`` (variables X_0..X_{m+1}).
    """
    key = (p, m, kind)
    with _ghost_lock:
        if key in _ghost_cache:
            return _ghost_cache[key]
    nv = 2 * (m + 1)

    def X(i):
        return i

    def Y(i):
        return m + 1 + i

    if kind == "add":
        targets = [_ghost_component(p, n, X, nv) + _ghost_component(p, n, Y, nv)
                   for n in range(m + 1)]
    elif kind == "neg":
        targets = [-_ghost_component(p, n, X, nv) for n in range(m + 1)]
    elif kind == "mul":
        targets = [_ghost_component(p, n, X, nv) * _ghost_component(p, n, Y, nv)
                   for n in range(m + 1)]
    elif kind == "q":
        one = UnivPoly.const(1, nv)
        targets = [
            _ghost_component(p, n, X, nv,
                             factor=lambda i: one + UnivPoly.var(Y(i), nv))
            - _ghost_component(p, n, X, nv)
            for n in range(m + 1)]
    elif kind == "frobenius":
        nv = m + 2
        targets = [_ghost_component(p, n + 1, X, nv) for n in range(m + 1)]
    else:
        raise ValueError("unknown polynomial kind %r" % kind)
    polys = _ghost_solve(p, m, nv, targets)
    with _ghost_lock:
        _ghost_cache[key] = polys
    return polys


# --------------------------------------------------------------------------
# compiled evaluation in characteristic p


class CompiledPoly:
    """Mod-p polynomial in evaluation-ready form."""

    __slots__ = ("nvars", "monos")

    def __init__(self, nvars, monos):
        self.nvars = nvars
        # list of (coef, ((var, exp), ...))
        self.monos = monos

    @classmethod
    def from_univ(cls, poly: UnivPoly, p: int) -> "CompiledPoly":
        monos = []
        for exps, c in poly.mod(p).monomials():
            monos.append((c, tuple((i, e) for i, e in enumerate(exps) if e)))
        monos.sort(key=lambda t: t[1])
        return cls(poly.nvars, monos)

    def to_json(self):
        return [[c, [list(f) for f in fs]] for c, fs in self.monos]

    @classmethod
    def from_json(cls, nvars, data):
        return cls(nvars, [(c, tuple((i, e) for i, e in fs)) for c, fs in data])

    def evaluate(self, values, zero, p, cache=None):
        if cache is None:
            cache = {}
        zeros = {i for i, v in enumerate(values) if v.is_zero()}
        total = zero
        for c, factors in self.monos:
            if any(i in zeros for i, _ in factors):
                continue
            term = None
            for i, e in factors:
                pw = _power(values, cache, i, e, p)
                term = pw if term is None else term * pw
            if term is None:
                # constant monomial; cannot occur in the Witt polynomials
                raise ValueError("constant term in a Witt polynomial")
            total = total + (term * c if c != 1 else term)
        return total


def _power(values, cache, i, e, p):
    key = (i, e)
    hit = cache.get(key)
    if hit is not None:
        return hit
    v = values[i]
    if e == 1:
        out = v
    else:
        hi, lo = divmod(e, p)
        if hi and hasattr(v, "frobenius"):
            out = _power(values, cache, i, hi, p).frobenius()
            if lo:
                out = out * _power(values, cache, i, lo, p)
        else:
            out = v ** e
    cache[key] = out
    return out


# --------------------------------------------------------------------------
# context


class WittContext:
    """Cached mod-p Witt polynomials for vectors of length m+1."""

    def __init__(self, p, m, add, neg, q):
        self.p = p
        self.m = m
        self.add_polys = add
        self.neg_polys = neg
        self.q_polys = q
        self._mul = None

    @property
    def length(self) -> int:
        return self.m + 1

    def __repr__(self):
        return "WittContext(p=%d, m=%d)" % (self.p, self.m)

    def mul_polys(self):
        if self._mul is None:
            self._mul = [CompiledPoly.from_univ(P, self.p)
                         for P in ghost_polynomials(self.p, self.m, "mul")]
        return self._mul

    def vector(self, comps) -> "WittVec":
        comps = tuple(comps)
        if len(comps) != self.m + 1:
            raise ValueError("expected %d components, got %d" % (self.m + 1, len(comps)))
        return WittVec(self, comps)

    def zero_like(self, elem) -> "WittVec":
        z = elem * 0
        return WittVec(self, (z,) * (self.m + 1))

    def shorter(self) -> "WittContext":
        return build_context(self.p, self.m - 1)

    def longer(self) -> "WittContext":
        return build_context(self.p, self.m + 1)


_ctx_lock = threading.Lock()
_ctx_cache: dict = {}


def _cache_path(p, m):
    root = os.environ.get("SWANLAB_CACHE_DIR")
    if not root:
        return None
    return os.path.join(root, "witt-p%d-m%d.json" % (p, m))


def _load_cached(p, m):
    path = _cache_path(p, m)
    if not path or not os.path.exists(path):
        return None
    try:
        with open(path) as fh:
            data = json.load(fh)
    except (OSError, ValueError):
        return None
    if data.get("format") != CACHE_FORMAT or data.get("p") != p or data.get("m") != m:
        return None
    nv = 2 * (m + 1)
    return tuple([CompiledPoly.from_json(nv, d) for d in data[k]] for k in ("add", "neg", "q"))


def _store_cached(p, m, add, neg, q):
    path = _cache_path(p, m)
    if not path:
        return
    os.makedirs(os.path.dirname(path), exist_ok=True)
    data = {"format": CACHE_FORMAT, "p": p, "m": m,
            "add": [c.to_json() for c in add],
            "neg": [c.to_json() for c in neg],
            "q": [c.to_json() for c in q]}
    fd, tmp = tempfile.mkstemp(dir=os.path.dirname(path), suffix=".tmp")
    with os.fdopen(fd, "w") as fh:
        json.dump(data, fh, sort_keys=True)
    os.replace(tmp, path)


def check_caps(p: int, m: int):
    if p > MAX_P or m > MAX_M:
        raise ConfigError("Witt parameters p=%d, m=%d exceed the desk-scale cap "
                          "(p <= %d, m <= %d)" % (p, m, MAX_P, MAX_M))
    if m < 0:
        raise ConfigError("Witt length must be at least 1")


def build_context(p: int, m: int) -> WittContext:
    """Return the (memoised) context for W_{m+1} in characteristic p."""
    check_caps(p, m)
    key = (p, m)
    with _ctx_lock:
        ctx = _ctx_cache.get(key)
        if ctx is not None:
            return ctx
        loaded = _load_cached(p, m)
        if loaded is not None:
            add, neg, q = loaded
        else:
            add = [CompiledPoly.from_univ(P, p) for P in ghost_polynomials(p, m, "add")]
            neg = [CompiledPoly.from_univ(P, p) for P in ghost_polynomials(p, m, "neg")]
            q = [CompiledPoly.from_univ(P, p) for P in ghost_polynomials(p, m, "q")]
            _store_cached(p, m, add, neg, q)
        ctx = WittContext(p, m, add, neg, q)
        _ctx_cache[key] = ctx
        return ctx


# --------------------------------------------------------------------------
# vectors


class WittVec:
    __slots__ = ("ctx", "comps")

    def __init__(self, ctx: WittContext, comps: tuple):
        self.ctx = ctx
        self.comps = comps

    def __repr__(self):
        return "WittVec(%r)" % (self.comps,)

    def __eq__(self, other):
        return (isinstance(other, WittVec) and self.ctx.p == other.ctx.p
                and self.comps == other.comps)

    def __hash__(self):
        return hash(self.comps)

    def __len__(self):
        return len(self.comps)

    def __getitem__(self, i):
        return self.comps[i]

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.comps)

    def _zero(self):
        return self.comps[0] * 0

    def __add__(self, other):
        return witt_add(self, other)

    def __neg__(self):
        return witt_neg(self)

    def __sub__(self, other):
        return witt_sub(self, other)

    def frobenius(self):
        return witt_frobenius(self)

    def verschiebung(self):
        return verschiebung(self)


def _same(x, y):
    if x.ctx.p != y.ctx.p or len(x) != len(y):
        raise ValueError("Witt vectors from different contexts")


def witt_add(x: WittVec, y: WittVec) -> WittVec:
    _same(x, y)
    if y.is_zero():
        return x
    if x.is_zero():
        return y
    ctx = x.ctx
    values = x.comps + y.comps
    zero = x._zero()
    cache = {}
    out = tuple(P.evaluate(values, zero, ctx.p, cache) for P in ctx.add_polys)
    return WittVec(ctx, out)


def witt_neg(x: WittVec) -> WittVec:
    ctx = x.ctx
    if ctx.p != 2:
        return WittVec(ctx, tuple(-c for c in x.comps))
    zero = x._zero()
    values = x.comps + (zero,) * len(x.comps)
    cache = {}
    return WittVec(ctx, tuple(P.evaluate(values, zero, ctx.p, cache) for P in ctx.neg_polys))


def witt_sub(x: WittVec, y: WittVec) -> WittVec:
    return witt_add(x, witt_neg(y))


def witt_mul(x: WittVec, y: WittVec) -> WittVec:
    """Witt multiplication (exposed for tests)."""
    _same(x, y)
    ctx = x.ctx
    values = x.comps + y.comps
    zero = x._zero()
    cache = {}
    return WittVec(ctx, tuple(P.evaluate(values, zero, ctx.p, cache) for P in ctx.mul_polys()))


def witt_frobenius(x: WittVec) -> WittVec:
    """Componentwise p-th power (the Frobenius over an F_p-algebra)."""
    p = x.ctx.p
    out = []
    for c in x.comps:
        out.append(c.frobenius() if hasattr(c, "frobenius") else c ** p)
    return WittVec(x.ctx, tuple(out))


def verschiebung(x: WittVec, times: int = 1) -> WittVec:
    """V^times: W_{m+1} -> W_{m+1+times}, (x_0..x_m) -> (0,..,0,x_0..x_m)."""
    if times == 0:
        return x
    ctx = build_context(x.ctx.p, x.ctx.m + times)
    zero = x._zero()
    return WittVec(ctx, (zero,) * times + x.comps)


def restrict(x: WittVec, length: int) -> WittVec:
    """Truncation W_{m+1} -> W_length (keeps the first components)."""
    return WittVec(build_context(x.ctx.p, length - 1), x.comps[:length])


def teichmuller_at(ctx: WittContext, a, index: int) -> WittVec:
    """V^index([a]) placed in the context: a at ``index``, zeros elsewhere."""
    zero = a * 0
    comps = [zero] * (ctx.m + 1)
    comps[index] = a
    return WittVec(ctx, tuple(comps))


def q_polynomials(ctx: WittContext) -> list:
    return ctx.q_polys


def q_apply(x: WittVec, y: WittVec) -> WittVec:
    """(Q_0(x, y), ..., Q_m(x, y)); y holds the scale parameters y_i of (1 + y_i)."""
    _same(x, y)
    ctx = x.ctx
    values = x.comps + y.comps
    zero = x._zero()
    cache = {}
    return WittVec(ctx, tuple(P.evaluate(values, zero, ctx.p, cache) for P in ctx.q_polys))


def rescale(x: WittVec, y: WittVec) -> WittVec:
    """Componentwise x_i * (1 + y_i)."""
    return WittVec(x.ctx, tuple(a + a * b for a, b in zip(x.comps, y.comps)))


# --------------------------------------------------------------------------
# filtrations on W_{m+1}(K)


def _val(c):
    return c.valuation()


def fil_level(x: WittVec):
    """Least n with x in fil_n, i.e. max_i -p^(m-i) v(x_i); None for x = 0."""
    p, m = x.ctx.p, x.ctx.m
    best = None
    for i, c in enumerate(x.comps):
        if c.is_zero():
            continue
        lvl = -(p ** (m - i)) * _val(c)
        if best is None or lvl > best:
            best = lvl
    return best


def fil_membership(x: WittVec, n: int) -> bool:
    p, m = x.ctx.p, x.ctx.m
    return all(c.is_zero() or p ** (m - i) * _val(c) >= -n for i, c in enumerate(x.comps))


def fil_prime_split(n: int, p: int, m: int) -> int:
    """m' = min(ord_p(n+1), m+1)."""
    return min(ord_p(n + 1, p), m + 1)


def fil_prime_membership(x: WittVec, n: int) -> bool:
    """Componentwise test for fil'_n W_{m+1}(K), n >= 0.

    Components i <= m - m' obey the fil_n bound, the last m' components the
    fil_{n+1} bound, where m' = min(ord_p(n+1), m+1).
    """
    if n < 0:
        raise ValueError("fil' is indexed by n >= 0")
    p, m = x.ctx.p, x.ctx.m
    mp = fil_prime_split(n, p, m)
    for i, c in enumerate(x.comps):
        if c.is_zero():
            continue
        bound = -n if i <= m - mp else -(n + 1)
        if p ** (m - i) * _val(c) < bound:
            return False
    return True
