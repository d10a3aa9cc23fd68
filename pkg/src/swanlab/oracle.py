"""Independent referees for the production algorithms.

Nothing here calls the reduction routine or the p-basis machinery: the
brute-force reducer only applies explicit (F - 1)-moves and measures naive
filtration levels, the Q identity is checked by plain Witt addition over a
finite ring, and the universal polynomials are validated by ghost components
over Z and by the isomorphism W_{m+1}(F_p) = Z/p^(m+1).
"""

from __future__ import annotations

import heapq
import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction

from .field import FieldConfig, LaurentElem, coin, ord_p
from .witt import (WittVec, build_context, fil_level, fil_membership, fil_prime_membership,
                   fil_prime_split, ghost_polynomials, q_apply, rescale, teichmuller_at,
                   witt_add, witt_frobenius, witt_sub)


# --------------------------------------------------------------------------
# GF(p)[t]/(t^k)


class TruncPoly:
    """Element of GF(p)[t]/(t^k) as a coefficient tuple of length k."""

    __slots__ = ("p", "k", "c")

    def __init__(self, p: int, k: int, coeffs):
        self.p = p
        self.k = k
        c = [a % p for a in coeffs][:k]
        c += [0] * (k - len(c))
        self.c = tuple(c)

    @classmethod
    def random(cls, p, k, rng):
        return cls(p, k, [rng.randrange(p) for _ in range(k)])

    def is_zero(self):
        return not any(self.c)

    def __eq__(self, other):
        return isinstance(other, TruncPoly) and self.c == other.c

    def __hash__(self):
        return hash(self.c)

    def __repr__(self):
        return "TruncPoly(%s)" % (list(self.c),)

    def __add__(self, other):
        return TruncPoly(self.p, self.k, [a + b for a, b in zip(self.c, other.c)])

    def __neg__(self):
        return TruncPoly(self.p, self.k, [-a for a in self.c])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return TruncPoly(self.p, self.k, [a * other for a in self.c])
        out = [0] * self.k
        for i, a in enumerate(self.c):
            if a:
                for j in range(self.k - i):
                    out[i + j] += a * other.c[j]
        return TruncPoly(self.p, self.k, out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        result = TruncPoly(self.p, self.k, [1])
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result


@dataclass
class Report:
    name: str
    trials: int = 0
    failures: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.failures

    def to_json(self):
        return {"name": self.name, "trials": self.trials, "failures": len(self.failures),
                "witnesses": [str(w) for w in self.failures[:5]], "ok": self.ok}


def verify_q_identity(p: int, m: int, k: int, trials: int, seed: int = 0,
                      zero_y: bool = False) -> Report:
    """Check x' - x = (Q_0(x, y), ..., Q_m(x, y)) with x'_i = x_i (1 + y_i) in W(GF(p)[t]/(t^k))."""
    rng = random.Random(seed)
    ctx = build_context(p, m)
    report = Report("q-identity p=%d m=%d k=%d" % (p, m, k))
    for _ in range(trials):
        x = ctx.vector([TruncPoly.random(p, k, rng) for _ in range(m + 1)])
        if zero_y:
            y = ctx.vector([TruncPoly(p, k, []) for _ in range(m + 1)])
        else:
            y = ctx.vector([TruncPoly.random(p, k, rng) for _ in range(m + 1)])
        lhs = witt_sub(rescale(x, y), x)
        rhs = q_apply(x, y)
        report.trials += 1
        if lhs != rhs:
            report.failures.append((x.comps, y.comps, lhs.comps, rhs.comps))
    return report


# --------------------------------------------------------------------------
# universal polynomials


def _eval_int(poly, values):
    total = 0
    for exps, c in poly.monomials():
        term = c
        for v, e in zip(values, exps):
            if e:
                term *= v**e
        total += term
    return total


def _ghost(p, comps, n):
    return sum(p**i * comps[i] ** (p ** (n - i)) for i in range(n + 1))


def verify_ghost_components(p: int, m: int, trials: int = 20, seed: int = 0) -> Report:
    """Integer sum/negation/Q polynomials have the expected ghost components."""
    rng = random.Random(seed)
    report = Report("ghost components p=%d m=%d" % (p, m))
    add = ghost_polynomials(p, m, "add")
    neg = ghost_polynomials(p, m, "neg")
    qp = ghost_polynomials(p, m, "q")
    for _ in range(trials):
        xs = [rng.randint(-5, 5) for _ in range(m + 1)]
        ys = [rng.randint(-5, 5) for _ in range(m + 1)]
        vals = xs + ys
        s = [_eval_int(P, vals) for P in add]
        ng = [_eval_int(P, vals) for P in neg]
        qs = [_eval_int(P, vals) for P in qp]
        scaled = [a * (1 + b) for a, b in zip(xs, ys)]
        for n in range(m + 1):
            report.trials += 1
            gx, gy = _ghost(p, xs, n), _ghost(p, ys, n)
            if _ghost(p, s, n) != gx + gy:
                report.failures.append(("add", n, xs, ys))
            if _ghost(p, ng, n) != -gx:
                report.failures.append(("neg", n, xs))
            if _ghost(p, qs, n) != _ghost(p, scaled, n) - gx:
                report.failures.append(("q", n, xs, ys))
    return report


def verify_frobenius_mod_p(p: int, m: int) -> Report:
    """The universal Frobenius reduces to X_i -> X_i^p mod p."""
    report = Report("frobenius mod p p=%d m=%d" % (p, m))
    polys = ghost_polynomials(p, m, "frobenius")
    for i, P in enumerate(polys):
        report.trials += 1
        reduced = P.mod(p)
        monos = list(reduced.monomials())
        expected = [0] * (m + 2)
        expected[i] = p
        if len(monos) != 1 or monos[0][1] != 1 or list(monos[0][0]) != expected:
            report.failures.append((i, monos[:4]))
    return report


def _teichmuller_int(a: int, p: int, modulus: int) -> int:
    t = a % modulus
    while True:
        nxt = pow(t, p, modulus)
        if nxt == t:
            return t
        t = nxt


def verify_prime_field_addition(p: int, m: int, trials: int = 200, seed: int = 0) -> Report:
    """W_{m+1}(F_p) = Z/p^(m+1) via (a_i) -> sum p^i [a_i]; addition must match."""
    rng = random.Random(seed)
    ctx = build_context(p, m)
    mod = p ** (m + 1)
    report = Report("W(F_p) addition p=%d m=%d" % (p, m))

    def to_int(v):
        return sum(p**i * _teichmuller_int(c.c[0], p, mod) for i, c in enumerate(v.comps)) % mod

    for _ in range(trials):
        a = ctx.vector([TruncPoly(p, 1, [rng.randrange(p)]) for _ in range(m + 1)])
        b = ctx.vector([TruncPoly(p, 1, [rng.randrange(p)]) for _ in range(m + 1)])
        report.trials += 1
        if to_int(witt_add(a, b)) != (to_int(a) + to_int(b)) % mod:
            report.failures.append((a.comps, b.comps))
    return report


# --------------------------------------------------------------------------
# brute-force reduction


def _coefficient_set(cfg: FieldConfig, x: WittVec):
    """{1} together with p-th roots of the leading coefficients present, found by search."""
    coeffs = {cfg.one}
    candidates = _small_residues(cfg)
    powers = {c.frobenius(): c for c in candidates}
    for comp in x.comps:
        for k, c in comp.terms.items():
            if k < 0 and c in powers:
                coeffs.add(powers[c])
    return sorted(coeffs, key=lambda c: (len(c.num), c.num, c.den))


def _small_residues(cfg):
    """All a_0 + a_1 y with a_i in F_p (just F_p for a perfect field)."""
    p = cfg.p
    out = []
    ys = [cfg.one] if cfg.perfect else [cfg.one, cfg.y]
    for coeffs in itertools.product(range(p), repeat=len(ys)):
        c = cfg.zero
        for a, base in zip(coeffs, ys):
            c = c + base * a
        if not c.is_zero():
            out.append(c)
    return out


def _moves(cfg, ctx, bound, coeffs):
    p = cfg.p
    ymons = [cfg.one] if cfg.perfect else [cfg.y**k for k in range(p)]
    for i in range(ctx.m + 1):
        for j in range(-bound, 1):
            for c in coeffs:
                for ym in ymons:
                    z = teichmuller_at(ctx, LaurentElem.monomial(c * ym, j), i)
                    yield witt_sub(witt_frobenius(z), z)


def _level(x):
    lvl = fil_level(x)
    return 0 if lvl is None or lvl < 0 else lvl


def brute_reduce(x: WittVec, bound: int = 4, depth: int = 3, max_states: int = 4000):
    """Best-first search over x - (F-1)z, z a single monomial V^i[c y^k pi^j].

    Returns (representative, level) with the least naive filtration level
    reached; the level is always an upper bound for the Swan conductor.
    """
    ctx = x.ctx
    if ctx.m > 1 or ctx.p not in (2, 3):
        raise ValueError("brute_reduce is limited to m <= 1 and p in {2, 3}")
    cfg = next(c.cfg for c in x.comps)
    coeffs = _coefficient_set(cfg, x)
    moves = list(_moves(cfg, ctx, bound, coeffs))
    best = (_level(x), x)
    counter = itertools.count()
    heap = [(best[0], 0, next(counter), x)]
    seen = {x}
    while heap and len(seen) < max_states:
        lvl, d, _, cur = heapq.heappop(heap)
        if lvl < best[0]:
            best = (lvl, cur)
        if best[0] == 0 or d >= depth:
            continue
        for mv in moves:
            nxt = witt_sub(cur, mv)
            if nxt in seen:
                continue
            seen.add(nxt)
            heapq.heappush(heap, (_level(nxt), d + 1, next(counter), nxt))
    for lvl, _, _, cur in heap:
        if lvl < best[0]:
            best = (lvl, cur)
    return best[1], best[0]


# --------------------------------------------------------------------------
# fil'_n: generators versus the componentwise rule


def _random_bounded(cfg, rng, min_val, width=3, density=Fraction(3, 5)):
    """Random Laurent element with valuation >= min_val."""
    terms = {}
    for k in range(min_val, min_val + width):
        if coin(rng, density):
            c = cfg.random_residue(rng, max_deg=1)
            if not c.is_zero():
                terms[k] = c
    return cfg.laurent(terms)


def _ceil_div(a, b):
    return -(-a // b)


def random_fil_member(cfg, ctx, n, rng):
    """Random element of fil_n W_{m+1}(K)."""
    p, m = ctx.p, ctx.m
    return ctx.vector([_random_bounded(cfg, rng, -(n // p ** (m - i))) for i in range(m + 1)])


def random_fil_prime_componentwise(cfg, ctx, n, rng):
    """Random vector satisfying the componentwise fil'_n rule."""
    p, m = ctx.p, ctx.m
    mp = fil_prime_split(n, p, m)
    comps = []
    for i in range(m + 1):
        lvl = n if i <= m - mp else n + 1
        comps.append(_random_bounded(cfg, rng, -(lvl // p ** (m - i))))
    return ctx.vector(comps)


def fil_prime_generator_sample(cfg: FieldConfig, n: int, m: int, trials: int, seed: int = 0) -> Report:
    """Both inclusions between the generator definition of fil'_n and the componentwise rule.

    Forward: u + V^(m+1-m')(w) with u in fil_n, w in fil_{n+1} W_{m'} passes the
    componentwise test.  Backward: a componentwise member x is split as
    (x_0..x_{m-m'}, 0..) + V^(m+1-m')(x_{m+1-m'}..x_m) and the split is checked
    by actual Witt addition.
    """
    rng = random.Random(seed)
    p = cfg.p
    ctx = build_context(p, m)
    mp = fil_prime_split(n, p, m)
    report = Report("fil' generators p=%d m=%d n=%d" % (p, m, n))
    for _ in range(trials):
        u = random_fil_member(cfg, ctx, n, rng)
        if mp:
            sub = build_context(p, mp - 1)
            w = random_fil_member(cfg, sub, n + 1, rng)
            shifted = ctx.vector((cfg.lzero(),) * (m + 1 - mp) + w.comps)
            gen = witt_add(u, shifted)
        else:
            gen = u
        report.trials += 1
        if not fil_prime_membership(gen, n):
            report.failures.append(("forward", gen.comps))

        x = random_fil_prime_componentwise(cfg, ctx, n, rng)
        head = ctx.vector(x.comps[: m + 1 - mp] + (cfg.lzero(),) * mp)
        tail = ctx.vector((cfg.lzero(),) * (m + 1 - mp) + x.comps[m + 1 - mp:])
        ok = fil_membership(head, n)
        if mp:
            sub = build_context(p, mp - 1)
            ok = ok and fil_membership(sub.vector(x.comps[m + 1 - mp:]), n + 1)
        ok = ok and witt_add(head, tail) == x
        report.trials += 1
        if not ok:
            report.failures.append(("backward", x.comps))
    return report


def fil_prime_by_generators(x: WittVec, n: int) -> bool:
    """Membership in fil'_n tested through the generator split only."""
    ctx = x.ctx
    p, m = ctx.p, ctx.m
    mp = min(ord_p(n + 1, p), m + 1)
    cfg = next(c.cfg for c in x.comps)
    head = ctx.vector(x.comps[: m + 1 - mp] + (cfg.lzero(),) * mp)
    if not fil_membership(head, n):
        return False
    if mp == 0:
        return True
    sub = build_context(p, mp - 1)
    return fil_membership(sub.vector(x.comps[m + 1 - mp:]), n + 1)
