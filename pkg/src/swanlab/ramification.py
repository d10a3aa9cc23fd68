"""Conductors of Artin-Schreier-Witt characters.

A character of order dividing p^(m+1) is represented by a Witt vector
x in W_{m+1}(K), two vectors giving the same character when they differ by
(F - 1)W_{m+1}(K).  Conductors are read off a reduced representative: every
pole term c*pi^-e (e > 0) of a component with p | e has its F^p-part
c_0^p (c = sum_k c_k^p y^k) moved down to c_0*pi^(-e/p) by subtracting
(F - 1)V^i[c_0 pi^(-e/p)].  The naive level max_i -p^(m-i) v(x_i) of the
reduced vector is then certified by a nonzero graded class of F^m d, which
by injectivity of the refined conductor map pins the Swan conductor.

Sign conventions: rsw = -gr_n(F^m d)(x) and rsw' = -gr'_n(F^m d)(x).
The sections rho_n and kappa_n are normalised so that rsw(rho_n(w)) = w
and rsw'(kappa_n(w)) = w exactly.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .differentials import (LOG, PLAIN, GradedForm, NormalFormBGr, bgr_normal_form,
                            fmd, graded_class, is_in_bgr)
from .errors import OutOfTheoremRange, ReductionBudgetExceeded, UnsupportedRange
from .field import FieldConfig, LaurentElem, ord_p, p_basis_decompose, split_level
from .witt import (WittContext, WittVec, build_context, fil_level, fil_prime_membership,
                   teichmuller_at, witt_add, witt_frobenius, witt_neg, witt_sub)


@dataclass(frozen=True)
class CharacterClass:
    """delta_{m+1}(representative) in H^1(K, Z/p^(m+1))."""

    cfg: FieldConfig
    representative: WittVec

    @property
    def ctx(self) -> WittContext:
        return self.representative.ctx

    @property
    def p(self) -> int:
        return self.cfg.p

    @property
    def m(self) -> int:
        return self.representative.ctx.m

    @classmethod
    def from_components(cls, cfg: FieldConfig, comps) -> "CharacterClass":
        comps = tuple(comps)
        ctx = build_context(cfg.p, len(comps) - 1)
        return cls(cfg, ctx.vector(comps))

    def __add__(self, other):
        return CharacterClass(self.cfg, witt_add(self.representative, other.representative))

    def __neg__(self):
        return CharacterClass(self.cfg, witt_neg(self.representative))

    def __sub__(self, other):
        return self + (-other)

    def lift(self, m: int) -> "CharacterClass":
        """Same character viewed in W_{m+1} (multiplication by p <-> V)."""
        if m < self.m:
            raise ValueError("cannot lift to a shorter Witt length")
        ctx = build_context(self.p, m)
        zero = self.cfg.lzero()
        comps = (zero,) * (m - self.m) + self.representative.comps
        return CharacterClass(self.cfg, ctx.vector(comps))


def artin_schreier_coboundary(y: WittVec) -> WittVec:
    """(F - 1)(y) = F(y) - y."""
    return witt_sub(witt_frobenius(y), y)


def theta(a: LaurentElem, j: int, m: int | None = None) -> CharacterClass:
    """theta_j(a) = delta_{j+1}((a, 0, ..., 0)), placed in W_{m+1} via V^(m-j)."""
    cfg = a.cfg
    if m is None:
        m = j
    if j > m:
        raise ValueError("theta_j needs j <= m")
    ctx = build_context(cfg.p, m)
    return CharacterClass(cfg, teichmuller_at(ctx, a, m - j))


# --------------------------------------------------------------------------
# reduction


def _reducible_term(c: LaurentElem, p: int):
    """Largest pole e > 0 with p | e whose coefficient has nonzero F^p-part."""
    for k in sorted(c.terms):
        if k >= 0:
            break
        if k % p:
            continue
        root = p_basis_decompose(c.terms[k])[0]
        if not root.is_zero():
            return k, root
    return None


def _phase1(x: WittVec, cap: int):
    ctx = x.ctx
    p = ctx.p
    steps = 0
    for i in range(ctx.m + 1):
        while True:
            found = _reducible_term(x.comps[i], p)
            if found is None:
                break
            if steps >= cap:
                return x, False
            k, root = found
            z = teichmuller_at(ctx, LaurentElem.monomial(root, k // p), i)
            x = witt_sub(x, artin_schreier_coboundary(z))
            steps += 1
    return x, True


def certificate(x: WittVec, n: int) -> GradedForm:
    """gr_n(F^m d)(x) in the logarithmic graded piece."""
    return graded_class(fmd(x), n, LOG)


def _level(x: WittVec) -> int:
    lvl = fil_level(x)
    return 0 if lvl is None or lvl < 0 else lvl


def _search_moves(x: WittVec, n: int):
    ctx = x.ctx
    p, m = ctx.p, ctx.m
    cfg = x.comps[0].cfg if x.comps else None
    coeffs = {cfg.one}
    for c in x.comps:
        if not c.is_zero():
            root = p_basis_decompose(c.leading_coefficient())[0]
            if not root.is_zero():
                coeffs.add(root)
    box = -(-n // p)  # ceil(n / p)
    for i in range(m + 1):
        scale = p ** (m - i)
        for j in range(1, box // scale + 1):
            for c in coeffs:
                yield teichmuller_at(ctx, LaurentElem.monomial(c, -j), i)


def _phase2(x: WittVec, n: int, depth: int, max_states: int):
    """Breadth-first search over x - (F-1)z for monomial z; returns a certified rep or None."""
    seen = {x}
    queue = deque([(x, 0)])
    while queue and len(seen) < max_states:
        cur, d = queue.popleft()
        if d >= depth:
            continue
        for z in _search_moves(cur, n):
            cand, ok = _phase1(witt_sub(cur, artin_schreier_coboundary(z)), 10 * (n + 1) * (cur.ctx.m + 1))
            if not ok or cand in seen:
                continue
            seen.add(cand)
            lvl = _level(cand)
            if lvl < n and (lvl == 0 or not certificate(cand, lvl).is_zero()):
                return cand
            queue.append((cand, d + 1))
    return None


def reduce_representative(chi: CharacterClass, max_iterations: int | None = None,
                          search_depth: int = 2, max_states: int = 2000) -> WittVec:
    """Representative of the same class whose naive level is the Swan conductor.

    Raises ReductionBudgetExceeded (carrying the best vector found and an
    upper bound for sw) if the level cannot be certified within budget.
    """
    x = chi.representative
    start = _level(x)
    cap = max_iterations if max_iterations is not None else 10 * max(start, 1) * (x.ctx.m + 1)
    x, finished = _phase1(x, cap)
    lvl = _level(x)
    if not finished:
        raise ReductionBudgetExceeded("phase-1 iteration cap %d reached" % cap,
                                      best=x, sw_upper_bound=lvl)
    if lvl == 0 or not certificate(x, lvl).is_zero():
        return x
    better = _phase2(x, lvl, search_depth, max_states)
    if better is None:
        raise ReductionBudgetExceeded("graded certificate vanishes at level %d" % lvl,
                                      best=x, sw_upper_bound=lvl)
    return better


# --------------------------------------------------------------------------
# conductors


@dataclass
class ConductorReport:
    sw: int
    rsw: GradedForm | None
    sw_mod: int
    rsw_mod: GradedForm | None
    rsw_mod_status: str
    representative: WittVec
    cfg: FieldConfig = field(repr=False)

    @property
    def p(self):
        return self.cfg.p

    @property
    def log_slope(self):
        return self.sw if self.sw >= 1 else None

    @property
    def slope(self):
        return self.sw_mod + 1 if self.sw_mod > 1 else None

    @property
    def log_char_point(self):
        return -self.rsw if self.rsw is not None else None

    @property
    def char_point(self):
        if self.slope is None or self.rsw_mod is None:
            return None
        return -self.rsw_mod

    @property
    def status(self) -> str:
        if self.slope is None or self.log_slope is None:
            return "out_of_theorem_range"
        return "ok"


def analyze(chi: CharacterClass, **budget) -> ConductorReport:
    """Compute sw, rsw, sw', rsw' from a reduced representative."""
    cfg = chi.cfg
    p = cfg.p
    x = reduce_representative(chi, **budget)
    sw = _level(x)
    if sw == 0:
        return ConductorReport(0, None, 0, None, "absent", x, cfg)
    w = fmd(x)
    rsw = -graded_class(w, sw, LOG)
    sw_mod = sw - 1 if fil_prime_membership(x, sw - 1) else sw
    if sw_mod == 0:
        return ConductorReport(sw, rsw, 0, None, "absent", x, cfg)
    if p == 2 and sw_mod == 1:
        return ConductorReport(sw, rsw, sw_mod, None, "unsupported_range", x, cfg)
    rsw_mod = -graded_class(w, sw_mod, PLAIN)
    return ConductorReport(sw, rsw, sw_mod, rsw_mod, "ok", x, cfg)


def swan(chi: CharacterClass) -> int:
    return analyze(chi).sw


def refined_swan(chi: CharacterClass) -> GradedForm:
    rep = analyze(chi)
    if rep.rsw is None:
        raise OutOfTheoremRange("refined Swan conductor needs sw >= 1")
    return rep.rsw


def swan_modified(chi: CharacterClass) -> int:
    return analyze(chi).sw_mod


def refined_swan_modified(chi: CharacterClass) -> GradedForm:
    rep = analyze(chi)
    if rep.rsw_mod_status == "unsupported_range":
        raise UnsupportedRange("rsw' is undefined for p = 2 and sw' = 1")
    if rep.rsw_mod is None:
        raise OutOfTheoremRange("refined modified Swan conductor needs sw' >= 1")
    return rep.rsw_mod


def critical_slope(chi: CharacterClass) -> int:
    rep = analyze(chi)
    if rep.slope is None:
        raise OutOfTheoremRange("theorem range not met: sw' = %d <= 1" % rep.sw_mod)
    return rep.slope


def log_critical_slope(chi: CharacterClass) -> int:
    rep = analyze(chi)
    if rep.log_slope is None:
        raise OutOfTheoremRange("theorem range not met: sw = 0")
    return rep.log_slope


def char_point(chi: CharacterClass) -> GradedForm:
    rep = analyze(chi)
    if rep.char_point is None:
        raise OutOfTheoremRange("theorem range not met: sw' = %d <= 1" % rep.sw_mod)
    return rep.char_point


def log_char_point(chi: CharacterClass) -> GradedForm:
    rep = analyze(chi)
    if rep.log_char_point is None:
        raise OutOfTheoremRange("theorem range not met: sw = 0")
    return rep.log_char_point


# --------------------------------------------------------------------------
# sections of the refined conductor maps


def constant_lift(c):
    """The default lift F -> R: c as a constant in pi."""
    return LaurentElem.monomial(c, 0)


def _sum_thetas(cfg, ctx, placed):
    total = None
    for a, j in placed:
        if a.is_zero():
            continue
        v = teichmuller_at(ctx, a, ctx.m - j)
        total = v if total is None else witt_add(total, v)
    if total is None:
        total = ctx.zero_like(cfg.lzero())
    return total


def rho_n(nf: NormalFormBGr, m: int | None = None, lift=constant_lift) -> CharacterClass:
    """Section of rsw on BGr_n: the class whose refined Swan conductor is nf.

    ``lift`` maps F to R = F[[pi]] (as Laurent polynomials of valuation >= 0)
    and must reduce to the identity mod pi; the class does not depend on it.
    """
    if nf.variant != LOG:
        raise ValueError("rho_n takes a logarithmic normal form")
    cfg = nf.cfg
    p = cfg.p
    n = nf.n
    if n < 1:
        raise ValueError("rho_n needs n >= 1")
    n0, r = split_level(n, p)
    m = r if m is None else max(m, r)
    ctx = build_context(p, m)
    placed = []
    for j, row in enumerate(nf.layers):
        for k, xk in enumerate(row, start=1):
            if not xk.is_zero():
                term = lift(xk).frobenius() * LaurentElem.monomial(cfg.y ** k, -(n // p**j))
                placed.append((term, j))
    placed.append((lift(nf.x) * LaurentElem.monomial(cfg.one, -n0), r))
    x = _sum_thetas(cfg, ctx, placed)
    return CharacterClass(cfg, witt_neg(x))


def kappa_n(nf: NormalFormBGr, m: int | None = None, lift=constant_lift) -> CharacterClass:
    """Section of rsw' on BGr'_n: the class whose refined modified conductor is nf."""
    if nf.variant != PLAIN:
        raise ValueError("kappa_n takes a plain normal form")
    cfg = nf.cfg
    p = cfg.p
    n = nf.n
    if n < 1 or (p == 2 and n == 1):
        raise UnsupportedRange("kappa_n is defined for n > 1 (n >= 1 when p != 2)")
    r = ord_p(n + 1, p)
    rp = ord_p(n, p)
    n0 = n // p**rp
    need = max(r - 1, rp)
    m = need if m is None else max(m, need)
    ctx = build_context(p, m)
    placed = []
    for j, row in enumerate(nf.layers):
        for k, xk in enumerate(row, start=1):
            if not xk.is_zero():
                term = lift(xk).frobenius() * LaurentElem.monomial(cfg.y ** k, -((n + 1) // p**j))
                placed.append((term, j))
    scalar = (-pow(n0, -1, p)) % p
    placed.append((lift(nf.x) * LaurentElem.monomial(cfg.constant(scalar), -n0), rp))
    x = _sum_thetas(cfg, ctx, placed)
    return CharacterClass(cfg, witt_neg(x))


def check_rsw_in_bgr(rep: ConductorReport) -> bool:
    ok = rep.rsw is None or is_in_bgr(rep.rsw)
    if rep.rsw_mod is not None:
        ok = ok and is_in_bgr(rep.rsw_mod)
    return ok
