"""1-forms on F and K, the composite F^m d, and graded pieces of Omega^1_K.

Residue-level forms are f*dy (the zero module when F is perfect; every form
is closed since Omega^2_F = 0 for a p-basis of size <= 1).  Local forms are
stored in the logarithmic basis f*dy + b*dlog(pi); the plain basis
f*dy + a*dpi is the same form with b = a*pi.

A graded class at level n is a pair (alpha, beta) of residue elements:

* log variant:   (alpha*dy + beta*dlog[pi]) (x) [pi^-n]
* plain variant: (alpha*dy + beta*dpi)      (x) [pi^-(n+1)]
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import NotInBGr, NotInFiltration
from .field import (FieldConfig, LaurentElem, ResidueElem, coin, ord_p, p_basis_decompose,
                    partial_derivative, pth_power_root, split_level)
from .witt import WittVec

LOG = "log"
PLAIN = "plain"


# --------------------------------------------------------------------------
# residue level


@dataclass(frozen=True)
class DiffFormF:
    """The form f*dy on F."""

    f: ResidueElem

    def __add__(self, other):
        return DiffFormF(self.f + other.f)

    def __sub__(self, other):
        return DiffFormF(self.f - other.f)

    def __neg__(self):
        return DiffFormF(-self.f)

    def is_zero(self):
        return self.f.is_zero()


def d_residue(f: ResidueElem) -> DiffFormF:
    return DiffFormF(partial_derivative(f))


def _cartier_coeff(f: ResidueElem) -> ResidueElem:
    if f.cfg.perfect:
        return f.cfg.zero
    return p_basis_decompose(f)[-1]


def cartier(w: DiffFormF) -> DiffFormF:
    """C(f dy) = f_{p-1} dy where f = sum_j f_j^p y^j."""
    return DiffFormF(_cartier_coeff(w.f))


def inverse_cartier(w: DiffFormF) -> DiffFormF:
    """C^{-1}(f dy) = f^p y^(p-1) dy (the canonical representative)."""
    cfg = w.f.cfg
    if cfg.perfect:
        return DiffFormF(cfg.zero)
    return DiffFormF(w.f.frobenius() * cfg.y ** (cfg.p - 1))


def cartier_power(w: DiffFormF, r: int) -> DiffFormF:
    for _ in range(r):
        if w.is_zero():
            break
        w = cartier(w)
    return w


def b_r_membership(w: DiffFormF, r: int) -> bool:
    """Membership in B_r Omega^1_F; B_0 = 0 and B_r = {w : C(w) in B_{r-1}}."""
    if r < 0:
        raise ValueError("r must be >= 0")
    if r == 0:
        return w.is_zero()
    return b_r_membership(cartier(w), r - 1)


def z_r_element_test(beta: ResidueElem, r: int):
    """Return (True, gamma) with gamma^(p^r) = beta, or (False, None)."""
    gamma = pth_power_root(beta, r)
    return gamma is not None, gamma


def exact_primitive(w: DiffFormF) -> ResidueElem:
    """Unique g in sum_{k>=1} F^p y^k with dg = w; w must be exact."""
    cfg = w.f.cfg
    if cfg.perfect or w.is_zero():
        return cfg.zero
    p = cfg.p
    comps = p_basis_decompose(w.f)
    if not comps[-1].is_zero():
        raise ValueError("form is not exact")
    g = cfg.zero
    for k in range(1, p):
        c = comps[k - 1]
        if not c.is_zero():
            g = g + c.frobenius() * cfg.y ** k * pow(k, -1, p)
    return g


# --------------------------------------------------------------------------
# local level


class DiffFormK:
    """f*dy + b*dlog(pi) with f, b in F[pi, 1/pi]."""

    __slots__ = ("f", "b")

    def __init__(self, f: LaurentElem, b: LaurentElem):
        self.f = f
        self.b = b

    @classmethod
    def from_plain(cls, f: LaurentElem, a: LaurentElem) -> "DiffFormK":
        return cls(f, a.shift(1))

    def plain(self):
        """Coefficients (f, a) in the basis dy, dpi."""
        return self.f, self.b.shift(-1)

    def __add__(self, other):
        return DiffFormK(self.f + other.f, self.b + other.b)

    def __sub__(self, other):
        return DiffFormK(self.f - other.f, self.b - other.b)

    def __neg__(self):
        return DiffFormK(-self.f, -self.b)

    def scale(self, c: LaurentElem) -> "DiffFormK":
        return DiffFormK(self.f * c, self.b * c)

    def __eq__(self, other):
        return isinstance(other, DiffFormK) and self.f == other.f and self.b == other.b

    def __hash__(self):
        return hash((self.f, self.b))

    def is_zero(self):
        return self.f.is_zero() and self.b.is_zero()

    def __repr__(self):
        from .parser import render_laurent
        return "DiffFormK((%s)*dy + (%s)*dlog(pi))" % (render_laurent(self.f),
                                                      render_laurent(self.b))


def d_local(x: LaurentElem) -> DiffFormK:
    """d(sum a_j pi^j) = sum a_j' pi^j dy + (sum j a_j pi^j) dlog pi."""
    return DiffFormK(x.dy(), x.pi_weighted())


def _power_p_k_minus_1(c: LaurentElem, k: int, p: int) -> LaurentElem:
    """c^(p^k - 1) = prod_{l<k} (c^(p^l))^(p-1)."""
    out = None
    cur = c
    for _ in range(k):
        factor = cur ** (p - 1)
        out = factor if out is None else out * factor
        cur = cur.frobenius()
    return out


def fmd(x: WittVec) -> DiffFormK:
    """F^m d(x_0, ..., x_m) = sum_i x_i^(p^(m-i) - 1) dx_i."""
    p, m = x.ctx.p, x.ctx.m
    cfg = x.comps[0].cfg
    total = DiffFormK(cfg.lzero(), cfg.lzero())
    for i, c in enumerate(x.comps):
        if c.is_zero():
            continue
        dc = d_local(c)
        if dc.is_zero():
            continue
        k = m - i
        if k:
            dc = dc.scale(_power_p_k_minus_1(c, k, p))
        total = total + dc
    return total


def fil_omega_membership(w: DiffFormK, n: int, variant: str = LOG) -> bool:
    """fil_n (log: pole order <= n on dy, dlog pi) or fil'_n (plain: <= n+1 on dy, dpi)."""
    if variant == LOG:
        return w.f.valuation_at_least(-n) and w.b.valuation_at_least(-n)
    if variant == PLAIN:
        return w.f.valuation_at_least(-n - 1) and w.b.valuation_at_least(-n)
    raise ValueError("unknown variant %r" % variant)


# --------------------------------------------------------------------------
# graded classes


@dataclass(frozen=True)
class GradedForm:
    n: int
    variant: str
    alpha: ResidueElem
    beta: ResidueElem

    def _check(self, other):
        if self.n != other.n or self.variant != other.variant:
            raise ValueError("graded forms at different levels")

    def __add__(self, other):
        self._check(other)
        return GradedForm(self.n, self.variant, self.alpha + other.alpha, self.beta + other.beta)

    def __sub__(self, other):
        self._check(other)
        return GradedForm(self.n, self.variant, self.alpha - other.alpha, self.beta - other.beta)

    def __neg__(self):
        return GradedForm(self.n, self.variant, -self.alpha, -self.beta)

    def is_zero(self):
        return self.alpha.is_zero() and self.beta.is_zero()

    @property
    def pole_exponent(self) -> int:
        return self.n if self.variant == LOG else self.n + 1

    def render(self) -> str:
        from .parser import render_residue
        second = "dlog(pi)" if self.variant == LOG else "dpi"
        return "(%s*dy + %s*%s) ⊗ pi^(-%d)" % (
            _paren(render_residue(self.alpha)), _paren(render_residue(self.beta)),
            second, self.pole_exponent)

    def to_json(self) -> dict:
        from .parser import render_residue
        return {"n": self.n, "variant": self.variant,
                "alpha": render_residue(self.alpha), "beta": render_residue(self.beta),
                "form": self.render()}


def _paren(s):
    return "(%s)" % s if (" " in s or "/" in s) else s


def graded_class(w: DiffFormK, n: int, variant: str = LOG) -> GradedForm:
    if not fil_omega_membership(w, n, variant):
        raise NotInFiltration("form is not in fil%s_%d" % ("" if variant == LOG else "'", n))
    if variant == LOG:
        return GradedForm(n, LOG, w.f.coefficient(-n), w.b.coefficient(-n))
    return GradedForm(n, PLAIN, w.f.coefficient(-n - 1), w.b.coefficient(-n))


def residue_map(g: GradedForm) -> ResidueElem:
    """res: Omega^1_F(log) -> F, split by dlog[pi]; returns beta."""
    if g.variant != LOG:
        raise ValueError("residue map is defined on the logarithmic variant")
    return g.beta


# --------------------------------------------------------------------------
# normal forms of BGr_n and BGr'_n


@dataclass(frozen=True)
class NormalFormBGr:
    """Coefficients x_{k,j} (``layers[j][k-1]``) and x of the unique normal form.

    For the log variant the layers run over j < r with n = n0 p^r; for the
    plain variant over j < ord_p(n+1).  With a perfect residue field every
    layer is empty.
    """

    n: int
    variant: str
    layers: tuple
    x: ResidueElem

    @property
    def cfg(self) -> FieldConfig:
        return self.x.cfg

    def to_json(self) -> dict:
        from .parser import render_residue
        return {"n": self.n, "variant": self.variant,
                "x": render_residue(self.x),
                "layers": [[render_residue(c) for c in row] for row in self.layers]}


def layer_count(n: int, p: int, variant: str) -> int:
    if variant == LOG:
        return ord_p(n, p)
    return ord_p(n + 1, p)


def _frob_iter(c: ResidueElem, k: int) -> ResidueElem:
    for _ in range(k):
        c = c.frobenius()
    return c


def layer_term(x: ResidueElem, k: int, j: int) -> ResidueElem:
    """dy-coefficient of x^(p^(j+1)) (y^k)^(p^j) k dy/y."""
    cfg = x.cfg
    p = cfg.p
    if x.is_zero():
        return cfg.zero
    return _frob_iter(x, j + 1) * cfg.y ** (k * p**j - 1) * k


def layers_sum(layers, cfg: FieldConfig) -> ResidueElem:
    total = cfg.zero
    for j, row in enumerate(layers):
        for k, x in enumerate(row, start=1):
            total = total + layer_term(x, k, j)
    return total


def reassemble(nf: NormalFormBGr) -> GradedForm:
    """Graded form displayed by the normal form (exact inverse of extraction)."""
    cfg = nf.cfg
    p = cfg.p
    alpha = layers_sum(nf.layers, cfg)
    if nf.variant == LOG:
        n0, r = split_level(nf.n, p)
        xr = _frob_iter(nf.x, r)
        # x^(p^r - 1) dx
        alpha = alpha + (_frob_iter(nf.x, r) / nf.x * partial_derivative(nf.x)
                         if not nf.x.is_zero() else cfg.zero)
        beta = -(xr * n0)
        return GradedForm(nf.n, LOG, alpha, beta)
    rp = ord_p(nf.n, p)
    return GradedForm(nf.n, PLAIN, alpha, _frob_iter(nf.x, rp))


def _peel_layers(alpha: ResidueElem, r: int):
    """Decompose alpha*dy in B_r into layer coefficients, top layer first."""
    cfg = alpha.cfg
    p = cfg.p
    width = 0 if cfg.perfect else p - 1
    layers = [None] * r
    rest = alpha
    for j in range(r - 1, -1, -1):
        top = cartier_power(DiffFormF(rest), j)
        comps = p_basis_decompose(top.f) if not cfg.perfect else ()
        if comps and not comps[-1].is_zero():
            raise NotInBGr("dy-part is not in B_%d" % r)
        row = tuple(comps[k - 1] * pow(k, -1, p) for k in range(1, width + 1))
        layers[j] = row
        for k, xk in enumerate(row, start=1):
            rest = rest - layer_term(xk, k, j)
    if not rest.is_zero():
        raise NotInBGr("dy-part is not in B_%d" % r)
    return tuple(layers)


def bgr_normal_form(g: GradedForm) -> NormalFormBGr:
    """Unique normal-form coefficients of a class in BGr_n (log) or BGr'_n (plain).

    Raises NotInBGr when the class is outside that subgroup.
    """
    cfg = g.alpha.cfg
    p = cfg.p
    n = g.n
    if n < 1:
        raise NotInBGr("normal forms are defined for n >= 1")
    if g.variant == LOG:
        n0, r = split_level(n, p)
        ok, gamma = z_r_element_test(g.beta, r)
        if not ok:
            raise NotInBGr("residue part is not a p^%d-th power" % r)
        x = gamma * (-pow(n0, -1, p))
        x_part = cfg.zero
        if not x.is_zero():
            x_part = _frob_iter(x, r) / x * partial_derivative(x)
        layers = _peel_layers(g.alpha - x_part, r)
        return NormalFormBGr(n, LOG, layers, x)
    if g.variant == PLAIN:
        r = ord_p(n + 1, p)
        rp = ord_p(n, p)
        ok, x = z_r_element_test(g.beta, rp)
        if not ok:
            raise NotInBGr("dpi part is not a p^%d-th power" % rp)
        layers = _peel_layers(g.alpha, r)
        return NormalFormBGr(n, PLAIN, layers, x)
    raise ValueError("unknown variant %r" % g.variant)


def is_in_bgr(g: GradedForm) -> bool:
    try:
        bgr_normal_form(g)
    except NotInBGr:
        return False
    return True


def random_normal_form(cfg: FieldConfig, n: int, variant: str, rng, max_deg=2) -> NormalFormBGr:
    """Random nonzero coefficient table (x may vanish when some layer does not)."""
    p = cfg.p
    r = layer_count(n, p, variant)
    width = 0 if cfg.perfect else p - 1
    layers = tuple(tuple(cfg.random_residue(rng, max_deg=max_deg) for _ in range(width))
                   for _ in range(r))
    x = cfg.zero
    if any(not c.is_zero() for row in layers for c in row) and coin(rng, Fraction(3, 20)):
        return NormalFormBGr(n, variant, layers, x)
    while x.is_zero():
        x = cfg.random_residue(rng, max_deg=max_deg)
    return NormalFormBGr(n, variant, layers, x)
