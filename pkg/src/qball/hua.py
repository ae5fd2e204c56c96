"""Mixed second derivatives at zero and the two quantum Hua systems.

System A sums over the lower index with weights q^{2c}; system B is the
transposed extraction over the upper index.  Both are checked at the kernel
level (the coefficients of the Poisson kernel's (1,1) component reduce to
zero on the Shilov boundary) and, for n = 1, at the integral level on
explicit Poisson integrals of boundary functions.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .boundary import N1Boundary, shilov_reduce
from .kernels import Kernel, p_component, poisson_integral_n1, poisson_kernel
from .ncpoly import NCPoly
from .polmat import TruncatedSeries
from .render import poly_text
from .scalars import ONE, VScalar, ZERO, qpow
from .uqact import ActionTables, UqGen, act, pol_tables


@dataclass
class HuaReport:
    system: str                   # "A" or "B"
    n: int
    cutoff: int
    residuals: dict = field(default_factory=dict)
    truncated: bool = False

    @property
    def status(self) -> str:
        return "PASS" if all(r is None for r in self.residuals.values()) else "FAIL"

    def failures(self) -> dict:
        return {k: v for k, v in self.residuals.items() if v is not None}


def _word_11(alg, b: int, beta: int, a: int, alpha: int) -> tuple:
    zc = "zeta" if alg.gens[0].cls == "zeta" else "z"
    sc = zc + "s"
    return (alg.gen_code(zc, b, beta), alg.gen_code(sc, a, alpha))


def d2_at_zero_series(u: TruncatedSeries, b: int, beta: int,
                      a: int, alpha: int) -> VScalar:
    """Coefficient of z_b^beta (z_a^alpha)* in the (1,1) component."""
    comp = u.component(1, 1)
    return comp.coeff(_word_11(u.alg, b, beta, a, alpha))


def d2_at_zero_kernel(P: Kernel, b: int, beta: int, a: int, alpha: int) -> NCPoly:
    """Kernel-valued derivative: the second legs paired with the first-leg
    basis word z_b^beta (z_a^alpha)*."""
    sp = P.space
    target = _word_11(sp.leg1.alg, b, beta, a, alpha)
    acc: dict = {}
    for (ta, tb, tc, td, w1, w2), c in P.terms.items():
        if w1 != target:
            continue
        if (ta, tb, tc, td) != (0, 0, 0, 0):
            raise ValueError("kernel carries powers; derivative undefined")
        s = acc.get(w2, ZERO) + c
        if s.is_zero():
            acc.pop(w2, None)
        else:
            acc[w2] = s
    return NCPoly(sp.leg2.alg, acc)


def _weights(n: int, weighted: bool) -> list:
    return [qpow(2 * c) if weighted else ONE for c in range(1, n + 1)]


def hua_sum_A(u, n: int, alpha: int, beta: int, weighted: bool = True):
    """sum_c q^{2c} d2(u; c, beta, c, alpha)."""
    w = _weights(n, weighted)
    if isinstance(u, Kernel):
        acc = u.space.leg2.alg.zero()
        for c in range(1, n + 1):
            acc = acc + d2_at_zero_kernel(u, c, beta, c, alpha).scale(w[c - 1])
        return acc
    acc = ZERO
    for c in range(1, n + 1):
        acc = acc + w[c - 1] * d2_at_zero_series(u, c, beta, c, alpha)
    return acc


def hua_sum_B(u, n: int, a: int, b: int, weighted: bool = True):
    """sum_gamma q^{2 gamma} d2(u; a, gamma, b, gamma)."""
    w = _weights(n, weighted)
    if isinstance(u, Kernel):
        acc = u.space.leg2.alg.zero()
        for g in range(1, n + 1):
            acc = acc + d2_at_zero_kernel(u, a, g, b, g).scale(w[g - 1])
        return acc
    acc = ZERO
    for g in range(1, n + 1):
        acc = acc + w[g - 1] * d2_at_zero_series(u, a, g, b, g)
    return acc


def verify_hua_kernel(n: int, cutoff: int, weighted: bool = True,
                      P: Kernel | None = None) -> list:
    """Both Hua systems on the Poisson kernel: for every index pair the
    weighted derivative sum, reduced on the Shilov boundary, must vanish.

    Returns [HuaReport for system A, HuaReport for system B]; with
    ``weighted=False`` the q^{2c} weights are dropped (negative control).
    """
    if P is None:
        P = poisson_kernel(n, cutoff)
    reports = []
    for system in ("A", "B"):
        rep = HuaReport(system, n, cutoff, truncated=P.truncated)
        for x in range(1, n + 1):
            for y in range(1, n + 1):
                s = (hua_sum_A(P, n, x, y, weighted) if system == "A"
                     else hua_sum_B(P, n, x, y, weighted))
                r = shilov_reduce(s)
                rep.residuals[(x, y)] = None if r.is_zero() else poly_text(r)
        reports.append(rep)
    return reports


def act_series(t: ActionTables, g: UqGen, s: TruncatedSeries) -> TruncatedSeries:
    out = TruncatedSeries.from_poly(act(t, g, s.as_poly()), s.cutoff)
    out.truncated = out.truncated or s.truncated
    return out


def act_word_series(t: ActionTables, gens: tuple, s: TruncatedSeries) -> TruncatedSeries:
    for g in reversed(gens):
        s = act_series(t, g, s)
    return s


def generator_words(n: int, max_len: int) -> list:
    """All words in the Chevalley generators up to the given length,
    including the empty word."""
    from .uqact import chevalley_gens
    gens = chevalley_gens(n)
    words = [()]
    layer = [()]
    for _ in range(max_len):
        layer = [w + (g,) for w in layer for g in gens]
        words += layer
    return words


def verify_hua_theorem_n1(fs: list, xi_words: list, cutoff: int) -> HuaReport:
    """The integral-level theorem for n = 1: for each boundary function f
    and each generator word xi, both Hua sums of xi (P f) vanish.

    Raising a bidegree past the cutoff marks the report truncated rather
    than failing: the (1,1) extraction needs components up to
    (1 + |xi|, 1 + |xi|).
    """
    n = 1
    P = poisson_kernel(n, cutoff)
    t = pol_tables(n)
    rep = HuaReport("A+B", n, cutoff)
    for fi, f in enumerate(fs):
        u = poisson_integral_n1(P, f, cutoff)
        for xi in xi_words:
            if 1 + len(xi) > cutoff:
                rep.truncated = True
            v = act_word_series(t, tuple(xi), u)
            for system in ("A", "B"):
                s = (hua_sum_A(v, n, 1, 1) if system == "A"
                     else hua_sum_B(v, n, 1, 1))
                key = (fi, tuple(map(repr, xi)), system)
                rep.residuals[key] = None if s.is_zero() else s.to_text()
    return rep


# ---------------------------------------------------------------------------
# the displayed form of the (1,1) component
# ---------------------------------------------------------------------------

def p11_formula_kernel(n: int, cutoff: int) -> Kernel:
    """The displayed (1,1) component: for each (a, b, alpha, beta) the
    boundary coefficient

        (1-q^{-2n})/(1-q^{-2}) q^{2(2n-a-alpha)} zeta_a^alpha (zeta_b^beta)*
        - delta_ab delta^{alpha beta}

    paired with the first-leg Wick monomial z_b^beta (z_a^alpha)*  (the
    op-algebra reading of the displayed product)."""
    from .kernels import poisson_space
    sp = poisson_space(n, cutoff)
    geo = (ONE - qpow(-2 * n)) / (ONE - qpow(-2))
    terms: dict = {}
    for a in range(1, n + 1):
        for b in range(1, n + 1):
            for alpha in range(1, n + 1):
                for beta in range(1, n + 1):
                    w1 = _word_11(sp.leg1.alg, b, beta, a, alpha)
                    w2 = (sp.leg2.alg.gen_code("zeta", a, alpha),
                          sp.leg2.alg.gen_code("zetas", b, beta))
                    c = geo * qpow(2 * (2 * n - a - alpha))
                    key = (0, 0, 0, 0, w1, w2)
                    terms[key] = terms.get(key, ZERO) + c
                    if a == b and alpha == beta:
                        keyc = (0, 0, 0, 0, w1, ())
                        terms[keyc] = terms.get(keyc, ZERO) - ONE
    return Kernel(sp, terms)


def match_up_to_scalar(k1: Kernel, k2: Kernel):
    """If k1 == c * k2 for a single nonzero scalar c, return c, else None."""
    if k1.is_zero() or k2.is_zero():
        return ONE if k1.is_zero() and k2.is_zero() else None
    key = next(iter(sorted(k2.terms, key=repr)))
    c1 = k1.terms.get(key)
    if c1 is None:
        return None
    c = c1 / k2.terms[key]
    return c if k1 == k2.scale(c) else None
