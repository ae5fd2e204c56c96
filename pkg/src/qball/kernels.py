"""Invariant kernels for the quantum matrix ball.

A kernel lives in (first leg) x (second leg) where the first leg multiplies
in the opposite order.  Terms are stored as

    coeff * (t^a t*^b . w1)  x  (tau^c tau*^d . w2)

with the power blocks on the left of each leg and w1, w2 Wick-normal words.
The product rule is the single point of truth for the op-convention:

    (T1)(T2):  first leg  = (t-block2 . w2) (t-block1 . w1)   [opposite]
               second leg = (tau-block1 . u1)(tau-block2 . u2)

and a power block moves left through a word with the scalar
q^{(power sum) * (z-count - z*-count)}, which encodes t z = q^-1 z t and
t z* = q z* t together with their starred versions.

Truncation drops words whose bidegree exceeds the cutoff box in either
coordinate on either leg and raises the sticky ``truncated`` flag.  The
pipeline orders products so that contributions to components inside the box
never route through dropped terms (z-blocks only ever grow to the left of
z*-blocks before the final y-substitution), so in-box components of the
Poisson kernel are exact.
"""

from __future__ import annotations

from .algebras import bidegree, boundary_algebra, pol_algebra, star_poly
from .boundary import N1Boundary, nu_n1
from .ncpoly import Algebra, NCPoly
from .polmat import TruncatedSeries, y_element
from .qmatrix import l_pairs, qminor, subsets_k
from .scalars import ONE, VScalar, ZERO, neg_qpow, qpow, vpow
from .uqact import (ActionTables, UqGen, boundary_tables, chevalley_gens,
                    counit, pol_tables, tables_for)


class PowerSignatureError(ValueError):
    pass


class CutoffMismatchError(ValueError):
    pass


class LegContext:
    """One tensor leg: algebra, action tables, optional power symbols."""

    def __init__(self, alg: Algebra, tables: ActionTables, zcls: str | None):
        self.alg = alg
        self.tables = tables
        self.zcls = zcls  # None: no power symbols allowed on this leg
        if zcls is not None:
            n = tables.n
            scls = {"z": "zs", "zeta": "zetas"}[zcls]
            self.znn = alg.gen_code(zcls, n, n)
            self.zsnn = alg.gen_code(scls, n, n)

    def sdeg(self, word: tuple) -> int:
        j, k = bidegree(self.alg, word)
        return j - k

    # -- symbol data for the quasi-central pair t, t* ----------------------

    def sym_k_eig(self, i: int, sym: str) -> VScalar:
        if i != self.tables.n:
            return ONE
        return {"T": qpow(-1), "Tinv": qpow(1),
                "TS": qpow(1), "TSinv": qpow(-1)}[sym]

    def sym_E(self, i: int, sym: str):
        # E_n t = q^(-1/2) t z_n^n and its inverse-pair consequence
        if i != self.tables.n:
            return {}
        if sym == "T":
            return {(1, 0, (self.znn,)): vpow(-1)}
        if sym == "Tinv":
            return {(-1, 0, (self.znn,)): -vpow(-1)}
        return {}

    def sym_F(self, i: int, sym: str):
        # F_n t* = q^(1/2) t* (z_n^n)* and its inverse-pair consequence
        if i != self.tables.n:
            return {}
        if sym == "TS":
            return {(0, 1, (self.zsnn,)): vpow(1)}
        if sym == "TSinv":
            return {(0, -1, (self.zsnn,)): -vpow(5)}
        return {}


def _leg_mul(ctx: LegContext, e1: dict, e2: dict) -> dict:
    """Product of leg elements {(a, b, word): coeff} with powers kept left."""
    out: dict = {}
    for (a1, b1, w1), c1 in e1.items():
        s1 = ctx.sdeg(w1)
        for (a2, b2, w2), c2 in e2.items():
            c = c1 * c2 * qpow((a2 + b2) * s1)
            for w, cw in ctx.alg.monomial(w1 + w2, c).terms.items():
                key = (a1 + a2, b1 + b2, w)
                s = out.get(key, ZERO) + cw
                if s.is_zero():
                    out.pop(key, None)
                else:
                    out[key] = s
    return out


def _leg_symbols(a: int, b: int, word: tuple):
    syms = ["T" if a > 0 else "Tinv"] * abs(a)
    syms += ["TS" if b > 0 else "TSinv"] * abs(b)
    return syms + list(word)


def _leg_k_eig(ctx: LegContext, i: int, a: int, b: int, word: tuple) -> VScalar:
    c = ctx.sym_k_eig(i, "T" if a > 0 else "Tinv") ** abs(a)
    c = c * ctx.sym_k_eig(i, "TS" if b > 0 else "TSinv") ** abs(b)
    return c * ctx.tables.k_word(i, word)


def _sym_unit(sym) -> dict:
    if isinstance(sym, str):
        da = {"T": 1, "Tinv": -1}.get(sym, 0)
        db = {"TS": 1, "TSinv": -1}.get(sym, 0)
        return {(da, db, ()): ONE}
    return {(0, 0, (sym,)): ONE}


def _sym_act(ctx: LegContext, g: UqGen, sym) -> dict:
    if isinstance(sym, str):
        return ctx.sym_E(g.i, sym) if g.kind == "E" else ctx.sym_F(g.i, sym)
    table = ctx.tables.E if g.kind == "E" else ctx.tables.F
    p = table[(g.i, sym)]
    return {(0, 0, w): c for w, c in p.terms.items()}


def _sym_k(ctx: LegContext, i: int, sym, inv: bool = False) -> VScalar:
    c = ctx.sym_k_eig(i, sym) if isinstance(sym, str) else ctx.tables.K[(i, sym)]
    return c.inverse() if inv else c


def _merge(acc: dict, terms: dict, scale: VScalar = ONE) -> dict:
    for k, c in terms.items():
        s = acc.get(k, ZERO) + c * scale
        if s.is_zero():
            acc.pop(k, None)
        else:
            acc[k] = s
    return acc


def act_leg(ctx: LegContext, g: UqGen, a: int, b: int, word: tuple) -> dict:
    """E_i or F_i on the leg element t^a t*^b word, via the Leibniz rule
    over the symbol sequence (right to left).  Returns {(a', b', w'): coeff}.

    E(h s) = E(h) s + K(h) h E(s);  F(h s) = F(h) K^-1(s) + h F(s), where
    K^-1 of the suffix is a scalar because every symbol is a weight vector.
    """
    if g.kind not in ("E", "F"):
        raise ValueError("act_leg handles E and F only")
    seq = _leg_symbols(a, b, word)
    res: dict = {}
    suffix_elem = {(0, 0, ()): ONE}
    suffix_kinv = ONE
    for pos in range(len(seq) - 1, -1, -1):
        head = seq[pos]
        head_unit = _sym_unit(head)
        head_act = _sym_act(ctx, g, head)
        new: dict = {}
        if head_act:
            first = _leg_mul(ctx, head_act, suffix_elem)
            _merge(new, first, suffix_kinv if g.kind == "F" else ONE)
        if res:
            tail = _leg_mul(ctx, head_unit, res)
            _merge(new, tail,
                   _sym_k(ctx, g.i, head) if g.kind == "E" else ONE)
        res = new
        suffix_elem = _leg_mul(ctx, head_unit, suffix_elem)
        suffix_kinv = suffix_kinv * _sym_k(ctx, g.i, head, inv=True)
    return res


class KernelSpace:
    """The bimodule context: two legs plus the bidegree cutoff."""

    def __init__(self, n: int, cutoff: int, leg1: LegContext, leg2: LegContext):
        self.n = n
        self.cutoff = cutoff
        self.leg1 = leg1
        self.leg2 = leg2

    def kernel(self, terms: dict | None = None, truncated: bool = False) -> "Kernel":
        return Kernel(self, dict(terms or {}), truncated)

    def unit(self) -> "Kernel":
        return Kernel(self, {(0, 0, 0, 0, (), ()): ONE}, False)

    def power_term(self, a: int, b: int, c: int, d: int, coeff=ONE) -> "Kernel":
        return Kernel(self, {(a, b, c, d, (), ()): VScalar.coerce(coeff)}, False)

    def from_pair(self, p1: NCPoly, p2: NCPoly, key=(0, 0, 0, 0), coeff=ONE) -> "Kernel":
        coeff = VScalar.coerce(coeff)
        terms: dict = {}
        for w1, c1 in p1.terms.items():
            for w2, c2 in p2.terms.items():
                terms[key + (w1, w2)] = coeff * c1 * c2
        return Kernel(self, terms, False)


_SPACES: dict = {}


def poisson_space(n: int, cutoff: int) -> KernelSpace:
    key = (n, cutoff)
    hit = _SPACES.get(key)
    if hit is None:
        leg1 = LegContext(pol_algebra(n), pol_tables(n), "z")
        leg2 = LegContext(boundary_algebra(n), boundary_tables(n), "zeta")
        hit = KernelSpace(n, cutoff, leg1, leg2)
        _SPACES[key] = hit
    return hit


class Kernel:
    """A truncated element of the kernel bimodule (see module docstring)."""

    __slots__ = ("space", "terms", "truncated")

    def __init__(self, space: KernelSpace, terms: dict, truncated: bool = False):
        self.space = space
        self.terms = {}
        D = space.cutoff
        dropped = False
        for key, c in terms.items():
            if c.is_zero():
                continue
            j1, k1 = bidegree(space.leg1.alg, key[4])
            j2, k2 = bidegree(space.leg2.alg, key[5])
            if j1 > D or k1 > D or j2 > D or k2 > D:
                dropped = True
                continue
            self.terms[key] = c
        self.truncated = truncated or dropped

    # -- linear structure ---------------------------------------------------

    def _check(self, other: "Kernel"):
        if self.space is not other.space:
            raise CutoffMismatchError("kernels from different spaces")

    def __add__(self, other: "Kernel") -> "Kernel":
        self._check(other)
        t = dict(self.terms)
        for k, c in other.terms.items():
            s = t.get(k, ZERO) + c
            if s.is_zero():
                t.pop(k, None)
            else:
                t[k] = s
        return Kernel(self.space, t, self.truncated or other.truncated)

    def __sub__(self, other: "Kernel") -> "Kernel":
        return self + other.scale(-ONE)

    def scale(self, c) -> "Kernel":
        c = VScalar.coerce(c)
        return Kernel(self.space,
                      {k: x * c for k, x in self.terms.items()}, self.truncated)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Kernel):
            return NotImplemented
        return self.space is other.space and self.terms == other.terms

    def is_zero(self) -> bool:
        return not self.terms

    def __repr__(self):
        from .render import word_text
        bits = []
        for key in sorted(self.terms, key=_term_sort_key):
            a, b, c, d, w1, w2 = key
            coeff = self.terms[key].to_text()
            pw1 = _power_text("t", a) + _power_text("ts", b)
            pw2 = _power_text("tau", c) + _power_text("taus", d)
            l1 = (pw1 + "*" if pw1 else "") + word_text(self.space.leg1.alg, w1)
            l2 = (pw2 + "*" if pw2 else "") + word_text(self.space.leg2.alg, w2)
            bits.append(f"({coeff})*[{l1} (x) {l2}]")
        return "Kernel(" + (" + ".join(bits) if bits else "0") + ")"

    # -- multiplication: the op-convention lives here only -------------------

    def __mul__(self, other: "Kernel") -> "Kernel":
        self._check(other)
        sp = self.space
        acc: dict = {}
        truncated = self.truncated or other.truncated
        for (a1, b1, c1, d1, w1, u1), x1 in self.terms.items():
            s_u1 = sp.leg2.sdeg(u1)
            for (a2, b2, c2, d2, w2, u2), x2 in other.terms.items():
                s_w2 = sp.leg1.sdeg(w2)
                coeff = x1 * x2 * qpow((a1 + b1) * s_w2 + (c2 + d2) * s_u1)
                first = sp.leg1.alg.monomial(w2 + w1, ONE)
                second = sp.leg2.alg.monomial(u1 + u2, ONE)
                key_p = (a1 + a2, b1 + b2, c1 + c2, d1 + d2)
                for wf, cf in first.terms.items():
                    for ws, cs in second.terms.items():
                        key = key_p + (wf, ws)
                        s = acc.get(key, ZERO) + coeff * cf * cs
                        if s.is_zero():
                            acc.pop(key, None)
                        else:
                            acc[key] = s
        return Kernel(sp, acc, truncated)

    # -- the U_q action across the two legs -----------------------------------

    def act(self, g: UqGen) -> "Kernel":
        sp = self.space
        if g.kind in ("K", "Kinv"):
            inv = g.kind == "Kinv"
            out: dict = {}
            for key, c in self.terms.items():
                a, b, cc, d, w1, w2 = key
                s = (_leg_k_eig(sp.leg1, g.i, a, b, w1)
                     * _leg_k_eig(sp.leg2, g.i, cc, d, w2))
                out[key] = c * (s.inverse() if inv else s)
            return Kernel(sp, out, self.truncated)
        acc: dict = {}

        def put(key, c):
            s = acc.get(key, ZERO) + c
            if s.is_zero():
                acc.pop(key, None)
            else:
                acc[key] = s

        for (a, b, cc, d, w1, w2), c in self.terms.items():
            leg1 = act_leg(sp.leg1, g, a, b, w1)
            leg2 = act_leg(sp.leg2, g, cc, d, w2)
            if g.kind == "E":
                # E x 1 + K x E
                for (a2, b2, wn), cv in leg1.items():
                    put((a2, b2, cc, d, wn, w2), c * cv)
                k1 = _leg_k_eig(sp.leg1, g.i, a, b, w1)
                for (c2, d2, un), cv in leg2.items():
                    put((a, b, c2, d2, w1, un), c * k1 * cv)
            else:
                # F x K^-1 + 1 x F
                k2 = _leg_k_eig(sp.leg2, g.i, cc, d, w2).inverse()
                for (a2, b2, wn), cv in leg1.items():
                    put((a2, b2, cc, d, wn, w2), c * k2 * cv)
                for (c2, d2, un), cv in leg2.items():
                    put((a, b, c2, d2, w1, un), c * cv)
        return Kernel(sp, acc, self.truncated)

    # -- inspection -------------------------------------------------------------

    def power_signature(self):
        return {key[:4] for key in self.terms}

    def first_component(self, j: int, k: int) -> "Kernel":
        if j > self.space.cutoff or k > self.space.cutoff:
            raise ValueError(f"bidegree ({j},{k}) beyond cutoff {self.space.cutoff}")
        alg = self.space.leg1.alg
        return Kernel(self.space,
                      {key: c for key, c in self.terms.items()
                       if bidegree(alg, key[4]) == (j, k)}, self.truncated)


def _power_text(name: str, e: int) -> str:
    if e == 0:
        return ""
    return name if e == 1 else f"{name}^{e}"


def _term_sort_key(key):
    a, b, c, d, w1, w2 = key
    return (len(w1) + len(w2), w1, w2, a, b, c, d)


def check_invariant(k: Kernel) -> list:
    """Residuals act(g, k) - counit(g) k over all Chevalley generators."""
    out = []
    for g in chevalley_gens(k.space.n):
        r = k.act(g) - k.scale(counit(g))
        if not r.is_zero():
            out.append((g, r))
    return out


# ---------------------------------------------------------------------------
# the invariant kernels L and Lbar
# ---------------------------------------------------------------------------

def _minor_data(n: int, J: tuple):
    """Index data for the subset J: lower rows A, upper columns U, sizes."""
    A = tuple(j for j in J if j <= n)
    removed = tuple(b for b in range(n + 1, 2 * n + 1) if b not in J)
    U = tuple(sorted(n + 1 - (b - n) for b in removed))
    Jc = tuple(j for j in range(1, 2 * n + 1) if j not in J)
    return A, U, Jc, len(A)


def build_L(n: int, cutoff: int) -> Kernel:
    """The invariant kernel with first-leg z-minors and second-leg starred
    zeta-minors; the J = {n+1..2n} term is the monomial prefactor t x tau*."""
    sp = poisson_space(n, cutoff)
    acc = sp.kernel({})
    for J in subsets_k(range(1, 2 * n + 1), n):
        A, U, _, k = _minor_data(n, J)
        m1 = qminor(sp.leg1.alg, A, U, cls="z")
        m2 = star_poly(qminor(sp.leg2.alg, A, U, cls="zeta"))
        scale = qpow(-k) * VScalar.from_int((-1) ** k)
        acc = acc + sp.from_pair(m1, m2, key=(1, 0, 0, 1), coeff=scale)
    return acc


def build_Lbar(n: int, cutoff: int) -> Kernel:
    sp = poisson_space(n, cutoff)
    acc = sp.kernel({})
    for J in subsets_k(range(1, 2 * n + 1), n):
        A, U, Jc, k = _minor_data(n, J)
        ell = l_pairs(J, Jc)
        m1 = star_poly(qminor(sp.leg1.alg, A, U, cls="z"))
        m2 = qminor(sp.leg2.alg, A, U, cls="zeta")
        scale = (qpow(-k) * neg_qpow(-2 * ell)) * VScalar.from_int((-1) ** k)
        acc = acc + sp.from_pair(m1, m2, key=(0, 1, 1, 0), coeff=scale)
    return acc


# ---------------------------------------------------------------------------
# inversion, substitution, the Poisson kernel
# ---------------------------------------------------------------------------

def kinverse(k: Kernel, power: int = 1) -> Kernel:
    """k^{-power} as a truncated Neumann series.

    Requires a single invertible monomial prefactor term U (empty words);
    writes k = (1 + M) U and returns (U^-1 sum (-M)^m)^power.
    """
    sp = k.space
    units = [(key, c) for key, c in k.terms.items() if key[4] == () == key[5]]
    if len(units) != 1:
        raise ValueError("kernel has no single invertible leading term")
    (ua, ub, uc, ud, _, _), ucoeff = units[0]
    u_inv = sp.power_term(-ua, -ub, -uc, -ud, ucoeff.inverse())
    m = (k * u_inv) - sp.unit()
    if any(key[4] == () == key[5] for key in m.terms):
        raise ValueError("leading term is not unit-normalised")
    inv = sp.unit()
    powm = sp.unit()
    guard = 0
    while True:
        powm = powm * m
        if powm.is_zero():
            break
        inv = inv + powm.scale(VScalar.from_int((-1) ** (guard + 1)))
        guard += 1
        if guard > 4 * (sp.cutoff + 1):
            raise RuntimeError("Neumann series failed to terminate at cutoff")
    inv = u_inv * inv
    out = inv
    for _ in range(power - 1):
        out = out * inv
    return out


_Y_POWERS: dict = {}


def _y_power(n: int, m: int) -> NCPoly:
    key = (n, m)
    hit = _Y_POWERS.get(key)
    if hit is None:
        hit = y_element(n) ** m
        _Y_POWERS[key] = hit
    return hit


def substitute_x_inverse(k: Kernel) -> Kernel:
    """Replace each first-leg (t t*)^-m prefactor by y^m.

    Sound because t^-1 t*^-1 is the image of y inside the localized algebra;
    afterwards every term has zero first-leg powers.
    """
    sp = k.space
    acc = sp.kernel({})
    acc.truncated = k.truncated
    for (a, b, c, d, w1, w2), coeff in k.terms.items():
        if a != b or a > 0:
            raise PowerSignatureError(
                f"first-leg powers ({a},{b}) are not a balanced inverse pair")
        if a == 0:
            acc = acc + Kernel(sp, {(0, 0, c, d, w1, w2): coeff})
            continue
        prod = _y_power(sp.n, -a) * NCPoly(sp.leg1.alg, {w1: coeff})
        acc = acc + sp.from_pair(prod, NCPoly(sp.leg2.alg, {w2: ONE}),
                                 key=(0, 0, c, d))
    return acc


def eta_shift(k: Kernel) -> Kernel:
    """Strip the second-leg (tau tau*)^-n block, after which the second leg
    is an honest boundary element ready for the invariant integral."""
    sp = k.space
    sigs = {key[2:4] for key in k.terms}
    if sigs <= {(0, 0)}:
        return k
    if not sigs <= {(-sp.n, -sp.n)}:
        raise PowerSignatureError(f"second-leg powers {sorted(sigs)} do not "
                                  f"match the (-n,-n) integral signature")
    return Kernel(sp, {key[:2] + (0, 0) + key[4:]: c
                       for key, c in k.terms.items()}, k.truncated)


_P_CACHE: dict = {}


def poisson_kernel(n: int, cutoff: int, normalized: bool = True) -> Kernel:
    """const * (1 x tau tau*)^n Lbar^-n L^-n with first-leg powers removed.

    With ``normalized`` the overall constant is fixed so that the (0,0)
    component is exactly 1 x 1 (the integral operator takes 1 to 1).
    """
    hit = _P_CACHE.get((n, cutoff, normalized))
    if hit is not None:
        return hit
    sp = poisson_space(n, cutoff)
    L = build_L(n, cutoff)
    Lb = build_Lbar(n, cutoff)
    prod = kinverse(Lb, n) * kinverse(L, n)
    pre = sp.power_term(0, 0, n, n)
    praw = substitute_x_inverse(pre * prod)
    if not praw.power_signature() <= {(0, 0, 0, 0)}:
        raise PowerSignatureError("Poisson kernel has residual powers")
    if normalized:
        p00 = praw.terms.get((0, 0, 0, 0, (), ()))
        if p00 is None:
            raise ValueError("missing constant term; cannot normalise")
        praw = praw.scale(p00.inverse())
    _P_CACHE[(n, cutoff, normalized)] = praw
    return praw


def p_component(P: Kernel, j: int, k: int) -> Kernel:
    """First-leg bidegree (j, k) part of the Poisson kernel."""
    return P.first_component(j, k)


def poisson_integral_n1(P: Kernel, f: N1Boundary, cutoff: int) -> TruncatedSeries:
    """(id x nu)(P (1 x f)) for n = 1, as a truncated bigraded series."""
    sp = P.space
    if sp.n != 1:
        raise ValueError("the integral model is implemented for n = 1")
    if not P.power_signature() <= {(0, 0, 0, 0)}:
        raise PowerSignatureError("kernel carries powers; integrate after "
                                  "eta_shift / substitution")
    acc: dict = {}
    for (_, _, _, _, w1, w2), c in P.terms.items():
        second = N1Boundary.from_boundary(NCPoly(sp.leg2.alg, {w2: c}))
        val = nu_n1(second * f)
        if val.is_zero():
            continue
        s = acc.get(w1, ZERO) + val
        if s.is_zero():
            acc.pop(w1, None)
        else:
            acc[w1] = s
    series = TruncatedSeries.from_poly(NCPoly(sp.leg1.alg, acc), cutoff)
    series.truncated = series.truncated or P.truncated
    return series
