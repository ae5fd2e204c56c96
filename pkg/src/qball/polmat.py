"""The *-algebra Pol(Mat_n)_q and its companions.

Wick normal form itself lives in ``qball.algebras``; this module adds the
pieces of function theory on top of it:

* bigraded truncated series (the working stand-in for distributions on the
  quantum ball),
* the element ``y`` whose classical limit is det(1 - z z*),
* the localized holomorphic algebra C[GL_n]_q with the involution
  z -> (-q)^{a+alpha-2n} det_q^{-1} (complementary minor).
"""

from __future__ import annotations

from .algebras import bidegree, matrix_algebra, pol_algebra, star_poly
from .linalg import solve
from .ncpoly import Algebra, NCPoly
from .qmatrix import qdet, qminor, subsets_k
from .scalars import ONE, VScalar, ZERO, neg_qpow, qpow


def wick_normalize(alg: Algebra, word, coeff=ONE) -> NCPoly:
    """Normal form of a raw z / z* word (generator codes)."""
    return alg.monomial(tuple(word), coeff)


def split_bidegrees(p: NCPoly) -> dict:
    out: dict = {}
    for w, c in p.terms.items():
        out.setdefault(bidegree(p.alg, w), {})[w] = c
    return {d: NCPoly(p.alg, t) for d, t in out.items()}


class TruncatedSeries:
    """A bigraded element with components (j, k), j, k <= cutoff.

    Components are homogeneous; products discard anything whose bidegree can
    no longer re-enter the cutoff box and set the sticky ``truncated`` flag.
    """

    __slots__ = ("alg", "cutoff", "components", "truncated")

    def __init__(self, alg: Algebra, cutoff: int, components: dict,
                 truncated: bool = False):
        self.alg = alg
        self.cutoff = cutoff
        self.components = {d: p for d, p in components.items() if not p.is_zero()}
        self.truncated = truncated

    @staticmethod
    def from_poly(p: NCPoly, cutoff: int) -> "TruncatedSeries":
        comps = split_bidegrees(p)
        kept = {d: c for d, c in comps.items()
                if d[0] <= cutoff and d[1] <= cutoff}
        return TruncatedSeries(p.alg, cutoff, kept, truncated=len(kept) < len(comps))

    def component(self, j: int, k: int) -> NCPoly:
        if j > self.cutoff or k > self.cutoff:
            raise ValueError(f"bidegree ({j},{k}) beyond cutoff {self.cutoff}")
        return self.components.get((j, k), self.alg.zero())

    def as_poly(self) -> NCPoly:
        acc = self.alg.zero()
        for p in self.components.values():
            acc = acc + p
        return acc

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        if self.cutoff != other.cutoff:
            raise ValueError("cutoff mismatch")
        comps = dict(self.components)
        for d, p in other.components.items():
            comps[d] = comps.get(d, self.alg.zero()) + p
        return TruncatedSeries(self.alg, self.cutoff, comps,
                               self.truncated or other.truncated)

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return self + other.scale(VScalar.from_int(-1))

    def scale(self, c) -> "TruncatedSeries":
        return TruncatedSeries(self.alg, self.cutoff,
                               {d: p.scale(c) for d, p in self.components.items()},
                               self.truncated)

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        if self.cutoff != other.cutoff:
            raise ValueError("cutoff mismatch")
        prod = self.as_poly() * other.as_poly()
        out = TruncatedSeries.from_poly(prod, self.cutoff)
        out.truncated = out.truncated or self.truncated or other.truncated
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return (self.alg is other.alg and self.cutoff == other.cutoff
                and self.components == other.components)

    def is_zero(self) -> bool:
        return not self.components


# ---------------------------------------------------------------------------
# the element y = 1 + sum_k (-1)^k sum_{J', J''} minor (minor)^*
# ---------------------------------------------------------------------------

def y_element(n: int) -> NCPoly:
    """1 + sum over k of (-1)^k sums of z-minors times their stars; the
    classical limit is det(1 - z z*)."""
    alg = pol_algebra(n)
    acc = alg.one()
    rng = range(1, n + 1)
    for k in range(1, n + 1):
        sign = VScalar.from_int((-1) ** k)
        for rows in subsets_k(rng, k):
            for cols in subsets_k(rng, k):
                m = qminor(alg, rows, cols, cls="z")
                acc = acc + (m * star_poly(m)).scale(sign)
    return acc


# ---------------------------------------------------------------------------
# C[GL_n]_q: holomorphic polynomials localized at the central det_q
# ---------------------------------------------------------------------------

class GLnElement:
    """poly * det_q^{-dpow} with dpow >= 0, reduced so that the polynomial
    part is not divisible by det_q whenever dpow > 0."""

    __slots__ = ("n", "poly", "dpow")

    def __init__(self, n: int, poly: NCPoly, dpow: int = 0, reduce: bool = True):
        self.n = n
        self.poly = poly
        self.dpow = dpow
        if reduce:
            self._reduce()

    @staticmethod
    def algebra(n: int) -> Algebra:
        return matrix_algebra(n, n, cls="z")

    @staticmethod
    def of_gen(n: int, a: int, alpha: int) -> "GLnElement":
        return GLnElement(n, GLnElement.algebra(n).gen("z", a, alpha))

    @staticmethod
    def one(n: int) -> "GLnElement":
        return GLnElement(n, GLnElement.algebra(n).one())

    def _reduce(self) -> None:
        det = qdet(self.alg, self.n, cls="z")
        while self.dpow > 0:
            quo = divide_by_central(self.poly, det)
            if quo is None:
                return
            self.poly = quo
            self.dpow -= 1

    @property
    def alg(self) -> Algebra:
        return self.poly.alg

    def __mul__(self, other: "GLnElement") -> "GLnElement":
        return GLnElement(self.n, self.poly * other.poly, self.dpow + other.dpow)

    def __add__(self, other: "GLnElement") -> "GLnElement":
        det = qdet(self.alg, self.n, cls="z")
        e = max(self.dpow, other.dpow)
        p1 = self.poly * det ** (e - self.dpow)
        p2 = other.poly * det ** (e - other.dpow)
        return GLnElement(self.n, p1 + p2, e)

    def __sub__(self, other: "GLnElement") -> "GLnElement":
        return self + other.scale(VScalar.from_int(-1))

    def scale(self, c) -> "GLnElement":
        return GLnElement(self.n, self.poly.scale(c), self.dpow, reduce=False)

    def __eq__(self, other) -> bool:
        if not isinstance(other, GLnElement):
            return NotImplemented
        det = qdet(self.alg, self.n, cls="z")
        # cross-multiplied comparison avoids relying on reduction
        return (self.poly * det ** other.dpow) == (other.poly * det ** self.dpow)

    def is_zero(self) -> bool:
        return self.poly.is_zero()

    def star(self) -> "GLnElement":
        """The C[GL_n]_q involution, extended antimultiplicatively."""
        acc = GLnElement(self.n, self.alg.zero(), 0, reduce=False)
        for w, c in self.poly.terms.items():
            term = GLnElement(self.n, self.alg.scalar(c), 0, reduce=False)
            for g in reversed(w):
                a, alpha = self.alg.gens[g].i, self.alg.gens[g].j
                term = term * gl_star_gen(self.n, a, alpha)
            acc = acc + term
        if self.dpow:
            # star(det^-e) = (star det)^-e and star(det) = c * det^-1
            c = _det_star_scale(self.n)
            acc = acc.scale(c ** (-self.dpow))
            new_dpow = acc.dpow - self.dpow
            if new_dpow >= 0:
                acc = GLnElement(self.n, acc.poly, new_dpow)
            else:
                det = qdet(self.alg, self.n, cls="z")
                acc = GLnElement(self.n, acc.poly * det ** (-new_dpow), 0)
        return acc


def gl_star_gen(n: int, a: int, alpha: int) -> GLnElement:
    """(z_a^alpha)* = (-q)^{a+alpha-2n} det_q^{-1} (complementary minor)."""
    alg = GLnElement.algebra(n)
    rng = range(1, n + 1)
    minor = qminor(alg, [x for x in rng if x != a],
                   [x for x in rng if x != alpha], cls="z")
    return GLnElement(n, minor.scale(neg_qpow(a + alpha - 2 * n)), 1, reduce=False)


_DET_STAR: dict = {}


def _det_star_scale(n: int) -> VScalar:
    """star(det_q) = c * det_q^{-1}; computes and caches c, asserting the shape."""
    hit = _DET_STAR.get(n)
    if hit is not None:
        return hit
    alg = GLnElement.algebra(n)
    det = qdet(alg, n, cls="z")
    starred = GLnElement(n, det, 0).star()
    prod = starred * GLnElement(n, det, 0)
    assert prod.dpow == 0 and set(prod.poly.terms) == {()}, \
        "star(det_q) is not a scalar multiple of det_q^{-1}"
    c = prod.poly.constant_term()
    _DET_STAR[n] = c
    return c


def divide_by_central(p: NCPoly, det: NCPoly):
    """Exact quotient r with p = det * r, or None.

    Decided degree by degree as a linear system over Q(v): candidate words
    for r are the normal words of each total degree, which is sound because
    det_q is central and the graded pieces are finite dimensional.
    """
    if p.is_zero():
        return p
    by_deg: dict = {}
    for w, c in p.terms.items():
        by_deg.setdefault(len(w), {})[w] = c
    ddeg = len(next(iter(det.terms)))
    out = p.alg.zero()
    for deg, terms in sorted(by_deg.items()):
        if deg < ddeg:
            return None
        cand = _words_of_degree(p.alg, deg - ddeg)
        prods = [det * NCPoly(p.alg, {w: ONE}) for w in cand]
        support = sorted(set().union(*[pr.terms.keys() for pr in prods],
                                     terms.keys()))
        rows = [[pr.terms.get(w, ZERO) for pr in prods] for w in support]
        rhs = [terms.get(w, ZERO) for w in support]
        x = solve(rows, rhs)
        if x is None:
            return None
        out = out + NCPoly(p.alg, {w: c for w, c in zip(cand, x) if not c.is_zero()})
    return out


def _words_of_degree(alg: Algebra, d: int) -> list:
    words = [()]
    for _ in range(d):
        words = [w + (g,) for w in words for g in range(w[-1] if w else 0,
                                                        alg.ngens())]
    return sorted(set(words))


def shilov_residuals_gl(n: int):
    """The two unitarity families evaluated in the C[GL_n]_q model.

    Column form:  sum_j q^{2n-alpha-beta} z_j^alpha (z_j^beta)* - delta
    Row form:     sum_gamma z_c^gamma (z_c'^gamma)* - q^{c+c'-2n} delta

    Both must vanish identically; the row family is what justifies adding
    the transposed relations to the boundary reduction.
    """
    res = []
    one = GLnElement.one(n)
    for alpha in range(1, n + 1):
        for beta in range(1, n + 1):
            acc = None
            for j in range(1, n + 1):
                t = GLnElement.of_gen(n, j, alpha) * gl_star_gen(n, j, beta)
                t = t.scale(qpow(2 * n - alpha - beta))
                acc = t if acc is None else acc + t
            if alpha == beta:
                acc = acc - one
            res.append((("col", alpha, beta), acc))
    for c in range(1, n + 1):
        for cp in range(1, n + 1):
            acc = None
            for gamma in range(1, n + 1):
                t = GLnElement.of_gen(n, c, gamma) * gl_star_gen(n, cp, gamma)
                acc = t if acc is None else acc + t
            if c == cp:
                acc = acc - one.scale(qpow(c + cp - 2 * n))
            res.append((("row", c, cp), acc))
    return res
