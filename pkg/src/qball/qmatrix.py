"""Quantum minors, quantum determinants and the Laplace splitting.

Minors carry the (-q)^{l(s)} sign convention, l(s) counting the inversions
of the permutation.  The row-permuted sum is the constructor; the
column-permuted sum is the same element and is kept as a cross-check.
"""

from __future__ import annotations

from itertools import permutations

from .algebras import matrix_algebra
from .ncpoly import Algebra, NCPoly
from .scalars import ONE, neg_qpow


def _inversions(perm: tuple) -> int:
    n = len(perm)
    return sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])


def qminor(alg: Algebra, rows, cols, cls: str = "t", form: str = "row") -> NCPoly:
    """The quantum minor over the given index sets.

    ``form="row"`` permutes the row indices against fixed columns,
    ``form="col"`` the columns against fixed rows; the two sums agree.
    """
    rows = tuple(sorted(rows))
    cols = tuple(sorted(cols))
    if len(set(rows)) != len(rows) or len(set(cols)) != len(cols):
        raise ValueError("minor index sets must be strictly increasing")
    if len(rows) != len(cols):
        raise ValueError(f"minor needs equal index set sizes, got {rows} / {cols}")
    k = len(rows)
    if k == 0:
        return alg.one()
    acc = alg.zero()
    for perm in permutations(range(k)):
        sign = neg_qpow(_inversions(perm))
        if form == "row":
            word = [alg.gen_code(cls, rows[perm[t]], cols[t]) for t in range(k)]
        elif form == "col":
            word = [alg.gen_code(cls, rows[t], cols[perm[t]]) for t in range(k)]
        else:
            raise ValueError(f"unknown minor form {form!r}")
        acc = acc + alg.monomial(tuple(word), sign)
    return acc


def qdet(alg: Algebra, n: int, cls: str = "t") -> NCPoly:
    """det_q of the n x n corner; central in the square algebra."""
    idx = range(1, n + 1)
    return qminor(alg, idx, idx, cls=cls)


def subsets_k(universe, k):
    universe = tuple(universe)
    out = []

    def rec(start, chosen):
        if len(chosen) == k:
            out.append(tuple(chosen))
            return
        for i in range(start, len(universe)):
            chosen.append(universe[i])
            rec(i + 1, chosen)
            chosen.pop()
    rec(0, [])
    return out


def l_pairs(I, J) -> int:
    """card{(i, j) in I x J : i > j}."""
    return sum(1 for i in I for j in J if i > j)


def laplace_residuals(n: int):
    """Residuals of the two ordered Laplace splittings of det_q in
    C[Mat_2n]_q: both must be exactly zero."""
    alg = matrix_algebra(2 * n, 2 * n)
    det = qdet(alg, 2 * n)
    top = tuple(range(1, n + 1))
    bot = tuple(range(n + 1, 2 * n + 1))
    s1 = alg.zero()
    s2 = alg.zero()
    for J in subsets_k(range(1, 2 * n + 1), n):
        Jc = tuple(j for j in range(1, 2 * n + 1) if j not in J)
        ell = l_pairs(J, Jc)
        mt = qminor(alg, top, J)
        mb = qminor(alg, bot, Jc)
        s1 = s1 + (mt * mb).scale(neg_qpow(ell))
        s2 = s2 + (mb * mt).scale(neg_qpow(-ell))
    return (s1 - det, s2 - det)


def m_map(n: int, p_top: NCPoly, p_bot: NCPoly) -> NCPoly:
    """Multiply a top-rows element by a bottom-rows element inside
    C[Mat_2n]_q, relabelling the second factor's rows to n+1..2n."""
    rect = matrix_algebra(n, 2 * n)
    if p_top.alg is not rect or p_bot.alg is not rect:
        raise ValueError("m_map expects elements of the n x 2n algebra")
    big = matrix_algebra(2 * n, 2 * n)

    def relabel(p: NCPoly, shift: int) -> NCPoly:
        acc = big.zero()
        for w, c in p.terms.items():
            word = tuple(big.gen_code("t", rect.gens[g].i + shift, rect.gens[g].j)
                         for g in w)
            acc = acc + big.monomial(word, c)
        return acc

    return relabel(p_top, 0) * relabel(p_bot, n)


def centrality_residuals(n: int, cls: str = "t"):
    """[det_q, g] for every generator of C[Mat_n]_q; all must vanish."""
    alg = matrix_algebra(n, n, cls)
    det = qdet(alg, n, cls)
    out = []
    for g in alg.gens:
        p = alg.gen(g.cls, g.i, g.j)
        out.append(((g.i, g.j), det * p - p * det))
    return out
