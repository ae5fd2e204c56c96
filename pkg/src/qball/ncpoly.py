"""Normal-form engine for quadratic quantized algebras.

An :class:`Algebra` is an ordered generator alphabet together with a rewrite
table.  Generators are encoded as small integers; the integer order *is* the
monomial order, and canonical words are non-decreasing integer tuples (a PBW
basis).  The rewrite table sends every strictly decreasing adjacent pair
``g > h`` to a finite list of ``(coefficient, word)`` with words of length at
most two, each strictly smaller than ``g h`` in the degree-lexicographic
order, which makes reduction terminate.

Confluence of the concrete tables is not proved here; the algebras in this
package are flat deformations and confluence is property-tested (left-most
and right-most strategies must agree on random words).

:class:`NCPoly` is a finite map from canonical words to ``VScalar``
coefficients with zero values pruned eagerly, so equality is map equality.
Algebras and polynomials are immutable after construction; the pair-rule
cache only sees idempotent inserts and may be shared between threads.
"""

from __future__ import annotations

from typing import Callable, Iterable, NamedTuple

from .scalars import VScalar, ZERO, ONE

# generous per-normalisation guard against a non-terminating table
MAX_REWRITE_STEPS = 5_000_000


class RewriteLimitExceeded(RuntimeError):
    pass


class UnknownGeneratorError(KeyError):
    pass


class Generator(NamedTuple):
    """A named generator: symbol class plus up to two indices."""
    cls: str
    i: int
    j: int


class Algebra:
    """A generator alphabet with a quadratic rewrite table.

    ``rule(g, h)`` is consulted only for code pairs with ``g > h`` and must
    return the expansion of the product ``g * h`` as ``[(coeff, word), ...]``
    with every word already in normal order.  Results are memoised.
    """

    def __init__(self, name: str, gens: Iterable[Generator],
                 rule: Callable[["Algebra", int, int], list]):
        self.name = name
        self.gens = tuple(gens)
        self.code = {g: c for c, g in enumerate(self.gens)}
        self._rule = rule
        self._pair_cache: dict = {}

    def __repr__(self):
        return f"Algebra({self.name}, {len(self.gens)} generators)"

    def ngens(self) -> int:
        return len(self.gens)

    def gen_code(self, cls: str, i: int, j: int) -> int:
        try:
            return self.code[Generator(cls, i, j)]
        except KeyError:
            raise UnknownGeneratorError(
                f"{cls}[{i},{j}] is not a generator of {self.name}") from None

    def pair_rule(self, g: int, h: int) -> list:
        key = (g, h)
        hit = self._pair_cache.get(key)
        if hit is None:
            hit = self._rule(self, g, h)
            self._pair_cache[key] = hit
        return hit

    # -- polynomial constructors ------------------------------------------

    def zero(self) -> "NCPoly":
        return NCPoly(self, {})

    def one(self) -> "NCPoly":
        return NCPoly(self, {(): ONE})

    def scalar(self, c) -> "NCPoly":
        c = VScalar.coerce(c)
        return NCPoly(self, {} if c.is_zero() else {(): c})

    def gen(self, cls: str, i: int, j: int) -> "NCPoly":
        return NCPoly(self, {(self.gen_code(cls, i, j),): ONE})

    def monomial(self, word, coeff=ONE) -> "NCPoly":
        """Normal form of an arbitrary product of generator codes."""
        return normalize(self, tuple(word), VScalar.coerce(coeff))

    def poly(self, terms: dict) -> "NCPoly":
        """Polynomial from possibly non-normal words."""
        acc: dict = {}
        for word, coeff in terms.items():
            _acc_terms(acc, normalize(self, tuple(word), VScalar.coerce(coeff)).terms)
        return NCPoly(self, acc)


def _acc_terms(acc: dict, terms: dict) -> None:
    for w, c in terms.items():
        s = acc.get(w)
        s = c if s is None else s + c
        if s.is_zero():
            acc.pop(w, None)
        else:
            acc[w] = s


def normalize(alg: Algebra, word: tuple, coeff: VScalar,
              strategy: str = "left") -> "NCPoly":
    """Rewrite ``coeff * word`` to normal form.

    ``strategy`` picks the reducible pair to contract first ("left" or
    "right"); all strategies must give the same answer and the fuzz tests
    exercise exactly that.
    """
    for g in word:
        if not 0 <= g < len(alg.gens):
            raise UnknownGeneratorError(f"code {g} not in {alg.name}")
    if coeff.is_zero():
        return NCPoly(alg, {})
    acc: dict = {}
    pending = [(coeff, word)]
    steps = 0
    from_right = strategy == "right"
    while pending:
        c, w = pending.pop()
        pos = _find_descent(w, from_right)
        if pos < 0:
            _acc_terms(acc, {w: c})
            continue
        steps += 1
        if steps > MAX_REWRITE_STEPS:
            raise RewriteLimitExceeded(
                f"{alg.name}: rewrite budget exhausted (non-terminating table?)")
        head, tail = w[:pos], w[pos + 2:]
        for rc, rw in alg.pair_rule(w[pos], w[pos + 1]):
            pending.append((c * rc, head + rw + tail))
    return NCPoly(alg, acc)


def _find_descent(w: tuple, from_right: bool) -> int:
    rng = range(len(w) - 2, -1, -1) if from_right else range(len(w) - 1)
    for i in rng:
        if w[i] > w[i + 1]:
            return i
    return -1


class NCPoly:
    """Normal-form noncommutative polynomial over one algebra."""

    __slots__ = ("alg", "terms")

    def __init__(self, alg: Algebra, terms: dict):
        self.alg = alg
        self.terms = terms

    # -- ring structure ------------------------------------------------------

    def _check(self, other: "NCPoly"):
        if self.alg is not other.alg:
            raise ValueError(f"mixed algebras: {self.alg.name} vs {other.alg.name}")

    def __add__(self, other: "NCPoly") -> "NCPoly":
        self._check(other)
        acc = dict(self.terms)
        _acc_terms(acc, other.terms)
        return NCPoly(self.alg, acc)

    def __sub__(self, other: "NCPoly") -> "NCPoly":
        return self + (-other)

    def __neg__(self) -> "NCPoly":
        return NCPoly(self.alg, {w: -c for w, c in self.terms.items()})

    def __mul__(self, other) -> "NCPoly":
        if isinstance(other, (int, VScalar)):
            return self.scale(other)
        self._check(other)
        acc: dict = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                _acc_terms(acc, normalize(self.alg, w1 + w2, c1 * c2).terms)
        return NCPoly(self.alg, acc)

    def __rmul__(self, other) -> "NCPoly":
        if isinstance(other, (int, VScalar)):
            return self.scale(other)
        return NotImplemented

    def scale(self, c) -> "NCPoly":
        c = VScalar.coerce(c)
        if c.is_zero():
            return NCPoly(self.alg, {})
        return NCPoly(self.alg, {w: x * c for w, x in self.terms.items()})

    def __pow__(self, k: int) -> "NCPoly":
        if k < 0:
            raise ValueError("negative power of a noncommutative polynomial")
        out = self.alg.one()
        for _ in range(k):
            out = out * self
        return out

    # -- inspection --------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, word) -> VScalar:
        """Coefficient of a canonical word (error on non-canonical input)."""
        word = tuple(word)
        if _find_descent(word, False) >= 0:
            raise ValueError(f"{word} is not a canonical word")
        return self.terms.get(word, ZERO)

    def constant_term(self) -> VScalar:
        return self.terms.get((), ZERO)

    def __eq__(self, other) -> bool:
        if not isinstance(other, NCPoly):
            return NotImplemented
        return self.alg is other.alg and self.terms == other.terms

    def __hash__(self):
        return hash((id(self.alg), frozenset(self.terms.items())))

    def __repr__(self):
        from .render import poly_text
        return f"NCPoly<{self.alg.name}>({poly_text(self)})"

    # -- grading -----------------------------------------------------------------

    def word_degree(self, word: tuple, grading: dict) -> tuple:
        vec = None
        for g in word:
            d = grading[self.alg.gens[g].cls]
            vec = d if vec is None else tuple(x + y for x, y in zip(vec, d))
        if vec is None:
            d0 = next(iter(grading.values()))
            vec = (0,) * len(d0)
        return vec

    def grade(self, grading: dict) -> dict:
        """Split into homogeneous parts under a per-class integer grading.

        ``grading`` maps each symbol class to an integer vector; the parts
        sum back to the polynomial exactly.
        """
        out: dict = {}
        for w, c in self.terms.items():
            d = self.word_degree(w, grading)
            out.setdefault(d, {})[w] = c
        return {d: NCPoly(self.alg, t) for d, t in out.items()}


def word_bidegree(alg: Algebra, word: tuple, star_classes: frozenset) -> tuple:
    """(plain count, starred count) of a word, given the starred class names."""
    k = sum(1 for g in word if alg.gens[g].cls in star_classes)
    return (len(word) - k, k)
