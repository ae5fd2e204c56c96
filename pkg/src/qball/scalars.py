"""Exact arithmetic in the field Q(v), with q = v^2.

Every coefficient in this package is a ``VScalar``: a fraction of integer
polynomials in the variable v, where v stands for the square root of the
deformation parameter q.  Working over v rather than q keeps the half-integer
powers q^{1/2} that appear in the symmetry action exactly representable.

Canonical form
--------------
A nonzero value is stored as  v^shift * num(v) / den(v)  with

* ``num``, ``den`` integer coefficient tuples (low degree first),
* ``num[0] != 0`` and ``den[0] != 0`` (all pure v-power content is carried
  by the integer ``shift``),
* gcd(num, den) = 1 over the rationals,
* the pair content-free over the integers, and ``den`` with positive
  leading coefficient.

Canonical forms are unique, so equality and hashing are structural.  Zero is
stored as ``shift = 0, num = (), den = (1,)``.

Values are immutable and all operations are pure functions.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd


class PoleError(ZeroDivisionError):
    """Evaluation of a VScalar at a zero of its denominator."""


# ---------------------------------------------------------------------------
# integer polynomial helpers (dense tuples, lowest degree first, no trailing 0)
# ---------------------------------------------------------------------------

def _ptrim(c: list) -> tuple:
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def _padd(a: tuple, b: tuple) -> tuple:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, x in enumerate(b):
        out[i] += x
    return _ptrim(out)


def _pneg(a: tuple) -> tuple:
    return tuple(-x for x in a)


def _pmul(a: tuple, b: tuple) -> tuple:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _ptrim(out)


def _pcontent(a: tuple) -> int:
    g = 0
    for x in a:
        g = gcd(g, x)
    return g


def _pprimitive(a: tuple) -> tuple:
    g = _pcontent(a)
    if g in (0, 1):
        return a
    return tuple(x // g for x in a)


def _ppseudo_rem(a: tuple, b: tuple) -> tuple:
    # pseudo remainder of a by b; stays over the integers
    da, db = len(a) - 1, len(b) - 1
    lb = b[-1]
    r = list(a)
    while len(r) - 1 >= db and r:
        dr = len(r) - 1
        lead = r[-1]
        r = [x * lb for x in r]
        shift = dr - db
        for i, y in enumerate(b):
            r[shift + i] -= lead * y
        while r and r[-1] == 0:
            r.pop()
    return tuple(r)


def _pgcd(a: tuple, b: tuple) -> tuple:
    # primitive gcd in Z[v] via a primitive pseudo-remainder sequence
    a, b = _pprimitive(a), _pprimitive(b)
    while b:
        a, b = b, _pprimitive(_ppseudo_rem(a, b))
    if a and a[-1] < 0:
        a = _pneg(a)
    return a


def _pdiv_exact(a: tuple, b: tuple) -> tuple:
    # exact division in Z[v]; quotient coefficients are integral by Gauss
    if not a:
        return ()
    q = [Fraction(0)] * (len(a) - len(b) + 1)
    r = [Fraction(x) for x in a]
    lb = Fraction(b[-1])
    for k in range(len(a) - len(b), -1, -1):
        c = r[k + len(b) - 1] / lb
        q[k] = c
        if c:
            for i, y in enumerate(b):
                r[k + i] -= c * y
    assert all(x == 0 for x in r), "non-exact polynomial division"
    assert all(x.denominator == 1 for x in q)
    return _ptrim([int(x) for x in q])


def _peval(a: tuple, x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(a):
        acc = acc * x + c
    return acc


# ---------------------------------------------------------------------------


class VScalar:
    """An element of Q(v) in canonical form.  Immutable and hashable."""

    __slots__ = ("shift", "num", "den")

    def __init__(self, shift: int, num: tuple, den: tuple, _canonical: bool = False):
        if _canonical:
            self.shift, self.num, self.den = shift, num, den
            return
        s, n, d = _canonicalise(shift, num, den)
        self.shift, self.num, self.den = s, n, d

    # -- constructors -------------------------------------------------------

    @staticmethod
    def from_int(k: int) -> "VScalar":
        if k == 0:
            return ZERO
        return VScalar(0, (k,), (1,), _canonical=True)

    @staticmethod
    def from_fraction(f: Fraction) -> "VScalar":
        f = Fraction(f)
        if f == 0:
            return ZERO
        return VScalar(0, (f.numerator,), (f.denominator,), _canonical=True)

    @staticmethod
    def coerce(x) -> "VScalar":
        if isinstance(x, VScalar):
            return x
        if isinstance(x, int):
            return VScalar.from_int(x)
        if isinstance(x, Fraction):
            return VScalar.from_fraction(x)
        raise TypeError(f"cannot coerce {x!r} to VScalar")

    # -- predicates ----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.num

    def is_one(self) -> bool:
        return self.shift == 0 and self.num == (1,) and self.den == (1,)

    def is_monomial(self) -> bool:
        """True when the value is c * v^k for an integer c (den = 1)."""
        return len(self.num) <= 1 and self.den == (1,)

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other) -> "VScalar":
        other = VScalar.coerce(other)
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        m = min(self.shift, other.shift)
        a = _pmul(self.num, other.den)
        b = _pmul(other.num, self.den)
        a = _pshift(a, self.shift - m)
        b = _pshift(b, other.shift - m)
        return VScalar(m, _padd(a, b), _pmul(self.den, other.den))

    __radd__ = __add__

    def __neg__(self) -> "VScalar":
        if self.is_zero():
            return self
        return VScalar(self.shift, _pneg(self.num), self.den, _canonical=True)

    def __sub__(self, other) -> "VScalar":
        return self + (-VScalar.coerce(other))

    def __rsub__(self, other) -> "VScalar":
        return VScalar.coerce(other) + (-self)

    def __mul__(self, other) -> "VScalar":
        other = VScalar.coerce(other)
        if self.is_zero() or other.is_zero():
            return ZERO
        # fast path: no true denominators, so no gcd or content work needed
        # (a product of polynomials with nonzero constant terms keeps one)
        if self.den == (1,) == other.den:
            return VScalar(self.shift + other.shift,
                           _pmul(self.num, other.num), (1,), _canonical=True)
        return VScalar(self.shift + other.shift,
                       _pmul(self.num, other.num), _pmul(self.den, other.den))

    __rmul__ = __mul__

    def inverse(self) -> "VScalar":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in Q(v)")
        return VScalar(-self.shift, self.den, self.num)

    def __truediv__(self, other) -> "VScalar":
        return self * VScalar.coerce(other).inverse()

    def __rtruediv__(self, other) -> "VScalar":
        return VScalar.coerce(other) * self.inverse()

    def __pow__(self, k: int) -> "VScalar":
        if k < 0:
            return self.inverse() ** (-k)
        out = ONE
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # -- comparison / hashing -------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = VScalar.from_int(other)
        if not isinstance(other, VScalar):
            return NotImplemented
        return (self.shift == other.shift and self.num == other.num
                and self.den == other.den)

    def __hash__(self):
        return hash((self.shift, self.num, self.den))

    # -- evaluation ------------------------------------------------------------

    def eval_at(self, v0) -> Fraction:
        """Exact value at v = v0 (a rational); raises PoleError at a pole."""
        v0 = Fraction(v0)
        if self.is_zero():
            return Fraction(0)
        d = _peval(self.den, v0)
        if d == 0:
            raise PoleError(f"pole at v = {v0}")
        if v0 == 0 and self.shift < 0:
            raise PoleError("pole at v = 0")
        return v0 ** self.shift * _peval(self.num, v0) / d

    # -- rendering --------------------------------------------------------------

    def __repr__(self):
        return f"VScalar({self.to_text()!r})"

    def to_text(self) -> str:
        """Deterministic text form, parseable by the CLI expression grammar."""
        if self.is_zero():
            return "0"
        num_terms = _poly_terms(self.num, self.shift)
        den_terms = _poly_terms(self.den, 0)
        num_s = _terms_to_text(num_terms)
        if den_terms == ["1"]:
            return num_s
        den_s = _terms_to_text(den_terms)
        if len(den_terms) > 1:
            den_s = f"({den_s})"
        elif not _is_atomic(den_s):
            den_s = f"({den_s})"
        if len(num_terms) > 1:
            num_s = f"({num_s})"
        return f"{num_s}*{den_s}^-1"


def _pshift(a: tuple, k: int) -> tuple:
    if not a or k == 0:
        return a
    return (0,) * k + a


def _canonicalise(shift: int, num, den):
    num = _ptrim(list(num))
    den = _ptrim(list(den))
    if not den:
        raise ZeroDivisionError("zero denominator in Q(v)")
    if not num:
        return 0, (), (1,)
    # pull pure v-powers out of both sides into the shift
    i = 0
    while num[i] == 0:
        i += 1
    if i:
        shift += i
        num = num[i:]
    j = 0
    while den[j] == 0:
        j += 1
    if j:
        shift -= j
        den = den[j:]
    if den == (1,):
        return shift, num, den
    if den == (-1,):
        return shift, _pneg(num), (1,)
    g = _pgcd(num, den)
    if len(g) > 1 or g[0] != 1:
        num = _pdiv_exact(num, g)
        den = _pdiv_exact(den, g)
    c = gcd(_pcontent(num), _pcontent(den))
    if c > 1:
        num = tuple(x // c for x in num)
        den = tuple(x // c for x in den)
    if den[-1] < 0:
        num, den = _pneg(num), _pneg(den)
    return shift, num, den


# -- rendering helpers: v^(2k) prints as q^k, odd powers stay in v -------------

def _monomial_text(coeff: int, e: int) -> str:
    if e == 0:
        return str(coeff)
    if e % 2 == 0:
        base = "q" if e == 2 else ("q^%d" % (e // 2))
    else:
        base = "v" if e == 1 else ("v^%d" % e)
    if coeff == 1:
        return base
    if coeff == -1:
        return "-" + base
    return f"{coeff}*{base}"


def _poly_terms(p: tuple, shift: int) -> list:
    # highest degree first, for readability
    out = []
    for e in range(len(p) - 1, -1, -1):
        if p[e]:
            out.append(_monomial_text(p[e], e + shift))
    return out


def _terms_to_text(terms: list) -> str:
    s = terms[0]
    for t in terms[1:]:
        s += " - " + t[1:] if t.startswith("-") else " + " + t
    return s


def _is_atomic(s: str) -> bool:
    return all(c not in s for c in "+- *")


ZERO = VScalar(0, (), (1,), _canonical=True)
ONE = VScalar(0, (1,), (1,), _canonical=True)
V = VScalar(0, (0, 1), (1,), _canonical=True)
Q = VScalar(0, (0, 0, 1), (1,), _canonical=True)


def vpow(k: int) -> VScalar:
    """v^k as a VScalar."""
    if k == 0:
        return ONE
    return VScalar(k, (1,), (1,), _canonical=True)


def qpow(k: int) -> VScalar:
    """q^k = v^(2k)."""
    return vpow(2 * k)


def neg_qpow(k: int) -> VScalar:
    """(-q)^k, the sign convention of quantum minors."""
    s = vpow(2 * k)
    return s if k % 2 == 0 else -s
