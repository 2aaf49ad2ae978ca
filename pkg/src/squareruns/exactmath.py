"""Exact arithmetic substrate: rationals, the real quadratic field Q(sqrt 6),
its ring of integers, residue rings modulo inert prime powers, square testing,
square classes, and local solvability of quartic homogeneous spaces.

Everything here is immutable and pure; all arithmetic is exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Union

# The quadratic field is Q(sqrt(D)) with D fixed once and for all.
D = 6

Rat = Union[int, Fraction]


# ---------------------------------------------------------------------------
# integer helpers
# ---------------------------------------------------------------------------

def is_square_int(n: int) -> bool:
    if n < 0:
        return False
    r = math.isqrt(n)
    return r * r == n


def isqrt_exact(n: int) -> Optional[int]:
    """Integer square root if n is a perfect square, else None."""
    if n < 0:
        return None
    r = math.isqrt(n)
    return r if r * r == n else None


def factorize(n: int) -> dict[int, int]:
    """Trial-division factorization; fine for the small inputs used here."""
    n = abs(n)
    if n == 0:
        raise ValueError("cannot factor 0")
    out: dict[int, int] = {}
    for p in (2, 3, 5):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    f = 7
    while f * f <= n:
        while n % f == 0:
            out[f] = out.get(f, 0) + 1
            n //= f
        f += 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def squarefree_part(n: int) -> int:
    """Largest squarefree divisor times the sign; squarefree_part(18) == 2."""
    if n == 0:
        raise ValueError("0 has no squarefree part")
    sign = -1 if n < 0 else 1
    out = 1
    for p, e in factorize(n).items():
        if e % 2:
            out *= p
    return sign * out


def squarefree_part_rat(r: Rat) -> int:
    """Squarefree integer representing the square class of a nonzero rational."""
    r = Fraction(r)
    if r == 0:
        raise ValueError("0 has no square class")
    return squarefree_part(r.numerator * r.denominator)


def prime_factors(n: int) -> list[int]:
    return sorted(factorize(n))


def legendre(a: int, p: int) -> int:
    """Legendre symbol (a|p) for odd prime p."""
    a %= p
    if a == 0:
        return 0
    t = pow(a, (p - 1) // 2, p)
    return 1 if t == 1 else -1


def is_inert(p: int) -> bool:
    """True iff the rational prime p stays prime in Z[sqrt(6)]."""
    if p in (2, 3):
        return False  # ramified
    return legendre(D, p) == -1


def vp(n: int, p: int) -> int:
    """p-adic valuation of a nonzero integer."""
    if n == 0:
        raise ValueError("valuation of 0")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def vp_rat(r: Rat, p: int) -> int:
    r = Fraction(r)
    return vp(r.numerator, p) - vp(r.denominator, p)


# ---------------------------------------------------------------------------
# square roots in Q
# ---------------------------------------------------------------------------

def is_square_in_Q(r: Rat) -> Optional[Fraction]:
    """Return s >= 0 with s*s == r if r is the square of a rational, else None."""
    r = Fraction(r)
    if r < 0:
        return None
    num = isqrt_exact(r.numerator)
    if num is None:
        return None
    den = isqrt_exact(r.denominator)
    if den is None:
        return None
    return Fraction(num, den)


# ---------------------------------------------------------------------------
# the field Q(sqrt 6)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class QF6Elem:
    """Element a + b*sqrt(6) with exact rational a, b."""

    a: Fraction
    b: Fraction

    def __init__(self, a: Rat = 0, b: Rat = 0):
        object.__setattr__(self, "a", Fraction(a))
        object.__setattr__(self, "b", Fraction(b))

    # -- coercion -----------------------------------------------------------
    @staticmethod
    def of(x) -> "QF6Elem":
        if isinstance(x, QF6Elem):
            return x
        return QF6Elem(Fraction(x), Fraction(0))

    @staticmethod
    def _try(x) -> Optional["QF6Elem"]:
        if isinstance(x, QF6Elem):
            return x
        if isinstance(x, (int, Fraction)):
            return QF6Elem(x, 0)
        return None

    # -- arithmetic ---------------------------------------------------------
    def __add__(self, other):
        o = QF6Elem._try(other)
        if o is None:
            return NotImplemented
        return QF6Elem(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self):
        return QF6Elem(-self.a, -self.b)

    def __sub__(self, other):
        o = QF6Elem._try(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = QF6Elem._try(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = QF6Elem._try(other)
        if o is None:
            return NotImplemented
        return QF6Elem(self.a * o.a + D * self.b * o.b,
                       self.a * o.b + self.b * o.a)

    __rmul__ = __mul__

    def inverse(self) -> "QF6Elem":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of 0 in Q(sqrt 6)")
        return QF6Elem(self.a / n, -self.b / n)

    def __truediv__(self, other):
        o = QF6Elem._try(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = QF6Elem._try(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = QF6Elem(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        if isinstance(other, QF6Elem):
            return self.a == other.a and self.b == other.b
        return NotImplemented

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b))

    def __bool__(self):
        return self.a != 0 or self.b != 0

    # -- field-specific -----------------------------------------------------
    def conj(self) -> "QF6Elem":
        return QF6Elem(self.a, -self.b)

    def norm(self) -> Fraction:
        return self.a * self.a - D * self.b * self.b

    def trace(self) -> Fraction:
        return 2 * self.a

    def is_rational(self) -> bool:
        return self.b == 0

    def __repr__(self):
        if self.b == 0:
            return f"{self.a}"
        return f"({self.a}{'+' if self.b >= 0 else '-'}{abs(self.b)}*r6)"


SQRT6 = QF6Elem(0, 1)


def qf6(a: Rat = 0, b: Rat = 0) -> QF6Elem:
    return QF6Elem(a, b)


def qf6_arith(x: QF6Elem, y: QF6Elem, op: str) -> QF6Elem:
    """Dispatch wrapper for the four field operations."""
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "div":
        if not y:
            raise ZeroDivisionError("division by zero in Q(sqrt 6)")
        return x / y
    raise ValueError(f"unknown op {op!r}")


def is_square_in_QF6(x: QF6Elem) -> Optional[QF6Elem]:
    """A root u + v*sqrt(6) with (u+v*sqrt6)^2 == x, if one exists.

    For b != 0 solve u^2 + 6 v^2 = a, 2uv = b: u^2 must be (a +- n)/2 where
    n^2 = a^2 - 6 b^2 is the norm.  For b == 0 the element is a rational a;
    it is a square iff a or a/6 is a rational square.
    """
    x = QF6Elem.of(x)
    if not x:
        return QF6Elem(0)
    if x.b == 0:
        s = is_square_in_Q(x.a)
        if s is not None:
            return QF6Elem(s, 0)
        s = is_square_in_Q(x.a / D)
        if s is not None:
            return QF6Elem(0, s)
        return None
    n = is_square_in_Q(x.norm())
    if n is None:
        return None
    for cand in ((x.a + n) / 2, (x.a - n) / 2):
        u = is_square_in_Q(cand)
        if u is not None and u != 0:
            v = x.b / (2 * u)
            root = QF6Elem(u, v)
            if root * root == x:
                return root
    return None


# ---------------------------------------------------------------------------
# square classes
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SquareClass:
    """A square class of Q* or Q(sqrt6)*.

    Over Q the representative is a canonical squarefree integer (with sign).
    Over Q(sqrt6) an arbitrary nonzero representative is stored and equality
    is decided by the square test; no canonical form is attempted.
    """

    field: str  # "Q" or "QF6"
    rep: object  # int (squarefree) for Q, QF6Elem for QF6

    @staticmethod
    def of_rational(r: Rat) -> "SquareClass":
        return SquareClass("Q", squarefree_part_rat(r))

    @staticmethod
    def of_qf6(x: QF6Elem) -> "SquareClass":
        x = QF6Elem.of(x)
        if not x:
            raise ValueError("0 has no square class")
        return SquareClass("QF6", x)

    def __mul__(self, other: "SquareClass") -> "SquareClass":
        if self.field != other.field:
            raise ValueError("square classes live in different fields")
        if self.field == "Q":
            return SquareClass("Q", squarefree_part(self.rep * other.rep))
        return SquareClass("QF6", self.rep * other.rep)

    def same_class(self, other: "SquareClass") -> bool:
        if self.field != other.field:
            return False
        if self.field == "Q":
            return self.rep == other.rep
        return is_square_in_QF6(QF6Elem.of(self.rep) * QF6Elem.of(other.rep)) is not None

    def __eq__(self, other):
        if not isinstance(other, SquareClass):
            return NotImplemented
        return self.same_class(other)

    def __hash__(self):
        # class-invariant hash: over QF6 all classes collide, equality decides
        if self.field == "Q":
            return hash(("Q", self.rep))
        return hash("QF6")

    def __repr__(self):
        return f"[{self.rep}]_{self.field}"


def pushforward_canonical_int(d: int) -> int:
    """Canonical squarefree integer for the Q(sqrt6)-class of a rational d.

    d and e agree over Q(sqrt6) iff d*e or 6*d*e is a rational square, so the
    class {d, squarefree(6d)} is represented by whichever member has the
    smaller absolute value.
    """
    d = squarefree_part(d)
    alt = squarefree_part(D * d)
    return d if abs(d) <= abs(alt) else alt


def pushforward_square_class(c: SquareClass) -> SquareClass:
    """Image of a rational square class in Q(sqrt6)*/(Q(sqrt6)*)^2."""
    if c.field != "Q":
        raise ValueError("pushforward expects a class over Q")
    return SquareClass("QF6", QF6Elem(pushforward_canonical_int(c.rep)))


def qf6_classes_equal(d: int, e: int) -> bool:
    """Do the rational classes d, e agree modulo squares of Q(sqrt6)?"""
    de = d * e
    if de <= 0:
        return False
    return is_square_int(de) or is_square_int(D * de)


# ---------------------------------------------------------------------------
# residue rings O / p^n O, p inert
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ResidueElem:
    """Class of a + b*sqrt(6) in O/p^n O for an inert prime p."""

    p: int
    n: int
    a: int
    b: int

    def __init__(self, p: int, n: int, a: int, b: int):
        if not is_inert(p):
            raise ValueError(f"{p} is not inert in Q(sqrt 6)")
        if n < 1:
            raise ValueError("exponent must be >= 1")
        m = p ** n
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "a", a % m)
        object.__setattr__(self, "b", b % m)

    # -- helpers -------------------------------------------------------------
    @property
    def modulus(self) -> int:
        return self.p ** self.n

    def _coerce(self, other) -> "ResidueElem":
        if isinstance(other, ResidueElem):
            if (other.p, other.n) != (self.p, self.n):
                raise ValueError("mixed residue rings")
            return other
        if isinstance(other, int):
            return ResidueElem(self.p, self.n, other, 0)
        if isinstance(other, Fraction):
            return residue_reduce(QF6Elem(other, 0), self.p, self.n)
        if isinstance(other, QF6Elem):
            return residue_reduce(other, self.p, self.n)
        return NotImplemented

    # -- ring ops ------------------------------------------------------------
    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return ResidueElem(self.p, self.n, self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self):
        return ResidueElem(self.p, self.n, -self.a, -self.b)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return ResidueElem(self.p, self.n,
                           self.a * o.a + D * self.b * o.b,
                           self.a * o.b + self.b * o.a)

    __rmul__ = __mul__

    def is_unit(self) -> bool:
        return (self.a * self.a - D * self.b * self.b) % self.p != 0

    def inverse(self) -> "ResidueElem":
        nrm = self.a * self.a - D * self.b * self.b
        if nrm % self.p == 0:
            raise ZeroDivisionError("non-unit in residue ring")
        inv = pow(nrm, -1, self.modulus)
        return ResidueElem(self.p, self.n, self.a * inv, -self.b * inv)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        out = ResidueElem(self.p, self.n, 1, 0)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, QF6Elem, ResidueElem)):
            o = self._coerce(other)
            return self.a == o.a and self.b == o.b
        return NotImplemented

    def __hash__(self):
        return hash((self.p, self.n, self.a, self.b))

    def __bool__(self):
        return self.a != 0 or self.b != 0

    # -- structure -----------------------------------------------------------
    def valuation(self) -> int:
        """Largest k <= n with p^k dividing both components (n for zero)."""
        if not self:
            return self.n
        v = 0
        a, b = self.a, self.b
        while v < self.n and a % self.p == 0 and b % self.p == 0:
            a //= self.p
            b //= self.p
            v += 1
        return v

    def lift(self) -> QF6Elem:
        """Centered lift to O."""
        m = self.modulus
        a = self.a if self.a <= m // 2 else self.a - m
        b = self.b if self.b <= m // 2 else self.b - m
        return QF6Elem(a, b)

    def reduce_to(self, n2: int) -> "ResidueElem":
        if n2 > self.n:
            raise ValueError("cannot raise precision")
        return ResidueElem(self.p, n2, self.a, self.b)

    def is_in_base_ring(self) -> bool:
        """Does the class lie in Z/p^n, i.e. b == 0?"""
        return self.b == 0

    def __repr__(self):
        return f"({self.a}+{self.b}*r6 mod {self.p}^{self.n})"


def residue_reduce(x: QF6Elem, p: int, n: int) -> ResidueElem:
    """Ring homomorphism from p-integral elements of Q(sqrt6) onto O/p^n O."""
    x = QF6Elem.of(x)
    m = p ** n
    out = []
    for part in (x.a, x.b):
        den = part.denominator
        if den % p == 0:
            raise ValueError(f"denominator divisible by {p}")
        out.append(part.numerator * pow(den, -1, m) % m)
    return ResidueElem(p, n, out[0], out[1])


@lru_cache(maxsize=None)
def _fp2_sqrt_table(p: int) -> dict[tuple[int, int], tuple[int, int]]:
    """Map z^2 -> z over F_{p^2}; small p only."""
    table: dict[tuple[int, int], tuple[int, int]] = {}
    for a in range(p):
        for b in range(p):
            z = ResidueElem(p, 1, a, b)
            sq = z * z
            table.setdefault((sq.a, sq.b), (a, b))
    return table


def fp2_sqrt(x: ResidueElem) -> Optional[ResidueElem]:
    """Square root in the field F_{p^2} (n must be 1)."""
    if x.n != 1:
        raise ValueError("fp2_sqrt expects n == 1")
    hit = _fp2_sqrt_table(x.p).get((x.a, x.b))
    if hit is None:
        return None
    return ResidueElem(x.p, 1, hit[0], hit[1])


# ---------------------------------------------------------------------------
# local solvability of  delta*w^2 = delta^2 u^4 + a*delta u^2 v^2 + b v^4
# ---------------------------------------------------------------------------

def _poly_int_eval(coeffs: list[int], x: int) -> int:
    out = 0
    for c in reversed(coeffs):
        out = out * x + c
    return out


def _square_value_exists(coeffs: list[int], p: int, max_depth: int,
                         restrict_to_multiples: bool = False) -> bool:
    """Is H(u) a square in Z_p for some u in Z_p, H the given integer poly?

    Classic branch-and-decide recursion on residue classes u = u0 mod p^j.
    A class decides once v_p(H(u)) is constant on it and the unit part is
    pinned mod p (odd p) or mod 8 (p = 2); a class containing a p-adic root
    of H (Newton criterion) is a w = 0 solution.
    """
    margin = 3 if p == 2 else 1
    deriv = [i * c for i, c in enumerate(coeffs)][1:]

    def decide(u0: int, j: int) -> Optional[bool]:
        c = _poly_int_eval(coeffs, u0)
        if c == 0:
            return True  # exact root: w = 0 solution
        dc = _poly_int_eval(deriv, u0)
        if dc != 0 and vp(c, p) > 2 * vp(dc, p):
            return True  # Newton converges to a root of H in Z_p
        v = vp(c, p)
        if v + margin <= j:
            if v % 2:
                return False
            unit = c // p ** v
            if p == 2:
                return unit % 8 == 1
            return legendre(unit, p) == 1
        return None

    stack = [(u0, 1) for u0 in (range(p) if not restrict_to_multiples else [0])]
    while stack:
        u0, j = stack.pop()
        res = decide(u0, j)
        if res is True:
            return True
        if res is False:
            continue
        if j >= max_depth:
            raise RuntimeError(
                f"local solvability undecided at depth {j} (p={p}); raise precision")
        for t in range(p):
            stack.append((u0 + t * p ** j, j + 1))
    return False


def local_solvability(delta: int, a: int, b: int, place) -> bool:
    """Nontrivial solvability of delta*w^2 = delta^2 u^4 + a delta u^2 v^2 + b v^4
    over Q_p (place = prime) or over R (place = "real").
    """
    if delta == 0 or b == 0:
        raise ValueError("need delta, b nonzero")
    if place == "real":
        if delta > 0:
            return True  # (u,v,w) = (1,0,delta) works up to scaling
        # need the quartic form to take a value <= 0 somewhere
        return b < 0 or (a > 0 and a * a - 4 * b >= 0)
    p = int(place)
    # dehomogenize: v = 1 (u in Z_p), then u = 1 with v in pZ_p.
    # In each chart (delta*w)^2 = delta * (rhs), an integer polynomial value.
    depth = vp(b * b * (a * a - 4 * b) * delta ** 4, p) + (9 if p == 2 else 6)
    h1 = [delta * b, 0, delta * delta * a, 0, delta ** 3]  # delta*(d^2 u^4 + a d u^2 + b)
    h2 = [delta ** 3, 0, delta * delta * a, 0, delta * b]  # u = 1 chart, poly in v
    for attempt in range(3):
        try:
            if _square_value_exists(h1, p, depth):
                return True
            return _square_value_exists(h2, p, depth, restrict_to_multiples=True)
        except RuntimeError:
            depth *= 2
    raise RuntimeError(f"local solvability undecided at p={p} after retries")


def homogeneous_space_point_to_curve(delta: int, u: Fraction, v: Fraction,
                                     w: Fraction) -> tuple[Fraction, Fraction]:
    """(u:v:w) on the delta-space maps to (x, y) = (delta u^2/v^2, delta u w/v^3)."""
    if v == 0:
        raise ZeroDivisionError("point at infinity of the homogeneous space")
    x = Fraction(delta) * u * u / (v * v)
    y = Fraction(delta) * u * w / (v * v * v)
    return x, y
