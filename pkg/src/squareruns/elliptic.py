"""Elliptic curve machinery over exact fields: long-Weierstrass group law,
torsion over Q, 2-isogenies in standard form, formal-group expansions, the
quartic <-> Weierstrass correspondence with exact forward/backward maps, and
diagonal quadric-pair elimination to quartic models.

Field elements are duck-typed: Fraction, QF6Elem, or ResidueElem all work
wherever the necessary divisions exist.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Sequence, Union

from .exactmath import (QF6Elem, is_square_in_Q, is_square_in_QF6, legendre,
                        prime_factors, is_square_int)
from .polys import Poly, Series, nullspace, poly_to_series, series_reverse, solve_linear


# ---------------------------------------------------------------------------
# curves and points
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class WeierstrassCurve:
    """y^2 + a1 x y + a3 y = x^3 + a2 x^2 + a4 x + a6 over an exact field."""

    a1: object
    a2: object
    a3: object
    a4: object
    a6: object

    # -- invariants -----------------------------------------------------------
    @property
    def b2(self):
        return self.a1 * self.a1 + 4 * self.a2

    @property
    def b4(self):
        return 2 * self.a4 + self.a1 * self.a3

    @property
    def b6(self):
        return self.a3 * self.a3 + 4 * self.a6

    @property
    def b8(self):
        return (self.a1 * self.a1 * self.a6 + 4 * self.a2 * self.a6
                - self.a1 * self.a3 * self.a4 + self.a2 * self.a3 * self.a3
                - self.a4 * self.a4)

    @property
    def c4(self):
        return self.b2 * self.b2 - 24 * self.b4

    @property
    def c6(self):
        return -self.b2 ** 3 + 36 * self.b2 * self.b4 - 216 * self.b6

    @property
    def disc(self):
        b2, b4, b6, b8 = self.b2, self.b4, self.b6, self.b8
        return -b2 * b2 * b8 - 8 * b4 ** 3 - 27 * b6 * b6 + 9 * b2 * b4 * b6

    @property
    def j(self):
        return self.c4 ** 3 / self.disc

    # -- predicates -------------------------------------------------------------
    def rhs(self, x):
        return ((x + self.a2) * x + self.a4) * x + self.a6

    def on_curve(self, x, y) -> bool:
        return y * y + self.a1 * x * y + self.a3 * y == self.rhs(x)

    def O(self) -> "ECPoint":
        return ECPoint(self, None, None, True)

    def point(self, x, y) -> "ECPoint":
        P = ECPoint(self, x, y, False)
        if not self.on_curve(x, y):
            raise ValueError(f"({x}, {y}) is not on the curve")
        return P

    def two_torsion_denominator(self, P: "ECPoint"):
        """2y + a1 x + a3; vanishes exactly at 2-torsion."""
        return 2 * P.y + self.a1 * P.x + self.a3

    def map_coeffs(self, f: Callable) -> "WeierstrassCurve":
        return WeierstrassCurve(f(self.a1), f(self.a2), f(self.a3), f(self.a4), f(self.a6))

    def __repr__(self):
        return (f"y^2 + ({self.a1})xy + ({self.a3})y = "
                f"x^3 + ({self.a2})x^2 + ({self.a4})x + ({self.a6})")


def short_curve(a, b, c=0) -> WeierstrassCurve:
    """y^2 = x^3 + a x^2 + b x + c."""
    return WeierstrassCurve(0, a, 0, b, c)


@dataclass(frozen=True)
class ECPoint:
    curve: WeierstrassCurve
    x: object
    y: object
    infinity: bool = False

    def is_zero(self) -> bool:
        return self.infinity

    def __neg__(self):
        if self.infinity:
            return self
        E = self.curve
        return ECPoint(E, self.x, -self.y - E.a1 * self.x - E.a3, False)

    def __add__(self, other: "ECPoint") -> "ECPoint":
        P, Q = self, other
        E = P.curve
        if E is not Q.curve and E != Q.curve:
            raise ValueError("points on different curves")
        if P.infinity:
            return Q
        if Q.infinity:
            return P
        x1, y1, x2, y2 = P.x, P.y, Q.x, Q.y
        if x1 == x2:
            if y2 == -y1 - E.a1 * x1 - E.a3:
                return E.O()
            # doubling
            den = 2 * y1 + E.a1 * x1 + E.a3
            lam = (3 * x1 * x1 + 2 * E.a2 * x1 + E.a4 - E.a1 * y1) / den
            nu = (-(x1 ** 3) + E.a4 * x1 + 2 * E.a6 - E.a3 * y1) / den
        else:
            den = x2 - x1
            lam = (y2 - y1) / den
            nu = (y1 * x2 - y2 * x1) / den
        x3 = lam * lam + E.a1 * lam - E.a2 - x1 - x2
        y3 = -(lam + E.a1) * x3 - nu - E.a3
        return ECPoint(E, x3, y3, False)

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, n: int) -> "ECPoint":
        if n < 0:
            return (-n) * (-self)
        out = self.curve.O()
        base = self
        while n:
            if n & 1:
                out = out + base
            base = base + base
            n >>= 1
        return out

    def __eq__(self, other):
        if not isinstance(other, ECPoint):
            return NotImplemented
        if self.infinity or other.infinity:
            return self.infinity and other.infinity
        return self.x == other.x and self.y == other.y

    def __hash__(self):
        if self.infinity:
            return hash("O")
        return hash((self.x, self.y))

    def order(self, bound: int = 16) -> Optional[int]:
        """Exact order if <= bound, else None."""
        acc = self
        for n in range(1, bound + 1):
            if acc.is_zero():
                return n
            acc = acc + self
        return None

    def __repr__(self):
        return "O" if self.infinity else f"({self.x}, {self.y})"


def ec_add(P: ECPoint, Q: ECPoint) -> ECPoint:
    return P + Q


# ---------------------------------------------------------------------------
# model changes and isomorphism testing
# ---------------------------------------------------------------------------

def to_short_form(E: WeierstrassCurve):
    """Return (S, fwd, bwd): S: y^2 = x^3 + A x + B and inverse point maps."""
    half = Fraction(1, 2)
    twelfth = Fraction(1, 12)
    b2, b4, b6 = E.b2, E.b4, E.b6
    A = half * b4 - b2 * b2 * Fraction(1, 48)
    B = Fraction(1, 4) * b6 - b2 * b4 * Fraction(1, 24) + b2 ** 3 * Fraction(1, 864)
    S = WeierstrassCurve(0, 0, 0, A, B)

    def fwd(P: ECPoint) -> ECPoint:
        if P.infinity:
            return S.O()
        x1 = P.x + b2 * twelfth
        y1 = P.y + half * (E.a1 * P.x + E.a3)
        return S.point(x1, y1)

    def bwd(P: ECPoint) -> ECPoint:
        if P.infinity:
            return E.O()
        x0 = P.x - b2 * twelfth
        y0 = P.y - half * (E.a1 * x0 + E.a3)
        return E.point(x0, y0)

    return S, fwd, bwd


def isomorphism_over_field(E1: WeierstrassCurve, E2: WeierstrassCurve,
                           sqrt_in_field: Callable):
    """Explicit isomorphism E1 -> E2 over the field, or None.

    sqrt_in_field(c) must return a square root of the field element c or None.
    Returns (fwd, bwd) point maps when the curves are isomorphic.
    """
    S1, f1, g1 = to_short_form(E1)
    S2, f2, g2 = to_short_form(E2)
    A1, B1, A2, B2 = S1.a4, S1.a6, S2.a4, S2.a6
    # find u with A2 = u^4 A1, B2 = u^6 B1
    if bool(A1) != bool(A2) or bool(B1) != bool(B2):
        return None
    if B1 and A1:
        u2 = (B1 * A2) / (B2 * A1)
    elif A1:
        u2c = A1 / A2
        u2 = sqrt_in_field(u2c)
        if u2 is None:
            return None
    else:
        # j = 0: u^6 = B1/B2; try u^2 as a cube root candidate via rationals
        ratio = B1 / B2
        u2 = None
        for cand in _cube_root_candidates(ratio):
            u2 = cand
            break
        if u2 is None:
            return None
    if A2 * u2 * u2 != A1 or (B1 and B2 * u2 ** 3 != B1):
        return None
    u = sqrt_in_field(u2)
    if u is None:
        return None
    # S1 -> S2: (x, y) -> (x/u^2, y/u^3)
    iu2 = 1 / u2
    iu3 = iu2 / u

    def fwd(P: ECPoint) -> ECPoint:
        if P.infinity:
            return E2.O()
        Q = f1(P)
        return g2(S2.point(Q.x * iu2, Q.y * iu3))

    def bwd(P: ECPoint) -> ECPoint:
        if P.infinity:
            return E1.O()
        Q = f2(P)
        return g1(S1.point(Q.x * u2, Q.y * u2 * u))

    return fwd, bwd


def _cube_root_candidates(r):
    if isinstance(r, Fraction) or isinstance(r, int):
        r = Fraction(r)
        n, d = r.numerator, r.denominator
        rn = round(abs(n) ** (1 / 3)) if n else 0
        rd = round(d ** (1 / 3))
        for cn in (rn - 1, rn, rn + 1):
            for cd in (rd - 1, rd, rd + 1):
                if cd and cn ** 3 == abs(n) and cd ** 3 == d:
                    yield Fraction(cn if n >= 0 else -cn, cd)
    return


def quadratic_twist(E: WeierstrassCurve, d) -> WeierstrassCurve:
    """Twist of the short form of E by d."""
    S, _, _ = to_short_form(E)
    return WeierstrassCurve(0, 0, 0, S.a4 * d * d, S.a6 * d ** 3)


# ---------------------------------------------------------------------------
# torsion over Q
# ---------------------------------------------------------------------------

def count_points_mod_p(E: WeierstrassCurve, p: int) -> int:
    """#E(F_p) for odd p of good reduction; short integral model expected."""
    a2 = int(E.a2) % p
    a4 = int(E.a4) % p
    a6 = int(E.a6) % p
    n = p + 1
    for x in range(p):
        v = ((x + a2) * x + a4) * x + a6
        n += legendre(v, p)
    return n


def _divisors(n: int) -> list[int]:
    n = abs(n)
    out = [1]
    for p, e in __import__("squareruns.exactmath", fromlist=["factorize"]).factorize(n).items():
        out = [d * p ** k for d in out for k in range(e + 1)]
    return sorted(set(out))


def torsion_over_Q(E: WeierstrassCurve) -> tuple[tuple[int, ...], list[ECPoint]]:
    """Full torsion subgroup of an integral model with a1 = a3 = 0 over Q.

    Returns (invariants, points): invariants () for trivial, (n,) for Z/n,
    (2, n) for Z/2 x Z/n.
    """
    if E.a1 != 0 or E.a3 != 0:
        raise ValueError("torsion_over_Q expects a1 = a3 = 0")
    for c in (E.a2, E.a4, E.a6):
        if Fraction(c).denominator != 1:
            raise ValueError("torsion_over_Q expects integral coefficients")
    disc = int(E.disc)
    if disc == 0:
        raise ValueError("singular curve")
    # bound the order via #E(F_p) at good odd primes
    bound = 0
    good = 0
    p = 3
    while good < 4:
        if disc % p != 0:
            bound = math.gcd(bound, count_points_mod_p(E, p))
            good += 1
        p += 2
        while any(p % q == 0 for q in (3, 5, 7, 11, 13) if q < p):
            p += 2
    # candidate points: y = 0 (cubic roots) and y^2 | disc
    found = {E.O()}
    ys = {0}
    for y in _divisors(disc):
        if disc % (y * y) == 0:
            ys.add(y)
    for y in ys:
        c0 = int(E.a6) - y * y
        if c0 == 0:
            xs = {0}
            # x(x^2 + a2 x + a4) = 0 beyond x = 0
            a2i, a4i = int(E.a2), int(E.a4)
            d = a2i * a2i - 4 * a4i
            r = math.isqrt(abs(d)) if d >= 0 else None
            if d >= 0 and r * r == d:
                for sgn in (1, -1):
                    num = -a2i + sgn * r
                    if num % 2 == 0:
                        xs.add(num // 2)
        else:
            xs = set()
            for dx in _divisors(c0):
                for x in (dx, -dx):
                    if int(E.rhs(x)) == y * y:
                        xs.add(x)
        for x in xs:
            if E.rhs(x) == y * y:
                for yy in {y, -y}:
                    P = ECPoint(E, Fraction(x), Fraction(yy), False)
                    if P.order(bound=min(bound, 16) if bound else 16) is not None:
                        found.add(P)
    # close under the group law
    changed = True
    pts = set(found)
    while changed:
        changed = False
        for P in list(pts):
            for Q in list(pts):
                R = P + Q
                if R not in pts:
                    if R.infinity or (Fraction(R.x).denominator == 1
                                      and R.order(16) is not None):
                        pts.add(R)
                        changed = True
    order = len(pts)
    if bound and order > bound:
        raise AssertionError("torsion exceeds reduction bound")
    exponent = 1
    for P in pts:
        exponent = math.lcm(exponent, P.order(16) or 1)
    if order == 1:
        return (), sorted(pts, key=_point_key)
    if exponent == order:
        return (order,), sorted(pts, key=_point_key)
    assert order == 2 * exponent, "unexpected torsion shape"
    return (2, exponent), sorted(pts, key=_point_key)


def _point_key(P: ECPoint):
    if P.infinity:
        return (0, 0, 0)
    return (1, Fraction(P.x), Fraction(P.y))


def naive_point_search(E: WeierstrassCurve, num_bound: int = 10 ** 4,
                       den_bound: int = 10, limit: int = 12) -> list[ECPoint]:
    """Rational points with x = m/e^2, |m| <= num_bound, e <= den_bound.

    Returns nontrivial points (y != 0) sorted by height, at most `limit`.
    """
    out = []
    for e in range(1, den_bound + 1):
        e2 = e * e
        for m in range(-num_bound, num_bound + 1):
            x = Fraction(m, e2)
            if x.denominator != e2:  # not in lowest terms; seen already
                continue
            v = E.rhs(x)
            if v <= 0:
                continue
            y = is_square_in_Q(v)
            if y is not None and y != 0:
                out.append(E.point(x, y))
                if len(out) >= limit * 8:
                    break
        if len(out) >= limit * 8:
            break
    out.sort(key=lambda P: (max(abs(Fraction(P.x).numerator), Fraction(P.x).denominator)))
    return out[:limit]


# ---------------------------------------------------------------------------
# 2-isogenies in standard form
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TwoIsogeny:
    """Standard 2-isogeny with kernel {O, (0,0)} on y^2 = x(x^2 + a x + b)."""

    domain: WeierstrassCurve
    codomain: WeierstrassCurve
    a: object
    b: object

    def apply(self, P: ECPoint) -> ECPoint:
        if P.infinity or (P.x == 0 and P.y == 0):
            return self.codomain.O()
        x, y = P.x, P.y
        X = (y / x) ** 2
        Y = y * (x * x - self.b) / (x * x)
        return self.codomain.point(X, Y)


def two_isogeny(a, b) -> TwoIsogeny:
    """The 2-isogeny from y^2 = x(x^2 + a x + b) with kernel (0,0).

    Codomain is y^2 = x(x^2 - 2a x + (a^2 - 4b)).
    """
    if not b or not (a * a - 4 * b):
        raise ValueError("singular curve data")
    dom = short_curve(a, b)
    cod = short_curve(-2 * a, a * a - 4 * b)
    return TwoIsogeny(dom, cod, a, b)


def isogeny_apply(phi: TwoIsogeny, P: ECPoint) -> ECPoint:
    return phi.apply(P)


# ---------------------------------------------------------------------------
# formal group expansions at the origin
# ---------------------------------------------------------------------------

def formal_w(E: WeierstrassCurve, prec: int) -> Series:
    """w(z) = z^3(1 + ...) solving the curve equation in the (z, w) chart."""
    z = Series.zvar(prec)
    w = z ** 3
    for _ in range(prec + 1):
        w = (z ** 3 + E.a1 * z * w + E.a2 * z * z * w
             + E.a3 * w * w + E.a4 * z * w * w + E.a6 * w ** 3).truncate(prec)
    return w


def formal_xy(E: WeierstrassCurve, prec: int) -> tuple[Series, Series]:
    """Laurent expansions x(z) = z^-2 + ..., y(z) = -z^-3 + ... at the origin."""
    w = formal_w(E, prec + 4)
    x = Series.zvar(prec + 4) * w.inverse()
    y = -1 * w.inverse()
    return x.truncate(prec), y.truncate(prec)


def formal_log_exp(E: WeierstrassCurve, prec: int) -> tuple[Series, Series]:
    """Formal logarithm and exponential series (characteristic-zero coefficients)."""
    x, y = formal_xy(E, prec + 4)
    omega = x.deriv() / (2 * y + E.a1 * x + E.a3)
    log = omega.truncate(prec - 1).integrate().truncate(prec)
    exp = series_reverse(log)
    return log, exp


def z_coordinate(P: ECPoint):
    """Local parameter z = -x/y at the origin; 0 at O, error where y = 0."""
    if P.infinity:
        return 0 * P.curve.a2 if not isinstance(P.curve.a2, int) else 0
    if not P.y:
        raise ValueError("z-coordinate undefined where y = 0")
    return -P.x / P.y


# ---------------------------------------------------------------------------
# rational functions on a curve:  (P(x) + Q(x) y) / R(x)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CurveFunction:
    curve: WeierstrassCurve
    p: Poly  # coefficient of 1
    q: Poly  # coefficient of y
    r: Poly  # denominator (in x only)

    @staticmethod
    def coord_x(E): return CurveFunction(E, Poly([0, 1]), Poly(), Poly([1]))

    @staticmethod
    def coord_y(E): return CurveFunction(E, Poly(), Poly([1]), Poly([1]))

    @staticmethod
    def const(E, c): return CurveFunction(E, Poly([c]), Poly(), Poly([1]))

    def _cubic(self) -> Poly:
        E = self.curve
        return Poly([E.a6, E.a4, E.a2, 1])

    def __add__(self, other):
        o = other if isinstance(other, CurveFunction) else CurveFunction.const(self.curve, other)
        return CurveFunction(self.curve, self.p * o.r + o.p * self.r,
                             self.q * o.r + o.q * self.r, self.r * o.r)

    __radd__ = __add__

    def __neg__(self):
        return CurveFunction(self.curve, -self.p, -self.q, self.r)

    def __sub__(self, other):
        o = other if isinstance(other, CurveFunction) else CurveFunction.const(self.curve, other)
        return self + (-o)

    def __mul__(self, other):
        if not isinstance(other, CurveFunction):
            return CurveFunction(self.curve, self.p * other, self.q * other, self.r)
        E = self.curve
        # (p1 + q1 y)(p2 + q2 y) with y^2 = C(x) - (a1 x + a3) y
        C = self._cubic()
        lin = Poly([E.a3, E.a1])
        p = self.p * other.p + self.q * other.q * C
        q = self.p * other.q + self.q * other.p - self.q * other.q * lin
        return CurveFunction(E, p, q, self.r * other.r)

    __rmul__ = __mul__

    def norm_den(self) -> tuple[Poly, Poly, Poly]:
        """Rewrite with y-free denominator: multiply num and den by conjugate."""
        return self.p, self.q, self.r

    def inverse(self) -> "CurveFunction":
        E = self.curve
        lin = Poly([E.a3, E.a1])
        C = self._cubic()
        # conjugate of (p + q y) is (p - q(y + a1 x + a3)) = (p - q*lin) - q y
        conj_p = self.p - self.q * lin
        conj_q = -self.q
        nrm = self.p * conj_p + self.q * conj_q * C \
            + (self.p * conj_q + self.q * conj_p - self.q * conj_q * lin) * Poly()
        # norm polynomial: (p + qy)(conj) has zero y-part by construction
        ypart = self.p * conj_q + self.q * conj_p - self.q * conj_q * lin
        assert not ypart, "norm must be y-free"
        return CurveFunction(E, self.r * conj_p, self.r * conj_q, nrm)

    def __truediv__(self, other):
        o = other if isinstance(other, CurveFunction) else CurveFunction.const(self.curve, other)
        return self * o.inverse()

    def is_zero_function(self) -> bool:
        """Exact test of vanishing on the curve."""
        return (not self.p) and (not self.q)

    def __eq__(self, other):
        if not isinstance(other, CurveFunction):
            return NotImplemented
        return (self - other).is_zero_function()

    def eval(self, P: ECPoint):
        num = self.p(P.x) + self.q(P.x) * P.y
        den = self.r(P.x)
        if not den:
            if num:
                raise ZeroDivisionError("pole of curve function")
            return self.eval_local(P)
        return num / den

    def eval_local(self, P: ECPoint, prec: int = 12):
        """Value at P via a local-parameter expansion (handles 0/0 forms)."""
        E = self.curve
        while prec <= 96:
            sx, sy = _local_branch(E, P, prec)
            num = _poly_on_series(self.p, sx) + _poly_on_series(self.q, sx) * sy
            den = _poly_on_series(self.r, sx)
            if den.val >= den.prec or num.val >= num.prec:
                prec *= 2
                continue
            val = num / den
            if val.prec <= max(val.val, 0):
                prec *= 2
                continue
            if val.val > 0:
                return 0 * P.x
            if val.val == 0:
                return val.coeff(0)
            raise ZeroDivisionError("pole of curve function")
        raise RuntimeError("local evaluation needs more precision than expected")

    def eval_series(self, x_series: Series, y_series: Series) -> Series:
        num = _poly_on_series(self.p, x_series) + _poly_on_series(self.q, x_series) * y_series
        den = _poly_on_series(self.r, x_series)
        return num / den


def _poly_on_series(p: Poly, s: Series) -> Series:
    prec_guess = s.prec if s.val >= 0 else s.prec + (-s.val) * max(1, p.degree)
    out = Series(0, [], prec_guess)
    power = Series.const(1, prec_guess)
    for i, a in enumerate(p.c):
        if i > 0:
            power = power * s
        if a:
            out = out + power * a
    return out


def _local_branch(E: WeierstrassCurve, P: ECPoint, prec: int) -> tuple[Series, Series]:
    """Series (x(s), y(s)) parametrizing the curve near an affine point P."""
    if P.infinity:
        x, y = formal_xy(E, prec)
        return x, y
    fy0 = 2 * P.y + E.a1 * P.x + E.a3
    cubic = Poly([E.a6, E.a4, E.a2, 1])
    if fy0:
        sx = Series(0, [P.x, 1], prec)  # x = x0 + s
        sy = Series.const(P.y, 2)
        n = 1
        while n < prec:
            n = min(2 * n, prec)
            sy = sy.extend(n)
            sxn = sx.truncate(n)
            F = sy * sy + E.a1 * sxn * sy + E.a3 * sy - _poly_on_series(cubic, sxn)
            Fy = 2 * sy + E.a1 * sxn + E.a3
            sy = (sy - F / Fy).truncate(n)
        return sx, sy
    # 2-torsion point: parametrize by s = y - y0
    fx0 = E.a1 * P.y - (3 * P.x * P.x + 2 * E.a2 * P.x + E.a4)
    if not fx0:
        raise ValueError("singular point")
    sy = Series(0, [P.y, 1], prec)
    sx = Series.const(P.x, 2)
    n = 1
    while n < prec:
        n = min(2 * n, prec)
        sx = sx.extend(n)
        syn = sy.truncate(n)
        F = syn * syn + E.a1 * sx * syn + E.a3 * syn - _poly_on_series(cubic, sx)
        Fx = E.a1 * syn - (3 * sx * sx + 2 * E.a2 * sx + E.a4)
        sx = (sx - F / Fx).truncate(n)
    return sx, sy


# ---------------------------------------------------------------------------
# functions on a quartic  w^2 = q(t):  (P(t) + Q(t) w) / R(t)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class QuarticFunction:
    quartic: Poly
    p: Poly
    q: Poly
    r: Poly

    def __add__(self, other):
        o = other if isinstance(other, QuarticFunction) else \
            QuarticFunction(self.quartic, Poly([other]), Poly(), Poly([1]))
        return QuarticFunction(self.quartic, self.p * o.r + o.p * self.r,
                               self.q * o.r + o.q * self.r, self.r * o.r)

    __radd__ = __add__

    def __neg__(self):
        return QuarticFunction(self.quartic, -self.p, -self.q, self.r)

    def __sub__(self, other):
        o = other if isinstance(other, QuarticFunction) else \
            QuarticFunction(self.quartic, Poly([other]), Poly(), Poly([1]))
        return self + (-o)

    def __mul__(self, other):
        if not isinstance(other, QuarticFunction):
            return QuarticFunction(self.quartic, self.p * other, self.q * other, self.r)
        p = self.p * other.p + self.q * other.q * self.quartic
        q = self.p * other.q + self.q * other.p
        return QuarticFunction(self.quartic, p, q, self.r * other.r)

    __rmul__ = __mul__

    def is_zero_function(self) -> bool:
        return (not self.p) and (not self.q)

    def __eq__(self, other):
        if not isinstance(other, QuarticFunction):
            return NotImplemented
        return (self - other).is_zero_function()


# ---------------------------------------------------------------------------
# quartic models y^2 = q(t) and the Weierstrass correspondence
# ---------------------------------------------------------------------------

class QuarticPointAtInfinity:
    """Marker for t = infinity on w^2 = quartic(t); branch is +1 or -1."""

    __slots__ = ("branch",)

    def __init__(self, branch: int):
        self.branch = branch

    def __repr__(self):
        return f"(t=oo, branch {self.branch:+d})"


@dataclass
class QuarticJacobianMap:
    """Exact correspondence between w^2 = quartic(t) and a Weierstrass model.

    mu sends the marked point to O; nu = mu^{-1}; pi = t-coordinate of nu,
    a ratio of two linear forms in (x, y).
    """

    quartic: Poly
    t0: object
    w0: object
    jacobian: WeierstrassCurve
    mu_x: QuarticFunction
    mu_y: QuarticFunction
    nu_num: tuple          # (n0, n1, n2): numerator n0 + n1 x + n2 y of t
    nu_den: tuple          # (m0, m1, m2)
    nu_w: CurveFunction    # w as a function on the jacobian
    sqrt_fn: Callable

    # -- evaluation ----------------------------------------------------------
    def mu(self, t, w) -> ECPoint:
        """Image of a quartic point; accepts QuarticPointAtInfinity."""
        J = self.jacobian
        if isinstance(t, QuarticPointAtInfinity):
            return self._mu_infinity(t.branch)
        if self.quartic(t) != w * w:
            raise ValueError("not a quartic point")
        tau = t - self.t0
        if not tau:
            if w == self.w0:
                return J.O()
            # conjugate of the marked point: finite limit along the branch
            return self._mu_conjugate()
        x = (self.mu_x.p(t) + self.mu_x.q(t) * w) / self.mu_x.r(t)
        y = (self.mu_y.p(t) + self.mu_y.q(t) * w) / self.mu_y.r(t)
        return J.point(x, y)

    def _branch_series(self, prec: int = 10) -> tuple[Series, Series]:
        """(w_plus(tau), w_minus(tau)) as series at the marked point."""
        qshift = self.quartic.compose_linear(self.t0)
        h = poly_to_series(qshift, prec) * (1 / (self.w0 * self.w0))
        wp = self.w0 * h.sqrt_unit()
        return wp, -1 * wp

    def _mu_conjugate(self) -> ECPoint:
        wp, wm = self._branch_series()
        tau = Series.zvar(wm.prec)
        xs = (_poly_on_series(self.mu_x.p, tau) + self.mu_x.q[0] * wm)
        ys = (_poly_on_series(self.mu_y.p, tau) + _poly_on_series(self.mu_y.q, tau) * wm)
        x = xs.coeff(2)
        y = ys.coeff(3)
        return self.jacobian.point(x, y)

    def _mu_infinity(self, branch: int) -> ECPoint:
        lc = self.quartic[4]
        s = self.sqrt_fn(lc)
        if s is None:
            raise ValueError("points at infinity are not rational (leading coeff not square)")
        s = s * branch
        # x = (A(tau) + B w)/tau^2, numerator t^2-coefficient over tau^2's
        a2c = self.mu_x.p[2]
        c3c = self.mu_y.p[3]
        d1c = self.mu_y.q[1]
        x = a2c + self.mu_x.q[0] * s
        y = c3c + d1c * s
        return self.jacobian.point(x, y)

    def nu(self, P: ECPoint):
        """(t, w) for a point of the jacobian; t may be infinity marker."""
        n0, n1, n2 = self.nu_num
        m0, m1, m2 = self.nu_den
        if P.infinity:
            return (self.t0, self.w0)
        num = n0 + n1 * P.x + n2 * P.y
        den = m0 + m1 * P.x + m2 * P.y
        if not den:
            if not num:
                raise ZeroDivisionError("nu indeterminate; resolve via series")
            branch = self._infinity_branch_of(P)
            return (QuarticPointAtInfinity(branch), None)
        t = num / den
        w = self.nu_w.eval(P)
        return (t, w)

    def _infinity_branch_of(self, P: ECPoint) -> int:
        for b in (1, -1):
            try:
                if self._mu_infinity(b) == P:
                    return b
            except ValueError:
                break
        raise ValueError("cannot identify infinity branch")

    def pi(self, P: ECPoint):
        """t-coordinate of nu as element of P^1 (None encodes infinity)."""
        n0, n1, n2 = self.nu_num
        m0, m1, m2 = self.nu_den
        if P.infinity:
            return self.t0
        num = n0 + n1 * P.x + n2 * P.y
        den = m0 + m1 * P.x + m2 * P.y
        if not den:
            return None
        return num / den


def quartic_to_weierstrass(quartic: Poly, t0, w0, sqrt_fn=None,
                           prec: int = 24) -> QuarticJacobianMap:
    """Classical marked-point reduction of w^2 = quartic(t) to Weierstrass form.

    The marked point (t0, w0) with w0 != 0 is sent to the origin.  All maps
    are produced as exact rational functions and verified symbolically.
    """
    if sqrt_fn is None:
        sqrt_fn = _default_sqrt_for(quartic.c[0])
    if quartic.degree != 4:
        raise ValueError("need a degree-4 model")
    if quartic(t0) != w0 * w0 or not w0:
        raise ValueError("marked point must lie on the model with w0 != 0")

    # --- x = (a0 + a1 tau + B w)/tau^2 vanishing doubly at the conjugate ----
    qs = quartic.compose_linear(t0)  # q(t0 + tau)
    wprec = prec
    h = poly_to_series(qs, wprec) * (1 / (w0 * w0))
    wplus = w0 * h.sqrt_unit()           # branch through (t0, +w0)
    wminus = -1 * wplus
    # conditions: a0 - B w0 = 0 (tau^0 on minus branch), a1 + B wm1 = 0,
    # a0 + B w0 = 1 (normalization on plus branch)
    wm1 = wminus.coeff(1)
    B = 1 / (2 * w0)
    a0 = B * w0
    a1 = -B * wm1
    A = Poly([a0, a1])

    # --- y = (C(tau) + D(tau) w)/tau^3 ---------------------------------------
    # unknowns (c0, c1, c2, d0) by default; add c3/d1 if the system degenerates
    def build_y(unknowns: Sequence[str]):
        cols = []
        # rows: minus-branch tau^0..tau^2 coefficients = 0; plus-branch value = -1
        for u in unknowns:
            if u.startswith("c"):
                k = int(u[1])
                col = [1 if i == k else 0 for i in range(3)]
                colp = 1 if k == 0 else 0
            else:
                k = int(u[1])
                col = [wminus.coeff(i - k) if i - k >= 0 else 0 for i in range(3)]
                colp = wplus.coeff(0) if k == 0 else 0
            cols.append([Fraction(0) + c for c in col] + [Fraction(0) + colp])
        rows = [[cols[j][i] for j in range(len(unknowns))] for i in range(4)]
        rhs = [0, 0, 0, -1]
        return solve_linear(rows, rhs)

    sol = None
    scheme = ("c0", "c1", "c2", "d0")
    for attempt in (("c0", "c1", "c2", "d0"), ("c0", "c1", "c2", "d1"),
                    ("c0", "c1", "d0", "d1"), ("c0", "c2", "d0", "d1")):
        sol = build_y(attempt)
        if sol is not None:
            scheme = attempt
            break
    if sol is None:
        raise RuntimeError("could not construct the degree-3 coordinate")
    cc = [0, 0, 0, 0]
    dd = [0, 0]
    for name, v in zip(scheme, sol):
        if name.startswith("c"):
            cc[int(name[1])] = v
        else:
            dd[int(name[1])] = v
    C, Dp = Poly(cc), Poly(dd)

    # --- Weierstrass coefficients by matching Laurent tails -----------------
    tau = Series.zvar(wprec)
    xs = (poly_to_series(A, wprec) + B * wplus) * (tau ** 2).inverse()
    ys = (poly_to_series(C, wprec) + poly_to_series(Dp, wprec) * wplus) * (tau ** 3).inverse()
    # y^2 + A1 xy + A3 y = x^3 + A2 x^2 + A4 x + A6
    lhs_const = ys * ys - xs ** 3
    cols = [xs * ys, ys, -1 * xs * xs, -1 * xs, Series.const(-1, wprec)]
    rows = []
    rhs = []
    for k in range(-5, 1):
        rows.append([col.coeff(k) if k >= col.val else 0 for col in cols])
        rhs.append(-(lhs_const.coeff(k) if k >= lhs_const.val else 0))
    coeffs = solve_linear(rows, rhs)
    if coeffs is None:
        raise RuntimeError("Weierstrass relation not found")
    A1, A3, A2, A4, A6 = coeffs[0], coeffs[1], coeffs[2], coeffs[3], coeffs[4]
    J = WeierstrassCurve(A1, A2, A3, A4, A6)
    if not J.disc:
        raise ValueError("singular quartic model")

    # exact verification of the relation
    tau_poly = Poly([-t0, 1])
    mu_x = QuarticFunction(quartic, _shift_to_t(A, t0), Poly([B]), tau_poly ** 2)
    mu_y = QuarticFunction(quartic, _shift_to_t(C, t0), _shift_to_t(Dp, t0), tau_poly ** 3)
    fx, fy = mu_x, mu_y
    one = QuarticFunction(quartic, Poly([1]), Poly(), Poly([1]))
    rel = (fy * fy + A1 * (fx * fy) + A3 * fy
           - fx * fx * fx - A2 * (fx * fx) - A4 * fx - A6 * one)
    if not rel.is_zero_function():
        raise AssertionError("Weierstrass relation fails exactly")

    # --- nu: t and w as functions on J ---------------------------------------
    z_of_tau = (-1 * xs / ys)  # z along the marked branch, z = tau(1 + ...)
    tau_of_z = series_reverse(z_of_tau.truncate(wprec - 4))
    xJ, yJ = formal_xy(J, wprec - 6)
    t_z = tau_of_z + Series.const(t0, tau_of_z.prec)  # t as series in z
    rows = []
    basis = [Series.const(1, xJ.prec), xJ, yJ]
    hi = min([xJ.prec - 3, t_z.prec - 3])
    for k in range(-3, hi):
        row = []
        for bfun in basis:  # numerator -(n0 + n1 x + n2 y)
            row.append(-bfun.coeff(k) if k >= bfun.val else 0)
        for bfun in basis:  # denominator t*(m0 + m1 x + m2 y)
            prod = t_z * bfun
            row.append(prod.coeff(k) if k >= prod.val else 0)
        rows.append(row)
    kern = nullspace(rows)
    if len(kern) != 1:
        raise RuntimeError(f"t-map kernel dimension {len(kern)} (expected 1)")
    n0, n1, n2, m0, m1, m2 = kern[0]

    # exact check: t * (m0 + m1 x + m2 y) - (n0 + n1 x + n2 y) == 0 on the quartic
    tfun = QuarticFunction(quartic, Poly([0, 1]), Poly(), Poly([1]))
    Mf = m0 * one + m1 * fx + m2 * fy
    Nf = n0 * one + n1 * fx + n2 * fy
    if not (tfun * Mf - Nf).is_zero_function():
        raise AssertionError("t-map identity fails")

    # --- w as function on J ---------------------------------------------------
    wz = wplus.compose(tau_of_z)  # w along the branch, as series in z
    Mser = Series.const(m0, xJ.prec) + m1 * xJ + m2 * yJ
    target = wz * Mser * Mser
    fbasis = [Series.const(1, xJ.prec), xJ, yJ, xJ * xJ, xJ * yJ, xJ ** 3]
    rows = []
    rhs2 = []
    hi2 = min([target.prec] + [bf.prec for bf in fbasis]) - 1
    for k in range(-6, hi2):
        rows.append([bf.coeff(k) if k >= bf.val else 0 for bf in fbasis])
        rhs2.append(target.coeff(k) if k >= target.val else 0)
    esol = solve_linear(rows, rhs2)
    if esol is None:
        raise RuntimeError("w-map not found")
    xfun = CurveFunction.coord_x(J)
    yfun = CurveFunction.coord_y(J)
    cone = CurveFunction.const(J, 1)
    Fnum = (esol[0] * cone + esol[1] * xfun + esol[2] * yfun
            + esol[3] * xfun * xfun + esol[4] * xfun * yfun + esol[5] * xfun * xfun * xfun)
    Mden = (m0 * cone + m1 * xfun + m2 * yfun)
    nu_w = Fnum / (Mden * Mden)
    # exact check: w(mu(t,w)) = w, i.e. Fnum(mu) - w * Mden(mu)^2 == 0
    Fq = (esol[0] * one + esol[1] * fx + esol[2] * fy
          + esol[3] * fx * fx + esol[4] * fx * fy + esol[5] * fx * fx * fx)
    wfun = QuarticFunction(quartic, Poly(), Poly([1]), Poly([1]))
    if not (Fq - wfun * Mf * Mf).is_zero_function():
        raise AssertionError("w-map identity fails")

    return QuarticJacobianMap(quartic, t0, w0, J, mu_x, mu_y,
                              (n0, n1, n2), (m0, m1, m2), nu_w, sqrt_fn)


def _shift_to_t(p_in_tau: Poly, t0) -> Poly:
    """Rewrite a polynomial in tau = t - t0 as a polynomial in t."""
    return p_in_tau.compose_linear(-t0)


def _default_sqrt_for(sample):
    if isinstance(sample, QF6Elem):
        return is_square_in_QF6
    return is_square_in_Q


# ---------------------------------------------------------------------------
# diagonal quadric pairs -> quartic models
# ---------------------------------------------------------------------------

@dataclass
class QuadricPairModel:
    """Intersection of A x0^2 + B x1^2 + C u^2 = 0 (conic vars (x0, x1, u))
    and D x0^2 + E x1^2 + F v^2 = 0, eliminated to  w^2 = quartic(t).

    rows(t) parametrizes (x0, x1, u) by the chosen t-line; w = F * v.
    """

    quartic: Poly
    rows: tuple[Poly, Poly, Poly]
    coeffs2: tuple  # (D, E, F)

    def point_from_t(self, t, w):
        x0, x1, u = (r(t) for r in self.rows)
        v = w / self.coeffs2[2]
        return (x0, x1, u, v)

    def t_of_point(self, x0, x1, u) -> object:
        """Parameter value of a conic point; None means t = infinity."""
        r0, r1, r2 = self.rows
        best = None
        for (ra, rb, va, vb) in ((r0, r1, x0, x1), (r0, r2, x0, u), (r1, r2, x1, u)):
            pol = ra * vb - rb * va
            if pol.degree >= 1:
                best = pol
                break
        if best is None:
            raise ValueError("degenerate point")
        roots = _rational_roots(best)
        for t in roots:
            vals = [r(t) for r in self.rows]
            if _proportional(vals, [x0, x1, u]):
                return t
        # otherwise the point corresponds to t = infinity
        lead = [r[2] for r in self.rows]
        if _proportional(lead, [x0, x1, u]):
            return None
        raise ValueError("point not on the parametrized conic")


def _proportional(a: Sequence, b: Sequence) -> bool:
    n = len(a)
    for i in range(n):
        for j in range(n):
            if a[i] * b[j] != a[j] * b[i]:
                return False
    return True


def _rational_roots(p: Poly) -> list:
    """Roots of a low-degree polynomial over its exact field (deg <= 2)."""
    if p.degree <= 0:
        return []
    if p.degree == 1:
        return [-p[0] / p[1]]
    if p.degree == 2:
        a, b, c = p[2], p[1], p[0]
        disc = b * b - 4 * a * c
        if isinstance(disc, QF6Elem) or isinstance(a, QF6Elem):
            s = is_square_in_QF6(QF6Elem.of(disc))
        else:
            s = is_square_in_Q(disc)
            s = s if s is None else Fraction(s)
        if s is None:
            return []
        return [(-b + s) / (2 * a), (-b - s) / (2 * a)]
    raise ValueError("degree too high for exact root finding here")


def parametrize_conic(coeffs: tuple, base_point: tuple,
                      line_num: tuple, line_den: tuple) -> tuple[Poly, Poly, Poly]:
    """Parametrize A x^2 + B y^2 + C z^2 = 0 by t = line_num(x)/line_den(x).

    base_point must be the common zero of the two lines on the conic.  The
    returned rows are degree-<=2 polynomials in t spanning the point (x:y:z).
    """
    A, B, C = coeffs
    b = base_point
    assert A * b[0] ** 2 + B * b[1] ** 2 + C * b[2] ** 2 == 0, "base not on conic"
    assert sum(l * x for l, x in zip(line_num, b)) == 0, "line_num misses base"
    assert sum(l * x for l, x in zip(line_den, b)) == 0, "line_den misses base"

    # line family N(t) = line_num - t*line_den; direction d(t) = N(t) x b
    Npolys = [Poly([ln, -ld]) for ln, ld in zip(line_num, line_den)]
    d = [Npolys[1] * b[2] - Npolys[2] * b[1],
         Npolys[2] * b[0] - Npolys[0] * b[2],
         Npolys[0] * b[1] - Npolys[1] * b[0]]
    qd = A * d[0] * d[0] + B * d[1] * d[1] + C * d[2] * d[2]
    bd = A * b[0] * d[0] + B * b[1] * d[1] + C * b[2] * d[2]
    rows = tuple(qd * bi - 2 * bd * di for bi, di in zip(b, d))
    # sanity: rows satisfy the conic and realize parameter t
    return rows  # type: ignore


def quadric_pair_to_quartic(coeffs1: tuple, coeffs2: tuple, base_point: tuple,
                            line_num: tuple, line_den: tuple) -> QuadricPairModel:
    """Eliminate the diagonal pair to w^2 = quartic(t).

    coeffs1 = (A, B, C): A x0^2 + B x1^2 + C u^2 = 0 (the conic, vars x0, x1, u)
    coeffs2 = (D, E, F): D x0^2 + E x1^2 + F v^2 = 0
    base_point, line_num, line_den define the t-coordinate on the conic.
    """
    rows = parametrize_conic(coeffs1, base_point, line_num, line_den)
    D_, E_, F_ = coeffs2
    quartic = -1 * F_ * (D_ * rows[0] * rows[0] + E_ * rows[1] * rows[1])
    # w := F * v, so w^2 = -F(D x0^2 + E x1^2) on the parametrized family
    model = QuadricPairModel(quartic, rows, coeffs2)
    # consistency: conic identity holds
    A, B, C = coeffs1
    chk = A * rows[0] * rows[0] + B * rows[1] * rows[1] + C * rows[2] * rows[2]
    assert not chk, "parametrization must satisfy the conic"
    return model
