"""Small exact-arithmetic toolkit: dense univariate polynomials, truncated
power/Laurent series, and Gaussian elimination, all over duck-typed exact
fields (Fraction, QF6Elem, or residue rings where division is restricted).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Optional, Sequence


# ---------------------------------------------------------------------------
# polynomials (dense, little-endian coefficient lists)
# ---------------------------------------------------------------------------

class Poly:
    __slots__ = ("c",)

    def __init__(self, coeffs: Sequence = ()):
        c = list(coeffs)
        while c and not c[-1]:
            c.pop()
        self.c = c

    # -- basics ---------------------------------------------------------------
    @property
    def degree(self) -> int:
        return len(self.c) - 1  # -1 for the zero polynomial

    def __bool__(self):
        return bool(self.c)

    def __eq__(self, other):
        if isinstance(other, Poly):
            if len(self.c) != len(other.c):
                return False
            return all(a == b for a, b in zip(self.c, other.c))
        return NotImplemented

    def __getitem__(self, i: int):
        return self.c[i] if 0 <= i < len(self.c) else 0

    def __repr__(self):
        return "Poly(" + ", ".join(map(str, self.c)) + ")"

    # -- arithmetic -------------------------------------------------------------
    def __add__(self, other):
        o = other if isinstance(other, Poly) else Poly([other])
        n = max(len(self.c), len(o.c))
        return Poly([self[i] + o[i] for i in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return Poly([-a for a in self.c])

    def __sub__(self, other):
        o = other if isinstance(other, Poly) else Poly([other])
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Poly):
            return Poly([a * other for a in self.c])
        if not self.c or not other.c:
            return Poly()
        out = [0] * (len(self.c) + len(other.c) - 1)
        for i, a in enumerate(self.c):
            if not a:
                continue
            for j, b in enumerate(other.c):
                out[i + j] = out[i + j] + a * b
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = Poly([1])
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def shift(self, k: int) -> "Poly":
        """Multiply by x^k (k >= 0)."""
        if not self.c:
            return Poly()
        return Poly([0] * k + self.c)

    def __call__(self, x):
        out = 0
        for a in reversed(self.c):
            out = out * x + a
        return out

    def deriv(self) -> "Poly":
        return Poly([i * a for i, a in enumerate(self.c)][1:])

    def compose_linear(self, t0) -> "Poly":
        """p(x + t0) via Horner."""
        out = Poly()
        for a in reversed(self.c):
            out = out * Poly([t0, 1]) + Poly([a])
        return out

    def reversed_coeffs(self, n: int) -> "Poly":
        """x^n * p(1/x); n must be >= degree."""
        if n < self.degree:
            raise ValueError("n below degree")
        return Poly([self[n - i] for i in range(n + 1)])

    def divmod(self, other: "Poly") -> tuple["Poly", "Poly"]:
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.c)
        q = [0] * max(0, len(r) - len(other.c) + 1)
        inv_lead = 1 / other.c[-1] if not isinstance(other.c[-1], int) else Fraction(1, other.c[-1])
        while len(r) >= len(other.c) and any(bool(a) for a in r):
            while r and not r[-1]:
                r.pop()
            if len(r) < len(other.c):
                break
            k = len(r) - len(other.c)
            coef = r[-1] * inv_lead
            q[k] = coef
            for i, b in enumerate(other.c):
                r[k + i] = r[k + i] - coef * b
        return Poly(q), Poly(r)

    def __mod__(self, other: "Poly") -> "Poly":
        return self.divmod(other)[1]

    def __floordiv__(self, other: "Poly") -> "Poly":
        return self.divmod(other)[0]

    def exact_div(self, other: "Poly") -> "Poly":
        q, r = self.divmod(other)
        if r:
            raise ValueError("division not exact")
        return q

    def map_coeffs(self, f: Callable) -> "Poly":
        return Poly([f(a) for a in self.c])

    def sqrt_exact(self, is_square: Callable) -> Optional["Poly"]:
        """Exact square root of a polynomial, or None.

        is_square(c) must return a root of the field element c or None.
        """
        if not self:
            return Poly()
        if self.degree % 2:
            return None
        lead = is_square(self.c[-1])
        if lead is None:
            return None
        half = self.degree // 2
        out = [0] * (half + 1)
        out[half] = lead
        # undetermined-coefficient descent from the top
        rem = Poly(self.c)
        for k in range(half - 1, -1, -1):
            # coefficient of x^(half+k) in (sum out)^2 must match self
            acc = 0
            for i in range(k + 1, half + 1):
                j = half + k - i
                if j > half or j <= k:
                    continue
                acc = acc + out[i] * out[j]
            target = self[half + k] - acc
            out[k] = target / (2 * lead)
        cand = Poly(out)
        if cand * cand == self:
            return cand
        return None


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd over a field."""
    while b:
        a, b = b, a % b
    if a:
        a = a * (1 / a.c[-1] if not isinstance(a.c[-1], int) else Fraction(1, a.c[-1]))
    return a


# ---------------------------------------------------------------------------
# truncated Laurent series:  z^val * (c0 + c1 z + ...) known mod z^prec
# ---------------------------------------------------------------------------

class Series:
    """Laurent series with explicit valuation and absolute precision.

    Terms z^k for val <= k < prec are stored; everything at or above prec is
    unknown (O(z^prec)).
    """

    __slots__ = ("val", "c", "prec")

    def __init__(self, val: int, coeffs: Sequence, prec: int):
        c = list(coeffs)
        # normalize: strip leading (low-order) zeros
        while c and not c[0] and val < prec:
            c.pop(0)
            val += 1
        if len(c) > prec - val:
            c = c[: prec - val]
        if not c:
            val = prec
        self.val = val
        self.c = c
        self.prec = prec

    @staticmethod
    def const(x, prec: int) -> "Series":
        return Series(0, [x], prec)

    @staticmethod
    def zvar(prec: int) -> "Series":
        return Series(1, [1], prec)

    def coeff(self, k: int):
        if k >= self.prec:
            raise ValueError(f"coefficient z^{k} beyond precision {self.prec}")
        if k < self.val or k - self.val >= len(self.c):
            return 0
        return self.c[k - self.val]

    def coeffs_range(self, lo: int, hi: int) -> list:
        return [self.coeff(k) for k in range(lo, hi)]

    def truncate(self, prec: int) -> "Series":
        return Series(self.val, self.c[: max(0, prec - self.val)], min(prec, self.prec))

    def extend(self, prec: int) -> "Series":
        """Redeclare precision upward, padding with zeros.

        Only valid when the caller knows the tail (exact polynomial data, or
        a Newton iteration about to correct it).
        """
        if prec <= self.prec:
            return self.truncate(prec)
        return Series(self.val, self.c, prec)

    def __add__(self, other):
        o = other if isinstance(other, Series) else Series.const(other, self.prec)
        prec = min(self.prec, o.prec)
        lo = min(self.val, o.val)
        n = prec - lo
        out = [0] * n
        for s in (self, o):
            for i, a in enumerate(s.c):
                k = s.val + i
                if k < prec:
                    out[k - lo] = out[k - lo] + a
        return Series(lo, out, prec)

    __radd__ = __add__

    def __neg__(self):
        return Series(self.val, [-a for a in self.c], self.prec)

    def __sub__(self, other):
        o = other if isinstance(other, Series) else Series.const(other, self.prec)
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Series):
            return Series(self.val, [a * other for a in self.c], self.prec)
        # O(z^p1)*z^v2 etc: resulting precision
        prec = min(self.prec + other.val, other.prec + self.val)
        val = self.val + other.val
        n = max(0, prec - val)
        out = [0] * n
        for i, a in enumerate(self.c):
            if not a:
                continue
            for j, b in enumerate(other.c):
                k = i + j
                if k < n:
                    out[k] = out[k] + a * b
                else:
                    break
        return Series(val, out, prec)

    __rmul__ = __mul__

    def inverse(self) -> "Series":
        if not self.c or not self.c[0]:
            raise ZeroDivisionError("inverse of series with unknown leading term")
        lead = self.c[0]
        n = self.prec - self.val
        inv0 = 1 / lead if not isinstance(lead, int) else Fraction(1, lead)
        out = [inv0] + [0] * (n - 1)
        for k in range(1, n):
            acc = 0
            for i in range(1, k + 1):
                a = self.c[i] if i < len(self.c) else 0
                acc = acc + a * out[k - i]
            out[k] = -inv0 * acc
        return Series(-self.val, out, self.prec - 2 * self.val)

    def __truediv__(self, other):
        o = other if isinstance(other, Series) else Series.const(other, self.prec)
        return self * o.inverse()

    def __rtruediv__(self, other):
        return Series.const(other, self.prec) * self.inverse()

    def __pow__(self, n: int):
        out = Series.const(1, self.prec + max(0, self.val) * 0)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def compose(self, g: "Series") -> "Series":
        """self(g); requires val(g) >= 1 and val(self) >= 0."""
        if self.val < 0:
            raise ValueError("composition needs a power series")
        if g.val < 1:
            raise ValueError("inner series must vanish at 0")
        prec = min(self.prec * max(g.val, 1), g.prec)
        out = Series(0, [], prec)
        gp = Series.const(1, prec)
        for k in range(self.val + len(self.c)):
            a = self.coeff(k) if k >= self.val else 0
            if k > 0:
                gp = gp * g
            if a:
                out = out + gp * a
            if gp.val >= prec:
                break
        return out

    def deriv(self) -> "Series":
        out = []
        for i, a in enumerate(self.c):
            k = self.val + i
            out.append(k * a)
        return Series(self.val - 1, out, self.prec - 1)

    def integrate(self) -> "Series":
        """Antiderivative with zero constant term (char 0 fields only)."""
        out = []
        for i, a in enumerate(self.c):
            k = self.val + i + 1
            if k == 0:
                raise ValueError("cannot integrate z^-1 term")
            out.append(a * Fraction(1, k))
        return Series(self.val + 1, out, self.prec + 1)

    def sqrt_unit(self) -> "Series":
        """Square root of a series with val 0 whose leading coeff is 1."""
        if self.val != 0 or not self.c or self.c[0] != 1:
            raise ValueError("sqrt_unit needs leading coefficient 1 at z^0")
        # Newton: y <- (y + s/y)/2
        y = Series.const(1, 1)
        prec = 1
        while prec < self.prec:
            prec = min(2 * prec, self.prec)
            s = self.truncate(prec)
            y = Series(y.val, y.c, prec)
            y = (y + s * y.inverse()) * Fraction(1, 2)
        return y.truncate(self.prec)

    def __repr__(self):
        terms = [f"{a}*z^{self.val+i}" for i, a in enumerate(self.c) if a]
        return " + ".join(terms[:8]) + f" + O(z^{self.prec})"


def series_reverse(s: Series) -> Series:
    """Compositional inverse of s = z + c2 z^2 + ... (val 1, leading coeff 1)."""
    if s.val != 1 or not s.c or s.c[0] != 1:
        raise ValueError("reversion needs s = z + O(z^2)")
    prec = s.prec
    inv = Series(1, [1], 2)
    for n in range(2, prec):
        inv = Series(inv.val, inv.c, n + 1)
        # err = s(inv) - z has valuation n; correct the z^n coefficient
        err = s.truncate(n + 1).compose(inv) - Series.zvar(n + 1)
        c = err.coeff(n) if err.val <= n else 0
        coeffs = list(inv.c) + [0] * (n + 1 - inv.val - len(inv.c))
        coeffs[n - 1] = coeffs[n - 1] - c
        inv = Series(1, coeffs, n + 1)
    return inv


def poly_to_series(p: Poly, prec: int) -> Series:
    return Series(0, list(p.c), prec)


# ---------------------------------------------------------------------------
# exact linear algebra
# ---------------------------------------------------------------------------

def _inv_elem(x):
    return Fraction(1, x) if isinstance(x, int) else 1 / x


def solve_linear(rows: list[list], rhs: list) -> Optional[list]:
    """One solution of rows * x = rhs over a field, or None if inconsistent."""
    m = [list(r) + [b] for r, b in zip(rows, rhs)]
    nrows, ncols = len(m), len(m[0]) - 1
    piv_cols = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = _inv_elem(m[r][c])
        m[r] = [a * inv for a in m[r]]
        for i in range(nrows):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        piv_cols.append(c)
        r += 1
        if r == nrows:
            break
    for i in range(r, nrows):
        if m[i][ncols]:
            return None
    x = [0] * ncols
    for i, c in enumerate(piv_cols):
        x[c] = m[i][ncols]
    return x


def nullspace(rows: list[list]) -> list[list]:
    """Basis of the kernel of the matrix over a field."""
    if not rows:
        return []
    m = [list(r) for r in rows]
    nrows, ncols = len(m), len(m[0])
    piv_cols = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = _inv_elem(m[r][c])
        m[r] = [a * inv for a in m[r]]
        for i in range(nrows):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        piv_cols.append(c)
        r += 1
        if r == nrows:
            break
    free = [c for c in range(ncols) if c not in piv_cols]
    basis = []
    for fc in free:
        v = [0] * ncols
        v[fc] = 1
        for i, pc in enumerate(piv_cols):
            v[pc] = -m[i][fc]
        basis.append(v)
    return basis
