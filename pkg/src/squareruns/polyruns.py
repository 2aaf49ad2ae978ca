"""Symmetric quadratic polynomials and their square runs: the brute-force
oracle, exhaustive bounded search, and the generators of the infinite
families for short runs plus the torsion classification for the odd
seven-term window.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional

from .exactmath import is_square_int, is_square_in_Q, squarefree_part
from .elliptic import (ECPoint, isomorphism_over_field, quadric_pair_to_quartic,
                       quartic_to_weierstrass, short_curve, torsion_over_Q,
                       naive_point_search)
from .geometry import reduce_pair_mod_squares
from .models import N7_CURVE, N8_CURVE

INT_AXIS = "integer-axis"
HALF_AXIS = "half-integer-axis"


@dataclass(frozen=True)
class SymQuadPoly:
    """f(x) = a x^2 + c (integer axis) or f(x) = a(x^2 + x) + c (half axis)."""

    axis: str
    a: int
    c: int

    def __post_init__(self):
        if self.axis not in (INT_AXIS, HALF_AXIS):
            raise ValueError("bad axis tag")
        if self.a == 0:
            raise ValueError("a must be nonzero")

    def __call__(self, x: int) -> int:
        if self.axis == INT_AXIS:
            return self.a * x * x + self.c
        return self.a * (x * x + x) + self.c

    def is_poly_square(self) -> bool:
        """Is f the square of a degree-<=1 integer polynomial?"""
        if self.axis == INT_AXIS:
            return self.c == 0 and is_square_int(self.a)
        return self.a == 4 * self.c and is_square_int(self.c)

    def square_class_pair(self) -> tuple[int, int]:
        return reduce_pair_mod_squares(self.a, self.c)

    def as_dict(self) -> dict:
        return {"axis": self.axis, "a": self.a, "c": self.c}


@dataclass(frozen=True)
class RunWitness:
    poly: SymQuadPoly
    r: int
    N: int
    roots: tuple[int, ...]

    def __post_init__(self):
        f = self.poly
        assert len(self.roots) == self.N
        for k, s in enumerate(self.roots):
            assert f(self.r + k) == s * s, "witness value fails"
        assert f(self.r) == f(self.r + self.N - 1), "window not symmetric"

    def as_dict(self) -> dict:
        d = self.poly.as_dict()
        d.update({"r": self.r, "N": self.N, "roots": list(self.roots)})
        return d


def _window_start(axis: str, N: int) -> Optional[int]:
    """Left endpoint of the symmetric window, or None if parity mismatches."""
    if axis == INT_AXIS:
        if N % 2 == 0:
            return None
        return -(N - 1) // 2
    if N % 2:
        return None
    return -(N // 2)


def square_run_check(f: SymQuadPoly, N: int) -> Optional[RunWitness]:
    """Witness that f takes square values on its symmetric N-window, or None."""
    if N < 1:
        raise ValueError("N must be positive")
    r = _window_start(f.axis, N)
    if r is None:
        return None
    half: list[int] = []
    s_N = (N - 1) // 2 if f.axis == INT_AXIS else N // 2 - 1
    for k in range(0, s_N + 1):
        v = f(k)
        if v < 0 or not is_square_int(v):
            return None
        half.append(math.isqrt(v))
    # mirror: f(-1-k) = f(k) on the half axis, f(-k) = f(k) on the integer axis
    if f.axis == INT_AXIS:
        roots = [half[abs(r + k)] for k in range(N)]
    else:
        roots = [half[k if k >= 0 else -1 - k] for k in range(r, r + N)]
    return RunWitness(f, r, N, tuple(roots))


def max_run(f: SymQuadPoly) -> int:
    """Length of the maximal symmetric square run of f around its axis."""
    k = 0
    while True:
        v = f(k)
        if v < 0 or not is_square_int(v):
            break
        k += 1
    if f.axis == INT_AXIS:
        return 2 * k - 1 if k else 0
    return 2 * k


def exhaustive_search(a_bound: int, c_bound: int, n_min: int,
                      shards: Iterable[tuple[int, int]] = None) -> list[RunWitness]:
    """All non-square f with |a| <= a_bound, |c| <= c_bound, run >= n_min.

    f(0) = c must be a perfect square, so only square c are scanned.  The
    a-range may be sharded; results are identical after the final sort.
    """
    if a_bound < 1 or c_bound < 1 or n_min < 1:
        raise ValueError("bounds must be positive")
    if shards is None:
        shards = [(-a_bound, a_bound)]
    hits: list[RunWitness] = []
    cs = [k * k for k in range(0, math.isqrt(c_bound) + 1)]
    for lo, hi in shards:
        for a in range(lo, hi + 1):
            if a == 0:
                continue
            for c in cs:
                for axis in (INT_AXIS, HALF_AXIS):
                    f = SymQuadPoly(axis, a, c)
                    if f.is_poly_square():
                        continue
                    N = max_run(f)
                    if N >= n_min:
                        w = square_run_check(f, N)
                        assert w is not None
                        hits.append(w)
    hits.sort(key=lambda w: (abs(w.poly.a), abs(w.poly.c), w.poly.axis, w.poly.a))
    return hits


def default_shards(a_bound: int, jobs: int) -> list[tuple[int, int]]:
    """Deterministic partition of [-a_bound, a_bound] into jobs shards."""
    jobs = max(1, jobs)
    span = 2 * a_bound + 1
    step = (span + jobs - 1) // jobs
    out = []
    lo = -a_bound
    while lo <= a_bound:
        out.append((lo, min(lo + step - 1, a_bound)))
        lo += step
    return out


# ---------------------------------------------------------------------------
# infinite families for N = 5, 6 via conics
# ---------------------------------------------------------------------------

def _conic_points(coeffs: tuple[int, int, int], base: tuple[int, int, int],
                  count: int):
    """Rational points on A x0^2 + B x1^2 + C x2^2 = 0 by the chord sweep."""
    A, B, C = coeffs
    b = base
    assert A * b[0] ** 2 + B * b[1] ** 2 + C * b[2] ** 2 == 0
    seen = set()
    u = 0
    while len(seen) < count * 8:
        u += 1
        for v in range(-u, u + 1):
            if math.gcd(u, abs(v)) != 1:
                continue
            for d in ((u, v, 0), (u, 0, v), (0, u, v)):
                qd = A * d[0] ** 2 + B * d[1] ** 2 + C * d[2] ** 2
                bd = A * b[0] * d[0] + B * b[1] * d[1] + C * b[2] * d[2]
                pt = tuple(qd * bi - 2 * bd * di for bi, di in zip(b, d))
                if all(v2 == 0 for v2 in pt):
                    continue
                g = math.gcd(math.gcd(abs(pt[0]), abs(pt[1])), abs(pt[2]))
                pt = tuple(v2 // g for v2 in pt)
                if pt[0] < 0 or (pt[0] == 0 and pt[1] < 0):
                    pt = tuple(-v2 for v2 in pt)
                seen.add(pt)
                yield pt


def conic_family(N: int, count: int) -> list[SymQuadPoly]:
    """Distinct non-square members with run >= N, for N = 5 or 6.

    The five-term window forces 3x0^2 + x2^2 = 4x1^2, the six-term window
    2x0^2 + x2^2 = 3x1^2; both conics are swept through (1,1,1).
    """
    if N not in (5, 6):
        raise ValueError("N must be 5 or 6")
    if count < 1:
        raise ValueError("count must be positive")
    conic = (3, -4, 1) if N == 5 else (2, -3, 1)
    out: list[SymQuadPoly] = []
    classes: list[tuple[int, int]] = []
    for (x0, x1, x2) in _conic_points(conic, (1, 1, 1), count * 6 + 60):
        if N == 5:
            a, c = x1 * x1 - x0 * x0, x0 * x0
            axis = INT_AXIS
        else:
            num = x1 * x1 - x0 * x0
            if num % 2:
                x0, x1, x2 = 2 * x0, 2 * x1, 2 * x2
                num = x1 * x1 - x0 * x0
            a, c = num // 2, x0 * x0
            axis = HALF_AXIS
        if a == 0:
            continue
        f = SymQuadPoly(axis, a, c)
        if f.is_poly_square():
            continue
        key = f.square_class_pair()
        if key in classes:
            continue
        if square_run_check(f, N) is None:
            raise AssertionError("family member fails its own oracle")
        classes.append(key)
        out.append(f)
        if len(out) >= count:
            break
    if len(out) < count:
        raise RuntimeError("conic sweep exhausted before reaching count")
    return out


# ---------------------------------------------------------------------------
# quadric-pair systems for N = 7 (torsion only) and N = 8 (rank one)
# ---------------------------------------------------------------------------

def _system_model(N: int):
    """Quadric pair, elimination to a quartic, and the curve identification."""
    if N == 7:
        coeffs1, coeffs2, curve = (3, -4, 1), (8, -9, 1), N7_CURVE
    elif N == 8:
        coeffs1, coeffs2, curve = (2, -3, 1), (5, -6, 1), N8_CURVE
    else:
        raise ValueError("N must be 7 or 8")
    model = quadric_pair_to_quartic(coeffs1, coeffs2,
                                    (Fraction(1), Fraction(-1), Fraction(-1)),
                                    (1, 1, 0), (1, 0, 1))
    t0 = model.t_of_point(Fraction(1), Fraction(1), Fraction(1))
    w0 = is_square_in_Q(model.quartic(t0))
    qjm = quartic_to_weierstrass(model.quartic, t0, w0)
    iso = isomorphism_over_field(qjm.jacobian, curve, is_square_in_Q)
    if iso is None:
        raise AssertionError("window system does not match the stated curve")
    return model, qjm, iso, curve


def _point_to_pair(N: int, model, qjm, iso, P: ECPoint) -> Optional[tuple[int, int]]:
    """(a, c) class of the window polynomial attached to a curve point.

    None means the point sits over t = infinity of the elimination; on these
    systems that forces x1^2 = x0^2, i.e. a = 0 (the constant family).
    """
    fwd, bwd = iso
    try:
        t, w = qjm.nu(bwd(P))
    except ZeroDivisionError:
        return None
    if w is None:
        return None
    x0, x1, _, _ = model.point_from_t(t, w)
    if x0 == 0 and x1 == 0:
        return None
    den = math.lcm(Fraction(x0).denominator, Fraction(x1).denominator)
    i0, i1 = int(x0 * den), int(x1 * den)
    if N == 7:
        a, c = i1 * i1 - i0 * i0, i0 * i0
    else:
        num = i1 * i1 - i0 * i0
        if num % 2:
            i0, i1 = 2 * i0, 2 * i1
            num = i1 * i1 - i0 * i0
        a, c = num // 2, i0 * i0
    if a == 0:
        return (0, 1)
    return reduce_pair_mod_squares(a, c)


def n7_classification() -> dict:
    """Full torsion of the seven-window curve and the induced polynomials.

    Every torsion point must map to a degenerate polynomial (constant or a
    perfect square); a non-degenerate hit would be a counterexample.
    """
    model, qjm, iso, curve = _system_model(7)
    invariants, points = torsion_over_Q(curve)
    entries = []
    for P in points:
        if P.infinity:
            entries.append({"point": "O", "pair": None, "degenerate": True,
                            "reason": "origin maps to the window base point"})
            continue
        pair = _point_to_pair(7, model, qjm, iso, P)
        if pair is None:
            entries.append({"point": str(P), "pair": None, "degenerate": True,
                            "reason": "t at infinity forces a = 0"})
            continue
        a, c = pair
        f = None
        degenerate = a == 0
        reason = "constant polynomial" if a == 0 else None
        if not degenerate:
            f = SymQuadPoly(INT_AXIS, a, c)
            degenerate = f.is_poly_square()
            reason = "square polynomial" if degenerate else "GENUINE RUN"
        entries.append({"point": str(P), "pair": pair,
                        "degenerate": degenerate, "reason": reason})
    if not all(e["degenerate"] for e in entries):
        raise AssertionError("a torsion point yields a non-degenerate run")
    return {"torsion_structure": invariants, "torsion_order": len(points),
            "points": entries,
            "all_degenerate": True}


def n8_family(count: int) -> list[SymQuadPoly]:
    """Distinct non-square polynomials with symmetric run 8.

    Multiples of a non-torsion point of the eight-window curve are pushed
    back through the elimination; degenerate images are filtered by the
    oracle and square-class comparison.
    """
    if count < 1:
        raise ValueError("count must be positive")
    model, qjm, iso, curve = _system_model(8)
    gens = naive_point_search(curve, num_bound=50, den_bound=3, limit=4)
    gen = next(P for P in gens if P.order(16) is None)
    _, torsion = torsion_over_Q(curve)
    out: list[SymQuadPoly] = []
    classes: list[tuple[int, int]] = []
    n = 0
    while len(out) < count and n < 40 * count + 40:
        n += 1
        for tors in torsion:
            P = n * gen + tors
            if P.infinity:
                continue
            pair = _point_to_pair(8, model, qjm, iso, P)
            if pair is None or pair[0] == 0:
                continue
            a, c = pair
            f = SymQuadPoly(HALF_AXIS, a, c)
            if f.is_poly_square():
                continue
            if square_run_check(f, 8) is None:
                raise AssertionError("family member fails the oracle at N = 8")
            key = f.square_class_pair()
            if key in classes:
                continue
            classes.append(key)
            out.append(f)
            if len(out) >= count:
                break
    if len(out) < count:
        raise RuntimeError("point sweep exhausted before reaching count")
    return out
