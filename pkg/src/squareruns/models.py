"""Concrete curve models used by the verification pipeline.

All the fixed Weierstrass models live here: the five elliptic quotients of
the genus-5 curve, their 2-isogeny partners, the rank-1 curves over Q(sqrt6)
on which the fiber sieve runs, and the degree-2 projections to the t-line.
The map-verification routine adjudicates between the candidate printed
projection formulas and a re-derived one, exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .exactmath import QF6Elem, is_square_in_QF6, is_square_in_Q, qf6
from .geometry import P1_POLY, Q1_POLY
from .polys import Poly
from .elliptic import (CurveFunction, ECPoint, QuarticFunction, WeierstrassCurve,
                       isomorphism_over_field, quadratic_twist,
                       quartic_to_weierstrass, short_curve, to_short_form)

# ---------------------------------------------------------------------------
# the five elliptic quotients over Q, as y^2 = x(x^2 + a x + b)
# ---------------------------------------------------------------------------

# (a, b) data: E_n: y^2 = x(x^2 + a_n x + b_n)
E_DATA = {
    0: (19, -216),    # x(x-8)(x+27)
    1: (18, -360),    # x(x-12)(x+30)
    2: (58, 216),     # x(x+4)(x+54)
    3: (13, -140),    # x(x-7)(x+20)
    4: (-27, 180),    # x(x-12)(x-15)
}

E_CURVES = {n: short_curve(Fraction(a), Fraction(b)) for n, (a, b) in E_DATA.items()}

# 2-isogeny partners (the duals' curve data)
E2_PRIME_DATA = (-116, 2500)   # y^2 = x(x^2 - 116x + 2500)
E4_PRIME_DATA = (54, 9)        # y^2 = x(x^2 + 54x + 9)

# the odd-window torsion curve: y^2 = x(x-5)(x+27)
N7_CURVE = short_curve(Fraction(22), Fraction(-135))

# the even-window rank-one curve is E_4 itself
N8_CURVE = E_CURVES[4]

# ---------------------------------------------------------------------------
# the genus-one quotients over Q(sqrt 6) and their jacobians
# ---------------------------------------------------------------------------

# H(+): w^2 = q1(t) p1(t); H(-): -w^2 = q1(t) p1(t)
H_PLUS_QUARTIC = Q1_POLY * P1_POLY.map_coeffs(QF6Elem.of)
H_MINUS_QUARTIC = -1 * H_PLUS_QUARTIC

# marked points with t in Q (w recomputed exactly from the model)
H_PLUS_MARKED = (qf6(1), qf6(5, -2))
H_MINUS_MARKED = (qf6(Fraction(1, 2)), qf6(Fraction(9, 2), -2))

J_PLUS = WeierstrassCurve(qf6(-10, -2), qf6(-34, -24), qf6(22, 38),
                          qf6(1253, 448), qf6(0))
J_MINUS = WeierstrassCurve(qf6(422, 42), qf6(-33466, -8076),
                           qf6(-113902, -291822),
                           qf6(141575953, 67635708), qf6(0))

T_PLUS = (qf6(-7, 2), qf6(-34, -16))
T_MINUS = (qf6(-2767, -462), qf6(699000, 301500))


@dataclass(frozen=True)
class LinearProjection:
    """pi(x, y) = y / (alpha x + beta y) as a map to P^1."""

    alpha: QF6Elem
    beta: QF6Elem

    def pair_at(self, E: WeierstrassCurve, P: ECPoint):
        """Projective (num, den); works over any ring the point lives in."""
        if P.infinity:
            one = P.curve.a4 * 0 + 1
            return one, one * self.beta
        num = P.y
        den = self.alpha * P.x + self.beta * P.y
        if num or den:
            return num, den
        # fall back to y/x = (x^2 + a2 x + a4)/(y + a1 x + a3)
        gn = P.x * P.x + E.a2 * P.x + E.a4
        gd = P.y + E.a1 * P.x + E.a3
        return gn, self.alpha * gd + self.beta * gn

    def value(self, E: WeierstrassCurve, P: ECPoint):
        """Value in P^1 (None encodes infinity)."""
        num, den = self.pair_at(E, P)
        if not den:
            return None
        return num / den


PI_PLUS = LinearProjection(qf6(2), qf6(1))
PI_MINUS = LinearProjection(qf6(300), qf6(2))
PI_MINUS_ALT = LinearProjection(qf6(300), qf6(150))


def jacobian_point(curve: WeierstrassCurve, xy) -> ECPoint:
    return curve.point(QF6Elem.of(xy[0]), QF6Elem.of(xy[1]))


def sample_points(J: WeierstrassCurve, T: tuple, count: int = 24) -> list[ECPoint]:
    """Points eps*T + n*(0,0) of the known subgroup, poles excluded later."""
    TT = jacobian_point(J, T)
    G = jacobian_point(J, (qf6(0), qf6(0)))
    out = []
    n = 1
    while len(out) < count:
        for eps in (0, 1):
            for s in (n, -n):
                P = s * G if not eps else TT + s * G
                if not P.infinity:
                    out.append(P)
        n += 1
    return out[:count]


def verify_H_J_maps(num_samples: int = 20) -> dict:
    """Certify the correspondence between the quotient quartics and the
    stated rank-1 curves, and adjudicate the projection formulas.

    For each sign: re-derive the jacobian from the quartic with its marked
    point, exhibit an explicit isomorphism with the stated model, verify the
    quartic equation under the pulled-back inverse map at sample points, and
    determine which candidate projection equals the true t-coordinate map.
    """
    report: dict = {"plus": {}, "minus": {}}
    for sign, quartic, marked, J, T, candidates in (
            ("plus", H_PLUS_QUARTIC, H_PLUS_MARKED, J_PLUS, T_PLUS,
             [("y/(2x+y)", PI_PLUS)]),
            ("minus", H_MINUS_QUARTIC, H_MINUS_MARKED, J_MINUS, T_MINUS,
             [("y/(300x+2y)", PI_MINUS), ("y/(300x+150y)", PI_MINUS_ALT)])):
        sec = report[sign]
        qjm = quartic_to_weierstrass(quartic, marked[0], marked[1],
                                     sqrt_fn=is_square_in_QF6)
        sec["derived_j"] = qjm.jacobian.j
        sec["j_matches"] = (qjm.jacobian.j == J.j == qf6(Fraction(140608, 245)))
        iso = isomorphism_over_field(qjm.jacobian, J, is_square_in_QF6)
        sec["isomorphic_to_stated"] = iso is not None
        if iso is None:
            continue
        fwd, bwd = iso
        # second marked point maps to -(0,0)
        conj = qjm.mu(marked[0], -marked[1])
        sec["second_marked_to_minus_00"] = (
            fwd(conj) == -jacobian_point(J, (qf6(0), qf6(0))))
        # quartic identity under the derived inverse, at sample points
        pts = sample_points(J, T, num_samples + 4)
        checked = 0
        ok = True
        for P in pts:
            if checked >= num_samples:
                break
            try:
                t, w = qjm.nu(bwd(P))
            except ZeroDivisionError:
                continue
            if w is None:
                continue
            ok = ok and (w * w == quartic(t))
            checked += 1
        sec["quartic_identity_points"] = checked
        sec["quartic_identity_ok"] = ok and checked >= num_samples
        # adjudicate projections: compare candidate against t(nu(.)) pointwise
        verdicts = {}
        for label, cand in candidates:
            agree = True
            for P in pts:
                true_t = _true_t(qjm, bwd, P)
                cand_t = cand.value(J, P)
                if true_t != cand_t:
                    agree = False
                    break
            verdicts[label] = agree
        sec["projection_verdicts"] = verdicts
        chosen = [lbl for lbl, v in verdicts.items() if v]
        sec["certified_projection"] = chosen[0] if len(chosen) == 1 else None
        # series seed: pi = 1/(beta - alpha z), so pi(O) = 1/beta
        if chosen:
            proj = dict(candidates)[chosen[0]]
            sec["value_at_origin"] = 1 / proj.beta
    report["erratum"] = {
        "printed_inverse_denominator_valid": report["minus"]
        .get("projection_verdicts", {}).get("y/(300x+150y)", False),
        "certified_minus_projection": report["minus"].get("certified_projection"),
    }
    report["ok"] = all(report[s].get("j_matches") and report[s].get("isomorphic_to_stated")
                       and report[s].get("quartic_identity_ok")
                       and report[s].get("certified_projection")
                       for s in ("plus", "minus"))
    return report


def _true_t(qjm, bwd, P: ECPoint):
    """Exact t-value of the derived inverse map at P, as a morphism to P^1."""
    Q = bwd(P)
    Jd = qjm.jacobian
    if Q.infinity:
        return QF6Elem.of(qjm.t0)
    n0, n1, n2 = qjm.nu_num
    m0, m1, m2 = qjm.nu_den
    x = CurveFunction.coord_x(Jd)
    y = CurveFunction.coord_y(Jd)
    one = CurveFunction.const(Jd, 1)
    f = (n0 * one + n1 * x + n2 * y) / (m0 * one + m1 * x + m2 * y)
    try:
        return QF6Elem.of(f.eval(Q))
    except ZeroDivisionError:
        return None  # t at infinity


def verify_twist_relation() -> dict:
    """The rank-1 curves are the +-(sqrt6 - 3)-twists of a fixed curve over Q."""
    base = WeierstrassCurve(0, 0, 0, qf6(312), qf6(-3008))
    out = {}
    for name, J, sgn in (("plus", J_PLUS, 1), ("minus", J_MINUS, -1)):
        d = qf6(-3, 1) * sgn
        tw = quadratic_twist(base, d)
        iso = isomorphism_over_field(tw, J, is_square_in_QF6)
        out[name] = iso is not None
    out["ok"] = out["plus"] and out["minus"]
    return out
