"""Fundamental regions of Gamma_0(N) for the supported levels.

For a prime p >= 5 the region is the strip |Re tau| <= 1/2 with the open
discs |tau - k/p| < 1/p (k in S_p) removed, plus tie-break rules that keep
exactly one point of every boundary orbit.  For N = 2, 3, 4 only the two
discs at +-1/N are removed.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from xml.sax.saxutils import escape

from .exceptions import UnsupportedLevel
from .forms import CMPoint, Mat2
from .levels import check_level
from .numtheory import is_prime, signed_residue, sp_inverse, symmetric_residues


@dataclass(frozen=True)
class Arc:
    k: int
    center: Fraction
    radius: Fraction


@dataclass(frozen=True)
class PrimeDomainData:
    p: int
    S_p: tuple
    gamma: dict
    E2: frozenset
    E3: frozenset
    k2: dict
    k3: dict

    @property
    def arcs(self):
        return [Arc(k, Fraction(k, self.p), Fraction(1, self.p)) for k in self.S_p]


def _require_prime(p):
    if p < 5 or not is_prime(p):
        raise ValueError(f"{p} is not a prime >= 5")


def gamma_k(p, k):
    """(k, (k k^-1 - 1)/p; p, k^-1) with k^-1 the inverse of k in S_p."""
    _require_prime(p)
    kinv, _ = sp_inverse(p, k)
    return Mat2(k, (k * kinv - 1) // p, p, kinv, p)


def cycle_map(p, k):
    """k -> <1 - k^-1>, a permutation of S_p - {1} of order dividing 3."""
    kinv, _ = sp_inverse(p, k)
    return signed_residue(1 - kinv, p)


@lru_cache(maxsize=None)
def build_domain(p):
    _require_prime(p)
    S = tuple(symmetric_residues(p))
    gamma = {k: gamma_k(p, k) for k in S}
    E2 = frozenset(k for k in S if (k * k + 1) % p == 0)
    E3 = frozenset(k for k in S if (k * k - k + 1) % p == 0)
    k2 = {k: min(k, -sp_inverse(p, k)[0]) for k in S}
    k3 = {}
    for k in S:
        if k == 1:
            continue
        f1 = cycle_map(p, k)
        f2 = cycle_map(p, f1)
        k3[k] = min(k, f1, f2)
    return PrimeDomainData(p, S, gamma, E2, E3, k2, k3)


def _on_arc_sign(tau, center, radius):
    d = tau.dist2(center) - radius * radius
    return (d > 0) - (d < 0)


def in_fundamental_region(tau, N):
    """Exact membership of a point with rational real part and squared imaginary part."""
    check_level(N)
    if not isinstance(tau, CMPoint):
        tau = CMPoint(*tau)
    x = tau.re
    half = Fraction(1, 2)
    if abs(x) > half:
        return False
    if N <= 4:
        r = Fraction(1, N)
        s_plus = _on_arc_sign(tau, r, r)
        s_minus = _on_arc_sign(tau, -r, r)
        if s_plus < 0 or s_minus < 0:
            return False
        if (abs(x) == half or s_plus == 0 or s_minus == 0) and x > 0:
            return False
        return True
    p = N
    dom = build_domain(p)
    r = Fraction(1, p)
    sign = {k: _on_arc_sign(tau, Fraction(k, p), r) for k in dom.S_p}
    if any(s < 0 for s in sign.values()):
        return False
    if abs(x) == half and x != -half:
        return False
    for k, s in sign.items():
        if s != 0:
            continue
        if k in dom.E2:
            if x > Fraction(k, p):
                return False
        elif k in (1, -1):
            if x > 0:
                return False
        elif x > Fraction(2 * dom.k2[k] + 1, 2 * p):
            return False
    if tau.im2 == Fraction(3, 4 * p * p):
        for k in dom.S_p:
            if k == 1 or k in dom.E3 or k == dom.k3[k]:
                continue
            if x == Fraction(2 * k - 1, 2 * p):
                return False
    return True


def elliptic_points(N):
    """Inequivalent elliptic points as {"order2": [...], "order3": [...]} of CMPoints.

    For p >= 5 they sit at k/p + i/p (k in E2) and k/p - 1/2p + i sqrt(3)/2p
    (k in E3).  For N = 2, 3 the single elliptic point is the corner
    -1/2 + i sqrt((4-N)/4N); Gamma_0(4) has none.
    """
    check_level(N)
    if N <= 4:
        out = {"order2": [], "order3": []}
        if N < 4:
            corner = CMPoint(Fraction(-1, 2), Fraction(4 - N, 4 * N))
            out["order2" if N == 2 else "order3"].append(corner)
        return out
    p = N
    dom = build_domain(p)
    return {
        "order2": [CMPoint(Fraction(k, p), Fraction(1, p * p)) for k in sorted(dom.E2)],
        "order3": [CMPoint(Fraction(2 * k - 1, 2 * p), Fraction(3, 4 * p * p)) for k in sorted(dom.E3)],
    }


# ---------------------------------------------------------------------------
# export


def _rat(x):
    x = Fraction(x)
    return [x.numerator, x.denominator]


def domain_document(p):
    dom = build_domain(p)
    pts = elliptic_points(p)
    e2 = sorted(dom.E2)
    e3 = sorted(dom.E3)
    return {
        "p": p,
        "S_p": list(dom.S_p),
        "arcs": [{"k": a.k, "center": _rat(a.center), "radius": _rat(a.radius)} for a in dom.arcs],
        "elliptic2": [{"k": k, "re": _rat(t.re), "im2": _rat(t.im2)} for k, t in zip(e2, pts["order2"])],
        "elliptic3": [{"k": k, "re": _rat(t.re), "im2": _rat(t.im2)} for k, t in zip(e3, pts["order3"])],
        "k2": {str(k): v for k, v in dom.k2.items()},
        "k3": {str(k): v for k, v in dom.k3.items()},
    }


# drawing constants: 1 unit of tau = SCALE pixels, origin at the bottom centre
SCALE = 600
_W, _H = 700, 420
_STRIP = "#1f4e79"
_ARC = "#c0392b"
_ORDER2 = "#27ae60"
_ORDER3 = "#8e44ad"


def _xy(re, im):
    return _W / 2 + SCALE * float(re), _H - 20 - SCALE * float(im)


def domain_svg(p):
    """SVG drawing: the strip, every arc (as an SVG elliptical arc) and the elliptic points."""
    dom = build_domain(p)
    pts = elliptic_points(p)
    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_W}" height="{_H}" viewBox="0 0 {_W} {_H}">',
        f"<title>{escape(f'Fundamental region for Gamma_0({p})')}</title>",
    ]
    x0, y0 = _xy(-0.5, 0)
    x1, y1 = _xy(-0.5, (_H - 40) / SCALE)
    x2, _ = _xy(0.5, 0)
    lines.append(f'<line x1="{x0:.2f}" y1="{y0:.2f}" x2="{x1:.2f}" y2="{y1:.2f}" stroke="{_STRIP}" stroke-width="1.5"/>')
    lines.append(f'<line x1="{x2:.2f}" y1="{y0:.2f}" x2="{x2:.2f}" y2="{y1:.2f}" stroke="{_STRIP}" stroke-width="1.5"/>')
    lines.append(f'<line x1="{x0:.2f}" y1="{y0:.2f}" x2="{x2:.2f}" y2="{y0:.2f}" stroke="#999999" stroke-width="0.5"/>')
    rpx = SCALE / p
    for arc in dom.arcs:
        sx, sy = _xy(arc.center - arc.radius, 0)
        ex, ey = _xy(arc.center + arc.radius, 0)
        lines.append(
            f'<path d="M {sx:.2f} {sy:.2f} A {rpx:.2f} {rpx:.2f} 0 0 1 {ex:.2f} {ey:.2f}" '
            f'fill="none" stroke="{_ARC}" stroke-width="1"><title>k={arc.k}</title></path>'
        )
    for t in pts["order2"]:
        cx, cy = _xy(t.re, float(t.im2) ** 0.5)
        lines.append(f'<circle cx="{cx:.2f}" cy="{cy:.2f}" r="4" fill="{_ORDER2}"/>')
    for t in pts["order3"]:
        cx, cy = _xy(t.re, float(t.im2) ** 0.5)
        lines.append(
            f'<rect x="{cx - 4:.2f}" y="{cy - 4:.2f}" width="8" height="8" fill="{_ORDER3}"/>'
        )
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def export_domain(p, format="json"):
    """The region for Gamma_0(p) as a JSON string or an SVG document."""
    if format == "json":
        return json.dumps(domain_document(p), sort_keys=True, indent=2) + "\n"
    if format == "svg":
        return domain_svg(p)
    raise ValueError(f"unknown format {format!r}")


def check_prime_level(p):
    """Raise UnsupportedLevel unless p is a supported prime >= 5."""
    check_level(p)
    if p < 5:
        raise UnsupportedLevel(f"the explicit region data needs a prime level >= 5, got {p}")
