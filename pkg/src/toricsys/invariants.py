"""Scalar invariants of a moment profile.

Area in moment coordinates equals the 4D symplectic volume; the contact
volume of the boundary is twice that.  The Ruelle invariant equals
a + b in closed form; an independent quadrature of the rotation-density
line integral is kept as a cross-check.  The convexity-criterion product
is ru * sqrt(sys) = Ru * T_min / contact_volume.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import BadThresholds, DegenerateDenominator, NotMonotone
from .geometry import Classification, MomentProfile, classify, cross
from . import reeb

GL_ORDER = 8


def _gl_nodes(order: int) -> tuple[np.ndarray, np.ndarray]:
    x, w = np.polynomial.legendre.leggauss(order)
    return (x + 1) / 2, w / 2  # mapped to [0, 1]


def area(p: MomentProfile, gl_order: int = GL_ORDER) -> float:
    """Area between the profile and the axes: shoelace on straight
    segments, Gauss-Legendre on the tagged curves."""
    nodes, weights = _gl_nodes(gl_order)
    total = 0.0
    for i in range(p.n_segments):
        tag = p.tag(i)
        if tag is None:
            a, b = p.segment(i)
            total += 0.5 * cross(a, b)
        else:
            acc = 0.0
            for t, w in zip(nodes, weights):
                pt = tag.point(t)
                dv = tag.deriv(t)
                acc += w * 0.5 * cross(pt, dv)
            total += acc
    return total


def contact_volume(p: MomentProfile, gl_order: int = GL_ORDER) -> float:
    return 2 * area(p, gl_order)


def ruelle_closed_form(p: MomentProfile) -> float:
    return p.a_intercept + p.b_intercept


def ruelle_quadrature(p: MomentProfile, n: int = GL_ORDER) -> float:
    """Composite quadrature of the rotation-density line integral
    rho(w) (w1 dw2 - w2 dw1) along the profile, n Gauss-Legendre points
    per segment.  Telescopes exactly on straight segments."""
    if n < 2:
        raise ValueError("need at least 2 quadrature points per segment")
    nodes, weights = _gl_nodes(n)
    total = 0.0
    for i in range(p.n_segments):
        tag = p.tag(i)
        if tag is None:
            a, b = p.segment(i)
            d = (b[0] - a[0], b[1] - a[1])

            def geom(t, a=a, d=d):
                return (a[0] + t * d[0], a[1] + t * d[1]), d
        else:

            def geom(t, tag=tag):
                return tag.point(t), tag.deriv(t)

        acc = 0.0
        for t, w in zip(nodes, weights):
            pt, dv = geom(t)
            speed = math.hypot(dv[0], dv[1])
            nu = (dv[1] / speed, -dv[0] / speed)
            denom = nu[0] * pt[0] + nu[1] * pt[1]
            if denom <= p.tol:
                raise DegenerateDenominator(f"nu.w = {denom} on segment {i}")
            rho = (nu[0] + nu[1]) / denom
            acc += w * rho * cross(pt, dv)
        total += acc
    return total


@dataclass(frozen=True)
class InvariantReport:
    area: float
    contact_volume: float
    ruelle: float
    ruelle_quadrature: float
    t_min: float
    sys: float
    ru: float
    product: float
    classification: Classification

    def flags_string(self) -> str:
        c = self.classification
        on = [
            name
            for name, val in (
                ("star_shaped", c.star_shaped),
                ("monotone", c.monotone),
                ("strictly_monotone", c.strictly_monotone),
                ("convex_4d", c.convex_4d),
            )
            if val
        ]
        return ";".join(on)


REPORT_FIELDS = (
    "area",
    "contact_volume",
    "ruelle",
    "ruelle_quadrature",
    "t_min",
    "sys",
    "ru",
    "product",
    "flags",
)


def report(
    p: MomentProfile,
    method: str = "fast",
    n_oracle: int = 200,
    quad_n: int = GL_ORDER,
) -> InvariantReport:
    vol = area(p)
    cv = 2 * vol
    ru_cf = ruelle_closed_form(p)
    tmin, _ = reeb.t_min(p, method=method, n_oracle=n_oracle)
    sys_ratio = tmin * tmin / cv
    ru_ratio = ru_cf / math.sqrt(cv)
    return InvariantReport(
        area=vol,
        contact_volume=cv,
        ruelle=ru_cf,
        ruelle_quadrature=ruelle_quadrature(p, quad_n),
        t_min=tmin,
        sys=sys_ratio,
        ru=ru_ratio,
        product=ru_cf * tmin / cv,
        classification=classify(p),
    )


def report_to_text(r: InvariantReport) -> str:
    lines = []
    for name in REPORT_FIELDS:
        if name == "flags":
            lines.append(f"flags = {r.flags_string()}")
        else:
            lines.append(f"{name} = {getattr(r, name):.17g}")
    return "\n".join(lines) + "\n"


def report_csv_header() -> str:
    return ",".join(REPORT_FIELDS)


def report_to_csv_row(r: InvariantReport) -> str:
    vals = [f"{getattr(r, name):.17g}" for name in REPORT_FIELDS[:-1]]
    vals.append(r.flags_string())
    return ",".join(vals)


def gromov_width_monotone(p: MomentProfile, curve_samples: int = 64) -> float:
    """First-touch value of the antidiagonal line w1 + w2 = L: the
    minimum of w1 + w2 over the boundary path (monotone profiles only)."""
    cls = classify(p)
    if not cls.monotone:
        raise NotMonotone(f"witness segment {cls.witnesses.get('monotone')}")
    best = min(x + y for x, y in p.vertices)
    for i in range(p.n_segments):
        tag = p.tag(i)
        if tag is None:
            continue
        for j in range(1, curve_samples):
            x, y = tag.point(j / curve_samples)
            best = min(best, x + y)
    return best


def vol_gr_bound_check(p: MomentProfile) -> tuple[float, float, bool]:
    """Volume vs (larger intercept) * (Gromov width): (lhs, rhs, holds).

    Intercepts are swapped when needed so the larger one is used; the
    reflection w1 <-> w2 leaves both sides unchanged otherwise.
    """
    vol = area(p)
    b = max(p.a_intercept, p.b_intercept)
    rhs = b * gromov_width_monotone(p)
    return vol, rhs, vol <= rhs + 1e-9 * max(1.0, rhs)


@dataclass(frozen=True)
class CriterionVerdict:
    product: float
    lower: float
    upper: float
    verdict: str  # 'BelowLower' | 'AboveUpper' | 'Inconclusive'
    note: str


_CRITERION_NOTE = (
    "BelowLower/AboveUpper rule out symplectic convexity only relative to "
    "the supplied thresholds; the true criterion constants are unknown "
    "(lower <= 1/2, upper >= 3)."
)


def criterion_verdict(
    p: MomentProfile, c_threshold: float = 0.5, C_threshold: float = 3.0
) -> CriterionVerdict:
    """Compare the convexity-criterion product against thresholds."""
    if not (0 < c_threshold <= C_threshold):
        raise BadThresholds(f"need 0 < {c_threshold} <= {C_threshold}")
    prod = report(p).product
    if prod < c_threshold:
        verdict = "BelowLower"
    elif prod > C_threshold:
        verdict = "AboveUpper"
    else:
        verdict = "Inconclusive"
    return CriterionVerdict(prod, c_threshold, C_threshold, verdict, _CRITERION_NOTE)


def vol_fc(b: float, c: float) -> float:
    """Closed-form volume of the extremal convex domain with parameters
    (b, c): c^2/2 + (b-c)^2 c/(6b) + c(1-c)^2/6."""
    return c * c / 2 + (b - c) ** 2 * c / (6 * b) + c * (1 - c) ** 2 / 6
