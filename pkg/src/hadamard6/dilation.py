"""The dilation pipeline: embed a 3x3 unimodular seed block into order-6
complex Hadamard matrices.

Steps: validate the seed (canonical condition, contraction bound), isolate
the unimodular zeros of the fundamental expression on the circle, assemble
candidate row and column sextuples, and complete each compatible pair to a
full matrix through the block-inversion formula, accepting exactly those
whose lower-right block comes out unimodular.
"""

from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .classify import (
    ClassReport,
    canonical_condition,
    classify_matrix,
    contraction_precheck,
    is_hadamard,
)
from .core import (
    DEFAULT_TOL,
    TWO_PI,
    DegenerateDenominatorError,
    DegenerateFamilyError,
    InterpolationError,
    NumericalAnomalyError,
    Tolerances,
    ZeroDenominatorError,
    adjoint,
    det3,
    inv3,
    require_unimodular,
    unit_from_turns,
)
from .core import NotCompletableError, SingularMatrixError
from .triplet import complete_triplet

_F_SAMPLES = (1.0 + 0.0j, 1.0j, -1.0 + 0.0j)
_F_GUARD = -1.0j


@dataclass(frozen=True)
class Quadruple:
    """Seed parameters (a, b, c, d) of the block [[1,1,1],[1,a,b],[1,c,d]]."""

    a: complex
    b: complex
    c: complex
    d: complex

    def __post_init__(self) -> None:
        for name in ("a", "b", "c", "d"):
            require_unimodular(getattr(self, name), DEFAULT_TOL.tau_u, f"seed entry {name}")

    @classmethod
    def from_turns(cls, t1: float, t2: float, t3: float, t4: float) -> "Quadruple":
        return cls(
            unit_from_turns(t1), unit_from_turns(t2),
            unit_from_turns(t3), unit_from_turns(t4),
        )

    @property
    def values(self) -> tuple[complex, complex, complex, complex]:
        return (self.a, self.b, self.c, self.d)

    def swapped(self) -> "Quadruple":
        """Seed of the transposed block (b and c exchanged)."""
        return Quadruple(self.a, self.c, self.b, self.d)

    def block(self) -> np.ndarray:
        return np.array(
            [[1, 1, 1], [1, self.a, self.b], [1, self.c, self.d]],
            dtype=np.complex128,
        )


@dataclass(frozen=True)
class QuadCoeffs:
    """Coefficients of the two quadratics in f at a fixed seed and e."""

    f1: complex
    f2: complex
    f3: complex
    g1: complex
    g2: complex
    g3: complex


@dataclass(frozen=True)
class Sextuple:
    """One candidate completion (e, s1, s2, f, s3, s4) of rows 2-3.

    The column-side solution set reuses the same shape with fields read as
    (g, t1, t2, h, t3, t4).
    """

    e: complex
    s1: complex
    s2: complex
    f: complex
    s3: complex
    s4: complex

    @property
    def values(self) -> tuple[complex, ...]:
        return (self.e, self.s1, self.s2, self.f, self.s3, self.s4)


@dataclass(frozen=True)
class Rejection:
    """Why an assembled SOL_B x SOL_C pair was discarded."""

    reason: str  # "non_orthogonal" | "singular_b" | "non_unimodular_d"
    detail: float


@dataclass(frozen=True)
class Diagnostic:
    step: str
    message: str


@dataclass
class DilationReport:
    seed: Quadruple
    sol_b: list[Sextuple] = field(default_factory=list)
    sol_c: list[Sextuple] = field(default_factory=list)
    matrices: list[np.ndarray] = field(default_factory=list)
    classifications: list[ClassReport] = field(default_factory=list)
    rejections: list[Rejection] = field(default_factory=list)
    diagnostics: list[Diagnostic] = field(default_factory=list)
    degenerate: bool = False


def _haag(a, b, c, d, e, f):
    return (
        (1.0 + a + b + e)
        * (1.0 + c.conjugate() + d.conjugate() + f.conjugate())
        * (1.0 + c * a.conjugate() + d * b.conjugate() + f * e.conjugate())
    )


def _rs_at(quad: Quadruple, e: complex, f: complex) -> tuple[complex, complex]:
    """Values at sample point f of the two expressions that are quadratic in
    f: realness defect of the triple product, and the triplet identity."""
    a, b, c, d = quad.values
    t = _haag(a, b, c, d, e, f)
    r = f * (t - t.conjugate())
    sig = 1.0 + a + b + e
    delta = 1.0 + c + d + f
    psi = 1.0 + c * a.conjugate() + d * b.conjugate() + f * e.conjugate()
    s = f * (t - 4.0 + abs(sig) ** 2 + abs(delta) ** 2 + abs(psi) ** 2)
    return r, s


def _fit3(v1: complex, vi: complex, vm: complex) -> tuple[complex, complex, complex]:
    c1 = 0.5 * (v1 - vm)
    even = 0.5 * (v1 + vm)
    diff = vi - 1j * c1
    return 0.5 * (even + diff), c1, 0.5 * (even - diff)


def quad_coeffs(quad: Quadruple, e: complex, tol: Tolerances | None = None) -> QuadCoeffs:
    """Recover the coefficients of both quadratics in f by interpolation.

    Samples at f = 1, i, -1 determine each quadratic; the held-out sample at
    f = -i must reproduce within 1e-8 of scale, otherwise the expressions
    were not quadratic and InterpolationError reports the bug.
    """
    del tol  # the guard bound is structural, not configurable
    samples = [_rs_at(quad, e, f) for f in _F_SAMPLES]
    guard_r, guard_s = _rs_at(quad, e, _F_GUARD)
    f1, f2, f3 = _fit3(*(s[0] for s in samples))
    g1, g2, g3 = _fit3(*(s[1] for s in samples))
    scale = max(
        1.0,
        *(abs(v) for pair in samples for v in pair),
        abs(guard_r),
        abs(guard_s),
    )
    res_r = abs(guard_r - (f1 - 1j * f2 - f3))
    res_s = abs(guard_s - (g1 - 1j * g2 - g3))
    if max(res_r, res_s) > 1e-8 * scale:
        raise InterpolationError(
            f"held-out sample residual {max(res_r, res_s):.3e} exceeds 1e-8*{scale:.3e}"
        )
    return QuadCoeffs(f1, f2, f3, g1, g2, g3)


def special_e(quad: Quadruple, tol: Tolerances | None = None) -> tuple[complex, bool]:
    """The unique e that can degenerate the first quadratic, and whether it
    lies on the unit circle (which switches the sextuple-selection branch)."""
    t = tol or DEFAULT_TOL
    a, b, c, d = quad.values
    num = a * a * b + a * a * d + a * b * b + a * d + b * b * c + b * c
    den = a * b * c + a * b * d + a * c + a + b * d + b
    if abs(den) <= t.tau_root:
        raise ZeroDenominatorError(f"special-value denominator |.| = {abs(den):.3e}")
    value = num / den
    return value, abs(abs(value) - 1.0) <= t.tau_u_verify


def _companion_from_coeffs(qc: QuadCoeffs, tol: Tolerances) -> complex:
    num = qc.f3 * qc.g1 - qc.f1 * qc.g3
    den = qc.f3 * qc.g2 - qc.f2 * qc.g3
    scale = max(1.0, abs(qc.f3 * qc.g2) + abs(qc.f2 * qc.g3))
    if abs(den) <= tol.tau_root * scale:
        raise DegenerateDenominatorError(
            f"companion cross products cancel: |den| = {abs(den):.3e}"
        )
    return -num / den


def companion(quad: Quadruple, e: complex, tol: Tolerances | None = None) -> complex:
    """The partner value f paired with e by the two quadratic constraints.

    Not guaranteed unimodular; |f| = 1 exactly when e is a root of the
    fundamental expression.  Raises DegenerateDenominatorError when both
    cross products vanish (the pairing is then non-unique and the caller
    falls back to solving the first quadratic directly).
    """
    t = tol or DEFAULT_TOL
    return _companion_from_coeffs(quad_coeffs(quad, e), t)


def companion_candidates(quad: Quadruple, e: complex,
                         tol: Tolerances | None = None) -> list[complex]:
    """Companion value(s) for e: the generic unique partner, or the roots of
    the first quadratic when the cross products cancel."""
    t = tol or DEFAULT_TOL
    qc = quad_coeffs(quad, e)
    try:
        return [_companion_from_coeffs(qc, t)]
    except DegenerateDenominatorError:
        fscale = max(1.0, abs(qc.f1), abs(qc.f2), abs(qc.f3))
        if abs(qc.f3) <= 1e-8 * fscale:
            if abs(qc.f2) <= 1e-8 * fscale:
                return []
            return [-qc.f1 / qc.f2]
        disc = cmath.sqrt(qc.f2 * qc.f2 - 4.0 * qc.f3 * qc.f1)
        return [(-qc.f2 + disc) / (2.0 * qc.f3), (-qc.f2 - disc) / (2.0 * qc.f3)]


def fundamental_value(quad: Quadruple, e: complex) -> float:
    """|F3*G1 - F1*G3|^2 - |F3*G2 - F2*G3|^2 at a unimodular e; real, and
    zero exactly when the companion of e is unimodular (or degenerate)."""
    a, b, c, d = quad.values
    return kernels.fundamental_point(a, b, c, d, complex(e))[0]


_DEGEN_FACTOR = 1e-2  # degenerate when max|value| <= tau_root * this * scale
_DIP_ACCEPT = 1e-1    # dip counts as a root when |value| <= tau_root * this * scale


def circle_roots(quad: Quadruple, tol: Tolerances | None = None) -> list[complex]:
    """All unimodular zeros of the fundamental expression.

    Uniform grid of tol.grid_m angles, bisection on sign changes, and a
    golden-section dip refinement for tangential (double) zeros; at most six
    zeros can exist, more raise NumericalAnomalyError.  A grid that vanishes
    everywhere (relative to the cross-product magnitude) raises
    DegenerateFamilyError: the seed admits a continuum of candidates and the
    finite construction does not apply.
    """
    t = tol or DEFAULT_TOL
    a, b, c, d = quad.values
    m = t.grid_m
    step = TWO_PI / m
    thetas = np.arange(m) * step
    vals, scales = kernels.fundamental_values(a, b, c, d, thetas)
    scale = max(1.0, float(scales.max()))
    if float(np.abs(vals).max()) <= _DEGEN_FACTOR * t.tau_root * scale:
        raise DegenerateFamilyError(
            "fundamental expression vanishes identically on the grid"
        )

    roots: list[float] = []

    exact = np.nonzero(vals == 0.0)[0]
    roots.extend(thetas[exact])

    nxt = np.roll(vals, -1)
    bracket = np.nonzero((vals < 0.0) != (nxt < 0.0))[0]
    bracket = bracket[(vals[bracket] != 0.0) & (nxt[bracket] != 0.0)]
    if bracket.size:
        lo = thetas[bracket]
        hi = lo + step
        flo = vals[bracket]
        for _ in range(60):
            mid = 0.5 * (lo + hi)
            fm, _ = kernels.fundamental_values(a, b, c, d, mid)
            same = (fm < 0.0) == (flo < 0.0)
            lo = np.where(same, mid, lo)
            flo = np.where(same, fm, flo)
            hi = np.where(same, hi, mid)
        roots.extend(0.5 * (lo + hi))

    # tangential zeros: |value| dips below sqrt(tau_root)*scale with no sign
    # change nearby; refine the dip and accept only if it reaches ~zero
    absv = np.abs(vals)
    is_min = (absv <= np.roll(absv, 1)) & (absv <= np.roll(absv, -1))
    is_min &= absv <= math.sqrt(t.tau_root) * scale
    near_bracket = np.zeros(m, dtype=bool)
    for k in bracket:
        for off in (-1, 0, 1):
            near_bracket[(k + off) % m] = True
    near_bracket[exact] = True
    dips = np.nonzero(is_min & ~near_bracket)[0]
    if dips.size:
        lo = thetas[dips] - step
        hi = thetas[dips] + step
        inv_gr = (math.sqrt(5.0) - 1.0) / 2.0
        for _ in range(80):
            width = hi - lo
            mc = hi - inv_gr * width
            md = lo + inv_gr * width
            fc, _ = kernels.fundamental_values(a, b, c, d, mc)
            fd, _ = kernels.fundamental_values(a, b, c, d, md)
            left = np.abs(fc) < np.abs(fd)
            hi = np.where(left, md, hi)
            lo = np.where(left, lo, mc)
        centers = 0.5 * (lo + hi)
        fv, _ = kernels.fundamental_values(a, b, c, d, centers)
        for theta, v in zip(centers, fv):
            if abs(v) <= _DIP_ACCEPT * t.tau_root * scale:
                roots.append(theta)

    # circular dedup within tau_root
    roots = sorted(th % TWO_PI for th in roots)
    merged: list[float] = []
    for th in roots:
        if merged and th - merged[-1] <= t.tau_root:
            continue
        merged.append(th)
    if len(merged) > 1 and (TWO_PI - merged[-1]) + merged[0] <= t.tau_root:
        merged.pop()
    if len(merged) > 6:
        raise NumericalAnomalyError(
            f"{len(merged)} circle roots exceed the degree bound of 6"
        )
    return [cmath.rect(1.0, th) for th in merged]


def _sextuple_ok(quad: Quadruple, s: Sextuple, tol: Tolerances) -> bool:
    a, b, c, d = quad.values
    for v in s.values:
        if abs(abs(v) - 1.0) > tol.tau_u_verify:
            return False
    top = abs(1.0 + a + b + s.e + s.s1 + s.s2)
    bot = abs(1.0 + c + d + s.f + s.s3 + s.s4)
    cross = abs(
        1.0
        + a * c.conjugate()
        + b * d.conjugate()
        + s.e * s.f.conjugate()
        + s.s1 * s.s3.conjugate()
        + s.s2 * s.s4.conjugate()
    )
    return max(top, bot, cross) <= tol.tau_orth


def build_solb(quad: Quadruple, tol: Tolerances | None = None) -> list[Sextuple]:
    """Candidate sextuples for the upper-right block.

    When the special value stays off the circle the roles of the three
    root/companion pairs are symmetric: every unordered root triplet with
    e + s1 + s2 = -1 - a - b is completed through companions.  When the
    special value is unimodular only e is taken from the roots; the rest is
    recovered by the decomposition formula with both sign trials.
    """
    t = tol or DEFAULT_TOL
    a, b, c, d = quad.values
    roots = circle_roots(quad, t)
    if not roots:
        return []
    try:
        _, special_unimodular = special_e(quad, t)
    except ZeroDenominatorError:
        special_unimodular = False

    out: list[Sextuple] = []
    if not special_unimodular:
        target = -(1.0 + a + b)
        for trip in itertools.combinations_with_replacement(roots, 3):
            if abs(trip[0] + trip[1] + trip[2] - target) > t.tau_orth:
                continue
            cand_lists = [companion_candidates(quad, e, t) for e in trip]
            for fs in itertools.product(*cand_lists):
                out.append(Sextuple(trip[0], trip[1], trip[2], fs[0], fs[1], fs[2]))
    else:
        for e in roots:
            qc = quad_coeffs(quad, e)
            fscale = max(1.0, abs(qc.f1), abs(qc.f2), abs(qc.f3))
            if abs(qc.f3) <= 1e-8 * fscale:
                continue  # the excluded value: first quadratic loses degree
            for f in companion_candidates(quad, e, t):
                if abs(abs(f) - 1.0) > t.tau_u_verify:
                    continue
                try:
                    comps = complete_triplet(a, b, e, c, d, f, tol=t)
                except NotCompletableError:
                    continue
                for s1, s2, s3, s4 in comps:
                    out.append(Sextuple(e, s1, s2, f, s3, s4))
    return [s for s in out if _sextuple_ok(quad, s, t)]


def build_solc(quad: Quadruple, tol: Tolerances | None = None) -> list[Sextuple]:
    """Candidate sextuples for the lower-left block: exactly build_solb on
    the transposed seed, with fields read as (g, t1, t2, h, t3, t4)."""
    return build_solb(quad.swapped(), tol)


def assemble(quad: Quadruple, rb: Sextuple, cb: Sextuple,
             tol: Tolerances | None = None) -> np.ndarray | Rejection:
    """Assemble one SOL_B x SOL_C pair into a full matrix, or explain why not.

    Checks mutual orthogonality of the first three rows and columns, inverts
    the upper-right block, fills the lower-right block by the unique unitary
    completion, and accepts exactly when that block is unimodular.
    """
    t = tol or DEFAULT_TOL
    e_block = quad.block()
    b_block = np.array(
        [[1, 1, 1], [rb.e, rb.s1, rb.s2], [rb.f, rb.s3, rb.s4]],
        dtype=np.complex128,
    )
    c_block = np.array(
        [[1, cb.e, cb.f], [1, cb.s1, cb.s3], [1, cb.s2, cb.s4]],
        dtype=np.complex128,
    )
    top = np.hstack([e_block, b_block])
    left = np.vstack([e_block, c_block])
    res_rows = np.abs(top @ top.conj().T - 6.0 * np.eye(3)).max()
    res_cols = np.abs(left.conj().T @ left - 6.0 * np.eye(3)).max()
    worst = float(max(res_rows, res_cols))
    if worst > t.tau_orth:
        return Rejection("non_orthogonal", worst)
    if abs(det3(b_block)) <= t.tau_root:
        return Rejection("singular_b", abs(det3(b_block)))
    d_block = -c_block @ adjoint(e_block) @ adjoint(inv3(b_block, t))
    dev = float(np.abs(np.abs(d_block) - 1.0).max())
    if dev > t.tau_u_verify:
        return Rejection("non_unimodular_d", dev)
    h = np.empty((6, 6), dtype=np.complex128)
    h[:3, :3] = e_block
    h[:3, 3:] = b_block
    h[3:, :3] = c_block
    h[3:, 3:] = d_block
    ok, residual = is_hadamard(h, t)
    if not ok:
        return Rejection("non_orthogonal", residual)
    return h


def dilate(quad: Quadruple, tol: Tolerances | None = None) -> DilationReport:
    """Run the whole pipeline on one seed; failures become diagnostics."""
    t = tol or DEFAULT_TOL
    report = DilationReport(seed=quad)

    ok, factors = canonical_condition(quad, t)
    if not ok:
        report.diagnostics.append(Diagnostic(
            "canonical_condition",
            f"seed rejected: min |factor| = {min(factors):.3e}",
        ))
        return report

    ok, lam = contraction_precheck(quad.block(), t)
    if not ok:
        report.diagnostics.append(Diagnostic(
            "contraction_precheck",
            f"lambda_max = {lam:.6f} exceeds 6; seed cannot embed",
        ))
        return report

    for side, builder in (("B", build_solb), ("C", build_solc)):
        try:
            sol = builder(quad, t)
        except DegenerateFamilyError as exc:
            report.degenerate = True
            report.diagnostics.append(Diagnostic(f"sol_{side.lower()}", str(exc)))
            return report
        if side == "B":
            report.sol_b = sol
        else:
            report.sol_c = sol
        if not sol:
            report.diagnostics.append(Diagnostic(
                f"sol_{side.lower()}",
                "no admissible sextuples; seed is not embeddable",
            ))
            return report

    for rb in report.sol_b:
        for cb in report.sol_c:
            result = assemble(quad, rb, cb, t)
            if isinstance(result, Rejection):
                report.rejections.append(result)
            else:
                report.matrices.append(result)
                report.classifications.append(classify_matrix(result, t))
    if not report.matrices:
        report.diagnostics.append(Diagnostic(
            "assemble", "no pair produced a unimodular completion",
        ))
    return report


def example_quadruple() -> Quadruple:
    """The closed-form worked seed (a, conj(a), c, a).

    Re(a) is the unique real zero of 4x^3 - 2x + 1 (negative discriminant,
    so one real root), Im(a) the positive value putting a on the circle, and
    c = (-a^3 + a^2 + a + 1)/(a^4 + a^3 + a^2 - a), which is automatically
    unimodular.
    """
    poly = lambda x: 4.0 * x**3 - 2.0 * x + 1.0
    lo, hi = -1.0, 0.0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if mid == lo or mid == hi:
            break
        if (poly(mid) < 0.0) == (poly(lo) < 0.0):
            lo = mid
        else:
            hi = mid
    x = 0.5 * (lo + hi)
    a = complex(x, math.sqrt(1.0 - x * x))
    c = (-a**3 + a**2 + a + 1.0) / (a**4 + a**3 + a**2 - a)
    return Quadruple(a, a.conjugate(), c, a)
