"""Orthogonality theory of dephased row triplets.

A triplet here is the all-ones row together with two partial rows
(1, a, b, e, s1, s2) and (1, c, d, f, s3, s4) of unimodular entries.  The
module computes the partial-sum statistics, the triple product whose realness
characterizes completable rows, the realizability residual, and the explicit
completion with all of its sign and degenerate branches.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .core import (
    DEFAULT_TOL,
    NotCompletableError,
    SigmaTooLargeError,
    Tolerances,
)

Completion = tuple[complex, complex, complex, complex]


@dataclass(frozen=True)
class TripletStats:
    """Partial-sum invariants of a row triplet.

    sigma = 1+a+b+e and delta = 1+c+d+f are the leading partial sums of the
    two rows, psi = 1+c*conj(a)+d*conj(b)+f*conj(e) the cross sum, and haag
    the triple product sigma * conj(delta) * psi.
    """

    sigma: complex
    delta: complex
    psi: complex
    haag: complex


@dataclass(frozen=True)
class PsiBranch:
    """Admissible |psi| magnitudes for given |sigma|, |delta| and the real
    triple product; branch records which closed form produced them."""

    magnitudes: tuple[float, ...]
    branch: str

    def __post_init__(self) -> None:
        for m in self.magnitudes:
            if not 0.0 <= m <= 2.0:
                raise ValueError(f"|psi| candidate out of [0, 2]: {m}")


def triplet_stats(a, b, c, d, e, f) -> TripletStats:
    sigma = 1.0 + a + b + e
    delta = 1.0 + c + d + f
    psi = 1.0 + c * a.conjugate() + d * b.conjugate() + f * e.conjugate()
    return TripletStats(sigma, delta, psi, sigma * delta.conjugate() * psi)


def haagerup_poly(a, b, c, d, e, f) -> complex:
    """Triple product (1+a+b+e)(1+conj(c+d+f))(1+c*conj(a)+d*conj(b)+f*conj(e)).

    Real whenever the two rows extend to a mutually orthogonal triplet.
    """
    return (
        (1.0 + a + b + e)
        * (1.0 + c.conjugate() + d.conjugate() + f.conjugate())
        * (1.0 + c * a.conjugate() + d * b.conjugate() + f * e.conjugate())
    )


def triplet_residual(a, b, c, d, e, f, tol: Tolerances | None = None) -> tuple[float, bool]:
    """Deviation from the completability identity, and whether the triple
    product respects the |.| <= 8 bound."""
    t = tol or DEFAULT_TOL
    st = triplet_stats(a, b, c, d, e, f)
    target = 4.0 - abs(st.sigma) ** 2 - abs(st.delta) ** 2 - abs(st.psi) ** 2
    res = abs(st.haag - target)
    ni_ok = abs(st.haag) <= 8.0 + t.tau_orth
    return res, ni_ok


def decomposition(sigma: complex, free_phase: float = 0.0,
                  tol: Tolerances | None = None) -> tuple[complex, complex]:
    """The unimodular pair (s1, s2) with s1 + s2 = -sigma.

    s1 carries the '+' square-root branch.  When sigma vanishes (within
    tau_orth) the pair is exp(i*free_phase), -exp(i*free_phase).
    """
    t = tol or DEFAULT_TOL
    sigma = complex(sigma)
    r = abs(sigma)
    if r > 2.0 + t.tau_orth:
        raise SigmaTooLargeError(f"|sigma| = {r:.6f} > 2; row cannot be completed")
    if r <= t.tau_orth:
        s1 = cmath.rect(1.0, free_phase)
        return s1, -s1
    u = sigma / r
    if r >= 2.0:
        # pinned case |sigma| = 2 within tolerance: both values -sigma/|sigma|
        return -u, -u
    root = math.sqrt(1.0 - 0.25 * r * r)
    s1 = -0.5 * sigma + 1j * u * root
    s2 = -0.5 * sigma - 1j * u * root
    return s1, s2


def psi_candidates(abs_sigma: float, abs_delta: float, haag: float,
                   tol: Tolerances | None = None) -> PsiBranch:
    """Possible |psi| values compatible with |sigma|, |delta| and the (real)
    triple product.  Empty magnitudes signal an unrealizable triplet."""
    t = tol or DEFAULT_TOL
    s2 = abs_sigma * abs_sigma
    d2 = abs_delta * abs_delta
    disc = (4.0 - s2) * (4.0 - d2)
    if disc < 0.0:
        # exactly one of the two sums exceeds 2: no unimodular completion
        return PsiBranch((), "none")
    if abs_sigma > 2.0 and abs_delta > 2.0:
        # would force |psi| > 2, violating the |triple product| <= 8 bound
        return PsiBranch((), "none")
    root = math.sqrt(disc)
    prod = abs_sigma * abs_delta
    if haag >= 0.0:
        m = 0.5 * (-prod + root)
        if m < -t.tau_orth:
            return PsiBranch((), "ps1")
        return PsiBranch((min(max(m, 0.0), 2.0),), "ps1")
    if s2 + d2 <= 4.0:
        return PsiBranch((min(0.5 * (prod + root), 2.0),), "ps2")
    mags = []
    for m in (0.5 * (prod - root), 0.5 * (prod + root)):
        if -t.tau_orth <= m <= 2.0 + t.tau_orth:
            mags.append(min(max(m, 0.0), 2.0))
    return PsiBranch(tuple(mags), "ps3")


def _completion_residuals(a, b, e, c, d, f, comp: Completion) -> float:
    s1, s2, s3, s4 = comp
    r_top = abs(1.0 + a + b + e + s1 + s2)
    r_bot = abs(1.0 + c + d + f + s3 + s4)
    cross = (
        1.0
        + a * c.conjugate()
        + b * d.conjugate()
        + e * f.conjugate()
        + s1 * s3.conjugate()
        + s2 * s4.conjugate()
    )
    return max(r_top, r_bot, abs(cross))


def complete_triplet(a, b, e, c, d, f, free_phase: float = 0.0,
                     tol: Tolerances | None = None) -> list[Completion]:
    """All unimodular (s1, s2, s3, s4) making the triplet mutually orthogonal.

    Raises NotCompletableError when the realizability identity fails or when
    no sign choice meets the orthogonality tolerance.  Both sign choices are
    returned when both verify.
    """
    t = tol or DEFAULT_TOL
    res, ni_ok = triplet_residual(a, b, c, d, e, f, t)
    if res > t.tau_orth or not ni_ok:
        raise NotCompletableError(
            f"triplet not realizable: identity residual {res:.3e}, bound ok {ni_ok}"
        )
    st = triplet_stats(a, b, c, d, e, f)
    sigma, delta, psi = st.sigma, st.delta, st.psi
    small = t.tau_orth
    candidates: list[Completion] = []

    if abs(sigma) <= small and abs(delta) <= small:
        s1 = cmath.rect(1.0, free_phase)
        if abs(psi) <= small:
            raise NotCompletableError("sigma = delta = 0 requires |psi| = 2, got ~0")
        s3 = -psi * s1 / abs(psi)  # |psi| = 2 by the identity; normalized form
        candidates.append((s1, -s1, s3, -s3))
    elif abs(delta) <= small:
        s1, s2 = decomposition(sigma, free_phase, t)
        if abs(psi) <= small:
            s3 = cmath.rect(1.0, free_phase)  # |sigma| = 2 forces psi = 0
        else:
            s3 = -1j * sigma * psi / (abs(sigma) * abs(psi))
        candidates.append((s1, s2, s3, -s3))
    elif abs(sigma) <= small:
        s3, s4 = decomposition(delta, free_phase, t)
        if abs(psi) <= small:
            s1 = cmath.rect(1.0, free_phase)  # mirrored pinned case |delta| = 2
        else:
            s1 = -(psi / (s3 - s4)).conjugate()
        candidates.append((s1, -s1, s3, s4))
    else:
        s1, s2 = decomposition(sigma, 0.0, t)
        s3, s4 = decomposition(delta, 0.0, t)
        # the sign split between s3 and s4 is not known a priori: try both
        candidates.append((s1, s2, s3, s4))
        candidates.append((s1, s2, s4, s3))

    out = [
        comp
        for comp in candidates
        if _completion_residuals(a, b, e, c, d, f, comp) <= t.tau_orth
    ]
    if not out:
        raise NotCompletableError("no sign choice meets the orthogonality tolerance")
    return out
