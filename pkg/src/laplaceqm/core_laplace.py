"""Canonical second-order form and its contour-integral kernel.

Every supported problem reduces to xi*Phi'' + beta*Phi' + (delta - lambda^2*xi)*Phi = 0,
whose solutions are contour integrals of e^{xi z} (z-lambda)^{a+-1} (z+lambda)^{a--1}.
This module owns the (beta, delta, lambda) data, the exponent pair, and the
single-valued integrand built from moduli and explicitly tracked phases.
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass


class DegenerateLambda(ValueError):
    """Coincident characteristic roots: lambda = 0 has no exponent pair."""


class BranchPointEvaluation(ValueError):
    """Integrand requested exactly at z = +-lambda with a divergent exponent."""


class Regime(enum.Enum):
    BOUND = "bound"
    CONTINUUM = "continuum"
    MORSE_CONTINUUM = "morse_continuum"


class CutLayout(enum.Enum):
    TWO_RAYS = "two_rays"
    CENTRAL_SEGMENT = "central_segment"
    SINGLE_RAY_POSITIVE = "single_ray_positive"
    SINGLE_RAY_NEGATIVE = "single_ray_negative"


@dataclass(frozen=True)
class CanonicalODE:
    """The (beta, delta, lambda) triple of the canonical equation.

    beta may be complex (the Morse continuum needs Re(beta) = 1 with an
    imaginary part carrying the wavenumber); delta is always real; lam is
    stored complex so the continuum's purely imaginary value fits the same
    slot as the bound problems' 1/2 or 1.
    """

    beta: complex
    delta: float
    lam: complex
    regime: Regime

    def __post_init__(self):
        if self.regime is Regime.BOUND:
            if abs(self.beta.imag) > 1e-12 or abs(self.lam.imag) > 1e-12:
                raise ValueError("bound regime requires real beta and lambda")
            if not (abs(self.lam.real - 0.5) < 1e-12 or abs(self.lam.real - 1.0) < 1e-12):
                raise ValueError("bound lambda must be 1/2 or 1")
        elif self.regime is Regime.CONTINUUM:
            if abs(self.lam.real) > 1e-12 or abs(abs(self.lam.imag) - 1.0) > 1e-12:
                raise ValueError("continuum lambda must be purely imaginary, |lambda| = 1")
        elif self.regime is Regime.MORSE_CONTINUUM:
            if abs(self.lam.imag) > 1e-12 or abs(self.lam.real - 0.5) > 1e-12:
                raise ValueError("morse continuum lambda must be the real 1/2")
            if abs(self.beta.real - 1.0) > 1e-12:
                raise ValueError("morse continuum requires Re(beta) = 1")


@dataclass(frozen=True)
class Exponents:
    alpha_plus: complex
    alpha_minus: complex


@dataclass(frozen=True)
class PhaseConvention:
    """Phase bookkeeping for the multivalued integrand.

    reference_point_phase is the full phase bundle of the integrand factors
    at the reference point with zero winding; winding angles supplied later
    multiply on top of it.
    """

    reference_point_phase: complex
    cut_layout: CutLayout


@dataclass(frozen=True)
class Polynomial:
    """Ascending complex coefficients."""

    coefficients: tuple

    def __call__(self, z):
        acc = 0j
        for c in reversed(self.coefficients):
            acc = acc * z + c
        return acc


def build_pq(ode: CanonicalODE):
    """The kernel pair: P(z) = beta*z + delta, Q(z) = z^2 - lambda^2."""
    p = Polynomial((complex(ode.delta), complex(ode.beta)))
    q = Polynomial((-ode.lam * ode.lam, 0j, 1.0 + 0j))
    return p, q


def exponents(ode: CanonicalODE) -> Exponents:
    """alpha_+- = (beta*lambda +- delta) / (2 lambda); their sum is beta."""
    if ode.lam == 0:
        raise DegenerateLambda("lambda = 0: characteristic roots coincide")
    two_lam = 2.0 * ode.lam
    return Exponents(
        alpha_plus=(ode.beta * ode.lam + ode.delta) / two_lam,
        alpha_minus=(ode.beta * ode.lam - ode.delta) / two_lam,
    )


def default_phase_convention(ode: CanonicalODE) -> PhaseConvention:
    """Reference phases at the conventional starting point of each layout.

    Continuum: dog-bone around the segment joining -lambda and +lambda,
    reference point on its right edge at the origin, where both moduli are 1
    and the factor phases combine to exp(-pi*delta/2). Bound problems cut
    along two real rays; the Morse ray keeps a single cut on the positive
    side. For those the reference is the principal-phase value at z = 0.
    """
    exps = exponents(ode)
    if ode.regime is Regime.CONTINUUM:
        return PhaseConvention(
            reference_point_phase=cmath.exp(
                0.5j * math.pi * (exps.alpha_minus - exps.alpha_plus)
            ),
            cut_layout=CutLayout.CENTRAL_SEGMENT,
        )
    layout = (
        CutLayout.TWO_RAYS if ode.regime is Regime.BOUND else CutLayout.SINGLE_RAY_POSITIVE
    )
    # at z=0: |z -+ lambda| = |lambda|, arg(z - lambda) = pi, arg(z + lambda) = 0
    mod = abs(ode.lam)
    phase = cmath.exp(
        (exps.alpha_plus - 1.0) * (math.log(mod) + 1j * math.pi)
        + (exps.alpha_minus - 1.0) * math.log(mod)
    )
    return PhaseConvention(reference_point_phase=phase, cut_layout=layout)


def integrand(
    ode: CanonicalODE,
    exps: Exponents,
    convention: PhaseConvention,
    xi: float,
    z: complex,
    phases=(0.0, 0.0),
) -> complex:
    """Single-valued integrand value at z with explicit winding angles.

    phases = (phi1, phi2) are winding angles accumulated from the reference
    point: phi1 multiplies the (z + lambda) factor, phi2 the (z - lambda)
    one. Moduli are raised to the full complex exponents as
    m^(a+ib) = m^a * e^{i b ln m} on the positive real m.
    """
    phi1, phi2 = phases
    m2 = abs(z - ode.lam)
    m1 = abs(z + ode.lam)
    for mod, alpha in ((m2, exps.alpha_plus), (m1, exps.alpha_minus)):
        if mod == 0.0:
            if (alpha - 1.0).real < 0.0:
                raise BranchPointEvaluation(
                    "integrand evaluated at a branch point with divergent exponent"
                )
            return 0j
    value = cmath.exp(
        xi * z
        + (exps.alpha_plus - 1.0) * (math.log(m2) + 1j * phi2)
        + (exps.alpha_minus - 1.0) * (math.log(m1) + 1j * phi1)
    )
    return value * convention.reference_point_phase
