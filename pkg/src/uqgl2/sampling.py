"""Seeded random draws of admissible parameters, shared by tests and sweeps."""
from __future__ import annotations

import cmath
import math

import numpy as np

from .reps import Branch, GaugeChoice, HighestWeightRep, admissible_roots, products_ab
from .rings import QValue, q_brace_factorial

ANNULUS = (0.5, 2.0)


def random_annulus(rng: np.random.Generator, lo: float = ANNULUS[0], hi: float = ANNULUS[1]) -> complex:
    """Uniform phase, modulus uniform in ``[lo, hi]``."""
    return complex(cmath.rect(rng.uniform(lo, hi), rng.uniform(0, 2 * math.pi)))


def random_generic_q(m: int, rng: np.random.Generator, margin: float = 0.05) -> QValue:
    """A ``q`` on the annulus kept away from the low-order roots of unity."""
    while True:
        q = random_annulus(rng)
        if abs(q * q - 1) < margin:
            continue
        if all(abs(q_brace_factorial(n, q)) > margin for n in range(1, m + 1)):
            return QValue(q)


def primitive_roots(m: int) -> list[QValue]:
    """Admissible roots of unity at which the R-matrix series is regular."""
    return [q for q in admissible_roots(m) if q.warning is None]


def generic_sigma(m: int, q: complex, rng: np.random.Generator) -> complex:
    """``sigma`` with ``s/q`` a random ``2(m-1)``-th root of unity and a random sign."""
    n = 2 * (m - 1)
    zeta = cmath.exp(2j * math.pi * rng.integers(n) / n)
    return complex(rng.choice([-1, 1]) * cmath.sqrt(q * zeta))


def random_rep(m: int, branch: Branch, rng: np.random.Generator, q: QValue | None = None,
               gauge: GaugeChoice | None = None) -> HighestWeightRep:
    """One random colour on the requested branch; ``q`` is drawn when not given."""
    if branch is Branch.GENERIC:
        q = q or random_generic_q(m, rng)
        sigma = generic_sigma(m, q.value, rng)
    else:
        if q is None:
            roots = primitive_roots(m)
            q = roots[rng.integers(len(roots))]
        sigma = cmath.sqrt(random_annulus(rng))
    # s = sigma^2 and gamma = g^2 are the quantities drawn from the annulus
    return HighestWeightRep.build(m, q, sigma, cmath.sqrt(random_annulus(rng)), gauge)


def random_colors(m: int, branch: Branch, rng: np.random.Generator, n: int = 3) -> list[HighestWeightRep]:
    """``n`` independent colours sharing one ``q``."""
    first = random_rep(m, branch, rng)
    return [first] + [random_rep(m, branch, rng, q=first.q) for _ in range(n - 1)]


def random_gauge_choice(m: int, q, sigma: complex, rng: np.random.Generator) -> GaugeChoice:
    a = [random_annulus(rng) for _ in range(m - 1)]
    return GaugeChoice.explicit(a, [p / x for p, x in zip(products_ab(m, q, sigma), a)])
