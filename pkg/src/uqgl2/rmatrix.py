"""R-matrices from pairs of highest-weight representations.

For representations ``pi_1`` (dimension ``m1``, colour ``(sigma, g)``) and
``pi_2`` (dimension ``m2``, colour ``(sigma', g')``) the image of the
universal R-matrix is, up to a scalar that is always dropped,

    R = sum_n (1-q^2)^n / {n}_{q^2}! * q^n * (sigma^(m1-1) sigma'^(m2-1))^n (g/g')^n
          * sum_{i,j} q^(-2(i-1)(j-1) - n(i+j)) (s'^(m2-1)/gamma')^i (s^(m1-1) gamma)^j
          * (a'_j b_i) ... (a'_{j+n-1} b_{i+n-1})  e_{i+n,i} (x) e_{j,j+n}

with ``i <= m1 - n``, ``j <= m2 - n`` and the empty product equal to one.
The sum stops at ``n = min(m1, m2) - 1`` because higher powers of the
raising and lowering matrices vanish.
"""
from __future__ import annotations

import cmath
from dataclasses import dataclass, replace
from enum import Enum
from typing import Sequence

from .errors import (BranchMismatchError, DimensionMismatchError, NonPrimitiveRootError,
                     ProductConstraintError, QMismatchError)
from .linalg import SquareMatrix, flip_matrix, inverse
from .reps import Branch, GaugeMode, HighestWeightRep, require_raw
from .rings import DEFAULT_TOL, LaurentPoly, close, q_brace_factorial, q_integer, qval

DROPPED_NOTE = ("scalar prefactor f(mu, lambda; mu', lambda') dropped; "
                "it carries the q^(-mu mu'/2), t- and u-weight factors and half-integer powers")


class Method(Enum):
    SERIES = "series"
    CLOSED_M2 = "closed_m2"
    CLOSED_M3 = "closed_m3"
    VARIANT = "variant"
    TWIST = "twist"


class Variant(Enum):
    BAR = "bar"        # flip of the inverse
    PLUS = "plus"      # flip of R
    MINUS = "minus"    # inverse


@dataclass(frozen=True)
class RMatrixResult:
    matrix: SquareMatrix
    method: Method
    colors: tuple
    normalization_note: str
    dims: tuple[int, int]
    reps: tuple = ()
    variables: tuple = ()

    @property
    def dim(self) -> int:
        return self.matrix.dim


def _pair(rep1: HighestWeightRep, rep2: HighestWeightRep | None, tol: float):
    rep2 = rep1 if rep2 is None else rep2
    if abs(rep1.q.value - rep2.q.value) > tol:
        raise QMismatchError(f"q differs between colours: {rep1.q.value!r} vs {rep2.q.value!r}")
    q = rep1.q.value
    top = min(rep1.m, rep2.m)
    for n in range(1, top):
        if abs(q_brace_factorial(n, q, tol)) <= tol:
            raise NonPrimitiveRootError(
                f"{{{n}}}_{{q^2}}! vanishes at q = {q!r}: q^2 has order below m, the series is singular")
    return rep2, q


def _position(i: int, j: int, n: int, m2: int) -> tuple[int, int]:
    """Matrix position of ``e_{i+n,i} (x) e_{j,j+n}``."""
    return (i + n - 1) * m2 + j, (i - 1) * m2 + j + n


def build_r_series(rep1: HighestWeightRep, rep2: HighestWeightRep | None = None,
                   tol: float = DEFAULT_TOL) -> RMatrixResult:
    """Coloured (or, with one representation, uncoloured) R-matrix by the truncated series."""
    rep2, q = _pair(rep1, rep2, tol)
    m1, m2 = rep1.m, rep2.m
    s1, s2 = rep1.s, rep2.s
    row_base = s2 ** (m2 - 1) / rep2.gamma
    col_base = s1 ** (m1 - 1) * rep1.gamma
    half = rep1.sigma ** (m1 - 1) * rep2.sigma ** (m2 - 1) * rep1.g / rep2.g
    entries = {}
    for n in range(min(m1, m2)):
        coef = (1 - q * q) ** n / q_brace_factorial(n, q, tol) * q ** n * half ** n
        for i in range(1, m1 - n + 1):
            for j in range(1, m2 - n + 1):
                prod = 1
                for r in range(n):
                    prod *= rep2.a[j + r - 1] * rep1.b[i + r - 1]
                value = coef * q ** (-2 * (i - 1) * (j - 1) - n * (i + j)) * row_base ** i * col_base ** j
                if n:
                    value *= prod
                entries[_position(i, j, n, m2)] = value
    return RMatrixResult(SquareMatrix(m1 * m2, entries), Method.SERIES,
                         ((rep1.sigma, rep1.g), (rep2.sigma, rep2.g)), DROPPED_NOTE, (m1, m2),
                         (rep1, rep2))


# --------------------------------------------------------------------------
# exact (polynomial in the colours) construction
# --------------------------------------------------------------------------

def _symbolic_products(rep: HighestWeightRep, sig: str, variables: tuple) -> list:
    """``a_i b_i`` as Laurent polynomials in ``sig`` (only for free-sigma colours)."""
    m, q = rep.m, rep.q.value
    out = []
    for i in range(1, m):
        k = q_integer(i, q) / (q - 1 / q)
        out.append(LaurentPoly.monomial(variables, {sig: 2 * (m - 1)}, k * q ** (1 - i))
                   - LaurentPoly.monomial(variables, {sig: -2 * (m - 1)}, k * q ** (i - 1)))
    return out


def build_r_series_exact(rep1: HighestWeightRep, rep2: HighestWeightRep | None = None,
                         names1: tuple[str, str] = ("sigma", "g"),
                         names2: tuple[str, str] | None = None,
                         variables: Sequence[str] | None = None,
                         tol: float = DEFAULT_TOL) -> RMatrixResult:
    """Series R-matrix with Laurent-polynomial entries in the colour variables.

    ``g`` is always symbolic.  ``sigma`` is symbolic for root-of-unity colours
    and substituted numerically for generic colours, whose ``sigma`` is pinned.
    Only the unit-a gauge is available, since other splits are not Laurent
    polynomial in ``sigma``.
    """
    colored = rep2 is not None
    rep2, q = _pair(rep1, rep2, tol)
    if names2 is None:
        names2 = ("sigma'", "g'") if colored else names1
    if variables is None:
        variables = tuple(dict.fromkeys(names1 + names2))
    variables = tuple(variables)
    for rep in (rep1, rep2):
        if rep.gauge is not GaugeMode.UNIT_A:
            raise ValueError("exact construction needs the unit-a gauge")
    m1, m2 = rep1.m, rep2.m

    def sigma_power(rep, name, e):
        if rep.branch is Branch.ROOT_OF_UNITY:
            return LaurentPoly.monomial(variables, {name: e})
        return LaurentPoly.constant(variables, rep.sigma ** e)

    def g_power(name, e):
        return LaurentPoly.monomial(variables, {name: e})

    (sg1, g1), (sg2, g2) = names1, names2
    if rep1.branch is Branch.ROOT_OF_UNITY:
        b = _symbolic_products(rep1, sg1, variables)
    else:
        b = [LaurentPoly.constant(variables, x) for x in rep1.b]

    entries = {}
    for n in range(min(m1, m2)):
        coef = (1 - q * q) ** n / q_brace_factorial(n, q, tol) * q ** n
        half = (sigma_power(rep1, sg1, (m1 - 1) * n) * sigma_power(rep2, sg2, (m2 - 1) * n)
                * g_power(g1, n) * g_power(g2, -n))
        for i in range(1, m1 - n + 1):
            for j in range(1, m2 - n + 1):
                value = half * (coef * q ** (-2 * (i - 1) * (j - 1) - n * (i + j)))
                value = value * sigma_power(rep2, sg2, 2 * (m2 - 1) * i) * g_power(g2, -2 * i)
                value = value * sigma_power(rep1, sg1, 2 * (m1 - 1) * j) * g_power(g1, 2 * j)
                for r in range(n):
                    value = value * b[i + r - 1]
                entries[_position(i, j, n, m2)] = value
    return RMatrixResult(SquareMatrix(m1 * m2, entries), Method.SERIES,
                         ((rep1.sigma, rep1.g), (rep2.sigma, rep2.g)), DROPPED_NOTE, (m1, m2),
                         (rep1, rep2), variables)


def evaluate_matrix(mat: SquareMatrix, point) -> SquareMatrix:
    """Substitute numbers for the variables of a polynomial matrix."""
    return mat.map(lambda v: v.evaluate(point) if isinstance(v, LaurentPoly) else v)


# --------------------------------------------------------------------------
# closed forms
# --------------------------------------------------------------------------

def build_r_closed_m2(q, s: complex, gamma: complex, branch: Branch,
                      tol: float = DEFAULT_TOL) -> RMatrixResult:
    """The two 4x4 solutions: generic ``(s = +-q)`` or root of unity ``(q^2 = -1)``."""
    q = qval(q)
    s, gamma = complex(s), complex(gamma)
    if branch is Branch.GENERIC:
        if not (close(s * s, q * q, tol)):
            raise BranchMismatchError(f"generic m=2 solution needs s = +-q, got s={s!r}, q={q!r}")
        last = 1 / s
    else:
        if not close(q * q, -1, tol):
            raise BranchMismatchError(f"root-of-unity m=2 solution needs q^2 = -1, got q={q!r}")
        last = -s
    mat = SquareMatrix(4, {(1, 1): 1 / s, (2, 2): gamma, (3, 2): 1 / s - s, (3, 3): 1 / gamma,
                           (4, 4): last})
    return RMatrixResult(mat, Method.CLOSED_M2, ((None, None),), "overall q, t, u weight factor dropped",
                         (2, 2))


def build_r_closed_m3(q, s: complex, gamma: complex, a1b2: complex, a2b1: complex,
                      tol: float = DEFAULT_TOL) -> RMatrixResult:
    """The 9x9 block solution for ``m = 3`` (lower block triangular, 3x3 blocks)."""
    q = qval(q)
    s, gamma = complex(s), complex(gamma)
    if abs(q * q - 1) <= tol:
        raise BranchMismatchError("q^2 = 1 is excluded")
    p1 = q_integer(1, q) * (s ** 2 - s ** -2) / (q - 1 / q)
    p2 = q_integer(2, q) * (s ** 2 / q - q / s ** 2) / (q - 1 / q)
    if not close(a1b2 * a2b1, p1 * p2, 1e-9):
        raise ProductConstraintError(
            f"(a1 b2)(a2 b1) = {a1b2 * a2b1!r} must equal (a1 b1)(a2 b2) = {p1 * p2!r}")
    q2 = q * q
    blocks = {
        (0, 0): {(1, 1): q2 / s ** 4, (2, 2): q2 * gamma / s ** 2, (3, 3): q2 * gamma ** 2},
        (1, 1): {(1, 1): q2 / (s ** 2 * gamma), (2, 2): 1, (3, 3): s ** 2 * gamma / q2},
        (2, 2): {(1, 1): q2 / gamma ** 2, (2, 2): s ** 2 / (q2 * gamma), (3, 3): s ** 4 / q2 ** 3},
        (1, 0): {(1, 2): q2 * (s ** -4 - 1), (2, 3): (1 - q2) * gamma * a2b1},
        (2, 1): {(1, 2): (1 - q2) / gamma * a1b2, (2, 3): (1 + 1 / q2) * (1 - s ** 4 / q2)},
        (2, 0): {(1, 3): (s ** -4 - 1) * (q2 - s ** 4)},
    }
    entries = {}
    for (bi, bj), block in blocks.items():
        for (r, c), v in block.items():
            entries[(3 * bi + r, 3 * bj + c)] = v
    return RMatrixResult(SquareMatrix(9, entries), Method.CLOSED_M3, ((None, None),),
                         "overall q^(-mu^2/2) t^(lambda mu) factor dropped", (3, 3))


def ratio_normalize(mat: SquareMatrix) -> SquareMatrix:
    """Scale so that the (1, 1) entry is one."""
    return mat / mat[1, 1]


# --------------------------------------------------------------------------
# diagonal part, variants, twist
# --------------------------------------------------------------------------

def r0_diagonal(rep1: HighestWeightRep, rep2: HighestWeightRep | None = None,
                tol: float = DEFAULT_TOL) -> SquareMatrix:
    """The Cartan factor, normalised exactly like :func:`build_r_series`."""
    rep2 = rep1 if rep2 is None else rep2
    if abs(rep1.q.value - rep2.q.value) > tol:
        raise QMismatchError("q differs between colours")
    q = rep1.q.value
    row_base = rep2.s ** (rep2.m - 1) / rep2.gamma
    col_base = rep1.s ** (rep1.m - 1) * rep1.gamma
    return SquareMatrix.diag([q ** (-2 * (k - 1) * (l - 1)) * row_base ** k * col_base ** l
                              for k in range(1, rep1.m + 1) for l in range(1, rep2.m + 1)])


def _weights(rep: HighestWeightRep) -> list[complex]:
    raw = require_raw(rep)
    return [raw.mu + rep.m - 2 * k + 1 for k in range(1, rep.m + 1)]


def r0_diagonal_raw(rep1: HighestWeightRep, rep2: HighestWeightRep | None = None) -> SquareMatrix:
    """The Cartan factor from raw weights, without dropping anything.

    Its ``t`` exponent is symmetric under exchanging the legs and its ``u``
    exponent antisymmetric.
    """
    rep2 = rep1 if rep2 is None else rep2
    r1, r2 = require_raw(rep1), require_raw(rep2)
    lq, lt, lu = cmath.log(rep1.q.value), cmath.log(r1.t), cmath.log(r1.u)
    out = []
    for h in _weights(rep1):
        for h2 in _weights(rep2):
            out.append(cmath.exp(-0.5 * h * h2 * lq + 0.5 * (h * r2.lam + r1.lam * h2) * lt
                                 + 0.5 * (h * r2.lam - r1.lam * h2) * lu))
    return SquareMatrix.diag(out)


def variant(r: SquareMatrix, which: Variant, m1: int, m2: int | None = None,
            tol: float = DEFAULT_TOL) -> SquareMatrix:
    """Bar: ``P R^-1 P``; Plus: ``P R P``; Minus: ``R^-1``."""
    m2 = m1 if m2 is None else m2
    if r.dim != m1 * m2:
        raise DimensionMismatchError(f"matrix dim {r.dim} != {m1}*{m2}")
    which = Variant(which)
    if which is Variant.MINUS:
        return inverse(r, tol)
    if m1 != m2:
        raise DimensionMismatchError("flip variants need equal leg dimensions")
    p = flip_matrix(m1)
    inner = r if which is Variant.PLUS else inverse(r, tol)
    return p @ inner @ p


def twist_element(rep1: HighestWeightRep, rep2: HighestWeightRep) -> SquareMatrix:
    """Image of ``F = u^(-(H(x)J - J(x)H)/4)`` on ``rep1 (x) rep2``."""
    r1, r2 = require_raw(rep1), require_raw(rep2)
    if not close(r1.u, r2.u) or not close(r1.t, r2.t):
        raise ValueError("both representations must share t and u")
    lu = cmath.log(r1.u)
    return SquareMatrix.diag([cmath.exp(-0.25 * lu * (h * r2.lam - r1.lam * h2))
                              for h in _weights(rep1) for h2 in _weights(rep2)])


def untwisted_reps(rep1: HighestWeightRep, rep2: HighestWeightRep):
    """The same modules at ``u = 1`` (so ``gamma = gamma' = 1``)."""
    out = []
    for rep in (rep1, rep2):
        raw = require_raw(rep)
        out.append(replace(rep, g=1.0 + 0j, raw=replace(raw, u=1.0 + 0j)))
    return tuple(out)


def twist_conjugate(rep1: HighestWeightRep, rep2: HighestWeightRep | None = None,
                    tol: float = DEFAULT_TOL) -> tuple[SquareMatrix, SquareMatrix]:
    """Return ``(R_single, F^-1 R_single F^-1)`` where ``R_single`` has ``u = 1``."""
    rep2 = rep1 if rep2 is None else rep2
    single = build_r_series(*untwisted_reps(rep1, rep2), tol=tol).matrix
    f_inv = twist_element(rep1, rep2).map(lambda v: 1 / v)
    return single, f_inv @ single @ f_inv


def twist_scalar(rep1: HighestWeightRep, rep2: HighestWeightRep | None = None) -> complex:
    """Scalar ``c`` with ``F^-1 R_single F^-1 = c * build_r_series(rep1, rep2)``."""
    rep2 = rep1 if rep2 is None else rep2
    r1, r2 = require_raw(rep1), require_raw(rep2)
    lu = cmath.log(r1.u)
    expo = (0.5 * (r1.mu * r2.lam - r1.lam * r2.mu) + 0.5 * (rep1.m + 1) * r2.lam
            - 0.5 * (rep2.m + 1) * r1.lam)
    return cmath.exp(lu * expo)
