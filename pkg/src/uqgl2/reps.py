"""Highest-weight representations of multiparameter U_q gl(2).

A representation of dimension ``m`` is fixed by ``q``, the colour pair
``(sigma, g)`` with ``s = sigma**2`` and ``gamma = g**2``, and a split of the
products ``a_i b_i`` into raising (``a``) and lowering (``b``) coefficients.
The products satisfy

    a_i b_i = [i]_q (s^(m-1) q^(1-i) - s^(1-m) q^(i-1)) / (q - 1/q),

and a consistent module exists only when ``((s/q)^(2(m-1)) - 1) [m]_q = 0``.
The two factors give the two branches: generic ``q`` with pinned ``s``, or
``q`` a root of unity with ``s`` free.

Group-like elements used by the coproduct are written ``G(x, y)`` and stand
for ``(q^(-H/2) t^(J/2))^x u^(y J/2)``.  Their images only involve integer
powers of ``q``, ``sigma`` and ``g``, so no square-root branch is ever chosen
here.  The generators ``X+`` and ``X-`` are the tilde generators; the
parameter ``v`` has been absorbed and plays no further role.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Sequence

from .errors import (GaugeInconsistentError, MissingRawParametersError, NeitherBranchError,
                     QMismatchError, QSquaredOneError)
from .linalg import SquareMatrix, kron
from .rings import DEFAULT_TOL, QValue, as_q, q_integer, qval, root_of_unity, safe_div


class Branch(Enum):
    GENERIC = "generic"
    ROOT_OF_UNITY = "root_of_unity"


class GaugeMode(Enum):
    UNIT_A = "unit_a"
    BALANCED = "balanced"
    EXPLICIT = "explicit"


class Gen(Enum):
    H = "H"
    J = "J"
    XPLUS = "X+"
    XMINUS = "X-"


@dataclass(frozen=True)
class GaugeChoice:
    mode: GaugeMode = GaugeMode.UNIT_A
    a: tuple | None = None
    b: tuple | None = None

    @classmethod
    def explicit(cls, a: Sequence, b: Sequence | None = None) -> "GaugeChoice":
        return cls(GaugeMode.EXPLICIT, tuple(complex(x) for x in a),
                   None if b is None else tuple(complex(x) for x in b))


@dataclass(frozen=True)
class RawParams:
    """Original weights and multiparameters, kept for provenance and the twist."""

    mu: complex
    lam: complex
    t: complex
    u: complex


def _check_q(q, tol):
    q = qval(q)
    if abs(q * q - 1) <= tol:
        raise QSquaredOneError(f"q = {q!r} has q^2 = 1; the products a_i b_i diverge")
    return q


def classify_branch(m: int, q, sigma: complex, tol: float = DEFAULT_TOL) -> Branch:
    """Decide which highest-weight branch ``(m, q, sigma)`` belongs to.

    The generic label wins when both conditions hold.
    """
    qv = _check_q(q, tol)
    s = complex(sigma) ** 2
    if abs((s / qv) ** (2 * (m - 1)) - 1) <= tol:
        return Branch.GENERIC
    if abs(q_integer(m, qv, tol)) <= tol:
        return Branch.ROOT_OF_UNITY
    raise NeitherBranchError(
        f"m={m}, q={qv!r}, s={s!r}: (s/q)^{2 * (m - 1)} != 1 and [m]_q != 0")


def products_ab(m: int, q, sigma: complex, tol: float = DEFAULT_TOL) -> tuple[complex, ...]:
    """The sequence ``a_i b_i`` for ``i = 1 .. m-1``."""
    qv = _check_q(q, tol)
    sm = complex(sigma) ** (2 * (m - 1))
    return tuple(q_integer(i, qv, tol) * (sm * qv ** (1 - i) - qv ** (i - 1) / sm) / (qv - 1 / qv)
                 for i in range(1, m))


def apply_gauge(products: Sequence[complex], gauge: GaugeChoice | None = None,
                tol: float = DEFAULT_TOL) -> tuple[tuple, tuple]:
    """Split each product ``a_i b_i`` into the pair ``(a_i, b_i)``."""
    gauge = gauge or GaugeChoice()
    products = tuple(complex(p) for p in products)
    if gauge.mode is GaugeMode.UNIT_A:
        return (1.0 + 0j,) * len(products), products
    if gauge.mode is GaugeMode.BALANCED:
        roots = tuple(cmath.sqrt(p) for p in products)
        return roots, roots
    a = gauge.a
    if a is None or len(a) != len(products):
        raise GaugeInconsistentError(f"explicit gauge needs {len(products)} values of a")
    if gauge.b is None:
        return tuple(a), tuple(safe_div(p, x, tol) for p, x in zip(products, a))
    b = gauge.b
    if len(b) != len(products):
        raise GaugeInconsistentError(f"explicit gauge needs {len(products)} values of b")
    for i, (x, y, p) in enumerate(zip(a, b, products), 1):
        if abs(x * y - p) > tol * max(1.0, abs(p)):
            raise GaugeInconsistentError(f"a_{i} b_{i} = {x * y!r} but the algebra requires {p!r}")
    return tuple(a), tuple(b)


@dataclass(frozen=True)
class HighestWeightRep:
    """An ``m``-dimensional highest-weight module; build with :meth:`build` or :meth:`from_raw`."""

    m: int
    q: QValue
    sigma: complex
    g: complex
    a: tuple
    b: tuple
    branch: Branch
    gauge: GaugeMode = GaugeMode.UNIT_A
    raw: RawParams | None = None
    tol: float = field(default=DEFAULT_TOL, compare=False)

    def __post_init__(self):
        if self.m < 2:
            raise ValueError("representations need m >= 2")
        if len(self.a) != self.m - 1 or len(self.b) != self.m - 1:
            raise GaugeInconsistentError("a and b must have m - 1 entries")
        branch = classify_branch(self.m, self.q, self.sigma, self.tol)
        if branch is not self.branch and self.branch is Branch.GENERIC:
            raise NeitherBranchError("generic label requested but (s/q)^(2(m-1)) != 1")
        if self.branch is Branch.ROOT_OF_UNITY and abs(q_integer(self.m, self.q, self.tol)) > self.tol:
            raise NeitherBranchError("root-of-unity label requested but [m]_q != 0")
        for i, (x, y, p) in enumerate(zip(self.a, self.b, products_ab(self.m, self.q, self.sigma)), 1):
            if abs(x * y - p) > 1e-9 * max(1.0, abs(p)):
                raise GaugeInconsistentError(f"a_{i} b_{i} = {x * y!r}, expected {p!r}")

    @classmethod
    def build(cls, m: int, q, sigma: complex, g: complex = 1.0, gauge: GaugeChoice | None = None,
              tol: float = DEFAULT_TOL) -> "HighestWeightRep":
        q = as_q(q)
        sigma, g = complex(sigma), complex(g)
        if abs(g) <= tol:
            raise ValueError("g must be nonzero")
        branch = classify_branch(m, q, sigma, tol)
        gauge = gauge or GaugeChoice()
        a, b = apply_gauge(products_ab(m, q, sigma, tol), gauge, tol)
        return cls(m, q, sigma, g, a, b, branch, gauge.mode, None, tol)

    @classmethod
    def from_raw(cls, m: int, q, mu: complex, lam: complex, t: complex, u: complex,
                 gauge: GaugeChoice | None = None, tol: float = DEFAULT_TOL) -> "HighestWeightRep":
        """Build from ``(mu, lambda, t, u)`` using principal logarithms.

        ``(s/q)^(m-1) = q^mu t^-lambda`` and ``gamma = u^lambda``.
        """
        q = as_q(q)
        lq, lt, lu = cmath.log(q.value), cmath.log(t), cmath.log(u)
        log_s = lq + (mu * lq - lam * lt) / (m - 1)
        sigma = cmath.exp(0.5 * log_s)
        g = cmath.exp(0.5 * lam * lu)
        rep = cls.build(m, q, sigma, g, gauge, tol)
        return replace(rep, raw=RawParams(complex(mu), complex(lam), complex(t), complex(u)))

    @property
    def s(self) -> complex:
        return self.sigma ** 2

    @property
    def gamma(self) -> complex:
        return self.g ** 2

    @property
    def mu(self) -> complex:
        """Highest weight shift; zero when the module was built from colours only."""
        return self.raw.mu if self.raw else 0j

    @property
    def lam(self) -> complex:
        return self.raw.lam if self.raw else 0j

    def with_gauge(self, gauge: GaugeChoice) -> "HighestWeightRep":
        a, b = apply_gauge(products_ab(self.m, self.q, self.sigma, self.tol), gauge, self.tol)
        return replace(self, a=a, b=b, gauge=gauge.mode)


@dataclass(frozen=True)
class RepMatrices:
    """Images of the generators and of the group-like factors of the coproduct.

    ``k_minus`` is the image of ``q^(-H/2) t^(J/2)`` and ``k_plus`` its
    inverse; ``u_half`` is the scalar image of ``u^(J/2)``.
    """

    xplus: SquareMatrix
    xminus: SquareMatrix
    h: SquareMatrix
    j: SquareMatrix
    k_plus: SquareMatrix
    k_minus: SquareMatrix
    u_half: complex


def rep_matrices(rep: HighestWeightRep) -> RepMatrices:
    m, q = rep.m, rep.q.value
    return RepMatrices(
        xplus=SquareMatrix(m, {(i, i + 1): rep.a[i - 1] for i in range(1, m)}),
        xminus=SquareMatrix(m, {(i + 1, i): rep.b[i - 1] for i in range(1, m)}),
        h=SquareMatrix.diag([rep.mu + m - 2 * k + 1 for k in range(1, m + 1)]),
        j=SquareMatrix.identity(m, rep.lam),
        k_plus=SquareMatrix.diag([rep.sigma ** (m - 1) * q ** (1 - k) for k in range(1, m + 1)]),
        k_minus=SquareMatrix.diag([rep.sigma ** (1 - m) * q ** (k - 1) for k in range(1, m + 1)]),
        u_half=rep.g,
    )


# --------------------------------------------------------------------------
# Hopf structure on words
#
# Elements are tuples: ("1",), ("H",), ("J",), ("X+",), ("X-",) or
# ("G", x, y) for the group-like G(x, y).
# --------------------------------------------------------------------------

ONE = ("1",)


def gen_element(gen: Gen) -> tuple:
    return (gen.value,)


def grouplike(x: int, y: int) -> tuple:
    return ("G", x, y)


def element_image(rep: HighestWeightRep, elem: tuple) -> SquareMatrix:
    mats = rep_matrices(rep)
    kind = elem[0]
    if kind == "1":
        return SquareMatrix.identity(rep.m)
    if kind == "H":
        return mats.h
    if kind == "J":
        return mats.j
    if kind == "X+":
        return mats.xplus
    if kind == "X-":
        return mats.xminus
    if kind == "G":
        _, x, y = elem
        q = rep.q.value
        return SquareMatrix.diag([rep.sigma ** ((1 - rep.m) * x) * q ** ((k - 1) * x) * rep.g ** y
                                  for k in range(1, rep.m + 1)])
    raise ValueError(f"unknown element {elem!r}")


def coproduct_terms(elem: tuple) -> list[tuple[complex, tuple, tuple]]:
    kind = elem[0]
    if kind == "1":
        return [(1.0, ONE, ONE)]
    if kind in ("H", "J"):
        return [(1.0, elem, ONE), (1.0, ONE, elem)]
    if kind == "G":
        return [(1.0, elem, elem)]
    sign = 1 if kind == "X+" else -1
    return [(1.0, grouplike(1, sign), elem), (1.0, elem, grouplike(-1, -sign))]


def antipode_terms(elem: tuple, q) -> list[tuple[complex, tuple]]:
    """``S(X+) = -q X+``, ``S(X-) = -q^-1 X-``, ``S(G) = G^-1``, ``S(H) = -H``."""
    q = qval(q)
    kind = elem[0]
    if kind == "1":
        return [(1.0, ONE)]
    if kind in ("H", "J"):
        return [(-1.0, elem)]
    if kind == "G":
        return [(1.0, grouplike(-elem[1], -elem[2]))]
    return [(-q if kind == "X+" else -1 / q, elem)]


def counit(elem: tuple) -> complex:
    return 1.0 if elem[0] in ("1", "G") else 0.0


def _same_q(rep1: HighestWeightRep, rep2: HighestWeightRep, tol: float = DEFAULT_TOL):
    if abs(rep1.q.value - rep2.q.value) > tol:
        raise QMismatchError(f"representations use different q: {rep1.q.value!r} vs {rep2.q.value!r}")


def coproduct_image(rep1: HighestWeightRep, rep2: HighestWeightRep, gen: Gen,
                    opposite: bool = False) -> SquareMatrix:
    """Image of ``Delta(gen)`` (or the opposite coproduct) on ``rep1 (x) rep2``."""
    _same_q(rep1, rep2)
    out = SquareMatrix(rep1.m * rep2.m)
    for c, left, right in coproduct_terms(gen_element(gen)):
        if opposite:
            left, right = right, left
        out = out + kron(element_image(rep1, left), element_image(rep2, right)) * c
    return out


def antipode_image(rep: HighestWeightRep, gen: Gen) -> SquareMatrix:
    out = SquareMatrix(rep.m)
    for c, elem in antipode_terms(gen_element(gen), rep.q):
        out = out + element_image(rep, elem) * c
    return out


def admissible_roots(m: int, tol: float = DEFAULT_TOL) -> list[QValue]:
    """All ``q = exp(2 pi i k / 2m)`` with ``q^2 != 1``; each has ``[m]_q = 0``.

    Roots whose square has order strictly dividing ``m`` carry a warning.
    Representations exist there, but the R-matrix series is singular at them.
    """
    if m < 2:
        raise ValueError("m must be at least 2")
    out = []
    for k in range(1, 2 * m):
        if k == m:
            continue
        q = root_of_unity(k, 2 * m)
        assert abs(q_integer(m, q, tol)) <= 1e-9
        d = m // math.gcd(k, m)
        if d < m:
            q = replace(q, warning=f"non-primitive: q^2 has order {d} < m = {m}")
        out.append(q)
    return out


def require_raw(rep: HighestWeightRep) -> RawParams:
    if rep.raw is None:
        raise MissingRawParametersError("this operation needs (mu, lambda, t, u); build with from_raw")
    return rep.raw
