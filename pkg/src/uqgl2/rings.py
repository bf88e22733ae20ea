"""Coefficient rings: q-numbers, roots of unity and Laurent polynomials.

Numbers are plain Python ``complex`` values.  Comparisons go through
:func:`close`, which uses the single tolerance rule
``|a - b| <= tol * max(1, |a|, |b|)``.

Only the colour variables (``sigma``, ``g`` and their primed copies) are ever
symbolic; ``q`` is always numeric.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Iterable, Mapping, Union

from .errors import EvaluationError, ScalarDivisionError, VariableMismatchError

Scalar = complex

DEFAULT_TOL = 1e-12
RESIDUAL_TOL = 1e-9
PRUNE_TOL = 1e-12

Number = Union[int, float, complex]


def close(a: Number, b: Number, tol: float = DEFAULT_TOL) -> bool:
    a, b = complex(a), complex(b)
    return abs(a - b) <= tol * max(1.0, abs(a), abs(b))


def safe_div(num: Number, den: Number, tol: float = DEFAULT_TOL) -> complex:
    """Divide, refusing denominators with ``|den| <= tol``."""
    den = complex(den)
    if abs(den) <= tol:
        raise ScalarDivisionError(f"division by near-zero scalar {den!r} (tol={tol:g})")
    return complex(num) / den


@dataclass(frozen=True)
class QValue:
    """The deformation parameter, optionally tagged as a root of unity.

    ``order`` is the multiplicative order of ``value`` when it was produced by
    :func:`root_of_unity`.  ``warning`` is set by :func:`admissible_roots
    <uqgl2.reps.admissible_roots>` for roots whose square has an order
    strictly dividing the representation dimension.
    """

    value: complex
    order: int | None = None
    warning: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "value", complex(self.value))
        if self.order is not None:
            if self.order < 1:
                raise ValueError("order must be a positive integer")
            if abs(self.value ** self.order - 1) > 1e-9:
                raise ValueError(f"{self.value!r} is not a root of unity of order {self.order}")

    def __complex__(self):
        return self.value

    @property
    def is_root_of_unity(self) -> bool:
        return self.order is not None


def as_q(q) -> QValue:
    return q if isinstance(q, QValue) else QValue(complex(q))


def qval(q) -> complex:
    return q.value if isinstance(q, QValue) else complex(q)


def root_of_unity(k: int, n: int) -> QValue:
    """``exp(2 pi i k / n)`` with its exact order ``n / gcd(k, n)``."""
    if n < 1:
        raise ValueError("n must be positive")
    d = math.gcd(k, n)
    k, n = (k // d) % (n // d), n // d
    # Quarter turns are snapped so that q**2 == -1 holds exactly for q = +-i.
    exact = {(0, 1): 1, (1, 2): -1, (1, 4): 1j, (3, 4): -1j}
    value = complex(exact.get((k, n), cmath.exp(2j * math.pi * k / n)))
    return QValue(value, order=n)


def q_integer(n: int, q, tol: float = DEFAULT_TOL) -> complex:
    """Symmetric q-number ``[n]_q = (q^n - q^-n) / (q - q^-1)``.

    At ``q**2 == 1`` the continuous limit ``n * q**(n - 1)`` is returned.
    """
    q = qval(q)
    if abs(q * q - 1) <= tol:
        return complex(n * q ** (n - 1))
    return (q ** n - q ** (-n)) / (q - 1 / q)


def q_factorial(n: int, q, tol: float = DEFAULT_TOL) -> complex:
    out = complex(1)
    for j in range(1, n + 1):
        out *= q_integer(j, q, tol)
    return out


def q_brace(n: int, q, tol: float = DEFAULT_TOL) -> complex:
    """``{n}_{q^2} = (1 - q^{2n}) / (1 - q^2)``."""
    q2 = qval(q) ** 2
    if abs(q2 - 1) <= tol:
        return complex(n)
    return (1 - q2 ** n) / (1 - q2)


def q_brace_factorial(n: int, q, tol: float = DEFAULT_TOL) -> complex:
    """``{n}_{q^2}! = prod_{j<=n} {j}_{q^2}``, cross-checked against ``q^{n(n-1)/2} [n]_q!``."""
    q = qval(q)
    out = complex(1)
    for j in range(1, n + 1):
        out *= q_brace(j, q, tol)
    other = q ** (n * (n - 1) // 2) * q_factorial(n, q, tol)
    if abs(out - other) > 1e-9 * max(1.0, abs(out), abs(other)):
        raise ArithmeticError(f"brace factorial cross-check failed at n={n}: {out} vs {other}")
    return out


# --------------------------------------------------------------------------
# Laurent polynomials
# --------------------------------------------------------------------------

Exponents = tuple


class LaurentPoly:
    """Multivariate Laurent polynomial with complex coefficients.

    ``terms`` maps integer exponent vectors (one slot per entry of
    ``variables``) to coefficients.  Coefficients with modulus at most
    ``PRUNE_TOL`` are dropped after every operation, so the zero polynomial
    has no terms.  Instances are treated as immutable.
    """

    __slots__ = ("variables", "terms")

    def __init__(self, variables: Iterable[str], terms: Mapping[tuple, Number] | None = None,
                 prune_tol: float = PRUNE_TOL):
        self.variables = tuple(variables)
        n = len(self.variables)
        clean = {}
        for exps, c in (terms or {}).items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != n:
                raise VariableMismatchError(f"exponent vector {exps} does not match {self.variables}")
            c = complex(c)
            if abs(c) > prune_tol:
                clean[exps] = c
        self.terms = clean

    # construction helpers
    @classmethod
    def constant(cls, variables, c: Number = 1) -> "LaurentPoly":
        variables = tuple(variables)
        return cls(variables, {(0,) * len(variables): c})

    @classmethod
    def zero(cls, variables) -> "LaurentPoly":
        return cls(variables)

    @classmethod
    def monomial(cls, variables, exponents: Mapping[str, int] | tuple, c: Number = 1) -> "LaurentPoly":
        variables = tuple(variables)
        if isinstance(exponents, Mapping):
            unknown = set(exponents) - set(variables)
            if unknown:
                raise VariableMismatchError(f"unknown variables {sorted(unknown)}")
            exponents = tuple(exponents.get(v, 0) for v in variables)
        return cls(variables, {tuple(exponents): c})

    @classmethod
    def variable(cls, variables, name: str) -> "LaurentPoly":
        return cls.monomial(variables, {name: 1})

    # queries
    @property
    def is_zero(self) -> bool:
        return not self.terms

    def max_abs_coefficient(self) -> float:
        return max((abs(c) for c in self.terms.values()), default=0.0)

    def __len__(self):
        return len(self.terms)

    def __repr__(self):
        if not self.terms:
            return "LaurentPoly(0)"
        parts = []
        for exps, c in sorted(self.terms.items()):
            mono = "*".join(f"{v}^{e}" for v, e in zip(self.variables, exps) if e)
            parts.append(f"({c:.6g})" + (f"*{mono}" if mono else ""))
        return "LaurentPoly(" + " + ".join(parts) + ")"

    # arithmetic
    def _coerce(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            if other.variables != self.variables:
                raise VariableMismatchError(f"{self.variables} vs {other.variables}")
            return other
        if isinstance(other, (int, float, complex)):
            return LaurentPoly.constant(self.variables, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return LaurentPoly(self.variables, out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly(self.variables, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, float, complex)):
            return LaurentPoly(self.variables, {e: c * other for e, c in self.terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return LaurentPoly(self.variables, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if len(self.terms) != 1:
                raise ValueError("negative powers are only defined for monomials")
            (e, c), = self.terms.items()
            return LaurentPoly(self.variables, {tuple(x * n for x in e): c ** n})
        out = LaurentPoly.constant(self.variables)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, (int, float, complex)):
            other = LaurentPoly.constant(self.variables, other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.variables == other.variables and self.terms == other.terms

    __hash__ = None

    def close_to(self, other, tol: float = DEFAULT_TOL) -> bool:
        return (self - other).max_abs_coefficient() <= tol

    # evaluation and re-embedding
    def evaluate(self, point: Mapping[str, Number]) -> complex:
        values = []
        for v in self.variables:
            if v not in point:
                if any(e[len(values)] for e in self.terms):
                    raise EvaluationError(f"no value assigned to variable {v!r}")
                values.append(1.0)
                continue
            values.append(complex(point[v]))
        total = 0j
        for exps, c in self.terms.items():
            term = c
            for x, e in zip(values, exps):
                if e:
                    if x == 0 and e < 0:
                        raise EvaluationError("zero assigned to a variable with a negative exponent")
                    term *= x ** e
            total += term
        return total

    def embed(self, variables: Iterable[str], rename: Mapping[str, str] | None = None) -> "LaurentPoly":
        """Re-express in a (larger) variable list, optionally renaming variables first."""
        variables = tuple(variables)
        names = [(rename or {}).get(v, v) for v in self.variables]
        missing = [v for v in names if v not in variables]
        if missing:
            raise VariableMismatchError(f"variables {missing} absent from {variables}")
        slots = [variables.index(v) for v in names]
        out: dict = {}
        for exps, c in self.terms.items():
            e = [0] * len(variables)
            for s, x in zip(slots, exps):
                e[s] += x
            e = tuple(e)
            out[e] = out.get(e, 0) + c
        return LaurentPoly(variables, out)


def laurent_arith(a: LaurentPoly, b: LaurentPoly, op: str) -> LaurentPoly:
    if a.variables != b.variables:
        raise VariableMismatchError(f"{a.variables} vs {b.variables}")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown op {op!r}")


def laurent_eval(p: LaurentPoly, point: Mapping[str, Number]) -> complex:
    return p.evaluate(point)
