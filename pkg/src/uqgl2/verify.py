"""Numerical and exact checks of the algebraic structure.

Every check returns a :class:`CheckReport`.  Both sides of the Yang-Baxter
equation are homogeneous of degree one in each of ``R12``, ``R13`` and
``R23``, so each factor is first scaled to unit largest entry.  The residual
is then measured against the size of the factors rather than the size of the
product, which stops entries spread over many orders of magnitude from
inflating it.  The intertwiner check scales ``R`` and the coproduct images
the same way.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .errors import DimensionMismatchError, NotM2Error
from .linalg import SquareMatrix, embed_pair, flip_matrix, inverse, kron, kron_all, residual_norm
from .reps import (Branch, GaugeChoice, Gen, HighestWeightRep, antipode_terms, coproduct_image,
                   coproduct_terms, counit, element_image, gen_element, products_ab)
from .rmatrix import (RMatrixResult, build_r_series, build_r_series_exact, twist_conjugate, twist_element,
                      twist_scalar)
from .rings import DEFAULT_TOL, RESIDUAL_TOL, LaurentPoly
from .sampling import random_gauge_choice

HOPF_TOL = 1e-10


@dataclass(frozen=True)
class CheckReport:
    name: str
    residual: float
    passed: bool
    tolerance: float
    details: dict = field(default_factory=dict)
    exact_zero: bool = False

    def as_dict(self) -> dict:
        return {"name": self.name, "residual": "exact-zero" if self.exact_zero else self.residual,
                "passed": self.passed, "tolerance": self.tolerance,
                "details": {k: v for k, v in self.details.items()}}

    def line(self) -> str:
        res = "exact-zero" if self.exact_zero else f"{self.residual:.3e}"
        return f"{'PASS' if self.passed else 'FAIL'}  {self.name}: residual {res} (tol {self.tolerance:g})"


def _report(name, residual, tol, details=None, exact_zero=False) -> CheckReport:
    passed = exact_zero or residual <= tol
    return CheckReport(name, float(residual), bool(passed), tol, details or {}, exact_zero)


def _unit_scale(mat: SquareMatrix) -> SquareMatrix:
    if mat.is_polynomial:
        return mat
    top = mat.max_abs()
    return mat / top if top else mat


def _ybe_sides(r12, r13, r23, dims):
    a = embed_pair(r12, (1, 2), dims)
    b = embed_pair(r13, (1, 3), dims)
    c = embed_pair(r23, (2, 3), dims)
    return a @ b @ c, c @ b @ a


def _ybe_report(name, r12, r13, r23, dims, tol) -> CheckReport:
    r12, r13, r23 = (_unit_scale(x) for x in (r12, r13, r23))
    lhs, rhs = _ybe_sides(r12, r13, r23, dims)
    if lhs.is_polynomial or rhs.is_polynomial:
        diff = lhs - rhs
        worst = max((v.max_abs_coefficient() if isinstance(v, LaurentPoly) else abs(v)
                     for v in diff.entries.values()), default=0.0)
        return _report(name, worst, tol, {"nonzero_entries": len(diff.entries)},
                       exact_zero=not diff.entries)
    return _report(name, residual_norm(lhs, rhs), tol)


def check_ybe(r: SquareMatrix, m: int, tol: float = RESIDUAL_TOL) -> CheckReport:
    """``R12 R13 R23 = R23 R13 R12`` on ``V_m`` tensor cubed."""
    if r.dim != m * m:
        raise DimensionMismatchError(f"R has dim {r.dim}, expected {m * m}")
    return _ybe_report("ybe", r, r, r, m, tol)


def check_colored_ybe(r12: SquareMatrix, r13: SquareMatrix, r23: SquareMatrix, m,
                      tol: float = RESIDUAL_TOL) -> CheckReport:
    """``R12(c1,c2) R13(c1,c3) R23(c2,c3) = R23 R13 R12``.

    ``m`` is the common dimension or the triple of leg dimensions.  Matrices
    with Laurent-polynomial entries give an exact certificate: the report has
    ``exact_zero`` set when the difference cancels completely.
    """
    dims = (m, m, m) if isinstance(m, int) else tuple(m)
    for mat, (x, y) in ((r12, (0, 1)), (r13, (0, 2)), (r23, (1, 2))):
        if mat.dim != dims[x] * dims[y]:
            raise DimensionMismatchError(f"matrix of dim {mat.dim} on legs {x + 1},{y + 1} of {dims}")
    return _ybe_report("colored_ybe", r12, r13, r23, dims, tol)


def colored_triple(reps, builder=build_r_series):
    """``(R12, R13, R23)`` for three colours."""
    c1, c2, c3 = reps
    return builder(c1, c2).matrix, builder(c1, c3).matrix, builder(c2, c3).matrix


EXACT_NAMES = (("sigma", "g"), ("sigma'", "g'"), ("sigma''", "g''"))


def exact_colored_triple(reps):
    """``(R12, R13, R23)`` as polynomial matrices over one shared variable list."""
    variables = tuple(v for pair in EXACT_NAMES for v in pair)
    out = []
    for x, y in ((0, 1), (0, 2), (1, 2)):
        out.append(build_r_series_exact(reps[x], reps[y], EXACT_NAMES[x], EXACT_NAMES[y],
                                        variables).matrix)
    return tuple(out)


# --------------------------------------------------------------------------
# intertwiner
# --------------------------------------------------------------------------

def _intertwine_residual(mat: SquareMatrix, rep1, rep2, gen: Gen, forward: bool) -> float:
    """``forward``: ``M Delta = Delta' M``; otherwise ``M Delta' = Delta M``."""
    d = coproduct_image(rep1, rep2, gen)
    dop = coproduct_image(rep1, rep2, gen, opposite=True)
    scale = max(d.max_abs(), dop.max_abs()) or 1.0
    d, dop = d / scale, dop / scale
    mat = _unit_scale(mat)
    if forward:
        return residual_norm(mat @ d, dop @ mat)
    return residual_norm(mat @ dop, d @ mat)


def check_intertwiner(r: SquareMatrix, rep1: HighestWeightRep, rep2: HighestWeightRep | None = None,
                      tol: float = RESIDUAL_TOL, forward: bool = True,
                      name: str = "intertwiner") -> CheckReport:
    """``R Delta(x) = Delta'(x) R`` for ``x`` in ``H, J, X+, X-``."""
    rep2 = rep1 if rep2 is None else rep2
    if r.dim != rep1.m * rep2.m:
        raise DimensionMismatchError(f"R has dim {r.dim}, expected {rep1.m * rep2.m}")
    details = {gen.value: _intertwine_residual(r, rep1, rep2, gen, forward) for gen in Gen}
    return _report(name, max(details.values()), tol, details)


# --------------------------------------------------------------------------
# Hopf axioms on representations
# --------------------------------------------------------------------------

def _triple_terms(gen: Gen, first: bool):
    out = []
    for c, x, y in coproduct_terms(gen_element(gen)):
        if first:
            for c2, x1, x2 in coproduct_terms(x):
                out.append((c * c2, x1, x2, y))
        else:
            for c2, y1, y2 in coproduct_terms(y):
                out.append((c * c2, x, y1, y2))
    return out


def _triple_image(terms, reps) -> SquareMatrix:
    dim = reps[0].m * reps[1].m * reps[2].m
    out = SquareMatrix(dim)
    for c, *elems in terms:
        out = out + kron_all(element_image(rep, e) for rep, e in zip(reps, elems)) * c
    return out


def hopf_residuals(rep1: HighestWeightRep, rep2: HighestWeightRep | None = None,
                   rep3: HighestWeightRep | None = None) -> dict:
    """Coassociativity, counit and antipode residuals per generator."""
    rep2 = rep1 if rep2 is None else rep2
    rep3 = rep2 if rep3 is None else rep3
    reps = (rep1, rep2, rep3)
    out = {}
    for gen in Gen:
        elem = gen_element(gen)
        left = _triple_image(_triple_terms(gen, True), reps)
        right = _triple_image(_triple_terms(gen, False), reps)
        out[f"coassociativity[{gen.value}]"] = residual_norm(left, right)
        for rep_no, rep in enumerate((rep1, rep2), 1):
            target = element_image(rep, elem)
            eps_id = SquareMatrix(rep.m)
            id_eps = SquareMatrix(rep.m)
            s_id = SquareMatrix(rep.m)
            id_s = SquareMatrix(rep.m)
            for c, x, y in coproduct_terms(elem):
                eps_id = eps_id + element_image(rep, y) * (c * counit(x))
                id_eps = id_eps + element_image(rep, x) * (c * counit(y))
                for c2, sx in antipode_terms(x, rep.q):
                    s_id = s_id + (element_image(rep, sx) @ element_image(rep, y)) * (c * c2)
                for c2, sy in antipode_terms(y, rep.q):
                    id_s = id_s + (element_image(rep, x) @ element_image(rep, sy)) * (c * c2)
            unit = SquareMatrix.identity(rep.m, counit(elem))
            out[f"counit[{gen.value}](rep{rep_no})"] = max(residual_norm(eps_id, target),
                                                           residual_norm(id_eps, target))
            out[f"antipode[{gen.value}](rep{rep_no})"] = max(residual_norm(s_id, unit),
                                                             residual_norm(id_s, unit))
    return out


def check_hopf_axioms(rep1: HighestWeightRep, rep2: HighestWeightRep | None = None,
                      rep3: HighestWeightRep | None = None, tol: float = HOPF_TOL) -> CheckReport:
    details = hopf_residuals(rep1, rep2, rep3)
    return _report("hopf_axioms", max(details.values()), tol, details)


def check_commutation(rep: HighestWeightRep, tol: float = HOPF_TOL) -> CheckReport:
    """Defining relations ``[H, X+-] = +-2 X+-`` and ``[X+, X-] = (K+^2 - K-^2)/(q - 1/q)``."""
    from .reps import rep_matrices
    mats = rep_matrices(rep)
    q = rep.q.value
    comm = lambda a, b: a @ b - b @ a
    cartan = (mats.k_plus @ mats.k_plus - mats.k_minus @ mats.k_minus) / (q - 1 / q)
    details = {
        "[H,X+]": residual_norm(comm(mats.h, mats.xplus), mats.xplus * 2),
        "[H,X-]": residual_norm(comm(mats.h, mats.xminus), mats.xminus * -2),
        "[X+,X-]": residual_norm(comm(mats.xplus, mats.xminus), cartan),
        "[J,X+]": residual_norm(comm(mats.j, mats.xplus), SquareMatrix(rep.m)),
    }
    return _report("commutation", max(details.values()), tol, details)


# --------------------------------------------------------------------------
# variants, twist, gauge invariance
# --------------------------------------------------------------------------

def check_variants(r: SquareMatrix, m: int, rep: HighestWeightRep | None = None,
                   tol: float = RESIDUAL_TOL) -> CheckReport:
    """The flip, inverse and flipped inverse all solve the YBE.

    With ``rep`` given, also checks the intertwiner relations they satisfy:
    ``P R P`` and ``R^-1`` intertwine the opposite coproduct, ``P R^-1 P``
    the original one.
    """
    p = flip_matrix(m)
    inv = inverse(r)
    mats = {"plus": p @ r @ p, "minus": inv, "bar": p @ inv @ p}
    details = {f"ybe[{k}]": check_ybe(v, m, tol).residual for k, v in mats.items()}
    if rep is not None:
        details["intertwiner[plus]"] = check_intertwiner(mats["plus"], rep, forward=False).residual
        details["intertwiner[minus]"] = check_intertwiner(mats["minus"], rep, forward=False).residual
        details["intertwiner[bar]"] = check_intertwiner(mats["bar"], rep, forward=True).residual
    return _report("variants", max(details.values()), tol, details)


def check_twist(rep1: HighestWeightRep, rep2: HighestWeightRep | None = None,
                tol: float = HOPF_TOL) -> CheckReport:
    """``F^-1 R(u=1) F^-1`` reproduces the multiparameter R; ``F12 F21 = 1``."""
    rep2 = rep1 if rep2 is None else rep2
    _, twisted = twist_conjugate(rep1, rep2)
    target = build_r_series(rep1, rep2).matrix * twist_scalar(rep1, rep2)
    f12 = twist_element(rep1, rep2)
    f21 = flip_matrix(rep2.m, rep1.m) @ twist_element(rep2, rep1) @ flip_matrix(rep1.m, rep2.m)
    ident = SquareMatrix.identity(rep1.m * rep2.m)
    details = {"conjugation": residual_norm(twisted / target.max_abs(), target / target.max_abs()),
               "F12F21": residual_norm(f12 @ f21, ident)}
    return _report("twist", max(details.values()), tol, details)


def random_gauge(rep: HighestWeightRep, rng: np.random.Generator) -> GaugeChoice:
    """Explicit gauge with ``a_i`` drawn from the annulus ``0.5 <= |a| <= 2``."""
    return random_gauge_choice(rep.m, rep.q, rep.sigma, rng)


def check_gauge_invariance(reps, draws: int = 10, seed: int = 0,
                           tol: float = 10 * DEFAULT_TOL) -> CheckReport:
    """Coloured YBE residual and diagonal entries under random gauge splits.

    ``reps`` holds three colours; each draw regauges every colour
    independently.  The residual spread above the unit-a residual must stay
    within ``tol`` and the diagonal entries must be bit-identical.
    """
    rng = np.random.default_rng(seed)
    m = reps[0].m
    unit = [r.with_gauge(GaugeChoice()) for r in reps]
    base_mats = colored_triple(unit)
    base = check_colored_ybe(*base_mats, m).residual
    spread = 0.0
    diag_ok = True
    for _ in range(draws):
        regauged = [r.with_gauge(random_gauge(r, rng)) for r in reps]
        mats = colored_triple(regauged)
        spread = max(spread, check_colored_ybe(*mats, m).residual - base)
        for x, y in zip(mats, base_mats):
            diag_ok &= all(x[i, i] == y[i, i] for i in range(1, x.dim + 1))
    details = {"unit_a_residual": base, "max_excess": spread, "diagonal_bit_identical": diag_ok}
    report = _report("gauge_invariance", max(spread, 0.0), tol, details)
    if not diag_ok:
        return CheckReport(report.name, report.residual, False, tol, details)
    return report


# --------------------------------------------------------------------------
# Hlavaty identification (m = 2)
# --------------------------------------------------------------------------

class Family(Enum):
    R1 = "R1"
    R2 = "R2"


@dataclass(frozen=True)
class HlavatyMap:
    family: Family
    p_plus_lambda: complex
    p_plus_mu: complex
    p_minus_lambda: complex | None
    p_minus_mu: complex | None
    k: complex
    xi_ratio: complex
    residual: float
    overall_factor_note: str = "overall factor phi(lambda, mu) is a free normalisation; not matched"

    def matrix(self) -> SquareMatrix:
        """The comparison solution with ``phi = 1``."""
        if self.family is Family.R1:
            return SquareMatrix(4, {(1, 1): 1, (2, 2): self.p_plus_lambda,
                                    (3, 2): (1 - self.k) * self.xi_ratio,
                                    (3, 3): self.k / self.p_plus_mu,
                                    (4, 4): self.p_plus_lambda / self.p_plus_mu})
        w = (1 - self.p_plus_lambda * self.p_minus_lambda) * self.xi_ratio
        return SquareMatrix(4, {(1, 1): 1, (2, 2): self.p_plus_lambda, (3, 2): w,
                                (3, 3): self.p_minus_mu,
                                (4, 4): -self.p_plus_lambda * self.p_minus_mu})


def hlavaty_identify(result: RMatrixResult, tol: float = DEFAULT_TOL) -> HlavatyMap:
    """Express a built ``m = 2`` coloured matrix in Hlavaty's parametrisation.

    Family R2 is used when either colour is on the root-of-unity branch
    (``q^2 = -1``), family R1 otherwise.  The returned ``residual`` compares
    the (1,1)-normalised built matrix with :meth:`HlavatyMap.matrix`.
    """
    if result.dims != (2, 2) or len(result.reps) != 2:
        raise NotM2Error("Hlavaty comparison needs an m = 2 series result with its representations")
    rep1, rep2 = result.reps
    q = rep1.q.value
    s, s2, gam, gam2 = rep1.s, rep2.s, rep1.gamma, rep2.gamma
    a, b, a2 = rep1.a[0], rep1.b[0], rep2.a[0]
    if Branch.ROOT_OF_UNITY in (rep1.branch, rep2.branch):
        xi = (rep1.g / rep1.sigma / a) / (rep2.g / rep2.sigma / a2)
        hm = HlavatyMap(Family.R2, s * gam, s2 * gam2, s / gam, s2 / gam2, q * q, xi, 0.0)
    else:
        xi = rep1.sigma * rep2.sigma * rep1.g / rep2.g * a2 * b / q
        hm = HlavatyMap(Family.R1, s * gam, q * q * gam2 / s2, None, None, q * q, xi, 0.0)
    built = result.matrix / result.matrix[1, 1]
    res = residual_norm(built, hm.matrix())
    return HlavatyMap(hm.family, hm.p_plus_lambda, hm.p_plus_mu, hm.p_minus_lambda, hm.p_minus_mu,
                      hm.k, hm.xi_ratio, res)


def check_hlavaty(result: RMatrixResult, tol: float = DEFAULT_TOL) -> CheckReport:
    hm = hlavaty_identify(result, tol)
    return _report(f"hlavaty[{hm.family.value}]", hm.residual, tol,
                   {"k": hm.k, "p_plus_lambda": hm.p_plus_lambda, "p_plus_mu": hm.p_plus_mu,
                    "xi_ratio": hm.xi_ratio})
