"""JSON and CSV export of R-matrices, and JSON import for re-verification.

Floats are written with ``repr``, the shortest decimal string that reads back
to the same double, so export followed by import is bit-exact.
"""
from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass

from .errors import InvalidInputError
from .linalg import SquareMatrix
from .reps import Branch, GaugeChoice, GaugeMode, HighestWeightRep
from .rings import LaurentPoly, QValue


def _c(z) -> dict:
    z = complex(z)
    return {"re": z.real, "im": z.imag}


def _z(rec) -> complex:
    try:
        return complex(float(rec["re"]), float(rec["im"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidInputError(f"bad complex record {rec!r}") from exc


def matrix_document(matrix: SquareMatrix, reps, m: int | None = None,
                    variables: tuple = ()) -> dict:
    """The exported record for ``matrix`` built from the colours ``reps``."""
    reps = list(reps)
    rep0 = reps[0]
    doc = {
        "m": int(m or rep0.m),
        "dim": matrix.dim,
        "q": _c(rep0.q.value),
        "branch": rep0.branch.value,
        "colors": [{"sigma": _c(r.sigma), "g": _c(r.g)} for r in reps],
        "gauge": {"mode": rep0.gauge.value,
                  "a": [[_c(x) for x in r.a] for r in reps],
                  "b": [[_c(x) for x in r.b] for r in reps]},
    }
    entries = []
    for (r, c), v in sorted(matrix.entries.items()):
        if isinstance(v, LaurentPoly):
            poly = [{"exp": list(e), **_c(coef)} for e, coef in sorted(v.terms.items())]
            entries.append({"r": r, "c": c, "poly": poly})
        else:
            entries.append({"r": r, "c": c, **_c(v)})
    if matrix.is_polynomial:
        doc["vars"] = list(variables)
    doc["entries"] = entries
    return doc


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=1)


def to_csv(matrix: SquareMatrix) -> str:
    if matrix.is_polynomial:
        raise InvalidInputError("CSV export is only available for numeric matrices")
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["r", "c", "re", "im"])
    for (r, c), v in sorted(matrix.entries.items()):
        v = complex(v)
        w.writerow([r, c, repr(v.real), repr(v.imag)])
    return buf.getvalue()


@dataclass(frozen=True)
class LoadedMatrix:
    matrix: SquareMatrix
    m: int
    q: complex
    branch: Branch
    reps: tuple
    variables: tuple = ()


def load_document(doc: dict, tol: float = 1e-12) -> LoadedMatrix:
    """Rebuild the matrix and its colours from an exported record."""
    try:
        m, dim = int(doc["m"]), int(doc["dim"])
        q = _z(doc["q"])
        branch = Branch(doc["branch"])
        colors = doc["colors"]
        gauge = doc.get("gauge", {})
        raw_entries = doc["entries"]
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidInputError(f"malformed matrix document: {exc}") from exc
    variables = tuple(doc.get("vars", ()))
    entries = {}
    for e in raw_entries:
        try:
            key = (int(e["r"]), int(e["c"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidInputError(f"bad entry {e!r}") from exc
        if "poly" in e:
            entries[key] = LaurentPoly(variables, {tuple(t["exp"]): _z(t) for t in e["poly"]})
        else:
            entries[key] = _z(e)
    try:
        matrix = SquareMatrix(dim, entries)
    except (IndexError, ValueError) as exc:
        raise InvalidInputError(str(exc)) from exc
    qv = QValue(q)
    reps = []
    mode = GaugeMode(gauge.get("mode", "unit_a"))
    for i, col in enumerate(colors):
        sigma, g = _z(col["sigma"]), _z(col["g"])
        choice = GaugeChoice()
        if mode is not GaugeMode.UNIT_A and "a" in gauge:
            choice = GaugeChoice.explicit([_z(x) for x in gauge["a"][i]], [_z(x) for x in gauge["b"][i]])
        rep = HighestWeightRep.build(m, qv, sigma, g, choice, tol)
        reps.append(rep)
    return LoadedMatrix(matrix, m, q, branch, tuple(reps), variables)


def loads(text: str, tol: float = 1e-12) -> LoadedMatrix:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidInputError(f"not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise InvalidInputError("top-level JSON value must be an object")
    return load_document(doc, tol)
