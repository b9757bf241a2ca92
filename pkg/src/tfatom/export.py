"""CSV/JSON serialisation of solver, moment, potential and correction results."""

from __future__ import annotations

import dataclasses
import io
import json
import math

import numpy as np

from .potentials import PotentialField
from .quadrature import TfMoments
from .tf_solver import TfSolution


def _num(v: float) -> str:
    return format(float(v), ".15g")


def _csv(header: list[str], rows) -> str:
    buf = io.StringIO()
    buf.write(",".join(header) + "\n")
    for row in rows:
        buf.write(",".join(_num(v) for v in row) + "\n")
    return buf.getvalue()


def solution_csv(sol: TfSolution) -> str:
    return _csv(["x", "f", "fprime"], zip(sol.grid, sol.f_values, sol.fprime_values))


def solution_dict(sol: TfSolution) -> dict:
    params = dataclasses.asdict(sol.params)
    params["slope_bracket"] = list(params["slope_bracket"])
    return {
        # decimal strings round-trip exactly through float()
        "B": repr(sol.B),
        "B_bisection": repr(sol.B_shoot),
        "tail": dataclasses.asdict(sol.tail),
        "params": params,
        "n_points": int(sol.grid.size),
    }


def moments_dict(m: TfMoments) -> dict:
    return m.as_dict()


def potential_table_csv(field: PotentialField, radii) -> str:
    r = np.atleast_1d(np.asarray(radii, dtype=float))
    return _csv(
        ["r", "V", "dVdr", "lap_smooth"],
        zip(r, np.atleast_1d(field.value(r)), np.atleast_1d(field.derivative(r)),
            np.atleast_1d(field.laplacian_smooth(r))),
    )


def correction_dict(Z: float, closed: float, oracle: float, c: float, m_f2: float,
                    est_errors: dict, scale: float = 1.0, unit: str = "hartree") -> dict:
    return {
        "Z": Z,
        "delta_e_closed": closed * scale,
        "delta_e_oracle": oracle * scale,
        "c": repr(c),
        "m_f2": m_f2,
        "est_errors": {k: v * (scale if k.startswith("delta_e") else 1.0) for k, v in est_errors.items()},
        "unit": unit,
    }


def sweep_csv(rows) -> str:
    """rows: iterable of (Z, deltaE_closed, deltaE_oracle)."""
    return _csv(["Z", "deltaE_closed", "deltaE_oracle"], rows)


def dumps(obj) -> str:
    def default(o):
        if isinstance(o, np.generic):
            return o.item()
        if isinstance(o, np.ndarray):
            return o.tolist()
        raise TypeError(f"not JSON serialisable: {type(o).__name__}")

    def clean(o):
        if isinstance(o, float) and not math.isfinite(o):
            return None
        if isinstance(o, dict):
            return {k: clean(v) for k, v in o.items()}
        if isinstance(o, (list, tuple)):
            return [clean(v) for v in o]
        return o

    return json.dumps(clean(obj), indent=2, default=default) + "\n"
