"""Pseudospectral experiments for the critically damped semilinear wave
equation u_tt - Lap u + u_t = |u|^{1+2/n} mu(|u|) on a periodic box.

The compiled core exposes the modulus-of-continuity calculus, the exact
damped-wave propagator symbols, and the simulation/lifespan drivers; this
package adds a thin convenience layer over the experiment dispatcher.
"""

import json as _json

from dwl._core import (  # noqa: F401
    DwlError,
    Modulus,
    detect_lifespan,
    gauss_symbol,
    kernel_dt_symbol,
    kernel_symbol,
    simulate,
)
from dwl._core import run_experiment_json as _run_experiment_json

__all__ = [
    "DwlError",
    "Modulus",
    "detect_lifespan",
    "gauss_symbol",
    "kernel_dt_symbol",
    "kernel_symbol",
    "run_experiment",
    "simulate",
]


def run_experiment(kind, config_text, out_dir, threads=1):
    """Run a named experiment (dini-check, simulate, decay-sweep,
    profile-check, lifespan-sweep, picard-demo); artifacts land in
    ``out_dir``. Returns ``(exit_code, summary_dict)``."""
    res = _run_experiment_json(kind, config_text, str(out_dir), threads)
    return res["exit_code"], _json.loads(res["summary_json"])
