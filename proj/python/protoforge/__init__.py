"""Protocol synthesis from bounded network requirements.

Specs are passed as spec-file text; traces and reports come back as
parsed JSON (dicts). Errors raise ProtoforgeError, a ValueError.
"""

import json
from pathlib import Path

from . import _core
from ._core import ProtoforgeError

__version__ = _core.__version__

__all__ = [
    "ProtoforgeError",
    "load_spec",
    "canonical_spec",
    "synth",
    "min_horizon",
    "validate",
    "unsat_core",
    "describe",
    "emit_smt",
    "simulate",
    "baseline",
    "compare",
]


def _trace_text(trace):
    return trace if isinstance(trace, str) else json.dumps(trace)


def load_spec(path):
    """Read a spec file and return its canonical text."""
    return _core.canonical_spec(Path(path).read_text())


def canonical_spec(text):
    return _core.canonical_spec(text)


def synth(spec, node_limit=0):
    """Solve a spec. Returns {"status": "sat"|"unsat"|"budget-exhausted", ...};
    sat results carry "trace", unsat results carry the minimized "core"."""
    result = dict(_core.synth(spec, node_limit))
    if "trace" in result:
        result["trace"] = json.loads(result["trace"])
    return result


def min_horizon(spec, t_max, node_limit=0):
    result = dict(_core.min_horizon(spec, t_max, node_limit))
    if "trace" in result:
        result["trace"] = json.loads(result["trace"])
    return result


def validate(trace):
    """Violation strings for a trace (dict or JSON text); empty when valid."""
    return list(_core.validate(_trace_text(trace)))


def unsat_core(spec):
    return list(_core.unsat_core(spec))


def describe(spec):
    return dict(_core.describe(spec))


def emit_smt(spec):
    return _core.emit_smt(spec)


def simulate(trace, pw=1.0, idle=0.0):
    return json.loads(_core.simulate(_trace_text(trace), pw, idle))


def baseline(spec, pw=1.0, idle=0.0, max_slots=100):
    return json.loads(_core.baseline(spec, pw, idle, max_slots))


def compare(spec, pw=1.0, idle=0.0, max_slots=100):
    return json.loads(_core.compare(spec, pw, idle, max_slots))
