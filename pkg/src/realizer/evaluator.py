"""Public evaluation API; selects the compiled kernel when available.

Set ``REALIZER_PURE=1`` to force the interpreted kernel even when the
compiled extension is built (used by the benchmark and for debugging).
"""

from __future__ import annotations

import importlib.util
import os
from dataclasses import dataclass

DEFAULT_FUEL = 100_000


def _load_pure():
    path = os.path.join(os.path.dirname(__file__), "_evalcore.py")
    spec = importlib.util.spec_from_file_location("realizer._evalcore_pure", path)
    mod = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(mod)
    return mod


if os.environ.get("REALIZER_PURE", "") not in ("", "0"):
    _core = _load_pure()
else:
    from . import _evalcore as _core

BACKEND = ("compiled"
           if getattr(_core, "__file__", "").endswith((".so", ".pyd"))
           else "pure")

Diverged = _core.Diverged
Stuck = _core.Stuck

VALUE = "value"
DIVERGED = "diverged"
STUCK = "stuck"


@dataclass(frozen=True, slots=True)
class EvalResult:
    status: str
    values: tuple  # normal forms, when status == "value"
    fuel_used: int
    reason: str = ""

    @property
    def ok(self) -> bool:
        return self.status == VALUE

    def single(self):
        if self.status != VALUE or len(self.values) != 1:
            raise ValueError(f"no single value: {self}")
        return self.values[0]


def evaluate(ts, env=None, fuel: int = DEFAULT_FUEL) -> EvalResult:
    """Evaluate a term tuple (or a single term) to normal form."""
    if not isinstance(ts, tuple):
        ts = (ts,)
    env = env or {}
    try:
        vals, left = _core.eval_tuple(ts, env, fuel)
        return EvalResult(VALUE, tuple(vals), fuel - left)
    except Diverged:
        return EvalResult(DIVERGED, (), fuel)
    except Stuck as e:
        return EvalResult(STUCK, (), 0, str(e))


def apply_value(f, argvals, fuel: int = DEFAULT_FUEL) -> EvalResult:
    """Apply an evaluated function value to evaluated arguments."""
    try:
        vals, left = _core.apply_value(f, tuple(argvals), fuel)
        return EvalResult(VALUE, tuple(vals), fuel - left)
    except Diverged:
        return EvalResult(DIVERGED, (), fuel)
    except Stuck as e:
        return EvalResult(STUCK, (), 0, str(e))
