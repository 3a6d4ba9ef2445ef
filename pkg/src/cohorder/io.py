"""JSON formats for states, channels and reports.

States are ``{"dim": d, "re": [...], "im": [...]}`` with d*d row-major
entries, or Bloch qubits ``{"t": t, "n": [nx, ny, nz]}``. A pure state may
also be given by its spectrum, ``{"spectrum": [l1, ..., ld]}``. Channels are
``{"name": ..., "p": ..., "kraus": [state-format matrices]}``.
"""
from __future__ import annotations

import json
from numbers import Real

import numpy as np

from .channels import KrausChannel
from .exceptions import CoherenceError
from .states import BlochVector, from_bloch, pure_from_spectrum


class FormatError(CoherenceError):
    """Malformed serialized input; ``field`` names the offending key."""

    def __init__(self, field, message):
        super().__init__(f"{field}: {message}")
        self.field = field


def _numbers(obj, key, length=None):
    if key not in obj:
        raise FormatError(key, "missing")
    vals = obj[key]
    if not isinstance(vals, list) or not all(isinstance(v, Real) and not isinstance(v, bool) for v in vals):
        raise FormatError(key, "must be a list of numbers")
    if length is not None and len(vals) != length:
        raise FormatError(key, f"expected {length} entries, got {len(vals)}")
    return np.asarray(vals, dtype=float)


def matrix_to_dict(m) -> dict:
    m = np.asarray(m, dtype=complex)
    return {"dim": int(m.shape[0]), "re": m.real.ravel().tolist(), "im": m.imag.ravel().tolist()}


def matrix_from_dict(obj, prefix: str = "") -> np.ndarray:
    if not isinstance(obj, dict):
        raise FormatError(prefix or "state", "must be a JSON object")
    d = obj.get("dim")
    if not isinstance(d, int) or isinstance(d, bool) or d < 1:
        raise FormatError(prefix + "dim", "must be a positive integer")
    re = _numbers(obj, "re", d * d)
    im = _numbers(obj, "im", d * d) if "im" in obj else np.zeros(d * d)
    return (re + 1j * im).reshape(d, d)


def state_to_dict(rho) -> dict:
    return matrix_to_dict(rho)


def bloch_to_dict(b: BlochVector) -> dict:
    return {"t": b.t, "n": list(b.n)}


def state_from_dict(obj) -> np.ndarray:
    """Parse any supported state format into a density-matrix array (not validated)."""
    if not isinstance(obj, dict):
        raise FormatError("state", "must be a JSON object")
    if "t" in obj or "n" in obj:
        t = obj.get("t")
        if not isinstance(t, Real) or isinstance(t, bool):
            raise FormatError("t", "must be a number")
        n = _numbers(obj, "n", 3)
        try:
            return from_bloch(BlochVector(float(t), tuple(n)))
        except CoherenceError as exc:
            raise FormatError("n" if "n" in str(exc) else "t", str(exc)) from exc
    if "spectrum" in obj:
        lam = _numbers(obj, "spectrum")
        try:
            return pure_from_spectrum(lam)
        except CoherenceError as exc:
            raise FormatError("spectrum", str(exc)) from exc
    return matrix_from_dict(obj)


def load_state(path) -> np.ndarray:
    with open(path) as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as exc:
            raise FormatError("json", f"line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    return state_from_dict(obj)


def channel_to_dict(ch: KrausChannel) -> dict:
    return {"name": ch.name, "p": ch.p, "kraus": [matrix_to_dict(k) for k in ch.operators]}


def channel_from_dict(obj) -> KrausChannel:
    if not isinstance(obj, dict):
        raise FormatError("channel", "must be a JSON object")
    kraus = obj.get("kraus")
    if not isinstance(kraus, list) or not kraus:
        raise FormatError("kraus", "must be a non-empty list of matrices")
    ops = [matrix_from_dict(k, prefix=f"kraus[{i}].") for i, k in enumerate(kraus)]
    p = obj.get("p")
    if p is not None and (not isinstance(p, Real) or isinstance(p, bool)):
        raise FormatError("p", "must be a number or null")
    return KrausChannel(str(obj.get("name", "custom")), tuple(ops), None if p is None else float(p))
