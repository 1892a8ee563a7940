"""Canonical JSON emission and the shared interchange formats.

Reports must be byte-identical for identical configs, so floats are
printed with a fixed 17-significant-digit format (enough to round-trip
IEEE doubles) and object keys are emitted sorted.  The stdlib json module
does not allow overriding float formatting, hence the small emitter here.

Matrix format: ``{"n": 2, "data": [[re, im], ...]}`` row-major, length
n^2.  Polynomials: ``{"coeffs": [[re, im], ...]}`` ascending; rationals:
``{"num": {...}, "den": {...}}``.  Complex scalars inside reports are
emitted as two-element ``[re, im]`` arrays.
"""

import json
import math
import os
import tempfile

import numpy as np

from .errors import ArgumentError

__all__ = [
    "canonical_json", "atomic_write_text",
    "matrix_to_obj", "matrix_from_obj", "load_matrix", "save_matrix",
    "poly_to_obj", "poly_from_obj", "rational_to_obj", "rational_from_obj",
    "function_from_obj", "parse_complex", "parse_domain",
]


def _fmt_float(x):
    x = float(x)
    if math.isnan(x) or math.isinf(x):
        raise ArgumentError("reports must not contain NaN/Inf")
    if x == 0.0:
        return "0"  # normalize -0.0
    return "%.17g" % x


def _emit(obj, out):
    if obj is None:
        out.append("null")
    elif obj is True:
        out.append("true")
    elif obj is False:
        out.append("false")
    elif isinstance(obj, str):
        out.append(json.dumps(obj))
    elif isinstance(obj, (int, np.integer)) and not isinstance(obj, bool):
        out.append(str(int(obj)))
    elif isinstance(obj, (float, np.floating)):
        out.append(_fmt_float(obj))
    elif isinstance(obj, (complex, np.complexfloating)):
        out.append("[%s, %s]" % (_fmt_float(obj.real), _fmt_float(obj.imag)))
    elif isinstance(obj, np.ndarray):
        _emit(obj.tolist(), out)
    elif isinstance(obj, (list, tuple)):
        out.append("[")
        for i, v in enumerate(obj):
            if i:
                out.append(", ")
            _emit(v, out)
        out.append("]")
    elif isinstance(obj, dict):
        out.append("{")
        for i, k in enumerate(sorted(obj.keys())):
            if not isinstance(k, str):
                raise ArgumentError(f"JSON keys must be strings, got {k!r}")
            if i:
                out.append(", ")
            out.append(json.dumps(k))
            out.append(": ")
            _emit(obj[k], out)
        out.append("}")
    else:
        raise ArgumentError(f"cannot serialize {type(obj).__name__} to JSON")


def canonical_json(obj):
    """Deterministic JSON text: sorted keys, %.17g floats, [re, im] complex."""
    out = []
    _emit(obj, out)
    out.append("\n")
    return "".join(out)


def atomic_write_text(path, text):
    """Write text via a temp file in the same directory plus rename."""
    d = os.path.dirname(os.path.abspath(path)) or "."
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".wpair-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise


# ---------------------------------------------------------------------------
# matrices

def matrix_to_obj(T):
    T = np.asarray(T, dtype=np.complex128)
    if T.ndim != 2 or T.shape[0] != T.shape[1]:
        raise ArgumentError(f"expected a square matrix, got shape {T.shape}")
    n = T.shape[0]
    flat = T.reshape(-1)
    return {"n": int(n),
            "data": [[float(z.real), float(z.imag)] for z in flat]}


def matrix_from_obj(obj):
    if not isinstance(obj, dict) or "n" not in obj or "data" not in obj:
        raise ArgumentError('matrix JSON must be {"n": ..., "data": [...]}')
    n = obj["n"]
    if not isinstance(n, int) or n < 1:
        raise ArgumentError(f"matrix dimension must be a positive int, got {n!r}")
    data = obj["data"]
    if not isinstance(data, list) or len(data) != n * n:
        raise ArgumentError(
            f"matrix data must hold n^2 = {n * n} [re, im] pairs")
    flat = np.empty(n * n, dtype=np.complex128)
    for i, pair in enumerate(data):
        if (not isinstance(pair, list) or len(pair) != 2
                or not all(isinstance(v, (int, float)) for v in pair)):
            raise ArgumentError(f"matrix entry {i} is not an [re, im] pair")
        flat[i] = complex(float(pair[0]), float(pair[1]))
    if not np.all(np.isfinite(flat.view(np.float64))):
        raise ArgumentError("matrix entries must be finite")
    return flat.reshape(n, n)


def load_matrix(path):
    try:
        with open(path) as fh:
            obj = json.load(fh)
    except OSError as exc:
        raise ArgumentError(f"cannot read matrix file {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ArgumentError(f"malformed JSON in {path}: {exc}") from exc
    return matrix_from_obj(obj)


def save_matrix(path, T):
    atomic_write_text(path, canonical_json(matrix_to_obj(T)))


# ---------------------------------------------------------------------------
# functions

def poly_to_obj(p):
    return {"coeffs": [[float(c.real), float(c.imag)] for c in p.coeffs]}


def poly_from_obj(obj):
    from .funcalc import Poly
    if not isinstance(obj, dict) or "coeffs" not in obj:
        raise ArgumentError('polynomial JSON must be {"coeffs": [[re, im], ...]}')
    cs = obj["coeffs"]
    if not isinstance(cs, list) or not cs:
        raise ArgumentError("coeffs must be a nonempty list")
    out = []
    for i, pair in enumerate(cs):
        if not isinstance(pair, list) or len(pair) != 2:
            raise ArgumentError(f"coefficient {i} is not an [re, im] pair")
        out.append(complex(float(pair[0]), float(pair[1])))
    return Poly(out)


def rational_to_obj(f):
    return {"num": poly_to_obj(f.num), "den": poly_to_obj(f.den)}


def rational_from_obj(obj):
    from .funcalc import RationalFn
    if not isinstance(obj, dict) or "num" not in obj or "den" not in obj:
        raise ArgumentError('rational JSON must be {"num": ..., "den": ...}')
    return RationalFn(poly_from_obj(obj["num"]), poly_from_obj(obj["den"]))


def function_from_obj(obj):
    """Polynomial or rational function from its JSON object form."""
    if isinstance(obj, dict) and "num" in obj:
        return rational_from_obj(obj)
    return poly_from_obj(obj)


# ---------------------------------------------------------------------------
# CLI argument parsing helpers

def parse_complex(text):
    """Complex scalar from CLI text; accepts both 'i' and 'j' notation."""
    s = str(text).strip().replace(" ", "")
    if not s:
        raise ArgumentError("empty complex literal")
    s = s.replace("i", "j")
    try:
        return complex(s)
    except ValueError as exc:
        raise ArgumentError(f"cannot parse complex number {text!r}") from exc


def parse_domain(spec, base_point=0j):
    """Domain from CLI syntax: disk:r=1[,center=...], ellipse:a=2,b=1,
    rectangle:hw=1,hh=0.5, square:s=1."""
    from .confmap import Domain
    s = str(spec).strip()
    kind, _, rest = s.partition(":")
    kind = kind.strip().lower()
    kv = {}
    if rest:
        for item in rest.split(","):
            if not item:
                continue
            key, eq, val = item.partition("=")
            if not eq:
                raise ArgumentError(f"bad domain parameter {item!r} in {spec!r}")
            kv[key.strip().lower()] = val.strip()
    try:
        if kind == "disk":
            r = float(kv.get("r", kv.get("radius", 1.0)))
            center = parse_complex(kv["center"]) if "center" in kv else 0j
            return Domain.disk(r, center=center, base_point=base_point)
        if kind == "ellipse":
            return Domain.ellipse(float(kv["a"]), float(kv["b"]),
                                  base_point=base_point)
        if kind in ("rectangle", "rect"):
            hw = float(kv.get("hw", kv.get("half_width")))
            hh = float(kv.get("hh", kv.get("half_height")))
            return Domain.rectangle(hw, hh, base_point=base_point)
        if kind == "square":
            return Domain.square(float(kv.get("s", kv.get("side", 1.0))),
                                 base_point=base_point)
    except KeyError as exc:
        raise ArgumentError(
            f"domain {spec!r} is missing parameter {exc.args[0]!r}") from exc
    except (TypeError, ValueError) as exc:
        raise ArgumentError(f"bad domain spec {spec!r}: {exc}") from exc
    raise ArgumentError(
        f"unknown domain kind {kind!r} (use disk, ellipse, rectangle, square)")
