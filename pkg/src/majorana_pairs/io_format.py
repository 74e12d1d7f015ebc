"""
JSON-syntax files for matrices and verification reports.

A matrix file looks like::

    {"rows":2,"cols":2,"data":[
    [[0.0,0.0],[1.0,0.0]],
    [[1.0,0.0],[0.0,0.0]]
    ]}

Entry ``(i, j)`` is ``[re, im]``. Floats are written with ``repr``, the
shortest decimal that reads back to the same double, so write/read is
bit-exact. NaN and infinities are rejected on read.
"""
from __future__ import annotations

import json
import math

import numpy as np

from . import __version__
from .errors import DimensionMismatch, IoError, ParseError
from .pairs import VerificationReport

REPORT_FIELDS = VerificationReport.RESIDUALS + ("trace_ab_abs", "tol", "passed")
TOOL_VERSION = f"majorana-pairs {__version__}"


def _reject_constant(token):
    raise ValueError(f"non-finite token {token!r}")


def _loads(text, what):
    try:
        return json.loads(text, parse_constant=_reject_constant)
    except json.JSONDecodeError as exc:
        raise ParseError(f"malformed {what}: {exc.msg}", exc.lineno, exc.colno) from None
    except ValueError as exc:
        raise ParseError(f"malformed {what}: {exc}") from None


def _read_text(path):
    try:
        with open(path, "rb") as fh:
            raw = fh.read()
    except OSError as exc:
        raise IoError(f"cannot read {path}: {exc.strerror or exc}") from exc
    try:
        return raw.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise ParseError(f"{path} is not UTF-8: {exc.reason}") from None


def _write_text(path, text):
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        raise IoError(f"cannot write {path}: {exc.strerror or exc}") from exc


def _real(value, where):
    # bool is an int subclass; reject it explicitly
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ParseError(f"{where}: expected a number, got {value!r}")
    try:
        out = float(value)
    except OverflowError:
        raise ParseError(f"{where}: value out of range") from None
    if not math.isfinite(out):
        raise ParseError(f"{where}: non-finite value")
    return out


def _positive_int(obj, key):
    value = obj.get(key)
    if isinstance(value, bool) or not isinstance(value, int) or value < 1:
        raise ParseError(f"{key!r} must be a positive integer, got {value!r}")
    return value


def matrix_from_obj(obj):
    if not isinstance(obj, dict):
        raise ParseError("matrix file must hold a JSON object")
    rows = _positive_int(obj, "rows")
    cols = _positive_int(obj, "cols")
    data = obj.get("data")
    if not isinstance(data, list):
        raise ParseError("'data' must be a list of rows")
    if len(data) != rows:
        raise DimensionMismatch(f"declared rows={rows} but data has {len(data)} rows")
    out = np.empty((rows, cols), dtype=np.complex128)
    for i, row in enumerate(data):
        if not isinstance(row, list):
            raise ParseError(f"row {i} is not a list")
        if len(row) != cols:
            raise DimensionMismatch(f"declared cols={cols} but row {i} has {len(row)} entries")
        for j, entry in enumerate(row):
            if not isinstance(entry, list) or len(entry) != 2:
                raise ParseError(f"entry ({i}, {j}) must be a [re, im] pair")
            out[i, j] = complex(_real(entry[0], f"entry ({i}, {j})"), _real(entry[1], f"entry ({i}, {j})"))
    return out


def format_matrix(m):
    m = np.asarray(m, dtype=np.complex128)
    if m.ndim != 2:
        raise ValueError(f"expected a 2-D matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError("cannot serialise non-finite entries")
    rows = [
        "[" + ",".join(f"[{float(z.real)!r},{float(z.imag)!r}]" for z in row) + "]"
        for row in m
    ]
    return f'{{"rows":{m.shape[0]},"cols":{m.shape[1]},"data":[\n' + ",\n".join(rows) + "\n]}\n"


def read_matrix(path):
    return matrix_from_obj(_loads(_read_text(path), f"matrix file {path}"))


def write_matrix(m, path):
    _write_text(path, format_matrix(m))


def format_report(report, version=TOOL_VERSION):
    fields = {name: getattr(report, name) for name in REPORT_FIELDS}
    fields["version"] = version
    return json.dumps(fields, indent=2) + "\n"


def write_report(report, path):
    _write_text(path, format_report(report))


def read_report(path):
    """Read a report file back; returns ``(VerificationReport, version)``."""
    obj = _loads(_read_text(path), f"report file {path}")
    if not isinstance(obj, dict):
        raise ParseError("report file must hold a JSON object")
    missing = [k for k in REPORT_FIELDS + ("version",) if k not in obj]
    if missing:
        raise ParseError(f"report file lacks {', '.join(missing)}")
    values = {k: _real(obj[k], k) for k in REPORT_FIELDS if k != "passed"}
    if not isinstance(obj["passed"], bool):
        raise ParseError("'passed' must be true or false")
    report = VerificationReport(**values, passed=obj["passed"])
    if report.passed != (report.max_residual() <= report.tol):
        raise ParseError("'passed' contradicts the residuals and tol")
    return report, str(obj["version"])
