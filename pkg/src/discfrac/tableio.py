"""CSV function tables (``index,t,value``) and kernel-spec loading."""

from __future__ import annotations

import csv
import io
import math
from pathlib import Path
from typing import TextIO

from discfrac.errors import InputError
from discfrac.kernels import KernelSpec
from discfrac.sequence_core import GridFunction

HEADER = ["index", "t", "value"]
T_TOL = 1e-9


def fmt(x: float) -> str:
    """17 significant digits: enough to round-trip any double."""
    return format(float(x), ".17g")


def parse_table(text: str) -> GridFunction:
    """Parse a function table; the base is the ``t`` of row 0."""
    reader = csv.reader(io.StringIO(text))
    try:
        header = next(reader)
    except StopIteration:
        raise InputError("table is empty (missing header)") from None
    if [h.strip() for h in header] != HEADER:
        raise InputError(f"line 1: header must be {','.join(HEADER)!r}, got {','.join(header)!r}")

    base = None
    values: list[float] = []
    for lineno, row in enumerate(reader, start=2):
        if not row:
            continue
        if len(row) != 3:
            raise InputError(f"line {lineno}: expected 3 fields, got {len(row)}")
        fields = {}
        for name, raw in zip(HEADER, row):
            try:
                fields[name] = int(raw) if name == "index" else float(raw)
            except ValueError:
                raise InputError(f"line {lineno}, field {name!r}: cannot parse {raw!r}") from None
        k, t, v = fields["index"], fields["t"], fields["value"]
        if k != len(values):
            raise InputError(f"line {lineno}, field 'index': expected {len(values)}, got {k}")
        if not math.isfinite(t):
            raise InputError(f"line {lineno}, field 't': not finite")
        if not math.isfinite(v):
            raise InputError(f"line {lineno}, field 'value': not finite")
        if base is None:
            base = t
        elif abs(t - (base + k)) > T_TOL:
            raise InputError(
                f"line {lineno}, field 't': {t!r} does not match base + index = {base + k!r}"
            )
        values.append(v)

    if base is None:
        raise InputError("table has no rows")
    return GridFunction(base, values)


def read_table(path: str | Path) -> GridFunction:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    return parse_table(text)


def write_table(f: GridFunction, stream: TextIO) -> None:
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(HEADER)
    for k, v in enumerate(f.values):
        writer.writerow([k, fmt(f.base + k), fmt(v)])


def format_table(f: GridFunction) -> str:
    buf = io.StringIO()
    write_table(f, buf)
    return buf.getvalue()


def load_kernel_spec(arg: str) -> KernelSpec:
    """Kernel spec from inline JSON (starting with ``{``) or a JSON file path."""
    text = arg.strip()
    if not text.startswith("{"):
        try:
            text = Path(arg).read_text()
        except OSError as exc:
            raise InputError(f"cannot read kernel spec {arg}: {exc.strerror}") from None
    return KernelSpec.from_json(text)
