"""Nameplate, bounds and parameter files; CSV writers.

Nameplate files are UTF-8 text with one ``key = value`` (or ``key: value``)
pair per line and ``#`` comments.  Parameter and bounds files are CSV with a
header row: ``name,value`` and ``name,lo,hi`` respectively.
"""

from __future__ import annotations

import csv
import math
from pathlib import Path

from .motor_model import PARAM_NAMES, CircuitParams, Nameplate, suggest_pole_pairs
from .objective import SearchBounds

NAMEPLATE_KEYS = ("t_start", "t_full_load", "t_max", "i_start", "i_full_load", "pf_full_load",
                  "s_full_load", "v_line", "freq", "p_rated", "pole_pairs")


class InputError(ValueError):
    """Malformed or invalid input file."""


def fmt(value) -> str:
    """Shortest round-trip decimal form, so CSV output is byte-stable."""
    if value is None:
        return "NA"
    if isinstance(value, (int,)) and not isinstance(value, bool):
        return str(value)
    return repr(float(value))


def _parse_float(text: str, key: str, where: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise InputError(f"{where}: value for '{key}' is not a number: {text!r}") from None
    if not math.isfinite(value):
        raise InputError(f"{where}: value for '{key}' is not finite")
    return value


def parse_nameplate(text: str, source: str = "<nameplate>") -> Nameplate:
    values = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        sep = "=" if "=" in line else ":" if ":" in line else None
        if sep is None:
            raise InputError(f"{source}:{lineno}: expected 'key = value', got {raw!r}")
        key, val = (part.strip() for part in line.split(sep, 1))
        if key not in NAMEPLATE_KEYS:
            raise InputError(f"{source}:{lineno}: unknown key '{key}'")
        if key in values:
            raise InputError(f"{source}:{lineno}: duplicate key '{key}'")
        values[key] = _parse_float(val, key, f"{source}:{lineno}")

    missing = [k for k in NAMEPLATE_KEYS if k not in values]
    if missing:
        msg = f"{source}: missing key(s): {', '.join(missing)}"
        if missing == ["pole_pairs"]:
            hint = suggest_pole_pairs(values["t_full_load"], values["s_full_load"],
                                      values["p_rated"], values["freq"])
            msg += f" (rated power, torque and slip suggest pole_pairs = {hint})"
        raise InputError(msg)
    if values["pole_pairs"] != int(values["pole_pairs"]):
        raise InputError(f"{source}: pole_pairs must be an integer")
    values["pole_pairs"] = int(values["pole_pairs"])
    try:
        return Nameplate(**values)
    except ValueError as exc:
        raise InputError(f"{source}: {exc}") from None


def read_nameplate(path) -> Nameplate:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read nameplate file {path}: {exc}") from None
    return parse_nameplate(text, str(path))


def write_nameplate(path, nameplate: Nameplate) -> None:
    lines = [f"{k} = {fmt(getattr(nameplate, k))}" for k in NAMEPLATE_KEYS]
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def _read_rows(path, header: list) -> list:
    path = Path(path)
    try:
        with path.open(newline="", encoding="utf-8") as fh:
            rows = [r for r in csv.reader(fh) if r and not r[0].lstrip().startswith("#")]
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from None
    if not rows or [c.strip() for c in rows[0]] != header:
        raise InputError(f"{path}: expected header {','.join(header)}")
    return rows[1:]


def _collect(path, rows, width):
    seen = {}
    for r in rows:
        if len(r) != width:
            raise InputError(f"{path}: malformed row {r!r}")
        name = r[0].strip()
        if name not in PARAM_NAMES:
            raise InputError(f"{path}: unknown parameter '{name}'")
        if name in seen:
            raise InputError(f"{path}: duplicate parameter '{name}'")
        seen[name] = [_parse_float(v.strip(), name, str(path)) for v in r[1:]]
    missing = [n for n in PARAM_NAMES if n not in seen]
    if missing:
        raise InputError(f"{path}: missing parameter(s): {', '.join(missing)}")
    return seen


def read_params(path) -> CircuitParams:
    seen = _collect(path, _read_rows(path, ["name", "value"]), 2)
    try:
        return CircuitParams(**{n: seen[n][0] for n in PARAM_NAMES})
    except ValueError as exc:
        raise InputError(f"{path}: {exc}") from None


def read_bounds(path) -> SearchBounds:
    seen = _collect(path, _read_rows(path, ["name", "lo", "hi"]), 3)
    try:
        return SearchBounds(tuple(seen[n][0] for n in PARAM_NAMES),
                            tuple(seen[n][1] for n in PARAM_NAMES))
    except ValueError as exc:
        raise InputError(f"{path}: {exc}") from None


def write_csv(path, header, rows) -> None:
    with Path(path).open("w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow([c if isinstance(c, str) else fmt(c) for c in row])


def write_params(path, params: CircuitParams) -> None:
    write_csv(path, ["name", "value"], [(n, getattr(params, n)) for n in PARAM_NAMES])
