"""JSON encodings for lattices, isometries, vectors and reports."""

from __future__ import annotations

import dataclasses
import enum
import json
from fractions import Fraction
from pathlib import Path
from typing import Any

from .lattice import IntegerLattice, LatticeError, parse_construct

SCHEMA = "k3lat/1"


class InputError(ValueError):
    """Malformed input file or argument."""


def load_json(source: str) -> Any:
    """Parse ``source`` as inline JSON, or read it as a file path."""
    text = source
    p = Path(source)
    if not source.lstrip().startswith(("[", "{")) and p.exists():
        text = p.read_text()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON in {source!r}: {exc}") from exc


def _int(x, what: str) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise InputError(f"{what} must be an integer, got {x!r}")
    return x


def int_vector(data, what: str = "vector") -> tuple[int, ...]:
    if not isinstance(data, list):
        raise InputError(f"{what} must be a JSON list")
    return tuple(_int(x, what) for x in data)


def rational(x) -> Fraction:
    if isinstance(x, bool):
        raise InputError(f"not a rational number: {x!r}")
    try:
        return Fraction(x) if isinstance(x, (int, str)) else Fraction(str(x))
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"not a rational number: {x!r}") from exc


def rational_vector(data, what: str = "vector") -> tuple[Fraction, ...]:
    if not isinstance(data, list):
        raise InputError(f"{what} must be a JSON list")
    return tuple(rational(x) for x in data)


def int_matrix(data, what: str = "matrix") -> tuple[tuple[int, ...], ...]:
    if isinstance(data, dict):
        data = data.get("matrix")
    if not isinstance(data, list) or not all(isinstance(r, list) for r in data):
        raise InputError(f"{what} must be a list of integer rows")
    return tuple(int_vector(r, what) for r in data)


def lattice_from_json(data) -> IntegerLattice:
    if not isinstance(data, dict) or "gram" not in data:
        raise InputError('lattice JSON must be an object with a "gram" field')
    gram = int_matrix(data["gram"], "gram")
    if "rank" in data and _int(data["rank"], "rank") != len(gram):
        raise InputError(f'"rank" is {data["rank"]} but the Gram matrix has {len(gram)} rows')
    try:
        return IntegerLattice(gram)
    except LatticeError as exc:
        raise InputError(str(exc)) from exc


def lattice_to_json(lat: IntegerLattice) -> dict:
    return {"rank": lat.rank, "gram": [list(r) for r in lat.gram]}


def load_lattice(path: str | None = None, construct: str | None = None) -> IntegerLattice:
    if construct is not None:
        try:
            return parse_construct(construct)
        except LatticeError as exc:
            raise InputError(str(exc)) from exc
    if path is None:
        raise InputError("no lattice given (use a JSON file or a constructor string)")
    return lattice_from_json(load_json(path))


def fmt_rational(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def to_jsonable(obj) -> Any:
    """Dataclasses to dicts, Fractions to "p/q" strings, enums to their values."""
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        from .lattice import IntegerLattice as _L

        if isinstance(obj, _L):
            return lattice_to_json(obj)
        return {f.name: to_jsonable(getattr(obj, f.name))
                for f in dataclasses.fields(obj) if not f.name.startswith("_")}
    if isinstance(obj, enum.Enum):
        return obj.value
    if isinstance(obj, Fraction):
        return fmt_rational(obj)
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(x) for x in obj]
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    return obj


def _render(obj, indent: int) -> str:
    # lists of scalars stay on one line so matrices read as rows
    pad = "  " * (indent + 1)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(k)}: {_render(obj[k], indent + 1)}" for k in sorted(obj)]
        return "{\n" + ",\n".join(items) + "\n" + "  " * indent + "}"
    if isinstance(obj, list):
        if all(not isinstance(x, (list, dict)) for x in obj):
            return json.dumps(obj)
        items = [pad + _render(x, indent + 1) for x in obj]
        return "[\n" + ",\n".join(items) + "\n" + "  " * indent + "]"
    return json.dumps(obj)


def dumps(report: dict) -> str:
    payload = {"schema": SCHEMA, **report}
    return _render(to_jsonable(payload), 0) + "\n"
