"""JSON documents: quiver input files, run configuration and report rendering."""

from __future__ import annotations

import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .exceptions import MalformedDocument, QuiverError, UnknownFamily, ZeroScale
from .quiver import DEFAULT_MAX_PERIOD, ExchangeMatrix, QuiverFamilyParams, fomin6, new_exchange_matrix

SCHEMA_VERSION = "1"
FAMILIES = {"fomin6": ("r", "s", "t", "p")}


@dataclass(frozen=True)
class QuiverDocument:
    matrix: ExchangeMatrix
    family: dict | None = None
    label: str | None = None
    schema_version: str = SCHEMA_VERSION

    def to_dict(self) -> dict:
        out: dict = {"schema_version": self.schema_version}
        if self.label is not None:
            out["label"] = self.label
        if self.family is not None:
            out["family"] = dict(self.family)
        else:
            out["matrix"] = self.matrix.tolist()
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"


def family_matrix(name: str, params: dict) -> ExchangeMatrix:
    if name not in FAMILIES:
        raise UnknownFamily(f"unknown quiver family {name!r}; known: {sorted(FAMILIES)}")
    try:
        return fomin6(QuiverFamilyParams(**{k: params[k] for k in FAMILIES[name]}))
    except KeyError as exc:
        raise MalformedDocument(f"family {name!r} needs parameter {exc.args[0]!r}") from None
    except (TypeError, ValueError) as exc:
        raise MalformedDocument(str(exc)) from None


def example_document(name: str, *params: int, label: str | None = None) -> QuiverDocument:
    if name not in FAMILIES:
        raise UnknownFamily(f"unknown quiver family {name!r}; known: {sorted(FAMILIES)}")
    keys = FAMILIES[name]
    if len(params) != len(keys):
        raise MalformedDocument(f"{name} takes {len(keys)} parameters {keys}")
    family = {"name": name, **dict(zip(keys, params))}
    return QuiverDocument(family_matrix(name, family), family, label)


def parse_document(obj) -> QuiverDocument:
    if not isinstance(obj, dict):
        raise MalformedDocument("document must be a JSON object")
    version = obj.get("schema_version", SCHEMA_VERSION)
    if str(version) != SCHEMA_VERSION:
        raise MalformedDocument(f"unsupported schema_version {version!r}")
    label = obj.get("label")
    if label is not None and not isinstance(label, str):
        raise MalformedDocument("label must be a string")
    has_matrix, has_family = "matrix" in obj, "family" in obj
    if has_matrix == has_family:
        raise MalformedDocument("document needs exactly one of 'matrix' or 'family'")
    if has_family:
        fam = obj["family"]
        if not isinstance(fam, dict) or "name" not in fam:
            raise MalformedDocument("family must be an object with a 'name'")
        return QuiverDocument(family_matrix(fam["name"], fam), dict(fam), label, str(version))
    rows = obj["matrix"]
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise MalformedDocument("matrix must be a list of integer rows")
    if any(isinstance(x, bool) or not isinstance(x, int) for r in rows for x in r):
        raise MalformedDocument("matrix entries must be integers")
    try:
        B = new_exchange_matrix(rows)
    except QuiverError as exc:
        raise MalformedDocument(str(exc)) from None
    return QuiverDocument(B, None, label, str(version))


def load_document(path) -> QuiverDocument:
    try:
        text = sys.stdin.read() if str(path) == "-" else Path(path).read_text()
        obj = json.loads(text)
    except (OSError, json.JSONDecodeError) as exc:
        raise MalformedDocument(f"cannot read {path}: {exc}") from None
    return parse_document(obj)


@dataclass(frozen=True)
class RunConfig:
    seed: int = 42
    trials: int = 100
    tol: float = 1e-8
    max_period: int = DEFAULT_MAX_PERIOD
    scale: Fraction = Fraction(1)
    post_transform: tuple | None = None
    period: int | None = None

    def __post_init__(self):
        if not self.tol > 0:
            raise MalformedDocument("tol must be positive")
        if self.trials < 1:
            raise MalformedDocument("trials must be at least 1")
        if self.seed < 0:
            raise MalformedDocument("seed must be non-negative")
        if self.max_period < 1:
            raise MalformedDocument("max_period must be at least 1")
        if Fraction(self.scale) == 0:
            raise ZeroScale("scale must be nonzero")


def fmt_residual(x: float) -> str:
    return f"{x:.3g}"


def fraction_rows(rows) -> list[list[str]]:
    return [[str(Fraction(x)) for x in row] for row in rows]


def render_text(obj, indent: int = 0) -> str:
    """Plain-text rendering that mirrors the JSON report key for key."""
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict):
        for key, value in obj.items():
            if isinstance(value, (dict, list)) and value and not _is_flat_list(value):
                lines.append(f"{pad}{key}:")
                lines.append(render_text(value, indent + 1))
            else:
                lines.append(f"{pad}{key}: {_scalar(value)}")
    elif isinstance(obj, list):
        for item in obj:
            if isinstance(item, (dict, list)) and not _is_flat_list(item):
                lines.append(f"{pad}-")
                lines.append(render_text(item, indent + 1))
            else:
                lines.append(f"{pad}- {_scalar(item)}")
    else:
        lines.append(f"{pad}{_scalar(obj)}")
    return "\n".join(lines)


def _is_flat_list(value) -> bool:
    return isinstance(value, list) and all(
        not isinstance(v, (dict, list)) and not (isinstance(v, str) and " " in v) for v in value
    )


def _scalar(value) -> str:
    if isinstance(value, list):
        return "[" + ", ".join(_scalar(v) for v in value) + "]"
    if isinstance(value, dict):
        return "{}"
    if value is None:
        return "null"
    if isinstance(value, bool):
        return "true" if value else "false"
    return str(value)
