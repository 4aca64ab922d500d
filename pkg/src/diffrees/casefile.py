"""Case files: UTF-8 `key = value` sections describing one input algebra.

Grammar (configparser dialect, `#`-comments):

    [algebra]
    name      = quadric-cone
    variables = X, Y, Z          # comma-separated identifiers
    weights   = 1, 1, 1          # optional, defaults to all 1
    relations = X*Y - Z^2        # ';'-separated and/or one per line

    [expect]                     # optional expected verdicts
    f1 = true
    rees_dim = 4
    torsion_contains = X*T2
    rees_ideal = X*Y; X*T2; Y*T1; T1*T2

    [mode]                       # optional
    run = pipeline               # pipeline | prop31 | en-dump
    seed = 0
    rowops = 2
"""

from __future__ import annotations

import configparser
from dataclasses import dataclass, field

from .errors import ParseError
from .poly import VariableContext, parse_polynomial

_BOOL_KEYS = ("reduced", "condition_i", "f0", "f1", "linear_type", "rees_cm",
              "shortcut_cm", "standard_graded")
_INT_KEYS = ("rees_dim", "rees_depth", "rees_pd", "spread", "edim", "dim")
_TEXT_KEYS = ("torsion_contains", "rees_ideal")


@dataclass
class CaseFile:
    name: str
    context: VariableContext
    relations: tuple
    expectations: dict = field(default_factory=dict)
    mode: str = "pipeline"
    seed: int | None = None
    rowops: int = 0
    path: str | None = None


def _split_values(raw):
    parts = []
    for line in raw.splitlines():
        for chunk in line.split(";"):
            chunk = chunk.strip()
            if chunk:
                parts.append(chunk)
    return parts


def _parse_bool(key, raw):
    low = raw.strip().lower()
    if low in ("true", "yes", "1"):
        return True
    if low in ("false", "no", "0"):
        return False
    raise ParseError(f"expected a boolean for {key!r}, got {raw!r}")


def load_case(path):
    """Parse and lex a case file; algebra-level validation happens later so
    rejections can list every violated hypothesis."""
    parser = configparser.ConfigParser(interpolation=None,
                                       comment_prefixes=("#",))
    parser.optionxform = str
    try:
        with open(path, "r", encoding="utf-8") as fh:
            parser.read_file(fh, source=str(path))
    except OSError as ex:
        raise ParseError(f"cannot read case file: {ex}")
    except configparser.Error as ex:
        raise ParseError(f"bad case file structure: {ex}")

    if not parser.has_section("algebra"):
        raise ParseError("case file needs an [algebra] section")
    section = parser["algebra"]
    if "variables" not in section:
        raise ParseError("[algebra] needs a 'variables' key")
    names = [v.strip() for v in section["variables"].split(",") if v.strip()]
    weights = None
    if "weights" in section:
        try:
            weights = [int(w) for w in section["weights"].split(",")]
        except ValueError:
            raise ParseError("weights must be integers")
    try:
        context = VariableContext(names, weights)
    except ValueError as ex:
        raise ParseError(str(ex))
    relations = []
    for chunk in _split_values(section.get("relations", "")):
        relations.append(parse_polynomial(context, chunk))
    name = section.get("name", "").strip() or "unnamed"

    expectations = {}
    if parser.has_section("expect"):
        for key, raw in parser["expect"].items():
            if key in _BOOL_KEYS:
                expectations[key] = _parse_bool(key, raw)
            elif key in _INT_KEYS:
                try:
                    expectations[key] = int(raw)
                except ValueError:
                    raise ParseError(f"expected an integer for {key!r}")
            elif key in _TEXT_KEYS:
                expectations[key] = _split_values(raw)
            else:
                raise ParseError(f"unknown expectation key {key!r}")

    mode, seed, rowops = "pipeline", None, 0
    if parser.has_section("mode"):
        msec = parser["mode"]
        mode = msec.get("run", "pipeline").strip()
        if mode not in ("pipeline", "prop31", "en-dump"):
            raise ParseError(f"unknown mode {mode!r}")
        if "seed" in msec:
            seed = int(msec["seed"])
        if "rowops" in msec:
            rowops = int(msec["rowops"])

    return CaseFile(name=name, context=context, relations=tuple(relations),
                    expectations=expectations, mode=mode, seed=seed,
                    rowops=rowops, path=str(path))


def load_matrix_file(path):
    """Parse a [matrix] file: `variables`, optional `weights`, and a
    multiline `rows` value with one ';'-separated row per line."""
    parser = configparser.ConfigParser(interpolation=None,
                                       comment_prefixes=("#",))
    parser.optionxform = str
    try:
        with open(path, "r", encoding="utf-8") as fh:
            parser.read_file(fh, source=str(path))
    except (OSError, configparser.Error) as ex:
        raise ParseError(f"cannot read matrix file: {ex}")
    if not parser.has_section("matrix"):
        raise ParseError("matrix file needs a [matrix] section")
    section = parser["matrix"]
    names = [v.strip() for v in section.get("variables", "").split(",")
             if v.strip()]
    if not names:
        raise ParseError("[matrix] needs a 'variables' key")
    weights = None
    if "weights" in section:
        weights = [int(w) for w in section["weights"].split(",")]
    context = VariableContext(names, weights)
    rows = []
    for line in section.get("rows", "").splitlines():
        line = line.strip()
        if not line:
            continue
        rows.append(tuple(parse_polynomial(context, c)
                          for c in line.split(";")))
    if not rows:
        raise ParseError("[matrix] needs a nonempty 'rows' value")
    if len({len(r) for r in rows}) != 1:
        raise ParseError("matrix rows must have equal length")
    from .matrix import PolyMatrix
    return PolyMatrix(context, tuple(rows))
