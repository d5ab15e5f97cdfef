"""
Model files.

::

    # counterexample to (K) over the three-element MV chain
    algebra: lukasiewicz(3)
    constants: off
    worlds: w u
    R: w u = 0.5
    val: p @ u = 0.5
    val: q @ u = 0

Absent accessibility entries are ``0``; absent valuation entries take the ``default:`` value
(``1`` when the line is missing).
"""
import os
import re

import numpy as np

from ..algebra.presets import resolve_algebra
from ..config import to_boolean
from ..errors import ModelFormatError, UnknownConstant
from .kripke import KripkeFrame, KripkeModel

_RELATION = re.compile(r"^(\S+)\s+(\S+)\s*=\s*(\S+)$")
_VALUATION = re.compile(r"^([$a-z][a-zA-Z0-9_]*)\s*@\s*(\S+)\s*=\s*(\S+)$")


def _strip(line):
    return line.split("#", 1)[0].strip()


def _element(algebra, label, line):
    try:
        return algebra.index(label)
    except UnknownConstant:
        raise ModelFormatError(f"{label!r} is not an element of {algebra.name} in line {line!r}") from None


def parse_model(text, *, base_dir=None):
    """
    Parse the model text format.

    Parameters
    ----------
    text: str
    base_dir: str (optional)
        Directory against which a relative algebra file reference is resolved

    Returns
    -------
    KripkeModel

    Raises
    ------
    ModelFormatError
    """
    header = {"algebra": None, "constants": None, "worlds": None, "default": None}
    relations, valuations = [], []
    for raw in text.splitlines():
        line = _strip(raw)
        if not line:
            continue
        key, sep, rest = line.partition(":")
        key, rest = key.strip().lower(), rest.strip()
        if not sep:
            raise ModelFormatError(f"Unexpected line {line!r}")
        if key in header:
            if header[key] is not None:
                raise ModelFormatError(f"Duplicate '{key}:' line")
            header[key] = rest
        elif key == "r":
            relations.append(line)
        elif key == "val":
            valuations.append(line)
        else:
            raise ModelFormatError(f"Unknown key {key!r} in line {line!r}")

    if header["algebra"] is None:
        raise ModelFormatError("Missing 'algebra:' line")
    if header["worlds"] is None:
        raise ModelFormatError("Missing 'worlds:' line")
    constants = None
    if header["constants"] is not None:
        constants = to_boolean(header["constants"])
        if constants is None:
            raise ModelFormatError(f"'constants:' must be on or off, got {header['constants']!r}")
    algebra = resolve_algebra(header["algebra"], constants=constants, base_dir=base_dir)

    worlds = header["worlds"].split()
    if not worlds:
        raise ModelFormatError("The model has no worlds")
    if len(set(worlds)) != len(worlds):
        raise ModelFormatError(f"World names are not distinct: {worlds}")
    position = {w: i for i, w in enumerate(worlds)}

    def world(name, line):
        if name not in position:
            raise ModelFormatError(f"Unknown world {name!r} in line {line!r}")
        return position[name]

    default = algebra.top
    if header["default"] is not None:
        default = _element(algebra, header["default"], header["default"])

    relation = np.full((len(worlds), len(worlds)), algebra.bottom, dtype=np.intp)
    for line in relations:
        match = _RELATION.match(line.partition(":")[2].strip())
        if not match:
            raise ModelFormatError(f"Malformed accessibility line {line!r}")
        source, target, label = match.groups()
        relation[world(source, line), world(target, line)] = _element(algebra, label, line)

    valuation = {}
    for line in valuations:
        match = _VALUATION.match(line.partition(":")[2].strip())
        if not match:
            raise ModelFormatError(f"Malformed valuation line {line!r}")
        variable, name, label = match.groups()
        values = valuation.setdefault(variable, [default] * len(worlds))
        values[world(name, line)] = _element(algebra, label, line)

    return KripkeModel(KripkeFrame(algebra, worlds, relation), valuation, default=default)


def load_model(path):
    """Read a model file; relative algebra files are looked up next to it."""
    with open(path, encoding="utf-8") as f:
        text = f.read()
    return parse_model(text, base_dir=os.path.dirname(os.path.abspath(path)))


def dump_model(model, *, comment=None):
    """
    Render a model in the model text format.

    Only accessibility values other than ``0`` and valuation entries other than the default are
    written, in world order and then variable order.
    """
    algebra = model.algebra
    labels = algebra.labels
    lines = []
    if comment:
        lines.extend(f"# {line}" for line in comment.splitlines())
    lines.append(f"algebra: {algebra.name}")
    lines.append(f"constants: {'on' if algebra.constants else 'off'}")
    lines.append("worlds: " + " ".join(model.worlds))
    if model.default != algebra.top:
        lines.append(f"default: {labels[model.default]}")
    relation = model.frame.relation
    for i, source in enumerate(model.worlds):
        for j, target in enumerate(model.worlds):
            if relation[i, j] != algebra.bottom:
                lines.append(f"R: {source} {target} = {labels[relation[i, j]]}")
    for variable in sorted(model.valuation):
        for i, name in enumerate(model.worlds):
            value = int(model.valuation[variable][i])
            if value != model.default:
                lines.append(f"val: {variable} @ {name} = {labels[value]}")
    return "\n".join(lines) + "\n"
