"""
Algebra files.

::

    # the five-element Heyting algebra with two incomparable atoms
    name: diamond5
    universe: 0 a b c 1
    leq:
    1 1 1 1 1
    0 1 0 1 1
    0 0 1 1 1
    0 0 0 1 1
    0 0 0 0 1
    fusion:
    0 0 0 0 0
    0 a 0 a a
    0 0 b b b
    0 a b c c
    0 a b c 1
"""
import os

from ..errors import AlgebraFormatError
from .lattice import build_lattice


def _strip(line):
    return line.split("#", 1)[0].strip()


def parse_algebra(text, *, name=None):
    """
    Parse the algebra text format and validate the result.

    Parameters
    ----------
    text: str
        File contents
    name: str (optional)
        Reference stored with the algebra when the file has no ``name:`` line

    Returns
    -------
    ResiduatedLattice

    Raises
    ------
    AlgebraFormatError
        Missing sections or malformed rows.
    """
    lines = [_strip(line) for line in text.splitlines()]
    lines = [line for line in lines if line]
    fields = {"name": name, "universe": None, "leq": None, "fusion": None}

    pos = 0
    while pos < len(lines):
        key, sep, rest = lines[pos].partition(":")
        key = key.strip().lower()
        if not sep or key not in fields:
            raise AlgebraFormatError(f"Unexpected line {lines[pos]!r}")
        rest = rest.strip()
        pos += 1
        if key == "name":
            fields["name"] = rest
        elif key == "universe":
            fields["universe"] = rest.split()
            if not fields["universe"]:
                raise AlgebraFormatError("The universe is empty")
        else:
            if fields["universe"] is None:
                raise AlgebraFormatError(f"'{key}:' must come after 'universe:'")
            n = len(fields["universe"])
            rows = [rest.split()] if rest else []
            while len(rows) < n and pos < len(lines):
                rows.append(lines[pos].split())
                pos += 1
            if len(rows) != n or any(len(row) != n for row in rows):
                raise AlgebraFormatError(f"'{key}:' needs {n} rows of {n} entries")
            fields[key] = rows

    for key in ("universe", "leq", "fusion"):
        if fields[key] is None:
            raise AlgebraFormatError(f"Missing '{key}:' section")
    try:
        leq = [[bool(int(entry)) for entry in row] for row in fields["leq"]]
    except ValueError:
        raise AlgebraFormatError("Rows of 'leq:' must contain 0 or 1") from None

    return build_lattice(fields["universe"], leq, fields["fusion"], name=fields["name"] or "custom")


def load_algebra(path):
    """Read and validate an algebra file; the file name is used when it has no ``name:`` line."""
    with open(path, encoding="utf-8") as f:
        text = f.read()
    algebra = parse_algebra(text, name=os.path.basename(path))
    # Models and derivations refer to the algebra by its path so they stay loadable.
    return algebra.renamed(path)


def dump_algebra(algebra):
    """Render an algebra in the algebra text format."""
    lines = [f"name: {algebra.name}", "universe: " + " ".join(algebra.labels), "leq:"]
    lines += [" ".join("1" if v else "0" for v in row) for row in algebra.leq]
    lines.append("fusion:")
    lines += [" ".join(algebra.labels[v] for v in row) for row in algebra.fusion]
    return "\n".join(lines) + "\n"
