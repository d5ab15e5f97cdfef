"""
Modal formula trees.

Only core connectives are nodes; negation, biconditional, strong disjunction and powers are
built from them by the helper constructors at the bottom of this module.
"""
from dataclasses import dataclass, field
from functools import reduce
from typing import Iterator, Tuple


class Formula:
    """Base class of formula nodes. Nodes are immutable and hashable."""

    __slots__ = ()

    children: Tuple["Formula", ...] = ()

    def __str__(self):
        from .parser import render

        return render(self)


def _cache_hash(node, *parts):
    object.__setattr__(node, "_hash", hash((type(node).__name__,) + parts))


@dataclass(frozen=True, eq=True)
class Var(Formula):
    name: str
    _hash: int = field(init=False, repr=False, compare=False, default=0)

    def __post_init__(self):
        _cache_hash(self, self.name)

    def __hash__(self):
        return self._hash


@dataclass(frozen=True, eq=True)
class Zero(Formula):
    def __hash__(self):
        return hash("Zero")


@dataclass(frozen=True, eq=True)
class One(Formula):
    def __hash__(self):
        return hash("One")


@dataclass(frozen=True, eq=True)
class Const(Formula):
    """Canonical constant naming the element displayed as ``label``."""

    label: str
    _hash: int = field(init=False, repr=False, compare=False, default=0)

    def __post_init__(self):
        _cache_hash(self, self.label)

    def __hash__(self):
        return self._hash


@dataclass(frozen=True, eq=True)
class Meta(Formula):
    """Formula metavariable of a schema."""

    name: str
    _hash: int = field(init=False, repr=False, compare=False, default=0)

    def __post_init__(self):
        _cache_hash(self, self.name)

    def __hash__(self):
        return self._hash


@dataclass(frozen=True, eq=True)
class MetaConst(Formula):
    """Element metavariable of a schema, matched by canonical constants."""

    name: str
    _hash: int = field(init=False, repr=False, compare=False, default=0)

    def __post_init__(self):
        _cache_hash(self, self.name)

    def __hash__(self):
        return self._hash


@dataclass(frozen=True, eq=True)
class Binary(Formula):
    left: Formula
    right: Formula
    _hash: int = field(init=False, repr=False, compare=False, default=0)

    def __post_init__(self):
        _cache_hash(self, self.left, self.right)

    def __hash__(self):
        return self._hash

    @property
    def children(self):
        return (self.left, self.right)


@dataclass(frozen=True, eq=True, repr=True)
class And(Binary):
    __hash__ = Binary.__hash__


@dataclass(frozen=True, eq=True, repr=True)
class Or(Binary):
    __hash__ = Binary.__hash__


@dataclass(frozen=True, eq=True, repr=True)
class Fusion(Binary):
    __hash__ = Binary.__hash__


@dataclass(frozen=True, eq=True, repr=True)
class Implies(Binary):
    __hash__ = Binary.__hash__


@dataclass(frozen=True, eq=True)
class Modal(Formula):
    child: Formula
    _hash: int = field(init=False, repr=False, compare=False, default=0)

    def __post_init__(self):
        _cache_hash(self, self.child)

    def __hash__(self):
        return self._hash

    @property
    def children(self):
        return (self.child,)


@dataclass(frozen=True, eq=True, repr=True)
class Box(Modal):
    __hash__ = Modal.__hash__


@dataclass(frozen=True, eq=True, repr=True)
class Diamond(Modal):
    __hash__ = Modal.__hash__


ZERO = Zero()
ONE = One()


def rebuild(node, children):
    """A node of the same kind as ``node`` with new children."""
    if isinstance(node, Binary):
        return type(node)(*children)
    if isinstance(node, Modal):
        return type(node)(children[0])
    return node


# Sugar


def neg(phi):
    return Implies(phi, ZERO)


def iff(phi, psi):
    return Fusion(Implies(phi, psi), Implies(psi, phi))


def oplus(phi, psi):
    return neg(Fusion(neg(phi), neg(psi)))


def power(phi, m):
    """``phi^m``, left nested; ``phi^0`` is ``1``."""
    if m == 0:
        return ONE
    return reduce(Fusion, [phi] * m)


def times(m, phi):
    """``m.phi``, left nested; ``0.phi`` is ``0``."""
    if m == 0:
        return ZERO
    return reduce(oplus, [phi] * m)


def conj(formulas, empty=ONE):
    formulas = list(formulas)
    return reduce(And, formulas) if formulas else empty


def disj(formulas, empty=ZERO):
    formulas = list(formulas)
    return reduce(Or, formulas) if formulas else empty


# Traversal


def walk(phi) -> Iterator[Formula]:
    """Pre-order traversal, left to right."""
    stack = [phi]
    while stack:
        node = stack.pop()
        yield node
        stack.extend(reversed(node.children))


def subformulas(phi):
    """Distinct subformulas, children before parents."""
    seen = {}

    def visit(node):
        if node in seen:
            return
        for child in node.children:
            visit(child)
        seen[node] = None

    visit(phi)
    return list(seen)


def variables(*formulas):
    """Sorted names of the object variables occurring in ``formulas``."""
    return sorted({node.name for phi in formulas for node in walk(phi) if isinstance(node, Var)})


def constants(*formulas):
    """Labels of the canonical constants occurring in ``formulas``, in order of first occurrence."""
    found = {}
    for phi in formulas:
        for node in walk(phi):
            if isinstance(node, Const):
                found[node.label] = None
    return list(found)


def is_modal(phi):
    return any(isinstance(node, Modal) for node in walk(phi))
