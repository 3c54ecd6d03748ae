"""
Formula AST for the threshold language and the friendship language.

Derived operators never get their own node; the constructors below
expand them:

    <lt> φ  = <le> φ & ~(=) φ
    [lt] φ  = [le] φ & ~(=) φ
    [gt] φ  = ~<le> ~φ
    Up      = ~Bp & ~Bnp
    φ | ψ   = ~(~φ & ~ψ)
    φ -> ψ  = ~(φ & ~ψ)

`to_text` re-sugars those shapes, and parse(to_text(f)) == f holds for
every AST.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from typing import Dict, Iterator, Mapping, Optional, Tuple

from threshold.model import BEHAVIOR, BELIEF_NOT_P, BELIEF_P, atom_sort_key


class Formula:
    """Base class of all nodes."""

    __slots__ = ()

    def __str__(self) -> str:
        return to_text(self)


@dataclass(frozen=True, repr=False)
class Top(Formula):
    def __repr__(self):
        return "Top()"


@dataclass(frozen=True)
class Atom(Formula):
    name: str


@dataclass(frozen=True)
class Not(Formula):
    sub: Formula


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class DiamLeq(Formula):
    """<le> φ – at least a theta share of neighbours satisfy φ."""

    sub: Formula


@dataclass(frozen=True)
class BoxLeq(Formula):
    """[le] φ – every theta-large set of neighbours satisfies φ."""

    sub: Formula


@dataclass(frozen=True)
class EqTheta(Formula):
    """(=) φ – exactly a theta share of neighbours satisfy φ."""

    sub: Formula


@dataclass(frozen=True)
class BoxF(Formula):
    """F φ – all friends satisfy φ."""

    sub: Formula


@dataclass(frozen=True)
class DiamF(Formula):
    """<F> φ – some friend satisfies φ."""

    sub: Formula


UNARY = (Not, DiamLeq, BoxLeq, EqTheta, BoxF, DiamF)
THRESHOLD_MODALITIES = (DiamLeq, BoxLeq, EqTheta)

TOP = Top()
B = Atom(BEHAVIOR)
BP = Atom(BELIEF_P)
BNP = Atom(BELIEF_NOT_P)


# ───────────────────────────────────────────
# derived operators
def neg(f: Formula) -> Formula:
    """Negation that cancels a leading ~ instead of stacking another."""
    return f.sub if isinstance(f, Not) else Not(f)


def disj(left: Formula, right: Formula) -> Formula:
    return Not(And(Not(left), Not(right)))


def impl(left: Formula, right: Formula) -> Formula:
    return Not(And(left, Not(right)))


def strict_diamond(f: Formula) -> Formula:
    return And(DiamLeq(f), Not(EqTheta(f)))


def strict_box(f: Formula) -> Formula:
    return And(BoxLeq(f), Not(EqTheta(f)))


def gt_box(f: Formula) -> Formula:
    return Not(DiamLeq(neg(f)))


def undecided() -> Formula:
    return And(Not(BP), Not(BNP))


def conjoin(*parts: Formula) -> Formula:
    """Left-nested conjunction; T for no parts."""
    if not parts:
        return TOP
    return reduce(And, parts)


def disjoin(*parts: Formula) -> Optional[Formula]:
    if not parts:
        return None
    return reduce(disj, parts)


# ───────────────────────────────────────────
def children(f: Formula) -> Tuple[Formula, ...]:
    if isinstance(f, UNARY):
        return (f.sub,)
    if isinstance(f, And):
        return (f.left, f.right)
    return ()


def walk(f: Formula) -> Iterator[Formula]:
    yield f
    for c in children(f):
        yield from walk(c)


def depth(f: Formula) -> int:
    kids = children(f)
    return 0 if not kids else 1 + max(depth(c) for c in kids)


def atoms(f: Formula) -> frozenset:
    return frozenset(n.name for n in walk(f) if isinstance(n, Atom))


def uses_threshold(f: Formula) -> bool:
    return any(isinstance(n, THRESHOLD_MODALITIES) for n in walk(f))


# ───────────────────────────────────────────
# atom-state formulas: conjunctions of literals
def literals(f: Formula) -> Optional[Dict[str, bool]]:
    """Atom assignment of a literal conjunction, or None if f is not one."""
    out: Dict[str, bool] = {}

    def visit(node: Formula) -> bool:
        if isinstance(node, And):
            return visit(node.left) and visit(node.right)
        if isinstance(node, Atom):
            value = True
        elif isinstance(node, Not) and isinstance(node.sub, Atom):
            node, value = node.sub, False
        else:
            return False
        if out.get(node.name, value) != value:
            return False
        out[node.name] = value
        return True

    return out if visit(f) else None


def literal_formula(assignment: Mapping[str, bool]) -> Formula:
    """Normal form of an atom assignment: literals in atom order."""
    parts = [
        Atom(name) if value else Not(Atom(name))
        for name, value in sorted(assignment.items(), key=lambda kv: atom_sort_key(kv[0]))
    ]
    return conjoin(*parts)


# ───────────────────────────────────────────
# printer
_IMPL, _OR, _AND, _UNARY = 1, 2, 3, 4

_UNARY_TOKENS = {
    Not: "~",
    DiamLeq: "<le>",
    BoxLeq: "[le]",
    EqTheta: "(=)",
    BoxF: "F",
    DiamF: "<F>",
}


def _shape(f: Formula):
    """Classify f for printing, recognising expanded derived operators."""
    if isinstance(f, Not):
        sub = f.sub
        if isinstance(sub, And):
            if isinstance(sub.left, Not) and isinstance(sub.right, Not):
                return "or", sub.left.sub, sub.right.sub
            if isinstance(sub.right, Not):
                return "impl", sub.left, sub.right.sub
        if isinstance(sub, DiamLeq):
            inner = sub.sub
            if isinstance(inner, Not) and not isinstance(inner.sub, Not):
                return "prefix", "[gt]", inner.sub
            if not isinstance(inner, Not):
                return "prefix", "[gt]", Not(inner)
        return "prefix", "~", sub
    if isinstance(f, And):
        if isinstance(f.right, Not) and isinstance(f.right.sub, EqTheta):
            tied = f.right.sub.sub
            if isinstance(f.left, DiamLeq) and f.left.sub == tied:
                return "prefix", "<lt>", tied
            if isinstance(f.left, BoxLeq) and f.left.sub == tied:
                return "prefix", "[lt]", tied
        return "and", f.left, f.right
    if isinstance(f, UNARY):
        return "prefix", _UNARY_TOKENS[type(f)], f.sub
    if isinstance(f, Top):
        return "leaf", "T", None
    if isinstance(f, Atom):
        return "leaf", f.name, None
    raise TypeError(f"not a formula: {f!r}")


def _render(f: Formula, level: int) -> str:
    kind, a, b = _shape(f)
    if kind == "leaf":
        return a
    if kind == "prefix":
        text, own = f"{a} {_render(b, _UNARY)}" if a != "~" else f"~{_render(b, _UNARY)}", _UNARY
    elif kind == "and":
        text, own = f"{_render(a, _AND)} & {_render(b, _UNARY)}", _AND
    elif kind == "or":
        text, own = f"{_render(a, _OR)} | {_render(b, _AND)}", _OR
    else:
        text, own = f"{_render(a, _OR)} -> {_render(b, _IMPL)}", _IMPL
    return f"({text})" if own < level else text


def to_text(f: Formula) -> str:
    """Canonical concrete syntax."""
    return _render(f, _IMPL)
