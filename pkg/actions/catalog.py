"""
The 27 threshold-update action models and their classification.

Every catalog model has three states whose preconditions form the
finest partition  <lt> B | (=) B | [gt] ~B  and the full relation.
Column i encodes its posts as i-1 in base 3, σ1 most significant,
digits 0 -> B, 1 -> T, 2 -> ~B.
"""
from __future__ import annotations

from dataclasses import dataclass, replace
from enum import Enum
from typing import Dict, FrozenSet, List, Tuple

from actions.action_model import (
    NO_CHANGE,
    PLAY_B,
    PLAY_NOT_B,
    ActionModel,
    ActionState,
    PostCondition,
    post_text,
)
from logic.formula import (
    B,
    And,
    Atom,
    DiamLeq,
    EqTheta,
    Formula,
    Not,
    UNARY,
    gt_box,
    strict_box,
    strict_diamond,
    to_text,
)
from threshold.errors import IndexOutOfRange
from threshold.model import BEHAVIOR

DIGIT_POSTS: Tuple[PostCondition, ...] = (PLAY_B, NO_CHANGE, PLAY_NOT_B)


def partition(third_cell: str = "gt") -> Tuple[Formula, Formula, Formula]:
    """Preconditions of σ1..σ3; third_cell="lt" gives the textual [lt] ~B variant."""
    if third_cell == "gt":
        third = gt_box(Not(B))
    elif third_cell == "lt":
        third = strict_box(Not(B))
    else:
        raise ValueError(f"third_cell must be 'gt' or 'lt', got {third_cell!r}")
    return strict_diamond(B), EqTheta(B), third


def _check_index(i: int) -> None:
    if not isinstance(i, int) or not 1 <= i <= 27:
        raise IndexOutOfRange(i)


def post_digits(i: int) -> Tuple[int, int, int]:
    _check_index(i)
    d = i - 1
    return d // 9, d // 3 % 3, d % 3


def table1(i: int, third_cell: str = "gt") -> ActionModel:
    pres = partition(third_cell)
    states = [
        ActionState(f"s{k + 1}", pre, dict(DIGIT_POSTS[digit]))
        for k, (pre, digit) in enumerate(zip(pres, post_digits(i)))
    ]
    return ActionModel.full(states)


def e1() -> ActionModel:
    """Two-state model of the inflating rule."""
    return ActionModel.full(
        [
            ActionState("s1", DiamLeq(B), dict(PLAY_B)),
            ActionState("s2", Not(DiamLeq(B)), dict(NO_CHANGE)),
        ]
    )


def e2() -> ActionModel:
    """Conservative-tie coordination model (column 6)."""
    return table1(6)


# ───────────────────────────────────────────
class CatalogClass(str, Enum):
    TRIVIAL = "trivial"
    NONSENSICAL = "nonsensical"
    COORDINATION_BR = "coordination_br"
    SEEDED_COORDINATION = "seeded_coordination"
    ANTICOORDINATION_BR = "anticoordination_br"
    SEEDED_ANTICOORDINATION = "seeded_anticoordination"
    UNCLASSIFIED = "unclassified"


# Only the ids named in the classification text; the rest stay unclassified.
CLASS_MEMBERS: Dict[CatalogClass, FrozenSet[int]] = {
    CatalogClass.TRIVIAL: frozenset({1, 14, 27}),
    CatalogClass.NONSENSICAL: frozenset({4, 7, 8, 16, 17, 24}),
    CatalogClass.COORDINATION_BR: frozenset({3, 6, 9}),
    CatalogClass.SEEDED_COORDINATION: frozenset({2, 5, 15, 18}),
    CatalogClass.ANTICOORDINATION_BR: frozenset({19, 22, 25}),
    CatalogClass.SEEDED_ANTICOORDINATION: frozenset({10, 13, 23, 26}),
}


def classify(i: int) -> CatalogClass:
    _check_index(i)
    for cls, members in CLASS_MEMBERS.items():
        if i in members:
            return cls
    return CatalogClass.UNCLASSIFIED


@dataclass(frozen=True)
class CatalogEntry:
    index: int
    model: ActionModel
    klass: CatalogClass

    def row(self) -> str:
        cells = " | ".join(f"{to_text(s.pre)} → {post_text(s.post)}" for s in self.model.states)
        return f"{self.index:2d}: {cells} | class={self.klass.value}"


def catalog(third_cell: str = "gt") -> List[CatalogEntry]:
    return [CatalogEntry(i, table1(i, third_cell), classify(i)) for i in range(1, 28)]


# ───────────────────────────────────────────
# symmetries
def _swap_post(post: PostCondition) -> PostCondition:
    return {k: (not v if k == BEHAVIOR else v) for k, v in post.items()}


def swap_posts(action_model: ActionModel) -> ActionModel:
    """Interchange the post values B and ~B; column i maps to column 28 - i."""
    return replace(
        action_model,
        states=tuple(replace(s, post=_swap_post(s.post)) for s in action_model.states),
    )


def _swap_atom(f: Formula) -> Formula:
    if isinstance(f, Atom):
        return Not(f) if f.name == BEHAVIOR else f
    if isinstance(f, And):
        return And(_swap_atom(f.left), _swap_atom(f.right))
    if isinstance(f, UNARY):
        return type(f)(_swap_atom(f.sub))
    return f


def dual(action_model: ActionModel) -> ActionModel:
    """B and ~B interchanged in pre- and postconditions alike."""
    return replace(
        action_model,
        states=tuple(
            replace(s, pre=_swap_atom(s.pre), post=_swap_post(s.post)) for s in action_model.states
        ),
    )
