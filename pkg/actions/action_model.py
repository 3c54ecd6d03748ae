"""
Action models with postconditions and product update.

An action state is a decision rule: agents satisfying `pre` take the
atom assignment `post` (an empty post means "no change").
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Mapping, Tuple

from logic.checker import ModelChecker
from logic.formula import Formula, literal_formula, to_text
from threshold.errors import (
    AsymmetricRelation,
    EmptyProduct,
    InvalidPostCondition,
    NotAPartition,
    NotFullRelation,
    UnknownAtom,
)
from threshold.model import BEHAVIOR, BELIEF_NOT_P, BELIEF_P, GeneralModel, Network, relabel

logger = logging.getLogger(__name__)

PostCondition = Mapping[str, bool]

NO_CHANGE: PostCondition = {}
PLAY_B: PostCondition = {BEHAVIOR: True}
PLAY_NOT_B: PostCondition = {BEHAVIOR: False}


def check_post(post: PostCondition) -> None:
    for atom, value in post.items():
        if not isinstance(value, bool):
            raise InvalidPostCondition(f"post value for {atom!r} must be true/false, got {value!r}")
    beliefs = {BELIEF_P, BELIEF_NOT_P} & set(post)
    if beliefs:
        if beliefs != {BELIEF_P, BELIEF_NOT_P}:
            raise InvalidPostCondition("a belief post must assign both Bp and Bnp")
        if post[BELIEF_P] and post[BELIEF_NOT_P]:
            raise InvalidPostCondition("Bp and Bnp are mutually exclusive")


def post_text(post: PostCondition) -> str:
    if not post:
        return "T"
    if set(post) == {BEHAVIOR}:
        return "B" if post[BEHAVIOR] else "~B"
    return to_text(literal_formula(post))


@dataclass(frozen=True)
class ActionState:
    id: str
    pre: Formula
    post: PostCondition = field(default_factory=dict)

    def __post_init__(self):
        check_post(self.post)


@dataclass(frozen=True)
class ActionModel:
    states: Tuple[ActionState, ...]
    relation: FrozenSet[Tuple[str, str]]

    def __post_init__(self):
        if not self.states:
            raise ValueError("an action model needs at least one state")
        ids = [s.id for s in self.states]
        if len(set(ids)) != len(ids):
            raise ValueError(f"duplicate action state ids in {ids}")
        known = set(ids)
        for pair in self.relation:
            if not set(pair) <= known:
                raise ValueError(f"relation pair {pair} names an unknown state")

    @classmethod
    def full(cls, states: Iterable[ActionState]) -> "ActionModel":
        states = tuple(states)
        return cls(states, frozenset((s.id, t.id) for s in states for t in states))

    def is_full(self) -> bool:
        return len(self.relation) == len(self.states) ** 2

    def is_symmetric(self) -> bool:
        return all((t, s) in self.relation for s, t in self.relation)

    def state(self, state_id: str) -> ActionState:
        for s in self.states:
            if s.id == state_id:
                return s
        raise KeyError(state_id)


# ───────────────────────────────────────────
def _matches(model: GeneralModel, action_model: ActionModel) -> Dict[object, List[ActionState]]:
    checker = ModelChecker(model)
    out: Dict[object, List[ActionState]] = {a: [] for a in model.agents}
    for s in action_model.states:
        for a in checker.extension(s.pre):
            out[a].append(s)
    return out


def _updated(model: GeneralModel, agent, state: ActionState, atom: str) -> bool:
    if atom in state.post:
        return state.post[atom]
    return agent in model.valuation[atom]


def product_update(model: GeneralModel, action_model: ActionModel) -> GeneralModel:
    """Product over pair agents (a, σ) with a ⊨ pre(σ); theta carried over."""
    for s in action_model.states:
        for atom in s.post:
            if atom not in model.valuation:
                raise UnknownAtom(atom)
    for pair in sorted(action_model.relation):
        if (pair[1], pair[0]) not in action_model.relation:
            raise AsymmetricRelation(pair)

    matches = _matches(model, action_model)
    pairs = [(a, s.id) for a in model.agents for s in matches[a]]
    if not pairs:
        raise EmptyProduct()
    by_agent = {a: [s.id for s in matches[a]] for a in model.agents}
    rel = action_model.relation

    adjacency = {
        (a, sid): frozenset(
            (b, tid) for b in model.neighbors(a) for tid in by_agent[b] if (sid, tid) in rel
        )
        for a, sid in pairs
    }
    states = {s.id: s for s in action_model.states}
    valuation = {
        atom: frozenset(
            (a, sid) for a, sid in pairs if _updated(model, a, states[sid], atom)
        )
        for atom in model.valuation
    }
    logger.debug("Product update: %d agents -> %d pair agents", len(model.agents), len(pairs))
    return type(model)(tuple(pairs), Network(adjacency), valuation, model.theta)


def check_partition(model: GeneralModel, action_model: ActionModel) -> None:
    """Every agent must satisfy exactly one precondition."""
    matches = _matches(model, action_model)
    for a in model.agents:
        if len(matches[a]) != 1:
            raise NotAPartition(a, len(matches[a]))


def canonical_product(model: GeneralModel, action_model: ActionModel) -> GeneralModel:
    """Product update relabelled (a, σ) -> a; agents and network are unchanged."""
    if not action_model.is_full():
        raise NotFullRelation()
    check_partition(model, action_model)
    product = product_update(model, action_model)
    return relabel(product, {pair: pair[0] for pair in product.agents})
