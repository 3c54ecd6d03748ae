"""
Belief-change automata over the atoms Bp / Bnp.

• strong / weak   – influence formulas in the friendship language
• Automaton       – states labelled by atom-state formulas, triggered transitions
• automaton_step  – simultaneous update of every agent
• random_automaton – generator for translation round trips
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Dict, List, Mapping, Optional, Tuple

import numpy as np

from logic.checker import ModelChecker
from logic.formula import (
    BNP,
    BP,
    And,
    Atom,
    BoxF,
    DiamF,
    Formula,
    Not,
    literal_formula,
    literals,
    to_text,
)
from threshold.errors import NoMatchingState, NondeterminismDetected
from threshold.model import BELIEF_NOT_P, BELIEF_P, GeneralModel

logger = logging.getLogger(__name__)


class Polarity(str, Enum):
    P = "p"
    NOT_P = "np"

    @property
    def atom(self) -> Atom:
        return BP if self is Polarity.P else BNP

    @property
    def opposite(self) -> "Polarity":
        return Polarity.NOT_P if self is Polarity.P else Polarity.P


def strong(polarity: Polarity) -> Formula:
    """All friends believe φ and there is at least one friend."""
    believes = Polarity(polarity).atom
    return And(BoxF(believes), DiamF(believes))


def weak(polarity: Polarity) -> Formula:
    """No friend believes the opposite while some friend believes φ."""
    polarity = Polarity(polarity)
    return And(BoxF(Not(polarity.opposite.atom)), DiamF(polarity.atom))


# ───────────────────────────────────────────
@dataclass(frozen=True)
class AutomatonState:
    id: str
    label: Formula

    def assignment(self) -> Dict[str, bool]:
        return literals(self.label)


@dataclass(frozen=True)
class Transition:
    source: str
    trigger: Formula
    target: str


@dataclass(frozen=True)
class Automaton:
    states: Tuple[AutomatonState, ...]
    transitions: Tuple[Transition, ...] = ()

    def __post_init__(self):
        ids = [s.id for s in self.states]
        if not ids:
            raise ValueError("an automaton needs at least one state")
        if len(set(ids)) != len(ids):
            raise ValueError(f"duplicate automaton state ids in {ids}")
        for s in self.states:
            if not s.assignment():
                raise ValueError(f"label of state {s.id!r} is not a conjunction of literals")
        known = set(ids)
        for t in self.transitions:
            if t.source not in known or t.target not in known:
                raise ValueError(f"transition {t.source}->{t.target} names an unknown state")

    def state(self, state_id: str) -> AutomatonState:
        for s in self.states:
            if s.id == state_id:
                return s
        raise KeyError(state_id)

    def outgoing(self, state_id: str) -> List[Transition]:
        return [t for t in self.transitions if t.source == state_id]

    def canonical(self) -> "Automaton":
        """States sorted by id, transitions by (from, to, trigger text)."""
        return Automaton(
            tuple(sorted(self.states, key=lambda s: s.id)),
            tuple(sorted(self.transitions, key=lambda t: (t.source, t.target, to_text(t.trigger)))),
        )


def state_name(assignment: Mapping[str, bool]) -> str:
    """Bp / Bnp for a single believed atom, Up when nothing is believed."""
    true_atoms = [atom for atom, value in assignment.items() if value]
    if len(true_atoms) == 1:
        return true_atoms[0]
    if not true_atoms and set(assignment) == {BELIEF_P, BELIEF_NOT_P}:
        return "Up"
    return to_text(literal_formula(assignment))


# ───────────────────────────────────────────
def automaton_step(model: GeneralModel, automaton: Automaton) -> GeneralModel:
    """Every agent takes the single transition that fires, or stays."""
    checker = ModelChecker(model)
    updated = {atom: set(ext) for atom, ext in model.valuation.items()}
    moved = 0
    for agent in model.agents:
        current = [s for s in automaton.states if agent in checker.extension(s.label)]
        if not current:
            raise NoMatchingState(agent)
        if len(current) > 1:
            raise NondeterminismDetected(agent, [s.id for s in current])
        fired = [t for t in automaton.outgoing(current[0].id) if agent in checker.extension(t.trigger)]
        if len(fired) > 1:
            raise NondeterminismDetected(agent, [f"{t.source}->{t.target}" for t in fired])
        if not fired:
            continue
        moved += 1
        for atom, value in automaton.state(fired[0].target).assignment().items():
            ext = updated.setdefault(atom, set())
            if value:
                ext.add(agent)
            else:
                ext.discard(agent)
    logger.debug("Automaton step: %d of %d agents moved", moved, len(model.agents))
    return model.with_valuation(updated)


# ───────────────────────────────────────────
BELIEF_STATES: Tuple[AutomatonState, ...] = tuple(
    AutomatonState(state_name(a), literal_formula(a))
    for a in (
        {BELIEF_P: False, BELIEF_NOT_P: False},
        {BELIEF_P: True, BELIEF_NOT_P: False},
        {BELIEF_P: False, BELIEF_NOT_P: True},
    )
)

TRIGGER_POOL: Tuple[Formula, ...] = (
    strong(Polarity.P),
    strong(Polarity.NOT_P),
    weak(Polarity.P),
    weak(Polarity.NOT_P),
    And(weak(Polarity.P), Not(strong(Polarity.P))),
    And(weak(Polarity.NOT_P), Not(strong(Polarity.NOT_P))),
    DiamF(BP),
    BoxF(Not(BNP)),
)


def random_automaton(seed: int, max_transitions: int = 4, rng: Optional[np.random.Generator] = None) -> Automaton:
    """Random automaton over the three belief states, in canonical form.

    Triggers are drawn from a fixed pool of influence formulas; an edge
    (source, target, trigger) is never repeated.
    """
    rng = rng if rng is not None else np.random.default_rng(seed)
    n_states = int(rng.integers(1, len(BELIEF_STATES) + 1))
    picked = sorted(rng.choice(len(BELIEF_STATES), size=n_states, replace=False))
    states = tuple(BELIEF_STATES[i] for i in picked)

    transitions = {}
    for _ in range(int(rng.integers(0, max_transitions + 1))):
        source = states[int(rng.integers(len(states)))].id
        target = states[int(rng.integers(len(states)))].id
        trigger = TRIGGER_POOL[int(rng.integers(len(TRIGGER_POOL)))]
        transitions[(source, target, to_text(trigger))] = Transition(source, trigger, target)
    return Automaton(states, tuple(transitions.values())).canonical()
