"""
Automaton <-> action-model translation.

Forward: one action state per transition (pre = label ∧ trigger,
post = target label) plus one "stay" state per automaton state so the
preconditions partition the agents. Backward: split every precondition
at its top-level conjunction and collapse states by label text.
"""
from __future__ import annotations

import logging
from typing import Dict, List

from actions.action_model import ActionModel, ActionState
from belief.automaton import Automaton, AutomatonState, Transition, state_name
from logic.formula import And, Formula, Not, conjoin, literal_formula, literals, to_text
from threshold.errors import PreconditionNotConjunctive

logger = logging.getLogger(__name__)

STAY_PREFIX = "stay:"


def automaton_to_action_model(automaton: Automaton) -> ActionModel:
    auto = automaton.canonical()
    states: List[ActionState] = []
    for k, t in enumerate(auto.transitions, start=1):
        source, target = auto.state(t.source), auto.state(t.target)
        states.append(ActionState(f"t{k}", And(source.label, t.trigger), target.assignment()))

    for s in auto.states:
        triggers = [Not(t.trigger) for t in auto.outgoing(s.id)]
        pre = And(s.label, conjoin(*triggers)) if triggers else s.label
        states.append(ActionState(f"{STAY_PREFIX}{s.id}", pre, {}))
    logger.debug("Translated automaton: %d transitions, %d states", len(auto.transitions), len(auto.states))
    return ActionModel.full(states)


def _split(state: ActionState) -> tuple[Formula, Formula]:
    pre = state.pre
    if not isinstance(pre, And) or literals(pre.left) is None:
        raise PreconditionNotConjunctive(state.id)
    return pre.left, pre.right


def action_model_to_automaton(action_model: ActionModel) -> Automaton:
    """Inverse construction; states with an empty post are residual and skipped.

    A residual whose precondition is a bare literal conjunction is a state
    without outgoing transitions, so its whole precondition is the label.
    """
    labels: Dict[str, AutomatonState] = {}

    def register(label: Formula) -> str:
        normal = literal_formula(literals(label))
        key = to_text(normal)
        if key not in labels:
            labels[key] = AutomatonState(state_name(literals(normal)), normal)
        return labels[key].id

    transitions: List[Transition] = []
    for s in action_model.states:
        if not s.post:
            if literals(s.pre) is not None:
                register(s.pre)
            else:
                register(_split(s)[0])
            continue
        label, trigger = _split(s)
        source = register(label)
        target = register(literal_formula(s.post))
        transitions.append(Transition(source, trigger, target))
    return Automaton(tuple(labels.values()), tuple(transitions)).canonical()


def structurally_equal(left: Automaton, right: Automaton) -> bool:
    return left.canonical() == right.canonical()
