"""
Exception hierarchy shared by every package.

Library code raises these; only main.py turns them into a one-line
diagnostic and an exit code.
"""
from __future__ import annotations

from typing import Any, Sequence


class ThresholdError(ValueError):
    """Root of all domain errors."""


# ───────────────────────────────────────────
# core model
class SelfLoop(ThresholdError):
    def __init__(self, agent: str):
        super().__init__(f"self-loop on agent {agent!r}: the network must be irreflexive")
        self.agent = agent


class IsolatedAgent(ThresholdError):
    def __init__(self, agent: Any):
        super().__init__(f"agent {agent!r} has no neighbours")
        self.agent = agent


class UnknownAgent(ThresholdError):
    def __init__(self, agent: Any, where: str = "model"):
        super().__init__(f"unknown agent {agent!r} in {where}")
        self.agent = agent
        self.where = where


class ThetaOutOfRange(ThresholdError):
    def __init__(self, theta):
        super().__init__(f"theta {theta} outside [0, 1]")
        self.theta = theta


class InvalidTheta(ThresholdError):
    """Theta given as something other than an exact rational string."""


class OverlappingBeliefs(ThresholdError):
    def __init__(self, agents):
        super().__init__(f"agents {sorted(agents)!r} hold both Bp and Bnp")
        self.agents = frozenset(agents)


# ───────────────────────────────────────────
# logic
class ParseError(ThresholdError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class MissingTheta(ThresholdError):
    def __init__(self):
        super().__init__("threshold modality evaluated on a model without theta")


class UnknownAtom(ThresholdError):
    def __init__(self, atom: str):
        super().__init__(f"atom {atom!r} has no valuation in this model")
        self.atom = atom


# ───────────────────────────────────────────
# action models
class EmptyProduct(ThresholdError):
    def __init__(self):
        super().__init__("no agent satisfies any precondition")


class AsymmetricRelation(ThresholdError):
    def __init__(self, pair: tuple[str, str]):
        super().__init__(f"action relation is not symmetric: {pair} has no converse")
        self.pair = pair


class NotAPartition(ThresholdError):
    def __init__(self, agent: str, count: int):
        super().__init__(f"agent {agent!r} matches {count} preconditions (expected exactly 1)")
        self.agent = agent
        self.count = count


class NotFullRelation(ThresholdError):
    def __init__(self):
        super().__init__("action model relation is not the full relation")


class IndexOutOfRange(ThresholdError):
    def __init__(self, index: int):
        super().__init__(f"rule index out of range 1..27 (got {index})")
        self.index = index


class InvalidPostCondition(ThresholdError):
    """Post-condition outside the allowed shapes."""


# ───────────────────────────────────────────
# dynamics
class CapExceeded(ThresholdError):
    def __init__(self, cap: int):
        super().__init__(f"no repeated state within {cap} steps")
        self.cap = cap


class GenerationFailed(ThresholdError):
    def __init__(self, attempts: int):
        super().__init__(f"could not sample a graph without isolated agents in {attempts} attempts")
        self.attempts = attempts


class TooFewAgents(ThresholdError):
    def __init__(self, n_agents: int):
        super().__init__(f"random models need at least 2 agents, got {n_agents}")
        self.n_agents = n_agents


class InvalidProbability(ThresholdError):
    """Sampling probability that is not an exact rational in [0, 1]."""


# ───────────────────────────────────────────
# automata
class NoMatchingState(ThresholdError):
    def __init__(self, agent: str):
        super().__init__(f"agent {agent!r} satisfies no automaton state label")
        self.agent = agent


class NondeterminismDetected(ThresholdError):
    def __init__(self, agent: str, transitions: Sequence[Any]):
        super().__init__(f"agent {agent!r} fires {len(transitions)} transitions at once")
        self.agent = agent
        self.transitions = tuple(transitions)


class PreconditionNotConjunctive(ThresholdError):
    def __init__(self, state: str):
        super().__init__(f"action state {state!r}: precondition is not (atom-state & trigger)")
        self.state = state


# ───────────────────────────────────────────
# outer surfaces
class RuleSpecError(ThresholdError):
    """Malformed --rule string."""


class DocumentError(ThresholdError):
    """Malformed JSON document."""
