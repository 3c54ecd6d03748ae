"""
Model checking for the threshold and friendship languages.

• ModelChecker – closed-form semantics, extensions cached per formula
• SubsetOracle – the literal ∃C / ∀C ⊆ N(a) clauses, exponential, for tests

Theta is always read from the model, never from the formula.
"""
from __future__ import annotations

import logging
from fractions import Fraction
from itertools import chain, combinations
from typing import Dict, FrozenSet, Tuple

from logic.formula import (
    And,
    Atom,
    BoxF,
    BoxLeq,
    DiamF,
    DiamLeq,
    EqTheta,
    Formula,
    Not,
    THRESHOLD_MODALITIES,
    Top,
)
from threshold.errors import IsolatedAgent, MissingTheta, UnknownAgent
from threshold.model import AgentId, GeneralModel, neighbor_fraction

logger = logging.getLogger(__name__)


class ModelChecker:
    """Evaluates formulas on one model; extensions are memoised."""

    def __init__(self, model: GeneralModel):
        self.model = model
        self._known = frozenset(model.agents)
        self._cache: Dict[Formula, FrozenSet[AgentId]] = {}

    # ───────────────────────────────────────────
    def holds(self, agent: AgentId, f: Formula) -> bool:
        if agent not in self._known:
            raise UnknownAgent(agent)
        return agent in self.extension(f)

    def extension(self, f: Formula) -> FrozenSet[AgentId]:
        ext = self._cache.get(f)
        if ext is None:
            ext = self._compute(f)
            self._cache[f] = ext
        return ext

    # ───────────────────────────────────────────
    def _theta(self) -> Fraction:
        if self.model.theta is None:
            raise MissingTheta()
        return self.model.theta

    def _compute(self, f: Formula) -> FrozenSet[AgentId]:
        m = self.model
        if isinstance(f, Top):
            return self._known
        if isinstance(f, Atom):
            return m.extension_of(f.name)
        if isinstance(f, Not):
            return self._known - self.extension(f.sub)
        if isinstance(f, And):
            return self.extension(f.left) & self.extension(f.right)

        if isinstance(f, THRESHOLD_MODALITIES):
            theta = self._theta()
            sub = self.extension(f.sub)
            fractions = {a: neighbor_fraction(m, a, sub) for a in m.agents}
            if isinstance(f, DiamLeq):
                return frozenset(a for a, q in fractions.items() if q >= theta)
            if isinstance(f, EqTheta):
                return frozenset(a for a, q in fractions.items() if q == theta)
            # [le]: C = N(a) is always theta-large, so every neighbour must satisfy φ
            return frozenset(a for a, q in fractions.items() if q == 1)

        sub = self.extension(f.sub)
        if isinstance(f, BoxF):
            return frozenset(a for a in m.agents if m.neighbors(a) <= sub)
        if isinstance(f, DiamF):
            return frozenset(a for a in m.agents if m.neighbors(a) & sub)
        raise TypeError(f"not a formula: {f!r}")


# ───────────────────────────────────────────
class SubsetOracle:
    """Literal subset-enumeration semantics, agent by agent."""

    def __init__(self, model: GeneralModel):
        self.model = model
        self._memo: Dict[Tuple[AgentId, Formula], bool] = {}

    def holds(self, agent: AgentId, f: Formula) -> bool:
        key = (agent, f)
        if key not in self._memo:
            self._memo[key] = self._holds(agent, f)
        return self._memo[key]

    def _subsets(self, agent: AgentId):
        nbrs = sorted(self.model.neighbors(agent), key=repr)
        if not nbrs:
            raise IsolatedAgent(agent)
        return len(nbrs), chain.from_iterable(combinations(nbrs, k) for k in range(len(nbrs) + 1))

    def _holds(self, agent: AgentId, f: Formula) -> bool:
        m = self.model
        if agent not in m.network.adjacency:
            raise UnknownAgent(agent)
        if isinstance(f, Top):
            return True
        if isinstance(f, Atom):
            return agent in m.extension_of(f.name)
        if isinstance(f, Not):
            return not self.holds(agent, f.sub)
        if isinstance(f, And):
            return self.holds(agent, f.left) and self.holds(agent, f.right)
        if isinstance(f, BoxF):
            return all(self.holds(b, f.sub) for b in m.neighbors(agent))
        if isinstance(f, DiamF):
            return any(self.holds(b, f.sub) for b in m.neighbors(agent))

        if m.theta is None:
            raise MissingTheta()
        theta = m.theta
        n, subsets = self._subsets(agent)
        if isinstance(f, DiamLeq):
            return any(
                theta <= Fraction(len(c), n) and all(self.holds(b, f.sub) for b in c)
                for c in subsets
            )
        if isinstance(f, BoxLeq):
            return all(
                not theta <= Fraction(len(c), n) or all(self.holds(b, f.sub) for b in c)
                for c in subsets
            )
        if isinstance(f, EqTheta):
            hits = sum(1 for b in m.neighbors(agent) if self.holds(b, f.sub))
            return theta == Fraction(hits, n)
        raise TypeError(f"not a formula: {f!r}")


# ───────────────────────────────────────────
def evaluate(model: GeneralModel, agent: AgentId, f: Formula) -> bool:
    return ModelChecker(model).holds(agent, f)


def eval_subset_oracle(model: GeneralModel, agent: AgentId, f: Formula) -> bool:
    return SubsetOracle(model).holds(agent, f)


def extension(model: GeneralModel, f: Formula) -> FrozenSet[AgentId]:
    return ModelChecker(model).extension(f)
