"""
Brute-force search for small models on which two formulas disagree.

Used to (re)discover the stored non-normality witnesses: every graph on
at most `max_agents` agents without isolated agents, every behavior set,
every theta of a small grid.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterator, Optional, Sequence

from logic.checker import ModelChecker
from logic.formula import Formula
from threshold.model import AgentId, ThresholdModel, build_model

logger = logging.getLogger(__name__)

THETA_GRID: tuple[Fraction, ...] = tuple(
    sorted({Fraction(p, q) for q in range(1, 5) for p in range(q + 1)})
)


@dataclass(frozen=True)
class Witness:
    model: ThresholdModel
    agent: AgentId
    left: bool
    right: bool


def small_models(max_agents: int = 3, thetas: Sequence[Fraction] = THETA_GRID) -> Iterator[ThresholdModel]:
    """All threshold models with 2..max_agents agents and no isolated agent."""
    for n in range(2, max_agents + 1):
        agents = [chr(ord("a") + i) for i in range(n)]
        pairs = list(combinations(agents, 2))
        for mask in range(1, 1 << len(pairs)):
            edges = [p for i, p in enumerate(pairs) if mask >> i & 1]
            touched = {a for e in edges for a in e}
            if len(touched) < n:
                continue
            for bmask in range(1 << n):
                behavior = [a for i, a in enumerate(agents) if bmask >> i & 1]
                for theta in thetas:
                    yield build_model(agents, edges, behavior, theta)


def search_counterexample(
    left: Formula,
    right: Formula,
    max_agents: int = 3,
    thetas: Sequence[Fraction] = THETA_GRID,
) -> Optional[Witness]:
    """First (model, agent) where left and right get different truth values."""
    for model in small_models(max_agents, thetas):
        checker = ModelChecker(model)
        for agent in model.agents:
            l, r = checker.holds(agent, left), checker.holds(agent, right)
            if l != r:
                logger.debug("Witness found: agent %s, theta %s", agent, model.theta)
                return Witness(model, agent, l, r)
    return None
