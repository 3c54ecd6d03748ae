"""
Iteration, orbit detection and the step-wise equivalence harness.

• run / Trace                 – deterministic iteration of any UpdateRule
• detect_orbit                – (transient, period) by hashing whole states
• check_stepwise_equivalence  – first divergence between two rules
• random_model / random_belief_model – seeded generators (numpy + networkx)
• equivalence_trial           – one seeded harness trial
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, FrozenSet, List, Optional, Union

import networkx as nx
import numpy as np

from dynamics.rules import UpdateRule, pinned_theta
from threshold.errors import (
    CapExceeded,
    GenerationFailed,
    InvalidProbability,
    InvalidTheta,
    ThetaOutOfRange,
    TooFewAgents,
)
from threshold.model import (
    AgentId,
    GeneralModel,
    ThresholdModel,
    build_belief_model,
    build_model,
    parse_theta,
    tie_agents,
)

logger = logging.getLogger(__name__)

SeedLike = Union[int, List[int], np.random.Generator]
MAX_ATTEMPTS = 100


@dataclass
class Trace:
    initial: GeneralModel
    rule: UpdateRule
    models: List[GeneralModel] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.models)

    def extensions(self, atom: str = "B") -> List[FrozenSet[AgentId]]:
        return [m.extension_of(atom) for m in self.models]


@dataclass(frozen=True)
class OrbitResult:
    transient: int
    period: int

    def summary(self) -> str:
        return f"transient={self.transient} period={self.period}"


def run(model: GeneralModel, rule: UpdateRule, steps: int) -> Trace:
    if steps < 0:
        raise ValueError(f"steps must be >= 0, got {steps}")
    trace = Trace(model, rule, [model])
    current = model
    for _ in range(steps):
        current = rule.apply(current)
        trace.models.append(current)
    return trace


def detect_orbit(model: GeneralModel, rule: UpdateRule, cap: int) -> OrbitResult:
    """Minimal (transient, period) with state(transient) == state(transient + period)."""
    if cap < 1:
        raise ValueError(f"cap must be >= 1, got {cap}")
    seen: Dict[tuple, int] = {}
    current = model
    for step in range(cap + 1):
        key = current.state_key()
        if key in seen:
            result = OrbitResult(seen[key], step - seen[key])
            logger.info("Orbit found: %s", result.summary())
            return result
        seen[key] = step
        if step < cap:
            current = rule.apply(current)
    raise CapExceeded(cap)


# ───────────────────────────────────────────
@dataclass(frozen=True)
class EquivalenceReport:
    equivalent: bool
    steps: int
    first_divergence: Optional[int] = None
    difference: FrozenSet[AgentId] = frozenset()
    tie_steps: int = 0

    def summary(self) -> str:
        if self.equivalent:
            return "PASS"
        agents = ", ".join(str(a) for a in sorted(self.difference, key=str))
        return f"FAIL at step {self.first_divergence}: {{{agents}}}"


def _difference(left: GeneralModel, right: GeneralModel) -> FrozenSet[AgentId]:
    out = set()
    for atom in set(left.valuation) | set(right.valuation):
        out |= left.valuation.get(atom, frozenset()) ^ right.valuation.get(atom, frozenset())
    return frozenset(out)


def check_stepwise_equivalence(
    model: GeneralModel,
    left: UpdateRule,
    right: UpdateRule,
    steps: int,
) -> EquivalenceReport:
    """Run both rules side by side; theta is pinned when a game rule is involved."""
    theta = pinned_theta(left, right)
    if theta is not None and model.theta != theta:
        model = model.with_theta(theta)

    a = b = model
    ties = 0
    for step in range(steps + 1):
        if a.state_key() != b.state_key():
            diff = _difference(a, b)
            logger.debug("Divergence at step %d on %d agents", step, len(diff))
            return EquivalenceReport(False, steps, step, diff, ties)
        if isinstance(a, ThresholdModel) and tie_agents(a):
            ties += 1
        if step < steps:
            a, b = left.apply(a), right.apply(b)
    return EquivalenceReport(True, steps, tie_steps=ties)


# ───────────────────────────────────────────
def _probability(name: str, value) -> Fraction:
    # same exactness and range rules as theta
    try:
        return parse_theta(value)
    except (InvalidTheta, ThetaOutOfRange):
        raise InvalidProbability(f"{name} {value!r} must be a rational 'p/q' in [0, 1]") from None


def _sample_graph(rng: np.random.Generator, n_agents: int, edge_probability: Fraction) -> nx.Graph:
    for _ in range(MAX_ATTEMPTS):
        graph = nx.gnp_random_graph(n_agents, float(edge_probability), seed=int(rng.integers(2**32)))
        if nx.number_of_isolates(graph) == 0:
            return graph
    raise GenerationFailed(MAX_ATTEMPTS)


def _agents(n_agents: int) -> List[str]:
    return [f"a{i:02d}" for i in range(n_agents)]


def _edges(graph: nx.Graph, agents: List[str]):
    return [(agents[u], agents[v]) for u, v in graph.edges()]


def _draw_theta(rng: np.random.Generator, graph: nx.Graph) -> Fraction:
    # denominators up to the max degree make exact ties reachable
    max_degree = max(d for _, d in graph.degree())
    q = int(rng.integers(1, max_degree + 1))
    p = int(rng.integers(0, q + 1))
    return Fraction(p, q)


def random_model(
    seed: SeedLike,
    n_agents: int,
    edge_probability="1/2",
    behavior_probability="1/2",
    theta=None,
) -> ThresholdModel:
    """Seeded G(n, p) threshold model, resampled until nobody is isolated."""
    if n_agents < 2:
        raise TooFewAgents(n_agents)
    edge_p = _probability("edge_probability", edge_probability)
    behavior_p = _probability("behavior_probability", behavior_probability)
    rng = np.random.default_rng(seed)
    graph = _sample_graph(rng, n_agents, edge_p)
    agents = _agents(n_agents)
    draws = rng.random(n_agents)
    behavior = [a for a, u in zip(agents, draws) if u < behavior_p]
    theta = _draw_theta(rng, graph) if theta is None else theta
    return build_model(agents, _edges(graph, agents), behavior, theta)


def random_belief_model(seed: SeedLike, n_agents: int, edge_probability="1/2", theta=None) -> GeneralModel:
    """Like random_model, each agent uniform over Up / Bp / Bnp."""
    if n_agents < 2:
        raise TooFewAgents(n_agents)
    rng = np.random.default_rng(seed)
    graph = _sample_graph(rng, n_agents, _probability("edge_probability", edge_probability))
    agents = _agents(n_agents)
    states = rng.integers(0, 3, size=n_agents)
    believe_p = [a for a, s in zip(agents, states) if s == 1]
    believe_not_p = [a for a, s in zip(agents, states) if s == 2]
    return build_belief_model(agents, _edges(graph, agents), believe_p, believe_not_p, theta)


# ───────────────────────────────────────────
@dataclass(frozen=True)
class TrialResult:
    index: int
    model: GeneralModel
    report: EquivalenceReport


def equivalence_trial(
    index: int,
    base_seed: int,
    left: UpdateRule,
    right: UpdateRule,
    max_agents: int = 10,
    steps: int = 10,
    edge_probability="1/2",
    behavior_probability="1/2",
    belief: bool = False,
) -> TrialResult:
    """Trial `index` of a seeded batch: n in 2..max_agents, fresh model, 10-step check."""
    if max_agents < 2:
        raise TooFewAgents(max_agents)
    rng = np.random.default_rng([base_seed, index])
    n_agents = int(rng.integers(2, max_agents + 1))
    if belief:
        model = random_belief_model(rng, n_agents, edge_probability)
    else:
        model = random_model(rng, n_agents, edge_probability, behavior_probability)
    return TrialResult(index, model, check_stepwise_equivalence(model, left, right, steps))
