"""
Threshold models as immutable values.

• Network        – symmetric, irreflexive adjacency
• GeneralModel   – agents + network + atom valuation + optional theta
• ThresholdModel – the single-atom case {B} with a mandatory theta
• neighbor_fraction – |N(a) ∩ X| / |N(a)|, exact

Theta and every fraction are `fractions.Fraction`; floats never enter
the semantics.
"""
from __future__ import annotations

import dataclasses
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, FrozenSet, Hashable, Iterable, Mapping, Optional, Tuple

import networkx as nx

from threshold.errors import (
    InvalidTheta,
    IsolatedAgent,
    OverlappingBeliefs,
    SelfLoop,
    ThetaOutOfRange,
    UnknownAgent,
    UnknownAtom,
)

logger = logging.getLogger(__name__)

AgentId = Hashable
Rational = Fraction

BEHAVIOR = "B"
BELIEF_P = "Bp"
BELIEF_NOT_P = "Bnp"
# Literal order used by normal-form printing.
ATOM_ORDER: Tuple[str, ...] = (BEHAVIOR, BELIEF_P, BELIEF_NOT_P)


def atom_sort_key(atom: str) -> tuple:
    return (ATOM_ORDER.index(atom), "") if atom in ATOM_ORDER else (len(ATOM_ORDER), atom)


# ───────────────────────────────────────────
def parse_theta(value) -> Fraction:
    """Exact theta from "p/q", an integer string, an int or a Fraction."""
    if isinstance(value, bool):
        raise InvalidTheta(f"theta must be a rational, got {value!r}")
    if isinstance(value, Fraction):
        theta = value
    elif isinstance(value, int):
        theta = Fraction(value)
    elif isinstance(value, str):
        text = value.strip()
        if "." in text or "e" in text.lower():
            raise InvalidTheta(
                f"theta {value!r} looks like a float; write it as 'p/q' "
                "because ties (fraction == theta) must be decided exactly"
            )
        try:
            theta = Fraction(text)
        except (ValueError, ZeroDivisionError) as exc:
            raise InvalidTheta(f"theta {value!r} is not of the form 'p/q'") from exc
    else:
        raise InvalidTheta(
            f"theta must be given as a 'p/q' string, not {type(value).__name__}; "
            "floating point cannot decide ties exactly"
        )
    if not 0 <= theta <= 1:
        raise ThetaOutOfRange(theta)
    return theta


# ───────────────────────────────────────────
@dataclass(frozen=True)
class Network:
    """Adjacency map; always symmetric and irreflexive."""

    adjacency: Mapping[AgentId, FrozenSet[AgentId]]

    @classmethod
    def from_graph(cls, graph: nx.Graph, order: Iterable[AgentId]) -> "Network":
        return cls({a: frozenset(graph.neighbors(a)) for a in order})

    def neighbors(self, agent: AgentId) -> FrozenSet[AgentId]:
        try:
            return self.adjacency[agent]
        except KeyError:
            raise UnknownAgent(agent, "network") from None

    def degree(self, agent: AgentId) -> int:
        return len(self.neighbors(agent))

    def edges(self) -> list[tuple[AgentId, AgentId]]:
        """Each undirected link once, (a, b) with a < b, sorted."""
        return sorted((a, b) for a, nbrs in self.adjacency.items() for b in nbrs if a < b)


@dataclass(frozen=True)
class GeneralModel:
    """Agents, network, a valuation of atoms and an optional threshold."""

    agents: Tuple[AgentId, ...]
    network: Network
    valuation: Mapping[str, FrozenSet[AgentId]]
    theta: Optional[Fraction] = None

    def __post_init__(self):
        known = set(self.agents)
        for atom, ext in self.valuation.items():
            stray = set(ext) - known
            if stray:
                raise UnknownAgent(sorted(stray, key=repr)[0], f"valuation of {atom}")
        if self.theta is not None and not 0 <= self.theta <= 1:
            raise ThetaOutOfRange(self.theta)
        if BELIEF_P in self.valuation and BELIEF_NOT_P in self.valuation:
            both = self.valuation[BELIEF_P] & self.valuation[BELIEF_NOT_P]
            if both:
                raise OverlappingBeliefs(both)

    # ----------
    def neighbors(self, agent: AgentId) -> FrozenSet[AgentId]:
        return self.network.neighbors(agent)

    def extension_of(self, atom: str) -> FrozenSet[AgentId]:
        try:
            return self.valuation[atom]
        except KeyError:
            raise UnknownAtom(atom) from None

    def atoms(self) -> list[str]:
        return sorted(self.valuation, key=atom_sort_key)

    def with_valuation(self, valuation: Mapping[str, Iterable[AgentId]]):
        return dataclasses.replace(
            self, valuation={k: frozenset(v) for k, v in valuation.items()}
        )

    def with_theta(self, theta: Optional[Fraction]):
        return dataclasses.replace(self, theta=theta)

    def state_key(self) -> tuple:
        """Hashable snapshot of the valuation (the dynamic part of the model)."""
        return tuple((atom, self.valuation[atom]) for atom in self.atoms())


@dataclass(frozen=True)
class ThresholdModel(GeneralModel):
    """(A, N, B, theta) – the valuation holds exactly the atom B."""

    def __post_init__(self):
        super().__post_init__()
        if set(self.valuation) != {BEHAVIOR}:
            raise ValueError("a threshold model values exactly the atom B")
        if self.theta is None:
            raise ValueError("a threshold model needs theta")

    @property
    def behavior(self) -> FrozenSet[AgentId]:
        return self.valuation[BEHAVIOR]

    def with_behavior(self, behavior: Iterable[AgentId]) -> "ThresholdModel":
        return dataclasses.replace(self, valuation={BEHAVIOR: frozenset(behavior)})


# ───────────────────────────────────────────
def _network(agents: Tuple[AgentId, ...], edges: Iterable[Tuple[AgentId, AgentId]]) -> Network:
    known = set(agents)
    graph = nx.Graph()
    graph.add_nodes_from(agents)
    for a, b in edges:
        for end in (a, b):
            if end not in known:
                raise UnknownAgent(end, "edges")
        if a == b:
            raise SelfLoop(a)
        graph.add_edge(a, b)  # undirected: symmetrized on insertion
    isolated = set(nx.isolates(graph))
    for a in agents:
        if a in isolated:
            raise IsolatedAgent(a)
    return Network.from_graph(graph, agents)


def _ordered_agents(agents: Iterable[AgentId]) -> Tuple[AgentId, ...]:
    ordered = tuple(dict.fromkeys(agents))
    if not ordered:
        raise ValueError("a model needs at least one agent")
    return ordered


def build_model(agents, edges, behavior, theta) -> ThresholdModel:
    """Validated threshold model; the edge list is symmetrized."""
    ordered = _ordered_agents(agents)
    network = _network(ordered, edges)
    behavior = frozenset(behavior)
    for a in behavior:
        if a not in network.adjacency:
            raise UnknownAgent(a, "behavior")
    return ThresholdModel(ordered, network, {BEHAVIOR: behavior}, parse_theta(theta))


def build_general_model(agents, edges, valuation: Mapping[str, Iterable[AgentId]], theta=None) -> GeneralModel:
    ordered = _ordered_agents(agents)
    network = _network(ordered, edges)
    return GeneralModel(
        ordered,
        network,
        {atom: frozenset(ext) for atom, ext in valuation.items()},
        None if theta is None else parse_theta(theta),
    )


def build_belief_model(agents, edges, believe_p, believe_not_p, theta=None) -> GeneralModel:
    """Belief instance: atoms Bp and Bnp, Up derived as neither."""
    return build_general_model(
        agents, edges, {BELIEF_P: believe_p, BELIEF_NOT_P: believe_not_p}, theta
    )


# ───────────────────────────────────────────
def neighbor_fraction(model: GeneralModel, agent: AgentId, extension: Iterable[AgentId]) -> Fraction:
    """|N(a) ∩ extension| / |N(a)|."""
    nbrs = model.neighbors(agent)
    if not nbrs:
        raise IsolatedAgent(agent)
    ext = extension if isinstance(extension, (set, frozenset)) else frozenset(extension)
    return Fraction(len(nbrs & ext), len(nbrs))


def complement(model: ThresholdModel) -> ThresholdModel:
    return model.with_behavior(set(model.agents) - model.behavior)


def tie_agents(model: ThresholdModel) -> FrozenSet[AgentId]:
    """Agents whose B-fraction sits exactly on theta."""
    return frozenset(
        a for a in model.agents if neighbor_fraction(model, a, model.behavior) == model.theta
    )


def relabel(model: GeneralModel, mapping: Dict[AgentId, AgentId]) -> GeneralModel:
    """Rename agents through an injective mapping, keeping the model class."""
    agents = tuple(mapping[a] for a in model.agents)
    network = Network(
        {mapping[a]: frozenset(mapping[b] for b in nbrs) for a, nbrs in model.network.adjacency.items()}
    )
    valuation = {atom: frozenset(mapping[a] for a in ext) for atom, ext in model.valuation.items()}
    return type(model)(agents, network, valuation, model.theta)
