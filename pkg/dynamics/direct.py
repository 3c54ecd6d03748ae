"""
Set-theoretic update rules and best-response game play.

These are the ground truth the action-model engine is checked against.
All agents update simultaneously from the same input snapshot.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from threshold.model import ThresholdModel, neighbor_fraction

logger = logging.getLogger(__name__)


class GameKind(str, Enum):
    COORDINATION = "coordination"
    ANTICOORDINATION = "anticoordination"


class TiePolicy(str, Enum):
    FAVOR_B = "favor_B"
    FAVOR_NOT_B = "favor_notB"
    CONSERVATIVE = "conservative"


@dataclass(frozen=True)
class Game:
    """Pairwise game played against every neighbour at once."""

    kind: GameKind
    x: Fraction
    y: Fraction

    def __post_init__(self):
        if self.x <= 0 or self.y <= 0:
            raise ValueError(f"payoffs must be positive, got x={self.x} y={self.y}")


# ───────────────────────────────────────────
def step_eq1(model: ThresholdModel) -> ThresholdModel:
    """Inflating update: keep B, adopt when the B-share reaches theta."""
    b = model.behavior
    adopters = {a for a in model.agents if neighbor_fraction(model, a, b) >= model.theta}
    return model.with_behavior(b | adopters)


def step_eq2(model: ThresholdModel) -> ThresholdModel:
    """Non-inflating update with conservative tie-breaking."""
    b = model.behavior
    nxt = set()
    for a in model.agents:
        frac = neighbor_fraction(model, a, b)
        if frac > model.theta or (frac == model.theta and a in b):
            nxt.add(a)
    return model.with_behavior(nxt)


# ───────────────────────────────────────────
def game_threshold(game: Game) -> Fraction:
    """y/(x+y) for coordination, x/(x+y) for anti-coordination."""
    if game.kind is GameKind.COORDINATION:
        return game.y / (game.x + game.y)
    return game.x / (game.x + game.y)


def behavior_threshold(game: Game) -> Fraction:
    """Cut point on the B-neighbour share at which the best response switches.

    Anti-coordination's game threshold counts ¬B neighbours, so its cut on
    the B share is 1 - x/(x+y) = y/(x+y), same expression as coordination.
    """
    return 1 - game_threshold(game) if game.kind is GameKind.ANTICOORDINATION else game_threshold(game)


def best_response_step(
    model: ThresholdModel,
    game: Game,
    tie: TiePolicy = TiePolicy.CONSERVATIVE,
    seed: bool = False,
) -> ThresholdModel:
    """Every agent plays its best response to the current profile.

    The model's own theta is ignored; the game decides the threshold.
    With `seed`, current B-players keep B regardless.
    """
    theta = game_threshold(game)
    b = model.behavior
    outsiders = frozenset(model.agents) - b
    # coordination counts B neighbours, anti-coordination counts ¬B neighbours
    pressure = b if game.kind is GameKind.COORDINATION else outsiders

    nxt = set()
    for a in model.agents:
        frac = neighbor_fraction(model, a, pressure)
        if frac > theta:
            plays_b = True
        elif frac < theta:
            plays_b = False
        elif tie is TiePolicy.FAVOR_B:
            plays_b = True
        elif tie is TiePolicy.FAVOR_NOT_B:
            plays_b = False
        else:
            plays_b = a in b
        if plays_b or (seed and a in b):
            nxt.add(a)
    return model.with_behavior(nxt)
