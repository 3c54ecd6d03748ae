"""
Update rules behind one interface: `rule.apply(model) -> model`.

• Eq1Rule / Eq2Rule  – the set-theoretic updates
• BestResponseRule   – game play; pins theta to the game's cut point
• ActionModelRule    – canonical product with an action model
• AutomatonRule      – belief automaton step
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from actions.action_model import ActionModel, canonical_product
from belief.automaton import Automaton, automaton_step
from dynamics.direct import (
    Game,
    TiePolicy,
    behavior_threshold,
    best_response_step,
    step_eq1,
    step_eq2,
)
from threshold.model import GeneralModel


@dataclass(frozen=True)
class Eq1Rule:
    name: str = "eq1"
    pinned_theta: Optional[Fraction] = None

    def apply(self, model):
        return step_eq1(model)


@dataclass(frozen=True)
class Eq2Rule:
    name: str = "eq2"
    pinned_theta: Optional[Fraction] = None

    def apply(self, model):
        return step_eq2(model)


@dataclass(frozen=True)
class BestResponseRule:
    game: Game
    tie: TiePolicy = TiePolicy.CONSERVATIVE
    seed: bool = False

    @property
    def name(self) -> str:
        tail = ":seed" if self.seed else ""
        return f"br:{self.game.kind.value}:{self.game.x}:{self.game.y}:{self.tie.value}{tail}"

    @property
    def pinned_theta(self) -> Fraction:
        """Model theta at which threshold-formula rules mirror this game."""
        return behavior_threshold(self.game)

    def apply(self, model):
        return best_response_step(model, self.game, self.tie, self.seed)


@dataclass(frozen=True)
class ActionModelRule:
    action_model: ActionModel
    name: str = "am"
    pinned_theta: Optional[Fraction] = None

    def apply(self, model: GeneralModel) -> GeneralModel:
        return canonical_product(model, self.action_model)


@dataclass(frozen=True)
class AutomatonRule:
    automaton: Automaton
    name: str = "auto"
    pinned_theta: Optional[Fraction] = None

    def apply(self, model: GeneralModel) -> GeneralModel:
        return automaton_step(model, self.automaton)


UpdateRule = Union[Eq1Rule, Eq2Rule, BestResponseRule, ActionModelRule, AutomatonRule]


def pinned_theta(*rules: UpdateRule) -> Optional[Fraction]:
    """The first theta any rule insists on, if any."""
    for rule in rules:
        if rule.pinned_theta is not None:
            return rule.pinned_theta
    return None
