"""
JSON documents and trace files.

• pydantic schemas for model / action-model / automaton documents
• canonical dumps (sorted keys, sorted agent lists) so reruns are byte-identical
• trace CSV writer
"""
from __future__ import annotations

import csv
import io
import json
import logging
from pathlib import Path
from typing import Any, Dict, List, Literal, Optional, Tuple, Type, TypeVar, Union

from pydantic import BaseModel, ConfigDict, Field, StrictBool, ValidationError

from actions.action_model import NO_CHANGE, PLAY_B, PLAY_NOT_B, ActionModel, ActionState
from belief.automaton import Automaton, AutomatonState, Transition, state_name
from dynamics.orbit import Trace
from logic.formula import to_text
from logic.parser import parse
from threshold.errors import DocumentError, ThresholdError
from threshold.model import (
    BEHAVIOR,
    GeneralModel,
    ThresholdModel,
    build_general_model,
    build_model,
)

logger = logging.getLogger(__name__)

BELIEF_CHANGE_PATH = Path(__file__).resolve().parent / "automata" / "belief_change.json"

_POST_WORDS = {"B": PLAY_B, "~B": PLAY_NOT_B, "T": NO_CHANGE}


# ───────────────────────────────────────────
# schemas
class _Document(BaseModel):
    model_config = ConfigDict(extra="forbid", populate_by_name=True)


class ModelDocument(_Document):
    agents: List[str]
    edges: List[Tuple[str, str]]
    behavior: Optional[List[str]] = None
    valuation: Optional[Dict[str, List[str]]] = None
    # kept untyped so a float reaches parse_theta and gets its explanation
    theta: Any = None


class ActionStateDocument(_Document):
    id: str
    pre: str
    post: Union[str, Dict[str, StrictBool]] = "T"


class ActionModelDocument(_Document):
    states: List[ActionStateDocument]
    relation: Union[Literal["full"], List[Tuple[str, str]]] = "full"


class AutomatonStateDocument(_Document):
    id: str
    label: str


class TransitionDocument(_Document):
    source: str = Field(alias="from")
    trigger: str
    target: str = Field(alias="to")


class AutomatonDocument(_Document):
    states: List[AutomatonStateDocument]
    transitions: List[TransitionDocument] = []


D = TypeVar("D", bound=_Document)


def _validate(schema: Type[D], data: Any) -> D:
    try:
        return schema.model_validate(data)
    except ValidationError as exc:
        first = exc.errors()[0]
        where = ".".join(str(p) for p in first["loc"]) or "document"
        raise DocumentError(f"{schema.__name__}: {where}: {first['msg']}") from exc


# ───────────────────────────────────────────
# files
def read_json(path: Union[str, Path]) -> Any:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise DocumentError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise DocumentError(f"{path}: invalid JSON at line {exc.lineno}: {exc.msg}") from exc


def dumps(data: Any) -> str:
    """Canonical JSON text."""
    return json.dumps(data, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def write_json(path: Union[str, Path], data: Any) -> None:
    Path(path).write_text(dumps(data), encoding="utf-8")
    logger.info("Wrote %s", path)


# ───────────────────────────────────────────
# models
def model_from_data(data: Any) -> GeneralModel:
    doc = _validate(ModelDocument, data)
    if (doc.behavior is None) == (doc.valuation is None):
        raise DocumentError("a model document needs exactly one of 'behavior' or 'valuation'")
    if doc.behavior is not None:
        if doc.theta is None:
            raise DocumentError("a threshold model document needs 'theta'")
        return build_model(doc.agents, doc.edges, doc.behavior, doc.theta)
    if set(doc.valuation) == {BEHAVIOR}:
        if doc.theta is None:
            raise DocumentError("a valuation over B alone is a threshold model and needs 'theta'")
        return build_model(doc.agents, doc.edges, doc.valuation[BEHAVIOR], doc.theta)
    if BEHAVIOR in doc.valuation:
        raise DocumentError("atom B cannot share a valuation with other atoms")
    return build_general_model(doc.agents, doc.edges, doc.valuation, doc.theta)


def model_to_data(model: GeneralModel) -> Dict[str, Any]:
    data: Dict[str, Any] = {
        "agents": sorted(model.agents),
        "edges": [list(e) for e in model.network.edges()],
    }
    if isinstance(model, ThresholdModel):
        data["behavior"] = sorted(model.behavior)
    else:
        data["valuation"] = {atom: sorted(ext) for atom, ext in model.valuation.items()}
    if model.theta is not None:
        data["theta"] = str(model.theta)
    return data


def load_model(path: Union[str, Path]) -> GeneralModel:
    return model_from_data(read_json(path))


# ───────────────────────────────────────────
# action models
def _post_from(value) -> Dict[str, bool]:
    if isinstance(value, str):
        if value not in _POST_WORDS:
            raise DocumentError(f"post {value!r} must be one of B, ~B, T or an atom map")
        return dict(_POST_WORDS[value])
    return dict(value)


def _post_to(post) -> Union[str, Dict[str, bool]]:
    for word, known in _POST_WORDS.items():
        if dict(post) == known:
            return word
    return dict(post)


def action_model_from_data(data: Any) -> ActionModel:
    doc = _validate(ActionModelDocument, data)
    states = [ActionState(s.id, parse(s.pre), _post_from(s.post)) for s in doc.states]
    try:
        if doc.relation == "full":
            return ActionModel.full(states)
        return ActionModel(tuple(states), frozenset(tuple(p) for p in doc.relation))
    except ThresholdError:
        raise
    except ValueError as exc:
        raise DocumentError(str(exc)) from exc


def action_model_to_data(action_model: ActionModel) -> Dict[str, Any]:
    return {
        "states": [
            {"id": s.id, "pre": to_text(s.pre), "post": _post_to(s.post)} for s in action_model.states
        ],
        "relation": "full" if action_model.is_full() else sorted(list(p) for p in action_model.relation),
    }


def load_action_model(path: Union[str, Path]) -> ActionModel:
    return action_model_from_data(read_json(path))


# ───────────────────────────────────────────
# automata
def automaton_from_data(data: Any) -> Automaton:
    doc = _validate(AutomatonDocument, data)
    try:
        return Automaton(
            tuple(AutomatonState(s.id, parse(s.label)) for s in doc.states),
            tuple(Transition(t.source, parse(t.trigger), t.target) for t in doc.transitions),
        )
    except ThresholdError:
        raise
    except ValueError as exc:
        raise DocumentError(str(exc)) from exc


def automaton_to_data(automaton: Automaton) -> Dict[str, Any]:
    auto = automaton.canonical()
    return {
        "states": [{"id": s.id, "label": to_text(s.label)} for s in auto.states],
        "transitions": [
            {"from": t.source, "trigger": to_text(t.trigger), "to": t.target} for t in auto.transitions
        ],
    }


def load_automaton(path: Union[str, Path]) -> Automaton:
    return automaton_from_data(read_json(path))


def load_belief_change() -> Automaton:
    """The transcribed three-state belief-change automaton."""
    return load_automaton(BELIEF_CHANGE_PATH)


def document_kind(data: Any) -> Literal["automaton", "action-model"]:
    if isinstance(data, dict) and "transitions" in data:
        return "automaton"
    if isinstance(data, dict) and data.get("states") and "pre" in data["states"][0]:
        return "action-model"
    if isinstance(data, dict) and data.get("states") and "label" in data["states"][0]:
        return "automaton"
    raise DocumentError("document is neither an automaton nor an action model")


# ───────────────────────────────────────────
# traces
def _cell(model: GeneralModel, agent) -> str:
    if isinstance(model, ThresholdModel):
        return "1" if agent in model.behavior else "0"
    assignment = {atom: agent in ext for atom, ext in model.valuation.items()}
    if set(assignment) == {BEHAVIOR}:
        return "1" if assignment[BEHAVIOR] else "0"
    return state_name(assignment)


def write_trace_csv(trace: Trace, fh) -> None:
    """One row per step: `step` then one column per agent in model order."""
    agents = list(trace.initial.agents)
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(["step", *agents])
    for step, model in enumerate(trace.models):
        writer.writerow([step, *(_cell(model, a) for a in agents)])


def trace_csv(trace: Trace) -> str:
    buf = io.StringIO()
    write_trace_csv(trace, buf)
    return buf.getvalue()
