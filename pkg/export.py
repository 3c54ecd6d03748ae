"""
Graphviz DOT rendering of models and trace frames.

Node and edge order follow the model's agent order and the sorted edge
list, so the same model always renders to the same bytes.
"""
from __future__ import annotations

import logging
from pathlib import Path
from typing import List, Union

from dynamics.orbit import Trace
from threshold.model import BEHAVIOR, BELIEF_NOT_P, BELIEF_P, GeneralModel

logger = logging.getLogger(__name__)

_BELIEF_STYLE = {
    BELIEF_P: "[style=filled]",
    BELIEF_NOT_P: "[style=dashed]",
}


_KEYWORDS = frozenset({"node", "edge", "graph", "digraph", "subgraph", "strict"})


def _quote(agent) -> str:
    text = str(agent)
    if text.isidentifier() and text.lower() not in _KEYWORDS:
        return text
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def _node_style(model: GeneralModel, agent) -> str:
    if BEHAVIOR in model.valuation:
        return "[style=filled]" if agent in model.valuation[BEHAVIOR] else ""
    for atom, style in _BELIEF_STYLE.items():
        if agent in model.valuation.get(atom, ()):
            return style
    return ""


def export_dot(model: GeneralModel, name: str = "G") -> str:
    """Undirected graph; B-agents (or Bp-believers) filled."""
    lines = [f"graph {name} {{"]
    for agent in model.agents:
        style = _node_style(model, agent)
        lines.append(f"  {_quote(agent)}{' ' + style if style else ''};")
    for a, b in model.network.edges():
        lines.append(f"  {_quote(a)} -- {_quote(b)};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def write_frames(trace: Trace, directory: Union[str, Path]) -> List[Path]:
    """One DOT file per step: frame_000.dot, frame_001.dot, ..."""
    out = Path(directory)
    out.mkdir(parents=True, exist_ok=True)
    width = max(3, len(str(len(trace.models) - 1)))
    paths = []
    for step, model in enumerate(trace.models):
        path = out / f"frame_{step:0{width}d}.dot"
        path.write_text(export_dot(model), encoding="utf-8")
        paths.append(path)
    logger.info("Wrote %d DOT frames to %s", len(paths), out)
    return paths
