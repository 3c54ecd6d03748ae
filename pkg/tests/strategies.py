"""Shared hypothesis strategies."""
from __future__ import annotations

from hypothesis import strategies as st

from dynamics.orbit import random_belief_model, random_model
from logic.formula import B, TOP, And, BoxLeq, DiamLeq, EqTheta, Formula, Not

seeds = st.integers(min_value=0, max_value=2**31 - 1)


@st.composite
def threshold_models(draw, max_agents: int = 8):
    n = draw(st.integers(min_value=2, max_value=max_agents))
    return random_model(draw(seeds), n)


@st.composite
def belief_models(draw, max_agents: int = 8):
    n = draw(st.integers(min_value=2, max_value=max_agents))
    return random_belief_model(draw(seeds), n)


def formulas(max_depth: int = 3) -> st.SearchStrategy[Formula]:
    """Formulas over the atom B of depth at most max_depth."""
    leaves = st.sampled_from([B, TOP])
    if max_depth == 0:
        return leaves
    sub = formulas(max_depth - 1)
    return st.one_of(
        leaves,
        st.builds(Not, sub),
        st.builds(DiamLeq, sub),
        st.builds(BoxLeq, sub),
        st.builds(EqTheta, sub),
        st.builds(And, sub, sub),
    )
