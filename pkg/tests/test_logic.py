from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given

from dynamics.orbit import random_model
from logic.checker import ModelChecker, SubsetOracle, eval_subset_oracle, evaluate, extension
from logic.formula import (
    B,
    BNP,
    BP,
    TOP,
    And,
    BoxF,
    BoxLeq,
    DiamLeq,
    EqTheta,
    Not,
    disj,
    gt_box,
    impl,
    strict_box,
    strict_diamond,
    to_text,
    undecided,
)
from logic.parser import parse
from logic.witness import search_counterexample
from threshold.errors import MissingTheta, ParseError, UnknownAtom
from threshold.model import build_belief_model, build_model, neighbor_fraction

from .strategies import formulas, threshold_models


def five_agent_model():
    return build_model(
        ["a", "b", "c", "d", "e"],
        [("a", "b"), ("b", "c"), ("b", "d"), ("e", "c"), ("e", "d")],
        ["a"],
        "1/4",
    )


# ───────────────────────────────────────────
# parser / printer
@pytest.mark.parametrize(
    "text, expected",
    [
        ("B & ~<le> B", And(B, Not(DiamLeq(B)))),
        ("[gt] ~B", Not(DiamLeq(B))),
        ("<lt> B", And(DiamLeq(B), Not(EqTheta(B)))),
        ("[lt] ~B", And(BoxLeq(Not(B)), Not(EqTheta(Not(B))))),
        ("Up", And(Not(BP), Not(BNP))),
        ("B | T", Not(And(Not(B), Not(TOP)))),
        ("B -> B -> T", impl(B, impl(B, TOP))),
        ("F Bp & <F> Bp", parse("(F Bp) & (<F> Bp)")),
    ],
)
def test_parse(text, expected):
    assert parse(text) == expected


def test_precedence():
    assert parse("~B & B | B -> B") == impl(disj(And(Not(B), B), B), B)


@pytest.mark.parametrize(
    "text, position",
    [
        ("(=) B &", 6),
        ("(B & B", 0),
        ("B $ B", 2),
        ("B Q", 2),
        ("", 0),
        ("& B", 0),
    ],
)
def test_parse_errors(text, position):
    with pytest.raises(ParseError) as err:
        parse(text)
    assert err.value.position == position


def test_printer_sugar():
    assert to_text(strict_diamond(B)) == "<lt> B"
    assert to_text(EqTheta(B)) == "(=) B"
    assert to_text(gt_box(Not(B))) == "[gt] ~B"
    assert to_text(strict_box(Not(B))) == "[lt] ~B"
    assert to_text(undecided()) == "~Bp & ~Bnp"


@given(formulas(3))
def test_print_parse_round_trip(f):
    assert parse(to_text(f)) == f


# ───────────────────────────────────────────
# semantics
def test_five_agent_goldens():
    m = five_agent_model()
    assert evaluate(m, "b", DiamLeq(B))
    assert evaluate(m, "e", BoxLeq(Not(B)))
    assert evaluate(m, "a", And(Not(EqTheta(B)), BoxLeq(Not(B))))


def test_exact_tie_at_quarter():
    m = build_model(["c", "l1", "l2", "l3", "l4"], [("c", f"l{i}") for i in range(1, 5)], ["l1"], "1/4")
    assert evaluate(m, "c", EqTheta(B))
    assert not evaluate(m, "c", strict_diamond(B))


def test_theta_zero_makes_diamond_trivial():
    m = build_model(["a", "b", "c"], [("a", "b"), ("b", "c")], [], "0")
    assert extension(m, DiamLeq(B)) == {"a", "b", "c"}
    assert all(eval_subset_oracle(m, a, DiamLeq(B)) for a in m.agents)


def test_single_neighbour_at_theta_one():
    m = build_model(["a", "b"], [("a", "b")], ["b"], "1")
    for check in (evaluate, eval_subset_oracle):
        assert check(m, "a", DiamLeq(B))
        assert check(m, "a", BoxLeq(B))


def test_extension_basics():
    m = five_agent_model()
    assert extension(m, TOP) == set(m.agents)
    assert extension(m, B) == m.behavior
    assert extension(m, And(B, Not(B))) == frozenset()


def test_missing_theta_and_unknown_atom():
    belief = build_belief_model(["a", "b"], [("a", "b")], ["a"], [])
    with pytest.raises(MissingTheta):
        evaluate(belief, "a", DiamLeq(BP))
    with pytest.raises(MissingTheta):
        eval_subset_oracle(belief, "a", EqTheta(BP))
    with pytest.raises(UnknownAtom):
        evaluate(five_agent_model(), "a", BP)


def _all_formulas(depth):
    layer = [B, TOP]
    for _ in range(depth):
        unary = [op(f) for op in (Not, DiamLeq, BoxLeq, EqTheta) for f in layer]
        binary = [And(f, g) for f, g in product(layer, repeat=2)]
        layer = list(dict.fromkeys([B, TOP, *unary, *binary]))
    return layer


def test_oracle_agrees_exhaustively_to_depth_two():
    candidates = _all_formulas(2)
    for seed in range(200):
        m = random_model(seed, 2 + seed % 7)
        checker, oracle = ModelChecker(m), SubsetOracle(m)
        for f in candidates:
            for a in m.agents:
                assert checker.holds(a, f) == oracle.holds(a, f), (seed, a, to_text(f))


@given(threshold_models(), formulas(3))
def test_oracle_agrees_at_depth_three(m, f):
    checker, oracle = ModelChecker(m), SubsetOracle(m)
    for a in m.agents:
        assert checker.holds(a, f) == oracle.holds(a, f)


@given(threshold_models(), formulas(2), formulas(2))
def test_k_validity(m, phi, psi):
    k = impl(BoxLeq(impl(phi, psi)), impl(BoxLeq(phi), BoxLeq(psi)))
    assert extension(m, k) == set(m.agents)


@given(threshold_models(), formulas(2))
def test_box_collapses_to_all_neighbours(m, phi):
    assert extension(m, BoxLeq(phi)) == extension(m, BoxF(phi))


@given(threshold_models(), formulas(2))
def test_box_implies_dual_for_positive_theta(m, phi):
    if m.theta == 0:
        return
    assert extension(m, impl(BoxLeq(phi), Not(DiamLeq(Not(phi))))) == set(m.agents)


@given(threshold_models(), formulas(2))
def test_tie_complement(m, phi):
    checker = ModelChecker(m)
    outside = checker.extension(Not(phi))
    for a in checker.extension(EqTheta(phi)):
        assert neighbor_fraction(m, a, outside) == 1 - m.theta


@given(threshold_models())
def test_behaviour_cells_partition_agents(m):
    cells = [extension(m, f) for f in (strict_diamond(B), EqTheta(B), gt_box(Not(B)))]
    assert cells[0] | cells[1] | cells[2] == set(m.agents)
    assert not (cells[0] & cells[1] or cells[0] & cells[2] or cells[1] & cells[2])


# ───────────────────────────────────────────
# stored witnesses
def test_duality_failure_witness():
    m = build_model(["a", "b"], [("a", "b")], ["a"], "0")
    assert evaluate(m, "b", BoxLeq(B))
    assert not evaluate(m, "b", Not(DiamLeq(Not(B))))


def test_search_rediscovers_duality_failure():
    w = search_counterexample(BoxLeq(B), Not(DiamLeq(Not(B))))
    assert w is not None
    assert w.model.theta == 0
    assert w.model.behavior == {"a"}
    assert (w.agent, w.left, w.right) == ("b", True, False)


def test_dual_does_not_imply_box():
    # three neighbours, one outside B: ~<le>~B holds, [le]B does not
    m = build_model(["x", "p", "q", "r"], [("x", "p"), ("x", "q"), ("x", "r")], ["p", "q"], "1/2")
    assert evaluate(m, "x", Not(DiamLeq(Not(B))))
    assert not evaluate(m, "x", BoxLeq(B))


def _split_pair(theta):
    return build_model(["x", "b", "c"], [("x", "b"), ("x", "c")], ["b"], theta)


def test_tie_modality_does_not_distribute_over_or():
    m = _split_pair("1/2")
    assert not evaluate(m, "x", EqTheta(disj(B, Not(B))))
    assert evaluate(m, "x", disj(EqTheta(B), EqTheta(Not(B))))


def test_tie_modality_does_not_distribute_over_and():
    m = _split_pair("1/2")
    assert not evaluate(m, "x", EqTheta(And(B, Not(B))))
    assert evaluate(m, "x", And(EqTheta(B), EqTheta(Not(B))))


def test_diamond_does_not_distribute_over_or():
    m = _split_pair("1")
    assert evaluate(m, "x", DiamLeq(disj(B, Not(B))))
    assert not evaluate(m, "x", disj(DiamLeq(B), DiamLeq(Not(B))))


def test_search_finds_nothing_for_equivalent_formulas():
    assert search_counterexample(BoxLeq(B), BoxF(B), max_agents=3) is None
    assert search_counterexample(Not(Not(B)), B, max_agents=2, thetas=[Fraction(1, 2)]) is None
