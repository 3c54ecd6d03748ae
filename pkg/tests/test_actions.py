import pytest
from hypothesis import given

from actions.action_model import (
    NO_CHANGE,
    PLAY_B,
    PLAY_NOT_B,
    ActionModel,
    ActionState,
    canonical_product,
    product_update,
)
from actions.catalog import (
    CLASS_MEMBERS,
    CatalogClass,
    catalog,
    classify,
    dual,
    e1,
    e2,
    partition,
    swap_posts,
    table1,
)
from dynamics.direct import step_eq1, step_eq2
from logic.formula import B, TOP, DiamLeq, EqTheta, Not, gt_box, strict_box, strict_diamond
from threshold.errors import (
    AsymmetricRelation,
    EmptyProduct,
    IndexOutOfRange,
    InvalidPostCondition,
    NotAPartition,
    NotFullRelation,
    UnknownAtom,
)
from threshold.model import BELIEF_NOT_P, BELIEF_P, build_model

from .strategies import threshold_models


def two_clique(behavior=("a",), theta="1/2"):
    return build_model(["a", "b"], [("a", "b")], behavior, theta)


def posts(am):
    return [dict(s.post) for s in am.states]


# ───────────────────────────────────────────
# product update
def test_product_update_with_e1():
    out = product_update(two_clique(), e1())
    assert out.agents == (("a", "s2"), ("b", "s1"))
    assert out.behavior == {("a", "s2"), ("b", "s1")}
    assert out.neighbors(("a", "s2")) == {("b", "s1")}
    assert out.theta == two_clique().theta


def test_identity_event():
    identity = ActionModel.full([ActionState("id", TOP, {})])
    m = two_clique()
    out = product_update(m, identity)
    assert len(out.agents) == len(m.agents)
    assert out.behavior == {("a", "id")}
    assert canonical_product(m, identity) == m


def test_overlapping_preconditions_duplicate_agents():
    doubled = ActionModel.full([ActionState("x", TOP, {}), ActionState("y", TOP, {})])
    m = two_clique()
    out = product_update(m, doubled)
    assert len(out.agents) == 2 * len(m.agents)
    with pytest.raises(NotAPartition) as err:
        canonical_product(m, doubled)
    assert (err.value.agent, err.value.count) == ("a", 2)


def test_relation_is_honoured():
    diagonal = ActionModel(
        (ActionState("x", TOP, {}), ActionState("y", TOP, {})),
        frozenset({("x", "x"), ("y", "y")}),
    )
    out = product_update(two_clique(), diagonal)
    assert out.neighbors(("a", "x")) == {("b", "x")}
    with pytest.raises(NotFullRelation):
        canonical_product(two_clique(), diagonal)


def test_empty_product():
    never = ActionModel.full([ActionState("never", Not(TOP), {})])
    with pytest.raises(EmptyProduct):
        product_update(two_clique(), never)


def test_asymmetric_relation_rejected():
    one_way = ActionModel(
        (ActionState("x", B, {}), ActionState("y", Not(B), {})),
        frozenset({("x", "y")}),
    )
    with pytest.raises(AsymmetricRelation):
        product_update(two_clique(), one_way)


def test_post_on_unknown_atom():
    believe = ActionModel.full([ActionState("s", TOP, {BELIEF_P: True, BELIEF_NOT_P: False})])
    with pytest.raises(UnknownAtom):
        product_update(two_clique(), believe)


@pytest.mark.parametrize(
    "post",
    [{"B": 1}, {BELIEF_P: True}, {BELIEF_P: True, BELIEF_NOT_P: True}],
)
def test_invalid_posts(post):
    with pytest.raises(InvalidPostCondition):
        ActionState("s", TOP, post)


def test_canonical_product_with_e1():
    out = canonical_product(two_clique(), e1())
    assert out.behavior == {"a", "b"}
    assert out.network == two_clique().network
    assert type(out) is type(two_clique())


# ───────────────────────────────────────────
# catalog
def test_table1_goldens():
    assert posts(table1(1)) == [PLAY_B, PLAY_B, PLAY_B]
    assert posts(table1(2)) == [PLAY_B, PLAY_B, NO_CHANGE]
    assert posts(table1(6)) == [PLAY_B, NO_CHANGE, PLAY_NOT_B]
    assert posts(table1(22)) == [PLAY_NOT_B, NO_CHANGE, PLAY_B]
    assert posts(table1(27)) == [PLAY_NOT_B, PLAY_NOT_B, PLAY_NOT_B]


def test_table1_preconditions_and_relation():
    am = table1(14)
    assert [s.pre for s in am.states] == [strict_diamond(B), EqTheta(B), Not(DiamLeq(B))]
    assert am.is_full()
    lt = table1(14, third_cell="lt")
    assert lt.states[2].pre == strict_box(Not(B))
    assert partition("gt")[2] == gt_box(Not(B))


@pytest.mark.parametrize("index", [0, 28, -1])
def test_table1_index_range(index):
    with pytest.raises(IndexOutOfRange, match="rule index out of range 1..27"):
        table1(index)


def test_e1_e2_shapes():
    assert [s.pre for s in e1().states] == [DiamLeq(B), Not(DiamLeq(B))]
    assert posts(e1()) == [PLAY_B, NO_CHANGE]
    assert e2() == table1(6)


@pytest.mark.parametrize(
    "index, expected",
    [
        (1, CatalogClass.TRIVIAL),
        (9, CatalogClass.COORDINATION_BR),
        (22, CatalogClass.ANTICOORDINATION_BR),
        (2, CatalogClass.SEEDED_COORDINATION),
        (26, CatalogClass.SEEDED_ANTICOORDINATION),
        (24, CatalogClass.NONSENSICAL),
        (11, CatalogClass.UNCLASSIFIED),
    ],
)
def test_classify(index, expected):
    assert classify(index) is expected


def test_classes_are_disjoint_and_leave_four_unclassified():
    listed = [i for members in CLASS_MEMBERS.values() for i in members]
    assert len(listed) == len(set(listed)) == 23
    unclassified = [e.index for e in catalog() if e.klass is CatalogClass.UNCLASSIFIED]
    assert unclassified == [11, 12, 20, 21]


def test_catalog_row_22():
    row = catalog()[21].row()
    assert row.endswith("<lt> B → ~B | (=) B → T | [gt] ~B → B | class=anticoordination_br")


@pytest.mark.parametrize("i", range(1, 28))
def test_post_swap_reverses_index(i):
    assert swap_posts(table1(i)) == table1(28 - i)


@pytest.mark.parametrize("coord, anti", [(3, 25), (6, 22), (9, 19)])
def test_coordination_maps_to_anticoordination(coord, anti):
    assert swap_posts(table1(coord)) == table1(anti)
    assert classify(coord) is CatalogClass.COORDINATION_BR
    assert classify(anti) is CatalogClass.ANTICOORDINATION_BR


def test_dual_swaps_everywhere():
    am = dual(table1(6))
    assert [s.pre for s in am.states] == [strict_diamond(Not(B)), EqTheta(Not(B)), gt_box(B)]
    assert posts(am) == [PLAY_NOT_B, NO_CHANGE, PLAY_B]


# ───────────────────────────────────────────
# properties
@given(threshold_models())
def test_every_catalog_model_partitions(m):
    for i in range(1, 28):
        out = canonical_product(m, table1(i))
        assert out.agents == m.agents
        assert out.network == m.network


@given(threshold_models())
def test_e1_and_table1_2_give_eq1(m):
    assert canonical_product(m, table1(2)) == canonical_product(m, e1()) == step_eq1(m)


@given(threshold_models())
def test_table1_6_gives_eq2(m):
    assert canonical_product(m, table1(6)) == step_eq2(m)
