import random

from hypothesis import given
from hypothesis import strategies as st

from generators import abstract, expressions, gen_ground, ground_terms, mutate, patterns, valuations
from rewlang.semantics import (
    RewritingRule,
    RewritingTheory,
    SideCondition,
    check_rule_wf,
    denote_expr,
    minimal_valuation,
    oracle_stats,
    sat_expr,
    sat_exprterm,
    sat_sym,
    side_condition_holds,
    step_related,
    first_trace_violation,
    trace_related,
)
from rewlang.static_model import default_model
from rewlang.syntax import parse_eterm, parse_expression, parse_term
from rewlang.terms import Call, Leaf, Lit, Node, Variable, free_vars, instantiate, pattern_to_eterm

M = default_model()
X, Y, B = Variable("X"), Variable("Y"), Variable("B")
MV, NV = Variable("M"), Variable("N")
TRUE_CALL = Call("bool.true")


def state(m, n):
    return Node("state", (Leaf(m), Leaf(n)))


TWO_COUNTERS = RewritingTheory(
    [
        RewritingRule(
            parse_term("state[M, N]"),
            parse_eterm("state[z.minus(M, [(@builtin-int 1)]), z.plus(N, M)]"),
            [(parse_expression("z.lt([(@builtin-int 0)], M)"), TRUE_CALL)],
            "step",
        )
    ]
)


class TestSatExpr:
    def test_literal(self):
        assert sat_expr(M, {}, Leaf(7), Lit(Leaf(7)))

    def test_variable(self):
        assert sat_expr(M, {X: Leaf(3)}, Leaf(3), X)
        assert not sat_expr(M, {}, Leaf(3), X)

    def test_call(self):
        assert sat_expr(M, {X: Leaf(3), Y: Leaf(4)}, Leaf(7), Call("z.plus", [X, Y]))
        assert not sat_expr(M, {X: Leaf(3), Y: Leaf(4)}, Leaf(8), Call("z.plus", [X, Y]))

    def test_call_with_unbound_argument(self):
        assert not sat_expr(M, {}, Leaf(True), Call("z.is", [X]))


class TestDenote:
    def test_literal(self):
        assert denote_expr(M, {}, Lit(Node("unitValue", ()))) == Node("unitValue", ())

    def test_call(self):
        assert denote_expr(M, {X: Leaf(3)}, Call("z.plus", [X, Lit(Leaf(1))])) == Leaf(4)

    def test_unbound(self):
        assert denote_expr(M, {}, X) is None

    @given(valuations, st.data())
    def test_denotation_satisfies(self, rho, data):
        e = data.draw(expressions)
        g = denote_expr(M, rho, e)
        if g is not None:
            assert sat_expr(M, rho, g, e)


class TestSatSym:
    def test_node(self):
        assert sat_sym(M, {X: Leaf(3), Y: Leaf(4)}, Node("plus", (Leaf(3), Leaf(4))), parse_term("plus[X,Y]"))

    def test_builtin_leaf(self):
        assert sat_sym(M, {}, Leaf(3), Leaf(3))

    def test_arity_mismatch(self):
        assert not sat_sym(M, {X: Leaf(3)}, Node("plus", (Leaf(3),)), parse_term("plus[X,Y]"))

    @given(patterns, valuations)
    def test_instantiation_satisfies(self, phi, rho):
        if free_vars(phi) <= set(rho):
            assert sat_sym(M, rho, instantiate(phi, rho), phi)


class TestSatExprTerm:
    def test_leaf(self):
        assert sat_exprterm(M, {X: Leaf(3), Y: Leaf(4)}, Leaf(7), Leaf(Call("z.plus", [X, Y])))

    def test_two_counters_rhs(self):
        rhs = TWO_COUNTERS.rules[0].rhs
        assert sat_exprterm(M, {MV: Leaf(3), NV: Leaf(0)}, state(2, 3), rhs)

    def test_symbol_mismatch(self):
        assert not sat_exprterm(M, {}, Node("c", ()), Node("d", ()))


class TestSideConditions:
    def test_true(self):
        assert side_condition_holds(M, {X: Leaf(3)}, SideCondition(Call("z.is", [X]), TRUE_CALL))

    def test_false(self):
        c = SideCondition(parse_expression("bool.eq(B, bool.true())"), TRUE_CALL)
        assert not side_condition_holds(M, {B: Leaf(False)}, c)

    def test_vacuous_when_undefined(self):
        before = oracle_stats["vacuous_side_condition"]
        assert side_condition_holds(M, {}, SideCondition(X, TRUE_CALL))
        assert oracle_stats["vacuous_side_condition"] == before + 1


class TestWellFormedness:
    def test_guarded_plus(self):
        rule = RewritingRule(
            parse_term("plus[X,Y]"), parse_eterm("z.plus(X,Y)"), [(parse_expression("z.is(X)"), TRUE_CALL)]
        )
        assert check_rule_wf(rule)

    def test_unhoused(self):
        assert not check_rule_wf(RewritingRule(parse_term("plus[X]"), Leaf(Y)))

    def test_no_variables(self):
        assert check_rule_wf(RewritingRule(Node("s", ()), Node("s", ())))

    def test_condition_variable_counts(self):
        rule = RewritingRule(Node("s", ()), Node("s", ()), [(Y, TRUE_CALL)])
        assert not check_rule_wf(rule)


class TestMinimalValuation:
    def test_nonlinear(self):
        phi = parse_term("s[X,X]")
        assert minimal_valuation(phi, Node("s", (Leaf(1), Leaf(1)))) == {X: Leaf(1)}
        assert minimal_valuation(phi, Node("s", (Leaf(1), Leaf(2)))) is None

    @given(patterns, valuations)
    def test_recovers_restriction(self, phi, rho):
        if free_vars(phi) <= set(rho):
            got = minimal_valuation(phi, instantiate(phi, rho))
            assert got == {v: rho[v] for v in free_vars(phi)}

    @given(patterns, ground_terms)
    def test_result_satisfies(self, phi, g):
        rho = minimal_valuation(phi, g)
        if rho is not None:
            assert set(rho) == free_vars(phi)
            assert sat_sym(M, rho, g, phi)


class TestStepRelated:
    def test_two_counters_step(self):
        w = step_related(M, TWO_COUNTERS, state(3, 0), state(2, 3))
        assert w is not None
        assert w.rule.action == "step"
        assert w.valuation == {MV: Leaf(3), NV: Leaf(0)}

    def test_wrong_successor(self):
        assert step_related(M, TWO_COUNTERS, state(3, 0), state(2, 4)) is None

    def test_stuck(self):
        for g2 in (state(0, 6), state(-1, 6), Node("x", ())):
            assert step_related(M, TWO_COUNTERS, state(0, 6), g2) is None

    def test_empty_theory(self):
        assert step_related(M, RewritingTheory(), state(1, 0), state(0, 1)) is None

    def test_action_filter(self):
        assert step_related(M, TWO_COUNTERS, state(3, 0), state(2, 3), action="other") is None


class TestTraces:
    def test_empty_word(self):
        g = state(5, 5)
        assert trace_related(M, TWO_COUNTERS, g, [], g)
        assert not trace_related(M, TWO_COUNTERS, g, [], state(5, 6))

    def test_three_steps(self):
        assert trace_related(
            M, TWO_COUNTERS, state(3, 0), ["step"] * 3, state(0, 6), [state(2, 3), state(1, 5)]
        )

    def test_no_successor(self):
        assert not trace_related(M, TWO_COUNTERS, state(0, 6), ["step"], state(0, 6))

    def test_reports_first_bad_step(self):
        bad = [state(2, 3), state(1, 4)]
        assert first_trace_violation(M, TWO_COUNTERS, state(3, 0), ["step"] * 3, state(0, 6), bad) == 1

    def test_shape_mismatch(self):
        assert first_trace_violation(M, TWO_COUNTERS, state(3, 0), ["step"] * 3, state(0, 6), []) == 3


def test_step_related_rejects_mutated_successors():
    rng = random.Random(7)
    for _ in range(300):
        g = gen_ground(rng, 3)
        lhs = abstract(rng, g)
        rule = RewritingRule(lhs, pattern_to_eterm(lhs), (), "id")
        theory = RewritingTheory([rule])
        if minimal_valuation(lhs, g) is None:
            continue
        assert step_related(M, theory, g, g) is not None
        g2 = mutate(rng, g)
        assert (step_related(M, theory, g, g2) is not None) == (g2 == g)
