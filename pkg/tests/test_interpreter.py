import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from generators import (
    expression_terms,
    gen_pair,
    ground_terms,
    patterns,
    side_conditions,
    theory_term_pairs,
    valuations,
)
from rewlang.bench import bundled_theory
from rewlang.interpreter import InterpreterInvariantError, evaluate, evaluate_condition, naive_select, run, step, try_match
from rewlang.semantics import (
    RewritingRule,
    RewritingTheory,
    SideCondition,
    applicable_rules,
    sat_exprterm,
    sat_sym,
    side_condition_holds,
    step_related,
    trace_related,
)
from rewlang.static_model import default_model
from rewlang.syntax import parse_eterm, parse_expression, parse_ground_term, parse_term
from rewlang.terms import Call, Leaf, Node, Variable, free_vars, instantiate

M = default_model()
X, Y = Variable("X"), Variable("Y")
MV, NV = Variable("M"), Variable("N")
TRUE_CALL = Call("bool.true")
TC = bundled_theory("two-counters")


def state(m, n):
    return Node("state", (Leaf(m), Leaf(n)))


class TestTryMatch:
    def test_variable_binds_subject(self):
        g = Node("plus", (Leaf(3), Leaf(4)))
        assert try_match(Leaf(X), g) == {X: g}

    def test_node(self):
        assert try_match(parse_term("plus[X,Y]"), Node("plus", (Leaf(3), Leaf(4)))) == {X: Leaf(3), Y: Leaf(4)}

    def test_conflicting_bindings(self):
        assert try_match(parse_term("s[X,X]"), Node("s", (Leaf(1), Leaf(2)))) is None

    def test_symbol_mismatch(self):
        assert try_match(parse_term("plus[X,Y]"), Node("times", (Leaf(3), Leaf(4)))) is None

    def test_arity_mismatch(self):
        assert try_match(parse_term("s[X]"), Node("s", (Leaf(1), Leaf(2)))) is None

    def test_bool_literal_does_not_match_int(self):
        assert try_match(Leaf(True), Leaf(1)) is None
        assert try_match(Leaf(1), Leaf(1)) == {}

    @given(patterns, ground_terms)
    def test_soundness(self, phi, g):
        rho = try_match(phi, g)
        if rho is not None:
            assert set(rho) == free_vars(phi)
            assert sat_sym(M, rho, g, phi)

    @given(patterns, valuations)
    def test_completeness(self, phi, rho):
        if free_vars(phi) <= set(rho):
            got = try_match(phi, instantiate(phi, rho))
            assert got is not None
            assert set(got) == free_vars(phi)
            assert all(rho[v] == t for v, t in got.items())


class TestEvaluateCondition:
    def test_conjunction_of_type_tests(self):
        cs = [SideCondition(parse_expression("bool.and(z.is(X), z.is(Y))"), TRUE_CALL)]
        assert evaluate_condition(M, {X: Leaf(3), Y: Leaf(4)}, cs)

    def test_counter_exhausted(self):
        cs = [SideCondition(parse_expression("z.lt([(@builtin-int 0)], M)"), TRUE_CALL)]
        assert not evaluate_condition(M, {MV: Leaf(0)}, cs)

    def test_empty(self):
        assert evaluate_condition(M, {}, [])

    @given(valuations, st.lists(side_conditions, max_size=3))
    def test_agrees_with_semantics(self, rho, cs):
        assert evaluate_condition(M, rho, cs) == all(side_condition_holds(M, rho, c) for c in cs)


class TestEvaluate:
    def test_leaf_call(self):
        assert evaluate(M, {X: Leaf(3), Y: Leaf(4)}, Leaf(Call("z.plus", [X, Y]))) == Leaf(7)

    def test_two_counters_rhs(self):
        assert evaluate(M, {MV: Leaf(3), NV: Leaf(0)}, TC.rules[0].rhs) == state(2, 3)

    def test_constant(self):
        assert evaluate(M, {}, Node("unitValue", ())) == Node("unitValue", ())

    def test_unbound_is_undefined(self):
        assert evaluate(M, {}, Node("s", (Leaf(X),))) is None

    @given(valuations, expression_terms, ground_terms)
    def test_agrees_with_semantics(self, rho, r, other):
        g = evaluate(M, rho, r)
        if g is None:
            assert not sat_exprterm(M, rho, other, r)
        else:
            assert sat_exprterm(M, rho, g, r)
            assert sat_exprterm(M, rho, other, r) == (other == g)


class TestSelection:
    def test_two_counters(self):
        i, rule, rho = naive_select(M, TC, state(3, 0))
        assert (i, rule.action, rho) == (0, "step", {MV: Leaf(3), NV: Leaf(0)})

    def test_stuck(self):
        assert naive_select(M, TC, state(0, 6)) is None

    def test_first_match_wins(self):
        theory = RewritingTheory(
            [
                RewritingRule(parse_term("s[X]"), parse_eterm("a[]"), [(TRUE_CALL, TRUE_CALL)], "r1"),
                RewritingRule(parse_term("s[X]"), parse_eterm("b[]"), [(TRUE_CALL, TRUE_CALL)], "r2"),
            ]
        )
        i, rule, rho = naive_select(M, theory, Node("s", (Leaf(1),)))
        assert (i, rule.action, rho) == (0, "r1", {X: Leaf(1)})

    def test_failed_condition_does_not_block_later_rule(self):
        theory = RewritingTheory(
            [
                RewritingRule(parse_term("s[X]"), parse_eterm("a[]"), [(Call("bool.false"), TRUE_CALL)], "r1"),
                RewritingRule(parse_term("s[X]"), parse_eterm("b[]"), (), "r2"),
            ]
        )
        assert step(M, theory, Node("s", (Leaf(1),))).action == "r2"


class TestStep:
    def test_two_counters(self):
        out = step(M, TC, state(3, 0))
        assert (out.next, out.action, out.rule_index) == (state(2, 3), "step", 0)

    def test_stuck(self):
        assert step(M, TC, state(0, 6)) is None

    def test_imp_conditional(self):
        theory = bundled_theory("imp")
        g = parse_ground_term(
            "c[builtin.cseq[ite[(@builtin-bool true), a[], b[]], builtin.empty_cseq[]], (@builtin-dict [])]"
        )
        out = step(M, theory, g)
        assert out.action == "stmt.ite.true"
        assert out.next == parse_ground_term("c[builtin.cseq[a[], builtin.empty_cseq[]], (@builtin-dict [])]")

    def test_ill_formed_rule_is_reported(self):
        theory = RewritingTheory([RewritingRule(parse_term("s[]"), parse_eterm("t[Y]"))])
        with pytest.raises(InterpreterInvariantError):
            step(M, theory, Node("s", ()))

    @given(theory_term_pairs())
    def test_sound_and_complete(self, pair):
        theory, g = pair
        out = step(M, theory, g)
        if out is None:
            assert applicable_rules(M, theory, g) == []
        else:
            w = step_related(M, theory, g, out.next, rule_index=out.rule_index)
            assert w is not None and w.valuation == out.valuation

    @given(theory_term_pairs())
    def test_deterministic(self, pair):
        theory, g = pair
        assert step(M, theory, g) == step(M, theory, g)


class TestRun:
    def test_two_counters(self):
        r = run(M, TC, state(3, 0), 100, record_trace=True)
        assert (r.final, r.steps_taken, r.exhausted) == (state(0, 6), 3, False)
        assert r.action_word == ["step"] * 3
        assert trace_related(M, TC, state(3, 0), r.action_word, r.final, r.intermediates)

    @pytest.mark.parametrize("g0, stuck", [(state(3, 0), False), (state(0, 0), True)])
    def test_zero_fuel(self, g0, stuck):
        r = run(M, TC, g0, 0)
        assert (r.final, r.steps_taken, r.exhausted) == (g0, 0, not stuck)

    def test_exhaustion_flag(self):
        r = run(M, TC, state(3, 0), 1)
        assert (r.final, r.steps_taken, r.exhausted) == (state(2, 3), 1, True)

    def test_exact_fuel_is_not_exhaustion(self):
        assert not run(M, TC, state(3, 0), 3).exhausted

    def test_negative_fuel(self):
        with pytest.raises(ValueError):
            run(M, TC, state(3, 0), -1)

    def test_intermediates_need_recording(self):
        with pytest.raises(ValueError):
            run(M, TC, state(1, 0), 5).intermediates

    def test_fire_counts(self):
        r = run(M, TC, state(10, 0), 100)
        assert r.fire_counts == [10]

    def test_random_runs_are_traces(self):
        rng = random.Random(11)
        for _ in range(200):
            theory, g = gen_pair(rng)
            r = run(M, theory, g, 20, record_trace=True)
            assert trace_related(M, theory, g, r.action_word, r.final, r.intermediates)
