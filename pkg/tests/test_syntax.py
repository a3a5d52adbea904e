import pytest
from hypothesis import given

from generators import expression_terms, expressions
from rewlang.syntax import (
    Location,
    ParseError,
    parse_eterm,
    parse_expression,
    parse_ground_term,
    parse_term,
    print_expr,
    print_term,
)
from rewlang.terms import Call, Leaf, Lit, Node, Variable
from rewlang.values import ERROR, DictValue, ListValue, SymbolValue


class TestTermFiles:
    def test_state_configuration(self):
        assert parse_ground_term("state[(@builtin-int 10),(@builtin-int 0)]") == Node(
            "state", (Leaf(10), Leaf(0))
        )

    def test_nullary_symbol(self):
        assert parse_ground_term("unitValue[]") == Node("unitValue", ())

    def test_bare_identifier_is_nullary(self):
        assert parse_ground_term("var[n]") == Node("var", (Node("n", ()),))

    def test_variable_rejected_with_location(self):
        with pytest.raises(ParseError) as info:
            parse_ground_term("plus[X]")
        assert info.value.location == Location(1, 6)
        assert "variable" in str(info.value)

    def test_placeholders_are_symbols(self):
        t = parse_ground_term("seq[$arg, $arg2]")
        assert t == Node("seq", (Node("$arg", ()), Node("$arg2", ())))

    def test_comments_and_whitespace(self):
        src = "/* a\n comment */ s[\n  (@builtin-int -3) ,\n  t[] ]"
        assert parse_ground_term(src) == Node("s", (Leaf(-3), Node("t", ())))

    def test_trailing_garbage(self):
        with pytest.raises(ParseError) as info:
            parse_ground_term("a[] b[]")
        assert info.value.location == Location(1, 5)

    def test_unterminated_comment(self):
        with pytest.raises(ParseError):
            parse_ground_term("a[] /* open")

    @pytest.mark.parametrize(
        "src",
        ["", "s[", "s[a[],]", "(@builtin-int x)", "(@builtin-bool maybe)", "(@builtin-blob 1)", "s[]]"],
    )
    def test_malformed(self, src):
        with pytest.raises(ParseError):
            parse_ground_term(src)


class TestLiterals:
    @pytest.mark.parametrize(
        "src, value",
        [
            ("(@builtin-int 42)", 42),
            ("(@builtin-int -7)", -7),
            ("(@builtin-bool true)", True),
            ("(@builtin-bool false)", False),
            ('(@builtin-string "h\\u00e9")', "hé"),
            ("(@builtin-error)", ERROR),
            ('(@builtin-symbol "var")', SymbolValue("var")),
            ("(@builtin-list [(@builtin-int 1),a[]])", ListValue([Leaf(1), Node("a", ())])),
            ("(@builtin-dict [x[]=>(@builtin-int 1)])", DictValue([(Node("x", ()), Leaf(1))])),
            ("[(@builtin-int 5)]", 5),
        ],
    )
    def test_forms(self, src, value):
        leaf = parse_ground_term(src)
        assert leaf == Leaf(value)
        assert parse_ground_term(print_term(leaf)) == leaf

    def test_duplicate_dict_key(self):
        with pytest.raises(ParseError):
            parse_ground_term("(@builtin-dict [a[]=>b[],a[]=>c[]])")


class TestExpressions:
    def test_call_with_literal_and_quote(self):
        e = parse_expression("z.lt([(@builtin-int 0)], M)")
        assert e == Call("z.lt", [Lit(Leaf(0)), Variable("M")])

    def test_quoted_term(self):
        assert parse_expression("[var[]]") == Lit(Node("var", ()))

    def test_quoted_term_must_be_ground(self):
        with pytest.raises(ParseError):
            parse_expression("[var[X]]")

    def test_parenthesised(self):
        assert parse_expression("(bool.true())") == Call("bool.true", [])

    def test_eterm_distinguishes_nodes_and_calls(self):
        t = parse_eterm("state[z.minus(M, [(@builtin-int 1)]), N, s]")
        assert t == Node(
            "state",
            (Leaf(Call("z.minus", [Variable("M"), Lit(Leaf(1))])), Leaf(Variable("N")), Node("s", ())),
        )

    def test_printing_quotes_nodes(self):
        assert print_expr(Lit(Node("var", ()))) == "[var[]]"
        assert print_expr(Lit(Leaf(1))) == "(@builtin-int 1)"

    @given(expressions)
    def test_expression_round_trip(self, e):
        assert parse_expression(print_expr(e)) == e

    @given(expression_terms)
    def test_eterm_round_trip(self, t):
        assert parse_eterm(print_term(t)) == t


def test_symbolic_pattern():
    assert parse_term("plus[X, (@builtin-int 1)]") == Node("plus", (Leaf(Variable("X")), Leaf(1)))
