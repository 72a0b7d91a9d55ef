import pytest
from hypothesis import given, settings, strategies as st

from courseflow.errors import ScriptError
from courseflow.script import parse_expression, parse_program
from courseflow.script import ast as A
from courseflow.script.printer import print_program


def test_fig4_oncomplete_shape():
    prog = parse_program("Global['onSurveyComplete']({})")
    assert len(prog.statements) == 1
    call = prog.statements[0].expr
    assert isinstance(call, A.Call)
    assert isinstance(call.callee, A.Index)
    assert isinstance(call.callee.obj, A.GlobalExpr)
    assert call.callee.key.value == "onSurveyComplete"
    assert len(call.args) == 1
    assert isinstance(call.args[0], A.MapLit)
    assert call.args[0].entries == []


def test_two_statements():
    prog = parse_program("var x = 1; x = x + 2;")
    assert len(prog.statements) == 2
    assert isinstance(prog.statements[0], A.VarDecl)
    assert isinstance(prog.statements[1], A.ExprStmt)


def test_missing_semicolon_in_block_is_an_error():
    with pytest.raises(ScriptError) as exc:
        parse_program("if (x) { y = 1 }")
    assert exc.value.phase == "parse"


def test_precedence_tree():
    expr = parse_expression("1 + 2 * 3 == 7 && !false || x < 2")
    # || at the top, && on its left
    assert isinstance(expr, A.Binary) and expr.op == "||"
    assert expr.left.op == "&&"
    assert expr.left.left.op == "=="
    assert expr.left.left.left.op == "+"
    assert expr.left.left.left.right.op == "*"


def test_assignment_right_associative():
    expr = parse_expression("a = b = 1")
    assert isinstance(expr, A.Assign)
    assert isinstance(expr.value, A.Assign)


def test_invalid_assignment_target():
    with pytest.raises(ScriptError):
        parse_expression("1 = 2")
    with pytest.raises(ScriptError):
        parse_expression("f() = 2")


def test_member_sugar_is_index():
    expr = parse_expression("a.b.c")
    assert isinstance(expr, A.Index)
    assert expr.key.value == "c"
    assert expr.obj.key.value == "b"


def test_else_if_chain():
    prog = parse_program("if (a) { b(); } else if (c) { d(); } else { e(); }")
    stmt = prog.statements[0]
    assert isinstance(stmt.orelse, A.If)
    assert isinstance(stmt.orelse.orelse, A.Block)


def test_function_literal_params():
    expr = parse_expression("function(a, b) { return a; }")
    assert expr.params == ["a", "b"]
    with pytest.raises(ScriptError):
        parse_expression("function(a, a) { return a; }")


def test_expression_entry_rejects_trailing_tokens():
    with pytest.raises(ScriptError):
        parse_expression("1 + 2; 3")


@pytest.mark.parametrize("bad", [
    "1 +",
    "var 1 = 2;",
    "while (x) y = 1;",       # body must be a block
    "if (x) y();",
    "{a: 1, a: 2};",
    "[1, 2",
    "return 1",               # inside nothing: fine at top level...
])
def test_parse_errors(bad):
    if bad == "return 1":
        parse_program(bad)  # final semicolon omitted at end of input is allowed
        return
    with pytest.raises(ScriptError):
        parse_program(bad)


# --- print -> parse fixpoint property ---

_names = st.sampled_from(["x", "y", "foo", "n2"])
_keys = st.sampled_from(["a", "b", "key", "if"])

_literal = st.one_of(
    st.none(),
    st.booleans(),
    st.floats(allow_nan=False, allow_infinity=False, min_value=-1e6, max_value=1e6),
    st.text(alphabet="ab\n\t'\\ c", max_size=6),
).map(lambda v: A.Literal(0, 0, float(v) if isinstance(v, float) else v))


def _exprs(depth):
    base = st.one_of(
        _literal,
        _names.map(lambda n: A.Ident(0, 0, n)),
        st.just(A.GlobalExpr(0, 0)),
    )
    if depth <= 0:
        return base
    sub = _exprs(depth - 1)
    return st.one_of(
        base,
        st.builds(lambda a, b, op: A.Binary(0, 0, op, a, b), sub, sub,
                  st.sampled_from(["+", "-", "*", "==", "&&", "||", "<"])),
        st.builds(lambda a, op: A.Unary(0, 0, op, a), sub, st.sampled_from(["!", "-"])),
        st.lists(sub, max_size=3).map(lambda items: A.ListLit(0, 0, items)),
        st.lists(st.tuples(_keys, sub), max_size=3, unique_by=lambda kv: kv[0])
          .map(lambda entries: A.MapLit(0, 0, list(entries))),
        st.builds(lambda obj, key: A.Index(0, 0, obj, key), sub, sub),
        st.builds(lambda callee, args: A.Call(0, 0, callee, args), sub,
                  st.lists(sub, max_size=2)),
        st.builds(lambda tgt, val: A.Assign(0, 0, A.Ident(0, 0, tgt), val), _names, sub),
    )


def _stmts(depth):
    expr = _exprs(2)
    base = st.one_of(
        expr.map(lambda e: A.ExprStmt(0, 0, e)),
        st.builds(lambda n, e: A.VarDecl(0, 0, n, e), _names, st.one_of(st.none(), expr)),
        st.one_of(st.none(), expr).map(lambda e: A.Return(0, 0, e)),
    )
    if depth <= 0:
        return base
    sub = _stmts(depth - 1)
    block = st.lists(sub, max_size=3).map(lambda s: A.Block(0, 0, s))
    return st.one_of(
        base,
        st.builds(lambda c, t, o: A.If(0, 0, c, t, o), expr, block,
                  st.one_of(st.none(), block)),
        st.builds(lambda c, b: A.While(0, 0, c, b), expr, block),
        block,
    )


@settings(max_examples=120, deadline=None)
@given(st.lists(_stmts(2), max_size=4).map(lambda s: A.Program(0, 0, s)))
def test_print_parse_fixpoint(program):
    text = print_program(program)
    reparsed = parse_program(text)
    assert print_program(reparsed) == text
    assert reparsed == parse_program(print_program(reparsed))
