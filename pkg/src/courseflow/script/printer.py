"""Pretty-printer: turns an AST back into parseable source.

Output is fully parenthesized inside expressions, which keeps the
printer trivially correct; print -> parse -> print reaches a fixpoint.
"""

from . import ast
from .values import format_number, _quote


def print_program(program, indent=""):
    return "".join(_stmt(s, indent) for s in program.statements)


def _stmt(stmt, indent):
    if isinstance(stmt, ast.VarDecl):
        if stmt.init is None:
            return f"{indent}var {stmt.name};\n"
        return f"{indent}var {stmt.name} = {_expr(stmt.init)};\n"
    if isinstance(stmt, ast.ExprStmt):
        text = _expr(stmt.expr)
        if text.startswith("{"):
            # a statement starting with { would parse as a block
            text = f"({text})"
        return f"{indent}{text};\n"
    if isinstance(stmt, ast.Block):
        return f"{indent}{_block(stmt, indent)}\n"
    if isinstance(stmt, ast.If):
        out = f"{indent}if ({_expr(stmt.cond)}) {_block(stmt.then, indent)}"
        if isinstance(stmt.orelse, ast.If):
            out += " else " + _stmt(stmt.orelse, indent).lstrip()
            return out
        if stmt.orelse is not None:
            out += f" else {_block(stmt.orelse, indent)}"
        return out + "\n"
    if isinstance(stmt, ast.While):
        return f"{indent}while ({_expr(stmt.cond)}) {_block(stmt.body, indent)}\n"
    if isinstance(stmt, ast.Return):
        if stmt.value is None:
            return f"{indent}return;\n"
        return f"{indent}return {_expr(stmt.value)};\n"
    raise TypeError(f"unknown statement {type(stmt).__name__}")


def _block(block, indent):
    if not block.statements:
        return "{ }"
    inner = "".join(_stmt(s, indent + "  ") for s in block.statements)
    return "{\n" + inner + indent + "}"


def _expr(expr):
    if isinstance(expr, ast.Literal):
        v = expr.value
        if v is None:
            return "null"
        if isinstance(v, bool):
            return "true" if v else "false"
        if isinstance(v, str):
            return _quote(v)
        return format_number(v)
    if isinstance(expr, ast.Ident):
        return expr.name
    if isinstance(expr, ast.GlobalExpr):
        return "Global"
    if isinstance(expr, ast.ListLit):
        return "[" + ", ".join(_expr(i) for i in expr.items) + "]"
    if isinstance(expr, ast.MapLit):
        return "{" + ", ".join(f"{_quote(k)}: {_expr(v)}" for k, v in expr.entries) + "}"
    if isinstance(expr, ast.FuncLit):
        return f"function({', '.join(expr.params)}) {_block(expr.body, '')}"
    if isinstance(expr, ast.Call):
        return f"{_expr(expr.callee)}({', '.join(_expr(a) for a in expr.args)})"
    if isinstance(expr, ast.Index):
        if expr.from_member and isinstance(expr.key, ast.Literal):
            return f"{_expr(expr.obj)}.{expr.key.value}"
        return f"{_expr(expr.obj)}[{_expr(expr.key)}]"
    if isinstance(expr, ast.Unary):
        return f"{expr.op}({_expr(expr.operand)})"
    if isinstance(expr, ast.Binary):
        return f"({_expr(expr.left)} {expr.op} {_expr(expr.right)})"
    if isinstance(expr, ast.Assign):
        return f"({_expr(expr.target)} = {_expr(expr.value)})"
    raise TypeError(f"unknown expression {type(expr).__name__}")
