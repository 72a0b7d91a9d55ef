"""Recursive-descent parser for the action language.

Statements: var, expression statement, block, if/else, while, return.
Semicolons are mandatory; there is no automatic insertion. Precedence,
lowest to highest: assignment, ||, &&, equality, relational, additive,
multiplicative, unary, postfix call/index/member.
"""

from ..errors import ScriptError
from . import ast
from .lexer import Token, tokenize

_EOF = Token("eof", "", None, 0, 0)


class _Parser:
    def __init__(self, tokens):
        self.tokens = tokens
        self.pos = 0

    # --- token helpers ---

    def peek(self):
        if self.pos < len(self.tokens):
            return self.tokens[self.pos]
        if self.tokens:
            last = self.tokens[-1]
            return Token("eof", "", None, last.line, last.col + len(last.text))
        return _EOF

    def next(self):
        tok = self.peek()
        self.pos += 1
        return tok

    def at(self, kind, text=None):
        tok = self.peek()
        return tok.kind == kind and (text is None or tok.text == text)

    def at_punct(self, text):
        return self.at("punct", text)

    def match(self, kind, text=None):
        if self.at(kind, text):
            return self.next()
        return None

    def expect(self, kind, text=None, what=None):
        tok = self.peek()
        if tok.kind == kind and (text is None or tok.text == text):
            return self.next()
        expected = what or text or kind
        found = tok.text or "end of input"
        raise ScriptError("parse", f"expected {expected}, found {found!r}", tok.line, tok.col)

    def end_statement(self):
        """Consume the statement's ';'. The very last statement of a program
        may leave it off (handler attributes are commonly single calls);
        inside a block it stays mandatory."""
        if self.at_punct(";"):
            self.next()
            return
        if self.at("eof"):
            return
        tok = self.peek()
        raise ScriptError("parse", f"expected ;, found {tok.text!r}", tok.line, tok.col)

    # --- statements ---

    def program(self):
        first = self.peek()
        stmts = []
        while not self.at("eof"):
            stmts.append(self.statement())
        return ast.Program(first.line, first.col, stmts)

    def statement(self):
        tok = self.peek()
        if self.at("keyword", "var"):
            return self.var_decl()
        if self.at("keyword", "if"):
            return self.if_stmt()
        if self.at("keyword", "while"):
            return self.while_stmt()
        if self.at("keyword", "return"):
            return self.return_stmt()
        if self.at_punct("{"):
            return self.block()
        expr = self.expression()
        self.end_statement()
        return ast.ExprStmt(tok.line, tok.col, expr)

    def var_decl(self):
        tok = self.expect("keyword", "var")
        name = self.expect("ident", what="variable name")
        init = None
        if self.match("punct", "="):
            init = self.expression()
        self.end_statement()
        return ast.VarDecl(tok.line, tok.col, name.text, init)

    def block(self):
        tok = self.expect("punct", "{")
        stmts = []
        while not self.at_punct("}"):
            if self.at("eof"):
                raise ScriptError("parse", "unterminated block", tok.line, tok.col)
            stmts.append(self.statement())
        self.expect("punct", "}")
        return ast.Block(tok.line, tok.col, stmts)

    def if_stmt(self):
        tok = self.expect("keyword", "if")
        self.expect("punct", "(")
        cond = self.expression()
        self.expect("punct", ")")
        then = self.block()
        orelse = None
        if self.match("keyword", "else"):
            orelse = self.if_stmt() if self.at("keyword", "if") else self.block()
        return ast.If(tok.line, tok.col, cond, then, orelse)

    def while_stmt(self):
        tok = self.expect("keyword", "while")
        self.expect("punct", "(")
        cond = self.expression()
        self.expect("punct", ")")
        body = self.block()
        return ast.While(tok.line, tok.col, cond, body)

    def return_stmt(self):
        tok = self.expect("keyword", "return")
        value = None
        if not self.at_punct(";") and not self.at("eof"):
            value = self.expression()
        self.end_statement()
        return ast.Return(tok.line, tok.col, value)

    # --- expressions ---

    def expression(self):
        return self.assignment()

    def assignment(self):
        left = self.or_expr()
        if self.at_punct("="):
            eq = self.next()
            if not isinstance(left, (ast.Ident, ast.Index)):
                raise ScriptError("parse", "invalid assignment target", eq.line, eq.col)
            value = self.assignment()  # right-associative
            return ast.Assign(eq.line, eq.col, left, value)
        return left

    def _binary(self, sub, ops):
        left = sub()
        while self.peek().kind == "punct" and self.peek().text in ops:
            op = self.next()
            right = sub()
            left = ast.Binary(op.line, op.col, op.text, left, right)
        return left

    def or_expr(self):
        return self._binary(self.and_expr, ("||",))

    def and_expr(self):
        return self._binary(self.equality, ("&&",))

    def equality(self):
        return self._binary(self.relational, ("==", "!="))

    def relational(self):
        return self._binary(self.additive, ("<", "<=", ">", ">="))

    def additive(self):
        return self._binary(self.multiplicative, ("+", "-"))

    def multiplicative(self):
        return self._binary(self.unary, ("*", "/", "%"))

    def unary(self):
        if self.at_punct("!") or self.at_punct("-"):
            op = self.next()
            return ast.Unary(op.line, op.col, op.text, self.unary())
        return self.postfix()

    def postfix(self):
        expr = self.primary()
        while True:
            if self.at_punct("("):
                lp = self.next()
                args = []
                if not self.at_punct(")"):
                    args.append(self.expression())
                    while self.match("punct", ","):
                        args.append(self.expression())
                self.expect("punct", ")")
                expr = ast.Call(lp.line, lp.col, expr, args)
            elif self.at_punct("["):
                lb = self.next()
                key = self.expression()
                self.expect("punct", "]")
                expr = ast.Index(lb.line, lb.col, expr, key)
            elif self.at_punct("."):
                dot = self.next()
                name = self.expect("ident", what="member name")
                key = ast.Literal(name.line, name.col, name.text)
                expr = ast.Index(dot.line, dot.col, expr, key, from_member=True)
            else:
                return expr

    def primary(self):
        tok = self.peek()
        if tok.kind == "number" or tok.kind == "string":
            self.next()
            return ast.Literal(tok.line, tok.col, tok.value)
        if tok.kind == "keyword":
            if tok.text == "null":
                self.next()
                return ast.Literal(tok.line, tok.col, None)
            if tok.text == "true":
                self.next()
                return ast.Literal(tok.line, tok.col, True)
            if tok.text == "false":
                self.next()
                return ast.Literal(tok.line, tok.col, False)
            if tok.text == "Global":
                self.next()
                return ast.GlobalExpr(tok.line, tok.col)
            if tok.text == "function":
                return self.func_lit()
        if tok.kind == "ident":
            self.next()
            return ast.Ident(tok.line, tok.col, tok.text)
        if self.at_punct("("):
            self.next()
            expr = self.expression()
            self.expect("punct", ")")
            return expr
        if self.at_punct("["):
            return self.list_lit()
        if self.at_punct("{"):
            return self.map_lit()
        found = tok.text or "end of input"
        raise ScriptError("parse", f"unexpected {found!r}", tok.line, tok.col)

    def func_lit(self):
        tok = self.expect("keyword", "function")
        self.expect("punct", "(")
        params = []
        if not self.at_punct(")"):
            params.append(self.expect("ident", what="parameter name").text)
            while self.match("punct", ","):
                params.append(self.expect("ident", what="parameter name").text)
        self.expect("punct", ")")
        if len(set(params)) != len(params):
            raise ScriptError("parse", "duplicate parameter name", tok.line, tok.col)
        body = self.block()
        return ast.FuncLit(tok.line, tok.col, params, body)

    def list_lit(self):
        tok = self.expect("punct", "[")
        items = []
        if not self.at_punct("]"):
            items.append(self.expression())
            while self.match("punct", ","):
                items.append(self.expression())
        self.expect("punct", "]")
        return ast.ListLit(tok.line, tok.col, items)

    def map_lit(self):
        tok = self.expect("punct", "{")
        entries = []
        seen = set()
        if not self.at_punct("}"):
            while True:
                key_tok = self.peek()
                if key_tok.kind in ("ident", "string"):
                    self.next()
                    key = key_tok.value if key_tok.kind == "string" else key_tok.text
                elif key_tok.kind == "keyword":
                    # allow keyword-looking map keys such as {if: 1}
                    self.next()
                    key = key_tok.text
                else:
                    raise ScriptError("parse", "expected map key", key_tok.line, key_tok.col)
                if key in seen:
                    raise ScriptError("parse", f"duplicate map key {key!r}", key_tok.line, key_tok.col)
                seen.add(key)
                self.expect("punct", ":")
                entries.append((key, self.expression()))
                if not self.match("punct", ","):
                    break
        self.expect("punct", "}")
        return ast.MapLit(tok.line, tok.col, entries)


def parse_program(source):
    """Parse a full program (sequence of statements)."""
    return _Parser(tokenize(source)).program()


def parse_expression(source):
    """Parse a single expression, e.g. the text of an includeIf attribute."""
    p = _Parser(tokenize(source))
    expr = p.expression()
    tok = p.peek()
    if tok.kind != "eof":
        raise ScriptError("parse", f"unexpected {tok.text!r} after expression", tok.line, tok.col)
    return expr
