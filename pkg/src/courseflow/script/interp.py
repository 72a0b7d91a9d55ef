"""Tree-walking evaluator for the action language.

Identifier resolution order: local scope chain, then host builtins,
then error. The shared data space is only reachable through the Global
keyword. Every program run gets a fresh step budget; runaway loops trip
StepBudgetExceeded instead of hanging the session.
"""

import math

from ..errors import ScriptError, StepBudgetExceeded
from . import ast
from .values import (
    Closure,
    HostFn,
    format_value,
    is_number,
    truthy,
    value_equals,
)

DEFAULT_STEP_BUDGET = 1_000_000


class Env:
    """One lexical scope; var declares here, assignment walks the chain."""

    __slots__ = ("vars", "parent")

    def __init__(self, parent=None):
        self.vars = {}
        self.parent = parent

    def declare(self, name, value):
        self.vars[name] = value

    def lookup(self, name):
        env = self
        while env is not None:
            if name in env.vars:
                return True, env.vars[name]
            env = env.parent
        return False, None

    def assign(self, name, value):
        env = self
        while env is not None:
            if name in env.vars:
                env.vars[name] = value
                return True
            env = env.parent
        return False


class _ReturnSignal(Exception):
    def __init__(self, value):
        self.value = value


class Completion:
    """Outcome of a program run: normal or an explicit top-level return."""

    def __init__(self, returned=False, value=None):
        self.returned = returned
        self.value = value


class Interpreter:
    def __init__(self, globals_, host=None, step_budget=DEFAULT_STEP_BUDGET):
        self.globals = globals_
        self.host = host or {}
        self.step_budget = step_budget
        self._steps = 0

    # --- entry points ---

    def exec_program(self, program, locals_=None):
        """Run a program; returns a Completion. One fresh budget per run."""
        self._steps = 0
        env = locals_ if locals_ is not None else Env()
        try:
            for stmt in program.statements:
                self._exec(stmt, env)
        except _ReturnSignal as sig:
            return Completion(returned=True, value=sig.value)
        return Completion()

    def eval_expr(self, expr, locals_=None):
        """Evaluate a single expression; fresh budget per call."""
        self._steps = 0
        env = locals_ if locals_ is not None else Env()
        return self._eval(expr, env)

    def call_function(self, fn, args, line=0, col=0):
        """Invoke a script or host function from Python; fresh budget."""
        self._steps = 0
        return self._call(fn, args, line, col)

    # --- statements ---

    def _tick(self, node):
        self._steps += 1
        if self._steps > self.step_budget:
            raise StepBudgetExceeded(self.step_budget, node.line, node.col)

    def _exec(self, stmt, env):
        self._tick(stmt)
        if isinstance(stmt, ast.VarDecl):
            value = self._eval(stmt.init, env) if stmt.init is not None else None
            env.declare(stmt.name, value)
        elif isinstance(stmt, ast.ExprStmt):
            self._eval(stmt.expr, env)
        elif isinstance(stmt, ast.Block):
            inner = Env(env)
            for s in stmt.statements:
                self._exec(s, inner)
        elif isinstance(stmt, ast.If):
            if truthy(self._eval(stmt.cond, env)):
                self._exec(stmt.then, env)
            elif stmt.orelse is not None:
                self._exec(stmt.orelse, env)
        elif isinstance(stmt, ast.While):
            while truthy(self._eval(stmt.cond, env)):
                self._tick(stmt)
                self._exec(stmt.body, env)
        elif isinstance(stmt, ast.Return):
            value = self._eval(stmt.value, env) if stmt.value is not None else None
            raise _ReturnSignal(value)
        else:
            raise ScriptError("runtime", f"unknown statement {type(stmt).__name__}", stmt.line, stmt.col)

    # --- expressions ---

    def _eval(self, expr, env):
        self._tick(expr)
        kind = type(expr)
        if kind is ast.Literal:
            return expr.value
        if kind is ast.Ident:
            found, value = env.lookup(expr.name)
            if found:
                return value
            if expr.name in self.host:
                return self.host[expr.name]
            raise ScriptError("runtime", f"undeclared identifier {expr.name!r}", expr.line, expr.col)
        if kind is ast.GlobalExpr:
            return self.globals
        if kind is ast.ListLit:
            return [self._eval(item, env) for item in expr.items]
        if kind is ast.MapLit:
            return {key: self._eval(value, env) for key, value in expr.entries}
        if kind is ast.FuncLit:
            return Closure(expr.params, expr.body, env)
        if kind is ast.Call:
            fn = self._eval(expr.callee, env)
            args = [self._eval(a, env) for a in expr.args]
            return self._call(fn, args, expr.line, expr.col)
        if kind is ast.Index:
            return self._read_index(expr, env)
        if kind is ast.Unary:
            return self._unary(expr, env)
        if kind is ast.Binary:
            return self._binary(expr, env)
        if kind is ast.Assign:
            return self._assign(expr, env)
        raise ScriptError("runtime", f"unknown expression {type(expr).__name__}", expr.line, expr.col)

    def _call(self, fn, args, line, col):
        if isinstance(fn, HostFn):
            if not (fn.min_arity <= len(args) <= fn.max_arity):
                want = (str(fn.min_arity) if fn.min_arity == fn.max_arity
                        else f"{fn.min_arity}..{fn.max_arity}")
                raise ScriptError(
                    "runtime",
                    f"{fn.name}() takes {want} argument(s), got {len(args)}",
                    line, col,
                )
            return fn.fn(*args)
        if isinstance(fn, Closure):
            if len(args) != len(fn.params):
                raise ScriptError(
                    "runtime",
                    f"function takes {len(fn.params)} argument(s), got {len(args)}",
                    line, col,
                )
            env = Env(fn.env)
            for name, value in zip(fn.params, args):
                env.declare(name, value)
            try:
                for stmt in fn.body.statements:
                    self._exec(stmt, env)
            except _ReturnSignal as sig:
                return sig.value
            return None
        raise ScriptError("runtime", f"{format_value(fn)} is not a function", line, col)

    def _read_index(self, expr, env):
        from .space import GlobalSpace

        base = self._eval(expr.obj, env)
        key = self._eval(expr.key, env)
        if isinstance(base, GlobalSpace):
            self._want_string_key(key, expr)
            return base.get(key)
        if isinstance(base, dict):
            self._want_string_key(key, expr)
            return base.get(key)
        if isinstance(base, list):
            return base[self._list_index(base, key, expr)]
        raise ScriptError("runtime", f"cannot index {format_value(base)}", expr.line, expr.col)

    def _want_string_key(self, key, expr):
        if not isinstance(key, str):
            raise ScriptError("runtime", "map keys are strings", expr.line, expr.col)

    def _list_index(self, seq, key, expr):
        if not is_number(key) or math.isnan(float(key)) or float(key) != int(key):
            raise ScriptError("runtime", "list index must be an integer", expr.line, expr.col)
        idx = int(key)
        if idx < 0 or idx >= len(seq):
            raise ScriptError("runtime", f"index {idx} out of range (length {len(seq)})",
                              expr.line, expr.col)
        return idx

    def _assign(self, expr, env):
        from .space import GlobalSpace

        value = self._eval(expr.value, env)
        target = expr.target
        if isinstance(target, ast.Ident):
            if env.assign(target.name, value):
                return value
            raise ScriptError(
                "runtime",
                f"cannot assign to undeclared identifier {target.name!r}",
                target.line, target.col,
            )
        # Index target
        base = self._eval(target.obj, env)
        key = self._eval(target.key, env)
        if isinstance(base, GlobalSpace):
            self._want_string_key(key, target)
            base.set(key, value)
            return value
        self.globals.record_mutation(f"<container write at {target.line}:{target.col}>")
        if isinstance(base, dict):
            self._want_string_key(key, target)
            base[key] = value
            return value
        if isinstance(base, list):
            base[self._list_index(base, key, target)] = value
            return value
        raise ScriptError("runtime", f"cannot assign into {format_value(base)}",
                          target.line, target.col)

    def _unary(self, expr, env):
        value = self._eval(expr.operand, env)
        if expr.op == "!":
            return not truthy(value)
        if expr.op == "-":
            if not is_number(value):
                raise ScriptError("runtime", "unary - needs a number", expr.line, expr.col)
            return -float(value)
        raise ScriptError("runtime", f"unknown unary operator {expr.op}", expr.line, expr.col)

    def _binary(self, expr, env):
        op = expr.op
        if op == "&&":
            left = self._eval(expr.left, env)
            if not truthy(left):
                return left
            return self._eval(expr.right, env)
        if op == "||":
            left = self._eval(expr.left, env)
            if truthy(left):
                return left
            return self._eval(expr.right, env)

        left = self._eval(expr.left, env)
        right = self._eval(expr.right, env)
        if op == "==":
            return value_equals(left, right)
        if op == "!=":
            return not value_equals(left, right)
        if op == "+":
            if isinstance(left, str) or isinstance(right, str):
                ls = left if isinstance(left, str) else format_value(left)
                rs = right if isinstance(right, str) else format_value(right)
                return ls + rs
            return self._arith(op, left, right, expr)
        if op in ("-", "*", "/", "%"):
            return self._arith(op, left, right, expr)
        if op in ("<", "<=", ">", ">="):
            return self._compare(op, left, right, expr)
        raise ScriptError("runtime", f"unknown operator {op}", expr.line, expr.col)

    def _arith(self, op, left, right, expr):
        if not (is_number(left) and is_number(right)):
            raise ScriptError(
                "runtime",
                f"arithmetic {op} needs numbers, got {format_value(left)} and {format_value(right)}",
                expr.line, expr.col,
            )
        a, b = float(left), float(right)
        if op == "+":
            return a + b
        if op == "-":
            return a - b
        if op == "*":
            return a * b
        if op == "/":
            if b == 0.0:
                return math.nan  # division by zero never traps
            return a / b
        if op == "%":
            if b == 0.0:
                return math.nan
            return math.fmod(a, b)
        raise AssertionError(op)

    def _compare(self, op, left, right, expr):
        if is_number(left) and is_number(right):
            a, b = float(left), float(right)
        elif isinstance(left, str) and isinstance(right, str):
            a, b = left, right
        else:
            raise ScriptError(
                "runtime",
                f"comparison {op} needs two numbers or two strings",
                expr.line, expr.col,
            )
        if op == "<":
            return a < b
        if op == "<=":
            return a <= b
        if op == ">":
            return a > b
        return a >= b
