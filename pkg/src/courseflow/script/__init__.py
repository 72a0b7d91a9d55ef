"""Embedded action language: lexer, parser, evaluator and the global data space."""

from .values import Closure, HostFn, truthy, value_equals, format_value
from .space import GlobalSpace
from .lexer import tokenize
from .parser import parse_program, parse_expression
from .interp import Interpreter
from .snapshot import snapshot_global, restore_global

__all__ = [
    "Closure",
    "HostFn",
    "truthy",
    "value_equals",
    "format_value",
    "GlobalSpace",
    "tokenize",
    "parse_program",
    "parse_expression",
    "Interpreter",
    "snapshot_global",
    "restore_global",
]
