"""AST node types for the action language."""

from dataclasses import dataclass, field


@dataclass
class Node:
    line: int = field(default=0, compare=False)
    col: int = field(default=0, compare=False)


# --- statements ---

@dataclass
class Program(Node):
    statements: list = field(default_factory=list)


@dataclass
class VarDecl(Node):
    name: str = ""
    init: object = None  # expression or None -> null


@dataclass
class ExprStmt(Node):
    expr: object = None


@dataclass
class Block(Node):
    statements: list = field(default_factory=list)


@dataclass
class If(Node):
    cond: object = None
    then: object = None    # Block
    orelse: object = None  # Block | If | None


@dataclass
class While(Node):
    cond: object = None
    body: object = None  # Block


@dataclass
class Return(Node):
    value: object = None  # expression or None


# --- expressions ---

@dataclass
class Literal(Node):
    value: object = None  # None | bool | float | str


@dataclass
class Ident(Node):
    name: str = ""


@dataclass
class GlobalExpr(Node):
    pass


@dataclass
class ListLit(Node):
    items: list = field(default_factory=list)


@dataclass
class MapLit(Node):
    entries: list = field(default_factory=list)  # list of (key str, expr)


@dataclass
class FuncLit(Node):
    params: list = field(default_factory=list)
    body: object = None  # Block


@dataclass
class Call(Node):
    callee: object = None
    args: list = field(default_factory=list)


@dataclass
class Index(Node):
    obj: object = None
    key: object = None
    # True when written as a.b; affects pretty-printing only
    from_member: bool = field(default=False, compare=False)


@dataclass
class Unary(Node):
    op: str = ""
    operand: object = None


@dataclass
class Binary(Node):
    op: str = ""
    left: object = None
    right: object = None


@dataclass
class Assign(Node):
    target: object = None  # Ident | Index
    value: object = None
