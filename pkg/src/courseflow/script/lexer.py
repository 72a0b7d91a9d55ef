"""Tokenizer for the action language."""

from dataclasses import dataclass

from ..errors import ScriptError

KEYWORDS = {
    "var", "function", "return", "if", "else", "while",
    "true", "false", "null", "Global",
}

# longest first so '<=' wins over '<'
PUNCT = [
    "==", "!=", "<=", ">=", "&&", "||",
    "(", ")", "[", "]", "{", "}", ",", ";", ":", ".",
    "+", "-", "*", "/", "%", "<", ">", "!", "=",
]

_ESCAPES = {"\\": "\\", "'": "'", '"': '"', "n": "\n", "t": "\t"}


@dataclass
class Token:
    kind: str   # ident | keyword | number | string | punct | eof
    text: str
    value: object
    line: int
    col: int

    def __repr__(self):
        return f"{self.kind}({self.text!r})@{self.line}:{self.col}"


def _is_ident_start(ch):
    return ch.isalpha() or ch == "_"


def _is_ident_part(ch):
    return ch.isalnum() or ch == "_"


def tokenize(source):
    """Split source into tokens, skipping whitespace and // and /* */ comments.

    Raises ScriptError("lex", ...) on unterminated strings/comments and
    illegal characters.
    """
    tokens = []
    i, n = 0, len(source)
    line, col = 1, 1

    def err(msg, l=None, c=None):
        raise ScriptError("lex", msg, l if l is not None else line, c if c is not None else col)

    def bump(text):
        nonlocal line, col
        for ch in text:
            if ch == "\n":
                line += 1
                col = 1
            else:
                col += 1

    while i < n:
        ch = source[i]
        if ch in " \t\r\n":
            bump(ch)
            i += 1
            continue
        if source.startswith("//", i):
            j = source.find("\n", i)
            if j < 0:
                j = n
            bump(source[i:j])
            i = j
            continue
        if source.startswith("/*", i):
            j = source.find("*/", i + 2)
            if j < 0:
                err("unterminated comment")
            bump(source[i:j + 2])
            i = j + 2
            continue
        start_line, start_col = line, col
        if _is_ident_start(ch):
            j = i
            while j < n and _is_ident_part(source[j]):
                j += 1
            text = source[i:j]
            kind = "keyword" if text in KEYWORDS else "ident"
            tokens.append(Token(kind, text, text, start_line, start_col))
            bump(text)
            i = j
            continue
        if ch.isdigit():
            j = i
            while j < n and source[j].isdigit():
                j += 1
            if j < n and source[j] == "." and j + 1 < n and source[j + 1].isdigit():
                j += 1
                while j < n and source[j].isdigit():
                    j += 1
            text = source[i:j]
            tokens.append(Token("number", text, float(text), start_line, start_col))
            bump(text)
            i = j
            continue
        if ch in "'\"":
            quote = ch
            j = i + 1
            out = []
            while True:
                if j >= n or source[j] == "\n":
                    err("unterminated string", start_line, start_col)
                c = source[j]
                if c == quote:
                    j += 1
                    break
                if c == "\\":
                    if j + 1 >= n:
                        err("unterminated string", start_line, start_col)
                    esc = source[j + 1]
                    if esc not in _ESCAPES:
                        err(f"unknown escape \\{esc}", start_line, start_col)
                    out.append(_ESCAPES[esc])
                    j += 2
                    continue
                out.append(c)
                j += 1
            text = source[i:j]
            tokens.append(Token("string", text, "".join(out), start_line, start_col))
            bump(text)
            i = j
            continue
        for p in PUNCT:
            if source.startswith(p, i):
                tokens.append(Token("punct", p, p, start_line, start_col))
                bump(p)
                i += len(p)
                break
        else:
            err(f"illegal character {ch!r}")
    return tokens
