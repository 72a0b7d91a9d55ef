import pytest

from courseflow.errors import ScriptError
from courseflow.script import tokenize


def texts(source):
    return [(t.kind, t.text) for t in tokenize(source)]


def test_fig4_guard_tokens():
    toks = tokenize("!Global['initializedAlready']")
    assert [t.text for t in toks] == ["!", "Global", "[", "'initializedAlready'", "]"]
    assert toks[3].kind == "string"
    assert toks[3].value == "initializedAlready"


def test_empty_source():
    assert tokenize("") == []


def test_numbers():
    toks = tokenize("1 2.5 007")
    assert [t.value for t in toks] == [1.0, 2.5, 7.0]


def test_keywords_vs_idents():
    toks = texts("var varx function if iffy")
    assert toks == [
        ("keyword", "var"), ("ident", "varx"), ("keyword", "function"),
        ("keyword", "if"), ("ident", "iffy"),
    ]


def test_string_escapes():
    toks = tokenize(r"'a\nb\t\'q\'' " + '"d\\\\e"')
    assert toks[0].value == "a\nb\t'q'"
    assert toks[1].value == "d\\e"


def test_comments_skipped():
    assert texts("1 // line\n2 /* block\nmore */ 3") == [
        ("number", "1"), ("number", "2"), ("number", "3"),
    ]


def test_two_char_punct_wins():
    assert [t.text for t in tokenize("a<=b==c&&d")] == ["a", "<=", "b", "==", "c", "&&", "d"]


def test_positions():
    toks = tokenize("a\n  b")
    assert (toks[0].line, toks[0].col) == (1, 1)
    assert (toks[1].line, toks[1].col) == (2, 3)


@pytest.mark.parametrize("bad,phase", [
    ("'abc", "lex"),
    ('"abc\ndef"', "lex"),   # strings do not span lines
    ("/* never closed", "lex"),
    ("'bad \\x escape'", "lex"),
    ("a # b", "lex"),
])
def test_lex_errors(bad, phase):
    with pytest.raises(ScriptError) as exc:
        tokenize(bad)
    assert exc.value.phase == phase
    assert exc.value.line >= 1


def test_unterminated_string_position():
    with pytest.raises(ScriptError) as exc:
        tokenize("'abc")
    assert exc.value.line == 1
