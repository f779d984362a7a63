import pytest
from hypothesis import given, settings

from daoforge.ast import (
    Assignment,
    Constant,
    ExpressionStmt,
    Identifier,
    NetworkLit,
    ObjectLit,
    Program,
    ProtocolLit,
    Transaction,
    Value,
    pretty_print,
)
from daoforge.errors import LexError, ParseError
from daoforge.parser import parse, tokenize

from strategies import programs


def kinds(src):
    return [t.kind for t in tokenize(src)]


def test_tokenize_network():
    assert kinds("network{42161}") == ["keyword", "lbrace", "integer", "rbrace"]


def test_comment_line_yields_newline_only():
    assert kinds("# assign the address of wstETH to a variable\n") == ["newline"]


def test_hex_length_decides_address():
    assert kinds("0x7f39c581f595b53c5cb19bd0b3f8da6c935e2ca0") == ["address-literal"]
    assert kinds("0x1388") == ["integer"]
    assert kinds("0x" + "1" * 41) == ["integer"]


def test_token_positions_are_one_based():
    toks = tokenize("a <- 1\n  b")
    assert [(t.lexeme, t.position) for t in toks] == [
        ("a", (1, 1)), ("<-", (1, 3)), ("1", (1, 6)), ("\n", (1, 7)), ("b", (2, 3)),
    ]


@pytest.mark.parametrize("src", ["", "   ", "# only a comment", "\n\n# c\n  \t\n"])
def test_comment_and_whitespace_inputs(src):
    assert set(kinds(src)) <= {"newline"}
    assert parse(src) == Program()


@pytest.mark.parametrize("src,pos", [("x <- @", (1, 6)), ('s <- "open', (1, 6)), ("x <- 0x", (1, 6))])
def test_lex_errors(src, pos):
    with pytest.raises(LexError) as info:
        tokenize(src)
    assert info.value.diagnostic.position == pos


def test_example_program(wsteth_source):
    prog = parse(wsteth_source)
    assert [type(s).__name__ for s in prog.statements] == ["Assignment"] * 4 + ["Transaction"]
    arb = prog.statements[2]
    assert arb == Assignment("arb", NetworkLit(42161))
    assert prog.statements[3].expr == ProtocolLit(
        (Value.address("0x316f9708bB98af7dA9c68C1C3b5e79039cD336E3"),)
    )


def test_example_transaction():
    prog = parse("arb(compV3:update_supplyCap(collateral,market,5000));")
    assert prog.statements == (
        Transaction(
            "arb",
            "compV3",
            "update_supplyCap",
            (Identifier("collateral"), Identifier("market"), Constant(Value("uint256", 5000))),
        ),
    )


def test_missing_expression():
    with pytest.raises(ParseError) as info:
        parse("x <- ;")
    d = info.value.diagnostic
    assert d.position == (1, 6)
    assert d.expected == ("expression",)


def test_grouped_actions_share_network():
    prog = parse("arb(c:a(1), c:b(x,\n  y));")
    assert prog.statements == (
        Transaction("arb", "c", "a", (Constant(Value("uint256", 1)),)),
        Transaction("arb", "c", "b", (Identifier("x"), Identifier("y"))),
    )


def test_object_and_expression_statement():
    prog = parse('o <- {cap: 5, name: "x"}\no')
    assert prog.statements[0].expr == ObjectLit(
        (("cap", Constant(Value("uint256", 5))), ("name", Constant(Value("string", "x"))))
    )
    assert prog.statements[1] == ExpressionStmt(Identifier("o"))


def test_negative_and_bool_literals():
    prog = parse("a <- -5; b <- true")
    assert prog.statements[0].expr == Constant(Value("int256", -5))
    assert prog.statements[1].expr == Constant(Value("bool", True))


def test_statement_positions():
    prog = parse("\n  x <- 1\narb(c:a())")
    assert [s.pos for s in prog.statements] == [(2, 3), (3, 1)]


@pytest.mark.parametrize(
    "src",
    [
        "x <- 1 2",
        "arb(c:a(1)",
        "arb(c a(1))",
        "x <- network{0}",
        "x <- protocol{}",
        "x <- {a: 1, a: 2}",
        "true <- 1",
        "x <- <-",
        "arb(c:true())",
        "x <- 999999999999999999999999999999999999999999999999999999999999999999999999999999999",
    ],
)
def test_syntax_errors_have_positions_in_bounds(src):
    with pytest.raises(ParseError) as info:
        parse(src)
    line, col = info.value.diagnostic.position
    lines = src.split("\n")
    assert 1 <= line <= len(lines)
    assert 1 <= col <= len(lines[line - 1]) + 1


def test_example_roundtrip(wsteth_source):
    prog = parse(wsteth_source)
    assert parse(pretty_print(prog)) == prog


@settings(max_examples=500, deadline=None)
@given(programs)
def test_print_parse_roundtrip(prog):
    assert parse(pretty_print(prog)) == prog
