"""Hypothesis strategies shared by the round-trip property tests."""

from hypothesis import strategies as st

from daoforge.ast import (
    RESERVED,
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
)

_HEAD = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ_"
identifiers = st.builds(
    lambda h, t: h + t, st.sampled_from(_HEAD), st.text(_HEAD + "0123456789", max_size=8)
).filter(lambda s: s not in RESERVED)
addresses = st.binary(min_size=20, max_size=20).map(lambda b: Value("address", b))

widths = st.sampled_from(range(8, 257, 8))


@st.composite
def uints(draw):
    bits = draw(widths)
    return Value(f"uint{bits}", draw(st.integers(0, (1 << bits) - 1)))


@st.composite
def ints(draw):
    bits = draw(widths)
    return Value(f"int{bits}", draw(st.integers(-(1 << (bits - 1)), (1 << (bits - 1)) - 1)))


@st.composite
def fixed_bytes(draw):
    n = draw(st.integers(1, 32))
    return Value(f"bytes{n}", draw(st.binary(min_size=n, max_size=n)))


static_values = st.one_of(
    addresses,
    uints(),
    ints(),
    st.booleans().map(lambda b: Value("bool", b)),
    fixed_bytes(),
)
dynamic_values = st.one_of(
    st.binary(max_size=80).map(lambda b: Value("bytes", b)),
    st.text(max_size=40).map(lambda t: Value("string", t)),
)
abi_values = st.one_of(static_values, dynamic_values)

# only kinds the parser produces from literals survive a print/parse cycle
literal_constants = st.one_of(
    addresses,
    st.integers(0, (1 << 256) - 1).map(lambda n: Value("uint256", n)),
    st.integers(-(1 << 255), -1).map(lambda n: Value("int256", n)),
    st.booleans().map(lambda b: Value("bool", b)),
    st.text(max_size=20).map(lambda t: Value("string", t)),
).map(Constant)

leaf_exprs = st.one_of(
    identifiers.map(Identifier),
    literal_constants,
    st.integers(1, 10**12).map(NetworkLit),
    st.lists(addresses, min_size=1, max_size=3).map(lambda a: ProtocolLit(tuple(a))),
)


@st.composite
def objects(draw, children):
    keys = draw(st.lists(identifiers, max_size=4, unique=True))
    return ObjectLit(tuple((k, draw(children)) for k in keys))


exprs = st.recursive(leaf_exprs, lambda children: objects(children), max_leaves=6)

statements = st.one_of(
    st.builds(Assignment, identifiers, exprs),
    st.builds(ExpressionStmt, exprs),
    st.builds(
        Transaction,
        identifiers,
        identifiers,
        identifiers,
        st.lists(exprs, max_size=4).map(tuple),
    ),
)

programs = st.lists(statements, max_size=8).map(lambda s: Program(tuple(s)))
