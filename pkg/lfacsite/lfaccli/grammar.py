"""
Грамматика языка выражений lfac (только ASCII).

    expr     := tensor (("+" | "-") tensor)*
    tensor   := product ("x" product)*
    product  := unary (("*" | "/") unary | "(" expr ")")*
    unary    := "-" unary | power
    power    := atom ("^" ["-"] integer)?
    atom     := call | "(" expr ")" | integer | name
    call     := name "(" [arg ("," arg)*] ")"
    arg      := identifier "=" expr | expr
    name     := identifier ("." identifier)*,  кроме "x"

Скобку можно умножать без "*": (1 - a*X)(1 - b*X).
"""
from dataclasses import dataclass

import pyparsing as pp

from .exceptions import DslSyntaxError

pp.ParserElement.enable_packrat()


@dataclass(frozen=True)
class Number:
    loc: int
    value: int


@dataclass(frozen=True)
class Name:
    loc: int
    name: str


@dataclass(frozen=True)
class Call:
    loc: int
    name: str
    args: tuple
    kwargs: tuple[tuple[str, object], ...] = ()


@dataclass(frozen=True)
class BinOp:
    loc: int
    op: str
    left: object
    right: object


@dataclass(frozen=True)
class Neg:
    loc: int
    operand: object


@dataclass(frozen=True)
class Power:
    loc: int
    base: object
    exponent: int


Expr = Number | Name | Call | BinOp | Neg | Power


@dataclass(frozen=True)
class _Op:
    loc: int
    symbol: str


@dataclass(frozen=True)
class _Kwarg:
    loc: int
    name: str
    value: object


def _fold(s, loc, toks):
    """Левоассоциативная свёртка [a, op, b, op, c] в дерево BinOp."""
    node = toks[0]
    for index in range(1, len(toks), 2):
        op = toks[index]
        node = BinOp(op.loc, op.symbol, node, toks[index + 1])
    return node


def _make_call(s, loc, toks):
    args, kwargs = [], []
    for item in toks[1]:
        if isinstance(item, _Kwarg):
            kwargs.append((item.name, item.value))
        elif kwargs:
            raise pp.ParseFatalException(s, loc, "positional argument after keyword argument")
        else:
            args.append(item)
    return Call(loc, toks[0], tuple(args), tuple(kwargs))


def _make_power(s, loc, toks):
    if len(toks) == 1:
        return toks[0]
    return Power(loc, toks[0], int(toks[1]))


def _operator(symbols: str):
    return pp.one_of(symbols).set_parse_action(lambda s, loc, toks: _Op(loc, toks[0]))


def _build_grammar() -> pp.ParserElement:
    expr = pp.Forward()
    unary = pp.Forward()

    lpar = pp.Suppress("(").set_name("'('")
    rpar = pp.Suppress(")").set_name("')'")
    # "x" - знак тензорного произведения, поэтому именем быть не может
    identifier = pp.Regex(
        r"(?!x(?![A-Za-z0-9_.]))[A-Za-z_][A-Za-z0-9_]*(?:\.[A-Za-z_][A-Za-z0-9_]*)*"
    ).set_name("name")
    number = pp.Regex(r"\d+").set_name("integer")
    number.set_parse_action(lambda s, loc, toks: Number(loc, int(toks[0])))
    name = identifier.copy().set_parse_action(lambda s, loc, toks: Name(loc, toks[0]))

    kwarg = (identifier + pp.Suppress("=") + expr).set_parse_action(
        lambda s, loc, toks: _Kwarg(loc, toks[0], toks[1])
    )
    arg = kwarg | expr
    call = (identifier + lpar - pp.Group(pp.Optional(pp.DelimitedList(arg)) + rpar)).set_parse_action(_make_call)
    paren = lpar - (expr + rpar)
    atom = call | paren | number | name

    exponent = pp.Regex(r"-?\d+").set_name("integer exponent")
    power = (atom + pp.Optional(pp.Suppress("^") - exponent)).set_parse_action(_make_power)
    unary <<= (pp.Literal("-") + unary).set_parse_action(lambda s, loc, toks: Neg(loc, toks[1])) | power

    implicit = (pp.FollowedBy("(") + unary).set_parse_action(lambda s, loc, toks: [_Op(loc, "*"), toks[0]])
    product = (unary + pp.ZeroOrMore(_operator("* /") + unary | implicit)).set_parse_action(_fold)
    tensor_op = pp.Keyword("x").set_parse_action(lambda s, loc, toks: _Op(loc, "x"))
    tensor = (product + pp.ZeroOrMore(tensor_op + product)).set_parse_action(_fold)
    expr <<= (tensor + pp.ZeroOrMore(_operator("+ -") + tensor)).set_parse_action(_fold)
    return expr


EXPRESSION = _build_grammar()


def location(text: str, loc: int) -> tuple[int, int]:
    """(строка, столбец) позиции loc, обе с 1."""
    return pp.lineno(loc, text), pp.col(loc, text)


def parse(text: str) -> Expr:
    """Разобрать выражение целиком или бросить DslSyntaxError с позицией."""
    try:
        return EXPRESSION.parse_string(text, parse_all=True)[0]
    except pp.ParseBaseException as exc:
        found = repr(text[exc.loc]) if exc.loc < len(text) else "end of text"
        raise DslSyntaxError(f"{exc.msg}, found {found}", *location(text, exc.loc)) from None
