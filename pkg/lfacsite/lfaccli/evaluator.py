"""
Вычисление выражений lfac.

Значение выражения - Scalar, Character, IrredPart, WDRep, SplitRational,
Gl2Param, Gsp4Param, PoleEntry или PoleReport. Многочлен первой степени
от X живёт как LinearX, пока не встретит умножение или деление, и на
выходе всегда становится SplitRational.
"""
import logging
from dataclasses import dataclass, field
from typing import Callable

import sympy

from lfactors.algebra import (
    ONE,
    V,
    ZERO,
    Scalar,
    SplitRational,
    ideal_generator,
    shift,
    v_power,
    vanishing_order,
)
from lfactors.catalog import (
    CATALOG_TYPES,
    Catalog,
    Gl2Kind,
    Gl2Param,
    Gsp4Param,
    StType,
    cor62_lfactor,
    gl2_param,
    gl2_twist,
    gsp4_param,
    gsp4_twist,
    nov_lfactor,
    rs_lfactor,
    theta_lift,
)
from lfactors.poles import (
    PoleEntry,
    PoleKind,
    PoleReport,
    exceptional_poles,
    hom_dim,
    ideals_JK,
    nov_split,
    ps_split,
    subregular_poles,
)
from lfactors.wdrep import (
    Character,
    IrredPart,
    WDRep,
    dual,
    lfactor,
    tensor,
    twist,
)

from .exceptions import DslError, DslNameError, DslTypeError
from .grammar import BinOp, Call, Name, Neg, Number, Power, location, parse

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class LinearX:
    """c0 + c1*X."""
    c0: Scalar
    c1: Scalar

    def as_rational(self) -> SplitRational:
        if self.c1.is_zero:
            return SplitRational.build(unit=self.c0)
        if self.c0.is_zero:
            return SplitRational.build(unit=self.c1, xpower=1)
        return SplitRational.build(unit=self.c0, factors=[(-self.c1 / self.c0, 1)])


X_VALUE = LinearX(ZERO, ONE)

# виды значений для сообщений об ошибках
LABEL, TAG, INT = "label", "tag", "integer"
KIND_NAMES = {
    Scalar: "scalar",
    LinearX: "rational",
    SplitRational: "rational",
    Character: "character",
    IrredPart: "irred",
    WDRep: "rep",
    Gl2Param: "gl2",
    Gsp4Param: "gsp4",
    PoleEntry: "pole",
    PoleReport: "report",
}


def kind_name(value) -> str:
    return KIND_NAMES.get(type(value), type(value).__name__)


class _NoMatch(Exception):
    pass


def _bare_symbol(value) -> str:
    if isinstance(value, Scalar) and isinstance(value.num, sympy.Symbol) and value.den == 1:
        return value.num.name
    raise _NoMatch


def _tag(value) -> tuple[tuple[str, int], ...]:
    """Одночлен от символов с коэффициентом 1 -> тег ветвления."""
    if not isinstance(value, Scalar) or value.is_constant:
        raise _NoMatch
    powers = value.expr.as_powers_dict()
    if not all(isinstance(base, sympy.Symbol) and exponent.is_Integer for base, exponent in powers.items()):
        raise _NoMatch
    return tuple(sorted((base.name, int(exponent)) for base, exponent in powers.items()))


def coerce(value, kind):
    """Привести значение к виду kind или бросить _NoMatch."""
    if kind == LABEL:
        return _bare_symbol(value)
    if kind == TAG:
        return _tag(value)
    if kind == INT:
        if isinstance(value, Scalar) and value.is_constant and value.as_fraction().denominator == 1:
            return int(value.as_fraction())
        raise _NoMatch
    if isinstance(kind, tuple):
        for option in kind:
            try:
                return coerce(value, option)
            except _NoMatch:
                continue
        raise _NoMatch
    if isinstance(value, kind):
        return value
    if kind is WDRep and isinstance(value, (Character, IrredPart)):
        return WDRep.from_part(value)
    if kind is SplitRational:
        if isinstance(value, LinearX):
            return value.as_rational()
        if isinstance(value, Scalar):
            return SplitRational.build(unit=value)
    raise _NoMatch


def _kind_text(kind) -> str:
    if isinstance(kind, str):
        return kind
    if isinstance(kind, tuple):
        return "|".join(_kind_text(option) for option in kind)
    return KIND_NAMES[kind]


@dataclass(frozen=True)
class Builtin:
    """Встроенная функция: варианты сигнатур проверяются по порядку."""
    name: str
    func: Callable
    signatures: tuple[tuple, ...]
    varargs: object = None
    kwargs: dict = field(default_factory=dict)

    def describe(self) -> str:
        if self.varargs is not None:
            return f"{self.name}({_kind_text(self.varargs)}, ...)"
        return " or ".join(
            f"{self.name}({', '.join(_kind_text(kind) for kind in signature)})"
            for signature in self.signatures
        )

    def bind(self, args: list, kwargs: dict) -> tuple[list, dict]:
        for signature in self.signatures:
            if len(signature) != len(args):
                continue
            try:
                bound = [coerce(value, kind) for value, kind in zip(args, signature)]
            except _NoMatch:
                continue
            return bound, self._bind_kwargs(kwargs)
        if self.varargs is not None:
            try:
                return [coerce(value, self.varargs) for value in args], self._bind_kwargs(kwargs)
            except _NoMatch:
                pass
        got = ", ".join(kind_name(value) for value in args)
        raise DslTypeError(f"{self.describe()} cannot take ({got})")

    def _bind_kwargs(self, kwargs: dict) -> dict:
        bound = {}
        for name, value in kwargs.items():
            if name not in self.kwargs:
                raise DslTypeError(f"{self.name}() has no keyword argument {name!r}")
            try:
                bound[name] = coerce(value, self.kwargs[name])
            except _NoMatch:
                raise DslTypeError(
                    f"{self.name}(): {name} must be {_kind_text(self.kwargs[name])}, got {kind_name(value)}"
                ) from None
        return bound


BUILTINS: dict[str, Builtin] = {}


def builtin(name: str, *signatures, varargs=None, **kwargs):
    def register(func):
        BUILTINS[name] = Builtin(name, func, signatures, varargs, kwargs)
        return func
    return register


# --- характеры и WD-представления ------------------------------------------


@builtin("unr", (Scalar,))
def _unr(satake, catalog):
    return Character.unr(satake)


@builtin("ram", (TAG,), (TAG, Scalar))
def _ram(tag, satake=ONE, catalog=None):
    return Character(tag, satake)


@builtin("abs", (Scalar,))
def _abs(t, catalog):
    return Character.absolute(t)


@builtin("sp", (INT,))
def _sp(n, catalog):
    return WDRep.sp(n)


@builtin("irr", (INT, LABEL, Character), sim=Character, twist=Character, dual=INT)
def _irr(dim, label, det, catalog, sim=None, twist=None, dual=0):
    return IrredPart(dim, label, det, sim, twist or Character(), bool(dual))


@builtin("rep", varargs=WDRep)
def _rep(*reps, catalog):
    return sum(reps, WDRep())


@builtin("dual", (Character,), (IrredPart,), (WDRep,))
def _dual(value, catalog):
    if isinstance(value, Character):
        return value.inverse()
    if isinstance(value, IrredPart):
        return value.dual()
    return dual(value)


@builtin("twist", (Gsp4Param, Character), (Gl2Param, Character), (IrredPart, Character), (WDRep, Character))
def _twist(value, chi, catalog):
    if isinstance(value, Gsp4Param):
        return gsp4_twist(value, chi)
    if isinstance(value, Gl2Param):
        return gl2_twist(value, chi)
    if isinstance(value, IrredPart):
        return value.twisted(chi)
    return twist(value, chi)


@builtin("tensor", (WDRep, WDRep))
def _tensor(first, second, catalog):
    return tensor(first, second)


# --- L-факторы и идеалы ----------------------------------------------------


@builtin(
    "L",
    (Gsp4Param, Gl2Param), (Gl2Param, Gl2Param), (Gsp4Param,), (Gl2Param,), (WDRep,),
)
def _lfunction(first, second=None, catalog=None):
    if second is not None:
        if isinstance(first, Gsp4Param):
            return nov_lfactor(first, second)
        return rs_lfactor(first, second)
    return lfactor(first if isinstance(first, WDRep) else first.rep)


@builtin("shift", (SplitRational, Scalar))
def _shift(f, t, catalog):
    return shift(f, t)


@builtin("ideal", varargs=SplitRational)
def _ideal(*fs, catalog):
    if not fs:
        raise DslTypeError("ideal() needs at least one function")
    return ideal_generator(fs).generator


@builtin("order", (SplitRational, Scalar))
def _order(f, beta, catalog):
    return Scalar.of(vanishing_order(f, beta))


# --- параметры -------------------------------------------------------------


@builtin("gl2.PS", (Character, Character), reducible=INT)
def _gl2_ps(chi1, chi2, catalog, reducible=0):
    return gl2_param(Gl2Kind.PRINCIPAL_SERIES, chi1, chi2, reducible=bool(reducible))


@builtin("gl2.St", (), (Character,))
def _gl2_st(*data, catalog):
    return gl2_param(Gl2Kind.STEINBERG_TWIST, *data)


@builtin("gl2.SC", (LABEL, Character), (IrredPart,), (LABEL,))
def _gl2_sc(*data, catalog):
    return gl2_param(Gl2Kind.SUPERCUSPIDAL, *data)


@builtin("theta", (Gl2Param, Gl2Param))
def _theta(tau1, tau2, catalog):
    return theta_lift(tau1, tau2)


_CHAR, _PART = Character, (Character, IrredPart)
GSP4_SIGNATURES = {
    StType.I: ((_CHAR, _CHAR, _CHAR),),
    StType.IIIa: ((_CHAR, _CHAR),),
    StType.IVa: ((_CHAR,),),
    StType.VII: ((LABEL, _CHAR, _CHAR),),
    StType.VIIIa: ((LABEL, _CHAR),),
    StType.IXa: ((LABEL, _CHAR),),
    StType.SC: ((LABEL, _CHAR), (LABEL, LABEL, _CHAR)),
    StType.FREE: ((WDRep, _CHAR),),
}


def _gsp4_builder(st_type: StType):
    def build(*data, catalog):
        return gsp4_param(st_type, *data, catalog=catalog)
    return build


for _st_type in StType:
    if _st_type in CATALOG_TYPES:
        # арность проверит каталог
        BUILTINS[f"gsp4.{_st_type.value}"] = Builtin(f"gsp4.{_st_type.value}", _gsp4_builder(_st_type), (), _PART)
    else:
        BUILTINS[f"gsp4.{_st_type.value}"] = Builtin(
            f"gsp4.{_st_type.value}", _gsp4_builder(_st_type), GSP4_SIGNATURES[_st_type]
        )


# --- полюса ----------------------------------------------------------------


@builtin("nov", (Gsp4Param, Gl2Param))
def _nov(pi, sigma, catalog):
    return nov_lfactor(pi, sigma)


@builtin("rs", (Gl2Param, Gl2Param))
def _rs(tau, sigma, catalog):
    return rs_lfactor(tau, sigma)


@builtin("cor62", (Gsp4Param, Gl2Param))
def _cor62(pi, sigma, catalog):
    return cor62_lfactor(pi, sigma)


@builtin("exceptional", (Gsp4Param, Gl2Param))
def _exceptional(pi, sigma, catalog):
    return exceptional_poles(pi, sigma)


@builtin("subregular", (Gsp4Param,))
def _subregular(pi, catalog):
    return subregular_poles(pi)


@builtin("hom", (Gsp4Param, Gl2Param, Scalar))
def _hom(pi, sigma, root, catalog):
    return Scalar.of(hom_dim(pi, sigma, root))


@builtin("lreg", (Gsp4Param, Gl2Param))
def _lreg(pi, sigma, catalog):
    return nov_split(pi, sigma)[0]


@builtin("lex", (Gsp4Param, Gl2Param))
def _lex(pi, sigma, catalog):
    return nov_split(pi, sigma)[1]


@builtin("lsub", (Gsp4Param,))
def _lsub(pi, catalog):
    return ps_split(pi)[1]


@builtin("lkir", (Gsp4Param,))
def _lkir(pi, catalog):
    return ps_split(pi)[2]


@builtin("idealJ", (Gsp4Param,))
def _ideal_j(pi, catalog):
    return ideals_JK(pi)[0]


@builtin("idealK", (Gsp4Param,))
def _ideal_k(pi, catalog):
    return ideals_JK(pi)[1]


@builtin("report", varargs=PoleEntry)
def _report(*entries, catalog):
    return PoleReport.of(entries)


@builtin("pole", (Scalar, LABEL, WDRep), multiplicity=INT, bessel1=Character, bessel2=Character, generic=INT)
def _pole(root, kind, witness, catalog, multiplicity=1, bessel1=None, bessel2=None, generic=0):
    try:
        kind = PoleKind[kind]
    except KeyError:
        raise DslTypeError(f"unknown pole kind {kind!r}") from None
    if len(witness.blocks) != 1:
        raise DslTypeError(f"pole witness must be a single block, got {witness}")
    if (bessel1 is None) != (bessel2 is None):
        raise DslTypeError("pole() needs both bessel1 and bessel2 or neither")
    bessel = None if bessel1 is None else (bessel1, bessel2)
    return PoleEntry(root, kind, witness.blocks[0], multiplicity, bessel, bool(generic))


# --- арифметика ------------------------------------------------------------


def _is_part(value) -> bool:
    return isinstance(value, (Character, IrredPart, WDRep))


def _as_linear(value) -> LinearX:
    return value if isinstance(value, LinearX) else LinearX(value, ZERO)


def _add(op: str, left, right):
    if isinstance(left, Scalar) and isinstance(right, Scalar):
        return left + right if op == "+" else left - right
    if isinstance(left, (Scalar, LinearX)) and isinstance(right, (Scalar, LinearX)):
        left, right = _as_linear(left), _as_linear(right)
        if op == "-":
            right = LinearX(-right.c0, -right.c1)
        return LinearX(left.c0 + right.c0, left.c1 + right.c1)
    if op == "+" and _is_part(left) and _is_part(right):
        return coerce(left, WDRep) + coerce(right, WDRep)
    raise _NoMatch


def _multiply(op: str, left, right):
    if isinstance(left, Character) and isinstance(right, Character):
        return left * right if op == "*" else left / right
    if isinstance(left, Scalar) and isinstance(right, Scalar):
        return left * right if op == "*" else left / right
    if isinstance(left, LinearX) and isinstance(right, Scalar):
        return LinearX(left.c0 * right, left.c1 * right) if op == "*" else LinearX(left.c0 / right, left.c1 / right)
    if op == "*" and isinstance(left, Scalar) and isinstance(right, LinearX):
        return LinearX(left * right.c0, left * right.c1)
    numeric = (Scalar, LinearX, SplitRational)
    if isinstance(left, numeric) and isinstance(right, numeric):
        left, right = coerce(left, SplitRational), coerce(right, SplitRational)
        return left * right if op == "*" else left / right
    raise _NoMatch


def _power(value, k: int):
    if isinstance(value, (Scalar, Character)):
        return value ** k
    if isinstance(value, LinearX):
        return value if k == 1 else value.as_rational() ** k
    if isinstance(value, SplitRational):
        return value ** k
    raise _NoMatch


@dataclass
class Evaluator:
    """Вычислитель дерева разбора; catalog - каталог для gsp4.* (None - по умолчанию)."""
    text: str = ""
    catalog: Catalog | None = None

    def evaluate(self, node):
        try:
            return self._eval(node)
        except DslError as exc:
            if exc.line is None:
                exc.line, exc.column = location(self.text, getattr(node, "loc", 0))
            raise

    def _fail(self, error: type[DslError], node, message: str):
        return error(message, *location(self.text, node.loc))

    def _eval(self, node):
        if isinstance(node, Number):
            return Scalar.of(node.value)
        if isinstance(node, Name):
            return self._name(node)
        if isinstance(node, Call):
            return self._call(node)
        if isinstance(node, Neg):
            value = self._eval(node.operand)
            if isinstance(value, Scalar):
                return -value
            if isinstance(value, LinearX):
                return LinearX(-value.c0, -value.c1)
            raise self._fail(DslTypeError, node, f"cannot negate a {kind_name(value)}")
        if isinstance(node, Power):
            value = self._eval(node.base)
            try:
                return _power(value, node.exponent)
            except _NoMatch:
                raise self._fail(DslTypeError, node, f"cannot raise a {kind_name(value)} to a power") from None
        return self._binop(node)

    def _name(self, node: Name):
        if node.name == "X":
            return X_VALUE
        if node.name == "v":
            return V
        if node.name == "q":
            return v_power(2)
        if "." in node.name or node.name in BUILTINS:
            raise self._fail(DslNameError, node, f"{node.name} is a function, not a value")
        return Scalar.named(node.name)

    def _call(self, node: Call):
        func = BUILTINS.get(node.name)
        if func is None:
            raise self._fail(DslNameError, node, f"unknown function {node.name}")
        args = [self._eval(arg) for arg in node.args]
        kwargs = {}
        for name, value in node.kwargs:
            if name in kwargs:
                raise self._fail(DslTypeError, node, f"{node.name}(): keyword argument {name!r} repeated")
            kwargs[name] = self._eval(value)
        try:
            bound, bound_kwargs = func.bind(args, kwargs)
        except DslTypeError as exc:
            raise self._fail(DslTypeError, node, exc.message) from None
        try:
            return func.func(*bound, catalog=self.catalog, **bound_kwargs)
        except DslTypeError as exc:
            raise self._fail(DslTypeError, node, exc.message) from None

    def _binop(self, node: BinOp):
        left, right = self._eval(node.left), self._eval(node.right)
        try:
            if node.op in "+-":
                return _add(node.op, left, right)
            if node.op == "x":
                return tensor(coerce(left, WDRep), coerce(right, WDRep))
            return _multiply(node.op, left, right)
        except _NoMatch:
            raise self._fail(
                DslTypeError, node, f"cannot apply {node.op!r} to {kind_name(left)} and {kind_name(right)}"
            ) from None


def finish(value):
    """Итоговое значение: LinearX становится SplitRational."""
    return value.as_rational() if isinstance(value, LinearX) else value


def evaluate(text: str, catalog: Catalog | None = None, kind: type | None = None):
    """
    Разобрать и вычислить выражение.

    kind=SplitRational разрешает скаляр там, где ожидается функция от X:
    запись "1" означает и скаляр, и постоянную функцию.
    """
    value = finish(Evaluator(text, catalog).evaluate(parse(text)))
    if kind is not None:
        try:
            value = coerce(value, kind)
        except _NoMatch:
            raise DslTypeError(f"expected a {KIND_NAMES[kind]}, got a {kind_name(value)}", 1, 1) from None
    log.debug("evaluated %r to %s", text, value)
    return value
