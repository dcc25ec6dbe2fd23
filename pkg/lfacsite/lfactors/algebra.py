"""
Точная арифметика движка.

Scalar - элемент поля рациональных функций над Q от символа v (v = q^{1/2})
и формальных символов Сатаке a, b, c, ...
SplitRational - рациональная функция от X = q^{-s}, хранимая в разложенном
виде unit * X^k * prod (1 - beta*X)^e.

Глобальный мономиальный порядок: lex, генераторы упорядочены по имени,
символ v всегда последний. Знаменатель скаляра нормирован так, что его
старший коэффициент в этом порядке равен 1.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import cache, cached_property
from typing import Iterable, Mapping

import sympy

from .exceptions import HalfIntegerError, ScalarZeroDivision

log = logging.getLogger(__name__)

V_NAME = "v"
X_NAME = "X"
# имена, которые нельзя использовать как символы Сатаке
RESERVED_NAMES = frozenset({V_NAME, X_NAME, "q", "x"})


@cache
def symbol(name: str) -> sympy.Symbol:
    """Формальный символ (один объект sympy на имя)."""
    return sympy.Symbol(name)


def generator_key(sym: sympy.Symbol) -> tuple[bool, str]:
    """Ключ глобального порядка генераторов: по имени, v последним."""
    return sym.name == V_NAME, sym.name


def ordered_generators(*exprs) -> tuple[sympy.Symbol, ...]:
    found = set()
    for expr in exprs:
        found |= expr.free_symbols
    return tuple(sorted(found, key=generator_key))


def _poly_terms(expr, gens) -> list[tuple[tuple[int, ...], Fraction]]:
    """Члены многочлена в порядке убывания lex: [(показатели, коэффициент)]."""
    if not gens:
        value = sympy.Rational(expr)
        return [((), Fraction(int(value.p), int(value.q)))]
    poly = sympy.Poly(expr, *gens, domain=sympy.QQ)
    return [
        (monom, Fraction(int(coeff.numerator), int(coeff.denominator)))
        for monom, coeff in poly.terms(order="lex")
    ]


@dataclass(frozen=True)
class Scalar:
    """
    Скаляр в каноническом виде num/den.

    num и den - раскрытые многочлены с рациональными коэффициентами,
    взаимно простые, den нормирован. Ноль хранится как 0/1.
    Создавать через Scalar.of или scalar_canonicalize: конструктор
    сам ничего не сокращает.
    """
    num: sympy.Expr
    den: sympy.Expr

    @classmethod
    def of(cls, value) -> "Scalar":
        if isinstance(value, Scalar):
            return value
        if isinstance(value, Fraction):
            value = sympy.Rational(value.numerator, value.denominator)
        return scalar_canonicalize(value)

    @classmethod
    def named(cls, name: str) -> "Scalar":
        """Скаляр-символ: Scalar.named("a")."""
        return cls(symbol(name), sympy.Integer(1))

    @property
    def expr(self) -> sympy.Expr:
        return self.num / self.den

    @property
    def is_zero(self) -> bool:
        return self.num == 0

    @property
    def is_one(self) -> bool:
        return self.num == 1 and self.den == 1

    @property
    def is_constant(self) -> bool:
        return not self.num.free_symbols and not self.den.free_symbols

    @property
    def symbol_names(self) -> frozenset[str]:
        return frozenset(s.name for s in self.num.free_symbols | self.den.free_symbols)

    @cached_property
    def sort_key(self) -> tuple:
        """Ключ сортировки по глобальному мономиальному порядку."""
        gens = ordered_generators(self.num, self.den)
        names = [g.name for g in gens]

        def key(expr):
            return tuple(
                (
                    tuple((name, e) for name, e in zip(names, monom) if e),
                    (coeff.numerator, coeff.denominator),
                )
                for monom, coeff in _poly_terms(expr, gens)
            )

        return key(self.num), key(self.den)

    def as_fraction(self) -> Fraction:
        """Рациональное значение константного скаляра."""
        if not self.is_constant:
            raise ValueError(f"{self} is not a rational constant")
        value = sympy.Rational(self.expr)
        return Fraction(int(value.p), int(value.q))

    def substitute(self, values: Mapping[str, Fraction]) -> "Scalar":
        """Подстановка рациональных значений вместо части символов."""
        replacements = {
            symbol(name): sympy.Rational(value.numerator, value.denominator)
            for name, value in values.items()
        }
        den = self.den.xreplace(replacements)
        if sympy.expand(den) == 0:
            raise ScalarZeroDivision(f"denominator of {self} vanishes under {values}")
        return scalar_canonicalize(self.num.xreplace(replacements) / den)

    def specialize(self, values: Mapping[str, Fraction]) -> Fraction | None:
        """Значение при полной подстановке, None если знаменатель обнулился."""
        try:
            special = self.substitute(values)
        except ScalarZeroDivision:
            return None
        return special.as_fraction()

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return scalar_canonicalize(self.num * other.num / (self.den * other.den))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if other.is_zero:
            raise ScalarZeroDivision(f"division of {self} by zero")
        return scalar_canonicalize(self.num * other.den / (self.den * other.num))

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other / self

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return scalar_canonicalize(self.expr + other.expr)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return scalar_canonicalize(self.expr - other.expr)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __neg__(self):
        return scalar_canonicalize(-self.expr)

    def __pow__(self, k: int):
        if k < 0 and self.is_zero:
            raise ScalarZeroDivision("zero raised to a negative power")
        return scalar_canonicalize(self.expr ** k)

    def inverse(self) -> "Scalar":
        return ONE / self

    def __str__(self):
        return format_scalar(self)

    def __repr__(self):
        return f"Scalar({format_scalar(self)!r})"


def _coerce(value):
    if isinstance(value, Scalar):
        return value
    if isinstance(value, (int, Fraction, sympy.Expr)):
        return Scalar.of(value)
    return NotImplemented


def scalar_canonicalize(expr) -> Scalar:
    """
    Привести выражение над Q, v и символами Сатаке к каноническому виду.

    Идемпотентна: повторное применение к результату ничего не меняет.
    """
    expr = sympy.sympify(expr)
    if expr.has(sympy.zoo, sympy.nan, sympy.oo):
        raise ScalarZeroDivision(f"expression {expr} has a zero denominator")
    num, den = sympy.fraction(sympy.cancel(expr))
    if den == 0:
        raise ScalarZeroDivision(f"expression {expr} has a zero denominator")
    if num == 0:
        return Scalar(sympy.Integer(0), sympy.Integer(1))
    gens = ordered_generators(num, den)
    if not gens:
        return Scalar(sympy.Rational(num) / sympy.Rational(den), sympy.Integer(1))
    num_poly = sympy.Poly(num, *gens, domain=sympy.QQ)
    den_poly = sympy.Poly(den, *gens, domain=sympy.QQ)
    lead = den_poly.LC(order="lex")
    return Scalar(num_poly.quo_ground(lead).as_expr(), den_poly.quo_ground(lead).as_expr())


ZERO = Scalar(sympy.Integer(0), sympy.Integer(1))
ONE = Scalar(sympy.Integer(1), sympy.Integer(1))
V = Scalar.named(V_NAME)


@cache
def v_power(k: int) -> Scalar:
    """v^k; |.|^t имеет параметр Сатаке v^{-2t}."""
    return scalar_canonicalize(symbol(V_NAME) ** k)


def half_integer(t) -> Fraction:
    """Проверить, что t полуцелое, и вернуть его как Fraction."""
    if isinstance(t, Scalar):
        if not t.is_constant:
            raise HalfIntegerError(f"shift {t} is not a number")
        t = t.as_fraction()
    value = Fraction(t)
    if (2 * value).denominator != 1:
        raise HalfIntegerError(f"shift {value} is not a half-integer")
    return value


# --- текстовая форма -------------------------------------------------------


def _fraction_text(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def _term_text(coeff: Fraction, powers: list[tuple[str, int]]) -> str:
    monomial = "*".join(name if e == 1 else f"{name}^{e}" for name, e in powers if e)
    if not monomial:
        return _fraction_text(coeff)
    if coeff == 1:
        return monomial
    if coeff == -1:
        return "-" + monomial
    return f"{_fraction_text(coeff)}*{monomial}"


def _sum_text(terms: list[str]) -> str:
    text = terms[0]
    for term in terms[1:]:
        text += f" - {term[1:]}" if term.startswith("-") else f" + {term}"
    return text


def format_scalar(scalar: Scalar) -> str:
    """
    Каноническая запись скаляра.

    Если знаменатель - одночлен, он переносится в числитель с отрицательными
    показателями: a*v^-3. Иначе пишем (числитель)/(знаменатель).
    """
    gens = ordered_generators(scalar.num, scalar.den)
    names = [g.name for g in gens]
    num_terms = _poly_terms(scalar.num, gens)
    den_terms = _poly_terms(scalar.den, gens)
    if len(den_terms) == 1:
        den_monom, den_coeff = den_terms[0]
        return _sum_text([
            _term_text(
                coeff / den_coeff,
                [
                    (name, e - d)
                    for name, e, d in zip(names, monom or (0,) * len(names), den_monom or (0,) * len(names))
                ],
            )
            for monom, coeff in num_terms
        ])
    num_text = _sum_text([_term_text(c, list(zip(names, m))) for m, c in num_terms])
    den_text = _sum_text([_term_text(c, list(zip(names, m))) for m, c in den_terms])
    if len(num_terms) > 1:
        num_text = f"({num_text})"
    return f"{num_text}/({den_text})"


def _factor_text(beta: Scalar, exponent: int) -> str:
    text = str(beta)
    if text == "1":
        body = "1 - X"
    elif text == "-1":
        body = "1 + X"
    elif " " in text:
        body = f"1 - ({text})*X"
    elif text.startswith("-"):
        body = f"1 + {text[1:]}*X"
    else:
        body = f"1 - {text}*X"
    return f"({body})" if exponent == 1 else f"({body})^{exponent}"


def _product_text(items: list[str], factors: list[str]) -> str:
    head = "*".join(items)
    tail = "".join(factors)
    if head and tail:
        return f"{head}*{tail}"
    return head or tail


def format_rational(f: "SplitRational") -> str:
    """Каноническая запись: 1/((1 - a*X)(1 - b*v^-1*X))."""
    num_items, den_items = [], []
    if not f.unit.is_one:
        unit_text = str(f.unit)
        num_items.append(f"({unit_text})" if " " in unit_text else unit_text)
    if f.xpower:
        power = abs(f.xpower)
        (num_items if f.xpower > 0 else den_items).append("X" if power == 1 else f"X^{power}")
    num_factors = [_factor_text(beta, e) for beta, e in f.factors if e > 0]
    den_factors = [_factor_text(beta, -e) for beta, e in f.factors if e < 0]
    numerator = _product_text(num_items, num_factors) or "1"
    if not den_items and not den_factors:
        return numerator
    denominator = _product_text(den_items, den_factors)
    if len(den_items) + len(den_factors) > 1:
        denominator = f"({denominator})"
    return f"{numerator}/{denominator}"


# --- разложенные рациональные функции от X ---------------------------------


@dataclass(frozen=True)
class SplitRational:
    """
    unit * X^xpower * prod (1 - beta*X)^e.

    factors отсортированы по ключу beta, равные beta слиты, нулевые
    показатели выброшены. Собирать через SplitRational.build.
    """
    unit: Scalar = ONE
    xpower: int = 0
    factors: tuple[tuple[Scalar, int], ...] = ()

    @classmethod
    def build(cls, unit=ONE, xpower: int = 0, factors: Iterable[tuple[Scalar, int]] = ()) -> "SplitRational":
        unit = Scalar.of(unit)
        if unit.is_zero:
            return cls(ZERO, 0, ())
        merged: dict[Scalar, int] = {}
        for beta, exponent in factors:
            beta = Scalar.of(beta)
            if beta.is_zero or not exponent:
                continue  # (1 - 0*X)^e = 1
            merged[beta] = merged.get(beta, 0) + exponent
        items = sorted(((b, e) for b, e in merged.items() if e), key=lambda item: item[0].sort_key)
        return cls(unit, xpower, tuple(items))

    @classmethod
    def lfactor_at(cls, beta) -> "SplitRational":
        """1/(1 - beta*X)."""
        return cls.build(factors=[(beta, -1)])

    @property
    def is_zero(self) -> bool:
        return self.unit.is_zero

    @property
    def is_one(self) -> bool:
        return self.unit.is_one and not self.xpower and not self.factors

    @property
    def is_lfactor(self) -> bool:
        """Вид 1/P(X) с P(0) = 1."""
        return self.unit.is_one and self.xpower == 0 and all(e <= 0 for _, e in self.factors)

    @property
    def roots(self) -> tuple[Scalar, ...]:
        return tuple(beta for beta, _ in self.factors)

    def poles(self) -> tuple[Scalar, ...]:
        return tuple(beta for beta, e in self.factors if e < 0)

    def zeros(self) -> tuple[Scalar, ...]:
        return tuple(beta for beta, e in self.factors if e > 0)

    def order_at(self, beta: Scalar) -> int:
        beta = Scalar.of(beta)
        for root, exponent in self.factors:
            if root == beta:
                return exponent
        return 0

    def __mul__(self, other: "SplitRational") -> "SplitRational":
        if not isinstance(other, SplitRational):
            return NotImplemented
        return SplitRational.build(
            self.unit * other.unit,
            self.xpower + other.xpower,
            self.factors + other.factors,
        )

    def inverse(self) -> "SplitRational":
        return SplitRational.build(
            self.unit.inverse(),
            -self.xpower,
            [(beta, -e) for beta, e in self.factors],
        )

    def __truediv__(self, other: "SplitRational") -> "SplitRational":
        if not isinstance(other, SplitRational):
            return NotImplemented
        return self * other.inverse()

    def __pow__(self, k: int) -> "SplitRational":
        if k < 0:
            return self.inverse() ** -k
        return SplitRational.build(self.unit ** k, self.xpower * k, [(b, e * k) for b, e in self.factors])

    def as_expr(self, x: sympy.Symbol | None = None) -> sympy.Expr:
        """Выражение sympy от X (для оракулов и специализации)."""
        x = x if x is not None else symbol(X_NAME)
        expr = self.unit.expr * x ** self.xpower
        for beta, exponent in self.factors:
            expr *= (1 - beta.expr * x) ** exponent
        return expr

    def __str__(self):
        return format_rational(self)

    def __repr__(self):
        return f"SplitRational({format_rational(self)!r})"


UNIT = SplitRational()


@dataclass(frozen=True)
class IdealGen:
    """Образующая дробного идеала кольца Лорана Q(v, ...)[X, X^-1]."""
    generator: SplitRational
    is_lfactor: bool
    contains_units: bool


def ring_mul(f: SplitRational, g: SplitRational, mode: str = "multiply") -> SplitRational:
    """Произведение или частное; показатели при равных beta сливаются."""
    if mode == "multiply":
        return f * g
    if mode == "divide":
        return f / g
    raise ValueError(f"unknown ring_mul mode {mode!r}")


def shift(f: SplitRational, t) -> SplitRational:
    """
    Сдвиг s -> s + t, то есть X -> v^{-2t} X.

    Множитель (1 - beta*X) переходит в (1 - beta*v^{-2t}*X), а X^k
    добавляет v^{-2tk} в unit.
    """
    t = half_integer(t)
    if t == 0:
        return f
    step = v_power(int(-2 * t))
    return SplitRational.build(
        f.unit * step ** f.xpower,
        f.xpower,
        [(beta * step, e) for beta, e in f.factors],
    )


def ideal_generator(fs: Iterable[SplitRational]) -> IdealGen:
    """
    Образующая суммы дробных идеалов (f_1) + ... + (f_n).

    Степени X и константы - обратимые элементы кольца Лорана, поэтому у
    образующей unit = 1 и xpower = 0; показатель при каждом beta -
    минимум показателей по всем f_i (отсутствующий считается нулём).
    """
    fs = list(fs)
    if not fs:
        raise ValueError("ideal_generator needs at least one element")
    for f in fs:
        if f.is_zero:
            raise ScalarZeroDivision("the zero function does not generate a fractional ideal")
    roots: dict[Scalar, None] = {}
    for f in fs:
        for beta in f.roots:
            roots.setdefault(beta)
    generator = SplitRational.build(
        factors=[(beta, min(f.order_at(beta) for f in fs)) for beta in roots],
    )
    log.debug("ideal generator of %d functions: %s", len(fs), generator)
    return IdealGen(
        generator=generator,
        is_lfactor=generator.is_lfactor,
        contains_units=all(e <= 0 for _, e in generator.factors),
    )


def vanishing_order(f: SplitRational, beta: Scalar) -> int:
    """Порядок f в точке X = 1/beta; отрицательный - полюс."""
    beta = Scalar.of(beta)
    if beta.is_zero:
        raise ScalarZeroDivision("vanishing order is taken at a nonzero root")
    return f.order_at(beta)
