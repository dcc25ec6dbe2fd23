"""
Детерминированные генераторы случайных параметров.

Источник случайности - Faker с seed_instance: одинаковый seed даёт
одинаковый результат при каждом запуске на любой платформе.
"""
from dataclasses import dataclass
from fractions import Fraction
from functools import cache

from faker import Faker

from lfactors.algebra import Scalar, SplitRational, v_power
from lfactors.catalog import (
    Gl2Param,
    Gsp4Param,
    StType,
    gsp4_param,
    principal_series,
    steinberg,
    supercuspidal,
    theta_lift,
)
from lfactors.exceptions import TypeConstraintViolation
from lfactors.wdrep import Block, Character, IrredPart, WDRep

SYMBOL_POOL = ("a", "b", "c", "d", "e", "f", "g", "h", "k", "m")
TAG_POOL = ("eta", "zeta")
# метки для параметров GSp(4) и для sigma не пересекаются
LABEL_POOL = ("l", "r", "t")
SIGMA_LABEL_POOL = ("u", "w")


@dataclass(frozen=True)
class TrialProfile:
    seed: int
    block_budget: int = 4
    symbol_pool: int = 4
    allow_irred: bool = False

    def __post_init__(self):
        if self.block_budget < 1:
            raise ValueError("block_budget must be at least 1")
        if not 1 <= self.symbol_pool <= len(SYMBOL_POOL):
            raise ValueError(f"symbol_pool must be between 1 and {len(SYMBOL_POOL)}")


def trial_seed(seed: int, index: int) -> int:
    """Seed отдельного испытания внутри прогона."""
    return seed * 100003 + index


@cache
def _faker() -> Faker:
    return Faker()


class Draw:
    """Обёртка над засеянным Faker с примитивами для параметров."""

    def __init__(self, profile: TrialProfile):
        self.profile = profile
        self.fake = _faker()
        self.fake.seed_instance(profile.seed)

    def integer(self, low: int, high: int) -> int:
        return self.fake.random_int(min=low, max=high)

    def choice(self, items):
        return self.fake.random_element(elements=tuple(items))

    def chance(self, one_in: int) -> bool:
        return self.integer(1, one_in) == 1

    def symbol(self) -> Scalar:
        return Scalar.named(self.choice(SYMBOL_POOL[:self.profile.symbol_pool]))

    def satake(self) -> Scalar:
        """Символ^(+-1), подкрученный на полуцелую степень |.|."""
        return self.symbol() ** self.choice((1, 1, -1)) * v_power(self.integer(-3, 3))

    def character(self) -> Character:
        if self.chance(5):
            return Character(((self.choice(TAG_POOL), 1),), self.satake())
        return Character.unr(self.satake())

    def irred(self, det: Character | None = None, labels=LABEL_POOL) -> IrredPart:
        return IrredPart(2, self.choice(labels), det if det is not None else Character.unr(self.satake()))

    def rational(self) -> Fraction:
        numerator = self.choice([n for n in range(-9, 10) if n])
        return Fraction(numerator, self.integer(1, 7))


def random_rep(profile: TrialProfile) -> WDRep:
    """Не более block_budget блоков, n <= 3."""
    draw = Draw(profile)
    blocks = []
    for _ in range(draw.integer(1, profile.block_budget)):
        n = draw.integer(0, 3)
        if profile.allow_irred and draw.chance(4):
            part = draw.irred()
        else:
            part = draw.character()
        blocks.append(Block(part, n))
    return WDRep.of(blocks)


GSP4_SHAPES = ("lines", "iia", "iiia", "iva", "va", "via")
IRRED_SHAPES = ("irred_lines", "irred_pair")


def _gsp4_blocks(draw: Draw, shape: str, lam: Character, chi: Character) -> list[Block]:
    def pair(n):
        mu = draw.character()
        return [Block(mu, n), Block(chi / mu, n)]

    if shape == "lines":
        return pair(0) + pair(0)
    if shape == "iia":
        return [Block(lam, 1)] + pair(0)
    if shape == "iiia":
        return pair(1)
    if shape == "iva":
        return [Block(lam, 3)]
    if shape == "va":
        return [Block(lam, 1), Block(lam * Character.unr(-1), 1)]
    if shape == "via":
        return [Block(lam, 1), Block(lam, 1)]
    if shape == "irred_lines":
        return [Block(draw.irred(chi))] + pair(0)
    first, second = LABEL_POOL[:2]
    return [Block(IrredPart(2, first, chi)), Block(IrredPart(2, second, chi))]


def random_gsp4(profile: TrialProfile, shapes=None) -> Gsp4Param:
    """
    Случайный FREE-параметр GSp(4).

    chi_pi = lambda^2, блоки идут парами (mu, chi/mu) или самодвойственны
    относительно lambda, так что проверка подобия выполнена по построению.
    """
    draw = Draw(profile)
    if shapes is None:
        shapes = GSP4_SHAPES + (IRRED_SHAPES if profile.allow_irred else ())
    shape = draw.choice(shapes)
    lam = draw.character()
    chi = lam ** 2
    return gsp4_param(StType.FREE, WDRep.of(_gsp4_blocks(draw, shape, lam, chi)), chi)


def _principal_series(draw: Draw, central: Character | None = None) -> Gl2Param:
    while True:
        mu = draw.character()
        other = central / mu if central is not None else draw.character()
        try:
            return principal_series(mu, other)
        except TypeConstraintViolation:
            continue  # mu/other = |.|^{+-1}, берём следующую пару


def random_gl2(profile: TrialProfile, kinds=("ps", "st")) -> Gl2Param:
    draw = Draw(profile)
    kind = draw.choice(kinds)
    if kind == "ps":
        return _principal_series(draw)
    if kind == "st":
        return steinberg(Character.unr(1) if draw.chance(3) else draw.character())
    return supercuspidal(draw.irred(labels=SIGMA_LABEL_POOL))


def random_theta(profile: TrialProfile) -> tuple[Gl2Param, Gl2Param, Gl2Param]:
    """(tau1, tau2, sigma) с общим центральным характером у tau1, tau2."""
    draw = Draw(profile)
    lam = draw.character()
    central = lam ** 2

    def tau():
        kind = draw.choice(("ps", "st", "sc") if profile.allow_irred else ("ps", "st"))
        if kind == "ps":
            return _principal_series(draw, central)
        if kind == "st":
            return steinberg(lam if draw.chance(2) else lam * Character.unr(-1))
        return supercuspidal(draw.irred(central))

    tau1, tau2 = tau(), tau()
    sigma_kinds = ("ps", "st", "sc") if profile.allow_irred else ("ps", "st")
    sigma_kind = draw.choice(sigma_kinds)
    if sigma_kind == "ps":
        sigma = _principal_series(draw)
    elif sigma_kind == "st":
        sigma = steinberg(draw.character())
    else:
        sigma = supercuspidal(draw.irred(labels=SIGMA_LABEL_POOL))
    return tau1, tau2, sigma


def random_theta_param(profile: TrialProfile) -> Gsp4Param:
    tau1, tau2, _ = random_theta(profile)
    return theta_lift(tau1, tau2)


def random_split_rationals(profile: TrialProfile) -> list[SplitRational]:
    """1..4 ненулевых разложенных функций над общим запасом корней."""
    draw = Draw(profile)
    pool = [draw.satake() for _ in range(draw.integer(2, 4))]
    if draw.chance(3):
        pool.append(draw.symbol() + draw.symbol() * v_power(1))
    functions = []
    for _ in range(draw.integer(1, 4)):
        roots = draw.fake.random_sample(elements=pool, length=draw.integer(0, len(pool)))
        functions.append(SplitRational.build(
            unit=Scalar.of(draw.integer(1, 5)) * draw.symbol() ** draw.integer(0, 1),
            xpower=draw.integer(-2, 2),
            factors=[(beta, draw.choice((-2, -1, 1, 2))) for beta in roots],
        ))
    return functions


def random_values(draw: Draw, names) -> dict[str, Fraction]:
    return {name: draw.rational() for name in sorted(names)}
