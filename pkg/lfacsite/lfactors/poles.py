"""
Классификация полюсов.

Исключительные полюса L(pi x sigma, s) и субрегулярные полюса L(pi, s),
разложения L = L_reg * L_ex и L = L_ex * L_sub * L_Kir, идеалы J и K.
Полюс задаётся обратным корнем beta = q^{s0}.
"""
import logging
from collections import Counter
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Mapping

from .algebra import UNIT, V, Scalar, SplitRational, shift, v_power
from .catalog import Gl2Param, Gsp4Param, nov_lfactor, steinberg
from .exceptions import ScalarZeroDivision
from .wdrep import (
    Block,
    Character,
    SummandKind,
    langlands_ratio,
    lfactor,
    summand_query,
    tensor,
)

log = logging.getLogger(__name__)

HALF = Fraction(1, 2)


class PoleKind(str, Enum):
    EXCEPTIONAL = "exceptional"
    SUBREGULAR_CASE1 = "subregular-case1"
    SUBREGULAR_CASE2 = "subregular-case2"
    REGULAR = "regular"


@dataclass(frozen=True)
class PoleEntry:
    """
    Классифицированный полюс.

    multiplicity - сколько раз слагаемое-свидетель входит в параметр,
    сам полюс при этом простой. generic - классификация опирается на
    неравенство, верное лишь в общем положении символов.
    """
    root: Scalar
    kind: PoleKind
    witness: Block
    multiplicity: int = 1
    bessel: tuple[Character, Character] | None = None
    generic: bool = False


@dataclass(frozen=True)
class PoleReport:
    entries: tuple[PoleEntry, ...] = ()

    @classmethod
    def of(cls, entries) -> "PoleReport":
        return cls(tuple(sorted(entries, key=lambda entry: (entry.root.sort_key, entry.kind.value))))

    def roots(self, *kinds: PoleKind) -> tuple[Scalar, ...]:
        return tuple(entry.root for entry in self.entries if not kinds or entry.kind in kinds)

    def lfactor(self) -> SplitRational:
        """prod (1 - root*X)^{-1}, каждый корень один раз."""
        return SplitRational.build(factors=[(root, -1) for root in dict.fromkeys(self.roots())])

    def __len__(self):
        return len(self.entries)


def _condition(chi: Character, target: Scalar) -> tuple[bool, bool]:
    """
    (chi неразветвлён и satake(chi) = target, неравенство лишь общее).

    Второй флаг истинен, когда равенство не выполнено, но разность -
    непостоянная рациональная функция символов.
    """
    if not chi.is_unramified:
        return False, False
    if chi.satake == target:
        return True, False
    return False, not (chi.satake - target).is_constant


def exceptional_poles(pi: Gsp4Param, sigma: Gl2Param) -> PoleReport:
    """
    Корень alpha исключителен, если unr(alpha) - одномерное слагаемое
    phi_pi (x) phi_sigma и satake(chi_pi chi_sigma) = alpha^2.
    """
    product = tensor(pi.rep, sigma.rep)
    chi = pi.similitude * sigma.central
    entries = []
    for alpha, count in Counter(summand_query(product, SummandKind.LINE)).items():
        holds, _ = _condition(chi, alpha ** 2)
        if holds:
            entries.append(PoleEntry(alpha, PoleKind.EXCEPTIONAL, Block(Character.unr(alpha)), count))
    report = PoleReport.of(entries)
    log.debug("exceptional poles of %s x %s: %s", pi, sigma, [str(r) for r in report.roots()])
    return report


def nov_split(pi: Gsp4Param, sigma: Gl2Param) -> tuple[SplitRational, SplitRational]:
    """(L_reg, L_ex), L_ex - произведение простых множителей по исключительным корням."""
    full = nov_lfactor(pi, sigma)
    exceptional = exceptional_poles(pi, sigma).lfactor()
    return full / exceptional, exceptional


def bessel_character(chi: Character, beta: Scalar) -> tuple[Character, Character]:
    """Lambda = (|.|^{-1/2-s0}, chi_pi |.|^{1/2+s0}) при q^{s0} = beta."""
    q_half = V * beta
    return Character.unr(q_half), chi * Character.unr(q_half.inverse())


def bessel_characters(
    pi: Gsp4Param, beta: Scalar
) -> tuple[tuple[Character, Character], tuple[Character, Character], bool]:
    """
    Характеры Бесселя двух типов в точке beta и флаг их совпадения.

    Первый - выделенный Lambda, второй - Lambda с переставленными
    компонентами; совпадают ровно при chi_pi |.|^{2s0+1} = 1.
    """
    first = bessel_character(pi.similitude, Scalar.of(beta))
    second = (first[1], first[0])
    return first, second, first == second


def subregular_poles(pi: Gsp4Param) -> PoleReport:
    """
    Случай 1: unr(beta) - прямое слагаемое phi_pi и chi_pi |.|^{2s0+1} != 1.
    Случай 2: chi_pi |.|^{2s0+1} = 1 и unr(beta*v) (x) sp(1) - слагаемое phi_pi.
    """
    chi = pi.similitude
    entries = []
    for beta, count in Counter(summand_query(pi.rep, SummandKind.LINE)).items():
        holds, generic = _condition(chi, v_power(2) * beta ** 2)
        if not holds:
            entries.append(PoleEntry(
                beta,
                PoleKind.SUBREGULAR_CASE1,
                Block(Character.unr(beta)),
                count,
                bessel_character(chi, beta),
                generic,
            ))
    for gamma, count in Counter(summand_query(pi.rep, SummandKind.STEINBERG)).items():
        holds, _ = _condition(chi, gamma ** 2)
        if holds:
            beta = gamma / V
            entries.append(PoleEntry(
                beta,
                PoleKind.SUBREGULAR_CASE2,
                Block(Character.unr(gamma), 1),
                count,
                bessel_character(chi, beta),
            ))
    return PoleReport.of(entries)


def ps_split(pi: Gsp4Param) -> tuple[SplitRational, SplitRational, SplitRational]:
    """(L_ex = 1, L_sub, L_Kir) с L(pi, s) = L_ex * L_sub * L_Kir."""
    full = lfactor(pi.rep)
    sub = subregular_poles(pi).lfactor()
    return UNIT, sub, full / sub


def hom_dim(pi: Gsp4Param, sigma: Gl2Param, root) -> int:
    """Предсказанная размерность Hom-пространства в точке root: 1 или 0."""
    return int(Scalar.of(root) in exceptional_poles(pi, sigma).roots())


def ideals_JK(pi: Gsp4Param) -> tuple[SplitRational, SplitRational]:
    """
    J = L(pi x St, s+1/2) / (L(pi, s) L(pi, s+1)),
    K = L_reg(pi x St, s+1/2) / (L(pi, s) L(pi, s+1)).
    """
    st = steinberg()
    spinor = lfactor(pi.rep)
    denominator = spinor * shift(spinor, 1)
    j_ideal = shift(nov_lfactor(pi, st), HALF) / denominator
    regular, _ = nov_split(pi, st)
    k_ideal = shift(regular, HALF) / denominator
    return j_ideal, k_ideal


def ratio_poles(pi: Gsp4Param) -> tuple[Scalar, ...]:
    """Полюса L(pi, s) L(pi, s+1) / L(pi x St, s+1/2); phi_St = sp(1)."""
    return langlands_ratio(pi.rep).poles()


def steinberg_line_pairs(pi: Gsp4Param) -> tuple[tuple[Block, Block], ...]:
    """
    Пары (rho (x) sp(1), rho|.|^{1/2}) для sigma = St (x) |.|^{1/2}: каждое
    двумерное слагаемое phi_pi даёт одномерное слагаемое phi_pi (x) phi_sigma.
    """
    half = Character.absolute(HALF)
    return tuple(
        (block, Block(block.part * half))
        for block in pi.rep.blocks
        if block.n == 1 and isinstance(block.part, Character)
    )


def specialize_param(pi: Gsp4Param, values: Mapping[str, Fraction]) -> Gsp4Param:
    """
    Подстановка рациональных значений в параметры Сатаке.

    Нулевой параметр Сатаке не задаёт характера, такая подстановка
    отклоняется.
    """
    special = pi.substitute(values)
    characters = [special.similitude]
    characters += [block.part for block in special.rep.blocks if isinstance(block.part, Character)]
    for chi in characters:
        if chi.satake.is_zero:
            raise ScalarZeroDivision(f"{pi} has a zero Satake parameter under {dict(values)}")
    log.debug("specialized %s to %s", pi, special)
    return special


def classify_specialized(pi: Gsp4Param, values: Mapping[str, Fraction]) -> PoleReport:
    """Субрегулярная классификация после подстановки рациональных значений."""
    return subregular_poles(specialize_param(pi, values))
