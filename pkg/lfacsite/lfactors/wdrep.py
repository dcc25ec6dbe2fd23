"""
Характеры F^x и представления Вейля-Делиня.

WD-представление хранится как мультимножество блоков (часть, n), что
соответствует сумме rho_i (x) sp(n_i). Часть - либо характер, либо формальное
неприводимое представление группы Вейля размерности >= 2 (IrredPart).

Нормировка sp(n): Фробениус действует как diag(q^{-1/2}, q^{1/2}) на sp(1),
поэтому L(unr(alpha) (x) sp(n), s) = 1/(1 - alpha*v^{-n}*X).
"""
import logging
from dataclasses import dataclass, replace
from enum import Enum
from fractions import Fraction
from typing import Iterable, Mapping

from .algebra import ONE, Scalar, SplitRational, UNIT, half_integer, shift, v_power
from .exceptions import TypeConstraintViolation, UnsupportedTensor

log = logging.getLogger(__name__)

# элемент свободной абелевой группы символов ветвления: ((имя, степень), ...)
Tag = tuple[tuple[str, int], ...]


def _tag_combine(left: Tag, right: Tag, k: int = 1) -> Tag:
    powers = dict(left)
    for name, e in right:
        powers[name] = powers.get(name, 0) + k * e
    return tuple(sorted((name, e) for name, e in powers.items() if e))


def tag_text(tag: Tag) -> str:
    return "*".join(name if e == 1 else f"{name}^{e}" for name, e in tag)


@dataclass(frozen=True)
class Character:
    """
    Характер F^x: (тег ветвления, параметр Сатаке).

    Для разветвлённых характеров satake - учётное значение твиста.
    """
    tag: Tag = ()
    satake: Scalar = ONE

    @classmethod
    def unr(cls, satake) -> "Character":
        return cls((), Scalar.of(satake))

    @classmethod
    def ram(cls, name: str, satake=ONE) -> "Character":
        return cls(((name, 1),), Scalar.of(satake))

    @classmethod
    def absolute(cls, t) -> "Character":
        """|.|^t, параметр Сатаке v^{-2t}."""
        return cls.unr(v_power(int(-2 * half_integer(t))))

    @property
    def is_unramified(self) -> bool:
        return not self.tag

    @property
    def is_trivial(self) -> bool:
        return self.is_unramified and self.satake.is_one

    @property
    def sort_key(self) -> tuple:
        return self.tag, self.satake.sort_key

    def __mul__(self, other: "Character") -> "Character":
        if not isinstance(other, Character):
            return NotImplemented
        return Character(_tag_combine(self.tag, other.tag), self.satake * other.satake)

    def inverse(self) -> "Character":
        return Character(_tag_combine((), self.tag, -1), self.satake.inverse())

    def __truediv__(self, other: "Character") -> "Character":
        if not isinstance(other, Character):
            return NotImplemented
        return self * other.inverse()

    def __pow__(self, k: int) -> "Character":
        return Character(_tag_combine((), self.tag, k), self.satake ** k)

    def substitute(self, values: Mapping[str, Fraction]) -> "Character":
        return replace(self, satake=self.satake.substitute(values))

    def __str__(self):
        if self.is_unramified:
            return f"unr({self.satake})"
        if self.satake.is_one:
            return f"ram({tag_text(self.tag)})"
        return f"ram({tag_text(self.tag)}, {self.satake})"


TRIVIAL = Character()


def char_mul(chi1: Character, chi2: Character) -> Character:
    return chi1 * chi2


@dataclass(frozen=True)
class IrredPart:
    """
    Формальное неприводимое представление группы Вейля размерности dim >= 2.

    sim - характер omega с rho^v = rho (x) omega^{-1}; для dim = 2 это всегда
    det. Если sim не объявлен, двойственное помечается флагом dual_label.
    twist - накопленный характерный твист относительно исходной метки.
    """
    dim: int
    label: str
    det: Character
    sim: Character | None = None
    twist: Character = TRIVIAL
    dual_label: bool = False

    def __post_init__(self):
        if self.dim < 2:
            raise TypeConstraintViolation(f"irreducible part {self.label} must have dimension >= 2")
        if self.dim == 2:
            if self.sim is None:
                object.__setattr__(self, "sim", self.det)
            elif self.sim != self.det:
                raise TypeConstraintViolation(
                    f"2-dimensional {self.label}: similitude must equal the determinant"
                )

    @property
    def sort_key(self) -> tuple:
        sim_key = () if self.sim is None else self.sim.sort_key
        return self.dim, self.label, self.dual_label, self.twist.sort_key, self.det.sort_key, sim_key

    def dual(self) -> "IrredPart":
        if self.sim is not None:
            omega = self.sim.inverse()
            return replace(
                self,
                det=self.det * omega ** self.dim,
                sim=self.sim * omega ** 2,
                twist=self.twist * omega,
            )
        return replace(
            self,
            det=self.det.inverse(),
            twist=self.twist.inverse(),
            dual_label=not self.dual_label,
        )

    def twisted(self, chi: Character) -> "IrredPart":
        return replace(
            self,
            det=self.det * chi ** self.dim,
            sim=None if self.sim is None else self.sim * chi ** 2,
            twist=self.twist * chi,
        )

    def is_dual_twin(self, other: "IrredPart") -> bool:
        """other изоморфно неразветвлённому твисту self^v."""
        dual = self.dual()
        if (other.dim, other.label, other.dual_label) != (dual.dim, dual.label, dual.dual_label):
            return False
        return (other.twist / dual.twist).is_unramified

    def substitute(self, values: Mapping[str, Fraction]) -> "IrredPart":
        return replace(
            self,
            det=self.det.substitute(values),
            sim=None if self.sim is None else self.sim.substitute(values),
            twist=self.twist.substitute(values),
        )

    def __str__(self):
        args = [str(self.dim), self.label, str(self.det)]
        if self.dim > 2 and self.sim is not None:
            args.append(f"sim={self.sim}")
        if not self.twist.is_trivial:
            args.append(f"twist={self.twist}")
        if self.dual_label:
            args.append("dual=1")
        return f"irr({', '.join(args)})"


WeilPart = Character | IrredPart


def part_dim(part: WeilPart) -> int:
    return 1 if isinstance(part, Character) else part.dim


@dataclass(frozen=True)
class Block:
    """Блок part (x) sp(n), размерность (n + 1) * dim(part)."""
    part: WeilPart
    n: int = 0

    def __post_init__(self):
        if self.n < 0:
            raise TypeConstraintViolation(f"sp({self.n}) is not defined")

    @property
    def dim(self) -> int:
        return (self.n + 1) * part_dim(self.part)

    @property
    def sort_key(self) -> tuple:
        kind = 0 if isinstance(self.part, Character) else 1
        return kind, self.part.sort_key, self.n

    def __str__(self):
        return f"{self.part} x sp({self.n})"


@dataclass(frozen=True)
class WDRep:
    """Мультимножество блоков; разложение единственно с точностью до порядка."""
    blocks: tuple[Block, ...] = ()

    @classmethod
    def of(cls, blocks: Iterable[Block]) -> "WDRep":
        return cls(tuple(sorted(blocks, key=lambda block: block.sort_key)))

    @classmethod
    def sp(cls, n: int) -> "WDRep":
        return cls.of([Block(TRIVIAL, n)])

    @classmethod
    def from_part(cls, part: WeilPart, n: int = 0) -> "WDRep":
        return cls.of([Block(part, n)])

    @property
    def dim(self) -> int:
        return sum(block.dim for block in self.blocks)

    @property
    def is_character_parted(self) -> bool:
        return all(isinstance(block.part, Character) for block in self.blocks)

    def __add__(self, other: "WDRep") -> "WDRep":
        if not isinstance(other, WDRep):
            return NotImplemented
        return WDRep.of(self.blocks + other.blocks)

    def substitute(self, values: Mapping[str, Fraction]) -> "WDRep":
        return WDRep.of(replace(block, part=block.part.substitute(values)) for block in self.blocks)

    def __str__(self):
        if not self.blocks:
            return "rep()"
        return " + ".join(str(block) for block in self.blocks)


def dual(rep: WDRep) -> WDRep:
    """Поблочно двойственное; sp(n) самодвойственно."""
    return WDRep.of(
        Block(block.part.inverse() if isinstance(block.part, Character) else block.part.dual(), block.n)
        for block in rep.blocks
    )


def _twist_part(part: WeilPart, chi: Character) -> WeilPart:
    return part * chi if isinstance(part, Character) else part.twisted(chi)


def twist(rep: WDRep, chi: Character) -> WDRep:
    """rho -> rho (x) chi поблочно."""
    if chi.is_trivial:
        return rep
    return WDRep.of(Block(_twist_part(block.part, chi), block.n) for block in rep.blocks)


def sp_tensor(m: int, n: int) -> tuple[int, ...]:
    """Правило Клебша-Гордана: sp(m) (x) sp(n) = sp(m+n) + sp(m+n-2) + ... + sp(|m-n|)."""
    return tuple(range(m + n, abs(m - n) - 1, -2))


def _part_product(left: WeilPart, right: WeilPart) -> WeilPart:
    if isinstance(left, Character) and isinstance(right, Character):
        return left * right
    if isinstance(left, Character):
        return right.twisted(left)
    if isinstance(right, Character):
        return left.twisted(right)
    raise UnsupportedTensor(f"{left} x {right}: both parts are irreducible of dimension >= 2")


def tensor(first: WDRep, second: WDRep) -> WDRep:
    blocks = []
    for a in first.blocks:
        for b in second.blocks:
            part = _part_product(a.part, b.part)
            blocks.extend(Block(part, k) for k in sp_tensor(a.n, b.n))
    return WDRep.of(blocks)


def _block_root(block: Block) -> Scalar | None:
    """Обратный корень L-фактора блока или None, если L-фактор равен 1."""
    part = block.part
    if isinstance(part, Character) and part.is_unramified:
        return part.satake * v_power(-block.n)
    return None


def block_lfactor(rep: WDRep, n: int | None = None) -> SplitRational:
    """Произведение L-факторов блоков (только блоков с данным n, если n задан)."""
    roots = [
        _block_root(block)
        for block in rep.blocks
        if n is None or block.n == n
    ]
    return SplitRational.build(factors=[(root, -1) for root in roots if root is not None])


def lfactor(rep: WDRep) -> SplitRational:
    """L(rho, s) = prod L(rho_i, s + n_i/2)."""
    return block_lfactor(rep)


def pair_lfactor(first: WDRep, second: WDRep) -> SplitRational:
    """
    L-фактор тензорного произведения без построения самого произведения.

    Пара неприводимых частей вносит 1, если одна не является
    неразветвлённым твистом двойственной к другой; иначе разложение
    неизвестно и бросается UnsupportedTensor.
    """
    result = UNIT
    for a in first.blocks:
        for b in second.blocks:
            if isinstance(a.part, IrredPart) and isinstance(b.part, IrredPart):
                if a.part.is_dual_twin(b.part):
                    raise UnsupportedTensor(f"{a.part} x {b.part}: twin pair has an unramified line")
                continue
            result = result * lfactor(tensor(WDRep.of([a]), WDRep.of([b])))
    return result


class SummandKind(str, Enum):
    LINE = "line"
    STEINBERG = "steinberg"


def summand_query(rep: WDRep, kind: SummandKind | str) -> tuple[Scalar, ...]:
    """
    Параметры Сатаке неразветвлённых слагаемых.

    line - блоки unr(alpha) (x) sp(0), steinberg - блоки unr(gamma) (x) sp(1).
    Возвращается мультимножество в каноническом порядке.
    """
    n = {SummandKind.LINE: 0, SummandKind.STEINBERG: 1}[SummandKind(kind)]
    found = [
        block.part.satake
        for block in rep.blocks
        if block.n == n and isinstance(block.part, Character) and block.part.is_unramified
    ]
    return tuple(sorted(found, key=lambda s: s.sort_key))


def similitude_check(rep: WDRep, chi: Character) -> bool:
    """phi = phi^v (x) chi как мультимножества блоков."""
    return twist(dual(rep), chi) == rep


def langlands_ratio(rep: WDRep) -> SplitRational:
    """L(rho, s) L(rho, s+1) / L(rho (x) sp(1), s + 1/2)."""
    factor = lfactor(rep)
    numerator = factor * shift(factor, 1)
    return numerator / shift(lfactor(tensor(rep, WDRep.sp(1))), Fraction(1, 2))
