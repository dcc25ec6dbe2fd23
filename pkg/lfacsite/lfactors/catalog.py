"""
Параметры Ленглендса для GL(2) и GSp(4), тета-лифт и L-факторы пар.

Формы IIIa, IVa, VII, VIIIa, IXa, SC и I зашиты в код; формы IIa, Va,
VIa, X, XIa читаются из файла каталога (внешние данные, переписанные из
таблиц Робертса-Шмидта). FREE принимает любой 4-мерный параметр.
"""
import json
import logging
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from pathlib import Path
from typing import Mapping

from django.conf import settings

from .algebra import SplitRational
from .exceptions import (
    CatalogFormatError,
    CentralCharacterMismatch,
    ConsistencyError,
    SimilitudeViolation,
    TypeConstraintViolation,
    UnsupportedPair,
    UnsupportedTensor,
)
from .serializers import CatalogSerializer
from .wdrep import (
    TRIVIAL,
    Block,
    Character,
    IrredPart,
    WDRep,
    lfactor,
    pair_lfactor,
    similitude_check,
    tensor,
    twist,
)

log = logging.getLogger(__name__)


class Gl2Kind(str, Enum):
    PRINCIPAL_SERIES = "principal-series"
    STEINBERG_TWIST = "steinberg-twist"
    SUPERCUSPIDAL = "supercuspidal"


@dataclass(frozen=True)
class Gl2Param:
    """
    Параметр неприводимого (или помеченного приводимым) представления GL(2).

    inducing - индуцирующие характеры (chi1, chi2) для главной серии и
    (chi,) для твиста Стейнберга.
    """
    rep: WDRep
    central: Character
    kind: Gl2Kind
    reducible: bool = False
    inducing: tuple[Character, ...] = ()

    @property
    def part(self) -> IrredPart:
        """Неприводимая часть суперкаспидального параметра."""
        return self.rep.blocks[0].part

    def __str__(self):
        if self.kind is Gl2Kind.PRINCIPAL_SERIES:
            flag = ", reducible=1" if self.reducible else ""
            return f"gl2.PS({self.inducing[0]}, {self.inducing[1]}{flag})"
        if self.kind is Gl2Kind.STEINBERG_TWIST:
            chi = self.inducing[0]
            return "gl2.St()" if chi.is_trivial else f"gl2.St({chi})"
        part = self.part
        if part.twist.is_trivial and not part.dual_label:
            return f"gl2.SC({part.label}, {part.det})"
        return f"gl2.SC({part})"


def principal_series(chi1: Character, chi2: Character, reducible: bool = False) -> Gl2Param:
    """
    i(chi1, chi2). При chi1/chi2 = |.|^{+-1} представление приводимо, и его
    можно построить только с явным флагом reducible.
    """
    ratio = chi1 / chi2
    special = ratio in (Character.absolute(1), Character.absolute(-1))
    if special and not reducible:
        raise TypeConstraintViolation(
            f"principal series ({chi1}, {chi2}) is reducible; pass the reducible flag"
        )
    if reducible and not special:
        raise TypeConstraintViolation(f"principal series ({chi1}, {chi2}) is irreducible")
    return Gl2Param(
        rep=WDRep.of([Block(chi1), Block(chi2)]),
        central=chi1 * chi2,
        kind=Gl2Kind.PRINCIPAL_SERIES,
        reducible=special,
        inducing=(chi1, chi2),
    )


def steinberg(chi: Character = TRIVIAL) -> Gl2Param:
    return Gl2Param(
        rep=WDRep.from_part(chi, 1),
        central=chi ** 2,
        kind=Gl2Kind.STEINBERG_TWIST,
        inducing=(chi,),
    )


def supercuspidal(label: str | IrredPart, det: Character | None = None) -> Gl2Param:
    if isinstance(label, IrredPart):
        part = label
        if part.dim != 2:
            raise TypeConstraintViolation(f"{part} is not 2-dimensional")
    else:
        part = IrredPart(2, label, det if det is not None else TRIVIAL)
    return Gl2Param(rep=WDRep.from_part(part), central=part.det, kind=Gl2Kind.SUPERCUSPIDAL)


def gl2_param(kind: Gl2Kind | str, *data, reducible: bool = False) -> Gl2Param:
    """Построить параметр GL(2) по виду и данным."""
    kind = Gl2Kind(kind)
    if kind is Gl2Kind.PRINCIPAL_SERIES:
        _expect_arity(kind.value, data, 2)
        return principal_series(*data, reducible=reducible)
    if reducible:
        raise TypeConstraintViolation(f"the reducible flag applies to principal series only, not {kind.value}")
    if kind is Gl2Kind.STEINBERG_TWIST:
        _expect_arity(kind.value, data, 0, 1)
        return steinberg(*data)
    _expect_arity(kind.value, data, 1, 2)
    return supercuspidal(*data)


def gl2_twist(tau: Gl2Param, chi: Character) -> Gl2Param:
    if tau.kind is Gl2Kind.PRINCIPAL_SERIES:
        chi1, chi2 = tau.inducing
        return principal_series(chi1 * chi, chi2 * chi, reducible=tau.reducible)
    if tau.kind is Gl2Kind.STEINBERG_TWIST:
        return steinberg(tau.inducing[0] * chi)
    return supercuspidal(tau.part.twisted(chi))


def _expect_arity(name: str, data: tuple, *allowed: int):
    if len(data) not in allowed:
        expected = " or ".join(str(n) for n in allowed)
        raise TypeConstraintViolation(f"{name} takes {expected} arguments, got {len(data)}")


class StType(str, Enum):
    I = "I"  # noqa: E741
    IIa = "IIa"
    IIIa = "IIIa"
    IVa = "IVa"
    Va = "Va"
    VIa = "VIa"
    VII = "VII"
    VIIIa = "VIIIa"
    IXa = "IXa"
    X = "X"
    XIa = "XIa"
    SC = "SC"
    FREE = "FREE"


# типы, которые строятся по файлу каталога
CATALOG_TYPES = (StType.IIa, StType.Va, StType.VIa, StType.X, StType.XIa)


@dataclass(frozen=True)
class Gsp4Param:
    """
    Параметр phi_pi представления GSp(4) с характером подобия chi_pi.

    Параметры сравниваются только по (rep, similitude). st_type, theta
    (пара tau1, tau2 у тета-лифта) и data (исходные данные конструктора)
    нужны лишь для записи параметра.
    """
    rep: WDRep
    similitude: Character
    st_type: StType = field(default=StType.FREE, compare=False)
    theta: tuple[Gl2Param, Gl2Param] | None = field(default=None, compare=False)
    data: tuple = field(default=(), compare=False)

    def substitute(self, values: Mapping[str, Fraction]) -> "Gsp4Param":
        return Gsp4Param(self.rep.substitute(values), self.similitude.substitute(values), StType.FREE)

    def __str__(self):
        if self.theta is not None:
            return f"theta({self.theta[0]}, {self.theta[1]})"
        if self.st_type is StType.FREE or not self.data:
            return f"gsp4.FREE({self.rep}, {self.similitude})"
        return f"gsp4.{self.st_type.value}({', '.join(str(item) for item in self.data)})"


def _check_not_absolute(chi: Character, what: str):
    if chi in (Character.absolute(1), Character.absolute(-1)):
        raise TypeConstraintViolation(f"{what} = |.|^(+-1) makes the induced representation reducible")


def _type_i(chi1: Character, chi2: Character, sigma: Character):
    _check_not_absolute(chi1, "chi1")
    _check_not_absolute(chi2, "chi2")
    _check_not_absolute(chi1 * chi2, "chi1*chi2")
    _check_not_absolute(chi1 / chi2, "chi1/chi2")
    lines = [sigma * chi1 * chi2, sigma * chi1, sigma * chi2, sigma]
    return WDRep.of(Block(line) for line in lines), sigma ** 2 * chi1 * chi2


def _type_iiia(chi_a: Character, chi_b: Character):
    if chi_a == chi_b:
        raise TypeConstraintViolation("IIIa needs two distinct characters")
    return WDRep.of([Block(chi_a, 1), Block(chi_b, 1)]), chi_a * chi_b


def _type_iva(sigma: Character):
    return WDRep.from_part(sigma, 3), sigma ** 2


def _type_vii(label: str, det: Character, chi: Character):
    if chi.is_trivial:
        raise TypeConstraintViolation("VII needs a nontrivial twisting character")
    rho = IrredPart(2, label, det)
    return WDRep.of([Block(rho), Block(rho.twisted(chi))]), det * chi


def _type_viiia(label: str, det: Character):
    rho = IrredPart(2, label, det)
    return WDRep.of([Block(rho), Block(rho)]), det


def _type_ixa(label: str, det: Character):
    return WDRep.from_part(IrredPart(2, label, det), 1), det


def _type_sc(*data):
    if len(data) == 2:
        label, sim = data
        return WDRep.from_part(IrredPart(4, label, sim ** 2, sim=sim)), sim
    _expect_arity("SC", data, 2, 3)
    first, second, det = data
    if first == second:
        raise TypeConstraintViolation("SC needs two distinct 2-dimensional parts")
    parts = [IrredPart(2, first, det), IrredPart(2, second, det)]
    return WDRep.of(Block(part) for part in parts), det


def _type_free(rep: WDRep, sim: Character):
    return rep, sim


_BUILDERS = {
    StType.I: (_type_i, 3),
    StType.IIIa: (_type_iiia, 2),
    StType.IVa: (_type_iva, 1),
    StType.VII: (_type_vii, 3),
    StType.VIIIa: (_type_viiia, 2),
    StType.IXa: (_type_ixa, 2),
    StType.SC: (_type_sc, None),
    StType.FREE: (_type_free, 2),
}


def gsp4_param(st_type: StType | str, *data, catalog: "Catalog | None" = None) -> Gsp4Param:
    """
    Построить параметр GSp(4) заданного типа.

    Проверяется размерность 4 и phi = phi^v (x) chi_pi.
    """
    st_type = StType(st_type)
    if st_type in CATALOG_TYPES:
        catalog = catalog if catalog is not None else load_catalog()
        rep, sim = catalog.build(st_type, data)
    else:
        builder, arity = _BUILDERS[st_type]
        if arity is not None:
            _expect_arity(st_type.value, data, arity)
        rep, sim = builder(*data)
    param = Gsp4Param(rep, sim, st_type, data=data)
    validate_gsp4(param)
    return param


def validate_gsp4(param: Gsp4Param):
    if param.rep.dim != 4:
        raise TypeConstraintViolation(f"GSp(4) parameter must be 4-dimensional, got {param.rep.dim}")
    if not similitude_check(param.rep, param.similitude):
        raise SimilitudeViolation(f"{param.rep} is not symplectic-similitude for {param.similitude}")


def gsp4_twist(pi: Gsp4Param, chi: Character) -> Gsp4Param:
    """pi (x) chi: phi_pi (x) chi с подобием chi_pi * chi^2."""
    theta = None
    if pi.theta is not None:
        theta = (gl2_twist(pi.theta[0], chi), gl2_twist(pi.theta[1], chi))
    return Gsp4Param(twist(pi.rep, chi), pi.similitude * chi ** 2, pi.st_type, theta)


def theta_lift(tau1: Gl2Param, tau2: Gl2Param) -> Gsp4Param:
    """theta(tau1 x tau2): сумма параметров GL(2) с общим центральным характером."""
    if tau1.central != tau2.central:
        raise CentralCharacterMismatch(
            f"central characters {tau1.central} and {tau2.central} differ"
        )
    param = Gsp4Param(tau1.rep + tau2.rep, tau1.central, StType.FREE, theta=(tau1, tau2))
    validate_gsp4(param)
    return param


def cor62_lfactor(pi: Gsp4Param, sigma: Gl2Param) -> SplitRational:
    """L(pi x chi1, s) L(pi x chi2, s) для sigma = i(chi1, chi2)."""
    if sigma.kind is not Gl2Kind.PRINCIPAL_SERIES:
        raise TypeConstraintViolation("the product formula needs a principal series sigma")
    chi1, chi2 = sigma.inducing
    return lfactor(twist(pi.rep, chi1)) * lfactor(twist(pi.rep, chi2))


def nov_lfactor(pi: Gsp4Param, sigma: Gl2Param) -> SplitRational:
    """
    L-фактор Новодворского L(pi x sigma, s) = L(phi_pi (x) phi_sigma, s).

    Если тензорное произведение содержит пару неприводимых частей,
    L-фактор считается попарно; для главной серии ответ сверяется с
    произведением L(pi x chi1) L(pi x chi2).
    """
    try:
        result = lfactor(tensor(pi.rep, sigma.rep))
    except UnsupportedTensor:
        result = pair_lfactor(pi.rep, sigma.rep)
    if sigma.kind is Gl2Kind.PRINCIPAL_SERIES:
        expected = cor62_lfactor(pi, sigma)
        if expected != result:
            log.error("tensor route %s and product route %s disagree for %s x %s", result, expected, pi, sigma)
            raise ConsistencyError(f"L-factor of {pi} x {sigma}: {result} != {expected}")
        log.debug("product formula confirmed for %s x %s", pi, sigma)
    return result


def rs_lfactor(tau: Gl2Param, sigma: Gl2Param) -> SplitRational:
    """L-фактор Ранкина-Сельберга L(tau x sigma, s) для GL(2) x GL(2)."""
    if tau.kind is Gl2Kind.SUPERCUSPIDAL and sigma.kind is Gl2Kind.SUPERCUSPIDAL:
        if tau.part.is_dual_twin(sigma.part):
            raise UnsupportedPair(f"{sigma} is an unramified twist of the dual of {tau}")
        return SplitRational()
    return lfactor(tensor(tau.rep, sigma.rep))


# --- файл каталога ---------------------------------------------------------


@dataclass
class CatalogEntry:
    name: str
    params: dict[str, str]
    blocks: list[dict]
    similitude: dict[str, int]
    constraints: list[dict]
    note: str = ""


@dataclass
class Catalog:
    """Содержимое файла каталога после проверки формата."""
    version: int
    source: str
    entries: dict[str, CatalogEntry]
    path: str = ""

    def build(self, st_type: StType, data: tuple) -> tuple[WDRep, Character]:
        entry = self.entries.get(st_type.value)
        if entry is None:
            raise CatalogFormatError(f"catalog {self.path} has no entry for type {st_type.value}")
        _expect_arity(st_type.value, data, len(entry.params))
        values = dict(zip(entry.params, data))
        for name, kind in entry.params.items():
            value = values[name]
            if kind == "character" and not isinstance(value, Character):
                raise TypeConstraintViolation(f"{st_type.value}: {name} must be a character")
            if kind == "irred2" and not (isinstance(value, IrredPart) and value.dim == 2):
                raise TypeConstraintViolation(f"{st_type.value}: {name} must be a 2-dimensional irreducible part")
        for constraint in entry.constraints:
            _check_constraint(st_type, constraint, values[constraint["param"]])
        blocks = []
        for template in entry.blocks:
            chi = _monomial(template["char"], values)
            irred = template["irred"]
            part = values[irred].twisted(chi) if irred else chi
            blocks.append(Block(part, template["n"]))
        return WDRep.of(blocks), _monomial(entry.similitude, values)


def _monomial(powers: dict[str, int], values: dict) -> Character:
    chi = TRIVIAL
    for key, exponent in powers.items():
        if key.startswith("det:"):
            chi = chi * values[key[4:]].det ** exponent
        else:
            chi = chi * values[key] ** exponent
    return chi


def _check_constraint(st_type: StType, constraint: dict, value):
    kind = constraint["kind"]
    if kind == "nontrivial_quadratic":
        if value.is_trivial or not (value ** 2).is_trivial:
            raise TypeConstraintViolation(f"{st_type.value}: {value} must be a nontrivial quadratic character")
    elif kind == "trivial_det":
        if not value.det.is_trivial:
            raise TypeConstraintViolation(f"{st_type.value}: {value} must have trivial determinant")


def parse_catalog(payload: dict, path: str = "") -> Catalog:
    serializer = CatalogSerializer(data=payload)
    if not serializer.is_valid():
        raise CatalogFormatError(f"catalog {path} is malformed", errors=serializer.errors)
    data = serializer.validated_data
    entries = {}
    for name, entry in data["types"].items():
        if name not in {t.value for t in CATALOG_TYPES}:
            log.warning("catalog %s: type %s is not built from the catalog, entry ignored", path, name)
            continue
        entries[name] = CatalogEntry(
            name=name,
            params=dict(entry["params"]),
            blocks=[dict(block) for block in entry["blocks"]],
            similitude=dict(entry["similitude"]),
            constraints=[dict(c) for c in entry["constraints"]],
            note=entry["note"],
        )
    return Catalog(version=data["version"], source=data["source"], entries=entries, path=path)


@lru_cache(maxsize=8)
def _load_catalog_file(path: str) -> Catalog:
    try:
        payload = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise CatalogFormatError(f"cannot read catalog {path}: {exc}") from exc
    catalog = parse_catalog(payload, path)
    log.debug("catalog %s loaded: %s", path, ", ".join(catalog.entries))
    return catalog


def load_catalog(path: str | Path | None = None) -> Catalog:
    """Каталог из файла; по умолчанию LFAC["CATALOG_FILE"]."""
    if path is None:
        path = settings.LFAC["CATALOG_FILE"]
    return _load_catalog_file(str(Path(path).resolve()))
