"""
Точные проверки тождеств для L-факторов.

Каждая проверка возвращает CheckReport; набор (suite) прогоняет проверку
на засеянных случайных входах и сливает отчёты в порядке seed.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Callable

import sympy
from django.conf import settings

from lfactors.algebra import (
    UNIT,
    V,
    SplitRational,
    X_NAME,
    ideal_generator,
    shift,
    symbol,
    v_power,
)
from lfactors.catalog import (
    Catalog,
    Gl2Kind,
    Gl2Param,
    Gsp4Param,
    StType,
    cor62_lfactor,
    gsp4_param,
    gsp4_twist,
    load_catalog,
    nov_lfactor,
    rs_lfactor,
    steinberg,
    theta_lift,
)
from lfactors.exceptions import ConsistencyError, LfacError
from lfactors.poles import (
    PoleKind,
    classify_specialized,
    exceptional_poles,
    ideals_JK,
    ratio_poles,
    subregular_poles,
)
from lfactors.wdrep import (
    Character,
    IrredPart,
    WDRep,
    block_lfactor,
    langlands_ratio,
    lfactor,
    tensor,
    twist,
)

from .generators import (
    Draw,
    TrialProfile,
    random_gl2,
    random_gsp4,
    random_rep,
    random_split_rationals,
    random_theta,
    random_values,
    trial_seed,
)

log = logging.getLogger(__name__)

HALF = Fraction(1, 2)


@dataclass(frozen=True)
class Failure:
    seed: int | None
    counterexample: str
    detail: str


@dataclass(frozen=True)
class CheckReport:
    """Итог проверки: пустой список failures означает успех."""
    identity: str
    trials: int
    failures: tuple[Failure, ...] = ()

    @property
    def passed(self) -> bool:
        return not self.failures


def _report(identity: str, counterexample: str, mismatches: list[str], seed: int | None) -> CheckReport:
    failures = tuple(Failure(seed, counterexample, detail) for detail in mismatches)
    return CheckReport(identity, 1, failures)


def _compare(mismatches: list[str], name: str, left, right):
    if left != right:
        mismatches.append(f"{name}: {left} != {right}")


# --- отдельные проверки ----------------------------------------------------


def check_lemma71(rho: WDRep, seed: int | None = None) -> CheckReport:
    """
    Тождество 1: L(s) L(s+1) / L(rho (x) sp(1), s+1/2) = prod_{n_i=0} L(rho_i, s).
    Тождество 2: то же для rho (x) sp(1), сдвинутое на 1/2, выделяет блоки с n_i = 1.
    """
    mismatches = []
    _compare(mismatches, "identity 1", langlands_ratio(rho), block_lfactor(rho, 0))
    with_sp1 = tensor(rho, WDRep.sp(1))
    _compare(mismatches, "identity 2", shift(langlands_ratio(with_sp1), HALF), block_lfactor(rho, 1))
    return _report("lemma71", str(rho), mismatches, seed)


def _product_route(pi: Gsp4Param, sigma: Gl2Param) -> SplitRational:
    """L(pi x sigma) без тензорного произведения параметров."""
    if sigma.kind is Gl2Kind.PRINCIPAL_SERIES:
        return cor62_lfactor(pi, sigma)
    rho = twist(pi.rep, sigma.inducing[0])
    factor = lfactor(rho)
    return shift(factor * shift(factor, 1) / block_lfactor(rho, 0), -HALF)


def check_theoremA(pi: Gsp4Param, sigma: Gl2Param, seed: int | None = None) -> CheckReport:
    """
    Тензорный и произведенческий пути дают один L(pi x sigma). Для
    sigma = St (x) chi задача сводится к St твистом pi на chi, и для
    IIIa, IVa и суперкаспидальных pi проверяются их формулы.
    """
    if sigma.kind is Gl2Kind.SUPERCUSPIDAL:
        raise ValueError("the Langlands = Novodvorsky check needs a non-supercuspidal sigma")
    mismatches = []
    counterexample = f"{pi} ; {sigma}"
    try:
        tensor_route = nov_lfactor(pi, sigma)
    except LfacError as exc:
        return _report("theoremA", counterexample, [f"tensor route failed: {exc}"], seed)
    _compare(mismatches, "tensor vs product route", tensor_route, _product_route(pi, sigma))
    if sigma.kind is Gl2Kind.STEINBERG_TWIST:
        base = gsp4_twist(pi, sigma.inducing[0])
        _compare(mismatches, "twist reduction to St", tensor_route, nov_lfactor(base, steinberg()))
        if base.st_type in (StType.IIIa, StType.IVa):
            spinor = lfactor(base.rep)
            _compare(
                mismatches, "L(pi x St, s+1/2) vs L(pi, s) L(pi, s+1)",
                shift(tensor_route, HALF), spinor * shift(spinor, 1),
            )
            if len(subregular_poles(base)):
                mismatches.append(f"{base.st_type.value} has subregular poles")
        if base.st_type is StType.SC:
            _compare(mismatches, "supercuspidal L(pi x St)", tensor_route, UNIT)
    return _report("theoremA", counterexample, mismatches, seed)


def check_cor62(pi: Gsp4Param, sigma: Gl2Param, seed: int | None = None) -> CheckReport:
    """
    L(phi_pi (x) (chi1 + chi2)) = L(pi x chi1) L(pi x chi2); у тета-лифта
    оба равны ещё и L(tau1 x sigma) L(tau2 x sigma).
    """
    counterexample = f"{pi} ; {sigma}"
    product = cor62_lfactor(pi, sigma)
    mismatches = []
    _compare(mismatches, "tensor route vs product", lfactor(tensor(pi.rep, sigma.rep)), product)
    try:
        nov_lfactor(pi, sigma)
    except ConsistencyError as exc:
        mismatches.append(str(exc))
    if pi.theta is not None:
        tau1, tau2 = pi.theta
        theta_product = rs_lfactor(tau1, sigma) * rs_lfactor(tau2, sigma)
        _compare(mismatches, "product vs theta factorisation", product, theta_product)
    return _report("cor62", counterexample, mismatches, seed)


def check_soudry(tau1: Gl2Param, tau2: Gl2Param, sigma: Gl2Param, seed: int | None = None) -> CheckReport:
    """L(theta(tau1, tau2) x sigma) = L(tau1 x sigma) L(tau2 x sigma)."""
    pi = theta_lift(tau1, tau2)
    mismatches = []
    _compare(mismatches, "product formula", nov_lfactor(pi, sigma), rs_lfactor(tau1, sigma) * rs_lfactor(tau2, sigma))
    return _report("soudry", f"{pi} ; {sigma}", mismatches, seed)


def check_pole_oracle(pi: Gsp4Param, sigma: Gl2Param, seed: int | None = None) -> CheckReport:
    """
    Исключительные корни = полюса отношения L(T,s) L(T,s+1) / L(T (x) sp(1), s+1/2)
    для T = phi_pi (x) phi_sigma, на которых chi_pi chi_sigma |.|^{2s0} = 1.
    """
    ratio = langlands_ratio(tensor(pi.rep, sigma.rep))
    chi = pi.similitude * sigma.central
    expected = {
        beta for beta in ratio.poles()
        if chi.is_unramified and chi.satake == beta ** 2
    }
    actual = set(exceptional_poles(pi, sigma).roots())
    mismatches = []
    if expected != actual:
        mismatches.append(
            f"enumeration {sorted(map(str, expected))} != classifier {sorted(map(str, actual))}"
        )
    return _report("poles", f"{pi} ; {sigma}", mismatches, seed)


def check_theoremC(pi: Gsp4Param, seed: int | None = None) -> CheckReport:
    """
    При chi_pi |.|^{2s0+1} != 1 субрегулярность равносильна полюсу отношения
    L(pi, s) L(pi, s+1) / L(pi x St, s+1/2); при равенстве случай 2
    равносилен исключительному полюсу L(pi x St) в точке beta*v.
    """
    chi = pi.similitude
    report = subregular_poles(pi)
    ratio = set(ratio_poles(pi))
    case1 = set(report.roots(PoleKind.SUBREGULAR_CASE1))
    mismatches = []
    for beta in ratio | case1:
        condition = chi.is_unramified and chi.satake == v_power(2) * beta ** 2
        if not condition and (beta in case1) != (beta in ratio):
            mismatches.append(f"root {beta}: case 1 {beta in case1}, ratio pole {beta in ratio}")
    case2 = set(report.roots(PoleKind.SUBREGULAR_CASE2))
    shifted = {root / V for root in exceptional_poles(pi, steinberg()).roots()}
    if case2 != shifted:
        mismatches.append(f"case 2 {sorted(map(str, case2))} != exceptional/v {sorted(map(str, shifted))}")
    return _report("theoremC", str(pi), mismatches, seed)


def _param_symbols(pi: Gsp4Param) -> set[str]:
    """Символы параметров Сатаке, кроме v."""
    characters = [pi.similitude]
    for block in pi.rep.blocks:
        if isinstance(block.part, Character):
            characters.append(block.part)
        else:
            characters += [block.part.det, block.part.twist] + ([block.part.sim] if block.part.sim else [])
    return {name for chi in characters for name in chi.satake.symbol_names} - {"v"}


def check_specialized_classification(
    pi: Gsp4Param, values: dict[str, Fraction], seed: int | None = None
) -> CheckReport:
    """
    После подстановки негенерические корни случая 1 остаются в случае 1,
    а новых корней случая 1 не появляется.
    """
    case1 = [entry for entry in subregular_poles(pi).entries if entry.kind is PoleKind.SUBREGULAR_CASE1]
    stable = {entry.root.substitute(values) for entry in case1 if not entry.generic}
    possible = {entry.root.substitute(values) for entry in case1}
    actual = set(classify_specialized(pi, values).roots(PoleKind.SUBREGULAR_CASE1))
    mismatches = []
    if not stable <= actual:
        mismatches.append(f"case 1 roots {sorted(map(str, stable - actual))} lost under {values}")
    if not actual <= possible:
        mismatches.append(f"case 1 roots {sorted(map(str, actual - possible))} appeared under {values}")
    return _report("theoremC", str(pi), mismatches, seed)


def check_catalog_shape(pi: Gsp4Param) -> CheckReport:
    """
    Таблица полюсов: у IIIa и IVa нет субрегулярных полюсов, у остальных
    каждый полюс L(pi, s) субрегулярен. Для L(pi, s) != 1: J и K
    целые, J | K, K обращается в ноль ровно в субрегулярных корнях, а J
    не обращается в ноль в корнях случая 2.
    """
    mismatches = []
    spinor = lfactor(pi.rep)
    report = subregular_poles(pi)
    subregular = set(report.roots())
    if pi.st_type in (StType.IIIa, StType.IVa):
        if subregular:
            mismatches.append(f"{pi.st_type.value} reports subregular roots {sorted(map(str, subregular))}")
    elif set(spinor.poles()) != subregular:
        mismatches.append(f"poles {sorted(map(str, spinor.poles()))} != subregular {sorted(map(str, subregular))}")
    if not spinor.is_one:
        j_ideal, k_ideal = ideals_JK(pi)
        for name, ideal in (("J", j_ideal), ("K", k_ideal), ("K/J", k_ideal / j_ideal)):
            if ideal.poles() or ideal.xpower or not ideal.unit.is_one:
                mismatches.append(f"{name} = {ideal} is not integral")
        if set(k_ideal.zeros()) != subregular:
            mismatches.append(f"zeros of K {sorted(map(str, k_ideal.zeros()))} != subregular roots")
        for beta in report.roots(PoleKind.SUBREGULAR_CASE2):
            if j_ideal.order_at(beta):
                mismatches.append(f"J vanishes at the case 2 root {beta}")
    return _report("table", str(pi), mismatches, None)


# --- оракул для образующей идеала ------------------------------------------


def _laurent_normal(poly: sympy.Poly) -> sympy.Poly:
    """Убрать степень X и нормировать свободный член к 1."""
    lowest = min(monom[0] for monom in poly.monoms())
    poly = poly.exquo(sympy.Poly(symbol(X_NAME) ** lowest, symbol(X_NAME), domain=sympy.QQ))
    return poly.quo_ground(poly.coeff_monomial(1))


def _as_polys(expr) -> tuple[sympy.Poly, sympy.Poly]:
    x = symbol(X_NAME)
    num, den = sympy.fraction(sympy.cancel(sympy.together(expr)))
    return sympy.Poly(num, x, domain=sympy.QQ), sympy.Poly(den, x, domain=sympy.QQ)


def brute_force_generator(fs: list[SplitRational], values: dict[str, Fraction]) -> tuple[sympy.Poly, sympy.Poly]:
    """
    Образующая идеала после подстановки: НОД числителей над общим
    знаменателем, с точностью до обратимых элементов Q[X, 1/X].
    """
    replacements = {symbol(n): sympy.Rational(f.numerator, f.denominator) for n, f in values.items()}
    pairs = [_as_polys(f.as_expr().xreplace(replacements)) for f in fs]
    common = reduce(lambda left, right: left.lcm(right), [den for _, den in pairs])
    numerator = reduce(lambda left, right: left.gcd(right), [num * common.exquo(den) for num, den in pairs])
    shared = numerator.gcd(common)
    return _laurent_normal(numerator.exquo(shared)), _laurent_normal(common.exquo(shared))


def _specialization_is_clean(fs: list[SplitRational], values: dict[str, Fraction]) -> bool:
    """Корни не обнуляются и не склеиваются, знаменатели не обращаются в ноль."""
    roots = {beta for f in fs for beta in f.roots}
    images = [beta.specialize(values) for beta in roots]
    if any(image is None or image == 0 for image in images):
        return False
    if len(set(images)) != len(images):
        return False
    return all(f.unit.specialize(values) not in (None, 0) for f in fs)


def check_ideal_oracle(fs: list[SplitRational], draw: Draw, seed: int | None = None) -> CheckReport:
    counterexample = " , ".join(str(f) for f in fs)
    names = {"v"} | {name for f in fs for beta in f.roots + (f.unit,) for name in beta.symbol_names}
    for _ in range(settings.LFAC["SPECIALIZE_ATTEMPTS"]):
        values = random_values(draw, names)
        if _specialization_is_clean(fs, values):
            break
    else:
        log.warning("no clean specialization found for %s", counterexample)
        return _report("ideal", counterexample, [], seed)
    generator = ideal_generator(fs).generator
    expected = brute_force_generator(fs, values)
    actual = brute_force_generator([generator], values)
    mismatches = []
    if expected != actual:
        mismatches.append(f"generator {generator} disagrees with the gcd oracle at {values}")
    return _report("ideal", counterexample, mismatches, seed)


# --- наборы ----------------------------------------------------------------


def catalog_shapes(catalog: Catalog | None = None) -> list[Gsp4Param]:
    """Все формы каталога над независимыми символами."""
    if catalog is None:
        catalog = load_catalog()
    unr = Character.unr
    a, b, c = (unr(symbol(name)) for name in "abc")
    return [
        gsp4_param(StType.I, a, b, c),
        gsp4_param(StType.IIa, a, b, catalog=catalog),
        gsp4_param(StType.IIIa, a, b),
        gsp4_param(StType.IVa, a),
        gsp4_param(StType.Va, a, unr(-1), catalog=catalog),
        gsp4_param(StType.VIa, a, catalog=catalog),
        gsp4_param(StType.VII, "l", c, a),
        gsp4_param(StType.VIIIa, "l", c),
        gsp4_param(StType.IXa, "l", c),
        gsp4_param(StType.X, IrredPart(2, "r", c), a, catalog=catalog),
        gsp4_param(StType.XIa, IrredPart(2, "r", unr(1)), a, catalog=catalog),
        gsp4_param(StType.SC, "l", c),
        gsp4_param(StType.SC, "l", "r", c),
    ]


def theorem_a_params() -> list[Gsp4Param]:
    a, b, c = (Character.unr(symbol(name)) for name in "abc")
    return [
        gsp4_param(StType.IVa, a),
        gsp4_param(StType.IIIa, a, b),
        gsp4_param(StType.SC, "l", c),
        gsp4_param(StType.SC, "l", "r", c),
    ]


def _merge(identity: str, reports: list[CheckReport]) -> CheckReport:
    failures = tuple(failure for report in reports for failure in report.failures)
    return CheckReport(identity, len(reports), failures)


def _run_trials(identity: str, trials: int, seed: int, trial: Callable[[int], CheckReport]) -> CheckReport:
    reports = []
    for index in range(trials):
        current = trial_seed(seed, index)
        try:
            reports.append(trial(current))
        except LfacError as exc:
            reports.append(CheckReport(identity, 1, (Failure(current, "", f"{type(exc).__name__}: {exc}"),)))
    return _merge(identity, reports)


def suite_lemma71(trials: int, seed: int, catalog: Catalog | None = None) -> CheckReport:
    return _run_trials(
        "lemma71", trials, seed,
        lambda s: check_lemma71(random_rep(TrialProfile(s, block_budget=4, symbol_pool=4)), s),
    )


def suite_theoremA(trials: int, seed: int, catalog: Catalog | None = None) -> CheckReport:
    fixed = [check_theoremA(pi, steinberg()) for pi in theorem_a_params()]

    def trial(s):
        profile = TrialProfile(s, allow_irred=True)
        return check_theoremA(random_gsp4(profile), random_gl2(profile), s)

    random_part = _run_trials("theoremA", trials, seed, trial)
    failures = _merge("theoremA", fixed).failures + random_part.failures
    return CheckReport("theoremA", len(fixed) + random_part.trials, failures)


def suite_cor62(trials: int, seed: int, catalog: Catalog | None = None) -> CheckReport:
    def trial(s):
        profile = TrialProfile(s, allow_irred=True)
        return check_cor62(random_gsp4(profile), random_gl2(profile, kinds=("ps",)), s)

    return _run_trials("cor62", trials, seed, trial)


def suite_soudry(trials: int, seed: int, catalog: Catalog | None = None) -> CheckReport:
    return _run_trials(
        "soudry", trials, seed,
        lambda s: check_soudry(*random_theta(TrialProfile(s, allow_irred=True)), s),
    )


def suite_ideal(trials: int, seed: int, catalog: Catalog | None = None) -> CheckReport:
    def trial(s):
        profile = TrialProfile(s)
        fs = random_split_rationals(profile)
        return check_ideal_oracle(fs, Draw(TrialProfile(s + 1)), s)

    return _run_trials("ideal", trials, seed, trial)


def suite_poles(trials: int, seed: int, catalog: Catalog | None = None) -> CheckReport:
    def trial(s):
        profile = TrialProfile(s, symbol_pool=3)
        return check_pole_oracle(random_gsp4(profile), random_gl2(profile), s)

    return _run_trials("poles", trials, seed, trial)


def suite_theoremC(trials: int, seed: int, catalog: Catalog | None = None) -> CheckReport:
    def trial(s):
        pi = random_gsp4(TrialProfile(s, symbol_pool=3, allow_irred=True))
        values = random_values(Draw(TrialProfile(s + 1)), _param_symbols(pi))
        checks = [check_theoremC(pi, s), check_specialized_classification(pi, values, s)]
        return CheckReport("theoremC", 1, tuple(failure for report in checks for failure in report.failures))

    return _run_trials("theoremC", trials, seed, trial)


def suite_table(trials: int, seed: int, catalog: Catalog | None = None) -> CheckReport:
    return _merge("table", [check_catalog_shape(pi) for pi in catalog_shapes(catalog)])


SUITES: dict[str, Callable[..., CheckReport]] = {
    "lemma71": suite_lemma71,
    "theoremA": suite_theoremA,
    "cor62": suite_cor62,
    "soudry": suite_soudry,
    "ideal": suite_ideal,
    "poles": suite_poles,
    "theoremC": suite_theoremC,
    "table": suite_table,
}


def run_suite(name: str, trials: int, seed: int, catalog: Catalog | None = None) -> list[CheckReport]:
    """Прогнать набор (или все наборы при name == "all") в фиксированном порядке."""
    names = list(SUITES) if name == "all" else [name]
    reports = []
    for suite_name in names:
        report = SUITES[suite_name](trials, seed, catalog)
        log.info(
            "suite %s: %d trials, %d failures",
            suite_name, report.trials, len(report.failures),
        )
        reports.append(report)
    return reports
