import json
import time
from fractions import Fraction
from io import StringIO

from django.conf import settings
from django.core.management import CommandError, call_command
from django.test import SimpleTestCase
from hypothesis import HealthCheck, assume, given, settings as hypothesis_settings, strategies as st

from lfactors.algebra import Scalar, SplitRational, ideal_generator, ring_mul, shift
from lfactors.catalog import StType, gsp4_param, nov_lfactor, principal_series, steinberg, supercuspidal, theta_lift
from lfactors.poles import nov_split, ps_split
from lfactors.wdrep import (
    Block,
    Character,
    SummandKind,
    WDRep,
    dual,
    lfactor,
    similitude_check,
    summand_query,
    tensor,
    twist,
)

from .checks import (
    CheckReport,
    Failure,
    brute_force_generator,
    catalog_shapes,
    check_catalog_shape,
    check_cor62,
    check_ideal_oracle,
    check_lemma71,
    check_pole_oracle,
    check_soudry,
    check_specialized_classification,
    check_theoremA,
    check_theoremC,
    run_suite,
    theorem_a_params,
)
from .generators import (
    Draw,
    TrialProfile,
    random_gl2,
    random_gsp4,
    random_rep,
    random_split_rationals,
    random_theta_param,
)

a, b, c, d, e = (Scalar.named(name) for name in "abcde")

# стратегии hypothesis поверх засеянных генераторов
seeds = st.integers(min_value=0, max_value=10 ** 6)
character_reps = seeds.map(lambda s: random_rep(TrialProfile(s)))
reps = seeds.map(lambda s: random_rep(TrialProfile(s, allow_irred=True)))
rational_lists = seeds.map(lambda s: random_split_rationals(TrialProfile(s)))
characters = seeds.map(lambda s: Draw(TrialProfile(s)).character())
gsp4_params = seeds.map(lambda s: random_gsp4(TrialProfile(s, allow_irred=True)))
gl2_params = seeds.map(lambda s: random_gl2(TrialProfile(s)))
half_integers = st.integers(-4, 4).map(lambda k: Fraction(k, 2))
# генерация идёт через sympy и медленнее встроенных стратегий
PROPERTY_SETTINGS = hypothesis_settings(max_examples=25, deadline=None, suppress_health_check=[HealthCheck.too_slow])


def unr(value) -> Character:
    return Character.unr(value)


class GeneratorsTestCase(SimpleTestCase):
    def test_same_seed_same_value(self):
        """Генераторы детерминированы: один seed - одно значение"""
        self.assertEqual(random_rep(TrialProfile(42)), random_rep(TrialProfile(42)))
        self.assertEqual(random_gsp4(TrialProfile(42)), random_gsp4(TrialProfile(42)))

    def test_random_gsp4_is_valid(self):
        for seed in range(10):
            pi = random_gsp4(TrialProfile(seed, allow_irred=True))
            self.assertEqual(pi.rep.dim, 4)
            self.assertTrue(similitude_check(pi.rep, pi.similitude))

    def test_random_theta_is_valid(self):
        for seed in range(5):
            pi = random_theta_param(TrialProfile(seed, allow_irred=True))
            self.assertIsNotNone(pi.theta)
            self.assertEqual(pi.rep.dim, 4)

    def test_profile_validation(self):
        with self.assertRaises(ValueError):
            TrialProfile(1, block_budget=0)
        with self.assertRaises(ValueError):
            TrialProfile(1, symbol_pool=11)


class ChecksTestCase(SimpleTestCase):
    def test_lemma71_golden(self):
        rho = WDRep.of([Block(unr(a)), Block(unr(b), 1)])
        report = check_lemma71(rho, seed=1)
        self.assertTrue(report.passed)
        self.assertEqual(report.trials, 1)

    def test_theorem_a_fixed_params(self):
        for pi in theorem_a_params():
            self.assertTrue(check_theoremA(pi, steinberg()).passed, str(pi))

    def test_theorem_a_twisted_steinberg(self):
        """St (x) chi сводится к St твистом параметра"""
        self.assertTrue(check_theoremA(gsp4_param(StType.IVa, unr(a)), steinberg(unr(b))).passed)
        ramified = Character.ram("eta", c)
        self.assertTrue(check_theoremA(gsp4_param(StType.IIIa, unr(a), unr(b)), steinberg(ramified)).passed)
        self.assertTrue(check_theoremA(gsp4_param(StType.SC, "l", unr(c)), steinberg(unr(d))).passed)

    def test_theorem_a_rejects_supercuspidal_sigma(self):
        with self.assertRaises(ValueError):
            check_theoremA(gsp4_param(StType.IVa, unr(a)), supercuspidal("u", unr(b)))

    def test_cor62(self):
        pi = gsp4_param(StType.IIIa, unr(a), unr(b))
        self.assertTrue(check_cor62(pi, principal_series(unr(c), unr(d))).passed)

    def test_cor62_on_theta_lift(self):
        pi = theta_lift(principal_series(unr(a), unr(b)), principal_series(unr(c), unr(a * b / c)))
        self.assertTrue(check_cor62(pi, principal_series(unr(d), unr(e))).passed)

    def test_soudry(self):
        tau = principal_series(unr(a), unr(b))
        twin = principal_series(unr(c), unr(a * b / c))
        self.assertTrue(check_soudry(tau, twin, steinberg(unr(d))).passed)

    def test_pole_oracle(self):
        double = gsp4_param(StType.FREE, WDRep.of([Block(unr(a), 1), Block(unr(a), 1)]), unr(a ** 2))
        self.assertTrue(check_pole_oracle(double, steinberg()).passed)

    def test_theorem_c(self):
        lines = gsp4_param(
            StType.FREE,
            WDRep.of(Block(unr(x)) for x in (a, b, c / a, c / b)),
            unr(c),
        )
        self.assertTrue(check_theoremC(lines).passed)

    def test_specialized_classification(self):
        lines = gsp4_param(
            StType.FREE,
            WDRep.of(Block(unr(x)) for x in (a, b, c / a, c / b)),
            unr(c),
        )
        values = {"a": Fraction(1), "b": Fraction(3), "c": Fraction(4)}
        report = check_specialized_classification(lines, values, seed=3)
        self.assertTrue(report.passed, [failure.detail for failure in report.failures])
        self.assertEqual(report.identity, "theoremC")

    def test_catalog_shapes(self):
        shapes = catalog_shapes()
        self.assertEqual(len(shapes), 13)
        for pi in shapes:
            report = check_catalog_shape(pi)
            self.assertTrue(report.passed, [failure.detail for failure in report.failures])

    def test_ideal_oracle(self):
        fs = [
            SplitRational.build(factors=[(a, -1), (b, 1)]),
            SplitRational.build(unit=3, xpower=1, factors=[(a, -2)]),
        ]
        self.assertTrue(check_ideal_oracle(fs, Draw(TrialProfile(3)), seed=3).passed)

    def test_brute_force_generator(self):
        values = {"a": Fraction(2), "b": Fraction(3), "v": Fraction(5)}
        lf_a = SplitRational.build(factors=[(a, -1)])
        lf_b = SplitRational.build(factors=[(b, -1)])
        both = SplitRational.build(factors=[(a, -1), (b, -1)])
        self.assertEqual(brute_force_generator([lf_a, lf_b], values), brute_force_generator([both], values))

    def test_failed_report(self):
        report = CheckReport("lemma71", 1, (Failure(5, "rep()", "identity 1: 1 != 2"),))
        self.assertFalse(report.passed)


class PropertiesTestCase(SimpleTestCase):
    """Инварианты движка на значениях из засеянных генераторов"""

    @PROPERTY_SETTINGS
    @given(rational_lists, rational_lists, rational_lists)
    def test_ring_mul_is_commutative_and_associative(self, fs, gs, hs):
        f, g, h = fs[0], gs[0], hs[0]
        self.assertEqual(ring_mul(f, g), ring_mul(g, f))
        self.assertEqual(ring_mul(ring_mul(f, g), h), ring_mul(f, ring_mul(g, h)))

    @PROPERTY_SETTINGS
    @given(rational_lists, st.data())
    def test_ideal_generator_ignores_order_and_repeats(self, fs, data):
        expected = ideal_generator(fs)
        shuffled = data.draw(st.permutations(fs))
        self.assertEqual(ideal_generator(shuffled), expected)
        self.assertEqual(ideal_generator(shuffled + fs[:1]), expected)

    @PROPERTY_SETTINGS
    @given(st.lists(reps, min_size=1, max_size=4))
    def test_ideal_of_lfactors_is_lfactor(self, rep_list):
        result = ideal_generator([lfactor(rho) for rho in rep_list])
        self.assertTrue(result.is_lfactor)
        self.assertTrue(result.generator.is_lfactor)

    @PROPERTY_SETTINGS
    @given(reps, character_reps)
    def test_tensor_dimension_is_multiplicative(self, first, second):
        self.assertEqual(tensor(first, second).dim, first.dim * second.dim)

    @PROPERTY_SETTINGS
    @given(reps, reps)
    def test_lfactor_of_sum(self, first, second):
        self.assertEqual(lfactor(first + second), lfactor(first) * lfactor(second))

    @PROPERTY_SETTINGS
    @given(reps, half_integers)
    def test_twist_by_absolute_value_is_shift(self, rho, t):
        self.assertEqual(lfactor(twist(rho, Character.absolute(t))), shift(lfactor(rho), t))

    @PROPERTY_SETTINGS
    @given(reps, characters)
    def test_dual_and_twist_commute(self, rho, chi):
        self.assertEqual(dual(dual(rho)), rho)
        self.assertEqual(dual(twist(rho, chi)), twist(dual(rho), chi.inverse()))

    @PROPERTY_SETTINGS
    @given(gsp4_params)
    def test_similitude_closes_lines(self, pi):
        chi = pi.similitude
        assume(chi.is_unramified)
        self.assertTrue(similitude_check(pi.rep, chi))
        lines = summand_query(pi.rep, SummandKind.LINE)
        images = sorted((chi.satake / alpha for alpha in lines), key=lambda s: s.sort_key)
        self.assertEqual(tuple(images), lines)

    @PROPERTY_SETTINGS
    @given(gsp4_params, gl2_params)
    def test_nov_split(self, pi, sigma):
        regular, exceptional = nov_split(pi, sigma)
        self.assertEqual(regular * exceptional, nov_lfactor(pi, sigma))
        self.assertTrue(regular.is_lfactor)
        self.assertTrue(exceptional.is_lfactor)
        self.assertTrue(all(exponent == -1 for _, exponent in exceptional.factors))

    @PROPERTY_SETTINGS
    @given(gsp4_params)
    def test_ps_split(self, pi):
        exceptional, subregular, kirillov = ps_split(pi)
        self.assertTrue(exceptional.is_one)
        self.assertEqual(exceptional * subregular * kirillov, lfactor(pi.rep))
        self.assertTrue(subregular.is_lfactor)
        self.assertTrue(kirillov.is_lfactor)
        self.assertTrue(all(exponent == -1 for _, exponent in subregular.factors))


class SuitesTestCase(SimpleTestCase):
    def test_suites_are_deterministic(self):
        first = run_suite("lemma71", 3, 11)
        second = run_suite("lemma71", 3, 11)
        self.assertEqual(first, second)

    def test_small_suites_pass(self):
        for name in ("lemma71", "theoremA", "cor62", "soudry", "ideal", "poles", "theoremC"):
            (report,) = run_suite(name, 3, 7)
            self.assertTrue(report.passed, [failure.detail for failure in report.failures])

    def test_table_suite(self):
        (report,) = run_suite("table", 1, 7)
        self.assertTrue(report.passed)
        self.assertEqual(report.trials, 13)

    def test_acceptance_counts_within_budget(self):
        """Приёмочные объёмы при seed по умолчанию укладываются в бюджет времени"""
        budget = settings.LFAC["SUITE_BUDGET_SECONDS"]
        seed = settings.LFAC["DEFAULT_SEED"]
        for name, trials in settings.LFAC["ACCEPTANCE_TRIALS"].items():
            with self.subTest(suite=name):
                started = time.perf_counter()
                (report,) = run_suite(name, trials, seed)
                elapsed = time.perf_counter() - started
                self.assertTrue(report.passed, [failure.detail for failure in report.failures[:5]])
                self.assertGreaterEqual(report.trials, trials)
                self.assertLess(elapsed, budget)


class VerifyCommandTestCase(SimpleTestCase):
    def test_verify_text(self):
        out = StringIO()
        call_command("verify", suite="lemma71", trials=2, seed=3, stdout=out)
        self.assertEqual(out.getvalue().strip(), "lemma71: 2 trials, ok")

    def test_verify_json(self):
        out = StringIO()
        call_command("verify", "--suite", "table", "--format", "json", stdout=out)
        data = json.loads(out.getvalue())
        self.assertEqual(data["schema"], "lfac/1")
        self.assertEqual(data["kind"], "verify")
        (report,) = data["value"]["reports"]
        self.assertEqual(report["identity"], "table")
        self.assertTrue(report["passed"])
        self.assertEqual(report["failures"], [])

    def test_verify_needs_trials(self):
        with self.assertRaises(CommandError) as ctx:
            call_command("verify", suite="lemma71", trials=0, stdout=StringIO())
        self.assertEqual(ctx.exception.returncode, 2)
