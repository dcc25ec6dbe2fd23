from fractions import Fraction

from django.test import SimpleTestCase
from hypothesis import given, settings, strategies as st

from .algebra import (
    ONE,
    V,
    Scalar,
    SplitRational,
    UNIT,
    ideal_generator,
    ring_mul,
    scalar_canonicalize,
    shift,
    symbol,
    v_power,
    vanishing_order,
)
from .catalog import (
    StType,
    gl2_param,
    gsp4_param,
    gsp4_twist,
    load_catalog,
    nov_lfactor,
    parse_catalog,
    principal_series,
    rs_lfactor,
    steinberg,
    supercuspidal,
    theta_lift,
)
from .exceptions import (
    CatalogFormatError,
    CentralCharacterMismatch,
    HalfIntegerError,
    ScalarZeroDivision,
    SimilitudeViolation,
    TypeConstraintViolation,
    UnsupportedPair,
    UnsupportedTensor,
)
from .poles import (
    PoleKind,
    bessel_characters,
    classify_specialized,
    exceptional_poles,
    hom_dim,
    ideals_JK,
    nov_split,
    ps_split,
    ratio_poles,
    specialize_param,
    steinberg_line_pairs,
    subregular_poles,
)
from .wdrep import (
    TRIVIAL,
    Block,
    Character,
    IrredPart,
    WDRep,
    block_lfactor,
    char_mul,
    dual,
    langlands_ratio,
    lfactor,
    pair_lfactor,
    similitude_check,
    sp_tensor,
    summand_query,
    tensor,
    twist,
)

a, b, c, d = (Scalar.named(name) for name in "abcd")


def unr(value) -> Character:
    return Character.unr(value)


def lf(*roots) -> SplitRational:
    """1 / prod (1 - root*X)."""
    return SplitRational.build(factors=[(root, -1) for root in roots])


def rep(*blocks) -> WDRep:
    return WDRep.of(Block(part, n) for part, n in blocks)


class ScalarTestCase(SimpleTestCase):
    def test_v_squared_is_canonical(self):
        self.assertEqual(V * V, v_power(2))
        self.assertEqual(str(V * V), "v^2")

    def test_polynomial_cancellation(self):
        a_, b_ = symbol("a"), symbol("b")
        self.assertEqual(scalar_canonicalize((a_ ** 2 - b_ ** 2) / (a_ - b_)), a + b)
        self.assertEqual(a / a, ONE)

    def test_canonical_text(self):
        self.assertEqual(str(a * v_power(-3)), "a*v^-3")
        self.assertEqual(str(Scalar.of(Fraction(-1, 2))), "-1/2")
        self.assertEqual(str(-a), "-a")

    def test_denominator_is_monic(self):
        value = a / (2 * b + 4)
        self.assertEqual(value, (a / 2) / (b + 2))
        self.assertEqual(str(value), "1/2*a/(b + 2)")

    def test_zero_division(self):
        with self.assertRaises(ScalarZeroDivision):
            a / Scalar.of(0)
        with self.assertRaises(ZeroDivisionError):
            (a - a).inverse()

    def test_specialize(self):
        values = {"a": Fraction(1, 2), "v": Fraction(3)}
        self.assertEqual((a * V).specialize(values), Fraction(3, 2))
        self.assertIsNone((ONE / (a - Fraction(1, 2))).specialize(values))


class SplitRationalTestCase(SimpleTestCase):
    def test_merge(self):
        product = ring_mul(lf(a), lf(b))
        self.assertEqual(product.factors, ((a, -1), (b, -1)))
        self.assertTrue(ring_mul(lf(a), lf(a), "divide").is_one)

    def test_common_factor_cancels(self):
        left = lf(a, a * v_power(-2))
        self.assertEqual(ring_mul(left, lf(a * v_power(-2)), "divide"), lf(a))

    def test_text(self):
        self.assertEqual(str(lf(a, b * v_power(-1))), "1/((1 - a*X)(1 - b*v^-1*X))")
        self.assertEqual(str(lf(a * v_power(-3))), "1/(1 - a*v^-3*X)")
        self.assertEqual(str(SplitRational.build(factors=[(a, 2)])), "(1 - a*X)^2")
        self.assertEqual(str(UNIT), "1")

    def test_shift(self):
        self.assertEqual(shift(lf(a), 1), lf(a * v_power(-2)))
        self.assertEqual(shift(lf(a), Fraction(1, 2)), lf(a * v_power(-1)))
        self.assertEqual(shift(lf(a), 0), lf(a))

    def test_shift_moves_x_power_into_unit(self):
        f = SplitRational.build(xpower=1)
        self.assertEqual(shift(f, 1), SplitRational.build(unit=v_power(-2), xpower=1))

    def test_shift_needs_half_integer(self):
        with self.assertRaises(HalfIntegerError):
            shift(lf(a), Fraction(1, 3))

    def test_ideal_generator(self):
        gen = ideal_generator([lf(a), lf(b)])
        self.assertEqual(gen.generator, lf(a, b))
        self.assertTrue(gen.is_lfactor)
        self.assertEqual(ideal_generator([lf(a), UNIT]).generator, lf(a))
        principal = ideal_generator([SplitRational.build(factors=[(a, 1)])])
        self.assertEqual(principal.generator, SplitRational.build(factors=[(a, 1)]))
        self.assertFalse(principal.is_lfactor)
        self.assertFalse(principal.contains_units)

    def test_ideal_generator_drops_units(self):
        f = SplitRational.build(unit=3 * a, xpower=2, factors=[(b, -1)])
        self.assertEqual(ideal_generator([f]).generator, lf(b))

    def test_vanishing_order(self):
        self.assertEqual(vanishing_order(lf(a), a), -1)
        self.assertEqual(vanishing_order(SplitRational.build(factors=[(a, 2)]), a), 2)
        self.assertEqual(vanishing_order(lf(a), b), 0)

    @settings(max_examples=20, deadline=None)
    @given(st.integers(-4, 4), st.integers(-4, 4))
    def test_shift_is_additive(self, s, t):
        f = SplitRational.build(unit=a, xpower=1, factors=[(b, -1), (a * V, 2)])
        half_s, half_t = Fraction(s, 2), Fraction(t, 2)
        self.assertEqual(shift(shift(f, half_s), half_t), shift(f, half_s + half_t))


class WDRepTestCase(SimpleTestCase):
    def test_characters(self):
        half = Character.absolute(Fraction(1, 2))
        self.assertEqual(char_mul(half, half), Character.absolute(1))
        self.assertEqual(Character.absolute(1).satake, v_power(-2))
        eta = Character.ram("eta")
        self.assertTrue(char_mul(eta, eta.inverse()).is_trivial)
        self.assertEqual(char_mul(unr(a), unr(b)), unr(a * b))

    def test_dual(self):
        self.assertEqual(dual(rep((unr(a), 0))), rep((unr(a.inverse()), 0)))
        self.assertEqual(dual(WDRep.sp(1)), WDRep.sp(1))
        w = rep((unr(a), 1), (IrredPart(2, "l", unr(c)), 0), (Character.ram("eta", b), 2))
        self.assertEqual(dual(dual(w)), w)

    def test_twist(self):
        half = Character.absolute(Fraction(1, 2))
        self.assertEqual(twist(rep((unr(a), 1)), half), rep((unr(a * v_power(-1)), 1)))
        w = rep((unr(a), 0), (IrredPart(2, "l", unr(c)), 1))
        self.assertIs(twist(w, TRIVIAL), w)
        self.assertEqual(twist(twist(w, unr(b)), unr(b).inverse()), w)

    def test_sp_tensor(self):
        self.assertEqual(sorted(sp_tensor(3, 1)), [2, 4])
        self.assertEqual(sp_tensor(0, 1), (1,))
        self.assertEqual(sorted(sp_tensor(2, 2)), [0, 2, 4])

    @given(st.integers(0, 6), st.integers(0, 6))
    def test_sp_tensor_dimension(self, m, n):
        self.assertEqual(sum(k + 1 for k in sp_tensor(m, n)), (m + 1) * (n + 1))

    def test_tensor(self):
        product = tensor(rep((unr(a), 1)), WDRep.sp(1))
        self.assertEqual(product, rep((unr(a), 2), (unr(a), 0)))
        phi = rep((unr(a), 1), (unr(b), 0))
        chis = rep((unr(c), 0), (unr(d), 0))
        self.assertEqual(tensor(phi, chis), twist(phi, unr(c)) + twist(phi, unr(d)))

    def test_tensor_of_irreducible_parts(self):
        left = WDRep.from_part(IrredPart(2, "l", unr(a)))
        right = WDRep.from_part(IrredPart(2, "r", unr(b)))
        with self.assertRaises(UnsupportedTensor):
            tensor(left, right)
        self.assertTrue(pair_lfactor(left, right).is_one)

    def test_lfactor(self):
        self.assertEqual(lfactor(rep((unr(a), 3))), lf(a * v_power(-3)))
        self.assertTrue(lfactor(rep((Character.ram("eta"), 2))).is_one)
        self.assertEqual(lfactor(rep((unr(a), 0), (unr(b), 1))), lf(a, b * v_power(-1)))

    def test_summand_query(self):
        w = rep((unr(a), 0), (unr(b), 1))
        self.assertEqual(summand_query(w, "line"), (a,))
        self.assertEqual(summand_query(w, "steinberg"), (b,))
        irred = rep((IrredPart(2, "l", unr(c)), 1))
        self.assertEqual(summand_query(irred, "line"), ())
        self.assertEqual(summand_query(irred, "steinberg"), ())

    def test_similitude_check(self):
        lines = rep((unr(a), 0), (unr(b), 0), (unr(c / a), 0), (unr(c / b), 0))
        self.assertTrue(similitude_check(lines, unr(c)))
        self.assertTrue(similitude_check(rep((unr(a), 3)), unr(a ** 2)))
        generic = rep((unr(a), 0), (unr(b), 0), (unr(c), 0), (unr(d), 0))
        self.assertFalse(similitude_check(generic, unr(a * b * c * d)))

    def test_irreducible_dual_twins(self):
        rho = IrredPart(2, "l", unr(c))
        self.assertTrue(rho.is_dual_twin(rho.dual().twisted(unr(a))))
        self.assertFalse(rho.is_dual_twin(IrredPart(2, "r", unr(c))))
        with self.assertRaises(TypeConstraintViolation):
            IrredPart(1, "l", unr(c))

    def test_langlands_ratio(self):
        # L(s) L(s+1) / L(rho (x) sp(1), s+1/2) для rho = unr(a) + unr(b) (x) sp(1):
        # (1 - a v^-2 X)(1 - b v^-3 X)(1 - b v^-1 X) / ((1 - a X)(1 - a v^-2 X)(1 - b v^-1 X)(1 - b v^-3 X))
        rho = rep((unr(a), 0), (unr(b), 1))
        self.assertEqual(langlands_ratio(rho), lf(a))
        self.assertEqual(block_lfactor(rho, 0), lf(a))
        self.assertEqual(block_lfactor(rho, 1), lf(b * v_power(-1)))


class CatalogTestCase(SimpleTestCase):
    def test_gl2_params(self):
        st_ = gl2_param("steinberg-twist")
        self.assertEqual(st_.rep, WDRep.sp(1))
        self.assertTrue(st_.central.is_trivial)
        ps = gl2_param("principal-series", unr(a), unr(b))
        self.assertEqual(ps.rep, rep((unr(a), 0), (unr(b), 0)))
        self.assertEqual(ps.central, unr(a * b))
        sc = gl2_param("supercuspidal", "l", unr(c))
        self.assertEqual(sc.rep, rep((IrredPart(2, "l", unr(c)), 0)))

    def test_reducible_principal_series_needs_flag(self):
        with self.assertRaises(TypeConstraintViolation):
            principal_series(unr(a), unr(a * v_power(-2)))
        ps = principal_series(unr(a), unr(a * v_power(-2)), reducible=True)
        self.assertTrue(ps.reducible)

    def test_gsp4_types(self):
        iva = gsp4_param(StType.IVa, unr(a))
        self.assertEqual(iva.rep, rep((unr(a), 3)))
        self.assertEqual(iva.similitude, unr(a ** 2))
        iiia = gsp4_param(StType.IIIa, unr(a), unr(b))
        self.assertEqual(iiia.rep, rep((unr(a), 1), (unr(b), 1)))
        self.assertEqual(iiia.similitude, unr(a * b))
        sc = gsp4_param(StType.SC, "l", unr(c))
        self.assertEqual(sc.rep.dim, 4)
        self.assertTrue(lfactor(sc.rep).is_one)

    def test_gsp4_constraints(self):
        with self.assertRaises(TypeConstraintViolation):
            gsp4_param(StType.IIIa, unr(a), unr(a))
        with self.assertRaises(TypeConstraintViolation):
            gsp4_param(StType.FREE, rep((unr(a), 0)), unr(a))
        with self.assertRaises(SimilitudeViolation):
            gsp4_param(StType.FREE, rep((unr(a), 0), (unr(b), 0), (unr(c), 0), (unr(d), 0)), unr(a))

    def test_catalog_types(self):
        iia = gsp4_param(StType.IIa, unr(a), unr(b))
        self.assertEqual(iia.rep, rep((unr(a * b), 1), (unr(b), 0), (unr(a ** 2 * b), 0)))
        self.assertEqual(iia.similitude, unr(a ** 2 * b ** 2))
        via = gsp4_param(StType.VIa, unr(a))
        self.assertEqual(lfactor(via.rep), lf(a * v_power(-1), a * v_power(-1)))
        with self.assertRaises(TypeConstraintViolation):
            gsp4_param(StType.Va, unr(a), unr(b))
        with self.assertRaises(TypeConstraintViolation):
            gsp4_param(StType.XIa, IrredPart(2, "r", unr(c)), unr(a))

    def test_catalog_file(self):
        catalog = load_catalog()
        self.assertEqual(catalog.version, 1)
        self.assertEqual(set(catalog.entries), {"IIa", "Va", "VIa", "X", "XIa"})

    def test_malformed_catalog(self):
        with self.assertRaises(CatalogFormatError) as ctx:
            parse_catalog({"format": "lfac-catalog", "version": 2, "source": "x", "types": {}})
        self.assertIn("version", ctx.exception.errors)
        bad_reference = {
            "format": "lfac-catalog",
            "version": 1,
            "source": "x",
            "types": {
                "VIa": {
                    "params": {"sigma": "character"},
                    "blocks": [{"char": {"tau": 1}, "n": 1}],
                    "similitude": {"sigma": 2},
                },
            },
        }
        with self.assertRaises(CatalogFormatError):
            parse_catalog(bad_reference)

    def test_theta_lift(self):
        theta = theta_lift(principal_series(unr(a), unr(b)), principal_series(unr(c), unr(a * b / c)))
        self.assertEqual(len(theta.rep.blocks), 4)
        self.assertEqual(theta.similitude, unr(a * b))
        st_theta = theta_lift(steinberg(), steinberg())
        self.assertEqual(st_theta.rep, WDRep.sp(1) + WDRep.sp(1))
        self.assertTrue(st_theta.similitude.is_trivial)
        with self.assertRaises(CentralCharacterMismatch):
            theta_lift(supercuspidal("l", unr(a)), supercuspidal("r", unr(b)))

    def test_nov_lfactor(self):
        iva = gsp4_param(StType.IVa, unr(a))
        self.assertEqual(shift(nov_lfactor(iva, steinberg()), Fraction(1, 2)), lf(a * v_power(-3), a * v_power(-5)))
        sc = gsp4_param(StType.SC, "l", unr(c))
        self.assertTrue(nov_lfactor(sc, steinberg()).is_one)
        free = gsp4_param(StType.FREE, rep((unr(a), 1), (unr(b), 0), (unr(a ** 2 / b), 0)), unr(a ** 2))
        sigma = principal_series(unr(c), unr(d))
        expected = lfactor(twist(free.rep, unr(c))) * lfactor(twist(free.rep, unr(d)))
        self.assertEqual(nov_lfactor(free, sigma), expected)

    def test_twisting_reduces_to_steinberg(self):
        pi = gsp4_param(StType.IIIa, unr(a), unr(b))
        chi = unr(c)
        self.assertEqual(nov_lfactor(pi, steinberg(chi)), nov_lfactor(gsp4_twist(pi, chi), steinberg()))

    def test_rs_lfactor(self):
        self.assertEqual(rs_lfactor(steinberg(), steinberg()), lf(ONE, v_power(-2)))
        product = rs_lfactor(principal_series(unr(a), unr(b)), principal_series(unr(c), unr(d)))
        self.assertEqual(product, lf(a * c, a * d, b * c, b * d))
        self.assertTrue(rs_lfactor(supercuspidal("l", unr(c)), supercuspidal("r", unr(d))).is_one)
        tau = supercuspidal("l", unr(c))
        with self.assertRaises(UnsupportedPair):
            rs_lfactor(tau, supercuspidal(tau.part.dual()))


class PolesTestCase(SimpleTestCase):
    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.double = gsp4_param(StType.FREE, rep((unr(a), 1), (unr(a), 1)), unr(a ** 2))
        cls.split = gsp4_param(StType.FREE, rep((unr(a), 1), (unr(b), 1)), unr(a * b))
        cls.iva = gsp4_param(StType.IVa, unr(a))
        cls.lines = gsp4_param(
            StType.FREE,
            rep((unr(a), 0), (unr(b), 0), (unr(c / a), 0), (unr(c / b), 0)),
            unr(c),
        )

    def test_exceptional_poles(self):
        report = exceptional_poles(self.double, steinberg())
        self.assertEqual(report.roots(), (a,))
        self.assertEqual(report.entries[0].multiplicity, 2)
        self.assertEqual(report.entries[0].kind, PoleKind.EXCEPTIONAL)
        self.assertEqual(len(exceptional_poles(self.split, steinberg())), 0)
        self.assertEqual(len(exceptional_poles(self.iva, steinberg())), 0)

    def test_nov_split(self):
        regular, exceptional = nov_split(self.double, steinberg())
        self.assertEqual(exceptional, lf(a))
        self.assertEqual(regular * exceptional, nov_lfactor(self.double, steinberg()))
        self.assertTrue(nov_split(self.iva, steinberg())[1].is_one)
        sc = gsp4_param(StType.SC, "l", unr(c))
        self.assertEqual(nov_split(sc, steinberg()), (UNIT, UNIT))

    def test_subregular_poles(self):
        report = subregular_poles(self.lines)
        self.assertEqual(set(report.roots(PoleKind.SUBREGULAR_CASE1)), {a, b, c / a, c / b})
        self.assertTrue(all(entry.generic for entry in report.entries))
        self.assertEqual(len(subregular_poles(gsp4_param(StType.IIIa, unr(a), unr(b)))), 0)
        case2 = subregular_poles(self.double)
        self.assertEqual(case2.roots(PoleKind.SUBREGULAR_CASE2), (a * v_power(-1),))

    def test_ps_split(self):
        ex, sub, kir = ps_split(self.lines)
        self.assertTrue(ex.is_one)
        self.assertEqual(sub, lfactor(self.lines.rep))
        self.assertTrue(kir.is_one)
        self.assertEqual(ps_split(self.iva), (UNIT, UNIT, lf(a * v_power(-3))))
        vii = gsp4_param(StType.VII, "l", unr(c), unr(a))
        self.assertEqual(ps_split(vii), (UNIT, UNIT, UNIT))

    def test_hom_dim(self):
        self.assertEqual(hom_dim(self.double, steinberg(), a), 1)
        self.assertEqual(hom_dim(self.double, steinberg(), c), 0)
        self.assertEqual(hom_dim(self.iva, steinberg(), a), 0)

    def test_ideals(self):
        self.assertEqual(ideals_JK(self.iva), (UNIT, UNIT))
        _, k_ideal = ideals_JK(self.lines)
        for root in (a, b, c / a, c / b):
            self.assertGreaterEqual(vanishing_order(k_ideal, root), 1)
        j_ideal, _ = ideals_JK(self.double)
        self.assertEqual(vanishing_order(j_ideal, a * v_power(-1)), 0)

    def test_ratio_poles_match_case1(self):
        self.assertEqual(set(ratio_poles(self.lines)), {a, b, c / a, c / b})

    def test_bessel_characters(self):
        beta = a * v_power(-1)
        first, second, same = bessel_characters(self.double, beta)
        self.assertTrue(same)
        self.assertEqual(first, second)
        _, _, same = bessel_characters(self.lines, a)
        self.assertFalse(same)

    def test_steinberg_line_pairs(self):
        pairs = steinberg_line_pairs(self.split)
        half = Character.absolute(Fraction(1, 2))
        self.assertEqual(len(pairs), 2)
        sigma = steinberg(half)
        lines = summand_query(tensor(self.split.rep, sigma.rep), "line")
        self.assertEqual(sorted(pair[1].part.satake.sort_key for pair in pairs), [s.sort_key for s in lines])

    def test_classify_specialized(self):
        values = {"a": Fraction(2), "b": Fraction(3), "c": Fraction(5), "v": Fraction(7)}
        report = classify_specialized(self.lines, values)
        self.assertEqual(len(report.roots(PoleKind.SUBREGULAR_CASE1)), 4)
        self.assertFalse(any(entry.generic for entry in report.entries))
        # при c = v^2 a^2 корень a выпадает из первого случая
        values = {"a": Fraction(1), "b": Fraction(3), "c": Fraction(4), "v": Fraction(2)}
        self.assertEqual(len(classify_specialized(self.lines, values).roots(PoleKind.SUBREGULAR_CASE1)), 3)

    def test_specialize_param_rejects_zero_satake(self):
        special = specialize_param(self.lines, {"a": Fraction(2)})
        self.assertEqual(special.similitude, unr(c))
        with self.assertRaises(ScalarZeroDivision):
            specialize_param(self.lines, {"c": Fraction(0)})
