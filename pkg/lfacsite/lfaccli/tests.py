import json
from contextlib import redirect_stderr, redirect_stdout
from io import StringIO
from pathlib import Path

from django.conf import settings
from django.core.management import CommandError, call_command
from django.test import SimpleTestCase

from lfactors.algebra import Scalar, SplitRational, UNIT
from lfactors.catalog import Gsp4Param, StType, gsp4_param
from lfactors.poles import PoleReport, subregular_poles
from lfactors.wdrep import Block, Character, WDRep
from lfacsite.cli import main
from propcheck.generators import TrialProfile, random_gsp4, random_rep, random_split_rationals

from .evaluator import BUILTINS, evaluate
from .exceptions import DslNameError, DslSyntaxError, DslTypeError
from .grammar import BinOp, Call, Name, Number, parse
from .render import error_data, render_envelope, render_json, render_text

GOLDEN = Path(__file__).resolve().parent / "fixtures" / "golden-cli.json"

a, b, c = (Scalar.named(name) for name in "abc")


def run(*args) -> tuple[str, int]:
    """Запустить команду lfac, вернуть (stdout, код выхода)."""
    out = StringIO()
    try:
        call_command(*args, stdout=out, stderr=StringIO())
    except CommandError as exc:
        return out.getvalue().rstrip("\n"), exc.returncode
    return out.getvalue().rstrip("\n"), 0


class GrammarTestCase(SimpleTestCase):
    def test_precedence(self):
        tree = parse("a*b + c")
        self.assertIsInstance(tree, BinOp)
        self.assertEqual(tree.op, "+")
        self.assertEqual(tree.left.op, "*")
        self.assertEqual(tree.right, Name(6, "c"))

    def test_tensor_binds_tighter_than_sum(self):
        tree = parse("unr(a) x sp(0) + sp(1)")
        self.assertEqual(tree.op, "+")
        self.assertEqual(tree.left.op, "x")

    def test_implicit_product(self):
        tree = parse("(1 - a*X)(1 - b*X)")
        self.assertEqual(tree.op, "*")

    def test_call_with_keywords(self):
        tree = parse("gl2.PS(unr(a), unr(b), reducible=1)")
        self.assertIsInstance(tree, Call)
        self.assertEqual(tree.name, "gl2.PS")
        self.assertEqual(len(tree.args), 2)
        ((name, value),) = tree.kwargs
        self.assertEqual((name, value.value), ("reducible", 1))
        self.assertIsInstance(value, Number)

    def test_x_is_not_a_name(self):
        self.assertEqual(parse("x1"), Name(0, "x1"))
        with self.assertRaises(DslSyntaxError):
            parse("x")

    def test_syntax_error_position(self):
        with self.assertRaises(DslSyntaxError) as ctx:
            parse("L(")
        self.assertEqual((ctx.exception.line, ctx.exception.column), (1, 3))
        with self.assertRaises(DslSyntaxError) as ctx:
            parse("L(\n  ,)")
        self.assertEqual((ctx.exception.line, ctx.exception.column), (2, 3))

    def test_positional_after_keyword(self):
        with self.assertRaises(DslSyntaxError):
            parse("pole(a, generic=1, b)")


class EvaluatorTestCase(SimpleTestCase):
    def test_lfactor(self):
        self.assertEqual(str(evaluate("L(unr(a) x sp(3))")), "1/(1 - a*v^-3*X)")

    def test_tensor_of_sp(self):
        value = evaluate("tensor(sp(1), sp(1))")
        self.assertEqual(value, WDRep.of([Block(Character(), 0), Block(Character(), 2)]))

    def test_rational_arithmetic(self):
        value = evaluate("(1 - b*X)/(1 - a*X)^2")
        self.assertEqual(value, SplitRational.build(factors=[(b, 1), (a, -2)]))
        self.assertEqual(evaluate("X"), SplitRational.build(xpower=1))
        self.assertEqual(evaluate("2*X - 2"), SplitRational.build(unit=-2, factors=[(Scalar.of(1), 1)]))

    def test_names(self):
        self.assertEqual(evaluate("q"), evaluate("v^2"))
        self.assertEqual(evaluate("a*b/a"), b)

    def test_catalog_types(self):
        self.assertEqual(evaluate("gsp4.VIa(unr(a))"), gsp4_param(StType.VIa, Character.unr(a)))
        with self.assertRaises(DslTypeError):
            evaluate("gsp4.IVa(unr(a), unr(b))")

    def test_scalar_as_rational(self):
        self.assertEqual(evaluate("1", kind=SplitRational), UNIT)
        with self.assertRaises(DslTypeError):
            evaluate("sp(1)", kind=Gsp4Param)

    def test_errors(self):
        with self.assertRaises(DslNameError) as ctx:
            evaluate("foo(1)")
        self.assertEqual((ctx.exception.line, ctx.exception.column), (1, 1))
        with self.assertRaises(DslNameError):
            evaluate("gsp4.IVa")
        with self.assertRaises(DslTypeError):
            evaluate("sp(a)")
        with self.assertRaises(DslTypeError) as ctx:
            evaluate("unr(a) x 2")
        self.assertEqual(ctx.exception.column, 8)
        with self.assertRaises(DslTypeError):
            evaluate("pole(a, REGULAR, sp(1) + sp(1))")
        with self.assertRaises(DslTypeError):
            evaluate("pole(a, SOMETHING, sp(1))")

    def test_every_builtin_describes_itself(self):
        for name, func in BUILTINS.items():
            self.assertTrue(func.describe().startswith(name))


class RoundTripTestCase(SimpleTestCase):
    """Текстовая запись значения разбирается обратно в равное значение"""

    EXPRESSIONS = [
        "1/2*a/(b + 2)",
        "-1/2",
        "1/(a - 1/2)",
        "ram(eta^-1*zeta, a*v^2)",
        "unr(a^-1*c*v^-1)",
        "dual(irr(2, l, unr(c), twist=unr(a)))",
        "irr(3, t, unr(a^3), sim=unr(a^2))",
        "dual(irr(3, t, unr(a)))",
        "unr(a) x sp(2) + ram(eta) x sp(1) + irr(2, l, unr(c))",
        "rep()",
        "3*a*X/(1 - b*X)",
        "1/(X^2*(1 + a*X)(1 - (a + b)*X)^2)",
        "gl2.PS(unr(a), unr(b))",
        "gl2.PS(unr(a), unr(a*v^-2), reducible=1)",
        "gl2.St(ram(eta))",
        "gl2.SC(l, unr(c))",
        "twist(gl2.SC(l, unr(c)), unr(a))",
        "gsp4.I(unr(a), unr(b), unr(c))",
        "gsp4.X(irr(2, r, unr(c)), unr(a))",
        "gsp4.SC(l, r, unr(c))",
        "twist(gsp4.IIIa(unr(a), unr(b)), unr(c))",
        "theta(gl2.PS(unr(a), unr(b)), gl2.PS(unr(c), unr(a*b/c)))",
        "subregular(gsp4.FREE(unr(a) x sp(1) + unr(a) x sp(1), unr(a^2)))",
        "subregular(gsp4.FREE(unr(a) + unr(b) + unr(c/a) + unr(c/b), unr(c)))",
        "exceptional(gsp4.VIa(unr(a)), gl2.St())",
        "subregular(gsp4.IIIa(unr(a), unr(b)))",
    ]

    def assertRoundTrip(self, value):
        kind = SplitRational if isinstance(value, SplitRational) else None
        self.assertEqual(evaluate(render_text(value), kind=kind), value, render_text(value))

    def test_expressions(self):
        for text in self.EXPRESSIONS:
            with self.subTest(text=text):
                self.assertRoundTrip(evaluate(text))

    def test_seeded_values(self):
        """200 засеянных значений каждого вида: представления, функции от X, параметры, отчёты"""
        for seed in range(200):
            profile = TrialProfile(seed, allow_irred=True)
            pi = random_gsp4(profile)
            values = [random_rep(profile), pi, subregular_poles(pi), *random_split_rationals(TrialProfile(seed))]
            for value in values:
                with self.subTest(seed=seed, value=render_text(value)):
                    self.assertRoundTrip(value)


class RenderTestCase(SimpleTestCase):
    def test_pretty(self):
        value = evaluate("unr(a*b) x sp(1)")
        self.assertEqual(render_text(value, pretty=True), "unr(a·b) ⊗ sp(1)")

    def test_empty_report(self):
        self.assertEqual(render_json(PoleReport()), '{"entries": []}')
        self.assertEqual(render_text(subregular_poles(gsp4_param(StType.IVa, Character.unr(a)))), "report()")

    def test_envelope(self):
        data = json.loads(render_envelope(Character.unr(a)))
        self.assertEqual(data, {
            "schema": "lfac/1",
            "kind": "character",
            "value": {"text": "unr(a)", "tag": [], "satake": "a"},
        })
        self.assertEqual(json.loads(render_envelope(a))["value"], "a")

    def test_rational_json(self):
        data = json.loads(render_envelope(evaluate("1/(1 - a*X)^2")))
        self.assertEqual(data["kind"], "rational")
        self.assertEqual(data["value"]["factors"], [{"root": "a", "exponent": -2}])

    def test_error_data(self):
        try:
            evaluate("L(")
        except DslSyntaxError as exc:
            error = error_data(exc)["error"]
        self.assertEqual(error["type"], "DslSyntaxError")
        self.assertEqual((error["line"], error["column"]), (1, 3))


class CommandsTestCase(SimpleTestCase):
    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        with open(GOLDEN, encoding="utf-8") as golden:
            cls.cases = json.load(golden)

    def test_golden(self):
        for case in self.cases:
            with self.subTest(args=case["args"]):
                self.assertEqual(run(*case["args"]), (case["stdout"], case["exit"]))

    def test_json_output(self):
        out, code = run("split", "--format", "json", "--ps", "gsp4.IVa(unr(a))")
        self.assertEqual(code, 0)
        data = json.loads(out)
        self.assertEqual(data["kind"], "split")
        self.assertEqual(list(data["value"]), ["L_ex", "L_sub", "L_Kir"])
        self.assertEqual(data["value"]["L_Kir"]["text"], "1/(1 - a*v^-3*X)")

    def test_json_error(self):
        out, code = run("eval", "--format", "json", "L(")
        self.assertEqual(code, 2)
        data = json.loads(out)
        self.assertEqual(data["schema"], "lfac/1")
        self.assertEqual(data["error"]["type"], "DslSyntaxError")
        self.assertEqual((data["error"]["line"], data["error"]["column"]), (1, 3))

    def test_report_json(self):
        out, code = run("poles", "--format", "json", "--subregular", "gsp4.IIIa(unr(a), unr(b))")
        self.assertEqual(code, 0)
        self.assertEqual(json.loads(out)["value"], {"entries": []})

    def test_catalog_option(self):
        out, code = run("eval", "--catalog", settings.LFAC["CATALOG_FILE"], "L(gsp4.VIa(unr(a)))")
        self.assertEqual((out, code), ("1/(1 - a*v^-1*X)^2", 0))
        self.assertEqual(run("eval", "--catalog", "/nonexistent/catalog.json", "sp(1)")[1], 2)


class EntryPointTestCase(SimpleTestCase):
    def test_usage(self):
        with redirect_stdout(StringIO()) as out:
            self.assertEqual(main(["-h"]), 0)
        self.assertIn("usage: lfac", out.getvalue())
        with redirect_stderr(StringIO()):
            self.assertEqual(main([]), 2)
            self.assertEqual(main(["nope"]), 2)

    def test_runs_command(self):
        with redirect_stdout(StringIO()) as out:
            self.assertEqual(main(["eval", "sp(1)"]), 0)
        self.assertEqual(out.getvalue(), "unr(1) x sp(1)\n")

    def test_exit_code(self):
        with redirect_stderr(StringIO()), self.assertRaises(SystemExit) as ctx:
            main(["eval", "L("])
        self.assertEqual(ctx.exception.code, 2)
