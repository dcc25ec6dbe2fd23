"""
Текстовая и JSON-запись значений.

Текстовая запись любого значения снова разбирается грамматикой lfac и
даёт равное значение. Режим pretty (⊗ и ·) только для вывода.
"""
from django.conf import settings
from rest_framework.renderers import JSONRenderer

from lfactors.algebra import Scalar, SplitRational
from lfactors.catalog import Gl2Param, Gsp4Param
from lfactors.poles import PoleEntry, PoleReport
from lfactors.wdrep import Character, IrredPart, WDRep

from .serializers import (
    CharacterSerializer,
    CheckReportSerializer,
    Gl2ParamSerializer,
    Gsp4ParamSerializer,
    IrredPartSerializer,
    PoleEntrySerializer,
    PoleReportSerializer,
    SplitRationalSerializer,
    WDRepSerializer,
)

# вид значения -> (имя в JSON, сериализатор)
VALUE_KINDS = {
    Scalar: ("scalar", None),
    Character: ("character", CharacterSerializer),
    IrredPart: ("irred", IrredPartSerializer),
    WDRep: ("rep", WDRepSerializer),
    SplitRational: ("rational", SplitRationalSerializer),
    Gl2Param: ("gl2", Gl2ParamSerializer),
    Gsp4Param: ("gsp4", Gsp4ParamSerializer),
    PoleEntry: ("pole", PoleEntrySerializer),
    PoleReport: ("report", PoleReportSerializer),
}


def value_kind(value) -> str:
    return VALUE_KINDS[type(value)][0]


def pole_text(entry: PoleEntry) -> str:
    args = [str(entry.root), entry.kind.name, str(entry.witness)]
    if entry.multiplicity != 1:
        args.append(f"multiplicity={entry.multiplicity}")
    if entry.bessel is not None:
        args += [f"bessel1={entry.bessel[0]}", f"bessel2={entry.bessel[1]}"]
    if entry.generic:
        args.append("generic=1")
    return f"pole({', '.join(args)})"


def report_text(report: PoleReport) -> str:
    if not report.entries:
        return "report()"
    lines = ",\n".join(f"  {pole_text(entry)}" for entry in report.entries)
    return f"report(\n{lines}\n)"


def prettify(text: str) -> str:
    return text.replace(" x ", " ⊗ ").replace("*", "·")


def render_text(value, pretty: bool = False) -> str:
    if isinstance(value, PoleReport):
        text = report_text(value)
    elif isinstance(value, PoleEntry):
        text = pole_text(value)
    else:
        text = str(value)
    return prettify(text) if pretty else text


def value_data(value):
    """Данные значения для JSON: скаляр - строка, остальное - словарь сериализатора."""
    _, serializer = VALUE_KINDS[type(value)]
    if serializer is None:
        return str(value)
    return serializer(value).data


def render_data(data) -> str:
    return JSONRenderer().render(data).decode("ascii")


def render_json(value) -> str:
    """JSON значения без конверта: пустой отчёт даёт {"entries": []}."""
    return render_data(value_data(value))


def envelope(kind: str, value) -> dict:
    return {"schema": settings.LFAC["JSON_SCHEMA"], "kind": kind, "value": value}


def render_envelope(value) -> str:
    return render_data(envelope(value_kind(value), value_data(value)))


def render_components(kind: str, components: dict, fmt: str, pretty: bool = False) -> str:
    """Несколько именованных функций от X: split и ideals."""
    if fmt == "json":
        return render_data(envelope(kind, {name: value_data(value) for name, value in components.items()}))
    return "\n".join(f"{name}: {render_text(value, pretty)}" for name, value in components.items())


def render_reports(reports, fmt: str) -> str:
    """Итоги наборов проверок."""
    if fmt == "json":
        data = {"reports": [CheckReportSerializer(report).data for report in reports]}
        return render_data(envelope("verify", data))
    lines = []
    for report in reports:
        status = "ok" if report.passed else f"{len(report.failures)} failed"
        lines.append(f"{report.identity}: {report.trials} trials, {status}")
        for failure in report.failures:
            lines.append(f"  seed {failure.seed}: {failure.counterexample}: {failure.detail}")
    return "\n".join(lines)


def error_data(exc) -> dict:
    return {
        "schema": settings.LFAC["JSON_SCHEMA"],
        "error": {
            "type": type(exc).__name__,
            "message": getattr(exc, "message", str(exc)),
            "line": getattr(exc, "line", None),
            "column": getattr(exc, "column", None),
        },
    }
