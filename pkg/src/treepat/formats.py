"""Renderers for sequences, generating-function reports and class tables."""

from __future__ import annotations

import csv
import io
import json
from collections.abc import Sequence
from enum import StrEnum

from jinja2 import Environment, PackageLoader

from .classify import WilfClass
from .engine import PatternSet
from .ratfun import RationalGF, format_gf

_jinja_env = Environment(
    loader=PackageLoader("treepat", "templates"),
    autoescape=False,
    trim_blocks=True,
    lstrip_blocks=True,
    keep_trailing_newline=True,
)


class OutputFormat(StrEnum):
    PLAIN = "plain"
    CSV = "csv"
    JSON = "json"
    BFILE = "bfile"


# Shape of `gf --format json`.
GF_REPORT_SCHEMA = {
    "type": "object",
    "required": ["patterns", "gf", "sequence", "growth_rate", "oeis"],
    "properties": {
        "patterns": {"type": "array", "items": {"type": "string"}},
        "gf": {
            "type": "object",
            "required": ["num", "den"],
            "properties": {
                "num": {"type": "array", "items": {"type": "integer"}},
                "den": {"type": "array", "items": {"type": "integer"}},
            },
        },
        "sequence": {"type": "array", "items": {"type": "integer"}},
        "growth_rate": {"type": "number"},
        "oeis": {"type": "array", "items": {"type": "string"}},
    },
}


def sequence_plain(sequence: Sequence[int]) -> str:
    return ",".join(str(v) for v in sequence)


def sequence_bfile(sequence: Sequence[int]) -> str:
    return "".join(f"{n} {v}\n" for n, v in enumerate(sequence, start=1))


def sequence_csv(sequence: Sequence[int]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["n", "a(n)"])
    for n, v in enumerate(sequence, start=1):
        writer.writerow([n, v])
    return buf.getvalue()


def render_sequence(sequence: Sequence[int], fmt: OutputFormat | str) -> str:
    """Render a(1..N); every format ends with a newline."""
    fmt = OutputFormat(fmt)
    if fmt is OutputFormat.BFILE:
        return sequence_bfile(sequence)
    if fmt is OutputFormat.CSV:
        return sequence_csv(sequence)
    if fmt is OutputFormat.JSON:
        return json.dumps({"sequence": list(sequence)}) + "\n"
    return sequence_plain(sequence) + "\n"


def gf_report(
    patterns: PatternSet,
    gf: RationalGF,
    sequence: Sequence[int],
    growth: float,
    oeis_ids: Sequence[str] = (),
) -> dict:
    return {
        "patterns": patterns.literals(),
        "gf": gf.to_json(),
        "sequence": list(sequence),
        "growth_rate": growth,
        "oeis": list(oeis_ids),
    }


def render_gf_report(report: dict, fmt: OutputFormat | str) -> str:
    fmt = OutputFormat(fmt)
    if fmt is OutputFormat.JSON:
        return json.dumps(report, indent=2) + "\n"
    if fmt is OutputFormat.PLAIN:
        gf = RationalGF.from_json(report["gf"])
        lines = [f"g(x) = {format_gf(gf)}", sequence_plain(report["sequence"])]
        if report["oeis"]:
            lines.append("OEIS: " + ", ".join(report["oeis"]))
        return "\n".join(lines) + "\n"
    return render_sequence(report["sequence"], fmt)


def _class_csv(classes: Sequence[WilfClass]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["class", "gf_num", "gf_den", "terms", "members"])
    for cls in classes:
        writer.writerow(
            [
                cls.label,
                " ".join(str(c) for c in cls.gf.num.coeffs),
                " ".join(str(c) for c in cls.gf.den.coeffs),
                " ".join(str(v) for v in cls.sequence_prefix),
                "; ".join(str(member) for member in cls.members),
            ]
        )
    return buf.getvalue()


def render_classes(classes: Sequence[WilfClass], fmt: OutputFormat | str) -> str:
    fmt = OutputFormat(fmt)
    if fmt is OutputFormat.JSON:
        return json.dumps([cls.to_json() for cls in classes], indent=2) + "\n"
    if fmt is OutputFormat.CSV:
        return _class_csv(classes)
    if fmt is OutputFormat.BFILE:
        raise ValueError("class tables have no b-file form")
    view = [
        {
            "label": cls.label,
            "gf_text": format_gf(cls.gf),
            "sequence_text": ", ".join(str(v) for v in cls.sequence_prefix),
            "members": [str(member) for member in cls.members],
        }
        for cls in classes
    ]
    return _jinja_env.get_template("classes.txt.j2").render(classes=view)
