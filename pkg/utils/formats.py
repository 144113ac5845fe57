# utils/formats.py
"""Leitura de palavras e formatação de saída de texto/TSV dos comandos."""
from __future__ import annotations

import re
from typing import List, Sequence, Tuple

import sympy

from services.coxeter import FcElement
from services.errors import FormatError
from services.starops import ReductionTrace
from services.theta import SweepReport, ThetaReport
from services.tl import TLElement

_WORD_RE = re.compile(r"[\d\s,]*")


def parse_word(text: str | None) -> Tuple[int, ...]:
    """'1 2 1', '1,2,1' ou '[1 2 1]' -> (1, 2, 1). Texto vazio é a palavra vazia."""
    text = (text or "").strip()
    if text in ("", "e"):
        return ()
    if not _WORD_RE.fullmatch(text.strip("[]")):
        raise FormatError(f"palavra inválida: {text!r}")
    return tuple(int(x) for x in re.findall(r"\d+", text))


def parse_words(text: str | None) -> List[Tuple[int, ...]]:
    return [parse_word(part) for part in (text or "").split(";")]


def format_word(word: Sequence[int]) -> str:
    return " ".join(str(i) for i in word) or "e"


def format_element(e: FcElement) -> str:
    return format_word(e.word)


def format_poly(p: sympy.Poly) -> str:
    """Polinômio em d no estilo '3d^2+1'."""
    out = ""
    for (exp,), c in p.terms():
        c = int(c)
        mag = abs(c)
        if exp == 0:
            body = str(mag)
        else:
            var = "d" if exp == 1 else f"d^{exp}"
            body = var if mag == 1 else f"{mag}{var}"
        if c < 0:
            out += "-" + body
        else:
            out += ("+" if out else "") + body
    return out or "0"


def format_tl(x: TLElement) -> str:
    if x.is_zero:
        return "0"
    terms = []
    for e, p in x.terms:
        coeff = format_poly(p)
        if len(p.terms()) > 1:
            coeff = f"({coeff})"
        terms.append(f"{coeff} * b[{' '.join(map(str, e.word))}]")
    return " + ".join(terms)


def format_trace(trace: ReductionTrace) -> List[str]:
    lines = [f"start  {format_element(trace.start)}"]
    lines += [f"move   {m}" for m in trace.moves]
    lines.append(f"end    {format_element(trace.end)}")
    return lines


def format_theta_report(report: ThetaReport) -> List[str]:
    lines = [
        f"theta {report.graph.label} max_len={report.max_len} checked={report.checked}",
        f"  scalar_failures={len(report.scalar_failures)}",
        f"  collision_failures={len(report.collision_failures)}",
        f"  descent_failures={len(report.descent_failures)}",
        f"  roundtrip_failures={len(report.roundtrip_failures)}",
        f"  structure_failures={len(report.structure_failures)}",
    ]
    for a, b in report.collision_failures[:5]:
        lines.append(f"  collision {a} ~ {b}")
    for name in ("scalar_failures", "descent_failures", "roundtrip_failures", "structure_failures"):
        for item in getattr(report, name)[:5]:
            lines.append(f"  {name[:-9]} {item}")
    lines += [f"  note {n}" for n in report.notes]
    lines.append("  PASS" if report.passed else "  FAIL")
    return lines


def format_sweep(report: SweepReport) -> List[str]:
    lines = [f"{report.name} checked={report.checked} failures={len(report.failures)}"]
    lines += [f"  {f}" for f in report.failures[:5]]
    lines.append("  PASS" if report.passed else "  FAIL")
    return lines
