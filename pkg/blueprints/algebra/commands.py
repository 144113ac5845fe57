from __future__ import annotations

from pathlib import Path

import click
from flask import current_app

from services.coxeter import canonical_form
from services.diagram import (
    factor_into_simples,
    from_generator_word,
    parse_diagram,
    render_diagram,
    serialize_diagram,
    validate_admissible,
)
from services.errors import FormatError
from services.theta import inverse_theta, theta_monomial
from services.tl import tl_identity, tl_multiply, tl_word
from utils.formats import format_element, format_poly, format_tl, parse_word, parse_words
from utils.options import domain_errors, graph_options, require_affine_family
from . import algebra_bp


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise FormatError(f"não foi possível ler {path}: {exc.strerror}") from exc


def _show(d, render: bool) -> None:
    click.echo(render_diagram(d) if render else serialize_diagram(d).rstrip("\n"))


@algebra_bp.cli.command("tl-mul")
@graph_options
@click.option("--word", default=None, help="produto b_i1 b_i2 ... de geradores")
@click.option("--words", default=None, help='vários monômios separados por ";", multiplicados em ordem')
@domain_errors
def tl_mul_cmd(graph, word, words):
    """Multiplica monômios em TL(X) e imprime a forma normal."""
    if (word is None) == (words is None):
        raise click.UsageError("use exatamente uma de --word ou --words")
    factors = [parse_word(word)] if word is not None else parse_words(words)
    out = tl_identity(graph)
    for f in factors:
        out = tl_multiply(out, tl_word(graph, f))
    click.echo(format_tl(out))


@algebra_bp.cli.command("diagram")
@graph_options
@click.option("--word", default=None, help="produto d_i1 d_i2 ... de diagramas simples")
@click.option("--file", "path", default=None, type=click.Path(dir_okay=False),
              help="lê, valida e reescreve um arquivo de diagrama")
@click.option("--factor", is_flag=True, help="mostra uma fatoração em diagramas simples")
@click.option("--render", is_flag=True, help="desenho ASCII em vez do formato de arquivo")
@domain_errors
def diagram_cmd(graph, word, path, factor, render):
    """Calcula (ou lê) um diagrama admissível."""
    require_affine_family(graph)
    if (word is None) == (path is None):
        raise click.UsageError("use exatamente uma de --word ou --file")
    if path is not None:
        d = parse_diagram(_read(path))
        if d.n != graph.n:
            raise click.UsageError(f"arquivo tem n={d.n}, mas --n={graph.n}")
        violations = validate_admissible(d)
        if violations:
            for v in violations:
                click.echo(f"violation {v}", err=True)
            raise click.ClickException("diagrama não admissível")
        coeff = "1"
    else:
        res = from_generator_word(graph, parse_word(word))
        d = res.diagram
        coeff = format_poly(res.coefficient)
    click.echo(f"coeff {coeff}")
    _show(d, render)
    if factor:
        found = factor_into_simples(d, current_app.config["FACTOR_MAX_LEN"])
        click.echo("factor " + (" ".join(map(str, found)) or "e"))


@algebra_bp.cli.command("theta")
@graph_options
@click.option("--word", default=None, help="palavra reduzida de um elemento fc")
@click.option("--inverse", "inverse_path", default=None, type=click.Path(dir_okay=False),
              help="arquivo de diagrama; imprime o elemento w com theta(b_w) = d")
@click.option("--render", is_flag=True)
@domain_errors
def theta_cmd(graph, word, inverse_path, render):
    """Imagem theta(b_w) de um monômio, ou a inversa de um diagrama."""
    require_affine_family(graph)
    if (word is None) == (inverse_path is None):
        raise click.UsageError("use exatamente uma de --word ou --inverse")
    if inverse_path is not None:
        d = parse_diagram(_read(inverse_path))
        click.echo(format_element(inverse_theta(d, graph, current_app.config["FACTOR_MAX_LEN"])))
        return
    e = canonical_form(graph, parse_word(word))
    _show(theta_monomial(e), render)
