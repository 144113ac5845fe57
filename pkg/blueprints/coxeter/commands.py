from __future__ import annotations

import click
from flask import current_app

from services.coxeter import Side, canonical_form, enumerate_fc, is_fc_reduced
from services.heap import is_type_I, is_type_II, n_value, render_heap
from services.starops import (
    StarMove,
    apply_star,
    apply_weak_star,
    classified_irreducibles,
    is_irreducible,
    reduce_to_irreducible,
    weak_star_moves,
)
from utils.formats import format_element, format_trace, parse_word
from utils.options import (
    domain_errors,
    graph_options,
    max_len_option,
    require_affine_family,
    resolve_max_len,
)
from . import coxeter_bp


def _emit(lines):
    for line in lines:
        click.echo(line)


@coxeter_bp.cli.command("enumerate")
@graph_options
@max_len_option
@click.option("--format", "fmt", type=click.Choice(["text", "tsv"]), default="text",
              show_default=True)
@domain_errors
def enumerate_cmd(graph, max_len, fmt):
    """Lista os elementos totalmente comutativos até --max-len."""
    max_len = resolve_max_len(max_len)
    elements = enumerate_fc(graph, max_len)
    if fmt == "tsv":
        _emit(f"{e.length}\t{format_element(e)}\t{e}" for e in elements)
    else:
        _emit(format_element(e) for e in elements)
    current_app.logger.info("CMD_ENUMERATE graph=%s max_len=%d count=%d", graph.label, max_len, len(elements))


@coxeter_bp.cli.command("fc-check")
@graph_options
@click.option("--word", required=True, help='palavra, ex.: "1 3 2 1 2"')
@domain_errors
def fc_check_cmd(graph, word):
    """Diz se a palavra é reduzida e totalmente comutativa."""
    w = graph.check_word(parse_word(word))
    if not is_fc_reduced(graph, w):
        click.echo("not fully commutative")
        return
    click.echo("fully commutative")
    click.echo(f"rows  {canonical_form(graph, w)}")


@coxeter_bp.cli.command("heap")
@graph_options
@click.option("--word", required=True)
@domain_errors
def heap_cmd(graph, word):
    """Desenha o heap canônico e mostra n-valor e tipo."""
    e = canonical_form(graph, parse_word(word))
    if e.is_identity:
        click.echo("(identidade)")
        return
    click.echo(render_heap(e))
    click.echo(f"n-value {n_value(e)}")
    t1 = is_type_I(e)
    if t1 is not None:
        click.echo(f"type I {t1}")
    t2 = is_type_II(e)
    if t2 is not None:
        click.echo(f"type II {t2}")


@coxeter_bp.cli.command("star")
@graph_options
@click.option("--word", required=True)
@click.option("--side", type=click.Choice([s.value for s in Side]), default=None)
@click.option("--s", "s", type=int, default=None)
@click.option("--t", "t", type=int, default=None)
@click.option("--ordinary", is_flag=True, help="redução estrela comum em vez da fraca")
@click.option("--list", "list_moves", is_flag=True, help="lista os movimentos fracos definidos")
@domain_errors
def star_cmd(graph, word, side, s, t, ordinary, list_moves):
    """Sem --side/--s/--t: reduz até um irredutível e mostra o caminho."""
    e = canonical_form(graph, parse_word(word))
    if list_moves:
        _emit(str(m) for m in weak_star_moves(e))
        return
    if side is None and s is None and t is None:
        _emit(format_trace(reduce_to_irreducible(e)))
        return
    if None in (side, s, t):
        raise click.UsageError("--side, --s e --t devem ser usados juntos")
    move = StarMove(Side(side), s, t, weak=not ordinary)
    out = apply_star(e, move) if ordinary else apply_weak_star(e, move)
    click.echo("undefined" if out is None else format_element(out))


@coxeter_bp.cli.command("irreducible")
@graph_options
@max_len_option
@click.option("--classified", is_flag=True, help="usa a lista gerada pela classificação")
@domain_errors
def irreducible_cmd(graph, max_len, classified):
    """Elementos irredutíveis por estrela fraca até --max-len."""
    max_len = resolve_max_len(max_len)
    if classified:
        require_affine_family(graph)
        found = classified_irreducibles(graph, max_len)
    else:
        found = [e for e in enumerate_fc(graph, max_len) if is_irreducible(e)]
    _emit(format_element(e) for e in found)
