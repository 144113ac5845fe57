# utils/options.py
"""Opções de linha de comando compartilhadas pelos blueprints."""
from __future__ import annotations

import functools

import click
from flask import current_app

from services.coxeter import CoxeterGraph, GraphKind, parse_graph
from services.errors import AlgebraError

GRAPH_CHOICES = [k.value for k in GraphKind]


def graph_options(func):
    """--graph e --n viram um único argumento `graph` (CoxeterGraph)."""

    @click.option("--graph", "kind", type=click.Choice(GRAPH_CHOICES), required=True,
                  help="tipo do grafo de Coxeter")
    @click.option("--n", "n", type=int, required=True, help="posto n")
    @functools.wraps(func)
    def wrapper(kind: str, n: int, **kwargs):
        try:
            graph = parse_graph(kind, n)
        except AlgebraError as exc:
            raise click.ClickException(str(exc)) from exc
        return func(graph=graph, **kwargs)

    return wrapper


def max_len_option(func):
    return click.option("--max-len", "max_len", type=click.IntRange(min=0), default=None,
                        help="comprimento máximo (padrão: DEFAULT_MAX_LEN)")(func)


def resolve_max_len(value):
    return current_app.config["DEFAULT_MAX_LEN"] if value is None else value


def resolve_seed(value):
    return current_app.config["DEFAULT_SEED"] if value is None else value


def domain_errors(func):
    """Erros do domínio viram mensagem em stderr e código de saída 1."""

    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except AlgebraError as exc:
            current_app.logger.info("CLI_ERROR %s: %s", type(exc).__name__, exc)
            raise click.ClickException(str(exc)) from exc

    return wrapper


def require_affine_family(graph: CoxeterGraph) -> None:
    if graph.kind == GraphKind.A:
        raise click.UsageError("este comando exige --graph b, bprime ou caffine")
