from __future__ import annotations

import click
from flask import current_app

from services.acceptance import classification_check, enumeration_oracle_check, finite_max_len
from services.coxeter import CoxeterGraph, GraphKind
from services.theta import coherence_sweep, deco_confluence_sweep, relations_check, verify_faithfulness
from utils.audit import write_audit
from utils.formats import format_sweep, format_theta_report
from utils.options import domain_errors, resolve_seed
from . import verify_bp

SUITES = ["oracle", "classification", "relations", "theta", "coherence", "confluence", "all"]

# tamanhos padrão das varreduras exaustivas
THETA_RUNS = [(2, 12), (3, 12), (4, 10)]
AFFINE_CLASSIFICATION_LEN = 12


def _classification_reports(graph, max_len):
    if graph is not None:
        if graph.kind == GraphKind.A:
            raise click.UsageError("classificação exige --graph b, bprime ou caffine")
        if max_len is None:
            max_len = AFFINE_CLASSIFICATION_LEN if graph.kind == GraphKind.CAFFINE else finite_max_len(graph)
        yield classification_check(graph, max_len)
        return
    for kind in (GraphKind.B, GraphKind.BPRIME):
        for n in range(2, 6):
            g = CoxeterGraph(kind, n)
            yield classification_check(g, finite_max_len(g))
    for n in (2, 3, 4):
        yield classification_check(CoxeterGraph(GraphKind.CAFFINE, n), AFFINE_CLASSIFICATION_LEN)


def _theta_reports(graph, max_len):
    if graph is not None:
        if graph.kind != GraphKind.CAFFINE:
            raise click.UsageError("theta exige --graph caffine")
        yield verify_faithfulness(graph, max_len if max_len is not None else 10)
        return
    for n, length in THETA_RUNS:
        yield verify_faithfulness(CoxeterGraph(GraphKind.CAFFINE, n), length)


@verify_bp.cli.command("verify")
@click.option("--suite", type=click.Choice(SUITES), default="all", show_default=True)
@click.option("--graph", "kind", type=click.Choice([k.value for k in GraphKind]), default=None,
              help="restringe classification/theta a um grafo")
@click.option("--n", "n", type=int, default=None)
@click.option("--max-len", "max_len", type=click.IntRange(min=0), default=None)
@click.option("--seed", type=int, default=None,
              help="semente das varreduras aleatórias (padrão: DEFAULT_SEED)")
@domain_errors
def verify_cmd(suite, kind, n, max_len, seed):
    """Roda as verificações de aceitação; sai com código 1 se alguma falhar."""
    if (kind is None) != (n is None):
        raise click.UsageError("--graph e --n devem ser usados juntos")
    graph = CoxeterGraph(GraphKind(kind), n) if kind is not None else None
    seed = resolve_seed(seed)
    cfg = current_app.config
    wanted = SUITES[:-1] if suite == "all" else [suite]

    failed = []
    for name in wanted:
        current_app.logger.info("VERIFY_SUITE %s seed=%d", name, seed)
        if name == "oracle":
            reports = [enumeration_oracle_check()]
        elif name == "classification":
            reports = list(_classification_reports(graph, max_len))
        elif name == "relations":
            reports = [relations_check(k) for k in range(2, 7)]
        elif name == "theta":
            reports = list(_theta_reports(graph, max_len))
        elif name == "coherence":
            reports = [coherence_sweep(5, cfg["VERIFY_RANDOM_WORDS"], cfg["VERIFY_WORD_LEN"], seed)]
        else:
            reports = [deco_confluence_sweep(cfg["VERIFY_DECO_WORDS"], cfg["VERIFY_DECO_LEN"],
                                             cfg["VERIFY_DECO_ORDERS"], seed)]
        for r in reports:
            lines = format_theta_report(r) if name == "theta" else format_sweep(r)
            for line in lines:
                click.echo(line)
            if not r.passed:
                failed.append(name)

    write_audit("verify", "run", f"suite={suite}",
                after={"seed": seed, "suites": wanted, "failed": sorted(set(failed))})
    if failed:
        raise click.ClickException("falhas em: " + ", ".join(sorted(set(failed))))
    click.echo("ALL PASS")
