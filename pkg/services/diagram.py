# services/diagram.py
"""Diagramas decorados admissíveis com n+2 nós por face.

Um diagrama é guardado como registro canônico: emparelhamento (arestas
orientadas do menor para o maior nó), palavras de decoração por aresta,
contador de laços C1 e, só quando a = 1, a ordem vertical dos blocos nas
arestas propagantes.
"""
from __future__ import annotations

import logging
from collections import defaultdict
from dataclasses import dataclass, replace
from enum import Enum
from functools import lru_cache
from itertools import product
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import sympy

from services.coxeter import CoxeterGraph, GraphKind, Side
from services.errors import (
    DescriptorError,
    DiagramError,
    FormatError,
    GraphMismatchError,
    InadmissibleDiagramError,
    InvalidGeneratorError,
    InvalidGraphError,
    MalformedDiagramError,
    NotFullyCommutativeError,
)
from services.heap import TypeIDescriptor, TypeIFamily, make_type_I
from services.tl import delta_poly, scalar_poly
from services.verlinde import (
    Family,
    deco_loop_normal_form,
    deco_normal_form,
    family_of,
    is_normal,
    parse_deco,
)

logger = logging.getLogger(__name__)

# laço admissível (C1): decorado por ▲△
C1_LOOP = "BO"


class Face(str, Enum):
    NORTH = "N"
    SOUTH = "S"


@dataclass(frozen=True, order=True)
class NodeRef:
    face: Face
    index: int

    def __str__(self) -> str:
        return f"{self.face.value}{self.index}"


def north(i: int) -> NodeRef:
    return NodeRef(Face.NORTH, i)


def south(i: int) -> NodeRef:
    return NodeRef(Face.SOUTH, i)


@dataclass(frozen=True)
class DiagramEdge:
    a: NodeRef
    b: NodeRef
    blocks: Tuple[str, ...] = ()

    @property
    def propagating(self) -> bool:
        return self.a.face != self.b.face

    @property
    def word(self) -> str:
        return "".join(self.blocks)

    @property
    def label(self) -> str:
        return f"{self.a}-{self.b}"

    def touches(self, node: NodeRef) -> bool:
        return node in (self.a, self.b)


BlockRef = Tuple[int, int]


@dataclass(frozen=True)
class AdmissibleDiagram:
    n: int
    edges: Tuple[DiagramEdge, ...]
    loops: int = 0
    block_order: Optional[Tuple[BlockRef, ...]] = None

    @property
    def node_count(self) -> int:
        return self.n + 2

    @property
    def a_value(self) -> int:
        return sum(1 for e in self.edges if e.a.face == Face.NORTH and e.b.face == Face.NORTH)

    @property
    def is_undammed(self) -> bool:
        return not any(e.propagating for e in self.edges)

    def propagating_edges(self) -> List[int]:
        """Índices das arestas propagantes, da esquerda para a direita."""
        return [k for k, e in enumerate(self.edges) if e.propagating]

    def edge_at(self, node: NodeRef) -> int:
        for k, e in enumerate(self.edges):
            if e.touches(node):
                return k
        raise MalformedDiagramError(f"nó {node} sem aresta")

    def simple_edges(self, face: Face) -> List[int]:
        """i tal que a aresta (i, i+1) da face dada é idêntica à de d_i."""
        return sorted(
            e.a.index for e in self.edges
            if e.a.face == face and e.b.face == face and e.b.index == e.a.index + 1
            and e.blocks == _simple_deco(self.n, e.a.index)
        )


@dataclass(frozen=True)
class DiagramResult:
    """Representa 2^two_exp * d^delta_exp * diagram."""

    two_exp: int
    delta_exp: int
    diagram: AdmissibleDiagram

    @property
    def coefficient(self) -> sympy.Poly:
        return scalar_poly(self.two_exp, self.delta_exp)

    @property
    def is_scalar_free(self) -> bool:
        return self.two_exp == 0 and self.delta_exp == 0


def _build(
    n: int,
    edges: Sequence[Tuple[NodeRef, NodeRef, Tuple[str, ...]]],
    loops: int = 0,
    order: Optional[Sequence[Tuple[NodeRef, int]]] = None,
) -> AdmissibleDiagram:
    """Monta o registro canônico; `order` referencia arestas pelo nó inicial."""
    norm = []
    for a, b, blocks in edges:
        if b < a:
            a, b = b, a
            blocks = tuple(x[::-1] for x in reversed(blocks))
        norm.append(DiagramEdge(a, b, tuple(blocks)))
    norm.sort(key=lambda e: e.a)
    block_order = None
    if order is not None:
        pos = {e.a: k for k, e in enumerate(norm)}
        block_order = tuple((pos[node], bi) for node, bi in order)
    return AdmissibleDiagram(n, tuple(norm), loops, block_order)


def _graph_n(graph: CoxeterGraph) -> int:
    if graph.kind == GraphKind.A:
        raise InvalidGraphError("diagramas decorados existem apenas para C~, B e B'")
    return graph.n


def identity_diagram(graph_or_n) -> AdmissibleDiagram:
    n = graph_or_n if isinstance(graph_or_n, int) else _graph_n(graph_or_n)
    return _build(n, [(north(j), south(j), ()) for j in range(1, n + 3)])


def _simple_deco(n: int, i: int) -> Tuple[str, ...]:
    return ("b",) if i == 1 else ("o",) if i == n + 1 else ()


def _simple(n: int, i: int) -> AdmissibleDiagram:
    if not 1 <= i <= n + 1:
        raise InvalidGeneratorError(f"d{i} não existe para n={n}")
    deco = _simple_deco(n, i)
    edges = [(north(i), north(i + 1), deco), (south(i), south(i + 1), deco)]
    edges += [(north(j), south(j), ()) for j in range(1, n + 3) if j not in (i, i + 1)]
    return _build(n, edges, order=())


def simple_diagram(graph: CoxeterGraph, i: int) -> AdmissibleDiagram:
    _graph_n(graph)
    graph.check_generator(i)
    return _simple(graph.n, i)


def a_value(d: AdmissibleDiagram) -> int:
    return d.a_value


# ---------- concatenação ----------

def _oriented(blocks: Tuple[str, ...], forward: bool) -> Tuple[str, ...]:
    return blocks if forward else tuple(x[::-1] for x in reversed(blocks))


def _evaluate_loop(word: str) -> Tuple[int, int, int]:
    """(expoente de 2, expoente de d, laços C1) de um laço fechado no meio."""
    if not word:
        return 0, 1, 0
    nf = deco_loop_normal_form(word)
    if nf.word in ("B", "O"):
        return nf.two_exp, 1, 0
    if nf.word == C1_LOOP:
        return nf.two_exp, 0, 1
    raise DiagramError(f"laço com decoração {word!r} não reduz a uma forma admissível")


def concatenate(top: AdmissibleDiagram, bottom: AdmissibleDiagram) -> DiagramResult:
    """Produto top * bottom: a face sul de `top` é colada à face norte de `bottom`."""
    if top.n != bottom.n:
        raise GraphMismatchError(f"diagramas de tamanhos diferentes: n={top.n} e n={bottom.n}")
    n = top.n
    pieces = (top, bottom)
    layers = ({Face.NORTH: "N", Face.SOUTH: "M"}, {Face.NORTH: "M", Face.SOUTH: "S"})

    incident: Dict[Tuple[str, int], List[Tuple[int, int, int]]] = defaultdict(list)
    for p, d in enumerate(pieces):
        for k, e in enumerate(d.edges):
            incident[(layers[p][e.a.face], e.a.index)].append((p, k, 0))
            incident[(layers[p][e.b.face], e.b.index)].append((p, k, 1))

    ranks = []
    for d in pieces:
        ranks.append({ref: r for r, ref in enumerate(d.block_order or ())})

    used = set()

    def walk(start):
        segments = []
        point = start
        while True:
            options = [x for x in incident[point] if (x[0], x[1]) not in used]
            if not options:
                break
            p, k, end = options[0]
            used.add((p, k))
            segments.append((p, k, end == 0))
            e = pieces[p].edges[k]
            node = e.b if end == 0 else e.a
            point = (layers[p][node.face], node.index)
            if point[0] != "M":
                break
        return segments, point

    paths = []
    for layer in ("N", "S"):
        for j in range(1, n + 3):
            start = (layer, j)
            if any((x[0], x[1]) in used for x in incident[start]):
                continue
            segments, end = walk(start)
            paths.append((start, end, segments))

    two = delta = c1 = 0
    for j in range(1, n + 3):
        start = ("M", j)
        if all((x[0], x[1]) in used for x in incident[start]):
            continue
        segments, _ = walk(start)
        word = "".join(
            "".join(_oriented(pieces[p].edges[k].blocks, fwd)) for p, k, fwd in segments
        )
        k2, kd, kc = _evaluate_loop(word)
        two, delta, c1 = two + k2, delta + kd, c1 + kc

    def node_of(point) -> NodeRef:
        return north(point[1]) if point[0] == "N" else south(point[1])

    a_res = sum(1 for s, e, _ in paths if s[0] == "N" and e[0] == "N")
    edges = []
    order_items = []
    for s, e, segments in paths:
        a, b = node_of(s), node_of(e)
        if a_res == 1 and a.face != b.face:
            for pos, (p, k, fwd) in enumerate(segments):
                piece_edge = pieces[p].edges[k]
                for bi, blk in enumerate(_oriented(piece_edge.blocks, fwd)):
                    if piece_edge.propagating and (k, bi) in ranks[p]:
                        key = (2 * p, ranks[p][(k, bi)], 0, 0)
                    else:
                        key = (1, pos, a.index, bi)
                    order_items.append((key, a, blk))
            edges.append([a, b, ()])
            continue
        word = "".join("".join(_oriented(pieces[p].edges[k].blocks, fwd)) for p, k, fwd in segments)
        nf = deco_normal_form(word)
        two += nf.two_exp
        edges.append([a, b, (nf.word,) if nf.word else ()])

    order = None
    if a_res == 1:
        order_items.sort(key=lambda x: x[0])
        merged: List[List] = []
        for _, a, blk in order_items:
            if merged and merged[-1][0] == a:
                merged[-1][1] += blk
            else:
                merged.append([a, blk])
        by_start = {edge[0]: edge for edge in edges}
        order = []
        for a, word in merged:
            nf = deco_normal_form(word)
            two += nf.two_exp
            target = by_start[a]
            order.append((a, len(target[2])))
            target[2] = target[2] + (nf.word,)

    out = _build(n, [tuple(x) for x in edges], top.loops + bottom.loops + c1, order)
    return DiagramResult(two, delta, out)


# ---------- ação dos geradores ----------

def act_simple(side: Side, i: int, r: DiagramResult) -> DiagramResult:
    d = r.diagram
    simple = _simple(d.n, i)
    res = concatenate(simple, d) if side == Side.LEFT else concatenate(d, simple)
    return DiagramResult(r.two_exp + res.two_exp, r.delta_exp + res.delta_exp, res.diagram)


def from_generator_word(graph: CoxeterGraph, gens: Sequence[int]) -> DiagramResult:
    n = _graph_n(graph)
    gens = graph.check_word(gens)
    res = DiagramResult(0, 0, identity_diagram(n))
    for g in reversed(gens):
        res = act_simple(Side.LEFT, g, res)
    return res


def multiply(
    d1: AdmissibleDiagram, d2: AdmissibleDiagram, max_len: Optional[int] = None
) -> DiagramResult:
    if d1.n != d2.n:
        raise GraphMismatchError(f"diagramas de tamanhos diferentes: n={d1.n} e n={d2.n}")
    res = DiagramResult(0, 0, d2)
    for g in reversed(factor_into_simples(d1, max_len)):
        res = act_simple(Side.LEFT, g, res)
    return res


# ---------- fatoração em diagramas simples ----------

DEFAULT_FACTOR_LEN = 40

_SYMBOLS = ("", "b", "B", "o", "O")


def _wall_distance(n: int, index: int, fam: Family) -> int:
    return index - 1 if fam == Family.CLOSED else n + 2 - index


def _edge_crossings(n: int, e: DiagramEdge) -> int:
    """Cruzamentos com as retas verticais entre nós, visitando as paredes na ordem da decoração."""
    word = e.word
    if not word:
        return abs(e.a.index - e.b.index)
    fams = [family_of(ch) for ch in word]
    total = _wall_distance(n, e.a.index, fams[0]) + _wall_distance(n, e.b.index, fams[-1])
    return total + sum(n + 1 for x, y in zip(fams, fams[1:]) if x != y)


def _crossings(d: AdmissibleDiagram) -> int:
    return sum(_edge_crossings(d.n, e) for e in d.edges) + d.loops * 2 * (d.n + 1)


def _deco_weight(d: AdmissibleDiagram) -> int:
    return sum(2 if ch.isupper() else 1 for e in d.edges for ch in e.word)


def _simple_index(n: int, e: DiagramEdge) -> Optional[int]:
    if e.propagating or e.b.index != e.a.index + 1 or e.blocks != _simple_deco(n, e.a.index):
        return None
    return e.a.index


def _splits(target: str, cup: str) -> Iterator[Tuple[str, str]]:
    """Pares (y1, y2) normais com y1 + cup + y2 reduzindo a `target` sem escalar."""
    seen = set()
    for k in range(len(target) + 1):
        for k2, s1, s2 in product((k, k + 1), _SYMBOLS, _SYMBOLS):
            if k2 > len(target):
                continue
            y1, y2 = target[:k] + s1, s2 + target[k2:]
            if (y1, y2) in seen or not (is_normal(y1) and is_normal(y2)):
                continue
            seen.add((y1, y2))
            nf = deco_normal_form(y1 + cup + y2)
            if nf.two_exp == 0 and nf.word == target:
                yield y1, y2


def _split_candidates(d: AdmissibleDiagram, i: int) -> Iterator[AdmissibleDiagram]:
    """Cofatores x com a(x) >= 2: a aresta que passa pelo copo de d_i é cortada em N_i e N_{i+1}."""
    n = d.n
    cup = "".join(_simple_deco(n, i))
    others = [e for e in d.edges if e.a != north(i)]
    for m in others:
        rest = [(e.a, e.b, e.blocks) for e in others if e is not m]
        for p, q in ((m.a, m.b), (m.b, m.a)):
            if p.face == q.face == Face.SOUTH and d.a_value == 2:
                continue
            target = "".join(_oriented(m.blocks, p == m.a))
            for y1, y2 in _splits(target, cup):
                edges = rest + [
                    (p, north(i), (y1,) if y1 else ()),
                    (north(i + 1), q, (y2,) if y2 else ()),
                ]
                yield _build(n, edges, d.loops)


def _divides(d: AdmissibleDiagram, i: int, x: AdmissibleDiagram) -> bool:
    try:
        res = concatenate(_simple(d.n, i), x)
        if not res.is_scalar_free or res.diagram != d:
            return False
        return not validate_admissible(x)
    except DiagramError:
        return False


def _match_zigzag(
    d: AdmissibleDiagram, prefix: Tuple[int, ...], i: int, j: int
) -> Optional[List[int]]:
    """Zigue-zague u de i até j com d_prefix * d_u = d."""
    graph = CoxeterGraph(GraphKind.CAFFINE, d.n)
    weight = _deco_weight(d)
    words = []
    for k in range(weight // 2 + 2):
        for fam in TypeIFamily:
            try:
                words.append(make_type_I(graph, TypeIDescriptor(fam, i, j, k)).word)
            except (DescriptorError, NotFullyCommutativeError):
                continue
    walls = (1, d.n + 1)
    # cada visita a uma parede deixa peso 2 de decoração
    words.sort(key=lambda w: 2 * sum(1 for g in prefix + w if g in walls) != weight)
    for word in words:
        res = from_generator_word(graph, prefix + word)
        if res.is_scalar_free and res.diagram == d:
            return list(word)
    return None


def _factor_zigzag(d: AdmissibleDiagram) -> Optional[List[int]]:
    tops, bottoms = d.simple_edges(Face.NORTH), d.simple_edges(Face.SOUTH)
    if len(tops) != 1 or len(bottoms) != 1:
        return None
    return _match_zigzag(d, (), tops[0], bottoms[0])


def _zigzag_cofactor(d: AdmissibleDiagram, i: int) -> Optional[List[int]]:
    """d = d_i * d_u com u zigue-zague: um copo do sul de d vira duas propagantes em d_u."""
    caps = [e for e in d.edges if e.a.face == e.b.face == Face.NORTH and e.a != north(i)]
    cups = [e for e in d.edges if e.a.face == e.b.face == Face.SOUTH]
    if len(caps) != 1 or len(cups) != 2:
        return None
    top = _simple_index(d.n, caps[0])
    if top is None:
        return None
    for kept in cups:
        bottom = _simple_index(d.n, kept)
        if bottom is not None:
            found = _match_zigzag(d, (i,), top, bottom)
            if found is not None:
                return found
    return None


def _peel(
    d: AdmissibleDiagram, budget: int, failed: Dict[AdmissibleDiagram, int]
) -> Optional[List[int]]:
    a = d.a_value
    if a == 0:
        return [] if d == identity_diagram(d.n) else None
    if a == 1:
        return _factor_zigzag(d)
    if budget <= 0 or failed.get(d, -1) >= budget:
        return None
    h = _crossings(d)
    ranked = [
        (_crossings(x), i, x)
        for i in d.simple_edges(Face.NORTH)
        for x in set(_split_candidates(d, i))
    ]
    ranked.sort(key=lambda item: (item[0], item[1], serialize_diagram(item[2])))
    # cofatores que encurtam primeiro; depois os zigue-zagues; os demais por último
    for i, x in ((i, x) for c, i, x in ranked if c < h):
        if _divides(d, i, x):
            tail = _peel(x, budget - 1, failed)
            if tail is not None:
                return [i] + tail
    if a == 2:
        for i in d.simple_edges(Face.NORTH):
            tail = _zigzag_cofactor(d, i)
            if tail is not None:
                return [i] + tail
    for i, x in ((i, x) for c, i, x in ranked if c >= h):
        if _divides(d, i, x):
            tail = _peel(x, budget - 1, failed)
            if tail is not None:
                return [i] + tail
    failed[d] = budget
    return None


@lru_cache(maxsize=2048)
def _factor_cached(d: AdmissibleDiagram, budget: int) -> Optional[Tuple[int, ...]]:
    found = _peel(d, budget, {})
    return None if found is None else tuple(found)


def factor_into_simples(d: AdmissibleDiagram, max_len: Optional[int] = None) -> List[int]:
    """Palavra g1..gk com d_g1 * ... * d_gk = d, sem escalar.

    Cada tampa simples do norte é uma descida à esquerda: retira-se d_i e o
    cofator sai da aresta que passava pelo copo de d_i. Com a = 1 o diagrama
    é um zigue-zague e a palavra vem do descritor. `max_len` é o piso do
    limite de passos; o limite cresce com os cruzamentos do diagrama.
    """
    ensure_admissible(d)
    floor = DEFAULT_FACTOR_LEN if max_len is None else max_len
    budget = max(floor, _crossings(d) + d.node_count)
    found = _factor_cached(d, budget)
    if found is None:
        raise DiagramError(f"nenhuma fatoração encontrada em {budget} passos")
    logger.debug("DIAGRAM_FACTOR n=%d len=%d", d.n, len(found))
    return list(found)


# ---------- validação (axiomas C1-C5) ----------

def _circle(node: NodeRef, size: int) -> int:
    return node.index if node.face == Face.NORTH else 2 * size + 1 - node.index


def check_structure(d: AdmissibleDiagram) -> None:
    size = d.node_count
    if d.n < 1:
        raise MalformedDiagramError(f"n inválido: {d.n}")
    seen = set()
    for e in d.edges:
        for node in (e.a, e.b):
            if not 1 <= node.index <= size:
                raise MalformedDiagramError(f"nó fora do intervalo: {node}")
            if node in seen:
                raise MalformedDiagramError(f"nó {node} usado duas vezes")
            seen.add(node)
        if not e.a < e.b:
            raise MalformedDiagramError(f"aresta fora da orientação canônica: {e.label}")
        for blk in e.blocks:
            parse_deco(blk)
    if len(seen) != 2 * size:
        raise MalformedDiagramError("o emparelhamento não cobre todos os nós")
    if list(d.edges) != sorted(d.edges, key=lambda e: e.a):
        raise MalformedDiagramError("arestas fora de ordem")
    if d.loops < 0:
        raise MalformedDiagramError("número de laços negativo")
    if (d.block_order is not None) != (d.a_value == 1):
        raise MalformedDiagramError("ordem de blocos deve existir exatamente quando a = 1")


def _chords(d: AdmissibleDiagram) -> List[Tuple[int, int]]:
    size = d.node_count
    return [tuple(sorted((_circle(e.a, size), _circle(e.b, size)))) for e in d.edges]


def _left_exposed(chords, k: int) -> bool:
    p, q = chords[k]
    return not any(r < p and q < s for j, (r, s) in enumerate(chords) if j != k)


def _right_exposed(chords, k: int, size: int) -> bool:
    p, q = chords[k]
    wall = size + 0.5
    for j, (r, s) in enumerate(chords):
        if j != k and (r < p and q < s) != (r < wall < s):
            return False
    return True


def _dot_allowed(e: DiagramEdge, k: int, size: int) -> bool:
    """• só encosta nos nós 1/1', ○ só nos nós n+2/(n+2)', nas pontas da aresta."""
    word = e.word
    last = len(word) - 1
    if word[k] == "b":
        return (k == 0 and e.a.index == 1) or (k == last and e.b.index == 1)
    return (k == 0 and e.a.index == size) or (k == last and e.b.index == size)


def validate_admissible(d: AdmissibleDiagram) -> List[str]:
    check_structure(d)
    size = d.node_count
    out: List[str] = []
    chords = _chords(d)
    for x in range(len(chords)):
        p, q = chords[x]
        for y in range(x + 1, len(chords)):
            r, s = chords[y]
            if p < r < q < s or r < p < s < q:
                out.append(f"arestas {d.edges[x].label} e {d.edges[y].label} se cruzam")

    a = d.a_value
    if a == 0:
        if d.loops or any(e.blocks for e in d.edges):
            out.append("o único diagrama com a = 0 é a identidade sem decorações")
        return out

    for k, e in enumerate(d.edges):
        for blk in e.blocks:
            if not blk:
                out.append(f"{e.label}: bloco vazio")
            elif not is_normal(blk):
                out.append(f"{e.label}: bloco {blk!r} não está na forma normal")
        if len(e.blocks) > 1 and (a != 1 or not e.propagating):
            out.append(f"{e.label}: mais de um bloco")
        fams = {family_of(ch) for ch in e.word}
        if Family.CLOSED in fams and not _left_exposed(chords, k):
            out.append(f"{e.label}: decoração fechada sem acesso à parede esquerda")
        if Family.OPEN in fams and not _right_exposed(chords, k, size):
            out.append(f"{e.label}: decoração aberta sem acesso à parede direita")

    if d.loops and not d.is_undammed:
        out.append("laços só podem aparecer em diagramas sem arestas propagantes (C1)")

    prop = d.propagating_edges()
    if not prop:
        out.extend(_check_undammed(d))
    elif len(prop) == 1:
        out.extend(_check_single_propagating(d, prop[0]))
    elif a > 1:
        out.extend(_check_dammed(d))
    else:
        out.extend(_check_a_one(d, prop))
    return out


def _check_undammed(d: AdmissibleDiagram) -> List[str]:
    size = d.node_count
    out = []
    for e in d.edges:
        word = e.word
        if any(family_of(word[k]) == Family.CLOSED for k in range(1, len(word))
               if family_of(word[k - 1]) == Family.OPEN):
            out.append(f"{e.label}: decoração fechada depois de uma aberta")
        if e.a.index == 1 and not word.startswith("b"):
            out.append(f"{e.label}: aresta no nó 1 deve começar com •")
        if e.b.index == size and not word.endswith("o"):
            out.append(f"{e.label}: aresta no nó {size} deve terminar com ○")
        for k, ch in enumerate(word):
            if ch in "bo" and not _dot_allowed(e, k, size):
                out.append(f"{e.label}: {ch!r} fora da posição permitida (C2)")
        if any(family_of(ch) == Family.OPEN for ch in word):
            for f in d.edges:
                if f.a.face == e.a.face and f.a.index > e.b.index and any(
                    family_of(ch) == Family.CLOSED for ch in f.word
                ):
                    out.append(f"{f.label}: decoração fechada à direita de {e.label}")
    return out


def _check_single_propagating(d: AdmissibleDiagram, k: int) -> List[str]:
    size = d.node_count
    out = []
    e = d.edges[k]
    word = e.word
    mixed = len({family_of(ch) for ch in word}) == 2
    for pos, ch in enumerate(word):
        if ch in "bo" and not _dot_allowed(e, pos, size):
            out.append(f"{e.label}: {ch!r} fora da posição permitida (C3)")
    if mixed:
        if e.a.index == 1 and word[0] != "b":
            out.append(f"{e.label}: a primeira decoração deve ser •")
        if e.b.index == 1 and word[-1] != "b":
            out.append(f"{e.label}: a última decoração deve ser •")
        if e.a.index == size and word[0] != "o":
            out.append(f"{e.label}: a primeira decoração deve ser ○")
        if e.b.index == size and word[-1] != "o":
            out.append(f"{e.label}: a última decoração deve ser ○")
    if len(word) == 1:
        if e.a == north(1) and e.b == south(1) and word != "B":
            out.append(f"{e.label}: decoração única deve ser ▲")
        if e.a == north(size) and e.b == south(size) and word != "O":
            out.append(f"{e.label}: decoração única deve ser △")
    for j, f in enumerate(d.edges):
        if j == k:
            continue
        if {f.a.index, f.b.index} & {1} and f.blocks != ("b",):
            out.append(f"{f.label}: aresta no nó 1 deve ter apenas •")
        elif {f.a.index, f.b.index} & {size} and f.blocks != ("o",):
            out.append(f"{f.label}: aresta no nó {size} deve ter apenas ○")
        elif not {f.a.index, f.b.index} & {1, size} and any(ch in "bo" for ch in f.word):
            out.append(f"{f.label}: • ou ○ fora das pontas (C3)")
    return out


def _check_dammed(d: AdmissibleDiagram) -> List[str]:
    size = d.node_count
    out = []
    for end, dot, tri in ((1, "b", "B"), (size, "o", "O")):
        straight = next(
            (e for e in d.edges if e.a == north(end) and e.b == south(end)), None
        )
        if straight is not None:
            if straight.word not in ("", tri):
                out.append(f"{straight.label}: só pode ter {tri!r} ou nada (C4)")
        else:
            for node in (north(end), south(end)):
                e = d.edges[d.edge_at(node)]
                if e.blocks != (dot,):
                    out.append(f"{e.label}: deve ter apenas {dot!r} (C4)")
    for e in d.edges:
        for pos, ch in enumerate(e.word):
            if ch in "bo" and not _dot_allowed(e, pos, size):
                out.append(f"{e.label}: {ch!r} fora da posição permitida (C4)")
    return out


def _check_a_one(d: AdmissibleDiagram, prop: List[int]) -> List[str]:
    size = d.node_count
    out = []
    left, right = prop[0], prop[-1]
    for k in prop[1:-1]:
        if d.edges[k].blocks:
            out.append(f"{d.edges[k].label}: só as arestas propagantes extremas são decoradas (C5)")
    for k, fam in ((left, Family.CLOSED), (right, Family.OPEN)):
        e = d.edges[k]
        for blk in e.blocks:
            if len(blk) != 1 or family_of(blk) != fam:
                out.append(f"{e.label}: bloco {blk!r} inválido na aresta extrema (C5)")
    for e in d.edges:
        if e.propagating:
            continue
        for pos, ch in enumerate(e.word):
            if ch in "bo" and not _dot_allowed(e, pos, size):
                out.append(f"{e.label}: {ch!r} fora da posição permitida (C5)")

    expected = {(k, bi) for k in prop for bi in range(len(d.edges[k].blocks))}
    order = list(d.block_order or ())
    if set(order) != expected or len(order) != len(expected):
        out.append("a ordem de blocos não cobre exatamente os blocos propagantes")
        return out
    # • e ○ das propagantes só no bloco mais alto ou no mais baixo
    for rank, (k, bi) in enumerate(order):
        blk = d.edges[k].blocks[bi]
        if blk in ("b", "o") and rank not in (0, len(order) - 1):
            out.append(f"{d.edges[k].label}: {blk!r} fora do topo ou da base (C5)")
    last: Dict[int, int] = {}
    for k, bi in order:
        if last.get(k, -1) >= bi:
            out.append(f"{d.edges[k].label}: ordem de blocos invertida")
        last[k] = bi
    for x in range(len(order) - 1):
        if order[x][0] == order[x + 1][0]:
            out.append("blocos consecutivos na mesma aresta deveriam estar conjugados")
    return out


def ensure_admissible(d: AdmissibleDiagram) -> AdmissibleDiagram:
    violations = validate_admissible(d)
    if violations:
        raise InadmissibleDiagramError("diagrama não admissível: " + "; ".join(violations), violations)
    return d


# ---------- forma e estatística ----------

def shape_and_stat(d: AdmissibleDiagram) -> Tuple[AdmissibleDiagram, int]:
    shape = AdmissibleDiagram(
        d.n,
        tuple(DiagramEdge(e.a, e.b) for e in d.edges),
        0,
        () if d.a_value == 1 else None,
    )
    h = sum(len(e.word) for e in d.edges) + d.loops * (1 + len(C1_LOOP))
    return shape, h


# ---------- elementos de D_n (combinações lineares) ----------

def diagram_sort_key(d: AdmissibleDiagram):
    return (d.a_value, serialize_diagram(d))


@dataclass(frozen=True)
class DiagramElement:
    n: int
    terms: Tuple[Tuple[AdmissibleDiagram, sympy.Poly], ...]

    @classmethod
    def from_dict(cls, n: int, terms: Dict[AdmissibleDiagram, sympy.Poly]) -> "DiagramElement":
        kept = sorted(((d, p) for d, p in terms.items() if not p.is_zero),
                      key=lambda dp: diagram_sort_key(dp[0]))
        return cls(n, tuple(kept))

    def as_dict(self) -> Dict[AdmissibleDiagram, sympy.Poly]:
        return dict(self.terms)


def diagram_monomial(d: AdmissibleDiagram, coeff=1) -> DiagramElement:
    c = coeff if isinstance(coeff, sympy.Poly) else delta_poly(coeff)
    return DiagramElement.from_dict(d.n, {d: c})


def diagram_element_add(x: DiagramElement, y: DiagramElement) -> DiagramElement:
    if x.n != y.n:
        raise GraphMismatchError(f"elementos de tamanhos diferentes: n={x.n} e n={y.n}")
    acc = x.as_dict()
    for d, p in y.terms:
        acc[d] = acc[d] + p if d in acc else p
    return DiagramElement.from_dict(x.n, acc)


def diagram_element_multiply(x: DiagramElement, y: DiagramElement) -> DiagramElement:
    if x.n != y.n:
        raise GraphMismatchError(f"elementos de tamanhos diferentes: n={x.n} e n={y.n}")
    acc: Dict[AdmissibleDiagram, sympy.Poly] = {}
    for d1, p in x.terms:
        for d2, q in y.terms:
            res = multiply(d1, d2)
            c = p * q * res.coefficient
            acc[res.diagram] = acc[res.diagram] + c if res.diagram in acc else c
    return DiagramElement.from_dict(x.n, acc)


# ---------- desenho e formato de arquivo ----------

def render_diagram(d: AdmissibleDiagram) -> str:
    size = d.node_count
    width = len(str(size))
    marks = {Face.NORTH: {}, Face.SOUTH: {}}
    for e in d.edges:
        if e.propagating:
            marks[Face.NORTH][e.a.index] = "|"
            marks[Face.SOUTH][e.b.index] = "|"
        else:
            marks[e.a.face][e.a.index] = "("
            marks[e.b.face][e.b.index] = ")"

    def row(prefix: str, cells) -> str:
        return (prefix + " ".join(str(c).rjust(width) for c in cells)).rstrip()

    nodes = range(1, size + 1)
    lines = [
        f"n={d.n} a={d.a_value} loops={d.loops}",
        row("N  ", nodes),
        row("   ", (marks[Face.NORTH][j] for j in nodes)),
        row("   ", (marks[Face.SOUTH][j] for j in nodes)),
        row("S  ", nodes),
    ]
    for e in d.edges:
        if e.blocks:
            lines.append(f"{e.label}  {','.join(e.blocks)}")
    if d.block_order:
        items = " ".join(f"{d.edges[k].blocks[bi]}@{d.edges[k].label}" for k, bi in d.block_order)
        lines.append(f"order  {items}")
    return "\n".join(lines)


def serialize_diagram(d: AdmissibleDiagram) -> str:
    lines = [f"n={d.n} loops={d.loops}"]
    for e in d.edges:
        lines.append(f"edge {e.label} deco={','.join(e.blocks)}")
    if d.block_order is not None:
        lines.append(" ".join(["order"] + [f"(e{k},b{bi})" for k, bi in d.block_order]))
    return "\n".join(lines) + "\n"


def _parse_node(text: str, lineno: int) -> NodeRef:
    try:
        return NodeRef(Face(text[0]), int(text[1:]))
    except (ValueError, IndexError):
        raise FormatError(f"linha {lineno}: nó inválido {text!r}") from None


def parse_diagram(text: str) -> AdmissibleDiagram:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.strip().startswith("#")]
    if not lines:
        raise FormatError("arquivo de diagrama vazio")
    header = dict(part.split("=", 1) for part in lines[0].split() if "=" in part)
    try:
        n, loops = int(header["n"]), int(header.get("loops", 0))
    except (KeyError, ValueError):
        raise FormatError(f"cabeçalho inválido: {lines[0]!r}") from None

    edges: List[DiagramEdge] = []
    block_order = None
    for lineno, ln in enumerate(lines[1:], start=2):
        parts = ln.split()
        if parts[0] == "edge":
            if len(parts) != 3 or "-" not in parts[1] or not parts[2].startswith("deco="):
                raise FormatError(f"linha {lineno}: esperado 'edge X-Y deco=...'")
            a_txt, b_txt = parts[1].split("-", 1)
            deco = parts[2][len("deco="):]
            blocks = tuple(parse_deco(x) for x in deco.split(",")) if deco else ()
            edges.append(DiagramEdge(_parse_node(a_txt, lineno), _parse_node(b_txt, lineno), blocks))
        elif parts[0] == "order":
            refs = []
            for item in parts[1:]:
                inner = item.strip("()").split(",")
                try:
                    refs.append((int(inner[0].lstrip("e")), int(inner[1].lstrip("b"))))
                except (ValueError, IndexError):
                    raise FormatError(f"linha {lineno}: item de ordem inválido {item!r}") from None
            block_order = tuple(refs)
        else:
            raise FormatError(f"linha {lineno}: diretiva desconhecida {parts[0]!r}")

    d = AdmissibleDiagram(n, tuple(edges), loops, block_order)
    if block_order is None and d.a_value == 1:
        d = replace(d, block_order=())
    check_structure(d)
    for k, bi in d.block_order or ():
        if not (0 <= k < len(d.edges) and 0 <= bi < len(d.edges[k].blocks)):
            raise MalformedDiagramError(f"referência de bloco inexistente: (e{k},b{bi})")
    return d

