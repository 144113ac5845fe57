# services/verlinde.py
"""Álgebra de decorações V3 * V'3.

Palavras são guardadas como texto ASCII: b = •, B = ▲, o = ○, O = △.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import List, Optional, Tuple

import sympy

from services.errors import FormatError


class Family(str, Enum):
    CLOSED = "closed"
    OPEN = "open"


class Decoration(str, Enum):
    CLOSED_DOT = "b"
    CLOSED_TRI = "B"
    OPEN_DOT = "o"
    OPEN_TRI = "O"

    @property
    def family(self) -> Family:
        return Family.CLOSED if self.value in "bB" else Family.OPEN

    @property
    def symbol(self) -> str:
        return {"b": "•", "B": "▲", "o": "○", "O": "△"}[self.value]

    @property
    def is_triangle(self) -> bool:
        return self.value.isupper()


_FAMILY = {d.value: d.family for d in Decoration}


def family_of(ch: str) -> Family:
    return _FAMILY[ch]


def parse_deco(text: str) -> str:
    word = "".join(str(text).split())
    bad = [ch for ch in word if ch not in _FAMILY]
    if bad:
        raise FormatError(f"decoração inválida: {bad[0]!r} (use b, B, o, O)")
    return word


def to_symbols(word: str) -> str:
    return "".join(Decoration(ch).symbol for ch in word)


@dataclass(frozen=True)
class NormalDeco:
    two_exp: int
    word: str

    @property
    def symbols(self) -> Tuple[Decoration, ...]:
        return tuple(Decoration(ch) for ch in self.word)

    def __str__(self) -> str:
        if self.two_exp:
            return f"2^{self.two_exp} {self.word or '1'}"
        return self.word or "1"


EMPTY = NormalDeco(0, "")


def _combine(x: str, y: str) -> Tuple[str, int]:
    """Produto de dois símbolos da mesma família: (símbolo, expoente de 2)."""
    dot, tri = ("b", "B") if x in "bB" else ("o", "O")
    if x == dot and y == dot:
        return tri, 0
    if x == tri and y == tri:
        return tri, 1
    # •▲ = ▲• = 2•
    return dot, 1


def deco_normal_form(word: str) -> NormalDeco:
    stack: List[str] = []
    exp = 0
    for ch in parse_deco(word):
        if stack and _FAMILY[stack[-1]] == _FAMILY[ch]:
            sym, k = _combine(stack.pop(), ch)
            stack.append(sym)
            exp += k
        else:
            stack.append(ch)
    return NormalDeco(exp, "".join(stack))


def is_normal(word: str) -> bool:
    return all(_FAMILY[word[i]] != _FAMILY[word[i + 1]] for i in range(len(word) - 1))


def deco_concat(a: NormalDeco, b: NormalDeco) -> NormalDeco:
    out = deco_normal_form(a.word + b.word)
    return NormalDeco(out.two_exp + a.two_exp + b.two_exp, out.word)


def deco_reverse(a: NormalDeco) -> NormalDeco:
    return NormalDeco(a.two_exp, a.word[::-1])


# ---------- reescrita passo a passo ----------

def deco_redexes(word: str) -> List[int]:
    """Posições i em que word[i] e word[i+1] são da mesma família."""
    return [i for i in range(len(word) - 1) if _FAMILY[word[i]] == _FAMILY[word[i + 1]]]


def deco_rewrite_at(word: str, i: int) -> Tuple[str, int]:
    if i not in deco_redexes(word):
        raise ValueError(f"não há redex na posição {i} de {word!r}")
    sym, k = _combine(word[i], word[i + 1])
    return word[:i] + sym + word[i + 2:], k


def normalize_randomly(word: str, rng: random.Random) -> NormalDeco:
    cur = parse_deco(word)
    exp = 0
    while True:
        redexes = deco_redexes(cur)
        if not redexes:
            return NormalDeco(exp, cur)
        cur, k = deco_rewrite_at(cur, rng.choice(redexes))
        exp += k


def random_deco_word(rng: random.Random, max_len: int) -> str:
    return "".join(rng.choice("bBoO") for _ in range(rng.randint(0, max_len)))


# ---------- decorações de laços (palavras cíclicas) ----------

def deco_loop_normal_form(word: str) -> NormalDeco:
    """Forma normal de uma palavra lida ao longo de um laço.

    O resultado é a menor rotação/reversão da palavra cíclica alternada.
    """
    word = parse_deco(word)
    if not word:
        return EMPTY
    boundary: Optional[int] = None
    for p in range(len(word)):
        if _FAMILY[word[p - 1]] != _FAMILY[word[p]]:
            boundary = p
            break
    if boundary is None:
        return deco_normal_form(word)
    out = deco_normal_form(word[boundary:] + word[:boundary])
    cur, exp = out.word, out.two_exp
    # o primeiro e o último símbolo também são vizinhos no laço
    while len(cur) > 1 and _FAMILY[cur[0]] == _FAMILY[cur[-1]]:
        step = deco_normal_form(cur[-1] + cur[:-1])
        cur, exp = step.word, exp + step.two_exp
    variants = []
    for w in (cur, cur[::-1]):
        variants.extend(w[r:] + w[:r] for r in range(len(w)))
    return NormalDeco(exp, min(variants))


# ---------- polinômios de Chebyshev (segunda espécie) ----------

X = sympy.Symbol("x")


@lru_cache(maxsize=None)
def chebyshev_u(k: int) -> sympy.Poly:
    if k < 0:
        raise ValueError("k deve ser >= 0")
    prev, cur = sympy.Poly(1, X, domain="ZZ"), sympy.Poly(X, X, domain="ZZ")
    if k == 0:
        return prev
    for _ in range(k - 1):
        prev, cur = cur, sympy.Poly(X, X, domain="ZZ") * cur - prev
    return cur
