"""Free-group words as syllable sequences, proper-power detection, and
relation systems of the form ``x_i^k x_j^l = x_u^k x_v^l``."""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Mapping, Optional

from . import ordgroup
from .alphafield import AlphaContext
from .ordgroup import GroupElement

Syllable = tuple[int, int]


@dataclass(frozen=True)
class ReducedWord:
    syllables: tuple[Syllable, ...] = ()

    def __len__(self) -> int:
        return len(self.syllables)

    def __mul__(self, other: "ReducedWord") -> "ReducedWord":
        return word_mul(self, other)

    def __pow__(self, n: int) -> "ReducedWord":
        return word_pow(self, n)

    def __invert__(self) -> "ReducedWord":
        return word_inv(self)

    def is_identity(self) -> bool:
        return not self.syllables

    def letter_length(self) -> int:
        return sum(abs(e) for _, e in self.syllables)

    def __str__(self) -> str:
        return render_word(self)


IDENTITY_WORD = ReducedWord()


def word_reduce(raw: Iterable[Syllable]) -> ReducedWord:
    stack: list[Syllable] = []
    for g, e in raw:
        if g < 1:
            raise ValueError(f"generator index must be >= 1, got {g}")
        if e == 0:
            continue
        if stack and stack[-1][0] == g:
            e += stack.pop()[1]
            if e == 0:
                continue
        stack.append((g, e))
    return ReducedWord(tuple(stack))


def word_mul(a: ReducedWord, b: ReducedWord) -> ReducedWord:
    return word_reduce(a.syllables + b.syllables)


def word_inv(a: ReducedWord) -> ReducedWord:
    return ReducedWord(tuple((g, -e) for g, e in reversed(a.syllables)))


def word_pow(a: ReducedWord, n: int) -> ReducedWord:
    if n < 0:
        a, n = word_inv(a), -n
    return word_reduce(a.syllables * n)


def cyclic_reduce(w: ReducedWord) -> tuple[ReducedWord, ReducedWord]:
    """Return ``(c, core)`` with ``w = c core c^-1`` and the first and last
    syllables of ``core`` on different generators (or ``core`` a single
    syllable)."""
    left: list[Syllable] = []
    s = list(w.syllables)
    while len(s) >= 2 and s[0][0] == s[-1][0]:
        (g, a), (_, b) = s[0], s[-1]
        left.append((g, a))
        if a + b == 0:
            s = s[1:-1]
        else:
            s = s[1:-1] + [(g, a + b)]
    return word_reduce(left), word_reduce(s)


def is_proper_power(w: ReducedWord) -> Optional[tuple[ReducedWord, int]]:
    """``(root, t)`` with ``w = root^t`` and ``t >= 2`` maximal, or None."""
    if w.is_identity():
        return None
    c, core = cyclic_reduce(w)
    syl = core.syllables
    n = len(syl)
    if n == 1:
        g, e = syl[0]
        if abs(e) < 2:
            return None
        root = ReducedWord(((g, 1 if e > 0 else -1),))
        t = abs(e)
    else:
        for p in range(1, n // 2 + 1):
            if n % p == 0 and all(syl[i] == syl[i + p] for i in range(n - p)):
                root, t = ReducedWord(syl[:p]), n // p
                break
        else:
            return None
    return word_mul(word_mul(c, root), word_inv(c)), t


def relator(k: int, l: int, i: int, j: int) -> ReducedWord:
    """``x_i^k x_j^l x_i^-l x_j^-k``."""
    if i == j:
        raise ValueError("relator needs two distinct generators")
    return word_reduce([(i, k), (j, l), (i, -l), (j, -k)])


# ---------------------------------------------------------------------------
# Presentations
# ---------------------------------------------------------------------------

Relation = tuple[int, int, int, int]


@dataclass(frozen=True)
class Presentation:
    """Generators ``x_1..x_r`` and relations ``(i, j, u, v)`` meaning
    ``x_i^k x_j^l = x_u^k x_v^l``."""

    r: int
    relations: tuple[Relation, ...] = ()

    def __post_init__(self):
        seen = set()
        for rel in self.relations:
            if len(rel) != 4 or not all(1 <= x <= self.r for x in rel):
                raise ValueError(f"relation {rel} has indices outside 1..{self.r}")
            if rel in seen:
                raise ValueError(f"duplicate relation {rel}")
            seen.add(rel)

    def relators(self, k: int, l: int) -> list[ReducedWord]:
        return [relation_word(rel, k, l) for rel in self.relations]


def relation_word(rel: Relation, k: int, l: int) -> ReducedWord:
    """``x_i^k x_j^l (x_u^k x_v^l)^-1`` for ``rel = (i, j, u, v)``."""
    i, j, u, v = rel
    return word_reduce([(i, k), (j, l), (v, -l), (u, -k)])


def full_grid(r: int) -> Presentation:
    """All relations ``x_i^k x_j^l = x_j^k x_i^l`` with ``i < j``."""
    return Presentation(r, tuple((i, j, j, i) for i in range(1, r + 1) for j in range(i + 1, r + 1)))


def hom_eval(w: ReducedWord, assignment: Mapping[int, GroupElement]) -> GroupElement:
    if not assignment:
        raise ValueError("empty assignment: no target group")
    first = next(iter(assignment.values()))
    result = ordgroup.identity(first.r, first.ctx)
    for g, e in w.syllables:
        if g not in assignment:
            raise KeyError(f"generator x{g} is not assigned")
        result = ordgroup.mul(result, ordgroup.pow_(assignment[g], e))
    return result


def e_assignment(k: int, l: int, r: int) -> dict[int, GroupElement]:
    """``x_i -> e_{i-1}`` in the r-copy group for ``(k, l)``.

    When ``k > l`` the group is built for ``(l, k)`` and the images are
    inverted, which turns ``e_i^l e_j^k = e_j^l e_i^k`` into the relation
    with the exponents in the requested order.
    """
    ctx = AlphaContext(k, l)
    gens = [ordgroup.generator_e(i, r, ctx) for i in range(r)]
    if ctx.swapped:
        gens = [ordgroup.inv(g) for g in gens]
    return {i + 1: g for i, g in enumerate(gens)}


def theta_assignment(k: int, l: int) -> dict[int, GroupElement]:
    """``x_1 -> (a; 1)``, ``x_2 -> (0; 1)`` in the r = 1 group."""
    ctx = AlphaContext(k, l)
    return {1: ordgroup.parse_element("(a; 1)", ctx), 2: ordgroup.parse_element("(0; 1)", ctx)}


def check_presentation_homomorphism(p: Presentation, assignment: Mapping[int, GroupElement],
                                    k: int, l: int) -> dict:
    """Evaluate every relator; all trivial means the assignment extends to a
    homomorphism from the presented group."""
    checks = []
    for rel, w in zip(p.relations, p.relators(k, l)):
        img = hom_eval(w, assignment)
        checks.append({
            "name": f"x{rel[0]}^{k} x{rel[1]}^{l} = x{rel[2]}^{k} x{rel[3]}^{l}",
            "pass": ordgroup.is_identity(img),
            "lhs": str(img),
            "rhs": "identity",
        })
    return {"r": p.r, "k": k, "l": l, "checks": checks, "pass": all(c["pass"] for c in checks)}


# ---------------------------------------------------------------------------
# Text form:  a^2 b^-3 x3 a
# ---------------------------------------------------------------------------

_SUGAR = {"a": 1, "b": 2}
_NAMES = {1: "a", 2: "b"}
_SYL = re.compile(r"^(?:(?P<s>[ab])|x(?P<i>\d+))(?:\^(?P<e>[+-]?\d+))?$")


def parse_word(text: str) -> ReducedWord:
    if text.strip() == "1":
        return IDENTITY_WORD
    raw = []
    for tok in text.split():
        m = _SYL.match(tok)
        if not m:
            raise ValueError(f"bad syllable {tok!r}")
        g = _SUGAR[m.group("s")] if m.group("s") else int(m.group("i"))
        raw.append((g, int(m.group("e")) if m.group("e") else 1))
    return word_reduce(raw)


def render_word(w: ReducedWord) -> str:
    if w.is_identity():
        return "1"
    top = max(g for g, _ in w.syllables)
    out = []
    for g, e in w.syllables:
        name = _NAMES[g] if top <= 2 else f"x{g}"
        out.append(name if e == 1 else f"{name}^{e}")
    return " ".join(out)
