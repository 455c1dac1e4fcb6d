"""Sums of dilates over Z, Z^n and the constructed ordered groups."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import reduce
from math import gcd
from typing import Iterable, Sequence

from . import ordgroup
from .alphafield import AlphaContext
from .ordgroup import GroupElement

Vec = tuple[int, ...]


# ---------------------------------------------------------------------------
# Z
# ---------------------------------------------------------------------------

def zset(xs: Iterable[int]) -> tuple[int, ...]:
    return tuple(sorted(set(xs)))


def dilate_z(X: Iterable[int], m: int) -> tuple[int, ...]:
    return zset(m * x for x in X)


def sumset_z(k: int, X: Sequence[int], l: int) -> tuple[int, ...]:
    """``k.X + l.X``."""
    if not X:
        raise ValueError("empty set")
    kx = {k * x for x in X}
    lx = {l * x for x in X}
    return zset(a + b for a in kx for b in lx)


def sumset_size_z(k: int, X: Sequence[int], l: int) -> int:
    kx = {k * x for x in X}
    lx = {l * x for x in X}
    return len({a + b for a in kx for b in lx})


# ---------------------------------------------------------------------------
# Z^n
# ---------------------------------------------------------------------------

def znset(vs: Iterable[Sequence[int]]) -> tuple[Vec, ...]:
    vs = [tuple(int(c) for c in v) for v in vs]
    if vs and len({len(v) for v in vs}) != 1:
        raise ValueError("vectors of mixed dimension")
    return tuple(sorted(set(vs)))


def _scale(m: int, v: Vec) -> Vec:
    return tuple(m * c for c in v)


def _add(u: Vec, v: Vec) -> Vec:
    return tuple(a + b for a, b in zip(u, v))


def _sub(u: Vec, v: Vec) -> Vec:
    return tuple(a - b for a, b in zip(u, v))


def dilate_zn(X: Iterable[Vec], m: int) -> tuple[Vec, ...]:
    return znset(_scale(m, v) for v in X)


def sumset_zn(A: Iterable[Vec], B: Iterable[Vec]) -> tuple[Vec, ...]:
    B = list(B)
    return znset(_add(a, b) for a in A for b in B)


def dilate_sumset_zn(k: int, X: Sequence[Vec], l: int) -> tuple[Vec, ...]:
    return sumset_zn(dilate_zn(X, k), dilate_zn(X, l))


def gcd_of_set(X: Iterable[Sequence[int]]) -> int:
    g = reduce(gcd, (c for v in X for c in v), 0)
    if g == 0:
        raise ValueError("gcd of an all-zero set is undefined")
    return g


# ---------------------------------------------------------------------------
# Lattices
# ---------------------------------------------------------------------------

def hnf_lattice(generators: Iterable[Sequence[int]]) -> list[Vec]:
    """Echelon (Hermite) basis of the lattice spanned by ``generators``.

    Pivots are positive and strictly increasing in column; entries of other
    basis vectors in a pivot column lie in ``[0, pivot)``.  The basis may
    have lower rank than the ambient dimension.
    """
    rows = [list(v) for v in generators if any(v)]
    if not rows:
        return []
    n = len(rows[0])
    basis: list[list[int]] = []
    pivots: list[int] = []
    for col in range(n):
        active = [r for r in rows if r[col]]
        rest = [r for r in rows if not r[col]]
        while len(active) > 1:
            active.sort(key=lambda r: abs(r[col]))
            p = active[0]
            nxt = [p]
            for r in active[1:]:
                q = r[col] // p[col]
                r = [a - q * b for a, b in zip(r, p)]
                (nxt if r[col] else rest).append(r)
            active = nxt
        if active:
            p = active[0]
            if p[col] < 0:
                p = [-a for a in p]
            basis.append(p)
            pivots.append(col)
        rows = [r for r in rest if any(r)]
    # reduce above the pivots
    for i in range(len(basis)):
        c = pivots[i]
        for j in range(i):
            q = basis[j][c] // basis[i][c]
            if q:
                basis[j] = [a - q * b for a, b in zip(basis[j], basis[i])]
    return [tuple(b) for b in basis]


def _pivots(basis: Sequence[Vec]) -> list[int]:
    return [next(i for i, c in enumerate(b) if c) for b in basis]


def coset_label(v: Sequence[int], basis: Sequence[Vec]) -> Vec:
    """Canonical representative of ``v + H``; equal labels iff same coset."""
    v = list(v)
    for b, c in zip(basis, _pivots(basis)):
        q = v[c] // b[c]
        if q:
            v = [a - q * x for a, x in zip(v, b)]
    return tuple(v)


def lattice_member(v: Sequence[int], basis: Sequence[Vec]) -> bool:
    return not any(coset_label(v, basis))


# ---------------------------------------------------------------------------
# Coset decomposition
# ---------------------------------------------------------------------------

@dataclass
class CosetDecomposition:
    q: int
    parts: list[tuple[Vec, tuple[Vec, ...]]]
    hnf: list[Vec]
    total: int                 # |k.X + l.X|
    part_sizes: list[int]      # |K_i + l.X|
    bound: int                 # (q + 1)|X| - q

    @property
    def additive(self) -> bool:
        return self.total == sum(self.part_sizes)


def as_vectors(X: Iterable) -> tuple[Vec, ...]:
    """Accept either integers or integer vectors."""
    return znset((x,) if isinstance(x, int) else x for x in X)


def coset_decompose(X: Iterable, k: int, l: int) -> CosetDecomposition:
    """Split ``k.X`` by cosets of ``H = <l.X>`` and recount the sumset piecewise."""
    X = as_vectors(X)
    if not X:
        raise ValueError("empty set")
    if k == 0 or l == 0:
        raise ValueError("k and l must be non-zero")
    kx, lx = dilate_zn(X, k), dilate_zn(X, l)
    basis = hnf_lattice(lx)
    groups: dict[Vec, list[Vec]] = {}
    for v in kx:
        groups.setdefault(coset_label(v, basis), []).append(v)
    parts = sorted((lab, tuple(vs)) for lab, vs in groups.items())
    sizes = [len(sumset_zn(K, lx)) for _, K in parts]
    q = len(parts)
    return CosetDecomposition(q, parts, basis, len(sumset_zn(kx, lx)), sizes,
                              (q + 1) * len(X) - q)


@dataclass
class CosetBoundReport:
    X: tuple[Vec, ...]
    k: int
    l: int
    size: int
    bound: int
    normalized_X: tuple[Vec, ...]
    normalized_k: int
    normalized_l: int
    normalized_size: int
    decomposition: CosetDecomposition | None
    checks: list[dict] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c["pass"] for c in self.checks)


def verify_coset_bound(X: Iterable, k: int, l: int) -> CosetBoundReport:
    """Check ``|k.X + l.X| >= 3|X| - 2`` along with the coset argument behind it.

    The set is translated to contain 0 and divided by its gcd; ``(k, l)`` is
    divided by its gcd and ordered so that ``|l| > |k|``.
    """
    if k == 0 or l == 0:
        raise ValueError("k and l must be non-zero")
    if abs(k) == abs(l):
        raise ValueError("k and l must have distinct absolute values")
    X = as_vectors(X)
    size = len(dilate_sumset_zn(k, X, l))
    bound = 3 * len(X) - 2

    g = gcd(k, l)
    nk, nl = k // g, l // g
    if abs(nk) > abs(nl):
        nk, nl = nl, nk
    base = X[0]
    Y = znset(_sub(v, base) for v in X)
    if len(Y) > 1:
        d = gcd_of_set(Y)
        Y = znset(tuple(c // d for c in v) for v in Y)
    nsize = len(dilate_sumset_zn(nk, Y, nl))

    checks = [
        {"name": "|k.X + l.X| >= 3|X| - 2", "pass": size >= bound, "lhs": size, "rhs": bound},
        {"name": "normalization preserves |k.X + l.X|", "pass": nsize == size,
         "lhs": nsize, "rhs": size},
    ]
    dec = None
    if len(X) >= 2:
        dec = coset_decompose(Y, nk, nl)
        checks.append({"name": "sum over cosets equals |k.X + l.X|", "pass": dec.additive,
                       "lhs": sum(dec.part_sizes), "rhs": dec.total})
        checks.append({"name": "q >= 2", "pass": dec.q >= 2, "lhs": dec.q, "rhs": 2})
        checks.append({"name": "|k.X + l.X| >= (q+1)|X| - q", "pass": dec.total >= dec.bound,
                       "lhs": dec.total, "rhs": dec.bound})
    return CosetBoundReport(X, k, l, size, bound, Y, nk, nl, nsize, dec, checks)


# ---------------------------------------------------------------------------
# Constructed groups
# ---------------------------------------------------------------------------

class GSet:
    """Finite set of group elements, deduplicated by exact equality.

    Insertion compares against every stored element with the same shift
    (the shift is canonical, the coordinates are not).
    """

    def __init__(self, items: Iterable[GroupElement] = ()):
        self._items: list[GroupElement] = []
        for x in items:
            self.add(x)

    def add(self, x: GroupElement) -> bool:
        for y in self._items:
            if y.shift == x.shift and ordgroup.equal(x, y):
                return False
        self._items.append(x)
        return True

    def __len__(self) -> int:
        return len(self._items)

    def __iter__(self):
        return iter(self._items)

    def __contains__(self, x: GroupElement) -> bool:
        return any(y.shift == x.shift and ordgroup.equal(x, y) for y in self._items)


def productset_g(X: Iterable[GroupElement], k: int, l: int) -> GSet:
    """``{x^k y^l : x, y in X}``."""
    X = list(X)
    if not X:
        raise ValueError("empty set")
    pk = [ordgroup.pow_(x, k) for x in X]
    pl = [ordgroup.pow_(y, l) for y in X]
    return GSet(ordgroup.mul(a, b) for a in pk for b in pl)


def construction_set(k: int, l: int, r: int, copies: int | None = None) -> list[GroupElement]:
    """``{e_0, ..., e_{r-1}}`` in the group with ``copies`` coordinates
    (default r).  For ``k > l`` the inverses are used, as the group is
    built for ``(l, k)``."""
    ctx = AlphaContext(k, l)
    copies = r if copies is None else copies
    X = [ordgroup.generator_e(i, copies, ctx) for i in range(r)]
    if ctx.swapped:
        X = [ordgroup.inv(x) for x in X]
    return X
