"""Bounds on chi(k, l, r), the least possible size of k.X + l.X over
r-element sets, together with an exhaustive search over the integers and
a checker for the 5-element configuration with r = 3.
"""
from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from math import ceil, comb, factorial, gcd
from typing import Iterable, Optional

from . import ordgroup
from .ordgroup import GroupElement
from .sumsets import sumset_size_z

# the quantity a bound constrains; chi_TF <= chi_LO <= chi_Z
CHI_TF, CHI_LO, CHI_Z = "chi_TF", "chi_LO", "chi_Z"
_CHAIN = (CHI_TF, CHI_LO, CHI_Z)


@dataclass
class Bound:
    name: str
    value: int
    side: str            # "lower" | "upper"
    quantity: str        # which chi the bound constrains
    conditions: str
    source: str
    dominated: bool = False


@dataclass
class BoundReport:
    k: int
    l: int
    r: int
    bounds: list[Bound]
    notes: list[str] = field(default_factory=list)
    best_lower: dict[str, int] = field(default_factory=dict)
    best_upper: dict[str, int] = field(default_factory=dict)

    def as_dict(self) -> dict:
        return asdict(self)

    def csv_rows(self) -> list[list]:
        return [[b.name, b.side, b.quantity, b.value, b.conditions, b.source]
                for b in self.bounds]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def _normalize(k: int, l: int) -> tuple[int, int, list[str]]:
    notes = []
    if k == 0 or l == 0:
        raise ValueError("k and l must be non-zero")
    g = gcd(k, l)
    if g != 1:
        notes.append(f"divided (k, l) = ({k}, {l}) by gcd {g}")
        k, l = k // g, l // g
    if k < 0 and l < 0:
        notes.append("negated both dilation factors")
        k, l = -k, -l
    return k, l, notes


def lower_bounds(k: int, l: int, r: int) -> tuple[list[Bound], list[str]]:
    """Every literature lower bound whose side conditions hold at ``(k, l, r)``."""
    if r < 1:
        raise ValueError("r must be positive")
    k, l, notes = _normalize(k, l)
    a, b = sorted((abs(k), abs(l)))
    positive = k > 0 and l > 0
    out = [Bound("kemperman", 2 * r - 1, "lower", CHI_TF,
                 "any non-zero k, l; torsion-free groups", "Kemperman")]
    if a != b:
        out.append(Bound("abelian_torsion_free", 3 * r - 2, "lower", CHI_Z,
                         "|k| != |l|; torsion-free abelian groups",
                         "coset decomposition modulo <l.X>"))
    if a == 1 and b >= 2:
        out.append(Bound("hamidoune_plagne", 3 * r - 2, "lower", CHI_Z,
                         "{|k|, |l|} = {1, m}, m >= 2", "Hamidoune-Plagne"))
    if positive and b >= 3:
        out.append(Bound("nathanson", ceil(Fraction(7 * r, 2) - 3), "lower", CHI_Z,
                         "k, l positive coprime, max(k, l) >= 3", "Nathanson"))
    if positive and (a, b) == (1, 3):
        out.append(Bound("cilleruelo_silva_vinuesa", 4 * r - 4, "lower", CHI_Z,
                         "(k, l) = (1, 3)", "Cilleruelo-Silva-Vinuesa"))
    if positive and a == 1 and b >= 3:
        out.append(Bound("freiman_et_al", 4 * r - 4, "lower", CHI_Z,
                         "(k, l) = (1, m), m >= 3", "Freiman-Herzog-Longobardi-Maj-Stanchescu"))
    if positive and a == 1 and is_prime(b) and r >= 3 * (b - 1) ** 3 * factorial(b - 2):
        out.append(Bound("cilleruelo_hamidoune_serra", (1 + b) * r - ceil(b * (b + 2) / 4),
                         "lower", CHI_Z,
                         f"(k, l) = (1, p), p prime, r >= 3(p-1)^3(p-2)! = {3 * (b - 1) ** 3 * factorial(b - 2)}",
                         "Cilleruelo-Hamidoune-Serra"))
    if positive and a == 2 and is_prime(b):
        out.append(Bound("hamidoune_rue", (2 + b) * r - 4 * b ** (b - 1), "lower", CHI_Z,
                         "(k, l) = (2, p), p prime", "Hamidoune-Rue"))
        if r > 8 * b**b:
            out.append(Bound("hamidoune_rue_large", (2 + b) * r - b * b - b + 2, "lower", CHI_Z,
                             f"(k, l) = (2, p), p prime, r > 8p^p = {8 * b ** b}", "Hamidoune-Rue"))
    if positive:
        # the exponent is negative only for k = l = 1, where kl = 1 anyway
        e = max((a + b - 3) * (a + b) + 1, 0)
        out.append(Bound("balog_shakan", (a + b) * r - (a * b) ** e,
                         "lower", CHI_Z, "k, l positive coprime", "Balog-Shakan"))
    best = max(x.value for x in out)
    for x in out:
        x.dominated = x.value < best
    return out, notes


def upper_bound_trivial(k: int, l: int, r: int) -> int:
    """Size of ``k.X + l.X`` for ``X = {0, ..., r-1}``."""
    s = abs(k) + abs(l)
    return s * r - (s - 1)


def best_lower_z(k: int, l: int, r: int) -> int:
    """Largest applicable lower bound for chi over the integers."""
    return max(b.value for b in lower_bounds(k, l, r)[0])


# ---------------------------------------------------------------------------
# Exhaustive search over Z
# ---------------------------------------------------------------------------

@dataclass
class ChiSearchResult:
    k: int
    l: int
    r: int
    max_diameter: int
    minimum: int
    witnesses: list[tuple[int, ...]]
    lower_bound: int
    certified: bool

    def as_dict(self) -> dict:
        d = asdict(self)
        d["witnesses"] = [list(w) for w in self.witnesses]
        return d


def _reflect(X: tuple[int, ...], D: int) -> tuple[int, ...]:
    return tuple(sorted(D - x for x in X))


def _scan(k: int, l: int, r: int, D: int, second: Optional[int]) -> tuple[Optional[int], list]:
    """Minimum and minimizers among normalized sets of diameter D whose
    second-smallest element is ``second`` (None when r <= 2)."""
    best, wit = None, []
    if r == 1:
        cands: Iterable[tuple[int, ...]] = [(0,)] if D == 0 else []
    elif r == 2:
        cands = [(0, D)]
    else:
        inner = range(second + 1, D)
        cands = ((0, second) + c + (D,) for c in itertools.combinations(inner, r - 3))
    for X in cands:
        if r > 1:
            g = 0
            for x in X:
                g = gcd(g, x)
            if g != 1:
                continue
            if _reflect(X, D) < X:
                continue
        s = sumset_size_z(k, X, l)
        if best is None or s < best:
            best, wit = s, [X]
        elif s == best:
            wit.append(X)
    return best, wit


def _tasks(r: int, max_diameter: int) -> list[tuple[int, Optional[int]]]:
    tasks = []
    for D in range(max(r - 1, 0), max_diameter + 1):
        if r <= 2:
            tasks.append((D, None))
        else:
            tasks.extend((D, s) for s in range(1, D - r + 3))
    return tasks


def _run(args):
    return _scan(*args)


def chi_search_z(k: int, l: int, r: int, max_diameter: int, workers: int = 1) -> ChiSearchResult:
    """Least ``|k.X + l.X|`` over normalized r-sets of diameter at most
    ``max_diameter``.

    Normalized means ``min X = 0``, ``gcd X = 1`` and X no larger
    (lexicographically) than its reflection ``max X - X``; every r-set of
    integers is affinely equivalent to one of these, with the same sumset
    size.  The result is an upper bound for chi over Z; it is flagged
    certified when it meets the best known lower bound.
    """
    if r < 1:
        raise ValueError("r must be positive")
    if max_diameter < r - 1:
        raise ValueError("max_diameter must be at least r - 1")
    tasks = [(k, l, r, D, s) for D, s in _tasks(r, max_diameter)]
    if workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_run, tasks, chunksize=8))
    else:
        results = [_run(t) for t in tasks]
    best, wit = None, []
    for m, w in results:
        if m is None:
            continue
        if best is None or m < best:
            best, wit = m, list(w)
        elif m == best:
            wit.extend(w)
    assert best is not None
    wit.sort(key=lambda X: (X[-1], X))
    lb = best_lower_z(k, l, r)
    return ChiSearchResult(k, l, r, max_diameter, best, wit, lb, best == lb)


# ---------------------------------------------------------------------------
# Table for the torsion-free / orderable / integer versions of chi
# ---------------------------------------------------------------------------

def chi_table(k: int, l: int, r: int) -> BoundReport:
    if k < 1 or l < 1:
        raise ValueError("k and l must be positive")
    bounds, notes = lower_bounds(k, l, r)
    nk, nl, _ = _normalize(k, l)
    bounds.append(Bound("arithmetic_progression", upper_bound_trivial(nk, nl, r), "upper", CHI_Z,
                        "X = {0, ..., r-1}", "arithmetic progression"))
    bounds.append(Bound("ordered_group_construction", comb(r + 1, 2), "upper", CHI_LO,
                        "X = {e_0, ..., e_{r-1}} in E[S]^r x| E[k]", "semidirect product construction"))
    if nk == 1 and nl == 1:
        notes.append("|k| = |l| = 1: all versions of chi equal 2r - 1")

    lo = {q: 0 for q in _CHAIN}
    hi: dict[str, Optional[int]] = {q: None for q in _CHAIN}
    for b in bounds:
        i = _CHAIN.index(b.quantity)
        if b.side == "lower":
            for q in _CHAIN[i:]:
                lo[q] = max(lo[q], b.value)
        else:
            for q in _CHAIN[: i + 1]:
                hi[q] = b.value if hi[q] is None else min(hi[q], b.value)
    report = BoundReport(k, l, r, bounds, notes,
                         best_lower=lo, best_upper={q: v for q, v in hi.items() if v is not None})
    for q in _CHAIN:
        if q in report.best_upper and lo[q] == report.best_upper[q]:
            report.notes.append(f"{q}({k}, {l}, {r}) = {lo[q]}")
        elif q in report.best_upper:
            report.notes.append(f"{q}({k}, {l}, {r}) in [{lo[q]}, {report.best_upper[q]}]")
    return report


# ---------------------------------------------------------------------------
# Five-element configuration for r = 3
# ---------------------------------------------------------------------------

def chi5_witness_check(x: GroupElement, y: GroupElement, z: GroupElement, k: int, l: int) -> dict:
    """Check the four conditions under which ``{x, y, z}`` has ``|X^k X^l| = 5``."""
    P = ordgroup.pow_
    M = ordgroup.mul

    def rel(a, b):
        return M(P(a, k), P(b, l))

    def chk(name, lhs, rhs):
        return {"name": name, "pass": ordgroup.equal(lhs, rhs), "lhs": str(lhs), "rhs": str(rhs)}

    checks = [
        {"name": "(i) x < y", "pass": ordgroup.cmp(x, y) < 0, "lhs": str(x), "rhs": str(y)},
        {"name": "(i) y < z", "pass": ordgroup.cmp(y, z) < 0, "lhs": str(y), "rhs": str(z)},
        chk("(ii) x^k y^l = y^k x^l", rel(x, y), rel(y, x)),
        chk("(iii) x^k z^l = z^k x^l", rel(x, z), rel(z, x)),
        chk("(iii) x^k z^l = y^(k+l)", rel(x, z), P(y, k + l)),
        chk("(iv) y^k z^l = z^k y^l", rel(y, z), rel(z, y)),
    ]
    return {"k": k, "l": l, "checks": checks, "pass": all(c["pass"] for c in checks)}
