"""Empirical verification: sieve primes, compute orders, count residue classes.

For every prime p up to x with p dividing neither numerator nor denominator
of g, the multiplicative order ord_p(g) is computed by factoring p - 1 with
a sieve and stripping prime factors l while g^((p-1)/l) = 1 (mod p).  The
residual index is (p - 1) / ord.

The sieve runs in segments (default 2^24); a monolithic mode processes the
whole range as one segment and refuses ranges that would not fit in memory.
Factorizations of p - 1 are independent of g and are cached, so counting
runs for several g over the same x pay the sieve cost once.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, TextIO

import numpy as np

__all__ = [
    "OrderRecord",
    "CountTable",
    "CompareReport",
    "sieve_orders",
    "count_residues",
    "count_joint",
    "compare",
    "census_exceptional",
    "write_orders_csv",
]

X_LIMIT = 10**9
DEFAULT_SEGMENT = 1 << 24
MONOLITHIC_LIMIT = 1 << 27


@dataclass(frozen=True)
class OrderRecord:
    """(p, ord_p(g), index r_g(p)) with ord * index = p - 1."""

    p: int
    ord: int
    index: int


@dataclass
class CountTable:
    """Counts of primes <= x per residue class of ord (and of p when joint)."""

    x: int
    d: int
    d1: int | None
    counts: dict
    primes_considered: int
    excluded: int

    def frequency(self, key) -> float:
        return self.counts.get(key, 0) / self.primes_considered


def _simple_primes(limit: int) -> np.ndarray:
    sieve = np.ones(limit + 1, dtype=bool)
    sieve[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if sieve[p]:
            sieve[p * p :: p] = False
    return np.flatnonzero(sieve).astype(np.int64)


def _segment_factored(lo: int, hi: int, base: np.ndarray):
    """Primes p in [lo, hi) with the distinct prime factors of each p - 1.

    Returns (primes list, factor lists).  Works over the window
    [lo-1, hi): a segmented sieve finds the primes, then every base prime s
    collects which p - 1 it divides, and division chains expose the single
    factor exceeding sqrt(hi) if present.
    """
    wlo = lo - 1
    n = hi - wlo
    is_prime = np.ones(n, dtype=bool)
    for s in base:
        s = int(s)
        if s * s >= hi:
            break
        start = max(s * s, ((wlo + s - 1) // s) * s)
        is_prime[start - wlo :: s] = False
    is_prime[: max(0, 2 - wlo)] = False
    offsets = np.flatnonzero(is_prime)
    pvals = offsets + wlo
    pvals = pvals[pvals >= lo]
    if len(pvals) == 0:
        empty = np.empty(0, dtype=np.int64)
        return pvals, empty, np.zeros(1, dtype=np.int64)
    # factor the p-1 window values
    tpos = pvals - 1 - wlo
    tid = np.full(n, -1, dtype=np.int64)
    tid[tpos] = np.arange(len(tpos))
    rem = (pvals - 1).copy()
    pair_t: list[np.ndarray] = []
    pair_f: list[np.ndarray] = []
    for s in base:
        s = int(s)
        if s >= hi:
            break
        start = ((wlo + s - 1) // s) * s
        idx = tid[start - wlo :: s]
        sel = idx[idx >= 0]
        if len(sel) == 0:
            continue
        pair_t.append(sel)
        pair_f.append(np.full(len(sel), s, dtype=np.int64))
        cur = sel
        while len(cur):
            rem[cur] //= s
            cur = cur[rem[cur] % s == 0]
    big = np.flatnonzero(rem > 1)
    if len(big):
        pair_t.append(big)
        pair_f.append(rem[big])
    tcat = np.concatenate(pair_t) if pair_t else np.empty(0, dtype=np.int64)
    fcat = np.concatenate(pair_f) if pair_f else np.empty(0, dtype=np.int64)
    order = np.argsort(tcat, kind="stable")
    fcat = fcat[order]
    bounds = np.searchsorted(tcat[order], np.arange(len(pvals) + 1))
    return pvals, fcat, bounds


_factored_cache: dict = {"key": None, "chunks": None}


def _factored_chunks(x: int, segment_size: int, mode: str):
    """Cached list of (primes, factor lists) segment chunks covering [2, x]."""
    if x > X_LIMIT:
        raise ValueError(f"x beyond the supported range {X_LIMIT}")
    if mode == "monolithic":
        if x > MONOLITHIC_LIMIT:
            raise ValueError(
                f"x = {x} exceeds the monolithic memory budget "
                f"({MONOLITHIC_LIMIT}); use segmented mode"
            )
        segment_size = x
    key = (x, segment_size)
    if _factored_cache["key"] == key:
        return _factored_cache["chunks"]
    base = _simple_primes(math.isqrt(x) + 1)
    chunks = []
    lo = 2
    while lo <= x:
        hi = min(lo + segment_size, x + 1)
        chunks.append(_segment_factored(lo, hi, base))
        lo = hi
    _factored_cache["key"] = key
    _factored_cache["chunks"] = chunks
    return chunks


def sieve_orders(
    g: Fraction | int,
    x: int,
    mode: str = "auto",
    segment_size: int = DEFAULT_SEGMENT,
) -> Iterator[OrderRecord]:
    """Stream one OrderRecord per prime p <= x with nu_p(g) = 0.

    mode 'monolithic' sieves [2, x] in one piece (errors beyond the memory
    budget), 'segmented'/'auto' walk segments; the output is identical.
    """
    g = Fraction(g)
    if g in (0, 1, -1):
        raise ValueError("g must avoid -1, 0, 1")
    num, den = g.numerator, g.denominator
    for p, o, idx in _iter_orders(num, den, x, mode, segment_size):
        yield OrderRecord(p, o, idx)


def _iter_orders(num, den, x, mode, segment_size):
    for pvals, fcat, bounds in _factored_chunks(x, segment_size, mode):
        plist = pvals.tolist()
        flat = fcat.tolist()
        blist = bounds.tolist()
        for i, p in enumerate(plist):
            if num % p == 0 or den % p == 0:
                continue
            if den == 1:
                gm = num % p
            else:
                gm = num * pow(den, p - 2, p) % p
            o = p - 1
            for ell in flat[blist[i] : blist[i + 1]]:
                while o % ell == 0 and pow(gm, o // ell, p) == 1:
                    o //= ell
            yield p, o, (p - 1) // o


def count_residues(
    g: Fraction | int,
    d: int,
    x: int,
    mode: str = "auto",
    segment_size: int = DEFAULT_SEGMENT,
) -> CountTable:
    """Counts of ord_p(g) mod d over primes p <= x with nu_p(g) = 0."""
    if d < 1:
        raise ValueError("d must be positive")
    g = Fraction(g)
    counts = {a: 0 for a in range(d)}
    considered = 0
    for rec in sieve_orders(g, x, mode, segment_size):
        counts[rec.ord % d] += 1
        considered += 1
    excluded = _count_excluded(g, x)
    return CountTable(x, d, None, counts, considered, excluded)


def count_joint(
    g: Fraction | int,
    d1: int,
    d2: int,
    x: int,
    mode: str = "auto",
    segment_size: int = DEFAULT_SEGMENT,
) -> CountTable:
    """Joint counts keyed by (p mod d1, ord_p(g) mod d2)."""
    if d1 < 1 or d2 < 1:
        raise ValueError("moduli must be positive")
    g = Fraction(g)
    counts: dict = {}
    considered = 0
    for rec in sieve_orders(g, x, mode, segment_size):
        key = (rec.p % d1, rec.ord % d2)
        counts[key] = counts.get(key, 0) + 1
        considered += 1
    excluded = _count_excluded(g, x)
    return CountTable(x, d2, d1, counts, considered, excluded)


def _count_excluded(g: Fraction, x: int) -> int:
    from .arith import factorize

    bad = set(factorize(abs(g.numerator)).primes) | set(factorize(g.denominator).primes)
    return sum(1 for p in bad if p <= x)


@dataclass
class CompareReport:
    """Per-class empirical frequencies against analytic predictions."""

    g: Fraction
    d: int
    x: int
    primes_considered: int
    tolerance: float
    rows: list = field(default_factory=list)  # (a, count, freq, predicted, deviation, ok)

    @property
    def ok(self) -> bool:
        return all(r[5] for r in self.rows)

    def to_dict(self) -> dict:
        return {
            "g": str(self.g),
            "d": self.d,
            "x": self.x,
            "primes_considered": self.primes_considered,
            "tolerance": self.tolerance,
            "ok": self.ok,
            "classes": [
                {
                    "a": a,
                    "count": c,
                    "frequency": f,
                    "predicted": p,
                    "deviation": dev,
                    "ok": okk,
                }
                for a, c, f, p, dev, okk in self.rows
            ],
        }


def compare(g: Fraction | int, d: int, x: int, analytic, **kw) -> CompareReport:
    """Count ord classes mod d up to x and compare with analytic densities.

    analytic maps class -> predicted density (a dict, or a sequence indexed
    by class; entries may be floats or objects with a .value attribute).
    A class fails when |frequency - predicted| exceeds
    max(0.002, 3/sqrt(primes_considered)).
    """
    table = count_residues(g, d, x, **kw)
    tol = max(0.002, 3.0 / math.sqrt(table.primes_considered))
    if not isinstance(analytic, dict):
        analytic = dict(enumerate(analytic))
    report = CompareReport(Fraction(g), d, x, table.primes_considered, tol)
    for a in range(d):
        pred = analytic.get(a)
        if pred is None:
            continue
        pred = getattr(pred, "value", pred)
        freq = table.frequency(a)
        dev = abs(freq - pred)
        report.rows.append((a, table.counts.get(a, 0), freq, pred, dev, dev <= tol))
    return report


def census_exceptional(q: int, x: int) -> int:
    """Number of 1 <= g <= x whose quadratic discriminant D(g) has no prime
    divisor p = 1 (mod q).

    Equivalent to the squarefree kernel of g having no such prime divisor;
    perfect squares count vacuously.  Marks, for each prime p = 1 (mod q),
    the g with odd nu_p(g) and counts the unmarked rest.
    """
    from .arith import is_prime

    if q % 2 == 0 or not is_prime(q):
        raise ValueError("q must be an odd prime")
    if x < 1 or x > 10**8:
        raise ValueError("census supports 1 <= x <= 1e8")
    excluded = np.zeros(x + 1, dtype=bool)
    primes = _simple_primes(x)
    for p in primes[primes % q == 1]:
        p = int(p)
        pk = p
        k = 1
        while pk <= x:
            if k % 2 == 1:
                idx = np.arange(pk, x + 1, pk)
                idx = idx[idx % (pk * p) != 0]
                excluded[idx] = True
            pk *= p
            k += 1
    return int(x - np.count_nonzero(excluded[1:]))


def write_orders_csv(records: Iterable[OrderRecord], fh: TextIO) -> int:
    """Dump records as CSV with columns p,ord,index; returns the row count."""
    fh.write("p,ord,index\n")
    rows = 0
    for rec in records:
        fh.write(f"{rec.p},{rec.ord},{rec.index}\n")
        rows += 1
    return rows
