"""Height-bounded exhaustive search for strong D(-1) pairs and triples.

Every positive a with a^2 - 1 a square is a = (t^2+1)/(2t) for some t > 0,
so singletons are generated from coprime (p, q) rather than by scanning all
fractions.  Pairs {a, b} need ab - 1 square; for a = n1/d1, b = n2/d2 that
is the integer (n1*n2 - d1*d2)*d1*d2 being a perfect square.  A vectorised
quadratic-residue sieve discards most candidates before the exact test.
"""

from __future__ import annotations

import logging
import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Optional, Sequence

import numpy as np

from .exact import format_rational, height
from .families import StrongPair, StrongTriple

__all__ = [
    "SearchConfig",
    "enumerate_singletons",
    "find_pairs",
    "find_triples",
    "extend_pair",
    "run_search",
]

log = logging.getLogger(__name__)

SIEVE_MODULI = (64, 63, 65, 11, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53)
_QR = {m: np.zeros(m, dtype=bool) for m in SIEVE_MODULI}
for _m, _tab in _QR.items():
    _tab[[(k * k) % _m for k in range(_m)]] = True

ROW_BLOCK = 64
MODES = ("singletons", "pairs", "triples")


@dataclass(frozen=True)
class SearchConfig:
    height_bound: int
    mode: str = "triples"
    require_one: bool = False
    jobs: int = 1
    sieve: bool = True

    def __post_init__(self):
        if self.height_bound < 1:
            raise ValueError("height bound must be at least 1")
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}")
        if self.jobs < 1:
            raise ValueError("jobs must be at least 1")


def _singleton_pairs(H: int) -> list[tuple[int, int]]:
    """(numerator, denominator) of every a >= 1 with a^2-1 square and height <= H."""
    out = [(1, 1)]
    pmax = math.isqrt(2 * H) + 1
    for p in range(2, pmax + 1):
        p2 = p * p
        for q in range(1, p):
            s = p2 + q * q
            if s > 2 * H:
                break
            if math.gcd(p, q) != 1:
                continue
            if p & 1 and q & 1:
                num, den = s // 2, p * q
            else:
                num, den = s, 2 * p * q
            if num <= H:
                out.append((num, den))
    out.sort(key=lambda nd: Fraction(nd[0], nd[1]))
    return out


def enumerate_singletons(H: int) -> list[Fraction]:
    """All a >= 1 of height <= H with a^2 - 1 a rational square, ascending."""
    if H < 1:
        raise ValueError("height bound must be at least 1")
    return [Fraction(n, d) for n, d in _singleton_pairs(H)]


def _is_square_product(n1: int, d1: int, n2: int, d2: int) -> bool:
    key = (n1 * n2 - d1 * d2) * d1 * d2
    if key < 0:
        return False
    r = math.isqrt(key)
    return r * r == key


# -- worker side ---------------------------------------------------------------

_NUMS: Optional[np.ndarray] = None
_DENS: Optional[np.ndarray] = None
_PY_NUMS: list = []
_PY_DENS: list = []
_RES: dict = {}
_SIEVE = True


def _init_worker(nums: list[int], dens: list[int], sieve: bool) -> None:
    global _NUMS, _DENS, _PY_NUMS, _PY_DENS, _RES, _SIEVE
    _PY_NUMS, _PY_DENS = nums, dens
    _NUMS = np.array(nums, dtype=np.int64)
    _DENS = np.array(dens, dtype=np.int64)
    _RES = {m: (_NUMS % m, _DENS % m) for m in SIEVE_MODULI}
    _SIEVE = sieve


def _sieve_block(rows: np.ndarray, cols: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Index pairs (rows x cols) surviving every residue test."""
    it = iter(SIEVE_MODULI)
    m = next(it)
    rn, rd = _RES[m]
    ni, di = rn[rows][:, None], rd[rows][:, None]
    nj, dj = rn[cols][None, :], rd[cols][None, :]
    dd = (di * dj) % m
    key = (((ni * nj - di * dj) % m) * dd) % m
    mask = _QR[m][key] & (cols[None, :] > rows[:, None])
    ii, jj = np.nonzero(mask)
    ii, jj = rows[ii], cols[jj]
    for m in it:
        if ii.size == 0:
            break
        rn, rd = _RES[m]
        dd = (rd[ii] * rd[jj]) % m
        key = (((rn[ii] * rn[jj] - rd[ii] * rd[jj]) % m) * dd) % m
        keep = _QR[m][key]
        ii, jj = ii[keep], jj[keep]
    return ii, jj


def _scan_rows(row_ids: Sequence[int], col_ids: Optional[Sequence[int]] = None) -> list[tuple[int, int]]:
    """Edges (i, j), i < j, with i in row_ids and j in col_ids (default: all)."""
    nums, dens = _PY_NUMS, _PY_DENS
    n = len(nums)
    cols = np.arange(n) if col_ids is None else np.asarray(col_ids, dtype=np.int64)
    edges = []
    if not _SIEVE:
        colset = cols.tolist()
        for i in row_ids:
            for j in colset:
                if j > i and _is_square_product(nums[i], dens[i], nums[j], dens[j]):
                    edges.append((i, j))
        return edges
    rows_all = np.asarray(row_ids, dtype=np.int64)
    for start in range(0, len(rows_all), ROW_BLOCK):
        rows = rows_all[start:start + ROW_BLOCK]
        ii, jj = _sieve_block(rows, cols)
        for i, j in zip(ii.tolist(), jj.tolist()):
            if _is_square_product(nums[i], dens[i], nums[j], dens[j]):
                edges.append((i, j))
    return edges


# -- driver ----------------------------------------------------------------------

def _chunks(indices: list[int], jobs: int) -> list[list[int]]:
    # interleave rows so that every chunk gets a mix of long and short rows
    return [indices[k::jobs] for k in range(jobs) if indices[k::jobs]]


def _edges(nums: list[int], dens: list[int], rows: list[int], cols: Optional[list[int]],
           jobs: int, sieve: bool) -> list[tuple[int, int]]:
    if jobs == 1 or len(rows) < 2 * ROW_BLOCK:
        _init_worker(nums, dens, sieve)
        edges = _scan_rows(rows, cols)
    else:
        edges = []
        with ProcessPoolExecutor(max_workers=jobs, initializer=_init_worker,
                                 initargs=(nums, dens, sieve)) as pool:
            futures = [pool.submit(_scan_rows, chunk, cols) for chunk in _chunks(rows, jobs)]
            for fut in futures:
                edges.extend(fut.result())
    return sorted(set(edges))


def _pair_graph(H: int, require_one: bool, jobs: int, sieve: bool):
    table = _singleton_pairs(H)
    nums = [n for n, _ in table]
    dens = [d for _, d in table]
    log.info("height %d: %d singletons", H, len(table))
    if require_one:
        # index 0 is a = 1; only its neighbours can share a triple with it
        _init_worker(nums, dens, sieve)
        first = _scan_rows([0])
        nbrs = [j for _, j in first]
        inner = _edges(nums, dens, nbrs, nbrs, jobs, sieve) if nbrs else []
        edges = sorted(set(first) | set(inner))
    else:
        edges = _edges(nums, dens, list(range(len(table))), None, jobs, sieve)
    log.info("%d pairs", len(edges))
    return table, edges


def _frac(table, i) -> Fraction:
    n, d = table[i]
    return Fraction(n, d)


def find_pairs(H: int, require_one: bool = False, jobs: int = 1,
               sieve: bool = True) -> list[StrongPair]:
    """All strong D(-1) pairs with both elements of height <= H."""
    table, edges = _pair_graph(H, require_one, jobs, sieve)
    if require_one:
        edges = [e for e in edges if e[0] == 0]
    return [StrongPair.build((_frac(table, i), _frac(table, j)), "search", {"H": H})
            for i, j in edges]


def find_triples(H: int, require_one: bool = False, jobs: int = 1,
                 sieve: bool = True) -> list[StrongTriple]:
    """All strong D(-1) triples with every element of height <= H."""
    table, edges = _pair_graph(H, require_one, jobs, sieve)
    adj: dict[int, set[int]] = {}
    for i, j in edges:
        adj.setdefault(i, set()).add(j)
    found = []
    for i, j in edges:
        if require_one and i != 0:
            continue
        for k in sorted(adj.get(i, set()) & adj.get(j, set())):
            if k > j:
                found.append(StrongTriple.build(
                    (_frac(table, i), _frac(table, j), _frac(table, k)), "search", {"H": H}))
    found.sort(key=lambda s: s.elements)
    return found


def extend_pair(pair: Iterable, H_c: int, sieve: bool = True) -> list[Fraction]:
    """Every c of height <= H_c making {pair..., c} a strong D(-1) triple."""
    a, b = sorted(Fraction(x) for x in pair)
    table = _singleton_pairs(H_c)
    nums = [n for n, _ in table] + [a.numerator, b.numerator]
    dens = [d for _, d in table] + [a.denominator, b.denominator]
    _init_worker(nums, dens, sieve)
    ia, ib = len(table), len(table) + 1
    cand = list(range(len(table)))
    # rows are the fixed elements, so ask for pairs in both orientations
    hits_a = {j for i, j in _scan_rows([ia], None) if j < ia} | \
        {i for i, j in _scan_rows(cand, [ia])}
    if not hits_a:
        return []
    hits_b = {i for i, j in _scan_rows(sorted(hits_a), [ib])}
    out = [_frac(table, i) for i in sorted(hits_b)]
    return [c for c in out if c not in (a, b)]


def run_search(config: SearchConfig):
    """Dispatch on ``config.mode``; returns singletons, pairs or triples."""
    if config.mode == "singletons":
        vals = enumerate_singletons(config.height_bound)
        return [v for v in vals if v == 1] if config.require_one else vals
    if config.mode == "pairs":
        return find_pairs(config.height_bound, config.require_one, config.jobs, config.sieve)
    return find_triples(config.height_bound, config.require_one, config.jobs, config.sieve)
