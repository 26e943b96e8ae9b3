"""Exact minimum domination of low-degree monomials by top-degree ones.

``f_exact(r, d)`` finds the least number of degree-r monomials in d
indeterminates whose one-step divisors cover every monomial of degree r-1,
by branch and bound with an admissible disjoint-witness lower bound.  The
weight colouring (exponent-index sum mod d) supplies both the upper bound
``f_bar`` and the starting incumbent, and aperiodic binary necklace counts
give the conjectured common value.
"""

import time
from dataclasses import dataclass
from functools import lru_cache
from math import comb, gcd
from threading import Lock

import numpy as np

from .exceptions import CapExceeded, NotCoprime, SizeCap
from .multicomplexes import (
    Monomial,
    divisors_one_step,
    monomials_of_degree,
    multiples_one_step,
)

UNIVERSE_CAP = 5000
NECKLACE_CAP = 24


# --- monomial graph structure -------------------------------------------------

def swap_neighbors(m: Monomial) -> set[Monomial]:
    """Same-degree neighbours m / x_i * x_j, i != j."""
    d = len(m)
    out = set()
    for i in range(d):
        if m[i] == 0:
            continue
        for j in range(d):
            if i != j:
                mm = list(m)
                mm[i] -= 1
                mm[j] += 1
                out.add(tuple(mm))
    return out


def tg_neighbors(m: Monomial) -> set[Monomial]:
    """Swap neighbours together with the one-step divisors."""
    return swap_neighbors(m) | divisors_one_step(m)


def colour(m: Monomial) -> int:
    """Weight colouring: exponent-weighted index sum mod d."""
    d = len(m)
    return sum(i * t for i, t in enumerate(m)) % d


def colour_classes(r: int, d: int) -> list[list[Monomial]]:
    """Degree-r monomials partitioned by colour, classes indexed 0..d-1."""
    classes: list[list[Monomial]] = [[] for _ in range(d)]
    for m in monomials_of_degree(r, d):
        classes[colour(m)].append(m)
    return classes


def colour_class_sizes(r: int, d: int) -> list[int]:
    return [len(c) for c in colour_classes(r, d)]


def f_bar(r: int, d: int) -> int:
    """Size of the smallest colour class among degree-r monomials."""
    return min(colour_class_sizes(r, d))


def _min_colour_class(r: int, d: int) -> list[Monomial]:
    classes = colour_classes(r, d)
    return min(classes, key=len)


# --- exact minimisation ---------------------------------------------------------

@dataclass(frozen=True)
class DominationInstance:
    """The cover problem for (r, d): degree-r candidates vs degree-(r-1) targets."""

    r: int
    d: int

    @property
    def universe(self) -> list[Monomial]:
        return monomials_of_degree(self.r - 1, self.d)

    @property
    def candidates(self) -> list[Monomial]:
        return monomials_of_degree(self.r, self.d)

    def covers(self, candidate: Monomial) -> set[Monomial]:
        return divisors_one_step(candidate)


@dataclass(frozen=True)
class DominationResult:
    r: int
    d: int
    value: int
    witness: tuple[Monomial, ...]
    optimal: bool
    nodes_explored: int


_OPT_CACHE: dict[tuple[int, int], DominationResult] = {}
_OPT_LOCK = Lock()


def f_exact(r: int, d: int, time_budget: float = 60.0) -> DominationResult:
    """Exact minimum size of a dominating set of degree-r monomials.

    Branch on the first uncovered target in graded-lex order (every target
    has exactly d covering candidates, its one-step multiples, so the
    fewest-candidates rule degenerates to that tie-break).  When the budget
    runs out the best cover found so far is returned with ``optimal=False``.
    """
    if r < 1 or d < 1:
        raise ValueError("need r >= 1 and d >= 1")
    with _OPT_LOCK:
        cached = _OPT_CACHE.get((r, d))
    if cached is not None:
        return cached

    t0 = time.monotonic()
    universe = monomials_of_degree(r - 1, d)
    if len(universe) > UNIVERSE_CAP:
        raise CapExceeded(f"universe size {len(universe)} exceeds {UNIVERSE_CAP}")
    uidx = {m: i for i, m in enumerate(universe)}
    full = (1 << len(universe)) - 1
    candidates = monomials_of_degree(r, d)
    cidx = {m: i for i, m in enumerate(candidates)}

    cover = []  # candidate id -> bitmask of covered universe monomials
    for m in candidates:
        msk = 0
        for dv in divisors_one_step(m):
            msk |= 1 << uidx[dv]
        cover.append(msk)
    mult = []  # universe id -> candidate ids of its one-step multiples
    for u in universe:
        mult.append(tuple(sorted(cidx[mm] for mm in multiples_one_step(u, d))))
    mult_block = [sum(1 << c for c in ids) for ids in mult]

    # incumbent: smallest colour class (always dominating), then greedy refine
    best_ids = sorted(cidx[m] for m in _min_colour_class(r, d))
    covered, greedy = 0, []
    while covered != full:
        pick = max(range(len(candidates)),
                   key=lambda c: ((cover[c] & ~covered).bit_count(), -c))
        greedy.append(pick)
        covered |= cover[pick]
    if len(greedy) < len(best_ids):
        best_ids = greedy
    best = [len(best_ids), best_ids]

    nodes = 0
    timed_out = False
    visited: dict[int, int] = {}

    def lower_bound(uncov: int) -> int:
        # greedily collect targets whose candidate sets are pairwise disjoint
        lb = 0
        blocked = 0
        m = uncov
        while m:
            i = (m & -m).bit_length() - 1
            m &= m - 1
            bm = mult_block[i]
            if not bm & blocked:
                lb += 1
                blocked |= bm
        return lb

    def dfs(cov: int, chosen: list[int]):
        nonlocal nodes, timed_out
        if timed_out:
            return
        nodes += 1
        if nodes % 4096 == 0 and time.monotonic() - t0 > time_budget:
            timed_out = True
            return
        if cov == full:
            if len(chosen) < best[0]:
                best[0], best[1] = len(chosen), list(chosen)
            return
        depth = len(chosen)
        seen = visited.get(cov)
        if seen is not None and seen <= depth:
            return
        if len(visited) < 2_000_000:
            visited[cov] = depth
        uncov = full & ~cov
        if depth + lower_bound(uncov) >= best[0]:
            return
        u = (uncov & -uncov).bit_length() - 1
        opts = sorted(mult[u],
                      key=lambda c: (-(cover[c] & uncov).bit_count(), c))
        for c in opts:
            chosen.append(c)
            dfs(cov | cover[c], chosen)
            chosen.pop()
            if timed_out:
                return

    dfs(0, [])
    witness = tuple(sorted((candidates[c] for c in best[1]), reverse=True))
    result = DominationResult(r, d, best[0], witness, not timed_out, nodes)
    if result.optimal:
        with _OPT_LOCK:
            _OPT_CACHE[(r, d)] = result
    return result


def witness_dominates_targets(witness, r: int, d: int) -> bool:
    """Does the set cover every monomial of degree r-1?"""
    covered = set()
    for m in witness:
        covered |= divisors_one_step(m)
    return set(monomials_of_degree(r - 1, d)) <= covered


def witness_dominates_same_degree(witness, r: int, d: int) -> bool:
    """Does the set also dominate all degree-r monomials under swap moves?"""
    ws = set(witness)
    return all(
        m in ws or swap_neighbors(m) & ws
        for m in monomials_of_degree(r, d)
    )


# --- necklace counts -----------------------------------------------------------

def mobius(m: int) -> int:
    """Classical Mobius function by trial division (arguments <= 10^6)."""
    if m < 1 or m > 10**6:
        raise ValueError("mobius argument out of range")
    res, x, p = 1, m, 2
    while p * p <= x:
        if x % p == 0:
            x //= p
            if x % p == 0:
                return 0
            res = -res
        p += 1
    if x > 1:
        res = -res
    return res


def necklaces_L2(r: int, d: int) -> int:
    """Aperiodic binary necklaces with r black and d white beads, by
    Mobius inversion over the divisors of gcd(r+d, r)."""
    if r < 0 or d < 0 or r + d < 1:
        raise ValueError("need r, d >= 0 and r + d >= 1")
    n = r + d
    g = gcd(n, r)
    total = sum(
        mobius(k) * comb(n // k, r // k) for k in range(1, g + 1) if g % k == 0
    )
    if g == 0:  # r == 0: single necklace, aperiodic only for n == 1
        return 1 if n == 1 else 0
    assert total % n == 0
    return total // n


@lru_cache(maxsize=None)
def _aperiodic_by_weight(n: int) -> tuple[int, ...]:
    """counts[w] = aperiodic binary necklaces of length n with w ones,
    by explicit orbit counting over all 2^n strings."""
    counts = np.zeros(n + 1, dtype=np.int64)
    mask = np.uint64((1 << n) - 1)
    chunk = 1 << 20
    for start in range(0, 1 << n, chunk):
        stop = min(start + chunk, 1 << n)
        x = np.arange(start, stop, dtype=np.uint64)
        minrot = x.copy()
        aperiodic = np.ones(x.shape, dtype=bool)
        for k in range(1, n):
            rot = ((x << np.uint64(k)) | (x >> np.uint64(n - k))) & mask
            np.minimum(minrot, rot, out=minrot)
            aperiodic &= rot != x
        sel = (minrot == x) & aperiodic
        weights = np.bitwise_count(x[sel]).astype(np.int64)
        counts += np.bincount(weights, minlength=n + 1)
    return tuple(int(c) for c in counts)


def necklaces_bruteforce(r: int, d: int) -> int:
    """Count rotation orbits of full length directly; oracle for the formula."""
    if r < 0 or d < 0 or r + d < 1:
        raise ValueError("need r, d >= 0 and r + d >= 1")
    n = r + d
    if n > NECKLACE_CAP:
        raise SizeCap(f"brute force capped at r + d <= {NECKLACE_CAP}")
    return _aperiodic_by_weight(n)[r]


def colour_class_coprime_check(r: int, d: int) -> bool:
    """In the coprime case, verify the d colour classes are equicardinal of
    size L2(r, d), and that rotating exponent tuples shifts colours by r."""
    if gcd(r + d, r) != 1:
        raise NotCoprime(f"gcd(r+d, r) = {gcd(r + d, r)} != 1")
    expected = necklaces_L2(r, d)
    sizes = colour_class_sizes(r, d)
    if sizes != [expected] * d:
        return False
    for m in monomials_of_degree(r, d):
        rotated = (m[-1],) + m[:-1]
        if colour(rotated) != (colour(m) + r) % d:
            return False
    return True


# --- conjecture scan -------------------------------------------------------------

@dataclass(frozen=True)
class ScanRow:
    r: int
    d: int
    f: int
    f_optimal: bool
    f_bar: int
    l2: int
    status: str  # confirmed | gap | timeout


def _scan_cell(r: int, d: int, time_budget: float) -> ScanRow:
    res = f_exact(r, d, time_budget=time_budget)
    fb = f_bar(r, d)
    l2 = necklaces_L2(r, d)
    if not res.optimal:
        status = "timeout"
    elif res.value == fb == l2:
        status = "confirmed"
    else:
        status = "gap"
    return ScanRow(r, d, res.value, res.optimal, fb, l2, status)


def conjecture_scan(r_max: int, d_max: int, time_budget: float = 60.0,
                    threads: int = 1) -> list[ScanRow]:
    """Compare f, f_bar and L2 on the grid 1..r_max x 1..d_max.

    A row is ``confirmed`` only when the exact search proved optimality and
    all three numbers agree; cells that exhaust their budget report the best
    known value as ``timeout`` and assert nothing.
    """
    cells = [(r, d) for r in range(1, r_max + 1) for d in range(1, d_max + 1)]
    if threads > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=threads) as pool:
            rows = list(pool.map(lambda c: _scan_cell(*c, time_budget), cells))
    else:
        rows = [_scan_cell(r, d, time_budget) for r, d in cells]
    return sorted(rows, key=lambda row: (row.r, row.d))


def scan_to_csv(rows) -> str:
    lines = ["r,d,f,f_optimal,f_bar,L2,status"]
    for row in rows:
        lines.append(
            f"{row.r},{row.d},{row.f},{str(row.f_optimal).lower()},"
            f"{row.f_bar},{row.l2},{row.status}"
        )
    return "\n".join(lines) + "\n"


def scan_to_json(rows) -> list[dict]:
    return [
        {
            "r": row.r,
            "d": row.d,
            "f": row.f,
            "f_optimal": row.f_optimal,
            "f_bar": row.f_bar,
            "L2": row.l2,
            "status": row.status,
        }
        for row in rows
    ]


def symmetry_report(rows) -> list[dict]:
    """Where both (r, d) and (d, r) were proven optimal, record whether the
    two minima agree.  Observational output, nothing is asserted."""
    table = {(row.r, row.d): row for row in rows}
    out = []
    for (r, d), row in sorted(table.items()):
        if r >= d:
            continue
        mirror = table.get((d, r))
        if mirror is None or not (row.f_optimal and mirror.f_optimal):
            continue
        out.append({"r": r, "d": d, "f_rd": row.f, "f_dr": mirror.f,
                    "equal": row.f == mirror.f})
    return out
