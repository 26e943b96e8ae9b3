"""Exhaustive enumeration of small paving and sparse paving matroids.

A rank-r paving matroid is determined by its hyperplanes, which partition the
(r-1)-subsets of the ground set; conversely, every family of blocks of size
at least r-1 in which each (r-1)-subset lies in exactly one block arises this
way.  We enumerate the non-trivial blocks (those of size >= r, pairwise
intersecting in at most r-2 elements) up to relabeling by orderly generation:
families are kept only when their descending mask sequence is the lex-max in
the orbit, and extension always appends a smaller block, so every isomorphism
class appears exactly once.

Caps: n <= 8 for rank <= 3, n <= 7 above.
"""

import hashlib
from dataclasses import dataclass
from itertools import combinations
from math import comb

from .exceptions import CapExceeded, InvalidRank, NoBases
from .matroid import Matroid, _mask_of, direct_sum, from_bases, uniform
from .symmetry import family_is_canonical, min_image

ENUM_CAP_RANK3 = 8
ENUM_CAP = 7


@dataclass(frozen=True)
class PartitionFamily:
    """Blocks of size >= r-1 covering every (r-1)-subset exactly once."""

    n: int
    r: int
    blocks: frozenset[frozenset[int]]

    def __post_init__(self):
        if not 1 <= self.r <= self.n:
            raise InvalidRank(f"need 1 <= r <= n, got r={self.r}, n={self.n}")
        for blk in self.blocks:
            if any(not 0 <= e < self.n for e in blk):
                raise ValueError(f"block {sorted(blk)} leaves the ground set")
            if len(blk) < self.r - 1:
                raise ValueError(f"block {sorted(blk)} smaller than r-1")
        for sub in combinations(range(self.n), self.r - 1):
            hits = sum(1 for blk in self.blocks if set(sub) <= blk)
            if hits != 1:
                raise ValueError(
                    f"{set(sub)} lies in {hits} blocks, expected exactly one"
                )


def matroid_from_partition(pf: PartitionFamily) -> Matroid:
    """Rank-r paving matroid whose bases are the r-subsets inside no block."""
    bases = []
    for comb_ in combinations(range(pf.n), pf.r):
        sub = set(comb_)
        if not any(sub <= blk for blk in pf.blocks):
            bases.append(comb_)
    if not bases:
        raise NoBases("every r-subset is contained in a block")
    m = from_bases(pf.n, bases)
    assert m.r == pf.r
    return m


def _check_caps(r: int, n: int):
    cap = ENUM_CAP_RANK3 if r <= 3 else ENUM_CAP
    if n > cap:
        raise CapExceeded(f"enumeration at rank {r} capped at n <= {cap}")


def _orderly_families(n: int, block_masks: list[int], max_overlap: int,
                      keep_fn):
    """DFS over canonical families; ``keep_fn`` prunes dead subtrees.

    ``block_masks`` must be sorted descending.  Yields canonical families as
    descending mask tuples, including the empty family.
    """
    out = []

    def rec(fam: tuple[int, ...], candidates: list[int]):
        out.append(fam)
        for i, b in enumerate(candidates):
            child = fam + (b,)
            if not family_is_canonical(child, n):
                continue
            if not keep_fn(child):
                continue
            rest = [c for c in candidates[i + 1:]
                    if (c & b).bit_count() <= max_overlap]
            rec(child, rest)

    rec((), block_masks)
    return out


def _bases_outside_blocks(n: int, r: int, fam: tuple[int, ...]) -> list[int]:
    out = []
    for comb_ in combinations(range(n), r):
        m = _mask_of(comb_, n)
        if not any(m & ~blk == 0 for blk in fam):
            out.append(m)
    return out


def _rank1_paving(n: int, loopless: bool, coloopless: bool) -> list[Matroid]:
    # every rank-1 matroid is paving: U_{1,n-k} plus k loops
    out = []
    for k in range(n):
        if loopless and k > 0:
            continue
        if coloopless and n - k == 1:
            continue
        m = uniform(1, n - k) if k == 0 else direct_sum(uniform(1, n - k), uniform(0, k))
        out.append(m)
    return out


def enumerate_paving(r: int, n: int, *, loopless: bool = True,
                     coloopless: bool = True) -> list[Matroid]:
    """All rank-r paving matroids on n elements, one per isomorphism class.

    Rank >= 2 paving matroids are automatically loopless (their circuits have
    at least two elements), so the ``loopless`` flag only filters rank <= 1.
    """
    if not 0 <= r <= n:
        raise InvalidRank(f"need 0 <= r <= n, got r={r}, n={n}")
    _check_caps(r, n)
    if r == 0:
        m = uniform(0, n)
        if loopless and n > 0:
            return []
        return [m]
    if r == 1:
        mats = _rank1_paving(n, loopless, coloopless)
    else:
        blocks = sorted(
            (m for m in range(1, 1 << n) if r <= m.bit_count() <= n - 1),
            reverse=True,
        )
        mats = []
        for fam in _orderly_families(
            n, blocks, r - 2,
            keep_fn=lambda f: bool(_bases_outside_blocks(n, r, f)),
        ):
            bases = _bases_outside_blocks(n, r, fam)
            if not bases:
                continue
            m = from_bases(n, bases)
            assert m.r == r and m.is_paving()
            if coloopless and m.coloops:
                continue
            mats.append(m)
    return sorted(mats, key=canonical_form)


def enumerate_sparse_paving(r: int, n: int) -> list[Matroid]:
    """All rank-r sparse paving matroids on n elements up to isomorphism.

    These correspond to the stable sets of circuit-hyperplanes: families of
    r-subsets pairwise differing in more than two elements (independent sets
    of the Johnson graph J(n, r)); the bases are the remaining r-subsets.
    """
    if not 0 <= r <= n:
        raise InvalidRank(f"need 0 <= r <= n, got r={r}, n={n}")
    _check_caps(r, n)
    if r == 0:
        return [uniform(0, n)]
    blocks = sorted((m for m in range(1, 1 << n) if m.bit_count() == r),
                    reverse=True)
    mats = []
    for fam in _orderly_families(
        n, blocks, r - 2,
        keep_fn=lambda f: len(f) < comb(n, r),
    ):
        fam_set = set(fam)
        bases = [
            _mask_of(c, n)
            for c in combinations(range(n), r)
            if _mask_of(c, n) not in fam_set
        ]
        if not bases:
            continue
        m = from_bases(n, bases)
        assert m.r == r and m.is_sparse_paving()
        mats.append(m)
    return sorted(mats, key=canonical_form)


def g(r: int, n: int) -> int:
    """Minimum of b(M) - C(n-1, r-1) over loopless coloopless rank-r paving
    matroids on n elements."""
    return g_witness(r, n)[0]


def g_witness(r: int, n: int) -> tuple[int, Matroid]:
    """The minimum together with a matroid attaining it."""
    mats = enumerate_paving(r, n, loopless=True, coloopless=True)
    if not mats:
        raise NoBases(f"no loopless coloopless rank-{r} paving matroids on {n} elements")
    best = min(mats, key=lambda m: (m.basis_count, canonical_form(m)))
    return best.basis_count - comb(n - 1, r - 1), best


def canonical_form(m: Matroid) -> tuple[int, ...]:
    """Total-order key invariant under relabeling: (n, r, minimal basis image)."""
    return (m.n, m.r) + min_image(m.basis_masks, m.n)


def canonical_hash(m: Matroid) -> str:
    """Short stable hex digest of the canonical form, used for file names."""
    key = repr(canonical_form(m)).encode()
    return hashlib.sha256(key).hexdigest()[:16]


def are_isomorphic(m1: Matroid, m2: Matroid) -> bool:
    """Relabeling equivalence via canonical forms, after cheap invariants."""
    if (m1.n, m1.r, m1.basis_count) != (m2.n, m2.r, m2.basis_count):
        return False
    deg1 = sorted(sum(1 for b in m1.basis_masks if b >> e & 1) for e in range(m1.n))
    deg2 = sorted(sum(1 for b in m2.basis_masks if b >> e & 1) for e in range(m2.n))
    if deg1 != deg2:
        return False
    return canonical_form(m1) == canonical_form(m2)


def summary_rows(mats) -> list[dict]:
    """CSV-ready summary: n, r, bases, paving, sparse, h-vector."""
    from .hvectors import f_vector, h_from_f

    rows = []
    for m in mats:
        rows.append({
            "n": m.n,
            "r": m.r,
            "bases": m.basis_count,
            "paving": m.is_paving(),
            "sparse": m.is_sparse_paving(),
            "h_vector": " ".join(str(x) for x in h_from_f(f_vector(m))),
        })
    return rows
