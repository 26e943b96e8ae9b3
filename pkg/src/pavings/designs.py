"""Block designs, the sparse-paving basis bound, and the closed-form Tutte
polynomial of sparse paving matroids.

A Steiner system S(k-1, k, n) yields a sparse paving matroid meeting the
basis lower bound with equality: take the blocks as circuit-hyperplanes and
every other k-subset as a basis.  The seven-point plane ships as a built-in
constant; other designs are ingested from JSON block files.
"""

import json
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb

from .exceptions import (
    FormatError,
    InvalidLambda,
    InvalidRank,
    NotSteiner,
    UnequalBlockSizes,
)
from .matroid import Matroid, TuttePolynomial, from_bases


@dataclass(frozen=True)
class BlockDesign:
    """Point set 0..n-1 with equicardinal blocks."""

    n: int
    blocks: tuple[frozenset[int], ...]

    @staticmethod
    def make(n: int, blocks) -> "BlockDesign":
        return BlockDesign(n, tuple(frozenset(b) for b in blocks))

    @property
    def k(self) -> int:
        sizes = {len(b) for b in self.blocks}
        if len(sizes) != 1:
            raise UnequalBlockSizes(f"block sizes {sorted(sizes)} are not equal")
        return next(iter(sizes))

    @property
    def t(self) -> int:
        return self.k - 1


FANO = BlockDesign.make(7, [
    {0, 1, 3}, {1, 2, 4}, {2, 3, 5}, {3, 4, 6}, {4, 5, 0}, {5, 6, 1}, {6, 0, 2},
])


def verify_steiner(design: BlockDesign) -> bool:
    """Is every (k-1)-subset of points in exactly one block?

    On success the block count necessarily equals C(n, k-1) / k, which is
    asserted as a sanity check.
    """
    if not design.blocks:
        return False
    k = design.k  # raises UnequalBlockSizes on ragged input
    if any(not all(0 <= e < design.n for e in b) for b in design.blocks):
        return False
    for sub in combinations(range(design.n), k - 1):
        hits = sum(1 for b in design.blocks if set(sub) <= b)
        if hits != 1:
            return False
    assert len(design.blocks) * k == comb(design.n, k - 1)
    return True


def sparse_from_steiner(design: BlockDesign) -> Matroid:
    """Sparse paving matroid whose circuit-hyperplanes are the blocks."""
    if not verify_steiner(design):
        raise NotSteiner("blocks do not form a Steiner system S(k-1, k, n)")
    k = design.k
    blocks = set(design.blocks)
    bases = [c for c in combinations(range(design.n), k)
             if frozenset(c) not in blocks]
    m = from_bases(design.n, bases)
    assert m.is_sparse_paving()
    return m


def fano_matroid() -> Matroid:
    """The rank-3 matroid of the built-in seven-point plane."""
    return sparse_from_steiner(FANO)


def sparse_basis_bound(n: int, r: int) -> Fraction:
    """Lower bound (n-r)/r * C(n, r-1) on the basis count of a rank-r sparse
    paving matroid, kept exact as a rational."""
    if not 1 <= r <= n:
        raise InvalidRank(f"need 1 <= r <= n, got r={r}, n={n}")
    return Fraction(n - r, r) * comb(n, r - 1)


def tutte_sparse_closed_form(n: int, r: int, lam: int) -> TuttePolynomial:
    """Tutte polynomial of a rank-r sparse paving matroid on n elements with
    lam circuit-hyperplanes, expanded from the closed form

        sum_{i<r} C(n,i) (x-1)^(r-i)  +  C(n,r)  +  lam (xy - x - y)
        + sum_{i>r} C(n,i) (y-1)^(i-r).
    """
    if not 1 <= r <= n - 1:
        raise InvalidRank(f"need 1 <= r <= n-1, got r={r}, n={n}")
    if not 0 <= lam <= comb(n, r):
        raise InvalidLambda(f"lambda={lam} outside [0, C({n},{r})]")
    coeffs: dict[tuple[int, int], int] = {}

    def add(i: int, j: int, c: int):
        if c:
            coeffs[(i, j)] = coeffs.get((i, j), 0) + c

    for i in range(r):
        p = r - i
        for j in range(p + 1):  # (x-1)^p expanded
            add(j, 0, comb(n, i) * comb(p, j) * (-1) ** (p - j))
    add(0, 0, comb(n, r))
    add(1, 1, lam)
    add(1, 0, -lam)
    add(0, 1, -lam)
    for i in range(r + 1, n + 1):
        p = i - r
        for j in range(p + 1):  # (y-1)^p expanded
            add(0, j, comb(n, i) * comb(p, j) * (-1) ** (p - j))
    poly = TuttePolynomial(coeffs)
    assert poly(2, 2) == 1 << n
    assert poly(1, 1) == comb(n, r) - lam
    return poly


def circuit_hyperplane_count(m: Matroid) -> int:
    """Number of subsets that are simultaneously circuits and hyperplanes."""
    return sum(1 for h in m.hyperplanes if h in m.circuits)


# --- JSON ingestion ----------------------------------------------------------

def design_from_json_dict(payload) -> BlockDesign:
    if not isinstance(payload, dict) or set(payload) != {"n", "k", "blocks"}:
        raise FormatError('design JSON must be {"n": int, "k": int, "blocks": [[int, ...], ...]}')
    n, k, blocks = payload["n"], payload["k"], payload["blocks"]
    if not isinstance(n, int) or not isinstance(k, int) or not isinstance(blocks, list):
        raise FormatError("design JSON fields have wrong types")
    parsed = []
    for b in blocks:
        if not isinstance(b, list) or any(not isinstance(e, int) for e in b):
            raise FormatError("each block must be a list of integers")
        if len(set(b)) != len(b):
            raise FormatError("blocks must not repeat points")
        parsed.append(frozenset(b))
    design = BlockDesign(n, tuple(parsed))
    if parsed and design.k != k:
        raise FormatError(f"declared block size {k} does not match blocks")
    return design


def load_design(path) -> BlockDesign:
    with open(path) as fh:
        try:
            payload = json.load(fh)
        except json.JSONDecodeError as exc:
            raise FormatError(f"not valid JSON: {exc}") from exc
    return design_from_json_dict(payload)
