"""Face vectors and h-vectors of matroid independence complexes.

All arithmetic is exact: Python integers throughout, and rationals for the
alternating-sign inequality checks at non-integer parameters.
"""

from fractions import Fraction
from itertools import combinations
from math import comb

from .exceptions import BasisCountOutOfRange, InvalidRank
from .matroid import Matroid, _mask_of


def binom(a: int, b: int) -> int:
    """Binomial coefficient with the combinatorial convention.

    ``binom(a, 0) == 1`` for every integer ``a``; zero whenever ``b < 0`` or
    ``b > a``.  (So negative upper arguments never produce signed values.)
    """
    if b == 0:
        return 1
    if b < 0 or a < b:
        return 0
    return comb(a, b)


def f_vector(m: Matroid) -> tuple[int, ...]:
    """Numbers of independent sets by size, from size 0 through the rank."""
    out = []
    for i in range(m.r + 1):
        count = 0
        for comb_ in combinations(range(m.n), i):
            a = _mask_of(comb_, m.n)
            if any(a & ~bm == 0 for bm in m.basis_masks):
                count += 1
        out.append(count)
    return tuple(out)


def h_from_f(f) -> tuple[int, ...]:
    """h-vector of an f-vector via the alternating binomial transform.

    ``h_k = sum_{i<=k} (-1)^(i+k) f_i C(d-i, k-i)`` with ``d = len(f) - 1``.
    Entries may come out negative when the input is not the f-vector of a
    matroid complex; the transform is still exact.
    """
    f = tuple(f)
    d = len(f) - 1
    return tuple(
        sum((-1) ** (i + k) * f[i] * binom(d - i, k - i) for i in range(k + 1))
        for k in range(d + 1)
    )


def f_from_h(h) -> tuple[int, ...]:
    """Inverse transform: ``f_k = sum_i h_i C(d-i, k-i)``."""
    h = tuple(h)
    d = len(h) - 1
    return tuple(
        sum(h[i] * binom(d - i, k - i) for i in range(k + 1)) for k in range(d + 1)
    )


def h_vector(m: Matroid) -> tuple[int, ...]:
    return h_from_f(f_vector(m))


def paving_h_vector(n: int, r: int, b: int) -> tuple[int, ...]:
    """Closed-form h-vector of a rank-r paving matroid with b bases.

    ``h_k = C(n-r+k-1, k)`` for ``k < r`` and ``h_r = b - C(n-1, r-1)``.
    """
    if not 1 <= r <= n:
        raise InvalidRank(f"need 1 <= r <= n, got r={r}, n={n}")
    lo, hi = comb(n - 1, r - 1), comb(n, r)
    if not lo <= b <= hi:
        raise BasisCountOutOfRange(
            f"basis count {b} outside [{lo}, {hi}] for (n, r)=({n}, {r})"
        )
    head = [binom(n - r + k - 1, k) for k in range(r)]
    return tuple(head + [b - comb(n - 1, r - 1)])


def hibi_check(h) -> bool:
    """Necessary conditions for a pure O-sequence.

    Checks ``h_0 <= h_1 <= ... <= h_[d/2]`` and ``h_i <= h_{d-i}`` for
    ``0 <= i <= [d/2]`` (floor bracket).
    """
    h = tuple(h)
    d = len(h) - 1
    half = d // 2
    if any(h[i] > h[i + 1] for i in range(half)):
        return False
    return all(h[i] <= h[d - i] for i in range(half + 1))


DEFAULT_B_SAMPLES = (1, Fraction(3, 2), 2, 4)


def brown_colbourn_check(h, b_samples=DEFAULT_B_SAMPLES) -> bool:
    """Alternating-sign inequalities on an h-vector, sampled over b >= 1.

    Evaluates ``(-1)^j sum_{i<=j} (-b)^i h_i >= 0`` for every ``j`` and every
    sampled ``b`` in exact rational arithmetic.  This is a sampler for a
    necessary condition that holds for connected matroids; whether the input
    comes from a connected matroid is the caller's assertion.
    """
    h = tuple(h)
    if any(b < 1 for b in b_samples):
        raise ValueError("all sample points must be >= 1")
    for b in b_samples:
        bq = Fraction(b)
        for j in range(len(h)):
            total = sum((-bq) ** i * h[i] for i in range(j + 1))
            if (-1) ** j * total < 0:
                return False
    return True


def S(r: int, n: int) -> int:
    """Alternating partial-sum bound on the top h-entry.

    ``S(r, n) = (-1)^(r-1) sum_{i=0}^{r-1} (-1)^i C(n-r+i-1, i)`` with the
    combinatorial binomial convention of :func:`binom`.  Satisfies the
    Pascal-style recursion ``S(r+1, n+1) = S(r+1, n) + S(r, n)``.
    """
    if not 1 <= r <= n:
        raise InvalidRank(f"need 1 <= r <= n, got r={r}, n={n}")
    total = sum((-1) ** i * binom(n - r + i - 1, i) for i in range(r))
    return (-1) ** (r - 1) * total
