"""Monomials, divisor-closed multicomplexes, and pure O-sequence witnesses.

A monomial in ``d`` indeterminates is an exponent tuple of length ``d``.
Monomial order everywhere is graded lexicographic: lower degree first,
then lexicographically decreasing exponent tuples within a degree (so
``x0^2 > x0*x1 > x1^2``).
"""

from itertools import combinations, permutations
from typing import NamedTuple

from .exceptions import (
    BudgetExceeded,
    CapExceeded,
    DimensionMismatch,
    HrAboveMax,
    HrBelowF,
)
from .hvectors import binom, paving_h_vector

Monomial = tuple[int, ...]

CENSUS_CAP = 10**6


def monomials_of_degree(k: int, d: int) -> list[Monomial]:
    """All exponent tuples of length d summing to k, lex-descending."""
    if d < 1:
        raise DimensionMismatch("need at least one indeterminate")
    if k < 0:
        return []
    out: list[Monomial] = []

    def rec(prefix: tuple[int, ...], rem: int, pos: int):
        if pos == d - 1:
            out.append(prefix + (rem,))
            return
        for t in range(rem, -1, -1):
            rec(prefix + (t,), rem - t, pos + 1)

    rec((), k, 0)
    return out


def degree(m: Monomial) -> int:
    return sum(m)


def divides(a: Monomial, b: Monomial) -> bool:
    """Componentwise exponent comparison."""
    if len(a) != len(b):
        raise DimensionMismatch(f"monomials over {len(a)} vs {len(b)} indeterminates")
    return all(x <= y for x, y in zip(a, b))


def divisors_one_step(m: Monomial) -> set[Monomial]:
    """The monomials m / x_i for each variable with positive exponent."""
    return {
        m[:i] + (m[i] - 1,) + m[i + 1:]
        for i in range(len(m))
        if m[i] > 0
    }


def multiples_one_step(m: Monomial, d: int) -> set[Monomial]:
    """The monomials m * x_i over all d indeterminates."""
    if len(m) != d:
        raise DimensionMismatch(f"monomial has {len(m)} exponents, expected {d}")
    return {m[:i] + (m[i] + 1,) + m[i + 1:] for i in range(d)}


class OSequence(NamedTuple):
    entries: tuple[int, ...]
    pure: bool


class Multicomplex:
    """A non-empty, divisor-closed set of monomials over d indeterminates."""

    def __init__(self, d: int, monomials, *, validate: bool = True):
        mono = frozenset(monomials)
        if validate:
            if d < 1:
                raise DimensionMismatch("need at least one indeterminate")
            if not mono:
                raise ValueError("a multicomplex is non-void")
            if len(mono) > CENSUS_CAP:
                raise CapExceeded(f"multicomplex larger than census cap {CENSUS_CAP}")
            for m in mono:
                if len(m) != d or any(t < 0 for t in m):
                    raise DimensionMismatch(f"bad monomial {m} for d={d}")
                for dv in divisors_one_step(m):
                    if dv not in mono:
                        raise ValueError(
                            f"not divisor-closed: {m} present but {dv} missing"
                        )
        self.d = d
        self.monomials = mono

    def __contains__(self, m: Monomial) -> bool:
        return m in self.monomials

    def __len__(self) -> int:
        return len(self.monomials)

    def __eq__(self, other):
        return (
            isinstance(other, Multicomplex)
            and self.d == other.d
            and self.monomials == other.monomials
        )

    def __hash__(self):
        return hash((self.d, self.monomials))

    def maximal_elements(self) -> set[Monomial]:
        """Monomials with no one-step multiple inside the set."""
        return {
            m
            for m in self.monomials
            if not any(mm in self.monomials for mm in multiples_one_step(m, self.d))
        }

    def o_sequence(self) -> OSequence:
        """Degree census, flagged pure iff all maximal monomials share a degree."""
        top = max(degree(m) for m in self.monomials)
        counts = [0] * (top + 1)
        for m in self.monomials:
            counts[degree(m)] += 1
        degrees = {degree(m) for m in self.maximal_elements()}
        return OSequence(tuple(counts), len(degrees) == 1)

    def is_pure(self) -> bool:
        return self.o_sequence().pure

    def to_json_dict(self) -> dict:
        os = self.o_sequence()
        maximal = sorted(self.maximal_elements(), reverse=True)
        return {
            "d": self.d,
            "maximal": [list(m) for m in maximal],
            "o_sequence": list(os.entries),
            "pure": os.pure,
        }

    def __repr__(self):
        return f"Multicomplex(d={self.d}, |M|={len(self.monomials)})"


def downward_closure(generators, d: int | None = None) -> Multicomplex:
    """Smallest divisor-closed set containing the generators."""
    gens = list(generators)
    if not gens:
        raise ValueError("need at least one generator")
    if d is None:
        d = len(gens[0])
    if any(len(g) != d for g in gens):
        raise DimensionMismatch("generators use differing numbers of indeterminates")
    seen: set[Monomial] = set()
    stack = list(gens)
    while stack:
        m = stack.pop()
        if m in seen:
            continue
        seen.add(m)
        if len(seen) > CENSUS_CAP:
            raise CapExceeded(f"closure larger than census cap {CENSUS_CAP}")
        stack.extend(dv for dv in divisors_one_step(m) if dv not in seen)
    return Multicomplex(d, seen, validate=False)


def o_sequence(mc: Multicomplex) -> OSequence:
    return mc.o_sequence()


def is_pure(mc: Multicomplex) -> bool:
    return mc.is_pure()


def full_multicomplex(r: int, d: int) -> Multicomplex:
    """All monomials of degree at most r over d indeterminates."""
    mono = [m for k in range(r + 1) for m in monomials_of_degree(k, d)]
    return Multicomplex(d, mono, validate=False)


def certify_paving_h(n: int, r: int, b: int, dom) -> Multicomplex:
    """Pure multicomplex witnessing the paving-shaped h-vector of (n, r, b).

    ``dom`` supplies a set of degree-r monomials over d = n - r indeterminates
    whose one-step divisors cover every monomial of degree r - 1 (either a
    plain iterable of exponent tuples or an object with a ``witness``
    attribute, such as a domination solver result).  The witness is the
    dominating set padded with the graded-lex-first unused degree-r monomials
    until exactly ``h_r = b - C(n-1, r-1)`` are present, sitting on top of all
    monomials of degree below r.
    """
    d = n - r
    if d < 1:
        raise DimensionMismatch("need n > r: a coloop-free paving matroid has n > r")
    h = paving_h_vector(n, r, b)
    hr = h[-1]
    deg_r = monomials_of_degree(r, d)
    if hr > len(deg_r):
        raise HrAboveMax(f"h_r={hr} exceeds the {len(deg_r)} monomials of degree {r}")
    witness = tuple(getattr(dom, "witness", dom))
    if any(len(m) != d or degree(m) != r for m in witness):
        raise DimensionMismatch("dominating set must consist of degree-r monomials")
    universe = set(monomials_of_degree(r - 1, d))
    covered = set()
    for m in witness:
        covered |= divisors_one_step(m)
    if not universe <= covered:
        raise ValueError("dom does not dominate every monomial of degree r-1")
    if hr < len(witness):
        optimal = bool(getattr(dom, "optimal", False))
        reason = "no pure witness exists via this construction" if optimal else \
            "the supplied dominating set is too large (a smaller one may exist)"
        raise HrBelowF(f"h_r={hr} < dominating-set size {len(witness)}: {reason}")
    top = list(dict.fromkeys(witness))
    for m in deg_r:
        if len(top) == hr:
            break
        if m not in witness:
            top.append(m)
    lower = [m for k in range(r) for m in monomials_of_degree(k, d)]
    mc = Multicomplex(d, lower + top, validate=False)
    os = mc.o_sequence()
    assert os.pure and os.entries == h
    return mc


def _census_of_generators(gens: tuple[Monomial, ...], d: int) -> tuple[int, ...]:
    return downward_closure(gens, d).o_sequence().entries


def certify_general_h(h, budget: int = 500_000) -> Multicomplex | None:
    """Search for a pure multicomplex with exactly the degree census ``h``.

    Returns a witness, or ``None`` once exhaustive search (over antichains of
    top-degree monomials in ``h_1`` indeterminates, with variable-permutation
    symmetry pruning) proves none exists.  Raises :class:`BudgetExceeded`
    after examining ``budget`` candidate generator sets without concluding.
    """
    h = tuple(h)
    if not h or h[0] != 1:
        return None
    if any(x < 0 for x in h):
        return None
    while len(h) > 1 and h[-1] == 0:
        h = h[:-1]
    top = len(h) - 1
    if top == 0:
        return Multicomplex(1, [(0,)])
    d = h[1]
    if d == 0:
        return None  # positive entries above degree 0 need at least one variable
    if any(h[k] == 0 for k in range(1, top)):
        return None  # divisor chains force positive middle censuses
    if any(h[k] > binom(d + k - 1, k) for k in range(1, top + 1)):
        return None
    deg_top = monomials_of_degree(top, d)
    # variable-permutation pruning is only worthwhile while d! stays small
    perms = list(permutations(range(d))) if d <= 7 else None
    examined = 0
    for gens in combinations(deg_top, h[top]):
        examined += 1
        if examined > budget:
            raise BudgetExceeded(f"examined {budget} generator sets without concluding")
        if perms is not None:
            canon = min(
                tuple(sorted((tuple(m[p[i]] for i in range(d)) for m in gens),
                             reverse=True))
                for p in perms
            )
            if canon != tuple(sorted(gens, reverse=True)):
                continue  # a permuted copy is examined elsewhere
        if _census_of_generators(gens, d) == h:
            return downward_closure(gens, d)
    return None
