"""Small matroids represented by their set of bases.

Ground-set elements are the integers ``0..n-1`` and every subset is stored
internally as a bitmask, with bit ``i`` standing for element ``i``.  Matroids
are immutable; every operation returns a fresh object, so values can be
shared freely between threads.

Caps: the exchange axiom is verified at construction for ``n <= 16``, basis
sets are stored up to ``n <= 24``, and the Tutte recursion accepts
``n <= 16``.  All the interesting instances in this library live at
``n <= 9``.
"""

import json
from functools import cached_property
from itertools import combinations

from .exceptions import (
    CapExceeded,
    ElementOutOfRange,
    EmptyBases,
    ExchangeAxiomViolated,
    FormatError,
    InvalidRank,
    UnequalBasisSizes,
)

AXIOM_CHECK_CAP = 16
STORAGE_CAP = 24
TUTTE_CAP = 16


def _mask_of(subset, n: int) -> int:
    m = 0
    for e in subset:
        if not 0 <= e < n:
            raise ElementOutOfRange(f"element {e} outside ground set 0..{n - 1}")
        m |= 1 << e
    return m


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        b = mask & -mask
        out.append(b.bit_length() - 1)
        mask ^= b
    return out


def _squeeze_bit(mask: int, e: int) -> int:
    """Drop bit position e, shifting higher bits down by one."""
    low = mask & ((1 << e) - 1)
    high = mask >> (e + 1)
    return low | (high << e)


def removal_relabeling(n: int, e: int) -> dict[int, int]:
    """Old-label to new-label map after removing element e from 0..n-1.

    Deletion and contraction re-index the surviving elements to 0..n-2
    preserving order; this map records where each old element went.
    """
    if not 0 <= e < n:
        raise ElementOutOfRange(f"element {e} outside ground set 0..{n - 1}")
    return {x: (x if x < e else x - 1) for x in range(n) if x != e}


def _check_exchange(masks: list[int], mask_set: set[int]):
    for b1 in masks:
        for b2 in masks:
            if b1 == b2:
                continue
            rem = b1 & ~b2
            while rem:
                ebit = rem & -rem
                rem ^= ebit
                base = b1 ^ ebit
                cand = b2 & ~b1
                while cand:
                    fbit = cand & -cand
                    cand ^= fbit
                    if (base | fbit) in mask_set:
                        break
                else:
                    raise ExchangeAxiomViolated(
                        f"bases {sorted(_bits(b1))} and {sorted(_bits(b2))} fail "
                        f"exchange at element {ebit.bit_length() - 1}"
                    )


class Matroid:
    """A matroid given by ground-set size ``n`` and its bases.

    Two matroids are equal iff they have the same ``n`` and the same basis
    set; isomorphism is a separate notion (see :mod:`pavings.enumeration`).
    """

    def __init__(self, n: int, bases, *, validate: bool = True):
        if n < 0:
            raise ElementOutOfRange("ground-set size must be non-negative")
        if n > STORAGE_CAP:
            raise CapExceeded(f"ground-set size {n} exceeds storage cap {STORAGE_CAP}")
        masks = sorted({b if isinstance(b, int) else _mask_of(b, n) for b in bases})
        if not masks:
            raise EmptyBases("a matroid needs at least one basis")
        if masks[-1] >> n:
            raise ElementOutOfRange("basis uses an element outside the ground set")
        r = masks[0].bit_count()
        if any(m.bit_count() != r for m in masks):
            raise UnequalBasisSizes("bases must share a common cardinality")
        if validate and n <= AXIOM_CHECK_CAP:
            _check_exchange(masks, set(masks))
        self.n = n
        self.r = r
        self.basis_masks = tuple(masks)
        self._mask_set = frozenset(masks)

    # --- basic queries -----------------------------------------------------

    @property
    def basis_count(self) -> int:
        return len(self.basis_masks)

    @cached_property
    def bases(self) -> tuple[frozenset[int], ...]:
        return tuple(frozenset(_bits(m)) for m in self.basis_masks)

    def _mask_arg(self, subset) -> int:
        return subset if isinstance(subset, int) else _mask_of(subset, self.n)

    def rank_of(self, subset) -> int:
        """Rank of a subset: largest intersection with a basis."""
        a = self._mask_arg(subset)
        return max((a & b).bit_count() for b in self.basis_masks)

    def is_independent(self, subset) -> bool:
        a = self._mask_arg(subset)
        return self.rank_of(a) == a.bit_count()

    def is_basis(self, subset) -> bool:
        return self._mask_arg(subset) in self._mask_set

    def _closure_mask(self, a: int) -> int:
        rk = self.rank_of(a)
        out = a
        for e in range(self.n):
            bit = 1 << e
            if not a & bit and self.rank_of(a | bit) == rk:
                out |= bit
        return out

    def closure(self, subset) -> frozenset[int]:
        """Closure of a subset: adjoin every element dependent on it."""
        return frozenset(_bits(self._closure_mask(self._mask_arg(subset))))

    @cached_property
    def loops(self) -> frozenset[int]:
        """Elements belonging to no basis."""
        u = 0
        for m in self.basis_masks:
            u |= m
        return frozenset(_bits(~u & ((1 << self.n) - 1)))

    @cached_property
    def coloops(self) -> frozenset[int]:
        """Elements belonging to every basis."""
        i = (1 << self.n) - 1
        for m in self.basis_masks:
            i &= m
        return frozenset(_bits(i))

    @cached_property
    def circuits(self) -> frozenset[frozenset[int]]:
        """Minimal dependent sets (all have size at most r+1)."""
        found: list[int] = []
        out = []
        for size in range(1, min(self.n, self.r + 1) + 1):
            for comb in combinations(range(self.n), size):
                a = _mask_of(comb, self.n)
                if any(a & c == c for c in found):
                    continue
                if self.rank_of(a) < size:
                    found.append(a)
                    out.append(frozenset(comb))
        return frozenset(out)

    @cached_property
    def hyperplanes(self) -> frozenset[frozenset[int]]:
        """Maximal non-spanning sets, i.e. flats of rank r-1."""
        if self.r == 0:
            return frozenset()
        seen = set()
        for comb in combinations(range(self.n), self.r - 1):
            a = _mask_of(comb, self.n)
            if self.rank_of(a) == self.r - 1:
                seen.add(self._closure_mask(a))
        return frozenset(frozenset(_bits(h)) for h in seen)

    # --- predicates -------------------------------------------------------

    def is_paving(self) -> bool:
        """True iff no circuit is smaller than the rank."""
        if self.r <= 1:
            return True
        return all(
            self.rank_of(_mask_of(c, self.n)) == self.r - 1
            for c in combinations(range(self.n), self.r - 1)
        )

    def _rank_circuit_masks(self) -> list[int]:
        # in a paving matroid the dependent r-subsets are exactly the circuits
        # of size r
        out = []
        for comb in combinations(range(self.n), self.r):
            m = _mask_of(comb, self.n)
            if m not in self._mask_set:
                out.append(m)
        return out

    def is_sparse_paving(self) -> bool:
        """Paving, with size-r circuits pairwise differing in more than 2 elements."""
        if not self.is_paving():
            return False
        cs = self._rank_circuit_masks()
        for i, a in enumerate(cs):
            for b in cs[i + 1:]:
                if (a ^ b).bit_count() <= 2:
                    return False
        return True

    # --- derived matroids ---------------------------------------------------

    def dual(self) -> "Matroid":
        """Complement each basis."""
        full = (1 << self.n) - 1
        return Matroid(self.n, [full ^ m for m in self.basis_masks], validate=False)

    def delete(self, e: int) -> "Matroid":
        """Delete element e (falls through to contraction when e is a coloop)."""
        if not 0 <= e < self.n:
            raise ElementOutOfRange(f"element {e} outside ground set 0..{self.n - 1}")
        bit = 1 << e
        if e in self.coloops:
            return self.contract(e)
        keep = [_squeeze_bit(m, e) for m in self.basis_masks if not m & bit]
        return Matroid(self.n - 1, keep, validate=False)

    def contract(self, e: int) -> "Matroid":
        """Contract element e (falls through to deletion when e is a loop)."""
        if not 0 <= e < self.n:
            raise ElementOutOfRange(f"element {e} outside ground set 0..{self.n - 1}")
        bit = 1 << e
        if e in self.loops:
            keep = [_squeeze_bit(m, e) for m in self.basis_masks]
            return Matroid(self.n - 1, keep, validate=False)
        keep = [_squeeze_bit(m ^ bit, e) for m in self.basis_masks if m & bit]
        return Matroid(self.n - 1, keep, validate=False)

    def tutte(self) -> "TuttePolynomial":
        """Tutte polynomial by deletion-contraction."""
        if self.n > TUTTE_CAP:
            raise CapExceeded(f"tutte requires n <= {TUTTE_CAP}")
        memo: dict[tuple[int, tuple[int, ...]], dict] = {}
        coeffs = _tutte_rec(self.n, self.basis_masks, memo)
        poly = TuttePolynomial(coeffs)
        assert poly(1, 1) == self.basis_count
        assert poly(2, 2) == 1 << self.n
        return poly

    # --- dunder ----------------------------------------------------------

    def __eq__(self, other):
        return (
            isinstance(other, Matroid)
            and self.n == other.n
            and self.basis_masks == other.basis_masks
        )

    def __hash__(self):
        return hash((self.n, self.basis_masks))

    def __repr__(self):
        return f"Matroid(n={self.n}, r={self.r}, bases={self.basis_count})"


# --- constructors ----------------------------------------------------------

def from_bases(n: int, bases) -> Matroid:
    """Build and validate a matroid from explicit bases."""
    return Matroid(n, bases, validate=True)


def uniform(r: int, n: int) -> Matroid:
    """The uniform matroid U_{r,n}: every r-subset is a basis."""
    if not 0 <= r <= n:
        raise InvalidRank(f"need 0 <= r <= n, got r={r}, n={n}")
    if n > STORAGE_CAP:
        raise CapExceeded(f"ground-set size {n} exceeds storage cap {STORAGE_CAP}")
    return Matroid(n, [_mask_of(c, max(n, 1)) for c in combinations(range(n), r)],
                   validate=False)


def direct_sum(m1: Matroid, m2: Matroid) -> Matroid:
    """Disjoint union; bases are unions of a basis from each part."""
    shift = m1.n
    bases = [a | (b << shift) for a in m1.basis_masks for b in m2.basis_masks]
    return Matroid(m1.n + m2.n, bases, validate=False)


def two_thickening(m: Matroid) -> Matroid:
    """Replace each element i by two parallel copies 2i and 2i+1."""
    out = []
    for mask in m.basis_masks:
        choices = [0]
        for e in _bits(mask):
            choices = [c | (1 << (2 * e + sel)) for c in choices for sel in (0, 1)]
        out.extend(choices)
    return Matroid(2 * m.n, out, validate=False)


def two_stretching(m: Matroid) -> Matroid:
    """Replace each element by two copies in series: dual of the thickened dual."""
    return two_thickening(m.dual()).dual()


def free_extension(m: Matroid) -> Matroid:
    """Add one element in general position (index n)."""
    g = 1 << m.n
    bases = list(m.basis_masks)
    if m.r >= 1:
        seen = set()
        for mask in m.basis_masks:
            for e in _bits(mask):
                seen.add(mask ^ (1 << e))
        bases.extend(i | g for i in seen)
    return Matroid(m.n + 1, bases, validate=False)


def rank2_from_parallel_classes(sizes) -> Matroid:
    """Loopless rank-2 matroid whose parallel classes have the given sizes."""
    sizes = list(sizes)
    if len(sizes) < 2 or any(s < 1 for s in sizes):
        raise InvalidRank("need at least two parallel classes, all of size >= 1")
    classes = []
    start = 0
    for s in sizes:
        classes.append(range(start, start + s))
        start += s
    bases = []
    for i, ci in enumerate(classes):
        for cj in classes[i + 1:]:
            for a in ci:
                for b in cj:
                    bases.append((1 << a) | (1 << b))
    return Matroid(start, bases, validate=False)


# --- minors ----------------------------------------------------------------

def _minor_masks(m: Matroid, keep: tuple[int, ...], contract_mask: int):
    """Basis masks, relabeled onto 0..len(keep)-1, of (M / C) restricted to keep."""
    bc = 0
    rk = 0
    for e in _bits(contract_mask):
        bit = 1 << e
        if m.rank_of(bc | bit) > rk:
            bc |= bit
            rk += 1
    best_rank = -1
    buckets: dict[int, list[int]] = {}
    for size in range(m.r - rk, -1, -1):
        for comb in combinations(keep, size):
            a = _mask_of(comb, m.n)
            if m.rank_of(a | bc) == size + rk:
                rel = 0
                for pos, e in enumerate(keep):
                    if a >> e & 1:
                        rel |= 1 << pos
                buckets.setdefault(size, []).append(rel)
        if size in buckets:
            best_rank = size
            break
    return buckets.get(best_rank, [0])


def _iso_brute(n: int, masks1: frozenset[int], masks2: frozenset[int]) -> bool:
    from itertools import permutations

    for perm in permutations(range(n)):
        mapped = frozenset(
            sum(1 << perm[e] for e in _bits(m)) for m in masks1
        )
        if mapped == masks2:
            return True
    return False


def has_minor(m: Matroid, pattern: Matroid) -> bool:
    """True iff some deletion/contraction sequence yields a matroid
    isomorphic to ``pattern``.  Exhaustive; meant for small patterns."""
    k = pattern.n
    if k > m.n or pattern.r > m.r:
        return False
    target = frozenset(pattern.basis_masks)
    tested: set[frozenset[int]] = set()
    rest_count = m.n - k
    for keep in combinations(range(m.n), k):
        keep_mask = _mask_of(keep, m.n)
        others = [e for e in range(m.n) if not keep_mask >> e & 1]
        for pick in range(1 << rest_count):
            cmask = 0
            for i in range(rest_count):
                if pick >> i & 1:
                    cmask |= 1 << others[i]
            masks = frozenset(_minor_masks(m, keep, cmask))
            if masks in tested:
                continue
            tested.add(masks)
            if len(masks) != pattern.basis_count:
                continue
            if next(iter(masks)).bit_count() != pattern.r:
                continue
            if _iso_brute(k, masks, target):
                return True
    return False


# --- Tutte polynomial -------------------------------------------------------

class TuttePolynomial:
    """Bivariate polynomial with a sparse ``{(i, j): coefficient}`` table."""

    def __init__(self, coefficients: dict[tuple[int, int], int]):
        self.coefficients = {k: v for k, v in coefficients.items() if v != 0}

    def __call__(self, x, y):
        return sum(c * x**i * y**j for (i, j), c in self.coefficients.items())

    def terms(self) -> list[tuple[int, int, int]]:
        """Sorted (i, j, coefficient) triples."""
        return [(i, j, self.coefficients[i, j]) for i, j in sorted(self.coefficients)]

    def to_json_dict(self) -> dict:
        return {"terms": [{"i": i, "j": j, "c": c} for i, j, c in self.terms()]}

    def __eq__(self, other):
        return isinstance(other, TuttePolynomial) and self.coefficients == other.coefficients

    def __hash__(self):
        return hash(tuple(self.terms()))

    def __repr__(self):
        parts = []
        for i, j, c in self.terms():
            mono = "".join(s for s in (f"x^{i}" if i else "", f"y^{j}" if j else "") if s)
            parts.append(f"{c}{'*' + mono if mono else ''}")
        return " + ".join(parts) if parts else "0"


def _poly_addmul(dst: dict, src: dict, di: int, dj: int):
    for (i, j), c in src.items():
        key = (i + di, j + dj)
        dst[key] = dst.get(key, 0) + c


def _tutte_rec(n: int, masks: tuple[int, ...], memo: dict) -> dict:
    if n == 0:
        return {(0, 0): 1}
    key = (n, masks)
    if key in memo:
        return memo[key]
    bit = 1 << (n - 1)
    with_e = tuple(m ^ bit for m in masks if m & bit)
    without = tuple(m for m in masks if not m & bit)
    out: dict[tuple[int, int], int] = {}
    if not with_e:
        _poly_addmul(out, _tutte_rec(n - 1, without, memo), 0, 1)     # loop
    elif not without:
        _poly_addmul(out, _tutte_rec(n - 1, with_e, memo), 1, 0)      # coloop
    else:
        _poly_addmul(out, _tutte_rec(n - 1, without, memo), 0, 0)     # delete
        _poly_addmul(out, _tutte_rec(n - 1, with_e, memo), 0, 0)      # contract
    memo[key] = out
    return out


def tutte(m: Matroid) -> TuttePolynomial:
    return m.tutte()


# --- JSON interface ----------------------------------------------------------

def to_json_dict(m: Matroid) -> dict:
    """Serialize as {"n": ..., "bases": [[...], ...]} with sorted element lists."""
    lists = sorted(sorted(_bits(mask)) for mask in m.basis_masks)
    return {"n": m.n, "bases": lists}


def from_json_dict(payload) -> Matroid:
    if not isinstance(payload, dict) or set(payload) != {"n", "bases"}:
        raise FormatError('matroid JSON must be {"n": int, "bases": [[int, ...], ...]}')
    n = payload["n"]
    bases = payload["bases"]
    if not isinstance(n, int) or not isinstance(bases, list):
        raise FormatError("matroid JSON fields have wrong types")
    for b in bases:
        if not isinstance(b, list) or any(not isinstance(e, int) for e in b):
            raise FormatError("each basis must be a list of integers")
        if b != sorted(set(b)):
            raise FormatError("basis element lists must be strictly increasing")
    return from_bases(n, bases)


def save_matroid(m: Matroid, path):
    with open(path, "w") as fh:
        json.dump(to_json_dict(m), fh, indent=1)
        fh.write("\n")


def load_matroid(path) -> Matroid:
    with open(path) as fh:
        try:
            payload = json.load(fh)
        except json.JSONDecodeError as exc:
            raise FormatError(f"not valid JSON: {exc}") from exc
    return from_json_dict(payload)
