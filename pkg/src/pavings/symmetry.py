"""Relabeling symmetry kernels for bitmask-encoded set families.

All n! permutations of a small ground set act on subsets-as-bitmasks through
precomputed translation tables, so orbit questions (canonical forms,
automorphism counts, orderly-generation canonicity) reduce to vectorised
numpy passes.  Full tables are cached for n <= 8; n == 9 falls back to a
chunked sweep.
"""

from functools import lru_cache
from itertools import islice, permutations

import numpy as np

from .exceptions import CapExceeded

TABLE_CAP = 8
ISO_CAP = 9
_CHUNK = 5040


def apply_perm(mask: int, perm) -> int:
    """Image of a bitmask under an element relabeling."""
    out = 0
    while mask:
        b = mask & -mask
        out |= 1 << perm[b.bit_length() - 1]
        mask ^= b
    return out


def _table_for(perms: list[tuple[int, ...]], n: int) -> np.ndarray:
    """(len(perms), 2^n) table of mask images, built by one bit-matrix product."""
    size = 1 << n
    bits = ((np.arange(size, dtype=np.uint32)[:, None] >> np.arange(n)) & 1)
    weights = np.zeros((n, len(perms)), dtype=np.uint32)
    for j, p in enumerate(perms):
        for i in range(n):
            weights[i, j] = 1 << p[i]
    table = (bits.astype(np.uint32) @ weights).T  # (P, 2^n)
    return table.astype(np.uint8 if n <= 8 else np.uint16)


@lru_cache(maxsize=None)
def full_table(n: int) -> np.ndarray:
    if n > TABLE_CAP:
        raise CapExceeded(f"full permutation table limited to n <= {TABLE_CAP}")
    return _table_for(list(permutations(range(n))), max(n, 1))


def _perm_chunks(n: int):
    it = permutations(range(n))
    while True:
        chunk = list(islice(it, _CHUNK))
        if not chunk:
            return
        yield _table_for(chunk, n)


def _desc_keys(arr: np.ndarray) -> list[tuple[int, ...]]:
    """Rows sorted descending, packed into comparison keys."""
    rows = np.sort(arr, axis=1)[:, ::-1].astype(np.uint64)
    k = rows.shape[1]
    chunks = []
    for c in range(0, k, 4):
        part = rows[:, c:c + 4]
        key = np.zeros(rows.shape[0], dtype=np.uint64)
        for j in range(part.shape[1]):
            key = (key << np.uint64(16)) | part[:, j]
        key <<= np.uint64(16 * (4 - part.shape[1]))
        chunks.append(key)
    return chunks


def _pack_target(masks_desc: tuple[int, ...]) -> list[int]:
    out = []
    for c in range(0, len(masks_desc), 4):
        part = masks_desc[c:c + 4]
        key = 0
        for v in part:
            key = (key << 16) | v
        key <<= 16 * (4 - len(part))
        out.append(key)
    return out


def family_is_canonical(masks_desc: tuple[int, ...], n: int) -> bool:
    """Is this family the lexicographically greatest in its relabeling orbit?

    The family is encoded as its descending-sorted mask tuple; canonicity is
    lex-maximality of that tuple over all n! relabelings.
    """
    if not masks_desc:
        return True
    table = full_table(n)
    arr = table[:, list(masks_desc)]
    chunks = _desc_keys(arr)
    target = _pack_target(masks_desc)
    greater = np.zeros(arr.shape[0], dtype=bool)
    equal = np.ones(arr.shape[0], dtype=bool)
    for col, tgt in zip(chunks, target):
        t = np.uint64(tgt)
        greater |= equal & (col > t)
        equal &= col == t
    return not greater.any()


def family_aut_size(masks_desc: tuple[int, ...], n: int) -> int:
    """Number of relabelings fixing the family setwise."""
    table = full_table(n)
    if not masks_desc:
        return table.shape[0]
    arr = np.sort(table[:, list(masks_desc)], axis=1)[:, ::-1]
    target = np.array(masks_desc, dtype=arr.dtype)
    return int((arr == target).all(axis=1).sum())


def min_image(masks: tuple[int, ...], n: int) -> tuple[int, ...]:
    """Lexicographically least ascending-sorted image over all relabelings.

    This is the canonical-form key used for isomorphism of matroids: two
    mask families on the same ground set are related by a relabeling iff
    they share a key.  n <= 8 uses the cached table; n == 9 sweeps the
    permutation stream in chunks.
    """
    if n > ISO_CAP:
        raise CapExceeded(f"canonical forms limited to n <= {ISO_CAP}")
    if n <= 1 or not masks:
        return tuple(sorted(masks))
    cols = list(masks)
    best = None
    tables = [full_table(n)] if n <= TABLE_CAP else _perm_chunks(n)
    for table in tables:
        arr = np.sort(table[:, cols], axis=1)
        order = np.lexsort(arr.T[::-1])
        row = tuple(int(v) for v in arr[order[0]])
        if best is None or row < best:
            best = row
    return best
