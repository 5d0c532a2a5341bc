"""Dense bitmask tables for exhaustive sweeps over small relations.

A relation between carriers of sizes (m, n) is a mask in [0, 2^(m*n)):
bit ``i*n + j`` is set iff source element i maps to target element j.  Mask
order is therefore the canonical enumeration order of relation assignments.
Op tables are precomputed with numpy so that law sweeps reduce to integer
gathers and bitwise comparisons; sizes are capped at MAX_SIZE because the
tables grow as 4^(m*n).

The honest construction matters: every table is derived from the pointwise
definition of its operator (fork kernels in particular are computed from the
fork itself, not from any algebraic shortcut), and the test suite checks
each table against the plain relation algebra.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

import numpy as np

from .errors import ResourceLimitError
from .rel import Atom, Carrier, Rel

MAX_SIZE = 3


def check_size(n: int) -> None:
    if not 1 <= n <= MAX_SIZE:
        raise ResourceLimitError(
            f"bitmask sweeps support carrier sizes 1..{MAX_SIZE}, got {n}")


@lru_cache(maxsize=None)
def canonical_carrier(n: int) -> Carrier:
    return Carrier(f"U{n}", tuple(Atom(f"u{i}") for i in range(n)))


def mask_to_rel(mask: int, m: int, n: int) -> Rel:
    src = canonical_carrier(m)
    tgt = canonical_carrier(n)
    pairs = set()
    for i in range(m):
        for j in range(n):
            if mask >> (i * n + j) & 1:
                pairs.add((src.elements[i], tgt.elements[j]))
    return Rel(src, tgt, frozenset(pairs))


def rel_to_mask(r: Rel) -> int:
    n = len(r.target)
    src_index = {v: i for i, v in enumerate(r.source.elements)}
    tgt_index = {v: j for j, v in enumerate(r.target.elements)}
    mask = 0
    for a, b in r.pairs:
        mask |= 1 << (src_index[a] * n + tgt_index[b])
    return mask


@lru_cache(maxsize=None)
def mats(m: int, n: int) -> np.ndarray:
    """All 2^(m*n) relations as (count, m, n) 0/1 matrices, mask order."""
    check_size(m)
    check_size(n)
    count = 1 << (m * n)
    bits = (np.arange(count, dtype=np.int64)[:, None]
            >> np.arange(m * n, dtype=np.int64)) & 1
    return bits.reshape(count, m, n).astype(np.uint8)


def pack(mat: np.ndarray, m: int, n: int) -> np.ndarray:
    """Inverse of `mats` over the trailing two axes."""
    flat = mat.reshape(*mat.shape[:-2], m * n).astype(np.int64)
    weights = np.left_shift(1, np.arange(m * n, dtype=np.int64))
    return flat @ weights


@lru_cache(maxsize=None)
def compose_table(si: int, sm: int, so: int) -> np.ndarray:
    """T[r, s] = mask of r.s for r: mid->out, s: in->mid (apply s first)."""
    S = mats(si, sm)
    R = mats(sm, so)
    prod = np.einsum("sim,rmo->rsio", S, R)
    return pack(prod > 0, si, so).astype(np.int32)


@lru_cache(maxsize=None)
def converse_table(m: int, n: int) -> np.ndarray:
    M = mats(m, n)
    return pack(M.transpose(0, 2, 1), n, m).astype(np.int32)


@lru_cache(maxsize=None)
def kernel_table(m: int, n: int) -> np.ndarray:
    """ker(r) = converse(r) . r as a mask over m -> m."""
    conv = converse_table(m, n)
    ct = compose_table(m, n, m)
    idx = np.arange(1 << (m * n))
    return ct[conv, idx].astype(np.int32)


@lru_cache(maxsize=None)
def domain_table(m: int, n: int) -> np.ndarray:
    """Partial-identity mask (over m -> m) of each relation's domain."""
    M = mats(m, n)
    has = M.any(axis=2)
    weights = np.left_shift(
        1, (np.arange(m, dtype=np.int64) * m + np.arange(m, dtype=np.int64)))
    return (has.astype(np.int64) @ weights).astype(np.int32)


@lru_cache(maxsize=None)
def function_masks(m: int, n: int) -> np.ndarray:
    """Masks of all total functions m -> n, lex order of output tuples."""
    check_size(m)
    check_size(n)
    out = []
    for outs in itertools.product(range(n), repeat=m):
        mask = 0
        for i, j in enumerate(outs):
            mask |= 1 << (i * n + j)
        out.append(mask)
    return np.array(out, dtype=np.int32)


@lru_cache(maxsize=None)
def fork_kernel_table(sc: int, sa: int, sb: int) -> np.ndarray:
    """T[r, s] = mask of ker(fork(r, s)) over sc -> sc.

    Computed from the fork itself: F[(x,y), c] = r[c,x] and s[c,y], then the
    kernel contraction over the paired outputs.
    """
    R = mats(sc, sa)
    S = mats(sc, sb)
    F = np.einsum("rcx,scy->rscxy", R, S)
    K = np.einsum("rscxy,rsdxy->rscd", F, F)  # counts <= 9, uint8 is safe
    return pack(K > 0, sc, sc).astype(np.int32)


def all_masks(m: int, n: int) -> np.ndarray:
    check_size(m)
    check_size(n)
    return np.arange(1 << (m * n), dtype=np.int32)


def subset(x, y):
    """Elementwise mask test: every bit of x is set in y."""
    return (x & ~y) == 0
