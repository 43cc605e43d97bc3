"""Vectorised kernels over arrays of matrices mod n.

A batch of k matrices is an int64 array of shape (k, 4) holding the
row-major entries.  Group elements are stored as sorted arrays of packed
keys; membership is a binary search.
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

from .zmod import Mat2

INT = np.int64


class CapExceeded(RuntimeError):
    """Enumeration stopped because the element count passed the cap."""

    def __init__(self, count: int, cap: int):
        self.count = count
        self.cap = cap
        super().__init__(f"enumeration exceeded cap {cap} (reached {count} elements)")


def as_batch(mats: Iterable[Mat2] | np.ndarray) -> np.ndarray:
    if isinstance(mats, np.ndarray):
        return mats.reshape(-1, 4).astype(INT, copy=False)
    rows = [m.entries for m in mats]
    return np.array(rows, dtype=INT).reshape(-1, 4)


def to_mats(X: np.ndarray, n: int) -> list[Mat2]:
    return [Mat2(int(a), int(b), int(c), int(d), n) for a, b, c, d in X]


def pack(X: np.ndarray, n: int) -> np.ndarray:
    return ((X[:, 0] * n + X[:, 1]) * n + X[:, 2]) * n + X[:, 3]


def unpack(keys: np.ndarray, n: int) -> np.ndarray:
    keys = np.asarray(keys, dtype=INT)
    out = np.empty((keys.size, 4), dtype=INT)
    rest = keys.copy()
    for col in (3, 2, 1):
        rest, out[:, col] = np.divmod(rest, n)
    out[:, 0] = rest
    return out


def mul(X: np.ndarray, Y: np.ndarray, n: int) -> np.ndarray:
    """Row-wise products X[i] @ Y[i] (either side may be a single matrix)."""
    X = np.asarray(X, dtype=INT).reshape(-1, 4)
    Y = np.asarray(Y, dtype=INT).reshape(-1, 4)
    a1, b1, c1, d1 = X[:, 0], X[:, 1], X[:, 2], X[:, 3]
    a2, b2, c2, d2 = Y[:, 0], Y[:, 1], Y[:, 2], Y[:, 3]
    out = np.stack(
        [a1 * a2 + b1 * c2, a1 * b2 + b1 * d2, c1 * a2 + d1 * c2, c1 * b2 + d1 * d2],
        axis=1,
    )
    return out % n


def outer_mul(X: np.ndarray, Y: np.ndarray, n: int) -> np.ndarray:
    """All products X[i] @ Y[j], shape (len(X) * len(Y), 4), i-major."""
    X = np.asarray(X, dtype=INT).reshape(-1, 4)
    Y = np.asarray(Y, dtype=INT).reshape(-1, 4)
    return mul(np.repeat(X, len(Y), axis=0), np.tile(Y, (len(X), 1)), n)


def det(X: np.ndarray, n: int) -> np.ndarray:
    X = np.asarray(X, dtype=INT).reshape(-1, 4)
    return (X[:, 0] * X[:, 3] - X[:, 1] * X[:, 2]) % n


def unit_inverse_table(n: int) -> np.ndarray:
    table = np.zeros(n, dtype=INT)
    for u in range(n):
        try:
            table[u] = pow(u, -1, n) if n > 1 else 0
        except ValueError:
            table[u] = -1
    return table


def inv(X: np.ndarray, n: int) -> np.ndarray:
    X = np.asarray(X, dtype=INT).reshape(-1, 4)
    t = unit_inverse_table(n)[det(X, n)]
    if np.any(t < 0):
        raise ValueError("batch contains a non-invertible matrix")
    return np.stack([X[:, 3] * t, -X[:, 1] * t, -X[:, 2] * t, X[:, 0] * t], axis=1) % n


def member(sorted_keys: np.ndarray, keys: np.ndarray) -> np.ndarray:
    """Boolean mask: which of ``keys`` occur in the sorted array."""
    keys = np.asarray(keys, dtype=INT)
    if sorted_keys.size == 0:
        return np.zeros(keys.shape, dtype=bool)
    pos = np.searchsorted(sorted_keys, keys)
    pos = np.minimum(pos, sorted_keys.size - 1)
    return sorted_keys[pos] == keys


def merge(sorted_keys: np.ndarray, fresh: np.ndarray) -> np.ndarray:
    """Union of a sorted array with disjoint sorted ``fresh`` keys."""
    out = np.concatenate([sorted_keys, fresh])
    out.sort(kind="stable")
    return out


def identity_key(n: int) -> int:
    return Mat2.identity(n).key


def generate(
    gens: Sequence[Mat2] | np.ndarray,
    n: int,
    cap: int,
    start: np.ndarray | None = None,
    start_gens: Sequence[Mat2] | np.ndarray = (),
) -> np.ndarray:
    """Sorted packed keys of the subgroup generated by ``gens``.

    Generators are adjoined one at a time; when a generator is new, the
    breadth-first search restarts from the freshly reached coset only.
    ``start`` may hold the sorted keys of the subgroup generated by
    ``start_gens``; the result is then the group generated by both lists.
    """
    G = as_batch(gens) % n
    group = np.array([identity_key(n)], dtype=INT) if start is None else start
    # invariant: group is exactly the subgroup generated by ``used``
    used: list[np.ndarray] = list(as_batch(start_gens) % n) if len(start_gens) else []
    for g in G:
        if member(group, pack(g[None, :], n))[0]:
            continue
        used.append(g)
        frontier = np.unique(pack(mul(unpack(group, n), g, n), n))
        frontier = frontier[~member(group, frontier)]
        while frontier.size:
            group = merge(group, frontier)
            if group.size > cap:
                raise CapExceeded(int(group.size), cap)
            X = unpack(frontier, n)
            reached = np.unique(np.concatenate([pack(mul(X, h, n), n) for h in used]))
            frontier = reached[~member(group, reached)]
    return group
