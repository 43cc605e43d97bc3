"""Residues mod n and 2x2 matrices over Z/n.

Matrices are immutable value objects ordered lexicographically on their
entries (a, b, c, d) so they can serve as canonical keys.  A matrix
[[a, b], [c, d]] acts on column vectors from the left; products compose as
usual, so ``mat_mul(A, B)`` is "first B, then A" on vectors.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd, prod
from typing import Iterable, Sequence

from sympy import factorint


class NonInvertible(ValueError):
    """Raised when a matrix (or residue) has no inverse mod n."""

    def __init__(self, det: int, modulus: int):
        self.det = det
        self.modulus = modulus
        self.gcd = gcd(det, modulus)
        super().__init__(
            f"determinant {det} is not a unit mod {modulus} (gcd {self.gcd})"
        )


@lru_cache(maxsize=None)
def factor(n: int) -> tuple[tuple[int, int], ...]:
    """Prime factorisation of n as sorted (p, e) pairs; empty for n = 1."""
    if n < 1:
        raise ValueError(f"modulus must be positive, got {n}")
    return tuple(sorted(factorint(n).items()))


def prime_powers(n: int) -> list[int]:
    return [p**e for p, e in factor(n)]


def divisors(n: int) -> list[int]:
    out = [1]
    for p, e in factor(n):
        out = [d * p**k for d in out for k in range(e + 1)]
    return sorted(out)


def euler_phi(n: int) -> int:
    return prod(p ** (e - 1) * (p - 1) for p, e in factor(n))


def units(n: int) -> list[int]:
    if n == 1:
        return [0]
    return [u for u in range(n) if gcd(u, n) == 1]


@lru_cache(maxsize=None)
def unit_group_generators(n: int) -> tuple[int, ...]:
    """A small generating set of (Z/n)^*, found greedily."""
    if n <= 2:
        return (1 % n,)
    reached = {1}
    gens: list[int] = []
    for u in units(n):
        if u in reached:
            continue
        gens.append(u)
        frontier = list(reached)
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = x * g % n
                    if y not in reached:
                        reached.add(y)
                        nxt.append(y)
            frontier = nxt
        if len(reached) == euler_phi(n):
            break
    return tuple(gens)


@dataclass(frozen=True, order=True)
class Residue:
    value: int
    modulus: int

    def __post_init__(self):
        if self.modulus < 1:
            raise ValueError("modulus must be positive")
        object.__setattr__(self, "value", self.value % self.modulus)

    def _check(self, other: "Residue") -> None:
        if other.modulus != self.modulus:
            raise ValueError(f"moduli differ: {self.modulus} vs {other.modulus}")

    def __add__(self, other: "Residue") -> "Residue":
        self._check(other)
        return Residue(self.value + other.value, self.modulus)

    def __sub__(self, other: "Residue") -> "Residue":
        self._check(other)
        return Residue(self.value - other.value, self.modulus)

    def __mul__(self, other: "Residue") -> "Residue":
        self._check(other)
        return Residue(self.value * other.value, self.modulus)

    def __neg__(self) -> "Residue":
        return Residue(-self.value, self.modulus)

    def is_unit(self) -> bool:
        return gcd(self.value, self.modulus) == 1

    def inverse(self) -> "Residue":
        if not self.is_unit():
            raise NonInvertible(self.value, self.modulus)
        return Residue(pow(self.value, -1, self.modulus) if self.modulus > 1 else 0,
                       self.modulus)

    def __int__(self) -> int:
        return self.value


@dataclass(frozen=True, order=True)
class Mat2:
    """The matrix [[a, b], [c, d]] over Z/modulus, entries normalised."""

    a: int
    b: int
    c: int
    d: int
    modulus: int

    def __post_init__(self):
        n = self.modulus
        if n < 1:
            raise ValueError("modulus must be positive")
        for name in "abcd":
            object.__setattr__(self, name, int(getattr(self, name)) % n)

    @classmethod
    def of(cls, entries: Sequence[int], modulus: int) -> "Mat2":
        """Build from a row-major 4-sequence [a, b, c, d]."""
        if len(entries) != 4:
            raise ValueError(f"expected 4 entries, got {len(entries)}")
        a, b, c, d = entries
        return cls(a, b, c, d, modulus)

    @classmethod
    def identity(cls, modulus: int) -> "Mat2":
        return cls(1, 0, 0, 1, modulus)

    @classmethod
    def from_key(cls, key: int, modulus: int) -> "Mat2":
        key, d = divmod(key, modulus)
        key, c = divmod(key, modulus)
        a, b = divmod(key, modulus)
        return cls(a, b, c, d, modulus)

    @property
    def entries(self) -> tuple[int, int, int, int]:
        return (self.a, self.b, self.c, self.d)

    @property
    def key(self) -> int:
        """Packed integer ((a*n + b)*n + c)*n + d, unique per matrix."""
        n = self.modulus
        return ((self.a * n + self.b) * n + self.c) * n + self.d

    def residues(self) -> tuple[Residue, Residue, Residue, Residue]:
        return tuple(Residue(x, self.modulus) for x in self.entries)

    def to_list(self) -> list[int]:
        return list(self.entries)

    def __matmul__(self, other: "Mat2") -> "Mat2":
        return mat_mul(self, other)

    def __repr__(self) -> str:
        return f"[[{self.a},{self.b}],[{self.c},{self.d}]] mod {self.modulus}"


def mat_mul(A: Mat2, B: Mat2) -> Mat2:
    if A.modulus != B.modulus:
        raise ValueError(f"moduli differ: {A.modulus} vs {B.modulus}")
    return Mat2(
        A.a * B.a + A.b * B.c,
        A.a * B.b + A.b * B.d,
        A.c * B.a + A.d * B.c,
        A.c * B.b + A.d * B.d,
        A.modulus,
    )


def mat_det(A: Mat2) -> Residue:
    return Residue(A.a * A.d - A.b * A.c, A.modulus)


def is_invertible(A: Mat2) -> bool:
    return mat_det(A).is_unit()


def mat_inv(A: Mat2) -> Mat2:
    det = mat_det(A)
    if not det.is_unit():
        raise NonInvertible(det.value, A.modulus)
    t = det.inverse().value
    return Mat2(A.d * t, -A.b * t, -A.c * t, A.a * t, A.modulus)


def mat_pow(A: Mat2, k: int) -> Mat2:
    if k < 0:
        A, k = mat_inv(A), -k
    out = Mat2.identity(A.modulus)
    while k:
        if k & 1:
            out = mat_mul(out, A)
        A = mat_mul(A, A)
        k >>= 1
    return out


def element_order(A: Mat2) -> int:
    one = Mat2.identity(A.modulus)
    k, X = 1, A
    while X != one:
        X = mat_mul(X, A)
        k += 1
    return k


def reduce(A: Mat2, m: int) -> Mat2:
    """Image of A under Z/n -> Z/m; m must divide the modulus."""
    if m < 1 or A.modulus % m:
        raise ValueError(f"{m} does not divide modulus {A.modulus}")
    return Mat2(A.a, A.b, A.c, A.d, m)


def crt_split(A: Mat2) -> list[Mat2]:
    """Components of A modulo each maximal prime power of its modulus."""
    return [reduce(A, q) for q in prime_powers(A.modulus)]


def crt_join(parts: Iterable[Mat2]) -> Mat2:
    """Inverse of crt_split for matrices over pairwise coprime moduli."""
    parts = list(parts)
    if not parts:
        raise ValueError("nothing to join")
    n = prod(P.modulus for P in parts)
    entries = [0, 0, 0, 0]
    for P in parts:
        q = P.modulus
        rest = n // q
        if gcd(q, rest) != 1:
            raise ValueError("moduli are not pairwise coprime")
        lift = rest * pow(rest, -1, q) if q > 1 else 0
        for i, x in enumerate(P.entries):
            entries[i] += x * lift
    return Mat2.of(entries, n)


def embed_component(A: Mat2, n: int) -> Mat2:
    """Lift A (mod q, q | n, gcd(q, n/q) = 1) to mod n, identity away from q."""
    q = A.modulus
    rest = n // q
    if q * rest != n or gcd(q, rest) != 1:
        raise ValueError(f"{q} is not a unitary divisor of {n}")
    return crt_join([A, Mat2.identity(rest)]) if rest > 1 else A


def gl2_order(n: int) -> int:
    return prod(p ** (4 * (e - 1)) * (p * p - 1) * (p * p - p) for p, e in factor(n))


def sl2_order(n: int) -> int:
    return gl2_order(n) // euler_phi(n)


def gl2_generators(n: int) -> list[Mat2]:
    """The fixed generating set {[[1,1],[0,1]], [[1,0],[1,1]], diag(u, 1)}."""
    gens = sl2_generators(n)
    gens += [Mat2(u, 0, 0, 1, n) for u in unit_group_generators(n) if u % n != 1 % n]
    return gens


def sl2_generators(n: int) -> list[Mat2]:
    return [Mat2(1, 1, 0, 1, n), Mat2(1, 0, 1, 1, n)]


def minus_identity(n: int) -> Mat2:
    return Mat2(-1, 0, 0, -1, n)
