"""Exact arithmetic in the prime field Z_p.

Values are Python ints, so intermediate products never wrap regardless of
the size of p.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import ModulusMismatchError, ParameterError

# Deterministic Miller-Rabin: these witnesses are exact for n < 3.3e24.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
MAX_DETERMINISTIC = 3_317_044_064_679_887_385_961_981


@lru_cache(maxsize=1024)
def is_prime(n: int) -> bool:
    """Return True iff ``n`` is prime.

    Deterministic for every ``n`` below ``MAX_DETERMINISTIC`` (about 2**81);
    larger inputs raise rather than fall back to a probabilistic answer.
    """
    if n < 0:
        raise ParameterError(f"is_prime expects n >= 0, got {n}")
    if n < 2:
        return False
    for q in _MR_WITNESSES:
        if n % q == 0:
            return n == q
    if n >= MAX_DETERMINISTIC:
        raise ParameterError(
            f"{n} is beyond the deterministic primality range (< {MAX_DETERMINISTIC})"
        )
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def next_prime(n: int) -> int:
    """Smallest prime >= n."""
    candidate = max(n, 2)
    while not is_prime(candidate):
        candidate += 1
    return candidate


@dataclass(frozen=True)
class PrimeModulus:
    p: int

    def __post_init__(self) -> None:
        if not isinstance(self.p, int) or isinstance(self.p, bool):
            raise ParameterError(f"modulus must be an int, got {self.p!r}")
        if not is_prime(self.p):
            raise ParameterError(f"modulus {self.p} is not prime")

    def __int__(self) -> int:
        return self.p

    def element(self, value: int) -> FieldElement:
        """Reduce ``value`` into the field."""
        return FieldElement(value % self.p, self)


@dataclass(frozen=True)
class FieldElement:
    value: int
    modulus: PrimeModulus

    def __post_init__(self) -> None:
        if not 0 <= self.value < self.modulus.p:
            raise ParameterError(f"{self.value} is not a residue mod {self.modulus.p}")

    def __int__(self) -> int:
        return self.value

    def __add__(self, other: FieldElement) -> FieldElement:
        return add(self, other)

    def __sub__(self, other: FieldElement) -> FieldElement:
        return add(self, neg(other))

    def __mul__(self, other: FieldElement) -> FieldElement:
        return mul(self, other)

    def __truediv__(self, other: FieldElement) -> FieldElement:
        return mul(self, inv(other))

    def __neg__(self) -> FieldElement:
        return neg(self)

    def __repr__(self) -> str:
        return f"FieldElement({self.value} mod {self.modulus.p})"


def _check_same(a: FieldElement, b: FieldElement) -> int:
    if a.modulus.p != b.modulus.p:
        raise ModulusMismatchError(
            f"cannot combine elements mod {a.modulus.p} and mod {b.modulus.p}"
        )
    return a.modulus.p


def add(a: FieldElement, b: FieldElement) -> FieldElement:
    p = _check_same(a, b)
    return FieldElement((a.value + b.value) % p, a.modulus)


def mul(a: FieldElement, b: FieldElement) -> FieldElement:
    p = _check_same(a, b)
    return FieldElement(a.value * b.value % p, a.modulus)


def neg(a: FieldElement) -> FieldElement:
    return FieldElement((a.modulus.p - a.value) % a.modulus.p, a.modulus)


def inv(a: FieldElement) -> FieldElement:
    return FieldElement(inverse_mod(a.value, a.modulus.p), a.modulus)


def inverse_mod(a: int, p: int) -> int:
    """Inverse of ``a`` modulo ``p`` by the extended Euclidean algorithm."""
    a %= p
    if a == 0:
        raise ZeroDivisionError(f"0 has no inverse mod {p}")
    old_r, r = a, p
    old_s, s = 1, 0
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
    if old_r != 1:
        raise ZeroDivisionError(f"{a} is not invertible mod {p}")
    return old_s % p
