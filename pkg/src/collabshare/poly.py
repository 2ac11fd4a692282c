"""Polynomials over Z_p: Horner evaluation, Lagrange interpolation and
reconstruction of the constant term."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import DuplicateXError, ModulusMismatchError, ParameterError
from .field import FieldElement, PrimeModulus, inverse_mod


def _residue(v: int | FieldElement, modulus: PrimeModulus) -> int:
    if isinstance(v, FieldElement):
        if v.modulus.p != modulus.p:
            raise ModulusMismatchError(f"element mod {v.modulus.p} used with mod {modulus.p}")
        return v.value
    return v % modulus.p


@dataclass(frozen=True)
class Point:
    x: int
    y: int

    def __iter__(self):
        yield self.x
        yield self.y


@dataclass(frozen=True)
class Polynomial:
    """Coefficients constant-term first, reduced mod p.

    The number of slots is fixed at construction and never trimmed, so a zero
    top coefficient stays visible.
    """

    coeffs: tuple[int, ...]
    modulus: PrimeModulus

    def __post_init__(self) -> None:
        if not self.coeffs:
            raise ParameterError("a polynomial needs at least one coefficient slot")
        p = self.modulus.p
        object.__setattr__(self, "coeffs", tuple(int(c) % p for c in self.coeffs))

    @classmethod
    def of(cls, coeffs: Iterable[int], p: int | PrimeModulus) -> Polynomial:
        modulus = p if isinstance(p, PrimeModulus) else PrimeModulus(p)
        return cls(tuple(coeffs), modulus)

    @property
    def secret(self) -> int:
        return self.coeffs[0]

    def __call__(self, x: int | FieldElement) -> int:
        return evaluate(self, x)

    def __str__(self) -> str:
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            terms.append(str(c) if i == 0 else f"{c}x" if i == 1 else f"{c}x^{i}")
        return " + ".join(terms) + f" (mod {self.modulus.p})"


def evaluate(f: Polynomial, x: int | FieldElement) -> int:
    p = f.modulus.p
    xv = _residue(x, f.modulus)
    acc = 0
    for c in reversed(f.coeffs):
        acc = (acc * xv + c) % p
    return acc


def degree(f: Polynomial) -> int:
    """Index of the highest coefficient slot (not trimmed)."""
    return len(f.coeffs) - 1


def top_coefficient(f: Polynomial) -> int:
    return f.coeffs[-1]


def _normalize_points(
    points: Sequence[Point | tuple[int, int]], modulus: PrimeModulus
) -> list[tuple[int, int]]:
    if not points:
        raise ParameterError("cannot interpolate an empty point list")
    if len(points) > modulus.p:
        raise ParameterError(f"{len(points)} points exceed the {modulus.p} field elements")
    pts = [(_residue(x, modulus), _residue(y, modulus)) for x, y in points]
    xs = [x for x, _ in pts]
    if len(set(xs)) != len(xs):
        raise DuplicateXError(f"duplicate x values in {sorted(xs)}")
    return pts


def interpolate(points: Sequence[Point | tuple[int, int]], modulus: PrimeModulus) -> Polynomial:
    """Unique polynomial of degree <= len(points) - 1 through ``points``.

    Returns exactly ``len(points)`` coefficient slots; the top one may be zero.
    """
    pts = _normalize_points(points, modulus)
    p = modulus.p
    k = len(pts)

    # master(x) = prod (x - x_i), constant term first
    master = [1]
    for xi, _ in pts:
        nxt = [0] * (len(master) + 1)
        for i, c in enumerate(master):
            nxt[i] = (nxt[i] - xi * c) % p
            nxt[i + 1] = (nxt[i + 1] + c) % p
        master = nxt

    result = [0] * k
    for j, (xj, yj) in enumerate(pts):
        # basis numerator master(x) / (x - x_j) by synthetic division
        basis = [0] * k
        carry = 0
        for i in range(k, 0, -1):
            carry = (master[i] + carry * xj) % p
            basis[i - 1] = carry
        denom = 1
        for l, (xl, _) in enumerate(pts):
            if l != j:
                denom = denom * (xj - xl) % p
        scale = yj * inverse_mod(denom, p) % p
        for i in range(k):
            result[i] = (result[i] + scale * basis[i]) % p
    return Polynomial(tuple(result), modulus)


def reconstruct_secret_product_form(
    points: Sequence[Point | tuple[int, int]], modulus: PrimeModulus
) -> int:
    """f(0) = (-1)^(t-1) * sum_j y_j * prod_{l != j} x_l / (x_j - x_l)."""
    pts = _normalize_points(points, modulus)
    if any(x == 0 for x, _ in pts):
        raise ParameterError("x = 0 is the secret position and cannot be a share")
    p = modulus.p
    t = len(pts)
    total = 0
    for j, (xj, yj) in enumerate(pts):
        num, den = 1, 1
        for l, (xl, _) in enumerate(pts):
            if l != j:
                num = num * xl % p
                den = den * (xj - xl) % p
        total = (total + yj * num * inverse_mod(den, p)) % p
    if (t - 1) % 2:
        total = (-total) % p
    return total


def reconstruct_secret(points: Sequence[Point | tuple[int, int]], modulus: PrimeModulus) -> int:
    secret = reconstruct_secret_product_form(points, modulus)
    assert secret == evaluate(interpolate(points, modulus), 0), "reconstruction paths disagree"
    return secret
