"""A standalone (t, n) Shamir scheme."""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Hashable, Protocol, Sequence

from . import _kernels
from .errors import (
    ConstructionError,
    DuplicateXError,
    EnumerationBoundError,
    InconsistentSharesError,
    InsufficientSharesError,
    ParameterError,
)
from .field import PrimeModulus
from .poly import Point, Polynomial, evaluate, interpolate, reconstruct_secret

MAX_RETRIES = 64
ENUMERATION_BOUND = 10**7


class RandomSource(Protocol):
    def randrange(self, stop: int) -> int: ...


def make_rng(seed: int | None = None) -> random.Random:
    """Seeded ``random.Random`` for reproducible runs, OS entropy otherwise."""
    if seed is None:
        return random.SystemRandom()
    return random.Random(seed)


@dataclass(frozen=True)
class SchemeParams:
    t: int
    n: int
    secret: int
    modulus: PrimeModulus
    label: str = "scheme"

    def __post_init__(self) -> None:
        p = self.modulus.p
        if self.t < 1:
            raise ParameterError(f"threshold t must be >= 1, got {self.t}")
        if self.n < self.t:
            raise ParameterError(f"n = {self.n} is smaller than t = {self.t}")
        if self.n > p - 1:
            raise ParameterError(f"n = {self.n} needs p >= n + 1, but p = {p}")
        if not 0 <= self.secret < p:
            raise ParameterError(f"secret {self.secret} is not in [0, {p})")

    @property
    def p(self) -> int:
        return self.modulus.p


@dataclass(frozen=True)
class Share:
    x: int
    y: int
    scheme_id: Hashable = None

    def __post_init__(self) -> None:
        if self.x == 0:
            raise ParameterError("share x-coordinate 0 is the secret position")

    @property
    def point(self) -> Point:
        return Point(self.x, self.y)


def random_coefficients(t: int, p: int, rng: RandomSource) -> list[int]:
    """``t - 1`` random coefficients a_1..a_{t-1} with a nonzero top one."""
    coeffs = [rng.randrange(p) for _ in range(t - 1)]
    if t < 2:
        return coeffs
    for _ in range(MAX_RETRIES):
        if coeffs[-1] != 0:
            return coeffs
        coeffs[-1] = rng.randrange(p)
    if coeffs[-1] == 0:
        raise ConstructionError(f"top coefficient stayed zero after {MAX_RETRIES} draws")
    return coeffs


def split(
    params: SchemeParams,
    rng: RandomSource,
    coefficients: Sequence[int] | None = None,
) -> tuple[Polynomial, list[Share]]:
    """Random degree-(t-1) polynomial hiding ``params.secret`` and its shares at
    x = 1..n. ``coefficients`` pins a_1..a_{t-1} instead of drawing them."""
    if coefficients is None:
        higher = random_coefficients(params.t, params.p, rng)
    else:
        higher = [int(c) % params.p for c in coefficients]
        if len(higher) != params.t - 1:
            raise ParameterError(f"expected {params.t - 1} pinned coefficients, got {len(higher)}")
        if higher and higher[-1] == 0:
            raise ParameterError("pinned top coefficient is zero; degree would drop below t - 1")
    f = Polynomial((params.secret, *higher), params.modulus)
    shares = [Share(x, evaluate(f, x), params.label) for x in range(1, params.n + 1)]
    return f, shares


def _check_shares(shares: Sequence[Share]) -> None:
    xs = [s.x for s in shares]
    if len(set(xs)) != len(xs):
        raise DuplicateXError(f"duplicate share x values in {sorted(xs)}")


def recover(t: int, modulus: PrimeModulus, shares: Sequence[Share]) -> int:
    """Recover f(0) from the t shares with the smallest x.

    Any additional shares must lie on the same curve.
    """
    if len(shares) < t:
        raise InsufficientSharesError(f"insufficient shares: need {t}, got {len(shares)}")
    _check_shares(shares)
    ordered = sorted(shares, key=lambda s: s.x)
    used, extra = ordered[:t], ordered[t:]
    secret = reconstruct_secret([s.point for s in used], modulus)
    if extra:
        f = interpolate([s.point for s in used], modulus)
        bad = [s.x for s in extra if evaluate(f, s.x) != s.y % modulus.p]
        if bad:
            raise InconsistentSharesError(f"shares at x = {bad} do not lie on the curve")
    return secret


def reconstruct(params: SchemeParams, shares: Sequence[Share]) -> int:
    return recover(params.t, params.modulus, shares)


def secrecy_oracle(
    params: SchemeParams, partial: Sequence[Share], backend: str | None = None
) -> list[int]:
    """Brute-force secrecy check.

    Returns, for each candidate secret s in Z_p, how many polynomials of degree
    <= t-1 agree with ``partial`` and have constant term s. Perfect secrecy
    holds iff all counts are equal. Enumerates p**t polynomials, so only
    p**t <= 10**7 is accepted.
    """
    if len(partial) > params.t - 1:
        raise ParameterError(
            f"secrecy oracle takes at most t - 1 = {params.t - 1} shares, got {len(partial)}"
        )
    _check_shares(partial)
    if params.p**params.t > ENUMERATION_BOUND:
        raise EnumerationBoundError(
            f"p**t = {params.p}**{params.t} exceeds the enumeration bound {ENUMERATION_BOUND}"
        )
    counts = _kernels.secrecy_counts(
        [s.x for s in partial], [s.y for s in partial], params.p, params.t, backend
    )
    return [int(c) for c in counts]
