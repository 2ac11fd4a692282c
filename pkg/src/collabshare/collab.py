"""Collaborating threshold schemes that share u crossover points.

The first dealer draws an ordinary Shamir curve and hands u of its points to
every later dealer. Each later dealer interpolates a curve through its own
secret at x = 0, those u points, and enough random filler points to reach its
threshold. A participant holding a crossover point then holds a valid share of
every scheme at once.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import (
    ConstructionError,
    DuplicateXError,
    ModulusMismatchError,
    ParameterError,
    SameThresholdError,
)
from .field import PrimeModulus, next_prime
from .poly import Point, Polynomial, evaluate, interpolate, top_coefficient
from .scheme import MAX_RETRIES, RandomSource, SchemeParams, Share, random_coefficients


@dataclass(frozen=True)
class PlanWarning:
    code: str
    message: str

    def __str__(self) -> str:
        return f"{self.code}: {self.message}"


@dataclass(frozen=True)
class CollaborationPlan:
    """Schemes in nondecreasing threshold order plus the shared crossover set.

    ``crossover_x`` defaults to 1..u. Schemes whose labels are not unique are
    relabelled ``scheme-1``, ``scheme-2``, ...
    """

    schemes: tuple[SchemeParams, ...]
    u: int
    modulus: PrimeModulus
    crossover_x: tuple[int, ...] | None = None

    def __post_init__(self) -> None:
        schemes = tuple(self.schemes)
        if len({s.label for s in schemes}) != len(schemes):
            schemes = tuple(replace(s, label=f"scheme-{i + 1}") for i, s in enumerate(schemes))
        object.__setattr__(self, "schemes", schemes)
        xs = tuple(range(1, self.u + 1)) if self.crossover_x is None else tuple(self.crossover_x)
        object.__setattr__(self, "crossover_x", xs)

    @classmethod
    def build(
        cls,
        specs: Iterable[tuple[int, int, int]],
        u: int,
        p: int | None = None,
        crossover_x: Sequence[int] | None = None,
    ) -> CollaborationPlan:
        """Plan from ``(t, n, secret)`` triples, choosing p if not given and
        sorting the schemes by threshold (stable, so equal thresholds keep
        their input order)."""
        specs = list(specs)
        modulus = (
            PrimeModulus(p)
            if p is not None
            else choose_modulus([s for _, _, s in specs], [n for _, n, _ in specs])
        )
        labelled = [
            SchemeParams(t, n, secret, modulus, label=f"scheme-{i + 1}")
            for i, (t, n, secret) in enumerate(specs)
        ]
        labelled.sort(key=lambda s: s.t)
        return cls(tuple(labelled), u, modulus, None if crossover_x is None else tuple(crossover_x))


@dataclass(frozen=True)
class CrossoverSet:
    points: tuple[Point, ...]
    source: str = "scheme-1"

    @property
    def xs(self) -> tuple[int, ...]:
        return tuple(pt.x for pt in self.points)


@dataclass(frozen=True)
class LedgerEntry:
    x: int
    y: int
    schemes: tuple[str, ...]

    @property
    def common(self) -> bool:
        return len(self.schemes) > 1


@dataclass(frozen=True)
class CollaborationResult:
    plan: CollaborationPlan
    polynomials: tuple[Polynomial, ...]
    crossover: CrossoverSet
    ledger: Mapping[str, LedgerEntry]
    retry_counts: tuple[int, ...]
    warnings: tuple[PlanWarning, ...] = field(default=())

    def shares_for(self, label: str) -> list[Share]:
        """Every share (common and local) usable in scheme ``label``."""
        return sorted(
            (Share(e.x, e.y, label) for e in self.ledger.values() if label in e.schemes),
            key=lambda s: s.x,
        )

    def polynomial_for(self, label: str) -> Polynomial:
        for params, f in zip(self.plan.schemes, self.polynomials):
            if params.label == label:
                return f
        raise KeyError(label)


def choose_modulus(secrets: Sequence[int], ns: Sequence[int]) -> PrimeModulus:
    """Smallest prime p with p > every secret and p >= every n + 1."""
    if not secrets and not ns:
        raise ParameterError("choose_modulus needs at least one secret or n")
    values = list(secrets) + list(ns)
    if any(v < 0 for v in values):
        raise ParameterError("secrets and participant counts must be non-negative")
    bound = max(v + 1 for v in values)
    return PrimeModulus(next_prime(bound))


def validate_plan(plan: CollaborationPlan) -> list[PlanWarning]:
    """Raise on hard violations; return advisory warnings."""
    schemes = plan.schemes
    p = plan.modulus.p
    u = plan.u
    if len(schemes) < 2:
        raise ParameterError(f"a collaboration needs at least 2 schemes, got {len(schemes)}")
    for s in schemes:
        if s.modulus.p != p:
            raise ModulusMismatchError(f"{s.label} uses p = {s.modulus.p}, plan uses p = {p}")
        if s.secret >= p or s.n + 1 > p:
            raise ParameterError(f"{s.label}: p = {p} must exceed the secret and n")
    ts = [s.t for s in schemes]
    if ts != sorted(ts):
        raise ParameterError(f"schemes must be ordered by nondecreasing threshold, got t = {ts}")
    if u < 0:
        raise ParameterError(f"u must be >= 0, got {u}")
    if u > ts[0]:
        raise ParameterError(f"u = {u} exceeds the smallest threshold t_1 = {ts[0]}")
    if u == ts[0] == ts[-1] and len({s.secret for s in schemes}) > 1:
        raise SameThresholdError(
            f"u = t_1 = t_s = {u} with differing secrets: the crossover points fix every "
            "curve, so separate traditional schemes are required"
        )
    for s in schemes[1:]:
        if u >= s.t:
            raise ParameterError(
                f"{s.label}: follow-up schemes need u < t, got u = {u}, t = {s.t}"
            )
    xs = plan.crossover_x
    if len(xs) != u:
        raise ParameterError(f"expected {u} crossover x values, got {len(xs)}")
    if len(set(xs)) != len(xs):
        raise DuplicateXError(f"duplicate crossover x values {sorted(xs)}")
    min_n = min(s.n for s in schemes)
    for x in xs:
        if not 1 <= x <= min_n:
            raise ParameterError(f"crossover x = {x} is outside 1..{min_n}")

    warnings = []
    if u > 0 and u == ts[0]:
        warnings.append(
            PlanWarning(
                "u-equals-t1",
                f"u = t_1 = {u}: the common participants alone can open {schemes[0].label}",
            )
        )
    return warnings


def construct_first(
    params: SchemeParams,
    crossover_x: Sequence[int],
    rng: RandomSource,
    coefficients: Sequence[int] | None = None,
) -> tuple[Polynomial, CrossoverSet]:
    """Draw the first dealer's curve and evaluate it at the crossover positions.

    ``coefficients`` pins a_1..a_{t-1}.
    """
    for x in crossover_x:
        if not 1 <= x <= params.n:
            raise ParameterError(f"crossover x = {x} is not a share position of {params.label}")
    if len(set(crossover_x)) != len(crossover_x):
        raise DuplicateXError(f"duplicate crossover x values {sorted(crossover_x)}")
    if coefficients is None:
        higher = random_coefficients(params.t, params.p, rng)
    else:
        higher = [int(c) % params.p for c in coefficients]
        if len(higher) != params.t - 1:
            raise ParameterError(f"expected {params.t - 1} pinned coefficients, got {len(higher)}")
        if higher and higher[-1] == 0:
            raise ParameterError("pinned top coefficient is zero")
    f = Polynomial((params.secret, *higher), params.modulus)
    points = tuple(Point(x, evaluate(f, x)) for x in crossover_x)
    return f, CrossoverSet(points, params.label)


def filler_positions(crossover_xs: Sequence[int], count: int) -> list[int]:
    """The ``count`` smallest positive x values not used by the crossover set."""
    taken = set(crossover_xs)
    out: list[int] = []
    x = 1
    while len(out) < count:
        if x not in taken:
            out.append(x)
        x += 1
    return out


def construct_followup(
    params: SchemeParams,
    crossover: CrossoverSet,
    prior_polys: Sequence[Polynomial],
    rng: RandomSource,
    filler: Sequence[int] | None = None,
) -> tuple[Polynomial, int]:
    """Interpolate a later dealer's curve through (0, secret), the crossover
    points and t - u - 1 random filler points.

    Filler y values are redrawn while the curve has a zero top coefficient or
    coincides with a prior curve. ``filler`` pins the first attempt's y values.
    Returns the accepted curve and the number of redraws.
    """
    u = len(crossover.points)
    t, p = params.t, params.p
    if u >= t:
        raise ParameterError(
            f"{params.label}: follow-up schemes need u < t, got u = {u}, t = {t}"
        )
    xs = crossover.xs
    if any(x % p == 0 for x in xs):
        raise ParameterError("crossover points may not sit at x = 0")
    if len(set(xs)) != len(xs):
        raise DuplicateXError(f"duplicate crossover x values {sorted(xs)}")
    fill_xs = filler_positions(xs, t - u - 1)
    if fill_xs and fill_xs[-1] >= p:
        raise ParameterError(f"not enough field elements below p = {p} for filler points")
    if filler is not None and len(filler) != len(fill_xs):
        raise ParameterError(f"expected {len(fill_xs)} filler values, got {len(filler)}")

    base = [Point(0, params.secret), *crossover.points]
    prior = {f.coeffs for f in prior_polys}
    ys = None if filler is None else [int(y) % p for y in filler]
    reason = ""
    for attempt in range(MAX_RETRIES + 1):
        if ys is None:
            ys = [rng.randrange(p) for _ in fill_xs]
        f = interpolate(base + [Point(x, y) for x, y in zip(fill_xs, ys)], params.modulus)
        if t > 1 and top_coefficient(f) == 0:
            reason = "top coefficient is zero"
        elif f.coeffs in prior:
            reason = "curve is identical to a prior dealer's curve"
        else:
            return f, attempt
        if not fill_xs:
            raise ConstructionError(
                f"{params.label}: {reason} and t = u + 1 leaves no filler points to "
                "redraw; choose a different crossover set"
            )
        ys = None
    raise ConstructionError(f"{params.label}: {reason} after {MAX_RETRIES} redraws")


def distribute(
    plan: CollaborationPlan, polynomials: Sequence[Polynomial], crossover: CrossoverSet
) -> dict[str, LedgerEntry]:
    """Assign shares to participants.

    Common participants get the crossover points, tagged with every scheme.
    Each scheme's remaining n - u participants get the smallest positive x
    values outside the crossover set. Elimination is by position, never by
    comparing y values.
    """
    p = plan.modulus.p
    labels = tuple(s.label for s in plan.schemes)
    for params, f in zip(plan.schemes, polynomials):
        for pt in crossover.points:
            if evaluate(f, pt.x) != pt.y:
                raise ParameterError(f"{params.label} does not pass through crossover {pt}")

    ledger: dict[str, LedgerEntry] = {}
    for pt in sorted(crossover.points, key=lambda q: q.x):
        ledger[f"common@{pt.x}"] = LedgerEntry(pt.x, pt.y, labels)
    for params, f in zip(plan.schemes, polynomials):
        local = filler_positions(crossover.xs, params.n - len(crossover.points))
        if local and local[-1] >= p:
            raise ParameterError(f"{params.label}: not enough distinct x values below p = {p}")
        for x in local:
            ledger[f"{params.label}@{x}"] = LedgerEntry(x, evaluate(f, x), (params.label,))
    return ledger


def build_collaboration(
    plan: CollaborationPlan,
    rng: RandomSource,
    first_coefficients: Sequence[int] | None = None,
    fillers: Mapping[str, Sequence[int]] | None = None,
) -> CollaborationResult:
    """Run every dealer in threshold order and assemble the share ledger.

    ``first_coefficients`` and ``fillers`` (keyed by scheme label) pin the
    values that are otherwise drawn from ``rng``.
    """
    warnings = validate_plan(plan)
    fillers = fillers or {}
    first = plan.schemes[0]
    f1, crossover = construct_first(first, plan.crossover_x, rng, first_coefficients)
    polys = [f1]
    retries = [0]
    for params in plan.schemes[1:]:
        f, n_retry = construct_followup(params, crossover, polys, rng, fillers.get(params.label))
        polys.append(f)
        retries.append(n_retry)
    ledger = distribute(plan, polys, crossover)
    return CollaborationResult(
        plan, tuple(polys), crossover, ledger, tuple(retries), tuple(warnings)
    )


def conflict_probability(p: int, t: int, u: int) -> Fraction:
    """Chance that t - u - 1 uniformly drawn filler values reproduce a given
    curve: p ** -(t - u - 1)."""
    if t <= u:
        raise ParameterError(f"conflict probability needs t > u, got t = {t}, u = {u}")
    return Fraction(1, p ** (t - u - 1))


def subsets_identical(mine: Iterable[Point | tuple[int, int]], theirs: Iterable[Point | tuple[int, int]]) -> bool:
    """Whether two dealers' exchanged point subsets coincide exactly.

    A dealer receiving another dealer's subset uses this to warn of a possible
    identical curve without seeing the whole curve.
    """
    a = {(int(x), int(y)) for x, y in mine}
    b = {(int(x), int(y)) for x, y in theirs}
    return bool(a) and a == b
