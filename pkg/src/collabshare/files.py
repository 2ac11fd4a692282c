"""JSON documents exchanged between dealers and participants.

Every integer is written as a decimal string so that large moduli survive
any JSON reader. Each document carries ``version`` and ``modulus``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any

from .collab import (
    CollaborationPlan,
    CollaborationResult,
    CrossoverSet,
    LedgerEntry,
    filler_positions,
)
from .errors import ParameterError
from .field import PrimeModulus
from .poly import Point, Polynomial, evaluate
from .scheme import SchemeParams

VERSION = "1"


class FileFormatError(ParameterError):
    pass


def _int(doc: dict, key: str) -> int:
    try:
        raw = doc[key]
    except (KeyError, TypeError):
        raise FileFormatError(f"missing field {key!r}") from None
    return _parse_int(raw, key)


def _parse_int(raw: Any, what: str) -> int:
    if not isinstance(raw, str) or not raw.lstrip("-").isdigit():
        raise FileFormatError(f"{what}: expected a decimal string, got {raw!r}")
    return int(raw)


def _int_list(doc: dict, key: str) -> list[int]:
    raw = doc.get(key)
    if not isinstance(raw, list):
        raise FileFormatError(f"{key!r} must be a list")
    return [_parse_int(v, key) for v in raw]


def _header(doc: Any, kind: str) -> PrimeModulus:
    if not isinstance(doc, dict):
        raise FileFormatError(f"{kind}: top level must be an object")
    if doc.get("version") != VERSION:
        raise FileFormatError(f"{kind}: unsupported version {doc.get('version')!r}")
    return PrimeModulus(_int(doc, "modulus"))


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2) + "\n"


def loads(text: str, kind: str = "document") -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FileFormatError(f"{kind}: not valid JSON ({exc})") from None


@dataclass(frozen=True)
class ShareRecord:
    x: int
    y: int
    common: bool


@dataclass(frozen=True)
class SchemeFile:
    modulus: int
    t: int
    n: int
    secret: int
    coeffs: tuple[int, ...]
    crossover_x: tuple[int, ...]
    shares: tuple[ShareRecord, ...]

    @property
    def polynomial(self) -> Polynomial:
        return Polynomial.of(self.coeffs, self.modulus)

    @property
    def params(self) -> SchemeParams:
        return SchemeParams(self.t, self.n, self.secret, PrimeModulus(self.modulus))

    def to_dict(self) -> dict:
        return {
            "version": VERSION,
            "modulus": str(self.modulus),
            "t": str(self.t),
            "n": str(self.n),
            "secret": str(self.secret),
            "coeffs": [str(c) for c in self.coeffs],
            "crossover_x": [str(x) for x in self.crossover_x],
            "shares": [
                {"x": str(s.x), "y": str(s.y), "common": s.common} for s in self.shares
            ],
        }

    @classmethod
    def from_dict(cls, doc: Any) -> SchemeFile:
        modulus = _header(doc, "scheme file")
        raw_shares = doc.get("shares")
        if not isinstance(raw_shares, list):
            raise FileFormatError("'shares' must be a list")
        shares = []
        for s in raw_shares:
            if not isinstance(s, dict) or not isinstance(s.get("common"), bool):
                raise FileFormatError(f"malformed share entry {s!r}")
            shares.append(ShareRecord(_int(s, "x"), _int(s, "y"), s["common"]))
        out = cls(
            modulus.p,
            _int(doc, "t"),
            _int(doc, "n"),
            _int(doc, "secret"),
            tuple(_int_list(doc, "coeffs")),
            tuple(_int_list(doc, "crossover_x")),
            tuple(shares),
        )
        if len(out.coeffs) != out.t or out.coeffs[0] != out.secret:
            raise FileFormatError("coefficients do not match t and secret")
        return out

    @classmethod
    def from_parts(
        cls, params: SchemeParams, f: Polynomial, crossover: CrossoverSet
    ) -> SchemeFile:
        """Shares at the crossover positions (common) plus the n - u smallest
        other positive x values."""
        common = set(crossover.xs)
        local = filler_positions(crossover.xs, params.n - len(common))
        xs = sorted(common | set(local))
        shares = tuple(ShareRecord(x, evaluate(f, x), x in common) for x in xs)
        return cls(
            params.p, params.t, params.n, params.secret, f.coeffs, crossover.xs, shares
        )


@dataclass(frozen=True)
class CrossoverFile:
    modulus: int
    points: tuple[Point, ...]
    source: str

    @property
    def crossover(self) -> CrossoverSet:
        return CrossoverSet(self.points, self.source)

    def to_dict(self) -> dict:
        return {
            "version": VERSION,
            "modulus": str(self.modulus),
            "points": [{"x": str(pt.x), "y": str(pt.y)} for pt in self.points],
            "source": self.source,
        }

    @classmethod
    def from_dict(cls, doc: Any) -> CrossoverFile:
        modulus = _header(doc, "crossover file")
        raw = doc.get("points")
        if not isinstance(raw, list):
            raise FileFormatError("'points' must be a list")
        points = tuple(Point(_int(pt, "x"), _int(pt, "y")) for pt in raw)
        source = doc.get("source")
        if not isinstance(source, str):
            raise FileFormatError("'source' must be a string")
        return cls(modulus.p, points, source)


@dataclass(frozen=True)
class PlanFile:
    """(t, n, secret) per scheme plus u and the crossover positions."""

    modulus: int
    u: int
    crossover_x: tuple[int, ...]
    schemes: tuple[tuple[str, int, int, int], ...]

    def to_plan(self) -> CollaborationPlan:
        m = PrimeModulus(self.modulus)
        params = tuple(SchemeParams(t, n, s, m, label) for label, t, n, s in self.schemes)
        return CollaborationPlan(params, self.u, m, self.crossover_x)

    @classmethod
    def from_plan(cls, plan: CollaborationPlan) -> PlanFile:
        return cls(
            plan.modulus.p,
            plan.u,
            tuple(plan.crossover_x),
            tuple((s.label, s.t, s.n, s.secret) for s in plan.schemes),
        )

    def to_dict(self) -> dict:
        return {
            "version": VERSION,
            "modulus": str(self.modulus),
            "u": str(self.u),
            "crossover_x": [str(x) for x in self.crossover_x],
            "schemes": [
                {"label": label, "t": str(t), "n": str(n), "secret": str(s)}
                for label, t, n, s in self.schemes
            ],
        }

    @classmethod
    def from_dict(cls, doc: Any) -> PlanFile:
        modulus = _header(doc, "plan file")
        u = _int(doc, "u")
        xs = tuple(_int_list(doc, "crossover_x")) if "crossover_x" in doc else tuple(range(1, u + 1))
        raw = doc.get("schemes")
        if not isinstance(raw, list):
            raise FileFormatError("'schemes' must be a list")
        schemes = []
        for i, s in enumerate(raw):
            if not isinstance(s, dict):
                raise FileFormatError(f"malformed scheme entry {s!r}")
            label = s.get("label", f"scheme-{i + 1}")
            if not isinstance(label, str):
                raise FileFormatError("scheme label must be a string")
            schemes.append((label, _int(s, "t"), _int(s, "n"), _int(s, "secret")))
        return cls(modulus.p, u, xs, tuple(schemes))


@dataclass(frozen=True)
class ShareFile:
    """One participant's share, with every scheme it opens."""

    modulus: int
    x: int
    y: int
    schemes: tuple[str, ...]

    @classmethod
    def from_entry(cls, modulus: int, entry: LedgerEntry) -> ShareFile:
        return cls(modulus, entry.x, entry.y, entry.schemes)

    def to_dict(self) -> dict:
        return {
            "version": VERSION,
            "modulus": str(self.modulus),
            "x": str(self.x),
            "y": str(self.y),
            "schemes": list(self.schemes),
        }

    @classmethod
    def from_dict(cls, doc: Any) -> ShareFile:
        modulus = _header(doc, "share file")
        schemes = doc.get("schemes")
        if not isinstance(schemes, list) or not all(isinstance(s, str) for s in schemes):
            raise FileFormatError("'schemes' must be a list of strings")
        return cls(modulus.p, _int(doc, "x"), _int(doc, "y"), tuple(schemes))


def scheme_files_from_result(result: CollaborationResult) -> dict[str, SchemeFile]:
    return {
        params.label: SchemeFile.from_parts(params, f, result.crossover)
        for params, f in zip(result.plan.schemes, result.polynomials)
    }


_KINDS = {
    "scheme": SchemeFile,
    "crossover": CrossoverFile,
    "plan": PlanFile,
    "share": ShareFile,
}


def read(path: str | Path, kind: str):
    cls = _KINDS[kind]
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise FileFormatError(f"cannot read {path}: {exc.strerror}") from None
    return cls.from_dict(loads(text, f"{kind} file {path}"))


def write(path: str | Path, doc) -> None:
    Path(path).write_text(dumps(doc.to_dict()), encoding="utf-8")
