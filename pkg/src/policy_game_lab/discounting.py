"""Discount functions and discounted present values of payoff streams.

Three families are supported:

* exponential, ``D(t) = q**t`` with ``q = 1 / (1 + r)``
* quasi-hyperbolic (beta-delta), ``D(0) = 1`` and ``D(t) = beta * delta**t`` for ``t >= 1``
* generalized hyperbolic, ``D(t) = 1 / (1 + k t)``
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence

from .errors import ParameterDomainError


class DiscountKind(str, Enum):
    EXPONENTIAL = "exponential"
    QUASI_HYPERBOLIC = "quasi_hyperbolic"
    GENERALIZED_HYPERBOLIC = "generalized_hyperbolic"


@dataclass(frozen=True)
class DiscountSpec:
    """Which discount function to apply, with its parameters.

    Use the ``exponential``, ``from_factor``, ``quasi_hyperbolic`` and
    ``generalized_hyperbolic`` constructors rather than the raw initializer.
    An exponential spec built from a per-period factor keeps that factor
    verbatim so that no ``1/(1+r)`` round trip perturbs it.
    """

    kind: DiscountKind
    r: float | None = None
    q: float | None = None
    beta: float | None = None
    delta: float | None = None
    k: float | None = None

    def __post_init__(self):
        object.__setattr__(self, "kind", DiscountKind(self.kind))
        if self.kind is DiscountKind.EXPONENTIAL:
            if self.r is None and self.q is None:
                raise ParameterDomainError("r", None, "exponential discounting needs r or q")
            if self.q is not None:
                _check_finite("q", self.q)
                if not self.q > 0:
                    raise ParameterDomainError("q", self.q, "must be > 0")
                if self.r is None:
                    object.__setattr__(self, "r", 1.0 / self.q - 1.0)
            _check_finite("r", self.r)
            if not self.r > -1:
                raise ParameterDomainError("r", self.r, "must be > -1")
        elif self.kind is DiscountKind.QUASI_HYPERBOLIC:
            _check_finite("beta", self.beta)
            _check_finite("delta", self.delta)
            if not 0 < self.beta <= 1:
                raise ParameterDomainError("beta", self.beta, "must lie in (0, 1]")
            if not 0 < self.delta < 1:
                raise ParameterDomainError("delta", self.delta, "must lie in (0, 1)")
        else:
            _check_finite("k", self.k)
            if not self.k > 0:
                raise ParameterDomainError("k", self.k, "must be > 0")

    @classmethod
    def exponential(cls, r: float) -> "DiscountSpec":
        return cls(DiscountKind.EXPONENTIAL, r=r)

    @classmethod
    def from_factor(cls, q: float) -> "DiscountSpec":
        """Exponential spec parameterized by its per-period factor q."""
        return cls(DiscountKind.EXPONENTIAL, q=q)

    @classmethod
    def quasi_hyperbolic(cls, beta: float, delta: float) -> "DiscountSpec":
        return cls(DiscountKind.QUASI_HYPERBOLIC, beta=beta, delta=delta)

    @classmethod
    def generalized_hyperbolic(cls, k: float) -> "DiscountSpec":
        return cls(DiscountKind.GENERALIZED_HYPERBOLIC, k=k)

    @property
    def factor(self) -> float:
        """Per-period exponential factor: q for exponential, delta for beta-delta."""
        if self.kind is DiscountKind.EXPONENTIAL:
            return self.q if self.q is not None else 1.0 / (1.0 + self.r)
        if self.kind is DiscountKind.QUASI_HYPERBOLIC:
            return self.delta
        raise ParameterDomainError("kind", self.kind.value, "hyperbolic discounting has no per-period factor")

    def to_dict(self) -> dict:
        out = {"kind": self.kind.value}
        for name in ("r", "q", "beta", "delta", "k"):
            value = getattr(self, name)
            if value is not None:
                out[name] = value
        return out


def _check_finite(name: str, value) -> None:
    if value is None or isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ParameterDomainError(name, value, "must be a real number")
    if not math.isfinite(value):
        raise ParameterDomainError(name, value, "must be finite")


def eval_discount(spec: DiscountSpec, t: int) -> float:
    """Discount weight D(t) applied to a payoff received t periods from now."""
    if isinstance(t, bool) or int(t) != t or t < 0:
        raise ParameterDomainError("t", t, "must be a non-negative integer")
    t = int(t)
    if t == 0:
        return 1.0
    if spec.kind is DiscountKind.EXPONENTIAL:
        return spec.factor**t
    if spec.kind is DiscountKind.QUASI_HYPERBOLIC:
        return spec.beta * spec.delta**t
    return 1.0 / (1.0 + spec.k * t)


@dataclass(frozen=True)
class PayoffStream:
    """Per-period payoffs indexed from t = 0."""

    values: tuple[float, ...]

    def __init__(self, values: Iterable[float]):
        vals = tuple(float(v) for v in values)
        if not vals:
            raise ParameterDomainError("values", vals, "stream must contain at least one period")
        for i, v in enumerate(vals):
            if not math.isfinite(v):
                raise ParameterDomainError(f"values[{i}]", v, "must be finite")
        object.__setattr__(self, "values", vals)

    def __len__(self) -> int:
        return len(self.values)


def present_value(stream: PayoffStream | Sequence[float], spec: DiscountSpec) -> float:
    if not isinstance(stream, PayoffStream):
        stream = PayoffStream(stream)
    return math.fsum(v * eval_discount(spec, t) for t, v in enumerate(stream.values))
