"""Exact arithmetic for admissible radii r = p pi / q.

A radius is admissible for a space when the Jacobi polynomials of the ball
coefficients do not have degenerating phase at cos r, i.e. when
gamma p + delta q is not an integer with gamma = (alpha + beta + 1)/2 and
delta = -(2 alpha - 1)/4.  For a catalog space (alpha, beta) = (a+1, b+1) and
the test becomes (d + d0 + 2) p - (d - 1) q != 0 (mod 4).

Everything here is integer/Fraction arithmetic; no floats.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError


def frac(value) -> Fraction:
    """Parse ints, Fractions and strings like "3/2" or "-1/4"; floats are refused."""
    if isinstance(value, bool):
        raise DomainError("booleans are not fractions")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise DomainError(f"malformed fraction {value!r}") from exc
    raise DomainError(f"expected an exact rational, got {type(value).__name__}")


@dataclass(frozen=True)
class RadiusPQ:
    """The radius p pi / q with 0 < p < q coprime."""

    p: int
    q: int

    def __post_init__(self):
        if not (isinstance(self.p, int) and isinstance(self.q, int)):
            raise DomainError("p and q must be integers")
        if not (0 < self.p < self.q):
            raise DomainError(f"need 0 < p < q, got {self.p}/{self.q}")
        if math.gcd(self.p, self.q) != 1:
            raise DomainError(f"{self.p}/{self.q} is not in lowest terms")

    @classmethod
    def parse(cls, text: str) -> "RadiusPQ":
        parts = text.strip().split("/")
        if len(parts) != 2:
            raise DomainError(f"radius must look like p/q, got {text!r}")
        try:
            p, q = int(parts[0]), int(parts[1])
        except ValueError as exc:
            raise DomainError(f"radius must look like p/q, got {text!r}") from exc
        return cls(p, q)

    @property
    def ratio(self) -> Fraction:
        return Fraction(self.p, self.q)

    @property
    def radians(self) -> float:
        return self.p * math.pi / self.q

    def __str__(self) -> str:
        return f"{self.p}/{self.q}"


def coprime_radii(q_max: int):
    """All RadiusPQ with q <= q_max, ordered by q then p."""
    for q in range(2, q_max + 1):
        for p in range(1, q):
            if math.gcd(p, q) == 1:
                yield RadiusPQ(p, q)


# ---------------------------------------------------------------------------
# space level test


def space_residue(space, radius: RadiusPQ) -> int:
    """((d + d0 + 2) p - (d - 1) q) mod 4."""
    prm = space.params
    return ((prm.d + prm.d0 + 2) * radius.p - (prm.d - 1) * radius.q) % 4


def space_radius_admissible(space, radius: RadiusPQ) -> bool:
    return space_residue(space, radius) != 0


# ---------------------------------------------------------------------------
# Jacobi level test


def gamma_delta(alpha, beta) -> tuple[Fraction, Fraction]:
    alpha, beta = frac(alpha), frac(beta)
    if alpha <= -1 or beta <= -1:
        raise DomainError("need alpha, beta > -1")
    return (alpha + beta + 1) / 2, -(2 * alpha - 1) / 4


def jacobadly_condition(gamma, delta, radius: RadiusPQ) -> bool:
    """True when gamma p + delta q is not an integer."""
    value = frac(gamma) * radius.p + frac(delta) * radius.q
    return value.denominator != 1


def jacobadly_from_alpha_beta(alpha, beta, radius: RadiusPQ) -> bool:
    g, d = gamma_delta(alpha, beta)
    return jacobadly_condition(g, d, radius)


IRRATIONAL = "irrational"


def gegenbadly(lam, radius: RadiusPQ) -> bool:
    """Gegenbauer form: lam p - (lam - 1) q / 2 not an integer.

    ``lam`` is an exact rational or the tag ``IRRATIONAL``; for irrational
    lam only the ratio 1/2 fails.
    """
    if isinstance(lam, str) and lam.strip().lower() == IRRATIONAL:
        return radius.ratio != Fraction(1, 2)
    lam = frac(lam)
    if lam <= Fraction(-1, 2):
        raise DomainError("need lam > -1/2")
    value = lam * radius.p - (lam - 1) / 2 * radius.q
    return value.denominator != 1


# ---------------------------------------------------------------------------
# classification of (gamma, delta)


@dataclass(frozen=True)
class BothRational:
    gamma: Fraction
    delta: Fraction

    def __post_init__(self):
        object.__setattr__(self, "gamma", frac(self.gamma))
        object.__setattr__(self, "delta", frac(self.delta))


@dataclass(frozen=True)
class IrrationalWithRelation:
    """gamma, delta irrational with j1 gamma + j2 delta + j3 = 0, gcd(j1, j2, j3) = 1."""

    j1: int
    j2: int
    j3: int

    def __post_init__(self):
        if math.gcd(math.gcd(self.j1, self.j2), self.j3) != 1:
            raise DomainError("relation coefficients must have no common divisor")
        if self.j1 == 0 or self.j2 == 0:
            # a zero coefficient would make gamma or delta rational
            raise DomainError("j1 and j2 must be nonzero when gamma and delta are irrational")


@dataclass(frozen=True)
class OneRational:
    which: str
    value: Fraction

    def __post_init__(self):
        if self.which not in ("gamma", "delta"):
            raise DomainError("which must be 'gamma' or 'delta'")
        object.__setattr__(self, "value", frac(self.value))


@dataclass(frozen=True)
class Independent:
    """1, gamma, delta linearly independent over Q."""


@dataclass(frozen=True)
class Classification:
    verdict: str  # ALL, ALL_EXCEPT, NONE, SOME
    witness: RadiusPQ | None = None
    exceptional_ratio: Fraction | None = None

    def to_dict(self) -> dict:
        out = {"verdict": self.verdict}
        if self.witness is not None:
            out["witness"] = {"p": self.witness.p, "q": self.witness.q}
        if self.exceptional_ratio is not None:
            out["exceptional_ratio"] = str(self.exceptional_ratio)
        return out


def find_witness(gamma, delta) -> RadiusPQ | None:
    """Smallest-q coprime (p, q) with gamma p + delta q not an integer.

    The test is periodic in p and q with period den(gamma) den(delta), so a
    search to 4 den(gamma) den(delta) is complete.
    """
    gamma, delta = frac(gamma), frac(delta)
    bound = max(4, 4 * gamma.denominator * delta.denominator)
    for radius in coprime_radii(bound):
        if jacobadly_condition(gamma, delta, radius):
            return radius
    return None


def classify(gd) -> Classification:
    if isinstance(gd, (Independent, OneRational)):
        return Classification("ALL")
    if isinstance(gd, IrrationalWithRelation):
        if math.gcd(gd.j1, gd.j2) > 1:
            return Classification("ALL")
        return Classification("ALL_EXCEPT", exceptional_ratio=Fraction(gd.j1, gd.j2))
    if isinstance(gd, BothRational):
        if gd.gamma.denominator == 1 and gd.delta.denominator == 1:
            return Classification("NONE")
        witness = find_witness(gd.gamma, gd.delta)
        if witness is None:
            raise DomainError(f"no witness found for gamma={gd.gamma}, delta={gd.delta}")
        return Classification("SOME", witness=witness)
    raise DomainError(f"unknown gamma-delta description {gd!r}")


def admissible_for(gd, radius: RadiusPQ) -> bool:
    """Per-radius verdict following the case analysis for each kind of description."""
    if isinstance(gd, (Independent, OneRational)):
        # gamma p + delta q is irrational
        return True
    if isinstance(gd, IrrationalWithRelation):
        if radius.ratio != Fraction(gd.j1, gd.j2):
            return True
        h = math.gcd(gd.j1, gd.j2)
        if h == 1:
            # gamma p + delta q = +-j3
            return False
        return Fraction(-gd.j3, h).denominator != 1
    if isinstance(gd, BothRational):
        return jacobadly_condition(gd.gamma, gd.delta, radius)
    raise DomainError(f"unknown gamma-delta description {gd!r}")


# ---------------------------------------------------------------------------
# prime radii


def primes_up_to(limit: int) -> list[int]:
    if limit < 2:
        return []
    sieve = bytearray([1]) * (limit + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, math.isqrt(limit) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(range(i * i, limit + 1, i)))
    return [i for i, flag in enumerate(sieve) if flag]


def first_primes(count: int) -> list[int]:
    if count < 1:
        return []
    # Rosser: p_n < n (log n + log log n) for n >= 6
    limit = 15 if count < 6 else int(count * (math.log(count) + math.log(math.log(count)))) + 1
    return primes_up_to(limit)[:count]


def prime_radius_sequence(ratio_margin, count: int) -> list[RadiusPQ]:
    """Radii p_n pi / q_n with q_n the n-th prime and p_n = max(1, floor(q_n / 2))."""
    margin = frac(ratio_margin) if not isinstance(ratio_margin, float) else Fraction(ratio_margin)
    if not (0 < margin <= Fraction(1, 2)):
        raise DomainError("ratio_margin must lie in (0, 1/2]")
    if count < 1:
        raise DomainError("count must be >= 1")
    out = []
    for q in first_primes(count):
        p = max(1, q // 2)
        ratio = Fraction(p, q)
        if not (margin <= ratio <= 1 - margin):
            raise DomainError(f"{p}/{q} violates the ratio margin {margin}")
        out.append(RadiusPQ(p, q))
    return out
