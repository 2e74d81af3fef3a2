"""The abelian group of primitive triples (a, b, c) with a^2 + m*b^2 = c^2.

Triples are taken projectively: (a, b, c) ~ (ka, kb, |k|c).  Each class has
a unique primitive representative with c > 0 and a > 0, which is what the
Triple type stores.  The group law is induced by complex multiplication of
a + b*sqrt(-m); the identity is [1, 0, 1] and the inverse of [a, b, c] is
[a, -b, c].  For square-free m > 3 the group is torsion free.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .quadfield import Modulus

__all__ = [
    "ModulusMismatchError",
    "NotASolutionError",
    "Triple",
    "identity",
    "normalize",
    "parse_triple",
    "add",
    "negate",
    "scalar_mul",
]


class ModulusMismatchError(ValueError):
    """Group operation applied to triples over different moduli."""


class NotASolutionError(ValueError):
    """The given integers do not solve a^2 + m*b^2 = c^2."""


def _m_of(mod: Modulus | int) -> int:
    return mod.m if isinstance(mod, Modulus) else int(mod)


@dataclass(frozen=True, order=True)
class Triple:
    """Canonical representative of a group element: primitive, c > 0, a > 0."""

    m: int
    a: int
    b: int
    c: int

    def __post_init__(self) -> None:
        if self.c <= 0 or self.a <= 0:
            raise NotASolutionError(f"not canonical: ({self.a}, {self.b}, {self.c})")
        if self.a * self.a + self.m * self.b * self.b != self.c * self.c:
            raise NotASolutionError(
                f"({self.a}, {self.b}, {self.c}) does not solve x^2 + {self.m}y^2 = z^2"
            )
        if gcd(gcd(self.a, self.b), self.c) != 1:
            raise NotASolutionError(f"not primitive: ({self.a}, {self.b}, {self.c})")

    def is_identity(self) -> bool:
        return self.c == 1

    def __neg__(self) -> "Triple":
        return Triple(self.m, self.a, -self.b, self.c)

    def __add__(self, other: "Triple") -> "Triple":
        return add(self, other)

    def __sub__(self, other: "Triple") -> "Triple":
        return add(self, -other)

    def __rmul__(self, n: int) -> "Triple":
        return scalar_mul(n, self)

    def __repr__(self) -> str:
        return f"[{self.a}, {self.b}, {self.c}]"


def identity(mod: Modulus | int) -> Triple:
    return Triple(_m_of(mod), 1, 0, 1)


def normalize(mod: Modulus | int, a: int, b: int, c: int) -> Triple:
    """Canonical representative of the class of (a, b, c).

    Divides out the content, makes c positive, then flips the sign of
    (a, b) jointly so that a > 0.  Idempotent on canonical triples.
    """
    m = _m_of(mod)
    if c == 0:
        raise NotASolutionError("third component must be nonzero")
    if a * a + m * b * b != c * c:
        raise NotASolutionError(f"({a}, {b}, {c}) does not solve x^2 + {m}y^2 = z^2")
    if a == 0:
        # would force m*b^2 = c^2 with square-free m > 1
        raise NotASolutionError("first component cannot vanish")
    g = gcd(gcd(abs(a), abs(b)), abs(c))
    a, b, c = a // g, b // g, c // g
    if c < 0:
        c = -c
    if a < 0:
        a, b = -a, -b
    return Triple(m, a, b, c)


def parse_triple(mod: Modulus | int, text: str) -> Triple:
    """Parse "a,b,c" (optionally bracketed, spaces allowed) canonically."""
    parts = text.strip().strip("[]()").replace(",", " ").split()
    if len(parts) != 3:
        raise ValueError(f"expected three components, got {text!r}")
    a, b, c = (int(p) for p in parts)
    return normalize(mod, a, b, c)


def add(t1: Triple, t2: Triple) -> Triple:
    """Group law: [a1,b1,c1] + [a2,b2,c2] = [a1a2 - m b1b2, a1b2 + a2b1, c1c2]."""
    if t1.m != t2.m:
        raise ModulusMismatchError(f"cannot add triples over m={t1.m} and m={t2.m}")
    m = t1.m
    return normalize(
        m,
        t1.a * t2.a - m * t1.b * t2.b,
        t1.a * t2.b + t2.a * t1.b,
        t1.c * t2.c,
    )


def negate(t: Triple) -> Triple:
    return -t


def scalar_mul(n: int, t: Triple) -> Triple:
    """n-fold sum by double-and-add; scalar_mul(0, t) is the identity."""
    if n < 0:
        n, t = -n, -t
    acc = identity(t.m)
    base = t
    while n:
        if n & 1:
            acc = add(acc, base)
        if n > 1:
            base = add(base, base)
        n >>= 1
    return acc
