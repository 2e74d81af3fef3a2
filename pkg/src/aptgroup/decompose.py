"""Exact decomposition of triples over the beta basis.

Any primitive triple is an integer combination of basis triples.  The
coefficients are recovered by valuation descent on the third component:
while some odd-part prime q remains, one of t +- beta(q) strictly lowers
the q-adic valuation, and the sign that works contributes the coefficient.
Composite primes are cleared first (their basis triples re-inject only
pillar primes and 2), then pillars, then the ideal-wise 2-torsion primes;
for m in {7, 15} a residual power of 2 is cleared by the distinguished
[q, r, 4] element, whose coefficient is reported separately.  The result
is verified by exact recombination before it is returned.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from .basis import BasisTable, Category
from .primes import factorize, valuation
from .quadfield import Modulus, SplitKind, ideal_valuation, kronecker, splitting_type
from .triples import Triple, add, identity, negate, scalar_mul

__all__ = [
    "DecompositionError",
    "GeneratorUnavailableError",
    "PrimeIdealRef",
    "Decomposition",
    "ideal_valuations",
    "decompose",
    "recombine",
]


class DecompositionError(RuntimeError):
    """Internal inconsistency: the descent stalled or recombination failed."""


class GeneratorUnavailableError(RuntimeError):
    """A required basis prime exceeds the allowed bound."""


@dataclass(frozen=True, order=True)
class PrimeIdealRef:
    """A degree-one prime ideal <p, root + sqrt(-m)> over an odd split p.

    conj is set when root is the non-canonical square root p - r.
    """

    p: int
    root: int
    conj: bool


@dataclass(frozen=True)
class Decomposition:
    m: int
    input: Triple
    terms: tuple[tuple[int, int], ...]  # (prime, coefficient), primes ascending
    special_coeff: int = 0
    verified: bool = False

    def coefficients(self) -> dict[int, int]:
        return dict(self.terms)

    def to_json_dict(self) -> dict:
        return {
            "m": self.m,
            "input": [self.input.a, self.input.b, self.input.c],
            "terms": [{"p": p, "coeff": s} for p, s in self.terms],
            "special": self.special_coeff,
            "verified": self.verified,
        }


def ideal_valuations(mod: Modulus, t: Triple) -> dict[PrimeIdealRef, int]:
    """Prime-ideal factorization of <a - b*sqrt(-m)> at the odd primes.

    Every odd prime dividing c splits, and coprimality of (a, b) forces the
    whole valuation 2 * v_q(c) onto exactly one of the two ideals over q;
    the Hensel root criterion decides which.  All exponents are even and
    the ideal norms multiply to the square of the odd part of c.  The
    2-adic part (present only when -m = 1 mod 4 and c is even) is carried
    by the triple itself and is not reported here.
    """
    if t.m != mod.m:
        raise ValueError("triple does not belong to this modulus")
    out: dict[PrimeIdealRef, int] = {}
    for q, e in factorize(t.c).items():
        if q == 2:
            continue
        info = splitting_type(mod, q)
        if info.kind is not SplitKind.SPLIT:
            raise ValueError(f"prime {q} divides the third component but does not split")
        v_plain = ideal_valuation(mod, t.a, -t.b, info, conj=False)
        if v_plain > 0:
            key = PrimeIdealRef(q, info.root, False)
            v = v_plain
        else:
            key = PrimeIdealRef(q, q - info.root, True)
            v = ideal_valuation(mod, t.a, -t.b, info, conj=True)
        assert v == 2 * e, (t, q, v)
        out[key] = v
    return out


_CATEGORY_RANK = {Category.COMPOSITE: 0, Category.PILLAR: 1, Category.TWO_TORSION: 2}


def decompose(basis: BasisTable, t: Triple, bound: int | None = None) -> Decomposition:
    """Express t as an integer combination of basis triples, exactly.

    Basis elements are computed on demand; when bound is given, needing a
    prime above it raises GeneratorUnavailableError instead.  The returned
    decomposition has been verified by recombination.
    """
    mod = basis.mod
    if t.m != mod.m:
        raise ValueError("triple does not belong to this basis")
    special = basis.special()
    coeffs: dict[int, int] = {}
    special_coeff = 0
    cur = t
    while not cur.is_identity():
        fac = factorize(cur.c)
        ranked = []
        for q in fac:
            if kronecker(mod, q) != 1:
                if q == 2:
                    # a single factor 2 may ride along when -m = 1 (mod 4)
                    # even though 2 is inert; it vanishes with the odd part
                    continue
                raise DecompositionError(
                    f"prime {q} divides the third component but is outside L"
                )
            ranked.append((_CATEGORY_RANK[basis.category_of(q)], q))
        if not ranked:
            raise DecompositionError(
                f"residual third component {cur.c} admits no basis prime"
            )
        cat, q = min(ranked)
        if bound is not None and q > bound:
            raise GeneratorUnavailableError(f"basis prime {q} exceeds bound {bound}")
        step = basis.beta(q).triple
        v0 = fac[q]
        down = add(cur, negate(step))
        if valuation(down.c, q) < v0:
            cur, sign = down, 1
        else:
            up = add(cur, step)
            if valuation(up.c, q) >= v0:
                raise DecompositionError(f"descent stalled at prime {q} on {cur}")
            cur, sign = up, -1
        if special is not None and q == 2:
            special_coeff += sign
        else:
            coeffs[q] = coeffs.get(q, 0) + sign

    terms = tuple(sorted((p, s) for p, s in coeffs.items() if s))
    result = Decomposition(mod.m, t, terms, special_coeff, verified=False)
    check = recombine(basis, result)
    if check != t:
        raise DecompositionError(f"recombination produced {check}, expected {t}")
    return Decomposition(mod.m, t, terms, special_coeff, verified=True)


def recombine(
    basis: BasisTable,
    terms: Decomposition | Mapping[int, int] | Sequence[tuple[int, int]],
    special_coeff: int = 0,
) -> Triple:
    """Evaluate sum(s * beta(p)) + special_coeff * [q, r, 4] in the group."""
    if isinstance(terms, Decomposition):
        special_coeff = terms.special_coeff
        items: Sequence[tuple[int, int]] = terms.terms
    elif isinstance(terms, Mapping):
        items = sorted(terms.items())
    else:
        items = sorted(terms)
    acc = identity(basis.mod)
    for p, s in items:
        if s:
            acc = add(acc, scalar_mul(s, basis.beta(p).triple))
    if special_coeff:
        sp = basis.special()
        if sp is None:
            raise ValueError("no [q, r, 4] element exists for this modulus")
        acc = add(acc, scalar_mul(special_coeff, sp))
    return acc
