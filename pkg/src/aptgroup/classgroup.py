"""The ideal class group of Q(sqrt(-m)) as reduced binary quadratic forms.

Classes are represented by reduced primitive positive definite forms
A*x^2 + B*x*y + C*y^2 of the field discriminant, composed by the Dirichlet
rule on concordant representatives.  Beyond the bare group this module
recovers the abelian structure and the 2-torsion subgroup, and presents
the quotient by 2-torsion as a direct sum in which each cyclic factor is
generated by the image of a chosen split prime ideal (a "pillar").  The
class group here is tiny (a few dozen classes at most), so structure
recovery is done by direct search rather than linear algebra.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import gcd, isqrt

from .primes import crt, primes_up_to, xgcd
from .quadfield import Modulus, PrimeSplitInfo, SplitKind, kronecker, splitting_type

__all__ = [
    "DiscriminantMismatchError",
    "PillarConfigError",
    "FormClass",
    "reduce_form",
    "principal_form",
    "compose_forms",
    "form_inverse",
    "form_pow",
    "ClassGroupTable",
    "enumerate_class_group",
    "group_structure",
    "primary_structure",
    "two_torsion",
    "Pillar",
    "QuotientData",
    "quotient_setup",
    "class_of_prime",
    "class_mod_two_torsion",
]


class DiscriminantMismatchError(ValueError):
    """Form does not have the expected discriminant."""


class PillarConfigError(ValueError):
    """A pillar override does not give a direct-sum decomposition of the quotient."""


@dataclass(frozen=True, order=True)
class FormClass:
    """A reduced form: A > 0, -A < B <= A <= C, B >= 0 when A = C or A = |B|."""

    a: int
    b: int
    c: int

    def __post_init__(self) -> None:
        a, b, c = self.a, self.b, self.c
        if a <= 0 or not (-a < b <= a <= c) or (b < 0 and (a == c or a == abs(b))):
            raise ValueError(f"form ({a}, {b}, {c}) is not reduced")
        if gcd(gcd(a, abs(b)), c) != 1:
            raise ValueError(f"form ({a}, {b}, {c}) is not primitive")

    @property
    def disc(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    def inverse(self) -> "FormClass":
        return reduce_form(self.a, -self.b, self.c)

    def __repr__(self) -> str:
        return f"({self.a}, {self.b}, {self.c})"


def reduce_form(a: int, b: int, c: int, disc: int | None = None) -> FormClass:
    """Gauss reduction of a primitive positive definite form.

    When disc is given the form's discriminant must match it exactly.
    Idempotent on already-reduced forms.
    """
    d = b * b - 4 * a * c
    if disc is not None and d != disc:
        raise DiscriminantMismatchError(f"form has discriminant {d}, expected {disc}")
    if d >= 0 or a <= 0:
        raise ValueError("form must be positive definite")
    while True:
        if not (-a < b <= a):
            r = (a - b) // (2 * a)
            b, c = b + 2 * r * a, a * r * r + b * r + c
        if a > c:
            a, b, c = c, -b, a
            continue
        if a == c and b < 0:
            b = -b
        return FormClass(a, b, c)


def principal_form(disc: int) -> FormClass:
    if disc % 2 == 0:
        return FormClass(1, 0, -disc // 4)
    return FormClass(1, 1, (1 - disc) // 4)


def _transform(a: int, b: int, c: int, x: int, y: int, z: int, w: int) -> tuple[int, int, int]:
    # action of the determinant-1 matrix [[x, z], [y, w]] on the form
    aa = a * x * x + b * x * y + c * y * y
    cc = a * z * z + b * z * w + c * w * w
    bb = 2 * (a * x * z + c * y * w) + b * (x * w + y * z)
    return aa, bb, cc


def _coprime_representation(f: FormClass, modulus: int) -> tuple[int, int]:
    """Smallest (x, y), gcd(x, y) = 1, with f(x, y) coprime to modulus.

    A primitive form properly represents values coprime to any modulus;
    the search radius needed in practice is tiny.
    """
    a, b, c = f.a, f.b, f.c
    for s in itertools.count(1):
        for x in range(-s, s + 1):
            for y in range(-s, s + 1):
                if max(abs(x), abs(y)) != s or gcd(x, y) != 1:
                    continue
                v = a * x * x + b * x * y + c * y * y
                if v != 0 and gcd(v, modulus) == 1:
                    return x, y
        if s > 64:
            raise RuntimeError(f"no representation coprime to {modulus} found for {f}")


def compose_forms(f: FormClass, g: FormClass) -> FormClass:
    """Gauss composition, computed through concordant representatives.

    f is moved to an equivalent form (A, B1, *) whose leading coefficient A
    is coprime to 2 * g.a * disc; after aligning the middle coefficients by
    CRT the two forms are concordant and compose to (A * g.a, B, *).
    """
    d = f.disc
    if g.disc != d:
        raise DiscriminantMismatchError(f"cannot compose discriminants {d} and {g.disc}")
    x, y = _coprime_representation(f, 2 * g.a * d)
    # complete (x, y) to a determinant-1 matrix
    _, w, zneg = xgcd(x, y)
    z = -zneg
    aa, bb, _ = _transform(f.a, f.b, f.c, x, y, z, w)
    # middle coefficient common to both concordant forms
    b0, _ = crt(bb % (2 * aa), 2 * aa, g.b % (2 * g.a), 2 * g.a)
    a0 = aa * g.a
    assert (b0 * b0 - d) % (4 * a0) == 0
    return reduce_form(a0, b0, (b0 * b0 - d) // (4 * a0))


def form_inverse(f: FormClass) -> FormClass:
    return f.inverse()


def form_pow(f: FormClass, n: int) -> FormClass:
    result = principal_form(f.disc)
    base = f if n >= 0 else f.inverse()
    n = abs(n)
    while n:
        if n & 1:
            result = compose_forms(result, base)
        if n > 1:
            base = compose_forms(base, base)
        n >>= 1
    return result


def _enumerate_reduced(disc: int) -> list[FormClass]:
    out = []
    for a in range(1, isqrt(abs(disc) // 3) + 1):
        for b in range(-a + 1, a + 1):
            if (b * b - disc) % (4 * a):
                continue
            c = (b * b - disc) // (4 * a)
            if c < a or gcd(gcd(a, abs(b)), c) != 1:
                continue
            if b < 0 and (a == c or a == abs(b)):
                continue
            out.append(FormClass(a, b, c))
    return sorted(out)


def _peel_structure(elements, mul, ident):
    """Greedy maximal-order peeling of a finite abelian group.

    Returns [(generator, order)] realizing the group as an internal direct
    sum of cyclic subgroups; the orders are the invariant factors, largest
    first.  After picking an element of maximal order in the quotient by
    the span built so far, the element is adjusted by a span element so
    that its absolute order equals its quotient order (the span is a pure
    subgroup, so such an adjustment always exists).  Ties are broken by
    the natural ordering of the elements, so the output is deterministic.
    """

    def power(x, k):
        acc = x
        for _ in range(k - 1):
            acc = mul(acc, x)
        return acc

    out = []
    span = {ident}
    while len(span) < len(elements):
        best, best_ord = None, 0
        for e in elements:
            k, cur = 1, e
            while cur not in span:
                cur = mul(cur, e)
                k += 1
            if k > best_ord:
                best, best_ord = e, k
        gen = None
        for h in sorted(span):
            cand = mul(best, h)
            if power(cand, best_ord) == ident:
                gen = cand
                break
        assert gen is not None, "pure-subgroup adjustment must exist"
        out.append((gen, best_ord))
        powers = [ident]
        for _ in range(best_ord - 1):
            powers.append(mul(powers[-1], gen))
        span = {mul(s, p) for s in span for p in powers}
    return out


class ClassGroupTable:
    """All reduced forms of one field discriminant, with cached composition.

    The table is immutable after construction and every query is a pure
    read, so instances may be shared freely between threads.
    """

    def __init__(self, mod: Modulus):
        self.mod = mod
        self.disc = mod.disc
        self.identity = principal_form(self.disc)
        self.forms: tuple[FormClass, ...] = tuple(_enumerate_reduced(self.disc))
        self.h = len(self.forms)
        self._mul_cache: dict[tuple[FormClass, FormClass], FormClass] = {}
        self.twotorsion: tuple[FormClass, ...] = tuple(
            f for f in self.forms if self.compose(f, f) == self.identity
        )
        self._two_set = frozenset(self.twotorsion)
        self.structure: tuple[tuple[FormClass, int], ...] = tuple(
            _peel_structure(self.forms, self.compose, self.identity)
        )
        self._coset_cache: dict[FormClass, FormClass] = {}
        self._quotients: dict[tuple[int, ...] | None, QuotientData] = {}

    def compose(self, f: FormClass, g: FormClass) -> FormClass:
        if g < f:
            f, g = g, f
        key = (f, g)
        got = self._mul_cache.get(key)
        if got is None:
            got = self._mul_cache[key] = compose_forms(f, g)
        return got

    def power(self, f: FormClass, n: int) -> FormClass:
        result = self.identity
        base = f if n >= 0 else f.inverse()
        n = abs(n)
        while n:
            if n & 1:
                result = self.compose(result, base)
            if n > 1:
                base = self.compose(base, base)
            n >>= 1
        return result

    def order_of(self, f: FormClass) -> int:
        k, cur = 1, f
        while cur != self.identity:
            cur = self.compose(cur, f)
            k += 1
        return k

    def in_two_torsion(self, f: FormClass) -> bool:
        return f in self._two_set

    def coset_rep(self, f: FormClass) -> FormClass:
        """Canonical representative of the coset of f modulo the 2-torsion subgroup."""
        got = self._coset_cache.get(f)
        if got is None:
            got = self._coset_cache[f] = min(self.compose(f, e) for e in self.twotorsion)
        return got

    def quotient_order(self, f: FormClass) -> int:
        k, cur = 1, f
        while not self.in_two_torsion(cur):
            cur = self.compose(cur, f)
            k += 1
        return k

    def class_of_prime(self, p: int) -> FormClass:
        """The class of the chosen prime ideal over p (the canonical lifting).

        The ideal <p, r + sqrt(-m)> with the canonical root r corresponds to
        the form (p, B, (B^2 - disc)/4p) where B is the unique residue in
        (-p, p] compatible with r; the conjugate ideal maps to the inverse
        class.  Inert primes lie over <p> itself, which is principal: they
        map to the identity.
        """
        info = splitting_type(self.mod, p)
        if info.kind is SplitKind.INERT:
            return self.identity
        if p == 2:
            b = 1 if self.disc % 2 else 2 * info.root
            return reduce_form(2, b, (b * b - self.disc) // 8, self.disc)
        r = info.root
        if self.disc % 2 == 0:
            b = 2 * r
        else:
            b = r if r % 2 == 1 else r - p
        while b > p:
            b -= 2 * p
        while b <= -p:
            b += 2 * p
        return reduce_form(p, b, (b * b - self.disc) // (4 * p), self.disc)

    def quotient(self, pillars: tuple[int, ...] | None = None) -> "QuotientData":
        got = self._quotients.get(pillars)
        if got is None:
            got = self._quotients[pillars] = QuotientData(self, pillars)
        return got


def enumerate_class_group(mod: Modulus) -> ClassGroupTable:
    return ClassGroupTable(mod)


def group_structure(table: ClassGroupTable) -> list[tuple[FormClass, int]]:
    """Invariant-factor presentation of Cl as [(generator, order)]."""
    return list(table.structure)


def primary_structure(table: ClassGroupTable) -> list[tuple[FormClass, int]]:
    """Prime-power cyclic decomposition, derived from the invariant factors.

    Each invariant-factor generator of order n splits into one generator of
    order q^k per prime power in n; results are sorted by descending order.
    """
    out = []
    for g, n in table.structure:
        for _, qk in _prime_power_parts(n):
            out.append((table.power(g, n // qk), qk))
    return sorted(out, key=lambda t: (-t[1], t[0]))


def two_torsion(table: ClassGroupTable) -> list[FormClass]:
    """The subgroup of classes with trivial square (the ambiguous classes)."""
    return list(table.twotorsion)


def class_of_prime(table: ClassGroupTable, p: int) -> FormClass:
    return table.class_of_prime(p)


def class_mod_two_torsion(table: ClassGroupTable, p: int) -> FormClass:
    """Canonical coset representative of the prime's class in the quotient."""
    return table.coset_rep(table.class_of_prime(p))


@dataclass(frozen=True)
class Pillar:
    """A split prime whose class image generates one cyclic factor of the quotient."""

    index: int  # 1-based position of the cyclic factor
    p: int
    info: PrimeSplitInfo
    order: int  # size of the cyclic factor this prime generates
    form: FormClass  # class of the chosen ideal in Cl


def _prime_power_parts(n: int) -> list[tuple[int, int]]:
    """[(q, q^k)] over the prime powers in n."""
    parts = []
    q = 2
    while n > 1:
        if n % q == 0:
            qk = 1
            while n % q == 0:
                n //= q
                qk *= q
        else:
            q += 1
            continue
        parts.append((q, qk))
        q += 1
    return parts


class QuotientData:
    """A direct-sum presentation of Cl modulo 2-torsion by pillar prime images.

    With no override the pillars are selected by a deterministic two-phase
    rule; see _select_default_pillars.  An explicit override fixes the
    pillar primes (in order) and only checks that their images decompose
    the quotient as an internal direct sum.
    """

    def __init__(self, table: ClassGroupTable, override: tuple[int, ...] | None = None):
        self.table = table
        cosets = sorted({table.coset_rep(f) for f in table.forms})
        self.size = len(cosets)
        self._cosets = cosets
        self.invariant_factors: tuple[int, ...] = tuple(
            order for (_, order) in _peel_structure(cosets, self._qmul, table.identity)
        )
        if self.size == 1:
            self.pillars: tuple[Pillar, ...] = ()
        elif override is not None:
            self.pillars = self._validated_override(override)
        else:
            self.pillars = self._select_default_pillars()
        self._pillar_powers = [
            self._rep_powers(pl.form, pl.order) for pl in self.pillars
        ]
        self._coords_cache: dict[FormClass, tuple[int, ...]] = {}

    # -- quotient group helpers (elements are canonical coset reps) --

    def _qmul(self, f: FormClass, g: FormClass) -> FormClass:
        return self.table.coset_rep(self.table.compose(f, g))

    def _rep_powers(self, f: FormClass, order: int) -> list[FormClass]:
        powers = [self.table.coset_rep(self.table.identity)]
        for _ in range(order - 1):
            powers.append(self._qmul(powers[-1], f))
        return powers

    def _span(self, f: FormClass) -> frozenset[FormClass]:
        return frozenset(self._rep_powers(f, self.table.quotient_order(f)))

    def _split_prime_stream(self):
        bound = 256
        seen = 0
        while bound <= max(1 << 20, 64 * abs(self.table.disc)):
            ps = [p for p in primes_up_to(bound) if kronecker(self.table.mod, p) == 1]
            yield from ps[seen:]
            seen = len(ps)
            bound *= 4
        raise RuntimeError("pillar search exhausted the prime bound")

    def _select_default_pillars(self) -> tuple[Pillar, ...]:
        """Deterministic pillar choice.

        Phase one builds a primary skeleton: for every prime-power slot q^k
        occurring in the invariant factors (q ascending, powers descending),
        take the smallest split prime whose quotient image has order exactly
        q^k and is independent of the skeleton built so far for the same q.
        Phase two assembles each invariant factor from its skeleton summands
        and picks the smallest split prime whose image generates exactly that
        assembled subgroup.  Both phases draw from the split primes in
        increasing order, so the result is reproducible; if phase two finds
        no exact generator within the search bound, it falls back to the
        smallest independent prime of the right order.
        """
        table = self.table
        ident = table.coset_rep(table.identity)
        slots: list[tuple[int, int]] = []
        for tau in self.invariant_factors:
            slots.extend(_prime_power_parts(tau))
        slots.sort(key=lambda s: (s[0], -s[1]))

        primes: list[int] = []
        images: dict[int, FormClass] = {}
        qorders: dict[int, int] = {}
        stream = self._split_prime_stream()

        def extend_primes() -> int:
            p = next(stream)
            primes.append(p)
            img = table.coset_rep(table.class_of_prime(p))
            images[p] = img
            qorders[p] = table.quotient_order(img)
            return p

        def candidates():
            i = 0
            while True:
                while i >= len(primes):
                    extend_primes()
                yield primes[i]
                i += 1

        # phase one: primary skeleton
        skeleton: list[tuple[int, int, int, frozenset[FormClass]]] = []  # (q, q^k, p, span)
        used: set[int] = set()
        acc_by_q: dict[int, frozenset[FormClass]] = {}
        for q, qk in slots:
            acc = acc_by_q.get(q, frozenset({ident}))
            for p in candidates():
                if p in used or qorders[p] != qk:
                    continue
                span = self._span(images[p])
                if span & acc == {ident}:
                    used.add(p)
                    skeleton.append((q, qk, p, span))
                    acc_by_q[q] = frozenset(
                        self._qmul(x, y) for x in acc for y in span
                    )
                    break

        # phase two: assemble invariant factors and pick exact generators
        remaining = list(skeleton)
        pillars: list[Pillar] = []
        chosen: set[int] = set()
        accumulated: frozenset[FormClass] = frozenset({ident})
        for j, tau in enumerate(self.invariant_factors, start=1):
            target: frozenset[FormClass] = frozenset({ident})
            for q, qk in _prime_power_parts(tau):
                for idx, (qq, qqk, _, span) in enumerate(remaining):
                    if qq == q and qqk == qk:
                        target = frozenset(self._qmul(x, y) for x in target for y in span)
                        del remaining[idx]
                        break
            pick = None
            for scanned, p in enumerate(candidates()):
                if scanned >= 3000:
                    break
                if p in chosen or qorders[p] != tau:
                    continue
                if self._span(images[p]) == target:
                    pick = p
                    break
            if pick is None:
                # fallback: smallest independent prime of the right order
                for p in candidates():
                    if p in chosen or qorders[p] != tau:
                        continue
                    if self._span(images[p]) & accumulated == {ident}:
                        pick = p
                        break
            chosen.add(pick)
            img = images[pick]
            accumulated = frozenset(
                self._qmul(x, y) for x in accumulated for y in self._span(img)
            )
            pillars.append(
                Pillar(j, pick, splitting_type(table.mod, pick), tau, table.class_of_prime(pick))
            )
        return tuple(pillars)

    def _validated_override(self, override: tuple[int, ...]) -> tuple[Pillar, ...]:
        table = self.table
        ident = table.coset_rep(table.identity)
        pillars = []
        accumulated: frozenset[FormClass] = frozenset({ident})
        for j, p in enumerate(override, start=1):
            if kronecker(table.mod, p) != 1:
                raise PillarConfigError(f"pillar prime {p} does not split")
            form = table.class_of_prime(p)
            img = table.coset_rep(form)
            order = table.quotient_order(img)
            if order == 1:
                raise PillarConfigError(f"pillar prime {p} has trivial quotient image")
            span = self._span(img)
            if span & accumulated != {ident}:
                raise PillarConfigError(f"pillar prime {p} is not independent of the others")
            accumulated = frozenset(self._qmul(x, y) for x in accumulated for y in span)
            pillars.append(Pillar(j, p, splitting_type(table.mod, p), order, form))
        if len(accumulated) != self.size:
            raise PillarConfigError(
                f"pillar images span {len(accumulated)} of {self.size} quotient classes"
            )
        return tuple(pillars)

    def coords(self, f: FormClass) -> tuple[int, ...]:
        """Exponents of the coset of f over the pillar images, one per factor."""
        rep = self.table.coset_rep(f)
        got = self._coords_cache.get(rep)
        if got is not None:
            return got
        for exps in itertools.product(*(range(pl.order) for pl in self.pillars)):
            acc = self.table.coset_rep(self.table.identity)
            for powers, e in zip(self._pillar_powers, exps):
                acc = self._qmul(acc, powers[e])
            if acc == rep:
                self._coords_cache[rep] = exps
                return exps
        raise AssertionError(f"{f} has no pillar coordinates")


def quotient_setup(
    table: ClassGroupTable, pillars: tuple[int, ...] | list[int] | None = None
) -> QuotientData:
    """Quotient presentation of Cl modulo 2-torsion with chosen pillar primes.

    With pillars=None the deterministic default rule applies; otherwise the
    given primes are used in order and validated.  When every class is
    2-torsion the pillar
    list is empty.
    """
    key = tuple(pillars) if pillars is not None else None
    return table.quotient(key)
