import random
from math import gcd

import pytest

from aptgroup import (
    DiscriminantMismatchError,
    FormClass,
    Modulus,
    PillarConfigError,
    class_mod_two_torsion,
    class_of_prime,
    compose_forms,
    enumerate_class_group,
    form_pow,
    group_structure,
    kronecker,
    principal_form,
    quotient_setup,
    reduce_form,
    two_torsion,
)
from aptgroup.primes import primes_up_to


def equivalent_reduced_by_moves(a, b, c, coeff_cap):
    """All reduced forms reachable from (a, b, c) by the standard moves.

    Explores S: (a,b,c) -> (c,-b,a) and T^k: b -> b + 2ka within a
    coefficient bound; proper equivalence oracle independent of
    reduce_form's own descent.
    """
    seen = set()
    stack = [(a, b, c)]
    reduced = set()
    while stack:
        f = stack.pop()
        if f in seen:
            continue
        seen.add(f)
        fa, fb, fc = f
        if max(abs(fa), abs(fb), abs(fc)) > coeff_cap:
            continue
        if 0 < fa and -fa < fb <= fa <= fc and (fb >= 0 or (fa != fc and fa != abs(fb))):
            reduced.add(f)
        stack.append((fc, -fb, fa))
        for k in (-1, 1):
            stack.append((fa, fb + 2 * k * fa, fa * k * k + fb * k + fc))
    return reduced


class TestReduceForm:
    @pytest.mark.parametrize(
        "form,want",
        [((1, 1, 6), (1, 1, 6)), ((3, 1, 2), (2, -1, 3)), ((2, 1, 3), (2, 1, 3))],
    )
    def test_disc_minus_23(self, form, want):
        got = reduce_form(*form, disc=-23)
        assert (got.a, got.b, got.c) == want

    def test_orbit_oracle(self):
        orbit = equivalent_reduced_by_moves(3, 1, 2, coeff_cap=40)
        assert orbit == {(2, -1, 3)}

    def test_discriminant_mismatch(self):
        with pytest.raises(DiscriminantMismatchError):
            reduce_form(1, 1, 6, disc=-35)

    def test_idempotent(self):
        rng = random.Random(7)
        table = enumerate_class_group(Modulus(974))
        for f in table.forms:
            # unreduce by random moves, then reduce back
            a, b, c = f.a, f.b, f.c
            for _ in range(6):
                if rng.random() < 0.5:
                    a, b, c = c, -b, a
                else:
                    k = rng.choice((-2, -1, 1, 2))
                    a, b, c = a, b + 2 * k * a, a * k * k + b * k + c
            assert reduce_form(a, b, c) == f
            assert reduce_form(f.a, f.b, f.c) == f

    def test_formclass_rejects_unreduced(self):
        with pytest.raises(ValueError):
            FormClass(3, 1, 2)
        with pytest.raises(ValueError):
            FormClass(2, 2, 4)  # imprimitive


class TestCompose:
    def test_identity_law(self):
        table = enumerate_class_group(Modulus(23))
        e = table.identity
        for f in table.forms:
            assert compose_forms(e, f) == f

    def test_inverse_pair(self):
        got = compose_forms(FormClass(2, 1, 3), FormClass(2, -1, 3))
        assert got == principal_form(-23)

    def test_cyclic_three_squaring(self):
        # h(-23) = 3: the square of a generator must be its inverse
        g = FormClass(2, 1, 3)
        g2 = compose_forms(g, g)
        assert g2 == FormClass(2, -1, 3)
        assert g2 != g and compose_forms(g, g2) == principal_form(-23)

    def test_discriminant_mismatch(self):
        with pytest.raises(DiscriminantMismatchError):
            compose_forms(principal_form(-23), principal_form(-35))

    @pytest.mark.parametrize("m", [23, 35, 974, 111])
    def test_group_axioms(self, m):
        table = enumerate_class_group(Modulus(m))
        forms = table.forms
        rng = random.Random(m)
        fs = [rng.choice(forms) for _ in range(30)]
        for f, g, h in zip(fs, fs[1:], fs[2:]):
            fg = compose_forms(f, g)
            assert fg in forms  # closure onto reduced representatives
            assert fg == compose_forms(g, f)
            assert compose_forms(fg, h) == compose_forms(f, compose_forms(g, h))
            assert compose_forms(f, f.inverse()) == table.identity

    @pytest.mark.parametrize("m", [23, 35, 974])
    def test_orders_divide_h(self, m):
        table = enumerate_class_group(Modulus(m))
        for f in table.forms:
            assert table.h % table.order_of(f) == 0
        assert form_pow(table.forms[-1], table.h) == table.identity


class TestEnumerate:
    @pytest.mark.parametrize("m,h", [(35, 2), (23, 3), (974, 36)])
    def test_class_numbers(self, m, h):
        assert enumerate_class_group(Modulus(m)).h == h

    def test_structure_examples(self):
        assert [o for _, o in group_structure(enumerate_class_group(Modulus(23)))] == [3]
        assert [o for _, o in group_structure(enumerate_class_group(Modulus(974)))] == [12, 3]
        # h(-7) = 1: trivial group has empty structure
        assert group_structure(enumerate_class_group(Modulus(7))) == []

    def test_primary_structure(self):
        from aptgroup import primary_structure

        table = enumerate_class_group(Modulus(974))
        parts = primary_structure(table)
        assert [o for _, o in parts] == [4, 3, 3]
        for g, o in parts:
            assert table.order_of(g) == o
        assert [o for _, o in primary_structure(enumerate_class_group(Modulus(23)))] == [3]

    def test_structure_is_internal_direct_sum(self):
        from itertools import product as iproduct

        for m in (974, 105):
            table = enumerate_class_group(Modulus(m))
            seen = set()
            for exps in iproduct(*[range(n) for _, n in table.structure]):
                acc = table.identity
                for (g, _), e in zip(table.structure, exps):
                    acc = table.compose(acc, table.power(g, e))
                seen.add(acc)
            assert len(seen) == table.h
            for g, n in table.structure:
                assert table.order_of(g) == n

    def test_structure_orders_multiply_to_h(self):
        for m in (23, 35, 974, 101, 102):
            table = enumerate_class_group(Modulus(m))
            prod = 1
            for _, o in table.structure:
                prod *= o
            assert prod == table.h

    @pytest.mark.parametrize("m,size", [(35, 2), (23, 1), (974, 2)])
    def test_two_torsion_size(self, m, size):
        assert len(two_torsion(enumerate_class_group(Modulus(m)))) == size

    @pytest.mark.parametrize("m", [23, 35, 974, 105])
    def test_two_torsion_is_ambiguous_forms(self, m):
        table = enumerate_class_group(Modulus(m))
        ambiguous = [f for f in table.forms if f.b == 0 or f.a == f.b or f.a == f.c]
        assert set(two_torsion(table)) == set(ambiguous)


class TestClassOfPrime:
    def test_identity_for_L0_primes(self):
        table = enumerate_class_group(Modulus(23))
        for p in (59, 101):
            assert class_of_prime(table, p) == table.identity

    def test_high_order_class(self):
        table = enumerate_class_group(Modulus(974))
        assert table.order_of(class_of_prime(table, 3)) > 2

    def test_inert_maps_to_identity(self):
        table = enumerate_class_group(Modulus(23))
        assert class_of_prime(table, 5) == table.identity

    @pytest.mark.parametrize("m", [23, 35, 974])
    def test_conjugate_gives_inverse(self, m):
        mod = Modulus(m)
        table = enumerate_class_group(mod)
        from aptgroup import splitting_type

        for p in primes_up_to(100):
            if p == 2 or kronecker(mod, p) != 1:
                continue
            info = splitting_type(mod, p)
            f = class_of_prime(table, p)
            # build the conjugate ideal's form directly from the other root
            r = p - info.root
            b = 2 * r if mod.disc % 2 == 0 else (r if r % 2 else r - p)
            while b > p:
                b -= 2 * p
            while b <= -p:
                b += 2 * p
            conj = reduce_form(p, b, (b * b - mod.disc) // (4 * p))
            assert compose_forms(f, conj) == table.identity

    def test_membership_in_E_is_conjugation_invariant(self):
        # the 2-torsion test cannot depend on the choice of lifting
        mod = Modulus(974)
        table = enumerate_class_group(mod)
        for p in primes_up_to(300):
            if kronecker(mod, p) != 1:
                continue
            f = class_of_prime(table, p)
            assert table.in_two_torsion(f) == table.in_two_torsion(f.inverse())


class TestQuotient:
    def test_pillars_974(self):
        q = quotient_setup(enumerate_class_group(Modulus(974)))
        assert [(pl.p, pl.order) for pl in q.pillars] == [(5, 6), (41, 3)]
        assert list(q.invariant_factors) == [6, 3]

    def test_empty_when_E_is_everything(self):
        q = quotient_setup(enumerate_class_group(Modulus(35)))
        assert q.pillars == ()

    def test_pillar_over_two_for_23(self):
        q = quotient_setup(enumerate_class_group(Modulus(23)), (2,))
        assert [(pl.p, pl.order) for pl in q.pillars] == [(2, 3)]

    def test_default_pillar_for_23(self):
        q = quotient_setup(enumerate_class_group(Modulus(23)))
        assert [(pl.p, pl.order) for pl in q.pillars] == [(2, 3)]

    def test_override_rejects_dependent_pillars(self):
        table = enumerate_class_group(Modulus(974))
        with pytest.raises(PillarConfigError):
            quotient_setup(table, (5, 31))  # image of 31 lies in the span of 5

    def test_override_rejects_non_generating(self):
        table = enumerate_class_group(Modulus(974))
        with pytest.raises(PillarConfigError):
            quotient_setup(table, (37,))  # order-2 image cannot generate C6 x C3

    def test_override_rejects_inert(self):
        table = enumerate_class_group(Modulus(974))
        with pytest.raises(PillarConfigError):
            quotient_setup(table, (7,))

    def test_coords_roundtrip(self):
        table = enumerate_class_group(Modulus(974))
        q = quotient_setup(table)
        rng = random.Random(1)
        for f in rng.sample(table.forms, 12):
            exps = q.coords(f)
            acc = table.identity
            for pl, e in zip(q.pillars, exps):
                acc = compose_forms(acc, form_pow(pl.form, e))
            assert table.coset_rep(acc) == table.coset_rep(f)

    def test_class_mod_two_torsion(self):
        table = enumerate_class_group(Modulus(974))
        # p in L0 projects to the identity coset
        assert class_mod_two_torsion(table, 937) == table.coset_rep(table.identity)
        # the first pillar generates the C6 factor
        assert table.quotient_order(class_of_prime(table, 5)) == 6
