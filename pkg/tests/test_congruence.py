import itertools

import pytest

from pglab.congruence import (
    congruence_from_classes,
    congruences_bruteforce,
    congruences_theorem,
    is_normal_congruence,
    kernel_class,
    lattice_ops,
    normal_congruence_condition_direct,
    quotient_by_congruence,
    restricted_growth_strings,
    sim_h,
)
from pglab.groups import is_normal_subgroup
from pglab.substructures import enumerate_normal_polyadic


def is_congruence_by_definition(p, classes):
    """Oracle: both defining clauses checked tuple by tuple."""
    cls_of = {}
    for i, cls in enumerate(classes):
        for x in cls:
            cls_of[x] = i
    for x in range(p.order):
        if cls_of[p.skew(x)] != cls_of[p.skew(next(iter(classes[cls_of[x]])))]:
            return False
    for args in itertools.product(range(p.order), repeat=p.arity):
        for pos in range(p.arity):
            for y in classes[cls_of[args[pos]]]:
                other = args[:pos] + (y,) + args[pos + 1 :]
                if cls_of[p.eval(list(args))] != cls_of[p.eval(list(other))]:
                    return False
    return True


class TestPartitionGenerator:
    @pytest.mark.parametrize("m,count", [(1, 1), (2, 2), (3, 5), (4, 15), (5, 52)])
    def test_bell_counts(self, m, count):
        assert len(list(restricted_growth_strings(m))) == count

    def test_strings_are_valid(self):
        for rgs in restricted_growth_strings(4):
            assert rgs[0] == 0
            for i in range(1, 4):
                assert rgs[i] <= max(rgs[:i]) + 1


class TestBruteforce:
    def test_plain_sum_on_z4(self, structs):
        congs = congruences_bruteforce(structs["T4"])
        assert [len(kernel_class(c).members) for c in congs] == [1, 2, 4]

    def test_inversion_twist_on_z9(self, structs):
        congs = congruences_bruteforce(structs["T9"])
        assert [c.classes for c in congs][1] == ((0, 3, 6), (1, 4, 7), (2, 5, 8))
        assert len(congs) == 3

    def test_doubling_twist_on_z5(self, structs):
        congs = congruences_bruteforce(structs["T5"])
        assert len(congs) == 2
        assert congs[0].is_diagonal() and congs[1].is_full()

    def test_every_result_satisfies_definition(self, structs):
        for name in ("T3", "T4", "T2b", "V4swap"):
            p = structs[name]
            for c in congruences_bruteforce(p):
                assert is_congruence_by_definition(p, c.classes)

    def test_one_element(self, structs):
        assert len(congruences_bruteforce(structs["T1"])) == 1


class TestTheorem:
    def test_plain_sum_on_z4(self, structs):
        congs = congruences_theorem(structs["T4"])
        assert len(congs) == 3

    def test_plain_sum_on_z3(self, structs):
        congs = congruences_theorem(structs["T3"])
        assert len(congs) == 2

    def test_agreement_on_sample(self, corpus):
        for p in corpus[::13]:
            brute = [c.classes for c in congruences_bruteforce(p)]
            theorem = [c.classes for c in congruences_theorem(p)]
            assert brute == theorem

    def test_pairs_form_twist_subgroup(self, structs):
        # every congruence, viewed as pairs, is closed under the square
        # product and the componentwise twist
        p = structs["T9"]
        base = p.presentation.base
        theta = p.presentation.theta
        for c in congruences_bruteforce(p):
            pairs = c.pairs
            assert all((x, x) in pairs for x in range(9))
            assert all((theta(a), theta(b)) in pairs for a, b in pairs)
            for (a, b), (u, v) in itertools.product(pairs, repeat=2):
                assert (base.mul(a, u), base.mul(b, v)) in pairs

    def test_twist_saturation(self, small_corpus):
        for p in small_corpus[::5]:
            theta = p.presentation.theta
            for c in congruences_theorem(p):
                for x in range(p.order):
                    for y in range(p.order):
                        assert c.related(x, y) == c.related(theta(x), theta(y))


class TestKernelClass:
    def test_middle_congruence(self, structs):
        congs = congruences_bruteforce(structs["T4"])
        assert kernel_class(congs[1]).members == (0, 2)

    def test_diagonal(self, structs):
        congs = congruences_bruteforce(structs["T3"])
        assert kernel_class(congs[0]).members == (0,)

    def test_full(self, structs):
        congs = congruences_bruteforce(structs["T3"])
        assert kernel_class(congs[-1]).members == (0, 1, 2)

    def test_kernel_is_invariant_normal(self, corpus):
        for p in corpus[::19]:
            base = p.presentation.base
            theta = p.presentation.theta
            for c in congruences_theorem(p):
                members = kernel_class(c).members
                assert is_normal_subgroup(base, members)
                assert frozenset(theta(x) for x in members) == frozenset(members)

    def test_constant_relation_flags_subgroup(self, small_corpus):
        # the kernel class is a polyadic subgroup exactly when b relates to e
        from pglab.substructures import is_polyadic_subgroup

        for p in small_corpus[::3]:
            for c in congruences_bruteforce(p):
                kc = kernel_class(c)
                assert kc.polyadic_subgroup == kc.b_related
                assert kc.polyadic_subgroup == is_polyadic_subgroup(p, kc.members)


class TestLattice:
    def test_diagonal_is_identity(self, structs):
        congs = congruences_bruteforce(structs["T4"])
        diag, mid = congs[0], congs[1]
        ops = lattice_ops(diag, mid)
        assert ops.meet.classes == diag.classes
        assert ops.join.classes == mid.classes
        assert ops.commutes

    def test_chain_lattice(self, structs):
        congs = congruences_bruteforce(structs["T4"])
        ops = lattice_ops(congs[1], congs[2])
        assert ops.meet.classes == congs[1].classes
        assert ops.join.classes == congs[2].classes

    def test_diagnostics_hold_on_sample(self, corpus):
        for p in corpus[::29]:
            congs = congruences_theorem(p)
            for r, q in itertools.product(congs, repeat=2):
                ops = lattice_ops(r, q)
                assert ops.commutes
                assert ops.composition_is_product
                assert ops.kernel_identities

    def test_modular_law_on_sample(self, small_corpus):
        for p in small_corpus[::4]:
            congs = congruences_theorem(p)
            for r, q, t in itertools.product(congs, repeat=3):
                if not r.pairs <= t.pairs:
                    continue
                lhs = lattice_ops(r, lattice_ops(q, t).meet).join
                rhs = lattice_ops(lattice_ops(r, q).join, t).meet
                assert lhs.classes == rhs.classes


class TestSimH:
    def test_swap_diagonal(self, structs):
        cong = sim_h(structs["V4swap"], (0, 3))
        assert cong.classes == ((0, 3), (1, 2))

    def test_whole_subgroup(self, structs):
        cong = sim_h(structs["T9"], tuple(range(9)))
        assert cong.is_full()

    def test_trivial_subgroup(self, structs):
        cong = sim_h(structs["T3"], (0,))
        assert cong.is_diagonal()


class TestNormalCongruence:
    def test_coset_congruences_are_normal(self, corpus):
        for p in corpus[::27]:
            for h in enumerate_normal_polyadic(p):
                cong = sim_h(p, h)
                assert is_normal_congruence(cong) is not None

    def test_middle_of_inversion_twist_is_not(self, structs):
        congs = congruences_bruteforce(structs["T9"])
        assert is_normal_congruence(congs[1]) is None

    def test_full_relation_is_normal(self, structs):
        congs = congruences_bruteforce(structs["T9"])
        assert is_normal_congruence(congs[-1]) is not None

    def test_upward_closure(self, small_corpus):
        for p in small_corpus[::6]:
            congs = congruences_theorem(p)
            for r, q in itertools.product(congs, repeat=2):
                if r.pairs <= q.pairs and is_normal_congruence(r) is not None:
                    assert is_normal_congruence(q) is not None

    def test_direct_condition_agrees(self, small_corpus):
        for p in small_corpus[::6]:
            if p.arity < 3:
                continue
            theta_inv = p.presentation.theta.inverse()
            base = p.presentation.base
            for c in congruences_theorem(p):
                for a in range(p.order):
                    twist_form = all(
                        c.related(base.mul(theta_inv(base.mul(base.inv(x), a)), x), a)
                        for x in range(p.order)
                    )
                    assert twist_form == normal_congruence_condition_direct(c, a)


class TestQuotientByCongruence:
    def test_inversion_twist_middle(self, structs):
        congs = congruences_bruteforce(structs["T9"])
        q = quotient_by_congruence(structs["T9"], congs[1])
        assert q.order == 3
        assert q.presentation.theta.perm == (0, 2, 1)
        assert q.presentation.b == 0

    def test_diagonal_returns_same_presentation(self, structs):
        p = structs["T4"]
        congs = congruences_bruteforce(p)
        q = quotient_by_congruence(p, congs[0])
        assert q.presentation.base.table == p.presentation.base.table
        assert q.presentation.theta.perm == p.presentation.theta.perm
        assert q.presentation.b == p.presentation.b

    def test_full_relation_collapses(self, structs):
        congs = congruences_bruteforce(structs["T5"])
        q = quotient_by_congruence(structs["T5"], congs[-1])
        assert q.order == 1


class TestFromClasses:
    def test_accepts_valid(self, structs):
        cong = congruence_from_classes(structs["T4"], [[0, 2], [1, 3]])
        assert cong.num_classes == 2

    def test_rejects_incompatible(self, structs):
        with pytest.raises(ValueError):
            congruence_from_classes(structs["T4"], [[0, 1], [2, 3]])

    def test_rejects_non_partition(self, structs):
        with pytest.raises(ValueError):
            congruence_from_classes(structs["T4"], [[0, 1], [1, 2, 3]])
