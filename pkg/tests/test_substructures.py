import pytest

from pglab.catalog import catalog_group
from pglab.errors import NotNormal
from pglab.groups import enumerate_subgroups, is_normal_subgroup
from pglab.polyadic import n_ary_identity, verify_axioms
from pglab.substructures import (
    enumerate_normal_polyadic,
    enumerate_polyadic_subgroups,
    gu_group,
    is_normal_polyadic,
    is_polyadic_subgroup,
    polyadic_coset,
    quotient_polyadic,
    right_translate,
)


class TestGuGroup:
    def test_anchor_at_identity_recovers_base(self, structs):
        gu = gu_group(structs["T3"], 0)
        assert gu.group.table == catalog_group("Z3").table
        assert gu.psi_u.is_identity()
        assert gu.relabel == (0, 1, 2)

    def test_alternating_anchor_one(self, structs):
        gu = gu_group(structs["T4inv"], 1)
        # pre-relabel law: x∗y = x - 1 + y and psi(x) = 2 - x
        assert [gu.star(x, 2) for x in range(4)] == [1, 2, 3, 0]
        assert [gu.psi_raw(x) for x in range(4)] == [2, 1, 0, 3]

    def test_inversion_twist_anchor_zero(self, structs):
        gu = gu_group(structs["T9"], 0)
        assert gu.psi_u.perm == tuple((-x) % 9 for x in range(9))

    def test_pre_relabel_law(self, small_corpus):
        for p in small_corpus[::6]:
            base = p.presentation.base
            for u in range(p.order):
                gu = gu_group(p, u)
                assert gu.star(u, u) == u  # u is the twisted identity
                for x in range(p.order):
                    assert gu.star(x, gu.inv_u(x)) == u
                    # the twist is a homomorphism for the twisted product
                    for y in range(p.order):
                        assert gu.psi_raw(gu.star(x, y)) == gu.star(
                            gu.psi_raw(x), gu.psi_raw(y)
                        )

    def test_relabel_transports_to_base(self, structs):
        p = structs["V4swap"]
        for u in range(4):
            gu = gu_group(p, u)
            for x in range(4):
                for y in range(4):
                    lhs = gu.relabel[gu.star(x, y)]
                    assert lhs == gu.group.mul(gu.relabel[x], gu.relabel[y])


class TestEnumerateSubgroups:
    def test_plain_sum(self, structs):
        got = [s.members for s in enumerate_polyadic_subgroups(structs["T3"])]
        assert got == [(0,), (0, 1, 2)]

    def test_shifted_sum_only_whole(self, structs):
        got = [s.members for s in enumerate_polyadic_subgroups(structs["T2b"])]
        assert got == [(0, 1)]

    def test_alternating_sum_singletons(self, structs):
        got = [s.members for s in enumerate_polyadic_subgroups(structs["T4inv"])]
        assert got == [(0,), (1,), (2,), (3,), (0, 2), (1, 3), (0, 1, 2, 3)]

    def test_strategies_agree_on_corpus_sample(self, corpus):
        for p in corpus[::17]:
            oracle = [
                s.members for s in enumerate_polyadic_subgroups(p, strategy="oracle")
            ]
            theorem = [
                s.members for s in enumerate_polyadic_subgroups(p, strategy="theorem")
            ]
            assert oracle == theorem

    def test_witness_is_member(self, structs):
        for s in enumerate_polyadic_subgroups(structs["T4inv"], strategy="theorem"):
            assert s.witness_u in s.members

    def test_is_polyadic_subgroup_spot(self, structs):
        assert is_polyadic_subgroup(structs["T4inv"], (0, 2))
        assert not is_polyadic_subgroup(structs["T2b"], (0,))


class TestNormality:
    def test_whole_set_always_normal(self, structs):
        for p in structs.values():
            assert is_normal_polyadic(p, tuple(range(p.order)), debug=True)

    def test_diagonal_of_swap(self, structs):
        assert is_normal_polyadic(structs["V4swap"], (0, 3), debug=True)

    def test_alternating_singleton_not_normal(self, structs):
        assert not is_normal_polyadic(structs["T4inv"], (1,), debug=True)

    def test_inversion_twist_only_whole(self, structs):
        got = [s.members for s in enumerate_normal_polyadic(structs["T9"])]
        assert got == [tuple(range(9))]

    def test_swap_twist(self, structs):
        got = [s.members for s in enumerate_normal_polyadic(structs["V4swap"])]
        assert got == [(0, 3), (1, 2), (0, 1, 2, 3)]

    def test_plain_sum(self, structs):
        got = [s.members for s in enumerate_normal_polyadic(structs["T3"])]
        assert got == [(0,), (0, 1, 2)]

    def test_strategies_agree_on_corpus_sample(self, corpus):
        for p in corpus[::17]:
            oracle = [
                s.members for s in enumerate_normal_polyadic(p, strategy="oracle")
            ]
            theorem = [
                s.members for s in enumerate_normal_polyadic(p, strategy="theorem")
            ]
            assert oracle == theorem


class TestShiftCorrespondence:
    def test_both_directions(self, small_corpus):
        # base subgroup is twist-invariant normal exactly when its shift by u
        # is a psi_u-invariant normal subgroup of G_u
        for p in small_corpus[::4]:
            base = p.presentation.base
            theta = p.presentation.theta
            subgroups = [s.members for s in enumerate_subgroups(base)]
            for u in range(p.order):
                gu = gu_group(p, u)
                for members in subgroups:
                    invariant_normal = (
                        frozenset(theta(x) for x in members) == frozenset(members)
                        and is_normal_subgroup(base, members)
                    )
                    shifted = right_translate(base, members, u)
                    assert invariant_normal == _gu_invariant_normal(gu, shifted, p)

    def test_singleton_shift(self, structs):
        p = structs["T4inv"]
        base = p.presentation.base
        assert right_translate(base, (0, 2), 1) == (1, 3)


def _gu_invariant_normal(gu, members, p) -> bool:
    mset = set(members)
    if gu.u not in mset:
        return False
    for x in members:
        if gu.inv_u(x) not in mset:
            return False
        for y in members:
            if gu.star(x, y) not in mset:
                return False
    if frozenset(gu.psi_raw(x) for x in members) != mset:
        return False
    return all(
        gu.star(gu.star(gu.inv_u(x), h), x) in mset
        for x in range(p.order)
        for h in members
    )


class TestCosets:
    def test_swap_coset(self, structs):
        assert polyadic_coset(structs["V4swap"], (0, 3), 2) == (1, 2)

    def test_member_coset_is_subgroup(self, structs):
        p = structs["V4swap"]
        for h in enumerate_normal_polyadic(p):
            for x in h.members:
                assert polyadic_coset(p, h, x) == h.members

    def test_singleton_subgroup(self, structs):
        assert polyadic_coset(structs["T3"], (0,), 2) == (2,)

    def test_cosets_partition(self, corpus):
        for p in corpus[::23]:
            for h in enumerate_normal_polyadic(p):
                cosets = {polyadic_coset(p, h, x) for x in range(p.order)}
                assert sum(len(c) for c in cosets) == p.order
                assert all(len(c) == h.size for c in cosets)


class TestQuotient:
    def test_swap_quotient_is_reduced(self, structs):
        q = quotient_polyadic(structs["V4swap"], (0, 3))
        assert [list(c) for c in q.classes] == [[0, 3], [1, 2]]
        assert n_ary_identity(q.quotient) is not None
        assert verify_axioms(q.quotient).ok

    def test_whole_subgroup_gives_point(self, structs):
        q = quotient_polyadic(structs["T9"], tuple(range(9)))
        assert q.quotient.order == 1

    def test_trivial_subgroup_copies(self, structs):
        q = quotient_polyadic(structs["T3"], (0,))
        assert q.quotient.order == 3
        assert n_ary_identity(q.quotient) is not None

    def test_rejects_non_normal(self, structs):
        with pytest.raises(NotNormal):
            quotient_polyadic(structs["T4inv"], (1,))

    def test_reduced_on_corpus_sample(self, corpus):
        for p in corpus[::31]:
            for h in enumerate_normal_polyadic(p):
                q = quotient_polyadic(p, h)
                assert n_ary_identity(q.quotient) is not None


class TestSingletonImpliesReduced:
    def test_corpus_sample(self, corpus):
        for p in corpus[::9]:
            if any(s.size == 1 for s in enumerate_normal_polyadic(p)):
                assert n_ary_identity(p) is not None
