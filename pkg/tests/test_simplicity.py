import time

import pytest

from pglab.catalog import catalog_group
from pglab.errors import CostCapExceeded
from pglab.groups import Automorphism
from pglab.polyadic import dornte_check, verify_axioms, as_table
from pglab.simplicity import (
    census,
    is_gts,
    is_gts_star,
    is_theta_simple,
    is_uas,
    simplicity_report,
)


class TestThetaSimple:
    def test_prime_order_always(self):
        theta = Automorphism(tuple(2 * x % 5 for x in range(5)))
        assert is_theta_simple(catalog_group("Z5"), theta)

    def test_inversion_on_z9(self):
        theta = Automorphism(tuple((-x) % 9 for x in range(9)))
        assert not is_theta_simple(catalog_group("Z9"), theta)

    def test_swap_on_klein(self):
        assert not is_theta_simple(catalog_group("Z2xZ2"), Automorphism((0, 2, 1, 3)))


class TestUAS:
    def test_doubling_twist_is_uas(self, structs):
        flag, witness = is_uas(structs["T5"])
        assert flag and witness is None

    def test_inversion_twist_is_not(self, structs):
        flag, witness = is_uas(structs["T9"])
        assert not flag
        assert witness.classes == ((0, 3, 6), (1, 4, 7), (2, 5, 8))

    def test_one_element(self, structs):
        assert is_uas(structs["T1"])[0]

    def test_methods_agree_individually(self, structs):
        for name in ("T3", "T5", "T9", "V4swap", "T2b"):
            p = structs[name]
            assert is_uas(p, method="theorem")[0] == is_uas(p, method="oracle")[0]


class TestGTS:
    def test_inversion_twist(self, structs):
        assert is_gts(structs["T9"])[0]
        assert is_gts_star(structs["T9"])[0]

    def test_swap_twist_fails_with_diagonal(self, structs):
        flag, witness = is_gts(structs["V4swap"])
        assert not flag
        assert witness.members == (0, 3)

    def test_plain_sum_is_gts_not_star(self, structs):
        assert is_gts(structs["T3"])[0]
        flag, witness = is_gts_star(structs["T3"])
        assert not flag
        assert witness.members == (0,)

    def test_methods_agree_individually(self, structs):
        for name in ("T3", "T5", "T9", "V4swap", "T2b"):
            p = structs[name]
            assert is_gts(p, method="theorem")[0] == is_gts(p, method="oracle")[0]
            assert (
                is_gts_star(p, method="theorem")[0]
                == is_gts_star(p, method="oracle")[0]
            )


class TestReport:
    def test_inversion_twist(self, structs):
        rep = simplicity_report(structs["T9"])
        assert (rep.uas, rep.gts, rep.gts_star, rep.reduced) == (
            False, True, True, False,
        )
        assert rep.method == "both"
        assert "uas" in rep.witnesses

    def test_doubling_twist(self, structs):
        rep = simplicity_report(structs["T5"])
        assert (rep.uas, rep.gts, rep.gts_star, rep.reduced) == (
            True, True, True, False,
        )

    def test_shifted_sum(self, structs):
        rep = simplicity_report(structs["T2b"])
        assert (rep.uas, rep.gts, rep.gts_star, rep.reduced) == (
            True, True, True, False,
        )

    def test_degenerate_point(self, structs):
        rep = simplicity_report(structs["T1"])
        assert rep.degenerate
        assert rep.uas and rep.gts and rep.gts_star

    def test_implications_on_sample(self, corpus):
        for p in corpus[::11]:
            rep = simplicity_report(p)
            assert not rep.uas or rep.gts
            if rep.gts and not rep.gts_star:
                assert rep.reduced


class TestCensus:
    def test_two_elements_exhaustive(self):
        start = time.monotonic()
        entries = census(2, 3, "exhaustive")
        elapsed = time.monotonic() - start
        assert len(entries) == 2
        assert elapsed < 1.0
        for e in entries:
            assert dornte_check(e.representative)
            assert verify_axioms(as_table(e.representative)).ok

    def test_two_elements_derived_matches(self):
        derived = census(2, 3, "derived")
        exhaustive = census(2, 3, "exhaustive")
        assert len(derived) == len(exhaustive) == 2
        flags_d = sorted((e.report.reduced, e.report.gts_star) for e in derived)
        flags_e = sorted((e.report.reduced, e.report.gts_star) for e in exhaustive)
        assert flags_d == flags_e

    def test_one_element(self):
        assert len(census(1, 3, "derived")) == 1

    def test_three_elements_derived(self):
        entries = census(3, 3, "derived")
        # the shifted sums are all isomorphic to the plain sum; the inversion
        # twist stands alone
        assert len(entries) == 2
        assert sorted(e.multiplicity for e in entries) == [1, 3]

    def test_exhaustive_cap(self):
        with pytest.raises(CostCapExceeded):
            census(3, 3, "exhaustive")

    def test_reports_attached(self):
        entries = census(2, 3, "exhaustive")
        reduced_flags = sorted(e.report.reduced for e in entries)
        assert reduced_flags == [False, True]
