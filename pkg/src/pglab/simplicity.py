"""UAS / GTS / GTS* deciders and a small-order census of n-ary groups.

UAS: the only congruences are equality and the full relation.
GTS: every normal polyadic subgroup is a singleton or everything.
GTS*: the whole carrier is the only normal polyadic subgroup.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Literal, Optional

from .config import Caps, DEFAULT_CAPS
from .errors import CapExceeded, CostCapExceeded, MethodDisagreement
from .catalog import groups_of_order
from .congruence import Congruence, congruences_bruteforce, congruences_theorem
from .groups import Automorphism, FiniteGroup, enumerate_subgroups
from .polyadic import (
    DerivedPresentation,
    PolyadicGroup,
    all_derived,
    derived_view,
    from_table,
    is_reduced,
    verify_table_axioms,
)
from .substructures import (
    PolyadicSubgroup,
    enumerate_normal_polyadic,
)

Method = Literal["auto", "theorem", "oracle"]


def is_theta_simple(
    group: FiniteGroup, theta: Automorphism, caps: Caps = DEFAULT_CAPS
) -> bool:
    """No twist-invariant normal subgroup besides the trivial ones."""
    subs = enumerate_subgroups(group, "theta_invariant_normal", theta=theta, caps=caps)
    return all(s.size in (1, group.order) for s in subs)


def _middle_congruence(congs: list[Congruence]) -> Optional[Congruence]:
    for c in congs:
        if not c.is_diagonal() and not c.is_full():
            return c
    return None


def is_uas(
    p: PolyadicGroup, method: Method = "auto", caps: Caps = DEFAULT_CAPS
) -> tuple[bool, Optional[Congruence]]:
    """(flag, witness): witness is the smallest proper nontrivial congruence."""
    theorem_ans: Optional[tuple[bool, Optional[Congruence]]] = None
    oracle_ans: Optional[tuple[bool, Optional[Congruence]]] = None
    if method in ("auto", "theorem"):
        congs = congruences_theorem(p, caps)
        witness = _middle_congruence(congs)
        theorem_ans = (witness is None, witness)
        # cross-check against the base-group formulation
        view, _, _ = derived_view(p, caps)
        pres = view.presentation
        assert isinstance(pres, DerivedPresentation)
        if theorem_ans[0] != is_theta_simple(pres.base, pres.theta, caps):
            raise MethodDisagreement(
                "congruence scan and twist-simplicity of the base disagree"
            )
    if method == "oracle" or (method == "auto" and p.order <= caps.partition_cap):
        congs = congruences_bruteforce(p, caps)
        witness = _middle_congruence(congs)
        oracle_ans = (witness is None, witness)
    if theorem_ans is not None and oracle_ans is not None:
        if theorem_ans[0] != oracle_ans[0]:
            raise MethodDisagreement(
                f"UAS methods disagree: theorem={theorem_ans[0]} oracle={oracle_ans[0]}"
            )
    return theorem_ans if theorem_ans is not None else oracle_ans  # type: ignore[return-value]


def is_gts(
    p: PolyadicGroup, method: Method = "auto", caps: Caps = DEFAULT_CAPS
) -> tuple[bool, Optional[PolyadicSubgroup]]:
    """(flag, witness): witness is the smallest proper non-singleton subgroup."""
    subs = enumerate_normal_polyadic(p, strategy=method, caps=caps)
    witness = next((s for s in subs if s.size not in (1, p.order)), None)
    return witness is None, witness


def is_gts_star(
    p: PolyadicGroup, method: Method = "auto", caps: Caps = DEFAULT_CAPS
) -> tuple[bool, Optional[PolyadicSubgroup]]:
    """(flag, witness): witness is the smallest proper normal polyadic subgroup."""
    subs = enumerate_normal_polyadic(p, strategy=method, caps=caps)
    witness = next((s for s in subs if s.size != p.order), None)
    return witness is None, witness


@dataclass(frozen=True)
class SimplicityReport:
    uas: bool
    gts: bool
    gts_star: bool
    reduced: bool
    degenerate: bool
    method: str
    witnesses: dict = field(compare=False, default_factory=dict)

    def __post_init__(self):
        if self.uas and not self.gts:
            raise MethodDisagreement("UAS implies GTS; report violates it")
        if self.gts and not self.gts_star and not self.reduced:
            raise MethodDisagreement(
                "GTS without GTS* forces a reduced structure; report violates it"
            )


def simplicity_report(
    p: PolyadicGroup, method: Method = "auto", caps: Caps = DEFAULT_CAPS
) -> SimplicityReport:
    """Run all deciders, cross-check the implications, collect witnesses."""
    uas, uas_wit = is_uas(p, method=method, caps=caps)
    gts, gts_wit = is_gts(p, method=method, caps=caps)
    gts_star, star_wit = is_gts_star(p, method=method, caps=caps)
    reduced = is_reduced(p)
    ran_oracle = method == "oracle" or (
        method == "auto" and p.order <= min(caps.partition_cap, caps.subset_scan_cap)
    )
    witnesses = {}
    if uas_wit is not None:
        witnesses["uas"] = uas_wit
    if gts_wit is not None:
        witnesses["gts"] = gts_wit
    if star_wit is not None:
        witnesses["gts_star"] = star_wit
    return SimplicityReport(
        uas=uas,
        gts=gts,
        gts_star=gts_star,
        reduced=reduced,
        degenerate=p.order == 1,
        method="both" if ran_oracle and method != "oracle" else method,
        witnesses=witnesses,
    )


@dataclass(frozen=True)
class CensusEntry:
    representative: PolyadicGroup
    report: SimplicityReport
    multiplicity: int


def census(
    order: int,
    arity: int,
    mode: Literal["derived", "exhaustive"] = "derived",
    caps: Caps = DEFAULT_CAPS,
) -> list[CensusEntry]:
    """Isomorphism classes of n-ary groups of a given order.

    Derived mode twists every catalog base group of that order; exhaustive
    mode scans every operation table (tiny orders only) and keeps the ones
    passing the axiom check.  Derived mode is complete, so the two censuses
    must coincide whenever both are feasible.
    """
    from .morphisms import are_isomorphic

    candidates: list[PolyadicGroup] = []
    if mode == "derived":
        bases = groups_of_order(order)
        if not bases:
            raise CapExceeded(f"no catalog group of order {order}")
        for base in bases:
            candidates.extend(all_derived(base, arity, caps=caps))
    else:
        table_count = order ** (order**arity)
        if table_count > caps.census_exhaustive_cap:
            raise CostCapExceeded(
                f"exhaustive census would scan {table_count} tables, cap is "
                f"{caps.census_exhaustive_cap}",
                required=table_count,
            )
        for flat in itertools.product(range(order), repeat=order**arity):
            report = verify_table_axioms(arity, order, flat, caps=caps)
            if report.ok:
                candidates.append(from_table(arity, order, flat, caps=caps, verify=False))

    reps: list[PolyadicGroup] = []
    counts: list[int] = []
    for cand in candidates:
        for i, rep in enumerate(reps):
            if are_isomorphic(cand, rep, caps=caps) is not None:
                counts[i] += 1
                break
        else:
            reps.append(cand)
            counts.append(1)
    return [
        CensusEntry(rep, simplicity_report(rep, caps=caps), count)
        for rep, count in zip(reps, counts)
    ]
