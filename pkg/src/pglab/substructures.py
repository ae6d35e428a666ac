"""Polyadic subgroups, normality, the u-anchored copies G_u, cosets, quotients.

For any u the map x ↦ x·u⁻¹ turns the twisted carrier (G, x∗y = x·u⁻¹·y,
identity u) back into the base group, so the relabelled copy reuses the base
table; only the transported automorphism differs.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Iterable, Literal, Optional, Sequence

import numpy as np

from .config import Caps, DEFAULT_CAPS
from .errors import (
    CostCapExceeded,
    IllDefined,
    MethodDisagreement,
    NotNormal,
    OrderCapExceeded,
)
from .groups import (
    Automorphism,
    FiniteGroup,
    enumerate_subgroups,
    induced_automorphism,
    inner_automorphism,
    quotient_group,
    _all_subgroups,
)
from .polyadic import (
    DerivedPresentation,
    PolyadicGroup,
    TablePresentation,
    coordinate_arrays,
    derived_view,
    n_ary_identity,
)

Strategy = Literal["auto", "oracle", "theorem"]


@dataclass(frozen=True)
class PolyadicSubgroup:
    """A subset closed under the n-ary operation and under skew."""

    members: tuple[int, ...]
    ambient: PolyadicGroup
    witness_u: Optional[int] = field(default=None, compare=False)

    @property
    def size(self) -> int:
        return len(self.members)

    def __repr__(self) -> str:
        return f"PolyadicSubgroup({list(self.members)})"


@dataclass(frozen=True)
class GuGroup:
    """The copy of the base group with identity u and its twist automorphism.

    Pre-relabel law: x∗y = x·u⁻¹·y, inverse u·x⁻¹·u, twist
    psi_u(x) = u·theta(x)·theta(u⁻¹).  After relabelling by x ↦ x·u⁻¹ the
    carrier is the base group itself and psi_u becomes conjugation-by-u
    composed with theta.
    """

    u: int
    group: FiniteGroup
    psi_u: Automorphism
    relabel: tuple[int, ...]
    unrelabel: tuple[int, ...]
    base: FiniteGroup = field(compare=False, repr=False)
    theta: Automorphism = field(compare=False, repr=False)

    def star(self, x: int, y: int) -> int:
        return self.base.mul(self.base.mul(x, self.base.inv(self.u)), y)

    def inv_u(self, x: int) -> int:
        return self.base.mul(self.base.mul(self.u, self.base.inv(x)), self.u)

    def psi_raw(self, x: int) -> int:
        return self.base.mul(
            self.base.mul(self.u, self.theta(x)), self.theta(self.base.inv(self.u))
        )


def gu_group(p: PolyadicGroup, u: int, caps: Caps = DEFAULT_CAPS) -> GuGroup:
    """Build G_u for the (canonicalized) presentation of p."""
    view, relabel, unrelabel = derived_view(p, caps)
    pres = view.presentation
    assert isinstance(pres, DerivedPresentation)
    base, theta = pres.base, pres.theta
    u_view = relabel[u]
    re = tuple(base.mul(x, base.inv(u_view)) for x in range(base.order))
    un = [0] * base.order
    for x, i in enumerate(re):
        un[i] = x
    psi = Automorphism(
        tuple(base.conj(u_view, theta(i)) for i in range(base.order))
    )
    return GuGroup(
        u=u_view, group=base, psi_u=psi, relabel=re, unrelabel=tuple(un),
        base=base, theta=theta,
    )


def right_translate(group: FiniteGroup, members: Iterable[int], u: int) -> tuple[int, ...]:
    """Elementwise product {s·u}; a plain set shift, not a polyadic coset."""
    return tuple(sorted(group.mul(s, u) for s in members))


def _closed_under_op(p: PolyadicGroup, members: Sequence[int]) -> bool:
    mask = np.zeros(p.order, dtype=bool)
    mask[list(members)] = True
    idx = np.asarray(members)
    sub = p.cube[np.ix_(*([idx] * p.arity))]
    return bool(mask[sub].all())


def is_polyadic_subgroup(p: PolyadicGroup, members: Sequence[int]) -> bool:
    """Nonempty, closed under the operation and under skew."""
    if len(members) == 0:
        return False
    mset = set(members)
    if any(p.skew(x) not in mset for x in members):
        return False
    return _closed_under_op(p, tuple(members))


def _oracle_subset_scan(p: PolyadicGroup, caps: Caps) -> list[tuple[int, ...]]:
    m = p.order
    if m > caps.subset_scan_cap:
        raise OrderCapExceeded(
            f"subset scan on order {m} exceeds cap {caps.subset_scan_cap}", required=m
        )
    skew = p.skew_table
    diag = tuple(p.eval([x] * p.arity) for x in range(m))
    out = []
    for mask in range(1, 1 << m):
        members = tuple(i for i in range(m) if mask >> i & 1)
        mset = set(members)
        if any(skew[x] not in mset or diag[x] not in mset for x in members):
            continue
        if _closed_under_op(p, members):
            out.append(members)
    out.sort(key=lambda s: (len(s), s))
    return out


def _closure_under_f_skew(p: PolyadicGroup, seed: Iterable[int]) -> frozenset[int]:
    current = set(seed)
    while True:
        nxt = set(current)
        nxt.update(p.skew(x) for x in current)
        idx = np.asarray(sorted(current))
        nxt.update(int(v) for v in np.unique(p.cube[np.ix_(*([idx] * p.arity))]))
        if nxt == current:
            return frozenset(current)
        current = nxt


def _oracle_closure_search(p: PolyadicGroup, caps: Caps) -> list[tuple[int, ...]]:
    # for carriers past the subset-scan cap: grow closures from seeds
    m = p.order
    if m**p.arity > caps.axiom_cost_cap:
        raise CostCapExceeded(
            f"closure search needs about {m ** p.arity} evaluations", required=m**p.arity
        )
    found: set[frozenset[int]] = set()
    frontier: list[frozenset[int]] = []
    for x in range(m):
        c = _closure_under_f_skew(p, {x})
        if c not in found:
            found.add(c)
            frontier.append(c)
    while frontier:
        s = frontier.pop()
        for x in range(m):
            if x in s:
                continue
            c = _closure_under_f_skew(p, s | {x})
            if c not in found:
                found.add(c)
                frontier.append(c)
    out = [tuple(sorted(s)) for s in found]
    out.sort(key=lambda s: (len(s), s))
    return out


def _theorem_subgroups(
    p: PolyadicGroup, caps: Caps
) -> dict[tuple[int, ...], int]:
    """Member set → smallest witness u, via invariant subgroups of each G_u.

    A subset is a polyadic subgroup exactly when, for some u inside it, it is
    a psi_u-invariant subgroup of G_u whose anchor constant f(u,...,u) stays
    inside.  The last gate matters: without it the u-anchored copy need not
    be closed under f.
    """
    view, relabel, unrelabel = derived_view(p, caps)
    pres = view.presentation
    assert isinstance(pres, DerivedPresentation)
    base, theta = pres.base, pres.theta
    m = base.order
    subgroups = _all_subgroups(base)
    found: dict[tuple[int, ...], int] = {}
    for u in range(m):
        twist = tuple(base.conj(u, theta(x)) for x in range(m))
        cu = view.eval([u] * view.arity)
        for members in subgroups:
            mset = frozenset(members)
            if frozenset(twist[x] for x in members) != mset:
                continue
            h = right_translate(base, members, u)
            if cu not in set(h):
                continue
            h_orig = tuple(sorted(unrelabel[x] for x in h))
            u_orig = unrelabel[u]
            if h_orig not in found or found[h_orig] > u_orig:
                found[h_orig] = u_orig
    return found


def enumerate_polyadic_subgroups(
    p: PolyadicGroup, strategy: Strategy = "auto", caps: Caps = DEFAULT_CAPS
) -> list[PolyadicSubgroup]:
    """All polyadic subgroups, sorted by (size, members).

    The oracle strategy scans subsets for closure under f and skew; the
    theorem strategy unions invariant subgroups over the copies G_u.  In
    auto mode both run (caps permitting) and must agree.
    """
    return list(_subgroups_cached(p, strategy, caps))


@lru_cache(maxsize=None)
def _subgroups_cached(
    p: PolyadicGroup, strategy: Strategy, caps: Caps
) -> tuple[PolyadicSubgroup, ...]:
    theorem: Optional[dict[tuple[int, ...], int]] = None
    oracle: Optional[list[tuple[int, ...]]] = None
    if strategy in ("auto", "theorem"):
        theorem = _theorem_subgroups(p, caps)
    if strategy == "oracle" or (strategy == "auto" and p.order <= caps.subset_scan_cap):
        if p.order <= caps.subset_scan_cap:
            oracle = _oracle_subset_scan(p, caps)
        else:
            oracle = _oracle_closure_search(p, caps)
    if theorem is not None and oracle is not None:
        if sorted(theorem) != sorted(oracle):
            raise MethodDisagreement(
                f"polyadic subgroup strategies differ: theorem={sorted(theorem)} "
                f"oracle={sorted(oracle)}"
            )
    members_list = sorted(theorem) if theorem is not None else list(oracle or [])
    members_list.sort(key=lambda s: (len(s), s))
    return tuple(
        PolyadicSubgroup(
            members, p, witness_u=theorem.get(members) if theorem else None
        )
        for members in members_list
    )


def _normal_by_definition(p: PolyadicGroup, members: Sequence[int]) -> bool:
    """Direct check: f(skew(x), x,...,x, h, x) stays inside, all x and h."""
    if p.arity < 3:
        return _normal_by_twist(p, members)
    mset = set(members)
    n = p.arity
    for x in range(p.order):
        pad = [x] * (n - 3)
        sx = p.skew(x)
        for h in members:
            if p.eval([sx] + pad + [h, x]) not in mset:
                return False
    return True


def _normal_by_twist(
    p: PolyadicGroup, members: Sequence[int], caps: Caps = DEFAULT_CAPS
) -> bool:
    """Presentation check: theta⁻¹(x⁻¹·h)·x stays inside, all x and h."""
    view, relabel, _ = derived_view(p, caps)
    pres = view.presentation
    assert isinstance(pres, DerivedPresentation)
    base, theta_inv = pres.base, pres.theta.inverse()
    mem = [relabel[h] for h in members]
    mset = set(mem)
    for x in range(base.order):
        xi = base.inv(x)
        for h in mem:
            if base.mul(theta_inv(base.mul(xi, h)), x) not in mset:
                return False
    return True


def is_normal_polyadic(
    p: PolyadicGroup,
    h: PolyadicSubgroup | Sequence[int],
    debug: bool = False,
    caps: Caps = DEFAULT_CAPS,
) -> bool:
    """Normality of a polyadic subgroup via the twist criterion.

    With debug=True the direct definitional check runs as well and the two
    answers must agree.
    """
    members = h.members if isinstance(h, PolyadicSubgroup) else tuple(sorted(h))
    by_twist = _normal_by_twist(p, members, caps)
    if debug and p.arity >= 3:
        by_def = _normal_by_definition(p, members)
        if by_def != by_twist:
            raise MethodDisagreement(
                f"normality criteria disagree on {list(members)}: "
                f"definition={by_def} twist={by_twist}"
            )
    return by_twist


def _thm_conditions_hold(
    view: PolyadicGroup, base: FiniteGroup, theta: Automorphism,
    members: tuple[int, ...], u: int,
) -> bool:
    """Full normal-subgroup conditions at anchor u, checked explicitly.

    (1) the set is a psi_u-invariant normal subgroup of G_u,
    (2) theta⁻¹(x⁻¹·u)·x lands inside for every x,
    (3) the anchor constant f(u,...,u) lands inside.
    """
    mset = set(members)
    if u not in mset:
        return False
    inv_u = base.inv(u)
    # subgroup of G_u: closed under x·u⁻¹·y and u-inverses
    for x in members:
        if base.mul(base.mul(u, base.inv(x)), u) not in mset:
            return False
        for y in members:
            if base.mul(base.mul(x, inv_u), y) not in mset:
                return False
    # psi_u-invariance
    if frozenset(
        base.mul(base.mul(u, theta(x)), theta(inv_u)) for x in members
    ) != mset:
        return False
    # normality inside G_u: u·x⁻¹·h·u⁻¹·x stays inside
    for x in range(base.order):
        xi = base.inv(x)
        for h in members:
            v = base.mul(base.mul(base.mul(base.mul(u, xi), h), inv_u), x)
            if v not in mset:
                return False
    # condition (2)
    theta_inv = theta.inverse()
    for x in range(base.order):
        if base.mul(theta_inv(base.mul(base.inv(x), u)), x) not in mset:
            return False
    # condition (3): anchor constant
    return view.eval([u] * view.arity) in mset


def _theorem_normal_subgroups(
    p: PolyadicGroup, caps: Caps
) -> dict[tuple[int, ...], int]:
    """Candidates from the quotient-twist scan, verified at some anchor u.

    Generator: for every theta-invariant normal K of the base with induced
    automorphism inner via the coset of w, the shift K·w⁻¹ is a candidate.
    Every candidate is then confirmed by the explicit anchored conditions;
    the anchor-constant gate rejects shifts that are not f-closed.
    """
    view, relabel, unrelabel = derived_view(p, caps)
    pres = view.presentation
    assert isinstance(pres, DerivedPresentation)
    base, theta = pres.base, pres.theta
    m = base.order
    candidates: set[tuple[int, ...]] = set()
    for k_sub in enumerate_subgroups(base, "theta_invariant_normal", theta=theta):
        quotient, proj = quotient_group(base, k_sub.members)
        theta_k = induced_automorphism(base, theta, k_sub.members)
        inner_cosets = [
            c for c in range(quotient.order)
            if inner_automorphism(quotient, c).perm == theta_k.perm
        ]
        if not inner_cosets:
            continue
        for w in range(m):
            if proj[w] in inner_cosets:
                candidates.add(right_translate(base, k_sub.members, base.inv(w)))
    found: dict[tuple[int, ...], int] = {}
    for members in candidates:
        for u in members:
            if _thm_conditions_hold(view, base, theta, members, u):
                h_orig = tuple(sorted(unrelabel[x] for x in members))
                found[h_orig] = unrelabel[u]
                break
    return found


def enumerate_normal_polyadic(
    p: PolyadicGroup, strategy: Strategy = "auto", caps: Caps = DEFAULT_CAPS
) -> list[PolyadicSubgroup]:
    """All normal polyadic subgroups, sorted by (size, members)."""
    return list(_normal_cached(p, strategy, caps))


@lru_cache(maxsize=None)
def _normal_cached(
    p: PolyadicGroup, strategy: Strategy, caps: Caps
) -> tuple[PolyadicSubgroup, ...]:
    theorem: Optional[dict[tuple[int, ...], int]] = None
    oracle: Optional[list[tuple[int, ...]]] = None
    if strategy in ("auto", "theorem"):
        theorem = _theorem_normal_subgroups(p, caps)
    if strategy == "oracle" or (strategy == "auto" and p.order <= caps.subset_scan_cap):
        subs = (
            _oracle_subset_scan(p, caps)
            if p.order <= caps.subset_scan_cap
            else _oracle_closure_search(p, caps)
        )
        oracle = [s for s in subs if _normal_by_definition(p, s)]
    if theorem is not None and oracle is not None:
        if sorted(theorem) != sorted(oracle):
            raise MethodDisagreement(
                f"normal-subgroup strategies differ: theorem={sorted(theorem)} "
                f"oracle={sorted(oracle)}"
            )
    members_list = sorted(theorem) if theorem is not None else list(oracle or [])
    members_list.sort(key=lambda s: (len(s), s))
    return tuple(
        PolyadicSubgroup(
            members, p, witness_u=theorem.get(members) if theorem else None
        )
        for members in members_list
    )


def polyadic_coset(
    p: PolyadicGroup, h: PolyadicSubgroup | Sequence[int], x: int
) -> tuple[int, ...]:
    """{f(x, h1, ..., h_{n-1})}: the equivalence class of x modulo h."""
    members = h.members if isinstance(h, PolyadicSubgroup) else tuple(sorted(h))
    idx = np.asarray(members)
    block = p.cube[x][np.ix_(*([idx] * (p.arity - 1)))]
    return tuple(int(v) for v in np.unique(block))


@dataclass(frozen=True)
class PolyadicQuotient:
    """Cosets of a normal polyadic subgroup with the induced operation."""

    classes: tuple[tuple[int, ...], ...]
    quotient: PolyadicGroup

    @cached_property
    def class_of(self) -> tuple[int, ...]:
        out = [0] * sum(len(c) for c in self.classes)
        for i, cls in enumerate(self.classes):
            for x in cls:
                out[x] = i
        return tuple(out)


def quotient_polyadic(
    p: PolyadicGroup,
    h: PolyadicSubgroup | Sequence[int],
    caps: Caps = DEFAULT_CAPS,
) -> PolyadicQuotient:
    """Quotient by a normal polyadic subgroup; the result is always reduced."""
    members = h.members if isinstance(h, PolyadicSubgroup) else tuple(sorted(h))
    if not is_normal_polyadic(p, members, caps=caps):
        raise NotNormal(f"{list(members)} is not a normal polyadic subgroup")
    m, n = p.order, p.arity
    classes = sorted({polyadic_coset(p, members, x) for x in range(m)})
    cls_of = np.zeros(m, dtype=np.int64)
    for i, cls in enumerate(classes):
        cls_of[list(cls)] = i
    k = len(classes)
    # well-definedness: the class of f must be a function of the class tuple
    sig = cls_of[_coord(m, n, 0)]
    for i in range(1, n):
        sig = sig * k + cls_of[_coord(m, n, i)]
    vals = cls_of[p.flat_np]
    combined = sig * k + vals
    if len(np.unique(combined)) != len(np.unique(sig)):
        raise IllDefined("quotient operation depends on representatives")
    flat_q = np.full(k**n, -1, dtype=np.int64)
    flat_q[sig] = vals
    quotient = PolyadicGroup(
        n, TablePresentation(k, tuple(int(v) for v in flat_q)), name=p.name and f"{p.name}/H"
    )
    if n_ary_identity(quotient) is None:
        raise IllDefined("quotient lacks an identity element; expected reduced")
    return PolyadicQuotient(tuple(classes), quotient)


def _coord(m: int, n: int, i: int) -> np.ndarray:
    return coordinate_arrays(m, n)[i]
