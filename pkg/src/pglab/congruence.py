"""Congruence lattices of polyadic groups.

Two independent routes: a partition scan testing compatibility with the
operation and with skew directly, and a subgroup scan of the direct square
G×G (a relation is a congruence exactly when, as a set of pairs, it is a
twist-invariant subgroup of the square containing the diagonal).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterator, Optional, Sequence

import numpy as np

from .config import Caps, DEFAULT_CAPS
from .errors import (
    IllDefined,
    MethodDisagreement,
    NotNormal,
    OrderCapExceeded,
)
from .groups import Automorphism, FiniteGroup, quotient_group
from .polyadic import (
    DerivedPresentation,
    PolyadicGroup,
    coordinate_arrays,
    derive,
    derived_view,
)
from .substructures import (
    PolyadicSubgroup,
    is_normal_polyadic,
    polyadic_coset,
)


@dataclass(frozen=True)
class Congruence:
    """An equivalence relation compatible with the operation and with skew."""

    ambient: PolyadicGroup
    classes: tuple[tuple[int, ...], ...]

    @cached_property
    def class_of(self) -> tuple[int, ...]:
        out = [0] * self.ambient.order
        for i, cls in enumerate(self.classes):
            for x in cls:
                out[x] = i
        return tuple(out)

    def related(self, x: int, y: int) -> bool:
        return self.class_of[x] == self.class_of[y]

    @cached_property
    def pairs(self) -> frozenset[tuple[int, int]]:
        out = set()
        for cls in self.classes:
            out.update(itertools.product(cls, cls))
        return frozenset(out)

    @property
    def num_classes(self) -> int:
        return len(self.classes)

    def is_diagonal(self) -> bool:
        return self.num_classes == self.ambient.order

    def is_full(self) -> bool:
        return self.num_classes == 1

    def __repr__(self) -> str:
        return f"Congruence({[list(c) for c in self.classes]})"


def congruence_from_classes(
    p: PolyadicGroup, classes: Sequence[Sequence[int]], validate: bool = True
) -> Congruence:
    canon = tuple(sorted(tuple(sorted(c)) for c in classes))
    flat = sorted(x for c in canon for x in c)
    if flat != list(range(p.order)):
        raise ValueError("classes must partition the carrier")
    cong = Congruence(p, canon)
    if validate:
        cls = np.asarray(cong.class_of)
        if not (_skew_compatible(p, cong.class_of) and _f_compatible(p, cls)):
            raise ValueError("partition is not a congruence")
    return cong


def _canonical_sort(congs: list[Congruence]) -> list[Congruence]:
    # finest first: the diagonal leads, the full relation closes the list
    congs.sort(key=lambda c: (-c.num_classes, c.classes))
    return congs


def _skew_compatible(p: PolyadicGroup, cls_of: Sequence[int]) -> bool:
    skew = p.skew_table
    image: dict[int, int] = {}
    for x in range(p.order):
        c = cls_of[x]
        s = cls_of[skew[x]]
        if image.setdefault(c, s) != s:
            return False
    return True


def _translation_compatible(p: PolyadicGroup, cls_of: Sequence[int]) -> bool:
    # necessary conditions only: one-sided translations with constant filler 0
    edge = p.edge_table
    m = p.order
    for y in range(m):
        row = edge[y]
        image: dict[int, int] = {}
        for x in range(m):
            c = cls_of[x]
            v = cls_of[row[x]]
            if image.setdefault(c, v) != v:
                return False
        image.clear()
        for x in range(m):
            c = cls_of[x]
            v = cls_of[edge[x][y]]
            if image.setdefault(c, v) != v:
                return False
    return True


def _f_compatible(p: PolyadicGroup, cls_arr: np.ndarray) -> bool:
    """Complete check: the class of f(x1..xn) is a function of the class tuple."""
    m, n = p.order, p.arity
    k = int(cls_arr.max()) + 1
    coords = coordinate_arrays(m, n)
    sig = cls_arr[coords[0]].astype(np.int64)
    for i in range(1, n):
        sig = sig * k + cls_arr[coords[i]]
    combined = sig * k + cls_arr[p.flat_np]
    return len(np.unique(combined)) == len(np.unique(sig))


def restricted_growth_strings(m: int) -> Iterator[tuple[int, ...]]:
    """All set partitions of {0..m-1} as class-index strings, lexicographic."""
    a = [0] * m
    while True:
        yield tuple(a)
        j = m - 1
        while j > 0:
            if a[j] <= max(a[:j]):
                break
            j -= 1
        if j == 0:
            return
        a[j] += 1
        for t in range(j + 1, m):
            a[t] = 0


@lru_cache(maxsize=16)
def _partitions_cached(m: int) -> tuple[tuple[int, ...], ...]:
    return tuple(restricted_growth_strings(m))


def _classes_from_string(cls_of: Sequence[int]) -> tuple[tuple[int, ...], ...]:
    k = max(cls_of) + 1
    out: list[list[int]] = [[] for _ in range(k)]
    for x, c in enumerate(cls_of):
        out[c].append(x)
    return tuple(tuple(c) for c in out)


def congruences_bruteforce(
    p: PolyadicGroup, caps: Caps = DEFAULT_CAPS
) -> list[Congruence]:
    """Scan every partition of the carrier for both compatibility clauses.

    Cheap necessary filters (skew images, one-sided translations) reject
    almost every partition before the complete class-signature check runs.
    """
    return list(_bruteforce_cached(p, caps))


@lru_cache(maxsize=None)
def _bruteforce_cached(p: PolyadicGroup, caps: Caps) -> tuple[Congruence, ...]:
    m = p.order
    if m > caps.partition_cap:
        raise OrderCapExceeded(
            f"partition scan on order {m} exceeds cap {caps.partition_cap}", required=m
        )
    out = []
    for cls_of in _partitions_cached(m):
        if not _skew_compatible(p, cls_of):
            continue
        if not _translation_compatible(p, cls_of):
            continue
        if not _f_compatible(p, np.asarray(cls_of)):
            continue
        out.append(Congruence(p, _classes_from_string(cls_of)))
    return tuple(_canonical_sort(out))


@lru_cache(maxsize=None)
def _square_subgroups_over_diagonal(group: FiniteGroup) -> tuple[frozenset[int], ...]:
    """Subgroups of G×G containing the diagonal, pairs packed as a·m + b."""
    m = group.order
    t = group.table

    def pair_mul(p: int, q: int) -> int:
        a, b = divmod(p, m)
        c, d = divmod(q, m)
        return t[a][c] * m + t[b][d]

    def closure(seed: frozenset[int]) -> frozenset[int]:
        elems = list(seed)
        known = set(elems)
        i = 0
        while i < len(elems):
            x = elems[i]
            for y in elems[: i + 1]:
                for z in (pair_mul(x, y), pair_mul(y, x)):
                    if z not in known:
                        known.add(z)
                        elems.append(z)
            i += 1
        return frozenset(known)

    diagonal = frozenset(x * m + x for x in range(m))
    found = {diagonal}
    frontier = [diagonal]
    while frontier:
        current = frontier.pop()
        for x in range(m * m):
            if x in current:
                continue
            bigger = closure(current | {x})
            if bigger not in found:
                found.add(bigger)
                frontier.append(bigger)
    return tuple(sorted(found, key=lambda s: (len(s), sorted(s))))


@lru_cache(maxsize=None)
def _theorem_partitions(
    group: FiniteGroup, theta: Automorphism, square_cap: int
) -> tuple[tuple[tuple[int, ...], ...], ...]:
    """Partitions of the twist-invariant over-diagonal subgroups of G×G."""
    m = group.order
    if m * m > square_cap:
        raise OrderCapExceeded(
            f"direct square of order {m * m} exceeds cap {square_cap}", required=m * m
        )
    out = []
    for pairs in _square_subgroups_over_diagonal(group):
        if any((theta(x // m) * m + theta(x % m)) not in pairs for x in pairs):
            continue
        classes: dict[int, list[int]] = {}
        for x in range(m):
            rep = min(y for y in range(m) if (x * m + y) in pairs)
            classes.setdefault(rep, []).append(x)
        out.append(tuple(tuple(sorted(c)) for _, c in sorted(classes.items())))
    return tuple(out)


def congruences_theorem(
    p: PolyadicGroup, caps: Caps = DEFAULT_CAPS
) -> list[Congruence]:
    """Enumerate congruences as over-diagonal twist-invariant pair subgroups.

    Containing the diagonal already forces symmetry and transitivity, so no
    equivalence check is needed; each subgroup converts straight into its
    partition.  The relabelling round-trips for table presentations.
    """
    view, relabel, unrelabel = derived_view(p, caps)
    pres = view.presentation
    assert isinstance(pres, DerivedPresentation)
    out = []
    for classes in _theorem_partitions(pres.base, pres.theta, caps.square_cap):
        original = tuple(
            sorted(tuple(sorted(unrelabel[x] for x in cls)) for cls in classes)
        )
        out.append(Congruence(p, original))
    return _canonical_sort(out)


@dataclass(frozen=True)
class KernelClass:
    """The congruence class of the base-group identity."""

    members: tuple[int, ...]
    b_related: bool
    polyadic_subgroup: bool


def kernel_class(
    r: Congruence, caps: Caps = DEFAULT_CAPS
) -> KernelClass:
    """Class of the identity; always a twist-invariant normal base subgroup.

    Also reports whether the constant b is related to the identity, which is
    exactly when the kernel class is itself a polyadic subgroup.
    """
    return _kernel_cached(r, caps)


@lru_cache(maxsize=None)
def _kernel_cached(r: Congruence, caps: Caps) -> KernelClass:
    p = r.ambient
    view, relabel, unrelabel = derived_view(p, caps)
    pres = view.presentation
    assert isinstance(pres, DerivedPresentation)
    base, theta, b = pres.base, pres.theta, pres.b
    identity_orig = unrelabel[0]
    members_orig = r.classes[r.class_of[identity_orig]]
    members = tuple(sorted(relabel[x] for x in members_orig))
    mset = set(members)
    for x in members:
        if theta(x) not in mset:
            raise IllDefined(f"kernel class not twist-invariant at {x}")
        for y in members:
            if base.mul(x, base.inv(y)) not in mset:
                raise IllDefined(f"kernel class not a subgroup at ({x},{y})")
    for g in range(base.order):
        for h in members:
            if base.conj(g, h) not in mset:
                raise IllDefined(f"kernel class not normal at ({g},{h})")
    b_related = r.related(identity_orig, unrelabel[b])
    from .substructures import is_polyadic_subgroup

    is_sub = is_polyadic_subgroup(p, members_orig)
    return KernelClass(members_orig, b_related, is_sub)


@dataclass(frozen=True)
class LatticeOps:
    """Meet/join of two congruences plus the commutation diagnostics."""

    meet: Congruence
    join: Congruence
    commutes: bool
    composition_is_product: bool
    kernel_identities: bool


def _pairs_product(p: PolyadicGroup, r: Congruence, q: Congruence) -> frozenset:
    view, relabel, unrelabel = derived_view(p)
    pres = view.presentation
    assert isinstance(pres, DerivedPresentation)
    base = pres.base
    out = set()
    for (a, b) in r.pairs:
        for (c, d) in q.pairs:
            out.add(
                (
                    unrelabel[base.mul(relabel[a], relabel[c])],
                    unrelabel[base.mul(relabel[b], relabel[d])],
                )
            )
    return frozenset(out)


def _pairs_to_classes(m: int, pairs: frozenset) -> tuple[tuple[int, ...], ...]:
    classes: dict[int, list[int]] = {}
    for x in range(m):
        rep = min(y for y in range(m) if (x, y) in pairs)
        classes.setdefault(rep, []).append(x)
    return tuple(tuple(sorted(c)) for _, c in sorted(classes.items()))


def lattice_ops(r: Congruence, q: Congruence, caps: Caps = DEFAULT_CAPS) -> LatticeOps:
    """Meet (intersection) and join (pair-set product) with diagnostics.

    Checks that the subgroup products commute, that relation composition
    equals the product, and the two kernel identities (kernel of the join is
    the product of kernels; kernel of the meet is their intersection).
    """
    p = r.ambient
    if q.ambient != p:
        raise ValueError("congruences live on different polyadic groups")
    m = p.order
    meet_classes: dict[tuple[int, int], list[int]] = {}
    for x in range(m):
        meet_classes.setdefault((r.class_of[x], q.class_of[x]), []).append(x)
    meet = Congruence(p, tuple(sorted(tuple(c) for c in meet_classes.values())))

    rq = _pairs_product(p, r, q)
    qr = _pairs_product(p, q, r)
    commutes = rq == qr
    compose = set()
    for x in range(m):
        for u in q.classes[q.class_of[x]]:
            compose.update((x, y) for y in r.classes[r.class_of[u]])
    composition_is_product = frozenset(compose) == rq

    join = Congruence(p, _pairs_to_classes(m, rq))

    kr = set(kernel_class(r, caps).members)
    kq = set(kernel_class(q, caps).members)
    view, relabel, unrelabel = derived_view(p, caps)
    pres = view.presentation
    assert isinstance(pres, DerivedPresentation)
    base = pres.base
    product_kernel = {
        unrelabel[base.mul(relabel[h1], relabel[h2])] for h1 in kr for h2 in kq
    }
    kernel_identities = (
        set(kernel_class(join, caps).members) == product_kernel
        and set(kernel_class(meet, caps).members) == (kr & kq)
    )
    return LatticeOps(meet, join, commutes, composition_is_product, kernel_identities)


def sim_h(
    p: PolyadicGroup, h: PolyadicSubgroup | Sequence[int], caps: Caps = DEFAULT_CAPS
) -> Congruence:
    """The congruence whose classes are the polyadic cosets of a normal h."""
    members = h.members if isinstance(h, PolyadicSubgroup) else tuple(sorted(h))
    if not is_normal_polyadic(p, members, caps=caps):
        raise NotNormal(f"{list(members)} is not a normal polyadic subgroup")
    classes = sorted({polyadic_coset(p, members, x) for x in range(p.order)})
    return Congruence(p, tuple(classes))


def is_normal_congruence(
    r: Congruence, caps: Caps = DEFAULT_CAPS
) -> Optional[int]:
    """The smallest witness a such that r is the coset congruence of a·[e].

    Conditions scanned: a is related to its skew, and the twisted conjugate
    theta⁻¹(x⁻¹·a)·x is related to a for every x.  On success the subgroup
    a·kernel is rebuilt and its coset congruence must equal r.
    """
    p = r.ambient
    view, relabel, unrelabel = derived_view(p, caps)
    pres = view.presentation
    assert isinstance(pres, DerivedPresentation)
    base, theta_inv = pres.base, pres.theta.inverse()
    skew = p.skew_table
    for a_orig in range(p.order):
        if not r.related(a_orig, skew[a_orig]):
            continue
        a = relabel[a_orig]
        ok = True
        for x in range(base.order):
            v = base.mul(theta_inv(base.mul(base.inv(x), a)), x)
            if not r.related(unrelabel[v], a_orig):
                ok = False
                break
        if not ok:
            continue
        kernel = kernel_class(r, caps)
        members_view = [relabel[x] for x in kernel.members]
        h_view = tuple(sorted(base.mul(a, x) for x in members_view))
        h_orig = tuple(sorted(unrelabel[x] for x in h_view))
        if sim_h(p, h_orig, caps).classes != r.classes:
            raise MethodDisagreement(
                f"witness {a_orig} satisfies both conditions but the rebuilt "
                f"subgroup {list(h_orig)} does not reproduce the congruence"
            )
        return a_orig
    return None


def normal_congruence_condition_direct(
    r: Congruence, a: int, caps: Caps = DEFAULT_CAPS
) -> bool:
    """Operation-level form of the second witness condition (arity >= 3)."""
    p = r.ambient
    n = p.arity
    if n < 3:
        raise ValueError("direct form needs arity at least 3")
    skew = p.skew_table
    for x in range(p.order):
        v = p.eval([skew[x]] + [x] * (n - 3) + [a, x])
        if not r.related(v, a):
            return False
    return True


def quotient_by_congruence(
    p: PolyadicGroup, r: Congruence, caps: Caps = DEFAULT_CAPS
) -> PolyadicGroup:
    """Quotient in derived form: base modulo kernel, induced twist and constant."""
    view, relabel, unrelabel = derived_view(p, caps)
    pres = view.presentation
    assert isinstance(pres, DerivedPresentation)
    base, theta, b = pres.base, pres.theta, pres.b
    kernel = kernel_class(r, caps)
    members_view = tuple(sorted(relabel[x] for x in kernel.members))
    quotient, proj = quotient_group(base, members_view, caps=caps)
    k = quotient.order
    perm = [-1] * k
    for x in range(base.order):
        i, j = proj[x], proj[theta(x)]
        if perm[i] == -1:
            perm[i] = j
        elif perm[i] != j:
            raise IllDefined("induced twist is not well defined")
    theta_r = Automorphism(tuple(perm))
    b_r = proj[b]
    return derive(quotient, theta_r, b_r, p.arity, caps=caps,
                  name=p.name and f"{p.name}/R")
