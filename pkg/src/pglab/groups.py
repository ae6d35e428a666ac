"""Finite binary groups as multiplication tables, 0-based, identity at index 0."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Iterable, Literal, Optional, Sequence

import numpy as np

from .config import Caps, DEFAULT_CAPS
from .errors import (
    NoIdentityAtZero,
    NotAssociative,
    NotAutomorphism,
    NotInvariant,
    NotLatinSquare,
    NotNormal,
    OrderCapExceeded,
)

SubgroupFilter = Literal["all", "normal", "theta_invariant", "theta_invariant_normal"]


@dataclass(frozen=True)
class FiniteGroup:
    """Group on {0,...,m-1} given by its multiplication table; 0 is the identity."""

    table: tuple[tuple[int, ...], ...]
    name: str = field(default="", compare=False)

    @property
    def order(self) -> int:
        return len(self.table)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    @cached_property
    def inverses(self) -> tuple[int, ...]:
        return tuple(row.index(0) for row in self.table)

    def inv(self, a: int) -> int:
        return self.inverses[a]

    def conj(self, a: int, x: int) -> int:
        """a·x·a⁻¹."""
        return self.table[self.table[a][x]][self.inverses[a]]

    @cached_property
    def np_table(self) -> np.ndarray:
        return np.asarray(self.table, dtype=np.int64)

    @cached_property
    def is_abelian(self) -> bool:
        t = self.table
        m = len(t)
        return all(t[i][j] == t[j][i] for i in range(m) for j in range(m))

    @cached_property
    def element_orders(self) -> tuple[int, ...]:
        out = []
        for a in range(self.order):
            x, k = a, 1
            while x != 0:
                x = self.table[x][a]
                k += 1
            out.append(k)
        return tuple(out)

    @cached_property
    def center(self) -> tuple[int, ...]:
        t = self.table
        m = self.order
        return tuple(a for a in range(m) if all(t[a][x] == t[x][a] for x in range(m)))

    def __repr__(self) -> str:
        label = self.name or f"order {self.order}"
        return f"FiniteGroup({label})"


def make_group(
    table: Sequence[Sequence[int]],
    name: str = "",
    caps: Caps = DEFAULT_CAPS,
    validate: bool = True,
) -> FiniteGroup:
    """Validate a multiplication table and wrap it as a FiniteGroup.

    Checks, in order: identity at index 0, Latin-square rows/columns, and
    associativity.  Each failure names the first violating row or triple.
    """
    rows = tuple(tuple(int(x) for x in row) for row in table)
    m = len(rows)
    if m == 0:
        raise NoIdentityAtZero("empty table has no identity row")
    if m > caps.order_cap:
        raise OrderCapExceeded(f"order {m} exceeds cap {caps.order_cap}", required=m)
    for i, row in enumerate(rows):
        if len(row) != m:
            raise ValueError(f"table is not square: row {i} has length {len(row)}")
        for x in row:
            if not 0 <= x < m:
                raise ValueError(f"entry {x} in row {i} out of range 0..{m - 1}")
    group = FiniteGroup(rows, name)
    if not validate:
        return group

    for i in range(m):
        if rows[0][i] != i:
            raise NoIdentityAtZero(f"0·{i} = {rows[0][i]}, expected {i}")
        if rows[i][0] != i:
            raise NoIdentityAtZero(f"{i}·0 = {rows[i][0]}, expected {i}")
    for i in range(m):
        if len(set(rows[i])) != m:
            seen: set[int] = set()
            for v in rows[i]:
                if v in seen:
                    raise NotLatinSquare(f"row {i} repeats {v}")
                seen.add(v)
        col = tuple(rows[j][i] for j in range(m))
        if len(set(col)) != m:
            seen = set()
            for v in col:
                if v in seen:
                    raise NotLatinSquare(f"column {i} repeats {v}")
                seen.add(v)
    t = group.np_table
    left = t[t, :]          # left[i,j,k] = (i·j)·k
    right = t[:, t]         # right[i,j,k] = i·(j·k)
    if not np.array_equal(left, right):
        i, j, k = (int(v) for v in np.argwhere(left != right)[0])
        raise NotAssociative(f"({i}·{j})·{k} = {left[i, j, k]} but {i}·({j}·{k}) = {right[i, j, k]}")
    return group


@dataclass(frozen=True)
class Automorphism:
    """A group automorphism stored as the image permutation."""

    perm: tuple[int, ...]

    def __call__(self, x: int) -> int:
        return self.perm[x]

    @property
    def degree(self) -> int:
        return len(self.perm)

    def compose(self, other: "Automorphism") -> "Automorphism":
        """self ∘ other (apply other first)."""
        return Automorphism(tuple(self.perm[y] for y in other.perm))

    def inverse(self) -> "Automorphism":
        inv = [0] * len(self.perm)
        for i, y in enumerate(self.perm):
            inv[y] = i
        return Automorphism(tuple(inv))

    def power(self, k: int) -> "Automorphism":
        if k < 0:
            return self.inverse().power(-k)
        acc = Automorphism.identity(len(self.perm))
        for _ in range(k):
            acc = self.compose(acc)
        return acc

    def is_identity(self) -> bool:
        return all(i == y for i, y in enumerate(self.perm))

    @staticmethod
    def identity(m: int) -> "Automorphism":
        return Automorphism(tuple(range(m)))


def make_automorphism(group: FiniteGroup, perm: Sequence[int]) -> Automorphism:
    """Validate that perm is a bijection respecting the group operation."""
    p = tuple(int(x) for x in perm)
    m = group.order
    if len(p) != m or sorted(p) != list(range(m)):
        raise NotAutomorphism("image list is not a permutation of the carrier")
    if p[0] != 0:
        raise NotAutomorphism(f"identity maps to {p[0]}, not 0")
    t = group.table
    for i in range(m):
        for j in range(m):
            if p[t[i][j]] != t[p[i]][p[j]]:
                raise NotAutomorphism(
                    f"perm[{i}·{j}] = {p[t[i][j]]} but perm[{i}]·perm[{j}] = {t[p[i]][p[j]]}"
                )
    return Automorphism(p)


@lru_cache(maxsize=None)
def _product_preimages(group: FiniteGroup) -> tuple[tuple[tuple[int, int], ...], ...]:
    """For each k, the pairs (i, j) with i·j = k."""
    m = group.order
    out: list[list[tuple[int, int]]] = [[] for _ in range(m)]
    for i in range(m):
        for j in range(m):
            out[group.table[i][j]].append((i, j))
    return tuple(tuple(v) for v in out)


@lru_cache(maxsize=None)
def _automorphisms_cached(group: FiniteGroup, cap: int) -> tuple[Automorphism, ...]:
    m = group.order
    if m > cap:
        raise OrderCapExceeded(
            f"automorphism search on order {m} exceeds cap {cap}", required=m
        )
    t = group.table
    orders = group.element_orders
    preimages = _product_preimages(group)
    results: list[Automorphism] = []
    img = [0] * m

    def consistent(k: int) -> bool:
        # check every product pair whose three participants are all assigned
        for i in range(k + 1):
            p = t[i][k]
            if p <= k and img[t[i][k]] != t[img[i]][img[k]]:
                return False
            q = t[k][i]
            if q <= k and img[q] != t[img[k]][img[i]]:
                return False
        for (i, j) in preimages[k]:
            if i <= k and j <= k and t[img[i]][img[j]] != img[k]:
                return False
        return True

    def extend(k: int, used: set[int]) -> None:
        if k == m:
            results.append(Automorphism(tuple(img)))
            return
        for y in range(m):
            if y in used or orders[y] != orders[k]:
                continue
            img[k] = y
            if consistent(k):
                used.add(y)
                extend(k + 1, used)
                used.remove(y)

    if m == 1:
        return (Automorphism((0,)),)
    extend(1, {0})
    return tuple(results)


def automorphisms(group: FiniteGroup, caps: Caps = DEFAULT_CAPS) -> list[Automorphism]:
    """All automorphisms, as permutations in lexicographic order.

    Backtracking over images of 1..m-1 with pruning on element orders and on
    every fully-assigned product triple.
    """
    return list(_automorphisms_cached(group, caps.automorphism_cap))


def inner_automorphism(group: FiniteGroup, a: int) -> Automorphism:
    """Conjugation x ↦ a·x·a⁻¹."""
    return Automorphism(tuple(group.conj(a, x) for x in range(group.order)))


def is_inner(group: FiniteGroup, alpha: Automorphism) -> Optional[int]:
    """The smallest a with alpha = conjugation by a, or None."""
    for a in range(group.order):
        if all(group.conj(a, x) == alpha(x) for x in range(group.order)):
            return a
    return None


@dataclass(frozen=True)
class Subgroup:
    """A subgroup given by its sorted member set."""

    members: tuple[int, ...]
    ambient: FiniteGroup

    @property
    def size(self) -> int:
        return len(self.members)

    def __contains__(self, x: int) -> bool:
        return x in set(self.members)

    def __repr__(self) -> str:
        return f"Subgroup({list(self.members)})"


def subgroup_closure(group: FiniteGroup, seed: Iterable[int]) -> frozenset[int]:
    """Smallest subgroup containing seed (product closure; inverses follow)."""
    elems = list(dict.fromkeys(seed))
    if not elems:
        elems = [0]
    known = set(elems)
    i = 0
    t = group.table
    while i < len(elems):
        a = elems[i]
        for b in elems[: i + 1]:
            for p in (t[a][b], t[b][a]):
                if p not in known:
                    known.add(p)
                    elems.append(p)
        i += 1
    if 0 not in known:  # powers of any element reach the identity
        known.add(0)
    return frozenset(known)


@lru_cache(maxsize=None)
def _all_subgroups(group: FiniteGroup) -> tuple[tuple[int, ...], ...]:
    """Every subgroup, found by closure-driven lattice search."""
    trivial = frozenset({0})
    found = {trivial}
    frontier = [trivial]
    while frontier:
        current = frontier.pop()
        for x in range(group.order):
            if x in current:
                continue
            bigger = subgroup_closure(group, tuple(current) + (x,))
            if bigger not in found:
                found.add(bigger)
                frontier.append(bigger)
    as_tuples = [tuple(sorted(s)) for s in found]
    as_tuples.sort(key=lambda s: (len(s), s))
    return tuple(as_tuples)


def is_normal_subgroup(group: FiniteGroup, members: Iterable[int]) -> bool:
    mset = set(members)
    return all(group.conj(g, h) in mset for g in range(group.order) for h in mset)


def enumerate_subgroups(
    group: FiniteGroup,
    filter: SubgroupFilter = "all",
    theta: Optional[Automorphism] = None,
    caps: Caps = DEFAULT_CAPS,
) -> list[Subgroup]:
    """Complete subgroup list, sorted by (size, members).

    theta_invariant keeps only subgroups with theta(H) = H setwise; the
    normal filters additionally require closure under conjugation.
    """
    if filter in ("theta_invariant", "theta_invariant_normal") and theta is None:
        raise ValueError(f"filter {filter!r} requires theta")
    out = []
    for members in _all_subgroups(group):
        if filter in ("normal", "theta_invariant_normal") and not is_normal_subgroup(
            group, members
        ):
            continue
        if filter in ("theta_invariant", "theta_invariant_normal"):
            assert theta is not None
            if frozenset(theta(x) for x in members) != frozenset(members):
                continue
        out.append(Subgroup(members, group))
    return out


def quotient_group(
    group: FiniteGroup, normal: Subgroup | Sequence[int], caps: Caps = DEFAULT_CAPS
) -> tuple[FiniteGroup, tuple[int, ...]]:
    """Quotient by a normal subgroup, plus the projection map.

    Cosets are relabelled in order of their smallest member, so the coset of
    0 (the subgroup itself) becomes index 0.
    """
    members = normal.members if isinstance(normal, Subgroup) else tuple(sorted(normal))
    if not is_normal_subgroup(group, members):
        raise NotNormal(f"{list(members)} is not normal")
    m = group.order
    cosets = sorted({tuple(sorted(group.mul(x, h) for h in members)) for x in range(m)})
    index = {c: i for i, c in enumerate(cosets)}
    proj = [0] * m
    for x in range(m):
        proj[x] = index[tuple(sorted(group.mul(x, h) for h in members))]
    k = len(cosets)
    table = [[0] * k for _ in range(k)]
    for i, ci in enumerate(cosets):
        for j, cj in enumerate(cosets):
            table[i][j] = proj[group.mul(ci[0], cj[0])]
    name = f"{group.name}/{list(members)}" if group.name else ""
    return make_group(table, name=name, caps=caps), tuple(proj)


def induced_automorphism(
    group: FiniteGroup,
    theta: Automorphism,
    normal: Subgroup | Sequence[int],
    caps: Caps = DEFAULT_CAPS,
) -> Automorphism:
    """The automorphism xK ↦ theta(x)K on the relabelled quotient."""
    members = normal.members if isinstance(normal, Subgroup) else tuple(sorted(normal))
    if frozenset(theta(x) for x in members) != frozenset(members):
        raise NotInvariant(f"theta does not fix {list(members)} setwise")
    quotient, proj = quotient_group(group, members, caps=caps)
    k = quotient.order
    perm = [-1] * k
    for x in range(group.order):
        i, j = proj[x], proj[theta(x)]
        if perm[i] == -1:
            perm[i] = j
        elif perm[i] != j:
            raise NotInvariant("induced map is not well defined")
    return Automorphism(tuple(perm))
