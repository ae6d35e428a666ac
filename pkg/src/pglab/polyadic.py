"""n-ary groups: derived presentations, raw tables, skew elements, retracts.

A derived presentation twists a binary group by an automorphism theta and a
constant b, with f(x1..xn) = x1·theta(x2)·theta²(x3)···theta^(n-1)(xn)·b.
Raw tables store the full n-dimensional operation flat, last argument
varying fastest.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Optional, Sequence, Union

import numpy as np

from .config import Caps, DEFAULT_CAPS
from .errors import (
    ArityMismatch,
    BNotFixed,
    CostCapExceeded,
    NoSolution,
    NotAssociative,
    NotCentral,
    NotSolvable,
    NotUnique,
    NotAutomorphism,
    OrderCapExceeded,
    PowerCondition,
    RoundTripMismatch,
)
from .groups import (
    Automorphism,
    FiniteGroup,
    automorphisms,
    make_automorphism,
    make_group,
)


@dataclass(frozen=True)
class DerivedPresentation:
    base: FiniteGroup
    theta: Automorphism
    b: int


@dataclass(frozen=True)
class TablePresentation:
    order: int
    flat: tuple[int, ...]


Presentation = Union[DerivedPresentation, TablePresentation]


@dataclass(frozen=True)
class AxiomReport:
    associative: bool
    solvable: bool
    violations: tuple[tuple, ...]
    checked_exhaustively: bool

    @property
    def ok(self) -> bool:
        return self.associative and self.solvable


@dataclass(frozen=True)
class PolyadicGroup:
    """An n-ary group held either as a derived presentation or a raw table."""

    arity: int
    presentation: Presentation
    name: str = field(default="", compare=False)

    @property
    def order(self) -> int:
        if isinstance(self.presentation, DerivedPresentation):
            return self.presentation.base.order
        return self.presentation.order

    @property
    def is_derived(self) -> bool:
        return isinstance(self.presentation, DerivedPresentation)

    @cached_property
    def theta_pows(self) -> tuple[tuple[int, ...], ...]:
        """Permutations id, theta, theta², ..., theta^(n-1)."""
        pres = self.presentation
        assert isinstance(pres, DerivedPresentation)
        pows = [Automorphism.identity(self.order)]
        for _ in range(self.arity - 1):
            pows.append(pres.theta.compose(pows[-1]))
        return tuple(p.perm for p in pows)

    def eval(self, args: Sequence[int]) -> int:
        if len(args) != self.arity:
            raise ArityMismatch(f"expected {self.arity} arguments, got {len(args)}")
        pres = self.presentation
        if isinstance(pres, TablePresentation):
            m = pres.order
            idx = 0
            for x in args:
                idx = idx * m + x
            return pres.flat[idx]
        table = pres.base.table
        pows = self.theta_pows
        acc = args[0]
        for i in range(1, self.arity):
            acc = table[acc][pows[i][args[i]]]
        return table[acc][pres.b]

    @cached_property
    def flat_np(self) -> np.ndarray:
        """Flat operation table, index of (x1..xn) being sum of xi·m^(n-i)."""
        m, n = self.order, self.arity
        pres = self.presentation
        if isinstance(pres, TablePresentation):
            return np.asarray(pres.flat, dtype=np.int64)
        table = pres.base.np_table
        pows = self.theta_pows
        acc = np.arange(m).reshape((m,) + (1,) * (n - 1))
        for i in range(1, n):
            v = np.asarray(pows[i]).reshape((1,) * i + (m,) + (1,) * (n - 1 - i))
            acc = table[acc, v]
        acc = table[acc, pres.b]
        return np.ascontiguousarray(np.broadcast_to(acc, (m,) * n)).ravel()

    @cached_property
    def cube(self) -> np.ndarray:
        return self.flat_np.reshape((self.order,) * self.arity)

    @cached_property
    def edge_table(self) -> tuple[tuple[int, ...], ...]:
        """edge_table[x][y] = f(x, 0, ..., 0, y)."""
        view = self.cube[(slice(None),) + (0,) * (self.arity - 2) + (slice(None),)]
        return tuple(tuple(int(v) for v in row) for row in view)

    @cached_property
    def skew_table(self) -> tuple[int, ...]:
        if self.is_derived:
            return tuple(self._skew_closed_form(x) for x in range(self.order))
        return tuple(self.skew_oracle(x) for x in range(self.order))

    def _skew_closed_form(self, x: int) -> int:
        # skew(x) = b⁻¹ · theta^(n-2)(x⁻¹) ⋯ theta²(x⁻¹) · theta(x⁻¹)
        pres = self.presentation
        assert isinstance(pres, DerivedPresentation)
        group = pres.base
        pows = self.theta_pows
        xi = group.inv(x)
        acc = group.inv(pres.b)
        for k in range(self.arity - 2, 0, -1):
            acc = group.mul(acc, pows[k][xi])
        return acc

    def skew(self, x: int) -> int:
        return self.skew_table[x]

    def skew_oracle(self, x: int) -> int:
        """The unique y with f(x,...,x,y) = x, found by scanning all candidates."""
        hits = [
            y for y in range(self.order) if self.eval([x] * (self.arity - 1) + [y]) == x
        ]
        if not hits:
            raise NoSolution(f"no skew candidate for {x}; structure is corrupted")
        if len(hits) > 1:
            raise NotUnique(f"multiple skew candidates {hits} for {x}")
        return hits[0]

    def idempotents(self) -> tuple[int, ...]:
        return tuple(x for x in range(self.order) if self.eval([x] * self.arity) == x)

    def __repr__(self) -> str:
        if isinstance(self.presentation, DerivedPresentation):
            base = self.presentation.base.name or f"order {self.order}"
            return f"PolyadicGroup(n={self.arity}, der({base}, b={self.presentation.b}))"
        return f"PolyadicGroup(n={self.arity}, table, order {self.order})"


@lru_cache(maxsize=None)
def coordinate_arrays(m: int, n: int) -> tuple[np.ndarray, ...]:
    """Per-position coordinates of every flat index of an (m,)*n table."""
    idx = np.arange(m**n)
    return tuple((idx // m ** (n - 1 - i)) % m for i in range(n))


def _check_arity_order(n: int, m: int, caps: Caps) -> None:
    if n < 2:
        raise ValueError(f"arity must be at least 2, got {n}")
    if n > caps.arity_cap:
        raise OrderCapExceeded(f"arity {n} exceeds cap {caps.arity_cap}", required=n)
    if m > caps.order_cap:
        raise OrderCapExceeded(f"order {m} exceeds cap {caps.order_cap}", required=m)


def derive(
    base: FiniteGroup,
    theta: Automorphism,
    b: int,
    arity: int,
    caps: Caps = DEFAULT_CAPS,
    name: str = "",
    validate_theta: bool = False,
) -> PolyadicGroup:
    """Twist a binary group into an n-ary one.

    Requires theta(b) = b and theta^(n-1) = conjugation by b; associativity
    then holds by construction and is not re-verified.
    """
    _check_arity_order(arity, base.order, caps)
    if validate_theta:
        theta = make_automorphism(base, theta.perm)
    if theta(b) != b:
        raise BNotFixed(f"theta({b}) = {theta(b)} differs from {b}")
    power = theta.power(arity - 1)
    for x in range(base.order):
        if power(x) != base.conj(b, x):
            raise PowerCondition(
                f"theta^{arity - 1}({x}) = {power(x)} but {b}·{x}·{b}⁻¹ = {base.conj(b, x)}"
            )
    return PolyadicGroup(arity, DerivedPresentation(base, theta, b), name=name)


def derive_b(
    base: FiniteGroup, b: int, arity: int, caps: Caps = DEFAULT_CAPS, name: str = ""
) -> PolyadicGroup:
    """The b-derived operation x1·x2···xn·b for a central constant b."""
    if b not in base.center:
        raise NotCentral(f"{b} does not commute with every element")
    return derive(base, Automorphism.identity(base.order), b, arity, caps=caps, name=name)


def verify_table_axioms(
    arity: int,
    order: int,
    flat: Sequence[int],
    caps: Caps = DEFAULT_CAPS,
    exhaustive: bool = True,
    samples: int = 2000,
    seed: int = 0,
) -> AxiomReport:
    """Check n-ary associativity and per-position solvability of a raw table.

    The exhaustive mode refuses (CostCapExceeded) when m^(2n-1) exceeds the
    cost cap rather than silently sampling; the sampled mode is labelled.
    """
    m, n = order, arity
    flat_arr = np.asarray(flat, dtype=np.int64)
    if flat_arr.shape != (m**n,):
        raise ValueError(f"flat table must have m^n = {m ** n} entries")
    if flat_arr.size and (flat_arr.min() < 0 or flat_arr.max() >= m):
        raise ValueError("table entries out of range")
    cube = flat_arr.reshape((m,) * n)
    violations: list[tuple] = []

    if not exhaustive:
        rng = random.Random(seed)
        associative = True
        for _ in range(samples):
            args = [rng.randrange(m) for _ in range(2 * n - 1)]
            vals = set()
            for i in range(n):
                inner = cube[tuple(args[i : i + n])]
                outer = args[:i] + [int(inner)] + args[i + n :]
                vals.add(int(cube[tuple(outer)]))
            if len(vals) > 1:
                associative = False
                violations.append(("associativity", tuple(args)))
                break
        solvable, solve_viol = _check_solvability(cube, m, n)
        violations.extend(solve_viol)
        return AxiomReport(associative, solvable, tuple(violations), False)

    cost = m ** (2 * n - 1)
    if cost > caps.axiom_cost_cap:
        raise CostCapExceeded(
            f"exhaustive associativity needs {cost} evaluations, cap is "
            f"{caps.axiom_cost_cap}",
            required=cost,
        )

    small = cube.astype(np.int16)  # keeps the m^(2n-1) grids compact

    def nested(i: int) -> np.ndarray:
        # f applied at window position i of a (2n-1)-tuple, over the full grid
        axes = []
        for j in range(i):
            axes.append(np.arange(m).reshape((m,) + (1,) * (2 * n - 2 - j)))
        window = tuple(
            np.arange(m).reshape((1,) * (i + t) + (m,) + (1,) * (2 * n - 2 - i - t))
            for t in range(n)
        )
        inner = small[window]
        tail = []
        for j in range(i + n, 2 * n - 1):
            tail.append(np.arange(m).reshape((1,) * j + (m,) + (1,) * (2 * n - 2 - j)))
        return small[tuple(axes) + (inner,) + tuple(tail)]

    associative = True
    prev = nested(0)
    prev = np.broadcast_to(prev, (m,) * (2 * n - 1))
    for i in range(1, n):
        cur = np.broadcast_to(nested(i), (m,) * (2 * n - 1))
        if not np.array_equal(prev, cur):
            bad = np.argwhere(prev != cur)[0]
            violations.append(("associativity", i, tuple(int(v) for v in bad)))
            associative = False
            break
        prev = cur

    solvable, solve_viol = _check_solvability(cube, m, n)
    violations.extend(solve_viol)
    return AxiomReport(associative, solvable, tuple(violations), True)


def _check_solvability(cube: np.ndarray, m: int, n: int) -> tuple[bool, list[tuple]]:
    """Existence of solutions at each argument position (rows must be onto)."""
    violations: list[tuple] = []
    for i in range(n):
        rows = np.moveaxis(cube, i, -1).reshape(-1, m)
        hit = np.zeros((rows.shape[0], m), dtype=bool)
        np.put_along_axis(hit, rows, True, axis=1)
        ok = hit.all(axis=1)
        if not ok.all():
            row = int(np.argwhere(~ok)[0][0])
            missing = int(np.argwhere(~hit[row])[0][0])
            context = np.unravel_index(row, (m,) * (n - 1))
            violations.append(
                ("solvability", i, tuple(int(v) for v in context), missing)
            )
            return False, violations
    return True, violations


def verify_axioms(
    p: PolyadicGroup,
    caps: Caps = DEFAULT_CAPS,
    exhaustive: bool = True,
    samples: int = 2000,
    seed: int = 0,
) -> AxiomReport:
    """Axiom report for a table-form polyadic group."""
    if p.is_derived:
        raise ValueError("verify_axioms expects a table presentation")
    pres = p.presentation
    assert isinstance(pres, TablePresentation)
    return verify_table_axioms(
        p.arity, pres.order, pres.flat, caps=caps, exhaustive=exhaustive,
        samples=samples, seed=seed,
    )


def from_table(
    arity: int,
    order: int,
    flat: Sequence[int],
    caps: Caps = DEFAULT_CAPS,
    verify: bool = True,
    name: str = "",
) -> PolyadicGroup:
    """Wrap a raw flat table, verifying the n-ary group axioms by default."""
    _check_arity_order(arity, order, caps)
    flat_t = tuple(int(x) for x in flat)
    if verify:
        report = verify_table_axioms(arity, order, flat_t, caps=caps)
        if not report.associative:
            raise NotAssociative(f"table fails associativity: {report.violations[0]}")
        if not report.solvable:
            raise NotSolvable(f"table fails solvability: {report.violations[0]}")
    return PolyadicGroup(arity, TablePresentation(order, flat_t), name=name)


def as_table(p: PolyadicGroup) -> PolyadicGroup:
    """Forget the presentation, keeping only the raw operation table."""
    if not p.is_derived:
        return p
    flat = tuple(int(v) for v in p.flat_np)
    return PolyadicGroup(p.arity, TablePresentation(p.order, flat), name=p.name)


def retract(p: PolyadicGroup, a: int) -> tuple[FiniteGroup, tuple[int, ...]]:
    """The binary group x∗y = f(x, a,...,a, y), relabelled so skew(a) ↦ 0.

    skew(a) is the identity of the retract; the returned relabelling moves it
    to index 0 and keeps the remaining elements in ascending order.
    """
    m, n = p.order, p.arity
    abar = p.skew(a)
    relabel = [0] * m
    relabel[abar] = 0
    nxt = 1
    for x in range(m):
        if x != abar:
            relabel[x] = nxt
            nxt += 1
    unrelabel = [0] * m
    for x, i in enumerate(relabel):
        unrelabel[i] = x
    mid = [a] * (n - 2)
    table = [[0] * m for _ in range(m)]
    for i in range(m):
        for j in range(m):
            table[i][j] = relabel[p.eval([unrelabel[i]] + mid + [unrelabel[j]])]
    name = f"ret_{a}({p.name})" if p.name else ""
    group = make_group(table, name=name)
    return group, tuple(relabel)


@dataclass(frozen=True)
class HosszuGloskin:
    """A derived presentation over a relabelled retract, plus the relabelling."""

    group: PolyadicGroup
    relabel: tuple[int, ...]

    @property
    def base(self) -> FiniteGroup:
        pres = self.group.presentation
        assert isinstance(pres, DerivedPresentation)
        return pres.base

    @property
    def theta(self) -> Automorphism:
        pres = self.group.presentation
        assert isinstance(pres, DerivedPresentation)
        return pres.theta

    @property
    def b(self) -> int:
        pres = self.group.presentation
        assert isinstance(pres, DerivedPresentation)
        return pres.b

    @cached_property
    def unrelabel(self) -> tuple[int, ...]:
        out = [0] * len(self.relabel)
        for x, i in enumerate(self.relabel):
            out[i] = x
        return tuple(out)


def hosszu_gloskin(
    p: PolyadicGroup, a: int, caps: Caps = DEFAULT_CAPS
) -> HosszuGloskin:
    """Decompose f over the retract at a: twist phi(x) = f(skew(a), x, a,...,a)
    and constant c = f(skew(a),...,skew(a)).

    Validates the derived-form gates and that the rebuilt operation matches f
    on every tuple within the cost cap (sampled beyond).
    """
    m, n = p.order, p.arity
    group, relabel = retract(p, a)
    unrelabel = [0] * m
    for x, i in enumerate(relabel):
        unrelabel[i] = x
    abar = p.skew(a)
    tail = [a] * (n - 2)
    phi_perm = tuple(relabel[p.eval([abar, unrelabel[i]] + tail)] for i in range(m))
    c = relabel[p.eval([abar] * n)]
    try:
        phi = make_automorphism(group, phi_perm)
        derived = derive(group, phi, c, n, caps=caps, name=p.name and f"hg({p.name})")
    except (NotAutomorphism, BNotFixed, PowerCondition) as exc:
        raise RoundTripMismatch(f"retract twist is not a valid presentation: {exc}")

    relabel_arr = np.asarray(relabel)
    if m**n <= caps.axiom_cost_cap:
        ix = np.ix_(*([np.asarray(unrelabel)] * n))
        original = relabel_arr[p.cube[ix]].ravel()
        if not np.array_equal(original, derived.flat_np):
            bad = int(np.argwhere(original != derived.flat_np)[0][0])
            raise RoundTripMismatch(f"rebuilt operation differs at flat index {bad}")
    else:
        rng = random.Random(0)
        for _ in range(2000):
            args = [rng.randrange(m) for _ in range(n)]
            expect = relabel[p.eval(args)]
            got = derived.eval([relabel[x] for x in args])
            if expect != got:
                raise RoundTripMismatch(f"rebuilt operation differs at {tuple(args)}")
    return HosszuGloskin(derived, tuple(relabel))


def n_ary_identity(p: PolyadicGroup) -> Optional[int]:
    """The smallest element acting as identity in every slot, if any."""
    m, n = p.order, p.arity
    for a in range(m):
        good = True
        for i in range(n):
            for x in range(m):
                if p.eval([a] * i + [x] + [a] * (n - 1 - i)) != x:
                    good = False
                    break
            if not good:
                break
        if good:
            return a
    return None


def is_reduced(p: PolyadicGroup) -> bool:
    """Reduced means the operation comes from a plain group: an identity exists."""
    return n_ary_identity(p) is not None


def dornte_witness(p: PolyadicGroup) -> Optional[tuple]:
    """First violated skew identity, or None when all hold.

    The identities assert that skew(x) cancels x in every slot arrangement:
    f(x..x, skew, x..x, y) = y, f(y, x..x, skew, x..x) = y and
    f(x..x, skew, x..x) = x.
    """
    m, n = p.order, p.arity
    for x in range(m):
        sx = p.skew(x)
        for k in range(1, n + 1):
            if p.eval([x] * (k - 1) + [sx] + [x] * (n - k)) != x:
                return ("fixed", x, k)
        for y in range(m):
            for i in range(2, n + 1):
                if p.eval([x] * (i - 2) + [sx] + [x] * (n - i) + [y]) != y:
                    return ("left", x, y, i)
            for j in range(2, n + 1):
                if p.eval([y] + [x] * (n - j) + [sx] + [x] * (j - 2)) != y:
                    return ("right", x, y, j)
    return None


def dornte_check(p: PolyadicGroup) -> bool:
    return dornte_witness(p) is None


def derived_view(
    p: PolyadicGroup, caps: Caps = DEFAULT_CAPS
) -> tuple[PolyadicGroup, tuple[int, ...], tuple[int, ...]]:
    """(derived-form group, relabel, unrelabel) for any polyadic group.

    Derived inputs are returned as-is with identity relabellings; table
    inputs are canonicalized through the retract anchored at element 0.
    """
    if p.is_derived:
        ident = tuple(range(p.order))
        return p, ident, ident
    hg = _canonical_hg(p, caps)
    return hg.group, hg.relabel, hg.unrelabel


@lru_cache(maxsize=None)
def _canonical_hg(p: PolyadicGroup, caps: Caps) -> HosszuGloskin:
    return hosszu_gloskin(p, 0, caps=caps)


def hg_anchor0(p: PolyadicGroup, caps: Caps = DEFAULT_CAPS) -> HosszuGloskin:
    """The anchor-0 decomposition, the canonical presentation for hom work."""
    return _canonical_hg(p, caps)


def all_derived(
    base: FiniteGroup, arity: int, caps: Caps = DEFAULT_CAPS
) -> list[PolyadicGroup]:
    """Every valid twist (theta, b) of a base group at a given arity."""
    out = []
    for theta in automorphisms(base, caps=caps):
        power = theta.power(arity - 1)
        for b in range(base.order):
            if theta(b) != b:
                continue
            if any(power(x) != base.conj(b, x) for x in range(base.order)):
                continue
            out.append(derive(base, theta, b, arity, caps=caps, name=base.name))
    return out
