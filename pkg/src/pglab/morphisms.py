"""Homomorphisms between polyadic groups and their right-translation splits.

Every polyadic homomorphism factors as an ordinary group homomorphism
followed by a right translation: psi(x) = phi(x) ∗ a, with two side
conditions tying a and phi to the twists of the two presentations.  Source
coordinates come from the group's own derived presentation (anchor-0
canonicalization for raw tables); target coordinates always use the
anchor-0 form so a split is reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Literal, Optional, Sequence

import numpy as np

from .config import Caps, DEFAULT_CAPS
from .errors import (
    ArityMismatch,
    ConditionViolated,
    CostCapExceeded,
    DecompositionFailed,
    MethodDisagreement,
)
from .groups import FiniteGroup
from .polyadic import (
    DerivedPresentation,
    HosszuGloskin,
    PolyadicGroup,
    coordinate_arrays,
    derived_view,
    hg_anchor0,
    n_ary_identity,
)


@dataclass(frozen=True)
class PolyadicHom:
    source: PolyadicGroup
    target: PolyadicGroup
    map: tuple[int, ...]

    def __call__(self, x: int) -> int:
        return self.map[x]

    def is_bijective(self) -> bool:
        return sorted(self.map) == list(range(len(self.map)))

    def __repr__(self) -> str:
        return f"PolyadicHom({list(self.map)})"


@dataclass(frozen=True)
class HomDecomposition:
    """psi = (right translation by a) ∘ phi, in presentation coordinates."""

    a: int
    phi: tuple[int, ...]


def is_polyadic_hom(
    psi: Sequence[int],
    p: PolyadicGroup,
    q: PolyadicGroup,
    caps: Caps = DEFAULT_CAPS,
) -> tuple[bool, Optional[tuple[int, ...]]]:
    """Exhaustive check of psi(f(xs)) = h(psi(xs)); returns first bad tuple."""
    if p.arity != q.arity:
        raise ArityMismatch(f"arities differ: {p.arity} vs {q.arity}")
    if len(psi) != p.order:
        raise ArityMismatch(f"map has {len(psi)} entries for order {p.order}")
    m, n = p.order, p.arity
    if m**n > caps.axiom_cost_cap:
        raise CostCapExceeded(
            f"hom check needs {m ** n} evaluations", required=m**n
        )
    psi_arr = np.asarray(psi, dtype=np.int64)
    lhs = psi_arr[p.flat_np]
    coords = coordinate_arrays(m, n)
    mq = q.order
    idx = psi_arr[coords[0]].astype(np.int64)
    for i in range(1, n):
        idx = idx * mq + psi_arr[coords[i]]
    rhs = q.flat_np[idx]
    if np.array_equal(lhs, rhs):
        return True, None
    flat_bad = int(np.argwhere(lhs != rhs)[0][0])
    witness = tuple(int(c[flat_bad]) for c in coords)
    return False, witness


def _target_eval(hg: HosszuGloskin, args: Sequence[int]) -> int:
    return hg.group.eval(list(args))


def _check_conditions(
    src_pres: DerivedPresentation,
    tgt: HosszuGloskin,
    a: int,
    phi: Sequence[int],
    arity: int,
) -> Optional[str]:
    """The two split conditions; returns the name of the first failure."""
    h_group = tgt.base
    eta = tgt.theta
    diag = _target_eval(tgt, [a] * arity)
    if diag != h_group.mul(phi[src_pres.b], a):
        return "anchor"
    theta = src_pres.theta
    for x in range(src_pres.base.order):
        if phi[theta(x)] != h_group.conj(a, eta(phi[x])):
            return "intertwine"
    return None


def _is_binary_hom(g: FiniteGroup, h: FiniteGroup, phi: Sequence[int]) -> bool:
    return all(
        phi[g.mul(i, j)] == h.mul(phi[i], phi[j])
        for i in range(g.order)
        for j in range(g.order)
    )


@lru_cache(maxsize=None)
def binary_homs(g: FiniteGroup, h: FiniteGroup) -> tuple[tuple[int, ...], ...]:
    """All group homomorphisms g → h by backtracking, lexicographic order."""
    mg, mh = g.order, h.order
    h_orders = h.element_orders
    g_orders = g.element_orders
    out: list[tuple[int, ...]] = []
    img = [0] * mg

    def consistent(k: int) -> bool:
        for i in range(k + 1):
            p = g.table[i][k]
            if p <= k and img[p] != h.table[img[i]][img[k]]:
                return False
            p = g.table[k][i]
            if p <= k and img[p] != h.table[img[k]][img[i]]:
                return False
        for i in range(k):
            for j in range(k):
                if g.table[i][j] == k and h.table[img[i]][img[j]] != img[k]:
                    return False
        return True

    def extend(k: int) -> None:
        if k == mg:
            out.append(tuple(img))
            return
        for y in range(mh):
            if g_orders[k] % h_orders[y] != 0:
                continue  # image order must divide source order
            img[k] = y
            if consistent(k):
                extend(k + 1)

    if mg == 1:
        return ((0,),)
    extend(1)
    return tuple(out)


def decompositions(
    psi: PolyadicHom, caps: Caps = DEFAULT_CAPS
) -> list[HomDecomposition]:
    """Every valid (a, phi) split of a validated homomorphism.

    phi must fix identities, which pins a = psi(e); the scan over all a
    exists to record that no second split survives the conditions.
    """
    p, q = psi.source, psi.target
    view, relabel_p, _ = derived_view(p, caps)
    src_pres = view.presentation
    assert isinstance(src_pres, DerivedPresentation)
    tgt = hg_anchor0(q, caps)
    h_group = tgt.base
    psi_t = [tgt.relabel[psi.map[x]] for x in range(p.order)]
    unrelabel_p = [0] * p.order
    for x, i in enumerate(relabel_p):
        unrelabel_p[i] = x
    out = []
    order = [psi_t[unrelabel_p[0]]]  # the split forced by phi fixing identities
    order += [a for a in range(q.order) if a != order[0]]
    for a in order:
        a_inv = h_group.inv(a)
        phi = tuple(h_group.mul(psi_t[x], a_inv) for x in unrelabel_p)
        if phi[0] != 0 or not _is_binary_hom(src_pres.base, h_group, phi):
            continue
        if _check_conditions(src_pres, tgt, a, phi, p.arity) is None:
            out.append(HomDecomposition(a, phi))
    return out


def decompose_hom(psi: PolyadicHom, caps: Caps = DEFAULT_CAPS) -> HomDecomposition:
    """The canonical split with a = psi(identity of the source presentation).

    phi has to fix identities, so a is forced; the split is validated
    against both side conditions before being returned.
    """
    p, q = psi.source, psi.target
    view, relabel_p, _ = derived_view(p, caps)
    src_pres = view.presentation
    assert isinstance(src_pres, DerivedPresentation)
    tgt = hg_anchor0(q, caps)
    h_group = tgt.base
    unrelabel_p = [0] * p.order
    for x, i in enumerate(relabel_p):
        unrelabel_p[i] = x
    psi_t = [tgt.relabel[psi.map[x]] for x in range(p.order)]
    a = psi_t[unrelabel_p[0]]
    a_inv = h_group.inv(a)
    phi = tuple(h_group.mul(psi_t[x], a_inv) for x in unrelabel_p)
    if not _is_binary_hom(src_pres.base, h_group, phi):
        raise DecompositionFailed(
            f"translated map of {list(psi.map)} is not a group homomorphism"
        )
    failure = _check_conditions(src_pres, tgt, a, phi, p.arity)
    if failure is not None:
        raise DecompositionFailed(
            f"canonical split of {list(psi.map)} fails the {failure} condition"
        )
    return HomDecomposition(a, phi)


def compose_hom(
    a: int,
    phi: Sequence[int],
    p: PolyadicGroup,
    q: PolyadicGroup,
    caps: Caps = DEFAULT_CAPS,
) -> PolyadicHom:
    """Build psi = (translate by a) ∘ phi after validating both conditions.

    a and phi are given in presentation coordinates: phi maps the source
    presentation base into the anchor-0 base of the target.
    """
    view, relabel_p, _ = derived_view(p, caps)
    src_pres = view.presentation
    assert isinstance(src_pres, DerivedPresentation)
    tgt = hg_anchor0(q, caps)
    h_group = tgt.base
    phi_t = tuple(int(x) for x in phi)
    if not _is_binary_hom(src_pres.base, h_group, phi_t):
        raise ConditionViolated("phi is not a group homomorphism")
    failure = _check_conditions(src_pres, tgt, a, phi_t, p.arity)
    if failure == "anchor":
        raise ConditionViolated(
            "anchor condition fails: h(a,...,a) differs from phi(b)∗a"
        )
    if failure == "intertwine":
        raise ConditionViolated(
            "intertwine condition fails: phi∘theta differs from I_a∘eta∘phi"
        )
    raw = [0] * p.order
    for x in range(p.order):
        raw[x] = tgt.unrelabel[h_group.mul(phi_t[relabel_p[x]], a)]
    psi = PolyadicHom(p, q, tuple(raw))
    ok, witness = is_polyadic_hom(psi.map, p, q, caps)
    if not ok:
        raise DecompositionFailed(
            f"valid (a, phi) produced a non-homomorphism at {witness}"
        )
    return psi


def _oracle_hom_maps(
    p: PolyadicGroup, q: PolyadicGroup, caps: Caps
) -> list[tuple[int, ...]]:
    """Vectorized scan of all |Q|^|P| candidate maps.

    Staged necessary filters (diagonal images, skew images, edge products)
    cut the pool to a handful before the complete per-map check runs.
    """
    mp, mq, n = p.order, q.order, p.arity
    total = mq**mp
    if total > caps.hom_oracle_cap:
        raise CostCapExceeded(
            f"oracle scan of {total} maps exceeds cap {caps.hom_oracle_cap}",
            required=total,
        )
    idx = np.arange(total)
    maps = np.empty((total, mp), dtype=np.int16)
    for i in range(mp):
        maps[:, i] = (idx // mq ** (mp - 1 - i)) % mq
    alive = np.ones(total, dtype=bool)

    p_diag = [p.eval([x] * n) for x in range(mp)]
    q_diag = np.asarray([q.eval([y] * n) for y in range(mq)])
    for x in range(mp):
        alive &= q_diag[maps[:, x]] == maps[:, p_diag[x]]
    p_skew = p.skew_table
    q_skew = np.asarray(q.skew_table)
    for x in range(mp):
        alive &= q_skew[maps[:, x]] == maps[:, p_skew[x]]
    p_edge = p.edge_table
    q_cube = q.cube
    mid = (n - 2)
    for x in range(mp):
        col_x = maps[:, x]
        for y in range(mp):
            target = maps[:, p_edge[x][y]]
            args = (col_x,) + (maps[:, 0],) * mid + (maps[:, y],)
            alive &= q_cube[args] == target
            if not alive.any():
                return []

    survivors = []
    for row in maps[alive]:
        candidate = tuple(int(v) for v in row)
        ok, _ = is_polyadic_hom(candidate, p, q, caps)
        if ok:
            survivors.append(candidate)
    survivors.sort()
    return survivors


def _theorem_hom_maps(
    p: PolyadicGroup, q: PolyadicGroup, caps: Caps
) -> list[tuple[int, ...]]:
    view, relabel_p, _ = derived_view(p, caps)
    src_pres = view.presentation
    assert isinstance(src_pres, DerivedPresentation)
    tgt = hg_anchor0(q, caps)
    h_group = tgt.base
    out = []
    for phi in binary_homs(src_pres.base, h_group):
        for a in range(q.order):
            if _check_conditions(src_pres, tgt, a, phi, p.arity) is not None:
                continue
            raw = tuple(
                tgt.unrelabel[h_group.mul(phi[relabel_p[x]], a)]
                for x in range(p.order)
            )
            out.append(raw)
    out.sort()
    return out


def enumerate_homs(
    p: PolyadicGroup,
    q: PolyadicGroup,
    strategy: Literal["auto", "theorem", "oracle"] = "auto",
    caps: Caps = DEFAULT_CAPS,
) -> list[PolyadicHom]:
    """All homomorphisms p → q, sorted by the map tuple.

    The theorem route crosses binary homomorphisms with valid anchors; the
    oracle scans raw maps.  Auto runs both when the scan fits the cap and
    insists they agree.
    """
    if p.arity != q.arity:
        raise ArityMismatch(f"arities differ: {p.arity} vs {q.arity}")
    theorem: Optional[list[tuple[int, ...]]] = None
    oracle: Optional[list[tuple[int, ...]]] = None
    if strategy in ("auto", "theorem"):
        theorem = _theorem_hom_maps(p, q, caps)
    if strategy == "oracle" or (
        strategy == "auto" and q.order**p.order <= caps.hom_oracle_cap
    ):
        oracle = _oracle_hom_maps(p, q, caps)
    if theorem is not None and oracle is not None and theorem != oracle:
        raise MethodDisagreement(
            f"hom enumerations disagree: theorem={theorem} oracle={oracle}"
        )
    maps = theorem if theorem is not None else (oracle or [])
    return [PolyadicHom(p, q, m) for m in maps]


def hom_compose(outer: PolyadicHom, inner: PolyadicHom) -> PolyadicHom:
    if inner.target != outer.source:
        raise ArityMismatch("middle structures differ")
    return PolyadicHom(
        inner.source, outer.target, tuple(outer.map[y] for y in inner.map)
    )


def _iso_invariants(p: PolyadicGroup) -> tuple:
    skew_fixed = sum(1 for x in range(p.order) if p.skew(x) == x)
    return (
        p.order,
        p.arity,
        n_ary_identity(p) is not None,
        skew_fixed,
        len(p.idempotents()),
    )


def are_isomorphic(
    p: PolyadicGroup, q: PolyadicGroup, caps: Caps = DEFAULT_CAPS
) -> Optional[PolyadicHom]:
    """The smallest bijective homomorphism in map order, or None.

    Cheap invariants (order, arity, identity presence, skew fixed points,
    idempotent count) prune before the bijection search; the search itself
    crosses bijective binary homomorphisms with valid anchors.
    """
    if p.arity != q.arity or p.order != q.order:
        return None
    if _iso_invariants(p) != _iso_invariants(q):
        return None
    view, relabel_p, _ = derived_view(p, caps)
    src_pres = view.presentation
    assert isinstance(src_pres, DerivedPresentation)
    tgt = hg_anchor0(q, caps)
    h_group = tgt.base
    best: Optional[tuple[int, ...]] = None
    full = list(range(p.order))
    for phi in binary_homs(src_pres.base, h_group):
        if sorted(phi) != full:
            continue
        for a in range(q.order):
            if _check_conditions(src_pres, tgt, a, phi, p.arity) is not None:
                continue
            raw = tuple(
                tgt.unrelabel[h_group.mul(phi[relabel_p[x]], a)]
                for x in range(p.order)
            )
            if best is None or raw < best:
                best = raw
    return PolyadicHom(p, q, best) if best is not None else None
