"""The standard sweep corpus: every catalog twist at small order and arity."""

from __future__ import annotations

from .catalog import catalog
from .config import Caps, DEFAULT_CAPS
from .groups import FiniteGroup
from .polyadic import PolyadicGroup, all_derived


def corpus_bases(max_order: int = 8) -> list[FiniteGroup]:
    return [g for g in catalog().values() if g.order <= max_order]


def standard_corpus(
    max_order: int = 8,
    arities: tuple[int, ...] = (3, 4, 5),
    caps: Caps = DEFAULT_CAPS,
) -> list[PolyadicGroup]:
    """All valid twists of catalog bases up to max_order at the given arities."""
    out: list[PolyadicGroup] = []
    for base in corpus_bases(max_order):
        for arity in arities:
            out.extend(all_derived(base, arity, caps=caps))
    return out
