"""Shared enumeration and random-instance helpers for the test suite."""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations
from random import Random

from ararank.monomials import MonomialIdeal, SquarefreeMonomial, VarSet, minimalize
from ararank.simplicial import SimplicialComplex


def complex_from_masks(masks, n: int) -> SimplicialComplex:
    return SimplicialComplex.from_facets(VarSet(m, n) for m in masks)


@lru_cache(maxsize=None)
def covering_antichain_masks(n: int) -> tuple[tuple[int, ...], ...]:
    """All antichains of nonempty subsets of {1..n} whose union is {1..n};
    these are exactly the facet lists of complexes on the full vertex set."""
    full = (1 << n) - 1
    subsets = sorted(range(1, full + 1), key=lambda m: (m.bit_count(), m), reverse=True)
    out: list[tuple[int, ...]] = []

    def rec(idx: int, chosen: list[int], union: int) -> None:
        if idx == len(subsets):
            if union == full and chosen:
                out.append(tuple(chosen))
            return
        m = subsets[idx]
        rec(idx + 1, chosen, union)
        if all(m & ~c and c & ~m for c in chosen):
            chosen.append(m)
            rec(idx + 1, chosen, union | m)
            chosen.pop()

    rec(0, [], 0)
    return tuple(out)


@lru_cache(maxsize=None)
def generalized_tree_masks(n: int) -> tuple[tuple[int, ...], ...]:
    """Facet lists of every complex on exactly {1..n} that can be built from a
    simplex by repeated cone attachments over existing faces."""
    seen: set[tuple[int, ...]] = set()
    frontier: list[tuple[int, ...]] = []
    for size in range(1, n + 1):
        for s in combinations(range(1, n + 1), size):
            mask = 0
            for v in s:
                mask |= 1 << (v - 1)
            state = (mask,)
            if state not in seen:
                seen.add(state)
                frontier.append(state)
    results: set[tuple[int, ...]] = set()
    full_mask = (1 << n) - 1
    while frontier:
        state = frontier.pop()
        union = 0
        for f in state:
            union |= f
        if union == full_mask:
            results.add(state)
        faces: set[int] = set()
        for f in state:
            sub = f
            while True:
                faces.add(sub)
                if sub == 0:
                    break
                sub = (sub - 1) & f
        for v in range(1, n + 1):
            bit = 1 << (v - 1)
            if union & bit:
                continue
            for face in faces:
                nf = face | bit
                kept = tuple(sorted([g for g in state if g & ~nf] + [nf]))
                if kept not in seen:
                    seen.add(kept)
                    frontier.append(kept)
    return tuple(sorted(results))


def random_squarefree_ideal(
    rng: Random,
    n: int,
    max_gens: int = 5,
    min_degree: int = 1,
) -> MonomialIdeal:
    """Random nonzero squarefree monomial ideal on ambient n."""
    while True:
        count = rng.randint(1, max_gens)
        gens = []
        for _ in range(count):
            degree = rng.randint(min_degree, max(min_degree, n - 1))
            support = rng.sample(range(1, n + 1), degree)
            gens.append(SquarefreeMonomial.from_indices(support, n))
        ideal = minimalize(gens, ambient_n=n)
        if not ideal.is_zero:
            return ideal


def brute_force_minimal_transversals(edge_masks, n: int) -> list[int]:
    """Independent oracle: scan all 2^n subsets for hitting sets, then keep
    the inclusion-minimal ones."""
    hitting = [
        t for t in range(1 << n)
        if all(e & t for e in edge_masks)
    ]
    minimal = [
        t for t in hitting
        if not any(o != t and o & ~t == 0 for o in hitting)
    ]
    return sorted(minimal, key=lambda m: (m.bit_count(), VarSet(m, n).indices))
