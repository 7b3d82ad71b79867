"""Simplicial complexes, the face/ideal correspondence, duality and peeling,
plus an exact Betti-number oracle from vertex-restricted reduced homology.

A complex is stored by its facets over an explicit vertex set, which may be a
proper subset of the ambient indices (peeling shrinks the vertex set while
keeping the ambient fixed).  Homology ranks are computed exactly: fraction-free
integer elimination in characteristic 0, modular elimination for GF(p).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Iterable, Iterator

from .monomials import (
    MonomialIdeal,
    ParseError,
    SquarefreeMonomial,
    VarSet,
    _iter_bits,
    _minimal_transversal_masks,
    _parse_header,
    _parse_var_token,
    _strip_comment,
    height,
    indeg,
    minimalize,
    prime_decomposition,
)

MAX_HOMOLOGY_VERTICES = 16


@dataclass(frozen=True)
class SimplicialComplex:
    """Facet list over a vertex set; facets are pairwise incomparable and
    every vertex of the vertex set lies in some facet."""

    facets: tuple[VarSet, ...]
    vertex_set: VarSet

    def __post_init__(self) -> None:
        if not self.facets:
            raise ValueError("a complex needs at least one facet")
        union = 0
        for f in self.facets:
            if f.ambient_n != self.vertex_set.ambient_n:
                raise ValueError("facet ambient does not match vertex set ambient")
            if f.is_empty:
                raise ValueError("facets must be nonempty")
            union |= f.mask
        if union != self.vertex_set.mask:
            raise ValueError("vertex set must equal the union of the facets")
        masks = [f.mask for f in self.facets]
        if len(set(masks)) != len(masks):
            raise ValueError("duplicate facets")
        for f in self.facets:
            for g in self.facets:
                if f is not g and f.mask & ~g.mask == 0:
                    raise ValueError(f"facets not incomparable: {f} inside {g}")
        keys = [f.sort_key() for f in self.facets]
        if keys != sorted(keys):
            raise ValueError("facets not in canonical order; use from_facets()")

    @classmethod
    def from_facets(cls, facets: Iterable[VarSet]) -> SimplicialComplex:
        """Build from any facet list: drops faces contained in others and
        canonicalises the order."""
        fl = list(facets)
        if not fl:
            raise ValueError("a complex needs at least one facet")
        n = fl[0].ambient_n
        masks = {f.mask for f in fl}
        maximal = [m for m in masks if not any(o != m and m & ~o == 0 for o in masks)]
        maximal.sort(key=lambda m: (m.bit_count(), VarSet(m, n).indices))
        union = 0
        for m in maximal:
            union |= m
        return cls(tuple(VarSet(m, n) for m in maximal), VarSet(union, n))

    @property
    def ambient_n(self) -> int:
        return self.vertex_set.ambient_n

    @property
    def num_vertices(self) -> int:
        return len(self.vertex_set)

    @property
    def dim(self) -> int:
        return max(len(f) for f in self.facets) - 1

    @property
    def is_simplex(self) -> bool:
        return len(self.facets) == 1

    def has_face(self, face: VarSet) -> bool:
        return any(face.mask & ~f.mask == 0 for f in self.facets)

    def face_masks(self) -> set[int]:
        """All faces as masks, including the empty face."""
        faces: set[int] = set()
        for f in self.facets:
            if f.mask in faces:
                continue
            sub = f.mask
            while True:
                faces.add(sub)
                if sub == 0:
                    break
                sub = (sub - 1) & f.mask
        return faces

    def faces(self) -> list[VarSet]:
        n = self.ambient_n
        return sorted((VarSet(m, n) for m in self.face_masks()), key=VarSet.sort_key)

    def __str__(self) -> str:
        return "<" + ", ".join(str(f) for f in self.facets) + ">"


def stanley_reisner_ideal(complex_: SimplicialComplex) -> MonomialIdeal:
    """Ideal of minimal nonfaces, computed as minimal transversals of the
    facet complements within the vertex set.  A simplex gives the zero ideal."""
    if complex_.is_simplex:
        return MonomialIdeal((), complex_.ambient_n)
    v = complex_.vertex_set.mask
    n = complex_.ambient_n
    edges = [v & ~f.mask for f in complex_.facets]
    gens = [
        SquarefreeMonomial(VarSet(m, n))
        for m in _minimal_transversal_masks(edges, n)
    ]
    return MonomialIdeal(tuple(gens), n)


def complex_of_ideal(ideal: MonomialIdeal) -> SimplicialComplex:
    """Complex on the full ambient vertex set whose nonface ideal is ``ideal``.

    Facets are the complements of the minimal primes.  Requires indeg >= 2 so
    that every ambient vertex is a face; the zero ideal gives the simplex.
    """
    n = ideal.ambient_n
    if ideal.is_zero:
        full = VarSet.full(n)
        return SimplicialComplex((full,), full)
    if indeg(ideal) < 2:
        raise ValueError("ideal has a variable generator; no complex on the full vertex set exists")
    comps = prime_decomposition(ideal)
    return SimplicialComplex.from_facets(p.variables.complement() for p in comps)


def alexander_dual(complex_: SimplicialComplex) -> SimplicialComplex:
    """Dual complex on the same vertex set: facets are the vertex-set
    complements of the minimal nonfaces.  Requires dim < |V| - 2 so the dual
    keeps the whole vertex set; the construction is then an involution."""
    v = complex_.vertex_set
    if complex_.dim >= len(v) - 2:
        raise ValueError("alexander_dual needs dim < |V| - 2")
    ideal = stanley_reisner_ideal(complex_)
    return SimplicialComplex.from_facets(
        g.support.complement_in(v) for g in ideal.generators
    )


def dual_complex_of_ideal(ideal: MonomialIdeal) -> SimplicialComplex:
    """Complex whose facets are the generator-support complements; its nonface
    ideal is generated by the products of the minimal primes of ``ideal``."""
    if ideal.is_zero:
        raise ValueError("the zero ideal has no dual complex")
    full = VarSet.full(ideal.ambient_n)
    return SimplicialComplex.from_facets(
        g.support.complement_in(full) for g in ideal.generators
    )


def dual_ideal_of_complex(complex_: SimplicialComplex) -> MonomialIdeal:
    """Ideal generated by the facet complements within the vertex set."""
    v = complex_.vertex_set
    gens = [SquarefreeMonomial(f.complement_in(v)) for f in complex_.facets]
    if any(g.is_unit for g in gens):
        raise ValueError("a facet equals the vertex set; the dual ideal would be the unit ideal")
    return minimalize(gens, ambient_n=complex_.ambient_n)


def cone_extension(complex_: SimplicialComplex, apex: int, face: VarSet) -> SimplicialComplex:
    """Attach the simplex on face + apex, where apex is a new vertex."""
    if face.ambient_n != complex_.ambient_n:
        raise ValueError("ambient mismatch between face and complex")
    if apex in complex_.vertex_set:
        raise ValueError(f"apex x{apex} already belongs to the complex")
    if not (face.is_empty or complex_.has_face(face)):
        raise ValueError(f"{face} is not a face of the complex")
    new_facet = face.add(apex)
    kept = [f for f in complex_.facets if f.mask & ~new_facet.mask]
    return SimplicialComplex.from_facets(kept + [new_facet])


def extend_ambient(complex_: SimplicialComplex, ambient_n: int) -> SimplicialComplex:
    return SimplicialComplex(
        tuple(f.extended(ambient_n) for f in complex_.facets),
        complex_.vertex_set.extended(ambient_n),
    )


# --- peeling ---------------------------------------------------------------


@dataclass(frozen=True)
class PeelStep:
    """One cone attachment: ``attached_facet = face + vertex``."""

    vertex: int
    face: VarSet
    attached_facet: VarSet

    def __post_init__(self) -> None:
        if self.vertex in self.face:
            raise ValueError("cone apex must not lie in the coned face")
        if self.attached_facet != self.face.add(self.vertex):
            raise ValueError("attached facet must be face + vertex")


@dataclass(frozen=True)
class PeelSequence:
    """Cone additions that rebuild a complex from a base simplex."""

    base: SimplicialComplex
    steps: tuple[PeelStep, ...]

    def replay(self) -> SimplicialComplex:
        current = self.base
        for step in self.steps:
            current = cone_extension(current, step.vertex, step.face)
        return current


def _peel_once(complex_: SimplicialComplex) -> tuple[PeelStep, SimplicialComplex] | None:
    """Remove the smallest vertex that lies in exactly one facet, if any."""
    for v in complex_.vertex_set:
        hits = [f for f in complex_.facets if v in f]
        if len(hits) != 1:
            continue
        facet = hits[0]
        face = facet.remove(v)
        kept = [f for f in complex_.facets if f != facet]
        if not face.is_empty:
            kept.append(face)
        if not kept:
            return None
        smaller = SimplicialComplex.from_facets(kept)
        return PeelStep(v, face, facet), smaller
    return None


def peel(complex_: SimplicialComplex) -> PeelSequence | None:
    """Greedy leaf peeling down to a simplex.

    Each step removes a vertex contained in exactly one facet (smallest index
    first) and re-inserts the rest of that facet as a face.  Returns the base
    simplex with the steps in replay order, or None when the complex is stuck
    before reaching a simplex.
    """
    collected: list[PeelStep] = []
    current = complex_
    while not current.is_simplex:
        result = _peel_once(current)
        if result is None:
            return None
        step, current = result
        collected.append(step)
    return PeelSequence(current, tuple(reversed(collected)))


# --- exact rank computations ------------------------------------------------


def _rank_int(rows: list[list[int]]) -> int:
    """Rank over the rationals by fraction-free (Bareiss) elimination."""
    m = [row[:] for row in rows]
    nr = len(m)
    nc = len(m[0]) if nr else 0
    rank = 0
    prev = 1
    for col in range(nc):
        piv = next((r for r in range(rank, nr) if m[r][col]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        p = m[rank][col]
        for r in range(rank + 1, nr):
            factor = m[r][col]
            row = m[r]
            prow = m[rank]
            for c in range(col + 1, nc):
                row[c] = (p * row[c] - factor * prow[c]) // prev
            row[col] = 0
        prev = p
        rank += 1
        if rank == nr:
            break
    return rank


def _rank_modp(rows: list[list[int]], p: int) -> int:
    m = [[x % p for x in row] for row in rows]
    nr = len(m)
    nc = len(m[0]) if nr else 0
    rank = 0
    for col in range(nc):
        piv = next((r for r in range(rank, nr) if m[r][col]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = pow(m[rank][col], p - 2, p)
        prow = [x * inv % p for x in m[rank]]
        m[rank] = prow
        for r in range(rank + 1, nr):
            factor = m[r][col]
            if factor:
                m[r] = [(a - factor * b) % p for a, b in zip(m[r], prow)]
        rank += 1
        if rank == nr:
            break
    return rank


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def _check_char(field_char: int) -> None:
    if field_char != 0 and not _is_prime(field_char):
        raise ValueError(f"field characteristic must be 0 or a prime, got {field_char}")


def _reduced_homology_dims(faces: frozenset[int], field_char: int) -> dict[int, int]:
    """Dimensions of the reduced homology of the complex given by ``faces``
    (masks, empty face included).  Keys are the degrees with nonzero homology."""
    by_level: dict[int, list[int]] = {}
    for f in faces:
        by_level.setdefault(f.bit_count() - 1, []).append(f)
    top = max(by_level)
    index: dict[int, dict[int, int]] = {}
    for k, fs in by_level.items():
        fs.sort()
        index[k] = {f: i for i, f in enumerate(fs)}
    counts = {k: len(fs) for k, fs in by_level.items()}

    def boundary_rank(k: int) -> int:
        # rows: (k-1)-faces, cols: k-faces, entries +-1 by deletion position
        if k not in by_level or (k - 1) not in by_level:
            return 0
        rows = [[0] * counts[k] for _ in range(counts[k - 1])]
        lower = index[k - 1]
        for col, f in enumerate(by_level[k]):
            sign = 1
            for v in _iter_bits(f):
                rows[lower[f & ~(1 << (v - 1))]][col] = sign
                sign = -sign
        if field_char == 0:
            return _rank_int(rows)
        return _rank_modp(rows, field_char)

    ranks = {k: boundary_rank(k) for k in range(0, top + 1)}
    ranks[top + 1] = 0
    dims: dict[int, int] = {}
    for k in range(-1, top + 1):
        d = counts.get(k, 0) - ranks.get(k, 0) - ranks.get(k + 1, 0)
        if d:
            dims[k] = d
    return dims


@lru_cache(maxsize=None)
def _homology_cached(faces: frozenset[int], field_char: int) -> dict[int, int]:
    return _reduced_homology_dims(faces, field_char)


# --- Betti tables -----------------------------------------------------------


@dataclass(frozen=True)
class BettiTable:
    """Graded Betti numbers of a quotient ring R/I over the chosen field."""

    entries: tuple[tuple[int, int, int], ...]  # (i, j, value), canonical order
    field_char: int

    @classmethod
    def from_dict(cls, data: dict[tuple[int, int], int], field_char: int) -> BettiTable:
        items = tuple(sorted((i, j, b) for (i, j), b in data.items() if b))
        return cls(items, field_char)

    def as_dict(self) -> dict[tuple[int, int], int]:
        return {(i, j): b for i, j, b in self.entries}

    def get(self, i: int, j: int) -> int:
        return self.as_dict().get((i, j), 0)

    @property
    def pd(self) -> int:
        return max((i for i, _, _ in self.entries), default=0)

    @property
    def reg_quotient(self) -> int:
        return max((j - i for i, j, _ in self.entries), default=0)

    def to_json(self) -> dict:
        return {"char": self.field_char, "entries": [[i, j, b] for i, j, b in self.entries]}

    def __str__(self) -> str:
        return " ".join(f"b[{i},{j}]={b}" for i, j, b in self.entries) or "b[0,0]=0"


@lru_cache(maxsize=None)
def hochster_betti(complex_: SimplicialComplex, field_char: int = 0) -> BettiTable:
    """Betti numbers of the quotient by the nonface ideal: each vertex subset W
    contributes the reduced homology of the restriction to W, one homological
    degree per table column."""
    _check_char(field_char)
    if complex_.num_vertices > MAX_HOMOLOGY_VERTICES:
        raise ValueError(
            f"{complex_.num_vertices} vertices exceed the homology cap of {MAX_HOMOLOGY_VERTICES}"
        )
    facet_masks = [f.mask for f in complex_.facets]
    v = complex_.vertex_set.mask
    entries: dict[tuple[int, int], int] = {(0, 0): 1}
    w = v
    while w:
        if not any(fm & w == w for fm in facet_masks):
            j = w.bit_count()
            tops = {fm & w for fm in facet_masks}
            faces: set[int] = set()
            for t in tops:
                if t in faces:
                    continue
                sub = t
                while True:
                    faces.add(sub)
                    if sub == 0:
                        break
                    sub = (sub - 1) & t
            for k, d in _homology_cached(frozenset(faces), field_char).items():
                key = (j - k - 1, j)
                entries[key] = entries.get(key, 0) + d
        w = (w - 1) & v
    return BettiTable.from_dict(entries, field_char)


@lru_cache(maxsize=None)
def _betti_entries_of_ideal(ideal: MonomialIdeal, field_char: int) -> dict[tuple[int, int], int]:
    # Degree-1 generators split off as a Koszul factor: convolve the table of
    # the remaining ideal with binomial coefficients along the diagonal.
    if ideal.is_zero:
        return {(0, 0): 1}
    linear = [g for g in ideal.generators if g.degree == 1]
    if not linear:
        return hochster_betti(complex_of_ideal(ideal), field_char).as_dict()
    rest = MonomialIdeal(tuple(g for g in ideal.generators if g.degree > 1), ideal.ambient_n)
    base = _betti_entries_of_ideal(rest, field_char)
    k = len(linear)
    out: dict[tuple[int, int], int] = {}
    for (i, j), b in base.items():
        for a in range(k + 1):
            key = (i + a, j + a)
            out[key] = out.get(key, 0) + b * comb(k, a)
    return out


def betti_table(ideal: MonomialIdeal, field_char: int = 0) -> BettiTable:
    """Betti table of R/I for any nonzero squarefree monomial ideal."""
    _check_char(field_char)
    return BettiTable.from_dict(_betti_entries_of_ideal(ideal, field_char), field_char)


def pd(ideal: MonomialIdeal, field_char: int = 0) -> int:
    """Projective dimension of R/I."""
    return betti_table(ideal, field_char).pd


def reg(ideal: MonomialIdeal, field_char: int = 0) -> int:
    """Regularity of the ideal itself (one more than that of the quotient)."""
    if ideal.is_zero:
        raise ValueError("the zero ideal has no regularity")
    return betti_table(ideal, field_char).reg_quotient + 1


def has_linear_resolution(ideal: MonomialIdeal, field_char: int = 0) -> bool:
    return reg(ideal, field_char) == indeg(ideal)


def is_cohen_macaulay(ideal: MonomialIdeal, field_char: int = 0) -> bool:
    """Cohen-Macaulayness of R/I, decided by pd R/I = height I.

    Equivalent to the dual ideal having a linear resolution; the test suite
    cross-checks the two routes against each other.
    """
    if ideal.is_zero:
        raise ValueError("is_cohen_macaulay needs a nonzero ideal")
    return pd(ideal, field_char) == height(ideal)


# --- text format ------------------------------------------------------------
#
# One facet per line, whitespace-separated variables: "x1 x3"; optional
# 'vars: n' header; '#' comments allowed.


def parse_complex(text: str) -> SimplicialComplex:
    lines = text.splitlines()
    declared = _parse_header(lines)
    rows: list[list[int]] = []
    max_index = 0
    for line_no, raw in enumerate(lines, start=1):
        stripped = _strip_comment(raw).strip()
        if not stripped or stripped.startswith("vars:"):
            continue
        indices: list[int] = []
        for token in stripped.split():
            idx = _parse_var_token(token, line_no, 1 + raw.index(token))
            if idx in indices:
                raise ParseError(f"repeated vertex x{idx} in a facet", line_no, 1)
            indices.append(idx)
        max_index = max(max_index, *indices)
        rows.append(indices)
    if not rows:
        raise ParseError("a complex needs at least one facet", max(len(lines), 1), 1)
    n = declared if declared is not None else max_index
    if max_index > n:
        raise ParseError(f"vertex x{max_index} exceeds declared vars: {n}", len(lines), 1)
    return SimplicialComplex.from_facets(VarSet.from_indices(ix, n) for ix in rows)


def format_complex(complex_: SimplicialComplex) -> str:
    lines = [f"vars: {complex_.ambient_n}"]
    for f in complex_.facets:
        lines.append(" ".join(f"x{i}" for i in f))
    return "\n".join(lines) + "\n"
