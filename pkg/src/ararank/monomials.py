"""Squarefree monomials, monomial ideals, transversals and prime decomposition.

Variables are 1-based indices printed as ``x1 .. xn``.  Supports are stored as
bit masks, which caps the ambient size at 64 variables (desk scale; larger
ambients are rejected with a clear error).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator

MAX_VARS = 64


def _mask_from_indices(indices: Iterable[int], ambient_n: int) -> int:
    mask = 0
    for i in indices:
        if not 1 <= i <= ambient_n:
            raise ValueError(f"variable index {i} outside 1..{ambient_n}")
        mask |= 1 << (i - 1)
    return mask


def _iter_bits(mask: int) -> Iterator[int]:
    i = 1
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1


def _check_ambient(ambient_n: int) -> None:
    if not isinstance(ambient_n, int) or ambient_n < 1:
        raise ValueError(f"ambient variable count must be a positive integer, got {ambient_n!r}")
    if ambient_n > MAX_VARS:
        raise ValueError(f"ambient variable count {ambient_n} exceeds the supported maximum {MAX_VARS}")


@dataclass(frozen=True)
class VarSet:
    """Subset of the ambient variables {x1..xn}, kept as a bit mask."""

    mask: int
    ambient_n: int

    def __post_init__(self) -> None:
        _check_ambient(self.ambient_n)
        if self.mask < 0 or self.mask >> self.ambient_n:
            raise ValueError(f"mask {self.mask:#x} has bits outside ambient 1..{self.ambient_n}")

    @classmethod
    def from_indices(cls, indices: Iterable[int], ambient_n: int) -> VarSet:
        return cls(_mask_from_indices(indices, ambient_n), ambient_n)

    @classmethod
    def empty(cls, ambient_n: int) -> VarSet:
        return cls(0, ambient_n)

    @classmethod
    def full(cls, ambient_n: int) -> VarSet:
        return cls((1 << ambient_n) - 1, ambient_n)

    @property
    def indices(self) -> tuple[int, ...]:
        return tuple(_iter_bits(self.mask))

    @property
    def is_empty(self) -> bool:
        return self.mask == 0

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __iter__(self) -> Iterator[int]:
        return _iter_bits(self.mask)

    def __contains__(self, index: int) -> bool:
        return 1 <= index <= self.ambient_n and bool(self.mask >> (index - 1) & 1)

    def _same_ambient(self, other: VarSet) -> None:
        if self.ambient_n != other.ambient_n:
            raise ValueError(f"ambient mismatch: {self.ambient_n} vs {other.ambient_n}")

    def issubset(self, other: VarSet) -> bool:
        self._same_ambient(other)
        return self.mask & ~other.mask == 0

    def __or__(self, other: VarSet) -> VarSet:
        self._same_ambient(other)
        return VarSet(self.mask | other.mask, self.ambient_n)

    def __and__(self, other: VarSet) -> VarSet:
        self._same_ambient(other)
        return VarSet(self.mask & other.mask, self.ambient_n)

    def __sub__(self, other: VarSet) -> VarSet:
        self._same_ambient(other)
        return VarSet(self.mask & ~other.mask, self.ambient_n)

    def complement(self) -> VarSet:
        """Complement within the full ambient set {x1..xn}."""
        return VarSet(~self.mask & (1 << self.ambient_n) - 1, self.ambient_n)

    def complement_in(self, universe: VarSet) -> VarSet:
        self._same_ambient(universe)
        if not self.issubset(universe):
            raise ValueError("complement_in: set is not contained in the given universe")
        return VarSet(universe.mask & ~self.mask, self.ambient_n)

    def add(self, index: int) -> VarSet:
        return VarSet(self.mask | _mask_from_indices((index,), self.ambient_n), self.ambient_n)

    def remove(self, index: int) -> VarSet:
        return VarSet(self.mask & ~_mask_from_indices((index,), self.ambient_n), self.ambient_n)

    def extended(self, ambient_n: int) -> VarSet:
        if ambient_n < self.ambient_n:
            raise ValueError("cannot shrink the ambient variable set")
        return VarSet(self.mask, ambient_n)

    def sort_key(self) -> tuple[int, tuple[int, ...]]:
        return (len(self), self.indices)

    def __str__(self) -> str:
        if self.is_empty:
            return "{}"
        return "{" + ",".join(f"x{i}" for i in self.indices) + "}"


@dataclass(frozen=True)
class SquarefreeMonomial:
    """Product of distinct variables; the unit monomial has empty support."""

    support: VarSet

    @classmethod
    def from_indices(cls, indices: Iterable[int], ambient_n: int) -> SquarefreeMonomial:
        return cls(VarSet.from_indices(indices, ambient_n))

    @classmethod
    def unit(cls, ambient_n: int) -> SquarefreeMonomial:
        return cls(VarSet.empty(ambient_n))

    @property
    def ambient_n(self) -> int:
        return self.support.ambient_n

    @property
    def degree(self) -> int:
        return len(self.support)

    @property
    def is_unit(self) -> bool:
        return self.support.is_empty

    def divides(self, other: SquarefreeMonomial) -> bool:
        return self.support.issubset(other.support)

    def lcm(self, other: SquarefreeMonomial) -> SquarefreeMonomial:
        return SquarefreeMonomial(self.support | other.support)

    def extended(self, ambient_n: int) -> SquarefreeMonomial:
        return SquarefreeMonomial(self.support.extended(ambient_n))

    def sort_key(self) -> tuple[int, tuple[int, ...]]:
        return self.support.sort_key()

    def __str__(self) -> str:
        if self.is_unit:
            return "1"
        return "*".join(f"x{i}" for i in self.support)


@dataclass(frozen=True)
class PrimeComponent:
    """Monomial prime ideal (x_i : i in variables); always nonempty."""

    variables: VarSet

    def __post_init__(self) -> None:
        if self.variables.is_empty:
            raise ValueError("a prime component must contain at least one variable")

    def __len__(self) -> int:
        return len(self.variables)

    def __str__(self) -> str:
        return "(" + ",".join(f"x{i}" for i in self.variables) + ")"


@dataclass(frozen=True)
class MonomialIdeal:
    """Squarefree monomial ideal given by its unique minimal generating set.

    Generators are canonically ordered by degree, then lexicographically on
    support.  The zero ideal has no generators; the unit ideal is rejected.
    """

    generators: tuple[SquarefreeMonomial, ...]
    ambient_n: int

    def __post_init__(self) -> None:
        _check_ambient(self.ambient_n)
        seen = set()
        for g in self.generators:
            if g.ambient_n != self.ambient_n:
                raise ValueError("generator ambient does not match ideal ambient")
            if g.is_unit:
                raise ValueError("the unit ideal is not a proper monomial ideal")
            if g.support.mask in seen:
                raise ValueError(f"duplicate generator {g}")
            seen.add(g.support.mask)
        for g in self.generators:
            for h in self.generators:
                if g is not h and g.divides(h):
                    raise ValueError(f"generator list not minimal: {g} divides {h}")
        keys = [g.sort_key() for g in self.generators]
        if keys != sorted(keys):
            raise ValueError("generators not in canonical order; use minimalize()")

    @property
    def is_zero(self) -> bool:
        return not self.generators

    def contains_monomial(self, m: SquarefreeMonomial) -> bool:
        return any(g.divides(m) for g in self.generators)

    def generator_strings(self) -> list[str]:
        return [str(g) for g in self.generators]

    def __str__(self) -> str:
        if self.is_zero:
            return "(0)"
        return "(" + ", ".join(str(g) for g in self.generators) + ")"


def minimalize(monomials: Iterable[SquarefreeMonomial], ambient_n: int | None = None) -> MonomialIdeal:
    """Canonical minimal generating set: drop duplicates and multiples.

    A monomial survives iff no other input strictly divides it.  The ambient
    is taken from the inputs unless given explicitly (required for an empty
    input, which yields the zero ideal).
    """
    monomials = list(monomials)
    if not monomials:
        if ambient_n is None:
            raise ValueError("ambient_n is required for an empty generator list")
        return MonomialIdeal((), ambient_n)
    n = ambient_n if ambient_n is not None else monomials[0].ambient_n
    masks = set()
    for m in monomials:
        if m.ambient_n != n:
            raise ValueError(f"mixed ambient sizes: {m.ambient_n} vs {n}")
        if m.is_unit:
            raise ValueError("unit monomial would generate the unit ideal")
        masks.add(m.support.mask)
    minimal = [
        mk for mk in masks
        if not any(other != mk and other & ~mk == 0 for other in masks)
    ]
    gens = sorted(
        (SquarefreeMonomial(VarSet(mk, n)) for mk in minimal),
        key=SquarefreeMonomial.sort_key,
    )
    return MonomialIdeal(tuple(gens), n)


def _minimal_transversal_masks(edge_masks: list[int], n: int) -> list[int]:
    """All inclusion-minimal masks meeting every edge mask.

    Branch and bound on the first unhit edge; a candidate is kept iff every
    chosen vertex has a private edge, which characterises minimality.
    """
    if not edge_masks:
        return [0]
    edges = sorted(set(edge_masks), key=lambda m: (m.bit_count(), m))
    found: set[int] = set()
    leaves: set[int] = set()

    def minimal(t: int) -> bool:
        for v in _iter_bits(t):
            bit = 1 << (v - 1)
            if not any(e & t == bit for e in edges):
                return False
        return True

    def walk(t: int) -> None:
        for e in edges:
            if e & t == 0:
                for v in _iter_bits(e):
                    walk(t | 1 << (v - 1))
                return
        if t in leaves:
            return
        leaves.add(t)
        if minimal(t):
            found.add(t)

    walk(0)
    return sorted(found, key=lambda m: (m.bit_count(), VarSet(m, n).indices))


def minimal_transversals(hypergraph: Iterable[VarSet]) -> list[VarSet]:
    """Inclusion-minimal vertex sets meeting every edge, in canonical order."""
    edges = list(hypergraph)
    if not edges:
        raise ValueError("hypergraph has no edges; ambient unknown")
    n = edges[0].ambient_n
    for e in edges:
        if e.ambient_n != n:
            raise ValueError("mixed ambient sizes among edges")
        if e.is_empty:
            raise ValueError("empty edge admits no transversal")
    return [VarSet(m, n) for m in _minimal_transversal_masks([e.mask for e in edges], n)]


@lru_cache(maxsize=None)
def _prime_components(ideal: MonomialIdeal) -> tuple[PrimeComponent, ...]:
    covers = minimal_transversals(g.support for g in ideal.generators)
    return tuple(PrimeComponent(c) for c in covers)


def prime_decomposition(ideal: MonomialIdeal) -> list[PrimeComponent]:
    """Minimal primes, i.e. minimal transversals of the generator supports."""
    if ideal.is_zero:
        raise ValueError("the zero ideal has no prime decomposition here")
    return list(_prime_components(ideal))


def height(ideal: MonomialIdeal) -> int:
    """Minimum size of a minimal prime."""
    return min(len(p) for p in prime_decomposition(ideal))


def indeg(ideal: MonomialIdeal) -> int:
    """Minimum degree among the minimal generators."""
    if ideal.is_zero:
        raise ValueError("the zero ideal has no initial degree")
    return min(g.degree for g in ideal.generators)


def alexander_dual_ideal(ideal: MonomialIdeal) -> MonomialIdeal:
    """Ideal generated by the products of the minimal primes.

    Generator supports and prime components swap roles under this duality, so
    applying it twice returns the original ideal.
    """
    comps = prime_decomposition(ideal)
    gens = sorted(
        (SquarefreeMonomial(p.variables) for p in comps),
        key=SquarefreeMonomial.sort_key,
    )
    return MonomialIdeal(tuple(gens), ideal.ambient_n)


def intersect(a: MonomialIdeal, b: MonomialIdeal) -> MonomialIdeal:
    """Intersection via pairwise lcm expansion."""
    if a.ambient_n != b.ambient_n:
        raise ValueError("ambient mismatch")
    if a.is_zero or b.is_zero:
        return MonomialIdeal((), a.ambient_n)
    return minimalize(
        (g.lcm(h) for g in a.generators for h in b.generators),
        ambient_n=a.ambient_n,
    )


# --- text format ----------------------------------------------------------
#
# One monomial per line as x1*x2*x3; blank lines and '#' comments ignored;
# the ambient may be declared with a leading 'vars: n' line, otherwise it is
# inferred as the largest index present.


class ParseError(ValueError):
    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"line {line}, col {col}: {message}")
        self.line = line
        self.col = col


def _parse_var_token(token: str, line_no: int, col: int) -> int:
    if not token.startswith("x") or not token[1:].isdigit():
        raise ParseError(f"expected a variable like x3, got {token!r}", line_no, col)
    idx = int(token[1:])
    if idx < 1:
        raise ParseError(f"variable index must be >= 1, got {token!r}", line_no, col)
    return idx


def _strip_comment(line: str) -> str:
    return line.split("#", 1)[0]


def _parse_header(lines: list[str]) -> int | None:
    for raw in lines:
        text = _strip_comment(raw).strip()
        if not text:
            continue
        if text.startswith("vars:"):
            value = text[len("vars:"):].strip()
            if not value.isdigit() or int(value) < 1:
                raise ParseError(f"bad variable count {value!r}", lines.index(raw) + 1, 1)
            return int(value)
        return None
    return None


def parse_ideal(text: str) -> MonomialIdeal:
    lines = text.splitlines()
    declared = _parse_header(lines)
    rows: list[tuple[int, list[int]]] = []
    max_index = 0
    for line_no, raw in enumerate(lines, start=1):
        stripped = _strip_comment(raw).strip()
        if not stripped or stripped.startswith("vars:"):
            continue
        indices: list[int] = []
        col = 1 + raw.index(stripped[0])
        for token in stripped.split("*"):
            token = token.strip()
            if not token:
                raise ParseError("empty factor between '*'", line_no, col)
            idx = _parse_var_token(token, line_no, col)
            if idx in indices:
                raise ParseError(f"repeated variable x{idx}; monomials here are squarefree", line_no, col)
            indices.append(idx)
            col += len(token) + 1
        max_index = max(max_index, *indices)
        rows.append((line_no, indices))
    if declared is None:
        if not rows:
            raise ParseError("empty input needs a 'vars: n' header", max(len(lines), 1), 1)
        declared = max_index
    if max_index > declared:
        raise ParseError(f"variable x{max_index} exceeds declared vars: {declared}", rows[-1][0], 1)
    return minimalize(
        (SquarefreeMonomial.from_indices(ix, declared) for _, ix in rows),
        ambient_n=declared,
    )


def format_ideal(ideal: MonomialIdeal) -> str:
    lines = [f"vars: {ideal.ambient_n}"]
    lines.extend(str(g) for g in ideal.generators)
    return "\n".join(lines) + "\n"
