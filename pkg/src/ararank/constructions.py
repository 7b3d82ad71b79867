"""Constructive witnesses: block-sum base cases, cone lifts for height-2
Cohen-Macaulay ideals, the h+1-element cone bound, and the determinant-based
cone elements with the max{h+1, n-|F|} count.

Every public construction returns a GeneratorWitness that has already passed
the independent radical verifier; a verification failure inside a construction
is a bug and raises ConstructionError rather than returning quietly.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .monomials import (
    MonomialIdeal,
    SquarefreeMonomial,
    VarSet,
    height,
    indeg,
    minimalize,
)
from .polyalg import (
    Polynomial,
    PowerCertificate,
    Term,
    _common_ambient,
    power_membership,
)
from .simplicial import (
    SimplicialComplex,
    cone_extension,
    dual_complex_of_ideal,
    dual_ideal_of_complex,
    is_cohen_macaulay,
    peel,
    stanley_reisner_ideal,
)
from . import verifier


class ConstructionError(RuntimeError):
    """Internal invariant of a construction failed; inputs were accepted but
    the produced elements did not certify."""


@dataclass(frozen=True)
class GeneratorWitness:
    """Polynomials generating ``target`` up to radical, with the verifier's
    report attached."""

    elements: tuple[Polynomial, ...]
    target: MonomialIdeal
    provenance: str
    report: "verifier.RadicalReport"

    def to_json(self) -> dict:
        return {
            "target": self.target.generator_strings(),
            "elements": [str(e) for e in self.elements],
            "provenance": self.provenance,
            "verified": self.report.verdict,
            "count": len(self.elements),
            "report": self.report.to_json(),
        }


def _certified(elements: Sequence[Polynomial], target: MonomialIdeal, provenance: str) -> GeneratorWitness:
    report = verifier.verify_up_to_radical(elements, target)
    if not report.verdict:
        raise ConstructionError(
            f"{provenance} construction failed verification against {target}; "
            "this is a bug in the construction, not in the input"
        )
    return GeneratorWitness(tuple(elements), target, provenance, report)


# --- block-sum elements ------------------------------------------------------


@dataclass(frozen=True)
class SVPartition:
    """Blocks P_0, ..., P_r of monomials; P_0 is a singleton and any two
    distinct members of a later block have their product divisible by an
    earlier member."""

    blocks: tuple[tuple[SquarefreeMonomial, ...], ...]

    def __post_init__(self) -> None:
        if not self.blocks or len(self.blocks[0]) != 1:
            raise ValueError("the first block must contain exactly one monomial")
        seen: set[tuple[int, int]] = set()
        for block in self.blocks:
            if not block:
                raise ValueError("empty block")
            for m in block:
                key = (m.support.mask, m.ambient_n)
                if key in seen:
                    raise ValueError(f"monomial {m} appears twice")
                seen.add(key)

    def monomials(self) -> list[SquarefreeMonomial]:
        return [m for block in self.blocks for m in block]

    def condition_holds(self) -> bool:
        for level, block in enumerate(self.blocks):
            earlier = [m for b in self.blocks[:level] for m in b]
            for a in block:
                for b in block:
                    if a is b:
                        continue
                    product_support = a.support | b.support
                    if not any(m.support.issubset(product_support) for m in earlier):
                        return False
        return True


def sv_elements(partition: SVPartition) -> list[Polynomial]:
    """Block sums q_l = sum of P_l; valid partitions generate the ideal of all
    block members up to radical."""
    if not partition.condition_holds():
        raise ValueError("partition violates the block divisibility condition")
    n = partition.monomials()[0].ambient_n
    out = []
    for block in partition.blocks:
        q = Polynomial.zero(n)
        for m in block:
            q = q + Polynomial.from_squarefree(m, n)
        out.append(q)
    return out


def base_case_generators(
    ideal: MonomialIdeal,
    partition: SVPartition | None = None,
) -> GeneratorWitness:
    """Two-element witness for the small cases: a variable generator, or at
    most three generators split into a singleton block plus the rest.

    The partition search enumerates singleton choices in canonical order and
    keeps the first valid one; with the stated preconditions a valid choice
    must exist, so exhausting the search raises ConstructionError.
    """
    if ideal.is_zero:
        raise ValueError("base case needs a nonzero ideal")
    if height(ideal) != 2:
        raise ValueError(f"base case needs height 2, got {height(ideal)}")
    if not is_cohen_macaulay(ideal):
        raise ValueError("base case needs a Cohen-Macaulay quotient")
    gens = ideal.generators
    if partition is not None:
        if sorted(m.sort_key() for m in partition.monomials()) != [g.sort_key() for g in gens]:
            raise ValueError("partition blocks must partition the generator set")
        return _certified(sv_elements(partition), ideal, "injected")
    if indeg(ideal) == 1:
        if len(gens) != 2:
            raise ConstructionError(
                "a height-2 Cohen-Macaulay ideal with a variable generator must "
                f"have exactly two generators, got {len(gens)}"
            )
        elements = [Polynomial.from_squarefree(g) for g in gens]
        return _certified(elements, ideal, "base-case")
    if len(gens) > 3:
        raise ValueError(f"base case needs at most 3 generators, got {len(gens)}")
    for pick in gens:
        rest = tuple(g for g in gens if g != pick)
        blocks = ((pick,), rest) if rest else ((pick,),)
        candidate = SVPartition(blocks)
        if candidate.condition_holds():
            return _certified(sv_elements(candidate), ideal, "base-case")
    raise ConstructionError(
        f"no valid singleton-block partition for {ideal}; "
        "expected to exist for every height-2 Cohen-Macaulay ideal with <= 3 generators"
    )


# --- cone lift ----------------------------------------------------------------


def _choose_facet(facets: Sequence[VarSet], face: VarSet, vertex_set: VarSet) -> VarSet:
    """Deterministic facet choice: among facets containing the face, take the
    one whose complement (the attached generator) is canonically smallest."""
    candidates = [f for f in facets if face.issubset(f)]
    if not candidates:
        raise ValueError(f"{face} is not a face of the complex")
    return min(candidates, key=lambda f: f.complement_in(vertex_set).sort_key())


@dataclass(frozen=True)
class ConeData:
    """Geometry of one cone attachment on the dual side.

    ``m0`` is the product over the complement of face+apex in the extended
    vertex set; ``m1`` is the generator attached to the chosen facet, and it
    divides ``m0`` because the facet contains the face.
    """

    apex: int
    face: VarSet
    facet: VarSet
    m0: SquarefreeMonomial
    m1: SquarefreeMonomial

    def __post_init__(self) -> None:
        if self.apex in self.face:
            raise ValueError("apex must not lie in the coned face")
        if not self.face.issubset(self.facet):
            raise ValueError("the chosen facet must contain the face")
        if self.apex in self.m0.support or self.apex in self.m1.support:
            raise ValueError("m0 and m1 must not involve the apex variable")
        if not self.m1.divides(self.m0):
            raise ValueError("m1 must divide m0")

    @classmethod
    def for_level(
        cls,
        vertex_set_after: VarSet,
        apex: int,
        face: VarSet,
        facet: VarSet,
    ) -> ConeData:
        if apex not in vertex_set_after:
            raise ValueError("apex must belong to the extended vertex set")
        before = vertex_set_after.remove(apex)
        m0 = SquarefreeMonomial(face.add(apex).complement_in(vertex_set_after))
        m1 = SquarefreeMonomial(facet.complement_in(before))
        return cls(apex, face, facet, m0, m1)


def cone_lift(
    q1: Polynomial,
    q2: Polynomial,
    cone: ConeData,
    cert: PowerCertificate,
) -> tuple[Polynomial, Polynomial]:
    """Lift a two-element witness across one cone attachment.

    With ``m1**l = a11*q1 + a12*q2`` the lifted pair is ``x0*q1 - a12*m0`` and
    ``x0*q2 + a11*m0`` over the extended variable set.
    """
    n = _common_ambient([q1, q2])
    if cone.apex > n:
        raise ValueError(f"apex x{cone.apex} is outside ambient 1..{n}")
    if cert.base != cone.m1:
        raise ValueError("certificate monomial does not match the cone's m1")
    if cert.certificate.generators != (q1, q2):
        raise ValueError("certificate was issued for a different generator pair")
    a11, a12 = cert.certificate.cofactors
    x0 = Polynomial.variable(cone.apex, n)
    m0 = Polynomial.from_squarefree(cone.m0, n)
    return (x0 * q1 - a12 * m0, x0 * q2 + a11 * m0)


# --- the full height-2 Cohen-Macaulay pipeline ---------------------------------


def construct_h2cm(
    ideal: MonomialIdeal,
    *,
    lmax: int | None = None,
    certificates: Sequence[PowerCertificate] | None = None,
    base_partition: SVPartition | None = None,
) -> GeneratorWitness:
    """Two polynomials generating a height-2 Cohen-Macaulay ideal up to radical.

    Strategy: peel the dual complex down to three facets, solve that base case
    by a block-sum partition, then lift the pair back up one cone at a time
    with power-membership certificates.  Every intermediate pair is verified;
    optional injected certificates are consumed in lift order (bottom up).
    """
    if ideal.is_zero:
        raise ValueError("construct_h2cm needs a nonzero ideal")
    if height(ideal) != 2:
        raise ValueError(f"construct_h2cm needs height 2, got {height(ideal)}")
    if not is_cohen_macaulay(ideal):
        raise ValueError("construct_h2cm needs a Cohen-Macaulay quotient")
    if indeg(ideal) == 1 or len(ideal.generators) <= 3:
        return base_case_generators(ideal, partition=base_partition)

    gamma = dual_complex_of_ideal(ideal)
    sequence = peel(gamma)
    if sequence is None:
        raise ConstructionError(
            "dual complex of a Cohen-Macaulay height-2 ideal did not peel; "
            "the Betti oracle and the peeling disagree"
        )
    stages = [sequence.base]
    for step in sequence.steps:
        stages.append(cone_extension(stages[-1], step.vertex, step.face))
    if stages[-1] != gamma:
        raise ConstructionError("peel replay did not reconstruct the dual complex")

    start = max(k for k, c in enumerate(stages) if len(c.facets) <= 3)
    base_ideal = dual_ideal_of_complex(stages[start])
    witness = base_case_generators(base_ideal, partition=base_partition)
    q1, q2 = witness.elements
    report = witness.report

    injected = list(certificates or [])
    used_injected = False
    for k in range(start, len(sequence.steps)):
        step = sequence.steps[k]
        before = stages[k]
        after = stages[k + 1]
        facet = _choose_facet(before.facets, step.face, before.vertex_set)
        cone = ConeData.for_level(after.vertex_set, step.vertex, step.face, facet)
        if injected:
            cert = injected.pop(0)
            used_injected = True
        else:
            cert = power_membership(cone.m1, [q1, q2], lmax)
        q1, q2 = cone_lift(q1, q2, cone, cert)
        level_ideal = dual_ideal_of_complex(after)
        report = verifier.verify_up_to_radical([q1, q2], level_ideal)
        if not report.verdict:
            raise ConstructionError(
                f"lifted pair failed verification at {len(after.vertex_set)} vertices"
            )
    if injected:
        raise ValueError(f"{len(injected)} injected certificates were not consumed")
    provenance = "injected" if used_injected else "cone-lift"
    return GeneratorWitness((q1, q2), ideal, provenance, report)


# --- one extra element for one cone --------------------------------------------


def ara_plus_one(
    ideal: MonomialIdeal,
    face: VarSet,
    qs: Sequence[Polynomial],
) -> GeneratorWitness:
    """h+1 elements for the ideal of the dual-side cone extension: the face
    complement m0 together with x0 times each input element."""
    if ideal.is_zero:
        raise ValueError("ara_plus_one needs a nonzero ideal")
    if not qs:
        raise ValueError("ara_plus_one needs at least one input element")
    n = ideal.ambient_n
    if face.ambient_n != n or _common_ambient(list(qs)) != n:
        raise ValueError("ambient mismatch among ideal, face and elements")
    if not any((face & g.support).is_empty for g in ideal.generators):
        raise ValueError(f"{face} is not a face of the dual complex")
    pre = verifier.verify_up_to_radical(qs, ideal)
    if not pre.verdict:
        raise ValueError("input elements do not generate the ideal up to radical")

    n2 = n + 1
    apex = n2
    m0 = SquarefreeMonomial(face.complement().extended(n2))
    x0 = Polynomial.variable(apex, n2)
    elements = [Polynomial.from_squarefree(m0, n2)]
    elements.extend(x0 * q.extend(n2) for q in qs)
    target = minimalize(
        [m0] + [SquarefreeMonomial(g.support.extended(n2).add(apex)) for g in ideal.generators],
        ambient_n=n2,
    )
    return _certified(elements, target, "prop31")


# --- determinant-based cone elements --------------------------------------------


@dataclass(frozen=True)
class BTData:
    """Working data of the determinant construction after relabeling.

    ``permutation[p-1]`` is the original variable at position ``p``; positions
    1..s are the complement of the chosen facet, s+1..t the facet minus the
    face, t+1..n the face.  ``abar`` is the zero-padded square matrix of the
    normalized coefficients, in position space.
    """

    h: int
    s: int
    t: int
    case: int
    abar: tuple[tuple[Polynomial, ...], ...]
    permutation: tuple[int, ...]

    def position_of(self, original: int) -> int:
        return self.permutation.index(original) + 1

    def original_of(self, position: int) -> int:
        return self.permutation[position - 1]


def bt_step1_normalize(
    qs: Sequence[Polynomial],
    facet: VarSet,
) -> tuple[list[Polynomial], list[dict[int, Polynomial]]]:
    """Square each element and split it along the variables outside ``facet``.

    Writing q_i = sum_j a_ij x_j by sending every term to its smallest
    variable outside the facet, the result is q_i**2 = sum_j (a_ij q_i) x_j,
    whose coefficients all lie in any ideal containing q_i.  Squaring keeps
    radicals, so the new elements generate the same radical.
    """
    qs = list(qs)
    n = facet.ambient_n
    if qs and _common_ambient(qs) != n:
        raise ValueError("ambient mismatch between elements and facet")
    outside = facet.complement()
    qbars: list[Polynomial] = []
    coeffs: list[dict[int, Polynomial]] = []
    for i, q in enumerate(qs):
        split: dict[int, Polynomial] = {}
        for term, c in q.terms.items():
            j = next((v for v, _ in term.exps if v in outside), None)
            if j is None:
                raise ValueError(
                    f"element {i + 1} has the term {term} with no variable outside {facet}"
                )
            part = Polynomial.from_term(term.div(Term(((j, 1),))), c, n)
            split[j] = split.get(j, Polynomial.zero(n)) + part
        qbars.append(q * q)
        coeffs.append({j: a * q for j, a in split.items()})
    return qbars, coeffs


def _determinant(matrix: list[list[Polynomial]], ambient_n: int) -> Polynomial:
    size = len(matrix)
    one = Polynomial.constant(1, ambient_n)
    zero = Polynomial.zero(ambient_n)
    memo: dict[tuple[int, int], Polynomial] = {}

    def minor(row: int, cols: int) -> Polynomial:
        if row == size:
            return one
        key = (row, cols)
        cached = memo.get(key)
        if cached is not None:
            return cached
        total = zero
        sign = 1
        rest = cols
        while rest:
            low = rest & -rest
            col = low.bit_length() - 1
            entry = matrix[row][col]
            if not entry.is_zero:
                piece = entry * minor(row + 1, cols & ~low)
                total = total + piece if sign > 0 else total - piece
            sign = -sign
            rest &= rest - 1
        memo[key] = total
        return total

    if size == 0:
        return one
    return minor(0, (1 << size) - 1)


def _bt_prepare(
    complex_: SimplicialComplex,
    face: VarSet,
    qs: Sequence[Polynomial],
) -> tuple[BTData, list[Polynomial], VarSet]:
    n = complex_.ambient_n
    if complex_.vertex_set != VarSet.full(n):
        raise ValueError("the complex must use the full ambient vertex set")
    if face.ambient_n != n:
        raise ValueError("ambient mismatch between face and complex")
    if face == complex_.vertex_set:
        raise ValueError("face equals the whole vertex set; the cone ideal is zero")
    if not (face.is_empty or complex_.has_face(face)):
        raise ValueError(f"{face} is not a face of the complex")
    qs = list(qs)
    if qs and _common_ambient(qs) != n:
        raise ValueError("ambient mismatch between elements and complex")

    facet = _choose_facet(complex_.facets, face, complex_.vertex_set)
    s = n - len(facet)
    t = n - len(face)
    h = len(qs)
    others = sorted(set(range(1, n + 1)) - set(facet.indices))
    middle = sorted(set(facet.indices) - set(face.indices))
    last = sorted(face.indices)
    permutation = tuple(others + middle + last)
    to_position = {orig: pos for pos, orig in enumerate(permutation, start=1)}

    qs_pos = [q.rename_variables(to_position) for q in qs]
    facet_pos = VarSet.from_indices(range(s + 1, n + 1), n)
    qbars, coeffs = bt_step1_normalize(qs_pos, facet_pos)

    case = 1 if h + 1 > t else 2
    if case == 2 and s > t - 1:
        raise ValueError(
            "inconsistent input: the facet complement is as large as the face "
            "complement, which forces at least that many elements"
        )
    size = t if case == 1 else t - 1
    zero = Polynomial.zero(n)
    abar = tuple(
        tuple(
            coeffs[i].get(j + 1, zero) if i < h else zero
            for j in range(size)
        )
        for i in range(size)
    )
    data = BTData(h, s, t, case, abar, permutation)
    return data, qbars, facet


def bt_cone_elements(
    complex_: SimplicialComplex,
    face: VarSet,
    qs: Sequence[Polynomial],
) -> GeneratorWitness:
    """max{h+1, t} elements for the cone over ``face`` from a new vertex,
    where t counts the vertices outside the face.

    The new ideal is the old one plus x0 times every vertex outside the face.
    Case h+1 > t uses det(abar + x0*Id_t) - x0^t together with the squared
    elements coupled to x0*x_i; otherwise the determinant shrinks by one row
    and is multiplied by (x0 + x_t).
    """
    ideal = stanley_reisner_ideal(complex_)
    if not ideal.is_zero:
        pre = verifier.verify_up_to_radical(qs, ideal)
        if not pre.verdict:
            raise ValueError("input elements do not generate the nonface ideal up to radical")
    elif any(not q.is_zero for q in qs):
        raise ValueError("the nonface ideal is zero; only zero elements are consistent")

    data, qbars, _ = _bt_prepare(complex_, face, qs)
    n = complex_.ambient_n
    n2 = n + 1
    apex = n2
    x0 = Polynomial.variable(apex, n2)
    size = len(data.abar)
    matrix = [
        [
            data.abar[i][j].extend(n2) + (x0 if i == j else 0)
            for j in range(size)
        ]
        for i in range(size)
    ]
    det = _determinant(matrix, n2)
    x0_pow_t = Polynomial.from_term(Term(((apex, data.t),)), 1, n2)

    elements: list[Polynomial] = []
    if data.case == 1:
        elements.append(det - x0_pow_t)
        for i in range(data.t):
            elements.append(qbars[i].extend(n2) + x0 * Polynomial.variable(i + 1, n2))
        elements.extend(q.extend(n2) for q in qbars[data.t:])
        provenance = "bt-case1"
    else:
        x_t = Polynomial.variable(data.t, n2)
        elements.append(det * (x0 + x_t) - x0_pow_t)
        for i in range(data.h):
            elements.append(qbars[i].extend(n2) + x0 * Polynomial.variable(i + 1, n2))
        for j in range(data.h + 1, data.t):
            elements.append(x0 * Polynomial.variable(j, n2))
        provenance = "bt-case2"
    assert len(elements) == max(data.h + 1, data.t)

    back = {pos + 1: orig for pos, orig in enumerate(data.permutation)}
    elements = [e.rename_variables(back) for e in elements]

    outside = face.complement()
    target = minimalize(
        [g.extended(n2) for g in ideal.generators]
        + [SquarefreeMonomial.from_indices((apex, v), n2) for v in outside],
        ambient_n=n2,
    )
    return _certified(elements, target, provenance)


# --- the dual-of-a-path family ---------------------------------------------------


def _family_monomial(i: int, k: int, ambient_n: int) -> SquarefreeMonomial:
    """Generator i of the level-k family: all of x1..xk except two adjacent."""
    support = set(range(1, k + 1)) - {k - i, k - i + 1}
    return SquarefreeMonomial.from_indices(support, ambient_n)


def _family_chain(n: int) -> dict[int, tuple[Polynomial, Polynomial]]:
    """Witness pairs for every level 4..n, all over ambient n."""

    def mono(i: int, k: int) -> Polynomial:
        return Polynomial.from_squarefree(_family_monomial(i, k, n), n)

    chain: dict[int, tuple[Polynomial, Polynomial]] = {}
    chain[4] = (mono(2, 4), mono(1, 4) + mono(3, 4))
    if n >= 5:
        x5 = Polynomial.variable(5, n)
        x1x2 = Polynomial.from_squarefree(SquarefreeMonomial.from_indices((1, 2), n), n)
        x2x3 = Polynomial.from_squarefree(SquarefreeMonomial.from_indices((2, 3), n), n)
        chain[5] = (
            x5 * chain[4][0] - x1x2 * mono(1, 5),
            x5 * chain[4][1] - x2x3 * mono(1, 5),
        )
    for k in range(5, n):
        xk1 = Polynomial.variable(k + 1, n)
        scale = Polynomial.from_term(Term(((k - 2, k - 3),)), 1, n)
        m_next = mono(1, k + 1)
        chain[k + 1] = (
            xk1 * chain[k][0] - scale * chain[k - 1][0] * m_next,
            xk1 * chain[k][1] - scale * chain[k - 1][1] * m_next,
        )
    return chain


def adual_line_family(n: int) -> tuple[MonomialIdeal, Polynomial, Polynomial]:
    """Level-n family instance: the n-1 generators omitting two adjacent
    variables each, plus the recursively built witness pair."""
    if not 4 <= n <= 12:
        raise ValueError(f"family level must be between 4 and 12, got {n}")
    ideal = minimalize(
        (_family_monomial(i, n, n) for i in range(1, n)),
        ambient_n=n,
    )
    q1, q2 = _family_chain(n)[n]
    return ideal, q1, q2
