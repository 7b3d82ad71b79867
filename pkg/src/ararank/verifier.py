"""Independent certification that polynomials generate a squarefree monomial
ideal up to radical.

Containment is exact and combinatorial (monomial-ideal membership term by
term); coverage of each generator is decided by the exact slack-variable
radical test, reusing one Groebner basis of the elements across all generator
queries.  A cheap randomized point filter can refute coverage early but is
never a substitute for the exact check.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from random import Random

from .monomials import MonomialIdeal, SquarefreeMonomial
from .polyalg import (
    DEGREVLEX,
    Polynomial,
    _slack_trick_basis,
    buchberger,
)


def polynomial_in_monomial_ideal(f: Polynomial, ideal: MonomialIdeal) -> bool:
    """Exact membership in a monomial ideal: every term must be divisible by
    some generator.  No basis computation is needed for this direction."""
    if f.ambient_n != ideal.ambient_n:
        raise ValueError("ambient mismatch between polynomial and ideal")
    gen_masks = [g.support.mask for g in ideal.generators]
    for term in f.terms:
        support = 0
        for v, _ in term.exps:
            support |= 1 << (v - 1)
        if not any(mask & ~support == 0 for mask in gen_masks):
            return False
    return True


@dataclass
class RadicalReport:
    """Per-generator evidence that the elements cut out the same zero set."""

    containment_ok: bool
    coverage: dict[SquarefreeMonomial, bool]
    verdict: bool
    timings: dict[str, float]

    def to_json(self) -> dict:
        return {
            "containment_ok": self.containment_ok,
            "coverage": {str(m): ok for m, ok in self.coverage.items()},
            "verdict": self.verdict,
            "timings": self.timings,
        }


def _coverage_query(args: tuple) -> bool:
    basis_elements, monomial, prefix = args
    gb = _slack_trick_basis(
        list(basis_elements),
        Polynomial.from_squarefree(monomial),
        groebner_prefix=prefix,
    )
    return gb.contains_one()


def verify_up_to_radical(
    elements,
    ideal: MonomialIdeal,
    *,
    workers: int = 1,
) -> RadicalReport:
    """Report whether ``elements`` generate ``ideal`` up to radical.

    Containment of each element in the ideal settles one inclusion exactly;
    the other inclusion is one radical-membership query per generator against
    a shared basis of the elements.  Failures are reported, never raised.
    """
    if ideal.is_zero:
        raise ValueError("verification target must be a nonzero ideal")
    elements = list(elements)
    n = ideal.ambient_n
    timings: dict[str, float] = {}
    t_start = time.perf_counter()

    t0 = time.perf_counter()
    containment_ok = all(polynomial_in_monomial_ideal(e, ideal) for e in elements)
    timings["containment"] = time.perf_counter() - t0

    nonzero = [e for e in elements if not e.is_zero]
    t0 = time.perf_counter()
    base = buchberger(nonzero, DEGREVLEX) if nonzero else None
    timings["basis"] = time.perf_counter() - t0

    coverage: dict[SquarefreeMonomial, bool] = {}
    basis_elements = tuple(base.elements) if base is not None else ()
    prefix = len(basis_elements)
    tasks = [
        ((tuple(e.extend(n) for e in basis_elements), g.extended(n), prefix), g)
        for g in ideal.generators
    ]
    if workers > 1 and len(tasks) > 1:
        t0 = time.perf_counter()
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_coverage_query, [t for t, _ in tasks]))
        elapsed = time.perf_counter() - t0
        for (_, g), ok in zip(tasks, results):
            coverage[g] = ok
            timings[f"coverage {g}"] = elapsed / len(tasks)
    else:
        for task, g in tasks:
            t0 = time.perf_counter()
            coverage[g] = _coverage_query(task) if basis_elements else False
            timings[f"coverage {g}"] = time.perf_counter() - t0

    verdict = containment_ok and all(coverage.values())
    timings["total"] = time.perf_counter() - t_start
    return RadicalReport(containment_ok, coverage, verdict, timings)


def check_family_identity(n: int) -> bool:
    """Exact polynomial identity tying the level-n witness pair to the two
    previous levels: the (n-2)nd power of the first generator equals the
    scaled cross combination of the pairs at levels n-1 and n."""
    if not 5 <= n <= 9:
        raise ValueError(f"identity is checked for levels 5..9, got {n}")
    from .constructions import _family_chain, _family_monomial
    from .polyalg import Term

    chain = _family_chain(n)
    q1_prev, q2_prev = chain[n - 1]
    q1_cur, q2_cur = chain[n]
    m1 = Polynomial.from_squarefree(_family_monomial(1, n, n), n)
    scale = Polynomial.from_term(Term(((n - 2, n - 3),)), 1, n)
    lhs = m1 ** (n - 2)
    rhs = -scale * q2_prev * q1_cur + scale * q1_prev * q2_cur
    return lhs == rhs


@dataclass
class Counterexample:
    """Concrete rational point where every element vanishes but a generator
    does not; refutes coverage without any basis computation."""

    point: dict[int, Fraction]
    generator: SquarefreeMonomial

    def to_json(self) -> dict:
        return {
            "point": {f"x{v}": str(c) for v, c in sorted(self.point.items())},
            "generator": str(self.generator),
        }


def fast_negative_check(
    elements,
    ideal: MonomialIdeal,
    *,
    seed: int = 0,
    trials: int = 50,
) -> Counterexample | None:
    """Randomized pre-filter for the coverage direction.

    Samples exact rational points supported on generator supports (and their
    one-variable enlargements), with numerators and denominators below 97.  A
    point where all elements vanish while the coordinates of some generator
    stay nonzero is a sound counterexample; None is inconclusive and the
    exact check must decide.
    """
    if ideal.is_zero:
        raise ValueError("fast_negative_check needs a nonzero ideal")
    elements = list(elements)
    n = ideal.ambient_n
    rng = Random(seed)

    supports: list[int] = []
    for g in ideal.generators:
        if g.support.mask not in supports:
            supports.append(g.support.mask)
    for g in ideal.generators:
        for v in range(1, n + 1):
            grown = g.support.mask | 1 << (v - 1)
            if grown != g.support.mask and grown not in supports:
                supports.append(grown)

    gen_masks = [(g, g.support.mask) for g in ideal.generators]
    for support in supports:
        for _ in range(trials):
            point = {
                v: Fraction(rng.randint(1, 97) * rng.choice((1, -1)), rng.randint(1, 97))
                if support >> (v - 1) & 1
                else Fraction(0)
                for v in range(1, n + 1)
            }
            if all(e.evaluate(point) == 0 for e in elements):
                witness = next(g for g, mask in gen_masks if mask & ~support == 0)
                return Counterexample(point, witness)
    return None
