"""Exact multivariate polynomials over the rationals with Groebner machinery.

Everything is arbitrary-precision Fraction arithmetic; there is no floating
point anywhere.  Division and Buchberger's algorithm track cofactors so that
every ideal-membership answer comes with an exact recombination certificate.
Radical membership goes through the one-extra-variable trick with a block
order that keeps the slack variable greatest.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .monomials import ParseError, SquarefreeMonomial, _check_ambient


class Term:
    """Monomial as a sparse, variable-sorted tuple of (index, exponent).

    Treat as immutable.  The degree-reverse-lexicographic sort key for the
    natural variable precedence is precomputed: it is ambient-independent
    because ties are broken from the highest variable downward.
    """

    __slots__ = ("exps", "degree", "drl_key", "_hash")

    def __init__(self, exps: Iterable[tuple[int, int]] = ()):
        pairs = tuple(sorted((v, e) for v, e in exps if e))
        for v, e in pairs:
            if v < 1 or e < 0:
                raise ValueError(f"bad exponent pair ({v}, {e})")
        _init_term(self, pairs)

    def __eq__(self, other) -> bool:
        return isinstance(other, Term) and self.exps == other.exps

    def __hash__(self) -> int:
        return self._hash

    @property
    def is_one(self) -> bool:
        return not self.exps

    @property
    def max_var(self) -> int:
        return self.exps[-1][0] if self.exps else 0

    def exponent(self, var: int) -> int:
        for v, e in self.exps:
            if v == var:
                return e
        return 0

    def mul(self, other: Term) -> Term:
        return _make_term(_merge_exps(self.exps, other.exps, 1))

    def divides(self, other: Term) -> bool:
        oe = other.exps
        j = 0
        limit = len(oe)
        for v, e in self.exps:
            while j < limit and oe[j][0] < v:
                j += 1
            if j == limit or oe[j][0] != v or oe[j][1] < e:
                return False
        return True

    def div(self, other: Term) -> Term:
        pairs = _merge_exps(self.exps, other.exps, -1)
        if any(e < 0 for _, e in pairs):
            raise ValueError("term division is not exact")
        return _make_term(pairs)

    def lcm(self, other: Term) -> Term:
        out = []
        a, b = self.exps, other.exps
        i = j = 0
        while i < len(a) and j < len(b):
            va, ea = a[i]
            vb, eb = b[j]
            if va < vb:
                out.append(a[i]); i += 1
            elif vb < va:
                out.append(b[j]); j += 1
            else:
                out.append((va, ea if ea >= eb else eb)); i += 1; j += 1
        out.extend(a[i:]); out.extend(b[j:])
        return _make_term(tuple(out))

    def power(self, k: int) -> Term:
        if k < 0:
            raise ValueError("negative power")
        return _make_term(tuple((v, e * k) for v, e in self.exps)) if k else TERM_ONE

    def __str__(self) -> str:
        if self.is_one:
            return "1"
        return "*".join(f"x{v}" if e == 1 else f"x{v}^{e}" for v, e in self.exps)

    def __repr__(self) -> str:
        return f"Term({self.exps!r})"


def _init_term(term: Term, pairs: tuple[tuple[int, int], ...]) -> None:
    term.exps = pairs
    term.degree = sum(e for _, e in pairs)
    term.drl_key = (term.degree,) + tuple((-v, -e) for v, e in reversed(pairs))
    term._hash = hash(pairs)


def _merge_exps(
    a: tuple[tuple[int, int], ...],
    b: tuple[tuple[int, int], ...],
    sign: int,
) -> tuple[tuple[int, int], ...]:
    # merge sorted exponent lists, adding sign * b; drops zeros
    out = []
    i = j = 0
    while i < len(a) and j < len(b):
        va, ea = a[i]
        vb, eb = b[j]
        if va < vb:
            out.append(a[i]); i += 1
        elif vb < va:
            out.append((vb, sign * eb)); j += 1
        else:
            e = ea + sign * eb
            if e:
                out.append((va, e))
            i += 1; j += 1
    out.extend(a[i:])
    out.extend((v, sign * e) for v, e in b[j:])
    return tuple(out)


def _make_term(pairs: tuple[tuple[int, int], ...]) -> Term:
    # trusted constructor: pairs sorted by variable, exponents positive
    term = object.__new__(Term)
    _init_term(term, pairs)
    return term


TERM_ONE = Term()


@dataclass(frozen=True)
class MonomialOrder:
    """Total term order compatible with multiplication.

    ``precedence`` lists variables from greatest to least; None means the
    natural x1 > x2 > ... ordering.
    """

    kind: str = "degrevlex"
    precedence: tuple[int, ...] | None = None

    def __post_init__(self) -> None:
        if self.kind not in ("degrevlex", "lex"):
            raise ValueError(f"unknown order kind {self.kind!r}")

    def _vars(self, ambient_n: int) -> tuple[int, ...]:
        if self.precedence is None:
            return tuple(range(1, ambient_n + 1))
        if sorted(self.precedence) != list(range(1, ambient_n + 1)):
            raise ValueError("precedence must be a permutation of 1..n")
        return self.precedence

    def key(self, term: Term, ambient_n: int):
        if self.kind == "degrevlex" and self.precedence is None:
            return term.drl_key
        prec = self._vars(ambient_n)
        if self.kind == "lex":
            return tuple(term.exponent(v) for v in prec)
        exps = tuple(-term.exponent(v) for v in reversed(prec))
        return (term.degree,) + exps


DEGREVLEX = MonomialOrder("degrevlex")
LEX = MonomialOrder("lex")


class _EliminationOrder:
    """Block order: one designated variable dominates, inner order decides ties."""

    def __init__(self, top_var: int, inner: MonomialOrder = DEGREVLEX):
        self.top_var = top_var
        self.inner = inner
        self.kind = f"elim(x{top_var})"
        self._cache: dict[Term, tuple] = {}

    def key(self, term: Term, ambient_n: int):
        cached = self._cache.get(term)
        if cached is None:
            stripped = Term((v, e) for v, e in term.exps if v != self.top_var)
            cached = (term.exponent(self.top_var),) + tuple(self.inner.key(stripped, ambient_n))
            self._cache[term] = cached
        return cached


class Polynomial:
    """Term map with nonzero exact rational coefficients; treat as immutable."""

    __slots__ = ("terms", "ambient_n")

    def __init__(self, terms: dict | None = None, ambient_n: int = 1, *, _clean: bool = False):
        _check_ambient(ambient_n)
        if _clean:
            object.__setattr__(self, "terms", terms if terms is not None else {})
        else:
            cleaned: dict[Term, Fraction] = {}
            for t, c in (terms or {}).items():
                if not isinstance(t, Term):
                    raise TypeError("polynomial keys must be Term instances")
                if t.max_var > ambient_n:
                    raise ValueError(f"term {t} uses a variable beyond ambient {ambient_n}")
                c = Fraction(c)
                if c:
                    cleaned[t] = c
            object.__setattr__(self, "terms", cleaned)
        object.__setattr__(self, "ambient_n", ambient_n)

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    # -- constructors --------------------------------------------------------

    @classmethod
    def zero(cls, ambient_n: int) -> Polynomial:
        return cls({}, ambient_n, _clean=True)

    @classmethod
    def constant(cls, value, ambient_n: int) -> Polynomial:
        return cls({TERM_ONE: Fraction(value)}, ambient_n)

    @classmethod
    def variable(cls, index: int, ambient_n: int) -> Polynomial:
        if not 1 <= index <= ambient_n:
            raise ValueError(f"variable x{index} outside ambient 1..{ambient_n}")
        return cls({Term(((index, 1),)): Fraction(1)}, ambient_n, _clean=True)

    @classmethod
    def from_term(cls, term: Term, coeff, ambient_n: int) -> Polynomial:
        return cls({term: Fraction(coeff)}, ambient_n)

    @classmethod
    def from_squarefree(cls, monomial: SquarefreeMonomial, ambient_n: int | None = None) -> Polynomial:
        n = monomial.ambient_n if ambient_n is None else ambient_n
        term = Term((v, 1) for v in monomial.support)
        return cls({term: Fraction(1)}, n)

    # -- structure -----------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def total_degree(self) -> int:
        """Largest term degree; -1 for the zero polynomial."""
        return max((t.degree for t in self.terms), default=-1)

    def leading(self, order: MonomialOrder | _EliminationOrder) -> tuple[Term, Fraction] | None:
        if not self.terms:
            return None
        lt = max(self.terms, key=lambda t: order.key(t, self.ambient_n))
        return lt, self.terms[lt]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Polynomial)
            and self.ambient_n == other.ambient_n
            and self.terms == other.terms
        )

    __hash__ = None  # mutable-looking container; identity hashing would mislead

    def _coerce(self, other) -> Polynomial:
        if isinstance(other, Polynomial):
            if other.ambient_n != self.ambient_n:
                raise ValueError(f"ambient mismatch: {self.ambient_n} vs {other.ambient_n}")
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial.constant(other, self.ambient_n)
        return NotImplemented

    # -- ring operations -----------------------------------------------------

    def __add__(self, other) -> Polynomial:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        res = dict(self.terms)
        for t, c in other.terms.items():
            s = res.get(t, 0) + c
            if s:
                res[t] = s
            else:
                res.pop(t, None)
        return Polynomial(res, self.ambient_n, _clean=True)

    __radd__ = __add__

    def __neg__(self) -> Polynomial:
        return Polynomial({t: -c for t, c in self.terms.items()}, self.ambient_n, _clean=True)

    def __sub__(self, other) -> Polynomial:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        res = dict(self.terms)
        for t, c in other.terms.items():
            s = res.get(t, 0) - c
            if s:
                res[t] = s
            else:
                res.pop(t, None)
        return Polynomial(res, self.ambient_n, _clean=True)

    def __rsub__(self, other) -> Polynomial:
        return -(self - other)

    def __mul__(self, other) -> Polynomial:
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            if not c:
                return Polynomial.zero(self.ambient_n)
            return Polynomial({t: cc * c for t, cc in self.terms.items()}, self.ambient_n, _clean=True)
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        res: dict[Term, Fraction] = {}
        for t1, c1 in self.terms.items():
            for t2, c2 in other.terms.items():
                t = t1.mul(t2)
                s = res.get(t, 0) + c1 * c2
                if s:
                    res[t] = s
                else:
                    res.pop(t, None)
        return Polynomial(res, self.ambient_n, _clean=True)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> Polynomial:
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = Polynomial.constant(1, self.ambient_n)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    def mul_term(self, term: Term, coeff) -> Polynomial:
        c = Fraction(coeff)
        if not c:
            return Polynomial.zero(self.ambient_n)
        return Polynomial(
            {t.mul(term): cc * c for t, cc in self.terms.items()},
            self.ambient_n,
            _clean=True,
        )

    def extend(self, ambient_n: int) -> Polynomial:
        if ambient_n < self.ambient_n:
            raise ValueError("cannot shrink the ambient variable set")
        return Polynomial(dict(self.terms), ambient_n, _clean=True)

    def substitute(self, var: int, replacement: Polynomial) -> Polynomial:
        if replacement.ambient_n != self.ambient_n:
            raise ValueError("ambient mismatch in substitution")
        out = Polynomial.zero(self.ambient_n)
        for t, c in self.terms.items():
            e = t.exponent(var)
            rest = Term((v, k) for v, k in t.exps if v != var)
            piece = Polynomial.from_term(rest, c, self.ambient_n)
            if e:
                piece = piece * replacement**e
            out = out + piece
        return out

    def rename_variables(self, mapping: dict[int, int], ambient_n: int | None = None) -> Polynomial:
        """Relabel variables by a bijective index map (identity if missing)."""
        n = self.ambient_n if ambient_n is None else ambient_n
        res: dict[Term, Fraction] = {}
        for t, c in self.terms.items():
            nt = Term((mapping.get(v, v), e) for v, e in t.exps)
            if nt in res:
                raise ValueError("variable relabeling is not injective")
            res[nt] = c
        return Polynomial(res, n)

    def evaluate(self, point: dict[int, Fraction]) -> Fraction:
        total = Fraction(0)
        for t, c in self.terms.items():
            value = c
            for v, e in t.exps:
                if v not in point:
                    raise ValueError(f"no value given for x{v}")
                value *= point[v] ** e
            total += value
        return total

    # -- printing -------------------------------------------------------------

    def __str__(self) -> str:
        return format_polynomial(self)

    def __repr__(self) -> str:
        return f"Polynomial({format_polynomial(self)!r}, n={self.ambient_n})"


def format_polynomial(poly: Polynomial, order: MonomialOrder = DEGREVLEX) -> str:
    if poly.is_zero:
        return "0"
    terms = sorted(poly.terms, key=lambda t: order.key(t, poly.ambient_n), reverse=True)
    parts: list[str] = []
    for t in terms:
        c = poly.terms[t]
        mag = abs(c)
        if t.is_one:
            body = str(mag)
        elif mag == 1:
            body = str(t)
        else:
            body = f"{mag}*{t}"
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(parts)


# --- parsing -----------------------------------------------------------------


class _PolyScanner:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def _line_col(self) -> tuple[int, int]:
        consumed = self.text[: self.pos]
        line = consumed.count("\n") + 1
        col = self.pos - (consumed.rfind("\n") + 1) + 1
        return line, col

    def error(self, message: str) -> ParseError:
        line, col = self._line_col()
        return ParseError(message, line, col)

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos] in " \t\r\n":
            self.pos += 1

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take_int(self) -> int:
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            raise self.error("expected a number")
        return int(self.text[start : self.pos])


def parse_polynomial(text: str, ambient_n: int | None = None) -> Polynomial:
    """Parse ``x1*x4*x5 - 3/2*x1^2*x2`` syntax; round-trips with the printer."""
    sc = _PolyScanner(text)
    terms: list[tuple[Fraction, dict[int, int]]] = []
    sc.skip_ws()
    if not sc.peek():
        raise sc.error("empty polynomial")
    max_var = 0
    while True:
        sign = Fraction(1)
        while sc.peek() in "+-":
            if sc.peek() == "-":
                sign = -sign
            sc.pos += 1
            sc.skip_ws()
        coeff = sign
        exps: dict[int, int] = {}
        saw_factor = False
        while True:
            sc.skip_ws()
            ch = sc.peek()
            if ch.isdigit():
                num = sc.take_int()
                den = 1
                if sc.peek() == "/":
                    sc.pos += 1
                    den = sc.take_int()
                    if den == 0:
                        raise sc.error("zero denominator")
                coeff *= Fraction(num, den)
                saw_factor = True
            elif ch == "x":
                sc.pos += 1
                if not sc.peek().isdigit():
                    raise sc.error("variable index expected after 'x'")
                var = sc.take_int()
                if var < 1:
                    raise sc.error("variable index must be >= 1")
                exp = 1
                if sc.peek() == "^":
                    sc.pos += 1
                    exp = sc.take_int()
                exps[var] = exps.get(var, 0) + exp
                max_var = max(max_var, var)
                saw_factor = True
            else:
                raise sc.error(f"unexpected character {ch!r}" if ch else "unexpected end of input")
            sc.skip_ws()
            if sc.peek() == "*":
                sc.pos += 1
                continue
            break
        if not saw_factor:
            raise sc.error("empty term")
        terms.append((coeff, exps))
        sc.skip_ws()
        if not sc.peek():
            break
        if sc.peek() not in "+-":
            raise sc.error(f"expected '+' or '-', got {sc.peek()!r}")
    n = ambient_n if ambient_n is not None else max(max_var, 1)
    if max_var > n:
        raise ParseError(f"variable x{max_var} exceeds ambient {n}", 1, 1)
    acc: dict[Term, Fraction] = {}
    for coeff, exps in terms:
        t = Term(exps.items())
        acc[t] = acc.get(t, Fraction(0)) + coeff
    return Polynomial(acc, n)


# --- division and Groebner bases ----------------------------------------------


def _common_ambient(polys: Sequence[Polynomial]) -> int:
    ns = {p.ambient_n for p in polys}
    if len(ns) > 1:
        raise ValueError(f"ambient mismatch among polynomials: {sorted(ns)}")
    return ns.pop()


def divide_with_cofactors(
    f: Polynomial,
    gens: Sequence[Polynomial],
    order: MonomialOrder | _EliminationOrder = DEGREVLEX,
) -> tuple[list[Polynomial], Polynomial]:
    """Multivariate division: ``f = sum(cofactor_k * gens_k) + remainder`` with
    no remainder term divisible by a generator leading term.  Exact identity."""
    gens = list(gens)
    if any(g.is_zero for g in gens):
        raise ValueError("division by a zero polynomial")
    n = _common_ambient([f, *gens]) if gens else f.ambient_n
    key = lambda t: order.key(t, n)
    leads = [g.leading(order) for g in gens]
    work = dict(f.terms)
    remainder: dict[Term, Fraction] = {}
    cof_terms: list[dict[Term, Fraction]] = [{} for _ in gens]
    while work:
        lt = max(work, key=key)
        lc = work[lt]
        for k, (gt, gc) in enumerate(leads):
            if gt.divides(lt):
                qt = lt.div(gt)
                qc = lc / gc
                cof_terms[k][qt] = qc
                for t, c in gens[k].terms.items():
                    nt = t.mul(qt)
                    s = work.get(nt, 0) - qc * c
                    if s:
                        work[nt] = s
                    else:
                        work.pop(nt, None)
                break
        else:
            remainder[lt] = lc
            del work[lt]
    cofactors = [Polynomial(ct, n, _clean=True) for ct in cof_terms]
    return cofactors, Polynomial(remainder, n, _clean=True)


def s_polynomial(f: Polynomial, g: Polynomial, order=DEGREVLEX) -> Polynomial:
    ltf, lcf = f.leading(order)
    ltg, lcg = g.leading(order)
    l = ltf.lcm(ltg)
    return f.mul_term(l.div(ltf), Fraction(1) / lcf) - g.mul_term(l.div(ltg), Fraction(1) / lcg)


class GroebnerBasis:
    """Groebner basis with optional exact expressions in the source generators."""

    def __init__(
        self,
        elements: tuple[Polynomial, ...],
        order,
        source: tuple[Polynomial, ...],
        expressions: tuple[tuple[Polynomial, ...], ...] | None,
    ):
        self.elements = elements
        self.order = order
        self.source = source
        self.expressions = expressions

    @property
    def ambient_n(self) -> int:
        if self.elements:
            return self.elements[0].ambient_n
        if self.source:
            return self.source[0].ambient_n
        return 1

    def reduce(self, f: Polynomial) -> tuple[list[Polynomial], Polynomial]:
        if not self.elements:
            return [], f
        return divide_with_cofactors(f, self.elements, self.order)

    def normal_form(self, f: Polynomial) -> Polynomial:
        return self.reduce(f)[1]

    def contains_one(self) -> bool:
        return any(not e.is_zero and e.leading(self.order)[0].is_one for e in self.elements)

    def express(self, f: Polynomial) -> tuple[Polynomial, ...] | None:
        """Cofactors of f over the source generators, or None if f is not a member."""
        if self.expressions is None:
            raise ValueError("basis was computed without cofactor tracking")
        cofs, r = self.reduce(f)
        if not r.is_zero:
            return None
        n = f.ambient_n
        out = [Polynomial.zero(n) for _ in self.source]
        for c, expr in zip(cofs, self.expressions):
            if c.is_zero:
                continue
            for j, e in enumerate(expr):
                if not e.is_zero:
                    out[j] = out[j] + c * e
        return tuple(out)


def buchberger(
    gens: Sequence[Polynomial],
    order: MonomialOrder | _EliminationOrder = DEGREVLEX,
    *,
    track: bool = False,
    groebner_prefix: int = 0,
) -> GroebnerBasis:
    """Buchberger's algorithm, normal pair-selection strategy.

    Pairs with coprime leading terms are skipped, and the classical chain
    criterion prunes pairs subsumed by an already-handled third element.  With
    ``track=True`` every basis element carries an exact expression in the
    source generators.  The first ``groebner_prefix`` generators may be marked
    as an already-computed basis (their mutual pairs are skipped).
    """
    source = tuple(gens)
    if not source:
        return GroebnerBasis((), order, (), () if track else None)
    n = _common_ambient(source)
    one = Polynomial.constant(1, n)
    basis: list[Polynomial] = []
    exprs: list[list[Polynomial]] = []
    prefix_kept = 0
    for idx, g in enumerate(source):
        if g.is_zero:
            continue
        basis.append(g)
        if idx < groebner_prefix:
            prefix_kept += 1
        if track:
            exprs.append([one if j == idx else Polynomial.zero(n) for j in range(len(source))])
    if groebner_prefix and prefix_kept != groebner_prefix:
        raise ValueError("groebner_prefix generators must be nonzero")

    leads = [b.leading(order) for b in basis]
    pending: set[tuple[int, int]] = set()
    heap: list[tuple] = []

    def push(i: int, j: int) -> None:
        l = leads[i][0].lcm(leads[j][0])
        heapq.heappush(heap, (order.key(l, n), i, j))
        pending.add((i, j))

    def unit_basis(expr) -> GroebnerBasis:
        # a nonzero constant entered the basis: the ideal is the whole ring
        return GroebnerBasis((one,), order, source, (tuple(expr),) if track else None)

    for idx, b in enumerate(basis):
        if leads[idx][0].is_one:
            scale = Fraction(1) / leads[idx][1]
            return unit_basis([e * scale for e in exprs[idx]] if track else None)

    for j in range(len(basis)):
        for i in range(j):
            if j < prefix_kept:
                continue
            push(i, j)

    while heap:
        _, i, j = heapq.heappop(heap)
        if (i, j) not in pending:
            continue
        pending.discard((i, j))
        lti, _ = leads[i]
        ltj, _ = leads[j]
        l = lti.lcm(ltj)
        if l.degree == lti.degree + ltj.degree:
            continue  # coprime leading terms
        skip = False
        for k in range(len(basis)):
            if k in (i, j):
                continue
            if leads[k][0].divides(l):
                a = (min(i, k), max(i, k))
                b = (min(j, k), max(j, k))
                if a not in pending and b not in pending:
                    skip = True
                    break
        if skip:
            continue
        s = s_polynomial(basis[i], basis[j], order)
        cofs, r = divide_with_cofactors(s, basis, order)
        if r.is_zero:
            continue
        lt, lc = r.leading(order)
        r = r * (Fraction(1) / lc)
        if track:
            ti = leads[i][0]
            tj = leads[j][0]
            mi = l.div(ti)
            mj = l.div(tj)
            ci = Fraction(1) / leads[i][1]
            cj = Fraction(1) / leads[j][1]
            vec = [
                exprs[i][t].mul_term(mi, ci) - exprs[j][t].mul_term(mj, cj)
                for t in range(len(source))
            ]
            for k, c in enumerate(cofs):
                if c.is_zero:
                    continue
                vec = [v - c * e for v, e in zip(vec, exprs[k])]
            exprs.append([v * (Fraction(1) / lc) for v in vec])
        if lt.is_one:
            return unit_basis(exprs[-1] if track else None)
        basis.append(r)
        leads.append(r.leading(order))
        new = len(basis) - 1
        for k in range(new):
            push(k, new)

    # Minimal basis: drop elements whose leading term another element divides.
    order_idx = sorted(range(len(basis)), key=lambda k: order.key(leads[k][0], n))
    kept: list[int] = []
    for k in order_idx:
        if not any(leads[m][0].divides(leads[k][0]) for m in kept):
            kept.append(k)
    kept.sort()
    elements = tuple(basis[k] for k in kept)
    expressions = tuple(tuple(exprs[k]) for k in kept) if track else None
    return GroebnerBasis(elements, order, source, expressions)


def is_groebner_basis(polys: Sequence[Polynomial], order=DEGREVLEX) -> bool:
    """Full S-pair check with no shortcuts; used as a post-hoc soundness oracle."""
    ps = [p for p in polys if not p.is_zero]
    for j in range(len(ps)):
        for i in range(j):
            s = s_polynomial(ps[i], ps[j], order)
            if not divide_with_cofactors(s, ps, order)[1].is_zero:
                return False
    return True


# --- membership certificates ---------------------------------------------------


@dataclass(frozen=True)
class MembershipCertificate:
    """Exact identity ``target = sum(cofactor_k * generator_k)``; validated on
    construction."""

    target: Polynomial
    generators: tuple[Polynomial, ...]
    cofactors: tuple[Polynomial, ...]

    def __post_init__(self) -> None:
        if len(self.generators) != len(self.cofactors):
            raise ValueError("one cofactor per generator is required")
        total = Polynomial.zero(self.target.ambient_n)
        for c, g in zip(self.cofactors, self.generators):
            total = total + c * g
        if total != self.target:
            raise ValueError("certificate does not recombine to the target")


@dataclass(frozen=True)
class PowerCertificate:
    """Membership of ``base**exponent`` with the smallest exponent found."""

    base: SquarefreeMonomial
    exponent: int
    certificate: MembershipCertificate

    def __post_init__(self) -> None:
        if self.exponent < 1:
            raise ValueError("exponent must be >= 1")
        n = self.certificate.target.ambient_n
        expected = Polynomial.from_squarefree(self.base, n) ** self.exponent
        if expected != self.certificate.target:
            raise ValueError("certificate target is not the stated power of the base monomial")


def membership(
    f: Polynomial,
    gens: Sequence[Polynomial],
    order: MonomialOrder = DEGREVLEX,
) -> MembershipCertificate | None:
    """Certificate that f lies in the ideal of ``gens``, or None."""
    source = tuple(gens)
    gb = buchberger(source, order, track=True)
    cofs = gb.express(f)
    if cofs is None:
        return None
    return MembershipCertificate(f, source, cofs)


def _slack_trick_basis(
    gens: Sequence[Polynomial],
    f: Polynomial,
    *,
    groebner_prefix: int = 0,
) -> GroebnerBasis:
    # The unit-ideal question is order-independent, so the slack variable is
    # simply appended as the least variable under degrevlex: far cheaper in
    # practice than an elimination block, and it keeps any precomputed basis
    # of the x-only generators valid as a prefix.
    n = _common_ambient([f, *gens]) if gens else f.ambient_n
    slack = n + 1
    lifted = [g.extend(slack) for g in gens]
    trick = Polynomial.constant(1, slack) - Polynomial.variable(slack, slack) * f.extend(slack)
    return buchberger(lifted + [trick], DEGREVLEX, groebner_prefix=groebner_prefix)


def radical_membership(f: Polynomial, gens: Sequence[Polynomial]) -> bool:
    """True iff f vanishes wherever all generators vanish (algebraic closure).

    Decided exactly: f is in the radical iff 1 lies in the ideal extended by
    ``1 - y*f`` for a fresh slack variable y.
    """
    nz = [g for g in gens if not g.is_zero]
    if f.is_zero:
        return True
    if not nz:
        return False
    return _slack_trick_basis(nz, f).contains_one()


def power_membership(
    monomial: SquarefreeMonomial,
    gens: Sequence[Polynomial],
    lmax: int | None = None,
) -> PowerCertificate:
    """Smallest power of ``monomial`` inside the ideal, with its certificate.

    The caller guarantees the monomial lies in the radical, so a power exists;
    exceeding ``lmax`` (default twice the ambient size) is a configuration
    error and raises.
    """
    source = tuple(gens)
    n = _common_ambient(source) if source else monomial.ambient_n
    if lmax is None:
        lmax = 2 * n
    if lmax < 1:
        raise ValueError("lmax must be >= 1")
    gb = buchberger(source, DEGREVLEX, track=True)
    base = Polynomial.from_squarefree(monomial, n)
    p = Polynomial.constant(1, n)
    for exponent in range(1, lmax + 1):
        p = p * base
        cofs = gb.express(p)
        if cofs is not None:
            cert = MembershipCertificate(p, source, cofs)
            return PowerCertificate(monomial, exponent, cert)
    raise ValueError(
        f"no power of {monomial} up to {lmax} lies in the ideal; "
        "raise lmax or check radical membership first"
    )
