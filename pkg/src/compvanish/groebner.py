"""Gröbner-basis refutation of complementary vanishing.

The entries of the symbolic product ``AB`` (``A`` patterned on ``G``,
``B`` on the complement) generate an ideal.  If 1 lies in it, no real pair
with ``AB = 0`` exists.  Before computing, the search space is cut down:
forced-zero diagonals are dropped, a spanning forest of one side plus one
nonzero diagonal there are fixed to 1 (diagonal rescaling), and one entry
of the other matrix is fixed to 1 (global scaling).

Polynomials have integer coefficients kept primitive.  Monomials are
packed into one integer whose natural order is degree reverse
lexicographic, so multiplying monomials is integer addition.
"""

from __future__ import annotations

import enum
import time
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Iterable, Optional, Sequence

from .graph import Graph, complement
from .rules import DiagonalConstraints, Side, Status, diagonal_constraints

# 7 payload bits + 1 guard bit per variable
_FIELD = 8
_FMASK = (1 << (_FIELD - 1)) - 1


# -- variables and monomial order --------------------------------------------------------


@dataclass(frozen=True, order=True)
class VarId:
    side: Side
    i: int
    j: int

    @property
    def diagonal(self) -> bool:
        return self.i == self.j

    def __str__(self) -> str:
        return f"{self.side.value.lower()}{self.i + 1}_{self.j + 1}"


def _priority(v: VarId) -> tuple:
    # off-diagonal A, off-diagonal B, diagonal A, diagonal B; lex inside a group
    return (v.diagonal, v.side is Side.B, v.i, v.j)


@dataclass(frozen=True)
class MonomialOrder:
    """Degree reverse lexicographic order; ``variables[0]`` is the largest.

    A monomial is stored as a key ``deg * S + (S - 1 - packed)`` where
    ``packed`` holds the exponent of variable ``k`` in field ``k``, so the
    smallest variable is most significant.  Larger key means larger
    monomial.
    """

    variables: tuple[VarId, ...]

    @classmethod
    def for_variables(cls, variables: Iterable[VarId]) -> "MonomialOrder":
        return cls(tuple(sorted(set(variables), key=_priority)))

    @property
    def nvars(self) -> int:
        return len(self.variables)

    @property
    def span(self) -> int:
        return 1 << (_FIELD * self.nvars)

    @property
    def one(self) -> int:
        return self.span - 1

    def guard(self) -> int:
        return sum(1 << (_FIELD * k + _FIELD - 1) for k in range(self.nvars))

    def packed(self, key: int) -> int:
        return self.span - 1 - key % self.span

    def degree(self, key: int) -> int:
        return key // self.span

    def monomial(self, exps: Sequence[int]) -> int:
        p = 0
        for k, e in enumerate(exps):
            if e > _FMASK:
                raise ValueError("exponent too large")
            p |= e << (_FIELD * k)
        return sum(exps) * self.span + self.span - 1 - p

    def exponents(self, key: int) -> list[int]:
        p = self.packed(key)
        return [(p >> (_FIELD * k)) & _FMASK for k in range(self.nvars)]

    def variable(self, k: int) -> int:
        exps = [0] * self.nvars
        exps[k] = 1
        return self.monomial(exps)

    def mul(self, m1: int, m2: int) -> int:
        return m1 + m2 - self.one

    def divides(self, m1: int, m2: int) -> bool:
        p1, p2 = self.packed(m1), self.packed(m2)
        h = self.guard()
        return ((p2 | h) - p1) & h == h

    def quotient(self, m2: int, m1: int) -> int:
        """``m2 / m1``, assuming ``m1`` divides ``m2``."""
        return m2 - m1 + self.one

    def lcm(self, m1: int, m2: int) -> int:
        e1, e2 = self.exponents(m1), self.exponents(m2)
        return self.monomial([max(a, b) for a, b in zip(e1, e2)])

    def coprime(self, m1: int, m2: int) -> bool:
        return not any(a and b for a, b in zip(self.exponents(m1), self.exponents(m2)))

    def format(self, key: int) -> str:
        parts = []
        for v, e in zip(self.variables, self.exponents(key)):
            if e:
                parts.append(str(v) if e == 1 else f"{v}^{e}")
        return "*".join(parts) or "1"


# -- polynomials ----------------------------------------------------------------------------


Term = tuple[int, int]  # (monomial key, integer coefficient)


@dataclass(frozen=True)
class Polynomial:
    """Primitive integer polynomial, terms sorted by decreasing monomial."""

    terms: tuple[Term, ...]

    @classmethod
    def from_terms(cls, terms: Iterable[Term]) -> "Polynomial":
        acc: dict[int, int] = {}
        for m, c in terms:
            acc[m] = acc.get(m, 0) + c
        return _normalise(sorted(((m, c) for m, c in acc.items() if c), reverse=True))

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def lm(self) -> int:
        return self.terms[0][0]

    @property
    def lc(self) -> int:
        return self.terms[0][1]

    def format(self, order: MonomialOrder) -> str:
        if not self.terms:
            return "0"
        out = []
        for k, (m, c) in enumerate(self.terms):
            mono = order.format(m)
            sign = "-" if c < 0 else ("+" if k else "")
            mag = abs(c)
            body = mono if mag == 1 and mono != "1" else (
                str(mag) if mono == "1" else f"{mag}*{mono}")
            out.append(f"{sign} {body}" if k else f"{sign}{body}")
        return " ".join(out)


def _normalise(terms: list[Term]) -> Polynomial:
    if not terms:
        return Polynomial(())
    g = reduce(gcd, (c for _, c in terms))
    if terms[0][1] < 0:
        g = -g
    if g != 1:
        terms = [(m, c // g) for m, c in terms]
    return Polynomial(tuple(terms))


def _combine(f: Sequence[Term], cf: int, g: Sequence[Term], cg: int, shift: int,
             order: MonomialOrder) -> list[Term]:
    """``cf * f - cg * shift * g`` as a sorted term list."""
    one = order.one
    out: list[Term] = []
    i = j = 0
    nf, ng = len(f), len(g)
    while i < nf or j < ng:
        if j < ng:
            mg = g[j][0] + shift - one
        if i < nf and (j >= ng or f[i][0] > mg):
            out.append((f[i][0], cf * f[i][1]))
            i += 1
        elif i >= nf or mg > f[i][0]:
            out.append((mg, -cg * g[j][1]))
            j += 1
        else:
            c = cf * f[i][1] - cg * g[j][1]
            if c:
                out.append((mg, c))
            i += 1
            j += 1
    return out


def _reducer(m: int, basis: Sequence[Polynomial], order: MonomialOrder) -> Optional[Polynomial]:
    for g in basis:
        if order.divides(g.lm, m):
            return g
    return None


def reduce_full(f: Polynomial, basis: Sequence[Polynomial], order: MonomialOrder) -> Polynomial:
    """Remainder of ``f`` modulo ``basis`` (up to a nonzero scalar)."""
    terms = list(f.terms)
    done: list[Term] = []
    while terms:
        m, c = terms[0]
        g = _reducer(m, basis, order)
        if g is None:
            done.append(terms.pop(0))
            continue
        d = gcd(c, g.lc)
        cf, cg = g.lc // d, c // d
        if cf != 1:
            done = [(mm, cc * cf) for mm, cc in done]
        terms = _combine(terms, cf, g.terms, cg, order.quotient(m, g.lm), order)
        if cf != 1:
            k = reduce(gcd, (cc for _, cc in done + terms), 0)
            if k > 1:
                done = [(mm, cc // k) for mm, cc in done]
                terms = [(mm, cc // k) for mm, cc in terms]
    return _normalise(done)


def s_polynomial(f: Polynomial, g: Polynomial, order: MonomialOrder) -> Polynomial:
    l = order.lcm(f.lm, g.lm)
    d = gcd(f.lc, g.lc)
    return _normalise(_combine(_shifted(f, order.quotient(l, f.lm), order), g.lc // d,
                               g.terms, f.lc // d, order.quotient(l, g.lm), order))


def _shifted(f: Polynomial, shift: int, order: MonomialOrder) -> list[Term]:
    one = order.one
    return [(m + shift - one, c) for m, c in f.terms]


# -- Buchberger ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Limits:
    max_spolys: int = 200_000
    max_degree: int = 12
    timeout: float = 600.0


@dataclass
class Progress:
    spolys: int = 0
    zero_reductions: int = 0
    basis_size: int = 0
    pending_pairs: int = 0
    skipped_by_degree: int = 0
    seconds: float = 0.0
    reason: str = ""


@dataclass
class GroebnerResult:
    """``basis`` is a reduced Gröbner basis when ``complete``; otherwise it is
    the partial generating set reached before a limit stopped the run."""

    basis: list[Polynomial]
    complete: bool
    progress: Progress
    order: MonomialOrder

    @property
    def contains_one(self) -> bool:
        return any(_is_constant(p, self.order) for p in self.basis)


def _is_constant(p: Polynomial, order: MonomialOrder) -> bool:
    return len(p.terms) == 1 and p.lm == order.one


Pair = tuple[int, int, int]  # (lcm, i, j)


def _update(pairs: list[Pair], active: list[int], polys: list[Polynomial], h: int,
            order: MonomialOrder) -> tuple[list[Pair], list[int]]:
    """Gebauer-Moller update for a new basis element ``polys[h]``."""
    lh = polys[h].lm
    cand = [(order.lcm(polys[g].lm, lh), g) for g in active]
    kept: list[tuple[int, int]] = []
    for k, (l1, g1) in enumerate(cand):
        if order.coprime(polys[g1].lm, lh):
            kept.append((l1, g1))
            continue
        rest = cand[k + 1:] + kept
        if not any(order.divides(l2, l1) for l2, _ in rest):
            kept.append((l1, g1))
    fresh = [(l, g, h) for l, g in kept if not order.coprime(polys[g].lm, lh)]
    old = []
    for l, i, j in pairs:
        if (order.divides(lh, l) and order.lcm(polys[i].lm, lh) != l
                and order.lcm(polys[j].lm, lh) != l):
            continue
        old.append((l, i, j))
    still = [g for g in active if not order.divides(lh, polys[g].lm)]
    return old + fresh, still + [h]


def buchberger(gens: Iterable[Polynomial], order: MonomialOrder,
               limits: Limits = Limits()) -> GroebnerResult:
    """Buchberger's algorithm, normal selection strategy, Gebauer-Moller
    criteria.  Stops early once the ideal is seen to contain 1."""
    start = time.monotonic()
    progress = Progress()
    polys: list[Polynomial] = []
    active: list[int] = []
    pairs: list[Pair] = []

    def finish(complete: bool, reason: str = "") -> GroebnerResult:
        basis = [polys[g] for g in active]
        progress.basis_size = len(basis)
        progress.pending_pairs = len(pairs)
        progress.seconds = time.monotonic() - start
        progress.reason = reason
        if complete:
            basis = _reduced(basis, order)
        return GroebnerResult(basis, complete, progress, order)

    def insert(h: Polynomial) -> bool:
        nonlocal pairs, active
        if _is_constant(h, order):
            polys.append(Polynomial(((order.one, 1),)))
            active = [len(polys) - 1]
            pairs = []
            return True
        polys.append(h)
        pairs, active = _update(pairs, active, polys, len(polys) - 1, order)
        return False

    for g in gens:
        if g.is_zero:
            continue
        r = reduce_full(g, [polys[k] for k in active], order)
        if not r.is_zero and insert(r):
            return finish(True)

    while pairs:
        if progress.spolys >= limits.max_spolys:
            return finish(False, "s-polynomial limit")
        if time.monotonic() - start > limits.timeout:
            return finish(False, "timeout")
        pairs.sort(reverse=True)
        l, i, j = pairs.pop()
        if order.degree(l) > limits.max_degree:
            progress.skipped_by_degree = 1 + len(pairs)
            return finish(False, "degree limit")
        progress.spolys += 1
        s = s_polynomial(polys[i], polys[j], order)
        r = reduce_full(s, [polys[k] for k in active], order)
        if r.is_zero:
            progress.zero_reductions += 1
            continue
        if insert(r):
            return finish(True)
    return finish(True)


def _reduced(basis: list[Polynomial], order: MonomialOrder) -> list[Polynomial]:
    minimal = [p for p in basis
               if not any(q is not p and order.divides(q.lm, p.lm) and
                          (q.lm != p.lm or id(q) < id(p)) for q in basis)]
    out = []
    for k, p in enumerate(minimal):
        others = minimal[:k] + minimal[k + 1:]
        out.append(reduce_full(p, others, order))
    return sorted(out, key=lambda p: p.lm, reverse=True)


def is_groebner_basis(basis: Sequence[Polynomial], order: MonomialOrder) -> bool:
    """Every pairwise S-polynomial reduces to zero."""
    for a in range(len(basis)):
        for b in range(a + 1, len(basis)):
            if not reduce_full(s_polynomial(basis[a], basis[b], order), basis, order).is_zero:
                return False
    return True


# -- the ideal of AB = 0 ------------------------------------------------------------------


class PreconditionViolated(ValueError):
    pass


class TreeSide(enum.Enum):
    GRAPH = "G"
    COMPLEMENT = "co-G"


@dataclass(frozen=True)
class Fixing:
    variable: VarId
    value: int
    why: str

    def __str__(self) -> str:
        return f"{self.variable} = {self.value} ({self.why})"


@dataclass
class Ideal:
    generators: list[Polynomial]
    order: MonomialOrder
    fixed: list[Fixing]
    nonzero: set[VarId]


def bfs_tree(g: Graph, root: Optional[int] = None) -> list[tuple[int, int]]:
    """BFS spanning forest; the first root defaults to a vertex of maximum degree."""
    if g.n == 0:
        return []
    if root is None:
        root = max(range(g.n), key=lambda v: (g.degree(v), -v))
    seen = {root}
    edges = []
    for r in [root] + [v for v in range(g.n) if v != root]:
        if r in seen and r != root:
            continue
        seen.add(r)
        queue = [r]
        for v in queue:
            for u in g.neighbors(v):
                if u not in seen:
                    seen.add(u)
                    queue.append(u)
                    edges.append((min(u, v), max(u, v)))
    return edges


def build_ideal(g: Graph, dc: Optional[DiagonalConstraints] = None,
                tree_side: TreeSide = TreeSide.GRAPH,
                tree: Optional[Sequence[tuple[int, int]]] = None,
                root: Optional[int] = None,
                diagonal_one: Optional[int] = None,
                other_one: Optional[tuple[int, int]] = None) -> Ideal:
    """Generators of the ideal of ``AB = 0`` after the variable reductions.

    ``tree``, ``diagonal_one`` and ``other_one`` override the default
    choices (a BFS tree, the first forced-nonzero diagonal on the tree side,
    the first off-diagonal entry of the other matrix).
    """
    dc = diagonal_constraints(g) if dc is None else dc
    if dc.contradiction is not None:
        raise PreconditionViolated("diagonal constraints already contradict")
    co = complement(g)
    n = g.n
    tree_s = Side.A if tree_side is TreeSide.GRAPH else Side.B
    host = g if tree_s is Side.A else co
    other_host = co if tree_s is Side.A else g
    other_s = tree_s.other

    value: dict[VarId, int] = {}
    fixed: list[Fixing] = []
    nonzero: set[VarId] = set()
    for side, gr in ((Side.A, g), (Side.B, co)):
        for i, j in gr.edges():
            nonzero.add(VarId(side, i, j))
        for i, st in enumerate(dc.status(side)):
            if st is Status.ZERO:
                value[VarId(side, i, i)] = 0
                fixed.append(Fixing(VarId(side, i, i), 0, "forced zero"))
            elif st is Status.NONZERO:
                nonzero.add(VarId(side, i, i))

    tree_edges = list(tree) if tree is not None else bfs_tree(host, root)
    for i, j in tree_edges:
        i, j = min(i, j), max(i, j)
        if not host.has_edge(i, j):
            raise PreconditionViolated(f"tree edge {(i, j)} is not an edge")
        v = VarId(tree_s, i, j)
        value[v] = 1
        fixed.append(Fixing(v, 1, "spanning forest"))
    if diagonal_one is None:
        diagonal_one = next((i for i, st in enumerate(dc.status(tree_s))
                             if st is Status.NONZERO), None)
    if diagonal_one is not None:
        if dc.status(tree_s)[diagonal_one] is not Status.NONZERO:
            raise PreconditionViolated(f"diagonal {diagonal_one} is not known nonzero")
        v = VarId(tree_s, diagonal_one, diagonal_one)
        value[v] = 1
        fixed.append(Fixing(v, 1, "diagonal scaling"))
    if other_one is None:
        edges = other_host.edges()
        if edges:
            other_one = edges[0]
        else:
            other_one = next(((i, i) for i, st in enumerate(dc.status(other_s))
                              if st is Status.NONZERO), None)
    if other_one is not None:
        v = VarId(other_s, min(other_one), max(other_one))
        if v not in nonzero:
            raise PreconditionViolated(f"{v} is not known nonzero")
        value[v] = 1
        fixed.append(Fixing(v, 1, "global scaling"))

    def entry(side: Side, gr: Graph, i: int, j: int) -> Optional[VarId]:
        if i != j and not gr.has_edge(i, j):
            return None
        return VarId(side, min(i, j), max(i, j))

    raw = []
    variables: set[VarId] = set()
    for i in range(n):
        for j in range(n):
            terms = []
            for k in range(n):
                va = entry(Side.A, g, i, k)
                vb = entry(Side.B, co, k, j)
                if va is None or vb is None:
                    continue
                terms.append((va, vb))
                for v in (va, vb):
                    if v not in value:
                        variables.add(v)
            raw.append(terms)
    order = MonomialOrder.for_variables(variables)
    index = {v: k for k, v in enumerate(order.variables)}
    gens = []
    for terms in raw:
        acc = []
        for va, vb in terms:
            if value.get(va, 1) == 0 or value.get(vb, 1) == 0:
                continue
            exps = [0] * order.nvars
            for v in (va, vb):
                if v not in value:
                    exps[index[v]] += 1
            acc.append((order.monomial(exps), 1))
        p = Polynomial.from_terms(acc)
        if not p.is_zero:
            gens.append(p)
    return Ideal(gens, order, fixed, nonzero)


# -- refutation -------------------------------------------------------------------------


def _sturm_real_roots(coeffs: list[Fraction]) -> int:
    """Distinct real roots of the polynomial with ``coeffs`` (constant first)."""

    def trim(p: list[Fraction]) -> list[Fraction]:
        while p and p[-1] == 0:
            p.pop()
        return p

    def rem(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
        a = a[:]
        while len(a) >= len(b) and a:
            f = a[-1] / b[-1]
            shift = len(a) - len(b)
            for k in range(len(b)):
                a[shift + k] -= f * b[k]
            trim(a)
        return a

    p = trim([Fraction(c) for c in coeffs])
    if len(p) <= 1:
        return 0
    seq = [p, trim([k * p[k] for k in range(1, len(p))])]
    while len(seq[-1]) > 1:
        r = rem(seq[-2], seq[-1])
        if not r:
            break
        seq.append([-x for x in r])

    def changes(signs: list[Fraction]) -> int:
        s = [x for x in signs if x != 0]
        return sum(1 for a, b in zip(s, s[1:]) if (a > 0) != (b > 0))

    at_pos = [q[-1] for q in seq]
    at_neg = [q[-1] * (-1) ** (len(q) - 1) for q in seq]
    return changes(at_neg) - changes(at_pos)


def _forces_zero(p: Polynomial, order: MonomialOrder) -> Optional[int]:
    """Index of the single variable of ``p`` if every real root of ``p`` is 0."""
    support = set()
    for m, _ in p.terms:
        for k, e in enumerate(order.exponents(m)):
            if e:
                support.add(k)
    if len(support) != 1:
        return None
    (k,) = support
    degs = {order.exponents(m)[k]: c for m, c in p.terms}
    low = min(degs)
    if low == 0:
        return None
    q = [Fraction(degs.get(d, 0)) for d in range(low, max(degs) + 1)]
    return k if _sturm_real_roots(q) == 0 else None


class Outcome(enum.Enum):
    REFUTED = "Refuted"
    INCONCLUSIVE = "Inconclusive"


@dataclass
class RunRecord:
    tree_side: TreeSide
    root: Optional[int]
    fixed: list[Fixing]
    result: GroebnerResult
    witness: str = ""


@dataclass
class GroebnerReport:
    outcome: Outcome
    runs: list[RunRecord]

    @property
    def refuted(self) -> bool:
        return self.outcome is Outcome.REFUTED

    @property
    def witness(self) -> str:
        return next((r.witness for r in self.runs if r.witness), "")


def _witness(ideal: Ideal, result: GroebnerResult) -> str:
    if result.contains_one:
        return "1 is in the ideal"
    for p in result.basis:
        k = _forces_zero(p, ideal.order)
        if k is not None and ideal.order.variables[k] in ideal.nonzero:
            return f"{p.format(ideal.order)} forces nonzero {ideal.order.variables[k]} to vanish"
    return ""


def run_ideal(ideal: Ideal, limits: Limits = Limits()) -> tuple[GroebnerResult, str]:
    result = buchberger(ideal.generators, ideal.order, limits)
    return result, _witness(ideal, result)


def _tree_roots(g: Graph, side: TreeSide, roots: Optional[Sequence[int]]) -> list[int]:
    host = g if side is TreeSide.GRAPH else complement(g)
    first = max(range(g.n), key=lambda v: (host.degree(v), -v))
    order = [first] + list(range(g.n)) if roots is None else list(roots)
    return list(dict.fromkeys(order))


def groebner_refutes(g: Graph, limits: Limits = Limits(),
                     sides: Sequence[TreeSide] = (TreeSide.GRAPH, TreeSide.COMPLEMENT),
                     roots: Optional[Sequence[int]] = None) -> GroebnerReport:
    """Try BFS trees from each root on each side until one run refutes ``g``.

    By default every vertex is tried as a root, a maximum-degree vertex
    first; a fixed tree can fail where another succeeds.
    """
    dc = diagonal_constraints(g)
    if dc.contradiction is not None:
        raise PreconditionViolated("diagonal constraints already contradict")
    runs = []
    for side in sides:
        for root in _tree_roots(g, side, roots):
            ideal = build_ideal(g, dc, side, root=root)
            result, witness = run_ideal(ideal, limits)
            runs.append(RunRecord(side, root, ideal.fixed, result, witness))
            if witness:
                return GroebnerReport(Outcome.REFUTED, runs)
    return GroebnerReport(Outcome.INCONCLUSIVE, runs)
