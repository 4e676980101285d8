"""Exact certificates ``A in S(G)``, ``B in S(co-G)`` with ``AB = 0``.

Every function that hands back a certificate re-verifies it first, so a
returned :class:`Certificate` is always valid.  All arithmetic is over the
rationals.
"""

from __future__ import annotations

import enum
import json
import random
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Callable, Optional, Sequence

import numpy as np

from . import linalg
from .graph import (
    Graph,
    add_vertex,
    complement,
    components,
    decode_graph6,
    disjoint_union,
    dominating_vertices,
    encode_graph6,
    induced_subgraph,
    is_connected,
    isolated_vertices,
    join,
    permute,
    twin_partition,
)
from .linalg import RationalMatrix, block_diag, format_rational, parse_rational
from .projection import projected_sample
from .rules import Side, Status, diagonal_constraints

SAMPLE_RANGE = 100


class Provenance(enum.Enum):
    TWIN = "Twin"
    DUPLICATION = "Duplication"
    UNION = "Union"
    JOIN = "Join"
    APPEND_K1 = "AppendK1"
    RANDOM_TRIAL = "RandomTrial"
    MANUAL = "Manual"
    IMPORTED = "Imported"


class CertificateError(ValueError):
    pass


class PatternMismatch(CertificateError):
    pass


class ZeroRowPresent(CertificateError):
    pass


class SingletonTwinClass(CertificateError):
    pass


class NonzeroDiagonal(CertificateError):
    pass


class InvalidCertificate(CertificateError):
    pass


class BadVector(CertificateError):
    pass


class InvalidInput(CertificateError):
    pass


class PreconditionViolated(CertificateError):
    pass


@dataclass(frozen=True)
class Certificate:
    graph: Graph
    a: RationalMatrix
    b: RationalMatrix
    provenance: Provenance = Provenance.MANUAL

    def swapped(self) -> "Certificate":
        """The same pair read as a certificate for the complement (``BA = 0``)."""
        return Certificate(complement(self.graph), self.b, self.a, self.provenance)

    def relabeled(self, perm: Sequence[int]) -> "Certificate":
        """Certificate for ``permute(graph, perm)``."""
        return Certificate(permute(self.graph, perm), self.a.permuted(perm),
                           self.b.permuted(perm), self.provenance)


@dataclass(frozen=True)
class RobustCertificate:
    base: Certificate
    kernel_vector: tuple[Fraction, ...]
    side: Side

    @property
    def graph(self) -> Graph:
        return self.base.graph

    def swapped(self) -> "RobustCertificate":
        return RobustCertificate(self.base.swapped(), self.kernel_vector, self.side.other)

    def relabeled(self, perm: Sequence[int]) -> "RobustCertificate":
        vec = [Fraction(0)] * len(self.kernel_vector)
        for v, x in enumerate(self.kernel_vector):
            vec[perm[v]] = x
        return RobustCertificate(self.base.relabeled(perm), tuple(vec), self.side)


@dataclass(frozen=True)
class Verification:
    valid: bool
    reason: str = ""
    entry: Optional[tuple[str, int, int]] = None

    def __bool__(self) -> bool:
        return self.valid


def _pattern_error(m: RationalMatrix, g: Graph, name: str) -> Optional[Verification]:
    if m.shape != (g.n, g.n):
        return Verification(False, f"{name} has shape {m.shape}, expected {(g.n, g.n)}")
    if not m.is_symmetric():
        for i in range(g.n):
            for j in range(i):
                if m[i, j] != m[j, i]:
                    return Verification(False, f"{name} is not symmetric", (name, i, j))
    for i in range(g.n):
        for j in range(i + 1, g.n):
            if bool(m[i, j]) != g.has_edge(i, j):
                what = "zero on an edge" if g.has_edge(i, j) else "nonzero off the pattern"
                return Verification(False, f"{name}[{i},{j}] is {what}", (name, i, j))
    return None


def verify(c: Certificate) -> Verification:
    err = _pattern_error(c.a, c.graph, "A")
    if err is None:
        err = _pattern_error(c.b, complement(c.graph), "B")
    if err is not None:
        return err
    product = c.a @ c.b
    bad = product.first_nonzero()
    if bad is not None:
        i, j = bad
        return Verification(False, f"(AB)[{i},{j}] = {format_rational(product[bad])}",
                            ("AB", i, j))
    return Verification(True, "A in S(G), B in S(co-G), AB = 0")


def verify_robust(rc: RobustCertificate) -> Verification:
    res = verify(rc.base)
    if not res:
        return res
    if any(x == 0 for x in rc.kernel_vector) or len(rc.kernel_vector) != rc.graph.n:
        return Verification(False, "kernel vector is not nowhere-zero")
    m = rc.base.a if rc.side is Side.A else rc.base.b
    if any(m.apply(rc.kernel_vector)):
        return Verification(False, f"kernel vector not annihilated by {rc.side.value}")
    return Verification(True, f"valid, nowhere-zero kernel vector of {rc.side.value}")


def _checked(c: Certificate) -> Certificate:
    res = verify(c)
    if not res:
        raise InvalidCertificate(f"construction produced an invalid certificate: {res.reason}")
    return c


def _checked_robust(rc: RobustCertificate) -> RobustCertificate:
    res = verify_robust(rc)
    if not res:
        raise InvalidCertificate(f"construction produced an invalid certificate: {res.reason}")
    return rc


def _matrix(n: int, entries: dict[tuple[int, int], Fraction | int]) -> RationalMatrix:
    rows = [[Fraction(0)] * n for _ in range(n)]
    for (i, j), x in entries.items():
        rows[i][j] = rows[j][i] = Fraction(x)
    return RationalMatrix(tuple(map(tuple, rows)))


def adjacency_matrix(g: Graph) -> RationalMatrix:
    return _matrix(g.n, {e: 1 for e in g.edges()})


def laplacian_matrix(g: Graph) -> RationalMatrix:
    entries: dict[tuple[int, int], Fraction | int] = {e: -1 for e in g.edges()}
    entries.update({(i, i): g.degree(i) for i in range(g.n)})
    return _matrix(g.n, entries)


# -- solving for B --------------------------------------------------------------


@dataclass(frozen=True)
class SolveResult:
    certificate: Optional[Certificate]
    missing_edges: tuple[tuple[int, int], ...] = ()
    kernel_dimension: int = 0

    @property
    def found(self) -> bool:
        return self.certificate is not None


def solve_space(g: Graph, a: RationalMatrix, zero_diagonal: Sequence[int] = ()
                ) -> tuple[list[tuple[int, int]], list[list[int]]]:
    """Basis of ``{B in closure S(co-G) : AB = 0}`` as integer coordinate vectors.

    Coordinates are indexed by the returned variable list: the diagonal
    entries not listed in ``zero_diagonal``, then the complement edges.
    """
    variables = [(i, i) for i in range(g.n) if i not in zero_diagonal] + complement(g).edges()
    index = {}
    for k, (i, j) in enumerate(variables):
        index[i, j] = index[j, i] = k
    n = g.n
    system = []
    for r in range(n):
        arow = a.rows[r]
        for c in range(n):
            row = [Fraction(0)] * len(variables)
            for k in range(n):
                if arow[k] and (k, c) in index:
                    row[index[k, c]] += arow[k]
            if any(row):
                system.append(row)
    return variables, linalg.nullspace(system, len(variables))


def _nonzero_sample(rng: random.Random, bound: int = SAMPLE_RANGE) -> int:
    x = 0
    while x == 0:
        x = rng.randint(-bound, bound)
    return x


def solve_for_B(g: Graph, a: RationalMatrix, rng_seed: int | random.Random | None = 0,
                provenance: Provenance = Provenance.RANDOM_TRIAL,
                zero_diagonal: Sequence[int] = ()) -> SolveResult:
    """Given ``A in S(G)``, find ``B in S(co-G)`` with ``AB = 0`` if one exists.

    ``NoSolution`` (``certificate is None``) lists the complement edges on
    which every matrix of the solution space vanishes; it is exact, so no
    suitable ``B`` exists for this ``A``.  ``zero_diagonal`` restricts the
    search to ``B`` vanishing on those diagonal entries.
    """
    err = _pattern_error(a, g, "A")
    if err is not None:
        raise PatternMismatch(err.reason)
    co_edges = complement(g).edges()
    int_rows = None
    if all(x.denominator == 1 for row in a.rows for x in row):
        int_rows = [[int(x) for x in row] for row in a.rows]
    if co_edges and int_rows is not None and linalg.full_rank_mod_p(int_rows):
        # Nonsingular A forces B = 0, which misses every complement edge.
        return SolveResult(None, tuple(co_edges), 0)

    variables, basis = solve_space(g, a, zero_diagonal)
    pos = {v: k for k, v in enumerate(variables)}
    missing = tuple(e for e in co_edges if all(vec[pos[e]] == 0 for vec in basis))
    if missing:
        return SolveResult(None, missing, len(basis))

    rng = rng_seed if isinstance(rng_seed, random.Random) else random.Random(rng_seed)
    edge_pos = [pos[e] for e in co_edges]
    while True:
        coeffs = [_nonzero_sample(rng) for _ in basis]
        combo = [sum(c * vec[k] for c, vec in zip(coeffs, basis)) for k in range(len(variables))]
        if all(combo[k] for k in edge_pos):
            break
    b = _matrix(g.n, {v: combo[k] for k, v in enumerate(variables)})
    cert = _checked(Certificate(g, a, b, provenance))
    return SolveResult(cert, (), len(basis))


# -- nowhere-zero vectors ---------------------------------------------------------


def _safe_step(image: Sequence[Fraction], column: Sequence[Fraction]) -> Fraction:
    """Simplest ``eps`` in 1, 2, 1/2, 3, 1/3, ... such that adding
    ``eps * column`` to ``image`` zeroes no nonzero coordinate."""
    bad = {-v / c for v, c in zip(image, column) if v and c}
    k = 1
    while True:
        for eps in (Fraction(k), Fraction(1, k)):
            if eps not in bad:
                return eps
        k += 1


def nowhere_zero_colspace_vector(b: RationalMatrix) -> tuple[Fraction, ...]:
    """Nowhere-zero ``x`` with ``Bx`` also nowhere-zero.

    Greedy: first grow a combination of columns until the image has no zero
    coordinate, each step adding a column with a coefficient that cancels
    no coordinate already nonzero; then give the unused columns nonzero
    coefficients the same way.
    """
    n, m = b.shape
    cols = [tuple(b.rows[i][j] for i in range(n)) for j in range(m)]
    for i, row in enumerate(b.rows):
        if not any(row):
            raise ZeroRowPresent(f"row {i} of the matrix is zero")

    x = [Fraction(0)] * m
    image = [Fraction(0)] * n
    for i in range(n):
        if image[i]:
            continue
        j = next(j for j in range(m) if cols[j][i] and not x[j])
        x[j] = _safe_step(image, cols[j])
        image = [v + x[j] * c for v, c in zip(image, cols[j])]

    for j in range(m):
        if x[j]:
            continue
        x[j] = _safe_step(image, cols[j])
        image = [v + x[j] * c for v, c in zip(image, cols[j])]
    assert all(x) and all(b.apply(x))
    return tuple(x)


# -- constructions ------------------------------------------------------------------


def _class_vectors(size: int) -> tuple[list[int], list[int]]:
    """Orthogonal integer vectors, both nowhere-zero on ``size >= 2`` coordinates."""
    return [1] * size, [1] * (size - 1) + [-(size - 1)]


def twin_certificate(g: Graph) -> Certificate:
    """Certificate for a graph in which every vertex has a twin.

    With per-class vectors ``x_i`` and ``y_i`` orthogonal to each other and
    supported on class ``i``, ``A`` sums ``x_i x_j^T`` over adjacent class
    pairs and ``B`` sums ``y_i y_j^T`` over non-adjacent ones, so every term
    of ``AB`` contains a factor ``x_j^T y_l = 0``.
    """
    classes = twin_partition(g)
    if any(len(c) < 2 for c in classes):
        single = next(c[0] for c in classes if len(c) < 2)
        raise SingletonTwinClass(f"vertex {single} has no twin")
    xs, ys = [], []
    for cls in classes:
        xv, yv = _class_vectors(len(cls))
        x = [0] * g.n
        y = [0] * g.n
        for v, xi, yi in zip(cls, xv, yv):
            x[v], y[v] = xi, yi
        xs.append(x)
        ys.append(y)
    a = [[0] * g.n for _ in range(g.n)]
    b = [[0] * g.n for _ in range(g.n)]
    for p, cp in enumerate(classes):
        for q, cq in enumerate(classes):
            u = cp[0]
            v = next((w for w in cq if w != u), None)
            if v is None:
                continue
            target, vecs = (a, xs) if g.has_edge(u, v) else (b, ys)
            for r in cp:
                for s in cq:
                    target[r][s] += vecs[p][r] * vecs[q][s]
    return _checked(Certificate(g, RationalMatrix.from_rows(a), RationalMatrix.from_rows(b),
                                Provenance.TWIN))


def duplicate_vertex(c: Certificate, i: int, copies: int = 1) -> Certificate:
    """Add ``copies`` non-adjacent twins of vertex ``i`` (requires ``a_ii = 0``).

    The new vertices are appended after the existing ones.  With ``k``
    the size of the twin group, the group's A-columns repeat column ``i``,
    its B-columns are column ``i`` divided by ``k``, and the group's B
    block is ``b/k^2`` times all-ones when ``b = b_ii`` is nonzero and the
    Laplacian of ``K_k`` otherwise.
    """
    if copies < 1:
        raise ValueError("copies must be >= 1")
    if not verify(c):
        raise InvalidCertificate("input certificate does not verify")
    if c.a[i, i] != 0:
        raise NonzeroDiagonal(f"a[{i},{i}] = {c.a[i, i]} is nonzero")
    g = c.graph
    n, k = g.n, copies + 1
    group = [i] + list(range(n, n + copies))
    nbhd = g.adj[i]
    h = g
    for _ in range(copies):
        h = add_vertex(h, nbhd)
    src = [v if v < n else i for v in range(n + copies)]
    b_ii = c.b[i, i]
    a_rows = [[Fraction(0)] * h.n for _ in range(h.n)]
    b_rows = [[Fraction(0)] * h.n for _ in range(h.n)]
    gset = set(group)
    for p in range(h.n):
        for q in range(h.n):
            pin, qin = p in gset, q in gset
            if pin and qin:
                a_rows[p][q] = Fraction(0)
                if b_ii:
                    b_rows[p][q] = b_ii / (k * k)
                else:
                    b_rows[p][q] = Fraction(k - 1) if p == q else Fraction(-1)
            else:
                a_rows[p][q] = c.a[src[p], src[q]]
                scale = Fraction(1, k) if (pin or qin) else Fraction(1)
                b_rows[p][q] = c.b[src[p], src[q]] * scale
    out = Certificate(h, RationalMatrix(tuple(map(tuple, a_rows))),
                      RationalMatrix(tuple(map(tuple, b_rows))), Provenance.DUPLICATION)
    return _checked(out)


def union_certificate(cg: RobustCertificate, ch: RobustCertificate) -> RobustCertificate:
    """Alpha-robust certificate for the disjoint union of two alpha-robust graphs."""
    for rc in (cg, ch):
        if rc.side is not Side.A or not verify_robust(rc):
            raise InvalidInput("union needs two valid alpha-robust certificates")
    g, h = cg.graph, ch.graph
    vg, vh = cg.kernel_vector, ch.kernel_vector
    a = block_diag(cg.base.a, ch.base.a)
    n = g.n + h.n
    rows = [[Fraction(0)] * n for _ in range(n)]
    for i in range(g.n):
        rows[i][:g.n] = cg.base.b.rows[i]
        for j in range(h.n):
            rows[i][g.n + j] = rows[g.n + j][i] = vg[i] * vh[j]
    for i in range(h.n):
        rows[g.n + i][g.n:] = ch.base.b.rows[i]
    base = Certificate(disjoint_union(g, h), a, RationalMatrix(tuple(map(tuple, rows))),
                       Provenance.UNION)
    return _checked_robust(RobustCertificate(base, vg + vh, Side.A))


def join_certificate(cg: RobustCertificate, ch: RobustCertificate) -> RobustCertificate:
    """Beta-robust certificate for the join, via the union of the complements."""
    for rc in (cg, ch):
        if rc.side is not Side.B or not verify_robust(rc):
            raise InvalidInput("join needs two valid beta-robust certificates")
    u = union_certificate(cg.swapped(), ch.swapped()).swapped()
    assert u.graph == join(cg.graph, ch.graph)
    base = Certificate(u.graph, u.base.a, u.base.b, Provenance.JOIN)
    return _checked_robust(RobustCertificate(base, u.kernel_vector, Side.B))


def append_K1(c: Certificate, x: Sequence[Fraction | int]) -> RobustCertificate:
    """Beta-robust certificate for ``G + K1`` from ``x`` with ``x`` and ``Bx`` nowhere-zero."""
    if not verify(c):
        raise InvalidCertificate("input certificate does not verify")
    x = tuple(Fraction(v) for v in x)
    v = c.b.apply(x)
    if len(x) != c.graph.n or not all(x) or not all(v):
        raise BadVector("x and Bx must both be nowhere-zero")
    n = c.graph.n
    a = block_diag(c.a, RationalMatrix.zeros(1))
    rows = [list(r) + [v[i]] for i, r in enumerate(c.b.rows)]
    rows.append(list(v) + [sum(p * q for p, q in zip(x, v))])
    base = Certificate(disjoint_union(c.graph, Graph.empty(1)), a,
                       RationalMatrix.from_rows(rows), Provenance.APPEND_K1)
    kernel = tuple(-t for t in x) + (Fraction(1),)
    assert len(kernel) == n + 1
    return _checked_robust(RobustCertificate(base, kernel, Side.B))


def robustify(c: Certificate, side: Side) -> RobustCertificate:
    """Nowhere-zero kernel vector of ``A`` (alpha) or ``B`` (beta).

    For alpha the vector is ``Bx`` with ``x`` from
    :func:`nowhere_zero_colspace_vector`; ``ABx = 0``.  Beta is the
    mirror image using the columns of ``A``.
    """
    if not verify(c):
        raise InvalidCertificate("input certificate does not verify")
    g = c.graph
    if side is Side.A and dominating_vertices(g) and g.n > 1:
        raise PreconditionViolated("alpha robustness needs a graph without dominating vertices")
    if side is Side.B and isolated_vertices(g) and g.n > 1:
        raise PreconditionViolated("beta robustness needs a graph without isolated vertices")
    other = c.b if side is Side.A else c.a
    try:
        x = nowhere_zero_colspace_vector(other)
    except ZeroRowPresent as exc:
        raise PreconditionViolated(str(exc)) from exc
    return _checked_robust(RobustCertificate(c, other.apply(x), side))


# -- random trials -----------------------------------------------------------------------


def sample_matrix(g: Graph, diag: Sequence[Status], rng: random.Random,
                  bound: int = SAMPLE_RANGE) -> RationalMatrix:
    """Random integer matrix in ``S(g)`` honouring forced diagonal statuses."""
    entries: dict[tuple[int, int], int] = {}
    for i in range(g.n):
        st = diag[i]
        if st is Status.ZERO or (st is Status.FREE and rng.random() < 0.5):
            continue
        entries[i, i] = _nonzero_sample(rng, bound)
    for e in g.edges():
        entries[e] = _nonzero_sample(rng, bound)
    return _matrix(g.n, entries)


class Sampler(enum.Enum):
    """How ``random_trial`` draws the matrix it hands to :func:`solve_for_B`."""

    UNIFORM = "uniform"
    PROJECTED = "projected"


@dataclass(frozen=True)
class TrialResult:
    certificate: Optional[Certificate]
    attempts: int

    @property
    def found(self) -> bool:
        return self.certificate is not None


def _draw(g: Graph, status_a: Sequence[Status], status_b: Sequence[Status],
          rng: random.Random, sampler: Sampler) -> Optional[RationalMatrix]:
    if sampler is Sampler.UNIFORM:
        return sample_matrix(g, status_a, rng)
    entries = projected_sample(g, status_a, status_b,
                               np.random.default_rng(rng.getrandbits(64)))
    return None if entries is None else _matrix(g.n, entries)


def random_trial(g: Graph, attempts: int = 500, rng_seed: int = 0,
                 zero_a: Optional[int] = None, zero_b: Optional[int] = None,
                 sampler: Sampler = Sampler.PROJECTED) -> TrialResult:
    """Draw ``A in S(G)`` (even attempts) or ``B in S(co-G)`` (odd attempts)
    and solve exactly for the other matrix.

    Diagonal entries forced by the diagonal lemmas are honoured; ``zero_a``
    and ``zero_b`` optionally pin one more diagonal entry of ``A`` or ``B``
    to zero.  ``attempts`` counts both sides together.
    """
    dc = diagonal_constraints(g)
    if dc.contradiction is not None:
        return TrialResult(None, 0)
    status_a, status_b = list(dc.status_a), list(dc.status_b)
    for status, v in ((status_a, zero_a), (status_b, zero_b)):
        if v is not None:
            if status[v] is Status.NONZERO:
                return TrialResult(None, 0)
            status[v] = Status.ZERO
    co = complement(g)
    pin_a = () if zero_a is None else (zero_a,)
    pin_b = () if zero_b is None else (zero_b,)
    rng = random.Random(rng_seed)
    for k in range(attempts):
        if k % 2 == 0:
            a = _draw(g, status_a, status_b, rng, sampler)
            if a is None:
                continue
            cert = solve_for_B(g, a, rng, zero_diagonal=pin_b).certificate
        else:
            b = _draw(co, status_b, status_a, rng, sampler)
            if b is None:
                continue
            res = solve_for_B(co, b, rng, zero_diagonal=pin_a)
            cert = res.certificate.swapped() if res.certificate is not None else None
        if cert is not None:
            return TrialResult(_checked(Certificate(g, cert.a, cert.b, Provenance.RANDOM_TRIAL)),
                               k + 1)
    return TrialResult(None, attempts)


# -- composition along the union/join decomposition ------------------------------------------


LeafSource = Callable[[Graph], Optional[Certificate]]


def _k1_alpha() -> RobustCertificate:
    base = Certificate(Graph.empty(1), RationalMatrix.from_rows([[0]]),
                       RationalMatrix.from_rows([[1]]), Provenance.MANUAL)
    return RobustCertificate(base, (Fraction(1),), Side.A)


def _k1_beta() -> RobustCertificate:
    return _k1_alpha().swapped()


@dataclass
class RobustPair:
    alpha: Optional[RobustCertificate] = None
    beta: Optional[RobustCertificate] = None

    def any_certificate(self) -> Optional[Certificate]:
        if self.alpha is not None:
            return self.alpha.base
        if self.beta is not None:
            return self.beta.base
        return None


def _fold_union(parts: list[RobustCertificate]) -> RobustCertificate:
    acc = parts[0]
    for rc in parts[1:]:
        acc = union_certificate(acc, rc)
    return acc


def _robust_pair(g: Graph, leaf: LeafSource) -> RobustPair:
    if g.n == 1:
        return RobustPair(_k1_alpha(), _k1_beta())
    comps = components(g)
    if len(comps) == 1:
        co = complement(g)
        if not is_connected(co):
            dual = _robust_pair(co, leaf)
            return RobustPair(dual.beta.swapped() if dual.beta else None,
                              dual.alpha.swapped() if dual.alpha else None)
        cert = leaf(g)
        if cert is None:
            return RobustPair()
        return RobustPair(robustify(cert, Side.A), robustify(cert, Side.B))

    order = [v for comp in comps for v in comp]
    inverse = [0] * g.n
    for pos, v in enumerate(order):
        inverse[v] = pos
    back = [0] * g.n
    for v, pos in enumerate(inverse):
        back[pos] = v

    parts = []
    for comp in comps:
        sub = _robust_pair(induced_subgraph(g, comp), leaf)
        if sub.alpha is None:
            parts = None
            break
        parts.append(sub.alpha)
    alpha = _fold_union(parts).relabeled(back) if parts else None

    beta = None
    lonely = isolated_vertices(g)
    if not lonely:
        if alpha is not None:
            beta = robustify(alpha.base, Side.B)
    else:
        z = lonely[-1]
        rest = [v for v in range(g.n) if v != z]
        h = induced_subgraph(g, rest)
        sub = _robust_pair(h, leaf)
        hc = sub.alpha.base if sub.alpha is not None else sub.any_certificate()
        if hc is not None and all(any(row) for row in hc.b.rows):
            rc = append_K1(hc, nowhere_zero_colspace_vector(hc.b))
            beta = rc.relabeled(rest + [z])
    return RobustPair(alpha, beta)


def compose_robust(g: Graph, leaf: LeafSource) -> RobustPair:
    """Alpha/beta-robust certificates built along the union/join decomposition.

    ``leaf`` supplies certificates for the pieces whose graph and complement
    are both connected.  Components missing from the result mean the
    corresponding robustness could not be established.
    """
    pair = _robust_pair(g, leaf)
    for rc in (pair.alpha, pair.beta):
        if rc is not None:
            assert rc.graph == g
            _checked_robust(rc)
    return pair


def compose_certificate(g: Graph, leaf: LeafSource) -> Optional[Certificate]:
    return compose_robust(g, leaf).any_certificate()


# -- file format ----------------------------------------------------------------------------


def _matrix_to_json(m: RationalMatrix) -> list[list[str]]:
    return [[format_rational(x) for x in row] for row in m.rows]


def _matrix_from_json(rows: list[list[str]]) -> RationalMatrix:
    return RationalMatrix(tuple(tuple(parse_rational(str(x)) for x in row) for row in rows))


def certificate_to_dict(c: Certificate | RobustCertificate) -> dict:
    base = c.base if isinstance(c, RobustCertificate) else c
    out = {
        "graph6": encode_graph6(base.graph),
        "provenance": base.provenance.value,
        "A": _matrix_to_json(base.a),
        "B": _matrix_to_json(base.b),
    }
    if isinstance(c, RobustCertificate):
        out["kernel_vector"] = [format_rational(x) for x in c.kernel_vector]
        out["kernel_side"] = "alpha" if c.side is Side.A else "beta"
    return out


def certificate_from_dict(d: dict) -> Certificate | RobustCertificate:
    g = decode_graph6(d["graph6"])
    base = Certificate(g, _matrix_from_json(d["A"]), _matrix_from_json(d["B"]),
                       Provenance(d.get("provenance", "Imported")))
    if "kernel_vector" in d:
        side = Side.A if d.get("kernel_side", "alpha") == "alpha" else Side.B
        vec = tuple(parse_rational(str(x)) for x in d["kernel_vector"])
        return RobustCertificate(base, vec, side)
    return base


def dump_certificates(certs: Sequence[Certificate | RobustCertificate]) -> str:
    docs = [certificate_to_dict(c) for c in certs]
    return json.dumps(docs[0] if len(docs) == 1 else docs, indent=1) + "\n"


def load_certificates(text: str) -> list[Certificate | RobustCertificate]:
    data = json.loads(text)
    if isinstance(data, dict):
        data = [data]
    return [certificate_from_dict(d) for d in data]


def write_certificate(path: str | Path, c: Certificate | RobustCertificate) -> None:
    Path(path).write_text(dump_certificates([c]))


def read_certificate(path: str | Path) -> Certificate | RobustCertificate:
    certs = load_certificates(Path(path).read_text())
    if len(certs) != 1:
        raise ValueError(f"{path} holds {len(certs)} certificates, expected one")
    return certs[0]
