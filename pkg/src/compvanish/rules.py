"""Combinatorial obstructions to complementary vanishing.

All rules reason about a hypothetical pair ``A in S(G)``, ``B in S(co-G)``
with ``AB = 0`` and derive forced zero/nonzero statuses for the diagonal
entries.  A vertex that is forced both zero and nonzero on the same side
means no such pair exists.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Optional

from .graph import Graph, bits, complement


class Status(enum.Enum):
    FREE = "free"
    ZERO = "zero"
    NONZERO = "nonzero"


class Side(enum.Enum):
    A = "A"
    B = "B"

    @property
    def other(self) -> "Side":
        return Side.B if self is Side.A else Side.A


class PreconditionViolated(ValueError):
    pass


@dataclass(frozen=True)
class Claim:
    """One forced diagonal status together with the rule that produced it."""

    side: Side
    vertex: int
    status: Status
    rule: str


@dataclass(frozen=True)
class Contradiction:
    side: Side
    vertex: int
    zero_rule: str
    nonzero_rule: str

    def __str__(self) -> str:
        entry = f"{self.side.value.lower()}[{self.vertex},{self.vertex}]"
        return f"{entry} forced zero by {self.zero_rule} and nonzero by {self.nonzero_rule}"


@dataclass(frozen=True)
class DiagonalConstraints:
    status_a: tuple[Status, ...]
    status_b: tuple[Status, ...]
    claims: tuple[Claim, ...] = field(repr=False, default=())
    contradiction: Optional[Contradiction] = None

    def status(self, side: Side) -> tuple[Status, ...]:
        return self.status_a if side is Side.A else self.status_b

    def zero_mask(self, side: Side) -> int:
        return sum(1 << i for i, s in enumerate(self.status(side)) if s is Status.ZERO)

    def nonzero_mask(self, side: Side) -> int:
        return sum(1 << i for i, s in enumerate(self.status(side)) if s is Status.NONZERO)

    def swapped(self) -> "DiagonalConstraints":
        """The same constraints read for the complement graph."""
        claims = tuple(Claim(c.side.other, c.vertex, c.status, c.rule) for c in self.claims)
        contra = self.contradiction
        if contra is not None:
            contra = Contradiction(contra.side.other, contra.vertex,
                                   contra.zero_rule, contra.nonzero_rule)
        return DiagonalConstraints(self.status_b, self.status_a, claims, contra)


def _host_claims(g: Graph, own: Side, tag: str) -> list[Claim]:
    """Subneighbourhood and one-private-neighbour claims read off ``g``.

    ``own`` is the side whose matrix has the pattern of ``g``; for the
    complement graph the roles of A and B swap because ``BA = 0`` too.
    """
    other = own.other
    claims = []
    for i in range(g.n):
        nbr_i = g.adj[i]
        for j in range(g.n):
            if i == j:
                continue
            private = nbr_i & ~(g.adj[j] | (1 << j))
            adjacent = bool((nbr_i >> j) & 1)
            if private == 0:
                rule = f"subneighbourhood({i},{j}){tag}"
                if adjacent:
                    claims.append(Claim(other, j, Status.ZERO, rule))
                else:
                    claims.append(Claim(own, i, Status.ZERO, rule))
            elif private & (private - 1) == 0:
                rule = f"private-neighbour({i},{j};{private.bit_length() - 1}){tag}"
                if adjacent:
                    claims.append(Claim(other, j, Status.NONZERO, rule))
                    claims.append(Claim(own, j, Status.ZERO, rule))
                else:
                    claims.append(Claim(own, i, Status.NONZERO, rule))
                    claims.append(Claim(other, i, Status.ZERO, rule))
    return claims


def diagonal_constraints(g: Graph) -> DiagonalConstraints:
    """Propagate the diagonal lemmas on ``g`` and its complement.

    Claims from ``g`` come first, then from the complement, each in
    ``(i, j)`` order; the closing step turns every nonzero claim into a
    zero claim on the opposite side (``a_ii * b_ii = 0``).  The first
    vertex, in claim order, collecting both a zero and a nonzero claim
    on one side is reported as the contradiction.
    """
    claims = _host_claims(g, Side.A, "")
    claims += _host_claims(complement(g), Side.B, "[co]")
    claims += [Claim(c.side.other, c.vertex, Status.ZERO, f"product-zero<{c.rule}>")
               for c in claims if c.status is Status.NONZERO]

    first: dict[tuple[Side, int, Status], str] = {}
    contradiction = None
    for c in claims:
        key = (c.side, c.vertex, c.status)
        first.setdefault(key, c.rule)
        opposite = Status.NONZERO if c.status is Status.ZERO else Status.ZERO
        if contradiction is None and (c.side, c.vertex, opposite) in first:
            zero_rule = first[(c.side, c.vertex, Status.ZERO)]
            nonzero_rule = first[(c.side, c.vertex, Status.NONZERO)]
            contradiction = Contradiction(c.side, c.vertex, zero_rule, nonzero_rule)

    def resolve(side: Side) -> tuple[Status, ...]:
        out = []
        for v in range(g.n):
            if (side, v, Status.NONZERO) in first:
                out.append(Status.NONZERO)
            elif (side, v, Status.ZERO) in first:
                out.append(Status.ZERO)
            else:
                out.append(Status.FREE)
        return tuple(out)

    return DiagonalConstraints(resolve(Side.A), resolve(Side.B), tuple(claims), contradiction)


# -- class C ------------------------------------------------------------------


@dataclass(frozen=True)
class ClassCWitness:
    u: int
    v: int
    w: int
    in_complement: bool


def _class_c_triple(g: Graph) -> Optional[tuple[int, int, int]]:
    for u in range(g.n):
        nu = g.adj[u]
        far = g.vertex_mask & ~nu & ~(1 << u)
        for v in bits(far):
            if nu & ~g.adj[v]:
                continue
            for w in bits(far & ~(1 << v)):
                diff = nu & ~g.adj[w]
                if diff and diff & (diff - 1) == 0:
                    return u, v, w
    return None


def find_class_C(g: Graph) -> Optional[ClassCWitness]:
    """Triple ``u, v, w`` with ``v, w`` non-neighbours of ``u``,
    ``N(u)`` inside ``N(v)`` and exactly one neighbour of ``u`` missed by ``w``,
    searched in ``g`` and then in its complement."""
    for in_co, host in ((False, g), (True, complement(g))):
        triple = _class_c_triple(host)
        if triple is not None:
            return ClassCWitness(*triple, in_complement=in_co)
    return None


def in_class_C(g: Graph) -> bool:
    return find_class_C(g) is not None


def in_class_D(g: Graph) -> bool:
    return any(g.degree(v) == 1 and g.degree(g.adj[v].bit_length() - 1) >= 2
               for v in range(g.n))


# -- odd cycles ----------------------------------------------------------------


def induced_odd_cycles(g: Graph, within: int | None = None) -> list[list[int]]:
    """Induced odd cycles of length >= 3 using only vertices of ``within``.

    Each cycle is listed in traversal order starting from its smallest vertex.
    """
    pool = list(bits(g.vertex_mask if within is None else within))
    cycles = []
    for mask in range(1, 1 << len(pool)):
        size = mask.bit_count()
        if size < 3 or size % 2 == 0:
            continue
        verts = 0
        for k in range(len(pool)):
            if (mask >> k) & 1:
                verts |= 1 << pool[k]
        if any((g.adj[v] & verts).bit_count() != 2 for v in bits(verts)):
            continue
        start = verts & -verts
        order = [start.bit_length() - 1]
        prev, cur = -1, order[0]
        while True:
            nxt = [u for u in bits(g.adj[cur] & verts) if u != prev][0]
            if nxt == order[0]:
                break
            order.append(nxt)
            prev, cur = cur, nxt
        if len(order) == size:
            cycles.append(order)
    return cycles


@dataclass(frozen=True)
class OddCycleWitness:
    cycle: tuple[int, ...]
    v: int
    in_complement: bool


def _odd_cycle_in(g: Graph, zero: int) -> Optional[tuple[tuple[int, ...], int]]:
    for cycle in induced_odd_cycles(g, zero):
        cmask = sum(1 << c for c in cycle)
        touch = 0
        for c in cycle:
            touch |= g.adj[c]
        external = touch & ~cmask
        for v in bits(g.vertex_mask & ~cmask & ~touch):
            if external & ~g.adj[v] == 0:
                return tuple(cycle), v
    return None


def find_odd_cycle_obstruction(g: Graph, dc: DiagonalConstraints) -> Optional[OddCycleWitness]:
    """An induced odd cycle whose own-side diagonals are all forced zero,
    plus a vertex off the cycle that sees the cycle's whole external
    neighbourhood and none of the cycle.  Any ``AB = 0`` pair would need a
    nonzero diagonal on such a cycle, so this refutes ``g``.
    """
    if dc.contradiction is not None:
        raise PreconditionViolated("diagonal constraints already contradict")
    hit = _odd_cycle_in(g, dc.zero_mask(Side.A))
    if hit is not None:
        return OddCycleWitness(hit[0], hit[1], in_complement=False)
    hit = _odd_cycle_in(complement(g), dc.zero_mask(Side.B))
    if hit is not None:
        return OddCycleWitness(hit[0], hit[1], in_complement=True)
    return None


def odd_cycle_obstruction(g: Graph, dc: DiagonalConstraints) -> bool:
    return find_odd_cycle_obstruction(g, dc) is not None


# -- combined refuter ------------------------------------------------------------


class RefuteReason(enum.Enum):
    DIAGONAL = "diagonal-contradiction"
    ODD_CYCLE = "odd-cycle"


@dataclass(frozen=True)
class Refutation:
    reason: Optional[RefuteReason]
    detail: str = ""

    @property
    def not_cv(self) -> bool:
        return self.reason is not None


def refute(g: Graph) -> Refutation:
    dc = diagonal_constraints(g)
    if dc.contradiction is not None:
        return Refutation(RefuteReason.DIAGONAL, str(dc.contradiction))
    hit = find_odd_cycle_obstruction(g, dc)
    if hit is not None:
        host = "complement" if hit.in_complement else "graph"
        return Refutation(RefuteReason.ODD_CYCLE,
                          f"cycle {list(hit.cycle)} with vertex {hit.v} in {host}")
    return Refutation(None, "no combinatorial obstruction")
