"""Structural classification through unions, joins and the minimal graphs.

A graph is complementary vanishing exactly when it can be assembled from
minimal complementary vanishing graphs by disjoint unions, joins and
complements, and it avoids class C.  The minimal graphs are known up to
8 vertices; beyond that the classifier answers Unknown for the pieces it
cannot look up.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Iterable, Iterator, Optional

from . import catalog
from .certify import (
    Certificate,
    RobustPair,
    _checked,
    compose_robust,
    load_certificates,
)
from .graph import (
    CanonicalForm,
    Graph,
    canonical_form,
    canonical_labeling,
    complement,
    components,
    decode_graph6,
    encode_graph6,
    induced_subgraph,
    read_graph_list,
)
from .rules import find_class_C, in_class_D, refute

DATABASE_MAX_N = 8


class PreconditionViolated(ValueError):
    pass


# -- database of minimal graphs ----------------------------------------------------------


@dataclass(frozen=True)
class MDatabase:
    """Canonical forms of the minimal graphs, closed under complement."""

    forms: frozenset[CanonicalForm]
    names: dict[CanonicalForm, str] = field(default_factory=dict, compare=False, repr=False)
    max_n: int = DATABASE_MAX_N

    @classmethod
    def from_graphs(cls, graphs: Iterable[tuple[str, Graph]],
                    max_n: int = DATABASE_MAX_N) -> "MDatabase":
        names: dict[CanonicalForm, str] = {}
        for name, g in graphs:
            names.setdefault(canonical_form(g), name)
            names.setdefault(canonical_form(complement(g)), f"co-{name}")
        return cls(frozenset(names), names, max_n)

    @classmethod
    def default(cls) -> "MDatabase":
        return _default_database()

    @classmethod
    def from_file(cls, path: str | Path) -> "MDatabase":
        graphs = read_graph_list(path)
        top = max((g.n for g in graphs), default=DATABASE_MAX_N)
        return cls.from_graphs(((encode_graph6(g), g) for g in graphs),
                               max(top, DATABASE_MAX_N))

    def __contains__(self, g: Graph) -> bool:
        return canonical_form(g) in self.forms

    def __len__(self) -> int:
        return len(self.forms)

    def name(self, g: Graph) -> Optional[str]:
        return self.names.get(canonical_form(g))

    def pair_counts(self) -> dict[int, int]:
        """Number of ``{G, co-G}`` pairs per vertex count."""
        counts: dict[int, int] = {}
        seen = set()
        for form in self.forms:
            if form in seen:
                continue
            seen.add(form)
            seen.add(canonical_form(complement(form.to_graph())))
            counts[form.n] = counts.get(form.n, 0) + 1
        return counts


@lru_cache(maxsize=1)
def _default_database() -> MDatabase:
    graphs = [(name, decode_graph6(code)) for name, code in catalog.MINIMAL
              if not name.startswith("co-")]
    return MDatabase.from_graphs(graphs)


# -- decomposition ----------------------------------------------------------------------


class NodeKind(enum.Enum):
    LEAF = "leaf"
    UNION = "union"
    JOIN = "join"


@dataclass(frozen=True)
class DecompositionTree:
    """``vertices`` are the labels of the input graph covered by this node."""

    kind: NodeKind
    vertices: tuple[int, ...]
    graph: Graph
    children: tuple["DecompositionTree", ...] = ()

    def leaves(self) -> list["DecompositionTree"]:
        if self.kind is NodeKind.LEAF:
            return [self]
        return [leaf for child in self.children for leaf in child.leaves()]

    def __str__(self) -> str:
        if self.kind is NodeKind.LEAF:
            return f"Leaf(n={self.graph.n})"
        sep = " | " if self.kind is NodeKind.UNION else " + "
        return "(" + sep.join(str(c) for c in self.children) + ")"


def decompose(g: Graph) -> DecompositionTree:
    return _decompose(g, tuple(range(g.n)))


def _decompose(g: Graph, labels: tuple[int, ...]) -> DecompositionTree:
    if g.n > 1:
        comps = components(g)
        if len(comps) > 1:
            kids = tuple(_decompose(induced_subgraph(g, c), tuple(labels[v] for v in c))
                         for c in comps)
            return DecompositionTree(NodeKind.UNION, labels, g, kids)
        co = complement(g)
        co_comps = components(co)
        if len(co_comps) > 1:
            kids = tuple(_decompose(induced_subgraph(g, c), tuple(labels[v] for v in c))
                         for c in co_comps)
            return DecompositionTree(NodeKind.JOIN, labels, g, kids)
    return DecompositionTree(NodeKind.LEAF, labels, g)


def recompose(tree: DecompositionTree) -> Graph:
    """Rebuild the graph on the node's vertex labels (relabelled ``0..k-1``
    in the order of ``tree.vertices``)."""
    pos = {v: k for k, v in enumerate(tree.vertices)}
    adj = [0] * len(tree.vertices)

    def add(i: int, j: int) -> None:
        adj[pos[i]] |= 1 << pos[j]
        adj[pos[j]] |= 1 << pos[i]

    def walk(node: DecompositionTree) -> None:
        if node.kind is NodeKind.LEAF:
            for i, j in node.graph.edges():
                add(node.vertices[i], node.vertices[j])
            return
        for child in node.children:
            walk(child)
        if node.kind is NodeKind.JOIN:
            for x, c1 in enumerate(node.children):
                for c2 in node.children[x + 1:]:
                    for i in c1.vertices:
                        for j in c2.vertices:
                            add(i, j)

    walk(tree)
    return Graph(len(adj), tuple(adj))


# -- classification ---------------------------------------------------------------------


class Membership(enum.Enum):
    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"


def in_R(g: Graph, db: Optional[MDatabase] = None) -> Membership:
    """Whether every leaf of the decomposition is a minimal graph."""
    db = MDatabase.default() if db is None else db
    result = Membership.YES
    for leaf in decompose(g).leaves():
        if leaf.graph in db:
            continue
        if leaf.graph.n <= db.max_n:
            return Membership.NO
        result = Membership.UNKNOWN
    return result


class Verdict(enum.Enum):
    CV = "CV"
    NOT_CV = "NotCV"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class ClassificationReport:
    verdict: Verdict
    reason: tuple[str, ...]
    robust_alpha: Optional[bool] = None
    robust_beta: Optional[bool] = None
    certificate_ref: Optional[str] = None


def classify(g: Graph, db: Optional[MDatabase] = None) -> ClassificationReport:
    db = MDatabase.default() if db is None else db
    witness = find_class_C(g)
    if witness is not None:
        host = "complement" if witness.in_complement else "graph"
        return ClassificationReport(Verdict.NOT_CV, (
            f"class C: u={witness.u}, v={witness.v}, w={witness.w} in {host}",))
    membership = in_R(g, db)
    if membership is Membership.NO:
        missing = [leaf for leaf in decompose(g).leaves()
                   if leaf.graph.n <= db.max_n and leaf.graph not in db]
        verts = list(missing[0].vertices)
        return ClassificationReport(Verdict.NOT_CV, (
            f"not in R: leaf on vertices {verts} is not a minimal graph",))
    if membership is Membership.YES:
        alpha, beta = _robustness_flags(g)
        names = sorted({db.name(leaf.graph) or "?" for leaf in decompose(g).leaves()})
        return ClassificationReport(Verdict.CV, (
            "in R and not in class C", "leaves: " + ", ".join(names)), alpha, beta)
    ref = refute(g)
    if ref.not_cv:
        return ClassificationReport(Verdict.NOT_CV, (
            "leaf larger than the database", f"{ref.reason.value}: {ref.detail}"))
    return ClassificationReport(Verdict.UNKNOWN, (
        f"a leaf has more than {db.max_n} vertices and no rule refutes it",))


def _robustness_flags(g: Graph) -> tuple[bool, bool]:
    if in_class_D(g):
        return False, True
    if in_class_D(complement(g)):
        return True, False
    return True, True


def robustness(g: Graph, db: Optional[MDatabase] = None) -> tuple[bool, bool]:
    """``(alpha, beta)`` robustness of a complementary vanishing graph."""
    if classify(g, db).verdict is not Verdict.CV:
        raise PreconditionViolated("robustness is only defined for complementary vanishing graphs")
    return _robustness_flags(g)


# -- certificates for minimal graphs -----------------------------------------------------


class CertificateStore:
    """Certificates for minimal graphs, looked up up to isomorphism and
    complement."""

    def __init__(self, certs: Iterable[Certificate] = ()):
        self._by_form: dict[CanonicalForm, Certificate] = {}
        for c in certs:
            self.add(c)

    @classmethod
    def default(cls) -> "CertificateStore":
        return _default_store()

    @classmethod
    def from_file(cls, path: str | Path) -> "CertificateStore":
        return cls(c for c in load_certificates(Path(path).read_text())
                   if isinstance(c, Certificate))

    def add(self, c: Certificate) -> None:
        _checked(c)
        for cert in (c, c.swapped()):
            form, perm = canonical_labeling(cert.graph)
            self._by_form.setdefault(form, cert.relabeled(perm))

    def __contains__(self, g: Graph) -> bool:
        return canonical_form(g) in self._by_form

    def __len__(self) -> int:
        return len(self._by_form)

    def __iter__(self) -> Iterator[Certificate]:
        return iter(self._by_form.values())

    def lookup(self, g: Graph) -> Optional[Certificate]:
        form, perm = canonical_labeling(g)
        cert = self._by_form.get(form)
        if cert is None:
            return None
        inverse = [0] * g.n
        for v, p in enumerate(perm):
            inverse[p] = v
        out = cert.relabeled(inverse)
        assert out.graph == g
        return out


@lru_cache(maxsize=1)
def _default_store() -> CertificateStore:
    text = resources.files("compvanish").joinpath("data/certificates.json").read_text()
    return CertificateStore(c for c in load_certificates(text) if isinstance(c, Certificate))


def certificate_for(g: Graph, store: Optional[CertificateStore] = None) -> RobustPair:
    """Compose alpha/beta-robust certificates from the stored leaf certificates."""
    store = CertificateStore.default() if store is None else store
    return compose_robust(g, store.lookup)

