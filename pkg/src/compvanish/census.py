"""Census of connected, co-connected graph pairs by deciding method.

Each pair ``{G, co-G}`` is handed down a fixed pipeline and counted by the
first method that decides it: diagonal lemmas, odd-cycle lemma, Gröbner
refutation (or lookup in the pinned set of Gröbner-only pairs), twin
construction, duplication of a certificate recorded for a smaller pair,
and finally certificate search.
"""

from __future__ import annotations

import enum
import hashlib
import itertools
import json
from importlib import resources
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Iterable, Optional, Sequence

from . import catalog
from .certify import (
    Certificate,
    LeafSource,
    compose_certificate,
    Provenance,
    SingletonTwinClass,
    duplicate_vertex,
    load_certificates,
    random_trial,
    twin_certificate,
    write_certificate,
)
from .graph import (
    CanonicalForm,
    Graph,
    are_twins,
    canonical_form,
    complement,
    decode_graph6,
    dedup_pairs,
    encode_graph6,
    generate_all,
    pair_representative,
    permute,
    remove_vertex,
)
from .groebner import Limits, groebner_refutes
from .rules import diagonal_constraints, find_odd_cycle_obstruction
from .structure import CertificateStore

ATTEMPTS_PER_SIDE = 500


class Method(enum.Enum):
    DIAG = "diag"
    ODD_CYCLE = "oc"
    GROEBNER = "grob"
    TWIN = "twin"
    DUPLICATION = "dup"
    CERTIFICATE = "certificate"
    UNRESOLVED = "unresolved"


_NOT_CV = {Method.DIAG, Method.ODD_CYCLE, Method.GROEBNER}
_CV = {Method.TWIN, Method.DUPLICATION, Method.CERTIFICATE}


@dataclass
class LedgerEntry:
    n: int
    graph6: str
    method: Method
    reason: str
    certificate: Optional[Certificate] = field(default=None, repr=False)
    certificate_path: Optional[str] = None

    @property
    def verdict(self) -> str:
        if self.method in _NOT_CV:
            return "NotCV"
        if self.method in _CV:
            return "CV"
        return "Unresolved"

    def record(self) -> dict:
        out = {"n": self.n, "graph6": self.graph6, "verdict": self.verdict,
               "method": self.method.value, "reason": self.reason}
        if self.certificate_path:
            out["certificate"] = self.certificate_path
        return out


@dataclass
class CensusRow:
    n: int
    diag: int = 0
    odd_cycle: int = 0
    grobner_or_residual: int = 0
    twin: int = 0
    duplication: int = 0
    certificate_found: int = 0
    unresolved: int = 0

    @property
    def not_cv(self) -> int:
        return self.diag + self.odd_cycle + self.grobner_or_residual

    @property
    def cv(self) -> int:
        return self.twin + self.duplication + self.certificate_found

    @property
    def total_pairs(self) -> int:
        return self.not_cv + self.cv + self.unresolved

    def count(self, method: Method) -> None:
        attr = {
            Method.DIAG: "diag", Method.ODD_CYCLE: "odd_cycle",
            Method.GROEBNER: "grobner_or_residual", Method.TWIN: "twin",
            Method.DUPLICATION: "duplication", Method.CERTIFICATE: "certificate_found",
            Method.UNRESOLVED: "unresolved",
        }[method]
        setattr(self, attr, getattr(self, attr) + 1)


TSV_HEADER = "n\tdiag\toc\tgrob\ttwin\tdup\tcertificate\tunresolved\tnot_cv\tcv\ttotal"


def format_row(row: CensusRow) -> str:
    vals = [row.n, row.diag, row.odd_cycle, row.grobner_or_residual, row.twin,
            row.duplication, row.certificate_found, row.unresolved,
            row.not_cv, row.cv, row.total_pairs]
    return "\t".join(map(str, vals))


@dataclass(frozen=True)
class CensusOptions:
    max_n: int = 8
    seed: int = 0
    grobner: bool = False
    attempts_per_side: int = ATTEMPTS_PER_SIDE
    limits: Limits = Limits()


@dataclass
class CensusResult:
    rows: list[CensusRow]
    ledger: list[LedgerEntry]

    def tsv(self) -> str:
        return "\n".join([TSV_HEADER] + [format_row(r) for r in self.rows]) + "\n"

    def jsonl(self) -> str:
        return "".join(json.dumps(e.record(), sort_keys=True) + "\n" for e in self.ledger)


def graph_seed(seed: int, form: CanonicalForm) -> int:
    digest = hashlib.sha256(f"{seed}:{form.n}:{form.bits}".encode()).digest()
    return int.from_bytes(digest[:8], "big")


def groebner_residue() -> frozenset[CanonicalForm]:
    return frozenset(pair_representative(decode_graph6(code)) for name, code in catalog.GROEBNER)


def imported_certificates() -> CertificateStore:
    """Shipped certificates that no automatic method in this package is
    credited with finding."""
    text = resources.files("compvanish").joinpath("data/certificates.json").read_text()
    return CertificateStore(c for c in load_certificates(text)
                            if isinstance(c, Certificate) and c.provenance is Provenance.IMPORTED)


def _automorphisms(g: Graph) -> Iterable[list[int]]:
    degs = [g.degree(v) for v in range(g.n)]
    choices = [[u for u in range(g.n) if degs[u] == degs[v]] for v in range(g.n)]
    for perm in itertools.product(*choices):
        if len(set(perm)) == g.n and permute(g, perm) == g:
            yield list(perm)


def duplication_certificate(g: Graph, on_file: LeafSource) -> Optional[tuple[Certificate, str]]:
    """Certificate for ``g`` by duplicating a twin in a recorded smaller certificate.

    For twins ``i, j`` the base is ``g - j``.  Non-adjacent twins need a
    base certificate with ``a_ii = 0``; adjacent twins are non-adjacent in
    the complement and need ``b_ii = 0``.  Every automorphism of the base
    is tried, since it moves which diagonal entry sits at ``i``.
    """
    for i in range(g.n):
        for j in range(g.n):
            if i == j or not are_twins(g, i, j):
                continue
            base = remove_vertex(g, j)
            adjacent = g.has_edge(i, j)
            host = complement(base) if adjacent else base
            cert = on_file(host)
            if cert is None:
                continue
            ii = i if i < j else i - 1
            for sigma in _automorphisms(host):
                moved = cert.relabeled(sigma)
                if moved.a[ii, ii] != 0:
                    continue
                dup = duplicate_vertex(moved, ii)
                # base vertex k is g's vertex k (k < j) or k + 1; the copy is j
                back = [k if k < j else k + 1 for k in range(g.n - 1)] + [j]
                dup = dup.relabeled(back)
                if adjacent:
                    dup = dup.swapped()
                assert dup.graph == g
                kind = "adjacent" if adjacent else "non-adjacent"
                return dup, f"{kind} twins {i},{j} from a certificate for the pair of g-{j}"
    return None


class _Pipeline:
    def __init__(self, options: CensusOptions):
        self.options = options
        self.residue = groebner_residue()
        self.imported = imported_certificates()
        self.on_file = CertificateStore()

    def decide(self, g: Graph) -> LedgerEntry:
        n = g.n
        code = encode_graph6(g)
        dc = diagonal_constraints(g)
        if dc.contradiction is not None:
            return LedgerEntry(n, code, Method.DIAG, str(dc.contradiction))
        hit = find_odd_cycle_obstruction(g, dc)
        if hit is not None:
            host = "complement" if hit.in_complement else "graph"
            return LedgerEntry(n, code, Method.ODD_CYCLE,
                               f"cycle {list(hit.cycle)} with vertex {hit.v} in {host}")
        form = pair_representative(g)
        if self.options.grobner:
            report = groebner_refutes(g, self.options.limits)
            if report.refuted:
                return LedgerEntry(n, code, Method.GROEBNER, report.witness)
        elif form in self.residue:
            return LedgerEntry(n, code, Method.GROEBNER, "pinned Groebner-only pair")

        try:
            cert = twin_certificate(g)
            return LedgerEntry(n, code, Method.TWIN, "every vertex has a twin", cert)
        except SingletonTwinClass:
            pass
        dup = duplication_certificate(g, self.on_file.lookup)
        if dup is not None:
            return LedgerEntry(n, code, Method.DUPLICATION, dup[1], dup[0])

        attempts = 2 * self.options.attempts_per_side
        trial = random_trial(g, attempts, rng_seed=graph_seed(self.options.seed, form))
        if trial.found:
            return LedgerEntry(n, code, Method.CERTIFICATE,
                               f"random trial, attempt {trial.attempts}", trial.certificate)
        cert = self.imported.lookup(g)
        if cert is not None:
            return LedgerEntry(n, code, Method.CERTIFICATE, "imported certificate", cert)
        return LedgerEntry(n, code, Method.UNRESOLVED, f"no method succeeded in {attempts} attempts")


def run_census(options: CensusOptions = CensusOptions(),
               graphs: Optional[dict[int, list[Graph]]] = None,
               out_dir: Optional[Path] = None,
               on_row: Optional[Callable[[CensusRow], None]] = None) -> CensusResult:
    """Run the pipeline for ``n = 1 .. max_n``.

    ``graphs`` replaces the built-in generator for the given vertex counts
    (the lists are reduced to pair representatives first).  Certificates
    are written under ``out_dir/certificates`` when ``out_dir`` is given.
    """
    pipe = _Pipeline(options)
    rows, ledger = [], []
    for n in range(1, options.max_n + 1):
        if graphs is not None and n in graphs:
            todo = dedup_pairs(graphs[n])
        else:
            todo = generate_all(n, "cc")
        row = CensusRow(n)
        entries = []
        for g in todo:
            entry = pipe.decide(g)
            row.count(entry.method)
            entries.append(entry)
        # certificates become available to duplication at the next size
        for entry in entries:
            if entry.certificate is not None:
                pipe.on_file.add(entry.certificate)
        entries.sort(key=lambda e: e.graph6)
        if out_dir is not None:
            _write_certificates(entries, Path(out_dir))
        rows.append(row)
        ledger.extend(entries)
        if on_row is not None:
            on_row(row)
    return CensusResult(rows, ledger)


def _write_certificates(entries: list[LedgerEntry], out_dir: Path) -> None:
    folder = out_dir / "certificates"
    for entry in entries:
        if entry.certificate is None:
            continue
        folder.mkdir(parents=True, exist_ok=True)
        name = f"n{entry.n}_{canonical_form(decode_graph6(entry.graph6)).bits:x}.json"
        write_certificate(folder / name, entry.certificate)
        entry.certificate_path = str(Path("certificates") / name)


# -- single-graph certification ---------------------------------------------------------


CERTIFY_METHODS = ("twin", "dup", "compose", "random")


class NoCertificateFound(Exception):
    def __init__(self, diagnostics: list[tuple[str, str]]):
        self.diagnostics = diagnostics
        super().__init__("; ".join(f"{m}: {d}" for m, d in diagnostics))


def certify_graph(g: Graph, methods: Sequence[str] = CERTIFY_METHODS,
                  attempts: int = 2 * ATTEMPTS_PER_SIDE, seed: int = 0,
                  store: Optional[CertificateStore] = None) -> tuple[Certificate, str]:
    """First certificate produced by ``methods`` in the given order.

    ``dup`` and ``compose`` draw on ``store`` (the shipped certificates of
    the minimal graphs by default); ``dup`` also composes a certificate
    for the smaller graph when it is not stored directly.
    """
    store = CertificateStore.default() if store is None else store

    def on_file(h: Graph) -> Optional[Certificate]:
        return store.lookup(h) or compose_certificate(h, store.lookup)

    diagnostics = []
    for method in methods:
        if method == "twin":
            try:
                return twin_certificate(g), "twin"
            except SingletonTwinClass as exc:
                diagnostics.append((method, str(exc)))
        elif method == "dup":
            dup = duplication_certificate(g, on_file)
            if dup is not None:
                return dup[0], f"dup: {dup[1]}"
            diagnostics.append((method, "no twin pair with a usable smaller certificate"))
        elif method == "compose":
            cert = compose_certificate(g, store.lookup)
            if cert is not None:
                return cert, "compose"
            diagnostics.append((method, "some leaf of the decomposition has no stored certificate"))
        elif method == "random":
            trial = random_trial(g, attempts, rng_seed=seed)
            if trial.found:
                return trial.certificate, f"random: attempt {trial.attempts}"
            diagnostics.append((method, f"nothing found in {trial.attempts} attempts"))
        else:
            raise ValueError(f"unknown method {method!r}")
    raise NoCertificateFound(diagnostics)
