"""Complementary vanishing graphs: exact certificates, combinatorial and
Gröbner refutation, and a census of small graphs."""

from .census import CensusOptions, CensusRow, certify_graph, run_census
from .certify import Certificate, RobustCertificate, random_trial, verify
from .graph import Graph, complement, decode_graph6, encode_graph6, generate_all
from .groebner import groebner_refutes
from .rules import diagonal_constraints, refute
from .structure import Verdict, classify

__version__ = "0.1.0"

__all__ = [
    "CensusOptions", "CensusRow", "Certificate", "Graph", "RobustCertificate", "Verdict",
    "certify_graph", "classify", "complement", "decode_graph6", "diagonal_constraints",
    "encode_graph6", "generate_all", "groebner_refutes", "random_trial", "refute",
    "run_census", "verify",
]
