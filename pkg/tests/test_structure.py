import pytest
from hypothesis import HealthCheck, given, settings, strategies as st

from compvanish.catalog import MINIMAL
from compvanish.certify import verify_robust
from compvanish.graph import (
    Graph,
    add_vertex,
    complement,
    components,
    decode_graph6,
    disjoint_union,
    dominating_vertices,
    generate_all,
    is_connected,
    is_isomorphic,
    isolated_vertices,
    join,
    permute,
)
from compvanish.rules import refute
from compvanish.structure import (
    CertificateStore,
    MDatabase,
    Membership,
    NodeKind,
    PreconditionViolated,
    Verdict,
    certificate_for,
    classify,
    decompose,
    in_R,
    recompose,
    robustness,
)

from conftest import graphs, groebner_graph, minimal, path, star

K1 = Graph.empty(1)
K2 = Graph.complete(2)
K44M = join(disjoint_union(K2, K2), disjoint_union(K2, K2))


def test_database_counts():
    db = MDatabase.default()
    assert db.pair_counts() == {1: 1, 7: 4, 8: 32}
    # self-complementary members count once
    names = ["K1"] + [f"G{k}" for k in range(1, 37)]
    selfco = sum(is_isomorphic(minimal(x), complement(minimal(x))) for x in names)
    assert len(db) == 2 * len(names) - selfco


def test_database_members_cc():
    for name, code in MINIMAL:
        g = decode_graph6(code)
        assert is_connected(g) and is_connected(complement(g)), name


def test_catalog_complements():
    # each listed co-Gk is the complement of Gk up to isomorphism
    table = dict(MINIMAL)
    for k in range(1, 37):
        g, co = decode_graph6(table[f"G{k}"]), decode_graph6(table[f"co-G{k}"])
        assert is_isomorphic(complement(g), co)


def test_database_from_file(tmp_path):
    f = tmp_path / "db.g6"
    f.write_text("@\n" + dict(MINIMAL)["G1"] + "\n")
    db = MDatabase.from_file(f)
    assert minimal("G1") in db and complement(minimal("G1")) in db
    assert minimal("G2") not in db


def test_decompose_k44_matching():
    t = decompose(K44M)
    assert t.kind is NodeKind.JOIN and len(t.children) == 2
    for child in t.children:
        assert child.kind is NodeKind.UNION
        assert all(is_isomorphic(c.graph, K2) for c in child.children)


def test_decompose_examples():
    assert decompose(path(4)).kind is NodeKind.LEAF
    t = decompose(star(3))
    assert t.kind is NodeKind.JOIN
    sizes = sorted(len(c.vertices) for c in t.children)
    assert sizes == [1, 3]


@given(graphs(1, 8))
@settings(max_examples=200)
def test_decompose_recompose(g):
    t = decompose(g)
    assert recompose(t) == g
    for leaf in t.leaves():
        if leaf.graph.n > 1:
            assert is_connected(leaf.graph) and is_connected(complement(leaf.graph))
    if t.kind is NodeKind.UNION:
        assert len(t.children) == len(components(g))


@st.composite
def threshold_graphs(draw):
    g = K1
    for _ in range(draw(st.integers(0, 9))):
        g = add_vertex(g, g.vertex_mask if draw(st.booleans()) else 0)
    return g


@given(threshold_graphs())
def test_threshold_in_R(g):
    assert in_R(g) is Membership.YES


def test_in_R_examples():
    # P3 = K1 v 2K1 and P2 = K1 v K1, so every leaf is K1; class C rules it out
    p3p2 = disjoint_union(path(3), path(2))
    assert in_R(p3p2) is Membership.YES
    assert classify(p3p2).reason[0].startswith("class C")
    assert in_R(disjoint_union(path(4), K1)) is Membership.NO
    assert in_R(disjoint_union(minimal("G1"), K1)) is Membership.YES


def test_classify_examples():
    assert classify(K44M).verdict is Verdict.CV
    assert classify(K1).verdict is Verdict.CV
    assert classify(minimal("G1")).verdict is Verdict.CV
    assert classify(groebner_graph("H2")).verdict is Verdict.NOT_CV
    assert classify(path(4)).verdict is Verdict.NOT_CV


@pytest.mark.parametrize("k", [2, 3, 5])
def test_trees(k):
    assert classify(star(k)).verdict is Verdict.CV
    assert classify(path(k + 2)).verdict is Verdict.NOT_CV


def test_unknown_for_large_leaf():
    # a 9-vertex leaf outside the database that no rule refutes would be Unknown;
    # C9 is refuted by rules, so it must come back NotCV rather than Unknown
    c9 = Graph.from_edges(9, [(i, (i + 1) % 9) for i in range(9)])
    report = classify(c9)
    assert report.verdict in (Verdict.NOT_CV, Verdict.UNKNOWN)
    if not refute(c9).not_cv:
        assert report.verdict is Verdict.UNKNOWN


def test_robustness_examples():
    assert robustness(star(3)) == (False, True)
    assert robustness(K1) == (True, True)
    assert robustness(complement(star(3))) == (True, False)
    with pytest.raises(PreconditionViolated):
        robustness(path(4))


@given(graphs(1, 8))
@settings(max_examples=200)
def test_classify_complement_symmetric(g):
    assert classify(g).verdict == classify(complement(g)).verdict


@given(graphs(1, 8))
@settings(max_examples=200)
def test_robust_flags_only_for_cv(g):
    r = classify(g)
    if r.verdict is Verdict.CV:
        assert r.robust_alpha is not None and r.robust_beta is not None
        if not dominating_vertices(g) and not isolated_vertices(g):
            assert (r.robust_alpha, r.robust_beta) == (True, True)
    else:
        assert r.robust_alpha is None and r.robust_beta is None


@pytest.mark.parametrize("n,not_cv,cv", [(1, 0, 1), (4, 1, 0), (5, 5, 0), (6, 34, 0), (7, 327, 4)])
def test_table_counts(n, not_cv, cv):
    verdicts = [classify(g).verdict for g in generate_all(n, "cc")]
    assert verdicts.count(Verdict.NOT_CV) == not_cv
    assert verdicts.count(Verdict.CV) == cv


@pytest.mark.parametrize("n", range(1, 8))
def test_refute_implies_not_cv(n):
    for g in generate_all(n, "cc"):
        if refute(g).not_cv:
            assert classify(g).verdict is Verdict.NOT_CV


def test_store_lookup_relabels():
    store = CertificateStore.default()
    g = minimal("G5")
    moved = permute(g, [7, 6, 5, 4, 3, 2, 1, 0])
    for h in (moved, complement(moved)):
        c = store.lookup(h)
        assert c is not None and c.graph == h


PIECES = [K1] + [minimal(f"G{k}") for k in (1, 2, 3, 6, 13)]


@st.composite
def cv_compositions(draw):
    g = draw(st.sampled_from(PIECES))
    for _ in range(draw(st.integers(0, 2))):
        h = draw(st.sampled_from(PIECES))
        if g.n + h.n > 16:
            break
        op = draw(st.sampled_from([disjoint_union, join]))
        g = op(g, h)
        if draw(st.booleans()):
            g = complement(g)
    return g


@given(cv_compositions())
@settings(max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])
def test_composed_certificates(g):
    report = classify(g)
    pair = certificate_for(g)
    if report.verdict is Verdict.CV:
        assert (pair.alpha is not None) == report.robust_alpha
        assert (pair.beta is not None) == report.robust_beta
    for rc in (pair.alpha, pair.beta):
        if rc is not None:
            assert rc.graph == g and verify_robust(rc)
