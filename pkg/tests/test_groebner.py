import itertools
from fractions import Fraction

import pytest
import sympy
from hypothesis import HealthCheck, given, settings, strategies as st

from compvanish.catalog import MINIMAL
from compvanish.graph import Graph
from compvanish.groebner import (
    Limits,
    MonomialOrder,
    Polynomial,
    PreconditionViolated,
    TreeSide,
    VarId,
    _forces_zero,
    _sturm_real_roots,
    bfs_tree,
    build_ideal,
    buchberger,
    groebner_refutes,
    is_groebner_basis,
    reduce_full,
    run_ideal,
    s_polynomial,
)
from compvanish.rules import DiagonalConstraints, Side, Status, diagonal_constraints

from conftest import groebner_graph, minimal, path, star

QUICK = Limits(max_spolys=5_000, max_degree=8, timeout=20.0)


def make_order(nv: int) -> MonomialOrder:
    # off-diagonal A variables sort by column, so x0 > x1 > ...
    order = MonomialOrder.for_variables(VarId(Side.A, 0, k + 1) for k in range(nv))
    assert [v.j for v in order.variables] == list(range(1, nv + 1))
    return order


def poly(order: MonomialOrder, terms: dict[tuple[int, ...], int]) -> Polynomial:
    return Polynomial.from_terms((order.monomial(list(e)), c) for e, c in terms.items())


def to_sympy(p: Polynomial, order: MonomialOrder, xs):
    expr = 0
    for m, c in p.terms:
        mono = 1
        for x, e in zip(xs, order.exponents(m)):
            mono *= x ** e
        expr += c * mono
    return sympy.expand(expr)


def monic_set(polys, xs):
    return {sympy.Poly(p, *xs, domain="QQ").monic().as_expr() for p in polys}


exps3 = st.tuples(*[st.integers(0, 2)] * 3)
term_dicts = st.dictionaries(exps3, st.integers(-3, 3).filter(bool), min_size=1, max_size=3)


def test_order_basics():
    order = make_order(2)
    x2, y2, xy = (order.monomial(e) for e in ([2, 0], [0, 2], [1, 1]))
    p = poly(order, {(2, 0): 1, (0, 2): 1})
    assert p.lm == x2 and order.format(p.lm) == "a1_2^2"
    # grevlex: x^2 > xy > y^2, and any degree-3 monomial beats them
    assert x2 > xy > y2
    assert order.monomial([0, 3]) > x2
    assert order.one < order.variable(1) < order.variable(0)
    with pytest.raises(ValueError):
        order.monomial([200, 0])


@given(exps3, exps3, exps3)
def test_order_axioms(a, b, c):
    order = make_order(3)
    ma, mb, mc = (order.monomial(list(e)) for e in (a, b, c))
    if ma < mb:
        assert order.mul(ma, mc) < order.mul(mb, mc)
    assert (ma == mb) == (a == b)
    assert ma >= order.one
    assert order.divides(ma, order.mul(ma, mb))
    assert order.divides(ma, mb) == all(x <= y for x, y in zip(a, b))
    assert order.exponents(order.lcm(ma, mb)) == [max(x, y) for x, y in zip(a, b)]


def test_order_matches_sympy_grevlex():
    order = make_order(3)
    monos = list(itertools.product(range(3), repeat=3))
    ours = sorted(monos, key=lambda e: order.monomial(list(e)))
    assert ours == sorted(monos, key=sympy.polys.orderings.grevlex)


def test_buchberger_examples():
    order = make_order(2)
    res = buchberger([poly(order, {(1, 1): 1, (0, 0): -1}), poly(order, {(1, 0): 1})], order)
    assert res.complete and res.contains_one
    single = poly(order, {(1, 0): 1, (0, 0): -1})
    res = buchberger([single], order)
    assert res.basis == [single]
    gens = [poly(order, {(2, 0): 1, (0, 2): 1}), poly(order, {(1, 1): 1})]
    res = buchberger(gens, order)
    assert res.complete and not res.contains_one
    assert order.monomial([0, 3]) in {p.lm for p in res.basis}
    assert is_groebner_basis(res.basis, order)


@given(st.lists(term_dicts, min_size=1, max_size=3))
@settings(max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])
def test_reduced_basis_matches_sympy(specs):
    order = make_order(3)
    xs = sympy.symbols("x0:3")
    gens = [poly(order, d) for d in specs]
    res = buchberger(gens, order, Limits(max_degree=40, timeout=30.0))
    assert res.complete
    theirs = sympy.groebner([to_sympy(g, order, xs) for g in gens], *xs, order="grevlex")
    assert monic_set([to_sympy(p, order, xs) for p in res.basis], xs) == monic_set(theirs.exprs, xs)
    for g in gens:
        assert reduce_full(g, res.basis, order).is_zero


def _ideal_suite():
    """Ten small ideals with known structure, in three variables."""
    o = make_order(3)
    x, y, z = ((1, 0, 0), (0, 1, 0), (0, 0, 1))
    one = (0, 0, 0)

    def add(*es):
        return tuple(map(sum, zip(*es)))

    return o, [
        [poly(o, {x: 1, y: 1, z: 1}), poly(o, {add(x, y): 1, add(y, z): 1, add(z, x): 1}),
         poly(o, {add(x, y, z): 1, one: -1})],  # cyclic-3
        [poly(o, {x: 1, add(y, y): 2, add(z, z): 2, one: -1}),
         poly(o, {add(x, x): 1, add(y, y): 2, add(z, z): 2, x: -1}),
         poly(o, {add(x, y): 2, add(y, z): 2, y: -1})],  # katsura-2
        [poly(o, {add(x, x): 1, add(y, y): 1, add(z, z): 1, one: -1}), poly(o, {add(x, y): 1})],
        [poly(o, {add(x, x, x): 1, z: -1}), poly(o, {add(y, y): 1, add(x, z): -1})],
        [poly(o, {add(x, y): 1, one: -1}), poly(o, {add(y, z): 1, one: -1})],
        [poly(o, {add(x, x): 1, y: -1}), poly(o, {add(x, x, x): 1, z: -1})],  # twisted cubic
        [poly(o, {add(x, y): 1}), poly(o, {add(y, z): 1}), poly(o, {add(z, x): 1})],
        [poly(o, {x: 1, y: -1}), poly(o, {y: 1, z: -1}), poly(o, {add(z, z): 1, one: -2})],
        [poly(o, {add(x, x): 1, add(y, z): -1}), poly(o, {add(y, y): 1, add(x, z): -1}),
         poly(o, {add(z, z): 1, add(x, y): -1})],
        [poly(o, {add(x, y, z): 1}), poly(o, {add(x, x): 1, add(y, y): -1, one: 1})],
    ]


def test_ideal_suite_basis_property():
    order, suite = _ideal_suite()
    for gens in suite:
        res = buchberger(gens, order)
        assert res.complete
        assert is_groebner_basis(res.basis, order)
        # independent pass over all S-pairs
        for f, g in itertools.combinations(res.basis, 2):
            assert reduce_full(s_polynomial(f, g, order), res.basis, order).is_zero
        for g in gens:
            assert reduce_full(g, res.basis, order).is_zero


def test_limits_stop_gracefully():
    order, suite = _ideal_suite()
    res = buchberger(suite[1], order, Limits(max_spolys=1))
    assert not res.complete
    assert res.progress.reason


@pytest.mark.parametrize("coeffs,roots", [
    ([1, 0, 1], 0),          # x^2 + 1
    ([-1, 0, 1], 2),         # x^2 - 1
    ([0, 0, 1], 1),          # x^2
    ([-2, 0, 0, 1], 1),      # x^3 - 2, irrational root
    ([1, 0, 0, 0, 1], 0),
    ([6, -5, 1], 2),
])
def test_sturm(coeffs, roots):
    assert _sturm_real_roots([Fraction(c) for c in coeffs]) == roots


def test_forces_zero():
    order = make_order(2)
    assert _forces_zero(poly(order, {(3, 0): 1, (1, 0): 1}), order) == 0  # x(x^2+1)
    assert _forces_zero(poly(order, {(2, 0): 1, (1, 0): -1}), order) is None  # x(x-1)
    assert _forces_zero(poly(order, {(1, 1): 1}), order) is None
    assert _forces_zero(poly(order, {(0, 2): 1, (0, 0): 1}), order) is None


def test_bfs_tree_spans():
    for g in (path(5), star(4), minimal("G3")):
        tree = bfs_tree(g)
        assert len(tree) == g.n - 1
        assert all(g.has_edge(i, j) for i, j in tree)


def test_k2_ideal():
    k2 = Graph.complete(2)
    # with no diagonal information: four diagonal unknowns, a12 scaled to 1
    free = DiagonalConstraints((Status.FREE,) * 2, (Status.FREE,) * 2, None)
    ideal = build_ideal(k2, free)
    names = {str(v) for v in ideal.order.variables}
    assert names == {"a1_1", "a2_2", "b1_1", "b2_2"}
    assert [str(f.variable) for f in ideal.fixed] == ["a1_2"]
    result, witness = run_ideal(ideal)
    assert result.complete and not result.contains_one and not witness
    # the rules force both b diagonals to zero, which kills every generator
    ideal = build_ideal(k2)
    assert ideal.generators == []
    assert not groebner_refutes(k2).refuted


def test_empty_intersections_dropped():
    g = minimal("G1")
    ideal = build_ideal(g)
    assert all(not p.is_zero for p in ideal.generators)
    assert len(ideal.generators) < g.n * g.n


def test_build_ideal_rejects():
    g = path(4)
    with pytest.raises(PreconditionViolated):
        build_ideal(g)
    h2 = groebner_graph("H2")
    non_edge = next((i, j) for i, j in itertools.combinations(range(8), 2) if not h2.has_edge(i, j))
    with pytest.raises(PreconditionViolated):
        build_ideal(h2, tree=[non_edge])


def test_h2_worked_example():
    g = groebner_graph("H2")
    tree = [(0, 7), (1, 7), (2, 6), (3, 6), (4, 7), (5, 6), (5, 7)]
    ideal = build_ideal(g, tree=tree, diagonal_one=4, other_one=(0, 4))
    fixed = {str(f.variable): f.value for f in ideal.fixed}
    assert fixed["a5_5"] == 1 and fixed["b1_5"] == 1
    result, witness = run_ideal(ideal, QUICK)
    assert result.complete and result.contains_one
    assert witness == "1 is in the ideal"


@pytest.mark.parametrize("name", ["H2", "H3", "H4"])
def test_h_forms_refuted(name):
    g = groebner_graph(name)
    report = groebner_refutes(g, QUICK)
    assert report.refuted and report.witness


@pytest.mark.slow
def test_h1_via_complement_tree():
    g = groebner_graph("H1")
    report = groebner_refutes(g, sides=(TreeSide.COMPLEMENT,))
    assert report.refuted
    assert report.runs[-1].tree_side is TreeSide.COMPLEMENT


@pytest.mark.slow
def test_sound_on_cv_graphs():
    # every catalogued minimal graph is CV, so no run may refute it
    tight = Limits(max_spolys=300, max_degree=6, timeout=1.0)
    for name, _ in MINIMAL:
        g = minimal(name)
        if g.n > 1 and diagonal_constraints(g).contradiction is None:
            assert not groebner_refutes(g, tight, roots=[0]).refuted, name
