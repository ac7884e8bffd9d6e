"""Builders against the definition-exact verifier."""

import pytest

from dbrg.bigraph import (
    arrays_equal_up_to_swap,
    dbrg_check,
    girth,
    halved_graphs,
    semiregular_check,
    srg_check,
)
from dbrg.constructions import (
    DerivedGraphError,
    bi_grassmann,
    bi_johnson,
    complete_bipartite,
    cone_graph,
    derived_local_graph,
    gen_delorme_graph,
    hyperoval_affine_graph,
)
from dbrg.geometry import dualize, hyperoval
from dbrg.perpsys import perp_verify


def verified(result):
    res = dbrg_check(result.graph)
    assert res.ok, res.witness
    assert res.array == result.predicted, (res.array, result.predicted)
    return res


def dual_hyperoval_system(q):
    fam = dualize(hyperoval(q))
    return perp_verify(fam.ctx, 3, 1, fam.members)


def test_complete_bipartite():
    res = verified(complete_bipartite(2, 3))
    assert not res.regular
    verified(complete_bipartite(3, 3))
    r11 = complete_bipartite(1, 1)
    assert "diameter 1" in r11.provenance
    verified(r11)


def test_bi_johnson():
    r = bi_johnson(6, 2)
    assert (r.graph.nB, r.graph.nC) == (15, 20)
    assert str(r.predicted) == "{4;1,1,2,2,3 | 3;1,1,2,2,3,3}"
    verified(r)
    r2 = bi_johnson(4, 1)
    assert str(r2.predicted) == "{3;1,1,2 | 2;1,1,2,2}"
    verified(r2)
    with pytest.raises(ValueError):
        bi_johnson(5, 2)


def test_bi_grassmann():
    r = bi_grassmann(4, 1, 2)
    assert (r.graph.nB, r.graph.nC) == (15, 35)
    assert str(r.predicted) == "{7;1,1,3 | 3;1,1,3,3}"
    verified(r)
    r3 = bi_grassmann(4, 1, 3)
    assert str(r3.predicted) == "{13;1,1,4 | 4;1,1,4,4}"
    verified(r3)
    with pytest.raises(ValueError):
        bi_grassmann(5, 2, 2)


def test_gen_delorme_q2_hypercube_parameters():
    r = gen_delorme_graph(dual_hyperoval_system(2))
    assert (r.graph.nB, r.graph.nC) == (8, 8)
    assert str(r.predicted) == "{4;1,2,3,4 | 4;1,2,3,4}"
    verified(r)


def test_gen_delorme_q4_row1():
    r = gen_delorme_graph(dual_hyperoval_system(4))
    assert (r.graph.nB, r.graph.nC) == (64, 24)
    assert str(r.predicted) == "{6;1,2,10,6 | 16;1,4,5,16}"
    verified(r)
    assert girth(r.graph) == 4
    sr = semiregular_check(r.graph)
    assert (sr.k, sr.l) == (6, 16)
    hb, hc = halved_graphs(r.graph)
    assert srg_check(hb).params == (64, 45, 32, 30)
    assert srg_check(hc).params == (24, 20, 16, 20)


def test_cone_q2():
    r = cone_graph(2)
    assert (r.graph.nB, r.graph.nC) == (64, 120)
    assert str(r.predicted) == "{15;1,3,4,15 | 8;1,2,6,8}"
    verified(r)
    hb, hc = halved_graphs(r.graph)
    assert srg_check(hb).params == (64, 35, 18, 20)
    assert srg_check(hc).params == (120, 56, 28, 24)


def test_hyperoval_affine_q4_regular():
    r = hyperoval_affine_graph(4)
    assert (r.graph.nB, r.graph.nC) == (18, 18)
    assert str(r.predicted) == "{6;1,2,5,6 | 6;1,2,5,6}"
    res = verified(r)
    assert res.regular
    with pytest.raises(ValueError):
        hyperoval_affine_graph(2)
    with pytest.raises(ValueError):
        hyperoval_affine_graph(6)


def test_derived_from_q4_parent():
    parent = gen_delorme_graph(dual_hyperoval_system(4))
    pres = dbrg_check(parent.graph)
    d = derived_local_graph(parent.graph, "B", 0, array=pres.array)
    assert d.params["gamma3"] == 2
    assert (d.graph.nB, d.graph.nC) == (18, 18)
    res = dbrg_check(d.graph)
    assert res.ok and res.array == d.predicted
    # parameters coincide with the direct affine construction
    direct = hyperoval_affine_graph(4)
    assert arrays_equal_up_to_swap(res.array, direct.predicted)
    assert {d.graph.nB, d.graph.nC} == {direct.graph.nB, direct.graph.nC}


def test_derived_rejects_bi_johnson_parent():
    bj = bi_johnson(6, 2)
    with pytest.raises(DerivedGraphError) as err:
        derived_local_graph(bj.graph, "C", 0)
    assert err.value.condition == "delta3_nonzero"


def test_derived_vertex_choice_is_irrelevant():
    parent = gen_delorme_graph(dual_hyperoval_system(4))
    arr = dbrg_check(parent.graph).array
    a = derived_local_graph(parent.graph, "B", 0, array=arr)
    b = derived_local_graph(parent.graph, "B", 17, array=arr)
    assert dbrg_check(a.graph).array == dbrg_check(b.graph).array
