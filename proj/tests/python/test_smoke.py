import pytest

try:
    import mlas as m
except ImportError:
    import _mlas as m


def test_generate_and_fast_heuristics():
    inst = m.generate_instance(20, 0.4, 7)
    assert inst.n == 20
    assert 0 <= inst.sink < 20
    for build in (m.spt, m.round_heuristic, m.mlst):
        res = m.ndr_schedule(build(inst))
        assert m.validate_schedule(inst, res.tree, res.schedule) == []
        assert res.schedule.length >= 1


def test_instance_accessors():
    inst = m.make_instance([(0.1, 0.5), (0.5, 0.5), (0.9, 0.5)], 0.5)
    assert inst.sink == 1
    assert inst.level(0) == 1 and inst.level(1) == 0
    assert inst.has_edge(0, 1) and not inst.has_edge(0, 2)
    assert len(inst.neighbors(1)) == 2


def test_primary_schedule_on_a_chain():
    inst = m.make_instance([(0.5, 0.5), (0.54, 0.5), (0.58, 0.5), (0.62, 0.5)], 0.05)
    tree = m.spt(inst)
    ps = m.primary_schedule(tree)
    assert ps.makespan == 3


def test_gls_dominates_the_seeds():
    inst = m.generate_instance(18, 0.4, 11)
    seeds = [m.ndr_schedule(b(inst)).schedule.length
             for b in (m.spt, m.round_heuristic, m.mlst)]
    r = m.run_gls(inst, pop_size=8, offsp_size=4, fp_it_count=10, stall_limit=2, seed=3)
    assert r.length <= min(seeds)
    assert m.validate_schedule(inst, r.tree, r.schedule) == []


def test_vns_runs_and_validates():
    inst = m.generate_instance(16, 0.4, 13)
    r = m.run_vns(inst, k_max=5, stall_limit=2, seed=1)
    assert m.validate_schedule(inst, r.tree, r.schedule) == []
    assert r.length >= 1


def test_exact_triangle():
    inst = m.make_instance([(0.5, 0.5), (0.56, 0.5), (0.5, 0.56)], 0.1)
    assert m.exact_min_latency(inst).length == 2


def test_exact_refuses_large_instances():
    inst = m.generate_instance(20, 0.4, 5)
    with pytest.raises(Exception):
        m.exact_min_latency(inst, 12)


def test_dot_and_json_exports():
    inst = m.generate_instance(10, 0.5, 9)
    res = m.ndr_schedule(m.mlst(inst))
    dot = m.export_dot(res.tree, res.schedule)
    assert dot.startswith("digraph")
    js = m.schedule_json(res.tree, res.schedule)
    assert js.startswith("[") and js.endswith("]")


def test_mutation_and_distance():
    inst = m.generate_instance(15, 0.45, 21)
    t = m.spt(inst)
    u = m.random_shortest_path(inst, 4)
    assert m.tree_distance(t, t) == 0
    assert m.tree_distance(t, u) >= 0
