"""End-to-end checks of the python module against known small problems."""

import pytest

import warmcg as w


@pytest.fixture(scope="module")
def toy_family():
    return w.gen_toy()


def test_family_shape(toy_family):
    assert [a.name for a in toy_family] == [
        "toy-b1.00",
        "toy-b1.25",
        "toy-b1.50",
        "toy-test",
    ]
    for inst in toy_family:
        assert inst.num_vars() == 2
        assert inst.num_constraints() == 6


def test_full_solve(toy_family):
    out = w.solve_full(toy_family[3])
    assert out.status == w.SolveStatus.Optimal
    assert out.objective == pytest.approx(-0.5)
    assert out.solution == pytest.approx([0.5, 1.0])


def test_identification(toy_family):
    expected = {
        "toy-b1.00": ([2], [1, 2]),
        "toy-b1.25": ([2], [1, 2]),
        "toy-b1.50": ([2, 3], [1, 2, 3]),
        "toy-test": ([2], [1, 2]),
    }
    for inst in toy_family:
        r = w.identify_invariant_set(inst)
        want_binding, want_invariant = expected[inst.name]
        assert r.binding.learnable_members(inst) == want_binding
        assert r.invariant.learnable_members(inst) == want_invariant
        # The grown set solves to the full objective in a single pass.
        trace = w.constraint_generation(inst, r.invariant)
        assert trace.iterations == 1
        assert trace.outcome.objective == pytest.approx(r.full.objective)


def test_learner_votes(toy_family):
    train = list(toy_family[:3])
    sets = [w.identify_invariant_set(a).invariant for a in train]
    data = w.build_labels(train, sets, w.LabelSource.Invariant)

    assert w.KnnModel(data, 1).predict_ids(toy_family[3].theta) == [1, 2]
    assert w.KnnModel(data, 2).predict_ids(toy_family[3].theta) == [1, 2, 3]

    predicted = w.KnnModel(data, 1).predict(toy_family[3])
    assert predicted.members() == [1, 2]


def test_cold_generation(toy_family):
    trace = w.constraint_generation_cold(toy_family[3])
    assert trace.iterations == 3
    assert [step.constraint_id for step in trace.additions] == [2, 1]
    assert all(step.from_ray for step in trace.additions)


def test_pipeline(toy_family):
    family = list(toy_family)
    cache = w.compute_artifacts(family, True)
    result = w.run_pipeline(family, w.Method.SLearner, [1, 2], cache=cache)
    assert len(result.runs) == 8
    assert all(r.match for r in result.runs)
    assert all(r.iterations == 1 for r in result.runs)
    assert all(row.p1 == pytest.approx(100.0) for row in result.aggregates)


def test_errors_are_typed(toy_family):
    train = list(toy_family[:3])
    sets = [w.identify_invariant_set(a).invariant for a in train]
    data = w.build_labels(train, sets, w.LabelSource.Invariant)
    with pytest.raises(w.Error):
        w.KnnModel(data, 0)
    with pytest.raises(w.Error):
        w.KnnModel(data, 17)


def test_roundtrips(tmp_path, toy_family):
    family = list(toy_family)
    path = tmp_path / "toy.jsonl"
    w.save_dataset(str(path), family)
    back = w.load_dataset(str(path))
    assert [a.name for a in back] == [a.name for a in family]
    assert w.instance_to_json(back[0]) == w.instance_to_json(family[0])

    text = w.instance_to_json(family[0])
    quine = w.instance_from_json(text)
    assert w.instance_to_json(quine) == text


def test_quantiles():
    q = w.quantiles([4.0, 1.0, 3.0, 2.0])
    assert q.q1 == pytest.approx(1.75)
    assert q.median == pytest.approx(2.5)
    assert q.q3 == pytest.approx(3.25)
