import json

import pytest

from reslat.io import load_fixture
from reslat.theorems import (
    FILTER_PROVED,
    LATTICE_PROVED,
    REGISTRY,
    failures,
    implication_diagram,
    replay,
    run_corpus_suite,
    run_theorem_suite,
)

FIXTURE_NAMES = ("expob1", "expob2", "exp", "expp", "exim3")


def test_registry():
    assert len(REGISTRY) == 67
    assert all(c.scope in ("lattice", "filter", "pair") for c in REGISTRY.values())
    errata = [c.id for c in REGISTRY.values() if c.erratum]
    assert errata == ["prime3_implies_prime1_mtl"]


@pytest.mark.parametrize("name", FIXTURE_NAMES)
def test_fixture_suite(name):
    results = run_theorem_suite(load_fixture(name), label=name)
    assert failures(results) == []
    assert all(r.evaluated > 0 for r in results)


def test_erratum_reproduces_and_replays():
    L = load_fixture("expp")
    results = {r.id: r for r in run_theorem_suite(L, 3, "expp")}
    r = results["prime3_implies_prime1_mtl"]
    assert not r.passed and r.erratum
    w = r.witness
    assert w["lattice"] == "expp" and w["digest"] == L.digest
    assert w["filter"] == ["1"]
    assert replay(w, L)
    assert failures(results.values()) == []
    assert failures(results.values(), include_errata=True) == [r]


def test_replay_of_passing_instance_is_false():
    L = load_fixture("expp")
    w = {"check": "prop_ch1_equiv", "filter": ["1", "a"], "n": 2}
    assert not replay(w, L)


def test_to_dict_json_safe():
    results = run_theorem_suite(load_fixture("exim3"), 2, "exim3")
    json.dumps([r.to_dict() for r in results], sort_keys=True)


def test_corpus_suite_aggregates(small_corpus):
    part = small_corpus[:12]
    results = run_corpus_suite(part)
    assert len(results) == len(REGISTRY)
    assert failures(results) == []
    one = run_theorem_suite(part[0][1], label=part[0][0])
    assert sum(r.evaluated for r in results) > sum(r.evaluated for r in one)


def test_diagram_filter_level():
    corpus = [(n, load_fixture(n)) for n in FIXTURE_NAMES]
    D = implication_diagram(corpus, 1)
    for src, dst in FILTER_PROVED:
        assert D.status(src, dst) == "proved-and-confirmed"
    e = D.edge("implicative", "positive_implicative")
    assert e["status"] == "refuted-by-counterexample"
    assert {"lattice": "expp", "filter": ["a", "1"]} in e["counterexamples"]
    e = D.edge("normal", "positive_implicative")
    assert {"lattice": "exim3", "filter": ["1"]} in e["counterexamples"]


def test_diagram_lattice_level():
    corpus = [(n, load_fixture(n)) for n in FIXTURE_NAMES]
    D = implication_diagram(corpus, 2, "lattice")
    for src, dst in LATTICE_PROVED:
        assert D.status(src, dst) != "refuted-by-counterexample"
    assert D.edge("positive_implicative_rl", "locally_finite")["scope"] == "totally ordered"


def test_dot_is_deterministic():
    corpus = [(n, load_fixture(n)) for n in FIXTURE_NAMES]
    a = implication_diagram(corpus, 1).to_dot()
    b = implication_diagram(list(corpus), 1).to_dot()
    assert a == b
    assert a.startswith("digraph nfold {\n") and a.endswith("}\n")
    assert a.count("->") == 8 * 7


def test_diagram_rejects_bad_input():
    with pytest.raises(ValueError):
        implication_diagram([], 1)
    with pytest.raises(ValueError):
        implication_diagram([load_fixture("exim3")], 1, "ring")
