import json
from itertools import permutations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from reslat.core import from_tables, validate
from reslat.enumeration import (
    are_isomorphic,
    canonical_form,
    canonicalize,
    enumerate_bounded_lattices,
    enumerate_residuated,
    isomorphic_by_search,
    naive_bounded_lattices,
    naive_residuated,
    read_corpus,
    write_corpus,
)
from reslat.errors import SizeOutOfRange
from reslat.io import load_fixture

GOEDEL3 = from_tables(["0", "a", "1"], [[0, 0, 0], [0, 1, 1], [0, 1, 2]], [[2, 2, 2], [0, 2, 2], [0, 1, 2]])
LUK3 = from_tables(["0", "a", "1"], [[0, 0, 0], [0, 0, 1], [0, 1, 2]], [[2, 2, 2], [1, 2, 2], [0, 1, 2]])


def test_bounded_lattice_counts():
    # 1, 1, 2, 5, 15, 53 unlabeled lattices on 2..7 points
    assert [len(enumerate_bounded_lattices(k)) for k in range(2, 8)] == [1, 1, 2, 5, 15, 53]


@pytest.mark.parametrize("k", [2, 3, 4, 5])
def test_bounded_lattices_match_naive(k):
    assert enumerate_bounded_lattices(k) == naive_bounded_lattices(k)


def test_size_limits():
    with pytest.raises(SizeOutOfRange):
        enumerate_bounded_lattices(8)
    with pytest.raises(SizeOutOfRange):
        enumerate_residuated(7)
    with pytest.raises(SizeOutOfRange):
        enumerate_residuated(1)


@pytest.mark.parametrize("k", [2, 3, 4])
def test_residuated_matches_naive_oracle(k):
    fast, slow = enumerate_residuated(k), naive_residuated(k)
    assert [canonical_form(L) for L in fast] == [canonical_form(L) for L in slow]
    assert [L.digest for L in fast] == [L.digest for L in slow]


def test_residuated_counts():
    # frozen from the run above that agrees with the naive oracle at k <= 4
    assert [len(enumerate_residuated(k)) for k in range(2, 7)] == [1, 2, 7, 26, 129]


def test_three_chains_present():
    forms = {canonical_form(L) for L in enumerate_residuated(3)}
    assert canonical_form(GOEDEL3) in forms
    assert canonical_form(LUK3) in forms
    assert not are_isomorphic(GOEDEL3, LUK3)


@pytest.mark.parametrize("k", [2, 3, 4, 5])
def test_corpus_sorted_and_distinct(k):
    corpus = enumerate_residuated(k)
    forms = [canonical_form(L) for L in corpus]
    assert forms == sorted(forms)
    assert len(set(forms)) == len(forms)
    for L in corpus:
        assert validate(L.to_raw()).digest == L.digest


def test_isomorphism_agrees_with_search():
    corpus = [L for k in (3, 4) for L in enumerate_residuated(k)]
    for L1 in corpus:
        for L2 in corpus:
            if L1.size == L2.size:
                assert are_isomorphic(L1, L2) == isomorphic_by_search(L1, L2)


def test_swapping_names_is_isomorphic():
    L = load_fixture("exp")
    a, b = L.index("a"), L.index("b")
    order = list(L.elements)
    order[a], order[b] = b, a
    # a <-> b happens to be an automorphism of this lattice
    assert are_isomorphic(L, L.relabel(order, L.names))
    M = load_fixture("expob2")
    order = list(M.elements)
    order[1], order[4] = order[4], order[1]
    N = M.relabel(order, M.names)
    assert N.digest != M.digest
    assert are_isomorphic(M, N)


def test_first_examples_not_isomorphic():
    assert not are_isomorphic(load_fixture("expob1"), load_fixture("expob2"))


def test_canonicalize_idempotent():
    for L in enumerate_residuated(5):
        C = canonicalize(L)
        assert canonicalize(C).digest == C.digest
        assert canonical_form(C) == canonical_form(L)


def test_parallel_matches_serial():
    a, b = enumerate_residuated(5, jobs=1), enumerate_residuated(5, jobs=3)
    assert [L.digest for L in a] == [L.digest for L in b]


def test_write_and_read_corpus(tmp_path):
    corpus = enumerate_residuated(4)
    write_corpus(corpus, tmp_path, lambda L: {"size": L.size})
    index = json.loads((tmp_path / "index.json").read_text())
    assert index["count"] == len(corpus)
    assert index["provenance"]["size"] == 4
    assert [m["canonical_digest"] for m in index["members"]] == [canonical_form(L).digest for L in corpus]
    back = read_corpus(tmp_path)
    assert [L.digest for L in back] == [L.digest for L in corpus]


@settings(max_examples=100, deadline=None)
@given(st.sampled_from([L for k in (4, 5, 6) for L in enumerate_residuated(k)][:120]), st.data())
def test_canonical_form_invariant_under_relabeling(L, data):
    middle = data.draw(st.permutations([x for x in L.elements if x not in (L.bottom, L.top)]))
    M = L.relabel([L.bottom] + list(middle) + [L.top])
    assert canonical_form(M) == canonical_form(L)


def test_canonical_form_small_exhaustive():
    for L in enumerate_residuated(4):
        mids = [x for x in L.elements if x not in (L.bottom, L.top)]
        for p in permutations(mids):
            assert canonical_form(L.relabel([L.bottom, *p, L.top])) == canonical_form(L)
