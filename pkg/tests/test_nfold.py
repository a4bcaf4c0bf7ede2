import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from reslat.enumeration import enumerate_residuated
from reslat.errors import NotAFilter, NotProper
from reslat.filters import all_filters
from reslat.io import load_fixture
from reslat.nfold import (
    FILTER_FLAGS,
    IMPLICATIVE_ROUTES,
    NORMAL_ROUTES,
    OBSTINATE_ROUTES,
    POSITIVE_IMPLICATIVE_ROUTES,
    classify_filter,
    is_n_fold_fantastic,
    is_n_fold_implicative,
    is_n_fold_normal,
    is_n_fold_obstinate,
    is_n_fold_positive_implicative,
    obstinate_witnesses,
    section,
    section_is_filter,
)

from conftest import named

CORPUS = [L for k in range(2, 6) for L in enumerate_residuated(k)]


def test_expp_implicative_filters():
    L = load_fixture("expp")
    for F in (("1", "a"), ("1", "b"), ("1", "a", "b", "c")):
        for n in range(1, 8):
            assert is_n_fold_implicative(L, named(L, *F), n)


def test_expp_positive_implicative():
    L = load_fixture("expp")
    for n in range(1, 8):
        assert is_n_fold_positive_implicative(L, named(L, "1", "a", "b", "c"), n)
        assert not is_n_fold_positive_implicative(L, named(L, "1", "a"), n)
        assert not is_n_fold_positive_implicative(L, named(L, "1", "b"), n)


def test_expp_positive_implicative_counterexample_terms():
    L = load_fixture("expp")
    a, b = L.index("a"), L.index("b")
    for n in range(1, 8):
        assert L.imp(L.top, L.imp(L.neg(L.power(b, n)), b)) in named(L, "1", "a")
        assert L.imp(L.top, L.imp(L.neg(L.power(a, n)), a)) in named(L, "1", "b")


def test_exim3_claims():
    L = load_fixture("exim3")
    one = named(L, "1")
    assert [is_n_fold_implicative(L, one, n) for n in (1, 2, 3)] == [False, False, True]
    assert [is_n_fold_positive_implicative(L, one, n) for n in (1, 2, 3)] == [False, False, True]
    assert is_n_fold_normal(L, one, 1)
    b, a = L.index("b"), L.index("a")
    assert L.imp(L.power(b, 2), a) == L.top
    assert L.imp(b, a) == b


def test_normal_on_expp():
    L = load_fixture("expp")
    for n in range(1, 8):
        assert is_n_fold_normal(L, named(L, "1", "a", "b", "c"), n)
        assert not is_n_fold_normal(L, named(L, "1", "b"), n)


def test_obstinate_examples():
    L = load_fixture("expob1")
    M = load_fixture("expob2")
    a, b = M.index("a"), M.index("b")
    for n in range(1, 8):
        assert is_n_fold_obstinate(L, named(L, "1", "b", "c", "d"), n)
        assert not is_n_fold_obstinate(M, named(M, "1", "c", "d"), n)
        assert M.imp(M.power(a, n), b) == b


def test_exp_obstinate_depends_on_n():
    # outside {1,d} every square is 0, so the filter becomes obstinate from n=2 on
    L = load_fixture("exp")
    F = named(L, "1", "d")
    assert not is_n_fold_obstinate(L, F, 1)
    for x in named(L, "0", "a", "b", "c"):
        assert L.power(x, 2) == L.bottom
    assert all(is_n_fold_obstinate(L, F, n) for n in range(2, 7))


def test_expob1_fantastic():
    L = load_fixture("expob1")
    c, a = L.index("c"), L.index("a")
    for n in range(1, 7):
        assert not is_n_fold_fantastic(L, named(L, "1"), n)
        assert L.imp(a, c) == L.top
        assert L.imp(L.imp(L.imp(L.power(c, n), a), a), c) == c


def test_obstinate_witness_bound():
    L = load_fixture("expob1")
    F = named(L, "1", "b", "c", "d")
    for n in range(1, 7):
        w = obstinate_witnesses(L, F, n)
        assert set(w) == set(L.elements) - F
        assert all(1 <= m <= L.size for m in w.values())


def test_obstinate_requires_proper():
    L = load_fixture("expob1")
    with pytest.raises(NotProper):
        is_n_fold_obstinate(L, frozenset(L.elements), 1)


def test_predicates_require_filter():
    L = load_fixture("expob1")
    with pytest.raises(NotAFilter):
        is_n_fold_implicative(L, named(L, "1", "a"), 1)
    with pytest.raises(ValueError):
        is_n_fold_implicative(L, named(L, "1"), 0)


def test_classify_filter_carrier():
    L = load_fixture("exim3")
    fc = classify_filter(L, frozenset(L.elements))
    assert not fc.proper and fc.maximal is None and fc.primes is None
    assert all(not fc.per_n[n]["obstinate"] for n in fc.per_n)


def test_classify_filter_matrix_shape():
    L = load_fixture("expob1")
    fc = classify_filter(L, named(L, "1", "c", "d"), 3)
    assert sorted(fc.per_n) == [1, 2, 3]
    assert all(tuple(fc.per_n[n]) == FILTER_FLAGS for n in fc.per_n)
    assert fc.exponent_bound == L.size
    assert fc.semi_maximal and not fc.maximal


def test_section_is_filter_for_implicative():
    for L in CORPUS:
        for F in all_filters(L):
            for n in (1, 2):
                if is_n_fold_implicative(L, F, n):
                    assert all(section_is_filter(L, F, a, n)[1] for a in L.elements)
    L = load_fixture("exim3")
    assert section(L, named(L, "1"), L.top, 1) == named(L, "1")


def test_routes_agree_on_every_filter():
    for L in CORPUS:
        for F in all_filters(L):
            proper = len(F) < L.size
            for n in range(1, L.size + 1):
                for routes in (IMPLICATIVE_ROUTES, POSITIVE_IMPLICATIVE_ROUTES, NORMAL_ROUTES):
                    assert len({fn(L, F, n) for fn in routes.values()}) == 1
                if proper:
                    assert len({fn(L, F, n) for fn in OBSTINATE_ROUTES.values()}) == 1


@settings(max_examples=150, deadline=None)
@given(st.sampled_from(CORPUS), st.data())
def test_flags_monotone_in_n(L, data):
    filters = all_filters(L)
    F = data.draw(st.sampled_from(filters))
    fc = classify_filter(L, F, L.size + 1)
    for flag in ("implicative", "positive_implicative", "obstinate"):
        seq = [fc.per_n[n][flag] for n in range(1, L.size + 2)]
        assert seq == sorted(seq)
    for n in fc.per_n:
        row = fc.per_n[n]
        if row["positive_implicative"]:
            assert row["implicative"] and row["normal"] and row["fantastic"]
        assert row["positive_implicative"] == row["boolean"]
