"""n-fold filter classes.

Each class is decided by every equivalent characterization available and
the verdicts must coincide; disagreement raises CharacterizationMismatch.
The single-route predicates (``implicative_definition`` and friends) take
arbitrary subsets, so they can also be evaluated on non-filters.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from .core import ResiduatedLattice
from .errors import CharacterizationMismatch
from .filters import (
    FilterSet,
    PrimeKinds,
    filter_set,
    is_maximal,
    is_semi_maximal,
    members_of,
    prime_kinds,
    require_filter,
)

FILTER_FLAGS = ("implicative", "positive_implicative", "boolean", "normal", "fantastic", "obstinate")


def _mask(L, S):
    S = members_of(S)
    return [x in S for x in L.elements]


# --- implicative -----------------------------------------------------------

def implicative_definition(L: ResiduatedLattice, S, n: int) -> bool:
    inS = _mask(L, S)
    A, E = L.arrow, L.elements
    if not inS[L.top]:
        return False
    for x in E:
        p = L.power(x, n)
        for y, z in product(E, E):
            if inS[A[p][A[y][z]]] and inS[A[p][y]] and not inS[A[p][z]]:
                return False
    return True


def implicative_square(L, S, n) -> bool:
    inS = _mask(L, S)
    return all(inS[L.arrow[L.power(x, n)][L.power(x, 2 * n)]] for x in L.elements)


def implicative_shift(L, S, n) -> bool:
    inS = _mask(L, S)
    A, E = L.arrow, L.elements
    return all(
        inS[A[L.power(x, n)][y]] for x in E for y in E if inS[A[L.power(x, n + 1)][y]]
    )


def implicative_distribution(L, S, n) -> bool:
    inS = _mask(L, S)
    A, E = L.arrow, L.elements
    for x in E:
        p = L.power(x, n)
        for y, z in product(E, E):
            if inS[A[p][A[y][z]]] and not inS[A[A[p][y]][A[p][z]]]:
                return False
    return True


IMPLICATIVE_ROUTES = {
    "definition": implicative_definition,
    "square": implicative_square,
    "shift": implicative_shift,
    "distribution": implicative_distribution,
}


# --- positive implicative / boolean ----------------------------------------

def positive_implicative_definition(L: ResiduatedLattice, S, n: int) -> bool:
    """Literal definition, quantifying over the vacuous-looking z as well."""
    inS = _mask(L, S)
    A, E = L.arrow, L.elements
    if not inS[L.top]:
        return False
    for y in E:
        if inS[y]:
            continue
        p = L.power(y, n)
        for z in E:
            t = A[A[p][z]][y]
            if any(inS[x] and inS[A[x][t]] for x in E):
                return False
    return True


def positive_implicative_definition_z0(L, S, n) -> bool:
    inS = _mask(L, S)
    A, E = L.arrow, L.elements
    if not inS[L.top]:
        return False
    for y in E:
        if inS[y]:
            continue
        t = A[L.neg(L.power(y, n))][y]
        if any(inS[x] and inS[A[x][t]] for x in E):
            return False
    return True


def positive_implicative_peirce(L, S, n) -> bool:
    inS = _mask(L, S)
    A, E = L.arrow, L.elements
    return all(inS[x] for x in E for y in E if inS[A[A[L.power(x, n)][y]][x]])


def positive_implicative_negation(L, S, n) -> bool:
    inS = _mask(L, S)
    return all(inS[x] for x in L.elements if inS[L.arrow[L.neg(L.power(x, n))][x]])


def boolean_condition(L, S, n) -> bool:
    inS = _mask(L, S)
    return all(inS[L.join[x][L.neg(L.power(x, n))]] for x in L.elements)


POSITIVE_IMPLICATIVE_ROUTES = {
    "definition": positive_implicative_definition,
    "definition_z0": positive_implicative_definition_z0,
    "peirce": positive_implicative_peirce,
    "negation": positive_implicative_negation,
    "boolean": boolean_condition,
}


# --- normal ----------------------------------------------------------------

def normal_with_premise(L, S, n) -> bool:
    inS = _mask(L, S)
    A, E = L.arrow, L.elements
    for x, y in product(E, E):
        if inS[A[A[x][y]][y]]:
            continue
        t = A[A[L.power(y, n)][x]][x]
        if any(inS[z] and inS[A[z][t]] for z in E):
            return False
    return True


def normal_condition(L, S, n) -> bool:
    inS = _mask(L, S)
    A, E = L.arrow, L.elements
    return all(
        inS[A[A[x][y]][y]] for x in E for y in E if inS[A[A[L.power(y, n)][x]][x]]
    )


NORMAL_ROUTES = {"premise": normal_with_premise, "direct": normal_condition}


# --- fantastic -------------------------------------------------------------

def fantastic_definition(L, S, n) -> bool:
    inS = _mask(L, S)
    A, E = L.arrow, L.elements
    if not inS[L.top]:
        return False
    return all(
        inS[A[A[A[L.power(x, n)][y]][y]][x]] for x in E for y in E if inS[A[y][x]]
    )


FANTASTIC_ROUTES = {"definition": fantastic_definition}


# --- obstinate -------------------------------------------------------------

def obstinate_definition(L, S, n) -> bool:
    inS = _mask(L, S)
    A, E = L.arrow, L.elements
    if inS[L.bottom]:
        return False
    out = [x for x in E if not inS[x]]
    return all(inS[A[L.power(x, n)][y]] and inS[A[L.power(y, n)][x]] for x in out for y in out)


def obstinate_witnesses(L, S, n) -> dict[int, int] | None:
    """Least m <= size with neg(x^n)^m in S, for each x outside S; None if some x has none."""
    inS = _mask(L, S)
    out = {}
    for x in L.elements:
        if inS[x]:
            continue
        u = L.neg(L.power(x, n))
        m = next((m for m in range(1, L.size + 1) if inS[L.power(u, m)]), None)
        if m is None:
            return None
        out[x] = m
    return out


def obstinate_witness_route(L, S, n) -> bool:
    return obstinate_witnesses(L, S, n) is not None


OBSTINATE_ROUTES = {"definition": obstinate_definition, "witness": obstinate_witness_route}


# ---------------------------------------------------------------------------

def _decide(label, routes, L, S, n):
    outcomes = {name: fn(L, S, n) for name, fn in routes.items()}
    if len(set(outcomes.values())) > 1:
        raise CharacterizationMismatch(
            f"{label} characterizations disagree on {L.name_set(members_of(S))} at n={n}", outcomes
        )
    return outcomes


def _check_n(n):
    if n < 1:
        raise ValueError("n must be >= 1")


def is_n_fold_implicative(L, F, n) -> bool:
    _check_n(n)
    S = require_filter(L, F)
    return next(iter(_decide("implicative", IMPLICATIVE_ROUTES, L, S, n).values()))


def is_n_fold_positive_implicative(L, F, n) -> bool:
    _check_n(n)
    S = require_filter(L, F)
    return next(iter(_decide("positive implicative", POSITIVE_IMPLICATIVE_ROUTES, L, S, n).values()))


def is_n_fold_boolean(L, F, n) -> bool:
    _check_n(n)
    return boolean_condition(L, require_filter(L, F), n)


def is_n_fold_normal(L, F, n) -> bool:
    _check_n(n)
    S = require_filter(L, F)
    return next(iter(_decide("normal", NORMAL_ROUTES, L, S, n).values()))


def is_n_fold_fantastic(L, F, n) -> bool:
    _check_n(n)
    return fantastic_definition(L, require_filter(L, F), n)


def is_n_fold_obstinate(L, F, n) -> bool:
    _check_n(n)
    S = require_filter(L, F, proper=True)
    return next(iter(_decide("obstinate", OBSTINATE_ROUTES, L, S, n).values()))


def section(L: ResiduatedLattice, F, a: int, n: int) -> frozenset[int]:
    S = members_of(F)
    p = L.power(a, n)
    return frozenset(b for b in L.elements if L.arrow[p][b] in S)


def section_is_filter(L: ResiduatedLattice, F, a: int, n: int) -> tuple[frozenset[int], bool]:
    from .filters import is_filter

    La = section(L, F, a, n)
    return La, is_filter(L, La)


@dataclass(frozen=True)
class FilterClassification:
    filter: FilterSet
    per_n: dict[int, dict[str, bool]]
    methods: dict[int, dict[str, dict[str, bool]]]
    obstinate_witnesses: dict[int, dict[int, int]]
    exponent_bound: int
    proper: bool
    maximal: bool | None = None
    semi_maximal: bool | None = None
    primes: PrimeKinds | None = None
    maximal_witnesses: dict[int, tuple[int, int]] = field(default_factory=dict)

    def flag(self, name: str, n: int) -> bool:
        return self.per_n[n][name]


def classify_filter(L: ResiduatedLattice, F, n_max: int | None = None, filters=None) -> FilterClassification:
    """Full per-n matrix for one filter, with every route's outcome kept."""
    S = require_filter(L, F)
    if n_max is None:
        n_max = L.size
    _check_n(n_max)
    proper = len(S) < L.size
    per_n, methods, witnesses = {}, {}, {}
    for n in range(1, n_max + 1):
        m = {
            "implicative": _decide("implicative", IMPLICATIVE_ROUTES, L, S, n),
            "positive_implicative": _decide("positive implicative", POSITIVE_IMPLICATIVE_ROUTES, L, S, n),
            "normal": _decide("normal", NORMAL_ROUTES, L, S, n),
            "fantastic": _decide("fantastic", FANTASTIC_ROUTES, L, S, n),
        }
        if proper:
            m["obstinate"] = _decide("obstinate", OBSTINATE_ROUTES, L, S, n)
        flags = {name: next(iter(out.values())) for name, out in m.items()}
        flags["boolean"] = boolean_condition(L, S, n)
        flags.setdefault("obstinate", False)
        per_n[n] = {name: flags[name] for name in FILTER_FLAGS}
        methods[n] = m
        if flags["obstinate"]:
            witnesses[n] = obstinate_witnesses(L, S, n)
    fs = filter_set(L, S, True)
    if not proper:
        return FilterClassification(fs, per_n, methods, witnesses, L.size, False)
    evidence = is_maximal(L, S, filters)
    return FilterClassification(
        fs, per_n, methods, witnesses, L.size, True,
        maximal=evidence.is_maximal,
        semi_maximal=is_semi_maximal(L, S, filters),
        primes=prime_kinds(L, S),
        maximal_witnesses=evidence.witnesses,
    )

