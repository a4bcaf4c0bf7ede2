"""Filters of a finite residuated lattice and the constructions built on them."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .core import RawAlgebra, ResiduatedLattice, classify_lattice, validate
from .errors import (
    AxiomError,
    CharacterizationMismatch,
    NotAFilter,
    NotProper,
    WellDefinednessFailure,
)


@dataclass(frozen=True)
class FilterSet:
    """A subset of a lattice's carrier, by index."""

    lattice_id: str
    members: frozenset[int]
    is_filter: bool | None = None

    def __contains__(self, x):
        return x in self.members

    def __iter__(self):
        return iter(sorted(self.members))

    def __len__(self):
        return len(self.members)

    @property
    def sort_key(self):
        return (len(self.members), tuple(sorted(self.members)))

    def names(self, L: ResiduatedLattice) -> list[str]:
        return [L.names[x] for x in sorted(self.members)]


def members_of(S) -> frozenset[int]:
    if isinstance(S, FilterSet):
        return S.members
    return frozenset(S)


def filter_set(L: ResiduatedLattice, S, flag=None) -> FilterSet:
    return FilterSet(L.digest, members_of(S), flag)


def by_names(L: ResiduatedLattice, names) -> frozenset[int]:
    """Translate element names to indices; unknown names raise KeyError."""
    return frozenset(L.index(n) for n in names)


def is_upward_closed(L, S) -> bool:
    S = members_of(S)
    return all(y in S for x in S for y in L.elements if L.leq[x][y])


def is_filter(L: ResiduatedLattice, S) -> bool:
    """Nonempty, closed under the monoid product, upward closed."""
    S = members_of(S)
    if not S:
        return False
    if any(L.otimes[x][y] not in S for x in S for y in S):
        return False
    return is_upward_closed(L, S)


def is_deductive_system(L: ResiduatedLattice, S) -> bool:
    """Contains top and closed under modus ponens."""
    S = members_of(S)
    if L.top not in S:
        return False
    return all(y in S for x in S for y in L.elements if L.arrow[x][y] in S)


def is_proper(L, S) -> bool:
    return len(members_of(S)) < L.size


def require_filter(L, S, proper=False) -> frozenset[int]:
    S = members_of(S)
    if not is_filter(L, S):
        raise NotAFilter(f"{L.name_set(S)} is not a filter")
    if proper and not is_proper(L, S):
        raise NotProper("operation requires a proper filter")
    return S


def generated_filter(L: ResiduatedLattice, S) -> FilterSet:
    """Least filter containing S: upward closure of the product closure."""
    closed = set(members_of(S)) | {L.top}
    frontier = list(closed)
    while frontier:
        x = frontier.pop()
        for y in list(closed):
            z = L.otimes[x][y]
            if z not in closed:
                closed.add(z)
                frontier.append(z)
    up = frozenset(y for x in closed for y in L.elements if L.leq[x][y])
    return filter_set(L, up, True)


def all_filters(L: ResiduatedLattice) -> list[FilterSet]:
    """Every filter of L, ordered by size and then by sorted membership."""
    k = L.size
    out = []
    for mask in range(1 << k):
        if not mask >> L.top & 1:
            continue
        S = frozenset(x for x in range(k) if mask >> x & 1)
        if is_filter(L, S):
            out.append(filter_set(L, S, True))
    out.sort(key=lambda f: f.sort_key)
    return out


def proper_filters(L: ResiduatedLattice) -> list[FilterSet]:
    return [F for F in all_filters(L) if len(F) < L.size]


def maximal_filters(L: ResiduatedLattice, filters=None) -> list[FilterSet]:
    props = [F for F in (filters if filters is not None else all_filters(L)) if len(F) < L.size]
    return [F for F in props if not any(F.members < G.members for G in props)]


def radical(L: ResiduatedLattice, F, filters=None) -> FilterSet:
    """Intersection of the maximal filters containing F."""
    S = require_filter(L, F, proper=True)
    out = frozenset(L.elements)
    for M in maximal_filters(L, filters):
        if S <= M.members:
            out &= M.members
    return filter_set(L, out, True)


def is_semi_maximal(L: ResiduatedLattice, F, filters=None) -> bool:
    return radical(L, F, filters).members == members_of(F)


@dataclass(frozen=True)
class MaximalityEvidence:
    is_maximal: bool
    witnesses: dict[int, tuple[int, int]]
    routes: dict[str, bool]
    exponent_bound: int


def is_maximal(L: ResiduatedLattice, F, filters=None) -> MaximalityEvidence:
    """Decide maximality by inclusion and by the two element-wise criteria.

    Witnesses map each outside element x to the least (n, f) with
    f * x^n = bottom, n searched first, both bounded by the carrier.
    """
    S = require_filter(L, F, proper=True)
    bound = L.size
    exps = range(1, bound + 1)
    props = [G for G in (filters if filters is not None else all_filters(L)) if len(G) < L.size]
    by_inclusion = not any(S < G.members for G in props)
    by_negation = all(
        (x not in S) == any(L.neg(L.power(x, n)) in S for n in exps) for x in L.elements
    )
    witnesses = {}
    for x in L.elements:
        if x in S:
            continue
        for n in exps:
            f = next((f for f in sorted(S) if L.otimes[f][L.power(x, n)] == L.bottom), None)
            if f is not None:
                witnesses[x] = (n, f)
                break
    by_annihilator = len(witnesses) == L.size - len(S)
    routes = {"inclusion": by_inclusion, "negated_power": by_negation, "annihilator": by_annihilator}
    if len(set(routes.values())) > 1:
        raise CharacterizationMismatch(f"maximality routes disagree on {L.name_set(S)}", routes)
    return MaximalityEvidence(by_inclusion, witnesses if by_inclusion else {}, routes, bound)


@dataclass(frozen=True)
class PrimeKinds:
    prime1: bool
    prime2: bool
    prime3: bool
    boolean: bool
    boolean2: bool


def prime_kinds(L: ResiduatedLattice, F) -> PrimeKinds:
    S = require_filter(L, F, proper=True)
    E = L.elements
    A, J = L.arrow, L.join
    pairs = list(product(E, E))
    return PrimeKinds(
        prime1=all(A[x][y] in S or A[y][x] in S for x, y in pairs),
        prime2=all(x in S or y in S for x, y in pairs if J[x][y] in S),
        prime3=all(J[A[x][y]][A[y][x]] in S for x, y in pairs),
        boolean=all(J[x][L.neg(x)] in S for x in E),
        boolean2=all(x in S or L.neg(x) in S for x in E),
    )


# ---------------------------------------------------------------------------
# congruences and quotients

def congruent(L: ResiduatedLattice, S, x: int, y: int) -> bool:
    S = members_of(S)
    return L.arrow[x][y] in S and L.arrow[y][x] in S


@dataclass(frozen=True)
class QuotientResult:
    partition: tuple[frozenset[int], ...]
    class_of: tuple[int, ...]
    representatives: tuple[int, ...]
    quotient: ResiduatedLattice | None

    @property
    def trivial(self) -> bool:
        """True when everything collapses into one class (F is the carrier)."""
        return len(self.partition) == 1


def quotient(L: ResiduatedLattice, F) -> QuotientResult:
    """Quotient L/F with the least index of each class as its representative."""
    S = require_filter(L, F)
    E = L.elements
    class_of = [-1] * L.size
    reps = []
    for x in E:
        if class_of[x] >= 0:
            continue
        cid = len(reps)
        reps.append(x)
        for y in E:
            if congruent(L, S, x, y):
                if class_of[y] >= 0:
                    raise WellDefinednessFailure(f"relation is not transitive at {L.names[y]}")
                class_of[y] = cid
    partition = tuple(frozenset(y for y in E if class_of[y] == c) for c in range(len(reps)))
    for cls in partition:
        for x, y in product(cls, cls):
            if not congruent(L, S, x, y):
                raise WellDefinednessFailure("congruence classes are not cliques")

    ops = {"meet": L.meet, "join": L.join, "otimes": L.otimes, "arrow": L.arrow}
    for label, table in ops.items():
        for x, x2, y, y2 in product(E, E, E, E):
            if class_of[x] == class_of[x2] and class_of[y] == class_of[y2]:
                if class_of[table[x][y]] != class_of[table[x2][y2]]:
                    raise WellDefinednessFailure(
                        f"{label} does not respect the congruence", (x, x2, y, y2)
                    )

    if L.top in S and partition[class_of[L.top]] != S:
        raise WellDefinednessFailure("class of top differs from the filter")
    if len(reps) == 1:
        return QuotientResult(partition, tuple(class_of), tuple(reps), None)

    def induced(table):
        return [[class_of[table[a][b]] for b in reps] for a in reps]

    names = tuple(L.names[r] for r in reps)
    try:
        Q = validate(RawAlgebra(names, induced(L.otimes), induced(L.arrow)))
    except AxiomError as exc:
        raise WellDefinednessFailure(f"quotient is not a residuated lattice: {exc}") from exc
    if [list(r) for r in Q.meet] != induced(L.meet) or [list(r) for r in Q.join] != induced(L.join):
        raise WellDefinednessFailure("induced lattice operations disagree with the quotient order")
    return QuotientResult(partition, tuple(class_of), tuple(reps), Q)


def is_locally_finite_quotient_consistent(L: ResiduatedLattice, F, filters=None) -> bool:
    """Maximality of F agrees with local finiteness of L/F."""
    maximal = is_maximal(L, F, filters).is_maximal
    Q = quotient(L, F).quotient
    return maximal == classify_lattice(Q, 1).is_locally_finite
