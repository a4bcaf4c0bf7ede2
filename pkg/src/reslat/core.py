"""Finite residuated lattices given by operation tables.

Elements are identified by position (0 .. k-1); names are for display only.
Only the ``otimes`` and ``arrow`` tables are taken as input: the order is
read off as ``x <= y  iff  x -> y == 1`` and meet/join come from the order.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from functools import cached_property
from itertools import product

from .errors import (
    CharacterizationMismatch,
    DimensionMismatch,
    DuplicateName,
    NoUnit,
    NotAssociative,
    NotBounded,
    NotCommutative,
    NotLattice,
    NotPartialOrder,
    OrderMismatch,
    ResiduationFails,
)

Table = tuple[tuple[int, ...], ...]


def _freeze(table) -> Table:
    return tuple(tuple(int(v) for v in row) for row in table)


@dataclass(frozen=True)
class RawAlgebra:
    """Unvalidated input: names plus the two operation tables.

    ``le`` is an optional explicit order, used only as a cross-check.
    """

    names: tuple[str, ...]
    otimes: Table
    arrow: Table
    le: tuple[tuple[bool, ...], ...] | None = None

    def __post_init__(self):
        object.__setattr__(self, "names", tuple(self.names))
        object.__setattr__(self, "otimes", _freeze(self.otimes))
        object.__setattr__(self, "arrow", _freeze(self.arrow))
        if self.le is not None:
            object.__setattr__(self, "le", tuple(tuple(bool(v) for v in row) for row in self.le))
        k = len(self.names)
        if k < 2:
            raise DimensionMismatch(f"need at least 2 elements, got {k}")
        seen = set()
        for name in self.names:
            if not name or any(ch.isspace() for ch in name) or "#" in name:
                raise ValueError(f"invalid element name {name!r}")
            if name in seen:
                raise DuplicateName(f"duplicate element name {name!r}")
            seen.add(name)
        tables = [("otimes", self.otimes), ("arrow", self.arrow)]
        if self.le is not None:
            tables.append(("le", self.le))
        for label, table in tables:
            if len(table) != k or any(len(row) != k for row in table):
                raise DimensionMismatch(f"{label} table must be {k}x{k}")
        for label, table in tables[:2]:
            for row in table:
                for v in row:
                    if not 0 <= v < k:
                        raise ValueError(f"{label} entry {v} out of range [0, {k})")

    @property
    def size(self) -> int:
        return len(self.names)


@dataclass(frozen=True)
class ResiduatedLattice:
    """A validated finite residuated lattice. Build one with :func:`validate`."""

    names: tuple[str, ...]
    leq: tuple[tuple[bool, ...], ...]
    meet: Table
    join: Table
    otimes: Table
    arrow: Table
    bottom: int
    top: int

    @property
    def size(self) -> int:
        return len(self.names)

    @property
    def elements(self) -> range:
        return range(len(self.names))

    def le(self, x: int, y: int) -> bool:
        return self.leq[x][y]

    def mul(self, x: int, y: int) -> int:
        return self.otimes[x][y]

    def imp(self, x: int, y: int) -> int:
        return self.arrow[x][y]

    def neg(self, x: int) -> int:
        return self.arrow[x][self.bottom]

    @cached_property
    def _powers(self) -> tuple[tuple[int, ...], ...]:
        # powers[x] = (1, x, x^2, ...) up to the first repeated value
        out = []
        for x in self.elements:
            seq = [self.top, x]
            while True:
                nxt = self.otimes[seq[-1]][x]
                if nxt == seq[-1]:
                    break
                seq.append(nxt)
            out.append(tuple(seq))
        return tuple(out)

    def power(self, x: int, n: int) -> int:
        """``x`` multiplied with itself ``n`` times; ``power(x, 0)`` is top."""
        if n < 0:
            raise ValueError("exponent must be non-negative")
        seq = self._powers[x]
        return seq[n] if n < len(seq) else seq[-1]

    @cached_property
    def stabilization(self) -> int:
        """Least ``n >= 1`` with ``x^(n+1) == x^n`` for every ``x``."""
        return max(1, max(len(seq) - 1 for seq in self._powers))

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError(f"unknown element name {name!r}") from None

    def name_set(self, members) -> str:
        return "{" + ",".join(self.names[x] for x in sorted(members)) + "}"

    @cached_property
    def digest(self) -> str:
        """Hash of the presentation (names and both tables)."""
        h = hashlib.sha256()
        h.update(" ".join(self.names).encode())
        for table in (self.otimes, self.arrow):
            h.update(bytes(v for row in table for v in row))
        return h.hexdigest()

    @cached_property
    def is_chain(self) -> bool:
        return all(self.leq[x][y] or self.leq[y][x] for x in self.elements for y in self.elements)

    def relabel(self, order, names=None) -> "ResiduatedLattice":
        """Isomorphic copy whose element ``i`` is the old element ``order[i]``."""
        order = list(order)
        pos = [0] * len(order)
        for new, old in enumerate(order):
            pos[old] = new
        if names is None:
            names = [self.names[old] for old in order]

        def move(table):
            return tuple(tuple(pos[table[a][b]] for b in order) for a in order)

        return ResiduatedLattice(
            names=tuple(names),
            leq=tuple(tuple(self.leq[a][b] for b in order) for a in order),
            meet=move(self.meet),
            join=move(self.join),
            otimes=move(self.otimes),
            arrow=move(self.arrow),
            bottom=pos[self.bottom],
            top=pos[self.top],
        )

    def to_raw(self) -> RawAlgebra:
        return RawAlgebra(self.names, self.otimes, self.arrow)


def _bound_of(leq, pairs, k, upper: bool):
    """Least upper (or greatest lower) bound of x, y under leq, or None."""
    out = [[0] * k for _ in range(k)]
    for x, y in pairs:
        if upper:
            cands = [z for z in range(k) if leq[x][z] and leq[y][z]]
            best = [z for z in cands if all(leq[z][w] for w in cands)]
        else:
            cands = [z for z in range(k) if leq[z][x] and leq[z][y]]
            best = [z for z in cands if all(leq[w][z] for w in cands)]
        if not best:
            return None, (x, y)
        out[x][y] = best[0]
    return _freeze(out), None


def validate(raw: RawAlgebra) -> ResiduatedLattice:
    """Check the residuated-lattice axioms on raw tables.

    Raises the matching :class:`~reslat.errors.AxiomError` subclass with a
    witness on the first violation found (scanning in index order).
    """
    k = raw.size
    M, A = raw.otimes, raw.arrow
    E = range(k)

    units = [e for e in E if all(M[e][x] == x and M[x][e] == x for x in E)]
    if not units:
        raise NoUnit("no element e with e*x = x*e = x for all x")
    unit = units[0]

    leq = tuple(tuple(A[x][y] == unit for y in E) for x in E)
    for x in E:
        if not leq[x][x]:
            raise NotPartialOrder(f"not reflexive at {raw.names[x]}", (x,))
    for x, y in product(E, E):
        if x != y and leq[x][y] and leq[y][x]:
            raise NotPartialOrder(
                f"not antisymmetric: {raw.names[x]} <= {raw.names[y]} <= {raw.names[x]}", (x, y)
            )
    for x, y, z in product(E, E, E):
        if leq[x][y] and leq[y][z] and not leq[x][z]:
            raise NotPartialOrder("not transitive", (x, y, z))

    tops = [t for t in E if all(leq[x][t] for x in E)]
    bottoms = [b for b in E if all(leq[b][x] for x in E)]
    if not tops or not bottoms:
        raise NotBounded("order has no global bottom or top")
    top, bottom = tops[0], bottoms[0]
    if top != unit:
        raise NotBounded(f"unit {raw.names[unit]} is not the top {raw.names[top]}", (unit, top))

    pairs = list(product(E, E))
    join, bad = _bound_of(leq, pairs, k, upper=True)
    if join is None:
        raise NotLattice(f"no join for {raw.names[bad[0]]}, {raw.names[bad[1]]}", bad)
    meet, bad = _bound_of(leq, pairs, k, upper=False)
    if meet is None:
        raise NotLattice(f"no meet for {raw.names[bad[0]]}, {raw.names[bad[1]]}", bad)

    for x, y in pairs:
        if M[x][y] != M[y][x]:
            raise NotCommutative(f"{raw.names[x]}*{raw.names[y]} != {raw.names[y]}*{raw.names[x]}", (x, y))
    for x, y, z in product(E, E, E):
        if M[M[x][y]][z] != M[x][M[y][z]]:
            raise NotAssociative("(x*y)*z != x*(y*z)", (x, y, z))
    for x, y, z in product(E, E, E):
        if leq[M[x][y]][z] != leq[x][A[y][z]]:
            n = raw.names
            raise ResiduationFails(
                f"{n[x]}*{n[y]} <= {n[z]} iff {n[x]} <= {n[y]}->{n[z]} fails", (x, y, z)
            )

    if raw.le is not None:
        for x, y in pairs:
            if raw.le[x][y] != leq[x][y]:
                raise OrderMismatch(
                    f"declared order disagrees with derived order at ({raw.names[x]}, {raw.names[y]})",
                    (x, y),
                )

    return ResiduatedLattice(raw.names, leq, meet, join, M, A, bottom, top)


def from_tables(names, otimes, arrow) -> ResiduatedLattice:
    """Shorthand for ``validate(RawAlgebra(names, otimes, arrow))``.

    Tables may use names or indices.
    """
    names = tuple(names)
    idx = {n: i for i, n in enumerate(names)}

    def conv(table):
        return [[idx[v] if isinstance(v, str) else v for v in row] for row in table]

    return validate(RawAlgebra(names, conv(otimes), conv(arrow)))


# ---------------------------------------------------------------------------
# the seventeen identities

@dataclass(frozen=True)
class PropertyResult:
    item: str
    holds: bool
    counterexample: tuple[int, ...] | None = None


@dataclass(frozen=True)
class PropertyReport:
    results: tuple[PropertyResult, ...]
    exponent_bound: int

    @property
    def all_hold(self) -> bool:
        return all(r.holds for r in self.results)

    def __getitem__(self, item: str) -> PropertyResult:
        for r in self.results:
            if r.item == item:
                return r
        raise KeyError(item)

    def failures(self):
        return [r for r in self.results if not r.holds]


def _first(cases):
    for case in cases:
        return case
    return None


def _identity_scans(L: ResiduatedLattice, bound: int):
    E = L.elements
    le, M, A, N, J = L.leq, L.otimes, L.arrow, L.meet, L.join
    one, zero = L.top, L.bottom
    neg = [A[x][zero] for x in E]
    P = L.power
    pairs = list(product(E, E))
    triples = list(product(E, E, E))
    expo = range(1, bound + 1)
    return {
        "P1": (c for c in pairs
               if le[c[0]][c[1]] != (A[c[0]][c[1]] == one) or not le[M[c[0]][c[1]]][N[c[0]][c[1]]]),
        "P2": (c for c in triples if A[c[0]][A[c[1]][c[2]]] != A[M[c[0]][c[1]]][c[2]]),
        "P3": (c for c in triples if A[c[0]][A[c[1]][c[2]]] != A[c[1]][A[c[0]][c[2]]]),
        "P4": ((x, y, z) for x, y, z in triples
               if le[x][y] and not (le[A[y][z]][A[x][z]] and le[A[z][x]][A[z][y]])),
        "P5": ((x, y) for x, y in pairs
               if not (le[x][A[y][M[x][y]]] and le[M[x][A[x][y]]][y])),
        "P6": ((x, y) for x, y in pairs
               if not (A[one][x] == x and A[x][x] == one and A[x][one] == one and le[x][A[y][x]]
                       and le[x][neg[neg[x]]] and neg[neg[neg[x]]] == neg[x])),
        "P7": ((x, y) for x, y in pairs
               if M[x][neg[x]] != zero or (M[x][y] == zero) != le[x][neg[y]]),
        "P8": ((x, y, z) for x, y, z in triples
               if le[x][y] and not (le[M[x][z]][M[y][z]] and le[A[z][x]][A[z][y]]
                                    and le[A[y][z]][A[x][z]] and le[neg[y]][neg[x]])),
        "P9": ((x, y) for x, y in pairs if neg[M[x][y]] != A[x][neg[y]]),
        "P10": ((x, y, n) for x, y in pairs if J[x][y] == one
                for n in expo
                if M[x][y] != N[x][y] or J[P(x, n)][P(y, n)] != one),
        "P11": ((x, y, z) for x, y, z in triples if M[x][J[y][z]] != J[M[x][y]][M[x][z]]),
        "P12": ((x, y, z) for x, y, z in triples
                if A[J[x][y]][z] != N[A[x][z]][A[y][z]] or not le[J[A[x][z]][A[y][z]]][A[N[x][y]][z]]),
        "P13": _chain_scans(
            ((x, y, z) for x, y, z in triples if not le[M[J[x][y]][J[x][z]]][J[x][M[y][z]]]),
            ((x, y, m, n) for x, y in pairs for m in expo for n in expo
             if not le[P(J[x][y], m * n)][J[P(x, n)][P(y, m)]]),
        ),
        "P14": ((x, y) for x, y in pairs
                if not le[J[x][y]][N[A[A[x][y]][y]][A[A[y][x]][x]]]),
        "P15": ((x, y, z) for x, y, z in triples if not le[A[x][y]][A[A[y][z]][A[x][z]]]),
        "P16": ((x, y, z) for x, y, z in triples if not le[A[y][x]][A[A[z][y]][A[z][x]]]),
        "P17": ((x, y) for x, y in pairs if A[A[A[x][y]][y]][y] != A[x][y]),
    }


def _chain_scans(*gens):
    for g in gens:
        yield from g


IDENTITY_ITEMS = tuple(f"P{i}" for i in range(1, 18))


def check_identities(L: ResiduatedLattice) -> PropertyReport:
    """Evaluate the seventeen standard identities exhaustively.

    Items quantifying over exponents (P10, P13) try every exponent up to the
    carrier size; their counterexamples carry the exponents after the
    elements. Works on any ``ResiduatedLattice`` instance, including ones
    assembled by hand without :func:`validate`.
    """
    bound = L.size
    scans = _identity_scans(L, bound)
    results = []
    for item in IDENTITY_ITEMS:
        cex = _first(scans[item])
        results.append(PropertyResult(item, cex is None, cex))
    return PropertyReport(tuple(results), bound)


# ---------------------------------------------------------------------------
# lattice classification

RL_FLAGS = ("implicative_rl", "positive_implicative_rl", "boolean_rl", "fantastic_rl", "obstinate_rl")


@dataclass(frozen=True)
class LatticeClassification:
    is_mtl: bool
    is_bl: bool
    is_mv: bool
    is_heyting: bool
    is_totally_ordered: bool
    is_locally_finite: bool
    is_divisible: bool
    is_involutive: bool
    per_n: dict[int, dict[str, bool]]
    stabilization_n: int
    exponent_bound: int
    witnesses: dict[str, tuple[int, ...]] = field(default_factory=dict)
    methods: dict[int, dict[str, dict[str, bool]]] = field(default_factory=dict)
    flag_witnesses: dict[int, dict[str, tuple[int, ...]]] = field(default_factory=dict)

    def flag(self, name: str, n: int) -> bool:
        return self.per_n[n][name]


def _pair_witness(L, pred):
    for x, y in product(L.elements, L.elements):
        if not pred(x, y):
            return (x, y)
    return None


def _scan(L, pred, arity):
    for t in product(L.elements, repeat=arity):
        if not pred(*t):
            return t
    return None


# Each *_witness function returns the first failing tuple in index order, or None.

def implicative_rl_witness(L, n):
    return _scan(L, lambda x: L.power(x, n + 1) == L.power(x, n), 1)


def positive_implicative_rl_witness(L, n):
    return _scan(L, lambda y: L.arrow[L.neg(L.power(y, n))][y] == y, 1)


def boolean_rl_witness(L, n):
    return _scan(L, lambda y: L.join[L.neg(L.power(y, n))][y] == L.top, 1)


def fantastic_rl_witness(L, n):
    """Pair (x, y) violating y->x = ((x^n->y)->y)->x."""
    A = L.arrow
    return _scan(L, lambda x, y: A[y][x] == A[A[A[L.power(x, n)][y]][y]][x], 2)


def fantastic_rl_inequality_witness(L, n):
    """Pair (x, y) violating (x^n->y)->y <= (y->x)->x."""
    A = L.arrow
    return _scan(L, lambda x, y: L.leq[A[A[L.power(x, n)][y]][y]][A[A[y][x]][x]], 2)


def obstinate_rl_witness(L, n):
    A, one = L.arrow, L.top

    def ok(x, y):
        if x == one or y == one:
            return True
        return A[L.power(x, n)][y] == one and A[L.power(y, n)][x] == one

    return _scan(L, ok, 2)


def rl_flags(L: ResiduatedLattice, n: int):
    """Lattice-level n-fold flags for one ``n``, per-route outcomes, and witnesses."""
    w = {
        "implicative_rl": implicative_rl_witness(L, n),
        "positive_implicative_rl": positive_implicative_rl_witness(L, n),
        "boolean_rl": boolean_rl_witness(L, n),
        "fantastic_rl": fantastic_rl_witness(L, n),
        "obstinate_rl": obstinate_rl_witness(L, n),
    }
    ineq = fantastic_rl_inequality_witness(L, n)
    methods = {
        "positive_implicative_rl": {"definition": w["positive_implicative_rl"] is None,
                                    "join_complement": w["boolean_rl"] is None},
        "fantastic_rl": {"definition": w["fantastic_rl"] is None, "inequality": ineq is None},
    }
    for flag, outcomes in methods.items():
        if len(set(outcomes.values())) > 1:
            raise CharacterizationMismatch(f"{flag} routes disagree at n={n}", outcomes)
    flags = {name: wit is None for name, wit in w.items()}
    return flags, methods, {name: wit for name, wit in w.items() if wit is not None}


def classify_lattice(L: ResiduatedLattice, n_max: int | None = None) -> LatticeClassification:
    """Classify ``L`` (MTL/BL/MV/Heyting, chain, locally finite, n-fold flags).

    ``n_max`` defaults to the carrier size; flags are constant past the
    power stabilization index anyway.
    """
    if n_max is None:
        n_max = L.size
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    A, M, N, J = L.arrow, L.otimes, L.meet, L.join
    one, zero = L.top, L.bottom
    bound = L.size

    witnesses = {}
    prelin = _pair_witness(L, lambda x, y: J[A[x][y]][A[y][x]] == one)
    divis = _pair_witness(L, lambda x, y: N[x][y] == M[x][A[x][y]])
    invol = next(((x,) for x in L.elements if L.neg(L.neg(x)) != x), None)
    heyt = _pair_witness(L, lambda x, y: M[x][y] == N[x][y])
    for key, w in (("prelinearity", prelin), ("divisibility", divis),
                   ("involution", invol), ("heyting", heyt)):
        if w is not None:
            witnesses[key] = w
    lf = next(((x,) for x in L.elements
               if x != one and all(L.power(x, n) != zero for n in range(1, bound + 1))), None)
    if lf is not None:
        witnesses["locally_finite"] = lf

    per_n, methods, flag_witnesses = {}, {}, {}
    for n in range(1, n_max + 1):
        per_n[n], methods[n], flag_witnesses[n] = rl_flags(L, n)

    is_mtl = prelin is None
    is_bl = is_mtl and divis is None
    return LatticeClassification(
        is_mtl=is_mtl,
        is_bl=is_bl,
        is_mv=is_bl and invol is None,
        is_heyting=heyt is None,
        is_totally_ordered=L.is_chain,
        is_locally_finite=lf is None,
        is_divisible=divis is None,
        is_involutive=invol is None,
        per_n=per_n,
        stabilization_n=L.stabilization,
        exponent_bound=bound,
        witnesses=witnesses,
        methods=methods,
        flag_witnesses=flag_witnesses,
    )
