"""Exhaustive generation of small residuated lattices up to isomorphism.

Bounded lattices are generated first; for each one the monoid table is
found by backtracking and the implication is derived as the residual.
Naive generators are kept alongside as oracles for the fast ones.
"""

from __future__ import annotations

import hashlib
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations, permutations, product
from pathlib import Path

from .core import RawAlgebra, ResiduatedLattice, validate
from .errors import AxiomError, SizeOutOfRange

GENERATOR_VERSION = "1"
MAX_LATTICE_SIZE = 7
MAX_RESIDUATED_SIZE = 6


def member_names(k: int) -> tuple[str, ...]:
    return ("0",) + tuple("abcdefghijklmnopqrstuvwxyz"[: k - 2]) + ("1",)


# ---------------------------------------------------------------------------
# canonical forms

def _encode(k, leq, otimes, perm) -> bytes:
    # perm[new] = old
    out = bytearray([k])
    out += bytes(1 if leq[perm[a]][perm[b]] else 0 for a in range(k) for b in range(k))
    if otimes is not None:
        pos = [0] * k
        for new, old in enumerate(perm):
            pos[old] = new
        out += bytes(pos[otimes[perm[a]][perm[b]]] for a in range(k) for b in range(k))
    return bytes(out)


def _middle_perms(k, bottom, top):
    middle = [x for x in range(k) if x not in (bottom, top)]
    for p in permutations(middle):
        yield (bottom,) + p + (top,)


def _canonical(k, leq, otimes, bottom, top):
    best, best_perm = None, None
    for perm in _middle_perms(k, bottom, top):
        enc = _encode(k, leq, otimes, perm)
        if best is None or enc < best:
            best, best_perm = enc, perm
    return best, best_perm


@dataclass(frozen=True, order=True)
class CanonicalForm:
    """Byte encoding of (size, order, monoid table) minimal over relabelings."""

    data: bytes

    @property
    def digest(self) -> str:
        return hashlib.sha256(self.data).hexdigest()

    def hex(self) -> str:
        return self.data.hex()


def canonical_form(L: ResiduatedLattice) -> CanonicalForm:
    enc, _ = _canonical(L.size, L.leq, L.otimes, L.bottom, L.top)
    return CanonicalForm(enc)


def canonicalize(L: ResiduatedLattice) -> ResiduatedLattice:
    """Relabel ``L`` into its canonical labeling with names 0, a, b, ..., 1."""
    _, perm = _canonical(L.size, L.leq, L.otimes, L.bottom, L.top)
    return L.relabel(perm, names=member_names(L.size))


def are_isomorphic(L1: ResiduatedLattice, L2: ResiduatedLattice) -> bool:
    return canonical_form(L1) == canonical_form(L2)


def isomorphic_by_search(L1: ResiduatedLattice, L2: ResiduatedLattice) -> bool:
    """Oracle: try every bijection of the carriers."""
    if L1.size != L2.size:
        return False
    E = range(L1.size)
    for p in permutations(E):
        if all(L1.leq[x][y] == L2.leq[p[x]][p[y]] and p[L1.otimes[x][y]] == L2.otimes[p[x]][p[y]]
               for x in E for y in E):
            return True
    return False


# ---------------------------------------------------------------------------
# bounded lattices

def _check_size(k, cap):
    if not 2 <= k <= cap:
        raise SizeOutOfRange(f"size must be in [2, {cap}], got {k}")


def _meet_join(leq, k):
    """Return (meet, join) tables, or None if some pair lacks a bound."""
    meet = [[0] * k for _ in range(k)]
    join = [[0] * k for _ in range(k)]
    for x in range(k):
        for y in range(x, k):
            ub = [z for z in range(k) if leq[x][z] and leq[y][z]]
            lub = [z for z in ub if all(leq[z][w] for w in ub)]
            lb = [z for z in range(k) if leq[z][x] and leq[z][y]]
            glb = [z for z in lb if all(leq[w][z] for w in lb)]
            if not lub or not glb:
                return None
            join[x][y] = join[y][x] = lub[0]
            meet[x][y] = meet[y][x] = glb[0]
    return meet, join


def _close(rel, k):
    for m in range(k):
        for i in range(k):
            if rel[i][m]:
                for j in range(k):
                    if rel[m][j]:
                        rel[i][j] = True
    return rel


def _labeled_orders(k):
    """Orders with 0 bottom, k-1 top, and x < y only if x < y as integers."""
    middle = list(range(1, k - 1))
    pairs = list(combinations(middle, 2))
    for bits in product((False, True), repeat=len(pairs)):
        rel = [[i == j or i == 0 or j == k - 1 for j in range(k)] for i in range(k)]
        for (i, j), b in zip(pairs, bits):
            rel[i][j] = b
        closed = _close([row[:] for row in rel], k)
        if closed != rel:
            continue  # each closed relation is reached exactly once from itself
        yield tuple(tuple(row) for row in rel)


def enumerate_bounded_lattices(k: int) -> list[tuple[tuple[bool, ...], ...]]:
    """All bounded lattices on k points up to isomorphism, in canonical order.

    Element 0 is bottom and k-1 is top in every returned relation.
    """
    _check_size(k, MAX_LATTICE_SIZE)
    seen = {}
    for leq in _labeled_orders(k):
        if _meet_join(leq, k) is None:
            continue
        enc, perm = _canonical(k, leq, None, 0, k - 1)
        if enc not in seen:
            seen[enc] = tuple(tuple(leq[perm[a]][perm[b]] for b in range(k)) for a in range(k))
    return [seen[e] for e in sorted(seen)]


def naive_bounded_lattices(k: int) -> list[tuple[tuple[bool, ...], ...]]:
    """Oracle: every relation on the middle points, filtered and deduplicated."""
    _check_size(k, 6)
    seen = {}
    for leq in naive_labeled_lattices(k):
        enc, perm = _canonical(k, leq, None, 0, k - 1)
        seen.setdefault(enc, tuple(tuple(leq[perm[a]][perm[b]] for b in range(k)) for a in range(k)))
    return [seen[e] for e in sorted(seen)]


# ---------------------------------------------------------------------------
# residuated lattices

def _residual(otimes, leq, k):
    """arrow[x][z] = max{y : x*y <= z}; None if some max fails to exist."""
    arrow = [[0] * k for _ in range(k)]
    for x in range(k):
        for z in range(k):
            ys = [y for y in range(k) if leq[otimes[x][y]][z]]
            best = [y for y in ys if all(leq[w][y] for w in ys)]
            if not best:
                return None
            arrow[x][z] = best[0]
    return arrow


class _Search:
    """Backtracking over the monoid table of one labeled bounded lattice."""

    def __init__(self, leq):
        k = len(leq)
        self.k = k
        self.leq = leq
        self.meet, self.join = _meet_join(leq, k)
        self.top = k - 1
        self.middle = list(range(1, k - 1))
        self.cells = [(i, j) for i in self.middle for j in self.middle if i <= j]
        t = [[None] * k for _ in range(k)]
        for x in range(k):
            t[0][x] = t[x][0] = 0
            t[self.top][x] = x
            t[x][self.top] = x
        self.t = t

    def candidates(self, cell):
        i, j = cell
        m = self.meet[i][j]
        return [v for v in range(self.k) if self.leq[v][m]]

    def consistent(self, i, j):
        """Check every constraint touching the freshly assigned cell (i, j)."""
        t, leq, join, k = self.t, self.leq, self.join, self.k
        E = range(k)
        for a, b in ((i, j), (j, i)):
            v = t[a][b]
            # monotone in the first argument
            for x in E:
                w = t[x][b]
                if w is None:
                    continue
                if leq[x][a] and not leq[w][v]:
                    return False
                if leq[a][x] and not leq[v][w]:
                    return False
            # preserves joins in the second argument, with (a, b) in any of the three roles
            for y in E:
                u = t[a][y]
                if u is None:
                    continue
                s = t[a][join[b][y]]
                if s is not None and s != join[v][u]:
                    return False
            for y in E:
                for z in E:
                    if join[y][z] != b:
                        continue
                    u, w = t[a][y], t[a][z]
                    if u is not None and w is not None and join[u][w] != v:
                        return False
        # associativity: (x*y)*z == x*(y*z) whenever all four products are known
        for x in E:
            for y in E:
                xy = t[x][y]
                if xy is None:
                    continue
                for z in E:
                    yz = t[y][z]
                    if yz is None:
                        continue
                    l, r = t[xy][z], t[x][yz]
                    if l is not None and r is not None and l != r:
                        return False
        return True

    def run(self, first_value=None):
        out = []
        cells = self.cells
        t = self.t

        def rec(idx):
            if idx == len(cells):
                out.append(tuple(tuple(row) for row in t))
                return
            i, j = cells[idx]
            cands = self.candidates((i, j))
            if idx == 0 and first_value is not None:
                cands = [first_value] if first_value in cands else []
            for v in cands:
                t[i][j] = t[j][i] = v
                if self.consistent(i, j):
                    rec(idx + 1)
                t[i][j] = t[j][i] = None

        rec(0)
        return out


def _labeled_bounded_lattices(k):
    return [leq for leq in _labeled_orders(k) if _meet_join(leq, k) is not None]


def _solve_partition(args):
    k, leq, first_value = args
    search = _Search(leq)
    found = []
    for otimes in search.run(first_value):
        arrow = _residual(otimes, leq, k)
        if arrow is None:
            continue
        L = validate(RawAlgebra(member_names(k), otimes, arrow))
        C = canonicalize(L)
        found.append((canonical_form(C).data, C.otimes, C.arrow))
    return found


def _partitions(k):
    for leq in enumerate_bounded_lattices(k):
        search = _Search(leq)
        if not search.cells:
            yield (k, leq, None)
            continue
        for v in search.candidates(search.cells[0]):
            yield (k, leq, v)


@dataclass
class Corpus:
    size: int
    members: list[ResiduatedLattice]
    provenance: dict = field(default_factory=dict)

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)


def _assemble(k, found, method):
    uniq = {}
    for enc, otimes, arrow in found:
        uniq.setdefault(enc, (otimes, arrow))
    members = []
    for enc in sorted(uniq):
        otimes, arrow = uniq[enc]
        members.append(validate(RawAlgebra(member_names(k), otimes, arrow)))
    provenance = {"generator": "reslat.enumeration", "version": GENERATOR_VERSION,
                  "size": k, "method": method}
    return Corpus(k, members, provenance)


def enumerate_residuated(k: int, jobs: int = 1) -> Corpus:
    """All residuated lattices of size ``k`` up to isomorphism.

    The search is split by (lattice, first cell value); results are merged
    and sorted by canonical form, so ``jobs`` never affects the output.
    """
    _check_size(k, MAX_RESIDUATED_SIZE)
    parts = list(_partitions(k))
    if jobs > 1 and len(parts) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            chunks = list(pool.map(_solve_partition, parts))
    else:
        chunks = [_solve_partition(p) for p in parts]
    found = [item for chunk in chunks for item in chunk]
    return _assemble(k, found, "backtracking")


def naive_residuated(k: int) -> Corpus:
    """Oracle: every commutative table with unit top on every labeled lattice,
    arrow taken as the pointwise join of the candidate residual, filtered
    through validate().
    """
    _check_size(k, 4)
    found = []
    names = member_names(k)
    for leq in naive_labeled_lattices(k):
        top = k - 1
        free = [(i, j) for i in range(k - 1) for j in range(i, k - 1)]
        meet_join = _meet_join(leq, k)
        join = meet_join[1]
        for vals in product(range(k), repeat=len(free)):
            t = [[0] * k for _ in range(k)]
            for x in range(k):
                t[top][x] = t[x][top] = x
            for (i, j), v in zip(free, vals):
                t[i][j] = t[j][i] = v
            arrow = [[0] * k for _ in range(k)]
            for x in range(k):
                for z in range(k):
                    acc = 0
                    for y in range(k):
                        if leq[t[x][y]][z]:
                            acc = join[acc][y]
                    arrow[x][z] = acc
            try:
                L = validate(RawAlgebra(names, t, arrow))
            except AxiomError:
                continue
            if L.leq != leq:
                continue
            found.append((canonical_form(L).data, canonicalize(L).otimes, canonicalize(L).arrow))
    return _assemble(k, found, "naive")


def naive_labeled_lattices(k):
    """Every bounded lattice order on k points with 0 bottom and k-1 top (no dedup)."""
    middle = list(range(1, k - 1))
    cells = [(i, j) for i in middle for j in middle if i != j]
    for bits in product((False, True), repeat=len(cells)):
        leq = [[i == j or i == 0 or j == k - 1 for j in range(k)] for i in range(k)]
        for (i, j), b in zip(cells, bits):
            leq[i][j] = b
        if any(leq[i][j] and leq[j][i] for i, j in cells):
            continue
        if any(leq[i][j] and leq[j][m] and not leq[i][m]
               for i in range(k) for j in range(k) for m in range(k)):
            continue
        if _meet_join(leq, k) is None:
            continue
        yield tuple(tuple(row) for row in leq)


# ---------------------------------------------------------------------------
# persistence

def write_corpus(corpus: Corpus, out_dir, summarize=None) -> list[Path]:
    """Write one ``.rlat`` file per member plus ``index.json``.

    ``summarize(L)`` may add a JSON-able classification summary per member.
    """
    from .io import serialize

    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written = []
    entries = []
    for i, L in enumerate(corpus.members):
        name = f"rl{corpus.size}-{i:03d}.rlat"
        path = out / name
        path.write_text(serialize(L), encoding="utf-8")
        written.append(path)
        entry = {"file": name, "size": L.size, "canonical_digest": canonical_form(L).digest}
        if summarize is not None:
            entry["classification"] = summarize(L)
        entries.append(entry)
    index = {"provenance": corpus.provenance, "count": len(entries), "members": entries}
    path = out / "index.json"
    path.write_text(json.dumps(index, sort_keys=True, indent=2) + "\n", encoding="utf-8")
    written.append(path)
    return written


def read_corpus(directory) -> list[ResiduatedLattice]:
    from .io import load

    return [load(p) for p in sorted(Path(directory).glob("*.rlat"))]
