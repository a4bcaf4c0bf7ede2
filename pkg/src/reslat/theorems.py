"""Machine-checked statements about n-fold filters, plus implication diagrams.

Every check is registered under a frozen id. A check evaluates one instance
(a lattice, optionally a filter or a pair of filters, optionally a fold n)
and returns ``None`` when the statement holds there, or a witness dict.
Failures are data: the runners never raise on a false statement.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import product
from typing import Callable

from . import core
from .core import ResiduatedLattice, check_identities, classify_lattice
from .errors import CharacterizationMismatch, ReslatError
from .filters import (
    all_filters,
    is_deductive_system,
    is_filter,
    is_maximal,
    maximal_filters,
    quotient,
    radical,
)
from .nfold import (
    IMPLICATIVE_ROUTES,
    NORMAL_ROUTES,
    OBSTINATE_ROUTES,
    POSITIVE_IMPLICATIVE_ROUTES,
    boolean_condition,
    classify_filter,
    implicative_definition,
    positive_implicative_definition,
    section_is_filter,
)

KINDS = ("equivalence", "implication", "extension", "quotient-correspondence", "lattice-level")


@dataclass(frozen=True)
class Check:
    id: str
    kind: str
    scope: str  # "lattice", "filter" or "pair"
    fn: Callable
    per_n: bool = True
    erratum: bool = False
    summary: str = ""


REGISTRY: dict[str, Check] = {}


def check(id, kind, scope, per_n=True, erratum=False, summary=""):
    assert kind in KINDS and scope in ("lattice", "filter", "pair")

    def deco(fn):
        if id in REGISTRY:
            raise ValueError(f"duplicate check id {id}")
        REGISTRY[id] = Check(id, kind, scope, fn, per_n, erratum, summary)
        return fn

    return deco


class LatticeContext:
    """Caches filters, classifications and quotients for one lattice."""

    def __init__(self, L: ResiduatedLattice, label: str | None = None, n_max: int | None = None):
        self.L = L
        self.label = label or L.digest[:12]
        self.n_max = n_max or L.size
        self._fc = {}
        self._q = {}
        self._qc = {}

    @cached_property
    def filters(self):
        return all_filters(self.L)

    @cached_property
    def proper(self):
        return [F for F in self.filters if len(F) < self.L.size]

    @cached_property
    def maximal(self):
        return maximal_filters(self.L, self.filters)

    @cached_property
    def cls(self):
        return classify_lattice(self.L, self.n_max)

    @cached_property
    def one(self):
        return frozenset([self.L.top])

    def fc(self, F):
        key = frozenset(F)
        if key not in self._fc:
            self._fc[key] = classify_filter(self.L, key, self.n_max, self.filters)
        return self._fc[key]

    def flags(self, F, n):
        return self.fc(F).per_n[n]

    def quotient(self, F):
        key = frozenset(F)
        if key not in self._q:
            self._q[key] = quotient(self.L, key)
        return self._q[key]

    def quotient_cls(self, F):
        key = frozenset(F)
        if key not in self._qc:
            self._qc[key] = classify_lattice(self.quotient(key).quotient, self.n_max)
        return self._qc[key]

    def is_proper(self, F):
        return len(F) < self.L.size

    def names(self, S):
        return [self.L.names[x] for x in sorted(S)]

    def witness(self, detail, **elements):
        return {"detail": detail,
                "elements": {k: self.L.names[v] for k, v in sorted(elements.items())}}


# ---------------------------------------------------------------------------
# helpers

def _first_pair(L, pred):
    for x, y in product(L.elements, L.elements):
        if not pred(x, y):
            return x, y
    return None


def _iff(ctx, label, left, right, detail=""):
    if left == right:
        return None
    return {"detail": f"{label}: {left} vs {right}" + (f"; {detail}" if detail else ""),
            "elements": {}}


def _routes(ctx, routes, F, n, names=None):
    outcomes = {k: fn(ctx.L, F, n) for k, fn in routes.items() if names is None or k in names}
    if len(set(outcomes.values())) > 1:
        return {"detail": "routes disagree: " + ", ".join(f"{k}={v}" for k, v in outcomes.items()),
                "elements": {}}
    return None


def _subsets(L):
    for mask in range(1 << L.size):
        yield frozenset(x for x in L.elements if mask >> x & 1)


# ---------------------------------------------------------------------------
# preliminaries

@check("identities_hold", "lattice-level", "lattice", per_n=False,
       summary="the seventeen standard identities hold")
def _identities(ctx, n=None):
    report = check_identities(ctx.L)
    bad = report.failures()
    if not bad:
        return None
    r = bad[0]
    return {"detail": f"{r.item} fails", "elements": {"tuple": list(r.counterexample)}}


@check("filter_deductive_coincide", "equivalence", "lattice", per_n=False,
       summary="filters and deductive systems are the same subsets")
def _fact1(ctx, n=None):
    for S in _subsets(ctx.L):
        if is_filter(ctx.L, S) != is_deductive_system(ctx.L, S):
            return {"detail": f"subset {ctx.names(S)} disagrees", "elements": {}}
    return None


@check("quotient_well_defined", "quotient-correspondence", "filter", per_n=False,
       summary="the filter congruence is a congruence and L/F validates")
def _quotient_ok(ctx, F, n=None):
    try:
        q = ctx.quotient(F)
    except ReslatError as exc:
        return {"detail": str(exc), "elements": {}}
    if q.partition[q.class_of[ctx.L.top]] != frozenset(F):
        return {"detail": "class of top differs from F", "elements": {}}
    return None


@check("maximal_characterizations", "equivalence", "filter", per_n=False,
       summary="three maximality criteria agree on proper filters")
def _max_chars(ctx, F, n=None):
    if not ctx.is_proper(F):
        return None
    try:
        is_maximal(ctx.L, F, ctx.filters)
    except CharacterizationMismatch as exc:
        return {"detail": str(exc) + f" {exc.outcomes}", "elements": {}}
    return None


@check("maximal_iff_quotient_locally_finite", "quotient-correspondence", "filter", per_n=False,
       summary="F maximal iff L/F locally finite (proper F)")
def _lem210(ctx, F, n=None):
    if not ctx.is_proper(F):
        return None
    m = is_maximal(ctx.L, F, ctx.filters).is_maximal
    return _iff(ctx, "maximal vs quotient locally finite", m, ctx.quotient_cls(F).is_locally_finite)


def _primes(ctx, F):
    return ctx.fc(F).primes


@check("prime1_implies_prime2", "implication", "filter", per_n=False)
def _rem_i(ctx, F, n=None):
    if not ctx.is_proper(F):
        return None
    p = _primes(ctx, F)
    return _iff(ctx, "prime1 => prime2", True, p.prime2) if p.prime1 else None


@check("prime2_implies_prime1_mtl", "implication", "filter", per_n=False)
def _rem_i_conv(ctx, F, n=None):
    if not ctx.is_proper(F) or not ctx.cls.is_mtl:
        return None
    p = _primes(ctx, F)
    return _iff(ctx, "prime2 => prime1 in MTL", True, p.prime1) if p.prime2 else None


@check("prime1_implies_prime3", "implication", "filter", per_n=False)
def _rem_ii(ctx, F, n=None):
    if not ctx.is_proper(F):
        return None
    p = _primes(ctx, F)
    return _iff(ctx, "prime1 => prime3", True, p.prime3) if p.prime1 else None


@check("prime3_implies_prime1_mtl", "implication", "filter", per_n=False, erratum=True,
       summary="known false: in an MTL-algebra every filter is prime of the third kind")
def _rem_ii_conv(ctx, F, n=None):
    if not ctx.is_proper(F) or not ctx.cls.is_mtl:
        return None
    p = _primes(ctx, F)
    if p.prime3 and not p.prime1:
        L = ctx.L
        x, y = _first_pair(L, lambda x, y: L.arrow[x][y] in F or L.arrow[y][x] in F)
        return ctx.witness("prime3 holds but x->y, y->x both outside F", x=x, y=y)
    return None


@check("boolean2_implies_boolean", "implication", "filter", per_n=False)
def _rem_iii(ctx, F, n=None):
    if not ctx.is_proper(F):
        return None
    p = _primes(ctx, F)
    return _iff(ctx, "boolean2 => boolean", True, p.boolean) if p.boolean2 else None


@check("maximal_implies_prime2", "implication", "filter", per_n=False)
def _rem_iv(ctx, F, n=None):
    if not ctx.is_proper(F) or not ctx.fc(F).maximal:
        return None
    return _iff(ctx, "maximal => prime2", True, _primes(ctx, F).prime2)


@check("maximal_implies_prime1_mtl", "implication", "filter", per_n=False)
def _rem_v(ctx, F, n=None):
    if not ctx.is_proper(F) or not ctx.cls.is_mtl or not ctx.fc(F).maximal:
        return None
    return _iff(ctx, "maximal => prime1 in MTL", True, _primes(ctx, F).prime1)


# ---------------------------------------------------------------------------
# radical

@check("radical_closure", "lattice-level", "filter", per_n=False,
       summary="Rad(F) contains F and is idempotent")
def _radical(ctx, F, n=None):
    if not ctx.is_proper(F):
        return None
    R = radical(ctx.L, F, ctx.filters).members
    if not frozenset(F) <= R:
        return {"detail": "Rad(F) does not contain F", "elements": {}}
    if len(R) < ctx.L.size and radical(ctx.L, R, ctx.filters).members != R:
        return {"detail": "Rad(Rad(F)) != Rad(F)", "elements": {}}
    return None


@check("maximal_implies_semi_maximal", "implication", "filter", per_n=False)
def _max_semi(ctx, F, n=None):
    if not ctx.is_proper(F) or not ctx.fc(F).maximal:
        return None
    return _iff(ctx, "maximal => semi-maximal", True, ctx.fc(F).semi_maximal)


# ---------------------------------------------------------------------------
# implicative

@check("lem_lemob", "equivalence", "filter",
       summary="every section L_a is a filter iff F is n-fold implicative")
def _lemob(ctx, F, n):
    all_sections = True
    for a in ctx.L.elements:
        _, ok = section_is_filter(ctx.L, F, a, n)
        all_sections = all_sections and ok
    return _iff(ctx, "all sections filters vs implicative", all_sections, ctx.flags(F, n)["implicative"])


@check("prop_ch111", "equivalence", "filter")
def _ch111(ctx, F, n):
    return _routes(ctx, IMPLICATIVE_ROUTES, F, n, ("definition", "square"))


@check("prop_ch112", "equivalence", "filter")
def _ch112(ctx, F, n):
    return _routes(ctx, IMPLICATIVE_ROUTES, F, n, ("square", "shift"))


@check("prop_ch113", "equivalence", "filter")
def _ch113(ctx, F, n):
    return _routes(ctx, IMPLICATIVE_ROUTES, F, n, ("square", "distribution"))


@check("prop_ch1_equiv", "equivalence", "filter")
def _ch1(ctx, F, n):
    return _routes(ctx, IMPLICATIVE_ROUTES, F, n)


def _monotone(ctx, F, n, flag):
    if n >= ctx.n_max or not ctx.flags(F, n)[flag]:
        return None
    return _iff(ctx, f"{flag}(n) => {flag}(n+1)", True, ctx.flags(F, n + 1)[flag])


@check("prop_ch2", "implication", "filter")
def _ch2(ctx, F, n):
    return _monotone(ctx, F, n, "implicative")


@check("prop_ch11", "implication", "lattice",
       summary="a subset meeting the n-fold implicative definition is a filter")
def _ch11(ctx, n):
    for S in _subsets(ctx.L):
        if implicative_definition(ctx.L, S, n) and not is_filter(ctx.L, S):
            return {"detail": f"subset {ctx.names(S)} is not a filter", "elements": {}}
    return None


def _every_filter(ctx, n, flag, filters=None):
    for F in filters if filters is not None else ctx.filters:
        if not ctx.flags(F, n)[flag]:
            return F
    return None


@check("cor_ch3", "implication", "lattice")
def _ch3(ctx, n):
    if not ctx.cls.per_n[n]["implicative_rl"]:
        return None
    F = _every_filter(ctx, n, "implicative")
    return None if F is None else {"detail": f"filter {ctx.names(F)} not implicative", "elements": {}}


def _extension(ctx, F1, F2, n, flag):
    if not ctx.flags(F1, n)[flag]:
        return None
    return _iff(ctx, f"{flag} extends upward", True, ctx.flags(F2, n)[flag])


@check("thm_ch4", "extension", "pair")
def _ch4(ctx, F1, F2, n):
    return _extension(ctx, F1, F2, n, "implicative")


@check("prop_ch5", "equivalence", "lattice")
def _ch5(ctx, n):
    L = ctx.L
    i = ctx.cls.per_n[n]["implicative_rl"]
    ii = _every_filter(ctx, n, "implicative") is None
    iii = ctx.flags(ctx.one, n)["implicative"]
    iv = all(L.power(x, n) == L.power(x, 2 * n) for x in L.elements)
    if len({i, ii, iii, iv}) > 1:
        return {"detail": f"lattice={i} every_filter={ii} unit_filter={iii} square={iv}", "elements": {}}
    return None


@check("cor_ch6", "quotient-correspondence", "filter")
def _ch6(ctx, F, n):
    if not ctx.is_proper(F):
        return None
    return _iff(ctx, "implicative vs L/F implicative_rl",
                ctx.flags(F, n)["implicative"], ctx.quotient_cls(F).per_n[n]["implicative_rl"])


@check("cor_ch7", "quotient-correspondence", "filter", per_n=False)
def _ch7(ctx, F, n=None):
    if ctx.is_proper(F):
        w = _iff(ctx, "1-fold implicative vs L/F Heyting",
                 ctx.flags(F, 1)["implicative"], ctx.quotient_cls(F).is_heyting)
        if w:
            return w
    if frozenset(F) == ctx.one:
        h = ctx.cls.is_heyting
        if not h == ctx.flags(ctx.one, 1)["implicative"] == ctx.cls.per_n[1]["implicative_rl"]:
            return {"detail": "Heyting / unit filter / lattice flag disagree", "elements": {}}
    return None


# ---------------------------------------------------------------------------
# positive implicative and boolean

@check("prop_propo1", "implication", "lattice",
       summary="a subset meeting the positive implicative definition is a filter")
def _propo1(ctx, n):
    for S in _subsets(ctx.L):
        if positive_implicative_definition(ctx.L, S, n) and not is_filter(ctx.L, S):
            return {"detail": f"subset {ctx.names(S)} is not a filter", "elements": {}}
    return None


@check("prop_propo", "equivalence", "filter")
def _propo(ctx, F, n):
    return _routes(ctx, POSITIVE_IMPLICATIVE_ROUTES, F, n,
                   ("definition", "definition_z0", "peirce", "negation"))


@check("cor_lien11", "equivalence", "filter")
def _lien11(ctx, F, n):
    if not ctx.is_proper(F):
        return None
    return _routes(ctx, POSITIVE_IMPLICATIVE_ROUTES, F, n, ("definition", "boolean"))


@check("thm_b1", "extension", "pair")
def _b1(ctx, F1, F2, n):
    return _extension(ctx, F1, F2, n, "positive_implicative")


def _implies(ctx, F, n, a, b):
    f = ctx.flags(F, n)
    if f[a] and not f[b]:
        return {"detail": f"{a} holds but {b} fails", "elements": {}}
    return None


@check("thm_lien1", "implication", "filter")
def _lien1(ctx, F, n):
    return _implies(ctx, F, n, "positive_implicative", "implicative")


@check("prop_propo15", "implication", "filter")
def _propo15(ctx, F, n):
    return _monotone(ctx, F, n, "positive_implicative")


def _rl_monotone(ctx, n, flag):
    if n >= ctx.n_max or not ctx.cls.per_n[n][flag]:
        return None
    return _iff(ctx, f"{flag}(n) => {flag}(n+1)", True, ctx.cls.per_n[n + 1][flag])


@check("rem_positive_implicative_rl_monotone", "lattice-level", "lattice")
def _pirl_mono(ctx, n):
    L = ctx.L
    if n == 1 and ctx.cls.per_n[1]["positive_implicative_rl"]:
        for m in range(1, ctx.n_max + 1):
            if not ctx.cls.per_n[m]["positive_implicative_rl"]:
                return {"detail": f"1-fold but not {m}-fold", "elements": {}}
    for x in L.elements:
        if not L.leq[L.arrow[L.neg(L.power(x, n + 1))][x]][L.arrow[L.neg(L.power(x, n))][x]]:
            return ctx.witness("neg(x^(n+1))->x <= neg(x^n)->x fails", x=x)
    return _rl_monotone(ctx, n, "positive_implicative_rl")


@check("prop_propoo", "implication", "lattice")
def _propoo(ctx, n):
    if not ctx.cls.per_n[n]["positive_implicative_rl"]:
        return None
    F = _every_filter(ctx, n, "positive_implicative")
    return None if F is None else {"detail": f"filter {ctx.names(F)} not positive implicative", "elements": {}}


@check("prop_prch", "equivalence", "lattice")
def _prch(ctx, n):
    i = ctx.cls.per_n[n]["positive_implicative_rl"]
    ii = _every_filter(ctx, n, "positive_implicative") is None
    iii = ctx.flags(ctx.one, n)["positive_implicative"]
    if len({i, ii, iii}) > 1:
        return {"detail": f"lattice={i} every_filter={ii} unit_filter={iii}", "elements": {}}
    return None


@check("prop_cor15", "implication", "lattice")
def _cor15(ctx, n):
    f = ctx.cls.per_n[n]
    if f["positive_implicative_rl"] and not f["implicative_rl"]:
        return {"detail": "positive_implicative_rl without implicative_rl", "elements": {}}
    return None


@check("cor_prch34", "equivalence", "lattice")
def _prch34(ctx, n):
    a = core.positive_implicative_rl_witness(ctx.L, n) is None
    b = core.boolean_rl_witness(ctx.L, n) is None
    return _iff(ctx, "neg(y^n)->y = y vs neg(y^n) v y = 1", a, b)


@check("prop_crch0", "implication", "filter")
def _crch0(ctx, F, n):
    if not ctx.cls.is_totally_ordered or not ctx.is_proper(F):
        return None
    if not ctx.flags(F, n)["positive_implicative"]:
        return None
    if not ctx.fc(F).maximal:
        return {"detail": "positive implicative filter of a chain is not maximal", "elements": {}}
    if not ctx.quotient_cls(F).is_locally_finite:
        return {"detail": "L/F not locally finite", "elements": {}}
    return None


@check("cor_crch", "implication", "lattice")
def _crch(ctx, n):
    if not ctx.cls.is_totally_ordered:
        return None
    if ctx.flags(ctx.one, n)["positive_implicative"] and not ctx.cls.is_locally_finite:
        return {"detail": "{1} positive implicative but L not locally finite", "elements": {}}
    if ctx.cls.per_n[n]["positive_implicative_rl"] and not ctx.cls.is_locally_finite:
        return {"detail": "positive implicative chain not locally finite", "elements": {}}
    return None


@check("prop_prcha", "quotient-correspondence", "filter")
def _prcha(ctx, F, n):
    if not ctx.is_proper(F):
        return None
    return _iff(ctx, "positive implicative vs L/F positive_implicative_rl",
                ctx.flags(F, n)["positive_implicative"],
                ctx.quotient_cls(F).per_n[n]["positive_implicative_rl"])


@check("prop_lien12", "equivalence", "filter")
def _lien12(ctx, F, n):
    f = ctx.flags(F, n)
    return _iff(ctx, "boolean vs positive implicative", f["boolean"], f["positive_implicative"])


@check("rem_lien16", "equivalence", "lattice")
def _lien16(ctx, n):
    a = ctx.cls.per_n[n]["boolean_rl"]
    b = boolean_condition(ctx.L, ctx.one, n)
    c = ctx.cls.per_n[n]["positive_implicative_rl"]
    if len({a, b, c}) > 1:
        return {"detail": f"boolean_rl={a} unit_boolean={b} positive_implicative_rl={c}", "elements": {}}
    return None


# ---------------------------------------------------------------------------
# normal

@check("prop_prochr", "equivalence", "filter")
def _prochr(ctx, F, n):
    return _routes(ctx, NORMAL_ROUTES, F, n)


@check("prop_propo4", "implication", "filter")
def _propo4(ctx, F, n):
    return _implies(ctx, F, n, "positive_implicative", "normal")


# ---------------------------------------------------------------------------
# fantastic

@check("prop_lp", "implication", "filter")
def _lp(ctx, F, n):
    return _implies(ctx, F, n, "positive_implicative", "fantastic")


@check("prop_lpp", "implication", "filter")
def _lpp(ctx, F, n):
    return _implies(ctx, F, n, "fantastic", "normal")


@check("lem_l1", "lattice-level", "lattice")
def _l1(ctx, n):
    L = ctx.L
    A, M = L.arrow, L.otimes
    for x, y in product(L.elements, L.elements):
        p, q = L.power(x, n), L.power(x, 2 * n)
        if not L.leq[M[A[p][q]][A[q][y]]][A[p][y]]:
            return ctx.witness("(x^n->x^2n)*(x^2n->y) <= x^n->y fails", x=x, y=y)
    return None


@check("prop_l3", "implication", "filter")
def _l3(ctx, F, n):
    f = ctx.flags(F, n)
    if f["fantastic"] and f["implicative"] and not f["positive_implicative"]:
        return {"detail": "fantastic and implicative but not positive implicative", "elements": {}}
    return None


@check("thm_l4", "equivalence", "filter")
def _l4(ctx, F, n):
    f = ctx.flags(F, n)
    return _iff(ctx, "positive implicative vs fantastic and implicative",
                f["positive_implicative"], f["fantastic"] and f["implicative"])


@check("prop_l2", "equivalence", "lattice")
def _l2(ctx, n):
    a = core.fantastic_rl_witness(ctx.L, n) is None
    b = core.fantastic_rl_inequality_witness(ctx.L, n) is None
    return _iff(ctx, "fantastic equation vs inequality", a, b)


@check("prop_prch7", "equivalence", "lattice")
def _prch7(ctx, n):
    i = ctx.cls.per_n[n]["fantastic_rl"]
    ii = _every_filter(ctx, n, "fantastic") is None
    iii = ctx.flags(ctx.one, n)["fantastic"]
    if len({i, ii, iii}) > 1:
        return {"detail": f"lattice={i} every_filter={ii} unit_filter={iii}", "elements": {}}
    return None


@check("cor_l90", "equivalence", "lattice")
def _l90(ctx, n):
    f = ctx.cls.per_n[n]
    return _iff(ctx, "positive_implicative_rl vs fantastic_rl and implicative_rl",
                f["positive_implicative_rl"], f["fantastic_rl"] and f["implicative_rl"])


@check("cor_cor1", "quotient-correspondence", "filter")
def _cor1(ctx, F, n):
    if not ctx.is_proper(F):
        return None
    return _iff(ctx, "fantastic vs L/F fantastic_rl",
                ctx.flags(F, n)["fantastic"], ctx.quotient_cls(F).per_n[n]["fantastic_rl"])


@check("thm_f2", "extension", "pair")
def _f2(ctx, F1, F2, n):
    return _extension(ctx, F1, F2, n, "fantastic")


# ---------------------------------------------------------------------------
# obstinate (proper filters only: the carrier contains 0)

@check("prop_propob1", "equivalence", "filter")
def _propob1(ctx, F, n):
    if not ctx.is_proper(F):
        return None
    return _routes(ctx, OBSTINATE_ROUTES, F, n)


@check("prop_obstinate_monotone", "implication", "filter")
def _ob_mono(ctx, F, n):
    if not ctx.is_proper(F):
        return None
    return _monotone(ctx, F, n, "obstinate")


@check("thm_th2", "extension", "pair")
def _th2(ctx, F1, F2, n):
    if not ctx.is_proper(F2):
        return None
    return _extension(ctx, F1, F2, n, "obstinate")


@check("cor_cor3", "equivalence", "lattice")
def _cor3(ctx, n):
    a = ctx.flags(ctx.one, n)["obstinate"]
    b = _every_filter(ctx, n, "obstinate", ctx.proper) is None
    return _iff(ctx, "{1} obstinate vs every proper filter obstinate", a, b)


@check("prop_propob3", "equivalence", "filter")
def _propob3(ctx, F, n):
    if not ctx.is_proper(F):
        return None
    f, m = ctx.flags(F, n), ctx.fc(F).maximal
    i, ii, iii = f["obstinate"], m and f["positive_implicative"], m and f["implicative"]
    if len({i, ii, iii}) > 1:
        return {"detail": f"obstinate={i} maximal&pi={ii} maximal&implicative={iii}", "elements": {}}
    return None


@check("prop_propob4", "equivalence", "filter")
def _propob4(ctx, F, n):
    if not ctx.is_proper(F):
        return None
    fc = ctx.fc(F)
    f = fc.per_n[n]
    i, ii, iii = f["obstinate"], fc.maximal and f["boolean"], fc.primes.prime2 and f["boolean"]
    if len({i, ii, iii}) > 1:
        return {"detail": f"obstinate={i} maximal&boolean={ii} prime2&boolean={iii}", "elements": {}}
    return None


@check("prop_propob5", "implication", "filter")
def _propob5(ctx, F, n):
    if not ctx.is_proper(F):
        return None
    return _implies(ctx, F, n, "obstinate", "fantastic")


@check("cor_propob31", "equivalence", "filter")
def _propob31(ctx, F, n):
    if not ctx.is_proper(F):
        return None
    fc = ctx.fc(F)
    f = fc.per_n[n]
    return _iff(ctx, "obstinate vs prime2 and positive implicative",
                f["obstinate"], fc.primes.prime2 and f["positive_implicative"])


@check("prop_propob6", "quotient-correspondence", "filter")
def _propob6(ctx, F, n):
    if not ctx.is_proper(F):
        return None
    Q = ctx.quotient(F).quotient
    qctx = LatticeContext(Q, n_max=ctx.n_max)
    every = _every_filter(qctx, n, "obstinate", qctx.proper) is None
    return _iff(ctx, "obstinate vs every proper filter of L/F obstinate", ctx.flags(F, n)["obstinate"], every)


@check("prop_propob18", "equivalence", "lattice")
def _propob18(ctx, n):
    i = ctx.cls.per_n[n]["obstinate_rl"]
    ii = ctx.flags(ctx.one, n)["obstinate"]
    iii = _every_filter(ctx, n, "obstinate", ctx.proper) is None
    if len({i, ii, iii}) > 1:
        return {"detail": f"lattice={i} unit_filter={ii} every_proper_filter={iii}", "elements": {}}
    return None


@check("prop_propob54", "implication", "lattice")
def _propob54(ctx, n):
    f = ctx.cls.per_n[n]
    if f["obstinate_rl"] and not f["boolean_rl"]:
        return {"detail": "obstinate_rl without boolean_rl", "elements": {}}
    return None


# ---------------------------------------------------------------------------
# lattice-level bookkeeping

@check("lattice_flags_monotone", "lattice-level", "lattice")
def _flags_mono(ctx, n):
    for flag in ("implicative_rl", "positive_implicative_rl", "obstinate_rl"):
        w = _rl_monotone(ctx, n, flag)
        if w:
            return w
    return None


@check("subclass_chain", "lattice-level", "lattice", per_n=False)
def _chain(ctx, n=None):
    c = ctx.cls
    if (c.is_bl and not c.is_mtl) or (c.is_mv and not c.is_bl):
        return {"detail": "MV => BL => MTL violated", "elements": {}}
    if c.is_totally_ordered and not c.is_mtl:
        return {"detail": "chain that is not MTL", "elements": {}}
    return None


# ---------------------------------------------------------------------------
# runners

@dataclass
class TheoremCheck:
    id: str
    statement_kind: str
    scope: str
    erratum: bool
    passed: bool
    evaluated: int = 0
    witnesses: list = field(default_factory=list)

    @property
    def status(self) -> str:
        return "pass" if self.passed else "fail"

    @property
    def witness(self):
        return self.witnesses[0] if self.witnesses else None

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "kind": self.statement_kind,
            "scope": self.scope,
            "erratum": self.erratum,
            "status": self.status,
            "evaluated": self.evaluated,
            "witnesses": self.witnesses,
        }


def _instances(c: Check, ctx: LatticeContext):
    ns = range(1, ctx.n_max + 1) if c.per_n else [None]
    if c.scope == "lattice":
        for n in ns:
            yield (), n
    elif c.scope == "filter":
        for F in ctx.filters:
            for n in ns:
                yield (F.members,), n
    else:
        for F1 in ctx.filters:
            for F2 in ctx.filters:
                if F1.members <= F2.members:
                    for n in ns:
                        yield (F1.members, F2.members), n


def _evaluate(c: Check, ctx: LatticeContext, args, n):
    try:
        return c.fn(ctx, *args, n)
    except ReslatError as exc:
        return {"detail": f"{type(exc).__name__}: {exc}", "elements": {}}


def _full_witness(c, ctx, args, n, w):
    out = {"check": c.id, "lattice": ctx.label, "digest": ctx.L.digest, "n": n}
    if c.scope == "filter":
        out["filter"] = ctx.names(args[0])
    elif c.scope == "pair":
        out["filters"] = [ctx.names(args[0]), ctx.names(args[1])]
    out.update(w)
    return out


def run_checks(ctx: LatticeContext, checks=None) -> list[TheoremCheck]:
    out = []
    for c in checks or REGISTRY.values():
        tc = TheoremCheck(c.id, c.kind, c.scope, c.erratum, True)
        for args, n in _instances(c, ctx):
            tc.evaluated += 1
            w = _evaluate(c, ctx, args, n)
            if w is not None:
                tc.passed = False
                tc.witnesses.append(_full_witness(c, ctx, args, n, w))
        out.append(tc)
    return out


def run_theorem_suite(L: ResiduatedLattice, n_max: int | None = None, label=None) -> list[TheoremCheck]:
    """Every registered check over every filter (pair) of L and every n <= n_max."""
    return run_checks(LatticeContext(L, label, n_max))


def run_corpus_suite(corpus, n_max: int | None = None) -> list[TheoremCheck]:
    """Aggregate the suite over ``corpus``: an iterable of lattices or (label, lattice) pairs.

    With ``n_max=None`` each lattice uses its own size.
    """
    agg = {c.id: TheoremCheck(c.id, c.kind, c.scope, c.erratum, True) for c in REGISTRY.values()}
    for label, L in _labelled(corpus):
        for tc in run_theorem_suite(L, n_max, label):
            a = agg[tc.id]
            a.evaluated += tc.evaluated
            a.passed = a.passed and tc.passed
            a.witnesses.extend(tc.witnesses)
    return list(agg.values())


def _labelled(corpus):
    for item in corpus:
        if isinstance(item, tuple):
            yield item
        else:
            yield None, item


def failures(results, include_errata=False):
    return [r for r in results if not r.passed and (include_errata or not r.erratum)]


def replay(witness: dict, L: ResiduatedLattice) -> bool:
    """Re-evaluate one witness on its lattice; True if the failure reproduces."""
    c = REGISTRY[witness["check"]]
    ctx = LatticeContext(L, witness.get("lattice"))
    if c.scope == "filter":
        args = (frozenset(L.index(x) for x in witness["filter"]),)
    elif c.scope == "pair":
        args = tuple(frozenset(L.index(x) for x in names) for names in witness["filters"])
    else:
        args = ()
    return _evaluate(c, ctx, args, witness["n"]) is not None


# ---------------------------------------------------------------------------
# implication diagrams

FILTER_NODES = ("implicative", "positive_implicative", "normal", "fantastic", "obstinate",
                "maximal", "semi_maximal", "prime2")

# edges proved directly, with the checks that confirm them
FILTER_PROVED = {
    ("positive_implicative", "implicative"): ("thm_lien1", "thm_l4"),
    ("positive_implicative", "normal"): ("prop_propo4",),
    ("positive_implicative", "fantastic"): ("prop_lp", "thm_l4"),
    ("fantastic", "normal"): ("prop_lpp",),
    ("obstinate", "maximal"): ("prop_propob3", "prop_propob4"),
    ("obstinate", "positive_implicative"): ("prop_propob3", "prop_lien12", "cor_propob31"),
    ("obstinate", "implicative"): ("prop_propob3",),
    ("obstinate", "prime2"): ("prop_propob4", "cor_propob31"),
    ("obstinate", "fantastic"): ("prop_propob5",),
}

LATTICE_NODES = ("implicative_rl", "positive_implicative_rl", "fantastic_rl", "obstinate_rl",
                 "locally_finite")

LATTICE_PROVED = {
    ("positive_implicative_rl", "implicative_rl"): ("prop_cor15", "cor_l90"),
    ("positive_implicative_rl", "fantastic_rl"): ("cor_l90",),
    ("obstinate_rl", "positive_implicative_rl"): ("prop_propob54", "rem_lien16"),
    ("positive_implicative_rl", "locally_finite"): ("cor_crch",),
}
# the last edge is only claimed for chains
LATTICE_CHAIN_ONLY = {("positive_implicative_rl", "locally_finite")}

STATUSES = ("proved-and-confirmed", "refuted-by-counterexample", "open")


@dataclass
class DiagramEdges:
    level: str
    n: int
    nodes: tuple[str, ...]
    edges: list[dict]

    def status(self, src, dst) -> str:
        for e in self.edges:
            if e["src"] == src and e["dst"] == dst:
                return e["status"]
        raise KeyError((src, dst))

    def edge(self, src, dst) -> dict:
        for e in self.edges:
            if e["src"] == src and e["dst"] == dst:
                return e
        raise KeyError((src, dst))

    def to_dict(self) -> dict:
        return {"level": self.level, "n": self.n, "nodes": list(self.nodes), "edges": self.edges}

    def to_dot(self) -> str:
        style = {"proved-and-confirmed": 'style=solid',
                 "refuted-by-counterexample": 'style=dashed, color=red',
                 "open": 'style=dotted, color=gray'}
        lines = ["digraph nfold {", f'  label="{self.level} level, n={self.n}";']
        lines += [f'  "{v}";' for v in self.nodes]
        for e in sorted(self.edges, key=lambda e: (e["src"], e["dst"])):
            lines.append(f'  "{e["src"]}" -> "{e["dst"]}" [status="{e["status"]}", {style[e["status"]]}];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def _filter_rows(ctx: LatticeContext, n: int):
    for F in ctx.proper:
        fc = ctx.fc(F)
        row = {k: fc.per_n[n][k] for k in ("implicative", "positive_implicative", "normal",
                                             "fantastic", "obstinate")}
        row["maximal"] = fc.maximal
        row["semi_maximal"] = fc.semi_maximal
        row["prime2"] = fc.primes.prime2
        yield {"lattice": ctx.label, "filter": ctx.names(F)}, row


def _lattice_rows(ctx: LatticeContext, n: int):
    c = ctx.cls
    row = {k: c.per_n[n][k] for k in LATTICE_NODES if k != "locally_finite"}
    row["locally_finite"] = c.is_locally_finite
    row["_chain"] = c.is_totally_ordered
    yield {"lattice": ctx.label}, row


def implication_diagram(corpus, n: int, level: str = "filter") -> DiagramEdges:
    """Edge status for every ordered pair of classes over the corpus.

    Fixed n is evaluated on each lattice with n_max = max(n, size).
    """
    items = list(_labelled(corpus))
    if not items:
        raise ValueError("implication_diagram needs a nonempty corpus")
    if level == "filter":
        nodes, proved, rows_of = FILTER_NODES, FILTER_PROVED, _filter_rows
    elif level == "lattice":
        nodes, proved, rows_of = LATTICE_NODES, LATTICE_PROVED, _lattice_rows
    else:
        raise ValueError(f"unknown level {level!r}")
    rows = []
    for label, L in items:
        ctx = LatticeContext(L, label, max(n, L.size))
        rows.extend(rows_of(ctx, n))
    edges = []
    for src in nodes:
        for dst in nodes:
            if src == dst:
                continue
            chain_only = level == "lattice" and (src, dst) in LATTICE_CHAIN_ONLY
            cex = [where for where, row in rows
                   if row[src] and not row[dst] and (not chain_only or row["_chain"])]
            if cex:
                status = "refuted-by-counterexample"
            elif (src, dst) in proved:
                status = "proved-and-confirmed"
            else:
                status = "open"
            edge = {"src": src, "dst": dst, "status": status, "sources": list(proved.get((src, dst), ())),
                    "counterexamples": cex}
            if chain_only:
                edge["scope"] = "totally ordered"
            edges.append(edge)
    return DiagramEdges(level, n, tuple(nodes), edges)
