"""Executable catalog of the operator laws, candidate-equation checking,
and characterization testing by operator perturbation.

Each catalog law is checked exhaustively over element tuples, using
exactly the relation it is stated with (set equality, ``<=1`` or
``~=1``) on the computed sets.  A failed report carries the variable
binding and both evaluated sides, and re-evaluating the law under that
binding reproduces the violation.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import product as _iterproduct
from typing import Callable, Mapping

from .errors import RequiresBoundedError
from .operators import OperatorTable, imp, imp_set, neg, neg_set
from .order import ElemSet, MeetSemilattice, names_of
from .terms import (
    Equation,
    Term,
    evaluate,
    parse_equation,
    render_equation,
    term_uses_top,
    term_variables,
)

LAW_IDS: tuple[str, ...] = (
    "T1.i", "T1.ii", "T1.iii", "T1.iv", "T1.v", "T1.vi", "T1.vii", "T1.viii",
    "P1", "P2", "P3", "P4",
    "T2.i", "T2.ii", "T2.iii", "T2.iv", "T2.v", "T2.vi", "T2.vii", "T2.viii",
    "T2.ix", "T2.x", "T2.xi", "T2.xii", "T2.xiii",
    "R1", "R2", "R3", "R4", "R5", "R6",
    "ADJ", "DIV", "MP", "NEGMEET",
)

_VARS = ("x", "y", "z")


@dataclass(frozen=True)
class Counterexample:
    """A variable binding that violates a law, with both evaluated sides."""

    binding: tuple[tuple[str, str], ...]
    lhs: tuple[str, ...] | None
    rhs: tuple[str, ...] | None

    def as_dict(self) -> dict[str, str]:
        return dict(self.binding)


@dataclass(frozen=True)
class LawReport:
    """Outcome of checking one law on one structure.

    ``holds`` is ``None`` when a bounded-only law was skipped on an
    unbounded structure.
    """

    law: str
    structure: str
    holds: bool | None
    counterexample: Counterexample | None = None
    note: str = ""

    @property
    def skipped(self) -> bool:
        return self.holds is None


@dataclass(frozen=True)
class PerturbedOperator:
    """An operator table with a handful of entries overridden."""

    base: OperatorTable
    overrides: Mapping

    def __post_init__(self):
        if not any(
            self.base.entries[key] != value for key, value in self.overrides.items()
        ):
            raise ValueError("a perturbation must change at least one entry")

    def entry(self, key) -> ElemSet:
        override = self.overrides.get(key)
        return override if override is not None else self.base.entries[key]


class _Tables:
    """Per-structure precomputation shared by all law checks."""

    __slots__ = (
        "s", "n", "up", "leq", "meet", "bottom", "top",
        "max_set", "single", "negt", "impt",
    )

    def __init__(self, s: MeetSemilattice):
        n = s.n
        self.s = s
        self.n = n
        self.up = s.up
        self.leq = s.leq
        self.meet = s.meet
        self.bottom = s.bottom
        self.top = s.top
        self.max_set = s.max_set
        self.single = s.singletons
        self.negt = tuple(neg(s, a) for a in range(n))
        self.impt = tuple(tuple(imp(s, a, b) for b in range(n)) for a in range(n))


def _leq1(up, a, b) -> bool:
    return all(not up[x].isdisjoint(b) for x in a)


def _approx1(up, a, b) -> bool:
    return _leq1(up, a, b) and _leq1(up, b, a)


def _setle(up, a, b) -> bool:
    return all(b <= up[x] for x in a)


def _anti(up, a) -> bool:
    return all(len(up[x] & a) == 1 for x in a)


def _msets(meet, a, b) -> ElemSet:
    return frozenset(meet[x][y] for x in a for y in b)


# --- negation laws ---------------------------------------------------------

def _t1_i(t, x):
    a = t.negt[x]
    return None if _anti(t.up, a) else (a, None)


def _t1_ii(t, x):
    lhs = t.single[x]
    rhs = neg_set(t.s, t.negt[x])
    return None if _leq1(t.up, lhs, rhs) else (lhs, rhs)


def _t1_iii(t, x, y):
    if not t.leq[x][y]:
        return None
    lhs, rhs = t.negt[y], t.negt[x]
    return None if _leq1(t.up, lhs, rhs) else (lhs, rhs)


def _t1_iv(t):
    lhs = t.negt[t.bottom]
    return None if lhs == t.max_set else (lhs, t.max_set)


def _t1_v(t, x):
    lhs = _msets(t.meet, t.single[x], t.negt[x])
    rhs = t.single[t.bottom]
    return None if lhs == rhs else (lhs, rhs)


def _t1_vi(t):
    zero_neg = t.negt[t.bottom]
    top_single = t.single[t.top]
    if zero_neg != top_single:
        return (zero_neg, top_single)
    one_neg = t.negt[t.top]
    bot_single = t.single[t.bottom]
    return None if one_neg == bot_single else (one_neg, bot_single)


def _t1_vii(t, x):
    lhs = _msets(t.meet, t.single[x], t.negt[t.bottom])
    rhs = t.single[x]
    return None if _approx1(t.up, lhs, rhs) else (lhs, rhs)


def _t1_viii(t, x, y):
    lhs = _msets(t.meet, t.single[x], t.negt[t.meet[x][y]])
    rhs = _msets(t.meet, t.single[x], t.negt[y])
    return None if _approx1(t.up, lhs, rhs) else (lhs, rhs)


# --- implication laws ------------------------------------------------------

def _t2_i(t, x, y):
    a = t.impt[x][y]
    return None if _anti(t.up, a) else (a, None)


def _t2_ii(t, x, y):
    if not t.leq[x][y]:
        return None
    lhs = t.impt[x][y]
    return None if lhs == t.max_set else (lhs, t.max_set)


def _t2_iii(t, x, y):
    if y not in t.max_set:
        return None
    rhs = t.impt[x][y]
    return None if y in rhs else (t.single[y], rhs)


def _t2_iv(t, x, y):
    lhs = t.single[y]
    rhs = t.impt[x][y]
    return None if _leq1(t.up, lhs, rhs) else (lhs, rhs)


def _t2_v(t, x, y):
    lhs = t.single[x]
    rhs = imp_set(t.s, t.impt[x][y], t.single[y])
    return None if _leq1(t.up, lhs, rhs) else (lhs, rhs)


def _t2_vi(t, x, y, z):
    if not t.leq[x][y]:
        return None
    a, b = t.impt[z][x], t.impt[z][y]
    if not _leq1(t.up, a, b):
        return (a, b)
    a, b = t.impt[y][z], t.impt[x][z]
    return None if _leq1(t.up, a, b) else (a, b)


def _t2_vii(t, x, y):
    lhs = _msets(t.meet, t.single[x], t.impt[x][y])
    rhs = t.single[t.meet[x][y]]
    return None if _approx1(t.up, lhs, rhs) else (lhs, rhs)


def _t2_viii(t, x, y, z):
    lhs = t.impt[x][t.meet[y][z]]
    rhs = _msets(t.meet, t.impt[x][y], t.impt[x][z])
    return None if _approx1(t.up, lhs, rhs) else (lhs, rhs)


def _t2_ix(t, x, y):
    lhs = _msets(t.meet, t.impt[x][y], t.single[y])
    rhs = t.single[y]
    return None if _approx1(t.up, lhs, rhs) else (lhs, rhs)


def _t2_x(t, y):
    lhs = t.impt[t.top][y]
    rhs = t.single[y]
    return None if lhs == rhs else (lhs, rhs)


def _t2_xi(t, x, y):
    lhs = _msets(t.meet, t.single[x], t.impt[y][y])
    rhs = t.single[x]
    return None if _approx1(t.up, lhs, rhs) else (lhs, rhs)


def _t2_xii(t, x, y):
    value = t.impt[x][y]
    if (value == t.single[t.top]) == t.leq[x][y]:
        return None
    return (value, t.single[t.top])


def _t2_xiii(t, x, y):
    lhs = t.single[y]
    rhs = t.impt[x][t.meet[x][y]]
    return None if _leq1(t.up, lhs, rhs) else (lhs, rhs)


def _r6(t, x, y, z):
    if not t.leq[y][z]:
        return None
    lhs, rhs = t.impt[x][y], t.impt[x][z]
    return None if _leq1(t.up, lhs, rhs) else (lhs, rhs)


# --- cross-operator laws ---------------------------------------------------

def _adj(t, x, y, z):
    premise = t.leq[t.meet[x][y]][z]
    conclusion = _leq1(t.up, t.single[x], t.impt[y][z])
    if premise == conclusion:
        return None
    return (t.single[t.meet[x][y]], t.impt[y][z])


def _mp(t, x, y):
    lhs = _msets(t.meet, t.single[x], t.impt[x][y])
    rhs = t.single[y]
    return None if _setle(t.up, lhs, rhs) else (lhs, rhs)


def _negmeet(t, x, y):
    lhs = _msets(t.meet, t.negt[x], t.negt[y])
    rhs = t.negt[t.meet[x][y]]
    return None if _leq1(t.up, lhs, rhs) else (lhs, rhs)


@dataclass(frozen=True)
class Law:
    id: str
    arity: int
    bounded_only: bool
    statement: str
    fn: Callable


_CATALOG: dict[str, Law] = {}


def _law(law_id, arity, statement, fn, bounded_only=False):
    _CATALOG[law_id] = Law(law_id, arity, bounded_only, statement, fn)


_law("T1.i", 1, "x' is an antichain", _t1_i)
_law("T1.ii", 1, "x <=1 x''", _t1_ii)
_law("T1.iii", 2, "x <= y implies y' <=1 x'", _t1_iii)
_law("T1.iv", 0, "0' = Max S", _t1_iv)
_law("T1.v", 1, "x & x' = 0", _t1_v)
_law("T1.vi", 0, "0' = 1 and 1' = 0", _t1_vi, bounded_only=True)
_law("T1.vii", 1, "x & 0' ~=1 x", _t1_vii)
_law("T1.viii", 2, "x & (x & y)' ~=1 x & y'", _t1_viii)
_law("P1", 1, "x' is an antichain", _t1_i)
_law("P2", 1, "x & 0' ~=1 x", _t1_vii)
_law("P3", 1, "x & x' = 0", _t1_v)
_law("P4", 2, "x & (x & y)' ~=1 x & y'", _t1_viii)
_law("T2.i", 2, "(x -> y) is an antichain", _t2_i)
_law("T2.ii", 2, "x <= y implies (x -> y) = Max S", _t2_ii)
_law("T2.iii", 2, "y in Max S implies y in (x -> y)", _t2_iii)
_law("T2.iv", 2, "y <=1 (x -> y)", _t2_iv)
_law("T2.v", 2, "x <=1 ((x -> y) -> y)", _t2_v)
_law("T2.vi", 3, "x <= y implies (z -> x) <=1 (z -> y) and (y -> z) <=1 (x -> z)",
     _t2_vi)
_law("T2.vii", 2, "x & (x -> y) ~=1 x & y", _t2_vii)
_law("T2.viii", 3, "(x -> (y & z)) ~=1 (x -> y) & (x -> z)", _t2_viii)
_law("T2.ix", 2, "(x -> y) & y ~=1 y", _t2_ix)
_law("T2.x", 1, "(1 -> x) = x", _t2_x, bounded_only=True)
_law("T2.xi", 2, "x & (y -> y) ~=1 x", _t2_xi)
_law("T2.xii", 2, "(x -> y) = 1 iff x <= y", _t2_xii, bounded_only=True)
_law("T2.xiii", 2, "y <=1 (x -> (x & y))", _t2_xiii)
_law("R1", 2, "(x -> y) is an antichain", _t2_i)
_law("R2", 2, "x & (x -> y) ~=1 x & y", _t2_vii)
_law("R3", 2, "(x -> y) & y ~=1 y", _t2_ix)
_law("R4", 3, "(x -> (y & z)) ~=1 (x -> y) & (x -> z)", _t2_viii)
_law("R5", 2, "x & (y -> y) ~=1 x", _t2_xi)
_law("R6", 3, "y <= z implies (x -> y) <=1 (x -> z)", _r6)
_law("ADJ", 3, "x & y <= z iff x <=1 (y -> z)", _adj)
_law("DIV", 2, "x & (x -> y) ~=1 x & y", _t2_vii)
_law("MP", 2, "x & (x -> y) <= y", _mp)
_law("NEGMEET", 2, "x' & y' <=1 (x & y)'", _negmeet)

assert tuple(_CATALOG) == LAW_IDS


def catalog() -> Mapping[str, Law]:
    """The closed law catalog, in checking order."""
    return dict(_CATALOG)


def _labels(s, members):
    return None if members is None else names_of(s, members)


def _label(s, members) -> str:
    return ",".join(names_of(s, members))


def _run(t: _Tables, law: Law) -> LawReport:
    for binding in _iterproduct(range(t.n), repeat=law.arity):
        sides = law.fn(t, *binding)
        if sides is not None:
            s = t.s
            bound = tuple(
                (_VARS[k], s.elements[i]) for k, i in enumerate(binding)
            )
            cex = Counterexample(bound, _labels(s, sides[0]), _labels(s, sides[1]))
            return LawReport(law.id, s.name, False, cex, note=law.statement)
    return LawReport(law.id, t.s.name, True, note=law.statement)


def check_law(s: MeetSemilattice, law_id: str) -> LawReport:
    """Exhaustively check one catalog law on one structure.

    Checking a bounded-only law on an unbounded structure is an error,
    not a failure.
    """
    law = _CATALOG.get(law_id)
    if law is None:
        raise ValueError(f"unknown law {law_id!r}")
    if law.bounded_only and s.top is None:
        raise RequiresBoundedError(f"law {law_id} needs a top element")
    return _run(_Tables(s), law)


def check_all(s: MeetSemilattice) -> list[LawReport]:
    """Check the whole catalog; bounded-only laws are skipped when unbounded."""
    t = _Tables(s)
    out = []
    for law_id in LAW_IDS:
        law = _CATALOG[law_id]
        if law.bounded_only and s.top is None:
            out.append(
                LawReport(law_id, s.name, None, note="skipped: needs a top element")
            )
        else:
            out.append(_run(t, law))
    return out


def recheck(s: MeetSemilattice, report: LawReport) -> bool:
    """Re-evaluate a failed catalog report; True when the violation reproduces."""
    law = _CATALOG[report.law]
    index = s.index
    binding = tuple(index[name] for _, name in report.counterexample.binding)
    return law.fn(_Tables(s), *binding) is not None


# --- candidate equations ---------------------------------------------------

def check_equation(
    s: MeetSemilattice,
    lhs: Term | Equation | str,
    rhs: Term | None = None,
    relation: str | None = None,
) -> LawReport:
    """Exhaustively check a candidate law over the term language.

    Accepts either a full equation (string or ``Equation``) or two terms
    plus a relation.  Reports the first counterexample in declaration
    order of the variable bindings.
    """
    if rhs is None:
        eq = lhs if isinstance(lhs, Equation) else parse_equation(lhs)
    else:
        if relation is None:
            raise ValueError("a relation is required when passing two terms")
        eq = Equation(lhs, relation, rhs)
    if s.top is None and (term_uses_top(eq.lhs) or term_uses_top(eq.rhs)):
        raise RequiresBoundedError("the equation uses constant 1 but the structure has no top")
    text = render_equation(eq)
    variables = sorted(term_variables(eq.lhs) | term_variables(eq.rhs))
    up = s.up
    for values in _iterproduct(range(s.n), repeat=len(variables)):
        env = dict(zip(variables, values))
        left = evaluate(s, eq.lhs, env)
        right = evaluate(s, eq.rhs, env)
        if eq.relation == "=":
            ok = left == right
        elif eq.relation == "<=1":
            ok = _leq1(up, left, right)
        else:
            ok = _approx1(up, left, right)
        if not ok:
            bound = tuple((v, s.elements[i]) for v, i in zip(variables, values))
            cex = Counterexample(bound, _labels(s, left), _labels(s, right))
            return LawReport("equation", s.name, False, cex, note=text)
    return LawReport("equation", s.name, True, note=text)


# --- characterization by perturbation --------------------------------------

def _axioms_neg(t: _Tables, get) -> str | None:
    """First violated axiom (P1..P4) of a unary operator, or None."""
    up, meet, single = t.up, t.meet, t.single
    n = t.n
    zero_entry = get(t.bottom)
    bot_single = single[t.bottom]
    for x in range(n):
        if not _anti(up, get(x)):
            return "P1"
    for x in range(n):
        if not _approx1(up, _msets(meet, single[x], zero_entry), single[x]):
            return "P2"
    for x in range(n):
        if _msets(meet, single[x], get(x)) != bot_single:
            return "P3"
    for x in range(n):
        row = meet[x]
        sx = single[x]
        for y in range(n):
            if not _approx1(
                up, _msets(meet, sx, get(row[y])), _msets(meet, sx, get(y))
            ):
                return "P4"
    return None


def _axioms_imp(t: _Tables, get) -> str | None:
    """First violated axiom (R1..R6) of a binary operator, or None."""
    up, meet, single, leq = t.up, t.meet, t.single, t.leq
    n = t.n
    for x in range(n):
        for y in range(n):
            if not _anti(up, get((x, y))):
                return "R1"
    for x in range(n):
        sx = single[x]
        row = meet[x]
        for y in range(n):
            if not _approx1(up, _msets(meet, sx, get((x, y))), single[row[y]]):
                return "R2"
    for x in range(n):
        for y in range(n):
            if not _approx1(up, _msets(meet, get((x, y)), single[y]), single[y]):
                return "R3"
    for x in range(n):
        for y in range(n):
            for z in range(n):
                if not _approx1(
                    up,
                    get((x, meet[y][z])),
                    _msets(meet, get((x, y)), get((x, z))),
                ):
                    return "R4"
    for x in range(n):
        sx = single[x]
        for y in range(n):
            if not _approx1(up, _msets(meet, sx, get((y, y))), sx):
                return "R5"
    for y in range(n):
        for z in range(n):
            if leq[y][z]:
                for x in range(n):
                    if not _leq1(up, get((x, y)), get((x, z))):
                        return "R6"
    return None


def _random_antichain(t: _Tables, rng: random.Random, avoid: ElemSet) -> ElemSet | None:
    """A random non-empty antichain different from ``avoid``, if one exists."""
    up = t.up
    n = t.n
    for _ in range(500):
        members = frozenset(x for x in range(n) if rng.random() < 0.5)
        if not members:
            continue
        cand = frozenset(x for x in members if len(up[x] & members) == 1)
        if cand != avoid:
            return cand
    for x in range(n):
        if frozenset((x,)) != avoid:
            return frozenset((x,))
    return None


def verify_neg_characterization(
    s: MeetSemilattice, trials: int = 100, seed: int = 0
) -> LawReport:
    """Check that the canonical negation satisfies P1..P4 and that random
    single-entry perturbations of its table all violate some axiom.

    A perturbation passing every axiom yet differing from the canonical
    table is reported as a falsification; the axioms are supposed to pin
    the operator down uniquely.
    """
    if trials < 1:
        raise ValueError("at least one trial is required")
    t = _Tables(s)
    base = OperatorTable("neg", s, {a: t.negt[a] for a in range(t.n)})
    bad = _axioms_neg(t, lambda a: t.negt[a])
    if bad is not None:
        return LawReport(
            "CHAR-NEG", s.name, False, note=f"canonical negation violates {bad}"
        )
    rng = random.Random(seed)
    rejected = 0
    for _ in range(trials):
        entry = rng.randrange(t.n)
        override = _random_antichain(t, rng, t.negt[entry])
        if override is None:
            break
        pert = PerturbedOperator(base, {entry: override})
        bad = _axioms_neg(t, pert.entry)
        if bad is None:
            cex = Counterexample(
                (("entry", s.elements[entry]), ("override", _label(s, override))),
                None,
                None,
            )
            return LawReport(
                "CHAR-NEG", s.name, False, cex,
                note="FALSIFICATION: perturbed table satisfies P1-P4",
            )
        rejected += 1
    return LawReport(
        "CHAR-NEG", s.name, True,
        note=f"canonical table passes P1-P4; {rejected} perturbations each violated an axiom",
    )


def verify_imp_characterization(
    s: MeetSemilattice, trials: int = 100, seed: int = 0
) -> LawReport:
    """Pair-indexed analogue of ``verify_neg_characterization`` with R1..R6."""
    if trials < 1:
        raise ValueError("at least one trial is required")
    t = _Tables(s)
    base = OperatorTable(
        "imp", s, {(a, b): t.impt[a][b] for a in range(t.n) for b in range(t.n)}
    )
    bad = _axioms_imp(t, lambda key: t.impt[key[0]][key[1]])
    if bad is not None:
        return LawReport(
            "CHAR-IMP", s.name, False, note=f"canonical implication violates {bad}"
        )
    rng = random.Random(seed)
    rejected = 0
    for _ in range(trials):
        entry = (rng.randrange(t.n), rng.randrange(t.n))
        override = _random_antichain(t, rng, t.impt[entry[0]][entry[1]])
        if override is None:
            break
        pert = PerturbedOperator(base, {entry: override})
        bad = _axioms_imp(t, pert.entry)
        if bad is None:
            entry_label = f"({s.elements[entry[0]]},{s.elements[entry[1]]})"
            cex = Counterexample(
                (("entry", entry_label), ("override", _label(s, override))),
                None,
                None,
            )
            return LawReport(
                "CHAR-IMP", s.name, False, cex,
                note="FALSIFICATION: perturbed table satisfies R1-R6",
            )
        rejected += 1
    return LawReport(
        "CHAR-IMP", s.name, True,
        note=f"canonical table passes R1-R6; {rejected} perturbations each violated an axiom",
    )


def check_remark_products(s: MeetSemilattice) -> LawReport:
    """Check that every carrier element is sharp."""
    for a in range(s.n):
        image = neg_set(s, neg(s, a))
        if image != frozenset((a,)):
            cex = Counterexample(
                (("x", s.elements[a]),), _labels(s, image), (s.elements[a],)
            )
            return LawReport("ALLSHARP", s.name, False, cex)
    return LawReport("ALLSHARP", s.name, True)
