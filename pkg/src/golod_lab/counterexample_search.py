"""Necessary combinatorial conditions for trivial-product non-Golod ideals,
and a small search harness over squarefree support patterns.

Any squarefree ideal with trivial products but a nonzero ternary Massey
product of three generator classes must carry the role pattern below: three
pairwise disjoint supports a, b, c; bridges ab, bc, ca between consecutive
ones; covering conditions b inside ab|bc and a inside ab|ca (or the mirror
for c); and, because bridges are coprime to the opposite corner, one further
generator per bridge-corner pair.  The search enumerates such patterns with
canonical variable blocks and runs the full homological pipeline on matches.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from itertools import combinations

from .exact_linalg import QQ
from .massey_golod import all_products_trivial, pair_criterion, ternary_massey_generators
from .monomial_core import Monomial, MonomialIdeal, counterexample_ideal, minimalize, polarize


@dataclass(frozen=True)
class RoleAssignment:
    """Generator indices playing the named roles in a squarefree ideal.

    ``bc_sharp_a`` and ``ca_sharp_b`` may refer to the same generator; all
    other roles must be distinct.
    """

    a: int
    b: int
    c: int
    ab: int
    bc: int
    ab_sharp_c: int
    bc_sharp_a: int
    ca: int | None = None
    ca_sharp_b: int | None = None

    def core(self):
        roles = [self.a, self.b, self.c, self.ab, self.bc]
        if self.ca is not None:
            roles.append(self.ca)
        return roles


@dataclass(frozen=True)
class PatternReport:
    """Per-condition outcome of the role-pattern check."""

    disjoint_abc: bool
    ab_bridges: bool
    bc_bridges: bool
    ca_bridges: bool | None
    b_covered: bool  # support of b inside ab union bc
    a_or_c_covered: bool
    ab_sharp_c_exists: bool
    bc_sharp_a_exists: bool
    ca_sharp_b_exists: bool

    @property
    def all_ok(self):
        values = [
            self.disjoint_abc,
            self.ab_bridges,
            self.bc_bridges,
            self.b_covered,
            self.a_or_c_covered,
            self.ab_sharp_c_exists,
            self.bc_sharp_a_exists,
            self.ca_sharp_b_exists,
        ]
        if self.ca_bridges is not None:
            values.append(self.ca_bridges)
        return all(values)

    def failures(self):
        out = []
        for name, value in self.__dict__.items():
            if value is False:
                out.append(name)
        return out


def _bridges(sup_ij, sup_i, sup_j):
    return sup_ij <= (sup_i | sup_j) and sup_ij & sup_i and sup_ij & sup_j


def _sharp_exists(ideal, i, j, exclude):
    target = ideal.gens[i].lcm(ideal.gens[j])
    return any(
        k not in exclude and g.divides(target) for k, g in enumerate(ideal.gens)
    )


def pattern_check(ideal, assignment):
    """Evaluate the role-pattern conditions on a squarefree ideal."""
    if not ideal.is_squarefree:
        raise ValueError("pattern check applies to squarefree ideals")
    g = ideal.gens
    s = {name: g[idx].support for name, idx in (
        ("a", assignment.a), ("b", assignment.b), ("c", assignment.c),
        ("ab", assignment.ab), ("bc", assignment.bc),
    )}
    sup_ca = g[assignment.ca].support if assignment.ca is not None else None
    disjoint = (
        not (s["a"] & s["b"]) and not (s["b"] & s["c"]) and not (s["a"] & s["c"])
    )
    ab_br = bool(_bridges(s["ab"], s["a"], s["b"]))
    bc_br = bool(_bridges(s["bc"], s["b"], s["c"]))
    ca_br = bool(_bridges(sup_ca, s["c"], s["a"])) if sup_ca is not None else None
    b_cov = s["b"] <= (s["ab"] | s["bc"])
    a_cov = sup_ca is not None and s["a"] <= (s["ab"] | sup_ca)
    c_cov = sup_ca is not None and s["c"] <= (s["bc"] | sup_ca)
    core = set(assignment.core())
    return PatternReport(
        disjoint_abc=disjoint,
        ab_bridges=ab_br,
        bc_bridges=bc_br,
        ca_bridges=ca_br,
        b_covered=bool(b_cov),
        a_or_c_covered=bool(a_cov or c_cov),
        ab_sharp_c_exists=_sharp_exists(ideal, assignment.ab, assignment.c, core),
        bc_sharp_a_exists=_sharp_exists(ideal, assignment.bc, assignment.a, core),
        ca_sharp_b_exists=(
            _sharp_exists(ideal, assignment.ca, assignment.b, core)
            if assignment.ca is not None
            else False
        ),
    )


@dataclass(frozen=True)
class MinimalityReport:
    n_vars: int
    n_gens: int
    meets_lower_bounds: bool  # at least 5 variables and 8 generators
    meets_bounds_exactly: bool

    def describe(self):
        status = (
            "meets the lower bounds with equality"
            if self.meets_bounds_exactly
            else ("meets the lower bounds" if self.meets_lower_bounds else "below the lower bounds")
        )
        return f"{self.n_vars} variables, {self.n_gens} generators: {status}"


def minimality_report(ideal):
    """Compare variable and generator counts against the structural lower bounds.

    A trivial-product non-Golod monomial quotient needs at least 5 variables
    and at least 8 minimal generators.
    """
    n, g = ideal.n_vars, ideal.n_gens
    return MinimalityReport(n, g, n >= 5 and g >= 8, n == 5 and g == 8)


@dataclass
class SearchStats:
    candidates: int = 0
    pattern_hits: int = 0
    survivors: int = 0
    budget_exhausted: bool = False


@dataclass(frozen=True)
class SearchHit:
    serial: int
    ideal: MonomialIdeal
    assignment: RoleAssignment
    degree_one_products_trivial: bool
    massey_nonzero: bool
    all_products_trivial: bool

    @property
    def is_counterexample(self):
        return (
            self.degree_one_products_trivial
            and self.massey_nonzero
            and self.all_products_trivial
        )


def seed_pattern():
    """The polarized built-in example with its canonical role assignment."""
    pol, _ = polarize(counterexample_ideal())
    assignment = RoleAssignment(
        a=0, b=3, c=6, ab=1, bc=4, ca=7,
        ab_sharp_c=2, bc_sharp_a=5, ca_sharp_b=5,
    )
    return pol, assignment


def _degree_one_products_trivial(ideal):
    """All products of generator classes vanish, by the combinatorial tests."""
    for i, j in combinations(range(ideal.n_gens), 2):
        if ideal.gens[i].coprime(ideal.gens[j]):
            if not pair_criterion(ideal, i, j):
                return False
    return True


def _evaluate_candidate(serial, ideal, assignment, field):
    report = pattern_check(ideal, assignment)
    if not report.all_ok:
        return None
    if not _degree_one_products_trivial(ideal):
        return None
    res = ternary_massey_generators(
        ideal, field, assignment.a, assignment.b, assignment.c
    )
    if not res.defined or res.value_is_zero:
        return None
    full_ok, _ = all_products_trivial(ideal, field)
    return SearchHit(serial, ideal, assignment, True, True, full_ok)


def _subsets_between(universe, side1, side2):
    """Subsets of the union meeting both sides, largest first (generic first)."""
    u = sorted(side1 | side2)
    out = []
    for size in range(len(u), 1, -1):
        for c in combinations(u, size):
            cs = frozenset(c)
            if cs & side1 and cs & side2 and cs != side1 | side2:
                out.append(cs)
    return out


def _mono(n, sup):
    return Monomial(tuple(1 if i in sup else 0 for i in range(n)))


def _candidate_patterns(n_vars, max_gens):
    """Deterministic stream of role patterns over canonical variable blocks.

    Blocks a, b, c take the first variables in order; bridge and extra roles
    range over subsets.  Size splits are enumerated largest-first, matching
    the make-everything-as-generic-as-possible heuristic.
    """
    if max_gens < 8:
        return
    sizes = []
    for na in range(n_vars - 2, 1, -1):
        for nb in range(n_vars - na - 1, 1, -1):
            for nc in range(n_vars - na - nb, 0, -1):
                sizes.append((na, nb, nc))
    for na, nb, nc in sizes:
        a = frozenset(range(na))
        b = frozenset(range(na, na + nb))
        c = frozenset(range(na + nb, na + nb + nc))
        for ab in _subsets_between(a | b, a, b):
            if a <= ab or b <= ab:
                continue
            for bc in _subsets_between(b | c, b, c):
                if b <= bc or c <= bc or not b <= (ab | bc):
                    continue
                for ca in _subsets_between(c | a, c, a):
                    if c <= ca or a <= ca:
                        continue
                    if not (a <= (ab | ca) or c <= (bc | ca)):
                        continue
                    core = [a, b, c, ab, bc, ca]
                    if len(set(core)) != 6:
                        continue
                    for sharps in _sharp_choices(core, ab, bc, ca, a, b, c, max_gens):
                        yield core, sharps


def _sharp_choices(core, ab, bc, ca, a, b, c, max_gens):
    """Choices of the three forced extra generators (two may coincide)."""
    core_set = set(core)

    def options(bridge, corner):
        out = []
        union = sorted(bridge | corner)
        for size in range(len(union) - 1, 1, -1):
            for comb in combinations(union, size):
                cs = frozenset(comb)
                if cs in core_set:
                    continue
                if cs & bridge and cs & corner:
                    out.append(cs)
        return out

    for s_ab in options(ab, c):
        for s_bc in options(bc, a):
            if s_bc == s_ab:
                continue
            for s_ca in options(ca, b):
                if s_ca == s_ab:
                    continue
                gens = {s_ab, s_bc, s_ca}
                if len(core_set | gens) > max_gens:
                    continue
                yield (s_ab, s_bc, s_ca)


def search(n_vars, max_gens, budget, seeds=None, field=QQ, stats=None):
    """Yield surviving candidates of the pattern search.

    ``budget`` is either a candidate-count limit or a (count, seconds) pair.
    ``seeds`` are (ideal, assignment) pairs checked before the enumeration;
    by default the polarized built-in pattern is seeded when it fits the
    requested size.  The stream is deterministic; stats (if given) record
    how the budget was spent.
    """
    if stats is None:
        stats = SearchStats()
    if isinstance(budget, tuple):
        max_candidates, max_seconds = budget
    else:
        max_candidates, max_seconds = budget, None
    start = time.monotonic()
    if seeds is None:
        seeds = []
        pol, assignment = seed_pattern()
        if pol.n_vars <= n_vars and pol.n_gens <= max_gens:
            seeds.append((pol, assignment))
    serial = 0
    for ideal, assignment in seeds:
        if serial >= max_candidates:
            stats.budget_exhausted = True
            return
        stats.candidates += 1
        hit = _evaluate_candidate(serial, ideal, assignment, field)
        serial += 1
        if hit is not None:
            stats.pattern_hits += 1
            if hit.is_counterexample:
                stats.survivors += 1
            yield hit
    for core, sharps in _candidate_patterns(n_vars, max_gens):
        if serial >= max_candidates or (
            max_seconds is not None and time.monotonic() - start > max_seconds
        ):
            stats.budget_exhausted = True
            return
        a, b, c, ab, bc, ca = core
        supports = [a, ab, b, bc, c, ca]
        for s in sharps:
            if s not in supports:
                supports.append(s)
        gens = minimalize([_mono(n_vars, s) for s in supports])
        if len(gens) != len(supports):
            continue  # a role was swallowed by divisibility; not this pattern
        ideal = MonomialIdeal(
            tuple(f"v{i}" for i in range(n_vars)), tuple(gens)
        )
        index = {g.support: k for k, g in enumerate(gens)}
        assignment = RoleAssignment(
            a=index[a], b=index[b], c=index[c],
            ab=index[ab], bc=index[bc], ca=index[ca],
            ab_sharp_c=index[sharps[0]],
            bc_sharp_a=index[sharps[1]],
            ca_sharp_b=index[sharps[2]],
        )
        stats.candidates += 1
        hit = _evaluate_candidate(serial, ideal, assignment, field)
        serial += 1
        if hit is not None:
            stats.pattern_hits += 1
            if hit.is_counterexample:
                stats.survivors += 1
            yield hit
