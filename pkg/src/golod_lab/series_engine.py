"""Truncated Poincare-Betti series: the Koszul-side bound and the resolution side.

The bound series comes straight from the Betti numbers.  The resolution side
is computed honestly: a minimal graded free resolution of the residue field
over the quotient ring is built step by step, splitting every kernel by
multidegree (each multidegree piece involves at most one standard monomial per
free generator, which keeps the exact linear algebra tiny).

No a-priori internal-degree bound exists in general, so each step runs under a
cap policy.  The default policy derives a certified cap for step j from the
coefficientwise inequality between the two series: internal degrees where the
bound series vanishes cannot support resolution generators.  The alternative
"windowed" policy uses the cap (max generator degree) * j + n and re-extends
by one window, failing loudly if new generators show up there.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .exact_linalg import Matrix, extend_independent, kernel_basis, sparse_reduce_columns
from .homology_engine import betti


class CapInsufficientError(RuntimeError):
    """A resolution step found generators at its cap boundary; results unusable."""


@dataclass(frozen=True)
class SeriesTrunc:
    """Truncated power series in one variable with exact coefficients."""

    coeffs: tuple
    order: int

    def __post_init__(self):
        if len(self.coeffs) != self.order + 1:
            raise ValueError("coefficient count does not match the order")

    def __getitem__(self, i):
        return self.coeffs[i]

    def __str__(self):
        return "(" + ", ".join(str(c) for c in self.coeffs) + ")"


def expand_rational(numerator, denominator, n):
    """Exact expansion of numerator/denominator to order n (constant term != 0)."""
    den = [Fraction(c) for c in denominator]
    num = [Fraction(c) for c in numerator]
    if not den or den[0] == 0:
        raise ValueError("denominator has zero constant term")
    coeffs = []
    for k in range(n + 1):
        acc = num[k] if k < len(num) else Fraction(0)
        for j in range(1, min(k, len(den) - 1) + 1):
            acc -= den[j] * coeffs[k - j]
        coeffs.append(acc / den[0])
    if all(c.denominator == 1 for c in coeffs):
        coeffs = [int(c) for c in coeffs]
    return SeriesTrunc(tuple(coeffs), n)


def series_compare(p, q):
    """First index (up to the common order) where coefficients differ, with sign.

    Returns None on agreement, else ``(index, -1)`` when p is smaller there
    and ``(index, +1)`` when p is larger.
    """
    upto = min(p.order, q.order)
    for k in range(upto + 1):
        if p[k] != q[k]:
            return (k, -1 if p[k] < q[k] else 1)
    return None


def q_series(ideal, field, n):
    """Series bound from Koszul homology: (1+t)^vars over 1 - sum b_i t^(i+1)."""
    bd = betti(ideal, field)
    nv = ideal.n_vars
    num = [0] * (nv + 1)
    binom = 1
    for k in range(nv + 1):
        num[k] = binom
        binom = binom * (nv - k) // (k + 1)
    pd = bd.projective_dimension
    den = [0] * (pd + 2)
    den[0] = 1
    for i in range(1, pd + 1):
        den[i + 1] = -bd.total(i)
    return expand_rational(num, den, n)


# ---------------------------------------------------------------------------
# standard monomials of the quotient ring


def _compositions(total, parts):
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


@lru_cache(maxsize=None)
def _std_monomials(ideal, d):
    """Exponent tuples of degree d not divisible by any generator, sorted."""
    from .monomial_core import Monomial

    out = []
    for exps in _compositions(d, ideal.n_vars):
        if not ideal.contains_monomial(Monomial(exps)):
            out.append(exps)
    out.sort()
    return tuple(out)


@lru_cache(maxsize=None)
def _std_set(ideal, d):
    return frozenset(_std_monomials(ideal, d))


def _is_std(ideal, exps):
    return exps in _std_set(ideal, sum(exps))


# ---------------------------------------------------------------------------
# the resolution engine


@dataclass(frozen=True)
class StepReport:
    step: int
    cap: int
    generators: int
    degrees: tuple  # (internal degree, count) pairs
    note: str


@dataclass(frozen=True)
class CapReport:
    policy: str
    steps: tuple
    passed: bool

    def describe(self):
        lines = [f"cap policy: {self.policy} ({'passed' if self.passed else 'FAILED'})"]
        for s in self.steps:
            degs = ", ".join(f"{d}:{c}" for d, c in s.degrees) or "-"
            lines.append(
                f"  step {s.step}: cap {s.cap}, {s.generators} generators (by degree {degs}); {s.note}"
            )
        return "\n".join(lines)


def _q_bigraded(ideal, field, n):
    """Coefficients of the bound series refined by internal degree: j -> {d: coeff}."""
    bd = betti(ideal, field)
    den_terms = {}
    for (i, u), dim in bd.multigraded:
        if i >= 1:
            key = (i + 1, sum(u))
            den_terms[key] = den_terms.get(key, 0) + dim
    inv = {(0, 0): 1}
    layer = {(0, 0): 1}
    while True:
        nxt = {}
        for (tj, yd), c in layer.items():
            for (ti, yi), b in den_terms.items():
                t2 = tj + ti
                if t2 > n:
                    continue
                key = (t2, yd + yi)
                nxt[key] = nxt.get(key, 0) + c * b
        if not nxt:
            break
        for k, c in nxt.items():
            inv[k] = inv.get(k, 0) + c
        layer = nxt
    nv = ideal.n_vars
    out = {}
    binom = 1
    num = []
    for k in range(nv + 1):
        num.append(binom)
        binom = binom * (nv - k) // (k + 1)
    for (tj, yd), c in inv.items():
        for k in range(nv + 1):
            if tj + k > n:
                continue
            key = (tj + k, yd + k)
            out[key] = out.get(key, 0) + c * num[k]
    table = {}
    for (tj, yd), c in out.items():
        if c:
            table.setdefault(tj, {})[yd] = c
    return table


def _resolution_step(ideal, field, gens, phi, cap):
    """One minimal-resolution step, multidegree by multidegree.

    ``gens``: multidegrees of the current free module's generators.
    ``phi``: per generator, the image as a map (previous gen index, exps) -> coeff.
    Returns (new generator multidegrees, new phi, counts per internal degree).
    """
    zero = field.zero()
    by_u = {}
    for gi, dg in enumerate(gens):
        base = sum(dg)
        for d in range(0, cap - base + 1):
            for m in _std_monomials(ideal, d):
                u = tuple(a + b for a, b in zip(dg, m))
                by_u.setdefault(u, []).append(gi)
    kernels = {}
    new_gens = []
    new_phi = []
    counts = {}
    n = ideal.n_vars
    for u in sorted(by_u, key=lambda t: (sum(t), t)):
        basis = sorted(by_u[u])
        pos = {gi: k for k, gi in enumerate(basis)}
        columns = []
        row_keys = {}
        for gi in basis:
            col = {}
            for (pj, me), c in phi[gi].items():
                target = tuple(a + b - bb for a, b, bb in zip(u, me, gens[gi]))
                # target = u - prev_degrees[pj]; dead when it leaves the ring
                if not _is_std(ideal, target):
                    continue
                if pj not in row_keys:
                    row_keys[pj] = len(row_keys)
                col[row_keys[pj]] = field.add(col.get(row_keys[pj], zero), c)
            columns.append(col)
        nrows = len(row_keys)
        rows = [[zero] * len(basis) for _ in range(nrows)]
        for j, col in enumerate(columns):
            for r, c in col.items():
                rows[r][j] = c
        mat = Matrix.from_rows(field, rows) if nrows else Matrix.zero(field, 0, len(basis))
        kern = kernel_basis(mat)
        old = []
        for v in range(n):
            prev_u = tuple(a - (1 if k == v else 0) for k, a in enumerate(u))
            if min(prev_u) < 0:
                continue
            stored = kernels.get(prev_u)
            if not stored:
                continue
            pbasis, pvecs = stored
            for kv in pvecs:
                lifted = [zero] * len(basis)
                for k, gi in enumerate(pbasis):
                    if kv[k] == 0:
                        continue
                    mono = tuple(a - b for a, b in zip(u, gens[gi]))
                    if not _is_std(ideal, mono):
                        continue
                    lifted[pos[gi]] = kv[k]
                old.append(tuple(lifted))
        chosen = extend_independent(field, old, kern)
        kernels[u] = (basis, [tuple(v) for v in kern])
        for k in chosen:
            vec = kern[k]
            image = {}
            for p, gi in enumerate(basis):
                if vec[p] != 0:
                    mono = tuple(a - b for a, b in zip(u, gens[gi]))
                    image[(gi, mono)] = vec[p]
            new_gens.append(u)
            new_phi.append(image)
            counts[sum(u)] = counts.get(sum(u), 0) + 1
    return new_gens, new_phi, counts


def p_series(ideal, field, n, degree_cap_policy="serre"):
    """Coefficients of the resolution-side series to order n, with a cap report.

    Builds the minimal graded free resolution of the residue field over the
    quotient ring; the coefficient of t^j is the rank of the j-th free module.
    """
    if degree_cap_policy not in ("serre", "windowed"):
        raise ValueError(f"unknown cap policy {degree_cap_policy!r}")
    coeffs = [1]
    steps = []
    if n == 0:
        return SeriesTrunc((1,), 0), CapReport(degree_cap_policy, (), True)
    qtable = _q_bigraded(ideal, field, n) if degree_cap_policy == "serre" else None
    maxgen = max((g.degree for g in ideal.gens), default=1)
    nv = ideal.n_vars
    # first syzygy module of the residue field is the irrelevant ideal
    gens = []
    phi = []
    for v in range(nv):
        e = tuple(1 if k == v else 0 for k in range(nv))
        if _is_std(ideal, e):
            gens.append(e)
            phi.append({(0, e): field.one()})
    coeffs.append(len(gens))
    steps.append(StepReport(1, 1, len(gens), ((1, len(gens)),), "ring variables"))
    for j in range(2, n + 1):
        if not gens:
            coeffs.append(0)
            steps.append(StepReport(j, 0, 0, (), "resolution already finished"))
            continue
        if degree_cap_policy == "serre":
            bound = qtable.get(j, {})
            cap = max(bound) if bound else 0
            note = "series-bound cap"
        else:
            cap = maxgen * j + nv
            note = f"windowed cap, stability window +{maxgen}"
        search_cap = cap if degree_cap_policy == "serre" else cap + maxgen
        new_gens, new_phi, counts = _resolution_step(ideal, field, gens, phi, search_cap)
        if degree_cap_policy == "serre":
            for d, c in counts.items():
                if c > qtable.get(j, {}).get(d, 0):
                    raise AssertionError(
                        f"step {j} found {c} generators in degree {d}, above the series bound"
                    )
        else:
            offenders = {d: c for d, c in counts.items() if d > cap}
            if offenders:
                raise CapInsufficientError(
                    f"step {j}: generators appeared inside the stability window "
                    f"beyond cap {cap}: {sorted(offenders.items())}"
                )
        coeffs.append(len(new_gens))
        steps.append(
            StepReport(j, cap, len(new_gens), tuple(sorted(counts.items())), note)
        )
        gens, phi = new_gens, new_phi
    return SeriesTrunc(tuple(coeffs), n), CapReport(degree_cap_policy, tuple(steps), True)


# ---------------------------------------------------------------------------
# bar-complex oracle


def _bar_basis(ideal, j, d):
    """Tuples of j standard monomials of positive degree with total degree d."""
    if j == 0:
        return [()] if d == 0 else []
    out = []

    def rec(parts, remaining, slots):
        if slots == 1:
            for m in _std_monomials(ideal, remaining):
                out.append(parts + (m,))
            return
        for first in range(1, remaining - slots + 2):
            for m in _std_monomials(ideal, first):
                rec(parts + (m,), remaining - first, slots - 1)

    if d >= j:
        rec((), d, j)
    return out


def _bar_columns(ideal, field, j, d):
    """Sparse columns of the bar differential from (j, d) into (j-1, d)."""
    from .monomial_core import Monomial

    lower = {t: k for k, t in enumerate(_bar_basis(ideal, j - 1, d))}
    cols = []
    for t in _bar_basis(ideal, j, d):
        col = {}
        sign = 1
        for i in range(j - 1):
            prod = Monomial(t[i]) * Monomial(t[i + 1])
            if not ideal.contains_monomial(prod):
                merged = t[:i] + (prod.exps,) + t[i + 2:]
                r = lower[merged]
                v = field.add(col.get(r, field.zero()), field.of(sign))
                if v == 0:
                    col.pop(r, None)
                else:
                    col[r] = v
            sign = -sign
        cols.append(col)
    return cols


def bar_homology_dim(ideal, field, j, d):
    """Dimension of the degree-d piece of the j-th bar homology of the residue field.

    An independent oracle for the resolution engine; intended for small j, d.
    """
    if j == 0:
        return 1 if d == 0 else 0
    if d < j:
        return 0
    dim = len(_bar_basis(ideal, j, d))
    if dim == 0:
        return 0
    cols_j = _bar_columns(ideal, field, j, d)
    rank_j = len(sparse_reduce_columns(field, [c for c in cols_j if c]))
    cols_up = _bar_columns(ideal, field, j + 1, d)
    rank_up = len(sparse_reduce_columns(field, [c for c in cols_up if c]))
    return dim - rank_j - rank_up
