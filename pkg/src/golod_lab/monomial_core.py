"""Monomials, monomial ideals, polarization, and the built-in example ideal.

A monomial is an exponent vector; variable names live on the ideal.  The
generator order of an ideal is fixed at construction and never permuted,
because all Taylor-complex signs downstream depend on it.
"""

from __future__ import annotations

import re
from dataclasses import dataclass


class AmbientMismatchError(ValueError):
    """Operands live over different variable sets."""


@dataclass(frozen=True)
class Monomial:
    """Exponent vector of fixed length; the constant monomial is all zeros."""

    exps: tuple

    def __post_init__(self):
        if any(e < 0 for e in self.exps):
            raise ValueError(f"negative exponent in {self.exps}")

    def __len__(self):
        return len(self.exps)

    @property
    def degree(self):
        return sum(self.exps)

    @property
    def support(self):
        return frozenset(i for i, e in enumerate(self.exps) if e > 0)

    @property
    def is_constant(self):
        return all(e == 0 for e in self.exps)

    @property
    def is_squarefree(self):
        return all(e <= 1 for e in self.exps)

    def _check(self, other):
        if len(self.exps) != len(other.exps):
            raise AmbientMismatchError(
                f"monomials over {len(self.exps)} and {len(other.exps)} variables"
            )

    def lcm(self, other):
        self._check(other)
        return Monomial(tuple(max(a, b) for a, b in zip(self.exps, other.exps)))

    def gcd(self, other):
        self._check(other)
        return Monomial(tuple(min(a, b) for a, b in zip(self.exps, other.exps)))

    def divides(self, other):
        self._check(other)
        return all(a <= b for a, b in zip(self.exps, other.exps))

    def coprime(self, other):
        self._check(other)
        return all(a == 0 or b == 0 for a, b in zip(self.exps, other.exps))

    def __mul__(self, other):
        self._check(other)
        return Monomial(tuple(a + b for a, b in zip(self.exps, other.exps)))

    def quotient(self, other):
        """Exact quotient self / other; other must divide self."""
        if not other.divides(self):
            raise ValueError(f"{other.exps} does not divide {self.exps}")
        return Monomial(tuple(a - b for a, b in zip(self.exps, other.exps)))


def lcm(m1, m2):
    return m1.lcm(m2)


def lcm_of(monomials, n_vars):
    """Componentwise maximum over a collection; the constant for empty input."""
    acc = [0] * n_vars
    for m in monomials:
        if len(m.exps) != n_vars:
            raise AmbientMismatchError("monomial length mismatch in lcm")
        for i, e in enumerate(m.exps):
            if e > acc[i]:
                acc[i] = e
    return Monomial(tuple(acc))


def coprime(m1, m2):
    return m1.coprime(m2)


def divides(m1, m2):
    return m1.divides(m2)


def total_degree(m):
    return m.degree


def support(m):
    return m.support


def minimalize(gens):
    """Divisibility-minimal sublist, first occurrence kept; idempotent."""
    gens = list(gens)
    for g in gens:
        if g.is_constant:
            raise ValueError("constant monomial generates the whole ring")
    out = []
    for i, g in enumerate(gens):
        redundant = False
        for j, h in enumerate(gens):
            if i == j:
                continue
            if h.divides(g) and (h != g or j < i):
                redundant = True
                break
        if not redundant:
            out.append(g)
    return out


@dataclass(frozen=True)
class MonomialIdeal:
    """Monomial ideal given by an ordered minimal generating set.

    The constructor insists on minimality (no generator divides another);
    call :func:`minimalize` first if the input may be redundant.  The zero
    ideal (no generators) is allowed.
    """

    variables: tuple
    gens: tuple

    def __post_init__(self):
        if len(set(self.variables)) != len(self.variables):
            raise ValueError("duplicate variable names")
        n = len(self.variables)
        for g in self.gens:
            if len(g.exps) != n:
                raise AmbientMismatchError(
                    f"generator {g.exps} does not match {n} variables"
                )
            if g.is_constant:
                raise ValueError("constant monomial generates the whole ring")
        for i, g in enumerate(self.gens):
            for j, h in enumerate(self.gens):
                if i != j and h.divides(g) and (h != g or j < i):
                    raise ValueError(
                        f"generators are not minimal: {self.format_monomial(h)} divides "
                        f"{self.format_monomial(g)}; run minimalize first"
                    )

    @classmethod
    def from_exponents(cls, variables, exp_rows):
        return cls(tuple(variables), tuple(Monomial(tuple(r)) for r in exp_rows))

    @classmethod
    def from_strings(cls, variables, texts):
        variables = tuple(variables)
        return cls(variables, tuple(parse_monomial(t, variables) for t in texts))

    @property
    def n_vars(self):
        return len(self.variables)

    @property
    def n_gens(self):
        return len(self.gens)

    @property
    def is_squarefree(self):
        return all(g.is_squarefree for g in self.gens)

    def contains_monomial(self, m):
        """Membership test: some generator divides m."""
        return any(g.divides(m) for g in self.gens)

    def format_monomial(self, m):
        return format_monomial(m, self.variables)


_POWER_RE = re.compile(r"^([^\^\s\*]+?)(?:\^(\d+))?$")


def parse_monomial(text, variables):
    """Parse ``x1*x2^2`` style monomials over the given variable names."""
    text = text.strip()
    index = {v: i for i, v in enumerate(variables)}
    exps = [0] * len(variables)
    if text in ("1", ""):
        return Monomial(tuple(exps))
    for factor in text.split("*"):
        m = _POWER_RE.match(factor.strip())
        if not m:
            raise ValueError(f"cannot parse monomial factor {factor!r}")
        name, power = m.group(1), int(m.group(2) or 1)
        if name not in index:
            raise ValueError(f"unknown variable {name!r} in {text!r}")
        exps[index[name]] += power
    return Monomial(tuple(exps))


def format_monomial(m, variables):
    parts = []
    for name, e in zip(variables, m.exps):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts) if parts else "1"


def parse_ideal(text):
    """Parse the ideal text format.

    First non-comment line is ``vars: <space separated names>``; every further
    nonempty line is one generator such as ``x1*x2^2``.  Lines starting with
    ``#`` are comments.
    """
    variables = None
    gens = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if variables is None:
            if not line.startswith("vars:"):
                raise ValueError("ideal file must start with a 'vars:' line")
            variables = tuple(line[len("vars:"):].replace(",", " ").split())
            if not variables:
                raise ValueError("empty variable list")
            continue
        gens.append(line)
    if variables is None:
        raise ValueError("ideal file has no 'vars:' line")
    return MonomialIdeal.from_strings(variables, gens)


def format_ideal(ideal):
    lines = ["vars: " + " ".join(ideal.variables)]
    lines.extend(ideal.format_monomial(g) for g in ideal.gens)
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class PolarizationMap:
    """Mapping from polarized variables back to the original ones."""

    new_to_old: tuple  # index of the original variable per new variable

    def depolarize_exponents(self, exps, n_old):
        out = [0] * n_old
        for i, e in enumerate(exps):
            out[self.new_to_old[i]] += e
        return tuple(out)


def polarize(ideal):
    """Standard polarization to a squarefree ideal in more variables.

    A variable with maximal exponent e >= 2 across the generators splits into
    e copies named ``x_1 .. x_e``; exponent k becomes the product of the first
    k copies.  Variables of maximal exponent <= 1 keep their name, so a
    squarefree ideal polarizes to itself.  Generator count and order are
    preserved.
    """
    maxexp = [0] * ideal.n_vars
    for g in ideal.gens:
        for i, e in enumerate(g.exps):
            if e > maxexp[i]:
                maxexp[i] = e
    new_vars = []
    new_to_old = []
    slots = []  # per original variable: list of new indices
    for i, name in enumerate(ideal.variables):
        mine = []
        if maxexp[i] <= 1:
            mine.append(len(new_vars))
            new_vars.append(name)
            new_to_old.append(i)
        else:
            for k in range(1, maxexp[i] + 1):
                mine.append(len(new_vars))
                new_vars.append(f"{name}_{k}")
                new_to_old.append(i)
        slots.append(mine)
    if len(set(new_vars)) != len(new_vars):
        raise ValueError("polarized variable names collide with existing names")
    new_gens = []
    for g in ideal.gens:
        exps = [0] * len(new_vars)
        for i, e in enumerate(g.exps):
            for k in range(e):
                exps[slots[i][k]] = 1
        new_gens.append(Monomial(tuple(exps)))
    pol = MonomialIdeal(tuple(new_vars), tuple(new_gens))
    return pol, PolarizationMap(tuple(new_to_old))


def depolarize(ideal, varmap, original_variables):
    """Substitute each polarized variable back; inverse of :func:`polarize`."""
    n_old = len(original_variables)
    gens = [Monomial(varmap.depolarize_exponents(g.exps, n_old)) for g in ideal.gens]
    return MonomialIdeal(tuple(original_variables), tuple(gens))


# Built-in example: a quotient with trivial Koszul-homology products that is
# nevertheless not Golod (a nonzero ternary Massey product obstructs it).
# Generator order realizes the total order the sign conventions assume.
COUNTEREXAMPLE_GENERATOR_NAMES = (
    "m_a", "m_ab", "m_ab#c", "m_b", "m_bc", "m_bc#a", "m_c", "m_ca",
)

_COUNTEREXAMPLE_GENERATORS = (
    "x1*x2^2",        # m_a
    "x1*x2*y1*y2",    # m_ab
    "x1*y1*z",        # m_ab#c
    "y1*y2^2",        # m_b
    "y2^2*z^2",       # m_bc
    "x2^2*y2^2*z",    # m_bc#a
    "z^3",            # m_c
    "x2^2*z^2",       # m_ca
)


def counterexample_ideal():
    """The built-in example ideal in k[x1, x2, y1, y2, z] (preset ``paper``)."""
    return MonomialIdeal.from_strings(
        ("x1", "x2", "y1", "y2", "z"), _COUNTEREXAMPLE_GENERATORS
    )


def counterexample_generator_index(name):
    """Generator index for a role name like ``m_a`` (or bare ``a``)."""
    key = name.strip()
    if not key.startswith("m_"):
        key = "m_" + key
    try:
        return COUNTEREXAMPLE_GENERATOR_NAMES.index(key)
    except ValueError:
        raise ValueError(
            f"unknown generator name {name!r}; expected one of "
            f"{', '.join(COUNTEREXAMPLE_GENERATOR_NAMES)}"
        ) from None
