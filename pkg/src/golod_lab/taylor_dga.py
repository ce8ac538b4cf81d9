"""The Taylor complex of a monomial ideal as a differential graded algebra.

Basis elements are subsets of the ordered generator list, stored as bit masks
over generator indices.  The differential and the product carry signs that
depend only on that order:

    sign of dropping m from I         : (-1)^(number of members of I before m)
    sign of the product <I> * <J>     : (-1)^(number of pairs (m in I, m' in J)
                                              with m' before m)

After tensoring with the residue field, a term survives exactly when its
monomial coefficient is constant.  Everything here is pure and immutable, so
distinct multidegrees can be processed concurrently.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

from .exact_linalg import Matrix
from .monomial_core import lcm_of
from .simplicial import SimplicialComplex

_FULL_STRAND_LIMIT = 18  # full strands enumerate 2^|G_u| subsets


def mask_members(mask):
    """Generator indices contained in a subset mask, ascending."""
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def mask_of(indices):
    m = 0
    for i in indices:
        m |= 1 << i
    return m


def subset_lcm(ideal, mask):
    """lcm monomial of the generators in the mask (constant for the empty mask)."""
    return lcm_of((ideal.gens[i] for i in mask_members(mask)), ideal.n_vars)


def subset_multidegree(ideal, mask):
    return subset_lcm(ideal, mask).exps


def boundary(ideal, mask):
    """Taylor differential of a basis subset, over the full Taylor complex.

    Returns a map ``smaller_mask -> (sign, monomial coefficient)``.  The empty
    subset has zero boundary.
    """
    out = {}
    m_I = subset_lcm(ideal, mask)
    sign = 1
    for i in mask_members(mask):
        rest = mask & ~(1 << i)
        m_rest = subset_lcm(ideal, rest)
        out[rest] = (sign, m_I.quotient(m_rest))
        sign = -sign
    return out


def reduced_boundary(ideal, mask):
    """Differential after tensoring with the field: only constant-coefficient terms.

    Returns a map ``smaller_mask -> sign`` with sign in {1, -1}.
    """
    out = {}
    m_I = subset_lcm(ideal, mask)
    sign = 1
    for i in mask_members(mask):
        rest = mask & ~(1 << i)
        if subset_lcm(ideal, rest) == m_I:
            out[rest] = sign
        sign = -sign
    return out


def product_sign(maskI, maskJ):
    """Koszul sign of <I> * <J>: parity of pairs (m in I, m' in J) with m' first."""
    count = 0
    for i in mask_members(maskI):
        count += bin(maskJ & ((1 << i) - 1)).count("1")
    return -1 if count % 2 else 1


def product(ideal, maskI, maskJ):
    """DGA product <I> * <J> in the full Taylor complex.

    Returns ``(sign, monomial coefficient, union mask)`` or None when the
    subsets intersect.
    """
    if maskI & maskJ:
        return None
    union = maskI | maskJ
    coeff = subset_lcm(ideal, maskI) * subset_lcm(ideal, maskJ)
    coeff = coeff.quotient(subset_lcm(ideal, union))
    return (product_sign(maskI, maskJ), coeff, union)


def product_reduced(ideal, maskI, maskJ):
    """Product in the field-reduced complex: ``(sign, union mask)`` or None.

    Nonzero exactly when the subsets are disjoint and the lcm of the union is
    the product of the two lcms.
    """
    if maskI & maskJ:
        return None
    union = maskI | maskJ
    mI = subset_lcm(ideal, maskI)
    mJ = subset_lcm(ideal, maskJ)
    if mI * mJ != subset_lcm(ideal, union):
        return None
    return (product_sign(maskI, maskJ), union)


@dataclass(frozen=True)
class LcmLattice:
    """Multidegrees of lcms of nonempty generator subsets, with join structure."""

    ideal: object
    elements: frozenset

    def __contains__(self, u):
        return tuple(u) in self.elements

    def __iter__(self):
        return iter(sorted(self.elements, key=lambda u: (sum(u), u)))

    def __len__(self):
        return len(self.elements)

    def join(self, u, v):
        return tuple(max(a, b) for a, b in zip(u, v))

    def generators_below(self, u):
        """Indices of generators whose multidegree is componentwise <= u."""
        return [
            i
            for i, g in enumerate(self.ideal.gens)
            if all(a <= b for a, b in zip(g.exps, u))
        ]

    @property
    def top(self):
        return tuple(lcm_of(self.ideal.gens, self.ideal.n_vars).exps)


@lru_cache(maxsize=64)
def lcm_lattice(ideal):
    """Lattice of subset-lcm multidegrees, computed by pairwise-join closure."""
    current = {tuple(g.exps) for g in ideal.gens}
    frontier = set(current)
    while frontier:
        new = set()
        for u in frontier:
            for v in current:
                j = tuple(max(a, b) for a, b in zip(u, v))
                if j not in current and j not in new:
                    new.add(j)
        current |= new
        frontier = new
    return LcmLattice(ideal, frozenset(current))


def strand_degree_basis(ideal, u, i, gens_below=None):
    """Sorted masks of i-element generator subsets with lcm multidegree exactly u.

    Enumerates only one homological degree, which keeps large strands usable.
    """
    if gens_below is None:
        gens_below = lcm_lattice(ideal).generators_below(u)
    u = tuple(u)
    masks = []
    for c in combinations(gens_below, i):
        acc = [0] * len(u)
        for gi in c:
            for k, e in enumerate(ideal.gens[gi].exps):
                if e > acc[k]:
                    acc[k] = e
        if tuple(acc) == u:
            masks.append(mask_of(c))
    masks.sort()
    return masks


class StrandComplex:
    """The multidegree-u piece of the field-reduced Taylor complex.

    Bases per homological degree are mask lists sorted ascending; boundary
    matrices are built lazily and consecutive ones compose to zero.
    """

    def __init__(self, ideal, u, field):
        lattice = lcm_lattice(ideal)
        u = tuple(u)
        if u not in lattice:
            raise ValueError(f"multidegree {u} is not in the lcm lattice")
        self.ideal = ideal
        self.u = u
        self.field = field
        self.gens_below = lattice.generators_below(u)
        if len(self.gens_below) > _FULL_STRAND_LIMIT:
            raise ValueError(
                f"strand at {u} has {len(self.gens_below)} generators below it; "
                "use strand_degree_basis for degree-limited access"
            )
        self.basis = {}
        for i in range(1, len(self.gens_below) + 1):
            masks = strand_degree_basis(ideal, u, i, self.gens_below)
            if masks:
                self.basis[i] = masks
        self._index = {i: {m: k for k, m in enumerate(b)} for i, b in self.basis.items()}
        self._matrices = {}

    @property
    def degrees(self):
        return sorted(self.basis)

    def dim(self, i):
        return len(self.basis.get(i, ()))

    def index_of(self, i, mask):
        return self._index[i][mask]

    def boundary_matrix(self, i):
        """Matrix of the differential from degree i to degree i-1."""
        if i in self._matrices:
            return self._matrices[i]
        f = self.field
        src = self.basis.get(i, [])
        dst = self.basis.get(i - 1, [])
        dst_index = self._index.get(i - 1, {})
        rows = [[f.zero()] * len(src) for _ in dst]
        for col, mask in enumerate(src):
            for rest, sign in reduced_boundary(self.ideal, mask).items():
                r = dst_index.get(rest)
                if r is None:
                    # a constant-coefficient term never leaves the strand
                    raise AssertionError("boundary term escaped its strand")
                rows[r][col] = f.of(sign)
        m = Matrix.from_rows(f, rows) if dst else Matrix.zero(f, 0, len(src))
        self._matrices[i] = m
        return m

    def chain_vector(self, i, chain):
        """Coefficient vector of a chain (mask -> scalar) in the degree-i basis."""
        idx = self._index.get(i, {})
        vec = [self.field.zero()] * len(idx)
        for mask, c in chain.items():
            if c == 0:
                continue
            if mask not in idx:
                raise ValueError(f"mask {mask:b} is not a degree-{i} basis element")
            vec[idx[mask]] = self.field.of(c)
        return tuple(vec)

    def vector_chain(self, i, vec):
        return {m: c for m, c in zip(self.basis.get(i, []), vec) if c != 0}


def strand(ideal, u, field):
    return StrandComplex(ideal, u, field)


def chain_degrees(ideal, chain):
    """(multidegree, homological degree) of a homogeneous chain; errors otherwise."""
    degs = {(subset_multidegree(ideal, m), bin(m).count("1")) for m in chain if chain[m] != 0}
    if not degs:
        raise ValueError("zero chain has no well-defined degrees")
    if len(degs) > 1:
        raise ValueError(f"chain is not homogeneous: degrees {sorted(degs)}")
    return degs.pop()


def fiber_vertex_labels(gens_below):
    return tuple(f"g{i}" for i in gens_below)


def fiber_complex(ideal, u):
    """Simplicial complex of generator subsets whose complement still reaches u.

    Vertices are the generators below u, labeled ``g<index>``; a subset I is a
    face exactly when the lcm of its complement has multidegree u.  Generators
    that every cover needs are ghost vertices.
    """
    lattice = lcm_lattice(ideal)
    u = tuple(u)
    if u not in lattice:
        raise ValueError(f"multidegree {u} is not in the lcm lattice")
    below = lattice.generators_below(u)
    if len(below) > _FULL_STRAND_LIMIT:
        raise ValueError(f"fiber complex at {u} would have {len(below)} vertices")
    labels = fiber_vertex_labels(below)
    pos = {gi: labels[k] for k, gi in enumerate(below)}
    facets = []
    known = []
    # descending size: the first time a subset is a face it is maximal
    for size in range(len(below), -1, -1):
        for c in combinations(below, size):
            cset = set(c)
            if any(cset <= f for f in known):
                continue
            rest = [ideal.gens[gi] for gi in below if gi not in cset]
            if tuple(lcm_of(rest, ideal.n_vars).exps) == u:
                known.append(cset)
                facets.append(frozenset(pos[gi] for gi in cset))
    return SimplicialComplex.from_facets(labels, facets)


def chain_to_cochain(ideal, u, chain):
    """Image of a homogeneous strand chain in the fiber-complex cochain model.

    The subset I maps, up to sign, to the indicator cochain of the complement
    of I among the generators below u.  The per-term sign is the parity of the
    sum of the positions of I's members within that generator list, which
    makes the map intertwine the strand differential with the simplicial
    coboundary exactly.
    """
    u = tuple(u)
    lattice = lcm_lattice(ideal)
    below = lattice.generators_below(u)
    below_set = set(below)
    rank_of = {gi: k for k, gi in enumerate(below)}
    labels = fiber_vertex_labels(below)
    label_of = {gi: labels[k] for k, gi in enumerate(below)}
    out = {}
    seen_card = None
    for mask, coeff in chain.items():
        if coeff == 0:
            continue
        members = mask_members(mask)
        if subset_multidegree(ideal, mask) != u:
            raise ValueError("chain is not homogeneous of the stated multidegree")
        if seen_card is None:
            seen_card = len(members)
        elif len(members) != seen_card:
            raise ValueError("chain mixes homological degrees")
        sign = -1 if sum(rank_of[i] for i in members) % 2 else 1
        face = frozenset(label_of[gi] for gi in below_set - set(members))
        out[face] = out.get(face, 0) + sign * coeff
    return {f: c for f, c in out.items() if c != 0}
