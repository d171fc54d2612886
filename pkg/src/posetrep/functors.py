"""Restriction, induction, coinduction, the lifting constructions along
ideals and filters, the bridge to socle-projective incidence-algebra
modules, and projectivization.

Restriction forgets subspaces; induction fills a forgotten element with
the sum of the subspaces below it, coinduction with the intersection of
those above it.  On morphisms all three act by the same ambient matrix,
which is why the adjunction isomorphisms here are literal equalities of
matrix solution sets rather than mere bijections.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .errors import (NoUniqueTop, NotAFilter, NotAnIdeal, PosetMismatch,
                     UnknownLabel)
from .linalg import Field, Matrix, Subspace
from .poset import Poset
from .sspace import (SMorphism, SSpace, direct_sum, dualize, hom_space,
                     projective_space, simple_filter_space, zero_space)


# ---------------------------------------------------------------------------
# the adjoint triple


def restrict(v: SSpace, labels) -> SSpace:
    v.poset.check_subset(labels)
    keep = set(labels)
    sub = v.poset.restrict(labels)
    assign = {s: v.sub(s) for s in sub.elements if s in keep}
    return SSpace(sub, v.field, v.dim, assign, validate=False)


def restrict_morphism(f: SMorphism, labels) -> SMorphism:
    return SMorphism(restrict(f.source, labels), restrict(f.target, labels),
                     f.mat, validate=False)


def _check_subposet(small: Poset, big: Poset):
    for x in small.elements:
        if x not in big:
            raise UnknownLabel(x)
    for a in small.elements:
        for b in small.elements:
            if small.leq(a, b) != big.leq(a, b):
                raise PosetMismatch(f"order disagrees on {a!r}, {b!r}")


def induce(v: SSpace, target: Poset) -> SSpace:
    """Left adjoint of restriction: sums over below-elements of the carrier."""
    _check_subposet(v.poset, target)
    assign = {}
    for s in target.elements:
        total = Subspace.zero(v.field, v.dim)
        for r in v.poset.elements:
            if target.leq(r, s):
                total = total.plus(v.sub(r))
        assign[s] = total
    return SSpace(target, v.field, v.dim, assign, validate=False)


def coinduce(v: SSpace, target: Poset) -> SSpace:
    """Right adjoint of restriction: intersections over above-elements."""
    _check_subposet(v.poset, target)
    assign = {}
    for s in target.elements:
        total = Subspace.full(v.field, v.dim)
        for r in v.poset.elements:
            if target.leq(s, r):
                total = total.intersect(v.sub(r))
        assign[s] = total
    return SSpace(target, v.field, v.dim, assign, validate=False)


def induce_morphism(f: SMorphism, target: Poset) -> SMorphism:
    return SMorphism(induce(f.source, target), induce(f.target, target),
                     f.mat, validate=False)


def coinduce_morphism(f: SMorphism, target: Poset) -> SMorphism:
    return SMorphism(coinduce(f.source, target), coinduce(f.target, target),
                     f.mat, validate=False)


# ---------------------------------------------------------------------------
# lifting constructions


def lift_along_ideal(f: SMorphism, v: SSpace, ideal_labels) -> tuple[SSpace, SMorphism]:
    """Given R an ideal of the carrier of v and f : U -> restrict(v, R),
    build U_f on the full carrier with the forgotten subspaces set to
    preimages f^{-1}(V(t)); returns (U_f, the induced morphism into v)."""
    big = v.poset
    r = set(ideal_labels)
    if not big.is_ideal(r):
        raise NotAnIdeal(sorted(r))
    if set(f.source.poset.elements) != r or f.target != restrict(v, sorted_by(big, r)):
        raise PosetMismatch("f must map an R-space into restrict(v, R)")
    u = f.source
    assign = {}
    for t in big.elements:
        if t in r:
            assign[t] = u.sub(t)
        else:
            assign[t] = v.sub(t).preimage(f.mat)
    lifted = SSpace(big, u.field, u.dim, assign)
    return lifted, SMorphism(lifted, v, f.mat)


def colift_along_filter(g: SMorphism, u: SSpace, filter_labels) -> tuple[SSpace, SMorphism]:
    """Dual lift: R a filter of the carrier of u, g : restrict(u, R) -> V;
    forgotten subspaces become images g(U(t))."""
    big = u.poset
    r = set(filter_labels)
    if not big.is_filter(r):
        raise NotAFilter(sorted(r))
    if set(g.target.poset.elements) != r or g.source != restrict(u, sorted_by(big, r)):
        raise PosetMismatch("g must map restrict(u, R) into an R-space")
    v = g.target
    assign = {}
    for t in big.elements:
        if t in r:
            assign[t] = v.sub(t)
        else:
            assign[t] = u.sub(t).image(g.mat)
    colifted = SSpace(big, v.field, v.dim, assign)
    return colifted, SMorphism(u, colifted, g.mat)


def sorted_by(p: Poset, labels) -> list:
    """labels in the element order of p."""
    keep = set(labels)
    return [x for x in p.elements if x in keep]


# ---------------------------------------------------------------------------
# incidence-algebra modules and the psi/phi bridge


@dataclass(frozen=True)
class IncidenceRep:
    """A module over the incidence algebra of a poset with unique top:
    one dimension per element and a compatible matrix per related pair."""

    poset: Poset
    dims: dict
    maps: dict  # (s, t) with s <= t -> Matrix dims[s] x dims[t]

    def top(self):
        tops = [x for x in self.poset.elements
                if all(self.poset.leq(y, x) for y in self.poset.elements)]
        if len(tops) != 1:
            raise NoUniqueTop(tops)
        return tops[0]

    def map_between(self, s, t) -> Matrix:
        return self.maps[(s, t)]

    def validate(self):
        p = self.poset
        for s in p.elements:
            ident = self.maps[(s, s)]
            if ident != Matrix.identity(ident.field, self.dims[s]):
                raise PosetMismatch(f"map at ({s},{s}) is not the identity")
        for s in p.elements:
            for t in p.elements:
                if not p.leq(s, t):
                    continue
                for u in p.elements:
                    if p.leq(t, u):
                        if self.maps[(s, t)] * self.maps[(t, u)] != self.maps[(s, u)]:
                            raise PosetMismatch(f"composition fails via {s},{t},{u}")


def psi(v: SSpace, top_label=None) -> IncidenceRep:
    """Direct sum of the assigned subspaces as a socle-projective module
    over the incidence algebra of the poset with a new top adjoined."""
    base = v.poset
    top = top_label or base.fresh_label("omega")
    big = base.adjoin_top(top)
    dims = {s: v.sub(s).dim for s in base.elements}
    dims[top] = v.dim
    full = Subspace.full(v.field, v.dim)
    basis = {s: v.sub(s).mat for s in base.elements}
    basis[top] = full.mat
    maps = {}
    for s in big.elements:
        for t in big.elements:
            if big.leq(s, t):
                target = full if t == top else v.sub(t)
                maps[(s, t)] = target.express_rows(basis[s])
    return IncidenceRep(big, dims, maps)


def phi(m: IncidenceRep) -> SSpace:
    """Ambient from the top slot, subspaces as images of the structure maps."""
    top = m.top()
    base = m.poset.restrict([x for x in m.poset.elements if x != top])
    n = m.dims[top]
    fld = m.maps[(top, top)].field
    assign = {}
    for s in base.elements:
        assign[s] = Subspace.from_rows(fld, n, m.map_between(s, top).rows)
    return SSpace(base, fld, n, assign)


def is_socle_projective(m: IncidenceRep) -> bool:
    """Every structure map into the top slot must be injective."""
    top = m.top()
    for s in m.poset.elements:
        if s != top and m.map_between(s, top).rank() != m.dims[s]:
            return False
    return True


# ---------------------------------------------------------------------------
# projective covers, decomposition of projectives


def radical_at(v: SSpace, t) -> Subspace:
    total = Subspace.zero(v.field, v.dim)
    for s in v.poset.elements:
        if v.poset.lt(s, t):
            total = total.plus(v.sub(s))
    return total


def projective_cover(v: SSpace) -> tuple[SSpace, SMorphism]:
    """(P, proper epi P -> v) with P a direct sum of the one-dimensional
    indecomposable projectives; built by lifting a basis of the top of the
    associated module, one radical complement per element."""
    parts = []
    rows = []
    for t in list(v.poset.elements) + [None]:
        if t is None:
            space, rad = Subspace.full(v.field, v.dim), radical_at_top(v)
        else:
            space, rad = v.sub(t), radical_at(v, t)
        comp = space.complement_within(rad.intersect(space))
        for row in comp.rows:
            parts.append(t)
            rows.append(row)
    p = direct_sum_of_projectives(v.poset, v.field, parts)
    epi = SMorphism(p, v, Matrix(v.field, rows, v.dim))
    return p, epi


def radical_at_top(v: SSpace) -> Subspace:
    total = Subspace.zero(v.field, v.dim)
    for s in v.poset.elements:
        total = total.plus(v.sub(s))
    return total


def direct_sum_of_projectives(poset: Poset, fld: Field, parts) -> SSpace:
    total = zero_space(poset, fld)
    for t in parts:
        total = direct_sum(total, projective_space(poset, fld, t))
    return total


@dataclass(frozen=True)
class ProjectiveDecomposition:
    projective: bool
    multiplicities: dict = None  # label (or None for the adjoined top) -> count
    witness: SMorphism = None


def decompose_projective(v: SSpace) -> ProjectiveDecomposition:
    """Unique P_t multiplicities with witness if v is projective; the
    cover epi is an isomorphism exactly in that case."""
    p, epi = projective_cover(v)
    if p.dim != v.dim or not epi.mat.is_invertible():
        return ProjectiveDecomposition(False)
    mult = {}
    for t in list(v.poset.elements) + [None]:
        rad = radical_at(v, t) if t is not None else radical_at_top(v)
        space = v.sub(t) if t is not None else Subspace.full(v.field, v.dim)
        count = space.dim - rad.intersect(space).dim
        if count:
            mult[t] = count
    return ProjectiveDecomposition(True, mult, epi)


def decompose_injective(v: SSpace) -> ProjectiveDecomposition:
    """Injective counterpart through duality."""
    return decompose_projective(dualize(v))


def injective_envelope(v: SSpace) -> tuple[SSpace, SMorphism]:
    cover, epi = projective_cover(dualize(v))
    env = dualize(cover)
    # the double dual is v again in canonical form
    return env, SMorphism(v, env, epi.mat.transpose())


# ---------------------------------------------------------------------------
# semisimple decomposition


@dataclass(frozen=True)
class SemisimpleDecomposition:
    status: str  # "semisimple" | "not_semisimple" | "undecided"
    multiplicities: dict = dc_field(default_factory=dict)  # antichain -> count
    witness: SMorphism = None

    @property
    def is_semisimple(self):
        return self.status == "semisimple"


def two_chain_cover(p: Poset):
    """Partition a width <= 2 poset into two chains via bipartite matching."""
    elems = list(p.elements)
    n = len(elems)
    succ = {a: [b for b in elems if p.lt(a, b)] for a in elems}
    match_right = {}
    match_left = {}

    def try_augment(a, seen):
        for b in succ[a]:
            if b in seen:
                continue
            seen.add(b)
            if b not in match_right or try_augment(match_right[b], seen):
                match_right[b] = a
                match_left[a] = b
                return True
        return False

    for a in elems:
        try_augment(a, set())
    chains = []
    starts = [a for a in elems if a not in match_right]
    for a in starts:
        chain = [a]
        while chain[-1] in match_left:
            chain.append(match_left[chain[-1]])
        chains.append(chain)
    if len(chains) > 2:
        raise PosetMismatch(f"needs width <= 2, got a {len(chains)}-chain cover")
    while len(chains) < 2:
        chains.append([])
    return chains[0], chains[1]


def _two_flag_basis(v: SSpace, chain1, chain2):
    """Common adapted basis for the two subspace flags along the chains.

    Returns a list of (vector row, filter of elements containing it).  The
    classical bifiltration splitting: work through the pairwise
    intersections in lexicographic order, taking a complement of the two
    predecessors each time.
    """
    fld, n = v.field, v.dim
    flag1 = [Subspace.zero(fld, n)] + [v.sub(s) for s in chain1] + [Subspace.full(fld, n)]
    flag2 = [Subspace.zero(fld, n)] + [v.sub(s) for s in chain2] + [Subspace.full(fld, n)]
    out = []
    for i in range(1, len(flag1)):
        for j in range(1, len(flag2)):
            x = flag1[i].intersect(flag2[j])
            prev = flag1[i - 1].intersect(flag2[j]).plus(flag1[i].intersect(flag2[j - 1]))
            for row in x.complement_within(prev.intersect(x)).rows:
                members = set()
                for k, s in enumerate(chain1, start=1):
                    if k >= i:
                        members.add(s)
                for k, s in enumerate(chain2, start=1):
                    if k >= j:
                        members.add(s)
                out.append((row, members))
    return out


def semisimple_decompose(v: SSpace, seed: int = 0) -> SemisimpleDecomposition:
    """Split v into one-dimensional simples.  Guaranteed for width <= 2;
    elsewhere a greedy peel plus a local-endomorphism certificate, with
    undecided as the honest fallback."""
    if v.dim == 0:
        return SemisimpleDecomposition("semisimple", {}, SMorphism.identity(v))
    if v.poset.width() <= 2:
        c1, c2 = two_chain_cover(v.poset)
        pieces = _two_flag_basis(v, c1, c2)
        return _assemble_semisimple(v, [(row, v.poset.min_of(members))
                                        for row, members in pieces])
    return _greedy_semisimple(v, seed)


def _assemble_semisimple(v: SSpace, typed_rows) -> SemisimpleDecomposition:
    mult = {}
    ordered = sorted(typed_rows, key=lambda t: t[1])
    parts = zero_space(v.poset, v.field)
    rows = []
    for row, a in ordered:
        mult[a] = mult.get(a, 0) + 1
        parts = direct_sum(parts, simple_filter_space(v.poset, v.field, a))
        rows.append(row)
    witness = SMorphism(parts, v, Matrix(v.field, rows, v.dim))
    if not witness.mat.is_invertible() or witness.inverse() is None:
        raise PosetMismatch("adapted basis failed to split the space")
    return SemisimpleDecomposition("semisimple", mult, witness)


def _peel_simple(remaining: SSpace):
    """One greedy step: find a vector whose membership filter splits off,
    returning (vector row, antichain, kernel inclusion matrix) or None.
    Antichains are tried in decreasing size of generated filter."""
    fld, n = remaining.field, remaining.dim
    p = remaining.poset
    for a in sorted(p.antichains(), key=lambda a: -len(p.generated_filter(a))):
        filt = p.generated_filter(a)
        inside = Subspace.full(fld, n)
        for s in a:
            inside = inside.intersect(remaining.sub(s))
        outside = Subspace.zero(fld, n)
        for s in p.elements:
            if s not in filt:
                outside = outside.plus(remaining.sub(s))
        killers = outside.annihilator()
        for cand in inside.mat.rows:
            members = frozenset(s for s in p.elements
                                if remaining.sub(s).contains_vector(cand))
            if members != filt:
                continue
            functional = None
            for g in killers.mat.rows:
                pairing = fld.zero
                for x, y in zip(cand, g):
                    pairing = fld.add(pairing, fld.mul(x, y))
                if pairing != fld.zero:
                    functional = [fld.div(y, pairing) for y in g]
                    break
            if functional is None:
                continue
            col = Matrix(fld, [functional], n).transpose()
            kmat = col.null_rows().rref()[0]
            return cand, tuple(p.min_of(filt)), kmat
    return None


def _greedy_semisimple(v: SSpace, seed: int) -> SemisimpleDecomposition:
    """Peel off simple summands while a splitting projection exists; if a
    piece of dimension > 1 survives, try to certify it has a local
    endomorphism ring before claiming non-semisimplicity."""
    remaining = v
    back = Matrix.identity(v.field, v.dim)  # remaining coords -> v coords
    typed_rows = []
    while remaining.dim:
        found = _peel_simple(remaining)
        if found is None:
            break
        cand, a, kmat = found
        typed_rows.append(((Matrix(v.field, [cand], remaining.dim) * back).rows[0], a))
        assign = {s: remaining.sub(s).preimage(kmat) for s in remaining.poset.elements}
        remaining = SSpace(remaining.poset, v.field, kmat.nrows, assign, validate=False)
        back = kmat * back
    if remaining.dim == 0:
        return _assemble_semisimple(v, typed_rows)
    if _certify_local(remaining, seed):
        return SemisimpleDecomposition("not_semisimple")
    return SemisimpleDecomposition("undecided")


def _certify_local(v: SSpace, seed: int) -> bool:
    """True when End(v) provably has no idempotent besides 0 and 1 and
    v.dim > 1, which certifies a non-simple indecomposable summand."""
    if v.dim <= 1:
        return False
    end = hom_space(v, v)
    if end.dim == 1:
        return True
    if v.field.p is not None and v.field.p ** end.dim <= 1 << 16:
        from .sspace import find_idempotent
        return find_idempotent(end) is None
    return False
