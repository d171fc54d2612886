"""The category of S-spaces over a finite poset.

An S-space assigns to every poset element a subspace of one ambient space,
monotonely in the order.  Morphisms are ambient-space matrices (acting on
row vectors) carrying each assigned subspace of the source into the
corresponding subspace of the target.  Everything is canonicalized, so
functor identities elsewhere in the package are literal equalities.
"""

from __future__ import annotations

import os
import random
from dataclasses import dataclass

from .errors import (FieldMismatch, InvalidMorphism, MonotonicityViolation,
                     PosetMismatch, UnknownLabel)
from .linalg import Field, Matrix, Subspace, solution_space
from .poset import Poset


def search_budget(default: int = 100_000) -> int:
    try:
        return int(os.environ.get("POSETREP_BUDGET", default))
    except ValueError:
        return default


class SSpace:
    """Ambient dimension plus one subspace per poset element."""

    __slots__ = ("poset", "field", "dim", "assign")

    def __init__(self, poset: Poset, field: Field, dim: int, assign, validate: bool = True):
        full_assign = {}
        for s in poset.elements:
            sub = assign.get(s)
            if sub is None:
                sub = Subspace.zero(field, dim)
            if sub.field != field:
                raise FieldMismatch(f"subspace at {s!r}")
            if sub.ambient != dim:
                raise MonotonicityViolation(s, s, f"ambient {sub.ambient} != {dim}")
            full_assign[s] = sub
        for s in assign:
            if s not in poset:
                raise UnknownLabel(s)
        object.__setattr__(self, "poset", poset)
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "assign", full_assign)
        if validate:
            validate_sspace(self)

    def __setattr__(self, *a):
        raise AttributeError("SSpace is immutable")

    def sub(self, s) -> Subspace:
        try:
            return self.assign[s]
        except KeyError:
            raise UnknownLabel(s) from None

    def is_trivial_at(self, s) -> bool:
        return self.sub(s).is_zero()

    def is_full_at(self, s) -> bool:
        return self.sub(s).is_full()

    def is_zero(self) -> bool:
        return self.dim == 0

    def __eq__(self, other):
        return (isinstance(other, SSpace) and self.poset == other.poset
                and self.field == other.field and self.dim == other.dim
                and self.assign == other.assign)

    def __hash__(self):
        return hash((self.poset, self.field, self.dim,
                     tuple(sorted(self.assign.items(), key=lambda t: t[0]))))

    def __repr__(self):
        dims = {s: v.dim for s, v in self.assign.items()}
        return f"SSpace({self.field}, dim {self.dim}, {dims})"

    def dims_profile(self):
        return tuple(self.sub(s).dim for s in self.poset.elements)


def validate_sspace(v: SSpace):
    """Monotonicity check; raises with the first violating pair."""
    for s in v.poset.elements:
        for t in v.poset.elements:
            if v.poset.leq(s, t) and not v.sub(t).contains(v.sub(s)):
                raise MonotonicityViolation(s, t)


def zero_space(poset: Poset, field: Field) -> SSpace:
    return SSpace(poset, field, 0, {}, validate=False)


def _check_same_category(u: SSpace, v: SSpace):
    if u.poset != v.poset:
        raise PosetMismatch("different posets")
    if u.field != v.field:
        raise FieldMismatch(f"{u.field} vs {v.field}")


class SMorphism:
    """A matrix between ambient spaces respecting every subspace."""

    __slots__ = ("source", "target", "mat")

    def __init__(self, source: SSpace, target: SSpace, mat: Matrix, validate: bool = True):
        _check_same_category(source, target)
        if mat.nrows != source.dim or mat.ncols != target.dim:
            raise InvalidMorphism(
                f"matrix {mat.nrows}x{mat.ncols} for map {source.dim} -> {target.dim}")
        if validate:
            for s in source.poset.elements:
                if not target.sub(s).contains(source.sub(s).image(mat)):
                    raise InvalidMorphism(f"subspace at {s!r} not carried into target")
        object.__setattr__(self, "source", source)
        object.__setattr__(self, "target", target)
        object.__setattr__(self, "mat", mat)

    def __setattr__(self, *a):
        raise AttributeError("SMorphism is immutable")

    @classmethod
    def identity(cls, v: SSpace) -> "SMorphism":
        return cls(v, v, Matrix.identity(v.field, v.dim), validate=False)

    @classmethod
    def zero(cls, u: SSpace, v: SSpace) -> "SMorphism":
        return cls(u, v, Matrix.zeros(u.field, u.dim, v.dim), validate=False)

    def then(self, other: "SMorphism") -> "SMorphism":
        """self followed by other (other o self in composition order)."""
        if self.target is not other.source and self.target != other.source:
            raise PosetMismatch("composition mismatch")
        return SMorphism(self.source, other.target, self.mat * other.mat, validate=False)

    def __add__(self, other: "SMorphism") -> "SMorphism":
        return SMorphism(self.source, self.target, self.mat + other.mat, validate=False)

    def scale(self, c) -> "SMorphism":
        return SMorphism(self.source, self.target, self.mat.scale(c), validate=False)

    def __eq__(self, other):
        return (isinstance(other, SMorphism) and self.source == other.source
                and self.target == other.target and self.mat == other.mat)

    def __hash__(self):
        return hash((self.source, self.target, self.mat))

    def __repr__(self):
        return f"SMorphism({self.source.dim} -> {self.target.dim})"

    def is_zero(self) -> bool:
        return self.mat.is_zero()

    def is_mono(self) -> bool:
        return self.mat.rank() == self.source.dim

    def is_epi(self) -> bool:
        return self.mat.rank() == self.target.dim

    def is_proper(self) -> bool:
        """f(U(s)) = V(s) /\\ f(U) for every s."""
        image = Subspace.full(self.source.field, self.source.dim).image(self.mat)
        for s in self.source.poset.elements:
            if self.source.sub(s).image(self.mat) != self.target.sub(s).intersect(image):
                return False
        return True

    def is_iso(self) -> bool:
        return self.mat.is_invertible() and self.inverse() is not None

    def inverse(self):
        """Inverse morphism if the matrix inverts and the inverse respects
        subspaces; None otherwise."""
        inv = self.mat.inverse()
        if inv is None:
            return None
        try:
            return SMorphism(self.target, self.source, inv)
        except InvalidMorphism:
            return None

    def kernel(self):
        """(kernel S-space, proper mono into the source)."""
        k = self.mat.null_rows().rref()[0]
        amb = k.nrows
        assign = {s: self.source.sub(s).preimage(k)
                  for s in self.source.poset.elements}
        ker = SSpace(self.source.poset, self.source.field, amb, assign, validate=False)
        return ker, SMorphism(ker, self.source, k, validate=False)

    def cokernel(self):
        """(cokernel S-space, proper epi from the target)."""
        image = Subspace.full(self.source.field, self.source.dim).image(self.mat)
        q, _ = image.quotient_map()
        assign = {s: self.target.sub(s).image(q)
                  for s in self.target.poset.elements}
        cok = SSpace(self.target.poset, self.target.field, q.ncols, assign, validate=False)
        return cok, SMorphism(self.target, cok, q, validate=False)

    def dualize(self) -> "SMorphism":
        return SMorphism(dualize(self.target), dualize(self.source),
                         self.mat.transpose(), validate=False)


def kernel_cokernel(f: SMorphism):
    return f.kernel(), f.cokernel()


# ---------------------------------------------------------------------------
# hom spaces


@dataclass(frozen=True)
class HomSpace:
    source: SSpace
    target: SSpace
    basis: tuple
    flat: Subspace  # same space, rows flattened to length dim_U * dim_V

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def field(self) -> Field:
        return self.source.field


def _flat_constraints_for(u: SSpace, v: SSpace, pairs):
    """Constraint rows over flattened matrix entries, one per (basis vector
    of a source subspace, annihilator vector of a target subspace)."""
    nu, nv = u.dim, v.dim
    field = u.field
    rows = []
    for bsub, gsub in pairs:
        anns = gsub.annihilator().mat.rows
        for b in bsub.mat.rows:
            for g in anns:
                row = [field.zero] * (nu * nv)
                for i, bi in enumerate(b):
                    if bi == field.zero:
                        continue
                    base = i * nv
                    for j, gj in enumerate(g):
                        if gj != field.zero:
                            row[base + j] = field.mul(bi, gj)
                rows.append(row)
    return rows


def _unflatten(u: SSpace, v: SSpace, flat_rows):
    nv = v.dim
    out = []
    for r in flat_rows:
        mat = Matrix(u.field, [r[i * nv:(i + 1) * nv] for i in range(u.dim)], nv)
        out.append(SMorphism(u, v, mat, validate=False))
    return out


def hom_space(u: SSpace, v: SSpace) -> HomSpace:
    """Basis of all S-space morphisms u -> v, found by solving the linear
    constraint system f(U(s)) <= V(s)."""
    _check_same_category(u, v)
    pairs = [(u.sub(s), v.sub(s)) for s in u.poset.elements]
    sol = solution_space(u.field, u.dim * v.dim, _flat_constraints_for(u, v, pairs))
    return HomSpace(u, v, tuple(_unflatten(u, v, sol.mat.rows)), sol)


def hom_dim(u: SSpace, v: SSpace) -> int:
    return hom_space(u, v).dim


# ---------------------------------------------------------------------------
# standard spaces


def simple_filter_space(poset: Poset, field: Field, antichain) -> SSpace:
    """k_A: one-dimensional, full exactly on the filter generated by A."""
    a = poset.check_antichain(antichain)
    f = poset.generated_filter(a)
    assign = {s: Subspace.full(field, 1) if s in f else Subspace.zero(field, 1)
              for s in poset.elements}
    return SSpace(poset, field, 1, assign, validate=False)


def simple_ideal_space(poset: Poset, field: Field, antichain) -> SSpace:
    """k^A: one-dimensional, trivial exactly on the ideal generated by A."""
    a = poset.check_antichain(antichain)
    i = poset.generated_ideal(a)
    assign = {s: Subspace.zero(field, 1) if s in i else Subspace.full(field, 1)
              for s in poset.elements}
    return SSpace(poset, field, 1, assign, validate=False)


def projective_space(poset: Poset, field: Field, t=None) -> SSpace:
    """P_t for t in S, or the all-zero-subspace projective for t = None
    (the adjoined top)."""
    if t is None:
        return SSpace(poset, field, 1, {}, validate=False)
    if t not in poset:
        raise UnknownLabel(t)
    return simple_filter_space(poset, field, (t,))


def injective_space(poset: Poset, field: Field, t=None) -> SSpace:
    """I_t for t in S, or the everywhere-full injective for t = None
    (the adjoined bottom)."""
    if t is None:
        assign = {s: Subspace.full(field, 1) for s in poset.elements}
        return SSpace(poset, field, 1, assign, validate=False)
    if t not in poset:
        raise UnknownLabel(t)
    assign = {s: Subspace.zero(field, 1) if poset.leq(s, t) else Subspace.full(field, 1)
              for s in poset.elements}
    return SSpace(poset, field, 1, assign, validate=False)


def standard_space(poset: Poset, field: Field, kind: str, arg=None) -> SSpace:
    if kind == "simple_kA":
        return simple_filter_space(poset, field, arg)
    if kind == "simple_k_upper_A":
        return simple_ideal_space(poset, field, arg)
    if kind == "projective_P_t":
        return projective_space(poset, field, arg)
    if kind == "injective_I_t":
        return injective_space(poset, field, arg)
    raise ValueError(f"unknown kind {kind}")


# ---------------------------------------------------------------------------
# duality, direct sums, E functors


def dualize(v: SSpace) -> SSpace:
    """Annihilator subspaces in dual coordinates, over the opposite poset."""
    assign = {s: v.sub(s).annihilator() for s in v.poset.elements}
    return SSpace(v.poset.opposite(), v.field, v.dim, assign, validate=False)


def direct_sum(u: SSpace, v: SSpace) -> SSpace:
    _check_same_category(u, v)
    n, m = u.dim, v.dim
    field = u.field
    zero = field.zero

    def shift(sub_u, sub_v):
        rows = [tuple(r) + (zero,) * m for r in sub_u.mat.rows]
        rows += [(zero,) * n + tuple(r) for r in sub_v.mat.rows]
        return Subspace.from_rows(field, n + m, rows)

    assign = {s: shift(u.sub(s), v.sub(s)) for s in u.poset.elements}
    return SSpace(u.poset, field, n + m, assign, validate=False)


def direct_sum_many(poset: Poset, field: Field, parts) -> SSpace:
    total = zero_space(poset, field)
    for p in parts:
        total = direct_sum(total, p)
    return total


def sum_injections(u: SSpace, v: SSpace):
    """Canonical injections and projections for u (+) v."""
    s = direct_sum(u, v)
    field = u.field
    n, m = u.dim, v.dim
    iu = Matrix(field, [[field.one if j == i else field.zero for j in range(n + m)]
                        for i in range(n)], n + m)
    iv = Matrix(field, [[field.one if j == n + i else field.zero for j in range(n + m)]
                        for i in range(m)], n + m)
    return s, SMorphism(u, s, iu, validate=False), SMorphism(v, s, iv, validate=False)


def e_sub(v: SSpace, p) -> tuple[SSpace, SMorphism]:
    """(E^p v, the structural proper mono kappa_p)."""
    b = v.sub(p).mat
    assign = {s: v.sub(s).preimage(b) for s in v.poset.elements}
    ep = SSpace(v.poset, v.field, b.nrows, assign, validate=False)
    return ep, SMorphism(ep, v, b, validate=False)


def e_quot(v: SSpace, p) -> tuple[SSpace, SMorphism]:
    """(E_p v, the structural proper epi pi_p)."""
    q, _ = v.sub(p).quotient_map()
    assign = {s: v.sub(s).image(q) for s in v.poset.elements}
    ep = SSpace(v.poset, v.field, q.ncols, assign, validate=False)
    return ep, SMorphism(v, ep, q, validate=False)


def e_functor(v: SSpace, p, mode: str):
    if mode == "sub":
        return e_sub(v, p)
    if mode == "quot":
        return e_quot(v, p)
    raise ValueError(f"mode must be sub or quot, got {mode}")


def e_functor_map(f: SMorphism, p, mode: str) -> SMorphism:
    """Action of E^p (mode sub) or E_p (mode quot) on a morphism."""
    u, v = f.source, f.target
    if mode == "sub":
        eu, ku = e_sub(u, p)
        ev, kv = e_sub(v, p)
        coords = v.sub(p).express_rows(ku.mat * f.mat)
        return SMorphism(eu, ev, coords, validate=False)
    if mode == "quot":
        eu, pu = e_quot(u, p)
        ev, pv = e_quot(v, p)
        _, lift = u.sub(p).quotient_map()
        return SMorphism(eu, ev, lift * f.mat * pv.mat, validate=False)
    raise ValueError(f"mode must be sub or quot, got {mode}")


# ---------------------------------------------------------------------------
# isomorphism and minimality, budgeted searches


@dataclass(frozen=True)
class IsoResult:
    status: str  # "iso" | "not_iso" | "undecided"
    witness: SMorphism = None

    @property
    def is_iso(self):
        return self.status == "iso"

    @property
    def decided(self):
        return self.status != "undecided"


def _all_combinations(hom: HomSpace):
    """Every element of the hom space; only callable over a prime field."""
    field = hom.field
    coeffs = [0] * hom.dim
    while True:
        mat = Matrix.zeros(field, hom.source.dim, hom.target.dim)
        for c, f in zip(coeffs, hom.basis):
            if c:
                mat = mat + f.mat.scale(c)
        yield SMorphism(hom.source, hom.target, mat, validate=False)
        k = 0
        while k < hom.dim and coeffs[k] == field.p - 1:
            coeffs[k] = 0
            k += 1
        if k == hom.dim:
            return
        coeffs[k] += 1


def _sampled_candidates(rng: random.Random, hom: HomSpace, budget: int):
    """Structured trials first, then random combinations within budget."""
    field = hom.field
    for f in hom.basis:
        yield f
    for i in range(len(hom.basis)):
        for j in range(i + 1, len(hom.basis)):
            yield hom.basis[i] + hom.basis[j]
    trials = 20 if field.p is None else min(budget, 2000)
    for _ in range(trials):
        mat = Matrix.zeros(field, hom.source.dim, hom.target.dim)
        for f in hom.basis:
            mat = mat + f.mat.scale(field.coerce(rng.randrange(-3, 4)))
        yield SMorphism(hom.source, hom.target, mat, validate=False)


def are_isomorphic(u: SSpace, v: SSpace, seed: int = 0, budget: int = None) -> IsoResult:
    """Budgeted isomorphism search.  A positive answer always carries a
    verified witness; a negative one only follows from certified
    obstructions or an exhausted prime-field enumeration; anything else is
    undecided."""
    _check_same_category(u, v)
    if u.dim != v.dim:
        return IsoResult("not_iso")
    if any(u.sub(s).dim != v.sub(s).dim for s in u.poset.elements):
        return IsoResult("not_iso")
    if u == v:
        return IsoResult("iso", SMorphism.identity(u))
    if u.dim == 0:
        return IsoResult("iso", SMorphism(u, v, Matrix(u.field, [], 0), validate=False))
    huv = hom_space(u, v)
    hvu = hom_space(v, u)
    duu, dvv = hom_dim(u, u), hom_dim(v, v)
    if not (huv.dim == hvu.dim == duu == dvv):
        return IsoResult("not_iso")
    if huv.dim == 0:
        return IsoResult("not_iso")
    budget = search_budget() if budget is None else budget
    exhaustive = huv.field.p is not None and huv.field.p ** huv.dim <= budget
    if exhaustive:
        candidates = _all_combinations(huv)
    else:
        candidates = _sampled_candidates(random.Random(seed), huv, budget)
    tried = 0
    for cand in candidates:
        tried += 1
        if tried > budget:
            exhaustive = False
            break
        if cand.mat.is_invertible() and cand.inverse() is not None:
            return IsoResult("iso", cand)
    return IsoResult("not_iso") if exhaustive else IsoResult("undecided")


def _endo_solutions_fixing(f: SMorphism) -> list[SMorphism]:
    """Basis of {h in End(source) : h then f = 0}; the solutions of
    g then f = f are exactly id + this space."""
    u = f.source
    pairs = [(u.sub(s), u.sub(s)) for s in u.poset.elements]
    rows = _flat_constraints_for(u, u, pairs)
    field = u.field
    n, m = u.dim, f.target.dim
    # extra rows: (h * f.mat) entry (i, j) = 0
    for i in range(n):
        for j in range(m):
            row = [field.zero] * (n * n)
            for k in range(n):
                row[i * n + k] = f.mat.rows[k][j]
            rows.append(row)
    sol = solution_space(field, n * n, rows)
    return _unflatten(u, u, sol.mat.rows)


def is_right_minimal(f: SMorphism, seed: int = 0, trials: int = 50) -> bool:
    """Budgeted: every g with f = g then f must be an automorphism.  A
    found non-invertible solution certifies False; True means no violation
    showed up on a spanning set plus random combinations."""
    u = f.source
    if u.dim == 0:
        return True
    sols = _endo_solutions_fixing(f)
    ident = Matrix.identity(u.field, u.dim)
    for h in sols:
        if not (ident + h.mat).is_invertible():
            return False
    rng = random.Random(seed)
    for _ in range(trials):
        mat = ident
        for h in sols:
            mat = mat + h.mat.scale(u.field.coerce(rng.randrange(-3, 4)))
        if not mat.is_invertible():
            return False
    return True


def is_left_minimal(f: SMorphism, seed: int = 0, trials: int = 50) -> bool:
    return is_right_minimal(f.dualize(), seed=seed, trials=trials)


def find_idempotent(end: HomSpace):
    """First nontrivial idempotent in an endomorphism space over a prime
    field, or None after exhausting all q^dim elements.  The caller is
    responsible for checking the budget."""
    if end.field.p is None:
        raise FieldMismatch("exhaustive idempotent search needs a prime field")
    n = end.source.dim
    ident = Matrix.identity(end.field, n)
    for cand in _all_combinations(end):
        m = cand.mat
        if m.is_zero() or m == ident:
            continue
        if m * m == m:
            return cand
    return None
