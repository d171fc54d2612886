"""Differentiation of poset representations by a principal filter or a
principal ideal.

For a point p with w(S \\ <p>) <= 2, the derived poset in filter mode is

    S_p = (<p> \\ {p})  u  a^( S \\ [<p> u (p)] )

carrying the order induced from the meet semilattice of antichains; it is
what remains of the carrier S_<p> = <p> u a^(S \\ <p>) after deleting the
principal ideal generated by p there (p itself together with every
antichain that meets (p)).  Ideal mode is the mirror image inside the join
semilattice.  The differentiation functor on spaces quotients the ambient
space by V(p) in filter mode and cuts down to V(p) in ideal mode; it is
implemented both by the direct formulas and as the composite
restrict . E_p . coinduce (restrict . E^p . induce), and the two paths are
cross-checked in the test suite.

The count nu(S) of indecomposables satisfies
nu(S) = nu(S_p) + |a(S \\ <p>)| + 1 whenever filter differentiation
applies at p, with the mirror recursion in ideal mode, and bottoms out at
|A(S)| once the width drops to 2.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field as dc_field

from .errors import NotApplicable, UnknownLabel
from .linalg import Subspace, solution_space
from .poset import Poset, derived_carrier
from .sspace import SMorphism, SSpace
from .sspace import _flat_constraints_for  # shared constraint builder


@dataclass(frozen=True)
class DerivedPoset:
    base: Poset
    point: str
    mode: str  # "filter" | "ideal"
    result: Poset
    label_map: dict  # rendered label -> DerivedLabel
    carrier: Poset  # S_<p> or S^(p)
    carrier_map: dict

    def members_of(self, label) -> tuple:
        return self.label_map[label].members


def applicability_width(p: Poset, point: str, mode: str) -> int:
    region = p.up(point) if mode == "filter" else p.down(point)
    return p.restrict([x for x in p.elements if x not in region]).width()


def is_applicable(p: Poset, point: str, mode: str) -> bool:
    return applicability_width(p, point, mode) <= 2


def derive_poset(p: Poset, point: str, mode: str) -> DerivedPoset:
    """Derived poset at a point; requires the complement of the principal
    filter (ideal) to have width at most two."""
    if point not in p:
        raise UnknownLabel(point)
    if mode not in ("filter", "ideal"):
        raise ValueError(f"mode must be filter or ideal, got {mode}")
    w = applicability_width(p, point, mode)
    if w > 2:
        raise NotApplicable(w)
    region = p.up(point) if mode == "filter" else p.down(point)
    carrier, cmap = derived_carrier(p, sorted(region, key=p.elements.index), mode)
    shadow = p.down(point) if mode == "filter" else p.up(point)
    keep = []
    for label in carrier.elements:
        members = cmap[label].members
        if label == point or (set(members) & shadow):
            continue
        keep.append(label)
    result = carrier.restrict(keep)
    label_map = {x: cmap[x] for x in keep}
    return DerivedPoset(p, point, mode, result, label_map, carrier, cmap)


def diff_space(v: SSpace, point: str, mode: str, derived: DerivedPoset = None) -> SSpace:
    """Differentiation functor on objects, by the direct formulas:
    filter mode sends t to (V(t) + V(p))/V(p) and a^b to
    (V(a) /\\ V(b) + V(p))/V(p) inside V/V(p); ideal mode sends t to
    V(t) /\\ V(p) and avb to (V(a) + V(b)) /\\ V(p) inside V(p)."""
    derived = derived or derive_poset(v.poset, point, mode)
    vp = v.sub(point)
    assign = {}
    if mode == "filter":
        q, _ = vp.quotient_map()
        for label in derived.result.elements:
            meet = Subspace.full(v.field, v.dim)
            for m in derived.members_of(label):
                meet = meet.intersect(v.sub(m))
            assign[label] = meet.image(q)
        return SSpace(derived.result, v.field, q.ncols, assign, validate=False)
    b = vp.mat
    for label in derived.result.elements:
        join = Subspace.zero(v.field, v.dim)
        for m in derived.members_of(label):
            join = join.plus(v.sub(m))
        assign[label] = join.preimage(b)
    return SSpace(derived.result, v.field, b.nrows, assign, validate=False)


def diff_morphism(f: SMorphism, point: str, mode: str,
                  derived: DerivedPoset = None) -> SMorphism:
    """Functor action on morphisms: the induced map on quotients in filter
    mode, the restriction to V(p) in ideal mode."""
    derived = derived or derive_poset(f.source.poset, point, mode)
    du = diff_space(f.source, point, mode, derived)
    dv = diff_space(f.target, point, mode, derived)
    up, vp = f.source.sub(point), f.target.sub(point)
    if mode == "filter":
        qu, lift = up.quotient_map()
        qv, _ = vp.quotient_map()
        mat = lift * f.mat * qv
    else:
        mat = vp.express_rows(up.mat * f.mat)
    return SMorphism(du, dv, mat, validate=False)


def diff_space_composite(v: SSpace, point: str, mode: str,
                         derived: DerivedPoset = None) -> SSpace:
    """The same functor as the three-step composite through the full
    carrier; used to cross-check the direct formulas."""
    from .functors import coinduce, induce, restrict
    from .sspace import e_quot, e_sub

    derived = derived or derive_poset(v.poset, point, mode)
    if mode == "filter":
        big = coinduce(v, derived.carrier)
        cut, _ = e_quot(big, point)
    else:
        big = induce(v, derived.carrier)
        cut, _ = e_sub(big, point)
    return restrict(cut, derived.result.elements)


# ---------------------------------------------------------------------------
# hom-space ideals


def factor_ideal_dim(u: SSpace, v: SSpace, point: str, mode: str) -> int:
    """Dimension of the morphisms killed by differentiation: those factoring
    through a space full at p (mode "full": f(U) <= V(p)) or trivial at p
    (mode "trivial": U(p) <= Ker f)."""
    if mode not in ("full", "trivial"):
        raise ValueError(f"mode must be full or trivial, got {mode}")
    pairs = [(u.sub(s), v.sub(s)) for s in u.poset.elements]
    if mode == "full":
        pairs.append((Subspace.full(u.field, u.dim), v.sub(point)))
    else:
        pairs.append((u.sub(point), Subspace.zero(v.field, v.dim)))
    rows = _flat_constraints_for(u, v, pairs)
    return solution_space(u.field, u.dim * v.dim, rows).dim


# ---------------------------------------------------------------------------
# the nu recursion


@dataclass(frozen=True)
class ReductionStep:
    poset: Poset
    point: str
    mode: str
    nonempty_antichains: int  # |a(S \ <p>)| resp. |a(S \ (p))|


@dataclass
class ReductionTrace:
    steps: list = dc_field(default_factory=list)
    terminal: Poset = None
    terminal_count: int = None  # |A(terminal)| when width <= 2
    nu: int = None
    status: str = "ok"  # "ok" | "stuck" | "depth-limit"

    def value_label(self) -> str:
        if self.status == "ok":
            return str(self.nu)
        return self.status


def poset_fingerprint(p: Poset) -> str:
    desc = ";".join(sorted(p.elements)) + "|" + ";".join(
        f"{a}<{b}" for a, b in p.covers())
    return hashlib.sha256(desc.encode()).hexdigest()[:12]


def _canonical_descriptor(p: Poset):
    return (tuple(sorted(p.elements)), tuple(p.covers()))


def _applicable_moves(p: Poset, strategy: str):
    """(point, mode) pairs in deterministic order: filter sweeps first."""
    moves = []
    for mode in ("filter", "ideal"):
        for point in sorted(p.elements):
            if is_applicable(p, point, mode):
                moves.append((point, mode))
    return moves


def nu_count(p: Poset, strategy: str = "first", depth_limit: int = 64) -> ReductionTrace:
    """Count indecomposable representations by iterated differentiation.

    Width <= 2 posets are counted outright as |A(S)|.  Otherwise the first
    applicable (point, mode) in label order is differentiated and the
    recursion charges |a(complement)| + 1 per step.  Repeating carriers or
    exceeding the depth limit end in a stuck/depth-limit trace instead of
    an answer.
    """
    if strategy == "all-paths":
        return _nu_all_paths(p, depth_limit)
    trace = ReductionTrace()
    current = p
    seen = {_canonical_descriptor(p)}
    total = 0
    for _ in range(depth_limit):
        if current.width() <= 2:
            count = len(current.antichains())
            trace.terminal = current
            trace.terminal_count = count
            trace.nu = total + count
            return trace
        moves = _applicable_moves(current, strategy)
        if not moves:
            trace.terminal = current
            trace.status = "stuck"
            return trace
        point, mode = moves[0]
        region = current.up(point) if mode == "filter" else current.down(point)
        rest = current.restrict([x for x in current.elements if x not in region])
        a_count = len(rest.antichains(nonempty_only=True))
        trace.steps.append(ReductionStep(current, point, mode, a_count))
        total += a_count + 1
        current = derive_poset(current, point, mode).result
        desc = _canonical_descriptor(current)
        if desc in seen:
            trace.terminal = current
            trace.status = "stuck"
            return trace
        seen.add(desc)
    trace.terminal = current
    trace.status = "depth-limit"
    return trace


def _complement_antichain_count(q: Poset, point: str, mode: str) -> int:
    region = q.up(point) if mode == "filter" else q.down(point)
    rest = q.restrict([x for x in q.elements if x not in region])
    return len(rest.antichains(nonempty_only=True))


def _nu_all_paths(p: Poset, depth_limit: int) -> ReductionTrace:
    """Explore every applicable move at every level; all completing paths
    must agree on the value, and a completing path is replayed into the
    returned trace."""
    memo = {}
    in_progress = set()

    def explore(q: Poset, depth: int):
        if q.width() <= 2:
            return len(q.antichains())
        if depth >= depth_limit:
            return None
        key = _canonical_descriptor(q)
        if key in memo:
            return memo[key]
        if key in in_progress:
            return None
        in_progress.add(key)
        values = set()
        for point, mode in _applicable_moves(q, "all-paths"):
            below = explore(derive_poset(q, point, mode).result, depth + 1)
            if below is not None:
                values.add(below + _complement_antichain_count(q, point, mode) + 1)
        in_progress.discard(key)
        if len(values) > 1:
            raise AssertionError(f"reduction paths disagree: {sorted(values)}")
        if values:
            memo[key] = values.pop()
            return memo[key]
        return None

    value = explore(p, 0)
    trace = ReductionTrace()
    current, depth = p, 0
    while True:
        if current.width() <= 2:
            trace.terminal = current
            trace.terminal_count = len(current.antichains())
            trace.nu = value
            return trace
        chosen = None
        for point, mode in _applicable_moves(current, "all-paths"):
            child = derive_poset(current, point, mode).result
            if explore(child, depth + 1) is not None:
                chosen = (point, mode, child)
                break
        if chosen is None:
            trace.terminal = current
            trace.status = "depth-limit" if depth >= depth_limit else "stuck"
            return trace
        point, mode, child = chosen
        trace.steps.append(ReductionStep(
            current, point, mode, _complement_antichain_count(current, point, mode)))
        current, depth = child, depth + 1


def serialize_trace(trace: ReductionTrace) -> str:
    lines = []
    for step in trace.steps:
        lines.append(f"{poset_fingerprint(step.poset)} point={step.point} "
                     f"mode={step.mode} a-count={step.nonempty_antichains}")
    lines.append(f"nu={trace.value_label()}")
    return "\n".join(lines) + "\n"
