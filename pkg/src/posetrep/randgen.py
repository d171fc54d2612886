"""Seeded random instances for the property suites and the verify command."""

from __future__ import annotations

import random
import string

from .linalg import Field, Matrix, Subspace
from .poset import Poset


def random_poset(rng: random.Random, max_size: int = 6, density: float = 0.35) -> Poset:
    n = rng.randrange(1, max_size + 1)
    labels = list(string.ascii_lowercase[:n])
    relations = []
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < density:
                relations.append((labels[i], labels[j]))
    return Poset.build(labels, relations)


def random_scalar(rng: random.Random, field: Field):
    if field.p is None:
        return rng.randrange(-3, 4)
    return rng.randrange(field.p)


def random_vector(rng: random.Random, field: Field, n: int):
    return [random_scalar(rng, field) for _ in range(n)]


def random_matrix(rng: random.Random, field: Field, nrows: int, ncols: int) -> Matrix:
    return Matrix(field, [random_vector(rng, field, ncols) for _ in range(nrows)], ncols)


def random_subspace(rng: random.Random, field: Field, ambient: int,
                    spanning: int = None) -> Subspace:
    k = rng.randrange(0, ambient + 1) if spanning is None else spanning
    return Subspace.from_rows(field, ambient,
                              [random_vector(rng, field, ambient) for _ in range(k)])


def random_sspace(rng: random.Random, poset: Poset, field: Field, max_dim: int = 4):
    """Monotone assignment built by expanding subspaces along a linear
    extension, so the result always validates."""
    from .sspace import SSpace

    n = rng.randrange(0, max_dim + 1)
    order = sorted(poset.elements, key=lambda x: sum(poset.lt(y, x) for y in poset.elements))
    assign = {}
    for s in order:
        base = Subspace.zero(field, n)
        for t in poset.elements:
            if poset.lt(t, s):
                base = base.plus(assign[t])
        extra = [random_vector(rng, field, n) for _ in range(rng.randrange(0, n + 1))]
        assign[s] = base.plus(Subspace.from_rows(field, n, extra)) if extra else base
    return SSpace(poset, field, n, assign)


def random_morphism(rng: random.Random, hom):
    """Random combination of a HomSpace basis; zero morphism if empty."""
    from .sspace import SMorphism

    mat = Matrix.zeros(hom.field, hom.source.dim, hom.target.dim)
    for f in hom.basis:
        mat = mat + f.mat.scale(random_scalar(rng, hom.field))
    return SMorphism(hom.source, hom.target, mat)
