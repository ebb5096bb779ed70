"""Shared test utilities: independent brute-force oracles and seeded random
instance generators.

The oracles deliberately avoid the library's own algorithms: vertex
enumeration goes through exhaustive tight-constraint subsets and plain
Gaussian elimination, so double-description results are checked against an
implementation that shares no code path with them.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from random import Random

from gptlab.linalg import inner, integerize, mat, null_space, rank, vec_scale
from gptlab.theory import Gpt, build_gpt


def _solve_square(rows, rhs):
    """Plain Gauss-Jordan; returns the unique solution or None."""
    n = len(rows[0])
    m = [[Fraction(x) for x in row] + [Fraction(b)] for row, b in zip(rows, rhs)]
    piv_rows = []
    r = 0
    for c in range(n):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        m[r] = [x / m[r][c] for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        piv_rows.append(c)
        r += 1
    for i in range(r, len(m)):
        if m[i][-1] != 0:
            return None
    if len(piv_rows) < n:
        return None
    x = [Fraction(0)] * n
    for i, c in enumerate(piv_rows):
        x[c] = m[i][-1]
    return tuple(x)


def brute_force_slice_vertices(ineq_normals, unit, dim):
    """Vertices of { x : <n, x> >= 0 for all n, <unit, x> = 1 } by exhaustive
    enumeration of tight-constraint subsets."""
    vertices = set()
    for tight in combinations(range(len(ineq_normals)), dim - 1):
        rows = [ineq_normals[i] for i in tight] + [unit]
        rhs = [0] * (dim - 1) + [1]
        x = _solve_square(rows, rhs)
        if x is None:
            continue
        if all(sum(n[k] * x[k] for k in range(dim)) >= 0 for n in ineq_normals):
            vertices.add(x)
    return vertices


def brute_force_facets(rays, dim):
    """Facet normals of a full-dimensional pointed cone by exhaustion: every
    facet is the span of dim-1 independent extreme rays, so orient the
    normal of each such subset and keep it when the whole cone lies on one
    side.  Shares no code with double description."""
    facets = set()
    for subset in combinations(range(len(rays)), dim - 1):
        chosen = [rays[i] for i in subset]
        if rank(mat(chosen)) != dim - 1:
            continue
        normals = null_space(mat(chosen))
        if len(normals) != 1:
            continue
        n = normals[0]
        vals = [inner(n, r) for r in rays]
        if all(v >= 0 for v in vals):
            facets.add(integerize(n))
        elif all(v <= 0 for v in vals):
            facets.add(integerize(vec_scale(-1, n)))
    return facets


def random_pointed_cone_rays(rng: Random, dim: int, extra: int = 2):
    """Full-dimensional pointed cone generators: positive last coordinate
    forces pointedness, a rank check forces full dimension."""
    while True:
        count = dim + rng.randint(1, extra + 1)
        rays = []
        for _ in range(count):
            v = [Fraction(rng.randint(-3, 3)) for _ in range(dim - 1)]
            v.append(Fraction(rng.randint(1, 3)))
            rays.append(tuple(v))
        if rank(mat(rays)) == dim:
            return rays


def random_distribution(rng: Random, dim: int):
    while True:
        weights = [rng.randint(0, 6) for _ in range(dim)]
        total = sum(weights)
        if total:
            return tuple(Fraction(w, total) for w in weights)


def random_stochastic_basis(rng: Random, dim: int):
    """Rows of a strictly diagonally dominant row-stochastic matrix: always
    invertible, always a valid family of normalised states."""
    rows = []
    for i in range(dim):
        w = [rng.randint(0, 2) for _ in range(dim)]
        w[i] += 4 * dim
        total = sum(w)
        rows.append(tuple(Fraction(x, total) for x in w))
    return rows


def random_effect_vector(rng: Random, dim: int):
    return tuple(Fraction(rng.randint(0, 4), 4) for _ in range(dim))


def random_subgpt(rng: Random, dim: int) -> Gpt:
    """A random restricted theory hosted by the classical d-level system:
    distribution states spanning the space, coordinate effects plus a few
    random unsharp ones.  Always passes validation."""
    states = [(f"p{i}", v) for i, v in enumerate(random_stochastic_basis(rng, dim))]
    for j in range(rng.randint(0, 2)):
        states.append((f"q{j}", random_distribution(rng, dim)))
    effects = [
        (f"e{i}", tuple(Fraction(1 if k == i else 0) for k in range(dim)))
        for i in range(dim)
    ]
    for j in range(rng.randint(0, 2)):
        effects.append((f"f{j}", random_effect_vector(rng, dim)))
    return build_gpt(
        dim=dim,
        unit=[1] * dim,
        effects=effects,
        states=states,
        claims_no_restriction=False,
        name=f"random_subgpt_{dim}",
    )


def random_pair_subgpt(rng: Random, dim: int) -> Gpt:
    """A restricted theory whose effect cone is generally smaller than the
    nonnegative orthant: complementary pairs of unsharp effects, retried
    until they span."""
    while True:
        effects = []
        for j in range(dim + rng.randint(0, 2)):
            f = random_effect_vector(rng, dim)
            if all(x == 0 for x in f) or all(x == 1 for x in f):
                continue
            effects.append((f"f{j}", f))
            effects.append((f"f{j}c", tuple(Fraction(1) - x for x in f)))
        if effects and rank(mat([v for _, v in effects])) == dim:
            break
    states = [(f"p{i}", v) for i, v in enumerate(random_stochastic_basis(rng, dim))]
    return build_gpt(
        dim=dim,
        unit=[1] * dim,
        effects=effects,
        states=states,
        claims_no_restriction=False,
        name=f"random_pair_subgpt_{dim}",
    )


def random_classical_theory(rng: Random, dim: int) -> Gpt:
    """A random simplicial no-restriction theory: a stochastic basis as
    states, its exact dual basis as effects."""
    from gptlab.linalg import dual_basis

    states = random_stochastic_basis(rng, dim)
    effects = dual_basis(states)
    return build_gpt(
        dim=dim,
        unit=[1] * dim,
        effects=[(f"a{i}", v) for i, v in enumerate(effects)],
        states=[(f"p{i}", v) for i, v in enumerate(states)],
        claims_no_restriction=True,
        name=f"random_classical_{dim}",
    )
