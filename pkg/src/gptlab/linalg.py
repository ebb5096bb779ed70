"""Exact rational linear algebra on plain tuples.

Scalars are ``fractions.Fraction`` (arbitrary-precision, always reduced,
positive denominator), vectors are tuples of Fractions and matrices are
tuples of row vectors.  No floating point enters anywhere: every verdict
downstream is an exact geometric fact, so a single rounding step would make
nonexistence results meaningless.

Rank uses fraction-free (Bareiss) elimination on denominator-cleared rows;
solving, null spaces and dual bases go through a plain Gauss-Jordan
reduction over Fractions.  Both are exact; the dimensions this library
targets (ambient dim <= 10) keep the intermediate entries small either way.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence, Union

from .errors import DimensionMismatch, InputError

Rational = Fraction
Scalar = Union[int, str, Fraction]
Vec = tuple[Fraction, ...]
Mat = tuple[Vec, ...]


# ---------------------------------------------------------------------------
# construction and formatting


def rat(value: Scalar) -> Fraction:
    """Coerce an int, Fraction or "p/q" string to an exact Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool) or isinstance(value, float):
        raise InputError(f"refusing inexact scalar {value!r}; use int, Fraction or 'p/q'")
    try:
        return Fraction(value)
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"malformed rational {value!r}: {exc}") from None


def vec(*entries: Scalar) -> Vec:
    if not entries:
        raise InputError("vectors must have dimension >= 1")
    return tuple(rat(e) for e in entries)


def vec_from(entries: Iterable[Scalar]) -> Vec:
    return vec(*entries)


def mat(rows: Iterable[Iterable[Scalar]]) -> Mat:
    converted = tuple(vec_from(row) for row in rows)
    if not converted:
        raise InputError("matrix must contain at least one row")
    width = len(converted[0])
    for row in converted:
        if len(row) != width:
            raise DimensionMismatch(width, len(row), "matrix row width")
    return converted


def zeros(n: int) -> Vec:
    return (Fraction(0),) * n


def basis_vec(i: int, n: int) -> Vec:
    return tuple(Fraction(1 if j == i else 0) for j in range(n))


def identity(n: int) -> Mat:
    return tuple(basis_vec(i, n) for i in range(n))


def format_rational(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_vec(v: Vec) -> str:
    return "[" + ", ".join(format_rational(x) for x in v) + "]"


# ---------------------------------------------------------------------------
# elementwise arithmetic


def vec_add(a: Vec, b: Vec) -> Vec:
    if len(a) != len(b):
        raise DimensionMismatch(len(a), len(b), "vector addition")
    return tuple(x + y for x, y in zip(a, b))


def vec_sub(a: Vec, b: Vec) -> Vec:
    if len(a) != len(b):
        raise DimensionMismatch(len(a), len(b), "vector subtraction")
    return tuple(x - y for x, y in zip(a, b))


def vec_scale(s: Scalar, a: Vec) -> Vec:
    f = rat(s)
    return tuple(f * x for x in a)


def vec_sum(vectors: Sequence[Vec], dim: int | None = None) -> Vec:
    if not vectors:
        if dim is None:
            raise InputError("empty sum needs an explicit dimension")
        return zeros(dim)
    acc = list(vectors[0])
    for v in vectors[1:]:
        if len(v) != len(acc):
            raise DimensionMismatch(len(acc), len(v), "vector sum")
        for i, x in enumerate(v):
            acc[i] += x
    return tuple(acc)


def is_zero_vec(v: Vec) -> bool:
    return all(x == 0 for x in v)


def inner(a: Vec, b: Vec) -> Fraction:
    """Standard coordinate inner product, exact."""
    if len(a) != len(b):
        raise DimensionMismatch(len(a), len(b), "inner product")
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


def outer(a: Vec, b: Vec) -> Mat:
    return tuple(tuple(x * y for y in b) for x in a)


def mat_add(m1: Mat, m2: Mat) -> Mat:
    return tuple(vec_add(r1, r2) for r1, r2 in zip(m1, m2))


def mat_vec(m: Mat, v: Vec) -> Vec:
    return tuple(inner(row, v) for row in m)


def transpose(m: Mat) -> Mat:
    return tuple(zip(*m))


# ---------------------------------------------------------------------------
# scaling normalisation

def integerize(v: Vec) -> Vec:
    """Scale by a positive rational so entries are integers with content 1.

    The direction of the vector is preserved; this is the canonical form
    for rays of a cone, where flipping the sign would change the object.
    """
    if is_zero_vec(v):
        return tuple(Fraction(0) for _ in v)
    denom_lcm = 1
    for x in v:
        denom_lcm = denom_lcm * x.denominator // gcd(denom_lcm, x.denominator)
    ints = [int(x * denom_lcm) for x in v]
    content = 0
    for n in ints:
        content = gcd(content, abs(n))
    return tuple(Fraction(n // content) for n in ints)


def normalize_sign(v: Vec) -> Vec:
    """Canonical form for sign-free vectors (null-space and lineality
    directions): integer content-1 entries, first nonzero entry positive."""
    w = integerize(v)
    for x in w:
        if x != 0:
            return w if x > 0 else tuple(-y for y in w)
    return w


# ---------------------------------------------------------------------------
# elimination


def _cleared_int_rows(m: Mat) -> list[list[int]]:
    rows = []
    for row in m:
        denom_lcm = 1
        for x in row:
            denom_lcm = denom_lcm * x.denominator // gcd(denom_lcm, x.denominator)
        rows.append([int(x * denom_lcm) for x in row])
    return rows


def rank(m: Mat) -> int:
    """Exact rank via fraction-free (Bareiss) elimination."""
    if not m:
        raise InputError("rank of an empty matrix is undefined")
    rows = _cleared_int_rows(m)
    ncols = len(rows[0])
    prev = 1
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        for i in range(r + 1, len(rows)):
            head = rows[i][c]
            for j in range(c + 1, ncols):
                rows[i][j] = (rows[i][j] * rows[r][c] - head * rows[r][j]) // prev
            rows[i][c] = 0
        prev = rows[r][c]
        r += 1
        if r == len(rows):
            break
    return r


def rref(rows: Sequence[Sequence[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Fractions; returns (rows, pivot columns)."""
    m = [list(row) for row in rows]
    if not m:
        return m, []
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = Fraction(1) / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def null_space(m: Mat) -> tuple[Vec, ...]:
    """Basis of the right null space { v : m v = 0 }, canonically signed.

    The basis may be empty; every returned vector satisfies m v = 0 exactly.
    """
    if not m:
        raise InputError("null space of an empty matrix is undefined")
    reduced, pivots = rref(m)
    ncols = len(m[0])
    free_cols = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free_cols:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row_idx, p in enumerate(pivots):
            v[p] = -reduced[row_idx][f]
        basis.append(normalize_sign(tuple(v)))
    return tuple(basis)


def solve_linear(a: Mat, b: Vec) -> tuple[Vec, tuple[Vec, ...]] | None:
    """All solutions of a x = b: (particular, null basis), or None if empty.

    The particular solution sets every free variable to zero.
    """
    if len(a) != len(b):
        raise DimensionMismatch(len(a), len(b), "linear system")
    augmented = [list(row) + [rhs] for row, rhs in zip(a, b)]
    reduced, pivots = rref(augmented)
    ncols = len(a[0])
    if ncols in pivots:
        return None  # a pivot in the rhs column: inconsistent
    particular = [Fraction(0)] * ncols
    for row_idx, p in enumerate(pivots):
        particular[p] = reduced[row_idx][-1]
    return tuple(particular), null_space(a)


@dataclass(frozen=True)
class AffineExpansion:
    """All coefficient vectors alpha with sum(alpha) = 1 expanding a target
    over a generator list: the full solution set is
    particular + span(null_basis)."""

    particular: Vec
    null_basis: tuple[Vec, ...]

    @property
    def unique(self) -> bool:
        return not self.null_basis

    def negative_entry_solution(self) -> Vec | None:
        """Deterministically pick a solution with some strictly negative
        coefficient, or None if every solution is componentwise >= 0."""
        if any(x < 0 for x in self.particular):
            return self.particular
        for direction in self.null_basis:
            for i, d in enumerate(direction):
                if d != 0:
                    # push coordinate i to exactly -1
                    t = (Fraction(-1) - self.particular[i]) / d
                    return vec_add(self.particular, vec_scale(t, direction))
        return None


def solve_affine(target: Vec, generators: Sequence[Vec]) -> AffineExpansion | None:
    """Describe { alpha : sum_i alpha_i g_i = target, sum_i alpha_i = 1 }.

    Returns None when the set is empty.
    """
    if not generators:
        raise InputError("solve_affine needs at least one generator")
    dim = len(target)
    for g in generators:
        if len(g) != dim:
            raise DimensionMismatch(dim, len(g), "solve_affine generators")
    rows = [tuple(g[i] for g in generators) for i in range(dim)]
    rows.append(tuple(Fraction(1) for _ in generators))
    rhs = target + (Fraction(1),)
    solved = solve_linear(tuple(rows), rhs)
    if solved is None:
        return None
    particular, basis = solved
    # re-verify exactly: the expansion and its affine constraint
    assert vec_sum([vec_scale(c, g) for c, g in zip(particular, generators)], dim) == target
    assert sum(particular) == 1
    return AffineExpansion(particular=particular, null_basis=basis)


class SingularBasisError(InputError):
    def __init__(self, size: int, actual_rank: int):
        self.size = size
        self.actual_rank = actual_rank
        super().__init__(f"dual basis needs a full-rank square input: got {size} vectors of rank {actual_rank}")


def dual_basis(basis: Sequence[Vec]) -> tuple[Vec, ...]:
    """The unique vectors f_i with <f_i, b_j> = delta_ij, exactly.

    Input must be a linearly independent spanning set (square, full rank).
    """
    n = len(basis)
    if n == 0 or any(len(b) != n for b in basis):
        raise SingularBasisError(n, 0 if n == 0 else rank(mat(basis)))
    m = mat(basis)
    if rank(m) != n:
        raise SingularBasisError(n, rank(m))
    augmented = [list(row) + list(basis_vec(i, n)) for i, row in enumerate(m)]
    reduced, pivots = rref(augmented)
    assert pivots == list(range(n))
    inverse_rows = [row[n:] for row in reduced]
    # columns of B^-1 are the dual vectors
    return tuple(tuple(inverse_rows[i][j] for i in range(n)) for j in range(n))
