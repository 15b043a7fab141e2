"""Newton polyhedra and integral closures of powers of monomial ideals.

The Newton polyhedron is the convex hull of the generator exponents plus the
nonnegative orthant.  Its facets are computed once per ideal by exact
rational elimination over generator/ray subsets, and stored with integer
coefficients; the integral closure of the n-th power is then the ideal of
lattice points of the n-fold dilation, read off the stored inequalities with
no further geometry.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import gcd
from typing import Optional

from .errors import DimensionLimitError
from .ring import MonomialIdeal, RingContext, box_monomials, mono_divides

_MAX_HULL_VARS = 6


def _rank(rows, d: int) -> int:
    mat = [[Fraction(v) for v in row] for row in rows]
    rank = 0
    for col in range(d):
        pivot = next((i for i in range(rank, len(mat)) if mat[i][col] != 0), None)
        if pivot is None:
            continue
        mat[rank], mat[pivot] = mat[pivot], mat[rank]
        lead = mat[rank][col]
        mat[rank] = [x / lead for x in mat[rank]]
        for i in range(len(mat)):
            if i != rank and mat[i][col] != 0:
                factor = mat[i][col]
                mat[i] = [x - factor * y for x, y in zip(mat[i], mat[rank])]
        rank += 1
        if rank == len(mat):
            break
    return rank


def _null_vector(rows, d: int) -> "list | None":
    """Primitive integer spanning vector of the nullspace, when it is a line."""
    mat = [[Fraction(v) for v in row] for row in rows]
    pivots = []
    rank = 0
    for col in range(d):
        pivot = next((i for i in range(rank, len(mat)) if mat[i][col] != 0), None)
        if pivot is None:
            continue
        mat[rank], mat[pivot] = mat[pivot], mat[rank]
        lead = mat[rank][col]
        mat[rank] = [x / lead for x in mat[rank]]
        for i in range(len(mat)):
            if i != rank and mat[i][col] != 0:
                factor = mat[i][col]
                mat[i] = [x - factor * y for x, y in zip(mat[i], mat[rank])]
        pivots.append(col)
        rank += 1
    if rank != d - 1:
        return None
    free = next(c for c in range(d) if c not in pivots)
    vec = [Fraction(0)] * d
    vec[free] = Fraction(1)
    for row_idx, col in enumerate(pivots):
        vec[col] = -mat[row_idx][free]
    denom = 1
    for v in vec:
        denom = denom * v.denominator // gcd(denom, v.denominator)
    ints = [int(v * denom) for v in vec]
    common = 0
    for v in ints:
        common = gcd(common, abs(v))
    return [v // common for v in ints] if common else None


@dataclass(frozen=True)
class NewtonPolyhedron:
    """Exact facet description of conv(generators) + nonnegative orthant."""

    ctx: RingContext
    generators: tuple
    facets: tuple  # tuple of (coefficient tuple, bound); all coefficients >= 0
    vertices: tuple

    def contains_point(self, point, scale: int = 1) -> bool:
        """Membership of an integer point in the ``scale``-fold dilation."""
        if any(v < 0 for v in point):
            return False
        return all(
            sum(a * p for a, p in zip(coeffs, point)) >= scale * bound
            for coeffs, bound in self.facets
        )

    def serialize(self) -> dict:
        return {
            "vertices": [list(v) for v in self.vertices],
            "inequalities": [
                {"coefficients": list(coeffs), "bound": bound} for coeffs, bound in self.facets
            ],
        }


def _candidate_halfspaces(gens, d: int):
    rays = [tuple(1 if j == i else 0 for j in range(d)) for i in range(d)]
    found = {}
    for k in range(1, d + 1):
        for gen_subset in combinations(gens, k):
            for ray_subset in combinations(range(d), d - k):
                v0 = gen_subset[0]
                rows = [tuple(a - b for a, b in zip(v, v0)) for v in gen_subset[1:]]
                rows += [rays[i] for i in ray_subset]
                normal = _null_vector(rows, d) if rows else ([1] if d == 1 else None)
                if normal is None:
                    continue
                if all(v <= 0 for v in normal):
                    normal = [-v for v in normal]
                if any(v < 0 for v in normal) or not any(normal):
                    continue
                bound = sum(a * b for a, b in zip(normal, v0))
                if all(sum(a * b for a, b in zip(normal, v)) >= bound for v in gens):
                    found[(tuple(normal), bound)] = True
    return list(found)


def _is_facet(halfspace, gens, d: int) -> bool:
    coeffs, bound = halfspace
    tight = [v for v in gens if sum(a * b for a, b in zip(coeffs, v)) == bound]
    if not tight:
        return False
    rows = [tuple(a - b for a, b in zip(v, tight[0])) for v in tight[1:]]
    for i in range(d):
        if coeffs[i] == 0:
            rows.append(tuple(1 if j == i else 0 for j in range(d)))
    if d == 1:
        return True
    return _rank(rows, d) == d - 1


def _vertex_set(gens, facets, d: int):
    vertices = []
    for v in gens:
        rows = [coeffs for coeffs, bound in facets if sum(a * b for a, b in zip(coeffs, v)) == bound]
        rows += [tuple(1 if j == i else 0 for j in range(d)) for i in range(d) if v[i] == 0]
        if _rank(rows, d) == d:
            vertices.append(v)
    return tuple(sorted(vertices))


@lru_cache(maxsize=None)
def newton_polyhedron(I: MonomialIdeal) -> NewtonPolyhedron:
    """Facets and vertices of the Newton polyhedron, exactly."""
    if I.is_zero():
        raise ValueError("the zero ideal has no Newton polyhedron")
    d = I.ctx.num_vars
    if d > _MAX_HULL_VARS:
        raise DimensionLimitError(
            f"polyhedral support is limited to {_MAX_HULL_VARS} variables, got {d}"
        )
    gens = I.generators
    halfspaces = _candidate_halfspaces(gens, d)
    facets = tuple(sorted(h for h in halfspaces if _is_facet(h, gens, d)))
    return NewtonPolyhedron(
        ctx=I.ctx,
        generators=gens,
        facets=facets,
        vertices=_vertex_set(gens, facets, d),
    )


def integral_closure_power(I: MonomialIdeal, n: int) -> MonomialIdeal:
    """Integral closure of I^n: minimal lattice points of the n-fold dilation.

    Minimal members have each coordinate at most n times the largest exponent
    of that variable among the generators, so the scan over that box with
    divisibility pruning is exhaustive.
    """
    if n < 1:
        raise ValueError("the power must be at least 1")
    poly = newton_polyhedron(I)
    box = tuple(v * n for v in I.box())
    kept = []
    for p in box_monomials(box):
        if any(mono_divides(k, p) for k in kept):
            continue
        if poly.contains_point(p, scale=n):
            kept.append(p)
    return MonomialIdeal(I.ctx, tuple(kept))


@dataclass(frozen=True)
class NoetherianExponentResult:
    exponent: Optional[int]
    l_max: int
    n_max: int
    failures: tuple  # tuple of (l, first power where equality broke)

    def to_document(self) -> dict:
        return {
            "exponent": self.exponent,
            "l_max": self.l_max,
            "n_max": self.n_max,
            "failures": [{"l": l, "first_failure": n} for l, n in self.failures],
        }


def noetherian_exponent(I: MonomialIdeal, l_max: int, n_max: int) -> NoetherianExponentResult:
    """Least l with closure(I^l)^n = closure(I^(l*n)) for all n up to n_max.

    When no l up to l_max verifies, the result records where each candidate
    first failed.
    """
    failures = []
    for l in range(1, l_max + 1):
        closed = integral_closure_power(I, l)
        first_bad = None
        for n in range(1, n_max + 1):
            if closed**n != integral_closure_power(I, l * n):
                first_bad = n
                break
        if first_bad is None:
            return NoetherianExponentResult(l, l_max, n_max, tuple(failures))
        failures.append((l, first_bad))
    return NoetherianExponentResult(None, l_max, n_max, tuple(failures))


def rees_cofinality_constant(I: MonomialIdeal, m_max: int) -> int:
    """Least k with closure(I^m) contained in I^(m-k) for all k < m <= m_max."""
    if I.is_zero() or I.is_unit():
        raise ValueError("the ideal must be proper and nonzero")
    closures = {m: integral_closure_power(I, m) for m in range(1, m_max + 1)}
    for k in range(0, m_max + 1):
        if all((I ** (m - k)).contains_ideal(closures[m]) for m in range(k + 1, m_max + 1)):
            return k
    return m_max


def closure_powers_report(I: MonomialIdeal, n_max: int, **kwargs):
    """Run the powers analyzers against the closure filtration n -> closure(I^n)."""
    from .powers import powers_report

    return powers_report(I, n_max, term_fn=lambda n: integral_closure_power(I, n), **kwargs)
