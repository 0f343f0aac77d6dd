"""Exact rational cone geometry: dual rays, Fourier-Motzkin elimination, lattice points.

Inequalities are stored as integer tuples ``(a_0, ..., a_{n-1}, c)`` meaning
``a·x + c >= 0``; homogeneous systems simply keep ``c = 0``.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import gcd

from .lattice import IntMatrix, kernel_basis, vec_gcd_primitive


def dot(a, b) -> int:
    return sum(x * y for x, y in zip(a, b))


def cone_dual_rays(dim: int, generators) -> tuple:
    """Extreme rays of the dual cone {y : y·g >= 0 for all generators g}.

    Requires the generators to span Q^dim (the primal cone is full dimensional,
    which makes the dual cone pointed).  Each ray is returned as a primitive
    integer vector; the list is sorted for determinism.  Together the rays cut
    out the primal cone exactly: x lies in cone(generators) iff r·x >= 0 for
    every returned r.
    """
    if dim == 0:
        return ()
    gens = sorted({tuple(g) for g in generators if any(g)})
    if not gens:
        raise ValueError("generators of a positive-rank cone are empty")
    rays = set()
    for subset in combinations(range(len(gens)), dim - 1):
        ker = kernel_basis(IntMatrix.from_rows([gens[i] for i in subset], dim))
        if len(ker) != 1:
            continue
        w = vec_gcd_primitive(ker[0])
        if all(dot(w, g) >= 0 for g in gens):
            rays.add(w)
        else:
            wn = tuple(-x for x in w)
            if all(dot(wn, g) >= 0 for g in gens):
                rays.add(wn)
    return tuple(sorted(rays))


def in_cone(dual_rays, vector) -> bool:
    return all(dot(r, vector) >= 0 for r in dual_rays)


def _normalize_row(row):
    """Scale a rational inequality row to a primitive integer tuple."""
    denom = 1
    for x in row:
        if isinstance(x, Fraction):
            denom = denom * x.denominator // gcd(denom, x.denominator)
    ints = [int(x * denom) for x in row]
    g = 0
    for x in ints:
        g = gcd(g, abs(x))
    if g > 1:
        ints = [x // g for x in ints]
    return tuple(ints)


class InfeasibleError(ValueError):
    pass


def fm_eliminate(rows, k: int):
    """Eliminate variable k from the system; rows are (coeffs..., const) tuples."""
    pos, neg, zero = [], [], []
    for row in rows:
        if row[k] > 0:
            pos.append(row)
        elif row[k] < 0:
            neg.append(row)
        else:
            zero.append(row[:k] + row[k + 1 :])
    out = set(zero)
    for p in pos:
        for q in neg:
            combined = tuple(p[i] * (-q[k]) + q[i] * p[k] for i in range(len(p)))
            out.add(_normalize_row(combined[:k] + combined[k + 1 :]))
    cleaned = set()
    for row in out:
        coeffs, const = row[:-1], row[-1]
        if any(coeffs):
            cleaned.add(_normalize_row(row))
        elif const < 0:
            raise InfeasibleError("system is infeasible")
    return cleaned


def feasible(rows, nvars: int) -> bool:
    """Exact feasibility of {x in Q^nvars : a·x + c >= 0 for all rows}."""
    system = {_normalize_row(tuple(r)) for r in rows}
    try:
        for k in range(nvars - 1, -1, -1):
            system = fm_eliminate(system, k)
    except InfeasibleError:
        return False
    return True


def lattice_points(rows, nvars: int) -> list:
    """All integer points of the (bounded) polyhedron {x : a·x + c >= 0}.

    Uses staged Fourier-Motzkin projections and back-substitution, so only the
    shadow intervals are scanned.  Raises if some coordinate is unbounded.
    """
    if nvars == 0:
        return [()]
    systems = [None] * (nvars + 1)
    systems[nvars] = {_normalize_row(tuple(r)) for r in rows}
    try:
        for k in range(nvars - 1, 0, -1):
            systems[k] = fm_eliminate(systems[k + 1], k)
    except InfeasibleError:
        return []

    points = []

    def ceil_div(num, den):
        return -((-num) // den)

    def descend(k, prefix):
        system = systems[k + 1]
        lo, hi = None, None
        for row in system:
            a = row[k]
            c = row[-1] + sum(row[i] * prefix[i] for i in range(k))
            if a > 0:
                b = ceil_div(-c, a)
                lo = b if lo is None else max(lo, b)
            elif a < 0:
                b = c // (-a)
                hi = b if hi is None else min(hi, b)
            elif c < 0:
                return
        if lo is None or hi is None:
            raise ValueError("polyhedron is unbounded; cannot enumerate")
        for value in range(lo, hi + 1):
            nxt = prefix + (value,)
            if k + 1 == nvars:
                points.append(nxt)
            else:
                descend(k + 1, nxt)

    descend(0, ())
    return points
