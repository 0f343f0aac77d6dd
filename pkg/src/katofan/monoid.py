"""Fine and (where required) saturated affine monoids in canonical lattice embeddings.

An AffineMonoid is a finitely generated submonoid of Z^rank whose generators
generate Z^rank as a group; constructors re-embed arbitrary generator lists
into this canonical form via Smith normal form.  All arithmetic is exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .lattice import (
    IntMatrix,
    invert_unimodular,
    kernel_basis,
    lattice_membership,
    row_hnf_basis,
    saturation_basis,
    smith_normal_form,
    snf_rank,
    vec_gcd_primitive,
)
from .polyhedra import cone_dual_rays, dot, in_cone, lattice_points


class MonoidError(ValueError):
    pass


def _canon_gens(vectors):
    return tuple(sorted({tuple(int(x) for x in v) for v in vectors if any(v)}))


class AffineMonoid:
    """A fine monoid in canonical embedding: its generators generate Z^rank as a group.

    Callers should normally go through :func:`make_monoid`; this constructor
    trusts that the generator list already satisfies the canonical-embedding
    invariant (it does verify it).
    """

    __slots__ = ("rank", "generators", "dual_rays", "unit_indices", "sharp", "saturated", "_saturation")

    def __init__(self, rank, generators, *, _sharp=None, _saturated=None):
        self.rank = int(rank)
        self.generators = _canon_gens(generators)
        if any(len(g) != self.rank for g in self.generators):
            raise MonoidError("generator length does not match rank")
        if self.rank == 0:
            self.dual_rays = ()
            self.unit_indices = ()
            self.sharp = True
            self.saturated = True
            self._saturation = self
            return
        if not self.generators:
            raise MonoidError("a positive-rank monoid needs generators (zero monoid has rank 0)")
        if len(saturation_basis(self.generators, self.rank)) != self.rank:
            raise MonoidError("generators do not span the ambient lattice; use make_monoid")
        self.dual_rays = cone_dual_rays(self.rank, self.generators)
        self.unit_indices = tuple(
            i for i, g in enumerate(self.generators) if in_cone(self.dual_rays, tuple(-x for x in g))
        )
        self.sharp = not self.unit_indices if _sharp is None else _sharp
        if _saturated is True:
            self.saturated = True
            self._saturation = self
        else:
            sat = _build_saturation(self)
            if _saturated is False:
                self.saturated = False
            else:
                self.saturated = all(membership_witness(self, g) is not None for g in sat.generators)
            self._saturation = self if self.saturated else sat

    def contains_in_cone(self, vector) -> bool:
        if len(vector) != self.rank:
            raise MonoidError("vector length does not match rank")
        return in_cone(self.dual_rays, vector)

    def contains(self, vector) -> bool:
        """Exact monoid membership (not just cone membership)."""
        v = tuple(int(x) for x in vector)
        if not self.contains_in_cone(v):
            return False
        if self.saturated:
            return True
        return membership_witness(self, v) is not None

    def __eq__(self, other):
        return (
            isinstance(other, AffineMonoid)
            and self.rank == other.rank
            and self.generators == other.generators
        )

    def __hash__(self):
        return hash((self.rank, self.generators))

    def __repr__(self):
        return "AffineMonoid(rank=%d, generators=%r)" % (self.rank, list(self.generators))


ZERO_MONOID = AffineMonoid(0, ())


def make_monoid(rank, raw_generators) -> AffineMonoid:
    """Canonicalize a generator list: re-embed via SNF so the group becomes Z^r.

    Zero vectors and duplicates are dropped and the list is sorted; an empty
    list yields the zero monoid of rank 0.
    """
    rank = int(rank)
    gens = _canon_gens(raw_generators)
    if any(len(g) != rank for g in gens):
        raise MonoidError("generator length does not match rank")
    if not gens:
        return ZERO_MONOID
    mat = IntMatrix.from_rows(gens, rank)
    _, dd, v = smith_normal_form(mat)
    r = snf_rank(dd)
    diag = [dd[i, i] for i in range(r)]
    if r == rank and all(x == 1 for x in diag):
        return AffineMonoid(rank, gens)
    embedded = []
    for g in gens:
        image = [sum(g[i] * v[i, j] for i in range(rank)) for j in range(rank)]
        if any(image[j] % diag[j] for j in range(r)) or any(image[j] for j in range(r, rank)):
            raise MonoidError("re-embedding failed; generator outside its own lattice")
        embedded.append(tuple(image[j] // diag[j] for j in range(r)))
    return AffineMonoid(r, embedded)


# ---------------------------------------------------------------------------
# membership (Contejean-Devie search for nonnegative integer solutions)

_MEMBERSHIP_STATE_BUDGET = 500_000


def membership_witness(monoid: AffineMonoid, vector):
    """Nonnegative integer coefficients expressing ``vector`` over the generators, or None.

    Runs a Contejean-Devie style breadth-first completion on the homogeneous
    system (generators | -vector), looking for a minimal solution whose last
    coordinate is one.  Exact and terminating for arbitrary fine monoids,
    pointed or not.
    """
    v = tuple(int(x) for x in vector)
    if len(v) != monoid.rank:
        raise MonoidError("vector length does not match rank")
    n = len(monoid.generators)
    if all(x == 0 for x in v):
        return (0,) * n
    if not monoid.contains_in_cone(v):
        return None
    cols = list(monoid.generators) + [tuple(-x for x in v)]
    seen = set()
    queue = []
    for j in range(n + 1):
        c = tuple(1 if i == j else 0 for i in range(n + 1))
        seen.add(c)
        queue.append((c, cols[j]))
    minimals = []
    head = 0
    while head < len(queue):
        c, val = queue[head]
        head += 1
        if all(x == 0 for x in val):
            if c[n] == 1:
                return c[:n]
            minimals.append(c)
            continue
        for j in range(n + 1):
            if j == n and c[n] >= 1:
                continue
            if dot(val, cols[j]) >= 0:
                continue
            c2 = c[:j] + (c[j] + 1,) + c[j + 1 :]
            if c2 in seen:
                continue
            seen.add(c2)
            if any(all(a >= b for a, b in zip(c2, m)) for m in minimals):
                continue
            if len(seen) > _MEMBERSHIP_STATE_BUDGET:
                raise RuntimeError("membership search exceeded its state budget")
            queue.append((c2, tuple(a + b for a, b in zip(val, cols[j]))))
    return None


# ---------------------------------------------------------------------------
# Hilbert bases and saturation


def hilbert_basis(rank, generators):
    """Minimal generating set of cone(generators) ∩ Z^rank for a pointed cone.

    Completion over a generator-sum degree bound: every irreducible lattice
    point lies in the zonotope spanned by an independent subset of generators,
    so its degree under a strictly positive functional is at most the sum of
    the rank largest generator degrees.  Candidates up to that bound are
    enumerated exactly and filtered for irreducibility by graded reduction.
    """
    rank = int(rank)
    if rank == 0:
        return ()
    gens = sorted({vec_gcd_primitive(tuple(int(x) for x in g)) for g in generators if any(g)})
    if not gens:
        return ()
    if len(saturation_basis(gens, rank)) != rank:
        raise MonoidError("generators do not span the ambient lattice")
    dual = cone_dual_rays(rank, gens)
    phi = tuple(sum(r[i] for r in dual) for i in range(rank))
    degrees = [dot(phi, g) for g in gens]
    if any(d <= 0 for d in degrees):
        raise MonoidError("cone is not pointed")
    bound = sum(sorted(degrees, reverse=True)[: min(rank, len(gens))])
    ineqs = [r + (0,) for r in dual]
    ineqs.append(tuple(-x for x in phi) + (bound,))
    graded = sorted((dot(phi, p), p) for p in lattice_points(ineqs, rank) if any(p))
    basis = []
    for _, p in graded:
        reducible = False
        for h in basis:
            if in_cone(dual, tuple(a - b for a, b in zip(p, h))):
                reducible = True
                break
        if not reducible:
            basis.append(p)
    return tuple(sorted(basis))


def _build_saturation(monoid: AffineMonoid) -> AffineMonoid:
    d = monoid.rank
    units = [monoid.generators[i] for i in monoid.unit_indices]
    lin = saturation_basis(units, d)
    mq, rinv = lattice_quotient(lin, d)
    images = [mq.apply(g) for g in monoid.generators]
    hb = hilbert_basis(d - len(lin), images)
    lifts = [rinv.apply(h) for h in hb]
    gens = list(lifts) + list(lin) + [tuple(-x for x in b) for b in lin]
    return AffineMonoid(d, _canon_gens(gens), _sharp=not lin, _saturated=True)


def saturate(monoid: AffineMonoid) -> AffineMonoid:
    """The saturation cone(P) ∩ Z^rank of P, in the same ambient lattice."""
    return monoid._saturation


def unit_group(monoid: AffineMonoid):
    """Canonical (HNF) basis of the unit group P* = {p : p in P and -p in P}."""
    units = [monoid.generators[i] for i in monoid.unit_indices]
    return row_hnf_basis(units, monoid.rank)


# ---------------------------------------------------------------------------
# quotients by saturated sublattices


def lattice_quotient(basis_rows, dim):
    """Quotient map of Z^dim by the saturation of the row lattice of ``basis_rows``.

    Returns (M, R): M the (dim-k) x dim projection matrix and R an integral
    right inverse (M·R = identity).  The integer kernel of M is exactly the
    saturation of the input lattice.
    """
    rows = [tuple(r) for r in basis_rows if any(r)]
    k = len(rows)
    if k == 0:
        eye = IntMatrix.identity(dim)
        return eye, eye
    _, dd, v = smith_normal_form(IntMatrix.from_rows(rows, dim))
    if snf_rank(dd) != k:
        raise MonoidError("quotient basis rows are linearly dependent")
    vt = v.transpose()
    m = dim - k
    mq = IntMatrix.from_rows([vt.row(i) for i in range(k, dim)], dim) if m else IntMatrix(0, dim, [])
    vinv = invert_unimodular(v)
    rinv = IntMatrix(dim, m, [vinv[k + j, i] for i in range(dim) for j in range(m)])
    # canonical signs: make the first nonzero entry of each projection row positive
    mq_rows = mq.row_list()
    rinv_cols = [list(rinv.column(j)) for j in range(m)]
    for idx, row in enumerate(mq_rows):
        first = next((x for x in row if x), 0)
        if first < 0:
            mq_rows[idx] = [-x for x in row]
            rinv_cols[idx] = [-x for x in rinv_cols[idx]]
    mq = IntMatrix.from_rows(mq_rows, dim) if m else mq
    rinv = IntMatrix(dim, m, [rinv_cols[j][i] for i in range(dim) for j in range(m)])
    return mq, rinv


# ---------------------------------------------------------------------------
# homomorphisms


@dataclass(frozen=True)
class HomClassification:
    is_local: bool
    is_iso: bool
    is_face_localization: bool


class MonoidHom:
    """A monoid homomorphism as the integer matrix of its group extension."""

    __slots__ = ("source", "target", "matrix", "classification")

    def __init__(self, source, target, matrix, classification=None):
        if matrix.rows != target.rank or matrix.cols != source.rank:
            raise MonoidError("hom matrix shape does not match source/target ranks")
        self.source = source
        self.target = target
        self.matrix = matrix
        self.classification = classification

    def apply(self, vector):
        return self.matrix.apply(vector)

    def compose(self, earlier: "MonoidHom") -> "MonoidHom":
        """self ∘ earlier."""
        if earlier.target != self.source:
            raise MonoidError("homs are not composable")
        return MonoidHom(earlier.source, self.target, self.matrix.mul(earlier.matrix))

    def __eq__(self, other):
        return (
            isinstance(other, MonoidHom)
            and self.source == other.source
            and self.target == other.target
            and self.matrix == other.matrix
        )

    def __hash__(self):
        return hash((self.source, self.target, self.matrix))

    def __repr__(self):
        return "MonoidHom(%r -> %r, %r)" % (self.source, self.target, self.matrix)


def identity_hom(monoid: AffineMonoid) -> MonoidHom:
    return MonoidHom(monoid, monoid, IntMatrix.identity(monoid.rank))


def hom_is_iso(hom: MonoidHom) -> bool:
    if hom.source.rank != hom.target.rank:
        return False
    try:
        inv = invert_unimodular(hom.matrix)
    except ValueError:
        return False
    return all(hom.source.contains(inv.apply(q)) for q in hom.target.generators)


def hom_is_local(hom: MonoidHom) -> bool:
    """Preimage of the maximal ideal is the maximal ideal: no non-unit maps to a unit."""
    for i, g in enumerate(hom.source.generators):
        if i in hom.source.unit_indices:
            continue
        img = hom.apply(g)
        if hom.target.contains(img) and hom.target.contains(tuple(-x for x in img)):
            return False
    return True


def hom_is_face_localization(hom: MonoidHom) -> bool:
    if not hom.source.sharp:
        return False
    for face in faces(hom.source):
        loc = localization(hom.source, face)
        if loc.monoid.rank != hom.target.rank:
            continue
        iota = hom.matrix.mul(loc.rinv)
        if iota.mul(loc.matrix) != hom.matrix:
            continue
        candidate = MonoidHom(loc.monoid, hom.target, iota)
        if all(hom.target.contains(iota.apply(g)) for g in loc.monoid.generators) and hom_is_iso(candidate):
            return True
    return False


def validate_hom(matrix: IntMatrix, source: AffineMonoid, target: AffineMonoid) -> MonoidHom:
    """Check that the matrix maps source into target; classify the hom.

    Membership of every generator image is certified by an explicit witness.
    Raises MonoidError on a dimension mismatch or an image outside the target.
    """
    if matrix.rows != target.rank or matrix.cols != source.rank:
        raise MonoidError("dimension mismatch: matrix is %dx%d, expected %dx%d"
                          % (matrix.rows, matrix.cols, target.rank, source.rank))
    for g in source.generators:
        if membership_witness(target, matrix.apply(g)) is None:
            raise MonoidError("generator image outside target: %r" % (g,))
    hom = MonoidHom(source, target, matrix)
    classification = HomClassification(
        is_local=hom_is_local(hom),
        is_iso=hom_is_iso(hom),
        is_face_localization=hom_is_face_localization(hom),
    )
    return MonoidHom(source, target, matrix, classification)


# ---------------------------------------------------------------------------
# faces and primes


class Face:
    """A face of an affine monoid, recorded by the generator indices lying on it.

    ``support`` is an exact linear functional that is nonnegative on all
    generators and zero precisely on the face; ``lattice_basis`` is a
    canonical basis of the saturation of the group spanned by the face.
    """

    __slots__ = ("parent", "indices", "support", "lattice_basis")

    def __init__(self, parent, indices, support):
        self.parent = parent
        self.indices = tuple(sorted(indices))
        self.support = tuple(support)
        self.lattice_basis = tuple(
            saturation_basis([parent.generators[i] for i in self.indices], parent.rank)
        )

    @property
    def prime_indices(self):
        """Generator indices lying in the complementary prime ideal."""
        sel = set(self.indices)
        return tuple(i for i in range(len(self.parent.generators)) if i not in sel)

    def generator_vectors(self):
        return tuple(self.parent.generators[i] for i in self.indices)

    def contains(self, vector, *, check_parent=True) -> bool:
        """Membership of a parent element in the face submonoid."""
        if check_parent and not self.parent.contains(vector):
            return False
        return dot(self.support, vector) == 0

    def __eq__(self, other):
        return isinstance(other, Face) and self.parent == other.parent and self.indices == other.indices

    def __hash__(self):
        return hash((self.parent, self.indices))

    def __repr__(self):
        return "Face(%r)" % (list(self.indices),)


class PrimeIdeal:
    """The prime ideal P - F complementary to a face F."""

    __slots__ = ("face",)

    def __init__(self, face: Face):
        self.face = face

    @property
    def parent(self):
        return self.face.parent

    @property
    def generator_indices(self):
        return self.face.prime_indices

    def contains(self, vector, *, check_parent=True) -> bool:
        if check_parent and not self.parent.contains(vector):
            return False
        return dot(self.face.support, vector) != 0

    def __eq__(self, other):
        return isinstance(other, PrimeIdeal) and self.face == other.face

    def __hash__(self):
        return hash(("prime", self.face))

    def __repr__(self):
        return "PrimeIdeal(complement=%r)" % (list(self.face.indices),)


@lru_cache(maxsize=None)
def faces(monoid: AffineMonoid):
    """All faces of a sharp monoid, ordered by (size, indices).

    Faces are exactly the intersections of the zero sets of the dual cone's
    extreme rays (plus the whole monoid), each certified by a supporting
    functional obtained as the sum of the rays vanishing on it.
    """
    if not monoid.sharp:
        raise MonoidError("faces are only enumerated for sharp monoids; sharpen first")
    n = len(monoid.generators)
    gens = monoid.generators
    full = frozenset(range(n))
    closed = {full}
    for r in monoid.dual_rays:
        closed.add(frozenset(i for i in range(n) if dot(r, gens[i]) == 0))
    frontier = list(closed)
    while frontier:
        fresh = []
        for a in list(closed):
            for b in frontier:
                c = a & b
                if c not in closed:
                    closed.add(c)
                    fresh.append(c)
        frontier = fresh
    result = []
    for s in closed:
        rays = [r for r in monoid.dual_rays if all(dot(r, gens[i]) == 0 for i in s)]
        support = tuple(sum(r[i] for r in rays) for i in range(monoid.rank)) if monoid.rank else ()
        result.append(Face(monoid, tuple(sorted(s)), support))
    result.sort(key=lambda f: (len(f.indices), f.indices))
    return tuple(result)


def face_from_indices(monoid: AffineMonoid, indices) -> Face:
    idx = tuple(sorted(int(i) for i in indices))
    for face in faces(monoid):
        if face.indices == idx:
            return face
    raise MonoidError("generator indices %r do not form a face" % (list(idx),))


def face_of_element(monoid: AffineMonoid, vector) -> Face:
    """The smallest face of a sharp monoid containing the given element."""
    if not monoid.contains(vector):
        raise MonoidError("element is not in the monoid")
    tight = [r for r in monoid.dual_rays if dot(r, vector) == 0]
    idx = [
        i
        for i in range(len(monoid.generators))
        if all(dot(r, monoid.generators[i]) == 0 for r in tight)
    ]
    return face_from_indices(monoid, idx)


# ---------------------------------------------------------------------------
# localization and sharpening


@dataclass(frozen=True)
class Localization:
    monoid: AffineMonoid
    matrix: IntMatrix  # quotient projection, source.rank -> monoid.rank
    rinv: IntMatrix  # integral right inverse of matrix


@lru_cache(maxsize=None)
def localization(monoid: AffineMonoid, face: Face) -> Localization:
    if face.parent != monoid:
        raise MonoidError("face does not belong to this monoid")
    if not face.indices:
        eye = IntMatrix.identity(monoid.rank)
        return Localization(monoid, eye, eye)
    mq, rinv = lattice_quotient(face.lattice_basis, monoid.rank)
    images = [mq.apply(g) for g in monoid.generators]
    target = AffineMonoid(
        monoid.rank - len(face.lattice_basis),
        _canon_gens(images),
        _sharp=True,
        _saturated=True if monoid.saturated else None,
    )
    return Localization(target, mq, rinv)


def sharp_localize(monoid: AffineMonoid, face: Face):
    """Sharp localization of P at a face: invert the face, then kill all units.

    Returns the localized monoid together with the quotient hom; its primes
    correspond exactly to the primes of P disjoint from the face.
    """
    loc = localization(monoid, face)
    return loc.monoid, MonoidHom(monoid, loc.monoid, loc.matrix)


def face_image_in_localization(monoid: AffineMonoid, face: Face, bigger: Face) -> Face:
    """Image in the localization at ``face`` of a face containing it."""
    if not set(face.indices) <= set(bigger.indices):
        raise MonoidError("face image needs a face containing the localization face")
    loc = localization(monoid, face)
    phi_bar = loc.rinv.transpose().apply(bigger.support)
    idx = [j for j, g in enumerate(loc.monoid.generators) if dot(phi_bar, g) == 0]
    return face_from_indices(loc.monoid, idx)


def face_preimage_from_localization(monoid: AffineMonoid, face: Face, downstairs: Face) -> Face:
    """Preimage in P of a face of the localization of P at ``face``."""
    loc = localization(monoid, face)
    if downstairs.parent != loc.monoid:
        raise MonoidError("face does not live in the localization")
    psi = loc.matrix.transpose().apply(downstairs.support)
    idx = [i for i, g in enumerate(monoid.generators) if dot(psi, g) == 0]
    return face_from_indices(monoid, idx)


def sharpen(monoid: AffineMonoid):
    """Quotient by the unit group: returns (P/P*, quotient hom); the result is sharp."""
    if monoid.sharp:
        return monoid, identity_hom(monoid)
    units = [monoid.generators[i] for i in monoid.unit_indices]
    lin = saturation_basis(units, monoid.rank)
    mq, _ = lattice_quotient(lin, monoid.rank)
    images = [mq.apply(g) for g in monoid.generators]
    target = AffineMonoid(
        monoid.rank - len(lin),
        _canon_gens(images),
        _sharp=True,
        _saturated=True if monoid.saturated else None,
    )
    return target, MonoidHom(monoid, target, mq)


# ---------------------------------------------------------------------------
# pushouts in the category of fs monoids


def fs_pushout(h1: MonoidHom, h2: MonoidHom):
    """Amalgamated sum P ⊕_S Q in fs monoids, with its two insertion homs.

    Computed as the image of P ⊕ Q in the quotient of Z^{dP+dQ} by the
    saturation of the antidiagonal image of S's group, followed by saturation
    of the image monoid.  The free quotient discards torsion that saturation
    and sharpening would kill anyway; the universal property holds against
    every representable (torsion-free) fs target.
    """
    if h1.source != h2.source:
        raise MonoidError("pushout requires a common source")
    p, q, s = h1.target, h2.target, h1.source
    dp, dq, ds = p.rank, q.rank, s.rank
    anti = []
    for k in range(ds):
        e = tuple(1 if i == k else 0 for i in range(ds))
        anti.append(tuple(h1.apply(e)) + tuple(-x for x in h2.apply(e)))
    lin = saturation_basis(anti, dp + dq)
    mq, _ = lattice_quotient(lin, dp + dq)
    m = mq.rows
    img_p = [mq.apply(tuple(g) + (0,) * dq) for g in p.generators]
    img_q = [mq.apply((0,) * dp + tuple(g)) for g in q.generators]
    base = AffineMonoid(m, _canon_gens(img_p + img_q))
    result = saturate(base)
    ins_p = MonoidHom(p, result, IntMatrix(m, dp, [mq[i, j] for i in range(m) for j in range(dp)]))
    ins_q = MonoidHom(q, result, IntMatrix(m, dq, [mq[i, j + dp] for i in range(m) for j in range(dq)]))
    return result, ins_p, ins_q


def pushout_factor(result: AffineMonoid, ins_p: MonoidHom, ins_q: MonoidHom,
                   u: MonoidHom, v: MonoidHom) -> MonoidHom:
    """The unique hom w out of a pushout with w∘ins_p = u and w∘ins_q = v.

    Solves the defining linear system exactly and verifies that the result
    lands in the target monoid; raises MonoidError if the cocone is
    incompatible or the images leave the target.
    """
    if u.source != ins_p.source or v.source != ins_q.source or u.target != v.target:
        raise MonoidError("cocone does not match the pushout legs")
    w_target = u.target
    m = result.rank
    dp, dq = ins_p.source.rank, ins_q.source.rank
    # stack: unknown W (dW x m) with W·[ins_p | ins_q] = [u | v]
    a_cols = []
    b_cols = []
    for j in range(dp):
        a_cols.append(ins_p.matrix.column(j))
        b_cols.append(u.matrix.column(j))
    for j in range(dq):
        a_cols.append(ins_q.matrix.column(j))
        b_cols.append(v.matrix.column(j))
    w = _solve_left_exact(a_cols, b_cols, m, w_target.rank)
    if w is None:
        raise MonoidError("cocone is not compatible with the pushout")
    hom = MonoidHom(result, w_target, w)
    if hom.compose(ins_p) != u or hom.compose(ins_q) != v:
        raise MonoidError("factoring hom does not commute")
    for g in result.generators:
        if not w_target.contains(hom.apply(g)):
            raise MonoidError("factoring hom leaves the target monoid")
    return hom


def _solve_left_exact(a_cols, b_cols, m, rows_out):
    """Solve W·A = B for integer W given A by columns (length m) and B by columns."""
    # Transpose to A^T · W^T = B^T and run fractional elimination.
    ncols = len(a_cols)
    aug = [[Fraction(a_cols[i][k]) for k in range(m)] + [Fraction(b_cols[i][r]) for r in range(rows_out)]
           for i in range(ncols)]
    pivots = []
    row = 0
    for col in range(m):
        piv = next((r for r in range(row, ncols) if aug[r][col]), None)
        if piv is None:
            return None  # A must have full column rank m
        aug[row], aug[piv] = aug[piv], aug[row]
        pv = aug[row][col]
        aug[row] = [x / pv for x in aug[row]]
        for r in range(ncols):
            if r != row and aug[r][col]:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[row])]
        pivots.append(col)
        row += 1
        if row == ncols:
            break
    if row < m:
        return None
    for r in range(row, ncols):
        if any(aug[r][m:]):
            return None  # inconsistent
    entries = []
    for out_r in range(rows_out):
        for j in range(m):
            x = aug[j][m + out_r]
            if x.denominator != 1:
                return None
            entries.append(x.numerator)
    return IntMatrix(rows_out, m, entries)


# ---------------------------------------------------------------------------
# automorphisms (needed for twisted products and the classifying-stack checks)


def irreducible_generators(monoid: AffineMonoid):
    """Indices of generators that are not sums of two nonzero monoid elements."""
    if not monoid.sharp:
        raise MonoidError("irreducibles are only defined for sharp monoids")
    out = []
    for i, g in enumerate(monoid.generators):
        reducible = False
        for j, h in enumerate(monoid.generators):
            if i == j:
                continue
            rest = tuple(a - b for a, b in zip(g, h))
            if any(rest) and monoid.contains(rest):
                reducible = True
                break
            if not any(rest):
                reducible = True  # duplicate direction cannot occur (canonical), but be safe
                break
        if not reducible:
            out.append(i)
    return tuple(out)


def monoid_automorphisms(monoid: AffineMonoid):
    """All automorphisms of a sharp fine monoid, as unimodular matrices.

    Automorphisms permute the irreducible generators; candidates are solved
    from the images of a spanning independent subset and verified.
    """
    if monoid.rank == 0:
        return (IntMatrix.identity(0),)
    irr = [monoid.generators[i] for i in irreducible_generators(monoid)]
    d = monoid.rank
    base = []
    for g in irr:
        if len(saturation_basis(base + [g], d)) > len(base):
            base.append(g)
        if len(base) == d:
            break
    if len(base) < d:
        raise MonoidError("irreducibles do not span; monoid is not sharp/canonical")
    found = set()
    targets = irr

    def assign(k, chosen):
        if k == d:
            mat = _solve_left_exact(base, chosen, d, d)
            if mat is None:
                return
            try:
                invert_unimodular(mat)
            except ValueError:
                return
            images = {tuple(mat.apply(g)) for g in irr}
            if images != set(irr):
                return
            if all(monoid.contains(mat.apply(g)) for g in monoid.generators):
                inv = invert_unimodular(mat)
                if all(monoid.contains(inv.apply(g)) for g in monoid.generators):
                    found.add(mat)
            return
        for t in targets:
            assign(k + 1, chosen + [t])

    assign(0, [])
    return tuple(sorted(found, key=lambda m: m.entries))


def same_submonoid(a: AffineMonoid, b: AffineMonoid) -> bool:
    """Equality as submonoids of the common ambient lattice."""
    if a.rank != b.rank:
        return False
    return all(b.contains(g) for g in a.generators) and all(a.contains(g) for g in b.generators)
