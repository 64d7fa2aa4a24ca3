"""Root systems, Weyl groups, affine Weyl elements, lattices and alcoves.

Every vector lives in the simple-root basis of t*, with exact rational
coordinates; t is identified with t* through the invariant inner product,
normalized so that long roots have squared length 2.  The exponential map
underlying all alcove conventions is exp(mu) = exp_matrix(2*pi*mu), so the
integral lattice is the coroot lattice and weights pair with alcove points
as e^{2*pi*i*<lambda, mu>}.

Irrational scalars appear in exactly two places: the covolume of the
coroot lattice (sqrt of a rational determinant) and the Riemannian volume
of the group.  Everything else is a Fraction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .exact import (
    Mat,
    Q,
    Vec,
    as_q,
    det,
    identity,
    inverse,
    lattice_points_in_ball,
    mat,
    matmul,
    matvec,
    solve,
    vadd,
    vdot,
    vec,
    vscale,
    vzero,
)

__all__ = [
    "GroupSpec",
    "WeylElement",
    "AffineWeylElement",
    "Alcove",
    "RootSystem",
    "UnsupportedTypeError",
    "build_root_system",
    "weyl_group",
    "star",
    "alcove_membership",
    "enumerate_waff_positive",
    "alcove_representative",
    "covolume_T",
    "volume_G",
]


class UnsupportedTypeError(ValueError):
    """Raised for group types outside the supported table."""


# Cartan matrix C[i][j] = <alpha_j, alpha_i^vee> and root-length vector
# d_i = |alpha_i|^2 / 2, normalized so the long roots have d = 1.
_SUPPORTED: dict[tuple[str, int], tuple[list[list[int]], list[Fraction]]] = {
    ("A", 1): ([[2]], [Q(1)]),
    ("A", 2): ([[2, -1], [-1, 2]], [Q(1)] * 2),
    ("A", 3): ([[2, -1, 0], [-1, 2, -1], [0, -1, 2]], [Q(1)] * 3),
    ("A", 4): (
        [[2, -1, 0, 0], [-1, 2, -1, 0], [0, -1, 2, -1], [0, 0, -1, 2]],
        [Q(1)] * 4,
    ),
    ("B", 2): ([[2, -1], [-2, 2]], [Q(1), Q(1, 2)]),
    ("C", 2): ([[2, -2], [-1, 2]], [Q(1, 2), Q(1)]),
    ("C", 3): ([[2, -1, 0], [-1, 2, -2], [0, -1, 2]], [Q(1, 2), Q(1, 2), Q(1)]),
    ("D", 4): (
        [[2, -1, 0, 0], [-1, 2, -1, -1], [0, -1, 2, 0], [0, -1, 0, 2]],
        [Q(1)] * 4,
    ),
    ("G", 2): ([[2, -1], [-3, 2]], [Q(1), Q(1, 3)]),
}


@dataclass(frozen=True)
class GroupSpec:
    """Series letter and rank of a simple, simply connected group."""

    series: str
    rank: int

    @classmethod
    def parse(cls, name: str) -> "GroupSpec":
        name = name.strip()
        if len(name) < 2 or not name[0].isalpha() or not name[1:].isdigit():
            raise UnsupportedTypeError(f"cannot parse group spec {name!r}")
        spec = cls(name[0].upper(), int(name[1:]))
        if (spec.series, spec.rank) not in _SUPPORTED:
            raise UnsupportedTypeError(f"unsupported group type {name!r}")
        return spec

    @property
    def name(self) -> str:
        return f"{self.series}{self.rank}"


@dataclass(frozen=True)
class WeylElement:
    """Orthogonal action on simple-root coordinates plus its length."""

    matrix: Mat
    length: int

    @property
    def sign(self) -> int:
        return -1 if self.length % 2 else 1

    def act(self, v: Vec) -> Vec:
        return matvec(self.matrix, v)


@dataclass(frozen=True)
class AffineWeylElement:
    """x -> linear(x) + translation, with translation in the coroot lattice."""

    translation: Vec
    linear: WeylElement
    sign: int

    def act(self, v: Vec) -> Vec:
        return vadd(self.linear.act(v), self.translation)

    def coset_label(self) -> Vec:
        """Lattice vector labelling the left coset W.w, i.e. linear^{-1}(translation)."""
        label = solve(self.linear.matrix, self.translation)
        assert label is not None
        return label


@dataclass(frozen=True)
class Alcove:
    """Fundamental alcove: <alpha_i, mu> >= 0 for simple i, <alpha_0, mu> <= 1."""

    vertices: tuple[Vec, ...]


class RootSystem:
    """Root and weight data of one supported simple type.

    Single source of truth for inner products, lattices and the alcove.
    Immutable after construction; safe to share across threads.
    """

    def __init__(self, spec: GroupSpec):
        key = (spec.series, spec.rank)
        if key not in _SUPPORTED:
            raise UnsupportedTypeError(f"unsupported group type {spec.name}")
        cartan_rows, lengths = _SUPPORTED[key]
        self.spec = spec
        self.rank = spec.rank
        self.cartan_matrix: Mat = mat(cartan_rows)
        self._d = tuple(lengths)
        # Gram matrix of the simple roots: B_ij = d_i * C[i][j].
        self.gram: Mat = tuple(
            tuple(self._d[i] * self.cartan_matrix[i][j] for j in range(self.rank))
            for i in range(self.rank)
        )
        self.det_gram: Q = det(self.gram)
        self.simple_roots: tuple[Vec, ...] = tuple(
            tuple(Q(1 if i == j else 0) for j in range(self.rank))
            for i in range(self.rank)
        )
        self._reflections = tuple(
            tuple(
                tuple(
                    Q(1 if k == j else 0) - (self.cartan_matrix[i][j] if k == i else 0)
                    for j in range(self.rank)
                )
                for k in range(self.rank)
            )
            for i in range(self.rank)
        )
        self.positive_roots: tuple[Vec, ...] = self._generate_positive_roots()
        self.n_positive = len(self.positive_roots)
        self.dim_g = self.rank + 2 * self.n_positive
        self.highest_root: Vec = max(
            self.positive_roots, key=lambda r: (sum(r), r)
        )
        # Fundamental weights: columns solve C x = e_i.
        self.fundamental_weights: tuple[Vec, ...] = tuple(
            solve(self.cartan_matrix, tuple(Q(1 if j == i else 0) for j in range(self.rank)))
            for i in range(self.rank)
        )
        self.rho: Vec = vec(
            sum(w[j] for w in self.fundamental_weights) for j in range(self.rank)
        )
        self.coroot_basis: tuple[Vec, ...] = tuple(
            vscale(1 / self._d[i], self.simple_roots[i]) for i in range(self.rank)
        )
        self.coroot_gram: Mat = tuple(
            tuple(self.ip(a, b) for b in self.coroot_basis) for a in self.coroot_basis
        )
        self.det_coroot_gram: Q = det(self.coroot_gram)
        self._coroot_basis_inv: Mat = inverse(mat_cols(self.coroot_basis))
        self.center_order: int = int(det(self.cartan_matrix))
        self.alcove = Alcove(
            vertices=(vzero(self.rank),)
            + tuple(self._alcove_vertex(i) for i in range(self.rank))
        )
        self._weyl: tuple[WeylElement, ...] | None = None
        self._w0: WeylElement | None = None

    # -- inner products and pairings -------------------------------------

    def ip(self, u: Vec, v: Vec) -> Q:
        """Invariant inner product, exact."""
        return vdot(u, matvec(self.gram, v))

    def norm_sq(self, u: Vec) -> Q:
        return self.ip(u, u)

    def coroot(self, root: Vec) -> Vec:
        return vscale(2 / self.norm_sq(root), root)

    def pair_coroot(self, mu: Vec, root: Vec) -> Q:
        """<mu, root^vee> = 2 <mu, root> / <root, root>."""
        return 2 * self.ip(mu, root) / self.norm_sq(root)

    # -- basis conversions -------------------------------------------------

    def from_weight_coords(self, coeffs: Vec) -> Vec:
        """Vector with the given fundamental-weight coordinates."""
        out = vzero(self.rank)
        for c, w in zip(coeffs, self.fundamental_weights):
            out = vadd(out, vscale(c, w))
        return out

    def to_weight_coords(self, v: Vec) -> Vec:
        """Coordinates of v in the fundamental-weight basis."""
        return tuple(self.pair_coroot(v, a) for a in self.simple_roots)

    def lattice_coords(self, v: Vec) -> Vec:
        """Coordinates of v in the coroot basis."""
        return matvec(self._coroot_basis_inv, v)

    def in_integral_lattice(self, v: Vec) -> bool:
        return all(c.denominator == 1 for c in self.lattice_coords(v))

    # -- roots -------------------------------------------------------------

    def _generate_positive_roots(self) -> tuple[Vec, ...]:
        roots = set(self.simple_roots)
        frontier = set(self.simple_roots)
        while frontier:
            new = set()
            for r in frontier:
                for refl in self._reflections:
                    img = matvec(refl, r)
                    if img not in roots:
                        new.add(img)
            roots |= new
            frontier = new
        positive = [r for r in roots if all(c >= 0 for c in r)]
        positive.sort(key=lambda r: (sum(r), r))
        return tuple(positive)

    def _alcove_vertex(self, i: int) -> Vec:
        u = solve(self.gram, tuple(Q(1 if j == i else 0) for j in range(self.rank)))
        h = self.ip(self.highest_root, u)
        return vscale(1 / h, u)

    # -- Weyl group ----------------------------------------------------------

    def weyl_elements(self) -> tuple[WeylElement, ...]:
        if self._weyl is None:
            self._weyl = self._generate_weyl()
        return self._weyl

    def _generate_weyl(self) -> tuple[WeylElement, ...]:
        seen = {identity(self.rank)}
        frontier = [identity(self.rank)]
        while frontier:
            new = []
            for m in frontier:
                for refl in self._reflections:
                    img = matmul(refl, m)
                    if img not in seen:
                        seen.add(img)
                        new.append(img)
            frontier = new
        elements = []
        for m in seen:
            inv_count = sum(
                1 for r in self.positive_roots if all(c <= 0 for c in matvec(m, r))
            )
            elements.append(WeylElement(matrix=m, length=inv_count))
        elements.sort(key=lambda w: (w.length, w.matrix))
        return tuple(elements)

    @property
    def w0(self) -> WeylElement:
        if self._w0 is None:
            self._w0 = max(self.weyl_elements(), key=lambda w: w.length)
        return self._w0

    def dominant_representative(self, v: Vec) -> tuple[Vec, WeylElement]:
        """The dominant Weyl image of v together with one element achieving it."""
        for w in self.weyl_elements():
            img = w.act(v)
            if all(self.ip(img, a) >= 0 for a in self.simple_roots):
                return img, w
        raise RuntimeError("no dominant representative found")  # pragma: no cover


def mat_cols(cols) -> Mat:
    return tuple(zip(*cols))


@lru_cache(maxsize=None)
def _cached_root_system(series: str, rank: int) -> RootSystem:
    return RootSystem(GroupSpec(series, rank))


def build_root_system(spec: GroupSpec | str) -> RootSystem:
    """Construct (and cache) the root system for a supported type."""
    if isinstance(spec, str):
        spec = GroupSpec.parse(spec)
    if (spec.series, spec.rank) not in _SUPPORTED:
        raise UnsupportedTypeError(f"unsupported group type {spec.name}")
    return _cached_root_system(spec.series, spec.rank)


def weyl_group(rs: RootSystem) -> tuple[WeylElement, ...]:
    return rs.weyl_elements()


def star(rs: RootSystem, mu: Vec) -> Vec:
    """The involution *mu = -w0.mu; maps the alcove to itself."""
    return vscale(Q(-1), rs.w0.act(mu))


def alcove_membership(rs: RootSystem, mu: Vec) -> tuple[str, list[str]]:
    """Classify mu against the closed alcove.

    Returns ('interior'|'boundary'|'outside', list of tight facet labels).
    """
    tight: list[str] = []
    for i, a in enumerate(rs.simple_roots):
        v = rs.ip(a, mu)
        if v < 0:
            return "outside", []
        if v == 0:
            tight.append(f"alpha_{i + 1}")
    h = rs.ip(rs.highest_root, mu)
    if h > 1:
        return "outside", []
    if h == 1:
        tight.append("alpha_0")
    return ("boundary", tight) if tight else ("interior", [])


def enumerate_waff_positive(rs: RootSystem, radius_sq: Q | int) -> list[AffineWeylElement]:
    """Affine Weyl elements mapping the alcove into the dominant chamber.

    One representative per left coset W\\Waff, labelled by the coroot
    lattice; keeps those whose lattice label has squared norm <= radius_sq.
    """
    radius_sq = as_q(radius_sq)
    out = []
    bary = alcove_barycenter(rs)
    for coeffs in lattice_points_in_ball(rs.coroot_gram, radius_sq):
        m = vzero(rs.rank)
        for c, b in zip(coeffs, rs.coroot_basis):
            m = vadd(m, vscale(c, b))
        out.append(_positive_rep_for_translation(rs, m, bary))
    return out


def alcove_barycenter(rs: RootSystem) -> Vec:
    verts = rs.alcove.vertices
    s = vzero(rs.rank)
    for v in verts:
        s = vadd(s, v)
    return vscale(Q(1, len(verts)), s)


def _positive_rep_for_translation(rs: RootSystem, m: Vec, bary: Vec) -> AffineWeylElement:
    p0 = vadd(bary, m)
    _, u = rs.dominant_representative(p0)
    return AffineWeylElement(translation=u.act(m), linear=u, sign=u.sign)


def alcove_representative(rs: RootSystem, v: Vec) -> Vec:
    """The unique point of the closed alcove in the affine Weyl orbit of v.

    Alternates dominant reduction with reflection in the affine wall
    <alpha_0, x> = 1 until the point lies in the alcove; terminates because
    each affine reflection strictly decreases the distance to the alcove.
    """
    x = v
    for _ in range(10000):
        x, _ = rs.dominant_representative(x)
        h = rs.ip(rs.highest_root, x)
        if h <= 1:
            return x
        # reflect in the affine hyperplane <alpha_0, x> = 1
        coroot = rs.coroot(rs.highest_root)
        x = vadd(x, vscale(1 - h, coroot))
    raise RuntimeError("alcove reduction failed to terminate")  # pragma: no cover


def covolume_T(rs: RootSystem) -> float:
    """Covolume of t / (coroot lattice): sqrt det of the coroot Gram matrix."""
    return math.sqrt(float(rs.det_coroot_gram))


def rho_product(rs: RootSystem) -> Q:
    """prod over positive roots of <rho, alpha>, exact."""
    p = Q(1)
    for a in rs.positive_roots:
        p *= rs.ip(rs.rho, a)
    return p


def volume_G(rs: RootSystem) -> float:
    """Riemannian volume of the group in the normalized metric.

    Derivation: integration over conjugacy classes gives
    Vol(G) = Vol(G/T) * Vol(T) with Vol(T) = (2*pi)^rank * covol(coroot
    lattice) (the exponential mu -> exp(2*pi*mu) stretches each of the rank
    torus directions by 2*pi), while the flag manifold with the metric
    induced by the normalized inner product has
    Vol(G/T) = prod_{alpha > 0} 2*pi / <rho, alpha>.
    For A1 this reproduces the 3-sphere of radius sqrt(2),
    Vol = 2*pi^2*(sqrt 2)^3, which the tests check independently, and the
    class-integration identity int_A prod (2 sin pi<alpha,mu>)^2 dmu =
    covol pins the same normalization by quadrature.
    """
    r, n = rs.rank, rs.n_positive
    return (2 * math.pi) ** (r + n) * covolume_T(rs) / float(rho_product(rs))
