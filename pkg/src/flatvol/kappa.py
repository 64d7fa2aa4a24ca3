"""The truncated power kappa: pushforward of the orthant measure.

kappa(xi) is the density at xi of the pushforward of Lebesgue measure on
R_+^n under x -> sum_i x_i v_i, taken relative to the inner-product
Lebesgue measure on t*.  Two independent evaluation routes are provided:

* `kappa_point` computes the exact (n-rank)-volume of the fiber polytope
  {x >= 0 : sum x_i v_i = xi} by vertex enumeration and an anchored
  triangulation, all in rational arithmetic;
* `kappa_build` returns a chamber-complex spline whose polynomials are
  interpolated from `kappa_point` values and cross-validated at extra
  points, then evaluated independently ever after.

Chamber polynomials are stored relative to coordinate Lebesgue measure in
the simple-root basis; the single conversion factor to inner-product
Lebesgue is 1/sqrt(det Gram), kept symbolic.
"""

from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .exact import Mat, Q, Vec, det, nullspace, rref, solve, vdot, vec
from .liecore import RootSystem
from .poly import (
    Poly,
    monomials_homogeneous,
    poly_add,
    poly_const,
    poly_directional_derivative,
    poly_eval,
    poly_scale,
)

__all__ = [
    "OnWallError",
    "DegenerateArrangementError",
    "KappaValue",
    "VectorConfig",
    "PiecewisePolynomial",
    "kappa_point",
    "kappa_build",
    "SymmetricPoly",
    "symmetric_extension",
    "DiffOperator",
    "pullback_operator",
    "apply_operator",
]


class OnWallError(ValueError):
    """Evaluation requested at a non-regular point of a chamber complex."""


class DegenerateArrangementError(RuntimeError):
    """Interpolation system unexpectedly singular; signals an internal bug."""


# ---------------------------------------------------------------------------
# exact polytope volume
# ---------------------------------------------------------------------------


def _enumerate_vertices(constraints: list[tuple[Vec, Q]], dim: int) -> list[Vec]:
    """Vertices of {y : a.y <= b}, by solving d-subsets of tight constraints."""
    if dim == 0:
        return [()] if all(b >= 0 for _, b in constraints) else []
    verts: set[Vec] = set()
    idx = range(len(constraints))
    for subset in combinations(idx, dim):
        amat = tuple(constraints[i][0] for i in subset)
        bvec = tuple(constraints[i][1] for i in subset)
        y = solve(amat, bvec)
        if y is None:
            continue
        if all(vdot(a, y) <= b for a, b in constraints):
            verts.add(y)
    return sorted(verts)


def _polytope_volume(constraints: list[tuple[Vec, Q]], dim: int) -> Q:
    """Exact Lebesgue volume of a bounded H-polytope in R^dim."""
    if dim == 0:
        return Q(1) if all(b >= 0 for _, b in constraints) else Q(0)
    verts = _enumerate_vertices(constraints, dim)
    if len(verts) <= dim:
        return Q(0)

    tight_sets = [
        frozenset(i for i, v in enumerate(verts) if vdot(a, v) == b)
        for a, b in constraints
    ]
    memo: dict[frozenset[int], list[tuple[int, ...]]] = {}

    def simplices(vset: frozenset[int]) -> list[tuple[int, ...]]:
        if len(vset) == 1:
            return [(next(iter(vset)),)]
        hit = memo.get(vset)
        if hit is not None:
            return hit
        anchor = min(vset)
        out: list[tuple[int, ...]] = []
        seen: set[frozenset[int]] = set()
        for tight in tight_sets:
            sub = vset & tight
            if not sub or anchor in sub or sub == vset or sub in seen:
                continue
            seen.add(sub)
            out.extend((anchor,) + s for s in simplices(sub))
        memo[vset] = out
        return out

    total = Q(0)
    fact = math.factorial(dim)
    for simplex in simplices(frozenset(range(len(verts)))):
        if len(simplex) != dim + 1:
            continue
        v0 = verts[simplex[0]]
        edges = tuple(
            tuple(a - b for a, b in zip(verts[i], v0)) for i in simplex[1:]
        )
        total += abs(det(edges))
    return total / fact


# ---------------------------------------------------------------------------
# vector configurations
# ---------------------------------------------------------------------------


class VectorConfig:
    """A finite spanning multiset of vectors in coordinate space.

    Precomputes the data needed to evaluate the pushforward density of
    the orthant measure: a kernel basis, the change-of-variables factor,
    and the wall hyperplanes (spans of corank-one subsets).
    """

    def __init__(self, vectors: list[Vec], det_gram: Q, orthant_support: bool = False):
        self.vectors = [vec(v) for v in vectors]
        self.rank = len(self.vectors[0])
        self.n = len(self.vectors)
        self.det_gram = det_gram
        self.degree = self.n - self.rank
        self.orthant_support = orthant_support
        rows = [tuple(v[i] for v in self.vectors) for i in range(self.rank)]
        self._amat_rows = rows
        self.kernel = nullspace(rows, self.n)
        assert len(self.kernel) == self.degree, "configuration must span"
        self._basis_cols = self._independent_columns()
        self._solver = self._basis_solver()
        self._jacobian = self._change_of_variables_det()
        self.walls = self._wall_functionals()

    def _independent_columns(self) -> tuple[int, ...]:
        _, pivots = rref(self._amat_rows)
        assert len(pivots) == self.rank
        return tuple(pivots)

    def _basis_solver(self) -> Mat:
        cols = tuple(self.vectors[j] for j in self._basis_cols)
        from .exact import inverse, mat_t

        return inverse(mat_t(cols))

    def _change_of_variables_det(self) -> Q:
        # columns: d x*/d xi (basis solution embedded in R^n), then the kernel.
        n = self.n
        cols: list[Vec] = []
        from .exact import matvec

        for i in range(self.rank):
            e = tuple(Q(1 if k == i else 0) for k in range(self.rank))
            xb = matvec(self._solver, e)
            full = [Q(0)] * n
            for val, j in zip(xb, self._basis_cols):
                full[j] = val
            cols.append(tuple(full))
        cols.extend(self.kernel)
        m = tuple(zip(*cols))
        return abs(det(m))

    def _wall_functionals(self) -> list[Vec]:
        """Primitive integer normals of hyperplanes spanned by subsets."""
        walls: set[Vec] = set()
        if self.rank == 1:
            return [(Q(1),)]
        distinct = sorted(set(self.vectors))
        for subset in combinations(distinct, self.rank - 1):
            ns = nullspace([tuple(v) for v in subset], self.rank)
            if len(ns) != 1:
                continue
            walls.add(_primitive(ns[0]))
        return sorted(walls)

    def particular_solution(self, xi: Vec) -> list[Q]:
        from .exact import matvec

        xb = matvec(self._solver, xi)
        full = [Q(0)] * self.n
        for val, j in zip(xb, self._basis_cols):
            full[j] = val
        return full

    def density(self, xi: Vec) -> Q:
        """Pushforward density at xi, relative to coordinate Lebesgue."""
        if self.orthant_support and any(c < 0 for c in xi):
            return Q(0)
        xstar = self.particular_solution(xi)
        constraints = [
            (tuple(-k[i] for k in self.kernel), xstar[i]) for i in range(self.n)
        ]
        return self._jacobian * _polytope_volume(constraints, self.degree)

    def on_wall(self, xi: Vec) -> bool:
        return any(vdot(u, xi) == 0 for u in self.walls)

    def sign_vector(self, xi: Vec) -> tuple[int, ...]:
        out = []
        for u in self.walls:
            v = vdot(u, xi)
            out.append(0 if v == 0 else (1 if v > 0 else -1))
        return tuple(out)


def _primitive(v: Vec) -> Vec:
    from math import gcd

    denoms = [c.denominator for c in v]
    scale = Q(1)
    for d in denoms:
        scale = scale * d // gcd(int(scale), d) if scale.denominator == 1 else scale * d
    ints = [int(c * scale) for c in v]
    g = 0
    for x in ints:
        g = gcd(g, abs(x))
    ints = [x // g for x in ints]
    lead = next(x for x in ints if x != 0)
    if lead < 0:
        ints = [-x for x in ints]
    return vec(ints)


def _root_config(rs: RootSystem, multiplicity: int = 1) -> VectorConfig:
    key = ("_config", multiplicity)
    cache = rs.__dict__.setdefault("_kappa_configs", {})
    if key not in cache:
        cache[key] = VectorConfig(
            list(rs.positive_roots) * multiplicity,
            det_gram=rs.det_gram,
            orthant_support=True,
        )
    return cache[key]


@dataclass(frozen=True)
class KappaValue:
    """Exact value of kappa at one point.

    `rational` is the density relative to coordinate Lebesgue measure;
    the inner-product-normalized value is rational / sqrt(det_gram).
    """

    rational: Fraction
    det_gram: Fraction
    on_wall: bool

    @property
    def value(self) -> float:
        return float(self.rational) / math.sqrt(float(self.det_gram))


def kappa_point(rs: RootSystem, xi: Vec, multiplicity: int = 1) -> KappaValue:
    """Exact kappa at xi via fiber-polytope vertex enumeration.

    Raises OnWallError for degree-0 configurations evaluated on a wall
    (the value is a genuine jump there); otherwise on-wall points return
    the closure-continuous value with the flag set.
    """
    cfg = _root_config(rs, multiplicity)
    on_wall = cfg.on_wall(xi)
    if on_wall and cfg.degree == 0:
        raise OnWallError(f"kappa has a jump at {xi} (degree-0 configuration)")
    return KappaValue(rational=cfg.density(xi), det_gram=cfg.det_gram, on_wall=on_wall)


# ---------------------------------------------------------------------------
# chamber-complex spline
# ---------------------------------------------------------------------------


@dataclass
class Chamber:
    """One full-dimensional cone of the wall arrangement with its polynomial."""

    signs: tuple[int, ...]
    sample_point: Vec
    polynomial: Poly


class PiecewisePolynomial:
    """Lazy chamber complex for kappa: one homogeneous polynomial per cone.

    Chambers are materialized on first query by exact interpolation of
    `kappa_point` values at generic rational points inside the chamber,
    with cross-validation at extra points.  Materialized chambers are kept
    for the lifetime of the object and can be serialized to JSON.
    """

    def __init__(self, config: VectorConfig, label: str):
        self.config = config
        self.label = label
        self.rank = config.rank
        self.degree = config.degree
        self.det_gram = config.det_gram
        self.chambers: dict[tuple[int, ...], Chamber] = {}
        self._value_cache: dict[Vec, Q] = {}

    # -- queries -----------------------------------------------------------

    def in_support(self, xi: Vec) -> bool:
        if self.config.orthant_support:
            return all(c >= 0 for c in xi)
        return self.config.density(xi) != 0 or not self.config.on_wall(xi)

    def value_exact(self, xi: Vec) -> Q:
        """Density relative to coordinate Lebesgue, exact.

        On-wall points of positive-degree configurations are evaluated by
        closure continuity; degree-0 walls raise OnWallError.  Values are
        memoized: grid scans and lattice sums repeat arguments heavily.
        """
        if self.config.orthant_support and any(c < 0 for c in xi):
            return Q(0)
        hit = self._value_cache.get(xi)
        if hit is not None:
            return hit
        signs = self.config.sign_vector(xi)
        if 0 in signs:
            if self.degree == 0:
                raise OnWallError(f"on-wall evaluation at {xi} for a degree-0 spline")
            interior = self._nudge_off_walls(xi, signs)
            chamber = self._chamber_at(interior)
        else:
            chamber = self._chamber_at(xi, signs)
        value = poly_eval(chamber.polynomial, xi)
        self._value_cache[xi] = value
        return value

    def value(self, xi: Vec) -> float:
        return float(self.value_exact(xi)) / math.sqrt(float(self.det_gram))

    def chamber_polynomial_at(self, xi: Vec) -> Poly:
        """Polynomial of the (unique) chamber whose interior contains xi."""
        signs = self.config.sign_vector(xi)
        if 0 in signs:
            raise OnWallError(f"{xi} lies on a chamber wall")
        return self._chamber_at(xi, signs).polynomial

    def on_wall(self, xi: Vec) -> bool:
        return self.config.on_wall(xi)

    # -- materialization ----------------------------------------------------

    def _chamber_at(self, xi: Vec, signs: tuple[int, ...] | None = None) -> Chamber:
        if signs is None:
            signs = self.config.sign_vector(xi)
        assert 0 not in signs
        hit = self.chambers.get(signs)
        if hit is not None:
            return hit
        chamber = self._interpolate_chamber(xi, signs)
        self.chambers[signs] = chamber
        return chamber

    def _nudge_off_walls(self, xi: Vec, signs: tuple[int, ...]) -> Vec:
        """A nearby interior point on the same side of every strict wall.

        Used for closure-continuous evaluation on walls; any adjacent
        chamber gives the same value when the degree is positive.
        """
        for k in range(1, 40):
            direction = tuple(Q(1, (k + i) ** (i + 1)) for i in range(self.rank))
            eps = Q(1, 4)
            for _ in range(30):
                cand = tuple(x + eps * d for x, d in zip(xi, direction))
                csigns = self.config.sign_vector(cand)
                if 0 not in csigns and all(
                    s == 0 or s == c for s, c in zip(signs, csigns)
                ):
                    return cand
                eps /= 4
        raise DegenerateArrangementError("cannot nudge off walls")  # pragma: no cover

    def _interpolate_chamber(self, xi: Vec, signs: tuple[int, ...]) -> Chamber:
        cfg = self.config
        monos = monomials_homogeneous(self.rank, self.degree)
        needed = len(monos) + 2
        points = self._chamber_points(xi, signs, needed)
        rows = [[_mono_eval(m, p) for m in monos] for p in points]
        vals = [cfg.density(p) for p in points]
        coeffs = _solve_interpolation(rows[: len(monos)], vals[: len(monos)])
        if coeffs is None:
            # try a different subset before declaring degeneracy
            points = self._chamber_points(xi, signs, needed + len(monos), salt=1)
            rows = [[_mono_eval(m, p) for m in monos] for p in points]
            vals = [cfg.density(p) for p in points]
            coeffs = _solve_interpolation(rows[: len(monos)], vals[: len(monos)])
            if coeffs is None:
                raise DegenerateArrangementError(
                    f"singular interpolation system in chamber {signs}"
                )
        poly: Poly = {m: c for m, c in zip(monos, coeffs) if c != 0}
        for p, v in zip(points[len(monos):], vals[len(monos):]):
            if poly_eval(poly, p) != v:
                raise DegenerateArrangementError(
                    f"cross-validation failed in chamber {signs}"
                )
        return Chamber(signs=signs, sample_point=xi, polynomial=poly)

    def _chamber_points(
        self, xi: Vec, signs: tuple[int, ...], count: int, salt: int = 0
    ) -> list[Vec]:
        cfg = self.config
        margin = min(
            abs(vdot(u, xi)) / sum(abs(c) for c in u) for u in cfg.walls
        )
        if cfg.orthant_support:
            margin = min(margin, min(c for c in xi if c != 0))
        step = margin / 2
        seed = hash((signs, salt, "kappa-spline")) & 0xFFFFFFFF
        rng = random.Random(seed)
        pts: list[Vec] = []
        seen = set()
        while len(pts) < count:
            denom = rng.randint(7, 64)
            delta = tuple(Q(rng.randint(-denom, denom), denom) * step for _ in range(self.rank))
            cand = tuple(x + d for x, d in zip(xi, delta))
            if cand in seen:
                continue
            if cfg.sign_vector(cand) != signs:
                continue
            seen.add(cand)
            pts.append(cand)
        return pts

    # -- rank <= 2 full enumeration -----------------------------------------

    def enumerate_support_chambers(self) -> list[Chamber]:
        """Materialize every full-dimensional chamber inside the support cone.

        Only implemented for rank <= 2 (angular sweep); higher ranks stay
        lazy.
        """
        if self.rank == 1:
            self.value_exact((Q(1),))
            return list(self.chambers.values())
        if self.rank != 2:
            raise NotImplementedError("eager enumeration only for rank <= 2")
        rays = sorted(
            {_primitive(v) for v in self.config.vectors},
            key=lambda r: math.atan2(float(r[1]), float(r[0])),
        )
        for a, b in zip(rays, rays[1:]):
            mid = vec([a[0] + b[0], a[1] + b[1]])
            if self.config.sign_vector(mid).count(0) == 0:
                self._chamber_at(mid)
        return list(self.chambers.values())

    # -- serialization --------------------------------------------------------

    def to_json_dict(self) -> dict:
        return {
            "label": self.label,
            "rank": self.rank,
            "degree": self.degree,
            "det_gram": str(self.det_gram),
            "walls": [[str(c) for c in u] for u in self.config.walls],
            "chambers": [
                {
                    "signs": list(ch.signs),
                    "sample_point": [str(c) for c in ch.sample_point],
                    "polynomial": {
                        ",".join(map(str, m)): str(c) for m, c in ch.polynomial.items()
                    },
                }
                for ch in self.chambers.values()
            ],
        }

    def dump_json(self, path: str) -> None:
        with open(path, "w") as fh:
            json.dump(self.to_json_dict(), fh, indent=1, sort_keys=True)

    def load_chambers_json(self, data: dict) -> None:
        """Adopt chambers from a serialized dump (cache restore)."""
        if data.get("label") != self.label or data.get("degree") != self.degree:
            return
        for ch in data["chambers"]:
            signs = tuple(ch["signs"])
            poly = {
                tuple(int(e) for e in key.split(",")): Fraction(val)
                for key, val in ch["polynomial"].items()
            }
            self.chambers[signs] = Chamber(
                signs=signs,
                sample_point=vec(ch["sample_point"]),
                polynomial=poly,
            )


def _mono_eval(m: tuple[int, ...], p: Vec) -> Q:
    out = Q(1)
    for x, e in zip(p, m):
        if e:
            out *= x**e
    return out


def _solve_interpolation(rows: list[list[Q]], vals: list[Q]) -> list[Q] | None:
    n = len(rows)
    aug = [list(r) + [v] for r, v in zip(rows, vals)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if piv is None:
            return None
        aug[col], aug[piv] = aug[piv], aug[col]
        pv = aug[col][col]
        aug[col] = [x / pv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [aug[i][n] for i in range(n)]


def kappa_build(rs: RootSystem, multiplicity: int = 1) -> PiecewisePolynomial:
    """Chamber-complex spline for kappa of a supported root system."""
    if rs.rank > 4 or rs.n_positive * multiplicity > 12 * max(1, multiplicity):
        raise ValueError("configuration outside the supported table")
    key = ("_spline", multiplicity)
    cache = rs.__dict__.setdefault("_kappa_splines", {})
    if key not in cache:
        cache[key] = PiecewisePolynomial(
            _root_config(rs, multiplicity),
            label=f"{rs.spec.name}:kappa^{multiplicity}",
        )
    return cache[key]


# ---------------------------------------------------------------------------
# symmetric polynomials and the operator calculus
# ---------------------------------------------------------------------------


class SymmetricPoly:
    """Symmetric polynomial stored in the elementary-symmetric basis.

    Keys are exponent tuples over (e_1, ..., e_k); `nvars` records the
    number k of underlying variables.
    """

    def __init__(self, terms: dict[tuple[int, ...], Q], nvars: int):
        self.nvars = nvars
        self.terms = {m: as_fraction(c) for m, c in terms.items() if c != 0}

    @classmethod
    def constant(cls, c: Q, nvars: int = 0) -> "SymmetricPoly":
        return cls({(): as_fraction(c)} if c != 0 else {}, nvars)

    @classmethod
    def elementary(cls, index: int, nvars: int) -> "SymmetricPoly":
        if not 1 <= index <= nvars:
            raise ValueError(f"e_{index} undefined in {nvars} variables")
        m = tuple(1 if i == index - 1 else 0 for i in range(nvars))
        return cls({m: Q(1)}, nvars)

    @classmethod
    def from_monomials(cls, p: Poly, nvars: int) -> "SymmetricPoly":
        """Convert a symmetric polynomial in x-variables to the e-basis."""
        from itertools import permutations

        work = dict(p)
        for m, c in p.items():
            for perm in set(permutations(m)):
                if work.get(perm) != c:
                    raise ValueError("polynomial is not symmetric")
        out: dict[tuple[int, ...], Q] = {}
        while work:
            lead = max(work, key=lambda m: tuple(sorted(m, reverse=True)))
            lam = tuple(sorted(lead, reverse=True))
            coeff = work[lead]
            emono = [0] * nvars
            padded = lam + (0,)
            for i in range(len(lam)):
                emono[i] = padded[i] - padded[i + 1] if i + 1 <= nvars else 0
            emono_t = tuple(emono[:nvars])
            out[emono_t] = out.get(emono_t, Q(0)) + coeff
            expansion = _expand_e_monomial(emono_t, nvars)
            for mm, cc in expansion.items():
                nc = work.get(mm, Q(0)) - coeff * cc
                if nc == 0:
                    work.pop(mm, None)
                else:
                    work[mm] = nc
        return cls(out, nvars)

    def degree(self) -> int:
        return max(
            (sum((i + 1) * e for i, e in enumerate(m)) for m in self.terms), default=0
        )

    def expand_monomials(self, nvars: int) -> Poly:
        """Expand into x-monomials, in `nvars` variables (>= self.nvars)."""
        out: Poly = poly_const(Q(0), nvars)
        for m, c in self.terms.items():
            term = poly_const(Q(1), nvars)
            for i, e in enumerate(m):
                for _ in range(e):
                    term = _poly_mul_elementary(term, i + 1, nvars)
            out = poly_add(out, poly_scale(c, term))
        return out


def as_fraction(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def _expand_e_monomial(emono: tuple[int, ...], nvars: int) -> Poly:
    term = poly_const(Q(1), nvars)
    for i, e in enumerate(emono):
        for _ in range(e):
            term = _poly_mul_elementary(term, i + 1, nvars)
    return term


def _poly_mul_elementary(p: Poly, index: int, nvars: int) -> Poly:
    e_poly: Poly = {}
    for subset in combinations(range(nvars), index):
        m = tuple(1 if i in subset else 0 for i in range(nvars))
        e_poly[m] = Q(1)
    from .poly import poly_mul

    return poly_mul(p, e_poly)


def symmetric_extension(p: SymmetricPoly, nvars: int) -> SymmetricPoly:
    """Reinterpret each e_l in `nvars` variables (k <= nvars)."""
    if p.nvars > nvars:
        raise ValueError("cannot extend to fewer variables")
    terms = {m + (0,) * (nvars - p.nvars): c for m, c in p.terms.items()}
    return SymmetricPoly(terms, nvars)


@dataclass(frozen=True)
class DiffOperator:
    """Constant-coefficient operator: polynomial in root-directional derivatives.

    Each term is (coefficient, exponent tuple over the ordered positive
    roots); the variable x_i acts as the directional derivative along the
    i-th positive root under the inner-product identification.
    """

    terms: tuple[tuple[Fraction, tuple[int, ...]], ...]
    directions: tuple[Vec, ...]

    def apply_poly(self, p: Poly) -> Poly:
        out: Poly = {}
        for coeff, expo in self.terms:
            q = p
            for direction, e in zip(self.directions, expo):
                for _ in range(e):
                    q = poly_directional_derivative(q, direction)
                    if not q:
                        break
            out = poly_add(out, poly_scale(coeff, q))
        return out


def pullback_operator(rs: RootSystem, p: SymmetricPoly) -> DiffOperator:
    """Operator obtained by substituting root-directional derivatives.

    p must be symmetric in n = |R+| variables; x_i becomes the derivative
    along the i-th positive root (canonical height-then-lex order).
    """
    if p.nvars != rs.n_positive:
        raise ValueError(
            f"expected a symmetric polynomial in {rs.n_positive} variables"
        )
    expanded = p.expand_monomials(rs.n_positive)
    terms = tuple((c, m) for m, c in sorted(expanded.items()))
    return DiffOperator(terms=terms, directions=tuple(rs.positive_roots))


def apply_operator(op: DiffOperator, f: PiecewisePolynomial, mu: Vec) -> float:
    """Evaluate op applied chamber-wise to f at an interior point mu."""
    rational = apply_operator_exact(op, f, mu)
    return float(rational) / math.sqrt(float(f.det_gram))


def apply_operator_exact(op: DiffOperator, f: PiecewisePolynomial, mu: Vec) -> Q:
    if f.on_wall(mu):
        raise OnWallError(f"{mu} lies on a chamber wall; operator value undefined")
    poly = f.chamber_polynomial_at(mu)
    return poly_eval(op.apply_poly(poly), mu)
