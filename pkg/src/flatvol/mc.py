"""Monte-Carlo holonomy oracle for SU(2) and SU(3).

Validates the shape of volume functions: the class parameter of a product
of independent uniform conjugacy-class elements has density proportional
to vol(mu1, mu2, *s) times the class Jacobian prod_a 2 sin(pi<a, s>)
(one net sine power per positive root, the same resolution as the
character-series bookkeeping).  Everything is seed-deterministic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .exact import Q, Vec, vec
from .liecore import RootSystem, alcove_membership

__all__ = [
    "ClassSample",
    "ClassHistogram",
    "sample_class",
    "product_class_histogram",
    "shape_compare",
    "haar_sample",
    "class_representative",
    "class_parameter",
    "class_parameter_batch",
]

_CHUNK = 1 << 16


@dataclass
class ClassSample:
    matrix: np.ndarray
    parameter: Vec


@dataclass
class ClassHistogram:
    """Histogram of alcove parameters; 1-d for A1, triangular grid for A2."""

    group: str
    bins: int
    counts: np.ndarray
    total: int
    seed: int
    edges: np.ndarray | None = None

    def density(self) -> np.ndarray:
        return self.counts / self.counts.sum()


def _check_group(rs: RootSystem) -> None:
    if rs.spec.name not in ("A1", "A2"):
        raise ValueError("the holonomy oracle supports A1 and A2 only")


def haar_sample(rs: RootSystem, n: int, rng: np.random.Generator) -> np.ndarray:
    """n Haar-uniform special unitary matrices, batched (n, d, d)."""
    _check_group(rs)
    if rs.spec.name == "A1":
        q = rng.normal(size=(n, 4))
        q /= np.linalg.norm(q, axis=1, keepdims=True)
        a, b, c, d = q[:, 0], q[:, 1], q[:, 2], q[:, 3]
        out = np.empty((n, 2, 2), dtype=complex)
        out[:, 0, 0] = a + 1j * b
        out[:, 0, 1] = c + 1j * d
        out[:, 1, 0] = -c + 1j * d
        out[:, 1, 1] = a - 1j * b
        return out
    z = rng.normal(size=(n, 3, 3)) + 1j * rng.normal(size=(n, 3, 3))
    qmat, rmat = np.linalg.qr(z)
    diag = np.einsum("nii->ni", rmat)
    qmat = qmat * (diag / np.abs(diag))[:, None, :]
    dets = np.linalg.det(qmat)
    qmat = qmat * (dets ** (-1.0 / 3.0))[:, None, None]
    return qmat


def class_representative(rs: RootSystem, mu: Vec) -> np.ndarray:
    """exp(mu) as a diagonal special unitary matrix (period-1 convention)."""
    _check_group(rs)
    if rs.spec.name == "A1":
        t = float(rs.ip(rs.simple_roots[0], mu))
        return np.diag([np.exp(1j * math.pi * t), np.exp(-1j * math.pi * t)])
    c1, c2 = float(mu[0]), float(mu[1])
    v = np.array([c1, c2 - c1, -c2])
    return np.diag(np.exp(2j * math.pi * v))


def class_parameter(rs: RootSystem, u: np.ndarray) -> Vec:
    """Alcove point of a single special unitary matrix, exact projection."""
    params = class_parameter_batch(rs, u[None, :, :])
    if rs.spec.name == "A1":
        return vec([Q(params[0, 0]).limit_denominator(10**12) / 2])
    x, y = params[0]
    approx = rs.from_weight_coords(
        vec([Q(x).limit_denominator(10**12), Q(y).limit_denominator(10**12)])
    )
    return approx


def class_parameter_batch(rs: RootSystem, u: np.ndarray) -> np.ndarray:
    """Alcove coordinates for a batch: t for A1, (x, y) weight coords for A2."""
    if rs.spec.name == "A1":
        tr = np.real(np.einsum("nii->n", u))
        t = np.arccos(np.clip(tr / 2.0, -1.0, 1.0)) / math.pi
        return t[:, None]
    phases = np.angle(np.linalg.eigvals(u)) / (2 * math.pi)
    f = np.mod(phases, 1.0)
    f.sort(axis=1)
    f = f[:, ::-1]
    s = np.rint(f.sum(axis=1)).astype(int)
    v = f.copy()
    for k in (1, 2):
        mask = s == k
        v[mask, :k] -= 1.0
    v.sort(axis=1)
    v = v[:, ::-1]
    x = v[:, 0] - v[:, 1]
    y = v[:, 1] - v[:, 2]
    return np.stack([x, y], axis=1)


def sample_class(rs: RootSystem, mu: Vec, rng: np.random.Generator) -> ClassSample:
    """One Haar-uniform element of the conjugacy class through exp(mu)."""
    kind, _ = alcove_membership(rs, mu)
    if kind == "outside":
        raise ValueError("class label must lie in the closed alcove")
    g = haar_sample(rs, 1, rng)[0]
    d = class_representative(rs, mu)
    u = g @ d @ g.conj().T
    defect = np.abs(u @ u.conj().T - np.eye(u.shape[0])).max()
    if defect > 1e-12:
        u, _ = np.linalg.qr(u)  # pragma: no cover
    return ClassSample(matrix=u, parameter=class_parameter(rs, u))


def product_class_histogram(
    rs: RootSystem,
    mu1: Vec,
    mu2: Vec,
    bins: int,
    n_samples: int,
    seed: int,
) -> ClassHistogram:
    """Histogram of the class parameter of g1 g2, g_i uniform on C_{mu_i}."""
    _check_group(rs)
    if n_samples < 1:
        raise ValueError("need at least one sample")
    rng = np.random.default_rng(seed)
    d1 = class_representative(rs, mu1)
    d2 = class_representative(rs, mu2)
    dim = 1 if rs.spec.name == "A1" else 2
    if rs.spec.name == "A1":
        counts = np.zeros(bins, dtype=np.int64)
        edges = np.linspace(0.0, 1.0, bins + 1)
    else:
        counts = np.zeros(bins * bins, dtype=np.int64)
        edges = np.linspace(0.0, 1.0, bins + 1)
    done = 0
    while done < n_samples:
        m = min(_CHUNK, n_samples - done)
        g1 = haar_sample(rs, m, rng)
        g2 = haar_sample(rs, m, rng)
        u = (g1 @ d1 @ np.conj(np.swapaxes(g1, 1, 2))) @ (
            g2 @ d2 @ np.conj(np.swapaxes(g2, 1, 2))
        )
        params = class_parameter_batch(rs, u)
        if dim == 1:
            idx = np.minimum((params[:, 0] * bins).astype(int), bins - 1)
            np.add.at(counts, idx, 1)
        else:
            ix = np.minimum((params[:, 0] * bins).astype(int), bins - 1)
            iy = np.minimum((params[:, 1] * bins).astype(int), bins - 1)
            np.add.at(counts, ix * bins + iy, 1)
        done += m
    return ClassHistogram(
        group=rs.spec.name,
        bins=bins,
        counts=counts,
        total=n_samples,
        seed=seed,
        edges=edges,
    )


def shape_compare(hist: ClassHistogram, vol, rs: RootSystem) -> float:
    """Sup-distance between the empirical CDF and the model CDF.

    vol maps an alcove parameter t in [0, 1] (A1 convention <alpha,mu> = t)
    to the moduli volume; the model density is vol(t) * 2 sin(pi t).
    Only the rank-1 statistic is implemented; A2 histograms compare by
    total-variation over bins.
    """
    if hist.group != "A1":
        raise ValueError("KS-style comparison implemented for A1 histograms")
    bins = hist.bins
    grid = np.linspace(0.0, 1.0, 4 * bins + 1)
    dens = np.array(
        [vol(t) * 2.0 * math.sin(math.pi * t) for t in grid]
    )
    if not np.all(dens >= -1e-12):
        raise ValueError("volume function must be nonnegative")
    cdf_fine = np.concatenate([[0.0], np.cumsum((dens[1:] + dens[:-1]) / 2)])
    if cdf_fine[-1] <= 0:
        raise ValueError("volume function integrates to zero on the alcove")
    cdf_fine /= cdf_fine[-1]
    model_cdf = cdf_fine[::4]
    emp_cdf = np.concatenate([[0.0], np.cumsum(hist.counts) / hist.total])
    return float(np.abs(emp_cdf - model_cdf).max())
