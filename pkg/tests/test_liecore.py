import math
import random
from fractions import Fraction as Q

import pytest

from flatvol import (
    GroupSpec,
    UnsupportedTypeError,
    alcove_membership,
    build_root_system,
    covolume_T,
    enumerate_waff_positive,
    star,
    volume_G,
    weyl_group,
)
from flatvol.exact import lattice_points_in_ball, vec
from flatvol.liecore import alcove_barycenter

SUPPORTED = {
    # name: (positive roots, Weyl order, center order)
    "A1": (1, 2, 2),
    "A2": (3, 6, 3),
    "A3": (6, 24, 4),
    "A4": (10, 120, 5),
    "B2": (4, 8, 2),
    "C2": (4, 8, 2),
    "C3": (9, 48, 2),
    "D4": (12, 192, 4),
    "G2": (6, 12, 1),
}


@pytest.mark.parametrize("name", sorted(SUPPORTED))
def test_root_system_counts(name):
    npos, worder, center = SUPPORTED[name]
    rs = build_root_system(name)
    assert rs.n_positive == npos
    assert len(weyl_group(rs)) == worder
    assert rs.center_order == center
    assert (rs.dim_g - rs.rank) // 2 == npos


@pytest.mark.parametrize("name", sorted(SUPPORTED))
def test_normalization_and_highest_root(name):
    rs = build_root_system(name)
    norms = {rs.norm_sq(r) for r in rs.positive_roots}
    assert rs.norm_sq(rs.highest_root) == 2
    assert max(norms) == 2
    # short-to-long squared ratio is 1, 1/2 or 1/3
    assert all(n in (Q(2), Q(1), Q(2, 3)) for n in norms)
    # highest root dominant
    assert all(rs.ip(rs.highest_root, a) >= 0 for a in rs.simple_roots)
    # positive roots are nonnegative integer combinations of simples
    for r in rs.positive_roots:
        assert all(c >= 0 and c.denominator == 1 for c in r)


def test_g2_short_roots():
    rs = build_root_system("G2")
    norms = sorted({rs.norm_sq(r) for r in rs.positive_roots})
    assert norms == [Q(2, 3), Q(2)]


def test_unsupported_types():
    with pytest.raises(UnsupportedTypeError):
        build_root_system("Z9")
    with pytest.raises(UnsupportedTypeError):
        build_root_system("E6")
    with pytest.raises(UnsupportedTypeError):
        GroupSpec.parse("B5")


@pytest.mark.parametrize("name", sorted(SUPPORTED))
def test_fundamental_weights_pairing(name):
    rs = build_root_system(name)
    for i, w in enumerate(rs.fundamental_weights):
        for j, a in enumerate(rs.simple_roots):
            assert rs.pair_coroot(w, a) == (1 if i == j else 0)


@pytest.mark.parametrize("name", ["A1", "A2", "A3", "B2", "C2", "G2", "C3"])
def test_weyl_orthogonality_and_sign(name):
    rs = build_root_system(name)
    rng = random.Random(3)
    u = vec([Q(rng.randint(-5, 5), 7) for _ in range(rs.rank)])
    v = vec([Q(rng.randint(-5, 5), 3) for _ in range(rs.rank)])
    for w in weyl_group(rs):
        assert rs.ip(w.act(u), w.act(v)) == rs.ip(u, v)
        # (-1)^length = det, checked via the inversion count definition
        det_sign = 1 if _det_sign(w.matrix) > 0 else -1
        assert det_sign == w.sign


def _det_sign(m):
    from flatvol.exact import det

    return 1 if det(m) > 0 else -1


def test_longest_element_and_star(a1, a2):
    assert a1.w0.length == 1
    assert a2.w0.length == 3
    # A1: star is the identity on the alcove
    mu = vec([Q(1, 3)])
    assert star(a1, mu) == mu
    # A2: star maps omega1 to omega2
    w1, w2 = a2.fundamental_weights
    assert star(a2, w1) == w2
    # star is an involution preserving the alcove vertex set
    for rs in (a1, a2):
        verts = set(rs.alcove.vertices)
        assert {star(rs, v) for v in verts} == verts
        for v in verts:
            assert star(rs, star(rs, v)) == v
    assert star(a2, vec([Q(0), Q(0)])) == (0, 0)


def test_alcove_membership(a1, a2):
    assert alcove_membership(a1, vec([Q(1, 4)]))[0] == "interior"
    kind, faces = alcove_membership(a1, vec([Q(0)]))
    assert kind == "boundary" and faces == ["alpha_1"]
    kind, faces = alcove_membership(a1, vec([Q(1, 2)]))
    assert kind == "boundary" and faces == ["alpha_0"]
    # omega1 + omega2 pairs to 2 with the highest root
    outside = a2.from_weight_coords(vec([1, 1]))
    assert alcove_membership(a2, outside)[0] == "outside"


def test_enumerate_waff_positive_counts(a1, a2):
    els = enumerate_waff_positive(a1, 0)
    assert len(els) == 1 and els[0].linear.length == 0
    els = enumerate_waff_positive(a1, 2)
    assert len(els) == 3
    labels = sorted(e.coset_label() for e in els)
    assert labels == [(-1,), (0,), (1,)]
    # count equals the brute-force lattice-point count in the ball
    for rs, r2 in [(a1, Q(8)), (a2, Q(6))]:
        els = enumerate_waff_positive(rs, r2)
        pts = lattice_points_in_ball(rs.coroot_gram, r2)
        assert len(els) == len(pts)


def test_waff_positive_elements_map_alcove_into_chamber(a2):
    for aff in enumerate_waff_positive(a2, 8):
        for v in a2.alcove.vertices:
            img = aff.act(v)
            assert all(a2.ip(img, a) >= 0 for a in a2.simple_roots)
        # sign equals det of the linear part, i.e. inversion-count parity
        assert aff.sign == aff.linear.sign


def test_waff_representatives_unique_per_coset(a2):
    seen = set()
    for aff in enumerate_waff_positive(a2, 8):
        label = aff.coset_label()
        assert label not in seen
        seen.add(label)
        assert a2.in_integral_lattice(aff.translation)


def test_covolume(a1, a2):
    assert abs(covolume_T(a1) - math.sqrt(2)) < 1e-15
    assert abs(covolume_T(a2) - math.sqrt(3)) < 1e-14
    for name in SUPPORTED:
        assert covolume_T(build_root_system(name)) > 0


def test_volume_G_closed_forms(a1, a2):
    # SU(2) is the round 3-sphere of radius sqrt(2)
    assert abs(volume_G(a1) - 2 * math.pi**2 * 2**1.5) < 1e-10
    # SU(3) with the trace metric: sqrt(3) (2 pi)^5 / 2
    assert abs(volume_G(a2) - math.sqrt(3) * (2 * math.pi) ** 5 / 2) < 1e-8
    assert all(volume_G(build_root_system(n)) > 0 for n in SUPPORTED)


@pytest.mark.parametrize("name", ["A1", "A2", "B2"])
def test_weyl_integration_identity(name):
    """int_A prod_{a>0} (2 sin pi<a,mu>)^2 dmu = covol, by quadrature.

    This is the class-integration identity that pins Vol(G)/Vol(T) in the
    normalized metric; dmu is inner-product Lebesgue measure.
    """
    import numpy as np

    rs = build_root_system(name)
    if rs.rank == 1:
        xs, ws = np.polynomial.legendre.leggauss(200)
        xs = (xs + 1) / 2
        ws = ws / 2
        total = 0.0
        alpha = rs.simple_roots[0]
        scale = math.sqrt(float(rs.norm_sq(alpha))) / 2  # arclength of v -> (v/2) a
        for x, w in zip(xs, ws):
            total += w * (2 * math.sin(math.pi * x)) ** 2 * scale
    else:
        n1d = 120
        xs, ws = np.polynomial.legendre.leggauss(n1d)
        xs = (xs + 1) / 2
        ws = ws / 2
        gw = [[float(rs.ip(a, b)) for b in rs.fundamental_weights]
              for a in rs.fundamental_weights]
        area_scale = math.sqrt(gw[0][0] * gw[1][1] - gw[0][1] * gw[1][0])
        w1, w2 = rs.fundamental_weights
        total = 0.0
        for xi, wi in zip(xs, ws):
            # Duffy map of the unit square onto the triangle x + y <= 1
            for yj, wj in zip(xs, ws):
                x = xi
                y = yj * (1 - xi)
                jac = 1 - xi
                prod = 1.0
                for a in rs.positive_roots:
                    pairing = x * float(rs.ip(a, w1)) + y * float(rs.ip(a, w2))
                    prod *= (2 * math.sin(math.pi * pairing)) ** 2
                total += wi * wj * jac * prod * area_scale
    assert abs(total - covolume_T(rs)) < 1e-6 * covolume_T(rs)


def test_barycenter_interior(a2):
    kind, _ = alcove_membership(a2, alcove_barycenter(a2))
    assert kind == "interior"


def test_alcove_representative_unique(a2, g2):
    """Every vector has exactly one affine Weyl image in the closed alcove."""
    from flatvol import alcove_representative, enumerate_waff_positive

    rng = random.Random(19)
    for rs in (a2, g2):
        for _ in range(20):
            v = vec([Q(rng.randint(-30, 30), rng.randint(1, 7)) for _ in range(rs.rank)])
            r = alcove_representative(rs, v)
            kind, _ = alcove_membership(rs, r)
            assert kind in ("interior", "boundary")
            for aff in enumerate_waff_positive(rs, 4)[:4]:
                assert alcove_representative(rs, aff.act(v)) == r
