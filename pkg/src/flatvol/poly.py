"""Dense-free polynomial arithmetic over the rationals.

A polynomial in r variables is a dict mapping exponent tuples of length r
to nonzero Fractions.  Zero polynomials are empty dicts.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import comb

from .exact import Q, Vec

Poly = dict[tuple[int, ...], Fraction]


def poly_zero() -> Poly:
    return {}


def poly_const(c: Q, nvars: int) -> Poly:
    return {} if c == 0 else {(0,) * nvars: c}


def poly_add(p: Poly, q: Poly) -> Poly:
    out = dict(p)
    for m, c in q.items():
        nc = out.get(m, Q(0)) + c
        if nc == 0:
            out.pop(m, None)
        else:
            out[m] = nc
    return out


def poly_scale(c: Q, p: Poly) -> Poly:
    if c == 0:
        return {}
    return {m: c * v for m, v in p.items()}


def poly_mul(p: Poly, q: Poly) -> Poly:
    out: Poly = {}
    for m1, c1 in p.items():
        for m2, c2 in q.items():
            m = tuple(a + b for a, b in zip(m1, m2))
            nc = out.get(m, Q(0)) + c1 * c2
            if nc == 0:
                out.pop(m, None)
            else:
                out[m] = nc
    return out


def poly_eval(p: Poly, point: Vec) -> Q:
    total = Q(0)
    for m, c in p.items():
        term = c
        for x, e in zip(point, m):
            if e:
                term *= x**e
        total += term
    return total


def poly_eval_float(p: Poly, point: tuple[float, ...]) -> float:
    total = 0.0
    for m, c in p.items():
        term = float(c)
        for x, e in zip(point, m):
            if e:
                term *= x**e
        total += term
    return total


def poly_degree(p: Poly) -> int:
    return max((sum(m) for m in p), default=-1)


def poly_directional_derivative(p: Poly, direction: Vec) -> Poly:
    """d/ds p(x + s*direction) at s = 0."""
    out: Poly = {}
    for m, c in p.items():
        for j, e in enumerate(m):
            if e == 0 or direction[j] == 0:
                continue
            dm = tuple(ei - 1 if i == j else ei for i, ei in enumerate(m))
            nc = out.get(dm, Q(0)) + c * e * direction[j]
            if nc == 0:
                out.pop(dm, None)
            else:
                out[dm] = nc
    return out


def poly_shift(p: Poly, offset: Vec) -> Poly:
    """Compose with the translation x -> offset + x."""
    nvars = len(offset)
    out: Poly = {}
    # cache of (axis, exponent) -> expansion of (offset_j + x_j)^e
    cache: dict[tuple[int, int], Poly] = {}

    def axis_pow(j: int, e: int) -> Poly:
        key = (j, e)
        if key not in cache:
            base: Poly = {}
            for k in range(e + 1):
                mono = tuple(k if i == j else 0 for i in range(nvars))
                coeff = Q(comb(e, k)) * offset[j] ** (e - k)
                if coeff != 0:
                    base[mono] = coeff
            cache[key] = base
        return cache[key]

    for m, c in p.items():
        term = poly_const(c, nvars)
        for j, e in enumerate(m):
            if e:
                term = poly_mul(term, axis_pow(j, e))
        out = poly_add(out, term)
    return out


def poly_subs_affine(p: Poly, forms: list[Poly]) -> Poly:
    """Substitute variable i -> forms[i], a polynomial in the new variables."""
    if not p:
        return {}
    new_nvars = len(next(iter(forms[0]))) if forms and forms[0] else None
    if new_nvars is None:
        for f in forms:
            if f:
                new_nvars = len(next(iter(f)))
                break
    assert new_nvars is not None
    out: Poly = {}
    pow_cache: dict[tuple[int, int], Poly] = {}

    def form_pow(i: int, e: int) -> Poly:
        key = (i, e)
        if key not in pow_cache:
            if e == 0:
                pow_cache[key] = poly_const(Q(1), new_nvars)
            else:
                pow_cache[key] = poly_mul(form_pow(i, e - 1), forms[i])
        return pow_cache[key]

    for m, c in p.items():
        term = poly_const(c, new_nvars)
        for i, e in enumerate(m):
            if e:
                term = poly_mul(term, form_pow(i, e))
        out = poly_add(out, term)
    return out


def monomials_homogeneous(nvars: int, degree: int) -> list[tuple[int, ...]]:
    """All exponent tuples of total degree exactly `degree`."""
    if nvars == 1:
        return [(degree,)]
    out = []
    for bars in combinations(range(degree + nvars - 1), nvars - 1):
        prev = -1
        exps = []
        for b in bars:
            exps.append(b - prev - 1)
            prev = b
        exps.append(degree + nvars - 2 - prev)
        out.append(tuple(exps))
    return out
