"""Command-line surface: compute, scan, compare, and export volumes.

Marking coordinates are exact rationals in the fundamental-weight basis
("1/4,1/5"); rank-1 groups accept the scalar convenience form t with
<alpha, mu> = t.  Every numeric output carries the convention stamp, and
identical invocations produce byte-identical output.

Exit codes: 0 success, 2 usage error, 3 wall/regularity error,
4 convergence failure.  Set FLATVOL_CACHE to a directory to cache the
serialized kappa chamber splines across runs.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

from .exact import Q, Vec, vadd, vec, vscale, vsub
from .kappa import OnWallError, SymmetricPoly, kappa_build
from .liecore import (
    RootSystem,
    UnsupportedTypeError,
    build_root_system,
    covolume_T,
    volume_G,
)
from .mc import product_class_histogram, shape_compare
from .moduli import (
    ConvergenceError,
    Marking,
    Surface,
    UnsupportedDecompositionError,
    convention_stamp,
    glue_volume,
    mixed_characteristic_number,
    moduli_dimension,
    pants_volume_kappa,
    toric_decomposition,
    witten_volume,
)

USAGE_ERROR, WALL_ERROR, CONVERGENCE_ERROR = 2, 3, 4


class UsageError(ValueError):
    pass


def parse_marking(rs: RootSystem, text: str) -> Vec:
    """Parse exact fundamental-weight coordinates, echoing no floats."""
    parts = text.split(",")
    if rs.rank == 1 and len(parts) == 1:
        coords = [Fraction(parts[0])]
    elif len(parts) == rs.rank:
        coords = [Fraction(p) for p in parts]
    else:
        raise UsageError(
            f"marking {text!r} needs {rs.rank} comma-separated rationals"
        )
    return rs.from_weight_coords(vec(coords))


def marking_echo(rs: RootSystem, mu: Vec) -> str:
    return ",".join(str(c) for c in rs.to_weight_coords(mu))


def _float_str(x: float) -> str:
    return repr(float(x))


def _print_json(obj, out_path: str | None) -> None:
    text = json.dumps(obj, indent=1, sort_keys=True)
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text + "\n")
    else:
        sys.stdout.write(text + "\n")


def _write_csv(
    rows: list[list[str]],
    header: list[str],
    out_path: str | None,
    stamp: dict | None = None,
) -> None:
    lines = []
    if stamp is not None:
        lines.append("# " + json.dumps(stamp, sort_keys=True))
    lines.append(",".join(header))
    lines.extend(",".join(r) for r in rows)
    text = "\n".join(lines) + "\n"
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _spline_cache_path(rs: RootSystem) -> str | None:
    cache_dir = os.environ.get("FLATVOL_CACHE")
    if not cache_dir:
        return None
    os.makedirs(cache_dir, exist_ok=True)
    return os.path.join(cache_dir, f"kappa_{rs.spec.name}.json")


def _load_spline_cache(rs: RootSystem) -> None:
    path = _spline_cache_path(rs)
    if path and os.path.exists(path):
        with open(path) as fh:
            kappa_build(rs).load_chambers_json(json.load(fh))


def _save_spline_cache(rs: RootSystem) -> None:
    path = _spline_cache_path(rs)
    if path:
        kappa_build(rs).dump_json(path)


# -- subcommands -------------------------------------------------------------


def cmd_roots(args) -> int:
    rs = build_root_system(args.group)
    dump = {
        "group": rs.spec.name,
        "rank": rs.rank,
        "cartan_matrix": [[int(x) for x in row] for row in rs.cartan_matrix],
        "gram_matrix": [[str(x) for x in row] for row in rs.gram],
        "simple_roots": [[str(c) for c in r] for r in rs.simple_roots],
        "positive_roots": [[str(c) for c in r] for r in rs.positive_roots],
        "highest_root": [str(c) for c in rs.highest_root],
        "fundamental_weights": [[str(c) for c in w] for w in rs.fundamental_weights],
        "coroot_basis": [[str(c) for c in w] for w in rs.coroot_basis],
        "alcove_vertices": [[str(c) for c in v] for v in rs.alcove.vertices],
        "center_order": rs.center_order,
        "weyl_order": len(rs.weyl_elements()),
        "covolume_T": covolume_T(rs),
        "volume_G": volume_G(rs),
        "stamp": convention_stamp(rs),
    }
    _print_json(dump, args.out)
    return 0


def _volume_reports(rs, m1, m2, m3, method, args):
    radius_sq = Fraction(args.radius_sq) if args.radius_sq else None
    reports = {}
    if method in ("kappa", "all"):
        reports["kappa"] = pants_volume_kappa(rs, m1, m2, m3, radius_sq=radius_sq)
    if method in ("toric", "all"):
        _, rep = toric_decomposition(rs, m1, m2, m3, radius_sq=radius_sq)
        reports["toric"] = rep
    if method in ("witten", "all"):
        marking = Marking.of(rs, [m1, m2, m3])
        schedule = None
        if args.eps0 is not None:
            schedule = [args.eps0 / 2**k for k in range(args.eps_nodes)]
        reports["witten"] = witten_volume(
            rs,
            Surface(0, 3),
            marking,
            weight_count=args.weights,
            eps_schedule=schedule,
        )
    return reports


def cmd_volume(args) -> int:
    rs = build_root_system(args.group)
    _load_spline_cache(rs)
    m1, m2, m3 = (parse_marking(rs, t) for t in (args.mu1, args.mu2, args.mu3))
    reports = _volume_reports(rs, m1, m2, m3, args.method, args)
    out = {
        "group": rs.spec.name,
        "markings": [marking_echo(rs, m) for m in (m1, m2, m3)],
        "reports": {k: r.to_json_dict() for k, r in reports.items()},
    }
    if args.method == "all":
        vals = {k: r.value for k, r in reports.items()}
        deviations = {}
        keys = sorted(vals)
        for i, a in enumerate(keys):
            for b in keys[i + 1 :]:
                scale = max(abs(vals[a]), abs(vals[b]), 1e-300)
                deviations[f"{a}-vs-{b}"] = abs(vals[a] - vals[b]) / scale
        out["pairwise_relative_deviation"] = deviations
    _print_json(out, args.out)
    _save_spline_cache(rs)
    return 0


def cmd_scan(args) -> int:
    rs = build_root_system(args.group)
    _load_spline_cache(rs)
    m1, m2 = parse_marking(rs, args.mu1), parse_marking(rs, args.mu2)
    start_txt, _, end_txt = args.along.partition(":")
    if not end_txt:
        raise UsageError("--along needs the form START:END in weight coordinates")
    start, end = parse_marking(rs, start_txt), parse_marking(rs, end_txt)
    n = args.steps
    if n < 0:
        raise UsageError("--steps must be nonnegative")
    samples = []
    for j in range(n + 1):
        lam = Q(j, n) if n else Q(0)
        samples.append(vadd(start, vscale(lam, vsub(end, start))))

    def row_for(mu3: Vec) -> list[str]:
        try:
            rep = pants_volume_kappa(rs, m1, m2, mu3)
        except OnWallError:
            return [marking_echo(rs, mu3), "wall", "kappa-sum", "wall"]
        return [marking_echo(rs, mu3), _float_str(rep.value), "kappa-sum",
                str(rep.exact["rational"])]

    if args.threads > 1:
        with ThreadPoolExecutor(max_workers=args.threads) as pool:
            rows = list(pool.map(row_for, samples))
    else:
        rows = [row_for(s) for s in samples]
    header = ["mu3_weight_coords", "value", "method", "exact_rational"]
    _write_csv(rows, header, args.out, stamp=convention_stamp(rs))
    _save_spline_cache(rs)
    return 0


def _parse_sym_poly(text: str, k: int) -> SymmetricPoly:
    """Parse '1', 'e1', 'e1^2+e2', '3*e1*e2 - 1/2*e3' into the e-basis."""
    text = text.replace("-", "+-").replace(" ", "")
    if k <= 0 and text not in ("1", "0", "+-1"):
        raise UsageError(f"complex dimension is {k}; only constant polynomials allowed")
    nvars = max(k, 0)
    terms: dict[tuple[int, ...], Fraction] = {}
    for raw in text.split("+"):
        if not raw:
            continue
        coeff = Fraction(1)
        expo = [0] * nvars
        for factor in raw.split("*"):
            if not factor:
                continue
            if factor.startswith("e"):
                base, _, power = factor.partition("^")
                idx = int(base[1:])
                if not 1 <= idx <= nvars:
                    raise UsageError(f"e{idx} exceeds the complex dimension {k}")
                expo[idx - 1] += int(power) if power else 1
            else:
                coeff *= Fraction(factor)
        key = tuple(expo)
        terms[key] = terms.get(key, Fraction(0)) + coeff
    return SymmetricPoly(terms, nvars)


def cmd_chern(args) -> int:
    rs = build_root_system(args.group)
    _load_spline_cache(rs)
    m1, m2, m3 = (parse_marking(rs, t) for t in (args.mu1, args.mu2, args.mu3))
    k = moduli_dimension(rs, Surface(0, 3))
    p = _parse_sym_poly(args.poly, k)
    value = mixed_characteristic_number(rs, m1, m2, m3, p)
    out = {
        "group": rs.spec.name,
        "markings": [marking_echo(rs, m) for m in (m1, m2, m3)],
        "polynomial": args.poly,
        "complex_dimension": k,
        "value": value,
        "stamp": convention_stamp(rs),
    }
    _print_json(out, args.out)
    _save_spline_cache(rs)
    return 0


def cmd_oracle(args) -> int:
    rs = build_root_system(args.group)
    if rs.spec.name not in ("A1", "A2"):
        raise UsageError("the holonomy oracle supports A1 and A2 only")
    _load_spline_cache(rs)
    m1, m2 = parse_marking(rs, args.mu1), parse_marking(rs, args.mu2)
    hist = product_class_histogram(
        rs, m1, m2, bins=args.bins, n_samples=args.samples, seed=args.seed
    )
    stat = None
    if rs.spec.name == "A1":
        def vol(t: float) -> float:
            tq = Fraction(t).limit_denominator(1 << 20)
            if not 0 < tq < 1:
                return 0.0
            mu3 = rs.from_weight_coords((tq,))
            try:
                return pants_volume_kappa(rs, m1, m2, mu3).value
            except OnWallError:
                return 0.0

        try:
            stat = shape_compare(hist, vol, rs)
        except ValueError:
            stat = None  # degenerate markings: volume vanishes a.e.
    if rs.spec.name == "A1":
        rows = [
            [str(i), _float_str(hist.edges[i]), _float_str(hist.edges[i + 1]),
             str(int(c))]
            for i, c in enumerate(hist.counts)
        ]
        header = ["bin", "lo", "hi", "count"]
    else:
        rows = [[str(i), str(int(c))] for i, c in enumerate(hist.counts)]
        header = ["bin", "count"]
    _write_csv(rows, header, args.out, stamp=convention_stamp(rs, seed=args.seed))
    sidecar = {
        "group": rs.spec.name,
        "markings": [marking_echo(rs, m) for m in (m1, m2)],
        "samples": args.samples,
        "seed": args.seed,
        "bins": args.bins,
        "ks_statistic_vs_kappa": stat,
        "stamp": convention_stamp(rs),
    }
    side_path = (args.out + ".json") if args.out else None
    _print_json(sidecar, side_path)
    return 0


def cmd_glue(args) -> int:
    rs = build_root_system(args.group)
    _load_spline_cache(rs)
    try:
        h_txt, b_txt = args.surface.split(",")
        surface = Surface(int(h_txt), int(b_txt))
    except ValueError as exc:
        raise UsageError(f"cannot parse --surface {args.surface!r}: h,b") from exc
    points = [parse_marking(rs, t) for t in args.marking]
    rep = glue_volume(rs, surface, Marking.of(rs, points), nodes=args.nodes)
    out = {
        "group": rs.spec.name,
        "surface": {"genus": surface.genus, "boundary": surface.boundary},
        "markings": [marking_echo(rs, m) for m in points],
        "report": rep.to_json_dict(),
    }
    _print_json(out, args.out)
    return 0


# -- entry point ---------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="flatvol",
        description="Volumes of moduli of flat connections on surfaces.",
    )
    ap.add_argument("--threads", type=int, default=1,
                    help="worker threads for scans (results thread-count independent)")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("roots", help="dump root-system data as JSON")
    p.add_argument("group")
    p.add_argument("--out")
    p.set_defaults(func=cmd_roots)

    p = sub.add_parser("volume", help="three-holed-sphere volume")
    p.add_argument("group")
    p.add_argument("mu1")
    p.add_argument("mu2")
    p.add_argument("mu3")
    p.add_argument("--method", choices=["kappa", "witten", "toric", "all"],
                   default="kappa")
    p.add_argument("--weights", type=int, default=None,
                   help="dominant-weight count for the character series")
    p.add_argument("--eps0", type=float, default=None,
                   help="largest heat-kernel epsilon (geometric schedule)")
    p.add_argument("--eps-nodes", type=int, default=4,
                   help="number of epsilon nodes in the schedule")
    p.add_argument("--radius-sq", default=None,
                   help="lattice/affine truncation radius^2 as a rational "
                        "(default: the provable support bound)")
    p.add_argument("--out")
    p.set_defaults(func=cmd_volume)

    p = sub.add_parser("scan", help="scan the volume along a mu3 line (CSV)")
    p.add_argument("group")
    p.add_argument("mu1")
    p.add_argument("mu2")
    p.add_argument("--along", required=True, help="START:END in weight coordinates")
    p.add_argument("--steps", type=int, default=16)
    p.add_argument("--out")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("chern", help="mixed characteristic number")
    p.add_argument("group")
    p.add_argument("mu1")
    p.add_argument("mu2")
    p.add_argument("mu3")
    p.add_argument("--poly", required=True, help="symmetric polynomial, e.g. e1 or e1^2+e2")
    p.add_argument("--out")
    p.set_defaults(func=cmd_chern)

    p = sub.add_parser("oracle", help="Monte-Carlo product-class histogram")
    p.add_argument("group", choices=["A1", "A2"])
    p.add_argument("mu1")
    p.add_argument("mu2")
    p.add_argument("--samples", type=int, default=10**5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--bins", type=int, default=256)
    p.add_argument("--out")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("glue", help="volume by an alcove gluing integral")
    p.add_argument("group")
    p.add_argument("--surface", required=True, help="h,b (supported: 1,1 and 0,4)")
    p.add_argument("--nodes", type=int, default=512)
    p.add_argument("marking", nargs="+")
    p.add_argument("--out")
    p.set_defaults(func=cmd_glue)

    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return USAGE_ERROR if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except OnWallError as exc:
        sys.stderr.write(f"wall error: {exc}\n")
        return WALL_ERROR
    except ConvergenceError as exc:
        sys.stderr.write(f"convergence failure: {exc}\n")
        return CONVERGENCE_ERROR
    except (UsageError, UnsupportedTypeError, UnsupportedDecompositionError,
            ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        sys.stderr.write(ap.format_usage())
        return USAGE_ERROR


if __name__ == "__main__":
    sys.exit(main())
