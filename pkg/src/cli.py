#!/usr/bin/env python3
"""
Zero-weight engine — command line

Usage:
  python src/cli.py mult A2 1 1                      # multiplicity table of lambda = a1 + a2
  python src/cli.py mult B2 1 1 --eps --mu 0 0       # dim V(lambda)_0, lambda in eps coords
  python src/cli.py zero-dim A2 1 1                  # mu_0(lambda)
  python src/cli.py chambers A3 --json a3.json --plot a3.html
  python src/cli.py fit A3 --out certs/ --jobs 4 --merge
  python src/cli.py gamma G2
  python src/cli.py verify-paper --section 6

Weights are root coordinates unless --eps is given. Rationals may be written
as p/q. Exit codes: 0 success, 1 a fit, check or cap failed, 2 bad input.

Created: 2026-10-13
"""

import argparse
import logging
import sys
from itertools import islice
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from chambers import atlas_for, classify
from config import get_settings
from errors import FitError, SamplingError, WeylGroupCapError, ZeroWeightError
from exact import rational_str, vec
from lattice import coset_reps, gamma_lattice, invariant_factors
from multiplicity import multiplicity_table, weight_multiplicity, weyl_dimension, zero_weight_dim
from piecewise import FitConfig, full_atlas_fit, group_equal_certificates, wall_disagreements
from report import dumps, print_table, write_json
from rootsys import RootSystem, Weight, build_root_system, parse_type

log = logging.getLogger(__name__)

SHOWN_COSETS = 24


def _weight(rs: RootSystem, coords: list[str], eps: bool) -> Weight:
    if eps:
        return rs.from_epsilon(vec(coords))
    return rs.weight(vec(coords))


def _coords(values) -> str:
    return "(" + ", ".join(rational_str(v) for v in values) + ")"


def _emit_json(target: str, data) -> None:
    if target == "-":
        sys.stdout.write(dumps(data))
    else:
        write_json(Path(target), data)


# =============================================================================
# COMMANDS
# =============================================================================

def cmd_mult(args) -> int:
    rs = build_root_system(parse_type(args.type))
    lam = _weight(rs, args.weight, args.eps)
    if args.mu is not None:
        mu = _weight(rs, args.mu, args.eps)
        m = weight_multiplicity(rs, lam, mu)
        if args.json:
            _emit_json(args.json, {
                "type": str(rs.type),
                "lambda": [rational_str(c) for c in lam.root],
                "mu": [rational_str(c) for c in mu.root],
                "multiplicity": m,
            })
        else:
            print(m)
        return 0

    table = multiplicity_table(rs, lam)
    rows = [
        (_coords(mu.root), _coords(rs.fundamental_coords(mu)), m, table.orbit_sizes[mu])
        for mu, m in table.entries.items()
    ]
    if args.json:
        _emit_json(args.json, {
            "type": str(rs.type),
            "lambda": [rational_str(c) for c in lam.root],
            "dimension": table.total_dimension(),
            "entries": [
                {"root": [rational_str(c) for c in mu.root], "multiplicity": m,
                 "orbit_size": table.orbit_sizes[mu]}
                for mu, m in table.entries.items()
            ],
        })
    else:
        print_table(
            f"DOMINANT WEIGHTS OF V{_coords(lam.root)} ({rs.type})",
            rows, ["root coords", "dynkin", "mult", "orbit"],
        )
        print(f"\n  dim V = {table.total_dimension()} (Weyl formula {weyl_dimension(rs, lam)})")
    if args.csv:
        table.to_csv(Path(args.csv))
    return 0


def cmd_zero_dim(args) -> int:
    rs = build_root_system(parse_type(args.type))
    lam = _weight(rs, args.weight, args.eps)
    value = zero_weight_dim(rs, lam)
    if args.json:
        _emit_json(args.json, {
            "type": str(rs.type),
            "lambda": [rational_str(c) for c in lam.root],
            "zero_weight_dim": value,
        })
    else:
        print(value)
    return 0


def cmd_chambers(args) -> int:
    t = parse_type(args.type)
    atlas = atlas_for(t)
    rs = atlas.root_system
    print_table(
        f"INTERIOR WALLS OF {t}",
        [(i, w.normal, str(w), w.orbit_tag[0], w.orbit_tag[1]) for i, w in enumerate(atlas.walls)],
        ["#", "normal", "form", "w word", "i"],
    )
    print_table(
        f"CHAMBERS OF {t}",
        [(c.id, _coords(c.witness), atlas.graph.degree(c.id)) for c in atlas.chambers],
        ["signs", "witness (z)", "neighbours"],
    )
    if args.weight:
        lam = _weight(rs, args.weight, args.eps)
        result = classify(atlas, lam)
        where = f"interior of {result.interior}" if result.interior else "boundary"
        print(f"\n  {lam}: {where}; closure of {', '.join(result.closure) or '-'}")
    if args.json:
        _emit_json(args.json, atlas.to_dict())
    if args.plot:
        from atlas_plot import write_atlas_html
        write_atlas_html(atlas, Path(args.plot), radius=args.radius, with_mu0=args.mu0)
        print(f"  → Written to {args.plot}")
    return 0


def cmd_fit(args) -> int:
    t = parse_type(args.type)
    config = FitConfig(radius=args.radius)
    try:
        certs = full_atlas_fit(t, jobs=args.jobs, config=config)
    except FitError as e:
        print(f"ERROR: {e}")
        cert = e.certificate
        if cert is not None and cert.counterexample is not None:
            w, expected, got = cert.counterexample
            print(f"COUNTEREXAMPLE: lambda = {w} (root coords): mu_0 = {expected}, "
                  f"polynomial gives {rational_str(got)}")
        return 1
    except SamplingError as e:
        print(f"ERROR: {e}")
        return 1

    atlas = atlas_for(t)
    rows = [
        (c.chamber_id, str(c.coset), c.polynomial.degree, len(c.fit_points),
         len(c.validation_points), c.status, str(c.polynomial))
        for c in certs
    ]
    print_table(f"CERTIFICATES FOR {t}", rows,
                ["chamber", "coset", "deg", "fit", "check", "status", "polynomial"])

    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        chamber_index = {c.id: i for i, c in enumerate(atlas.chambers)}
        cosets = list(coset_reps(gamma_lattice(t)))
        for c in certs:
            name = f"{t}_chamber{chamber_index[c.chamber_id]:02d}_coset{cosets.index(c.coset):03d}.json"
            (out / name).write_text(dumps(c.to_dict()))
        print(f"  → Written {len(certs)} certificates to {out}")

    if args.merge:
        groups = group_equal_certificates(certs)
        print_table(
            f"CHAMBERS SHARING A POLYNOMIAL ({t})",
            [(str(g.coset), " ".join(g.chamber_ids), str(g.polynomial)) for g in groups],
            ["coset", "chambers", "polynomial"],
        )

    problems = wall_disagreements(atlas, certs, config=config)
    if problems:
        a, b, w = problems[0]
        print(f"ERROR: chambers {a} and {b} disagree on their shared wall")
        print(f"COUNTEREXAMPLE: lambda = {w} (root coords)")
        return 1
    return 0


def cmd_gamma(args) -> int:
    t = parse_type(args.type)
    gamma = gamma_lattice(t)
    if args.json:
        _emit_json(args.json, gamma.to_dict())
        return 0
    gens = [
        " + ".join(f"{c}a{i + 1}" if c != 1 else f"a{i + 1}" for i, c in enumerate(g) if c) for g in gamma.generators
    ]
    print_table(f"DESCENT LATTICE OF {t}", [(i + 1, g, gens[i]) for i, g in enumerate(gamma.generators)],
                ["#", "root coords", "generator"])
    factors = invariant_factors(gamma)
    print(f"\n  index [Q : Gamma] = {gamma.index}")
    print(f"  Q / Gamma = {' x '.join(f'Z/{f}' for f in factors) or '0'}")
    shown = ", ".join(str(r) for r in islice(coset_reps(gamma), SHOWN_COSETS))
    print(f"  coset reps ({gamma.index}): {shown}{' ...' if gamma.index > SHOWN_COSETS else ''}")
    return 0


def cmd_verify(args) -> int:
    from verify_closed_forms import print_results, run_sections
    results = run_sections(args.section)
    print_results(results)
    return 0 if all(r.passed for r in results) else 1


# =============================================================================
# PARSER
# =============================================================================

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        description="Zero-weight dimensions, chambers and piecewise polynomial certificates."
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    parser.add_argument("-q", "--quiet", action="store_true", help="warnings and errors only")
    sub = parser.add_subparsers(dest="command", required=True)

    def weight_args(p, required=True):
        p.add_argument("type", help="root system type, e.g. A3, B2, G2")
        p.add_argument("weight", nargs="+" if required else "*", help="weight coordinates (p/q allowed)")
        p.add_argument("--eps", action="store_true", help="coordinates are epsilon coordinates")
        p.add_argument("--json", nargs="?", const="-", default=None, metavar="FILE",
                       help="JSON output (stdout when FILE is omitted)")

    p = sub.add_parser("mult", help="weight multiplicities")
    weight_args(p)
    p.add_argument("--mu", nargs="+", default=None, help="single weight to query")
    p.add_argument("--csv", default="", help="export the multiplicity table to CSV")
    p.set_defaults(func=cmd_mult)

    p = sub.add_parser("zero-dim", help="zero-weight dimension mu_0(lambda)")
    weight_args(p)
    p.set_defaults(func=cmd_zero_dim)

    p = sub.add_parser("chambers", help="interior walls and chambers")
    weight_args(p, required=False)
    p.add_argument("--plot", default="", metavar="HTML", help="write a plotly figure (rank 2 or 3)")
    p.add_argument("--radius", type=int, default=12, help="grid radius for --plot")
    p.add_argument("--mu0", action="store_true", help="show mu_0 in plot hover text")
    p.set_defaults(func=cmd_chambers)

    p = sub.add_parser("fit", help="fit and verify certificates for every chamber and coset")
    p.add_argument("type")
    p.add_argument("--out", default="", metavar="DIR", help="write certificate JSON files here")
    p.add_argument("--jobs", type=int, default=1, help="parallel fits")
    p.add_argument("--merge", action="store_true", help="group chambers with equal polynomials")
    p.add_argument("--radius", type=int, default=None, help="initial sampling radius")
    p.set_defaults(func=cmd_fit)

    p = sub.add_parser("gamma", help="descent lattice, index and cosets")
    p.add_argument("type")
    p.add_argument("--json", nargs="?", const="-", default=None, metavar="FILE")
    p.set_defaults(func=cmd_gamma)

    p = sub.add_parser("verify-paper", help="closed-form verification suite")
    p.add_argument("--section", choices=["3", "5", "6", "all"], default="all")
    p.set_defaults(func=cmd_verify)
    return parser


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    level = get_settings().log_level
    if args.verbose:
        level = "DEBUG"
    elif args.quiet:
        level = "WARNING"
    logging.basicConfig(
        level=getattr(logging, level, logging.INFO),
        format="%(asctime)s [%(levelname)s] %(message)s",
        datefmt="%Y-%m-%dT%H:%M:%S",
        stream=sys.stderr,
    )
    if getattr(args, "jobs", 1) < 1:
        print("ERROR: --jobs must be at least 1", file=sys.stderr)
        return 2

    try:
        return args.func(args)
    except WeylGroupCapError as e:
        print(f"ERROR: {e}", file=sys.stderr)
        return 1
    except (ZeroWeightError, ValueError) as e:
        print(f"ERROR: {e}", file=sys.stderr)
        return 2


def main() -> int:
    return run(sys.argv[1:])


if __name__ == "__main__":
    sys.exit(main())
