"""Command line front end.

Exit codes: 0 success / monotone, 1 verified non-monotone or failed check,
2 usage error, 3 resource cap exceeded, 4 internal invariant breach.
"""

import argparse
import json
import sys
import time
from typing import List, Optional

from . import cddio
from .catalog import CATALOG, identify, lookup
from .cone import DEFAULT_MAX_RAYS, HRep, VRep, verify_dd_pair
from .errors import CertificateError, ResourceLimitExceeded
from .functional import Functional
from .lattice import MAX_LOWER_SET_N
from .monotonicity import (
    check_monotone,
    decompose_monotone,
    embed_symmetric,
    enumerate_monotone_rays,
    facet_lower_sets,
    single_system_facets,
    symmetric_facets,
    symmetric_generators,
)
from .witness import (
    JointDistribution,
    evaluate,
    shannon_entropy_vector,
    violation_certificates,
)

EXIT_OK, EXIT_VIOLATED, EXIT_USAGE, EXIT_RESOURCE, EXIT_INTERNAL = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _load_formula(args) -> Functional:
    if bool(args.formula) == bool(args.catalog):
        raise UsageError("give exactly one of --formula PATH or --catalog NAME")
    if args.catalog:
        try:
            alpha = lookup(args.catalog)
        except KeyError as e:
            raise UsageError(str(e.args[0]))
    else:
        try:
            with open(args.formula) as fh:
                alpha = Functional.from_json(json.load(fh))
        except (OSError, ValueError, KeyError) as e:
            raise UsageError(f"cannot read formula {args.formula}: {e}")
    if getattr(args, "n", None) is not None and args.n != alpha.n:
        raise UsageError(f"formula has n={alpha.n}, but --n {args.n} was given")
    return alpha


def _systems(args, n: int) -> List[int]:
    chosen = [x for x in (args.all, args.systems is not None, args.system is not None) if x]
    if len(chosen) > 1:
        raise UsageError("give at most one of --all, --systems, --system")
    if args.systems is not None:
        try:
            sys_ = sorted({int(t) for t in args.systems.split(",") if t.strip()})
        except ValueError:
            raise UsageError(f"bad --systems value {args.systems!r}")
    elif args.system is not None:
        sys_ = [args.system]
    else:
        sys_ = list(range(1, n + 1))
    if not sys_ or any(not 1 <= i <= n for i in sys_):
        raise UsageError(f"systems must lie in 1..{n}")
    return sys_


def _progress(stream):
    start = time.time()

    def report(step, total, nrays):
        if step == total or step % 25 == 0:
            stream.write(f"[dd] inserted {step}/{total} inequalities, {nrays} rays, "
                         f"{time.time() - start:.1f}s\n")
            stream.flush()

    return report


# ---------------------------------------------------------------------------
# subcommands


def cmd_facets(args) -> int:
    n, i = args.n, args.system if args.system is not None else 1
    if not 1 <= n <= MAX_LOWER_SET_N:
        raise UsageError(f"--n must be in 1..{MAX_LOWER_SET_N}")
    if not 1 <= i <= n:
        raise UsageError(f"--system must be in 1..{n}")
    h = single_system_facets(i, n)
    if args.format == "cdd":
        lines = [f"facets of the cone of formulas monotone under processing of system {i}, n={n}"]
        _emit(cddio.format_hrep(h, lines), args.out)
    else:
        full = Functional(n, h.equalities[0])
        doc = {
            "n": n,
            "system": i,
            "inequalities": [
                {"lower_set": [list(s.members) for s in L.sets],
                 "row": Functional(n, r).to_json()["coeffs"]}
                for L, r in zip(facet_lower_sets(i, n), h.inequalities)
            ],
            "equality": full.to_json()["coeffs"],
        }
        _emit(_dump(doc), args.out)
    return EXIT_OK


def cmd_rays(args) -> int:
    n = args.n
    if not 2 <= n <= 5:
        raise UsageError("--n must be in 2..5")
    res = enumerate_monotone_rays(n, group=args.orbits, max_rays=args.max_rays,
                                  jobs=args.jobs, progress=_progress(sys.stderr))
    funcs = res.rays
    if args.format == "json":
        doc = {"n": n, "rays": [f.to_json()["coeffs"] for f in funcs],
               "catalog": [list(identify(f)) for f in funcs]}
        if res.orbits is not None:
            doc["orbits"] = []
            for o in res.orbits:
                rep = Functional(n, o.representative)
                doc["orbits"].append({"representative": rep.to_json()["coeffs"],
                                      "formula": rep.pretty(), "size": o.size,
                                      "catalog": list(identify(rep))})
        _emit(_dump(doc), args.out)
        return EXIT_OK
    comments = [f"extreme rays of the monotonicity cone for all systems, n={n}",
                f"{len(funcs)} rays"]
    if res.orbits is None:
        for k, f in enumerate(funcs, 1):
            names = identify(f)
            comments.append(f"ray {k}: {f.pretty()}" + (f"  [{', '.join(names)}]" if names else ""))
        v = res.vrep
    else:
        comments.append(f"{len(res.orbits)} orbits under system permutations")
        for k, o in enumerate(res.orbits, 1):
            rep = Functional(n, o.representative)
            names = identify(rep)
            comments.append(f"orbit {k}: size {o.size}: {rep.pretty()}"
                            + (f"  [{', '.join(names)}]" if names else ""))
        v = VRep(res.vrep.dim, tuple(o.representative for o in res.orbits), n=n)
    _emit(cddio.format_vrep(v, comments), args.out)
    return EXIT_OK


def cmd_check(args) -> int:
    alpha = _load_formula(args)
    verdicts = check_monotone(alpha, _systems(args, alpha.n))
    for v in verdicts:
        print(v.describe())
    return EXIT_OK if all(verdicts) else EXIT_VIOLATED


def cmd_certify(args) -> int:
    alpha = _load_formula(args)
    systems = _systems(args, alpha.n)
    verdicts = check_monotone(alpha, systems)
    if all(verdicts):
        certs = [decompose_monotone(alpha, i) for i in systems]
        if not all(c.verify(alpha) for c in certs):
            raise CertificateError("decomposition certificate failed re-verification")
        doc = {"functional": alpha.to_json(), "monotone": True,
               "certificates": [c.to_json() for c in certs]}
        code = EXIT_OK
    else:
        certs = violation_certificates(alpha, systems)
        if not certs or not all(c.verify() for c in certs):
            raise CertificateError("violation certificate failed re-verification")
        doc = {"functional": alpha.to_json(), "monotone": False,
               "certificates": [c.to_json() for c in certs]}
        code = EXIT_VIOLATED
    _emit(_dump(doc), args.out)
    return code


def cmd_symmetric(args) -> int:
    n = args.n
    if n < 2:
        raise UsageError("--n must be at least 2")
    if args.generators:
        v = symmetric_generators(n)
        if args.embed:
            funcs = [embed_symmetric(r) for r in v.rays]
            if args.format == "json":
                _emit(_dump({"n": n, "generators": [f.to_json()["coeffs"] for f in funcs]}), args.out)
            else:
                comments = [f"symmetric monotonicity cone generators embedded in subset coordinates, n={n}"]
                comments += [f"ray {k}: {f.pretty()}" for k, f in enumerate(funcs, 1)]
                _emit(cddio.format_vrep(VRep((1 << n) - 1, tuple(f.coeffs for f in funcs), n=n),
                                        comments), args.out)
        elif args.format == "json":
            _emit(_dump({"n": n, "coordinates": "a_1..a_n",
                         "generators": [[str(x) for x in r] for r in v.rays]}), args.out)
        else:
            _emit(cddio.format_vrep(v, [v.name, "coordinates: a_1..a_n (subset size classes)"]),
                  args.out)
    else:
        if args.embed:
            raise UsageError("--embed applies to --generators only")
        h = symmetric_facets(n)
        if args.format == "json":
            _emit(_dump({"n": n, "coordinates": "a_1..a_n",
                         "inequalities": [[str(x) for x in r] for r in h.inequalities],
                         "equalities": [[str(x) for x in r] for r in h.equalities]}), args.out)
        else:
            _emit(cddio.format_hrep(h, [h.name, "coordinates: a_1..a_n (subset size classes)"]),
                  args.out)
    return EXIT_OK


def cmd_verify_pair(args) -> int:
    try:
        h = cddio.read(args.h_path)
        v = cddio.read(args.v_path)
    except (OSError, ValueError) as e:
        raise UsageError(f"cannot read input: {e}")
    if not isinstance(h, HRep) or not isinstance(v, VRep):
        raise UsageError("expected an H-representation followed by a V-representation")
    if h.dim != v.dim:
        raise UsageError(f"dimension mismatch: {h.dim} vs {v.dim}")
    report = verify_dd_pair(h, v)
    print("\n".join(report.lines()))
    return EXIT_OK if report.passed else EXIT_VIOLATED


def cmd_eval(args) -> int:
    alpha = _load_formula(args)
    if not args.dist:
        raise UsageError("--dist PATH is required")
    try:
        with open(args.dist) as fh:
            d = JointDistribution.from_json(json.load(fh))
    except (OSError, ValueError, KeyError) as e:
        raise UsageError(f"cannot read distribution {args.dist}: {e}")
    if len(d.variables) != alpha.n:
        raise UsageError(f"formula has n={alpha.n} but distribution has {len(d.variables)} variables")
    h = shannon_entropy_vector(d, precision_bits=args.precision)
    value = evaluate(alpha, h)
    if h.exact:
        print(value)
    else:
        print(f"{value} (approximate, {args.precision}-bit precision)")
    return EXIT_OK


def cmd_catalog(args) -> int:
    if args.name is None:
        for e in CATALOG.values():
            print(f"{e.name:24s} n={e.n}  {e.description}")
        return EXIT_OK
    if args.name not in CATALOG:
        raise UsageError(f"unknown catalog formula {args.name!r}; known: {', '.join(CATALOG)}")
    _emit(_dump(lookup(args.name).to_json()), args.out)
    return EXIT_OK


# ---------------------------------------------------------------------------


def _formula_flags(p):
    p.add_argument("--formula", metavar="PATH", help="formula JSON file")
    p.add_argument("--catalog", metavar="NAME", help="named formula, see 'catalog'")
    p.add_argument("--n", type=int, help="expected system count")


def _system_flags(p):
    p.add_argument("--all", action="store_true", help="every system (default)")
    p.add_argument("--systems", metavar="LIST", help="comma separated systems, e.g. 1,3")
    p.add_argument("--system", type=int, help="a single system")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="monocone",
        description="Exact cones of entropic formulas monotone under local operations.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("facets", help="single-system facets (one per lower set)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--system", type=int, default=None)
    p.add_argument("--format", choices=("json", "cdd"), default="cdd")
    p.add_argument("--out", metavar="PATH")
    p.set_defaults(func=cmd_facets)

    p = sub.add_parser("rays", help="extreme rays of the full monotonicity cone")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--orbits", action="store_true", help="one representative per permutation orbit")
    p.add_argument("--format", choices=("json", "cdd"), default="cdd")
    p.add_argument("--out", metavar="PATH")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--max-rays", type=int, default=DEFAULT_MAX_RAYS)
    p.set_defaults(func=cmd_rays)

    p = sub.add_parser("check", help="per-system monotonicity verdicts")
    _formula_flags(p)
    _system_flags(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("certify", help="write membership or violation certificates")
    _formula_flags(p)
    _system_flags(p)
    p.add_argument("--out", metavar="PATH")
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("symmetric", help="the symmetric monotonicity cone")
    p.add_argument("--n", type=int, required=True)
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--facets", action="store_true")
    g.add_argument("--generators", action="store_true")
    p.add_argument("--embed", action="store_true", help="embed generators into subset coordinates")
    p.add_argument("--format", choices=("json", "cdd"), default="cdd")
    p.add_argument("--out", metavar="PATH")
    p.set_defaults(func=cmd_symmetric)

    p = sub.add_parser("verify-pair", help="check that two cdd files describe the same cone")
    p.add_argument("h_path")
    p.add_argument("v_path")
    p.set_defaults(func=cmd_verify_pair)

    p = sub.add_parser("eval", help="evaluate a formula on a distribution's entropy vector")
    _formula_flags(p)
    p.add_argument("--dist", metavar="PATH")
    p.add_argument("--precision", type=int, default=64, help="bits for inexact entropies")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("catalog", help="list or print named formulas")
    p.add_argument("name", nargs="?")
    p.add_argument("--out", metavar="PATH")
    p.set_defaults(func=cmd_catalog)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as e:
        parser.print_usage(sys.stderr)
        sys.stderr.write(f"monocone {args.command}: error: {e}\n")
        return EXIT_USAGE
    except ResourceLimitExceeded as e:
        sys.stderr.write(f"monocone: {e}\n")
        return EXIT_RESOURCE
    except (CertificateError, AssertionError) as e:
        sys.stderr.write(f"monocone: internal invariant breach: {e}\n")
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
