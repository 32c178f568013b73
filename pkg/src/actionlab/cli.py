"""Command line front end: build groups, run analyses, emit JSON reports.

Every report starts with the command name, the package version and an
echo of the parsed input, followed by the results; key order is fixed
so identical invocations produce byte-identical output.  Exit codes:
0 success, 1 invalid input or failed precondition, 2 a verified
inequality found violated (counterexample alarm), 3 a resource cap.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import __version__
from .abelian import FgAbelian, bar_cohomology_oracle, elementary_cohomology_closed
from .families import FamilySpec, make_family, standard_corpus
from .errors import CapExceeded, IllDefined, NoExponentFound, ValidationFailure
from .extensions import (
    central_extension,
    generation_bound_check,
    maximal_isotropic,
    omega_form,
    verify_omega_lifts,
)
from .fixedpoint import (
    FixedSurfaceDatum,
    exhaustive_roots_verify,
    find_good_exponent,
    g_signature_sum,
    roots_constants,
    signature_consistency,
)
from .groups import (
    build_group,
    closure_mask,
    enumerate_subgroups,
    structure_report,
    subgroup_from_mask,
)
from .jordan import jordan_report
from .spectral import e2_matrix, free_action_obstruction


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _fg(x: FgAbelian) -> dict:
    return {"free_rank": x.free_rank, "torsion": list(x.torsion), "pretty": str(x)}


def _group_args(sub):
    sub.add_argument(
        "--family",
        nargs="+",
        metavar=("NAME", "PARAM"),
        help="family name followed by integer parameters",
    )
    sub.add_argument("--spec", help="path to a group spec JSON file")


def _load_group(args):
    if bool(args.family) == bool(args.spec):
        raise _UsageError("give exactly one of --family or --spec")
    if args.family:
        name = args.family[0]
        params = tuple(int(x) for x in args.family[1:])
        return make_family(FamilySpec(name, params)), {
            "family": name,
            "params": list(params),
        }
    with open(args.spec) as fh:
        spec = json.load(fh)
    return build_group(spec), {"spec": spec}


def _report(verb: str, echo: dict) -> dict:
    return {"command": verb, "version": __version__, "input": echo}


def _cmd_analyze(args):
    G, echo = _load_group(args)
    rep = structure_report(G)
    out = _report("analyze", echo)
    out.update(
        {
            "order": rep.order,
            "abelian": rep.abelian,
            "exponent": rep.exponent,
            "center_order": rep.center_order,
            "commutator_order": rep.commutator_order,
            "nilpotency_class": rep.nilpotency_class,
            "abelian_invariants": (
                list(rep.abelian_invariants)
                if rep.abelian_invariants is not None
                else None
            ),
            "min_generators": rep.min_generators,
            "element_order_histogram": [list(x) for x in rep.order_histogram],
        }
    )
    return out, 0


def _cmd_alpha(args):
    G, echo = _load_group(args)
    rep = jordan_report(G)
    out = _report("alpha", echo)
    out.update(
        {
            "alpha": rep.alpha,
            "witness_order": rep.witness_abelian.order,
            "witness_members": list(rep.witness_abelian.members),
            "beta2": rep.beta2,
            "beta2_witness_order": rep.witness_class2.order,
            "beta2_commutator_cyclic": rep.commutator_of_witness_cyclic,
        }
    )
    return out, 0


def _cmd_subgroups(args):
    G, echo = _load_group(args)
    subs = enumerate_subgroups(G)
    by_order: dict[int, int] = {}
    for s in subs:
        by_order[s.order] = by_order.get(s.order, 0) + 1
    out = _report("subgroups", echo)
    out.update(
        {
            "group_order": G.order,
            "count": len(subs),
            "by_order": [[o, c] for o, c in sorted(by_order.items())],
        }
    )
    return out, 0


def _cmd_extension(args):
    G, echo = _load_group(args)
    if args.center:
        gens = [int(x) for x in args.center.split(",")]
        z_mask = closure_mask(G, gens)
        echo = dict(echo, center=gens)
    else:
        z_mask = G.center_mask()
    ext = central_extension(G, subgroup_from_mask(G, z_mask))
    form = omega_form(ext)
    consistent = verify_omega_lifts(ext, trials=args.trials)
    bound = generation_bound_check(ext)
    out = _report("extension", echo)
    out.update(
        {
            "group_order": G.order,
            "z_order": ext.Z.order,
            "quotient_order": ext.A.order,
            "omega_values_order": form.z_omega.order,
            "omega_rank": form.rank,
            "quotient_prime": form.p,
            "lifts_consistent": consistent,
            "generators_needed": bound.s,
            "max_abelian_generators": bound.r,
            "generation_bound": bound.bound,
            "generation_bound_ok": bound.ok,
        }
    )
    if ext.A.order == 1 or form.p is not None:
        iso = maximal_isotropic(form)
        out["isotropic_dim"] = iso.dim
        out["isotropic_preimage_order"] = iso.preimage.order
        out["isotropic_preimage_abelian"] = iso.preimage_abelian
    return out, 0


def _cmd_cohomology(args):
    result = elementary_cohomology_closed(args.k, args.d, args.p, args.a, args.b)
    echo = {"p": args.p, "a": args.a, "b": args.b, "d": args.d, "k": args.k}
    out = _report("cohomology", echo)
    out["closed_form"] = _fg(result)
    code = 0
    if args.oracle:
        G = make_family(FamilySpec("abelian", (args.p ** args.a,) * args.d))
        got = bar_cohomology_oracle(G, args.k, args.p ** args.b)
        out["oracle"] = _fg(got)
        out["agree"] = got == result
        if not out["agree"]:
            code = 2
    return out, code


def _cmd_spectral(args):
    ledger = e2_matrix(args.p, args.r, args.t, args.d, args.imax)
    echo = {
        "p": args.p,
        "r": args.r,
        "t": args.t,
        "d": args.d,
        "d2_killed": args.d2_killed,
        "imax": args.imax,
    }
    out = _report("spectral", echo)
    out.update(
        {
            "row_index": "i = base degree 0..imax",
            "col_index": "j = fiber degree 0..5",
            "log_sizes": [list(row) for row in ledger.entries],
        }
    )
    if args.d in (2, 3):
        v = free_action_obstruction(args.p, args.r, args.t, args.d, args.d2_killed)
        out["obstruction"] = {
            "corner_log": v.corner_log,
            "lower_bound_log": v.lower_bound_log,
            "verdict": v.verdict,
        }
    return out, 0


def _cmd_gsignature(args):
    with open(args.data) as fh:
        raw = json.load(fh)
    data = [
        FixedSurfaceDatum(Fraction(item["rotation"]), item["selfint"]) for item in raw
    ]
    echo = {"data": raw}
    if args.sigma is not None:
        echo["sigma"] = args.sigma
        echo["tol"] = args.tol
    out = _report("gsignature", echo)
    val = g_signature_sum(data)
    out["value"] = val.value
    out["error_bound"] = val.error_bound
    if args.sigma is not None:
        out["consistent"] = signature_consistency(args.sigma, data, args.tol)
    return out, 0


def _cmd_roots(args):
    if args.k is None and args.verify is None:
        raise _UsageError("give --k and/or --verify")
    delta, k0 = roots_constants(args.n)
    echo = {"n": args.n}
    out = _report("roots", echo)
    out["delta"] = delta
    out["k0"] = k0
    code = 0
    if args.k is not None:
        exps = (
            [int(x) for x in args.exps.split(",")] if args.exps else [1] * args.n
        )
        if len(exps) != args.n:
            raise _UsageError(f"--exps must list {args.n} residues")
        echo["k"] = args.k
        echo["exps"] = exps
        try:
            out["exponent"] = find_good_exponent(args.k, exps)
        except NoExponentFound as e:
            print(f"no good exponent: {e}", file=sys.stderr)
            return None, (1 if e.k < e.k0 else 2)
    if args.verify is not None:
        echo["verify"] = args.verify
        got = exhaustive_roots_verify(args.n, args.verify)
        if got is True:
            out["verified"] = True
        else:
            out["verified"] = False
            out["counterexample"] = {"k": got[0], "exps": list(got[1])}
            code = 2
    return out, code


def _cmd_corpus(args):
    entries = []
    for label, G in standard_corpus(max_order=args.max_order):
        entries.append(
            {"name": label, "order": G.order, "abelian": G.is_abelian()}
        )
    out = _report("corpus", {"max_order": args.max_order})
    out["count"] = len(entries)
    out["groups"] = entries
    return out, 0


_DISPATCH = {
    "analyze": _cmd_analyze,
    "alpha": _cmd_alpha,
    "subgroups": _cmd_subgroups,
    "extension": _cmd_extension,
    "cohomology": _cmd_cohomology,
    "spectral": _cmd_spectral,
    "gsignature": _cmd_gsignature,
    "roots": _cmd_roots,
    "corpus": _cmd_corpus,
}


def _build_parser() -> _Parser:
    parser = _Parser(prog="actionlab", description=__doc__)
    sub = parser.add_subparsers(dest="verb", required=True)

    for verb in ("analyze", "alpha", "subgroups", "extension"):
        s = sub.add_parser(verb)
        _group_args(s)
    sub.choices["extension"].add_argument(
        "--center", help="comma-separated element indices generating Z (default: the center)"
    )
    sub.choices["extension"].add_argument("--trials", type=int, default=200)

    s = sub.add_parser("cohomology")
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--a", type=int, required=True)
    s.add_argument("--b", type=int, required=True)
    s.add_argument("--d", type=int, required=True)
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--oracle", action="store_true", help="also run the bar complex")

    s = sub.add_parser("spectral")
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--r", type=int, required=True)
    s.add_argument("--t", type=int, required=True)
    s.add_argument("--d", type=int, required=True)
    s.add_argument("--d2-killed", action="store_true", dest="d2_killed")
    s.add_argument("--imax", type=int, default=5)

    s = sub.add_parser("gsignature")
    s.add_argument("--data", required=True, help="JSON array of {rotation, selfint}")
    s.add_argument("--sigma", type=int)
    s.add_argument("--tol", type=float, default=1e-9)

    s = sub.add_parser("roots")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--k", type=int)
    s.add_argument("--exps", help="comma-separated residues, default all 1")
    s.add_argument("--verify", type=int, metavar="KMAX")

    s = sub.add_parser("corpus")
    s.add_argument("--max-order", type=int, default=128, dest="max_order")

    return parser


def run(argv) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        report, code = _DISPATCH[args.verb](args)
    except _UsageError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return 1
    except CapExceeded as e:
        print(f"cap exceeded: {e}", file=sys.stderr)
        return 3
    except IllDefined as e:
        print(f"verified identity violated: {e}", file=sys.stderr)
        return 2
    except (ValidationFailure, ValueError) as e:
        print(f"invalid input: {e}", file=sys.stderr)
        return 1
    except OSError as e:
        print(f"cannot read input: {e}", file=sys.stderr)
        return 1
    if report is not None:
        print(json.dumps(report, indent=2))
    return code


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
