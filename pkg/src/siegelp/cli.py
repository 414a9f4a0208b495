"""Command-line front end.

Subcommands: ``series`` evaluates one ramified series exactly, ``oracle``
cross-checks it numerically against the enumeration, ``check`` runs identity
sweeps, ``table`` dumps the basis-change matrices.  Exit codes are a stable
contract: 0 success, 1 identity/tolerance failure, 2 usage or validation
error, 3 mathematical precondition violation (NotInField, SingularMatrix).
"""

from __future__ import annotations

import argparse
import json
import sys

from .checks import SUITES
from .cuspmix import b_matrix, c_matrix
from .errors import (
    BudgetExceeded,
    NotInField,
    PreconditionError,
    SingularMatrix,
    UnsupportedPrime,
)
from .localinv import DiagonalForm, LocalData
from .oracle import compare
from .qfield import Character
from .series import s_characteristic, s_cusp


def _character(text: str) -> Character:
    try:
        return Character(text)
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"character must be 'trivial' or 'quadratic', not {text!r}"
        )


def _int_list(text: str) -> list[int]:
    try:
        return [int(v) for v in text.split(",") if v != ""]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers: {text!r}")


def _local_json(loc: LocalData) -> dict:
    return {
        "n": loc.n,
        "detN": str(loc.detN),
        "D_N": str(loc.D_N),
        "d_p": loc.d_p,
        "Dprime": str(loc.Dprime),
        "a_N": loc.a_N,
        "e_p": loc.e_p,
        "zeta_p": loc.zeta_p,
        "eta_p": loc.eta_p,
        "chiN_p": loc.chiN_p,
        "chiNstar_p": loc.chiNstar_p,
    }


def _build_form(args) -> DiagonalForm:
    if len(args.units) != len(args.exponents):
        raise PreconditionError("--units and --exponents must have equal length")
    return DiagonalForm.make(args.p, args.units, args.exponents)


def cmd_series(args) -> int:
    form = _build_form(args)
    value = s_characteristic(args.character, args.p, form, args.nu)
    if args.basis == "cusp":
        S = s_cusp(args.character, args.p, form, args.nu)
    else:
        S = value.S
    if args.format == "json":
        out = {
            "basis": args.basis,
            "nu": args.nu,
            "S": S.to_json(),
            "beta": value.beta.to_json(),
            "F": value.F.to_json(),
            "local": _local_json(value.local),
        }
        print(json.dumps(out, indent=1))
    else:
        print(f"S     = {S.factored_str()}")
        print(f"beta  = {value.beta.factored_str()}")
        print(f"F     = {value.F.factored_str()}")
        print(f"local = {_local_json(value.local)}")
    return 0


def cmd_oracle(args) -> int:
    form = _build_form(args)
    report = compare(
        args.character,
        args.p,
        form,
        args.nu,
        args.order,
        tol=args.tol,
        budget=args.budget,
    )
    print(json.dumps(report, indent=1))
    return 0 if report["ok"] else 1


def cmd_check(args) -> int:
    kwargs = {}
    if args.suite in ("fe", "scaling", "inductive"):
        kwargs = {"ps": args.p, "max_n": args.max_n, "max_exp": args.max_exp}
    elif args.suite == "matrix":
        kwargs = {"ps": args.p, "max_n": args.max_n}
    elif args.suite == "lemmas":
        kwargs = {"seed": args.seed}
    rep = SUITES[args.suite](**kwargs)
    print(rep.summary())
    for label in rep.failures:
        print(f"  FAIL {label}", file=sys.stderr)
    return 0 if rep.ok else 1


def cmd_table(args) -> int:
    B = b_matrix(args.n, args.character, args.p)
    C = c_matrix(args.n, args.character, args.p)
    out = {
        "n": args.n,
        "p": args.p,
        "character": str(args.character),
        "B": [[entry.to_json() for entry in row] for row in B],
        "C": [[entry.to_json() for entry in row] for row in C],
    }
    print(json.dumps(out, indent=1))
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="siegelp",
        description="exact ramified Siegel series of level p and their checkers",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("series", help="evaluate one series exactly")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--character", type=_character, required=True)
    sp.add_argument("--units", type=_int_list, required=True)
    sp.add_argument("--exponents", type=_int_list, required=True)
    sp.add_argument("--nu", type=int, required=True)
    sp.add_argument(
        "--basis", choices=("characteristic", "cusp"), default="characteristic"
    )
    sp.add_argument("--format", choices=("json", "text"), default="json")
    sp.set_defaults(func=cmd_series)

    op = sub.add_parser("oracle", help="compare the engine against enumeration")
    op.add_argument("--p", type=int, required=True)
    op.add_argument("--character", type=_character, required=True)
    op.add_argument("--units", type=_int_list, required=True)
    op.add_argument("--exponents", type=_int_list, required=True)
    op.add_argument("--nu", type=int, required=True)
    op.add_argument("--order", type=int, required=True)
    op.add_argument("--tol", type=float, default=1e-9)
    op.add_argument("--budget", type=int, default=None)
    op.set_defaults(func=cmd_oracle)

    cp = sub.add_parser("check", help="run an identity sweep")
    cp.add_argument("suite", choices=sorted(SUITES))
    cp.add_argument("--max-n", type=int, default=4)
    cp.add_argument("--p", type=_int_list, default=[3, 5])
    cp.add_argument("--max-exp", type=int, default=2)
    cp.add_argument("--seed", type=int, default=20240901)
    cp.set_defaults(func=cmd_check)

    tp = sub.add_parser("table", help="dump the B and C matrices as JSON")
    tp.add_argument("--n", type=int, required=True)
    tp.add_argument("--p", type=int, required=True)
    tp.add_argument("--character", type=_character, required=True)
    tp.set_defaults(func=cmd_table)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    if args.command == "check" and args.suite == "matrix" and args.max_n > 10:
        print("matrix suite capped at n = 10", file=sys.stderr)
        return 2
    try:
        return args.func(args)
    except (NotInField, SingularMatrix) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (PreconditionError, UnsupportedPrime, BudgetExceeded, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
