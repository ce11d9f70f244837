"""Command-line interface.

Exit codes: 0 ok, 1 suite failure, 2 validation, 3 reconstruction, 4 pipeline disagreement.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import verify
from .bandtwist import BandTwistData, assemble_seifert, theta_delta_twist
from .iota import OpenDiagram, iota
from .scalars import LaurentPoly, a2_coefficient, rat_str
from .seifert import Diagnostics, InvalidBlock, SeifertData, ValidationError, alexander_polynomial, validate
from .surgery import ReconstructionFailed, SurgeryResult, casson_delta, theta_delta, theta_delta_oracle
from .twoloop import specialize_k0

EXIT_OK, EXIT_SUITE, EXIT_VALIDATION, EXIT_RECONSTRUCTION, EXIT_DISAGREE = 0, 1, 2, 3, 4


class InputError(Exception):
    def __init__(self, problems: list[str]):
        super().__init__("; ".join(problems))
        self.problems = problems


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)


def _laurent_json(p: LaurentPoly) -> dict:
    return {"text": str(p), "u_coeffs": p.to_json()}


def _load(path: str) -> dict:
    try:
        with open(path) as fh:
            obj = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError([f"cannot read {path}: {exc}"]) from None
    if not isinstance(obj, dict):
        raise InputError(["top-level JSON value must be an object"])
    return obj


def _seifert_input(obj: dict, for_surgery: bool) -> SeifertData:
    if "components" not in obj:
        # a bare block: one kept component
        block = obj.get("seifert", [])
        obj = dict(obj, components=[{"name": "K", "genus": len(block) // 2, "role": "kept"}])
    try:
        sd = SeifertData.from_json(obj)
    except ValidationError as exc:
        raise InputError(exc.diagnostics.problems) from None
    diag = validate(sd, for_surgery)
    if not diag.ok:
        raise InputError(diag.problems)
    return sd


def _order(args, obj: dict) -> int:
    order = args.order if args.order is not None else int(obj.get("truncation_order", 8))
    if order < 2:
        raise InputError([f"truncation order must be at least 2, got {order}"])
    return order


def _fail(problems: list[str], fmt: str) -> int:
    if fmt == "json":
        print(_dump(Diagnostics(False, problems).to_json()))
    else:
        for p in problems:
            print(f"error: {p}", file=sys.stderr)
    return EXIT_VALIDATION


# ---------------------------------------------------------------------------
# commands


def cmd_alexander(args) -> int:
    fmt = args.format or "text"
    try:
        sd = _seifert_input(_load(args.input), for_surgery=False)
    except InputError as exc:
        return _fail(exc.problems, fmt)
    rows = []
    for i, c in enumerate(sd.components):
        A = alexander_polynomial(sd.block(i, i))
        rows.append((c.name, A, a2_coefficient(A)))
    if fmt == "json":
        print(_dump({"components": [{"name": n, "alexander": _laurent_json(A), "a2": rat_str(a)} for n, A, a in rows]}))
    else:
        for n, A, a in rows:
            prefix = f"{n}: " if len(rows) > 1 else ""
            print(f"{prefix}A(t) = {A}, a2 = {a}")
    return EXIT_OK


def _result_json(res: SurgeryResult, agree) -> dict:
    factored = [
        {
            "coeff": rat_str(t.coeff),
            "edge1_numerator": _laurent_json(t.edge1),
            "edge2_numerator": _laurent_json(t.edge2),
            "denominator": _laurent_json(res.alexander),
        }
        for t in res.factored
    ]
    factored.sort(key=lambda d: json.dumps(d, sort_keys=True))
    return {
        "alexander": _laurent_json(res.alexander),
        "casson_delta": rat_str(res.casson_delta),
        "theta_monomial": res.monomial.to_json(),
        "theta_factored": factored,
        "pipelines_agree": agree,
        "pipeline": res.pipeline,
        "truncation_order": res.order,
        "reconstructed": res.reconstructed,
    }


def _print_result(payload: dict, fmt: str) -> None:
    if fmt == "json":
        print(_dump(payload))
        return
    print(f"A_K(t) = {payload['alexander']['text']}")
    print(f"casson delta = {payload['casson_delta']}")
    for term in payload["theta_monomial"]:
        print(f"  {term['coeff']:>14}  {term['shape']}{tuple(term['legs'])}")
    for t in payload["theta_factored"]:
        print(f"  {t['coeff']} * theta(({t['edge1_numerator']['text']}) / A, ({t['edge2_numerator']['text']}) / A)")
    if payload.get("pipelines_agree") is not None:
        print(f"pipelines agree: {payload['pipelines_agree']}")


def cmd_theta_delta(args) -> int:
    fmt = args.format or "json"
    try:
        obj = _load(args.input)
        sd = _seifert_input(obj, for_surgery=True)
        order = _order(args, obj)
    except InputError as exc:
        return _fail(exc.problems, fmt)
    code = EXIT_OK
    try:
        res, agree = theta_delta(sd, order, args.pipeline, args.kprime_cap, args.span)
    except ReconstructionFailed as exc:
        res, agree, code = exc.result, None, EXIT_RECONSTRUCTION
        if args.pipeline == "both":
            agree = theta_delta_oracle(sd, order, args.kprime_cap) == res.monomial
        print(f"reconstruction failed: {exc}", file=sys.stderr)
    payload = _result_json(res, agree)
    _print_result(payload, fmt)
    if agree is False:
        return EXIT_DISAGREE
    return code


def cmd_band_twist(args) -> int:
    fmt = args.format or "json"
    try:
        obj = _load(args.input)
        try:
            btd = BandTwistData.from_json(obj)
        except (InvalidBlock, KeyError, TypeError, ValueError) as exc:
            raise InputError([f"invalid band twist input: {exc}"]) from None
        order = _order(args, obj)
    except InputError as exc:
        return _fail(exc.problems, fmt)
    delta = theta_delta_twist(btd, order, args.kprime_cap)
    sd = assemble_seifert(btd)
    agree = None
    if args.cross_check:
        agree = theta_delta_oracle(sd, order, args.kprime_cap) == delta
    payload = {
        "direction": btd.direction,
        "framing": btd.framing,
        "truncation_order": order,
        "theta_monomial": delta.to_json(),
        "casson_delta": rat_str(casson_delta(sd)),
        "leg_free_theta": rat_str(specialize_k0(delta)),
        "cross_check": agree,
    }
    if fmt == "json":
        print(_dump(payload))
    else:
        for term in payload["theta_monomial"]:
            print(f"  {term['coeff']:>14}  {term['shape']}{tuple(term['legs'])}")
        if agree is not None:
            print(f"cross-check: {agree}")
    return EXIT_DISAGREE if agree is False else EXIT_OK


def cmd_iota_demo(args) -> int:
    fmt = args.format or "text"
    table = verify.iota_table(args.n)
    ex = iota(2, OpenDiagram(struts=1, wheels=(2,)))
    if fmt == "json":
        print(
            _dump(
                {
                    "blob_table": [{"n": n, "enumerated": rat_str(g), "closed_form": w} for n, g, w in table],
                    "strut_wheel2_n2": {k: rat_str(v) for k, v in sorted(ex.terms.items())},
                }
            )
        )
    else:
        print(f"{'n':>3} {'enumerated':>12} {'(-1)^(n-1) 2^(n-1) (n-1)!':>28}  match")
        for n, g, w in table:
            print(f"{n:>3} {str(g):>12} {w:>28}  {g == w}")
        terms = " + ".join(f"{v}*{k}" for k, v in sorted(ex.terms.items()))
        print(f"iota_2(strut u wheel_2) = {terms}")
    ok = all(g == w for _, g, w in table) and ex.terms == {"theta": -2}
    return EXIT_OK if ok else EXIT_SUITE


def cmd_verify(args) -> int:
    fmt = args.format or "text"
    results = verify.run_suite(args.suite, args.seed, args.order, args.threads)
    if fmt == "json":
        print(_dump({"seed": args.seed, "suites": [r.to_json() for r in results], "passed": all(r.passed for r in results)}))
    else:
        for r in results:
            status = "PASS" if r.passed else "FAIL"
            print(f"{status} {r.suite}: {len(r.checks) - len(r.failures())}/{len(r.checks)} checks")
            for c in r.failures():
                print(f"  failed: {c.name} {c.detail}")
            if r.suite == "iota":
                for n, g, w in verify.iota_table():
                    print(f"  n={n}: enumerated {g}, closed form {w}")
    return EXIT_OK if all(r.passed for r in results) else EXIT_SUITE


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["text", "json"], default=None)
    common.add_argument("--threads", type=int, default=1)
    common.add_argument("--seed", type=int, default=7)

    p = argparse.ArgumentParser(prog="lmotheta", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("alexander", parents=[common], help="Alexander polynomials and a2 per component")
    a.add_argument("input")
    a.set_defaults(fn=cmd_alexander)

    t = sub.add_parser("theta-delta", parents=[common], help="two-loop change under surgery")
    t.add_argument("input")
    t.add_argument("--order", type=int, default=None)
    t.add_argument("--pipeline", choices=["oracle", "fast", "both"], default="both")
    t.add_argument("--kprime-cap", type=int, default=2)
    t.add_argument("--span", type=int, default=None, help="t-degree bound for reconstructed numerators")
    t.set_defaults(fn=cmd_theta_delta)

    b = sub.add_parser("band-twist", parents=[common], help="two-loop change under a band twist")
    b.add_argument("input")
    b.add_argument("--order", type=int, default=None)
    b.add_argument("--kprime-cap", type=int, default=2)
    b.add_argument("--cross-check", action="store_true")
    b.set_defaults(fn=cmd_band_twist)

    i = sub.add_parser("iota-demo", parents=[common], help="chord-gluing factor table")
    i.add_argument("--n", type=int, default=4)
    i.set_defaults(fn=cmd_iota_demo)

    v = sub.add_parser("verify", parents=[common], help="run a property suite")
    v.add_argument("--suite", choices=list(verify.SUITES) + ["all"], default="all")
    v.add_argument("--order", type=int, default=None)
    v.set_defaults(fn=cmd_verify)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
