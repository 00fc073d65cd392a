"""Command-line entry point.

Subcommands: ``list``, ``verify``, ``compose``, ``entropy`` and ``codes build``.
Every JSON document written carries ``"schema": 1``.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from typing import Sequence

import numpy as np

from . import codes, density, measurement, prob, qstate, squares, suites, symplectic, trees
from .prob import EntropyFamily

SCHEMA = 1


class UsageError(Exception):
    pass


def _dump(doc: dict) -> str:
    return json.dumps({"schema": SCHEMA, **doc}, indent=2, sort_keys=True)


def _emit(doc: dict, out: str | None = None) -> None:
    text = _dump(doc)
    if out:
        with open(out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _load(path: str):
    if path == "-":
        return json.load(sys.stdin)
    with open(path) as fh:
        return json.load(fh)


def _matrix(d) -> np.ndarray:
    """A matrix given either as ``{"re", "im"}`` or as nested real lists."""
    if isinstance(d, dict):
        return density.from_json(d)
    return np.asarray(d, dtype=complex)


def _square(d):
    if isinstance(d, dict):
        return squares.colored_from_json(d)
    return squares.tuple_from_json(d)


def _square_json(c) -> dict | list:
    if isinstance(c, squares.ColoredSquare):
        return squares.colored_to_json(c)
    return squares.tuple_to_json(c)


def _digest(obj) -> str:
    return hashlib.sha256(json.dumps(obj, sort_keys=True).encode()).hexdigest()


# list / verify

def cmd_list(args) -> int:
    rows = [{"suite": s.name, "module": s.module, "property": s.ref, "cases_small": s.cases}
            for s in suites.REGISTRY.values()]
    if args.json:
        _emit({"suites": rows})
    else:
        for r in rows:
            print(f"{r['suite']:34s} {r['module']:18s} {r['property']}")
    return 0


def cmd_verify(args) -> int:
    names = list(suites.REGISTRY) if args.all else args.suites
    if not names:
        raise UsageError("name at least one suite or pass --all")
    unknown = [n for n in names if n not in suites.REGISTRY]
    if unknown:
        raise UsageError(f"unknown suite(s): {', '.join(unknown)}")
    reports = [suites.run_suite(n, args.seed, args.scale) for n in names]
    passed = all(r["passed"] for r in reports)
    if len(reports) == 1:
        doc = {k: v for k, v in reports[0].items() if k != "schema"}
    else:
        doc = {"seed": args.seed, "scale": args.scale, "passed": passed,
               "reports": [{k: v for k, v in r.items() if k != "schema"} for r in reports]}
    _emit(doc, args.out)
    if args.out:
        for r in reports:
            print(f"{'PASS' if r['passed'] else 'FAIL'} {r['suite']} "
                  f"({r['cases']} cases, {len(r['failures'])} failures)")
    return 0 if passed else 1


# compose

def _compose(env: dict):
    op = env.get("op")
    if op in ("gammaP", "gammaLambda"):
        fn = qstate.gamma_p if op == "gammaP" else qstate.gamma_lambda
        return density.to_json(fn(_matrix(env["root"]), [_matrix(m) for m in env["parts"]]))
    if op in ("insertP", "insertLambda"):
        fn = qstate.insert_p if op == "insertP" else qstate.insert_lambda
        part = env["part"] if "part" in env else env["parts"][0]
        return density.to_json(fn(_matrix(env["root"]), int(env["i"]), _matrix(part)))
    if op == "composeProb":
        return prob.compose(env["root"], env["parts"]).tolist()
    if op == "composeSquares":
        root = squares.tuple_from_json(env["root"])
        if "i" in env:
            out = squares.compose_squares(root, int(env["i"]), squares.tuple_from_json(env["part"]))
        else:
            out = squares.gamma_squares(root, [squares.tuple_from_json(c) for c in env["parts"]])
        return squares.tuple_to_json(out)
    if op == "composeColored":
        root = squares.colored_from_json(env["root"])
        if "i" in env:
            out = squares.compose_colored(root, int(env["i"]), squares.colored_from_json(env["part"]))
        else:
            out = squares.gamma_colored(root, [squares.colored_from_json(c) for c in env["parts"]])
        return squares.colored_to_json(out)
    if op == "algebraAction":
        w = symplectic.algebra_action(_square(env["root"]), [symplectic.from_json(x) for x in env["parts"]])
        return symplectic.to_json(w)
    if op == "graft":
        return trees.to_json(trees.graft(trees.from_json(env["root"]), [trees.from_json(t) for t in env["parts"]]))
    raise UsageError(f"unknown op {op!r}")


def cmd_compose(args) -> int:
    env = _load(args.envelope)
    if not isinstance(env, dict) or "op" not in env or "root" not in env:
        return _error("schema", "envelope must be an object with 'op' and 'root'")
    prov = {"op": env["op"], "inputs_sha256": _digest({k: v for k, v in env.items() if k != "op"})}
    try:
        result = _compose(env)
    except UsageError as e:
        return _error("schema", str(e), prov)
    except (KeyError, TypeError) as e:
        return _error("schema", f"malformed envelope: {e}", prov)
    except density.InvalidStateError as e:
        return _error("invalid_state", str(e), prov)
    except squares.SquareError as e:
        return _error("invalid_square", str(e), prov)
    except symplectic.SymplecticError as e:
        return _error("invalid_pairing", str(e), prov)
    except (prob.SimplexError, trees.TreeError, IndexError, ValueError) as e:
        return _error("invalid_input", str(e), prov)
    _emit({"provenance": prov, "result": result}, args.out)
    return 0


def _error(code: str, msg: str, prov: dict | None = None) -> int:
    doc = {"error": {"code": code, "message": msg}}
    if prov:
        doc["provenance"] = prov
    print(_dump(doc))
    return 1


# entropy

def _family(args) -> EntropyFamily:
    if args.family == "shannon":
        return prob.SHANNON
    if args.q is None:
        raise UsageError(f"--q is required for {args.family}")
    return EntropyFamily(args.family, args.q)


def cmd_entropy(args) -> int:
    fam = _family(args)
    doc = _load(args.input)
    out: dict = {"family": fam.to_json()}
    try:
        if "state" in doc and "tree" in doc:
            m = measurement.from_json(doc["tree"])
            out["tree_entropy"] = measurement.tree_entropy_quantum(fam, m, _matrix(doc["state"]))
        elif "state" in doc:
            rho = _matrix(doc["state"])
            out["entropy"] = density.quantum_entropy(fam, rho)
            out["spectrum"] = density.eig_prob(rho).tolist()
        elif "prob" in doc and "tree" in doc:
            out["tree_entropy"] = prob.tree_entropy(fam, trees.from_json(doc["tree"]), doc["prob"])
        elif "prob" in doc:
            out["entropy"] = prob.entropy(fam, doc["prob"])
        else:
            return _error("schema", "input needs 'state' or 'prob'")
    except (density.InvalidStateError, prob.SimplexError, measurement.MeasurementError, ValueError) as e:
        return _error("invalid_input", str(e))
    _emit(out, args.out)
    return 0


# codes

def _parse_lambda(tok: str, p: int) -> complex:
    """``root:k`` is ``exp(2 pi i k / p)``; anything else is a Python complex."""
    tok = tok.strip()
    if tok.startswith("root:"):
        return complex(codes.character(p, int(tok[5:]), 1))
    return complex(tok.replace(" ", ""))


def cmd_codes_build(args) -> int:
    w = symplectic.from_json(_load(args.omega))
    us = [int(t) for t in args.tuple.split(",") if t.strip()]
    lams = [_parse_lambda(t, w.p) for t in args.lam.split(",") if t.strip()]
    try:
        cs = codes.code_space(w, args.chi, us, lams)
    except codes.CodeError as e:
        return _error("rejected", str(e))
    doc = cs.to_json()
    h = codes.LoopAlgebra.from_omega(w)
    b = codes.chi_subspace(h, args.chi)
    doc["residuals"] = {"eigen": doc.pop("residual"), "chi": codes.chi_residual(h, args.chi, cs.basis)}
    doc["chi_dimension"] = b.shape[1]
    _emit(doc, args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="qoperad", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("list", help="enumerate verification suites")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_list)

    p = sub.add_parser("verify", help="run verification suites")
    p.add_argument("suites", nargs="*")
    p.add_argument("--all", action="store_true")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--scale", choices=sorted(suites.SCALES), default="small")
    p.add_argument("--out")
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("compose", help="apply a composition from a JSON envelope")
    p.add_argument("envelope", help="file path or - for stdin")
    p.add_argument("--out")
    p.set_defaults(fn=cmd_compose)

    p = sub.add_parser("entropy", help="classical, quantum or tree entropy")
    p.add_argument("input", help="JSON with 'prob' or 'state', optionally 'tree'")
    p.add_argument("--family", choices=["shannon", "renyi", "tsallis"], default="shannon")
    p.add_argument("--q", type=float)
    p.add_argument("--out")
    p.set_defaults(fn=cmd_entropy)

    p = sub.add_parser("codes", help="code-space construction")
    csub = p.add_subparsers(dest="codes_cmd", required=True)
    b = csub.add_parser("build")
    b.add_argument("--omega", required=True)
    b.add_argument("--chi", type=int, required=True)
    b.add_argument("--tuple", required=True)
    b.add_argument("--lambda", dest="lam", required=True)
    b.add_argument("--out")
    b.set_defaults(fn=cmd_codes_build)
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.fn(args)
    except UsageError as e:
        ap.print_usage(sys.stderr)
        print(f"qoperad: error: {e}", file=sys.stderr)
        return 2
    except (OSError, json.JSONDecodeError) as e:
        print(f"qoperad: error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
