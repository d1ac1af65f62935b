"""Command-line front end: canonical forms, graphs, elementary maps, exact
realizations, and the batch verification suites.

Exit codes: 0 all checks passed, 1 a verification check failed, 2 usage or
input parse error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import math
import os
import sys

from .codes import (
    INCLUSION,
    Code,
    CodeParseError,
    ElementaryMap,
    apply_elementary_map,
    cc_family,
    cr_family,
    parse_code,
)
from .graphs import (
    ccg,
    complex_to_json_obj,
    diameter,
    graph_to_json_obj,
    gr_complex,
    grg,
    is_complete,
    is_connected,
    to_dot,
)
from .ideal import CanonicalForm, canonical_form, canonical_form_oracle, predict_cf
from .realization import (
    IntervalCover,
    cc_m_intervals,
    cf_from_intervals,
    code_of_intervals,
    code_of_segments,
    cover_from_json_obj,
    cover_to_json_obj,
    cr_k_polygon,
)
from .verify import DEFAULT_SEED, SUITES


def _digest(obj) -> str:
    blob = json.dumps(obj, sort_keys=True, separators=(",", ":")).encode()
    return "sha256:" + hashlib.sha256(blob).hexdigest()


def _family_code(spec: str) -> Code:
    kind, _, num = spec.partition(":")
    try:
        value = int(num)
    except ValueError:
        raise CodeParseError(f"bad family {spec!r}; expected cc:<m> or cr:<k>") from None
    if kind == "cc":
        return cc_family(value)
    if kind == "cr":
        return cr_family(value)
    raise CodeParseError(f"unknown family {kind!r}; expected cc:<m> or cr:<k>")


def _resolve_code(args) -> Code:
    if getattr(args, "family", None):
        return _family_code(args.family)
    if getattr(args, "code", None) is None:
        raise CodeParseError("no input code: pass a code argument or --family")
    return parse_code(args.code)


def _check(name: str, passed: bool, detail: str, counterexample=None) -> dict:
    return {"name": name, "passed": passed, "detail": detail,
            "counterexample": counterexample}


def _cf_lines(cf: CanonicalForm, title: str) -> list[str]:
    lines = [f"{title} ({len(cf)} elements):"]
    lines.extend(f"  {t}" for t in cf.to_text_lines())
    return lines


def _cmd_cf(args):
    code = _resolve_code(args)
    cf = canonical_form(code)
    outputs = {"code": code.to_json_obj(), "cf": cf.to_json_obj()}
    checks = []
    lines = [f"code: {code.to_text()}  (n={code.n}, {len(code)} codewords)"]
    lines += _cf_lines(cf, "canonical form")
    if args.oracle:
        oracle = canonical_form_oracle(code)
        agree = oracle == cf
        counter = None if agree else {"incremental": cf.to_json_obj(),
                                      "oracle": oracle.to_json_obj()}
        checks.append(_check("oracle-agreement", agree,
                             "3^n vanishing sweep vs incremental fold", counter))
        lines.append(f"oracle agreement: {'PASS' if agree else 'FAIL'}")
    return _digest(outputs["code"]), outputs, checks, lines


def _graph_summary(g) -> tuple[dict, list[str]]:
    degrees = sorted({len(nbrs) for nbrs in g.adjacency().values()}) if g.vertices else []
    regular_k = degrees[0] if len(degrees) == 1 else None
    diam = diameter(g)
    summary = {
        "vertices": len(g.vertices),
        "edges": len(g.edges),
        "connected": is_connected(g),
        "complete": is_complete(g),
        "regular": regular_k,
        "diameter": None if diam == math.inf else diam,
    }
    lines = [
        f"vertices: {summary['vertices']}, edges: {summary['edges']}",
        f"connected: {str(summary['connected']).lower()}",
        f"complete: {str(summary['complete']).lower()}",
        "regular: " + (f"yes (k={regular_k})" if regular_k is not None else
                       f"no (degrees {','.join(map(str, degrees))})"),
        "diameter: " + ("inf" if summary["diameter"] is None else str(diam)),
    ]
    return summary, lines


def _cmd_graph(args):
    outputs = {}
    if args.which == "ccg":
        code = _resolve_code(args)
        outputs["code"] = code.to_json_obj()
        digest_src = outputs["code"]
        g = ccg(code)
    else:
        if args.cf:
            try:
                cf = CanonicalForm.from_json_obj(json.loads(args.cf))
            except json.JSONDecodeError as exc:
                raise CodeParseError(f"bad --cf JSON: {exc}") from exc
            digest_src = cf.to_json_obj()
        else:
            code = _resolve_code(args)
            cf = canonical_form(code)
            outputs["code"] = code.to_json_obj()
            digest_src = outputs["code"]
        outputs["cf"] = cf.to_json_obj()
        if args.which == "gr-complex":
            sc = gr_complex(cf)
            outputs["complex"] = complex_to_json_obj(sc)
            lines = ["facets: " + "; ".join(f.label for f in sc.sorted_facets)]
            return _digest(digest_src), outputs, [], lines
        g = grg(cf)
    outputs["graph"] = graph_to_json_obj(g)
    summary, lines = _graph_summary(g)
    outputs["summary"] = summary
    if args.dot:
        outputs["dot"] = to_dot(g)
        lines = [outputs["dot"]]
    return _digest(digest_src), outputs, [], lines


def _spec_from_args(args) -> ElementaryMap:
    if args.permute is not None:
        try:
            perm = [int(x) for x in args.permute.split(",")]
        except ValueError:
            raise CodeParseError(f"bad permutation {args.permute!r}") from None
        return ElementaryMap.permutation(perm)
    if args.add_on:
        return ElementaryMap.add_trivial_on()
    if args.add_off:
        return ElementaryMap.add_trivial_off()
    if args.duplicate is not None:
        return ElementaryMap.duplicate(args.duplicate)
    if args.delete is not None:
        return ElementaryMap.delete(args.delete)
    return ElementaryMap.inclusion(parse_code(args.include))


def _cmd_map(args):
    code = _resolve_code(args)
    spec = _spec_from_args(args)
    image, _cmap = apply_elementary_map(code, spec)
    outputs = {"code": code.to_json_obj(), "map": spec.describe(),
               "image": image.to_json_obj()}
    checks = []
    lines = [f"code:  {code.to_text()}  (n={code.n})",
             f"map:   {spec.describe()}",
             f"image: {image.to_text()}  (n={image.n})"]
    image_cf = canonical_form(image)
    outputs["image_cf"] = image_cf.to_json_obj()
    lines += _cf_lines(image_cf, "computed CF(image)")
    if spec.kind == INCLUSION:
        lines.append("prediction: unsupported for inclusion maps (map still applied)")
    else:
        predicted = predict_cf(canonical_form(code), spec)
        outputs["predicted_cf"] = predicted.to_json_obj()
        lines += _cf_lines(predicted, "predicted CF(image)")
        agree = predicted == image_cf
        counter = None if agree else {"code": code.to_text(), "map": spec.describe(),
                                      "predicted": predicted.to_json_obj(),
                                      "computed": image_cf.to_json_obj()}
        checks.append(_check("cf-prediction", agree,
                             "transformation rule vs canonical form of the image", counter))
        lines.append(f"prediction matches computed: {'PASS' if agree else 'FAIL'}")
    digest_src = {"code": outputs["code"], "map": spec.describe()}
    return _digest(digest_src), outputs, checks, lines


def _cmd_realize(args):
    if args.family:
        kind, _, num = args.family.partition(":")
        try:
            value = int(num)
        except ValueError:
            raise CodeParseError(f"bad family {args.family!r}") from None
        if kind == "cc":
            cover = cc_m_intervals(value)
        elif kind == "cr":
            cover = cr_k_polygon(value)
        else:
            raise CodeParseError(f"unknown family {kind!r}; expected cc:<m> or cr:<k>")
    elif args.cover:
        try:
            cover = cover_from_json_obj(json.loads(args.cover))
        except json.JSONDecodeError as exc:
            raise CodeParseError(f"bad cover JSON: {exc}") from exc
    else:
        raise CodeParseError("no input cover: pass cover JSON or --family")
    if isinstance(cover, IntervalCover):
        realized = code_of_intervals(cover)
    else:
        realized = code_of_segments(cover)
    outputs = {"cover": cover_to_json_obj(cover), "code": realized.to_json_obj()}
    checks = []
    lines = [realized.to_text()]
    if args.cf:
        if not isinstance(cover, IntervalCover):
            raise CodeParseError("--cf applies to interval covers only")
        geometric = cf_from_intervals(cover)
        algebraic = canonical_form(realized)
        outputs["cf"] = geometric.to_json_obj()
        agree = geometric == algebraic
        counter = None if agree else {"geometric": geometric.to_json_obj(),
                                      "algebraic": algebraic.to_json_obj()}
        checks.append(_check("cover-cf-theorem", agree,
                             "canonical form from geometry vs from the realized code",
                             counter))
        lines += _cf_lines(geometric, "canonical form from cover")
        lines.append(f"matches canonical form of realized code: {'PASS' if agree else 'FAIL'}")
    return _digest(outputs["cover"]), outputs, checks, lines


def _verify_kwargs(args) -> dict:
    suite = args.suite
    seed = args.seed if args.seed is not None else DEFAULT_SEED
    if suite in ("parity", "union-closure"):
        n = args.n or 3
        exhaustive = args.exhaustive or (args.sample is None and n <= 4)
        return {"n": n, "exhaustive": exhaustive, "sample": args.sample,
                "seed": seed, "jobs": args.jobs}
    if suite in ("preserve-connected", "preserve-complete"):
        return {"trials": args.trials or 250, "seed": seed, "max_n": args.n or 6}
    if suite == "complete-iso":
        return {"max_n": args.n or 5}
    if suite == "cf-theorems":
        return {"trials": args.trials or 200, "seed": seed, "max_n": args.n or 6}
    if suite == "grg-families":
        top = args.max or 10
        return {"max_m": top, "max_k": top}
    return {"max_family": args.max or 12, "random_covers": args.trials or 100,
            "seed": seed}


def _cmd_verify(args):
    if args.suite not in SUITES:
        raise CodeParseError(f"unknown suite {args.suite!r}; choose from "
                             + ", ".join(sorted(SUITES)))
    kwargs = _verify_kwargs(args)
    result = SUITES[args.suite](**kwargs)
    outputs = {"suite": result.suite, "params": result.params}
    checks = [_check(c.name, c.passed, c.detail, c.counterexample)
              for c in result.checks]
    lines = [f"suite: {result.suite}"]
    for c in result.checks:
        lines.append(f"  [{'PASS' if c.passed else 'FAIL'}] {c.name}: {c.detail}")
        if c.counterexample is not None:
            lines.append(f"    counterexample: {json.dumps(c.counterexample, sort_keys=True)}")
    digest_src = {"suite": args.suite,
                  **{k: v for k, v in kwargs.items() if k != "jobs"}}
    return _digest(digest_src), outputs, checks, lines


def _cmd_family(args):
    code = _family_code(args.family)
    outputs = {"code": code.to_json_obj()}
    return _digest(outputs["code"]), outputs, [], [code.to_text()]


def _add_code_inputs(sub, with_family: bool = True):
    sub.add_argument("code", nargs="?", help="code text, e.g. '{};{1,2};{2,3}'")
    if with_family:
        sub.add_argument("--family", help="named family instead of code text: cc:<m> or cr:<k>")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="neurocode",
        description="Combinatorial neural codes: canonical forms, code graphs, "
                    "elementary maps, and exact convex realizations.")
    subs = parser.add_subparsers(dest="subcommand", required=True)

    p_cf = subs.add_parser("cf", help="canonical form of a code's neural ideal")
    _add_code_inputs(p_cf)
    p_cf.add_argument("--oracle", action="store_true",
                      help="cross-check against the 3^n vanishing-sweep oracle")
    p_cf.set_defaults(handler=_cmd_cf)

    p_graph = subs.add_parser("graph", help="containment graph, relationship graph/complex")
    p_graph.add_argument("which", choices=["ccg", "grg", "gr-complex"])
    _add_code_inputs(p_graph)
    p_graph.add_argument("--cf", help="canonical form JSON instead of a code (grg/gr-complex)")
    p_graph.add_argument("--dot", action="store_true", help="emit DOT text")
    p_graph.set_defaults(handler=_cmd_graph)

    p_map = subs.add_parser("map", help="apply an elementary code map")
    _add_code_inputs(p_map)
    group = p_map.add_mutually_exclusive_group(required=True)
    group.add_argument("--permute", metavar="G", help="permutation as images of 1..n, e.g. 2,1,3")
    group.add_argument("--add-on", action="store_true", help="add an always-firing neuron")
    group.add_argument("--add-off", action="store_true", help="add a never-firing neuron")
    group.add_argument("--duplicate", type=int, metavar="I", help="duplicate neuron I")
    group.add_argument("--delete", type=int, metavar="I", help="delete neuron I")
    group.add_argument("--include", metavar="CODE", help="include into the given larger code")
    p_map.set_defaults(handler=_cmd_map)

    p_real = subs.add_parser("realize", help="realized code of an exact cover")
    p_real.add_argument("cover", nargs="?", help="cover JSON")
    p_real.add_argument("--family", help="built-in cover: cc:<m> (intervals) or cr:<k> (polygon)")
    p_real.add_argument("--cf", action="store_true",
                        help="also derive the canonical form from the cover geometry")
    p_real.set_defaults(handler=_cmd_realize)

    p_verify = subs.add_parser("verify", help="run a named verification sweep")
    p_verify.add_argument("suite", help="one of: " + ", ".join(sorted(SUITES)))
    p_verify.add_argument("--n", type=int, help="neuron count / size bound")
    p_verify.add_argument("--trials", type=int, help="randomized trial count")
    p_verify.add_argument("--seed", type=int, help=f"RNG seed (default {DEFAULT_SEED})")
    p_verify.add_argument("--max", type=int, help="family size ceiling")
    p_verify.add_argument("--sample", type=int, help="sampled sweep size instead of exhaustive")
    p_verify.add_argument("--exhaustive", action="store_true", help="force the exhaustive sweep")
    p_verify.add_argument("--jobs", type=int, default=None,
                          help="worker processes (default $NEUROCODE_JOBS or 1)")
    p_verify.set_defaults(handler=_cmd_verify)

    p_family = subs.add_parser("family", help="print a named code family")
    p_family.add_argument("family", help="cc:<m> or cr:<k>")
    p_family.set_defaults(handler=_cmd_family)

    for sub in (p_cf, p_graph, p_map, p_real, p_verify, p_family):
        sub.add_argument("--json", action="store_true", help="emit a JSON run report")
    return parser


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:]) if argv is None else list(argv)
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code
        return code if isinstance(code, int) else 2
    if getattr(args, "subcommand", None) == "verify":
        if args.jobs is None:
            env = os.environ.get("NEUROCODE_JOBS")
            args.jobs = int(env) if env and env.isdigit() else 1
    try:
        digest, outputs, checks, lines = args.handler(args)
    except (CodeParseError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.json:
        report = {"command": argv, "input_digest": digest,
                  "outputs": outputs, "checks": checks}
        print(json.dumps(report, indent=2, sort_keys=True))
    else:
        for line in lines:
            print(line)
    return 0 if all(c["passed"] for c in checks) else 1


if __name__ == "__main__":
    sys.exit(main())
