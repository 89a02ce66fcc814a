"""Batch JSON front-end.

Every subcommand reads JSON, writes a JSON report echoing the validated
input, and exits 0 on verified-true, 1 on verified-false, 2 on input
errors, 3 when a resource or iteration bound was exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from . import __version__
from .cayley import (
    reduction_schedule,
    schedule_to_json,
    verify_schedule,
    window_from_json,
    window_to_json,
)
from .codes import code_from_json, code_to_json, equal_codes, normalize, verify_inverse
from .complexes import (
    SSEPath,
    compose_path,
    explore,
    fragment_to_json,
    homotopic,
    path_from_json,
    path_to_json,
)
from .degenerate import (
    deg_path_from_json,
    deg_path_to_json,
    normalize_path,
    restrict_path_to_cores,
    to_strict_path,
)
from .elementary import (
    Triangle,
    check_triangle,
    code_from_edge,
    edge_from_code,
    edge_from_json,
    edge_to_json,
    triangle_from_json,
    triangle_to_json,
)
from .errors import IterationBoundError, ResourceBoundError, SseError
from .freudenthal import (
    Chain,
    boundary,
    chain_f,
    chain_rho,
    enumerate_subdivision,
    face_map,
    _subdivision_cells,
)
from .gsft import (
    bar,
    gsft_matrix_from_json,
    gsft_matrix_to_json,
    hat,
)
from .groups import group_from_json
from .matrices import matrix_from_json, matrix_to_json
from .refinement import report_to_json, verify_refinement_axioms
from .sampling import random_tuple
from .williams import decompose


def _load(path: str):
    with open(path) as fh:
        return json.load(fh)


def _emit(args, report: dict) -> None:
    text = json.dumps(report, indent=2, sort_keys=True)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _run_verify_edge(args) -> tuple[int, dict]:
    obj = _load(args.input)
    edge = edge_from_json(obj)
    f = code_from_edge(edge, verify=True)
    ok = verify_inverse(f, f.inverse) and edge_from_code(f) == edge
    return (0 if ok else 1), {
        "command": "verify-edge",
        "input": edge_to_json(edge),
        "verified": ok,
        "code": code_to_json(normalize(f)),
    }


def _run_verify_triangle(args) -> tuple[int, dict]:
    t = triangle_from_json(_load(args.input))
    ok = check_triangle(t)
    return (0 if ok else 1), {
        "command": "verify-triangle",
        "input": triangle_to_json(t),
        "verified": ok,
    }


def _run_code(args) -> tuple[int, dict]:
    edge = edge_from_json(_load(args.input))
    f = code_from_edge(edge, verify=True)
    return 0, {
        "command": "code",
        "input": edge_to_json(edge),
        "code": code_to_json(f),
    }


def _run_extract(args) -> tuple[int, dict]:
    f = code_from_json(_load(args.input))
    edge = edge_from_code(f)
    return 0, {
        "command": "extract",
        "input": code_to_json(f),
        "edge": edge_to_json(edge),
    }


def _run_decompose(args) -> tuple[int, dict]:
    f = code_from_json(_load(args.input))
    steps = decompose(f)
    path = SSEPath(f.domain.matrix, tuple((s.edge, s.sign) for s in steps))
    ok = equal_codes(compose_path(path), f)
    return (0 if ok else 1), {
        "command": "decompose",
        "input": code_to_json(f),
        "path": path_to_json(path),
        "sides": [s.side for s in steps],
        "recomposes": ok,
    }


def _run_compose_path(args) -> tuple[int, dict]:
    p = path_from_json(_load(args.input))
    f = compose_path(p)
    return 0, {
        "command": "compose-path",
        "input": path_to_json(p),
        "code": code_to_json(f),
    }


def _run_homotopic(args) -> tuple[int, dict]:
    obj = _load(args.input)
    p = path_from_json(obj["p"])
    q = path_from_json(obj["q"])
    ok = homotopic(p, q)
    return (0 if ok else 1), {
        "command": "homotopic",
        "input": {"p": path_to_json(p), "q": path_to_json(q)},
        "homotopic": ok,
    }


def _run_explore(args) -> tuple[int, dict]:
    a = matrix_from_json(_load(args.input))
    frag = explore(
        a,
        max_inner=args.max_inner,
        depth=args.depth,
        max_size=args.max_size,
        max_edges=args.bound,
        experimental_counts=args.experimental_counts,
    )
    return 0, {
        "command": "explore",
        "input": matrix_to_json(a),
        "fragment": fragment_to_json(frag),
    }


def _run_normalize_degenerate(args) -> tuple[int, dict]:
    p = deg_path_from_json(_load(args.input))
    q = normalize_path(p, max_rounds=args.bound)
    report = {
        "command": "normalize-degenerate",
        "input": deg_path_to_json(p),
        "normalized": deg_path_to_json(q),
    }
    if all(e.is_boolean for e, _ in p.steps):
        same = equal_codes(
            compose_path(to_strict_path(restrict_path_to_cores(p))),
            compose_path(to_strict_path(q)),
        )
        report["composite_agrees_on_cores"] = same
        return (0 if same else 1), report
    return 0, report


def _run_gsft_bar(args) -> tuple[int, dict]:
    a = gsft_matrix_from_json(_load(args.input))
    return 0, {
        "command": "gsft-bar",
        "input": gsft_matrix_to_json(a),
        "bar": matrix_to_json(bar(a)),
    }


def _run_gsft_hat(args) -> tuple[int, dict]:
    obj = _load(args.input)
    group = group_from_json(obj["group"])
    e = matrix_from_json(obj["matrix"])
    m, n = obj["shape"]
    a = hat(e, group, (m, n))
    return 0, {
        "command": "gsft-hat",
        "input": {"matrix": matrix_to_json(e), "shape": [m, n]},
        "hat": gsft_matrix_to_json(a),
    }


def _run_freudenthal_check(args) -> tuple[int, dict]:
    import random

    n = args.dimension
    cells = enumerate_subdivision(n)
    vertices = {v for c in cells for v in c.vertices}
    counts_ok = len(cells) == 2**n and len(vertices) == (n + 1) * (n + 2) // 2
    lhs = Chain()
    for cell in cells:
        for k in range(n + 1):
            lhs.add(cell.vertices[:k] + cell.vertices[k + 1 :], cell.sign * (-1) ** k)
    rhs = Chain()
    for k in range(n + 1):
        for cell in _subdivision_cells(n - 1):
            rhs.add(tuple(face_map(k, p) for p in cell.vertices), (-1) ** k * cell.sign)
    chain_map_ok = lhs == rhs
    rng = random.Random(args.seed)
    homotopy_ok = True
    import itertools

    simplices = list(itertools.combinations(range(n + 3), n + 1))
    for _ in range(args.trials):
        c = Chain({rng.choice(simplices): rng.randint(-3, 3) for _ in range(4)})
        want = chain_f(c) - c
        got = boundary(chain_rho(chain_f(c))) + chain_rho(chain_f(boundary(c)))
        if got != want:
            homotopy_ok = False
            break
    ok = counts_ok and chain_map_ok and homotopy_ok
    return (0 if ok else 1), {
        "command": "freudenthal-check",
        "dimension": n,
        "cells": len(cells),
        "vertices": len(vertices),
        "counts_ok": counts_ok,
        "chain_map_identity": chain_map_ok,
        "chain_homotopy": homotopy_ok,
        "trials": args.trials,
        "seed": args.seed,
    }


def _run_refine_axioms(args) -> tuple[int, dict]:
    import random

    obj = _load(args.input)
    if "codes" in obj:
        codes = [code_from_json(c) for c in obj["codes"]]
        echo = {"codes": len(codes)}
    else:
        base = matrix_from_json(obj["base"])
        n = int(obj.get("tuple_size", 2))
        rng = random.Random(args.seed)
        codes = random_tuple(rng, base, n, max_inner=base.rows + 1)
        echo = {"base": matrix_to_json(base), "tuple_size": n}
    report = verify_refinement_axioms(codes, trials=args.trials, seed=args.seed)
    payload = report_to_json(report)
    ok = payload["all_passed"]
    return (0 if ok else 1), {
        "command": "refine-axioms",
        "input": echo,
        "seed": args.seed,
        "trials": args.trials,
        **payload,
    }


def _run_cayley_schedule(args) -> tuple[int, dict]:
    w = window_from_json(_load(args.input))
    steps = reduction_schedule(w)
    ok = verify_schedule(w, steps)
    return (0 if ok else 1), {
        "command": "cayley-schedule",
        "input": window_to_json(w),
        "schedule": schedule_to_json(w, steps),
        "verified": ok,
    }


_COMMANDS = {
    "verify-edge": _run_verify_edge,
    "verify-triangle": _run_verify_triangle,
    "code": _run_code,
    "extract": _run_extract,
    "decompose": _run_decompose,
    "compose-path": _run_compose_path,
    "homotopic": _run_homotopic,
    "explore": _run_explore,
    "normalize-degenerate": _run_normalize_degenerate,
    "gsft-bar": _run_gsft_bar,
    "gsft-hat": _run_gsft_hat,
    "freudenthal-check": _run_freudenthal_check,
    "refine-axioms": _run_refine_axioms,
    "cayley-schedule": _run_cayley_schedule,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ssecalc",
        description="Exact calculus of strong shift equivalences (batch JSON).",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name in _COMMANDS:
        p = sub.add_parser(name)
        if name != "freudenthal-check":
            p.add_argument("--input", required=True, help="input JSON file")
        p.add_argument("--output", help="write the JSON report here")
        p.add_argument("--seed", type=int, default=0, help="seed for random suites")
        p.add_argument("--trials", type=int, default=5, help="random trials")
        if name == "explore":
            p.add_argument("--max-inner", type=int, default=4)
            p.add_argument("--max-size", type=int, default=6)
            p.add_argument("--depth", type=int, default=1)
            p.add_argument("--bound", type=int, default=20000)
            p.add_argument(
                "--experimental-counts",
                action="store_true",
                help="slow search over Z>=0 entries instead of {0,1}",
            )
        if name == "normalize-degenerate":
            p.add_argument("--bound", type=int, default=None)
        if name == "freudenthal-check":
            p.add_argument("--dimension", type=int, required=True)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    start = time.monotonic()
    try:
        status, report = _COMMANDS[args.command](args)
    except (ResourceBoundError, IterationBoundError) as exc:
        _emit(args, {"command": args.command, "error": str(exc), "kind": "bound"})
        return 3
    except (SseError, OSError, json.JSONDecodeError, KeyError, ValueError) as exc:
        _emit(args, {"command": args.command, "error": str(exc), "kind": "input"})
        return 2
    report["elapsed_seconds"] = round(time.monotonic() - start, 6)
    _emit(args, report)
    return status


if __name__ == "__main__":
    sys.exit(main())
