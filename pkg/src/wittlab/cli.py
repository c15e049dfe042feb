"""Command-line surface: reproducible verification suites, dimension
tables, graded-dimension comparisons, and JSON dumps.

Contract: stdout carries the report, stderr the logs.  Exit codes are 0
for success, 1 for a failing check, 2 for a usage error.  Every command
is deterministic given its flags and seed; timing fields are opt-in via
--timings so that reruns stay byte-identical.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from . import __version__
from .autos import induced, random_automorphism
from .borel import (
    build_B1_example,
    build_b0,
    build_bn,
    build_bq,
    build_bq_decomposed,
    build_br,
    standard_torus,
)
from .gdim import (
    dim_formula_br,
    gdim_filtered,
    gdim_formula_br,
    gdim_formula_homogeneous_borel,
    gdim_graded,
)
from .params import Params
from .series import (
    is_completely_solvable,
    is_solvable,
    is_torus,
    maximality_probe,
    r_invariant_pr0,
)
from .subspace import bracket_space, span
from .witt import WittElement, bracket

log = logging.getLogger("wittlab")

_SUITES = (
    "algebra",
    "solvability",
    "maximality",
    "dimensions",
    "invariance",
    "consistency",
    "all",
)

_DEFAULT_P = "5,7"
_DEFAULT_N = "1,2,3"
_WORKERS = 4


def _parse_int_list(text: str, what: str) -> List[int]:
    try:
        vals = [int(tok) for tok in text.split(",") if tok.strip() != ""]
    except ValueError:
        raise _UsageError(f"invalid {what} list: {text!r}")
    if not vals:
        raise _UsageError(f"empty {what} list")
    return vals


class _UsageError(Exception):
    pass


def _seed_from_env(explicit: Optional[int]) -> int:
    if explicit is not None:
        return explicit
    env = os.environ.get("WITTLAB_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise _UsageError(f"WITTLAB_SEED must be an integer, got {env!r}")
    return 0


def _emit(doc: dict, out: Optional[str]) -> None:
    text = json.dumps(doc, indent=2)
    if out:
        with open(out, "w") as fh:
            fh.write(text + "\n")
        log.info("wrote %s", out)
    else:
        print(text)


# ----------------------------------------------------------------------
# build


def _provenance(kind: str, detail: str) -> dict:
    return {"tool": f"wittlab {__version__}", "construction": kind, "detail": detail}


def cmd_build(args: argparse.Namespace) -> int:
    obj = args.object
    if obj == "B1":
        if args.n is not None and args.n != 2:
            raise _UsageError("the B1 example lives in the two-variable algebra")
        params = Params(args.p, 2)
        S = build_B1_example(args.p)
        prov = _provenance(
            "B1",
            "solvable but not completely solvable comparison point in W(2)",
        )
        if S.dim != 2 * args.p + 2 or not S.contains_space(bracket_space(S, S)):
            log.error("internal check failed for B1")
            return 1
        extra: Dict[str, object] = {}
    else:
        if args.n is None:
            raise _UsageError("--n is required for objects t and b")
        params = Params(args.p, args.n)
        r = args.r if args.r is not None else 0
        if not 0 <= r <= params.n:
            raise _UsageError(f"--r must lie in [0, {params.n}]")
        if obj == "t":
            S = standard_torus(params, r)
            prov = _provenance(
                f"t_{r}",
                "diagonal torus with the last r coordinate directions shifted",
            )
            if not is_torus(S):
                log.error("internal check failed: t_%d is not a torus", r)
                return 1
        else:
            S = build_br(params, r)
            prov = _provenance(
                f"b_{r}",
                "completely solvable family member: flag type at r=0, "
                "support-below-direction type at r=n, glued otherwise",
            )
            if not S.contains_space(bracket_space(S, S)):
                log.error("internal check failed: b_%d not bracket closed", r)
                return 1
        extra = {"r": r}
    doc = {
        "object": obj,
        "p": params.p,
        "n": params.n,
        **extra,
        "dim": S.dim,
        "provenance": prov,
        "subspace": S.to_json_dict(),
    }
    _emit(doc, args.out)
    return 0


# ----------------------------------------------------------------------
# verify


class _Check:
    __slots__ = ("cell", "name", "status", "witness", "elapsed_ms")

    def __init__(self, cell: str, name: str, ok: bool, witness=None, elapsed_ms=None):
        self.cell = cell
        self.name = name
        self.status = "pass" if ok else "fail"
        self.witness = witness
        self.elapsed_ms = elapsed_ms

    def as_dict(self, timings: bool) -> dict:
        d: Dict[str, object] = {"cell": self.cell, "name": self.name, "status": self.status}
        if self.witness is not None:
            d["witness"] = self.witness
        if timings and self.elapsed_ms is not None:
            d["elapsed_ms"] = self.elapsed_ms
        return d


def _cell_rng_seed(seed: int, p: int, n: int, tag: int) -> np.random.Generator:
    return np.random.default_rng([seed, p, n, tag])


def _random_element(params: Params, rng: np.random.Generator) -> WittElement:
    vec = rng.integers(0, params.p, size=params.witt_dim).astype(np.int16)
    return WittElement.from_vector(params, vec)


def _suite_algebra(p: int, n: int, seed: int) -> List[_Check]:
    params = Params(p, n)
    cell = f"p={p},n={n}"
    rng = _cell_rng_seed(seed, p, n, 1)
    checks = []
    ok_anti = ok_jacobi = True
    for _ in range(10):
        D = _random_element(params, rng)
        E = _random_element(params, rng)
        F = _random_element(params, rng)
        if not (bracket(D, E) + bracket(E, D)).is_zero() or not bracket(D, D).is_zero():
            ok_anti = False
        j = (
            bracket(D, bracket(E, F))
            + bracket(E, bracket(F, D))
            + bracket(F, bracket(D, E))
        )
        if not j.is_zero():
            ok_jacobi = False
    checks.append(_Check(cell, "bracket_antisymmetry", ok_anti))
    checks.append(_Check(cell, "jacobi_identity", ok_jacobi))
    ok_pmap = True
    for _ in range(5):
        D = _random_element(params, rng)
        E = _random_element(params, rng)
        lhs = bracket(D.p_power(), E)
        rhs = E
        for _ in range(p):
            rhs = bracket(D, rhs)
        if lhs != rhs:
            ok_pmap = False
    checks.append(_Check(cell, "p_power_is_p_fold_adjoint", ok_pmap))
    return checks


def _suite_solvability(p: int, n: int, seed: int) -> List[_Check]:
    params = Params(p, n)
    cell = f"p={p},n={n}"
    checks = []
    for r in range(n + 1):
        S = build_br(params, r)
        checks.append(_Check(f"{cell},r={r}", "completely_solvable", is_completely_solvable(S)))
    if n == 2:
        B = build_B1_example(p)
        solv = is_solvable(B)
        cs = is_completely_solvable(B)
        checks.append(
            _Check(
                cell,
                "negative_control_solvable_not_cs",
                solv and not cs,
                witness={"dim": B.dim, "solvable": solv, "completely_solvable": cs},
            )
        )
    return checks


def _suite_maximality(p: int, n: int, seed: int) -> List[_Check]:
    params = Params(p, n)
    checks = []
    for r in range(n + 1):
        S = build_br(params, r)
        report = maximality_probe(S)
        witness = None
        if not report.passed:
            witness = {
                "kind": "absorbed_probes",
                "monomials": [f.monomial for f in report.failures],
                "closure_dims": [f.closure_dim for f in report.failures],
            }
        checks.append(
            _Check(f"p={p},n={n},r={r}", "probe_maximality", report.passed, witness)
        )
    return checks


_GAP_NOTE = "enumeration exceeds the closed form by q(n-q)(p^q-1)"


def _suite_dimensions(p: int, n: int, seed: int) -> List[_Check]:
    params = Params(p, n)
    checks = []
    for r in range(n + 1):
        S = build_br(params, r)
        want = dim_formula_br(p, n, r)
        got = S.dim
        ok_dim = got == want
        witness = None
        if not ok_dim:
            witness = {
                "kind": "known_defect",
                "formula": want,
                "enumerated": got,
                "gap": got - want,
                "note": _GAP_NOTE,
            }
        checks.append(_Check(f"p={p},n={n},r={r}", "dim_matches_closed_form", ok_dim, witness))
        gf = gdim_formula_br(p, n, r)
        ge = gdim_graded(S)
        ok_g = gf == ge
        gwitness = None
        if not ok_g:
            gwitness = {
                "kind": "known_defect",
                "difference": (ge - gf).to_json_dict(),
                "note": _GAP_NOTE,
            }
        checks.append(
            _Check(f"p={p},n={n},r={r}", "gdim_matches_closed_form", ok_g, gwitness)
        )
    return checks


def _suite_invariance(p: int, n: int, seed: int) -> List[_Check]:
    params = Params(p, n)
    samples = 5 if n <= 2 else 2
    checks = []
    for r in range(n + 1):
        S = build_br(params, r)
        base_gdim = gdim_filtered(S)
        base_pr0 = r_invariant_pr0(S)
        ok = base_pr0 == r
        for k in range(samples):
            psi = random_automorphism(
                params, seed=(seed * 7919 + p * 101 + n * 11 + r) * 1000 + k
            )
            img = span([induced(psi, D) for D in S.basis()], params)
            if img.dim != S.dim or gdim_filtered(img) != base_gdim:
                ok = False
            if r_invariant_pr0(img) != base_pr0:
                ok = False
        checks.append(
            _Check(
                f"p={p},n={n},r={r}",
                "gdim_and_pr0_invariant_under_orbit",
                ok,
                witness={"samples": samples, "pr0": base_pr0},
            )
        )
    return checks


def _suite_consistency(p: int, n: int, seed: int) -> List[_Check]:
    params = Params(p, n)
    cell = f"p={p},n={n}"
    checks = []
    checks.append(_Check(cell, "bq_at_0_is_b0", build_bq(params, 0) == build_b0(params)))
    checks.append(_Check(cell, "bq_at_n_is_bn", build_bq(params, n) == build_bn(params)))
    for q in range(1, n):
        checks.append(
            _Check(
                f"{cell},q={q}",
                "two_presentations_coincide",
                build_bq(params, q) == build_bq_decomposed(params, q),
            )
        )
    ok_t = True
    for r in range(n + 1):
        S = build_br(params, r)
        for i in range(n + 1):
            inside = S.contains_space(standard_torus(params, i))
            if inside != (i <= r):
                ok_t = False
    checks.append(_Check(cell, "torus_containment_iff_index_le_r", ok_t))
    return checks


_SUITE_FNS = {
    "algebra": _suite_algebra,
    "solvability": _suite_solvability,
    "maximality": _suite_maximality,
    "dimensions": _suite_dimensions,
    "invariance": _suite_invariance,
    "consistency": _suite_consistency,
}

_SUITE_ORDER = (
    "algebra",
    "solvability",
    "dimensions",
    "consistency",
    "invariance",
    "maximality",
)


def cmd_verify(args: argparse.Namespace) -> int:
    ps = _parse_int_list(args.p_list, "p")
    ns = _parse_int_list(args.n_list, "n")
    seed = _seed_from_env(args.seed)
    suites = list(_SUITE_ORDER) if args.suite == "all" else [args.suite]
    jobs: List[Tuple[str, int, int]] = []
    for suite in suites:
        for p in ps:
            for n in ns:
                if suite == "maximality" and n > args.max_maximality_n:
                    continue
                jobs.append((suite, p, n))

    def run(job: Tuple[str, int, int]) -> Tuple[Tuple[str, int, int], List[_Check]]:
        suite, p, n = job
        log.info("running %s at p=%d n=%d", suite, p, n)
        t0 = time.perf_counter()
        out = _SUITE_FNS[suite](p, n, seed)
        ms = (time.perf_counter() - t0) * 1000.0
        for c in out:
            if c.elapsed_ms is None:
                c.elapsed_ms = round(ms / max(len(out), 1), 3)
        return job, out

    results: Dict[Tuple[str, int, int], List[_Check]] = {}
    with ThreadPoolExecutor(max_workers=min(_WORKERS, max(len(jobs), 1))) as pool:
        for job, out in pool.map(run, jobs):
            results[job] = out

    ordered: List[_Check] = []
    for suite in suites:
        for p in sorted(ps):
            for n in sorted(ns):
                ordered.extend(results.get((suite, p, n), []))
    failed = [c for c in ordered if c.status == "fail"]
    report = {
        "suite": args.suite,
        "grid": {"p": sorted(ps), "n": sorted(ns)},
        "seed": seed,
        "checks": [c.as_dict(args.timings) for c in ordered],
        "passed": len(ordered) - len(failed),
        "failed": len(failed),
    }
    _emit(report, None)
    return 1 if failed else 0


# ----------------------------------------------------------------------
# gdim


def cmd_gdim(args: argparse.Namespace) -> int:
    p = args.p
    if args.object == "B1":
        if args.n is not None and args.n != 2:
            raise _UsageError("the B1 example lives in the two-variable algebra")
        params = Params(p, 2)
        S = build_B1_example(p)
        formula = gdim_formula_homogeneous_borel(p, 2, 2)
        label = {"object": "B1", "p": p, "n": 2}
    else:
        if args.n is None or args.r is None:
            raise _UsageError("--n and --r are required for object b")
        params = Params(p, args.n)
        if not 0 <= args.r <= params.n:
            raise _UsageError(f"--r must lie in [0, {params.n}]")
        S = build_br(params, args.r)
        formula = gdim_formula_br(p, args.n, args.r)
        label = {"object": "b", "p": p, "n": args.n, "r": args.r}
    enumerated = gdim_graded(S)
    diff = enumerated - formula
    if args.format == "json":
        doc = {
            **label,
            "formula": formula.to_json_dict(),
            "enumerated": enumerated.to_json_dict(),
            "difference": diff.to_json_dict(),
            "match": diff.is_zero(),
        }
        _emit(doc, None)
    else:
        print(f"formula:    {formula}")
        print(f"enumerated: {enumerated}")
        print(f"difference: {diff}")
    if args.strict and not diff.is_zero():
        return 1
    return 0


# ----------------------------------------------------------------------
# orbit


def cmd_orbit(args: argparse.Namespace) -> int:
    if not 0 <= args.r <= args.n:
        raise _UsageError(f"--r must lie in [0, {args.n}]")
    params = Params(args.p, args.n)
    seed = _seed_from_env(args.seed)
    S = build_br(params, args.r)
    base_gdim = gdim_filtered(S)
    base_pr0 = r_invariant_pr0(S)
    entries = []
    all_ok = True
    for k in range(args.count):
        psi = random_automorphism(params, seed=seed * 1_000_003 + k)
        img = span([induced(psi, D) for D in S.basis()], params)
        g = gdim_filtered(img)
        pr0 = r_invariant_pr0(img)
        ok = img.dim == S.dim and g == base_gdim and pr0 == base_pr0
        all_ok = all_ok and ok
        entries.append(
            {
                "sample": k,
                "dim": img.dim,
                "gdim": g.to_json_dict(),
                "pr0": pr0,
                "ok": ok,
            }
        )
    report = {
        "p": args.p,
        "n": args.n,
        "r": args.r,
        "count": args.count,
        "seed": seed,
        "base": {
            "dim": S.dim,
            "gdim": base_gdim.to_json_dict(),
            "pr0": base_pr0,
        },
        "orbits": entries,
        "all_ok": all_ok,
    }
    _emit(report, None)
    return 0 if all_ok else 1


# ----------------------------------------------------------------------
# table


def cmd_table(args: argparse.Namespace) -> int:
    ps = _parse_int_list(args.p_list, "p")
    ns = _parse_int_list(args.n_list, "n")
    rows = []
    any_mismatch = False
    for p in sorted(ps):
        for n in sorted(ns):
            params = Params(p, n)
            for r in range(n + 1):
                formula = dim_formula_br(p, n, r)
                enumerated = build_br(params, r).dim
                ok = formula == enumerated
                note = "" if ok else _GAP_NOTE
                any_mismatch = any_mismatch or not ok
                rows.append((p, n, r, formula, enumerated, "ok" if ok else "MISMATCH", note))
    header = ("p", "n", "r", "formula", "enumerated", "match", "note")
    if args.format == "csv":
        print(",".join(header))
        for row in rows:
            print(",".join(str(x) for x in row))
    else:
        print("| " + " | ".join(header) + " |")
        print("|" + "|".join("---" for _ in header) + "|")
        for row in rows:
            print("| " + " | ".join(str(x) for x in row) + " |")
    return 1 if any_mismatch else 0


# ----------------------------------------------------------------------
# entry point


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wittlab",
        description="Exact computations with derivations of truncated polynomial rings.",
    )
    parser.add_argument("--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", help="construct an object and dump its JSON")
    b.add_argument("--p", type=int, required=True)
    b.add_argument("--n", type=int, default=None)
    b.add_argument("--object", choices=("t", "b", "B1"), required=True)
    b.add_argument("--r", type=int, default=None)
    b.add_argument("--out", default=None, help="write JSON here instead of stdout")
    b.set_defaults(fn=cmd_build)

    v = sub.add_parser("verify", help="run a verification suite over a grid")
    v.add_argument("--suite", choices=_SUITES, required=True)
    v.add_argument("--p-list", dest="p_list", default=_DEFAULT_P)
    v.add_argument("--n-list", dest="n_list", default=_DEFAULT_N)
    v.add_argument("--seed", type=int, default=None)
    v.add_argument("--timings", action="store_true", help="include elapsed_ms fields")
    v.add_argument(
        "--max-maximality-n",
        dest="max_maximality_n",
        type=int,
        default=2,
        help="cap n for the probe suite (closure cost)",
    )
    v.set_defaults(fn=cmd_verify)

    g = sub.add_parser("gdim", help="compare enumerated and closed-form graded dimensions")
    g.add_argument("--p", type=int, required=True)
    g.add_argument("--n", type=int, default=None)
    g.add_argument("--r", type=int, default=None)
    g.add_argument("--object", choices=("b", "B1"), default="b")
    g.add_argument("--format", choices=("text", "json"), default="text")
    g.add_argument("--strict", action="store_true", help="exit 1 on mismatch")
    g.set_defaults(fn=cmd_gdim)

    o = sub.add_parser("orbit", help="push b_r through random automorphisms and check invariants")
    o.add_argument("--p", type=int, required=True)
    o.add_argument("--n", type=int, required=True)
    o.add_argument("--r", type=int, required=True)
    o.add_argument("--count", type=int, default=20)
    o.add_argument("--seed", type=int, default=None)
    o.set_defaults(fn=cmd_orbit)

    t = sub.add_parser("table", help="dimension table: closed form vs enumeration")
    t.add_argument("--p-list", dest="p_list", default=_DEFAULT_P)
    t.add_argument("--n-list", dest="n_list", default=_DEFAULT_N)
    t.add_argument("--format", choices=("csv", "md"), default="md")
    t.set_defaults(fn=cmd_table)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    logging.basicConfig(
        stream=sys.stderr, level=logging.INFO, format="%(levelname)s %(message)s"
    )
    parser = _build_parser()
    args = parser.parse_args(argv)
    if not args.verbose:
        log.setLevel(logging.WARNING)
    try:
        return args.fn(args)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
