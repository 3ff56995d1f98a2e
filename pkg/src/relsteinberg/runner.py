"""Verification suites as independent tasks with a canonical merge order.

A task is ``(suite, check, lo, hi, count, seed)``: it regenerates the instance stream of
``check`` from the per-check seed and verifies the slice ``[lo, hi)``.  Results
depend only on the task, never on which worker ran it, so reports are
byte-identical at any parallelism degree.
"""
from __future__ import annotations

import hashlib
import json
from concurrent.futures import ProcessPoolExecutor
from functools import lru_cache
from typing import Sequence

import numpy as np

from .chevalley import CHEVALLEY_IDS, random_chevalley_instances, verify_chevalley_instance, verify_n_rel
from .config import build_chevalley_context, build_linear_context
from .elimination import (
    F_alpha,
    G_alpha,
    merge_context,
    rank2_subsystems,
    square_chains,
    square_holds,
    xi_word,
    zeta_word,
)
from .evaluation import Verdict, eval_value, verify_instance
from .quotients import DEFAULT_GENERATOR_CAP, PresentationTooLarge, ft_presentation, verify_quotient_map
from .relations import (
    CATALOG,
    DEFINING_IDS,
    GROUP_IDS,
    RELATIVE_IDS,
    instance_rng,
    random_instances,
    random_symbol,
)
from .words import word

SCHEMA_VERSION = 1
CHUNK = 250
_STATE: dict = {}


def _init(cfg: dict) -> None:
    _STATE.clear()
    _STATE["cfg"] = cfg


@lru_cache(maxsize=None)
def _linear():
    return build_linear_context(_STATE["cfg"])


@lru_cache(maxsize=None)
def _chevalley():
    return build_chevalley_context(_STATE["cfg"])


@lru_cache(maxsize=None)
def _merged():
    ctx = _linear()
    l, m = _STATE["cfg"].get("elimination", {}).get("root", [ctx.labels[0], ctx.labels[1]])
    return merge_context(ctx, l, m)


@lru_cache(maxsize=64)
def _instances(suite: str, check: str, count: int, seed: int) -> tuple:
    if suite == "relations":
        return tuple(random_instances(_linear(), [check], count, seed))
    if suite == "chevalley":
        return tuple(random_chevalley_instances(_chevalley(), [check], count, seed))
    if suite == "elimination":
        kind, _, rid = check.partition(":")
        if kind == "F":
            return tuple(random_instances(_merged().merged, [rid], count, seed))
        if kind == "xi":
            return tuple(random_instances(_linear().relativized, [rid], count, seed))
    raise ValueError(f"no instance stream for {suite}/{check}")


def _mapped_verdict(ctx, inst, f, map_name) -> Verdict:
    lhs = eval_value(ctx, f(inst.lhs))
    rhs = eval_value(ctx, f(inst.rhs))
    if np.array_equal(lhs, rhs):
        return Verdict(inst.relation_id, True, inst, extra={"map": map_name})
    return Verdict(inst.relation_id, False, inst, [int(x) for x in lhs], [int(x) for x in rhs], {"map": map_name})


def run_task(task: tuple) -> dict:
    """Verify one slice; returns pass/fail counts and failure dumps."""
    suite, check, lo, hi, count, seed = task
    passed, failures = 0, []
    if suite in ("relations", "chevalley") or (suite == "elimination" and check.split(":")[0] in ("F", "xi")):
        insts = _instances(suite, check, count, seed)[lo:hi]
        for inst in insts:
            if suite == "relations":
                v = verify_instance(_linear(), inst)
            elif suite == "chevalley":
                v = verify_chevalley_instance(_chevalley(), inst)
            elif check.startswith("F:"):
                mc = _merged()
                v = _mapped_verdict(mc.parent, inst, lambda w: F_alpha(mc, w), "F")
            else:
                ctx = _linear()
                v = _mapped_verdict(ctx, inst, lambda w: xi_word(ctx, w), "xi")
            if v.passed:
                passed += 1
            else:
                failures.append(v.to_json(seed))
        return {"pass": passed, "fail": len(failures), "failures": failures}
    if suite == "elimination":
        rng = instance_rng(seed, f"{check}:{lo}")
        ctx = _linear()
        for _ in range(lo, hi):
            ok, dump = _symbol_check(ctx, check, rng)
            if ok:
                passed += 1
            else:
                failures.append(dump)
        return {"pass": passed, "fail": len(failures), "failures": failures}
    raise ValueError(f"unknown task {task}")


def _symbol_check(ctx, check: str, rng: np.random.Generator) -> tuple[bool, dict]:
    if check == "FG":
        mc = _merged()
        z = random_symbol(ctx, rng)
        back = F_alpha(mc, G_alpha(mc, z))
        ok = np.array_equal(eval_value(ctx, back), eval_value(ctx, word(z)))
        return ok, {"map": "FG", "symbol": str(z)}
    if check == "zeta_xi":
        z = random_symbol(ctx, rng)
        ok = np.array_equal(eval_value(ctx, xi_word(ctx, zeta_word(ctx, word(z)))), eval_value(ctx, word(z)))
        return ok, {"map": "zeta", "symbol": str(z)}
    if check == "xi_zeta":
        rel = ctx.relativized
        z = random_symbol(rel, rng)
        ok = np.array_equal(eval_value(rel, zeta_word(ctx, xi_word(ctx, word(z)))), eval_value(rel, word(z)))
        return ok, {"map": "xi", "symbol": str(z)}
    if check.startswith("square:"):
        subs = rank2_subsystems(ctx.labels)
        kind, pairs = subs[int(check.split(":")[1])]
        chains = square_chains(ctx, pairs)
        z = random_symbol(chains[0][-1].merged, rng)
        return square_holds(ctx, chains, word(z)), {"map": "F", "subsystem": kind, "symbol": str(z)}
    raise ValueError(check)


# ------------------------------------------------------------------ planning

def _fits(rid: str, n: int) -> bool:
    """Ids with distinct indices need arity <= n; St3-style constraints allow repeats."""
    spec = CATALOG[rid]
    return spec.constraint is not None or spec.arity <= n


def _linear_ids(filter_ids: Sequence[str] | None) -> list[str]:
    return [r for r in GROUP_IDS if filter_ids is None or r in filter_ids]


def skipped(suite: str, filter_ids: Sequence[str] | None) -> list[str]:
    """Requested ids that cannot be instantiated in the configured context."""
    if suite == "relations":
        return [r for r in _linear_ids(filter_ids) if not _fits(r, _linear().n)]
    if suite == "elimination":
        ids = [r for r in RELATIVE_IDS if filter_ids is None or r in filter_ids]
        xi_ids = [r for r in DEFINING_IDS if filter_ids is None or r in filter_ids]
        return ([f"F:{r}" for r in ids if not _fits(r, _merged().merged.n)]
                + [f"xi:{r}" for r in xi_ids if not _fits(r, _linear().n)])
    return []


def _checks(suite: str, cfg: dict, filter_ids: Sequence[str] | None) -> list[str]:
    if suite == "relations":
        return [r for r in _linear_ids(filter_ids) if _fits(r, _linear().n)]
    if suite == "chevalley":
        return [r for r in CHEVALLEY_IDS if filter_ids is None or r in filter_ids]
    if suite == "elimination":
        merged_n = _merged().merged.n
        ids = [r for r in RELATIVE_IDS if filter_ids is None or r in filter_ids]
        ids = [r for r in ids if _fits(r, merged_n)]
        xi_ids = [r for r in DEFINING_IDS if (filter_ids is None or r in filter_ids) and _fits(r, _linear().n)]
        out = [f"F:{r}" for r in ids] + ["FG", "zeta_xi", "xi_zeta"] + [f"xi:{r}" for r in xi_ids]
        if _linear().n >= 4:
            out += [f"square:{k}" for k in range(len(rank2_subsystems(_linear().labels)))]
        return out
    raise ValueError(suite)


def plan(suite: str, cfg: dict, filter_ids, samples: int, seed: int) -> list[tuple]:
    tasks = []
    for check in _checks(suite, cfg, filter_ids):
        for lo in range(0, samples, CHUNK):
            tasks.append((suite, check, lo, min(samples, lo + CHUNK), samples, seed))
    return tasks


def _merge(tasks: list[tuple], results: list[dict]) -> dict:
    out: dict = {}
    for task, res in zip(tasks, results):
        entry = out.setdefault(task[1], {"pass": 0, "fail": 0, "failures": []})
        entry["pass"] += res["pass"]
        entry["fail"] += res["fail"]
        entry["failures"].extend(res["failures"])
    return out


def _reset(cfg: dict) -> None:
    _init(cfg)
    for f in (_linear, _chevalley, _merged, _instances):
        f.cache_clear()


def _execute(tasks: list[tuple], cfg: dict, jobs: int) -> list[dict]:
    if jobs <= 1 or len(tasks) <= 1:
        return [run_task(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=jobs, initializer=_reset, initargs=(cfg,)) as pool:
        return list(pool.map(run_task, tasks))


def run_suites(cfg: dict, suites: Sequence[str], filter_ids: Sequence[str] | None,
               samples: int, seed: int, jobs: int = 1) -> dict:
    """Run the requested suites and build the report (no timestamps)."""
    _reset(cfg)
    report: dict = {"schema_version": SCHEMA_VERSION, "seed": seed, "samples": samples,
                    "config_fingerprint": config_fingerprint(cfg), "suites": {}}
    wanted = list(suites)
    if "all" in wanted:
        wanted = ["relations", "elimination"] + (["chevalley"] if "root_system" in cfg else []) + ["ft"]
    for suite in wanted:
        if suite == "ft":
            report["suites"]["ft"] = _ft_suite(cfg, filter_ids, samples, seed)
            continue
        if suite == "chevalley":
            ch = build_chevalley_context(cfg)
            nrel = verify_n_rel(ch.constants)
            section = {"n_rel": {"pass": nrel["pass"], "pairs": nrel["pairs"], "failures": nrel["failures"]}}
        else:
            section = {}
        if suite == "relations":
            section["context"] = _linear().fingerprint
        if suite in ("relations", "elimination"):
            section["skipped"] = skipped(suite, filter_ids)
        tasks = plan(suite, cfg, filter_ids, samples, seed)
        section["checks"] = _merge(tasks, _execute(tasks, cfg, jobs))
        report["suites"][suite] = section
    report["pass"] = _all_pass(report["suites"])
    return report


def _ft_suite(cfg: dict, filter_ids, samples: int, seed: int) -> dict:
    cap = int(cfg.get("generator_cap", DEFAULT_GENERATOR_CAP))
    out = {}
    targets = []
    if "ring" in cfg:
        targets.append(("linear", build_linear_context(cfg)))
    if "root_system" in cfg:
        ch = build_chevalley_context(cfg)
        if ch.datum.rank >= 3:
            targets.append(("chevalley", ch))
    for name, ctx in targets:
        try:
            pres = ft_presentation(ctx, cap=cap)
        except PresentationTooLarge as exc:
            out[name] = {"pass": False, "error": str(exc)}
            continue
        rec = pres.to_json()
        ids = None
        if filter_ids is not None:
            if name == "chevalley":
                ids = [r for r in filter_ids if r in CHEVALLEY_IDS]
            else:
                ids = [r for r in filter_ids if r in RELATIVE_IDS and CATALOG[r].arity <= ctx.n]
        v = verify_quotient_map(ctx, ids, samples, seed, pres)
        rec.update({"quotient_map": v.to_json(), "pass": v.passed and rec["certified"]})
        out[name] = rec
    return out


def _all_pass(obj) -> bool:
    if isinstance(obj, dict):
        if obj.get("fail"):
            return False
        if obj.get("pass") is False:
            return False
        return all(_all_pass(v) for v in obj.values())
    if isinstance(obj, list):
        return all(_all_pass(v) for v in obj)
    return True


def config_fingerprint(cfg: dict) -> str:
    return hashlib.sha256(json.dumps(cfg, sort_keys=True).encode()).hexdigest()[:16]


def dumps(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2) + "\n"
