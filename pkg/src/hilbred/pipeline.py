"""Full analysis of an ideal, assembled into a report, and report rendering."""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field

from . import __version__
from .closure import ClosureCapExceeded, is_integrally_closed
from .graded import (
    CLAIMS,
    ClaimContext,
    b_sequence_any,
    deficits,
    depth_bounds,
    guerrieri_sum,
    verify_claim,
    vv_check,
)
from .hilbert import PostulationNotDetected, hilbert_coefficients, northcott_huneke_check
from .ideal import Ideal, NotMPrimary, colength, is_m_primary
from .reduction import NotAReduction, independence_sample


def _env_int(name: str, default: int) -> int:
    return int(os.environ.get(name, default))


@dataclass
class AnalysisConfig:
    seed: int = 0
    trials: int = field(default_factory=lambda: _env_int("HILBRED_TRIALS", 5))
    r_max: int = field(default_factory=lambda: _env_int("HILBRED_R_MAX", 30))
    deg_bound: int = field(default_factory=lambda: _env_int("HILBRED_DEG_BOUND", 8))
    witness_r_max: int = 4
    rr_bound: int = 6
    hilbert_cap: int = field(default_factory=lambda: _env_int("HILBRED_HILBERT_CAP", 50))
    claims: tuple[str, ...] = CLAIMS
    closure: bool = True


CAP_ERRORS = (NotAReduction, PostulationNotDetected, ClosureCapExceeded)


def _stage(block: dict, name: str, fn):
    try:
        return fn()
    except CAP_ERRORS as exc:
        block["errors"].append({"stage": name, "kind": "cap", "message": str(exc)})
    except (NotMPrimary, ValueError, AssertionError, RuntimeError) as exc:
        block["errors"].append({"stage": name, "kind": type(exc).__name__, "message": str(exc)})
    return None


def analyze_ideal(I: Ideal, cfg: AnalysisConfig, named=(), name: str | None = None,
                  trials: int | None = None) -> dict:
    """Every stage in order; a failed stage is recorded and later stages that need it skipped."""
    name = name or I.name or "I"
    block: dict = {"name": name, "generators": [str(g) for g in I.gens], "errors": []}
    d = I.ring.dim
    block["dim"] = d
    ok = _stage(block, "m-primary", lambda: is_m_primary(I))
    block["m_primary"] = bool(ok)
    if not ok:
        if ok is False:
            block["errors"].append({"stage": "m-primary", "kind": "NotMPrimary",
                                    "message": "ideal is not m-primary"})
        return block
    block["colength"] = colength(I)

    reds: list = []
    n_trials = cfg.trials if trials is None else trials
    indep = _stage(block, "reductions", lambda: independence_sample(
        I, n_trials, cfg.seed, named, cfg.r_max, reductions=reds))
    if indep is not None:
        block["independence"] = {
            "verdict": indep.verdict,
            "r_values": indep.r_values,
            "named": [{"label": lab, "r": r, "error": msg} for lab, r, msg in indep.named],
            "witness": [list(w) for w in indep.witness] if indep.witness else None,
        }
    # e_0 = length(R/J) for a minimal reduction J certifies the multiplicity
    e0 = reds[0].colength_j() if reds else None
    hd = _stage(block, "hilbert", lambda: hilbert_coefficients(
        I, cap=cfg.hilbert_cap, check=False, e0=e0))
    if hd is None:
        return block
    block["hilbert"] = {"e": list(hd.coefficients), "table": hd.table,
                        "postulation": hd.postulation, "e0_certified": e0 is not None}
    if not reds:
        return block
    nh = _stage(block, "northcott", lambda: northcott_huneke_check(I, reds[0], hd))
    if nh is not None:
        block["northcott"] = {"e1_lower_bound": nh.e0 - nh.colength, "holds": nh.northcott_holds,
                              "boundary": nh.boundary, "i2_equals_ji": nh.i2_equals_ji,
                              "defect": nh.defect}
    defs = []
    rows = []
    for red in reds:
        rep = _stage(block, f"deficits[{red.label}]", lambda red=red: deficits(I, red, hd))
        vv = _stage(block, f"vv[{red.label}]", lambda red=red: vv_check(I, red))
        rows.append({"label": red.label, "r": red.r, "lengths": red.length_table,
                     "local_exponent": red.local_exponent,
                     "e1_deficit": rep.e1_deficit if rep else None,
                     "e2_deficit": rep.e2_deficit if rep else None, "vv": vv})
        if rep is not None:
            defs.append(rep)
    block["reductions"] = rows
    if len(defs) != len(reds):
        return block
    main = reds[0]
    if d >= 2:
        bs = _stage(block, "b-sequence", lambda: b_sequence_any(I, main, hd))
        if bs is not None:
            block["b_sequence"] = {
                "values": bs.values, "h_prime": bs.h_prime, "reduced_by": bs.reduced_by,
                "sum": bs.total, "weighted_sum": bs.weighted_total,
                "e1_deficit": bs.e1_deficit, "e2_deficit": bs.e2_deficit,
                "sum_equals_e1_deficit": bs.total == bs.e1_deficit,
                "weighted_equals_e2_deficit": bs.stated_identity,
                "weighted_plus_h_prime_equals_e2_deficit": bs.corrected_identity,
            }
    gsum = _stage(block, "guerrieri", lambda: guerrieri_sum(I, main)) if d >= 2 else None
    block["guerrieri_sum"] = gsum
    cert = _stage(block, "depth", lambda: depth_bounds(I, reds, hd, cfg.rr_bound, defs, gsum))
    if cert is not None:
        block["depth"] = {"lower": cert.lower, "lower_tag": cert.lower_tag, "upper": cert.upper,
                          "upper_tag": cert.upper_tag, "exact": cert.exact,
                          "evidence": cert.evidence}
    closure_box: dict = {}

    def closure_fn():
        if "report" not in closure_box:
            closure_box["report"] = _stage(block, "closure", lambda: is_integrally_closed(
                I, cfg.deg_bound, cfg.witness_r_max))
        return closure_box["report"]

    if cfg.closure:
        closure_fn()
    if cert is not None:
        ctx = ClaimContext(I, hd, reds, defs, cert, gsum, closure_fn)
        claims = {}
        for cid in cfg.claims:
            res = _stage(block, f"claim[{cid}]", lambda cid=cid: verify_claim(cid, ctx))
            if res is not None:
                claims[cid] = {"status": res.status, "applicable": res.applicable,
                               "conclusion_verified": res.conclusion_verified,
                               "detail": res.detail}
        block["claims"] = claims
    cl = closure_box.get("report")
    if cl is not None:
        block["closure"] = {"status": cl.integrally_closed, "method": cl.method,
                            "witness": str(cl.witness) if cl.witness is not None else None,
                            "certificate": cl.certificate}
    return block


def new_report(command: str, characteristic: int, cfg: AnalysisConfig) -> dict:
    return {"metadata": {"command": command, "version": __version__, "seed": cfg.seed,
                         "characteristic": characteristic, "trials": cfg.trials,
                         "r_max": cfg.r_max, "deg_bound": cfg.deg_bound},
            "ideals": []}


def violations(report: dict) -> list[tuple[str, str]]:
    out = []
    for block in report.get("ideals", []):
        for cid, res in block.get("claims", {}).items():
            if res["status"] == "VIOLATED":
                out.append((block["name"], cid))
    return out


def cap_hits(report: dict) -> int:
    return sum(1 for b in report.get("ideals", []) for e in b.get("errors", []) if e["kind"] == "cap")


# -- rendering --------------------------------------------------------------------


def to_json(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


def _fmt(v) -> str:
    if isinstance(v, list):
        return "[" + ", ".join(_fmt(x) for x in v) + "]"
    if v is None:
        return "-"
    return str(v)


def _table_block(b: dict) -> list[str]:
    out = [f"== {b['name']} ==", f"  generators   {', '.join(b['generators'])}"]
    if "hilbert" in b:
        e = b["hilbert"]["e"]
        out.append("  hilbert      " + " ".join(f"e{i}={v}" for i, v in enumerate(e)))
        out.append(f"  colength     {b['colength']}    postulation {b['hilbert']['postulation']}")
    if "northcott" in b:
        n = b["northcott"]
        out.append(f"  northcott    holds={n['holds']} boundary={n['boundary']} "
                   f"I^2=JI={n['i2_equals_ji']} defect={n['defect']}")
    for row in b.get("reductions", []):
        out.append(f"  reduction    {row['label']:<14} r={row['r']} lengths={_fmt(row['lengths'])} "
                   f"e1_deficit={_fmt(row['e1_deficit'])} e2_deficit={_fmt(row['e2_deficit'])} "
                   f"vv={_fmt(row['vv'])}")
    if "independence" in b:
        ind = b["independence"]
        out.append(f"  independence {ind['verdict']}  r values {_fmt(ind['r_values'])}")
        for nm in ind["named"]:
            out.append(f"    named {nm['label']}: r={_fmt(nm['r'])} {nm['error']}".rstrip())
    if "b_sequence" in b:
        bs = b["b_sequence"]
        out.append(f"  B_n (n>=2)   {_fmt(bs['values'])} sum={bs['sum']} weighted={bs['weighted_sum']} "
                   f"h'_1 terms={_fmt(bs['h_prime'])} reduced_by={bs['reduced_by']}")
    if b.get("guerrieri_sum") is not None:
        out.append(f"  guerrieri    {b['guerrieri_sum']}")
    if "depth" in b:
        dp = b["depth"]
        out.append(f"  depth G(I)   [{dp['lower']} ({dp['lower_tag']}), {dp['upper']} ({dp['upper_tag']})]"
                   f" exact={dp['exact']}")
        for ev in dp["evidence"]:
            out.append(f"    evidence: {ev}")
    if "closure" in b:
        c = b["closure"]
        w = f" witness {c['witness']}" if c["witness"] else ""
        out.append(f"  closure      {c['status']} ({c['method']}){w}")
    for cid, res in b.get("claims", {}).items():
        out.append(f"  claim {cid:<12} {res['status']:<24} {res['detail']}")
    for err in b.get("errors", []):
        out.append(f"  ERROR [{err['stage']}] {err['kind']}: {err['message']}")
    return out


def to_table(report: dict) -> str:
    md = report["metadata"]
    lines = ["# " + " ".join(f"{k}={md[k]}" for k in sorted(md))]
    for b in report.get("ideals", []):
        lines.extend(_table_block(b))
    for row in report.get("rows", []):
        lines.append(f"{row['status']:<5} {row['example']:<8} {row['check']:<14} "
                     f"expected={_fmt(row['expected'])} got={_fmt(row['got'])}")
    if "summary" in report:
        for cid, counts in sorted(report["summary"].items()):
            lines.append(f"summary {cid:<12} " + " ".join(f"{k}={counts[k]}" for k in sorted(counts)))
    return "\n".join(lines) + "\n"


def emit_report(report: dict, fmt: str = "table") -> str:
    if fmt == "json":
        return to_json(report)
    if fmt == "table":
        return to_table(report)
    raise ValueError(f"unknown format {fmt!r}")
