"""Run the built-in examples and diff against their expected values."""

from __future__ import annotations

from .corpus import EXAMPLES, Example
from .pipeline import AnalysisConfig, analyze_ideal


def _row(ex: Example, check: str, expected, got) -> dict:
    ok = expected == got
    return {"example": ex.name, "check": check, "expected": expected, "got": got,
            "status": "PASS" if ok else "FAIL"}


def check_block(ex: Example, block: dict) -> list[dict]:
    exp = ex.expected
    rows = []
    hil = block.get("hilbert")
    if "e" in exp:
        k = len(exp["e"])
        rows.append(_row(ex, "e", list(exp["e"]), hil["e"][:k] if hil else None))
    if "colength" in exp:
        rows.append(_row(ex, "colength", exp["colength"], block.get("colength")))
    reds = block.get("reductions", [])
    for key in ("e1_deficit", "e2_deficit"):
        if key in exp:
            got = sorted({r[key] for r in reds}) if reds else None
            rows.append(_row(ex, key, [exp[key]], got))
    dp = block.get("depth")
    if "depth_exact" in exp:
        rows.append(_row(ex, "depth", [exp["depth_exact"]] * 2,
                         [dp["lower"], dp["upper"]] if dp else None))
    if "depth_upper" in exp:
        rows.append(_row(ex, "depth upper", exp["depth_upper"], dp["upper"] if dp else None))
    if "depth_lower" in exp:
        got = dp["lower"] if dp else None
        row = _row(ex, "depth lower>=", exp["depth_lower"], got)
        row["status"] = "PASS" if got is not None and got >= exp["depth_lower"] else "FAIL"
        rows.append(row)
    if "closed" in exp:
        cl = block.get("closure")
        rows.append(_row(ex, "closure", exp["closed"], cl["status"] if cl else None))
    ind = block.get("independence")
    if "r_all" in exp:
        got = sorted(set(ind["r_values"])) if ind else None
        rows.append(_row(ex, "r_J all", [exp["r_all"]], got))
    if "r_equal" in exp:
        got = len(set(ind["r_values"])) == 1 if ind else None
        rows.append(_row(ex, "r_J equal", True, got))
    if "r_named" in exp:
        got = {n["label"]: n["r"] for n in ind["named"]} if ind else None
        rows.append(_row(ex, "r_J named", exp["r_named"], got))
    if "independence" in exp:
        rows.append(_row(ex, "independence", exp["independence"], ind["verdict"] if ind else None))
    for err in block.get("errors", []):
        rows.append({"example": ex.name, "check": f"stage {err['stage']}", "expected": "ok",
                     "got": err["message"], "status": "FAIL"})
    return rows


def run_examples(cfg: AnalysisConfig, characteristic: int, only=None, skip_slow: bool = False):
    blocks, rows = [], []
    for ex in EXAMPLES:
        if only and ex.name not in only and ex.name.split()[-1] not in only:
            continue
        if characteristic in ex.bad_characteristics:
            rows.append({"example": ex.name, "check": "skipped",
                         "expected": f"characteristic != {characteristic} required",
                         "got": characteristic, "status": "SKIP"})
            continue
        if skip_slow and ex.slow:
            rows.append({"example": ex.name, "check": "skipped", "expected": "slow",
                         "got": None, "status": "SKIP"})
            continue
        I = ex.ideal(characteristic)
        block = analyze_ideal(I, cfg, named=ex.named_reductions(characteristic), name=ex.name,
                              trials=max(cfg.trials, ex.trials))
        blocks.append(block)
        rows.extend(check_block(ex, block))
    return blocks, rows
