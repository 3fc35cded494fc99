"""Random m-primary ideals and population-level claim checks."""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

from .graded import CLAIMS
from .ideal import Ideal
from .jobfile import render_input
from .pipeline import AnalysisConfig, analyze_ideal
from .ring import AmbientRing, DEFAULT_CHARACTERISTIC

NAMES = ("x", "y", "z")


@dataclass(frozen=True)
class SearchParams:
    nvars: int = 2
    max_deg: int = 6
    count: int = 200
    seed: int = 0
    binomial_rate: float = 0.5
    characteristic: int = DEFAULT_CHARACTERISTIC


def random_ideal(params: SearchParams, index: int) -> Ideal:
    """Pure powers of every variable, a few random monomials, maybe one binomial.

    All generators have degree between a random base degree and ``max_deg``
    (low-degree generators would make most samples trivial).
    Deterministic in (params.seed, index)."""
    rng = random.Random(f"{params.seed}:{index}")
    n, D = params.nvars, params.max_deg
    R = AmbientRing(NAMES[:n], params.characteristic)
    lo = rng.randint(min(2, D), D)
    gens = []
    for i in range(n):
        e = [0] * n
        e[i] = rng.randint(lo, D)
        gens.append(R.monomial(tuple(e)))

    def rand_mono():
        while True:
            e = tuple(rng.randint(0, D) for _ in range(n))
            if lo <= sum(e) <= D:
                return e

    for _ in range(rng.randint(0, 4)):
        gens.append(R.monomial(rand_mono()))
    if rng.random() < params.binomial_rate:
        a, b = rand_mono(), rand_mono()
        if a != b:
            gens.append(R.monomial(a) + R.monomial(b).scale(rng.randrange(1, R.characteristic)))
    return Ideal(R, gens, name=f"sample{index}")


def _one(args):
    params, index, cfg = args
    I = random_ideal(params, index)
    return analyze_ideal(I, cfg)


def summarize(blocks: list[dict], claims) -> dict:
    summary = {}
    for cid in claims:
        counts = {"applicable": 0, "verified": 0, "vacuous": 0, "unverifiable": 0, "violations": 0}
        for b in blocks:
            res = b.get("claims", {}).get(cid)
            if res is None:
                continue
            st = res["status"]
            if st == "vacuous":
                counts["vacuous"] += 1
            elif st == "hypotheses unverifiable":
                counts["unverifiable"] += 1
            else:
                counts["applicable"] += 1
                if st == "verified":
                    counts["verified"] += 1
                else:
                    counts["violations"] += 1
        summary[cid] = counts
    return summary


def run_search(params: SearchParams, cfg: AnalysisConfig, claims=CLAIMS, jobs: int = 1,
               repro_dir: Path | None = None) -> tuple[list[dict], dict]:
    cfg = AnalysisConfig(**{**cfg.__dict__, "claims": tuple(claims),
                            "closure": False})
    tasks = [(params, i, cfg) for i in range(params.count)]
    if jobs > 1 and tasks:
        with ProcessPoolExecutor(jobs) as pool:
            blocks = list(pool.map(_one, tasks, chunksize=4))
    else:
        blocks = [_one(t) for t in tasks]
    summary = summarize(blocks, claims)
    if repro_dir is not None:
        for i, b in enumerate(blocks):
            bad = [c for c, r in b.get("claims", {}).items() if r["status"] == "VIOLATED"]
            if bad:
                repro_dir.mkdir(parents=True, exist_ok=True)
                I = random_ideal(params, i)
                path = repro_dir / f"violation_{params.seed}_{i}.txt"
                path.write_text(f"# violated: {', '.join(bad)}\n" + render_input(I.ring, "I", I.gens))
                b["reproduction"] = str(path)
    return blocks, summary
