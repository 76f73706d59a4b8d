#!/usr/bin/env python3
"""Regenerate src/saldet/ppcc_tables.py.

Normal-distribution critical values are the Monte-Carlo 5th percentile of the
probability plot correlation coefficient under Filliben order-statistic-median
plotting positions, enforced monotone in n. The n = 1000 entry is pinned to
the published 0.9984, which the simulation reproduces to within 5e-5. The
uniform test uses the published constant 0.8880 across the whole range (the
source table's n-dependence is not recoverable; see the module docstring).

Run from the repository root:  python3 scripts/gen_ppcc_tables.py
"""

from pathlib import Path

import numpy as np
from scipy.special import ndtri

GRID = (
    list(range(3, 21))
    + [25, 30, 35, 40, 45, 50, 60, 70, 80, 90, 100]
    + [120, 150, 200, 250, 300, 400, 500, 600, 750, 1000]
)
SEED = 20240101
ALPHA = 0.05
PINNED_NORMAL = {1000: 0.9984}


def filliben_positions(n: int) -> np.ndarray:
    m = (np.arange(1, n + 1) - 0.3175) / (n + 0.365)
    m[-1] = 0.5 ** (1.0 / n)
    m[0] = 1.0 - m[-1]
    return m


def ppcc_batch(samples: np.ndarray, quantiles: np.ndarray) -> np.ndarray:
    ordered = np.sort(samples, axis=1)
    oc = ordered - ordered.mean(axis=1, keepdims=True)
    qc = quantiles - quantiles.mean()
    return (oc @ qc) / np.sqrt((oc**2).sum(axis=1) * (qc**2).sum())


def critical_value(rng: np.random.Generator, n: int, trials: int) -> float:
    q = ndtri(filliben_positions(n))
    rs = []
    chunk = max(1, min(trials, 20_000_000 // max(n, 1)))
    done = 0
    while done < trials:
        take = min(chunk, trials - done)
        rs.append(ppcc_batch(rng.standard_normal((take, n)), q))
        done += take
    return float(np.percentile(np.concatenate(rs), 100 * ALPHA))


def main() -> None:
    rng = np.random.default_rng(SEED)
    rows = []
    for n in GRID:
        trials = 100_000 if n <= 200 else 40_000
        rows.append((n, critical_value(rng, n, trials)))
        print(f"n={n:5d}  crit={rows[-1][1]:.5f}")

    ns = np.array([r[0] for r in rows])
    cs = np.maximum.accumulate(np.array([r[1] for r in rows]))
    table = dict(zip(ns.tolist(), np.round(cs, 5).tolist()))
    table.update(PINNED_NORMAL)

    out = Path(__file__).resolve().parents[1] / "src" / "saldet" / "ppcc_tables.py"
    lines = [
        '"""Critical values for the probability-plot correlation coefficient test.',
        "",
        "NORMAL_CRITICAL_05 holds 5%-level critical values for testing normality,",
        "simulated under Filliben order-statistic-median plotting positions",
        "(100k trials for n <= 200, 40k above; seed 20240101; monotone-enforced;",
        "n = 1000 pinned to the published 0.9984, which the simulation matches to",
        "within 5e-5). UNIFORM_CRITICAL is the published 0.8880 used for the",
        "uniformity test; its source table is indexed in a way we cannot",
        "reconstruct, so the single published value is applied across the range.",
        "",
        "Generated by scripts/gen_ppcc_tables.py; edit that script, not this file.",
        '"""',
        "",
        "N_MIN = 3",
        "N_MAX = 1000",
        "",
        "UNIFORM_CRITICAL = 0.8880",
        "",
        "NORMAL_CRITICAL_05 = {",
    ]
    for n in sorted(table):
        lines.append(f"    {n}: {table[n]:.5f},")
    lines.append("}")
    lines.append("")
    out.write_text("\n".join(lines))
    print(f"wrote {out}")


if __name__ == "__main__":
    main()
