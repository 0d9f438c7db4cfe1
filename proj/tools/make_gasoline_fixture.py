#!/usr/bin/env python3
"""Regenerates data/gasoline_lookalike.csv.

The file is a synthetic stand-in for the 1970-1999 US gasoline-consumption
series (Economic Report of the President 2000 / Census Bureau / Department of
Energy). It keeps the documented seven-column schema and log-index magnitudes
and bakes in genuine price endogeneity through a shared demand shock, but the
numbers are generated, not historical. Deterministic: fixed seed, no options.
"""

import numpy as np

SEED = 19701999
YEARS = np.arange(1970, 2000)


def main() -> None:
    rng = np.random.default_rng(SEED)
    t = YEARS - YEARS[0]

    ri = 4.00 + 0.0250 * t + rng.normal(0, 0.020, len(t))    # log real disposable income
    rpt = 4.60 + 0.0200 * t + rng.normal(0, 0.030, len(t))   # log public-transport price index
    rpn = 4.60 + 0.0100 * t + rng.normal(0, 0.025, len(t))   # log new-car price index
    rpu = 4.55 + 0.0150 * t + rng.normal(0, 0.030, len(t))   # log used-car price index

    demand_shock = rng.normal(0, 1.0, len(t))                # unobserved confounder

    # First stage: price responds to the instruments and to demand shocks.
    pg = (0.30 + 0.45 * ri + 0.30 * rpt - 0.25 * rpn + 0.20 * rpu
          + 0.060 * demand_shock + rng.normal(0, 0.015, len(t)))

    # Second stage: consumption with price and income elasticities; the same
    # demand shock enters the noise, making PG endogenous.
    gc = (2.00 - 0.55 * pg + 1.10 * ri
          + 0.022 * demand_shock + rng.normal(0, 0.008, len(t)))

    header = "year,GC,PG,RI,RPN,RPT,RPU"
    lines = [
        "# synthetic lookalike of the 1970-1999 US gasoline-consumption study;",
        "# generated by tools/make_gasoline_fixture.py (seed %d), not historical data" % SEED,
        header,
    ]
    for i, year in enumerate(YEARS):
        lines.append("%d,%.6f,%.6f,%.6f,%.6f,%.6f,%.6f"
                     % (year, gc[i], pg[i], ri[i], rpn[i], rpt[i], rpu[i]))
    with open("data/gasoline_lookalike.csv", "w") as f:
        f.write("\n".join(lines) + "\n")
    print("wrote data/gasoline_lookalike.csv (%d rows)" % len(YEARS))


if __name__ == "__main__":
    main()
