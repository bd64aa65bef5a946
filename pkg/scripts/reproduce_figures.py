#%%
"""A script to regenerate every figure table in one go.

To use this script:
1. First create and activate the mamba/conda dev environment, `dev.yml`.
2. Copy `.env.template` as `.env` and adjust `MC_REALIZATIONS`/`N_WORKERS`.
3. Run the cells below. Tables are written to `OUTPUT_DIR`.
"""
#%%
from pathlib import Path

import pandas as pd

from fd_backhaul.energy import optimal_bits
from fd_backhaul.settings import N_WORKERS, OUTPUT_DIR
from fd_backhaul.sweep import apply_series, presets, run_sweep, series_label, write_results

#%%
# Sweep tables, one per preset.
for spec in presets():
    df = run_sweep(spec, workers=N_WORKERS, progress=True)
    write_results(df, spec)

#%%
# EE-optimal resolution for every series of the EE presets.
rows = []
for spec in presets():
    if "ee" not in spec.outputs or not spec.name.endswith("a"):
        continue

    for overrides in spec.series:
        scenario, model = apply_series(spec, overrides, skip=("b",))
        b_star, report = optimal_bits(spec.phase, scenario, model, range(1, 16))
        rows.append(
            {"preset": spec.name, "series": series_label(overrides), "b_opt": b_star, "ee": report.ee}
        )

table = pd.DataFrame(rows)
table.to_csv(Path(OUTPUT_DIR) / "ee_optimal_bits.csv", index=False)
print(table.to_string(index=False))
# %%
