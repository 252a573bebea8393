"""Recomputes the bundled cohort's per-age-group means and Kruskal-Wallis
results straight from its CSV files with pandas/scipy; writes
tests/data/cohort_oracle.json."""
import json
from pathlib import Path

import pandas as pd
from scipy import stats

ROOT = Path(__file__).resolve().parents[2]
COHORT = ROOT / "data/cohort"

participants = pd.read_csv(COHORT / "participants.csv")
metrics = pd.read_csv(COHORT / "metrics.csv")


def group(age):
    return "G60_69" if age < 70 else "G70_79" if age < 80 else "G80_PLUS"


participants["group"] = participants["age"].map(group)
df = metrics.merge(participants[["participant_id", "group"]], on="participant_id")

out = {"group_n": participants["group"].value_counts().to_dict(), "cells": []}
for game in ["DimSum", "Steamer", "Cashier"]:
    for col, name in [("inaccuracy_pct", "Inaccuracy"), ("omission_pct", "Omission"), ("total_time_s", "Time")]:
        sub = df[df["game"] == game]
        groups = [sub[sub["group"] == g][col].to_numpy() for g in ["G60_69", "G70_79", "G80_PLUS"]]
        h, p = stats.kruskal(*groups)
        w, sw_p = stats.shapiro(sub[col].to_numpy())
        out["cells"].append({
            "game": game,
            "indicator": name,
            "means": [float(g.mean()) for g in groups],
            "means_1dp": [f"{g.mean():.1f}" for g in groups],
            "H": float(h),
            "p": float(p),
            "W": float(w),
            "sw_p": float(sw_p),
        })

moca = participants.groupby("group")["moca_score"].mean()
out["moca_means"] = {k: float(v) for k, v in moca.items()}
out["moca_overall"] = float(participants["moca_score"].mean())
out["female_pct"] = float((participants["gender"] == "female").mean() * 100)

(ROOT / "tests/data/cohort_oracle.json").write_text(json.dumps(out, indent=2) + "\n")
for c in out["cells"]:
    print(c["game"], c["indicator"], c["means_1dp"], round(c["p"], 4))
