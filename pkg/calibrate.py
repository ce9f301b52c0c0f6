"""Scratch calibration sweep for the stochastic acceptance bands (not shipped)."""
import json
import time

import numpy as np

from evqkan.harness import ExperimentConfig, run_experiment, summarize
from evqkan.optimizer import OptimizerConfig
from evqkan.tasks import PRESET_BOUNDARY_COEFFS, TaskSpec

results = {}


def run(tag, **kw):
    t0 = time.perf_counter()
    cfg = ExperimentConfig(**kw)
    st = summarize(run_experiment(cfg))
    results[tag] = {
        "average": st.average, "median": st.median,
        "minimum": st.minimum, "maximum": st.maximum,
        "seconds": round(time.perf_counter() - t0, 1),
    }
    print(tag, results[tag], flush=True)
    with open("calibration.json", "w") as fh:
        json.dump(results, fh, indent=2)


# QNN fit across seeds (cheap)
for seed in (7, 123, 2024, 555):
    run(f"qnn-fit-seed{seed}", method="qnn", task=TaskSpec.fit("eq7"),
        attempts=10, master_seed=seed)

# Criterion-7 config: EVQKAN classify, pinned coefficients, state passing
run("evqkan-classify-seed42",
    method="evqkan", task=TaskSpec.classify(PRESET_BOUNDARY_COEFFS["evqkan"]),
    attempts=10, master_seed=42)

# Same but re-encode chaining (evidence for the chaining ambiguity)
run("evqkan-classify-seed42-reencode",
    method="evqkan", task=TaskSpec.classify(PRESET_BOUNDARY_COEFFS["evqkan"]),
    attempts=10, master_seed=42, layer_chaining="re_encode")

# EVQKAN fit at a second seed (ordering robustness)
run("evqkan-fit-seed7", method="evqkan", task=TaskSpec.fit("eq7"),
    attempts=10, master_seed=7)

# Criterion 8 arms: single-layer classify, conventional vs transposed
run("evqkan-classify-1layer-conv",
    method="evqkan", task=TaskSpec.classify(PRESET_BOUNDARY_COEFFS["evqkan"]),
    attempts=10, master_seed=42, num_layers=1)
run("evqkan-classify-1layer-transposed",
    method="evqkan", task=TaskSpec.classify(PRESET_BOUNDARY_COEFFS["evqkan"]),
    attempts=10, master_seed=42, num_layers=1, transposed=True)

# Criterion 9 arm: single-layer fit
run("evqkan-fit-1layer-seed42", method="evqkan", task=TaskSpec.fit("eq7"),
    attempts=10, master_seed=42, num_layers=1)

print("DONE")
