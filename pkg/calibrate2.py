"""Follow-up probes: seed robustness and budget sensitivity (not shipped)."""
import json
import time

from evqkan.harness import ExperimentConfig, run_experiment, summarize
from evqkan.optimizer import OptimizerConfig
from evqkan.tasks import PRESET_BOUNDARY_COEFFS, TaskSpec

results = {}


def run(tag, **kw):
    t0 = time.perf_counter()
    st = summarize(run_experiment(ExperimentConfig(**kw)))
    results[tag] = {
        "average": st.average, "median": st.median,
        "minimum": st.minimum, "maximum": st.maximum,
        "seconds": round(time.perf_counter() - t0, 1),
    }
    print(tag, results[tag], flush=True)
    with open("calibration2.json", "w") as fh:
        json.dump(results, fh, indent=2)


# criterion 9 robustness: 1-layer fit at the second seed
run("fit-1layer-seed7", method="evqkan", task=TaskSpec.fit("eq7"),
    attempts=10, master_seed=7, num_layers=1)

# criterion 8 robustness at a second seed
run("classify-1layer-conv-seed7",
    method="evqkan", task=TaskSpec.classify(PRESET_BOUNDARY_COEFFS["evqkan"]),
    attempts=10, master_seed=7, num_layers=1)
run("classify-1layer-transposed-seed7",
    method="evqkan", task=TaskSpec.classify(PRESET_BOUNDARY_COEFFS["evqkan"]),
    attempts=10, master_seed=7, num_layers=1, transposed=True)

# ledger evidence: barely-trained classify sits near the published numbers
run("classify-3layer-budget390",
    method="evqkan", task=TaskSpec.classify(PRESET_BOUNDARY_COEFFS["evqkan"]),
    attempts=10, master_seed=42,
    optimizer=OptimizerConfig(max_evaluations=390))

# ledger evidence: does a larger budget restore the layer-count direction?
run("fit-3layer-budget3000-3att", method="evqkan", task=TaskSpec.fit("eq7"),
    attempts=3, master_seed=42,
    optimizer=OptimizerConfig(max_evaluations=3000))
run("fit-1layer-budget3000-3att", method="evqkan", task=TaskSpec.fit("eq7"),
    attempts=3, master_seed=42, num_layers=1,
    optimizer=OptimizerConfig(max_evaluations=3000))

print("DONE")
