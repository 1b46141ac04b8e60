"""Accuracy vs imbalance ratio in 3-D, all four classifiers.

Each trial draws a fresh training set at the given minority/majority ratio
and a fresh balanced test set (50 points per class) from the same scene, so
0.5 is the constant-predictor floor. The gap between the adaptive classifier
and the fixed-bandwidth baseline opens up as the imbalance gets severe.

Uses 10 trials per point to stay quick; pass --trials 20 to match the full
protocol (that is also the `kotaro sweep` CLI default).

Run: python demos/imbalance_sweep.py [--trials N]
"""

import argparse
from pathlib import Path

from kotaro import (
    FixedBandwidthConfig,
    Flavor,
    KnnConfig,
    KotaroConfig,
    MajorityConfig,
    imbalance_sweep,
    random_scene,
    save_report,
)

OUT = Path(__file__).resolve().parent / "output"
OUT.mkdir(exist_ok=True)

parser = argparse.ArgumentParser()
parser.add_argument("--trials", type=int, default=10)
args = parser.parse_args()

ratios = [0.1, 0.3, 0.5, 1.0]
configs = [KotaroConfig(), FixedBandwidthConfig(), KnnConfig(), MajorityConfig()]
scene = random_scene(dim=3, box_side=5.0, sphere_count=3, seed=77)

print(f"3-D extreme-imbalance sweep, {args.trials} trials per point, 300 training samples")
reports = imbalance_sweep(
    scene, Flavor.EI, ratios=ratios, total=300, per_class_test=50,
    trials=args.trials, seed=77, configs=configs,
)

header = "ratio " + "".join(f"{cfg.name:>18}" for cfg in configs)
print(header)
for r in ratios:
    cells = []
    for cfg in configs:
        mean, stderr = reports[(cfg.name, r)].aggregate["accuracy"]
        cells.append(f"{mean:.3f} +/- {stderr:.3f}")
    print(f"{r:5.1f} " + "".join(f"{cell:>18}" for cell in cells))

save_report([reports[(cfg.name, r)] for r in ratios for cfg in configs], OUT / "sweep_results.csv")
print(f"\nlong-format results in {OUT / 'sweep_results.csv'}")
