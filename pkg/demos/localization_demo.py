"""Localization of the critical point paired with one planted zero.

Plants u0 = 1/2 among n uniform zeros, solves for the nearby critical
point, and standardizes the deviation.  As n grows the cloud of
standardized deviations settles onto a rotation-invariant Gaussian, and
the miss rate of the confidence disk of radius R follows its tail.
"""

import math

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from critpair import build_config, run_pairing_experiment

NS = (500, 2000, 5000)
TRIALS = 300
R_GRID = [0.5, 1.0, 1.5]


def main():
    fig, axes = plt.subplots(1, len(NS), figsize=(4.2 * len(NS), 4.4))
    for ax, n in zip(axes, NS):
        cfg = build_config(
            None,
            {
                "experiment": "pair",
                "n": n,
                "trials": TRIALS,
                "master_seed": 2718,
                "threads": 4,
                "R_grid": R_GRID,
                "output_dir": f"localize-out/n{n}",
            },
        )
        res = run_pairing_experiment(cfg)
        ok = np.isfinite(res["stats"])
        cloud = res["stats"][ok]
        ax.scatter(cloud.real, cloud.imag, s=7, alpha=0.6)
        for R in R_GRID:
            t = np.linspace(0, 2 * np.pi, 128)
            ax.plot(R * np.cos(t), R * np.sin(t), color="0.4", lw=0.7)
        ax.set_title(f"n = {n}")
        ax.set_aspect("equal")
        ax.set_xlim(-3, 3)
        ax.set_ylim(-3, 3)

        s = res["summary_map"]
        print(f"n = {n}")
        print(f"  unique critical point in disk: {s['uniqueness_freq']:.3f}")
        for i, R in enumerate(R_GRID):
            print(
                f"  miss rate R={R}: {s[f'miss_rate_R{i}']:.3f}"
                f"  (limit e^-R^2 = {math.exp(-R * R):.3f})"
            )
    fig.suptitle("standardized critical-point deviations and confidence disks")
    fig.tight_layout()
    fig.savefig("localization.png", dpi=150)
    print("wrote localization.png and localize-out/")


if __name__ == "__main__":
    main()
