"""Draw one random polynomial's zeros, critical points, and their pairing.

Left: the cloud with matching segments.  The segments are so short at this
scale that the right panel zooms each pair into its inverse-gap atom
1/(n (Z - zeta)); the atoms fill the unit disk almost uniformly.

Usage: python3 pairing_portrait.py [n] [seed]
"""

import sys

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from critpair import (
    EnsembleSpec,
    RootFormPoly,
    SeededRng,
    critical_points_all,
    pair_nearest,
    sample_iid_zero_poly,
)


def main():
    n = int(sys.argv[1]) if len(sys.argv) > 1 else 600
    seed = int(sys.argv[2]) if len(sys.argv) > 2 else 7
    spec = EnsembleSpec(kind="iid", n=n, density="uniform_disk", seed=seed)
    poly = sample_iid_zero_poly(spec, SeededRng.for_trial(seed, 0))
    report = critical_points_all(poly)
    records = pair_nearest(poly.zeros, report.points, n)

    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(11, 5.3))
    circle = np.exp(1j * np.linspace(0, 2 * np.pi, 256))

    ax1.plot(circle.real, circle.imag, color="0.75", lw=0.8)
    for rec in records:
        ax1.plot(
            [rec.zero.real, rec.zeta.real],
            [rec.zero.imag, rec.zeta.imag],
            color="0.55",
            lw=0.5,
            zorder=1,
        )
    ax1.scatter(
        poly.zeros.real, poly.zeros.imag, s=6, color="tab:blue", label="zeros"
    )
    ax1.scatter(
        report.points.real,
        report.points.imag,
        s=6,
        color="tab:red",
        marker="x",
        label="critical points",
    )
    ax1.set_title(f"n = {n}: every zero has a critical point glued to it")
    ax1.set_aspect("equal")
    ax1.legend(loc="upper right", fontsize=8)

    atoms = np.array([rec.nu_atom for rec in records])
    dists = np.array([rec.distance for rec in records])
    ax2.plot(circle.real, circle.imag, color="0.75", lw=0.8)
    ax2.scatter(atoms.real, atoms.imag, s=6, color="tab:purple")
    ax2.set_title("inverse gaps 1/(n (Z - zeta))")
    ax2.set_aspect("equal")
    ax2.set_xlim(-1.6, 1.6)
    ax2.set_ylim(-1.6, 1.6)

    fig.tight_layout()
    fig.savefig("pairing_portrait.png", dpi=150)
    print(f"median pair distance     {np.median(dists):.3e}")
    print(f"median inverse-gap radius {np.median(np.abs(atoms)):.3f}")
    print(f"atoms with modulus <= 1.15: {np.mean(np.abs(atoms) <= 1.15):.3f}")
    print("wrote pairing_portrait.png")


if __name__ == "__main__":
    main()
