"""Zero clouds from the three ensembles, side by side.

Independent uniform zeros sit in the disk by construction.  Weyl
characteristic coefficients and Ginibre eigenvalues only reach the disk in
the limit; the printed fractions track how far along they are at this n.
"""

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from critpair import (
    EnsembleSpec,
    SeededRng,
    sample_ginibre_zeros,
    sample_iid_zero_poly,
    weyl_zeros,
)

N = 400
SEED = 13


def main():
    rng = lambda t: SeededRng.for_trial(SEED, t)
    iid = sample_iid_zero_poly(
        EnsembleSpec(kind="iid", n=N, density="uniform_disk", seed=SEED), rng(0)
    ).zeros
    weyl = weyl_zeros(
        EnsembleSpec(kind="weyl", n=N, density="uniform_disk", seed=SEED),
        rng(1),
        max_degree=N,
    ).zeros
    gin = sample_ginibre_zeros(
        EnsembleSpec(kind="ginibre", n=N, density="uniform_disk", seed=SEED), rng(2)
    ).zeros

    clouds = [
        ("iid uniform zeros", iid),
        ("Weyl polynomial zeros", weyl),
        ("Ginibre eigenvalues", gin),
    ]
    fig, axes = plt.subplots(1, 3, figsize=(12.6, 4.4))
    t = np.linspace(0, 2 * np.pi, 256)
    for ax, (name, zs) in zip(axes, clouds):
        ax.plot(np.cos(t), np.sin(t), color="0.7", lw=0.9)
        ax.scatter(zs.real, zs.imag, s=5)
        ax.set_title(f"{name} (m = {zs.size})")
        ax.set_aspect("equal")
        ax.set_xlim(-1.45, 1.45)
        ax.set_ylim(-1.45, 1.45)
        frac = np.mean(np.abs(zs) <= 1.05)
        print(f"{name}: {frac:.3f} of points within radius 1.05")
    fig.tight_layout()
    fig.savefig("ensemble_gallery.png", dpi=150)
    print("wrote ensemble_gallery.png")


if __name__ == "__main__":
    main()
