"""Three routes to the same transform E[1/(z - xi)], cross-checked.

For radially symmetric zero laws the transform collapses to F(|z|)/z with
F the radial CDF.  The closed forms for the uniform disk and Gaussian
laws, the tabulated-CDF route, and the plain Monte Carlo mean of 1/(z-xi)
all have to agree; this script plots them on top of each other along a ray
and prints worst-case gaps.
"""

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from critpair import (
    SeededRng,
    cst_gaussian,
    cst_monte_carlo,
    cst_radial,
    cst_uniform_disk,
    gaussian_table,
    uniform_disk_table,
)

ANGLE = 0.3


def disk_sampler(rng: SeededRng, count: int) -> np.ndarray:
    u = rng.uniforms(2 * count)
    return np.sqrt(u[0::2]) * np.exp(2j * np.pi * u[1::2])


def gauss_sampler(rng: SeededRng, count: int) -> np.ndarray:
    u = rng.uniforms(2 * count)
    return np.sqrt(-np.log(u[0::2])) * np.exp(2j * np.pi * u[1::2])


def main():
    laws = [
        ("uniform disk", cst_uniform_disk, uniform_disk_table(), disk_sampler, 2.5),
        ("gaussian", cst_gaussian, gaussian_table(), gauss_sampler, 4.0),
    ]
    fig, axes = plt.subplots(1, 2, figsize=(10.5, 4.4))
    direction = np.exp(1j * ANGLE)
    for ax, (name, closed, table, sampler, r_max) in zip(axes, laws):
        radii = np.linspace(0.05, r_max, 120)
        zs = radii * direction
        exact = np.array([closed(z) for z in zs])
        tabled = np.array([cst_radial(table, z) for z in zs])
        ax.plot(radii, np.abs(exact), label="closed form", lw=1.6)
        ax.plot(radii, np.abs(tabled), "--", label="radial table", lw=1.2)

        rng = SeededRng.for_trial(99, 0)
        mc_r = radii[::12]
        mc = [cst_monte_carlo(sampler, r * direction, rng) for r in mc_r]
        ax.errorbar(
            mc_r,
            [abs(e.estimate) for e in mc],
            yerr=[3 * e.spread for e in mc],
            fmt="o",
            ms=3.5,
            capsize=2,
            label="monte carlo (3 spreads)",
        )
        ax.set_title(f"{name}: |E 1/(z - xi)| along a ray")
        ax.set_xlabel("|z|")
        ax.legend(fontsize=8)
        print(f"{name}: max |closed - table| = {np.max(np.abs(exact - tabled)):.2e}")
        worst = max(
            abs(e.estimate - closed(r * direction)) / max(e.spread, 1e-300)
            for r, e in zip(mc_r, mc)
        )
        print(f"{name}: worst monte-carlo gap = {worst:.1f} spreads")
    fig.tight_layout()
    fig.savefig("transforms_tour.png", dpi=150)
    print("wrote transforms_tour.png")


if __name__ == "__main__":
    main()
