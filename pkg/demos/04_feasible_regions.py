"""Mapping the allowed variance pairs, with an ASCII look at the grids.

For unit qubit observables at axis angle theta_ab the attainable
(Var A, Var B) pairs over pure states fill the region

    dA dB >= | sqrt(1-dA^2) sqrt(1-dB^2) - cos(theta_ab) |

whose boundary is traced by coplanar states.  A third axis observable
turns the pair bound into an exact surface: Var A + Var B +
Var C sin^2(theta_ab) + 2 cos(theta_ab) sqrt(1-Var A) sqrt(1-Var B) = 2,
and projecting that surface back down reproduces the pair region.
"""

import math

import numpy as np

from blochvar import SampleConfig, basis_for, observable_from_bloch, scan_pair, scan_triple

print(__doc__)
basis = basis_for(2)


def ascii_region(occupancy, step=4):
    # block-reduce so even one-cell-wide features stay visible
    rows = []
    for j in range(occupancy.shape[1] - step, -1, -step):
        rows.append(
            "".join(
                "#" if occupancy[i : i + step, j : j + step].any() else "."
                for i in range(0, occupancy.shape[0], step)
            )
        )
    return "\n".join(rows)


for theta, label in ((math.pi / 2, "pi/2"), (math.pi / 6, "pi/6"), (0.0, "0")):
    a = observable_from_bloch([1.0, 0.0, 0.0], basis)
    b = observable_from_bloch([math.cos(theta), math.sin(theta), 0.0], basis)
    cfg = SampleConfig(seed=11, dim=2, count=20000, kind="haar_pure")
    scan = scan_pair(a, b, cfg, grid=0.01)
    print(f"\ntheta_ab = {label}: occupied cells = {int(scan.occupancy.sum())}"
          f" (VarB up, VarA right, 25x25 downsample)")
    print(ascii_region(scan.occupancy))
    if abs(theta - math.pi / 6) < 1e-12:
        lo, hi, count = scan.slice_span(0, 0.25)
        print(f"slice at Var A = 1/4: Var B spans [{lo:.4f}, {hi:.4f}]^2 "
              f"-> dB in [{lo:.3f}, {hi:.3f}] ({count} samples); sqrt(3)/2 = {math.sqrt(3)/2:.4f}")

cfg = SampleConfig(seed=12, dim=2, count=20000, kind="haar_pure")
triple = scan_triple(math.pi / 2, cfg, grid=0.01)
sums = triple.samples.sum(axis=1)
print(f"\ntriple scan at theta_ab = pi/2: {triple.samples.shape[0]} pure samples,")
print(f"Var A + Var B + Var C = 2 with max residual {np.abs(sums - 2).max():.2e}")
print("corner cells (one variance < 0.01) hit:",
      [bool((triple.samples[:, k] < 0.01).any()) for k in range(3)])
