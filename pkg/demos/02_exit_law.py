"""Where does a Brownian walk leave a disk?

The exit point distribution has a closed form, and the exact sampler
draws from it directly. This script checks the two moment identities
against Monte Carlo, compares the exact sampler with brute-force path
simulation, and prints a text histogram of exit angles so you can see
the law lean toward the near side of the boundary.
"""

import math

import numpy as np

from privregion.core import Disk, Point, make_rng
from privregion.harmonic import expected_sp_given_center, sample_exit_offsets
from privregion.trajectory import default_exit_dt, simulate_exit_offsets

rng = make_rng(7)
region = Disk(Point(0.0, 0.0), 1.0)
theta = Point(0.6, 0.0)  # start well off center so the lean is visible

n = 40_000
offs = sample_exit_offsets(np.tile([theta.x, theta.y], (n, 1)), np.ones(n), n, rng)

mean = offs.mean(axis=0)
print(f"E[exit] = ({mean[0]:.4f}, {mean[1]:.4f}), start = ({theta.x}, {theta.y})")
sq = ((offs - [theta.x, theta.y]) ** 2).sum(axis=1)
print(f"E||exit - start||^2 = {sq.mean():.4f}, "
      f"identity says R^2 - |start|^2 = {1 - theta.x**2:.4f}")
print(f"(closed form helper: {expected_sp_given_center(theta, region):.4f})")

ang = np.arctan2(offs[:, 1], offs[:, 0])
counts, edges = np.histogram(ang, bins=24, range=(-math.pi, math.pi))
peak = counts.max()
print("\nexit angle histogram (0 rad faces the start point):")
for c, lo in zip(counts, edges[:-1]):
    bar = "#" * round(40 * c / peak)
    print(f"  {lo:+.2f} {bar}")

# same law from stepping actual paths, just much slower
m = 1000
start = np.tile([theta.x, theta.y], (m, 1))
dt = default_exit_dt(1.0, 1.0)
sim = simulate_exit_offsets(start, np.ones(m), 1.0, dt, 10**6, rng)
sim_sq = ((sim - [theta.x, theta.y]) ** 2).sum(axis=1)
print(f"\nEuler paths at dt={dt:g}: E||exit - start||^2 = {sim_sq.mean():.4f} "
      f"({m} paths)")
