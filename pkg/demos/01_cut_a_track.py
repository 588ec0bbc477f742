"""Cut one simulated GPS track with a fixed-radius privacy region.

The walk starts at home. Everything before the first exit from the
region and after the last entrance is dropped, so the published track
reveals only where the walk crossed the boundary, not where it began.
"""

from pathlib import Path

from privregion.core import Point, make_rng
from privregion.strategies import FixedRadius, sample_region
from privregion.trajectory import (
    cut_privacy_region,
    simulate_brownian,
    squared_perturbation,
    write_track,
)

OUT = Path(__file__).parent / "out"
OUT.mkdir(exist_ok=True)

home = Point(3.2, -1.7)
rng = make_rng(42)

track = simulate_brownian(home, sigma2=1.0, dt=0.01, n_steps=4000, rng=rng)
print(f"original: {len(track.times)} samples, "
      f"start ({track.start.x:.2f}, {track.start.y:.2f}), "
      f"end ({track.end.x:.2f}, {track.end.y:.2f})")

region = sample_region(home, FixedRadius(2.0), rng)
print(f"privacy region: center ({region.center.x:.2f}, {region.center.y:.2f}), "
      f"radius {region.radius}")

result = cut_privacy_region(track, region)
pub = result.published
if pub is None:
    print("walk never left the region, nothing is published, SP = inf")
else:
    print(f"published: {len(pub.times)} samples, kept window "
          f"[{result.t1:.2f}, {result.t2:.2f}] of [0.00, {track.times[-1]:.2f}]")
    sp = squared_perturbation(pub, track)
    print(f"squared perturbation {sp:.3f} (also reported as {result.sp:.3f})")
    assert sp == result.sp
    path = OUT / "published_track.csv"
    write_track(pub, path)
    print(f"wrote {path}")

# a short walk that stays inside suppresses the whole track
lazy = simulate_brownian(home, sigma2=0.01, dt=0.01, n_steps=200, rng=rng)
res2 = cut_privacy_region(lazy, region)
print(f"short timid walk: published={res2.published is not None}, sp={res2.sp}")
