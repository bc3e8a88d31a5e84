"""Forward/inverse experiment on synthetic scenes.

Fogs random patch scenes with band-dependent attenuation, dehazes them with
the per-channel pipeline and with the single-transmittance baseline, and
reports error against ground truth and mean saturation for each.

    python scripts/roundtrip.py --scenes 5 --size 128
"""

import argparse

import numpy as np

from defog.airlight import Airlight, estimate_airlight
from defog.darkchannel import dark_channel
from defog.fogsim import FogScene, synthesize
from defog.metrics import mean_abs_error, mean_saturation, psnr
from defog.pipeline import dehaze
from defog.synthetic import depth_ramp, patch_scene
from defog.transmittance import DehazeParams


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--scenes", type=int, default=5)
    ap.add_argument("--size", type=int, default=128)
    ap.add_argument("--betas", default="0.5,0.64,0.805")
    ap.add_argument("--estimate-airlight", action="store_true",
                    help="estimate A from the hazy image instead of using the true value")
    args = ap.parse_args()
    betas = tuple(float(b) for b in args.betas.split(","))
    n = args.size

    print(f"{'scene':>5} {'mae_imp':>8} {'mae_he':>8} {'psnr_imp':>9} {'psnr_he':>8} "
          f"{'sat_gt':>7} {'sat_imp':>8} {'sat_he':>7}")
    for seed in range(args.scenes):
        rng = np.random.default_rng(seed)
        J = patch_scene(n, n, seed=seed)
        a = Airlight.gray(float(rng.uniform(0.8, 0.95)))
        near, far = sorted(rng.uniform(0.2, 3.0, size=2))
        hazy = synthesize(FogScene(J, depth_ramp(n, n, near, far), a, betas))
        airlight = estimate_airlight(hazy, dark_channel(hazy, 2)) if args.estimate_airlight else a
        imp = dehaze(hazy, DehazeParams(), airlight).image
        he = dehaze(hazy, DehazeParams.he(), airlight).image
        print(f"{seed:>5} {mean_abs_error(imp, J):>8.4f} {mean_abs_error(he, J):>8.4f} "
              f"{psnr(imp, J):>9.2f} {psnr(he, J):>8.2f} {mean_saturation(J):>7.3f} "
              f"{mean_saturation(imp):>8.3f} {mean_saturation(he):>7.3f}")


if __name__ == "__main__":
    main()
