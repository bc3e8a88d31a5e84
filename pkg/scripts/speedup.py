"""Time full-resolution vs down-sampled matting on synthetic hazy images.

Image sizes follow the three test images of the original timing table
(600x455, 441x450, 835x557). Absolute times depend on the machine; only the
ratios are comparable.

    python scripts/speedup.py --repeats 3 --csv bench.csv
"""

import argparse
from pathlib import Path

from defog.airlight import Airlight
from defog.fogsim import FogScene, synthesize
from defog.metrics import bench_pipeline, reports_to_csv, reports_to_table
from defog.synthetic import depth_ramp, patch_scene
from defog.transmittance import DehazeParams

SIZES = {"tiananmen": (600, 455), "house": (441, 450), "swan": (835, 557)}


def hazy_image(w, h, seed):
    scene = patch_scene(h, w, seed=seed)
    return synthesize(FogScene(scene, depth_ramp(h, w, 0.5, 2.5), Airlight(0.9, 0.88, 0.85),
                               (0.5, 0.64, 0.805)))


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeats", type=int, default=3)
    ap.add_argument("--downsample", type=int, default=4)
    ap.add_argument("--only", choices=sorted(SIZES), nargs="*")
    ap.add_argument("--csv", type=Path)
    args = ap.parse_args()

    params = DehazeParams(downsample_factor=args.downsample)
    reports = []
    for seed, (name, (w, h)) in enumerate(SIZES.items()):
        if args.only and name not in args.only:
            continue
        reports.append(bench_pipeline(hazy_image(w, h, seed), params, args.repeats, name=name))
        print(reports_to_table(reports[-1:]).splitlines()[-1], flush=True)
    print()
    print(reports_to_table(reports))
    if args.csv:
        args.csv.write_text(reports_to_csv(reports))


if __name__ == "__main__":
    main()
