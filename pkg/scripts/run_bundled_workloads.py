"""Run the bundled benchmark workloads and collect CSV/SVG artifacts.

Each YAML in configs/ is one workload. The tensor and 8192-dataset
workloads move gigabytes per trial; start with --only 2048-vector
when exploring on a laptop.
"""

import argparse
import os
import sys
from pathlib import Path

from formatbench.cli import main as formatbench_main

CONFIG_DIR = Path(__file__).resolve().parent.parent / "configs"


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument(
        "--output-dir", default="results", help="directory for CSV/SVG artifacts"
    )
    parser.add_argument(
        "--trials", type=int, default=None, help="override trial count for every workload"
    )
    parser.add_argument(
        "--only",
        action="append",
        default=None,
        help="config stem to run (repeatable), e.g. --only 2048-vector",
    )
    args = parser.parse_args()

    configs = sorted(CONFIG_DIR.glob("*.yaml"))
    if args.only:
        wanted = set(args.only)
        configs = [path for path in configs if path.stem in wanted]
        missing = wanted - {path.stem for path in configs}
        if missing:
            parser.error(f"unknown config stem(s): {', '.join(sorted(missing))}")
    if not configs:
        parser.error(f"no configs found under {CONFIG_DIR}")

    os.environ["FORMATBENCH_OUTPUT_DIR"] = args.output_dir
    worst = 0
    for path in configs:
        print(f"== {path.stem} ==", flush=True)
        argv = ["run", "--config", str(path)]
        if args.trials is not None:
            argv += ["--trials", str(args.trials)]
        code = formatbench_main(argv)
        print(f"{path.stem}: exit {code}", flush=True)
        worst = max(worst, code)
    return worst


if __name__ == "__main__":
    sys.exit(main())
