"""Run every instance in instances/ and print the text summary of each.

    python scripts/run_desk_examples.py [--out reports/]

With ``--out`` the JSON report and DOT graph of each instance are written there.
"""

import argparse
from pathlib import Path

from pathinv.instance import load_instance
from pathinv.report import build_report, dumps_report, run, text_summary, to_dot

ROOT = Path(__file__).resolve().parent.parent


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--instances", type=Path, default=ROOT / "instances")
    p.add_argument("--out", type=Path, default=None)
    args = p.parse_args()
    if args.out:
        args.out.mkdir(parents=True, exist_ok=True)
    for path in sorted(args.instances.glob("*.json")):
        comp = run(load_instance(path))
        print(f"== {path.stem}")
        print(text_summary(comp))
        if args.out:
            (args.out / f"{path.stem}.report.json").write_text(dumps_report(build_report(comp)))
            (args.out / f"{path.stem}.dot").write_text(to_dot(comp.result.quiver))


if __name__ == "__main__":
    main()
