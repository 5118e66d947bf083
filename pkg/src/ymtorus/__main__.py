"""Command line entry point: run, validate, presets, replot."""

import argparse
import json
import sys

from . import driver


def main(argv=None):
    ap = argparse.ArgumentParser(prog="ymtorus")
    sub = ap.add_subparsers(dest="verb", required=True)

    p_run = sub.add_parser("run", help="execute a run config (INI file or preset name)")
    p_run.add_argument("config")
    p_run.add_argument("--out", default=None, help="override output directory")
    p_run.add_argument("--verbose", action="store_true")

    p_val = sub.add_parser("validate", help="validate a config without running")
    p_val.add_argument("config")

    sub.add_parser("presets", help="list shipped presets")

    p_rep = sub.add_parser("replot", help="regenerate SVG plots from a run directory")
    p_rep.add_argument("run_dir")

    args = ap.parse_args(argv)

    def load(name):
        if name in driver.PRESETS:
            return driver.preset_config(name)
        return driver.parse_config(name)

    try:
        if args.verb == "run":
            cfg = load(args.config)
            summary = driver.run_experiment(cfg, out_dir=args.out,
                                            quiet=not args.verbose)
            print(json.dumps({"status": "ok",
                              "output": args.out or cfg["outputs", "directory"],
                              "energy_C": summary["energy_monitor"]["fitted_C"]},
                             indent=1))
        elif args.verb == "validate":
            load(args.config)
            print(json.dumps({"status": "ok"}))
        elif args.verb == "presets":
            for name in driver.preset_names():
                print(name)
        elif args.verb == "replot":
            driver.replot(args.run_dir)
            print(json.dumps({"status": "ok"}))
    except Exception as err:  # machine-readable failure
        print(json.dumps({"status": "error", "kind": type(err).__name__,
                          "message": str(err)}), file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
