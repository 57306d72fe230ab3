"""``rmlab`` command line.

Exit codes: 0 clean, 1 violation found, 2 usage or validation error,
3 size guard exceeded.
"""

import argparse
import csv
import io
import json
import sys

from .errors import Disagreement, InternalInvariantViolated, RmlabError, SizeGuardExceeded
from .experiments import COMMANDS, ExperimentConfig, ValidationError, run

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE, EXIT_GUARD = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser():
    ap = _Parser(prog="rmlab", description="Seeded rank-metric code experiments.")
    sub = ap.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sp = sub.add_parser(name)
        sp.add_argument("--p", type=int, default=2)
        sp.add_argument("--e", type=int, default=1)
        sp.add_argument("--m", type=int, default=3)
        sp.add_argument("--n", type=int, default=3)
        sp.add_argument("--k", type=int, default=2)
        sp.add_argument("--ell", type=int, default=1)
        sp.add_argument("--trials", type=int, default=1)
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--mode", choices=["exhaustive", "sampled", "fast"], default="exhaustive")
        sp.add_argument("--out", metavar="FILE")
        sp.add_argument("--format", choices=["json", "csv"], default="json")
        sp.add_argument("--workers", type=int, default=1)
        sp.add_argument("--code", metavar="FILE", help="code JSON file")
        if name == "encode":
            sp.add_argument("--message", type=json.loads, help="JSON list of field elements")
    return ap


def _cell(v):
    if v is None or isinstance(v, (bool, int, float, str)):
        return v
    return json.dumps(v, sort_keys=True, separators=(",", ":"))


def to_csv(report):
    rows = report["trials"]
    cols = []
    for r in rows:
        for key in r:
            if key not in cols:
                cols.append(key)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(cols)
    for r in rows:
        w.writerow([_cell(r.get(c)) for c in cols])
    return buf.getvalue()


def render(report, fmt):
    if fmt == "csv":
        return to_csv(report)
    return json.dumps(report, indent=2, sort_keys=True) + "\n"


def _emit(text, path):
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None):
    args = build_parser().parse_args(argv)
    cfg = ExperimentConfig(**{k: v for k, v in vars(args).items() if v is not None or k in ("out", "code")})
    try:
        report = run(cfg)
    except SizeGuardExceeded as exc:
        print(f"rmlab: guard exceeded: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except (Disagreement, InternalInvariantViolated) as exc:
        print(f"rmlab: violation: {exc}", file=sys.stderr)
        return EXIT_VIOLATION
    except (ValidationError, RmlabError, ValueError, OSError) as exc:
        print(f"rmlab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    _emit(render(report, cfg.format), cfg.out)
    return EXIT_VIOLATION if report.get("violations") else EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
