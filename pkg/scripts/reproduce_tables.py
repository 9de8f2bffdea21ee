"""Write every table and figure data set as CSV and JSON into an output directory."""

import argparse
import json
from pathlib import Path

from shorbench import tables
from shorbench.cli import envelope, to_csv, write_atomic


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", type=Path, default=Path("results/tables"))
    args = ap.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)
    for name, build in tables.BUILDERS.items():
        rows, decimals = build()
        write_atomic(str(args.out / f"{name}.csv"), to_csv(rows, decimals))
        write_atomic(str(args.out / f"{name}.json"), json.dumps(envelope("table", {"which": name}, rows), indent=2))
        print(f"{name}: {len(rows)} rows")
    print(to_csv(*tables.qc2()))


if __name__ == "__main__":
    main()
