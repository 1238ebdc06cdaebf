#!/usr/bin/env python3
"""Write the golden tables in data/golden from their closed-form descriptions.

These are deliberately independent of the C++ presentations: each table is a
case split on the degree, written down directly.
"""
import json
import pathlib
import sys

LO, HI = -16, 16


def ls(n):
    return {0: "Z", 1: "Z/2"}.get(n % 4, "0")


def lq(n):
    return {0: "Z", 2: "Z/2"}.get(n % 4, "0")


def ln(n):
    return {0: "Z/8", 1: "Z/2", 3: "Z/2"}.get(n % 4, "0")


def lgs(n):
    if n % 4 == 0:
        return "Z"
    if n % 4 == 1 and n >= 0:
        return "Z/2"
    if n % 4 == 2 and n <= -4:
        return "Z/2"
    return "0"


def lr(n):
    return "Z" if n % 4 == 0 else "0"


def lc(n):
    return "Z/2" if n % 4 == 0 else "0"


def lcc(n):
    return "Z" if n % 2 == 0 else "0"


def dr(n):
    return "Z/2" if n % 4 == 1 else "0"


def script_l(n):
    return "Z" if n % 4 == 0 else "0"


TABLES = {
    "Lq": (lq, 4),
    "Ls": (ls, 4),
    "Ln": (ln, 4),
    "Lgs": (lgs, None),
    "LR": (lr, 4),
    "LC": (lc, 4),
    "LCc": (lcc, 2),
    "dR": (dr, 4),
    "scriptL": (script_l, None),
}


def main(out_dir):
    out = pathlib.Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    for name, (fn, period) in TABLES.items():
        doc = {
            "name": name,
            "window": [LO, HI],
            "period": period,
            "groups": {str(n): fn(n) for n in range(LO, HI + 1)},
        }
        (out / f"{name}.json").write_text(json.dumps(doc, indent=1) + "\n")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else pathlib.Path(__file__).resolve().parent.parent / "data" / "golden")
