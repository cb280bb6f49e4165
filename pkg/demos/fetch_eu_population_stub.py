"""Stub: assemble the historical EU population files for the case studies.

The repository does not ship the historical population figures (they are
user-sourced).  This stub documents the expected schema and writes a
template; fill in the numbers from your preferred source, e.g. the
Eurostat online tables for the 2006/2011 memberships or standard
statistical yearbooks for the earlier councils.

Schema (CSV, header exactly as below, one row per member state):

    name,population
    Germany,<positive integer>
    ...

Place the completed files in a directory as eu<year>.csv with year in
{1958, 1973, 1981, 1986, 1995, 2006, 2011}, then:

  * point the acceptance suite at it:   INVBZF_EU_DATA=<dir> pytest tests/test_acceptance.py
  * or reproduce the case-study table:  invbzf reproduce --table 2 --population-dir <dir>
"""

import sys
from pathlib import Path

MEMBERS_1958 = ["Germany", "France", "Italy", "Netherlands", "Belgium", "Luxembourg"]


def write_template(directory: str) -> Path:
    path = Path(directory) / "eu1958.csv"
    lines = ["name,population"] + [f"{m}," for m in MEMBERS_1958]
    path.write_text("\n".join(lines) + "\n")
    return path


if __name__ == "__main__":
    target = sys.argv[1] if len(sys.argv) > 1 else "."
    out = write_template(target)
    print(f"template written to {out}; fill in the population column "
          "(any consistent unit: persons or thousands)")
