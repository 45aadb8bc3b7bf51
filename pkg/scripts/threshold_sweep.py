"""How the God Class suspect set grows as the relative threshold loosens.

Sweeps p in TopValues(p%) / BottomValues(p%) from 5% to 100% and prints the
suspects at each step. Useful for seeing how brittle a percentage is on a
small system.
"""

import argparse
from pathlib import Path

from flawdetect.frontend import load_sources
from flawdetect.strategy import evaluate, parse_strategy

DEFAULT = Path(__file__).resolve().parent.parent / "tests" / "fixtures" / "planted" / "corpus.moo"
TEMPLATE = "God := (WMC, TopValues({p}%)) and (ATFD, HigherThan(1)) and (TCC, BottomValues({p}%));"


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("sources", nargs="*", default=[DEFAULT])
    ap.add_argument("--step", type=int, default=5)
    args = ap.parse_args()
    model = load_sources(args.sources)
    tables = {}
    for p in range(args.step, 101, args.step):
        report = evaluate(model, parse_strategy(TEMPLATE.format(p=p)), tables)
        names = ", ".join(s.split(":", 1)[1] for s in report.sorted_suspects()) or "-"
        print(f"{p:>3}%  {len(report.suspects):>2}  {names}")


if __name__ == "__main__":
    main()
