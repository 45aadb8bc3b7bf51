"""Print the class metric table of the planted corpus and run every builtin strategy on it."""

import argparse
from pathlib import Path

from flawdetect.catalog import detect_all
from flawdetect.cli import render_metrics, render_text
from flawdetect.frontend import load_sources

DEFAULT = Path(__file__).resolve().parent.parent / "tests" / "fixtures" / "planted" / "corpus.moo"


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("sources", nargs="*", default=[DEFAULT])
    args = ap.parse_args()
    model = load_sources(args.sources)
    print(render_metrics(model, "text"))
    print(render_text([(r, []) for r in detect_all(model)]), end="")


if __name__ == "__main__":
    main()
