"""Grid-search the God Class percentage on the planted tuning fixture."""

from pathlib import Path

from flawdetect.strategy import load_file
from flawdetect.tuning import TunableStrategy, format_assignment, load_corpus, load_grid, tune

PLANTED = Path(__file__).resolve().parent.parent / "tests" / "fixtures" / "planted"


def main():
    corpus = load_corpus(PLANTED / "corpus.json")
    (template,) = load_file(PLANTED / "god_template.sod")
    result = tune(corpus, TunableStrategy(template, load_grid(PLANTED / "grid.json")))
    print(f"template: {template}")
    for assignment, score in result.table:
        print(f"  {format_assignment(assignment):<10} F1={score:.4f}")
    print(f"best: {format_assignment(result.best)} F1={result.score}")


if __name__ == "__main__":
    main()
