"""Solve and rank the bundled scheduling instance and print the satisfaction table."""

import argparse
from importlib.resources import files

from fuzzyaso import parse_program
from fuzzyaso.grounder import ground_program
from fuzzyaso.preferences import maximal_counts, rank, sat_outcome
from fuzzyaso.solver import enumerate_answer_sets


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--engine", choices=("split", "brute"), default="split")
    ap.add_argument("--strategy", choices=("pareto", "maximal"), default="maximal")
    args = ap.parse_args()

    source = (files("fuzzyaso") / "corpus" / "scheduling.faso").read_text()
    ground = ground_program(parse_program(source))
    solved = enumerate_answer_sets(ground, args.engine)
    sets = solved.answer_sets
    print(f"{len(sets)} answer sets ({args.engine}, {solved.stats.wall_time:.3f}s)")
    for i, a in enumerate(sets, start=1):
        print(f"  A{i}: {a}")

    print("\nsatisfaction outcomes")
    print("      " + " ".join(f"{r.id:>5}" for r in ground.pref))
    for i, a in enumerate(sets, start=1):
        print(f"  A{i}  " + " ".join(f"{str(sat_outcome(a, r)):>5}" for r in ground.pref))

    report = rank(sets, ground.pref, args.strategy)
    print(f"\n{args.strategy} tiers (most preferred first)")
    for t, tier in enumerate(report.tiers, start=1):
        print(f"  #{t}: " + ", ".join(f"A{i + 1}" for i in tier))
    if args.strategy == "maximal":
        print("\nMaximal counts between consecutive tiers")
        flat = [i for tier in report.tiers for i in tier]
        for x, y in zip(flat, flat[1:]):
            a, b = maximal_counts(sets[x], sets[y], ground.pref)
            print(f"  A{x + 1} vs A{y + 1}: {a} vs {b}")


if __name__ == "__main__":
    main()
