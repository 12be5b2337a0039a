"""Differential run over random programs: engines, translation and Pareto vs a classical oracle."""

import argparse
import random
import sys
import time
from pathlib import Path

from fuzzyaso.preferences import pareto_compare
from fuzzyaso.randomgen import CLASSICAL, RandomProgramConfig, random_program
from fuzzyaso.solver import enumerate_answer_sets
from fuzzyaso.translator import verify_translation

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "tests"))
from oracles import classical_answer_sets, set_pareto  # noqa: E402

NAMES = {"first_strict": "first", "second_strict": "second", "equal": "equal", "incomparable": "incomparable"}


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("-n", type=int, default=500, help="programs per check")
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = random.Random(args.seed)
    wide = RandomProgramConfig(classical_negation=True, zero_annotations=True, max_pref_rules=3)

    t0 = time.perf_counter()
    engines = translation = 0
    for _ in range(args.n):
        p = random_program(rng, wide)
        engines += enumerate_answer_sets(p.gen, "split").answer_sets == enumerate_answer_sets(p.gen, "brute").answer_sets
        translation += verify_translation(p).all_matched
    print(f"engine agreement    {engines}/{args.n}")
    print(f"translation matched {translation}/{args.n}")

    supports = pareto = pairs = 0
    for _ in range(args.n):
        p = random_program(rng, CLASSICAL)
        ours = enumerate_answer_sets(p.gen).answer_sets
        supports += {frozenset(map(str, a)) for a in ours} == set(classical_answer_sets(p.gen))
        for a in ours:
            for b in ours:
                pairs += 1
                pareto += NAMES[pareto_compare(a, b, p.pref).value] == set_pareto(set(map(str, a)), set(map(str, b)), p.pref)
    print(f"classical supports  {supports}/{args.n}")
    print(f"classical Pareto    {pareto}/{pairs}")
    print(f"elapsed {time.perf_counter() - t0:.1f}s")


if __name__ == "__main__":
    main()
