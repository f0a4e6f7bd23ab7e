"""Tabulate factor and prime verdicts over every connected graph on up to six vertices."""

from collections import Counter

from graphfactor.census import run_census

if __name__ == "__main__":
    for n in range(1, 7):
        counts = Counter()
        for row in run_census(n):
            counts[row["factor"]] += 1
            counts[row["prime"]] += 1
        summary = ", ".join(f"{k}={v}" for k, v in sorted(counts.items()))
        print(f"n={n}: {summary}")
