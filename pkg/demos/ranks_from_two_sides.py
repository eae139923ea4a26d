"""Count unimodal sequences by brute force and read the same numbers off the series.

    python3 demos/ranks_from_two_sides.py [family] [nmax]
"""

import sys

from qhecke import RankTable, enumerate_family, gf
from qhecke.enumerators import listing

family = sys.argv[1] if len(sys.argv) > 1 else "unimodal"
nmax = int(sys.argv[2]) if len(sys.argv) > 2 else 8

brute = enumerate_family(family, nmax)
series = RankTable.from_series(gf(family, nmax), nmax)
print(brute.to_text())
print("tables agree:", brute == series)

n = min(nmax, 4)
print(f"\nthe {brute.total(n)} sequences of weight {n}:")
for s in listing(family, n):
    print("  ", s)
