"""Regenerate the bundled b-file fixtures in src/hyperbell/data.

oeis.org was unreachable when the fixtures were built, so the values are
produced here by direct counting (sums over integer partitions, and a
permutation-inversion count), which shares no code with the package's
recursions or series machinery.  Layout and offsets follow the OEIS b-files.
"""

import itertools
import math
from collections import Counter
from pathlib import Path

DATA = Path(__file__).resolve().parent.parent / "src" / "hyperbell" / "data"
N = 20


def integer_partitions(n, smallest=1):
    if n == 0:
        yield ()
        return
    for first in range(smallest, n + 1):
        for rest in integer_partitions(n - first, first):
            yield (first,) + rest


def set_partitions_of_type(parts):
    n = sum(parts)
    denom = math.prod(math.factorial(p) for p in parts)
    denom *= math.prod(math.factorial(m) for m in Counter(parts).values())
    return math.factorial(n) // denom


def set_partitions(n, min_block=1):
    return sum(set_partitions_of_type(lam) for lam in integer_partitions(n, min_block))


def uniform_block_permutations(n):
    # choose a domain partition and a codomain partition of the same type,
    # then match equal-size blocks
    total = 0
    for lam in integer_partitions(n):
        k = set_partitions_of_type(lam)
        total += k * k * math.prod(math.factorial(m) for m in Counter(lam).values())
    return total


def inversion_total(n):
    if n <= 7:
        return sum(
            sum(1 for i, j in itertools.combinations(range(n), 2) if perm[i] > perm[j])
            for perm in itertools.permutations(range(n))
        )
    return math.factorial(n) * n * (n - 1) // 4


SEQUENCES = {
    "A000110": ("Bell numbers", lambda n: set_partitions(n)),
    "A023998": ("uniform block permutations of an n-set", uniform_block_permutations),
    "A001809": ("total inversions over all permutations of n letters", inversion_total),
    "A000296": ("set partitions with no singleton blocks", lambda n: set_partitions(n, 2)),
    "A006505": ("set partitions with all blocks of size > 2", lambda n: set_partitions(n, 3)),
    "A057837": ("set partitions with all blocks of size > 3", lambda n: set_partitions(n, 4)),
    "A057814": ("set partitions with all blocks of size > 4", lambda n: set_partitions(n, 5)),
}


def main():
    DATA.mkdir(parents=True, exist_ok=True)
    for seq_id, (title, fn) in SEQUENCES.items():
        lines = [f"# {seq_id}: {title}", "# offset 0; values by direct enumeration"]
        lines += [f"{n} {fn(n)}" for n in range(N + 1)]
        (DATA / f"b{seq_id[1:]}.txt").write_text("\n".join(lines) + "\n", encoding="ascii")


if __name__ == "__main__":
    main()
