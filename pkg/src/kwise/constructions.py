"""Small k-wise independent sign laws with exact rational masses."""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import comb

from .core import MAX_DIMENSION, MAX_ENUMERATION, SampleSpace, uniform_cube


def partition_space(n: int) -> SampleSpace:
    """Pairwise (in fact 3-wise) independent, exchangeable law on {-1,+1}^n
    for even n: mass 1/(2n) on each unanimous vector and the rest spread
    uniformly over the vectors with exactly n/2 plus signs."""
    if n < 2 or n % 2:
        raise ValueError(f"partition law needs an even dimension >= 2, got {n}")
    if n > MAX_ENUMERATION:
        raise ValueError(f"dimension capped at {MAX_ENUMERATION}, got {n}")
    unanimous = Fraction(1, 2 * n)
    balanced = Fraction(n - 1, n) / comb(n, n // 2)
    atoms = [(0, unanimous), ((1 << n) - 1, unanimous)]
    for pos in combinations(range(n), n // 2):
        bits = 0
        for i in pos:
            bits |= 1 << i
        atoms.append((bits, balanced))
    return SampleSpace(n, atoms)


def xor_sign(n: int, seed_sign: int, seed_mask: int, j: int) -> int:
    """Coordinate j of the parity construction: the global seed sign times the
    product of the base seeds listed in the bit mask j."""
    if not 0 <= j < (1 << n):
        raise ValueError(f"coordinate {j} out of range for 2^{n} coordinates")
    return -seed_sign if (seed_mask & j).bit_count() & 1 else seed_sign


def xor_space(n: int) -> SampleSpace:
    """Pairwise independent law on {-1,+1}^(2^n) built from n+1 fair seeds:
    coordinate j carries the product of the seeds in bit mask j, all times a
    shared global sign.  2^(n+1) equiprobable atoms; not exchangeable for
    n >= 3."""
    if n < 1:
        raise ValueError(f"need at least one base seed, got n={n}")
    dim = 1 << n
    if dim > MAX_DIMENSION:
        raise ValueError(f"2^{n} coordinates exceed the dimension cap {MAX_DIMENSION}")
    share = Fraction(1, 1 << (n + 1))
    atoms = []
    for seeds in range(1 << (n + 1)):
        sign, mask = 1 - 2 * (seeds & 1), seeds >> 1
        bits = 0
        for j in range(dim):
            if xor_sign(n, sign, mask, j) == 1:
                bits |= 1 << j
        atoms.append((bits, share))
    return SampleSpace(dim, atoms)


def xor_seed_coefficient(n: int, coords) -> Fraction:
    """Average of the product of the listed coordinates over all 2^(n+1) seed
    patterns of the parity construction, computed by full enumeration."""
    coords = list(coords)
    if len(set(coords)) != len(coords):
        raise ValueError("coordinate list has repeats")
    dim = 1 << n
    if any(not 0 <= j < dim for j in coords):
        raise ValueError(f"coordinate out of range for 2^{n} coordinates")
    total = 0
    for seeds in range(1 << (n + 1)):
        sign, mask = 1 - 2 * (seeds & 1), seeds >> 1
        prod = 1
        for j in coords:
            prod *= xor_sign(n, sign, mask, j)
        total += prod
    return Fraction(total, 1 << (n + 1))


def xor_pairwise_table(n: int) -> dict[tuple[int, int], Fraction]:
    """All pairwise coordinate correlations of the parity construction over
    the full seed space.  Per-coordinate sign rows are tabulated once across
    every seed mask, then pair sums come from exact bit counts."""
    dim = 1 << n
    masks = 1 << n
    rows = []
    for j in range(dim):
        row = 0
        for mask in range(masks):
            if (mask & j).bit_count() & 1:
                row |= 1 << mask
        rows.append(row)
    # the global sign squares away in every pair, covering both of its values
    out: dict[tuple[int, int], Fraction] = {}
    for j in range(dim):
        for l in range(j + 1, dim):
            disagree = (rows[j] ^ rows[l]).bit_count()
            out[(j, l)] = Fraction(2 * (masks - 2 * disagree), 1 << (n + 1))
    return out


def independent_space(n: int) -> SampleSpace:
    """The fully independent uniform law, as an explicit sample space."""
    return uniform_cube(n)
