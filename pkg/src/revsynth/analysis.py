"""Universal sub-libraries and random pair checks for G gates."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from decimal import ROUND_DOWN, Decimal
from fractions import Fraction
from itertools import combinations

from . import groups
from ._parallel import pmap
from .errors import LibraryTooLarge, UnsupportedWidth
from .gates import Gate, GateLibrary

MAX_SUBLIBRARY_GATES = 20


def percent(num: int, den: int, places: int = 2) -> str:
    """Percentage truncated to ``places`` decimals, e.g. ``percent(51, 64) == "79.68"``."""
    if den == 0:
        return "0." + "0" * places
    q = Decimal(100 * num) / Decimal(den)
    return str(q.quantize(Decimal(1).scaleb(-places), rounding=ROUND_DOWN))


@dataclass(frozen=True)
class SubLibraryReport:
    library: str
    library_size: int
    universal_count: int
    min_size: int | None
    universal_at_min: int
    # universal subsets per cardinality, index = subset size
    universal_by_size: tuple[int, ...] = ()

    @property
    def total_subsets(self) -> int:
        return 2 ** self.library_size

    @property
    def subsets_at_min(self) -> int:
        return math.comb(self.library_size, self.min_size) if self.min_size is not None else 0

    @property
    def utilization(self) -> Fraction:
        return Fraction(self.universal_count, self.total_subsets)

    @property
    def min_utilization(self) -> Fraction:
        return Fraction(self.universal_at_min, self.subsets_at_min) if self.subsets_at_min else Fraction(0)

    def as_dict(self) -> dict:
        return {
            "library": self.library,
            "library_size": self.library_size,
            "subsets": self.total_subsets,
            "universal_subsets": self.universal_count,
            "utilization_percent": percent(self.universal_count, self.total_subsets),
            "min_universal_size": self.min_size,
            "subsets_at_min_size": self.subsets_at_min,
            "universal_at_min_size": self.universal_at_min,
            "min_utilization_percent": percent(self.universal_at_min, self.subsets_at_min),
        }


# worker state for the process pool
_GENS: list[tuple[int, ...]] = []
_DEGREE = 0


def _init_worker(gens, degree):
    global _GENS, _DEGREE
    _GENS, _DEGREE = gens, degree


def _verdict(mask: int) -> bool:
    sub = [g for i, g in enumerate(_GENS) if mask >> i & 1]
    return groups.is_symmetric(sub, _DEGREE)


def _scan(lib: GateLibrary, workers: int, stop_at_minimal: bool) -> tuple[bytearray, list[list[int]]]:
    """Universality verdict for every subset mask, smallest subsets first.

    A subset is universal as soon as one of its maximal proper subsets is,
    so only subsets with no universal predecessor reach the group engine.
    Returns the verdict table and the universal masks per cardinality, each
    list in lexicographic order of gate positions.
    """
    k = len(lib)
    if k > MAX_SUBLIBRARY_GATES:
        raise LibraryTooLarge(f"{lib.name} has {k} gates; at most {MAX_SUBLIBRARY_GATES} are supported")
    gens = [p.array for p in lib.perms]
    universal = bytearray(1 << k)
    by_size: list[list[int]] = [[] for _ in range(k + 1)]
    for r in range(1, k + 1):
        layer, pending = [], []
        for combo in combinations(range(k), r):
            mask = 0
            for i in combo:
                mask |= 1 << i
            layer.append(mask)
            if not any(universal[mask & ~(1 << i)] for i in combo):
                pending.append(mask)
            else:
                universal[mask] = 1
        verdicts = pmap(_verdict, pending, workers, _init_worker, (gens, lib.degree))
        for mask, ok in zip(pending, verdicts):
            if ok:
                universal[mask] = 1
        by_size[r] = [m for m in layer if universal[m]]
        if stop_at_minimal and by_size[r]:
            break
    return universal, by_size


def sublibrary_census(lib: GateLibrary, workers: int = 1) -> SubLibraryReport:
    """Count universal subsets of ``lib`` over all 2^k subsets."""
    _, by_size = _scan(lib, workers, stop_at_minimal=False)
    sizes = [len(b) for b in by_size]
    min_size = next((r for r, c in enumerate(sizes) if c), None)
    return SubLibraryReport(
        library=lib.name,
        library_size=len(lib),
        universal_count=sum(sizes),
        min_size=min_size,
        universal_at_min=sizes[min_size] if min_size is not None else 0,
        universal_by_size=tuple(sizes),
    )


def minimal_universal_sublibraries(lib: GateLibrary, workers: int = 1) -> list[GateLibrary]:
    """All universal subsets of minimum size, in lexicographic order of gate positions."""
    _, by_size = _scan(lib, workers, stop_at_minimal=True)
    masks = next((b for b in by_size if b), [])
    return [lib.subset([i for i in range(len(lib)) if m >> i & 1]) for m in masks]


@dataclass(frozen=True)
class PairResult:
    first: Gate
    second: Gate
    universal: bool

    def __str__(self) -> str:
        return f"{self.first} {self.second} {'UNIVERSAL' if self.universal else 'NOT UNIVERSAL'}"


def pair_is_universal(a: Gate, b: Gate) -> bool:
    gates = [a] if a == b else [a, b]
    return groups.is_universal(GateLibrary.from_gates(gates))


def _pair_job(args: tuple[Gate, Gate]) -> bool:
    return pair_is_universal(*args)


def random_pairs(n: int, trials: int, seed: int = 0) -> list[tuple[Gate, Gate]]:
    """Pairs of full-width G gates with uniform chain orders.

    Drawn with :class:`random.Random` (Mersenne Twister) seeded by ``seed``.
    """
    rng = random.Random(seed)
    wires = list(range(1, n + 1))
    out = []
    for _ in range(trials):
        a = Gate("G", tuple(rng.sample(wires, n)), n)
        b = Gate("G", tuple(rng.sample(wires, n)), n)
        out.append((a, b))
    return out


def random_pair_check(n: int, trials: int, seed: int = 0, workers: int = 1) -> list[PairResult]:
    if not 2 <= n <= 10:
        raise UnsupportedWidth(f"random pair checks support 2 <= n <= 10, got {n}")
    if trials < 1:
        raise ValueError("trials must be at least 1")
    pairs = random_pairs(n, trials, seed)
    verdicts = pmap(_pair_job, pairs, workers)
    return [PairResult(a, b, v) for (a, b), v in zip(pairs, verdicts)]
