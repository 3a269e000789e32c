"""What a gate library generates.

Two engines: :func:`closure_enumerate` walks the whole group breadth first
(only sensible for small groups), :func:`schreier_sims` builds a stabilizer
chain whose orbit sizes multiply to the exact order. :func:`is_universal`
adds cheap exact rejections and, for large degrees, a Jordan-theorem
certificate so that pairs of 1024-point cycles stay tractable.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import CapExceeded, DegreeMismatch
from .gates import GateLibrary
from .perm import Permutation, all_permutations, inv, mul, rank_rows

DEFAULT_CAP = 10**7
# above this degree is_universal certifies with Jordan's theorem first
SIMS_DEGREE_LIMIT = 32
DENSE_DEGREE_LIMIT = 8


def _generators(gens) -> tuple[list[tuple[int, ...]], int]:
    if isinstance(gens, GateLibrary):
        return [p.array for p in gens.perms], gens.degree
    perms = list(gens)
    if not perms:
        raise ValueError("need at least one generator or a GateLibrary")
    n = perms[0].degree
    if any(p.degree != n for p in perms):
        raise DegreeMismatch("generators have different degrees")
    return [p.array for p in perms], n


# ---------------------------------------------------------------------------
# closure by enumeration


_dense_cache: dict[int, tuple[np.ndarray, dict]] = {}


def dense_table(degree: int) -> np.ndarray:
    """All permutations of ``degree`` points in Lehmer-rank order (cached)."""
    if degree not in _dense_cache:
        _dense_cache[degree] = (all_permutations(degree), {})
    return _dense_cache[degree][0]


def dense_moves(degree: int, g: tuple[int, ...]) -> np.ndarray:
    """Rank of compose(p, g) for every rank of p."""
    table = dense_table(degree)
    cache = _dense_cache[degree][1]
    if g not in cache:
        ga = np.asarray(g, dtype=np.int8)
        cache[g] = rank_rows(ga[table])
    return cache[g]


def _dense_closure(gens: list[tuple[int, ...]], degree: int) -> int:
    moves = np.stack([dense_moves(degree, g) for g in gens], axis=1)
    seen = np.zeros(len(moves), dtype=bool)
    seen[0] = True
    frontier = np.array([0])
    total = 1
    while frontier.size:
        nxt = np.unique(moves[frontier].ravel())
        nxt = nxt[~seen[nxt]]
        seen[nxt] = True
        total += nxt.size
        frontier = nxt
    return total


def closure_enumerate(lib, cap: int = DEFAULT_CAP) -> int:
    """Size of the generated group by breadth-first closure from the identity.

    Raises :class:`CapExceeded` once more than ``cap`` elements are found.
    """
    gens, n = _generators(lib)
    if n <= DENSE_DEGREE_LIMIT:
        size = _dense_closure(gens, n)
        if size > cap:
            raise CapExceeded(f"closure has {size} elements, cap is {cap}")
        return size
    start = tuple(range(n))
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for p in frontier:
            for g in gens:
                q = mul(p, g)
                if q not in seen:
                    seen.add(q)
                    nxt.append(q)
                    if len(seen) > cap:
                        raise CapExceeded(f"closure exceeds cap of {cap} elements; use schreier_sims")
        frontier = nxt
    return len(seen)


# ---------------------------------------------------------------------------
# stabilizer chains


@dataclass
class Level:
    point: int
    gens: list[tuple[int, ...]] = field(default_factory=list)
    orbit: list[int] = field(default_factory=list)
    transversal: dict[int, tuple[int, ...]] = field(default_factory=dict)
    _inverse: dict[int, tuple[int, ...]] = field(default_factory=dict, repr=False)

    def rep_inverse(self, beta: int) -> tuple[int, ...]:
        u = self._inverse.get(beta)
        if u is None:
            u = self._inverse[beta] = inv(self.transversal[beta])
        return u

    def extend(self, degree: int) -> None:
        if not self.transversal:
            self.transversal[self.point] = tuple(range(degree))
            self.orbit.append(self.point)
        k = 0
        while k < len(self.orbit):
            beta = self.orbit[k]
            u = self.transversal[beta]
            for s in self.gens:
                gamma = s[beta]
                if gamma not in self.transversal:
                    self.transversal[gamma] = mul(u, s)
                    self.orbit.append(gamma)
            k += 1


@dataclass
class StabilizerChain:
    """Base, strong generators and orbit transversals of a permutation group.

    Points are 0-based here; :attr:`base_points` gives the 1-based base.
    """

    degree: int
    levels: list[Level]

    @property
    def base(self) -> list[int]:
        return [lvl.point for lvl in self.levels]

    @property
    def base_points(self) -> list[int]:
        return [lvl.point + 1 for lvl in self.levels]

    @property
    def orbit_sizes(self) -> list[int]:
        return [len(lvl.orbit) for lvl in self.levels]

    def order(self) -> int:
        return math.prod(self.orbit_sizes)

    def strip(self, g: tuple[int, ...], start: int = 0) -> tuple[tuple[int, ...], int]:
        """Sift ``g`` from level ``start``; return the residue and the level reached."""
        for j in range(start, len(self.levels)):
            lvl = self.levels[j]
            beta = g[lvl.point]
            if beta not in lvl.transversal:
                return g, j
            if beta != lvl.point:
                g = mul(g, lvl.rep_inverse(beta))
        return g, len(self.levels)


def _first_moved(g: Sequence[int]) -> int:
    return next(i for i, x in enumerate(g) if x != i)


def schreier_sims(lib, degree: int | None = None) -> StabilizerChain:
    """Deterministic Schreier-Sims.

    Base points are the smallest point moved by the generator that forces a
    new level. The result depends only on the generator order.
    """
    if degree is not None and not isinstance(lib, GateLibrary):
        perms = list(lib)
        gens, n = ([p.array for p in perms], degree) if perms else ([], degree)
    else:
        gens, n = _generators(lib)
    ident = tuple(range(n))
    uniq: list[tuple[int, ...]] = []
    for g in gens:
        if g != ident and g not in uniq:
            uniq.append(g)

    chain = StabilizerChain(n, [])
    levels = chain.levels
    for g in uniq:
        if all(g[lvl.point] == lvl.point for lvl in levels):
            levels.append(Level(_first_moved(g)))
    for i, lvl in enumerate(levels):
        base_prefix = [levels[j].point for j in range(i)]
        lvl.gens = [g for g in uniq if all(g[b] == b for b in base_prefix)]
        lvl.extend(n)

    checked: list[set[tuple[int, int]]] = [set() for _ in levels]
    i = len(levels) - 1
    while i >= 0:
        lvl = levels[i]
        new = None
        for beta in lvl.orbit:
            u = lvl.transversal[beta]
            for k, s in enumerate(lvl.gens):
                if (beta, k) in checked[i]:
                    continue
                checked[i].add((beta, k))
                us = mul(u, s)
                gamma = s[beta]
                if lvl.transversal[gamma] == us:
                    continue
                h, j = chain.strip(mul(us, lvl.rep_inverse(gamma)), i + 1)
                if j < len(levels) or h != ident:
                    new = (h, j)
                    break
            if new:
                break
        if new is None:
            i -= 1
            continue
        h, j = new
        if j == len(levels):
            levels.append(Level(_first_moved(h)))
            checked.append(set())
        for l in range(i + 1, j + 1):
            levels[l].gens.append(h)
            levels[l].extend(n)
        i = j
    return chain


def group_order(chain: StabilizerChain) -> int:
    return chain.order()


def sift(chain: StabilizerChain, p: Permutation) -> Permutation:
    """Residue of ``p`` after sifting; the identity iff ``p`` is in the group."""
    if p.degree != chain.degree:
        raise DegreeMismatch(f"permutation degree {p.degree} vs chain degree {chain.degree}")
    h, _ = chain.strip(p.array)
    return Permutation._raw(h)


def contains(chain: StabilizerChain, p: Permutation) -> bool:
    if p.degree != chain.degree:
        raise DegreeMismatch(f"permutation degree {p.degree} vs chain degree {chain.degree}")
    h, j = chain.strip(p.array)
    return j == len(chain.levels) and h == tuple(range(chain.degree))


# ---------------------------------------------------------------------------
# universality


def is_transitive(gens: Sequence[tuple[int, ...]], n: int) -> bool:
    seen = [False] * n
    seen[0] = True
    stack = [0]
    count = 1
    while stack:
        a = stack.pop()
        for g in gens:
            b = g[a]
            if not seen[b]:
                seen[b] = True
                count += 1
                stack.append(b)
    return count == n


def _is_odd(g: Sequence[int]) -> bool:
    seen = [False] * len(g)
    swaps = 0
    for s in range(len(g)):
        if seen[s]:
            continue
        j = s
        while not seen[j]:
            seen[j] = True
            j = g[j]
            swaps += 1
        swaps -= 1
    return bool(swaps & 1)


def minimal_block(gens: Sequence[tuple[int, ...]], n: int, a: int, b: int) -> list[int]:
    """Smallest block of imprimitivity containing points a and b."""
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    parent[find(b)] = find(a)
    queue = [(a, b)]
    while queue:
        x, y = queue.pop()
        for g in gens:
            rx, ry = find(g[x]), find(g[y])
            if rx != ry:
                parent[ry] = rx
                queue.append((g[x], g[y]))
    r = find(a)
    return [x for x in range(n) if find(x) == r]


def find_block_system(gens: Sequence[tuple[int, ...]], n: int) -> list[int] | None:
    """A non-trivial block containing point 0, or None if the action is primitive."""
    for b in range(1, n):
        block = minimal_block(gens, n, 0, b)
        if len(block) < n:
            return block
    return None


def _primes_between(lo: float, hi: float) -> set[int]:
    out = set()
    for p in range(max(2, math.floor(lo) + 1), math.ceil(hi)):
        if all(p % d for d in range(2, math.isqrt(p) + 1)):
            out.add(p)
    return out


def _cycle_lengths(g: Sequence[int]) -> list[int]:
    seen = [False] * len(g)
    out = []
    for s in range(len(g)):
        if seen[s]:
            continue
        j, k = s, 0
        while not seen[j]:
            seen[j] = True
            j = g[j]
            k += 1
        out.append(k)
    return out


def jordan_witness(gens: Sequence[tuple[int, ...]], n: int, tries: int = 400,
                   seed: int = 0) -> tuple[int, ...] | None:
    """Search for an element with a cycle of prime length p, n/2 < p < n-2.

    In a transitive group such an element forces primitivity, a power of it is
    a p-cycle, and Jordan's theorem then gives A_n <= G. The search uses a
    seeded product-replacement walk, so the outcome is reproducible.
    """
    primes = _primes_between(n / 2, n - 2)
    if not primes:
        return None
    rng = random.Random(seed)
    state = [g for g in gens] * max(1, -(-10 // len(gens)))
    acc = tuple(range(n))

    def step():
        nonlocal acc
        i, j = rng.sample(range(len(state)), 2) if len(state) > 1 else (0, 0)
        if rng.random() < 0.5:
            state[i] = mul(state[i], state[j])
        else:
            state[i] = mul(state[j], state[i])
        acc = mul(acc, state[i])
        return acc

    for _ in range(50):
        step()
    for _ in range(tries):
        x = step()
        if primes.intersection(_cycle_lengths(x)):
            return x
    return None


def is_symmetric(gens: Sequence[tuple[int, ...]], n: int) -> bool:
    """Exact test for <gens> == S_n on 0-based image tuples."""
    ident = tuple(range(n))
    gens = [g for g in gens if g != ident]
    if n == 1:
        return True
    if not gens or not is_transitive(gens, n):
        return False
    if not any(_is_odd(g) for g in gens):
        return False
    if n > SIMS_DEGREE_LIMIT:
        if jordan_witness(gens, n) is not None:
            return True
        if find_block_system(gens, n) is not None:
            return False
    chain = schreier_sims([Permutation._raw(g) for g in gens], n)
    return chain.order() == math.factorial(n)


def is_universal(lib: GateLibrary) -> bool:
    """True iff the library's gates generate every reversible function of its width."""
    gens, n = _generators(lib) if len(lib) else ([], lib.degree)
    return is_symmetric(gens, n)


def library_order(lib: GateLibrary) -> int:
    """Exact order of the generated group.

    Uses the Jordan certificate for giant groups above the Schreier-Sims
    degree limit, where an explicit chain would not fit in memory.
    """
    gens, n = _generators(lib) if len(lib) else ([], lib.degree)
    if n > SIMS_DEGREE_LIMIT and is_symmetric(gens, n):
        return math.factorial(n)
    if not gens:
        return 1
    return schreier_sims(lib).order()
