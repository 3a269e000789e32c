"""Minimum-length circuits.

Distances live on the Cayley graph whose vertices are permutations and whose
edges are right multiplications by library gates. Because that graph is
left-invariant, the distance from a prefix state ``s`` to a target ``t`` is
the distance from the identity to ``inverse(s) * t``; synthesis walks the
gate list in library order and keeps the first gate that stays on a shortest
path, which yields the lexicographically smallest minimum circuit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from decimal import ROUND_DOWN, Decimal
from fractions import Fraction
from functools import lru_cache

import numpy as np

from . import groups
from .errors import CapExceeded, DegreeMismatch, DepthExceeded, InvalidGate, NotInGeneratedGroup
from .gates import Gate, GateLibrary, elaborate, parse_gates
from .perm import Permutation, inv, mul, rank

DEFAULT_MAX_DEPTH = 10
# states kept in the cached forward ball of the bidirectional search
FORWARD_BUDGET = 250_000


@dataclass(frozen=True)
class Circuit:
    arity: int
    gates: tuple[Gate, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "gates", tuple(self.gates))
        if any(g.arity != self.arity for g in self.gates):
            raise InvalidGate(f"circuit gates must all have arity {self.arity}")

    def __len__(self) -> int:
        return len(self.gates)

    def __str__(self) -> str:
        return "; ".join(map(str, self.gates))


def parse_circuit(text: str, n: int) -> Circuit:
    """Read the ``"T[1,2,3]; C[1,2]; N[1]"`` circuit format."""
    return Circuit(n, tuple(parse_gates(text, n, sep=";")))


def apply_circuit(c: Circuit) -> Permutation:
    img = tuple(range(1 << c.arity))
    for g in c.gates:
        img = mul(img, elaborate(g).array)
    return Permutation._raw(img)


def verify(c: Circuit, spec: Permutation) -> bool:
    if spec.degree != 1 << c.arity:
        raise DegreeMismatch(f"circuit acts on {1 << c.arity} states, spec on {spec.degree}")
    return apply_circuit(c) == spec


# ---------------------------------------------------------------------------
# census


@dataclass(frozen=True)
class CensusReport:
    library: str
    library_size: int
    counts: tuple[int, ...]

    @property
    def total(self) -> int:
        return sum(self.counts)

    @property
    def max_length(self) -> int:
        return len(self.counts) - 1

    @property
    def average(self) -> Fraction:
        return Fraction(sum(k * c for k, c in enumerate(self.counts)), self.total)

    def average_str(self, places: int = 3) -> str:
        """Average truncated (not rounded) to ``places`` decimals."""
        a = self.average
        d = Decimal(a.numerator) / Decimal(a.denominator)
        return str(d.quantize(Decimal(1).scaleb(-places), rounding=ROUND_DOWN))

    def as_dict(self) -> dict:
        return {
            "library": self.library,
            "library_size": self.library_size,
            "counts": list(self.counts),
            "total": self.total,
            "max_length": self.max_length,
            "average": self.average_str(),
        }


def _gens(lib: GateLibrary) -> list[tuple[int, ...]]:
    return [p.array for p in lib.perms]


@lru_cache(maxsize=64)
def dense_distances(lib: GateLibrary) -> np.ndarray:
    """Distance from the identity for every Lehmer rank; -1 when unreachable."""
    n = lib.degree
    dist = np.full(math.factorial(n), -1, dtype=np.int16)
    dist[0] = 0
    if not len(lib):
        return dist
    moves = np.stack([groups.dense_moves(n, g) for g in _gens(lib)], axis=1)
    frontier = np.array([0])
    d = 0
    while frontier.size:
        d += 1
        nxt = np.unique(moves[frontier].ravel())
        nxt = nxt[dist[nxt] < 0]
        dist[nxt] = d
        frontier = nxt
    dist.setflags(write=False)
    return dist


def bfs_census(lib: GateLibrary, cap: int = groups.DEFAULT_CAP) -> CensusReport:
    """Exact number of functions at each minimum circuit length."""
    if lib.degree <= groups.DENSE_DEGREE_LIMIT:
        dist = dense_distances(lib)
        reached = dist[dist >= 0]
        if reached.size > cap:
            raise CapExceeded(f"closure has {reached.size} elements, cap is {cap}")
        counts = np.bincount(reached)
        return CensusReport(lib.name, len(lib), tuple(int(c) for c in counts))
    order = groups.library_order(lib)
    if order > cap:
        raise CapExceeded(f"group has {order} elements, cap is {cap}")
    gens = _gens(lib)
    start = tuple(range(lib.degree))
    seen = {start}
    frontier = [start]
    counts = [1]
    while True:
        nxt = []
        for p in frontier:
            for g in gens:
                q = mul(p, g)
                if q not in seen:
                    seen.add(q)
                    nxt.append(q)
            if len(seen) > cap:
                raise CapExceeded(f"census exceeds cap of {cap} functions")
        if not nxt:
            break
        counts.append(len(nxt))
        frontier = nxt
    return CensusReport(lib.name, len(lib), tuple(counts))


def census_length(spec: Permutation, lib: GateLibrary) -> int:
    """Minimum circuit length read off the census table (degree <= 8)."""
    return int(dense_distances(lib)[rank(spec)])


# ---------------------------------------------------------------------------
# synthesis


@lru_cache(maxsize=64)
def _chain(lib: GateLibrary) -> groups.StabilizerChain:
    return groups.schreier_sims(lib)


def synthesize(spec: Permutation, lib: GateLibrary, max_depth: int = DEFAULT_MAX_DEPTH) -> Circuit:
    """A minimum-length circuit for ``spec``, lexicographically first by gate index."""
    if spec.degree != lib.degree:
        raise DegreeMismatch(f"spec has degree {spec.degree}, library acts on {lib.degree} states")
    if spec.is_identity():
        return Circuit(lib.arity)
    if not len(lib) or not groups.contains(_chain(lib), spec):
        raise NotInGeneratedGroup(f"{spec} is not realizable with library {lib.name}")
    if lib.degree <= groups.DENSE_DEGREE_LIMIT:
        return _synthesize_dense(spec, lib)
    return _synthesize_bidirectional(spec, lib, max_depth)


def _synthesize_dense(spec: Permutation, lib: GateLibrary) -> Circuit:
    dist = dense_distances(lib)
    gens = _gens(lib)
    inv_gens = [inv(g) for g in gens]
    rest = spec.array
    d = int(dist[rank(spec)])
    out = []
    while d:
        for k, gi in enumerate(inv_gens):
            cand = mul(gi, rest)
            if dist[rank(Permutation._raw(cand))] == d - 1:
                out.append(lib.gates[k])
                rest, d = cand, d - 1
                break
    return Circuit(lib.arity, tuple(out))


class _ForwardBall:
    """Breadth-first ball around the identity, grown on demand and cached."""

    def __init__(self, lib: GateLibrary):
        self.gens = _gens(lib)
        start = tuple(range(lib.degree))
        self.depth_of = {start: 0}
        self.layers = [[start]]
        self.complete = False

    @property
    def depth(self) -> float:
        return math.inf if self.complete else len(self.layers) - 1

    def grow_to(self, depth: int, budget: int = FORWARD_BUDGET) -> None:
        while not self.complete and len(self.layers) - 1 < depth:
            last = self.layers[-1]
            if len(self.depth_of) + len(last) * len(self.gens) > budget:
                return
            d = len(self.layers)
            nxt = []
            for p in last:
                for g in self.gens:
                    q = mul(p, g)
                    if q not in self.depth_of:
                        self.depth_of[q] = d
                        nxt.append(q)
            if nxt:
                self.layers.append(nxt)
            else:
                self.complete = True


@lru_cache(maxsize=16)
def _forward_ball(lib: GateLibrary) -> _ForwardBall:
    return _ForwardBall(lib)


def _synthesize_bidirectional(spec: Permutation, lib: GateLibrary, max_depth: int) -> Circuit:
    fwd = _forward_ball(lib)
    fwd.grow_to(-(-max_depth // 2))
    gens = fwd.gens
    inv_gens = [inv(g) for g in gens]
    target = spec.array

    # backward ball around the spec: back_of[x] = gates needed from x to spec
    back_of = {target: 0}
    layer = [target]
    best = math.inf
    j = 0
    while True:
        for x in layer:
            f = fwd.depth_of.get(x)
            if f is not None and f + j < best:
                best = f + j
        if best <= fwd.depth + j or fwd.depth + j >= max_depth:
            break
        nxt = []
        for x in layer:
            for gi in inv_gens:
                y = mul(x, gi)
                if y not in back_of:
                    back_of[y] = j + 1
                    nxt.append(y)
        if not nxt:
            break
        layer = nxt
        j += 1
    if best > max_depth:
        raise DepthExceeded(f"no circuit of at most {max_depth} gates for {spec}")
    d = int(best)

    # states on shortest paths at each forward depth up to the meeting layer
    meet = min(d, len(fwd.layers) - 1)
    on_path = [set() for _ in range(meet + 1)]
    on_path[meet] = {x for x in fwd.layers[meet] if back_of.get(x) == d - meet}
    for i in range(meet - 1, -1, -1):
        on_path[i] = {
            y for x in on_path[i + 1] for gi in inv_gens
            if fwd.depth_of.get(y := mul(x, gi)) == i
        }

    state = tuple(range(lib.degree))
    out = []
    for k in range(d):
        for idx, g in enumerate(gens):
            nxt = mul(state, g)
            if (nxt in on_path[k + 1]) if k + 1 <= meet else back_of.get(nxt) == d - k - 1:
                out.append(lib.gates[idx])
                state = nxt
                break
        else:
            raise AssertionError("shortest-path walk lost the path")
    return Circuit(lib.arity, tuple(out))
