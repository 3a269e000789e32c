"""Gate families and named libraries.

A gate is written ``KIND[w1,...,wm]`` with 1-based wires:

* ``N[i]``            flip x_i
* ``C[c,t]``          x_t ^= x_c
* ``T[c1,...,ck,t]``  x_t ^= x_c1 ... x_ck   (k >= 2 controls)
* ``F[c,a,b]``        swap x_a, x_b when x_c = 1
* ``P[c,a,b]``        x_a ^= x_c and x_b ^= x_c x_a
* ``G[i1,...,im]``    x_i1 ^= 1 and x_ik ^= x_i1 ... x_i(k-1) for k >= 2

Every control reads the input value of its wire, so a multi-target gate is the
cascade of its parts with the largest-control part applied first; ``P[c,a,b]``
equals ``T[c,a,b]`` followed by ``C[c,a]``.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from itertools import combinations, permutations
from typing import Iterable, Iterator, Sequence

from .errors import InvalidGate, MalformedLabel, UnknownLibrary, UnsupportedWidth
from .perm import Permutation

KINDS = ("N", "C", "T", "F", "P", "G")

LIBRARY_NAMES = (
    "N", "C", "T", "F", "P", "NF", "NT", "NP", "NCT", "NCF", "NCP",
    "NCTF", "NCPT", "NCPF", "G", "GT",
)


@dataclass(frozen=True)
class Gate:
    kind: str
    wires: tuple[int, ...]
    arity: int

    def __post_init__(self):
        object.__setattr__(self, "wires", tuple(int(w) for w in self.wires))
        k, w, n = self.kind, self.wires, self.arity
        if k not in KINDS:
            raise InvalidGate(f"unknown gate kind {k!r}")
        if n < 1:
            raise InvalidGate(f"arity must be positive, got {n}")
        if any(not 1 <= x <= n for x in w):
            raise InvalidGate(f"{self}: wires must lie in 1..{n}")
        if len(set(w)) != len(w):
            raise InvalidGate(f"{self}: wires must be distinct")
        expected = {"N": 1, "C": 2, "F": 3, "P": 3}.get(k)
        if expected is not None and len(w) != expected:
            raise InvalidGate(f"{self}: {k} gates take {expected} wire(s)")
        if k == "T" and len(w) < 3:
            raise InvalidGate(f"{self}: T gates need at least 2 controls")
        if k == "G" and len(w) < 2:
            raise InvalidGate(f"{self}: G gates span at least 2 wires")

    def __str__(self) -> str:
        return f"{self.kind}[{','.join(map(str, self.wires))}]"

    def elaborate(self) -> Permutation:
        return elaborate(self)

    def boolean_map(self) -> str:
        """Human-readable output vector, e.g. ``(x1, x2^x1, x3^x1x2)``."""
        n = self.arity
        terms = {i: [] for i in range(1, n + 1)}
        k, w = self.kind, self.wires
        if k == "N":
            terms[w[0]].append("1")
        elif k in ("C", "T"):
            terms[w[-1]].append("".join(f"x{c}" for c in w[:-1]))
        elif k == "F":
            c, a, b = w
            return "(" + ", ".join(
                f"x{c}?x{b}:x{a}" if i == a else f"x{c}?x{a}:x{b}" if i == b else f"x{i}"
                for i in range(1, n + 1)
            ) + ")"
        elif k == "P":
            c, a, b = w
            terms[a].append(f"x{c}")
            terms[b].append(f"x{c}x{a}")
        else:
            terms[w[0]].append("1")
            for j in range(1, len(w)):
                terms[w[j]].append("".join(f"x{c}" for c in w[:j]))
        return "(" + ", ".join(
            f"x{i}" + "".join("^" + t for t in terms[i]) for i in range(1, n + 1)
        ) + ")"


_GATE_RE = re.compile(r"\s*([A-Za-z])\s*\[\s*([0-9,\s]*)\]\s*")


def parse_gate(text: str, n: int) -> Gate:
    m = _GATE_RE.fullmatch(text)
    if not m:
        raise InvalidGate(f"cannot parse gate term {text!r} (expected KIND[w1,...])")
    body = m.group(2).replace(" ", "")
    if not body:
        raise InvalidGate(f"gate term {text!r} has no wires")
    try:
        wires = tuple(int(t) for t in body.split(","))
    except ValueError:
        raise InvalidGate(f"bad wire list in {text!r}") from None
    return Gate(m.group(1).upper(), wires, n)


def parse_gates(text: str, n: int, sep: str = ",") -> list[Gate]:
    """Split a list of gate terms. Commas inside brackets are not separators."""
    terms, depth, cur = [], 0, []
    for pos, ch in enumerate(text):
        if ch == "[":
            depth += 1
        elif ch == "]":
            depth -= 1
            if depth < 0:
                raise InvalidGate(f"unbalanced ']' at position {pos}")
        if ch == sep and depth == 0:
            terms.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    if depth:
        raise InvalidGate("unbalanced '[' in gate list")
    terms.append("".join(cur))
    return [parse_gate(t, n) for t in terms if t.strip()]


@lru_cache(maxsize=None)
def elaborate(g: Gate) -> Permutation:
    n = g.arity
    w = [x - 1 for x in g.wires]
    img = []
    for s in range(1 << n):
        x = [(s >> (n - 1 - i)) & 1 for i in range(n)]
        y = list(x)
        k = g.kind
        if k == "N":
            y[w[0]] ^= 1
        elif k in ("C", "T"):
            y[w[-1]] ^= all(x[c] for c in w[:-1])
        elif k == "F":
            c, a, b = w
            if x[c]:
                y[a], y[b] = x[b], x[a]
        elif k == "P":
            c, a, b = w
            y[a] ^= x[c]
            y[b] ^= x[c] & x[a]
        else:
            y[w[0]] ^= 1
            for j in range(1, len(w)):
                y[w[j]] ^= all(x[c] for c in w[:j])
        v = 0
        for bit in y:
            v = (v << 1) | bit
        img.append(v)
    return Permutation._raw(tuple(img))


def paper_label_gate(label: str | int, n: int | None = None) -> Gate:
    """G gate from a position-style subscript.

    Digit k of the label is the chain position of wire k, so ``2341`` means
    wire 4 is flipped unconditionally and the chain is ``G[4,1,2,3]``.
    """
    s = str(label).strip()
    digits = [int(c) for c in s] if s.isdigit() else []
    m = len(digits)
    if m < 2 or sorted(digits) != list(range(1, m + 1)):
        raise MalformedLabel(f"label {label!r} is not a permutation of 1..{m or '?'}")
    chain = [0] * m
    for wire, pos in enumerate(digits, start=1):
        chain[pos - 1] = wire
    return Gate("G", tuple(chain), n or m)


def paper_g4_label(label: str | int) -> Gate:
    if len(str(label).strip()) != 4:
        raise MalformedLabel(f"G4 labels have four digits, got {label!r}")
    return paper_label_gate(label, 4)


@dataclass(frozen=True)
class GateLibrary:
    name: str
    gates: tuple[Gate, ...]
    arity: int = field(default=0)

    def __post_init__(self):
        gates = tuple(self.gates)
        object.__setattr__(self, "gates", gates)
        if not self.arity:
            if not gates:
                raise InvalidGate("an empty library needs an explicit arity")
            object.__setattr__(self, "arity", gates[0].arity)
        if any(g.arity != self.arity for g in gates):
            raise InvalidGate(f"library {self.name}: gates must share arity {self.arity}")
        if len(set(gates)) != len(gates):
            raise InvalidGate(f"library {self.name}: duplicate gates")

    @classmethod
    def from_gates(cls, gates: Iterable[Gate], name: str | None = None,
                   arity: int = 0) -> "GateLibrary":
        gates = tuple(gates)
        return cls(name or "{" + ",".join(map(str, gates)) + "}", gates, arity)

    @classmethod
    def from_terms(cls, text: str, n: int, name: str | None = None) -> "GateLibrary":
        return cls.from_gates(parse_gates(text, n), name, n)

    def __len__(self) -> int:
        return len(self.gates)

    def __iter__(self) -> Iterator[Gate]:
        return iter(self.gates)

    @property
    def size(self) -> int:
        return len(self.gates)

    @property
    def degree(self) -> int:
        return 1 << self.arity

    @cached_property
    def perms(self) -> tuple[Permutation, ...]:
        return tuple(elaborate(g) for g in self.gates)

    def subset(self, indices: Sequence[int]) -> "GateLibrary":
        gates = tuple(self.gates[i] for i in indices)
        return GateLibrary("{" + ",".join(map(str, gates)) + "}", gates, self.arity)

    def __str__(self) -> str:
        return self.name


def _family(kind: str, n: int) -> list[Gate]:
    wires = range(1, n + 1)
    if kind == "N":
        return [Gate("N", (i,), n) for i in wires]
    if kind == "C":
        return [Gate("C", (c, t), n) for c in wires for t in wires if t != c]
    if kind == "T":
        out = []
        for k in range(2, n):
            for ctrl in combinations(wires, k):
                out += [Gate("T", ctrl + (t,), n) for t in wires if t not in ctrl]
        return out
    if kind == "F":
        return [Gate("F", (c,) + pair, n) for c in wires
                for pair in combinations([w for w in wires if w != c], 2)]
    if kind == "P":
        return [Gate("P", p, n) for p in permutations(wires, 3)]
    raise UnknownLibrary(kind)


def standard_library(name: str, n: int) -> GateLibrary:
    """Full enumerated library; composite names concatenate families in order."""
    key = name.strip().upper()
    if key not in LIBRARY_NAMES:
        raise UnknownLibrary(f"unknown library {name!r}; choose from {', '.join(LIBRARY_NAMES)}")
    if n < 1:
        raise UnsupportedWidth(f"width must be positive, got {n}")
    if key == "G":
        if n < 2:
            raise UnsupportedWidth("G gates need at least 2 wires")
        gates = [Gate("G", p, n) for p in permutations(range(1, n + 1))]
        return GateLibrary(f"G{n}", tuple(gates), n)
    if key == "GT":
        gates = _family("N", n) + _family("C", n) + _family("T", n)
        return GateLibrary(f"GT{n}", tuple(gates), n)
    if ("F" in key or "P" in key) and n != 3:
        raise UnsupportedWidth(f"library {key} is defined only on 3 wires")
    if ("C" in key and n < 2) or ("T" in key and n < 3):
        raise UnsupportedWidth(f"library {key} needs more than {n} wire(s)")
    gates = [g for kind in key for g in _family(kind, n)]
    return GateLibrary(key, tuple(gates), n)


def gt_library_size(n: int) -> int:
    """Gate count of the generalized-Toffoli library on n wires."""
    if n < 1:
        raise UnsupportedWidth(f"width must be positive, got {n}")
    return n * sum(math.comb(n - 1, r) for r in range(n))
