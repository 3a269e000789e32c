"""Permutations of {1..N} as used for reversible functions.

Points are 1-based at every public boundary (cycle text, image lists,
``p(i)``); internally an image tuple is 0-based. Products read left to
right: ``compose(p, q)`` applies ``p`` first and then ``q``, which is what
cascading two gates does. Most algebra packages use the opposite order.

State ``i`` of an n-bit register is the assignment whose binary value is
``i - 1`` with ``x_1`` as the most significant bit, so flipping ``x_1`` on
three wires sends state 1 to state 5.
"""

from __future__ import annotations

import math
import re
from functools import reduce
from itertools import permutations
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    DegreeMismatch,
    DegreeTooLargeForRanking,
    MalformedCycle,
    MalformedImages,
    PointOutOfRange,
    RankOutOfRange,
    RepeatedPoint,
)

MAX_RANK_DEGREE = 12


class Permutation:
    """An immutable bijection on {1..degree}.

    Build one from a 1-based image list, ``Permutation([3, 2, 5, 4, 6, 1, 8, 7])``,
    or with :func:`parse_cycles`. ``p * q`` is ``compose(p, q)``.
    """

    __slots__ = ("_img", "_hash")

    def __init__(self, images: Iterable[int]):
        img = tuple(int(x) - 1 for x in images)
        if not img:
            raise MalformedImages("a permutation needs at least one point")
        if sorted(img) != list(range(len(img))):
            raise MalformedImages(f"not a bijection on 1..{len(img)}: {[x + 1 for x in img]}")
        self._img = img
        self._hash = None

    @classmethod
    def _raw(cls, img: tuple[int, ...]) -> "Permutation":
        # trusted 0-based tuple, no validation
        p = object.__new__(cls)
        p._img = img
        p._hash = None
        return p

    @property
    def degree(self) -> int:
        return len(self._img)

    @property
    def images(self) -> tuple[int, ...]:
        """1-based image list: position i holds p(i)."""
        return tuple(x + 1 for x in self._img)

    @property
    def array(self) -> tuple[int, ...]:
        """0-based image tuple, the form the engines work on."""
        return self._img

    def __call__(self, i: int) -> int:
        if not 1 <= i <= len(self._img):
            raise PointOutOfRange(f"point {i} outside 1..{len(self._img)}")
        return self._img[i - 1] + 1

    def __mul__(self, other: "Permutation") -> "Permutation":
        return compose(self, other)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Permutation):
            return NotImplemented
        return self._img == other._img

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self._img)
        return self._hash

    def __repr__(self) -> str:
        return f"Permutation({format_cycles(self)!r}, degree={self.degree})"

    def __str__(self) -> str:
        return format_cycles(self)

    def is_identity(self) -> bool:
        return all(i == x for i, x in enumerate(self._img))

    def cycles(self) -> list[tuple[int, ...]]:
        """Non-trivial cycles, 1-based, each starting at its smallest point."""
        return [tuple(x + 1 for x in c) for c in cycles_of(self._img)]

    def parity(self) -> int:
        """0 for even permutations, 1 for odd."""
        return sum(len(c) - 1 for c in cycles_of(self._img)) & 1


# ---------------------------------------------------------------------------
# tuple-level kernels (0-based); the group and search engines call these


def mul(p: tuple[int, ...], q: tuple[int, ...]) -> tuple[int, ...]:
    """Left-to-right product of 0-based image tuples: p first, then q."""
    return tuple(map(q.__getitem__, p))


def inv(p: tuple[int, ...]) -> tuple[int, ...]:
    out = [0] * len(p)
    for i, x in enumerate(p):
        out[x] = i
    return tuple(out)


def cycles_of(p: Sequence[int]) -> list[tuple[int, ...]]:
    seen = [False] * len(p)
    out = []
    for start in range(len(p)):
        if seen[start] or p[start] == start:
            continue
        cyc = [start]
        seen[start] = True
        j = p[start]
        while j != start:
            seen[j] = True
            cyc.append(j)
            j = p[j]
        out.append(tuple(cyc))
    return out


# ---------------------------------------------------------------------------
# public operations


def identity(n: int) -> Permutation:
    if n < 1:
        raise PointOutOfRange("degree must be at least 1")
    return Permutation._raw(tuple(range(n)))


def compose(p: Permutation, q: Permutation) -> Permutation:
    """Apply ``p`` then ``q``: ``compose(p, q)(i) == q(p(i))``."""
    if p.degree != q.degree:
        raise DegreeMismatch(f"degrees differ: {p.degree} vs {q.degree}")
    return Permutation._raw(mul(p._img, q._img))


def product(perms: Iterable[Permutation], n: int) -> Permutation:
    """Left-to-right product of a sequence; identity when empty."""
    return reduce(compose, perms, identity(n))


def inverse(p: Permutation) -> Permutation:
    return Permutation._raw(inv(p._img))


def order_of(p: Permutation) -> int:
    return math.lcm(*(len(c) for c in cycles_of(p._img))) if not p.is_identity() else 1


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text: str, n: int) -> Permutation:
    """Parse disjoint-cycle notation such as ``"(1,3,5,6)(7,8)"``."""
    s = "".join(text.split())
    if not s:
        raise MalformedCycle("empty cycle text")
    img = list(range(n))
    seen: set[int] = set()
    pos = 0
    for m in _CYCLE_RE.finditer(s):
        if m.start() != pos:
            raise MalformedCycle(f"unexpected text at position {pos}: {s[pos:m.start()]!r}")
        pos = m.end()
        body = m.group(1)
        if body == "":
            continue
        try:
            pts = [int(tok) for tok in body.split(",")]
        except ValueError:
            raise MalformedCycle(f"bad cycle {m.group(0)!r} at position {m.start()}") from None
        for x in pts:
            if not 1 <= x <= n:
                raise PointOutOfRange(f"point {x} outside 1..{n}")
            if x in seen:
                raise RepeatedPoint(f"point {x} appears twice")
            seen.add(x)
        for a, b in zip(pts, pts[1:] + pts[:1]):
            img[a - 1] = b - 1
    if pos != len(s):
        raise MalformedCycle(f"unexpected text at position {pos}: {s[pos:]!r}")
    return Permutation._raw(tuple(img))


def format_cycles(p: Permutation) -> str:
    cyc = p.cycles()
    if not cyc:
        return "()"
    return "".join("(" + ",".join(map(str, c)) + ")" for c in cyc)


def parse_images(text: str) -> Permutation:
    """Parse a comma-separated 1-based image list, e.g. ``"3,2,5,4,6,1,8,7"``."""
    try:
        vals = [int(tok) for tok in text.replace(" ", "").split(",")]
    except ValueError:
        raise MalformedImages(f"not an image list: {text!r}") from None
    return Permutation(vals)


def format_images(p: Permutation) -> str:
    return ",".join(map(str, p.images))


def parse_spec(text: str, n: int) -> Permutation:
    """Cycle notation if the text starts with ``(``, else an image list."""
    t = text.strip()
    if t.startswith("("):
        return parse_cycles(t, n)
    p = parse_images(t)
    if p.degree != n:
        raise DegreeMismatch(f"image list has {p.degree} points, expected {n}")
    return p


# ---------------------------------------------------------------------------
# Lehmer ranking


def rank(p: Permutation) -> int:
    """Lexicographic (Lehmer-code) rank in 0..N!-1."""
    n = p.degree
    if n > MAX_RANK_DEGREE:
        raise DegreeTooLargeForRanking(f"ranking supports degree <= {MAX_RANK_DEGREE}, got {n}")
    a = p._img
    r = 0
    for i in range(n):
        smaller = sum(1 for j in range(i + 1, n) if a[j] < a[i])
        r += smaller * math.factorial(n - 1 - i)
    return r


def unrank(r: int, n: int) -> Permutation:
    if n > MAX_RANK_DEGREE:
        raise DegreeTooLargeForRanking(f"ranking supports degree <= {MAX_RANK_DEGREE}, got {n}")
    if not 0 <= r < math.factorial(n):
        raise RankOutOfRange(f"rank {r} outside 0..{math.factorial(n) - 1}")
    pool = list(range(n))
    out = []
    for i in range(n - 1, -1, -1):
        f = math.factorial(i)
        k, r = divmod(r, f)
        out.append(pool.pop(k))
    return Permutation._raw(tuple(out))


def all_permutations(n: int) -> np.ndarray:
    """Every 0-based permutation of degree n, row r having Lehmer rank r."""
    if n > 10:
        raise DegreeTooLargeForRanking(f"dense tables need degree <= 10, got {n}")
    return np.array(list(permutations(range(n))), dtype=np.int8).reshape(-1, n)


def rank_rows(a: np.ndarray) -> np.ndarray:
    """Vectorised Lehmer rank of each row of a 0-based permutation array."""
    m, n = a.shape
    r = np.zeros(m, dtype=np.int64)
    for i in range(n - 1):
        smaller = (a[:, i + 1:] < a[:, i:i + 1]).sum(axis=1)
        r += smaller * math.factorial(n - 1 - i)
    return r


# ---------------------------------------------------------------------------
# bit assignments


def index_of(bits: Sequence[int]) -> int:
    """1-based state index of an assignment (x_1 .. x_n), x_1 most significant."""
    v = 0
    for b in bits:
        if b not in (0, 1):
            raise ValueError(f"bits must be 0 or 1, got {b}")
        v = (v << 1) | b
    return v + 1


def assignment(index: int, n: int) -> tuple[int, ...]:
    if not 1 <= index <= 1 << n:
        raise PointOutOfRange(f"state {index} outside 1..{1 << n}")
    v = index - 1
    return tuple((v >> (n - 1 - k)) & 1 for k in range(n))
