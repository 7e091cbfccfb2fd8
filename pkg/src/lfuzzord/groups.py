"""Group backends and frame-valued maps on them.

Two carriers are supported:

* :class:`FiniteGroup` -- a Cayley table on ``0..n-1``, validated at load;
* :class:`FreeAbelian` -- integer vectors of a fixed rank under
  componentwise addition, finitized for verification by a :class:`Window`.

Frame-valued maps over a group come in two flavours: explicit tables
(:class:`TableMap`) and, for free abelian carriers, first-match-wins lists
of linear-inequality regions (:class:`RegionMap`), which stay evaluable at
every point of the group, not just inside a window.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .frame import Frame


class GroupError(ValueError):
    pass


class WindowMissing(GroupError):
    pass


class FiniteGroup:
    """Finite group given by its Cayley table; elements are 0..n-1."""

    def __init__(self, cayley, check: bool = True):
        cayley = np.asarray(cayley, dtype=np.int16)
        n = cayley.shape[0]
        if cayley.shape != (n, n):
            raise GroupError("cayley table must be square")
        if cayley.size and (cayley.min() < 0 or cayley.max() >= n):
            raise GroupError("cayley entries out of range")
        self.cayley = cayley
        self.size = n
        if check:
            lhs = cayley[cayley, :]                                  # (a+b)+c
            rhs = cayley[np.arange(n)[:, None, None], cayley[None, :, :]]
            if not np.array_equal(lhs, rhs):
                a, b, c = map(int, np.argwhere(lhs != rhs)[0])
                raise GroupError(f"not associative at ({a}, {b}, {c})")
        ident = [e for e in range(n)
                 if np.array_equal(cayley[e, :], np.arange(n))
                 and np.array_equal(cayley[:, e], np.arange(n))]
        if len(ident) != 1:
            raise GroupError("no two-sided identity")
        self.zero = ident[0]
        inv = np.full(n, -1, dtype=np.int16)
        for a in range(n):
            hits = np.flatnonzero((cayley[a, :] == self.zero)
                                  & (cayley[:, a] == self.zero))
            if len(hits) != 1:
                raise GroupError(f"element {a} lacks a unique inverse")
            inv[a] = hits[0]
        self.inverse = inv
        self.rank = None
        self.cayley.setflags(write=False)
        self.inverse.setflags(write=False)

    def op(self, a, b):
        return int(self.cayley[a, b])

    def neg(self, a):
        return int(self.inverse[a])

    def sub(self, a, b):
        return int(self.cayley[a, self.inverse[b]])

    def scale(self, a, k: int):
        out, step = self.zero, a if k >= 0 else self.neg(a)
        for _ in range(abs(k)):
            out = self.op(out, step)
        return out

    def elements(self):
        return list(range(self.size))

    def is_abelian(self) -> bool:
        return np.array_equal(self.cayley, self.cayley.T)

    def to_json(self):
        return {"kind": "group",
                "backend": {"finite": {"cayley": self.cayley.astype(int).tolist()}}}

    @classmethod
    def cyclic(cls, n: int) -> "FiniteGroup":
        idx = np.arange(n)
        return cls((idx[:, None] + idx[None, :]) % n)

    @classmethod
    def klein4(cls) -> "FiniteGroup":
        idx = np.arange(4)
        return cls(idx[:, None] ^ idx[None, :])

    @classmethod
    def from_operation(cls, elems, op) -> tuple["FiniteGroup", list]:
        index = {x: i for i, x in enumerate(elems)}
        n = len(elems)
        table = np.zeros((n, n), dtype=np.int16)
        for i, a in enumerate(elems):
            for j, b in enumerate(elems):
                table[i, j] = index[op(a, b)]
        return cls(table), list(elems)

    def __repr__(self):
        return f"FiniteGroup(size={self.size})"


class FreeAbelian:
    """Integer vectors of fixed rank; elements are tuples of ints."""

    def __init__(self, rank: int):
        if rank < 1:
            raise GroupError("rank must be positive")
        self.rank = rank
        self.zero = (0,) * rank
        self.size = None

    def op(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def neg(self, a):
        return tuple(-x for x in a)

    def sub(self, a, b):
        return tuple(x - y for x, y in zip(a, b))

    def scale(self, a, k: int):
        return tuple(k * x for x in a)

    def is_abelian(self) -> bool:
        return True

    def to_json(self):
        return {"kind": "group", "backend": {"free_abelian": {"rank": self.rank}}}

    def __eq__(self, other):
        return isinstance(other, FreeAbelian) and other.rank == self.rank

    def __repr__(self):
        return f"FreeAbelian(rank={self.rank})"


@dataclass(frozen=True)
class Window:
    """Per-coordinate integer box used to finitize free abelian carriers.

    Must contain the origin.  Verdicts quantified over a window are reported
    as window-certified, never as plain facts about the whole group.
    """
    lo: tuple
    hi: tuple

    def __post_init__(self):
        if len(self.lo) != len(self.hi):
            raise GroupError("window bound ranks differ")
        if any(l > h for l, h in zip(self.lo, self.hi)):
            raise GroupError("window lower bound exceeds upper bound")
        if any(l > 0 or h < 0 for l, h in zip(self.lo, self.hi)):
            raise GroupError("window must contain the origin")

    @property
    def rank(self):
        return len(self.lo)

    @classmethod
    def symmetric(cls, n: int, rank: int) -> "Window":
        return cls((-n,) * rank, (n,) * rank)

    def points(self) -> list:
        ranges = [range(l, h + 1) for l, h in zip(self.lo, self.hi)]
        return [tuple(p) for p in itertools.product(*ranges)]

    def array(self) -> np.ndarray:
        return np.array(self.points(), dtype=np.int64)

    def contains(self, x) -> bool:
        return all(l <= c <= h for l, c, h in zip(self.lo, x, self.hi))

    def doubled(self) -> "Window":
        """The Minkowski sum of the window with itself."""
        return Window(tuple(2 * l for l in self.lo), tuple(2 * h for h in self.hi))

    def hull_with(self, pts) -> "Window":
        lo, hi = list(self.lo), list(self.hi)
        for p in pts:
            for i, c in enumerate(p):
                lo[i] = min(lo[i], c)
                hi[i] = max(hi[i], c)
        return Window(tuple(lo), tuple(hi))

    def to_json(self):
        return {"lo": list(self.lo), "hi": list(self.hi)}


def domain_points(backend, window: Window | None) -> list:
    """The quantification domain: all elements, or the window box."""
    if isinstance(backend, FiniteGroup):
        return backend.elements()
    if window is None:
        raise WindowMissing("free abelian backend needs a window")
    if window.rank != backend.rank:
        raise GroupError("window rank does not match backend rank")
    return window.points()


OPS = ("<=", "<", ">=", ">", "==", "!=", "mod")


class RegionMap:
    """First-match-wins list of linear-inequality regions over Z^rank.

    Each rule is ``(atoms, value)`` where every atom is
    ``(coeffs, rhs, op)`` read as ``coeffs . x  op  rhs``; the ``mod`` op
    takes ``rhs = (modulus, residue)`` and means
    ``coeffs . x == residue (mod modulus)``.  Evaluation is total: points
    matching no rule get ``default``.
    """

    def __init__(self, rank: int, rules, default: int):
        self.rank = rank
        self.rules = []
        for atoms, value in rules:
            parsed = []
            for coeffs, rhs, op in atoms:
                coeffs = tuple(int(c) for c in coeffs)
                if len(coeffs) != rank:
                    raise GroupError(f"atom coefficients need rank {rank}")
                if op not in OPS:
                    raise GroupError(f"unknown atom op {op!r}")
                if op == "mod":
                    m, r = rhs
                    if int(m) <= 0:
                        raise GroupError("modulus must be positive")
                    rhs = (int(m), int(r))
                else:
                    rhs = int(rhs)
                parsed.append((coeffs, rhs, op))
            self.rules.append((parsed, int(value)))
        self.default = int(default)

    @staticmethod
    def _atom_holds(dot: int, rhs, op: str) -> bool:
        if op == "<=":
            return dot <= rhs
        if op == "<":
            return dot < rhs
        if op == ">=":
            return dot >= rhs
        if op == ">":
            return dot > rhs
        if op == "==":
            return dot == rhs
        if op == "!=":
            return dot != rhs
        m, r = rhs
        return dot % m == r % m

    def value(self, x) -> int:
        for atoms, val in self.rules:
            if all(self._atom_holds(sum(c * xi for c, xi in zip(coeffs, x)),
                                    rhs, op)
                   for coeffs, rhs, op in atoms):
                return val
        return self.default

    def values_at(self, pts: np.ndarray) -> np.ndarray:
        pts = np.asarray(pts, dtype=np.int64)
        masks, vals = [], []
        for atoms, val in self.rules:
            mask = np.ones(len(pts), dtype=bool)
            for coeffs, rhs, op in atoms:
                dot = pts @ np.array(coeffs, dtype=np.int64)
                if op == "<=":
                    mask &= dot <= rhs
                elif op == "<":
                    mask &= dot < rhs
                elif op == ">=":
                    mask &= dot >= rhs
                elif op == ">":
                    mask &= dot > rhs
                elif op == "==":
                    mask &= dot == rhs
                elif op == "!=":
                    mask &= dot != rhs
                else:
                    m, r = rhs
                    mask &= (dot - r) % m == 0
            masks.append(mask)
            vals.append(val)
        return np.select(masks, vals, default=self.default).astype(np.int16)

    def to_json(self, frame: Frame | None = None):
        lab = (lambda v: frame.labels[v]) if frame else (lambda v: v)
        return {
            "kind": "cone",
            "rules": [{"ineqs": [[list(c), list(r) if op == "mod" else r, op]
                                 for c, r, op in atoms],
                       "value": lab(val)}
                      for atoms, val in self.rules],
            "default": lab(self.default),
        }


class TableMap:
    """Explicit frame-valued map: a full table on a finite group, or a
    point dictionary (with optional default) on a free abelian window."""

    def __init__(self, values, default: int | None = None):
        if isinstance(values, dict):
            self.table = None
            self.points = dict(values)
        else:
            self.table = [int(v) for v in values]
            self.points = None
        self.default = default

    def value(self, x) -> int:
        if self.table is not None:
            return self.table[x]
        if x in self.points:
            return self.points[x]
        if self.default is None:
            raise KeyError(f"point {x} outside tabulated domain")
        return self.default

    def values_at(self, pts) -> np.ndarray:
        return np.array([self.value(tuple(p) if not np.isscalar(p) else p)
                         for p in pts], dtype=np.int16)

    def domain(self):
        if self.table is not None:
            return list(range(len(self.table)))
        return sorted(self.points)

    def to_json(self, frame: Frame | None = None):
        lab = (lambda v: frame.labels[v]) if frame else (lambda v: v)
        if self.table is not None:
            return {"kind": "lsubgroup", "values": [lab(v) for v in self.table]}
        return {"kind": "lsubgroup",
                "values": {",".join(map(str, k)) if isinstance(k, tuple) else str(k): lab(v)
                           for k, v in sorted(self.points.items())},
                "default": None if self.default is None else lab(self.default)}


class FuncMap:
    """Lazy frame-valued map backed by a callable; used for derived views
    such as the cone read back off an ordered group."""

    def __init__(self, fn, vec=None):
        self.fn = fn
        self._vec = vec

    def value(self, x) -> int:
        return int(self.fn(x))

    def values_at(self, pts) -> np.ndarray:
        if self._vec is not None:
            return np.asarray(self._vec(pts), dtype=np.int16)
        return np.array([self.value(tuple(p) if not np.isscalar(p) else p)
                         for p in pts], dtype=np.int16)


def maps_equal(a, b, pts) -> bool:
    return pointwise_mismatch(a, b, pts) is None


def pointwise_mismatch(a, b, pts):
    for p in pts:
        if a.value(p) != b.value(p):
            return p
    return None


class FiniteHom:
    """Map between finite groups given as an image table."""

    def __init__(self, table):
        self.table = [int(v) for v in table]

    def apply(self, x):
        return self.table[x]


class LinearHom:
    """Integer-matrix homomorphism between free abelian groups."""

    def __init__(self, matrix):
        self.matrix = np.asarray(matrix, dtype=np.int64)
        if self.matrix.ndim != 2:
            raise GroupError("hom matrix must be 2-d")

    def apply(self, x):
        return tuple(int(v) for v in self.matrix @ np.asarray(x, dtype=np.int64))


def as_hom(f):
    if isinstance(f, (FiniteHom, LinearHom)):
        return f.apply
    if isinstance(f, (dict, list)):
        return lambda x: f[x]
    return f


def is_homomorphism(f, G, H, pts) -> tuple[bool, object]:
    """Check f(x + y) == f(x) + f(y) over the given domain points."""
    fn = as_hom(f)
    cache = {x: fn(x) for x in pts}
    for x in pts:
        for y in pts:
            if fn(G.op(x, y)) != H.op(cache[x], cache[y]):
                return False, (x, y)
    return True, None
