"""Finite truth-value lattices with exact tabulated operations.

The truth-value algebra used everywhere in this package is a finite bounded
distributive lattice; finiteness makes it a complete Heyting algebra, so the
relative pseudocomplement ``imp`` is total and every operation can be
precomputed as an integer table.  Elements are plain ``int`` indices into the
carrier (0-based, stable under serialization), equality is integer equality,
and there are no tolerances anywhere.

Canonical numbering used by the constructors:

* ``chain_frame(n)``   -- bottom-up: ``0 < 1 < ... < n-1``.
* ``boolean_frame(k)`` -- subsets of ``k`` atoms by bitmask: ``i <= j`` iff
  ``i & j == i``.
* ``product_frame``    -- the pair ``(a, b)`` gets index ``a * g.size + b``.
"""

from __future__ import annotations

import numpy as np

DEFAULT_CARRIER_CAP = 64


class FrameError(ValueError):
    """Base class for rejected frame constructions."""


class NotAPartialOrder(FrameError):
    pass


class NotALattice(FrameError):
    pass


class NotDistributive(FrameError):
    pass


class SizeLimitExceeded(FrameError):
    pass


class Frame:
    """A finite distributive bounded lattice with precomputed operation tables.

    Attributes
    ----------
    size    : carrier count; elements are ``range(size)``.
    leq     : read-only boolean matrix, ``leq[a, b]`` iff ``a <= b``.
    meet, join, imp : ``size x size`` int16 tables of glb, lub and residuum,
        where ``imp[a, b]`` is the largest ``x`` with ``a /\\ x <= b``.
    bottom, top : least and greatest element indices.
    labels  : human-readable element names, used by the JSON formats.

    Instances are immutable after construction (all arrays are write-locked)
    and safe to share across threads; every operation is a pure table read.
    Do not call ``__init__`` directly -- go through :func:`build_frame` or a
    constructor so the lattice laws are actually checked.
    """

    def __init__(self, leq, meet, join, imp, bottom, top, labels):
        self.leq = leq
        self.meet = meet
        self.join = join
        self.imp = imp
        self.bottom = int(bottom)
        self.top = int(top)
        self.labels = list(labels)
        self.size = leq.shape[0]
        for arr in (self.leq, self.meet, self.join, self.imp):
            arr.setflags(write=False)

    def le(self, a: int, b: int) -> bool:
        return bool(self.leq[a, b])

    def meet_all(self, xs) -> int:
        """glb of an iterable of elements; empty gives top."""
        acc = self.top
        for x in xs:
            acc = int(self.meet[acc, x])
        return acc

    def join_all(self, xs) -> int:
        """lub of an iterable of elements; empty gives bottom."""
        acc = self.bottom
        for x in xs:
            acc = int(self.join[acc, x])
        return acc

    def element_index(self, spec) -> int:
        """Resolve an element given as an index or a label string."""
        if isinstance(spec, bool):
            raise FrameError(f"not a frame element: {spec!r}")
        if isinstance(spec, (int, np.integer)):
            i = int(spec)
            if not 0 <= i < self.size:
                raise FrameError(f"element index {i} out of range 0..{self.size - 1}")
            return i
        if isinstance(spec, str):
            if spec in self.labels:
                return self.labels.index(spec)
            if spec.isdigit() or (spec.startswith("-") and spec[1:].isdigit()):
                return self.element_index(int(spec))
            raise FrameError(f"unknown element label {spec!r}")
        raise FrameError(f"not a frame element: {spec!r}")

    def to_json(self) -> dict:
        return {
            "kind": "frame",
            "leq": self.leq.astype(int).tolist(),
            "labels": self.labels,
        }

    def __eq__(self, other):
        return isinstance(other, Frame) and np.array_equal(self.leq, other.leq)

    def __hash__(self):
        return hash(self.leq.tobytes())

    def __repr__(self):
        return f"Frame(size={self.size}, labels={self.labels})"


def _check_partial_order(leq: np.ndarray) -> None:
    n = leq.shape[0]
    if not leq.diagonal().all():
        x = int(np.flatnonzero(~leq.diagonal())[0])
        raise NotAPartialOrder(f"not reflexive at {x}")
    sym = leq & leq.T & ~np.eye(n, dtype=bool)
    if sym.any():
        a, b = map(int, np.argwhere(sym)[0])
        raise NotAPartialOrder(f"not antisymmetric at ({a}, {b})")
    closure = (leq.astype(np.int64) @ leq.astype(np.int64)) > 0
    gap = closure & ~leq
    if gap.any():
        a, b = map(int, np.argwhere(gap)[0])
        raise NotAPartialOrder(f"not transitive: ({a}, {b}) forced but missing")


def _bound_tables(leq: np.ndarray):
    """Compute meet/join tables from the order, or report a missing bound."""
    n = leq.shape[0]
    meet = np.zeros((n, n), dtype=np.int16)
    join = np.zeros((n, n), dtype=np.int16)
    for a in range(n):
        for b in range(a, n):
            lower = leq[:, a] & leq[:, b]
            glb = [int(x) for x in np.flatnonzero(lower) if np.all(~lower | leq[:, x])]
            if len(glb) != 1:
                raise NotALattice(f"pair ({a}, {b}) has no greatest lower bound")
            meet[a, b] = meet[b, a] = glb[0]
            upper = leq[a, :] & leq[b, :]
            lub = [int(x) for x in np.flatnonzero(upper) if np.all(~upper | leq[x, :])]
            if len(lub) != 1:
                raise NotALattice(f"pair ({a}, {b}) has no least upper bound")
            join[a, b] = join[b, a] = lub[0]
    return meet, join


def build_frame(leq, labels=None, carrier_cap: int = DEFAULT_CARRIER_CAP) -> Frame:
    """Validate an order table and build the frame with all tables precomputed.

    Raises :class:`NotAPartialOrder`, :class:`NotALattice` or
    :class:`NotDistributive` (with a witness triple) on bad input.  For a
    finite lattice, pairwise distributivity is equivalent to the infinite
    distributive law, so this check is exactly what makes the result a frame.
    """
    leq = np.asarray(leq, dtype=bool)
    if leq.ndim != 2 or leq.shape[0] != leq.shape[1]:
        raise FrameError(f"leq table must be square, got shape {leq.shape}")
    n = leq.shape[0]
    if n == 0:
        raise FrameError("empty carrier")
    if n > carrier_cap:
        raise SizeLimitExceeded(f"carrier size {n} exceeds cap {carrier_cap}")
    _check_partial_order(leq)
    meet, join = _bound_tables(leq)

    for a in range(n):
        lhs = meet[a, join]                      # a /\ (b \/ c)
        row = meet[a]
        rhs = join[row[:, None], row[None, :]]   # (a /\ b) \/ (a /\ c)
        if not np.array_equal(lhs, rhs):
            b, c = map(int, np.argwhere(lhs != rhs)[0])
            raise NotDistributive(f"witness triple ({a}, {b}, {c})")

    bottom = a0 = 0
    for x in range(n):
        a0 = int(meet[a0, x])
    bottom = a0
    t0 = 0
    for x in range(n):
        t0 = int(join[t0, x])
    top = t0

    imp = np.zeros((n, n), dtype=np.int16)
    for a in range(n):
        for b in range(n):
            xs = np.flatnonzero(leq[meet[a, :], b])
            acc = bottom
            for x in xs:
                acc = int(join[acc, x])
            imp[a, b] = acc

    if labels is None:
        labels = [f"e{i}" for i in range(n)]
    return Frame(leq, meet, join, imp, bottom, top, labels)


def _chain_labels(n: int):
    if n == 1:
        return ["0"]
    if n == 2:
        return ["0", "1"]
    if n == 3:
        return ["0", "m", "1"]
    return ["0"] + [f"m{i}" for i in range(1, n - 1)] + ["1"]


def chain_frame(n: int, carrier_cap: int = DEFAULT_CARRIER_CAP) -> Frame:
    """The n-element chain, numbered bottom-up."""
    if n < 1:
        raise FrameError("chain needs at least one element")
    leq = np.tri(n, dtype=bool).T
    return build_frame(leq, labels=_chain_labels(n), carrier_cap=carrier_cap)


def boolean_frame(k: int, carrier_cap: int = DEFAULT_CARRIER_CAP) -> Frame:
    """Powerset of k atoms; element i is the subset with bitmask i."""
    if k < 0:
        raise FrameError("negative atom count")
    n = 2**k
    if n > carrier_cap:
        raise SizeLimitExceeded(f"2^{k} exceeds cap {carrier_cap}")
    idx = np.arange(n)
    leq = (idx[:, None] & idx[None, :]) == idx[:, None]
    labels = [format(i, "b").zfill(max(k, 1)) for i in range(n)]
    return build_frame(leq, labels=labels, carrier_cap=carrier_cap)


def product_frame(f: Frame, g: Frame, carrier_cap: int = DEFAULT_CARRIER_CAP) -> Frame:
    """Componentwise product; pair (a, b) gets index a * g.size + b."""
    n = f.size * g.size
    if n > carrier_cap:
        raise SizeLimitExceeded(f"product size {n} exceeds cap {carrier_cap}")
    leq = np.kron(f.leq, g.leq)
    labels = [f"({la},{lb})" for la in f.labels for lb in g.labels]
    return build_frame(leq, labels=labels, carrier_cap=carrier_cap)


HEYTING_IDENTITIES = ("curry", "meet-split", "join-split")


def verify_heyting_identities(f: Frame) -> list:
    """Exhaustively check the three residuum identities; returns violations.

    curry       : (x /\\ y) -> z == x -> (y -> z)
    meet-split  : x -> (y /\\ z) == (x -> y) /\\ (x -> z)
    join-split  : (x \\/ y) -> z == (x -> z) /\\ (y -> z)
    """
    violations = []
    n = f.size
    for x in range(n):
        curry_l = f.imp[f.meet[x, :][:, None], np.arange(n)[None, :]]
        curry_r = f.imp[x, f.imp]
        ms_l = f.imp[x, f.meet]
        ms_r = f.meet[f.imp[x, :][:, None], f.imp[x, :][None, :]]
        js_l = f.imp[f.join[x, :][:, None], np.arange(n)[None, :]]
        js_r = f.meet[f.imp[x, :][None, :], f.imp]
        for name, lhs, rhs in (
            ("curry", curry_l, curry_r),
            ("meet-split", ms_l, ms_r),
            ("join-split", js_l, js_r),
        ):
            if not np.array_equal(lhs, rhs):
                for y, z in np.argwhere(lhs != rhs):
                    violations.append(
                        {"identity": name, "witness": [x, int(y), int(z)]}
                    )
    violations.sort(key=lambda v: (v["identity"], v["witness"]))
    return violations


def meet_subset(f: Frame, xs) -> int:
    return f.meet_all(xs)


def join_subset(f: Frame, xs) -> int:
    return f.join_all(xs)


def frame_from_json(doc: dict, carrier_cap: int = DEFAULT_CARRIER_CAP) -> Frame:
    if doc.get("kind") != "frame":
        raise FrameError(f"expected kind 'frame', got {doc.get('kind')!r}")
    return build_frame(doc["leq"], labels=doc.get("labels"), carrier_cap=carrier_cap)
