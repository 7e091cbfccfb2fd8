"""L-ordered sets over a finite frame.

An L-ordered set is a finite carrier ``range(size)`` with a frame-valued
relation ``e`` satisfying

* E1: ``e(x, x) = top``,
* E2: ``e(x, y) /\\ e(y, z) <= e(x, z)``,
* E3: ``e(x, y) = e(y, x) = top`` forces ``x = y``.

Joins and meets of fuzzy subsets are found by full candidate enumeration:
``x0`` is the join of ``S`` exactly when ``e(x0, x)`` equals the profile
``/\\_y (S(y) -> e(y, x))`` at every carrier point, and that per-point
equality is kept as the certificate.  ``join_oracle``/``meet_oracle``
re-derive the same answers from the raw bound/least-bound conditions and are
deliberately written as plain scalar loops so the two routes share no code
path.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

import numpy as np

from .frame import Frame

DEFAULT_GUARD = 10**6
DEFAULT_SEED = 0xC0FFEE
DEFAULT_SAMPLES = 10**4


class FrameMismatch(ValueError):
    pass


class MultipleCertifiers(RuntimeError):
    """Two distinct elements certified the same join/meet: the structure is
    corrupted (impossible once E3 holds)."""


class SearchSpaceExceeded(RuntimeError):
    pass


class LOrderedSet:
    """Finite carrier with a frame-valued order relation.

    ``e`` is a ``size x size`` int16 matrix of frame element indices.  The
    constructor only checks shape/range; run :func:`check_axioms` to get the
    E1-E3 violation report.  Instances are immutable.
    """

    def __init__(self, frame: Frame, e):
        e = np.asarray(e, dtype=np.int16)
        if e.ndim != 2 or e.shape[0] != e.shape[1]:
            raise ValueError(f"e table must be square, got {e.shape}")
        if e.size and (e.min() < 0 or e.max() >= frame.size):
            raise FrameMismatch(
                f"e values must be frame indices < {frame.size}")
        self.frame = frame
        self.e = e
        self.size = e.shape[0]
        self.e.setflags(write=False)

    def to_json(self):
        return {"kind": "lorder", "frame": self.frame.to_json(),
                "e": self.e.astype(int).tolist()}

    def __repr__(self):
        return f"LOrderedSet(size={self.size}, frame={self.frame.size})"


def crisp_lorder(frame: Frame, leq) -> LOrderedSet:
    """Embed a classical poset: e = top where leq holds, bottom elsewhere."""
    leq = np.asarray(leq, dtype=bool)
    e = np.where(leq, frame.top, frame.bottom).astype(np.int16)
    return LOrderedSet(frame, e)


def check_axioms(P: LOrderedSet) -> list:
    """E1/E2/E3 violations with witnesses; empty list means valid."""
    F, e, n = P.frame, P.e, P.size
    violations = []
    for x in range(n):
        if e[x, x] != F.top:
            violations.append({"axiom": "E1", "witness": [x]})
    for y in range(n):
        step = F.meet[e[:, y][:, None], e[y, :][None, :]]
        bad = ~F.leq[step, e]
        for x, z in np.argwhere(bad):
            violations.append({"axiom": "E2", "witness": [int(x), y, int(z)]})
    crisp = e == F.top
    for x, y in np.argwhere(crisp & crisp.T & ~np.eye(n, dtype=bool)):
        if x < y:
            violations.append({"axiom": "E3", "witness": [int(x), int(y)]})
    violations.sort(key=lambda v: (v["axiom"], v["witness"]))
    return violations


def is_valid(P: LOrderedSet) -> bool:
    return not check_axioms(P)


def induced_crisp_order(P: LOrderedSet) -> np.ndarray:
    """The crisp partial order: pairs where e reaches the top."""
    return np.asarray(P.e == P.frame.top)


class FuzzySubset:
    """Finitely supported frame-valued map; absent points sit at bottom.

    Keys may be any hashable carrier point (ints for order carriers, tuples
    for group elements); the class is shared by both.
    """

    def __init__(self, frame: Frame, entries: dict | None = None):
        self.frame = frame
        self.entries = {}
        for k, v in (entries or {}).items():
            v = int(v)
            if v != frame.bottom:
                self.entries[k] = v

    def __call__(self, x) -> int:
        return self.entries.get(x, self.frame.bottom)

    def support(self):
        return sorted(self.entries)

    def items(self):
        return sorted(self.entries.items())

    def sup_value(self) -> int:
        return self.frame.join_all(self.entries.values())

    def __eq__(self, other):
        return (isinstance(other, FuzzySubset) and self.frame == other.frame
                and self.entries == other.entries)

    def __repr__(self):
        body = ", ".join(f"{k}:{self.frame.labels[v]}" for k, v in self.items())
        return f"FuzzySubset({{{body}}})"

    def to_json(self):
        return {"kind": "fsubset",
                "entries": {_point_key(k): self.frame.labels[v]
                            for k, v in self.items()}}


def _point_key(k):
    if isinstance(k, tuple):
        return ",".join(str(c) for c in k)
    return str(k)


def chi(frame: Frame, points) -> FuzzySubset:
    """Characteristic subset: top on the given points."""
    return FuzzySubset(frame, {p: frame.top for p in points})


def subset_union(S: FuzzySubset, T: FuzzySubset) -> FuzzySubset:
    F = S.frame
    keys = set(S.entries) | set(T.entries)
    return FuzzySubset(F, {k: int(F.join[S(k), T(k)]) for k in keys})


def subset_intersection(S: FuzzySubset, T: FuzzySubset) -> FuzzySubset:
    F = S.frame
    keys = set(S.entries) | set(T.entries)
    return FuzzySubset(F, {k: int(F.meet[S(k), T(k)]) for k in keys})


def down_closure(P: LOrderedSet, phi: FuzzySubset) -> FuzzySubset:
    """The fuzzy down-set: x |-> \\/_x' (phi(x') /\\ e(x, x'))."""
    F = P.frame
    out = {}
    for x in range(P.size):
        acc = F.bottom
        for xp, v in phi.entries.items():
            acc = int(F.join[acc, F.meet[v, P.e[x, xp]]])
        out[x] = acc
    return FuzzySubset(F, out)


def up_closure(P: LOrderedSet, phi: FuzzySubset) -> FuzzySubset:
    F = P.frame
    out = {}
    for x in range(P.size):
        acc = F.bottom
        for xp, v in phi.entries.items():
            acc = int(F.join[acc, F.meet[v, P.e[xp, x]]])
        out[x] = acc
    return FuzzySubset(F, out)


def image(f, A: FuzzySubset, target_points=None) -> FuzzySubset:
    """Direct image along a carrier map: y |-> \\/_{f(x)=y} A(x).

    ``f`` is a dict or callable on the support of ``A``.
    """
    F = A.frame
    fn = f.__getitem__ if isinstance(f, (dict, list)) else f
    out = {}
    for x, v in A.entries.items():
        y = fn(x)
        out[y] = int(F.join[out.get(y, F.bottom), v])
    return FuzzySubset(F, out)


@dataclass
class LatticeOpResult:
    """Outcome of a fuzzy join/meet search.

    ``certificate`` maps each checked point x to the common value of both
    sides of the defining equality (only when ``exists``).
    """
    exists: bool
    element: object = None
    certificate: dict = field(default_factory=dict)
    status: object = None

    def __bool__(self):
        return self.exists


def _join_profile(P: LOrderedSet, S: FuzzySubset) -> np.ndarray:
    """R[x] = /\\_y (S(y) -> e(y, x)); off-support terms are top."""
    F = P.frame
    R = np.full(P.size, F.top, dtype=np.int16)
    for y, v in S.entries.items():
        R = F.meet[R, F.imp[v, P.e[y, :]]]
    return R


def _meet_profile(P: LOrderedSet, S: FuzzySubset) -> np.ndarray:
    """R[x] = /\\_y (S(y) -> e(x, y))."""
    F = P.frame
    R = np.full(P.size, F.top, dtype=np.int16)
    for y, v in S.entries.items():
        R = F.meet[R, F.imp[v, P.e[:, y]]]
    return R


def join_candidates(P: LOrderedSet, S: FuzzySubset) -> list:
    R = _join_profile(P, S)
    return [x0 for x0 in range(P.size) if np.array_equal(P.e[x0, :], R)]


def meet_candidates(P: LOrderedSet, S: FuzzySubset) -> list:
    R = _meet_profile(P, S)
    return [x0 for x0 in range(P.size) if np.array_equal(P.e[:, x0], R)]


def _settle(P, S, cands, profile) -> LatticeOpResult:
    if len(cands) > 1:
        raise MultipleCertifiers(f"{len(cands)} certifiers {cands} for {S}")
    if not cands:
        return LatticeOpResult(False)
    x0 = cands[0]
    return LatticeOpResult(True, x0, {x: int(profile[x]) for x in range(P.size)})


def join(P: LOrderedSet, S: FuzzySubset) -> LatticeOpResult:
    """Fuzzy join by certificate search; unique by E3 or MultipleCertifiers."""
    return _settle(P, S, join_candidates(P, S), _join_profile(P, S))


def meet(P: LOrderedSet, S: FuzzySubset) -> LatticeOpResult:
    return _settle(P, S, meet_candidates(P, S), _meet_profile(P, S))


def join_oracle(P: LOrderedSet, S: FuzzySubset) -> LatticeOpResult:
    """Independent route: test the raw upper-bound/least conditions.

    Kept as plain scalar loops on purpose; must agree with :func:`join`
    everywhere.
    """
    F = P.frame
    found = []
    for x0 in range(P.size):
        ok = True
        for x in range(P.size):
            if not F.leq[S(x), P.e[x, x0]]:          # bound condition
                ok = False
                break
            acc = F.top
            for y in range(P.size):
                acc = F.meet[acc, F.imp[S(y), P.e[y, x]]]
            if not F.leq[acc, P.e[x0, x]]:           # least condition
                ok = False
                break
        if ok:
            found.append(x0)
    if len(found) > 1:
        raise MultipleCertifiers(f"{found} for {S}")
    if not found:
        return LatticeOpResult(False)
    return LatticeOpResult(True, found[0])


def meet_oracle(P: LOrderedSet, S: FuzzySubset) -> LatticeOpResult:
    F = P.frame
    found = []
    for x0 in range(P.size):
        ok = True
        for x in range(P.size):
            if not F.leq[S(x), P.e[x0, x]]:
                ok = False
                break
            acc = F.top
            for y in range(P.size):
                acc = F.meet[acc, F.imp[S(y), P.e[x, y]]]
            if not F.leq[acc, P.e[x, x0]]:
                ok = False
                break
        if ok:
            found.append(x0)
    if len(found) > 1:
        raise MultipleCertifiers(f"{found} for {S}")
    if not found:
        return LatticeOpResult(False)
    return LatticeOpResult(True, found[0])


def is_monotone(f, P: LOrderedSet, Q: LOrderedSet) -> bool:
    fn = f.__getitem__ if isinstance(f, (dict, list)) else f
    for x in range(P.size):
        for y in range(P.size):
            if not Q.frame.leq[P.e[x, y], Q.e[fn(x), fn(y)]]:
                return False
    return True


def monotone_witness(f, P: LOrderedSet, Q: LOrderedSet):
    fn = f.__getitem__ if isinstance(f, (dict, list)) else f
    for x in range(P.size):
        for y in range(P.size):
            if not Q.frame.leq[P.e[x, y], Q.e[fn(x), fn(y)]]:
                return (x, y)
    return None


def is_galois(f, g, P: LOrderedSet, Q: LOrderedSet) -> bool:
    """Adjoint pair test: both monotone and e_Q(f(x), y) == e_P(x, g(y))."""
    if not (is_monotone(f, P, Q) and is_monotone(g, Q, P)):
        return False
    fn = f.__getitem__ if isinstance(f, (dict, list)) else f
    gn = g.__getitem__ if isinstance(g, (dict, list)) else g
    for x in range(P.size):
        for y in range(Q.size):
            if Q.e[fn(x), y] != P.e[x, gn(y)]:
                return False
    return True


@dataclass
class AdjointReport:
    partner: object = None           # list (the found right adjoint) or None
    mode: str = "search"             # "search" or "preservation-only"
    monotone: bool = False
    preserves_joins: bool = True
    domain_complete: bool = True
    witness: object = None           # subset falsifying preservation, if any
    consistent: bool = True          # search verdict == preservation verdict

    @property
    def found(self):
        return self.partner is not None


def _all_subsets(frame: Frame, size: int):
    for values in itertools.product(range(frame.size), repeat=size):
        yield FuzzySubset(frame, dict(enumerate(values)))


def has_right_adjoint(f, P: LOrderedSet, Q: LOrderedSet,
                      guard: int = DEFAULT_GUARD) -> AdjointReport:
    """Search all maps Q -> P for an adjoint partner and cross-check against
    join preservation.

    When the map space exceeds the guard the search is skipped and only the
    preservation test runs (``mode = "preservation-only"``).
    """
    fn = f.__getitem__ if isinstance(f, (dict, list)) else f
    fl = [fn(x) for x in range(P.size)]
    rep = AdjointReport(monotone=is_monotone(fl, P, Q))

    rep.domain_complete = is_complete(P, guard=guard).holds
    preservation_computed = P.frame.size ** P.size <= guard
    if preservation_computed:
        for S in _all_subsets(P.frame, P.size):
            js = join(P, S)
            if not js:
                continue
            jq = join(Q, image(fl, S))
            if not jq or jq.element != fl[js.element]:
                rep.preserves_joins = False
                rep.witness = S
                break
    if P.size ** Q.size > guard:
        rep.mode = "preservation-only"
        return rep
    for g in itertools.product(range(P.size), repeat=Q.size):
        if is_galois(fl, list(g), P, Q):
            rep.partner = list(g)
            break
    if rep.domain_complete and preservation_computed:
        rep.consistent = (rep.found and rep.monotone) == rep.preserves_joins
    return rep


@dataclass
class CompletenessReport:
    holds: bool
    mode: str                 # "exhaustive" or "sampled"
    checked: int
    witness: object = None    # subset without a join/meet
    seed: int | None = None


def is_complete(P: LOrderedSet, guard: int = DEFAULT_GUARD,
                seed: int = DEFAULT_SEED,
                samples: int = DEFAULT_SAMPLES) -> CompletenessReport:
    """Do all fuzzy subsets have joins and meets?

    On a finite carrier every subset is finitely supported, so this single
    test answers both the completeness and the lattice-closure question.
    Exhaustive when ``|L| ** size <= guard``, else deterministic seeded
    sampling, with the mode recorded in the report.
    """
    total = P.frame.size ** P.size
    if total <= guard:
        count = 0
        for S in _all_subsets(P.frame, P.size):
            count += 1
            if not join(P, S) or not meet(P, S):
                return CompletenessReport(False, "exhaustive", count, S)
        return CompletenessReport(True, "exhaustive", count)
    rng = random.Random(seed)
    for i in range(samples):
        S = FuzzySubset(P.frame, {x: rng.randrange(P.frame.size)
                                  for x in range(P.size)})
        if not join(P, S) or not meet(P, S):
            return CompletenessReport(False, "sampled", i + 1, S, seed)
    return CompletenessReport(True, "sampled", samples, None, seed)


def is_L_lattice(P: LOrderedSet, guard: int = DEFAULT_GUARD,
                 seed: int = DEFAULT_SEED,
                 samples: int = DEFAULT_SAMPLES) -> CompletenessReport:
    """Alias of :func:`is_complete`: finite carriers collapse the two notions."""
    return is_complete(P, guard=guard, seed=seed, samples=samples)


def crisp_op_tables(P: LOrderedSet):
    """Binary meet/join tables of the induced crisp order, or None if the
    crisp reduct is not a lattice."""
    leq = induced_crisp_order(P)
    n = P.size
    cmeet = np.zeros((n, n), dtype=np.int16)
    cjoin = np.zeros((n, n), dtype=np.int16)
    for a in range(n):
        for b in range(n):
            lower = leq[:, a] & leq[:, b]
            glbs = [x for x in np.flatnonzero(lower) if np.all(~lower | leq[:, x])]
            upper = leq[a, :] & leq[b, :]
            lubs = [x for x in np.flatnonzero(upper) if np.all(~upper | leq[x, :])]
            if len(glbs) != 1 or len(lubs) != 1:
                return None
            cmeet[a, b] = glbs[0]
            cjoin[a, b] = lubs[0]
    return cmeet, cjoin


def scaled_subset(P: LOrderedSet, a: int, S: FuzzySubset, table) -> FuzzySubset:
    """(a op S)(y) = \\/ { S(x) : a op x = y } for a crisp op table."""
    F = P.frame
    out = {}
    for x, v in S.entries.items():
        y = int(table[a, x])
        out[y] = int(F.join[out.get(y, F.bottom), v])
    return FuzzySubset(F, out)


@dataclass
class DistributivityReport:
    status: str                      # "ok", "not-an-l-lattice"
    mode: str = "exhaustive"
    checked: int = 0
    meet_join_law: bool = True       # a /\ join S == join(a /\ S)
    join_meet_law: bool = True       # a \/ meet S == meet(a \/ S)
    restricted_meet_law: bool = True  # sup S = top: a /\ meet S == meet(a /\ S)
    restricted_join_law: bool = True  # sup S = top: a \/ join S == join(a \/ S)
    laws_agree: bool = True
    witness: object = None
    seed: int | None = None

    @property
    def distributive(self):
        return (self.status == "ok" and self.meet_join_law
                and self.join_meet_law)


def check_distributive(P: LOrderedSet, guard: int = DEFAULT_GUARD,
                       seed: int = DEFAULT_SEED,
                       samples: int = DEFAULT_SAMPLES) -> DistributivityReport:
    """Test the two distributive laws over all (a, S), plus the restricted
    variants that assume the subset reaches the top.

    The crisp binary operations are taken in the induced order, which is a
    lattice whenever the structure is an L-lattice.  The two unrestricted
    laws are reported separately together with whether their verdicts agree.
    """
    comp = is_complete(P, guard=guard, seed=seed, samples=samples)
    if not comp.holds:
        return DistributivityReport("not-an-l-lattice", comp.mode, comp.checked,
                                    witness=comp.witness)
    tables = crisp_op_tables(P)
    if tables is None:
        return DistributivityReport("not-an-l-lattice", comp.mode, comp.checked)
    cmeet, cjoin = tables
    F = P.frame
    rep = DistributivityReport("ok", mode=comp.mode, seed=seed)

    def instances():
        total = F.size ** P.size
        if total * P.size <= guard:
            for S in _all_subsets(F, P.size):
                for a in range(P.size):
                    yield a, S
        else:
            rep.mode = "sampled"
            rng = random.Random(seed)
            for _ in range(samples):
                S = FuzzySubset(F, {x: rng.randrange(F.size)
                                    for x in range(P.size)})
                yield rng.randrange(P.size), S

    for a, S in instances():
        rep.checked += 1
        jS, mS = join(P, S), meet(P, S)
        top_reached = S.sup_value() == F.top
        if jS:
            lhs = int(cmeet[a, jS.element])
            rhs = join(P, scaled_subset(P, a, S, cmeet))
            if not rhs or rhs.element != lhs:
                if rep.meet_join_law:
                    rep.meet_join_law = False
                    rep.witness = rep.witness or ("meet-join", a, S)
            lhs2 = int(cjoin[a, jS.element])
            rhs2 = join(P, scaled_subset(P, a, S, cjoin))
            if top_reached and (not rhs2 or rhs2.element != lhs2):
                rep.restricted_join_law = False
        if mS:
            lhs = int(cjoin[a, mS.element])
            rhs = meet(P, scaled_subset(P, a, S, cjoin))
            if not rhs or rhs.element != lhs:
                if rep.join_meet_law:
                    rep.join_meet_law = False
                    rep.witness = rep.witness or ("join-meet", a, S)
            lhs2 = int(cmeet[a, mS.element])
            rhs2 = meet(P, scaled_subset(P, a, S, cmeet))
            if top_reached and (not rhs2 or rhs2.element != lhs2):
                rep.restricted_meet_law = False
    rep.laws_agree = rep.meet_join_law == rep.join_meet_law
    return rep
