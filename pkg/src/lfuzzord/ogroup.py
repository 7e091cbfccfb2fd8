"""Groups carrying a frame-valued order compatible with translation.

The compatibility axiom (FOG) says every two-sided translation is monotone:
``e(x, y) <= e(b + x + a, b + y + a)``; valid structures actually satisfy it
with equality, and the checker verifies both forms.

Infinite carriers are never quantified over silently: every verdict over a
free abelian group carries a :class:`CertStatus` naming the window it was
established on.  Operations that need a window fail loudly rather than
auto-expanding it.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .frame import Frame, SizeLimitExceeded
from .fuzzy_order import (
    FuzzySubset,
    LatticeOpResult,
    LOrderedSet,
    MultipleCertifiers,
    check_axioms,
    is_monotone,
)
from .groups import (
    FiniteGroup,
    FreeAbelian,
    FuncMap,
    TableMap,
    Window,
    WindowMissing,
    as_hom,
    domain_points,
    is_homomorphism,
)


class SupportOutsideWindow(ValueError):
    pass


class PreconditionUnmet(ValueError):
    pass


class ConeAxiomsFailed(ValueError):
    def __init__(self, violations):
        self.violations = violations
        super().__init__(f"cone axioms violated: {violations[:3]}")


class BoundViolation(ValueError):
    pass


class ASetInvalid(ValueError):
    pass


class NotAHomomorphism(ValueError):
    pass


class LatticeOpMissing(ValueError):
    pass


class HypothesisFailed(ValueError):
    def __init__(self, conjunct, i=None):
        self.conjunct = conjunct
        self.i = i
        super().__init__(f"hypothesis conjunct {conjunct!r}"
                         + (f" at index {i}" if i is not None else ""))


class DecompositionUnverified(RuntimeError):
    """The constructive decomposition failed its own postcondition; this
    signals an implementation bug, never bad input."""


@dataclass(frozen=True)
class CertStatus:
    """How a verdict was established.

    ``certified`` means exhaustive over a finite carrier; ``window`` means
    exhaustive over the recorded box of an infinite carrier;
    ``not-found-in-window`` marks a failed search at that scope; ``sampled``
    records the seed and sample count.
    """
    kind: str
    window: Window | None = None
    seed: int | None = None
    count: int | None = None

    def to_json(self):
        doc = {"kind": self.kind}
        if self.window is not None:
            doc["window"] = self.window.to_json()
        if self.seed is not None:
            doc["seed"] = self.seed
        if self.count is not None:
            doc["count"] = self.count
        return doc


CERTIFIED = CertStatus("certified")


@dataclass
class Report:
    """Uniform check outcome: ok iff no violations were recorded."""
    name: str
    ok: bool = True
    violations: list = field(default_factory=list)
    status: CertStatus = CERTIFIED
    details: dict = field(default_factory=dict)

    def add(self, kind, witness):
        self.ok = False
        self.violations.append({"kind": kind, "witness": witness})

    def to_json(self):
        return {"name": self.name, "ok": self.ok,
                "violations": self.violations,
                "status": self.status.to_json(),
                "details": {k: _jsonable(v) for k, v in self.details.items()}}


def _jsonable(v):
    if isinstance(v, (bool, int, float, str, type(None))):
        return v
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    if isinstance(v, np.integer):
        return int(v)
    if hasattr(v, "to_json"):
        return v.to_json()
    return repr(v)


class LOrderedGroup:
    """A group backend together with a frame-valued order evaluator.

    Finite backends carry an explicit ``size x size`` table; free abelian
    backends derive ``e(a, b) = S(b - a)`` from a cone map, which keeps the
    evaluator total on the whole group.
    """

    def __init__(self, backend, frame: Frame, e_table=None, cone=None):
        self.backend = backend
        self.frame = frame
        self.cone = cone
        if isinstance(backend, FiniteGroup):
            if e_table is None:
                if cone is None:
                    raise ValueError("finite group needs an e table or a cone")
                e_table = [[cone.value(backend.sub(b, a))
                            for b in range(backend.size)]
                           for a in range(backend.size)]
            self.e_table = np.asarray(e_table, dtype=np.int16)
            if self.e_table.shape != (backend.size, backend.size):
                raise ValueError("e table shape mismatch")
            self.e_table.setflags(write=False)
        else:
            if cone is None:
                raise ValueError("free abelian group needs a cone map")
            self.e_table = None

    @property
    def zero(self):
        return self.backend.zero

    def e(self, a, b) -> int:
        if self.e_table is not None:
            return int(self.e_table[a, b])
        return self.cone.value(self.backend.sub(b, a))

    def e_pairs(self, A, B) -> np.ndarray:
        """Vectorized e over paired point arrays."""
        if self.e_table is not None:
            return self.e_table[np.asarray(A), np.asarray(B)]
        diff = np.asarray(B, dtype=np.int64) - np.asarray(A, dtype=np.int64)
        return self.cone.values_at(diff.reshape(-1, self.backend.rank))

    def as_lorder(self, pts) -> LOrderedSet:
        """The order restricted to a finite point list, as an LOrderedSet."""
        return LOrderedSet(self.frame, e_matrix(self, pts))

    def to_json(self):
        doc = self.backend.to_json()
        doc["frame"] = self.frame.to_json()
        if self.e_table is not None:
            doc["e"] = self.e_table.astype(int).tolist()
        if self.cone is not None and hasattr(self.cone, "to_json"):
            doc["cone"] = self.cone.to_json(self.frame)
        return doc


def e_matrix(G: LOrderedGroup, pts) -> np.ndarray:
    """E[i, j] = e(pts[i], pts[j]) as an int16 matrix."""
    n = len(pts)
    if G.e_table is not None:
        idx = np.asarray(pts, dtype=np.int64)
        return np.asarray(G.e_table[idx[:, None], idx[None, :]])
    P = np.asarray(pts, dtype=np.int64)
    diff = P[None, :, :] - P[:, None, :]
    return G.cone.values_at(diff.reshape(-1, G.backend.rank)).reshape(n, n)


class BoxedView:
    """Precomputed order data over a finite verification domain.

    For finite backends the domain is the whole carrier; for free abelian
    backends it is the window box.  ``crisp_join``/``crisp_meet`` find least
    upper / greatest lower bounds *among box points* (the arguments may lie
    outside the box, since the evaluator is total).
    """

    def __init__(self, G: LOrderedGroup, window: Window | None):
        self.G = G
        self.window = window
        self.pts = domain_points(G.backend, window)
        self.index = {p: i for i, p in enumerate(self.pts)}
        self.E = e_matrix(G, self.pts)
        self.crisp = np.asarray(self.E == G.frame.top)
        # any linear extension: sort by how many points sit below
        self._asc = np.argsort(self.crisp.sum(axis=0), kind="stable")
        self._desc = np.argsort(self.crisp.sum(axis=1), kind="stable")

    @property
    def status(self) -> CertStatus:
        if isinstance(self.G.backend, FiniteGroup):
            return CERTIFIED
        return CertStatus("window", self.window)

    def e_from(self, u) -> np.ndarray:
        """Vector of e(u, p) over box points."""
        if self.G.e_table is not None:
            return np.asarray(self.G.e_table[u, np.asarray(self.pts)])
        P = np.asarray(self.pts, dtype=np.int64)
        return self.G.cone.values_at(P - np.asarray(u, dtype=np.int64))

    def e_to(self, u) -> np.ndarray:
        """Vector of e(p, u) over box points."""
        if self.G.e_table is not None:
            return np.asarray(self.G.e_table[np.asarray(self.pts), u])
        P = np.asarray(self.pts, dtype=np.int64)
        return self.G.cone.values_at(np.asarray(u, dtype=np.int64) - P)

    def crisp_join(self, u, v):
        top = self.G.frame.top
        ub = (self.e_from(u) == top) & (self.e_from(v) == top)
        if not ub.any():
            return None
        first = self._asc[int(np.argmax(ub[self._asc]))]
        if not self.crisp[first, ub].all():
            return None
        return self.pts[first]

    def crisp_meet(self, u, v):
        top = self.G.frame.top
        lb = (self.e_to(u) == top) & (self.e_to(v) == top)
        if not lb.any():
            return None
        first = self._desc[int(np.argmax(lb[self._desc]))]
        if not self.crisp[lb, first].all():
            return None
        return self.pts[first]


def check_fog(G: LOrderedGroup, window: Window | None = None) -> Report:
    """Verify E1-E3, translation monotonicity and its equality form.

    Finite backends run the full quadruple loop; free abelian groups
    quantify translations by their two-sided sum, which covers every
    ``(a, b)`` pair in the window.
    """
    box = BoxedView(G, window)
    rep = Report("fog", status=box.status)
    axioms = check_axioms(G.as_lorder(box.pts))
    for v in axioms:
        rep.add(v["axiom"], [box.pts[i] for i in v["witness"]])
    F = G.frame
    if isinstance(G.backend, FiniteGroup):
        n = G.backend.size
        cay = G.backend.cayley
        for a in range(n):
            for b in range(n):
                p = cay[cay[b, :], a]            # x |-> b + x + a
                Ep = box.E[np.ix_(p, p)]
                if not np.array_equal(Ep, box.E):
                    bad = np.argwhere(~np.asarray(F.leq[box.E, Ep]))
                    for x, y in bad[:3]:
                        rep.add("FOG", [int(x), int(y), a, b])
                    for x, y in np.argwhere(Ep != box.E)[:3]:
                        rep.add("FOG-eq", [int(x), int(y), a, b])
    else:
        P = np.asarray(box.pts, dtype=np.int64)
        for c in window.doubled().points():
            Q = P + np.asarray(c, dtype=np.int64)
            diff = Q[None, :, :] - Q[:, None, :]
            Ec = G.cone.values_at(
                diff.reshape(-1, G.backend.rank)).reshape(len(P), len(P))
            if not np.array_equal(Ec, box.E):
                for x, y in np.argwhere(~np.asarray(F.leq[box.E, Ec]))[:3]:
                    rep.add("FOG", [box.pts[x], box.pts[y], c])
                for x, y in np.argwhere(Ec != box.E)[:3]:
                    rep.add("FOG-eq", [box.pts[x], box.pts[y], c])
    rep.violations.sort(key=lambda v: (v["kind"], str(v["witness"])))
    return rep


def negation_identity(G: LOrderedGroup, window: Window | None = None) -> Report:
    """e(x, y) == e(-y, -x), plus order reversal under fixed right argument:
    x <= y forces e(y, a) <= e(x, a)."""
    box = BoxedView(G, window)
    rep = Report("negation", status=box.status)
    F = G.frame
    neg = [G.backend.neg(p) for p in box.pts]
    for i, x in enumerate(box.pts):
        for j, y in enumerate(box.pts):
            if G.e(neg[j], neg[i]) != int(box.E[i, j]):
                rep.add("negation", [x, y])
    for i, j in np.argwhere(box.crisp):
        if not np.all(F.leq[box.E[j, :], box.E[i, :]]):
            a = int(np.argmin(np.asarray(F.leq[box.E[j, :], box.E[i, :]])))
            rep.add("reversal", [box.pts[i], box.pts[j], box.pts[a]])
    rep.violations.sort(key=lambda v: (v["kind"], str(v["witness"])))
    return rep


def translate_subset(backend, a, S: FuzzySubset) -> FuzzySubset:
    """(a + S)(y) = S(-a + y): shift the support left-by ``a``."""
    return FuzzySubset(S.frame, {backend.op(a, x): v
                                 for x, v in S.entries.items()})


def translate_subset_right(backend, S: FuzzySubset, a) -> FuzzySubset:
    return FuzzySubset(S.frame, {backend.op(x, a): v
                                 for x, v in S.entries.items()})


def negate_subset(backend, S: FuzzySubset) -> FuzzySubset:
    return FuzzySubset(S.frame, {backend.neg(x): v
                                 for x, v in S.entries.items()})


def sum_subsets(backend, S: FuzzySubset, T: FuzzySubset) -> FuzzySubset:
    """(S + T)(y) = \\/_{y1 + y2 = y} S(y1) /\\ T(y2), over the supports."""
    F = S.frame
    out = {}
    for x, sv in S.entries.items():
        for y, tv in T.entries.items():
            z = backend.op(x, y)
            out[z] = int(F.join[out.get(z, F.bottom), F.meet[sv, tv]])
    return FuzzySubset(F, out)


def _group_profile(G, box, S, side) -> np.ndarray:
    F = G.frame
    R = np.full(len(box.pts), F.top, dtype=np.int16)
    for y, v in S.entries.items():
        row = box.E[box.index[y], :] if side == "join" else box.E[:, box.index[y]]
        R = F.meet[R, F.imp[v, row]]
    return R


def group_join(G: LOrderedGroup, S: FuzzySubset,
               window: Window | None = None) -> LatticeOpResult:
    """Certified fuzzy join over the verification domain.

    The support must lie inside the window; off-support points contribute
    nothing to the defining bound, so the certificate equality quantified
    over the box is exact there.
    """
    box = BoxedView(G, window)
    for y in S.entries:
        if y not in box.index:
            raise SupportOutsideWindow(f"support point {y} outside domain")
    R = _group_profile(G, box, S, "join")
    cands = [i for i in range(len(box.pts))
             if np.array_equal(box.E[i, :], R)]
    if len(cands) > 1:
        raise MultipleCertifiers(f"{[box.pts[i] for i in cands]}")
    if not cands:
        status = (CertStatus("not-found-in-window", window)
                  if window is not None else CERTIFIED)
        return LatticeOpResult(False, status=status)
    i = cands[0]
    cert = {box.pts[j]: int(R[j]) for j in range(len(box.pts))}
    return LatticeOpResult(True, box.pts[i], cert, box.status)


def group_meet(G: LOrderedGroup, S: FuzzySubset,
               window: Window | None = None) -> LatticeOpResult:
    box = BoxedView(G, window)
    for y in S.entries:
        if y not in box.index:
            raise SupportOutsideWindow(f"support point {y} outside domain")
    R = _group_profile(G, box, S, "meet")
    cands = [i for i in range(len(box.pts))
             if np.array_equal(box.E[:, i], R)]
    if len(cands) > 1:
        raise MultipleCertifiers(f"{[box.pts[i] for i in cands]}")
    if not cands:
        status = (CertStatus("not-found-in-window", window)
                  if window is not None else CERTIFIED)
        return LatticeOpResult(False, status=status)
    i = cands[0]
    cert = {box.pts[j]: int(R[j]) for j in range(len(box.pts))}
    return LatticeOpResult(True, box.pts[i], cert, box.status)


def verify_sum_law(G: LOrderedGroup, S: FuzzySubset, T: FuzzySubset,
                   window: Window | None = None) -> Report:
    """join(S + T) == join S + join T, and the same for meets."""
    jS, jT = group_join(G, S, window), group_join(G, T, window)
    mS, mT = group_meet(G, S, window), group_meet(G, T, window)
    if not (jS and jT and mS and mT):
        raise PreconditionUnmet("component join/meet missing")
    box_status = jS.status
    rep = Report("sum-law", status=box_status)
    ST = sum_subsets(G.backend, S, T)
    jST = group_join(G, ST, window)
    if not jST or jST.element != G.backend.op(jS.element, jT.element):
        rep.add("join-sum", {"got": jST.element if jST else None,
                             "want": G.backend.op(jS.element, jT.element)})
    mST = group_meet(G, ST, window)
    if not mST or mST.element != G.backend.op(mS.element, mT.element):
        rep.add("meet-sum", {"got": mST.element if mST else None,
                             "want": G.backend.op(mS.element, mT.element)})
    rep.details = {"join": jST.element if jST else None,
                   "meet": mST.element if mST else None}
    return rep


def cone_of_group(G: LOrderedGroup) -> FuncMap:
    """The canonical cone read back through the evaluator: x |-> e(0, x)."""
    zero = G.backend.zero

    def vec(pts):
        pts = np.asarray(pts, dtype=np.int64)
        if G.e_table is not None:
            return np.asarray(G.e_table[zero, pts])
        return G.cone.values_at(pts - np.asarray(zero, dtype=np.int64))

    return FuncMap(lambda x: G.e(zero, x), vec)


def positive_cone(G: LOrderedGroup, S) -> FuncMap:
    """S^+(x) = S(x) /\\ e(0, x)."""
    F, zero = G.frame, G.backend.zero
    return FuncMap(lambda x: int(F.meet[S.value(x), G.e(zero, x)]))


CONE_AXIOMS = ("subadditive", "antisymmetric-at-top", "identity-at-top",
               "conjugation-invariant")


def validate_cone_axioms(backend, frame: Frame, S,
                         window: Window | None = None) -> Report:
    """The three properties that make a map the cone of some order:
    subadditivity, top-antisymmetry, and normalized identity value with
    conjugation invariance."""
    pts = domain_points(backend, window)
    status = CERTIFIED if isinstance(backend, FiniteGroup) else CertStatus("window", window)
    rep = Report("cone-axioms", status=status)
    top = frame.top
    if S.value(backend.zero) != top:
        rep.add("identity-at-top", backend.zero)
    for x in pts:
        if x != backend.zero and S.value(x) == top and S.value(backend.neg(x)) == top:
            rep.add("antisymmetric-at-top", x)
    for x in pts:
        sx = S.value(x)
        for y in pts:
            if not frame.leq[frame.meet[sx, S.value(y)], S.value(backend.op(x, y))]:
                rep.add("subadditive", [x, y])
            if S.value(backend.op(backend.op(x, y), backend.neg(x))) != S.value(y):
                rep.add("conjugation-invariant", [x, y])
    rep.violations.sort(key=lambda v: (v["kind"], str(v["witness"])))
    return rep


def order_from_cone(backend, frame: Frame, S,
                    window: Window | None = None) -> LOrderedGroup:
    """Build the group order e(a, b) = S(b - a); the cone axioms are
    validated first and a failure names the violated clause."""
    rep = validate_cone_axioms(backend, frame, S, window)
    if not rep.ok:
        raise ConeAxiomsFailed(rep.violations)
    return LOrderedGroup(backend, frame, cone=S)


def conjugation_closure(backend, S, pts, frame: Frame):
    """x |-> \\/_a S(a + x - a); collapses to S itself on abelian carriers."""
    if backend.is_abelian():
        return {x: S.value(x) for x in pts}
    out = {}
    for x in pts:
        acc = frame.bottom
        for a in pts:
            acc = int(frame.join[acc, S.value(backend.op(backend.op(a, x),
                                                         backend.neg(a)))])
        out[x] = acc
    return out


def cone_closure(backend, frame: Frame, S,
                 window: Window | None = None) -> tuple[TableMap, Report]:
    """Close a seed map into a cone: conjugation closure followed by the
    least fixpoint of the factorization join.

    The fixpoint is a monotone operator on the finite lattice of maps over
    the domain, so iteration terminates; on a window, factorizations are
    restricted to sums that stay inside the box and the verdict is
    window-certified.
    """
    pts = domain_points(backend, window)
    index = {p: i for i, p in enumerate(pts)}
    top = frame.top
    if S.value(backend.zero) != top:
        raise PreconditionUnmet("seed must be top at the identity")
    alpha = frame.bottom
    for x in pts:
        if x == backend.zero:
            continue
        v = S.value(x)
        if v == top:
            raise BoundViolation(f"seed is top at nonzero {x}")
        alpha = int(frame.join[alpha, v])
    if alpha == top:
        raise BoundViolation("no bounding value below top covers the seed")

    conj = conjugation_closure(backend, S, pts, frame)
    T = np.array([conj[p] for p in pts], dtype=np.int16)
    sums = []
    for i, p in enumerate(pts):
        for j, q in enumerate(pts):
            k = index.get(backend.op(p, q))
            if k is not None:
                sums.append((i, j, k))
    max_iters = len(pts) * frame.size + 2
    for _ in range(max_iters):
        changed = False
        for i, j, k in sums:
            v = frame.join[T[k], frame.meet[T[i], T[j]]]
            if v != T[k]:
                T[k] = v
                changed = True
        if not changed:
            break
    else:
        raise RuntimeError("fixpoint failed to stabilize")

    closed = TableMap({p: int(v) for p, v in zip(pts, T)})
    status = CERTIFIED if isinstance(backend, FiniteGroup) else CertStatus("window", window)
    rep = Report("cone-closure", status=status)
    if closed.value(backend.zero) != top:
        rep.add("identity-at-top", backend.zero)
    for x in pts:
        if (x != backend.zero and closed.value(x) == top
                and closed.value(backend.neg(x)) == top):
            rep.add("antisymmetric-at-top", x)
    for i, j, k in sums:
        if not frame.leq[frame.meet[T[i], T[j]], T[k]]:
            rep.add("subadditive", [pts[i], pts[j]])
    for i, p in enumerate(pts):
        for j, q in enumerate(pts):
            k = index.get(backend.op(backend.op(p, q), backend.neg(p)))
            if k is not None and T[k] != T[j]:
                rep.add("conjugation-invariant", [p, q])
    rep.details["bound"] = alpha
    return closed, rep


def cone_extension(backend, frame: Frame, S, A, alpha: int,
                   window: Window | None = None) -> tuple[TableMap, Report]:
    """Promote a closed seed to top on a positive-only, sum-closed set A.

    A must avoid the identity and its own negatives; the seed must sit at
    ``alpha`` on A and at most ``alpha`` off A.  The four membership cases
    of the subadditivity argument are checked separately.
    """
    pred = (A.__contains__ if isinstance(A, (set, frozenset)) else A)
    pts = domain_points(backend, window)
    pt_set = set(pts)
    in_A = {p for p in pts if pred(p)}
    if pred(backend.zero):
        raise ASetInvalid("identity belongs to A")
    for x in in_A:
        if pred(backend.neg(x)):
            raise ASetInvalid(f"A meets -A at {x}")
    for x in in_A:
        for y in in_A:
            s = backend.op(x, y)
            if s in pt_set and not pred(s):
                raise ASetInvalid(f"A not closed under + at ({x}, {y})")
    for x in in_A:
        if S.value(x) != alpha:
            raise PreconditionUnmet(f"seed must equal the level on A, bad at {x}")
    for x in pts:
        if x != backend.zero and x not in in_A:
            if not frame.leq[S.value(x), alpha]:
                raise PreconditionUnmet(f"seed exceeds the level off A at {x}")

    T, _ = cone_closure(backend, frame, S, window)
    H = TableMap({p: (frame.top if p in in_A else T.value(p)) for p in pts})
    status = CERTIFIED if isinstance(backend, FiniteGroup) else CertStatus("window", window)
    rep = Report("cone-extension", status=status)
    cases = {1: 0, 2: 0, 3: 0, 4: 0}
    index = pt_set
    for x in pts:
        for y in pts:
            s = backend.op(x, y)
            if s not in index:
                continue
            case = {(False, False): 1, (False, True): 2,
                    (True, False): 3, (True, True): 4}[(x in in_A, y in in_A)]
            cases[case] += 1
            if not frame.leq[frame.meet[H.value(x), H.value(y)], H.value(s)]:
                rep.add(f"case-{case}", [x, y])
    if H.value(backend.zero) != frame.top:
        rep.add("identity-at-top", backend.zero)
    for x in pts:
        if (x != backend.zero and H.value(x) == frame.top
                and H.value(backend.neg(x)) == frame.top):
            rep.add("antisymmetric-at-top", x)
    for x in pts:
        for y in pts:
            k = backend.op(backend.op(x, y), backend.neg(x))
            if k in index and H.value(k) != H.value(y):
                rep.add("conjugation-invariant", [x, y])
    rep.details["cases"] = cases
    return H, rep


def monotone_hom_equivalence(G: LOrderedGroup, H: LOrderedGroup, f,
                             window: Window | None = None) -> Report:
    """Three readings of order compatibility for a group homomorphism --
    cone preservation at the identity, monotonicity, and image-cone
    containment -- evaluated separately and required to agree."""
    if G.frame != H.frame:
        raise ValueError("both groups must share one truth-value frame")
    pts = domain_points(G.backend, window)
    ok, wit = is_homomorphism(f, G.backend, H.backend, pts)
    if not ok:
        raise NotAHomomorphism(f"not a homomorphism at {wit}")
    fn = as_hom(f)
    F = G.frame
    gz, hz = G.backend.zero, H.backend.zero
    status = CERTIFIED if isinstance(G.backend, FiniteGroup) else CertStatus("window", window)
    rep = Report("hom-equivalence", status=status)

    cond_i, wit_i = True, None
    for x in pts:
        if not F.leq[G.e(gz, x), H.e(hz, fn(x))]:
            cond_i, wit_i = False, x
            break
    cond_ii, wit_ii = True, None
    for x in pts:
        for y in pts:
            if not F.leq[G.e(x, y), H.e(fn(x), fn(y))]:
                cond_ii, wit_ii = False, (x, y)
                break
        if not cond_ii:
            break
    fibers = {}
    for x in pts:
        y = fn(x)
        fibers[y] = int(F.join[fibers.get(y, F.bottom), G.e(gz, x)])
    cond_iii, wit_iii = True, None
    for y, v in sorted(fibers.items(), key=lambda kv: str(kv[0])):
        if not F.leq[v, H.e(hz, y)]:
            cond_iii, wit_iii = False, y
            break
    rep.details = {"cone-at-identity": cond_i, "monotone": cond_ii,
                   "image-cone-contained": cond_iii,
                   "witnesses": [wit_i, wit_ii, wit_iii]}
    if not (cond_i == cond_ii == cond_iii):
        rep.add("equivalence", [cond_i, cond_ii, cond_iii])
    rep.details["all-hold"] = cond_i and cond_ii and cond_iii
    return rep


def automorphism_group(P: LOrderedSet, cap: int = 7):
    """Order automorphisms (bijections monotone both ways) under composition,
    with the pointwise-infimum order between them.

    Returns ``(group, perms)`` where ``perms[i]`` is the permutation behind
    carrier element ``i``.
    """
    if P.size > cap:
        raise SizeLimitExceeded(f"carrier {P.size} exceeds factorial guard {cap}")
    perms = []
    for p in itertools.permutations(range(P.size)):
        inv = [0] * P.size
        for i, v in enumerate(p):
            inv[v] = i
        if is_monotone(list(p), P, P) and is_monotone(inv, P, P):
            perms.append(p)
    compose = lambda f, g: tuple(f[g[i]] for i in range(P.size))
    backend, elems = FiniteGroup.from_operation(perms, compose)
    F = P.frame
    e_hat = [[F.meet_all(int(P.e[f[x], g[x]]) for x in range(P.size))
              for g in elems] for f in elems]
    G = LOrderedGroup(backend, F, e_table=e_hat)
    rep = check_fog(G)
    if not rep.ok:
        raise RuntimeError(f"automorphism structure failed validation: {rep.violations}")
    return G, elems


def distributivity_criterion(G: LOrderedGroup, a, S: FuzzySubset,
                             window: Window | None = None) -> Report:
    """The lattice equality a /\\ join S == join(a /\\ S) against its
    elementwise residuated reformulation; the two verdicts must agree."""
    box = BoxedView(G, window)
    jS = group_join(G, S, window)
    if not jS:
        raise PreconditionUnmet("join of S not certified on the domain")
    J = jS.element
    F = G.frame
    bk = G.backend

    def cmeet(u, v):
        m = box.crisp_meet(u, v)
        if m is None:
            raise LatticeOpMissing(f"meet of {u}, {v} not window-certifiable")
        return m

    aJ = cmeet(a, J)
    meet_map = {}
    for y, v in S.items():
        key = cmeet(a, y)
        meet_map[key] = int(F.join[meet_map.get(key, F.bottom), v])
    jaS = group_join(G, FuzzySubset(F, meet_map), window)
    lhs_holds = bool(jaS) and jaS.element == aJ

    rhs_holds = True
    witness = None
    for x in box.pts:
        left = F.top
        right = F.top
        for y, v in S.items():
            left = F.meet[left, F.imp[v, G.e(x, bk.sub(aJ, cmeet(a, y)))]]
            right = F.meet[right, F.imp[v, G.e(x, bk.sub(J, y))]]
        if not F.leq[left, right]:
            rhs_holds = False
            witness = x
            break
    rep = Report("distributivity-criterion", status=box.status)
    rep.details = {"lattice-equality": lhs_holds, "pointwise-bound": rhs_holds,
                   "witness": witness}
    if lhs_holds != rhs_holds:
        rep.add("equivalence", [lhs_holds, rhs_holds])
    return rep


def power_identity(G: LOrderedGroup, z, n: int,
                   window: Window | None = None) -> Report:
    """e(z, 0) == e(nz \\/ 0, (n-1)(z \\/ 0)), plus the crisp cancellation
    nz <= 0 forces z <= 0."""
    box = BoxedView(G, window)
    bk, F = G.backend, G.frame
    zero = bk.zero
    nz = bk.scale(z, n)
    j1 = box.crisp_join(nz, zero)
    j0 = box.crisp_join(z, zero)
    if j1 is None or j0 is None:
        raise LatticeOpMissing("needed binary join not certifiable in window")
    q = bk.scale(j0, n - 1)
    lhs, rhs = G.e(z, zero), G.e(j1, q)
    rep = Report("power-identity", status=box.status)
    rep.details = {"lhs": lhs, "rhs": rhs}
    if lhs != rhs:
        rep.add("identity", {"z": z, "n": n, "lhs": lhs, "rhs": rhs})
    if G.e(nz, zero) == F.top and G.e(z, zero) != F.top:
        rep.add("cancellation", {"z": z, "n": n})
    return rep


def power_identity_pair(G: LOrderedGroup, x, y, n: int,
                        window: Window | None = None) -> Report:
    """e(x, y) == e(nx \\/ ny, (n-1)(x \\/ y) + y) for commuting x, y, plus
    crisp cancellation nx <= ny forces x <= y."""
    bk, F = G.backend, G.frame
    if bk.op(x, y) != bk.op(y, x):
        raise PreconditionUnmet(f"{x} and {y} do not commute")
    box = BoxedView(G, window)
    nx, ny = bk.scale(x, n), bk.scale(y, n)
    jn = box.crisp_join(nx, ny)
    j = box.crisp_join(x, y)
    if jn is None or j is None:
        raise LatticeOpMissing("needed binary join not certifiable in window")
    rhs_pt = bk.op(bk.scale(j, n - 1), y)
    lhs, rhs = G.e(x, y), G.e(jn, rhs_pt)
    rep = Report("power-identity-pair", status=box.status)
    rep.details = {"lhs": lhs, "rhs": rhs}
    if lhs != rhs:
        rep.add("identity", {"x": x, "y": y, "n": n, "lhs": lhs, "rhs": rhs})
    if G.e(nx, ny) == F.top and G.e(x, y) != F.top:
        rep.add("cancellation", {"x": x, "y": y, "n": n})
    return rep


def _riesz_hypothesis(G: LOrderedGroup, a, bs, t):
    F, zero = G.frame, G.backend.zero
    if not F.leq[t, G.e(zero, a)]:
        raise HypothesisFailed("target-positive")
    total = zero
    for i, b in enumerate(bs):
        if not F.leq[t, G.e(zero, b)]:
            raise HypothesisFailed("part-positive", i)
        total = G.backend.op(total, b)
    if not F.leq[t, G.e(a, total)]:
        raise HypothesisFailed("sum-bound")


def riesz_decompose(G: LOrderedGroup, a, bs, t,
                    window: Window | None = None) -> list:
    """Split a positive element below a sum into positive parts below each
    summand, at confidence t, by the constructive recursion
    ``a_n = a /\\ b_n`` then recurse on ``0 \\/ (a - b_n)``.

    The postcondition (exact sum and per-part bounds at t) is re-verified on
    the output; a failure there raises DecompositionUnverified.
    """
    if not bs:
        raise PreconditionUnmet("empty summand list")
    box = BoxedView(G, window)
    _riesz_hypothesis(G, a, bs, t)
    bk, F = G.backend, G.frame

    def rec(u, parts):
        if len(parts) == 1:
            return [u]
        bn = parts[-1]
        an = box.crisp_meet(u, bn)
        if an is None:
            raise LatticeOpMissing(f"meet of {u}, {bn} not window-certifiable")
        nxt = box.crisp_join(bk.zero, bk.sub(u, bn))
        if nxt is None:
            raise LatticeOpMissing("residual join not window-certifiable")
        return rec(nxt, parts[:-1]) + [an]

    out = rec(a, list(bs))
    total = bk.zero
    for ai in out:
        total = bk.op(total, ai)
    if total != a:
        raise DecompositionUnverified(f"parts sum to {total}, not {a}")
    for i, (ai, bi) in enumerate(zip(out, bs)):
        if not F.leq[t, F.meet[G.e(bk.zero, ai), G.e(ai, bi)]]:
            raise DecompositionUnverified(f"part {i} fails its bound")
    return out


def riesz_oracle(G: LOrderedGroup, a, bs, t,
                 window: Window | None = None):
    """Brute-force feasibility: search window tuples for any valid
    decomposition, enumerating points in lexicographic order with exact
    per-part pruning.  Returns a decomposition or None."""
    pts = domain_points(G.backend, window)
    bk, F = G.backend, G.frame
    zero = bk.zero
    n = len(bs)

    def part_ok(p, b):
        return bool(F.leq[t, F.meet[G.e(zero, p), G.e(p, b)]])

    def rec(i, acc):
        if i == n - 1:
            last = bk.sub(a, acc)
            return [last] if part_ok(last, bs[-1]) else None
        for p in pts:
            if part_ok(p, bs[i]):
                r = rec(i + 1, bk.op(acc, p))
                if r is not None:
                    return [p] + r
        return None

    return rec(0, zero)


def riesz_meet_inequality(G: LOrderedGroup, a, b, c, t,
                          window: Window | None = None) -> Report:
    """t <= e(a /\\ (b + c), (a /\\ b) + (a /\\ c)) whenever t bounds the
    positivity of a, b, c."""
    bk, F = G.backend, G.frame
    zero = bk.zero
    for name, u in (("a", a), ("b", b), ("c", c)):
        if not F.leq[t, G.e(zero, u)]:
            raise PreconditionUnmet(f"{name} not positive at level t")
    box = BoxedView(G, window)

    def cmeet(u, v):
        m = box.crisp_meet(u, v)
        if m is None:
            raise LatticeOpMissing(f"meet of {u}, {v} not window-certifiable")
        return m

    lhs = cmeet(a, bk.op(b, c))
    rhs = bk.op(cmeet(a, b), cmeet(a, c))
    rep = Report("riesz-meet-inequality", status=box.status)
    val = G.e(lhs, rhs)
    rep.details = {"lhs-point": lhs, "rhs-point": rhs, "value": val}
    if not F.leq[t, val]:
        rep.add("inequality", {"a": a, "b": b, "c": c, "value": val})
    return rep
