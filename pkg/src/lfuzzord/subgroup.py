"""Frame-valued subgroups, convexity, and quotients by filters.

An L-subgroup is a frame-valued map compatible with the group operation and
negation; a filter (normal + convex) determines a coset space carrying a
quotient order.  Everything a quotient theorem claims -- well-definedness of
the induced relation, the order axioms, the induced map being a filter with
a singleton level class -- is re-verified instance by instance here rather
than trusted; ``quotient_battery`` collects those checks so hypothesis-
dropping searches can watch them fail.

Window semantics: on free abelian carriers the value maps stay globally
evaluable (regions), so coset membership is exact, but quantifiers run over
the window and results are window-certified.  Maps tabulated only on the
window restrict sum checks to sums that stay inside; the report counts what
was skipped.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .frame import Frame
from .fuzzy_order import FuzzySubset
from .groups import FiniteGroup, FreeAbelian, FuncMap, TableMap, Window, as_hom, domain_points, is_homomorphism
from .ogroup import (
    CERTIFIED,
    BoxedView,
    CertStatus,
    LOrderedGroup,
    Report,
    check_fog,
)


class NotNormal(ValueError):
    pass


class NotAFilter(ValueError):
    def __init__(self, axiom, violations=None):
        self.axiom = axiom
        self.violations = violations or []
        super().__init__(f"not an L-filter: fails {axiom}")


class InfiniteIndex(ValueError):
    pass


class NotMonotone(ValueError):
    pass


def _safe_value(S, x):
    try:
        return S.value(x)
    except KeyError:
        return None


def _status_for(backend, window):
    return CERTIFIED if isinstance(backend, FiniteGroup) else CertStatus("window", window)


def is_L_subgroup(backend, frame: Frame, S,
                  window: Window | None = None) -> Report:
    """Subadditivity S(x) /\\ S(y) <= S(x+y) and symmetry S(x) = S(-x)."""
    pts = domain_points(backend, window)
    rep = Report("l-subgroup", status=_status_for(backend, window))
    skipped = 0
    for x in pts:
        sx = S.value(x)
        nx = _safe_value(S, backend.neg(x))
        if nx is None:
            skipped += 1
        elif sx != nx:
            rep.add("symmetry", x)
        for y in pts:
            target = _safe_value(S, backend.op(x, y))
            if target is None:
                skipped += 1
                continue
            if not frame.leq[frame.meet[sx, S.value(y)], target]:
                rep.add("subadditive", [x, y])
    rep.details["skipped"] = skipped
    rep.violations.sort(key=lambda v: (v["kind"], str(v["witness"])))
    return rep


def is_normal(backend, frame: Frame, S, window: Window | None = None) -> Report:
    """Conjugation bound S(y) <= S(x+y-x); for subgroups this also forces
    S(x) <= S(0) and commutation S(x+y) = S(y+x), both re-checked here."""
    pts = domain_points(backend, window)
    rep = is_L_subgroup(backend, frame, S, window)
    rep.name = "normal-l-subgroup"
    s0 = S.value(backend.zero)
    skipped = rep.details["skipped"]
    for x in pts:
        if not frame.leq[S.value(x), s0]:
            rep.add("below-identity-value", x)
        for y in pts:
            conj = _safe_value(S, backend.op(backend.op(x, y), backend.neg(x)))
            if conj is None:
                skipped += 1
                continue
            if not frame.leq[S.value(y), conj]:
                rep.add("conjugation", [x, y])
            xy = _safe_value(S, backend.op(x, y))
            yx = _safe_value(S, backend.op(y, x))
            if xy is not None and yx is not None and xy != yx:
                rep.add("sum-commutation", [x, y])
    rep.details["skipped"] = skipped
    rep.violations.sort(key=lambda v: (v["kind"], str(v["witness"])))
    return rep


def is_convex(S, G: LOrderedGroup, window: Window | None = None) -> Report:
    """Betweenness bound S(a) >= S(x) /\\ S(y) /\\ e(x,a) /\\ e(a,y).

    When S is a normal L-subgroup the one-sided criterion
    S(a) >= S(x) /\\ e(0,a) /\\ e(a,x) is evaluated too and the verdicts are
    required to agree.
    """
    box = BoxedView(G, window)
    F = G.frame
    pts = box.pts
    vals = np.array([S.value(p) for p in pts], dtype=np.int16)
    rep = Report("convex", status=box.status)
    direct = True
    for ia, a in enumerate(pts):
        pairwise = F.meet[F.meet[vals[:, None], vals[None, :]],
                          F.meet[box.E[:, ia][:, None], box.E[ia, :][None, :]]]
        if not np.asarray(F.leq[pairwise, vals[ia]]).all():
            direct = False
            x, y = map(int, np.argwhere(~np.asarray(F.leq[pairwise, vals[ia]]))[0])
            rep.add("betweenness", [pts[x], pts[y], a])
    rep.details["direct"] = direct

    normal_rep = is_normal(G.backend, F, S, window)
    if normal_rep.ok:
        zero_idx = box.index[G.backend.zero]
        one_sided = True
        for ia, a in enumerate(pts):
            bound = F.meet[F.meet[vals, np.full(len(pts), box.E[zero_idx, ia],
                                                dtype=np.int16)],
                           box.E[ia, :]]
            if not np.asarray(F.leq[bound, vals[ia]]).all():
                one_sided = False
                x = int(np.argmin(np.asarray(F.leq[bound, vals[ia]])))
                rep.add("one-sided", [pts[x], a])
                break
        rep.details["one-sided"] = one_sided
        if one_sided != direct:
            rep.add("criterion-mismatch", [direct, one_sided])
    rep.ok = not rep.violations
    return rep


def convex_hull(S, G: LOrderedGroup, window: Window | None = None,
                guard: int = 10**6, seed: int = 0xC0FFEE,
                samples: int = 200) -> tuple[TableMap, Report]:
    """Least convex superset: a |-> \\/_{x,y} S(x) /\\ S(y) /\\ e(x,a) /\\ e(a,y).

    The double join factors through the frame's distributivity into a meet
    of one-sided closures, which is how it is computed; convexity of the
    result and minimality against convex supersets are then verified.
    """
    box = BoxedView(G, window)
    F = G.frame
    pts = box.pts
    vals = np.array([S.value(p) for p in pts], dtype=np.int16)
    # witnesses above: \/_y S(y) /\ e(a, y); witnesses below: \/_x S(x) /\ e(x, a)
    down = np.asarray(
        [F.join_all(int(F.meet[vals[j], box.E[ia, j]]) for j in range(len(pts)))
         for ia in range(len(pts))], dtype=np.int16)
    up = np.asarray(
        [F.join_all(int(F.meet[vals[j], box.E[j, ia]]) for j in range(len(pts)))
         for ia in range(len(pts))], dtype=np.int16)
    hull_vals = F.meet[up, down]
    hull = TableMap({p: int(v) for p, v in zip(pts, hull_vals)})
    rep = Report("convex-hull", status=box.status)
    for i, p in enumerate(pts):
        if not F.leq[vals[i], hull_vals[i]]:
            rep.add("not-a-superset", p)
    conv = is_convex(hull, G, window)
    if not conv.ok:
        rep.add("hull-not-convex", conv.violations[:2])
    rep.details["input-was-convex"] = bool(
        np.array_equal(hull_vals, vals))

    normal_in = is_normal(G.backend, F, S, window)
    if normal_in.ok:
        out_norm = is_normal(G.backend, F, hull, window)
        rep.details["hull-normal-filter"] = out_norm.ok and conv.ok
        if not out_norm.ok:
            rep.add("hull-not-normal", out_norm.violations[:2])

    n = len(pts)
    mode = "enumerated"
    checked = 0
    if F.size**n <= guard:
        import itertools as _it
        for tv in _it.product(range(F.size), repeat=n):
            tarr = np.array(tv, dtype=np.int16)
            if not np.asarray(F.leq[vals, tarr]).all():
                continue
            T = TableMap({p: int(v) for p, v in zip(pts, tarr)})
            if is_convex(T, G, window).details["direct"]:
                checked += 1
                if not np.asarray(F.leq[hull_vals, tarr]).all():
                    rep.add("not-minimal", tv)
    else:
        import random as _rnd
        mode = "sampled"
        rng = _rnd.Random(seed)
        for _ in range(samples):
            tarr = np.array([F.join[vals[i], rng.randrange(F.size)]
                             for i in range(n)], dtype=np.int16)
            T = TableMap({p: int(v) for p, v in zip(pts, tarr)})
            TH, _sub = _hull_only(T, box, F)
            checked += 1
            if not np.asarray(F.leq[hull_vals, TH]).all():
                rep.add("not-minimal", tarr.tolist())
    rep.details["minimality-mode"] = mode
    rep.details["minimality-checked"] = checked
    return hull, rep


def _hull_only(S, box, F):
    pts = box.pts
    vals = np.array([S.value(p) for p in pts], dtype=np.int16)
    out = np.array(
        [int(F.meet[
            F.join_all(int(F.meet[vals[j], box.E[ia, j]]) for j in range(len(pts))),
            F.join_all(int(F.meet[vals[j], box.E[j, ia]]) for j in range(len(pts)))])
         for ia in range(len(pts))], dtype=np.int16)
    return out, vals


def level_subgroup(backend, frame: Frame, S,
                   window: Window | None = None) -> tuple[list, Report]:
    """The crisp fibre over the identity value; verified to be a normal
    subgroup on the domain."""
    normal = is_normal(backend, frame, S, window)
    if not normal.ok:
        raise NotNormal(f"level set needs a normal L-subgroup: {normal.violations[:2]}")
    pts = domain_points(backend, window)
    alpha = S.value(backend.zero)
    members = [p for p in pts if S.value(p) == alpha]
    rep = Report("level-subgroup", status=_status_for(backend, window))
    member_set = set(members)
    pt_set = set(pts)
    for x in members:
        if backend.neg(x) in pt_set and backend.neg(x) not in member_set:
            rep.add("inverse-escapes", x)
        for y in members:
            s = backend.op(x, y)
            if s in pt_set and s not in member_set:
                rep.add("sum-escapes", [x, y])
    for x in pts:
        for y in members:
            conj = backend.op(backend.op(x, y), backend.neg(x))
            if conj in pt_set and conj not in member_set:
                rep.add("conjugate-escapes", [x, y])
    rep.details["alpha"] = alpha
    rep.details["size"] = len(members)
    return members, rep


@dataclass
class QuotientStructure:
    """Coset space of a filter with its induced order and value map."""
    group: LOrderedGroup          # finite backend on the coset classes
    reps: list                    # canonical representative per class
    classes: list                 # domain members per class
    alpha: int
    s_tilde: list                 # induced value per class
    status: CertStatus
    battery: Report

    def class_of(self, x, S, backend):
        for k, r in enumerate(self.reps):
            v = _safe_value(S, backend.sub(x, r))
            if v == self.alpha:
                return k
        return None


def quotient_battery(G: LOrderedGroup, S, window: Window | None = None,
                     require_filter: bool = True):
    """Build the coset structure and run every claim check on it.

    Returns ``(structure_or_None, report)``.  With ``require_filter`` the
    filter axioms are enforced up front; switching it off lets hypothesis-
    dropping searches watch which downstream checks break.
    """
    backend, F = G.backend, G.frame
    rep = Report("quotient", status=_status_for(backend, window))
    sub_rep = is_normal(backend, F, S, window)
    conv_rep = is_convex(S, G, window)
    rep.details["normal-subgroup"] = sub_rep.ok
    rep.details["convex"] = conv_rep.details.get("direct", False)
    if require_filter:
        if not sub_rep.ok:
            raise NotAFilter("normal-subgroup", sub_rep.violations)
        if not conv_rep.details.get("direct", False):
            raise NotAFilter("convex", conv_rep.violations)

    pts = domain_points(backend, window)
    alpha = S.value(backend.zero)

    def level(x):
        return _safe_value(S, x) == alpha

    classes, reps = [], []
    assign = {}
    for p in pts:
        for k, r in enumerate(reps):
            if level(backend.sub(p, r)):
                classes[k].append(p)
                assign[p] = k
                break
        else:
            reps.append(p)
            classes.append([p])
            assign[p] = len(reps) - 1

    ncls = len(reps)

    def locate(x):
        if x in assign:
            return assign[x]
        for k, r in enumerate(reps):
            if level(backend.sub(x, r)):
                return k
        return None

    table = np.zeros((ncls, ncls), dtype=np.int16)
    for i in range(ncls):
        for j in range(ncls):
            k = locate(backend.op(reps[i], reps[j]))
            if k is None:
                raise InfiniteIndex(
                    f"coset of {backend.op(reps[i], reps[j])} has no window representative")
            table[i, j] = k
    try:
        qgroup = FiniteGroup(table)
    except Exception as exc:
        rep.add("group-axioms", str(exc))
        return None, rep
    if qgroup.zero != locate(backend.zero):
        rep.add("identity-coset", reps[qgroup.zero])

    level_members = [p for p in pts if level(p)]
    if not level_members:
        rep.add("empty-level", alpha)
        return None, rep

    # Witnesses for the induced relation at difference d live near d as much
    # as near 0, so the windowed join ranges over the window and its
    # translate by d; otherwise boundary pairs would see truncated joins and
    # the well-definedness re-check below would fail spuriously.
    finite = isinstance(backend, FiniteGroup)

    def e_tilde(a, b):
        d = backend.sub(a, b)
        if finite:
            members = level_members
        else:
            cands = set(pts)
            cands.update(backend.op(d, p) for p in pts)
            members = sorted(x for x in cands if level(x))
        return F.join_all(G.e(d, x) for x in members)

    et = np.array([[e_tilde(reps[i], reps[j]) for j in range(ncls)]
                   for i in range(ncls)], dtype=np.int16)

    well_defined = True
    for i in range(ncls):
        for j in range(ncls):
            for a in classes[i]:
                for b in classes[j]:
                    if e_tilde(a, b) != et[i, j]:
                        well_defined = False
                        rep.add("e-tilde-well-defined", [a, b])
                        break
                if not well_defined:
                    break
    rep.details["e-tilde-well-defined"] = well_defined

    Q = LOrderedGroup(qgroup, F, e_table=et)
    fog = check_fog(Q)
    rep.details["order-axioms"] = fog.ok
    for v in fog.violations[:4]:
        rep.add("quotient-" + v["kind"], v["witness"])

    st = [S.value(r) for r in reps]
    for k in range(ncls):
        for a in classes[k]:
            if S.value(a) != st[k]:
                rep.add("s-tilde-well-defined", a)
    st_map = TableMap(st)
    st_sub = is_normal(qgroup, F, st_map)
    st_conv = is_convex(st_map, Q)
    rep.details["s-tilde-filter"] = st_sub.ok and st_conv.details["direct"]
    if not st_sub.ok:
        rep.add("s-tilde-subgroup", st_sub.violations[:2])
    if not st_conv.details["direct"]:
        rep.add("s-tilde-convex", st_conv.violations[:2])
    singleton = [k for k in range(ncls) if st[k] == alpha]
    rep.details["level-classes"] = len(singleton)
    if len(singleton) != 1 or singleton[0] != qgroup.zero:
        rep.add("s-tilde-level-singleton", singleton)

    structure = QuotientStructure(Q, reps, classes, alpha, st,
                                  _status_for(backend, window), rep)
    return structure, rep


def build_quotient(G: LOrderedGroup, S,
                   window: Window | None = None) -> QuotientStructure:
    """Quotient of an ordered group by a filter; raises on any failed claim."""
    structure, rep = quotient_battery(G, S, window, require_filter=True)
    if structure is None or not rep.ok:
        raise NotAFilter("quotient-claims", rep.violations)
    return structure


def natural_projection(G: LOrderedGroup, S, Q: QuotientStructure,
                       window: Window | None = None) -> Report:
    """x |-> x + S is a group homomorphism and monotone onto the quotient."""
    backend, F = G.backend, G.frame
    pts = domain_points(backend, window)
    rep = Report("projection", status=Q.status)
    alpha = Q.alpha

    def locate(x):
        for k, r in enumerate(Q.reps):
            if _safe_value(S, backend.sub(x, r)) == alpha:
                return k
        return None

    cls = {p: locate(p) for p in pts}
    for a in pts:
        for b in pts:
            k = locate(backend.op(a, b))
            if k is None or k != Q.group.backend.op(cls[a], cls[b]):
                rep.add("homomorphism", [a, b])
    for a in pts:
        for b in pts:
            if not F.leq[G.e(a, b), Q.group.e(cls[a], cls[b])]:
                rep.add("monotone", [a, b])
    rep.violations.sort(key=lambda v: (v["kind"], str(v["witness"])))
    return rep


def kernel_filter(f, G: LOrderedGroup, H: LOrderedGroup,
                  window: Window | None = None) -> tuple[FuncMap, Report]:
    """K(f)(x) = e(0, f(x)) /\\ e(f(x), 0): the fuzzy kernel of a monotone
    homomorphism, verified to be a filter whose top fibre is the kernel."""
    backend, F = G.backend, G.frame
    pts = domain_points(backend, window)
    ok, wit = is_homomorphism(f, backend, H.backend, pts)
    if not ok:
        raise NotAHomomorphism(f"not a homomorphism at {wit}")
    fn = as_hom(f)
    for x in pts:
        for y in pts:
            if not F.leq[G.e(x, y), H.e(fn(x), fn(y))]:
                raise NotMonotone(f"not monotone at ({x}, {y})")
    hz = H.backend.zero
    K = FuncMap(lambda x: int(F.meet[H.e(hz, fn(x)), H.e(fn(x), hz)]))
    rep = Report("kernel", status=_status_for(backend, window))
    sub = is_normal(backend, F, K, window)
    conv = is_convex(K, G, window)
    if not sub.ok:
        rep.add("kernel-subgroup", sub.violations[:2])
    if not conv.details["direct"]:
        rep.add("kernel-convex", conv.violations[:2])
    for x in pts:
        if (K.value(x) == F.top) != (fn(x) == hz):
            rep.add("top-fibre-is-kernel", x)
    rep.details["alpha"] = K.value(backend.zero)
    return K, rep


def induced_embedding(f, G: LOrderedGroup, H: LOrderedGroup,
                      window: Window | None = None) -> Report:
    """The map a + K(f) |-> f(a) on window cosets: well defined, injective,
    a homomorphism, and monotone for the induced relation.

    Works directly on the window coset partition, so kernels of infinite
    index (where the full quotient group cannot be materialized) are still
    checkable.
    """
    backend, F = G.backend, G.frame
    K, krep = kernel_filter(f, G, H, window)
    fn = as_hom(f)
    pts = domain_points(backend, window)
    rep = Report("induced-embedding", status=_status_for(backend, window))
    rep.details["kernel-ok"] = krep.ok
    if not krep.ok:
        rep.violations.extend(krep.violations)
        rep.ok = False

    def same_coset(a, b):
        return K.value(backend.sub(a, b)) == F.top

    level_members = [p for p in pts if K.value(p) == F.top]
    rep.details["level-members"] = level_members
    for a in pts:
        for b in pts:
            if same_coset(a, b) and fn(a) != fn(b):
                rep.add("well-defined", [a, b])
            if not same_coset(a, b) and fn(a) == fn(b):
                rep.add("injective", [a, b])
    finite = isinstance(backend, FiniteGroup)
    for a in pts:
        for b in pts:
            d = backend.sub(a, b)
            if finite:
                members = level_members
            else:
                cands = set(pts)
                cands.update(backend.op(d, p) for p in pts)
                members = sorted(x for x in cands if K.value(x) == F.top)
            lhs = F.join_all(G.e(d, x) for x in members)
            if not F.leq[lhs, H.e(fn(a), fn(b))]:
                rep.add("monotone", [a, b])
    try:
        quotient_battery(G, K, window, require_filter=True)
        rep.details["full-quotient"] = "built"
    except InfiniteIndex:
        rep.details["full-quotient"] = "infinite-index"
    rep.violations.sort(key=lambda v: (v["kind"], str(v["witness"])))
    return rep


def down_cone_identity(S, G: LOrderedGroup,
                       window: Window | None = None) -> Report:
    """(down-closure of S)+ == S+ exactly for convex L-subgroups."""
    box = BoxedView(G, window)
    F = G.frame
    pts = box.pts
    vals = np.array([S.value(p) for p in pts], dtype=np.int16)
    zero_idx = box.index[G.backend.zero]
    rep = Report("down-cone-identity", status=box.status)
    identity_holds = True
    for ia in range(len(pts)):
        down = F.join_all(int(F.meet[vals[j], box.E[ia, j]])
                          for j in range(len(pts)))
        lhs = int(F.meet[box.E[zero_idx, ia], down])
        rhs = int(F.meet[vals[ia], box.E[zero_idx, ia]])
        if lhs != rhs:
            identity_holds = False
            rep.add("identity", pts[ia])
    convex = is_convex(S, G, window).details["direct"]
    rep.details["identity-holds"] = identity_holds
    rep.details["convex"] = convex
    if identity_holds != convex:
        rep.add("equivalence", [identity_holds, convex])
    rep.ok = not rep.violations
    return rep
