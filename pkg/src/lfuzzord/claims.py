"""Claim registry: stable ids for every verified statement.

Each claim id names one property the library can machine-check, maps to a
runner taking a :class:`VerifyContext`, and produces a :class:`RunReport`
with a verdict, an optional witness, and the certification scope.  The ids
are the wire format of the ``verify`` command and are listed in the README
with what each one checks.
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass, field

import numpy as np

from . import fuzzy_order as fo
from .enumeration import counterexample_search, enumerate_lorders
from .frame import Frame, chain_frame, verify_heyting_identities
from .fuzzy_order import FuzzySubset, chi
from .groups import FiniteGroup, FreeAbelian, Window, as_hom
from . import ogroup as og
from .ogroup import (
    CERTIFIED,
    BoxedView,
    CertStatus,
    LOrderedGroup,
    group_join,
    group_meet,
    negate_subset,
    translate_subset,
    translate_subset_right,
)
from . import subgroup as sg


class UnknownClaim(ValueError):
    pass


@dataclass
class VerifyContext:
    frame: Frame
    window_n: int = 8
    seed: int = 0xC0FFEE
    guard: int = 10**6
    samples: int = 60
    sizes: tuple = (2, 3)
    group: LOrderedGroup | None = None
    group2: LOrderedGroup | None = None
    order: object = None
    sub: object = None
    cone: object = None
    hom: object = None
    aset: object = None
    alpha: int | None = None

    def window_for(self, G: LOrderedGroup):
        if isinstance(G.backend, FiniteGroup):
            return None
        return Window.symmetric(self.window_n, G.backend.rank)

    def require(self, name):
        val = getattr(self, name)
        if val is None:
            raise ValueError(f"claim needs --{name}")
        return val


@dataclass
class RunReport:
    claim: str
    verdict: str                  # "holds" | "violated" | "error"
    witness: object = None
    status: dict = field(default_factory=lambda: CERTIFIED.to_json())
    config: dict = field(default_factory=dict)
    elapsed_ms: float | None = None

    def to_json(self):
        doc = {"claim": self.claim, "verdict": self.verdict,
               "witness": og._jsonable(self.witness),
               "status": self.status, "config": self.config}
        if self.elapsed_ms is not None:
            doc["elapsed_ms"] = round(self.elapsed_ms, 1)
        return doc


def _verdict(ok, witness=None, status=CERTIFIED):
    return ("holds" if ok else "violated", witness,
            status.to_json() if hasattr(status, "to_json") else status)


def _nonbottom(frame):
    return [i for i in range(frame.size) if i != frame.bottom]


def _sample_subsets(frame, pts, rng, count, max_support=3):
    choices = _nonbottom(frame)
    for _ in range(count):
        k = rng.randint(1, min(max_support, len(pts)))
        support = rng.sample(list(pts), k)
        yield FuzzySubset(frame, {p: rng.choice(choices) for p in support})


def _enumerated_lattices(ctx):
    """Valid small structures that have all joins and meets."""
    for size in ctx.sizes:
        for P in enumerate_lorders(ctx.frame, size, ctx.guard):
            if fo.is_complete(P, guard=ctx.guard).holds:
                yield P


# ----------------------------------------------------------------- frame --

def run_heyting(ctx):
    f = ctx.frame
    violations = verify_heyting_identities(f)
    for a, b, x in itertools.product(range(f.size), repeat=3):
        if f.leq[f.meet[a, x], b] != f.leq[x, f.imp[a, b]]:
            violations.append({"identity": "adjunction", "witness": [a, b, x]})
    return _verdict(not violations, violations[:4] or None)


# ----------------------------------------------------- order enumeration --

def run_join_meet_theorem(ctx):
    for size in ctx.sizes:
        for P in enumerate_lorders(ctx.frame, size, ctx.guard):
            for values in itertools.product(range(ctx.frame.size), repeat=size):
                S = FuzzySubset(ctx.frame, dict(enumerate(values)))
                a, b = fo.join(P, S), fo.join_oracle(P, S)
                if (a.exists, a.element) != (b.exists, b.element):
                    return _verdict(False, {"e": P.e.tolist(), "S": values})
                a, b = fo.meet(P, S), fo.meet_oracle(P, S)
                if (a.exists, a.element) != (b.exists, b.element):
                    return _verdict(False, {"e": P.e.tolist(), "S": values})
    return _verdict(True)


def run_join_unique(ctx):
    w = counterexample_search("join-unique", None, ctx.sizes, ctx.frame,
                              ctx.guard)
    return _verdict(w is None, w)


def run_crisp_lattice_closure(ctx):
    for P in _enumerated_lattices(ctx):
        if fo.crisp_op_tables(P) is None:
            return _verdict(False, {"e": P.e.tolist()})
    return _verdict(True)


def _lattice_pointwise(ctx, which):
    for P in _enumerated_lattices(ctx):
        F = ctx.frame
        cmeet, cjoin = fo.crisp_op_tables(P)
        for a, x, y in itertools.product(range(P.size), repeat=3):
            if which == "meet":
                lhs = P.e[a, cmeet[x, y]]
                rhs = F.meet[P.e[a, x], P.e[a, y]]
            else:
                lhs = P.e[cjoin[x, y], a]
                rhs = F.meet[P.e[x, a], P.e[y, a]]
            if lhs != rhs:
                return _verdict(False, {"e": P.e.tolist(), "triple": [a, x, y]})
    return _verdict(True)


def run_pointwise_meet(ctx):
    return _lattice_pointwise(ctx, "meet")


def run_pointwise_join(ctx):
    return _lattice_pointwise(ctx, "join")


def _restricted_scaling(ctx, which):
    for P in _enumerated_lattices(ctx):
        F = ctx.frame
        cmeet, cjoin = fo.crisp_op_tables(P)
        for values in itertools.product(range(F.size), repeat=P.size):
            S = FuzzySubset(F, dict(enumerate(values)))
            if S.sup_value() != F.top:
                continue
            for a in range(P.size):
                if which == "meet":
                    m = fo.meet(P, S)
                    lhs = int(cmeet[a, m.element])
                    rhs = fo.meet(P, fo.scaled_subset(P, a, S, cmeet))
                else:
                    m = fo.join(P, S)
                    lhs = int(cjoin[a, m.element])
                    rhs = fo.join(P, fo.scaled_subset(P, a, S, cjoin))
                if not rhs or rhs.element != lhs:
                    return _verdict(False, {"e": P.e.tolist(),
                                            "S": values, "a": a})
    return _verdict(True)


def run_restricted_meet_scaling(ctx):
    return _restricted_scaling(ctx, "meet")


def run_restricted_join_scaling(ctx):
    return _restricted_scaling(ctx, "join")


def run_absorption(ctx):
    for P in _enumerated_lattices(ctx):
        F = ctx.frame
        cmeet, cjoin = fo.crisp_op_tables(P)
        for values in itertools.product(range(F.size), repeat=P.size):
            S = FuzzySubset(F, dict(enumerate(values)))
            if S.sup_value() != F.top:
                continue
            for a in range(P.size):
                j = fo.join(P, fo.scaled_subset(P, a, S, cjoin))
                if not j or cmeet[a, j.element] != a:
                    return _verdict(False, {"e": P.e.tolist(), "S": values,
                                            "a": a, "side": "join"})
                m = fo.meet(P, fo.scaled_subset(P, a, S, cmeet))
                if not m or cjoin[a, m.element] != a:
                    return _verdict(False, {"e": P.e.tolist(), "S": values,
                                            "a": a, "side": "meet"})
    return _verdict(True)


def run_support_bounds(ctx):
    for P in _enumerated_lattices(ctx):
        F = ctx.frame
        cmeet, cjoin = fo.crisp_op_tables(P)
        for values in itertools.product(range(F.size), repeat=P.size):
            S = FuzzySubset(F, dict(enumerate(values)))
            if not S.support():
                continue
            m, j = fo.meet(P, S), fo.join(P, S)
            lo = S.support()[0]
            hi = S.support()[0]
            for x in S.support()[1:]:
                lo, hi = int(cmeet[lo, x]), int(cjoin[hi, x])
            if P.e[lo, m.element] != F.top or P.e[j.element, hi] != F.top:
                return _verdict(False, {"e": P.e.tolist(), "S": values})
    return _verdict(True)


def run_support_split(ctx):
    for P in _enumerated_lattices(ctx):
        F = ctx.frame
        cmeet, cjoin = fo.crisp_op_tables(P)
        for values in itertools.product(range(F.size), repeat=P.size):
            S = FuzzySubset(F, dict(enumerate(values)))
            supp = S.support()
            if len(supp) < 1:
                continue
            x1 = supp[0]
            S1 = FuzzySubset(F, {x1: S(x1)})
            rest = FuzzySubset(F, {x: S(x) for x in supp[1:]})
            if fo.meet(P, S).element != cmeet[fo.meet(P, S1).element,
                                              fo.meet(P, rest).element]:
                return _verdict(False, {"e": P.e.tolist(), "S": values,
                                        "side": "meet"})
            if fo.join(P, S).element != cjoin[fo.join(P, S1).element,
                                              fo.join(P, rest).element]:
                return _verdict(False, {"e": P.e.tolist(), "S": values,
                                        "side": "join"})
    return _verdict(True)


def run_union_semilattice(ctx):
    for P in _enumerated_lattices(ctx):
        F = ctx.frame
        cmeet, cjoin = fo.crisp_op_tables(P)
        all_subsets = [FuzzySubset(F, dict(enumerate(v)))
                       for v in itertools.product(range(F.size), repeat=P.size)]
        joins = [fo.join(P, S).element for S in all_subsets]
        meets = [fo.meet(P, S).element for S in all_subsets]
        for i, S in enumerate(all_subsets):
            for k, T in enumerate(all_subsets):
                U = fo.subset_union(S, T)
                ju = fo.join(P, U).element
                mu = fo.meet(P, U).element
                if ju != cjoin[joins[i], joins[k]] or mu != cmeet[meets[i], meets[k]]:
                    return _verdict(False, {"e": P.e.tolist(), "i": i, "k": k})
    return _verdict(True)


def run_adjoint_theorem(ctx):
    for size_p in ctx.sizes:
        for P in enumerate_lorders(ctx.frame, size_p, ctx.guard):
            if not fo.is_complete(P, guard=ctx.guard).holds:
                continue
            for size_q in ctx.sizes:
                for Q in enumerate_lorders(ctx.frame, size_q, ctx.guard):
                    for f in itertools.product(range(Q.size), repeat=P.size):
                        rep = fo.has_right_adjoint(list(f), P, Q, ctx.guard)
                        if rep.mode == "search" and not rep.consistent:
                            return _verdict(False, {"eP": P.e.tolist(),
                                                    "eQ": Q.e.tolist(),
                                                    "f": list(f)})
    return _verdict(True)


# --------------------------------------------------------- group claims --

def _group_ctx(ctx):
    G = ctx.require("group")
    w = ctx.window_for(G)
    pts = og.domain_points(G.backend, w)
    rng = random.Random(ctx.seed)
    status = CertStatus("sampled", window=w, seed=ctx.seed, count=ctx.samples)
    return G, w, pts, rng, status


def run_fog(ctx):
    G = ctx.require("group")
    w = ctx.window_for(G)
    rep = og.check_fog(G, w)
    return _verdict(rep.ok, rep.violations[:4] or None, rep.status)


def run_negation(ctx):
    G = ctx.require("group")
    w = ctx.window_for(G)
    rep = og.negation_identity(G, w)
    return _verdict(rep.ok, rep.violations[:4] or None, rep.status)


def run_translation_laws(ctx):
    G, w, pts, rng, status = _group_ctx(ctx)
    bk = G.backend
    for S in _sample_subsets(G.frame, pts, rng, ctx.samples):
        j = group_join(G, S, w)
        m = group_meet(G, S, w)
        for a in rng.sample(list(pts), min(3, len(pts))):
            if j:
                left = group_join(G, translate_subset(bk, a, S), w)
                right = group_join(G, translate_subset_right(bk, S, a), w)
                if not left or left.element != bk.op(a, j.element):
                    return _verdict(False, {"S": S.entries, "a": a,
                                            "side": "left-join"}, status)
                if not right or right.element != bk.op(j.element, a):
                    return _verdict(False, {"S": S.entries, "a": a,
                                            "side": "right-join"}, status)
            if m:
                left = group_meet(G, translate_subset(bk, a, S), w)
                if not left or left.element != bk.op(a, m.element):
                    return _verdict(False, {"S": S.entries, "a": a,
                                            "side": "left-meet"}, status)
        if j:
            dual = group_meet(G, negate_subset(bk, S), w)
            if not dual or dual.element != bk.neg(j.element):
                return _verdict(False, {"S": S.entries, "side": "negation"},
                                status)
        if m:
            dual = group_join(G, negate_subset(bk, S), w)
            if not dual or dual.element != bk.neg(m.element):
                return _verdict(False, {"S": S.entries, "side": "negation-meet"},
                                status)
    return _verdict(True, None, status)


def run_join_meet_bijection(ctx):
    G, w, pts, rng, status = _group_ctx(ctx)
    bk = G.backend
    for S in _sample_subsets(G.frame, pts, rng, ctx.samples):
        j = group_join(G, S, w)
        m = group_meet(G, negate_subset(bk, S), w)
        if bool(j) != bool(m):
            return _verdict(False, {"S": S.entries}, status)
    return _verdict(True, None, status)


def run_lattice_monotone_translations(ctx):
    G, w, pts, rng, status = _group_ctx(ctx)
    box = BoxedView(G, w)
    F = G.frame
    checked = 0
    for _ in range(ctx.samples):
        a, x, y = (rng.choice(pts) for _ in range(3))
        mx, my = box.crisp_meet(a, x), box.crisp_meet(a, y)
        if mx is not None and my is not None:
            checked += 1
            if not F.leq[G.e(x, y), G.e(mx, my)]:
                return _verdict(False, {"a": a, "x": x, "y": y,
                                        "op": "meet"}, status)
        jx, jy = box.crisp_join(a, x), box.crisp_join(a, y)
        if jx is not None and jy is not None:
            if not F.leq[G.e(x, y), G.e(jx, jy)]:
                return _verdict(False, {"a": a, "x": x, "y": y,
                                        "op": "join"}, status)
    return ("holds", {"instances-with-lattice-ops": checked}, status.to_json())


def run_sum_law(ctx):
    G, w, pts, rng, status = _group_ctx(ctx)
    for S in _sample_subsets(G.frame, pts, rng, ctx.samples // 2):
        for T in _sample_subsets(G.frame, pts, rng, 2):
            try:
                rep = og.verify_sum_law(G, S, T, w)
            except og.PreconditionUnmet:
                continue
            except og.SupportOutsideWindow:
                continue
            if not rep.ok:
                return _verdict(False, {"S": S.entries, "T": T.entries},
                                status)
    return _verdict(True, None, status)


def run_hom_equivalence(ctx):
    G = ctx.require("group")
    w = ctx.window_for(G)
    H = ctx.group2 or G
    homs = []
    if ctx.hom is not None:
        homs.append(ctx.hom)
    elif isinstance(G.backend, FreeAbelian) and H is G:
        from .groups import LinearHom
        eye = np.eye(G.backend.rank, dtype=int)
        homs = [LinearHom(k * eye) for k in (-2, -1, 0, 1, 2, 3)]
    else:
        homs = [lambda x: x]
    for f in homs:
        try:
            rep = og.monotone_hom_equivalence(G, H, f, w)
        except og.NotAHomomorphism:
            continue
        if not rep.ok:
            return _verdict(False, rep.violations[:2], rep.status)
    return _verdict(True)


def run_positive_cone_theorem(ctx):
    G = ctx.require("group")
    w = ctx.window_for(G)
    S = og.cone_of_group(G)
    rep = og.validate_cone_axioms(G.backend, G.frame, S, w)
    if not rep.ok:
        return _verdict(False, rep.violations[:4], rep.status)
    conv = sg.is_convex(S, G, w)
    if not conv.details["direct"]:
        return _verdict(False, {"convexity": conv.violations[:2]}, rep.status)
    rebuilt = og.order_from_cone(G.backend, G.frame, S, w)
    pts = og.domain_points(G.backend, w)
    for a in pts[:: max(1, len(pts) // 40)]:
        for b in pts[:: max(1, len(pts) // 40)]:
            if rebuilt.e(a, b) != G.e(a, b):
                return _verdict(False, {"pair": [a, b]}, rep.status)
    return _verdict(True, None, rep.status)


def run_torsion_scope(ctx):
    G = ctx.require("group")
    w = ctx.window_for(G)
    box = BoxedView(G, w)
    pairs_closed = True
    for u in box.pts[:: max(1, len(box.pts) // 12)]:
        for v in box.pts[:: max(1, len(box.pts) // 12)]:
            if box.crisp_join(u, v) is None or box.crisp_meet(u, v) is None:
                pairs_closed = False
                break
        if not pairs_closed:
            break
    finite = isinstance(G.backend, FiniteGroup)
    if pairs_closed and finite and G.backend.size > 1:
        return _verdict(False, {"lattice-closed-finite-group": G.backend.size},
                        box.status)
    return ("holds", {"lattice-closed": pairs_closed,
                      "scope": "lattice-ordered case only"},
            box.status.to_json())


def run_automorphism_remark(ctx):
    P = ctx.require("order")
    G, perms = og.automorphism_group(P)
    rep = og.check_fog(G)
    return _verdict(rep.ok, rep.violations[:2] or {"order": len(perms)})


def run_closure_remark(ctx):
    G = ctx.require("group")
    cone = ctx.require("cone")
    w = ctx.window_for(G)
    closed, rep = og.cone_closure(G.backend, ctx.frame, cone, w)
    return _verdict(rep.ok, rep.violations[:4] or None, rep.status)


def run_extension_remark(ctx):
    G = ctx.require("group")
    cone = ctx.require("cone")
    aset = ctx.require("aset")
    alpha = ctx.require("alpha")
    w = ctx.window_for(G)
    top = ctx.frame.top

    def member(x):
        return aset.value(x) == top

    H, rep = og.cone_extension(G.backend, ctx.frame, cone, member, alpha, w)
    return _verdict(rep.ok, rep.violations[:4] or None, rep.status)


def run_dist_equivalence(ctx):
    G, w, pts, rng, status = _group_ctx(ctx)
    box = BoxedView(G, w)
    F = G.frame
    meet_law = True
    join_law = True
    wit = None
    for S in _sample_subsets(G.frame, pts, rng, ctx.samples // 2):
        j, m = group_join(G, S, w), group_meet(G, S, w)
        for a in rng.sample(list(pts), min(2, len(pts))):
            if j:
                aj = box.crisp_meet(a, j.element)
                if aj is not None:
                    entries = {}
                    usable = True
                    for y, v in S.items():
                        ay = box.crisp_meet(a, y)
                        if ay is None:
                            usable = False
                            break
                        entries[ay] = int(F.join[entries.get(ay, F.bottom), v])
                    if usable:
                        got = group_join(G, FuzzySubset(F, entries), w)
                        if not got or got.element != aj:
                            meet_law = False
                            wit = {"S": S.entries, "a": a, "side": "meet-join"}
            if m:
                am = box.crisp_join(a, m.element)
                if am is not None:
                    entries = {}
                    usable = True
                    for y, v in S.items():
                        ay = box.crisp_join(a, y)
                        if ay is None:
                            usable = False
                            break
                        entries[ay] = int(F.join[entries.get(ay, F.bottom), v])
                    if usable:
                        got = group_meet(G, FuzzySubset(F, entries), w)
                        if not got or got.element != am:
                            join_law = False
                            wit = {"S": S.entries, "a": a, "side": "join-meet"}
    if meet_law != join_law:
        return _verdict(False, wit, status)
    return ("holds", {"meet-law": meet_law, "join-law": join_law},
            status.to_json())


def run_dist_criterion(ctx):
    G, w, pts, rng, status = _group_ctx(ctx)
    for S in _sample_subsets(G.frame, pts, rng, ctx.samples // 3):
        for a in rng.sample(list(pts), min(2, len(pts))):
            try:
                rep = og.distributivity_criterion(G, a, S, w)
            except (og.PreconditionUnmet, og.LatticeOpMissing):
                continue
            if not rep.ok:
                return _verdict(False, {"S": S.entries, "a": a,
                                        "detail": rep.details}, status)
    return _verdict(True, None, status)


def run_power_identity(ctx):
    G, w, pts, rng, status = _group_ctx(ctx)
    inner = Window.symmetric(max(1, ctx.window_n // 4), G.backend.rank) \
        if not isinstance(G.backend, FiniteGroup) else None
    zs = og.domain_points(G.backend, inner)
    for z in zs:
        for n in range(1, 5):
            try:
                rep = og.power_identity(G, z, n, w)
            except og.LatticeOpMissing:
                continue
            if not rep.ok:
                return _verdict(False, {"z": z, "n": n}, status)
    return _verdict(True, None, status)


def run_power_identity_pair(ctx):
    G, w, pts, rng, status = _group_ctx(ctx)
    inner = Window.symmetric(max(1, ctx.window_n // 4), G.backend.rank) \
        if not isinstance(G.backend, FiniteGroup) else None
    zs = og.domain_points(G.backend, inner)
    for x in zs:
        for y in zs:
            if G.backend.op(x, y) != G.backend.op(y, x):
                continue
            for n in range(1, 5):
                try:
                    rep = og.power_identity_pair(G, x, y, n, w)
                except og.LatticeOpMissing:
                    continue
                if not rep.ok:
                    return _verdict(False, {"x": x, "y": y, "n": n}, status)
    return _verdict(True, None, status)


def run_riesz(ctx):
    G, w, pts, rng, status = _group_ctx(ctx)
    F = G.frame
    zero = G.backend.zero
    levels = [F.top] + [v for v in range(F.size)
                        if v not in (F.top, F.bottom)][:1]
    count = 0
    for _ in range(ctx.samples):
        n = rng.randint(1, 3)
        bs = [rng.choice(pts) for _ in range(n)]
        a = rng.choice(pts)
        for t in levels:
            try:
                parts = og.riesz_decompose(G, a, bs, t, w)
            except og.HypothesisFailed:
                continue
            except og.LatticeOpMissing:
                continue
            count += 1
            if og.riesz_oracle(G, a, bs, t, w) is None:
                return _verdict(False, {"a": a, "bs": bs, "t": t}, status)
    return ("holds", {"instances": count}, status.to_json())


def run_riesz_meet(ctx):
    G, w, pts, rng, status = _group_ctx(ctx)
    F = G.frame
    for _ in range(ctx.samples):
        a, b, c = (rng.choice(pts) for _ in range(3))
        for t in (F.top,) + tuple(_nonbottom(F)[:1]):
            try:
                rep = og.riesz_meet_inequality(G, a, b, c, t, w)
            except (og.PreconditionUnmet, og.LatticeOpMissing):
                continue
            if not rep.ok:
                return _verdict(False, {"a": a, "b": b, "c": c, "t": t},
                                status)
    return _verdict(True, None, status)


# ------------------------------------------------------ subgroup claims --

def run_convexity_criterion(ctx):
    G = ctx.require("group")
    w = ctx.window_for(G)
    S = ctx.require("sub")
    rep = sg.is_convex(S, G, w)
    bad = [v for v in rep.violations if v["kind"] == "criterion-mismatch"]
    return _verdict(not bad, bad or None, rep.status)


def run_hull_filter(ctx):
    G = ctx.require("group")
    w = ctx.window_for(G)
    S = ctx.require("sub")
    hull, rep = sg.convex_hull(S, G, w, guard=ctx.guard, seed=ctx.seed)
    ok = rep.details.get("hull-normal-filter", True) and not any(
        v["kind"].startswith("hull-") for v in rep.violations)
    return _verdict(ok, rep.violations[:4] or None, rep.status)


def run_hull_minimal(ctx):
    G = ctx.require("group")
    w = ctx.window_for(G)
    S = ctx.require("sub")
    hull, rep = sg.convex_hull(S, G, w, guard=ctx.guard, seed=ctx.seed)
    bad = [v for v in rep.violations if v["kind"] in ("not-minimal",
                                                      "not-a-superset")]
    return _verdict(not bad, bad or None, rep.status)


def run_down_cone(ctx):
    G = ctx.require("group")
    w = ctx.window_for(G)
    S = ctx.require("sub")
    rep = sg.down_cone_identity(S, G, w)
    return _verdict(rep.ok, rep.violations[:4] or None, rep.status)


def run_quotient(ctx):
    G = ctx.require("group")
    w = ctx.window_for(G)
    S = ctx.require("sub")
    structure, rep = sg.quotient_battery(G, S, w, require_filter=True)
    return _verdict(rep.ok, rep.violations[:4] or None, rep.status)


def run_quotient_level(ctx):
    G = ctx.require("group")
    w = ctx.window_for(G)
    S = ctx.require("sub")
    structure, rep = sg.quotient_battery(G, S, w, require_filter=True)
    ok = rep.details.get("s-tilde-filter", False) and rep.details.get(
        "level-classes") == 1
    return _verdict(ok, None if ok else rep.details, rep.status)


def run_projection(ctx):
    G = ctx.require("group")
    w = ctx.window_for(G)
    S = ctx.require("sub")
    structure = sg.build_quotient(G, S, w)
    rep = sg.natural_projection(G, S, structure, w)
    return _verdict(rep.ok, rep.violations[:4] or None, rep.status)


def run_iso_theorem(ctx):
    G = ctx.require("group")
    H = ctx.group2 or G
    f = ctx.require("hom")
    w = ctx.window_for(G)
    rep = sg.induced_embedding(f, G, H, w)
    return _verdict(rep.ok, rep.violations[:4] or None, rep.status)


def run_quotient_hunt(ctx):
    w = counterexample_search("thm-quotient", None, ctx.sizes, ctx.frame,
                              ctx.guard)
    return _verdict(w is None, w)


@dataclass(frozen=True)
class Claim:
    id: str
    summary: str
    needs: tuple
    run: object


CLAIMS = {c.id: c for c in [
    Claim("heyting", "residuum identities and the adjunction on the frame",
          (), run_heyting),
    Claim("thm-join-meet", "certificate equality matches the raw join/meet "
          "conditions on enumerated structures", (), run_join_meet_theorem),
    Claim("join-unique", "no subset ever has two certified joins",
          (), run_join_unique),
    Claim("prop-3.2", "structures with all joins/meets have lattice crisp "
          "reducts", (), run_crisp_lattice_closure),
    Claim("prop-3.4.2-i", "e(a, x/\\y) = e(a,x) /\\ e(a,y)",
          (), run_pointwise_meet),
    Claim("prop-3.4.2-ii", "e(x\\/y, a) = e(x,a) /\\ e(y,a)",
          (), run_pointwise_join),
    Claim("prop-3.4.2-iii", "top-reaching subsets scale meets by crisp meet",
          (), run_restricted_meet_scaling),
    Claim("prop-3.4.2-iv", "top-reaching subsets scale joins by crisp join",
          (), run_restricted_join_scaling),
    Claim("cor-3.4.2", "absorption through scaled joins and meets",
          (), run_absorption),
    Claim("rmk-3.4-ii", "crisp support bounds sandwich the fuzzy join/meet",
          (), run_support_bounds),
    Claim("rmk-3.4-iii", "splitting off one support point splits the "
          "join/meet", (), run_support_split),
    Claim("prop-semilattice", "pointwise union joins as the crisp join of "
          "joins", (), run_union_semilattice),
    Claim("thm-adjoint", "adjoint existence matches join preservation on "
          "enumerated maps", (), run_adjoint_theorem),
    Claim("prop-4.3-i", "translation equality of the relation",
          ("group",), run_fog),
    Claim("prop-4.3-ii", "negation swaps the relation's arguments",
          ("group",), run_negation),
    Claim("prop-4.3-iii", "translations move joins and meets",
          ("group",), run_translation_laws),
    Claim("prop-4.3-v", "negation exchanges joins with meets",
          ("group",), run_join_meet_bijection),
    Claim("prop-4.3-vii", "binary lattice translations are monotone where "
          "defined", ("group",), run_lattice_monotone_translations),
    Claim("cor-lattice", "joins exist iff meets exist, via negation",
          ("group",), run_join_meet_bijection),
    Claim("prop-4.10", "join and meet distribute over subset sums",
          ("group",), run_sum_law),
    Claim("prop-cone", "hom monotonicity equals cone containment",
          ("group",), run_hom_equivalence),
    Claim("thm-S-positive-cone", "the group cone satisfies the cone axioms "
          "and rebuilds the order", ("group",), run_positive_cone_theorem),
    Claim("rmk-4.2-i", "lattice-closed nontrivial finite groups cannot "
          "occur", ("group",), run_torsion_scope),
    Claim("rmk-4.2-ii", "order automorphisms form a compatible group",
          ("order",), run_automorphism_remark),
    Claim("rmk-rmk-i", "closing a seed map yields a valid cone",
          ("group", "cone"), run_closure_remark),
    Claim("rmk-rmk-ii", "promoting a sum-closed positive set stays a cone",
          ("group", "cone", "aset", "alpha"), run_extension_remark),
    Claim("lem-dist-equiv", "the two distributive laws hold together",
          ("group",), run_dist_equivalence),
    Claim("thm-4.6", "the distributivity criterion matches the lattice "
          "equality", ("group",), run_dist_criterion),
    Claim("thm-4.7-i", "power identity against zero",
          ("group",), run_power_identity),
    Claim("thm-4.7-ii", "power identity for commuting pairs",
          ("group",), run_power_identity_pair),
    Claim("thm-riesz", "constructive splittings verified and cross-checked",
          ("group",), run_riesz),
    Claim("thm-4.8", "alias of thm-riesz", ("group",), run_riesz),
    Claim("cor-4.9", "meet distributes over sums at confidence t",
          ("group",), run_riesz_meet),
    Claim("prop-L-subgroup", "both convexity readings agree on normal "
          "subgroups", ("group", "sub"), run_convexity_criterion),
    Claim("prop-convex-subgroup", "hulls of normal subgroups are normal "
          "convex", ("group", "sub"), run_hull_filter),
    Claim("make-convex", "the hull is the least convex superset",
          ("group", "sub"), run_hull_minimal),
    Claim("down-cone", "positive parts of down closures detect convexity",
          ("group", "sub"), run_down_cone),
    Claim("thm-quotient", "the coset structure satisfies every quotient "
          "claim", ("group", "sub"), run_quotient),
    Claim("thm-quotient-ii", "the induced filter has a singleton level "
          "class", ("group", "sub"), run_quotient_level),
    Claim("cor-projection", "the natural projection is a monotone "
          "homomorphism", ("group", "sub"), run_projection),
    Claim("thm-iso", "kernels are filters and induce monotone embeddings",
          ("group", "hom"), run_iso_theorem),
    Claim("thm-quotient-necessity", "no intact-filter instance breaks the "
          "quotient battery", (), run_quotient_hunt),
]}

PROP_4_3_BUNDLE = ("prop-4.3-i", "prop-4.3-ii", "prop-4.3-iii",
                   "prop-4.3-v", "prop-4.3-vii")


def expand_claims(ids):
    out = []
    for cid in ids:
        if cid == "prop-4.3":
            out.extend(PROP_4_3_BUNDLE)
        else:
            out.append(cid)
    return out


def run_suite(claim_ids, ctx: VerifyContext, with_timing: bool = False):
    """Execute the named claims; unknown ids raise, missing inputs become
    error verdicts.  Reports come back ordered by claim id."""
    reports = []
    for cid in sorted(set(expand_claims(claim_ids))):
        if cid not in CLAIMS:
            raise UnknownClaim(cid)
        claim = CLAIMS[cid]
        config = {"seed": ctx.seed, "guard": ctx.guard,
                  "window": ctx.window_n, "sizes": list(ctx.sizes)}
        t0 = time.perf_counter()
        try:
            verdict, witness, status = claim.run(ctx)
        except ValueError as exc:
            rep = RunReport(cid, "error", str(exc), CERTIFIED.to_json(), config)
        else:
            rep = RunReport(cid, verdict, witness, status, config)
        if with_timing:
            rep.elapsed_ms = (time.perf_counter() - t0) * 1000.0
        reports.append(rep)
    return reports
