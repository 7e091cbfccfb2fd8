"""Deterministic streams of small structures and hypothesis-dropping hunts.

Everything here enumerates lexicographically over value tables (frame
indices in carrier order), filters by the axioms, and yields structures in
a reproducible order; searches that drop a named hypothesis then watch a
downstream claim fail on the stream.  Guards bound the candidate space and
fail loudly instead of truncating silently.
"""

from __future__ import annotations

import itertools

import numpy as np

from .frame import Frame
from .fuzzy_order import (
    FuzzySubset,
    LOrderedSet,
    join_candidates,
    meet,
    meet_candidates,
    scaled_subset,
    crisp_op_tables,
    is_complete,
)
from .groups import FiniteGroup, TableMap
from .ogroup import LOrderedGroup, check_fog
from .subgroup import is_convex, is_normal, quotient_battery


class GuardExceeded(RuntimeError):
    pass


class UnknownClaim(ValueError):
    pass


class UnknownWeakening(ValueError):
    pass


def _passes_e2(frame: Frame, e: np.ndarray) -> bool:
    n = e.shape[0]
    meet_t, leq = frame.meet, frame.leq
    for y in range(n):
        step = meet_t[e[:, y][:, None], e[y, :][None, :]]
        if not leq[step, e].all():
            return False
    return True


def _passes_e3(frame: Frame, e: np.ndarray) -> bool:
    crisp = e == frame.top
    both = crisp & crisp.T
    return not (both & ~np.eye(e.shape[0], dtype=bool)).any()


def enumerate_lorders(frame: Frame, size: int, guard: int = 10**6,
                      require_e3: bool = True):
    """All axiom-passing order tables at the given carrier size, streamed in
    lexicographic order of the off-diagonal cells."""
    cells = [(x, y) for x in range(size) for y in range(size) if x != y]
    total = frame.size ** len(cells)
    if total > guard:
        raise GuardExceeded(f"{total} candidate tables exceed guard {guard}")
    for values in itertools.product(range(frame.size), repeat=len(cells)):
        e = np.full((size, size), frame.top, dtype=np.int16)
        for (x, y), v in zip(cells, values):
            e[x, y] = v
        if not _passes_e2(frame, e):
            continue
        if require_e3 and not _passes_e3(frame, e):
            continue
        yield LOrderedSet(frame, e)


def groups_of_order(n: int) -> list[tuple[str, FiniteGroup]]:
    """The isomorphism classes reachable at small sizes: cyclic always,
    plus the non-cyclic group of order 4."""
    out = [(f"Z{n}", FiniteGroup.cyclic(n))]
    if n == 4:
        out.append(("V4", FiniteGroup.klein4()))
    return out


def enumerate_lgroups_finite(frame: Frame, size: int, guard: int = 10**6):
    """All translation-compatible order structures on the small groups of
    one size.

    A compatible table is determined by its identity row via
    ``e(x, y) = e(0, -x + y)``, so candidates enumerate that row (top at the
    identity) and the full axiom battery filters them.
    """
    total = frame.size ** (size - 1)
    if total > guard:
        raise GuardExceeded(f"{total} identity rows exceed guard {guard}")
    for name, g in groups_of_order(size):
        for row in itertools.product(range(frame.size), repeat=size - 1):
            values = [frame.top]
            values.extend(row)
            e = np.empty((size, size), dtype=np.int16)
            for x in range(size):
                for y in range(size):
                    e[x, y] = values[g.op(g.neg(x), y)]
            G = LOrderedGroup(g, frame, e_table=e)
            if check_fog(G).ok:
                yield name, G


def enumerate_cones_finite(frame: Frame, group: FiniteGroup,
                           guard: int = 10**6):
    """All valid cone value tables on a finite group, lexicographically."""
    from .ogroup import validate_cone_axioms

    total = frame.size ** group.size
    if total > guard:
        raise GuardExceeded(f"{total} tables exceed guard {guard}")
    for values in itertools.product(range(frame.size), repeat=group.size):
        S = TableMap(list(values))
        if validate_cone_axioms(group, frame, S).ok:
            yield S


def enumerate_lfilters(frame: Frame, size: int, guard: int = 10**6,
                       nontrivial: bool = False):
    """Stream (group, order, filter-table) triples: for each compatible
    order, every normal convex value table in lexicographic order."""
    for name, G in enumerate_lgroups_finite(frame, size, guard):
        g = G.backend
        for values in itertools.product(range(frame.size), repeat=size):
            if nontrivial and len(set(values)) == 1:
                continue
            S = TableMap(list(values))
            if not is_normal(g, frame, S).ok:
                continue
            if not is_convex(S, G).details["direct"]:
                continue
            yield name, G, S


def first_nontrivial_lfilter(frame: Frame, size: int, guard: int = 10**6):
    """The lexicographically first nonconstant filter instance at a size."""
    for name, G, S in enumerate_lfilters(frame, size, guard, nontrivial=True):
        return name, G, S
    return None


HUNTABLE = {
    ("thm-quotient", "convex"),
    ("thm-quotient", None),
    ("join-unique", "E3"),
    ("join-unique", None),
    ("prop-3.4.2-iii", "sup-top"),
    ("prop-3.4.2-iii", None),
}


def counterexample_search(claim: str, weakening: str | None, sizes,
                          frame: Frame, guard: int = 10**6):
    """Search the enumeration stream for a violation of a claim with one
    hypothesis dropped; with no weakening the same sweep must come up empty.

    Returns a witness dict or None; the search space actually exhausted is
    in the ``bound`` field of the exception-free path (None result means
    exhaustively none at the given sizes).
    """
    key = (claim, weakening)
    if claim not in {c for c, _ in HUNTABLE}:
        raise UnknownClaim(claim)
    if key not in HUNTABLE:
        raise UnknownWeakening(f"{claim} does not support dropping {weakening!r}")

    if claim == "thm-quotient":
        for size in sizes:
            for name, G in enumerate_lgroups_finite(frame, size, guard):
                g = G.backend
                for values in itertools.product(range(frame.size), repeat=size):
                    S = TableMap(list(values))
                    if not is_normal(g, frame, S).ok:
                        continue
                    convex = is_convex(S, G).details["direct"]
                    if weakening == "convex" and convex:
                        continue
                    if weakening is None and not convex:
                        continue
                    _, rep = quotient_battery(G, S, require_filter=False)
                    if not rep.ok:
                        return {"claim": claim, "weakening": weakening,
                                "group": name, "size": size,
                                "e": G.e_table.astype(int).tolist(),
                                "filter": list(values),
                                "violations": rep.violations[:4]}
        return None

    if claim == "join-unique":
        for size in sizes:
            stream = enumerate_lorders(frame, size, guard,
                                       require_e3=(weakening is None))
            for P in stream:
                # two certifiers for some subset demand two identical rows,
                # and a point mass at either row concretizes them
                for x0 in range(size):
                    cands = join_candidates(
                        P, FuzzySubset(frame, {x0: frame.top}))
                    if len(cands) > 1:
                        return {"claim": claim, "weakening": weakening,
                                "size": size,
                                "e": P.e.astype(int).tolist(),
                                "subset": {x0: frame.top},
                                "certifiers": cands}
        return None

    # prop-3.4.2-iii: the restricted meet-scaling law needs the subset to
    # reach the top of the frame
    for size in sizes:
        for P in enumerate_lorders(frame, size, guard):
            if not is_complete(P, guard=guard).holds:
                continue
            tables = crisp_op_tables(P)
            if tables is None:
                continue
            cmeet, _ = tables
            for values in itertools.product(range(frame.size), repeat=size):
                S = FuzzySubset(frame, dict(enumerate(values)))
                reaches_top = S.sup_value() == frame.top
                if weakening == "sup-top" and reaches_top:
                    continue
                if weakening is None and not reaches_top:
                    continue
                mS = meet(P, S)
                if not mS:
                    continue
                for a in range(size):
                    lhs = int(cmeet[a, mS.element])
                    rhs = meet(P, scaled_subset(P, a, S, cmeet))
                    if not rhs or rhs.element != lhs:
                        return {"claim": claim, "weakening": weakening,
                                "size": size,
                                "e": P.e.astype(int).tolist(),
                                "subset": dict(enumerate(values)), "a": a}
    return None
