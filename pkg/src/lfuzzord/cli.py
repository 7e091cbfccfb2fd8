"""Command line front end.

Exit codes: 0 when every check holds, 1 when a violation was found, 2 for
usage or parse errors, 3 when a guard was exceeded.  With ``--format json``
all reports land on stdout as one ``lfuzzord/1`` document; reports are
byte-identical across runs for fixed inputs unless ``--timing`` is given.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import enumeration as en
from . import fuzzy_order as fo
from . import ogroup as og
from . import subgroup as sg
from .claims import CLAIMS, UnknownClaim, VerifyContext, run_suite
from .frame import FrameError, SizeLimitExceeded, boolean_frame, chain_frame, verify_heyting_identities
from .fuzzy_order import check_distributive, check_axioms, is_L_lattice, join, meet
from .groups import FiniteGroup, FreeAbelian, Window
from .serialize import (
    ParseError,
    load_json,
    parse_cone,
    parse_element,
    parse_frame_ref,
    parse_group,
    parse_hom,
    parse_order,
    parse_region_rules,
    parse_subset,
    parse_value,
    parse_window,
)

SCHEMA = "lfuzzord/1"

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE, EXIT_GUARD = 0, 1, 2, 3


def _emit(doc: dict, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(doc, indent=2, sort_keys=True))
        return
    def walk(prefix, v):
        if isinstance(v, dict):
            for k in v:
                walk(f"{prefix}{k}.", v[k])
        elif isinstance(v, list) and v and isinstance(v[0], dict):
            for i, item in enumerate(v):
                walk(f"{prefix}{i}.", item)
        else:
            print(f"{prefix[:-1]}: {v}")
    walk("", doc)


def _report_doc(payload: dict) -> dict:
    return {"schema": SCHEMA, **payload}


def _frame_of(args):
    return parse_frame_ref(args.frame)


def _window_of(args, backend):
    if isinstance(backend, FiniteGroup):
        return None
    return parse_window(args.window, backend.rank)


def cmd_frame(args) -> int:
    if args.frame_cmd == "chain":
        f = chain_frame(args.n)
    elif args.frame_cmd == "bool":
        f = boolean_frame(args.n)
    elif args.frame_cmd == "product":
        f = parse_frame_ref(f"product:{args.a},{args.b}")
    else:  # check
        f = parse_frame_ref(args.file)
        violations = verify_heyting_identities(f)
        _emit(_report_doc({"valid": not violations, "violations": violations}),
              args.format)
        return EXIT_OK if not violations else EXIT_VIOLATION
    _emit(f.to_json(), args.format)
    return EXIT_OK


def cmd_order(args) -> int:
    frame = _frame_of(args)
    P = parse_order(load_json(args.file), frame)
    if args.order_cmd == "check":
        violations = check_axioms(P)
        _emit(_report_doc({"valid": not violations, "violations": violations}),
              args.format)
        return EXIT_OK if not violations else EXIT_VIOLATION
    if args.order_cmd in ("join", "meet"):
        S = parse_subset(load_json(args.subset), P.frame)
        r = (join if args.order_cmd == "join" else meet)(P, S)
        _emit(_report_doc({"exists": r.exists,
                           "element": r.element,
                           "certificate": r.certificate}), args.format)
        return EXIT_OK
    if args.order_cmd == "lattice":
        rep = is_L_lattice(P, guard=args.guard, seed=args.seed)
        _emit(_report_doc({"l-lattice": rep.holds, "mode": rep.mode,
                           "checked": rep.checked}), args.format)
        return EXIT_OK if rep.holds else EXIT_VIOLATION
    rep = check_distributive(P, guard=args.guard, seed=args.seed)
    _emit(_report_doc({"status": rep.status,
                       "distributive": rep.distributive,
                       "meet-join-law": rep.meet_join_law,
                       "join-meet-law": rep.join_meet_law,
                       "laws-agree": rep.laws_agree,
                       "mode": rep.mode}), args.format)
    return EXIT_OK if rep.distributive else EXIT_VIOLATION


def _load_group(args):
    frame = _frame_of(args)
    G = parse_group(load_json(args.file), frame)
    return G, _window_of(args, G.backend)


def cmd_group(args) -> int:
    frame = _frame_of(args)
    if args.group_cmd == "check":
        G, w = _load_group(args)
        fog = og.check_fog(G, w)
        neg = og.negation_identity(G, w)
        _emit(_report_doc({"fog": fog.to_json(), "negation": neg.to_json()}),
              args.format)
        return EXIT_OK if fog.ok and neg.ok else EXIT_VIOLATION
    if args.group_cmd == "cone-validate":
        doc = load_json(args.file)
        G = parse_group(doc, frame) if doc.get("kind") == "group" else None
        if G is not None:
            backend, cone = G.backend, G.cone
        else:
            backend = FreeAbelian(args.rank)
            cone = parse_cone(doc, frame, backend)
        w = _window_of(args, backend)
        rep = og.validate_cone_axioms(backend, frame, cone, w)
        _emit(_report_doc(rep.to_json()), args.format)
        return EXIT_OK if rep.ok else EXIT_VIOLATION
    if args.group_cmd == "from-cone":
        doc = load_json(args.file)
        backend = FreeAbelian(args.rank) if "backend" not in doc else None
        if backend is None:
            G0 = parse_group(doc, frame)
            backend, cone = G0.backend, G0.cone
        else:
            cone = parse_cone(doc, frame, backend)
        w = _window_of(args, backend)
        G = og.order_from_cone(backend, frame, cone, w)
        fog = og.check_fog(G, w)
        out = G.to_json()
        out["fog"] = fog.to_json()
        _emit(_report_doc(out), args.format)
        return EXIT_OK if fog.ok else EXIT_VIOLATION
    if args.group_cmd == "closure":
        G, w = _load_group(args)
        closed, rep = og.cone_closure(G.backend, frame, G.cone, w)
        doc = rep.to_json()
        doc["map"] = closed.to_json(frame)
        _emit(_report_doc(doc), args.format)
        return EXIT_OK if rep.ok else EXIT_VIOLATION
    if args.group_cmd == "riesz":
        G, w = _load_group(args)
        a = parse_element(args.a, G.backend)
        bs = [parse_element(b, G.backend) for b in args.bs.split(";")]
        t = parse_value(frame, args.t)
        parts = og.riesz_decompose(G, a, bs, t, w)
        oracle = og.riesz_oracle(G, a, bs, t, w)
        _emit(_report_doc({"parts": [list(p) if isinstance(p, tuple) else p
                                     for p in parts],
                           "oracle-feasible": oracle is not None}), args.format)
        return EXIT_OK
    # power-identity
    G, w = _load_group(args)
    z = parse_element(args.z, G.backend)
    if args.x is not None:
        x = parse_element(args.x, G.backend)
        y = parse_element(args.y, G.backend)
        rep = og.power_identity_pair(G, x, y, args.n, w)
    else:
        rep = og.power_identity(G, z, args.n, w)
    _emit(_report_doc(rep.to_json()), args.format)
    return EXIT_OK if rep.ok else EXIT_VIOLATION


def cmd_sub(args) -> int:
    frame = _frame_of(args)
    G = parse_group(load_json(args.group), frame)
    S = parse_cone(load_json(args.sub), frame, G.backend)
    w = _window_of(args, G.backend)
    if args.sub_cmd == "check":
        rep = sg.is_normal(G.backend, frame, S, w)
        conv = sg.is_convex(S, G, w)
        _emit(_report_doc({"normal-subgroup": rep.to_json(),
                           "convex": conv.to_json()}), args.format)
        return EXIT_OK if rep.ok and conv.ok else EXIT_VIOLATION
    hull, rep = sg.convex_hull(S, G, w, guard=args.guard, seed=args.seed)
    doc = rep.to_json()
    doc["hull"] = hull.to_json(frame)
    _emit(_report_doc(doc), args.format)
    return EXIT_OK if rep.ok else EXIT_VIOLATION


def cmd_quotient(args) -> int:
    frame = _frame_of(args)
    G = parse_group(load_json(args.group), frame)
    w = _window_of(args, G.backend)
    if args.quotient_cmd == "build":
        S = parse_cone(load_json(args.sub), frame, G.backend)
        structure, rep = sg.quotient_battery(G, S, w, require_filter=True)
        doc = rep.to_json()
        if structure is not None:
            doc["classes"] = len(structure.reps)
            doc["alpha"] = frame.labels[structure.alpha]
            doc["e-tilde"] = structure.group.e_table.astype(int).tolist()
            doc["s-tilde"] = [frame.labels[v] for v in structure.s_tilde]
        _emit(_report_doc(doc), args.format)
        return EXIT_OK if rep.ok else EXIT_VIOLATION
    f = parse_hom(load_json(args.hom))
    H = parse_group(load_json(args.group2), frame) if args.group2 else G
    rep = sg.induced_embedding(f, G, H, w)
    _emit(_report_doc(rep.to_json()), args.format)
    return EXIT_OK if rep.ok else EXIT_VIOLATION


def cmd_verify(args) -> int:
    frame = _frame_of(args)
    ctx = VerifyContext(frame=frame, window_n=args.window, seed=args.seed,
                        guard=args.guard, sizes=tuple(args.sizes))
    if args.group:
        ctx.group = parse_group(load_json(args.group), frame)
    if args.group2:
        ctx.group2 = parse_group(load_json(args.group2), frame)
    if args.order:
        ctx.order = parse_order(load_json(args.order), frame)
    if args.sub and ctx.group is not None:
        ctx.sub = parse_cone(load_json(args.sub), frame, ctx.group.backend)
    if args.cone and ctx.group is not None:
        ctx.cone = parse_cone(load_json(args.cone), frame, ctx.group.backend)
    if args.aset and ctx.group is not None:
        ctx.aset = parse_cone(load_json(args.aset), frame, ctx.group.backend)
    if args.alpha is not None:
        ctx.alpha = parse_value(frame, args.alpha)
    if args.hom:
        ctx.hom = parse_hom(load_json(args.hom))
    claim_ids = [c for c in args.claims.split(",") if c] if args.claims else []
    reports = run_suite(claim_ids, ctx, with_timing=args.timing)
    doc = _report_doc({"reports": [r.to_json() for r in reports]})
    _emit(doc, args.format)
    return EXIT_OK if all(r.verdict == "holds" for r in reports) else EXIT_VIOLATION


def cmd_enumerate(args) -> int:
    frame = _frame_of(args)
    out = []
    if args.kind == "lorder":
        stream = en.enumerate_lorders(frame, args.size, args.guard)
        for P in stream:
            out.append({"e": P.e.astype(int).tolist()})
            if args.limit and len(out) >= args.limit:
                break
    elif args.kind == "lgroup-finite":
        for name, G in en.enumerate_lgroups_finite(frame, args.size, args.guard):
            out.append({"group": name,
                        "e": G.e_table.astype(int).tolist()})
            if args.limit and len(out) >= args.limit:
                break
    elif args.kind == "lfilter":
        for name, G, S in en.enumerate_lfilters(frame, args.size, args.guard,
                                                nontrivial=args.nontrivial):
            out.append({"group": name,
                        "e": G.e_table.astype(int).tolist(),
                        "values": [int(v) for v in S.table]})
            if args.limit and len(out) >= args.limit:
                break
    else:
        for S in en.enumerate_cones_finite(frame, FiniteGroup.cyclic(args.size),
                                           args.guard):
            out.append({"values": [int(v) for v in S.table]})
            if args.limit and len(out) >= args.limit:
                break
    _emit(_report_doc({"kind": args.kind, "size": args.size,
                       "count": len(out), "structures": out}), args.format)
    return EXIT_OK


def cmd_hunt(args) -> int:
    frame = _frame_of(args)
    witness = en.counterexample_search(args.claim, args.drop, args.sizes,
                                       frame, args.guard)
    _emit(_report_doc({"claim": args.claim, "weakening": args.drop,
                       "sizes": args.sizes, "witness": witness}), args.format)
    return EXIT_VIOLATION if witness is not None else EXIT_OK


def _sizes(text):
    return [int(s) for s in text.split(",") if s]


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="lfuzzord",
        description="finite frames, fuzzy orders, and ordered-group checks")
    p.add_argument("--frame", default="chain:3",
                   help="FILE | chain:N | bool:K (default chain:3)")
    p.add_argument("--window", type=int, default=8,
                   help="symmetric window half-width for free abelian groups")
    p.add_argument("--seed", type=lambda s: int(s, 0), default=0xC0FFEE)
    p.add_argument("--guard", type=int,
                   default=int(os.environ.get("LFUZZ_GUARD", 10**6)))
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.add_argument("--timing", action="store_true",
                   help="include elapsed times (breaks byte-identical output)")
    sub = p.add_subparsers(dest="cmd", required=True)

    fr = sub.add_parser("frame", help="build or check truth-value frames")
    frs = fr.add_subparsers(dest="frame_cmd", required=True)
    frs.add_parser("chain").add_argument("n", type=int)
    frs.add_parser("bool").add_argument("n", type=int)
    fp = frs.add_parser("product")
    fp.add_argument("a")
    fp.add_argument("b")
    frs.add_parser("check").add_argument("file")

    orp = sub.add_parser("order", help="l-ordered set checks")
    ors = orp.add_subparsers(dest="order_cmd", required=True)
    ors.add_parser("check").add_argument("file")
    oj = ors.add_parser("join")
    oj.add_argument("file")
    oj.add_argument("subset")
    om = ors.add_parser("meet")
    om.add_argument("file")
    om.add_argument("subset")
    ors.add_parser("lattice").add_argument("file")
    ors.add_parser("distributive").add_argument("file")

    gr = sub.add_parser("group", help="ordered-group checks")
    grs = gr.add_subparsers(dest="group_cmd", required=True)
    grs.add_parser("check").add_argument("file")
    gc = grs.add_parser("cone-validate")
    gc.add_argument("file")
    gc.add_argument("--rank", type=int, default=1)
    gf = grs.add_parser("from-cone")
    gf.add_argument("file")
    gf.add_argument("--rank", type=int, default=1)
    gcl = grs.add_parser("closure")
    gcl.add_argument("file")
    grz = grs.add_parser("riesz")
    grz.add_argument("file")
    grz.add_argument("--a", required=True)
    grz.add_argument("--bs", required=True, help="semicolon-separated parts")
    grz.add_argument("--t", default="1")
    gp = grs.add_parser("power-identity")
    gp.add_argument("file")
    gp.add_argument("--z", default="0")
    gp.add_argument("--n", type=int, default=2)
    gp.add_argument("--x")
    gp.add_argument("--y")

    sb = sub.add_parser("sub", help="l-subgroup checks")
    sbs = sb.add_subparsers(dest="sub_cmd", required=True)
    for name in ("check", "hull"):
        q = sbs.add_parser(name)
        q.add_argument("group")
        q.add_argument("sub")

    qt = sub.add_parser("quotient", help="quotients and kernels")
    qts = qt.add_subparsers(dest="quotient_cmd", required=True)
    qb = qts.add_parser("build")
    qb.add_argument("group")
    qb.add_argument("sub")
    qk = qts.add_parser("kernel")
    qk.add_argument("group")
    qk.add_argument("hom")
    qk.add_argument("--group2")

    vf = sub.add_parser("verify", help="run named claim checks")
    vf.add_argument("--claims", default="")
    vf.add_argument("--group")
    vf.add_argument("--group2")
    vf.add_argument("--order")
    vf.add_argument("--sub")
    vf.add_argument("--cone")
    vf.add_argument("--aset")
    vf.add_argument("--alpha")
    vf.add_argument("--hom")
    vf.add_argument("--sizes", type=_sizes, default=[2, 3])

    enp = sub.add_parser("enumerate", help="stream small structures")
    enp.add_argument("--kind", required=True,
                     choices=("lorder", "lgroup-finite", "lfilter", "cone"))
    enp.add_argument("--size", type=int, required=True)
    enp.add_argument("--limit", type=int, default=0)
    enp.add_argument("--nontrivial", action="store_true")

    hp = sub.add_parser("hunt", help="hypothesis-necessity searches")
    hp.add_argument("--claim", required=True)
    hp.add_argument("--drop", default=None)
    hp.add_argument("--sizes", type=_sizes, default=[2, 3, 4])

    return p


COMMANDS = {
    "frame": cmd_frame,
    "order": cmd_order,
    "group": cmd_group,
    "sub": cmd_sub,
    "quotient": cmd_quotient,
    "verify": cmd_verify,
    "enumerate": cmd_enumerate,
    "hunt": cmd_hunt,
}


# user inputs that fail a semantic check, as opposed to unparseable ones
DOMAIN_ERRORS = (
    FrameError,
    fo.FrameMismatch,
    fo.MultipleCertifiers,
    og.PreconditionUnmet,
    og.HypothesisFailed,
    og.ConeAxiomsFailed,
    og.BoundViolation,
    og.ASetInvalid,
    og.NotAHomomorphism,
    og.LatticeOpMissing,
    og.SupportOutsideWindow,
    sg.NotAFilter,
    sg.InfiniteIndex,
    sg.NotMonotone,
    sg.NotNormal,
)


def _fail(exc, code: int) -> int:
    print(json.dumps({"schema": SCHEMA, "error": str(exc)}), file=sys.stderr)
    return code


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else 0
    try:
        return COMMANDS[args.cmd](args)
    except (en.GuardExceeded, SizeLimitExceeded) as exc:
        return _fail(exc, EXIT_GUARD)
    except (ParseError, UnknownClaim, en.UnknownClaim, en.UnknownWeakening) as exc:
        return _fail(exc, EXIT_USAGE)
    except DOMAIN_ERRORS as exc:
        return _fail(exc, EXIT_VIOLATION)
    except ValueError as exc:
        return _fail(exc, EXIT_USAGE)


if __name__ == "__main__":
    sys.exit(main())


if __name__ == "__main__":
    sys.exit(main())
