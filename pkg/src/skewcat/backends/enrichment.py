"""Sanity checks for the canonical Set-enrichment of a backend."""
from __future__ import annotations

import itertools

from ..core import merge_reports, mismatch, run_tuples, to_json


def check_enrichment_identities(backend, u, ev=None, check_id="enrichment"):
    """Composition from ev and χ, the unit from coev, V-naturality of ev/coev, copower adjunction.

    ``ev`` may override the evaluation family (used for mutation tests).
    """
    B = backend
    V = B.V
    ev = ev or B.ev
    objs = u.objects
    vsets = u.vsets or [V.empty(), V.one()]

    def comp_law(L, M, N):
        H = B.hom(M, N)
        built = V.compose(B.hom_map(L, ev(M, N)), B.chi(H, L, M))
        return mismatch(built, B.comp_map(L, M, N))

    def unit_law(M):
        one = V.one()
        built = V.compose(B.hom_map(M, B.lunit_inv(M)), B.coev(M, one))
        ident = B.id_point(M)
        got = built("*")
        if got != ident:
            return {"point": "*", "lhs": to_json(got), "rhs": to_json(ident)}
        return None

    def ev_nat(S, M, N):
        H = B.hom(M, N)
        lhs = B.copower_map(V.identity(S), ev(M, N))
        rhs = B.compose(ev(M, B.copower(S, N)), B.copower_map(B.chi(S, M, N), B.identity(M)), B.assoc(S, H, M))
        return mismatch(lhs, rhs)

    def coev_nat(U, W, M):
        UW = V.copower(U, W)
        lhs = B.coev(M, UW)
        rhs = V.compose(B.hom_map(M, B.assoc(U, W, M)), B.chi(U, M, B.copower(W, M)),
                        V.copower_map(V.identity(U), B.coev(M, W)))
        return mismatch(lhs, rhs)

    def adjunction(S, M, N):
        SM = B.copower(S, M)
        for phi in B.hom_set(SM, N).morphisms:
            psi = {s: B.hom_point(B.compose(phi, B.inj(S, M, s))) for s in S.points}
            back = B.copair(S, M, N, lambda s: B.hom_mor(M, N, psi[s]))
            w = mismatch(back, phi)
            if w:
                return dict(w, direction="hom->map")
        Hs = B.hom(M, N)
        for choice in itertools.product(Hs.points, repeat=S.size):
            psi = dict(zip(S.points, choice))
            phi = B.copair(S, M, N, lambda s: B.hom_mor(M, N, psi[s]))
            for s in S.points:
                if B.hom_point(B.compose(phi, B.inj(S, M, s))) != psi[s]:
                    return {"direction": "map->hom", "index": to_json(s)}
        return None

    def guard(*objs_):
        # hom enumerations used inside the checks respect the cap
        from ..core import Skip
        for X in objs_:
            for Y in objs_:
                if B.hom_size(X.base, Y.base) > B.max_hom:
                    raise Skip("hom cap")

    def wrap(fn):
        def inner(*args):
            guard(*[a for a in args if a.base.backend is B])
            return fn(*args)
        return inner

    reps = [
        run_tuples(check_id + ":c-via-ev", u.refs(3), wrap(comp_law)),
        run_tuples(check_id + ":unit-via-coev", u.refs(1), wrap(unit_law)),
        run_tuples(check_id + ":V-nat-ev",
                   ([[["vset", i], ["obj", j], ["obj", k]], (vsets[i], objs[j], objs[k])]
                    for i in range(len(vsets)) for j in range(len(objs)) for k in range(len(objs))), wrap(ev_nat)),
        run_tuples(check_id + ":V-nat-coev",
                   ([[["vset", i], ["vset", j], ["obj", k]], (vsets[i], vsets[j], objs[k])]
                    for i in range(len(vsets)) for j in range(len(vsets)) for k in range(len(objs))), wrap(coev_nat)),
        run_tuples(check_id + ":copower-adjunction",
                   ([[["vset", i], ["obj", j], ["obj", k]], (vsets[i], objs[j], objs[k])]
                    for i in range(len(vsets)) for j in range(len(objs)) for k in range(len(objs))), wrap(adjunction)),
    ]
    out = merge_reports(check_id, reps)
    out.info["subchecks"] = {r.check: r.status for r in reps}
    return out
