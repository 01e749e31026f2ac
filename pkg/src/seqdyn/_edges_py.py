"""Pure-Python twin of the compiled edge scan in ``_edges.pyx``."""

from __future__ import annotations

import numpy as np

PROP_I, PROP_SI, PROP_L, PROP_1P, PROP_A = 1, 2, 4, 8, 16


def pair_edges(choice, outcome, sub_out, on_play, owner, pref, cyclic, required, mixed):
    choice = choice.tolist()
    outcome = outcome.tolist()
    sub_out = sub_out.tolist()
    on_play = on_play.tolist()
    owner = owner.tolist()
    pref = pref.tolist()
    cyclic = cyclic.tolist()
    need_a = bool(required & PROP_A) and not mixed
    n_prof = len(choice)
    src: list[int] = []
    dst: list[int] = []
    for a in range(n_prof):
        ca, sa, oa = choice[a], sub_out[a], outcome[a]
        for b in range(n_prof):
            if a == b:
                continue
            cb, sb, ob, pb = choice[b], sub_out[b], outcome[b], on_play[b]
            ndiff = 0
            first_owner = -1
            multi = False
            si = lazy = imp = all_cyc = True
            any_cyc = False
            for k, (x, y) in enumerate(zip(ca, cb)):
                if x == y:
                    continue
                ndiff += 1
                if need_a and ndiff > 1:
                    break
                i = owner[k]
                if first_owner < 0:
                    first_owner = i
                elif i != first_owner:
                    multi = True
                pi = pref[i]
                if not pi[sa[k]][sb[k]]:
                    si = False
                if not pb[k]:
                    lazy = False
                if not pi[oa][ob]:
                    imp = False
                if cyclic[i]:
                    any_cyc = True
                else:
                    all_cyc = False
            if ndiff == 0:
                continue
            if mixed:
                ok = (si and not any_cyc) or (imp and lazy and not multi and all_cyc)
            else:
                flags = ((PROP_I if imp else 0) | (PROP_SI if si else 0) | (PROP_L if lazy else 0)
                         | (0 if multi else PROP_1P) | (PROP_A if ndiff <= 1 else 0))
                ok = (flags & required) == required
            if ok:
                src.append(a)
                dst.append(b)
    return np.asarray(src, dtype=np.intp), np.asarray(dst, dtype=np.intp)
