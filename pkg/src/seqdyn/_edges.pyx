# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled pairwise scan deciding which profile pairs are dynamics edges.

Must stay behaviourally identical to ``_edges_py.pair_edges``.
"""

import numpy as np
from libcpp.vector cimport vector

cdef enum:
    PROP_I = 1
    PROP_SI = 2
    PROP_L = 4
    PROP_1P = 8
    PROP_A = 16


def pair_edges(const int[:, ::1] choice, const int[::1] outcome, const int[:, ::1] sub_out,
               const unsigned char[:, ::1] on_play, const int[::1] owner,
               const unsigned char[:, :, ::1] pref, const unsigned char[::1] cyclic,
               int required, bint mixed):
    cdef Py_ssize_t n_prof = choice.shape[0]
    cdef Py_ssize_t n_nodes = choice.shape[1]
    cdef Py_ssize_t a, b, k
    cdef int ndiff, first_owner, i, oa, ob, flags
    cdef bint multi, si, lazy, imp, any_cyc, all_cyc, ok
    cdef bint need_a = (required & PROP_A) != 0 and not mixed
    cdef vector[Py_ssize_t] src
    cdef vector[Py_ssize_t] dst

    for a in range(n_prof):
        oa = outcome[a]
        for b in range(n_prof):
            if a == b:
                continue
            ob = outcome[b]
            ndiff = 0
            first_owner = -1
            multi = False
            si = True
            lazy = True
            imp = True
            any_cyc = False
            all_cyc = True
            for k in range(n_nodes):
                if choice[a, k] == choice[b, k]:
                    continue
                ndiff += 1
                if need_a and ndiff > 1:
                    break
                i = owner[k]
                if first_owner < 0:
                    first_owner = i
                elif i != first_owner:
                    multi = True
                if not pref[i, sub_out[a, k], sub_out[b, k]]:
                    si = False
                if not on_play[b, k]:
                    lazy = False
                if not pref[i, oa, ob]:
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
                flags = 0
                if imp:
                    flags |= PROP_I
                if si:
                    flags |= PROP_SI
                if lazy:
                    flags |= PROP_L
                if not multi:
                    flags |= PROP_1P
                if ndiff <= 1:
                    flags |= PROP_A
                ok = (flags & required) == required
            if ok:
                src.push_back(a)
                dst.push_back(b)

    out_src = np.empty(src.size(), dtype=np.intp)
    out_dst = np.empty(dst.size(), dtype=np.intp)
    cdef Py_ssize_t[::1] vs = out_src
    cdef Py_ssize_t[::1] vd = out_dst
    for k in range(<Py_ssize_t>src.size()):
        vs[k] = src[k]
        vd[k] = dst[k]
    return out_src, out_dst
