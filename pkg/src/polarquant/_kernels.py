"""Compiled SC/SCL decoding kernels shared by the float and LUT decoders.

Tree layout: the node at depth ``d`` holds ``N >> d`` messages.  Rows for
``d >= 1`` live in one flat buffer of length ``N`` at offset
``N - (N >> (d - 1))``; the channel row (depth 0) is the input frame.  The
codeword of the most recent left child at depth ``d`` is kept with the same
layout and is combined with its right sibling when that one finishes.

In LUT mode the messages are symbol indices (stored as float64, exact for
any table size used here); ``f``/``g`` are table lookups on the node's heap
index ``2**d - 1 + k`` and leaves fetch reconstruction values.  Helper calls
are inlined by hand: numba's per-call array overhead dominated otherwise.
"""

import math

import numpy as np
from numba import njit


@njit(cache=True)
def row_offsets(n):
    N = 1 << n
    off = np.zeros(n + 1, dtype=np.int64)
    for d in range(1, n + 1):
        off[d] = N - (N >> (d - 1))
    return off


@njit(cache=True)
def first_depth(n, i):
    """Depth of the node whose right child leaf ``i`` enters (-1 for i = 0)."""
    if i == 0:
        return -1
    t = 0
    while (i & 1) == 0:
        i >>= 1
        t += 1
    return n - 1 - t


@njit(cache=True)
def select_survivors(cand, n_cand, n_keep, keep, order):
    """Ids of the n_keep smallest candidates into ``keep``, ascending.

    Insertion sort is stable, so equal metrics keep the lower candidate id.
    """
    for c in range(n_cand):
        order[c] = c
    for c in range(1, n_cand):
        x = order[c]
        j = c - 1
        while j >= 0 and cand[order[j]] > cand[x]:
            order[j + 1] = order[j]
            j -= 1
        order[j + 1] = x
    for q in range(n_keep):
        keep[q] = order[q]
    keep[:n_keep].sort()


@njit(cache=True)
def assign_slots(act, n_act, keep, n_keep, bits, new_act, clone_from, kept, used):
    """Map surviving candidates ``2 * p + b`` onto path slots.

    The bit-0 child (or a lone bit-1 child) reuses its parent's slot; a bit-1
    child whose sibling also survives is cloned into a free slot.
    """
    kept[:n_act, :] = False
    used[:] = False
    for q in range(n_keep):
        c = keep[q]
        kept[c // 2, c % 2] = True
    for p in range(n_act):
        if kept[p, 0] or kept[p, 1]:
            used[act[p]] = True
    free = 0
    for q in range(n_keep):
        c = keep[q]
        p = c // 2
        b = c % 2
        bits[q] = b
        clone_from[q] = -1
        if b == 1 and kept[p, 0]:
            while used[free]:
                free += 1
            used[free] = True
            new_act[q] = free
            clone_from[q] = act[p]
        else:
            new_act[q] = act[p]


@njit(cache=True)
def sc_kernel(chan, frozen, n, use_lut, ftab, gtab, recon):
    N = 1 << n
    off = row_offsets(n)
    A = np.zeros(N)
    bl = np.zeros(N, dtype=np.uint8)
    cw = np.zeros(2 * N, dtype=np.uint8)
    u = np.zeros(N, dtype=np.uint8)
    for i in range(N):
        # --- descend to leaf i
        d0 = first_depth(n, i)
        if d0 >= 0:
            s = N >> (d0 + 1)
            do = off[d0 + 1]
            h = (1 << d0) - 1 + (i >> (n - d0))
            for j in range(s):
                if d0 == 0:
                    a = chan[j]
                    b = chan[s + j]
                else:
                    a = A[off[d0] + j]
                    b = A[off[d0] + s + j]
                ub = bl[do + j]
                if use_lut:
                    A[do + j] = gtab[h, int(a), int(b), ub]
                else:
                    A[do + j] = (1.0 - 2.0 * ub) * a + b
            d0 += 1
        else:
            d0 = 0
        for d in range(d0, n):
            s = N >> (d + 1)
            do = off[d + 1]
            h = (1 << d) - 1 + (i >> (n - d))
            for j in range(s):
                if d == 0:
                    a = chan[j]
                    b = chan[s + j]
                else:
                    a = A[off[d] + j]
                    b = A[off[d] + s + j]
                if use_lut:
                    A[do + j] = ftab[h, int(a), int(b)]
                else:
                    A[do + j] = math.copysign(min(abs(a), abs(b)), a * b)
        lam = chan[0] if n == 0 else A[off[n]]
        if use_lut:
            lam = recon[N - 1 + i, int(lam)]
        # --- decide
        bit = 0 if frozen[i] or lam >= 0 else 1
        u[i] = bit
        # --- fold the decision into the left-child codewords
        cw[0] = bit
        size = 1
        d = n
        k = i
        while d > 0 and (k & 1) == 1:
            o = off[d]
            for j in range(size):
                r = cw[j]
                cw[size + j] = r
                cw[j] = bl[o + j] ^ r
            size *= 2
            d -= 1
            k >>= 1
        if d > 0:
            o = off[d]
            for j in range(size):
                bl[o + j] = cw[j]
    return u


@njit(cache=True)
def scl_kernel(chan, frozen, n, L, use_lut, ftab, gtab, recon):
    N = 1 << n
    off = row_offsets(n)
    A = np.zeros((L, N))
    BL = np.zeros((L, N), dtype=np.uint8)
    U = np.zeros((L, N), dtype=np.uint8)
    pm = np.zeros(L)
    cw = np.zeros(2 * N, dtype=np.uint8)
    act = np.zeros(L, dtype=np.int64)
    new_act = np.zeros(L, dtype=np.int64)
    clone_from = np.zeros(L, dtype=np.int64)
    kept = np.zeros((L, 2), dtype=np.bool_)
    used = np.zeros(L, dtype=np.bool_)
    keep = np.zeros(2 * L, dtype=np.int64)
    order = np.zeros(2 * L, dtype=np.int64)
    lam = np.zeros(L)
    cand = np.zeros(2 * L)
    bits = np.zeros(L, dtype=np.int64)
    n_act = 1
    for i in range(N):
        d_first = first_depth(n, i)
        for p in range(n_act):
            sl = act[p]
            d0 = d_first
            if d0 >= 0:
                s = N >> (d0 + 1)
                do = off[d0 + 1]
                h = (1 << d0) - 1 + (i >> (n - d0))
                for j in range(s):
                    if d0 == 0:
                        a = chan[j]
                        b = chan[s + j]
                    else:
                        a = A[sl, off[d0] + j]
                        b = A[sl, off[d0] + s + j]
                    ub = BL[sl, do + j]
                    if use_lut:
                        A[sl, do + j] = gtab[h, int(a), int(b), ub]
                    else:
                        A[sl, do + j] = (1.0 - 2.0 * ub) * a + b
                d0 += 1
            else:
                d0 = 0
            for d in range(d0, n):
                s = N >> (d + 1)
                do = off[d + 1]
                h = (1 << d) - 1 + (i >> (n - d))
                for j in range(s):
                    if d == 0:
                        a = chan[j]
                        b = chan[s + j]
                    else:
                        a = A[sl, off[d] + j]
                        b = A[sl, off[d] + s + j]
                    if use_lut:
                        A[sl, do + j] = ftab[h, int(a), int(b)]
                    else:
                        A[sl, do + j] = math.copysign(min(abs(a), abs(b)), a * b)
            x = chan[0] if n == 0 else A[sl, off[n]]
            if use_lut:
                x = recon[N - 1 + i, int(x)]
            lam[p] = x
        # --- path metric update and pruning
        if frozen[i]:
            for p in range(n_act):
                if lam[p] < 0:
                    pm[act[p]] += -lam[p]
                bits[p] = 0
        else:
            for p in range(n_act):
                base = pm[act[p]]
                mag = abs(lam[p])
                if lam[p] >= 0:
                    cand[2 * p] = base
                    cand[2 * p + 1] = base + mag
                else:
                    cand[2 * p] = base + mag
                    cand[2 * p + 1] = base
            n_keep = min(2 * n_act, L)
            select_survivors(cand, 2 * n_act, n_keep, keep, order)
            assign_slots(act, n_act, keep, n_keep, bits, new_act, clone_from, kept, used)
            for q in range(n_keep):
                src = clone_from[q]
                if src >= 0:
                    dst = new_act[q]
                    for j in range(N):
                        A[dst, j] = A[src, j]
                        BL[dst, j] = BL[src, j]
                    for j in range(i):
                        U[dst, j] = U[src, j]
            for q in range(n_keep):
                pm[new_act[q]] = cand[keep[q]]
                act[q] = new_act[q]
            n_act = n_keep
        # --- fold decisions into each path's left-child codewords
        for p in range(n_act):
            sl = act[p]
            bit = bits[p]
            U[sl, i] = bit
            cw[0] = bit
            size = 1
            d = n
            k = i
            while d > 0 and (k & 1) == 1:
                o = off[d]
                for j in range(size):
                    r = cw[j]
                    cw[size + j] = r
                    cw[j] = BL[sl, o + j] ^ r
                size *= 2
                d -= 1
                k >>= 1
            if d > 0:
                o = off[d]
                for j in range(size):
                    BL[sl, o + j] = cw[j]
    best = act[0]
    for p in range(1, n_act):
        if pm[act[p]] < pm[best]:
            best = act[p]
    return U[best].copy(), pm[best]


@njit(cache=True)
def decode_batch(frames, frozen, n, L, use_lut, ftab, gtab, recon):
    """Decode each row of ``frames``; returns full u vectors and final metrics."""
    out = np.empty(frames.shape, dtype=np.uint8)
    metrics = np.zeros(frames.shape[0])
    for t in range(frames.shape[0]):
        if L == 1:
            out[t] = sc_kernel(frames[t], frozen, n, use_lut, ftab, gtab, recon)
        else:
            out[t], metrics[t] = scl_kernel(frames[t], frozen, n, L, use_lut, ftab, gtab, recon)
    return out, metrics
