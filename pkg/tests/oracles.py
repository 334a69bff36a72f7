"""Slow, obviously-correct reference implementations used only by the tests.

Nothing here calls into the optimised code paths it checks.
"""
import math

import numpy as np


def naive_match_counts(x, m, r):
    """Double loop over template pairs i < j, templates starting at 0..N-m-1."""
    x = [float(v) for v in x]
    n_t = len(x) - m
    n_m = n_m1 = 0
    for i in range(n_t):
        for j in range(i + 1, n_t):
            if max(abs(x[i + k] - x[j + k]) for k in range(m)) <= r:
                n_m += 1
                if abs(x[i + m] - x[j + m]) <= r:
                    n_m1 += 1
    return n_m, n_m1


def naive_sampen(x, m, r):
    a, b = naive_match_counts(x, m, r)
    if a == 0 or b == 0:
        return None
    return -math.log(b / a)


def naive_offset_grain(x, tau, k):
    """Window means starting at 1-based offset k, written out element by element."""
    out = []
    j = 1
    while (j - 1) * tau + k + tau - 1 <= len(x):
        lo = (j - 1) * tau + k  # 1-based, inclusive
        out.append(sum(x[lo - 1 : lo - 1 + tau]) / tau)
        j += 1
    return out


def naive_rcmse(x, m, r, tau_max, offsets="all"):
    values = []
    for tau in range(1, tau_max + 1):
        ks = range(1, tau + 1) if offsets == "all" else (1,)
        a = b = 0
        for k in ks:
            ca, cb = naive_match_counts(naive_offset_grain(list(x), tau, k), m, r)
            a += ca
            b += cb
        values.append(None if a == 0 or b == 0 else -math.log(b / a))
    return values


def polyfit_variances(Y, s, order):
    """Per-segment detrending with numpy.polyfit over explicit index windows."""
    Y = np.asarray(Y, dtype=float)
    n = Y.size
    ns = n // s
    starts = [v * s for v in range(ns)] + [n - (v + 1) * s for v in range(ns)]
    out = []
    t = np.arange(s, dtype=float)
    for a in starts:
        seg = Y[a : a + s]
        fit = np.polyval(np.polyfit(t, seg, order), t)
        out.append(np.mean((seg - fit) ** 2))
    return np.array(out)
