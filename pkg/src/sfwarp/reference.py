"""Slow scalar reference evaluations used to cross-check the vectorized code.

These deliberately share nothing with the array implementations beyond the
formulas themselves.
"""

from __future__ import annotations

import math


def envelope_direct(y, gamma):
    n = len(y)
    if n == 0:
        return []
    up = [0.0] * n
    up[0] = float(y[0])
    for i in range(1, n):
        cand = up[i - 1] + gamma * (float(y[i]) - up[i - 1])
        up[i] = max(float(y[i]), cand)
    down = [0.0] * n
    down[n - 1] = float(y[n - 1])
    for i in range(n - 2, -1, -1):
        cand = down[i + 1] + gamma * (float(y[i]) - down[i + 1])
        down[i] = max(float(y[i]), cand)
    return [max(a, b) for a, b in zip(up, down)]


def warp_direct(f, lam):
    f = [float(v) for v in f]
    n = len(f)
    top = n - 1
    width = math.ceil(n * 2 / 100)
    fill = sum(f[n - width:]) / width
    out = []
    for i in range(n):
        u = i / lam
        k = math.floor(u)
        t = u % 1
        if k > top:
            out.append(fill)
        elif t == 0:
            out.append(f[k])
        else:
            right = f[k + 1] if k + 1 <= top else fill
            out.append(f[k] * (1 - t) + right * t)
    return out


def dft_frame(frame, n_fft):
    """Direct O(N^2) one-sided DFT of a real frame zero-padded to n_fft."""
    x = list(frame) + [0.0] * (n_fft - len(frame))
    out = []
    for k in range(n_fft // 2 + 1):
        re = im = 0.0
        for n, v in enumerate(x):
            ang = -2.0 * math.pi * k * n / n_fft
            re += v * math.cos(ang)
            im += v * math.sin(ang)
        out.append(complex(re, im))
    return out
