#!/usr/bin/env python3
"""Per-Matsubara-term sign decomposition for a film stack (calibration aid).

Prints the n = 0 term and banded sums of the n >= 1 terms (by photon energy
of xi_n) for both polarizations, at a given separation.  Helper for choosing
oscillator parameters; not part of the test chain.
"""

import sys
import numpy as np
sys.path.insert(0, __file__.rsplit("/", 1)[0])
from direct_sum_oracle import (MATERIALS, HBAR, KB, C0, EV, YCUT,
                               gauss_legendre01, eval_eps, static_eps,
                               side_reflection, static_side_reflection,
                               parse_films)


def decompose(stack, d, T, retarded=True):
    left, lfilms, gap, rfilms, right = stack
    beta = 1.0 / (KB * T)
    xi1 = 2.0 * np.pi / (HBAR * beta)
    nodes, weights = gauss_legendre01()
    eps3s = static_eps(gap)

    y = nodes * YCUT
    w = weights * YCUT
    k = y / (2.0 * d)
    rl = static_side_reflection(lfilms, left, eps3s, k)
    rr = static_side_reflection(rfilms, right, eps3s, k)
    i0 = 0.5 * np.sum(w * y * np.log1p(-np.exp(-y) * rl * rr))

    nmax = int(np.ceil(YCUT * C0 / (2.0 * d * np.sqrt(eps3s) * xi1))) + 8
    if not retarded:
        nmax = 120_000
    bands = [0.0, 0.4, 1.0, 2.0, 3.5, 5.5, 8.0, 12.0, 20.0, 1e9]  # eV edges
    acc = {"TM": np.zeros(len(bands) - 1), "TE": np.zeros(len(bands) - 1)}

    n0 = 1
    while n0 <= nmax:
        n = np.arange(n0, min(n0 + 4096, nmax + 1))
        xi = n * xi1
        if retarded:
            y0 = 2.0 * np.sqrt(eval_eps(gap, xi)) * xi * d / C0
        else:
            y0 = np.zeros_like(xi)
        yy = y0[:, None] + nodes[None, :] * YCUT
        wy = weights[None, :] * YCUT
        k2 = (yy - y0[:, None]) * (yy + y0[:, None]) / (4.0 * d * d)

        def kap(mat):
            if not retarded:
                return np.sqrt(k2)
            return np.sqrt(k2 + eval_eps(mat, xi)[:, None] * (xi[:, None] / C0) ** 2)

        def epsm(mat):
            return eval_eps(mat, xi)[:, None]

        kap3 = yy / (2.0 * d) if retarded else np.sqrt(k2)
        for pol in ("TM", "TE"):
            eps_l = [epsm(gap)] + [epsm(m) for m, _ in lfilms] + [epsm(left)]
            kap_l = [kap3] + [kap(m) for m, _ in lfilms] + [kap(left)]
            eps_r = [epsm(gap)] + [epsm(m) for m, _ in rfilms] + [epsm(right)]
            kap_r = [kap3] + [kap(m) for m, _ in rfilms] + [kap(right)]
            rl = side_reflection(pol, eps_l, kap_l, [t for _, t in lfilms])
            rr = side_reflection(pol, eps_r, kap_r, [t for _, t in rfilms])
            terms = np.sum(wy * yy * np.log1p(-np.exp(-yy) * rl * rr), axis=1)
            ev = xi / EV
            idx = np.digitize(ev, bands) - 1
            for b in range(len(bands) - 1):
                acc[pol][b] += terms[idx == b].sum()
        n0 += 4096

    pref = 1.0 / (2.0 * np.pi * beta * 4.0 * d * d)
    print(f"d = {d:.3e} m   (negative = attraction)")
    print(f"  n=0 (TM static, halved): {pref * i0:+.3e}")
    for b in range(len(bands) - 1):
        lo, hi = bands[b], bands[b + 1]
        print(f"  {lo:6.2f}-{hi:6.2f} eV: TM {pref*acc['TM'][b]:+.3e}   "
              f"TE {pref*acc['TE'][b]:+.3e}")
    tot = pref * (i0 + acc["TM"].sum() + acc["TE"].sum())
    print(f"  total: {tot:+.3e}")
    return tot


if __name__ == "__main__":
    import argparse
    ap = argparse.ArgumentParser()
    ap.add_argument("--left", required=True)
    ap.add_argument("--gap", required=True)
    ap.add_argument("--right", required=True)
    ap.add_argument("--left-film", action="append")
    ap.add_argument("--right-film", action="append")
    ap.add_argument("-d", type=float, default=2e-9)
    ap.add_argument("-T", type=float, default=300.0)
    ap.add_argument("--no-retard", action="store_true")
    args = ap.parse_args()
    stack = (MATERIALS[args.left], parse_films(args.left_film),
             MATERIALS[args.gap], parse_films(args.right_film),
             MATERIALS[args.right])
    decompose(stack, args.d, args.T, not args.no_retard)
