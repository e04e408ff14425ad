#!/usr/bin/env python3
"""Independent direct-summation evaluator for layered Casimir-Lifshitz energies.

Fixed, non-adaptive grids only: 200-point Gauss-Legendre on the wave-vector
integral (after the y = 2 kappa_3 d substitution) and an explicit Matsubara
loop in chunks.  Shares no code with the C++ solver; used to freeze expected
values for its tests and to sanity-check material parameter sets.

Stacks are  left | [left films] | gap | [right films] | right  with films
given as material:thickness, ordered toward the gap on the left side and
away from the gap on the right side.

Usage:
  direct_sum_oracle.py energy --left silica --gap toluene --right silica \
      -d 5e-9 [-T 300] [--no-retard] [--left-film gold:2e-9] [--right-film M:B]
  direct_sum_oracle.py sweep  ... --dmin 2e-10 --dmax 2e-8 --points 40 [--lin]
"""

import argparse
import numpy as np

HBAR = 1.054571817e-34
KB = 1.380649e-23
C0 = 2.99792458e8
EV = 1.519267e15          # rad/s per eV

YCUT = 45.0               # integration window above y0; exp(-45) ~ 3e-20
NQUAD = 200
NCHUNK = 4096
NMAX = 400_000

# Material parameter sets, angular frequencies in eV.  These are frozen and
# must match materials/default.matlib exactly.
# oscillator: eps(i xi) = 1 + sum C w^2 / (w^2 + g xi + xi^2)
# drude:      eps(i xi) = 1 + wp^2 / (xi (xi + nu))
MATERIALS = {
    "vacuum": {"kind": "oscillator", "terms": []},
    # Two-term UV oscillator fit anchored to fused-silica visible refractive
    # data (n_D = 1.4585, dispersion per Malitson 1965); IR bands omitted
    # following the optical-data convention of liquid-gap force work.
    "silica": {"kind": "oscillator",
               "terms": [(0.45, 10.4), (0.655, 20.0)]},
    "gold": {"kind": "drude", "wp": 9.0, "nu": 0.035},
    # Drude-Lorentz parameterization of Au after Rakic et al. (1998)
    "gold-dl": {"kind": "drude-lorentz", "wp": 9.03, "f0": 0.760,
                "g0": 0.053,
                "poles": [(0.024, 0.415, 0.241), (0.010, 0.830, 0.345),
                          (0.071, 2.969, 0.870), (0.601, 4.304, 2.494),
                          (4.384, 13.32, 2.214)]},
    # Two-oscillator model, single UV resonance (Munday-style fit).
    "bromobenzene-M": {"kind": "oscillator",
                       "terms": [(2.967, 0.036), (1.335, 8.465)]},
    # Four-oscillator model with split UV (van Zwol-style fit).
    "bromobenzene-Z": {"kind": "oscillator",
                       "terms": [(2.55, 3.29e-4), (0.50, 0.0744),
                                 (0.72, 6.5), (0.62, 16.0)]},
    # Debye/IR terms plus a two-term UV fit anchored to n_D = 1.4969 and the
    # visible dispersion of toluene; static value 2.380.
    "toluene": {"kind": "oscillator",
                "terms": [(0.06, 3.29e-4), (0.15, 0.093),
                          (0.169069, 4.304624), (1.000931, 15.858718)]},
    # synthetic media used by the solver's test suite
    "ideal-metal": {"kind": "drude", "wp": 1.0e18 / EV, "nu": 0.0},
    "osc-a": {"kind": "oscillator", "terms": [(1.5, 1.2e16 / EV)]},
    "osc-b": {"kind": "oscillator", "terms": [(2.2, 9.0e15 / EV)]},
    "osc-gap": {"kind": "oscillator", "terms": [(0.8, 7.0e15 / EV)]},
}


def _load_gold_table():
    """Registers the tabulated gold entry shared with materials/default.matlib."""
    import json
    import os
    path = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))),
                        "materials", "default.matlib")
    if not os.path.exists(path):
        return
    with open(path) as f:
        doc = json.load(f)
    for m in doc["materials"]:
        if m["kind"] != "tabulated":
            continue
        xi = np.array([s[0] * EV for s in m["samples"]])
        eps = np.array([s[1] for s in m["samples"]])
        MATERIALS["gold-table"] = {"kind": "tabulated", "xi": xi, "eps": eps,
                                   "llx": np.log(xi), "lle": np.log(eps - 1.0)}
        return


def eval_eps(mat, xi):
    """Permittivity on the imaginary axis; xi is an array, xi > 0."""
    if mat["kind"] == "drude":
        wp, nu = mat["wp"] * EV, mat["nu"] * EV
        return 1.0 + wp * wp / (xi * (xi + nu))
    if mat["kind"] == "tabulated":
        lx = np.log(np.clip(xi, mat["xi"][0], mat["xi"][-1]))
        return 1.0 + np.exp(np.interp(lx, mat["llx"], mat["lle"]))
    if mat["kind"] == "drude-lorentz":
        wp = mat["wp"] * EV
        e = 1.0 + mat["f0"] * wp * wp / (xi * (xi + mat["g0"] * EV))
        for f, w, g in mat["poles"]:
            w, g = w * EV, g * EV
            e = e + f * wp * wp / (w * w + g * xi + xi * xi)
        return e
    e = np.ones_like(xi)
    for cstr, w in mat["terms"]:
        w = w * EV
        e = e + cstr * w * w / (w * w + xi * xi)
    return e


def static_eps(mat):
    """Static value; np.inf marks a metal."""
    if mat["kind"] in ("drude", "drude-lorentz"):
        return np.inf
    if mat["kind"] == "tabulated":
        # The table clamps below its lowest sample, as the solver does.
        return mat["eps"][0]
    return 1.0 + sum(c for c, _ in mat["terms"])


def gauss_legendre01():
    x, w = np.polynomial.legendre.leggauss(NQUAD)
    return 0.5 * (x + 1.0), 0.5 * w


def fold(r_outer, r_inner, phase):
    return (r_outer + phase * r_inner) / (1.0 + phase * r_outer * r_inner)


def side_reflection(pol, eps_list, kap_list, thick):
    """Reflection seen from the gap for gap | films... | substrate.

    eps_list/kap_list: arrays ordered gap, film_1 .. film_m, substrate;
    thick: the m film thicknesses.
    """
    def fresnel(i, j):
        if pol == "TM":
            return (eps_list[j] * kap_list[i] - eps_list[i] * kap_list[j]) / (
                eps_list[j] * kap_list[i] + eps_list[i] * kap_list[j])
        return (kap_list[i] - kap_list[j]) / (kap_list[i] + kap_list[j])

    m = len(thick)
    r = fresnel(m, m + 1)
    for j in range(m, 0, -1):
        r = fold(fresnel(j - 1, j), r, np.exp(-2.0 * kap_list[j] * thick[j - 1]))
    return r


def static_side_reflection(films, sub, eps3s, k):
    """n = 0 TM reflection: static permittivities, metals reflect with r = 1."""
    eps_list = [eps3s] + [static_eps(m) for m, _ in films] + [static_eps(sub)]
    thick = [t for _, t in films]
    ones = np.ones_like(k)

    def fres(i, j):
        if np.isinf(eps_list[j]) and np.isinf(eps_list[i]):
            return 0.0 * ones
        if np.isinf(eps_list[j]):
            return ones
        if np.isinf(eps_list[i]):
            return -ones
        return ((eps_list[j] - eps_list[i]) / (eps_list[j] + eps_list[i])) * ones

    m = len(thick)
    r = fres(m, m + 1)
    for j in range(m, 0, -1):
        r = fold(fres(j - 1, j), r, np.exp(-2.0 * k * thick[j - 1]))
    return r


def free_energy(stack, d, T, retarded=True):
    """Free energy per unit area [J/m^2] of the stack at separation d."""
    left, lfilms, gap, rfilms, right = stack
    beta = 1.0 / (KB * T)
    xi1 = 2.0 * np.pi / (HBAR * beta)
    nodes, weights = gauss_legendre01()
    eps3s = static_eps(gap)

    # n = 0: TM with static permittivities, halved; TE vanishes identically
    y = nodes * YCUT
    w = weights * YCUT
    k = y / (2.0 * d)
    rl = static_side_reflection(lfilms, left, eps3s, k)
    rr = static_side_reflection(rfilms, right, eps3s, k)
    total = 0.5 * np.sum(w * y * np.log1p(-np.exp(-y) * rl * rr))

    if retarded:
        nmax = int(np.ceil(YCUT * C0 / (2.0 * d * np.sqrt(eps3s) * xi1))) + 8
    else:
        nmax = NMAX

    n0 = 1
    while n0 <= nmax:
        n = np.arange(n0, min(n0 + NCHUNK, nmax + 1))
        xi = n * xi1                                      # (N,)
        if retarded:
            y0 = 2.0 * np.sqrt(eval_eps(gap, xi)) * xi * d / C0
        else:
            y0 = np.zeros_like(xi)
        y = y0[:, None] + nodes[None, :] * YCUT           # (N, Q)
        wy = weights[None, :] * YCUT
        k2 = (y - y0[:, None]) * (y + y0[:, None]) / (4.0 * d * d)

        def kap(mat):
            if not retarded:
                return np.sqrt(k2)
            return np.sqrt(k2 + eval_eps(mat, xi)[:, None] * (xi[:, None] / C0) ** 2)

        def epsm(mat):
            return eval_eps(mat, xi)[:, None]

        kap3 = y / (2.0 * d) if retarded else np.sqrt(k2)
        integ = np.zeros_like(y)
        for pol in ("TM", "TE"):
            eps_l = [epsm(gap)] + [epsm(m) for m, _ in lfilms] + [epsm(left)]
            kap_l = [kap3] + [kap(m) for m, _ in lfilms] + [kap(left)]
            eps_r = [epsm(gap)] + [epsm(m) for m, _ in rfilms] + [epsm(right)]
            kap_r = [kap3] + [kap(m) for m, _ in rfilms] + [kap(right)]
            rl = side_reflection(pol, eps_l, kap_l, [t for _, t in lfilms])
            rr = side_reflection(pol, eps_r, kap_r, [t for _, t in rfilms])
            integ += np.log1p(-np.exp(-y) * rl * rr)
        terms = np.sum(wy * y * integ, axis=1)
        total += np.sum(terms)
        if not retarded:
            t_last, ntop = abs(terms[-1]), n[-1]
            if t_last * ntop / 3.0 < 1e-10 * abs(total):
                break
        n0 += NCHUNK

    return total / (2.0 * np.pi * beta * 4.0 * d * d)


_load_gold_table()


def parse_films(vals):
    out = []
    for v in vals or []:
        name, th = v.rsplit(":", 1)
        out.append((MATERIALS[name], float(th)))
    return out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("mode", choices=["energy", "sweep"])
    ap.add_argument("--left", required=True)
    ap.add_argument("--gap", required=True)
    ap.add_argument("--right", required=True)
    ap.add_argument("--left-film", action="append")
    ap.add_argument("--right-film", action="append")
    ap.add_argument("-d", type=float, default=5e-9)
    ap.add_argument("-T", type=float, default=300.0)
    ap.add_argument("--no-retard", action="store_true")
    ap.add_argument("--dmin", type=float, default=2e-10)
    ap.add_argument("--dmax", type=float, default=2e-8)
    ap.add_argument("--points", type=int, default=25)
    ap.add_argument("--lin", action="store_true")
    args = ap.parse_args()

    stack = (MATERIALS[args.left], parse_films(args.left_film),
             MATERIALS[args.gap], parse_films(args.right_film),
             MATERIALS[args.right])
    if args.mode == "energy":
        e = free_energy(stack, args.d, args.T, not args.no_retard)
        print(f"{args.d:.6e}  {e:.12e}")
    else:
        if args.lin:
            ds = np.linspace(args.dmin, args.dmax, args.points)
        else:
            ds = np.geomspace(args.dmin, args.dmax, args.points)
        for d in ds:
            e = free_energy(stack, d, args.T, not args.no_retard)
            print(f"{d:.6e}  {e:.12e}")


if __name__ == "__main__":
    main()
