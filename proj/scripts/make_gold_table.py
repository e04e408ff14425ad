#!/usr/bin/env python3
"""Regenerates materials/default.matlib.

The oscillator entries are written verbatim from the frozen parameter sets
below.  The gold entry is produced by evaluating the Drude-Lorentz
parameterization of Au (Rakic et al. 1998) on the imaginary axis and
tabulating it at 16 points per decade from 1e11 to 1e20 rad/s; the library's
log-log interpolation then reproduces the analytic curve to a few parts in
1e5, and every consumer (solver, tests, oracle) shares the identical table.

Run from the repository root:  python3 scripts/make_gold_table.py
"""

import json
import math
import os

EV = 1.519267e15  # rad/s per eV (library-wide conversion convention)

GOLD = {
    "wp": 9.03, "f0": 0.760, "g0": 0.053,
    "poles": [(0.024, 0.415, 0.241), (0.010, 0.830, 0.345),
              (0.071, 2.969, 0.870), (0.601, 4.304, 2.494),
              (4.384, 13.32, 2.214)],
}


def gold_eps(xi):
    """Drude-Lorentz gold on the imaginary axis; xi in rad/s."""
    wp = GOLD["wp"] * EV
    e = 1.0 + GOLD["f0"] * wp * wp / (xi * (xi + GOLD["g0"] * EV))
    for f, w, g in GOLD["poles"]:
        w, g = w * EV, g * EV
        e += f * wp * wp / (w * w + g * xi + xi * xi)
    return e


def gold_samples():
    per_decade = 16
    lo, hi = 11, 20
    n = (hi - lo) * per_decade + 1
    samples = []
    for i in range(n):
        xi = 10.0 ** (lo + i / per_decade)
        samples.append([xi / EV, gold_eps(xi)])
    return samples


def oscillator(name, source, terms):
    return {
        "name": name,
        "kind": "oscillator",
        "source": source,
        "terms": [{"strength": c, "resonance_eV": w} for c, w in terms],
    }


MATERIALS = [
    oscillator(
        "SiO2",
        "Two-term UV oscillator fit for fused silica anchored to the visible "
        "refractive index (n_D = 1.4585, Malitson 1965 dispersion); "
        "IR bands omitted per the optical-data convention for dispersion "
        "forces across liquid gaps.",
        [(0.45, 10.4), (0.655, 20.0)],
    ),
    {
        "name": "Au",
        "kind": "tabulated",
        "source": "Drude-Lorentz parameterization of gold after Rakic et al., "
                  "Appl. Opt. 37, 5271 (1998), evaluated on the imaginary axis "
                  "and tabulated at 16 points per decade "
                  "(scripts/make_gold_table.py).",
        "samples": gold_samples(),
    },
    oscillator(
        "bromobenzene-M",
        "Two-oscillator bromobenzene model: one IR term plus a single "
        "effective UV resonance (variant M of the liquid bromobenzene fits "
        "used in dispersion-force work).",
        [(2.967, 0.036), (1.335, 8.465)],
    ),
    oscillator(
        "bromobenzene-Z",
        "Four-oscillator bromobenzene model with split UV response (variant Z "
        "of the liquid bromobenzene fits used in dispersion-force work).",
        [(2.55, 3.29e-4), (0.50, 0.0744), (0.72, 6.5), (0.62, 16.0)],
    ),
    oscillator(
        "toluene",
        "Four-oscillator toluene model (Debye/IR terms plus two UV "
        "resonances) anchored to n_D = 1.4969 at 589 nm and a static "
        "permittivity of 2.38.",
        [(0.06, 3.29e-4), (0.15, 0.093),
         (0.169069, 4.304624), (1.000931, 15.858718)],
    ),
]


def main():
    root = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
    path = os.path.join(root, "materials", "default.matlib")
    os.makedirs(os.path.dirname(path), exist_ok=True)
    with open(path, "w") as f:
        json.dump({"materials": MATERIALS}, f, indent=2)
        f.write("\n")
    print(f"wrote {path}")
    lo = MATERIALS[1]["samples"][0]
    hi = MATERIALS[1]["samples"][-1]
    print(f"gold table: {len(MATERIALS[1]['samples'])} samples, "
          f"xi = {lo[0] * EV:.3e} .. {hi[0] * EV:.3e} rad/s, "
          f"eps-1 = {lo[1] - 1:.3e} .. {hi[1] - 1:.3e}")
    assert all(s[1] > 1.0 for s in MATERIALS[1]["samples"])


if __name__ == "__main__":
    main()
