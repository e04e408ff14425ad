#!/usr/bin/env python3
"""Brute-force Hamaker constant for two bare half-spaces across a gap.

Computes A = (3 kB T / 2) * sum'_n Li3(r31 r32) by direct double summation
(Matsubara index n outside, polylog power series inside).  No quadrature,
no shared code with the C++ solver.  The non-retarded interaction energy of
the same system is E(d) = -A / (12 pi d^2), which is what the acceptance
suite checks the solver against.

The three media are single-oscillator models eps(i xi) = 1 + C w^2/(w^2+xi^2)
with the parameters hard-coded below.  Run once, freeze the printed value.
"""

import sys

HBAR = 1.054571817e-34   # J s
KB = 1.380649e-23        # J/K

# half-space 1 | gap 3 | half-space 2, single Lorentz oscillator each
C1, W1 = 1.5, 1.2e16     # oscillator strength, resonance [rad/s]
C3, W3 = 0.8, 7.0e15
C2, W2 = 2.2, 9.0e15
TEMPERATURE = 300.0      # K


def eps(C, w, xi):
    return 1.0 + C * w * w / (w * w + xi * xi)


def li3(x):
    """Li3 by its power series; |x| < 1 holds for every reflection product."""
    assert abs(x) < 1.0
    total, m, term = 0.0, 1, x
    while abs(term) > 1e-18 * max(abs(total), 1e-30) and m < 10000:
        total += term
        m += 1
        term = x**m / m**3
    return total


def main():
    beta = 1.0 / (KB * TEMPERATURE)
    xi1 = 2.0 * 3.141592653589793 / (HBAR * beta)

    def product(xi):
        e1, e3, e2 = eps(C1, W1, xi), eps(C3, W3, xi), eps(C2, W2, xi)
        return ((e1 - e3) / (e1 + e3)) * ((e2 - e3) / (e2 + e3))

    total = 0.5 * li3(product(0.0))
    n = 1
    while True:
        term = li3(product(n * xi1))
        total += term
        # reflection products fall off as xi^-4, so the tail beyond n is
        # bounded by term * n / 3; stop when that is negligible
        if n > 10 and abs(term) * n / 3.0 < 1e-13 * abs(total):
            break
        n += 1
        if n > 5_000_000:
            sys.exit("Matsubara sum did not converge")

    A = 1.5 * KB * TEMPERATURE * total
    print(f"terms used:            {n}")
    print(f"sum' Li3(r31 r32):     {total:.12e}")
    print(f"Hamaker constant A:    {A:.12e} J")
    print(f"E(d) * d^2 = -A/12pi:  {-A / (12.0 * 3.141592653589793):.12e} J")


if __name__ == "__main__":
    main()
