#!/usr/bin/env python3
"""Spectral data of the quantum harmonic oscillator, end to end.

Computes the first eigenvalues and norming constants of -u'' + x^2 u on the
line, compares them to the exact values 2n+1 and n! sqrt(pi), then builds
the spectral measure and checks Parseval's identity for a Gaussian.

Run from the repository root:  python3 demos/harmonic_spectrum.py
"""

import math

import numpy as np
from scipy.integrate import simpson

from specweyl import (FundamentalFrame, Side, eigenvalues, expand, harmonic,
                      norming_constants, spectral_measure)


def main():
    frame = FundamentalFrame(harmonic(), 0.5)

    print("== eigenvalues (exact: 2n+1) ==")
    eigs = eigenvalues(frame, 8)
    for n, lam in enumerate(eigs):
        print(f"  n={n}: {lam:.12f}   err {lam - (2 * n + 1):+.2e}")

    print("== norming constants (exact: n! sqrt(pi)) ==")
    g2 = norming_constants(frame, eigs[:6], Side.Left)
    for n, g in enumerate(g2):
        exact = math.factorial(n) * math.sqrt(math.pi)
        print(f"  n={n}: {g:.10f}   rel err {g / exact - 1.0:+.2e}")

    print("== Parseval for f = exp(-x^2), 20 atoms ==")
    meas = spectral_measure(frame, 20)
    xs = np.linspace(-8.0, 8.0, 2001)
    fs = np.exp(-xs * xs)
    coeff = expand(frame, (xs, fs), meas)
    total = sum(w * c * c for (_, w), c in zip(meas.atoms, coeff))
    norm = float(simpson(fs * fs, x=xs))
    print(f"  ||f||^2 = {norm:.12f}")
    print(f"  sum w_n fhat_n^2 = {total:.12f}")
    print(f"  relative defect = {abs(total - norm) / norm:.2e}")


if __name__ == "__main__":
    main()
