#!/usr/bin/env python3
"""Generate the Riemann-Siegel correction polynomials C_0..C_4.

Each C_j(p) is a combination of derivatives of
    Psi(p) = cos(2*pi*(p^2 - p - 1/16)) / cos(2*pi*p)
and is tabulated as a power series in x = p - 1/2. Series arithmetic is done
with mpmath at 100 digits so the cancellation in the quotient is harmless.

Usage: gen_rs_coefficients.py > core/src/rs_coefficients.inc
"""
import mpmath as mp

mp.mp.dps = 100
ORDER = 90
CUTOFF = mp.mpf("1e-21")  # drop terms with |c_n| * 2^-n below this


def series_cos_of_poly(scale, shift, power):
    """Series of cos(scale * x^power + shift) up to ORDER."""
    out = [mp.mpf(0)] * (ORDER + 1)
    c, s = mp.cos(shift), mp.sin(shift)
    m = 0
    while power * m <= ORDER:
        term = scale ** m / mp.factorial(m)
        # cos(a + shift) = cos a cos shift - sin a sin shift
        if m % 4 == 0:
            coef = c
        elif m % 4 == 1:
            coef = -s
        elif m % 4 == 2:
            coef = -c
        else:
            coef = s
        out[power * m] += term * coef
        m += 1
    return out


def divide(num, den):
    q = [mp.mpf(0)] * (ORDER + 1)
    for n in range(ORDER + 1):
        acc = num[n] - sum(q[i] * den[n - i] for i in range(n))
        q[n] = acc / den[0]
    return q


def derivative(series, order):
    out = list(series)
    for _ in range(order):
        out = [out[i + 1] * (i + 1) for i in range(len(out) - 1)]
    return out


def combine(parts):
    n = min(len(p) for _, p in parts)
    return [sum(c * p[i] for c, p in parts) for i in range(n)]


pi = mp.pi
num = series_cos_of_poly(2 * pi, -5 * pi / 8, 2)
den = series_cos_of_poly(2 * pi, mp.mpf(0), 1)
psi = [-v for v in divide(num, den)]
d = lambda j: derivative(psi, j)

polys = [
    psi,
    combine([(-1 / (96 * pi**2), d(3))]),
    combine([(1 / (64 * pi**2), d(2)), (1 / (18432 * pi**4), d(6))]),
    combine([(-1 / (64 * pi**2), d(1)), (-1 / (3840 * pi**4), d(5)),
             (-1 / (5308416 * pi**6), d(9))]),
    combine([(1 / (128 * pi**2), d(0)), (19 / (24576 * pi**4), d(4)),
             (11 / (5898240 * pi**6), d(8)), (1 / (2038431744 * pi**8), d(12))]),
]

print("// Generated by tools/gen_rs_coefficients.py. Do not edit.")
print("// Power-series coefficients of the Riemann-Siegel corrections C_j(p)")
print("// in x = p - 1/2, lowest order first.")
for j, p in enumerate(polys):
    last = max(i for i, v in enumerate(p) if abs(v) * mp.mpf(2) ** (-i) > CUTOFF)
    vals = ", ".join(mp.nstr(p[i], 20, min_fixed=1, max_fixed=0) for i in range(last + 1))
    print(f"inline constexpr double kRsC{j}[] = {{{vals}}};")
