#!/usr/bin/env python3
"""Independent computations backing the frozen test constants.

Uses brute force over residues and sympy resultants (norms), sharing no code
with the C++ library. Run: python3 tools/oracle/derived_values.py
"""
from fractions import Fraction

import sympy as sp

x = sp.symbols("x")


def teichmuller_brute(a, p, M):
    m = p**M
    return [r for r in range(m) if r % p == a % p and pow(r, p - 1, m) == 1]


def log_gamma_brute(a, p, N):
    n = N - (1 if p != 2 else 2)
    m = p**N
    gamma = 1 + 2 * p
    if p == 2:
        omega = 1 if a % 4 == 1 else m - 1
    else:
        omega = teichmuller_brute(a, p, N)[0]
    target = (a * pow(omega, -1, m)) % m
    return [t for t in range(p**n) if pow(gamma, t, m) == target]


def hatted_phi3_level1():
    # (T^2+3T+3)(1+T)^2 reduced modulo (1+T)^3 - 1, T-coefficients
    T = sp.symbols("T")
    f = sp.expand((T**2 + 3 * T + 3) * (1 + T) ** 2)
    r = sp.rem(sp.Poly(f, T), sp.Poly((1 + T) ** 3 - 1, T))
    return [int(c) for c in reversed(r.all_coeffs())]


def theta_all_ones_fibers(p, N):
    n = N - 1
    counts = [0] * p**n
    for a in range(1, p**N):
        if a % p:
            counts[log_gamma_brute(a, p, N)[0]] += 1
    return counts


def vp(n, p):
    n = abs(int(n))
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return e


def ord_in_cyclotomic(g, p, J):
    """ord_p of g(zeta_{p^J}) via the norm: v_p(Res(Phi_{p^J}, g)) / degree."""
    phi = sp.Poly(sp.cyclotomic_poly(p**J, x), x)
    res = sp.resultant(phi, sp.Poly(g, x))
    return Fraction(vp(res, p), p ** (J - 1) * (p - 1))


def phi_poly(p, i, var):
    return sum(var ** (k * p ** (i - 1)) for k in range(p))


def main():
    print("teichmuller(2, 5, 3) =", teichmuller_brute(2, 5, 3))
    print("log_gamma(4, 3, N=2) =", log_gamma_brute(4, 3, 2))
    print("hatted Phi_3, n=1, T-coeffs =", hatted_phi3_level1())
    print("theta all-ones fibers p=3, N=2 =", theta_all_ones_fibers(3, 2))
    print("ord Phi_3(zeta_27) =", ord_in_cyclotomic(phi_poly(3, 1, x), 3, 3))
    # v2 = ord(a^2 - Phi_9(zeta_27)) for k = 1, eps = 1
    print("v2(a=3) =", ord_in_cyclotomic(9 - phi_poly(3, 2, x), 3, 3))
    z9 = x**3  # zeta_9 = zeta_27^3
    pi9 = z9 - 1
    print("v2(a=zeta_9-1) =", ord_in_cyclotomic(sp.expand(pi9**2 - phi_poly(3, 2, x)), 3, 3))
    a = pi9 * (1 + pi9)
    print("v2(a=(zeta_9-1)(zeta_9)) =", ord_in_cyclotomic(sp.expand(a**2 - phi_poly(3, 2, x)), 3, 3))
    # ord(zeta_{p^j}-1) and ord(Phi_{p^i}(zeta_{p^j})) table, p in {3,5}, j <= 3
    for p in (3, 5):
        for j in (1, 2, 3):
            row = [str(ord_in_cyclotomic(phi_poly(p, i, x), p, j)) if i != j else "0-divisor" for i in range(1, j + 2)]
            print(f"p={p} j={j} ord Phi_(p^i)(zeta) for i=1..{j + 1}:", row)


if __name__ == "__main__":
    main()
