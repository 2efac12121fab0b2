#!/usr/bin/env python3
"""Weight-2 modular symbols for Gamma0(N) via Manin symbols.

Independent oracle used to produce the modular-symbol fixtures consumed by
the C++ library. Exact rational arithmetic throughout.

Usage:
  modsym_oracle.py --conductor 37 --a2 -2 --p 3 --maxN 6 --out e37a_p3.json

The newform is selected by prescribing Hecke eigenvalues at small primes
(--eig q:a_q, repeatable); the selected eigenspace of the plus and minus
parts must be one-dimensional.
"""
import argparse
import json
import math
from fractions import Fraction

import sympy

INF = None  # the cusp at infinity


class P1:
    def __init__(self, N):
        self.N = N
        units = [u for u in range(1, N) if math.gcd(u, N) == 1] or [1]
        self.units = units
        reps = {}
        for c in range(N):
            for d in range(N):
                if math.gcd(math.gcd(c, d), N) != 1:
                    continue
                key = min(((u * c) % N, (u * d) % N) for u in units)
                reps.setdefault(key, len(reps))
        self.index = reps
        self.elems = sorted(reps, key=lambda k: reps[k])
        self.units = units

    def normalize(self, c, d):
        N = self.N
        key = min(((u * c) % N, (u * d) % N) for u in self.units)
        return self.index[key]

    def __len__(self):
        return len(self.elems)


def ext_gcd(a, b):
    if b == 0:
        return (a, 1, 0) if a >= 0 else (-a, -1, 0)
    g, x, y = ext_gcd(b, a % b)
    return g, y, x - (a // b) * y


def lift_sl2(c, d, N):
    """Return (a,b,c',d') in SL2(Z) with c'=c, d'=d mod N."""
    for i in range(0, 50):
        for j in range(0, 50):
            cc = c + i * N
            dd = d + j * N
            if math.gcd(cc, dd) == 1:
                g, x, y = ext_gcd(dd, cc)  # x*dd + y*cc = 1
                a, b = x, -y
                assert a * dd - b * cc == 1
                return a, b, cc, dd
    raise RuntimeError("lift failed")


def cusp_frac(num, den):
    if den == 0:
        return INF
    return Fraction(num, den)


def zero_to(r, p1):
    """{0, r} as a dict of Manin-symbol index -> coefficient."""
    out = {}

    def add(c, d, s):
        i = p1.normalize(c % p1.N, d % p1.N)
        out[i] = out.get(i, 0) + s

    if r is INF:
        add(0, 1, 1)
        return out
    # continued fraction convergents of r
    num, den = r.numerator, r.denominator
    quots = []
    while den != 0:
        q = num // den
        quots.append(q)
        num, den = den, num - q * den
    p_prev, q_prev = 0, 1   # p_{-2}, q_{-2}
    p_cur, q_cur = 1, 0     # p_{-1}, q_{-1}
    add(0, 1, 1)            # {0, oo}
    for a in quots:
        p_new = a * p_cur + p_prev
        q_new = a * q_cur + q_prev
        p_prev, q_prev, p_cur, q_cur = p_cur, q_cur, p_new, q_new
        det = p_cur * q_prev - p_prev * q_cur
        if det == 1:
            add(q_cur, q_prev, 1)
        else:
            assert det == -1
            add(-q_cur, q_prev, 1)
    return out


def symbol(alpha, beta, p1):
    out = {}
    for k, v in zero_to(beta, p1).items():
        out[k] = out.get(k, 0) + v
    for k, v in zero_to(alpha, p1).items():
        out[k] = out.get(k, 0) - v
    return out


def manin_cusps(idx, p1):
    c, d = p1.elems[idx]
    a, b, cc, dd = lift_sl2(c, d, p1.N)
    return cusp_frac(b, dd), cusp_frac(a, cc)  # g(0), g(oo)


def neg(r):
    return INF if r is INF else -r


def hecke_cusp(r, m, shift):
    """(r + shift)/m for a cusp; m*r when called with shift None."""
    if r is INF:
        return INF
    return (r + shift) / m


def vec(d, n):
    v = [0] * n
    for k, c in d.items():
        v[k] += c
    return v


def build(N, eigs, p, maxN):
    p1 = P1(N)
    n = len(p1)
    rels = []
    for i, (c, d) in enumerate(p1.elems):
        s = [0] * n
        s[i] += 1
        s[p1.normalize(d % N, (-c) % N)] += 1
        rels.append(s)
        t = [0] * n
        t[i] += 1
        t[p1.normalize(d % N, (-c - d) % N)] += 1
        t[p1.normalize((-c - d) % N, c % N)] += 1
        rels.append(t)
    R = sympy.Matrix(rels)
    dual = R.nullspace()
    B = sympy.Matrix.hstack(*dual)  # n x k, columns are functionals

    cusps = [manin_cusps(i, p1) for i in range(n)]

    def op_matrix(fn):
        M = sympy.zeros(n, n)
        for i in range(n):
            a0, ainf = cusps[i]
            for k, v in fn(a0, ainf).items():
                M[k, i] += v
        return M

    def hecke(q):
        def fn(a0, ainf):
            out = {}
            terms = [(hecke_cusp(a0, q, r), hecke_cusp(ainf, q, r)) for r in range(q)]
            if N % q != 0:
                terms.append((INF if a0 is INF else a0 * q, INF if ainf is INF else ainf * q))
            for x, y in terms:
                for k, v in symbol(x, y, p1).items():
                    out[k] = out.get(k, 0) + v
            return out
        return op_matrix(fn)

    star = op_matrix(lambda a0, ainf: symbol(neg(a0), neg(ainf), p1))

    result = {}
    for sign in (1, -1):
        blocks = [(star.T - sign * sympy.eye(n)) * B]
        for q, aq in eigs:
            blocks.append((hecke(q).T - aq * sympy.eye(n)) * B)
        coeffs = sympy.Matrix.vstack(*blocks).nullspace()
        if len(coeffs) != 1:
            raise RuntimeError(f"sign {sign}: eigenspace dim {len(coeffs)}")
        phi = B * coeffs[0]
        den = sympy.ilcm(*[sympy.fraction(x)[1] for x in phi])
        phi = [int(x * den) for x in phi]
        g = 0
        for x in phi:
            g = math.gcd(g, x)
        phi = [x // g for x in phi]
        first = next(x for x in phi if x != 0)
        if first < 0:
            phi = [-x for x in phi]
        result[sign] = phi

    def evaluate(phi, r):
        # [r] = phi({oo, r})
        return sum(phi[k] * v for k, v in symbol(INF, r, p1).items())

    # self-check: Hecke eigen-relation on cusps for a few r at each q
    for q, aq in eigs:
        if N % q == 0:
            continue
        for sgn in (1, -1):
            phi = result[sgn]
            for r in [Fraction(1, 5), Fraction(2, 7), Fraction(0), Fraction(3, 11)]:
                lhs = aq * evaluate(phi, r)
                rhs = sum(evaluate(phi, (r + j) / q) for j in range(q)) + evaluate(phi, r * q)
                assert lhs == rhs, (q, sgn, r)

    symbols = []
    for lev in range(0, maxN + 1):
        m = p ** lev
        for a in range(m):
            if lev > 0 and a % p == 0:
                continue
            r = Fraction(a, m)
            symbols.append({
                "a": a, "N": lev,
                "plus": f"{evaluate(result[1], r)}/1",
                "minus": f"{evaluate(result[-1], r)}/1",
            })
    return symbols


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--conductor", type=int, required=True)
    ap.add_argument("--eig", action="append", default=[], help="q:a_q")
    ap.add_argument("--p", type=int, required=True)
    ap.add_argument("--ap", type=int, required=True)
    ap.add_argument("--maxN", type=int, required=True)
    ap.add_argument("--out", required=True)
    args = ap.parse_args()
    eigs = [tuple(int(t) for t in e.split(":")) for e in args.eig]
    if args.conductor % args.p != 0 and all(q != args.p for q, _ in eigs):
        eigs.append((args.p, args.ap))
    syms = build(args.conductor, eigs, args.p, args.maxN)
    doc = {
        "p": args.p,
        "conductor": args.conductor,
        "ap": args.ap,
        "eps_p": 0 if args.conductor % args.p == 0 else 1,
        "maxN": args.maxN,
        "period_convention": "plus/minus parts of the primitive integral "
                             "period functional on Manin symbols; "
                             "[r] = phi({oo, r})",
        "symbols": syms,
    }
    with open(args.out, "w") as fh:
        json.dump(doc, fh, indent=1)
        fh.write("\n")


if __name__ == "__main__":
    main()
