#!/usr/bin/env python3
"""Regenerate curves.txt with PARI/GP (via cypari2).

Each line: a1,a2,a3,a4,a6,delta_min,conductor,p:kodaira:f:v,...
where v is the valuation of the minimal discriminant at p.
"""
import random
import sys

import cypari2

pari = cypari2.Pari()


def kodaira_name(k):
    k = int(k)
    if k == 1:
        return "I0"
    if k > 4:
        return "I%d" % (k - 4)
    if k in (2, 3, 4):
        return {2: "II", 3: "III", 4: "IV"}[k]
    if k == -1:
        return "I0*"
    if k < -4:
        return "I%d*" % (-k - 4)
    return {-2: "II*", -3: "III*", -4: "IV*"}[k]


def record(ai):
    e = pari.ellinit(ai)
    disc = e[11]
    if disc == 0:
        return None
    gr = pari.ellglobalred(e)
    conductor = int(gr[0])
    emin = pari.ellminimalmodel(e)
    dmin = int(emin[11])
    locs = []
    fa = pari.factor(abs(dmin))
    for i in range(len(fa[0])):
        p = int(fa[0][i])
        lr = pari.elllocalred(emin, p)
        f = int(lr[0])
        kod = kodaira_name(lr[1])
        v = int(pari.valuation(dmin, p))
        locs.append("%d:%s:%d:%d" % (p, kod, f, v))
    return ",".join([str(x) for x in ai] + [str(dmin), str(conductor)] + locs)


def quadratic(a, b, c, n):
    d = b * b - 4 * a * c
    return [0, 0, 0, -3 * d, -2 * d * (2 * a * n + b)]


def cubic(a, b, c, n):
    return [0, 0, 0, 3 * c * (a * n + b), 2 * c * c]


def scaled(ai, u, r=0, s=0, t=0):
    # inverse change of variables: a model whose minimal model is ai
    e = pari.ellinit(ai)
    e2 = pari.ellchangecurve(e, [pari(1) / u, r, s, t])
    return [int(e2[i]) for i in range(5)]


def main():
    curves = [
        [0, -1, 1, 0, 0],
        [0, 0, 0, -1, 0],
        [0, 0, 0, 0, 1],
        [0, 0, 0, -16, 0],
        quadratic(1, 0, 1, 1),
        quadratic(1, 0, 1, 7),
        quadratic(1, 1, 1, 3),
        quadratic(2, 3, 5, 4),
        cubic(1, 0, 1, 2),
        cubic(2, 1, -1, 5),
        [1, 0, 1, -171, -874],
        [0, 0, 0, -1, 1],
        [1, -1, 0, -4, 4],
        [0, 0, 1, -7, 6],
        [0, 0, 0, 0, 16],
        [1, 1, 1, -10, -10],
        scaled([0, -1, 1, 0, 0], 2),
        scaled([0, -1, 1, 0, 0], 6, 1, 1, 2),
        scaled([0, 0, 0, -1, 0], 3, 2, 0, 5),
        [0, 0, 0, 2**4 * 3, 2**6 * 5],
        [0, 0, 0, 3**5, 3**7],
        [0, 0, 0, 2**6 * 7, 2**9 * 11],
        [0, 0, 0, -3 * 5**3, 2 * 5**5],
        [0, 0, 0, 5**2 * 7, 5**3 * 11],
        [0, 0, 0, 5**3, 5**5 * 2],
        [0, 0, 0, 5**4, 5**6 * 3],
        [0, 0, 0, 7**2, 7**4],
        [0, 0, 0, 7**3, 7**5],
        [0, 0, 0, -3 * 7**2 * 13, 2 * 7**3 * 29],
    ]

    random.seed(20240601)
    while len(curves) < 90:
        ai = [random.randint(-2, 2), random.randint(-3, 3), random.randint(-2, 2),
              random.randint(-60, 60), random.randint(-200, 200)]
        curves.append(ai)
    for _ in range(20):
        a4 = random.choice([2, 3, 4, 6, 8, 9, 12, 16, 18, 27, 32, 36, 48]) * random.randint(-20, 20)
        a6 = random.choice([2, 3, 4, 8, 9, 16, 27, 32, 64, 81, 108]) * random.randint(-20, 20)
        curves.append([0, 0, 0, a4, a6])

    out = sys.stdout
    out.write("# a1,a2,a3,a4,a6,delta_min,conductor,p:kodaira:f:v...\n")
    out.write("# generated by PARI/GP %s via generate_curves.py\n" % pari.version()[:3].__repr__())
    for ai in curves:
        e = pari.ellinit(ai)
        if int(e[11]) == 0:
            continue
        out.write(record(ai) + "\n")


if __name__ == "__main__":
    main()
