#!/usr/bin/env python3
"""Regenerate curves_random.txt (same line format as curves.txt) with PARI/GP.

Random long models, some deliberately non-minimal via a random change of
variables with u in {2, 3, 4, 5, 6, 7, 9, 10, 12}.
"""
import random
import sys

from generate_curves import record, scaled

random.seed(77031)
out = sys.stdout
out.write("# a1,a2,a3,a4,a6,delta_min,conductor,p:kodaira:f:v...\n")
n = 0
while n < 400:
    ai = [random.randint(-50, 50) for _ in range(5)]
    if random.random() < 0.3:
        ai = scaled(ai, random.choice([2, 3, 4, 5, 6, 7, 9, 10, 12]),
                    random.randint(-9, 9), random.randint(-9, 9), random.randint(-9, 9))
    rec = record(ai)
    if rec is None:
        continue
    out.write(rec + "\n")
    n += 1
