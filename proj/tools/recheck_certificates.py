#!/usr/bin/env python3
"""Recomputes C* certificate ratios in multiprecision.

Usage: recheck_certificates.py REPORT.json [--dps N]

Reads a `search --mode cstar` or `cstar` report, rebuilds each certified
polynomial coordinate-wise, finds critical points with mpmath and prints the
min/max ratio over the product critical set next to the stored values.
Exits 1 if any recomputed ratio disagrees with the stored one beyond --tol.
"""
import argparse
import itertools
import json
import sys

import mpmath as mp


def coordinate_poly(roots, lead):
    desc = [mp.mpc(1)]
    for a in roots:
        nxt = desc + [mp.mpc(0)]
        for i in range(1, len(nxt)):
            nxt[i] -= a * desc[i - 1]
        desc = nxt
    return [lead * c for c in desc]


def recheck(cert):
    poly = cert["poly"]
    n, k = poly["degree"], poly["dim"]
    z = [mp.mpc(*x) for x in cert["z"]]
    lead = [mp.mpc(*x) for x in poly["lead"]]
    crit, values, derivs = [], [], []
    for t in range(k):
        desc = coordinate_poly([mp.mpc(*r[t]) for r in poly["roots"]], lead[t])
        der = [desc[i] * (n - i) for i in range(n)]
        points = mp.polyroots(der, maxsteps=400, extraprec=400) if n > 2 else [-der[1] / der[0]]
        crit.append([(w, mp.polyval(desc, w)) for w in points])
        values.append(mp.polyval(desc, z[t]))
        derivs.append(mp.polyval(der, z[t]))
    dnorm = max(abs(d) for d in derivs)
    lo, hi = mp.inf, mp.mpf(0)
    for combo in itertools.product(*crit):
        num = max(abs(values[t] - combo[t][1]) for t in range(k))
        den = max(abs(z[t] - combo[t][0]) for t in range(k))
        r = num / (den * dnorm)
        lo, hi = min(lo, r), max(hi, r)
    return n, k, lo, hi


def certificates(report):
    result = report["result"]
    cells = result["cells"] if report["subcommand"] == "search" else [result["summary"]]
    for cell in cells:
        yield from cell["certificates"]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("report")
    ap.add_argument("--dps", type=int, default=50)
    ap.add_argument("--tol", type=float, default=1e-9)
    args = ap.parse_args()
    mp.mp.dps = args.dps
    with open(args.report) as f:
        report = json.load(f)
    bad = 0
    count = 0
    for cert in certificates(report):
        count += 1
        n, k, lo, hi = recheck(cert)
        dmin = abs(float(lo) - cert["recheck_min_ratio"])
        dmax = abs(float(hi) - cert["recheck_max_ratio"])
        ok = dmin <= args.tol and dmax <= args.tol
        bad += not ok
        print(f"{'ok  ' if ok else 'DIFF'}  n={n} k={k} violated={cert['violated']} "
              f"min {mp.nstr(lo, 17)} max {mp.nstr(hi, 17)} "
              f"(stored {cert['recheck_min_ratio']!r}, {cert['recheck_max_ratio']!r})")
    print(f"{count} certificate(s), {bad} disagreement(s)")
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
