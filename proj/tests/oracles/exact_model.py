#!/usr/bin/env python3
"""Independent reference values for the C++ tests.

Re-derives the channel model with scipy (bounded scalar minimisation, brentq
band edges, QUADPACK integrals, polyfit) and freezes the results in
tests/data/oracle_values.json. Nothing here shares code with the library.

    python3 tests/oracles/exact_model.py [out.json]
"""
import json
import math
import sys
from functools import lru_cache

import numpy as np
from scipy.integrate import quad
from scipy.optimize import brentq, minimize_scalar

K, S, W, ETA, C = 1.5, 0.5, 0.0, 0.25, 1500.0
L_BITS = 2048.0


def absorption(f):
    f2 = f * f
    return 0.11 * f2 / (1 + f2) + 44 * f2 / (4100 + f2) + 2.75e-4 * f2 + 0.003


def noise_db(f):
    lf = math.log10(f)
    parts = (
        17 - 30 * lf,
        40 + 20 * (S - 0.5) + 26 * lf - 60 * math.log10(f + 0.03),
        50 + 7.5 * math.sqrt(W) + 20 * lf - 40 * math.log10(f + 0.4),
        -15 + 20 * lf,
    )
    return 10 * math.log10(sum(10 ** (p / 10) for p in parts))


def noise(f):
    return 10 ** (noise_db(f) / 10)


def product_db(l, f):
    return K * 10 * math.log10(l * 1e3) + l * absorption(f) + noise_db(f)


@lru_cache(maxsize=None)
def band(l):
    fs = np.arange(0.1, 200.0 + 1e-9, 0.05)
    vals = [product_db(l, f) for f in fs]
    i = int(np.argmin(vals))
    res = minimize_scalar(lambda f: product_db(l, f), bounds=(fs[i - 1], fs[i + 1]),
                          method="bounded", options={"xatol": 1e-9})
    f0 = res.x
    target = product_db(l, f0) + 10 * math.log10(2)
    lo = brentq(lambda f: product_db(l, f) - target, 0.1, f0, xtol=1e-13)
    hi = brentq(lambda f: product_db(l, f) - target, f0, 200.0, xtol=1e-13)
    return f0, lo, hi


@lru_cache(maxsize=None)
def hop(l):
    """(bandwidth Hz, electrical watts per unit linear SNR)."""
    _, lo, hi = band(l)
    spread = K * 10 * math.log10(l * 1e3)
    n_int = quad(noise, lo, hi, epsabs=0, epsrel=1e-12, limit=200)[0]
    a_int = quad(lambda f: 10 ** (-(spread + l * absorption(f)) / 10), lo, hi,
                 epsabs=0, epsrel=1e-12, limit=200)[0]
    b = 1e3 * (hi - lo)
    return b, b * n_int / a_int * 10 ** -17.2 / ETA


def hop_energy(d, snr, pr):
    b, w = hop(d)
    return (10 ** (snr / 10) * w + pr) * L_BITS / b


def hop_delay(d):
    return L_BITS / hop(d)[0] + d * 1e3 / C


def fit(distances):
    x = np.log10(distances)
    bw = np.log10([hop(d)[0] / 1e3 for d in distances])
    slope_b, icpt_b = np.polyfit(x, bw, 1)
    out = {"lambda": -slope_b, "log10_omega": icpt_b, "power": {}}
    for snr in (5, 10, 15, 20, 25):
        p = np.log10([10 ** (snr / 10) * hop(d)[1] for d in distances])
        g, c = np.polyfit(x, p, 1)
        out["power"][str(snr)] = {"gamma": g, "log10_psi": c}
    return out


def midpoint_crossing(snr, pr):
    """Smallest l where the midpoint relay beats direct transmission."""
    gap = lambda l: hop_energy(l, snr, pr) - 2 * hop_energy(l / 2, snr, pr)
    grid = np.arange(1.0, 120.0, 0.5)
    prev = grid[0]
    for l in grid[1:]:
        if gap(prev) < 0 <= gap(l):
            return brentq(gap, prev, l, xtol=1e-9)
        prev = l
    raise RuntimeError("no crossing")


def main():
    out_path = sys.argv[1] if len(sys.argv) > 1 else "tests/data/oracle_values.json"
    doc = {"environment": {"k": K, "s": S, "w": W, "c": C, "eta": ETA}, "packet_bits": L_BITS}

    doc["absorption"] = [{"f_khz": f, "db_per_km": absorption(f)} for f in (0.5, 1, 10, 50, 100)]
    doc["noise_db"] = [{"f_khz": f, "db": noise_db(f)} for f in (0.1, 1, 10, 100)]

    doc["bands"] = []
    for l in (1, 5, 10, 30, 100):
        f0, lo, hi = band(l)
        b, w = hop(l)
        doc["bands"].append({"l_km": l, "f0_khz": f0, "lo_khz": lo, "hi_khz": hi,
                             "bandwidth_hz": b, "watts_per_unit_snr": w})

    doc["table1"] = []
    for snr in (10, 15, 20, 25):
        for l in (10, 20, 30, 40, 50):
            doc["table1"].append({
                "snr0_db": snr, "l_km": l,
                "e0_joule": hop_energy(l, snr, 0.5),
                "e1_mid_joule": 2 * hop_energy(l / 2, snr, 0.5),
                "d0_sec": hop_delay(l),
                "d1_mid_sec": 2 * hop_delay(l / 2) - l * 1e3 / C,
            })

    doc["fit_log_grid"] = fit(np.logspace(0, 2, 60))

    doc["midpoint_crossings"] = [
        {"snr0_db": snr, "p_r_w": pr, "l_km": midpoint_crossing(snr, pr)}
        for snr in (10, 15, 20, 25) for pr in (0.5, 2.0)
    ]

    with open(out_path, "w") as f:
        json.dump(doc, f, indent=2)
        f.write("\n")


if __name__ == "__main__":
    main()
