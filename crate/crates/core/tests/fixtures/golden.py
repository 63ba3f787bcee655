"""Golden values for sbm1-vs-smooth2-n400.ndjson, computed straight from the
expansion formulas with the Python standard library only."""
import json, math, sys
from statistics import NormalDist

path = sys.argv[1] if len(sys.argv) > 1 else "sbm1-vs-smooth2-n400.ndjson"
recs = [json.loads(l) for l in open(path) if l.strip()]
a, b = recs
nd = NormalDist()

def summ(rec, motif):
    return next(s for s in rec["summaries"] if s["motif"]["name"] == motif)

def phi(u):
    return math.exp(-u * u / 2) / math.sqrt(2 * math.pi)

def Phi(u):
    return 0.5 * math.erfc(-u / math.sqrt(2))

for motif in ("vshape", "triangle"):
    A, B = summ(a, motif), summ(b, motif)
    m, n = a["n"], b["n"]
    s = A["motif"]["s"]
    S2 = A["xi_alpha1_sq"] / m + B["xi_alpha1_sq"] / n
    S = math.sqrt(S2)
    D = A["u_hat"] / A["rho_hat"] ** s - B["u_hat"] / B["rho_hat"] ** s
    I0 = (A["alpha0_hat"] / m - B["alpha0_hat"] / n) / S
    Q1 = (-(A["e_a1_a3"] + A["e_a4_a1"]) / m**2 + (B["e_a1_a3"] + B["e_a4_a1"]) / n**2) / (2 * S**3)
    Q2 = ((A["e_a1_cubed"] / 6 + A["e_a1a1a2"]) / m**2 - (B["e_a1_cubed"] / 6 + B["e_a1a1a2"]) / n**2) / S**3
    Q2 += (-(A["xi_alpha1_sq"] / m**3 + B["xi_alpha1_sq"] / (m**2 * n)) * (A["e_a1_a3"] + A["e_a4_a1"])
           + (A["xi_alpha1_sq"] / (m * n**2) + B["xi_alpha1_sq"] / n**3) * (B["e_a1_a3"] + B["e_a4_a1"])) / (2 * S**5)
    for delta in (0.0, 0.125):
        T = D / S + delta
        G = min(1.0, max(0.0, Phi(T) - phi(T) * (Q1 + Q2 * (T * T + 1) + I0)))
        p = min(1.0, 2 * min(G, 1 - G))
        zl, zh = nd.inv_cdf(0.05), nd.inv_cdf(0.95)
        ql = zl + I0 + Q1 + Q2 * (zl * zl - 1)
        qh = zh + I0 + Q1 + Q2 * (zh * zh - 1)
        lo, hi = D - (qh - delta) * S, D - (ql - delta) * S
        print(f"{motif} delta={delta}: T={T!r} p={p!r} ci=({lo!r}, {hi!r}) I0={I0!r} Q1={Q1!r} Q2={Q2!r}")
