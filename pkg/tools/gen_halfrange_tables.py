"""Generate embedded node/weight tables for the half-range Hermite rule.

Run from the repository root:  python tools/gen_halfrange_tables.py
"""

import time

import mpmath as mp


def rule(n, dps):
    with mp.workdps(dps):
        moms = [mp.gamma(mp.mpf(j + 1) / 2) / 2 for j in range(2 * n)]
        a = [moms[1] / moms[0]]
        b = [moms[0]]
        sig_prev = [mp.mpf(0)] * (2 * n)
        sig = list(moms)
        for k in range(1, n):
            sig_new = [mp.mpf(0)] * (2 * n)
            for l in range(k, 2 * n - k):
                sig_new[l] = sig[l + 1] - a[k - 1] * sig[l] - b[k - 1] * sig_prev[l]
            a.append(sig_new[k + 1] / sig_new[k] - sig[k] / sig[k - 1])
            b.append(sig_new[k] / sig[k - 1])
            sig_prev, sig = sig, sig_new
        J = mp.zeros(n)
        for i in range(n):
            J[i, i] = a[i]
        for i in range(1, n):
            off = mp.sqrt(b[i])
            J[i, i - 1] = off
            J[i - 1, i] = off
        E, Q = mp.eigsy(J)
        nodes = [E[i] for i in range(n)]
        weights = [b[0] * Q[0, i] ** 2 for i in range(n)]
        order = sorted(range(n), key=lambda i: nodes[i])
        return ([nodes[i] for i in order], [weights[i] for i in order])


def check(n, nodes, weights):
    # worst relative moment error over j <= 2n-1
    worst = 0.0
    with mp.workdps(40):
        for j in range(2 * n):
            exact = mp.gamma(mp.mpf(j + 1) / 2) / 2
            approx = mp.fsum(w * t ** j for t, w in zip(nodes, weights))
            worst = max(worst, abs(float((approx - exact) / exact)))
    return worst


def main():
    sizes = [8, 10, 15, 20, 32, 48, 64]
    out = ['"""Precomputed half-range Hermite Gauss rules (Golub-Welsch).',
           '',
           'Generated by tools/gen_halfrange_tables.py; see quadrature.py.',
           '"""',
           "",
           "TABLES = {"]
    for n in sizes:
        dps = 60 + 5 * n
        t0 = time.time()
        nodes, weights = rule(n, dps)
        err = check(n, nodes, weights)
        dt = time.time() - t0
        print(f"n={n:3d} dps={dps} err={err:.3e} time={dt:.1f}s")
        assert err < 1e-13, (n, err)
        fn = ", ".join(mp.nstr(x, 17) for x in nodes)
        fw = ", ".join(mp.nstr(x, 17) for x in weights)
        out.append(f"    {n}: (")
        out.append(f"        [{fn}],")
        out.append(f"        [{fw}],")
        out.append("    ),")
    out.append("}")
    with open("src/effcap/_halfrange_tables.py", "w") as fh:
        fh.write("\n".join(out) + "\n")


if __name__ == "__main__":
    main()
