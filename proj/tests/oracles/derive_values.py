"""Independent numpy oracles for the frozen expected values in the C++ tests.

Run: python3 tests/oracles/derive_values.py
Nothing here imports or calls the C++ implementation.
"""
import numpy as np
from math import pi, sqrt, acos, cos


def normalized_laplacian(n, edges):
    a = np.zeros((n, n))
    for u, v in edges:
        if u == v:
            a[u, u] += 2.0
        else:
            a[u, v] += 1.0
            a[v, u] += 1.0
    d = a.sum(axis=1)
    dm = np.diag(1.0 / np.sqrt(d))
    return np.eye(n) - dm @ a @ dm


def sierpinski(gen):
    # G_1 = triangle with corners 0,1,2; corner i of copy j glued to corner j of copy i
    verts = 3
    edges = [(0, 1), (1, 2), (2, 0)]
    corners = [0, 1, 2]
    for _ in range(gen - 1):
        parent = {}

        def find(x):
            while parent.get(x, x) != x:
                x = parent[x]
            return x

        off = [0, verts, 2 * verts]
        for i in range(3):
            for j in range(3):
                if i < j:
                    a = off[j] + corners[i]
                    b = off[i] + corners[j]
                    parent[find(a)] = find(b)
        ids = {}
        for x in range(3 * verts):
            r = find(x)
            if r not in ids:
                ids[r] = len(ids)
        new_edges = [(ids[find(off[c] + u)], ids[find(off[c] + v)]) for c in range(3) for u, v in edges]
        new_corners = [ids[find(off[i] + corners[i])] for i in range(3)]
        verts, edges, corners = len(ids), new_edges, new_corners
    return verts, edges


def main():
    print("K4", np.linalg.eigvalsh(normalized_laplacian(4, [(i, j) for i in range(4) for j in range(i + 1, 4)])))
    print("C3", np.linalg.eigvalsh(normalized_laplacian(3, [(0, 1), (1, 2), (2, 0)])))
    print("P3", np.linalg.eigvalsh(normalized_laplacian(3, [(0, 1), (1, 2)])))
    for g in (1, 2, 3, 4):
        n, e = sierpinski(g)
        ev = np.linalg.eigvalsh(normalized_laplacian(n, e))
        degs = np.bincount(np.array(e).ravel(), minlength=n)
        print("sierpinski", g, "V", n, "E", len(e), "deg2", int((degs == 2).sum()), "deg4", int((degs == 4).sum()))
        print("  spectrum", np.round(ev, 12).tolist())
    for d0 in (3, 4):
        a = 2 * sqrt(d0 - 1) / d0
        w0 = acos(a)
        print("tree", d0, 1 - a, 1 + a, "omega0", w0, "I0", w0 ** 2, "I1", (pi - w0) ** 2, pi ** 2, (pi + w0) ** 2)
    print("mu=4/3 l=1", acos(-1 / 3) ** 2, (2 * pi - acos(-1 / 3)) ** 2)
    print("mu=1 l=2", (pi / 4) ** 2, (3 * pi / 4) ** 2, (5 * pi / 4) ** 2)
    print("C3 via g", acos(-0.5) ** 2)
    print("level1", (5 - sqrt(13)) / 8, (5 + sqrt(13)) / 8)
    # star secular oracle: symmetric modes sin w = 0, antisymmetric cos w = 0
    ks = sorted([(k * pi) ** 2 for k in range(0, 4)] + [((k + 0.5) * pi) ** 2 for k in range(0, 3)] * 2)
    print("star", ks[:8])
    # minmax bound at lambda=0, delta=0.01
    lam, d = 0.0, 0.01
    t = (lam + 2) ** 2 * d / (1 - d * (lam + 1))
    print("minmax", (lam + 2 + t) ** 2 / (1 - d * (lam + 1 + t)) * d)
    print("dbar pi2/4", abs(1 / (1 + pi ** 2 / 4) - 1 / (1.1 + pi ** 2 / 4)))
    # metric tensor sample: kappa=1, r=.5, eps=.1, y=.5, straight-length shortening with l0=l=1
    eps, k, r, y, rd, l0, l = 0.1, 1.0, 0.5, 0.5, 0.0, 1.0, 1.0
    c = 1 - eps * l0 / l
    gxx = ((1 + eps * k * r * y) ** 2 + eps ** 2 * y ** 2 * rd ** 2) * c ** 2
    print("Gxx", gxx, "factor", (1 + eps * k * r * y) ** 2, "det^1/2", sqrt(gxx * eps ** 2 * r ** 2))
    # K4 lift isometry via midpoint quadrature on weighted norm (deg-weighted l2)
    lam = acos(-1 / 3) ** 2
    s = sqrt(lam)
    a_vec = np.array([1.0, -1.0, 0.0, 0.0])
    xs = (np.arange(200000) + 0.5) / 200000
    tot = 0.0
    for i in range(4):
        for j in range(i + 1, 4):
            f = (a_vec[i] * np.sin((1 - xs) * s) + a_vec[j] * np.sin(xs * s)) / (sqrt(2) * np.sin(s))
            tot += np.mean(f * f)
    print("K4 lift norm^2", tot, "weighted l2", 3 * (a_vec ** 2).sum())


if __name__ == "__main__":
    main()
