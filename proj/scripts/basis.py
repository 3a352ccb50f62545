"""Basis set data (s/p only) and STO-6G construction by Slater-orbital fitting."""
import numpy as np
from scipy.optimize import minimize
from engine import BasisFn

# --- tabulated sets -------------------------------------------------------

STO3G_H = [("S", [3.42525091, 0.62391373, 0.16885540],
            [0.15432897, 0.53532814, 0.44463454])]

STO6G_H = [("S", [35.52322122, 6.513143725, 1.822142904,
                  0.625955266, 0.243076747, 0.100112428],
            [0.00916359628, 0.04936149294, 0.16853830490,
             0.37056279970, 0.41649152980, 0.13033408410])]

G631_H = [("S", [18.731137, 2.8253937, 0.6401217],
           [0.03349460, 0.23472695, 0.81375733]),
          ("S", [0.1612778], [1.0])]

G631_N = [("S", [4173.5110, 627.45790, 142.90210, 40.234330, 12.820210, 4.3904370],
           [0.00183477, 0.0139946, 0.0685866, 0.232857, 0.469034, 0.360455]),
          ("SP", [11.626358, 2.7162800, 0.7722180],
           [-0.114961, -0.169118, 1.145852],
           [0.0675797, 0.323907, 0.740895]),
          ("SP", [0.2120313], [1.0], [1.0])]

G631_Li = [("S", [642.41892, 96.798515, 22.091121, 6.2010703, 1.9351177, 0.63673580],
            [0.0021426078, 0.0162088715, 0.0773155725, 0.2457860520, 0.4701890040, 0.3454708450]),
           ("SP", [2.3249184, 0.6324306, 0.0790534],
            [-0.0350917, -0.1912328, 1.0839878],
            [0.0089415, 0.1410095, 0.9453637]),
           ("SP", [0.0359620], [1.0], [1.0])]

# --- STO-NG fitting -------------------------------------------------------
# Least-squares fit of zeta=1 Slater radial shells with N shared-exponent
# gaussians (2s/2p and 3s/3p share exponents, as in the original STO-NG).

def _gauss_s_norm(a):  # normalized s gaussian radial value factor
    return (2 * a / np.pi) ** 0.75

def _gauss_p_norm(a):
    return (128 * a ** 5 / np.pi ** 3) ** 0.25

def _slater_radial(n, r):  # normalized R_n(r) for zeta=1: N r^{n-1} e^{-r}
    from scipy.special import factorial
    N = (2.0) ** (n + 0.5) / np.sqrt(factorial(2 * n))
    return N * r ** (n - 1) * np.exp(-r)

def _fit_shell(shells, N=6, seed=0):
    """shells: list of (n, l). Fit with shared exponents; returns exps, [coefs per shell]."""
    r = np.linspace(1e-6, 25, 4000)
    w = r * r * np.gradient(r)
    targets = [_slater_radial(n, r) for n, l in shells]

    def basis_mat(exps, l):
        if l == 0:
            return np.array([_gauss_s_norm(a) * np.exp(-a * r * r) for a in exps]).T
        return np.array([_gauss_p_norm(a) * r * np.exp(-a * r * r) for a in exps]).T

    def residual(logexps):
        exps = np.exp(logexps)
        tot = 0.0
        for (n, l), tgt in zip(shells, targets):
            B = basis_mat(exps, l)
            A = B.T @ (B * w[:, None])
            b = B.T @ (w * tgt)
            c = np.linalg.solve(A + 1e-14 * np.eye(len(exps)), b)
            fit = B @ c
            tot += np.sum(w * (fit - tgt) ** 2)
        return tot

    best = None
    for scale in (0.5, 1.0, 2.0):
        n0 = shells[0][0]
        x0 = np.log(scale * 4.0 ** np.arange(N)[::-1] * 0.03 / (4.0 ** (n0 - 1)) + 1e-4)
        res = minimize(residual, x0, method="Nelder-Mead",
                       options={"maxiter": 40000, "xatol": 1e-12, "fatol": 1e-15})
        if best is None or res.fun < best.fun:
            best = res
    exps = np.exp(best.x)
    order = np.argsort(exps)[::-1]
    exps = exps[order]
    coefs_all = []
    for (n, l), tgt in zip(shells, targets):
        B = basis_mat(exps, l)
        A = B.T @ (B * w[:, None])
        b = B.T @ (w * tgt)
        c = np.linalg.solve(A, b)
        coefs_all.append(c)
    return exps, coefs_all


def sto6g_shells():
    """Universal zeta=1 STO-6G fits: dict shell -> (exps, coefs or (coefs_s, coefs_p))."""
    out = {}
    e1, (c1s,) = _fit_shell([(1, 0)])
    out["1s"] = (e1, c1s)
    e2, (c2s, c2p) = _fit_shell([(2, 0), (2, 1)])
    out["2sp"] = (e2, c2s, c2p)
    e3, (c3s, c3p) = _fit_shell([(3, 0), (3, 1)])
    out["3sp"] = (e3, c3s, c3p)
    return out


def scale_shell(exps, zeta):
    return np.array(exps) * zeta ** 2


def make_basis(center, spec):
    """spec: list of ('S', exps, coefs) or ('SP', exps, scoefs, pcoefs). Returns BasisFn list."""
    fns = []
    for sh in spec:
        if sh[0] == "S":
            fns.append(BasisFn(center, (0, 0, 0), np.array(sh[1], float), np.array(sh[2], float)))
        elif sh[0] == "SP":
            fns.append(BasisFn(center, (0, 0, 0), np.array(sh[1], float), np.array(sh[2], float)))
            for l in ((1, 0, 0), (0, 1, 0), (0, 0, 1)):
                fns.append(BasisFn(center, l, np.array(sh[1], float), np.array(sh[3], float)))
        else:
            raise ValueError(sh[0])
    return fns
