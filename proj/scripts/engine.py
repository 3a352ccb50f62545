"""Minimal s/p Gaussian integral engine + RHF, for generating FCIDUMP fixtures.

McMurchie-Davidson scheme. Sufficient for STO-nG / 6-31G diatomics.
"""
import numpy as np
from scipy.special import gamma, gammainc
from dataclasses import dataclass, field

ANG2BOHR = 1.0 / 0.52917721092


def boys(n, x):
    x = np.asarray(x, dtype=float)
    small = x < 1e-12
    xs = np.where(small, 1.0, x)
    val = 0.5 * gamma(n + 0.5) * gammainc(n + 0.5, xs) * xs ** (-(n + 0.5))
    return np.where(small, 1.0 / (2 * n + 1) - x / (2 * n + 3), val)


def E_herm(i, j, t, Q, a, b):
    """Hermite expansion coefficient E_t^{ij} (1D)."""
    p = a + b
    q = a * b / p
    if t < 0 or t > i + j:
        return 0.0
    if i == j == t == 0:
        return np.exp(-q * Q * Q)
    if j == 0:
        return (1 / (2 * p)) * E_herm(i - 1, j, t - 1, Q, a, b) \
            - (q * Q / a) * E_herm(i - 1, j, t, Q, a, b) \
            + (t + 1) * E_herm(i - 1, j, t + 1, Q, a, b)
    return (1 / (2 * p)) * E_herm(i, j - 1, t - 1, Q, a, b) \
        + (q * Q / b) * E_herm(i, j - 1, t, Q, a, b) \
        + (t + 1) * E_herm(i, j - 1, t + 1, Q, a, b)


def R_herm(t, u, v, n, p, PC, RPC2):
    """Hermite Coulomb integral R^n_{tuv}."""
    if t < 0 or u < 0 or v < 0:
        return 0.0
    if t == u == v == 0:
        return (-2 * p) ** n * boys(n, p * RPC2)
    if t > 0:
        return (t - 1) * R_herm(t - 2, u, v, n + 1, p, PC, RPC2) + PC[0] * R_herm(t - 1, u, v, n + 1, p, PC, RPC2)
    if u > 0:
        return (u - 1) * R_herm(t, u - 2, v, n + 1, p, PC, RPC2) + PC[1] * R_herm(t, u - 1, v, n + 1, p, PC, RPC2)
    return (v - 1) * R_herm(t, u, v - 2, n + 1, p, PC, RPC2) + PC[2] * R_herm(t, u, v - 1, n + 1, p, PC, RPC2)


def prim_norm(a, l):
    lx, ly, lz = l
    L = lx + ly + lz
    df = lambda m: 1.0 if m <= 1 else np.prod(np.arange(m, 0, -2, dtype=float))
    return (2 * a / np.pi) ** 0.75 * (4 * a) ** (L / 2) / np.sqrt(df(2 * lx - 1) * df(2 * ly - 1) * df(2 * lz - 1))


@dataclass
class BasisFn:
    center: np.ndarray
    l: tuple
    exps: np.ndarray
    coefs: np.ndarray  # primitive-normalized contraction coefficients

    def __post_init__(self):
        self.norms = np.array([prim_norm(a, self.l) for a in self.exps])
        # renormalize contracted function
        s = overlap_prim_contracted(self, self)
        self.coefs = self.coefs / np.sqrt(s)


def overlap_prim(a, lA, A, b, lB, B):
    p = a + b
    out = (np.pi / p) ** 1.5
    for d in range(3):
        out *= E_herm(lA[d], lB[d], 0, A[d] - B[d], a, b)
    return out


def overlap_prim_contracted(f1, f2):
    s = 0.0
    for a, ca, na in zip(f1.exps, f1.coefs, f1.norms):
        for b, cb, nb in zip(f2.exps, f2.coefs, f2.norms):
            s += ca * cb * na * nb * overlap_prim(a, f1.l, f1.center, b, f2.l, f2.center)
    return s


def kinetic_prim(a, lA, A, b, lB, B):
    lx, ly, lz = lB
    def S(dl):
        lB2 = (lx + dl[0], ly + dl[1], lz + dl[2])
        if min(lB2) < 0:
            return 0.0
        return overlap_prim(a, lA, A, b, lB2, B)
    term = b * (2 * (lx + ly + lz) + 3) * S((0, 0, 0))
    term -= 2 * b * b * (S((2, 0, 0)) + S((0, 2, 0)) + S((0, 0, 2)))
    term -= 0.5 * (lx * (lx - 1) * S((-2, 0, 0)) + ly * (ly - 1) * S((0, -2, 0)) + lz * (lz - 1) * S((0, 0, -2)))
    return term


def nuclear_prim(a, lA, A, b, lB, B, C):
    p = a + b
    P = (a * A + b * B) / p
    PC = P - C
    RPC2 = float(PC @ PC)
    val = 0.0
    for t in range(lA[0] + lB[0] + 1):
        Ex = E_herm(lA[0], lB[0], t, A[0] - B[0], a, b)
        if Ex == 0: continue
        for u in range(lA[1] + lB[1] + 1):
            Ey = E_herm(lA[1], lB[1], u, A[1] - B[1], a, b)
            if Ey == 0: continue
            for v in range(lA[2] + lB[2] + 1):
                Ez = E_herm(lA[2], lB[2], v, A[2] - B[2], a, b)
                if Ez == 0: continue
                val += Ex * Ey * Ez * R_herm(t, u, v, 0, p, PC, RPC2)
    return 2 * np.pi / p * val


def eri_prim(a, lA, A, b, lB, B, c, lC, C, d, lD, D):
    p = a + b
    q = c + d
    P = (a * A + b * B) / p
    Q = (c * C + d * D) / q
    alpha = p * q / (p + q)
    PQ = P - Q
    RPQ2 = float(PQ @ PQ)
    val = 0.0
    Ex1 = [E_herm(lA[0], lB[0], t, A[0] - B[0], a, b) for t in range(lA[0] + lB[0] + 1)]
    Ey1 = [E_herm(lA[1], lB[1], u, A[1] - B[1], a, b) for u in range(lA[1] + lB[1] + 1)]
    Ez1 = [E_herm(lA[2], lB[2], v, A[2] - B[2], a, b) for v in range(lA[2] + lB[2] + 1)]
    Ex2 = [E_herm(lC[0], lD[0], t, C[0] - D[0], c, d) for t in range(lC[0] + lD[0] + 1)]
    Ey2 = [E_herm(lC[1], lD[1], u, C[1] - D[1], c, d) for u in range(lC[1] + lD[1] + 1)]
    Ez2 = [E_herm(lC[2], lD[2], v, C[2] - D[2], c, d) for v in range(lC[2] + lD[2] + 1)]
    for t, ex1 in enumerate(Ex1):
        if ex1 == 0: continue
        for u, ey1 in enumerate(Ey1):
            if ey1 == 0: continue
            for v, ez1 in enumerate(Ez1):
                if ez1 == 0: continue
                for tt, ex2 in enumerate(Ex2):
                    if ex2 == 0: continue
                    for uu, ey2 in enumerate(Ey2):
                        if ey2 == 0: continue
                        for vv, ez2 in enumerate(Ez2):
                            if ez2 == 0: continue
                            val += ex1 * ey1 * ez1 * ex2 * ey2 * ez2 * (-1) ** (tt + uu + vv) \
                                * R_herm(t + tt, u + uu, v + vv, 0, alpha, PQ, RPQ2)
    return val * 2 * np.pi ** 2.5 / (p * q * np.sqrt(p + q))


def contracted(fn, f1, f2, *extra):
    """Generic contraction loop over 2 functions + extra args."""
    s = 0.0
    for a, ca, na in zip(f1.exps, f1.coefs, f1.norms):
        for b, cb, nb in zip(f2.exps, f2.coefs, f2.norms):
            s += ca * cb * na * nb * fn(a, f1.l, f1.center, b, f2.l, f2.center, *extra)
    return s


def eri_contracted(f1, f2, f3, f4):
    s = 0.0
    for a, ca, na in zip(f1.exps, f1.coefs, f1.norms):
        for b, cb, nb in zip(f2.exps, f2.coefs, f2.norms):
            pref = ca * cb * na * nb
            for c, cc, nc in zip(f3.exps, f3.coefs, f3.norms):
                for d, cd, nd in zip(f4.exps, f4.coefs, f4.norms):
                    s += pref * cc * cd * nc * nd * eri_prim(
                        a, f1.l, f1.center, b, f2.l, f2.center,
                        c, f3.l, f3.center, d, f4.l, f4.center)
    return s


def build_integrals(basis, atoms):
    """atoms: list of (Z, xyz). Returns S, Hcore, ERI (chemists' (pq|rs)), Enuc."""
    n = len(basis)
    S = np.zeros((n, n)); T = np.zeros((n, n)); V = np.zeros((n, n))
    for i in range(n):
        for j in range(i + 1):
            S[i, j] = S[j, i] = overlap_prim_contracted(basis[i], basis[j])
            T[i, j] = T[j, i] = contracted(kinetic_prim, basis[i], basis[j])
            v = 0.0
            for Z, R in atoms:
                v -= Z * contracted(nuclear_prim, basis[i], basis[j], R)
            V[i, j] = V[j, i] = v
    eri = np.zeros((n, n, n, n))
    pairs = [(i, j) for i in range(n) for j in range(i + 1)]
    for pi, (i, j) in enumerate(pairs):
        for (k, l) in pairs[:pi + 1]:
            v = eri_contracted(basis[i], basis[j], basis[k], basis[l])
            for (a, b) in ((i, j), (j, i)):
                for (c, d) in ((k, l), (l, k)):
                    eri[a, b, c, d] = eri[c, d, a, b] = v
    enuc = 0.0
    for x in range(len(atoms)):
        for y in range(x):
            Zx, Rx = atoms[x]; Zy, Ry = atoms[y]
            enuc += Zx * Zy / np.linalg.norm(Rx - Ry)
    return S, T + V, eri, enuc


def rhf(S, Hcore, eri, enuc, nelec, max_iter=200, tol=1e-11):
    n = S.shape[0]
    nocc = nelec // 2
    sval, svec = np.linalg.eigh(S)
    X = svec @ np.diag(sval ** -0.5) @ svec.T
    F = Hcore.copy()
    D = np.zeros((n, n))
    E_old = 0.0
    diis_F, diis_e = [], []
    for it in range(max_iter):
        Fp = X.T @ F @ X
        eps, Cp = np.linalg.eigh(Fp)
        C = X @ Cp
        Cocc = C[:, :nocc]
        D = 2 * Cocc @ Cocc.T
        J = np.einsum("pqrs,rs->pq", eri, D)
        K = np.einsum("prqs,rs->pq", eri, D)
        F = Hcore + J - 0.5 * K
        E = 0.5 * np.sum(D * (Hcore + F)) + enuc
        err = F @ D @ S - S @ D @ F
        diis_F.append(F.copy()); diis_e.append(err.copy())
        if len(diis_F) > 8:
            diis_F.pop(0); diis_e.pop(0)
        if it > 1 and len(diis_F) > 1:
            m = len(diis_F)
            B = -np.ones((m + 1, m + 1)); B[m, m] = 0.0
            for x in range(m):
                for y in range(m):
                    B[x, y] = np.sum(diis_e[x] * diis_e[y])
            rhs = np.zeros(m + 1); rhs[m] = -1.0
            try:
                w = np.linalg.solve(B, rhs)[:m]
                F = sum(wi * Fi for wi, Fi in zip(w, diis_F))
            except np.linalg.LinAlgError:
                pass
        if abs(E - E_old) < tol and it > 3:
            Fp = X.T @ F @ X
            eps, Cp = np.linalg.eigh(Fp)
            C = X @ Cp
            return E, C, eps
        E_old = E
    raise RuntimeError(f"SCF not converged, E={E}")


def mo_transform(Hcore, eri, C):
    h1 = C.T @ Hcore @ C
    tmp = np.einsum("pqrs,pi->iqrs", eri, C, optimize=True)
    tmp = np.einsum("iqrs,qj->ijrs", tmp, C, optimize=True)
    tmp = np.einsum("ijrs,rk->ijks", tmp, C, optimize=True)
    g = np.einsum("ijks,sl->ijkl", tmp, C, optimize=True)
    return h1, g


def active_space(h1, g, enuc, ncore, nact):
    """Freeze ncore lowest MOs; return effective (h1, g, ecore) on nact orbitals."""
    core = list(range(ncore))
    act = list(range(ncore, ncore + nact))
    ecore = enuc + 2 * sum(h1[c, c] for c in core)
    for c in core:
        for d in core:
            ecore += 2 * g[c, c, d, d] - g[c, d, d, c]
    h1e = np.zeros((nact, nact))
    for i, p in enumerate(act):
        for j, q in enumerate(act):
            v = h1[p, q]
            for c in core:
                v += 2 * g[p, q, c, c] - g[p, c, c, q]
            h1e[i, j] = v
    g_act = g[np.ix_(act, act, act, act)]
    return h1e, g_act, ecore


def write_fcidump(path, h1, g, ecore, nelec, ms2=0, thresh=1e-12):
    n = h1.shape[0]
    with open(path, "w") as f:
        orbsym = ",".join(["1"] * n)
        f.write(f"&FCI NORB={n},NELEC={nelec},MS2={ms2},\n  ORBSYM={orbsym},\n  ISYM=1,\n&END\n")
        def rec(v, i, j, k, l):
            f.write(f"{v:23.16E} {i:4d} {j:4d} {k:4d} {l:4d}\n")
        for p in range(n):
            for q in range(p + 1):
                for r in range(p + 1):
                    smax = q if r == p else r
                    for s in range(smax + 1):
                        v = g[p, q, r, s]
                        if abs(v) > thresh:
                            rec(v, p + 1, q + 1, r + 1, s + 1)
        for p in range(n):
            for q in range(p + 1):
                if abs(h1[p, q]) > thresh:
                    rec(h1[p, q], p + 1, q + 1, 0, 0)
        rec(ecore, 0, 0, 0, 0)
