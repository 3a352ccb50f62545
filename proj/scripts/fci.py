"""Determinant FCI with Slater-Condon rules, spatial-orbital chemists' integrals.

Determinant = (up_mask, dn_mask) over M spatial orbitals.
"""
import numpy as np
from itertools import combinations


def enumerate_sector(M, n_up, n_dn):
    ups = [sum(1 << i for i in c) for c in combinations(range(M), n_up)]
    dns = [sum(1 << i for i in c) for c in combinations(range(M), n_dn)]
    dets = [(u, d) for u in sorted(ups) for d in sorted(dns)]
    return sorted(dets)


def occ_list(mask):
    out = []
    while mask:
        b = mask & -mask
        out.append(b.bit_length() - 1)
        mask ^= b
    return out


def parity(mask, p, q):
    """sign for moving between orbitals p<q given occupation mask (exclusive)."""
    if p > q: p, q = q, p
    between = mask & (((1 << q) - 1) ^ ((1 << (p + 1)) - 1))
    return -1.0 if bin(between).count("1") % 2 else 1.0


def h_element(a, b, h1, g, ecore):
    (ua, da), (ub, db) = a, b
    du, dd = ua ^ ub, da ^ db
    nu, nd = bin(du).count("1"), bin(dd).count("1")
    if nu + nd > 4:
        return 0.0
    occ_u, occ_d = occ_list(ua), occ_list(da)
    if nu + nd == 0:
        E = ecore
        for p in occ_u: E += h1[p, p]
        for p in occ_d: E += h1[p, p]
        for p in occ_u:
            for q in occ_u: E += 0.5 * (g[p, p, q, q] - g[p, q, q, p])
        for p in occ_d:
            for q in occ_d: E += 0.5 * (g[p, p, q, q] - g[p, q, q, p])
        for p in occ_u:
            for q in occ_d: E += g[p, p, q, q]
        return E
    if nu == 2 and nd == 0:
        p = occ_list(du & ua)[0]; q = occ_list(du & ub)[0]
        s = parity(ua, p, q)
        v = h1[p, q]
        for k in occ_u:
            if k != p: v += g[p, q, k, k] - g[p, k, k, q]
        for k in occ_d: v += g[p, q, k, k]
        return s * v
    if nd == 2 and nu == 0:
        p = occ_list(dd & da)[0]; q = occ_list(dd & db)[0]
        s = parity(da, p, q)
        v = h1[p, q]
        for k in occ_d:
            if k != p: v += g[p, q, k, k] - g[p, k, k, q]
        for k in occ_u: v += g[p, q, k, k]
        return s * v
    if nu == 2 and nd == 2:
        p = occ_list(du & ua)[0]; q = occ_list(du & ub)[0]
        r = occ_list(dd & da)[0]; s_ = occ_list(dd & db)[0]
        return parity(ua, p, q) * parity(da, r, s_) * g[p, q, r, s_]
    if nu == 4:
        ph = occ_list(du & ua); pp = occ_list(du & ub)
        p, q = ph; r, s_ = pp
        # <..pq..|H|..rs..>: two same-spin excitations p->r,q->s minus p->s,q->r
        s1 = parity(ua, p, r) * parity(ua ^ (1 << p) ^ (1 << r), q, s_)
        s2 = parity(ua, p, s_) * parity(ua ^ (1 << p) ^ (1 << s_), q, r)
        return s1 * g[p, r, q, s_] - s2 * g[p, s_, q, r]
    if nd == 4:
        ph = occ_list(dd & da); pp = occ_list(dd & db)
        p, q = ph; r, s_ = pp
        s1 = parity(da, p, r) * parity(da ^ (1 << p) ^ (1 << r), q, s_)
        s2 = parity(da, p, s_) * parity(da ^ (1 << p) ^ (1 << s_), q, r)
        return s1 * g[p, r, q, s_] - s2 * g[p, s_, q, r]
    return 0.0


def build_H(dets, h1, g, ecore):
    n = len(dets)
    H = np.zeros((n, n))
    for i in range(n):
        for j in range(i + 1):
            v = h_element(dets[i], dets[j], h1, g, ecore)
            H[i, j] = H[j, i] = v
    return H


def build_H_fast(dets, h1, g, ecore):
    """Only compute connected pairs via excitation enumeration."""
    M = h1.shape[0]
    idx = {d: i for i, d in enumerate(dets)}
    n = len(dets)
    H = np.zeros((n, n))
    for i, (u, d) in enumerate(dets):
        H[i, i] = h_element((u, d), (u, d), h1, g, ecore)
        occ_u, occ_d = occ_list(u), occ_list(d)
        vir_u = [p for p in range(M) if not (u >> p) & 1]
        vir_d = [p for p in range(M) if not (d >> p) & 1]
        conn = set()
        for p in occ_u:
            for q in vir_u:
                conn.add((u ^ (1 << p) ^ (1 << q), d))
                u2 = u ^ (1 << p) ^ (1 << q)
                for r in occ_d:
                    for s in vir_d:
                        conn.add((u2, d ^ (1 << r) ^ (1 << s)))
        for p in occ_d:
            for q in vir_d:
                conn.add((u, d ^ (1 << p) ^ (1 << q)))
        for (p, q) in combinations(occ_u, 2):
            for (r, s) in combinations(vir_u, 2):
                conn.add((u ^ (1 << p) ^ (1 << q) ^ (1 << r) ^ (1 << s), d))
        for (p, q) in combinations(occ_d, 2):
            for (r, s) in combinations(vir_d, 2):
                conn.add((u, d ^ (1 << p) ^ (1 << q) ^ (1 << r) ^ (1 << s)))
        for c in conn:
            j = idx.get(c)
            if j is not None and j < i:
                v = h_element(dets[i], c, h1, g, ecore)
                H[i, j] = H[j, i] = v
    return H
