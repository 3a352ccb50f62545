"""Independent oracle values for the C++ test suite, from the python FCI code."""
import numpy as np, itertools, re, sys
sys.path.insert(0, '/tmp/fx')
from fci import enumerate_sector, h_element

def parse_fcidump(path):
    txt = open(path).read()
    m = re.search(r'NORB\s*=\s*(\d+)', txt); norb = int(m.group(1))
    m = re.search(r'NELEC\s*=\s*(\d+)', txt); nelec = int(m.group(1))
    body = txt[txt.index('&END')+4:] if '&END' in txt else txt[txt.index('/')+1:]
    h1 = np.zeros((norb, norb)); g = np.zeros((norb,)*4); ecore = 0.0
    for line in body.strip().splitlines():
        parts = line.split()
        v = float(parts[0].replace('D', 'E'))
        i, j, k, l = map(int, parts[1:5])
        if i == 0: ecore = v
        elif k == 0:
            h1[i-1, j-1] = v; h1[j-1, i-1] = v
        else:
            p,q,r,s = i-1,j-1,k-1,l-1
            for a,b in [(p,q),(q,p)]:
                for c,d in [(r,s),(s,r)]:
                    g[a,b,c,d] = v; g[c,d,a,b] = v
    return norb, nelec, h1, g, ecore

norb, nelec, h1, g, ecore = parse_fcidump('/tmp/fx/out/h2_sto3g.fcidump')
dets = enumerate_sector(norb, 1, 1)
print("h2 dets (up,dn):", dets)
n = len(dets)
H = np.array([[h_element(dets[a], dets[b], h1, g, ecore) for b in range(n)] for a in range(n)])

np.set_printoptions(precision=17)
print("h2 H diag:", [f"{H[i,i]:.16e}" for i in range(n)])
print("h2 H offdiag 0,3:", f"{H[0,3]:.16e}", " 0,1:", f"{H[0,1]:.16e}", " 1,2:", f"{H[1,2]:.16e}")
w, V = np.linalg.eigh(H)
print("h2 eigs:", [f"{x:.16e}" for x in w])
psi0 = V[:, 0]
if psi0[np.argmax(np.abs(psi0))] < 0: psi0 = -psi0
print("h2 psi0:", [f"{x:.16e}" for x in psi0])

# operator A = c+_{1u} c_{0u}  (spin orbital 2*p+spin, up=0)
# ladder action on occupation-int encoding used in fci.py dets
def ladder(det_pair, p_so, create):
    up, dn = det_pair
    word = up if p_so % 2 == 0 else dn
    p = p_so // 2
    occ = (word >> p) & 1
    if create == occ: return None
    below = bin(up & ((1 << (p + (1 if p_so % 2 else 0))) - 1)).count('1') if False else None
    return None

# simpler: full spin-orbital occupation list, canonical order = increasing p
def to_solist(up, dn, norb):
    out = []
    for p in range(norb):
        if (up >> p) & 1: out.append(2*p)
        if (dn >> p) & 1: out.append(2*p+1)
    return out

def apply_op(amp_map, create, p_so):
    out = {}
    for (occ, a) in amp_map.items():
        occ = list(occ)
        if create:
            if p_so in occ: continue
            pos = sum(1 for q in occ if q < p_so)
            new = sorted(occ + [p_so])
            sgn = (-1)**pos
        else:
            if p_so not in occ: continue
            pos = sum(1 for q in occ if q < p_so)
            new = [q for q in occ if q != p_so]
            sgn = (-1)**pos
        k = tuple(new)
        out[k] = out.get(k, 0.0) + sgn*a
    return out

amp = {tuple(to_solist(u, d, norb)): c for (u, d), c in zip(dets, psi0)}
amp = apply_op(apply_op(amp, False, 0), True, 2)   # c_{0u} then c+_{1u}
keys = {tuple(to_solist(u, d, norb)): i for i, (u, d) in enumerate(dets)}
psiA = np.zeros(n)
for k, v in amp.items():
    psiA[keys[k]] = v
nrm2 = psiA @ psiA
print("h2 <A+A>:", f"{nrm2:.16e}")
psiA_n = psiA/np.sqrt(nrm2)
print("h2 psiA:", [f"{x:.16e}" for x in psiA_n])

# L_A(t) and G_A(t) at t = 5
for t in (1.0, 5.0):
    U = V @ np.diag(np.exp(-1j*w*t)) @ V.T
    L = psiA_n @ U @ psiA_n
    G = np.exp(1j*w[0]*t)*nrm2*L
    print(f"h2 L_A({t}):", f"{L.real:.16e}", f"{L.imag:.16e}")
    print(f"h2 G_A({t}):", f"{G.real:.16e}", f"{G.imag:.16e}")
    var = 1-abs(L)**2
    print(f"h2 var({t}):", f"{var:.16e}")
