"""Vectorized numpy versions of the kernels; same signatures and results."""
from itertools import combinations, islice

import numpy as np

CHUNK = 20000


def pairwise_extremes(pts):
    n = pts.shape[0]
    iu, ju = np.triu_indices(n, k=1)
    diff = pts[iu] - pts[ju]
    d2 = np.einsum("ij,ij->i", diff, diff)
    hi = int(np.argmax(d2))
    lo = int(np.argmin(d2))
    return float(d2[hi]), int(iu[hi]), int(ju[hi]), float(d2[lo]), int(iu[lo]), int(ju[lo])


def first_outside(pts, order, start, stop, center, limit):
    if stop <= start:
        return -1
    sub = pts[order[start:stop]] - center
    d2 = np.einsum("ij,ij->i", sub, sub)
    hits = np.flatnonzero(d2 > limit * limit)
    return int(start + hits[0]) if hits.size else -1


def directional_extents(pts, dirs):
    proj = pts @ dirs.T
    return proj.max(axis=0) - proj.min(axis=0)


def _independent_rows_batch(A, rel_eps):
    """Pivoted modified Gram-Schmidt over a batch ``A`` of shape (B, m, d)."""
    B, m, d = A.shape
    if m == 0:
        return np.ones(B, dtype=bool)
    if m > d:
        return np.zeros(B, dtype=bool)
    W = A.copy()
    rows = np.arange(B)
    maxn = np.linalg.norm(W, axis=2).max(axis=1)
    ok = maxn > 0.0
    used = np.zeros((B, m), dtype=bool)
    for _ in range(m):
        nrm = np.linalg.norm(W, axis=2)
        nrm[used] = -1.0
        p = np.argmax(nrm, axis=1)
        best = nrm[rows, p]
        ok &= best > rel_eps * maxn
        q = W[rows, p] / np.where(best > 0, best, 1.0)[:, None]
        used[rows, p] = True
        dots = np.einsum("bmd,bd->bm", W, q)
        dots[used] = 0.0
        W -= dots[:, :, None] * q[:, None, :]
    return ok


def _combo_chunks(n, k):
    it = combinations(range(n), k)
    while True:
        block = list(islice(it, CHUNK))
        if not block:
            return
        yield np.array(block, dtype=np.int64)


def best_support_ball(pts, k, rel_eps, encl_rel, encl_abs, tie_rel):
    n, d = pts.shape
    best_r = np.inf
    best_c = np.zeros(d)
    best_idx = -np.ones(k, dtype=np.int64)
    if k > n or k > d + 1:
        return best_r, best_c, best_idx
    for combos in _combo_chunks(n, k):
        sel = pts[combos]
        p0 = sel[:, 0, :]
        A = sel[:, 1:, :] - p0[:, None, :]
        ok = _independent_rows_batch(A, rel_eps)
        if not ok.any():
            continue
        combos, A, p0 = combos[ok], A[ok], p0[ok]
        if k == 1:
            centers = p0
        else:
            G = np.einsum("bid,bjd->bij", A, A)
            rhs = 0.5 * np.einsum("bii->bi", G)
            lam = np.linalg.solve(G, rhs[:, :, None])[:, :, 0]
            centers = p0 + np.einsum("bi,bid->bd", lam, A)
        radii = np.linalg.norm(p0 - centers, axis=1)
        lim = radii + encl_rel * np.maximum(1.0, radii) + encl_abs
        diff = pts[None, :, :] - centers[:, None, :]
        d2 = np.einsum("bnd,bnd->bn", diff, diff)
        enclosing = np.all(d2 <= (lim * lim)[:, None], axis=1)
        for b in np.flatnonzero(enclosing):
            r = radii[b]
            if r < best_r - tie_rel * max(1.0, r):
                best_r = float(r)
                best_c = centers[b].copy()
                best_idx = combos[b].copy()
    return best_r, best_c, best_idx


def max_barycentric_radius(pts, k, rel_eps):
    n, d = pts.shape
    best = -1.0
    best_idx = -np.ones(k, dtype=np.int64)
    if k > n or k > d + 1 or k < 2:
        return best, best_idx
    for combos in _combo_chunks(n, k):
        sel = pts[combos]
        A = sel[:, 1:, :] - sel[:, :1, :]
        ok = _independent_rows_batch(A, rel_eps)
        if not ok.any():
            continue
        combos, sel = combos[ok], sel[ok]
        bc = sel.mean(axis=1)
        far = np.linalg.norm(sel - bc[:, None, :], axis=2).max(axis=1)
        b = int(np.argmax(far))
        if far[b] > best:
            best = float(far[b])
            best_idx = combos[b].copy()
    return best, best_idx
