"""Loop-style kernels compiled with numba."""
import numpy as np
from numba import njit


@njit(cache=True)
def pairwise_extremes(pts):
    n, d = pts.shape
    best_hi = -1.0
    best_lo = np.inf
    hi_i = hi_j = lo_i = lo_j = -1
    for i in range(n):
        for j in range(i + 1, n):
            s = 0.0
            for t in range(d):
                diff = pts[i, t] - pts[j, t]
                s += diff * diff
            if s > best_hi:
                best_hi = s
                hi_i = i
                hi_j = j
            if s < best_lo:
                best_lo = s
                lo_i = i
                lo_j = j
    return best_hi, hi_i, hi_j, best_lo, lo_i, lo_j


@njit(cache=True)
def first_outside(pts, order, start, stop, center, limit):
    d = pts.shape[1]
    lim2 = limit * limit
    for pos in range(start, stop):
        k = order[pos]
        s = 0.0
        for t in range(d):
            diff = pts[k, t] - center[t]
            s += diff * diff
        if s > lim2:
            return pos
    return -1


@njit(cache=True)
def directional_extents(pts, dirs):
    n, d = pts.shape
    m = dirs.shape[0]
    out = np.empty(m)
    for a in range(m):
        lo = np.inf
        hi = -np.inf
        for i in range(n):
            s = 0.0
            for t in range(d):
                s += pts[i, t] * dirs[a, t]
            if s < lo:
                lo = s
            if s > hi:
                hi = s
        out[a] = hi - lo
    return out


@njit(cache=True)
def _independent_rows(A, rel_eps):
    # pivoted modified Gram-Schmidt on the rows of A
    m, d = A.shape
    if m == 0:
        return True
    if m > d:
        return False
    W = A.copy()
    maxn = 0.0
    for i in range(m):
        s = 0.0
        for t in range(d):
            s += W[i, t] * W[i, t]
        s = np.sqrt(s)
        if s > maxn:
            maxn = s
    if maxn == 0.0:
        return False
    used = np.zeros(m, dtype=np.bool_)
    for step in range(m):
        best = -1.0
        p = -1
        for i in range(m):
            if used[i]:
                continue
            s = 0.0
            for t in range(d):
                s += W[i, t] * W[i, t]
            s = np.sqrt(s)
            if s > best:
                best = s
                p = i
        if best <= rel_eps * maxn:
            return False
        used[p] = True
        for t in range(d):
            W[p, t] /= best
        for i in range(m):
            if used[i]:
                continue
            dot = 0.0
            for t in range(d):
                dot += W[i, t] * W[p, t]
            for t in range(d):
                W[i, t] -= dot * W[p, t]
    return True


@njit(cache=True)
def _solve_inplace(G, b):
    # Gaussian elimination with partial pivoting; G is small and well posed here
    m = G.shape[0]
    for c in range(m):
        p = c
        big = abs(G[c, c])
        for r in range(c + 1, m):
            if abs(G[r, c]) > big:
                big = abs(G[r, c])
                p = r
        if big == 0.0:
            return False
        if p != c:
            for t in range(m):
                tmp = G[c, t]
                G[c, t] = G[p, t]
                G[p, t] = tmp
            tmp = b[c]
            b[c] = b[p]
            b[p] = tmp
        for r in range(c + 1, m):
            f = G[r, c] / G[c, c]
            for t in range(c, m):
                G[r, t] -= f * G[c, t]
            b[r] -= f * b[c]
    for c in range(m - 1, -1, -1):
        s = b[c]
        for t in range(c + 1, m):
            s -= G[c, t] * b[t]
        b[c] = s / G[c, c]
    return True


@njit(cache=True)
def _next_combination(idx, n):
    k = idx.shape[0]
    i = k - 1
    while i >= 0 and idx[i] == n - k + i:
        i -= 1
    if i < 0:
        return False
    idx[i] += 1
    for j in range(i + 1, k):
        idx[j] = idx[j - 1] + 1
    return True


@njit(cache=True)
def best_support_ball(pts, k, rel_eps, encl_rel, encl_abs, tie_rel):
    n, d = pts.shape
    best_r = np.inf
    best_c = np.zeros(d)
    best_idx = -np.ones(k, dtype=np.int64)
    if k > n or k > d + 1:
        return best_r, best_c, best_idx
    idx = np.arange(k)
    A = np.empty((k - 1, d))
    G = np.empty((k - 1, k - 1))
    lam = np.empty(k - 1)
    c = np.empty(d)
    while True:
        p0 = idx[0]
        for a in range(k - 1):
            for t in range(d):
                A[a, t] = pts[idx[a + 1], t] - pts[p0, t]
        ok = _independent_rows(A, rel_eps)
        if ok:
            for a in range(k - 1):
                s = 0.0
                for t in range(d):
                    s += A[a, t] * A[a, t]
                lam[a] = 0.5 * s
                for b in range(k - 1):
                    s = 0.0
                    for t in range(d):
                        s += A[a, t] * A[b, t]
                    G[a, b] = s
            ok = _solve_inplace(G, lam)
        if ok:
            for t in range(d):
                s = pts[p0, t]
                for a in range(k - 1):
                    s += lam[a] * A[a, t]
                c[t] = s
            r2 = 0.0
            for t in range(d):
                diff = pts[p0, t] - c[t]
                r2 += diff * diff
            r = np.sqrt(r2)
            if r < best_r - tie_rel * max(1.0, r):
                lim = r + encl_rel * max(1.0, r) + encl_abs
                lim2 = lim * lim
                inside = True
                for i in range(n):
                    s = 0.0
                    for t in range(d):
                        diff = pts[i, t] - c[t]
                        s += diff * diff
                    if s > lim2:
                        inside = False
                        break
                if inside:
                    best_r = r
                    for t in range(d):
                        best_c[t] = c[t]
                    for a in range(k):
                        best_idx[a] = idx[a]
        if not _next_combination(idx, n):
            break
    return best_r, best_c, best_idx


@njit(cache=True)
def max_barycentric_radius(pts, k, rel_eps):
    n, d = pts.shape
    best = -1.0
    best_idx = -np.ones(k, dtype=np.int64)
    if k > n or k > d + 1 or k < 2:
        return best, best_idx
    idx = np.arange(k)
    A = np.empty((k - 1, d))
    bc = np.empty(d)
    while True:
        p0 = idx[0]
        for a in range(k - 1):
            for t in range(d):
                A[a, t] = pts[idx[a + 1], t] - pts[p0, t]
        if _independent_rows(A, rel_eps):
            for t in range(d):
                s = 0.0
                for a in range(k):
                    s += pts[idx[a], t]
                bc[t] = s / k
            far = 0.0
            for a in range(k):
                s = 0.0
                for t in range(d):
                    diff = pts[idx[a], t] - bc[t]
                    s += diff * diff
                if s > far:
                    far = s
            far = np.sqrt(far)
            if far > best:
                best = far
                for a in range(k):
                    best_idx[a] = idx[a]
        if not _next_combination(idx, n):
            break
    return best, best_idx
