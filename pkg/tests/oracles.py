"""Independent reference implementations used only by the tests.

Everything here is deliberately written the slow, obvious way (dense
matrices, enumeration, bisection, sampling) so that it shares no code
path with the package implementations it is used to check.
"""

import numpy as np


def dense_permutation(forward):
    """Dense permutation matrix with (Pi x)[k] = x[forward[k]]."""
    n = forward.size
    Pi = np.zeros((n, n))
    Pi[np.arange(n), forward] = 1.0
    return Pi


def dense_block_dictionary(D, q):
    """Materialized block-diagonal operator: q copies of D on the diagonal."""
    return np.kron(np.eye(q), D)


def chord_length(M, N, angle_rad, offset):
    """Length of the intersection of a ray with the image square.

    The ray passes through center + offset * (-sin a, cos a) with
    direction (cos a, sin a); the image occupies [0, N] x [0, M] in
    (x, y).  Liang-Barsky style clipping, no marching.
    """
    cx, cy = N / 2.0, M / 2.0
    ox = cx - offset * np.sin(angle_rad)
    oy = cy + offset * np.cos(angle_rad)
    dx, dy = np.cos(angle_rad), np.sin(angle_rad)
    t0, t1 = -np.inf, np.inf
    for origin, direction, lo, hi in ((ox, dx, 0.0, N), (oy, dy, 0.0, M)):
        if abs(direction) < 1e-300:
            if origin < lo or origin > hi:
                return 0.0
        else:
            ta = (lo - origin) / direction
            tb = (hi - origin) / direction
            t0 = max(t0, min(ta, tb))
            t1 = min(t1, max(ta, tb))
    return max(0.0, t1 - t0)


def sampled_ray_lengths(M, N, angle_rad, offset, n_samples=10_000):
    """Per-pixel intersection lengths by numerical line integration.

    Midpoint sampling with n_samples base points along the clipped
    segment; the crossing between two samples that land in different
    pixels is located by bisection, so the result is accurate to far
    better than one sample spacing.  Returns a dense (M, N) array.
    """
    cx, cy = N / 2.0, M / 2.0
    ox = cx - offset * np.sin(angle_rad)
    oy = cy + offset * np.cos(angle_rad)
    dx, dy = np.cos(angle_rad), np.sin(angle_rad)

    t0, t1 = -np.inf, np.inf
    for origin, direction, lo, hi in ((ox, dx, 0.0, N), (oy, dy, 0.0, M)):
        if abs(direction) < 1e-300:
            if origin < lo or origin > hi:
                return np.zeros((M, N))
        else:
            ta = (lo - origin) / direction
            tb = (hi - origin) / direction
            t0 = max(t0, min(ta, tb))
            t1 = min(t1, max(ta, tb))
    if t1 <= t0:
        return np.zeros((M, N))

    def pixel_of(t):
        x = ox + t * dx
        y = oy + t * dy
        r = min(max(int(np.floor(y)), 0), M - 1)
        c = min(max(int(np.floor(x)), 0), N - 1)
        return r, c

    ts = t0 + (np.arange(n_samples) + 0.5) * (t1 - t0) / n_samples
    pixels = [pixel_of(t) for t in ts]

    lengths = np.zeros((M, N))
    seg_start = t0
    current = pixels[0]
    for i in range(1, n_samples):
        if pixels[i] != current:
            lo_t, hi_t = ts[i - 1], ts[i]
            for _ in range(60):  # bisect the crossing
                mid = 0.5 * (lo_t + hi_t)
                if pixel_of(mid) == current:
                    lo_t = mid
                else:
                    hi_t = mid
            crossing = 0.5 * (lo_t + hi_t)
            lengths[current] += crossing - seg_start
            seg_start = crossing
            current = pixels[i]
    lengths[current] += t1 - seg_start
    return lengths


def nnls_enumerate(D, y):
    """Nonnegative least squares by support enumeration.

    Tries every subset of columns, solves the unconstrained LS on the
    subset, keeps candidates that are feasible (nonnegative on the
    support) and returns the best.  Exponential; use only for tiny s.
    """
    p, s = D.shape
    best_alpha = np.zeros(s)
    best_obj = 0.5 * float(y @ y)
    for mask in range(1, 2**s):
        support = [j for j in range(s) if mask >> j & 1]
        sub = D[:, support]
        coef, *_ = np.linalg.lstsq(sub, y, rcond=None)
        if np.any(coef < -1e-12):
            continue
        r = sub @ coef - y
        obj = 0.5 * float(r @ r)
        if obj < best_obj - 1e-15:
            best_obj = obj
            best_alpha = np.zeros(s)
            best_alpha[support] = np.maximum(coef, 0.0)
    return best_alpha


def l1ball_project_bisect(v, radius):
    """Euclidean projection onto the l1 ball by bisection on the KKT shift.

    Independent of any sorting-based algorithm: the projection is
    sign(v) * max(|v| - theta, 0) for the theta >= 0 that makes the
    result's 1-norm equal the radius (theta = 0 if v is already inside).
    """
    v = np.asarray(v, dtype=float)
    if np.abs(v).sum() <= radius:
        return v.copy()
    lo, hi = 0.0, np.abs(v).max()
    for _ in range(200):
        theta = 0.5 * (lo + hi)
        if np.maximum(np.abs(v) - theta, 0.0).sum() > radius:
            lo = theta
        else:
            hi = theta
    theta = 0.5 * (lo + hi)
    return np.sign(v) * np.maximum(np.abs(v) - theta, 0.0)


def dense_admm_step(Y, D, H, U, V, Lam, Pi, lam, rho, constraint):
    """Straight-line re-implementation of one dictionary-learning step.

    Uses explicit inverses and loops; returns the six updated matrices.
    """
    p, s = D.shape

    def project_set(A):
        A = A.copy()
        if constraint == "box":
            return np.clip(A, 0.0, 1.0)
        for j in range(A.shape[1]):
            col = np.maximum(A[:, j], 0.0)
            nrm = np.linalg.norm(col)
            if nrm > np.sqrt(p):
                col = col * (np.sqrt(p) / nrm)
            A[:, j] = col
        return A

    D1 = project_set(U - Lam / rho)
    V1 = np.linalg.inv(U.T @ U + rho * np.eye(s)) @ (U.T @ Y + Pi + rho * H)
    H1 = np.maximum(0.0, (V1 - Pi / rho) - lam / rho)
    U1 = (Y @ V1.T + Lam + rho * D1) @ np.linalg.inv(V1 @ V1.T + rho * np.eye(s))
    Lam1 = Lam + rho * (D1 - U1)
    Pi1 = Pi + rho * (H1 - V1)
    return D1, H1, U1, V1, Lam1, Pi1
