"""Pure NumPy/Python fallback for the compiled kernels.

Mirrors _ckernels.pyx operation for operation so both backends produce
the same results; this module is only selected when the compiled
extension is unavailable (or PATCHTOMO_PURE_PYTHON=1 is set).
"""

import numpy as np

BACKEND = "python"


def _clip_ray(ox, oy, dx, dy, M, N):
    """Parametric interval of the ray inside [0, N] x [0, M], or None."""
    t0 = -np.inf
    t1 = np.inf
    if abs(dx) < 1e-300:
        if ox < 0.0 or ox > N:
            return None
    else:
        ta = (0.0 - ox) / dx
        tb = (N - ox) / dx
        t0 = max(t0, min(ta, tb))
        t1 = min(t1, max(ta, tb))
    if abs(dy) < 1e-300:
        if oy < 0.0 or oy > M:
            return None
    else:
        ta = (0.0 - oy) / dy
        tb = (M - oy) / dy
        t0 = max(t0, min(ta, tb))
        t1 = min(t1, max(ta, tb))
    if t1 <= t0:
        return None
    return t0, t1


def siddon_rows(M, N, angles, offsets, drop_tol=1e-12):
    """CSR pieces of the ray/pixel intersection-length matrix.

    Rays are enumerated angle-major: row i = angle i // len(offsets),
    offset i % len(offsets).  Ray r(t) = center + offset * w + t * u
    with u = (cos a, sin a) and w = (-sin a, cos a); pixel (row, col)
    occupies [col, col+1] x [row, row+1] in (x, y) and maps to column
    row + col * M.  Intersections shorter than drop_tol are dropped.
    """
    angles = np.asarray(angles, dtype=np.float64)
    offsets = np.asarray(offsets, dtype=np.float64)
    m = angles.size * offsets.size
    cx = N / 2.0
    cy = M / 2.0

    data: list[float] = []
    indices: list[int] = []
    indptr = np.zeros(m + 1, dtype=np.int64)

    row = 0
    for a in angles:
        dx = np.cos(a)
        dy = np.sin(a)
        wx = -dy
        wy = dx
        for off in offsets:
            ox = cx + off * wx
            oy = cy + off * wy
            clip = _clip_ray(ox, oy, dx, dy, M, N)
            if clip is not None:
                t0, t1 = clip
                prev = t0
                # next x/y grid-plane crossings strictly after t0
                if dx > 0.0:
                    gx = np.floor(ox + t0 * dx) + 1.0
                    tx = (gx - ox) / dx
                elif dx < 0.0:
                    gx = np.ceil(ox + t0 * dx) - 1.0
                    tx = (gx - ox) / dx
                else:
                    gx, tx = 0.0, np.inf
                if dy > 0.0:
                    gy = np.floor(oy + t0 * dy) + 1.0
                    ty = (gy - oy) / dy
                elif dy < 0.0:
                    gy = np.ceil(oy + t0 * dy) - 1.0
                    ty = (gy - oy) / dy
                else:
                    gy, ty = 0.0, np.inf

                while True:
                    t = tx if tx < ty else ty
                    if t > t1:
                        t = t1
                    seg = t - prev
                    if seg > drop_tol:
                        tm = 0.5 * (prev + t)
                        r = int(np.floor(oy + tm * dy))
                        c = int(np.floor(ox + tm * dx))
                        r = min(max(r, 0), M - 1)
                        c = min(max(c, 0), N - 1)
                        data.append(seg)
                        indices.append(r + c * M)
                    if t >= t1:
                        break
                    prev = t
                    if tx <= ty:
                        gx += 1.0 if dx > 0.0 else -1.0
                        tx = (gx - ox) / dx
                    else:
                        gy += 1.0 if dy > 0.0 else -1.0
                        ty = (gy - oy) / dy
            row += 1
            indptr[row] = len(data)

    return (
        np.asarray(data, dtype=np.float64),
        np.asarray(indices, dtype=np.int64),
        indptr,
    )


def kaczmarz_sweeps(data, indices, indptr, b, x0, relax, sweeps):
    """Cyclic Kaczmarz row sweeps with nonnegativity projection.

    Rows are visited in order inside each sweep; empty rows (and rows
    with zero norm) are skipped; x is clamped to >= 0 after each full
    sweep.  Returns a new array; x0 is not modified.
    """
    x = np.array(x0, dtype=np.float64, copy=True)
    m = b.size
    row_norm_sq = np.zeros(m)
    for i in range(m):
        vals = data[indptr[i] : indptr[i + 1]]
        row_norm_sq[i] = float(vals @ vals)
    for _ in range(sweeps):
        for i in range(m):
            if row_norm_sq[i] <= 0.0:
                continue
            lo, hi = indptr[i], indptr[i + 1]
            cols = indices[lo:hi]
            vals = data[lo:hi]
            resid = b[i] - float(vals @ x[cols])
            x[cols] += (relax * resid / row_norm_sq[i]) * vals
        np.maximum(x, 0.0, out=x)
    return x
