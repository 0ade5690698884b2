"""Image, patch and block data model shared by all other modules.

Conventions (fixed once, used everywhere):

* Images are 2-D arrays of shape (M, N); pixel (r, c) sits at row r,
  column c.  Vectorization is column-major: pixel (r, c) has linear
  index r + c*M, so ``image.ravel(order="F")`` is the image vector.
* Non-overlapping blocks tile the image in a (M/P, N/Q) grid; blocks
  are ordered column-major over the grid and pixels inside a block are
  ordered column-major as well.  The block permutation maps the image
  ordering to this block-by-block ordering.

All functions here are pure; none of them mutate their inputs.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp

from .errors import DimensionError

__all__ = [
    "GrayImage",
    "PatchGeometry",
    "BlockPermutation",
    "extract_patches",
    "block_permutation",
    "apply_block_dictionary",
    "apply_block_dictionary_adjoint",
    "boundary_operator",
    "boundary_penalty",
]


@dataclass(frozen=True)
class GrayImage:
    """Nonnegative gray-level image of shape (M, N).

    ``pixels`` is stored as float64.  Training and ground-truth images
    are additionally expected to be scaled into [0, 1]; reconstructed
    images may exceed that range and are only clamped for display.
    """

    pixels: np.ndarray

    def __post_init__(self):
        px = np.asarray(self.pixels, dtype=np.float64)
        if px.ndim != 2 or px.shape[0] < 1 or px.shape[1] < 1:
            raise DimensionError(f"image must be 2-D and non-empty, got shape {px.shape}")
        object.__setattr__(self, "pixels", px)

    @property
    def M(self) -> int:
        return self.pixels.shape[0]

    @property
    def N(self) -> int:
        return self.pixels.shape[1]

    @property
    def n(self) -> int:
        return self.pixels.size

    @property
    def vector(self) -> np.ndarray:
        """Column-major image vector of length M*N."""
        return self.pixels.ravel(order="F")

    @staticmethod
    def from_vector(v, M: int, N: int) -> "GrayImage":
        v = np.asarray(v, dtype=np.float64)
        if v.size != M * N:
            raise DimensionError(f"vector of length {v.size} does not fill a {M}x{N} image")
        return GrayImage(v.reshape((M, N), order="F"))

    def scaled_to_unit(self) -> "GrayImage":
        """Rescale into [0, 1] by dividing by the max (if the max exceeds 1)."""
        top = self.pixels.max()
        if top > 1.0:
            return GrayImage(self.pixels / top)
        return self


@dataclass(frozen=True)
class PatchGeometry:
    """Partition of an M x N image into non-overlapping P x Q blocks.

    Construction fails unless P divides M and Q divides N; padding is
    deliberately not supported.
    """

    M: int
    N: int
    P: int
    Q: int

    def __post_init__(self):
        if min(self.M, self.N, self.P, self.Q) < 1:
            raise DimensionError("image and patch dimensions must be positive")
        if self.M % self.P or self.N % self.Q:
            raise DimensionError(
                f"patch size {self.P}x{self.Q} does not divide image size {self.M}x{self.N}"
            )

    @property
    def p(self) -> int:
        """Pixels per block."""
        return self.P * self.Q

    @property
    def grid_shape(self) -> tuple[int, int]:
        """(M/P, N/Q) block grid."""
        return (self.M // self.P, self.N // self.Q)

    @property
    def q(self) -> int:
        """Number of blocks; q * p == M * N."""
        gm, gn = self.grid_shape
        return gm * gn

    @property
    def n(self) -> int:
        return self.M * self.N


@dataclass(frozen=True)
class BlockPermutation:
    """Index form of the permutation from image ordering to block ordering.

    ``forward[k]`` is the image index of the pixel at block position k,
    so ``y = x[forward]`` reorders an image vector block by block and
    ``x[forward] = y`` (equivalently ``y[inverse]``) undoes it.
    """

    forward: np.ndarray
    inverse: np.ndarray = field(repr=False)

    def apply(self, x: np.ndarray) -> np.ndarray:
        """Image ordering -> block ordering."""
        x = np.asarray(x)
        if x.shape != self.forward.shape:
            raise DimensionError(f"expected vector of length {self.forward.size}, got {x.shape}")
        return x[self.forward]

    def apply_transpose(self, y: np.ndarray) -> np.ndarray:
        """Block ordering -> image ordering (the inverse permutation)."""
        y = np.asarray(y)
        if y.shape != self.forward.shape:
            raise DimensionError(f"expected vector of length {self.forward.size}, got {y.shape}")
        return y[self.inverse]

    @property
    def n(self) -> int:
        return self.forward.size


def block_permutation(M: int, N: int, P: int, Q: int) -> BlockPermutation:
    """Permutation reordering the image vector block by block.

    Blocks run column-major over the (M/P, N/Q) grid and pixels inside a
    block run column-major, matching the global vectorization.
    """
    geom = PatchGeometry(M, N, P, Q)
    gm, gn = geom.grid_shape
    # Image index of block (br, bc), local pixel (lr, lc):
    #   (br*P + lr) + (bc*Q + lc) * M
    # Block position k runs fastest over lr, then lc, then br, then bc;
    # flattening an array indexed [bc, br, lc, lr] in C order does that.
    bc = np.arange(gn).reshape(gn, 1, 1, 1)
    br = np.arange(gm).reshape(1, gm, 1, 1)
    lc = np.arange(Q).reshape(1, 1, Q, 1)
    lr = np.arange(P).reshape(1, 1, 1, P)
    forward = ((br * P + lr) + (bc * Q + lc) * M).ravel().astype(np.intp)
    inverse = np.empty_like(forward)
    inverse[forward] = np.arange(forward.size, dtype=np.intp)
    return BlockPermutation(forward=forward, inverse=inverse)


def extract_patches(
    image: GrayImage,
    patch_shape: tuple[int, int],
    stride: int = 1,
    limit: int | None = None,
    seed: int = 0,
) -> np.ndarray:
    """Extract vectorized P x Q patches on a stride lattice.

    Returns a (p, t) matrix whose columns are column-major vectorized
    patches.  Lattice positions are enumerated column-major (rows fastest
    within each column of positions).  If ``limit`` is given and fewer
    than the available patch count, a seed-deterministic uniform
    subsample (without replacement, lattice order preserved) is taken.
    Values are rescaled into [0, 1] by the image max when the max
    exceeds 1.
    """
    P, Q = patch_shape
    if stride < 1:
        raise ValueError(f"stride must be >= 1, got {stride}")
    img = image.scaled_to_unit().pixels
    M, N = img.shape
    if P > M or Q > N:
        raise DimensionError(f"patch {P}x{Q} larger than image {M}x{N}")
    row_starts = np.arange(0, M - P + 1, stride)
    col_starts = np.arange(0, N - Q + 1, stride)
    count = row_starts.size * col_starts.size
    # windows[r0, c0] is the patch with top-left corner (r0*stride, c0*stride)
    windows = np.lib.stride_tricks.sliding_window_view(img, (P, Q))[::stride, ::stride]
    if limit is not None and limit < count:
        rng = np.random.default_rng(seed)
        chosen = np.sort(rng.choice(count, size=limit, replace=False))
    else:
        chosen = np.arange(count)
    # Column-major enumeration of lattice positions.
    r_idx = chosen % row_starts.size
    c_idx = chosen // row_starts.size
    patches = windows[r_idx, c_idx]  # (t, P, Q)
    # Column-major vectorization of each patch.
    return np.ascontiguousarray(patches.transpose(0, 2, 1).reshape(-1, P * Q).T)


def apply_block_dictionary(
    D: np.ndarray, alpha: np.ndarray, perm: BlockPermutation
) -> np.ndarray:
    """Synthesize the image vector from per-block coefficients.

    Computes x with block j equal to D @ alpha_j and returns it in image
    ordering; the block-diagonal operator is never materialized.
    """
    D = np.asarray(D, dtype=np.float64)
    alpha = np.asarray(alpha, dtype=np.float64)
    p, s = D.shape
    n = perm.n
    if n % p:
        raise DimensionError(f"{n} pixels do not tile into blocks of {p}")
    q = n // p
    if alpha.size != s * q:
        raise DimensionError(f"expected coefficient vector of length {s * q}, got {alpha.size}")
    blocks = alpha.reshape(q, s) @ D.T  # row j = D @ alpha_j
    return perm.apply_transpose(blocks.ravel())


def apply_block_dictionary_adjoint(
    D: np.ndarray, v: np.ndarray, perm: BlockPermutation
) -> np.ndarray:
    """Adjoint of apply_block_dictionary: per-block D^T applied to Pi v."""
    D = np.asarray(D, dtype=np.float64)
    v = np.asarray(v, dtype=np.float64)
    p, s = D.shape
    n = perm.n
    if v.size != n:
        raise DimensionError(f"expected image vector of length {n}, got {v.size}")
    if n % p:
        raise DimensionError(f"{n} pixels do not tile into blocks of {p}")
    q = n // p
    blocks = perm.apply(v).reshape(q, p)
    return (blocks @ D).ravel()  # row j = D^T @ (Pi v)_j


def boundary_operator(M: int, N: int, P: int, Q: int) -> sp.csr_matrix:
    """Signed finite differences across block boundaries.

    One row per adjacent pixel pair straddling a block boundary, +1 at
    the pixel with the smaller column-major index and -1 at the other.
    Row count is N*(M/P - 1) + M*(N/Q - 1).  Rows across horizontal
    boundaries come first (by boundary, then column), then vertical.
    """
    geom = PatchGeometry(M, N, P, Q)
    gm, gn = geom.grid_shape

    plus: list[np.ndarray] = []
    minus: list[np.ndarray] = []
    cols_all = np.arange(N)
    for b in range(1, gm):  # horizontal boundaries between block rows
        r = b * P
        plus.append((r - 1) + cols_all * M)
        minus.append(r + cols_all * M)
    rows_all = np.arange(M)
    for b in range(1, gn):  # vertical boundaries between block columns
        c = b * Q
        plus.append(rows_all + (c - 1) * M)
        minus.append(rows_all + c * M)

    ell = N * (gm - 1) + M * (gn - 1)
    if ell == 0:
        return sp.csr_matrix((0, M * N))
    plus_idx = np.concatenate(plus)
    minus_idx = np.concatenate(minus)
    row_idx = np.repeat(np.arange(ell), 2)
    col_idx = np.stack([plus_idx, minus_idx], axis=1).ravel()
    vals = np.tile(np.array([1.0, -1.0]), ell)
    return sp.csr_matrix((vals, (row_idx, col_idx)), shape=(ell, M * N))


def boundary_penalty(v: np.ndarray, L: sp.spmatrix) -> float:
    """Mean-squared jump across block boundaries: ||L v||^2 / (2 ell).

    Returns 0 for an empty operator (single-block images).
    """
    ell = L.shape[0]
    if ell == 0:
        return 0.0
    v = np.asarray(v, dtype=np.float64)
    if v.size != L.shape[1]:
        raise DimensionError(f"expected vector of length {L.shape[1]}, got {v.size}")
    d = L @ v
    return 0.5 * float(d @ d) / ell
