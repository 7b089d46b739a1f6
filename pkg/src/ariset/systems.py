"""Controllability structure of a pair (A0, B).

The central object is the :class:`SpectralSplit`: an ordered real Schur
form of ``A0^T`` whose diagonal blocks are grouped AXIS, then RHP, then
LHP, with each block tagged controllable or not by the PBH test. All the
Riccati machinery downstream enumerates invariant subspaces through these
blocks.
"""

from dataclasses import dataclass, replace

import numpy as np

from .errors import InvalidInput
from .linalg import as_matrix, real_schur_ordered
from .tolerances import DEFAULT, Tolerances

__all__ = [
    "SpectralBlock",
    "SpectralSplit",
    "kalman_rank",
    "pbh_classify",
    "spectral_split",
]

AXIS, RHP, LHP = "AXIS", "RHP", "LHP"
_PLANE_ORDER = {AXIS: 0, RHP: 1, LHP: 2}


@dataclass(frozen=True)
class SpectralBlock:
    """One diagonal Schur block of ``A0^T`` with its classification.

    ``offset`` indexes into the Schur basis columns, ``size`` is 1 for a
    real eigenvalue and 2 for a conjugate pair (never split),
    ``half_plane`` is one of AXIS / RHP / LHP, and ``controllable`` holds
    the PBH verdict for the block's eigenvalues.
    """

    offset: int
    size: int
    eigenvalues: tuple
    half_plane: str
    controllable: bool


@dataclass(frozen=True)
class SpectralSplit:
    """Ordered Schur decomposition ``A0^T U = U T`` plus input geometry.

    Blocks are grouped AXIS, RHP, LHP in that order. ``M = U^T B B^T U``
    is the input Gram matrix expressed in the Schur basis, and
    ``axis_tol`` records the absolute half-width of the axis band used
    for the grouping.
    """

    U: np.ndarray
    T: np.ndarray
    blocks: tuple
    M: np.ndarray
    axis_tol: float

    @property
    def order(self):
        return self.U.shape[0]

    def indices(self, half_plane=None, controllable=None):
        """Block indices filtered by half-plane and/or controllability."""
        out = []
        for i, b in enumerate(self.blocks):
            if half_plane is not None and b.half_plane != half_plane:
                continue
            if controllable is not None and b.controllable != controllable:
                continue
            out.append(i)
        return out

    def columns(self, block_set):
        """Schur-basis column positions covered by the given blocks."""
        cols = []
        for i in block_set:
            b = self.blocks[i]
            cols.extend(range(b.offset, b.offset + b.size))
        return cols


def kalman_rank(a, b, rank_tol=1e-10):
    """Rank of the controllability matrix ``[B, AB, ..., A^{n-1}B]``.

    Equals ``n`` exactly when (A, B) is controllable. The rank cutoff is
    ``rank_tol`` relative to the largest singular value.
    """
    am = as_matrix(a, name="A", square=True)
    bm = as_matrix(b, name="B")
    n = am.shape[0]
    if bm.shape[0] != n:
        raise InvalidInput(f"B must have {n} rows, got {bm.shape[0]}")
    cols = [bm]
    for _ in range(n - 1):
        cols.append(am @ cols[-1])
    ctrb = np.hstack(cols)
    sv = np.linalg.svd(ctrb, compute_uv=False)
    if sv.size == 0 or sv[0] == 0.0:
        return 0
    return int(np.count_nonzero(sv > rank_tol * sv[0]))


def _pbh_controllable(a0, b, lam, rank_tol):
    """PBH test at the eigenvalue ``lam``: smallest singular value of
    ``[lam I - A0, B]`` must clear the rank cutoff."""
    n = a0.shape[0]
    pencil = np.hstack([lam * np.eye(n) - a0, b.astype(complex)])
    sv = np.linalg.svd(pencil, compute_uv=False)
    return sv[-1] > rank_tol * max(1.0, sv[0])


def pbh_classify(a0, b, split: SpectralSplit, rank_tol=1e-10):
    """Return a copy of ``split`` with controllability tags recomputed.

    A block is controllable iff the PBH test passes at each of its
    eigenvalues; conjugate pairs share a verdict and are tagged
    atomically.
    """
    am = as_matrix(a0, name="A0", square=True)
    bm = as_matrix(b, name="B")
    tagged = []
    for blk in split.blocks:
        ok = _pbh_controllable(am, bm, blk.eigenvalues[0], rank_tol)
        tagged.append(replace(blk, controllable=bool(ok)))
    return replace(split, blocks=tuple(tagged))


def spectral_split(a0, b, tol: Tolerances = DEFAULT):
    """Ordered spectral decomposition of ``A0^T`` with PBH tags.

    Computes the real Schur form of ``A0^T``, groups the diagonal blocks
    AXIS (|Re| within the axis band), then RHP, then LHP, attaches
    ``M = U^T B B^T U``, and tags each block with its PBH verdict.

    Parameters
    ----------
    a0 : array_like
        Square feedback matrix.
    b : array_like
        Input matrix with matching row count.
    tol : Tolerances
        Supplies the axis band (relative to ``||A0||``) and the rank
        cutoff for the PBH test.

    Returns
    -------
    SpectralSplit
    """
    am = as_matrix(a0, name="A0", square=True)
    bm = as_matrix(b, name="B")
    if bm.shape[0] != am.shape[0]:
        raise InvalidInput(
            f"B must have {am.shape[0]} rows, got {bm.shape[0]}"
        )
    axis_abs = tol.axis * float(np.linalg.norm(am, 2))

    def classify(lam):
        if abs(lam.real) <= axis_abs:
            return _PLANE_ORDER[AXIS]
        return _PLANE_ORDER[RHP] if lam.real > 0 else _PLANE_ORDER[LHP]

    u, t, raw = real_schur_ordered(am.T, classify)
    gram = u.T @ (bm @ bm.T) @ u
    gram = 0.5 * (gram + gram.T)

    planes = [AXIS, RHP, LHP]
    blocks = tuple(
        SpectralBlock(
            offset=blk.offset,
            size=blk.size,
            eigenvalues=blk.eigenvalues,
            half_plane=planes[classify(blk.eigenvalues[0])],
            controllable=False,
        )
        for blk in raw
    )
    split = SpectralSplit(U=u, T=t, blocks=blocks, M=gram, axis_tol=axis_abs)
    return pbh_classify(am, bm, split, rank_tol=tol.rank)
