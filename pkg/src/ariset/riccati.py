"""Homogenized Riccati machinery.

The inequality −AᵀK − KA − Q + KBBᵀK ≤ 0 is rewritten around a base
equation solution K0 as Ric(X) ≤ 0 with

    Ric(X) = −A0ᵀX − XA0 + X B Bᵀ X,   A0 = A − BBᵀK0,   K = K0 + X.

Solutions of Ric(X) = 0 are supported on invariant subspaces of A0ᵀ. This
module reduces the problem to selected Schur blocks, solves the reduced
equations by Lyapunov inversion, enumerates the full family of equation
solutions through Schur complements of the maximal one, and classifies the
degenerate axis blocks (zero / purely imaginary eigenvalues).
"""

import itertools
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.linalg import lapack

from .errors import (
    BaseResidualTooLarge,
    DegenerateSpectrum,
    InvalidInput,
    NoBaseSolution,
    NonInvariantSelection,
    RiccatiError,
    SingularSylvester,
    SingularY,
)
from .linalg import (
    DefinitenessVerdict,
    as_matrix,
    definiteness,
    real_schur_ordered,
    schur_complement,
    solve_sylvester,
    symmetrize,
)
from .systems import AXIS, SpectralSplit
from .tolerances import DEFAULT, Tolerances

__all__ = [
    "AriSolution",
    "DegenerateOutcome",
    "HomogeneousForm",
    "RiccatiProblem",
    "SimplifiedEquation",
    "are_residual",
    "degenerate_classify",
    "full_rank_simplified_solution",
    "reduce",
    "ric_residual",
    "schur_family",
    "solve_base_are",
    "zero_solution",
]


@dataclass(frozen=True)
class RiccatiProblem:
    """The data triple (A, B, Q) of the Riccati equation/inequality."""

    A: np.ndarray
    B: np.ndarray
    Q: Optional[np.ndarray] = None

    def __post_init__(self):
        a = as_matrix(self.A, name="A", square=True)
        b = as_matrix(self.B, name="B")
        n = a.shape[0]
        if b.shape[0] != n:
            raise InvalidInput(f"B must have {n} rows, got {b.shape[0]}")
        q = np.zeros((n, n)) if self.Q is None else symmetrize(self.Q, name="Q")
        if q.shape != (n, n):
            raise InvalidInput(f"Q must be {n}x{n}, got {q.shape}")
        object.__setattr__(self, "A", a)
        object.__setattr__(self, "B", b)
        object.__setattr__(self, "Q", q)

    @property
    def n(self):
        return self.A.shape[0]


@dataclass(frozen=True)
class HomogeneousForm:
    """A base equation solution K0 and the induced homogeneous data.

    ``A0 = A − BBᵀK0`` is the feedback matrix, ``M = BBᵀ`` the input Gram
    matrix, and ``base_residual`` the max-norm of the equation residual at
    K0 (bounded by the base tolerance at construction).
    """

    problem: RiccatiProblem
    K0: np.ndarray
    A0: np.ndarray
    M: np.ndarray
    base_residual: float
    kind: str


@dataclass(frozen=True)
class SimplifiedEquation:
    """The Riccati data restricted to selected invariant Schur blocks.

    ``Lk`` has orthonormal columns spanning an A0ᵀ-invariant subspace with
    ``A0ᵀ Lk = Lk Dk``; ``Mk = Lkᵀ B Bᵀ Lk``. ``offsets`` gives each
    selected block's first local coordinate inside ``Dk``.
    """

    block_set: tuple
    Dk: np.ndarray
    Mk: np.ndarray
    Lk: np.ndarray
    blocks: tuple
    offsets: tuple
    form: HomogeneousForm

    @property
    def k(self):
        return self.Dk.shape[0]

    @property
    def eigenvalues(self):
        return tuple(lam for b in self.blocks for lam in b.eigenvalues)


@dataclass(frozen=True)
class AriSolution:
    """A symmetric solution X of Ric(X) ≤ 0 with its support certificate.

    ``X = Lk · Lcoord · Lkᵀ`` for the generating block set; ``residual``
    is Ric(X) and ``residual_verdict`` its sign classification (never
    positive for an emitted solution). ``certificate``, when present,
    summarizes strictness on the support subspace.
    """

    X: np.ndarray
    Lcoord: np.ndarray
    block_set: tuple
    rank: int
    residual: np.ndarray
    residual_verdict: DefinitenessVerdict
    eigenvalues: tuple = ()
    certificate: object = None


def are_residual(problem: RiccatiProblem, k):
    """Residual of the inhomogeneous equation, −AᵀK − KA − Q + KBBᵀK."""
    km = symmetrize(k, name="K")
    a, b, q = problem.A, problem.B, problem.Q
    r = -a.T @ km - km @ a - q + km @ (b @ (b.T @ km))
    return 0.5 * (r + r.T)


def ric_residual(form: HomogeneousForm, x):
    """Homogeneous residual Ric(X) = −A0ᵀX − XA0 + X M X, symmetrized."""
    xm = symmetrize(x, name="X")
    a0, m = form.A0, form.M
    r = -a0.T @ xm - xm @ a0 + xm @ (m @ xm)
    return 0.5 * (r + r.T)


def _base_scale(problem):
    return max(1.0, float(np.abs(problem.A).max()), float(np.abs(problem.Q).max()))


def solve_base_are(
    problem: RiccatiProblem,
    kind="antistabilizing",
    k0=None,
    tol: Tolerances = DEFAULT,
):
    """Fix a base solution of the equation −AᵀK − KA − Q + KBBᵀK = 0.

    Parameters
    ----------
    problem : RiccatiProblem
    kind : {"antistabilizing", "stabilizing", "given"}
        Spectral class requested for A0 = A − BBᵀK0: closed right half
        plane, closed left half plane, or a caller-supplied ``k0``
        (verified, not trusted).
    k0 : array_like, optional
        Required when ``kind="given"``.

    Returns
    -------
    HomogeneousForm

    Raises
    ------
    NoBaseSolution
        The Hamiltonian has no invariant subspace of the requested class
        with invertible top block, or the computed K fails verification.
    BaseResidualTooLarge
        A user-supplied ``k0`` fails residual verification.
    """
    a, b, q = problem.A, problem.B, problem.Q
    n = problem.n
    scale = _base_scale(problem)

    if kind == "given":
        if k0 is None:
            raise InvalidInput('kind="given" requires k0')
        km = symmetrize(k0, sym_tol=tol.sym, name="K0")
        if km.shape != (n, n):
            raise InvalidInput(f"K0 must be {n}x{n}, got {km.shape}")
        resid = float(np.abs(are_residual(problem, km)).max())
        if resid > tol.base * scale:
            raise BaseResidualTooLarge(
                f"supplied K0 has residual {resid:.3e} > {tol.base * scale:.3e}"
            )
    elif kind in ("antistabilizing", "stabilizing"):
        km, resid = _hamiltonian_solution(problem, kind, tol)
    else:
        raise InvalidInput(f"unknown base-solution kind: {kind!r}")

    m = b @ b.T
    m = 0.5 * (m + m.T)
    a0 = a - m @ km
    return HomogeneousForm(
        problem=problem,
        K0=km,
        A0=a0,
        M=m,
        base_residual=resid,
        kind=kind,
    )


def _hamiltonian_solution(problem, kind, tol):
    """Base solution from an n-dimensional invariant subspace of the
    Hamiltonian [[A, −BBᵀ], [−Q, −Aᵀ]] of the requested spectral class."""
    a, b, q = problem.A, problem.B, problem.Q
    n = problem.n
    ham = np.block([[a, -b @ b.T], [-q, -a.T]])
    axis_abs = tol.axis * float(np.linalg.norm(ham, 2))
    want_rhp_first = kind == "antistabilizing"

    def classify(lam):
        if abs(lam.real) <= axis_abs:
            return 1
        in_rhp = lam.real > 0
        return 0 if in_rhp == want_rhp_first else 2

    u, _, blocks = real_schur_ordered(ham, classify)
    covered = 0
    for blk in blocks:
        if covered == n:
            break
        covered += blk.size
    if covered != n:
        raise NoBaseSolution(
            "a complex-conjugate pair straddles the invariant-subspace "
            "boundary; no real solution of the requested kind"
        )
    u1 = u[:n, :n]
    u2 = u[n:, :n]
    sv = np.linalg.svd(u1, compute_uv=False)
    if sv[-1] <= tol.rank * max(1.0, sv[0]):
        raise NoBaseSolution(
            "invariant subspace has a singular top block; no solution of "
            "the requested kind"
        )
    k = np.linalg.solve(u1.T, u2.T).T
    km = 0.5 * (k + k.T)
    resid = float(np.abs(are_residual(problem, km)).max())
    if resid > tol.base * _base_scale(problem):
        raise NoBaseSolution(
            f"computed base solution fails verification: residual {resid:.3e}"
        )
    return km, resid


# ---------------------------------------------------------------------------
# reduction to selected blocks


def _dtrexc_move(t, u, src, dst):
    """Move the Schur block starting at row ``src`` to row ``dst`` (0-based)."""
    tn, un, info = lapack.dtrexc(t, u, src + 1, dst + 1, wantq=1)
    if info != 0:
        raise DegenerateSpectrum(
            "Schur block swap failed: eigenvalues too close to separate"
        )
    return tn, un


def _gap_to_unselected(split, selected):
    """Smallest eigenvalue distance between selected and unselected blocks."""
    chosen = set(selected)
    gap = np.inf
    for i in selected:
        for j, other in enumerate(split.blocks):
            if j in chosen:
                continue
            for li in split.blocks[i].eigenvalues:
                for lj in other.eigenvalues:
                    gap = min(gap, abs(li - lj))
    return gap


def reduce(
    form: HomogeneousForm,
    split: SpectralSplit,
    block_set,
    tol: Tolerances = DEFAULT,
):
    """Restrict the homogeneous problem to selected Schur blocks.

    The Schur form is reordered so the selected blocks (ascending) occupy
    the leading positions; the leading columns then span an exactly
    invariant subspace and carry the reduced data (Dk, Mk, Lk).

    Raises
    ------
    DegenerateSpectrum
        A selected block shares an eigenvalue with an unselected block
        (the invariant subspace is not well defined), or a required block
        swap fails.
    NonInvariantSelection
        The extracted columns fail the invariance residual check.
    """
    selected = sorted(set(int(i) for i in block_set))
    nblk = len(split.blocks)
    if not selected:
        raise InvalidInput("block_set must select at least one block")
    if selected[0] < 0 or selected[-1] >= nblk:
        raise InvalidInput(f"block indices out of range 0..{nblk - 1}")

    a0_norm = float(np.linalg.norm(form.A0, 2))
    if len(selected) < nblk:
        gap = _gap_to_unselected(split, selected)
        if gap <= tol.axis * a0_norm:
            raise DegenerateSpectrum(
                "selected blocks share an eigenvalue with unselected ones; "
                f"the invariant subspace is ill-defined (gap {gap:.3e})",
                gap=gap,
            )

    sizes = [blk.size for blk in split.blocks]
    t, u = split.T.copy(), split.U.copy()
    order = list(range(nblk))
    for pos, orig in enumerate(selected):
        cur = order.index(orig)
        if cur != pos:
            src = sum(sizes[b] for b in order[:cur])
            dst = sum(sizes[b] for b in order[:pos])
            t, u = _dtrexc_move(t, u, src, dst)
            order.pop(cur)
            order.insert(pos, orig)

    k = sum(sizes[i] for i in selected)
    lk = np.array(u[:, :k])
    dk = np.array(t[:k, :k])
    mk = lk.T @ form.M @ lk
    mk = 0.5 * (mk + mk.T)

    inv_resid = float(np.abs(form.A0.T @ lk - lk @ dk).max())
    if inv_resid > 1e-8 * max(1.0, a0_norm):
        raise NonInvariantSelection(
            f"selected blocks are coupled to unselected ones: invariance "
            f"residual {inv_resid:.3e}"
        )

    offsets = []
    acc = 0
    for i in selected:
        offsets.append(acc)
        acc += sizes[i]
    return SimplifiedEquation(
        block_set=tuple(selected),
        Dk=dk,
        Mk=mk,
        Lk=lk,
        blocks=tuple(split.blocks[i] for i in selected),
        offsets=tuple(offsets),
        form=form,
    )


# ---------------------------------------------------------------------------
# reduced-equation solutions


def _matrix_rank(m, rank_tol):
    if m.size == 0:
        return 0
    sv = np.linalg.svd(m, compute_uv=False)
    if sv[0] == 0.0:
        return 0
    return int(np.count_nonzero(sv > rank_tol * sv[0]))


def _solution_from_coordinates(eqn, lcoord, tol, certificate=None):
    x = eqn.Lk @ lcoord @ eqn.Lk.T
    x = 0.5 * (x + x.T)
    resid = ric_residual(eqn.form, x)
    verdict = definiteness(resid, tol.definiteness)
    return AriSolution(
        X=x,
        Lcoord=lcoord,
        block_set=eqn.block_set,
        rank=_matrix_rank(lcoord, tol.rank),
        residual=resid,
        residual_verdict=verdict,
        eigenvalues=eqn.eigenvalues,
        certificate=certificate,
    )


def solve_reduced_gramian(eqn: SimplifiedEquation, tol: Tolerances = DEFAULT):
    """Solve ``Y Dk + Dkᵀ Y = Mk`` for the inverse of the maximal reduced
    solution. Singular spectra (axis blocks, mirrored pairs) raise
    :class:`SingularSylvester`."""
    y = solve_sylvester(eqn.Dk.T, eqn.Dk, eqn.Mk)
    return 0.5 * (y + y.T)


def full_rank_simplified_solution(eqn: SimplifiedEquation, tol: Tolerances = DEFAULT):
    """Full-rank solution of the reduced equation over ``eqn.block_set``.

    Solves ``Y Dk + Dkᵀ Y = Mk`` and inverts: ``Lcoord = Y⁻¹``,
    ``X = Lk Y⁻¹ Lkᵀ`` satisfies Ric(X) = 0.

    Raises
    ------
    SingularSylvester
        spec(Dk) meets spec(−Dk) (axis eigenvalues or mirrored pairs).
    SingularY
        ``Y`` is singular within rank tolerance (typical for selections
        containing uncontrollable blocks).
    """
    y = solve_reduced_gramian(eqn, tol)
    sv = np.linalg.svd(y, compute_uv=False)
    if sv[-1] <= tol.rank * max(1.0, sv[0]):
        raise SingularY(
            f"reduced Gramian is singular (smallest singular value {sv[-1]:.3e}); "
            "the selected blocks admit no full-rank solution"
        )
    lcoord = np.linalg.inv(y)
    lcoord = 0.5 * (lcoord + lcoord.T)
    return _solution_from_coordinates(eqn, lcoord, tol)


def zero_solution(form: HomogeneousForm, tol: Tolerances = DEFAULT):
    """The trivial solution X = 0."""
    n = form.problem.n
    zero = np.zeros((n, n))
    return AriSolution(
        X=zero,
        Lcoord=np.zeros((0, 0)),
        block_set=(),
        rank=0,
        residual=zero,
        residual_verdict=definiteness(zero, tol.definiteness),
        eigenvalues=(),
    )


# ---------------------------------------------------------------------------
# the Schur-complement family


def _decouple_blocks(eqn, tol):
    """Similarity W making Dk block-diagonal across selected blocks.

    Returns ``(W, ok)`` where ``Dk W = W blkdiag(...)``; ``ok`` is False
    when some pair of blocks cannot be separated (shared eigenvalues).
    """
    k = eqn.k
    w = np.eye(k)
    spans = [
        slice(off, off + blk.size) for off, blk in zip(eqn.offsets, eqn.blocks)
    ]
    d = eqn.Dk
    for j in range(1, len(spans)):
        for i in range(j - 1, -1, -1):
            rhs = -sum(
                d[spans[i], spans[l]] @ w[spans[l], spans[j]]
                for l in range(i + 1, j + 1)
            )
            try:
                w[spans[i], spans[j]] = solve_sylvester(
                    d[spans[i], spans[i]], -d[spans[j], spans[j]], rhs
                )
            except SingularSylvester:
                return w, False
    return w, True


def schur_family(
    form: HomogeneousForm,
    split: SpectralSplit,
    tol: Tolerances = DEFAULT,
):
    """All equation solutions generated by subsets of non-axis blocks.

    Every subset of the non-axis Schur blocks (conjugate pairs atomic) is
    tried; subsets whose reduced Gramian is singular, or which split an
    eigenvalue cluster, are absent from the result. Axis blocks never
    participate: controllable ones only contribute the zero coordinate
    and uncontrollable ones generate the infinite families reported by
    :func:`degenerate_classify`.

    When the maximal solution over all eligible blocks exists, each lower
    rank member is cross-checked against the Schur complement of the
    maximal coordinates in a block-decoupled basis; the two routes must
    agree to 1e-6.

    Returns
    -------
    list of AriSolution
        Sorted by (rank, block_set); always contains the zero solution.
    """
    eligible = [i for i, b in enumerate(split.blocks) if b.half_plane != AXIS]
    solutions = [zero_solution(form, tol)]
    if not eligible:
        return solutions

    maximal = None
    decoupled = None
    try:
        eqn_all = reduce(form, split, eligible, tol)
        maximal = full_rank_simplified_solution(eqn_all, tol)
    except (SingularSylvester, SingularY, DegenerateSpectrum):
        maximal = None
    if maximal is not None:
        w, ok = _decouple_blocks(eqn_all, tol)
        if ok:
            winv = np.linalg.inv(w)
            lstar_bd = winv @ maximal.Lcoord @ winv.T
            decoupled = (eqn_all.Lk @ w, 0.5 * (lstar_bd + lstar_bd.T), eqn_all)

    for r in range(1, len(eligible)):
        for subset in itertools.combinations(eligible, r):
            try:
                eqn = reduce(form, split, subset, tol)
                sol = full_rank_simplified_solution(eqn, tol)
            except (SingularSylvester, SingularY, DegenerateSpectrum):
                continue
            if decoupled is not None:
                _cross_check_schur_route(sol, subset, decoupled, eligible)
            solutions.append(sol)
    if maximal is not None:
        solutions.append(maximal)

    solutions.sort(key=lambda s: (s.rank, s.block_set))
    return solutions


def _cross_check_schur_route(sol, subset, decoupled, eligible):
    """Verify the direct reduced solution against the Schur complement of
    the maximal solution expressed in the decoupled basis."""
    l_bd, lstar_bd, eqn_all = decoupled
    local = {blk_id: (off, eqn_all.blocks[pos].size)
             for pos, (blk_id, off) in enumerate(zip(eqn_all.block_set, eqn_all.offsets))}
    cols = []
    for i in subset:
        off, size = local[i]
        cols.extend(range(off, off + size))
    try:
        sc = schur_complement(lstar_bd, cols)
    except RiccatiError:
        return  # eliminated block singular: nothing to compare against
    x_sc = l_bd[:, cols] @ sc @ l_bd[:, cols].T
    x_sc = 0.5 * (x_sc + x_sc.T)
    gap = float(np.abs(x_sc - sol.X).max())
    if gap > 1e-6 * max(1.0, float(np.abs(sol.X).max())):
        raise RiccatiError(
            f"Schur-complement route disagrees with the direct solution "
            f"for blocks {subset}: gap {gap:.3e}"
        )


# ---------------------------------------------------------------------------
# degenerate axis blocks


@dataclass(frozen=True)
class DegenerateOutcome:
    """Classification of one axis block.

    ``kind`` is ``trivial-only`` (controllable: only X = 0 is feasible on
    the block) or ``free-family`` (uncontrollable: every multiple of
    ``generator`` solves the equation exactly). Generators have unit
    Frobenius norm.
    """

    kind: str
    generator: Optional[np.ndarray] = None


def _uncontrollable_zero_directions(form, tol):
    """Orthonormal kernel of the stacked map [A0ᵀ; Bᵀ]: directions v with
    A0ᵀ v = 0 and Bᵀ v = 0."""
    stacked = np.vstack([form.A0.T, form.problem.B.T])
    _, sv, vt = np.linalg.svd(stacked)
    scale = max(1.0, sv[0] if sv.size else 0.0)
    null = [vt[i] for i in range(vt.shape[0])
            if i >= sv.size or sv[i] <= tol.rank * scale]
    return null


def _imaginary_pair_generator(eqn):
    """Nonzero symmetric 2x2 coordinate solving Dk L + L Dkᵀ = 0.

    In the basis where Dk is the rotation [[0, mu], [-mu, 0]] this is a
    multiple of the identity; for a general 2x2 Schur block the kernel
    direction is found in the symmetric coordinates (p, q, r).
    """
    d = eqn.Dk
    # action of L -> D L + L D^T on [[p, q], [q, r]], rows = entries (11, 12, 22)
    a, b = d[0, 0], d[0, 1]
    c, e = d[1, 0], d[1, 1]
    mat = np.array(
        [
            [2 * a, 2 * b, 0.0],
            [c, a + e, b],
            [0.0, 2 * c, 2 * e],
        ]
    )
    _, _, vt = np.linalg.svd(mat)
    p, q, r = vt[-1]
    lcoord = np.array([[p, q], [q, r]])
    if np.trace(lcoord) < 0:
        lcoord = -lcoord
    return lcoord


def degenerate_classify(
    form: HomogeneousForm,
    split: SpectralSplit,
    tol: Tolerances = DEFAULT,
):
    """Outcome of every axis block: trivial-only or a free solution ray.

    Controllable axis blocks admit no nonzero feasible coordinate.
    Uncontrollable ones generate exact equation solutions for every
    scalar multiple of the returned generator: ``v vᵀ`` for a zero
    eigenvalue, the identity coordinate on the invariant plane for a
    purely imaginary pair.

    Returns
    -------
    list of (SpectralBlock, DegenerateOutcome)
    """
    outcomes = []
    zero_dirs = None
    zero_used = 0
    for i, blk in enumerate(split.blocks):
        if blk.half_plane != AXIS:
            continue
        if blk.controllable:
            outcomes.append((blk, DegenerateOutcome(kind="trivial-only")))
            continue
        if blk.size == 1:
            try:
                eqn = reduce(form, split, [i], tol)
                v = eqn.Lk[:, 0]
            except DegenerateSpectrum:
                if zero_dirs is None:
                    zero_dirs = _uncontrollable_zero_directions(form, tol)
                if not zero_dirs:
                    raise
                v = zero_dirs[min(zero_used, len(zero_dirs) - 1)]
                zero_used += 1
            gen = np.outer(v, v)
        else:
            eqn = reduce(form, split, [i], tol)
            lcoord = _imaginary_pair_generator(eqn)
            gen = eqn.Lk @ lcoord @ eqn.Lk.T
        gen = 0.5 * (gen + gen.T)
        gen /= np.linalg.norm(gen)
        resid = float(np.abs(ric_residual(form, gen)).max())
        if resid > 1e-8 * max(1.0, float(np.linalg.norm(form.A0, 2))):
            raise RiccatiError(
                f"free-family generator for block {i} has residual {resid:.3e}"
            )
        outcomes.append((blk, DegenerateOutcome(kind="free-family", generator=gen)))
    return outcomes
