"""Executable forms of the solution-set results.

Covers the rank-one perturbation test, the extremal pair (maximum and
minimum equation solutions and the induced two-sided bound on every
inequality solution), boundedness verdicts with explicit unbounded-ray
witnesses, the positive-(semi)definite parametrization of reduced
inequality solutions, the eigenvalue-flip identity of closed-loop
feedback, and certified inequality verification.
"""

from dataclasses import dataclass

import numpy as np
from scipy.optimize import linear_sum_assignment

from .errors import (
    InvalidInput,
    NotAnEquationSolution,
    NotASolution,
    NotRHPSelection,
    RiccatiError,
    SingularInput,
    Uncontrollable,
)
from .linalg import definiteness, solve_lyapunov_stable, symmetrize
from .riccati import (
    AriSolution,
    HomogeneousForm,
    SimplifiedEquation,
    _solution_from_coordinates,
    are_residual,
    degenerate_classify,
    full_rank_simplified_solution,
    reduce as reduce_blocks,
    ric_residual,
    solve_reduced_gramian,
    zero_solution,
)
from .systems import AXIS, LHP, RHP, SpectralSplit
from .tolerances import DEFAULT, Tolerances

__all__ = [
    "BoundednessReport",
    "Certificate",
    "ExtremalPair",
    "FlipReport",
    "ParamPoint",
    "Witness",
    "boundedness",
    "extremal_solutions",
    "feedback_flip",
    "parametrize",
    "rank_one_classify",
    "recover_parameter",
    "verify",
]


@dataclass(frozen=True)
class ExtremalPair:
    """Maximum and minimum equation solutions and Willems' bounds.

    ``Lr`` is supported on the right-half-plane blocks (X >= 0), ``Ll``
    on the left-half-plane blocks (X <= 0); every inequality solution X
    satisfies Ll.X <= X <= Lr.X, hence K_min <= K <= K_max with
    K_max = K0 + Lr.X and K_min = K0 + Ll.X.
    """

    Lr: AriSolution
    Ll: AriSolution
    K_max: np.ndarray
    K_min: np.ndarray


@dataclass(frozen=True)
class Witness:
    """A unit-Frobenius-norm ray along which the solution set is unbounded.

    ``sign`` is "+", "-" or "+-": K0 + alpha * direction stays feasible as
    alpha grows along the indicated sign(s).
    """

    direction: np.ndarray
    sign: str
    block: int


@dataclass(frozen=True)
class BoundednessReport:
    """Verdict on the geometry of the solution set with unbounded rays."""

    verdict: str
    witnesses: tuple


@dataclass(frozen=True)
class ParamPoint:
    """A positive (semi)definite parameter attached to a block selection."""

    P: np.ndarray
    block_set: tuple = ()


@dataclass(frozen=True)
class Certificate:
    """Outcome of an inequality check from residual extreme eigenvalues.

    Non-strict mode passes when ``residual_max_eig <= tol_used``; strict
    mode when ``residual_max_eig < -tol_used``.
    """

    residual_max_eig: float
    residual_min_eig: float
    passed: bool
    strict: bool
    tol_used: float


# ---------------------------------------------------------------------------
# rank-one perturbations


def rank_one_classify(form: HomogeneousForm, v, alpha, tol: Tolerances = DEFAULT):
    """Classify the residual of the rank-one perturbation X = alpha v vᵀ.

    Returns ``"semidefinite-rank<=1"`` exactly when ``v`` is an
    eigenvector of A0ᵀ within tolerance (then Ric(X) has rank at most one
    and a single sign); otherwise ``"indefinite"``.
    """
    vec = np.asarray(v, dtype=float).reshape(-1)
    n = form.problem.n
    if vec.shape[0] != n:
        raise InvalidInput(f"v must have length {n}")
    norm = float(np.linalg.norm(vec))
    if abs(norm - 1.0) > 1e-8:
        raise InvalidInput(f"v must be a unit vector, got norm {norm:.6e}")
    w = form.A0.T @ vec
    defect = w - (vec @ w) * vec
    cut = tol.definiteness * max(1.0, float(np.linalg.norm(form.A0, 2)))
    if float(np.linalg.norm(defect)) <= cut:
        return "semidefinite-rank<=1"
    return "indefinite"


# ---------------------------------------------------------------------------
# extremal solutions


def extremal_solutions(
    form: HomogeneousForm,
    split: SpectralSplit,
    tol: Tolerances = DEFAULT,
):
    """Maximum and minimum equation solutions for a controllable pair.

    ``Lr`` solves the equation over all RHP blocks and bounds every
    inequality solution from above; ``Ll`` over all LHP blocks bounds
    from below. Controllable axis blocks contribute only the zero
    coordinate and are skipped.

    Raises
    ------
    Uncontrollable
        Some block is uncontrollable: the solution set is unbounded and
        has no extremal structure (see :func:`boundedness`).
    """
    bad = split.indices(controllable=False)
    if bad:
        raise Uncontrollable(
            f"blocks {bad} are uncontrollable; the solution set is unbounded"
        )
    rhp = split.indices(half_plane=RHP)
    lhp = split.indices(half_plane=LHP)
    lr = (
        full_rank_simplified_solution(reduce_blocks(form, split, rhp, tol), tol)
        if rhp
        else zero_solution(form, tol)
    )
    ll = (
        full_rank_simplified_solution(reduce_blocks(form, split, lhp, tol), tol)
        if lhp
        else zero_solution(form, tol)
    )
    return ExtremalPair(
        Lr=lr,
        Ll=ll,
        K_max=form.K0 + lr.X,
        K_min=form.K0 + ll.X,
    )


# ---------------------------------------------------------------------------
# boundedness


def _ray_for_block(form, split, index, tol):
    """Positive-semidefinite ray on an uncontrollable non-axis block.

    Solves the block Lyapunov equation Dk P + P Dkᵀ = ±I so that
    Ric(alpha X_w) = ∓ alpha Lk Lkᵀ is negative semidefinite along the
    feasible sign.
    """
    eqn = reduce_blocks(form, split, [index], tol)
    blk = split.blocks[index]
    eye = np.eye(eqn.k)
    if blk.half_plane == RHP:
        p = solve_lyapunov_stable(-eqn.Dk.T, eye)
        sign = "+"
    else:
        p = solve_lyapunov_stable(eqn.Dk.T, eye)
        sign = "-"
    x = eqn.Lk @ p @ eqn.Lk.T
    x = 0.5 * (x + x.T)
    return Witness(direction=x / np.linalg.norm(x), sign=sign, block=index)


def boundedness(
    form: HomogeneousForm,
    split: SpectralSplit,
    tol: Tolerances = DEFAULT,
):
    """Boundedness of the solution set, with unbounded-ray witnesses.

    The set is bounded exactly when every block is controllable.
    Otherwise: uncontrollable eigenvalues only in the open RHP leave it
    bounded below only; only in the open LHP, bounded above only; both
    half planes, or any uncontrollable axis block (whose free family is
    feasible for either sign), make it unbounded on both sides.
    """
    unc = split.indices(controllable=False)
    if not unc:
        return BoundednessReport(verdict="bounded", witnesses=())

    witnesses = []
    axis_gens = None
    has = {AXIS: False, RHP: False, LHP: False}
    for i in unc:
        blk = split.blocks[i]
        has[blk.half_plane] = True
        if blk.half_plane == AXIS:
            if axis_gens is None:
                axis_gens = {
                    b.offset: out.generator
                    for b, out in degenerate_classify(form, split, tol)
                    if out.kind == "free-family"
                }
            gen = axis_gens[blk.offset]
            witnesses.append(Witness(direction=gen, sign="+-", block=i))
        else:
            witnesses.append(_ray_for_block(form, split, i, tol))

    if has[AXIS] or (has[RHP] and has[LHP]):
        verdict = "unbounded-both"
    elif has[RHP]:
        verdict = "bounded-below-only"
    else:
        verdict = "bounded-above-only"
    return BoundednessReport(verdict=verdict, witnesses=tuple(witnesses))


# ---------------------------------------------------------------------------
# parametrization


def _require_rhp_controllable(eqn):
    planes = {b.half_plane for b in eqn.blocks}
    if planes != {RHP}:
        raise NotRHPSelection(
            f"selection must lie in the open right half plane, got {sorted(planes)}"
        )
    if not all(b.controllable for b in eqn.blocks):
        raise Uncontrollable("selection contains uncontrollable blocks")


def parametrize(
    eqn: SimplifiedEquation,
    point,
    tol: Tolerances = DEFAULT,
):
    """Reduced inequality solution attached to a PSD parameter.

    Solves the perturbation equation Delta Dk + Dkᵀ Delta = P, forms
    Yhat = Y* + Delta around the inverse of the maximal reduced solution,
    and returns the solution with coordinates Yhat⁻¹. The attached
    certificate is evaluated on the reduced residual (which equals
    −Lhat P Lhat) and is strict exactly when P is positive definite.

    ``point`` may be a :class:`ParamPoint` or a bare symmetric array.
    """
    _require_rhp_controllable(eqn)
    if isinstance(point, ParamPoint):
        if point.block_set and tuple(point.block_set) != eqn.block_set:
            raise InvalidInput(
                f"parameter is bound to blocks {point.block_set}, "
                f"equation is over {eqn.block_set}"
            )
        p_raw = point.P
    else:
        p_raw = point
    p = symmetrize(p_raw, sym_tol=tol.sym, name="P")
    if p.shape != (eqn.k, eqn.k):
        raise InvalidInput(f"P must be {eqn.k}x{eqn.k}, got {p.shape}")
    p_verdict = definiteness(p, tol.definiteness)
    if not p_verdict.is_psd:
        raise InvalidInput(f"P must be positive semidefinite, got {p_verdict.kind}")
    strict = p_verdict.kind == "positive-definite"

    y_star = solve_reduced_gramian(eqn, tol)
    delta = solve_lyapunov_stable(-eqn.Dk, p, axis_tol=tol.axis)
    y_hat = y_star + delta
    sv = np.linalg.svd(y_hat, compute_uv=False)
    if sv[-1] <= tol.rank * max(1.0, sv[0]):
        raise SingularInput("perturbed Gramian is singular")
    lhat = np.linalg.inv(y_hat)
    lhat = 0.5 * (lhat + lhat.T)

    reduced = -eqn.Dk @ lhat - lhat @ eqn.Dk.T + lhat @ eqn.Mk @ lhat
    reduced = 0.5 * (reduced + reduced.T)
    w = np.linalg.eigvalsh(reduced)
    cut = tol.definiteness * max(1.0, float(np.abs(reduced).max()))
    passed = w[-1] < -cut if strict else w[-1] <= cut
    cert = Certificate(
        residual_max_eig=float(w[-1]),
        residual_min_eig=float(w[0]),
        passed=bool(passed),
        strict=strict,
        tol_used=cut,
    )
    return _solution_from_coordinates(eqn, lhat, tol, certificate=cert)


def recover_parameter(
    eqn: SimplifiedEquation,
    lhat,
    tol: Tolerances = DEFAULT,
):
    """Parameter whose :func:`parametrize` image is ``lhat``.

    ``lhat`` must be a full-rank solution of the reduced inequality over
    ``eqn.block_set``; the recovered P = Yhat Dk + Dkᵀ Yhat − Mk is
    positive semidefinite (definite exactly when the inequality is strict
    at ``lhat``).

    Raises
    ------
    SingularInput
        ``lhat`` is singular within rank tolerance.
    NotASolution
        The recovered parameter is indefinite beyond tolerance, i.e.
        ``lhat`` violates the reduced inequality.
    """
    lm = symmetrize(lhat, sym_tol=tol.sym, name="Lhat")
    if lm.shape != (eqn.k, eqn.k):
        raise InvalidInput(f"Lhat must be {eqn.k}x{eqn.k}, got {lm.shape}")
    sv = np.linalg.svd(lm, compute_uv=False)
    if sv[-1] <= tol.rank * max(1.0, sv[0]):
        raise SingularInput("Lhat is singular; restrict to its support blocks first")
    y_hat = np.linalg.inv(lm)
    p = y_hat @ eqn.Dk + eqn.Dk.T @ y_hat - eqn.Mk
    p = 0.5 * (p + p.T)
    verdict = definiteness(p, tol.definiteness)
    if not verdict.is_psd:
        raise NotASolution(
            f"recovered parameter is {verdict.kind}; Lhat does not satisfy "
            "the reduced inequality"
        )
    return ParamPoint(P=p, block_set=eqn.block_set)


# ---------------------------------------------------------------------------
# eigenvalue flip


@dataclass(frozen=True)
class FlipReport:
    """Spectrum comparison for A1 = A0 − BBᵀX against the flip identity."""

    eig_before: tuple
    eig_after: tuple
    expected_after: tuple
    flipped: tuple
    max_rel_mismatch: float
    matched: bool


def _match_spectra(computed, expected):
    cost = np.abs(computed[:, None] - expected[None, :])
    rows, cols = linear_sum_assignment(cost)
    rel = [
        cost[i, j] / max(1.0, abs(expected[j])) for i, j in zip(rows, cols)
    ]
    return float(max(rel)) if rel else 0.0


def feedback_flip(form: HomogeneousForm, sol: AriSolution, tol: Tolerances = DEFAULT):
    """Closed-loop matrix of an equation solution and its flipped spectrum.

    For an exact solution X of Ric(X) = 0 supported on k blocks, the
    matrix A1 = A0 − BBᵀX shares the remaining (n − k) eigenvalues with
    A0 while the k supporting eigenvalues appear negated.

    Returns ``(A1, FlipReport)``.

    Raises
    ------
    NotAnEquationSolution
        ``sol`` has a nonzero residual (strict-inequality solutions do
        not flip).
    """
    resid = float(np.abs(sol.residual).max())
    scale = max(
        1.0,
        float(np.abs(form.A0).max()) * float(np.abs(sol.X).max()),
        float(np.abs(form.M).max()) * float(np.abs(sol.X).max()) ** 2,
    )
    if resid > tol.base * scale:
        raise NotAnEquationSolution(
            f"residual {resid:.3e} is not zero within tolerance; the flip "
            "identity applies only to equation solutions"
        )
    a1 = form.A0 - form.M @ sol.X
    before = np.linalg.eigvals(form.A0)
    after = np.linalg.eigvals(a1)

    expected = list(before)
    for lam in sol.eigenvalues:
        idx = int(np.argmin([abs(e - lam) for e in expected]))
        expected[idx] = -lam
    expected = np.array(expected)

    mismatch = _match_spectra(after, expected)
    return a1, FlipReport(
        eig_before=tuple(before),
        eig_after=tuple(after),
        expected_after=tuple(expected),
        flipped=tuple(sol.eigenvalues),
        max_rel_mismatch=mismatch,
        matched=bool(mismatch <= 1e-6),
    )


# ---------------------------------------------------------------------------
# verification


def verify(form: HomogeneousForm, k, strict=False, tol: Tolerances = DEFAULT):
    """Certificate for K against the original inequality.

    The residual is evaluated both as −AᵀK − KA − Q + KBBᵀK and as
    Ric(K − K0); the two agree up to the base residual by construction
    and are cross-checked. Non-strict certification requires the maximum
    residual eigenvalue to be at most the tolerance; strict requires it
    below the negated tolerance.
    """
    km = symmetrize(k, sym_tol=tol.sym, name="K")
    r_direct = are_residual(form.problem, km)
    r_homog = ric_residual(form, km - form.K0)
    scale = max(
        1.0,
        float(np.abs(form.problem.A).max()),
        float(np.abs(form.problem.Q).max()),
        float(np.abs(km).max()),
        float(np.abs(km).max()) ** 2 * float(np.abs(form.M).max()),
    )
    gap = float(np.abs(r_direct - r_homog).max())
    if gap > 1e-8 * scale + form.base_residual:
        raise RiccatiError(
            f"residual routes disagree by {gap:.3e}; base solution is "
            "inconsistent with the problem data"
        )
    w = np.linalg.eigvalsh(r_direct)
    cut = tol.definiteness * scale
    passed = w[-1] < -cut if strict else w[-1] <= cut
    return Certificate(
        residual_max_eig=float(w[-1]),
        residual_min_eig=float(w[0]),
        passed=bool(passed),
        strict=bool(strict),
        tol_used=cut,
    )
