"""Generalized resistance matrices and the closed-form inverse.

For a balanced, strongly connected digraph with Laplacian L and
pseudoinverse blocks K_ij, and parameters a, b > 0, the resistance matrix has
blocks R_ij = a^2 K_ii + b^2 K_jj - 2ab K_ij.  Its inverse is

    R^-1 = -L / (2ab) + tau (tau' R tau)^-1 (tau' - a^2 U' D' L' + b^2 U' D L)

with D = Diag(K_11, ..., K_nn) and tau the per-vertex correction stack built
by :func:`tau_direct`.  The transpose on D in the a^2 term matters: for s >= 2
the diagonal blocks K_ii of a non-symmetric L^+ are in general not symmetric,
and the variant with D in place of D' then fails (see
:func:`verify_untransposed_forms`).
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DegenerateQuadratic, InternalConsistencyError, SingularMatrixError
from .graph import WeightedDigraph
from .laplacian import LaplacianBundle, build_laplacian
from .matrix import (
    BlockMatrix,
    Rational,
    RMatrix,
    invert,
    is_positive_definite,
    rational,
    zeros,
)
from .report import VerificationReport, Witness


@dataclass(frozen=True)
class ResistanceParams:
    a: Rational = rational(1)
    b: Rational = rational(1)

    def __post_init__(self):
        a, b = rational(self.a), rational(self.b)
        if a <= 0 or b <= 0:
            raise ValueError(f"resistance parameters must be positive, got a={a}, b={b}")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @property
    def ab(self) -> Rational:
        return self.a * self.b


@dataclass(frozen=True)
class ResistanceBundle:
    params: ResistanceParams
    lap: LaplacianBundle
    R: BlockMatrix
    tau: RMatrix
    tauRtau: RMatrix


def _resistance_blockwise(lap: LaplacianBundle, p: ResistanceParams) -> BlockMatrix:
    a2, b2, two_ab = p.a * p.a, p.b * p.b, 2 * p.ab
    diag = lap.Ldag.diagonal_blocks()
    grid = [
        [diag[i] * a2 + diag[j] * b2 - lap.K(i, j) * two_ab for j in range(lap.n)]
        for i in range(lap.n)
    ]
    return BlockMatrix.from_block_grid(grid)


def resistance_global(lap: LaplacianBundle, p: ResistanceParams) -> RMatrix:
    """a^2 D U U' + b^2 U U' D - 2ab L^+ (D = block diagonal of L^+)."""
    u = lap.U
    return (
        (lap.diag_stack @ u.T) * (p.a * p.a)
        + (u @ lap.diag_row) * (p.b * p.b)
        - lap.Ldag * (2 * p.ab)
    )


def resistance_matrix(lap: LaplacianBundle, p: ResistanceParams) -> BlockMatrix:
    """Blockwise resistance matrix, cross-checked against the global expression."""
    R = _resistance_blockwise(lap, p)
    if R != resistance_global(lap, p):
        raise InternalConsistencyError("blockwise and global resistance matrices disagree")
    return R


def tau_direct(lap: LaplacianBundle, R: BlockMatrix, p: ResistanceParams) -> RMatrix:
    """Stack of tau_i = 2ab I + L_ii R_ii - sum over arcs (i, j) of W_ij^-1 R_ji."""
    s = lap.s
    g = lap.graph
    two_ab_i = RMatrix.identity(s) * (2 * p.ab)
    blocks = []
    for i in range(lap.n):
        t = two_ab_i + lap.L.block(i, i) @ R.block(i, i)
        for arc in g.out_arcs(i):
            t = t - invert(arc.weight) @ R.block(arc.head, i)
        blocks.append(t)
    return RMatrix.vstack(blocks)


def tau_closed_form(lap: LaplacianBundle, p: ResistanceParams) -> RMatrix:
    """a^2 L D U + (2ab/n) U."""
    return (lap.L @ lap.diag_stack) * (p.a * p.a) + lap.U * (2 * p.ab / lap.n)


def _quadratic_split(lap: LaplacianBundle, p: ResistanceParams) -> RMatrix:
    # U' D L D U; equals X' L X for X = D U only when every K_ii is symmetric
    a, b, n = p.a, p.b, lap.n
    diag_sum = zeros(lap.s)
    for k in lap.Ldag.diagonal_blocks():
        diag_sum = diag_sum + k
    middle = lap.diag_row @ lap.L @ lap.diag_stack
    return middle * (2 * a**3 * b**3) + diag_sum * (4 * a * a * b * b * (a * a + b * b) / n)


def tau_quadratic(lap: LaplacianBundle, R: RMatrix, tau: RMatrix, p: ResistanceParams) -> RMatrix:
    """tau' R tau, checked against its decomposition and for positive definiteness."""
    q = tau.T @ R @ tau
    if q != _quadratic_split(lap, p):
        raise InternalConsistencyError(
            "tau' R tau differs from 2a^3b^3 U'DLDU + 4a^2b^2(a^2+b^2)/n sum K_ii"
        )
    if not is_positive_definite(q):
        raise DegenerateQuadratic("tau' R tau is not positive definite; inputs violate the hypotheses")
    return q


def build_resistance(source: WeightedDigraph | LaplacianBundle, p: ResistanceParams | None = None) -> ResistanceBundle:
    p = ResistanceParams() if p is None else p
    lap = source if isinstance(source, LaplacianBundle) else build_laplacian(source)
    R = resistance_matrix(lap, p)
    tau = tau_direct(lap, R, p)
    return ResistanceBundle(p, lap, R, tau, tau_quadratic(lap, R, tau, p))


def correction_row(bundle: ResistanceBundle) -> RMatrix:
    """tau' - a^2 U' D' L' + b^2 U' D L (s x ns).

    U' D' = (D U)' is the transpose of the stacked diagonal blocks.
    """
    p, lap = bundle.params, bundle.lap
    return (
        bundle.tau.T
        - (lap.diag_stack.T @ lap.L.T) * (p.a * p.a)
        + (lap.diag_row @ lap.L) * (p.b * p.b)
    )


def inverse_closed_form(bundle: ResistanceBundle, check: bool = True) -> BlockMatrix:
    p, lap = bundle.params, bundle.lap
    try:
        q_inv = invert(bundle.tauRtau)
    except SingularMatrixError as exc:
        raise DegenerateQuadratic("tau' R tau is singular") from exc
    result = BlockMatrix(
        lap.L / (-2 * p.ab) + bundle.tau @ q_inv @ correction_row(bundle),
        lap.s,
    )
    if check:
        eye = RMatrix.identity(lap.n * lap.s)
        if result @ bundle.R != eye or bundle.R @ result != eye:
            raise InternalConsistencyError("closed-form inverse fails Q R = R Q = I")
    return result


def verify_lemma_identities(bundle: ResistanceBundle) -> VerificationReport:
    """Exact check of every identity the closed-form inverse rests on."""
    p, lap, R, tau, q = bundle.params, bundle.lap, bundle.R, bundle.tau, bundle.tauRtau
    a2, b2, ab, n, s = p.a * p.a, p.b * p.b, p.ab, lap.n, lap.s
    L, U = lap.L, lap.U
    ns = n * s
    eye = RMatrix.identity(ns)
    rep = VerificationReport()

    rep.add_equal("identity.tau_closed_form", "tau = a^2 L D U + (2ab/n) U", tau, tau_closed_form(lap, p))
    dt_row = lap.diag_stack.T  # U' D'
    rep.add_equal(
        "identity.tau_transpose",
        "tau' + a^2 U'D'(L - L') = a^2 U'D' L + (2ab/n) U'",
        tau.T + (dt_row @ (L - L.T)) * a2,
        (dt_row @ L) * a2 + U.T * (2 * ab / n),
    )
    rep.add_equal("identity.LR", "L R + 2ab I = tau U'", L @ R + eye * (2 * ab), tau @ U.T)
    uu = U @ U.T
    rep.add_equal(
        "identity.RL",
        "R L + 2ab I = U tau' - a^2 UU'D' L' + b^2 UU'D L",
        R @ L + eye * (2 * ab),
        U @ tau.T - (U @ dt_row @ L.T) * a2 + (uu @ lap.delta @ L) * b2,
    )
    rep.add_equal("identity.tau_column_sum", "U' tau = 2ab I_s", U.T @ tau, RMatrix.identity(s) * (2 * ab))
    rep.add_equal(
        "identity.quadratic_split",
        "tau' R tau = 2a^3b^3 U'DLDU + 4a^2b^2(a^2+b^2)/n sum K_ii",
        tau.T @ R @ tau,
        _quadratic_split(lap, p),
    )
    rep.add("identity.quadratic_pd", "tau' R tau is positive definite", is_positive_definite(q))

    rep.add_equal("identity.R_tau", "R tau = U (tau' R tau) / (2ab)", R @ tau, (U @ q) / (2 * ab))
    rep.add_equal("identity.LR_tau", "L R tau = 0", L @ R @ tau, zeros(ns, s))
    rep.add_equal(
        "identity.row_R",
        "(tau' - a^2 U'D' L' + b^2 U'D L) R = (tau' R tau) U' / (2ab)",
        correction_row(bundle) @ R,
        (q @ U.T) / (2 * ab),
    )
    rep.add_equal("identity.R_global", "R = a^2 D UU' + b^2 UU' D - 2ab L^+", R, resistance_global(lap, p))

    try:
        qinv = inverse_closed_form(bundle, check=False)
    except DegenerateQuadratic:
        rep.add("inverse.right", "Q R = I", False, Witness("tau' R tau", "singular", "invertible"))
        return rep
    rep.add_equal("inverse.left", "R Q = I", R @ qinv, eye)
    rep.add_equal("inverse.right", "Q R = I", qinv @ R, eye)
    return rep


def diagonal_blocks_symmetric(lap: LaplacianBundle) -> bool:
    return all(k == k.T for k in lap.Ldag.diagonal_blocks())


def verify_untransposed_forms(bundle: ResistanceBundle) -> VerificationReport:
    """Check the variants that write D where the derivation produces D'.

    These coincide with the identities in :func:`verify_lemma_identities`
    exactly when every K_ii is symmetric (always the case for s = 1).  For
    other graphs they are expected to fail; this report exists to show that.
    """
    p, lap, R, tau, q = bundle.params, bundle.lap, bundle.R, bundle.tau, bundle.tauRtau
    a2, b2, ab, n = p.a * p.a, p.b * p.b, p.ab, lap.n
    L, U = lap.L, lap.U
    ns = n * lap.s
    rep = VerificationReport()
    rep.add("untransposed.K_symmetric", "every K_ii is symmetric", diagonal_blocks_symmetric(lap))
    rep.add_equal(
        "untransposed.tau_transpose",
        "tau' + a^2 U'D(L - L') = a^2 U'D L + (2ab/n) U'",
        tau.T + (lap.diag_row @ (L - L.T)) * a2,
        (lap.diag_row @ L) * a2 + U.T * (2 * ab / n),
    )
    uu_d = U @ lap.diag_row
    rep.add_equal(
        "untransposed.RL",
        "R L + 2ab I = U tau' - a^2 UU'D L' + b^2 UU'D L",
        R @ L + RMatrix.identity(ns) * (2 * ab),
        U @ tau.T - (uu_d @ L.T) * a2 + (uu_d @ L) * b2,
    )
    x = lap.diag_stack
    rep.add_equal(
        "untransposed.quadratic_split",
        "tau' R tau = 2a^3b^3 X'LX + 4a^2b^2(a^2+b^2)/n sum K_ii, X = D U",
        q,
        _quadratic_split(lap, p) + (x.T @ L @ x - lap.diag_row @ L @ x) * (2 * p.a**3 * p.b**3),
    )
    row = tau.T - (lap.diag_row @ L.T) * a2 + (lap.diag_row @ L) * b2
    candidate = L / (-2 * ab) + tau @ invert(q) @ row
    rep.add_equal("untransposed.inverse", "(-L/(2ab) + tau q^-1 (tau' - a^2 U'D L' + b^2 U'D L)) R = I",
                  candidate @ R, RMatrix.identity(ns))
    return rep
