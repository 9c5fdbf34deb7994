"""Sign results for scalar weights, and an experimental probe for matrix weights.

* pseudoinverse dominance: for a Laplacian-like A, every diagonal entry of A^+
  dominates the other entries in its row and column
* scalar generalized resistances are non-negative
* (R^-1 - alpha L)^-1 is entrywise non-negative when R is the resistance
  matrix of a connected undirected graph and L a scalar balanced Laplacian
* for matrix weights, whether every block R_ij has a PSD symmetric part is
  open; :func:`psd_conjecture_probe` only records what it finds
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .errors import HypothesisViolation, NotScalar, SingularMatrixError
from .graph import UndirectedGraph, WeightedDigraph, symmetrize
from .laplacian import build_laplacian
from .matrix import (
    Rational,
    RMatrix,
    det,
    format_rational,
    invert,
    is_positive_definite,
    is_psd_via_quadratic_form,
    pinv_laplacian_like,
    rank,
    rational,
    symmetric_part,
)
from .report import VerificationReport, Witness
from .resistance import ResistanceParams, build_resistance, resistance_matrix

ALPHA_GRID = tuple(rational(x) for x in ("0", "1/2", "1", "2", "10"))

# all 2^n - 1 principal minors are enumerated, so larger inputs skip that check
MINOR_CHECK_MAX_N = 12


def _loc(i: int, j: int) -> str:
    return f"({i + 1},{j + 1})"


def _fmt(x) -> str:
    return format_rational(x)


# -- pseudoinverse dominance ---------------------------------------------------


def dominance_hypotheses(A: RMatrix) -> list[tuple[str, bool]]:
    n = A.rows
    ones = RMatrix([[1] for _ in range(n)])
    return [
        ("square", A.is_square),
        ("off_diagonal_nonpositive", all(A[i, j] <= 0 for i in range(n) for j in range(n) if i != j)),
        ("row_sums_zero", (A @ ones).is_zero()),
        ("column_sums_zero", (A.T @ ones).is_zero()),
        ("symmetric_part_rank", rank(A + A.T) == n - 1),
        ("psd", is_psd_via_quadratic_form(A)),
    ]


def pinv_dominance_check(A: RMatrix) -> VerificationReport:
    """p_ii >= p_ij and p_ii >= p_ji for P = A^+, after checking A's hypotheses."""
    if not A.is_square:
        raise HypothesisViolation("matrix must be square", which="square")
    for which, ok in dominance_hypotheses(A):
        if not ok:
            raise HypothesisViolation(f"hypothesis {which} fails", which=which)
    P = pinv_laplacian_like(A.as_block(1))
    n = A.rows
    rep = VerificationReport()
    for label, other in (("row", lambda i, j: P[i, j]), ("column", lambda i, j: P[j, i])):
        worst = None
        for i in range(n):
            for j in range(n):
                gap = P[i, i] - other(i, j)
                if gap < 0 and (worst is None or gap < worst[0]):
                    worst = (gap, i, j)
        witness = None
        if worst is not None:
            _, i, j = worst
            witness = Witness(_loc(i, j), _fmt(P[i, i]), _fmt(other(i, j)))
        rep.add(f"dominance.{label}", f"p_ii >= p_ij along each {label}", worst is None, witness)
    return rep


# -- scalar resistance non-negativity ------------------------------------------


@dataclass(frozen=True)
class NonnegResult:
    minimum: Rational
    location: tuple[int, int]
    report: VerificationReport


def scalar_resistance_nonneg(g: WeightedDigraph, p: ResistanceParams | None = None) -> NonnegResult:
    if g.s != 1:
        raise NotScalar(f"weights are {g.s}x{g.s}; the result needs scalar weights")
    p = ResistanceParams() if p is None else p
    lap = build_laplacian(g)
    R = resistance_matrix(lap, p)
    K = lap.Ldag
    n = g.n
    loc = min(((i, j) for i in range(n) for j in range(n)), key=lambda ij: R[ij])
    rep = VerificationReport()
    ok = R[loc] >= 0
    rep.add("nonneg.min_resistance", "min r_ij >= 0", ok,
            None if ok else Witness(_loc(*loc), _fmt(R[loc]), "0"))

    bad = None
    for i in range(n):
        for j in range(n):
            if min(K[i, i], K[j, j]) < max(K[i, j], K[j, i]):
                bad = (i, j)
                break
        if bad:
            break
    rep.add(
        "nonneg.pinv_dominance",
        "min(k_ii, k_jj) >= max(k_ij, k_ji)",
        bad is None,
        None if bad is None else Witness(
            _loc(*bad), _fmt(min(K[bad[0], bad[0]], K[bad[1], bad[1]])), _fmt(max(K[bad], K[bad[1], bad[0]]))
        ),
    )
    return NonnegResult(R[loc], loc, rep)


# -- perturbation ----------------------------------------------------------------


@dataclass(frozen=True)
class PerturbationResult:
    matrix: RMatrix | None
    nonsingular: bool
    entrywise_nonneg: bool
    min_entry: Rational | None
    report: VerificationReport


def undirected_resistance(h: UndirectedGraph) -> RMatrix:
    """Resistance matrix of an undirected graph via its symmetrized digraph (a = b = 1)."""
    return build_resistance(symmetrize(h), ResistanceParams(1, 1)).R


def _principal_minors_negative(G: RMatrix, strict: bool):
    # returns the first offending index set, or None
    n = G.rows
    for k in range(1, n + 1):
        for idx in combinations(range(n), k):
            d = det(G.principal(idx))
            if d > 0 or (strict and d == 0):
                return idx, d
    return None


def perturbation(h: UndirectedGraph, g: WeightedDigraph, alpha=1) -> PerturbationResult:
    """(R^-1 - alpha L)^-1 for R the resistance matrix of h and L the Laplacian of g.

    The report covers the result itself and the intermediate facts that
    establish it, with H = alpha L - R^-1:

    * ``nonsingular``: H is nonsingular
    * ``deleted_vertex_definite``: every H[i] (vertex i deleted) has a
      positive definite symmetric part; at alpha = 0 only semidefiniteness
      holds and is checked
    * ``det_negative``: det H < 0
    * ``minors_negative``: all principal minors of H^-1 are negative
      (non-positive at alpha = 0, where the diagonal of H^-1 = -R vanishes)
    """
    alpha = rational(alpha)
    if alpha < 0:
        raise ValueError("alpha must be non-negative")
    if not h.is_connected():
        raise HypothesisViolation("undirected graph must be connected", which="connected")
    if g.s != 1 or h.s != 1:
        raise NotScalar("the perturbation result needs scalar weights")
    if g.n != h.n:
        raise HypothesisViolation(f"vertex counts differ: {h.n} vs {g.n}", which="size")
    n = g.n
    R = undirected_resistance(h)
    L = build_laplacian(g).L
    rep = VerificationReport()
    try:
        R_inv = invert(R)
    except SingularMatrixError:
        rep.add("perturbation.R_invertible", "R is nonsingular", False, Witness("R", "singular", "nonsingular"))
        return PerturbationResult(None, False, False, None, rep)
    H = L * alpha - R_inv

    try:
        G = invert(H)
    except SingularMatrixError as exc:
        rep.add("perturbation.nonsingular", "R^-1 - alpha L is nonsingular", False,
                Witness(f"column {exc.column}", "no pivot", "pivot"))
        return PerturbationResult(None, False, False, None, rep)
    rep.add("perturbation.nonsingular", "R^-1 - alpha L is nonsingular", True)
    result = -G

    strict = alpha > 0
    bad_vertex = None
    for i in range(n):
        sub = H.principal([k for k in range(n) if k != i])
        ok = is_positive_definite(sub) if strict else is_psd_via_quadratic_form(sub)
        if not ok:
            bad_vertex = i
            break
    rep.add(
        "perturbation.deleted_vertex_definite",
        "H[i] has a positive " + ("definite" if strict else "semidefinite") + " symmetric part for every i",
        bad_vertex is None,
        None if bad_vertex is None else Witness(f"H[{bad_vertex + 1}]", "not definite", "definite"),
    )

    d = det(H)
    rep.add("perturbation.det_negative", "det(alpha L - R^-1) < 0", d < 0, None if d < 0 else Witness("det", _fmt(d), "< 0"))

    if n <= MINOR_CHECK_MAX_N:
        bad_minor = _principal_minors_negative(G, strict)
        rep.add(
            "perturbation.minors_negative",
            "principal minors of (alpha L - R^-1)^-1 are " + ("negative" if strict else "non-positive"),
            bad_minor is None,
            None if bad_minor is None else Witness(
                "rows " + ",".join(str(k + 1) for k in bad_minor[0]), _fmt(bad_minor[1]), "< 0" if strict else "<= 0"
            ),
        )

    loc = min(((i, j) for i in range(n) for j in range(n)), key=lambda ij: result[ij])
    min_entry = result[loc]
    nonneg = min_entry >= 0
    rep.add("perturbation.nonneg", "(R^-1 - alpha L)^-1 >= 0 entrywise", nonneg,
            None if nonneg else Witness(_loc(*loc), _fmt(min_entry), ">= 0"))
    return PerturbationResult(result, True, nonneg, min_entry, rep)


# -- PSD probe -------------------------------------------------------------------


@dataclass(frozen=True)
class ProbeResult:
    blocks_checked: int
    counterexamples: tuple[tuple[int, int], ...]
    min_minor: Rational
    min_minor_block: tuple[int, int]

    @property
    def all_psd(self) -> bool:
        return not self.counterexamples

    def to_dict(self) -> dict:
        return {
            "blocks_checked": self.blocks_checked,
            "all_psd": self.all_psd,
            "counterexamples": [[i + 1, j + 1] for i, j in self.counterexamples],
            "min_principal_minor": _fmt(self.min_minor),
            "min_principal_minor_block": [self.min_minor_block[0] + 1, self.min_minor_block[1] + 1],
        }


def _min_principal_minor(m: RMatrix) -> Rational:
    s = m.rows
    return min(det(m.principal(idx)) for k in range(1, s + 1) for idx in combinations(range(s), k))


def psd_conjecture_probe(g: WeightedDigraph, p: ResistanceParams | None = None) -> ProbeResult:
    """Test every block R_ij for a PSD symmetric part.  Never raises on a counterexample."""
    p = ResistanceParams() if p is None else p
    lap = build_laplacian(g)
    R = resistance_matrix(lap, p)
    bad = []
    best = None
    for i in range(g.n):
        for j in range(g.n):
            block = R.block(i, j)
            if not is_psd_via_quadratic_form(block):
                bad.append((i, j))
            m = _min_principal_minor(symmetric_part(block))
            if best is None or m < best[0]:
                best = (m, (i, j))
    return ProbeResult(g.n * g.n, tuple(bad), best[0], best[1])
