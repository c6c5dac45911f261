"""Determinant bounds backing the magnitude certification.

Closed-form determinants of the tridiagonal chain blocks, the
Hadamard-Fischer product majorization for Gram matrices, coefficient
norm bounds for residual equations, and the per-column certification
chain x_i^2 <= det W_i <= k^(2(n-1)) for assembled systems.  All checks
are integer-exact.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from relmag.matrices import (
    IntegerMatrix,
    determinant,
    determinant_cofactor,
    format_rational,
)


class LemmaViolationError(AssertionError):
    """A proved determinant identity or bound failed; must never fire."""


FAMILIES = ("B", "C", "D")


@dataclass(frozen=True)
class ChainBlockSpec:
    """Tridiagonal symmetric block: diagonal k^2+1 with family tweaks.

    Family B is the plain block, C has last diagonal entry k^2, D has
    first diagonal entry 1.  signs are the off-diagonal sign choices
    (length t-1); the determinant does not depend on them.
    """

    family: str
    t: int
    k: int
    signs: tuple[int, ...] = ()

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError("family must be one of %s" % (FAMILIES,))
        if self.t < 0:
            raise ValueError("size must be >= 0")
        if self.signs and len(self.signs) != self.t - 1:
            raise ValueError("need %d off-diagonal signs" % (self.t - 1))
        if any(s not in (1, -1) for s in self.signs):
            raise ValueError("signs must be +-1")


def build_chain_block(spec: ChainBlockSpec) -> IntegerMatrix:
    """The explicit t x t matrix for the spec (t >= 1)."""
    t, k = spec.t, spec.k
    if t < 1:
        raise ValueError("cannot build a 0 x 0 matrix; det is 1 by convention")
    signs = spec.signs or (1,) * (t - 1)
    diag = [k * k + 1] * t
    if spec.family == "C":
        diag[-1] = k * k
    elif spec.family == "D":
        diag[0] = 1
    rows = [[0] * t for _ in range(t)]
    for i in range(t):
        rows[i][i] = diag[i]
        if i + 1 < t:
            rows[i][i + 1] = signs[i] * k
            rows[i + 1][i] = signs[i] * k
    return IntegerMatrix.from_rows(rows)


def det_closed_form(spec: ChainBlockSpec) -> int:
    """Closed-form determinant, independent of the sign pattern.

    B: ((k^2)^(t+1) - 1)/(k^2 - 1), or t+1 when k^2 = 1.
    C: k^(2t).  D: 1.  Size 0 has determinant 1 by convention.
    """
    t, k = spec.t, spec.k
    if t == 0:
        return 1
    if spec.family == "B":
        k2 = k * k
        if k2 == 1:
            return t + 1
        return ((k2 ** (t + 1)) - 1) // (k2 - 1)
    if spec.family == "C":
        return k ** (2 * t)
    return 1


@dataclass(frozen=True)
class RecurrenceReport:
    t_max: int
    k: int
    matrices_checked: int
    recurrences_checked: int

    def to_dict(self) -> dict:
        return {
            "t_max": self.t_max,
            "k": self.k,
            "matrices_checked": self.matrices_checked,
            "recurrences_checked": self.recurrences_checked,
        }


def verify_recurrences(t_max: int, k: int) -> RecurrenceReport:
    """Check the chain-block determinant identities up to t_max.

    For every family, size and off-diagonal sign pattern the closed form
    is compared against an independent cofactor-expansion determinant,
    and the three Laplace recurrences are checked on the closed forms.
    Any mismatch raises LemmaViolationError.
    """
    if t_max < 3:
        raise ValueError("t_max must be >= 3 to exercise the recurrences")
    matrices = 0
    recurrences = 0

    def det_b(t):
        return det_closed_form(ChainBlockSpec("B", t, k))

    def det_c(t):
        return det_closed_form(ChainBlockSpec("C", t, k))

    def det_d(t):
        return det_closed_form(ChainBlockSpec("D", t, k))

    for t in range(1, t_max + 1):
        for signs in product((1, -1), repeat=t - 1):
            for family in FAMILIES:
                spec = ChainBlockSpec(family, t, k, signs)
                expected = det_closed_form(spec)
                actual = determinant_cofactor(build_chain_block(spec))
                if actual != expected:
                    raise LemmaViolationError(
                        "det %s_%d (k=%d, signs=%s) is %d, closed form says %d"
                        % (family, t, k, signs, actual, expected)
                    )
                matrices += 1
    k2 = k * k
    for t in range(3, t_max + 1):
        checks = (
            ("B", det_b(t), (k2 + 1) * det_b(t - 1) - k2 * det_b(t - 2)),
            ("C", det_c(t), k2 * det_b(t - 1) - k2 * det_b(t - 2)),
            ("D", det_d(t), det_b(t - 1) - k2 * det_b(t - 2)),
        )
        for family, lhs, rhs in checks:
            if lhs != rhs:
                raise LemmaViolationError(
                    "recurrence for det %s_%d (k=%d) fails: %d != %d"
                    % (family, t, k, lhs, rhs)
                )
            recurrences += 1
    return RecurrenceReport(
        t_max=t_max, k=k, matrices_checked=matrices, recurrences_checked=recurrences
    )


@dataclass(frozen=True)
class GramPartition:
    """A Gram matrix W = U U^T with a block partition of its indices."""

    factor: IntegerMatrix
    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        seen: set[int] = set()
        for block in self.blocks:
            for i in block:
                if i in seen:
                    raise ValueError("partition blocks are not disjoint")
                seen.add(i)
        if seen != set(range(self.factor.rows)):
            raise ValueError("partition does not cover all indices")

    @property
    def gram(self) -> IntegerMatrix:
        return self.factor.gram()


def hadamard_fischer_check(g: GramPartition):
    """det W <= product of the principal block minors, all sides exact.

    Returns (holds, det W, product).  W is positive semidefinite by
    construction (a Gram matrix), so the inequality is a theorem; a False
    result indicates a bug.
    """
    w = g.gram
    lhs = determinant(w)
    rhs = 1
    for block in g.blocks:
        sub = IntegerMatrix.from_rows(
            [[w.entries[i][j] for j in block] for i in block]
        )
        rhs *= determinant(sub)
    return lhs <= rhs, lhs, rhs


def type3_norm_bound(equation, k: int, deleted_variable: int | None = None):
    """Squared l2 norm of a residual equation's coefficients and its bound.

    Without deletion the bound is min(k^2-1, (k-1)^2+4); with one
    variable deleted it is (k-1)^2+1.  Violations raise
    LemmaViolationError.  The equation must be a residual (type 3) one:
    combined coefficients, not the k-to-1 two-variable pattern.
    """
    terms = list(equation.terms)
    if len(terms) < 2:
        raise ValueError("residual equations have at least two variables")
    mags = sorted(abs(c) for c, _ in terms)
    if len(terms) == 2 and mags == [1, k]:
        raise ValueError("k-to-1 equation is a chain link, not a residual equation")
    if deleted_variable is not None:
        kept = [(c, v) for c, v in terms if v != deleted_variable]
        if len(kept) == len(terms):
            raise ValueError("deleted variable x%d not in equation" % deleted_variable)
        terms = kept
        bound = (k - 1) ** 2 + 1
    else:
        bound = min(k * k - 1, (k - 1) ** 2 + 4)
    norm_sq = sum(c * c for c, _ in terms)
    if norm_sq > bound:
        raise LemmaViolationError(
            "coefficient norm %d exceeds bound %d (k=%d)" % (norm_sq, bound, k)
        )
    return norm_sq, bound


def enumerate_residual_multisets(k: int) -> list[tuple[int, ...]]:
    """All residual-equation coefficient multisets for a given k.

    Nonincreasing tuples of 2..k+1 positive coefficients with total at
    most k+1, excluding the k-to-1 chain pattern {k, 1}.
    """
    out: list[tuple[int, ...]] = []

    def rec(prefix: list[int], remaining: int, cap: int):
        if len(prefix) >= 2:
            out.append(tuple(prefix))
        if len(prefix) == k + 1:
            return
        for c in range(min(cap, remaining), 0, -1):
            prefix.append(c)
            rec(prefix, remaining - c, c)
            prefix.pop()

    for first in range(k + 1, 0, -1):
        rec([first], k + 1 - first, first)
    return [m for m in out if sorted(m) != sorted((k, 1))]


@dataclass(frozen=True)
class CoefficientBoundReport:
    k: int
    multisets_checked: int
    bound: int
    deletion_bound: int
    equality_attained: bool
    deletion_equality_attained: bool


def verify_coefficient_bounds(k: int) -> CoefficientBoundReport:
    """Exhaustively check the residual coefficient norm bounds for one k.

    Every admissible multiset must satisfy sum c^2 <= min(k^2-1,
    (k-1)^2+4), and with any one coefficient deleted the rest must
    satisfy sum c^2 <= (k-1)^2+1.  The stated equality cases must be
    attained.  Violations raise LemmaViolationError.
    """
    if k < 2:
        raise ValueError("k must be >= 2")
    bound = min(k * k - 1, (k - 1) ** 2 + 4)
    deletion_bound = (k - 1) ** 2 + 1
    equality = False
    deletion_equality = False
    multisets = enumerate_residual_multisets(k)
    for m in multisets:
        norm_sq = sum(c * c for c in m)
        if norm_sq > bound:
            raise LemmaViolationError(
                "coefficients %s have norm %d > %d (k=%d)" % (m, norm_sq, bound, k)
            )
        if norm_sq == bound:
            equality = True
        for drop in set(m):
            rest = norm_sq - drop * drop
            if rest > deletion_bound:
                raise LemmaViolationError(
                    "coefficients %s minus %d have norm %d > %d (k=%d)"
                    % (m, drop, rest, deletion_bound, k)
                )
            if rest == deletion_bound:
                deletion_equality = True
    # the known extremal multisets must be present and extremal
    witness = (1, 1, 1) if k == 2 else (k - 1, 2)
    if tuple(sorted(witness, reverse=True)) not in multisets:
        raise LemmaViolationError("extremal multiset %s missing (k=%d)" % (witness, k))
    if sum(c * c for c in witness) != bound:
        raise LemmaViolationError("extremal multiset %s not tight (k=%d)" % (witness, k))
    deletion_witness = (k - 1, 1, 1)
    if sum(c * c for c in deletion_witness[:-1]) != deletion_bound:
        raise LemmaViolationError(
            "deletion witness %s not tight (k=%d)" % (deletion_witness, k)
        )
    if not equality or not deletion_equality:
        raise LemmaViolationError("equality cases not attained (k=%d)" % k)
    return CoefficientBoundReport(
        k=k,
        multisets_checked=len(multisets),
        bound=bound,
        deletion_bound=deletion_bound,
        equality_attained=equality,
        deletion_equality_attained=deletion_equality,
    )


@dataclass(frozen=True)
class ColumnCertificate:
    index: int  # 1-based column
    case: int  # 1 = cuts a chain, 2 = cuts residual rows only, 0 = trivial
    x: Fraction
    det_w: int
    det_u: int
    hf_product: int
    ok: bool

    def to_line(self, bound: int) -> str:
        return "i=%d case=%d x=%s detW=%d bound=%d %s" % (
            self.index,
            self.case,
            format_rational(self.x),
            self.det_w,
            bound,
            "OK" if self.ok else "FAIL",
        )


@dataclass(frozen=True)
class CertificationReport:
    n: int
    k: int
    bound: int  # k^(2(n-1))
    entries: tuple[ColumnCertificate, ...]
    max_abs: Fraction
    sharp: bool

    @property
    def all_ok(self) -> bool:
        return all(e.ok for e in self.entries)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "bound": self.bound,
            "columns": [
                {
                    "i": e.index,
                    "case": e.case,
                    "x": format_rational(e.x),
                    "det_w": e.det_w,
                    "det_u": e.det_u,
                    "hf_product": e.hf_product,
                    "ok": e.ok,
                }
                for e in self.entries
            ],
            "max_abs": format_rational(self.max_abs),
            "sharp": self.sharp,
            "all_ok": self.all_ok,
        }

    def to_text(self) -> str:
        lines = [e.to_line(self.bound) for e in self.entries]
        lines.append(
            "certification: max=%s sharp=%s %s"
            % (
                format_rational(self.max_abs),
                "yes" if self.sharp else "no",
                "OK" if self.all_ok else "FAIL",
            )
        )
        return "\n".join(lines)


def _certify_column(asm, x, det_a: int, i: int) -> ColumnCertificate:
    n, k = asm.n, asm.k
    u = asm.matrix.delete_row_col(0, i)
    det_u = determinant(u)
    blocks = [tuple(r - 1 for r in rows) for rows in asm.chain_rows]
    blocks.extend((r - 1,) for r in asm.type3_rows)
    g = GramPartition(factor=u, blocks=tuple(blocks))
    hf_ok, det_w, hf_product = hadamard_fischer_check(g)
    bound = k ** (2 * (n - 1))
    xi = x[i]
    ok = (
        hf_ok
        and det_w == det_u * det_u
        and abs(xi * det_a) == abs(det_u)  # |det A_i| = |det U_i|
        and xi * xi <= det_w
        and det_w <= bound
    )
    case = 2
    for ci, cols in enumerate(asm.chain_cols):
        if i in cols:
            case = 1
            # the cut chain's principal minor collapses to C_p (+) D_q <= k^(2t)
            t = len(asm.chain_rows[ci])
            block = tuple(r - 1 for r in asm.chain_rows[ci])
            w = g.gram
            sub = IntegerMatrix.from_rows(
                [[w.entries[a][b] for b in block] for a in block]
            )
            ok = ok and determinant(sub) <= k ** (2 * t)
            break
    if case == 2:
        # every residual row containing x_i has its diagonal entry bounded
        for r in asm.type3_rows:
            if asm.matrix.entries[r][i] != 0:
                diag = sum(e * e for c, e in enumerate(asm.matrix.entries[r]) if c != i)
                ok = ok and diag <= (k - 1) ** 2 + 1 <= k * k - 2
    return ColumnCertificate(
        index=i + 1,
        case=case,
        x=xi,
        det_w=det_w,
        det_u=det_u,
        hf_product=hf_product,
        ok=ok,
    )


def certify_solution_bound(asm, x=None, jobs: int = 1) -> CertificationReport:
    """Run the per-column certification x_i^2 <= det W_i <= k^(2(n-1)).

    asm is an assembled square system (unit row first, chain blocks,
    residual rows).  W_i is the Gram matrix of the submatrix U_i obtained
    by deleting the first row and column i.  Case 1 columns cut a chain
    block, case 2 columns cut residual rows only.
    """
    from relmag.systems import solve_assembled

    n, k = asm.n, asm.k
    det_a = determinant(asm.matrix)
    if x is None:
        x, det_a, _ = solve_assembled(asm)
    bound = k ** (2 * (n - 1))
    if n == 1:
        # U_1 is empty; det W_1 = 1 by the empty-product convention
        entries = (
            ColumnCertificate(
                index=1, case=0, x=x[0], det_w=1, det_u=1, hf_product=1,
                ok=x[0] * x[0] <= 1 <= bound,
            ),
        )
    else:
        if jobs > 1:
            with ThreadPoolExecutor(max_workers=jobs) as pool:
                entries = tuple(
                    pool.map(lambda i: _certify_column(asm, x, det_a, i), range(n))
                )
        else:
            entries = tuple(_certify_column(asm, x, det_a, i) for i in range(n))
    max_abs = max(abs(v) for v in x)
    return CertificationReport(
        n=n,
        k=k,
        bound=bound,
        entries=entries,
        max_abs=max_abs,
        sharp=max_abs == k ** (n - 1),
    )
