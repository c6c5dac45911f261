"""Relative magnitudes and their certified matrix-level bounds.

The relative magnitude of a nonzero vector is the ratio of its largest
absolute coordinate to its smallest nonzero absolute coordinate.  For a
matrix it is the minimum over nonzero null vectors, 0 by convention when
the null space is trivial.  The certificate records the circuit-based
upper bound together with the per-clause verdicts of the sharp bound
(norm - 1)^rank and its min-support refinement.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from relmag.circuits import Circuit, enumerate_circuits, min_support_size
from relmag.matrices import IntegerMatrix, format_rational, infinity_norm, rank


class PropositionViolation(AssertionError):
    """A proved statement failed on a concrete instance; must never fire."""


def omega_vector(x) -> Fraction:
    """max |x_i| over all coordinates / min |x_i| over nonzero ones."""
    vals = [abs(Fraction(v)) for v in x]
    nonzero = [v for v in vals if v != 0]
    if not nonzero:
        raise ValueError("relative magnitude of the zero vector is undefined")
    return max(vals) / min(nonzero)


@dataclass(frozen=True)
class MagnitudeCertificate:
    """Upper bound on the matrix relative magnitude with verification data.

    omega_upper is exact when the null space is at most one-dimensional
    (then it is the unique circuit ray); otherwise it is the minimum over
    circuits, an upper bound only.  theorem_bound and support_bound are
    defined for norm >= 3.
    """

    omega_upper: Fraction
    exact: bool
    witness: Circuit | None
    norm: int
    rank: int
    nullity: int
    min_support: int | None
    theorem_bound: int | None
    support_bound: int | None
    sharp: bool
    checks: tuple[tuple[str, bool], ...]

    @property
    def verdict(self) -> bool:
        return all(ok for _, ok in self.checks)

    def to_dict(self) -> dict:
        return {
            "omega_upper": format_rational(self.omega_upper),
            "exact": self.exact,
            "witness": self.witness.to_dict() if self.witness else None,
            "norm": self.norm,
            "rank": self.rank,
            "nullity": self.nullity,
            "min_support": self.min_support,
            "theorem_bound": self.theorem_bound,
            "support_bound": self.support_bound,
            "sharp": self.sharp,
            "checks": {name: ok for name, ok in self.checks},
            "verdict": self.verdict,
        }

    def to_text(self) -> str:
        lines = [
            "norm=%d" % self.norm,
            "rank=%d" % self.rank,
            "nullity=%d" % self.nullity,
            "t=%s" % (self.min_support if self.min_support is not None else "-"),
            "omega_upper=%s" % format_rational(self.omega_upper),
            "exact=%s" % ("yes" if self.exact else "upper-bound-only"),
            "theorem_bound=%s" % (self.theorem_bound if self.theorem_bound is not None else "-"),
            "support_bound=%s" % (self.support_bound if self.support_bound is not None else "-"),
            "sharp=%s" % ("yes" if self.sharp else "no"),
        ]
        if self.witness is not None:
            lines.append("witness: %s" % self.witness.to_line())
        for name, ok in self.checks:
            lines.append("check %s: %s" % (name, "pass" if ok else "FAIL"))
        lines.append("verdict=%s" % ("pass" if self.verdict else "FAIL"))
        return "\n".join(lines)


def omega_matrix_upper(a: IntegerMatrix, allow_large: bool = False) -> MagnitudeCertificate:
    """Certified upper bound on the matrix relative magnitude.

    Minimizes the vector magnitude over all circuits; ties are broken by
    lexicographic support (the enumeration order).  Exactly the matrix
    value whenever the null space is a single ray.
    """
    norm = infinity_norm(a)
    rk = rank(a)
    nullity = a.cols - rk
    if nullity == 0:
        return MagnitudeCertificate(
            omega_upper=Fraction(0),
            exact=True,
            witness=None,
            norm=norm,
            rank=rk,
            nullity=0,
            min_support=None,
            theorem_bound=(norm - 1) ** rk if norm >= 3 else None,
            support_bound=None,
            sharp=False,
            checks=(("zero_iff_full_rank", True),),
        )
    circs = enumerate_circuits(a, allow_large=allow_large)
    omegas = [omega_vector(c.restricted()) for c in circs]
    best = min(omegas)
    witness = circs[omegas.index(best)]
    t = min(len(c.support) for c in circs)
    checks = [("omega_ge_1", best >= 1)]
    theorem_bound = support_bound = None
    if norm >= 3:
        theorem_bound = (norm - 1) ** rk
        support_bound = (norm - 1) ** (t - 1)
        checks.append(("omega_le_support_bound", best <= support_bound))
        checks.append(("support_bound_le_theorem_bound", support_bound <= theorem_bound))
        checks.append(
            (
                "every_circuit_le_support_power",
                all(
                    w <= (norm - 1) ** (len(c.support) - 1)
                    for c, w in zip(circs, omegas)
                ),
            )
        )
    else:
        checks.append(("small_norm_all_circuits_unit", all(w == 1 for w in omegas)))
    sharp = theorem_bound is not None and best == theorem_bound
    return MagnitudeCertificate(
        omega_upper=best,
        exact=nullity == 1,
        witness=witness,
        norm=norm,
        rank=rk,
        nullity=nullity,
        min_support=t,
        theorem_bound=theorem_bound,
        support_bound=support_bound,
        sharp=sharp,
        checks=tuple(checks),
    )


@dataclass(frozen=True)
class SmallNormVerdict:
    omega: Fraction  # 0 or 1
    circuits_checked: int

    def to_dict(self) -> dict:
        return {
            "omega": format_rational(self.omega),
            "circuits_checked": self.circuits_checked,
        }


def classify_small_norm(a: IntegerMatrix, allow_large: bool = False) -> SmallNormVerdict:
    """Verify the norm <= 2 dichotomy: matrix magnitude is 0 or 1.

    Checks every circuit has unit magnitude ratio and raises
    PropositionViolation otherwise (which would falsify a proved fact).
    """
    norm = infinity_norm(a)
    if norm >= 3:
        raise ValueError("classify_small_norm requires infinity norm <= 2, got %d" % norm)
    circs = enumerate_circuits(a, allow_large=allow_large)
    for c in circs:
        w = omega_vector(c.restricted())
        if w != 1:
            raise PropositionViolation(
                "circuit %s has magnitude ratio %s on a norm-%d matrix"
                % (c.to_line(), w, norm)
            )
    omega = Fraction(0) if not circs else Fraction(1)
    return SmallNormVerdict(omega=omega, circuits_checked=len(circs))
