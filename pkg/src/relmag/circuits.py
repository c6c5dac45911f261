"""Minimal-support null vectors (circuits of the column matroid).

A circuit is a nonzero null vector whose support is minimal under
inclusion.  On its support the column submatrix has rank one less than
the support size, so the vector is unique up to scale and we keep the
canonical primitive integer representative.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from relmag.matrices import IntegerMatrix, primitive_vector, rank, nullspace_basis, _rref

ENUMERATION_LIMIT = 24


class EnumerationTooLarge(ValueError):
    """Refused an exponential enumeration; pass allow_large to override."""


class TrivialNullspaceError(ValueError):
    """The null space contains only the zero vector."""


@dataclass(frozen=True)
class Circuit:
    """support: sorted 0-based column indices; vector: full-length primitive."""

    support: tuple[int, ...]
    vector: tuple[int, ...]

    def restricted(self) -> tuple[int, ...]:
        """The nonzero coordinates, in support order."""
        return tuple(self.vector[j] for j in self.support)

    def to_line(self) -> str:
        """One-line text form with 1-based indices."""
        sup = ",".join(str(j + 1) for j in self.support)
        vec = ", ".join(str(v) for v in self.vector)
        return "I = {%s}; v = (%s)" % (sup, vec)

    def to_dict(self) -> dict:
        return {
            "support": [j + 1 for j in self.support],
            "vector": list(self.vector),
        }


def _support(x) -> tuple[int, ...]:
    return tuple(j for j, v in enumerate(x) if v != 0)


def is_elementary(a: IntegerMatrix, x) -> bool:
    """True iff x is a null vector of minimal support.

    Decided by the rank test: the column submatrix on supp(x) must have
    rank |supp(x)| - 1, which makes its null space the single ray through
    x restricted to its support.
    """
    x = [Fraction(v) for v in x]
    if len(x) != a.cols:
        raise ValueError("vector length mismatch")
    if all(v == 0 for v in x):
        raise ValueError("zero vector is not elementary")
    if any(v != 0 for v in a.apply(x)):
        raise ValueError("vector is not in the null space")
    sup = _support(x)
    sub = a.column_submatrix(sup)
    return rank(sub) == len(sup) - 1


def _circuit_from_ray(vec) -> Circuit:
    prim = primitive_vector(vec)
    return Circuit(support=_support(prim), vector=prim)


def enumerate_circuits(a: IntegerMatrix, allow_large: bool = False) -> list[Circuit]:
    """All circuits of A, canonical form, sorted lexicographically by support.

    Candidate supports are explored by increasing cardinality inside the
    support of the null space; a support qualifies when the null vectors
    confined to it form a single ray touching every index.  Supersets of a
    found support are pruned (they cannot be minimal).
    """
    if a.cols > ENUMERATION_LIMIT and not allow_large:
        raise EnumerationTooLarge(
            "circuit enumeration over %d columns is exponential; "
            "pass allow_large=True to force it" % a.cols
        )
    basis = nullspace_basis(a)
    d = len(basis)
    if d == 0:
        return []
    if d == 1:
        return [_circuit_from_ray(basis[0])]

    cols = sorted(set(j for v in basis for j in _support(v)))
    found: list[Circuit] = []
    found_masks: list[int] = []
    for size in range(1, len(cols) + 1):
        for idx in combinations(cols, size):
            mask = 0
            for j in idx:
                mask |= 1 << j
            if any(fm & mask == fm for fm in found_masks):
                continue
            inside = set(idx)
            # coefficients c with sum_l c_l * basis_l vanishing outside idx
            outside_rows = [
                [Fraction(v[j]) for v in basis] for j in cols if j not in inside
            ]
            if outside_rows:
                pivots = _rref(outside_rows)
                freedom = d - len(pivots)
            else:
                pivots = []
                freedom = d
            if freedom != 1:
                continue
            free = [c for c in range(d) if c not in pivots]
            coeff = [Fraction(0)] * d
            coeff[free[0]] = Fraction(1)
            for r, pc in enumerate(pivots):
                coeff[pc] = -outside_rows[r][free[0]]
            vec = [
                sum(coeff[l] * basis[l][j] for l in range(d)) for j in range(a.cols)
            ]
            if _support(vec) != idx:
                continue
            circ = _circuit_from_ray(vec)
            found.append(circ)
            found_masks.append(mask)
    found.sort(key=lambda c: c.support)
    return found


def elementary_basis(a: IntegerMatrix, allow_large: bool = False) -> list[Circuit]:
    """A linearly independent spanning subset of the circuits.

    Greedy over the enumeration order; size is n - rank(A).
    """
    target = a.cols - rank(a)
    if target == 0:
        return []
    chosen: list[Circuit] = []
    rows: list[list[int]] = []
    for circ in enumerate_circuits(a, allow_large=allow_large):
        cand = rows + [list(circ.vector)]
        if rank(IntegerMatrix.from_rows(cand)) > len(rows):
            chosen.append(circ)
            rows = cand
            if len(chosen) == target:
                break
    assert len(chosen) == target, "circuits failed to span the null space"
    return chosen


def min_support_size(a: IntegerMatrix, allow_large: bool = False) -> int:
    """Least number of nonzero coordinates over nonzero null vectors."""
    circs = enumerate_circuits(a, allow_large=allow_large)
    if not circs:
        raise TrivialNullspaceError("null space is trivial")
    return min(len(c.support) for c in circs)
