"""Unit-coefficient constraint systems: parsing, reduction, solving.

Systems consist of unit equations ``x_i = +-1`` and homogeneous signed
sums of unit-coefficient terms (at most ``k + 1`` terms per equation).
A solvable system is reduced, preserving the maximum coordinate
magnitude, to a square system with a unique all-nonzero solution whose
coordinates have pairwise distinct absolute values.  The two-variable
equations ``k x_i = +-x_j`` then split into disjoint maximal chains and
the assembled matrix is solved exactly, certifying ``|x_i| <= k^(n-1)``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from relmag.matrices import (
    IntegerMatrix,
    SingularMatrixError,
    _rref,
    cramer_solve,
    determinant,
    format_rational,
    solve_unique,
)


class SystemError_(ValueError):
    """Base for constraint-system errors."""


class ParseError(SystemError_):
    def __init__(self, message: str, line: int, col: int):
        super().__init__("line %d, col %d: %s" % (line, col, message))
        self.line = line
        self.col = col


class UnsolvableSystemError(SystemError_):
    """The input system has no solution."""


class AllHomogeneousError(SystemError_):
    """No unit equation present; the zero vector solves the system."""


class ChainIntersectionError(SystemError_):
    """Two maximal chains share a variable (signals a reduction bug)."""


class ReductionError(SystemError_):
    """A reduction postcondition failed (signals an internal bug)."""


class BoundViolationError(SystemError_):
    """A certified inequality failed; would falsify a proved theorem."""


@dataclass(frozen=True)
class UnitEquation:
    """x_var = sign, with sign in {+1, -1}."""

    var: int
    sign: int

    def to_text(self) -> str:
        return "x%d=%d" % (self.var, self.sign)


@dataclass(frozen=True)
class SumEquation:
    """Homogeneous equation sum of coeff * x_var = 0.

    terms are (signed coefficient, variable) pairs.  Parsed input may
    repeat a variable (raw unit terms); reduced systems combine them.
    """

    terms: tuple[tuple[int, int], ...]

    def weight(self) -> int:
        """Total number of unit terms (sum of absolute coefficients)."""
        return sum(abs(c) for c, _ in self.terms)

    def combined(self) -> dict[int, int]:
        d: dict[int, int] = {}
        for c, v in self.terms:
            d[v] = d.get(v, 0) + c
        return {v: c for v, c in d.items() if c != 0}

    def to_text(self) -> str:
        """Unit-coefficient sum form, e.g. ``x1+x1-x2=0``."""
        parts = []
        for c, v in self.terms:
            sign = "+" if c > 0 else "-"
            parts.extend([sign + "x%d" % v] * abs(c))
        text = "".join(parts)
        if text.startswith("+"):
            text = text[1:]
        return text + "=0"


Equation = UnitEquation | SumEquation


@dataclass(frozen=True)
class System:
    k: int
    nvars: int
    equations: tuple[Equation, ...]

    def __post_init__(self):
        if self.k < 2:
            raise SystemError_("k must be >= 2, got %d" % self.k)
        if self.nvars < 1:
            raise SystemError_("system needs at least one variable")
        for eq in self.equations:
            if isinstance(eq, UnitEquation):
                if eq.sign not in (1, -1):
                    raise SystemError_("unit equation sign must be +-1")
                if not 1 <= eq.var <= self.nvars:
                    raise SystemError_("variable x%d out of range" % eq.var)
            else:
                if not eq.terms:
                    raise SystemError_("empty homogeneous equation")
                for c, v in eq.terms:
                    if c == 0:
                        raise SystemError_("zero coefficient")
                    if not 1 <= v <= self.nvars:
                        raise SystemError_("variable x%d out of range" % v)
                if eq.weight() > self.k + 1:
                    raise SystemError_(
                        "equation %s has %d unit terms, limit is k+1 = %d"
                        % (eq.to_text(), eq.weight(), self.k + 1)
                    )

    def unit_equations(self) -> list[UnitEquation]:
        return [e for e in self.equations if isinstance(e, UnitEquation)]

    def sum_equations(self) -> list[SumEquation]:
        return [e for e in self.equations if isinstance(e, SumEquation)]

    def to_text(self) -> str:
        lines = ["k=%d" % self.k]
        lines.extend(eq.to_text() for eq in self.equations)
        return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# parsing

_K_HEADER = re.compile(r"k\s*=\s*(\d+)\s*$")
_COEFVAR = re.compile(r"(\d+)\s*\*?\s*x\s*(\d+)")
_VAR = re.compile(r"x\s*(\d+)")
_NUM = re.compile(r"(\d+)")


def _parse_side(s: str, line_no: int, col_base: int):
    """Parse one side of an equation into (constant, [(coeff, var), ...])."""
    const = 0
    terms: list[tuple[int, int]] = []
    pos = 0
    pending: int | None = None
    seen_term = False
    while pos < len(s):
        if s[pos].isspace():
            pos += 1
            continue
        ch = s[pos]
        if ch in "+-":
            if pending is not None:
                raise ParseError("unexpected sign", line_no, col_base + pos)
            pending = 1 if ch == "+" else -1
            pos += 1
            continue
        if seen_term and pending is None:
            raise ParseError("expected '+' or '-'", line_no, col_base + pos)
        sign = pending if pending is not None else 1
        m = _COEFVAR.match(s, pos)
        if m:
            coeff, var = int(m.group(1)), int(m.group(2))
            if coeff == 0:
                raise ParseError("zero coefficient", line_no, col_base + pos)
            terms.append((sign * coeff, var))
        else:
            m = _VAR.match(s, pos)
            if m:
                terms.append((sign, int(m.group(1))))
            else:
                m = _NUM.match(s, pos)
                if m:
                    const += sign * int(m.group(1))
                else:
                    raise ParseError("expected term", line_no, col_base + pos)
        pos = m.end()
        pending = None
        seen_term = True
    if pending is not None:
        raise ParseError("dangling sign", line_no, col_base + len(s))
    if not seen_term:
        raise ParseError("empty expression", line_no, col_base)
    return const, terms


def parse_system(text: str) -> System:
    """Parse the system DSL.

    Grammar: optional ``k=<int>`` header (default 2); statements separated
    by ';' or newlines; equations ``xI = 1``, ``xI = -1``,
    ``+-xI +- xJ ... = 0`` and the sugar ``xI + xJ = xK``.  Coefficients
    like ``3x1`` abbreviate repeated unit terms.
    """
    text = text.replace("−", "-")
    k: int | None = None
    equations: list[Equation] = []
    statement_no = 0
    for line_no, line in enumerate(text.splitlines(), start=1):
        offset = 0
        for chunk in line.split("#", 1)[0].split(";"):
            stripped = chunk.strip()
            if stripped:
                statement_no += 1
                col = offset + chunk.index(stripped[0])
                m = _K_HEADER.match(stripped)
                if m:
                    if statement_no != 1:
                        raise ParseError("k header must be the first statement", line_no, col)
                    k = int(m.group(1))
                    if k < 2:
                        raise ParseError("k must be >= 2", line_no, col)
                else:
                    equations.append(_parse_equation(stripped, line_no, col))
            offset += len(chunk) + 1
    if k is None:
        k = 2
    if not equations:
        raise ParseError("no equations", 1, 0)
    maxvar = max(
        (e.var if isinstance(e, UnitEquation) else max(v for _, v in e.terms))
        for e in equations
    )
    for e in equations:
        vars_ = [e.var] if isinstance(e, UnitEquation) else [v for _, v in e.terms]
        if min(vars_) < 1:
            raise ParseError("variable indices start at 1", 1, 0)
    try:
        return System(k=k, nvars=maxvar, equations=tuple(equations))
    except SystemError_ as exc:
        raise ParseError(str(exc), 1, 0) from exc


def _parse_equation(s: str, line_no: int, col_base: int) -> Equation:
    sides = s.split("=")
    if len(sides) != 2:
        raise ParseError("equation needs exactly one '='", line_no, col_base)
    lconst, lterms = _parse_side(sides[0], line_no, col_base)
    rconst, rterms = _parse_side(sides[1], line_no, col_base + len(sides[0]) + 1)
    const = lconst - rconst
    terms = lterms + [(-c, v) for c, v in rterms]
    if not terms:
        raise ParseError("equation has no variables", line_no, col_base)
    if const == 0:
        return SumEquation(terms=tuple(terms))
    if len(terms) == 1 and abs(terms[0][0]) == 1 and abs(const) == 1:
        coeff, var = terms[0]
        return UnitEquation(var=var, sign=-const * coeff)
    raise ParseError("right-hand side must be 0, 1 or -1", line_no, col_base)


# ---------------------------------------------------------------------------
# reduction

@dataclass(frozen=True)
class StepRecord:
    step: int
    detail: str


@dataclass(frozen=True)
class ReductionTrace:
    """Auditable record of the reduction; supports exact reconstruction."""

    original_nvars: int
    kept_unit: tuple[int, int]
    converted_units: tuple[tuple[int, int], ...]
    zeroed_free: tuple[int, ...]
    zeroed_solved: tuple[int, ...]
    merges: tuple[tuple[int, int, int], ...]  # (removed j, sign, kept i), in order
    dropped_dependent: int
    unit_sign_flipped: bool
    rename: dict[int, int]  # surviving original variable -> reduced index
    reduced_solution: tuple[Fraction, ...]
    records: tuple[StepRecord, ...]

    def reconstruct(self) -> tuple[Fraction, ...]:
        """Map the reduced solution back to a full original solution."""
        inverse = {new: old for old, new in self.rename.items()}
        vals: dict[int, Fraction] = {}
        for idx, val in enumerate(self.reduced_solution, start=1):
            vals[inverse[idx]] = val
        if self.unit_sign_flipped:
            u = self.kept_unit[0]
            vals[u] = -vals[u]
        for j, sgn, keep in reversed(self.merges):
            vals[j] = sgn * vals[keep]
        for v in self.zeroed_solved:
            vals[v] = Fraction(0)
        for v in self.zeroed_free:
            vals[v] = Fraction(0)
        return tuple(vals[i] for i in range(1, self.original_nvars + 1))


def check_solution(system: System, x) -> bool:
    """Exact check of a candidate solution (1-based values in x)."""
    for eq in system.equations:
        if isinstance(eq, UnitEquation):
            if x[eq.var - 1] != eq.sign:
                return False
        else:
            if sum(c * x[v - 1] for c, v in eq.terms) != 0:
                return False
    return True


def _consistency_check(system: System) -> None:
    """Raise UnsolvableSystemError unless the system has a solution."""
    n = system.nvars
    rows = []
    for eq in system.equations:
        row = [Fraction(0)] * (n + 1)
        if isinstance(eq, UnitEquation):
            row[eq.var - 1] = Fraction(1)
            row[n] = Fraction(eq.sign)
        else:
            for c, v in eq.terms:
                row[v - 1] += Fraction(c)
        rows.append(row)
    pivots = _rref(rows)
    if n in pivots:
        raise UnsolvableSystemError("system is unsolvable")


def _solve_with_free(unit: tuple[int, int], eqs: list[dict[int, int]], nvars: int):
    """RREF solution of unit + homogeneous equations over variables 1..nvars.

    Free variables are the non-pivot columns in ascending column order
    (the lexicographically earliest pivot set).  Returns the solution
    values of the pivot variables with all free variables set to zero,
    plus the free variable list.
    """
    cols = list(range(1, nvars + 1))
    colidx = {v: i for i, v in enumerate(cols)}
    n = len(cols)
    uvar, usign = unit
    rows = [[Fraction(0)] * (n + 1)]
    rows[0][colidx[uvar]] = Fraction(1)
    rows[0][n] = Fraction(usign)
    for d in eqs:
        row = [Fraction(0)] * (n + 1)
        for v, c in d.items():
            row[colidx[v]] = Fraction(c)
        rows.append(row)
    pivots = _rref(rows)
    if n in pivots:
        raise UnsolvableSystemError("system is unsolvable")
    free = [cols[c] for c in range(n) if c not in pivots]
    values = {cols[pc]: rows[r][n] for r, pc in enumerate(pivots)}
    return values, free


def _try_add_row(leads: dict[int, list[Fraction]], row: list[Fraction]) -> bool:
    """Incremental independence test; inserts the reduced row if new."""
    row = row[:]
    while True:
        lead = next((i for i, x in enumerate(row) if x != 0), None)
        if lead is None:
            return False
        if lead not in leads:
            break
        f = row[lead]
        basis_row = leads[lead]
        row = [x - f * y for x, y in zip(row, basis_row)]
    inv = row[lead]
    leads[lead] = [x / inv for x in row]
    return True


def reduce_system(system: System) -> tuple[System, ReductionTrace]:
    """Reduce to an equivalent square system with unique nonzero solution.

    Steps: fold extra unit equations into differences; zero out free
    variables; drop zero-valued variables; merge variables equal up to
    sign; cancel opposite terms; keep an independent equation set; absorb
    the unit sign.  The reduced system has first equation x_1 = 1, every
    solution coordinate nonzero, pairwise distinct absolute values, and
    every homogeneous equation with at least two variables.  The maximum
    absolute coordinate value is preserved.
    """
    k = system.k
    units = system.unit_equations()
    if not units:
        raise AllHomogeneousError("no unit equation; the zero vector solves the system")
    _consistency_check(system)
    records: list[StepRecord] = []

    # step 1: keep one unit equation, turn the others into differences
    uvar, usign = units[0].var, units[0].sign
    converted: list[tuple[int, int]] = []
    eqs: list[dict[int, int]] = []
    for ue in units[1:]:
        if ue.var == uvar:
            continue  # duplicate; contradiction already excluded above
        eqs.append({ue.var: 1, uvar: -ue.sign * usign})
        converted.append((ue.var, ue.sign))
    if converted:
        records.append(
            StepRecord(1, "converted unit equations on %s to differences with x%d"
                       % (sorted(v for v, _ in converted), uvar))
        )
    for se in system.sum_equations():
        d = se.combined()
        if sum(abs(c) for c in d.values()) < se.weight():
            records.append(StepRecord(5, "cancelled opposite terms in %s" % se.to_text()))
        if d:
            eqs.append(d)

    # step 2: zero out the free variables
    values, free = _solve_with_free((uvar, usign), eqs, system.nvars)
    zeroed_free = tuple(sorted(free))
    if zeroed_free:
        for d in eqs:
            for v in zeroed_free:
                d.pop(v, None)
        records.append(StepRecord(2, "fixed free variables %s to zero" % list(zeroed_free)))
    active = set(values)

    # step 3: drop variables whose unique value is zero
    zeroed_solved = tuple(sorted(v for v in active if values[v] == 0))
    if zeroed_solved:
        for d in eqs:
            for v in zeroed_solved:
                d.pop(v, None)
        for v in zeroed_solved:
            active.discard(v)
            del values[v]
        records.append(StepRecord(3, "removed zero-valued variables %s" % list(zeroed_solved)))
    eqs = [d for d in eqs if d]
    if any(len(d) == 1 for d in eqs):
        raise ReductionError("single-variable homogeneous equation survived step 3")

    # step 4: merge variables equal up to sign (keep the smallest index,
    # preferring the unit variable), cancelling as we substitute (step 5)
    groups: dict[Fraction, list[int]] = {}
    for v in sorted(active):
        groups.setdefault(abs(values[v]), []).append(v)
    merges: list[tuple[int, int, int]] = []
    for key in sorted(groups):
        grp = groups[key]
        if len(grp) < 2:
            continue
        keep = uvar if uvar in grp else min(grp)
        for j in grp:
            if j == keep:
                continue
            sgn = 1 if values[j] == values[keep] else -1
            merges.append((j, sgn, keep))
            for d in eqs:
                if j in d:
                    c = d.pop(j)
                    nc = d.get(keep, 0) + sgn * c
                    if nc == 0:
                        d.pop(keep, None)
                    else:
                        d[keep] = nc
            active.discard(j)
            del values[j]
    if merges:
        records.append(StepRecord(4, "merged sign-equal variables: %s"
                                  % ["x%d=%+dx%d" % (j, s, i) for j, s, i in merges]))
    eqs = [d for d in eqs if d]
    if any(len(d) == 1 for d in eqs):
        raise ReductionError("single-variable homogeneous equation survived step 4")
    for d in eqs:
        if sum(abs(c) for c in d.values()) > k + 1:
            raise ReductionError("coefficient weight exceeded k+1 after merging")

    # select an independent equation set: unit row + n-1 homogeneous rows
    n = len(active)
    cols = sorted(active)
    colidx = {v: i for i, v in enumerate(cols)}
    leads: dict[int, list[Fraction]] = {}
    unit_row = [Fraction(0)] * n
    unit_row[colidx[uvar]] = Fraction(1)
    _try_add_row(leads, unit_row)
    selected: list[dict[int, int]] = []
    dropped = 0
    for d in eqs:
        row = [Fraction(0)] * n
        for v, c in d.items():
            row[colidx[v]] = Fraction(c)
        if len(selected) < n - 1 and _try_add_row(leads, row):
            selected.append(d)
        else:
            dropped += 1
    if len(selected) != n - 1:
        raise ReductionError("could not select %d independent equations" % (n - 1))
    if dropped:
        records.append(StepRecord(2, "dropped %d dependent equations" % dropped))

    # step 6 (sign absorption): make the unit equation x = +1
    flipped = usign == -1
    if flipped:
        for d in selected:
            if uvar in d:
                d[uvar] = -d[uvar]
        values[uvar] = Fraction(1)
        records.append(StepRecord(6, "replaced x%d by -x%d to absorb the unit sign" % (uvar, uvar)))

    # final rename: unit variable first, the rest ascending
    others = sorted(v for v in active if v != uvar)
    rename = {uvar: 1}
    for i, v in enumerate(others, start=2):
        rename[v] = i
    reduced_solution = [Fraction(0)] * n
    for v in active:
        reduced_solution[rename[v] - 1] = values[v]
    equations: list[Equation] = [UnitEquation(var=1, sign=1)]
    for d in selected:
        terms = tuple(sorted(((c, rename[v]) for v, c in d.items()), key=lambda t: t[1]))
        equations.append(SumEquation(terms=terms))
    reduced = System(k=k, nvars=n, equations=tuple(equations))
    trace = ReductionTrace(
        original_nvars=system.nvars,
        kept_unit=(uvar, usign),
        converted_units=tuple(converted),
        zeroed_free=zeroed_free,
        zeroed_solved=zeroed_solved,
        merges=tuple(merges),
        dropped_dependent=dropped,
        unit_sign_flipped=flipped,
        rename=rename,
        reduced_solution=tuple(reduced_solution),
        records=tuple(records),
    )
    _check_reduced(reduced, trace)
    return reduced, trace


def _check_reduced(reduced: System, trace: ReductionTrace) -> None:
    """Machine-check the reduced-system postconditions."""
    x = trace.reduced_solution
    if not check_solution(reduced, x):
        raise ReductionError("reduced solution does not satisfy the reduced system")
    if any(v == 0 for v in x):
        raise ReductionError("reduced solution has a zero coordinate")
    absvals = [abs(v) for v in x]
    if len(set(absvals)) != len(absvals):
        raise ReductionError("reduced solution has coincident absolute values")
    first = reduced.equations[0]
    if not (isinstance(first, UnitEquation) and first.var == 1 and first.sign == 1):
        raise ReductionError("reduced system does not start with x1 = 1")
    for eq in reduced.equations[1:]:
        if not isinstance(eq, SumEquation) or len(eq.terms) < 2:
            raise ReductionError("reduced homogeneous equation with fewer than 2 variables")
        vars_ = [v for _, v in eq.terms]
        if len(set(vars_)) != len(vars_):
            raise ReductionError("duplicate variable in reduced equation")


# ---------------------------------------------------------------------------
# chains and assembly

@dataclass(frozen=True)
class Chain:
    """Maximal sequence of k x_next = +-x_prev links, head to tail."""

    variables: tuple[int, ...]  # head first
    equations: tuple[int, ...]  # indices into system.equations, per link

    @property
    def length(self) -> int:
        return len(self.variables)


@dataclass(frozen=True)
class ChainDecomposition:
    chains: tuple[Chain, ...]
    type2: tuple[int, ...]
    type3: tuple[int, ...]
    unit_index: int


def chain_decompose(system: System) -> ChainDecomposition:
    """Partition the two-variable k-to-1 equations into maximal chains.

    Requires a reduced system.  An equation k x_b = +-x_a is a directed
    link a -> b; distinct maximal chains cannot share a variable, and a
    shared variable or a cycle signals a reduction bug.
    """
    k = system.k
    unit_index = next(
        i for i, e in enumerate(system.equations) if isinstance(e, UnitEquation)
    )
    nxt: dict[int, tuple[int, int]] = {}  # a -> (b, equation index)
    incoming: set[int] = set()
    type2 = []
    type3 = []
    for i, eq in enumerate(system.equations):
        if isinstance(eq, UnitEquation):
            continue
        mags = sorted(abs(c) for c, _ in eq.terms)
        if len(eq.terms) == 2 and mags == [1, k]:
            type2.append(i)
            (c1, v1), (c2, v2) = eq.terms
            if abs(c1) == k:
                b, a = v1, v2
            else:
                b, a = v2, v1
            if a in nxt:
                raise ChainIntersectionError("variable x%d heads two links" % a)
            if b in incoming:
                raise ChainIntersectionError("variable x%d tails two links" % b)
            nxt[a] = (b, i)
            incoming.add(b)
        else:
            type3.append(i)
    chain_vars = set(nxt) | incoming
    heads = sorted(v for v in chain_vars if v not in incoming)
    chains = []
    visited: set[int] = set()
    for h in heads:
        vars_ = [h]
        eqidx = []
        v = h
        while v in nxt:
            b, i = nxt[v]
            if b in visited or b in vars_:
                raise ChainIntersectionError("chain cycle at x%d" % b)
            vars_.append(b)
            eqidx.append(i)
            v = b
        visited.update(vars_)
        chains.append(Chain(variables=tuple(vars_), equations=tuple(eqidx)))
    if visited != chain_vars:
        raise ChainIntersectionError("cyclic two-variable equations detected")
    r = len(chains)
    if r >= 1 and len(type3) < r - 1:
        raise ReductionError("fewer than r-1 residual equations for %d chains" % r)
    return ChainDecomposition(
        chains=tuple(chains),
        type2=tuple(type2),
        type3=tuple(type3),
        unit_index=unit_index,
    )


@dataclass(frozen=True)
class Assembled:
    """Square matrix form A x = e_1 with the block layout on record."""

    matrix: IntegerMatrix
    k: int
    n: int
    column_of: dict[int, int]  # reduced variable -> 0-based column
    chain_cols: tuple[tuple[int, ...], ...]
    chain_rows: tuple[tuple[int, ...], ...]  # 0-based row indices in matrix
    type3_rows: tuple[int, ...]
    unit_col: int

    def variable_of_column(self, col: int) -> int:
        for v, c in self.column_of.items():
            if c == col:
                return v
        raise KeyError(col)


def assemble(system: System, decomp: ChainDecomposition) -> Assembled:
    """Build the n x n matrix: unit row, chain blocks, residual rows.

    Variables are reordered so each chain occupies consecutive columns
    (tail first), making every chain block a t x (t+1) band with k on the
    diagonal and +-1 beside it.
    """
    k = system.k
    n = system.nvars
    pos: dict[int, int] = {}
    p = 0
    chain_cols = []
    for chain in decomp.chains:
        for v in reversed(chain.variables):
            pos[v] = p
            p += 1
        chain_cols.append(tuple(range(p - chain.length, p)))
    for v in range(1, n + 1):
        if v not in pos:
            pos[v] = p
            p += 1

    rows: list[list[int]] = []
    unit_col = pos[1]
    row0 = [0] * n
    row0[unit_col] = 1
    rows.append(row0)
    chain_rows = []
    for chain in decomp.chains:
        start = len(rows)
        for eqi in reversed(chain.equations):
            eq = system.equations[eqi]
            (c1, v1), (c2, v2) = eq.terms
            if abs(c1) == k:
                cb, b, ca, a = c1, v1, c2, v2
            else:
                cb, b, ca, a = c2, v2, c1, v1
            s = 1 if cb > 0 else -1
            row = [0] * n
            row[pos[b]] = k
            row[pos[a]] = s * ca
            if pos[a] != pos[b] + 1:
                raise ReductionError("chain columns are not consecutive")
            rows.append(row)
        chain_rows.append(tuple(range(start, len(rows))))
    type3_rows = []
    for eqi in decomp.type3:
        eq = system.equations[eqi]
        row = [0] * n
        for c, v in eq.terms:
            row[pos[v]] = c
        type3_rows.append(len(rows))
        rows.append(row)
    if len(rows) != n:
        raise ReductionError("assembled matrix is not square (%d rows, %d cols)" % (len(rows), n))
    return Assembled(
        matrix=IntegerMatrix.from_rows(rows),
        k=k,
        n=n,
        column_of=pos,
        chain_cols=tuple(chain_cols),
        chain_rows=tuple(chain_rows),
        type3_rows=tuple(type3_rows),
        unit_col=unit_col,
    )


_CRAMER_CROSSCHECK_LIMIT = 10


def solve_assembled(asm: Assembled):
    """Solve A x = e_1 exactly; returns (x, det A, per-column det A_i).

    det A_i is the Cramer numerator (column i replaced by e_1); for small
    systems the explicit Cramer solution is computed and compared.
    """
    n = asm.n
    e1 = [1] + [0] * (n - 1)
    det_a = determinant(asm.matrix)
    if det_a == 0:
        raise ReductionError("assembled matrix is singular")
    try:
        x = solve_unique(asm.matrix, e1)
    except SingularMatrixError as exc:
        raise ReductionError("assembled matrix is singular") from exc
    if n <= _CRAMER_CROSSCHECK_LIMIT:
        if cramer_solve(asm.matrix, e1) != x:
            raise ReductionError("Cramer and elimination solutions disagree")
    det_ai = []
    for xi in x:
        num = xi * det_a
        if num.denominator != 1:
            raise ReductionError("non-integer Cramer numerator")
        det_ai.append(num.numerator)
    return x, det_a, tuple(det_ai)


# ---------------------------------------------------------------------------
# end-to-end solve with bound report

@dataclass(frozen=True)
class SolveReport:
    k: int
    n: int  # reduced system size
    bound: int  # k^(n-1)
    det_a: int
    det_ai: tuple[int, ...]
    max_abs: Fraction
    sharp: bool
    bound_ok: bool
    solution: tuple[Fraction, ...]  # original variables, 1-based order
    reduced_solution: tuple[Fraction, ...]
    trace: ReductionTrace | None
    certification: object | None  # detbounds.CertificationReport
    trivial: bool = False

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "n": self.n,
            "bound": self.bound,
            "det_a": self.det_a,
            "max_abs": format_rational(self.max_abs),
            "sharp": self.sharp,
            "bound_ok": self.bound_ok,
            "trivial": self.trivial,
            "solution": {
                "x%d" % (i + 1): format_rational(v) for i, v in enumerate(self.solution)
            },
            "certification": self.certification.to_dict() if self.certification else None,
        }

    def to_text(self) -> str:
        sol = ", ".join(
            "x%d=%s" % (i + 1, format_rational(v)) for i, v in enumerate(self.solution)
        )
        lines = [
            "solution: %s" % sol,
            "n=%d k=%d" % (self.n, self.k),
            "max=%s bound=k^(n-1)=%d %s"
            % (
                format_rational(self.max_abs),
                self.bound,
                "OK" if self.bound_ok else "VIOLATED",
            ),
            "sharp=%s" % ("yes" if self.sharp else "no"),
        ]
        if self.certification is not None:
            lines.append(self.certification.to_text())
        return "\n".join(lines)


def solve_and_certify(system: System, certify: bool = True, jobs: int = 1) -> SolveReport:
    """Solve a unit-coefficient system and certify the magnitude bound.

    Reduces, assembles, solves exactly, reconstructs a solution of the
    original system, and checks |x_i| <= k^(n-1) with n the reduced size.
    With certify=True the full determinant certification chain
    x_i^2 <= det W_i <= k^(2(n-1)) is run per column.
    """
    from relmag import detbounds

    k = system.k
    try:
        reduced, trace = reduce_system(system)
    except AllHomogeneousError:
        zero = tuple(Fraction(0) for _ in range(system.nvars))
        return SolveReport(
            k=k,
            n=0,
            bound=1,
            det_a=1,
            det_ai=(),
            max_abs=Fraction(0),
            sharp=False,
            bound_ok=True,
            solution=zero,
            reduced_solution=(),
            trace=None,
            certification=None,
            trivial=True,
        )
    decomp = chain_decompose(reduced)
    asm = assemble(reduced, decomp)
    x, det_a, det_ai = solve_assembled(asm)
    n = asm.n
    # assembled solution must agree with the solution tracked by reduction
    for v in range(1, n + 1):
        if x[asm.column_of[v]] != trace.reduced_solution[v - 1]:
            raise ReductionError("assembled solution disagrees with the reduction")
    original = trace.reconstruct()
    if not check_solution(system, original):
        raise ReductionError("reconstructed solution fails the original system")
    max_abs = max(abs(v) for v in x)
    if max_abs != max(abs(v) for v in original):
        raise ReductionError("reduction changed the maximum coordinate magnitude")
    bound = k ** (n - 1)
    bound_ok = all(abs(v) <= bound for v in x)
    if not bound_ok:
        raise BoundViolationError("solution magnitude exceeds k^(n-1) = %d" % bound)
    certification = None
    if certify:
        certification = detbounds.certify_solution_bound(asm, x=x, jobs=jobs)
        if not certification.all_ok:
            raise BoundViolationError("determinant certification failed")
    return SolveReport(
        k=k,
        n=n,
        bound=bound,
        det_a=det_a,
        det_ai=det_ai,
        max_abs=max_abs,
        sharp=max_abs == bound,
        bound_ok=bound_ok,
        solution=original,
        reduced_solution=trace.reduced_solution,
        trace=trace,
        certification=certification,
    )
