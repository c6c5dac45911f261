"""Shared helpers: independent oracles and random instance generators."""

from __future__ import annotations

import random
from itertools import combinations

from relmag.circuits import Circuit
from relmag.matrices import IntegerMatrix, nullspace_basis, primitive_vector
from relmag.systems import SumEquation, System, UnitEquation


def oracle_circuits(a: IntegerMatrix) -> list[Circuit]:
    """Exhaustive 2^n-subset circuit oracle.

    For every column subset I, the subset is a circuit support iff the
    null space of the column submatrix is a single ray whose generator
    has no zero coordinate.  Deliberately brute force; used only to
    cross-check the fast enumeration.
    """
    n = a.cols
    out = []
    for size in range(1, n + 1):
        for idx in combinations(range(n), size):
            sub = a.column_submatrix(idx)
            basis = nullspace_basis(sub)
            if len(basis) != 1 or any(v == 0 for v in basis[0]):
                continue
            vec = [0] * n
            for pos, j in enumerate(idx):
                vec[j] = basis[0][pos]
            out.append(Circuit(support=idx, vector=primitive_vector(vec)))
    out.sort(key=lambda c: c.support)
    return out


def random_matrix(rng: random.Random, m: int, n: int, lo: int = -3, hi: int = 3) -> IntegerMatrix:
    return IntegerMatrix.from_rows(
        [[rng.randint(lo, hi) for _ in range(n)] for _ in range(m)]
    )


def random_system(rng: random.Random, kmax: int = 4, nmax: int = 10) -> System:
    """A random unit-coefficient system; may or may not be solvable.

    Mixes unit equations, chain-type equations (k x_b = +/- x_a) and
    general signed sums within the coefficient weight limit k + 1.
    """
    k = rng.randint(2, kmax)
    n = rng.randint(2, nmax)
    eqs = [UnitEquation(var=rng.randint(1, n), sign=rng.choice((1, -1)))]
    for _ in range(rng.randint(1, n + 2)):
        roll = rng.random()
        if roll < 0.1:
            eqs.append(UnitEquation(var=rng.randint(1, n), sign=rng.choice((1, -1))))
        elif roll < 0.45:
            a, b = rng.sample(range(1, n + 1), 2)
            eqs.append(SumEquation(terms=((k, b), (rng.choice((1, -1)), a))))
        else:
            nterms = rng.randint(2, min(3, n, k + 1))
            vars_ = rng.sample(range(1, n + 1), nterms)
            budget = k + 1
            terms = []
            for i, v in enumerate(vars_):
                c = rng.randint(1, budget - (nterms - i - 1))
                budget -= c
                terms.append((c * rng.choice((1, -1)), v))
            eqs.append(SumEquation(terms=tuple(terms)))
    return System(k=k, nvars=n, equations=tuple(eqs))
