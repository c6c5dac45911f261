"""Unit-coefficient systems: parsing, reduction, chains, solving."""

import random
from fractions import Fraction

import pytest

from conftest import random_system
from relmag.generators import extremal_dsl, extremal_system
from relmag.systems import (
    BoundViolationError,
    ChainIntersectionError,
    ParseError,
    SumEquation,
    System,
    UnitEquation,
    UnsolvableSystemError,
    assemble,
    chain_decompose,
    check_solution,
    parse_system,
    reduce_system,
    solve_and_certify,
)


class TestParser:
    def test_basic(self):
        s = parse_system("k=3\nx1 = 1\n3x1 - x2 = 0\n")
        assert s.k == 3 and s.nvars == 2
        assert s.equations[0] == UnitEquation(var=1, sign=1)
        assert s.equations[1] == SumEquation(terms=((3, 1), (-1, 2)))

    def test_default_k_and_semicolons(self):
        s = parse_system("x1=1; x1+x2=x3")
        assert s.k == 2
        assert s.equations[1] == SumEquation(terms=((1, 1), (1, 2), (-1, 3)))

    def test_negative_unit(self):
        s = parse_system("x2 = -1")
        assert s.equations[0] == UnitEquation(var=2, sign=-1)

    def test_moving_terms_across_equals(self):
        s = parse_system("k=3; 2x1 = x2 - x3")
        assert s.equations[0] == SumEquation(terms=((2, 1), (-1, 2), (1, 3)))

    def test_repeated_unit_terms(self):
        s = parse_system("k=2; x1 + x1 - x2 = 0")
        assert s.equations[0].combined() == {1: 2, 2: -1}

    def test_comments_and_blank_lines(self):
        s = parse_system("# header\nk=2\n\nx1=1  # unit\n")
        assert s.k == 2 and len(s.equations) == 1

    def test_errors_carry_position(self):
        with pytest.raises(ParseError) as exc:
            parse_system("x1=1\nx2 = 5\n")
        assert exc.value.line == 2
        with pytest.raises(ParseError):
            parse_system("k=2; y1=1")
        with pytest.raises(ParseError):
            parse_system("k=1; x1=1")  # k must be >= 2
        with pytest.raises(ParseError):
            parse_system("x1=1; x1+x2")  # missing '='

    def test_weight_limit_enforced(self):
        with pytest.raises(ParseError):
            parse_system("k=2; x1+x1+x1+x2=0")  # weight 4 > k+1 = 3

    def test_round_trip(self):
        # to_text expands coefficients into repeated unit terms, so the
        # round trip preserves semantics (combined coefficients), not syntax
        for text in ["k=3; x1=1; 3x1-x2=0", "x1=-1; x1+x2=x3"]:
            s = parse_system(text)
            again = parse_system(s.to_text())
            assert again.k == s.k and again.nvars == s.nvars
            for e1, e2 in zip(again.equations, s.equations):
                if isinstance(e1, SumEquation):
                    assert e1.combined() == e2.combined()
                else:
                    assert e1 == e2


class TestSystemValidation:
    def test_rejects_bad_k(self):
        with pytest.raises(ValueError):
            System(k=1, nvars=1, equations=(UnitEquation(var=1, sign=1),))

    def test_rejects_out_of_range_var(self):
        with pytest.raises(ValueError):
            System(k=2, nvars=1, equations=(UnitEquation(var=2, sign=1),))

    def test_rejects_overweight(self):
        with pytest.raises(ValueError):
            System(
                k=2,
                nvars=2,
                equations=(SumEquation(terms=((3, 1), (1, 2))),),
            )


class TestReduction:
    def test_two_unit_equations(self):
        s = parse_system("k=2; x1=1; x2=1")
        reduced, trace = reduce_system(s)
        assert reduced.nvars == 1
        assert trace.reconstruct() == (Fraction(1), Fraction(1))

    def test_free_variable_zeroed(self):
        s = parse_system("k=2\nx1=1\nx1+x1-x2=0\nx3-x3=0")
        reduced, trace = reduce_system(s)
        x = trace.reconstruct()
        assert x == (1, 2, 0)
        assert check_solution(s, x)

    def test_negative_unit_sign_absorbed(self):
        s = parse_system("k=3; x1=-1; 3x1-x2=0")
        reduced, trace = reduce_system(s)
        assert trace.unit_sign_flipped
        assert reduced.equations[0] == UnitEquation(var=1, sign=1)
        assert trace.reconstruct() == (-1, -3)

    def test_merge_preserves_max(self):
        s = parse_system("k=2; x1=1; 2x2-x1=0; 2x3-x1=0; 2x1-x4=0")
        reduced, trace = reduce_system(s)
        x = trace.reconstruct()
        assert check_solution(s, x)
        assert x == (1, Fraction(1, 2), Fraction(1, 2), 2)
        assert max(abs(v) for v in x) == max(abs(v) for v in trace.reduced_solution)

    def test_idempotent(self):
        s = parse_system("k=3; x2=1; 3x2-x1=0; x1+x2-x3=0")
        reduced, trace = reduce_system(s)
        again, trace2 = reduce_system(reduced)
        assert again == reduced
        assert trace2.reduced_solution == trace.reduced_solution

    def test_unsolvable(self):
        with pytest.raises(UnsolvableSystemError):
            reduce_system(parse_system("k=2; x1=1; x1=-1"))
        with pytest.raises(UnsolvableSystemError):
            reduce_system(parse_system("k=2; x1=1; x1+x1-x2=0; x2-x1=0"))

    def test_postconditions_randomized(self):
        rng = random.Random(59)
        done = 0
        while done < 200:
            s = random_system(rng)
            try:
                reduced, trace = reduce_system(s)
            except UnsolvableSystemError:
                continue
            x = trace.reconstruct()
            assert check_solution(s, x)
            absvals = [abs(v) for v in trace.reduced_solution]
            assert 0 not in absvals
            assert len(set(absvals)) == len(absvals)
            assert max(absvals, default=Fraction(1)) == max(
                [abs(v) for v in x] or [Fraction(1)]
            )
            done += 1


class TestChains:
    def test_decompose_sharp_system(self):
        s = extremal_system(3, 4)
        reduced, _ = reduce_system(s)
        d = chain_decompose(reduced)
        assert len(d.chains) == 1
        assert d.chains[0].length == 4
        assert d.type3 == ()

    def test_two_chains_and_type3(self):
        s = parse_system("k=3; x1=1; 3x2=x1; 3x4=x3; x3-x1-x1=0")
        reduced, _ = reduce_system(s)
        d = chain_decompose(reduced)
        assert len(d.chains) == 2
        assert len(d.type3) == 1

    def test_assembled_band_structure(self):
        s = extremal_system(2, 5)
        reduced, _ = reduce_system(s)
        asm = assemble(reduced, chain_decompose(reduced))
        a = asm.matrix
        assert a.rows == a.cols == 5
        # first row is the unit row
        assert sum(abs(v) for v in a.row(0)) == 1
        # each chain row has +k on the diagonal band and a unit off it
        for i in range(1, 5):
            vals = sorted(abs(v) for v in a.row(i) if v != 0)
            assert vals == [1, 2]


class TestSolveAndCertify:
    def test_sharp_instance(self):
        rep = solve_and_certify(parse_system(extremal_dsl(2, 4)))
        assert rep.max_abs == 8
        assert rep.bound == 8
        assert rep.sharp and rep.bound_ok
        assert rep.certification.all_ok

    def test_solution_values(self):
        rep = solve_and_certify(parse_system("k=3; x1=1; 3x1-x2=0; x2+x1-x3=0"))
        assert rep.solution == (1, 3, 4)
        assert rep.max_abs == 4
        assert rep.bound == 9
        assert not rep.sharp

    def test_trivial_all_homogeneous(self):
        rep = solve_and_certify(parse_system("k=2; x1+x2=0"))
        assert rep.trivial
        assert rep.solution == (0, 0)
        assert rep.max_abs == 0

    def test_report_serialization(self):
        rep = solve_and_certify(parse_system(extremal_dsl(2, 3)))
        d = rep.to_dict()
        assert d["bound"] == 4 and d["max_abs"] == "4"
        assert d["certification"]["all_ok"] is True
        assert "max=4 bound=k^(n-1)=4 OK" in rep.to_text()

    def test_parallel_jobs_agree(self):
        s = parse_system(extremal_dsl(3, 5))
        rep1 = solve_and_certify(s, jobs=1)
        rep2 = solve_and_certify(s, jobs=4)
        assert rep1.solution == rep2.solution
        assert rep1.certification.to_dict() == rep2.certification.to_dict()

    def test_no_certify_skips_chain(self):
        rep = solve_and_certify(parse_system(extremal_dsl(2, 6)), certify=False)
        assert rep.certification is None
        assert rep.max_abs == 32
