"""Command-line front end.

Exit codes: 0 = success / all checks pass, 1 = a certified bound or
determinant identity failed (which would falsify a theorem), 2 = input
error.  Reports go to stdout; --format json switches to a structured
document.
"""

from __future__ import annotations

import json
import sys

import click

from relmag import detbounds, generators
from relmag.circuits import EnumerationTooLarge, TrivialNullspaceError, enumerate_circuits
from relmag.magnitude import PropositionViolation, omega_matrix_upper
from relmag.matrices import MatrixError, format_matrix, parse_matrix
from relmag.systems import (
    BoundViolationError,
    SystemError_,
    parse_system,
    solve_and_certify,
)

EXIT_VIOLATION = 1
EXIT_INPUT = 2


def _fail(message: str):
    click.echo("error: %s" % message, err=True)


def _read(path: str) -> str:
    try:
        if path == "-":
            return sys.stdin.read()
        with open(path) as fh:
            return fh.read()
    except OSError as exc:
        _fail("cannot read %s: %s" % (path, exc))
        raise click.exceptions.Exit(EXIT_INPUT)


def _load_matrix(path: str):
    text = _read(path)
    try:
        return parse_matrix(text)
    except MatrixError as exc:
        _fail(str(exc))
        raise click.exceptions.Exit(EXIT_INPUT)


format_option = click.option(
    "--format", "fmt", type=click.Choice(["text", "json"]), default="text",
    help="Report format.",
)
allow_large_option = click.option(
    "--allow-large", is_flag=True,
    help="Permit circuit enumeration beyond 24 columns (exponential).",
)


@click.group()
def main():
    """Exact relative-magnitude computation and certification."""


@main.command()
@click.option("--matrix", "matrix_path", required=True, help="Matrix file, '-' for stdin.")
@format_option
@allow_large_option
def omega(matrix_path, fmt, allow_large):
    """Compute the certified magnitude upper bound of a matrix."""
    a = _load_matrix(matrix_path)
    try:
        cert = omega_matrix_upper(a, allow_large=allow_large)
    except EnumerationTooLarge as exc:
        _fail(str(exc))
        raise click.exceptions.Exit(EXIT_INPUT)
    if fmt == "json":
        click.echo(json.dumps(cert.to_dict(), indent=2))
    else:
        click.echo(cert.to_text())
    if not cert.verdict:
        raise click.exceptions.Exit(EXIT_VIOLATION)


@main.command()
@click.option("--matrix", "matrix_path", required=True, help="Matrix file, '-' for stdin.")
@format_option
@allow_large_option
def circuits(matrix_path, fmt, allow_large):
    """List all minimal-support null vectors of a matrix."""
    a = _load_matrix(matrix_path)
    try:
        circs = enumerate_circuits(a, allow_large=allow_large)
    except EnumerationTooLarge as exc:
        _fail(str(exc))
        raise click.exceptions.Exit(EXIT_INPUT)
    if fmt == "json":
        click.echo(json.dumps([c.to_dict() for c in circs], indent=2))
    else:
        for c in circs:
            click.echo(c.to_line())
        click.echo("count=%d" % len(circs))


@main.command()
@click.option("--matrix", "matrix_path", required=True, help="Matrix file, '-' for stdin.")
@format_option
@allow_large_option
def certify(matrix_path, fmt, allow_large):
    """Certify the (norm-1)^rank magnitude bound for a matrix."""
    a = _load_matrix(matrix_path)
    try:
        cert = omega_matrix_upper(a, allow_large=allow_large)
    except EnumerationTooLarge as exc:
        _fail(str(exc))
        raise click.exceptions.Exit(EXIT_INPUT)
    if fmt == "json":
        click.echo(json.dumps(cert.to_dict(), indent=2))
    else:
        bound = cert.theorem_bound if cert.theorem_bound is not None else "-"
        tail = " SHARP" if cert.sharp else ""
        click.echo(
            "omega=%s bound=%s%s" % (cert.omega_upper, bound, tail)
        )
    if not cert.verdict:
        raise click.exceptions.Exit(EXIT_VIOLATION)


@main.command()
@click.option("--system", "system_path", required=True, help="System file, '-' for stdin.")
@format_option
@click.option("--jobs", type=int, default=1, help="Parallel per-column certifications.")
@click.option("--no-certify", is_flag=True, help="Skip the determinant certification chain.")
def solve(system_path, fmt, jobs, no_certify):
    """Solve a unit-coefficient system and certify the k^(n-1) bound."""
    text = _read(system_path)
    try:
        system = parse_system(text)
    except SystemError_ as exc:
        _fail(str(exc))
        raise click.exceptions.Exit(EXIT_INPUT)
    try:
        report = solve_and_certify(system, certify=not no_certify, jobs=jobs)
    except BoundViolationError as exc:
        _fail("bound violated: %s" % exc)
        raise click.exceptions.Exit(EXIT_VIOLATION)
    except SystemError_ as exc:
        _fail(str(exc))
        raise click.exceptions.Exit(EXIT_INPUT)
    if fmt == "json":
        click.echo(json.dumps(report.to_dict(), indent=2))
    else:
        click.echo(report.to_text())


@main.command("gen-extremal")
@click.option("--k", type=int, required=True)
@click.option("--n", type=int, required=True)
@click.option(
    "--mode", type=click.Choice(["homogeneous", "system"]), default="homogeneous",
    help="Emit the chain matrix or the x1=1 system DSL.",
)
def gen_extremal(k, n, mode):
    """Emit the sharp chain instance for given k and n."""
    try:
        if mode == "homogeneous":
            click.echo(format_matrix(generators.extremal_matrix(k, n)), nl=False)
        else:
            click.echo(generators.extremal_dsl(k, n), nl=False)
    except ValueError as exc:
        _fail(str(exc))
        raise click.exceptions.Exit(EXIT_INPUT)


@main.command("verify-lemmas")
@click.option("--tmax", type=int, default=8, help="Largest chain block size.")
@click.option("--kmax", type=int, default=5, help="Largest k to check.")
@format_option
def verify_lemmas(tmax, kmax, fmt):
    """Self-test the determinant identities and coefficient bounds."""
    if tmax < 3 or kmax < 2:
        _fail("need --tmax >= 3 and --kmax >= 2")
        raise click.exceptions.Exit(EXIT_INPUT)
    results = {"recurrences": [], "coefficient_bounds": []}
    try:
        for k in range(1, kmax + 1):
            rep = detbounds.verify_recurrences(tmax, k)
            results["recurrences"].append(rep.to_dict())
            if fmt == "text":
                click.echo(
                    "k=%d: %d block determinants and %d recurrences verified"
                    % (k, rep.matrices_checked, rep.recurrences_checked)
                )
        for k in range(2, kmax + 1):
            rep = detbounds.verify_coefficient_bounds(k)
            results["coefficient_bounds"].append(
                {"k": k, "multisets_checked": rep.multisets_checked, "bound": rep.bound}
            )
            if fmt == "text":
                click.echo(
                    "k=%d: %d coefficient multisets within bound %d, equality attained"
                    % (k, rep.multisets_checked, rep.bound)
                )
    except detbounds.LemmaViolationError as exc:
        _fail("lemma falsified: %s" % exc)
        raise click.exceptions.Exit(EXIT_VIOLATION)
    if fmt == "json":
        click.echo(json.dumps(results, indent=2))
    else:
        click.echo("all determinant identities pass")


if __name__ == "__main__":
    main()
