"""Command-line front end.

Every command prints one JSON document on stdout.  Failures print a JSON
diagnostic on stderr and exit with 3 (invalid input) or 2 (degenerate
configuration).  Output is a pure function of the arguments unless
``--timing`` is given.
"""

import json
import os
import random
import re
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

import click

from .errors import InvalidInput, Isog3Error
from .field_kernel import Polynomial, make_extension, poly_gcd_squarefree, prime_power

MAX_EXTENSION = 6
MAX_PRECISION = 1000
MIN_PRECISION = 15


# ---------------------------------------------------------------- parsing

def parse_q(text):
    """'3^k' or a prime power; returns (p, k)."""
    m = re.fullmatch(r"\s*(\d+)\s*\^\s*(\d+)\s*", text)
    try:
        if m:
            p, k = int(m.group(1)), int(m.group(2))
            _, base_k = prime_power(p)
            if base_k != 1:
                raise InvalidInput(f"base {p} of {text!r} is not prime")
        else:
            p, k = prime_power(int(text))
    except ValueError:
        raise InvalidInput(f"cannot read field size {text!r}") from None
    if k > MAX_EXTENSION:
        raise InvalidInput(f"extension degree {k} exceeds the cap {MAX_EXTENSION}")
    return p, k


def parse_ints(text, what):
    try:
        return [int(t) for t in text.split(",")]
    except ValueError:
        raise InvalidInput(f"{what} must be comma-separated integers, got {text!r}") from None


def make_field(q, modulus):
    p, k = parse_q(q)
    mod = parse_ints(modulus, "--modulus") if modulus else None
    return make_extension(p, k, mod)


def parse_polynomial(F, text):
    """Five codes b0..b4 give x^5 + b4 x^4 + ... + b0; six or seven codes are
    a full coefficient list, low degree first.  Codes are base-p digit
    strings read as integers in [0, q)."""
    codes = parse_ints(text, "polynomial")
    if len(codes) not in (5, 6, 7):
        raise InvalidInput(f"expected 5, 6 or 7 coefficients, got {len(codes)}")
    if any(c < 0 or c >= F.order for c in codes):
        raise InvalidInput(f"coefficient codes must lie in [0, {F.order})")
    coeffs = [F.element_at(c) for c in codes]
    if len(codes) == 5:
        coeffs.append(F.one)
    return Polynomial(F, coeffs)


def parse_rationals(text, n):
    try:
        values = [Fraction(t.strip()) for t in text.split(",")]
    except (ValueError, ZeroDivisionError):
        raise InvalidInput(f"expected {n} rationals, got {text!r}") from None
    if len(values) != n:
        raise InvalidInput(f"expected {n} rationals, got {len(values)}")
    return values


def check_precision(prec):
    if not MIN_PRECISION <= prec <= MAX_PRECISION:
        raise InvalidInput(f"precision must lie in [{MIN_PRECISION}, {MAX_PRECISION}]")


def worker_count():
    raw = os.environ.get("ISOG3_THREADS")
    if raw is None:
        return 1
    try:
        n = int(raw)
    except ValueError:
        raise InvalidInput(f"ISOG3_THREADS must be an integer, got {raw!r}") from None
    return max(1, min(n, os.cpu_count() or 1))


def emit(report):
    click.echo(json.dumps(report, sort_keys=True, indent=2))


def _plot_dir_option(f):
    return click.option("--plot-dir", type=click.Path(file_okay=False),
                        help="Write report figures (PNG) into this directory.")(f)


# ---------------------------------------------------------------- char 3

def _curve(F, text):
    from .genus2_curves import Genus2Curve
    return Genus2Curve(parse_polynomial(F, text))


def char3_report(curve, method="descended", max_ext=None):
    from .isogeny_pipeline import frobenius_certify, isogenous_curve_char3
    result, cert = isogenous_curve_char3(curve, method)
    return {
        "input": curve.to_json(),
        "result": result.to_json(),
        "certificate": cert.to_json(),
        "frobenius_check": frobenius_certify(curve, result, max_ext),
    }


def sample_sweep_curves(F, count, rng):
    """Monic squarefree ordinary quintics by rejection; also the rejection tally."""
    from .torsion3 import cartier_manin, depress
    rejected = {"repeated_root": 0, "not_ordinary": 0}
    out = []
    while len(out) < count:
        f = Polynomial(F, [F.random(rng) for _ in range(5)] + [F.one])
        if not poly_gcd_squarefree(f)[1]:
            rejected["repeated_root"] += 1
            continue
        if not cartier_manin(depress(f))[1]:
            rejected["not_ordinary"] += 1
            continue
        out.append(f)
    return out, rejected


def _sweep_task(args):
    """One curve of a sweep; runs in a worker process."""
    p, modulus, coeffs, method = args
    from .genus2_curves import Genus2Curve
    from .isogeny_pipeline import frobenius_certify, isogenous_curve_char3
    F = make_extension(p, len(modulus) - 1, modulus)
    curve = Genus2Curve(Polynomial(F, [F.from_coeffs(c) for c in coeffs]))
    start = time.perf_counter()
    try:
        result, cert = isogenous_curve_char3(curve, method)
        frob = frobenius_certify(curve, result)
        out = {"certificate": cert.passed(), "frobenius": frob, "route": cert.route,
               "error": None}
    except Isog3Error as exc:
        out = {"certificate": False, "frobenius": False, "route": None, "error": exc.kind}
    out["seconds"] = time.perf_counter() - start
    return out


def run_sweep(F, count, seed, method="descended", workers=1):
    rng = random.Random(seed)
    curves, rejected = sample_sweep_curves(F, count, rng)
    tasks = [(F.p, tuple(F.modulus), [F.coeffs(c) for c in f.coefficients], method)
             for f in curves]
    if workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_sweep_task, tasks))  # map keeps input order
    else:
        results = [_sweep_task(t) for t in tasks]
    failures, routes = {}, {}
    for r in results:
        if r["error"]:
            kind = r["error"]
        elif not r["certificate"]:
            kind = "certificate_failed"
        elif not r["frobenius"]:
            kind = "frobenius_failed"
        else:
            kind = None
        if kind:
            failures[kind] = failures.get(kind, 0) + 1
        if r["route"]:
            routes[r["route"]] = routes.get(r["route"], 0) + 1
    report = {
        "q": F.order,
        "field": F.descriptor(),
        "count": count,
        "seed": seed,
        "method": method,
        "rejected_samples": rejected,
        "certificate_passes": sum(r["certificate"] for r in results),
        "frobenius_passes": sum(r["frobenius"] for r in results),
        "failures": failures,
        "routes": routes,
    }
    return report, [r["seconds"] for r in results]


def timing_summary(seconds):
    s = sorted(seconds)
    return {"total": round(sum(s), 4), "mean": round(sum(s) / len(s), 4),
            "median": round(s[len(s) // 2], 4), "max": round(s[-1], 4)} if s else {}


# ---------------------------------------------------------------- commands

@click.group(context_settings={"help_option_names": ["-h", "--help"]})
def cli():
    """Genus-2 (3,3)-isogenies in characteristic 3 and over the complex numbers."""


@cli.command()
@click.option("--q", "q", required=True, help="Field size, e.g. 3^2 or 9.")
@click.option("--modulus", help="Irreducible modulus c0,..,ck (monic, low degree first).")
@click.option("--f", "f", required=True, help="Coefficient codes b0,..,b4 of x^5 + b4 x^4 + ... + b0.")
@click.option("--method", type=click.Choice(["descended", "explicit"]), default="descended",
              show_default=True)
@click.option("--max-ext", type=int, help="Largest extension degree used by the isomorphism test.")
def char3(q, modulus, f, method, max_ext):
    """The (3,3)-isogenous curve of y^2 = f(x) over F_q with its certificate."""
    F = make_field(q, modulus)
    if F.characteristic != 3:
        raise InvalidInput("char3 needs q a power of 3")
    emit(char3_report(_curve(F, f), method, max_ext))


@cli.command()
@click.option("--q", "q", required=True)
@click.option("--modulus")
@click.option("--count", type=click.IntRange(min=1), required=True)
@click.option("--seed", type=int, required=True)
@click.option("--method", type=click.Choice(["descended", "explicit"]), default="descended",
              show_default=True)
@click.option("--timing", is_flag=True, help="Add wall-clock statistics (not reproducible).")
@_plot_dir_option
def sweep(q, modulus, count, seed, method, timing, plot_dir):
    """Run the char-3 pipeline on random ordinary curves and aggregate."""
    F = make_field(q, modulus)
    if F.characteristic != 3:
        raise InvalidInput("sweep needs q a power of 3")
    report, seconds = run_sweep(F, count, seed, method, worker_count())
    if timing:
        report["timing"] = timing_summary(seconds)
    if plot_dir:
        from . import plotting
        figures = [plotting.sweep_outcomes(plot_dir, report)]
        if timing:
            figures.append(plotting.sweep_timing(plot_dir, seconds, F.order))
        report["figures"] = figures
    emit(report)


@cli.command("complex")
@click.option("--z", "z", required=True, help="Rational Maschke point z1,z2,z3,z4.")
@click.option("--prec", type=int, default=100, show_default=True, help="Decimal digits.")
@click.option("--stability", is_flag=True, help="Rerun at twice the precision and report the drift.")
def complex_cmd(z, prec, stability):
    """The isogenous curve attached to a point of the Maschke space."""
    from .complex_pipeline import run_complex, stability_check
    check_precision(prec)
    point = parse_rationals(z, 4)
    if stability:
        check_precision(2 * prec)
        run, high, drift = stability_check(point, prec)
        report = run.to_json()
        report["stability"] = {"precision": high.frame.field.precision,
                               "drift": high.frame.field.ctx.nstr(drift, 5)}
    else:
        report = run_complex(point, prec).to_json()
    emit(report)


@cli.command()
@click.argument("identity", type=click.Choice(["burkhardt", "hessian", "reflections", "salmon"]))
@click.option("--samples", type=click.IntRange(min=1), help="Random samples (default per identity).")
@click.option("--seed", type=int, default=None)
@click.option("--prec", type=int, default=100, show_default=True, help="Digits for the hessian check.")
@_plot_dir_option
def verify(identity, samples, seed, prec, plot_dir):
    """Exact and numerical checks of the classical identities with their corrections."""
    from . import burkhardt_coble as bc
    figures = []
    if identity == "burkhardt":
        report = bc.burkhardt_verification()
        report["random_kernel_points"] = bc.kernel_map_check(samples or 100, 11 if seed is None else seed)
        report["passed"] = (report["coble"]["integrable"] and report["random_kernel_points"]["passed"]
                            and report["kernel_map"]["printed_mb_burkhardt_value"] == "-39936")
    elif identity == "hessian":
        check_precision(prec)
        report, values = bc.hessian_verification(samples or 25, prec, 5 if seed is None else seed)
        if plot_dir:
            from . import plotting
            figures.append(plotting.hessian_residuals(plot_dir, values, prec))
    elif identity == "reflections":
        report = bc.reflections_verification()
    else:
        from .genus2_curves import salmon_verification
        report = salmon_verification(samples or 100, 50, 1 if seed is None else seed)
    report["identity"] = identity
    if plot_dir:
        report["figures"] = figures
    emit(report)


@cli.command()
@click.option("--q", "q", required=True)
@click.option("--modulus")
@click.option("--f", "f", required=True, help="First curve (codes, as for char3).")
@click.option("--g", "g", required=True, help="Second curve (codes, as for char3).")
@click.option("--max-ext", type=int)
def iso(q, modulus, f, g, max_ext):
    """Decide whether two genus-2 curves over F_q are isomorphic over an extension."""
    from .genus2_curves import is_isomorphic
    F = make_field(q, modulus)
    c1, c2 = _curve(F, f), _curve(F, g)
    witness = is_isomorphic(c1, c2, max_ext)
    report = {"curves": [c1.to_json(), c2.to_json()], "isomorphic": witness is not None,
              "witness": None}
    if witness is not None:
        E = witness[0][0].field
        report["witness"] = {"field": E.descriptor(),
                             "matrix": [[x.to_json() for x in row] for row in witness]}
    emit(report)


# ---------------------------------------------------------------- entry point

def _fail(code, kind, message):
    click.echo(json.dumps({"error": kind, "message": message, "exit_code": code}, sort_keys=True),
               err=True)
    return code


def main(argv=None):
    try:
        cli.main(args=argv, prog_name="isog3", standalone_mode=False)
    except click.exceptions.Exit as exc:
        return exc.exit_code
    except click.exceptions.Abort:
        return _fail(1, "Aborted", "interrupted")
    except click.UsageError as exc:
        return _fail(3, "UsageError", exc.format_message())
    except Isog3Error as exc:
        return _fail(exc.exit_code, exc.kind, str(exc))
    except Exception as exc:  # an internal error, not a property of the input
        return _fail(1, type(exc).__name__, str(exc))
    return 0


if __name__ == "__main__":
    sys.exit(main())
