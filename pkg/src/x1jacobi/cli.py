"""Command-line front end: a thin HTTP client of the service.

Every subcommand builds a JSON payload, posts it to the service and
renders the response.  By default the service app is mounted in-process
(no network, no separate server); ``--server URL`` switches the same
client code to a remote instance.  Exit codes: 0 success, 1 one or more
report checks failed, 2 invalid input.

The default digit count for printed numbers comes from the
X1JACOBI_PRECISION environment variable (fallback 30).
"""

from __future__ import annotations

import asyncio
import json
import os
import sys
from pathlib import Path

import click
import httpx

PRECISION_ENV = "X1JACOBI_PRECISION"


def _default_digits() -> int:
    try:
        return int(os.environ.get(PRECISION_ENV, "30"))
    except ValueError:
        return 30


async def _asgi_post(path: str, payload: dict) -> httpx.Response:
    from .service import app

    transport = httpx.ASGITransport(app=app)
    async with httpx.AsyncClient(transport=transport,
                                 base_url="http://x1jacobi.local",
                                 timeout=None) as client:
        return await client.post(path, json=payload)


def _post(server: str | None, path: str, payload: dict) -> dict:
    """POST to the service; returns the decoded body or exits with code 2."""
    try:
        if server:
            with httpx.Client(base_url=server, timeout=600.0) as client:
                resp = client.post(path, json=payload)
        else:
            resp = asyncio.run(_asgi_post(path, payload))
    except httpx.HTTPError as exc:
        click.echo(f"transport error: {exc}", err=True)
        raise SystemExit(2)
    if resp.status_code == 200:
        return resp.json()
    try:
        body = resp.json()
    except ValueError:
        body = {"error": f"HTTP {resp.status_code}", "detail": resp.text}
    if resp.status_code == 422:
        click.echo(f"input error: {json.dumps(body.get('detail', body))}", err=True)
    else:
        click.echo(f"input error: {body.get('error', 'unknown')}: "
                   f"{body.get('detail', '')}", err=True)
    raise SystemExit(2)


@click.group()
@click.option("--server", default=None, metavar="URL",
              help="Base URL of a running service; default runs in-process.")
@click.pass_context
def main(ctx, server):
    """Exceptional Jacobi-type orthogonal polynomials: construction and checks."""
    ctx.ensure_object(dict)
    ctx.obj["server"] = server


def _server(ctx) -> str | None:
    return ctx.obj.get("server")


_alpha_opt = click.option("--alpha", required=True, help="alpha, e.g. 1 or -1/2 or 0.5")
_beta_opt = click.option("--beta", required=True, help="beta, e.g. 3 or -3/4")
_digits_opt = click.option("--digits", type=int, default=_default_digits,
                           show_default="env X1JACOBI_PRECISION or 30",
                           help="significant digits for printed numbers")


@main.command()
@_alpha_opt
@_beta_opt
@click.option("--json", "as_json", is_flag=True, help="emit JSON")
@click.pass_context
def params(ctx, alpha, beta, as_json):
    """Validate (alpha, beta) and print the derived constants and case tag."""
    body = _post(_server(ctx), "/params", {"alpha": alpha, "beta": beta})
    if as_json:
        click.echo(json.dumps(body, indent=2, sort_keys=True))
    else:
        for key in ("alpha", "beta", "a", "b", "c", "case"):
            click.echo(f"{key} = {body[key]}")


@main.command()
@_alpha_opt
@_beta_opt
@click.option("--at", required=True, metavar="X1,X2,...",
              help="comma-separated evaluation points in (-1, 1)")
@_digits_opt
@click.pass_context
def coeffs(ctx, alpha, beta, at, digits):
    """Print p, q, w values as CSV columns (x, p, q, w)."""
    points = [part.strip() for part in at.split(",") if part.strip()]
    body = _post(_server(ctx), "/coeffs",
                 {"alpha": alpha, "beta": beta, "at": points, "digits": digits})
    click.echo("x,p,q,w")
    for row in body["rows"]:
        click.echo(f"{row['x']},{row['p']},{row['q']},{row['w']}")


@main.command()
@_alpha_opt
@_beta_opt
@click.option("--n-max", type=int, default=8, show_default=True)
@click.option("--normalize", type=click.Choice(["monic", "unit"]), default="monic",
              show_default=True)
@click.option("--json", "as_json", is_flag=True, help="emit a JSON array")
@click.option("--csv", "as_csv", is_flag=True, help="emit CSV rows")
@_digits_opt
@click.pass_context
def eigen(ctx, alpha, beta, n_max, normalize, as_json, as_csv, digits):
    """Construct eigenpairs 0..n-max; default output is 'n lambda c0 c1 ...'."""
    body = _post(_server(ctx), "/eigen",
                 {"alpha": alpha, "beta": beta, "n_max": n_max,
                  "normalize": normalize, "digits": digits})
    pairs = body["pairs"]
    if as_json:
        click.echo(json.dumps(pairs, indent=2, sort_keys=True))
    elif as_csv:
        click.echo("n,lambda,coeffs...")
        for p in pairs:
            click.echo(",".join([str(p["n"]), p["lambda"], *p["coeffs"]]))
    else:
        for p in pairs:
            click.echo(" ".join([str(p["n"]), p["lambda"], *p["coeffs"]]))


@main.command()
@_alpha_opt
@_beta_opt
@click.option("--n-max", type=int, default=10, show_default=True)
@click.option("--rel-tol", type=float, default=1e-12, show_default=True)
@click.option("--csv", "as_csv", is_flag=True, help="comma-separated rows")
@_digits_opt
@click.pass_context
def gram(ctx, alpha, beta, n_max, rel_tol, as_csv, digits):
    """Emit the normalized Gram matrix of the first n-max + 1 eigenpolynomials."""
    body = _post(_server(ctx), "/gram",
                 {"alpha": alpha, "beta": beta, "n_max": n_max,
                  "rel_tol": rel_tol, "digits": digits})
    sep = "," if as_csv else " "
    for row in body["matrix"]:
        click.echo(sep.join(row))


@main.command()
@_alpha_opt
@_beta_opt
@click.option("--n-max", type=int, default=20, show_default=True)
@click.option("--rel-tol", type=float, default=1e-12, show_default=True)
@_digits_opt
@click.pass_context
def density(ctx, alpha, beta, n_max, rel_tol, digits):
    """Emit (N, residual) pairs: projection residual of 1 onto the first N+1
    eigenpolynomials, as two-column plot data."""
    body = _post(_server(ctx), "/density",
                 {"alpha": alpha, "beta": beta, "n_max": n_max,
                  "rel_tol": rel_tol, "digits": digits})
    for point in body["series"]:
        click.echo(f"{point['n']} {point['residual']}")


@main.command()
@_alpha_opt
@_beta_opt
@click.option("--numeric", is_flag=True, help="attach tail-fit exponents")
@click.option("--json", "as_json", is_flag=True, help="emit JSON")
@_digits_opt
@click.pass_context
def classify(ctx, alpha, beta, numeric, as_json, digits):
    """Classify both endpoints (regularity, limit-circle/limit-point)."""
    body = _post(_server(ctx), "/classify",
                 {"alpha": alpha, "beta": beta, "numeric": numeric, "digits": digits})
    if as_json:
        click.echo(json.dumps(body, indent=2, sort_keys=True))
        return
    click.echo(f"case = {body['case']}")
    for key in ("plus_one", "minus_one"):
        rep = body[key]
        line = (f"endpoint {rep['endpoint']}: {rep['classification']}"
                f" regular={rep['regular']}"
                f" analytic_exponent={rep['analytic_exponent']}"
                f" boundary_condition_required={rep['boundary_condition_required']}")
        if rep.get("numeric_exponent") is not None:
            line += f" numeric_exponent={rep['numeric_exponent']}"
        click.echo(line)


@main.command()
@_alpha_opt
@_beta_opt
@click.option("--n", type=int, required=True, help="eigenpolynomial index")
@_digits_opt
@click.pass_context
def boundary(ctx, alpha, beta, n, digits):
    """Emit (x, |[P_n, phi1](x)|) two-column data plus fitted decay exponents."""
    body = _post(_server(ctx), "/boundary",
                 {"alpha": alpha, "beta": beta, "n": n, "digits": digits})
    click.echo(f"# exp_plus = {body['exp_plus']}")
    click.echo(f"# exp_minus = {body['exp_minus']}")
    for point in body["points"]:
        click.echo(f"{point['x']} {point['bracket_abs']}")


@main.command()
@_alpha_opt
@_beta_opt
@click.option("--k", type=int, default=5, show_default=True,
              help="number of eigenvalues to compare")
@click.option("--nodes", type=int, default=200, show_default=True)
@click.option("--json", "as_json", is_flag=True, help="emit JSON")
@_digits_opt
@click.pass_context
def spectrum(ctx, alpha, beta, k, nodes, as_json, digits):
    """Cross-check the collocation spectrum against the exact pencil and both
    closed-form candidate sequences."""
    body = _post(_server(ctx), "/spectrum",
                 {"alpha": alpha, "beta": beta, "k": k, "nodes": nodes,
                  "digits": digits})
    if as_json:
        click.echo(json.dumps(body, indent=2, sort_keys=True))
        return
    click.echo("collocation pencil candidate_printed candidate_shifted")
    for i in range(len(body["collocation"])):
        click.echo(" ".join([body["collocation"][i], body["pencil"][i],
                             body["candidate_printed"][i], body["candidate_shifted"][i]]))
    click.echo(f"# unmatched_collocation = {body['unmatched_collocation']}")
    click.echo(f"# missing_pencil = {body['missing_pencil']}")
    click.echo(f"# printed_formula_matches = {body['printed_formula_matches']}")
    click.echo(f"# shifted_formula_matches = {body['shifted_formula_matches']}")


def _read_config(path: str) -> dict:
    """Flat key=value file; blank lines and '#' comments ignored."""
    out = {}
    for raw in Path(path).read_text().splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise click.UsageError(f"malformed config line: {raw!r}")
        key, value = line.split("=", 1)
        out[key.strip()] = value.strip()
    return out


@main.command()
@_alpha_opt
@_beta_opt
@click.option("--n-max", type=int, default=8, show_default=True)
@click.option("--rel-tol", type=float, default=1e-12, show_default=True)
@click.option("--format", "output_format", type=click.Choice(["json", "csv", "tsv"]),
              default="csv", show_default=True, help="format of tabular data files")
@click.option("--k", type=int, default=5, show_default=True)
@click.option("--nodes", type=int, default=200, show_default=True)
@click.option("--out", "out_dir", default=".", show_default=True,
              help="directory for report.json and the data files")
@click.option("--config", "config_path", default=None, metavar="FILE",
              help="flat key=value file whose entries override flags")
@_digits_opt
@click.pass_context
def report(ctx, alpha, beta, n_max, rel_tol, output_format, k, nodes, out_dir,
           config_path, digits):
    """Run every check, write report.json plus data files, exit 0/1/2."""
    values = {
        "alpha": alpha, "beta": beta, "n_max": n_max, "rel_tol": rel_tol,
        "format": output_format, "k": k, "nodes": nodes, "out": out_dir,
        "digits": digits,
    }
    if config_path:
        overrides = _read_config(config_path)
        unknown = set(overrides) - set(values)
        if unknown:
            raise click.UsageError(f"unknown config keys: {sorted(unknown)}")
        values.update(overrides)
    payload = {
        "alpha": values["alpha"],
        "beta": values["beta"],
        "n_max": int(values["n_max"]),
        "rel_tol": float(values["rel_tol"]),
        "output_format": str(values["format"]),
        "precision_digits": int(values["digits"]),
        "spectrum_k": int(values["k"]),
        "spectrum_nodes": int(values["nodes"]),
    }
    body = _post(_server(ctx), "/report", payload)
    target = Path(str(values["out"]))
    target.mkdir(parents=True, exist_ok=True)
    for name, content in sorted(body["files"].items()):
        (target / name).write_text(content)
    for check in body["checks"]:
        status = "PASS" if check["passed"] else "FAIL"
        click.echo(f"{status} {check['name']}: {check['detail']}")
    click.echo(f"# wrote {len(body['files'])} files")
    raise SystemExit(body["exit_code"])


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=8000, show_default=True)
def serve(host, port):
    """Run the HTTP service with uvicorn."""
    import uvicorn

    from .service import app

    uvicorn.run(app, host=host, port=port)


if __name__ == "__main__":
    main()
