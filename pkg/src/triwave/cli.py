"""
Command-line front end.

Every command prints JSON (SVG for ``render``). Domain errors become usage
errors with exit status 2; a failing verification exits with status 1.
"""

from __future__ import annotations

import functools
import json
import logging
import re
from collections.abc import Callable
from typing import Any

import click
import numpy as np

from ._logging import set_logger
from .catalog import get_group, list_groups
from .group_core import factor, invert, multiply, section_gamma
from .induced import FinSuppVector, sigma_apply, twist_eval
from .notation import format_element, parse_element
from .orbits import (
    Boundary,
    CanonicalForm,
    build_cross_section,
    canonicalize,
    irreducible,
    same_orbit,
    stabilizer,
)
from .packets import GaussianPacket, PacketSum
from .render import KINDS, render
from .settings import TriwaveSettings
from .verify import DEFAULT_SUITES, run_verify
from .wavelet_rep import apply_Vhat, rho_eval

_VEC_ENTRY = re.compile(
    r"\(\s*(\w+)\s*,\s*([+-]?\d+)\s*\)\s*:\s*([^,;]+?)\s*,\s*([^;]+?)\s*$"
)


def _domain_errors(fn: Callable[..., Any]) -> Callable[..., Any]:
    """Report domain exceptions as usage errors."""

    @functools.wraps(fn)
    def wrapper(*args: Any, **kwargs: Any) -> Any:
        try:
            return fn(*args, **kwargs)
        except (ValueError, KeyError, ArithmeticError, TypeError) as e:
            message = e.args[0] if isinstance(e, KeyError) and e.args else e
            raise click.UsageError(f"{type(e).__name__}: {message}") from e

    return wrapper


def _emit(payload: Any) -> None:
    ctx = click.get_current_context()
    indent = None if ctx.find_root().obj["compact"] else 2
    click.echo(json.dumps(payload, indent=indent, sort_keys=True))


def _settings() -> TriwaveSettings:
    return click.get_current_context().find_root().obj["settings"]


def _group(name: str):
    return get_group(name, _settings().rect_aspect)


def _vector(ctx: click.Context, param: click.Parameter, value: str | None):
    if value is None:
        return None
    try:
        x, y = (float(part) for part in value.split(","))
    except ValueError as e:
        raise click.BadParameter("expected two numbers 'x,y'") from e
    return np.array([x, y])


def _packet(ctx: click.Context, param: click.Parameter, value: str):
    parts = [part.strip() for part in value.split(",")]
    if len(parts) != 8:
        raise click.BadParameter("expected c,a1,a2,p11,p12,p22,b1,b2")
    try:
        return GaussianPacket.from_params(
            [complex(parts[0].replace("i", "j"))] + parts[1:]
        )
    except ValueError as e:
        raise click.BadParameter(str(e)) from e


def parse_fin_supp(gd, text: str) -> FinSuppVector:
    """Read ``(L,m):re,im;...`` into a finitely supported vector."""
    entries = {}
    for chunk in filter(None, (c.strip() for c in text.split(";"))):
        found = _VEC_ENTRY.match(chunk)
        if found is None:
            raise ValueError(f"cannot read vector entry {chunk!r}")
        name, m, re_part, im_part = found.groups()
        key = (gd.element(name), int(m))
        entries[key] = complex(float(re_part), float(im_part))
    return FinSuppVector(entries)


def _configure_logging(choice: str) -> None:
    try:
        from ._logging import loguru_config
    except ImportError:
        if choice in {"stdout", "gcloud"}:
            logging.basicConfig(level=logging.INFO)
        elif choice == "file":
            logging.basicConfig(filename="triwave.log", level=logging.INFO)
        else:
            set_logger(None)
        return
    {
        "stdout": loguru_config.stdout_logger,
        "file": loguru_config.file_logger,
        "gcloud": loguru_config.gcloud_logger,
        "none": loguru_config.silence,
    }[choice]()


group_option = click.option(
    "--group", "-g", "group_name", required=True, help="Wallpaper group."
)


@click.group()
@click.option(
    "--json", "compact", is_flag=True, help="Single-line JSON output."
)
@click.option(
    "--log",
    type=click.Choice(["stdout", "file", "gcloud", "none"]),
    default="none",
    show_default=True,
    help="Log handler.",
)
@click.pass_context
def main(ctx: click.Context, compact: bool, log: str) -> None:
    """The 3-wavelet groups of the 17 wallpaper groups."""
    _configure_logging(log)
    ctx.obj = {"compact": compact, "settings": TriwaveSettings.from_config()}


@main.command()
@click.option("--group", "-g", "group_name", default="all", show_default=True)
@_domain_errors
def catalog(group_name: str) -> None:
    """Export catalog entries."""
    names = list_groups() if group_name == "all" else [group_name]
    entries = [_group(name).to_dict() for name in names]
    _emit(entries if group_name == "all" else entries[0])


@main.group()
def elem() -> None:
    """Wavelet-group element arithmetic."""


@elem.command("parse")
@group_option
@click.argument("text")
@_domain_errors
def elem_parse(group_name: str, text: str) -> None:
    gd = _group(group_name)
    g = parse_element(gd, text)
    _emit(
        {
            "element": format_element(g),
            "x": [str(g.x.a), str(g.x.b)],
            "L": g.L.name,
            "ell": g.ell,
        }
    )


@elem.command("mul")
@group_option
@click.argument("left")
@click.argument("right")
@_domain_errors
def elem_mul(group_name: str, left: str, right: str) -> None:
    gd = _group(group_name)
    g, h = parse_element(gd, left), parse_element(gd, right)
    _emit({"product": format_element(multiply(g, h, gd))})


@elem.command("inv")
@group_option
@click.argument("text")
@_domain_errors
def elem_inv(group_name: str, text: str) -> None:
    gd = _group(group_name)
    _emit({"inverse": format_element(invert(parse_element(gd, text), gd))})


@elem.command("factor")
@group_option
@click.argument("text")
@_domain_errors
def elem_factor(group_name: str, text: str) -> None:
    gd = _group(group_name)
    dil, part = factor(parse_element(gd, text), gd)
    _emit({"dilation": format_element(dil), "affine": format_element(part)})


@elem.command("section")
@group_option
@click.option("--point", "-L", "point", required=True)
@click.option("--ell", type=int, required=True)
@_domain_errors
def elem_section(group_name: str, point: str, ell: int) -> None:
    gd = _group(group_name)
    _emit({"gamma": format_element(section_gamma(gd, gd.element(point), ell))})


@main.group()
def orbit() -> None:
    """Orbits of the point group and dilations on frequencies."""


@orbit.command("canon")
@group_option
@click.option("--omega", required=True, callback=_vector)
@_domain_errors
def orbit_canon(group_name: str, omega: np.ndarray) -> None:
    cs = build_cross_section(_group(group_name), _settings().boundary_tol)
    canon = canonicalize(cs, omega)
    if isinstance(canon, CanonicalForm):
        _emit(
            {
                "omega_prime": list(canon.omega_prime),
                "L": canon.L.name,
                "ell": canon.ell,
            }
        )
    elif isinstance(canon, Boundary):
        _emit({"boundary": True})
    else:
        _emit({"zero": True})


@orbit.command("stab")
@group_option
@click.option("--omega", required=True, callback=_vector)
@_domain_errors
def orbit_stab(group_name: str, omega: np.ndarray) -> None:
    gd = _group(group_name)
    _emit(
        {
            "stabilizer": [L.name for L in stabilizer(gd, omega)],
            "irreducible": irreducible(gd, omega),
        }
    )


@orbit.command("same")
@group_option
@click.option("--omega", required=True, callback=_vector)
@click.option("--omega2", required=True, callback=_vector)
@_domain_errors
def orbit_same(group_name: str, omega: np.ndarray, omega2: np.ndarray) -> None:
    _emit({"same": same_orbit(_group(group_name), omega, omega2)})


@main.group()
def rep() -> None:
    """Evaluate the representations."""


@rep.command("sigma")
@group_option
@click.option("--omega", required=True, callback=_vector)
@click.option("--elem", "elem_text", required=True)
@click.option("--vec", required=True, help="(L,m):re,im;...")
@_domain_errors
def rep_sigma(
    group_name: str, omega: np.ndarray, elem_text: str, vec: str
) -> None:
    gd = _group(group_name)
    g = parse_element(gd, elem_text)
    _emit(sigma_apply(gd, omega, g, parse_fin_supp(gd, vec)).to_list())


@rep.command("vhat")
@group_option
@click.option("--elem", "elem_text", required=True)
@click.option("--packet", required=True, callback=_packet)
@_domain_errors
def rep_vhat(group_name: str, elem_text: str, packet: GaussianPacket) -> None:
    gd = _group(group_name)
    g = parse_element(gd, elem_text)
    _emit(apply_Vhat(gd, g, PacketSum.of(packet)).to_list())


@rep.command("twist")
@group_option
@click.option("--omega", required=True, callback=_vector)
@click.option("--point", "-L", "point", required=True)
@_domain_errors
def rep_twist(group_name: str, omega: np.ndarray, point: str) -> None:
    gd = _group(group_name)
    value = twist_eval(gd, omega, gd.element(point))
    _emit({"re": value.real, "im": value.imag})


@rep.command("rho")
@group_option
@click.option("--omega", required=True, callback=_vector)
@click.option("--point", "-L", "point", required=True)
@click.option("--j", "j", type=int, required=True)
@click.option("--packet", required=True, callback=_packet)
@_domain_errors
def rep_rho(
    group_name: str,
    omega: np.ndarray,
    point: str,
    j: int,
    packet: GaussianPacket,
) -> None:
    gd = _group(group_name)
    cs = build_cross_section(gd, _settings().boundary_tol)
    value = rho_eval(gd, cs, packet, omega, gd.element(point), j)
    _emit({"re": value.real, "im": value.imag})


@main.command()
@click.option("--group", "-g", "groups", default="all", show_default=True)
@click.option(
    "--suite",
    "suites",
    default=",".join(DEFAULT_SUITES),
    show_default=True,
    help="Comma-separated suites, or 'all'.",
)
@click.option(
    "--seed", type=int, default=None, help="Defaults to TRIWAVE_SEED."
)
@click.option("--tol", type=float, default=None)
@_domain_errors
def verify(groups: str, suites: str, seed: int | None, tol: float | None):
    """Run verification suites and print the JSON report."""
    settings = _settings()
    report = run_verify(
        suites,
        groups,
        settings.seed if seed is None else seed,
        settings.tolerance if tol is None else tol,
        settings,
    )
    compact = click.get_current_context().find_root().obj["compact"]
    click.echo(report.to_json(None if compact else 2))
    if not report.ok:
        raise SystemExit(1)


@main.command("render")
@click.argument("kind", type=click.Choice(KINDS))
@group_option
@click.option("--omega", callback=_vector, help="Orbit frequency 'x,y'.")
@click.option("--extent", type=int, default=2, show_default=True)
@click.option("--output", "-o", type=click.Path(dir_okay=False))
@_domain_errors
def render_command(
    kind: str,
    group_name: str,
    omega: np.ndarray | None,
    extent: int,
    output: str | None,
) -> None:
    """Draw a lattice, an orbit or the cross-section as SVG."""
    gd = _group(group_name)
    if kind == "lattice":
        svg = render(kind, gd, extent=extent)
    elif kind == "orbits":
        if omega is None:
            raise click.UsageError("render orbits needs --omega")
        svg = render(kind, gd, omega=omega)
    else:
        svg = render(kind, gd, boundary_tol=_settings().boundary_tol)
    if output:
        with click.open_file(output, "w") as handle:
            handle.write(svg)
    else:
        click.echo(svg, nl=False)
