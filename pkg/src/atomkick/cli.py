"""Command-line client for the computation service.

Each subcommand materializes one request model, runs it through the service
handlers (in process by default, or against a running server when --server
is given) and renders the response as CSV or JSON.  Human-friendly units are
accepted on the flags (eV, barn, eV/cm^3) and converted to SI before the
request is built; everything in the output is SI.

Exit codes: 0 success, 1 verification failure, 2 usage error.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click
import httpx

from .constants import quantity
from .scenarios import PRESET_NAMES, preset, preset_from_config, preset_to_config
from .service import handlers
from .service.models import (
    AtomParams,
    ChannelParams,
    CoefficientsRequest,
    CoefficientsResponse,
    EvolveRequest,
    EvolveResponse,
    ScenarioRequest,
    ScenarioResponse,
    SurvivalRequest,
    SurvivalResponse,
    VerifyRequest,
    VerifyResponse,
)

_CSV_HEADERS = {
    "coefficients": "n,c,c_squared",
    "survival": "n0,delta_e_j,p_n0,p_n0_minus_1",
    "evolve": "t_s,c_n0,c_n0_minus_1,deficit",
    "scenario": "t_s,c_n0,c_n0_minus_1,deficit",
    "verify": "check,grid,max_relative_error,tolerance,passed",
}

_ROUTES = {
    "coefficients": ("/coefficients", handlers.compute_coefficients,
                     CoefficientsResponse),
    "survival": ("/survival", handlers.compute_survival, SurvivalResponse),
    "evolve": ("/evolve", handlers.compute_evolve, EvolveResponse),
    "scenario": ("/scenario", handlers.compute_scenario, ScenarioResponse),
    "verify": ("/verify", handlers.run_verify, VerifyResponse),
}


def _dispatch(command: str, request, server: str | None):
    path, handler, response_cls = _ROUTES[command]
    if server is None:
        try:
            return handler(request)
        except ValueError as exc:
            raise click.UsageError(str(exc)) from exc
    reply = httpx.post(server.rstrip("/") + path, json=request.model_dump(),
                       timeout=300.0)
    if reply.status_code == 422:
        raise click.UsageError(str(reply.json().get("detail", reply.text)))
    reply.raise_for_status()
    return response_cls.model_validate(reply.json())


def _metadata_lines(metadata: dict) -> list[str]:
    return [f"# {key}: {metadata[key]}" for key in sorted(metadata)]


def _render(command: str, response, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(response.model_dump(), sort_keys=True, indent=2) + "\n"
    lines = _metadata_lines(response.metadata)
    lines.append(_CSV_HEADERS[command])
    if command == "coefficients":
        for row in response.rows:
            lines.append(f"{row.n},{row.c!r},{row.c_squared!r}")
    elif command == "survival":
        for row in response.rows:
            lines.append(f"{row.n0},{row.delta_e_j!r},{row.p_n0!r},"
                         f"{row.p_n0_minus_1!r}")
    elif command in ("evolve", "scenario"):
        for row in response.rows:
            lines.append(f"{row.t_s!r},{row.c_n0!r},{row.c_n0_minus_1!r},"
                         f"{row.deficit!r}")
    elif command == "verify":
        for check in response.checks:
            grid = check.grid_description.replace(",", ";")
            lines.append(f"{check.check_name},{grid},"
                         f"{check.max_relative_error!r},{check.tolerance!r},"
                         f"{check.passed}")
    return "\n".join(lines) + "\n"


def _emit(text: str, output: str | None) -> None:
    if output is None:
        click.echo(text, nl=False)
        return
    target = Path(output)
    if target.parent != Path("") and not target.parent.exists():
        raise click.UsageError(f"output directory {target.parent} does not exist")
    target.write_text(text, encoding="utf-8")


_format_option = click.option("--format", "fmt", type=click.Choice(["csv", "json"]),
                              default="csv", show_default=True,
                              help="Output format.")
_output_option = click.option("--output", default=None, metavar="PATH",
                              help="Write to PATH instead of stdout.")
_mass_option = click.option("--nucleus-mass", type=float, default=1.66e-27,
                            show_default=True, help="Nucleus mass in kg.")


@click.group()
@click.option("--server", default=None, metavar="URL",
              help="Base URL of a running service; default computes in process.")
@click.version_option()
@click.pass_context
def main(ctx, server):
    """Decoherence of excited atoms from sudden nuclear recoil."""
    ctx.obj = server


@main.command()
@click.option("--n0", type=click.IntRange(1, 150), required=True,
              help="Principal quantum number of the prepared state.")
@_mass_option
@click.option("--rd", type=float, default=None,
              help="Nuclear displacement radius in m.")
@click.option("--delta-e", type=float, default=None,
              help="Energy transferred to the nucleus, in eV.")
@_format_option
@_output_option
@click.pass_obj
def coefficients(server, n0, nucleus_mass, rd, delta_e, fmt, output):
    """Eigenstate decomposition after one scattering: rows (n, c, c^2)."""
    if (rd is None) == (delta_e is None):
        raise click.UsageError("provide exactly one of --rd or --delta-e")
    request = CoefficientsRequest(
        atom=AtomParams(n0=n0, nucleus_mass_kg=nucleus_mass),
        rd_m=rd,
        delta_e_j=None if delta_e is None else quantity(delta_e, "eV").value,
    )
    response = _dispatch("coefficients", request, server)
    _emit(_render("coefficients", response, fmt), output)


@main.command()
@click.option("--n0-min", type=click.IntRange(1, 150), default=1,
              show_default=True)
@click.option("--n0-max", type=click.IntRange(1, 150), default=60,
              show_default=True)
@_mass_option
@click.option("--delta-e", "delta_e", type=float, multiple=True,
              help="Energy transfer in eV; repeatable.")
@click.option("--mp", type=float, default=None,
              help="Projectile mass in kg (with --vp).")
@click.option("--vp", type=float, multiple=True,
              help="Projectile velocity in m/s; repeatable (with --mp).")
@_format_option
@_output_option
@click.pass_obj
def survival(server, n0_min, n0_max, nucleus_mass, delta_e, mp, vp, fmt, output):
    """Survival and neighbor populations swept over the excitation level."""
    if bool(delta_e) == bool(vp):
        raise click.UsageError("provide --delta-e values or --mp with --vp values")
    if vp and mp is None:
        raise click.UsageError("--vp requires --mp")
    request = SurvivalRequest(
        n0_min=n0_min,
        n0_max=n0_max,
        nucleus_mass_kg=nucleus_mass,
        delta_e_j=[quantity(e, "eV").value for e in delta_e] if delta_e else None,
        particle_mass_kg=mp,
        velocities_m_per_s=list(vp) if vp else None,
    )
    response = _dispatch("survival", request, server)
    _emit(_render("survival", response, fmt), output)


@main.command()
@click.option("--n0", type=click.IntRange(1, 150), required=True)
@_mass_option
@click.option("--rd", type=float, default=None,
              help="Displacement radius per collision, in m.")
@click.option("--delta-e", type=float, default=None,
              help="Energy transfer per collision, in eV.")
@click.option("--sigma", type=float, required=True,
              help="Collision cross section in barn.")
@click.option("--flux", type=float, required=True,
              help="Particle flux in 1/(m^2 s).")
@click.option("--t-max", type=float, required=True, help="End time in s.")
@click.option("--t-points", type=click.IntRange(2, 100_000), default=100,
              show_default=True)
@_format_option
@_output_option
@click.pass_obj
def evolve(server, n0, nucleus_mass, rd, delta_e, sigma, flux, t_max,
           t_points, fmt, output):
    """Coefficient evolution under a custom steady collision channel."""
    if (rd is None) == (delta_e is None):
        raise click.UsageError("provide exactly one of --rd or --delta-e")
    request = EvolveRequest(
        atom=AtomParams(n0=n0, nucleus_mass_kg=nucleus_mass),
        rd_m=rd,
        delta_e_j=None if delta_e is None else quantity(delta_e, "eV").value,
        cross_section_m2=quantity(sigma, "barn").value,
        flux_per_m2_per_s=flux,
        t_max_s=t_max,
        t_points=t_points,
    )
    response = _dispatch("evolve", request, server)
    _emit(_render("evolve", response, fmt), output)


@main.command()
@click.option("--preset", "preset_name", default=None,
              type=click.Choice(PRESET_NAMES), help="Packaged environment.")
@click.option("--config", "config_path", default=None, metavar="FILE",
              type=click.Path(exists=True, dir_okay=False),
              help="Scenario config file (key = value block).")
@click.option("--eta-e", type=float, default=None,
              help="Photon energy density in eV/cm^3 (custom photon channel).")
@click.option("--nu", type=float, default=None,
              help="Photon frequency in Hz (custom photon channel).")
@click.option("--mp", type=float, default=None,
              help="Particle mass in kg (custom massive channel).")
@click.option("--vp", type=float, default=None,
              help="Particle velocity in m/s (custom massive channel).")
@click.option("--sigma", type=float, default=None,
              help="Cross section in barn (custom massive channel).")
@click.option("--flux", type=float, default=None,
              help="Flux in 1/(m^2 s) (custom massive channel).")
@click.option("--n0", type=click.IntRange(1, 150), default=60, show_default=True)
@_mass_option
@click.option("--t-max", type=float, required=True, help="End time in s.")
@click.option("--t-points", type=click.IntRange(2, 100_000), default=100,
              show_default=True)
@_format_option
@_output_option
@click.pass_obj
def scenario(server, preset_name, config_path, eta_e, nu, mp, vp, sigma, flux,
             n0, nucleus_mass, t_max, t_points, fmt, output):
    """Survival timeline for a packaged or custom environment."""
    channel = None
    if config_path is not None:
        parsed = preset_from_config(Path(config_path).read_text(encoding="utf-8"))
        channel = _channel_params(parsed)
    elif eta_e is not None:
        if nu is None:
            raise click.UsageError("--eta-e needs --nu for the photon channel")
        channel = ChannelParams(
            kind="photon",
            energy_density_j_per_m3=quantity(eta_e, "eV/cm^3").value,
            frequency_hz=nu,
        )
    elif mp is not None or vp is not None or sigma is not None or flux is not None:
        if None in (mp, vp, sigma, flux):
            raise click.UsageError(
                "custom massive channels need --mp, --vp, --sigma and --flux")
        channel = ChannelParams(
            kind="massive",
            particle_mass_kg=mp,
            velocity_m_per_s=vp,
            cross_section_m2=quantity(sigma, "barn").value,
            flux_per_m2_per_s=flux,
        )
    if (preset_name is None) == (channel is None):
        raise click.UsageError(
            "provide exactly one of --preset, --config, or a custom channel")
    request = ScenarioRequest(
        atom=AtomParams(n0=n0, nucleus_mass_kg=nucleus_mass),
        preset=preset_name,
        channel=channel,
        t_max_s=t_max,
        t_points=t_points,
    )
    response = _dispatch("scenario", request, server)
    _emit(_render("scenario", response, fmt), output)


def _channel_params(parsed) -> ChannelParams:
    from .scenarios import PhotonChannel

    if isinstance(parsed.channel, PhotonChannel):
        return ChannelParams(
            kind="photon",
            energy_density_j_per_m3=parsed.channel.energy_density,
            frequency_hz=parsed.channel.frequency,
        )
    return ChannelParams(
        kind="massive",
        particle_mass_kg=parsed.channel.particle_mass,
        velocity_m_per_s=parsed.channel.velocity,
        cross_section_m2=parsed.channel.cross_section,
        flux_per_m2_per_s=parsed.channel.flux,
    )


@main.command()
@click.option("--inject-fault", is_flag=True, hidden=True,
              help="Negative control: corrupt one check to prove failure "
                   "handling.")
@_format_option
@_output_option
@click.pass_obj
def verify(server, inject_fault, fmt, output):
    """Run the full brute-force verification sweep; exit 0 iff all passed."""
    request = VerifyRequest(inject_fault=inject_fault)
    response = _dispatch("verify", request, server)
    _emit(_render("verify", response, fmt), output)
    if not response.all_passed:
        sys.exit(1)


@main.command()
@click.option("--name", default=None, type=click.Choice(PRESET_NAMES),
              help="Emit a single preset instead of all five.")
@click.option("--format", "fmt", type=click.Choice(["kv", "json"]),
              default="kv", show_default=True,
              help="kv is the scenario config-file format.")
@_output_option
def presets(name, fmt, output):
    """Packaged environments in the scenario config-file format."""
    selected = [preset(name)] if name else [preset(p) for p in PRESET_NAMES]
    if fmt == "json":
        payload = handlers.list_presets()
        if name:
            payload.presets = [p for p in payload.presets if p.name == name]
        text = json.dumps(payload.model_dump(), sort_keys=True, indent=2) + "\n"
    else:
        text = "\n".join(preset_to_config(p) for p in selected)
    _emit(text, output)


if __name__ == "__main__":
    main()
