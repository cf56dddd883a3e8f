# cli/main.py
"""Command-line front end.

Results go to stdout as JSON (fixed key order, floats as %.9e) or CSV; errors
go to stderr as one `error: <Type>: <message>` line with exit code 2 for bad
input, 3 for non-convergence and 4 for degenerate physics.
"""

from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Tuple

import typer

from cli.manifest import RunManifest
from handlers.error_handler import ConvergenceError, ErrorHandler
from saw_solver import Boundary
from utils.basetools import (
    PROFILE_HEADER,
    CavityInput,
    S11FitInput,
    SawVelocityInput,
    SidebandInput,
    VpiInput,
    VpiSweepInput,
    cavity_tool,
    iter_vpi_sweep,
    s11_fit_tool,
    saw_velocity_tool,
    sideband_tool,
    sweep_header,
    vpi_sweep_tool,
    vpi_tool,
)
from utils.logger import setup_logger
from utils.output import csv_cell, render_json, write_csv

app = typer.Typer(
    add_completion=False,
    no_args_is_help=True,
    help="SAW acousto-optic phase modulator design and analysis.",
)
logger = setup_logger("sawmod.cli")
error_handler = ErrorHandler()

NoManifest = typer.Option(False, "--no-manifest", help="Omit the run manifest.")


def _emit(
    document: Dict[str, Any],
    command: str,
    config_paths: List[str],
    overrides: Dict[str, Any],
    no_manifest: bool,
) -> None:
    if not no_manifest:
        manifest = RunManifest(
            command=command,
            config_paths=config_paths,
            overrides={k: v for k, v in overrides.items() if v is not None},
        )
        document = {**document, "manifest": manifest.model_dump()}
    typer.echo(render_json(document), nl=False)


def _run(command: str, body: Callable[[], None]) -> None:
    logger.debug(f"{command} started")
    try:
        body()
    except typer.Exit:
        raise
    except Exception as e:
        typer.echo(error_handler.handle_exception(e), err=True)
        raise typer.Exit(code=ErrorHandler.exit_code(e))
    logger.debug(f"{command} finished")


@app.command("solve-saw")
def solve_saw(
    material: Optional[Path] = typer.Option(
        None, "--material", help="Material JSON; bundled lithium niobate if omitted."
    ),
    boundary: Boundary = typer.Option(Boundary.FREE, "--boundary"),
    wavelength_m: float = typer.Option(40e-6, "--wavelength-m"),
    bracket: Tuple[float, float] = typer.Option(
        (None, None), "--bracket", help="Velocity search interval LOW HIGH, m/s."
    ),
    profile_out: Optional[Path] = typer.Option(
        None, "--profile-out", help="Write the complex depth profile as CSV."
    ),
    profile_points: int = typer.Option(121, "--profile-points"),
    no_manifest: bool = NoManifest,
) -> None:
    """Solve the Rayleigh-type SAW and report its velocity."""

    def body() -> None:
        has_bracket = bracket is not None and bracket[0] is not None
        result = saw_velocity_tool(
            SawVelocityInput(
                material_file=str(material) if material else None,
                boundary=boundary,
                wavelength_m=wavelength_m,
                bracket_m_s=tuple(bracket) if has_bracket else None,
                profile_points=profile_points if profile_out else 0,
            )
        )
        if profile_out:
            write_csv(profile_out, PROFILE_HEADER, result.profile)
        _emit(
            result.model_dump(mode="json", exclude={"profile"}),
            "solve-saw",
            [str(material)] if material else [],
            {
                "boundary": boundary.value,
                "wavelength_m": wavelength_m,
                "bracket_m_s": list(bracket) if has_bracket else None,
            },
            no_manifest,
        )

    _run("solve-saw", body)


@app.command("fit-s11")
def fit_s11(
    input_file: Path = typer.Option(..., "--in", help="Spectrum CSV."),
    complex_fit: bool = typer.Option(False, "--complex", help="Fit complex S11."),
    no_manifest: bool = NoManifest,
) -> None:
    """Fit the resonator reflection model to a measured spectrum."""

    def body() -> None:
        result = s11_fit_tool(
            S11FitInput(file_path=str(input_file), complex_fit=complex_fit)
        )
        _emit(
            result.model_dump(),
            "fit-s11",
            [str(input_file)],
            {"complex": complex_fit},
            no_manifest,
        )
        if not result.converged:
            raise ConvergenceError("reflection fit did not converge")

    _run("fit-s11", body)


@app.command("vpi")
def vpi(
    device: Path = typer.Option(..., "--device", help="Device JSON."),
    z_offset_m: Optional[float] = typer.Option(None, "--z-offset-m"),
    sweep: Tuple[str, float, float, int] = typer.Option(
        (None, None, None, None),
        "--sweep",
        help="PARAM FROM TO STEPS over z_offset_m, center_depth_m or width_W_m.",
    ),
    out: Optional[Path] = typer.Option(
        None, "--out", help="Sweep CSV; stdout when omitted."
    ),
    no_manifest: bool = NoManifest,
) -> None:
    """Half-wave voltage of a device, at one point or over a sweep."""

    def body() -> None:
        overrides: Dict[str, Any] = {"z_offset_m": z_offset_m}
        if sweep is None or sweep[0] is None:
            result = vpi_tool(VpiInput(device_file=str(device), z_offset_m=z_offset_m))
            _emit(result.model_dump(), "vpi", [str(device)], overrides, no_manifest)
            return

        parameter, start, stop, steps = sweep
        sweep_input = VpiSweepInput(
            device_file=str(device),
            parameter=parameter,
            start=start,
            stop=stop,
            steps=steps,
            z_offset_m=z_offset_m,
            out_file=None if out is None else str(out),
        )
        if out is None:
            points = iter_vpi_sweep(sweep_input)
            typer.echo(",".join(sweep_header(parameter)))
            for point in points:
                typer.echo(f"{csv_cell(point.value)},{csv_cell(point.v_pi_V)}")
            return
        result_sweep = vpi_sweep_tool(sweep_input)
        overrides["sweep"] = [parameter, start, stop, steps]
        _emit(
            {
                "sweep_parameter": parameter,
                "points": len(result_sweep.points),
                "out": str(out),
            },
            "vpi",
            [str(device)],
            overrides,
            no_manifest,
        )

    _run("vpi", body)


@app.command("cavity")
def cavity(
    fsr_hz: Optional[float] = typer.Option(None, "--fsr-hz"),
    kappa_hz: Optional[float] = typer.Option(None, "--kappa-hz"),
    kappa_ex_hz: Optional[float] = typer.Option(None, "--kappa-ex-hz"),
    omega_hz: float = typer.Option(0.0, "--omega-hz", help="SAW frequency, Hz."),
    finesse: Optional[float] = typer.Option(None, "--finesse"),
    vpi_v: Optional[float] = typer.Option(None, "--vpi", help="Single-pass V_pi."),
    critical: bool = typer.Option(
        False, "--critical", help="kappa_ex = kappa / 2; default without --kappa-ex-hz."
    ),
    wavelength_m: Optional[float] = typer.Option(
        None, "--wavelength-m", help="Optical wavelength for Q."
    ),
    no_manifest: bool = NoManifest,
) -> None:
    """Finesse, Q and the cavity-reduced half-wave voltage."""

    def body() -> None:
        params = {
            "fsr_hz": fsr_hz,
            "kappa_hz": kappa_hz,
            "kappa_ex_hz": kappa_ex_hz,
            "omega_hz": omega_hz,
            "finesse": finesse,
            "vpi_V": vpi_v,
            "critical": critical,
            "wavelength_m": wavelength_m,
        }
        result = cavity_tool(CavityInput(**params))
        _emit(result.model_dump(), "cavity", [], params, no_manifest)

    _run("cavity", body)


@app.command("sideband")
def sideband(
    delta_db: float = typer.Option(
        ..., "--delta-db", help="Reference minus device sideband power, dB."
    ),
    vpi_ref_v: float = typer.Option(..., "--vpi-ref-v", help="Reference V_pi."),
    beta_exact: bool = typer.Option(False, "--beta-exact"),
    drive_v: Optional[float] = typer.Option(None, "--drive-v"),
    no_manifest: bool = NoManifest,
) -> None:
    """V_pi from a heterodyne sideband power difference."""

    def body() -> None:
        params = {
            "delta_db": delta_db,
            "vpi_ref_V": vpi_ref_v,
            "beta_exact": beta_exact,
            "drive_V": drive_v,
        }
        result = sideband_tool(SidebandInput(**params))
        _emit(result.model_dump(), "sideband", [], params, no_manifest)

    _run("sideband", body)


def main() -> None:
    app()


if __name__ == "__main__":
    main()
