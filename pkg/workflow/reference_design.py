# Reference SAW modulator design workflow
# workflow/reference_design.py
import asyncio
import math
from pathlib import Path
from typing import Any, Dict, Optional

import numpy as np
from pydantic import BaseModel, Field

from analysis import modulation_depth, sideband_ratio_db, vpi_from_sideband_ratio
from cavity import (
    OpticalCavity,
    fsr_from_geometry,
    max_finesse_from_loss,
    sideband_enhancement,
    vpi_reduction,
)
from materials import load_material
from optics import (
    build_device,
    load_device_config,
    reference_device_path,
    scale_vpi_with_aperture,
    v_pi,
)
from resonator import fit_reflection, reflection_spectrum
from saw_solver import Boundary, electromechanical_coupling, solve_rayleigh
from utils.logger import setup_logger
from utils.output import render_json

logger = setup_logger("sawmod.workflow")


class ReferenceDesignReport(BaseModel):
    """Key numbers of the reference design, in the order they are derived."""

    velocity_free_m_s: float = Field(..., description="Free-surface SAW velocity.")
    velocity_metalized_m_s: float = Field(..., description="Metalized SAW velocity.")
    coupling_k2: float = Field(..., description="Electromechanical coupling K^2.")
    fitted_q: float = Field(..., description="Q recovered from a synthetic spectrum.")
    v_pi_V: float = Field(..., description="Single-pass half-wave voltage.")
    length_vpi_V_cm: float = Field(..., description="Length-V_pi product.")
    v_pi_long_aperture_V: float = Field(..., description="V_pi at the long aperture.")
    v_pi_cavity_V: float = Field(..., description="V_pi with the optical cavity.")
    cavity_enhancement: float = Field(..., description="Cavity sideband power gain.")
    loss_limited_finesse: float = Field(..., description="Finesse allowed by loss.")
    v_pi_from_sidebands_V: float = Field(
        ..., description="V_pi recovered from the heterodyne dB difference."
    )


class ReferenceDesignWorkflow:
    """Runs the whole design chain: SAW, resonator, modulator, cavity, readout."""

    def __init__(
        self,
        device_file: Optional[Path] = None,
        long_aperture_m: float = 50e-3,
        cavity_finesse: float = 15.0,
        loss_db_per_cm: float = 0.2,
        cavity_length_m: float = 5e-3,
        reference_vpi_V: float = 4.8,
        test_drive_V: float = 0.1,
        noise: float = 0.01,
        seed: int = 7,
    ):
        self.device_file = Path(device_file or reference_device_path())
        self.long_aperture_m = long_aperture_m
        self.cavity_finesse = cavity_finesse
        self.loss_db_per_cm = loss_db_per_cm
        self.cavity_length_m = cavity_length_m
        self.reference_vpi_V = reference_vpi_V
        self.test_drive_V = test_drive_V
        self.noise = noise
        self.seed = seed

        # Workflow state
        self.workflow_state: Dict[str, Any] = {}

    async def run(self) -> ReferenceDesignReport:
        logger.info("Step 1: solving free and metalized SAW in parallel")
        await self._step_1_saw()

        logger.info("Step 2: fitting a synthetic resonator spectrum")
        self._step_2_resonator()

        logger.info("Step 3: single-pass half-wave voltage")
        self._step_3_modulator()

        logger.info("Step 4: aperture scaling and cavity enhancement")
        self._step_4_cavity()

        logger.info("Step 5: heterodyne readout consistency")
        self._step_5_readout()

        return ReferenceDesignReport(**self.workflow_state["report"])

    async def _step_1_saw(self) -> None:
        config = load_device_config(self.device_file)
        material, _ = load_material(Path(config.material_file))
        free, metalized = await asyncio.gather(
            asyncio.to_thread(
                solve_rayleigh, material, Boundary.FREE, config.lambda_saw_m
            ),
            asyncio.to_thread(
                solve_rayleigh, material, Boundary.METALIZED, config.lambda_saw_m
            ),
        )
        self.workflow_state.update(
            {
                "config": config,
                "free": free,
                "metalized": metalized,
                "report": {
                    "velocity_free_m_s": free.velocity,
                    "velocity_metalized_m_s": metalized.velocity,
                    "coupling_k2": electromechanical_coupling(
                        free.velocity, metalized.velocity
                    ),
                },
                "step_1_complete": True,
            }
        )

    def _step_2_resonator(self) -> None:
        device = build_device(self.workflow_state["config"])
        r = device.resonator
        center = r.omega / (2.0 * math.pi)
        span = 10.0 * r.gamma / (2.0 * math.pi)
        frequencies = np.linspace(center - span, center + span, 801)
        spectrum = reflection_spectrum(r, frequencies, noise=self.noise, seed=self.seed)
        fit = fit_reflection(spectrum)
        self.workflow_state["device"] = device
        self.workflow_state["report"]["fitted_q"] = fit.q
        self.workflow_state["step_2_complete"] = True

    def _step_3_modulator(self) -> None:
        device = self.workflow_state["device"]
        result = v_pi(device)
        self.workflow_state["vpi"] = result
        self.workflow_state["report"].update(
            {"v_pi_V": result.v_pi_V, "length_vpi_V_cm": result.length_vpi_V_cm}
        )
        self.workflow_state["step_3_complete"] = True

    def _step_4_cavity(self) -> None:
        device = self.workflow_state["device"]
        single_pass = self.workflow_state["vpi"].v_pi_V
        long_aperture = scale_vpi_with_aperture(
            single_pass, device.resonator.width_w, self.long_aperture_m
        )
        fsr = fsr_from_geometry(device.photoelastic.n_y, self.long_aperture_m)
        cavity = OpticalCavity.critically_coupled(fsr, fsr / self.cavity_finesse)
        omega = device.resonator.omega
        self.workflow_state["report"].update(
            {
                "v_pi_long_aperture_V": long_aperture,
                "cavity_enhancement": sideband_enhancement(cavity, omega),
                "v_pi_cavity_V": vpi_reduction(
                    long_aperture, cavity.finesse, omega, cavity.kappa, cavity.kappa_ex
                ),
                "loss_limited_finesse": max_finesse_from_loss(
                    self.loss_db_per_cm, self.cavity_length_m
                ),
            }
        )
        self.workflow_state["step_4_complete"] = True

    def _step_5_readout(self) -> None:
        # both modulators driven by the same weak tone, as in the heterodyne setup
        single_pass = self.workflow_state["vpi"].v_pi_V
        delta_db = sideband_ratio_db(
            modulation_depth(self.test_drive_V, self.reference_vpi_V),
            modulation_depth(self.test_drive_V, single_pass),
        )
        self.workflow_state["report"]["v_pi_from_sidebands_V"] = (
            vpi_from_sideband_ratio(delta_db, self.reference_vpi_V)
        )
        self.workflow_state["step_5_complete"] = True


if __name__ == "__main__":
    report = asyncio.run(ReferenceDesignWorkflow().run())
    print(render_json(report), end="")
