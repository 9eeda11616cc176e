"""Self-check suite: numerical results against closed forms and structural identities.

Each check returns a :class:`CheckResult`; an exception raised inside a check
counts as a failure rather than aborting the run.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import analytic
from .channels import kraus_pair
from .code41 import CODE, FourQubitCode, syndrome_bits
from .metrics import concurrence
from .pipeline import (
    concurrence_curve,
    coded_state,
    esd_threshold,
    run_coded,
    run_uncoded,
    uncoded_state,
)
from .qlinalg import ket, projector
from .states import Family, StateFamily

STRUCT_TOL = 1e-12


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


def _kraus_completeness(code: FourQubitCode) -> CheckResult:
    worst = max(kraus_pair(g).completeness_error() for g in np.linspace(0.0, 1.0, 101))
    return CheckResult("kraus_completeness", worst <= STRUCT_TOL, f"max error {worst:.2e}")


def _basis_orthonormal(code: FourQubitCode) -> CheckResult:
    b = code.basis_matrix
    err = float(np.abs(b.conj().T @ b - np.eye(16)).max())
    return CheckResult("syndrome_basis_orthonormal", err <= STRUCT_TOL, f"max |G - I| {err:.2e}")


def _unitary(code: FourQubitCode) -> CheckResult:
    u = code.syndrome_unitary()
    err = float(np.abs(u.conj().T @ u - np.eye(16)).max())
    return CheckResult("syndrome_unitary", err <= STRUCT_TOL, f"max |U^dag U - I| {err:.2e}")


def _recovery_completeness(code: FourQubitCode) -> CheckResult:
    err = code.completeness_error()
    return CheckResult("recovery_completeness", err <= STRUCT_TOL, f"max error {err:.2e}")


def _projector_vs_unitary(code: FourQubitCode) -> CheckResult:
    # measuring qubits 2-4 after U is the same as projecting onto span{R_k0, R_k1}
    u = code.syndrome_unitary()
    err = 0.0
    for k in range(8):
        s = projector(ket(syndrome_bits(k)))
        via_u = u.conj().T @ np.kron(np.eye(2), s) @ u
        err = max(err, float(np.abs(via_u - code.syndrome_projector(k)).max()))
    return CheckResult("syndrome_projectors", err <= STRUCT_TOL, f"max error {err:.2e}")


def _single_jump(code: FourQubitCode) -> CheckResult:
    err = 0.0
    for k in range(1, 5):
        for i, r in enumerate(code.basis[k]):
            out = sum(op @ projector(r) @ op.conj().T for op in code.recovery_kraus)
            err = max(err, float(np.abs(out - projector(code.codewords[i])).max()))
    return CheckResult("single_jump_correction", err <= STRUCT_TOL, f"max error {err:.2e}")


def _decode_encode(code: FourQubitCode) -> CheckResult:
    rng = np.random.default_rng(7)
    err = 0.0
    for _ in range(20):
        psi = rng.normal(size=4) + 1j * rng.normal(size=4)
        psi /= np.linalg.norm(psi)
        rho = projector(code.encode_two_qubits(psi))
        err = max(err, float(np.abs(code.decode(rho) - projector(psi)).max()))
    return CheckResult("decode_encode_identity", err <= STRUCT_TOL, f"max error {err:.2e}")


def _uncoded_exact(code: FourQubitCode) -> CheckResult:
    err = 0.0
    for fam in (Family.PHI, Family.PSI):
        for alpha in (np.pi / 12, np.pi / 5, np.pi / 4, 1.2):
            spec = StateFamily(fam, alpha, 0.3)
            for g in np.linspace(0.0, 1.0, 101):
                f = run_uncoded(spec, g).fidelity
                err = max(err, abs(f - analytic.uncoded_fidelity_exact(fam, alpha, 0.3, g)))
    return CheckResult("uncoded_fidelity_exact", err <= STRUCT_TOL, f"max |F_numeric - F_exact| {err:.2e}")


def _coded_series(code: FourQubitCode) -> CheckResult:
    worst = []
    for fam in Family:
        for alpha in (np.pi / 12, np.pi / 4):
            spec = StateFamily(fam, alpha, 0.0)
            res = [
                abs(run_coded(spec, g, code=code).fidelity - analytic.coded_fidelity_series(fam, alpha, 0.0, g))
                for g in (1e-2, 1e-3, 1e-4)
            ]
            worst += [res[0] / res[1], res[1] / res[2]]
    ok = all(500.0 <= r <= 2000.0 for r in worst)
    return CheckResult("coded_series_cubic_remainder", ok, f"residual ratios per decade in [{min(worst):.0f}, {max(worst):.0f}]")


def _phi_threshold(code: FourQubitCode) -> CheckResult:
    err = 0.0
    for alpha in (np.pi / 12, np.pi / 8, np.pi / 6):
        g = esd_threshold(concurrence_curve(StateFamily(Family.PHI, alpha), coded=False))
        err = max(err, abs(g - abs(np.tan(alpha))) if g is not None else np.inf)
    return CheckResult("uncoded_phi_threshold", err <= 1e-6, f"max |gamma* - tan(alpha)| {err:.2e}")


def _phi_concurrence(code: FourQubitCode) -> CheckResult:
    err = 0.0
    for alpha in np.linspace(0.05, 1.5, 8):
        for g in np.linspace(0.0, 1.0, 21):
            c = concurrence(uncoded_state(StateFamily(Family.PHI, alpha), g))
            err = max(err, abs(c - analytic.uncoded_phi_concurrence(alpha, 0.0, g)))
    return CheckResult("uncoded_phi_concurrence", err <= 1e-10, f"max error {err:.2e}")


def _coded_trace(code: FourQubitCode) -> CheckResult:
    err = 0.0
    for g in (0.0, 0.1, 0.5, 0.9, 1.0):
        rho = coded_state(StateFamily(Family.PSI, np.pi / 7, 0.4), g, code=code)
        err = max(err, abs(np.trace(rho).real - 1.0))
    return CheckResult("coded_trace", err <= STRUCT_TOL, f"max |tr - 1| {err:.2e}")


CHECKS: tuple[Callable[[FourQubitCode], CheckResult], ...] = (
    _kraus_completeness,
    _basis_orthonormal,
    _unitary,
    _recovery_completeness,
    _projector_vs_unitary,
    _single_jump,
    _decode_encode,
    _coded_trace,
    _uncoded_exact,
    _phi_concurrence,
    _coded_series,
    _phi_threshold,
)


def run_checks(code: FourQubitCode = CODE) -> list[CheckResult]:
    results = []
    for check in CHECKS:
        name = check.__name__.lstrip("_")
        try:
            results.append(check(code))
        except Exception as exc:  # a crash is a failed check
            results.append(CheckResult(name, False, f"{type(exc).__name__}: {exc}"))
    return results
