import numpy as np
import pytest

from esdlab import analytic
from esdlab.code41 import CODE
from esdlab.pipeline import (
    EsdReport,
    coded_state,
    coded_state_factorized,
    concurrence_curve,
    crossover,
    esd_report,
    esd_threshold,
    fidelity_curve,
    gamma_grid,
    logical_channel,
    run_coded,
    run_uncoded,
    sweep,
)
from esdlab.states import Family, StateFamily

PI = np.pi

# solver output on the eight-qubit pipeline (tol 1e-9), confirmed by the
# factorized logical-channel path
CODED_THRESHOLDS = {
    ("phi", PI / 4): 0.4798896709084511,
    ("phi", PI / 12): 0.41251218706369414,
    ("psi", PI / 12): 0.38311034291982654,
    ("psi", PI / 4): 0.4824709668755531,
}


@pytest.mark.parametrize("family", list(Family))
def test_zero_damping(family):
    spec = StateFamily(family, 0.4, 0.2)
    for run in (run_uncoded, run_coded):
        m = run(spec, 0.0)
        assert m.fidelity == pytest.approx(1.0, abs=1e-12)
        expected = 0.0 if family is Family.VARPHI else abs(np.sin(0.8))
        assert m.concurrence == pytest.approx(expected, abs=1e-12)


def test_psi_quarter_damping():
    assert run_uncoded(StateFamily("psi", 1.1), 0.25).fidelity == pytest.approx(0.75, abs=1e-12)


def test_psi_bell_fidelity_equals_concurrence():
    for g in np.linspace(0, 1, 11):
        m = run_uncoded(StateFamily("psi", PI / 4), g)
        assert m.fidelity == pytest.approx(1 - g, abs=1e-12)
        assert m.concurrence == pytest.approx(1 - g, abs=1e-12)


def test_coded_phi_small_damping():
    f = run_coded(StateFamily("phi", PI / 4), 0.01).fidelity
    assert f == pytest.approx(0.9996, abs=1e-5)


def test_coded_phi_esd_while_uncoded_survives():
    spec = StateFamily("phi", PI / 4)
    assert esd_threshold(concurrence_curve(spec, coded=True)) < 1
    assert all(run_uncoded(spec, g).concurrence > 0 for g in np.linspace(0, 0.999, 40))


def test_encoding_alone_is_lossless():
    m = run_coded(StateFamily("psi", 0.3, 0.5), 0.0, recover=False)
    assert m.fidelity == pytest.approx(1.0, abs=1e-12)


def test_trace_after_every_stage(backend):
    spec = StateFamily("phi", 0.6, 0.1)
    for g in (0.0, 0.2, 0.7, 1.0):
        rho = coded_state(spec, g, backend=backend)
        assert abs(np.trace(rho) - 1) <= 1e-12


def test_backends_agree_on_pipeline():
    from esdlab.qlinalg import available_backends

    spec = StateFamily("varphi", 0.7, 0.4)
    states = [coded_state(spec, 0.35, backend=b) for b in available_backends()]
    for s in states[1:]:
        np.testing.assert_allclose(s, states[0], atol=1e-13)


def test_factorized_channel_matches_full_register(rng):
    for fam in Family:
        spec = StateFamily(fam, rng.uniform(0, PI), rng.uniform(0, PI))
        for g in (0.0, 0.13, 0.5, 0.92, 1.0):
            np.testing.assert_allclose(coded_state_factorized(spec, g), coded_state(spec, g), atol=1e-12)


def test_logical_channel_trace_preserving():
    s = logical_channel(0.4)
    # trace of the output is <00| + <11| applied to vec(out)
    t = np.array([1, 0, 0, 1])
    np.testing.assert_allclose(t @ s, t, atol=1e-12)


def test_endpoint_values():
    for a in (PI / 12, PI / 5):
        spec = StateFamily("phi", a)
        m = run_uncoded(spec, 1.0)
        assert m.concurrence == 0.0
        assert m.fidelity == pytest.approx(np.sin(a) ** 2, abs=1e-12)
        assert run_uncoded(StateFamily("psi", a), 1.0).concurrence == 0.0


@pytest.mark.parametrize("family", [Family.PHI, Family.PSI])
def test_small_gamma_scaling(family):
    spec = StateFamily(family, PI / 7)
    coded = [(1 - run_coded(spec, g).fidelity) / g**2 for g in (1e-2, 1e-3, 1e-4)]
    assert abs(coded[1] - coded[2]) < abs(coded[0] - coded[1])
    assert coded[2] == pytest.approx((1 - analytic.coded_fidelity_series(family, PI / 7, 0, 1.0)), rel=1e-3)
    linear = 2 * np.cos(PI / 7) ** 2 if family is Family.PHI else 1.0
    unc = [(1 - run_uncoded(spec, g).fidelity) / g for g in (1e-3, 1e-5)]
    assert unc[1] == pytest.approx(linear, rel=1e-4)


@pytest.mark.parametrize("alpha", [PI / 12, PI / 8, PI / 6])
def test_threshold_on_analytic_curve(alpha):
    g = esd_threshold(lambda x: analytic.uncoded_phi_concurrence(alpha, 0, x))
    assert g == pytest.approx(np.tan(alpha), abs=1e-6)


def test_threshold_uncoded_phi_numeric():
    g = esd_threshold(concurrence_curve(StateFamily("phi", PI / 12), coded=False))
    assert g == pytest.approx(0.267949, abs=1e-6)


@pytest.mark.parametrize("alpha", [0.2, PI / 4, 1.3])
def test_threshold_uncoded_psi_none(alpha):
    assert esd_threshold(concurrence_curve(StateFamily("psi", alpha), coded=False)) is None


def test_threshold_zero_curve():
    assert esd_threshold(lambda g: 0.0) == 0.0


def test_threshold_ignores_revival():
    # dips to zero then revives before dying for good at 0.8
    def curve(g):
        return 0.0 if 0.3 <= g <= 0.4 or g >= 0.8 else 0.5

    assert esd_threshold(curve) == pytest.approx(0.8, abs=1e-6)


def test_threshold_bad_tol():
    with pytest.raises(ValueError):
        esd_threshold(lambda g: 1.0, tol=0)


@pytest.mark.parametrize("key", list(CODED_THRESHOLDS))
def test_coded_threshold_regression(key):
    family, alpha = key
    g = esd_threshold(concurrence_curve(StateFamily(family, alpha), coded=True, fast=True))
    assert g == pytest.approx(CODED_THRESHOLDS[key], abs=1e-6)


def test_crossover_identical_curves():
    assert crossover(np.cos, np.cos) is None


def test_crossover_simple():
    assert crossover(lambda g: 1 - g, lambda g: 0.6 + 0 * g) == pytest.approx(0.4, abs=1e-6)


def test_crossover_phi_coded_stays_ahead():
    spec = StateFamily("phi", PI / 12)
    coded, unc = concurrence_curve(spec, True, fast=True), concurrence_curve(spec, False)
    assert coded(0.05) > unc(0.05)
    assert crossover(coded, unc) is None


def test_crossover_psi_fidelity():
    spec = StateFamily("psi", PI / 4)
    g = crossover(fidelity_curve(spec, True, fast=True), fidelity_curve(spec, False))
    assert 0 < g < 1
    assert run_coded(spec, g - 0.01).fidelity > run_uncoded(spec, g - 0.01).fidelity
    assert run_coded(spec, g + 0.01).fidelity < run_uncoded(spec, g + 0.01).fidelity


def test_esd_report_fields():
    r = esd_report(StateFamily("psi", PI / 4), fast=True)
    assert isinstance(r, EsdReport)
    assert r.gamma_star_uncoded is None
    assert r.gamma_star_coded == pytest.approx(CODED_THRESHOLDS[("psi", PI / 4)], abs=1e-6)
    assert 0 < r.crossover_gamma < r.gamma_star_coded


def test_sweep_rows_and_disabled_paths():
    rows = sweep(StateFamily("phi", 0.5), [0.0, 0.5, 1.0], coded=False)
    assert [r.gamma for r in rows] == [0.0, 0.5, 1.0]
    assert all(r.fidelity_coded is None and r.concurrence_coded is None for r in rows)
    assert all(r.fidelity_uncoded is not None for r in rows)


def test_sweep_fast_equals_full():
    spec = StateFamily("psi", 0.4)
    a = sweep(spec, np.linspace(0, 1, 6))
    b = sweep(spec, np.linspace(0, 1, 6), fast=True)
    for ra, rb in zip(a, b):
        assert ra.fidelity_coded == pytest.approx(rb.fidelity_coded, abs=1e-12)
        assert ra.concurrence_coded == pytest.approx(rb.concurrence_coded, abs=1e-12)


def test_gamma_grid():
    assert len(gamma_grid()) == 201
    np.testing.assert_array_equal(gamma_grid(0.0, 0.0), [0.0])
    with pytest.raises(ValueError):
        gamma_grid(0.5, 0.2)


def test_invalid_gamma():
    with pytest.raises(ValueError):
        run_coded(StateFamily("phi", 0.1), 1.5)


def test_mutated_code_fails_loudly():
    from esdlab.code41 import FourQubitCode
    from esdlab.errors import LeakageError, NumericalError
    from esdlab.qlinalg import ket

    bad = FourQubitCode(zero_l=(ket("0000") - ket("1111")) / np.sqrt(2))
    with pytest.raises((LeakageError, NumericalError)):
        run_coded(StateFamily("phi", 0.3), 0.2, code=bad)
    assert CODE.completeness_error() <= 1e-12
