import numpy as np
import pytest

from cforflow.kernels import (HERMITE, RSK, KernelError, KernelSpec, halfgrid_stencil,
                              hermite_kernel_value, rsk_kernel_value, stencil)

HK = KernelSpec(HERMITE, 32, 3.05, 88, 1.0)
RK = KernelSpec(RSK, 32, 3.2, delta=1.0)

# frozen from two independent 40-digit computations (exact rational partial
# sums and mpmath Hermite evaluation)
HERMITE_VALUE_AT_0 = 0.9873365035557614
HERMITE_VALUE_AT_1 = 0.0123734431546444


def test_spec_validation():
    with pytest.raises(KernelError):
        KernelSpec("sinc", 32, 3.05)
    with pytest.raises(KernelError):
        KernelSpec(HERMITE, 0, 3.05)
    with pytest.raises(KernelError):
        KernelSpec(HERMITE, 32, -1.0)
    with pytest.raises(KernelError):
        KernelSpec(HERMITE, 32, 3.05, n=87)
    with pytest.raises(KernelError):
        KernelSpec(HERMITE, 32, 3.05, delta=0.0)
    assert KernelSpec(HERMITE, 32, 3.05, 88, 0.1).sigma == pytest.approx(0.305)


def test_hermite_value_even():
    for x in (0.3, 1.7, 5.0, 17.2):
        assert hermite_kernel_value(x, HK) == pytest.approx(hermite_kernel_value(-x, HK), abs=0)


def test_hermite_discrete_unit_sum():
    j = np.arange(-32, 33)
    total = sum(hermite_kernel_value(float(x), HK) for x in j)
    assert abs(total * HK.delta - 1.0) < 1e-10


def test_hermite_frozen_values():
    assert hermite_kernel_value(0.0, HK) == pytest.approx(HERMITE_VALUE_AT_0, rel=1e-15)
    assert hermite_kernel_value(1.0, HK) == pytest.approx(HERMITE_VALUE_AT_1, rel=1e-12)


def test_hermite_family_mismatch():
    with pytest.raises(KernelError):
        hermite_kernel_value(0.0, RK)
    with pytest.raises(KernelError):
        rsk_kernel_value(0.0, HK)


def test_rsk_values():
    assert rsk_kernel_value(0.0, RK) == 1.0
    for m in (1, 2, 7, -3):
        # sin(pi*m) rounds to ~1e-17, not exactly zero
        assert rsk_kernel_value(m * RK.delta, RK) == pytest.approx(0.0, abs=1e-15)
    for x in (0.4, 1.3, 9.7):
        assert rsk_kernel_value(x, RK) == pytest.approx(rsk_kernel_value(-x, RK), abs=0)


def test_stencil_order_validation():
    with pytest.raises(KernelError):
        stencil(HK, 3)


def test_q1_antisymmetric_to_the_bit():
    for spec in (HK, RK):
        sw = stencil(spec, 1)
        assert sw.weights[32] == 0.0
        assert np.max(np.abs(sw.weights + sw.weights[::-1])) == 0.0
        # pairwise cancellation is exact; a serial sum only cancels to rounding
        assert abs(sw.weights.sum()) < 1e-15


def test_q0_q2_symmetric():
    for spec in (HK, RK):
        for q in (0, 2):
            sw = stencil(spec, q)
            assert np.max(np.abs(sw.weights - sw.weights[::-1])) == 0.0


def test_q1_differentiates_linears_exactly():
    for spec in (HK, RK):
        sw = stencil(spec, 1)
        j = sw.offsets
        assert abs((j * sw.weights).sum() - 1.0) < 1e-12
        assert abs(sw.weights.sum()) < 1e-12


def test_rsk_q0_interpolative():
    sw = stencil(RK, 0)
    assert sw.weights[32] == pytest.approx(1.0, abs=1e-16)
    off = np.delete(sw.weights, 32)
    assert np.abs(off).max() < 1e-16


def test_hermite_q0_nearly_interpolative():
    # bounds frozen from the exact computation: |w0 - 1| = 1.266e-2
    sw = stencil(HK, 0)
    assert abs(sw.weights[32] - 1.0) < 1.3e-2
    assert abs(sw.weights[32] - 1.0) > 1.2e-2  # genuinely not interpolative
    off = np.delete(sw.weights, 32)
    assert np.abs(off).max() < 1.3e-2


def test_halfgrid_unit_sum_and_mirror():
    for spec in (HK, RK, HK.with_r(2.5)):
        hg = halfgrid_stencil(spec)
        assert len(hg.weights) == 64
        assert hg.half_grid
        assert abs(hg.weights.sum() - 1.0) < 1e-15
        assert np.max(np.abs(hg.weights - hg.weights[::-1])) == 0.0


def test_halfgrid_midpoint_prediction():
    from cforflow.filters import predict_midpoints

    N = 100
    dx = 1.0 / N
    x = np.arange(N) * dx
    f = np.cos(2.0 * np.pi * x)
    spec = KernelSpec(HERMITE, 32, 3.05, 88, dx)
    mid = predict_midpoints(f, halfgrid_stencil(spec))
    assert np.abs(mid - np.cos(2.0 * np.pi * (x + dx / 2.0))).max() < 1e-10


def test_low_wavenumber_responses_agree():
    # Hermite and RSK derivative responses coincide deep inside the band
    hw = stencil(HK, 1)
    rw = stencil(RK, 1)
    omego = np.linspace(0.0, 0.2 * np.pi, 200)
    rh = np.array([(hw.weights * np.exp(1j * om * hw.offsets)).sum() for om in omego])
    rr = np.array([(rw.weights * np.exp(1j * om * rw.offsets)).sum() for om in omego])
    assert np.abs(rh - rr).max() < 1e-10


def test_weights_are_immutable():
    sw = stencil(HK, 1)
    with pytest.raises(ValueError):
        sw.weights[0] = 1.0


def test_weights_independent_of_delta():
    a = stencil(KernelSpec(HERMITE, 32, 3.05, 88, 1.0), 1)
    b = stencil(KernelSpec(HERMITE, 32, 3.05, 88, 0.0125), 1)
    assert a.weights is b.weights  # cached once; spacing folds in at apply time


def test_fold_delta():
    sw = stencil(HK, 1)
    folded = sw.fold_delta(0.5)
    assert folded.includes_delta_scaling
    assert np.allclose(folded.weights, sw.weights / 0.5)
    with pytest.raises(KernelError):
        folded.fold_delta(0.5)


def test_stencil_table_round_trip():
    sw = stencil(HK, 1)
    table = sw.as_table()
    rows = [line.split() for line in table.strip().splitlines()[1:]]
    offs = np.array([int(r[0]) for r in rows])
    ws = np.array([float(r[1]) for r in rows])
    assert np.array_equal(offs, sw.offsets)
    assert np.array_equal(ws, sw.weights)  # 17 significant digits reproduce doubles
    hg_rows = halfgrid_stencil(HK).as_table().strip().splitlines()[1:]
    assert hg_rows[0].split()[0] == "-31.5"
