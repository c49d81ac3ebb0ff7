"""Transverse-operator assembly: spectral multipliers, FFT and FD builders."""

import numpy as np
import pytest

from helmprop import (
    Field,
    Grid,
    IndexSquaredMap,
    OperatorMatrix,
    ParabolicProfile,
    apply_operator_dense,
    build_operator_fd,
    build_operator_fft,
    flat_index,
    flatten_values,
    make_grid,
    sample_profile,
    spectral_laplacian_multipliers,
)

from conftest import DEMO_K0, DEMO_PROFILE


def _uniform_map(grid, value):
    return IndexSquaredMap(grid, np.full((grid.n_points, grid.n_points), value))


def _cos_mode(n, mx, my):
    i = np.arange(n)[:, None]
    j = np.arange(n)[None, :]
    return np.cos(2.0 * np.pi * (mx * i + my * j) / n)


# ---------------------------------------------------------------------------
# spectral_laplacian_multipliers
# ---------------------------------------------------------------------------


def test_multipliers_dc_mode_is_zero():
    grid = make_grid(8, 1.0)
    multipliers = spectral_laplacian_multipliers(grid)
    assert multipliers[0, 0] == 0.0
    assert np.all(multipliers <= 0.0)


def test_multipliers_frozen_value():
    grid = make_grid(8, 1.0)
    multipliers = spectral_laplacian_multipliers(grid)
    np.testing.assert_allclose(multipliers[1, 0], -0.6168502750680849, rtol=1e-12)
    # Aliasing: mode 7 of an 8-point axis is mode -1.
    assert multipliers[7, 0] == multipliers[1, 0]
    assert multipliers[0, 7] == multipliers[0, 1]


def test_multipliers_analytic_form():
    grid = make_grid(8, 0.5)
    multipliers = spectral_laplacian_multipliers(grid)
    scale = (2.0 * np.pi / grid.window_width) ** 2
    kappa = np.array([0, 1, 2, 3, 4, -3, -2, -1], dtype=float)
    expected = -scale * (kappa[:, None] ** 2 + kappa[None, :] ** 2)
    np.testing.assert_allclose(multipliers, expected, rtol=1e-13)


def test_multipliers_reject_odd_grid():
    with pytest.raises(ValueError):
        spectral_laplacian_multipliers(Grid(7, 1.0))


# ---------------------------------------------------------------------------
# build_operator_fft
# ---------------------------------------------------------------------------


def test_fft_builder_plane_wave_eigenpairs():
    grid = make_grid(8, 1.0)
    index_map = _uniform_map(grid, 2.25)
    op = build_operator_fft(grid, index_map, DEMO_K0)
    multipliers = spectral_laplacian_multipliers(grid)
    for mx, my in [(1, 0), (2, 3), (4, 4)]:
        vec = flatten_values(_cos_mode(8, mx, my))
        expected = (multipliers[mx, my] + DEMO_K0**2 * 2.25) * vec
        np.testing.assert_allclose(op.entries @ vec, expected, atol=1e-10)


def test_fft_builder_constant_field_sees_only_index_term():
    grid = make_grid(8, 1.0)
    index_map = _uniform_map(grid, 2.25)
    op = build_operator_fft(grid, index_map, DEMO_K0)
    ones = np.ones(64)
    np.testing.assert_allclose(
        op.entries @ ones, DEMO_K0**2 * 2.25 * ones, rtol=1e-12
    )


def test_fft_builder_demo_center_diagonal():
    grid = make_grid(40, 1.0)
    index_map = sample_profile(grid, DEMO_PROFILE)
    op = build_operator_fft(grid, index_map, DEMO_K0)
    center = flat_index(20, 20, 40)
    np.testing.assert_allclose(DEMO_K0**2, 23.36001041677954, rtol=1e-12)
    np.testing.assert_allclose(
        op.entries[center, center], 27.28405416660319, rtol=1e-12
    )


def test_fft_builder_matches_spectral_application():
    grid = make_grid(8, 1.0)
    index_map = sample_profile(grid, DEMO_PROFILE)
    op = build_operator_fft(grid, index_map, DEMO_K0)
    multipliers = spectral_laplacian_multipliers(grid)
    rng = np.random.default_rng(1234)
    values = rng.normal(size=(8, 8)) + 1j * rng.normal(size=(8, 8))
    direct = op.entries @ flatten_values(values)
    spectral = flatten_values(
        np.fft.ifft2(multipliers * np.fft.fft2(values))
        + DEMO_K0**2 * index_map.values * values
    )
    scale = np.abs(direct).max()
    np.testing.assert_allclose(direct, spectral, atol=1e-10 * scale)


def test_fft_builder_metadata():
    grid = make_grid(8, 1.0)
    op = build_operator_fft(grid, sample_profile(grid, DEMO_PROFILE), DEMO_K0)
    assert op.method_tag == "fft"
    assert op.entries.shape == (64, 64)
    assert op.k0 == DEMO_K0


# ---------------------------------------------------------------------------
# build_operator_fd
# ---------------------------------------------------------------------------


def test_fd_builder_stencil_entries():
    grid = make_grid(4, 1.0)
    index_map = _uniform_map(grid, 1.0)
    op = build_operator_fd(grid, index_map, 1.0)
    entries = op.entries
    for p in range(4):
        for q in range(4):
            s = flat_index(p, q, 4)
            assert entries[s, s] == 1.0 - 4.0
            neighbors = {
                flat_index((p + 1) % 4, q, 4),
                flat_index((p - 1) % 4, q, 4),
                flat_index(p, (q + 1) % 4, 4),
                flat_index(p, (q - 1) % 4, 4),
            }
            for r in neighbors:
                assert entries[r, s] == 1.0
            off = [r for r in range(16) if r != s and r not in neighbors]
            assert np.all(entries[off, s] == 0.0)


def test_fd_builder_column_sums(index8, grid8):
    op = build_operator_fd(grid8, index8, DEMO_K0)
    sums = op.entries.sum(axis=0)
    expected = DEMO_K0**2 * flatten_values(index8.values)
    np.testing.assert_allclose(sums, expected, rtol=1e-12)


def test_fd_builder_plane_wave_dispersion():
    grid = make_grid(8, 1.0)
    index_map = _uniform_map(grid, 1.45)
    op = build_operator_fd(grid, index_map, DEMO_K0)
    for mx, my in [(1, 0), (2, 1)]:
        vec = flatten_values(_cos_mode(8, mx, my))
        stencil = (
            4.0
            - 2.0 * np.cos(2.0 * np.pi * mx / 8)
            - 2.0 * np.cos(2.0 * np.pi * my / 8)
        )
        expected = (DEMO_K0**2 * 1.45 - stencil) * vec
        np.testing.assert_allclose(op.entries @ vec, expected, atol=1e-12)


def test_fd_builder_metadata(grid8, index8):
    op = build_operator_fd(grid8, index8, DEMO_K0)
    assert op.method_tag == "fd"
    assert op.entries.shape == (64, 64)


def test_fd_builder_smallest_grid_accumulates_neighbors():
    # On a 2x2 torus each axis neighbor pair collapses onto the same sample,
    # so off-diagonal weights double up and column sums still telescope.
    grid = make_grid(2, 1.0)
    op = build_operator_fd(grid, _uniform_map(grid, 1.0), 1.0)
    np.testing.assert_allclose(op.entries.sum(axis=0), np.ones(4), rtol=1e-12)
    assert op.entries[0, 0] == 1.0 - 4.0
    assert op.entries[1, 0] == 2.0  # +1 and -1 x-neighbors are the same point
    assert op.entries[2, 0] == 2.0


# ---------------------------------------------------------------------------
# Builder cross-checks
# ---------------------------------------------------------------------------


def test_builders_are_symmetric(grid8, index8):
    for builder in (build_operator_fft, build_operator_fd):
        op = builder(grid8, index8, DEMO_K0)
        asymmetry = np.abs(op.entries - op.entries.T).max()
        assert asymmetry <= 1e-10 * np.abs(op.entries).max()


def test_builders_agree_for_long_wavelength_modes():
    grid = make_grid(32, 1.0)
    index_map = _uniform_map(grid, 1.45)
    op_fft = build_operator_fft(grid, index_map, DEMO_K0)
    op_fd = build_operator_fd(grid, index_map, DEMO_K0)
    vec = flatten_values(_cos_mode(32, 1, 0))
    vec /= np.linalg.norm(vec)
    lam_fft = vec @ op_fft.entries @ vec - DEMO_K0**2 * 1.45
    lam_fd = vec @ op_fd.entries @ vec - DEMO_K0**2 * 1.45
    assert abs(lam_fft - lam_fd) < 0.01 * abs(lam_fft)


def test_uniform_index_shift_moves_spectrum_rigidly(grid8, index8):
    shift = 0.05
    shifted_map = IndexSquaredMap(grid8, index8.values + shift)
    for builder in (build_operator_fft, build_operator_fd):
        base = np.linalg.eigvalsh(builder(grid8, index8, DEMO_K0).entries)
        moved = np.linalg.eigvalsh(builder(grid8, shifted_map, DEMO_K0).entries)
        np.testing.assert_allclose(moved, base + DEMO_K0**2 * shift, rtol=1e-10)


def test_demo_operator_is_positive_definite():
    grid = make_grid(40, 1.0)
    index_map = sample_profile(grid, DEMO_PROFILE)
    multipliers = spectral_laplacian_multipliers(grid)
    # Sufficient analytic bound: the index term dominates the Laplacian.
    assert DEMO_K0**2 * index_map.values.min() > np.abs(multipliers).max()
    for builder in (build_operator_fft, build_operator_fd):
        eigenvalues = np.linalg.eigvalsh(builder(grid, index_map, DEMO_K0).entries)
        assert eigenvalues.min() > 0.0


def test_builders_reject_grid_mismatch(grid8):
    other = sample_profile(make_grid(8, 0.5), DEMO_PROFILE)
    with pytest.raises(ValueError):
        build_operator_fft(grid8, other, DEMO_K0)
    with pytest.raises(ValueError):
        build_operator_fd(grid8, other, DEMO_K0)


def test_builders_reject_bad_k0(grid8, index8):
    with pytest.raises(ValueError):
        build_operator_fft(grid8, index8, 0.0)
    with pytest.raises(ValueError):
        build_operator_fd(grid8, index8, -1.0)


# ---------------------------------------------------------------------------
# OperatorMatrix / apply_operator_dense
# ---------------------------------------------------------------------------


def test_operator_matrix_validation(grid8):
    with pytest.raises(ValueError):
        OperatorMatrix(grid8, DEMO_K0, np.ones((64, 63)), "custom")
    with pytest.raises(ValueError):
        OperatorMatrix(grid8, DEMO_K0, np.full((64, 64), np.nan), "custom")
    with pytest.raises(ValueError):
        OperatorMatrix(grid8, DEMO_K0, np.ones((64, 64)), "")


def test_apply_operator_dense_zero_field(grid8, index8):
    op = build_operator_fd(grid8, index8, DEMO_K0)
    out = apply_operator_dense(op, Field(grid8, np.zeros((8, 8))))
    np.testing.assert_array_equal(out.values, np.zeros((8, 8)))


def test_apply_operator_dense_impulse_reads_column(grid8, index8):
    op = build_operator_fft(grid8, index8, DEMO_K0)
    impulse = np.zeros((8, 8), dtype=complex)
    impulse[3, 5] = 1.0
    out = apply_operator_dense(op, Field(grid8, impulse))
    expected = op.entries[:, flat_index(3, 5, 8)]
    np.testing.assert_allclose(flatten_values(out.values), expected, rtol=1e-15)


def test_apply_operator_dense_constant_field_uniform_medium(grid8):
    index_map = _uniform_map(grid8, 1.45)
    op = build_operator_fd(grid8, index_map, DEMO_K0)
    out = apply_operator_dense(op, Field(grid8, np.full((8, 8), 2.0 + 1.0j)))
    np.testing.assert_allclose(
        out.values, np.full((8, 8), (2.0 + 1.0j) * DEMO_K0**2 * 1.45), rtol=1e-12
    )


def test_apply_operator_dense_rejects_grid_mismatch(grid8, index8):
    op = build_operator_fft(grid8, index8, DEMO_K0)
    other = make_grid(8, 0.5)
    with pytest.raises(ValueError):
        apply_operator_dense(op, Field(other, np.ones((8, 8))))
