import numpy as np
import pytest

from airyquench import (DomainError, EvolutionMethod, PhysicalParams, ResolutionError,
                        ScenarioTag, SpaceGrid, TruncationError, WaveField, eigenstate_source,
                        evolve_direct, evolve_eigenstate, evolve_erfc, evolve_superposition,
                        expand_packet, kernel_halfspace, kernel_linear, make_eigenstate,
                        sample_cutoff_state, source_cutoff)

A, B, C = ScenarioTag.A, ScenarioTag.B, ScenarioTag.C
ERFC = EvolutionMethod.ERFC


def test_kernel_prefactor_and_phase(params):
    # |G| is x-independent: sqrt(m / 2 pi hbar t)
    ref = np.sqrt(0.5 / (2 * np.pi))
    assert abs(ref - 0.2820947917738781) < 1e-15
    for x, xs in ((0.3, -1.2), (5.0, 2.0)):
        assert abs(abs(kernel_linear(x, 1.0, xs, params)) - ref) < 1e-14
    # free kernel at x - x' = 2, t = 1: phase factor e^{i}
    free = PhysicalParams(1.0, 0.5, 0.0)
    g = kernel_linear(2.0, 1.0, 0.0, free)
    expect = ref * np.exp(-0.25j * np.pi) * np.exp(1j * 1.0)
    assert abs(g - expect) < 1e-14
    with pytest.raises(DomainError):
        kernel_linear(0.0, 0.0, 0.0, params)
    with pytest.raises(DomainError):
        kernel_linear(0.0, -1.0, 0.0, params)


def test_kernel_halfspace_contract(params):
    assert kernel_halfspace(0.0, 1.0, 2.0, params) == 0.0
    free = PhysicalParams(params.hbar, params.mass, 0.0)
    got = kernel_halfspace(1.0, 1.0, 1.0, params)
    expect = kernel_linear(1.0, 1.0, 1.0, free) - kernel_linear(-1.0, 1.0, 1.0, free)
    assert abs(got - expect) < 1e-15
    with pytest.raises(DomainError):
        kernel_halfspace(-0.5, 1.0, 1.0, params)
    with pytest.raises(DomainError):
        kernel_halfspace(0.5, 1.0, -1.0, params)


def test_kernel_semigroup(params):
    # int G(x, 2t | y, t) G(y, t | x', 0) dy = G(x, 2t | x', 0)
    t = 1.0
    for (x, xs) in ((1.0, 0.5), (-2.0, 3.0)):
        a = params.mass / (2 * params.hbar * t)
        mid = 0.5 * (x + xs) - params.k_slope * t * t / (4 * params.mass)
        W = 14.0 * np.sqrt(np.pi / a)
        ys = np.arange(mid - W, mid + W, np.pi / (16.0 * 2 * a * W))
        u = np.abs(ys - mid) / W
        taper = np.where(u > 0.75, np.cos(0.5 * np.pi * np.clip((u - 0.75) / 0.25, 0, 1)) ** 2, 1.0)
        prod = np.array([kernel_linear(x, t, y, params) * kernel_linear(y, t, xs, params)
                         for y in ys])
        approx = np.trapezoid(prod * taper, dx=ys[1] - ys[0])
        exact = kernel_linear(x, 2 * t, xs, params)
        assert abs(approx - exact) / abs(exact) < 1e-3


@pytest.mark.parametrize("scenario", [A, B, C])
def test_short_time_identity(params, scenario):
    grid = SpaceGrid.from_bounds(0.0, 24.0, 0.01)
    phi = sample_cutoff_state(make_eigenstate(6, params), params, grid)
    fld = evolve_eigenstate(scenario, 6, 1e-6, grid, params)
    l2 = np.sqrt(np.trapezoid(np.abs(fld.values - phi.values) ** 2, dx=grid.dx))
    assert l2 < 1e-3


def test_short_time_pointwise_linear_decay(params):
    # away from the released edge the field approaches phi_n at rate ~ t
    grid = SpaceGrid(3.0, 0.01, 3)
    st = make_eigenstate(6, params)
    phi = sample_cutoff_state(st, params, grid)
    devs = []
    for t in (1e-3, 1e-4):
        fld = evolve_eigenstate(B, 6, t, grid, params, method=ERFC)
        devs.append(abs(fld.values[1] - phi.values[1]))
    ratio = devs[0] / devs[1]
    assert 6.0 < ratio < 14.0
    l2s = []
    g2 = SpaceGrid.from_bounds(0.0, 24.0, 0.01)
    phi2 = sample_cutoff_state(st, params, g2)
    for t in (1e-3, 1e-4):
        fld = evolve_eigenstate(B, 6, t, g2, params)
        l2s.append(np.sqrt(np.trapezoid(np.abs(fld.values - phi2.values) ** 2, dx=g2.dx)))
    assert l2s[1] < 0.5 * l2s[0]


def test_unitarity_quick(params):
    grid = SpaceGrid.from_bounds(-45.0, 50.0, 0.02)
    fld = evolve_eigenstate(B, 1, 1.0, grid, params)
    assert abs(fld.norm() - 1.0) < 1e-3


@pytest.mark.parametrize("scenario,t", [(B, 1.0), (B, 5.0), (A, 1.0), (C, 1.0), (C, 10.0)])
def test_dual_method_field_agreement(params, scenario, t):
    if scenario is C:
        grid = SpaceGrid.from_bounds(0.0, 30.0 + 4 * t, 0.25)
    else:
        shift = params.k_slope * t * t / (2 * params.mass) if scenario is A else 0.0
        grid = SpaceGrid.from_bounds(-15.0 - 6 * t - shift, 25.0 + 4 * t - shift, 0.25)
    fd = evolve_eigenstate(scenario, 6, t, grid, params)
    fe = evolve_eigenstate(scenario, 6, t, grid, params, method=ERFC)
    # field-level agreement validates phases, not just densities
    assert np.max(np.abs(fd.values - fe.values)) < 1e-5
    dd = np.abs(fd.values) ** 2
    de = np.abs(fe.values) ** 2
    assert np.max(np.abs(dd - de)) < 1e-4 * np.max(dd)


def test_erfc_route_shift_identity_is_exact(params):
    t = 5.0
    shift = params.k_slope * t * t / (2 * params.mass)
    grid = SpaceGrid.from_bounds(-40.0, 20.0, 0.5)
    grid_b = SpaceGrid(grid.x_min + shift, grid.dx, grid.count)
    fa = evolve_erfc(A, 6, t, grid, params)
    fb = evolve_erfc(B, 6, t, grid_b, params)
    da = np.abs(fa.values) ** 2
    db = np.abs(fb.values) ** 2
    assert np.max(np.abs(da - db)) < 1e-12 * np.max(da)


def test_scenario_c_pins_the_wall(params):
    grid = SpaceGrid.from_bounds(0.0, 40.0, 0.5)
    for method in (EvolutionMethod.DIRECT, ERFC):
        fld = evolve_eigenstate(C, 6, 10.0, grid, params, method=method)
        assert abs(fld.values[0]) < 1e-8
    with pytest.raises(DomainError):
        evolve_eigenstate(C, 6, 1.0, SpaceGrid.from_bounds(-5.0, 5.0, 0.5), params)


def test_evolve_time_zero_returns_state(params):
    grid = SpaceGrid.from_bounds(0.0, 25.0, 0.01)
    fld = evolve_eigenstate(B, 3, 0.0, grid, params)
    phi = sample_cutoff_state(make_eigenstate(3, params), params, grid)
    assert np.array_equal(fld.values, phi.values)
    with pytest.raises(DomainError):
        evolve_direct(B, phi, 0.0, grid, params)
    with pytest.raises(DomainError):
        evolve_erfc(B, 3, 0.0, grid, params)


def test_resolution_error_names_required_spacing(params):
    coarse = SpaceGrid.from_bounds(0.0, 24.0, 0.2)
    src = sample_cutoff_state(make_eigenstate(6, params), params, coarse)
    out = SpaceGrid.from_bounds(-20.0, 20.0, 0.5)
    with pytest.raises(ResolutionError, match="dx <="):
        evolve_direct(B, src, 0.05, out, params)


def test_truncation_error_reports_budget(params):
    grid = SpaceGrid.from_bounds(-10.0, 10.0, 1.0)
    with pytest.raises(TruncationError, match="node budget"):
        evolve_erfc(B, 6, 5.0, grid, params, node_budget=500)


def test_source_helper_satisfies_resolution_check(params):
    out = SpaceGrid.from_bounds(-30.0, 30.0, 0.1)
    for t in (1e-4, 0.05, 1.0, 50.0):
        src = eigenstate_source(6, params, B, t, out)
        fld = evolve_direct(B, src, t, out, params)
        assert np.all(np.isfinite(fld.values))


def test_superposition_single_mode_and_reconstruction(params):
    grid = SpaceGrid.from_bounds(0.0, 30.0, 1e-2)
    f1 = sample_cutoff_state(make_eigenstate(1, params), params, grid)
    f2 = sample_cutoff_state(make_eigenstate(2, params), params, grid)
    psi = WaveField(grid, 0.0, (f1.values + f2.values) / np.sqrt(2.0))
    coeffs = expand_packet(psi, 6, params)
    rec = evolve_superposition(coeffs, B, 0.0, grid, params)
    l2 = np.sqrt(np.trapezoid(np.abs(rec.values - psi.values) ** 2, dx=grid.dx))
    assert l2 < 1e-3

    only3 = expand_packet(sample_cutoff_state(make_eigenstate(3, params), params, grid),
                          6, params)
    out = SpaceGrid.from_bounds(-20.0, 25.0, 0.1)
    sup = evolve_superposition(only3, B, 2.0, out, params)
    alone = evolve_eigenstate(B, 3, 2.0, out, params)
    # c_3 ~ 1, every other coefficient ~ 0: difference is rounding plus the
    # tiny off-mode coefficients
    assert np.max(np.abs(sup.values - alone.values)) < 1e-5


def test_superposition_norm_tracks_coefficients(params):
    grid = SpaceGrid.from_bounds(0.0, 30.0, 1e-2)
    f1 = sample_cutoff_state(make_eigenstate(1, params), params, grid)
    f2 = sample_cutoff_state(make_eigenstate(2, params), params, grid)
    psi = WaveField(grid, 0.0, (f1.values + f2.values) / np.sqrt(2.0))
    coeffs = expand_packet(psi, 4, params)
    wide = SpaceGrid.from_bounds(-120.0, 140.0, 0.05)
    ev = evolve_superposition(coeffs, B, 10.0, wide, params)
    assert abs(ev.norm() ** 2 - coeffs.sum_sq) < 1e-3


def test_dual_method_large_time_sampled(params):
    # the closed-form route pays the full saddle-bridge cost at t = 100, so
    # agreement is checked at sampled points rather than a dense grid
    xs = np.linspace(-430.0, 480.0, 8)
    g = SpaceGrid(xs[0], xs[1] - xs[0], len(xs))
    fd = evolve_eigenstate(B, 6, 100.0, g, params)
    fe = evolve_eigenstate(B, 6, 100.0, g, params, method=ERFC, node_budget=2e9)
    dd = np.abs(fd.values) ** 2
    de = np.abs(fe.values) ** 2
    peak = 3.5e-3  # measured density peak of the n=6 profile at t=100
    assert np.max(np.abs(dd - de)) < 1e-4 * peak


def test_node_persistence_scenario_c_quick(params, c6_fields):
    # the five interior minima of the walled state are deep quasi-nodes, not
    # exact zeros; at t=1 they sit at 2.9e-5 .. 5.2e-3 of peak
    from airyquench import density, structure_report
    rep = structure_report(density(c6_fields[1.0]), 2e-2)
    assert len(rep.node_positions) == 6
    tight = structure_report(density(c6_fields[1.0]), 1e-8)
    assert tight.node_positions == [0.0]  # only the wall pin is an exact zero
