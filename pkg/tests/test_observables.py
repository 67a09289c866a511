import numpy as np
import pytest

from airyquench import (DomainError, RealField, ScenarioTag, ShapeError, SpaceGrid,
                        WaveField, bose_map_check, continuity_residual, current, density,
                        evolve_eigenstate, fermion_density, make_eigenstate,
                        sample_cutoff_state, structure_report, symmetry_decomposition)

B, C = ScenarioTag.B, ScenarioTag.C


def test_density_basics(params):
    g = SpaceGrid.from_bounds(0.0, 26.0, 2e-3)
    phi = sample_cutoff_state(make_eigenstate(6, params), params, g)
    rho = density(phi)
    assert abs(rho.integral() - 1.0) < 1e-4
    rotated = WaveField(g, 0.0, phi.values * np.exp(1j * 0.83))
    assert np.array_equal(density(rotated).values, np.abs(phi.values * np.exp(1j * 0.83)) ** 2)
    assert np.max(np.abs(density(rotated).values - rho.values)) < 1e-15


def test_initial_state_structure(params):
    g = SpaceGrid.from_bounds(0.0, 26.0, 2e-3)
    rho = density(sample_cutoff_state(make_eigenstate(6, params), params, g))
    rep = structure_report(rho, 1e-8)
    assert len(rep.maxima_positions) == 6
    assert len(rep.node_positions) == 6  # 5 interior zeros plus the wall
    a16 = 6.684543442881213  # first interior zero sits at a_1 - a_6
    assert min(abs(p - a16) for p in rep.node_positions) < 1e-3
    assert rep.asymmetry == 0.0  # no negative side on this grid
    # trap ordering: lobe heights grow toward the turning point
    heights = np.interp(rep.maxima_positions, g.points(), rho.values)
    assert np.all(np.diff(heights) > 0)


def test_structure_even_function_symmetric_grid():
    g = SpaceGrid.from_bounds(-8.0, 8.0, 1e-3)
    rep = structure_report(RealField(g, 0.0, np.exp(-g.points() ** 2)), 1e-3)
    assert rep.asymmetry < 1e-12
    assert len(rep.maxima_positions) == 1


def test_structure_validation(params):
    g = SpaceGrid.from_bounds(0.0, 1.0, 0.01)
    rho = RealField(g, 0.0, np.ones(g.count))
    with pytest.raises(DomainError):
        structure_report(rho, 0.0)
    with pytest.raises(DomainError):
        structure_report(rho, 0.5)
    with pytest.raises(DomainError):
        structure_report(RealField(g, 0.0, -np.ones(g.count)), 1e-3)


def test_current_real_field_and_plane_wave(params):
    g = SpaceGrid.from_bounds(0.0, 26.0, 2e-3)
    phi = sample_cutoff_state(make_eigenstate(3, params), params, g)
    assert np.max(np.abs(current(phi, params).values)) < 1e-14
    k = 1.0
    gp = SpaceGrid.from_bounds(-10.0, 10.0, 5e-3)
    plane = WaveField(gp, 0.0, np.exp(1j * k * gp.points()))
    j = current(plane, params).values[1:-1]
    assert np.max(np.abs(j - 2.0 * k)) / (2.0 * k) < 1e-4
    with pytest.raises(ShapeError):
        current(WaveField(SpaceGrid(0.0, 1.0, 2), 0.0, np.ones(2, complex)), params)


def test_current_signs_free_flight(params):
    for x0, sign in ((-20.0, -1.0), (20.0, 1.0)):
        g = SpaceGrid(x0 - 2e-3, 1e-3, 5)
        fld = evolve_eigenstate(B, 6, 5.0, g, params)
        j = current(fld, params).values[2]
        assert sign * j >= -1e-12


def test_current_walled_pinned_at_origin(params):
    g = SpaceGrid(0.0, 1e-3, 5)
    fld = evolve_eigenstate(C, 6, 7.0, g, params)
    j0 = current(fld, params).values[0]
    assert abs(j0) < 1e-14


def test_continuity_stationary_phase_evolution(params):
    g = SpaceGrid.from_bounds(0.0, 26.0, 1e-3)
    st = make_eigenstate(3, params)
    phi = sample_cutoff_state(st, params, g)
    dt = 1e-3
    f1 = WaveField(g, 1.0, phi.values * np.exp(-1j * st.energy * 1.0))
    f2 = WaveField(g, 1.0 + dt, phi.values * np.exp(-1j * st.energy * (1.0 + dt)))
    assert continuity_residual(f1, f2, params) < 1e-6


def test_continuity_free_flight(params):
    g = SpaceGrid.from_bounds(-20.0, 30.0, 0.01)
    dt = 1e-3
    f1 = evolve_eigenstate(B, 3, 5.0 - dt / 2, g, params)
    f2 = evolve_eigenstate(B, 3, 5.0 + dt / 2, g, params)
    assert continuity_residual(f1, f2, params) < 1e-2


def test_continuity_degenerate_and_errors(params):
    g = SpaceGrid.from_bounds(-5.0, 5.0, 0.01)
    vals = np.exp(1j * g.points()) * np.exp(-g.points() ** 2)
    f = WaveField(g, 1.0, vals)
    with pytest.warns(UserWarning, match="degenerate"):
        r = continuity_residual(f, WaveField(g, 1.0, vals.copy()), params)
    assert r == 1.0
    with pytest.raises(DomainError):
        continuity_residual(f, WaveField(g, 1.5, vals), params)
    with pytest.raises(ShapeError):
        g2 = SpaceGrid.from_bounds(-5.0, 5.0, 0.02)
        continuity_residual(f, WaveField(g2, 1.001, np.ones(g2.count, complex)), params)


def test_symmetry_decomposition_parity_and_consistency(params):
    g = SpaceGrid.from_bounds(0.0, 24.02, 5e-3)
    src = sample_cutoff_state(make_eigenstate(6, params), params, g)
    t = 5.0
    for x in (2.0, 7.5):
        ev_p, cr_p = symmetry_decomposition(src, t, x, params)
        ev_m, cr_m = symmetry_decomposition(src, t, -x, params)
        assert ev_p == ev_m
        assert cr_p == -cr_m
        # even + cross reconstructs the density
        out = SpaceGrid(x - 1e-3, 1e-3, 3)
        rho = density(evolve_eigenstate(B, 6, t, out, params)).values[1]
        assert abs((ev_p + cr_p) - rho) < 1e-4 * rho + 1e-10
    with pytest.raises(DomainError):
        symmetry_decomposition(src, 0.0, 1.0, params)


def test_symmetry_decomposition_longest_figure_time(params):
    # at the longest figure time the cross term is four orders below the
    # even part at x = 5 (the quoted bound is five percent)
    g = SpaceGrid.from_bounds(0.0, 24.03, 5e-3)
    src = sample_cutoff_state(make_eigenstate(6, params), params, g)
    even, cross = symmetry_decomposition(src, 2000.0, 5.0, params)
    assert abs(cross) < 0.05 * even
    assert abs(cross) < 1e-3 * even


def test_fermion_density_normalization_and_maxima(params):
    g = SpaceGrid.from_bounds(0.0, 26.0, 2e-3)
    orbitals = [sample_cutoff_state(make_eigenstate(n, params), params, g)
                for n in range(1, 7)]
    rho = fermion_density(orbitals)
    assert abs(rho.integral() - 6.0) < 1e-3
    rep = structure_report(rho, 1e-8)
    assert len(rep.maxima_positions) == 6
    single = fermion_density(orbitals[:1])
    assert np.array_equal(single.values, density(orbitals[0]).values)
    with pytest.raises(ShapeError):
        g2 = SpaceGrid.from_bounds(0.0, 25.0, 2e-3)
        fermion_density([orbitals[0], sample_cutoff_state(make_eigenstate(2, params), params, g2)])


def test_two_body_marginal_identity(params):
    # brute-force marginal of the antisymmetric pair density against the
    # orbital-density sum, using orthonormality of nothing but the quadrature
    g = SpaceGrid.from_bounds(0.0, 26.0, 2e-4)
    x2 = g.points()
    st1, st2 = (make_eigenstate(n, params) for n in (1, 2))
    p1 = sample_cutoff_state(st1, params, g).values.real
    p2 = sample_cutoff_state(st2, params, g).values.real
    probes = np.linspace(0.2, 12.0, 40)
    phi1 = np.interp(probes, x2, p1)
    phi2 = np.interp(probes, x2, p2)
    for i, x1 in enumerate(probes):
        pair = 0.5 * np.abs(phi1[i] * p2 - np.interp(x1, x2, p2) * p1) ** 2
        lhs = 2.0 * np.trapezoid(pair, dx=g.dx)
        rhs = phi1[i] ** 2 + phi2[i] ** 2
        assert abs(lhs - rhs) < 1e-8


def test_bose_map_and_coincidence(params):
    g = SpaceGrid.from_bounds(0.0, 26.0, 2e-3)
    fields = [sample_cutoff_state(make_eigenstate(n, params), params, g) for n in (1, 2)]
    rng = np.random.default_rng(5)
    pts = [tuple(rng.uniform(0.2, 12.0, 2)) for _ in range(100)]
    assert bose_map_check(fields, pts) < 1e-12
    # exchange antisymmetry of the pair amplitude
    from airyquench.observables import _slater
    for a, b in pts[:10]:
        s1 = _slater(fields, [a, b])
        s2 = _slater(fields, [b, a])
        assert abs(s1 + s2) < 1e-14 * max(1.0, abs(s1))
    with pytest.raises(DomainError):
        bose_map_check([fields[0]] * 4, pts)


def test_walled_late_time_height_ordering(params, c6_fields):
    # heights equalize at late times except the outermost lobe, which ends lowest
    fld = c6_fields[100.0]
    rho = density(fld)
    rep = structure_report(rho, 2e-2)
    heights = np.interp(rep.maxima_positions, fld.grid.points(), rho.values)
    assert len(heights) == 6
    assert np.argmin(heights) == len(heights) - 1
    inner = heights[:-1]
    assert (inner.max() - inner.min()) / inner.max() < 0.05


def test_free_flight_parity_structure_late(params, b6_t200):
    # even state index: late-time lobes split 3 + 3 around a central dip
    rho = density(b6_t200)
    rep = structure_report(rho, 2e-2)
    assert len(rep.maxima_positions) == 6
    assert sum(1 for p in rep.maxima_positions if p < 0) == 3
    x = b6_t200.grid.points()
    m_lo = max(p for p in rep.maxima_positions if p < 0)
    m_hi = min(p for p in rep.maxima_positions if p > 0)
    inside = (x > m_lo) & (x < m_hi)
    dip = x[inside][np.argmin(rho.values[inside])]
    # the dip between the central lobes hugs the origin (still drifting at t=200)
    assert abs(dip) < 0.03 * (m_hi - m_lo)
