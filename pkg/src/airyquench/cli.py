"""Command-line front end: scenario runs over time lists, CSV emission.

Subcommands: eigen, evolve, current, fermi-density, expand.  Output files
start with '#'-prefixed manifest lines recording the canonical flag set,
per-time grids, measured norms and truncation settings, so any file can be
regenerated from its manifest alone.  Exit status: 0 success, 1 usage error,
2 numerical-validity error.
"""
from __future__ import annotations

import os
import sys
from dataclasses import dataclass, field

import click
import numpy as np

from . import observables
from .eigen import PhysicalParams, expand_packet, make_eigenstate, sample_cutoff_state
from .errors import AiryquenchError, GridCoverageError, NumericalValidityError
from .fields import SpaceGrid, WaveField
from .propagate import (EvolutionMethod, ScenarioTag, evolve_eigenstate, evolve_superposition,
                        suggested_grid)

FIG_TIMES = [0.0, 10.0, 100.0, 500.0, 1000.0, 2000.0]
PROBES_FREE = [-0.0001, 0.0001, -5.0, 5.0, -20.0, 20.0]
PROBES_WALLED = [5.0, 10.0, 15.0, 20.0]
NUM = "%.12e"
G = "%.12g"
NODE_THR = 2e-2   # quasi-node convention, matches the acceptance counts


@dataclass
class RunConfig:
    command: str
    scenario: ScenarioTag = ScenarioTag.B
    mode: str = "state"          # state | fermi | packet
    n_or_n: int = 6
    packet_path: str | None = None
    times: list = field(default_factory=lambda: list(FIG_TIMES))
    points: list | None = None
    tmax: float = 50.0
    tsteps: int = 100
    grid: SpaceGrid | None = None
    params: PhysicalParams = field(default_factory=PhysicalParams)
    method: EvolutionMethod = EvolutionMethod.DIRECT
    xcheck: bool = False
    out: str = ""
    emit: tuple = ("density", "current")
    nmax: int = 30


def canonical_argv(cfg: RunConfig) -> list:
    """Flag list that reproduces this configuration (output path excluded)."""
    argv = [cfg.command, "--scenario", cfg.scenario.value]
    if cfg.mode == "packet":
        argv += ["--packet", cfg.packet_path, "--nmax", str(cfg.nmax)]
    elif cfg.mode == "fermi":
        argv += ["--N", str(cfg.n_or_n)]
    elif cfg.command == "eigen":
        if cfg.grid is not None:
            argv += ["--state", str(cfg.n_or_n)]
    elif cfg.command != "expand":
        argv += ["--state", str(cfg.n_or_n)]
    if cfg.command in ("evolve", "fermi-density"):
        argv += ["--times", ",".join(G % t for t in cfg.times)]
    if cfg.command == "current":
        pts = cfg.points if cfg.points is not None else (
            PROBES_WALLED if cfg.scenario is ScenarioTag.C else PROBES_FREE)
        argv += ["--points", ",".join(G % p for p in pts),
                 "--tmax", G % cfg.tmax, "--tsteps", str(cfg.tsteps)]
    if cfg.grid is not None:
        argv += ["--xmin", G % cfg.grid.x_min, "--xmax", G % cfg.grid.x_max,
                 "--dx", G % cfg.grid.dx]
    p = cfg.params
    argv += ["--hbar", G % p.hbar, "--mass", G % p.mass, "--K", G % p.k_slope,
             "--method", cfg.method.value]
    if cfg.xcheck:
        argv += ["--xcheck"]
    if cfg.command == "evolve":
        argv += ["--emit", ",".join(cfg.emit)]
        if cfg.mode == "packet":
            pass
    if cfg.command == "eigen":
        argv += ["--nmax", str(cfg.nmax)]
    return argv


def _parse_floats(text, flag):
    if text is None:
        return None
    text = text.strip()
    if not text:
        return []
    try:
        return [float(tok) for tok in text.split(",") if tok.strip() != ""]
    except ValueError:
        raise click.UsageError(f"malformed number in {flag}: {text!r}") from None


def _build_grid(xmin, xmax, dx, scenario):
    given = [v is not None for v in (xmin, xmax, dx)]
    if not any(given):
        return None
    if not all(given):
        raise click.UsageError("--xmin, --xmax and --dx must be given together")
    if scenario is ScenarioTag.C and xmin < 0:
        raise click.UsageError("--xmin must be >= 0 for --scenario c (the wall stays)")
    if xmax <= xmin:
        raise click.UsageError("--xmax must exceed --xmin")
    if dx <= 0:
        raise click.UsageError("--dx must be positive")
    return SpaceGrid.from_bounds(xmin, xmax, dx)


def _config_from(command, kw):
    scenario = ScenarioTag.from_letter(kw["scenario"])
    try:
        params = PhysicalParams(kw["hbar"], kw["mass"], kw["k_slope"])
    except AiryquenchError as exc:
        raise click.UsageError(str(exc)) from None
    grid = _build_grid(kw.get("xmin"), kw.get("xmax"), kw.get("dx"), scenario)
    cfg = RunConfig(command=command, scenario=scenario, grid=grid, params=params,
                    method=EvolutionMethod(kw["method"]), xcheck=bool(kw.get("xcheck")),
                    out=kw.get("out") or "")
    if kw.get("packet") is not None:
        if kw.get("state_given"):
            raise click.UsageError("conflicting mode flags: give --state or --packet, not both")
        cfg.mode = "packet"
        cfg.packet_path = kw["packet"]
    elif kw.get("state") is not None:
        cfg.n_or_n = int(kw["state"])
        if cfg.n_or_n < 1:
            raise click.UsageError("--state must be a positive integer")
    if kw.get("n_fermi") is not None:
        cfg.mode = "fermi"
        cfg.n_or_n = int(kw["n_fermi"])
        if cfg.n_or_n < 1:
            raise click.UsageError("--N must be a positive integer")
    if kw.get("times") is not None:
        cfg.times = sorted(_parse_floats(kw["times"], "--times"))
        if any(t < 0 for t in cfg.times):
            raise click.UsageError("--times entries must be nonnegative")
    if kw.get("points") is not None:
        cfg.points = _parse_floats(kw["points"], "--points")
    if kw.get("tmax") is not None:
        if kw["tmax"] <= 0:
            raise click.UsageError("--tmax must be positive")
        cfg.tmax = float(kw["tmax"])
    if kw.get("tsteps") is not None:
        if int(kw["tsteps"]) < 1:
            raise click.UsageError("--tsteps must be a positive integer")
        cfg.tsteps = int(kw["tsteps"])
    if kw.get("emit"):
        allowed = {"density", "current", "structure"}
        emit = tuple(s.strip() for s in kw["emit"].split(",") if s.strip())
        bad = [e for e in emit if e not in allowed]
        if bad:
            raise click.UsageError(f"--emit entries not understood: {','.join(bad)}")
        cfg.emit = emit
    if kw.get("nmax") is not None:
        cfg.nmax = int(kw["nmax"])
    return cfg


@click.group()
def cli():
    """Quench dynamics of a particle released from a half-line linear trap."""


def parse_config(argv) -> RunConfig:
    """Parse a full argument vector (subcommand first) into a RunConfig."""
    argv = list(argv)
    if not argv:
        raise click.UsageError("missing subcommand")
    ctx = cli.make_context("airyquench", [], resilient_parsing=True)
    name, cmd, rest = cli.resolve_command(ctx, argv)
    sub = cmd.make_context(name, list(rest), parent=ctx)
    kw = dict(sub.params)
    kw["state_given"] = any(a == "--state" or a.startswith("--state=") for a in argv)
    return _config_from(name, kw)


# ---------------------------------------------------------------------------
# output helpers

class _Writer:
    """Write through a temp file; a failed run leaves no partial output."""

    def __init__(self, path):
        self.path = path
        self.tmp = path + ".tmp"
        self.fh = None

    def __enter__(self):
        self.fh = open(self.tmp, "w")
        return self.fh

    def __exit__(self, exc_type, exc, tb):
        self.fh.close()
        if exc_type is None:
            os.replace(self.tmp, self.path)
        else:
            try:
                os.remove(self.tmp)
            except OSError:
                pass
        return False


def _manifest_head(fh, cfg, extra=()):
    p = cfg.params
    fh.write(f"# airyquench {cfg.command}\n")
    fh.write("# argv: " + " ".join(canonical_argv(cfg)) + "\n")
    fh.write(f"# scenario={cfg.scenario.value} mode={cfg.mode} n={cfg.n_or_n} "
             f"method={cfg.method.value} xcheck={str(cfg.xcheck).lower()}\n")
    fh.write(f"# hbar={G % p.hbar} mass={G % p.mass} K={G % p.k_slope} alpha={G % p.alpha}\n")
    for line in extra:
        fh.write("# " + line + "\n")


def _grid_for(cfg, t):
    if cfg.grid is not None:
        return cfg.grid
    n_scale = cfg.n_or_n if cfg.mode != "packet" else cfg.nmax
    return suggested_grid(cfg.scenario, max(n_scale, 1), t, cfg.params)


def _resample(psi0, grid):
    x = psi0.grid.points()
    xs = grid.points()
    return (np.interp(xs, x, psi0.values.real, left=0.0, right=0.0)
            + 1j * np.interp(xs, x, psi0.values.imag, left=0.0, right=0.0))


def _load_packet(path) -> WaveField:
    try:
        data = np.loadtxt(path, ndmin=2)
    except OSError as exc:
        raise click.UsageError(f"cannot read packet file {path}: {exc}") from None
    if data.shape[1] not in (2, 3):
        raise click.UsageError("packet file needs 2 or 3 whitespace-separated columns "
                               "(x, Re psi0[, Im psi0])")
    x = data[:, 0]
    dxs = np.diff(x)
    if len(x) < 2 or np.any(dxs <= 0) or np.max(np.abs(dxs - dxs[0])) > 1e-9 * dxs[0] + 1e-12:
        raise click.UsageError("packet file x column must be a uniform increasing grid")
    vals = data[:, 1] + (1j * data[:, 2] if data.shape[1] == 3 else 0.0)
    grid = SpaceGrid(float(x[0]), float(dxs[0]), len(x))
    return WaveField(grid, 0.0, vals)


def _field_at(cfg, t, grid, expansion):
    if cfg.mode == "packet":
        coeffs, psi0 = expansion
        if t == 0.0:
            return WaveField(grid, 0.0, _resample(psi0, grid))
        return evolve_superposition(coeffs, cfg.scenario, t, grid, cfg.params, cfg.method)
    return evolve_eigenstate(cfg.scenario, cfg.n_or_n, t, grid, cfg.params, cfg.method)


def _default_out(cfg):
    if cfg.command == "eigen":
        return "eigen.csv"
    if cfg.command == "expand":
        return "expand.csv"
    who = "packet" if cfg.mode == "packet" else \
        (f"N{cfg.n_or_n}" if cfg.mode == "fermi" else f"n{cfg.n_or_n}")
    return f"{cfg.command.replace('-', '_')}_{cfg.scenario.value}_{who}.csv"


# ---------------------------------------------------------------------------
# runners

def run(cfg: RunConfig) -> str:
    """Execute a parsed configuration; returns the output path."""
    out = cfg.out or _default_out(cfg)
    runner = {"eigen": _run_eigen, "evolve": _run_evolve, "current": _run_current,
              "fermi-density": _run_fermi, "expand": _run_expand}[cfg.command]
    runner(cfg, out)
    return out


def _run_eigen(cfg, out):
    with _Writer(out) as fh:
        _manifest_head(fh, cfg, [f"nmax={cfg.nmax}"])
        fh.write("n,airy_zero,energy\n")
        for n in range(1, cfg.nmax + 1):
            st = make_eigenstate(n, cfg.params)
            fh.write(f"{n},{NUM % st.airy_zero},{NUM % st.energy}\n")
        if cfg.grid is not None:
            st = make_eigenstate(cfg.n_or_n, cfg.params)
            fld = sample_cutoff_state(st, cfg.params, cfg.grid)
            fh.write("x,phi\n")
            for x, v in zip(cfg.grid.points(), fld.values.real):
                fh.write(f"{NUM % x},{NUM % v}\n")


def _run_evolve(cfg, out):
    expansion = None
    if cfg.mode == "packet":
        psi0 = _load_packet(cfg.packet_path)
        expansion = (expand_packet(psi0, cfg.nmax, cfg.params), psi0)
    with _Writer(out) as fh:
        extra = []
        if expansion is not None:
            coeffs = expansion[0]
            extra.append(f"packet={cfg.packet_path} nmax={cfg.nmax} "
                         f"sum_sq={G % coeffs.sum_sq} residual={G % coeffs.residual}")
        _manifest_head(fh, cfg, extra)
        blocks = []
        for t in cfg.times:
            grid = _grid_for(cfg, t)
            fld = _field_at(cfg, t, grid, expansion)
            line = (f"time t={G % t} grid={G % grid.x_min}:{G % grid.dx}:{grid.count} "
                    f"norm={G % fld.norm()}")
            if cfg.xcheck and t > 0 and cfg.mode == "state":
                other = (EvolutionMethod.ERFC if cfg.method is EvolutionMethod.DIRECT
                         else EvolutionMethod.DIRECT)
                fld2 = evolve_eigenstate(cfg.scenario, cfg.n_or_n, t, grid, cfg.params, other)
                dev = float(np.max(np.abs(np.abs(fld.values) ** 2 - np.abs(fld2.values) ** 2)))
                line += f" xcheck_max_density_dev={dev:.6g}"
            if "structure" in cfg.emit:
                rep = observables.structure_report(observables.density(fld), NODE_THR)
                line += (f" nodes={len(rep.node_positions)} maxima={len(rep.maxima_positions)}"
                         f" asymmetry={rep.asymmetry:.6g}")
            blocks.append((line, fld))
        for line, _ in blocks:
            fh.write("# " + line + "\n")
        fh.write("x,t,re_psi,im_psi,density,current\n")
        for _, fld in blocks:
            dens = observables.density(fld)
            cur = observables.current(fld, cfg.params)
            for i, x in enumerate(fld.grid.points()):
                fh.write(f"{NUM % x},{NUM % fld.time},{NUM % fld.values[i].real},"
                         f"{NUM % fld.values[i].imag},{NUM % dens.values[i]},"
                         f"{NUM % cur.values[i]}\n")


def _run_current(cfg, out):
    points = cfg.points
    if points is None:
        points = PROBES_WALLED if cfg.scenario is ScenarioTag.C else PROBES_FREE
    if cfg.scenario is ScenarioTag.C and any(p < 0 for p in points):
        raise click.UsageError("--points must be >= 0 for --scenario c")
    times = [cfg.tmax * (i + 1) / cfg.tsteps for i in range(cfg.tsteps)]
    stencil_dx = 1e-3 / cfg.params.alpha
    with _Writer(out) as fh:
        _manifest_head(fh, cfg, [f"stencil_dx={G % stencil_dx}"])
        fh.write("t,x,current\n")
        for t in times:
            for x in points:
                lo = x - 2 * stencil_dx
                if cfg.scenario is ScenarioTag.C and lo < 0:
                    lo = 0.0
                g = SpaceGrid(lo, stencil_dx, 5)
                fld = evolve_eigenstate(cfg.scenario, cfg.n_or_n, t, g, cfg.params, cfg.method)
                cur = observables.current(fld, cfg.params)
                j = float(np.interp(x, g.points(), cur.values))
                fh.write(f"{NUM % t},{NUM % x},{NUM % j}\n")


def _run_fermi(cfg, out):
    with _Writer(out) as fh:
        _manifest_head(fh, cfg, [f"N={cfg.n_or_n}"])
        blocks = []
        for t in cfg.times:
            grid = _grid_for(cfg, t)
            orbitals = [evolve_eigenstate(cfg.scenario, n, t, grid, cfg.params, cfg.method)
                        for n in range(1, cfg.n_or_n + 1)]
            rho = observables.fermion_density(orbitals)
            blocks.append((f"time t={G % t} grid={G % grid.x_min}:{G % grid.dx}:{grid.count} "
                           f"integral={G % rho.integral()}", rho))
        for line, _ in blocks:
            fh.write("# " + line + "\n")
        fh.write("x,t,rho\n")
        for _, rho in blocks:
            for x, v in zip(rho.grid.points(), rho.values):
                fh.write(f"{NUM % x},{NUM % rho.time},{NUM % v}\n")


def _run_expand(cfg, out):
    if cfg.packet_path is None:
        raise click.UsageError("expand needs --packet FILE")
    psi0 = _load_packet(cfg.packet_path)
    coeffs = expand_packet(psi0, cfg.nmax, cfg.params)
    with _Writer(out) as fh:
        _manifest_head(fh, cfg, [
            f"packet={cfg.packet_path} nmax={cfg.nmax} input_norm={G % psi0.norm()} "
            f"sum_sq={G % coeffs.sum_sq} residual={G % coeffs.residual}"])
        fh.write("n,re_c,im_c,abs2\n")
        for i, c in enumerate(coeffs.values):
            fh.write(f"{i + 1},{NUM % c.real},{NUM % c.imag},{NUM % abs(c) ** 2}\n")


# ---------------------------------------------------------------------------
# click wiring

def _common(f):
    for dec in reversed([
        click.option("--scenario", default="b", show_default=True,
                     type=click.Choice(["a", "b", "c"], case_sensitive=False)),
        click.option("--hbar", default=1.0, show_default=True),
        click.option("--mass", default=0.5, show_default=True),
        click.option("--K", "k_slope", default=1.0, show_default=True),
        click.option("--xmin", type=float, default=None),
        click.option("--xmax", type=float, default=None),
        click.option("--dx", type=float, default=None),
        click.option("--method", default="direct", show_default=True,
                     type=click.Choice(["direct", "erfc"])),
        click.option("--xcheck", is_flag=True, help="run both methods, report max deviation"),
        click.option("--out", default="", help="output CSV path"),
    ]):
        f = dec(f)
    return f


def _dispatch(ctx, name, kw):
    kw["state_given"] = (ctx.get_parameter_source("state") is not None
                         and ctx.get_parameter_source("state").name == "COMMANDLINE") \
        if "state" in ctx.params else False
    cfg = _config_from(name, kw)
    path = run(cfg)
    click.echo(f"wrote {path}")


@cli.command("eigen")
@click.option("--nmax", type=int, default=8, show_default=True)
@click.option("--state", type=int, default=None,
              help="also emit this eigenfunction sampled on the grid")
@_common
@click.pass_context
def eigen_cmd(ctx, **kw):
    """Spectrum table, optionally one sampled eigenfunction."""
    if kw.get("state") is not None and kw.get("xmin") is None:
        kw["xmin"], kw["xmax"], kw["dx"] = 0.0, 25.0, 1e-2
    _dispatch(ctx, "eigen", kw)


@cli.command("evolve")
@click.option("--state", type=int, default=None, help="trap state index [default: 6]")
@click.option("--packet", type=str, default=None,
              help="two/three-column x, Re psi0[, Im psi0] file")
@click.option("--times", type=str, default=None,
              help="comma list [default: 0,10,100,500,1000,2000]")
@click.option("--emit", type=str, default=None,
              help="comma set from density,current,structure")
@click.option("--nmax", type=int, default=30, show_default=True,
              help="packet expansion size")
@_common
@click.pass_context
def evolve_cmd(ctx, **kw):
    """Evolve one trap state (or a packet); emit field, density, current."""
    _dispatch(ctx, "evolve", kw)


@cli.command("current")
@click.option("--state", type=int, default=None, help="trap state index [default: 6]")
@click.option("--points", type=str, default=None, help="probe positions, comma list")
@click.option("--tmax", type=float, default=50.0, show_default=True)
@click.option("--tsteps", type=int, default=100, show_default=True)
@_common
@click.pass_context
def current_cmd(ctx, **kw):
    """Probability current versus time at probe points."""
    _dispatch(ctx, "current", kw)


@cli.command("fermi-density")
@click.option("--N", "n_fermi", type=int, default=6, show_default=True)
@click.option("--times", type=str, default=None)
@_common
@click.pass_context
def fermi_cmd(ctx, **kw):
    """Single-particle density of the released N-fermion ground state."""
    _dispatch(ctx, "fermi-density", kw)


@cli.command("expand")
@click.option("--packet", type=str, required=True)
@click.option("--nmax", type=int, default=30, show_default=True)
@_common
@click.pass_context
def expand_cmd(ctx, **kw):
    """Expansion coefficients of an input packet over the trap states."""
    _dispatch(ctx, "expand", kw)


def main(argv=None) -> int:
    args = list(sys.argv[1:] if argv is None else argv)
    try:
        cli.main(args=args, prog_name="airyquench", standalone_mode=False)
    except click.exceptions.Exit as exc:
        return int(exc.exit_code)
    except click.ClickException as exc:
        exc.show()
        return 1
    except (NumericalValidityError, GridCoverageError) as exc:
        click.echo(f"numerical-validity error: {exc}", err=True)
        return 2
    except AiryquenchError as exc:
        click.echo(f"error: {exc}", err=True)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
