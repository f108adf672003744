"""Command-line surface: density/table/verify/berry/decompose.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 I/O error.

Angles are accepted in radians or as pi fractions ("pi/8", "3pi/16",
"-pi/4").  Anywhere --alpha is accepted, --beta may be given instead and
is converted through the charge-dependent ellipticity map (--charge
electron|positron).  --omega and --rho-h default to natural units (1);
they only rescale outputs, never the internal algebra.

The library constrains alpha to [0, pi/2]; the CLI folds other values
using the exact relabeling symmetries (alpha + pi is the same mode up to
a global sign, alpha + pi/2 swaps the Cartesian indices) and records the
folding in the sidecar.
"""

from __future__ import annotations

import math
import re
import sys
from dataclasses import dataclass, field

import click
import numpy as np

from . import verify as verify_mod
from .berry import ResolutionError, berry_phase, latitude_loop, polar_loop, solid_angle
from .gstate import GaussianPolyState, density_grid, inner_product, linear_combine
from .modes import ORDER_CAP, ModeIndex, beta_to_alpha, hlg_state, mode_from_twisted
from .observables import energy, mean_lz, mean_r2
from .operators import OperatorKind, expectation
from .output import fmt, write_grid_csv, write_json, write_table_csv


class IOFailure(click.ClickException):
    exit_code = 3


@dataclass(frozen=True)
class RunConfig:
    """Validated run parameters shared by the commands.

    ``tolerances`` maps suite names to overrides (empty = per-identity
    defaults); ``max_order`` may not exceed the construction cap.
    """

    max_order: int = 10
    order_cap: int = ORDER_CAP
    tolerances: dict = field(default_factory=dict)
    extent: float = 5.0
    points: int = 512
    out_dir: str = "."
    omega: float = 1.0
    rho_h: float = 1.0

    def __post_init__(self):
        if self.max_order > self.order_cap:
            raise click.UsageError(
                f"max order {self.max_order} exceeds the construction cap {self.order_cap}"
            )
        if any(t < 0 for t in self.tolerances.values()):
            raise click.UsageError("tolerances must be >= 0")
        if self.extent <= 0:
            raise click.UsageError("--extent must be positive")
        if self.points < 2:
            raise click.UsageError("--points must be at least 2")
        if self.omega <= 0 or self.rho_h <= 0:
            raise click.UsageError("--omega and --rho-h must be positive")


_ANGLE_RE = re.compile(
    r"^\s*(?P<sign>[+-]?)\s*(?P<coef>\d+(?:\.\d*)?)?\s*\*?\s*pi\s*(?:/\s*(?P<den>\d+(?:\.\d*)?))?\s*$",
    re.IGNORECASE,
)


def parse_angle(text: str) -> float:
    """Radians from a float literal or a pi fraction like '3pi/16'."""
    try:
        return float(text)
    except ValueError:
        pass
    match = _ANGLE_RE.match(text)
    if not match:
        raise click.UsageError(
            f"cannot parse angle {text!r}: use radians or a pi fraction like pi/8"
        )
    value = math.pi * float(match.group("coef") or 1.0)
    if match.group("den"):
        value /= float(match.group("den"))
    return -value if match.group("sign") == "-" else value


def _resolve_sign(charge: str) -> int:
    return -1 if charge == "electron" else +1


def _resolve_mode(n, m, nr, l) -> ModeIndex:
    cartesian = n is not None or m is not None
    twisted = nr is not None or l is not None
    if cartesian and twisted:
        raise click.UsageError("give either --n/--m or --nr/--l, not both")
    try:
        if cartesian:
            if n is None or m is None:
                raise click.UsageError("--n and --m must be given together")
            return ModeIndex(n, m)
        if twisted:
            if nr is None or l is None:
                raise click.UsageError("--nr and --l must be given together")
            return mode_from_twisted(nr, l)
    except ValueError as exc:
        raise click.UsageError(str(exc))
    raise click.UsageError("a mode is required: --n/--m or --nr/--l")


def _resolve_alpha(alpha, beta, sign_e) -> float:
    if (alpha is None) == (beta is None):
        raise click.UsageError("give exactly one of --alpha or --beta")
    if beta is not None:
        if not 0.0 <= beta <= 1.0:
            raise click.UsageError(f"--beta must lie in [0, 1], got {beta}")
        return beta_to_alpha(beta, sign_e)
    return parse_angle(alpha)


def fold_alpha(alpha: float, n: int, m: int) -> tuple[float, int, int, bool]:
    """Fold alpha into [0, pi/2] using the exact relabeling symmetries.

    alpha + pi reproduces the mode up to a global sign; alpha + pi/2
    equals the (m, n) mode up to a global sign.  Returns
    (alpha', n', m', folded?).
    """
    a = alpha % math.pi
    folded = abs(a - alpha) > 1e-12
    if a > 0.5 * math.pi + 1e-12:
        a -= 0.5 * math.pi
        n, m = m, n
        folded = True
    return min(max(a, 0.0), 0.5 * math.pi), n, m, folded


def _check_order(mode: ModeIndex, max_order: int) -> None:
    if mode.n + mode.m > max_order:
        raise click.UsageError(
            f"mode order n+m = {mode.n + mode.m} exceeds the configured cap "
            f"{max_order}; raise --order-cap if this is intentional"
        )


def classify_pattern(grid: np.ndarray, extent: float) -> dict:
    """Node-count heuristic separating striped, ring and spot densities.

    Works on a symmetric cell-centered grid over [-extent, extent]^2.
    The circle through the global maximum is scanned for angular minima
    (nodal lines crossing it); the annular-mean profile is scanned for
    radial nodes.  Striped patterns show >= 2 angular node runs, rings
    show none and stay azimuthally flat, a center-peaked structure with
    no angular nodes is a spot.
    """
    ny, nx = grid.shape
    cell = 2 * extent / nx
    xc = -extent + cell * (np.arange(nx) + 0.5)
    yc = -extent + (2 * extent / ny) * (np.arange(ny) + 0.5)
    X, Y = np.meshgrid(xc, yc)
    R = np.hypot(X, Y)
    peak = float(grid.max())

    k_max = np.unravel_index(int(np.argmax(grid)), grid.shape)
    r_peak = float(R[k_max])

    nbins = 64
    edges = np.linspace(0.0, extent, nbins + 1)
    idx = np.clip(np.digitize(R.ravel(), edges) - 1, 0, nbins - 1)
    sums = np.bincount(idx, weights=grid.ravel(), minlength=nbins)
    counts = np.maximum(np.bincount(idx, minlength=nbins), 1)
    profile = sums / counts

    # radial nodes: low runs strictly inside the significant support
    radial_nodes = 0
    if profile.max() > 0:
        k_hi = int(np.nonzero(profile > 0.02 * profile.max())[0].max())
        in_low = False
        for k in range(k_hi + 1):
            if profile[k] < 0.02 * profile.max():
                if not in_low and k > 0:
                    radial_nodes += 1
                in_low = True
            else:
                in_low = False

    center = float(np.mean(grid[R <= max(1.5 * cell, 1e-9)]))
    rel_center = center / peak if peak > 0 else 0.0

    if r_peak <= 2.0 * cell:
        # brightest point at the origin: no meaningful peak circle
        return {
            "classification": "spot",
            "angular_node_count": 0,
            "radial_node_count": int(radial_nodes),
            "center_density": rel_center,
        }

    # angular scan on the circle of the global maximum (empty bins masked)
    band = (np.abs(R - r_peak) < 1.5 * cell) & (R > 1e-9)
    angles = np.arctan2(Y[band], X[band])
    values = grid[band]
    nang = max(16, min(72, values.size // 5))
    ang_bins = np.linspace(-math.pi, math.pi, nang + 1)
    a_idx = np.clip(np.digitize(angles, ang_bins) - 1, 0, nang - 1)
    a_sums = np.bincount(a_idx, weights=values, minlength=nang)
    a_counts = np.bincount(a_idx, minlength=nang)
    filled = a_counts > 0
    ang = a_sums[filled] / a_counts[filled]
    ang_max = float(ang.max()) if ang.size else 0.0

    angular_nodes = 0
    if ang_max > 0:
        low = ang < 0.02 * ang_max
        runs = 0
        prev = bool(low[-1])
        for flag in low:
            if flag and not prev:
                runs += 1
            prev = bool(flag)
        if runs == 0 and low.all():
            runs = 1
        angular_nodes = runs

    if angular_nodes >= 2:
        classification = "striped"
    elif angular_nodes == 0 and ang.size and ang.min() > 0.5 * ang_max:
        classification = "ring"
    else:
        classification = "mixed"

    return {
        "classification": classification,
        "angular_node_count": int(angular_nodes),
        "radial_node_count": int(radial_nodes),
        "center_density": rel_center,
    }


def _norm_check(grid: np.ndarray, extent: float) -> float:
    ny, nx = grid.shape
    cell = (2 * extent / nx) * (2 * extent / ny)
    return float(grid.sum() * cell)


@click.group()
@click.version_option(version="0.1.0", prog_name="als")
def main():
    """Asymmetric Landau states: densities, observables, exact checks."""


_mode_options = [
    click.option("--n", type=int, default=None, help="Cartesian index n."),
    click.option("--m", type=int, default=None, help="Cartesian index m."),
    click.option("--nr", type=int, default=None, help="Radial quantum number."),
    click.option("--l", type=int, default=None, help="Angular momentum projection."),
]


def add_options(options):
    def wrap(func):
        for option in reversed(options):
            func = option(func)
        return func

    return wrap


@main.command()
@add_options(_mode_options)
@click.option("--alpha", type=str, default=None, help="Symmetry angle (radians or pi fraction).")
@click.option("--beta", type=float, default=None, help="Field ellipticity in [0, 1].")
@click.option("--charge", type=click.Choice(["electron", "positron"]), default="electron")
@click.option("--phi", type=str, default="0", help="Rotation angle of the mode axes.")
@click.option("--extent", type=float, default=5.0, help="Grid half-width in units of rho_h.")
@click.option("--points", type=int, default=512, help="Grid points per axis.")
@click.option("--order-cap", type=int, default=ORDER_CAP)
@click.option("--omega", type=float, default=1.0)
@click.option("--rho-h", type=float, default=1.0)
@click.option("--out", type=click.Path(dir_okay=False), required=True, help="CSV output path; a .json sidecar is written next to it.")
def density(n, m, nr, l, alpha, beta, charge, phi, extent, points, order_cap, omega, rho_h, out):
    """Export a probability density grid with a JSON sidecar."""
    sign_e = _resolve_sign(charge)
    mode = _resolve_mode(n, m, nr, l)
    alpha_in = _resolve_alpha(alpha, beta, sign_e)
    phi_val = parse_angle(phi)
    a, nn, mm, folded = fold_alpha(alpha_in, mode.n, mode.m)
    used = ModeIndex(nn, mm)
    cfg = RunConfig(
        max_order=used.n + used.m, order_cap=order_cap,
        extent=extent, points=points, omega=omega, rho_h=rho_h,
    )
    _check_order(used, cfg.order_cap)

    from .modes import schwinger_state

    state = schwinger_state(used.n, used.m, a, phi_val, order_cap=cfg.order_cap)
    grid = density_grid(state, -extent, extent, -extent, extent, points, points)
    norm = _norm_check(grid, extent)
    pattern = classify_pattern(grid, extent)

    sidecar = {
        "mode": {"n": used.n, "m": used.m, "n_r": used.n_r, "l": used.l},
        "alpha": a,
        "phi": phi_val,
        "grid": {
            "x_min": -extent * rho_h,
            "x_max": extent * rho_h,
            "y_min": -extent * rho_h,
            "y_max": extent * rho_h,
            "nx": points,
            "ny": points,
        },
        "norm_check": norm,
        "units": {"omega": omega, "rho_h": rho_h},
        "pattern": pattern,
    }
    if folded:
        sidecar["alpha_input"] = alpha_in
        sidecar["mode_input"] = {"n": mode.n, "m": mode.m}

    scale = 1.0 / (rho_h * rho_h)
    try:
        write_grid_csv(out, grid * scale, -extent * rho_h, extent * rho_h, -extent * rho_h, extent * rho_h)
        write_json(_sidecar_path(out), sidecar, "density_sidecar")
    except OSError as exc:
        raise IOFailure(f"cannot write output: {exc}")
    click.echo(f"wrote {out} (norm check {norm:.9f}, pattern {pattern['classification']})")


def _sidecar_path(out: str) -> str:
    return (out[:-4] if out.endswith(".csv") else out) + ".json"


@main.command()
@add_options(_mode_options)
@click.option("--alpha-min", type=str, default="0")
@click.option("--alpha-max", type=str, default="pi/4")
@click.option("--steps", type=int, default=16, help="Number of alpha rows.")
@click.option("--charge", type=click.Choice(["electron", "positron"]), default="electron")
@click.option("--order-cap", type=int, default=ORDER_CAP)
@click.option("--omega", type=float, default=1.0)
@click.option("--rho-h", type=float, default=1.0)
@click.option("--out", type=click.Path(dir_okay=False), required=True)
def table(n, m, nr, l, alpha_min, alpha_max, steps, charge, order_cap, omega, rho_h, out):
    """Observable table over an alpha sweep: closed forms, exact values, deltas."""
    sign_e = _resolve_sign(charge)
    mode = _resolve_mode(n, m, nr, l)
    _check_order(mode, order_cap)
    a0, a1 = parse_angle(alpha_min), parse_angle(alpha_max)
    if steps < 1:
        raise click.UsageError("--steps must be >= 1")
    if not (0.0 <= a0 <= a1 <= 0.5 * math.pi + 1e-12):
        raise click.UsageError("sweep bounds must satisfy 0 <= alpha-min <= alpha-max <= pi/2")

    from .gstate import PolyDiffOperator, apply as gapply

    r2_op = PolyDiffOperator({(2, 0, 0, 0): 1.0, (0, 2, 0, 0): 1.0})
    header = [
        "alpha_rad",
        "energy_closed_omega", "energy_exact_omega", "energy_delta",
        "r2_closed_rhoH2", "r2_exact_rhoH2", "r2_delta",
        "lz_closed_hbar", "lz_exact_hbar", "lz_delta",
    ]
    rows = []
    for a in np.linspace(a0, a1, steps):
        state = hlg_state(mode.n, mode.m, float(a), order_cap=order_cap)
        e_c = energy(mode.n_r, mode.l, sign_e, omega)
        e_x = expectation(state, OperatorKind.h_perp(float(a), sign_e)).real * omega
        r_c = mean_r2(mode.n_r, mode.l, rho_h)
        r_x = inner_product(state, gapply(r2_op, state)).real * rho_h**2
        lz_c = mean_lz(mode.l, float(a))
        lz_x = expectation(state, OperatorKind.lz()).real
        rows.append([float(a), e_c, e_x, e_x - e_c, r_c, r_x, r_x - r_c, lz_c, lz_x, lz_x - lz_c])
    try:
        write_table_csv(out, header, rows)
    except OSError as exc:
        raise IOFailure(f"cannot write output: {exc}")
    click.echo(f"wrote {out} ({steps} rows)")


@main.command()
@click.option("--suites", type=str, default=",".join(verify_mod.SUITES), help="Comma-separated suite names.")
@click.option("--max-order", type=int, default=10)
@click.option("--tol", type=float, default=None, help="Override every identity tolerance.")
@click.option("--out", type=click.Path(dir_okay=False), default=None, help="JSON report path.")
def verify(suites, max_order, tol, out):
    """Run identity suites; exit 0 only if every residual is in tolerance."""
    names = [s.strip() for s in suites.split(",") if s.strip()]
    cfg = RunConfig(
        max_order=max_order,
        tolerances={} if tol is None else {name: tol for name in names},
    )
    try:
        report = verify_mod.run(names, max_order=cfg.max_order, tol=tol)
    except ValueError as exc:
        raise click.UsageError(str(exc))
    for r in report["results"]:
        flag = "PASS" if r["pass"] else "FAIL"
        click.echo(f"{flag} [{r['suite']}] {r['identity']}: residual {r['residual']:.3e} (tol {r['tolerance']:.1e})")
    s = report["summary"]
    click.echo(f"{s['passed']}/{s['total']} identities passed")
    if out is not None:
        try:
            write_json(out, report, "verify_report")
        except OSError as exc:
            raise IOFailure(f"cannot write report: {exc}")
        click.echo(f"wrote {out}")
    if not s["all_pass"]:
        sys.exit(1)


@main.command()
@add_options(_mode_options)
@click.option("--loop", "family", type=click.Choice(["latitude", "polar"]), default="latitude")
@click.option("--alpha", type=str, default=None, help="Latitude of the constant-alpha loop.")
@click.option("--beta", type=float, default=None, help="Latitude given as a field ellipticity.")
@click.option("--charge", type=click.Choice(["electron", "positron"]), default="electron")
@click.option("--phi0", type=str, default="0", help="Meridian of the polar loop.")
@click.option("--segments", type=int, default=2000)
@click.option("--order-cap", type=int, default=ORDER_CAP)
@click.option("--out", type=click.Path(dir_okay=False), default=None)
def berry(n, m, nr, l, family, alpha, beta, charge, phi0, segments, order_cap, out):
    """Geometric phase of a mode around a closed loop on the mode sphere."""
    mode = _resolve_mode(n, m, nr, l)
    _check_order(mode, order_cap)
    try:
        if family == "latitude":
            if alpha is None and beta is None:
                alpha = "pi/8"
            a = _resolve_alpha(alpha, beta, _resolve_sign(charge))
            if not 0.0 <= a <= 0.5 * math.pi + 1e-12:
                raise click.UsageError("latitude loops need alpha in [0, pi/2]")
            path = latitude_loop(a, segments)
            loop_desc = {"family": "latitude", "alpha": a}
        else:
            p0 = parse_angle(phi0)
            path = polar_loop(p0, segments)
            loop_desc = {"family": "polar", "phi0": p0}
        pts = path.points()
        if np.max(np.linalg.norm(pts - pts[0], axis=1)) < 1e-12:
            omega_loop = 0.0  # loop pinned at one point encloses nothing
        else:
            omega_loop = solid_angle(path)
        phase = berry_phase(path, mode.n, mode.m)
    except (ValueError, ResolutionError) as exc:
        raise click.UsageError(str(exc))
    expected = -0.5 * mode.l * omega_loop
    report = {
        "loop": loop_desc,
        "mode": {"n": mode.n, "m": mode.m, "n_r": mode.n_r, "l": mode.l},
        "segments": segments,
        "solid_angle": omega_loop,
        "berry_phase": phase,
        "expected_phase": expected,
        "deviation": abs(phase - expected),
    }
    click.echo(
        f"solid angle {fmt(omega_loop)}, phase {fmt(phase)}, "
        f"-(l/2)*Omega {fmt(expected)}, deviation {report['deviation']:.3e}"
    )
    if out is not None:
        try:
            write_json(out, report, "berry_report")
        except OSError as exc:
            raise IOFailure(f"cannot write report: {exc}")
        click.echo(f"wrote {out}")


@main.command()
@click.option("--nr", type=int, required=True, help="Radial index of the input twisted mode.")
@click.option("--l", type=int, required=True, help="Angular momentum of the input twisted mode.")
@click.option("--alpha", type=str, default=None, help="Symmetry angle of the analysis basis.")
@click.option("--beta", type=float, default=None)
@click.option("--charge", type=click.Choice(["electron", "positron"]), default="electron")
@click.option("--t", type=float, default=0.0, help="Evolution time in units of 1/omega.")
@click.option("--max-order", type=int, default=10, help="Basis cut: include all n+m <= max-order.")
@click.option("--extent", type=float, default=5.0)
@click.option("--points", type=int, default=256)
@click.option("--order-cap", type=int, default=ORDER_CAP)
@click.option("--omega", type=float, default=1.0)
@click.option("--rho-h", type=float, default=1.0)
@click.option("--out-prefix", type=str, required=True, help="Writes <prefix>_coefficients.csv, <prefix>_density.csv, <prefix>.json.")
def decompose(nr, l, alpha, beta, charge, t, max_order, extent, points, order_cap, omega, rho_h, out_prefix):
    """Expand a twisted mode over the asymmetric basis and evolve the phases."""
    sign_e = _resolve_sign(charge)
    mode_in = mode_from_twisted(nr, l)
    cfg = RunConfig(
        max_order=max_order, order_cap=order_cap,
        extent=extent, points=points, omega=omega, rho_h=rho_h,
    )
    _check_order(mode_in, cfg.order_cap)
    alpha_in = _resolve_alpha(alpha, beta, sign_e)
    # folding only moves the analysis angle; the basis runs over all modes
    # anyway, so the index relabeling is absorbed by the coefficient table
    a, _, _, _ = fold_alpha(alpha_in, mode_in.n, mode_in.m)

    lg = hlg_state(mode_in.n, mode_in.m, 0.25 * math.pi, order_cap=order_cap)
    coeff_rows = []
    states, amps = [], []
    sum_abs2 = 0.0
    for total in range(max_order + 1):
        for n_i in range(total + 1):
            m_i = total - n_i
            basis = hlg_state(n_i, m_i, a, order_cap=order_cap)
            c = inner_product(basis, lg)
            mode_i = ModeIndex(n_i, m_i)
            eps_i = energy(mode_i.n_r, mode_i.l, sign_e, omega)
            phase = complex(math.cos(eps_i * t), -math.sin(eps_i * t))
            ct = c * phase
            sum_abs2 += abs(c) ** 2
            coeff_rows.append(
                [n_i, m_i, mode_i.l, mode_i.n_r, eps_i, c.real, c.imag, abs(c) ** 2, ct.real, ct.imag]
            )
            if abs(c) > 1e-14:
                states.append(basis)
                amps.append(ct)

    rebuilt = linear_combine(amps, states) if states else GaussianPolyState({})
    grid = density_grid(rebuilt, -extent, extent, -extent, extent, points, points)
    norm = _norm_check(grid, extent)
    truncated = sum_abs2 < 1.0 - 1e-6

    sidecar = {
        "input_mode": {"n_r": nr, "l": l, "n": mode_in.n, "m": mode_in.m},
        "alpha": a,
        "time": t,
        "sign_e": sign_e,
        "max_order": max_order,
        "sum_abs2": sum_abs2,
        "truncation_warning": truncated,
        "grid": {
            "x_min": -extent * rho_h, "x_max": extent * rho_h,
            "y_min": -extent * rho_h, "y_max": extent * rho_h,
            "nx": points, "ny": points,
        },
        "norm_check": norm,
        "units": {"omega": omega, "rho_h": rho_h},
    }
    header = ["n", "m", "l", "n_r", "energy_omega", "re_c", "im_c", "abs2_c", "re_c_t", "im_c_t"]
    try:
        write_table_csv(f"{out_prefix}_coefficients.csv", header, [[str(r[0]), str(r[1]), str(r[2]), str(r[3])] + r[4:] for r in coeff_rows])
        write_grid_csv(f"{out_prefix}_density.csv", grid / rho_h**2, -extent * rho_h, extent * rho_h, -extent * rho_h, extent * rho_h)
        write_json(f"{out_prefix}.json", sidecar, "decompose_sidecar")
    except OSError as exc:
        raise IOFailure(f"cannot write outputs: {exc}")
    note = " (truncated)" if truncated else ""
    click.echo(f"wrote {out_prefix}_* (sum |c|^2 = {sum_abs2:.9f}{note})")


if __name__ == "__main__":
    main()
