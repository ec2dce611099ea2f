"""Command-line front end.

Exit codes: 0 on success (report: every mismatch is a flagged one),
1 when the report contains an unexpected mismatch, 2 on usage or input errors.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import __version__
from ._kernels import BACKEND
from .constants import default_constants, load_overrides
from .errors import QCAuditError
from .report import format_float

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE = 0, 1, 2


def _emit(label: str, value, unit: str = "") -> None:
    if isinstance(value, complex):
        text = f"{format_float(value.real)} {'+' if value.imag >= 0 else '-'} {format_float(abs(value.imag))}i"
    elif isinstance(value, float):
        text = format_float(value)
    else:
        text = str(value)
    print(f"{label:<34} {text}{' ' + unit if unit else ''}")


def _cmd_solar(args, c) -> int:
    from .gravatom import TwoBodySystem, classical_orbit_energy, energy_level, matching_quantum_number, scales

    sys_ = TwoBodySystem.solar(c)
    sc = scales(sys_)
    if args.level is not None:
        _emit(f"E_{args.level:g}", energy_level(sys_, args.level), "J")
    _emit("alpha", sc.alpha, "1/m")
    _emit("bohr_radius (r_m)", sc.a_g, "m")
    orbit = classical_orbit_energy(sys_)
    _emit("classical T+V", orbit.signed, "J")
    _emit("classical |T|+|V|", orbit.magnitude_sum, "J")
    target = args.match_energy if args.match_energy is not None else orbit.magnitude_sum
    _emit("matching n", matching_quantum_number(sys_, target))
    return EXIT_OK


def _cmd_decay(args, c) -> int:
    from . import decay as d

    setup = d.PerturbationSetup.solar(c, n_initial=args.n_initial)
    rule = d.SelectionRule.DELTA_L_0 if args.case == 1 else d.SelectionRule.DELTA_L_1
    case = d.DecayCase(rule, args.matrix_element)
    td = d.decay_time(setup)
    _emit("Hprime", setup.Hprime, "J")
    _emit("t_d", td, "s")
    t = td if args.time is None else args.time
    _emit("c_n(t)", d.survival_coefficient(setup, t))
    _emit("c_n(t) RK4", d.integrate_coefficient_ode(setup, t, args.steps))
    _emit("prefactor (f or g)", d.perturbation_prefactor(setup, case), "1/m^2" if args.case == 1 else "1/m")
    _emit("max decay time pi/|w_1n|", d.max_decay_time(setup), "s")
    fo = d.first_order_decay_time(setup, case)
    _emit("first-order t_d", fo if fo is d.NO_DECAY else float(fo), "" if fo is d.NO_DECAY else "s")
    return EXIT_OK


def _cmd_matterwave(args, c) -> int:
    from . import matterwave as mw

    lam = mw.de_broglie_wavelength(mw.BeamParticle(args.mass, args.speed), c)
    _emit("de Broglie wavelength", lam, "m")
    s = mw.required_grating_period(lam, args.x1, args.distance)
    _emit("required grating period", s, "m")
    light = mw.light_grating_requirements(s, c)
    _emit("light wavelength", light.wavelength, "m")
    _emit("photon energy", light.photon_energy_ev, "eV")
    _emit("temperature", light.temperature, "K")
    return EXIT_OK


def _cmd_chsh(args, c) -> int:
    from . import epr

    kind = epr.FamilyKind[args.family.upper()]
    if not args.maximize:
        bound = {"antidiagonal": 2.0, "product": 2.0**0.5, "blockdiagonal": 2.0**0.5}[args.family]
        _emit("analytic bound", bound)
        return EXIT_OK
    res = epr.maximize_delta(kind, budget=args.budget)
    _emit("delta_max", res.delta_max)
    _emit("evaluations", res.evaluations)
    _emit("backend", BACKEND)
    w = res.witness
    if kind is epr.FamilyKind.PRODUCT:
        p = w.params()
        for name, v in zip(("u11", "u12.re", "u12.im", "v11", "v12.re", "v12.im"), p[:6]):
            _emit(f"witness {name}", float(v))
    else:
        for name, v in zip(("c11,11", "c11,22", "c22,11", "c22,22"), w.diag):
            _emit(f"witness {name}", float(v))
        _emit("witness x1", float(w.x1))
        _emit("witness x2", float(w.x2))
    if args.runs:
        rho = {
            epr.FamilyKind.ANTIDIAGONAL: epr.build_antidiagonal,
            epr.FamilyKind.BLOCKDIAGONAL: epr.build_blockdiagonal,
            epr.FamilyKind.PRODUCT: epr.build_product,
        }[kind](w)
        s = epr.MeasurementSettings()
        _emit("sampled O(a,b)", epr.sample_outcomes(rho, s.A, s.B, args.runs, args.seed))
    return EXIT_OK


def _cmd_madelung(args, c) -> int:
    from . import madelung as md

    hbar = args.hbar if args.hbar is not None else c.hbar
    p = md.CoherentStateParams(args.mass, args.omega, args.x0, args.p0, hbar)
    x = args.x if args.x is not None else md.classical_trajectory(p, args.t)[0]
    f = md.madelung_fields(p, x, args.t)
    _emit("R", f.R)
    _emit("S", f.S, "J s")
    _emit("Q", f.Q, "J")
    _emit("quantum HJ residual", md.quantum_hj_residual(p, x, args.t), "J")
    _emit("continuity residual", md.continuity_residual(p, x, args.t, p.width / 100, p.period / 1000))
    _emit("classical-limit gap", md.classical_limit_gap(p, x, args.t), "J")
    return EXIT_OK


def _cmd_wkb(args, c) -> int:
    from . import semiclassical as sc

    hbar = args.hbar if args.hbar is not None else c.hbar
    pot = sc.Potential1D.harmonic(args.mass, args.omega)
    for n, e in enumerate(sc.bohr_sommerfeld_levels(pot, args.levels, hbar=hbar), start=1):
        _emit(f"E_{n}", e, "J")
    return EXIT_OK


def _cmd_report(args, c) -> int:
    from .report import run_report

    rep = run_report(c, chsh_budget=args.budget)
    text = rep.to_json() if args.format == "json" else rep.to_table()
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return rep.exit_code


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qcaudit", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--constants", metavar="PATH", help="key=value file overriding physical constants")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solar", help="gravitational Bohr atom of the Sun-Earth system")
    p.add_argument("--level", type=float, help="print E_n for this quantum number")
    p.add_argument("--match-energy", type=float, help="energy magnitude (J) to match with a quantum number")
    p.set_defaults(func=_cmd_solar)

    p = sub.add_parser("decay", help="decay under Jupiter's perturbation")
    p.add_argument("--n-initial", type=float, default=1e74)
    p.add_argument("--case", type=int, choices=(1, 2), default=1, help="1: Delta l = 0, 2: |Delta l| = 1")
    p.add_argument("--matrix-element", type=float, default=1.0, help="radial matrix element magnitude (m^2 or m)")
    p.add_argument("--time", type=float, help="evaluation time in s (default: t_d)")
    p.add_argument("--steps", type=int, default=10_000, help="RK4 steps")
    p.set_defaults(func=_cmd_decay)

    p = sub.add_parser("matterwave", help="diffraction feasibility")
    p.add_argument("--mass", type=float, default=90.0, help="kg")
    p.add_argument("--speed", type=float, default=10 / 3.6, help="m/s")
    p.add_argument("--x1", type=float, default=1e-9, help="first-maximum offset, m")
    p.add_argument("--distance", type=float, default=1e3, help="grating-detector distance, m")
    p.set_defaults(func=_cmd_matterwave)

    p = sub.add_parser("chsh", help="correlation bounds for two-qubit state families")
    p.add_argument("--family", choices=("antidiagonal", "blockdiagonal", "product"), default="antidiagonal")
    p.add_argument("--maximize", action="store_true")
    p.add_argument("--budget", type=int, default=100_000)
    p.add_argument("--runs", type=int, default=0, help="Monte Carlo runs on the witness state")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_chsh)

    p = sub.add_parser("madelung", help="coherent-state quantum potential")
    p.add_argument("--mass", type=float, default=1.0)
    p.add_argument("--omega", type=float, default=1.0)
    p.add_argument("--x0", type=float, default=1.0)
    p.add_argument("--p0", type=float, default=0.0)
    p.add_argument("--hbar", type=float, help="override hbar (e.g. 1 for natural units)")
    p.add_argument("--x", type=float, help="position (default: <x(t)>)")
    p.add_argument("--t", type=float, default=0.0)
    p.set_defaults(func=_cmd_madelung)

    p = sub.add_parser("wkb", help="Bohr-Sommerfeld levels of a harmonic oscillator")
    p.add_argument("--mass", type=float, default=1.0)
    p.add_argument("--omega", type=float, default=1.0)
    p.add_argument("--levels", type=int, default=5)
    p.add_argument("--hbar", type=float)
    p.set_defaults(func=_cmd_wkb)

    p = sub.add_parser("report", help="recompute every quoted figure and compare")
    p.add_argument("--format", choices=("table", "json"), default="table")
    p.add_argument("--output", metavar="PATH")
    p.add_argument("--budget", type=int, default=100_000, help="refinement budget for the CHSH searches")
    p.set_defaults(func=_cmd_report)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        c = load_overrides(args.constants) if args.constants else default_constants()
        return args.func(args, c)
    except QCAuditError as exc:
        print(f"qcaudit: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
