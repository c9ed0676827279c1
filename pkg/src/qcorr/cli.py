"""Command-line interface: CSV sweeps, oracle verification, crossovers.

Commands
--------
sweep       EoF and QD curves over the mixing parameter, as CSV.
verify      Re-run a sweep with the numeric oracle and report the worst
            relative residual; exits 2 when it exceeds the threshold.
crossover   Bisect for the alpha (or p) where two quantities cross.
state-info  Eigenvalues, concurrence and entropies of one state.

CSV output is deterministic: header ``p,eof,qd_analytic`` (plus
``qd_numeric,residual,concurrence`` when the oracle runs), one row per
grid point in ascending p, floats printed with round-trip precision,
LF line endings, UTF-8.

Exit codes: 0 success, 1 usage or domain error, 2 verification failure,
3 numeric failure (including a bracket without sign change).
"""

from __future__ import annotations

import argparse
import math
import sys
from dataclasses import dataclass

from .deformed import DeformationSpec, QuasiBellSpec, overlap, quasi_bell_wmatrix, select_nmax
from .discord import qd_gwl_analytic, qd_numeric, qd_werner
from .entanglement import (
    concurrence_gwl_analytic,
    concurrence_pure,
    concurrence_werner,
    eof_from_concurrence,
    eof_werner,
)
from .linalg import (
    DomainError,
    NumericError,
    hermitian_eigenvalues,
    partial_trace,
    set_tolerance,
    von_neumann_entropy,
)
from .states import GWL_RANGE, WERNER_RANGE, WMatrix, gwl, werner

# Relative residuals divide by max(|QD|, this floor) so exact zeros of
# the analytic formula stay comparable.
RESIDUAL_FLOOR = 1e-6

DEFAULT_VERIFY_THRESHOLD = 1e-8
DEFAULT_ROOT_TOL = 1e-4
DEFAULT_P_STEP = 0.01

_FAMILY_FLAG = {
    "harmonic": "harmonic",
    "poschl-teller": "poschl_teller",
    "exciton": "exciton",
    "morse": "morse",
}


class UsageError(Exception):
    """Bad command line; maps to exit code 1."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


@dataclass
class SweepConfig:
    """Everything one sweep needs: the state, the grid, the outputs."""

    kind: str
    psi: WMatrix | None
    p_start: float
    p_stop: float
    p_step: float
    oracle: bool
    grid_n: int
    out: str | None


@dataclass
class CurveRow:
    """One CSV row of a sweep."""

    p: float
    eof: float
    qd_analytic: float
    qd_numeric: float | None = None
    residual: float | None = None
    concurrence: float | None = None


def p_grid(start, stop, step):
    """Ascending arithmetic grid start, start + step, ... up to stop."""
    if step <= 0.0:
        raise UsageError("--p-step must be positive, got %r" % step)
    if stop < start:
        raise UsageError("--p-stop %r below --p-start %r" % (stop, start))
    count = int(math.floor((stop - start) / step + 1e-9))
    return [start + i * step for i in range(count + 1)]


def compute_rows(cfg):
    """Evaluate the sweep; qd_numeric/residual only when the oracle runs."""
    rows = []
    c_pure = None if cfg.kind == "werner" else concurrence_pure(cfg.psi)
    for p in p_grid(cfg.p_start, cfg.p_stop, cfg.p_step):
        if cfg.kind == "werner":
            conc = concurrence_werner(p)
            eof = eof_werner(p)
            qd = qd_werner(p)
        else:
            conc = concurrence_gwl_analytic(c_pure, p)
            eof = eof_from_concurrence(conc)
            qd = qd_gwl_analytic(cfg.psi, p).discord
        if cfg.oracle:
            rho = werner(p) if cfg.kind == "werner" else gwl(cfg.psi, p)
            qn = qd_numeric(rho, grid_n=cfg.grid_n)
            res = abs(qd - qn) / max(abs(qd), RESIDUAL_FLOOR)
            rows.append(CurveRow(p, eof, qd, qn, res, conc))
        else:
            rows.append(CurveRow(p, eof, qd, None, None, conc))
    return rows


def _fmt(x):
    return repr(float(x))


def csv_text(rows, oracle):
    header = "p,eof,qd_analytic"
    if oracle:
        header += ",qd_numeric,residual,concurrence"
    lines = [header]
    for r in rows:
        cells = [_fmt(r.p), _fmt(r.eof), _fmt(r.qd_analytic)]
        if oracle:
            cells += [_fmt(r.qd_numeric), _fmt(r.residual), _fmt(r.concurrence)]
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"


def _diagonal_wmatrix(c):
    # canonical diag(a, b) with a^2 + b^2 = 1 and 2ab = c
    c = float(c)
    if not 0.0 <= c <= 1.0:
        raise UsageError("--concurrence must lie in [0, 1], got %r" % c)
    a = math.sqrt((1.0 + math.sqrt(1.0 - c * c)) / 2.0)
    b = c / (2.0 * a)
    return WMatrix([[a, 0.0], [0.0, b]])


def _deformation_spec(args, require_nmax=True):
    if args.family is None:
        raise UsageError("--family is required for deformed states")
    family = _FAMILY_FLAG[args.family]
    n_max = args.nmax
    spec = DeformationSpec(family=family, N=args.N, kappa=args.kappa, n_max=n_max)
    if n_max is None and require_nmax:
        if args.alpha is None:
            raise UsageError("--alpha is required for deformed states")
        n_max = select_nmax(spec, args.alpha, args.deformed_kind)
        spec = DeformationSpec(family=family, N=args.N, kappa=args.kappa, n_max=n_max)
    return spec


def _deformed_psi(args, alpha=None, kind=None):
    spec = _deformation_spec(args)
    qb = QuasiBellSpec(
        spec=spec,
        alpha=args.alpha if alpha is None else alpha,
        kind=args.deformed_kind if kind is None else kind,
        sign=args.sign,
    )
    return quasi_bell_wmatrix(qb)


def build_state(args):
    """Resolve the state flags to (kind, psi or None)."""
    if args.kind == "werner":
        return "werner", None
    if args.kind == "gwl":
        given = [v is not None for v in (args.wmatrix, args.concurrence)]
        if sum(given) != 1:
            raise UsageError("gwl needs exactly one of --wmatrix or --concurrence")
        if args.wmatrix is not None:
            with open(args.wmatrix, "r", encoding="utf-8") as fh:
                return "gwl", WMatrix.from_text(fh.read())
        return "gwl", _diagonal_wmatrix(args.concurrence)
    if args.kind == "deformed":
        if args.alpha is None:
            raise UsageError("--alpha is required for deformed states")
        return "deformed", _deformed_psi(args)
    raise UsageError("unknown kind %r" % (args.kind,))


def _default_range(kind):
    return WERNER_RANGE if kind == "werner" else GWL_RANGE


def _sweep_config(args):
    kind, psi = build_state(args)
    lo, hi = _default_range(kind)
    return SweepConfig(
        kind=kind,
        psi=psi,
        p_start=lo if args.p_start is None else args.p_start,
        p_stop=hi if args.p_stop is None else args.p_stop,
        p_step=args.p_step,
        oracle=args.oracle,
        grid_n=args.grid,
        out=getattr(args, "out", None),
    )


def cmd_sweep(args):
    if args.tol is not None:
        set_tolerance(args.tol)
    cfg = _sweep_config(args)
    text = csv_text(compute_rows(cfg), cfg.oracle)
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_verify(args):
    threshold = DEFAULT_VERIFY_THRESHOLD if args.tol is None else args.tol
    args.oracle = True
    cfg = _sweep_config(args)
    rows = compute_rows(cfg)
    worst = max(rows, key=lambda r: r.residual)
    print(
        "verify: kind=%s points=%d grid=%d threshold=%g"
        % (cfg.kind, len(rows), cfg.grid_n, threshold)
    )
    print("  max relative residual %.6e at p=%r" % (worst.residual, worst.p))
    if worst.residual > threshold:
        print("FAIL")
        return 2
    print("PASS")
    return 0


def _bisect(g, lo, hi, tol, label):
    g_lo, g_hi = g(lo), g(hi)
    if g_lo == 0.0:
        return lo
    if g_hi == 0.0:
        return hi
    if (g_lo > 0.0) == (g_hi > 0.0):
        raise NumericError(
            "%s does not change sign on [%g, %g] (endpoint values %g, %g)"
            % (label, lo, hi, g_lo, g_hi)
        )
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        g_mid = g(mid)
        if g_mid == 0.0:
            return mid
        if (g_mid > 0.0) == (g_lo > 0.0):
            lo, g_lo = mid, g_mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _eof_minus_qd(psi, p_values):
    c = concurrence_pure(psi)
    return max(
        eof_from_concurrence(concurrence_gwl_analytic(c, p))
        - qd_gwl_analytic(psi, p).discord
        for p in p_values
    )


def cmd_crossover(args):
    root_tol = DEFAULT_ROOT_TOL if args.tol is None else args.tol
    lo, hi = GWL_RANGE
    start = lo if args.p_start is None else args.p_start
    stop = hi if args.p_stop is None else args.p_stop
    ps = p_grid(start, stop, args.p_step)

    if args.functional == "p-crossing":
        if args.pair != "eof-qd":
            raise UsageError("--functional p-crossing only applies to --pair eof-qd")
        if args.alpha is None:
            raise UsageError("--functional p-crossing needs --alpha")
        psi = _deformed_psi(args)
        c = concurrence_pure(psi)

        def h(p):
            return eof_from_concurrence(concurrence_gwl_analytic(c, p)) - qd_gwl_analytic(
                psi, p
            ).discord

        # scan downward from p = 1 for the highest sign change
        p_sep = 1.0 / (1.0 + 2.0 * c)
        scan = [1.0 - 1e-9]
        p = 1.0 - 1e-3
        while p > p_sep + 1e-6:
            scan.append(p)
            p -= 1e-3
        bracket = None
        for a, b in zip(scan, scan[1:]):
            if (h(a) > 0.0) != (h(b) > 0.0):
                bracket = (b, a)
                break
        if bracket is None:
            raise NumericError("EoF - QD does not change sign below p = 1 for this state")
        root = _bisect(h, bracket[0], bracket[1], 1e-10, "EoF - QD")
        print("crossover pair=eof-qd functional=p-crossing alpha=%r p=%r" % (args.alpha, root))
        print(
            "note: p-crossing reports the largest mixing parameter where the "
            "EoF and QD curves of this fixed state cross"
        )
        return 0

    if args.pair == "eof-qd":

        def g(alpha):
            return _eof_minus_qd(_deformed_psi(args, alpha=alpha), ps)

        label = "max over p of EoF - QD"
    elif args.pair == "coherent-vs-a":

        def g(alpha):
            psi_c = _deformed_psi(args, alpha=alpha, kind="C")
            psi_a = _deformed_psi(args, alpha=alpha, kind="A")
            return max(
                qd_gwl_analytic(psi_c, p).discord - qd_gwl_analytic(psi_a, p).discord
                for p in ps
            )

        label = "max over p of QD(coherent) - QD(A)"
    else:
        raise UsageError("unknown pair %r" % (args.pair,))

    root = _bisect(g, args.alpha_lo, args.alpha_hi, root_tol, label)
    print("crossover pair=%s functional=alpha-max-p alpha=%r" % (args.pair, root))
    print(
        "note: alpha-max-p bisects alpha on the sign of [%s] over the p grid "
        "(%g..%g step %g)" % (label, start, stop, args.p_step)
    )
    return 0


def _entropy_2x2(rho2):
    spec = hermitian_eigenvalues(rho2)
    out = 0.0
    for lam in spec.eigenvalues:
        lam = float(lam)
        if lam > 0.0:
            out -= lam * math.log2(min(1.0, lam))
    return max(0.0, out)


def cmd_state_info(args):
    if args.tol is not None:
        set_tolerance(args.tol)
    kind, psi = build_state(args)
    p = args.p
    if p is None:
        raise UsageError("state-info needs --p")
    if kind == "werner":
        rho = werner(p)
        conc = concurrence_werner(p)
        eof = eof_werner(p)
        qd = qd_werner(p)
    else:
        rho = gwl(psi, p)
        c_pure = concurrence_pure(psi)
        conc = concurrence_gwl_analytic(c_pure, p)
        eof = eof_from_concurrence(conc)
        qd = qd_gwl_analytic(psi, p).discord
        print("pure-state concurrence: %r" % c_pure)
        if kind == "deformed":
            spec = _deformation_spec(args)
            print("overlap s: %r" % overlap(spec, args.alpha, args.deformed_kind))
    eigs = hermitian_eigenvalues(rho).eigenvalues
    print("eigenvalues: %s" % ", ".join(_fmt(v) for v in eigs))
    print("concurrence: %r" % conc)
    print("entropy_total: %r" % von_neumann_entropy(rho))
    print("entropy_reduced_A: %r" % _entropy_2x2(partial_trace(rho, "B")))
    print("entropy_reduced_B: %r" % _entropy_2x2(partial_trace(rho, "A")))
    print("eof: %r" % eof)
    print("qd_analytic: %r" % qd)
    if args.oracle:
        print("qd_numeric: %r" % qd_numeric(rho, grid_n=args.grid))
    return 0


def _add_state_flags(sp):
    sp.add_argument("--kind", choices=("werner", "gwl", "deformed"), default="werner")
    sp.add_argument("--wmatrix", help="file with four complex amplitudes, row-major")
    sp.add_argument(
        "--concurrence",
        type=float,
        help="build the canonical diagonal pure state with this concurrence",
    )
    sp.add_argument("--family", choices=tuple(_FAMILY_FLAG))
    sp.add_argument("--N", type=int, help="trap depth / bound-state count")
    sp.add_argument("--kappa", type=float, help="Lamb-Dicke-like parameter")
    sp.add_argument("--alpha", type=float, help="coherent amplitude (non-negative)")
    sp.add_argument(
        "--nmax", type=int, help="truncation level (default: chosen by select_nmax)"
    )
    sp.add_argument("--deformed-kind", choices=("C", "A", "D"), default="C")
    sp.add_argument("--sign", choices=("plus", "minus"), default="plus")
    sp.add_argument("--oracle", action="store_true", help="also run the numeric oracle")
    sp.add_argument("--grid", type=int, default=64, help="oracle polar grid count")
    sp.add_argument("--tol", type=float, help="command-specific tolerance override")


def _add_range_flags(sp):
    sp.add_argument("--p-start", type=float)
    sp.add_argument("--p-stop", type=float)
    sp.add_argument("--p-step", type=float, default=DEFAULT_P_STEP)


def build_parser():
    parser = _Parser(prog="qcorr", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sp = sub.add_parser("sweep", help="write EoF/QD curves as CSV")
    _add_state_flags(sp)
    _add_range_flags(sp)
    sp.add_argument("--out", help="output path (default: stdout)")
    sp.set_defaults(func=cmd_sweep)

    sp = sub.add_parser("verify", help="compare analytic curves against the oracle")
    _add_state_flags(sp)
    _add_range_flags(sp)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("crossover", help="bisect where two quantities cross")
    _add_state_flags(sp)
    _add_range_flags(sp)
    sp.add_argument("--pair", choices=("eof-qd", "coherent-vs-a"), default="eof-qd")
    sp.add_argument(
        "--functional",
        choices=("alpha-max-p", "p-crossing"),
        default="alpha-max-p",
        help="alpha-max-p bisects alpha on the max-over-p sign; "
        "p-crossing locates the EoF/QD crossing in p at fixed alpha",
    )
    sp.add_argument("--alpha-lo", type=float, default=0.2)
    sp.add_argument("--alpha-hi", type=float, default=3.0)
    sp.set_defaults(func=cmd_crossover)

    sp = sub.add_parser("state-info", help="print eigenvalues, concurrence, entropies")
    _add_state_flags(sp)
    sp.add_argument("--p", type=float, help="mixing parameter")
    sp.set_defaults(func=cmd_state_info)

    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print("usage error: %s" % exc, file=sys.stderr)
        return 1
    except DomainError as exc:
        print("domain error: %s" % exc, file=sys.stderr)
        return 1
    except NumericError as exc:
        print("numeric error: %s" % exc, file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
