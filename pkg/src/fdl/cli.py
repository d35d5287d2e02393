"""Command-line driver: parameter sweeps, self-verification, basis listing.

    fdl sweep --channel adc --initial fig1 --steps 101
    fdl sweep --channel pdc --initial "0.7071067811865476|2,0> + 0.7071067811865476i|0,0>"
    fdl verify --suite all
    fdl basis
"""

import argparse
import csv
import json
import math
import re
import sys
from typing import Dict, List, Optional, Tuple

import numpy as np

from fdl.channels import CHANNELS, dilate
from fdl.hilbert import LABELS, _EXPANSIONS, DensityOperator, pair_state
from fdl.measures import concurrence, report
from fdl.verification import run_suite, tolerance

EXIT_FAIL = 1
EXIT_PARSE = 2
EXIT_NORM = 3

COLUMNS = ["p", "C2_ab", "C2_E_ab", "C2_a_Eb", "neg_aE", "epsilon_nats", "Q1", "Q2", "Qinf", "R_a", "R_E"]

R2 = 1 / math.sqrt(2)
PRESETS = {
    "fig1": {(2, 0): 1.0},
    "fig2": {(2, 1): R2, (2, -1): R2},
    "fig3": {(2, 0): R2, (0, 0): 1j * R2},
    "ghz-check": {(2, 0): R2, (0, 0): 1j * R2},
}


class StateParseError(ValueError):
    pass


_NUM = r"(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?"
_TERM = re.compile(
    r"(?P<sign>[+-]?)"
    r"(?:\((?P<paren>[^()]*)\)|(?P<imag>" + _NUM + r")i|(?P<real>" + _NUM + r")|(?P<unit>i))?"
    r"\|(?P<j>[+-]?\d+),(?P<m>[+-]?\d+)>"
)
_IMAG = re.compile(r"(?P<im>[+-]?(?:" + _NUM + r")?)i")
_COMPLEX = re.compile(r"(?P<re>[+-]?" + _NUM + r")(?:(?P<im>[+-](?:" + _NUM + r")?)i)?")


def _signed(text: str) -> float:
    return {"": 1.0, "+": 1.0, "-": -1.0}.get(text) or float(text)


def _parse_paren(text: str) -> complex:
    m = _IMAG.fullmatch(text)
    if m:
        return complex(0.0, _signed(m.group("im")))
    m = _COMPLEX.fullmatch(text)
    if m is None:
        raise StateParseError(f"bad coefficient '({text})'")
    im = m.group("im")
    return complex(float(m.group("re")), 0.0 if im is None else _signed(im))


def parse_state(text: str) -> Dict[Tuple[int, int], complex]:
    """Parse ``coef|j,m> + coef|j,m> ...`` into ``{(j, m): amplitude}``.

    ``coef`` is ``a``, ``ai`` or ``(a+bi)``; it may be omitted for 1.
    Whitespace is ignored. Amplitudes refer to the plain ``|j,m>`` states.
    """
    s = re.sub(r"\s+", "", text)
    if not s:
        raise StateParseError("empty state expression")
    amps: Dict[Tuple[int, int], complex] = {}
    pos = 0
    while pos < len(s):
        m = _TERM.match(s, pos)
        if m is None or m.end() == pos:
            raise StateParseError(f"cannot parse state at '{s[pos:]}'")
        if pos > 0 and not m.group("sign"):
            raise StateParseError(f"missing '+' or '-' before '{s[pos:]}'")
        if m.group("paren") is not None:
            coef = _parse_paren(m.group("paren"))
        elif m.group("imag") is not None:
            coef = 1j * float(m.group("imag"))
        elif m.group("real") is not None:
            coef = complex(float(m.group("real")))
        elif m.group("unit") is not None:
            coef = 1j
        else:
            coef = 1.0 + 0j
        if m.group("sign") == "-":
            coef = -coef
        label = (int(m.group("j")), int(m.group("m")))
        if label not in LABELS:
            raise StateParseError(f"|{label[0]},{label[1]}> is not one of the six pair states")
        amps[label] = amps.get(label, 0) + coef
        pos = m.end()
    return amps


def resolve_initial(text: str) -> Dict[Tuple[int, int], complex]:
    return dict(PRESETS[text]) if text in PRESETS else parse_state(text)


def sweep_rows(channel: str, psi0: np.ndarray, grid, log_base="e") -> List[dict]:
    make = CHANNELS[channel]
    rows = []
    for p in grid:
        r = report(dilate(make(p), psi0), log_base)
        rows.append({
            "p": float(p),
            "C2_ab": r.C2_ab,
            "C2_E_ab": r.C2_E_ab,
            "C2_a_Eb": r.C2_a_Eb,
            "neg_aE": r.negativity_aE,
            "epsilon_nats": r.epsilon,
            "Q1": r.Q1,
            "Q2": r.Q2,
            "Qinf": r.Q_inf,
            "R_a": r.R_a,
            "R_E": r.R_E,
        })
    return rows


def _fmt(x) -> str:
    if x is None:
        return "NA"
    return format(float(x) + 0.0, ".17g")


def write_csv(rows, fh):
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(COLUMNS)
    for row in rows:
        w.writerow([_fmt(row[c]) for c in COLUMNS])


def write_json(rows, fh):
    clean = [{c: (None if row[c] is None else float(row[c]) + 0.0) for c in COLUMNS} for row in rows]
    json.dump(clean, fh, indent=2)
    fh.write("\n")


def cmd_sweep(args) -> int:
    try:
        amps = resolve_initial(args.initial)
    except StateParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    try:
        psi0 = pair_state(amps, normalize=args.normalize)
    except ValueError as exc:
        print(f"error: {exc} (pass --normalize to rescale)", file=sys.stderr)
        return EXIT_NORM
    if args.initial == "ghz-check":
        grid = [1.0]
    else:
        if args.steps < 2:
            print("error: --steps must be at least 2", file=sys.stderr)
            return EXIT_PARSE
        grid = [k / (args.steps - 1) for k in range(args.steps)]
    base = 2 if args.log_base == "2" else "e"
    rows = sweep_rows(args.channel, psi0, grid, base)
    writer = write_csv if args.format == "csv" else write_json
    if args.out in (None, "-"):
        writer(rows, sys.stdout)
    else:
        with open(args.out, "w", newline="") as fh:
            writer(rows, fh)
    return 0


def cmd_verify(args) -> int:
    checks = run_suite(args.suite)
    print(f"tolerance {tolerance():.1e}")
    for c in checks:
        status = "PASS" if c.passed else "FAIL"
        extra = f"  {c.detail}" if c.detail else ""
        print(f"{status}  {c.name:<22} max_dev={c.max_dev:.3e}{extra}")
    failed = sum(not c.passed for c in checks)
    print(f"{len(checks) - failed}/{len(checks)} checks passed")
    return EXIT_FAIL if failed else 0


def _ket(i, j):
    return f"|{i}{j}>"


def cmd_basis(args) -> int:
    for label in LABELS:
        c = concurrence(DensityOperator.from_vector(pair_state({label: 1.0}), (6,)))
        terms = sorted(_EXPANSIONS[label].items())
        expansion = " ".join(f"{coef:+.10g}{_ket(*ij)}" for ij, coef in terms)
        print(f"|{label[0]},{label[1]}>\tC = {c:.6f}\t{expansion}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fdl", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    sw = sub.add_parser("sweep", help="evaluate every measure on a grid of p")
    sw.add_argument("--channel", choices=sorted(CHANNELS), required=True)
    sw.add_argument("--initial", required=True,
                    help="preset (fig1, fig2, fig3, ghz-check) or expression like '1|2,1>'")
    sw.add_argument("--steps", type=int, default=101)
    sw.add_argument("--format", choices=["csv", "json"], default="csv")
    sw.add_argument("--log-base", choices=["e", "2"], default="e")
    sw.add_argument("--out", default="-")
    sw.add_argument("--normalize", action="store_true")
    sw.set_defaults(func=cmd_sweep)

    ve = sub.add_parser("verify", help="run the built-in checks")
    ve.add_argument("--suite", choices=["paper", "properties", "all"], default="all")
    ve.set_defaults(func=cmd_verify)

    ba = sub.add_parser("basis", help="list the pair basis and its concurrences")
    ba.set_defaults(func=cmd_basis)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
