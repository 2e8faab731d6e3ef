"""Command-line entry point: ``nestedmzi <command> ...``.

Exit codes: 0 success, 1 failed oracle comparison, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import sys
from contextlib import contextmanager
from dataclasses import dataclass
from typing import Optional

from . import config
from .network import InterferometerSpec, InvalidSpecError, danan_preset, ensure_valid
from .oracle import DEFAULT_CUTOFF, enumerate_paths, line_spectrum
from .peaks import peak_report
from .signals import trace
from .spectrum import band, dft_spectrum

PRESETS = {"danan": danan_preset}
DEFAULT_SAMPLES = 4096
DEFAULT_BAND_HI = 1000
COMPARE_TOL = 1e-15


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    preset: Optional[str] = None
    config_path: Optional[str] = None
    detune: float = 0.0
    samples: int = DEFAULT_SAMPLES
    band: Optional[tuple[int, int]] = None
    threshold: float = 1e-10
    max_order: int = 4
    out: Optional[str] = None

    def load_spec(self) -> InterferometerSpec:
        if (self.preset is None) == (self.config_path is None):
            raise UsageError("give exactly one of --preset or --config")
        if self.preset is not None:
            if self.preset not in PRESETS:
                raise UsageError(f"unknown preset {self.preset!r}")
            return PRESETS[self.preset](self.detune)
        if self.detune:
            raise UsageError("--detune only applies to presets")
        try:
            return config.load(self.config_path)
        except OSError as exc:
            raise UsageError(f"cannot read {self.config_path}: {exc.strerror}") from None
        except config.ParseError as exc:
            raise UsageError(f"{self.config_path}:{exc.line}: {exc.message}") from None

    def band_or_default(self, limit: Optional[int]) -> tuple[int, int]:
        lo, hi = self.band if self.band else (0, DEFAULT_BAND_HI if limit is None else min(DEFAULT_BAND_HI, limit))
        if not 0 <= lo <= hi:
            raise UsageError(f"invalid band {lo}:{hi}")
        if limit is not None and hi > limit:
            raise UsageError(f"band upper edge {hi} exceeds Nyquist {limit} for --samples {self.samples}")
        return lo, hi


def _real(x: float) -> str:
    return f"{x:.16e}"


def _numeric(cfg: RunConfig, spec: InterferometerSpec):
    if cfg.samples < 2:
        raise UsageError("--samples must be >= 2")
    return dft_spectrum(trace(spec, cfg.samples))


def cmd_spectrum(cfg: RunConfig) -> tuple[list[str], int]:
    spec = cfg.load_spec()
    spectrum = _numeric(cfg, spec)
    lo, hi = cfg.band_or_default(spectrum.n // 2)
    rows = ["f,G"] + [f"{f},{_real(g)}" for f, g in band(spectrum, lo, hi)]
    return rows, 0


def cmd_analytic(cfg: RunConfig) -> tuple[list[str], int]:
    spec = cfg.load_spec()
    lines = line_spectrum(enumerate_paths(spec), cfg.max_order)
    lo, hi = cfg.band_or_default(None)
    rows = ["f,re,im,G"]
    for f in range(lo, hi + 1):
        a = lines.amplitude(f)
        rows.append(f"{f},{_real(a.real)},{_real(a.imag)},{_real(lines.power(f))}")
    return rows, 0


def cmd_compare(cfg: RunConfig) -> tuple[list[str], int]:
    spec = cfg.load_spec()
    spectrum = _numeric(cfg, spec)
    lines = line_spectrum(enumerate_paths(spec), cfg.max_order)
    lo, hi = cfg.band_or_default(None)
    diffs = sorted(
        ((abs(spectrum.power(f) - lines.power(f)), f) for f in range(lo, hi + 1)),
        key=lambda d: (-d[0], d[1]),
    )
    worst = diffs[0][0]
    status = 0 if worst <= COMPARE_TOL else 1
    rows = [
        f"band {lo}:{hi}  samples {spectrum.n}  cutoff {cfg.max_order}",
        f"max |G_numeric - G_analytic| = {_real(worst)}  tol {COMPARE_TOL:g}  "
        + ("PASS" if status == 0 else "FAIL"),
        "f,G_numeric,G_analytic,abs_diff",
    ]
    for d, f in diffs[:10]:
        rows.append(f"{f},{_real(spectrum.power(f))},{_real(lines.power(f))},{_real(d)}")
    return rows, status


def cmd_peaks(cfg: RunConfig) -> tuple[list[str], int]:
    spec = cfg.load_spec()
    if cfg.threshold <= 0:
        raise UsageError("--threshold must be positive")
    if cfg.max_order < 1:
        raise UsageError("--max-order must be >= 1")
    spectrum = _numeric(cfg, spec)
    rows = ["f,power,order,label"]
    for peak in peak_report(spectrum, spec, cfg.threshold, cfg.max_order):
        best = peak.minimal_labels
        if best:
            order = str(best[0].total_order)
            label = ";".join(str(lab) for lab in best)
        else:
            order, label = "", "?"
        rows.append(f"{peak.frequency},{_real(peak.power)},{order},{label}")
    return rows, 0


def cmd_preset(cfg: RunConfig) -> tuple[list[str], int]:
    if cfg.preset not in PRESETS:
        raise UsageError(f"unknown preset {cfg.preset!r}")
    text = config.serialize(PRESETS[cfg.preset](cfg.detune))
    return text.splitlines(), 0


COMMANDS = {
    "spectrum": cmd_spectrum,
    "analytic": cmd_analytic,
    "compare": cmd_compare,
    "peaks": cmd_peaks,
    "preset": cmd_preset,
}


def _band(text: str) -> tuple[int, int]:
    try:
        lo, hi = (int(part) for part in text.split(":"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"band must look like lo:hi, got {text!r}") from None
    return lo, hi


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="nestedmzi", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, max_order_default=4):
        src = p.add_mutually_exclusive_group(required=True)
        src.add_argument("--preset", help="built-in interferometer (danan)")
        src.add_argument("--config", dest="config_path", metavar="FILE", help="pipeline file (.ifc)")
        p.add_argument("--detune", type=float, default=0.0, help="static phase on the B arm, radians")
        p.add_argument("--samples", type=int, default=DEFAULT_SAMPLES, help="samples per period")
        p.add_argument("--band", type=_band, help="inclusive frequency band lo:hi")
        p.add_argument("--max-order", type=int, default=max_order_default,
                       help="expansion / classification order cutoff")
        p.add_argument("--out", help="write to FILE instead of standard output")

    common(sub.add_parser("spectrum", help="numeric power spectrum, CSV f,G"))
    common(sub.add_parser("analytic", help="analytic line spectrum, CSV f,re,im,G"))
    common(sub.add_parser("compare", help="numeric vs analytic gate"), DEFAULT_CUTOFF)
    p = sub.add_parser("peaks", help="detected and labelled peaks, CSV f,power,order,label")
    common(p)
    p.add_argument("--threshold", type=float, default=1e-10)
    p = sub.add_parser("preset", help="print a preset in the config format")
    p.add_argument("preset", metavar="NAME")
    p.add_argument("--detune", type=float, default=0.0)
    p.add_argument("--out")
    return parser


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        cfg = RunConfig(**vars(args))
        rows, status = COMMANDS[cfg.command](cfg)
    except UsageError as exc:
        print(f"nestedmzi: error: {exc}", file=sys.stderr)
        return 2
    except InvalidSpecError as exc:
        print(f"nestedmzi: invalid interferometer: {exc}", file=sys.stderr)
        return 2
    text = "\n".join(rows) + "\n"
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
