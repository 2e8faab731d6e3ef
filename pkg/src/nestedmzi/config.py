"""Line-oriented text format for interferometer pipelines.

Example::

    paths 3
    inject 1
    detect 2
    bs 1 3
    mod E 1 freq=159 amp=0.031415926535897934
    phase 2 value=0.15707963267948966

One directive per line, ``#`` starts a comment. The three header directives
must appear exactly once and before any stage line; stage lines are read in
chronological order.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path

from .network import (
    Beamsplitter,
    InterferometerSpec,
    Mirror,
    Modulator,
    StaticPhase,
    ensure_valid,
    validate,
)

HEADERS = ("paths", "inject", "detect")
_INT = re.compile(r"[+-]?\d+\Z")


class ParseError(ValueError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line
        self.message = message


@dataclass
class ConfigDocument:
    text: str
    spec: InterferometerSpec
    # 1-based source line for each stage, in stage order
    stage_lines: list[int] = field(default_factory=list)


def _int(token: str, what: str, lineno: int) -> int:
    if not _INT.match(token):
        raise ParseError(lineno, f"{what} must be an integer, got {token!r}")
    return int(token)


def _real(token: str, what: str, lineno: int) -> float:
    try:
        value = float(token)
    except ValueError:
        raise ParseError(lineno, f"{what} must be a real number, got {token!r}") from None
    if value != value or value in (float("inf"), float("-inf")):
        raise ParseError(lineno, f"{what} must be finite")
    return value


def _keyword(token: str, key: str, lineno: int) -> str:
    prefix = key + "="
    if not token.startswith(prefix):
        raise ParseError(lineno, f"expected {prefix}<value>, got {token!r}")
    return token[len(prefix):]


def _arity(words: list[str], n: int, usage: str, lineno: int) -> None:
    if len(words) != n:
        raise ParseError(lineno, f"usage: {usage}")


def parse_document(text: str) -> ConfigDocument:
    header: dict[str, int] = {}
    header_lines: dict[str, int] = {}
    stages = []
    stage_lines: list[int] = []
    labels: dict[str, int] = {}
    last_line = 0

    def port(token: str, lineno: int) -> int:
        p = _int(token, "port", lineno)
        if not 1 <= p <= header["paths"]:
            raise ParseError(lineno, f"port {p} out of range")
        return p

    for lineno, raw in enumerate(text.splitlines(), start=1):
        last_line = lineno
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        words = line.split()
        head = words[0]

        if head in HEADERS:
            _arity(words, 2, f"{head} <int>", lineno)
            if head in header:
                raise ParseError(lineno, f"duplicate {head!r} directive")
            value = _int(words[1], head, lineno)
            if head == "paths" and value < 2:
                raise ParseError(lineno, "paths must be at least 2")
            header[head] = value
            header_lines[head] = lineno
            continue

        if head not in ("bs", "mod", "phase"):
            raise ParseError(lineno, f"unknown directive {head!r}")
        missing = [h for h in HEADERS if h not in header]
        if missing:
            raise ParseError(lineno, f"missing mandatory header {missing[0]!r}")
        for h in ("inject", "detect"):
            if not 1 <= header[h] <= header["paths"]:
                raise ParseError(header_lines[h], f"{h} port {header[h]} out of range")

        if head == "bs":
            _arity(words, 3, "bs <port_i> <port_j>", lineno)
            i, j = port(words[1], lineno), port(words[2], lineno)
            if i == j:
                raise ParseError(lineno, "beamsplitter ports must differ")
            stages.append(Beamsplitter(i, j))
        elif head == "mod":
            _arity(words, 5, "mod <label> <port> freq=<int> amp=<real>", lineno)
            label = words[1]
            p = port(words[2], lineno)
            freq_token = _keyword(words[3], "freq", lineno)
            if not _INT.match(freq_token):
                raise ParseError(lineno, f"non-integer freq {freq_token!r}")
            freq = int(freq_token)
            if freq < 1:
                raise ParseError(lineno, "freq must be a positive integer")
            amp = _real(_keyword(words[4], "amp", lineno), "amp", lineno)
            if amp < 0:
                raise ParseError(lineno, "amp must be >= 0")
            if label in labels:
                raise ParseError(
                    lineno, f"duplicate modulator label {label!r} (first on line {labels[label]})"
                )
            labels[label] = lineno
            stages.append(Mirror(Modulator(label, p, freq, amp)))
        else:
            _arity(words, 3, "phase <port> value=<real>", lineno)
            p = port(words[1], lineno)
            value = _real(_keyword(words[2], "value", lineno), "value", lineno)
            stages.append(StaticPhase(p, value))
        stage_lines.append(lineno)

    end = max(last_line, 1)
    missing = [h for h in HEADERS if h not in header]
    if missing:
        raise ParseError(end, f"missing mandatory header {missing[0]!r}")
    if not stages:
        raise ParseError(end, "no stage lines")
    spec = InterferometerSpec(header["paths"], header["inject"], header["detect"], tuple(stages))
    violations = validate(spec)
    if violations:
        raise ParseError(end, violations[0])
    return ConfigDocument(text, spec, stage_lines)


def parse(text: str) -> InterferometerSpec:
    return parse_document(text).spec


def load(path) -> InterferometerSpec:
    with open(Path(path), encoding="utf-8", newline="") as fh:
        return parse(fh.read())


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def serialize(spec: InterferometerSpec) -> str:
    """Canonical text for a valid spec; raises InvalidSpecError otherwise."""
    ensure_valid(spec)
    lines = [
        f"paths {spec.path_count}",
        f"inject {spec.injection_port}",
        f"detect {spec.detection_port}",
    ]
    for stage in spec.stages:
        if isinstance(stage, Beamsplitter):
            lines.append(f"bs {stage.port_i} {stage.port_j}")
        elif isinstance(stage, Mirror):
            m = stage.modulator
            lines.append(f"mod {m.label} {m.port} freq={m.frequency} amp={_fmt(m.amplitude)}")
        else:
            lines.append(f"phase {stage.port} value={_fmt(stage.phase)}")
    return "\n".join(lines) + "\n"
