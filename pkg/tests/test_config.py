import math

import pytest
from hypothesis import given, settings, strategies as st

from nestedmzi.config import ParseError, load, parse, parse_document, serialize
from nestedmzi.network import (
    Beamsplitter,
    InterferometerSpec,
    InvalidSpecError,
    Mirror,
    Modulator,
    StaticPhase,
    danan_preset,
    validate,
)


def test_minimal_document():
    spec = parse("paths 3\ninject 1\ndetect 2\nbs 1 3")
    assert spec == InterferometerSpec(3, 1, 2, (Beamsplitter(1, 3),))


def test_comments_blank_lines_and_crlf():
    text = "# nested loop\r\npaths 2  # two arms\r\n\r\ninject 1\r\ndetect 2\r\nbs 1 2\r\n"
    doc = parse_document(text)
    assert doc.spec.stages == (Beamsplitter(1, 2),)
    assert doc.stage_lines == [6]


def test_scientific_notation():
    spec = parse("paths 2\ninject 1\ndetect 1\nmod X 1 freq=3 amp=3.1e-2\nphase 2 value=-1E-3")
    assert spec.stages == (Mirror(Modulator("X", 1, 3, 0.031)), StaticPhase(2, -0.001))


@pytest.mark.parametrize("detune", [0.0, math.pi / 20])
def test_preset_round_trip(detune):
    spec = danan_preset(detune)
    assert parse(serialize(spec)) == spec


def test_canonical_digits():
    assert "mod E 1 freq=159 amp=0.031415926535897934" in serialize(danan_preset(0)).splitlines()
    assert "phase 2 value=0.15707963267948966" in serialize(danan_preset(math.pi / 20)).splitlines()


def test_serialize_refuses_invalid():
    with pytest.raises(InvalidSpecError):
        serialize(InterferometerSpec(3, 1, 2, ()))


def test_load_reads_file(tmp_path):
    path = tmp_path / "danan.ifc"
    path.write_text(serialize(danan_preset(0)), encoding="utf-8")
    assert load(path) == danan_preset(0)


MALFORMED = [
    ("paths 3\ninject 1\ndetect 2\nmod A 5 freq=37 amp=0.03", 4, "port 5 out of range"),
    ("paths 3\ninject 1\ndetect 2\nlens 1", 4, "unknown directive"),
    ("paths 3\ninject 1\nbs 1 2", 3, "missing mandatory header 'detect'"),
    ("paths 3\ninject 1\ndetect 2\nbs 1 2\npaths 4", 5, "duplicate 'paths'"),
    ("paths 3\ninject 1\ndetect 2\nbs 1 2\n\ninject 2", 6, "duplicate 'inject'"),
    (
        "paths 3\ninject 1\ndetect 2\nmod A 1 freq=37 amp=0.1\nmod A 2 freq=41 amp=0.1",
        5,
        "duplicate modulator label 'A'",
    ),
    ("paths 3\ninject 1\ndetect 2\nmod A 1 freq=37.5 amp=0.1", 4, "non-integer freq"),
    ("paths 3\ninject 1\ndetect 2\n# only a comment\n", 4, "no stage lines"),
    ("paths 3\ninject 1\ndetect 2\nbs 2 2", 4, "beamsplitter ports must differ"),
    ("paths 3\ninject 1\ndetect 2\nphase 1 value=abc", 4, "must be a real number"),
    ("detect 7\npaths 3\ninject 1\nbs 1 2", 1, "detect port 7 out of range"),
]


@pytest.mark.parametrize("text, line, message", MALFORMED)
def test_line_numbered_errors(text, line, message):
    with pytest.raises(ParseError) as info:
        parse(text)
    assert info.value.line == line
    assert message in info.value.message
    assert str(info.value).startswith(f"line {line}:")


def test_empty_text():
    with pytest.raises(ParseError) as info:
        parse("")
    assert info.value.line == 1


def _positive_double():
    return st.floats(min_value=0, max_value=10, allow_nan=False, allow_infinity=False)


@st.composite
def specs(draw):
    paths = draw(st.integers(2, 6))
    port = st.integers(1, paths)
    stages = []
    for k in range(draw(st.integers(1, 12))):
        kind = draw(st.sampled_from(["bs", "mod", "phase"]))
        if kind == "bs":
            i = draw(port)
            j = draw(port.filter(lambda p: p != i))
            stages.append(Beamsplitter(i, j))
        elif kind == "mod":
            stages.append(Mirror(Modulator(
                f"M{k}", draw(port), draw(st.integers(1, 10_000)), draw(_positive_double()),
            )))
        else:
            stages.append(StaticPhase(
                draw(port), draw(st.floats(-1e6, 1e6, allow_nan=False, allow_infinity=False)),
            ))
    return InterferometerSpec(paths, draw(port), draw(port), tuple(stages))


@settings(max_examples=100, deadline=None)
@given(specs())
def test_round_trip_property(spec):
    assert validate(spec) == []
    text = serialize(spec)
    assert parse(text) == spec
    assert serialize(parse(text)) == text
