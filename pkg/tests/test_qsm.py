from pathlib import Path

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from qcdm.qsm import QsmDocument, QsmParseError, document, emit_qsm, parse_qsm

DATA = Path(__file__).parent / "data"

HALF = "qsm 1\ndims 2\n(0.5,0) (0,0)\n(0,0) (0.5,0)\n"


def test_parse_maximally_mixed():
    doc = parse_qsm(HALF)
    assert doc.version == "1"
    assert doc.dims == (2,)
    assert np.array_equal(doc.entries, np.eye(2) / 2)


def test_round_trip_text():
    assert emit_qsm(parse_qsm(HALF)) == HALF


def test_whitespace_comments_and_scientific():
    text = (
        "# a comment\n\nqsm 1   # header\n"
        "dims\t2\n"
        "(5e-1,0)\t\t(0,-0.0)\n"
        "\n"
        "  (0,0)   (+.5E0,1.25e-3)  # trailing\n"
    )
    doc = parse_qsm(text)
    assert doc.entries[1, 1] == 0.5 + 0.00125j
    assert doc.entries[0, 0] == 0.5


def test_one_third_formatting():
    doc = document(np.full((1, 1), 1 / 3))
    assert emit_qsm(doc) == "qsm 1\ndims 1\n(0.33333333333333331,0)\n"


def test_bad_version():
    with pytest.raises(QsmParseError, match="version") as err:
        parse_qsm("qsm 2\ndims 1\n(1,0)\n")
    assert (err.value.line, err.value.column) == (1, 5)


def test_bad_header():
    with pytest.raises(QsmParseError, match="header"):
        parse_qsm("matrix 1\ndims 1\n(1,0)\n")


def test_shape_error():
    with pytest.raises(QsmParseError, match="expected 4×4") as err:
        parse_qsm("qsm 1\ndims 2 2\n(1,0) (0,0)\n(0,0) (1,0)\n")
    assert err.value.line == 3


def test_too_few_rows():
    with pytest.raises(QsmParseError, match="expected 2×2"):
        parse_qsm("qsm 1\ndims 2\n(1,0) (0,0)\n")


def test_too_many_rows():
    with pytest.raises(QsmParseError, match="too many rows") as err:
        parse_qsm("qsm 1\ndims 1\n(1,0)\n(1,0)\n")
    assert err.value.line == 4


@pytest.mark.parametrize("literal", ["(1,)", "(1;0)", "1", "(nan,0)", "(inf,0)", "(1,0", "(0x1,0)"])
def test_malformed_literal(literal):
    with pytest.raises(QsmParseError, match="malformed") as err:
        parse_qsm(f"qsm 1\ndims 2\n(1,0) {literal}\n(0,0) (1,0)\n")
    assert (err.value.line, err.value.column) == (3, 7)


def test_bad_dims():
    with pytest.raises(QsmParseError, match="positive integer"):
        parse_qsm("qsm 1\ndims 2 0\n")
    with pytest.raises(QsmParseError, match="dims"):
        parse_qsm("qsm 1\n(1,0)\n")


def test_overflow_rejected():
    with pytest.raises(QsmParseError, match="infinity"):
        parse_qsm("qsm 1\ndims 1\n(1e400,0)\n")


doubles = st.floats(allow_nan=False, allow_infinity=False)


@given(st.integers(1, 4).flatmap(lambda n: st.tuples(
    arrays(np.float64, (n, n), elements=doubles), arrays(np.float64, (n, n), elements=doubles)
)))
def test_round_trip_is_bit_exact(parts):
    re, im = parts
    doc = QsmDocument((re.shape[0],), re + 1j * im)
    text = emit_qsm(doc)
    back = parse_qsm(text)
    assert back.entries.tobytes() == doc.entries.tobytes()
    assert emit_qsm(back) == text


def test_fixtures_are_fixed_points():
    files = sorted(DATA.glob("*.qsm"))
    assert files
    for path in files:
        doc = parse_qsm(path.read_text())
        canonical = emit_qsm(doc)
        assert emit_qsm(parse_qsm(canonical)) == canonical
