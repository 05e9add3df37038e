"""Tests for code files, verification and the appendix corpus."""

import io
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from py_bwcodes.bounds import load_shipped_table
from py_bwcodes.corpus import (
    APPENDIX_ERRATA,
    Code,
    Provenance,
    appendix_keys,
    appendix_path,
    code_from_clique,
    load_appendix,
    parse_code_file,
    read_code_file,
    serialize_code,
    verify_code,
)
from py_bwcodes.exact import max_clique_exact
from py_bwcodes.exceptions import ParseError, UsageError
from py_bwcodes.graph import build_graph
from py_bwcodes.oracle import brute_force_min_distance
from py_bwcodes.words import CodeParams, WeightMode, Word


def code_of(params, texts, provenance=Provenance.EXTERNAL):
    return Code(params, tuple(Word.parse(t) for t in texts), provenance)


def serialized(code):
    sink = io.BytesIO()
    serialize_code(code, sink)
    return sink.getvalue().decode("ascii")


def test_verify_appendix_8_4_6():
    """Test verifying the shipped (8,4,6) listing."""
    report = verify_code(load_appendix(8, 4, 6))
    assert report.passed
    assert report.size == 16
    assert report.min_distance == 4


def test_verify_appendix_9_4_8():
    """Test verifying the shipped (9,4,8) listing."""
    report = verify_code(load_appendix(9, 4, 8))
    assert report.passed
    assert report.size == 20


def test_verify_reports_duplicates():
    """Test that repeated words are reported."""
    code = code_of(CodeParams(6, 4, 3), ["000111", "011001", "000111"])
    report = verify_code(code)
    assert not report.passed
    assert not report.duplicates_ok
    assert report.duplicates == (Word.parse("000111"),)
    assert "duplicates: 000111" in report.render()


def test_verify_reports_distance_witness():
    """Test the closest pair reported by verification."""
    code = code_of(CodeParams(6, 4, 4), ["000111", "011011"])
    report = verify_code(code)
    assert not report.distance_ok
    assert report.min_distance == 3
    assert {w.render() for w in report.distance_witness} == {"000111", "011011"}
    assert report.render().splitlines()[-1] == "result:       FAIL"


def test_verify_reports_weight_witness():
    """Test the heaviest word reported by verification."""
    code = code_of(CodeParams(6, 2, 3), ["000111", "011110"])
    report = verify_code(code)
    assert not report.weight_ok
    assert report.max_weight == 4
    assert report.weight_witness == Word.parse("011110")
    assert report.weight_violations == (Word.parse("011110"),)


def test_verify_constant_mode_weight():
    """Test the weight rule in constant mode."""
    code = code_of(CodeParams(6, 4, 3, WeightMode.CONSTANT), ["000111", "000000"])
    assert not verify_code(code).weight_ok


def test_verify_reports_length():
    """Test that words of the wrong length are reported."""
    code = Code(CodeParams(6, 2, 6), (Word.parse("000111"), Word.parse("01111")))
    report = verify_code(code)
    assert not report.length_ok
    assert report.length_violations == (Word.parse("01111"),)


def test_verify_small_codes():
    """Test verification of empty and single-word codes."""
    assert verify_code(code_of(CodeParams(6, 4, 3), [])).passed
    report = verify_code(code_of(CodeParams(6, 4, 3), ["000111"]))
    assert report.passed
    assert report.min_distance is None
    assert "n/a" in report.render()


def test_parse_two_words():
    """Test parsing a two-word listing."""
    code = parse_code_file("000111\n011001", CodeParams(6, 4, 3))
    assert code.size == 2
    assert code.provenance is Provenance.EXTERNAL


def test_parse_ignores_comments_and_blank_lines():
    """Test that comments and blank lines are skipped."""
    source = "# header\n\n000111\n   \n# more\n011001\n"
    assert parse_code_file(source, CodeParams(6, 4, 3)).size == 2


@pytest.mark.parametrize(
    "source, line",
    [
        ("00011\n", 1),
        ("000111\n0001x1\n", 2),
        ("# c\n000111\n011001\n000111\n", 4),
    ],
)
def test_parse_errors_carry_line(source, line):
    """Test that parse errors name their line."""
    with pytest.raises(ParseError) as exc_info:
        parse_code_file(source, CodeParams(6, 4, 3), source_name="code.txt")
    assert exc_info.value.line == line
    assert exc_info.value.source == "code.txt"
    assert f"line {line}" in str(exc_info.value)


def test_appendix_7_4_5_has_eight_words():
    """Test the shipped (7,4,5) listing size."""
    assert load_appendix(7, 4, 5).size == 8


def test_serialize_header_and_order():
    """Test the serialized header and word order."""
    code = code_of(CodeParams(6, 4, 3), ["110100", "000111", "101010", "011001"], Provenance.EXACT)
    lines = serialized(code).splitlines()
    assert lines[:6] == [
        "# n=6",
        "# d=4",
        "# w=3",
        "# mode=bounded",
        "# size=4",
        "# provenance=exact",
    ]
    body = lines[6:]
    assert len(body) == 4
    assert [Word.parse(t).bits for t in body] == sorted(Word.parse(t).bits for t in body)


def test_serialize_empty_code():
    """Test serializing an empty code."""
    text = serialized(code_of(CodeParams(6, 4, 3), []))
    assert all(line.startswith("#") for line in text.splitlines())
    assert "# size=0" in text


def test_serialize_is_stable():
    """Test that equal codes serialize to identical bytes."""
    code = load_appendix(8, 4, 6)
    assert serialized(code) == serialized(Code(code.params, tuple(reversed(code.words))))


@pytest.mark.parametrize("key", appendix_keys())
def test_appendix_round_trip(key):
    """Test that shipped listings survive serialize and parse."""
    code = load_appendix(*key)
    again = parse_code_file(serialized(code), code.params)
    assert again.word_set == code.word_set


codes = st.integers(min_value=1, max_value=16).flatmap(
    lambda n: st.sets(st.integers(min_value=0, max_value=(1 << n) - 1), max_size=40).map(
        lambda values: Code(CodeParams(n, 1, n), tuple(Word(n, v) for v in values))
    )
)


@settings(max_examples=500)
@given(codes)
def test_parse_inverts_serialize(code):
    """Test that parse recovers serialized codes."""
    assert parse_code_file(serialized(code), code.params).word_set == code.word_set


def test_read_code_file(temp_dir):
    """Test reading a code file from disk."""
    path = temp_dir / "code.txt"
    path.write_text("000111\n011001\n")
    assert read_code_file(path, CodeParams(6, 4, 3)).size == 2


def test_missing_appendix():
    """Test that a missing listing raises UsageError."""
    with pytest.raises(UsageError):
        load_appendix(5, 4, 2)


def test_appendix_path_naming():
    """Test listing file names."""
    assert appendix_path(8, 4, 6).name == "A_8_4_6.txt"
    assert (8, 4, 6) in appendix_keys()
    assert len(appendix_keys()) == 69


@pytest.mark.parametrize("key", [k for k in appendix_keys() if k not in APPENDIX_ERRATA])
def test_every_appendix_listing_verifies(key):
    """Test that every listing but the erratum verifies."""
    n, d, w = key
    code = load_appendix(n, d, w)
    report = verify_code(code)
    assert report.passed, report.render()
    expected = load_shipped_table().lookup(n, d, w, WeightMode.BOUNDED)
    assert code.size == expected.value


def test_appendix_erratum_10_8_6():
    """Test the (10,8,6) listing fails at weight 6 and passes at weight 7."""
    report = verify_code(load_appendix(10, 8, 6))
    assert not report.weight_ok
    assert report.distance_ok
    assert report.weight_witness.render() == "0011111110"
    assert verify_code(load_appendix(10, 8, 7)).passed
    relabelled = Code(CodeParams(10, 8, 7), load_appendix(10, 8, 6).words)
    assert verify_code(relabelled).passed


def test_appendix_10_8_5_distance_by_oracle():
    """Test the (10,8,5) listing distance against the brute-force check."""
    distance, _ = brute_force_min_distance(load_appendix(10, 8, 5).words)
    assert distance == 8


def test_code_from_clique():
    """Test building a code from clique indices."""
    graph = build_graph(CodeParams(6, 4, 3))
    result = max_clique_exact(graph)
    code = code_from_clique(graph, result.clique, Provenance.EXACT)
    assert code.size == 4
    assert code.provenance is Provenance.EXACT
    assert verify_code(code).passed


def test_random_codes_min_distance_matches_oracle():
    """Test minimum distance against the brute-force check on random codes."""
    rng = random.Random(17)
    for _ in range(200):
        n = rng.randint(2, 24)
        values = {rng.getrandbits(n) for _ in range(rng.randint(2, 12))}
        if len(values) < 2:
            continue
        words = [Word(n, v) for v in values]
        report = verify_code(Code(CodeParams(n, 1, n), tuple(words)))
        distance, _ = brute_force_min_distance(words)
        assert report.min_distance == distance
