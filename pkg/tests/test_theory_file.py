import json
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from generators import gen_ground, gen_theory
from rewlang import theory_file
from rewlang.bench import bundled_definitions
from rewlang.frontend import compile_source
from rewlang.static_model import default_model
from rewlang.theory_file import CompiledTheoryFile, TheoryFileError, dumps, from_definition, loads

M = default_model()
SOURCES = bundled_definitions()


def compiled(name):
    d, th = compile_source(SOURCES[name], M)
    return from_definition(d, th, SOURCES[name])


@pytest.mark.parametrize("name", sorted(SOURCES))
def test_bundled_round_trip_is_byte_identical(name):
    text = dumps(compiled(name))
    again = loads(text)
    assert again.theory == compile_source(SOURCES[name], M)[1]
    assert dumps(again) == text


def test_header_and_metadata():
    doc = json.loads(dumps(compiled("imp")))
    assert doc["format"] == "rewlang-theory"
    assert doc["version"] == 1
    assert len(doc["source_sha256"]) == 64
    assert len(doc["rules"]) == 41
    assert doc["labels"][:2] == ["heat.neg.0", "cool.neg.0"]
    assert len(doc["freezers"]) == 14
    assert doc["value_predicate"]["variable"] == "X"


def test_no_metadata_for_bare_theory():
    doc = json.loads(dumps(compiled("two-counters")))
    assert doc["freezers"] == [] and doc["value_predicate"] is None


def test_digest_tracks_source():
    d, th = compile_source(SOURCES["two-counters"], M)
    a = from_definition(d, th, SOURCES["two-counters"])
    b = from_definition(d, th, SOURCES["two-counters"] + "\n")
    assert a.source_sha256 != b.source_sha256


@given(st.integers(0, 2**32 - 1))
def test_random_theories_round_trip(seed):
    rng = random.Random(seed)
    ctf = CompiledTheoryFile(gen_theory(rng, gen_ground(rng), max_rules=6), "0" * 64)
    text = dumps(ctf)
    back = loads(text)
    assert back.theory == ctf.theory
    assert dumps(back) == text


@pytest.mark.parametrize(
    "text",
    [
        "not json",
        "[]",
        json.dumps({"format": "something-else"}),
        json.dumps({"format": "rewlang-theory", "version": 99}),
        json.dumps({"format": "rewlang-theory", "version": 1}),
        json.dumps(
            {
                "format": "rewlang-theory", "version": 1, "source_sha256": "", "freezers": [],
                "value_predicate": None, "labels": [],
                "rules": [{"action": "a", "lhs": "s[", "rhs": "s[]", "conditions": []}],
            }
        ),
    ],
)
def test_malformed_files_rejected(text):
    with pytest.raises(TheoryFileError):
        loads(text)


def test_write_and_read(tmp_path):
    ctf = compiled("native-fib")
    path = tmp_path / "t.json"
    theory_file.write(path, ctf)
    assert theory_file.read(path).theory == ctf.theory
    assert path.read_bytes() == dumps(ctf).encode("utf-8")
