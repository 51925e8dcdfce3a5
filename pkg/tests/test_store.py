"""
Test suite for src/storage/EquationStore.py
"""
import json
import sys
from pathlib import Path

import pandas as pd
import pytest

sys.path.insert(0, str(Path(__file__).parent.parent))

from src.algebra.Quaternion import ONE, Quaternion  # noqa: E402
from src.errors import SchemaError  # noqa: E402
from src.generator.InstanceGenerator import generate  # noqa: E402
from src.linalg.LinearEquation import LinearEquation  # noqa: E402
from src.storage.EquationStore import EquationStore, dumps_equation, parse_equation  # noqa: E402


@pytest.fixture
def store(tmp_path):
    return EquationStore(root=str(tmp_path))


class TestParseEquation:
    """Schema validation"""

    def test_minimal(self):
        """Test a single plain term without conj_terms"""
        parsed = parse_equation({"terms": [{"c": [1, 0, 0, 0], "b": [1, 0, 0, 0]}], "rhs": [2, 0, 0, 0]})
        eq = parsed.to_equation()
        assert eq.plain_terms == ((ONE, ONE),)
        assert eq.rhs == Quaternion(2, 0, 0, 0)
        assert parsed.truth_quaternion() is None

    def test_conjugate_only(self):
        """Test an empty terms list with a conjugate term"""
        parsed = parse_equation({"terms": [], "conj_terms": [{"c": [1, 0, 0, 0], "b": [1, 0, 0, 0]}],
                                 "rhs": [1, 1, 0, 0]})
        assert parsed.to_equation().has_conjugate

    @pytest.mark.parametrize("document", [
        {"terms": [], "rhs": [1, 0, 0, 0]},
        {"terms": [{"c": [1, 0, 0], "b": [1, 0, 0, 0]}], "rhs": [1, 0, 0, 0]},
        {"terms": [{"c": [1, 0, 0, 0], "b": [1, 0, 0, 0]}]},
        {"terms": [{"c": [1, 0, 0, 0], "b": [1, 0, 0, 0]}], "rhs": [1, 0, 0, 0], "extra": 1},
        {"terms": [{"c": ["a", 0, 0, 0], "b": [1, 0, 0, 0]}], "rhs": [1, 0, 0, 0]},
    ])
    def test_invalid(self, document):
        """Test that malformed documents raise SchemaError"""
        with pytest.raises(SchemaError):
            parse_equation(document)

    @pytest.mark.parametrize("value", [float("nan"), float("inf"), float("-inf")])
    def test_non_finite_coordinates(self, value):
        """Test that NaN and infinite coordinates are rejected"""
        with pytest.raises(SchemaError):
            parse_equation({"terms": [{"c": [value, 0, 0, 0], "b": [1, 0, 0, 0]}], "rhs": [1, 0, 0, 0]})
        with pytest.raises(SchemaError):
            parse_equation({"terms": [{"c": [1, 0, 0, 0], "b": [1, 0, 0, 0]}], "rhs": [1, value, 0, 0]})


class TestEquationStore:
    """File round trips"""

    def test_write_then_read(self, store):
        """Test that a generated instance survives a round trip"""
        instance = generate(4, 3, 1)
        assert store.write_equation("eq.json", instance.equation, instance.truth)["success"]
        result = store.read_equation("eq.json")
        assert result["success"]
        assert result["equation"] == instance.equation
        assert result["truth"] == instance.truth

    def test_stable_bytes(self, store, tmp_path):
        """Test that writing the same instance twice gives identical bytes"""
        instance = generate(4, 2)
        store.write_equation("a.json", instance.equation, instance.truth)
        store.write_equation("b.json", instance.equation, instance.truth)
        assert (tmp_path / "a.json").read_bytes() == (tmp_path / "b.json").read_bytes()
        assert (tmp_path / "a.json").read_text(encoding="utf-8") == dumps_equation(instance.equation, instance.truth)

    def test_key_order(self):
        """Test the key order of the written document"""
        text = dumps_equation(LinearEquation.plain([(ONE, ONE)], ONE), ONE)
        assert list(json.loads(text)) == ["terms", "conj_terms", "rhs", "truth"]
        assert text.endswith("\n")

    def test_missing_file(self, store):
        """Test that a missing file is reported, not raised"""
        result = store.read_equation("absent.json")
        assert not result["success"]
        assert "not found" in result["error"]

    def test_invalid_json(self, store, tmp_path):
        """Test that a broken file is reported"""
        (tmp_path / "broken.json").write_text("{not json", encoding="utf-8")
        result = store.read_equation("broken.json")
        assert not result["success"]
        assert "Invalid JSON" in result["error"]

    def test_schema_error(self, store, tmp_path):
        """Test that an empty equation is reported"""
        (tmp_path / "empty.json").write_text(json.dumps({"terms": [], "rhs": [1, 0, 0, 0]}), encoding="utf-8")
        result = store.read_equation("empty.json")
        assert not result["success"]
        assert result["equation"] is None

    def test_nan_literal(self, store, tmp_path):
        """Test that a NaN literal in the file is reported as a schema error"""
        (tmp_path / "nan.json").write_text(
            '{"terms": [{"c": [NaN, 0, 0, 0], "b": [1, 0, 0, 0]}], "rhs": [1, 0, 0, 0]}', encoding="utf-8")
        result = store.read_equation("nan.json")
        assert not result["success"]
        assert result["equation"] is None

    def test_invalid_encoding(self, store, tmp_path):
        """Test that undecodable bytes are reported, not raised"""
        (tmp_path / "binary.json").write_bytes(b"\xff\xfe\x00{")
        result = store.read_equation("binary.json")
        assert not result["success"]
        assert "Invalid encoding" in result["error"]

    def test_write_csv(self, store, tmp_path):
        """Test the CSV writer"""
        table = pd.DataFrame([{"n": 1, "method": "oracle", "median_ns": 10.0, "residual_max": 0.0}])
        result = store.write_csv("out/bench.csv", table)
        assert result["success"] and result["rows"] == 1
        assert pd.read_csv(tmp_path / "out" / "bench.csv").shape == (1, 4)
