"""Unit tests for run manifests and JSON output."""

import json
from pathlib import Path

from cvmfe.utils.manifest import RunManifest, dump_json


class TestDumpJson:
    """Test deterministic JSON files."""

    def test_paths_become_strings(self, temp_dir):
        path = dump_json({"out": Path("a/b.txt"), "items": (1, 2)}, temp_dir / "x.json")

        assert json.loads(path.read_text()) == {"out": "a/b.txt", "items": [1, 2]}

    def test_trailing_newline(self, temp_dir):
        path = dump_json({"a": 1}, temp_dir / "x.json")

        assert path.read_text().endswith("}\n")

    def test_repeatable_bytes(self, temp_dir):
        payload = {"b": [0.1, 0.2], "a": {"nested": True}}
        first = dump_json(payload, temp_dir / "1.json").read_bytes()
        second = dump_json(payload, temp_dir / "2.json").read_bytes()

        assert first == second


class TestRunManifest:
    """Test the manifest record."""

    def test_write_and_load(self, temp_dir):
        manifest = RunManifest(
            command="generate",
            config={"seed": 7, "out": temp_dir / "g.txt"},
            versions={"cvmfe": "0"},
        )
        manifest.add_output(temp_dir / "g.txt")
        loaded = RunManifest.load(manifest.write(temp_dir / "m.json"))

        assert loaded.command == "generate"
        assert loaded.config == {"seed": 7, "out": str(temp_dir / "g.txt")}
        assert loaded.outputs == [str(temp_dir / "g.txt")]
        assert "timestamp" not in json.loads((temp_dir / "m.json").read_text())
