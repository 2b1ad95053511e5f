"""Golden-corpus replay: recompute every bundled fixture and compare exactly.

Each fixture file holds a descriptor and a set of expected values
(predegree, orbit dimension, degree, or individual polynomial
coefficients).  All comparisons are exact rational equality; a fixture
passes only when every expected value is reproduced.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from pathlib import Path

from . import engine, model
from .series import rational_to_string, to_rational

ENV_CORPUS_DIR = "ORBITDEG_CORPUS"


@dataclass
class FixtureResult:
    name: str
    path: Path
    failures: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures


def corpus_dir(override: str | os.PathLike | None = None) -> Path:
    """The fixture directory: explicit override, then the environment
    variable, then the bundled corpus."""
    if override is not None:
        return Path(override)
    env = os.environ.get(ENV_CORPUS_DIR)
    if env:
        return Path(env)
    return Path(__file__).parent / "corpus"


def fixture_paths(directory: Path) -> list[Path]:
    if not directory.is_dir():
        raise FileNotFoundError(f"corpus directory not found: {directory}")
    paths = sorted(directory.glob("*.json"))
    if not paths:
        raise FileNotFoundError(f"no fixtures in {directory}")
    return paths


_EXPECTED_KEYS = {"orbit_dimension", "predegree", "degree", "app", "a"}


def check_fixture(path: Path, erratum_strict: bool = False) -> FixtureResult:
    """Recompute one fixture and collect exact-value mismatches."""
    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    name = data.get("name", path.stem)
    result = FixtureResult(name=name, path=path)

    try:
        descriptor = model.descriptor_from_obj(data["descriptor"])
        report = engine.assemble(descriptor, erratum_strict=erratum_strict)
    except (KeyError, model.DescriptorError, engine.EngineError) as exc:
        result.failures.append(f"fixture did not compute: {exc}")
        return result

    expected = data.get("expected", {})
    unknown = set(expected) - _EXPECTED_KEYS
    if unknown:
        result.failures.append(f"unknown expected keys: {sorted(unknown)}")

    if "orbit_dimension" in expected:
        want = expected["orbit_dimension"]
        if report.orbit_dimension != want:
            result.failures.append(f"orbit_dimension: expected {want}, got {report.orbit_dimension}")
    if "predegree" in expected:
        want = to_rational(expected["predegree"])
        if report.predegree != want:
            result.failures.append(
                f"predegree: expected {rational_to_string(want)}, got {rational_to_string(report.predegree)}"
            )
    if "degree" in expected:
        want = to_rational(expected["degree"])
        if report.degree != want:
            got = "absent" if report.degree is None else rational_to_string(report.degree)
            result.failures.append(f"degree: expected {rational_to_string(want)}, got {got}")
    if "app" in expected:
        got = report.app.to_strings()
        want_list = [rational_to_string(v) for v in expected["app"]]
        if got != want_list:
            result.failures.append(f"app: expected {want_list}, got {got}")
    if "a" in expected:
        for index, value in expected["a"].items():
            want = to_rational(value)
            got_value = report.predegree_polynomial[int(index)]
            if got_value != want:
                result.failures.append(
                    f"a{index}: expected {rational_to_string(want)}, got {rational_to_string(got_value)}"
                )
    return result


def run(directory: Path | None = None, erratum_strict: bool = False) -> list[FixtureResult]:
    """Replay the whole corpus; results come back in fixture-name order."""
    target = corpus_dir(directory)
    return [check_fixture(path, erratum_strict) for path in fixture_paths(target)]
