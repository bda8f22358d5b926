"""Acceptance gate: every criterion at its stated tolerance, one line each.

Run with ``pytest -v tests/test_acceptance.py`` or, equivalently,
``sectorlap selftest``; both call the same criterion functions.
"""

import pytest

from sectorlap.selftest import CRITERIA, run_criteria

_BY_NUMBER = {number: (name, func) for number, name, func in CRITERIA}


def _run(number):
    results = run_criteria([number])
    assert len(results) == 1
    result = results[0]
    assert result.passed, f"criterion {number:02d} [{result.name}]: {result.detail}"


def test_criterion_01_kernel_identity():
    _run(1)


def test_criterion_02_transform_oracle_match():
    _run(2)


def test_criterion_03_direction_consistency():
    _run(3)


def test_criterion_04_roundtrip():
    _run(4)


def test_criterion_05_boundary_ray_identity():
    _run(5)


def test_criterion_06_apex_invariance():
    _run(6)


def test_criterion_07_contour_bound():
    _run(7)


def test_criterion_08_indicator_accuracy():
    _run(8)


def test_criterion_09_singularity_probes():
    _run(9)


def test_criterion_10_truncated_contour_slopes():
    _run(10)


def test_criterion_11_apex_gate():
    _run(11)


def test_registry_complete():
    assert sorted(_BY_NUMBER) == list(range(1, 12))
