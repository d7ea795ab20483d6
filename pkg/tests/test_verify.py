import json

import pytest

from renyixent import verify as V
from renyixent.errors import ConstraintViolated

SMALL = dict(alphas=(0.5, 2.0), n_samples=20_000)


def test_oracle_section_small_grid_passes():
    rep = V.run_verify(V.VerifyConfig(families=["gaussian", "gamma"], sections=["oracle"], **SMALL))
    assert rep["summary"]["ok"]
    assert rep["summary"]["PASS"] > 0
    assert {c["family"] for c in rep["checks"]} == {"gaussian", "gamma"}


@pytest.mark.parametrize("family", ["gaussian", "beta", "exponential"])
def test_mutation_is_caught_and_located(family):
    rep = V.run_verify(V.VerifyConfig(families=[family], sections=["oracle"], mutate=family, **SMALL))
    assert not rep["summary"]["ok"]
    assert rep["failures"]
    assert all(line.startswith(f"oracle {family} alpha=") for line in rep["failures"])


def test_mutation_of_other_family_is_harmless():
    rep = V.run_verify(V.VerifyConfig(families=["gamma"], sections=["oracle"], mutate="gaussian", **SMALL))
    assert rep["summary"]["ok"]


def test_closed_value_returns_constraint():
    from renyixent import distributions as D

    out = V.closed_value("renyi", D.Exponential(1), D.Exponential(3), 0.5)
    assert isinstance(out, ConstraintViolated)
    assert out.name == "λ_h > 0"


@pytest.mark.parametrize("kwargs", [
    {"sections": ["plots"]},
    {"families": ["weibull"]},
    {"mutate": "cauchy"},
])
def test_config_validation(kwargs):
    with pytest.raises(ValueError):
        V.VerifyConfig(**kwargs)


def test_report_is_json_and_sorted():
    rep = V.run_verify(V.VerifyConfig(families=["exponential"], sections=["shannon_limit", "constraints"],
                                      **SMALL))
    text = json.dumps(rep, sort_keys=True, allow_nan=False)
    assert json.loads(text)["config"]["sections"] == ["shannon_limit", "constraints"]
    keys = [(V.SECTIONS.index(c["section"]), c["family"]) for c in rep["checks"]]
    assert keys == sorted(keys)


def test_markov_section_only():
    rep = V.run_verify(V.VerifyConfig(sections=["markov"], alphas=(0.5, 2.0)))
    assert rep["summary"]["ok"]
    assert {c["section"] for c in rep["checks"]} == {"markov"}
    assert {"iid", "brute_force", "initial_invariance", "perron", "homogeneity"} <= {
        c["family"] for c in rep["checks"]}


def test_gaussian_process_section():
    rep = V.run_verify(V.VerifyConfig(sections=["gaussian_process"]))
    assert rep["summary"]["ok"]
    assert rep["summary"]["FAIL"] == 0


def test_identity_section_includes_self_reduction():
    rep = V.run_verify(V.VerifyConfig(families=["gaussian"], sections=["identity"], **SMALL))
    assert rep["summary"]["ok"]
    kinds = {c["case"].split(":")[0] for c in rep["checks"]}
    assert kinds == {"self", "generic engine"}


def test_violation_cases_cover_every_family():
    assert set(V.VIOLATIONS) == set(V.PARAM_GRID)
    for family, cases in V.VIOLATIONS.items():
        for measure, (f1, f2, a) in cases.items():
            assert isinstance(V.closed_value(measure, f1, f2, a), ConstraintViolated), (family, measure)


def test_tolerance_env_override(monkeypatch):
    monkeypatch.setenv(V.TOLERANCE_ENV, "1e-4")
    assert V.default_tolerance() == 1e-4
    assert V.VerifyConfig().tolerance == 1e-4


def test_random_irreducible_is_irreducible():
    import numpy as np

    from renyixent import markov as mk

    rng = np.random.default_rng(0)
    for size in range(1, 9):
        R = V.random_irreducible(rng, size)
        assert len(mk.strongly_connected_components(R > 0)) == 1


def test_table_rows_shape():
    rows = V.table_rows(["gaussian"], [0.5, 2.0, 3.0], measure="renyi")
    assert len(rows) == 3
    assert set(rows[0]) == set(V.TABLE_COLUMNS)
    assert all(r["verdict"] in ("PASS", "UNDEFINED") for r in rows)
