from __future__ import annotations

import pytest

from tlj.coherence import (
    CATALOG,
    MUTATIONS,
    Bounds,
    catalog_names,
    check_all,
    check_full_faithful,
    check_identity,
    check_k0_ring,
)
from tlj.scalars import Level
from tlj.tl_linear import TLMorphism, jones_wenzl

SMALL = Bounds(4, 2)

EXPECTED_ORDER = [
    "eqV",
    "pentagon",
    "unit-r",
    "unit-l",
    "triangle",
    "braid-conj",
    "hexagon1",
    "hexagon2",
    "phi-tower",
    "phi-mult",
    "phi-trace",
    "j-braided",
    "j-monoidal",
    "unm-unitary",
]


def stable(report):
    doc = report.to_json()
    doc.pop("wall_time_ms")
    return doc


def test_catalog_order_is_fixed():
    assert catalog_names() == EXPECTED_ORDER == list(CATALOG)


@pytest.mark.parametrize("name", EXPECTED_ORDER)
@pytest.mark.parametrize("lvl", [Level(1), Level.delta_two()], ids=lambda l: l.name)
def test_identity_passes_at_small_bounds(name, lvl):
    report = check_identity(name, lvl, SMALL)
    assert report.passed, report.counterexample
    assert report.tuples_checked > 0


@pytest.mark.parametrize("name", ["pentagon", "hexagon1", "hexagon2"])
def test_braided_coherence_at_k3(name):
    assert check_identity(name, Level(3), Bounds(6, 2)).passed


def test_pentagon_and_triangle_at_default_bounds():
    assert check_identity("pentagon", Level(1)).passed
    assert check_identity("triangle", Level(2)).passed


def test_alpha_mutation_breaks_pentagon():
    report = check_identity("pentagon", Level(2), mutation="alpha-green-under-red")
    assert report.status == "fail"
    counter = report.counterexample
    assert set(counter) >= {"relation", "input", "lhs_out", "rhs_out"}
    assert report.details["mutation"] == "alpha-green-under-red"


@pytest.mark.parametrize("mutation", ["sigma-left", "sigma-right"])
def test_sigma_mutations_break_a_hexagon(mutation):
    statuses = {h: check_identity(h, Level(2), mutation=mutation).status for h in ("hexagon1", "hexagon2")}
    assert "fail" in statuses.values()


@pytest.mark.parametrize("mutation", sorted(MUTATIONS))
def test_every_mutation_is_detected_somewhere(mutation):
    reports = check_all(Level(2), Bounds(6, 3), mutation=mutation)
    assert any(not r.passed for r in reports)


def test_mutations_leave_unrelated_identities_alone():
    # D^sigma does not enter the associator identities
    for name in ("pentagon", "triangle", "eqV"):
        assert check_identity(name, Level(2), SMALL, mutation="sigma-left").passed


def test_report_json_layout():
    doc = check_identity("triangle", Level(1), SMALL).to_json()
    assert list(doc) == ["identity", "level", "bounds", "tuples_checked", "status", "details", "wall_time_ms"]
    assert doc["bounds"] == {"max_len": 4, "max_filled": 2}
    assert doc["level"] == "k=1" and doc["status"] == "pass"


def test_failing_report_carries_counterexample_before_timing():
    doc = check_identity("pentagon", Level(2), mutation="alpha-green-under-red").to_json()
    keys = list(doc)
    assert keys.index("counterexample") < keys.index("wall_time_ms")


def test_reports_are_deterministic():
    a = check_identity("hexagon1", Level(2), SMALL)
    b = check_identity("hexagon1", Level(2), SMALL)
    c = check_identity("hexagon1", Level(2), SMALL, jobs=3)
    assert stable(a) == stable(b) == stable(c)
    m1 = check_identity("pentagon", Level(2), mutation="alpha-green-under-red")
    m2 = check_identity("pentagon", Level(2), mutation="alpha-green-under-red", jobs=2)
    assert stable(m1) == stable(m2)


def test_sampled_mode():
    full = check_identity("hexagon1", Level(1), Bounds(6, 3))
    sampled = check_identity("hexagon1", Level(1), Bounds(6, 3), mode="sampled", samples=5, seed=7)
    again = check_identity("hexagon1", Level(1), Bounds(6, 3), mode="sampled", samples=5, seed=7)
    assert sampled.passed and sampled.tuples_checked <= full.tuples_checked
    assert sampled.details["mode"] == "sampled" and sampled.details["seed"] == 7
    assert stable(sampled) == stable(again)


def test_errors():
    with pytest.raises(KeyError):
        check_identity("heptagon", Level(1))
    with pytest.raises(ValueError):
        check_identity("pentagon", Level(1), mode="quick")
    with pytest.raises(ValueError):
        check_identity("pentagon", Level(1), mutation="everything")
    with pytest.raises(ValueError):
        Bounds(13, 3)
    with pytest.raises(ValueError):
        Bounds(6, 7)
    with pytest.raises(ValueError):
        Bounds(-1, 0)


# -- full faithfulness -----------------------------------------------------------------


def test_full_faithful_examples():
    k2 = Level(2)
    one = TLMorphism.identity(k2, 1)
    report = check_full_faithful(one, one)
    assert report.passed and report.details["dim_B"] == report.details["dim_TLJ"] == 1
    report = check_full_faithful(jones_wenzl(2, k2), TLMorphism.identity(k2, 0))
    assert report.passed and report.details["dim_TLJ"] == 0
    k1 = Level(1)
    two = TLMorphism.identity(k1, 2)
    report = check_full_faithful(two, two)
    assert report.passed and report.details["dim_B"] == 1


@pytest.mark.parametrize("k", [1, 2])
def test_full_faithful_on_jw_pairs(k):
    level = Level(k)
    for n in range(k + 1):
        for m in range(k + 1):
            report = check_full_faithful(jones_wenzl(n, level), jones_wenzl(m, level), names=(f"f{n}", f"f{m}"))
            assert report.passed, report.to_json()
            assert report.details["P"] == f"f{n}"


# -- K0 --------------------------------------------------------------------------------


@pytest.mark.parametrize("k", [1, 2, 3])
def test_k0_ring(k):
    report = check_k0_ring(Level(k))
    assert report.passed, report.counterexample
    assert report.tuples_checked == (k + 1) ** 2


def test_k0_table_rendering():
    table = check_k0_ring(Level(1)).details["table"]
    assert table == {"f0*f0": "f0", "f0*f1": "f1", "f1*f0": "f1", "f1*f1": "f0"}


def test_k0_ring_at_delta_two_with_bound():
    report = check_k0_ring(Level.delta_two(), 3)
    assert report.passed
    assert report.details["table"]["f2*f3"] == "f1 + f3 + f5"
