"""Metrics reports, their exclusion rule, and the naive-counting oracle."""

from __future__ import annotations

import copy
import random

import pytest

from sodia.errors import ValidationFailedError
from sodia.netmap.metrics import MetricsReport, compute_metrics, metrics_delta
from sodia.netmap.model import Edge

from conftest import contact, random_version, version


def naive_metrics(v) -> dict:
    """Independent pair-enumeration oracle for compute_metrics."""
    humans = [c for c in v.contacts if c.is_human]
    human_ids = [c.contact_id for c in humans]
    edge_keys = {(min(e.a, e.b), max(e.a, e.b)) for e in v.edges}

    per_sector = {}
    for s in v.sector_config.sectors:
        count = 0
        for c in humans:
            if c.position.sector_id == s.sector_id:
                count += 1
        per_sector[s.sector_id] = count

    pairs_total = 0
    pairs_tied = 0
    for i in range(len(human_ids)):
        for j in range(i + 1, len(human_ids)):
            pairs_total += 1
            a, b = human_ids[i], human_ids[j]
            if (min(a, b), max(a, b)) in edge_keys:
                pairs_tied += 1

    isolated = 0
    for c in humans:
        touched = False
        for a, b in edge_keys:
            if c.contact_id in (a, b):
                touched = True
        if not touched:
            isolated += 1

    genders = {}
    for c in humans:
        key = (c.gender or "").strip().lower() or "unspecified"
        genders[key] = genders.get(key, 0) + 1

    return {
        "network_size": len(humans),
        "per_sector_counts": per_sector,
        "occupied_sector_fraction": sum(1 for k in per_sector.values() if k > 0)
        / len(v.sector_config.sectors),
        "mean_closeness": (
            sum(1.0 - c.position.radius for c in humans) / len(humans) if humans else None
        ),
        "alter_density": pairs_tied / pairs_total if pairs_total else None,
        "isolated_alter_count": isolated,
        "gender_counts": genders,
        "non_human_count": len(v.contacts) - len(humans),
    }


def test_empty_version():
    r = compute_metrics(version())
    assert r.network_size == 0
    assert r.non_human_count == 0
    assert r.mean_closeness is None
    assert r.alter_density is None
    assert r.occupied_sector_fraction == 0.0


def test_non_humans_only_counted_separately():
    v = version(
        [
            contact("a"),
            contact("b", frac=0.5),
            contact("c", sector="friends"),
            contact("rex", sector="family", frac=0.9, is_human=False),
        ]
    )
    r = compute_metrics(v)
    assert r.network_size == 3
    assert r.non_human_count == 1


def test_density_and_isolation_on_four_contacts():
    v = version(
        [
            contact("a"),
            contact("b", frac=0.4),
            contact("c", sector="friends"),
            contact("d", sector="work"),
        ],
        [Edge("a", "b"), Edge("b", "c")],
    )
    r = compute_metrics(v)
    assert r.alter_density == pytest.approx(2 / 6)
    assert r.isolated_alter_count == 1  # only d
    assert r.network_size == 4


def test_invalid_version_raises_with_violations():
    v = version([contact("a", name="")])
    with pytest.raises(ValidationFailedError) as err:
        compute_metrics(v)
    assert any(viol.rule == "empty_name" for viol in err.value.violations)


def test_gender_grouping_normalizes_text():
    v = version(
        [
            contact("a", gender=" Female "),
            contact("b", frac=0.4, gender="female"),
            contact("c", frac=0.6, gender=""),
            contact("d", frac=0.8),
        ]
    )
    r = compute_metrics(v)
    assert r.gender_counts == {"female": 2, "unspecified": 2}


def test_matches_naive_oracle_on_random_versions():
    rng = random.Random(7)
    for _ in range(300):
        v = random_version(rng)
        assert compute_metrics(v).to_dict() == naive_metrics(v)


def test_adding_non_humans_changes_nothing_but_their_count():
    rng = random.Random(99)
    for _ in range(50):
        v = random_version(rng)
        before = compute_metrics(v)
        augmented = copy.deepcopy(v)
        for i in range(rng.randint(1, 5)):
            augmented.contacts.append(
                contact(
                    f"pet{i}",
                    sector=rng.choice(v.sector_config.sectors).sector_id,
                    radius=rng.uniform(0.1, 1.0),
                    frac=rng.uniform(0.0, 0.99),
                    is_human=False,
                )
            )
        after = compute_metrics(augmented)
        delta = metrics_delta(before, after)
        assert set(delta) == {"non_human_count"}


def test_mean_closeness_increases_when_a_contact_moves_inward():
    v = version([contact("a", radius=0.8), contact("b", frac=0.6, radius=0.4)])
    closer = copy.deepcopy(v)
    closer.contacts[0].position.radius = 0.3
    assert compute_metrics(closer).mean_closeness > compute_metrics(v).mean_closeness


def test_density_bounds():
    humans = [contact(f"c{i}", frac=i / 10) for i in range(4)]
    edgeless = version(list(humans))
    assert compute_metrics(edgeless).alter_density == 0.0
    complete = version(
        list(humans),
        [Edge(a.contact_id, b.contact_id) for i, a in enumerate(humans) for b in humans[i + 1 :]],
    )
    assert compute_metrics(complete).alter_density == 1.0


def test_delta_identity_and_simple_change():
    v = version([contact("a"), contact("b", frac=0.4), contact("c", frac=0.6)])
    r = compute_metrics(v)
    assert metrics_delta(r, r) == {}

    bigger = copy.deepcopy(v)
    bigger.contacts.append(contact("d", frac=0.8))
    r2 = compute_metrics(bigger)
    delta = metrics_delta(r, r2)
    assert delta["network_size"] == (3, 4)


def test_delta_reports_density_disappearing():
    v4 = version(
        [contact("a"), contact("b", frac=0.4), contact("c", frac=0.6), contact("d", frac=0.8)],
        [Edge("a", "b"), Edge("c", "d")],
    )
    v1 = version([contact("a")])
    before, after = compute_metrics(v4), compute_metrics(v1)
    delta = metrics_delta(before, after)
    assert delta["network_size"] == (4, 1)
    assert delta["alter_density"] == (pytest.approx(2 / 6), None)
