"""End-to-end acceptance suite.

One test per acceptance criterion; each prints a single
`ACCEPTANCE <name>: PASS|FAIL` line (visible with `pytest -s` or in captured
output) and enforces its runtime budget where one is stated.
"""

from __future__ import annotations

import copy
import json
import random
import time
from contextlib import contextmanager
from datetime import date, timedelta
from fractions import Fraction

import pytest
from fastapi.testclient import TestClient

from sodia.casefile import apply_diff, diff_versions, load, save, validate_case
from sodia.netmap.declutter import LayoutParams, apply_suggestion, collisions, suggest_layout
from sodia.netmap.metrics import compute_metrics, metrics_delta
from sodia.netmap.model import Position, Sector, SectorConfig, from_canvas, to_canvas
from sodia.service.app import create_app
from sodia.storage import CaseStore
from sodia.svg_export import RenderSpec, render_netmap, render_timebar
from sodia.timebar.layout import layout_all, layout_lane
from sodia.timebar.model import LifeEvent, TimeBar, axis_ticks

from conftest import contact, random_case, random_version, random_timebar
from test_casefile import scripted_edit
from test_netmap_declutter import cluttered_version, colliding_pairs_oracle
from test_netmap_metrics import naive_metrics
from test_timebar_layout import (
    assert_tiling_invariants,
    layout_as_map,
    per_day_fragments,
    random_lane,
)
from test_timebar_model import completed_years


@contextmanager
def criterion(name: str, budget_seconds: float | None = None):
    started = time.perf_counter()
    try:
        yield
    except BaseException:
        print(f"ACCEPTANCE {name}: FAIL")
        raise
    elapsed = time.perf_counter() - started
    if budget_seconds is not None and elapsed > budget_seconds:
        print(f"ACCEPTANCE {name}: FAIL (took {elapsed:.2f}s, budget {budget_seconds:.0f}s)")
        raise AssertionError(f"{name} exceeded its {budget_seconds}s runtime budget: {elapsed:.2f}s")
    print(f"ACCEPTANCE {name}: PASS ({elapsed:.2f}s)")


def test_non_human_exclusion():
    with criterion("non-human exclusion", budget_seconds=1.0):
        rng = random.Random(101)
        for _ in range(200):
            v = random_version(rng)
            before = compute_metrics(v)
            augmented = copy.deepcopy(v)
            for i in range(rng.randint(1, 5)):
                augmented.contacts.append(
                    contact(
                        f"nonhuman{i}",
                        sector=rng.choice(v.sector_config.sectors).sector_id,
                        radius=rng.uniform(0.05, 1.0),
                        frac=rng.uniform(0.0, 0.999),
                        is_human=False,
                    )
                )
            after = compute_metrics(augmented)
            assert set(metrics_delta(before, after)) == {"non_human_count"}
            assert after.network_size == before.network_size
            assert after.per_sector_counts == before.per_sector_counts
            assert after.occupied_sector_fraction == before.occupied_sector_fraction
            assert after.mean_closeness == before.mean_closeness
            assert after.alter_density == before.alter_density
            assert after.isolated_alter_count == before.isolated_alter_count
            assert after.gender_counts == before.gender_counts


def test_metrics_match_brute_force_enumeration():
    with criterion("metrics oracle", budget_seconds=5.0):
        rng = random.Random(202)
        for _ in range(1000):
            v = random_version(rng, max_contacts=12)
            assert compute_metrics(v).to_dict() == naive_metrics(v)


def test_resource_split_tiling():
    with criterion("resource-split tiling", budget_seconds=10.0):
        rng = random.Random(303)
        for _ in range(500):
            events, domain_end = random_lane(rng, max_events=10)
            layout = layout_lane(events, domain_end)
            assert_tiling_invariants(events, domain_end, layout)
            assert layout_as_map(layout) == per_day_fragments(events, domain_end)


def test_half_height_fixture():
    with criterion("half-height fixture"):
        a = LifeEvent("A", "work", date(2000, 1, 1), date(2010, 1, 1), "Job A")
        b = LifeEvent("B", "work", date(2005, 1, 1), date(2015, 1, 1), "Job B")
        layout = layout_lane([a, b], date(2024, 12, 31))
        assert layout_as_map(layout) == {
            "A": [
                (date(2000, 1, 1), date(2005, 1, 1), Fraction(0), Fraction(1)),
                (date(2005, 1, 1), date(2010, 1, 1), Fraction(0), Fraction(1, 2)),
            ],
            "B": [
                (date(2005, 1, 1), date(2010, 1, 1), Fraction(1, 2), Fraction(1)),
                (date(2010, 1, 1), date(2015, 1, 1), Fraction(0), Fraction(1)),
            ],
        }
        assert len(layout.fragments) == 4


def test_declutter_soundness():
    with criterion("declutter soundness", budget_seconds=10.0):
        params = LayoutParams(mark_radius=0.03, radius_tolerance=0.02)
        rng = random.Random(404)
        seeds = [rng.randrange(10**9) for _ in range(200)]
        for seed in seeds:
            v = cluttered_version(random.Random(seed))
            s = suggest_layout(v, params)
            originals = {c.contact_id: c.position for c in v.contacts}
            for cid, pos in s.moves.items():
                assert pos.sector_id == originals[cid].sector_id
                assert abs(pos.radius - originals[cid].radius) <= params.radius_tolerance + 1e-12
            if not s.unresolved:
                applied = apply_suggestion(v, s)
                assert collisions(applied, params) == []
                assert colliding_pairs_oracle(applied, params.min_separation) == set()
            # byte determinism: a fresh, independently built equal input
            again = suggest_layout(cluttered_version(random.Random(seed)), params)
            assert (
                json.dumps(s.to_dict(), sort_keys=True).encode()
                == json.dumps(again.to_dict(), sort_keys=True).encode()
            )


def test_persistence_round_trips_and_diff_patch():
    with criterion("persistence"):
        rng = random.Random(505)
        for _ in range(500):
            case = random_case(rng)
            assert validate_case(case) == []
            data = save(case)
            loaded = load(data)
            assert loaded == case  # load . save = identity (structural)
            assert save(loaded) == data  # save . load = identity on canonical bytes
        for _ in range(150):
            a = random_version(rng, max_contacts=10)
            b = scripted_edit(rng, a)
            assert apply_diff(a, diff_versions(a, b)) == b
            assert diff_versions(a, a).is_empty()


def test_coordinate_round_trip():
    with criterion("coordinate round-trip"):
        rng = random.Random(606)
        for _ in range(1000):
            n = rng.randint(1, 10)
            cfg = SectorConfig([Sector(f"s{i}", f"S{i}") for i in range(n)])
            p = Position(
                sector_id=f"s{rng.randrange(n)}",
                radius=rng.uniform(1e-6, 1.0),
                angle_frac=rng.choice([0.0, rng.uniform(0.0, 0.999999)]),
            )
            x, y = to_canvas(p, cfg, 450.0)
            q = from_canvas(x, y, cfg, 450.0)
            assert q.sector_id == p.sector_id
            assert abs(q.radius - p.radius) <= 1e-9
            assert abs(q.angle_frac - p.angle_frac) <= 1e-9


def test_axis_ages_match_date_arithmetic():
    with criterion("axis ages"):
        rng = random.Random(707)
        births = [date(1900, 1, 1) + timedelta(days=rng.randint(0, 365 * 120)) for _ in range(90)]
        births += [date(year, 1, 1) for year in (1900, 1960, 1999, 2000, 2016, 2019, 2020)]
        births += [date(1904, 2, 29), date(2000, 2, 29), date(2020, 12, 31)]
        for birth in births:
            bar = TimeBar(birth_date=birth, domain_end=birth + timedelta(days=rng.randint(0, 365 * 90)))
            for tick in axis_ticks(bar):
                assert tick.date == date(tick.year, 1, 1)
                assert tick.age == completed_years(birth, tick.date)


def test_api_contract(tmp_path):
    with criterion("api contract"):
        client = TestClient(create_app(CaseStore(tmp_path / "data")))

        created = client.post(
            "/api/cases", json={"display_name": "Waltraud", "gender": "female", "case_id": "w1"}
        )
        assert created.status_code == 201
        assert created.json()["revision"] == 0
        assert client.get("/api/cases/w1").json() == created.json()

        r = client.post(
            "/api/cases/w1/netmap/versions", json={"label": "first"}, headers={"If-Match": "0"}
        )
        assert r.status_code == 201 and r.json()["revision"] == 1

        r = client.post(
            "/api/cases/w1/netmap/versions/v1/contacts",
            json={
                "display_name": "Anna",
                "position": {"sector_id": "family", "radius": 0.5, "angle_frac": 0.2},
            },
            headers={"If-Match": "1"},
        )
        assert r.status_code == 201 and r.json()["revision"] == 2

        before = client.get("/api/cases/w1").json()
        stale = client.put(
            "/api/cases/w1/netmap/versions/v1",
            json={"label": "stale write", "contacts": [], "edges": []},
            headers={"If-Match": "0"},
        )
        assert stale.status_code == 409
        assert stale.json()["code"] == "CONFLICT"
        assert client.get("/api/cases/w1").json() == before

        bad = client.post(
            "/api/cases/w1/netmap/versions/v1/contacts",
            json={
                "display_name": "   ",
                "position": {"sector_id": "family", "radius": 0.4, "angle_frac": 0.6},
            },
            headers={"If-Match": "2"},
        )
        assert bad.status_code == 400
        assert bad.json()["code"] == "VALIDATION"
        assert any(v["rule"] == "empty_name" for v in bad.json()["violations"])
        assert client.get("/api/cases/w1").json() == before


def test_svg_geometry_and_stability():
    with criterion("svg geometry"):
        import xml.etree.ElementTree as ET

        ns = {"svg": "http://www.w3.org/2000/svg"}
        spec = RenderSpec()
        rng = random.Random(808)
        for _ in range(20):
            v = random_version(rng, max_contacts=10)
            svg = render_netmap(v, spec)
            assert svg.encode() == render_netmap(v, spec).encode()
            root = ET.fromstring(svg)
            marks = {}
            for g in root.iterfind(".//svg:g[@class='contact']", ns):
                node = g.find("svg:circle", ns)
                if node is not None:
                    marks[g.get("id")] = (float(node.get("cx")), float(node.get("cy")))
                else:
                    text = g.find("svg:text[@class='contact-emoji']", ns)
                    marks[g.get("id")] = (float(text.get("x")), float(text.get("y")))
            for c in v.contacts:
                x, y = to_canvas(c.position, v.sector_config, spec.netmap_plot_radius)
                gx, gy = marks[f"contact-{c.contact_id}"]
                assert abs(gx - (500.0 + x)) <= 0.01
                assert abs(gy - (500.0 + y)) <= 0.01

        for _ in range(20):
            bar = random_timebar(rng, max_events=8)
            layouts = layout_all(bar)
            svg = render_timebar(bar, layouts, spec)
            assert svg.encode() == render_timebar(bar, layouts, spec).encode()
            root = ET.fromstring(svg)
            span = (bar.domain_end - bar.birth_date).days

            def x_of(d: date) -> float:
                if span == 0:
                    return spec.label_gutter
                return spec.label_gutter + (d - bar.birth_date).days / span * (
                    spec.timebar_width - spec.label_gutter
                )

            rects = [
                (
                    r.get("data-event-id"),
                    float(r.get("x")),
                    float(r.get("y")),
                    float(r.get("width")),
                    float(r.get("height")),
                )
                for r in root.iterfind(".//svg:rect[@class='event-fragment']", ns)
            ]
            expected = []
            for lane_index, layout in enumerate(layouts):
                top = spec.axis_band + lane_index * spec.lane_height
                for f in layout.fragments:
                    expected.append(
                        (
                            f.event_id,
                            x_of(f.t0),
                            top + float(f.y0) * spec.lane_height,
                            x_of(f.t1) - x_of(f.t0),
                            (float(f.y1) - float(f.y0)) * spec.lane_height,
                        )
                    )
            assert len(rects) == len(expected)
            for got, want in zip(rects, expected):
                assert got[0] == want[0]
                for g, w in zip(got[1:], want[1:]):
                    assert abs(g - w) <= 0.01
