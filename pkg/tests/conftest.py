"""Shared builders and randomized-case generators for the test suite."""

from __future__ import annotations

import random
from datetime import date, datetime, timedelta, timezone

from sodia.casefile import CaseFile, ClientInfo
from sodia.netmap.model import (
    Contact,
    Edge,
    NetMapVersion,
    Position,
    Sector,
    SectorConfig,
    default_sector_config,
)
from sodia.timebar.model import Lane, LifeEvent, TimeBar, standard_lanes

FIXED_TS = datetime(2024, 5, 2, 10, 30, 0, tzinfo=timezone.utc)

NAMES = [
    "Anna", "Bert", "Chiara", "Dragan", "Edith", "Farid", "Greta", "Hannes",
    "Ines", "Jörg", "Käthe", "Lale", "Mirko", "Nour", "Oleg", "Paula",
]
GENDERS = [None, "female", "male", "nonbinary", " Female ", ""]
ROLES = [None, "mother", "friend", "case worker", "Nachbarin", "ex-partner"]
EMOJI = [None, None, None, "🐕", "🌻", "⚽", "👩‍⚕️"]


def contact(
    cid: str,
    sector: str = "family",
    radius: float = 0.5,
    frac: float = 0.25,
    name: str | None = None,
    **kw,
) -> Contact:
    return Contact(
        contact_id=cid,
        display_name=name if name is not None else cid.capitalize(),
        position=Position(sector_id=sector, radius=radius, angle_frac=frac),
        **kw,
    )


def version(
    contacts: list[Contact] | None = None,
    edges: list[Edge] | None = None,
    cfg: SectorConfig | None = None,
    vid: str = "v1",
    label: str = "test",
) -> NetMapVersion:
    return NetMapVersion(
        version_id=vid,
        label=label,
        created_at=FIXED_TS,
        sector_config=cfg or default_sector_config(),
        contacts=contacts or [],
        edges=edges or [],
    )


def random_position(rng: random.Random, cfg: SectorConfig) -> Position:
    sector = rng.choice(cfg.sectors).sector_id
    return Position(
        sector_id=sector,
        radius=rng.uniform(1e-6, 1.0),
        angle_frac=rng.uniform(0.0, 0.999999),
    )


def random_config(rng: random.Random) -> SectorConfig:
    if rng.random() < 0.5:
        return default_sector_config()
    n = rng.randint(1, 8)
    return SectorConfig([Sector(f"s{i}", f"Sector {i}") for i in range(n)])


def random_version(
    rng: random.Random,
    max_contacts: int = 12,
    vid: str = "v1",
    cfg: SectorConfig | None = None,
) -> NetMapVersion:
    cfg = cfg or random_config(rng)
    n = rng.randint(0, max_contacts)
    contacts = []
    for i in range(n):
        contacts.append(
            Contact(
                contact_id=f"c{i}",
                display_name=rng.choice(NAMES),
                position=random_position(rng, cfg),
                gender=rng.choice(GENDERS),
                role=rng.choice(ROLES),
                age=rng.choice([None, rng.randint(0, 99)]),
                is_human=rng.random() > 0.2,
                emoji=rng.choice(EMOJI),
            )
        )
    human_ids = [c.contact_id for c in contacts if c.is_human]
    edges = []
    seen = set()
    if len(human_ids) >= 2:
        for _ in range(rng.randint(0, 2 * len(human_ids))):
            a, b = rng.sample(human_ids, 2)
            key = (min(a, b), max(a, b))
            if key in seen:
                continue
            seen.add(key)
            edges.append(Edge(a, b))
    return NetMapVersion(
        version_id=vid,
        label=f"random {vid}",
        created_at=FIXED_TS,
        sector_config=cfg,
        contacts=contacts,
        edges=edges,
    )


def random_timebar(rng: random.Random, max_events: int = 10) -> TimeBar:
    birth = date(1950, 1, 1) + timedelta(days=rng.randint(0, 20000))
    domain_end = birth + timedelta(days=rng.randint(365, 30000))
    lanes = standard_lanes()
    if rng.random() < 0.4:
        lanes.append(Lane("custom1", "Voluntary work", standard=False, order_index=6))
    bar = TimeBar(birth_date=birth, domain_end=domain_end, lanes=lanes)
    span = (domain_end - birth).days
    for i in range(rng.randint(0, max_events)):
        start = birth + timedelta(days=rng.randint(0, span))
        if rng.random() < 0.2:
            end = None
        else:
            end = start + timedelta(days=rng.randint(0, max(1, span - (start - birth).days)))
            if end > domain_end:
                end = domain_end
        bar.events.append(
            LifeEvent(
                event_id=f"e{i}",
                lane_id=rng.choice(lanes).lane_id,
                start=start,
                end=end,
                title=rng.choice(["Job", "School", "Flat", "Therapy", "Move", "Illness"]),
                note=rng.choice(["", "talked about this at length", "follow up next session"]),
                emoji=rng.choice(EMOJI),
            )
        )
    return bar


def random_case(rng: random.Random, case_id: str | None = None) -> CaseFile:
    birth = None
    timebar = None
    if rng.random() < 0.6:
        timebar = random_timebar(rng)
        birth = timebar.birth_date
    elif rng.random() < 0.5:
        birth = date(1960, 1, 1) + timedelta(days=rng.randint(0, 15000))
    cfg = random_config(rng)
    case = CaseFile(
        case_id=case_id or f"case{rng.randint(0, 10**9)}",
        client=ClientInfo(
            display_name=rng.choice(NAMES) + " " + rng.choice(["Huber", "Nosko", "Wagner", "Öztürk"]),
            gender=rng.choice([None, "female", "male"]),
            birth_date=birth,
        ),
        revision=rng.randint(0, 40),
        sector_config=cfg,
        timebar=timebar,
    )
    for i in range(rng.randint(0, 3)):
        case.versions.append(random_version(rng, max_contacts=8, vid=f"v{i + 1}", cfg=cfg))
    return case
