"""Case documents: persistence, version management, and version diffing.

A case file is one self-contained document per client: identity, the network
map versions, the optional time bar, and a revision counter for optimistic
concurrency. Files use the `.sodia.json` extension and the canonical JSON
form from sodia.serialize, so a save/load cycle is byte-stable.
"""

from __future__ import annotations

import copy
import json
import re
from dataclasses import dataclass, field
from datetime import date, datetime, timezone
from typing import Any, Callable

from sodia.errors import (
    InvalidCaseError,
    MalformedDocumentError,
    NotFoundError,
    UnsupportedSchemaError,
    Violation,
)
from sodia.netmap.model import (
    Contact,
    Edge,
    NetMapVersion,
    Position,
    SectorConfig,
    default_sector_config,
    validate_sector_config,
    validate_version,
)
from sodia.serialize import (
    canonical_json_bytes,
    contact_to_dict,
    edge_to_dict,
    opt_date_from_text,
    position_to_dict,
    sector_config_from_dict,
    sector_config_to_dict,
    timebar_from_dict,
    timebar_to_dict,
    version_from_dict,
    version_to_dict,
)
from sodia.timebar.model import TimeBar, validate_timebar

SCHEMA_VERSION = 1

FILE_SUFFIX = ".sodia.json"

_CASE_ID_RE = re.compile(r"[A-Za-z0-9][A-Za-z0-9._-]*")


@dataclass
class ClientInfo:
    display_name: str
    gender: str | None = None
    birth_date: date | None = None


@dataclass
class CaseFile:
    case_id: str
    client: ClientInfo
    schema_version: int = SCHEMA_VERSION
    revision: int = 0
    sector_config: SectorConfig = field(default_factory=default_sector_config)
    versions: list[NetMapVersion] = field(default_factory=list)
    timebar: TimeBar | None = None

    def version_by_id(self, version_id: str) -> NetMapVersion:
        for v in self.versions:
            if v.version_id == version_id:
                return v
        raise NotFoundError("version", version_id)


def validate_case(c: CaseFile) -> list[Violation]:
    out: list[Violation] = []
    if c.schema_version != SCHEMA_VERSION:
        out.append(Violation("case", "schema_version", f"schema_version must be {SCHEMA_VERSION}"))
    if not _CASE_ID_RE.fullmatch(c.case_id or ""):
        out.append(Violation("case", "invalid_case_id", "case id must be a plain token"))
    if c.revision < 0:
        out.append(Violation("case", "negative_revision", "revision must be >= 0"))
    if not c.client.display_name.strip():
        out.append(Violation("client", "empty_name", "client display name must be non-empty"))

    out.extend(validate_sector_config(c.sector_config))

    seen: set[str] = set()
    for v in c.versions:
        if v.version_id in seen:
            out.append(
                Violation(f"version:{v.version_id}", "duplicate_version_id", f"version id {v.version_id!r} occurs twice")
            )
        seen.add(v.version_id)
        for violation in validate_version(v):
            out.append(
                Violation(f"version:{v.version_id}/{violation.entity}", violation.rule, violation.message)
            )

    if c.timebar is not None:
        if c.client.birth_date is None:
            out.append(Violation("timebar", "birth_date_missing", "a time bar requires the client's birth date"))
        elif c.timebar.birth_date != c.client.birth_date:
            out.append(
                Violation("timebar", "birth_date_mismatch", "time bar birth date must equal the client's birth date")
            )
        for violation in validate_timebar(c.timebar):
            out.append(Violation(f"timebar/{violation.entity}", violation.rule, violation.message))
    return out


# -- canonical persistence ----------------------------------------------------


def case_to_dict(c: CaseFile) -> dict:
    return {
        "schema_version": c.schema_version,
        "case_id": c.case_id,
        "revision": c.revision,
        "client": {
            "display_name": c.client.display_name,
            "gender": c.client.gender,
            "birth_date": None if c.client.birth_date is None else c.client.birth_date.isoformat(),
        },
        "sector_config": sector_config_to_dict(c.sector_config),
        "netmap_versions": [version_to_dict(v) for v in c.versions],
        "timebar": None if c.timebar is None else timebar_to_dict(c.timebar),
    }


def case_from_dict(d: dict) -> CaseFile:
    client = d["client"]
    return CaseFile(
        schema_version=int(d["schema_version"]),
        case_id=str(d["case_id"]),
        revision=int(d["revision"]),
        client=ClientInfo(
            display_name=str(client["display_name"]),
            gender=None if client.get("gender") is None else str(client["gender"]),
            birth_date=opt_date_from_text(client.get("birth_date")),
        ),
        sector_config=sector_config_from_dict(d["sector_config"]),
        versions=[version_from_dict(v) for v in d["netmap_versions"]],
        timebar=None if d.get("timebar") is None else timebar_from_dict(d["timebar"]),
    )


def save(c: CaseFile) -> bytes:
    """Canonical byte form of a case document."""
    return canonical_json_bytes(case_to_dict(c))


# Registered schema upgrades, keyed by the version they upgrade FROM. A
# document at schema n passes through MIGRATIONS[n], MIGRATIONS[n+1], ...
# until it reaches SCHEMA_VERSION.
MIGRATIONS: dict[int, Callable[[dict], dict]] = {}


def load(data: bytes) -> CaseFile:
    """Parse case document bytes; inverse of save.

    Raises MalformedDocumentError for broken input, UnsupportedSchemaError
    for documents from a newer build, and InvalidCaseError (carrying the
    violations) when a well-formed document breaks case invariants.
    """
    try:
        doc = json.loads(data.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as err:
        raise MalformedDocumentError(f"not a UTF-8 JSON document: {err}") from err
    if not isinstance(doc, dict):
        raise MalformedDocumentError("document root must be an object")

    found = doc.get("schema_version")
    if not isinstance(found, int) or isinstance(found, bool) or found < 1:
        raise MalformedDocumentError(f"schema_version must be a positive integer, got {found!r}")
    if found > SCHEMA_VERSION:
        raise UnsupportedSchemaError(found, SCHEMA_VERSION)
    while found < SCHEMA_VERSION:
        doc = MIGRATIONS[found](doc)
        found = doc["schema_version"]

    try:
        case = case_from_dict(doc)
    except (KeyError, TypeError, ValueError, AttributeError) as err:
        raise MalformedDocumentError(f"document structure is invalid: {err}") from err

    violations = validate_case(case)
    if violations:
        raise InvalidCaseError(violations)
    return case


# -- version management -------------------------------------------------------


def fresh_version_id(c: CaseFile) -> str:
    existing = {v.version_id for v in c.versions}
    numbered = [int(m.group(1)) for vid in existing if (m := re.fullmatch(r"v(\d+)", vid))]
    n = max(numbered, default=0) + 1
    while f"v{n}" in existing:
        n += 1
    return f"v{n}"


def new_version(
    c: CaseFile,
    from_version: str | None = None,
    label: str = "",
    created_at: datetime | None = None,
) -> CaseFile:
    """Append a new map version (blank, or a deep copy of an existing one).

    Returns a new case at revision + 1; the input case is untouched.
    """
    if from_version is not None:
        source = c.version_by_id(from_version)  # raises NotFoundError
        contacts = copy.deepcopy(source.contacts)
        edges = copy.deepcopy(source.edges)
        sectors = copy.deepcopy(source.sector_config)
    else:
        contacts, edges = [], []
        sectors = copy.deepcopy(c.sector_config)

    out = copy.deepcopy(c)
    out.versions.append(
        NetMapVersion(
            version_id=fresh_version_id(c),
            label=label,
            created_at=created_at or datetime.now(timezone.utc),
            sector_config=sectors,
            contacts=contacts,
            edges=edges,
        )
    )
    out.revision += 1
    return out


# -- version diffing ----------------------------------------------------------

# Contact fields compared as metadata (position is handled separately).
_METADATA_FIELDS = ("display_name", "gender", "role", "age", "is_human", "emoji")


@dataclass
class VersionDiff:
    added: list[Contact] = field(default_factory=list)
    removed: list[str] = field(default_factory=list)
    moved: list[tuple[str, Position, Position]] = field(default_factory=list)
    metadata_changed: list[tuple[str, str, Any, Any]] = field(default_factory=list)
    edges_added: list[Edge] = field(default_factory=list)
    edges_removed: list[Edge] = field(default_factory=list)

    def is_empty(self) -> bool:
        return not (
            self.added
            or self.removed
            or self.moved
            or self.metadata_changed
            or self.edges_added
            or self.edges_removed
        )

    def to_dict(self) -> dict:
        return {
            "added": [contact_to_dict(c) for c in self.added],
            "removed": list(self.removed),
            "moved": [
                {"contact_id": cid, "from": position_to_dict(old), "to": position_to_dict(new)}
                for cid, old, new in self.moved
            ],
            "metadata_changed": [
                {"contact_id": cid, "field": name, "from": old, "to": new}
                for cid, name, old, new in self.metadata_changed
            ],
            "edges_added": [edge_to_dict(e) for e in self.edges_added],
            "edges_removed": [edge_to_dict(e) for e in self.edges_removed],
        }


def _positions_equal(a: Position, b: Position) -> bool:
    return a.sector_id == b.sector_id and a.radius == b.radius and a.angle_frac == b.angle_frac


def diff_versions(a: NetMapVersion, b: NetMapVersion) -> VersionDiff:
    """Contact- and edge-level difference between two versions, keyed by id."""
    a_by_id = {c.contact_id: c for c in a.contacts}
    b_by_id = {c.contact_id: c for c in b.contacts}

    d = VersionDiff()
    d.added = [copy.deepcopy(b_by_id[cid]) for cid in sorted(b_by_id.keys() - a_by_id.keys())]
    d.removed = sorted(a_by_id.keys() - b_by_id.keys())
    for cid in sorted(a_by_id.keys() & b_by_id.keys()):
        ca, cb = a_by_id[cid], b_by_id[cid]
        if not _positions_equal(ca.position, cb.position):
            d.moved.append((cid, copy.copy(ca.position), copy.copy(cb.position)))
        for name in _METADATA_FIELDS:
            old, new = getattr(ca, name), getattr(cb, name)
            if old != new:
                d.metadata_changed.append((cid, name, old, new))

    a_edges = {e.key() for e in a.edges}
    b_edges = {e.key() for e in b.edges}
    d.edges_added = sorted(
        (copy.copy(e) for e in b.edges if e.key() not in a_edges), key=Edge.key
    )
    d.edges_removed = sorted(
        (copy.copy(e) for e in a.edges if e.key() not in b_edges), key=Edge.key
    )
    return d


def apply_diff(a: NetMapVersion, d: VersionDiff) -> NetMapVersion:
    """Patch semantics for diff_versions: apply_diff(a, diff_versions(a, b))
    reproduces b's contacts and edges (removals and in-place changes keep a's
    list order; additions append in diff order)."""
    out = copy.deepcopy(a)
    removed = set(d.removed)
    out.contacts = [c for c in out.contacts if c.contact_id not in removed]
    by_id = {c.contact_id: c for c in out.contacts}
    for cid, _, new_pos in d.moved:
        by_id[cid].position = copy.copy(new_pos)
    for cid, name, _, new_value in d.metadata_changed:
        setattr(by_id[cid], name, new_value)
    out.contacts.extend(copy.deepcopy(c) for c in d.added)

    removed_edges = {e.key() for e in d.edges_removed}
    out.edges = [e for e in out.edges if e.key() not in removed_edges]
    out.edges.extend(copy.copy(e) for e in d.edges_added)
    return out
