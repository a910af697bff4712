"""Key metrics for a network map version.

Only human contacts carry social capital: non-human contacts (pets etc.) are
counted separately and contribute to no other metric. The metric set below is
a replaceable default, not a fixed codebook.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Any

from sodia.errors import ValidationFailedError
from sodia.netmap.model import NetMapVersion, validate_version


@dataclass
class MetricsReport:
    network_size: int  # human contacts only
    per_sector_counts: dict[str, int]  # human contacts per sector, zeros included
    occupied_sector_fraction: float
    mean_closeness: float | None  # mean of (1 - radius); None when no humans
    alter_density: float | None  # human-human edges / C(network_size, 2); None when < 2 humans
    isolated_alter_count: int  # humans with no incident tie
    gender_counts: dict[str, int]  # trimmed lowercase gender, "unspecified" when absent
    non_human_count: int

    def to_dict(self) -> dict[str, Any]:
        return {
            "network_size": self.network_size,
            "per_sector_counts": dict(self.per_sector_counts),
            "occupied_sector_fraction": self.occupied_sector_fraction,
            "mean_closeness": self.mean_closeness,
            "alter_density": self.alter_density,
            "isolated_alter_count": self.isolated_alter_count,
            "gender_counts": dict(self.gender_counts),
            "non_human_count": self.non_human_count,
        }


def compute_metrics(v: NetMapVersion) -> MetricsReport:
    violations = validate_version(v)
    if violations:
        raise ValidationFailedError(violations)

    humans = [c for c in v.contacts if c.is_human]
    n = len(humans)

    per_sector = {s.sector_id: 0 for s in v.sector_config.sectors}
    for c in humans:
        per_sector[c.position.sector_id] += 1
    occupied = sum(1 for count in per_sector.values() if count > 0)
    occupied_fraction = occupied / len(v.sector_config.sectors)

    mean_closeness = None
    if n > 0:
        mean_closeness = sum(1.0 - c.position.radius for c in humans) / n

    # Valid versions only ever hold human-human edges.
    density = None
    if n >= 2:
        density = len(v.edges) / comb(n, 2)

    tied = {e.a for e in v.edges} | {e.b for e in v.edges}
    isolated = sum(1 for c in humans if c.contact_id not in tied)

    genders: dict[str, int] = {}
    for c in humans:
        key = (c.gender or "").strip().lower() or "unspecified"
        genders[key] = genders.get(key, 0) + 1

    return MetricsReport(
        network_size=n,
        per_sector_counts=per_sector,
        occupied_sector_fraction=occupied_fraction,
        mean_closeness=mean_closeness,
        alter_density=density,
        isolated_alter_count=isolated,
        gender_counts=genders,
        non_human_count=len(v.contacts) - n,
    )


def metrics_delta(a: MetricsReport, b: MetricsReport) -> dict[str, tuple[Any, Any]]:
    """Every metric whose value changed, as name -> (before, after)."""
    out: dict[str, tuple[Any, Any]] = {}
    da, db = a.to_dict(), b.to_dict()
    for name, before in da.items():
        after = db[name]
        if before != after:
            out[name] = (before, after)
    return out
