from sodia.netmap.model import (
    Contact,
    DEFAULT_SECTORS,
    Edge,
    NetMapVersion,
    Position,
    Sector,
    SectorConfig,
    default_sector_config,
    from_canvas,
    to_canvas,
    validate_version,
)
from sodia.netmap.metrics import MetricsReport, compute_metrics, metrics_delta
from sodia.netmap.declutter import (
    LayoutParams,
    LayoutSuggestion,
    apply_suggestion,
    collisions,
    suggest_layout,
)

__all__ = [
    "Contact",
    "DEFAULT_SECTORS",
    "Edge",
    "LayoutParams",
    "LayoutSuggestion",
    "MetricsReport",
    "NetMapVersion",
    "Position",
    "Sector",
    "SectorConfig",
    "apply_suggestion",
    "collisions",
    "compute_metrics",
    "default_sector_config",
    "from_canvas",
    "metrics_delta",
    "suggest_layout",
    "to_canvas",
    "validate_version",
]
