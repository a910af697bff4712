"""sodia: social-diagnostics engine for network maps and biography time bars."""

from sodia.casefile import (
    CaseFile,
    ClientInfo,
    VersionDiff,
    diff_versions,
    load,
    new_version,
    save,
    validate_case,
)
from sodia.errors import SodiaError, ValidationFailedError, Violation
from sodia.netmap import (
    Contact,
    Edge,
    LayoutParams,
    LayoutSuggestion,
    MetricsReport,
    NetMapVersion,
    Position,
    Sector,
    SectorConfig,
    collisions,
    compute_metrics,
    default_sector_config,
    from_canvas,
    metrics_delta,
    suggest_layout,
    to_canvas,
    validate_version,
)
from sodia.timebar import (
    AxisTick,
    Fragment,
    Lane,
    LaneLayout,
    LifeEvent,
    TimeBar,
    axis_ticks,
    layout_all,
    layout_lane,
    standard_lanes,
    validate_timebar,
)

__version__ = "0.1.0"
