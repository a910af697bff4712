from sodia.timebar.model import (
    AxisTick,
    Lane,
    LifeEvent,
    STANDARD_LANES,
    TimeBar,
    axis_ticks,
    new_timebar,
    standard_lanes,
    validate_timebar,
)
from sodia.timebar.layout import Fragment, LaneLayout, layout_all, layout_lane

__all__ = [
    "AxisTick",
    "Fragment",
    "Lane",
    "LaneLayout",
    "LifeEvent",
    "STANDARD_LANES",
    "TimeBar",
    "axis_ticks",
    "layout_all",
    "layout_lane",
    "new_timebar",
    "standard_lanes",
    "validate_timebar",
]
