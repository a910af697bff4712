"""Unicode helpers for emoji fields."""

from __future__ import annotations

import regex

_GRAPHEME = regex.compile(r"\X")


def grapheme_count(s: str) -> int:
    return len(_GRAPHEME.findall(s))


def is_single_grapheme(s: str) -> bool:
    """True iff s is exactly one extended grapheme cluster (one user-perceived symbol)."""
    return bool(s) and grapheme_count(s) == 1
