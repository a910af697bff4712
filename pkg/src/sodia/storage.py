"""File-backed case store: one canonical document per case plus an index.

Writes on one case are serialized behind a per-case lock and land atomically
(temp file + rename), so concurrent readers always see a complete document.
Every mutation must name the revision it was based on; a stale revision is
rejected so two counselors cannot silently overwrite each other.
"""

from __future__ import annotations

import json
import logging
import os
import threading
from pathlib import Path
from typing import Callable

from sodia.casefile import CaseFile, FILE_SUFFIX, load, save, validate_case
from sodia.errors import (
    DuplicateCaseError,
    NotFoundError,
    RevisionConflictError,
    SodiaError,
    ValidationFailedError,
)
from sodia.serialize import canonical_json_bytes

log = logging.getLogger(__name__)

INDEX_NAME = "index.json"


class CaseStore:
    def __init__(self, root: str | Path):
        self.root = Path(root)
        self.root.mkdir(parents=True, exist_ok=True)
        self._registry_lock = threading.Lock()
        self._case_locks: dict[str, threading.Lock] = {}
        self._rebuild_index()

    # -- paths and locks ------------------------------------------------------

    def _path(self, case_id: str) -> Path:
        p = self.root / f"{case_id}{FILE_SUFFIX}"
        if p.parent != self.root:  # defense against path-like ids
            raise SodiaError(f"unsafe case id: {case_id!r}")
        return p

    def _lock(self, case_id: str) -> threading.Lock:
        with self._registry_lock:
            return self._case_locks.setdefault(case_id, threading.Lock())

    # -- index ----------------------------------------------------------------

    def _rebuild_index(self) -> None:
        entries = {}
        for p in sorted(self.root.glob(f"*{FILE_SUFFIX}")):
            try:
                case = load(p.read_bytes())
            except SodiaError as err:
                log.warning("skipping unreadable case file %s: %s", p.name, err)
                continue
            entries[case.case_id] = self._summary(case)
        self._write_index(entries)

    def _summary(self, case: CaseFile) -> dict:
        return {
            "case_id": case.case_id,
            "display_name": case.client.display_name,
            "revision": case.revision,
        }

    def _read_index(self) -> dict:
        p = self.root / INDEX_NAME
        if not p.exists():
            return {}
        return json.loads(p.read_text("utf-8"))["cases"]

    def _write_index(self, entries: dict) -> None:
        self._atomic_write(self.root / INDEX_NAME, canonical_json_bytes({"cases": entries}))

    def _update_index(self, case_id: str, summary: dict | None) -> None:
        with self._registry_lock:
            entries = self._read_index()
            if summary is None:
                entries.pop(case_id, None)
            else:
                entries[case_id] = summary
            self._write_index(entries)

    @staticmethod
    def _atomic_write(path: Path, data: bytes) -> None:
        tmp = path.with_name(path.name + ".tmp")
        tmp.write_bytes(data)
        os.replace(tmp, path)

    # -- public API -------------------------------------------------------------

    def create(self, case: CaseFile) -> CaseFile:
        violations = validate_case(case)
        if violations:
            raise ValidationFailedError(violations)
        with self._lock(case.case_id):
            path = self._path(case.case_id)
            if path.exists():
                raise DuplicateCaseError(case.case_id)
            self._atomic_write(path, save(case))
        self._update_index(case.case_id, self._summary(case))
        return case

    def get(self, case_id: str) -> CaseFile:
        path = self._path(case_id)
        if not path.exists():
            raise NotFoundError("case", case_id)
        return load(path.read_bytes())

    def list_summaries(self) -> list[dict]:
        entries = self._read_index()
        return [entries[cid] for cid in sorted(entries)]

    def update(
        self, case_id: str, expected_revision: int, mutate: Callable[[CaseFile], CaseFile]
    ) -> CaseFile:
        """Apply a mutation atomically; `mutate` must return a case whose
        revision is exactly one above the stored one."""
        with self._lock(case_id):
            current = self.get(case_id)
            base_revision = current.revision
            if base_revision != expected_revision:
                raise RevisionConflictError(expected_revision, base_revision)
            changed = mutate(current)  # may mutate `current` in place
            if changed.revision != base_revision + 1:
                raise SodiaError(
                    f"mutation must advance the revision by exactly 1 "
                    f"({base_revision} -> {changed.revision})"
                )
            if changed.case_id != case_id:
                raise SodiaError("mutation must not change the case id")
            violations = validate_case(changed)
            if violations:
                raise ValidationFailedError(violations)
            self._atomic_write(self._path(case_id), save(changed))
        self._update_index(case_id, self._summary(changed))
        return changed

    def delete(self, case_id: str, expected_revision: int) -> None:
        with self._lock(case_id):
            current = self.get(case_id)
            if current.revision != expected_revision:
                raise RevisionConflictError(expected_revision, current.revision)
            self._path(case_id).unlink()
        self._update_index(case_id, None)
