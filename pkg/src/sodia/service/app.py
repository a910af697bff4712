"""HTTP service exposing cases, map versions, time bars, metrics, layout
suggestions, and SVG exports.

Single-process service over a CaseStore. Every mutating request must carry
the revision it was based on, either as an If-Match header or as a
`revision` body field; a stale value yields 409 and leaves the case
untouched. Non-2xx responses always carry one error body of the shape
{status, code, detail, violations?}.
"""

from __future__ import annotations

import re
import uuid
from datetime import date, timezone

from fastapi import Body, FastAPI, Request, Response
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from starlette.exceptions import HTTPException as StarletteHTTPException

from sodia.casefile import CaseFile, ClientInfo, case_to_dict, new_version
from sodia.errors import (
    DuplicateCaseError,
    MalformedDocumentError,
    NotFoundError,
    RevisionConflictError,
    SodiaError,
    ValidationFailedError,
    Violation,
)
from sodia.netmap.declutter import LayoutParams, suggest_layout
from sodia.netmap.metrics import compute_metrics
from sodia.netmap.model import Contact, Edge, Position, Sector, SectorConfig, default_sector_config
from sodia.serialize import (
    canonical_json_bytes,
    contact_from_dict,
    contact_to_dict,
    edge_from_dict,
    event_from_dict,
    event_to_dict,
    sector_config_from_dict,
    timebar_to_dict,
    version_to_dict,
)
from sodia.service import schemas
from sodia.storage import CaseStore
from sodia.svg_export import RenderSpec, render_netmap, render_timebar
from sodia.timebar.layout import layout_all
from sodia.timebar.model import Lane, LifeEvent, TimeBar, standard_lanes


class CanonicalJSONResponse(Response):
    media_type = "application/json"

    def render(self, content) -> bytes:
        return canonical_json_bytes(content)


def _error_body(status: int, code: str, detail: str, violations: list[Violation] | None = None):
    body: dict = {"status": status, "code": code, "detail": detail}
    if violations:
        body["violations"] = [v.to_dict() for v in violations]
    return CanonicalJSONResponse(body, status_code=status)


def _expected_revision(request: Request, body_revision: int | None) -> int:
    header = request.headers.get("if-match")
    if header is not None:
        token = header.strip()
        if token.startswith("W/"):
            token = token[2:].strip()
        token = token.strip('"')
        try:
            return int(token)
        except ValueError:
            raise ValidationFailedError(
                [Violation("request", "bad_if_match", f"If-Match must hold an integer revision, got {header!r}")]
            )
    if body_revision is not None:
        return body_revision
    raise ValidationFailedError(
        [
            Violation(
                "request",
                "missing_revision",
                "mutating requests must carry the expected revision (If-Match header or revision body field)",
            )
        ]
    )


def _fresh_id(prefix: str, existing: set[str]) -> str:
    numbered = [int(m.group(1)) for t in existing if (m := re.fullmatch(prefix + r"(\d+)", t))]
    n = max(numbered, default=0) + 1
    while f"{prefix}{n}" in existing:
        n += 1
    return f"{prefix}{n}"


def _contact_from_body(body: schemas.ContactIn, contact_id: str) -> Contact:
    return Contact(
        contact_id=contact_id,
        display_name=body.display_name,
        gender=body.gender,
        role=body.role,
        age=body.age,
        is_human=body.is_human,
        emoji=body.emoji,
        position=Position(
            sector_id=body.position.sector_id,
            radius=body.position.radius,
            angle_frac=body.position.angle_frac,
        ),
    )


def _is_unprocessable(violations: list[Violation]) -> bool:
    return any(v.rule.startswith("standard_lane") for v in violations)


def create_app(store: CaseStore) -> FastAPI:
    app = FastAPI(title="sodia", default_response_class=CanonicalJSONResponse)
    app.state.store = store
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
        expose_headers=["ETag"],
    )

    # -- error mapping ------------------------------------------------------

    @app.exception_handler(ValidationFailedError)
    def _on_validation(request: Request, err: ValidationFailedError):
        if _is_unprocessable(err.violations):
            return _error_body(422, "UNPROCESSABLE", str(err), err.violations)
        return _error_body(400, "VALIDATION", str(err), err.violations)

    @app.exception_handler(NotFoundError)
    def _on_not_found(request: Request, err: NotFoundError):
        return _error_body(404, "NOT_FOUND", str(err))

    @app.exception_handler(RevisionConflictError)
    def _on_conflict(request: Request, err: RevisionConflictError):
        return _error_body(409, "CONFLICT", str(err))

    @app.exception_handler(DuplicateCaseError)
    def _on_duplicate(request: Request, err: DuplicateCaseError):
        return _error_body(409, "CONFLICT", str(err))

    @app.exception_handler(MalformedDocumentError)
    def _on_malformed(request: Request, err: MalformedDocumentError):
        return _error_body(400, "MALFORMED", str(err))

    @app.exception_handler(SodiaError)
    def _on_domain_error(request: Request, err: SodiaError):
        return _error_body(500, "INTERNAL", str(err))

    @app.exception_handler(RequestValidationError)
    def _on_request_validation(request: Request, err: RequestValidationError):
        violations = [
            Violation(
                entity=".".join(str(part) for part in e.get("loc", ())),
                rule=str(e.get("type", "invalid")),
                message=str(e.get("msg", "invalid value")),
            )
            for e in err.errors()
        ]
        return _error_body(400, "VALIDATION", "request body failed validation", violations)

    @app.exception_handler(StarletteHTTPException)
    def _on_http_error(request: Request, err: StarletteHTTPException):
        code = {404: "NOT_FOUND", 405: "METHOD_NOT_ALLOWED"}.get(err.status_code, f"HTTP_{err.status_code}")
        return _error_body(err.status_code, code, str(err.detail))

    # -- cases ----------------------------------------------------------------

    @app.post("/api/cases", status_code=201)
    def create_case(body: schemas.CreateCaseRequest):
        sectors = (
            default_sector_config()
            if body.sectors is None
            else SectorConfig([Sector(s.sector_id, s.label) for s in body.sectors])
        )
        case = CaseFile(
            case_id=body.case_id or uuid.uuid4().hex,
            client=ClientInfo(body.display_name, body.gender, body.birth_date),
            sector_config=sectors,
        )
        store.create(case)
        return case_to_dict(case)

    @app.get("/api/cases")
    def list_cases():
        return {"cases": store.list_summaries()}

    @app.get("/api/cases/{case_id}")
    def get_case(case_id: str):
        return case_to_dict(store.get(case_id))

    @app.delete("/api/cases/{case_id}", status_code=204)
    def delete_case(
        case_id: str, request: Request, body: schemas.DeleteBody | None = Body(default=None)
    ):
        revision = _expected_revision(request, body.revision if body else None)
        store.delete(case_id, revision)
        return Response(status_code=204)

    # -- network map versions ---------------------------------------------------

    @app.post("/api/cases/{case_id}/netmap/versions", status_code=201)
    def create_version(case_id: str, request: Request, body: schemas.NewVersionRequest):
        revision = _expected_revision(request, body.revision)

        def mutate(case: CaseFile) -> CaseFile:
            return new_version(case, from_version=body.from_version, label=body.label)

        changed = store.update(case_id, revision, mutate)
        return {"revision": changed.revision, "version": version_to_dict(changed.versions[-1])}

    @app.put("/api/cases/{case_id}/netmap/versions/{version_id}")
    def replace_version(case_id: str, version_id: str, request: Request, body: schemas.VersionReplace):
        revision = _expected_revision(request, body.revision)

        def mutate(case: CaseFile) -> CaseFile:
            v = case.version_by_id(version_id)
            v.label = body.label
            if body.created_at is not None:
                created = body.created_at
                if created.tzinfo is None:
                    created = created.replace(tzinfo=timezone.utc)
                v.created_at = created
            if body.sector_config is not None:
                v.sector_config = _parse_subdoc(sector_config_from_dict, body.sector_config)
            v.contacts = [_parse_subdoc(contact_from_dict, c) for c in body.contacts]
            v.edges = [_parse_subdoc(edge_from_dict, e) for e in body.edges]
            case.revision += 1
            return case

        changed = store.update(case_id, revision, mutate)
        return {"revision": changed.revision, "version": version_to_dict(changed.version_by_id(version_id))}

    # -- contacts and edges -------------------------------------------------------

    @app.post("/api/cases/{case_id}/netmap/versions/{version_id}/contacts", status_code=201)
    def add_contact(case_id: str, version_id: str, request: Request, body: schemas.ContactIn):
        revision = _expected_revision(request, body.revision)
        created: dict = {}

        def mutate(case: CaseFile) -> CaseFile:
            v = case.version_by_id(version_id)
            cid = body.contact_id or _fresh_id("c", {c.contact_id for c in v.contacts})
            contact = _contact_from_body(body, cid)
            v.contacts.append(contact)
            created["contact"] = contact_to_dict(contact)
            case.revision += 1
            return case

        changed = store.update(case_id, revision, mutate)
        return {"revision": changed.revision, "contact": created["contact"]}

    @app.put("/api/cases/{case_id}/netmap/versions/{version_id}/contacts/{contact_id}")
    def replace_contact(
        case_id: str, version_id: str, contact_id: str, request: Request, body: schemas.ContactIn
    ):
        revision = _expected_revision(request, body.revision)

        def mutate(case: CaseFile) -> CaseFile:
            v = case.version_by_id(version_id)
            old = v.contact_by_id(contact_id)
            v.contacts[v.contacts.index(old)] = _contact_from_body(body, contact_id)
            case.revision += 1
            return case

        changed = store.update(case_id, revision, mutate)
        return {
            "revision": changed.revision,
            "contact": contact_to_dict(changed.version_by_id(version_id).contact_by_id(contact_id)),
        }

    @app.delete("/api/cases/{case_id}/netmap/versions/{version_id}/contacts/{contact_id}")
    def delete_contact(
        case_id: str,
        version_id: str,
        contact_id: str,
        request: Request,
        body: schemas.DeleteBody | None = Body(default=None),
    ):
        revision = _expected_revision(request, body.revision if body else None)

        def mutate(case: CaseFile) -> CaseFile:
            v = case.version_by_id(version_id)
            v.contact_by_id(contact_id)  # 404 when absent
            v.contacts = [c for c in v.contacts if c.contact_id != contact_id]
            # incident ties go with the contact
            v.edges = [e for e in v.edges if contact_id not in (e.a, e.b)]
            case.revision += 1
            return case

        changed = store.update(case_id, revision, mutate)
        return {"revision": changed.revision}

    @app.post("/api/cases/{case_id}/netmap/versions/{version_id}/edges", status_code=201)
    def add_edge(case_id: str, version_id: str, request: Request, body: schemas.EdgeIn):
        revision = _expected_revision(request, body.revision)

        def mutate(case: CaseFile) -> CaseFile:
            v = case.version_by_id(version_id)
            v.edges.append(Edge(a=body.a, b=body.b))
            case.revision += 1
            return case

        changed = store.update(case_id, revision, mutate)
        return {"revision": changed.revision, "edge": {"a": body.a, "b": body.b}}

    @app.delete("/api/cases/{case_id}/netmap/versions/{version_id}/edges/{a}/{b}")
    def delete_edge(
        case_id: str,
        version_id: str,
        a: str,
        b: str,
        request: Request,
        body: schemas.DeleteBody | None = Body(default=None),
    ):
        revision = _expected_revision(request, body.revision if body else None)
        key = tuple(sorted((a, b)))

        def mutate(case: CaseFile) -> CaseFile:
            v = case.version_by_id(version_id)
            remaining = [e for e in v.edges if e.key() != key]
            if len(remaining) == len(v.edges):
                raise NotFoundError("edge", f"{a}-{b}")
            v.edges = remaining
            case.revision += 1
            return case

        changed = store.update(case_id, revision, mutate)
        return {"revision": changed.revision}

    # -- metrics and layout -------------------------------------------------------

    @app.get("/api/cases/{case_id}/netmap/versions/{version_id}/metrics")
    def version_metrics(case_id: str, version_id: str):
        case = store.get(case_id)
        return compute_metrics(case.version_by_id(version_id)).to_dict()

    @app.post("/api/cases/{case_id}/netmap/versions/{version_id}/layout:suggest")
    def version_layout_suggest(
        case_id: str, version_id: str, body: schemas.LayoutParamsIn | None = Body(default=None)
    ):
        case = store.get(case_id)
        params_in = body or schemas.LayoutParamsIn()
        try:
            params = LayoutParams(
                mark_radius=params_in.mark_radius, radius_tolerance=params_in.radius_tolerance
            )
        except ValueError as err:
            raise ValidationFailedError([Violation("layout_params", "out_of_range", str(err))])
        return suggest_layout(case.version_by_id(version_id), params).to_dict()

    # -- time bar ------------------------------------------------------------------

    @app.put("/api/cases/{case_id}/timebar")
    def replace_timebar(case_id: str, request: Request, body: schemas.TimeBarReplace):
        revision = _expected_revision(request, body.revision)

        def mutate(case: CaseFile) -> CaseFile:
            birth = body.birth_date or case.client.birth_date
            if birth is None:
                raise ValidationFailedError(
                    [Violation("timebar", "birth_date_missing", "a time bar requires the client's birth date")]
                )
            lanes = (
                standard_lanes()
                if body.lanes is None
                else [Lane(ln.lane_id, ln.label, ln.standard, ln.order_index) for ln in body.lanes]
            )
            events = [_parse_subdoc(event_from_dict, e) for e in body.events]
            case.timebar = TimeBar(
                birth_date=birth,
                domain_end=body.domain_end or date.today(),
                lanes=lanes,
                events=events,
            )
            case.revision += 1
            return case

        changed = store.update(case_id, revision, mutate)
        return {"revision": changed.revision, "timebar": timebar_to_dict(changed.timebar)}

    @app.post("/api/cases/{case_id}/timebar/events", status_code=201)
    def add_event(case_id: str, request: Request, body: schemas.EventIn):
        revision = _expected_revision(request, body.revision)
        created: dict = {}

        def mutate(case: CaseFile) -> CaseFile:
            bar = _require_timebar(case)
            eid = body.event_id or _fresh_id("e", {e.event_id for e in bar.events})
            event = LifeEvent(
                event_id=eid,
                lane_id=body.lane_id,
                start=body.start,
                end=body.end,
                title=body.title,
                note=body.note,
                emoji=body.emoji,
            )
            bar.events.append(event)
            created["event"] = event_to_dict(event)
            case.revision += 1
            return case

        changed = store.update(case_id, revision, mutate)
        return {"revision": changed.revision, "event": created["event"]}

    @app.put("/api/cases/{case_id}/timebar/events/{event_id}")
    def replace_event(case_id: str, event_id: str, request: Request, body: schemas.EventIn):
        revision = _expected_revision(request, body.revision)

        def mutate(case: CaseFile) -> CaseFile:
            bar = _require_timebar(case)
            old = bar.event_by_id(event_id)
            bar.events[bar.events.index(old)] = LifeEvent(
                event_id=event_id,
                lane_id=body.lane_id,
                start=body.start,
                end=body.end,
                title=body.title,
                note=body.note,
                emoji=body.emoji,
            )
            case.revision += 1
            return case

        changed = store.update(case_id, revision, mutate)
        return {"revision": changed.revision, "event": event_to_dict(changed.timebar.event_by_id(event_id))}

    @app.delete("/api/cases/{case_id}/timebar/events/{event_id}")
    def delete_event(
        case_id: str,
        event_id: str,
        request: Request,
        body: schemas.DeleteBody | None = Body(default=None),
    ):
        revision = _expected_revision(request, body.revision if body else None)

        def mutate(case: CaseFile) -> CaseFile:
            bar = _require_timebar(case)
            bar.event_by_id(event_id)  # 404 when absent
            bar.events = [e for e in bar.events if e.event_id != event_id]
            case.revision += 1
            return case

        changed = store.update(case_id, revision, mutate)
        return {"revision": changed.revision}

    @app.get("/api/cases/{case_id}/timebar/layout")
    def timebar_layout(case_id: str):
        case = store.get(case_id)
        bar = _require_timebar(case)
        return {"lanes": [layout.to_dict() for layout in layout_all(bar)]}

    # -- exports --------------------------------------------------------------------

    @app.get("/api/cases/{case_id}/export/netmap/{version_id}.svg")
    def export_netmap(case_id: str, version_id: str):
        case = store.get(case_id)
        svg = render_netmap(case.version_by_id(version_id), RenderSpec())
        return Response(content=svg, media_type="image/svg+xml")

    @app.get("/api/cases/{case_id}/export/timebar.svg")
    def export_timebar(case_id: str):
        case = store.get(case_id)
        bar = _require_timebar(case)
        svg = render_timebar(bar, layout_all(bar), RenderSpec())
        return Response(content=svg, media_type="image/svg+xml")

    return app


def _require_timebar(case: CaseFile) -> TimeBar:
    if case.timebar is None:
        raise NotFoundError("timebar", case.case_id)
    return case.timebar


def _parse_subdoc(parser, raw: dict):
    try:
        return parser(raw)
    except (KeyError, TypeError, ValueError, AttributeError) as err:
        raise MalformedDocumentError(f"invalid document fragment: {err}") from err
