"""Command line client for case files.

Machine output is canonical JSON on stdout; human diagnostics go to stderr.
Exit codes: 0 success, 1 validation failure, 2 I/O or document error,
3 bad arguments (including unknown version/event ids).
"""

from __future__ import annotations

import argparse
import copy
import os
import sys
import uuid
from datetime import date
from pathlib import Path

from sodia.casefile import (
    CaseFile,
    ClientInfo,
    case_to_dict,
    diff_versions,
    load,
    save,
    validate_case,
)
from sodia.errors import (
    InvalidCaseError,
    MalformedDocumentError,
    NotFoundError,
    SodiaError,
    UnsupportedSchemaError,
    ValidationFailedError,
)
from sodia.netmap.declutter import LayoutParams, apply_suggestion, suggest_layout
from sodia.netmap.metrics import compute_metrics
from sodia.netmap.model import NetMapVersion
from sodia.serialize import canonical_json_bytes
from sodia.svg_export import RenderSpec, render_netmap, render_timebar
from sodia.timebar.layout import layout_all

DEFAULT_LISTEN = "127.0.0.1:8765"
DATA_DIR_ENV = "SODIA_DATA_DIR"


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # bad arguments exit with 3, not argparse's 2
        self.print_usage(sys.stderr)
        self.exit(3, f"{self.prog}: error: {message}\n")


def _emit(doc) -> None:
    sys.stdout.buffer.write(canonical_json_bytes(doc))
    sys.stdout.buffer.flush()


def _read_case(path: str) -> CaseFile:
    return load(Path(path).read_bytes())


def _select_version(case: CaseFile, version_id: str | None) -> NetMapVersion:
    if version_id is not None:
        return case.version_by_id(version_id)
    if not case.versions:
        raise NotFoundError("version", "(case has no map versions)")
    return case.versions[-1]


def cmd_new(args) -> int:
    path = Path(args.file)
    if path.exists():
        print(f"refusing to overwrite existing file: {path}", file=sys.stderr)
        return 2
    case = CaseFile(
        case_id=args.case_id or uuid.uuid4().hex,
        client=ClientInfo(args.name, args.gender, args.birth_date),
    )
    violations = validate_case(case)
    if violations:
        raise ValidationFailedError(violations)
    path.write_bytes(save(case))
    _emit(case_to_dict(case))
    return 0


def cmd_validate(args) -> int:
    data = Path(args.file).read_bytes()
    try:
        load(data)
        violations = []
    except InvalidCaseError as err:
        violations = err.violations
    _emit([v.to_dict() for v in violations])
    if violations:
        print(f"{len(violations)} violation(s)", file=sys.stderr)
        return 1
    return 0


def cmd_metrics(args) -> int:
    case = _read_case(args.file)
    version = _select_version(case, args.version)
    _emit(compute_metrics(version).to_dict())
    return 0


def cmd_layout(args) -> int:
    case = _read_case(args.file)
    version = _select_version(case, args.version)
    params = LayoutParams(mark_radius=args.mark_radius, radius_tolerance=args.radius_tolerance)
    suggestion = suggest_layout(version, params)
    _emit(suggestion.to_dict())
    if args.apply:
        updated = copy.deepcopy(case)
        idx = next(i for i, v in enumerate(updated.versions) if v.version_id == version.version_id)
        updated.versions[idx] = apply_suggestion(version, suggestion)
        updated.revision += 1
        Path(args.file).write_bytes(save(updated))
        print(f"applied {len(suggestion.moves)} move(s), revision {updated.revision}", file=sys.stderr)
    return 0


def cmd_diff(args) -> int:
    case = _read_case(args.file)
    d = diff_versions(case.version_by_id(args.from_version), case.version_by_id(args.to_version))
    _emit(d.to_dict())
    return 0


def cmd_render(args) -> int:
    case = _read_case(args.file)
    spec = RenderSpec()
    if args.target == "netmap":
        spec.netmap_size = args.size
        spec.netmap_plot_radius = args.plot_radius
        spec.netmap_mark_radius = args.mark_radius
        svg = render_netmap(_select_version(case, args.version), spec)
    else:
        spec.timebar_width = args.width
        spec.lane_height = args.lane_height
        if case.timebar is None:
            raise NotFoundError("timebar", case.case_id)
        svg = render_timebar(case.timebar, layout_all(case.timebar), spec)
    Path(args.output).write_text(svg, encoding="utf-8")
    print(f"wrote {args.output}", file=sys.stderr)
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    from sodia.service.app import create_app
    from sodia.storage import CaseStore

    data_dir = args.data or os.environ.get(DATA_DIR_ENV) or "sodia-data"
    host, _, port = args.listen.rpartition(":")
    if not host or not port.isdigit():
        raise ValueError(f"--listen must look like host:port, got {args.listen!r}")
    app = create_app(CaseStore(data_dir))
    print(f"serving case data from {data_dir} on {args.listen}", file=sys.stderr)
    uvicorn.run(app, host=host, port=int(port), log_level="warning")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="sodia", description="Social-diagnostics case tooling")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("new", help="create a case file")
    p.add_argument("file")
    p.add_argument("--name", required=True, help="client display name")
    p.add_argument("--gender", default=None)
    p.add_argument("--birth-date", type=date.fromisoformat, default=None)
    p.add_argument("--case-id", default=None)
    p.set_defaults(func=cmd_new)

    p = sub.add_parser("validate", help="check a case file against all invariants")
    p.add_argument("file")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("metrics", help="print the metrics report of a map version")
    p.add_argument("file")
    p.add_argument("--version", default=None, help="version id (default: latest)")
    p.set_defaults(func=cmd_metrics)

    p = sub.add_parser("layout", help="suggest a declutter layout for a map version")
    p.add_argument("file")
    p.add_argument("--version", default=None, help="version id (default: latest)")
    p.add_argument("--apply", action="store_true", help="write the moves back to the file")
    p.add_argument("--mark-radius", type=float, default=0.03)
    p.add_argument("--radius-tolerance", type=float, default=0.02)
    p.set_defaults(func=cmd_layout)

    p = sub.add_parser("diff", help="compare two map versions")
    p.add_argument("file")
    p.add_argument("--from", dest="from_version", required=True)
    p.add_argument("--to", dest="to_version", required=True)
    p.set_defaults(func=cmd_diff)

    p = sub.add_parser("render", help="export a map version or the time bar as SVG")
    p.add_argument("file")
    render_sub = p.add_subparsers(dest="target", required=True)
    p_map = render_sub.add_parser("netmap")
    p_map.add_argument("--version", default=None)
    p_map.add_argument("-o", "--output", required=True)
    p_map.add_argument("--size", type=float, default=1000.0)
    p_map.add_argument("--plot-radius", type=float, default=450.0)
    p_map.add_argument("--mark-radius", type=float, default=12.0)
    p_map.set_defaults(func=cmd_render)
    p_bar = render_sub.add_parser("timebar")
    p_bar.add_argument("-o", "--output", required=True)
    p_bar.add_argument("--width", type=float, default=1200.0)
    p_bar.add_argument("--lane-height", type=float, default=120.0)
    p_bar.set_defaults(func=cmd_render)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--listen", default=DEFAULT_LISTEN)
    p.add_argument("--data", default=None, help=f"data directory (or ${DATA_DIR_ENV})")
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (MalformedDocumentError, UnsupportedSchemaError, OSError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    except NotFoundError as err:
        print(f"error: {err}", file=sys.stderr)
        return 3
    except ValidationFailedError as err:
        for v in err.violations:
            print(f"violation: {v.entity}: {v.message} [{v.rule}]", file=sys.stderr)
        return 1
    except ValueError as err:  # bad parameter combinations (e.g. layout params)
        print(f"error: {err}", file=sys.stderr)
        return 3
    except SodiaError as err:
        print(f"error: {err}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
