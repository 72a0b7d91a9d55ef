"""Command-line player and service launcher.

Exit codes for `run`: 0 Finished (or cleanly suspended), 3 CourseExhausted,
4 StepLimit, 5 Error; 2 for unusable input.
"""

import argparse
import sys
from pathlib import Path

from .engine import SessionConfig, Status
from .errors import CourseflowError, PolicyMissing
from .gadgets import TimerGadget
from .journal import export_journal
from .player import (
    DirectoryLmsAdapter,
    drive_policy,
    load_course,
    load_policy,
    load_record,
    make_session,
    parse_payload,
    resume,
    suspend,
)
from .flow import validate_course

EXIT_BY_HALT = {
    "Finished": 0,
    "CourseExhausted": 3,
    "StepLimit": 4,
    "Error": 5,
}


def _print_diagnostics(diags, out):
    for d in diags:
        print(str(d), file=out)


def cli_validate(course_dir, out=sys.stdout):
    try:
        bundle = load_course(course_dir)
    except (OSError, CourseflowError) as exc:
        print(f"error: cannot load course: {exc}", file=sys.stderr)
        return 2
    diags = list(bundle.parse_warnings)
    diags += validate_course(bundle.root_spec)
    diags += bundle.registry.check_course(bundle.root_spec)
    _print_diagnostics(diags, out)
    errors = sum(1 for d in diags if d.severity == "error")
    print(f"{errors} error(s), {len(diags) - errors} warning(s)", file=out)
    return 0 if errors == 0 else 1


def _interactive_loop(session, bundle, store_dir):
    out = sys.stdout
    while session.status is Status.AWAITING_SCENE:
        view = session.current_view()
        kind = bundle.registry.kind_for(view.presenter_type) or "message"
        info = parse_payload(kind, view.payload)
        print(f"\n[{view.path}] ({view.presenter_type})", file=out)
        if info.text:
            print(info.text, file=out)
        if kind == "choice":
            for i, opt in enumerate(info.options, 1):
                print(f"  {i}. [{opt['id']}] {opt['label']}", file=out)
        prompt = {"choice": "choice> ", "input": "text> "}.get(kind, "[enter to continue]> ")
        try:
            line = input(prompt)
        except EOFError:
            print("\n(end of input; leaving the session)", file=out)
            return 0
        line = line.strip()
        if line.startswith(":"):
            if not _console_command(line, session, bundle, store_dir, out):
                return 0
            continue
        if kind == "choice":
            chosen = None
            for i, opt in enumerate(info.options, 1):
                if line == opt["id"] or line == str(i):
                    chosen = opt["id"]
                    break
            if chosen is None and not line and info.options:
                chosen = info.options[0]["id"]
            if chosen is None:
                print("not an option; enter an option id or number", file=out)
                continue
            session.complete_scene(chosen)
        elif kind == "input":
            session.complete_scene(line)
        else:
            session.complete_scene(None)
    return None


def _console_command(line, session, bundle, store_dir, out):
    """Handle a :command; returns False when the loop should exit."""
    parts = line.split(None, 1)
    cmd, arg = parts[0], (parts[1] if len(parts) > 1 else "")
    if cmd == ":where":
        state = session.state()
        print(str(state.current) if state.current else "(nowhere)", file=out)
    elif cmd == ":global":
        from .script.values import format_value
        print(format_value(session.globals.get(arg)), file=out)
    elif cmd == ":mode":
        state = session.state()
        target = f" {state.mode_target}" if state.mode_target else ""
        print(f"{state.mode}{target}", file=out)
    elif cmd == ":journal":
        n = int(arg) if arg.isdigit() else 10
        for entry in session.journal.entries[-n:]:
            print(entry.to_line(), file=out)
    elif cmd == ":suspend":
        if store_dir is None:
            print("no --suspend-store configured", file=out)
        else:
            suspend(session, DirectoryLmsAdapter(store_dir))
            print(f"suspended to {store_dir}", file=out)
            return False
    elif cmd == ":quit":
        return False
    else:
        print(f"unknown command {cmd}; have :where :global :mode :journal :suspend :quit", file=out)
    return True


def cli_run(args):
    try:
        bundle = load_course(args.course)
    except (OSError, CourseflowError) as exc:
        print(f"error: cannot load course: {exc}", file=sys.stderr)
        return 2
    errors = [d for d in validate_course(bundle.root_spec) if d.severity == "error"]
    if errors:
        _print_diagnostics(errors, sys.stderr)
        return 2

    config = SessionConfig(seed=args.seed, step_limit=args.max_steps)
    config.register_gadget(TimerGadget())

    store_dir = args.suspend_store
    policy_text = None
    if args.policy:
        try:
            policy_text = Path(args.policy).read_text(encoding="utf-8")
        except OSError as exc:
            print(f"error: cannot read policy: {exc}", file=sys.stderr)
            return 2

    try:
        if args.resume:
            if store_dir is None:
                print("error: --resume needs --suspend-store", file=sys.stderr)
                return 2
            record = load_record(DirectoryLmsAdapter(store_dir))
            session = resume(record, bundle.root_spec, bundle.new_source(),
                             config, course_name=bundle.name)
            session.config.presenter_kinds = {
                **bundle.registry.as_dict(), **session.config.presenter_kinds}
        else:
            session = make_session(bundle, config)
            session.start()
        if policy_text is not None:
            load_policy(session, policy_text)
    except CourseflowError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    outcome = None
    if policy_text is not None and not args.interactive:
        try:
            outcome = drive_policy(session, bundle.registry)
        except (PolicyMissing, CourseflowError, ValueError, RuntimeError) as exc:
            print(f"error: policy run failed: {exc}", file=sys.stderr)
            _write_journal(session, args.journal)
            return 5
    else:
        code = _interactive_loop(session, bundle, store_dir)
        if code is not None:
            _write_journal(session, args.journal)
            return code

    if outcome == "suspend":
        if store_dir is None:
            print("error: policy asked to suspend but no --suspend-store given", file=sys.stderr)
            return 2
        suspend(session, DirectoryLmsAdapter(store_dir))
        _write_journal(session, args.journal)
        print("suspended", file=sys.stderr)
        return 0

    _write_journal(session, args.journal)
    state = session.state()
    if state.status is Status.HALTED:
        detail = f": {state.halt.detail}" if state.halt.detail else ""
        print(f"halted: {state.halt.kind}{detail}", file=sys.stderr)
        return EXIT_BY_HALT.get(state.halt.kind, 5)
    print(f"session left {state.status.value}", file=sys.stderr)
    return 0


def _write_journal(session, journal_path):
    if not journal_path:
        return
    with open(journal_path, "w", encoding="utf-8", newline="\n") as sink:
        export_journal(session.journal, sink)


def cli_serve(args):
    import uvicorn

    from .service.app import create_app

    host, _, port = args.addr.rpartition(":")
    if not host or not port.isdigit():
        print("error: --addr must be host:port", file=sys.stderr)
        return 2
    app = create_app(args.courses)
    uvicorn.run(app, host=host, port=int(port), log_level="warning")
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="courseflow",
        description="Validate, play and serve flow-driven courses.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    v = sub.add_parser("validate", help="static checks on a course directory")
    v.add_argument("course")

    r = sub.add_parser("run", help="play a course (interactive or policy-driven)")
    r.add_argument("course")
    r.add_argument("--policy", help="action-language file defining Global['Policy']")
    r.add_argument("--interactive", action="store_true",
                   help="force the prompt loop even when --policy is given")
    r.add_argument("--seed", type=int, default=0)
    r.add_argument("--journal", help="write the journal to this file")
    r.add_argument("--max-steps", type=int, default=10_000)
    r.add_argument("--suspend-store", help="directory-backed LMS store")
    r.add_argument("--resume", action="store_true",
                   help="resume from the record in --suspend-store")

    s = sub.add_parser("serve", help="run the HTTP session service")
    s.add_argument("--addr", default="127.0.0.1:8000")
    s.add_argument("--courses", required=True, help="directory of course directories")
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    if args.command == "validate":
        return cli_validate(args.course)
    if args.command == "run":
        return cli_run(args)
    if args.command == "serve":
        return cli_serve(args)
    parser.error(f"unknown command {args.command}")
    return 2


if __name__ == "__main__":
    sys.exit(main())
