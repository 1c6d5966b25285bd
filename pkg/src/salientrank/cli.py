"""Command-line front door: enter data, compute, rank, export, what-if.

Exit codes: 0 success, 1 usage, 2 validation or domain error, 3 I/O or
malformed file. Every failure prints one ``error[<CODE>]:`` line on stderr.
"""

from __future__ import annotations

import argparse
import contextlib
import os
import re
import sys
from fractions import Fraction
from pathlib import Path

from . import session as sess
from .ahp import matrix_from_pairs, missing_pairs, parse_judgment, principal_eigen
from .errors import IoError, SalientrankError, UsageError
from .salience import TIERS, StakeholderRecord, Tier, classify, tier_from_name
from .scoring import Factor, Requirement
from .session import Session

_TIER_NAMES = tuple(t.value for t in TIERS)


class _Parser(argparse.ArgumentParser):
    """argparse that raises instead of calling sys.exit on bad input."""

    def error(self, message):
        raise UsageError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="salientrank", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", metavar="<command>")
    sub.required = True

    def add_file(p):
        p.add_argument(
            "file",
            nargs="?",
            default=None,
            help="session file (default: $SALIENTRANK_SESSION)",
        )

    p = sub.add_parser("init", help="create a new session file")
    add_file(p)
    p.add_argument("--name", required=True, help="session display name")
    p.add_argument("--force", action="store_true", help="overwrite an existing file")

    stakeholder = sub.add_parser("stakeholder", help="stakeholder records")
    ssub = stakeholder.add_subparsers(dest="subcommand", metavar="<action>")
    ssub.required = True
    p = ssub.add_parser("add", help="add a stakeholder and print its tier")
    add_file(p)
    p.add_argument("--id", required=True, dest="sid")
    p.add_argument("--name", required=True)
    p.add_argument("--power", action="store_true")
    p.add_argument("--legitimacy", action="store_true")
    p.add_argument("--urgency", action="store_true")

    requirement = sub.add_parser("requirement", help="requirement records")
    rsub = requirement.add_subparsers(dest="subcommand", metavar="<action>")
    rsub.required = True
    p = rsub.add_parser("add", help="add a requirement")
    add_file(p)
    p.add_argument("--id", required=True, dest="rid")
    p.add_argument("--title", required=True)

    p = sub.add_parser("compare", help="set one pairwise judgment")
    add_file(p)
    p.add_argument("--group", required=True, choices=_TIER_NAMES)
    p.add_argument("--pair", required=True, nargs=2, metavar=("IDA", "IDB"))
    p.add_argument("--judgment", required=True, help='scale value, "3" or "1/3"')

    p = sub.add_parser("score", help="set one requirement score for a group")
    add_file(p)
    p.add_argument("--factor", required=True, choices=[f.value for f in Factor])
    p.add_argument("--group", required=True, choices=_TIER_NAMES)
    p.add_argument("--requirement", required=True, dest="rid")
    p.add_argument("--score", required=True, type=int)

    p = sub.add_parser("priorities", help="print group priorities and consistency")
    add_file(p)
    p.add_argument(
        "--override",
        action="append",
        default=[],
        metavar="TIER=REAL",
        help="set a group priority directly (persists; repeatable)",
    )

    p = sub.add_parser("rank", help="print the requirement ranking")
    add_file(p)
    p.add_argument("--top", type=int, default=None, metavar="K")
    p.add_argument("--export", default=None, metavar="CSV_PATH")

    p = sub.add_parser("whatif", help="rank under hypothetical priorities")
    add_file(p)
    p.add_argument(
        "--priority",
        action="append",
        default=[],
        metavar="TIER=REAL",
        help="hypothetical group priority (repeatable; never persists)",
    )

    p = sub.add_parser("validate", help="print the validation report")
    add_file(p)

    p = sub.add_parser("serve", help="run the local HTTP service")
    p.add_argument("--listen", default=None, help="host:port (default 127.0.0.1:8642)")
    p.add_argument("--token", default=None, help="require this bearer token")
    p.add_argument("--data-dir", default=None, help="session file directory")
    p.add_argument("--ui", default=None, help="serve this directory as the web UI at /")

    return parser


def _session_path(args) -> Path:
    file = args.file or os.environ.get("SALIENTRANK_SESSION")
    if not file:
        raise UsageError(
            "no session file given and SALIENTRANK_SESSION is not set"
        )
    return Path(file)


@contextlib.contextmanager
def _file_lock(path: Path):
    """Advisory exclusive lock held for the duration of a mutating command."""
    import fcntl

    lock_path = path.with_name(path.name + ".lock")
    try:
        fd = os.open(lock_path, os.O_CREAT | os.O_RDWR, 0o644)
    except OSError as exc:
        raise IoError(f"cannot open lock file {lock_path}: {exc}") from exc
    try:
        fcntl.flock(fd, fcntl.LOCK_EX)
        yield
    finally:
        os.close(fd)


def _parse_assignment(text: str, flag: str) -> tuple[Tier, float]:
    if "=" not in text:
        raise UsageError(f"{flag} expects TIER=REAL, got '{text}'")
    tier_name, _, raw = text.partition("=")
    if tier_name not in _TIER_NAMES:
        raise UsageError(
            f"{flag}: unknown group '{tier_name}' (expected one of {', '.join(_TIER_NAMES)})"
        )
    try:
        value = float(raw)
    except ValueError:
        raise UsageError(f"{flag}: '{raw}' is not a number") from None
    return tier_from_name(tier_name), value


def _parse_judgment_arg(text: str) -> tuple[Fraction, Fraction | None]:
    t = text.strip()
    try:
        if re.fullmatch(r"[+-]?\d+", t):
            value = int(t)
        elif "/" in t:
            value = Fraction(t)
        else:
            value = float(t)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"cannot parse judgment '{text}'") from None
    return parse_judgment(value)


def _fmt(x: float) -> str:
    return f"{x:.4f}"


def _print_priorities(s: Session, out) -> None:
    priorities, consistency = sess.group_priorities(s)
    for tier in TIERS:
        gp = priorities[tier]
        members = gp.member_weights
        print(
            f"{tier.value} (weight {gp.group_weight}, {len(members)} member(s))",
            file=out,
        )
        for sid, weight in members.items():
            print(f"  {sid}  {_fmt(weight)}", file=out)
        line = f"  mean {_fmt(gp.mean_weight)}  priority {_fmt(gp.priority)}"
        if gp.override is not None:
            line += "  (override)"
        print(line, file=out)
        result = consistency.get(tier)
        if result is not None:
            flag = "consistent" if result.consistent else "inconsistent"
            print(
                f"  lambda_max {_fmt(result.lambda_max)}"
                f"  CI {_fmt(result.consistency_index)}"
                f"  CR {_fmt(result.consistency_ratio)}  {flag}",
                file=out,
            )


def _ranking_table(entries, deltas=None) -> list[str]:
    id_width = max([len("requirement")] + [len(e.requirement_id) for e in entries])
    header = (
        f"{'rank':>4}  {'requirement':<{id_width}}  {'value':>8}  "
        f"{'urgency':>8}  {'total':>8}"
    )
    if deltas is not None:
        header += f"  {'delta':>5}"
    lines = [header]
    for i, e in enumerate(entries):
        line = (
            f"{i + 1:>4}  {e.requirement_id:<{id_width}}  {_fmt(e.value_weight):>8}  "
            f"{_fmt(e.urgency_weight):>8}  {_fmt(e.total):>8}"
        )
        if deltas is not None:
            line += f"  {deltas[e.requirement_id]:>+5d}" if deltas[e.requirement_id] else f"  {0:>5}"
        lines.append(line)
    return lines


def _cmd_init(args) -> int:
    path = _session_path(args)
    with _file_lock(path):
        if path.exists() and not args.force:
            raise IoError(f"{path} already exists (use --force to overwrite)")
        sess.save_path(sess.new_session(args.name), path)
    print(f"created {path}")
    return 0


def _cmd_stakeholder_add(args) -> int:
    path = _session_path(args)
    record = StakeholderRecord(
        id=args.sid,
        name=args.name,
        power=args.power,
        legitimacy=args.legitimacy,
        urgency=args.urgency,
    )
    with _file_lock(path):
        s = sess.load_path(path)
        s = sess.add_stakeholder(s, record)
        sess.save_path(s, path)
    tier = classify(record)
    if tier is None:
        print(f"{record.id}: non-stakeholder (0 attributes)")
    else:
        print(f"{record.id}: {tier.value}")
    return 0


def _cmd_requirement_add(args) -> int:
    path = _session_path(args)
    with _file_lock(path):
        s = sess.load_path(path)
        s = sess.add_requirement(s, Requirement(id=args.rid, title=args.title))
        sess.save_path(s, path)
    print(f"{args.rid}: added")
    return 0


def _cmd_compare(args) -> int:
    path = _session_path(args)
    tier = tier_from_name(args.group)
    judgment, original = _parse_judgment_arg(args.judgment)
    if original is not None:
        print(
            f"warning: judgment {args.judgment} is not on the fundamental scale; "
            f"using nearest value {judgment}",
            file=sys.stderr,
        )
    a, b = args.pair
    with _file_lock(path):
        s = sess.load_path(path)
        s = sess.set_judgment(s, tier, a, b, judgment)
        sess.save_path(s, path)
    print(f"{tier.value}: {a} vs {b} = {judgment}")
    members = sess.tier_members(s).groups[tier].members
    judgments = s.judgments.get(tier, {})
    missing = missing_pairs(members, judgments)
    total = len(members) * (len(members) - 1) // 2
    print(f"{tier.value}: {total - len(missing)}/{total} pairs filled")
    if not missing:
        result = principal_eigen(matrix_from_pairs(members, judgments))
        flag = "consistent" if result.consistent else "inconsistent"
        print(f"{tier.value}: CR {_fmt(result.consistency_ratio)} ({flag})")
    return 0


def _cmd_score(args) -> int:
    path = _session_path(args)
    with _file_lock(path):
        s = sess.load_path(path)
        s = sess.set_score(
            s, Factor(args.factor), tier_from_name(args.group), args.rid, args.score
        )
        sess.save_path(s, path)
    print(f"{args.factor}/{args.group}/{args.rid} = {args.score}")
    return 0


def _cmd_priorities(args) -> int:
    path = _session_path(args)
    if args.override:
        overrides = [_parse_assignment(o, "--override") for o in args.override]
        with _file_lock(path):
            s = sess.load_path(path)
            for tier, value in overrides:
                s = sess.set_override(s, tier, value)
            sess.save_path(s, path)
    else:
        s = sess.load_path(path)
    _print_priorities(s, sys.stdout)
    return 0


def _cmd_rank(args) -> int:
    path = _session_path(args)
    if args.top is not None and args.top < 1:
        raise UsageError("--top must be at least 1")
    with _file_lock(path):
        s = sess.load_path(path)
        s = sess.computed(s)
        sess.save_path(s, path)  # persist the derived-results cache
    derived = s.derived
    entries = derived.ranking.entries
    shown = entries if args.top is None else entries[: args.top]
    for line in _ranking_table(shown):
        print(line)
    for cluster in derived.ranking.ties:
        print("tie: " + " = ".join(cluster))
    if args.export:
        csv_text = sess.ranking_csv(s)
        try:
            Path(args.export).write_text(csv_text, encoding="utf-8")
        except OSError as exc:
            raise IoError(f"cannot write {args.export}: {exc}") from exc
        print(f"exported {args.export}")
    return 0


def _cmd_whatif(args) -> int:
    path = _session_path(args)
    if not args.priority:
        raise UsageError("whatif needs at least one --priority TIER=REAL")
    hypothetical = dict(_parse_assignment(p, "--priority") for p in args.priority)
    s = sess.load_path(path)
    result = sess.what_if(s, priorities=hypothetical)
    for line in _ranking_table(result.ranking.entries, result.deltas):
        print(line)
    return 0


def _cmd_validate(args) -> int:
    path = _session_path(args)
    s = sess.load_path(path)
    report = sess.validate(s)
    for message in report.errors:
        print(f"error: {message}")
    for message in report.warnings:
        print(f"warning: {message}")
    if report.ok:
        print("valid")
        return 0
    print(f"{len(report.errors)} error(s), {len(report.warnings)} warning(s)")
    return 2


def _cmd_serve(args) -> int:
    try:
        from . import service
    except ModuleNotFoundError as exc:
        raise UsageError(
            f"the HTTP service needs optional dependencies ({exc.name}); "
            'install them with: pip install "salientrank[service]"'
        ) from exc

    return service.serve(
        listen=args.listen, token=args.token, data_dir=args.data_dir, ui_dir=args.ui
    )


_COMMANDS = {
    ("init", None): _cmd_init,
    ("stakeholder", "add"): _cmd_stakeholder_add,
    ("requirement", "add"): _cmd_requirement_add,
    ("compare", None): _cmd_compare,
    ("score", None): _cmd_score,
    ("priorities", None): _cmd_priorities,
    ("rank", None): _cmd_rank,
    ("whatif", None): _cmd_whatif,
    ("validate", None): _cmd_validate,
    ("serve", None): _cmd_serve,
}


def main(argv=None) -> int:
    try:
        args = _build_parser().parse_args(argv)
    except UsageError as exc:
        print(f"error[{exc.code}]: {exc}", file=sys.stderr)
        return exc.exit_code
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    handler = _COMMANDS[(args.command, getattr(args, "subcommand", None))]
    try:
        return handler(args)
    except SalientrankError as exc:
        print(f"error[{exc.code}]: {exc}", file=sys.stderr)
        return exc.exit_code
    except OSError as exc:
        print(f"error[IO_ERROR]: {exc}", file=sys.stderr)
        return 3


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
