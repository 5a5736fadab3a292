"""Text formats: instance files, schedule files, and result JSON.

The instance format is line oriented.  '#' starts a comment, blank lines
are ignored, and numbers are parsed as exact rationals ("5", "-3", "4.5",
"9/2") unless mode="float" is requested; scientific notation is rejected
in exact mode.  A file holds optional "title:" / "unit:" lines, one
"activity" line per activity, and one line per temporal constraint:

    title: Vaccination sessions
    unit: hour

    activity session-1 release=0 start-by=4 finish-by=12

    start-start  session-1 -> session-2 lag=1
    start-finish session-1 -> session-1 lag=4
    finish-start session-1 -> session-3 lag=0

"<kind> a -> b lag=v" bounds b by a: the start (or finish) of a plus v is
a lower bound on the start (or finish) of b.  Omitting release leaves the
activity unconstrained from below.  Every activity must appear on the
start side of some start-finish constraint (usually its own duration).
The start-start diagonal defaults to the identity lag 0.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction

from .scheduling import ProjectInstance, Schedule, Violation
from .semiring import BOTTOM, ONE, TropMatrix, TropScalar, TropVector

__all__ = [
    "InstanceFormatError",
    "InstanceDocument",
    "ResultDocument",
    "parse_instance",
    "load_instance",
    "serialize_instance",
    "parse_schedule",
    "serialize_schedule",
    "result_to_json",
    "result_from_json",
]

RESULT_FORMAT = "tropsched-result/1"

_NAME_RE = re.compile(r"[A-Za-z0-9][A-Za-z0-9_.+:-]*\Z")
_EXACT_NUM_RE = re.compile(r"[+-]?(?:\d+(?:\.\d+)?|\.\d+|\d+/\d+)\Z")

_KINDS = ("start-start", "start-finish", "finish-start")
_ACTIVITY_KEYS = ("release", "start-by", "finish-by")


class InstanceFormatError(ValueError):
    """A document could not be parsed; line carries the 1-based line number."""

    def __init__(self, message, *, line=None):
        self.line = line
        super().__init__(message if line is None else f"line {line}: {message}")


def _parse_number(tok, mode, line):
    if mode == "exact":
        if not _EXACT_NUM_RE.match(tok):
            hint = (
                " (scientific notation is not allowed in exact mode)"
                if "e" in tok.lower()
                else ""
            )
            raise InstanceFormatError(f"bad number {tok!r}{hint}", line=line)
        try:
            return Fraction(tok)
        except ZeroDivisionError:
            raise InstanceFormatError(f"bad number {tok!r}: zero denominator", line=line)
    try:
        v = float(tok)
    except ValueError:
        raise InstanceFormatError(f"bad number {tok!r}", line=line)
    if v != v or v in (float("inf"), float("-inf")):
        raise InstanceFormatError(f"bad number {tok!r}", line=line)
    return v


@dataclass(frozen=True)
class InstanceDocument:
    """A parsed instance file: activity names plus the instance matrices."""

    names: tuple[str, ...]
    instance: ProjectInstance
    title: str | None = None
    unit: str | None = None

    @property
    def n(self):
        return len(self.names)


def parse_instance(text, *, mode="exact", diagonal_one=True):
    """Parse instance text into an InstanceDocument.

    diagonal_one controls whether missing start-start self-lags default to
    the identity lag 0 (they carry no constraint either way).
    """
    if mode not in ("exact", "float"):
        raise ValueError("mode must be 'exact' or 'float'")
    title = None
    unit = None
    names: list[str] = []
    index: dict[str, int] = {}
    acts: list[dict] = []
    raw_cons: list[tuple] = []

    for ln, raw in enumerate(text.splitlines(), 1):
        line = raw
        pos = line.find("#")
        if pos != -1:
            line = line[:pos]
        line = line.strip()
        if not line:
            continue
        if line.startswith("title:"):
            if title is not None:
                raise InstanceFormatError("duplicate title", line=ln)
            title = line[len("title:"):].strip() or None
            continue
        if line.startswith("unit:"):
            if unit is not None:
                raise InstanceFormatError("duplicate unit", line=ln)
            unit = line[len("unit:"):].strip() or None
            continue
        toks = line.split()
        if toks[0] == "activity":
            if len(toks) < 2:
                raise InstanceFormatError("activity needs a name", line=ln)
            name = toks[1]
            if not _NAME_RE.match(name):
                raise InstanceFormatError(f"bad activity name {name!r}", line=ln)
            if name in index:
                raise InstanceFormatError(f"duplicate activity {name!r}", line=ln)
            fields = {}
            for tok in toks[2:]:
                key, eq, val = tok.partition("=")
                if not eq or key not in _ACTIVITY_KEYS:
                    raise InstanceFormatError(
                        f"bad activity field {tok!r}"
                        f" (expected release= / start-by= / finish-by=)",
                        line=ln,
                    )
                if key in fields:
                    raise InstanceFormatError(f"duplicate field {key!r}", line=ln)
                fields[key] = _parse_number(val, mode, ln)
            for key in ("start-by", "finish-by"):
                if key not in fields:
                    raise InstanceFormatError(
                        f"activity {name!r} is missing {key}=", line=ln
                    )
            index[name] = len(names)
            names.append(name)
            acts.append(fields)
        elif toks[0] in _KINDS:
            if (
                len(toks) != 5
                or toks[2] != "->"
                or not toks[4].startswith("lag=")
            ):
                raise InstanceFormatError(
                    f"expected '{toks[0]} <from> -> <to> lag=<number>'", line=ln
                )
            lag = _parse_number(toks[4][len("lag="):], mode, ln)
            raw_cons.append((toks[0], toks[1], toks[3], lag, ln))
        else:
            raise InstanceFormatError(f"unknown directive {toks[0]!r}", line=ln)

    if not names:
        raise InstanceFormatError("no activities defined")
    n = len(names)
    grids = {kind: [[None] * n for _ in range(n)] for kind in _KINDS}
    seen = set()
    for kind, src, dst, lag, ln in raw_cons:
        for nm in (src, dst):
            if nm not in index:
                raise InstanceFormatError(f"unknown activity {nm!r}", line=ln)
        key = (kind, src, dst)
        if key in seen:
            raise InstanceFormatError(
                f"duplicate constraint {kind} {src} -> {dst}", line=ln
            )
        seen.add(key)
        # "src -> dst" bounds dst from src: row dst, column src
        grids[kind][index[dst]][index[src]] = TropScalar(lag).value

    for j in range(n):
        if all(grids["start-finish"][i][j] is None for i in range(n)):
            raise InstanceFormatError(
                f"activity {names[j]!r} is on the start side of no start-finish"
                f" constraint; add its duration, e.g."
                f" 'start-finish {names[j]} -> {names[j]} lag=<duration>'"
            )
    if diagonal_one:
        b = grids["start-start"]
        for i in range(n):
            if b[i][i] is None:
                b[i][i] = 0

    inst = ProjectInstance(
        start_start=TropMatrix(grids["start-start"]),
        start_finish=TropMatrix(grids["start-finish"]),
        finish_start=TropMatrix(grids["finish-start"]),
        release=TropVector(a.get("release") for a in acts),
        start_deadline=TropVector(a["start-by"] for a in acts),
        finish_deadline=TropVector(a["finish-by"] for a in acts),
    )
    return InstanceDocument(
        names=tuple(names), instance=inst, title=title, unit=unit
    )


def load_instance(path, *, mode="exact", diagonal_one=True):
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    try:
        return parse_instance(text, mode=mode, diagonal_one=diagonal_one)
    except InstanceFormatError as e:
        raise InstanceFormatError(f"{path}: {e.args[0]}") from e


def serialize_instance(doc):
    """Instance text that parses back to an equal document (exact data)."""
    inst = doc.instance
    names = doc.names
    n = len(names)
    lines = []
    if doc.title:
        lines.append(f"title: {doc.title}")
    if doc.unit:
        lines.append(f"unit: {doc.unit}")
    if lines:
        lines.append("")
    for i, nm in enumerate(names):
        parts = [f"activity {nm}"]
        rel = inst.release[i]
        if not rel.is_bottom:
            parts.append(f"release={rel}")
        parts.append(f"start-by={inst.start_deadline[i]}")
        parts.append(f"finish-by={inst.finish_deadline[i]}")
        lines.append(" ".join(parts))
    lines.append("")
    for kind, mat in (
        ("start-start", inst.start_start),
        ("start-finish", inst.start_finish),
        ("finish-start", inst.finish_start),
    ):
        for i in range(n):
            for j in range(n):
                v = mat[i, j]
                if v.is_bottom:
                    continue
                if kind == "start-start" and i == j and v == ONE:
                    continue
                lines.append(f"{kind} {names[j]} -> {names[i]} lag={v}")
    return "\n".join(lines) + "\n"


def parse_schedule(text, *, mode="exact"):
    """Parse 'name start finish' lines into an ordered name -> times dict."""
    out: dict[str, tuple[TropScalar, TropScalar]] = {}
    for ln, raw in enumerate(text.splitlines(), 1):
        line = raw
        pos = line.find("#")
        if pos != -1:
            line = line[:pos]
        line = line.strip()
        if not line:
            continue
        toks = line.split()
        if len(toks) != 3:
            raise InstanceFormatError(
                "expected '<activity> <start> <finish>'", line=ln
            )
        name = toks[0]
        if name in out:
            raise InstanceFormatError(f"duplicate activity {name!r}", line=ln)
        start = _parse_number(toks[1], mode, ln)
        finish = _parse_number(toks[2], mode, ln)
        out[name] = (TropScalar(start), TropScalar(finish))
    if not out:
        raise InstanceFormatError("no schedule rows found")
    return out


def serialize_schedule(names, sched):
    width = max(len(nm) for nm in names)
    return "".join(
        f"{nm.ljust(width)}  {sched.start[i]}  {sched.finish[i]}\n"
        for i, nm in enumerate(names)
    )


@dataclass(frozen=True)
class ResultDocument:
    """A solved family plus its extreme schedules, ready for JSON transport.

    low is None when the release vector is the zero vector: the family is
    then closed under shifting schedules earlier, so no earliest extreme
    exists.  The verification fields record the violation reports of the
    extremes (always empty for solver output; kept so external results can
    round-trip).
    """

    objective: str
    mode: str
    names: tuple[str, ...]
    theta: TropScalar
    generator: TropMatrix
    u_low: TropVector
    u_high: TropVector
    low: Schedule | None
    high: Schedule
    unique: bool
    title: str | None = None
    unit: str | None = None
    violations_low: tuple[Violation, ...] | None = ()
    violations_high: tuple[Violation, ...] = ()


def _scalar_json(s):
    v = s.value
    if v is None:
        return None
    if isinstance(v, float):
        return v
    return str(v)


def _scalar_from_json(o):
    if o is None:
        return BOTTOM
    if isinstance(o, str):
        return TropScalar(Fraction(o))
    if isinstance(o, bool) or not isinstance(o, (int, float)):
        raise InstanceFormatError(f"bad scalar {o!r} in result document")
    return TropScalar(o)


def _vector_json(vec):
    return [_scalar_json(s) for s in vec]


def _vector_from_json(obj):
    return TropVector(_scalar_from_json(o) for o in obj)


def _schedule_json(sched):
    if sched is None:
        return None
    return {
        "start": _vector_json(sched.start),
        "finish": _vector_json(sched.finish),
    }


def _schedule_from_json(obj):
    if obj is None:
        return None
    return Schedule(
        start=_vector_from_json(obj["start"]),
        finish=_vector_from_json(obj["finish"]),
    )


def _violations_json(violations):
    if violations is None:
        return None
    return {
        "feasible": not violations,
        "violations": [
            {
                "kind": v.kind,
                "where": list(v.where),
                "amount": _scalar_json(v.amount),
                "detail": v.detail,
            }
            for v in violations
        ],
    }


def _violations_from_json(obj):
    if obj is None:
        return None
    return tuple(
        Violation(
            kind=v["kind"],
            where=tuple(v["where"]),
            amount=_scalar_from_json(v["amount"]),
            detail=v["detail"],
        )
        for v in obj["violations"]
    )


def result_to_json(doc):
    obj = {
        "format": RESULT_FORMAT,
        "objective": doc.objective,
        "mode": doc.mode,
        "title": doc.title,
        "unit": doc.unit,
        "activities": list(doc.names),
        "theta": _scalar_json(doc.theta),
        "generator": [
            _vector_json(doc.generator.row(i))
            for i in range(doc.generator.shape[0])
        ],
        "u_low": _vector_json(doc.u_low),
        "u_high": _vector_json(doc.u_high),
        "schedules": {
            "low": _schedule_json(doc.low),
            "high": _schedule_json(doc.high),
        },
        "unique": doc.unique,
        "verification": {
            "low": _violations_json(doc.violations_low),
            "high": _violations_json(doc.violations_high),
        },
    }
    return json.dumps(obj, indent=2) + "\n"


def result_from_json(text):
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise InstanceFormatError(f"bad result document: {e}") from e
    if not isinstance(obj, dict) or obj.get("format") != RESULT_FORMAT:
        raise InstanceFormatError(
            f"bad result document: expected format {RESULT_FORMAT!r}"
        )
    try:
        return ResultDocument(
            objective=obj["objective"],
            mode=obj["mode"],
            title=obj.get("title"),
            unit=obj.get("unit"),
            names=tuple(obj["activities"]),
            theta=_scalar_from_json(obj["theta"]),
            generator=TropMatrix(
                [_scalar_from_json(o) for o in row] for row in obj["generator"]
            ),
            u_low=_vector_from_json(obj["u_low"]),
            u_high=_vector_from_json(obj["u_high"]),
            low=_schedule_from_json(obj["schedules"]["low"]),
            high=_schedule_from_json(obj["schedules"]["high"]),
            unique=bool(obj["unique"]),
            violations_low=_violations_from_json(obj["verification"]["low"]),
            violations_high=_violations_from_json(obj["verification"]["high"]),
        )
    except (KeyError, TypeError, ValueError) as e:
        if isinstance(e, InstanceFormatError):
            raise
        raise InstanceFormatError(f"bad result document: {e}") from e
