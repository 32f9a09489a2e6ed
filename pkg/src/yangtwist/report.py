"""Check records and reports, with text and structured (JSON) renderings."""

from __future__ import annotations

import hashlib
import json
import time
from dataclasses import asdict, dataclass, field

PASS = "pass"
FAIL = "fail"
CORRECTED = "corrected-pass"
INCONCLUSIVE = "inconclusive-at-bound"
VERDICTS = (PASS, FAIL, CORRECTED, INCONCLUSIVE)

SCHEMA_VERSION = 1


@dataclass
class Check:
    suite: str
    check_id: str
    tag: str
    verdict: str
    elapsed: float = 0.0
    certificate: str | None = None
    details: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.verdict not in VERDICTS:
            raise ValueError(f"unknown verdict {self.verdict!r}")

    @property
    def ok(self):
        return self.verdict in (PASS, CORRECTED)


def verdict_of(ok: bool) -> str:
    return PASS if ok else FAIL


class Timer:
    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.start


@dataclass
class Report:
    checks: list
    config: dict
    engine_version: str
    timestamp: str = ""

    def sorted(self):
        return sorted(self.checks, key=lambda c: (c.suite, c.check_id))

    def counts(self):
        out = {v: 0 for v in VERDICTS}
        for c in self.checks:
            out[c.verdict] += 1
        return out

    def exit_code(self):
        counts = self.counts()
        if counts[FAIL]:
            return 1
        if counts[INCONCLUSIVE]:
            return 3
        return 0


def jsonable(x):
    """Details payload in JSON-safe form: tuple keys become their string
    rendering, tuples become lists, other objects their str()."""
    if isinstance(x, dict):
        return {k if isinstance(k, str) else str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    if x is None or isinstance(x, (str, bool, int, float)):
        return x
    return str(x)


def _check_dict(c: Check, with_timing: bool):
    d = asdict(c)
    d["details"] = jsonable(d["details"])
    if not with_timing:
        d.pop("elapsed")
    return d


def emit_report(r: Report, fmt: str = "text", with_timing: bool = False) -> bytes:
    """Render a report. The structured form puts the timestamp in a header
    line so that the body is byte-identical across runs."""
    checks = r.sorted()
    counts = r.counts()
    if fmt == "structured":
        header = json.dumps({"schema": SCHEMA_VERSION, "timestamp": r.timestamp}, sort_keys=True)
        body = {
            "schema": SCHEMA_VERSION,
            "engine_version": r.engine_version,
            "config": r.config,
            "summary": counts,
            "checks": [_check_dict(c, with_timing) for c in checks],
        }
        text = header + "\n" + json.dumps(body, sort_keys=True, indent=1, ensure_ascii=False) + "\n"
        return text.encode("utf-8")
    if fmt != "text":
        raise ValueError(f"unknown format {fmt!r}")
    lines = []
    for c in checks:
        line = f"[{c.verdict:>21}] {c.suite}/{c.check_id} ({c.tag})"
        if with_timing:
            line += f" {c.elapsed:.2f}s"
        lines.append(line)
        if c.verdict != PASS:
            for k in sorted(c.details):
                lines.append(f"      {k}: {c.details[k]}")
    ok = counts[PASS] + counts[CORRECTED]
    lines.append(f"{ok}/{len(checks)} checks passed"
                 f" ({counts[PASS]} exact, {counts[CORRECTED]} corrected, {counts[FAIL]} failed,"
                 f" {counts[INCONCLUSIVE]} inconclusive)")
    return ("\n".join(lines) + "\n").encode("utf-8")


def parse_structured(data: bytes) -> Report:
    text = data.decode("utf-8")
    header_line, _, body_text = text.partition("\n")
    header = json.loads(header_line)
    body = json.loads(body_text)
    checks = [Check(**{**c, "elapsed": c.get("elapsed", 0.0)}) for c in body["checks"]]
    return Report(checks, body["config"], body["engine_version"], header.get("timestamp", ""))


def content_hash(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()[:32]
