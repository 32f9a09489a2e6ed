"""Batch verification harness: suite registry, configuration, execution on a
bounded worker pool, certificate store and report emission."""

from __future__ import annotations

import os
import random
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from datetime import datetime, timezone
from pathlib import Path

import click

from . import __version__
from .report import FAIL, Check, Report, Timer, content_hash, emit_report, jsonable, verdict_of

CACHE_ENV = "YANGTWIST_CACHE"
CONFIG_ERROR = 2


class ConfigError(ValueError):
    pass


@dataclass
class SuiteConfig:
    suites: list
    xi_order: int | None = None
    mode_order: int | None = None
    degree_bound: int | None = None
    workers: int = 1
    seed: int = 0
    fmt: str = "text"
    cache: str | None = None

    def validate(self):
        if not self.suites:
            raise ConfigError("no suite selected")
        unknown = [s for s in self.suites if s not in SUITES and s != "all"]
        if unknown:
            raise ConfigError(f"unknown suite(s): {', '.join(unknown)}; known: {', '.join(suite_names())}")
        for name in ("xi_order", "mode_order", "degree_bound"):
            v = getattr(self, name)
            if v is not None and v < 0:
                raise ConfigError(f"{name} must be >= 0")
        if self.workers < 1:
            raise ConfigError("workers must be >= 1")
        if self.fmt not in ("text", "structured"):
            raise ConfigError(f"unknown format {self.fmt!r}")

    def selected(self):
        names = list(SUITES) if "all" in self.suites else self.suites
        return [n for n in SUITES if n in names]

    def echo(self):
        """Configuration as recorded in the report (cache location left out
        so that reports do not depend on the machine)."""
        d = asdict(self)
        d.pop("cache")
        d.pop("fmt")
        d["suites"] = self.selected()
        return d


def _or(value, default):
    return default if value is None else value


# --- tasks ---------------------------------------------------------------------------
# Every task is a module-level function of the config returning a list of checks,
# so that it can be shipped to a worker process.

def _twist_inverse(cfg):
    from .hopf import check_twist_inverse
    return check_twist_inverse(_or(cfg.xi_order, 6))


def _twist_cocycle(cfg):
    from .hopf import build_twist, check_cocycle, flipped_twist
    n = min(_or(cfg.xi_order, 6), 5)
    out = []
    with Timer() as t:
        res = check_cocycle(build_twist(n), n)
    for k, ok in res:
        out.append(Check("twist", f"cocycle-order-{k}", "twist-cocycle", verdict_of(ok), t.elapsed / len(res)))
    with Timer() as t:
        res = check_cocycle(flipped_twist(2), 2)
    bad = [k for k, ok in res if not ok]
    out.append(Check("twist", "cocycle-negative-control-flipped", "twist-cocycle", verdict_of(bool(bad)),
                     t.elapsed, details={"first_failing_order": bad[0] if bad else None}))
    return out


def _twist_normalization(cfg):
    from .hopf import check_t_normalization
    with Timer() as t:
        res = check_t_normalization()
    ok = [c for c, v in sorted(res.items()) if v]
    return [Check("twist", "T-normalization", "T-element", verdict_of(ok == [2]), t.elapsed,
                  details={"consistent_c": ok})]


def _closed_forms_sl2(cfg):
    from .hopf import verify_closed_forms
    return verify_closed_forms("sl2", min(_or(cfg.xi_order, 4), 4))[0]


def _closed_forms_y(cfg):
    from .hopf import verify_closed_forms
    return verify_closed_forms("Y", min(_or(cfg.xi_order, 4), 4))[0]


def _relations_realised(cfg):
    from .hopf import check_relations_realised
    n = min(_or(cfg.xi_order, 3), 3)
    return check_relations_realised("sl2", n) + check_relations_realised("Y", n)


def _antipode_variants(cfg):
    from .hopf import antipode_checks
    out = antipode_checks(min(_or(cfg.xi_order, 4), 4))
    passing = [c.check_id for c in out if c.ok]
    out.append(Check("twist", "antipode-adjudication", "twisted-antipode-e-variant",
                     verdict_of(len(passing) == 1), sum(c.elapsed for c in out),
                     details={"passing_variants": passing}))
    return out


def _triangular(cfg):
    from .hopf import check_triangular
    n = _or(cfg.xi_order, 6)
    return check_triangular(n, min(n, 4))


def _hopf_corrected(cfg):
    from .hopf import corrected_table, verify_hopf_axioms
    n = min(_or(cfg.xi_order, 4), 4)
    return verify_hopf_axioms(corrected_table("sl2", n)) + verify_hopf_axioms(corrected_table("Y", n))


def _hopf_printed(cfg):
    from .hopf import table_from_closed_forms, verify_hopf_axioms
    n = min(_or(cfg.xi_order, 4), 4)
    out = []
    for kind in ("sl2", "Y"):
        for variant in ("T-2", "T-1"):
            out += verify_hopf_axioms(table_from_closed_forms(kind, n, variant))
    return out


def _hopf_undeformed(cfg):
    from .hopf import table_undeformed, verify_hopf_axioms
    return verify_hopf_axioms(table_undeformed("Y", False)) + verify_hopf_axioms(table_undeformed("Y", True))


def _cybe(cfg):
    from .cybe import suite_checks
    return suite_checks()


def _fundrep(cfg):
    from .fundrep import suite_checks
    return suite_checks()


def _rtt(cfg):
    from .rtt import suite_checks
    return suite_checks(n_mode=_or(cfg.mode_order, 3), degree_bound=_or(cfg.degree_bound, 4),
                        xi_order=_or(cfg.xi_order, 6))


def _fields(cfg):
    from .fields import suite_checks
    return suite_checks(n_mode=_or(cfg.mode_order, 2), xi_order=_or(cfg.xi_order, 2),
                        degree_bound=_or(cfg.degree_bound, 7))


SUITES = {
    "twist": [_twist_inverse, _twist_cocycle, _twist_normalization, _closed_forms_sl2, _closed_forms_y,
              _relations_realised, _antipode_variants, _triangular],
    "hopf-axioms": [_hopf_corrected, _hopf_printed, _hopf_undeformed],
    "cybe": [_cybe],
    "fundrep": [_fundrep],
    "rtt-qdet": [_rtt],
    "fields": [_fields],
}


def suite_names():
    return list(SUITES) + ["all"]


def _run_task(task, cfg, suite):
    random.seed(f"{cfg.seed}/{task.__name__}")
    try:
        return task(cfg)
    except Exception as exc:  # reported as a failing check, the run goes on
        return [Check(suite, f"task-error-{task.__name__.strip('_')}", "engine", FAIL,
                      details={"error": f"{type(exc).__name__}: {exc}"})]


# --- certificate store ---------------------------------------------------------------

def default_cache_dir():
    env = os.environ.get(CACHE_ENV)
    if env:
        return env
    return str(Path.home() / ".cache" / "yangtwist")


def store_certificate(cache_dir, text: str):
    """Store text under its content hash. Returns (hash, stored?); I/O errors
    only disable the store."""
    key = content_hash(text)
    if cache_dir is None:
        return key, False
    try:
        path = Path(cache_dir) / "certificates" / f"{key}.txt"
        if not path.exists():
            path.parent.mkdir(parents=True, exist_ok=True)
            tmp = path.with_suffix(".tmp")
            tmp.write_text(text, encoding="utf-8")
            tmp.replace(path)
        return key, True
    except OSError as exc:
        click.echo(f"warning: certificate store unavailable ({exc}); continuing without it", err=True)
        return key, False


def load_certificate(cache_dir, key: str) -> str:
    return (Path(cache_dir) / "certificates" / f"{key}.txt").read_text(encoding="utf-8")


def _externalize(checks, cache_dir):
    for c in checks:
        text = c.details.pop("certificate", None)
        if text:
            c.certificate, _ = store_certificate(cache_dir, text)
        c.details = jsonable(c.details)


# --- running -----------------------------------------------------------------------

def run_suite(cfg: SuiteConfig) -> Report:
    cfg.validate()
    jobs = [(task, name) for name in cfg.selected() for task in SUITES[name]]
    checks = []
    if cfg.workers == 1 or len(jobs) == 1:
        for task, name in jobs:
            checks += _run_task(task, cfg, name)
    else:
        with ProcessPoolExecutor(max_workers=min(cfg.workers, len(jobs))) as pool:
            futures = [pool.submit(_run_task, task, cfg, name) for task, name in jobs]
            for fut in futures:
                checks += fut.result()
    _externalize(checks, cfg.cache)
    stamp = datetime.now(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")
    report = Report(checks, cfg.echo(), __version__, stamp)
    report.checks = report.sorted()
    return report


@click.group()
@click.version_option(__version__)
def main():
    """Exact verification of the twisted Yangian identities."""


@main.command()
@click.option("--suite", "suites", multiple=True, help=f"Suite to run (repeatable): {', '.join(suite_names())}.")
@click.option("--xi-order", type=click.IntRange(min=0), default=None, help="Truncation order in xi.")
@click.option("--mode-order", type=click.IntRange(min=0), default=None, help="Mode cutoff of RTT and current algebras.")
@click.option("--degree-bound", type=click.IntRange(min=0), default=None, help="Degree bound for ideal membership.")
@click.option("--workers", type=click.IntRange(min=1), default=1, show_default=True, help="Worker processes.")
@click.option("--seed", type=int, default=0, show_default=True, help="Random seed.")
@click.option("--format", "fmt", type=click.Choice(["text", "structured"]), default="text", show_default=True)
@click.option("--out", type=click.Path(dir_okay=False, writable=True), default=None, help="Write report here.")
@click.option("--cache", type=click.Path(file_okay=False), default=None,
              help=f"Certificate store directory (default: ${CACHE_ENV} or ~/.cache/yangtwist).")
@click.option("--timing/--no-timing", default=False, help="Include elapsed times (breaks byte-stability).")
def run(suites, xi_order, mode_order, degree_bound, workers, seed, fmt, out, cache, timing):
    """Run verification suites and emit a report."""
    cfg = SuiteConfig(list(suites), xi_order, mode_order, degree_bound, workers, seed, fmt,
                      cache or default_cache_dir())
    try:
        report = run_suite(cfg)
    except ConfigError as exc:
        click.echo(f"config error: {exc}", err=True)
        sys.exit(CONFIG_ERROR)
    data = emit_report(report, fmt, with_timing=timing)
    if out:
        Path(out).write_bytes(data)
    else:
        click.echo(data.decode("utf-8"), nl=False)
    sys.exit(report.exit_code())


@main.command("list")
def list_suites():
    """List the registered suites."""
    for name in suite_names():
        click.echo(name)


@main.command()
@click.argument("key")
@click.option("--cache", type=click.Path(file_okay=False), default=None)
def certificate(key, cache):
    """Print a stored certificate by its hash."""
    try:
        click.echo(load_certificate(cache or default_cache_dir(), key), nl=False)
    except OSError as exc:
        click.echo(f"certificate {key} not found: {exc}", err=True)
        sys.exit(CONFIG_ERROR)


if __name__ == "__main__":
    main()
