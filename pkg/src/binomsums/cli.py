"""Command-line front end.

Subcommands: ``seq`` (sequence dumps), ``verify`` (claim suites), ``fit``
(recurrence guessing), ``certificates`` (the six symbolic combination
checks), ``multipliers`` (conjecture explorer table).

Configuration precedence: built-in defaults, then the config file (simple
``key = value`` lines), then ``BINOMSUMS_*`` environment variables, then
command-line flags.

Exit codes: 0 all asserted claims pass; 1 claim failure; 2 usage or config
error; 3 internal inconsistency.
"""
from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass, field

from . import recurrence, verify
from .errors import (
    BinomsumsError,
    InternalInconsistencyError,
    UnknownIdError,
    WindowTooSmall,
)
from .reports import FORMATTERS, Failure, VerificationReport
from .sequences import dump_lines, get_sequence

EXIT_PASS = 0
EXIT_CLAIM_FAILURE = 1
EXIT_USAGE = 2
EXIT_INTERNAL = 3

ENV_PREFIX = "BINOMSUMS_"

_DEFAULTS = {
    "n_max": 300,
    "prime_max": 199,
    "workers": os.cpu_count() or 1,
    "format": "structured",
    "strict_conjectures": False,
    "output": None,
    "suites": ("theorems",),
}

_BOOL_TRUE = {"1", "true", "yes", "on"}
_BOOL_FALSE = {"0", "false", "no", "off"}


@dataclass
class RunConfig:
    n_max: int = 300
    prime_max: int = 199
    suites: tuple[str, ...] = ("theorems",)
    output_format: str = "structured"
    output_path: str | None = None
    worker_count: int = field(default_factory=lambda: os.cpu_count() or 1)
    strict_conjectures: bool = False

    def validate(self):
        if self.n_max < 1:
            raise ValueError("n_max must be >= 1")
        if self.prime_max < 2:
            raise ValueError("prime_max must be >= 2")
        if self.worker_count < 1:
            raise ValueError("workers must be >= 1")
        if self.output_format not in FORMATTERS:
            raise ValueError(f"unknown format {self.output_format!r}")
        for name in self.suites:
            if name not in verify.SUITES:
                raise ValueError(f"unknown suite {name!r}")


def _parse_bool(value: str) -> bool:
    low = value.strip().lower()
    if low in _BOOL_TRUE:
        return True
    if low in _BOOL_FALSE:
        return False
    raise ValueError(f"not a boolean: {value!r}")


def _read_config_file(path: str) -> dict:
    out = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            key, sep, value = line.partition("=")
            if not sep:
                raise ValueError(f"{path}:{lineno}: expected key = value")
            out[key.strip()] = value.strip()
    return out


def _settings_from_mapping(mapping: dict, source: str) -> dict:
    """Normalize raw string settings from a config file or the environment."""
    out = {}
    for key, value in mapping.items():
        if key in ("n_max", "prime_max", "workers"):
            out[key] = int(value)
        elif key == "format":
            out[key] = value
        elif key == "strict_conjectures":
            out[key] = _parse_bool(value)
        elif key == "output":
            out[key] = value
        elif key == "suites":
            out[key] = tuple(s.strip() for s in value.split(",") if s.strip())
        else:
            raise ValueError(f"{source}: unknown setting {key!r}")
    return out


def _env_settings() -> dict:
    raw = {}
    for key in ("n_max", "prime_max", "workers", "format", "strict_conjectures", "output", "suites"):
        env_key = ENV_PREFIX + key.upper()
        if env_key in os.environ:
            raw[key] = os.environ[env_key]
    return _settings_from_mapping(raw, "environment")


def build_config(args: argparse.Namespace) -> RunConfig:
    settings = dict(_DEFAULTS)
    if getattr(args, "config", None):
        settings.update(_settings_from_mapping(_read_config_file(args.config), args.config))
    settings.update(_env_settings())
    for key, attr in (
        ("n_max", "n_max"),
        ("prime_max", "prime_max"),
        ("workers", "workers"),
        ("format", "format"),
        ("output", "output"),
    ):
        value = getattr(args, attr, None)
        if value is not None:
            settings[key] = value
    if getattr(args, "suite", None):
        settings["suites"] = tuple(args.suite)
    if getattr(args, "strict_conjectures", False):
        settings["strict_conjectures"] = True
    cfg = RunConfig(
        n_max=settings["n_max"],
        prime_max=settings["prime_max"],
        suites=tuple(settings["suites"]),
        output_format=settings["format"],
        output_path=settings["output"],
        worker_count=settings["workers"],
        strict_conjectures=settings["strict_conjectures"],
    )
    cfg.validate()
    return cfg


def _emit(text: str, output_path: str | None):
    if output_path:
        with open(output_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# --- subcommands ---------------------------------------------------------------


def _cmd_seq(args) -> int:
    try:
        seq = get_sequence(args.id)
    except UnknownIdError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    lines = list(dump_lines(seq, args.max))
    _emit("\n".join(lines) + "\n", args.output)
    return EXIT_PASS


def _cmd_verify(args) -> int:
    cfg = build_config(args)
    reports = verify.run_suite(
        cfg.suites,
        n_max=cfg.n_max,
        prime_max=cfg.prime_max,
        workers=cfg.worker_count,
    )
    text = FORMATTERS[cfg.output_format](reports, include_timing=args.timing)
    _emit(text, cfg.output_path)
    failed_assertions = [
        rep for rep in reports if rep.status == "fail" and verify.claim_is_asserted(rep.claim)
    ]
    failed_findings = [
        rep for rep in reports if rep.status == "fail" and not verify.claim_is_asserted(rep.claim)
    ]
    if failed_assertions:
        return EXIT_CLAIM_FAILURE
    if failed_findings and cfg.strict_conjectures:
        return EXIT_CLAIM_FAILURE
    return EXIT_PASS


def _cmd_fit(args) -> int:
    try:
        seq = get_sequence(args.seq)
    except UnknownIdError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    lo, sep, hi = args.window.partition(":")
    if not sep:
        print("error: window must be given as LO:HI", file=sys.stderr)
        return EXIT_USAGE
    window = (int(lo), int(hi))
    try:
        op = recurrence.fit_recurrence(seq, args.order, args.degree, window)
    except WindowTooSmall as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if op is None:
        _emit("none\n", args.output)
        return EXIT_PASS
    holdout = (window[1] + 1, window[1] + recurrence.HOLDOUT_LENGTH)
    _emit(
        f"{op.format()}\nholdout {holdout[0]}:{holdout[1]} pass\n",
        args.output,
    )
    return EXIT_PASS


def _cmd_certificates(args) -> int:
    reports = []
    any_fail = False
    for cid, cert in recurrence.CERTIFICATES.items():
        ok = recurrence.check_certificate(cert)
        any_fail |= not ok
        reports.append(
            VerificationReport(
                claim=f"certificate:{cid}",
                lo=0,
                hi=0,
                checked=1 if ok else 0,
                failures=[]
                if ok
                else [Failure(index=0, lhs="-", rhs="0", residue="nonzero residual")],
            )
        )
    reports.sort(key=lambda rep: rep.claim)
    fmt = args.format or "human"
    _emit(FORMATTERS[fmt](reports), args.output)
    return EXIT_CLAIM_FAILURE if any_fail else EXIT_PASS


def _cmd_multipliers(args) -> int:
    n_max = args.n_max if args.n_max is not None else 200
    reports = [
        verify.multiplier_report(family, r, n_max)
        for family, r in verify._MULTIPLIER_ENTRIES.values()
    ]
    reports.sort(key=lambda rep: rep.claim)
    fmt = args.format or "human"
    _emit(FORMATTERS[fmt](reports), args.output)
    if any(rep.status == "fail" for rep in reports):
        return EXIT_CLAIM_FAILURE
    return EXIT_PASS


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="binomsums",
        description="Exact verification toolkit for binomial double-sum sequences.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_seq = sub.add_parser("seq", help="dump sequence values as `id, n, value` lines")
    p_seq.add_argument("id", help="sequence id (e.g. S, s, S_plus, S_r:3, sum:S)")
    p_seq.add_argument("--max", type=int, default=10, help="last index to emit")
    p_seq.add_argument("--format", choices=list(FORMATTERS), default=None)
    p_seq.add_argument("--output", default=None)

    p_ver = sub.add_parser("verify", help="run claim suites and emit reports")
    p_ver.add_argument("--suite", action="append", choices=list(verify.SUITES), default=None)
    p_ver.add_argument("--n-max", dest="n_max", type=int, default=None)
    p_ver.add_argument("--prime-max", dest="prime_max", type=int, default=None)
    p_ver.add_argument("--workers", type=int, default=None)
    p_ver.add_argument("--format", choices=list(FORMATTERS), default=None)
    p_ver.add_argument("--output", default=None)
    p_ver.add_argument("--config", default=None, help="key = value config file")
    p_ver.add_argument("--strict-conjectures", action="store_true")
    p_ver.add_argument("--timing", action="store_true", help="embed wall-clock times")

    p_fit = sub.add_parser("fit", help="guess an annihilating recurrence operator")
    p_fit.add_argument("--seq", required=True)
    p_fit.add_argument("--order", type=int, required=True)
    p_fit.add_argument("--degree", type=int, required=True)
    p_fit.add_argument("--window", required=True, help="LO:HI inclusive")
    p_fit.add_argument("--format", choices=list(FORMATTERS), default=None)
    p_fit.add_argument("--output", default=None)

    p_cert = sub.add_parser("certificates", help="check the six combination certificates")
    p_cert.add_argument("--format", choices=list(FORMATTERS), default=None)
    p_cert.add_argument("--output", default=None)

    p_mult = sub.add_parser("multipliers", help="conjectured-multiplier explorer table")
    p_mult.add_argument("--n-max", dest="n_max", type=int, default=None)
    p_mult.add_argument("--format", choices=list(FORMATTERS), default=None)
    p_mult.add_argument("--output", default=None)

    return parser


_COMMANDS = {
    "seq": _cmd_seq,
    "verify": _cmd_verify,
    "fit": _cmd_fit,
    "certificates": _cmd_certificates,
    "multipliers": _cmd_multipliers,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except InternalInconsistencyError as exc:
        print(f"internal inconsistency: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except (ValueError, OSError, BinomsumsError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
