"""Run configuration, loaded from JSON.

Example::

    {
      "ring": {"f": [1, 1, 1, 1, 1], "N": 5, "label": "Z[zeta_5][1/5]"},
      "levels": [2, 3, 4, 6, 12],
      "divisors": [2, 3, 4, 6],
      "roots": [[5, 1]],
      "suites": ["main-theorem"],
      "jobs": 2,
      "seed": 0
    }

Every key is optional.  Levels must be prime to N and root orders must
divide N.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field, replace
from math import gcd
from pathlib import Path

from .errors import ConfigError
from .exactalg import NumberRing, cyclotomic_integers

DEFAULT_LEVELS = (1, 2, 3, 4, 6, 7, 8, 9, 11, 12)
DEFAULT_DIVISORS = (2, 3, 4, 6)


@dataclass(frozen=True)
class RunConfig:
    ring: NumberRing = field(default_factory=lambda: cyclotomic_integers(5))
    levels: tuple[int, ...] = DEFAULT_LEVELS
    divisors: tuple[int, ...] = DEFAULT_DIVISORS
    roots: tuple[tuple[int, int], ...] = ((5, 1),)
    suites: tuple[str, ...] = ()
    jobs: int = 1
    seed: int = 0
    samples: int = 200

    def validate(self, lines: dict[str, int] | None = None) -> "RunConfig":
        lines = lines or {}
        N = self.ring.N
        for m in self.levels:
            if m < 1:
                raise ConfigError(f"level {m} must be positive", "levels", lines.get("levels"))
            if gcd(m, N) != 1:
                raise ConfigError(f"level {m} shares a factor with N = {N}", "levels", lines.get("levels"))
        for d in self.divisors:
            if d < 2:
                raise ConfigError(f"divisor {d} must be at least 2", "divisors", lines.get("divisors"))
        for g, a in self.roots:
            if g < 2 or N % g:
                raise ConfigError(f"root order {g} must divide N = {N}", "roots", lines.get("roots"))
            if gcd(a, g) != 1:
                raise ConfigError(f"exponent {a} is not prime to {g}", "roots", lines.get("roots"))
        if self.jobs < 1:
            raise ConfigError("jobs must be positive", "jobs", lines.get("jobs"))
        return self

    def with_overrides(self, **kw) -> "RunConfig":
        return replace(self, **{k: v for k, v in kw.items() if v is not None})


def _key_lines(text: str) -> dict[str, int]:
    out: dict[str, int] = {}
    for i, line in enumerate(text.splitlines(), start=1):
        for key in re.findall(r'"([A-Za-z_]+)"\s*:', line):
            out.setdefault(key, i)
    return out


def _int_list(value, name, lines) -> tuple[int, ...]:
    if not isinstance(value, list) or not all(isinstance(v, int) and not isinstance(v, bool) for v in value):
        raise ConfigError(f"{name} must be a list of integers", name, lines.get(name))
    return tuple(value)


def parse_config(text: str) -> RunConfig:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"invalid JSON: {exc.msg}", None, exc.lineno) from None
    if not isinstance(raw, dict):
        raise ConfigError("top level must be an object", None, 1)
    lines = _key_lines(text)
    known = {"ring", "levels", "divisors", "roots", "suites", "jobs", "seed", "samples"}
    for key in raw:
        if key not in known:
            raise ConfigError(f"unknown field {key!r}", key, lines.get(key))
    kw = {}
    if "ring" in raw:
        ring_cfg = raw["ring"]
        if not isinstance(ring_cfg, dict) or "f" not in ring_cfg:
            raise ConfigError("ring needs a coefficient list 'f'", "ring", lines.get("ring"))
        f = _int_list(ring_cfg["f"], "f", lines)
        N = ring_cfg.get("N", 1)
        if not isinstance(N, int) or N < 1:
            raise ConfigError("N must be a positive integer", "N", lines.get("N"))
        try:
            kw["ring"] = NumberRing(f, N, str(ring_cfg.get("label", "")))
        except ValueError as exc:
            raise ConfigError(str(exc), "f", lines.get("f")) from None
    for key in ("levels", "divisors"):
        if key in raw:
            kw[key] = _int_list(raw[key], key, lines)
    if "roots" in raw:
        roots = []
        for r in raw["roots"] if isinstance(raw["roots"], list) else [None]:
            if not (isinstance(r, list) and len(r) in (1, 2) and all(isinstance(v, int) for v in r)):
                raise ConfigError("roots must be [order, exponent] pairs", "roots", lines.get("roots"))
            roots.append((r[0], r[1] if len(r) == 2 else 1))
        kw["roots"] = tuple(roots)
    if "suites" in raw:
        if not isinstance(raw["suites"], list) or not all(isinstance(s, str) for s in raw["suites"]):
            raise ConfigError("suites must be a list of names", "suites", lines.get("suites"))
        kw["suites"] = tuple(raw["suites"])
    for key in ("jobs", "seed", "samples"):
        if key in raw:
            if not isinstance(raw[key], int) or isinstance(raw[key], bool):
                raise ConfigError(f"{key} must be an integer", key, lines.get(key))
            kw[key] = raw[key]
    return RunConfig(**kw).validate(lines)


def load_config(path: str | Path) -> RunConfig:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc.strerror}") from None
    return parse_config(text)
