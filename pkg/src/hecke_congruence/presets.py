"""Compiled-in root data and the text config format.

Every preset is a :class:`Preset`: a root datum together with its Shimura
cocharacter ``mu`` and the documented size of the orbit ``W.mu^{-1}``.
"""

from __future__ import annotations

import json
import sys
from dataclasses import dataclass
from pathlib import Path

from .errors import ConfigError, RootDatumError
from .root_datum import BasedRootDatum, Cochar, identity

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib


@dataclass(frozen=True)
class Preset:
    datum: BasedRootDatum
    mu: Cochar
    orbit_size: int
    split: bool
    description: str


def _e(n: int, i: int, c: int = 1) -> list[int]:
    v = [0] * n
    v[i] = c
    return v


def gl(n: int) -> BasedRootDatum:
    """GL_n, diagonal torus, sigma trivial."""
    roots = [[int(k == i) - int(k == i + 1) for k in range(n)] for i in range(n - 1)]
    return BasedRootDatum(n, roots, roots, identity(n), f"gl{n}")


def gsp(g: int) -> BasedRootDatum:
    """GSp_2g with X_*(T) coordinates (a_1, ..., a_g, c).

    The cocharacter (a, c) is t -> diag(t^a_1, ..., t^a_g, t^{c-a_g}, ..., t^{c-a_1}).
    """
    n = g + 1
    roots, coroots = [], []
    for i in range(g - 1):
        r = [0] * n
        r[i], r[i + 1] = 1, -1
        roots.append(r)
        coroots.append(list(r))
    # long root 2e_g - e_0, coroot e_g^*
    r = [0] * n
    r[g - 1], r[g] = 2, -1
    roots.append(r)
    coroots.append(_e(n, g - 1))
    return BasedRootDatum(n, roots, coroots, identity(n), f"gsp{2 * g}")


def res_gl2_inert(g: int) -> BasedRootDatum:
    """Res_{F/Q} GL_2 for F of degree g in which p is inert.

    X_*(T) = (Z^2)^g block by block; sigma moves block i to block i+1.
    """
    n = 2 * g
    roots = []
    for b in range(g):
        r = [0] * n
        r[2 * b], r[2 * b + 1] = 1, -1
        roots.append(r)
    sigma = [[0] * n for _ in range(n)]
    for b in range(g):
        t = (b + 1) % g
        sigma[2 * t][2 * b] = 1
        sigma[2 * t + 1][2 * b + 1] = 1
    return BasedRootDatum(n, roots, roots, sigma, f"res_gl2_inert_g{g}")


def gu3_quasisplit() -> BasedRootDatum:
    """Quasi-split unitary similitude group GU(3) for p inert in the CM field.

    Over the unramified closure it is GL_3 x G_m with coordinates
    (x_1, x_2, x_3; c); sigma(x; c) = (c - x_3, c - x_2, c - x_1; c).
    """
    roots = [[1, -1, 0, 0], [0, 1, -1, 0]]
    sigma = [
        [0, 0, -1, 1],
        [0, -1, 0, 1],
        [-1, 0, 0, 1],
        [0, 0, 0, 1],
    ]
    return BasedRootDatum(4, roots, roots, sigma, "u3_quasisplit")


def _build_presets() -> dict[str, Preset]:
    out = {}
    for n in (2, 3, 4):
        mu = tuple(_e(n, 0))
        out[f"gl{n}"] = Preset(gl(n), mu, n, True, f"GL_{n}, mu = (1, 0, ..., 0)")
    for g in (2, 3):
        mu = tuple([1] * (g + 1))
        out[f"gsp{2 * g}"] = Preset(gsp(g), mu, 2**g, True, f"GSp_{2 * g}, Siegel mu")
    for g in (2, 3):
        mu = tuple([1, 0] * g)
        out[f"res_gl2_inert_g{g}"] = Preset(
            res_gl2_inert(g), mu, 2**g, False, f"Hilbert-Blumenthal, degree {g}, p inert"
        )
    out["u3_quasisplit"] = Preset(
        gu3_quasisplit(), (1, 0, 0, 1), 3, False, "GU(1,2), p inert"
    )
    return out


PRESETS: dict[str, Preset] = _build_presets()
ALIASES = {"hilbert_g2": "res_gl2_inert_g2", "hilbert_g3": "res_gl2_inert_g3"}


def get_preset(name: str) -> Preset:
    key = ALIASES.get(name, name)
    try:
        return PRESETS[key]
    except KeyError:
        known = ", ".join(sorted(PRESETS) + sorted(ALIASES))
        raise ConfigError(f"unknown preset {name!r}; known presets: {known}") from None


@dataclass(frozen=True)
class DatumConfig:
    datum: BasedRootDatum
    mu: Cochar
    reflex_degree: int | None = None


_REQUIRED = ("rank", "simple_roots", "simple_coroots", "sigma", "mu")


def _int_list(value, field: str, length: int | None = None) -> list[int]:
    if not isinstance(value, list) or not all(
        isinstance(a, int) and not isinstance(a, bool) for a in value
    ):
        raise ConfigError(f"field {field!r}: expected a list of integers, got {value!r}")
    if length is not None and len(value) != length:
        raise ConfigError(f"field {field!r}: expected length {length}, got {len(value)}")
    return value


def parse_config(data: dict) -> DatumConfig:
    """Build a datum from the mapping form of the config format."""
    if not isinstance(data, dict):
        raise ConfigError("config must be a table/object at top level")
    for key in _REQUIRED:
        if key not in data:
            raise ConfigError(f"missing required field {key!r}")
    unknown = set(data) - set(_REQUIRED) - {"name", "n"}
    if unknown:
        raise ConfigError(f"unknown field(s): {', '.join(sorted(unknown))}")
    rank = data["rank"]
    if not isinstance(rank, int) or isinstance(rank, bool) or rank < 1:
        raise ConfigError(f"field 'rank': expected a positive integer, got {rank!r}")
    lists = {}
    for key in ("simple_roots", "simple_coroots", "sigma"):
        rows = data[key]
        if not isinstance(rows, list):
            raise ConfigError(f"field {key!r}: expected a list of integer lists")
        lists[key] = [_int_list(r, f"{key}[{i}]", rank) for i, r in enumerate(rows)]
    if len(lists["sigma"]) != rank:
        raise ConfigError(f"field 'sigma': expected {rank} rows, got {len(lists['sigma'])}")
    mu = tuple(_int_list(data["mu"], "mu", rank))
    name = data.get("name")
    if name is not None and not isinstance(name, str):
        raise ConfigError("field 'name': expected a string")
    n = data.get("n")
    if n is not None and (not isinstance(n, int) or n < 1):
        raise ConfigError("field 'n': expected a positive integer")
    try:
        datum = BasedRootDatum(
            rank, lists["simple_roots"], lists["simple_coroots"], lists["sigma"], name
        )
    except RootDatumError as exc:
        raise ConfigError(str(exc)) from exc
    return DatumConfig(datum, mu, n)


def load_config(path: str | Path) -> DatumConfig:
    """Read a TOML (default) or JSON datum config."""
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    if path.suffix.lower() == ".json":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"{path}: line {exc.lineno}: {exc.msg}") from exc
    else:
        try:
            data = tomllib.loads(text)
        except tomllib.TOMLDecodeError as exc:
            raise ConfigError(f"{path}: {exc}") from exc
    return parse_config(data)
