"""
Scenario files: TOML documents that describe one model, its sweep grid and
optional packet, switch, cascade, optimizer and oracle blocks.

Minimal example::

    schema = 1
    model = "continuum"

    [params]
    gamma_right = 1.0
    gamma_left = 1.0

    [sweep]
    half_width = 10.0
    n = 1001
    frame = "detuning-from-emitter"

``[switch.on]`` / ``[switch.off]`` hold parameter overrides applied to
``[params]``. For ``model = "cascade"`` the ``[cascade]`` table names a
``backend`` (continuum, cavity or crw), ``separations``, and a list of
``[[cascade.sites]]`` overrides; each site is ``[params]`` plus its override.
"""
from __future__ import annotations

import copy
import dataclasses
import hashlib
import sys
from dataclasses import dataclass
from typing import Any, Optional

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from .core import (
    FRAMES,
    CavityParams,
    CrwParams,
    EmitterWaveguideParams,
    FrequencyGrid,
    SpectralResponse,
    ValidationError,
    make_grid,
    require_valid,
)
from . import cascade, cavity, continuum, crw

__all__ = ["Scenario", "load", "loads", "parse", "set_path", "digest", "MODELS"]

SCHEMA = 1
MODELS = {
    "continuum": EmitterWaveguideParams,
    "cavity": CavityParams,
    "crw": CrwParams,
}
_DEFAULT_FRAME = {
    "continuum": "detuning-from-emitter",
    "cavity": "detuning-from-cavity",
    "crw": "detuning-from-emitter",
}


def _build(kind, block: dict, where: str):
    names = {f.name for f in dataclasses.fields(kind)}
    unknown = set(block) - names
    if unknown:
        raise ValidationError(f"{where}: unknown field(s) {sorted(unknown)}", sorted(unknown)[0])
    try:
        p = kind(**{k: float(v) for k, v in block.items()})
    except TypeError as exc:
        raise ValidationError(f"{where}: {exc}") from None
    try:
        require_valid(p)
    except ValidationError as exc:
        raise ValidationError(f"{where}: {exc}", exc.field) from None
    return p


@dataclass
class Scenario:
    """A parsed scenario. ``raw`` keeps the source mapping for re-parsing."""

    model: str
    params: Any
    grid: Optional[FrequencyGrid]
    raw: dict
    backend: Optional[str] = None
    sites: tuple = ()
    separations: tuple = ()
    v_g: float = 1.0
    k0: float = 0.0
    packet: Optional[dict] = None
    probe: Optional[float] = None
    switch_on: Optional[dict] = None
    switch_off: Optional[dict] = None
    optimize: Optional[dict] = None
    oracle: Optional[dict] = None
    output: Optional[str] = None

    @property
    def kind(self):
        return MODELS[self.backend or self.model]

    def with_overrides(self, overrides: Optional[dict]) -> "Scenario":
        """Copy with parameter overrides applied to ``[params]``."""
        if not overrides:
            return self
        raw = copy.deepcopy(self.raw)
        raw.setdefault("params", {}).update(overrides)
        for key in ("switch",):
            raw.pop(key, None)
        return parse(raw)

    def layout(self) -> cascade.CascadeLayout:
        return cascade.CascadeLayout(self.sites, self.separations)

    def response(self, grid: Optional[FrequencyGrid] = None) -> SpectralResponse:
        grid = grid or self.grid
        if grid is None:
            raise ValidationError("scenario has no [sweep] block", "sweep")
        if self.model == "cascade":
            layout = self.layout()
            if layout.on_lattice:
                k_of = cascade.lattice_dispersion(self.sites[0])
            else:
                k_of = cascade.linear_dispersion(self.v_g, self.k0, self.sites[0].omega_e)
            return cascade.cascade_amplitudes(layout, grid, k_of)
        backend = {"continuum": continuum, "cavity": cavity, "crw": crw}[self.model]
        return backend.response(self.params, grid)

    def amplitudes_at(self, omega: float, frame: str = "absolute"):
        """``(t, r)`` at a single frequency."""
        g = FrequencyGrid([omega, omega + 1e-13 * (1.0 + abs(omega))], frame)
        resp = self.response(g)
        return complex(resp.t[0]), complex(resp.r[0])


def set_path(raw: dict, path: str, value) -> dict:
    """Return a deep copy of ``raw`` with the dotted ``path`` set to ``value``."""
    out = copy.deepcopy(raw)
    node = out
    keys = path.split(".")
    for key in keys[:-1]:
        nxt = node.get(key)
        if nxt is None:
            nxt = node[key] = {}
        if not isinstance(nxt, dict):
            raise ValidationError(f"cannot set {path!r}: {key!r} is not a table", path)
        node = nxt
    node[keys[-1]] = value
    return out


def _grid(block: dict, model: str) -> FrequencyGrid:
    frame = block.get("frame", _DEFAULT_FRAME.get(model, "detuning-from-emitter"))
    if frame not in FRAMES:
        raise ValidationError(f"sweep: unknown frame {frame!r}", "frame")
    if "points" in block:
        pts = block["points"]
        if len(pts) < 2:
            raise ValidationError("sweep: grid needs at least 2 points", "points")
        return FrequencyGrid(pts, frame)
    try:
        center = float(block.get("center", 0.0))
        half_width = float(block["half_width"])
        n = block["n"]
    except KeyError as exc:
        raise ValidationError(f"sweep: missing {exc.args[0]!r}", exc.args[0]) from None
    if not isinstance(n, int):
        raise ValidationError("sweep: n must be an integer", "n")
    return make_grid(center, half_width, n, frame)


def parse(raw: dict) -> Scenario:
    """Validate a scenario mapping and build the parameter objects."""
    if raw.get("schema") != SCHEMA:
        raise ValidationError(f"schema must be {SCHEMA}", "schema")
    model = raw.get("model")
    if model not in (*MODELS, "cascade"):
        raise ValidationError(f"model must be one of {sorted((*MODELS, 'cascade'))}", "model")
    params_block = dict(raw.get("params", {}))

    backend = None
    sites: tuple = ()
    separations: tuple = ()
    v_g, k0 = 1.0, 0.0
    if model == "cascade":
        block = raw.get("cascade")
        if not isinstance(block, dict):
            raise ValidationError("cascade model needs a [cascade] table", "cascade")
        backend = block.get("backend", "continuum")
        if backend not in MODELS:
            raise ValidationError(f"cascade: unknown backend {backend!r}", "backend")
        kind = MODELS[backend]
        site_blocks = block.get("sites") or [{}]
        sites = tuple(
            _build(kind, {**params_block, **s}, f"cascade.sites[{i}]") for i, s in enumerate(site_blocks)
        )
        separations = tuple(float(d) for d in block.get("separations", ()))
        v_g = float(block.get("v_g", 1.0))
        k0 = float(block.get("k0", 0.0))
        cascade.CascadeLayout(sites, separations)
        params = sites[0]
    else:
        params = _build(MODELS[model], params_block, "params")

    grid = _grid(raw["sweep"], backend or model) if "sweep" in raw else None

    packet = raw.get("packet")
    if packet is not None:
        if "sigma" not in packet:
            raise ValidationError("packet: sigma is required", "sigma")
        packet = {"center": float(packet.get("center", 0.0)), "sigma": float(packet["sigma"])}
    probe = raw.get("probe", {}).get("omega") if isinstance(raw.get("probe"), dict) else None
    switch = raw.get("switch", {})
    return Scenario(
        model=model,
        params=params,
        grid=grid,
        raw=raw,
        backend=backend,
        sites=sites,
        separations=separations,
        v_g=v_g,
        k0=k0,
        packet=packet,
        probe=None if probe is None else float(probe),
        switch_on=switch.get("on"),
        switch_off=switch.get("off"),
        optimize=raw.get("optimize"),
        oracle=raw.get("oracle"),
        output=raw.get("output"),
    )


def loads(text: str) -> Scenario:
    try:
        raw = tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        raise ValidationError(f"scenario is not valid TOML: {exc}") from None
    return parse(raw)


def load(path) -> Scenario:
    with open(path, "rb") as fh:
        data = fh.read()
    return loads(data.decode("utf-8"))


def digest(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()
