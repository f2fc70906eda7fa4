"""Scenario configuration: JSON loading, schema validation, semantic checks.

All numbers are 64-bit floats; spatial profiles use the cosine expression
language from :mod:`edpflow.expr`.  The machine-readable schema ships as
``schema.json`` next to this module.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources

import jsonschema

from .expr import CosineProfile, profile_from_json
from .network import NetworkError, ReactionNetwork, network_from_json


class ScenarioError(ValueError):
    """Configuration problem; the message names the offending JSON path."""


def _schema() -> dict:
    with resources.files("edpflow").joinpath("schema.json").open("rb") as fh:
        return json.load(fh)


@dataclass
class Scenario:
    network: ReactionNetwork
    d: int
    N: int | None
    N_list: list[int] | None
    initial: tuple[CosineProfile, ...]
    T: float
    sample_dt: float | None
    dt: float | None
    scheme: str
    out_formats: list[str] = field(default_factory=lambda: ["csv"])
    out_directory: str | None = None
    raw: dict = field(default_factory=dict)


def scenario_from_dict(obj: dict) -> Scenario:
    try:
        jsonschema.validate(obj, _schema())
    except jsonschema.ValidationError as err:
        raise ScenarioError(f"scenario invalid at {err.json_path}: {err.message}") from err

    d = int(obj["grid"]["d"])
    try:
        net = network_from_json(obj["network"], d)
    except (NetworkError, ValueError) as err:
        raise ScenarioError(f"scenario invalid at $.network: {err}") from err

    if len(obj["initial"]) != net.species:
        raise ScenarioError(
            f"scenario invalid at $.initial: expected {net.species} profiles, "
            f"got {len(obj['initial'])}"
        )
    try:
        initial = tuple(profile_from_json(p, d) for p in obj["initial"])
    except ValueError as err:
        raise ScenarioError(f"scenario invalid at $.initial: {err}") from err

    time = obj["time"]
    out = obj.get("output", {})
    return Scenario(
        network=net,
        d=d,
        N=obj["grid"].get("N"),
        N_list=obj["grid"].get("N_list"),
        initial=initial,
        T=float(time["T"]),
        sample_dt=time.get("sample_dt"),
        dt=time.get("dt"),
        scheme=time.get("scheme", "rk4"),
        out_formats=list(out.get("formats", ["csv"])),
        out_directory=out.get("directory"),
        raw=obj,
    )


def load_scenario(path) -> Scenario:
    try:
        with open(path, "rb") as fh:
            obj = json.load(fh)
    except FileNotFoundError as err:
        raise ScenarioError(f"cannot read scenario: {err}") from err
    except json.JSONDecodeError as err:
        raise ScenarioError(f"scenario is not valid JSON: {err}") from err
    return scenario_from_dict(obj)
