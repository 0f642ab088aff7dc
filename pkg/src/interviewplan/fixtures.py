"""Canonical desk-scale fixtures shipped as data files.

fig1 : 2x2 market, nobody can compare anything, asymmetric truth with a
       unique stable matching; the smallest market on which no online
       strategy can match the offline optimum of 3 interviews.
tt2  : same knowledge state as fig1 but mutual-top truth, so the identity
       matching is the target; optimum 3 with a one-edge cover graph.
tri  : market built from the triangle graph oriented as a directed cycle;
       optimum 5 = cover 2 + one interview per graph edge.
mt3  : 3x3 market with one shared full tie per side; optimum 8 against a
       naive baseline of 9.
"""

from __future__ import annotations

from dataclasses import dataclass
from importlib.resources import files

from .formats import parse_graph, parse_instance, parse_matching, parse_truth
from .model import Instance, Matching, StrictProfile

FIXTURE_NAMES = ("fig1", "tt2", "tri", "mt3")


@dataclass(frozen=True)
class Fixture:
    name: str
    instance: Instance
    truth: StrictProfile
    matching: Matching


def _read(name: str) -> str:
    return files("interviewplan").joinpath("data", name).read_text(encoding="utf-8")


def load(name: str) -> Fixture:
    if name not in FIXTURE_NAMES:
        raise KeyError(f"unknown fixture {name!r}; choose from {FIXTURE_NAMES}")
    return Fixture(
        name=name,
        instance=parse_instance(_read(f"{name}.instance")),
        truth=parse_truth(_read(f"{name}.truth")),
        matching=parse_matching(_read(f"{name}.matching")),
    )


def triangle_graph():
    """The 3-cycle used to build the tri fixture."""
    return parse_graph(_read("k3.graph"))
