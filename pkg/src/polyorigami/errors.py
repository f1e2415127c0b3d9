"""Exception hierarchy.

Every error carries the pipeline ``stage`` it originated in and a short
``kind`` tag, so the CLI can emit a machine-readable record and choose an
exit code without string matching.
"""

from __future__ import annotations


class OrigamiError(Exception):
    stage = "app"

    @property
    def kind(self) -> str:
        return type(self).__name__

    def record(self) -> dict:
        return {"stage": self.stage, "kind": self.kind, "message": str(self)}


# mesh_io


class MeshError(OrigamiError):
    stage = "mesh_io"


class MalformedLine(MeshError):
    pass


class IndexOutOfRange(MeshError):
    pass


class NotClosed(MeshError):
    pass


class InconsistentWinding(MeshError):
    pass


class EmptyMesh(MeshError):
    pass


class UnknownElement(MeshError):
    pass


class UnreadableInput(MeshError):
    pass


# topology / router


class TopologyError(OrigamiError):
    stage = "topology"


class Disconnected(TopologyError):
    pass


class RoutingError(OrigamiError):
    stage = "router"


class NonEulerian(RoutingError):
    pass


class MultipleCycles(RoutingError):
    def __init__(self, cycle_count: int, message: str | None = None):
        self.cycle_count = cycle_count
        super().__init__(message or f"expansion produced {cycle_count} disjoint cycles")


# stapler


class SequenceError(OrigamiError):
    stage = "stapler"


class BadAlphabet(SequenceError):
    pass


class MalformedFasta(SequenceError):
    pass


class ScaffoldTooShort(SequenceError):
    pass


class LengthMismatch(SequenceError):
    pass


class FootprintOverlap(SequenceError):
    pass


# app


class ConfigError(OrigamiError):
    stage = "app"


class InvalidConfig(ConfigError):
    pass


class NegativeInput(ConfigError):
    pass


EXIT_CODES = {"mesh_io": 2, "app": 2, "topology": 3, "router": 3, "stapler": 4}


def exit_code_for(error: OrigamiError) -> int:
    return EXIT_CODES.get(error.stage, 1)
