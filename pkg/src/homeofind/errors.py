"""Stage-tagged failures of the homeomorph-finding pipeline."""

from __future__ import annotations


class PipelineError(Exception):
    """A pipeline stage could not make progress; carries the stage tag."""

    stage = "pipeline"


class NoQualifyingVertex(PipelineError):
    stage = "pick_link_vertex"


class NoQualifyingX(PipelineError):
    stage = "select_core_set"


class CliqueNotFound(PipelineError):
    stage = "find_complete_subgraph"


class EmptyCandidateSet(PipelineError):
    """A V2 vertex had no image candidates; signals an upstream bug."""

    stage = "embed_v2"


class RetriesExhausted(PipelineError):
    stage = "embed_v2"


class AdmissibilityViolation(PipelineError):
    """Some embedded special cycle is forbidden; triggers re-randomization."""

    stage = "assign_centers"


class CenterExhausted(PipelineError):
    """Distinct-center assignment ran out of candidates; signals a bug."""

    stage = "assign_centers"
