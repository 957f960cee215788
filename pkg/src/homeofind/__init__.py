"""Find and certify homeomorphic copies of 2-complexes in dense 3-graphs."""

from .core import (
    AuxGraph,
    Config,
    SubdividedComplex,
    ThreeGraph,
    TripartiteHost,
    build_aux_graph,
    build_triple_subdivision,
    covered_pairs,
    euler_characteristic,
    tripartite_reduce,
)
from .embed import (
    Embedding,
    HomeomorphCertificate,
    ProblemGraph,
    find_complete_subgraph,
    find_homeomorph,
)
from .errors import PipelineError
from .harness import SweepSpec, gen_random_host, run_sweep
from .io import load_certificate, load_host, load_target, write_certificate
from .links import FourCycle, LinkGraph, classify_cycles, count_disks, link_graph, pick_link_vertex
from .verify import (
    canonical_glued_subdivision,
    clique_oracle,
    expectation_oracle,
    forbidden_expectation_oracle,
    verify_certificate,
)

__all__ = [
    "AuxGraph",
    "Config",
    "Embedding",
    "FourCycle",
    "HomeomorphCertificate",
    "LinkGraph",
    "PipelineError",
    "ProblemGraph",
    "SubdividedComplex",
    "SweepSpec",
    "ThreeGraph",
    "TripartiteHost",
    "build_aux_graph",
    "build_triple_subdivision",
    "canonical_glued_subdivision",
    "classify_cycles",
    "clique_oracle",
    "count_disks",
    "covered_pairs",
    "euler_characteristic",
    "expectation_oracle",
    "find_complete_subgraph",
    "find_homeomorph",
    "forbidden_expectation_oracle",
    "gen_random_host",
    "link_graph",
    "load_certificate",
    "load_host",
    "load_target",
    "pick_link_vertex",
    "run_sweep",
    "tripartite_reduce",
    "verify_certificate",
    "write_certificate",
]
