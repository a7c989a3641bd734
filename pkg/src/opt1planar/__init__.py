"""Recognition of optimal 1-planar graphs (4n-8 edges) in linear time.

The public surface: build or load a graph, run one of the recognizers,
optionally reconstruct and verify a 1-planar embedding from the trace,
and generate corpora (extended wheels, random members, exhaustive small
classes, adversarial mutants).
"""

from .canon import canonical_form
from .embedding import (
    EmbeddedGraph,
    VerificationReport,
    expand_cr,
    expand_sr,
    face_orbits,
    reconstruct,
    separating_quad,
    verify_embedding,
)
from .engine import (
    RecognitionResult,
    Stats,
    recognize_5connected,
    recognize_linear,
    recognize_quadratic,
)
from .formats import (
    ParseError,
    dump_rotation,
    parse_auto,
    parse_edgelist,
    parse_graph6,
    serialize_edgelist,
    serialize_graph6,
    to_dot,
)
from .generator import (
    GeneratedGraph,
    GenerationError,
    enumerate_classes,
    mutate_2switch,
    random_optimal,
)
from .graph import DynamicGraph, StructuralFault, precheck, precheck_reason
from .records import CREdit, EditRecord, SREdit
from .rules import NotOptimal, XWStructure, detect_xw, make_xw

__version__ = "1.0.0"

__all__ = [
    "CREdit",
    "DynamicGraph",
    "EditRecord",
    "EmbeddedGraph",
    "GeneratedGraph",
    "GenerationError",
    "NotOptimal",
    "ParseError",
    "RecognitionResult",
    "SREdit",
    "Stats",
    "StructuralFault",
    "VerificationReport",
    "XWStructure",
    "canonical_form",
    "detect_xw",
    "dump_rotation",
    "enumerate_classes",
    "expand_cr",
    "expand_sr",
    "face_orbits",
    "make_xw",
    "mutate_2switch",
    "parse_auto",
    "parse_edgelist",
    "parse_graph6",
    "precheck",
    "precheck_reason",
    "random_optimal",
    "reconstruct",
    "recognize_5connected",
    "recognize_linear",
    "recognize_quadratic",
    "separating_quad",
    "serialize_edgelist",
    "serialize_graph6",
    "to_dot",
    "verify_embedding",
]
