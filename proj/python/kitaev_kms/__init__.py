"""KMS states of abelian quantum double models."""

import json

from ._core import (
    ConfigError,
    GroupSpec,
    GuardExceeded,
    LatticePatch,
    NotInGamma,
    OperatorSpace,
    OperatorSum,
    SpecMismatch,
    cocycle,
    decompose_gamma,
    det_check,
    edge_multiplication,
    edge_translation,
    face_projector,
    gibbs_expectation,
    hamiltonian,
    kms_measure_check,
    ltqo_check,
    measure_params,
    pf_eigen,
    recursion_residual,
    relation_suite,
    suite_names,
    transfer_matrix,
    vertex_projector,
    zero_t_scan,
)
from ._core import run_config as _run_config


def run_config(text):
    """Run a config document; returns the report records as dicts."""
    return json.loads(_run_config(text))


def syndrome(sites):
    """JSON for a syndrome from (kind, x, y, value) tuples."""
    return json.dumps({"sites": [{"kind": k, "x": x, "y": y, "value": list(v)} for k, x, y, v in sites]})
