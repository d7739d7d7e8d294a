"""Conservative-irreversible tensors, bracket splitting and IPHS integration."""

import json as _json

from ._core import (
    DEFAULT_DIRECTION_SEED,
    DEFAULT_TOLERANCE,
    CiphError,
    check,
    contract_last_two,
    product_tensor,
    simulate_builtin,
    simulate_json,
    split,
    standard_directions,
    symmetrize_34,
)

__all__ = [
    "DEFAULT_DIRECTION_SEED",
    "DEFAULT_TOLERANCE",
    "CiphError",
    "check",
    "contract_last_two",
    "product_tensor",
    "simulate",
    "split",
    "standard_directions",
    "symmetrize_34",
]


def simulate(model, x0, t_end, dt=1e-3, **params):
    """Integrate a builtin model (by name) or a model dict in the JSON model format."""
    if isinstance(model, str):
        return simulate_builtin(model, x0, t_end, dt, **params)
    return simulate_json(_json.dumps(model), x0, t_end, dt)
