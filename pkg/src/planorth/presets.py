"""Shipped domain/weight presets used by the tests, demos and CLI examples."""

from __future__ import annotations

from .expansion import ExpansionModel, build_model

PRESETS: dict[str, dict] = {
    # unit disk, unweighted: every correction vanishes identically
    "disk-const": {
        "map": {"cap": 1.0, "tail": []},
        "weight": {"kind": "const", "value": 1.0},
        "rho": 0.7, "M": 16, "K": 32,
    },
    # unit disk with omega = exp(2 Re(0.3 z)); rho pinned low so the smooth
    # cutoff band carries negligible mass at desk-scale degrees
    "disk-expre03": {
        "map": {"cap": 1.0, "tail": []},
        "weight": {"kind": "exp-re-linear", "alpha": [0.3, 0.0]},
        "rho": 0.5, "M": 16, "K": 32,
    },
    # 2x1 ellipse, unweighted (classical constant-weight regime)
    "ellipse-const": {
        "map": {"cap": 1.5, "tail": [[0.0, 0.0], [0.5, 0.0]]},
        "weight": {"kind": "const", "value": 1.0},
        "rho": 0.7, "M": 16, "K": 32,
    },
    # 2x1 ellipse with omega = exp(Re z) = exp(2 Re(0.5 z))
    "ellipse-expre": {
        "map": {"cap": 1.5, "tail": [[0.0, 0.0], [0.5, 0.0]]},
        "weight": {"kind": "exp-re-linear", "alpha": [0.5, 0.0]},
        "rho": 0.75, "M": 24, "K": 48,
    },
    # mildly perturbed disk with a small exponential weight
    "perturbed-expre": {
        "map": {"cap": 1.0, "tail": [[0.0, 0.0], [0.0, 0.0], [0.1, 0.0]]},
        "weight": {"kind": "exp-re-linear", "alpha": [0.2, 0.0]},
        "rho": 0.72, "M": 24, "K": 48,
    },
}


def preset_config(name: str) -> dict:
    if name not in PRESETS:
        raise KeyError(f"unknown preset {name!r}; choose from {sorted(PRESETS)}")
    import copy
    return copy.deepcopy(PRESETS[name])


def preset_parts(name: str):
    """Return ``(map, weight_def, rho, M)`` for a preset."""
    cfg = preset_config(name)
    from .geometry import load_domain_config
    m, wd, rho, M, _K = load_domain_config(cfg)
    return m, wd, rho, M


def preset_model(name: str, order: int) -> ExpansionModel:
    m, wd, rho, M = preset_parts(name)
    return build_model(m, wd, order, bidegree=M, inner_radius=rho)
