"""JSON round-tripping for margin, copula and process configurations.

All dictionaries use plain JSON types only, and canonical serialization
(sorted keys, no whitespace) so that digests of equal configurations are
byte-identical across runs and platforms.
"""

from __future__ import annotations

import hashlib
import json
from typing import Any

from .copulas import CopulaSpec, DerivedCopula
from .errors import ConfigurationError
from .margins import MarginSpec

__all__ = [
    "margin_to_dict",
    "margin_from_dict",
    "copula_to_dict",
    "copula_from_dict",
    "canonical_json",
    "config_digest",
]


def margin_to_dict(spec: MarginSpec) -> dict[str, Any]:
    out: dict[str, Any] = {"kind": spec.kind}
    for name in ("alpha", "rate", "shape", "scale", "k"):
        value = getattr(spec, name)
        if value is not None:
            out[name] = value
    return out


def margin_from_dict(data: dict[str, Any]) -> MarginSpec:
    if not isinstance(data, dict) or "kind" not in data:
        raise ConfigurationError("margin must be an object with a 'kind' field")
    try:
        return MarginSpec(**data)
    except (TypeError, ValueError) as exc:
        raise ConfigurationError(f"bad margin {data!r}: {exc}") from exc


def copula_to_dict(spec: CopulaSpec | DerivedCopula) -> dict[str, Any]:
    if isinstance(spec, DerivedCopula):
        return {
            "kind": "derived",
            "base": copula_to_dict(spec.base),
            "theta": list(spec.theta),
        }
    out: dict[str, Any] = {"kind": spec.kind}
    if spec.gamma is not None:
        out["gamma"] = spec.gamma
    return out


def copula_from_dict(data: dict[str, Any]) -> CopulaSpec | DerivedCopula:
    if not isinstance(data, dict) or "kind" not in data:
        raise ConfigurationError("copula must be an object with a 'kind' field")
    try:
        if data["kind"] == "derived":
            base = copula_from_dict(data["base"])
            if isinstance(base, DerivedCopula):
                raise ValueError("derived copulas cannot be nested")
            return DerivedCopula(base=base, theta=tuple(data["theta"]))
        return CopulaSpec(**data)
    except (TypeError, ValueError, KeyError) as exc:
        raise ConfigurationError(f"bad copula {data!r}: {exc}") from exc


def canonical_json(data: Any) -> str:
    """Deterministic JSON text: sorted keys, minimal separators."""
    return json.dumps(data, sort_keys=True, separators=(",", ":"), allow_nan=False)


def config_digest(data: Any) -> str:
    """Hex SHA-256 of the canonical JSON form of ``data``."""
    return hashlib.sha256(canonical_json(data).encode("utf-8")).hexdigest()
