"""Canonical JSON rendering and config digests shared by all report producers.

Reports must be byte-identical for identical semantic configuration, so every
producer funnels through `canonical_json`.  Execution knobs (shard count,
progress interval, memory ceiling) are deliberately excluded from digests.
"""

import hashlib
import json

VERSION = "0.1.0"


def canonical_json(obj) -> str:
    """Deterministic JSON used for all emitted reports."""
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False)


def config_digest(config: dict) -> str:
    """Short hex digest of the semantic scan configuration."""
    blob = json.dumps(config, sort_keys=True, separators=(",", ":"), ensure_ascii=False)
    return hashlib.sha256(blob.encode("utf-8")).hexdigest()[:16]
