"""Append-only JSONL result cache.

One line per run: schema version, timestamp, the semantic command fingerprint,
the payload, and the tool version.  Lookup scans the file and returns the most
recent record whose fingerprint and schema version match; corrupt lines are
skipped with a warning and never fatal.
"""

from __future__ import annotations

import datetime
import hashlib
import json
import os
import sys
from dataclasses import dataclass
from typing import Optional

SCHEMA_VERSION = 1
ENV_VAR = "CUBEFREE_CACHE"
DEFAULT_PATH = "./cubefree-cache.jsonl"


def stable_json(data) -> str:
    return json.dumps(data, sort_keys=True, separators=(",", ":"))


def fingerprint(command: dict) -> str:
    """Digest of the semantic command parameters (output options excluded)."""
    return hashlib.sha256(stable_json(command).encode()).hexdigest()


@dataclass(frozen=True)
class RunRecord:
    schema: int
    timestamp: str
    command: dict
    fingerprint: str
    payload: dict
    version: str

    def as_json_dict(self) -> dict:
        return {
            "schema": self.schema,
            "timestamp": self.timestamp,
            "command": self.command,
            "fingerprint": self.fingerprint,
            "payload": self.payload,
            "version": self.version,
        }


def cache_path(explicit: Optional[str] = None) -> str:
    return explicit or os.environ.get(ENV_VAR) or DEFAULT_PATH


class ResultCache:
    def __init__(self, path: Optional[str] = None):
        self.path = cache_path(path)

    def records(self):
        if not os.path.exists(self.path):
            return
        with open(self.path, encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, 1):
                line = line.strip()
                if not line:
                    continue
                try:
                    raw = json.loads(line)
                    if raw.get("schema") != SCHEMA_VERSION:
                        continue  # foreign schema: treated as absent
                    yield RunRecord(
                        raw["schema"], raw["timestamp"], raw["command"],
                        raw["fingerprint"], raw["payload"], raw["version"],
                    )
                except (json.JSONDecodeError, KeyError, TypeError):
                    print(
                        f"warning: skipping corrupt cache line {lineno} in {self.path}",
                        file=sys.stderr,
                    )

    def lookup(self, fp: str) -> Optional[RunRecord]:
        hit = None
        for rec in self.records():
            if rec.fingerprint == fp:
                hit = rec
        return hit

    def store(self, command: dict, payload: dict, version: str) -> RunRecord:
        rec = RunRecord(
            SCHEMA_VERSION,
            datetime.datetime.now(datetime.timezone.utc).isoformat(),
            command,
            fingerprint(command),
            payload,
            version,
        )
        with open(self.path, "a", encoding="utf-8") as fh:
            fh.write(stable_json(rec.as_json_dict()) + "\n")
        return rec
