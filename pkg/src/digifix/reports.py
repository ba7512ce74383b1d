"""Byte-stable command reports in canonical JSON, CSV, and text."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass

from .spectrum import EnumerationStats

VERSION = "0.1.0"


@dataclass(frozen=True)
class Report:
    command: str
    input_digest: str
    result: dict
    stats: EnumerationStats | None
    version: str = VERSION


def digest_bytes(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()[:16]


def digest_file(path) -> str:
    with open(path, "rb") as fh:
        return digest_bytes(fh.read())


def _stats_dict(stats: EnumerationStats | None):
    # elapsed is deliberately left out: reports must be byte-stable.
    if stats is None:
        return None
    return {"maps_enumerated": stats.maps_enumerated,
            "nodes_visited": stats.nodes_visited,
            "truncated": stats.truncated}


def to_json_bytes(report: Report) -> bytes:
    payload = {"command": report.command,
               "input_digest": report.input_digest,
               "result": report.result,
               "stats": _stats_dict(report.stats),
               "version": report.version}
    return (json.dumps(payload, sort_keys=True, separators=(",", ":")) + "\n").encode()


def _cell(value) -> str:
    if isinstance(value, str):
        return value
    return json.dumps(value, sort_keys=True, separators=(",", ":"))


def _flat_rows(result: dict):
    for key in sorted(result):
        value = result[key]
        if isinstance(value, (list, tuple)):
            if not value:
                yield key, "[]"
            else:
                for item in value:
                    yield key, _cell(item)
        else:
            yield key, _cell(value)


def to_csv_bytes(report: Report) -> bytes:
    lines = ["field,value"]
    lines.append(f"command,{report.command}")
    lines.append(f"input_digest,{report.input_digest}")
    for key, value in _flat_rows(report.result):
        if any(ch in value for ch in ",\"\n"):
            value = '"' + value.replace('"', '""') + '"'
        lines.append(f"{key},{value}")
    stats = _stats_dict(report.stats)
    if stats:
        for key in sorted(stats):
            lines.append(f"stats.{key},{json.dumps(stats[key])}")
    lines.append(f"version,{report.version}")
    return ("\n".join(lines) + "\n").encode()


def to_text(report: Report) -> str:
    lines = [f"{report.command} (digifix {report.version})",
             f"  input digest: {report.input_digest}"]
    for key in sorted(report.result):
        lines.append(f"  {key}: {report.result[key]}")
    if report.stats is not None:
        s = report.stats
        lines.append(f"  stats: {s.maps_enumerated} maps, {s.nodes_visited} nodes, "
                     f"{s.elapsed:.3f}s" + (", truncated" if s.truncated else ""))
    return "\n".join(lines) + "\n"


def render(report: Report, fmt: str) -> bytes:
    if fmt == "json":
        return to_json_bytes(report)
    if fmt == "csv":
        return to_csv_bytes(report)
    if fmt == "text":
        return to_text(report).encode()
    raise ValueError(f"unknown report format {fmt!r}")
