"""Extremal results with witnesses, and a content-addressed on-disk cache."""

from __future__ import annotations

import hashlib
import json
import os
from dataclasses import dataclass
from pathlib import Path
from typing import Any

from .errors import CorruptRecord
from .hypercore import Hypergraph, contains, parse_hypergraph
from .lettering import LetteredHypergraph, parse_lettered, validate_lettering

SCHEMA = "turanlab.extremal/1"
CACHE_ENV = "TURANLAB_CACHE"

KINDS = ("ex_hypergraph", "f_lettered", "ex_matrix")


def _sha(text: str) -> str:
    return hashlib.sha256(text.encode()).hexdigest()


def _to_text(obj) -> str:
    return obj.to_text()


def _parse(kind: str, role: str, text: str, k: int | None):
    if kind == "ex_matrix":
        from .matrix01 import parse_matrix

        return parse_matrix(text)
    if kind == "f_lettered" and role == "witness":
        return parse_lettered(text, k)
    return parse_hypergraph(text)


@dataclass
class ExtremalRecord:
    """An exact (or, with ``exact=False``, lower-bound) extremal value.

    ``value`` counts edges for ``ex_hypergraph``, letters for ``f_lettered``
    and ones for ``ex_matrix``.
    """

    kind: str
    n: int
    d: int
    k: int | None
    forbidden: Any
    value: int
    witness: Any
    exact: bool = True
    nodes: int = 0
    seconds: float = 0.0

    @property
    def forbidden_digest(self) -> str:
        return _sha(_to_text(self.forbidden))[:16]

    @property
    def key(self) -> str:
        ident = json.dumps([self.kind, self.n, self.d, self.k, _to_text(self.forbidden)])
        return _sha(ident)

    def parameters(self) -> dict:
        return {"n": self.n, "d": self.d, "k": self.k, "forbidden_digest": self.forbidden_digest}

    def to_record(self, stats: bool = False) -> dict:
        rec = {
            "schema": SCHEMA,
            "kind": self.kind,
            "parameters": self.parameters(),
            "forbidden": self.forbidden.to_record(),
            "value": self.value,
            "exact": self.exact,
            "witness": self.witness.to_record(),
        }
        if stats:
            rec["stats"] = {"nodes": self.nodes, "seconds": round(self.seconds, 6)}
        return rec


def check_witness(rec: ExtremalRecord) -> list[str]:
    """Problems with a record's witness; empty when it is valid."""
    problems = []
    if rec.kind == "ex_hypergraph":
        W: Hypergraph = rec.witness
        if (W.n, W.d) != (rec.n, rec.d):
            problems.append("witness has wrong vertex count or uniformity")
        if W.m != rec.value:
            problems.append(f"witness has {W.m} edges, record says {rec.value}")
        if contains(W, rec.forbidden):
            problems.append("witness contains the forbidden hypergraph")
    elif rec.kind == "f_lettered":
        L: LetteredHypergraph = rec.witness
        rep = validate_lettering(L, rec.k)
        if (L.base.n, L.base.d) != (rec.n, rec.d):
            problems.append("witness has wrong vertex count or uniformity")
        if not rep.valid:
            problems.append("witness breaks the greatest-vertex rule")
        if rep.short_letters:
            problems.append(f"letters used fewer than {rec.k} times: {rep.short_letters}")
        if rep.r != rec.value:
            problems.append(f"witness has {rep.r} letters, record says {rec.value}")
        if contains(L.base, rec.forbidden):
            problems.append("witness contains the forbidden hypergraph")
    elif rec.kind == "ex_matrix":
        from .matrix01 import mat_contains

        W = rec.witness
        if W.dims != (rec.n,) * rec.d:
            problems.append("witness has wrong dimensions")
        if len(W.ones) != rec.value:
            problems.append(f"witness has {len(W.ones)} ones, record says {rec.value}")
        if mat_contains(W, rec.forbidden):
            problems.append("witness contains the forbidden pattern")
    else:
        problems.append(f"unknown record kind {rec.kind!r}")
    return problems


class ResultCache:
    """Directory of JSON record files named by the parameter digest.

    Writes are single-writer (atomic rename); any number of readers.
    """

    def __init__(self, directory: str | os.PathLike):
        self.dir = Path(directory)

    @classmethod
    def from_env(cls) -> ResultCache | None:
        path = os.environ.get(CACHE_ENV)
        return cls(path) if path else None

    def path_for(self, rec_or_key) -> Path:
        key = rec_or_key if isinstance(rec_or_key, str) else rec_or_key.key
        return self.dir / f"{key}.json"

    def store(self, rec: ExtremalRecord) -> Path:
        problems = check_witness(rec)
        if problems:
            raise CorruptRecord("refusing to store unverified record: " + "; ".join(problems))
        body = {
            "schema": SCHEMA,
            "kind": rec.kind,
            "parameters": rec.parameters(),
            "n": rec.n,
            "d": rec.d,
            "k": rec.k,
            "forbidden": _to_text(rec.forbidden),
            "value": rec.value,
            "exact": rec.exact,
            "witness": _to_text(rec.witness),
        }
        body["checksum"] = _sha(json.dumps(body, sort_keys=True))
        self.dir.mkdir(parents=True, exist_ok=True)
        path = self.path_for(rec)
        tmp = path.with_suffix(".tmp")
        tmp.write_text(json.dumps(body, sort_keys=True, indent=1) + "\n")
        tmp.replace(path)
        return path

    def load_path(self, path: Path) -> ExtremalRecord:
        try:
            body = json.loads(path.read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise CorruptRecord(f"{path}: unreadable record ({exc})") from exc
        checksum = body.pop("checksum", None)
        if checksum != _sha(json.dumps(body, sort_keys=True)):
            raise CorruptRecord(f"{path}: checksum mismatch")
        kind, k = body["kind"], body["k"]
        try:
            rec = ExtremalRecord(
                kind=kind,
                n=body["n"],
                d=body["d"],
                k=k,
                forbidden=_parse(kind, "forbidden", body["forbidden"], k),
                value=body["value"],
                witness=_parse(kind, "witness", body["witness"], k),
                exact=body["exact"],
            )
        except (KeyError, ValueError) as exc:
            raise CorruptRecord(f"{path}: malformed record ({exc})") from exc
        problems = check_witness(rec)
        if problems:
            raise CorruptRecord(f"{path}: " + "; ".join(problems))
        return rec

    def load(self, kind: str, n: int, d: int, k: int | None, forbidden) -> ExtremalRecord | None:
        probe = ExtremalRecord(kind, n, d, k, forbidden, 0, None)
        path = self.path_for(probe)
        if not path.exists():
            return None
        return self.load_path(path)
