"""Instance files: canonical JSON and a plain edge-list import.

The JSON form is canonical: sorted keys, two-space indent, sorted edge list
with ``u < v``, sorted terminal lists, UTF-8 and a trailing LF. Equal
instances therefore serialize to identical bytes.
"""

from __future__ import annotations

import json

from .errors import InputError
from .graph import Graph
from .testbed import Instance

FORMAT_VERSION = 1
_KEYS = {"version", "n", "edges", "S", "T", "params", "label", "seed", "names"}
_PARAM_KEYS = ("k", "c", "d")


def instance_to_dict(inst: Instance) -> dict:
    out = {
        "version": FORMAT_VERSION,
        "n": inst.graph.n,
        "edges": [[u, v] for u, v in inst.graph.edges()],
        "S": sorted(inst.s),
        "T": sorted(inst.t),
        "label": inst.label,
    }
    if inst.params:
        out["params"] = {k: int(v) for k, v in inst.params.items()}
    if inst.seed is not None:
        out["seed"] = inst.seed
    if inst.names is not None:
        out["names"] = list(inst.names)
    return out


def dumps_instance(inst: Instance) -> str:
    return json.dumps(instance_to_dict(inst), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _int(obj, what: str) -> int:
    if isinstance(obj, bool) or not isinstance(obj, int):
        raise InputError(f"{what} must be an integer, got {obj!r}")
    return obj


def instance_from_dict(obj: dict) -> Instance:
    if not isinstance(obj, dict):
        raise InputError("instance file must hold a JSON object")
    extra = set(obj) - _KEYS
    if extra:
        raise InputError(f"unknown keys: {', '.join(sorted(extra))}")
    for key in ("n", "edges", "S", "T"):
        if key not in obj:
            raise InputError(f"missing key {key!r}")
    version = _int(obj.get("version", FORMAT_VERSION), "version")
    if version != FORMAT_VERSION:
        raise InputError(f"unsupported version {version}")
    n = _int(obj["n"], "n")
    edges = []
    for e in obj["edges"]:
        if not isinstance(e, list) or len(e) != 2:
            raise InputError(f"edge {e!r} is not a pair")
        edges.append((_int(e[0], "edge end"), _int(e[1], "edge end")))
    g = Graph(n, edges)
    s = [_int(v, "S vertex") for v in obj["S"]]
    t = [_int(v, "T vertex") for v in obj["T"]]
    params = {}
    for key, val in (obj.get("params") or {}).items():
        if key not in _PARAM_KEYS:
            raise InputError(f"unknown parameter {key!r}")
        params[key] = _int(val, f"params.{key}")
        if params[key] < 0:
            raise InputError(f"params.{key} must be >= 0")
    seed = obj.get("seed")
    if seed is not None:
        seed = _int(seed, "seed")
    names = obj.get("names")
    if names is not None:
        if not all(isinstance(x, str) for x in names):
            raise InputError("names must be strings")
        names = tuple(names)
    label = obj.get("label", "instance")
    if not isinstance(label, str):
        raise InputError("label must be a string")
    return Instance(g, frozenset(s), frozenset(t), params, label, seed, names)


def loads_instance(text: str) -> Instance:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"not valid JSON: {exc}") from None
    return instance_from_dict(obj)


def read_instance(path: str) -> Instance:
    with open(path, encoding="utf-8") as fh:
        return loads_instance(fh.read())


def write_instance(inst: Instance, path: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(dumps_instance(inst))


def parse_edge_list(text: str) -> Graph:
    """Parse ``n m`` followed by ``m`` lines of ``u v``; ``#`` starts a comment."""
    rows = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise InputError(f"line {lineno}: expected two integers, got {raw!r}")
        try:
            rows.append((lineno, int(parts[0]), int(parts[1])))
        except ValueError:
            raise InputError(f"line {lineno}: expected two integers, got {raw!r}") from None
    if not rows:
        raise InputError("empty edge list: missing the 'n m' header")
    _, n, m = rows[0]
    body = rows[1:]
    if len(body) != m:
        raise InputError(f"header promises {m} edges, found {len(body)}")
    return Graph(n, [(u, v) for _, u, v in body])
