"""Problem-file reading and writing.

Files are JSON with the following fields:

    name            problem label
    m               dimension
    set.lo, set.hi  per-coordinate bounds; "inf" / "-inf" mark unbounded sides
    set.blocks      optional block partition
    mapping.kind    one of "affine", "game", "builtin"
    affine.A        row-major m*m matrix, affine.b offset (kind "affine")
    game.block_sizes, game.q ("i,j" keyed row-major blocks), game.c
    builtin.id      registered mapping id (kind "builtin")
"""

from __future__ import annotations

import json
import math

import numpy as np

from .model import BoxSet, ConfigurationError, VIProblem, affine_mapping, game_to_vi, make_game
from .registry import builtin_mapping


class ProblemFileError(ValueError):
    """Malformed problem file; carries a human-readable diagnostic."""


def _decode_bound(v):
    if isinstance(v, str):
        if v == "inf":
            return math.inf
        if v == "-inf":
            return -math.inf
        raise ProblemFileError(f"bad bound value {v!r}")
    return float(v)


def _encode_bound(v):
    if math.isinf(v):
        return "inf" if v > 0 else "-inf"
    return v


def load_problem(path) -> VIProblem:
    with open(path) as fh:
        text = fh.read()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise ProblemFileError(f"{path}:{e.lineno}:{e.colno}: {e.msg}") from e
    try:
        return problem_from_dict(doc)
    except (KeyError, ConfigurationError, ProblemFileError, TypeError, ValueError) as e:
        raise ProblemFileError(f"{path}: {e}") from e


def problem_from_dict(doc) -> VIProblem:
    name = doc.get("name", "unnamed")
    m = int(doc["m"])
    set_doc = doc["set"]
    lo = np.array([_decode_bound(v) for v in set_doc["lo"]])
    hi = np.array([_decode_bound(v) for v in set_doc["hi"]])
    blocks = tuple(set_doc["blocks"]) if set_doc.get("blocks") else None
    box = BoxSet(lo, hi, blocks)
    kind = doc["mapping"]["kind"]
    if kind == "affine":
        a = np.array(doc["affine"]["A"], dtype=float).reshape(m, m)
        b = np.array(doc["affine"].get("b", [0.0] * m), dtype=float)
        return VIProblem(affine_mapping(a, b), box, name=name)
    if kind == "game":
        gdoc = doc["game"]
        sizes = tuple(int(s) for s in gdoc["block_sizes"])
        q = {}
        for key, flat in gdoc["q"].items():
            i, j = (int(t) for t in key.split(","))
            q[(i, j)] = np.array(flat, dtype=float).reshape(sizes[i], sizes[j])
        c = [np.array(v, dtype=float) for v in gdoc["c"]]
        if box.blocks is None:
            box = BoxSet(box.lo, box.hi, sizes)
        g = make_game(sizes, q, c, box)
        vi = game_to_vi(g, name=name)
        return vi
    if kind == "builtin":
        mapping = builtin_mapping(doc["builtin"]["id"], m)
        return VIProblem(mapping, box, name=name)
    raise ProblemFileError(f"unknown mapping kind {kind!r}")


def problem_to_dict(p: VIProblem) -> dict:
    doc = {
        "name": p.name,
        "m": p.dim,
        "set": {
            "lo": [_encode_bound(v) for v in p.set.lo],
            "hi": [_encode_bound(v) for v in p.set.hi],
        },
    }
    if p.set.blocks:
        doc["set"]["blocks"] = list(p.set.blocks)
    if p.game is not None:
        g = p.game
        doc["mapping"] = {"kind": "game"}
        doc["game"] = {
            "block_sizes": list(g.block_sizes),
            "q": {f"{i},{j}": g.q[(i, j)].ravel().tolist() for (i, j) in sorted(g.q)},
            "c": [v.tolist() for v in g.c],
        }
    elif p.mapping.kind == "affine":
        doc["mapping"] = {"kind": "affine"}
        doc["affine"] = {"A": p.mapping.data["A"].ravel().tolist(),
                         "b": p.mapping.data["b"].tolist()}
    elif p.mapping.kind == "builtin":
        doc["mapping"] = {"kind": "builtin"}
        doc["builtin"] = {"id": p.mapping.data["id"]}
    else:
        raise ProblemFileError(f"mapping kind {p.mapping.kind!r} is not serializable")
    return doc


def save_problem(p: VIProblem, path):
    with open(path, "w") as fh:
        json.dump(problem_to_dict(p), fh, indent=2, sort_keys=True)
        fh.write("\n")
