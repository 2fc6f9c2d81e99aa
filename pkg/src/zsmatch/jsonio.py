"""Reading and writing the JSON descriptions.

Schemas (all identifiers are strings):

* category: ``{"objects", "morphisms": [{"id","src","dst"}], "identities": {obj: id},
  "compose": [[f, g, fg]]}``
* matched pair: ``{"C": category, "D": category, "act_L": [[c, d, c|>d]],
  "act_R": [[c, d, c<|d]]}``
* weighted graph: ``{"vertices", "edges": [{"id","src","dst","p"}]}``
* total cochain: ``{"phi_20": [[g,h,"a/b"]], "phi_11": [[c,d,"a/b"]], "phi_02": [[d1,d2,"a/b"]]}``
* categorical cochain: ``{"cochain": [[f, g, "a/b"]]}``

Every object may carry a ``"name"``.  An input argument that is not an
existing file is looked up in the shipped corpus (``S3`` or ``S3.json``).
"""

import json
from importlib import resources
from pathlib import Path

from .category import validate_category
from .errors import InputError
from .matched_pair import validate_matched_pair
from .odometer import WeightedGraph

__all__ = ["read_json", "detect_kind", "load", "corpus_names", "corpus_file", "export_corpus",
           "dumps"]

KINDS = ("matched_pair", "category", "graph", "total_cochain", "categorical_cochain")


def read_json(path):
    """Parse a file, turning every failure into :class:`InputError`."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror or exc}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}",
                         witness=(str(path), exc.lineno, exc.colno)) from None


def detect_kind(data):
    if not isinstance(data, dict):
        raise InputError("top-level JSON value must be an object")
    if "C" in data and "D" in data:
        return "matched_pair"
    if "objects" in data and "morphisms" in data:
        return "category"
    if "vertices" in data and "edges" in data:
        return "graph"
    if any(k in data for k in ("phi_20", "phi_11", "phi_02")):
        return "total_cochain"
    if "cochain" in data:
        return "categorical_cochain"
    raise InputError(f"cannot tell what this describes (keys: {sorted(data)[:6]})")


def _corpus_dir():
    return resources.files("zsmatch") / "corpus"


def corpus_names():
    return sorted(p.name[:-5] for p in _corpus_dir().iterdir() if p.name.endswith(".json"))


def corpus_file(name):
    name = name if name.endswith(".json") else name + ".json"
    p = _corpus_dir() / name
    if not p.is_file():
        raise InputError(f"no such file or corpus entry: {name[:-5]}")
    return Path(str(p))


def resolve(path_or_name):
    p = Path(path_or_name)
    return p if p.is_file() else corpus_file(str(path_or_name))


def load(path_or_name):
    """``(kind, object, raw data)``; categories and pairs come back validated,
    cochains stay raw (they need a pair or category to be read against)."""
    path = resolve(path_or_name)
    data = read_json(path)
    kind = detect_kind(data)
    name = data.get("name") or path.stem
    if kind == "matched_pair":
        obj = validate_matched_pair(data, name=name)
    elif kind == "category":
        obj = validate_category(data, name=name)
    elif kind == "graph":
        obj = WeightedGraph.from_json(data)
        obj.name = name
    else:
        obj = data
    return kind, obj, data


def dumps(obj):
    """Deterministic JSON text."""
    return json.dumps(obj, indent=2, sort_keys=False, ensure_ascii=False) + "\n"


def export_corpus(directory):
    """Write every catalog example as ``<name>.json`` into ``directory``."""
    from .catalog import categories, matched_pairs, mp2_broken, odometer_graphs

    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    written = []

    def put(name, data):
        (directory / f"{name}.json").write_text(dumps({"name": name, **data}), encoding="utf-8")
        written.append(name)
    for name, C in categories().items():
        put(name, C.to_dict())
    for name, mp in matched_pairs().items():
        put(name, mp.to_dict())
    for name, E in odometer_graphs().items():
        data = E.to_json()
        data.pop("name")
        put(name, data)
    broken = mp2_broken()
    broken.pop("name")
    put("mp2_broken", broken)
    put("z2_half", {"cochain": [["g1", "g1", "1/2"]]})
    put("klein_cocycle", _klein_cocycle())
    return written


def _klein_cocycle():
    """The order-2 total cocycle of the Klein pair (``phi o d^Tot = 0`` convention)."""
    from fractions import Fraction

    from .catalog import klein_pair
    from .cocycle import total_cocycle_basis

    mp = klein_pair()
    make = next(m for d, m in total_cocycle_basis(mp, "dual") if d == 2)
    return make(Fraction(1, 2)).to_json(mp)
