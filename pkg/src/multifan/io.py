"""JSON documents for multi-fans.

Layout (all rationals as ``"p/q"`` strings)::

    {
      "format_version": 1,
      "n": 2,
      "m": 4,
      "cycle": [{"simplex": [1, 2], "weight": "1/1"}, ...],
      "lambda": [["1/1", "0/1"], ..., null],
      "apex": [3, 4],
      "polarization": ["1/1", "3/1"],
      "seed": 7
    }

``lambda`` may be omitted for a bare cycle; entries for ghost vertices may
be ``null``. ``apex``, ``polarization`` and ``seed`` are optional.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .errors import FormatError, MultiFanError
from .exactmath import as_rational, format_rational
from .fan import MultiFan
from .simplicial import SimplicialChain, permutation_sign

FORMAT_VERSION = 1


@dataclass(frozen=True)
class FanDocument:
    cycle: SimplicialChain
    n: int
    coloring: tuple | None = None
    apex: tuple[int, int] | None = None
    polarization: tuple[Fraction, ...] | None = None
    seed: int | None = None

    def fan(self) -> MultiFan:
        if self.coloring is None:
            raise FormatError("document has no lambda")
        return MultiFan(self.cycle, list(self.coloring), self.apex)

    def to_dict(self) -> dict:
        out: dict = {
            "format_version": FORMAT_VERSION,
            "n": self.n,
            "m": self.cycle.m,
            "cycle": [{"simplex": list(s), "weight": format_rational(w)} for s, w in self.cycle.items()],
        }
        if self.coloring is not None:
            out["lambda"] = [None if v is None else [format_rational(x) for x in v] for v in self.coloring]
        if self.apex is not None:
            out["apex"] = list(self.apex)
        if self.polarization is not None:
            out["polarization"] = [format_rational(x) for x in self.polarization]
        if self.seed is not None:
            out["seed"] = self.seed
        return out


def document_from_fan(fan: MultiFan, polarization=None, seed: int | None = None) -> FanDocument:
    pol = None if polarization is None else tuple(as_rational(x) for x in polarization)
    return FanDocument(fan.cycle, fan.n, tuple(fan.coloring), fan.apex, pol, seed)


def document_from_cycle(cycle: SimplicialChain) -> FanDocument:
    return FanDocument(cycle, cycle.k)


def _rational(x, where: str) -> Fraction:
    if isinstance(x, str) or (isinstance(x, int) and not isinstance(x, bool)):
        try:
            return as_rational(x)
        except (ValueError, ZeroDivisionError, TypeError) as exc:
            raise FormatError(f"{where}: bad rational {x!r}") from exc
    raise FormatError(f"{where}: rationals must be strings or integers, got {x!r}")


def _int(x, where: str) -> int:
    if not isinstance(x, int) or isinstance(x, bool):
        raise FormatError(f"{where}: expected an integer, got {x!r}")
    return x


def parse_document(data: dict) -> FanDocument:
    """Validate a decoded JSON object; raises :class:`FormatError` on bad structure."""
    if not isinstance(data, dict):
        raise FormatError("top level must be an object")
    version = data.get("format_version", FORMAT_VERSION)
    if version != FORMAT_VERSION:
        raise FormatError(f"unsupported format_version {version!r}")
    for key in ("n", "m", "cycle"):
        if key not in data:
            raise FormatError(f"missing field {key!r}")
    n, m = _int(data["n"], "n"), _int(data["m"], "m")
    if n < 0 or m < 0:
        raise FormatError("n and m must be nonnegative")
    if not isinstance(data["cycle"], list):
        raise FormatError("cycle must be a list")
    weights = {}
    for i, entry in enumerate(data["cycle"]):
        if not isinstance(entry, dict) or "simplex" not in entry:
            raise FormatError(f"cycle[{i}] must be an object with a simplex")
        simplex = entry["simplex"]
        if not isinstance(simplex, list):
            raise FormatError(f"cycle[{i}].simplex must be a list")
        simplex = tuple(_int(v, f"cycle[{i}].simplex") for v in simplex)
        if len(simplex) != n:
            raise FormatError(f"cycle[{i}] has {len(simplex)} vertices, expected {n}")
        if any(not 1 <= v <= m for v in simplex) or len(set(simplex)) != len(simplex):
            raise FormatError(f"cycle[{i}] has vertices outside 1..{m} or repeats")
        key = tuple(sorted(simplex))
        if key in weights:
            raise FormatError(f"cycle[{i}] repeats simplex {list(key)}")
        w = _rational(entry.get("weight", "1"), f"cycle[{i}].weight")
        if key != simplex:
            # weights are stored on sorted simplices
            w *= permutation_sign(simplex)
        weights[key] = w
    cycle = SimplicialChain(m, n, weights)
    coloring = None
    if data.get("lambda") is not None:
        raw = data["lambda"]
        if not isinstance(raw, list) or len(raw) != m:
            raise FormatError(f"lambda must be a list of {m} entries")
        coloring = []
        for i, vec in enumerate(raw):
            if vec is None:
                coloring.append(None)
                continue
            if not isinstance(vec, list) or len(vec) != n:
                raise FormatError(f"lambda[{i}] must have {n} entries")
            coloring.append(tuple(_rational(x, f"lambda[{i}]") for x in vec))
        coloring = tuple(coloring)
    apex = None
    if data.get("apex") is not None:
        raw = data["apex"]
        if not isinstance(raw, list) or len(raw) != 2:
            raise FormatError("apex must be a pair")
        apex = (_int(raw[0], "apex"), _int(raw[1], "apex"))
    pol = None
    if data.get("polarization") is not None:
        raw = data["polarization"]
        if not isinstance(raw, list) or len(raw) != n:
            raise FormatError(f"polarization must have {n} entries")
        pol = tuple(_rational(x, "polarization") for x in raw)
    seed = None if data.get("seed") is None else _int(data["seed"], "seed")
    return FanDocument(cycle, n, coloring, apex, pol, seed)


def loads(text: str) -> FanDocument:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON: {exc}") from exc
    return parse_document(data)


def load(path) -> FanDocument:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise MultiFanError(f"cannot read {path}: {exc}") from exc
    return loads(text)


def dumps(obj) -> str:
    """Serialize a fan, cycle or document."""
    if isinstance(obj, MultiFan):
        obj = document_from_fan(obj)
    elif isinstance(obj, SimplicialChain):
        obj = document_from_cycle(obj)
    return json.dumps(obj.to_dict(), indent=2) + "\n"


def dump(obj, path) -> None:
    Path(path).write_text(dumps(obj))
