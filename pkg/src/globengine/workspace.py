"""
Loading and dumping workspace documents.

A workspace document is one JSON object::

    {"version": 1,
     "coalgebras":      {name: {"space", "delta", "eps"}},
     "comodules":       {name: {"space", "coalgebra_ref", "coaction"}},
     "gpcs":            {name: {"X", "XbulletH", "pi", "rho", "coalgebra_ref"}
                              | {"trivial_on": space, "coalgebra_ref"}
                              | {"global_from": comodule_ref}
                              | {"induced_from": cover_ref}},
     "covers":          {name: {"comodule_ref", "X", "p"}},
     "groups":          {name: {"elements", "table", "unit"}},
     "actions":         {name: {"group_ref", "carrier", "table"}},
     "partial_actions": {name: {"group_ref", "carrier", "domain_pairs", "alpha_pairs"}}}

Spaces are ``{"dim", "labels"}``; matrices are row-major arrays of strings
``"p/q"`` or ``"n"``.  Group elements and carrier points are strings.
"""

from __future__ import annotations

import hashlib
import json
import os
from pathlib import Path

from .comod import Coalgebra, Comodule, check_coalgebra, check_comodule
from .exactla import (
    LinearMap,
    ShapeError,
    VectorSpace,
    map_from_json,
    matrix_to_json,
    space_from_json,
    space_to_json,
    tensor_space,
)
from .gpc import Cover, PartialComoduleDatum, global_gpc, induce, trivial_datum
from .psets import FiniteMonoid, GlobalGSet, PartialGSet, check_partial_action

VERSION = 1
KINDS = {
    "coalgebra": "coalgebras",
    "comodule": "comodules",
    "gpc": "gpcs",
    "cover": "covers",
    "group": "groups",
    "action": "actions",
    "partial": "partial_actions",
}


class InputError(ValueError):
    """A malformed document or an unresolved reference; ``location`` says where."""

    def __init__(self, message: str, location: str = ""):
        super().__init__(f"{location}: {message}" if location else message)
        self.location = location


def fixtures_dir() -> Path:
    env = os.environ.get("GLOBENGINE_FIXTURES")
    return Path(env) if env else Path(__file__).with_name("fixtures")


def parse_target(target: str) -> tuple[str, str]:
    if ":" not in target:
        raise InputError(f"target {target!r} must look like kind:name")
    kind, name = target.split(":", 1)
    if kind not in KINDS:
        raise InputError(f"unknown kind {kind!r}; expected one of {sorted(KINDS)}")
    return kind, name


class Workspace:
    def __init__(self, documents: list[dict] | None = None):
        self.raw = {section: {} for section in KINDS.values()}
        self._cache: dict = {}
        for doc in documents or []:
            self.add_document(doc)

    # -- loading -----------------------------------------------------------
    @classmethod
    def load(cls, paths=(), include_fixtures: bool = True) -> "Workspace":
        docs = []
        files = []
        if include_fixtures:
            d = fixtures_dir()
            if d.is_dir():
                files.extend(sorted(d.glob("*.json")))
        files.extend(Path(p) for p in paths)
        for f in files:
            try:
                docs.append(json.loads(Path(f).read_text()))
            except (OSError, json.JSONDecodeError) as exc:
                raise InputError(str(exc), str(f)) from exc
        return cls(docs)

    def add_document(self, doc: dict):
        if not isinstance(doc, dict) or doc.get("version") != VERSION:
            raise InputError(f"document must be an object with version {VERSION}")
        for section in KINDS.values():
            for name, entry in (doc.get(section) or {}).items():
                self.raw[section][name] = entry
        self._cache.clear()

    def names(self, kind: str) -> list[str]:
        return sorted(self.raw[KINDS[kind]])

    def entry(self, kind: str, name: str) -> dict:
        try:
            return self.raw[KINDS[kind]][name]
        except KeyError:
            raise InputError(f"unresolved reference {kind}:{name}") from None

    def get(self, target: str):
        kind, name = parse_target(target)
        key = (kind, name)
        if key not in self._cache:
            builder = getattr(self, f"_build_{kind}")
            loc = f"{kind}:{name}"
            entry = self.entry(kind, name)
            try:
                self._cache[key] = builder(name, entry)
            except InputError:
                raise
            except (ShapeError, KeyError, TypeError, ValueError, ZeroDivisionError, IndexError) as exc:
                raise InputError(str(exc), loc) from exc
        return self._cache[key]

    def digest(self, target: str) -> str:
        """sha256 of the target's entry together with every entry it references."""
        seen = {}

        def walk(kind, name):
            if (kind, name) in seen:
                return
            entry = self.entry(kind, name)
            seen[(kind, name)] = entry
            for ref_key, ref_kind in (("coalgebra_ref", "coalgebra"), ("comodule_ref", "comodule"),
                                      ("group_ref", "group"), ("global_from", "comodule"),
                                      ("induced_from", "cover")):
                if ref_key in entry:
                    walk(ref_kind, entry[ref_key])

        walk(*parse_target(target))
        blob = json.dumps({f"{k}:{n}": e for (k, n), e in sorted(seen.items())}, sort_keys=True)
        return hashlib.sha256(blob.encode()).hexdigest()

    def load_report(self) -> list[tuple[str, object]]:
        """Run the law check of every declared object."""
        from .gpc import check_gpc

        out = []
        for kind in KINDS:
            for name in self.names(kind):
                target = f"{kind}:{name}"
                try:
                    obj = self.get(target)
                except InputError as exc:
                    out.append((target, exc))
                    continue
                if kind == "coalgebra":
                    out.append((target, check_coalgebra(obj)))
                elif kind == "comodule":
                    out.append((target, check_comodule(obj)))
                elif kind == "gpc":
                    out.append((target, check_gpc(obj)))
                elif kind == "partial":
                    out.append((target, check_partial_action(obj)))
        return out

    # -- builders ----------------------------------------------------------
    def _build_coalgebra(self, name, e) -> Coalgebra:
        H = space_from_json(e["space"])
        HH = tensor_space(H, H)
        unit = VectorSpace(1, ("1",))
        return Coalgebra(H, map_from_json(H, HH, e["delta"]), map_from_json(H, unit, e["eps"]), name)

    def _build_comodule(self, name, e) -> Comodule:
        H = self.get(f"coalgebra:{e['coalgebra_ref']}")
        X = space_from_json(e["space"])
        return Comodule(X, H, map_from_json(X, tensor_space(X, H.space), e["coaction"]), name)

    def _build_gpc(self, name, e):
        if "global_from" in e:
            return global_gpc(self.get(f"comodule:{e['global_from']}")).datum
        if "induced_from" in e:
            return induce(self.get(f"cover:{e['induced_from']}"))[0].datum
        H = self.get(f"coalgebra:{e['coalgebra_ref']}")
        if "trivial_on" in e:
            return trivial_datum(space_from_json(e["trivial_on"]), H, name)
        X = space_from_json(e["X"])
        XbH = space_from_json(e["XbulletH"])
        pi = map_from_json(tensor_space(X, H.space), XbH, e["pi"])
        rho = map_from_json(X, XbH, e["rho"])
        return PartialComoduleDatum(X, H, XbH, pi, rho, name)

    def _build_cover(self, name, e) -> Cover:
        Y = self.get(f"comodule:{e['comodule_ref']}")
        X = space_from_json(e["X"])
        return Cover(Y, X, map_from_json(Y.space, X, e["p"]), name)

    def _build_group(self, name, e) -> FiniteMonoid:
        return FiniteMonoid.from_table(e["elements"], e["table"], e["unit"], name)

    def _build_action(self, name, e) -> GlobalGSet:
        G = self.get(f"group:{e['group_ref']}")
        carrier = tuple(e["carrier"])
        table = e["table"]
        action = {(g, y): table[i][j] for i, g in enumerate(G.elements) for j, y in enumerate(carrier)}
        return GlobalGSet(G, carrier, action, name)

    def _build_partial(self, name, e) -> PartialGSet:
        G = self.get(f"group:{e['group_ref']}")
        domain = {tuple(p) for p in e["domain_pairs"]}
        alpha = {tuple(gx): y for gx, y in e["alpha_pairs"]}
        if set(alpha) != domain:
            raise InputError("alpha_pairs do not cover exactly domain_pairs", f"partial:{name}")
        return PartialGSet(G, tuple(e["carrier"]), alpha, name)


# ---------------------------------------------------------------------------
# dumping

def coalgebra_to_json(H: Coalgebra) -> dict:
    return {"space": space_to_json(H.space), "delta": matrix_to_json(H.delta), "eps": matrix_to_json(H.eps)}


def comodule_to_json(Y: Comodule, coalgebra_ref: str) -> dict:
    return {"space": space_to_json(Y.space), "coalgebra_ref": coalgebra_ref, "coaction": matrix_to_json(Y.coaction)}


def datum_to_json(d, coalgebra_ref: str) -> dict:
    return {
        "X": space_to_json(d.X),
        "XbulletH": space_to_json(d.XbulletH),
        "pi": matrix_to_json(d.pi),
        "rho": matrix_to_json(d.rho),
        "coalgebra_ref": coalgebra_ref,
    }


def cover_to_json(c: Cover, comodule_ref: str) -> dict:
    return {"comodule_ref": comodule_ref, "X": space_to_json(c.X), "p": matrix_to_json(c.p)}


def group_to_json(G: FiniteMonoid) -> dict:
    E = G.elements
    return {"elements": list(E), "table": [[G.mul(g, h) for h in E] for g in E], "unit": G.unit}


def action_to_json(Y: GlobalGSet, group_ref: str) -> dict:
    return {
        "group_ref": group_ref,
        "carrier": list(Y.carrier),
        "table": [[Y.act(g, y) for y in Y.carrier] for g in Y.monoid.elements],
    }


def partial_to_json(P: PartialGSet, group_ref: str) -> dict:
    pairs = sorted(P.alpha, key=lambda gx: (P.monoid.index(gx[0]), P.carrier.index(gx[1])))
    return {
        "group_ref": group_ref,
        "carrier": list(P.carrier),
        "domain_pairs": [list(p) for p in pairs],
        "alpha_pairs": [[list(p), P.alpha[p]] for p in pairs],
    }


def map_to_report(f: LinearMap) -> dict:
    return {"dom": f.dom.dim, "cod": f.cod.dim, "matrix": matrix_to_json(f)}
