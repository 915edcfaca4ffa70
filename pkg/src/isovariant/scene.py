"""JSON scene files: a group, named spaces, maps, squares and cubes.

Spaces are expression trees.  A string refers to another named space; a
single-key object applies a constructor::

    {"rep_sphere": ["trivial", "sign"]}       {"rep_disk": [["rotation", 1, 1]]}
    {"rep_compactification": ["sign"]}        {"linking_simplex": "e<C2"}
    {"boundary_linking_simplex": "e<C2"}      {"orbit": "C2"}
    {"point": true}                           {"cone": <expr>}
    {"suspension": <expr>}                    {"join": [<expr>, ...]}
    {"combine": {"kind": "join", "args": [<expr>, ...]}}
    {"subdivide": <expr>}
    {"facets": [[0, 1], ...], "action": [[perm per element], ...]}
    {"facets": [[0, 1], ...], "generators": {"1": [1, 0]}}

Maps are ``{"source": A, "target": B, "vertices": [...]}``,
``{"inclusion": [A, B]}`` (identity on A's vertex ids, with optional
``"override": {"v": w}``), ``{"identity": A}`` or ``{"compose": [g, f]}``
(g after f).  A map may carry ``"isovariant": false`` to skip the isovariance
check; by default every map is required to be isovariant.

Squares are ``{"u": Z->X, "v": Z->Y, "i": X->W, "j": Y->W}``; cubes are
``{"edges": [map, ...]}`` listing the maps out of the initial vertex.  Both may
carry ``"expected"`` tables of reference values.

If any explicit complex is not rigid, every space and map in the scene is
replaced by its barycentric subdivision so that vertex ids stay consistent.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Any

from .complexes import (GSimplicialComplex, GSimplicialMap, SimplicialComplex, _generate_action,
                        barycentric_subdivision, boundary_linking_simplex, check_rigid, combine,
                        is_isovariant, linking_simplex, orbit_complex, point, rep_compactification,
                        rep_disk, rep_sphere)
from .errors import IsovariantError, ParseError, ValidationError
from .groups import FiniteGroup, make_group

BUNDLED = "scenes"


@dataclass
class Scene:
    group: FiniteGroup
    spaces: dict[str, GSimplicialComplex]
    maps: dict[str, GSimplicialMap]
    squares: dict[str, dict[str, Any]] = field(default_factory=dict)
    cubes: dict[str, dict[str, Any]] = field(default_factory=dict)
    source: str = ""
    subdivided: bool = False

    def space(self, name: str) -> GSimplicialComplex:
        if name not in self.spaces:
            raise ValidationError(f"unknown space {name!r}", entity=name)
        return self.spaces[name]

    def map(self, name: str) -> GSimplicialMap:
        if name not in self.maps:
            raise ValidationError(f"unknown map {name!r}", entity=name)
        return self.maps[name]

    def square(self, name: str) -> dict[str, Any]:
        if name not in self.squares:
            raise ValidationError(f"unknown square {name!r}", entity=name)
        return self.squares[name]

    def cube(self, name: str) -> dict[str, Any]:
        if name not in self.cubes:
            raise ValidationError(f"unknown cube {name!r}", entity=name)
        return self.cubes[name]


def bundled_scenes() -> list[str]:
    root = resources.files("isovariant").joinpath(BUNDLED)
    return sorted(p.name[:-5] for p in root.iterdir() if p.name.endswith(".json"))


def _resolve_path(path: str | Path) -> tuple[str, str]:
    p = Path(path)
    if p.exists():
        return str(p), p.read_text()
    name = str(path)
    res = resources.files("isovariant").joinpath(BUNDLED, name + ".json")
    if res.is_file():
        return f"<bundled:{name}>", res.read_text()
    raise ParseError(f"scene file {path!s} not found", location=str(path))


def parse_scene(path: str | Path) -> Scene:
    """Load and fully validate a scene (a file path or a bundled scene name)."""
    where, text = _resolve_path(path)
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}",
                         location=f"{where}:{exc.lineno}:{exc.colno}") from exc
    return scene_from_dict(doc, where)


def scene_from_dict(doc: Any, where: str = "<scene>") -> Scene:
    if not isinstance(doc, dict):
        raise ParseError("scene must be a JSON object", location=where)
    if "group" not in doc:
        raise ParseError("scene has no 'group'", location=f"{where}:group")
    try:
        G = make_group(doc["group"])
    except IsovariantError:
        raise
    except Exception as exc:
        raise ParseError(f"bad group specification: {exc}", location=f"{where}:group") from exc

    builder = _Builder(G, doc.get("spaces", {}) or {}, where)
    spaces = {name: builder.build(name) for name in builder.defs}

    maps = {}
    map_defs = doc.get("maps", {}) or {}
    resolving: set[str] = set()

    def build_map(name: str) -> GSimplicialMap:
        if name in maps:
            return maps[name]
        if name not in map_defs:
            raise ValidationError(f"reference to undefined map {name!r}", entity=name)
        if name in resolving:
            raise ValidationError(f"map {name!r} is defined in terms of itself", entity=name)
        resolving.add(name)
        maps[name] = _build_map(name, map_defs[name], spaces, build_map)
        resolving.discard(name)
        return maps[name]

    for name in map_defs:
        build_map(name)

    subdivided = not all(X.rigid or check_rigid(X) for X in spaces.values())
    if subdivided:
        new_spaces = {n: barycentric_subdivision(X) for n, X in spaces.items()}
        by_id = {id(X): new_spaces[n] for n, X in spaces.items()}
        new_maps = {}
        for n, f in maps.items():
            sd = f.subdivision()
            new_maps[n] = GSimplicialMap(by_id[id(f.source)], by_id[id(f.target)],
                                         tuple(sd[i] for i in range(len(sd))), name=n)
        spaces, maps = new_spaces, new_maps
    else:
        rigid = {n: X if X.rigid else GSimplicialComplex(G, X.complex, X.action, True, X.name)
                 for n, X in spaces.items()}
        by_id = {id(X): rigid[n] for n, X in spaces.items()}
        maps = {n: GSimplicialMap(by_id[id(f.source)], by_id[id(f.target)], f.vertex_map, name=n)
                for n, f in maps.items()}
        spaces = rigid

    for n, f in maps.items():
        if map_defs[n].get("isovariant", True) if isinstance(map_defs[n], dict) else True:
            ok, witness = is_isovariant(f)
            if not ok:
                raise ValidationError(f"map {n!r} is declared isovariant but changes isotropy "
                                      f"at simplex {witness}", entity=n, witness=witness)

    squares = {}
    for name, sq in (doc.get("squares", {}) or {}).items():
        squares[name] = _check_square(name, sq, maps)
    cubes = {}
    for name, cb in (doc.get("cubes", {}) or {}).items():
        cubes[name] = _check_cube(name, cb, maps)
    return Scene(G, spaces, maps, squares, cubes, where, subdivided)


class _Builder:
    def __init__(self, G: FiniteGroup, defs: dict, where: str):
        if not isinstance(defs, dict):
            raise ParseError("'spaces' must be an object", location=f"{where}:spaces")
        self.G, self.defs, self.where = G, defs, where
        self.done: dict[str, GSimplicialComplex] = {}
        self.active: set[str] = set()

    def build(self, name: str) -> GSimplicialComplex:
        if name in self.done:
            return self.done[name]
        if name not in self.defs:
            raise ValidationError(f"reference to undefined space {name!r}", entity=name)
        if name in self.active:
            raise ValidationError(f"space {name!r} is defined in terms of itself", entity=name)
        self.active.add(name)
        try:
            X = self.expr(self.defs[name], name)
        except ValidationError as exc:
            if exc.entity is None:
                raise ValidationError(str(exc), entity=name, witness=exc.witness) from exc
            raise
        except (KeyError, TypeError, ValueError, IndexError) as exc:
            raise ValidationError(f"cannot build space {name!r}: {exc}", entity=name) from exc
        self.active.discard(name)
        self.done[name] = X.with_name(name)
        return self.done[name]

    def expr(self, e: Any, owner: str) -> GSimplicialComplex:
        G = self.G
        if isinstance(e, str):
            if e == "point":
                return point(G)
            return self.build(e)
        if not isinstance(e, dict):
            raise ValidationError(f"malformed space expression {e!r}", entity=owner)
        if "facets" in e:
            return _explicit(G, e, owner)
        if len(e) != 1:
            raise ValidationError(f"constructor object must have exactly one key: {sorted(e)}",
                                  entity=owner)
        (op, arg), = e.items()
        if op == "rep_sphere":
            return rep_sphere(G, arg)
        if op == "rep_disk":
            return rep_disk(G, arg)
        if op == "rep_compactification":
            return rep_compactification(G, arg)
        if op == "linking_simplex":
            return linking_simplex(G, G.parse_chain(arg))
        if op == "boundary_linking_simplex":
            return boundary_linking_simplex(G, G.parse_chain(arg))
        if op == "orbit":
            return orbit_complex(G, G.parse_subgroup(arg))
        if op == "point":
            return point(G)
        if op in ("cone", "suspension"):
            return combine(op, self.expr(arg, owner))
        if op == "join":
            return combine("join", *(self.expr(a, owner) for a in arg))
        if op == "combine":
            return combine(arg["kind"], *(self.expr(a, owner) for a in arg["args"]))
        if op == "subdivide":
            return barycentric_subdivision(self.expr(arg, owner))
        raise ValidationError(f"unknown constructor {op!r}", entity=owner)


def _explicit(G: FiniteGroup, e: dict, owner: str) -> GSimplicialComplex:
    facets = [tuple(int(v) for v in f) for f in e["facets"]]
    n = e.get("n_vertices")
    K = SimplicialComplex.from_facets(facets, n)
    nv = K.n_vertices
    if "action" in e:
        action = tuple(tuple(int(v) for v in p) for p in e["action"])
    elif "generators" in e:
        action = tuple(_generate_action(G, nv, {int(g): p for g, p in e["generators"].items()},
                                        owner))
    else:
        action = tuple(tuple(range(nv)) for _ in G.elements)
    return GSimplicialComplex(G, K, action, False, owner)


def _build_map(name: str, d: Any, spaces: dict, build_map) -> GSimplicialMap:
    if not isinstance(d, dict):
        raise ValidationError(f"malformed map definition {d!r}", entity=name)

    def space(ref):
        if ref not in spaces:
            raise ValidationError(f"map {name!r} references undefined space {ref!r}", entity=ref)
        return spaces[ref]

    try:
        if "inclusion" in d:
            src, tgt = (space(r) for r in d["inclusion"])
            vm = list(d.get("vertices") or range(src.n_vertices))
            for k, v in (d.get("override") or {}).items():
                vm[int(k)] = int(v)
        elif "identity" in d:
            src = tgt = space(d["identity"])
            vm = list(range(src.n_vertices))
        elif "compose" in d:
            g, f = (build_map(r) for r in d["compose"])
            if f.target is not g.source:
                raise ValidationError(f"cannot compose: target of {d['compose'][1]!r} is not the "
                                      f"source of {d['compose'][0]!r}", entity=name)
            src, tgt = f.source, g.target
            vm = [g.vertex_map[v] for v in f.vertex_map]
        else:
            src, tgt = space(d["source"]), space(d["target"])
            vm = list(d["vertices"])
        return GSimplicialMap(src, tgt, tuple(int(v) for v in vm), name=name)
    except ValidationError as exc:
        if exc.entity is None:
            raise ValidationError(str(exc), entity=name, witness=exc.witness) from exc
        raise
    except IsovariantError as exc:  # NotSimplicial / NotEquivariant carry witnesses
        raise ValidationError(f"map {name!r}: {exc}", entity=name,
                              witness=getattr(exc, "witness", None)) from exc
    except (KeyError, TypeError, ValueError, IndexError) as exc:
        raise ValidationError(f"cannot build map {name!r}: {exc}", entity=name) from exc


def _check_square(name: str, sq: dict, maps: dict) -> dict:
    try:
        u, v, i, j = (maps[sq[k]] for k in ("u", "v", "i", "j"))
    except KeyError as exc:
        raise ValidationError(f"square {name!r} references undefined map or slot {exc}",
                              entity=name) from exc
    if u.source is not v.source or u.target is not i.source or v.target is not j.source \
            or i.target is not j.target:
        raise ValidationError(f"square {name!r} does not have the shape Z->X, Z->Y, X->W, Y->W",
                              entity=name)
    return dict(sq)


def _check_cube(name: str, cb: dict, maps: dict) -> dict:
    edges = cb.get("edges")
    if not isinstance(edges, list) or len(edges) < 2:
        raise ValidationError(f"cube {name!r} needs a list of at least two edge maps", entity=name)
    for e in edges:
        if e not in maps:
            raise ValidationError(f"cube {name!r} references undefined map {e!r}", entity=e)
    if len({id(maps[e].source) for e in edges}) != 1:
        raise ValidationError(f"cube {name!r}: edges must share the initial vertex", entity=name)
    return dict(cb)
