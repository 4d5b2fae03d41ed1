"""Complete lists of indecomposable modules with Hom/Ext tables.

Enumeration runs a closure from simples and projectives: build extensions
between known modules, decompose the middles, and also add summands of
radicals, tops, syzygies and cosyzygies, until a full pass adds nothing.
Expected counts are asserted by callers, not used for termination.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field

import numpy as np

from .errors import EnumerationError, FormatError, IntegrityError, InputError
from .linalg import PrimeField
from .extensions import _scalar_classes, build_extension, ext1_cocycle
from .modules import (
    Representation,
    cosyzygy,
    decompose,
    hom_dim,
    is_isomorphic,
    projective_module,
    radical,
    simple,
    socle_dims,
    syzygy,
    top,
)
from .quivers import (
    RELATION_CONVENTION,
    DoubleQuiver,
    PreprojectiveBasis,
    double,
    preset_quiver,
)

ATLAS_FORMAT_VERSION = 1

EXPECTED_COUNTS = {"A2": 4, "A3": 12, "A4": 40}


@dataclass
class Fingerprint:
    dims: tuple
    hom_row: tuple

    def key(self):
        return (self.dims, self.hom_row)


@dataclass
class Atlas:
    qtype: str
    field: PrimeField
    dq: DoubleQuiver
    basis: PreprojectiveBasis
    modules: list
    hom_table: np.ndarray
    ext_table: np.ndarray
    aliases: dict = dc_field(default_factory=dict)  # id -> name

    @property
    def size(self) -> int:
        return len(self.modules)

    def alias_of(self, mid: int) -> str | None:
        return self.aliases.get(mid)

    def id_by_alias(self, name: str) -> int:
        for mid, alias in self.aliases.items():
            if alias == name:
                return mid
        raise InputError(f"no module with alias {name!r}")

    def module_by_alias(self, name: str) -> Representation:
        return self.modules[self.id_by_alias(name)]

    @property
    def projective_ids(self) -> tuple[int, ...]:
        return tuple(self.id_by_alias(f"P{v}") for v in self.dq.vertices)

    @property
    def simple_ids(self) -> tuple[int, ...]:
        return tuple(self.id_by_alias(f"S{v}") for v in self.dq.vertices)

    def fingerprint(self, m: Representation) -> Fingerprint:
        return Fingerprint(
            dims=m.dims,
            hom_row=tuple(hom_dim(m, x) for x in self.modules),
        )

    def summand_multiplicities(self, m: Representation) -> list | None:
        """Multiplicities of each atlas module in m, from Hom dimensions alone.

        The matrix of pairwise Hom dimensions is unimodular for these
        algebras, so the additivity system has a unique solution; it is
        solved in floating point and then verified exactly over the
        integers.  Returns [(id, multiplicity), ...] or None if the data
        is inconsistent (then the caller should fall back to decompose).
        """
        row = np.array([hom_dim(m, x) for x in self.modules], dtype=np.int64)
        h = self.hom_table
        try:
            v = np.linalg.solve(h.T.astype(np.float64), row.astype(np.float64))
        except np.linalg.LinAlgError:
            return None
        ints = np.rint(v).astype(np.int64)
        if np.any(ints < 0):
            return None
        if not np.array_equal(ints @ h, row):
            return None
        dims = np.zeros(self.dq.nv, dtype=np.int64)
        for i, c in enumerate(ints):
            if c:
                dims += c * np.array(self.modules[i].dims, dtype=np.int64)
        if tuple(int(d) for d in dims) != m.dims:
            return None
        return [(i, int(c)) for i, c in enumerate(ints) if c]

    def locate(self, m: Representation) -> int | None:
        fp = self.fingerprint(m).key()
        for mid, x in enumerate(self.modules):
            if self.fingerprint(x).key() == fp:
                if is_isomorphic(x, m):
                    return mid
                raise IntegrityError(
                    f"fingerprint of module {mid} matched but no isomorphism exists"
                )
        return None

    # -- persistence ----------------------------------------------------

    def to_payload(self) -> dict:
        mods = []
        for mid, m in enumerate(self.modules):
            entry = {
                "id": mid,
                "dim_vector": list(m.dims),
                "matrices": {
                    a.name: [int(v) for v in m.mats[k].reshape(-1)]
                    for k, a in enumerate(self.dq.arrows)
                },
            }
            if mid in self.aliases:
                entry["alias"] = self.aliases[mid]
            mods.append(entry)
        return {
            "format_version": ATLAS_FORMAT_VERSION,
            "quiver_type": self.qtype,
            "field_char": self.field.p,
            "relation_convention": RELATION_CONVENTION,
            "modules": mods,
            "hom_table": [[int(v) for v in row] for row in self.hom_table],
            "ext_table": [[int(v) for v in row] for row in self.ext_table],
        }

    def save(self, path):
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(self.to_payload(), fh, sort_keys=True, separators=(",", ":"))
            fh.write("\n")

    @classmethod
    def load(cls, path, field: PrimeField) -> "Atlas":
        try:
            with open(path, "r", encoding="utf-8") as fh:
                payload = json.load(fh)
        except (json.JSONDecodeError, UnicodeDecodeError) as exc:
            raise FormatError(f"not an atlas file: {exc}") from exc
        if not isinstance(payload, dict) or "format_version" not in payload:
            raise FormatError("missing format_version")
        if payload["format_version"] != ATLAS_FORMAT_VERSION:
            raise FormatError(f"unsupported format_version {payload['format_version']}")
        if payload.get("relation_convention") != RELATION_CONVENTION:
            raise FormatError("relation convention mismatch")
        if payload.get("field_char") != field.p:
            raise FormatError(
                f"atlas stored at p={payload.get('field_char')}, engine configured p={field.p}"
            )
        qtype = payload.get("quiver_type")
        dq = double(preset_quiver(qtype))
        basis = PreprojectiveBasis(dq, field)
        modules = []
        aliases = {}
        for entry in payload["modules"]:
            dims = tuple(entry["dim_vector"])
            mats = []
            for k, a in enumerate(dq.arrows):
                flat = entry["matrices"][a.name]
                rows, cols = dims[a.target - 1], dims[a.source - 1]
                mats.append(np.array(flat, dtype=np.int64).reshape(rows, cols))
            modules.append(Representation(dq, field, dims, mats))
            if "alias" in entry:
                aliases[entry["id"]] = entry["alias"]
        hom_table = np.array(payload["hom_table"], dtype=np.int64)
        ext_table = np.array(payload["ext_table"], dtype=np.int64)
        n = len(modules)
        if hom_table.shape != (n, n) or ext_table.shape != (n, n):
            raise FormatError("table shapes do not match module count")
        return cls(
            qtype=qtype,
            field=field,
            dq=dq,
            basis=basis,
            modules=modules,
            hom_table=hom_table,
            ext_table=ext_table,
            aliases=aliases,
        )


# -- enumeration ----------------------------------------------------------


def enumerate_indecomposables(
    qtype: str,
    field: PrimeField,
    seed: int = 0,
    max_passes: int = 64,
    ext_samples: int = 8,
) -> Atlas:
    dq = double(preset_quiver(qtype))
    basis = PreprojectiveBasis(dq, field)
    cap = 4 * dq.nv

    mods: list[Representation] = []
    quick: dict[tuple, list[int]] = {}

    def identify(c: Representation) -> int | None:
        key = (c.dims, hom_dim(c, c))
        for mid in quick.get(key, []):
            if is_isomorphic(mods[mid], c, seed=seed):
                return mid
        return None

    def add(c: Representation):
        key = (c.dims, hom_dim(c, c))
        quick.setdefault(key, []).append(len(mods))
        mods.append(c)

    def absorb(rep: Representation) -> bool:
        got_new = False
        for piece, _ in decompose(rep, seed=seed):
            if piece.total_dim == 0 or piece.total_dim > cap:
                continue
            if identify(piece) is None:
                add(piece)
                got_new = True
        return got_new

    for v in dq.vertices:
        add(simple(dq, field, v))
    for v in dq.vertices:
        p = projective_module(basis, v)
        if identify(p) is None:
            add(p)

    done_unary: set[int] = set()
    done_pairs: set[tuple[int, int]] = set()
    for _ in range(max_passes):
        changed = False
        n0 = len(mods)
        for idx in range(n0):
            if idx in done_unary:
                continue
            m = mods[idx]
            derived = [radical(m)[0], top(m)[0], syzygy(m, basis), cosyzygy(m, basis)]
            for rep in derived:
                if rep.total_dim and absorb(rep):
                    changed = True
            done_unary.add(idx)
        for i in range(n0):
            for j in range(n0):
                if (i, j) in done_pairs:
                    continue
                space = ext1_cocycle(mods[i], mods[j])
                if space.dim:
                    classes = _scalar_classes(field, space.dim, False, seed, ext_samples)
                    for coeffs in classes:
                        seq = build_extension(space, coeffs)
                        if absorb(seq.mid):
                            changed = True
                done_pairs.add((i, j))
        if not changed:
            break
    else:
        raise EnumerationError(f"closure did not stabilize within {max_passes} passes")

    # canonical order: (total dim, dim vector, hom fingerprint)
    n = len(mods)
    provisional = sorted(range(n), key=lambda i: (mods[i].total_dim, mods[i].dims, i))
    pmods = [mods[i] for i in provisional]
    hom1 = np.array(
        [[hom_dim(x, y) for y in pmods] for x in pmods], dtype=np.int64
    )
    final = sorted(
        range(n),
        key=lambda i: (pmods[i].total_dim, pmods[i].dims, tuple(hom1[i])),
    )
    modules = [pmods[i] for i in final]
    hom_table = hom1[np.ix_(final, final)]
    ext_table = np.array(
        [[ext1_cocycle(x, y).dim for y in modules] for x in modules], dtype=np.int64
    )
    atlas = Atlas(
        qtype=qtype,
        field=field,
        dq=dq,
        basis=basis,
        modules=modules,
        hom_table=hom_table,
        ext_table=ext_table,
    )
    atlas.aliases = assign_aliases(atlas)
    return atlas


# -- alias assignment ------------------------------------------------------


def _top_dims(m: Representation) -> tuple:
    return top(m)[0].dims


def assign_aliases(atlas: Atlas) -> dict[int, str]:
    """Structural names: simples, projectives, and the Loewy-layer names of
    the remaining A3 modules plus the four distinguished A4 modules."""
    dq = atlas.dq
    out: dict[int, str] = {}
    used: set[str] = set()

    def put(mid, name):
        if name in used:
            raise IntegrityError(f"alias {name} assigned twice")
        out[mid] = name
        used.add(name)

    projs = {
        v: projective_module(atlas.basis, v) for v in dq.vertices
    }
    for mid, m in enumerate(atlas.modules):
        simple_at = [v for v in dq.vertices if m.dims == tuple(int(w == v) for w in dq.vertices)]
        if simple_at:
            put(mid, f"S{simple_at[0]}")
            continue
        pv = [v for v in dq.vertices if m.dims == projs[v].dims and is_isomorphic(m, projs[v])]
        if pv:
            put(mid, f"P{pv[0]}")
            continue
    named = _LAYER_NAMES.get(atlas.qtype, {})
    for mid, m in enumerate(atlas.modules):
        if mid in out:
            continue
        sig = (m.dims, _top_dims(m), socle_dims(m))
        if sig in named:
            put(mid, named[sig])
    return out


# (dim vector, top dims, socle dims) -> Loewy-layer name
_LAYER_NAMES = {
    "A3": {
        ((1, 1, 0), (1, 0, 0), (0, 1, 0)): "1over2",
        ((1, 1, 0), (0, 1, 0), (1, 0, 0)): "2over1",
        ((0, 1, 1), (0, 1, 0), (0, 0, 1)): "2over3",
        ((0, 1, 1), (0, 0, 1), (0, 1, 0)): "3over2",
        ((1, 1, 1), (1, 0, 1), (0, 1, 0)): "13over2",
        ((1, 1, 1), (0, 1, 0), (1, 0, 1)): "2over13",
    },
    "A4": {
        ((0, 0, 1, 1), (0, 0, 0, 1), (0, 0, 1, 0)): "4over3",
        ((1, 2, 1, 0), (0, 1, 0, 0), (0, 1, 0, 0)): "2over13over2",
        ((0, 1, 1, 1), (0, 1, 0, 1), (0, 0, 1, 0)): "24over3",
    },
}


def compare_atlases(a: Atlas, b: Atlas) -> list[str]:
    """Field-independent data that must agree between two builds of the same
    type (used for the two-prime cross-check).  Returns mismatch messages."""
    issues = []
    if a.size != b.size:
        issues.append(f"module counts differ: {a.size} vs {b.size}")
        return issues
    for mid in range(a.size):
        if a.modules[mid].dims != b.modules[mid].dims:
            issues.append(f"dim vector of module {mid} differs")
    if not np.array_equal(a.hom_table, b.hom_table):
        issues.append("hom tables differ")
    if not np.array_equal(a.ext_table, b.ext_table):
        issues.append("ext tables differ")
    if a.aliases != b.aliases:
        issues.append("alias tables differ")
    return issues
