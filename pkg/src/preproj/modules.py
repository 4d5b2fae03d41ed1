"""Modules over the bound double-quiver algebra: Hom spaces, decomposition,
radicals, projective covers, syzygies.

A representation assigns a space k^d_i to each vertex and a matrix to each
double-quiver arrow, subject to the vertex-wise defining relation.  Maps
between representations are tuples of vertex matrices commuting with every
arrow action.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InputError, NonSplitResidueError, StructureError
from .linalg import PrimeField
from .quivers import DoubleQuiver, PreprojectiveBasis


class Representation:
    """Immutable representation of the bound algebra on a double quiver."""

    def __init__(self, dq: DoubleQuiver, field: PrimeField, dims, mats, validate=True):
        self.dq = dq
        self.field = field
        self.dims = tuple(int(d) for d in dims)
        if len(self.dims) != dq.nv:
            raise InputError("dimension vector length mismatch")
        if any(d < 0 for d in self.dims):
            raise InputError("negative dimension")
        if len(mats) != len(dq.arrows):
            raise InputError("one matrix per double-quiver arrow required")
        fixed = []
        for k, a in enumerate(dq.arrows):
            m = np.asarray(mats[k], dtype=np.int64) % field.p
            want = (self.dims[a.target - 1], self.dims[a.source - 1])
            if m.shape != want:
                raise InputError(f"matrix for {a.name} has shape {m.shape}, want {want}")
            m.flags.writeable = False
            fixed.append(m)
        self.mats = tuple(fixed)
        if validate and not check_relations(self):
            raise InputError("matrices violate the defining relation")

    @property
    def total_dim(self) -> int:
        return sum(self.dims)

    def mat(self, k: int) -> np.ndarray:
        return self.mats[k]

    def __repr__(self):
        return f"Representation(dims={self.dims})"


def relation_defect(rep: Representation, v: int) -> np.ndarray:
    """Value of the defining relation at vertex v (a d_v x d_v matrix)."""
    dq, fld = rep.dq, rep.field
    d = rep.dims[v - 1]
    out = fld.zeros(d, d)
    for k in range(dq.n_base):
        a = dq.arrows[k]
        ks = dq.partner[k]
        if a.source == v:
            out = (out + fld.mul(rep.mats[ks], rep.mats[k])) % fld.p
        if a.target == v:
            out = (out - fld.mul(rep.mats[k], rep.mats[ks])) % fld.p
    return out


def check_relations(rep: Representation) -> bool:
    return all(not np.any(relation_defect(rep, v)) for v in rep.dq.vertices)


def zero_rep(dq: DoubleQuiver, field: PrimeField) -> Representation:
    dims = (0,) * dq.nv
    mats = [field.zeros(0, 0) for _ in dq.arrows]
    return Representation(dq, field, dims, mats, validate=False)


def simple(dq: DoubleQuiver, field: PrimeField, i: int) -> Representation:
    dims = tuple(1 if v == i else 0 for v in dq.vertices)
    mats = [
        field.zeros(dims[a.target - 1], dims[a.source - 1]) for a in dq.arrows
    ]
    return Representation(dq, field, dims, mats, validate=False)


def direct_sum(dq: DoubleQuiver, field: PrimeField, reps) -> Representation:
    reps = list(reps)
    if not reps:
        return zero_rep(dq, field)
    dims = tuple(sum(r.dims[i] for r in reps) for i in range(dq.nv))
    mats = []
    for k, a in enumerate(dq.arrows):
        rows, cols = dims[a.target - 1], dims[a.source - 1]
        m = field.zeros(rows, cols)
        ro = co = 0
        for r in reps:
            rr, cc = r.dims[a.target - 1], r.dims[a.source - 1]
            m[ro : ro + rr, co : co + cc] = r.mats[k]
            ro += rr
            co += cc
        mats.append(m)
    return Representation(dq, field, dims, mats, validate=False)


# -- maps between representations --------------------------------------


@dataclass(frozen=True)
class ModuleMap:
    source: Representation
    target: Representation
    mats: tuple

    def __post_init__(self):
        for i in range(self.source.dq.nv):
            want = (self.target.dims[i], self.source.dims[i])
            if self.mats[i].shape != want:
                raise InputError(f"map component {i} has shape {self.mats[i].shape}, want {want}")

    def is_intertwiner(self) -> bool:
        fld = self.source.field
        for k, a in enumerate(self.source.dq.arrows):
            s, t = a.source - 1, a.target - 1
            lhs = fld.mul(self.mats[t], self.source.mats[k])
            rhs = fld.mul(self.target.mats[k], self.mats[s])
            if np.any((lhs - rhs) % fld.p):
                return False
        return True

    def is_injective(self) -> bool:
        fld = self.source.field
        return all(
            fld.rank(self.mats[i]) == self.source.dims[i]
            for i in range(self.source.dq.nv)
        )

    def is_surjective(self) -> bool:
        fld = self.source.field
        return all(
            fld.rank(self.mats[i]) == self.target.dims[i]
            for i in range(self.source.dq.nv)
        )


def identity_map(rep: Representation) -> ModuleMap:
    return ModuleMap(rep, rep, tuple(rep.field.eye(d) for d in rep.dims))


def compose_maps(g: ModuleMap, f: ModuleMap) -> ModuleMap:
    """g after f."""
    fld = f.source.field
    return ModuleMap(
        f.source, g.target, tuple(fld.mul(g.mats[i], f.mats[i]) for i in range(f.source.dq.nv))
    )


# -- Hom spaces ---------------------------------------------------------


@dataclass
class HomSpace:
    source: Representation
    target: Representation
    basis: list  # list of tuples of vertex matrices

    @property
    def dim(self) -> int:
        return len(self.basis)

    def element(self, coeffs) -> ModuleMap:
        fld = self.source.field
        nv = self.source.dq.nv
        mats = [fld.zeros(self.target.dims[i], self.source.dims[i]) for i in range(nv)]
        for c, b in zip(coeffs, self.basis):
            if int(c) % fld.p == 0:
                continue
            for i in range(nv):
                mats[i] = (mats[i] + int(c) * b[i]) % fld.p
        return ModuleMap(self.source, self.target, tuple(mats))


def hom_basis(x: Representation, y: Representation) -> HomSpace:
    """Solve all intertwining conditions as one stacked kernel computation."""
    if x.dq is not y.dq and x.dq != y.dq:
        raise InputError("representations live on different double quivers")
    fld = x.field
    dq = x.dq
    nv = dq.nv
    sizes = [y.dims[i] * x.dims[i] for i in range(nv)]
    offs = np.concatenate([[0], np.cumsum(sizes)])
    ncols = int(offs[-1])
    rows = []
    for k, a in enumerate(dq.arrows):
        s, t = a.source - 1, a.target - 1
        nr = y.dims[t] * x.dims[s]
        if nr == 0:
            continue
        block = fld.zeros(nr, ncols)
        # f_t X_a part: vec_r(f_t X_a) = kron(I, X_a^T) vec_r(f_t)
        if sizes[t]:
            block[:, offs[t] : offs[t + 1]] = np.kron(fld.eye(y.dims[t]), x.mats[k].T)
        # -Y_a f_s part: vec_r(Y_a f_s) = kron(Y_a, I) vec_r(f_s)
        if sizes[s]:
            block[:, offs[s] : offs[s + 1]] = (
                block[:, offs[s] : offs[s + 1]] - np.kron(y.mats[k], fld.eye(x.dims[s]))
            ) % fld.p
        rows.append(block)
    if rows:
        a_mat = np.concatenate(rows, axis=0) % fld.p
    else:
        a_mat = fld.zeros(0, ncols)
    ker = fld.kernel_basis(a_mat)
    basis = []
    for c in range(ker.shape[1]):
        mats = tuple(
            ker[offs[i] : offs[i + 1], c].reshape(y.dims[i], x.dims[i])
            for i in range(nv)
        )
        basis.append(mats)
    return HomSpace(x, y, basis)


def hom_dim(x: Representation, y: Representation) -> int:
    return hom_basis(x, y).dim


# -- subquotients -------------------------------------------------------


def sub_representation(rep: Representation, vertex_bases) -> tuple[Representation, ModuleMap]:
    """Restrict to the invariant subspace spanned by the given vertex bases."""
    fld = rep.field
    dq = rep.dq
    dims = tuple(b.shape[1] for b in vertex_bases)
    mats = []
    for k, a in enumerate(dq.arrows):
        s, t = a.source - 1, a.target - 1
        img = fld.mul(rep.mats[k], vertex_bases[s])
        coords = fld.solve(vertex_bases[t], img)
        if coords is None:
            raise InputError("subspaces are not invariant under the arrow action")
        mats.append(coords)
    sub = Representation(dq, fld, dims, mats, validate=False)
    incl = ModuleMap(sub, rep, tuple(vertex_bases))
    return sub, incl


def quotient_representation(rep: Representation, vertex_subs) -> tuple[Representation, ModuleMap]:
    """Quotient by the subrepresentation spanned by the given vertex bases."""
    fld = rep.field
    dq = rep.dq
    qs = [fld.quotient_map(w, rep.dims[i]) for i, w in enumerate(vertex_subs)]
    sections = []
    for i, q in enumerate(qs):
        sec = fld.solve(q, fld.eye(q.shape[0]))
        if sec is None:
            raise InputError("quotient map has no section")
        sections.append(sec)
    dims = tuple(q.shape[0] for q in qs)
    mats = []
    for k, a in enumerate(dq.arrows):
        s, t = a.source - 1, a.target - 1
        mats.append(fld.mulchain(qs[t], rep.mats[k], sections[s]))
    quot = Representation(dq, fld, dims, mats, validate=False)
    proj = ModuleMap(rep, quot, tuple(qs))
    if not proj.is_intertwiner():
        raise InputError("quotient by a non-invariant subspace")
    return quot, proj


def radical(rep: Representation) -> tuple[Representation, ModuleMap]:
    """Sum of the images of all arrow actions, as a subrepresentation."""
    fld = rep.field
    dq = rep.dq
    bases = []
    for i, v in enumerate(dq.vertices):
        incoming = [rep.mats[k] for k in dq.arrows_in(v)]
        if incoming:
            h = np.concatenate(incoming, axis=1)
            r, pivots = fld.rref(h.T)
            basis = r[: len(pivots)].T.copy()
        else:
            basis = fld.zeros(rep.dims[i], 0)
        bases.append(basis)
    return sub_representation(rep, bases)


def top(rep: Representation) -> tuple[Representation, ModuleMap]:
    fld = rep.field
    dq = rep.dq
    subs = []
    for i, v in enumerate(dq.vertices):
        incoming = [rep.mats[k] for k in dq.arrows_in(v)]
        if incoming:
            subs.append(np.concatenate(incoming, axis=1))
        else:
            subs.append(fld.zeros(rep.dims[i], 0))
    return quotient_representation(rep, subs)


def socle_dims(rep: Representation) -> tuple[int, ...]:
    """Dimension vector of the joint kernel of all outgoing arrow actions."""
    fld = rep.field
    dq = rep.dq
    out = []
    for i, v in enumerate(dq.vertices):
        outgoing = [rep.mats[k] for k in dq.arrows_out(v)]
        if outgoing:
            stacked = np.concatenate(outgoing, axis=0)
            out.append(rep.dims[i] - fld.rank(stacked))
        else:
            out.append(rep.dims[i])
    return tuple(out)


# -- projectives, covers, syzygies --------------------------------------


def projective_module(basis: PreprojectiveBasis, i: int) -> Representation:
    """Left module on the path classes starting at vertex i.

    The component at vertex j is spanned by the basis classes i -> j,
    ordered by (degree, path); the class of the empty path is position 0
    of the vertex-i component, and generates.
    """
    dq, fld = basis.dq, basis.field
    if i not in dq.vertices:
        raise InputError(f"no vertex {i}")
    comps = basis.classes_from(i)
    order = {
        j: {dp: idx for idx, dp in enumerate(comps[j])} for j in dq.vertices
    }
    dims = tuple(len(comps[j]) for j in dq.vertices)
    mats = []
    for k, a in enumerate(dq.arrows):
        m = fld.zeros(dims[a.target - 1], dims[a.source - 1])
        for col, (deg, pos) in enumerate(comps[a.source]):
            w = basis.basis_paths[deg][(i, a.source)][pos]
            coords = basis.reduce_path(w + (k,), i, a.target)
            for tpos in range(coords.shape[0]):
                if coords[tpos, 0]:
                    row = order[a.target][(deg + 1, tpos)]
                    m[row, col] = coords[tpos, 0]
        mats.append(m)
    rep = Representation(dq, fld, dims, mats)
    return rep


def path_action(rep: Representation, path: tuple[int, ...], v_start: int) -> np.ndarray:
    """Matrix of a path acting on rep, from the component of its source vertex."""
    fld = rep.field
    dq = rep.dq
    out = fld.eye(rep.dims[v_start - 1])
    v = v_start
    for k in path:
        out = fld.mul(rep.mats[k], out)
        v = dq.arrows[k].target
    return out


def projective_cover(rep: Representation, basis: PreprojectiveBasis) -> tuple[Representation, ModuleMap]:
    """Minimal projective cover P -> rep via lifts of a basis of the top."""
    fld = rep.field
    dq = rep.dq
    # radical bases per vertex, then standard-coordinate lifts of the top
    lifts = []  # (vertex id, column vector in rep at that vertex)
    for i, v in enumerate(dq.vertices):
        incoming = [rep.mats[k] for k in dq.arrows_in(v)]
        h = (
            np.concatenate(incoming, axis=1)
            if incoming
            else fld.zeros(rep.dims[i], 0)
        )
        _, pivots = fld.rref(h.T)
        free = [c for c in range(rep.dims[i]) if c not in set(pivots)]
        for c in free:
            vec = fld.zeros(rep.dims[i], 1)
            vec[c, 0] = 1
            lifts.append((v, vec))
    summands = [projective_module(basis, v) for v, _ in lifts]
    cover_rep = direct_sum(dq, fld, summands)
    cols = {j: [] for j in dq.vertices}
    for (v, vec), proj in zip(lifts, summands):
        comps = basis.classes_from(v)
        for j in dq.vertices:
            block = fld.zeros(rep.dims[j - 1], len(comps[j]))
            for col, (deg, pos) in enumerate(comps[j]):
                w = basis.basis_paths[deg][(v, j)][pos]
                block[:, col : col + 1] = fld.mul(path_action(rep, w, v), vec)
            cols[j].append(block)
    mats = tuple(
        np.concatenate(cols[j], axis=1) if cols[j] else fld.zeros(rep.dims[j - 1], 0)
        for j in dq.vertices
    )
    cover = ModuleMap(cover_rep, rep, mats)
    if not cover.is_intertwiner() or not cover.is_surjective():
        raise StructureError("projective cover construction failed")
    return cover_rep, cover


def syzygy(rep: Representation, basis: PreprojectiveBasis) -> Representation:
    """Kernel of the projective cover; zero for projectives."""
    fld = rep.field
    cover_rep, cover = projective_cover(rep, basis)
    kers = [fld.kernel_basis(cover.mats[i]) for i in range(rep.dq.nv)]
    syz, _ = sub_representation(cover_rep, kers)
    return syz


def dual_twist(rep: Representation) -> Representation:
    """Transpose duality composed with the star involution; an exact
    contravariant self-equivalence exchanging projectives and injectives."""
    dq = rep.dq
    mats = [rep.mats[dq.partner[k]].T for k in range(len(dq.arrows))]
    return Representation(dq, rep.field, rep.dims, mats, validate=False)


def cosyzygy(rep: Representation, basis: PreprojectiveBasis) -> Representation:
    return dual_twist(syzygy(dual_twist(rep), basis))


# -- isomorphism and decomposition ---------------------------------------


def _invertible_in_hom(hs: HomSpace, seed: int, tries: int) -> ModuleMap | None:
    fld = hs.source.field
    if hs.source.dims != hs.target.dims:
        return None
    for b in hs.basis:
        mp = ModuleMap(hs.source, hs.target, b)
        if all(fld.is_invertible(m) for m in b):
            return mp
    if hs.dim >= 2 and tries > 0:
        rng = np.random.default_rng([seed, 0x1503])
        for _ in range(tries):
            coeffs = rng.integers(0, fld.p, size=hs.dim)
            mp = hs.element(coeffs)
            if all(fld.is_invertible(m) for m in mp.mats):
                return mp
    return None


def is_isomorphic(x: Representation, y: Representation, seed: int = 0, tries: int = 24) -> bool:
    """Isomorphism test: dimension fast paths, then invertible-intertwiner search.

    For indecomposables the basis scan alone is conclusive: the
    non-invertible maps form a proper subspace, which cannot contain a
    whole basis of Hom(x, y).
    """
    if x is y:
        return True
    if x.dims != y.dims:
        return False
    if x.total_dim == 0:
        return True
    hxy = hom_basis(x, y)
    if hxy.dim == 0:
        return False
    if hom_dim(x, x) != hom_dim(y, y) or hxy.dim != hom_dim(x, x):
        return False
    return _invertible_in_hom(hxy, seed, tries) is not None


def _split_spaces(rep: Representation, end_mats) -> list[list[np.ndarray]]:
    """Vertex-wise generalized eigenspace bases of an endomorphism, one
    entry per coprime factor of its minimal polynomial (only factors with
    nonzero total dimension are returned)."""
    fld = rep.field
    nv = rep.dq.nv
    nonzero = [i for i in range(nv) if rep.dims[i] > 0]
    if not nonzero:
        return []
    big = fld.zeros(rep.total_dim, rep.total_dim)
    off = np.concatenate([[0], np.cumsum(rep.dims)])
    for i in nonzero:
        big[off[i] : off[i + 1], off[i] : off[i + 1]] = end_mats[i]
    mu = fld.minimal_polynomial(big)
    sf = fld.squarefree_part(mu)
    factors = []
    for d, part in fld.distinct_degree_split(sf):
        if d == 1:
            for lam in fld.roots_of_split_poly(part):
                factors.append(np.array([(-lam) % fld.p, 1], dtype=np.int64))
        else:
            factors.append(part)
    if len(factors) <= 1:
        return []
    out = []
    for f in factors:
        bases = []
        total = 0
        for i in range(nv):
            m = fld.poly_eval_matrix(f, end_mats[i]) if rep.dims[i] else fld.zeros(0, 0)
            power = m
            ker = fld.kernel_basis(power)
            while rep.dims[i]:
                power = fld.mul(power, m)
                nxt = fld.kernel_basis(power)
                if nxt.shape[1] == ker.shape[1]:
                    break
                ker = nxt
            bases.append(ker)
            total += ker.shape[1]
        if total:
            out.append(bases)
    if sum(b[i].shape[1] for b in out for i in range(nv)) != rep.total_dim:
        raise StructureError("eigenspace split does not fill the representation")
    return out


def decompose(rep: Representation, seed: int = 0, tries: int = 64):
    """Krull-Schmidt decomposition into (indecomposable, multiplicity) pairs.

    Splitting elements of End(rep) are searched among the Hom basis and
    then seeded random combinations; a factor is certified indecomposable
    by End/rad being 1-dimensional (trace-form radical).
    """
    if rep.total_dim == 0:
        return []
    pieces = _decompose_rec(rep, seed, tries)
    out: list[tuple[Representation, int]] = []
    for piece in pieces:
        for idx, (known, mult) in enumerate(out):
            if is_isomorphic(known, piece, seed=seed):
                out[idx] = (known, mult + 1)
                break
        else:
            out.append((piece, 1))
    return out


def _decompose_rec(rep: Representation, seed: int, tries: int) -> list[Representation]:
    ends = hom_basis(rep, rep)
    if ends.dim == 1:
        return [rep]

    def split_by(mats):
        spaces = _split_spaces(rep, mats)
        if len(spaces) < 2:
            return None
        found = []
        for bases in spaces:
            sub, _ = sub_representation(rep, bases)
            found.extend(_decompose_rec(sub, seed, tries))
        return found

    for b in ends.basis:
        got = split_by(b)
        if got is not None:
            return got
    # no basis element split; certify or keep searching with random combos
    nonzero = [i for i in range(rep.dq.nv) if rep.dims[i] > 0]
    big_basis = []
    off = np.concatenate([[0], np.cumsum(rep.dims)])
    fld = rep.field
    for b in ends.basis:
        big = fld.zeros(rep.total_dim, rep.total_dim)
        for i in nonzero:
            big[off[i] : off[i + 1], off[i] : off[i + 1]] = b[i]
        big_basis.append(big)
    rad_coords = fld.trace_form_radical(big_basis)
    if ends.dim - rad_coords.shape[1] == 1:
        return [rep]
    rng = np.random.default_rng([seed, 0x0D3C])
    for _ in range(tries):
        coeffs = rng.integers(0, fld.p, size=ends.dim)
        got = split_by(ends.element(coeffs).mats)
        if got is not None:
            return got
    raise NonSplitResidueError(
        f"factor with End/rad dimension {ends.dim - rad_coords.shape[1]} did not split"
    )
