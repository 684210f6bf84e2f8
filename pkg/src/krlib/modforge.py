"""Exact matrix realization of the graded KR construction.

The route: build the defining representation with integer matrices, generate a
basis of g by iterated brackets of the Chevalley generators, realize V(mu) as
the cyclic span of a highest vector inside tensor products of wedge powers,
solve the intertwiner g (x) V_s -> V_{s+1} by exact elimination, and assemble
the graded module with x(x)t acting through the normalized intertwiners.
Everything is rational and deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations

from . import charlib, krset
from .errors import DimensionGuardError, ScopeError, TheoremCheckError
from .linalg import Echelon, SpMat, nullspace
from .rootsys import LieType, RootSystem, Weight, build


@dataclass(frozen=True)
class MatrixRep:
    """A g-module with exact matrices for the Chevalley generators.

    Basis vectors are always h-eigenvectors; their weights are recorded in
    fundamental coordinates.  The h matrices are diagonal with those weights.
    """

    rs: RootSystem
    dim: int
    e: tuple[SpMat, ...]
    f: tuple[SpMat, ...]
    h: tuple[SpMat, ...]
    basis_weights: tuple[Weight, ...]
    highest_index: int
    highest_weight: Weight

    @property
    def highest_vector(self) -> dict[int, object]:
        return {self.highest_index: 1}

    def gen(self, kind: str, i: int) -> SpMat:
        return {"e": self.e, "f": self.f, "h": self.h}[kind][i - 1]


def _weights_from_h(hs: list[SpMat], dim: int) -> tuple[Weight, ...]:
    out = []
    for r in range(dim):
        out.append(tuple(int(m.get(r, r)) for m in hs))
    return tuple(out)


def _assert_h_diagonal(hs) -> None:
    for m in hs:
        for r, c, _ in m.entries():
            if r != c:
                raise TheoremCheckError("h generator is not diagonal")


@lru_cache(maxsize=None)
def _defining(lt: LieType) -> MatrixRep:
    rs = build(lt)
    n = lt.rank
    fam = lt.family
    if fam == "A":
        dim = n + 1
        pairs = [(i - 1, i) for i in range(1, n + 1)]
        ee = []
        ff = []
        for r, c in pairs:
            m = SpMat(dim, dim)
            m.set(r, c, 1)
            ee.append(m)
            m = SpMat(dim, dim)
            m.set(c, r, 1)
            ff.append(m)
    elif fam == "C":
        dim = 2 * n
        ee = []
        ff = []
        for i in range(1, n):
            m = SpMat(dim, dim)
            m.set(i - 1, i, 1)
            m.set(2 * n - 1 - i, 2 * n - i, -1)
            ee.append(m)
            m = SpMat(dim, dim)
            m.set(i, i - 1, 1)
            m.set(2 * n - i, 2 * n - 1 - i, -1)
            ff.append(m)
        m = SpMat(dim, dim)
        m.set(n - 1, n, 1)
        ee.append(m)
        m = SpMat(dim, dim)
        m.set(n, n - 1, 1)
        ff.append(m)
    elif fam == "B":
        dim = 2 * n + 1
        ee = []
        ff = []
        for i in range(1, n):
            m = SpMat(dim, dim)
            m.set(i - 1, i, 1)
            m.set(2 * n - i, 2 * n + 1 - i, -1)
            ee.append(m)
            m = SpMat(dim, dim)
            m.set(i, i - 1, 1)
            m.set(2 * n + 1 - i, 2 * n - i, -1)
            ff.append(m)
        # short node: the asymmetric 1/2 split keeps all matrices integral
        m = SpMat(dim, dim)
        m.set(n - 1, n, 1)
        m.set(n, n + 1, 2)
        ee.append(m)
        m = SpMat(dim, dim)
        m.set(n, n - 1, 2)
        m.set(n + 1, n, 1)
        ff.append(m)
    else:
        dim = 2 * n
        ee = []
        ff = []
        for i in range(1, n):
            m = SpMat(dim, dim)
            m.set(i - 1, i, 1)
            m.set(2 * n - 1 - i, 2 * n - i, -1)
            ee.append(m)
            m = SpMat(dim, dim)
            m.set(i, i - 1, 1)
            m.set(2 * n - i, 2 * n - 1 - i, -1)
            ff.append(m)
        m = SpMat(dim, dim)
        m.set(n - 2, n, 1)
        m.set(n - 1, n + 1, -1)
        ee.append(m)
        m = SpMat(dim, dim)
        m.set(n, n - 2, 1)
        m.set(n + 1, n - 1, -1)
        ff.append(m)
    hh = [ee[j].bracket(ff[j]) for j in range(n)]
    _assert_h_diagonal(hh)
    weights = _weights_from_h(hh, dim)
    rep = MatrixRep(rs, dim, tuple(ee), tuple(ff), tuple(hh), weights, 0, weights[0])
    assert rep.highest_weight == rs.fundamental(1)
    return rep


def defining_rep(rs: RootSystem) -> MatrixRep:
    """The vector representation, with integer matrices."""
    return _defining(rs.type)


class ChevalleyBasis:
    """A basis of g built from the generators by iterated brackets.

    Each positive root alpha of height > 1 stores a recipe (i, parent) with
    x_alpha = [e_i, x_parent]; replaying the recipes inside any representation
    realizes the whole basis there.  Structure constants are read off the
    defining representation by exact reduction.
    """

    def __init__(self, rs: RootSystem):
        self.rs = rs
        n = rs.rank
        pos = rs.positive_roots
        pos_set = set(pos)
        self.recipe: dict[tuple[int, ...], tuple[int, tuple[int, ...] | None]] = {}
        for rc in pos:
            if sum(rc) == 1:
                self.recipe[rc] = (rc.index(1) + 1, None)
                continue
            for i in range(1, n + 1):
                parent = tuple(c - (1 if j == i - 1 else 0) for j, c in enumerate(rc))
                if parent in pos_set:
                    self.recipe[rc] = (i, parent)
                    break
            else:
                raise AssertionError(f"root {rc} has no simple-root predecessor")
        self.labels: list[tuple[str, object]] = (
            [("+", rc) for rc in pos] + [("-", rc) for rc in pos] + [("h", j) for j in range(1, n + 1)]
        )
        self.index = {lab: a for a, lab in enumerate(self.labels)}
        self.dim_g = len(self.labels)

        drep = defining_rep(rs)
        self.def_mats = self.realize(drep)
        self._ech = Echelon()
        for m in self.def_mats:
            if self._ech.add(m.to_flat_vec()) is None:
                raise TheoremCheckError("basis of g is dependent in the defining rep")
        self._struct: dict[tuple[int, int], dict[int, object]] = {}

    def plus_index(self, rc) -> int:
        return self.index[("+", rc)]

    def minus_index(self, rc) -> int:
        return self.index[("-", rc)]

    def h_index(self, j: int) -> int:
        return self.index[("h", j)]

    def label_weight(self, a: int) -> Weight:
        kind, val = self.labels[a]
        if kind == "+":
            return self.rs.root_weight(val)
        if kind == "-":
            return tuple(-c for c in self.rs.root_weight(val))
        return self.rs.zero()

    def realize(self, rep: MatrixRep) -> list[SpMat]:
        """Matrices of the whole basis inside rep, by replaying the recipes."""
        plus: dict[tuple[int, ...], SpMat] = {}
        minus: dict[tuple[int, ...], SpMat] = {}
        for rc in self.rs.positive_roots:
            i, parent = self.recipe[rc]
            if parent is None:
                plus[rc] = rep.e[i - 1]
                minus[rc] = rep.f[i - 1]
            else:
                plus[rc] = rep.e[i - 1].bracket(plus[parent])
                minus[rc] = rep.f[i - 1].bracket(minus[parent])
        out = [plus[rc] for rc in self.rs.positive_roots]
        out += [minus[rc] for rc in self.rs.positive_roots]
        out += list(rep.h)
        return out

    def coords_in_basis(self, mat: SpMat) -> dict[int, object]:
        coords = self._ech.coords(mat.to_flat_vec())
        if coords is None:
            raise TheoremCheckError("bracket left the span of the g-basis")
        return coords

    def struct(self, a: int, b: int) -> dict[int, object]:
        """[basis_a, basis_b] expressed in the basis."""
        key = (a, b)
        if key not in self._struct:
            br = self.def_mats[a].bracket(self.def_mats[b])
            self._struct[key] = self.coords_in_basis(br)
        return self._struct[key]


@lru_cache(maxsize=None)
def _chevalley(lt: LieType) -> ChevalleyBasis:
    return ChevalleyBasis(build(lt))


def chevalley(rs: RootSystem) -> ChevalleyBasis:
    return _chevalley(rs.type)


def adjoint_rep(rs: RootSystem) -> MatrixRep:
    """g acting on itself; basis order and structure constants come from the
    Chevalley basis, the highest vector is the theta root vector."""
    cb = chevalley(rs)
    D = cb.dim_g
    n = rs.rank

    def action_of(a: int) -> SpMat:
        m = SpMat(D, D)
        for b in range(D):
            for z, v in cb.struct(a, b).items():
                m.set(z, b, v)
        return m

    simple_rcs = [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
    ee = [action_of(cb.plus_index(rc)) for rc in simple_rcs]
    ff = [action_of(cb.minus_index(rc)) for rc in simple_rcs]
    hh = [action_of(cb.h_index(j)) for j in range(1, n + 1)]
    _assert_h_diagonal(hh)
    weights = tuple(cb.label_weight(a) for a in range(D))
    assert weights == _weights_from_h(hh, D)
    hi = cb.plus_index(rs.theta)
    return MatrixRep(rs, D, tuple(ee), tuple(ff), tuple(hh), weights, hi, rs.root_weight(rs.theta))


def wedge_rep(rs: RootSystem, j: int) -> MatrixRep:
    """The j-th wedge power of the defining representation.

    Irreducible except in type C; the cyclic span in highest_module extracts
    the top component there.
    """
    drep = defining_rep(rs)
    if not 1 <= j <= drep.dim:
        raise ValueError(f"wedge degree {j} out of range")
    basis = list(combinations(range(drep.dim), j))
    pos = {s: a for a, s in enumerate(basis)}
    dim = len(basis)

    def act(gmat: SpMat) -> SpMat:
        out = SpMat(dim, dim)
        for a, subset in enumerate(basis):
            inside = set(subset)
            for t, src in enumerate(subset):
                col = gmat.col(src)
                for r, v in col.items():
                    if r in inside and r != src:
                        continue
                    new = list(subset)
                    new[t] = r
                    sign = 1
                    # bubble the replaced slot into sorted position
                    k = t
                    while k > 0 and new[k] < new[k - 1]:
                        new[k], new[k - 1] = new[k - 1], new[k]
                        sign = -sign
                        k += -1
                    while k < j - 1 and new[k] > new[k + 1]:
                        new[k], new[k + 1] = new[k + 1], new[k]
                        sign = -sign
                        k += 1
                    out.add_to(pos[tuple(new)], a, sign * v)
        return out

    ee = [act(m) for m in drep.e]
    ff = [act(m) for m in drep.f]
    hh = [ee[t].bracket(ff[t]) for t in range(rs.rank)]
    _assert_h_diagonal(hh)
    weights = _weights_from_h(hh, dim)
    expect = tuple(
        sum(drep.basis_weights[s][t] for s in range(j)) for t in range(rs.rank)
    )
    assert weights[0] == expect
    return MatrixRep(rs, dim, tuple(ee), tuple(ff), tuple(hh), weights, 0, weights[0])


def tensor_rep(a: MatrixRep, b: MatrixRep) -> MatrixRep:
    """a (x) b with index ia * b.dim + ib."""
    rs = a.rs
    dim = a.dim * b.dim

    def bothways(ma: SpMat, mb: SpMat) -> SpMat:
        out = SpMat(dim, dim)
        for r, c, v in ma.entries():
            for k in range(b.dim):
                out.add_to(r * b.dim + k, c * b.dim + k, v)
        for r, c, v in mb.entries():
            for k in range(a.dim):
                out.add_to(k * b.dim + r, k * b.dim + c, v)
        return out

    n = rs.rank
    ee = [bothways(a.e[t], b.e[t]) for t in range(n)]
    ff = [bothways(a.f[t], b.f[t]) for t in range(n)]
    hh = [bothways(a.h[t], b.h[t]) for t in range(n)]
    weights = tuple(
        tuple(x + y for x, y in zip(a.basis_weights[r], b.basis_weights[c]))
        for r in range(a.dim)
        for c in range(b.dim)
    )
    hi = a.highest_index * b.dim + b.highest_index
    hw = tuple(x + y for x, y in zip(a.highest_weight, b.highest_weight))
    return MatrixRep(rs, dim, tuple(ee), tuple(ff), tuple(hh), weights, hi, hw)


class _Ambient:
    """Tensor product of factor representations, applied slot-wise without
    materializing the product matrices."""

    def __init__(self, factors: list[MatrixRep]):
        self.factors = factors
        self.dim = 1
        for fct in factors:
            self.dim *= fct.dim
        self.strides = []
        s = self.dim
        for fct in factors:
            s //= fct.dim
            self.strides.append(s)

    def digits(self, idx: int) -> list[int]:
        out = []
        for t, fct in enumerate(self.factors):
            out.append((idx // self.strides[t]) % fct.dim)
        return out

    def weight(self, idx: int) -> Weight:
        digs = self.digits(idx)
        n = len(self.factors[0].basis_weights[0]) if self.factors else 0
        return tuple(
            sum(f.basis_weights[d][t] for f, d in zip(self.factors, digs))
            for t in range(n)
        )

    def apply(self, kind: str, i: int, vec: dict[int, object]) -> dict[int, object]:
        out: dict[int, object] = {}
        for idx, val in vec.items():
            for t, fct in enumerate(self.factors):
                stride = self.strides[t]
                d = (idx // stride) % fct.dim
                for r, v in fct.gen(kind, i).col(d).items():
                    k = idx + (r - d) * stride
                    w = out.get(k, 0) + v * val
                    if w == 0:
                        out.pop(k, None)
                    else:
                        out[k] = w
        return out


def _scope_factors(rs: RootSystem, lam: Weight) -> list[MatrixRep]:
    n = rs.rank
    fam = rs.type.family
    factors: list[MatrixRep] = []
    for j in range(1, n + 1):
        c = lam[j - 1]
        if c == 0:
            continue
        if fam == "B" and j == n:
            if c % 2:
                raise ScopeError(
                    f"spin weight {lam} of {rs.type} is outside the matrix scope"
                )
            factors.extend(wedge_rep(rs, n) for _ in range(c // 2))
            continue
        if fam == "D" and j >= n - 1:
            raise ScopeError(
                f"spin weight {lam} of {rs.type} is outside the matrix scope"
            )
        factors.extend(wedge_rep(rs, j) for _ in range(c))
    return factors


def highest_module(rs: RootSystem, lam: Weight, max_dim: int | None = None) -> MatrixRep:
    """V(lam) as the cyclic span of the top vector in a product of wedges."""
    rs._check_weight(lam)
    if not rs.dominant(lam):
        raise ValueError(f"{lam} is not dominant")
    target_dim = charlib.weyl_dim(rs, lam)
    guard = charlib.dimension_guard(max_dim)
    if target_dim > guard:
        raise DimensionGuardError(f"dim V({lam}) = {target_dim} exceeds {guard}")
    if all(c == 0 for c in lam):
        n = rs.rank
        z = SpMat(1, 1)
        return MatrixRep(rs, 1, (z,) * n, (z,) * n, (z,) * n, (rs.zero(),), 0, lam)
    factors = _scope_factors(rs, lam)
    amb = _Ambient(factors)
    if amb.dim > guard:
        raise DimensionGuardError(f"ambient dim {amb.dim} exceeds {guard}")

    n = rs.rank
    v0 = {0: 1}
    for i in range(1, n + 1):
        if amb.apply("e", i, v0):
            raise TheoremCheckError("top vector is not highest in the ambient space")

    blocks: dict[Weight, tuple[Echelon, list[int]]] = {}
    basis_vecs: list[dict[int, object]] = []
    basis_wts: list[Weight] = []

    def insert(vec: dict[int, object], wt: Weight) -> bool:
        ech, members = blocks.setdefault(wt, (Echelon(), []))
        if ech.add(vec) is None:
            return False
        members.append(len(basis_vecs))
        basis_vecs.append(vec)
        basis_wts.append(wt)
        return True

    insert(v0, amb.weight(0))
    queue = [0]
    while queue:
        r = queue.pop()
        wt = basis_wts[r]
        for i in range(1, n + 1):
            img = amb.apply("f", i, basis_vecs[r])
            if not img:
                continue
            nwt = tuple(wt[t] - rs.cartan[i - 1][t] for t in range(n))
            if insert(img, nwt):
                queue.append(len(basis_vecs) - 1)

    dim = len(basis_vecs)
    if dim != target_dim:
        raise TheoremCheckError(
            f"cyclic span of V({lam}) has dim {dim}, Weyl dimension is {target_dim}"
        )

    def coords_of(vec: dict[int, object], wt: Weight) -> dict[int, object]:
        entry = blocks.get(wt)
        if entry is None:
            raise TheoremCheckError("span is not stable under the generators")
        ech, members = entry
        local = ech.coords(vec)
        if local is None:
            raise TheoremCheckError("span is not stable under the generators")
        return {members[k]: v for k, v in local.items()}

    ee = [SpMat(dim, dim) for _ in range(n)]
    ff = [SpMat(dim, dim) for _ in range(n)]
    for r in range(dim):
        wt = basis_wts[r]
        for i in range(1, n + 1):
            up = amb.apply("e", i, basis_vecs[r])
            if up:
                uwt = tuple(wt[t] + rs.cartan[i - 1][t] for t in range(n))
                for z, v in coords_of(up, uwt).items():
                    ee[i - 1].set(z, r, v)
            dn = amb.apply("f", i, basis_vecs[r])
            if dn:
                dwt = tuple(wt[t] - rs.cartan[i - 1][t] for t in range(n))
                for z, v in coords_of(dn, dwt).items():
                    ff[i - 1].set(z, r, v)
    hh = [SpMat.from_diag([basis_wts[r][i] for r in range(dim)]) for i in range(n)]
    return MatrixRep(
        rs, dim, tuple(ee), tuple(ff), tuple(hh), tuple(basis_wts), 0, lam
    )


def verify_matrix_rep(rep: MatrixRep, check_char: bool = True) -> None:
    """Bracket identities, highest-vector relations and (optionally) the full
    character against the weight multiplicities."""
    rs = rep.rs
    n = rs.rank
    _assert_h_diagonal(rep.h)
    if rep.basis_weights != _weights_from_h(rep.h, rep.dim):
        raise TheoremCheckError("h eigenvalues disagree with the recorded weights")
    for i in range(n):
        for j in range(n):
            if rep.h[i].bracket(rep.e[j]) != rep.e[j].scale(rs.cartan[j][i]):
                raise TheoremCheckError(f"[h_{i+1}, e_{j+1}] failed")
            if rep.h[i].bracket(rep.f[j]) != rep.f[j].scale(-rs.cartan[j][i]):
                raise TheoremCheckError(f"[h_{i+1}, f_{j+1}] failed")
            br = rep.e[i].bracket(rep.f[j])
            if (br if i != j else br - rep.h[i]) != SpMat(rep.dim, rep.dim):
                raise TheoremCheckError(f"[e_{i+1}, f_{j+1}] failed")
    hv = rep.highest_vector
    for i in range(1, n + 1):
        if rep.gen("e", i).apply(hv):
            raise TheoremCheckError("highest vector is not killed by e")
    if rep.basis_weights[rep.highest_index] != rep.highest_weight:
        raise TheoremCheckError("highest weight mismatch")
    if check_char:
        mass: dict[Weight, int] = {}
        for w in rep.basis_weights:
            mass[w] = mass.get(w, 0) + 1
        if mass != charlib.weight_mults(rs, rep.highest_weight):
            raise TheoremCheckError("character disagrees with the weight multiplicities")


def intertwiner(rs: RootSystem, source: MatrixRep, target: MatrixRep) -> list[SpMat]:
    """Basis of the g-equivariant maps source -> target.

    Unknowns are restricted to weight-matched entries; the constraints are
    commutation with every e_i and f_i.
    """
    cols_by_wt: dict[Weight, list[int]] = {}
    for c in range(source.dim):
        cols_by_wt.setdefault(source.basis_weights[c], []).append(c)
    rows_by_wt: dict[Weight, list[int]] = {}
    for r in range(target.dim):
        rows_by_wt.setdefault(target.basis_weights[r], []).append(r)

    variables = []
    for wt, rows in sorted(rows_by_wt.items()):
        for r in rows:
            for c in cols_by_wt.get(wt, []):
                variables.append((r, c))
    varset = set(variables)

    def constraint_rows():
        for kind in ("e", "f"):
            for i in range(1, rs.rank + 1):
                gs = source.gen(kind, i)
                gt = target.gen(kind, i)
                for c in range(source.dim):
                    acc: dict[int, dict[tuple[int, int], object]] = {}
                    for k, v in gs.col(c).items():
                        for r in rows_by_wt.get(source.basis_weights[k], []):
                            if (r, k) in varset:
                                row = acc.setdefault(r, {})
                                row[(r, k)] = row.get((r, k), 0) + v
                    col_vars = [
                        (k, (k, c))
                        for k in rows_by_wt.get(source.basis_weights[c], [])
                        if (k, c) in varset
                    ]
                    for k, var in col_vars:
                        for rr, a in gt.col(k).items():
                            row = acc.setdefault(rr, {})
                            row[var] = row.get(var, 0) - a
                    for row in acc.values():
                        yield row

    sols = nullspace(constraint_rows(), variables)
    out = []
    for sol in sols:
        m = SpMat(target.dim, source.dim)
        for (r, c), v in sol.items():
            m.set(r, c, v)
        out.append(m)
    return out


@dataclass(frozen=True)
class CurrentModule:
    """Graded module for g[t]: pieces V_0..V_k, x(x)1 block-diagonal, x(x)t
    mapping each piece to the next, everything else acting as zero."""

    rs: RootSystem
    node: int
    level: int
    chain: tuple[Weight, ...]
    pieces: tuple[MatrixRep, ...]
    g_action: tuple[tuple[SpMat, ...], ...]
    t_action: tuple[tuple[SpMat, ...], ...]

    @property
    def k(self) -> int:
        return len(self.pieces) - 1

    @property
    def total_dim(self) -> int:
        return sum(p.dim for p in self.pieces)

    def offsets(self) -> list[int]:
        out = [0]
        for p in self.pieces:
            out.append(out[-1] + p.dim)
        return out


def evaluation_module(rs: RootSystem, node: int, m: int, max_dim: int | None = None) -> CurrentModule:
    """V(m omega_i) with t g[t] acting as zero."""
    lam = rs.fundamental(node, m) if m else rs.zero()
    piece = highest_module(rs, lam, max_dim)
    cb = chevalley(rs)
    mats = tuple(cb.realize(piece))
    return CurrentModule(rs, node, m, (lam,), (piece,), (mats,), ())


def build_kr_fundamental(rs: RootSystem, i: int, max_dim: int | None = None) -> CurrentModule:
    """The graded module on the chain of node i at level dcheck_i, with x(x)t
    given by the unique normalized intertwiners."""
    if rs.epsilon(rs.theta, i) != 2:
        raise ValueError(f"node {i} of {rs.type} is not a construction node")
    d = rs.dcheck[i - 1]
    chain = krset.enumerate_chain(rs, i).weights
    pieces = tuple(highest_module(rs, mu, max_dim) for mu in chain)
    cb = chevalley(rs)
    g_action = tuple(tuple(cb.realize(p)) for p in pieces)
    adj = adjoint_rep(rs)

    t_action = []
    for s in range(len(chain) - 1):
        src = tensor_rep(adj, pieces[s])
        sols = intertwiner(rs, src, pieces[s + 1])
        if len(sols) != 1:
            raise TheoremCheckError(
                f"Hom(g (x) V{chain[s]}, V{chain[s + 1]}) has dimension {len(sols)}"
            )
        T = sols[0]
        beta = tuple(a - b for a, b in zip(chain[s], chain[s + 1]))
        bidx = cb.minus_index(
            tuple(int(c) for c in rs.to_root_coords(beta))
        )
        col = T.col(bidx * pieces[s].dim + pieces[s].highest_index)
        scale = col.get(pieces[s + 1].highest_index, 0)
        if scale == 0 or set(col) != {pieces[s + 1].highest_index}:
            raise TheoremCheckError(
                f"intertwiner does not transport the highest vector at step {s}"
            )
        T = T.scale(Fraction(1, 1) / scale)
        mats = []
        for a in range(cb.dim_g):
            m = SpMat(pieces[s + 1].dim, pieces[s].dim)
            for c in range(pieces[s].dim):
                for r, v in T.col(a * pieces[s].dim + c).items():
                    m.set(r, c, v)
            mats.append(m)
        t_action.append(tuple(mats))
    return CurrentModule(rs, i, d, chain, pieces, g_action, tuple(t_action))


@dataclass(frozen=True)
class RelationReport:
    """Counts of verified identities for one module."""

    label: str
    total_dim: int
    bracket_pairs: int
    mixed_pairs: int
    tsquare_pairs: int
    generator_checks: int
    cyclic_dim: int
    transport_steps: int

    @property
    def ok(self) -> bool:
        return self.cyclic_dim == self.total_dim


def verify_current_relations(cm: CurrentModule, i: int | None = None, m: int | None = None) -> RelationReport:
    """Exact matrix verification of the current-algebra structure and of the
    defining relations of KR(m omega_i) on the generator."""
    rs = cm.rs
    cb = chevalley(rs)
    if i is None:
        i = cm.node
    if m is None:
        m = cm.level
    D = cb.dim_g
    k = cm.k

    def zmat(z_coeffs, s, t_shift):
        if t_shift == 0:
            rows = cols = cm.pieces[s].dim
            out = SpMat(rows, cols)
            for z, v in z_coeffs.items():
                out = out + cm.g_action[s][z].scale(v)
            return out
        rows, cols = cm.pieces[s + 1].dim, cm.pieces[s].dim
        out = SpMat(rows, cols)
        for z, v in z_coeffs.items():
            out = out + cm.t_action[s][z].scale(v)
        return out

    bracket_pairs = 0
    for s in range(k + 1):
        for a in range(D):
            for b in range(a + 1, D):
                lhs = cm.g_action[s][a].bracket(cm.g_action[s][b])
                if lhs != zmat(cb.struct(a, b), s, 0):
                    raise TheoremCheckError(
                        f"[x_{a}, x_{b}] fails on piece {s}"
                    )
                bracket_pairs += 1

    mixed_pairs = 0
    for s in range(k):
        for a in range(D):
            for b in range(D):
                lhs = (cm.g_action[s + 1][a] @ cm.t_action[s][b]) - (
                    cm.t_action[s][b] @ cm.g_action[s][a]
                )
                if lhs != zmat(cb.struct(a, b), s, 1):
                    raise TheoremCheckError(
                        f"[x_{a} (x) 1, x_{b} (x) t] fails on piece {s}"
                    )
                mixed_pairs += 1

    tsquare_pairs = 0
    for s in range(k - 1):
        for a in range(D):
            for b in range(a + 1, D):
                lhs = (cm.t_action[s + 1][a] @ cm.t_action[s][b]) - (
                    cm.t_action[s + 1][b] @ cm.t_action[s][a]
                )
                if not lhs.is_zero():
                    raise TheoremCheckError(
                        f"[x_{a} (x) t, x_{b} (x) t] does not vanish on piece {s}"
                    )
                tsquare_pairs += 1

    # defining relations on the generator
    v0 = cm.pieces[0].highest_vector
    checks = 0
    npos = len(rs.positive_roots)
    for a in range(npos):
        if cm.g_action[0][a].apply(v0):
            raise TheoremCheckError(f"x+_{a} does not kill the generator")
        checks += 1
        if k > 0 and cm.t_action[0][a].apply(v0):
            raise TheoremCheckError(f"x+_{a} (x) t does not kill the generator")
        checks += 1
    for j in range(1, rs.rank + 1):
        got = cm.g_action[0][cb.h_index(j)].apply(v0)
        want = {cm.pieces[0].highest_index: m} if (j == i and m) else {}
        if got != want:
            raise TheoremCheckError(f"h_{j} eigenvalue on the generator is wrong")
        checks += 1
        if k > 0 and cm.t_action[0][cb.h_index(j)].apply(v0):
            raise TheoremCheckError(f"h_{j} (x) t does not kill the generator")
        checks += 1
    simple_rcs = [
        tuple(1 if t == j else 0 for t in range(rs.rank)) for j in range(rs.rank)
    ]
    for j, rc in enumerate(simple_rcs, start=1):
        a = cb.minus_index(rc)
        if j != i:
            if cm.g_action[0][a].apply(v0):
                raise TheoremCheckError(f"x-_alpha_{j} does not kill the generator")
            checks += 1
        else:
            vec = dict(v0)
            for _ in range(m + 1):
                vec = cm.g_action[0][a].apply(vec)
            if vec:
                raise TheoremCheckError(
                    f"(x-_alpha_{i})^{m + 1} does not kill the generator"
                )
            checks += 1
            if k > 0 and cm.t_action[0][a].apply(v0):
                raise TheoremCheckError(
                    f"x-_alpha_{i} (x) t does not kill the generator"
                )
            checks += 1

    # cyclicity: the generator reaches the whole space
    offsets = cm.offsets()
    ech = Echelon()
    start = {offsets[0] + cm.pieces[0].highest_index: 1}
    ech.add(start)
    queue = [(0, v0)]
    while queue:
        s, vec = queue.pop()
        for a in range(D):
            img = cm.g_action[s][a].apply(vec)
            if img and ech.add({offsets[s] + r: v for r, v in img.items()}) is not None:
                queue.append((s, img))
            if s < k:
                img = cm.t_action[s][a].apply(vec)
                if img and ech.add({offsets[s + 1] + r: v for r, v in img.items()}) is not None:
                    queue.append((s + 1, img))
    cyclic_dim = ech.dim
    if cyclic_dim != cm.total_dim:
        raise TheoremCheckError(
            f"generator spans {cyclic_dim} of {cm.total_dim} dimensions"
        )

    # transport along the chain through the normalized intertwiners
    transport = 0
    for s in range(k):
        beta = tuple(a - b for a, b in zip(cm.chain[s], cm.chain[s + 1]))
        a = cb.minus_index(tuple(int(c) for c in rs.to_root_coords(beta)))
        got = cm.t_action[s][a].apply(cm.pieces[s].highest_vector)
        if got != cm.pieces[s + 1].highest_vector:
            raise TheoremCheckError(f"transport fails at step {s}")
        transport += 1

    label = f"{rs.type.family}{rs.rank} node {i} level {m}"
    return RelationReport(
        label,
        cm.total_dim,
        bracket_pairs,
        mixed_pairs,
        tsquare_pairs,
        checks,
        cyclic_dim,
        transport,
    )


class _GradedTensor:
    """Tensor product of current modules; grades add across the slots."""

    def __init__(self, mods: list[CurrentModule]):
        self.mods = mods
        self.rs = mods[0].rs
        cb = chevalley(self.rs)
        self.dim_g = cb.dim_g
        self.tdims = [cm.total_dim for cm in mods]
        self.dim = 1
        for d in self.tdims:
            self.dim *= d
        self.strides = []
        s = self.dim
        for d in self.tdims:
            s //= d
            self.strides.append(s)
        # flattened per-factor tables: grade, weight, and column maps
        self.meta = []
        for cm in mods:
            offs = cm.offsets()
            grade = [0] * cm.total_dim
            wts: list[Weight] = [None] * cm.total_dim  # type: ignore[list-item]
            for s_piece, piece in enumerate(cm.pieces):
                for r in range(piece.dim):
                    grade[offs[s_piece] + r] = s_piece
                    wts[offs[s_piece] + r] = piece.basis_weights[r]
            g_cols: list[dict[int, list[tuple[int, object]]]] = []
            t_cols: list[dict[int, list[tuple[int, object]]]] = []
            for a in range(self.dim_g):
                cols0: dict[int, list[tuple[int, object]]] = {}
                cols1: dict[int, list[tuple[int, object]]] = {}
                for s_piece in range(cm.k + 1):
                    mat = cm.g_action[s_piece][a]
                    for c, col in mat.data.items():
                        cols0[offs[s_piece] + c] = [
                            (offs[s_piece] + r, v) for r, v in col.items()
                        ]
                    if s_piece < cm.k:
                        tmat = cm.t_action[s_piece][a]
                        for c, col in tmat.data.items():
                            cols1[offs[s_piece] + c] = [
                                (offs[s_piece + 1] + r, v) for r, v in col.items()
                            ]
                g_cols.append(cols0)
                t_cols.append(cols1)
            self.meta.append((grade, wts, g_cols, t_cols))

    def grade_weight(self, idx: int) -> tuple[int, Weight]:
        g = 0
        n = self.rs.rank
        wt = [0] * n
        for t, (grade, wts, _, _) in enumerate(self.meta):
            d = (idx // self.strides[t]) % self.tdims[t]
            g += grade[d]
            for j in range(n):
                wt[j] += wts[d][j]
        return g, tuple(wt)

    def apply(self, a: int, tpow: int, vec: dict[int, object]) -> dict[int, object]:
        out: dict[int, object] = {}
        for idx, val in vec.items():
            for t in range(len(self.mods)):
                stride = self.strides[t]
                d = (idx // stride) % self.tdims[t]
                cols = self.meta[t][2 + tpow][a]
                for r, v in cols.get(d, ()):
                    key = idx + (r - d) * stride
                    w = out.get(key, 0) + v * val
                    if w == 0:
                        out.pop(key, None)
                    else:
                        out[key] = w
        return out


def kr_tensor_submodule(
    rs: RootSystem, i: int, m: int, max_dim: int | None = None
) -> dict[int, dict[Weight, int]]:
    """Cyclic submodule generated by the top vector of the tensor product of
    fundamental graded modules; returns grade -> decomposition and checks it
    against the combinatorial graded character."""
    rs._check_node(i)
    if m < 0:
        raise ValueError("level must be non-negative")
    d = rs.dcheck[i - 1]
    m0, m1 = divmod(m, d)
    target = krset.graded_character(rs, i, m).as_dict()
    if m == 0:
        return {0: {rs.zero(): 1}}

    factors: list[CurrentModule] = []
    if m1:
        factors.append(evaluation_module(rs, i, m1, max_dim))
    if m0:
        if rs.epsilon(rs.theta, i) == 2:
            fund = build_kr_fundamental(rs, i, max_dim)
        else:
            fund = evaluation_module(rs, i, d, max_dim)
        factors.extend([fund] * m0)

    guard = charlib.dimension_guard(max_dim)
    total = 1
    for cm in factors:
        total *= cm.total_dim
    if total > guard:
        raise DimensionGuardError(f"tensor space dim {total} exceeds {guard}")

    gt = _GradedTensor(factors)
    blocks: dict[tuple[int, Weight], Echelon] = {}

    def insert(vec: dict[int, object]) -> tuple[int, Weight] | None:
        key = gt.grade_weight(min(vec))
        ech = blocks.setdefault(key, Echelon())
        if ech.add(vec) is None:
            return None
        return key

    top = {0: 1}
    insert(top)
    queue: list[dict[int, object]] = [top]
    while queue:
        vec = queue.pop()
        for a in range(gt.dim_g):
            for tpow in (0, 1):
                img = gt.apply(a, tpow, vec)
                if img and insert(img) is not None:
                    queue.append(img)

    mass: dict[int, dict[Weight, int]] = {}
    for (g, wt), ech in blocks.items():
        if ech.dim:
            mass.setdefault(g, {})[wt] = ech.dim
    out: dict[int, dict[Weight, int]] = {}
    for g, chi in sorted(mass.items()):
        out[g] = charlib.decompose_character(rs, chi)
    if out != target:
        raise TheoremCheckError(
            f"graded submodule decomposition {out} differs from the"
            f" combinatorial character {target}"
        )
    return out
