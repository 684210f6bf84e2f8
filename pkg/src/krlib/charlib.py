"""Characters of finite-dimensional simple modules, exactly.

Two independent routes are kept side by side on purpose: multiplicities come
from the Freudenthal recursion, tensor products from the Klimyk reflection
count, and decompose_character re-derives decompositions by stripping highest
weights off a raw weight character.  The routes cross-check each other and
none of them is ever collapsed into the other.

Everything is integer arithmetic; weights are fundamental-coordinate tuples.
"""

from __future__ import annotations

import os
from functools import lru_cache

from .errors import DimensionGuardError
from .rootsys import LieType, RootSystem, Weight, build

WeightCharacter = dict[Weight, int]
DominantCharacter = dict[Weight, int]

DEFAULT_MAX_DIM = 100_000


def dimension_guard(max_dim: int | None = None) -> int:
    """Effective guard value: explicit argument, else KR_MAX_DIM, else default."""
    if max_dim is not None:
        return max_dim
    env = os.environ.get("KR_MAX_DIM")
    return int(env) if env else DEFAULT_MAX_DIM


def _require_dominant(rs: RootSystem, lam: Weight, what: str = "weight") -> None:
    if not rs.dominant(lam):
        raise ValueError(f"{what} {lam} is not dominant")


def weyl_dim(rs: RootSystem, lam: Weight) -> int:
    """Dimension of the simple module with highest weight lam."""
    _require_dominant(rs, lam)
    rho_shift = tuple(c + 1 for c in lam)
    rho = (1,) * rs.rank
    num = den = 1
    for alpha in rs.positive_roots:
        num *= rs.twice_inner_root(rho_shift, alpha)
        den *= rs.twice_inner_root(rho, alpha)
    assert num % den == 0
    return num // den


@lru_cache(maxsize=None)
def _dominant_below(lt: LieType, lam: Weight) -> tuple[Weight, ...]:
    """All dominant weights mu with lam - mu in the positive root lattice.

    The coefficient of alpha_i in lam - mu is bounded by the coefficient of
    alpha_i in lam itself because inv(cartan^T) has non-negative entries, so
    a finite box of coefficient vectors suffices.
    """
    rs = build(lt)
    n = rs.rank
    bounds = [int(c) for c in rs.to_root_coords(lam)]
    cartan_t = [[rs.cartan[k][i] for k in range(n)] for i in range(n)]
    out: list[Weight] = []

    def rec(i: int, mu: list[int]) -> None:
        if i == n:
            if all(x >= 0 for x in mu):
                out.append(tuple(mu))
            return
        rec(i + 1, mu)
        cur = mu
        for _ in range(bounds[i]):
            cur = [cur[j] - cartan_t[j][i] for j in range(n)]
            rec(i + 1, cur)

    rec(0, list(lam))
    return tuple(out)


@lru_cache(maxsize=None)
def _dominant_mults(lt: LieType, lam: Weight) -> dict[Weight, int]:
    """Freudenthal multiplicities of the dominant weights of V(lam)."""
    rs = build(lt)
    n = rs.rank
    cands = list(_dominant_below(lt, lam))
    by_depth = sorted(
        cands,
        key=lambda mu: (sum(_int_root_coords(rs, tuple(a - b for a, b in zip(lam, mu)))), mu),
    )
    mults: dict[Weight, int] = {}
    for mu in by_depth:
        if mu == lam:
            mults[mu] = 1
            continue
        diff = _int_root_coords(rs, tuple(a - b for a, b in zip(lam, mu)))
        num2 = 0
        for alpha in rs.positive_roots:
            aw = rs.root_weight(alpha)
            rem = list(diff)
            nu = list(mu)
            while True:
                ok = True
                for j in range(n):
                    rem[j] -= alpha[j]
                    if rem[j] < 0:
                        ok = False
                for j in range(n):
                    nu[j] += aw[j]
                if not ok:
                    break
                m = mults.get(rs.to_dominant(tuple(nu)), 0)
                if m:
                    num2 += m * rs.twice_inner_root(tuple(nu), alpha)
        den2 = rs.twice_inner_root(
            tuple(a + b for a, b in zip(lam, tuple(c + 2 for c in mu))), diff
        )
        # den2 = 2*((lam+rho, lam+rho) - (mu+rho, mu+rho)) = 2*(lam+mu+2rho, lam-mu)
        assert den2 > 0, (lam, mu)
        assert (2 * num2) % den2 == 0
        m = (2 * num2) // den2
        if m:
            mults[mu] = m
    return mults


def _int_root_coords(rs: RootSystem, eta: Weight) -> tuple[int, ...]:
    rc = rs.to_root_coords(eta)
    out = tuple(int(c) for c in rc)
    if any(a != b for a, b in zip(rc, out)):
        raise ValueError(f"{eta} is not in the root lattice")
    return out


@lru_cache(maxsize=None)
def _full_char(lt: LieType, lam: Weight) -> dict[Weight, int]:
    rs = build(lt)
    out: dict[Weight, int] = {}
    for mu, m in _dominant_mults(lt, lam).items():
        for w in rs.weyl_orbit(mu):
            out[w] = m
    return out


def weight_mults(rs: RootSystem, lam: Weight, max_dim: int | None = None) -> WeightCharacter:
    """Full weight character of V(lam) as a weight -> multiplicity map."""
    _require_dominant(rs, lam)
    if weyl_dim(rs, lam) > dimension_guard(max_dim):
        raise DimensionGuardError(
            f"dim V({lam}) = {weyl_dim(rs, lam)} exceeds the guard {dimension_guard(max_dim)}"
        )
    return dict(_full_char(rs.type, lam))


def dominant_mults(rs: RootSystem, lam: Weight) -> DominantCharacter:
    """Multiplicities of the dominant weights of V(lam)."""
    _require_dominant(rs, lam)
    return dict(_dominant_mults(rs.type, lam))


def _dominantize_strict(rs: RootSystem, xi: Weight) -> tuple[Weight, int] | None:
    """Reflect the rho-shifted weight xi to the dominant chamber.

    Returns (dominant representative, sign of the Weyl element), or None if
    the orbit meets a wall (zero coordinate).
    """
    cur = list(xi)
    sign = 1
    n = rs.rank
    while True:
        neg = -1
        for j in range(n):
            if cur[j] < 0:
                neg = j
                break
        if neg < 0:
            if 0 in cur:
                return None
            return tuple(cur), sign
        c = cur[neg]
        row = rs.cartan[neg]
        for k in range(n):
            cur[k] -= c * row[k]
        sign = -sign


def tensor_decompose(
    rs: RootSystem, lam: Weight, mu: Weight, max_dim: int | None = None
) -> DominantCharacter:
    """Decomposition of V(lam) (x) V(mu) into simple constituents.

    Klimyk's reflection count over the weight character of the smaller factor;
    contributions whose rho-shift lands on a wall cancel and are dropped.
    """
    _require_dominant(rs, lam)
    _require_dominant(rs, mu)
    dl, dm = weyl_dim(rs, lam), weyl_dim(rs, mu)
    if dl * dm > dimension_guard(max_dim):
        raise DimensionGuardError(
            f"product dimension {dl * dm} exceeds the guard {dimension_guard(max_dim)}"
        )
    if dm > dl:
        lam, mu = mu, lam
    n = rs.rank
    shifted = tuple(c + 1 for c in lam)
    out: dict[Weight, int] = {}
    for nu, m in _full_char(rs.type, mu).items():
        xi = tuple(shifted[j] + nu[j] for j in range(n))
        res = _dominantize_strict(rs, xi)
        if res is None:
            continue
        dom, sign = res
        key = tuple(c - 1 for c in dom)
        out[key] = out.get(key, 0) + sign * m
    out = {w: m for w, m in out.items() if m}
    assert all(m > 0 for m in out.values())
    return out


def char_product(chi1: WeightCharacter, chi2: WeightCharacter) -> WeightCharacter:
    """Pointwise product of two weight characters (convolution of supports)."""
    out: dict[Weight, int] = {}
    for w1, m1 in chi1.items():
        for w2, m2 in chi2.items():
            key = tuple(a + b for a, b in zip(w1, w2))
            out[key] = out.get(key, 0) + m1 * m2
    return out


def expand_dominant(rs: RootSystem, dchar: DominantCharacter) -> WeightCharacter:
    """Weight character of a sum of simples given by highest weight -> mult."""
    out: dict[Weight, int] = {}
    for lam, mult in dchar.items():
        for w, m in _full_char(rs.type, lam).items():
            out[w] = out.get(w, 0) + mult * m
    return {w: m for w, m in out.items() if m}


def decompose_character(rs: RootSystem, chi: WeightCharacter) -> DominantCharacter:
    """Write a genuine weight character as a sum of simple characters.

    Repeatedly strips the character of the maximal remaining weight.  Raises
    ValueError if the input was not a non-negative sum of simple characters.
    """
    work = {w: m for w, m in chi.items() if m}
    out: dict[Weight, int] = {}
    while work:
        lam = max(work, key=lambda w: (sum(rs.to_root_coords(w)), w))
        mult = work[lam]
        if not rs.dominant(lam) or mult < 0:
            raise ValueError(f"not a genuine character: maximal weight {lam} x {mult}")
        out[lam] = mult
        for w, m in _full_char(rs.type, lam).items():
            nv = work.get(w, 0) - mult * m
            if nv:
                work[w] = nv
            else:
                work.pop(w, None)
    return out


def ext_square(rs: RootSystem, chi: WeightCharacter) -> WeightCharacter:
    """Weight character of the exterior square of a module with character chi."""
    items = sorted(chi.items())
    out: dict[Weight, int] = {}
    for i, (w1, m1) in enumerate(items):
        diag = m1 * (m1 - 1) // 2
        if diag:
            key = tuple(2 * c for c in w1)
            out[key] = out.get(key, 0) + diag
        for w2, m2 in items[i + 1 :]:
            key = tuple(a + b for a, b in zip(w1, w2))
            out[key] = out.get(key, 0) + m1 * m2
    return {w: m for w, m in out.items() if m}


def sym_square(rs: RootSystem, chi: WeightCharacter) -> WeightCharacter:
    """Weight character of the symmetric square of a module with character chi."""
    items = sorted(chi.items())
    out: dict[Weight, int] = {}
    for i, (w1, m1) in enumerate(items):
        diag = m1 * (m1 + 1) // 2
        key = tuple(2 * c for c in w1)
        out[key] = out.get(key, 0) + diag
        for w2, m2 in items[i + 1 :]:
            key = tuple(a + b for a, b in zip(w1, w2))
            out[key] = out.get(key, 0) + m1 * m2
    return {w: m for w, m in out.items() if m}


def adjoint_char(rs: RootSystem) -> WeightCharacter:
    """Weight character of the adjoint module: all roots plus rank * zero."""
    out: dict[Weight, int] = {rs.zero(): rs.rank}
    for alpha in rs.positive_roots:
        w = rs.root_weight(alpha)
        out[w] = 1
        out[tuple(-c for c in w)] = 1
    return out


def hom_dim(
    rs: RootSystem,
    factors,
    target: Weight,
    max_dim: int | None = None,
) -> int:
    """Multiplicity of V(target) in the tensor product of the factors.

    Each factor is either a dominant Weight or an explicit weight character.
    By complete reducibility this is dim Hom(tensor product, V(target)).
    """
    _require_dominant(rs, target, "target")
    weights = [f for f in factors if isinstance(f, tuple)]
    chars = [f for f in factors if not isinstance(f, tuple)]
    for lam in weights:
        _require_dominant(rs, lam, "factor")
    if not weights and not chars:
        return int(target == rs.zero())

    base: Weight | None = None
    if weights:
        base = max(weights, key=lambda w: weyl_dim(rs, w))
        weights.remove(base)

    rest: WeightCharacter = {rs.zero(): 1}
    guard = dimension_guard(max_dim)
    for lam in weights:
        rest = char_product(rest, weight_mults(rs, lam, max_dim=guard))
        if len(rest) > guard:
            raise DimensionGuardError("intermediate character exceeds the guard")
    for chi in chars:
        rest = char_product(rest, dict(chi))
        if len(rest) > guard:
            raise DimensionGuardError("intermediate character exceeds the guard")

    if base is None:
        # no weight factor left: read the multiplicity off a full decomposition
        return decompose_character(rs, rest).get(target, 0)

    n = rs.rank
    shifted = tuple(c + 1 for c in base)
    goal = tuple(c + 1 for c in target)
    total = 0
    for nu, m in rest.items():
        xi = tuple(shifted[j] + nu[j] for j in range(n))
        res = _dominantize_strict(rs, xi)
        if res and res[0] == goal:
            total += res[1] * m
    assert total >= 0
    return total
