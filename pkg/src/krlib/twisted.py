"""Twisted analogue of the KR combinatorics.

The ambient algebra is type A or D with a diagram automorphism of order two.
Everything is computed inside the fixed-point algebra g0; the odd part g1 is
tracked only through its highest g0-weight phi.  Levels are measured against
the node-dependent steps dsigma instead of dcheck.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from . import charlib
from .errors import TheoremCheckError
from .krset import (
    GradedChain,
    GradedCharacter,
    _omega_step_set,
    greedy_reduced,
    sort_chain,
    verify_chain_conditions,
)
from .rootsys import LieType, RootSystem, Weight, build

_MIN_N = {"A_odd": 2, "A_even": 1, "D": 2}


@dataclass(frozen=True)
class OuterType:
    """An order-two diagram automorphism, indexed by the fixed-point rank n.

    family "A_odd" means ambient A_{2n-1}, "A_even" ambient A_{2n} and "D"
    ambient D_{n+1}.
    """

    family: str
    n: int

    def __post_init__(self):
        if self.family not in _MIN_N:
            raise ValueError(f"unknown outer family {self.family!r}")
        if self.n < _MIN_N[self.family]:
            raise ValueError(f"{self.family} needs n >= {_MIN_N[self.family]}")

    @property
    def ambient(self) -> LieType:
        if self.family == "A_odd":
            return LieType("A", 2 * self.n - 1)
        if self.family == "A_even":
            return LieType("A", 2 * self.n)
        return LieType("D", self.n + 1)

    @property
    def label(self) -> str:
        amb = self.ambient
        return f"{amb.family}{amb.rank}~"


def outer_from_ambient(family: str, rank: int) -> OuterType:
    """The outer type whose ambient diagram is family_rank."""
    if family == "A":
        if rank >= 3 and rank % 2 == 1:
            return OuterType("A_odd", (rank + 1) // 2)
        if rank >= 2 and rank % 2 == 0:
            return OuterType("A_even", rank // 2)
        raise ValueError(f"A_{rank} has no usable diagram automorphism")
    if family == "D":
        if rank >= 3:
            return OuterType("D", rank - 1)
        raise ValueError(f"D_{rank} needs rank >= 3")
    raise ValueError(f"no order-two diagram automorphism handled for {family}_{rank}")


@dataclass(frozen=True)
class TwistedData:
    """Fixed-point algebra g0, the odd-part root set R1+, phi and the steps."""

    outer: OuterType
    g0: RootSystem
    r1_positive: frozenset[tuple[int, ...]]
    phi: Weight
    dsigma: tuple[int, ...]


def _short_positive(rs: RootSystem) -> list[tuple[int, ...]]:
    # roots of minimal length; in the simply laced case that is all of them
    norms = {rc: rs.inner(rs.root_weight(rc), rs.root_weight(rc)) for rc in rs.positive_roots}
    least = min(norms.values())
    return [rc for rc in rs.positive_roots if norms[rc] == least]


def _ambient_dim(lt: LieType) -> int:
    if lt.family == "A":
        return lt.rank * (lt.rank + 2)
    if lt.family == "D":
        return lt.rank * (2 * lt.rank - 1)
    raise ValueError(lt.family)


@lru_cache(maxsize=None)
def fixed_point_data(outer: OuterType) -> TwistedData:
    """Fixed-point algebra and odd-part data of the automorphism."""
    n = outer.n
    if outer.family == "A_odd":
        g0 = build(LieType("C", n))
    elif outer.family == "A_even" and n == 1:
        g0 = build(LieType("A", 1))
    else:
        g0 = build(LieType("B", n))
    short = _short_positive(g0)
    highest = max(short, key=lambda rc: (sum(rc), rc))
    phi = g0.root_weight(highest)
    assert g0.dominant(phi)
    if outer.family == "A_even":
        r1 = frozenset(g0.positive_roots) | frozenset(
            tuple(2 * c for c in rc) for rc in short
        )
        phi = tuple(2 * c for c in phi)
        dsigma = tuple(2 if i < n else 4 for i in range(1, n + 1))
    else:
        r1 = frozenset(short)
        dsigma = (1,) * n
    g0_dim = 2 * len(g0.positive_roots) + g0.rank
    assert charlib.weyl_dim(g0, phi) == _ambient_dim(outer.ambient) - g0_dim
    return TwistedData(outer, g0, r1, phi, dsigma)


def _scaled_ladder(g0: RootSystem, i: int, mult: int) -> frozenset[Weight]:
    # mult*omega_i, mult*omega_{i-1}, ..., mult*omega_1, 0
    return frozenset(
        [g0.fundamental(j, mult) for j in range(1, i + 1)] + [g0.zero()]
    )


def base_set_sigma(data: TwistedData, i: int, m0: int) -> frozenset[Weight]:
    """The base set at node i for a level 1 <= m0 <= dsigma_i."""
    g0 = data.g0
    g0._check_node(i)
    d = data.dsigma[i - 1]
    if not 1 <= m0 <= d:
        raise ValueError(f"base level {m0} outside 1..{d} at node {i}")
    fam = data.outer.family
    n = data.outer.n
    if fam == "A_odd":
        return _omega_step_set(g0, i, 1)
    if fam == "D":
        if i == n:
            return frozenset([g0.fundamental(n)])
        return _scaled_ladder(g0, i, 1)
    # A_even
    if m0 == 1:
        return frozenset([g0.fundamental(i)])
    if i < n:
        return _scaled_ladder(g0, i, 2)
    if m0 in (2, 3):
        return frozenset([g0.fundamental(n, m0)])
    return frozenset(
        [g0.fundamental(n, 4)]
        + [g0.fundamental(j, 2) for j in range(1, n)]
        + [g0.zero()]
    )


def _int_coords(g0: RootSystem, diff: Weight) -> tuple[int, ...] | None:
    rc = g0.to_root_coords(diff)
    if any(c.denominator != 1 for c in rc):
        return None
    return tuple(int(c) for c in rc)


def enumerate_chain_sigma(data: TwistedData, i: int, m0: int | None = None) -> GradedChain:
    """Enumerated base set: consecutive differences are in R1+, two-step
    differences are not.

    For the A automorphisms two-step differences avoid all of R0+ and R1+; for
    the D automorphism they do land on long positive roots of g0 (omega_j -
    omega_{j-2} = e_{j-1} + e_j there), so only R1+ membership is excluded.
    """
    g0 = data.g0
    if m0 is None:
        m0 = data.dsigma[i - 1]
    top = g0.fundamental(i, m0)
    chain = sort_chain(g0, base_set_sigma(data, i, m0), top)
    assert chain[0] == top

    def in_r1(diff: Weight) -> bool:
        return _int_coords(g0, diff) in data.r1_positive

    if data.outer.family == "D":
        two_step = lambda diff: not in_r1(diff)
    else:
        two_step = lambda diff: not in_r1(diff) and not g0.is_positive_root(
            g0.to_root_coords(diff)
        )
    verify_chain_conditions(g0, chain, in_r1, two_step)
    return GradedChain(chain)


@lru_cache(maxsize=None)
def _pplus_sigma(outer: OuterType, i: int, m: int) -> frozenset[Weight]:
    data = fixed_point_data(outer)
    if m == 0:
        return frozenset([data.g0.zero()])
    d = data.dsigma[i - 1]
    if m <= d:
        return base_set_sigma(data, i, m)
    step = base_set_sigma(data, i, d)
    rest = _pplus_sigma(outer, i, m - d)
    return frozenset(
        tuple(a + b for a, b in zip(x, y)) for x in step for y in rest
    )


def pplus_sigma(data: TwistedData, i: int, m: int) -> frozenset[Weight]:
    """P+(i, m) over g0, built from twisted base sets by Minkowski sums."""
    data.g0._check_node(i)
    if m < 0:
        raise ValueError("level must be non-negative")
    return _pplus_sigma(data.outer, i, m)


def reduced_expression_sigma(data: TwistedData, i: int, m: int, mu: Weight) -> tuple[int, ...]:
    """Greedy reduced expression of mu over the twisted chain."""
    if mu not in pplus_sigma(data, i, m):
        raise ValueError(f"{mu} not in twisted P+({i}, {m})")
    d = data.dsigma[i - 1]
    chain = enumerate_chain_sigma(data, i).weights
    m1 = m % d
    return greedy_reduced(
        chain,
        d,
        m,
        mu,
        lambda lvl: pplus_sigma(data, i, lvl),
        data.g0.fundamental(i, m1) if m1 else data.g0.zero(),
    )


def grade_sigma(data: TwistedData, i: int, m: int, mu: Weight) -> int:
    return sum(reduced_expression_sigma(data, i, m, mu))


def graded_character_sigma(data: TwistedData, i: int, m: int) -> GradedCharacter:
    """All of twisted P+(i, m) grouped by grade; grade 0 is {m omega_i}."""
    buckets: dict[int, list[Weight]] = {}
    for mu in sorted(pplus_sigma(data, i, m)):
        buckets.setdefault(grade_sigma(data, i, m, mu), []).append(mu)
    gc = GradedCharacter(
        tuple((s, tuple(sorted(ws))) for s, ws in sorted(buckets.items()))
    )
    if gc.piece(0) != {data.g0.fundamental(i, m): 1}:
        raise TheoremCheckError(f"grade 0 of twisted ({i}, {m}) is {gc.piece(0)}")
    total = sum(len(ws) for _, ws in gc.by_grade)
    if total != len(pplus_sigma(data, i, m)):
        raise TheoremCheckError("a weight received two grades")
    return gc


def ev_case_predicate(data: TwistedData, i: int) -> bool:
    """True iff the chain is a single weight, so every level stays in grade 0
    and the module is an evaluation module."""
    return enumerate_chain_sigma(data, i).k == 0


TwistedGradedCharacter = GradedCharacter
