"""Membership, contextuality measures, and minimal-cardinality decompositions.

Everything here is exact-rational.  The questions answered:

* is a box a convex mixture of the 64 deterministic noncontextual vertices
  (:func:`nc_membership`), and with how few of them (:func:`min_nc_dimension`);
* how much contextuality does a box carry (:func:`contextual_fraction`);
* how much of the maximally contextual parity box can be extracted with a
  noncontextual remainder (:func:`peres_strength`);
* the same minimal-cardinality question for Bell marginals over the 16 local
  deterministic boxes (:func:`min_lhv_dimension`), plus the threshold
  classifications :func:`is_supernoncontextual` (dimension > 4, the two-qubit
  global dimension) and :func:`is_superlocal` (dimension > 2, the single-qubit
  dimension).

Two hidden-variable semantics appear, both documented where used: the
minimal-dimension searches count deterministic vertices (the reading under
which every reference value in the test suite is computed), while
:func:`is_superlocal` decides via product response functions with arbitrary
local distributions, under which a hidden value may answer with a biased coin
(see :func:`product_lhv_terms`).  The two can differ: mixing is free for
product responses but costs extra hidden values in the deterministic model.

The subset searches are exhaustive with two exact accelerations: a coverage
presolve (every deterministic vertex puts mass on exactly one cell per
context, so a feasible support must jointly cover every positive cell of the
target — a combinatorial infeasibility proof for everything smaller), and a
Caratheodory cap (no minimal decomposition can need more than the affine
dimension of the candidate hull plus one).
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import NamedTuple, Sequence

from .boxes import peres_box
from .errors import (
    BoxParseError,
    Inconclusive,
    NotDecomposable,
    NotLocal,
    NotNoncontextual,
)
from .exactlp import INFEASIBLE, OPTIMAL, LinearProgram, solve
from .scenario import (
    BELL_SETTINGS,
    BellMarginal,
    Box,
    CONTEXT_IDS,
    bell_correlator,
    bell_single,
    format_rational,
    validate_bell_marginal,
    validate_box,
)
from .vertices import (
    DetBoxId,
    LocalDetBoxId,
    det_box,
    enumerate_local_vertices,
    enumerate_nc_vertices,
    local_det_box,
    parse_det_label,
    parse_local_label,
)

NC_VERTEX_SET = "NC-64"
LHV_VERTEX_SET = "LHV-16"

EXACT = "exact"
LOWER_BOUND_ONLY = "lower-bound-only"

#: Default cap on subsets enumerated per search; env BOXLAB_BUDGET overrides.
DEFAULT_BUDGET = 2_000_000

#: Global quantum dimensions the threshold classifications compare against.
GLOBAL_QUANTUM_DIM = 4
LOCAL_QUANTUM_DIM = 2

_ZERO = Fraction(0)
_ONE = Fraction(1)


def _budget_value(budget: int | None) -> int:
    if budget is not None:
        return int(budget)
    env = os.environ.get("BOXLAB_BUDGET")
    if env:
        return int(env)
    return DEFAULT_BUDGET


# ---------------------------------------------------------------------------
# Decompositions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Decomposition:
    """Convex mixture of deterministic vertices equal to a target exactly.

    ``vertex_set`` is :data:`NC_VERTEX_SET` (terms keyed by
    :class:`~boxlab.vertices.DetBoxId`) or :data:`LHV_VERTEX_SET`
    (:class:`~boxlab.vertices.LocalDetBoxId`).  Build instances through
    :func:`nc_decomposition` / :func:`lhv_decomposition`, which check that
    weights are positive, sum to one, and reconstruct the target exactly.
    """

    vertex_set: str
    terms: tuple[tuple[DetBoxId | LocalDetBoxId, Fraction], ...]

    @property
    def size(self) -> int:
        return len(self.terms)

    def support(self) -> tuple[DetBoxId | LocalDetBoxId, ...]:
        return tuple(vid for vid, _ in self.terms)

    def reconstruct(self) -> Box | BellMarginal:
        if self.vertex_set == NC_VERTEX_SET:
            return _mix_nc(self.terms)
        return _mix_lhv(self.terms)


def _mix_nc(terms) -> Box:
    vectors = [list(dist) for dist in (
        [_ZERO] * 4, [_ZERO] * 8, [_ZERO] * 8, [_ZERO] * 4, [_ZERO] * 4)]
    for vid, weight in terms:
        vertex = det_box(vid)
        for i, dist in enumerate(vertex.contexts):
            row = vectors[i]
            for j, p in enumerate(dist):
                if p:
                    row[j] += weight * p
    return Box(tuple(tuple(row) for row in vectors))


def _mix_lhv(terms) -> BellMarginal:
    vectors = [[_ZERO] * 4 for _ in range(4)]
    for vid, weight in terms:
        vertex = local_det_box(vid)
        for i, dist in enumerate(vertex.dists):
            for j, p in enumerate(dist):
                if p:
                    vectors[i][j] += weight * p
    return BellMarginal(tuple(tuple(row) for row in vectors))


def _checked_terms(terms) -> tuple:
    cleaned = tuple((vid, Fraction(w)) for vid, w in terms)
    for vid, weight in cleaned:
        if weight <= 0:
            raise ValueError(f"nonpositive weight {weight} on {vid.label}")
    total = sum((w for _, w in cleaned), _ZERO)
    if total != 1:
        raise ValueError(f"weights sum to {total}, expected 1")
    if len({vid for vid, _ in cleaned}) != len(cleaned):
        raise ValueError("duplicate vertex in decomposition")
    return cleaned


def nc_decomposition(terms, target: Box) -> Decomposition:
    """Validated decomposition of ``target`` over the 64-vertex set."""
    dec = Decomposition(NC_VERTEX_SET, _checked_terms(terms))
    if dec.reconstruct().contexts != target.contexts:
        raise ValueError("decomposition does not reconstruct the target box")
    return dec


def lhv_decomposition(terms, target: BellMarginal) -> Decomposition:
    """Validated decomposition of ``target`` over the 16 local vertices."""
    dec = Decomposition(LHV_VERTEX_SET, _checked_terms(terms))
    if dec.reconstruct().dists != target.dists:
        raise ValueError("decomposition does not reconstruct the target marginal")
    return dec


def decomposition_to_json(dec: Decomposition) -> list[dict]:
    """Serialize to ``[{"vertex": label, "weight": "num/den"}, ...]``."""
    return [
        {"vertex": vid.label, "weight": format_rational(weight)}
        for vid, weight in dec.terms
    ]


def decomposition_from_json(data, target: Box | BellMarginal) -> Decomposition:
    """Parse the JSON list form and validate against ``target``."""
    if not isinstance(data, Sequence) or isinstance(data, (str, bytes)):
        raise BoxParseError("decomposition JSON must be a list of terms")
    terms = []
    for item in data:
        try:
            label, weight = item["vertex"], item["weight"]
        except (TypeError, KeyError):
            raise BoxParseError(
                "each term needs 'vertex' and 'weight' keys") from None
        from .scenario import as_rational
        if isinstance(target, Box):
            terms.append((parse_det_label(label), as_rational(weight)))
        else:
            terms.append((parse_local_label(label), as_rational(weight)))
    if isinstance(target, Box):
        return nc_decomposition(terms, target)
    return lhv_decomposition(terms, target)


# ---------------------------------------------------------------------------
# Cell tables: targets and vertices as vectors over positive cells
# ---------------------------------------------------------------------------

class _CellTable(NamedTuple):
    """A target and its support-filtered candidates in shared cell indexing.

    ``rhs[r]`` is the target's value at support cell ``r``; ``colbits[j]``
    has bit ``r`` set iff candidate ``j`` puts its mass on cell ``r``.
    Candidates whose support leaves the target's support cannot carry weight
    in any nonnegative decomposition (the target is 0 where they are 1), so
    dropping them is exact.
    """

    ids: tuple
    colbits: tuple[int, ...]
    rhs: tuple[Fraction, ...]
    full_mask: int
    context_cell_counts: tuple[int, ...]


def _box_cell_table(box: Box) -> _CellTable:
    cell_index: dict[tuple[int, int], int] = {}
    rhs: list[Fraction] = []
    counts = []
    for i, dist in enumerate(box.contexts):
        count = 0
        for j, p in enumerate(dist):
            if p > 0:
                cell_index[(i, j)] = len(rhs)
                rhs.append(p)
                count += 1
        counts.append(count)
    ids, colbits = [], []
    for vid, vertex in enumerate_nc_vertices():
        bits = 0
        for i, dist in enumerate(vertex.contexts):
            j = dist.index(_ONE)
            r = cell_index.get((i, j))
            if r is None:
                break
            bits |= 1 << r
        else:
            ids.append(vid)
            colbits.append(bits)
    return _CellTable(tuple(ids), tuple(colbits), tuple(rhs),
                      (1 << len(rhs)) - 1, tuple(counts))


def _marginal_cell_table(marginal: BellMarginal) -> _CellTable:
    cell_index: dict[tuple[int, int], int] = {}
    rhs: list[Fraction] = []
    counts = []
    for i, dist in enumerate(marginal.dists):
        count = 0
        for j, p in enumerate(dist):
            if p > 0:
                cell_index[(i, j)] = len(rhs)
                rhs.append(p)
                count += 1
        counts.append(count)
    ids, colbits = [], []
    for vid, vertex in enumerate_local_vertices():
        bits = 0
        for i, dist in enumerate(vertex.dists):
            j = dist.index(_ONE)
            r = cell_index.get((i, j))
            if r is None:
                break
            bits |= 1 << r
        else:
            ids.append(vid)
            colbits.append(bits)
    return _CellTable(tuple(ids), tuple(colbits), tuple(rhs),
                      (1 << len(rhs)) - 1, tuple(counts))


def _solve_cell_system(columns: Sequence[int], table: _CellTable):
    """Exact nonnegative solution of the subset's cell equations, or None.

    Solves {q >= 0, sum_j q_j = 1, per-cell sums = rhs} by incremental
    Gauss-Jordan elimination (abort at the first inconsistent row); when the
    reduced system is underdetermined, falls back to an exact phase-1 LP.
    """
    k = len(columns)
    n_rows = len(table.rhs)
    # Gauss-Jordan on augmented rows [coeffs..., rhs].
    pivots: list[tuple[int, list]] = []

    def feed(aug: list) -> bool:
        """Reduce one augmented equation; False signals inconsistency."""
        for pc, prow in pivots:
            f = aug[pc]
            if f:
                for idx in range(k + 1):
                    if prow[idx]:
                        aug[idx] -= f * prow[idx]
        pivot_col = next((idx for idx in range(k) if aug[idx]), None)
        if pivot_col is None:
            return aug[k] == 0
        if aug[pivot_col] != 1:
            inv = Fraction(1, 1) / aug[pivot_col]
            aug = [c * inv for c in aug]
        for pc, prow in pivots:
            f = prow[pivot_col]
            if f:
                for idx in range(k + 1):
                    if aug[idx]:
                        prow[idx] -= f * aug[idx]
        pivots.append((pivot_col, aug))
        return True

    for r in range(n_rows):
        coeffs = [(table.colbits[c] >> r) & 1 for c in columns]
        coeffs.append(table.rhs[r])
        if not feed(coeffs):
            return None
    if not feed([1] * k + [_ONE]):
        return None

    if len(pivots) == k:
        q = [_ZERO] * k
        for pc, prow in pivots:
            q[pc] = prow[k]
        return q if all(v >= 0 for v in q) else None

    # Underdetermined: exact feasibility LP over the same equations.
    eq_rows = []
    eq_rhs = []
    for r in range(n_rows):
        eq_rows.append([Fraction((table.colbits[c] >> r) & 1) for c in columns])
        eq_rhs.append(table.rhs[r])
    eq_rows.append([_ONE] * k)
    eq_rhs.append(_ONE)
    result = solve(LinearProgram(n=k, objective=[_ZERO] * k, maximize=False,
                                 eq_rows=eq_rows, eq_rhs=eq_rhs))
    return list(result.x) if result.status == OPTIMAL else None


# ---------------------------------------------------------------------------
# Membership and measures
# ---------------------------------------------------------------------------

def nc_membership(box: Box) -> tuple[bool, Decomposition | None]:
    """Whether the box is a convex mixture of the 64 deterministic vertices.

    Decided by exact LP feasibility; on success returns one witnessing
    decomposition (deterministic: fixed pivot rule and candidate order).
    """
    table = _box_cell_table(box)
    m = len(table.ids)
    if m == 0:
        return (False, None)
    n_rows = len(table.rhs)
    eq_rows = [[Fraction((table.colbits[j] >> r) & 1) for j in range(m)]
               for r in range(n_rows)]
    eq_rhs = list(table.rhs)
    eq_rows.append([_ONE] * m)
    eq_rhs.append(_ONE)
    result = solve(LinearProgram(n=m, objective=[_ZERO] * m, maximize=False,
                                 eq_rows=eq_rows, eq_rhs=eq_rhs))
    if result.status != OPTIMAL:
        return (False, None)
    terms = [(table.ids[j], result.x[j]) for j in range(m) if result.x[j] > 0]
    return (True, nc_decomposition(terms, box))


class ContextualFraction(NamedTuple):
    """``ncf`` + ``cost`` = 1; ``witness`` is the optimal subnormalized
    mixture of vertices fitting under the box entrywise (weights sum to
    ``ncf``)."""

    ncf: Fraction
    cost: Fraction
    witness: tuple[tuple[DetBoxId, Fraction], ...]


def contextual_fraction(box: Box) -> ContextualFraction:
    """Noncontextual fraction and contextuality cost of a box.

    Maximizes the total weight of a subnormalized vertex mixture bounded by
    the box entrywise; cost is one minus that optimum.  When the optimum is
    below one, the rescaled remainder is itself a valid box (asserted).
    """
    table = _box_cell_table(box)
    m = len(table.ids)
    if m == 0:
        ncf = _ZERO
        witness: tuple = ()
    else:
        n_rows = len(table.rhs)
        le_rows = [[Fraction((table.colbits[j] >> r) & 1) for j in range(m)]
                   for r in range(n_rows)]
        result = solve(LinearProgram(n=m, objective=[_ONE] * m, maximize=True,
                                     le_rows=le_rows, le_rhs=list(table.rhs)))
        assert result.status == OPTIMAL
        ncf = result.value
        witness = tuple((table.ids[j], result.x[j]) for j in range(m)
                        if result.x[j] > 0)
    cost = max(_ZERO, 1 - ncf)
    if ncf < 1:
        _assert_valid_remainder(box, witness, ncf)
    return ContextualFraction(ncf, cost, witness)


def _assert_valid_remainder(box: Box, witness, ncf: Fraction) -> None:
    mix = _mix_nc(witness) if witness else Box(
        (tuple([_ZERO] * 4), tuple([_ZERO] * 8), tuple([_ZERO] * 8),
         tuple([_ZERO] * 4), tuple([_ZERO] * 4)))
    scale = 1 / (1 - ncf)
    remainder = [
        [(p - q) * scale for p, q in zip(box.contexts[i], mix.contexts[i])]
        for i in range(5)
    ]
    validate_box(remainder)  # raises if the remainder is not a valid box


class PeresStrength(NamedTuple):
    """Maximal extractable weight of the parity box, with the witnessing
    noncontextual remainder (None when the whole box is the parity box)."""

    value: Fraction
    residual: Decomposition | None


def peres_strength(box: Box) -> PeresStrength:
    """Largest p with box = p * (parity box) + (1-p) * (noncontextual box).

    Raises :class:`NotDecomposable` when no p in [0, 1] admits such a split
    (the box carries contextuality not aligned with the parity box and is not
    noncontextual either).
    """
    parity = peres_box()
    table = _box_cell_table(box)
    m = len(table.ids)
    # Support-filtered candidates are exact here too: on cells where the box
    # is 0, every term of the nonnegative combination must vanish.
    support_cell_index: dict[tuple[int, int], int] = {}
    for i, dist in enumerate(box.contexts):
        for j, p in enumerate(dist):
            if p > 0:
                support_cell_index[(i, j)] = len(support_cell_index)
    # One equation per cell where the box or the parity box is positive; a
    # cell with box 0 but parity box positive forces p = 0.
    rows: list[list[Fraction]] = []
    rhs: list[Fraction] = []
    for i in range(5):
        for j, p in enumerate(box.contexts[i]):
            pp = parity.contexts[i][j]
            if p == 0 and pp == 0:
                continue
            row = [pp]
            rbit = support_cell_index.get((i, j))
            for cand in range(m):
                if rbit is not None and (table.colbits[cand] >> rbit) & 1:
                    row.append(_ONE)
                else:
                    row.append(_ZERO)
            rows.append(row)
            rhs.append(p)
    rows.append([_ONE] * (m + 1))
    rhs.append(_ONE)
    objective = [_ONE] + [_ZERO] * m
    result = solve(LinearProgram(n=m + 1, objective=objective, maximize=True,
                                 eq_rows=rows, eq_rhs=rhs))
    if result.status == INFEASIBLE:
        raise NotDecomposable(
            "box is not a mixture of the parity box with a noncontextual box")
    assert result.status == OPTIMAL
    ps = result.value
    if ps == 1:
        return PeresStrength(ps, None)
    scale = 1 / (1 - ps)
    terms = [(table.ids[j], result.x[j + 1] * scale) for j in range(m)
             if result.x[j + 1] > 0]
    residual_box = _mix_nc(terms)
    return PeresStrength(ps, nc_decomposition(terms, residual_box))


# ---------------------------------------------------------------------------
# Minimal-cardinality searches
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DimensionResult:
    """Outcome of a minimal-cardinality search.

    With status :data:`EXACT`, ``dimension`` is the true minimum and
    ``decomposition`` witnesses it (lexicographically smallest support of
    that size).  With status :data:`LOWER_BOUND_ONLY`, every support of size
    up to ``dimension`` was refuted before the node budget would have been
    exceeded, so the true minimum is at least ``dimension + 1`` and
    ``decomposition`` is None.
    """

    dimension: int
    status: str
    decomposition: Decomposition | None
    filtered_count: int
    nodes_used: int


_dimension_cache: dict[tuple, DimensionResult] = {}


def _min_subset_search(table: _CellTable, budget: int, kind: str,
                       make_decomposition) -> DimensionResult:
    n = len(table.ids)
    rank = _table_rank(table)
    cap = min(n, rank + 1)
    # Every vertex covers exactly one cell per context, so a feasible support
    # needs at least as many vertices as the largest per-context cell count.
    k_floor = max(table.context_cell_counts)
    nodes = 0
    indices = range(n)
    for k in range(k_floor, cap + 1):
        if nodes + comb(n, k) > budget:
            return DimensionResult(k - 1, LOWER_BOUND_ONLY, None, n, nodes)
        for subset in itertools.combinations(indices, k):
            nodes += 1
            mask = 0
            for j in subset:
                mask |= table.colbits[j]
            if mask != table.full_mask:
                continue
            q = _solve_cell_system(subset, table)
            if q is None:
                continue
            assert all(w > 0 for w in q), \
                "smaller support escaped the refuted levels"
            terms = [(table.ids[j], w) for j, w in zip(subset, q)]
            return DimensionResult(k, EXACT, make_decomposition(terms), n,
                                   nodes)
    raise AssertionError(
        f"no decomposition within the Caratheodory cap {cap} ({kind})")


def _table_rank(table: _CellTable) -> int:
    """Exact affine rank of the candidate set (dimension of its hull)."""
    n = len(table.ids)
    if n == 0:
        return 0
    n_rows = len(table.rhs)
    base = [(table.colbits[0] >> r) & 1 for r in range(n_rows)]
    rows = []
    for j in range(1, n):
        rows.append([((table.colbits[j] >> r) & 1) - base[r]
                     for r in range(n_rows)])
    return _exact_rank(rows)


def _exact_rank(rows: list[list]) -> int:
    pivots: list[tuple[int, list]] = []
    width = len(rows[0]) if rows else 0
    for row in rows:
        row = [Fraction(v) for v in row]
        for pc, prow in pivots:
            f = row[pc]
            if f:
                for idx in range(width):
                    if prow[idx]:
                        row[idx] -= f * prow[idx]
        pivot_col = next((idx for idx in range(width) if row[idx]), None)
        if pivot_col is None:
            continue
        inv = 1 / row[pivot_col]
        pivots.append((pivot_col, [v * inv for v in row]))
    return len(pivots)


def min_nc_dimension(box: Box, budget: int | None = None) -> DimensionResult:
    """Minimal number of deterministic vertices mixing to the box.

    Exhaustive over increasing support sizes within the support-filtered
    candidate set; raises :class:`NotNoncontextual` for boxes outside the
    noncontextual polytope.  ``budget`` caps the number of enumerated
    subsets (default :data:`DEFAULT_BUDGET`, env ``BOXLAB_BUDGET``).
    """
    budget = _budget_value(budget)
    key = ("nc", box.contexts, budget)
    cached = _dimension_cache.get(key)
    if cached is not None:
        return cached
    member, _ = nc_membership(box)
    if not member:
        raise NotNoncontextual("box is outside the noncontextual polytope")
    table = _box_cell_table(box)
    result = _min_subset_search(
        table, budget, "nc", lambda terms: nc_decomposition(terms, box))
    _dimension_cache[key] = result
    return result


def is_supernoncontextual(box: Box, budget: int | None = None
                          ) -> tuple[bool, DimensionResult]:
    """Whether every noncontextual model needs more than 4 hidden values.

    4 is the global two-qubit dimension.  Raises :class:`Inconclusive` when
    the budget-capped search refuted only supports smaller than 4.
    """
    result = min_nc_dimension(box, budget)
    if result.status == EXACT:
        return (result.dimension > GLOBAL_QUANTUM_DIM, result)
    if result.dimension >= GLOBAL_QUANTUM_DIM:
        return (True, result)
    raise Inconclusive(
        f"search refuted supports only up to size {result.dimension} "
        f"(< {GLOBAL_QUANTUM_DIM}) before exhausting its budget")


def _bell_local_membership(marginal: BellMarginal
                           ) -> tuple[bool, Decomposition | None]:
    table = _marginal_cell_table(marginal)
    m = len(table.ids)
    if m == 0:
        return (False, None)
    n_rows = len(table.rhs)
    eq_rows = [[Fraction((table.colbits[j] >> r) & 1) for j in range(m)]
               for r in range(n_rows)]
    eq_rhs = list(table.rhs)
    eq_rows.append([_ONE] * m)
    eq_rhs.append(_ONE)
    result = solve(LinearProgram(n=m, objective=[_ZERO] * m, maximize=False,
                                 eq_rows=eq_rows, eq_rhs=eq_rhs))
    if result.status != OPTIMAL:
        return (False, None)
    terms = [(table.ids[j], result.x[j]) for j in range(m) if result.x[j] > 0]
    return (True, lhv_decomposition(terms, marginal))


def bell_local_membership(marginal: BellMarginal
                          ) -> tuple[bool, Decomposition | None]:
    """Whether the marginal mixes from the 16 local deterministic boxes."""
    return _bell_local_membership(marginal)


def min_lhv_dimension(marginal: BellMarginal,
                      budget: int | None = None) -> DimensionResult:
    """Minimal number of local deterministic boxes mixing to the marginal.

    Raises :class:`NotLocal` for marginals outside the local polytope.
    """
    budget = _budget_value(budget)
    key = ("lhv", marginal.dists, budget)
    cached = _dimension_cache.get(key)
    if cached is not None:
        return cached
    member, _ = _bell_local_membership(marginal)
    if not member:
        raise NotLocal("marginal is outside the local polytope")
    table = _marginal_cell_table(marginal)
    result = _min_subset_search(
        table, budget, "lhv",
        lambda terms: lhv_decomposition(terms, marginal))
    _dimension_cache[key] = result
    return result


# ---------------------------------------------------------------------------
# Product-response models (arbitrary local distributions per hidden value)
# ---------------------------------------------------------------------------

class ProductTerm(NamedTuple):
    """One hidden value of a product-response model: a weight and the two
    single-observable expectation pairs (settings 0 and 1, +-1 convention)."""

    weight: Fraction
    alice: tuple[Fraction, Fraction]
    bob: tuple[Fraction, Fraction]


def product_terms_marginal(terms: Sequence[ProductTerm]) -> BellMarginal:
    """The Bell marginal generated by a product-response model."""
    dists = []
    for x, y in BELL_SETTINGS:
        cells = [_ZERO] * 4
        for weight, alice, bob in terms:
            for a in (0, 1):
                pa = (1 + (1 - 2 * a) * alice[x]) / 2
                for b in (0, 1):
                    pb = (1 + (1 - 2 * b) * bob[y]) / 2
                    cells[2 * a + b] += weight * pa * pb
        dists.append(cells)
    return validate_bell_marginal(dists)


def product_lhv_terms(marginal: BellMarginal
                      ) -> tuple[ProductTerm, ...] | None:
    """An exact product-response model with at most two hidden values, or None.

    A marginal is determined by the single-observable expectations
    alpha_x, beta_y and the correlators K_xy.  Any n-value product model has
    cross-covariance matrix C = K - alpha beta^T of rank at most n - 1, so:
    C = 0 means the marginal is the product of its singles (one term);
    rank-1 C admits a two-term model iff the factor caps below are
    compatible; rank-2 C needs at least three hidden values (returns None).

    For C = u v^T the two-term models are parameterized by p', q' > 0 with
    the term expectations alpha + p'u, alpha - q'u, beta + v/q', beta - v/p';
    boundedness by 1 gives per-component caps P, Q on p', q' and R, S on
    1/q', 1/p', and a model exists iff P*S >= 1 and Q*R >= 1.
    """
    alpha = (bell_single(marginal, "A", 0), bell_single(marginal, "A", 1))
    beta = (bell_single(marginal, "B", 0), bell_single(marginal, "B", 1))
    C = [[bell_correlator(marginal, x, y) - alpha[x] * beta[y]
          for y in (0, 1)] for x in (0, 1)]
    if all(C[x][y] == 0 for x in (0, 1) for y in (0, 1)):
        return (ProductTerm(_ONE, alpha, beta),)
    if C[0][0] * C[1][1] - C[0][1] * C[1][0] != 0:
        return None
    # rank one: factor C = u v^T
    i0 = 0 if (C[0][0] or C[0][1]) else 1
    v = (C[i0][0], C[i0][1])
    j0 = 0 if v[0] else 1
    u = (C[0][j0] / v[j0], C[1][j0] / v[j0])

    def cap(direction, singles, sign):
        values = []
        for comp, single in zip(direction, singles):
            if comp == 0:
                continue
            mag = abs(comp)
            sgn = 1 if comp > 0 else -1
            values.append((1 + sign * sgn * single) / mag)
        return min(values)

    P = cap(u, alpha, -1)   # p' <= P keeps alpha + p'u in [-1, 1]
    Q = cap(u, alpha, +1)   # q' <= Q keeps alpha - q'u in [-1, 1]
    R = cap(v, beta, -1)    # 1/q' <= R keeps beta + v/q' in [-1, 1]
    S = cap(v, beta, +1)    # 1/p' <= S keeps beta - v/p' in [-1, 1]
    if P * S < 1 or Q * R < 1:
        return None
    p_prime, q_prime = P, Q
    t = q_prime / (p_prime + q_prime)
    term1 = ProductTerm(
        t,
        (alpha[0] + p_prime * u[0], alpha[1] + p_prime * u[1]),
        (beta[0] + v[0] / q_prime, beta[1] + v[1] / q_prime),
    )
    term2 = ProductTerm(
        1 - t,
        (alpha[0] - q_prime * u[0], alpha[1] - q_prime * u[1]),
        (beta[0] - v[0] / p_prime, beta[1] - v[1] / p_prime),
    )
    model = (term1, term2)
    assert product_terms_marginal(model).dists == marginal.dists
    return model


def is_superlocal(marginal: BellMarginal, budget: int | None = None
                  ) -> tuple[bool, DimensionResult]:
    """Whether every product-response model needs more than 2 hidden values.

    2 is the single-qubit local dimension.  The boolean uses product
    response functions (a hidden value may answer with arbitrary local
    distributions); the returned :class:`DimensionResult` reports the
    deterministic-vertex model, whose minimum can be larger because mixing
    costs extra deterministic hidden values.  Raises :class:`NotLocal` for
    nonlocal marginals.
    """
    result = min_lhv_dimension(marginal, budget)
    return (product_lhv_terms(marginal) is None, result)


# ---------------------------------------------------------------------------
# Polytope geometry
# ---------------------------------------------------------------------------

@lru_cache(maxsize=1)
def nc_affine_dimension() -> int:
    """Affine dimension of the noncontextual polytope (exact rank)."""
    vertices = [vertex.entries() for _, vertex in enumerate_nc_vertices()]
    base = vertices[0]
    rows = [[int(a - b) for a, b in zip(v, base)] for v in vertices[1:]]
    return _exact_rank(rows)


@lru_cache(maxsize=1)
def bell_affine_dimension() -> int:
    """Affine dimension of the Bell-local polytope (exact rank)."""
    vertices = [tuple(p for dist in v.dists for p in dist)
                for _, v in enumerate_local_vertices()]
    base = vertices[0]
    rows = [[int(a - b) for a, b in zip(v, base)] for v in vertices[1:]]
    return _exact_rank(rows)
