"""Existence of a joint distribution matching fixed one- and two-time data.

Two independent routes answer the same question:

* a linear-feasibility oracle (``lp_feasible``) over the 2^n outcome
  probabilities, built on the in-package phase-1 simplex; and
* constructive solvers that assemble an explicit distribution: the
  three-time coefficient interval (``d_interval``), the free-correlator
  interval of the chain recursion (``c1n_interval``), the product
  construction over chain data (``fine_build``), and the symmetric
  even-coefficient search for complete correlator sets
  (``symmetric_e_feasible``).

``conjecture_check`` samples random data, evaluates the candidate
sufficient-condition set for n = 5 (two-time, three-time and n-gon
families) against the oracle, and reports disagreements.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache, reduce
from itertools import combinations
from typing import Mapping, Sequence

import numpy as np

from .core import (
    CorrelatorSet,
    DimensionError,
    JointDistribution,
    MarginalError,
    MomentSpec,
    NONNEGATIVITY_TOL,
    OracleError,
    ValidationError,
    _drift_corrected,
    chain_pairs,
    complete_pairs,
    distribution_from_moments,
    pairwise_probability,
)
from .inequalities import (
    InequalityFamily,
    LinearInequality,
    coefficient_arrays,
    lg_family,
    ngon_family,
    three_time_complete,
    two_time_complete,
)
from .simplex import FEASIBILITY_TOL, solve_phase1, solve_phase1_exact

ORACLE_MAX_TIMES = 12
EXACT_MAX_TIMES = 6
BOUNDARY_TOL = 1e-7


@dataclass(frozen=True)
class Interval:
    """A closed interval [lo, hi]; empty when lo exceeds hi beyond tolerance."""

    lo: float
    hi: float

    EMPTY_TOL = 1e-9

    @property
    def is_empty(self) -> bool:
        return self.lo > self.hi + self.EMPTY_TOL

    def intersect(self, other: Interval) -> Interval:
        return Interval(max(self.lo, other.lo), min(self.hi, other.hi))

    def midpoint(self) -> float:
        return 0.5 * (self.lo + self.hi)

    def contains(self, x: float, tol: float = EMPTY_TOL) -> bool:
        return self.lo - tol <= x <= self.hi + tol


@dataclass(frozen=True)
class FeasibilityVerdict:
    """Outcome of a feasibility question, with a certificate when positive.

    ``violated`` names family members (by label) that explain a negative
    verdict when a constructive solver can point at them; the LP oracle
    leaves it as None.  ``phase1_objective`` is the oracle's residual
    infeasibility measure when available (0 means feasible outright).
    """

    feasible: bool
    certificate: JointDistribution | None = None
    violated: tuple[str, ...] | None = None
    phase1_objective: float | None = None

    def __post_init__(self) -> None:
        if self.feasible and self.certificate is None:
            raise ValidationError("a feasible verdict must carry a certificate")
        if self.violated is not None:
            object.__setattr__(self, "violated", tuple(self.violated))


@dataclass(frozen=True)
class ConjectureReport:
    """Tallies of condition-set vs oracle agreement over random samples.

    The four-way tally partitions all samples.  ``boundary`` counts samples
    whose smallest condition slack or oracle residual sits inside the
    knife-edge band; those are excluded from the counterexample list.
    Counterexamples are recorded verbatim as moment data.
    """

    n: int
    mode: str
    samples: int
    seed: int
    condition_holds_and_feasible: int
    condition_holds_and_infeasible: int
    condition_fails_and_feasible: int
    condition_fails_and_infeasible: int
    boundary: int
    counterexamples: tuple[MomentSpec, ...] = field(default_factory=tuple)

    def __post_init__(self) -> None:
        four_way = (
            self.condition_holds_and_feasible
            + self.condition_holds_and_infeasible
            + self.condition_fails_and_feasible
            + self.condition_fails_and_infeasible
        )
        if four_way != self.samples:
            raise ValidationError(f"four-way tally {four_way} != samples {self.samples}")
        object.__setattr__(self, "counterexamples", tuple(self.counterexamples))

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "mode": self.mode,
            "samples": self.samples,
            "seed": self.seed,
            "condition_holds_and_feasible": self.condition_holds_and_feasible,
            "condition_holds_and_infeasible": self.condition_holds_and_infeasible,
            "condition_fails_and_feasible": self.condition_fails_and_feasible,
            "condition_fails_and_infeasible": self.condition_fails_and_infeasible,
            "boundary": self.boundary,
            "counterexamples": [spec.to_json_dict() for spec in self.counterexamples],
        }


# ---------------------------------------------------------------------------
# the linear-feasibility oracle
# ---------------------------------------------------------------------------

@lru_cache(maxsize=128)
def _constraint_rows(n: int, pairs: tuple[tuple[int, int], ...]) -> np.ndarray:
    """Rows of the moment-matching system over the 2^n outcome columns:
    normalization, then one sign row per time, then one per fixed pair."""
    idx = np.arange(1 << n)
    rows = [np.ones(1 << n)]
    for i in range(1, n + 1):
        rows.append(1.0 - 2.0 * ((idx >> (i - 1)) & 1).astype(np.float64))
    for i, j in pairs:
        parity = ((idx >> (i - 1)) & 1) ^ ((idx >> (j - 1)) & 1)
        rows.append(1.0 - 2.0 * parity.astype(np.float64))
    a = np.vstack(rows)
    a.setflags(write=False)
    return a


def _validate_b(b: Sequence[float] | None, n: int) -> np.ndarray:
    if b is None:
        return np.zeros(n)
    arr = np.asarray(b, dtype=np.float64)
    if arr.shape != (n,):
        raise DimensionError(f"expected {n} one-time averages, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)) or np.any(np.abs(arr) > 1.0):
        raise ValidationError("one-time averages must lie in [-1, 1]")
    return arr


def lp_feasible(
    b: Sequence[float] | None,
    correlators: CorrelatorSet,
    *,
    exact: bool = False,
) -> FeasibilityVerdict:
    """Decide whether some distribution matches the fixed averages and
    correlators, by phase-1 simplex over the 2^n outcome probabilities.

    ``b`` fixes every one-time average (None means all zero).  The stored
    correlator keys are the fixed pairs; absent pairs are unconstrained.
    ``exact=True`` switches to rational arithmetic (n <= 6), which settles
    verdicts on knife-edge inputs.
    """
    n = correlators.n
    if n > ORACLE_MAX_TIMES:
        raise DimensionError(f"oracle handles n <= {ORACLE_MAX_TIMES}, got {n}")
    bvec = _validate_b(b, n)
    pairs = tuple(sorted(correlators.entries))
    rows = _constraint_rows(n, pairs)
    rhs = np.concatenate(([1.0], bvec, [correlators.entries[p] for p in pairs]))

    if exact:
        if n > EXACT_MAX_TIMES:
            raise DimensionError(f"exact mode handles n <= {EXACT_MAX_TIMES}, got {n}")
        result = solve_phase1_exact(rows.astype(int).tolist(), [Fraction(v) for v in rhs])
    else:
        result = solve_phase1(rows, rhs)

    if not result.feasible:
        return FeasibilityVerdict(False, phase1_objective=result.objective)

    x = _drift_corrected(result.x)
    residual = float(np.abs(rows @ x - rhs).max())
    if residual > FEASIBILITY_TOL:
        raise OracleError(f"oracle certificate residual {residual:.3e} above tolerance")
    certificate = JointDistribution(n, x)
    if not certificate.is_nonnegative():
        raise OracleError("oracle produced a negative certificate")
    return FeasibilityVerdict(True, certificate, phase1_objective=result.objective)


def lp_feasible_from_spec(spec: MomentSpec, *, exact: bool = False) -> FeasibilityVerdict:
    """Oracle entry point for moment data holding singletons and pairs only."""
    if spec.max_order() > 2:
        raise ValidationError("oracle input must fix only one- and two-time moments")
    b = [spec.b(i) for i in range(1, spec.n + 1)]
    correlators = CorrelatorSet(spec.n, spec.pair_values())
    return lp_feasible(b, correlators, exact=exact)


# ---------------------------------------------------------------------------
# interval solvers
# ---------------------------------------------------------------------------

def _check_pair_nonneg(b_i: float, b_j: float, c_ij: float, pair: tuple[int, int]) -> None:
    for s_i in (1, -1):
        for s_j in (1, -1):
            if pairwise_probability(b_i, b_j, c_ij, s_i, s_j) < -NONNEGATIVITY_TOL:
                raise MarginalError(f"pair probability for {pair} at signs ({s_i},{s_j}) is negative")


def d_interval(spec: MomentSpec) -> Interval:
    """Admissible range of the triple coefficient for a three-time block.

    With A(s) = 1 + sum B_i s_i + sum C_ij s_i s_j, outcomes with even sign
    product give lower bounds -A(s) and odd ones give upper bounds A(s);
    the result is additionally intersected with [-1, 1].  Requires the
    three pair probabilities to be non-negative.
    """
    if spec.n != 3:
        raise DimensionError(f"d_interval needs n=3, got n={spec.n}")
    b = [spec.b(i) for i in (1, 2, 3)]
    c = {pair: spec.c(*pair) for pair in ((1, 2), (1, 3), (2, 3))}
    for (i, j), value in c.items():
        _check_pair_nonneg(b[i - 1], b[j - 1], value, (i, j))

    lower, upper = -1.0, 1.0
    for mask in range(8):
        s = [1 if not (mask >> k) & 1 else -1 for k in range(3)]
        a_val = 1.0 + math.fsum(
            [b[0] * s[0], b[1] * s[1], b[2] * s[2]]
            + [c[(i, j)] * s[i - 1] * s[j - 1] for (i, j) in c]
        )
        if s[0] * s[1] * s[2] == 1:
            lower = max(lower, -a_val)
        else:
            upper = min(upper, a_val)
    return Interval(lower, upper)


def _parity_max(values: Sequence[float], parity: int) -> float:
    """Max of sum a_k v_k over a_k = +-1 with the minus-sign count of the
    given parity; flipping the smallest-magnitude entry pays for a parity
    mismatch."""
    total = math.fsum(abs(v) for v in values)
    negatives = sum(1 for v in values if v < 0)
    if negatives % 2 == parity or any(v == 0.0 for v in values):
        return total
    return total - 2.0 * min(abs(v) for v in values)


def c1n_intervals(
    chain: Sequence[float],
    c_next: float,
    c_closure: float,
    b_first: float,
    b_last: float,
) -> tuple[Interval, Interval, Interval]:
    """The three bounds on the free closing correlator of a chain block.

    ``chain`` holds the fixed consecutive correlators C_12 .. C_{k-1,k} of
    the block whose closure C_1k is free; ``c_next`` and ``c_closure`` are
    the correlators C_{k,k+1} and C_{1,k+1} of the adjoining three-time
    block.  Returned in order: the chain-family bound, the three-time
    bound, and the pair-probability bound.
    """
    if len(chain) < 2:
        raise DimensionError("chain must fix at least two consecutive correlators")
    bound = float(len(chain) - 1)
    chain_iv = Interval(-bound + _parity_max(chain, 0), bound - _parity_max(chain, 1))
    three_iv = Interval(-1.0 + abs(c_next + c_closure), 1.0 - abs(c_next - c_closure))
    pair_iv = Interval(-1.0 + abs(b_first + b_last), 1.0 - abs(b_first - b_last))
    return chain_iv, three_iv, pair_iv


def c1n_interval(
    chain: Sequence[float],
    c_next: float,
    c_closure: float,
    b_first: float,
    b_last: float,
) -> Interval:
    """Intersection of the three bounds from ``c1n_intervals``."""
    return reduce(Interval.intersect, c1n_intervals(chain, c_next, c_closure, b_first, b_last))


# ---------------------------------------------------------------------------
# constructive solver over chain data
# ---------------------------------------------------------------------------

def _violated_chain_members(k: int, cvals: Mapping[tuple[int, int], float]) -> tuple[str, ...]:
    labels = []
    best_label, best_slack = "", -math.inf
    for member in lg_family(k).members:
        slack = math.fsum(coeff * cvals[pair] for pair, coeff in member.terms.items()) - member.bound
        if slack > best_slack:
            best_label, best_slack = member.label, slack
        if slack > 1e-12:
            labels.append(member.label)
    return tuple(labels) if labels else (best_label,)


def _violated_triple_members(
    n: int, i: int, j: int, k: int, c_ij: float, c_ik: float, c_jk: float
) -> tuple[str, ...]:
    labels = []
    best_label, best_slack = "", -math.inf
    for m in range(4):
        s_j = 1 if not m & 1 else -1
        s_k = 1 if not (m >> 1) & 1 else -1
        slack = -(s_j * c_ij + s_k * c_ik + s_j * s_k * c_jk) - 1.0
        pattern = "".join("+" if s > 0 else "-" for s in (1, s_j, s_k))
        label = f"three{n}:{i}.{j}.{k}:{pattern}"
        if slack > best_slack:
            best_label, best_slack = label, slack
        if slack > 1e-12:
            labels.append(label)
    return tuple(labels) if labels else (best_label,)


def fine_build(b: Sequence[float] | None, chain: CorrelatorSet) -> FeasibilityVerdict:
    """Build a joint distribution matching chain-pattern data by the product
    construction, or report the violated family members.

    Working down from the closing block, each free correlator C_{1k} is
    fixed at the midpoint of its admissible interval; each three-time block
    then gets its triple coefficient from the midpoint of ``d_interval``,
    and the blocks multiply into the joint with the 0/0 -> 0 convention.
    The verdict is feasible exactly when every interval on the way is
    non-empty, and the certificate reproduces all fixed marginals.
    """
    n = chain.n
    if n < 3:
        raise DimensionError(f"fine_build needs n >= 3, got {n}")
    if frozenset(chain.entries) != frozenset(chain_pairs(n)):
        raise ValidationError("fine_build requires the chain correlator pattern")
    bvec = _validate_b(b, n)
    for (i, j), value in chain.sorted_items():
        _check_pair_nonneg(bvec[i - 1], bvec[j - 1], value, (i, j))

    c_in = dict(chain.entries)
    chosen: dict[int, float] = {}
    for k in range(n - 1, 2, -1):
        chain_part = [c_in[(i, i + 1)] for i in range(1, k)]
        c_next = c_in[(k, k + 1)]
        c_closure = c_in[(1, n)] if k + 1 == n else chosen[k + 1]
        interval = reduce(
            Interval.intersect,
            c1n_intervals(chain_part, c_next, c_closure, bvec[0], bvec[k - 1]),
        )
        if interval.is_empty:
            cvals = {(i, i + 1): c_in[(i, i + 1)] for i in range(1, k + 1)}
            cvals[(1, k + 1)] = c_closure
            return FeasibilityVerdict(False, violated=_violated_chain_members(k + 1, cvals))
        chosen[k] = interval.midpoint()

    def c_1k(k: int) -> float:
        if k == 2:
            return c_in[(1, 2)]
        if k == n:
            return c_in[(1, n)]
        return chosen[k]

    blocks: dict[int, JointDistribution] = {}
    for k in range(2, n):
        moments = {
            (1,): float(bvec[0]),
            (2,): float(bvec[k - 1]),
            (3,): float(bvec[k]),
            (1, 2): c_1k(k),
            (2, 3): c_in[(k, k + 1)],
            (1, 3): c_1k(k + 1),
        }
        interval = d_interval(MomentSpec(3, moments))
        if interval.is_empty:
            return FeasibilityVerdict(
                False,
                violated=_violated_triple_members(
                    n, 1, k, k + 1, moments[(1, 2)], moments[(1, 3)], moments[(2, 3)]
                ),
            )
        moments[(1, 2, 3)] = interval.midpoint()
        blocks[k] = distribution_from_moments(MomentSpec(3, moments))

    idx = np.arange(1 << n)
    bit = lambda t: (idx >> (t - 1)) & 1  # noqa: E731
    sign = lambda t: 1.0 - 2.0 * bit(t)  # noqa: E731

    p = blocks[2].p[bit(1) | (bit(2) << 1) | (bit(3) << 2)].copy()
    for k in range(3, n):
        numerator = blocks[k].p[bit(1) | (bit(k) << 1) | (bit(k + 1) << 2)]
        denominator = (1.0 + bvec[0] * sign(1) + bvec[k - 1] * sign(k)
                       + c_1k(k) * sign(1) * sign(k)) / 4.0
        ratio = np.zeros_like(p)
        usable = denominator > 1e-14
        ratio[usable] = numerator[usable] / denominator[usable]
        p *= ratio

    certificate = JointDistribution(n, _drift_corrected(p))
    rows = _constraint_rows(n, tuple(sorted(c_in)))
    rhs = np.concatenate(([1.0], bvec, [v for _, v in sorted(c_in.items())]))
    residual = float(np.abs(rows @ certificate.p - rhs).max())
    if residual > FEASIBILITY_TOL or not certificate.is_nonnegative():
        raise OracleError(f"product construction failed to certify (residual {residual:.3e})")
    return FeasibilityVerdict(True, certificate)


def chain_marginals_from_tables(
    tables: Mapping[tuple[int, int], Mapping[tuple[int, int], float]],
    n: int,
) -> tuple[list[float], CorrelatorSet]:
    """Extract averages and correlators from raw chain pair-probability
    tables, enforcing mutual compatibility of the shared one-time marginals.

    Each table maps outcome pairs (s_i, s_j) to probabilities.  Raises
    ``MarginalError`` when a table is unnormalized or the B_i read from
    different tables disagree beyond 1e-9.
    """
    expected = frozenset(chain_pairs(n))
    if frozenset(tables) != expected:
        raise MarginalError(f"tables must cover exactly the chain pairs {sorted(expected)}")
    b_seen: dict[int, float] = {}
    entries: dict[tuple[int, int], float] = {}
    for (i, j), table in sorted(tables.items()):
        total = math.fsum(table.get((s_i, s_j), 0.0) for s_i in (1, -1) for s_j in (1, -1))
        if abs(total - 1.0) > NONNEGATIVITY_TOL:
            raise MarginalError(f"pair table {(i, j)} sums to {total!r}, not 1")
        b_i = math.fsum(s_i * table.get((s_i, s_j), 0.0) for s_i in (1, -1) for s_j in (1, -1))
        b_j = math.fsum(s_j * table.get((s_i, s_j), 0.0) for s_i in (1, -1) for s_j in (1, -1))
        entries[(i, j)] = math.fsum(
            s_i * s_j * table.get((s_i, s_j), 0.0) for s_i in (1, -1) for s_j in (1, -1)
        )
        for t, value in ((i, b_i), (j, b_j)):
            if t in b_seen and abs(b_seen[t] - value) > NONNEGATIVITY_TOL:
                raise MarginalError(
                    f"incompatible marginals: B_{t} reads {b_seen[t]!r} and {value!r}"
                )
            b_seen.setdefault(t, value)
    b = [b_seen[i] for i in range(1, n + 1)]
    return b, CorrelatorSet(n, entries)


def fine_build_from_tables(
    tables: Mapping[tuple[int, int], Mapping[tuple[int, int], float]], n: int
) -> FeasibilityVerdict:
    b, chain = chain_marginals_from_tables(tables, n)
    return fine_build(b, chain)


# ---------------------------------------------------------------------------
# symmetric even-coefficient search over complete correlator sets
# ---------------------------------------------------------------------------

def _condition_labels_violated(correlators: CorrelatorSet) -> tuple[str, ...]:
    labels = []
    cvec = np.array([correlators.entries[p] for p in complete_pairs(correlators.n)])
    for family in (three_time_complete(correlators.n), ngon_family(correlators.n)):
        a, _, bounds, _ = coefficient_arrays(family)
        slacks = a @ cvec - bounds
        labels.extend(
            member.label for member, slack in zip(family.members, slacks) if slack > 1e-12
        )
    return tuple(labels)


def symmetric_e_feasible(correlators: CorrelatorSet) -> FeasibilityVerdict:
    """Search the even four-subset coefficients making the moment expansion
    non-negative, for a complete correlator set with vanishing odd moments.

    For n = 4 the single coefficient is boxed by sixteen explicit bounds
    and the midpoint is taken; for n = 5 the five coefficients are found by
    the same phase-1 kernel used by the oracle.  The feasibility question
    is solved directly in the coefficients, not by the condition families.
    """
    n = correlators.n
    if n not in (4, 5):
        raise DimensionError(f"symmetric coefficient search covers n=4 or 5, got {n}")
    if not correlators.is_complete:
        raise ValidationError("symmetric coefficient search needs the complete pattern")

    pairs = complete_pairs(n)
    rows = _constraint_rows(n, pairs)
    cvec = np.array([correlators.entries[p] for p in pairs])
    f = 1.0 + rows[1 + n :].T @ cvec  # f(s) = 1 + sum s_i s_j C_ij over all outcomes

    quads = tuple(combinations(range(1, n + 1), 4))
    quad_chars = np.stack(
        [1.0 - 2.0 * (np.bitwise_count(np.arange(1 << n) & sum(1 << (i - 1) for i in q)) & 1)
         for q in quads],
        axis=1,
    )

    if n == 4:
        parity = quad_chars[:, 0]
        lower = float(np.max(-f[parity > 0]))
        upper = float(np.min(f[parity < 0]))
        interval = Interval(lower, upper)
        if interval.is_empty:
            return FeasibilityVerdict(False, violated=_condition_labels_violated(correlators))
        e_values = [interval.midpoint()]
    else:
        count = 1 << n
        a = np.hstack([quad_chars, -quad_chars, -np.eye(count)])
        result = solve_phase1(a, -f)
        if not result.feasible:
            return FeasibilityVerdict(
                False,
                violated=_condition_labels_violated(correlators),
                phase1_objective=result.objective,
            )
        e_values = [result.x[k] - result.x[len(quads) + k] for k in range(len(quads))]

    moments: dict[tuple[int, ...], float] = dict(correlators.entries)
    for quad, value in zip(quads, e_values):
        moments[quad] = float(min(1.0, max(-1.0, value)))
    certificate = distribution_from_moments(MomentSpec(n, moments))
    if not certificate.is_nonnegative():
        raise OracleError("even-coefficient search produced a negative certificate")
    return FeasibilityVerdict(True, certificate)


# ---------------------------------------------------------------------------
# the n = 5 sampling experiment
# ---------------------------------------------------------------------------

@lru_cache(maxsize=8)
def _condition_system(n: int):
    families = (two_time_complete(n), three_time_complete(n), ngon_family(n))
    blocks = [coefficient_arrays(f) for f in families]
    a = np.vstack([blk[0] for blk in blocks])
    lin = np.vstack([blk[1] for blk in blocks])
    bounds = np.concatenate([blk[2] for blk in blocks])
    labels = tuple(m.label for f in families for m in f.members)
    return a, lin, bounds, labels


def _draw_sample(n: int, mode: str, seed: int, index: int) -> tuple[np.ndarray, np.ndarray]:
    """Sample ``index`` comes from its own generator seeded with (seed, index);
    general mode draws the averages first, then the pair correlators in
    lexicographic pair order."""
    rng = np.random.default_rng([seed, index])
    b = rng.uniform(-1.0, 1.0, n) if mode == "general" else np.zeros(n)
    c = rng.uniform(-1.0, 1.0, n * (n - 1) // 2)
    return b, c


def _classify_float(n: int, b: np.ndarray, c: np.ndarray) -> tuple[bool, bool, bool]:
    a, lin, bounds, _ = _condition_system(n)
    slacks = a @ c + lin @ b - bounds
    holds = bool(slacks.max() <= 0.0)
    boundary = bool(np.abs(slacks).min() < BOUNDARY_TOL)

    rows = _constraint_rows(n, complete_pairs(n))
    result = solve_phase1(rows, np.concatenate(([1.0], b, c)))
    feasible = result.feasible
    boundary = boundary or (FEASIBILITY_TOL < result.objective < BOUNDARY_TOL)
    return holds, feasible, boundary


def _classify_exact(n: int, b: np.ndarray, c: np.ndarray) -> tuple[bool, bool]:
    a, lin, bounds, _ = _condition_system(n)
    bf = [Fraction(float(v)) for v in b]
    cf = [Fraction(float(v)) for v in c]
    holds = True
    for row_a, row_l, bd in zip(a.astype(int), lin.astype(int), bounds):
        slack = (
            sum(int(w) * v for w, v in zip(row_a, cf))
            + sum(int(w) * v for w, v in zip(row_l, bf))
            - Fraction(float(bd))
        )
        if slack > 0:
            holds = False
            break
    rows = _constraint_rows(n, complete_pairs(n)).astype(int).tolist()
    rhs = [Fraction(1)] + bf + cf
    result = solve_phase1_exact(rows, rhs)
    return holds, result.feasible


def _conjecture_chunk(args: tuple[int, str, int, int, int]) -> tuple[int, list[int], int, list]:
    n, mode, seed, start, stop = args
    tallies = [0, 0, 0, 0]  # (holds,feas), (holds,infeas), (fails,feas), (fails,infeas)
    boundary_count = 0
    counterexamples = []
    for index in range(start, stop):
        b, c = _draw_sample(n, mode, seed, index)
        holds, feasible, boundary = _classify_float(n, b, c)
        if boundary:
            boundary_count += 1
        elif holds != feasible:
            # knife-edge floats can misclassify either side; settle exactly
            holds, feasible = _classify_exact(n, b, c)
            if holds != feasible:
                counterexamples.append((index, b.tolist(), c.tolist()))
        tallies[(0 if holds else 2) + (0 if feasible else 1)] += 1
    return start, tallies, boundary_count, counterexamples


def _sample_to_spec(n: int, mode: str, b: Sequence[float], c: Sequence[float]) -> MomentSpec:
    moments: dict[tuple[int, ...], float] = {}
    if mode == "general":
        moments.update({(i,): float(b[i - 1]) for i in range(1, n + 1)})
    moments.update({pair: float(v) for pair, v in zip(complete_pairs(n), c)})
    return MomentSpec(n, moments)


def conjecture_check(
    samples: int,
    seed: int,
    mode: str = "symmetric",
    *,
    n: int = 5,
    workers: int = 1,
) -> ConjectureReport:
    """Sample complete correlator sets (plus averages in general mode),
    test the candidate condition set against the oracle, and tally.

    Counterexamples are non-boundary samples where the two sides disagree
    after exact re-adjudication; the direction "conditions hold, oracle
    infeasible" is the one the sufficiency claim forbids, while the
    converse would indicate a necessity bug.  Results are reproducible
    bit-for-bit for a fixed (seed, samples) and independent of ``workers``.
    """
    if samples < 1:
        raise ValidationError("samples must be >= 1")
    if seed < 0:
        raise ValidationError("seed must be non-negative")
    if mode not in ("symmetric", "general"):
        raise ValidationError(f"mode must be symmetric or general, got {mode!r}")
    if n != 5:
        raise DimensionError("the sampling experiment is defined for n = 5")

    chunk_size = max(64, samples // (max(1, workers) * 8)) if workers > 1 else samples
    chunks = [
        (n, mode, seed, start, min(start + chunk_size, samples))
        for start in range(0, samples, chunk_size)
    ]
    if workers > 1 and len(chunks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = sorted(pool.map(_conjecture_chunk, chunks))
    else:
        results = [_conjecture_chunk(chunk) for chunk in chunks]

    tallies = [0, 0, 0, 0]
    boundary = 0
    raw_counters: list[tuple[int, list, list]] = []
    for _, chunk_tallies, chunk_boundary, chunk_counters in results:
        tallies = [a + b for a, b in zip(tallies, chunk_tallies)]
        boundary += chunk_boundary
        raw_counters.extend(chunk_counters)
    raw_counters.sort()

    return ConjectureReport(
        n=n,
        mode=mode,
        samples=samples,
        seed=seed,
        condition_holds_and_feasible=tallies[0],
        condition_holds_and_infeasible=tallies[1],
        condition_fails_and_feasible=tallies[2],
        condition_fails_and_infeasible=tallies[3],
        boundary=boundary,
        counterexamples=tuple(
            _sample_to_spec(n, mode, b, c) for _, b, c in raw_counters
        ),
    )
