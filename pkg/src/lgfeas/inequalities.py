"""Inequality families over two-time correlators.

Four families constrain the correlators of a macrorealistic model:

* ``lg``: the 2^{n-1} chain inequalities sum_k a_k C_{k,k+1} + a_n C_{1n}
  <= n-2 with coefficients a_k = +-1 whose product is -1.
* ``ngon``: for every sign vector s, n + 2 sum_{i<j} s_i s_j C_ij >= 1
  (n odd) or >= 0 (n even); stored here in the normalized <= form with
  integer coefficients -s_i s_j and bound (n-1)/2 resp. n/2.
* ``three_time``: non-negativity of every three-time block,
  1 + s_i s_j C_ij + s_i s_k C_ik + s_j s_k C_jk >= 0 for all i<j<k.
* ``two_time``: non-negativity of every pair probability,
  1 + B_i s_i + B_j s_j + C_ij s_i s_j >= 0; these members carry linear
  B terms alongside the correlator terms.

Every member is normalized to "sum of terms <= bound" so that a positive
slack uniformly signals a violation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations
from typing import Mapping, Sequence

import numpy as np

from .core import (
    CorrelatorSet,
    DimensionError,
    MomentSpec,
    ValidationError,
    complete_pairs,
)

_ALLOWED_COEFFS = (-2, -1, 1, 2)


def _pattern(signs: Sequence[int]) -> str:
    return "".join("+" if s > 0 else "-" for s in signs)


@dataclass(frozen=True)
class LinearInequality:
    """One member: sum of integer-weighted correlators (plus optional linear
    B terms) bounded above.  Slack = value - bound; violation <=> slack > 0."""

    terms: Mapping[tuple[int, int], int]
    bound: float
    label: str = ""
    linear: Mapping[int, int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if not self.terms:
            raise ValidationError("an inequality needs at least one correlator term")
        for pair, coeff in self.terms.items():
            i, j = pair
            if i >= j:
                raise ValidationError(f"term key {pair} must have i < j")
            if coeff not in _ALLOWED_COEFFS:
                raise ValidationError(f"coefficient {coeff} for {pair} outside {{-2..2}}\\{{0}}")
        object.__setattr__(self, "terms", dict(self.terms))
        object.__setattr__(self, "linear", dict(self.linear))

    def canonical_key(self) -> tuple:
        return (
            frozenset(self.terms.items()),
            frozenset(self.linear.items()),
            float(self.bound),
        )


@dataclass(frozen=True)
class InequalityFamily:
    name: str
    n: int
    members: tuple[LinearInequality, ...]

    def __post_init__(self) -> None:
        if self.name not in ("lg", "ngon", "three_time", "two_time"):
            raise ValidationError(f"unknown family name {self.name!r}")
        object.__setattr__(self, "members", tuple(self.members))

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)


def _check_family_n(n: int, minimum: int) -> None:
    if not isinstance(n, int) or not minimum <= n <= 20:
        raise DimensionError(f"n must be an integer in [{minimum}, 20], got {n!r}")


def lg_family(n: int) -> InequalityFamily:
    """All 2^{n-1} chain inequalities with coefficient product -1, bound n-2.

    Generation order: member k has a_{j+1} = +1 where bit j of k is 0
    (j = 0..n-2) and the closing coefficient a_n = -prod(a_1..a_{n-1}).
    """
    _check_family_n(n, 3)
    members = []
    for k in range(1 << (n - 1)):
        a = [1 if not (k >> j) & 1 else -1 for j in range(n - 1)]
        a_n = -math.prod(a)
        terms = {(i, i + 1): a[i - 1] for i in range(1, n)}
        terms[(1, n)] = a_n
        members.append(LinearInequality(terms, float(n - 2), label=f"lg{n}:{_pattern(a + [a_n])}"))
    assert len(members) == 1 << (n - 1)
    return InequalityFamily("lg", n, tuple(members))


def ngon_family(n: int, raw: bool = False) -> InequalityFamily:
    """Sign-vector conditions over the complete correlator set.

    With ``raw=False`` (default) the 2^{n-1} canonical members with
    s_1 = +1 are generated; s and -s induce the same inequality, so the raw
    2^n listing only duplicates each member and exists for count checks and
    figure reproduction.
    """
    _check_family_n(n, 3)
    bound = float((n - 1) // 2) if n % 2 else float(n // 2)
    members = []
    width = n if raw else n - 1
    for k in range(1 << width):
        bits = [1 if not (k >> j) & 1 else -1 for j in range(width)]
        s = bits if raw else [1] + bits
        terms = {(i, j): -s[i - 1] * s[j - 1] for i, j in combinations(range(1, n + 1), 2)}
        members.append(LinearInequality(terms, bound, label=f"ngon{n}:{_pattern(s)}"))
    return InequalityFamily("ngon", n, tuple(members))


def three_time_complete(n: int) -> InequalityFamily:
    """Every three-time condition 1 + sum of signed pair correlators >= 0.

    Sign vectors are canonicalized by the global flip s <-> -s (the first
    index of each triple carries +1), so each triple contributes 4 members
    and the family has 2n(n-1)(n-2)/3 of them.
    """
    _check_family_n(n, 3)
    members = []
    for i, j, k in combinations(range(1, n + 1), 3):
        for m in range(4):
            s_j = 1 if not m & 1 else -1
            s_k = 1 if not (m >> 1) & 1 else -1
            terms = {(i, j): -s_j, (i, k): -s_k, (j, k): -s_j * s_k}
            label = f"three{n}:{i}.{j}.{k}:{_pattern((1, s_j, s_k))}"
            members.append(LinearInequality(terms, 1.0, label=label))
    assert len(members) == 2 * n * (n - 1) * (n - 2) // 3
    return InequalityFamily("three_time", n, tuple(members))


def two_time_complete(n: int) -> InequalityFamily:
    """Every pair-probability condition 1 + B_i s_i + B_j s_j + C_ij s_i s_j >= 0.

    All four sign choices per pair are distinct members (the B terms break
    the global-flip symmetry), giving 2n(n-1) members.
    """
    _check_family_n(n, 2)
    members = []
    for i, j in combinations(range(1, n + 1), 2):
        for m in range(4):
            s_i = 1 if not m & 1 else -1
            s_j = 1 if not (m >> 1) & 1 else -1
            members.append(
                LinearInequality(
                    {(i, j): -s_i * s_j},
                    1.0,
                    label=f"two{n}:{i}.{j}:{_pattern((s_i, s_j))}",
                    linear={i: -s_i, j: -s_j},
                )
            )
    assert len(members) == 2 * n * (n - 1)
    return InequalityFamily("two_time", n, tuple(members))


def evaluate(ineq: LinearInequality, data: CorrelatorSet | MomentSpec) -> float:
    """Signed slack of one member on the data; positive means violated.

    A CorrelatorSet must fix every referenced pair and carries no B data
    (linear terms evaluate against 0).  A MomentSpec reads pairs and
    singletons with the usual absent-means-zero convention.
    """
    if isinstance(data, CorrelatorSet):
        pieces = [coeff * data.value(i, j) for (i, j), coeff in ineq.terms.items()]
    elif isinstance(data, MomentSpec):
        pieces = [coeff * data.get(pair) for pair, coeff in ineq.terms.items()]
        pieces += [coeff * data.get((i,)) for i, coeff in ineq.linear.items()]
    else:
        raise TypeError(f"cannot evaluate against {type(data).__name__}")
    return math.fsum(pieces) - ineq.bound


def coefficient_arrays(
    family: InequalityFamily,
) -> tuple[np.ndarray, np.ndarray, np.ndarray, tuple[tuple[int, int], ...]]:
    """Dense (members x pairs) term matrix, (members x n) linear matrix and
    bound vector for batch slack evaluation: slack = A @ c + L @ b - bounds."""
    pairs = complete_pairs(family.n)
    index = {pair: col for col, pair in enumerate(pairs)}
    a = np.zeros((len(family.members), len(pairs)))
    lin = np.zeros((len(family.members), family.n))
    bounds = np.zeros(len(family.members))
    for row, member in enumerate(family.members):
        for pair, coeff in member.terms.items():
            a[row, index[pair]] = coeff
        for i, coeff in member.linear.items():
            lin[row, i - 1] = coeff
        bounds[row] = member.bound
    return a, lin, bounds, pairs


def _gap_signature(member: LinearInequality, n: int) -> tuple:
    weights = [0] * n
    for (i, j), coeff in member.terms.items():
        weights[j - i] += coeff
    return tuple(weights[1:]) + (member.bound,)


def distinct_under_equal_spacing(family: InequalityFamily) -> InequalityFamily:
    """One representative per class of members whose slacks agree for every
    equal-spacing assignment C_ij = g(j - i).

    Under equal spacing a member's slack is the linear functional
    sum_d (per-gap coefficient sum) * g(d) minus the bound, so two members
    coincide for all g exactly when those per-gap sums and the bound match.
    For these +-1-coefficient families that is the same as matching the
    per-gap coefficient multisets.
    """
    if family.name not in ("lg", "ngon"):
        raise ValidationError("equal-spacing deduplication applies to lg and ngon families")
    seen: dict[tuple, LinearInequality] = {}
    for member in family.members:
        seen.setdefault(_gap_signature(member, family.n), member)
    return InequalityFamily(family.name, family.n, tuple(seen.values()))


def max_violation(
    family: InequalityFamily, data: CorrelatorSet | MomentSpec
) -> tuple[LinearInequality, float]:
    """The member with the largest slack; ties go to the earliest member."""
    if not family.members:
        raise ValidationError("family has no members")
    best = None
    best_slack = -math.inf
    for member in family.members:
        slack = evaluate(member, data)
        if slack > best_slack:
            best, best_slack = member, slack
    return best, best_slack


def inequality_to_json_dict(ineq: LinearInequality) -> dict:
    payload: dict = {
        "label": ineq.label,
        "terms": {f"{i},{j}": coeff for (i, j), coeff in sorted(ineq.terms.items())},
        "bound": ineq.bound,
    }
    if ineq.linear:
        payload["linear"] = {str(i): coeff for i, coeff in sorted(ineq.linear.items())}
    return payload


def family_to_json_list(family: InequalityFamily) -> list[dict]:
    return [inequality_to_json_dict(member) for member in family.members]
