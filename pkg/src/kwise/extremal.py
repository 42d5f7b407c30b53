"""Largest p-th moments over k-wise independent sign laws, as exact LPs.

Two routes to the same optimum: `solve_full` works on all 2^n sign patterns
with one parity constraint per coordinate subset of size at most k, while
`solve_reduced` exploits permutation symmetry and optimizes over Hamming
weight profiles with k constraint rows.  Both return exact rational values
for integer exponents, certified enclosures otherwise, and every solution is
re-checked by the independent certificate verifier in `simplex`.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Optional, Union

from .core import SampleSpace, SignVector, WeightProfile, _frac_str
from .independence import check_kwise
from .intervals import DEFAULT_PREC, Interval, rational_power
from .moments import Weights
from .simplex import ExactSimplex, verify_certificate

MAX_REDUCED_DIMENSION = 10_000
MAX_FULL_DIMENSION = 12

ODD_DIMENSION_NOTE = (
    "odd dimension: value is the exact program optimum; "
    "the n**(p-1) closed form holds only for even n"
)


def parity_class_sum(n: int, j: int, m: int) -> int:
    """Sum of the size-j parity over all sign vectors of Hamming weight m,
    divided by the class size C(n, m): numerator over C(n, j).

    Choosing t of the j parity coordinates to land on +1 entries contributes
    C(m, t)*C(n-m, j-t) arrangements with sign (-1)^(j-t).
    """
    return sum(
        (-1) ** (j - t) * comb(m, t) * comb(n - m, j - t)
        for t in range(max(0, j - (n - m)), min(j, m) + 1)
    )


def parity_class_coefficient(n: int, j: int, m: int) -> Fraction:
    """Average of a fixed size-j parity over the weight-m class."""
    if not 0 <= j <= n:
        raise ValueError(f"subset size {j} out of range for dimension {n}")
    if not 0 <= m <= n:
        raise ValueError(f"weight {m} out of range for dimension {n}")
    return Fraction(parity_class_sum(n, j, m), comb(n, j))


@lru_cache(maxsize=None)
def _reduced_rows(n: int, k: int) -> tuple[tuple[tuple[int, ...], ...], tuple[int, ...]]:
    rows = [tuple([1] * (n + 1))]
    rows += [
        tuple(parity_class_sum(n, j, m) for m in range(n + 1)) for j in range(1, k + 1)
    ]
    return tuple(rows), (1,) + (0,) * k


@dataclass(frozen=True, slots=True)
class ReducedLp:
    """Weight-profile program: maximize sum(objective[m] * q[m]) subject to
    the rows (normalization first, then one parity row per order 1..k),
    q >= 0."""

    n: int
    k: int
    objective: tuple
    rows: tuple[tuple[int, ...], ...]
    rhs: tuple[int, ...]


def reduced_lp(n: int, p, k: int, prec: int = DEFAULT_PREC) -> ReducedLp:
    """Build the weight-profile program for exponent p.

    Integer p gives exact integer objective coefficients |2m - n|^p; other
    rational p gives certified Interval coefficients at precision `prec`.
    """
    _validate(n, p, k, MAX_REDUCED_DIMENSION)
    pf = Fraction(p)
    rows, rhs = _reduced_rows(n, k)
    if pf.denominator == 1:
        obj = tuple(abs(2 * m - n) ** int(pf) for m in range(n + 1))
    else:
        obj = tuple(
            rational_power(Fraction(abs(2 * m - n)), pf, prec) for m in range(n + 1)
        )
    return ReducedLp(n, k, obj, rows, rhs)


def _validate(n, p, k, n_cap) -> Fraction:
    if not isinstance(n, int) or not isinstance(k, int):
        raise TypeError("dimension and independence order must be integers")
    if n < 1:
        raise ValueError(f"dimension must be positive, got {n}")
    if n > n_cap:
        raise ValueError(f"dimension too large: {n} > {n_cap}")
    if not 1 <= k <= n:
        raise ValueError(f"independence order must be in [1, {n}], got {k}")
    pf = Fraction(p)
    if pf < 1:
        raise ValueError(f"exponent must be at least 1, got {p}")
    return pf


Value = Union[Fraction, Interval]


@dataclass(slots=True)
class LpSolution:
    """Outcome of one extremal program.

    `optimal_value` is a Fraction on the exact path and an Interval when the
    exponent is not an integer (three solver passes: rounded-down, midpoint,
    rounded-up coefficients; the optimizer and dual come from the midpoint
    pass and carry no exactness claim there).  `dual` certifies optimality
    via `simplex.verify_certificate`, which `certificate_ok` records; a run
    with `certify=False` skips the check (`certificate_ok` is None) and on
    the wide unreduced programs also drops the dual, which dominates the
    cost there, leaving `dual` None.
    """

    kind: str
    n: int
    p: Fraction
    k: int
    optimal_value: Value
    optimizer: Union[WeightProfile, SampleSpace]
    dual: Optional[tuple[Fraction, ...]]
    certificate_ok: Optional[bool]
    unique: Optional[bool] = None
    note: Optional[str] = None

    def to_json(self) -> dict:
        if isinstance(self.optimal_value, Interval):
            lo, hi = self.optimal_value.decimal_bounds(40)
            value = {"lo": lo, "hi": hi, "bits": DEFAULT_PREC}
        else:
            value = _frac_str(self.optimal_value)
        out = {
            "kind": self.kind,
            "n": self.n,
            "p": _frac_str(self.p),
            "k": self.k,
            "value": value,
            "optimizer": self.optimizer.to_json(),
            "dual": None if self.dual is None else [_frac_str(v) for v in self.dual],
            "unique": self.unique,
            "certificate_ok": self.certificate_ok,
        }
        if self.note:
            out["note"] = self.note
        return out


@lru_cache(maxsize=None)
def _reduced_solver(n: int, k: int) -> ExactSimplex:
    rows, rhs = _reduced_rows(n, k)
    return ExactSimplex([list(r) for r in rows], list(rhs))


def _solve_three_ways(solver, objective, certify, need_dual=True):
    """One exact pass for Fraction coefficients, three directed passes for
    Interval coefficients.  Returns (value, x, dual, certificate_ok)."""
    rows = solver.rows
    rhs = solver.rhs
    need_dual = need_dual or certify
    if not any(isinstance(v, Interval) for v in objective):
        c = [Fraction(v) for v in objective]
        res = solver.maximize(c, need_dual=need_dual)
        ok = verify_certificate(rows, rhs, c, res.x, res.y) if certify else None
        return res.value, res.x, res.y, ok, c
    lo = [v.lo if isinstance(v, Interval) else Fraction(v) for v in objective]
    hi = [v.hi if isinstance(v, Interval) else Fraction(v) for v in objective]
    mid = [(a + b) / 2 for a, b in zip(lo, hi)]
    res_lo = solver.maximize(lo, need_dual=need_dual)
    res_hi = solver.maximize(hi, need_dual=need_dual)
    res_mid = solver.maximize(mid, need_dual=need_dual)
    ok = None
    if certify:
        ok = (
            verify_certificate(rows, rhs, lo, res_lo.x, res_lo.y)
            and verify_certificate(rows, rhs, hi, res_hi.x, res_hi.y)
            and verify_certificate(rows, rhs, mid, res_mid.x, res_mid.y)
        )
    value = Interval(res_lo.value, res_hi.value)
    return value, res_mid.x, res_mid.y, ok, None


def solve_reduced(
    n: int,
    p,
    k: int,
    prec: int = DEFAULT_PREC,
    certify: bool = True,
    check_unique: bool = False,
) -> LpSolution:
    """Maximize E|sum of signs|^p over exchangeable k-wise independent laws.

    All-ones weights; the optimum over weight profiles q_0..q_n.  Exact for
    integer p.  With `check_unique` the optimal face is probed and `unique`
    is filled in (integer p only)."""
    program = reduced_lp(n, p, k, prec)
    solver = _reduced_solver(n, k)
    value, x, dual, cert_ok, _ = _solve_three_ways(solver, program.objective, certify)
    sol = LpSolution(
        kind="reduced",
        n=n,
        p=Fraction(p),
        k=k,
        optimal_value=value,
        optimizer=WeightProfile(n, x),
        dual=dual,
        certificate_ok=cert_ok,
        note=ODD_DIMENSION_NOTE if n % 2 else None,
    )
    if check_unique and isinstance(value, Fraction):
        sol.unique = uniqueness_check(sol, n, p, k)
    return sol


@lru_cache(maxsize=None)
def _full_rows(n: int, k: int) -> tuple[tuple[tuple[int, ...], ...], tuple[int, ...], tuple[tuple[int, ...], ...]]:
    """Constraint rows of the unreduced program: normalization, then the
    parity row of every coordinate subset of size 1..k, in size-then-lex
    order.  Returns (rows, rhs, subset labels)."""
    cols = 1 << n
    rows = [tuple([1] * cols)]
    labels = [()]
    for size in range(1, k + 1):
        for subset in combinations(range(n), size):
            mask = 0
            for i in subset:
                mask |= 1 << i
            row = tuple(
                -1 if (mask & x).bit_count() & 1 != size & 1 else 1
                for x in range(cols)
            )
            rows.append(row)
            labels.append(subset)
    rhs = (1,) + (0,) * (len(rows) - 1)
    return tuple(rows), rhs, tuple(labels)


def full_constraint_labels(n: int, k: int) -> tuple[tuple[int, ...], ...]:
    """Subset labels aligned with the dual vector of a full solution; the
    first entry () is the normalization row."""
    return _full_rows(n, k)[2]


@lru_cache(maxsize=None)
def _full_solver(n: int, k: int) -> ExactSimplex:
    rows, rhs, _ = _full_rows(n, k)
    return ExactSimplex([list(r) for r in rows], list(rhs))


def _float_vertex(n: int, k: int, cost: list) -> tuple[list[int], list[int]] | None:
    """Floating-point solve of the unreduced program with the given
    minimization costs.  Returns the support of the vertex found, ordered
    by decreasing mass, and separately the columns the float dual prices
    as tight (the rest of the candidate optimal face, where the exact
    basis hides when rounding noise picks a different vertex than the
    exact solve will).

    Purely advisory.  The exact solver re-proves feasibility and optimality
    through its own pivoting whatever this returns, so the guess is allowed
    to fail (no scipy, overflow, solver breakdown) and then costs nothing
    but the speed it would have bought."""
    try:
        from scipy.optimize import linprog
    except ImportError:
        return None
    try:
        import numpy as np

        rows, rhs, _ = _full_rows(n, k)
        A = np.array(rows, dtype=float)
        res = linprog(
            cost,
            A_eq=A,
            b_eq=np.array(rhs, dtype=float),
            bounds=(0.0, None),
            method="highs",
        )
        if not res.success or res.x is None:
            return None
        mass = res.x
        support = [j for j, q in enumerate(mass) if q > 1e-9]
        support.sort(key=lambda j: -mass[j])
        if not support:
            return None
        y = getattr(getattr(res, "eqlin", None), "marginals", None)
        if y is None:
            return support, []
        c = np.asarray(cost, dtype=float)
        tol = 1e-7 * max(1.0, float(np.abs(c).max()))
        # a support column must price to zero; that pins down which sign
        # convention this scipy build uses for the equality multipliers
        priced = c - np.asarray(y, dtype=float) @ A
        if abs(priced[support[0]]) > tol:
            priced = c + np.asarray(y, dtype=float) @ A
            if abs(priced[support[0]]) > tol:
                return support, []
        slack = np.abs(priced)
        chosen = set(support)
        face = [(slack[j], j) for j in np.flatnonzero(slack < tol) if j not in chosen]
        face.sort()
        return support, [int(j) for _, j in face]
    except Exception:
        return None


def _float_hint(n: int, k: int, objective) -> tuple[list[int], list[int]] | None:
    """Advisory support and face for one objective of the unreduced program."""
    cost = []
    for v in objective:
        if isinstance(v, Interval):
            cost.append(-(float(v.lo) + float(v.hi)) / 2.0)
        else:
            cost.append(-float(v))
    return _float_vertex(n, k, cost)


def _probe_hint(n: int, k: int, dots) -> list[int] | None:
    """Advisory seed for the search for a first feasible basis: the support
    of a vertex optimal for the lowest moment degree the independence order
    does not already fix.  Moment objectives of degree at most the order are
    constant across the whole feasible region, so their float dual prices
    every column as optimal and the hint degrades into noise; the probe
    degree has real slopes and its vertex support is a small feasible
    target whose columns phase 1 can settle on directly."""
    e = k + 2 if k % 2 == 0 else k + 1
    cost = [-float(d) ** e for d in dots]
    got = _float_vertex(n, k, cost)
    return got[0] if got else None


def solve_full(
    n: int,
    p,
    k: int,
    a: Optional[Weights] = None,
    prec: int = DEFAULT_PREC,
    certify: bool = True,
) -> LpSolution:
    """Maximize E|<a, signs>|^p over all k-wise independent laws on sign
    vectors of dimension n, one variable per atom.

    The parity row of a subset T is (+1 on atoms where T holds an even
    number of minus signs, -1 otherwise); constraining all of them to zero
    for 1 <= |T| <= k is exactly k-wise independence."""
    pf = _validate(n, p, k, MAX_FULL_DIMENSION)
    if a is None:
        a = Weights.all_ones(n)
    if a.n != n:
        raise ValueError(f"weight vector has dimension {a.n}, expected {n}")
    cols = 1 << n
    dots = [abs(a.dot_bits(x)) for x in range(cols)]
    if pf.denominator == 1:
        e = int(pf)
        objective = [v**e for v in dots]
    else:
        memo: dict[Fraction, Interval] = {}
        objective = []
        for v in dots:
            if v not in memo:
                memo[v] = rational_power(v, pf, prec)
            objective.append(memo[v])
    solver = _full_solver(n, k)
    fixed = pf.denominator == 1 and int(pf) % 2 == 0 and pf <= k
    # a moment of even degree at most the independence order is the same for
    # every feasible law, so the reduced costs vanish at any feasible basis
    # and a pivot-order hint has nothing to buy
    guess = None if fixed else _float_hint(n, k, objective)
    if not solver.phase1_done:
        first = None
        if guess and (len(guess[0]) + len(guess[1])) * 4 <= cols * 3:
            first = guess[0]
        if first is None:
            first = _probe_hint(n, k, dots)
        if first:
            solver.set_hint(first)
        solver.prepare()
    if guess:
        solver.set_hint(guess[0] + guess[1])
    value, x, dual, cert_ok, _ = _solve_three_ways(
        solver, objective, certify, need_dual=certify
    )
    masses = {bits: q for bits, q in enumerate(x) if q}
    sol = LpSolution(
        kind="full",
        n=n,
        p=pf,
        k=k,
        optimal_value=value,
        optimizer=SampleSpace(n, masses),
        dual=dual,
        certificate_ok=cert_ok,
        note=ODD_DIMENSION_NOTE if n % 2 else None,
    )
    return sol


def uniqueness_check(solution: LpSolution, n: int, p, k: int) -> bool:
    """Decide whether the reduced program's optimal point is the only one.

    Every optimizer must vanish outside the columns with zero reduced cost,
    so the optimal face is the feasible set restricted to those columns;
    each coordinate is maximized and minimized there, and the optimum is
    unique exactly when every range collapses to a point."""
    if solution.kind != "reduced":
        raise ValueError("uniqueness is only decided for reduced solutions")
    if not isinstance(solution.optimal_value, Fraction):
        raise ValueError("uniqueness needs the exact path (integer exponent)")
    program = reduced_lp(n, p, k)
    if len(solution.dual) != len(program.rows):
        raise ValueError("solution does not match the stated program")
    slack = []
    for j in range(n + 1):
        s = sum(yi * row[j] for yi, row in zip(solution.dual, program.rows))
        slack.append(s - program.objective[j])
    if any(s < 0 for s in slack):
        raise ValueError("dual vector is not feasible for the stated program")
    support = [j for j, s in enumerate(slack) if s == 0]
    face_rows = [[row[j] for j in support] for row in program.rows]
    face = ExactSimplex(face_rows, list(program.rhs))
    q = solution.optimizer.q
    for t, j in enumerate(support):
        unit = [Fraction(0)] * len(support)
        unit[t] = Fraction(1)
        if face.maximize(unit).value != q[j]:
            return False
        if face.minimize(unit).value != q[j]:
            return False
    return True


@dataclass(frozen=True, slots=True)
class EqualityReport:
    """Outcome of the sharp-bound support test; falsy when any condition
    fails, with `reason` one of ok / not_pairwise_independent /
    unequal_magnitudes / mixed_support_atom / unanimous_mass_mismatch."""

    achieves_equality: bool
    reason: str
    witness: Optional[SignVector] = None

    def __bool__(self) -> bool:
        return self.achieves_equality

    def to_json(self) -> dict:
        return {
            "achieves_equality": self.achieves_equality,
            "reason": self.reason,
            "witness": str(self.witness) if self.witness is not None else None,
        }


def equality_support_check(space: SampleSpace, a: Weights, p) -> EqualityReport:
    """Test whether a pairwise independent law attains the largest possible
    p-th moment for its weights (p > 2).

    Writing c for the common weight magnitude and s for the sign pattern of
    a, the law must put mass exactly 1/(2n) on each of s and -s and spread
    the rest over atoms agreeing with s on exactly half the coordinates."""
    if a.n != space.n:
        raise ValueError(f"weights have dimension {a.n}, expected {space.n}")
    if Fraction(p) <= 2:
        raise ValueError(f"exponent must exceed 2, got {p}")
    n = space.n
    if n >= 2 and not check_kwise(space, 2).passed:
        return EqualityReport(False, "not_pairwise_independent")
    if len({abs(v) for v in a.a}) != 1:
        return EqualityReport(False, "unequal_magnitudes")
    smask = 0
    for i, v in enumerate(a.a):
        if v > 0:
            smask |= 1 << i
    full = (1 << n) - 1
    for bits in space.masses:
        agree = n - (bits ^ smask).bit_count()
        if agree != n and agree != 0 and 2 * agree != n:
            return EqualityReport(False, "mixed_support_atom", SignVector(n, bits))
    share = Fraction(1, 2 * n)
    if space.masses.get(smask) != share or space.masses.get(full ^ smask) != share:
        return EqualityReport(False, "unanimous_mass_mismatch")
    return EqualityReport(True, "ok")
