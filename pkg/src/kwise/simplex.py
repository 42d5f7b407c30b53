"""Exact two-phase primal simplex for equality-form programs.

The tableau is kept fraction-free row by row: each row is an integer vector
together with one positive integer divisor, reduced after every update by the
gcd of the divisor with the row's content.  True tableau entries here are
ratios of basis minors in which the big determinant factors mostly cancel, so
the reduced rows stay near machine-word size while a single shared divisor in
the style of Bareiss would drag hundred-digit integers through every pivot.
Ratio comparisons never need the divisors at all: within one row they cancel.

Entering columns follow Dantzig's largest-violation rule, optionally biased
toward a caller-supplied hint set scanned ahead of the rest; leaving rows use the
lexicographic ratio test anchored on the basis held at the start of the
run, whose tableau block is a scaled identity, so all rows start
lexicographically positive and no basis can repeat.  That matters here: the
moment programs are so degenerate that Bland's rule, while equally exact,
stalls for thousands of pivots on the optimal face.

Artificial variables left basic at level zero after phase 1 are not driven
out eagerly (for these programs that would cost hundreds of full-tableau
pivots); instead any such row blocks an entering column at ratio zero and is
pivoted out on contact, whatever the sign of its entry.  Such a pivot keeps
every true value unchanged, and the lexicographic anchor is re-established
after it, so each stretch between artificial removals terminates and there
are at most m removals in total.  An artificial basic at zero at the end is
harmless: its constraint holds, its dual weight reads as zero, and consistent
dependent constraint rows are accepted instead of rejected.

`verify_certificate` re-checks any claimed optimum from scratch with plain
Fraction arithmetic; it shares no state or code with the pivot loop.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Sequence


@dataclass(frozen=True, slots=True)
class SimplexResult:
    value: Fraction
    x: tuple[Fraction, ...]
    y: tuple[Fraction, ...] | None
    basis: tuple[int, ...]


class ExactSimplex:
    """max/min of c.x subject to rows.x = rhs, x >= 0, over exact rationals.

    Constraint data must be integer.  Phase 1 runs once and is cached; each
    `maximize` resumes from the previous final basis when one exists, so
    several objectives against the same constraints stay cheap.
    """

    def __init__(
        self,
        rows: Sequence[Sequence[int]],
        rhs: Sequence[int],
        hint: Sequence[int] | None = None,
    ):
        if not rows:
            raise ValueError("no constraint rows")
        n = len(rows[0])
        if any(len(r) != n for r in rows):
            raise ValueError("ragged constraint matrix")
        if len(rhs) != len(rows):
            raise ValueError("rhs length does not match row count")
        if any(not isinstance(v, int) for r in rows for v in r) or any(
            not isinstance(v, int) for v in rhs
        ):
            raise ValueError("constraint data must be integer")
        self.n = n
        self.m = len(rows)
        self.rows = [list(r) for r in rows]
        self.rhs = list(rhs)
        self._hint: tuple[int, ...] = ()
        self._state: tuple[list[list[int]], list[int], list[int]] | None = None
        self._warm: tuple[list[list[int]], list[int], list[int]] | None = None
        self._warm_dual = True
        if hint is not None:
            self.set_hint(hint)

    def set_hint(self, columns: Sequence[int]) -> None:
        """Columns believed to carry the relevant basis, scanned first when
        choosing entering columns.  A guess from any source is safe: it
        biases the pivot order and nothing else, and a wrong one only costs
        the pivots it wasted.  The hint in effect when phase 1 runs steers
        the search for feasibility; setting a fresh one before a `maximize`
        steers that objective's pivots, which pays off when each objective
        gets a hint of its own."""
        cols: list[int] = []
        seen = set()
        for j in columns:
            if not isinstance(j, int) or not 0 <= j < self.n:
                raise ValueError(f"hint column {j!r} out of range")
            if j not in seen:
                seen.add(j)
                cols.append(j)
        self._hint = tuple(cols)

    @property
    def phase1_done(self) -> bool:
        """True once a feasible basis has been found and cached."""
        return self._state is not None

    def prepare(self) -> None:
        """Run phase 1 now (a no-op once it has run), so that a hint aimed
        at feasibility steers it before any objective hints replace it."""
        self._phase1()

    # -- phase 1 -----------------------------------------------------------

    def _phase1(self) -> tuple[list[list[int]], list[int], list[int]]:
        if self._state is None:
            n, m = self.n, self.m
            # a hint well under the full width is worth a narrow first try:
            # phase 1 drags every column through every pivot, and columns
            # outside a trusted basis guess are dead weight it can rebuild
            # afterwards for the cost of a couple of pivots
            if self._hint and 2 * len(self._hint) <= n:
                if self._phase1_restricted(list(self._hint)):
                    M, divs, basis = self._state
                    return [row[:] for row in M], divs[:], basis[:]
            width = n + m + 1
            M: list[list[int]] = []
            for i, row in enumerate(self.rows):
                flip = -1 if self.rhs[i] < 0 else 1
                art = [0] * m
                art[i] = flip
                M.append([flip * v for v in row] + art + [flip * self.rhs[i]])
            divs = [1] * m
            basis = [n + i for i in range(m)]
            # objective row for maximizing -(sum of artificials)
            M.append([-sum(M[i][j] for i in range(m)) for j in range(width)])
            divs.append(1)
            self._optimize(M, divs, basis, stop_at_zero=True, prefer=self._hint)
            if M[m][width - 1] != 0:
                raise RuntimeError("program is infeasible")
            M.pop()
            divs.pop()
            self._state = (M, divs, basis)
        M, divs, basis = self._state
        return [row[:] for row in M], divs[:], basis[:]

    def _phase1_restricted(self, cols: list[int]) -> bool:
        """Seek a feasible basis inside the hint columns alone, then rebuild
        the full-width tableau at that basis.  The artificial block of each
        row is the basis inverse on that row's divisor scale, so a left-out
        column of the constraint matrix re-enters the tableau as one exact
        dot product against it.  Returns False (and leaves no state) when
        feasibility needs columns the hint left out, and the ordinary full
        search takes over from scratch."""
        n, m = self.n, self.m
        w = len(cols)
        M: list[list[int]] = []
        for i, row in enumerate(self.rows):
            flip = -1 if self.rhs[i] < 0 else 1
            art = [0] * m
            art[i] = flip
            M.append([flip * row[j] for j in cols] + art + [flip * self.rhs[i]])
        divs = [1] * m
        basis = [w + i for i in range(m)]
        M.append([-sum(M[i][j] for i in range(m)) for j in range(w + m + 1)])
        divs.append(1)
        self._optimize(
            M, divs, basis, stop_at_zero=True, prefer=tuple(range(w)), enterable=w
        )
        if M[m][w + m] != 0:
            return False
        M.pop()
        divs.pop()
        pos = {j: t for t, j in enumerate(cols)}
        missing = [j for j in range(n) if j not in pos]
        # per missing column, the nonzero constraint entries split by sign;
        # for an all-unit column the short side plus the row total is enough
        plan = []
        for j in missing:
            up, dn, gen = [], [], []
            for t in range(m):
                v = self.rows[t][j]
                if v == 1:
                    up.append(t)
                elif v == -1:
                    dn.append(t)
                elif v:
                    gen.append((t, v))
            plan.append((j, up, dn, gen))
        full: list[list[int]] = []
        for i in range(m):
            row = M[i]
            art = row[w : w + m]
            tot = sum(art)
            vals = [0] * n
            for j, t in pos.items():
                vals[j] = row[t]
            for j, up, dn, gen in plan:
                if not gen and len(up) + len(dn) == m:
                    if len(dn) <= len(up):
                        s = tot - 2 * sum(art[t] for t in dn)
                    else:
                        s = 2 * sum(art[t] for t in up) - tot
                else:
                    s = sum(art[t] for t in up) - sum(art[t] for t in dn)
                    for t, v in gen:
                        s += v * art[t]
                vals[j] = s
            full.append(vals + art + [row[w + m]])
        basis = [cols[b] if b < w else n + (b - w) for b in basis]
        self._state = (full, divs, basis)
        return True

    # -- core loop ----------------------------------------------------------

    def _optimize(
        self, M, divs, basis, stop_at_zero=False, prefer=(), enterable=None
    ) -> None:
        """Pivot until the objective row (last row of M) is optimal.
        `stop_at_zero` ends as soon as the objective cell reaches zero
        (phase 1 stops at feasibility).  Entering columns listed in
        `prefer` are scanned first and win whenever one improves.
        `enterable` is where the artificial block starts in this layout
        (defaults to the full column count); nothing at or past it enters.

        Works for every tableau layout used here: the right-hand side is
        always the last column, and the anchor never needs an artificial
        column because the contact guard keeps artificial-basic rows out
        of ordinary ratio ties."""
        m = self.m
        n = self.n if enterable is None else enterable
        rhs = len(M[0]) - 1
        lexcols = tuple(b for b in basis if b < rhs)
        while True:
            obj = M[m]  # _pivot rebinds rows, so re-read each pass
            if stop_at_zero and obj[rhs] == 0:
                break
            col = None
            worst = 0
            for j in prefer:
                v = obj[j]
                if v < worst:
                    worst = v
                    col = j
            if col is None:
                for j in range(n):
                    v = obj[j]
                    if v < worst:
                        worst = v
                        col = j
            if col is None:
                break
            row = None
            for i in range(m):
                if basis[i] >= n and M[i][rhs] == 0 and M[i][col]:
                    row = i  # zero-level artificial blocks: out on contact
                    break
            if row is None:
                row = self._lex_ratio_row(M, col, lexcols)
                if row is None:
                    raise RuntimeError("objective is unbounded on the feasible set")
                _pivot(M, divs, row, col)
                basis[row] = col
            else:
                _pivot(M, divs, row, col)
                basis[row] = col
                lexcols = tuple(b for b in basis if b < rhs)

    def _lex_ratio_row(self, M, col, lexcols) -> int | None:
        """Leaving row: lexicographic minimum of row/pivot-entry over the
        right-hand side followed by the anchor columns.  The anchor block is
        nonsingular in every basis, so the minimum is unique.  Row divisors
        cancel inside each ratio, so entries are compared directly."""
        rhs = len(M[0]) - 1
        cands = [i for i in range(self.m) if M[i][col] > 0]
        if not cands:
            return None
        for jc in (rhs, *lexcols):
            if len(cands) == 1:
                return cands[0]
            best = cands[0]
            keep = [best]
            for i in cands[1:]:
                lhs = M[i][jc] * M[best][col]
                rhs_v = M[best][jc] * M[i][col]
                if lhs == rhs_v:
                    keep.append(i)
                elif lhs < rhs_v:
                    best = i
                    keep = [i]
            cands = keep
        return cands[0]

    # -- optimization -------------------------------------------------------

    def maximize(self, c: Sequence, need_dual: bool = True) -> SimplexResult:
        """Any feasible basis is a valid simplex start, so each call resumes
        from the previous call's final basis when one exists (and the same
        `need_dual` setting); related objectives then need only a few pivots.

        With `need_dual=False` the artificial column block is dropped from
        the working tableau, which cuts pivot cost on wide programs, but the
        dual vector cannot be read off afterwards and the result carries
        `y=None`."""
        cf = [Fraction(v) for v in c]
        if len(cf) != self.n:
            raise ValueError(f"objective length {len(cf)} != {self.n} columns")
        if self._warm is not None and self._warm_dual == need_dual:
            M, divs, basis = self._warm
            M, divs, basis = [row[:] for row in M], divs[:], basis[:]
        else:
            M, divs, basis = self._phase1()
            if not need_dual:
                M = [row[: self.n] + [row[-1]] for row in M]
        n, m = self.n, self.m
        last = len(M[0]) - 1
        # objective row holds true reduced costs over one divisor: start from
        # -c and add back the basic rows' contributions on one common scale
        den = lcm(*(v.denominator for v in cf)) if cf else 1
        L = den
        for i in range(m):
            if basis[i] < n and cf[basis[i]]:
                L = lcm(L, divs[i] * cf[basis[i]].denominator)
        obj = [-(L // den) * int(v * den) for v in cf] + [0] * (last + 1 - n)
        for i in range(m):
            if basis[i] < n:
                coef = cf[basis[i]]
                if coef:
                    w = L * coef.numerator // (coef.denominator * divs[i])
                    obj = [o + w * v for o, v in zip(obj, M[i])]
        M.append(obj)
        divs.append(L)
        _reduce_row(M, divs, m)
        self._optimize(M, divs, basis, prefer=self._hint)
        x = [Fraction(0)] * n
        for i in range(m):
            if basis[i] < n:
                x[basis[i]] = Fraction(M[i][last], divs[i])
        obj = M[m]
        dob = divs[m]
        y = tuple(Fraction(obj[n + i], dob) for i in range(m)) if need_dual else None
        value = Fraction(obj[last], dob)
        M.pop()
        divs.pop()
        self._warm = ([row[:] for row in M], divs[:], basis[:])
        self._warm_dual = need_dual
        return SimplexResult(value, tuple(x), y, tuple(basis))

    def minimize(self, c: Sequence, need_dual: bool = True) -> SimplexResult:
        res = self.maximize([-Fraction(v) for v in c], need_dual=need_dual)
        y = tuple(-v for v in res.y) if res.y is not None else None
        return SimplexResult(-res.value, res.x, y, res.basis)


def _pivot(M: list[list[int]], divs: list[int], r: int, c: int) -> None:
    prow = M[r]
    piv = prow[c]
    for i, row in enumerate(M):
        if i == r:
            continue
        f = row[c]
        if f == 0:
            continue
        # dividing out gcd(piv, f) up front keeps the products small
        g0 = gcd(piv, f)
        p2 = piv // g0
        f2 = f // g0
        if p2 == 1:
            if f2 == 1:
                new = [x - y for x, y in zip(row, prow)]
            elif f2 == -1:
                new = [x + y for x, y in zip(row, prow)]
            else:
                new = [x - f2 * y for x, y in zip(row, prow)]
        elif f2 == 1:
            new = [p2 * x - y for x, y in zip(row, prow)]
        elif f2 == -1:
            new = [p2 * x + y for x, y in zip(row, prow)]
        else:
            new = [p2 * x - f2 * y for x, y in zip(row, prow)]
        dn = divs[i] * p2
        if dn < 0:
            dn = -dn
            new = [-v for v in new]
        g = gcd(dn, *new)
        if g > 1:
            new = [v // g for v in new]
            dn //= g
        M[i] = new
        divs[i] = dn
    # the pivot row's true values are divided by the pivot entry, so its old
    # divisor cancels and the entry itself becomes the divisor
    if piv < 0:
        piv = -piv
        prow = [-v for v in prow]
        M[r] = prow
    g = gcd(piv, *prow)
    if g > 1:
        M[r] = [v // g for v in prow]
        piv //= g
    divs[r] = piv


def _reduce_row(M: list[list[int]], divs: list[int], i: int) -> None:
    g = gcd(divs[i], *M[i])
    if g > 1:
        M[i] = [v // g for v in M[i]]
        divs[i] //= g


def verify_certificate(rows, rhs, c, x, y, maximize: bool = True) -> bool:
    """Exact optimality certificate: primal feasibility, dual feasibility,
    complementary slackness, and matching objective values."""
    m, n = len(rows), len(c)
    if len(x) != n or len(y) != m or len(rhs) != m:
        return False
    if any(v < 0 for v in x):
        return False
    for row, b in zip(rows, rhs):
        if sum((xi * a for xi, a in zip(x, row) if xi), Fraction(0)) != b:
            return False
    # A^T y with a common denominator keeps the accumulation in plain ints
    # when the constraint data is integer, which it is for every program here.
    yf = [Fraction(v) for v in y]
    den = lcm(*(v.denominator for v in yf)) if yf else 1
    ynum = [int(v * den) for v in yf]
    acc = [0] * n
    for vi, row in zip(ynum, rows):
        if vi:
            acc = [a + vi * v for a, v in zip(acc, row)]
    slack = [Fraction(a, den) - cj for a, cj in zip(acc, c)]
    if maximize:
        if any(s < 0 for s in slack):
            return False
    else:
        if any(s > 0 for s in slack):
            return False
    if any(s != 0 for s, xi in zip(slack, x) if xi):
        return False
    primal = sum((ci * xi for ci, xi in zip(c, x) if xi), Fraction(0))
    dual = sum((yi * b for yi, b in zip(y, rhs) if yi), Fraction(0))
    return primal == dual
