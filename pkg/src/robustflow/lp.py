"""Exact rational simplex with dual extraction.

Problems are maximizations over nonnegative variables with optional finite
upper bounds.  The tableau is stored row-wise as sparse dicts of
``gmpy2.mpq`` rationals, which keeps the long, thin LPs produced by the time-indexed
formulations cheap to pivot.  Entering variables follow Dantzig's rule while
the objective improves; after a degenerate pivot the solver switches to
Bland's rule until progress resumes, which rules out cycling.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from gmpy2 import mpq

LE, GE, EQ = "<=", ">=", "="
OPTIMAL, INFEASIBLE, UNBOUNDED = "optimal", "infeasible", "unbounded"

DEFAULT_MAX_NONZEROS = 50_000

_ZERO = Fraction(0)
_QZERO = mpq(0)
_QONE = mpq(1)


def _q(x) -> mpq:
    return mpq(x.numerator, x.denominator)


def _frac(q) -> Fraction:
    return Fraction(int(q.numerator), int(q.denominator))


class LpTooLarge(RuntimeError):
    pass


@dataclass
class Constraint:
    coeffs: dict
    sense: str
    rhs: Fraction
    name: str = ""


@dataclass
class LpProblem:
    """``max c x`` subject to the constraints, ``0 <= x <= upper``."""

    objective: list = field(default_factory=list)
    constraints: list = field(default_factory=list)
    upper: list = field(default_factory=list)
    names: list = field(default_factory=list)

    @property
    def n_vars(self) -> int:
        return len(self.objective)

    def add_var(self, cost=0, upper=None, name="") -> int:
        self.objective.append(Fraction(cost))
        self.upper.append(None if upper is None else Fraction(upper))
        self.names.append(name or f"x{len(self.objective) - 1}")
        return len(self.objective) - 1

    def add_constraint(self, coeffs, sense, rhs, name="") -> int:
        if sense not in (LE, GE, EQ):
            raise ValueError(f"unknown relation {sense!r}")
        if not isinstance(coeffs, dict):
            coeffs = {j: c for j, c in enumerate(coeffs)}
        clean = {}
        for j, c in coeffs.items():
            if not 0 <= j < self.n_vars:
                raise IndexError(f"variable {j} out of range")
            if c != 0:
                clean[j] = Fraction(c)
        self.constraints.append(Constraint(clean, sense, Fraction(rhs), name))
        return len(self.constraints) - 1

    def nonzeros(self) -> int:
        return sum(len(c.coeffs) for c in self.constraints)

    def to_text(self) -> str:
        """Plain-text dump, one constraint per line, exact rationals."""

        def term_list(coeffs):
            parts = []
            for j in sorted(coeffs):
                c = coeffs[j]
                sign = "-" if c < 0 else "+"
                parts.append(f"{sign} {abs(c)} {self.names[j]}")
            text = " ".join(parts) if parts else "0"
            return text[2:] if text.startswith("+ ") else text

        lines = ["maximize", "  obj: " + term_list(
            {j: c for j, c in enumerate(self.objective) if c != 0}), "subject to"]
        for i, con in enumerate(self.constraints):
            label = con.name or f"c{i}"
            lines.append(f"  {label}: {term_list(con.coeffs)} {con.sense} {con.rhs}")
        lines.append("bounds")
        for j, name in enumerate(self.names):
            ub = self.upper[j]
            lines.append(f"  0 <= {name}" + ("" if ub is None else f" <= {ub}"))
        lines.append("end")
        return "\n".join(lines) + "\n"


@dataclass
class LpSolution:
    status: str
    x: list = field(default_factory=list)
    duals: list = field(default_factory=list)
    bound_duals: list = field(default_factory=list)
    objective: Fraction | None = None
    pivots: int = 0

    def dual_objective(self, problem: LpProblem) -> Fraction:
        total = sum((y * c.rhs for y, c in zip(self.duals, problem.constraints)), _ZERO)
        for w, ub in zip(self.bound_duals, problem.upper):
            if ub is not None:
                total += w * ub
        return total


def check_certificate(problem: LpProblem, sol: LpSolution) -> list:
    """Independently verify primal feasibility, dual feasibility and strong duality.

    Returns a list of failures; empty means ``sol`` is a proven optimum.
    """
    bad = []
    for j, v in enumerate(sol.x):
        if v < 0:
            bad.append(f"x{j} negative")
        ub = problem.upper[j]
        if ub is not None and v > ub:
            bad.append(f"x{j} above its bound")
    for i, (con, y) in enumerate(zip(problem.constraints, sol.duals)):
        lhs = sum((c * sol.x[j] for j, c in con.coeffs.items()), _ZERO)
        if con.sense == LE and lhs > con.rhs or con.sense == GE and lhs < con.rhs \
                or con.sense == EQ and lhs != con.rhs:
            bad.append(f"row {i} violated")
        if con.sense == LE and y < 0 or con.sense == GE and y > 0:
            bad.append(f"row {i} dual has the wrong sign")
        if y != 0 and lhs != con.rhs:
            bad.append(f"row {i} slack with nonzero dual")
    reduced = list(problem.objective)
    for con, y in zip(problem.constraints, sol.duals):
        if y:
            for j, c in con.coeffs.items():
                reduced[j] -= c * y
    for j, r in enumerate(reduced):
        w = sol.bound_duals[j] if sol.bound_duals else _ZERO
        if w < 0 or (w and problem.upper[j] is None):
            bad.append(f"bound dual of x{j} invalid")
        if r - w > 0:
            bad.append(f"dual constraint of x{j} violated")
    primal = sum((c * v for c, v in zip(problem.objective, sol.x)), _ZERO)
    if primal != sol.objective:
        bad.append("reported objective differs from c x")
    if sol.dual_objective(problem) != primal:
        bad.append("primal and dual objectives differ")
    return bad


def solve(problem: LpProblem, max_nonzeros: int = DEFAULT_MAX_NONZEROS) -> LpSolution:
    nnz = problem.nonzeros() + sum(u is not None for u in problem.upper)
    if nnz > max_nonzeros:
        raise LpTooLarge(f"LP has {nnz} nonzeros, above the cap of {max_nonzeros}")
    return _Simplex(problem).run()


class _Simplex:
    def __init__(self, problem: LpProblem):
        self.p = problem
        n = problem.n_vars
        rows, rhs, senses, flipped, origin = [], [], [], [], []
        for i, con in enumerate(problem.constraints):
            rows.append({j: _q(c) for j, c in con.coeffs.items()})
            rhs.append(_q(con.rhs))
            senses.append(con.sense)
            origin.append(("row", i))
        for j, ub in enumerate(problem.upper):
            if ub is not None:
                rows.append({j: _QONE})
                rhs.append(_q(ub))
                senses.append(LE)
                origin.append(("bound", j))
        for i in range(len(rows)):
            if rhs[i] < 0:
                rows[i] = {j: -c for j, c in rows[i].items()}
                rhs[i] = -rhs[i]
                senses[i] = {LE: GE, GE: LE, EQ: EQ}[senses[i]]
                flipped.append(True)
            else:
                flipped.append(False)

        # columns: structural | slack (<=) | surplus (>=) | artificial (>=, =)
        col = n
        self.unit_col = [None] * len(rows)  # column that starts as +e_i
        for i, sense in enumerate(senses):
            if sense == LE:
                rows[i][col] = _QONE
                self.unit_col[i] = col
                col += 1
        for i, sense in enumerate(senses):
            if sense == GE:
                rows[i][col] = -_QONE
                col += 1
        self.artificial = set()
        for i, sense in enumerate(senses):
            if sense != LE:
                rows[i][col] = _QONE
                self.unit_col[i] = col
                self.artificial.add(col)
                col += 1
        self.n_cols = col
        self.rows = rows
        self.rhs = rhs
        self.basis = list(self.unit_col)
        self.flipped = flipped
        self.origin = origin
        self.pivots = 0

    # objective row holds reduced costs c_j - c_B B^-1 A_j for the active costs
    def _set_objective(self, costs: dict):
        red = dict(costs)
        value = _QZERO
        for i, b in enumerate(self.basis):
            cb = costs.get(b)
            if cb:
                for j, a in self.rows[i].items():
                    red[j] = red.get(j, _QZERO) - cb * a
                value += cb * self.rhs[i]
        self.red = {j: c for j, c in red.items() if c != 0}
        self.value = value

    def _pivot(self, r: int, c: int):
        row = self.rows[r]
        piv = row[c]
        if piv != 1:
            inv = 1 / piv
            for j in row:
                row[j] *= inv
            self.rhs[r] *= inv
        row[c] = _QONE
        prow = list(row.items())
        prhs = self.rhs[r]
        for i, other in enumerate(self.rows):
            if i == r:
                continue
            f = other.get(c)
            if not f:
                continue
            for j, a in prow:
                v = other.get(j, _QZERO) - f * a
                if v:
                    other[j] = v
                else:
                    other.pop(j, None)
            self.rhs[i] -= f * prhs
        f = self.red.get(c)
        if f:
            for j, a in prow:
                v = self.red.get(j, _QZERO) - f * a
                if v:
                    self.red[j] = v
                else:
                    self.red.pop(j, None)
            self.value += f * prhs
        self.basis[r] = c
        self.pivots += 1

    def _iterate(self, allowed) -> str:
        bland = False
        while True:
            candidates = [j for j, v in self.red.items() if v > 0 and allowed(j)]
            if not candidates:
                return OPTIMAL
            if bland:
                c = min(candidates)
            else:
                c = max(candidates, key=lambda j: (self.red[j], -j))
            best = None
            for i, row in enumerate(self.rows):
                a = row.get(c)
                if a is not None and a > 0:
                    ratio = self.rhs[i] / a
                    key = (ratio, self.basis[i])
                    if best is None or key < best[0]:
                        best = (key, i)
            if best is None:
                return UNBOUNDED
            bland = best[0][0] == 0
            self._pivot(best[1], c)

    def run(self) -> LpSolution:
        n = self.p.n_vars
        if self.artificial:
            self._set_objective({a: -_QONE for a in self.artificial})
            self._iterate(lambda j: True)
            if self.value < 0:
                return LpSolution(INFEASIBLE, pivots=self.pivots)
            self._drive_out_artificials()
        costs = {j: _q(c) for j, c in enumerate(self.p.objective) if c != 0}
        self._set_objective(costs)
        status = self._iterate(lambda j: j not in self.artificial)
        if status == UNBOUNDED:
            return LpSolution(UNBOUNDED, pivots=self.pivots)

        x = [_QZERO] * n
        for i, b in enumerate(self.basis):
            if b < n:
                x[b] = self.rhs[i]
        m_rows = len(self.p.constraints)
        duals = [_QZERO] * m_rows
        bound_duals = [_QZERO] * n
        for i, (kind, k) in enumerate(self.origin):
            y = -self.red.get(self.unit_col[i], _QZERO)
            if self.flipped[i]:
                y = -y
            if kind == "row":
                duals[k] = y
            else:
                bound_duals[k] = y
        x = [_frac(v) for v in x]
        objective = sum((c * v for c, v in zip(self.p.objective, x)), _ZERO)
        return LpSolution(OPTIMAL, x, [_frac(y) for y in duals],
                          [_frac(w) for w in bound_duals], objective, self.pivots)

    def _drive_out_artificials(self):
        for i, b in enumerate(self.basis):
            if b not in self.artificial:
                continue
            for j in sorted(self.rows[i]):
                if j not in self.artificial and self.rows[i][j] != 0:
                    self._pivot(i, j)
                    break
