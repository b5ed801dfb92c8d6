"""CNF formulas: DIMACS I/O, brute-force satisfiability, clause padding."""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Optional, Sequence

from ..errors import ParseError, RepeatedVariableInClause, UnsupportedClauseArity, ValidationError

Clause = tuple[int, ...]  # signed, 1-based literals


@dataclass(frozen=True)
class CnfFormula:
    num_vars: int
    clauses: tuple[Clause, ...] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "clauses", tuple(tuple(c) for c in self.clauses))
        for idx, clause in enumerate(self.clauses):
            if not clause:
                raise ValidationError(f"clause {idx + 1} is empty")
            if len(clause) > 3:
                raise UnsupportedClauseArity(f"clause {idx + 1} has {len(clause)} literals")
            seen = set()
            for lit in clause:
                var = abs(lit)
                if lit == 0 or var > self.num_vars:
                    raise ValidationError(f"clause {idx + 1}: literal {lit} out of range")
                if var in seen:
                    raise RepeatedVariableInClause(f"clause {idx + 1} repeats variable {var}")
                seen.add(var)

    def evaluate(self, assignment: Sequence[bool]) -> bool:
        """``assignment[i]`` is the value of variable ``i + 1``."""
        return all(any(assignment[abs(l) - 1] == (l > 0) for l in c) for c in self.clauses)

    def satisfying_assignment(self) -> Optional[tuple[bool, ...]]:
        """Truth-table search; only meant for small formulas."""
        for values in product((False, True), repeat=self.num_vars):
            if self.evaluate(values):
                return values
        return None

    def is_satisfiable(self) -> bool:
        return self.satisfying_assignment() is not None

    def occurrences(self, var: int) -> list[int]:
        """Indices of the clauses that mention ``var``, in formula order."""
        return [j for j, c in enumerate(self.clauses) if any(abs(l) == var for l in c)]


def parse_dimacs(text: str) -> CnfFormula:
    num_vars = num_clauses = None
    clauses: list[list[int]] = []
    current: list[int] = []
    last_line = 0
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("c") or line.startswith("%"):
            continue
        last_line = lineno
        if line.startswith("p"):
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise ParseError(lineno, "expected 'p cnf <vars> <clauses>'")
            try:
                num_vars, num_clauses = int(parts[2]), int(parts[3])
            except ValueError:
                raise ParseError(lineno, "non-integer header field") from None
            continue
        if num_vars is None:
            raise ParseError(lineno, "clause before 'p cnf' header")
        for tok in line.split():
            try:
                lit = int(tok)
            except ValueError:
                raise ParseError(lineno, f"bad literal {tok!r}") from None
            if lit == 0:
                if not current:
                    raise ParseError(lineno, "empty clause")
                if len(set(map(abs, current))) != len(current):
                    raise RepeatedVariableInClause(f"line {lineno}: clause repeats a variable")
                clauses.append(current)
                current = []
            else:
                if abs(lit) > num_vars:
                    raise ParseError(lineno, f"literal {lit} exceeds {num_vars} variables")
                current.append(lit)
    if num_vars is None:
        raise ParseError(1, "missing 'p cnf' header")
    if current:
        raise ParseError(last_line, "last clause is not terminated by 0")
    if num_clauses is not None and num_clauses != len(clauses):
        raise ParseError(last_line, f"header announces {num_clauses} clauses, found {len(clauses)}")
    return CnfFormula(num_vars, tuple(tuple(c) for c in clauses))


def emit_dimacs(formula: CnfFormula) -> str:
    lines = [f"p cnf {formula.num_vars} {len(formula.clauses)}"]
    lines += [" ".join(map(str, c)) + " 0" for c in formula.clauses]
    return "\n".join(lines) + "\n"


def pad_to_three(formula: CnfFormula) -> CnfFormula:
    """Rewrite 1- and 2-literal clauses as equisatisfiable 3-literal clauses.

    ``(a | b)`` becomes ``(a | b | y) & (a | b | ~y)`` and ``(a)`` becomes the
    four clauses ``(a | +-y | +-z)``, with ``y, z`` fresh variables. Every
    assignment of the original extends to the new formula and vice versa.
    """
    n = formula.num_vars
    out: list[Clause] = []
    for clause in formula.clauses:
        if len(clause) == 3:
            out.append(clause)
        elif len(clause) == 2:
            n += 1
            out += [clause + (n,), clause + (-n,)]
        else:
            y, z = n + 1, n + 2
            n += 2
            out += [clause + (sy * y, sz * z) for sy in (1, -1) for sz in (1, -1)]
    return CnfFormula(n, tuple(out))


def require_three_literals(formula: CnfFormula) -> None:
    for idx, clause in enumerate(formula.clauses):
        if len(clause) != 3:
            raise UnsupportedClauseArity(
                f"clause {idx + 1} has {len(clause)} literals; pad it first (pad_to_three)"
            )


def all_three_cnf(num_vars: int, num_clauses: int) -> Iterable[CnfFormula]:
    """Every ordered list of ``num_clauses`` clauses over all 3-subsets of the variables and all sign patterns."""
    from itertools import combinations

    shapes = [
        tuple(s * v for s, v in zip(signs, vars_))
        for vars_ in combinations(range(1, num_vars + 1), 3)
        for signs in product((1, -1), repeat=3)
    ]
    for clauses in product(shapes, repeat=num_clauses):
        yield CnfFormula(num_vars, clauses)
