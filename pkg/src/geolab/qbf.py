"""Quantified 3-CNF formulas with the prefix Ex1 Ax2 Ex3 ... Axn.

Literals are signed integers as in DIMACS: ``3`` is x3, ``-3`` is not-x3.
Variable x_i is existential for odd i and universal for even i.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Mapping


class QbfError(ValueError):
    pass


class QdimacsError(QbfError):
    """Parse failure.  `code` is one of the class constants."""

    NON_3CNF = "Non3Cnf"
    BAD_ALTERNATION = "BadAlternation"
    ODD_N = "OddVariableCount"
    MALFORMED = "Malformed"

    def __init__(self, code: str, line: int, reason: str) -> None:
        super().__init__(f"line {line}: {code}: {reason}")
        self.code = code
        self.line = line
        self.reason = reason


class NoWinningPolicy(QbfError):
    pass


@dataclass(frozen=True)
class QbfInstance:
    n: int
    clauses: tuple[tuple[int, int, int], ...]

    def __post_init__(self) -> None:
        clauses = tuple(tuple(int(x) for x in c) for c in self.clauses)
        object.__setattr__(self, "clauses", clauses)
        if self.n < 2 or self.n % 2:
            raise QbfError(f"variable count must be even and at least 2, got {self.n}")
        if not clauses:
            raise QbfError("at least one clause is required")
        for c in clauses:
            if len(c) != 3:
                raise QbfError(f"clause {c} does not have exactly three literals")
            for lit in c:
                if lit == 0 or abs(lit) > self.n:
                    raise QbfError(f"literal {lit} is outside 1..{self.n}")

    @property
    def m(self) -> int:
        return len(self.clauses)

    def to_dict(self) -> dict:
        return {"n": self.n, "clauses": [list(c) for c in self.clauses]}

    @classmethod
    def from_dict(cls, d: Mapping) -> "QbfInstance":
        return cls(int(d["n"]), tuple(tuple(c) for c in d["clauses"]))

    def to_qdimacs(self) -> str:
        lines = [f"p cnf {self.n} {self.m}"]
        for i in range(1, self.n + 1):
            lines.append(f"{'e' if i % 2 else 'a'} {i} 0")
        for c in self.clauses:
            lines.append(" ".join(str(x) for x in c) + " 0")
        return "\n".join(lines) + "\n"

    def satisfied(self, assignment: Mapping[int, bool] | list[bool]) -> bool:
        """Matrix value; list assignments are indexed by variable (slot 0 unused)."""
        return all(any(_lit_true(lit, assignment) for lit in c) for c in self.clauses)

    def __str__(self) -> str:
        def lit(x: int) -> str:
            return f"x{x}" if x > 0 else f"~x{-x}"

        return " & ".join("(" + " | ".join(lit(x) for x in c) + ")" for c in self.clauses)


def _lit_true(lit: int, assignment) -> bool:
    value = assignment[abs(lit)]
    return value if lit > 0 else not value


def is_existential(i: int) -> bool:
    return i % 2 == 1


# -- parsing ------------------------------------------------------------------


def parse_qdimacs(text: str) -> QbfInstance:
    header = None
    prefix: list[int] = []
    clauses: list[tuple[int, ...]] = []
    expected_q = "e"
    pending: list[int] = []
    pending_line = 0
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        tokens = line.split()
        if tokens[0] == "p":
            if header is not None:
                raise QdimacsError(QdimacsError.MALFORMED, lineno, "second problem line")
            if len(tokens) != 4 or tokens[1] != "cnf":
                raise QdimacsError(QdimacsError.MALFORMED, lineno, "expected 'p cnf <vars> <clauses>'")
            try:
                header = (int(tokens[2]), int(tokens[3]))
            except ValueError:
                raise QdimacsError(QdimacsError.MALFORMED, lineno, "non-integer header") from None
            continue
        if header is None:
            raise QdimacsError(QdimacsError.MALFORMED, lineno, "data before the problem line")
        if tokens[0] in ("e", "a"):
            if clauses or pending:
                raise QdimacsError(QdimacsError.MALFORMED, lineno, "quantifier after clauses")
            vars_ = _ints(tokens[1:], lineno)
            if vars_ and vars_[-1] == 0:
                vars_ = vars_[:-1]
            if not vars_ or 0 in vars_:
                raise QdimacsError(QdimacsError.MALFORMED, lineno, "bad quantifier line")
            for v in vars_:
                if tokens[0] != expected_q:
                    raise QdimacsError(
                        QdimacsError.BAD_ALTERNATION,
                        lineno,
                        f"x{v} is quantified '{tokens[0]}' but the prefix must alternate "
                        "starting with an existential",
                    )
                if v != len(prefix) + 1:
                    raise QdimacsError(
                        QdimacsError.BAD_ALTERNATION,
                        lineno,
                        f"x{v} out of order; variables must be quantified as 1, 2, 3, ...",
                    )
                prefix.append(v)
                expected_q = "a" if expected_q == "e" else "e"
            continue
        nums = _ints(tokens, lineno)
        if not pending:
            pending_line = lineno
        for x in nums:
            if x == 0:
                if len(pending) != 3:
                    raise QdimacsError(
                        QdimacsError.NON_3CNF, pending_line, f"clause has {len(pending)} literals"
                    )
                clauses.append(tuple(pending))
                pending = []
            else:
                pending.append(x)
    if header is None:
        raise QdimacsError(QdimacsError.MALFORMED, 0, "no problem line")
    if pending:
        raise QdimacsError(QdimacsError.MALFORMED, pending_line, "unterminated clause")
    n_decl, m_decl = header
    n = len(prefix)
    if n != n_decl:
        raise QdimacsError(
            QdimacsError.BAD_ALTERNATION, 0, f"header declares {n_decl} variables, prefix binds {n}"
        )
    if n % 2:
        raise QdimacsError(QdimacsError.ODD_N, 0, f"{n} variables; the prefix must end universally")
    if len(clauses) != m_decl:
        raise QdimacsError(
            QdimacsError.MALFORMED, 0, f"header declares {m_decl} clauses, found {len(clauses)}"
        )
    for c in clauses:
        for lit in c:
            if abs(lit) > n:
                raise QdimacsError(QdimacsError.MALFORMED, 0, f"literal {lit} is unquantified")
    try:
        return QbfInstance(n, tuple(clauses))
    except QbfError as exc:
        raise QdimacsError(QdimacsError.MALFORMED, 0, str(exc)) from None


def _ints(tokens: Iterable[str], lineno: int) -> list[int]:
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise QdimacsError(QdimacsError.MALFORMED, lineno, "expected integers") from None


# -- evaluation -----------------------------------------------------------------

DEFAULT_N_CAP = 24


def _check_cap(q: QbfInstance, cap: int) -> None:
    if q.n > cap:
        raise QbfError(f"n = {q.n} exceeds the evaluation cap of {cap}")


def evaluate(q: QbfInstance, cap: int = DEFAULT_N_CAP) -> bool:
    """Truth value by alternating minimax over all assignments."""
    _check_cap(q, cap)
    assignment: list[bool] = [False] * (q.n + 1)
    # Clauses indexed by their highest variable so each can be checked as
    # soon as it is fully assigned.
    closing: list[list[tuple[int, ...]]] = [[] for _ in range(q.n + 1)]
    for c in q.clauses:
        closing[max(abs(x) for x in c)].append(c)

    def value(i: int) -> bool:
        if i > q.n:
            return True
        for b in (True, False):
            assignment[i] = b
            if all(any(_lit_true(x, assignment) for x in c) for c in closing[i]):
                r = value(i + 1)
            else:
                r = False
            if is_existential(i) and r:
                return True
            if not is_existential(i) and not r:
                return False
        return not is_existential(i)

    return value(1)


class Policy:
    """Explicit decision tree for one side's variables.

    `choice(i, prefix)` gives the value of variable i once variables
    1..i-1 hold the values in `prefix`.
    """

    def __init__(self, side: str, n: int, table: dict[tuple[int, tuple[bool, ...]], bool]):
        self.side = side
        self.n = n
        self.table = table

    def choice(self, i: int, prefix: Iterable[bool]) -> bool:
        prefix = tuple(prefix)
        if len(prefix) != i - 1:
            raise QbfError(f"prefix for x{i} must have {i - 1} values")
        try:
            return self.table[(i, prefix)]
        except KeyError:
            raise QbfError(f"policy has no entry for x{i} after {prefix}") from None

    def owns(self, i: int) -> bool:
        return is_existential(i) == (self.side == "existential")

    def __len__(self) -> int:
        return len(self.table)


def optimal_policy(q: QbfInstance, side: str, cap: int = 16) -> Policy:
    """Winning decision tree for `side` ("existential" or "universal").

    Raises NoWinningPolicy if that side loses.  The tree is checked against
    every opposing assignment sequence before it is returned.
    """
    if side not in ("existential", "universal"):
        raise ValueError("side must be 'existential' or 'universal'")
    _check_cap(q, cap)
    truth = evaluate(q)
    if truth != (side == "existential"):
        raise NoWinningPolicy(f"the {side} player has no winning policy ({'true' if truth else 'false'} formula)")
    want = side == "existential"
    table: dict[tuple[int, tuple[bool, ...]], bool] = {}
    memo: dict[tuple[bool, ...], bool] = {}

    def value(prefix: tuple[bool, ...]) -> bool:
        if prefix in memo:
            return memo[prefix]
        i = len(prefix) + 1
        if i > q.n:
            r = q.satisfied((None,) + prefix)
        else:
            vals = [value(prefix + (b,)) for b in (True, False)]
            r = any(vals) if is_existential(i) else all(vals)
        memo[prefix] = r
        return r

    def build(prefix: tuple[bool, ...]) -> None:
        i = len(prefix) + 1
        if i > q.n:
            return
        mine = is_existential(i) == want
        if mine:
            pick = next(b for b in (True, False) if value(prefix + (b,)) == want)
            table[(i, prefix)] = pick
            build(prefix + (pick,))
        else:
            for b in (True, False):
                build(prefix + (b,))

    build(())
    policy = Policy(side, q.n, table)
    if not policy_wins(q, policy):
        raise QbfError("internal error: extracted policy does not win")
    return policy


def policy_wins(q: QbfInstance, policy: Policy) -> bool:
    """Exhaustively play `policy` against every opposing sequence."""
    want = policy.side == "existential"

    def walk(prefix: tuple[bool, ...]) -> bool:
        i = len(prefix) + 1
        if i > q.n:
            return q.satisfied((None,) + prefix) == want
        if policy.owns(i):
            return walk(prefix + (policy.choice(i, prefix),))
        return all(walk(prefix + (b,)) for b in (True, False))

    return walk(())


def constant_policy(side: str, n: int, value: bool | Mapping[int, bool]) -> Policy:
    """Policy that ignores the opponent, for scripted opponents in playouts."""
    table = {}
    for i in range(1, n + 1):
        if is_existential(i) == (side == "existential"):
            v = value if isinstance(value, bool) else value[i]
            for bits in range(2 ** (i - 1)):
                prefix = tuple(bool(bits >> k & 1) for k in range(i - 1))
                table[(i, prefix)] = v
    return Policy(side, n, table)


def random_policy(side: str, n: int, seed: int) -> Policy:
    rng = random.Random(seed)
    table = {}
    for i in range(1, n + 1):
        if is_existential(i) == (side == "existential"):
            for bits in range(2 ** (i - 1)):
                prefix = tuple(bool(bits >> k & 1) for k in range(i - 1))
                table[(i, prefix)] = rng.random() < 0.5
    return Policy(side, n, table)


# -- normalisation and generation ---------------------------------------------------


def normalize_for(q: QbfInstance, target: str) -> QbfInstance:
    """Equivalent instance meeting a construction's size assumptions.

    DPF wants an even clause count of at least 4, UPF at least 3 clauses,
    UPR at least 4 variables, 2 clauses and every literal present.  Clauses
    are padded by repeating existing ones cyclically.
    """
    target = target.upper()
    clauses = list(q.clauses)
    n = q.n
    if target == "DIF":
        return q
    if target == "DPF":
        base = len(clauses)
        while len(clauses) < 4 or len(clauses) % 2:
            clauses.append(clauses[len(clauses) % base])
    elif target == "UPF":
        base = len(clauses)
        while len(clauses) < 3:
            clauses.append(clauses[len(clauses) % base])
    elif target == "UPR":
        n = max(n, 4)
        present = {x for c in clauses for x in c}
        for i in range(1, n + 1):
            if i not in present or -i not in present:
                clauses.append((i, i, -i))
        if len(clauses) < 2:
            clauses.append((1, 1, -1))
    else:
        raise ValueError(f"unknown target {target!r}")
    return QbfInstance(n, tuple(clauses))


def random_instance(n: int, m: int, seed: int) -> QbfInstance:
    rng = random.Random(seed)
    clauses = tuple(
        tuple(rng.randint(1, n) * (1 if rng.random() < 0.5 else -1) for _ in range(3))
        for _ in range(m)
    )
    return QbfInstance(n, clauses)


def all_single_clause_instances(n: int = 2) -> list[QbfInstance]:
    """Every one-clause instance over n variables (ordered literal triples)."""
    lits = [s * i for i in range(1, n + 1) for s in (1, -1)]
    return [QbfInstance(n, ((a, b, c),)) for a in lits for b in lits for c in lits]
