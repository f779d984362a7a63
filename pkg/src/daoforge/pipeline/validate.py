"""Static validation of a DAOLang program against a registry."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..ast import Assignment, ExpressionStmt, Program, Transaction
from ..errors import EvalError, ParseError
from ..evaluator import eval_expr, eval_transaction, wrap_cross_chain
from ..parser import parse
from ..registry import Registry


@dataclass(frozen=True)
class ValidationReport:
    diagnostics: tuple[str, ...] = ()
    program: Program | None = field(default=None, compare=False)

    @property
    def ok(self) -> bool:
        return not self.diagnostics


def _where(stmt) -> str:
    return f"{stmt.pos[0]}:{stmt.pos[1]}: " if stmt.pos else ""


def sanity_check(program: Program | str, registry: Registry, require_actions: bool = False) -> ValidationReport:
    """Collect parse and semantic problems without stopping at the first one."""
    if isinstance(program, str):
        try:
            program = parse(program)
        except ParseError as exc:
            return ValidationReport((f"syntax error: {exc.diagnostic}",))
    diags: list[str] = []
    store: dict = {}
    groups: list[tuple[int, list]] = []
    for stmt in program.statements:
        try:
            if isinstance(stmt, Assignment):
                store[stmt.name] = eval_expr(stmt.expr, store)
                groups.append((-1, []))
            elif isinstance(stmt, ExpressionStmt):
                eval_expr(stmt.expr, store)
                groups.append((-1, []))
            elif isinstance(stmt, Transaction):
                chain, calls = eval_transaction(stmt, registry, store)
                if groups and groups[-1][0] == chain:
                    groups[-1][1].extend(calls)
                else:
                    groups.append((chain, list(calls)))
        except EvalError as exc:
            diags.append(f"{_where(stmt)}{type(exc).__name__}: {exc}")
    for chain, calls in groups:
        if chain >= 0:
            try:
                wrap_cross_chain(registry, chain, calls)
            except EvalError as exc:
                diags.append(f"{type(exc).__name__}: {exc}")
    if require_actions and not program.transactions() and not diags:
        diags.append("program contains no transaction")
    return ValidationReport(tuple(diags), program)
