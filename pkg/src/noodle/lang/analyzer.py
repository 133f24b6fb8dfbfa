"""Static analysis and code optimization for NDL programs.

The analyzer enforces the binding discipline the grammar deliberately does
not encode: tests and iterate headers bind program variables, effects
never do, so an effect operand without a prior binding occurrence is an
error.  Diagnostics are the result, never an exception.

Error codes: UNBOUND_EFFECT, NO_EFFECT, UNKNOWN_CONSTRAINT,
VAR_BUDGET_EXCEEDED.  Warning codes: SELF_SWAP, DUPLICATE_TEST.
Program-level diagnostics use atom index -1; otherwise the index is the
atom's pre-order position.
"""

from __future__ import annotations

from dataclasses import dataclass

from noodle.lang.ast import ConstraintAtom, Iterate, Program, Redirect, Swap, variables_used
from noodle.model import Model

DEFAULT_VAR_BUDGET = 6


@dataclass(frozen=True)
class Diagnostic:
    code: str
    message: str
    atom_index: int


@dataclass(frozen=True)
class Diagnostics:
    errors: tuple[Diagnostic, ...]
    warnings: tuple[Diagnostic, ...]

    @property
    def ok(self) -> bool:
        return not self.errors

    def codes(self) -> set[str]:
        return {d.code for d in self.errors} | {d.code for d in self.warnings}


def analyze(program: Program, model: Model, budget: int = DEFAULT_VAR_BUDGET) -> Diagnostics:
    errors: list[Diagnostic] = []
    warnings: list[Diagnostic] = []
    bound: set[int] = set()
    counter = [0]

    def next_index() -> int:
        counter[0] += 1
        return counter[0] - 1

    def visit_conj(atoms) -> None:
        previous = None
        for atom in atoms:
            idx = next_index()
            if isinstance(atom, ConstraintAtom):
                if atom == previous:
                    warnings.append(Diagnostic("DUPLICATE_TEST", f"adjacent duplicate test {atom.name}({atom.a}, {atom.b})", idx))
                if not model.constraints_by_name(atom.name):
                    errors.append(Diagnostic("UNKNOWN_CONSTRAINT", f"{atom.name!r} matches no model constraint or alias", idx))
                bound.update((atom.a.index, atom.b.index))
            elif isinstance(atom, (Swap, Redirect)):
                head = "swap_values" if isinstance(atom, Swap) else "redirect"
                unbound = [v for v in (atom.a, atom.b) if v.index not in bound]
                if unbound:
                    names = ", ".join(str(v) for v in dict.fromkeys(unbound))
                    errors.append(Diagnostic("UNBOUND_EFFECT", f"{head} operand ({names}) has no prior binding occurrence", idx))
                if isinstance(atom, Swap) and atom.a == atom.b:
                    warnings.append(Diagnostic("SELF_SWAP", f"swap_values({atom.a}, {atom.b}) has no effect", idx))
            else:  # Iterate; the header binds x, y, and start if free
                bound.update((atom.x.index, atom.y.index, atom.start.index))
                visit_conj(atom.body)
            previous = atom

    visit_conj(program.body)

    def has_effect(atoms) -> bool:
        return any(
            isinstance(a, (Swap, Redirect)) or (isinstance(a, Iterate) and has_effect(a.body))
            for a in atoms
        )

    if not has_effect(program.body):
        errors.append(Diagnostic("NO_EFFECT", "program contains no swap_values or redirect", -1))

    over_budget = sorted(v for v in variables_used(program) if v >= budget)
    if over_budget:
        names = ", ".join(f"t{v}" for v in over_budget)
        errors.append(Diagnostic("VAR_BUDGET_EXCEEDED", f"{names} beyond budget of {budget} variables (t0..t{budget - 1})", -1))

    return Diagnostics(errors=tuple(errors), warnings=tuple(warnings))


def _optimize_conj(atoms) -> tuple:
    cleaned = []
    for atom in atoms:
        if isinstance(atom, Iterate):
            atom = Iterate(x=atom.x, y=atom.y, start=atom.start, body=_optimize_conj(atom.body))
        if isinstance(atom, Swap) and atom.a == atom.b:
            continue
        if isinstance(atom, ConstraintAtom) and cleaned and cleaned[-1] == atom:
            continue
        cleaned.append(atom)
    if not cleaned:
        # a conjunction must stay non-empty; keep the first (inert) atom
        cleaned = [atoms[0]]
    return tuple(cleaned)


def optimize(program: Program) -> Program:
    """Drop self-swaps and adjacent duplicate tests; idempotent.

    Both removals are no-ops at run time (a self-swap always succeeds
    without touching state; an adjacent duplicate test re-checks the same
    pair against an unchanged relation), so the induced neighbor set is
    preserved.
    """
    return Program(body=_optimize_conj(program.body))
