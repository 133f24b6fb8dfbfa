"""NDL abstract syntax and the canonical renderer."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union


@dataclass(frozen=True)
class Var:
    index: int

    def __str__(self) -> str:
        return f"t{self.index}"


@dataclass(frozen=True)
class ConstraintAtom:
    name: str
    a: Var
    b: Var


@dataclass(frozen=True)
class Swap:
    a: Var
    b: Var


@dataclass(frozen=True)
class Redirect:
    a: Var
    b: Var


@dataclass(frozen=True)
class Iterate:
    x: Var
    y: Var
    start: Var
    body: tuple["Atom", ...]


Atom = Union[ConstraintAtom, Swap, Redirect, Iterate]


@dataclass(frozen=True)
class Program:
    body: tuple[Atom, ...]


def _render_atom(atom: Atom) -> str:
    if isinstance(atom, ConstraintAtom):
        return f"constraint({atom.name}, {atom.a}, {atom.b})"
    if isinstance(atom, Swap):
        return f"swap_values({atom.a}, {atom.b})"
    if isinstance(atom, Redirect):
        return f"redirect({atom.a}, {atom.b})"
    inner = ", ".join(_render_atom(a) for a in atom.body)
    return f"iterate({atom.x} - {atom.y}, {atom.start}, ({inner}))"


def render(program: Program) -> str:
    """Canonical single-line text; parsing it back yields an equal AST."""
    return ", ".join(_render_atom(a) for a in program.body)


def atom_count(program: Program) -> int:
    """Number of atom nodes, counting iterate bodies recursively."""

    def count(atoms) -> int:
        total = 0
        for a in atoms:
            total += 1
            if isinstance(a, Iterate):
                total += count(a.body)
        return total

    return count(program.body)


def variables_used(program: Program) -> set[int]:
    """Indices of every program variable occurring in the program."""
    found: set[int] = set()

    def visit(atoms) -> None:
        for a in atoms:
            if isinstance(a, ConstraintAtom):
                found.update((a.a.index, a.b.index))
            elif isinstance(a, (Swap, Redirect)):
                found.update((a.a.index, a.b.index))
            else:
                found.update((a.x.index, a.y.index, a.start.index))
                visit(a.body)

    visit(program.body)
    return found
