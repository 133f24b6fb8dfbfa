"""Total, fuel-bounded, nondeterministic NDL interpreter.

``neighbors`` explores every derivation branch of a program depth-first
and returns the distinct terminal assignments other than the start.

Atom semantics, with R the relation a constraint name induces on the
live state:

* ``constraint(name, a, b)``: with both operands unbound, branch over all
  pairs of R, binding them; with one bound, branch over the matching
  pairs; with both bound, succeed iff the bound pair is in R.
* ``swap_values(a, b)``: both bound; exchange the two variables' values,
  failing the branch if either landing value is outside the receiving
  variable's domain.
* ``redirect(a, b)``: both bound; set a's value to b's walk position
  (its 1-based position in the structural group, or in variable order
  when the model has no structural constraint), failing the branch if
  that position is outside a's domain.
* ``iterate(x - y, s, body)``: snapshot the structural successor relation
  at loop entry (the canonical chain x1 -> x2 -> ... -> xn without a
  structural constraint) and walk it from s's binding, one pair per step.
  Each step rebinds (x, y) to the current pair and runs the body with
  committed choice (first success only).  The walk stops when the body
  fails, when the next pair would revisit the start node, when the
  snapshot has no successor for the current node, or after group-size
  steps.
  Every prefix of 1..k successful steps continues the derivation as a
  separate branch; at least one successful step is required.  An unbound
  s branches over the walk scope, generator-style.

Bindings grow monotonically along a branch except for iterate headers,
which rebind x and y at every step.  Effects in one branch never leak
into a sibling: state is copied before every write.

Totality: every branch point is finite (relations have at most n^2
pairs, walks at most group-size steps) and programs are finite, so the
interpreter terminates even with unlimited fuel.  Fuel merely bounds the
cost: when it runs out the remaining branches are abandoned and the
result is flagged truncated, never an exception.
"""

from __future__ import annotations

from dataclasses import dataclass

from noodle.lang.ast import ConstraintAtom, Iterate, Program, Redirect, Swap
from noodle.model import Assignment, Model

DEFAULT_FUEL = 1_000_000
DEFAULT_CAP = 100_000


@dataclass(frozen=True)
class NeighborSet:
    assignments: tuple[Assignment, ...]
    truncated: bool
    steps_used: int = 0

    def __len__(self) -> int:
        return len(self.assignments)


class _OutOfFuel(Exception):
    pass


class _CapReached(Exception):
    pass


class _Context:
    """Per-call lookup tables; the model itself is never mutated."""

    def __init__(self, model: Model, reverse_pairs: bool):
        self.model = model
        self.reverse_pairs = reverse_pairs
        self.domains = [v.domain for v in model.variables]
        self.by_name: dict[str, list] = {}
        for c in model.constraints:
            for name in c.names:
                self.by_name.setdefault(name, [])
                if c not in self.by_name[name]:
                    self.by_name[name].append(c)
        self.walk_pos = model.walk_positions()
        structural = model.structural_constraint()
        if structural is not None:
            self.walk_scope = structural.scope
        else:
            self.walk_scope = tuple(v.id for v in model.variables)
        self.group_size = len(self.walk_scope)

    def relation(self, name: str, state: list[int]) -> list[tuple[int, int]]:
        pairs: set[tuple[int, int]] = set()
        for c in self.by_name.get(name, ()):
            if c.kind == "circuit":
                size = len(c.scope)
                for vid in c.scope:
                    value = state[vid - 1]
                    if 1 <= value <= size:
                        pairs.add((vid, c.scope[value - 1]))
            elif c.kind == "all_different":
                for i, a in enumerate(c.scope):
                    for b in c.scope[i + 1 :]:
                        if state[a - 1] == state[b - 1]:
                            pairs.add((a, b))
                            pairs.add((b, a))
            else:  # not_equal
                a, b = c.scope
                pairs.add((a, b))
                pairs.add((b, a))
        ordered = sorted(pairs)
        if self.reverse_pairs:
            ordered.reverse()
        return ordered

    def walk_successors(self, state: list[int]) -> dict[int, int]:
        """Snapshot successor map for iterate.

        Built from the structural circuit (a function of the scope, so
        every entry is unique) or from the canonical variable chain; a
        variable outside the map is a missing successor and stops walks.
        """
        structural = self.model.structural_constraint()
        succ: dict[int, int] = {}
        if structural is not None:
            size = len(structural.scope)
            for vid in structural.scope:
                value = state[vid - 1]
                if 1 <= value <= size:
                    succ[vid] = structural.scope[value - 1]
        else:
            ids = self.walk_scope
            for a, b in zip(ids, ids[1:]):
                succ[a] = b
        return succ


def neighbors(
    program: Program,
    model: Model,
    start: Assignment,
    fuel: int = DEFAULT_FUEL,
    cap: int = DEFAULT_CAP,
    _reverse_pairs: bool = False,
) -> NeighborSet:
    """Materialize the neighborhood of ``start`` under ``program``.

    Callers are expected to have run the analyzer first; programs that
    slipped past it (unbound effect operands at run time) simply fail
    their branches.  ``start`` is never mutated.
    """
    model.validate_assignment(start)
    ctx = _Context(model, _reverse_pairs)
    start_values = tuple(start.values)
    results: set[tuple[int, ...]] = set()
    truncated = False
    remaining = [fuel]

    def spend() -> None:
        if remaining[0] <= 0:
            raise _OutOfFuel
        remaining[0] -= 1

    def eval_seq(atoms, idx, env, state):
        if idx == len(atoms):
            yield env, state
            return
        for env2, state2 in eval_atom(atoms[idx], env, state):
            yield from eval_seq(atoms, idx + 1, env2, state2)

    def eval_atom(atom, env, state):
        spend()
        if isinstance(atom, ConstraintAtom):
            relation = ctx.relation(atom.name, state)
            ai, bi = atom.a.index, atom.b.index
            bound_a, bound_b = env.get(ai), env.get(bi)
            if bound_a is not None and bound_b is not None:
                if (bound_a, bound_b) in relation:
                    yield env, state
                return
            for u, v in relation:
                if bound_a is not None and u != bound_a:
                    continue
                if bound_b is not None and v != bound_b:
                    continue
                if ai == bi and u != v:
                    continue
                env2 = dict(env)
                env2[ai] = u
                env2[bi] = v
                yield env2, state
            return

        if isinstance(atom, Swap):
            a, b = env.get(atom.a.index), env.get(atom.b.index)
            if a is None or b is None:
                return
            va, vb = state[a - 1], state[b - 1]
            if vb not in ctx.domains[a - 1] or va not in ctx.domains[b - 1]:
                return
            state2 = list(state)
            state2[a - 1], state2[b - 1] = vb, va
            yield env, state2
            return

        if isinstance(atom, Redirect):
            a, b = env.get(atom.a.index), env.get(atom.b.index)
            if a is None or b is None:
                return
            position = ctx.walk_pos.get(b)
            if position is None or position not in ctx.domains[a - 1]:
                return
            state2 = list(state)
            state2[a - 1] = position
            yield env, state2
            return

        # Iterate
        start_binding = env.get(atom.start.index)
        if start_binding is None:
            candidates = ctx.walk_scope
        else:
            candidates = (start_binding,)
        for start_vid in candidates:
            succ = ctx.walk_successors(state)
            env_walk = env
            if start_binding is None:
                env_walk = dict(env)
                env_walk[atom.start.index] = start_vid
            prefixes = []
            cur = start_vid
            walk_state = state
            walk_env = env_walk
            for _ in range(ctx.group_size):
                nxt = succ.get(cur)
                if nxt is None or nxt == start_vid:
                    break
                if atom.x.index == atom.y.index and cur != nxt:
                    break
                spend()
                env_step = dict(walk_env)
                env_step[atom.x.index] = cur
                env_step[atom.y.index] = nxt
                body_run = eval_seq(atom.body, 0, env_step, walk_state)
                outcome = next(body_run, None)
                body_run.close()
                if outcome is None:
                    break
                walk_env, walk_state = outcome
                prefixes.append((walk_env, walk_state))
                cur = nxt
            yield from prefixes

    def explore():
        for _, state in eval_seq(program.body, 0, {}, list(start_values)):
            candidate = tuple(state)
            if candidate == start_values or candidate in results:
                continue
            if len(results) >= cap:
                raise _CapReached
            results.add(candidate)

    try:
        explore()
    except _OutOfFuel:
        truncated = True
    except _CapReached:
        truncated = True

    assignments = tuple(Assignment(values=v) for v in sorted(results))
    return NeighborSet(assignments=assignments, truncated=truncated, steps_used=fuel - remaining[0])
