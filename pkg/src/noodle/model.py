"""Constraint-model layer: problem representation, checking, and sampling.

A model declares integer variables with finite domains, named variable
groups, and constraints drawn from a small catalog (circuit,
all_different, not_equal).  Assignments are total maps from variables to
in-domain values.  Besides satisfaction checking, each constraint induces
a binary relation over variables (`relation_pairs`) that the NDL
interpreter enumerates; domains double as the pruning mechanism for
degenerate moves (an effect writing an out-of-domain value kills its
derivation branch).
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field

CONSTRAINT_KINDS = ("circuit", "all_different", "not_equal")
OBJECTIVE_KINDS = ("none", "next_cost", "distinct_count")


class ModelError(ValueError):
    """Raised for malformed model documents; carries a path into the document."""

    def __init__(self, message: str, path: str = ""):
        self.path = path
        self.message = message
        super().__init__(f"{path}: {message}" if path else message)


class InfeasibleError(ValueError):
    """Raised when a feasible assignment cannot be produced or is required."""


@dataclass(frozen=True)
class VarDecl:
    id: int  # dense, 1-based
    name: str
    domain: frozenset[int]


@dataclass(frozen=True)
class ConstraintDecl:
    id: int  # dense, 1-based
    kind: str
    scope: tuple[int, ...]  # variable ids
    alias: str | None = None

    @property
    def names(self) -> tuple[str, ...]:
        return (self.alias, self.kind) if self.alias else (self.kind,)


@dataclass(frozen=True)
class ObjectiveSpec:
    kind: str = "none"
    matrix: tuple[tuple[float, ...], ...] | None = None  # next_cost only
    group: str | None = None  # distinct_count only


@dataclass(frozen=True)
class Assignment:
    values: tuple[int, ...]  # position i-1 holds the value of variable i

    def __len__(self) -> int:
        return len(self.values)


@dataclass(frozen=True)
class Model:
    name: str
    variables: tuple[VarDecl, ...]
    groups: dict[str, tuple[int, ...]] = field(default_factory=dict)
    constraints: tuple[ConstraintDecl, ...] = ()
    structural: int | None = None  # constraint id of the designated circuit
    objective: ObjectiveSpec = ObjectiveSpec()

    def var(self, vid: int) -> VarDecl:
        return self.variables[vid - 1]

    def constraint(self, cid: int) -> ConstraintDecl:
        for c in self.constraints:
            if c.id == cid:
                return c
        raise KeyError(f"unknown constraint id {cid}")

    def constraints_by_name(self, name: str) -> list[ConstraintDecl]:
        """Constraints whose alias or kind matches ``name``."""
        return [c for c in self.constraints if name in c.names]

    def constraint_names(self) -> list[str]:
        """Distinct surface names (alias if present, else kind), declaration order."""
        seen: list[str] = []
        for c in self.constraints:
            name = c.alias or c.kind
            if name not in seen:
                seen.append(name)
        return seen

    def kinds(self) -> list[str]:
        """Constraint kinds present, in declaration order."""
        seen: list[str] = []
        for c in self.constraints:
            if c.kind not in seen:
                seen.append(c.kind)
        return seen

    def structural_constraint(self) -> ConstraintDecl | None:
        return self.constraint(self.structural) if self.structural is not None else None

    def walk_positions(self) -> dict[int, int]:
        """1-based position of each variable along the structural group.

        Without a structural constraint the canonical chain x1, x2, ... xn
        over all variables supplies the positions.  This is the target
        coordinate system of the `redirect` effect.
        """
        sc = self.structural_constraint()
        scope = sc.scope if sc is not None else tuple(v.id for v in self.variables)
        return {vid: i + 1 for i, vid in enumerate(scope)}

    def validate_assignment(self, assignment: Assignment) -> None:
        if len(assignment.values) != len(self.variables):
            raise InfeasibleError(
                f"assignment has {len(assignment.values)} values, model has {len(self.variables)} variables"
            )
        for decl, value in zip(self.variables, assignment.values):
            if value not in decl.domain:
                raise InfeasibleError(f"value {value} outside domain of variable {decl.name!r}")


def _require(condition: bool, message: str, path: str) -> None:
    if not condition:
        raise ModelError(message, path)


def _parse_domain(spec, path: str) -> frozenset[int]:
    _require(isinstance(spec, dict), "domain must be an object", path)
    if "lo" in spec or "hi" in spec:
        _require("lo" in spec and "hi" in spec, "interval domain needs both 'lo' and 'hi'", path)
        lo, hi = spec["lo"], spec["hi"]
        _require(isinstance(lo, int) and isinstance(hi, int), "interval bounds must be integers", path)
        _require(lo <= hi, "empty domain", path)
        return frozenset(range(lo, hi + 1))
    if "set" in spec:
        values = spec["set"]
        _require(isinstance(values, list) and all(isinstance(v, int) for v in values), "domain set must be a list of integers", path)
        _require(len(values) > 0, "empty domain", path)
        _require(len(set(values)) == len(values), "duplicate values in domain set", path)
        return frozenset(values)
    raise ModelError("domain must have 'lo'/'hi' or 'set'", path)


def load_model(document) -> Model:
    """Build a validated :class:`Model` from a JSON text or parsed object.

    Errors carry a path into the document, e.g. ``constraints[1].kind``.
    """
    if isinstance(document, (str, bytes)):
        try:
            document = json.loads(document)
        except json.JSONDecodeError as exc:
            raise ModelError(f"not valid JSON: {exc}") from exc
    _require(isinstance(document, dict), "model document must be an object", "")

    name = document.get("name", "")
    _require(isinstance(name, str), "name must be a string", "name")

    raw_vars = document.get("variables")
    _require(isinstance(raw_vars, list) and raw_vars, "variables must be a non-empty list", "variables")
    variables = []
    ids_by_name: dict[str, int] = {}
    for i, rv in enumerate(raw_vars):
        path = f"variables[{i}]"
        _require(isinstance(rv, dict), "variable must be an object", path)
        vname = rv.get("name")
        _require(isinstance(vname, str) and vname, "variable needs a name", f"{path}.name")
        _require(vname not in ids_by_name, f"duplicate variable name {vname!r}", f"{path}.name")
        domain = _parse_domain(rv.get("domain"), f"{path}.domain")
        vid = i + 1
        ids_by_name[vname] = vid
        variables.append(VarDecl(id=vid, name=vname, domain=domain))

    def resolve_var(vname, path: str) -> int:
        _require(isinstance(vname, str), "variable reference must be a name string", path)
        _require(vname in ids_by_name, f"unknown variable {vname!r}", path)
        return ids_by_name[vname]

    groups: dict[str, tuple[int, ...]] = {}
    raw_groups = document.get("groups", {})
    _require(isinstance(raw_groups, dict), "groups must be an object", "groups")
    for gname, members in raw_groups.items():
        path = f"groups.{gname}"
        _require(isinstance(members, list) and members, "group must be a non-empty list", path)
        ids = tuple(resolve_var(m, f"{path}[{k}]") for k, m in enumerate(members))
        _require(len(set(ids)) == len(ids), "duplicate group member", path)
        groups[gname] = ids

    constraints = []
    raw_constraints = document.get("constraints", [])
    _require(isinstance(raw_constraints, list), "constraints must be a list", "constraints")
    for i, rc in enumerate(raw_constraints):
        path = f"constraints[{i}]"
        _require(isinstance(rc, dict), "constraint must be an object", path)
        kind = rc.get("kind")
        _require(kind in CONSTRAINT_KINDS, f"unknown constraint kind {kind!r}", f"{path}.kind")
        scope_spec = rc.get("scope")
        if isinstance(scope_spec, str):
            _require(scope_spec in groups, f"unknown group {scope_spec!r}", f"{path}.scope")
            scope = groups[scope_spec]
        elif isinstance(scope_spec, list):
            scope = tuple(resolve_var(m, f"{path}.scope[{k}]") for k, m in enumerate(scope_spec))
            _require(len(set(scope)) == len(scope), "duplicate variable in scope", f"{path}.scope")
        else:
            raise ModelError("scope must be a group name or a list of variable names", f"{path}.scope")
        if kind == "not_equal":
            _require(len(scope) == 2, "not_equal scope must have exactly 2 variables", f"{path}.scope")
        else:
            _require(len(scope) >= 1, f"{kind} scope must be non-empty", f"{path}.scope")
        if kind == "circuit":
            positions = set(range(1, len(scope) + 1))
            for vid in scope:
                decl = variables[vid - 1]
                _require(
                    decl.domain <= positions,
                    f"domain of {decl.name!r} not contained in circuit positions 1..{len(scope)}",
                    f"{path}.scope",
                )
        alias = rc.get("alias")
        _require(alias is None or isinstance(alias, str), "alias must be a string", f"{path}.alias")
        constraints.append(ConstraintDecl(id=i + 1, kind=kind, scope=scope, alias=alias))

    structural = None
    if document.get("structural") is not None:
        idx = document["structural"]
        _require(isinstance(idx, int) and 0 <= idx < len(constraints), "structural must index a constraint", "structural")
        _require(constraints[idx].kind == "circuit", "structural constraint must be of kind 'circuit'", "structural")
        structural = constraints[idx].id

    obj_spec = document.get("objective", {"kind": "none"})
    _require(isinstance(obj_spec, dict), "objective must be an object", "objective")
    okind = obj_spec.get("kind", "none")
    _require(okind in OBJECTIVE_KINDS, f"unknown objective kind {okind!r}", "objective.kind")
    matrix = None
    ogroup = None
    if okind == "next_cost":
        _require(structural is not None, "next_cost objective requires a structural constraint", "objective")
        side = len(constraints[document["structural"]].scope)
        raw_matrix = obj_spec.get("matrix")
        _require(isinstance(raw_matrix, list) and len(raw_matrix) == side, f"matrix must have {side} rows", "objective.matrix")
        rows = []
        for r, row in enumerate(raw_matrix):
            path = f"objective.matrix[{r}]"
            _require(isinstance(row, list) and len(row) == side, f"matrix row must have {side} entries", path)
            for c, entry in enumerate(row):
                _require(isinstance(entry, (int, float)), "matrix entries must be numbers", f"{path}[{c}]")
                _require(r == c or entry >= 0, "off-diagonal costs must be non-negative", f"{path}[{c}]")
            rows.append(tuple(row))
        matrix = tuple(rows)
    elif okind == "distinct_count":
        ogroup = obj_spec.get("group")
        _require(isinstance(ogroup, str) and ogroup in groups, f"unknown group {ogroup!r}", "objective.group")

    return Model(
        name=name,
        variables=tuple(variables),
        groups=groups,
        constraints=tuple(constraints),
        structural=structural,
        objective=ObjectiveSpec(kind=okind, matrix=matrix, group=ogroup),
    )


def load_assignment(document) -> Assignment:
    """Parse an assignment document ``{"values": [...]}``."""
    if isinstance(document, (str, bytes)):
        try:
            document = json.loads(document)
        except json.JSONDecodeError as exc:
            raise ModelError(f"not valid JSON: {exc}") from exc
    _require(isinstance(document, dict) and isinstance(document.get("values"), list), "assignment document must be {'values': [...]}", "values")
    values = document["values"]
    _require(all(isinstance(v, int) for v in values), "values must be integers", "values")
    return Assignment(values=tuple(values))


def _circuit_satisfied(constraint: ConstraintDecl, values: tuple[int, ...]) -> bool:
    """True iff the scope values form one cycle covering every scope position."""
    n = len(constraint.scope)
    pos = 1
    for step in range(n):
        vid = constraint.scope[pos - 1]
        nxt = values[vid - 1]
        if not 1 <= nxt <= n:
            return False
        pos = nxt
        if pos == 1:
            return step == n - 1
    return False


def check(model: Model, constraint_id: int, assignment: Assignment) -> bool:
    """Satisfaction of one constraint under a total, in-domain assignment."""
    c = model.constraint(constraint_id)
    values = assignment.values
    if c.kind == "circuit":
        return _circuit_satisfied(c, values)
    if c.kind == "all_different":
        scoped = [values[vid - 1] for vid in c.scope]
        return len(set(scoped)) == len(scoped)
    # not_equal
    a, b = c.scope
    return values[a - 1] != values[b - 1]


def violations(model: Model, assignment: Assignment) -> dict[str, int]:
    """Number of unsatisfied constraints per kind present in the model."""
    counts = {kind: 0 for kind in model.kinds()}
    for c in model.constraints:
        if not check(model, c.id, assignment):
            counts[c.kind] += 1
    return counts


def is_feasible(model: Model, assignment: Assignment) -> bool:
    return all(count == 0 for count in violations(model, assignment).values())


def relation_pairs(model: Model, constraint_id: int, assignment: Assignment) -> set[tuple[int, int]]:
    """The binary relation a constraint induces under the current assignment.

    circuit: the successor relation {(x, y) : value(x) = position(y)};
    all_different: current conflict pairs, both orderings;
    not_equal: both orderings of its static scope pair.
    """
    c = model.constraint(constraint_id)
    values = assignment.values
    if c.kind == "circuit":
        return {(vid, c.scope[values[vid - 1] - 1]) for vid in c.scope}
    if c.kind == "all_different":
        pairs = set()
        for i, a in enumerate(c.scope):
            for b in c.scope[i + 1 :]:
                if values[a - 1] == values[b - 1]:
                    pairs.add((a, b))
                    pairs.add((b, a))
        return pairs
    a, b = c.scope
    return {(a, b), (b, a)}


def objective(model: Model, assignment: Assignment):
    """Objective value; smaller is better.  `none` scores 0."""
    spec = model.objective
    if spec.kind == "none":
        return 0
    values = assignment.values
    if spec.kind == "next_cost":
        scope = model.structural_constraint().scope
        return sum(spec.matrix[i][values[vid - 1] - 1] for i, vid in enumerate(scope))
    # distinct_count
    return len({values[vid - 1] for vid in model.groups[spec.group]})


def seed_assignment(model: Model, rng_seed: int) -> Assignment:
    """Sample a feasible assignment, deterministic per (model, seed).

    Circuit scopes get a random single cycle from a seeded permutation.
    Remaining variables are colored greedily over a seeded connected
    order (breadth-first from a random root, neighbor order shuffled):
    each variable takes the smallest domain value not used by an
    already-colored partner of a not_equal or all_different constraint.
    The connected order keeps greedy cheap on sparse graphs; on paths it
    never needs a third color.
    """
    rng = random.Random(rng_seed)
    values: list[int | None] = [None] * len(model.variables)

    for c in model.constraints:
        if c.kind != "circuit":
            continue
        order = list(range(len(c.scope)))
        rng.shuffle(order)
        for k, scope_idx in enumerate(order):
            successor_pos = order[(k + 1) % len(order)] + 1
            values[c.scope[scope_idx] - 1] = successor_pos

    pending = [v.id for v in model.variables if values[v.id - 1] is None]
    partners: dict[int, set[int]] = {vid: set() for vid in pending}
    for c in model.constraints:
        if c.kind == "circuit":
            continue
        for a in c.scope:
            for b in c.scope:
                if a != b and a in partners:
                    partners[a].add(b)

    roots = list(pending)
    rng.shuffle(roots)
    queued = set()
    queue: list[int] = []
    for root in roots:
        if root in queued:
            continue
        queue.append(root)
        queued.add(root)
        head = len(queue) - 1
        while head < len(queue):
            vid = queue[head]
            head += 1
            fringe = sorted(w for w in partners[vid] if w in partners and w not in queued)
            rng.shuffle(fringe)
            for w in fringe:
                queue.append(w)
                queued.add(w)

    for vid in queue:
        used = {values[p - 1] for p in partners[vid] if values[p - 1] is not None}
        free = sorted(model.var(vid).domain - used)
        if not free:
            raise InfeasibleError("infeasible seed")
        values[vid - 1] = free[0]

    assignment = Assignment(values=tuple(values))
    model.validate_assignment(assignment)
    if not is_feasible(model, assignment):
        raise InfeasibleError("infeasible seed")
    return assignment
