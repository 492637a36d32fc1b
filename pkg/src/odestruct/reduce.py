"""System reduction: linear-pivot triangularization and polynomial ansatz.

triangularize repeatedly solves an equation linear in some unknown atom
(an unknown function, one of its derivatives, or an undetermined
constant), records the pivot coefficient as a nonvanishing restriction,
spawns the pivot-zero alternative as a sibling branch, substitutes, and
normalizes.  It is a documented stand-in for full differential
elimination: no pseudo-division, no factorization-based splitting.

ansatz_solve replaces every unknown function by a polynomial in x with
undetermined constants, collects x-power coefficients, triangularizes the
resulting algebraic system, and pins leftover free constants by a small
deterministic grid search.  The grid tries 0 first, so genuinely free
constants default to 0 while constants whose vanishing would violate an
inequation advance to 1.
"""

import itertools
import re
from dataclasses import dataclass, field

from .errors import BranchLimitExceeded, SearchExhausted, ZeroDenominator
from .expr import E_ZERO, Expr, const, param, x
from .matching import DiffSystem
from .rnf import atom_desc, find_atom, p_collect

__all__ = ["CaseBranch", "triangularize", "ansatz_solve"]

_MAX_PIVOTS = 64


@dataclass
class CaseBranch:
    solved: dict = field(default_factory=dict)          # (name, order) -> Expr
    residual_equations: list = field(default_factory=list)
    conditions: list = field(default_factory=list)      # coefficient-only, = 0
    restrictions: list = field(default_factory=list)    # != 0

    def to_json(self):
        from .parser import to_text

        return {
            "solved": {_key_text(k): to_text(v) for k, v in self.solved.items()},
            "residual_equations": [f"{to_text(e)}=0" for e in self.residual_equations],
            "conditions": [f"{to_text(e)}=0" for e in self.conditions],
            "restrictions": [f"{to_text(e)}<>0" for e in self.restrictions],
        }


def _key_text(key):
    name, order = key
    if order == 0:
        return name
    if order == 1:
        return f"diff({name},x)"
    return f"diff({name},x,{order})"


# ---------------------------------------------------------------------------
# Pivot machinery


def _target_atoms(e, targets):
    """Solvable atoms in e: (aid, name, order) for unknowns/params in targets."""
    out = []
    for aid in e.atoms():
        desc = atom_desc(aid)
        if desc[0] == "unk" and desc[1] in targets:
            out.append((aid, desc[1], desc[2]))
        elif desc[0] == "param" and desc[1] in targets:
            out.append((aid, desc[1], 0))
    return out


def _unknown_degree(e, targets):
    """Total degree of e's numerator in the target atoms."""
    best = 0
    for mono in e.num:
        tot = 0
        for aid, exp in mono:
            desc = atom_desc(aid)
            if desc[0] in ("unk", "param") and desc[1] in targets:
                tot += exp
        if tot > best:
            best = tot
    return best


_NAME_SPLIT = re.compile(r"^(.*?)(\d*)$")


def _name_pref(name):
    stem, idx = _NAME_SPLIT.match(name).groups()
    rank = {"b": 0, "a": 1}.get(stem, 2)
    return (rank, stem, -(int(idx) if idx else -1))


def _solve_linear(e, aid):
    """(B, C) with e = C*atom + B when e is linear in the atom, else None."""
    buckets = p_collect(e.num, aid)
    if not buckets or max(buckets) != 1:
        return None
    c = Expr(buckets[1], dict(e.den))
    b = Expr(buckets.get(0, {}), dict(e.den)) if 0 in buckets else E_ZERO
    return b, c


def _clean(e):
    """Numerator of e, sign-canonical; None when it normalizes to zero."""
    n = e.numerator().sign_canonical()
    return None if n.is_zero else n


def _dedupe(equations):
    seen = set()
    out = []
    for e in equations:
        if e not in seen:
            seen.add(e)
            out.append(e)
    return out


def _pick_pivot(equations, targets):
    best = None
    for idx, e in enumerate(equations):
        atoms = _target_atoms(e, targets)
        if not atoms:
            continue
        deg = _unknown_degree(e, targets)
        names = len({n for _, n, _ in atoms})
        for aid, name, order in atoms:
            lin = _solve_linear(e, aid)
            if lin is None:
                continue
            key = (deg, names, _name_pref(name), -order, idx)
            if best is None or key < best[0]:
                best = (key, idx, name, order, lin)
    return best


@dataclass
class _Work:
    equations: list
    solved: dict
    restrictions: list


def triangularize(sys, max_branches=16):
    """Reduce a system to solved branches with restrictions and conditions.

    Each branch's solved map, substituted into the original system, leaves
    residuals that split into coefficient-only conditions and (rarely)
    equations still involving unknowns.  Branches whose equations force a
    nonzero constant or x-polynomial to vanish are dropped as inconsistent.
    """
    targets = set(sys.unknowns)
    original = [e for e in (_clean(q) for q in sys.equations) if e is not None]
    original = _dedupe(original)
    queue = [_Work(list(original), {}, [])]
    finished = []

    while queue:
        if len(finished) + len(queue) > max_branches:
            err = BranchLimitExceeded(f"more than {max_branches} branches")
            err.partial = finished
            raise err
        work = queue.pop()
        branch = _run_branch(work, targets, original, queue)
        if branch is not None:
            finished.append(branch)
    return finished


def _run_branch(work, targets, original, queue):
    equations = work.equations
    solved = work.solved
    restrictions = work.restrictions

    for _ in range(_MAX_PIVOTS):
        active = []
        for e in equations:
            if _target_atoms(e, targets):
                active.append(e)
            elif not e.unknowns():
                return None  # nonzero with no unknowns at all: inconsistent
        equations = active

        pick = _pick_pivot(equations, targets)
        if pick is None:
            return _finalize(original, solved, restrictions, targets)
        _, idx, name, order, (b, c) = pick

        if not c.is_const:
            # pivot-zero alternative becomes a sibling branch
            sibling_eqs = [q for k, q in enumerate(equations) if k != idx]
            for extra in (c, b):
                ce = _clean(extra)
                if ce is not None:
                    sibling_eqs.append(ce)
            queue.append(_Work(_dedupe(sibling_eqs), dict(solved),
                               list(restrictions)))
            restrictions = restrictions + [c.numerator().sign_canonical()]

        step = {(name, order): -b / c}
        solved = dict(solved)
        solved[(name, order)] = step[(name, order)]
        next_eqs = []
        for k, q in enumerate(equations):
            if k == idx:
                continue
            sub = _clean(q.substitute(unk_map=step))
            if sub is not None:
                next_eqs.append(sub)
        equations = _dedupe(next_eqs)

    err = BranchLimitExceeded(f"pivot limit {_MAX_PIVOTS} hit")
    err.partial = []
    raise err


def _finalize(original, solved, restrictions, targets):
    branch = CaseBranch(solved=solved)
    for e in original:
        try:
            r = _clean(e.substitute(unk_map=solved) if solved else e)
        except ZeroDenominator:
            return None  # substitution hit a vanishing pivot: inconsistent
        if r is None:
            continue
        if _target_atoms(r, targets):
            branch.residual_equations.append(r)
        elif r.unknowns():
            branch.conditions.append(r)
        else:
            return None  # forces a nonzero coefficient-free expression to vanish
    seen = set()
    for r in restrictions:
        try:
            rs = r.substitute(unk_map=solved) if solved else r
            rs = rs.numerator().sign_canonical()
        except ZeroDenominator:
            return None
        if rs.is_zero:
            return None  # restriction identically violated
        if rs.is_const or rs in seen:
            continue
        seen.add(rs)
        branch.restrictions.append(rs)
    return branch


# ---------------------------------------------------------------------------
# Undetermined-coefficients ansatz


_GRID = (0, 1, -1, 2)
_MAX_FREE = 7


def ansatz_solve(sys, degree, max_branches=64, grid=_GRID):
    """Solve a system by a polynomial-in-x ansatz with undetermined constants.

    Every unknown u becomes sum of u_i * x^i for i <= degree.  The system's
    coefficient functions must be concrete (no unknown names outside
    sys.unknowns).  Returns a list of (assignments, leftover_conditions);
    assignments are exact rational polynomials in x.
    """
    if degree < 0:
        raise ValueError("ansatz degree must be nonnegative")
    targets = set(sys.unknowns)
    foreign = set()
    for e in list(sys.equations) + list(sys.inequations):
        for n, _ in e.unknowns():
            if n not in targets:
                foreign.add(n)
    if foreign:
        err = SearchExhausted(
            f"symbolic coefficients {sorted(foreign)} prevent the ansatz")
        err.partial = []
        raise err

    xe = x()
    pnames = {}
    unk_map = {}
    for u in sorted(targets):
        names = [f"{u}_{i}" for i in range(degree + 1)]
        pnames[u] = names
        unk_map[(u, 0)] = sum((param(n) * xe ** i for i, n in enumerate(names)),
                              E_ZERO)

    algebraic = []
    for e in sys.equations:
        sub = e.substitute(unk_map=unk_map).numerator()
        algebraic.extend(_x_coefficients(sub))
    algebraic = _dedupe([e for e in (q.sign_canonical() for q in algebraic)
                         if not e.is_zero])
    all_params = sorted(n for ns in pnames.values() for n in ns)
    asys = DiffSystem(mode="algebraic", unknowns=all_params,
                      equations=algebraic)

    try:
        branches = triangularize(asys, max_branches=max_branches)
    except BranchLimitExceeded as exc:
        err = SearchExhausted(str(exc))
        err.partial = getattr(exc, "partial", [])
        raise err from None

    results = []
    seen = set()
    for branch in branches:
        for got in _pin_branch(branch, asys, sys, pnames, grid):
            key = tuple(sorted(got.items()))
            if key not in seen:
                seen.add(key)
                results.append((got, []))
            if len(results) >= max_branches:
                return results
    return results


def _x_coefficients(e):
    """Coefficients of x powers of a polynomial expression."""
    aid = find_atom(("var", "x"))
    if aid is None:
        return [e]
    buckets = p_collect(e.num, aid)
    return [Expr(buckets[k], dict(e.den)) for k in sorted(buckets)]


def _pin_branch(branch, asys, sys, pnames, grid):
    """Yield every grid assignment of the free constants that validates.

    Screening runs on the collected algebraic system (pure parameter
    substitution, cheap); survivors get a final check against the original
    system, including inequations.
    """
    all_params = [n for ns in pnames.values() for n in ns]
    solved_names = {name for (name, _) in branch.solved}
    free = sorted(set(all_params) - solved_names)
    if len(free) > _MAX_FREE:
        err = SearchExhausted(
            f"{len(free)} free constants exceed the grid budget {_MAX_FREE}")
        err.partial = []
        raise err

    for values in itertools.product(grid, repeat=len(free)):
        pin = {n: const(v) for n, v in zip(free, values)}
        got = _assemble(branch, pnames, pin)
        if got is None:
            continue
        assign, constants = got
        if not all(e.substitute(params=constants).is_zero
                   for e in asys.equations):
            continue
        if _validates(assign, sys):
            yield assign


def _assemble(branch, pnames, pin):
    """Concrete polynomials for every unknown under one pinning, or None.

    Returns (assignments, constants): the per-unknown polynomials in x and
    the flat parameter-name -> rational-constant map behind them.
    """
    values = dict(pin)
    # later pivots never reference earlier ones, so reverse order resolves
    for (name, _), rhs in reversed(list(branch.solved.items())):
        try:
            v = rhs.substitute(params=values)
        except ZeroDenominator:
            return None
        if not v.is_const:
            return None
        values[name] = const(v.const_value())
    xe = x()
    out = {}
    for u, names in pnames.items():
        e = E_ZERO
        for i, n in enumerate(names):
            e = e + values[n] * xe ** i
        out[u] = e
    return out, values


def _validates(assign, sys):
    unk_map = {(u, 0): e for u, e in assign.items()}
    for e in sys.equations:
        try:
            if not e.substitute(unk_map=unk_map).is_zero:
                return False
        except ZeroDenominator:
            return False
    for e in sys.inequations:
        try:
            if e.substitute(unk_map=unk_map).is_zero:
                return False
        except ZeroDenominator:
            return False
    return True
