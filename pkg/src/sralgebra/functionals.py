"""Spaces of traces and supertraces on truncations F_D of the algebra.

Every (super)trace vanishes on monomials of nonzero ad T^{01}-weight, because
such a monomial m satisfies [T^{01}, m] = weight * m and T^{01} is even.  Both
strategies below therefore work on the weight-zero monomials only; the
bracket constraints are weight-homogeneous, so nothing is lost.

``annihilator``
    Nullspace of all generator brackets of total degree <= D + M, restricted
    to the combinations that land in F_D.  Certified by stabilization in M.
``recursive``
    Degree-by-degree elimination.  At stage 2k the values on degree-2k
    monomials are solved from cyclic moves ``a(w) X g -> +-X g a(w)`` whose
    leading terms survive, plus the moves along directions fixed by +-g whose
    leading terms cancel (these come from degree 2k+2 and land in F_2k).
    Values on C[G] are the initial parameters; inconsistent right-hand sides
    become constraints on them.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .algebra import KINDS, SUPERTRACE, TRACE, AlgebraElement, SRAlgebra, mono_degree, mono_weight
from .errors import DegreeExceeded, InternalError, NotStabilized
from .linalg import Echelon, Subspace, nullspace

ANNIHILATOR = "annihilator"
RECURSIVE = "recursive"


@dataclass
class LinearFunctional:
    kind: str
    degree: int
    values: dict  # weight-zero monomial -> FieldScalar (zeros omitted)
    provenance: str
    algebra: SRAlgebra = dc_field(repr=False, compare=False)
    label: str = ""

    def __call__(self, f: AlgebraElement):
        return evaluate(self, f)

    def value(self, mono):
        if mono_degree(mono) > self.degree:
            raise DegreeExceeded(f"monomial of degree {mono_degree(mono)} beyond F_{self.degree}")
        return self.values.get(mono, self.algebra.field.zero)


def evaluate(t: LinearFunctional, f: AlgebraElement):
    if f.degree > t.degree:
        raise DegreeExceeded(f"element of degree {f.degree} beyond F_{t.degree}")
    out = t.algebra.field.zero
    vals = t.values
    for m, c in f.terms.items():
        v = vals.get(m)
        if v is not None:
            out = out + c * v
    return out


@dataclass
class TraceSpace:
    kind: str
    degree: int
    strategy: str
    functionals: list
    subspace: Subspace
    certificate: dict  # strategy-specific evidence

    @property
    def dim(self) -> int:
        return len(self.functionals)


def weight_zero_basis(H: SRAlgebra, D: int) -> list:
    return [m for m in H.basis(D) if mono_weight(m) == 0]


def simple_generators(H: SRAlgebra) -> list:
    """A small set of reflections generating G."""
    group = H.group
    chosen = []
    reached = {group.identity}
    for r in H.rs.reflections:
        if len(reached) == group.order:
            break
        trial = set(reached)
        frontier = list(trial)
        gens = chosen + [r]
        while frontier:
            nxt = []
            for g in frontier:
                for s in gens:
                    p = group.table[g][s]
                    if p not in trial:
                        trial.add(p)
                        nxt.append(p)
            frontier = nxt
        if len(trial) > len(reached):
            chosen.append(r)
            reached = trial
    return chosen


def _functionals_from(H, kind, D, vectors, columns, provenance):
    sub = Subspace.from_vectors(vectors, columns, H.field)
    fns = [
        LinearFunctional(kind, D, dict(row), provenance, H, f"{kind}[{k}]")
        for k, row in enumerate(sub.vectors())
    ]
    return fns, sub


# -- strategy 1: annihilator ------------------------------------------------

def _generator_bracket_rows(H, kind, K):
    """All weight-zero brackets [x, m] with x a generator of H and total degree <= K."""
    for m in H.basis(K - 1):
        w = mono_weight(m)
        if w == 1:
            alpha = 0
        elif w == -1:
            alpha = 1
        else:
            continue
        for i in range(H.N):
            yield H.gen_bracket_mono(kind, alpha, i, m)
    gens = simple_generators(H)
    for m in H.basis(K):
        if mono_weight(m) == 0:
            for s in gens:
                yield H.group_bracket_mono(s, m)


def annihilator_at(H: SRAlgebra, kind: str, D: int, K: int) -> Subspace:
    """Functionals on F_D vanishing on every combination of brackets of degree <= K that lies in F_D."""
    cols = weight_zero_basis(H, K)
    high = [m for m in cols if mono_degree(m) > D]
    low = [m for m in cols if mono_degree(m) <= D]
    order = high + low
    index = {m: k for k, m in enumerate(order)}
    ech = Echelon(H.field)
    for row in _generator_bracket_rows(H, kind, K):
        vec = {index[m]: c for m, c in row.items()}
        if vec:
            ech.add(vec)
    n_high = len(high)
    landing = [
        {order[c]: v for c, v in row.items()} for p, row in ech.rows.items() if p >= n_high
    ]
    vecs = nullspace(landing, low, H.field)
    return Subspace.from_vectors(vecs, low, H.field)


def trace_space_annihilator(H: SRAlgebra, kind: str, D: int, margin_max: int = 6) -> TraceSpace:
    if kind not in KINDS:
        raise ValueError(f"unknown kind {kind!r}")
    if D < 0:
        raise ValueError("degree must be non-negative")
    dims = {}
    prev = None
    for M in range(2, margin_max + 1, 2):
        sub = annihilator_at(H, kind, D, D + M)
        dims[M] = sub.dim
        if prev is not None and prev.dim == sub.dim and prev == sub:
            fns = [
                LinearFunctional(kind, D, dict(row), ANNIHILATOR, H, f"{kind}[{k}]")
                for k, row in enumerate(sub.vectors())
            ]
            return TraceSpace(kind, D, ANNIHILATOR, fns, sub, {"dims_by_margin": dims, "stable_margin": M})
        prev = sub
    raise NotStabilized(f"{kind} space on F_{D} did not stabilize up to margin {margin_max}", dims)


# -- strategy 2: staged recursion -------------------------------------------

def _sign(kind):
    return 1 if kind == TRACE else -1


def adapted_directions(H: SRAlgebra, kind: str, g: int):
    """(fixed, moving): a basis of ker(R(g) - s I) and a completion to a basis of V."""
    field = H.field
    R = H.group.elements[g].matrix
    s = _sign(kind)
    rows = []
    for i in range(H.N):
        rows.append({j: R[i][j] - (field.scalar(s) if i == j else field.zero) for j in range(H.N)})
    fixed = nullspace(rows, list(range(H.N)), field)
    ech = Echelon(field)
    for v in fixed:
        ech.add(v)
    moving = []
    for j in range(H.N):
        if ech.add({j: field.one}) is not None:
            moving.append({j: field.one})
    return fixed, moving


def _direction_bracket(H, kind, alpha, w, mono):
    out = {}
    for i, wi in w.items():
        for m, c in H.gen_bracket_mono(kind, alpha, i, mono).items():
            v = out.get(m)
            out[m] = wi * c if v is None else v + wi * c
    return {m: c for m, c in out.items() if c}


def _stage_equations(H, kind, k, directions):
    top_deg = 2 * k
    gens = simple_generators(H)
    for m in H.monomials_of_degree(top_deg):
        if mono_weight(m) == 0:
            for s in gens:
                yield H.group_bracket_mono(s, m)
    for deg, which in ((top_deg - 1, 1), (top_deg + 1, 0)):
        if deg < 0:
            continue
        for m in H.monomials_of_degree(deg):
            w = mono_weight(m)
            if w not in (1, -1):
                continue
            alpha = 0 if w == 1 else 1
            for vec in directions[m[2]][which]:
                eq = _direction_bracket(H, kind, alpha, vec, m)
                if which == 0 and any(mono_degree(x) > top_deg for x in eq):
                    raise InternalError("fixed-direction move did not cancel its leading term")
                yield eq


def trace_space_recursive(H: SRAlgebra, kind: str, D: int) -> TraceSpace:
    if kind not in KINDS:
        raise ValueError(f"unknown kind {kind!r}")
    if D < 0:
        raise ValueError("degree must be non-negative")
    field = H.field
    directions = [adapted_directions(H, kind, g) for g in range(H.group.order)]
    forms = {}  # monomial -> {param: scalar}
    n_params = 0
    for g in range(H.group.order):
        forms[(H.zero_exp, H.zero_exp, g)] = {n_params: field.one}
        n_params += 1
    initial_params = n_params
    constraints = []  # rows over params
    stage_log = []
    for k in range(D // 2 + 1):
        top = [m for m in H.monomials_of_degree(2 * k) if mono_weight(m) == 0]
        unknown = [] if k == 0 else top
        T = len(unknown)
        index = {m: t for t, m in enumerate(unknown)}
        ech = Echelon(field)
        n_eq = 0
        for eq in _stage_equations(H, kind, k, directions):
            vec = {}
            for m, c in eq.items():
                t = index.get(m)
                if t is not None:
                    vec[t] = vec[t] + c if t in vec else c
                    continue
                form = forms.get(m)
                if form is None:
                    if mono_weight(m) != 0:
                        continue
                    raise InternalError(f"value of {H.format_monomial(m)} needed before its stage")
                for p, a in form.items():
                    col = T + p
                    cur = vec.get(col)
                    vec[col] = c * a if cur is None else cur + c * a
            vec = {c: v for c, v in vec.items() if v}
            if vec:
                ech.add(vec)
                n_eq += 1
        rref = ech.reduced_rows()
        new_constraints = 0
        pivots = {}
        for row in rref:
            p = min(row)
            if p >= T:
                constraints.append({c - T: v for c, v in row.items()})
                new_constraints += 1
            else:
                pivots[p] = row
        fresh = []
        for t, m in enumerate(unknown):
            if t not in pivots:
                forms[m] = {n_params: field.one}
                fresh.append(n_params)
                n_params += 1
        for t, row in pivots.items():
            form = {}
            for c, v in row.items():
                if c == t:
                    continue
                src = forms[unknown[c]] if c < T else {c - T: field.one}
                for p, a in src.items():
                    cur = form.get(p)
                    form[p] = -v * a if cur is None else cur - v * a
            forms[unknown[t]] = {p: a for p, a in form.items() if a}
        stage_log.append(
            {"degree": 2 * k, "unknowns": T, "equations": n_eq, "constraints": new_constraints, "free": len(fresh)}
        )
    params = list(range(n_params))
    solutions = nullspace(constraints, params, field)
    columns = weight_zero_basis(H, D)
    vectors = []
    for sol in solutions:
        vec = {}
        for m in columns:
            form = forms.get(m)
            if not form:
                continue
            val = field.zero
            for p, a in form.items():
                x = sol.get(p)
                if x is not None:
                    val = val + a * x
            if val:
                vec[m] = val
        vectors.append(vec)
    fns, sub = _functionals_from(H, kind, D, vectors, columns, RECURSIVE)
    cert = {
        "stages": stage_log,
        "initial_parameters": initial_params,
        "extra_parameters": n_params - initial_params,
        "determined_by_group_algebra": n_params == initial_params,
    }
    return TraceSpace(kind, D, RECURSIVE, fns, sub, cert)


def trace_space(H: SRAlgebra, kind: str, D: int, strategy: str = RECURSIVE, margin_max: int = 6) -> TraceSpace:
    if strategy == RECURSIVE:
        return trace_space_recursive(H, kind, D)
    if strategy == ANNIHILATOR:
        return trace_space_annihilator(H, kind, D, margin_max)
    raise ValueError(f"unknown strategy {strategy!r}")
