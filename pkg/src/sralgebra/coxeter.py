"""Root systems I2(n) and A(N-1), their reflection groups and eta data."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field

from .errors import InternalError, InvalidEta, InvalidParameter, InvalidRoot
from .scalars import RATIONAL, FieldScalar, NumberField

I2 = "I2"
A = "A"


def _dot(x, y):
    out = x[0] * y[0]
    for a, b in zip(x[1:], y[1:]):
        out = out + a * b
    return out


def _matmul(m1, m2):
    n = len(m1)
    return tuple(
        tuple(_dot(m1[i], [m2[k][j] for k in range(n)]) for j in range(n)) for i in range(n)
    )


def _transpose(m):
    return tuple(zip(*m))


def _identity(field, n):
    return tuple(tuple(field.one if i == j else field.zero for j in range(n)) for i in range(n))


def reflect(v, x):
    """Image of the vector ``x`` under the reflection in the hyperplane orthogonal to ``v``."""
    vv = _dot(v, v)
    if not vv:
        raise InvalidRoot("cannot reflect in a zero vector")
    scale = _dot(x, v) * 2 / vv
    return tuple(xi - scale * vi for xi, vi in zip(x, v))


def projector(v):
    """Matrix with entries v_i v_j / (v, v)."""
    vv = _dot(v, v)
    if not vv:
        raise InvalidRoot("zero root")
    inv = vv.inv()
    return tuple(tuple(a * b * inv for b in v) for a in v)


def reflection_matrix(v):
    p = projector(v)
    f = v[0].field
    n = len(v)
    return tuple(
        tuple((f.one if i == j else f.zero) - 2 * p[i][j] for j in range(n)) for i in range(n)
    )


@dataclass(frozen=True)
class GroupElement:
    """Element of the Coxeter group with its (orthogonal) matrix R(g) on V."""

    index: int
    label: str
    matrix: tuple
    is_reflection: bool = False

    def __str__(self):
        return self.label


@dataclass
class CoxeterGroup:
    elements: list
    table: list  # table[g][h] = index of g*h
    inverse: list
    identity: int
    classes: list  # list of sorted lists of element indices
    class_of: list

    @property
    def order(self) -> int:
        return len(self.elements)

    def mul(self, g: int, h: int) -> int:
        return self.table[g][h]

    def conjugate(self, h: int, g: int) -> int:
        """h g h^-1."""
        return self.table[self.table[h][g]][self.inverse[h]]

    def by_label(self, label: str) -> GroupElement:
        for el in self.elements:
            if el.label == label:
                return el
        raise KeyError(label)


def _build_group(matrices, labels, reflection_ids, field, dim):
    lookup = {m: i for i, m in enumerate(matrices)}
    ident = _identity(field, dim)
    if ident not in lookup:
        raise InternalError("identity missing from group")
    order = len(matrices)
    table = []
    for g in matrices:
        row = []
        for h in matrices:
            prod = _matmul(g, h)
            idx = lookup.get(prod)
            if idx is None:
                raise InternalError("group closure not reached")
            row.append(idx)
        table.append(row)
    e = lookup[ident]
    inverse = [row.index(e) for row in table]
    # every element must be a product of reflections
    reached = {e}
    frontier = [e]
    while frontier:
        nxt = []
        for g in frontier:
            for r in reflection_ids:
                p = table[g][r]
                if p not in reached:
                    reached.add(p)
                    nxt.append(p)
        frontier = nxt
    if len(reached) != order:
        raise InternalError("reflections do not generate the group")
    class_of = [-1] * order
    classes = []
    for g in range(order):
        if class_of[g] >= 0:
            continue
        cls = sorted({table[table[h][g]][inverse[h]] for h in range(order)})
        for x in cls:
            class_of[x] = len(classes)
        classes.append(cls)
    refl = set(reflection_ids)
    elements = [
        GroupElement(i, labels[i], matrices[i], i in refl) for i in range(order)
    ]
    return CoxeterGroup(elements, table, inverse, e, classes, class_of)


@dataclass
class RootSystem:
    family: str
    param: int  # n for I2(n), rank N-1 for A(N-1)
    field: NumberField
    dim: int
    roots: list
    group: CoxeterGroup
    root_reflection: list  # element index of r_v for each root
    reflection_classes: list  # class ids (in group.classes) that contain reflections
    eta: dict = dc_field(default_factory=dict)  # class id -> FieldScalar

    @property
    def name(self) -> str:
        return f"I2({self.param})" if self.family == I2 else f"A({self.param})"

    @property
    def reflections(self) -> list:
        """Element indices of the distinct reflections, in root order."""
        seen = []
        for r in self.root_reflection:
            if r not in seen:
                seen.append(r)
        return seen

    def eta_of(self, g: int) -> FieldScalar:
        return self.eta[self.group.class_of[g]]

    def group_coefficients(self, g: int):
        """Matrix M with g a_i = sum_j M[i][j] a_j g, i.e. the transpose of R(g)."""
        return _transpose(self.group.elements[g].matrix)

    def projector_data(self) -> dict:
        """Per reflection element: (projector, reflection matrix)."""
        out = {}
        for v, r in zip(self.roots, self.root_reflection):
            if r not in out:
                out[r] = (projector(v), reflection_matrix(v))
        return out

    def eta_relation_terms(self) -> dict:
        """(i, j) -> list of (reflection index, sum_{v: r_v = r} eta(v) v_i v_j/(v,v))."""
        acc = {}
        for v, r in zip(self.roots, self.root_reflection):
            p = projector(v)
            eta = self.eta_of(r)
            for i in range(self.dim):
                for j in range(self.dim):
                    key = (i, j)
                    acc.setdefault(key, {})
                    acc[key][r] = acc[key].get(r, self.field.zero) + eta * p[i][j]
        return {
            key: [(r, c) for r, c in sorted(d.items()) if c]
            for key, d in acc.items()
        }

    def check_invariants(self) -> None:
        """Raise if a root-system or group invariant fails."""
        root_set = set(self.roots)
        for w in self.roots:
            for v in self.roots:
                if reflect(w, v) not in root_set:
                    raise InternalError("root set not reflection invariant")
        for v in self.roots:
            for w in self.roots:
                if v == w or v == tuple(-x for x in w):
                    continue
                # proportional iff the 2x2 minors vanish
                if all(
                    not (v[i] * w[j] - v[j] * w[i])
                    for i in range(self.dim)
                    for j in range(i + 1, self.dim)
                ):
                    raise InternalError("non +-proportional roots")
        ident = _identity(self.field, self.dim)
        for el in self.group.elements:
            m = el.matrix
            if _matmul(_transpose(m), m) != ident:
                raise InternalError(f"{el.label} is not orthogonal")
            for v in self.roots:
                image = tuple(_dot(row, v) for row in m)
                if image not in root_set:
                    raise InternalError(f"{el.label} does not permute the roots")
        for r in self.reflections:
            for h in range(self.group.order):
                if self.eta_of(self.group.conjugate(h, r)) != self.eta_of(r):
                    raise InternalError("eta is not conjugation invariant")

    def summary(self) -> dict:
        g = self.group
        return {
            "family": self.family,
            "param": self.param,
            "name": self.name,
            "order": g.order,
            "classes": [[g.elements[x].label for x in cls] for cls in g.classes],
            "eta": {_class_name(self, c): str(self.eta[c]) for c in self.reflection_classes},
        }


def _class_name(rs, c):
    return "class(" + ",".join(rs.group.elements[x].label for x in rs.group.classes[c]) + ")"


def _dihedral(n):
    field = NumberField(n)
    # angle unit pi/(2n): rotation by 2*pi*k/n is 4k units, root angle k*pi/n is 2k units
    matrices, labels = [], []
    for k in range(n):
        c, s = field.cos(4 * k), field.sin(4 * k)
        matrices.append(((c, -s), (s, c)))
        labels.append("e" if k == 0 else f"rot({k})")
    refl_ids = []
    for k in range(n):
        c, s = field.cos(4 * k), field.sin(4 * k)
        matrices.append(((-c, -s), (-s, c)))
        labels.append(f"ref({k})")
        refl_ids.append(n + k)
    roots = [(field.cos(2 * k), field.sin(2 * k)) for k in range(2 * n)]
    root_reflection = [n + (k % n) for k in range(2 * n)]
    for v, r in zip(roots, root_reflection):
        if reflection_matrix(v) != matrices[r]:
            raise InternalError("dihedral reflection labels inconsistent")
    group = _build_group(matrices, labels, refl_ids, field, 2)
    return field, 2, roots, group, root_reflection


def _type_a(rank):
    field = NumberField(RATIONAL)
    dim = rank + 1
    one, zero = field.one, field.zero
    perms = list(itertools.permutations(range(dim)))
    matrices, labels = [], []
    for p in perms:
        # R e_i = e_{p(i)}
        matrices.append(
            tuple(tuple(one if p[j] == i else zero for j in range(dim)) for i in range(dim))
        )
        labels.append("e" if p == tuple(range(dim)) else "perm(" + ",".join(str(x + 1) for x in p) + ")")
    roots = []
    for i in range(dim):
        for j in range(dim):
            if i != j:
                roots.append(tuple(one if k == i else (-one if k == j else zero) for k in range(dim)))
    lookup = {m: i for i, m in enumerate(matrices)}
    root_reflection = [lookup[reflection_matrix(v)] for v in roots]
    refl_ids = sorted(set(root_reflection))
    group = _build_group(matrices, labels, refl_ids, field, dim)
    return field, dim, roots, group, root_reflection


def build_root_system(family: str, param: int, eta_values) -> RootSystem:
    """Build I2(n) (``family='I2'``, ``param=n``) or A(N-1) (``family='A'``, ``param=N-1``).

    ``eta_values`` lists one value per conjugacy class of reflections, classes
    ordered by their first reflection (for I2(n): the class of ``ref(0)`` first).
    """
    if family == I2:
        if not isinstance(param, int) or param < 3:
            raise InvalidParameter(f"I2(n) needs n >= 3, got {param}")
        field, dim, roots, group, root_reflection = _dihedral(param)
    elif family == A:
        if not isinstance(param, int) or param < 1:
            raise InvalidParameter(f"A(N-1) needs rank >= 1, got {param}")
        field, dim, roots, group, root_reflection = _type_a(param)
    else:
        raise InvalidParameter(f"unsupported family {family!r}")
    refl_classes = []
    for r in root_reflection:
        c = group.class_of[r]
        if c not in refl_classes:
            refl_classes.append(c)
    eta_values = list(eta_values)
    if len(eta_values) != len(refl_classes):
        raise InvalidEta(
            f"{family}({param}) has {len(refl_classes)} reflection classes, got {len(eta_values)} eta values"
        )
    eta = {c: field.scalar(x) for c, x in zip(refl_classes, eta_values)}
    rs = RootSystem(family, param, field, dim, roots, group, root_reflection, refl_classes, eta)
    return rs


def enumerate_group(rs: RootSystem):
    """Elements, multiplication table and conjugacy classes of the reflection group."""
    g = rs.group
    return g.elements, g.table, g.classes
