"""Inner sl2 of H: the elements T^{ab}, the derivations D^{ab} = ad T^{ab}, and
the spin decomposition of the truncations F_d.

Every normal-form monomial is an eigenvector of D^{01} with eigenvalue
``|deg1| - |deg0|``, so weight spaces are spanned by monomials and the
decomposition only needs the raising operator D^{11} on each weight space.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .algebra import AlgebraElement, SRAlgebra, mono_degree, mono_weight
from .errors import DegreeExceeded, InternalError
from .linalg import Echelon, Subspace, nullspace

PAIRS = ("00", "01", "11")


def eps(a: int, b: int) -> int:
    return 0 if a == b else (1 if (a, b) == (0, 1) else -1)


def _pair(a: int, b: int) -> str:
    return f"{min(a, b)}{max(a, b)}"


@dataclass(frozen=True)
class Sl2Generators:
    T00: AlgebraElement
    T01: AlgebraElement
    T11: AlgebraElement

    def __getitem__(self, ab: str) -> AlgebraElement:
        return {"00": self.T00, "01": self.T01, "10": self.T01, "11": self.T11}[ab]


def make_T(H: SRAlgebra) -> Sl2Generators:
    half = H.field.scalar(Fraction(1, 2))
    out = {}
    for ab in PAIRS:
        a, b = int(ab[0]), int(ab[1])
        t = H.zero()
        for i in range(H.N):
            x, y = H.gen(a, i), H.gen(b, i)
            t = t + x * y + y * x
        out[ab] = t * half
    return Sl2Generators(out["00"], out["01"], out["11"])


def ad_T(gens: Sl2Generators, ab: str, f: AlgebraElement) -> AlgebraElement:
    return f.algebra.commutator(gens[ab], f)


class Sl2Action:
    """Memoized action of D^{ab} on normal-form monomials."""

    def __init__(self, H: SRAlgebra):
        self.H = H
        self.T = make_T(H)
        self._cache = {}

    def on_monomial(self, ab: str, mono) -> dict:
        ab = _pair(int(ab[0]), int(ab[1]))
        key = (ab, mono)
        hit = self._cache.get(key)
        if hit is None:
            if ab == "01":
                w = mono_weight(mono)
                hit = {mono: self.H.field.scalar(w)} if w else {}
            else:
                hit = ad_T(self.T, ab, self.H.monomial(mono)).terms
            self._cache[key] = hit
        return hit

    def apply(self, ab: str, vec: dict) -> dict:
        out = {}
        for m, c in vec.items():
            for m2, c2 in self.on_monomial(ab, m).items():
                v = out.get(m2)
                out[m2] = c * c2 if v is None else v + c * c2
        return {m: c for m, c in out.items() if c}

    def element(self, ab: str, f: AlgebraElement) -> AlgebraElement:
        return self.H.element(self.apply(ab, f.terms))


@dataclass
class Sl2Report:
    degree: int
    passed: bool
    checks: int
    witness: tuple | None = None  # (relation, monomial expression)


def check_sl2_relations(H: SRAlgebra, d: int, action: Sl2Action | None = None) -> Sl2Report:
    """Commutation relations of the D^{ab} on F_d, and their action on the generators.

    The D^{01} used here is the genuine commutator with T^{01}, not the
    diagonal shortcut, so its eigenvalue claim is checked as well.
    """
    action = action or Sl2Action(H)
    T = action.T

    def D(ab, vec):
        if ab in ("01", "10"):
            return H.commutator(T["01"], H.element(vec)).terms
        return action.apply(ab, vec)

    checks = 0
    labels = ["00", "01", "11"]
    for m in H.basis(d):
        unit = {m: H.field.one}
        if D("01", unit) != action.on_monomial("01", m):
            return Sl2Report(d, False, checks, ("weight", H.format_monomial(m)))
        for x in range(3):
            for y in range(x + 1, 3):
                ab, cd = labels[x], labels[y]
                a, b, c, dd = int(ab[0]), int(ab[1]), int(cd[0]), int(cd[1])
                lhs = H.element(D(ab, D(cd, unit))) - H.element(D(cd, D(ab, unit)))
                rhs = H.zero()
                for coef, pair in (
                    (eps(a, c), (b, dd)),
                    (eps(a, dd), (b, c)),
                    (eps(b, c), (a, dd)),
                    (eps(b, dd), (a, c)),
                ):
                    if coef:
                        rhs = rhs + H.element(D(_pair(*pair), unit)) * coef
                checks += 1
                if lhs != rhs:
                    return Sl2Report(d, False, checks, (f"[D{ab},D{cd}]", H.format_monomial(m)))
    if d >= 1:
        for ab in PAIRS:
            a, b = int(ab[0]), int(ab[1])
            for g in (0, 1):
                for i in range(H.N):
                    got = ad_T(T, ab, H.gen(g, i))
                    want = H.gen(b, i) * eps(a, g) + H.gen(a, i) * eps(b, g)
                    checks += 1
                    if got != want:
                        return Sl2Report(d, False, checks, (f"D{ab} a{g}_{i + 1}", ""))
    return Sl2Report(d, True, checks)


@dataclass
class SpinDecomposition:
    degree: int
    weight_dims: dict  # weight -> dimension of the weight space of F_d
    blocks: list  # (spin as Fraction, multiplicity, highest-weight vectors)
    singlets: Subspace
    action: Sl2Action
    _solver: Echelon
    _n_weight0: int
    _singlet_rank: int

    @property
    def singlet_dim(self) -> int:
        return self.singlets.dim

    def summary(self) -> dict:
        return {
            "d": self.degree,
            "spins": [[str(s), mult] for s, mult, _ in self.blocks],
            "singlet_dim": self.singlet_dim,
        }

    def project_vector(self, vec: dict) -> dict:
        """Singlet component of a coordinate vector supported on F_d."""
        H = self.action.H
        cols = self.singlets.columns
        index = {m: k for k, m in enumerate(cols)}
        w0 = {}
        for m, c in vec.items():
            if mono_degree(m) > self.degree:
                raise DegreeExceeded(f"monomial of degree {mono_degree(m)} beyond F_{self.degree}")
            if mono_weight(m) == 0:
                w0[index[m]] = c
        if not w0:
            return {}
        n = self._n_weight0
        res = self._solver.reduce(w0)
        if any(k < n for k in res):
            raise InternalError("weight-zero space not spanned by singlets and raised vectors")
        out = {}
        # res holds -coordinates in the adapted basis; singlets come first
        for k, v in res.items():
            j = k - n
            if j < self._singlet_rank:
                for m, c in self.singlets.rows[j]:
                    cur = out.get(m)
                    out[m] = -v * c if cur is None else cur - v * c
        return {m: c for m, c in out.items() if c}

    def project(self, f: AlgebraElement) -> AlgebraElement:
        return f.algebra.element(self.project_vector(f.terms))


def _image_span(action, ab, sources, field):
    return [action.apply(ab, {m: field.one}) for m in sources]


def spin_decompose(H: SRAlgebra, d: int, action: Sl2Action | None = None) -> SpinDecomposition:
    action = action or Sl2Action(H)
    field = H.field
    by_weight = {}
    for m in H.basis(d):
        by_weight.setdefault(mono_weight(m), []).append(m)
    weight_dims = {w: len(ms) for w, ms in sorted(by_weight.items())}
    if any(weight_dims.get(w) != weight_dims.get(-w) for w in weight_dims):
        raise InternalError("weight multiset is not symmetric")

    def raising_kernel(w):
        src = by_weight.get(w, [])
        rows_by_target = {}
        for k, m in enumerate(src):
            for m2, c in action.on_monomial("11", m).items():
                rows_by_target.setdefault(m2, {})[m] = c
        return nullspace(list(rows_by_target.values()), src, field)

    blocks = []
    top = max(weight_dims) if weight_dims else 0
    for j in range(0, top + 1):
        mult = weight_dims.get(j, 0) - weight_dims.get(j + 2, 0)
        if mult < 0:
            raise InternalError("weight dimensions are not unimodal")
        if mult:
            hw = raising_kernel(j)
            if len(hw) != mult:
                raise InternalError(f"highest-weight count {len(hw)} != multiplicity {mult} at weight {j}")
            blocks.append((Fraction(j, 2), mult, hw))
    if sum(mult * (2 * s + 1) for s, mult, _ in blocks) != len(H.basis(d)):
        raise InternalError("spin multiplicities do not account for dim F_d")

    w0 = by_weight.get(0, [])
    # joint kernel of D00 and D11 on weight zero
    rows = {}
    for m in w0:
        for ab in ("00", "11"):
            for m2, c in action.on_monomial(ab, m).items():
                rows.setdefault((ab, m2), {})[m] = c
    singlet_vecs = nullspace(list(rows.values()), w0, field)
    singlets = Subspace.from_vectors(singlet_vecs, w0, field)
    expected = blocks[0][1] if blocks and blocks[0][0] == 0 else 0
    if singlets.dim != expected:
        raise InternalError("singlet dimension disagrees with spin-0 multiplicity")

    raised = [v for v in _image_span(action, "11", by_weight.get(-2, []), field) if v]
    index = {m: k for k, m in enumerate(w0)}
    n = len(w0)
    solver = Echelon(field)
    basis = [dict(r) for r in singlets.rows] + raised
    rank = 0
    for k, vec in enumerate(basis):
        aug = {index[m]: c for m, c in vec.items()}
        aug[n + k] = field.one
        p = solver.add(aug)
        if p is not None and p < n:
            rank += 1
    if rank != n:
        raise InternalError("singlets and raised vectors do not span weight zero")
    return SpinDecomposition(d, weight_dims, blocks, singlets, action, solver, n, singlets.dim)


def singlet_project(decomposition: SpinDecomposition, f: AlgebraElement) -> AlgebraElement:
    if f.degree > decomposition.degree:
        raise DegreeExceeded(f"element of degree {f.degree} beyond F_{decomposition.degree}")
    return decomposition.project(f)
