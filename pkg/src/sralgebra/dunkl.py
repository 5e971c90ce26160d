"""Polynomial representation by Dunkl operators, used as an independent oracle.

The generators are represented unnormalized, ``b^alpha_i = x_i + (-1)^alpha D_i``,
which avoids adjoining sqrt(2): a word of a-degree k in the algebra maps to
2^(-k/2) times the corresponding b-word.  Group elements act on polynomials by
``(g.p)(x) = p(R(g)^-1 x)``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .algebra import AlgebraElement, SRAlgebra
from .errors import InternalError


def _mono_key(m):
    return (sum(m), tuple(-x for x in m))


class Polynomial:
    """Sparse commutative polynomial in x_1..x_N over the algebra's field."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {m: c for m, c in (terms or {}).items() if c}

    def __add__(self, other):
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out[m] + c if m in out else c
        return Polynomial(out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, s):
        if not s:
            return Polynomial()
        return Polynomial({m: c * s for m, c in self.terms.items()})

    def __eq__(self, other):
        return isinstance(other, Polynomial) and self.terms == other.terms

    __hash__ = None

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        items = sorted(self.terms.items(), key=lambda kv: _mono_key(kv[0]))
        return "Polynomial(" + " + ".join(f"({c})*x^{m}" for m, c in items) + ")"


def monomial_basis(N, d):
    """Exponent tuples of total degree <= d."""
    out = []

    def rec(prefix, left, slots):
        if slots == 1:
            out.append(prefix + (left,))
            return
        for e in range(left, -1, -1):
            rec(prefix + (e,), left - e, slots - 1)

    for t in range(d + 1):
        rec((), t, N)
    return sorted(out, key=_mono_key)


@dataclass
class DunklRepresentation:
    algebra: SRAlgebra
    kappa: dict  # reflection class id -> FieldScalar

    def __post_init__(self):
        rs = self.algebra.rs
        self.field = rs.field
        self.N = rs.dim
        self.positive = []  # (root, reflection index), one root per reflection
        seen = set()
        for v, r in zip(rs.roots, rs.root_reflection):
            if r not in seen:
                seen.add(r)
                self.positive.append((v, r))
        self._subst_cache = {}

    # -- group action -------------------------------------------------------
    def _act_mono(self, g, mu):
        key = (g, mu)
        hit = self._subst_cache.get(key)
        if hit is not None:
            return hit
        R = self.algebra.group.elements[g].matrix
        # x_k -> (R^T x)_k = sum_j R[j][k] x_j
        out = Polynomial({(0,) * self.N: self.field.one})
        for k, e in enumerate(mu):
            lin = Polynomial(
                {tuple(int(t == j) for t in range(self.N)): R[j][k] for j in range(self.N)}
            )
            for _ in range(e):
                out = poly_mul(out, lin)
        self._subst_cache[key] = out
        return out

    def act_group(self, g, p: Polynomial) -> Polynomial:
        out = {}
        for m, c in p.terms.items():
            for m2, c2 in self._act_mono(g, m).terms.items():
                out[m2] = out[m2] + c * c2 if m2 in out else c * c2
        return Polynomial(out)

    # -- Dunkl operators ----------------------------------------------------
    def partial(self, i, p):
        out = {}
        for m, c in p.terms.items():
            if m[i]:
                m2 = m[:i] + (m[i] - 1,) + m[i + 1:]
                out[m2] = c * m[i]
        return Polynomial(out)

    def times_x(self, i, p):
        return Polynomial({m[:i] + (m[i] + 1,) + m[i + 1:]: c for m, c in p.terms.items()})

    def dunkl_apply(self, i: int, p: Polynomial) -> Polynomial:
        """D_i p = d_i p + sum_{v in R+} eta(v) kappa v_i/(v,v) (p - r_v p)/(v,x)."""
        rs = self.algebra.rs
        out = self.partial(i, p)
        for v, r in self.positive:
            if not v[i]:
                continue
            cls = rs.group.class_of[r]
            eta = rs.eta[cls]
            if not eta:
                continue
            vv = sum((a * a for a in v[1:]), v[0] * v[0])
            diff = p - self.act_group(r, p)
            q = divide_by_linear(diff, v)
            out = out + q.scale(eta * self.kappa[cls] * v[i] / vv)
        return out

    def rep_generator(self, alpha: int, i: int, p: Polynomial) -> Polynomial:
        """b^alpha_i p = x_i p + (-1)^alpha D_i p."""
        d = self.dunkl_apply(i, p)
        return self.times_x(i, p) + (d if alpha == 0 else d.scale(-1))

    def apply_monomial(self, mono, p: Polynomial) -> Polynomial:
        """Operator of the normal-form monomial with a-generators replaced by b-generators."""
        d0, d1, g = mono
        p = self.act_group(g, p)
        for alpha, block in ((1, d1), (0, d0)):
            for i in range(self.N - 1, -1, -1):
                for _ in range(block[i]):
                    p = self.rep_generator(alpha, i, p)
        return p

    def apply_element(self, f: AlgebraElement, p: Polynomial, word_degree: int) -> Polynomial:
        """Operator of f rescaled as 2^(word_degree/2) f, so that it matches a
        b-word of a-degree ``word_degree``."""
        out = Polynomial()
        for mono, c in f.terms.items():
            deg = sum(mono[0]) + sum(mono[1])
            gap = word_degree - deg
            if gap % 2:
                raise InternalError("parity mismatch between word and its normal form")
            out = out + self.apply_monomial(mono, p).scale(c * (2 ** (gap // 2)))
        return out

    def apply_word(self, word, p: Polynomial) -> Polynomial:
        """Compose atoms right to left; generators become b-generators."""
        for atom in reversed(word):
            if atom[0] == "a":
                p = self.rep_generator(atom[1], atom[2], p)
            elif atom[0] == "g":
                p = self.act_group(atom[1], p)
            else:
                p = p.scale(self.field.scalar(atom[1]))
        return p


def poly_mul(p: Polynomial, q: Polynomial) -> Polynomial:
    out = {}
    for m1, c1 in p.terms.items():
        for m2, c2 in q.terms.items():
            m = tuple(a + b for a, b in zip(m1, m2))
            out[m] = out[m] + c1 * c2 if m in out else c1 * c2
    return Polynomial(out)


def divide_by_linear(p: Polynomial, v) -> Polynomial:
    """Exact quotient of p by the linear form (v, x)."""
    k = max(i for i, x in enumerate(v) if x)
    inv = v[k].inv()
    rem = dict(p.terms)
    quot = {}
    while rem:
        m = max(rem, key=lambda t: (t[k], t))
        c = rem.pop(m)
        if not c:
            continue
        if not m[k]:
            raise InternalError("difference quotient is not a polynomial")
        qm = m[:k] + (m[k] - 1,) + m[k + 1:]
        qc = c * inv
        quot[qm] = quot[qm] + qc if qm in quot else qc
        for j, vj in enumerate(v):
            if j == k or not vj:
                continue
            t = qm[:j] + (qm[j] + 1,) + qm[j + 1:]
            val = rem.get(t)
            val = -qc * vj if val is None else val - qc * vj
            if val:
                rem[t] = val
            else:
                rem.pop(t, None)
    return Polynomial(quot)


def calibrate(algebra: SRAlgebra) -> DunklRepresentation:
    """Fix the per-class constant so that [b0_i, b1_i] = 2 (rhs of the defining relation).

    Each class is calibrated with all other classes switched off, on every
    test polynomial of degree <= 2; the ratio must be the same on all of them.
    """
    rs = algebra.rs
    field = rs.field
    N = rs.dim
    relation = rs.eta_relation_terms()
    kappa = {}
    for cls in rs.reflection_classes:
        if not rs.eta[cls]:
            kappa[cls] = field.one
            continue
        trial = DunklRepresentation(
            algebra, {c: (field.one if c == cls else field.zero) for c in rs.reflection_classes}
        )
        k = None
        for i in range(N):
            for mono in monomial_basis(N, 2):
                p = Polynomial({mono: field.one})
                got = (
                    trial.rep_generator(0, i, trial.rep_generator(1, i, p))
                    - trial.rep_generator(1, i, trial.rep_generator(0, i, p))
                    - p.scale(2)
                )
                want = Polynomial()
                for rr, c in relation[(i, i)]:
                    if rs.group.class_of[rr] == cls:
                        want = want + trial.act_group(rr, p).scale(2 * c)
                if not got:
                    if want:
                        raise InternalError("calibration failed: relation not proportional")
                    continue
                m = min(got.terms)
                ratio = want.terms.get(m, field.zero) / got.terms[m]
                if got.scale(ratio) != want or (k is not None and ratio != k):
                    raise InternalError("calibration failed: relation not proportional")
                k = ratio
        if k is None:
            raise InternalError("calibration failed: class invisible on test polynomials")
        kappa[cls] = k
    return DunklRepresentation(algebra, kappa)


@dataclass
class OracleResult:
    passed: bool
    word: tuple
    degree: int
    counterexample: tuple | None = None


def oracle_check(algebra: SRAlgebra, word, d: int, rep: DunklRepresentation | None = None) -> OracleResult:
    """Compare normal_form(word) with the direct operator composition on polynomials of degree <= d."""
    rep = rep or calibrate(algebra)
    word = tuple(word)
    nf = algebra.normal_form(word)
    k = sum(1 for a in word if a[0] == "a")
    for mono in monomial_basis(algebra.N, d):
        p = Polynomial({mono: algebra.field.one})
        if rep.apply_word(word, p) != rep.apply_element(nf, p, k):
            return OracleResult(False, word, d, mono)
    return OracleResult(True, word, d)


def random_word(algebra: SRAlgebra, rng: random.Random, max_degree: int, max_group: int = 2):
    """Random word of generators (a-degree <= max_degree) with interleaved group elements."""
    n_gen = rng.randint(0, max_degree)
    atoms = [("a", rng.randint(0, 1), rng.randrange(algebra.N)) for _ in range(n_gen)]
    for _ in range(rng.randint(0, max_group)):
        atoms.insert(rng.randint(0, len(atoms)), ("g", rng.randrange(algebra.group.order)))
    return tuple(atoms)
