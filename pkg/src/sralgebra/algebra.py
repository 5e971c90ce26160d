"""The superalgebra H_{1,eta}(G): PBW normal forms, products and brackets.

A normal-form monomial is stored as ``(d0, d1, g)``: the exponent tuples of
the a^0 block and the a^1 block, and the index of the group element on the
right.  Inside a block the generators commute, so the word is
``a0_1^{d0[0]} ... a0_N^{d0[N-1]} a1_1^{d1[0]} ... a1_N^{d1[N-1]} g``.

Products are computed by right-multiplying by one generator at a time; the
only rewriting needed is moving a^0_j to the left through an a^1 block, and
the correction terms of that move contain no a^0 factors, so each step has a
closed form.
"""

from __future__ import annotations

from math import comb

from .coxeter import RootSystem
from .errors import InstanceMismatch
from .scalars import FieldScalar

TRACE = "trace"
SUPERTRACE = "supertrace"
KINDS = (TRACE, SUPERTRACE)


def _compositions(total, parts):
    """Exponent tuples of length ``parts`` summing to ``total``, lex descending."""
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def _add_exp(a, b):
    return tuple(x + y for x, y in zip(a, b))


def mono_degree(m) -> int:
    return sum(m[0]) + sum(m[1])


def mono_weight(m) -> int:
    """Eigenvalue of ad T^{01} on the monomial."""
    return sum(m[1]) - sum(m[0])


class SRAlgebra:
    """One instance of H_{1,eta}(G) for a fixed root system and eta."""

    def __init__(self, rs: RootSystem):
        self.rs = rs
        self.field = rs.field
        self.group = rs.group
        self.N = rs.dim
        self.zero_exp = (0,) * self.N
        self._units = [tuple(int(k == j) for k in range(self.N)) for j in range(self.N)]
        self._coef = [rs.group_coefficients(g) for g in range(self.group.order)]
        self._eta_terms = rs.eta_relation_terms()
        self._conj_cache = {}
        self._gen_cache = {}
        self._basis_cache = {}

    # -- basic constructors ----------------------------------------------
    def element(self, terms=None) -> "AlgebraElement":
        return AlgebraElement(self, terms or {})

    def zero(self) -> "AlgebraElement":
        return AlgebraElement(self, {})

    def one(self) -> "AlgebraElement":
        return self.group_element(self.group.identity)

    def scalar(self, value) -> "AlgebraElement":
        s = self.field.scalar(value)
        if not s:
            return self.zero()
        return AlgebraElement(self, {(self.zero_exp, self.zero_exp, self.group.identity): s})

    def monomial(self, mono, coeff=None) -> "AlgebraElement":
        c = self.field.one if coeff is None else self.field.scalar(coeff)
        return AlgebraElement(self, {mono: c} if c else {})

    def gen(self, alpha: int, i: int) -> "AlgebraElement":
        """a^alpha_i with 0-based index i."""
        e = self._units[i]
        key = (e, self.zero_exp, self.group.identity) if alpha == 0 else (self.zero_exp, e, self.group.identity)
        return AlgebraElement(self, {key: self.field.one})

    def group_element(self, g) -> "AlgebraElement":
        idx = g if isinstance(g, int) else g.index
        return AlgebraElement(self, {(self.zero_exp, self.zero_exp, idx): self.field.one})

    # -- commutative-block substitution under conjugation ----------------
    def _conj(self, g, mu):
        """g a^mu g^-1 for a block monomial mu, as {exponent: scalar}."""
        key = (g, mu)
        hit = self._conj_cache.get(key)
        if hit is not None:
            return hit
        if not any(mu):
            out = {mu: self.field.one}
        else:
            k = max(i for i, x in enumerate(mu) if x)
            rest = mu[:k] + (mu[k] - 1,) + mu[k + 1:]
            base = self._conj(g, rest)
            row = self._coef[g][k]
            out = {}
            for exp, c in base.items():
                for j, m in enumerate(row):
                    if m:
                        e2 = exp[:j] + (exp[j] + 1,) + exp[j + 1:]
                        v = out.get(e2)
                        out[e2] = c * m if v is None else v + c * m
            out = {e: c for e, c in out.items() if c}
        self._conj_cache[key] = out
        return out

    # -- right multiplication by one generator ---------------------------
    def _mono_times_gen(self, mono, alpha, i):
        """Normal form of (monomial) * a^alpha_i as a tuple of (monomial, scalar)."""
        key = (mono, alpha, i)
        hit = self._gen_cache.get(key)
        if hit is not None:
            return hit
        d0, d1, g = mono
        out = {}
        table = self.group.table

        def add(m, c):
            v = out.get(m)
            out[m] = c if v is None else v + c

        for j, mji in enumerate(self._coef[g][i]):
            if not mji:
                continue
            if alpha == 1:
                add((d0, _add_exp(d1, self._units[j]), g), mji)
                continue
            add((_add_exp(d0, self._units[j]), d1, g), mji)
            # A1 a0_j = a0_j A1 - sum over factors a1_k of prefix (delta_kj + sum_r c_r r) suffix
            if d1[j]:
                add((d0, d1[:j] + (d1[j] - 1,) + d1[j + 1:], g), -mji * d1[j])
            for k in range(self.N):
                terms = self._eta_terms.get((k, j))
                if not terms or not d1[k]:
                    continue
                for t in range(d1[k]):
                    prefix = d1[:k] + (t,) + self.zero_exp[k + 1:]
                    suffix = self.zero_exp[:k] + (d1[k] - t - 1,) + d1[k + 1:]
                    for r, cr in terms:
                        coeff = -mji * cr
                        rg = table[r][g]
                        for s2, cs in self._conj(r, suffix).items():
                            add((d0, _add_exp(prefix, s2), rg), coeff * cs)
        res = tuple((m, c) for m, c in out.items() if c)
        self._gen_cache[key] = res
        return res

    def _gen_times_mono(self, alpha, i, mono):
        """Normal form of a^alpha_i * (monomial)."""
        key = (alpha, i, mono)
        hit = self._gen_cache.get(key)
        if hit is not None:
            return hit
        d0, d1, g = mono
        e = self._units[i]
        if alpha == 0:
            res = (((_add_exp(d0, e), d1, g), self.field.one),)
            self._gen_cache[key] = res
            return res
        out = {(d0, _add_exp(d1, e), g): self.field.one}

        def add(m, c):
            v = out.get(m)
            out[m] = c if v is None else v + c

        # a1_i A0 = A0 a1_i - sum over factors a0_k of prefix (delta_ik + sum_r c_r r) suffix
        if d0[i]:
            add((d0[:i] + (d0[i] - 1,) + d0[i + 1:], d1, g), self.field.scalar(-d0[i]))
        table = self.group.table
        for k in range(self.N):
            terms = self._eta_terms.get((i, k))
            if not terms or not d0[k]:
                continue
            for t in range(d0[k]):
                prefix = d0[:k] + (t,) + self.zero_exp[k + 1:]
                suffix = self.zero_exp[:k] + (d0[k] - t - 1,) + d0[k + 1:]
                for r, cr in terms:
                    rg = table[r][g]
                    block1 = self._conj(r, d1)
                    for s0, c0 in self._conj(r, suffix).items():
                        m0 = _add_exp(prefix, s0)
                        c0 = -cr * c0
                        for s1, c1 in block1.items():
                            add((m0, s1, rg), c0 * c1)
        res = tuple((m, c) for m, c in out.items() if c)
        self._gen_cache[key] = res
        return res

    def _group_times_mono(self, h, mono):
        d0, d1, g = mono
        hg = self.group.table[h][g]
        out = []
        b1 = self._conj(h, d1)
        for s0, c0 in self._conj(h, d0).items():
            for s1, c1 in b1.items():
                out.append(((s0, s1, hg), c0 * c1))
        return out

    def left_gen(self, alpha, i, x: "AlgebraElement") -> "AlgebraElement":
        out = {}
        for mono, c in x.terms.items():
            for m2, c2 in self._gen_times_mono(alpha, i, mono):
                v = out.get(m2)
                out[m2] = c * c2 if v is None else v + c * c2
        return AlgebraElement(self, {m: c for m, c in out.items() if c})

    def right_gen(self, x: "AlgebraElement", alpha, i) -> "AlgebraElement":
        return AlgebraElement(self, self._times_gen_terms(x.terms, alpha, i))

    def left_group(self, h, x: "AlgebraElement") -> "AlgebraElement":
        out = {}
        for mono, c in x.terms.items():
            for m2, c2 in self._group_times_mono(h, mono):
                v = out.get(m2)
                out[m2] = c * c2 if v is None else v + c * c2
        return AlgebraElement(self, {m: c for m, c in out.items() if c})

    def right_group(self, x: "AlgebraElement", h) -> "AlgebraElement":
        return AlgebraElement(self, self._times_group_terms(x.terms, h))

    def gen_bracket_mono(self, kind, alpha, i, mono):
        """bracket(kind, a^alpha_i, monomial) as a dict, memoized."""
        key = ("br", kind, alpha, i, mono)
        hit = self._gen_cache.get(key)
        if hit is not None:
            return hit
        sign = -1 if kind == SUPERTRACE and mono_degree(mono) % 2 else 1
        out = {}
        for m, c in self._gen_times_mono(alpha, i, mono):
            out[m] = c
        for m, c in self._mono_times_gen(mono, alpha, i):
            v = out.get(m)
            c = -c if sign == 1 else c
            out[m] = c if v is None else v + c
        res = {m: c for m, c in out.items() if c}
        self._gen_cache[key] = res
        return res

    def group_bracket_mono(self, h, mono):
        """h m - m h (group elements are even)."""
        out = {}
        for m, c in self._group_times_mono(h, mono):
            out[m] = c
        d0, d1, g = mono
        m2 = (d0, d1, self.group.table[g][h])
        v = out.get(m2)
        out[m2] = -self.field.one if v is None else v - self.field.one
        return {m: c for m, c in out.items() if c}

    def _times_gen_terms(self, terms, alpha, i):
        out = {}
        for mono, c in terms.items():
            for m2, c2 in self._mono_times_gen(mono, alpha, i):
                v = out.get(m2)
                out[m2] = c * c2 if v is None else v + c * c2
        return {m: c for m, c in out.items() if c}

    def _times_group_terms(self, terms, h):
        table = self.group.table
        return {(d0, d1, table[g][h]): c for (d0, d1, g), c in terms.items()}

    @staticmethod
    def mono_word(mono):
        """Generator word of a monomial (without its group element)."""
        d0, d1, _ = mono
        word = []
        for alpha, block in ((0, d0), (1, d1)):
            for i, e in enumerate(block):
                word.extend([(alpha, i)] * e)
        return tuple(word)

    def _check(self, x):
        if not isinstance(x, AlgebraElement):
            raise TypeError(f"expected AlgebraElement, got {type(x).__name__}")
        if x.algebra is not self:
            raise InstanceMismatch("elements belong to different algebra instances")

    # -- public operations -----------------------------------------------
    def multiply(self, x: "AlgebraElement", y: "AlgebraElement") -> "AlgebraElement":
        self._check(x)
        self._check(y)
        result = {}
        prefix_cache = {(): x.terms}
        for mono in sorted(y.terms, key=self.sort_key):
            word = self.mono_word(mono)
            # longest cached prefix
            k = len(word)
            while word[:k] not in prefix_cache:
                k -= 1
            cur = prefix_cache[word[:k]]
            for pos in range(k, len(word)):
                cur = self._times_gen_terms(cur, *word[pos])
                prefix_cache[word[: pos + 1]] = cur
            coeff = y.terms[mono]
            for m2, c2 in self._times_group_terms(cur, mono[2]).items():
                v = result.get(m2)
                result[m2] = coeff * c2 if v is None else v + coeff * c2
        return AlgebraElement(self, {m: c for m, c in result.items() if c})

    def normal_form(self, word) -> "AlgebraElement":
        """Normal form of a product of atoms.

        Atoms are ``('a', alpha, i)`` generator tuples (0-based i), group element
        indices/GroupElements given as ``('g', g)``, scalars, or AlgebraElements.
        """
        terms = self.one().terms
        for atom in word:
            if isinstance(atom, AlgebraElement):
                terms = self.multiply(AlgebraElement(self, terms), atom).terms
            elif isinstance(atom, tuple) and atom and atom[0] == "a":
                terms = self._times_gen_terms(terms, atom[1], atom[2])
            elif isinstance(atom, tuple) and atom and atom[0] == "g":
                g = atom[1] if isinstance(atom[1], int) else atom[1].index
                terms = self._times_group_terms(terms, g)
            else:
                s = self.field.scalar(atom)
                terms = {m: c * s for m, c in terms.items()} if s else {}
        return AlgebraElement(self, terms)

    def bracket(self, kind: str, f: "AlgebraElement", g: "AlgebraElement") -> "AlgebraElement":
        """f g - g f (trace) or the super-commutator, extended bilinearly over parity parts."""
        if kind == TRACE:
            return self.multiply(f, g) - self.multiply(g, f)
        if kind != SUPERTRACE:
            raise ValueError(f"unknown kind {kind!r}")
        out = self.zero()
        for fp, fpart in f.parity_parts().items():
            for gp, gpart in g.parity_parts().items():
                sign = -1 if fp and gp else 1
                out = out + self.multiply(fpart, gpart) - sign * self.multiply(gpart, fpart)
        return out

    def commutator(self, f, g):
        return self.bracket(TRACE, f, g)

    # -- bases ------------------------------------------------------------
    def sort_key(self, mono):
        d0, d1, g = mono
        return (sum(d0) + sum(d1), -sum(d0), tuple(-x for x in d0), tuple(-x for x in d1), g)

    def monomials_of_degree(self, t):
        out = []
        for s0 in range(t, -1, -1):
            for d0 in _compositions(s0, self.N):
                for d1 in _compositions(t - s0, self.N):
                    for g in range(self.group.order):
                        out.append((d0, d1, g))
        return out

    def basis(self, d: int) -> list:
        """Ordered monomial basis of the filtration piece F_d."""
        hit = self._basis_cache.get(d)
        if hit is None:
            hit = []
            for t in range(d + 1):
                hit.extend(self.monomials_of_degree(t))
            self._basis_cache[d] = hit
        return hit

    def basis_size(self, d: int) -> int:
        return self.group.order * comb(d + 2 * self.N, 2 * self.N)

    # -- text ---------------------------------------------------------------
    def format_monomial(self, mono) -> str:
        d0, d1, g = mono
        parts = []
        for alpha, block in ((0, d0), (1, d1)):
            for i, e in enumerate(block):
                if e == 1:
                    parts.append(f"a{alpha}_{i + 1}")
                elif e > 1:
                    parts.append(f"a{alpha}_{i + 1}^{e}")
        if g != self.group.identity or not parts:
            parts.append(self.group.elements[g].label)
        return "*".join(parts)

    def format(self, x: "AlgebraElement") -> str:
        if not x.terms:
            return "0"
        chunks = []
        for mono in sorted(x.terms, key=self.sort_key):
            c = x.terms[mono]
            body = self.format_monomial(mono)
            if c.is_rational():
                q = c.to_fraction()
                neg, q = q < 0, abs(q)
                text = body if q == 1 else f"{q}*{body}"
            else:
                neg = False
                text = f"({c})*{body}"
            chunks.append((neg, text))
        out = ("-" if chunks[0][0] else "") + chunks[0][1]
        for neg, text in chunks[1:]:
            out += (" - " if neg else " + ") + text
        return out

    def parse(self, text: str) -> "AlgebraElement":
        from .parsing import parse_element

        return parse_element(text, self)


class AlgebraElement:
    """Sparse combination of normal-form monomials. Treat as immutable."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: SRAlgebra, terms: dict):
        self.algebra = algebra
        self.terms = terms

    def _lift(self, other):
        if isinstance(other, AlgebraElement):
            if other.algebra is not self.algebra:
                raise InstanceMismatch("elements belong to different algebra instances")
            return other
        return self.algebra.scalar(other)

    def __add__(self, other):
        other = self._lift(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m)
            if v is None:
                out[m] = c
            else:
                s = v + c
                if s:
                    out[m] = s
                else:
                    del out[m]
        return AlgebraElement(self.algebra, out)

    __radd__ = __add__

    def __neg__(self):
        return AlgebraElement(self.algebra, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) + (-self)

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            return self.algebra.multiply(self, other)
        s = self.algebra.field.scalar(other)
        if not s:
            return self.algebra.zero()
        return AlgebraElement(self.algebra, {m: c * s for m, c in self.terms.items()})

    def __rmul__(self, other):
        # scalars commute with everything
        return self.__mul__(other)

    def __eq__(self, other):
        if isinstance(other, AlgebraElement):
            return self.algebra is other.algebra and self.terms == other.terms
        if isinstance(other, (int, FieldScalar)) or hasattr(other, "numerator"):
            return self == self.algebra.scalar(other)
        return NotImplemented

    __hash__ = None

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def degree(self) -> int:
        return max((mono_degree(m) for m in self.terms), default=0)

    def parity(self) -> str:
        ps = {mono_degree(m) % 2 for m in self.terms}
        if ps == {1}:
            return "odd"
        if ps <= {0}:
            return "even"
        return "mixed"

    def parity_parts(self) -> dict:
        parts = {}
        for m, c in self.terms.items():
            parts.setdefault(mono_degree(m) % 2, {})[m] = c
        return {p: AlgebraElement(self.algebra, t) for p, t in parts.items()}

    def coefficient(self, mono) -> FieldScalar:
        return self.terms.get(mono, self.algebra.field.zero)

    def __str__(self):
        return self.algebra.format(self)

    def __repr__(self):
        return f"AlgebraElement({self.algebra.format(self)!r})"


def parity(f: AlgebraElement) -> str:
    return f.parity()
