"""Gram forms B(f, g) = t(f g) of (super)traces, their kernels, degenerate rays
of functional spaces, and the comparison of kernels through their singlet parts.

Gram entries are assembled column by column: for a fixed probe monomial m the
products m * A (A running over the generator words of the row basis) are built
along a prefix tree, and B(A g, m) = s * t(m A g) with s the (super)cyclic sign.
The direct definition t(e_i e_j) is kept as :func:`gram_entry_direct` and used
to cross-check.

Every kernel is invariant under the inner sl2 (the D^{ab} are derivations
killing t and preserving the filtration), and the form pairs weight w only
with weight -w.  Kernels are computed per weight block.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field

from .algebra import AlgebraElement, SRAlgebra, SUPERTRACE, mono_degree, mono_weight
from .errors import DegreeExceeded, Inconclusive, InternalError, Refused
from .functionals import LinearFunctional, evaluate
from .linalg import Echelon, Subspace, nullspace
from .sl2 import SpinDecomposition


# -- Gram matrices ----------------------------------------------------------

def _words(H: SRAlgebra, d: int):
    """Generator-block exponent pairs (d0, d1) of degree <= d, with their
    parent in the prefix tree and the appended generator."""
    atoms = [(0, i) for i in range(H.N)] + [(1, i) for i in range(H.N)]
    zero = (H.zero_exp, H.zero_exp)
    out = [(zero, None, None)]
    stack = [(zero, 0, 0)]
    while stack:
        node, start, deg = stack.pop()
        if deg == d:
            continue
        for k in range(start, len(atoms)):
            alpha, i = atoms[k]
            d0, d1 = node
            if alpha == 0:
                child = (d0[:i] + (d0[i] + 1,) + d0[i + 1:], d1)
            else:
                child = (d0, d1[:i] + (d1[i] + 1,) + d1[i + 1:])
            out.append((child, node, atoms[k]))
            stack.append((child, k, deg + 1))
    return out


def _check_budget(t: LinearFunctional, d: int, d_probe: int):
    if d + d_probe > t.degree:
        raise DegreeExceeded(f"Gram of F_{d} x F_{d_probe} needs values on F_{d + d_probe}, functional has F_{t.degree}")


@dataclass
class GramBlock:
    weight: int  # weight of the rows; columns have the opposite weight
    rows: list
    cols: list
    entries: dict  # (row index, col index) -> scalar, zeros omitted

    def column_vectors(self):
        cols = {}
        for (i, j), v in self.entries.items():
            cols.setdefault(j, {})[self.rows[i]] = v
        return [cols[j] for j in sorted(cols)]


def _gram_columns(t: LinearFunctional, d: int, col_monos, weights=None):
    """{row monomial -> {col monomial -> t(row * col)}} for rows in F_d."""
    H = t.algebra
    table = H.group.table
    G = H.group.order
    vals = t.values
    words = _words(H, d)
    out = {}
    for m in col_monos:
        wm = mono_weight(m)
        if weights is not None and -wm not in weights:
            continue
        pm = mono_degree(m) % 2
        nodes = {words[0][0]: {m: H.field.one}}
        for node, parent, atom in words:
            if parent is not None:
                nodes[node] = H._times_gen_terms(nodes[parent], atom[0], atom[1])
            d0, d1 = node
            if sum(d1) - sum(d0) != -wm:
                continue
            sign = -1 if t.kind == SUPERTRACE and pm and (sum(d0) + sum(d1)) % 2 else 1
            P = nodes[node]
            for g in range(G):
                acc = None
                for (p0, p1, h), c in P.items():
                    v = vals.get((p0, p1, table[h][g]))
                    if v is not None:
                        acc = c * v if acc is None else acc + c * v
                if acc:
                    out.setdefault((d0, d1, g), {})[m] = acc if sign == 1 else -acc
    return out


def gram_matrix(t: LinearFunctional, d: int, d_probe: int, weights=None) -> dict:
    """Weight blocks of B[i][j] = t(e_i e_j), e_i in F_d, e_j in F_{d_probe}."""
    if d > d_probe:
        raise ValueError("row degree must not exceed probe degree")
    _check_budget(t, d, d_probe)
    H = t.algebra
    data = _gram_columns(t, d, H.basis(d_probe), weights)
    return _blocks(H, d, d_probe, data, weights)


def _blocks(H, d, d_probe, data, weights):
    rows_by_w, cols_by_w = {}, {}
    for m in H.basis(d):
        rows_by_w.setdefault(mono_weight(m), []).append(m)
    for m in H.basis(d_probe):
        cols_by_w.setdefault(mono_weight(m), []).append(m)
    blocks = {}
    for w, rows in rows_by_w.items():
        if weights is not None and w not in weights:
            continue
        cols = cols_by_w.get(-w, [])
        ci = {m: j for j, m in enumerate(cols)}
        entries = {}
        for i, r in enumerate(rows):
            for m, v in data.get(r, {}).items():
                entries[(i, ci[m])] = v
        blocks[w] = GramBlock(w, rows, cols, entries)
    return blocks


def gram_entry_direct(t: LinearFunctional, e_i, e_j):
    H = t.algebra
    return evaluate(t, H.multiply(H.monomial(e_i), H.monomial(e_j)))


def gram_dense(t: LinearFunctional, d: int, d_probe: int) -> list:
    """Full rectangular Gram as a list of rows over H.basis(d) x H.basis(d_probe)."""
    H = t.algebra
    blocks = gram_matrix(t, d, d_probe)
    ri = {m: i for i, m in enumerate(H.basis(d))}
    cj = {m: j for j, m in enumerate(H.basis(d_probe))}
    zero = H.field.zero
    out = [[zero] * len(cj) for _ in ri]
    for b in blocks.values():
        for (i, j), v in b.entries.items():
            out[ri[b.rows[i]]][cj[b.cols[j]]] = v
    return out


# -- kernels ------------------------------------------------------------------

@dataclass
class KernelReport:
    functional: str
    kind: str
    d: int
    probes: list
    dims: list
    kernels: list  # Subspace per probe
    stabilized: bool
    ideal: "IdealReport | None" = None

    @property
    def kernel(self) -> Subspace:
        return self.kernels[-1]

    @property
    def dim(self) -> int:
        return self.dims[-1]


def _block_kernel(block: GramBlock, field):
    return nullspace(block.column_vectors(), block.rows, field)


def kernel(t: LinearFunctional, d: int, probes=None, weights=None) -> KernelReport:
    """Left kernel of the Gram form on F_d against F_p for each probe degree p."""
    H = t.algebra
    probes = list(probes) if probes is not None else list(range(d, d + 5))
    if not probes or probes != sorted(set(probes)) or probes[0] < d:
        raise ValueError("probe schedule must be increasing and start at or above d")
    _check_budget(t, d, probes[-1])
    data = {}
    done = 0
    kernels, dims = [], []
    columns = H.basis(d)
    for p in probes:
        new = [m for m in H.basis(p) if mono_degree(m) >= done] if done else H.basis(p)
        for r, row in _gram_columns(t, d, new, weights).items():
            data.setdefault(r, {}).update(row)
        done = p + 1
        vecs = []
        for b in _blocks(H, d, p, data, weights).values():
            vecs.extend(_block_kernel(b, H.field))
        sub = Subspace.from_vectors(vecs, columns, H.field)
        if dims and sub.dim > dims[-1]:
            raise InternalError("kernel dimension increased with the probe degree")
        kernels.append(sub)
        dims.append(sub.dim)
    stable = len(kernels) >= 2 and kernels[-1] == kernels[-2]
    return KernelReport(t.label, t.kind, d, probes, dims, kernels, stable)


# -- ideal property ------------------------------------------------------------

@dataclass
class IdealReport:
    d: int
    probe: int
    passed: bool
    products: int
    failures: list = dc_field(default_factory=list)  # (side, generator, basis index)


def _generators(H: SRAlgebra):
    from .functionals import simple_generators

    gens = [(f"a{a}_{i + 1}", H.gen(a, i)) for a in (0, 1) for i in range(H.N)]
    gens += [(H.group.elements[s].label, H.group_element(s)) for s in simple_generators(H)]
    return gens


def ideal_check(t: LinearFunctional, K: Subspace, d: int, probe: int | None = None) -> IdealReport:
    """x f and f x, for f in K and generators x, must lie in the kernel on F_{d+1}."""
    H = t.algebra
    if probe is None:
        probe = t.degree - d - 1
    if not K.rows:
        return IdealReport(d, probe, True, 0)
    upper = kernel(t, d + 1, [probe]).kernel
    cols = {m: k for k, m in enumerate(upper.columns)}
    ech = Echelon(H.field)
    for r in upper.rows:
        ech.add({cols[m]: v for m, v in r})
    failures = []
    count = 0
    for k, row in enumerate(K.vectors()):
        f = H.element(row)
        for name, x in _generators(H):
            for side, prod in (("left", x * f), ("right", f * x)):
                count += 1
                vec = {cols[m]: v for m, v in prod.terms.items()}
                if not ech.contains(vec):
                    failures.append((side, name, k))
    return IdealReport(d, probe, not failures, count, failures)


# -- singlets and kernel comparison -------------------------------------------

def singlet_intersection(K: Subspace, decomposition: SpinDecomposition, field) -> Subspace:
    if decomposition.degree < max((mono_degree(m) for m in K.columns), default=0):
        raise DegreeExceeded("singlet decomposition is shallower than the kernel")
    return K.intersect(decomposition.singlets, field)


@dataclass
class Theorem3Report:
    functionals: tuple
    d: int
    probes: list
    singlet_parts: tuple  # (Subspace, Subspace)
    kernels: tuple
    singlet_equal: bool
    full_equal: bool

    @property
    def consistent(self) -> bool:
        return self.singlet_equal == self.full_equal


def theorem3_compare(R1: KernelReport, R2: KernelReport, decomposition: SpinDecomposition, field) -> Theorem3Report:
    for R in (R1, R2):
        if not R.stabilized:
            raise Refused(f"kernel of {R.functional} is not stabilized (dims {R.dims})")
    if R1.d != R2.d or R1.probes[-1] != R2.probes[-1]:
        raise Refused("kernels were computed at different budgets")
    S1 = singlet_intersection(R1.kernel, decomposition, field)
    S2 = singlet_intersection(R2.kernel, decomposition, field)
    return Theorem3Report(
        (R1.functional, R2.functional), R1.d, list(R1.probes), (S1, S2), (R1.kernel, R2.kernel),
        S1 == S2, R1.kernel == R2.kernel,
    )


# -- degenerate rays ------------------------------------------------------------

def combine(space, coeffs, label=None) -> LinearFunctional:
    """sum_k coeffs[k] * space[k] as a new functional."""
    t0 = space[0]
    vals = {}
    for c, t in zip(coeffs, space):
        if not c:
            continue
        for m, v in t.values.items():
            cur = vals.get(m)
            vals[m] = c * v if cur is None else cur + c * v
    vals = {m: v for m, v in vals.items() if v}
    if not vals:
        raise ValueError("zero combination")
    name = label or "+".join(f"({c})*{t.label}" for c, t in zip(coeffs, space) if c)
    return LinearFunctional(t0.kind, min(t.degree for t in space), vals, "ray", t0.algebra, name)


def _poly_trim(p):
    while p and not p[-1]:
        p.pop()
    return p


def _poly_divmod(a, b):
    a = list(a)
    q = [b[0].field.zero] * max(len(a) - len(b) + 1, 1)
    inv = b[-1].inv()
    while len(_poly_trim(a)) >= len(b):
        shift = len(a) - len(b)
        c = a[-1] * inv
        q[shift] = c
        for k, bk in enumerate(b):
            a[shift + k] = a[shift + k] - c * bk
        a.pop()
    return q, a


def poly_gcd(a, b):
    """Monic gcd of polynomials given as coefficient lists (low to high)."""
    a, b = _poly_trim(list(a)), _poly_trim(list(b))
    while b:
        _, r = _poly_divmod(a, b)
        a, b = b, _poly_trim(r)
    if not a:
        return a
    inv = a[-1].inv()
    return [c * inv for c in a]


def squarefree_part(p):
    """p / gcd(p, p'), monic."""
    p = _poly_trim(list(p))
    if len(p) <= 2:
        return poly_gcd(p, p) if p else p
    deriv = [c * k for k, c in enumerate(p)][1:]
    g = poly_gcd(p, deriv)
    q, r = _poly_divmod(p, g)
    if _poly_trim(r):
        raise InternalError("gcd does not divide its polynomial")
    return poly_gcd(q, q)


def _det(mat, field):
    n = len(mat)
    m = [list(r) for r in mat]
    det = field.one
    for c in range(n):
        p = next((r for r in range(c, n) if m[r][c]), None)
        if p is None:
            return field.zero
        if p != c:
            m[c], m[p] = m[p], m[c]
            det = -det
        piv = m[c][c]
        det = det * piv
        inv = piv.inv()
        for r in range(c + 1, n):
            if m[r][c]:
                f = m[r][c] * inv
                row_c = m[c]
                row_r = m[r]
                for k in range(c, n):
                    if row_c[k]:
                        row_r[k] = row_r[k] - f * row_c[k]
    return det


def _interpolate(xs, ys, field):
    """Coefficients (low to high) of the polynomial through the points."""
    n = len(xs)
    coeffs = [field.zero] * n
    for k in range(n):
        basis = [field.one]
        denom = field.one
        for j in range(n):
            if j == k:
                continue
            basis = [field.zero] + basis
            for i in range(len(basis) - 1):
                basis[i] = basis[i] - xs[j] * basis[i + 1]
            denom = denom * (xs[k] - xs[j])
        scale = ys[k] / denom
        for i, b in enumerate(basis):
            coeffs[i] = coeffs[i] + scale * b
    return _poly_trim(coeffs)


def _solve_right(A, B, field):
    """A^-1 B for a nonsingular square A (Gauss-Jordan on [A | B])."""
    n = len(A)
    M = [list(A[i]) + list(B[i]) for i in range(n)]
    w = len(M[0])
    for c in range(n):
        p = next((r for r in range(c, n) if M[r][c]), None)
        if p is None:
            raise InternalError("singular pivot matrix")
        M[c], M[p] = M[p], M[c]
        inv = M[c][c].inv()
        M[c] = [x * inv if x else x for x in M[c]]
        row_c = M[c]
        for r in range(n):
            if r != c and M[r][c]:
                f = M[r][c]
                row_r = M[r]
                for k in range(c, w):
                    if row_c[k]:
                        row_r[k] = row_r[k] - f * row_c[k]
    return [row[n:] for row in M]


def charpoly(C, field):
    """det(x I - C) via reduction to upper Hessenberg form; coefficients low to high."""
    n = len(C)
    H = [list(r) for r in C]
    for m in range(1, n - 1):
        i = next((r for r in range(m, n) if H[r][m - 1]), None)
        if i is None:
            continue
        if i != m:
            H[i], H[m] = H[m], H[i]
            for row in H:
                row[i], row[m] = row[m], row[i]
        inv = H[m][m - 1].inv()
        for i in range(m + 1, n):
            u = H[i][m - 1] * inv
            if not u:
                continue
            row_i, row_m = H[i], H[m]
            for j in range(n):
                if row_m[j]:
                    row_i[j] = row_i[j] - u * row_m[j]
            for row in H:
                if row[i]:
                    row[m] = row[m] + u * row[i]
    zero, one = field.zero, field.one
    polys = [[one]]
    for m in range(1, n + 1):
        prev = polys[m - 1]
        h = H[m - 1][m - 1]
        cur = [zero] + list(prev)
        for k, c in enumerate(prev):
            cur[k] = cur[k] - h * c
        t = one
        for i in range(1, m):
            t = t * H[m - i][m - i - 1]
            coef = t * H[m - i - 1][m - 1]
            if coef:
                for k, c in enumerate(polys[m - i - 1]):
                    cur[k] = cur[k] - coef * c
        polys.append(cur)
    return polys[n]


def _taylor_shift(p, a, field):
    """Coefficients of q(x) = p(x - a)."""
    out = [field.zero] * len(p)
    for c in reversed(p):
        # out = out * (x - a) + c
        nxt = [field.zero] * len(out)
        for k in range(len(out) - 1):
            nxt[k + 1] = nxt[k + 1] + out[k]
        for k in range(len(out)):
            nxt[k] = nxt[k] - a * out[k]
        nxt[0] = nxt[0] + c
        out = nxt
    return _poly_trim(out)


def pencil_determinant(A, B, mu0, field):
    """det(A + mu B) up to a nonzero constant, for A + mu0 B nonsingular.

    With A' = A + mu0 B and C = A'^-1 B: det(A + mu B) = det(A') det(I + nu C)
    where nu = mu - mu0, and det(I + nu C) is read off the characteristic
    polynomial of C.
    """
    r = len(A)
    Ap = [[A[i][j] + mu0 * B[i][j] for j in range(r)] for i in range(r)]
    chi = charpoly(_solve_right(Ap, B, field), field)
    in_nu = [chi[r - j] * (-1 if j % 2 else 1) for j in range(r + 1)]
    return _taylor_shift(in_nu, mu0, field)


def _pencil_block_gcd(B1: GramBlock, B2: GramBlock, field, rng, tries=4):
    """Squarefree gcd over column selections S of det((B1 + mu B2)[:, S]);
    None if the block is rank deficient for generic mu."""
    r = len(B1.rows)
    if r == 0:
        return [field.one]
    ncols = len(B1.cols)
    cols1, cols2 = {}, {}
    for (i, j), v in B1.entries.items():
        cols1.setdefault(j, {})[i] = v
    for (i, j), v in B2.entries.items():
        cols2.setdefault(j, {})[i] = v

    g = None
    for attempt in range(tries):
        mu0 = field.scalar(rng.randint(10**3, 10**4))
        order = list(range(ncols))
        rng.shuffle(order)
        ech = Echelon(field)
        chosen = []
        for j in order:
            vec = dict(cols1.get(j, {}))
            for i, v in cols2.get(j, {}).items():
                vec[i] = vec[i] + mu0 * v if i in vec else mu0 * v
            if ech.add({i: v for i, v in vec.items() if v}) is not None:
                chosen.append(j)
                if len(chosen) == r:
                    break
        if len(chosen) < r:
            return None
        zero = field.zero
        A = [[cols1.get(j, {}).get(i, zero) for j in chosen] for i in range(r)]
        B = [[cols2.get(j, {}).get(i, zero) for j in chosen] for i in range(r)]
        p = pencil_determinant(A, B, mu0, field)
        g = p if g is None else poly_gcd(g, p)
        g = squarefree_part(g)
        if len(g) <= 1 or (attempt >= 1 and len(g) <= 2):
            break
    return g


@dataclass
class DegenerateRay:
    coefficients: tuple  # coordinates in the given basis of the functional space
    functional: LinearFunctional
    report: KernelReport


@dataclass
class DegeneracyScan:
    dimension: int
    d: int
    probes: list
    rays: list
    candidates: list  # candidate rays from the pencil before verification
    pencil: dict  # weight -> gcd polynomial coefficients as strings


def find_degenerate_functionals(space, d: int, probes=None, seed: int = 0) -> DegeneracyScan:
    """Rays of the functional space whose Gram kernel on F_d is nonzero and stable.

    Only weight 0 and weight 1 rows are needed: a nonzero sl2-invariant
    kernel contains a vector of weight 0 or 1.  Candidate rays come from the
    gcd of maximal minors of the pencil at the largest probe degree and are
    then verified by a full kernel computation.
    """
    if not space:
        raise ValueError("empty functional space")
    probes = list(probes) if probes is not None else list(range(d, d + 5))
    field = space[0].algebra.field
    weights = {0, 1}
    k = len(space)
    if k == 1:
        candidates = [(field.one,)]
        pencil = {}
    elif k == 2:
        rng = random.Random(seed)
        top = probes[-1]
        g1 = gram_matrix(space[0], d, top, weights)
        g2 = gram_matrix(space[1], d, top, weights)
        pencil = {}
        candidates = []
        for w in sorted(weights):
            if w not in g1:
                continue
            gcd = _pencil_block_gcd(g1[w], g2[w], field, rng)
            if gcd is None:
                raise Inconclusive(
                    f"weight {w} block is rank deficient on the whole pencil at probe {top}",
                    {"weight": w, "rows": len(g1[w].rows), "cols": len(g1[w].cols)},
                )
            pencil[w] = [str(c) for c in gcd]
            if len(gcd) == 2:
                mu = -gcd[0]
                if (field.one, mu) not in candidates:
                    candidates.append((field.one, mu))
            elif len(gcd) > 2:
                raise Inconclusive(
                    f"pencil condition of degree {len(gcd) - 1} at weight {w}", {"gcd": pencil[w]}
                )
        candidates.append((field.zero, field.one))
    else:
        raise Inconclusive(f"pencil scan implemented for spaces of dimension <= 2, got {k}", {"dimension": k})
    rays = []
    for coeffs in candidates:
        t = combine(space, coeffs)
        rep = kernel(t, d, probes)
        if rep.stabilized and rep.dim > 0:
            rays.append(DegenerateRay(coeffs, t, rep))
    return DegeneracyScan(k, d, probes, rays, candidates, pencil)
