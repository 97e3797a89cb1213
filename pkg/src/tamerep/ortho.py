"""Quadratic spaces over F_q (q odd): Witt decomposition and type, spinor
norms via an explicit reflection decomposition, classical group orders, and
placement of a similitude subgroup among the four projective quotients.

Conventions.  The Gram matrix stores the symmetric bilinear form B; the
quadratic form is Q(v) = B(v, v) / 2, so the hyperbolic plane [[0,1],[1,0]]
has Q(x, y) = xy.  The spinor norm of a product of reflections r_{v_i} is the
square class of the product of the Q(v_i).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .arith import factorize
from .errors import (
    BadParams,
    CapExceeded,
    DegenerateForm,
    InvariantViolation,
    NotOrthogonal,
    NotSimilitude,
    OddCharacteristicRequired,
    PromiseUnverifiable,
    TooLarge,
)
from .ff import FieldDescriptor, is_square, sqrt
from .groups import GroupHandle, closure, _generating_subset, _sorted_elements
from .linalg import Matrix, _row_reduce, nullspace

_ENUM_VECTOR_LIMIT = 1 << 20
_PROMISE_CAP = 10_000


class SquareClass(enum.Enum):
    SQUARE = "square"
    NONSQUARE = "nonsquare"

    def __mul__(self, other: "SquareClass") -> "SquareClass":
        if self is other:
            return SquareClass.SQUARE
        return SquareClass.NONSQUARE


def square_class(x) -> SquareClass:
    return SquareClass.SQUARE if is_square(x) else SquareClass.NONSQUARE


class GroupFlavor(enum.Enum):
    OMEGA = "OMEGA"
    SO = "SO"
    O = "O"
    GO = "GO"


@dataclass(frozen=True)
class QuadraticSpace:
    field: FieldDescriptor
    gram: Matrix

    def __post_init__(self):
        if self.field.p == 2:
            raise OddCharacteristicRequired("quadratic spaces need odd q")
        g = self.gram
        if g.nrows != g.ncols:
            raise BadParams("Gram matrix must be square")
        if g.nrows % 2 != 0 or g.nrows == 0:
            raise BadParams(f"dimension must be even and positive, got {g.nrows}")
        if g.transpose() != g:
            raise BadParams("Gram matrix must be symmetric")
        if g.det().is_zero():
            raise DegenerateForm("Gram matrix is singular")

    @property
    def dim(self) -> int:
        return self.gram.nrows

    def bilinear(self, u, v):
        return _dot(self.gram.apply(u), v, self.field)

    def quad(self, v):
        two_inv = self.field.element(2).inverse()
        return self.bilinear(v, v) * two_inv


@dataclass(frozen=True)
class TypeReport:
    witt_index: int
    epsilon: str  # "+" or "-"
    disc_class: str  # "square" or "nonsquare"


@dataclass(frozen=True)
class SubgroupPlacement:
    label: str  # P_OMEGA | PSO | PO | PGO | OTHER
    char_images: tuple  # per-generator {similitude, det_part, spinor}
    spinor_minus_trivial: bool
    omega_verified: bool


def _dot(u, v, fld):
    acc = fld.zero
    for a, b in zip(u, v):
        if a and b:
            acc = acc + a * b
    return acc


def _vec_sub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def _vec_add(u, v):
    return tuple(a + b for a, b in zip(u, v))


# ---------------------------------------------------------------------------
# Witt decomposition


def _enumerate_vectors(fld, dim):
    """All nonzero coordinate vectors in lexicographic element order."""
    total = fld.q**dim
    for idx in range(1, total):
        coords = []
        rem = idx
        for _ in range(dim):
            coords.append(rem % fld.q)
            rem //= fld.q
        yield tuple(fld.element_at(c) for c in reversed(coords))


def _diagonalize(V: "QuadraticSpace"):
    """Congruence transform U with U^T G U diagonal; deterministic pivoting.

    Returns (U columns as vectors, diagonal entries).
    """
    fld = V.field
    n = V.dim
    basis = [
        tuple(fld.one if i == j else fld.zero for i in range(n)) for j in range(n)
    ]
    cols = []
    diag = []
    remaining = list(basis)
    while remaining:
        # pick a vector with Q != 0 among remaining basis or pairwise sums
        pick = None
        for v in remaining:
            if V.quad(v):
                pick = v
                break
        if pick is None:
            for i in range(len(remaining)):
                for j in range(i + 1, len(remaining)):
                    cand = _vec_add(remaining[i], remaining[j])
                    if V.quad(cand):
                        pick = cand
                        break
                if pick is not None:
                    break
        if pick is None:
            raise DegenerateForm("form vanishes on a complement; degenerate input")
        qv = V.quad(pick)
        cols.append(pick)
        diag.append(qv)
        gv = V.gram.apply(pick)
        denom = V.bilinear(pick, pick)  # = 2 Q(pick), nonzero
        dinv = denom.inverse()
        new_rem = []
        for w in remaining:
            coef = _dot(gv, w, fld) * dinv
            w2 = _vec_sub(w, tuple(coef * c for c in pick))
            if any(w2):
                new_rem.append(w2)
        # keep an independent subset of the projected vectors
        if new_rem:
            red, pivots = _row_reduce([list(r) for r in new_rem], n)
            new_rem = [tuple(red[r]) for r in range(len(pivots))]
        remaining = new_rem
        if len(cols) == n:
            break
    if len(cols) != n:
        raise DegenerateForm("diagonalization lost rank")
    return cols, diag


def _find_isotropic(V: "QuadraticSpace"):
    """First isotropic vector in the deterministic search order, or None."""
    fld = V.field
    n = V.dim
    if fld.q**n <= _ENUM_VECTOR_LIMIT:
        for v in _enumerate_vectors(fld, n):
            if V.quad(v).is_zero():
                return v
        return None
    cols, diag = _diagonalize(V)

    def to_ambient(coeffs):
        out = [fld.zero] * n
        for c, col in zip(coeffs, cols):
            if c:
                out = [o + c * x for o, x in zip(out, col)]
        return tuple(out)

    # two-variable test on each pair of diagonal entries first
    for i in range(n):
        for j in range(i + 1, n):
            ratio = -diag[i] / diag[j]
            if is_square(ratio):
                r = sqrt(ratio)
                coeffs = [fld.zero] * n
                coeffs[i] = fld.one
                coeffs[j] = r
                return to_ambient(coeffs)
    if n < 3:
        return None
    # a, b, c from the first three diagonal entries: solve a x^2 + b y^2 = -c
    a, b, c = diag[0], diag[1], diag[2]
    x = fld.zero
    for xv in fld.elements():
        rhs = (-c - a * xv * xv) / b
        if rhs.is_zero():
            continue
        if is_square(rhs):
            y = sqrt(rhs)
            coeffs = [fld.zero] * n
            coeffs[0] = xv
            coeffs[1] = y
            coeffs[2] = fld.one
            return to_ambient(coeffs)
    raise InvariantViolation("ternary form over a finite field must be isotropic")


def _complement_basis(V: "QuadraticSpace", vectors):
    """Basis of the orthogonal complement of the span of the given vectors."""
    fld = V.field
    rows = [tuple(V.gram.apply(v)) for v in vectors]
    return nullspace(Matrix(fld, rows))


def _restrict(V: "QuadraticSpace", basis):
    fld = V.field
    g = [[V.bilinear(u, w) for w in basis] for u in basis]
    return QuadraticSpace(fld, Matrix(fld, g))


def witt_decompose(V: QuadraticSpace) -> TypeReport:
    """Split hyperbolic planes until anisotropic; cross-check the sign of the
    discriminant and fail loudly on mismatch."""
    fld = V.field
    n = V.dim
    witt = 0
    current = V
    ambient_dim = n
    while current.dim >= 2:
        v = _find_isotropic(current)
        if v is None:
            break
        # hyperbolic partner: u with B(v, u) = 1, Q(u) = 0
        gv = current.gram.apply(v)
        pivot = next((i for i, e in enumerate(gv) if e), None)
        if pivot is None:
            raise DegenerateForm("isotropic vector is in the radical")
        u0 = tuple(
            current.field.one if i == pivot else current.field.zero
            for i in range(current.dim)
        )
        binv = _dot(gv, u0, fld).inverse()
        u1 = tuple(binv * e for e in u0)
        qu = current.quad(u1)
        u2 = _vec_sub(u1, tuple(qu * e for e in v))
        witt += 1
        comp = _complement_basis(current, [v, u2])
        if len(comp) != current.dim - 2:
            raise InvariantViolation("hyperbolic complement has wrong dimension")
        if not comp:
            current = None
            break
        current = _restrict(current, comp)
    m = n // 2
    if witt == m:
        eps = "+"
    elif witt == m - 1:
        eps = "-"
    else:
        raise InvariantViolation(f"witt index {witt} impossible for dimension {n}")
    disc = V.gram.det()
    if m % 2 == 1:
        disc = -disc
    disc_cls = square_class(disc)
    expected = "+" if disc_cls is SquareClass.SQUARE else "-"
    if expected != eps:
        raise InvariantViolation(
            f"constructive type {eps} disagrees with discriminant criterion {expected}"
        )
    return TypeReport(
        witt_index=witt,
        epsilon=eps,
        disc_class=disc_cls.value,
    )


# ---------------------------------------------------------------------------
# Reflections and the spinor norm


def reflection(V: QuadraticSpace, v) -> Matrix:
    """r_v(x) = x - B(x, v)/Q(v) * v, for anisotropic v."""
    fld = V.field
    qv = V.quad(v)
    if qv.is_zero():
        raise BadParams("reflection vector must be anisotropic")
    qinv = qv.inverse()
    gv = V.gram.apply(v)
    n = V.dim
    cols = []
    for j in range(n):
        e = tuple(fld.one if i == j else fld.zero for i in range(n))
        coef = _dot(gv, e, fld) * qinv
        cols.append(_vec_sub(e, tuple(coef * c for c in v)))
    return Matrix(fld, [[cols[j][i] for j in range(n)] for i in range(n)])


def is_orthogonal(M: Matrix, V: QuadraticSpace) -> bool:
    return M.transpose() * V.gram * M == V.gram


def _sub_quad(S: Matrix, v, fld):
    two_inv = fld.element(2).inverse()
    return _dot(S.apply(v), v, fld) * two_inv


def _sub_reflection(S: Matrix, v, fld) -> Matrix:
    qv = _sub_quad(S, v, fld)
    qinv = qv.inverse()
    gv = S.apply(v)
    m = S.nrows
    cols = []
    for j in range(m):
        e = tuple(fld.one if i == j else fld.zero for i in range(m))
        coef = _dot(gv, e, fld) * qinv
        cols.append(_vec_sub(e, tuple(coef * c for c in v)))
    return Matrix(fld, [[cols[j][i] for j in range(m)] for i in range(m)])


def _anisotropic_candidates(m, fld):
    basis = [tuple(fld.one if i == j else fld.zero for i in range(m)) for j in range(m)]
    for b in basis:
        yield b
    for i in range(m):
        for j in range(i + 1, m):
            yield _vec_add(basis[i], basis[j])


def reflection_decomposition(M: Matrix, V: QuadraticSpace) -> list[tuple]:
    """Ambient vectors v_i with M equal to the ordered product of the r_{v_i}.

    Constructive Cartan-Dieudonne: fix an anisotropic x; peel with the
    reflection through Mx - x when that vector is anisotropic, otherwise
    through Mx + x followed by x (the two cannot both be isotropic); then
    restrict to the orthogonal complement of x and recurse.
    """
    if not is_orthogonal(M, V):
        raise NotOrthogonal("matrix does not preserve the form")
    fld = V.field
    n = V.dim
    basis = [tuple(fld.one if i == j else fld.zero for i in range(n)) for j in range(n)]
    W = M
    vectors: list[tuple] = []

    def to_ambient(coeffs):
        out = [fld.zero] * n
        for c, b in zip(coeffs, basis):
            if c:
                out = [o + c * x for o, x in zip(out, b)]
        return tuple(out)

    while basis:
        m = len(basis)
        if W.is_identity():
            break
        S = Matrix(fld, [[_dot(V.gram.apply(u), w, fld) for w in basis] for u in basis])
        x = next(
            (c for c in _anisotropic_candidates(m, fld) if _sub_quad(S, c, fld)),
            None,
        )
        if x is None:
            raise InvariantViolation("no anisotropic vector in a nondegenerate space")
        wx = W.apply(x)
        if wx == x:
            pass  # fall through to restriction
        else:
            d = _vec_sub(wx, x)
            if _sub_quad(S, d, fld):
                vectors.append(to_ambient(d))
                W = _sub_reflection(S, d, fld) * W
            else:
                s = _vec_add(wx, x)
                if not _sub_quad(S, s, fld):
                    raise InvariantViolation("Mx-x and Mx+x cannot both be isotropic")
                vectors.append(to_ambient(s))
                W = _sub_reflection(S, s, fld) * W
                vectors.append(to_ambient(x))
                W = _sub_reflection(S, x, fld) * W
            if W.apply(x) != tuple(x):
                raise InvariantViolation("peeling failed to fix the chosen vector")
        # restrict W to the orthogonal complement of x inside the subspace
        rows = [tuple(S.apply(x))]
        comp = nullspace(Matrix(fld, rows))
        if len(comp) != m - 1:
            raise InvariantViolation("complement dimension mismatch")
        if not comp:
            break
        # express W on the new basis: solve N a = W c for each new vector c
        ncols = [tuple(c) for c in comp]
        images = [W.apply(c) for c in ncols]
        aug = [
            [ncols[j][i] for j in range(len(ncols))] + [img[i] for img in images]
            for i in range(m)
        ]
        red, pivots = _row_reduce(aug, len(ncols))
        if len(pivots) != len(ncols):
            raise InvariantViolation("complement basis is not independent")
        sol = {p: red[r][len(ncols):] for r, p in enumerate(pivots)}
        W = Matrix(fld, [sol[i] for i in range(len(ncols))])
        basis = [to_ambient(c) for c in ncols]
    # verify the decomposition exactly
    prod = Matrix.identity(fld, n)
    for v in vectors:
        prod = prod * reflection(V, v)
    if prod != M:
        raise InvariantViolation("reflection decomposition does not multiply back")
    return vectors


def spinor_norm(M: Matrix, V: QuadraticSpace) -> SquareClass:
    """Square class of the product of Q(v_i) over a reflection decomposition."""
    vectors = reflection_decomposition(M, V)
    cls = SquareClass.SQUARE
    for v in vectors:
        cls = cls * square_class(V.quad(v))
    return cls


# ---------------------------------------------------------------------------
# Orders, standard spaces, enumeration


def group_order(n: int, epsilon, q: int, flavor) -> int:
    """Orders of O/SO/Omega/GO in even dimension n over F_q, q odd."""
    eps = _norm_eps(epsilon)
    flv = _norm_flavor(flavor)
    if n < 2 or n % 2 != 0:
        raise BadParams(f"dimension must be even and >= 2, got {n}")
    fac = factorize(q)
    if len(fac) != 1 or 2 in fac:
        raise BadParams(f"q must be an odd prime power, got {q}")
    m = n // 2
    o = 2 * q ** (m * (m - 1)) * (q**m - eps)
    for i in range(1, m):
        o *= q ** (2 * i) - 1
    if flv is GroupFlavor.O:
        return o
    if flv is GroupFlavor.SO:
        return o // 2
    if flv is GroupFlavor.OMEGA:
        return (q - eps) // 2 if n == 2 else o // 4
    return o * (q - 1)  # GO


def _norm_eps(epsilon) -> int:
    if epsilon in (1, -1):
        return epsilon
    if epsilon == "+":
        return 1
    if epsilon == "-":
        return -1
    raise BadParams(f"epsilon must be +/-, got {epsilon!r}")


def _norm_flavor(flavor) -> GroupFlavor:
    if isinstance(flavor, GroupFlavor):
        return flavor
    try:
        return GroupFlavor[str(flavor)]
    except KeyError:
        raise BadParams(f"unknown flavor {flavor!r}") from None


def standard_space(n: int, epsilon, q_field: FieldDescriptor) -> QuadraticSpace:
    """Reference space of the requested type: hyperbolic planes, plus one
    anisotropic binary block diag(1, -nonsquare) for minus type."""
    eps = _norm_eps(epsilon)
    fld = q_field
    m = n // 2
    zero, one = fld.zero, fld.one
    g = [[zero] * n for _ in range(n)]
    planes = m if eps == 1 else m - 1
    for i in range(planes):
        g[2 * i][2 * i + 1] = one
        g[2 * i + 1][2 * i] = one
    if eps == -1:
        nu = fld.nonsquare()
        g[n - 2][n - 2] = one
        g[n - 1][n - 1] = -nu
    V = QuadraticSpace(fld, Matrix(fld, g))
    report = witt_decompose(V)
    if report.epsilon != ("+" if eps == 1 else "-"):
        raise InvariantViolation("standard space has the wrong type")
    return V


def all_reflections(V: QuadraticSpace) -> list[Matrix]:
    """Distinct reflections of V; requires an enumerable vector set."""
    fld = V.field
    if fld.q**V.dim > _ENUM_VECTOR_LIMIT:
        raise TooLarge("too many vectors to enumerate reflections")
    seen = {}
    for v in _enumerate_vectors(fld, V.dim):
        if V.quad(v).is_zero():
            continue
        r = reflection(V, v)
        seen.setdefault(r.canonical_bytes(), r)
    return [seen[k] for k in sorted(seen)]


def orthogonal_group(V: QuadraticSpace, cap: int) -> GroupHandle:
    """Full orthogonal group by closing over reflections; independent of the
    order formulas (every reflection is verified to land in the closure)."""
    refs = all_reflections(V)
    gens = [refs[0]]
    grp = closure(gens, cap)
    for r in refs[1:]:
        if r not in grp:
            gens.append(r)
            grp = closure(gens, cap)
    return grp


def subgroup_where(handle: GroupHandle, pred) -> GroupHandle:
    """Subgroup of the elements satisfying pred, with a greedy generating set."""
    elems = [m for m in handle.elements if pred(m)]
    gens = _generating_subset(handle.field, handle.n, elems)
    return GroupHandle(handle.field, handle.n, _sorted_elements(elems), gens)


def scalars_in(flavor, V: QuadraticSpace) -> list[Matrix]:
    """Scalar matrices inside the given classical group flavor."""
    flv = _norm_flavor(flavor)
    fld = V.field
    n = V.dim
    ident = Matrix.identity(fld, n)
    if flv is GroupFlavor.GO:
        if fld.q - 1 > _PROMISE_CAP:
            raise TooLarge("scalar group too large to list")
        out = []
        for x in fld.elements():
            if not x.is_zero():
                out.append(Matrix.scalar(fld, x, n))
        return out
    minus = Matrix.scalar(fld, -fld.one, n)
    if flv in (GroupFlavor.O, GroupFlavor.SO):
        return [ident, minus]
    # OMEGA: -I belongs iff its spinor norm is trivial
    if spinor_norm(minus, V) is SquareClass.SQUARE:
        return [ident, minus]
    return [ident]


# ---------------------------------------------------------------------------
# Classification into the four projective quotients


def _similitude_factor(g: Matrix, V: QuadraticSpace):
    lhs = g.transpose() * V.gram * g
    lam = None
    for i in range(V.dim):
        for j in range(V.dim):
            if V.gram.rows[i][j]:
                lam = lhs.rows[i][j] / V.gram.rows[i][j]
                break
        if lam is not None:
            break
    if lam is None or lam.is_zero():
        raise NotSimilitude("could not extract a similitude factor")
    if lhs != V.gram.scale(lam):
        raise NotSimilitude("generator is not a similitude of the form")
    return lam


def _char_triple(g: Matrix, V: QuadraticSpace):
    fld = V.field
    n = V.dim
    lam = _similitude_factor(g, V)
    det = g.det()
    det_part = det / lam ** (n // 2)
    if det_part != fld.one and det_part != -fld.one:
        raise NotSimilitude("determinant is inconsistent with the similitude factor")
    lam_cls = square_class(lam)
    spin = None
    if lam_cls is SquareClass.SQUARE:
        c = sqrt(lam)
        normalized = g.scale(c.inverse())
        spin = spinor_norm(normalized, V)
    return {
        "similitude": lam_cls.value,
        "det_part": "+1" if det_part == fld.one else "-1",
        "spinor": None if spin is None else spin.value,
    }


def _span_bits(vectors: list[tuple[int, ...]], width: int) -> set[tuple[int, ...]]:
    span = {tuple([0] * width)}
    for v in vectors:
        new = {tuple((a + b) % 2 for a, b in zip(s, v)) for s in span}
        span |= new
    # iterate to closure (Z/2 span of the generators)
    changed = True
    while changed:
        changed = False
        for a in list(span):
            for b in list(span):
                c = tuple((x + y) % 2 for x, y in zip(a, b))
                if c not in span:
                    span.add(c)
                    changed = True
    return span


def classify_subgroup(
    gens: list[Matrix], V: QuadraticSpace, promise_contains_omega: bool
) -> SubgroupPlacement:
    """Label the group generated by similitude generators, assuming (or
    verifying) that it contains the commutator subgroup Omega(V).

    The three characters (similitude class, normalized determinant, spinor
    norm of the normalized orthogonal part) cut out the four chains; when the
    spinor norm of -I is nontrivial the spinor coordinate is only defined
    modulo it, which is exactly when POmega = PSO projectively, and the label
    logic quotients accordingly.  Character-image patterns matching none of
    the four chains are reported as OTHER with the raw images attached.
    """
    fld = V.field
    minus = Matrix.scalar(fld, -fld.one, V.dim)
    sp_minus = spinor_norm(minus, V)
    collapse = sp_minus is SquareClass.NONSQUARE
    triples = [_char_triple(g, V) for g in gens]

    omega_verified = bool(promise_contains_omega)
    if not promise_contains_omega:
        try:
            grp = closure(list(gens), _PROMISE_CAP)
        except CapExceeded:
            raise PromiseUnverifiable(
                "group too large to enumerate and no containment promise given"
            ) from None
        report = witt_decompose(V)
        target = group_order(V.dim, report.epsilon, fld.q, GroupFlavor.OMEGA)
        count = 0
        for m in grp.elements:
            if m.transpose() * V.gram * m != V.gram:
                continue
            if m.det() != fld.one:
                continue
            if spinor_norm(m, V) is SquareClass.SQUARE:
                count += 1
        omega_verified = count == target

    def bit_det(t):
        return 1 if t["det_part"] == "-1" else 0

    def bit_spin(t):
        return 1 if t["spinor"] == "nonsquare" else 0

    lam_present = any(t["similitude"] == "nonsquare" for t in triples)
    width = 1 if collapse else 2

    def evid(t):
        return (bit_det(t),) if collapse else (bit_det(t), bit_spin(t))

    evidence = [evid(t) for t in triples if t["similitude"] == "square"]
    if lam_present:
        # products of two nonsquare-similitude generators land back in the
        # square-similitude part; harvest their characters as evidence
        nsq = [g for g, t in zip(gens, triples) if t["similitude"] == "nonsquare"]
        for i in range(len(nsq)):
            for j in range(i, len(nsq)):
                t = _char_triple(nsq[i] * nsq[j], V)
                evidence.append(evid(t))
    span = _span_bits(evidence, width)
    full = 1 << width

    label = "OTHER"
    if not omega_verified:
        label = "OTHER"
    elif not lam_present:
        if len(span) == 1:
            label = "P_OMEGA"
        elif not collapse and span == {(0, 0), (0, 1)}:
            label = "PSO"
        elif len(span) == full:
            label = "PO"
    else:
        if len(span) == full:
            label = "PGO"
    return SubgroupPlacement(
        label=label,
        char_images=tuple(triples),
        spinor_minus_trivial=not collapse,
        omega_verified=omega_verified,
    )
