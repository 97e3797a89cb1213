"""Residual induced representations as explicit matrices over F_{l^k}.

The image of Frobenius is the monomial n-cycle Phi (wrap-around entry equal to
the character's uniformizer sign); a tame inertia generator maps to the
diagonal Sigma with entries zeta^(p^i) for a fixed element zeta of exact order
t.  The pair satisfies Phi Sigma Phi^-1 = Sigma^p, which is asserted on every
build.  Invariant bilinear forms and the commutant are computed as nullspaces
of the corresponding linear systems in n^2 unknowns.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .arith import mult_order_mod
from .chars import CharType, TameCharacter, classify_type
from .errors import BadResidueChar, BadType
from .ff import FieldDescriptor, find_generator, make_field
from .groups import GroupHandle, closure
from .linalg import Matrix, nullspace


class FormKind(enum.Enum):
    SYMMETRIC = "symmetric"
    ALTERNATING = "alternating"
    NEITHER = "neither"


@dataclass(frozen=True)
class ResidualRep:
    chi: TameCharacter
    ell: int
    k: int
    field: FieldDescriptor
    Phi: Matrix
    Sigma: Matrix

    @property
    def n(self) -> int:
        return self.chi.n


def _zeta_of_order(field: FieldDescriptor, t: int):
    """g^((q-1)/t) for the deterministic generator g; exact order t."""
    if t in field._zeta_cache:
        return field._zeta_cache[t]
    g = find_generator(field)
    zeta = g ** ((field.q - 1) // t)
    field._zeta_cache[t] = zeta
    return zeta


def build_residual_rep(
    chi: TameCharacter, ell: int, _unchecked: bool = False
) -> ResidualRep:
    """Matrices of the residual representation for chi at the residue prime ell.

    _unchecked skips the O/S-type gate; it exists only so tests can exhibit
    what the invariant-form solver does on non-self-dual input.
    """
    if ell % 2 == 0 or ell in (chi.p, chi.t):
        raise BadResidueChar(f"ell = {ell} must be odd and distinct from p and t")
    if not _unchecked and classify_type(chi) is CharType.NEITHER:
        raise BadType(f"{chi} is neither O-type nor S-type")
    n, p, t = chi.n, chi.p, chi.t
    k = mult_order_mod(ell, t) if t > 1 else 1
    field = make_field(ell, k)
    zeta = _zeta_of_order(field, t)
    base = chi.exponent_index % t
    diag = [zeta ** (base * pow(p, i, t) % t) for i in range(n)]
    Sigma = Matrix.diagonal(field, diag)
    zero, one = field.zero, field.one
    sign = one if chi.sign == 1 else -one
    rows = [[zero] * n for _ in range(n)]
    for col in range(1, n):
        rows[col - 1][col] = one
    rows[n - 1][0] = sign
    Phi = Matrix(field, rows)
    # tame relation and generator orders, asserted on every build
    lhs = Phi * Sigma * Phi.inverse()
    rhs = Sigma**p
    if lhs != rhs:
        raise AssertionError("tame relation Phi Sigma Phi^-1 = Sigma^p failed")
    if Sigma**t != Matrix.identity(field, n):
        raise AssertionError("Sigma does not have order dividing t")
    if Phi**n != Matrix.scalar(field, sign, n):
        raise AssertionError("Phi^n is not sign * identity")
    return ResidualRep(chi, ell, k, field, Phi, Sigma)


def _invariance_rows(M: Matrix):
    """Rows of the linear system (M^T G M - G) = 0 over vec(G), sparse."""
    n = M.nrows
    fld = M.field
    cols = {}
    for a in range(n):
        for i in range(n):
            if M.rows[a][i]:
                cols.setdefault(i, []).append((a, M.rows[a][i]))
    rows = []
    for i in range(n):
        for j in range(n):
            coeff: dict[int, object] = {}
            for a, mai in cols.get(i, ()):
                for b, mbj in cols.get(j, ()):
                    idx = a * n + b
                    v = mai * mbj
                    coeff[idx] = coeff[idx] + v if idx in coeff else v
            idx = i * n + j
            coeff[idx] = coeff[idx] - fld.one if idx in coeff else -fld.one
            rows.append(coeff)
    return rows


def _commutation_rows(M: Matrix):
    """Rows of (X M - M X) = 0 over vec(X)."""
    n = M.nrows
    rows = []
    for i in range(n):
        for j in range(n):
            coeff: dict[int, object] = {}
            for a in range(n):
                v = M.rows[a][j]
                if v:
                    idx = i * n + a
                    coeff[idx] = coeff[idx] + v if idx in coeff else v
                w = M.rows[i][a]
                if w:
                    idx = a * n + j
                    coeff[idx] = coeff[idx] - w if idx in coeff else -w
            rows.append({k: v for k, v in coeff.items() if v})
    return rows


def _sparse_nullspace(fld, sparse_rows, width):
    zero = fld.zero
    dense = []
    for coeff in sparse_rows:
        if not coeff:
            continue
        row = [zero] * width
        for idx, v in coeff.items():
            row[idx] = v
        dense.append(row)
    if not dense:
        return [tuple(fld.one if i == j else zero for i in range(width)) for j in range(width)]
    return nullspace(Matrix(fld, dense))


def invariant_forms(rep: ResidualRep) -> list[Matrix]:
    """Basis of bilinear forms G with M^T G M = G for both generators.

    Each basis Gram is scaled so its first nonzero entry (row-major) is 1.
    """
    return invariant_forms_of([rep.Phi, rep.Sigma])


def invariant_forms_of(gens: list[Matrix]) -> list[Matrix]:
    fld = gens[0].field
    n = gens[0].nrows
    rows = []
    for M in gens:
        rows.extend(_invariance_rows(M))
    basis = _sparse_nullspace(fld, rows, n * n)
    out = []
    for vec in basis:
        first = next(v for v in vec if v)
        inv = first.inverse()
        scaled = [inv * v if v else v for v in vec]
        out.append(Matrix(fld, [scaled[i * n : (i + 1) * n] for i in range(n)]))
    return out


def form_kind(G: Matrix) -> FormKind:
    if G.field.p == 2:
        raise BadResidueChar("form classification requires odd characteristic")
    Gt = G.transpose()
    if Gt == G:
        return FormKind.SYMMETRIC
    if Gt == -G and all(G.rows[i][i].is_zero() for i in range(G.nrows)):
        return FormKind.ALTERNATING
    return FormKind.NEITHER


def commutant_dim(rep: ResidualRep) -> int:
    """Dimension of the full commutant; 1 certifies absolute irreducibility."""
    return commutant_dim_of([rep.Phi, rep.Sigma])


def commutant_dim_of(gens: list[Matrix]) -> int:
    fld = gens[0].field
    n = gens[0].nrows
    rows = []
    for M in gens:
        rows.extend(_commutation_rows(M))
    return len(_sparse_nullspace(fld, rows, n * n))


def expected_image_order(rep: ResidualRep) -> int:
    base = rep.n * rep.chi.t
    return base if rep.chi.sign == 1 else 2 * base


def image_group(rep: ResidualRep, cap: int) -> GroupHandle:
    return closure([rep.Phi, rep.Sigma], cap)
