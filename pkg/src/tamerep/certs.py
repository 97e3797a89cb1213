"""Certificate construction and verification.

A certificate records the full analysis of one (n, p, t, sign, ell) tuple:
the representation matrices in coefficient-vector form, the invariant Gram,
its kind and type data, the image-group analysis, the hypothesis audit, and a
list of named boolean checks.  Every derivable field is recomputed by the
verifier from params alone, so a certificate is tamper-evident.

Alternating Grams carry no orthogonal type; S-type certificates fill
witt_index/epsilon with the symplectic convention (n/2, "+").
"""

from __future__ import annotations

import json
import os
import tempfile

from .arith import audit_adz, example21_check
from .chars import CharType, TameCharacter, classify_type, failed_type_condition
from .errors import BadType, CertificateFormatError
from .groups import gamma_d, is_metacyclic_tn, normal_subgroups
from .induce import (
    FormKind,
    build_residual_rep,
    commutant_dim,
    expected_image_order,
    form_kind,
    image_group,
    invariant_forms,
)
from .linalg import Matrix
from .ortho import QuadraticSpace, witt_decompose

SCHEMA_VERSION = "1"

_TOP_LEVEL_KEYS = {
    "schema_version",
    "params",
    "modulus",
    "matrices",
    "gram",
    "form_kind",
    "witt_index",
    "epsilon",
    "image_order",
    "metacyclic",
    "gamma_d_table",
    "adz_audit",
    "checks",
}


def matrix_to_json(m: Matrix) -> list:
    return m.to_coeff_lists()


def json_to_matrix(field, data) -> Matrix:
    # entries are digit vectors (low degree first) or bare ints for constants
    return Matrix(field, [[field.element(entry) for entry in row] for row in data])


def build_certificate(n: int, p: int, t: int, sign: int, ell: int) -> dict:
    chi = TameCharacter(n, p, t, sign)
    ctype = classify_type(chi)
    if ctype is CharType.NEITHER:
        raise BadType(failed_type_condition(chi) or "character fails the type conditions")
    rep = build_residual_rep(chi, ell)
    forms = invariant_forms(rep)
    kind = form_kind(forms[0]) if len(forms) == 1 else FormKind.NEITHER
    cdim = commutant_dim(rep)
    expected = expected_image_order(rep)
    img = image_group(rep, cap=2 * expected)
    meta, _witness = is_metacyclic_tn(img, t, n)
    normals = normal_subgroups(img)
    d_values = sorted({1, 2, 4, 8, n * t})
    gamma_table = [
        {"d": d, "subgroup_order": gamma_d(img, d, normals).order} for d in d_values
    ]
    if kind is FormKind.SYMMETRIC:
        report = witt_decompose(QuadraticSpace(rep.field, forms[0]))
        witt, eps = report.witt_index, report.epsilon
    else:
        witt, eps = n // 2, "+"
    gram_ok = all(
        M.transpose() * forms[0] * M == forms[0] for M in (rep.Phi, rep.Sigma)
    )
    tame_ok = rep.Phi * rep.Sigma * rep.Phi.inverse() == rep.Sigma**p
    ident = Matrix.identity(rep.field, n)
    sign_elem = rep.field.one if sign == 1 else -rep.field.one
    checks = [
        {"name": "example21_arithmetic", "pass": example21_check(n, p, t)},
        {"name": "tame_relation", "pass": tame_ok},
        {"name": "sigma_order_is_t", "pass": rep.Sigma**t == ident and rep.Sigma != ident},
        {"name": "phi_power_is_sign", "pass": rep.Phi**n == Matrix.scalar(rep.field, sign_elem, n)},
        {"name": "invariant_form_unique", "pass": len(forms) == 1},
        {
            "name": "form_kind_matches_type",
            "pass": kind is (FormKind.SYMMETRIC if ctype is CharType.O_TYPE else FormKind.ALTERNATING),
        },
        {"name": "generators_preserve_gram", "pass": gram_ok},
        {"name": "commutant_is_scalars", "pass": cdim == 1},
        {"name": "image_order_expected", "pass": img.order == expected},
        {"name": "image_metacyclic", "pass": meta},
    ]
    return {
        "schema_version": SCHEMA_VERSION,
        "params": {"n": n, "p": p, "t": t, "ell": ell, "k": rep.k, "sign": sign},
        "modulus": list(rep.field.modulus),
        "matrices": {
            "phi": matrix_to_json(rep.Phi),
            "sigma": matrix_to_json(rep.Sigma),
        },
        "gram": matrix_to_json(forms[0]),
        "form_kind": kind.value,
        "witt_index": witt,
        "epsilon": eps,
        "image_order": img.order,
        "metacyclic": meta,
        "gamma_d_table": gamma_table,
        "adz_audit": audit_adz(n, ell, p, t),
        "checks": checks,
    }


def canonical_dump(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def atomic_write(path: str, text: str) -> None:
    d = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".tmp-cert-")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def check_schema(doc) -> dict:
    """Structural validation; raises CertificateFormatError on any problem."""
    if not isinstance(doc, dict):
        raise CertificateFormatError("certificate must be a JSON object")
    if doc.get("schema_version") != SCHEMA_VERSION:
        raise CertificateFormatError(
            f"unknown schema_version {doc.get('schema_version')!r}"
        )
    unknown = set(doc) - _TOP_LEVEL_KEYS
    if unknown:
        raise CertificateFormatError(f"unknown fields: {sorted(unknown)}")
    missing = _TOP_LEVEL_KEYS - set(doc)
    if missing:
        raise CertificateFormatError(f"missing fields: {sorted(missing)}")
    params = doc["params"]
    if not isinstance(params, dict) or set(params) != {"n", "p", "t", "ell", "k", "sign"}:
        raise CertificateFormatError("params must contain exactly n, p, t, ell, k, sign")
    for key, val in params.items():
        if not isinstance(val, int):
            raise CertificateFormatError(f"params.{key} must be an integer")
    return params


def verify_certificate(doc: dict) -> list[str]:
    """Recompute every derivable field; return a list of mismatch descriptions."""
    params = check_schema(doc)
    try:
        fresh = build_certificate(
            params["n"], params["p"], params["t"], params["sign"], params["ell"]
        )
    except Exception as exc:  # parameters that cannot rebuild a certificate
        return [f"recomputation failed: {exc}"]
    diffs = []
    for key in sorted(_TOP_LEVEL_KEYS):
        if doc[key] != fresh[key]:
            diffs.append(
                f"{key}: certificate has {json.dumps(doc[key], sort_keys=True)[:120]}, "
                f"recomputed {json.dumps(fresh[key], sort_keys=True)[:120]}"
            )
    return diffs
