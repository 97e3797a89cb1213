"""Finite matrix-group engine for small orders: breadth-first closure,
normal subgroups, the intersection filter over bounded-index normals, and
metacyclic structure detection.

Everything here enumerates honestly; the groups this toolkit meets have order
n*t or 2*n*t (a few thousand at most), so no stabilizer-chain machinery is
needed.  Element lists are sorted by a canonical byte encoding, which makes
handles deterministic and comparable.
"""

from __future__ import annotations

from dataclasses import dataclass, field as _dcfield

from .arith import mult_order_mod
from .errors import BadInput, CapExceeded, SingularGenerator, TooLarge
from .linalg import Matrix

NORMAL_SUBGROUP_CAP = 10_000


@dataclass(frozen=True)
class GroupHandle:
    field: object
    n: int
    elements: tuple[Matrix, ...]
    gens: tuple[Matrix, ...]
    _byteset: frozenset = _dcfield(default=None, compare=False, repr=False)

    @property
    def order(self) -> int:
        return len(self.elements)

    def byteset(self) -> frozenset:
        if self._byteset is None:
            object.__setattr__(
                self, "_byteset", frozenset(m.canonical_bytes() for m in self.elements)
            )
        return self._byteset

    def __contains__(self, m: Matrix) -> bool:
        return m.canonical_bytes() in self.byteset()

    def identity(self) -> Matrix:
        return Matrix.identity(self.field, self.n)


def _sorted_elements(elems) -> tuple[Matrix, ...]:
    return tuple(sorted(elems, key=lambda m: m.canonical_bytes()))


def closure(gens: list[Matrix], cap: int) -> GroupHandle:
    """Product closure of the generators; raises CapExceeded past cap.

    The element set is generator-order independent; the stored list is sorted
    canonically.
    """
    if not gens:
        raise SingularGenerator("need at least one generator")
    fld = gens[0].field
    n = gens[0].nrows
    for g in gens:
        if g.nrows != n or g.ncols != n or g.field != fld:
            raise SingularGenerator("generators must be square over one field")
        if g.det().is_zero():
            raise SingularGenerator("singular generator")
    ident = Matrix.identity(fld, n)
    seen = {ident.canonical_bytes(): ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for m in frontier:
            for g in gens:
                prod = m * g
                key = prod.canonical_bytes()
                if key not in seen:
                    if len(seen) >= cap:
                        raise CapExceeded(f"closure exceeded cap {cap}")
                    seen[key] = prod
                    nxt.append(prod)
        frontier = nxt
    return GroupHandle(fld, n, _sorted_elements(seen.values()), tuple(gens))


def element_order(g: GroupHandle, m: Matrix) -> int:
    ident = g.identity()
    cur = m
    e = 1
    while cur != ident:
        cur = cur * m
        e += 1
        if e > g.order:
            raise AssertionError("element order exceeded group order")
    return e


def _subgroup_closure(g: GroupHandle, gens: list[Matrix]) -> dict[bytes, Matrix]:
    """Closure of the generators, keeping only generators that enlarge the
    running subgroup (a long redundant list, e.g. a conjugacy class, costs a
    membership test each rather than a BFS factor)."""
    ident = g.identity()
    seen = {ident.canonical_bytes(): ident}
    effective: list[Matrix] = []
    for cand in gens:
        if cand.canonical_bytes() in seen:
            continue
        effective.append(cand)
        frontier = list(seen.values())
        while frontier:
            nxt = []
            for m in frontier:
                for s in effective:
                    prod = m * s
                    key = prod.canonical_bytes()
                    if key not in seen:
                        seen[key] = prod
                        nxt.append(prod)
            frontier = nxt
    return seen


def _conjugacy_class(g: GroupHandle, seed: Matrix) -> list[Matrix]:
    inv_gens = [(h, h.inverse()) for h in g.gens]
    cls = {seed.canonical_bytes(): seed}
    frontier = [seed]
    while frontier:
        nxt = []
        for m in frontier:
            for h, hinv in inv_gens:
                conj = h * m * hinv
                key = conj.canonical_bytes()
                if key not in cls:
                    cls[key] = conj
                    nxt.append(conj)
        frontier = nxt
    return list(cls.values())


def _normal_closure(g: GroupHandle, seed: Matrix) -> dict[bytes, Matrix]:
    # the subgroup generated by a full conjugacy class is already normal
    return _subgroup_closure(g, _conjugacy_class(g, seed))


def _generating_subset(g_field, n, elems: list[Matrix]) -> tuple[Matrix, ...]:
    """Small deterministic generating set for a subgroup given its elements."""
    ident = Matrix.identity(g_field, n)
    target = {m.canonical_bytes() for m in elems}
    gens: list[Matrix] = []
    have = {ident.canonical_bytes()}
    for m in sorted(elems, key=lambda x: x.canonical_bytes()):
        if m.canonical_bytes() in have:
            continue
        gens.append(m)
        stub = GroupHandle(g_field, n, tuple(elems), tuple(gens))
        have = set(_subgroup_closure(stub, gens).keys())
        if have == target:
            break
    return tuple(gens) if gens else (ident,)


def normal_subgroups(g: GroupHandle) -> list[GroupHandle]:
    """All normal subgroups, as join-closure of single-element normal closures.

    Sorted by order, then canonical encoding; complete for enumerated groups.
    """
    if g.order > NORMAL_SUBGROUP_CAP:
        raise TooLarge(f"group of order {g.order} exceeds {NORMAL_SUBGROUP_CAP}")
    ident = g.identity()
    found: dict[frozenset, dict[bytes, Matrix]] = {}
    triv = {ident.canonical_bytes(): ident}
    found[frozenset(triv)] = triv
    # one normal closure per conjugacy class (conjugate seeds close identically)
    seen_cls: set[bytes] = set()
    for x in g.elements:
        if x.canonical_bytes() in seen_cls:
            continue
        cls = _conjugacy_class(g, x)
        seen_cls.update(m.canonical_bytes() for m in cls)
        nc = _normal_closure(g, x)
        found.setdefault(frozenset(nc.keys()), nc)
    # close under joins
    while True:
        items = list(found.values())
        added = False
        for i in range(len(items)):
            for j in range(i + 1, len(items)):
                a, b = items[i], items[j]
                if set(a) <= set(b) or set(b) <= set(a):
                    continue
                seed = list(a.values()) + list(b.values())
                join = _subgroup_closure(
                    GroupHandle(g.field, g.n, g.elements, tuple(seed)), seed
                )
                key = frozenset(join.keys())
                if key not in found:
                    found[key] = join
                    added = True
        if not added:
            break
    out = []
    for sub in found.values():
        elems = _sorted_elements(sub.values())
        out.append(
            GroupHandle(g.field, g.n, elems, _generating_subset(g.field, g.n, list(elems)))
        )
    out.sort(key=lambda h: (h.order, tuple(m.canonical_bytes() for m in h.elements)))
    return out


def gamma_d(g: GroupHandle, d: int, normals: list[GroupHandle] | None = None) -> GroupHandle:
    """Intersection of all normal subgroups of index at most d."""
    if d < 1:
        raise BadInput(f"d must be positive, got {d}")
    if normals is None:
        normals = normal_subgroups(g)
    acc = {m.canonical_bytes(): m for m in g.elements}
    for sub in normals:
        if g.order // sub.order <= d:
            keys = sub.byteset()
            acc = {k: v for k, v in acc.items() if k in keys}
    elems = _sorted_elements(acc.values())
    return GroupHandle(g.field, g.n, elems, _generating_subset(g.field, g.n, list(elems)))


def is_metacyclic_tn(g: GroupHandle, t: int, n: int):
    """Detect the metacyclic shape: normal cyclic C of order t, cyclic quotient
    of order |G|/t, and conjugation acting on C with multiplicative order n.

    Returns (bool, witness); the witness carries the two generators and the
    conjugation exponent.  Candidates are scanned generators-first, so the
    natural Frobenius generator is preferred when it qualifies.
    """
    if g.order > NORMAL_SUBGROUP_CAP:
        raise TooLarge(f"group of order {g.order} exceeds {NORMAL_SUBGROUP_CAP}")
    if g.order % t != 0:
        return False, None
    quot = g.order // t
    ident = g.identity()
    candidates = list(g.gens) + [m for m in g.elements if m not in g.gens]
    for x in candidates:
        if x == ident or element_order(g, x) != t:
            continue
        powers = [ident]
        cur = x
        while cur != ident:
            powers.append(cur)
            cur = cur * x
        cset = {m.canonical_bytes(): i for i, m in enumerate(powers)}
        # normality: conjugates of x by group generators stay in <x>
        if any(
            (h * x * h.inverse()).canonical_bytes() not in cset for h in g.gens
        ):
            continue
        for y in candidates:
            # coset order of y modulo C must be |G|/t
            cur = y
            e = 1
            while cur.canonical_bytes() not in cset:
                cur = cur * y
                e += 1
            if e != quot:
                continue
            conj = y * x * y.inverse()
            exp = cset.get(conj.canonical_bytes())
            if exp is None or exp == 0:
                continue
            if mult_order_mod(exp, t) == n:
                return True, {"c": x, "y": y, "exponent": exp}
    return False, None
