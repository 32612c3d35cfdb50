"""Finite simplicial sets stored by their nondegenerate simplices.

Every simplex, degenerate or not, is addressed by its Eilenberg-Zilber normal
form ``SimplexRef(op, target)``: a surjection ``op: [m] ->> [d]`` applied to
the nondegenerate ``d``-simplex ``target``. Faces of a nondegenerate
``n``-simplex are stored as normal forms of dimension ``n - 1``; all other
simplicial operators are derived from them.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Mapping, NamedTuple, Sequence

from . import delta
from .delta import Values, collapse, compose_values, ez, identity, section, surjections


class SimplexRef(NamedTuple):
    op: Values  # surjection [m] ->> [d]
    target: str

    @property
    def dim(self) -> int:
        return len(self.op) - 1

    def is_nondegenerate(self) -> bool:
        return delta.is_identity(self.op)

    def __str__(self) -> str:
        return ref_name(self)


def nondeg(x: str, d: int) -> SimplexRef:
    return SimplexRef(identity(d), x)


def op_name(values: Values) -> str:
    if all(v < 10 for v in values):
        return "".join(map(str, values))
    return ".".join(map(str, values))


def ref_name(ref: SimplexRef) -> str:
    if delta.is_identity(ref.op):
        return ref.target
    return f"{ref.target}^{op_name(ref.op)}"


class SSetError(ValueError):
    pass


class FinSSet:
    """A finite simplicial set.

    ``simplices`` maps a dimension to the identifiers of its nondegenerate
    simplices; ``faces`` maps each identifier of dimension ``n >= 1`` to its
    ``n + 1`` faces ``d_0, ..., d_n``. Instances are treated as immutable.
    """

    def __init__(
        self,
        simplices: Mapping[int, Sequence[str]],
        faces: Mapping[str, Sequence[SimplexRef]] | None = None,
    ) -> None:
        faces = faces or {}
        self._cells: dict[int, tuple[str, ...]] = {}
        self._dim_of: dict[str, int] = {}
        for n in sorted(simplices):
            ids = tuple(simplices[n])
            if not ids:
                continue
            if n < 0:
                raise SSetError(f"negative dimension {n}")
            self._cells[n] = ids
            for x in ids:
                if x in self._dim_of:
                    raise SSetError(f"duplicate simplex id {x!r}")
                self._dim_of[x] = n
        self.faces: dict[str, tuple[SimplexRef, ...]] = {}
        for x, n in self._dim_of.items():
            fs = tuple(SimplexRef(tuple(f[0]), f[1]) for f in faces.get(x, ()))
            if n == 0 and fs:
                raise SSetError(f"vertex {x!r} cannot have faces")
            self.faces[x] = fs
        self._act_memo: dict = {}
        self._restrict_memo: dict = {}
        self._simplices_memo: dict[int, tuple[SimplexRef, ...]] = {}
        self._index_memo: dict = {}

    # -- basic queries --------------------------------------------------------

    @property
    def dim(self) -> int:
        return max(self._cells, default=-1)

    def cells(self, n: int) -> tuple[str, ...]:
        return self._cells.get(n, ())

    def ids(self) -> list[str]:
        return [x for n in sorted(self._cells) for x in self._cells[n]]

    def dim_of(self, x: str) -> int:
        return self._dim_of[x]

    def __contains__(self, x: object) -> bool:
        return x in self._dim_of

    def __len__(self) -> int:
        return len(self._dim_of)

    def counts(self) -> tuple[int, ...]:
        return tuple(len(self.cells(n)) for n in range(self.dim + 1))

    def ref(self, x: str) -> SimplexRef:
        return nondeg(x, self._dim_of[x])

    def is_empty(self) -> bool:
        return not self._dim_of

    def __repr__(self) -> str:
        return f"FinSSet(counts={self.counts()})"

    def same_as(self, other: FinSSet) -> bool:
        return self._cells == other._cells and self.faces == other.faces

    # -- simplicial operators -------------------------------------------------

    def act(self, theta: Values, ref: SimplexRef) -> SimplexRef:
        """Normal form of ``theta^* ref`` for a monotone ``theta: [k] -> [dim ref]``."""
        key = (theta, ref)
        hit = self._act_memo.get(key)
        if hit is not None:
            return hit
        surj, inj = ez(compose_values(ref.op, theta))
        s2, y = self._restrict(ref.target, inj)
        out = SimplexRef(compose_values(s2, surj), y)
        self._act_memo[key] = out
        return out

    def _restrict(self, x: str, inj: Values) -> SimplexRef:
        d = self._dim_of[x]
        if len(inj) == d + 1:
            return nondeg(x, d)
        key = (x, inj)
        hit = self._restrict_memo.get(key)
        if hit is not None:
            return hit
        present = set(inj)
        i = max(j for j in range(d + 1) if j not in present)
        inj2 = tuple(v if v < i else v - 1 for v in inj)
        out = self.act(inj2, self.faces[x][i])
        self._restrict_memo[key] = out
        return out

    def face(self, ref: SimplexRef, i: int) -> SimplexRef:
        return self.act(delta.face(i, ref.dim), ref)

    def degen(self, ref: SimplexRef, i: int) -> SimplexRef:
        return self.act(delta.degeneracy(i, ref.dim), ref)

    def vertices(self, ref: SimplexRef) -> tuple[str, ...]:
        return tuple(self.act((j,), ref).target for j in range(ref.dim + 1))

    def simplices(self, m: int) -> tuple[SimplexRef, ...]:
        """All ``m``-simplices, degenerate ones included, as normal forms."""
        hit = self._simplices_memo.get(m)
        if hit is None:
            hit = tuple(
                SimplexRef(s, x)
                for d in range(min(m, self.dim) + 1)
                for x in self.cells(d)
                for s in surjections(m, d)
            )
            self._simplices_memo[m] = hit
        return hit

    def by_faces(self, m: int, nondeg_only: bool = False) -> dict[tuple, list[SimplexRef]]:
        """Index of the ``m``-simplices by their tuple of faces."""
        key = (m, nondeg_only)
        hit = self._index_memo.get(key)
        if hit is None:
            hit = defaultdict(list)
            pool = (
                [self.ref(x) for x in self.cells(m)] if nondeg_only else self.simplices(m)
            )
            for s in pool:
                fs = () if m == 0 else tuple(self.face(s, i) for i in range(m + 1))
                hit[fs].append(s)
            hit = dict(hit)
            self._index_memo[key] = hit
        return hit

    # -- checks ---------------------------------------------------------------

    def validate(self) -> list[str]:
        """Every violated invariant, as human-readable lines (empty if valid)."""
        problems: list[str] = []
        for x, n in self._dim_of.items():
            fs = self.faces[x]
            if n == 0:
                continue
            if len(fs) != n + 1:
                problems.append(f"{x}: expected {n + 1} faces, got {len(fs)}")
                continue
            ok = True
            for i, f in enumerate(fs):
                if f.target not in self._dim_of:
                    problems.append(f"{x}: face {i} targets unknown simplex {f.target!r}")
                    ok = False
                    continue
                d = self._dim_of[f.target]
                if len(f.op) != n or sorted(set(f.op)) != list(range(d + 1)) or any(
                    a > b for a, b in zip(f.op, f.op[1:])
                ):
                    problems.append(f"{x}: face {i} operator {f.op} is not a surjection [{n - 1}]->>[{d}]")
                    ok = False
            if not ok:
                continue
        if problems:
            return problems
        for x, n in self._dim_of.items():
            if n < 2:
                continue
            fs = self.faces[x]
            for j in range(n + 1):
                for i in range(j):
                    lhs = self.act(delta.face(i, n - 1), fs[j])
                    rhs = self.act(delta.face(j - 1, n - 1), fs[i])
                    if lhs != rhs:
                        problems.append(
                            f"{x}: d{i} d{j} = {ref_name(lhs)} but d{j - 1} d{i} = {ref_name(rhs)} at (i,j)=({i},{j})"
                        )
        return problems

    def is_valid(self) -> bool:
        return not self.validate()

    # -- derived complexes ----------------------------------------------------

    def closure(self, ids: Iterable[str]) -> set[str]:
        out: set[str] = set()
        stack = list(ids)
        while stack:
            x = stack.pop()
            if x in out:
                continue
            out.add(x)
            stack.extend(f.target for f in self.faces[x])
        return out

    def subcomplex(self, ids: Iterable[str]) -> tuple[FinSSet, SimpMap]:
        """The subcomplex generated by ``ids`` and its inclusion."""
        keep = self.closure(ids)
        sub = FinSSet(
            {n: [x for x in self.cells(n) if x in keep] for n in self._cells},
            {x: self.faces[x] for x in keep},
        )
        return sub, SimpMap(sub, self, {x: sub.ref(x) for x in sub.ids()})


EMPTY = FinSSet({})


class SimpMap:
    """A simplicial map, given on nondegenerate simplices of the domain."""

    def __init__(self, domain: FinSSet, codomain: FinSSet, assign: Mapping[str, SimplexRef]) -> None:
        self.domain = domain
        self.codomain = codomain
        self.assign = {x: SimplexRef(tuple(r[0]), r[1]) for x, r in assign.items()}

    def __call__(self, ref: SimplexRef) -> SimplexRef:
        return self.codomain.act(ref.op, self.assign[ref.target])

    def __repr__(self) -> str:
        return f"SimpMap({self.domain!r} -> {self.codomain!r})"

    def validate(self) -> list[str]:
        problems = []
        for x in self.domain.ids():
            if x not in self.assign:
                problems.append(f"{x}: unassigned")
        if problems:
            return problems
        for x in self.domain.ids():
            img = self.assign[x]
            n = self.domain.dim_of(x)
            if img.dim != n:
                problems.append(f"{x}: image {ref_name(img)} has dimension {img.dim}, expected {n}")
                continue
            if img.target not in self.codomain:
                problems.append(f"{x}: image targets unknown simplex {img.target!r}")
                continue
            for i, f in enumerate(self.domain.faces[x]):
                if self(f) != self.codomain.face(img, i):
                    problems.append(f"{x}: f(d{i} x) != d{i} f(x)")
        return problems

    def is_valid(self) -> bool:
        return not self.validate()

    def same_as(self, other: SimpMap) -> bool:
        return self.assign == other.assign

    def is_inclusion(self) -> bool:
        targets = [r.target for r in self.assign.values()]
        return all(r.is_nondegenerate() for r in self.assign.values()) and len(set(targets)) == len(targets)

    def is_isomorphism(self) -> bool:
        return self.is_inclusion() and len(self.assign) == len(self.codomain)

    def image_ids(self) -> set[str]:
        return {r.target for r in self.assign.values() if r.is_nondegenerate()}

    def inverse(self) -> SimpMap:
        if not self.is_isomorphism():
            raise SSetError("map is not an isomorphism")
        return SimpMap(
            self.codomain, self.domain, {r.target: self.domain.ref(x) for x, r in self.assign.items()}
        )

    @classmethod
    def identity(cls, X: FinSSet) -> SimpMap:
        return cls(X, X, {x: X.ref(x) for x in X.ids()})


def compose(g: SimpMap, f: SimpMap) -> SimpMap:
    """``g ∘ f``."""
    if f.codomain is not g.domain and not f.codomain.same_as(g.domain):
        raise SSetError("maps are not composable")
    return SimpMap(f.domain, g.codomain, {x: g(r) for x, r in f.assign.items()})


def apply_map(f: SimpMap, s: SimplexRef) -> SimplexRef:
    if s.target not in f.assign:
        raise SSetError(f"simplex {s.target!r} is not in the domain")
    return f(s)


def enumerate_simplices(X: FinSSet, m: int) -> tuple[SimplexRef, ...]:
    return X.simplices(m)


def to_point(X: FinSSet) -> SimpMap:
    pt = simplex(0)
    return SimpMap(X, pt, {x: SimplexRef((0,) * (X.dim_of(x) + 1), "0") for x in X.ids()})


def constant_map(X: FinSSet, Y: FinSSet, v: str) -> SimpMap:
    return SimpMap(X, Y, {x: SimplexRef((0,) * (X.dim_of(x) + 1), v) for x in X.ids()})


# -- standard complexes -------------------------------------------------------


def vertex_set_id(vs: Sequence[int]) -> str:
    return op_name(tuple(vs))


def _subsets_complex(n: int, keep: Callable[[tuple[int, ...]], bool]) -> FinSSet:
    from itertools import combinations

    simplices: dict[int, list[str]] = {}
    faces: dict[str, list[SimplexRef]] = {}
    for m in range(n + 1):
        for vs in combinations(range(n + 1), m + 1):
            if not keep(vs):
                continue
            x = vertex_set_id(vs)
            simplices.setdefault(m, []).append(x)
            if m:
                faces[x] = [nondeg(vertex_set_id(vs[:i] + vs[i + 1 :]), m - 1) for i in range(m + 1)]
    return FinSSet(simplices, faces)


def simplex(n: int) -> FinSSet:
    """Δ[n]; ``simplex(-1)`` is empty."""
    return _subsets_complex(n, lambda vs: True)


def boundary(n: int) -> FinSSet:
    return _subsets_complex(n, lambda vs: len(vs) < n + 1)


def horn(n: int, k: int) -> FinSSet:
    if not 0 <= k <= n:
        raise SSetError(f"horn vertex k={k} out of range for n={n}")
    # nondegenerate simplices of Λ^k[n]: proper faces other than the one opposite k
    return _subsets_complex(n, lambda vs: len(vs) < n + 1 and not (len(vs) == n and k not in vs))


def standard_complex(kind: str, n: int, k: int | None = None) -> FinSSet:
    if n < 0:
        raise SSetError("n must be >= 0")
    if kind == "simplex":
        return simplex(n)
    if kind == "boundary":
        return boundary(n)
    if kind == "horn":
        if k is None:
            raise SSetError("horn needs a vertex k")
        return horn(n, k)
    raise SSetError(f"unknown standard complex kind {kind!r}")


def delta_ref(seq: Sequence[int]) -> SimplexRef:
    """The simplex of Δ[n] with the given nondecreasing vertex sequence."""
    surj, inj = ez(tuple(seq))
    return SimplexRef(surj, vertex_set_id(inj))


def standard_inclusion(sub: FinSSet, n: int) -> SimpMap:
    """Inclusion of a subcomplex of Δ[n] built by the constructors above."""
    return SimpMap(sub, simplex(n), {x: sub.ref(x) for x in sub.ids()})


def simplex_map(values: Sequence[int], n: int) -> SimpMap:
    """The map Δ[m] -> Δ[n] induced by a monotone ``values: [m] -> [n]``."""
    values = tuple(values)
    m = len(values) - 1
    src = simplex(m)
    dst = simplex(n)
    assign = {}
    for x in src.ids():
        vs = src.vertices(src.ref(x))
        assign[x] = delta_ref([values[int(v)] for v in vs])
    return SimpMap(src, dst, assign)


def vertex_inclusion(n: int, v: int) -> SimpMap:
    return simplex_map((v,), n)


# -- search ---------------------------------------------------------------------


def closure_order(X: FinSSet) -> list[str]:
    """Nondegenerate simplices ordered so each comes right after its faces."""
    seen: set[str] = set()
    order: list[str] = []
    for n in range(X.dim, -1, -1):
        for top in X.cells(n):
            stack = [(top, False)]
            while stack:
                x, expanded = stack.pop()
                if x in seen:
                    continue
                if expanded:
                    seen.add(x)
                    order.append(x)
                    continue
                stack.append((x, True))
                for f in reversed(X.faces[x]):
                    if f.target not in seen:
                        stack.append((f.target, False))
    return order


def search_maps(
    A: FinSSet,
    B: FinSSet,
    fixed: Mapping[str, SimplexRef] | None = None,
    accept: Callable[[str, SimplexRef], bool] | None = None,
    injective: bool = False,
) -> Iterator[dict[str, SimplexRef]]:
    """Backtracking enumeration of simplicial maps ``A -> B``.

    ``fixed`` must be closed under faces. ``accept(x, c)`` filters candidate
    images ``c`` of the nondegenerate simplex ``x``. With ``injective`` the
    images are restricted to distinct nondegenerate simplices.
    """
    assign: dict[str, SimplexRef] = dict(fixed or {})
    for x in assign:
        for i, f in enumerate(A.faces[x]):
            if f.target not in assign:
                raise SSetError(f"fixed part is not closed under faces at {x!r}")
            if B.act(f.op, assign[f.target]) != B.face(assign[x], i):
                return
    used: set[str] = {r.target for r in assign.values()} if injective else set()
    todo = [x for x in closure_order(A) if x not in assign]

    def candidates(x: str) -> list[SimplexRef]:
        n = A.dim_of(x)
        if n == 0:
            req: tuple = ()
        else:
            req = tuple(B.act(f.op, assign[f.target]) for f in A.faces[x])
        pool = B.by_faces(n, nondeg_only=injective).get(req, ())
        out = []
        for c in pool:
            if injective and c.target in used:
                continue
            if accept is not None and not accept(x, c):
                continue
            out.append(c)
        return out

    if not todo:
        yield dict(assign)
        return
    iters = [iter(candidates(todo[0]))]
    while iters:
        i = len(iters) - 1
        x = todo[i]
        prev = assign.pop(x, None)
        if prev is not None and injective:
            used.discard(prev.target)
        c = next(iters[-1], None)
        if c is None:
            iters.pop()
            continue
        assign[x] = c
        if injective:
            used.add(c.target)
        if i + 1 == len(todo):
            yield dict(assign)
            continue
        iters.append(iter(candidates(todo[i + 1])))


def enumerate_maps(A: FinSSet, B: FinSSet) -> list[SimpMap]:
    return [SimpMap(A, B, a) for a in search_maps(A, B)]


def count_maps(A: FinSSet, B: FinSSet, fixed=None, accept=None) -> int:
    return sum(1 for _ in search_maps(A, B, fixed, accept))


def _signature(X: FinSSet) -> dict[str, tuple]:
    cof: dict[str, list[int]] = {x: [0] * (X.dim + 2) for x in X.ids()}
    for y in X.ids():
        for f in X.faces[y]:
            cof[f.target][X.dim_of(y)] += 1
    sig = {}
    for x in X.ids():
        degen_faces = sum(1 for f in X.faces[x] if not f.is_nondegenerate())
        sig[x] = (X.dim_of(x), tuple(cof[x]), degen_faces)
    return sig


def find_isomorphism(
    A: FinSSet, B: FinSSet, accept: Callable[[str, SimplexRef], bool] | None = None
) -> SimpMap | None:
    """An isomorphism ``A -> B`` found by backtracking, or ``None``."""
    if A.counts() != B.counts():
        return None
    sa, sb = _signature(A), _signature(B)
    if sorted(sa.values()) != sorted(sb.values()):
        return None

    def ok(x: str, c: SimplexRef) -> bool:
        return sa[x] == sb[c.target] and (accept is None or accept(x, c))

    for a in search_maps(A, B, accept=ok, injective=True):
        return SimpMap(A, B, a)
    return None


def find_arrow_isomorphism(i1: SimpMap, i2: SimpMap) -> SimpMap | None:
    """An isomorphism of codomains carrying the image of ``i1`` onto that of ``i2``.

    Both maps must be inclusions; the returned map restricts to an
    isomorphism of the domains.
    """
    if not (i1.is_inclusion() and i2.is_inclusion()):
        raise SSetError("arrow isomorphism search needs inclusions")
    im1, im2 = i1.image_ids(), i2.image_ids()
    if len(im1) != len(im2):
        return None
    return find_isomorphism(
        i1.codomain, i2.codomain, accept=lambda x, c: (x in im1) == (c.target in im2)
    )


# -- limits and colimits ---------------------------------------------------------


def joint_normal_form(a: SimplexRef, b: SimplexRef) -> tuple[Values, SimplexRef, SimplexRef]:
    """Split a pair of ``m``-simplices into common degeneracy and a jointly nondegenerate pair."""
    sa, sb = a.op, b.op
    m = len(sa) - 1
    cut = [i for i in range(m) if sa[i] == sa[i + 1] and sb[i] == sb[i + 1]]
    u = collapse(m, cut)
    sec = section(u)
    return (
        u,
        SimplexRef(compose_values(sa, sec), a.target),
        SimplexRef(compose_values(sb, sec), b.target),
    )


def pair_id(a: SimplexRef, b: SimplexRef) -> str:
    return f"({ref_name(a)},{ref_name(b)})"


def _jointly_nondegenerate(s: Values, t: Values) -> bool:
    return not any(s[i] == s[i + 1] and t[i] == t[i + 1] for i in range(len(s) - 1))


@dataclass
class Product:
    """``A × B`` (or a pullback inside it) with its projections."""

    space: FinSSet
    pr1: SimpMap
    pr2: SimpMap

    def pair(self, a: SimplexRef, b: SimplexRef) -> SimplexRef:
        u, a2, b2 = joint_normal_form(a, b)
        x = pair_id(a2, b2)
        if x not in self.space:
            raise SSetError(f"pair {x} is not a simplex here")
        return SimplexRef(u, x)

    def lift(self, f: SimpMap, g: SimpMap) -> SimpMap:
        """The map ``T -> space`` with components ``f: T -> A`` and ``g: T -> B``."""
        return SimpMap(f.domain, self.space, {x: self.pair(f.assign[x], g.assign[x]) for x in f.domain.ids()})


def _product_like(
    A: FinSSet, B: FinSSet, keep: Callable[[SimplexRef, SimplexRef], bool] | None
) -> Product:
    simplices: dict[int, list[str]] = defaultdict(list)
    cells: dict[str, tuple[SimplexRef, SimplexRef]] = {}
    for p in range(A.dim + 1):
        for q in range(B.dim + 1):
            for m in range(max(p, q), p + q + 1):
                for s in surjections(m, p):
                    for t in surjections(m, q):
                        if not _jointly_nondegenerate(s, t):
                            continue
                        for x in A.cells(p):
                            a = SimplexRef(s, x)
                            for y in B.cells(q):
                                b = SimplexRef(t, y)
                                if keep is not None and not keep(a, b):
                                    continue
                                z = pair_id(a, b)
                                simplices[m].append(z)
                                cells[z] = (a, b)
    faces = {}
    for z, (a, b) in cells.items():
        m = a.dim
        if m == 0:
            continue
        fs = []
        for i in range(m + 1):
            u, a2, b2 = joint_normal_form(A.face(a, i), B.face(b, i))
            fs.append(SimplexRef(u, pair_id(a2, b2)))
        faces[z] = fs
    space = FinSSet({m: sorted(v) for m, v in simplices.items()}, faces)
    pr1 = SimpMap(space, A, {z: cells[z][0] for z in cells})
    pr2 = SimpMap(space, B, {z: cells[z][1] for z in cells})
    return Product(space, pr1, pr2)


def product(A: FinSSet, B: FinSSet) -> Product:
    return _product_like(A, B, None)


def pullback(p: SimpMap, q: SimpMap) -> Product:
    """``X ×_Y Z`` for ``p: X -> Y`` and ``q: Z -> Y``."""
    if p.codomain is not q.codomain and not p.codomain.same_as(q.codomain):
        raise SSetError("pullback legs must share a codomain")
    return _product_like(p.domain, q.domain, lambda a, b: p(a) == q(b))


def product_map(f: SimpMap, g: SimpMap, source: Product, target: Product) -> SimpMap:
    """``f × g`` between given products."""
    return target.lift(compose(f, source.pr1), compose(g, source.pr2))


@dataclass
class Pushout:
    """``X ⊔_A B`` along an inclusion ``A -> B``, with legs from ``X`` and ``B``."""

    space: FinSSet
    leg_x: SimpMap
    leg_b: SimpMap

    def induced(self, g: SimpMap, h: SimpMap) -> SimpMap:
        """The map out of the pushout restricting to ``g`` on ``X`` and ``h`` on ``B``."""
        assign: dict[str, SimplexRef] = {}
        for x, r in self.leg_x.assign.items():
            assign[r.target] = g.assign[x]
        for b, r in self.leg_b.assign.items():
            if r.is_nondegenerate() and r.target not in assign:
                assign[r.target] = h.assign[b]
        return SimpMap(self.space, g.codomain, assign)


def pushout(i: SimpMap, f: SimpMap) -> Pushout:
    """Pushout of ``f: A -> X`` along the inclusion ``i: A -> B``."""
    if not i.is_inclusion():
        raise SSetError("pushout is only supported along inclusions")
    if i.domain is not f.domain and not i.domain.same_as(f.domain):
        raise SSetError("pushout legs must share a domain")
    B, X = i.codomain, f.codomain
    back = {r.target: a for a, r in i.assign.items()}
    fresh = [b for b in B.ids() if b not in back]
    rename: dict[str, str] = {}
    taken = set(X.ids())
    for b in fresh:
        name = b
        while name in taken:
            name += "'"
        taken.add(name)
        rename[b] = name

    def route(ref: SimplexRef) -> SimplexRef:
        if ref.target in back:
            return X.act(ref.op, f.assign[back[ref.target]])
        return SimplexRef(ref.op, rename[ref.target])

    simplices: dict[int, list[str]] = defaultdict(list)
    faces: dict[str, tuple[SimplexRef, ...]] = {}
    for n in range(max(X.dim, B.dim) + 1):
        simplices[n].extend(X.cells(n))
        for b in B.cells(n):
            if b in rename:
                simplices[n].append(rename[b])
    for x in X.ids():
        faces[x] = X.faces[x]
    for b in fresh:
        faces[rename[b]] = tuple(route(r) for r in B.faces[b])
    P = FinSSet(simplices, faces)
    leg_x = SimpMap(X, P, {x: P.ref(x) for x in X.ids()})
    leg_b = SimpMap(B, P, {b: route(B.ref(b)) for b in B.ids()})
    return Pushout(P, leg_x, leg_b)


def coproduct(parts: Sequence[tuple[str, FinSSet]]) -> tuple[FinSSet, list[SimpMap]]:
    """Disjoint union with ids ``tag/x``; returns the coproduct and its injections."""
    simplices: dict[int, list[str]] = defaultdict(list)
    faces: dict[str, list[SimplexRef]] = {}
    for tag, K in parts:
        for x in K.ids():
            simplices[K.dim_of(x)].append(f"{tag}/{x}")
            faces[f"{tag}/{x}"] = [SimplexRef(f.op, f"{tag}/{f.target}") for f in K.faces[x]]
    S = FinSSet(simplices, faces)
    legs = [SimpMap(K, S, {x: S.ref(f"{tag}/{x}") for x in K.ids()}) for tag, K in parts]
    return S, legs


def is_injective_on_simplices(f: SimpMap) -> bool:
    """Levelwise injectivity, checked on every dimension up to ``dim domain``."""
    for m in range(f.domain.dim + 1):
        images = [f(s) for s in f.domain.simplices(m)]
        if len(set(images)) != len(images):
            return False
    return True


def fiber_over_vertex(p: SimpMap, v: str) -> tuple[FinSSet, SimpMap]:
    """``p^{-1}(v)`` as a subcomplex of the domain."""
    keep = [x for x in p.domain.ids() if p.assign[x].target == v]
    return p.domain.subcomplex(keep)
