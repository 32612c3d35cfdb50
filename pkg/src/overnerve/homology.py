"""Integral homology of finite simplicial sets and the weak-equivalence oracle."""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Any

from .sset import FinSSet, Product, SimpMap, compose, constant_map, product, simplex


Matrix = list[list[int]]


@dataclass
class ChainComplex:
    """Normalized chains: ``boundaries[n]`` maps degree ``n`` to ``n - 1``.

    Rows of ``boundaries[n]`` are indexed by ``basis[n - 1]`` and columns by
    ``basis[n]``.
    """

    basis: dict[int, list[str]]
    boundaries: dict[int, Matrix]

    def check_square_zero(self) -> bool:
        for n in self.boundaries:
            if n - 1 in self.boundaries:
                if any(any(v for v in row) for row in matmul(self.boundaries[n - 1], self.boundaries[n])):
                    return False
        return True


def normalized_chains(X: FinSSet) -> ChainComplex:
    basis = {n: list(X.cells(n)) for n in range(X.dim + 1)}
    boundaries: dict[int, Matrix] = {}
    for n in range(1, X.dim + 1):
        rows = {x: k for k, x in enumerate(basis[n - 1])}
        mat = [[0] * len(basis[n]) for _ in basis[n - 1]]
        for col, x in enumerate(basis[n]):
            for i, f in enumerate(X.faces[x]):
                if f.is_nondegenerate():
                    mat[rows[f.target]][col] += -1 if i % 2 else 1
        boundaries[n] = mat
    cc = ChainComplex(basis, boundaries)
    if not cc.check_square_zero():
        raise ArithmeticError("boundary of boundary is nonzero; the simplicial set is invalid")
    return cc


def matmul(a: Matrix, b: Matrix) -> Matrix:
    if not a or not b:
        return [[0] * (len(b[0]) if b else 0) for _ in a]
    return [[sum(x * y for x, y in zip(row, col)) for col in zip(*b)] for row in a]


def _eye(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def smith_normal_form(M: Matrix) -> tuple[Matrix, Matrix, Matrix]:
    """Return ``(D, U, V)`` with ``U @ M @ V == D``.

    ``D`` is diagonal with nonnegative entries forming a divisibility chain;
    ``U`` and ``V`` are unimodular.
    """
    A = [list(row) for row in M]
    m = len(A)
    n = len(A[0]) if m else 0
    U, V = _eye(m), _eye(n)

    def swap_rows(i: int, j: int) -> None:
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i: int, j: int) -> None:
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst: int, src: int, c: int) -> None:
        A[dst] = [a + c * b for a, b in zip(A[dst], A[src])]
        U[dst] = [a + c * b for a, b in zip(U[dst], U[src])]

    def add_col(dst: int, src: int, c: int) -> None:
        for row in A:
            row[dst] += c * row[src]
        for row in V:
            row[dst] += c * row[src]

    t = 0
    while t < min(m, n):
        nz = [(abs(A[i][j]), i, j) for i in range(t, m) for j in range(t, n) if A[i][j]]
        if not nz:
            break
        _, i, j = min(nz)
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            clean = True
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // A[t][t]))
                    clean = clean and not A[i][t]
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // A[t][t]))
                    clean = clean and not A[t][j]
            if not clean:
                cands = [(abs(A[i][t]), i, t) for i in range(t + 1, m) if A[i][t]]
                cands += [(abs(A[t][j]), t, j) for j in range(t + 1, n) if A[t][j]]
                _, i, j = min(cands)
                if i != t:
                    swap_rows(t, i)
                else:
                    swap_cols(t, j)
                continue
            bad = next(
                ((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % A[t][t]),
                None,
            )
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if A[t][t] < 0:
            A[t] = [-a for a in A[t]]
            U[t] = [-a for a in U[t]]
        t += 1
    return A, U, V


def diagonal(D: Matrix) -> list[int]:
    return [D[i][i] for i in range(min(len(D), len(D[0]) if D else 0))]


@dataclass
class HomologyReport:
    """Per-degree Betti numbers and torsion coefficients (each > 1, dividing the next)."""

    betti: tuple[int, ...]
    torsion: tuple[tuple[int, ...], ...]

    def to_json(self) -> dict[str, dict[str, Any]]:
        return {
            str(k): {"betti": b, "torsion": list(t)}
            for k, (b, t) in enumerate(zip(self.betti, self.torsion))
        }

    def group(self, k: int) -> tuple[int, tuple[int, ...]]:
        if k < len(self.betti):
            return self.betti[k], self.torsion[k]
        return 0, ()

    def same_groups(self, other: HomologyReport) -> bool:
        top = max(len(self.betti), len(other.betti))
        return all(self.group(k) == other.group(k) for k in range(top))

    def __str__(self) -> str:
        parts = []
        for k in range(len(self.betti)):
            b, t = self.group(k)
            terms = (["Z^%d" % b if b > 1 else "Z"] if b else []) + [f"Z/{q}" for q in t]
            parts.append(f"H_{k} = {' + '.join(terms) or '0'}")
        return ", ".join(parts) or "all zero"


def homology(X: FinSSet) -> HomologyReport:
    cc = normalized_chains(X)
    top = X.dim
    ranks: dict[int, int] = {}
    tors: dict[int, tuple[int, ...]] = {}
    for n, mat in cc.boundaries.items():
        diag = [d for d in diagonal(smith_normal_form(mat)[0]) if d] if mat and mat[0] else []
        ranks[n] = len(diag)
        tors[n] = tuple(d for d in diag if d > 1)
    betti, torsion = [], []
    for k in range(top + 1):
        betti.append(len(cc.basis[k]) - ranks.get(k, 0) - ranks.get(k + 1, 0))
        torsion.append(tors.get(k + 1, ()))
    return HomologyReport(tuple(betti), tuple(torsion))


def pi0(X: FinSSet) -> list[list[str]]:
    """Connected components as sorted lists of vertex ids."""
    parent = {v: v for v in X.cells(0)}

    def find(v: str) -> str:
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for e in X.cells(1):
        a, b = find(X.faces[e][0].target), find(X.faces[e][1].target)
        if a != b:
            parent[max(a, b)] = min(a, b)
    comps: dict[str, list[str]] = {}
    for v in X.cells(0):
        comps.setdefault(find(v), []).append(v)
    return sorted(sorted(c) for c in comps.values())


# -- weak-equivalence oracle ---------------------------------------------------


class Tag(str, Enum):
    CERTIFIED_EQ = "CERTIFIED_EQ"
    EVIDENCE_EQ = "EVIDENCE_EQ"
    NOT_EQ = "NOT_EQ"


@dataclass
class WEVerdict:
    tag: Tag
    witness: dict[str, Any] = field(default_factory=dict)

    @property
    def is_equivalence(self) -> bool:
        return self.tag is not Tag.NOT_EQ

    def to_json(self) -> dict[str, Any]:
        return {"tag": self.tag.value, "witness": self.witness}


class CertificateError(ValueError):
    pass


@dataclass
class Certificate:
    """Homotopy-inverse data for ``f: X -> Y``.

    ``inverse`` is ``g: Y -> X``. Each homotopy is a map out of ``X × Δ[1]``
    (resp. ``Y × Δ[1]``) whose two ends are ``g∘f`` and the identity (resp.
    ``f∘g`` and the identity), in either order. A missing homotopy means the
    composite must equal the identity exactly.
    """

    inverse: SimpMap
    homotopy_domain: SimpMap | None = None
    homotopy_codomain: SimpMap | None = None


def cylinder_ends(X: FinSSet, cyl: Product | None = None) -> tuple[Product, SimpMap, SimpMap]:
    """``X × Δ[1]`` with the inclusions of ``X × 0`` and ``X × 1``."""
    cyl = cyl or product(X, simplex(1))
    ident = SimpMap.identity(X)
    ends = []
    for v in ("0", "1"):
        ends.append(cyl.lift(ident, constant_map(X, cyl.pr2.codomain, v)))
    return cyl, ends[0], ends[1]


def _check_homotopy(H: SimpMap | None, X: FinSSet, composite: SimpMap) -> str | None:
    if H is None:
        return None if composite.same_as(SimpMap.identity(X)) else "composite is not the identity"
    cyl, i0, i1 = cylinder_ends(X)
    if not H.domain.same_as(cyl.space):
        raise CertificateError("homotopy domain is not the cylinder X × Δ[1]")
    if not H.codomain.same_as(X):
        raise CertificateError("homotopy codomain mismatch")
    problems = H.validate()
    if problems:
        return "homotopy is not simplicial: " + problems[0]
    ends = (compose(H, i0), compose(H, i1))
    ident = SimpMap.identity(X)
    if (ends[0].same_as(composite) and ends[1].same_as(ident)) or (
        ends[0].same_as(ident) and ends[1].same_as(composite)
    ):
        return None
    return "homotopy ends do not match"


def _verify_certificate(f: SimpMap, cert: Certificate) -> str | None:
    g = cert.inverse
    if not (g.domain.same_as(f.codomain) and g.codomain.same_as(f.domain)):
        raise CertificateError("inverse has the wrong domain or codomain")
    problems = g.validate()
    if problems:
        return "inverse is not simplicial: " + problems[0]
    return _check_homotopy(cert.homotopy_domain, f.domain, compose(g, f)) or _check_homotopy(
        cert.homotopy_codomain, f.codomain, compose(f, g)
    )


def we_evidence(
    f: SimpMap, certificate: Certificate | None = None, degree_bound: int | None = None
) -> WEVerdict:
    """Three-valued verdict on whether ``f`` is a weak equivalence.

    ``degree_bound`` restricts the homology comparison to degrees below it,
    for maps between truncations of larger simplicial sets.
    """
    rejected = None
    if certificate is not None:
        rejected = _verify_certificate(f, certificate)
        if rejected is None:
            return WEVerdict(Tag.CERTIFIED_EQ, {"certificate": "homotopy inverse verified"})
    elif f.is_isomorphism() and f.is_valid():
        return WEVerdict(Tag.CERTIFIED_EQ, {"certificate": "isomorphism"})
    X, Y = f.domain, f.codomain
    witness: dict[str, Any] = {}
    if rejected:
        witness["certificate_rejected"] = rejected
    cx, cy = pi0(X), pi0(Y)
    if len(cx) != len(cy):
        return WEVerdict(Tag.NOT_EQ, {**witness, "invariant": "pi0", "domain": len(cx), "codomain": len(cy)})
    comp_of = {v: k for k, c in enumerate(cy) for v in c}
    hit = {comp_of[f.assign[c[0]].target] for c in cx}
    if len(hit) != len(cy):
        return WEVerdict(Tag.NOT_EQ, {**witness, "invariant": "pi0 induced map", "image_size": len(hit), "codomain": len(cy)})
    hx, hy = homology(X), homology(Y)
    top = max(len(hx.betti), len(hy.betti))
    if degree_bound is not None:
        top = min(top, degree_bound)
    for k in range(top):
        if hx.group(k) != hy.group(k):
            return WEVerdict(
                Tag.NOT_EQ,
                {**witness, "invariant": f"H_{k}", "domain": list(hx.group(k)[:1]) + list(hx.group(k)[1]), "codomain": list(hy.group(k)[:1]) + list(hy.group(k)[1])},
            )
    witness.update({"degree_bound": top - 1, "pi0": len(cx), "homology": str(hx)})
    return WEVerdict(Tag.EVIDENCE_EQ, witness)
