"""Finite categories, functors, contravariant Cat-valued diagrams and their nerves.

Composition is written ``compose(g, f) = g ∘ f`` for ``f: a -> b`` and
``g: b -> c``. Diagrams over a base ``O`` are contravariant: a morphism
``β: b -> c`` acts by a functor ``β*: ψ(c) -> ψ(b)``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product as iproduct
from typing import Callable, Iterator, Mapping, Sequence

from .delta import Values
from .sset import FinSSet, SimplexRef, SimpMap


class CategoryError(ValueError):
    pass


Chain = tuple[tuple[str, ...], tuple[str, ...]]  # (objects c0..cm, morphisms f1..fm)


class FinCategory:
    """A finite category given by an explicit composition table."""

    def __init__(
        self,
        objects: Sequence[str],
        morphisms: Mapping[str, tuple[str, str]],
        identities: Mapping[str, str],
        composition: Mapping[tuple[str, str], str],
    ) -> None:
        self.objects = list(objects)
        self.morphisms = {m: (s, t) for m, (s, t) in morphisms.items()}
        self.identities = dict(identities)
        self.composition = {(g, f): h for (g, f), h in composition.items()}
        self._id_set = set(self.identities.values())
        self._hom: dict[tuple[str, str], list[str]] = {}
        for m, st in self.morphisms.items():
            self._hom.setdefault(st, []).append(m)

    def __repr__(self) -> str:
        return f"FinCategory({len(self.objects)} objects, {len(self.morphisms)} morphisms)"

    def src(self, m: str) -> str:
        return self.morphisms[m][0]

    def dst(self, m: str) -> str:
        return self.morphisms[m][1]

    def hom(self, a: str, b: str) -> list[str]:
        return self._hom.get((a, b), [])

    def out_of(self, a: str) -> list[str]:
        return [m for m, (s, _) in self.morphisms.items() if s == a]

    def ident(self, a: str) -> str:
        return self.identities[a]

    def is_identity(self, m: str) -> bool:
        return m in self._id_set

    def compose(self, g: str, f: str) -> str:
        try:
            return self.composition[(g, f)]
        except KeyError:
            raise CategoryError(f"{g} ∘ {f} is not defined") from None

    def compose_chain(self, ms: Sequence[str], start: str) -> str:
        """Composite of ``f1, ..., fm`` (applied in that order), starting at ``start``."""
        out = self.ident(start)
        for m in ms:
            out = self.compose(m, out)
        return out

    def validate(self) -> list[str]:
        problems = []
        obj = set(self.objects)
        for m, (s, t) in self.morphisms.items():
            if s not in obj or t not in obj:
                problems.append(f"morphism {m}: unknown endpoint")
        for a in self.objects:
            i = self.identities.get(a)
            if i is None or self.morphisms.get(i) != (a, a):
                problems.append(f"object {a}: bad identity")
        if problems:
            return problems
        for f, (a, b) in self.morphisms.items():
            for g in self.out_of(b):
                h = self.composition.get((g, f))
                if h is None:
                    problems.append(f"missing composite {g} ∘ {f}")
                elif self.morphisms.get(h) != (a, self.dst(g)):
                    problems.append(f"composite {g} ∘ {f} = {h} has wrong endpoints")
            if self.composition.get((self.ident(b), f)) != f or self.composition.get((f, self.ident(a))) != f:
                problems.append(f"identity law fails at {f}")
        if problems:
            return problems
        for f, (_, b) in self.morphisms.items():
            for g in self.out_of(b):
                for h in self.out_of(self.dst(g)):
                    if self.compose(h, self.compose(g, f)) != self.compose(self.compose(h, g), f):
                        problems.append(f"associativity fails at ({h}, {g}, {f})")
        return problems

    def is_valid(self) -> bool:
        return not self.validate()

    def chains(self, n: int, nondegenerate: bool = False) -> list[Chain]:
        """Composable chains of length ``n``; ``nondegenerate`` drops identities."""
        out: list[Chain] = [((a,), ()) for a in self.objects]
        for _ in range(n):
            nxt = []
            for objs, ms in out:
                for m in self.out_of(objs[-1]):
                    if nondegenerate and self.is_identity(m):
                        continue
                    nxt.append((objs + (self.dst(m),), ms + (m,)))
            out = nxt
        return out

    # -- constructors -------------------------------------------------------

    @classmethod
    def ordinal(cls, n: int) -> FinCategory:
        """The poset ``[n]``; the morphism ``i -> j`` is named ``"i>j"``."""
        objs = [str(i) for i in range(n + 1)]
        mor = {f"{i}>{j}": (str(i), str(j)) for i in range(n + 1) for j in range(i, n + 1)}
        ids = {str(i): f"{i}>{i}" for i in range(n + 1)}
        comp = {
            (f"{j}>{k}", f"{i}>{j}"): f"{i}>{k}"
            for i in range(n + 1)
            for j in range(i, n + 1)
            for k in range(j, n + 1)
        }
        return cls(objs, mor, ids, comp)

    @classmethod
    def poset(cls, objects: Sequence[str], less: Sequence[tuple[str, str]]) -> FinCategory:
        """The poset generated by the relations ``a < b``; morphisms are named ``"a>b"``."""
        up = {a: {a} for a in objects}
        changed = True
        for a, b in less:
            up[a].add(b)
        while changed:
            changed = False
            for a in objects:
                new = set().union(*(up[b] for b in up[a]))
                if new - up[a]:
                    up[a] |= new
                    changed = True
        mor = {f"{a}>{b}": (a, b) for a in objects for b in objects if b in up[a]}
        ids = {a: f"{a}>{a}" for a in objects}
        comp = {
            (f"{b}>{c}", f"{a}>{b}"): f"{a}>{c}"
            for a in objects
            for b in up[a]
            for c in up[b]
        }
        return cls(list(objects), mor, ids, comp)

    @classmethod
    def monoid(cls, elements: Sequence[str], table: Mapping[tuple[str, str], str], unit: str, obj: str = "*") -> FinCategory:
        """One-object category; ``table[(g, f)]`` is ``g ∘ f``."""
        mor = {e: (obj, obj) for e in elements}
        comp = dict(table)
        for e in elements:
            comp[(unit, e)] = e
            comp[(e, unit)] = e
        return cls([obj], mor, {obj: unit}, comp)

    @classmethod
    def empty(cls) -> FinCategory:
        return cls([], {}, {}, {})


# -- functors -----------------------------------------------------------------


@dataclass
class Functor:
    source: FinCategory
    target: FinCategory
    obj_map: dict[str, str]
    mor_map: dict[str, str]

    def __call__(self, m: str) -> str:
        return self.mor_map[m]

    def validate(self) -> list[str]:
        C, D = self.source, self.target
        problems = []
        for a in C.objects:
            if self.obj_map.get(a) not in D.identities:
                problems.append(f"object {a} has no valid image")
        if problems:
            return problems
        for m, (a, b) in C.morphisms.items():
            fm = self.mor_map.get(m)
            if fm not in D.morphisms:
                problems.append(f"morphism {m} has no valid image")
            elif D.morphisms[fm] != (self.obj_map[a], self.obj_map[b]):
                problems.append(f"morphism {m}: endpoints not preserved")
        if problems:
            return problems
        for a in C.objects:
            if self.mor_map[C.ident(a)] != D.ident(self.obj_map[a]):
                problems.append(f"identity of {a} not preserved")
        for (g, f), h in C.composition.items():
            if D.compose(self.mor_map[g], self.mor_map[f]) != self.mor_map[h]:
                problems.append(f"composite {g} ∘ {f} not preserved")
        return problems

    def is_valid(self) -> bool:
        return not self.validate()

    def same_as(self, other: Functor) -> bool:
        return self.obj_map == other.obj_map and self.mor_map == other.mor_map

    @classmethod
    def identity(cls, C: FinCategory) -> Functor:
        return cls(C, C, {a: a for a in C.objects}, {m: m for m in C.morphisms})


def compose_functors(G: Functor, F: Functor) -> Functor:
    """``G ∘ F``."""
    return Functor(
        F.source,
        G.target,
        {a: G.obj_map[b] for a, b in F.obj_map.items()},
        {m: G.mor_map[n] for m, n in F.mor_map.items()},
    )


def enumerate_functors(
    C: FinCategory,
    D: FinCategory,
    accept_obj: Callable[[str, str], bool] | None = None,
    accept_mor: Callable[[str, str], bool] | None = None,
) -> Iterator[Functor]:
    """All functors ``C -> D``, by backtracking with composition checks."""
    objs = list(C.objects)
    mors = [m for m in C.morphisms if not C.is_identity(m)]
    pos = {m: k for k, m in enumerate(mors)}
    # composition constraints become checkable once their last non-identity member is assigned
    checks: dict[int, list[tuple[str, str, str]]] = {}
    for (g, f), h in C.composition.items():
        members = [pos[x] for x in (g, f, h) if x in pos]
        if members:
            checks.setdefault(max(members), []).append((g, f, h))

    def obj_choices(a: str) -> list[str]:
        return [b for b in D.objects if accept_obj is None or accept_obj(a, b)]

    for images in iproduct(*(obj_choices(a) for a in objs)):
        om = dict(zip(objs, images))
        mm = {C.ident(a): D.ident(om[a]) for a in objs}

        def rec(k: int) -> Iterator[dict[str, str]]:
            if k == len(mors):
                yield dict(mm)
                return
            m = mors[k]
            for c in D.hom(om[C.src(m)], om[C.dst(m)]):
                if accept_mor is not None and not accept_mor(m, c):
                    continue
                mm[m] = c
                if all(D.compose(mm[g], mm[f]) == mm[h] for g, f, h in checks.get(k, ())):
                    yield from rec(k + 1)
                del mm[m]

        for assign in rec(0):
            yield Functor(C, D, om, assign)


# -- diagrams over a base ---------------------------------------------------------


@dataclass
class CatOverO:
    """A category over ``O``: a functor ``projection: total -> O``."""

    total: FinCategory
    projection: Functor

    @property
    def base(self) -> FinCategory:
        return self.projection.target

    def validate(self) -> list[str]:
        return self.projection.validate()


@dataclass
class CatDiagram:
    """A contravariant functor ``O -> Cat``."""

    base: FinCategory
    value: dict[str, FinCategory]
    action: dict[str, Functor]

    def validate(self) -> list[str]:
        O = self.base
        problems = []
        for b in O.objects:
            problems += [f"ψ({b}): {p}" for p in self.value[b].validate()]
        for beta, (b, c) in O.morphisms.items():
            F = self.action.get(beta)
            if F is None or not (
                F.source.objects == self.value[c].objects and F.target.objects == self.value[b].objects
            ):
                problems.append(f"action of {beta} has the wrong shape")
                continue
            problems += [f"action of {beta}: {p}" for p in F.validate()]
        if problems:
            return problems
        for b in O.objects:
            if not self.action[O.ident(b)].same_as(Functor.identity(self.value[b])):
                problems.append(f"identity of {b} does not act trivially")
        for (g, f), h in O.composition.items():
            if not compose_functors(self.action[f], self.action[g]).same_as(self.action[h]):
                problems.append(f"({g} ∘ {f})* != {f}* {g}*")
        return problems


def nat_transformations(
    D1: CatDiagram, D2: CatDiagram
) -> Iterator[dict[str, Functor]]:
    """All natural transformations ``D1 -> D2``, one functor per object of the base."""
    O = D1.base
    objs = list(O.objects)

    def natural(alpha: dict[str, Functor], b: str) -> bool:
        for beta, (x, y) in O.morphisms.items():
            if b not in (x, y) or x not in alpha or y not in alpha:
                continue
            lhs = compose_functors(D2.action[beta], alpha[y])
            rhs = compose_functors(alpha[x], D1.action[beta])
            if not lhs.same_as(rhs):
                return False
        return True

    def rec(k: int, alpha: dict[str, Functor]) -> Iterator[dict[str, Functor]]:
        if k == len(objs):
            yield dict(alpha)
            return
        b = objs[k]
        for F in enumerate_functors(D1.value[b], D2.value[b]):
            alpha[b] = F
            if natural(alpha, b):
                yield from rec(k + 1, alpha)
            del alpha[b]

    yield from rec(0, {})


# -- comma categories and F ---------------------------------------------------------


def pair_name(x: str, u: str) -> str:
    return f"{x}|{u}"


def F_cat(phi: CatOverO, b: str) -> FinCategory:
    """``(Fφ)(b) = b↓φ``: objects ``(x, u: b -> φx)``, morphisms ``(k, u)``."""
    C, p, O = phi.total, phi.projection, phi.base
    if b not in O.identities:
        raise CategoryError(f"unknown object {b!r}")
    objs, mor, ids, comp = [], {}, {}, {}
    for x in C.objects:
        for u in O.hom(b, p.obj_map[x]):
            objs.append(pair_name(x, u))
            ids[pair_name(x, u)] = pair_name(C.ident(x), u)
    for k, (x, y) in C.morphisms.items():
        for u in O.hom(b, p.obj_map[x]):
            mor[pair_name(k, u)] = (pair_name(x, u), pair_name(y, O.compose(p(k), u)))
    for (k2, k1), k in C.composition.items():
        for u in O.hom(b, p.obj_map[C.src(k1)]):
            u2 = O.compose(p(k1), u)
            comp[(pair_name(k2, u2), pair_name(k1, u))] = pair_name(k, u)
    return FinCategory(objs, mor, ids, comp)


def F_cat_action(phi: CatOverO, beta: str, Fc: FinCategory | None = None, Fb: FinCategory | None = None) -> Functor:
    """``β*: (Fφ)(c) -> (Fφ)(b)`` for ``β: b -> c``, by precomposition."""
    O = phi.base
    b, c = O.morphisms[beta]
    Fc = Fc or F_cat(phi, c)
    Fb = Fb or F_cat(phi, b)
    C = phi.total
    om = {}
    for x in C.objects:
        for u in O.hom(c, phi.projection.obj_map[x]):
            om[pair_name(x, u)] = pair_name(x, O.compose(u, beta))
    mm = {}
    for k in C.morphisms:
        for u in O.hom(c, phi.projection.obj_map[C.src(k)]):
            mm[pair_name(k, u)] = pair_name(k, O.compose(u, beta))
    return Functor(Fc, Fb, om, mm)


def F_cat_diagram(phi: CatOverO) -> CatDiagram:
    O = phi.base
    value = {b: F_cat(phi, b) for b in O.objects}
    action = {
        beta: F_cat_action(phi, beta, value[c], value[b]) for beta, (b, c) in O.morphisms.items()
    }
    return CatDiagram(O, value, action)


def identity_over(O: FinCategory) -> CatOverO:
    return CatOverO(O, Functor.identity(O))


def comma_under(O: FinCategory, b: str) -> tuple[FinCategory, Functor, dict[str, Functor]]:
    """``b↓O`` with its projection to ``O`` and the precomposition functors ``c↓O -> b↓O``."""
    phi = identity_over(O)
    Cb = F_cat(phi, b)
    proj = Functor(
        Cb,
        O,
        {pair_name(x, u): x for x in O.objects for u in O.hom(b, x)},
        {pair_name(k, u): k for k in O.morphisms for u in O.hom(b, O.src(k))},
    )
    action = {
        beta: F_cat_action(phi, beta, F_cat(phi, c), Cb)
        for beta, (b2, c) in O.morphisms.items()
        if b2 == b
    }
    return Cb, proj, action


def F_cat_map(G: Functor, phi: CatOverO, phi2: CatOverO) -> dict[str, Functor]:
    """``F`` on a functor over ``O``: ``(x, u) -> (Gx, u)``."""
    O = phi.base
    out = {}
    for b in O.objects:
        A, B = F_cat(phi, b), F_cat(phi2, b)
        om = {}
        for x in phi.total.objects:
            for u in O.hom(b, phi.projection.obj_map[x]):
                om[pair_name(x, u)] = pair_name(G.obj_map[x], u)
        mm = {}
        for k in phi.total.morphisms:
            for u in O.hom(b, phi.projection.obj_map[phi.total.src(k)]):
                mm[pair_name(k, u)] = pair_name(G.mor_map[k], u)
        out[b] = Functor(A, B, om, mm)
    return out


# -- Grothendieck construction ---------------------------------------------------


def gr_obj(b: str, x: str) -> str:
    return f"({b},{x})"


def gr_mor(beta: str, f: str) -> str:
    return f"({beta},{f})"


def E_cat(psi: CatDiagram) -> CatOverO:
    """The Grothendieck construction of ``ψ`` with its projection to ``O``.

    A morphism ``(b, x) -> (c, y)`` is a pair ``(β: b -> c, f: x -> β*y)``;
    ``(γ, g) ∘ (β, f) = (γβ, β*(g) ∘ f)``.
    """
    O = psi.base
    objs, mor, ids, comp = [], {}, {}, {}
    po, pm = {}, {}
    for b in O.objects:
        for x in psi.value[b].objects:
            objs.append(gr_obj(b, x))
            po[gr_obj(b, x)] = b
            ids[gr_obj(b, x)] = gr_mor(O.ident(b), psi.value[b].ident(x))
    info = {}
    for beta, (b, c) in O.morphisms.items():
        act = psi.action[beta]
        Pb = psi.value[b]
        for x in Pb.objects:
            for y in psi.value[c].objects:
                for f in Pb.hom(x, act.obj_map[y]):
                    m = gr_mor(beta, f)
                    mor[m] = (gr_obj(b, x), gr_obj(c, y))
                    pm[m] = beta
                    info[m] = (beta, f)
    for m1, (beta, f) in info.items():
        b, c = O.morphisms[beta]
        for m2, (gamma, g) in info.items():
            if mor[m2][0] != mor[m1][1]:
                continue
            h = psi.value[b].compose(psi.action[beta].mor_map[g], f)
            comp[(m2, m1)] = gr_mor(O.compose(gamma, beta), h)
    total = FinCategory(objs, mor, ids, comp)
    return CatOverO(total, Functor(total, O, po, pm))


def E_cat_map(alpha: Mapping[str, Functor], psi: CatDiagram, psi2: CatDiagram) -> Functor:
    """``E`` on a natural transformation: ``(b, x) -> (b, α_b x)``."""
    E1, E2 = E_cat(psi).total, E_cat(psi2).total
    om = {gr_obj(b, x): gr_obj(b, alpha[b].obj_map[x]) for b in psi.base.objects for x in psi.value[b].objects}
    mm = {}
    for m, (s, _) in E1.morphisms.items():
        beta, f = _split_gr(m)
        b = psi.base.src(beta)
        mm[m] = gr_mor(beta, alpha[b].mor_map[f])
    return Functor(E1, E2, om, mm)


def _split_gr(m: str) -> tuple[str, str]:
    """Inverse of ``gr_mor`` for ids whose first component contains no comma at depth 0."""
    inner = m[1:-1]
    depth = 0
    for i, ch in enumerate(inner):
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        elif ch == "," and depth == 0:
            return inner[:i], inner[i + 1 :]
    raise CategoryError(f"not a Grothendieck morphism id: {m!r}")


# -- adjunction at the Cat level ---------------------------------------------------


def maps_over(phi: CatOverO, phi2: CatOverO) -> Iterator[Functor]:
    """Functors ``total -> total2`` commuting with the projections."""
    p, q = phi.projection, phi2.projection
    return enumerate_functors(
        phi.total,
        phi2.total,
        accept_obj=lambda a, b: p.obj_map[a] == q.obj_map[b],
        accept_mor=lambda m, n: p.mor_map[m] == q.mor_map[n],
    )


def transpose_to_nat(G: Functor, phi: CatOverO, psi: CatDiagram) -> dict[str, Functor]:
    """``φ -> Eψ`` over ``O`` becomes ``Fφ -> ψ``: ``(x, u) -> u*(G x)``."""
    O, C = phi.base, phi.total
    alpha = {}
    for b in O.objects:
        Fb = F_cat(phi, b)
        om, mm = {}, {}
        for x in C.objects:
            c, gx = _split_gr(G.obj_map[x])
            for u in O.hom(b, c):
                om[pair_name(x, u)] = psi.action[u].obj_map[gx]
        for k in C.morphisms:
            c = phi.projection.obj_map[C.src(k)]
            _, fk = _split_gr(G.mor_map[k])
            for u in O.hom(b, c):
                mm[pair_name(k, u)] = psi.action[u].mor_map[fk]
        alpha[b] = Functor(Fb, psi.value[b], om, mm)
    return alpha


def transpose_to_over(alpha: Mapping[str, Functor], phi: CatOverO, psi: CatDiagram) -> Functor:
    """``Fφ -> ψ`` becomes ``φ -> Eψ``: ``x -> (φx, α(x, 1))``."""
    O, C, p = phi.base, phi.total, phi.projection
    E = E_cat(psi).total
    om, mm = {}, {}
    for x in C.objects:
        c = p.obj_map[x]
        om[x] = gr_obj(c, alpha[c].obj_map[pair_name(x, O.ident(c))])
    for k in C.morphisms:
        c = p.obj_map[C.src(k)]
        mm[k] = gr_mor(p(k), alpha[c].mor_map[pair_name(k, O.ident(c))])
    return Functor(C, E, om, mm)


def unit_cat(phi: CatOverO) -> Functor:
    """``η: φ -> EFφ``, the transpose of the identity of ``Fφ``."""
    D = F_cat_diagram(phi)
    return transpose_to_over({b: Functor.identity(D.value[b]) for b in phi.base.objects}, phi, D)


def counit_cat(psi: CatDiagram) -> dict[str, Functor]:
    """``ε: FEψ -> ψ``, the transpose of the identity of ``Eψ``."""
    E = E_cat(psi)
    return transpose_to_nat(Functor.identity(E.total), E, psi)


@dataclass
class CatRetraction:
    epsilon: Functor
    xi: Functor
    omega: dict[str, str]  # object of (FEψ)(b) -> component of ξε ⇒ 1
    checks: dict[str, bool] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.checks.values())


def counit_cat_retraction(psi: CatDiagram, b: str) -> CatRetraction:
    """``ε``, its section ``ξ`` and the natural transformation ``ω: ξε ⇒ 1`` at ``b``."""
    O = psi.base
    E = E_cat(psi)
    FE = F_cat(E, b)
    eps = counit_cat(psi)[b]
    Pb = psi.value[b]
    one = O.ident(b)
    xi = Functor(
        Pb,
        FE,
        {z: pair_name(gr_obj(b, z), one) for z in Pb.objects},
        {m: pair_name(gr_mor(one, m), one) for m in Pb.morphisms},
    )
    omega = {}
    for obj in FE.objects:
        ex, beta = obj.rsplit("|", 1)
        c, x = _split_gr(ex)
        bx = psi.action[beta].obj_map[x]
        omega[obj] = pair_name(gr_mor(beta, Pb.ident(bx)), one)
    xe = compose_functors(xi, eps)
    checks = {
        "epsilon_functor": eps.is_valid(),
        "xi_functor": xi.is_valid(),
        "epsilon_xi_identity": compose_functors(eps, xi).same_as(Functor.identity(Pb)),
        "omega_components": all(
            FE.morphisms.get(omega[o]) == (xe.obj_map[o], o) for o in FE.objects
        ),
        "omega_natural": all(
            FE.compose(m, omega[s]) == FE.compose(omega[t], xe.mor_map[m])
            for m, (s, t) in FE.morphisms.items()
        ),
        "omega_identity_on_xi": all(
            omega[xi.obj_map[z]] == FE.ident(xi.obj_map[z]) for z in Pb.objects
        ),
    }
    return CatRetraction(eps, xi, omega, checks)


# -- nerves ------------------------------------------------------------------------


def chain_id(objs: Sequence[str], ms: Sequence[str]) -> str:
    return objs[0] if not ms else "[" + ";".join(ms) + "]"


def nerve_ref(C: FinCategory, objs: Sequence[str], ms: Sequence[str]) -> SimplexRef:
    """Normal form of the chain ``objs[0] -ms[0]-> objs[1] ...`` in the nerve."""
    surj = [0]
    keep_o, keep_m = [objs[0]], []
    for m, o in zip(ms, objs[1:]):
        if C.is_identity(m):
            surj.append(surj[-1])
        else:
            surj.append(surj[-1] + 1)
            keep_o.append(o)
            keep_m.append(m)
    return SimplexRef(tuple(surj), chain_id(keep_o, keep_m))


def chain_face(C: FinCategory, objs: Sequence[str], ms: Sequence[str], i: int) -> Chain:
    m = len(ms)
    objs, ms = tuple(objs), tuple(ms)
    if i == 0:
        return objs[1:], ms[1:]
    if i == m:
        return objs[:-1], ms[:-1]
    return objs[:i] + objs[i + 1 :], ms[: i - 1] + (C.compose(ms[i], ms[i - 1]),) + ms[i + 1 :]


def chain_act(C: FinCategory, objs: Sequence[str], ms: Sequence[str], theta: Values) -> Chain:
    """``θ*`` of a chain: vertices ``θ(0), ..., θ(k)`` with composite arrows."""
    new_o = tuple(objs[t] for t in theta)
    new_m = tuple(
        C.compose_chain(ms[theta[i] : theta[i + 1]], objs[theta[i]]) for i in range(len(theta) - 1)
    )
    return new_o, new_m


@dataclass
class Nerve:
    space: FinSSet
    exact: bool
    chains: dict[str, Chain]


def longest_chain_at_least(C: FinCategory, n: int) -> bool:
    """Whether a composable chain of ``n`` non-identity morphisms exists."""
    reach = {a: True for a in C.objects}
    for _ in range(n):
        reach = {
            a: any(reach[C.dst(m)] for m in C.out_of(a) if not C.is_identity(m)) for a in C.objects
        }
    return any(reach.values())


def nerve(C: FinCategory, depth: int) -> Nerve:
    """The nerve truncated at ``depth``; ``exact`` means nothing was cut off."""
    if depth < 0:
        raise CategoryError("depth must be >= 0")
    simplices: dict[int, list[str]] = {}
    faces: dict[str, list[SimplexRef]] = {}
    chains: dict[str, Chain] = {}
    for n in range(depth + 1):
        for objs, ms in C.chains(n, nondegenerate=True):
            x = chain_id(objs, ms)
            simplices.setdefault(n, []).append(x)
            chains[x] = (objs, ms)
            if n:
                faces[x] = [nerve_ref(C, *chain_face(C, objs, ms, i)) for i in range(n + 1)]
    return Nerve(FinSSet(simplices, faces), not longest_chain_at_least(C, depth + 1), chains)


def nerve_of_functor(F: Functor, depth: int, N1: Nerve | None = None, N2: Nerve | None = None) -> SimpMap:
    N1 = N1 or nerve(F.source, depth)
    N2 = N2 or nerve(F.target, depth)
    assign = {}
    for x, (objs, ms) in N1.chains.items():
        assign[x] = nerve_ref(F.target, [F.obj_map[o] for o in objs], [F.mor_map[m] for m in ms])
    return SimpMap(N1.space, N2.space, assign)


@dataclass
class CatAdjunctionReport:
    hom_over: int
    hom_nat: int
    transposes_inverse: bool
    triangle_left: bool
    triangle_right: bool

    @property
    def ok(self) -> bool:
        return (
            self.hom_over == self.hom_nat
            and self.transposes_inverse
            and self.triangle_left
            and self.triangle_right
        )


def _same_nat(a: Mapping[str, Functor], b: Mapping[str, Functor]) -> bool:
    return set(a) == set(b) and all(a[k].same_as(b[k]) for k in a)


def check_adjunction_cat(phi: CatOverO, psi: CatDiagram) -> CatAdjunctionReport:
    """Exhaustive Hom counts for ``F ⊣ E`` on categories, transposes and triangle identities."""
    E = E_cat(psi)
    Fphi = F_cat_diagram(phi)
    over = list(maps_over(phi, E))
    nats = list(nat_transformations(Fphi, psi))
    inverse = True
    for G in over:
        a = transpose_to_nat(G, phi, psi)
        if not transpose_to_over(a, phi, psi).same_as(G):
            inverse = False
    for a in nats:
        G = transpose_to_over(a, phi, psi)
        if not G.is_valid() or not _same_nat(transpose_to_nat(G, phi, psi), a):
            inverse = False
    # (εF)(Fη) = 1
    eta = unit_cat(phi)
    EF = E_cat(Fphi)
    F_eta = F_cat_map(eta, phi, EF)
    eps_F = counit_cat(Fphi)
    left = all(
        compose_functors(eps_F[b], F_eta[b]).same_as(Functor.identity(Fphi.value[b]))
        for b in phi.base.objects
    )
    # (Eε)(ηE) = 1
    eta_E = unit_cat(E)
    eps = counit_cat(psi)
    FE = F_cat_diagram(E)
    E_eps = E_cat_map(eps, FE, psi)
    right = compose_functors(E_eps, eta_E).same_as(Functor.identity(E.total))
    return CatAdjunctionReport(len(over), len(nats), inverse, left, right)
