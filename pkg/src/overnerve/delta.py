"""Monotone maps between finite ordinals [n] = {0, ..., n}.

Operators are value tuples: ``values[i]`` is the image of ``i``. The
:class:`OrdinalOp` wrapper validates and carries dimensions; hot paths in
the rest of the package use the bare tuple helpers defined below.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, combinations_with_replacement
from typing import Iterator, Sequence

Values = tuple[int, ...]


class OperatorError(ValueError):
    pass


@dataclass(frozen=True)
class OrdinalOp:
    """A monotone map ``[source_dim] -> [target_dim]``.

    ``source_dim == -1`` is the empty ordinal; it is only valid as a source.
    """

    source_dim: int
    target_dim: int
    values: Values

    def __post_init__(self) -> None:
        object.__setattr__(self, "values", tuple(self.values))
        if self.source_dim < -1 or self.target_dim < -1:
            raise OperatorError("dimensions must be >= -1")
        if self.target_dim == -1 and self.source_dim != -1:
            raise OperatorError("[-1] is only valid as a source")
        if len(self.values) != self.source_dim + 1:
            raise OperatorError(
                f"expected {self.source_dim + 1} values, got {len(self.values)}"
            )
        if any(v < 0 or v > self.target_dim for v in self.values):
            raise OperatorError(f"values {self.values} out of range [0, {self.target_dim}]")
        if any(a > b for a, b in zip(self.values, self.values[1:])):
            raise OperatorError(f"values {self.values} are not nondecreasing")

    @classmethod
    def identity(cls, n: int) -> OrdinalOp:
        return cls(n, n, identity(n))

    @classmethod
    def face(cls, i: int, n: int) -> OrdinalOp:
        """The coface ``[n-1] -> [n]`` skipping ``i``."""
        return cls(n - 1, n, face(i, n))

    @classmethod
    def degeneracy(cls, i: int, n: int) -> OrdinalOp:
        """The codegeneracy ``[n+1] -> [n]`` repeating ``i``."""
        return cls(n + 1, n, degeneracy(i, n))

    def __call__(self, i: int) -> int:
        return self.values[i]

    def is_injective(self) -> bool:
        return len(set(self.values)) == len(self.values)

    def is_surjective(self) -> bool:
        return set(self.values) == set(range(self.target_dim + 1))

    def is_identity(self) -> bool:
        return self.source_dim == self.target_dim and self.is_injective()

    def word(self) -> list[str]:
        """Normal-form word ``s_i1 .. s_iq d_j1 .. d_jr`` (i decreasing, j increasing).

        Read right to left as operators on a simplex: ``f^* x`` applies the
        faces first, then the degeneracies.
        """
        fac = ez_factorize(self)
        degs = [f"s{i}" for i in reversed(collapsed_positions(fac.surjection.values))]
        image = set(self.values)
        faces = [f"d{j}" for j in range(self.target_dim + 1) if j not in image]
        return degs + faces


@dataclass(frozen=True)
class EZFactorization:
    surjection: OrdinalOp
    injection: OrdinalOp


def compose(g: OrdinalOp, f: OrdinalOp) -> OrdinalOp:
    """``g ∘ f`` (apply ``f`` first)."""
    if f.target_dim != g.source_dim:
        raise OperatorError(
            f"cannot compose: f lands in [{f.target_dim}], g starts at [{g.source_dim}]"
        )
    return OrdinalOp(f.source_dim, g.target_dim, compose_values(g.values, f.values))


def ez_factorize(f: OrdinalOp) -> EZFactorization:
    surj, inj = ez(f.values)
    mid = len(inj) - 1
    return EZFactorization(OrdinalOp(f.source_dim, mid, surj), OrdinalOp(mid, f.target_dim, inj))


# -- tuple-level helpers -----------------------------------------------------


def identity(n: int) -> Values:
    return tuple(range(n + 1))


def face(i: int, n: int) -> Values:
    return tuple(j if j < i else j + 1 for j in range(n))


def degeneracy(i: int, n: int) -> Values:
    return tuple(j if j <= i else j - 1 for j in range(n + 2))


def compose_values(g: Sequence[int], f: Sequence[int]) -> Values:
    return tuple(g[i] for i in f)


def is_identity(values: Values) -> bool:
    return all(v == i for i, v in enumerate(values))


@lru_cache(maxsize=None)
def ez(values: Values) -> tuple[Values, Values]:
    """Epi-mono factorization ``values = inj ∘ surj`` as value tuples."""
    inj = tuple(sorted(set(values)))
    pos = {v: k for k, v in enumerate(inj)}
    return tuple(pos[v] for v in values), inj


def collapsed_positions(surj: Values) -> list[int]:
    return [i for i in range(len(surj) - 1) if surj[i] == surj[i + 1]]


def collapse(n: int, positions: Sequence[int]) -> Values:
    """The surjection out of ``[n]`` identifying ``i`` with ``i+1`` for each given ``i``."""
    cut = set(positions)
    out = [0]
    for i in range(n):
        out.append(out[-1] if i in cut else out[-1] + 1)
    return tuple(out)


def section(surj: Values) -> Values:
    """The injection picking the least preimage of each value of a surjection."""
    seen: dict[int, int] = {}
    for i, v in enumerate(surj):
        seen.setdefault(v, i)
    return tuple(seen[v] for v in range(len(seen)))


@lru_cache(maxsize=None)
def surjections(m: int, d: int) -> tuple[Values, ...]:
    """All surjections ``[m] ->> [d]`` in lexicographic order."""
    if d > m or d < 0:
        return ()
    out = []
    for cuts in combinations(range(m), d):
        out.append(collapse(m, [i for i in range(m) if i not in cuts]))
    return tuple(sorted(out))


@lru_cache(maxsize=None)
def monotone_maps(m: int, n: int) -> tuple[Values, ...]:
    """All monotone maps ``[m] -> [n]`` in lexicographic order."""
    if m == -1:
        return ((),)
    return tuple(combinations_with_replacement(range(n + 1), m + 1))


def injections(m: int, n: int) -> Iterator[Values]:
    return combinations(range(n + 1), m + 1)


def bar(values: Values) -> Values:
    """Cone extension: ``bar(f)(0) = 0`` and ``bar(f)(k) = f(k-1) + 1``."""
    return (0,) + tuple(v + 1 for v in values)
