"""Finite structures and evaluation environments."""

from __future__ import annotations

from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Any, Iterable, Mapping

from .errors import DuplicateDecl, OutOfUniverse, StackUnderflow, UnboundName


def _freeze(m: Mapping[str, Iterable]) -> Mapping[str, frozenset]:
    return MappingProxyType({k: frozenset(v) for k, v in sorted(m.items())})


@dataclass(frozen=True, eq=False)
class Structure:
    """Universe ``{1..n}`` with unary sets and binary relations.

    Predicates that the structure does not mention are *unbound*; use
    :meth:`with_vocabulary` to make missing names explicit empty sets.
    """

    size: int
    unary: Mapping[str, frozenset] = field(default_factory=dict)
    binary: Mapping[str, frozenset] = field(default_factory=dict)

    def __post_init__(self):
        if self.size < 0:
            raise OutOfUniverse("universe size must be non-negative")
        object.__setattr__(self, "unary", _freeze(self.unary))
        object.__setattr__(self, "binary", _freeze(self.binary))
        clash = set(self.unary) & set(self.binary)
        if clash:
            raise DuplicateDecl(f"predicate(s) declared both unary and binary: {sorted(clash)}")
        for name, s in self.unary.items():
            for e in s:
                if not (isinstance(e, int) and 1 <= e <= self.size):
                    raise OutOfUniverse(f"{name}: element {e!r} outside universe of size {self.size}")
        for name, s in self.binary.items():
            for p in s:
                if not (isinstance(p, tuple) and len(p) == 2
                        and all(isinstance(e, int) and 1 <= e <= self.size for e in p)):
                    raise OutOfUniverse(f"{name}: tuple {p!r} outside universe of size {self.size}")

    @property
    def universe(self) -> range:
        return range(1, self.size + 1)

    def unary_of(self, name: str) -> frozenset:
        try:
            return self.unary[name]
        except KeyError:
            raise UnboundName(name) from None

    def binary_of(self, name: str) -> frozenset:
        try:
            return self.binary[name]
        except KeyError:
            raise UnboundName(name) from None

    def arity(self, name: str) -> int:
        if name in self.unary:
            return 1
        if name in self.binary:
            return 2
        raise UnboundName(name)

    def with_vocabulary(self, unary: Iterable[str] = (), binary: Iterable[str] = ()) -> "Structure":
        u = dict(self.unary)
        b = dict(self.binary)
        for n in unary:
            u.setdefault(n, frozenset())
        for n in binary:
            b.setdefault(n, frozenset())
        return Structure(self.size, u, b)

    def restrict(self, unary: Iterable[str], binary: Iterable[str]) -> "Structure":
        return Structure(self.size,
                         {n: self.unary.get(n, ()) for n in unary},
                         {n: self.binary.get(n, ()) for n in binary})

    def _key(self):
        return (self.size, tuple(self.unary.items()), tuple(self.binary.items()))

    def __eq__(self, other):
        return isinstance(other, Structure) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        parts = [f"size={self.size}"]
        for n, s in self.unary.items():
            parts.append(f"{n}={sorted(s)}")
        for n, s in self.binary.items():
            parts.append(f"{n}={sorted(s)}")
        return "Structure(" + ", ".join(parts) + ")"


@dataclass(frozen=True)
class Env:
    """``stack[0]`` is ``#1``, the most recently bound object."""

    stack: tuple[int, ...] = ()
    named: Mapping[str, Any] = field(default_factory=dict)

    def nth(self, k: int) -> int:
        if k > len(self.stack):
            raise StackUnderflow(k, len(self.stack))
        return self.stack[k - 1]

    def push(self, o: int) -> "Env":
        return Env((o,) + self.stack, self.named)

    def with_stack(self, stack: tuple[int, ...]) -> "Env":
        return Env(tuple(stack), self.named)

    def bind(self, name: str, value: Any) -> "Env":
        named = dict(self.named)
        named[name] = value
        return Env(self.stack, named)


@dataclass(frozen=True)
class PairEnv:
    """The two slots of the RL2 semantics."""

    slot1: int
    slot2: int

    def swap(self) -> "PairEnv":
        return PairEnv(self.slot2, self.slot1)


def all_structures(n: int, unary: Iterable[str], binary: Iterable[str]):
    """Every structure of size ``n`` over the given vocabulary."""
    import itertools

    unary = list(unary)
    binary = list(binary)
    elems = list(range(1, n + 1))
    pairs = [(a, b) for a in elems for b in elems]

    def subsets(xs):
        for mask in range(1 << len(xs)):
            yield frozenset(x for i, x in enumerate(xs) if mask >> i & 1)

    for us in itertools.product(*(list(subsets(elems)) for _ in unary)):
        for bs in itertools.product(*(list(subsets(pairs)) for _ in binary)):
            yield Structure(n, dict(zip(unary, us)), dict(zip(binary, bs)))


def random_structure(rng, n: int, unary: Iterable[str], binary: Iterable[str], p: float = 0.5) -> Structure:
    elems = range(1, n + 1)
    u = {a: {e for e in elems if rng.random() < p} for a in unary}
    b = {f: {(x, y) for x in elems for y in elems if rng.random() < p} for f in binary}
    return Structure(n, u, b)
