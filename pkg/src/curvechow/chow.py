"""Numerical Chow ring of C^n generated by point pullbacks and diagonals.

A :class:`Configuration` is the class of a locus in C^n cut out by a set
partition of the factor indices: coordinates in the same block are equal,
and coordinates in a *pinned* block are also equal to the fixed point x.
Since all points of C are numerically equivalent the choice of x is
irrelevant, and every pinned block is the same locus as the set of its
pinned singletons, so the normal form stores pinned elements as singletons.

Products are computed by writing the right factor as a product of
generators (a spanning chain of diagonals per block, then a point per
pinned element) and letting those act on the left factor. The only
non-transverse case with a nonzero answer is a diagonal inside a free
block: the normal bundle of a diagonal is T_C, of degree 2 - 2g, so the
block becomes pinned with coefficient 2 - 2g.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Iterator, Mapping, Sequence

from .poly import RatPoly

Block = tuple[tuple[int, ...], bool]


@dataclass
class EngineConfig:
    """Global engine limits. ``max_n`` caps the ambient power."""

    max_n: int = 12


config = EngineConfig()


class AmbientError(ValueError):
    """Index out of range, mismatched ambient powers, or n beyond the cap."""


def _check_n(n: int) -> None:
    if not isinstance(n, int) or n < 1:
        raise AmbientError(f"ambient power must be a positive integer, got {n!r}")
    if n > config.max_n:
        raise AmbientError(f"n={n} exceeds the configured cap max_n={config.max_n}")


def _canonical_blocks(blocks: Iterable[Block]) -> tuple[Block, ...]:
    out: list[Block] = []
    for elems, pinned in blocks:
        if pinned:
            out.extend(((e,), True) for e in elems)
        else:
            out.append((tuple(sorted(elems)), False))
    out.sort(key=lambda b: b[0][0])
    return tuple(out)


@dataclass(frozen=True, order=True)
class Configuration:
    n: int
    blocks: tuple[Block, ...]

    @classmethod
    def make(cls, n: int, blocks: Iterable[Block]) -> "Configuration":
        blocks = _canonical_blocks((tuple(e), bool(p)) for e, p in blocks)
        seen = sorted(e for elems, _ in blocks for e in elems)
        if seen != list(range(1, n + 1)):
            raise AmbientError(f"blocks {blocks} do not partition 1..{n}")
        return cls(n, blocks)

    @classmethod
    def fundamental(cls, n: int) -> "Configuration":
        return cls(n, tuple(((i,), False) for i in range(1, n + 1)))

    @property
    def codim(self) -> int:
        return self.n - sum(1 for _, pinned in self.blocks if not pinned)

    @property
    def pinned(self) -> frozenset[int]:
        return frozenset(e for elems, p in self.blocks if p for e in elems)

    def relabel(self, perm: Mapping[int, int]) -> "Configuration":
        return Configuration.make(
            self.n, [(tuple(perm[e] for e in elems), p) for elems, p in self.blocks])

    def __str__(self) -> str:
        parts = []
        for elems, pinned in self.blocks:
            s = "{" + ",".join(map(str, elems)) + "}"
            parts.append(s + "*" if pinned else s)
        return "[" + " ".join(parts) + "]"

    def to_json(self) -> list[dict]:
        return [{"elements": list(e), "pinned": p} for e, p in self.blocks]


@lru_cache(maxsize=None)
def _generators(c: Configuration) -> tuple[tuple, ...]:
    gens = []
    for elems, pinned in c.blocks:
        gens.extend(("diag", a, b) for a, b in zip(elems, elems[1:]))
        if pinned:
            gens.append(("point", elems[0]))
    return tuple(gens)


@lru_cache(maxsize=None)
def config_product(a: Configuration, b: Configuration) -> tuple[int, Configuration] | None:
    """Product of two configurations as ``(k, c)`` meaning ``(2 - 2g)^k * c``.

    Returns None when the product vanishes.
    """
    if a.n != b.n:
        raise AmbientError(f"mismatched ambient powers {a.n} and {b.n}")
    owner: dict[int, int] = {}
    elems: dict[int, set[int]] = {}
    pinned: dict[int, bool] = {}
    for bid, (es, p) in enumerate(a.blocks):
        elems[bid] = set(es)
        pinned[bid] = p
        for e in es:
            owner[e] = bid
    k = 0
    for gen in _generators(b):
        if gen[0] == "point":
            bid = owner[gen[1]]
            if pinned[bid]:
                return None
            pinned[bid] = True
            continue
        bi, bj = owner[gen[1]], owner[gen[2]]
        if bi == bj:
            if pinned[bi]:
                return None
            k += 1
            pinned[bi] = True
            continue
        if pinned[bi] and pinned[bj]:
            return None
        for e in elems[bj]:
            owner[e] = bi
        elems[bi] |= elems.pop(bj)
        pinned[bi] = pinned[bi] or pinned.pop(bj)
    return k, Configuration(a.n, _canonical_blocks((tuple(elems[b]), pinned[b]) for b in elems))


@lru_cache(maxsize=64)
def _excess_power(k: int) -> RatPoly:
    return RatPoly({(0, 0, 0): 2, (1, 0, 0): -2}) ** k


class ChowClass:
    """Finite RatPoly-linear combination of configurations on a fixed C^n."""

    __slots__ = ("n", "_terms")

    def __init__(self, n: int, terms: Mapping[Configuration, RatPoly] | None = None):
        self.n = n
        clean: dict[Configuration, RatPoly] = {}
        for c, coeff in (terms or {}).items():
            if c.n != n:
                raise AmbientError(f"configuration on C^{c.n} in a class on C^{n}")
            coeff = RatPoly.coerce(coeff)
            if coeff:
                clean[c] = clean[c] + coeff if c in clean else coeff
                if not clean[c]:
                    del clean[c]
        self._terms = clean

    @classmethod
    def _raw(cls, n: int, terms: dict) -> "ChowClass":
        obj = cls.__new__(cls)
        obj.n = n
        obj._terms = terms
        return obj

    @classmethod
    def zero(cls, n: int) -> "ChowClass":
        return cls._raw(n, {})

    @property
    def terms(self) -> dict[Configuration, RatPoly]:
        return dict(self._terms)

    def items(self) -> list[tuple[Configuration, RatPoly]]:
        """Terms in canonical order: by codimension, then block structure."""
        return sorted(self._terms.items(), key=lambda t: (t[0].codim, t[0].blocks))

    def __len__(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def coefficient(self, c: Configuration) -> RatPoly:
        return self._terms.get(c, RatPoly())

    def _same_n(self, other: "ChowClass") -> None:
        if other.n != self.n:
            raise AmbientError(f"mismatched ambient powers {self.n} and {other.n}")

    def __add__(self, other) -> "ChowClass":
        if not isinstance(other, ChowClass):
            if isinstance(other, (int, RatPoly)) or hasattr(other, "numerator"):
                other = fundamental(self.n) * RatPoly.coerce(other)
            else:
                return NotImplemented
        self._same_n(other)
        out = dict(self._terms)
        for c, v in other._terms.items():
            s = out[c] + v if c in out else v
            if s:
                out[c] = s
            else:
                out.pop(c, None)
        return ChowClass._raw(self.n, out)

    __radd__ = __add__

    def __neg__(self) -> "ChowClass":
        return ChowClass._raw(self.n, {c: -v for c, v in self._terms.items()})

    def __sub__(self, other) -> "ChowClass":
        return self + (-other)

    def __rsub__(self, other) -> "ChowClass":
        return (-self) + other

    def __mul__(self, other) -> "ChowClass":
        if isinstance(other, ChowClass):
            return multiply(self, other)
        try:
            s = RatPoly.coerce(other)
        except TypeError:
            return NotImplemented
        if not s:
            return ChowClass.zero(self.n)
        return ChowClass._raw(self.n, {c: v * s for c, v in self._terms.items()})

    __rmul__ = __mul__

    def __truediv__(self, other) -> "ChowClass":
        return self * (1 / RatPoly.coerce(other).constant_value())

    def __pow__(self, k: int) -> "ChowClass":
        return power(self, k)

    def __eq__(self, other) -> bool:
        if isinstance(other, ChowClass):
            return self.n == other.n and self._terms == other._terms
        return NotImplemented

    __hash__ = None

    def homogeneous_part(self, k: int) -> "ChowClass":
        return ChowClass._raw(self.n, {c: v for c, v in self._terms.items() if c.codim == k})

    def codims(self) -> set[int]:
        return {c.codim for c in self._terms}

    def relabel(self, perm: Mapping[int, int]) -> "ChowClass":
        return ChowClass(self.n, {c.relabel(perm): v for c, v in self._terms.items()})

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for c, v in self.items():
            coeff = str(v)
            if len(v.terms) > 1:
                coeff = f"({coeff})"
            parts.append(f"{coeff} · {c}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"ChowClass(n={self.n}, {self})"

    def to_json_terms(self) -> list[dict]:
        return [
            {"config": str(c), "blocks": c.to_json(), "codim": c.codim, "coeff": str(v)}
            for c, v in self.items()
        ]


# -- generators ------------------------------------------------------------

def _check_index(i: int, n: int) -> None:
    if not isinstance(i, int) or not 1 <= i <= n:
        raise AmbientError(f"index {i!r} out of range 1..{n}")


def fundamental(n: int) -> ChowClass:
    _check_n(n)
    return ChowClass._raw(n, {Configuration.fundamental(n): RatPoly.const(1)})


def point(i: int, n: int) -> ChowClass:
    """pr_i^*[x]."""
    _check_n(n)
    _check_index(i, n)
    blocks = [((j,), j == i) for j in range(1, n + 1)]
    return ChowClass._raw(n, {Configuration.make(n, blocks): RatPoly.const(1)})


def diagonal(i: int, j: int, n: int) -> ChowClass:
    """The pairwise diagonal {x_i = x_j}."""
    _check_n(n)
    _check_index(i, n)
    _check_index(j, n)
    if i == j:
        raise AmbientError(f"diagonal needs two distinct indices, got ({i}, {j})")
    blocks = [((i, j), False)] + [((k,), False) for k in range(1, n + 1) if k not in (i, j)]
    return ChowClass._raw(n, {Configuration.make(n, blocks): RatPoly.const(1)})


def eta(indices: Iterable[int], n: int) -> ChowClass:
    """Product of pr_i^*[x] over ``indices``; eta of the empty set is [C^n]."""
    _check_n(n)
    idx = set(indices)
    for i in idx:
        _check_index(i, n)
    blocks = [((j,), j in idx) for j in range(1, n + 1)]
    return ChowClass._raw(n, {Configuration.make(n, blocks): RatPoly.const(1)})


def small_diagonal(indices: Sequence[int], n: int) -> ChowClass:
    """Locus where all coordinates in ``indices`` coincide (free block)."""
    _check_n(n)
    idx = set(indices)
    for i in idx:
        _check_index(i, n)
    blocks = [(tuple(sorted(idx)), False)] if idx else []
    blocks += [((k,), False) for k in range(1, n + 1) if k not in idx]
    return ChowClass._raw(n, {Configuration.make(n, blocks): RatPoly.const(1)})


def symmetric_classes(n: int) -> tuple[ChowClass, ChowClass, ChowClass]:
    """``(H~, delta, delta')``: sum of point pullbacks, big diagonal, and the
    diagonals through the first factor."""
    _check_n(n)
    return _symmetric_classes(n)


@lru_cache(maxsize=None)
def _symmetric_classes(n: int) -> tuple[ChowClass, ChowClass, ChowClass]:
    H = ChowClass.zero(n)
    for i in range(1, n + 1):
        H = H + point(i, n)
    delta = ChowClass.zero(n)
    for i, j in itertools.combinations(range(1, n + 1), 2):
        delta = delta + diagonal(i, j, n)
    delta_prime = ChowClass.zero(n)
    for j in range(2, n + 1):
        delta_prime = delta_prime + diagonal(1, j, n)
    return H, delta, delta_prime


# -- ring operations --------------------------------------------------------

def multiply(a: ChowClass, b: ChowClass) -> ChowClass:
    if a.n != b.n:
        raise AmbientError(f"mismatched ambient powers {a.n} and {b.n}")
    out: dict[Configuration, RatPoly] = {}
    for ca, va in a._terms.items():
        for cb, vb in b._terms.items():
            prod = config_product(ca, cb)
            if prod is None:
                continue
            k, c = prod
            v = va * vb
            if k:
                v = v * _excess_power(k)
            out[c] = out[c] + v if c in out else v
    return ChowClass._raw(a.n, {c: v for c, v in out.items() if v})


def power(a: ChowClass, k: int) -> ChowClass:
    if not isinstance(k, int) or k < 0:
        raise ValueError(f"exponent must be a non-negative integer, got {k!r}")
    result = fundamental(a.n)
    for _ in range(k):
        result = multiply(result, a)
    return result


def integrate(a: ChowClass) -> RatPoly:
    """Degree of the zero-cycle part: the sum of coefficients of fully pinned
    configurations."""
    total = RatPoly()
    for c, v in a._terms.items():
        if c.codim == a.n:
            total = total + v
    return total


def pushforward_forget_first(a: ChowClass) -> ChowClass:
    """Push forward along C^n -> C^(n-1), dropping the first coordinate."""
    if a.n < 2:
        raise AmbientError("pushforward needs n >= 2")
    out: dict[Configuration, RatPoly] = {}
    for c, v in a._terms.items():
        blocks = []
        for elems, pinned in c.blocks:
            if 1 in elems:
                if len(elems) == 1:
                    if not pinned:
                        # positive-dimensional fibres
                        blocks = None
                        break
                    continue
                elems = tuple(e for e in elems if e != 1)
            blocks.append((tuple(e - 1 for e in elems), pinned))
        if blocks is None:
            continue
        new = Configuration.make(a.n - 1, blocks)
        out[new] = out[new] + v if new in out else v
    return ChowClass._raw(a.n - 1, {c: v for c, v in out.items() if v})


def pullback_insert_first(a: ChowClass) -> ChowClass:
    """Pull back along C^n -> C^(n-1) forgetting the first coordinate."""
    _check_n(a.n + 1)
    out = {}
    for c, v in a._terms.items():
        blocks = [((1,), False)] + [(tuple(e + 1 for e in elems), p) for elems, p in c.blocks]
        out[Configuration.make(a.n + 1, blocks)] = v
    return ChowClass._raw(a.n + 1, out)


# -- enumeration ------------------------------------------------------------

def set_partitions(items: Sequence[int], k: int | None = None) -> Iterator[list[tuple[int, ...]]]:
    """Set partitions of ``items`` (into exactly ``k`` blocks if given)."""
    if k is not None and not 0 <= k <= len(items):
        return
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    if k is None or k >= 1:
        for part in set_partitions(rest, None if k is None else k - 1):
            yield [(first,)] + part
    for part in set_partitions(rest, k):
        for i, block in enumerate(part):
            yield part[:i] + [(first,) + block] + part[i + 1:]


def configurations(n: int, codim: int | None = None) -> Iterator[Configuration]:
    """Every normal-form configuration on C^n, optionally of one codimension."""
    elems = range(1, n + 1)
    for m in range(n + 1):
        for pinned in itertools.combinations(elems, m):
            free = [e for e in elems if e not in pinned]
            # codim = m + (len(free) - free blocks)
            blocks = None if codim is None else len(free) + m - codim
            if blocks is not None and blocks < 0:
                continue
            for part in set_partitions(free, blocks):
                yield Configuration(
                    n, _canonical_blocks([((e,), True) for e in pinned] + [(b, False) for b in part]))
