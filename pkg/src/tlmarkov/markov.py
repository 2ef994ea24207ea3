"""The Markov bilinear form on chord diagrams.

Gluing a diagram to the mirror image of another closes the arcs into circles;
the pairing of the two diagrams is q**c where c counts those circles.  Every
point of 1..2n then carries exactly two arc-ends (one from each diagram), so
the circles are the connected components of the union multigraph, counted
here with a union-find.

The form extends bilinearly to formal combinations of diagrams
(:class:`DiagramVector`) with coefficients in Q(q), and is tabulated over the
canonical diagram basis as a Gram matrix (:class:`SquareMatrix`).  Key
operator identities, exercised by the property suite:

* <l_k a, l_k b> = q * <a, b>          (parallel insertion adds one circle)
* <l_{k+1} a, l_k b> = <a, b>          (staggered insertion adds none)
* q**c * <tau_k a, b> = <a, l_k b>     (adjunction; c from :func:`contract`)
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from fractions import Fraction
from types import MappingProxyType
from typing import Iterable, Mapping, Union

from .diagrams import (
    Matching,
    RestrictedSequence,
    enumerate_diagrams,
    insert_arc,
    matching_to_seq,
    seq_to_matching,
)
from .qpoly import RF_ONE, RF_ZERO, Polynomial, RationalFunction

Scalar = Union[int, Fraction, Polynomial, RationalFunction]

__all__ = [
    "PairingValue",
    "DiagramVector",
    "SquareMatrix",
    "pair_diagrams",
    "gram",
    "gram_exponents",
    "pair_vectors",
]


@dataclass(frozen=True)
class PairingValue:
    """The monomial q**exponent produced by pairing two diagrams."""

    exponent: int

    def __post_init__(self) -> None:
        if self.exponent < 0:
            raise ValueError("pairing exponent must be >= 0")

    @property
    def monomial(self) -> Polynomial:
        return Polynomial.monomial(self.exponent)

    @property
    def as_rational(self) -> RationalFunction:
        return RationalFunction.from_polynomial(self.monomial)

    def __str__(self) -> str:
        return str(self.monomial)


def pair_diagrams(a: Matching, b: Matching) -> PairingValue:
    """Count the circles of the glued configuration of a and the mirror of b.

    Symmetric in its arguments; a diagram paired with itself gives q**n.
    """
    if a.size != b.size:
        raise ValueError(f"size mismatch: {a.size} vs {b.size}")
    n2 = 2 * a.size
    parent = list(range(n2))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for m in (a, b):
        for i, j in m.arcs:
            ri, rj = find(i - 1), find(j - 1)
            if ri != rj:
                parent[ri] = rj

    circles = sum(1 for x in range(n2) if find(x) == x)
    assert circles <= a.size
    return PairingValue(circles)


def gram_exponents(n: int) -> tuple[tuple[int, ...], ...]:
    """Pairing exponents over enumerate_diagrams(n); the fast integer form of
    the Gram matrix used by verification and the determinant oracle."""
    basis = enumerate_diagrams(n)
    matchings = [seq_to_matching(s) for s in basis]
    size = len(basis)
    rows = [[0] * size for _ in range(size)]
    for i in range(size):
        for j in range(i, size):
            c = pair_diagrams(matchings[i], matchings[j]).exponent
            rows[i][j] = rows[j][i] = c
    return tuple(tuple(row) for row in rows)


@dataclass(frozen=True)
class SquareMatrix:
    """A square matrix over Q(q) indexed by an ordered diagram basis."""

    basis: tuple[RestrictedSequence, ...]
    entries: tuple[tuple[RationalFunction, ...], ...]

    def __post_init__(self) -> None:
        basis = tuple(self.basis)
        entries = tuple(tuple(row) for row in self.entries)
        object.__setattr__(self, "basis", basis)
        object.__setattr__(self, "entries", entries)
        if len(entries) != len(basis) or any(len(r) != len(basis) for r in entries):
            raise ValueError("entries must be square over the basis")

    @property
    def size(self) -> int:
        return len(self.basis)

    def index(self, s: RestrictedSequence) -> int:
        try:
            return self.basis.index(s)
        except ValueError:
            raise KeyError(f"{s} is not in the matrix basis") from None

    def entry(self, a: RestrictedSequence, b: RestrictedSequence) -> RationalFunction:
        return self.entries[self.index(a)][self.index(b)]

    def to_json(self, n: int | None = None) -> dict:
        obj = {
            "basis": [list(s.head_first) for s in self.basis],
            "entries": [[e.to_json() for e in row] for row in self.entries],
        }
        if n is not None:
            obj["n"] = n
        return obj

    @classmethod
    def from_json(cls, obj: dict) -> "SquareMatrix":
        basis = tuple(
            RestrictedSequence.from_head_first(vals) for vals in obj["basis"]
        )
        entries = tuple(
            tuple(RationalFunction.from_json(e) for e in row)
            for row in obj["entries"]
        )
        return cls(basis, entries)

    def to_csv(self) -> str:
        """Rows of rendered entries, labeled by the basis sequences."""
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow([""] + [str(s) for s in self.basis])
        for s, row in zip(self.basis, self.entries):
            writer.writerow([str(s)] + [str(e) for e in row])
        return buf.getvalue()


def gram(n: int) -> SquareMatrix:
    """Gram matrix of the pairing over enumerate_diagrams(n).

    Symmetric with diagonal q**n; filled for j >= i and mirrored.
    """
    if n < 0:
        raise ValueError("diagram size must be >= 0")
    basis = enumerate_diagrams(n)
    exponents = gram_exponents(n)
    cache: dict[int, RationalFunction] = {}
    rows = []
    for i in range(len(basis)):
        row = []
        for j in range(len(basis)):
            c = exponents[i][j]
            value = cache.get(c)
            if value is None:
                value = cache[c] = PairingValue(c).as_rational
            row.append(value)
        rows.append(tuple(row))
    return SquareMatrix(basis, tuple(rows))


def _coerce_scalar(value: Scalar) -> RationalFunction:
    if isinstance(value, RationalFunction):
        return value
    if isinstance(value, Polynomial):
        return RationalFunction.from_polynomial(value)
    if isinstance(value, (int, Fraction)):
        return RationalFunction.from_scalar(value)
    raise TypeError(f"cannot coerce {type(value).__name__} to a coefficient")


@dataclass(frozen=True)
class DiagramVector:
    """A formal Q(q)-combination of equal-size diagrams (sparse; no zeros)."""

    size: int
    coeffs: Mapping[RestrictedSequence, RationalFunction]

    def __post_init__(self) -> None:
        cleaned = {}
        for key, value in self.coeffs.items():
            if key.size != self.size:
                raise ValueError(
                    f"term {key} has size {key.size}, expected {self.size}"
                )
            value = _coerce_scalar(value)
            if not value.is_zero:
                cleaned[key] = value
        object.__setattr__(self, "coeffs", MappingProxyType(cleaned))

    @classmethod
    def zero(cls, size: int) -> "DiagramVector":
        return cls(size, {})

    @classmethod
    def basis_vector(cls, s: RestrictedSequence) -> "DiagramVector":
        return cls(s.size, {s: RF_ONE})

    @classmethod
    def from_terms(
        cls, size: int, terms: Iterable[tuple[RestrictedSequence, Scalar]]
    ) -> "DiagramVector":
        acc: dict[RestrictedSequence, RationalFunction] = {}
        for key, value in terms:
            acc[key] = acc.get(key, RF_ZERO) + _coerce_scalar(value)
        return cls(size, acc)

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other: "DiagramVector") -> "DiagramVector":
        if self.size != other.size:
            raise ValueError(f"size mismatch: {self.size} vs {other.size}")
        acc = dict(self.coeffs)
        for key, value in other.coeffs.items():
            acc[key] = acc.get(key, RF_ZERO) + value
        return DiagramVector(self.size, acc)

    def __sub__(self, other: "DiagramVector") -> "DiagramVector":
        return self + (-other)

    def __neg__(self) -> "DiagramVector":
        return DiagramVector(self.size, {k: -v for k, v in self.coeffs.items()})

    def scaled(self, scalar: Scalar) -> "DiagramVector":
        scalar = _coerce_scalar(scalar)
        if scalar.is_zero:
            return DiagramVector.zero(self.size)
        return DiagramVector(
            self.size, {k: v * scalar for k, v in self.coeffs.items()}
        )

    def apply_insert(self, k: int) -> "DiagramVector":
        """Linear extension of l_k, acting diagram-wise through matchings."""
        terms = {}
        for key, value in self.coeffs.items():
            image = matching_to_seq(insert_arc(seq_to_matching(key), k))
            terms[image] = value
        return DiagramVector(self.size + 1, terms)

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = [f"({v})*e[{k}]" for k, v in sorted(self.coeffs.items())]
        return " + ".join(parts)


def pair_vectors(
    v: DiagramVector, w: DiagramVector, matrix: SquareMatrix
) -> RationalFunction:
    """Bilinear extension of the pairing: sum of v[a]*w[b]*<a, b>."""
    index = {s: i for i, s in enumerate(matrix.basis)}
    acc = RF_ZERO
    for a, ca in v.coeffs.items():
        if a not in index:
            raise KeyError(f"{a} is not in the Gram basis")
        row = matrix.entries[index[a]]
        for b, cb in w.coeffs.items():
            if b not in index:
                raise KeyError(f"{b} is not in the Gram basis")
            acc = acc + ca * cb * row[index[b]]
    return acc
