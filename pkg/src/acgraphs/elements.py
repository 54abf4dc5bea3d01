"""Concrete group elements: permutations, 2x2 matrices over a prime field,
and tuples of residues of an abelian group.

Conventions, fixed once:

* Permutations compose left-to-right: ``(a * b)(x) == b(a(x))``.
* Conjugation is ``a ^ w = w^-1 * a * w`` for every variant.
* Points and residues are 0-based internally; human-facing cycle notation
  is 1-based (``format_cycles``), and the cycle parser accepts both bases
  (a 0 in the input marks it as 0-based).

Elements are immutable and hashable; mixing variants (or degrees/moduli)
in arithmetic raises ``TypeError``.
"""

from __future__ import annotations

import re
from typing import Iterable, Sequence


class Permutation:
    """A permutation of {0..n-1} stored as the tuple of point images."""

    __slots__ = ("images",)

    def __init__(self, images: Iterable[int]):
        images = tuple(images)
        n = len(images)
        if len(set(images)) != n or any(not (0 <= i < n) for i in images):
            raise ValueError(f"not a bijection on 0..{n - 1}: {images}")
        object.__setattr__(self, "images", images)

    def __setattr__(self, name, value):
        raise AttributeError("Permutation is immutable")

    @property
    def degree(self) -> int:
        return len(self.images)

    def __mul__(self, other: "Permutation") -> "Permutation":
        if not isinstance(other, Permutation):
            raise TypeError(f"cannot multiply Permutation by {type(other).__name__}")
        if other.degree != self.degree:
            raise TypeError(f"degree mismatch: {self.degree} vs {other.degree}")
        b = other.images
        return Permutation(b[i] for i in self.images)

    def inverse(self) -> "Permutation":
        r = [0] * len(self.images)
        for i, j in enumerate(self.images):
            r[j] = i
        return Permutation(r)

    def conjugate_by(self, w: "Permutation") -> "Permutation":
        return w.inverse() * self * w

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def __call__(self, point: int) -> int:
        return self.images[point]

    def cycles(self, *, fixed_points: bool = False) -> list[tuple[int, ...]]:
        """Disjoint cycle decomposition, each cycle led by its minimum."""
        n = len(self.images)
        seen = [False] * n
        out = []
        for start in range(n):
            if seen[start]:
                continue
            cyc = []
            j = start
            while not seen[j]:
                seen[j] = True
                cyc.append(j)
                j = self.images[j]
            if len(cyc) > 1 or fixed_points:
                out.append(tuple(cyc))
        return out

    def cycle_count(self) -> int:
        """Number of cycles, counting fixed points as 1-cycles."""
        return len(self.cycles(fixed_points=True))

    def sign(self) -> int:
        """+1 for even, -1 for odd."""
        return 1 if (self.degree - self.cycle_count()) % 2 == 0 else -1

    def sort_key(self):
        return self.images

    def to_json(self) -> dict:
        return {"type": "permutation", "images": list(self.images)}

    def __eq__(self, other):
        return isinstance(other, Permutation) and self.images == other.images

    def __hash__(self):
        return hash(self.images)

    def __repr__(self):
        return f"Permutation({list(self.images)})"

    def __str__(self):
        return format_cycles(self)


class MatrixGF:
    """A 2x2 matrix of determinant 1 over the prime field F_p.

    Entries are stored row-major as (a, b, c, d) reduced into [0, p).
    """

    __slots__ = ("entries", "modulus")

    def __init__(self, entries: Iterable[int], modulus: int):
        a, b, c, d = (int(x) % modulus for x in entries)
        if (a * d - b * c) % modulus != 1:
            raise ValueError(f"determinant is not 1 mod {modulus}: {(a, b, c, d)}")
        object.__setattr__(self, "entries", (a, b, c, d))
        object.__setattr__(self, "modulus", modulus)

    def __setattr__(self, name, value):
        raise AttributeError("MatrixGF is immutable")

    def __mul__(self, other: "MatrixGF") -> "MatrixGF":
        if not isinstance(other, MatrixGF):
            raise TypeError(f"cannot multiply MatrixGF by {type(other).__name__}")
        if other.modulus != self.modulus:
            raise TypeError(f"modulus mismatch: {self.modulus} vs {other.modulus}")
        p = self.modulus
        a, b, c, d = self.entries
        e, f, g, h = other.entries
        return MatrixGF(
            (a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h), p
        )

    def inverse(self) -> "MatrixGF":
        # det == 1, so the inverse is the adjugate
        a, b, c, d = self.entries
        return MatrixGF((d, -b, -c, a), self.modulus)

    def conjugate_by(self, w: "MatrixGF") -> "MatrixGF":
        return w.inverse() * self * w

    def is_identity(self) -> bool:
        return self.entries == (1, 0, 0, 1)

    def sort_key(self):
        return self.entries

    def to_json(self) -> dict:
        return {"type": "matrix", "entries": list(self.entries), "modulus": self.modulus}

    def __eq__(self, other):
        return (
            isinstance(other, MatrixGF)
            and self.modulus == other.modulus
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash((self.entries, self.modulus))

    def __repr__(self):
        a, b, c, d = self.entries
        return f"MatrixGF([[{a},{b}],[{c},{d}]] mod {self.modulus})"


class AbelianTuple:
    """An element of Z_{e_1} x ... x Z_{e_r}, written additively inside."""

    __slots__ = ("residues", "moduli")

    def __init__(self, residues: Iterable[int], moduli: Iterable[int]):
        moduli = tuple(int(m) for m in moduli)
        if any(m < 1 for m in moduli):
            raise ValueError(f"moduli must be positive: {moduli}")
        residues = tuple(int(r) % m for r, m in zip(residues, moduli, strict=True))
        object.__setattr__(self, "residues", residues)
        object.__setattr__(self, "moduli", moduli)

    def __setattr__(self, name, value):
        raise AttributeError("AbelianTuple is immutable")

    def __mul__(self, other: "AbelianTuple") -> "AbelianTuple":
        if not isinstance(other, AbelianTuple):
            raise TypeError(f"cannot multiply AbelianTuple by {type(other).__name__}")
        if other.moduli != self.moduli:
            raise TypeError(f"moduli mismatch: {self.moduli} vs {other.moduli}")
        return AbelianTuple(
            (x + y for x, y in zip(self.residues, other.residues)), self.moduli
        )

    def inverse(self) -> "AbelianTuple":
        return AbelianTuple((-x for x in self.residues), self.moduli)

    def conjugate_by(self, w: "AbelianTuple") -> "AbelianTuple":
        if not isinstance(w, AbelianTuple) or w.moduli != self.moduli:
            raise TypeError("conjugator from a different group")
        return self  # abelian

    def is_identity(self) -> bool:
        return all(x == 0 for x in self.residues)

    def sort_key(self):
        return self.residues

    def to_json(self) -> dict:
        return {
            "type": "abelian",
            "residues": list(self.residues),
            "moduli": list(self.moduli),
        }

    def __eq__(self, other):
        return (
            isinstance(other, AbelianTuple)
            and self.moduli == other.moduli
            and self.residues == other.residues
        )

    def __hash__(self):
        return hash((self.residues, self.moduli))

    def __repr__(self):
        return f"AbelianTuple({list(self.residues)} mod {list(self.moduli)})"


GroupElement = Permutation | MatrixGF | AbelianTuple


def mul(a: GroupElement, b: GroupElement) -> GroupElement:
    return a * b


def inv(a: GroupElement) -> GroupElement:
    return a.inverse()


def conj(a: GroupElement, w: GroupElement) -> GroupElement:
    """Conjugate a by w: returns w^-1 * a * w."""
    return a.conjugate_by(w)


def identity_like(a: GroupElement) -> GroupElement:
    if isinstance(a, Permutation):
        return Permutation(range(a.degree))
    if isinstance(a, MatrixGF):
        return MatrixGF((1, 0, 0, 1), a.modulus)
    if isinstance(a, AbelianTuple):
        return AbelianTuple((0,) * len(a.moduli), a.moduli)
    raise TypeError(f"not a group element: {type(a).__name__}")


def cycle_count(a: GroupElement) -> int:
    """Cycle count of a permutation (fixed points count as 1-cycles)."""
    if not isinstance(a, Permutation):
        raise TypeError(f"cycle_count needs a permutation, got {type(a).__name__}")
    return a.cycle_count()


def element_from_json(data: dict) -> GroupElement:
    kind = data.get("type")
    if kind == "permutation":
        return Permutation(data["images"])
    if kind == "matrix":
        return MatrixGF(data["entries"], data["modulus"])
    if kind == "abelian":
        return AbelianTuple(data["residues"], data["moduli"])
    raise ValueError(f"unknown element payload: {data!r}")


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text: str, degree: int) -> Permutation:
    """Parse cycle notation like ``(0 1)(2 3)`` or ``(1 2)(3 4)``.

    Entries may be separated by spaces or commas.  If any point 0 appears
    the input is taken as 0-based, otherwise as 1-based; ``()`` (or an
    all-whitespace string) is the identity.
    """
    text = text.strip()
    if text in ("", "()", "id", "identity"):
        return Permutation(range(degree))
    body = _CYCLE_RE.findall(text)
    leftover = _CYCLE_RE.sub("", text).strip()
    if not body or leftover:
        raise ValueError(f"bad cycle notation: {text!r}")
    cycles = []
    for chunk in body:
        pts = [int(t) for t in re.split(r"[,\s]+", chunk.strip()) if t]
        if pts:
            cycles.append(pts)
    flat = [p for c in cycles for p in c]
    base = 0 if 0 in flat else 1
    images = list(range(degree))
    seen: set[int] = set()
    for cyc in cycles:
        pts = [p - base for p in cyc]
        if any(not (0 <= p < degree) for p in pts) or len(set(pts)) != len(pts):
            raise ValueError(f"cycle out of range or repeated point: {cyc}")
        if seen.intersection(pts):
            raise ValueError(f"cycles are not disjoint: {text!r}")
        seen.update(pts)
        for a, b in zip(pts, pts[1:] + pts[:1]):
            images[a] = b
    return Permutation(images)


def format_cycles(perm: Permutation) -> str:
    """1-based cycle notation; the identity renders as ``()``."""
    cycles = perm.cycles()
    if not cycles:
        return "()"
    return "".join("(" + " ".join(str(p + 1) for p in c) + ")" for c in cycles)


def format_element(el: GroupElement) -> str:
    if isinstance(el, Permutation):
        return format_cycles(el)
    if isinstance(el, MatrixGF):
        a, b, c, d = el.entries
        return f"[[{a},{b}],[{c},{d}]]"
    return "(" + ",".join(str(r) for r in el.residues) + ")"


def parse_matrix(text: str, modulus: int) -> MatrixGF:
    """Parse ``[[a,b],[c,d]]`` (whitespace tolerated)."""
    nums = [int(t) for t in re.findall(r"-?\d+", text)]
    if len(nums) != 4:
        raise ValueError(f"bad matrix literal: {text!r}")
    return MatrixGF(nums, modulus)


def parse_residues(text: str, moduli: Sequence[int]) -> AbelianTuple:
    """Parse ``(r1,r2,...)`` against the given moduli."""
    nums = [int(t) for t in re.findall(r"-?\d+", text)]
    if len(nums) != len(moduli):
        raise ValueError(f"expected {len(moduli)} residues in {text!r}")
    return AbelianTuple(nums, moduli)
