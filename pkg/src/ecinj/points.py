"""Streams of rational points: generator-orbit enumeration and
height-bounded brute-force search.

A point stream is a lazy iterator of (label, Point) pairs.  Orbit labels
record provenance: the integer m for m*G when the torsion list is empty,
or (m, k) for m*G + T_k.  Brute-force labels are the string "search".
Streams are deterministic: the same spec always yields the same sequence.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, isqrt
from typing import Iterable, Iterator

from .curve import Curve, INFINITY, Point, add, negate, on_curve, scalar_mul
from .rational import exact_sqrt, height

# Checkable cap on caller-supplied torsion orders (not derived here).
MAX_TORSION_ORDER = 12


@dataclass(frozen=True)
class OrbitSpec:
    generator: Point
    bound: int
    torsion: tuple = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "torsion", tuple(self.torsion))

    def validate(self) -> None:
        g = self.generator
        if g.is_infinity:
            raise ValueError("trivial generator")
        if not on_curve(g.curve, g):
            raise ValueError(f"generator {g} is not on its curve")
        if self.bound < 0:
            raise ValueError("bound must be >= 0")
        if self.torsion:
            if sum(1 for t in self.torsion if t.is_infinity) != 1:
                raise ValueError("torsion list must contain the identity exactly once")
            for t in self.torsion:
                if t.is_infinity:
                    continue
                if not on_curve(g.curve, t):
                    raise ValueError(f"torsion point {t} is not on the curve")
                if _order_exceeds(t, MAX_TORSION_ORDER):
                    raise ValueError(
                        f"claimed torsion point {t} has order > {MAX_TORSION_ORDER}"
                    )

    def config_dict(self) -> dict:
        return {
            "generator": str(self.generator),
            "bound": self.bound,
            "torsion": [str(t) for t in self.torsion],
        }


def _order_exceeds(p: Point, cap: int) -> bool:
    q = p
    for _ in range(cap):
        if q.is_infinity:
            return False
        q = add(q, p)
    return not q.is_infinity


def orbit(spec: OrbitSpec) -> Iterator[tuple]:
    """Yield (label, m*G + T) for 0 < |m| <= bound in order m = 1, -1, 2, -2, ...

    Multiples are built incrementally (each (m+1)*G is one addition), which
    matches scalar_mul by construction and is far cheaper than recomputing.
    The identity is never emitted.
    """
    spec.validate()
    g = spec.generator
    translates = spec.torsion if spec.torsion else (INFINITY,)
    mg = g
    for m in range(1, spec.bound + 1):
        if m > 1:
            mg = add(mg, g)
        neg_mg = negate(mg)
        for sign, base in ((m, mg), (-m, neg_mg)):
            for k, t in enumerate(translates):
                pt = base if t.is_infinity else add(base, t)
                if pt.is_infinity:
                    continue
                label = sign if not spec.torsion else (sign, k)
                yield (label, pt)


def brute_force_points(c: Curve, h_bound: int, prune=None) -> Iterator[tuple]:
    """All affine points (x, +-y) with height(x) <= h_bound.

    Scans canonical x = p/q and tests x^3 + ax + b for a rational square.
    When a and b are integers, x-denominators of points are perfect
    squares, so the scan restricts q to squares (`prune`); pass
    prune=False to force the unpruned scan (used to verify the pruning).
    Independent oracle for orbit(): shares no code with the group law.
    """
    if prune is None:
        prune = c.a.denominator == 1 and c.b.denominator == 1
    for x in x_candidates(h_bound, squares_only=prune):
        s = exact_sqrt(c.rhs(x))
        if s is None:
            continue
        yield ("search", Point(c, x, s))
        if s != 0:
            yield ("search", Point(c, x, -s))


def x_candidates(h_bound: int, squares_only: bool = False) -> Iterator[Fraction]:
    """Canonical rationals of height <= h_bound in a fixed deterministic order:
    increasing height, then |numerator|, positive before negative, then denominator."""
    for h in range(1, h_bound + 1):
        level = []
        for q in range(1, h + 1):
            if squares_only and isqrt(q) ** 2 != q:
                continue
            for p in range(-h, h + 1):
                if max(abs(p), q) != h or gcd(abs(p), q) != 1:
                    continue
                level.append(Fraction(p, q))
        level.sort(key=lambda r: (abs(r.numerator), r.numerator < 0, r.denominator))
        yield from level


def rationals_by_height(h_bound: int) -> Iterator[Fraction]:
    """All canonical rationals of height <= h_bound (same order as x_candidates)."""
    return x_candidates(h_bound, squares_only=False)


def pair_stream(stream: Iterable[tuple]) -> Iterator[tuple]:
    """All ordered pairs from a point stream, row-major in stream order.

    The stream is materialized once (it is the row *and* column index) but
    the |s|^2 pairs themselves are generated lazily and never stored.
    """
    items = list(stream)
    for left in items:
        for right in items:
            yield (left, right)
