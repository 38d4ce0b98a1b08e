"""Truncated Magnus expansion and filtration invariants of automorphisms.

A word w maps to a noncommutative power series by x_i -> 1 + X_i and
x_i^-1 -> 1 - X_i + X_i^2 - ..., truncated above an explicit degree
cutoff.  The expansion of x_i^-1 phi(x_i) detects how deep phi sits in
the filtration by kernels of the actions on the nilpotent quotients:
its terms vanish in degrees 1..k exactly when phi acts trivially on
F_n modulo the (k+1)-st lower central term.  Coefficients stay integral
on group elements; everything is exact.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from . import lie
from .autf import FreeWord
from .lie import LieElement, is_lie_element  # re-exported check

__all__ = [
    "TruncatedSeries",
    "magnus_expand",
    "DepthReport",
    "DepthError",
    "johnson_depth",
    "johnson_image",
    "JohnsonImage",
    "is_lie_element",
]


class TruncatedSeries:
    """Element of the free associative algebra on X_1..X_n modulo degree > K."""

    __slots__ = ("rank", "cutoff", "coeffs")

    def __init__(self, rank, cutoff, coeffs=()):
        if cutoff < 1:
            raise ValueError("cutoff must be at least 1")
        coeffs = dict(coeffs)
        for mono, c in list(coeffs.items()):
            if len(mono) > cutoff:
                raise ValueError("stored monomial exceeds the cutoff")
            if not c:
                del coeffs[mono]
        object.__setattr__(self, "rank", rank)
        object.__setattr__(self, "cutoff", cutoff)
        object.__setattr__(self, "coeffs", coeffs)

    def __setattr__(self, name, value):
        raise AttributeError("TruncatedSeries is immutable")

    @classmethod
    def one(cls, rank, cutoff):
        return cls(rank, cutoff, {(): 1})

    @classmethod
    def generator(cls, rank, cutoff, i):
        return cls(rank, cutoff, {(): 1, (i,): 1})

    @property
    def constant_term(self):
        return self.coeffs.get((), 0)

    def homogeneous_part(self, d):
        return {k: v for k, v in self.coeffs.items() if len(k) == d}

    def lowest_positive_degree(self):
        degrees = [len(k) for k in self.coeffs if k]
        return min(degrees) if degrees else None

    def __eq__(self, other):
        return (
            isinstance(other, TruncatedSeries)
            and (self.rank, self.cutoff) == (other.rank, other.cutoff)
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.rank, self.cutoff, frozenset(self.coeffs.items())))

    def __add__(self, other):
        self._check(other)
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            s = out.get(k, 0) + v
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return TruncatedSeries(self.rank, self.cutoff, out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        if not c:
            return TruncatedSeries(self.rank, self.cutoff, {})
        return TruncatedSeries(
            self.rank, self.cutoff, {k: c * v for k, v in self.coeffs.items()}
        )

    def __mul__(self, other):
        self._check(other)
        K = self.cutoff
        out = {}
        for ka, va in self.coeffs.items():
            la = len(ka)
            for kb, vb in other.coeffs.items():
                if la + len(kb) > K:
                    continue
                k = ka + kb
                s = out.get(k, 0) + va * vb
                if s:
                    out[k] = s
                else:
                    out.pop(k, None)
        return TruncatedSeries(self.rank, self.cutoff, out)

    def _check(self, other):
        if (self.rank, self.cutoff) != (other.rank, other.cutoff):
            raise ValueError("rank or cutoff mismatch")

    def __repr__(self):
        n_terms = len(self.coeffs)
        return f"TruncatedSeries(rank={self.rank}, cutoff={self.cutoff}, {n_terms} terms)"


def _mul_letter(coeffs, i, sign, K):
    """Multiply a coefficient dict on the right by the series of one letter."""
    out = {}
    for mono, c in coeffs.items():
        room = K - len(mono)
        if sign == 1:
            # 1 + X_i
            s = out.get(mono, 0) + c
            if s:
                out[mono] = s
            else:
                out.pop(mono, None)
            if room >= 1:
                k = mono + (i,)
                s = out.get(k, 0) + c
                if s:
                    out[k] = s
                else:
                    out.pop(k, None)
        else:
            # 1 - X_i + X_i^2 - ...
            sgn = 1
            for t in range(room + 1):
                k = mono + (i,) * t
                s = out.get(k, 0) + sgn * c
                if s:
                    out[k] = s
                else:
                    out.pop(k, None)
                sgn = -sgn
    return out


def magnus_expand(w, cutoff):
    """Image of the word w under the truncated Magnus embedding."""
    if cutoff < 1:
        raise ValueError("cutoff must be at least 1")
    coeffs = {(): 1}
    for i, sign in w.letters:
        coeffs = _mul_letter(coeffs, i, sign, cutoff)
    return TruncatedSeries(w.rank, cutoff, coeffs)


@dataclass(frozen=True)
class DepthReport:
    """Filtration depth bounded by a cutoff: an exact value or 'at least'."""

    cutoff: int
    value: int | None  # None means every tested degree vanished

    @property
    def label(self):
        return str(self.value) if self.value is not None else f">={self.cutoff}"

    def at_least(self, k):
        return self.value is None or self.value >= k

    def __str__(self):
        return self.label


class DepthError(ValueError):
    """A required vanishing degree fails; carries the offending data."""

    def __init__(self, index, degree):
        self.index = index
        self.degree = degree
        super().__init__(
            f"expansion of x{index}^-1 phi(x{index}) has a nonzero term "
            f"in degree {degree}"
        )


def _deviation_series(phi, i, cutoff):
    """Expansion of x_i^-1 phi(x_i), or None if x_i is fixed."""
    img = phi.images[i - 1]
    if img.letters == ((i, 1),):
        return None
    w = FreeWord.generator(phi.rank, i).inverse() * img
    return magnus_expand(w, cutoff)


def johnson_depth(phi, cutoff):
    """Largest k < cutoff with all deviation terms vanishing in degrees 1..k.

    Returns DepthReport(cutoff, None) when every tested degree vanishes,
    which is reported as ">=cutoff".  Depth 0 means phi moves the
    abelianization, i.e. phi is not IA.
    """
    if cutoff < 2:
        raise ValueError("cutoff must be at least 2")
    lowest = None
    for i in range(1, phi.rank + 1):
        s = _deviation_series(phi, i, cutoff)
        if s is None:
            continue
        d = s.lowest_positive_degree()
        if d is not None and (lowest is None or d < lowest):
            lowest = d
    if lowest is None:
        return DepthReport(cutoff, None)
    return DepthReport(cutoff, lowest - 1)


class JohnsonImage:
    """Degree-k invariant of an automorphism: one Lie value per moved index.

    Represents sum_i e_i^* (x) (degree k+1 part of the expansion of
    x_i^-1 phi(x_i)), with the Lie parts in Lyndon coordinates.
    """

    __slots__ = ("rank", "degree", "components")

    def __init__(self, rank, degree, components=()):
        components = dict(components)
        for i, v in list(components.items()):
            if not isinstance(v, LieElement):
                raise TypeError("components must be LieElements")
            if v.rank != rank or v.degree != degree + 1:
                raise ValueError("component rank or degree mismatch")
            if not v:
                del components[i]
        object.__setattr__(self, "rank", rank)
        object.__setattr__(self, "degree", degree)
        object.__setattr__(self, "components", components)

    def __setattr__(self, name, value):
        raise AttributeError("JohnsonImage is immutable")

    def __bool__(self):
        return bool(self.components)

    def __eq__(self, other):
        return (
            isinstance(other, JohnsonImage)
            and (self.rank, self.degree) == (other.rank, other.degree)
            and self.components == other.components
        )

    def __hash__(self):
        return hash((self.rank, self.degree, frozenset(self.components.items())))

    def __add__(self, other):
        if (self.rank, self.degree) != (other.rank, other.degree):
            raise ValueError("rank or degree mismatch")
        out = dict(self.components)
        for i, v in other.components.items():
            s = out[i] + v if i in out else v
            if s:
                out[i] = s
            else:
                out.pop(i, None)
        return JohnsonImage(self.rank, self.degree, out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        return JohnsonImage(
            self.rank, self.degree, {i: v.scale(c) for i, v in self.components.items()}
        )

    def to_mk_vector(self):
        from . import exactlin

        space = exactlin.MkSpace(self.rank, self.degree)
        coords = {}
        for i, v in self.components.items():
            for w, c in v.coords.items():
                coords[(i, w)] = Fraction(c)
        return exactlin.TensorVector(space, coords)

    def to_hom_wedge2_vector(self):
        """Degree-1 images as Hom(V, wedge^2 V) vectors.

        Length-2 Lyndon words (a, b) with a < b are exactly the wedge
        pairs, so the identification is coordinatewise.
        """
        if self.degree != 1:
            raise ValueError("only degree-1 images land in Hom(V, wedge^2 V)")
        from . import exactlin

        space = exactlin.HomWedgeSpace(self.rank)
        coords = {}
        for i, v in self.components.items():
            for (a, b), c in v.coords.items():
                coords[(i, (a, b))] = Fraction(c)
        return exactlin.TensorVector(space, coords)

    def to_json(self):
        rows = []
        for i in sorted(self.components):
            for w, c in sorted(self.components[i].coords.items()):
                rows.append(
                    {
                        "dual_index": i,
                        "lyndon_word": lie.word_to_string(w),
                        "coefficient": str(Fraction(c)),
                    }
                )
        return json.dumps(
            {"rank": self.rank, "degree": self.degree, "terms": rows}, sort_keys=True
        )

    @classmethod
    def from_json(cls, text):
        data = json.loads(text)
        rank, degree = data["rank"], data["degree"]
        per_index = {}
        for row in data["terms"]:
            w = lie.word_from_string(row["lyndon_word"])
            per_index.setdefault(row["dual_index"], {})[w] = Fraction(
                row["coefficient"]
            )
        components = {
            i: LieElement(rank, degree + 1, coords) for i, coords in per_index.items()
        }
        return cls(rank, degree, components)

    def __repr__(self):
        return f"JohnsonImage(rank={self.rank}, degree={self.degree}, moved={sorted(self.components)})"


def johnson_image(phi, k):
    """Degree-k image of phi, additive on products of depth >= k maps.

    Requires every deviation series to vanish in degrees 1..k; violations
    raise DepthError with the offending index and degree.  The extracted
    degree-(k+1) parts are checked against the Dynkin criterion, which the
    theory guarantees for genuine depth >= k automorphisms.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    cutoff = k + 1
    components = {}
    for i in range(1, phi.rank + 1):
        s = _deviation_series(phi, i, cutoff)
        if s is None:
            continue
        low = s.lowest_positive_degree()
        if low is not None and low <= k:
            raise DepthError(i, low)
        part = s.homogeneous_part(k + 1)
        if not part:
            continue
        components[i] = lie.lie_from_tensor_coords(
            {m: Fraction(c) for m, c in part.items()}, phi.rank, k + 1
        )
    return JohnsonImage(phi.rank, k, components)
