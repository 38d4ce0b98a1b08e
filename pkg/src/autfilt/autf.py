"""Words and automorphisms of the free group F_n.

Letters are pairs (i, s) with i in 1..n and s = +1 or -1.  Words are
stored freely reduced at all times; equality of words is free equality.
Automorphisms carry an explicit inverse witness, so composition,
inversion and conjugation are cheap and never require a search.

Conventions used throughout the package:

* composition acts on the left: (phi * psi)(w) = phi(psi(w)),
* conjugation is phi ** g = g^-1 * phi * g,
* the group commutator is [g, h] = g^-1 * h^-1 * g * h.
"""

from __future__ import annotations

import re
from fractions import Fraction


def reduce_letters(letters):
    """Freely reduce a letter sequence with a stack pass."""
    out = []
    for i, s in letters:
        if out and out[-1][0] == i and out[-1][1] == -s:
            out.pop()
        else:
            out.append((i, s))
    return tuple(out)


class FreeWord:
    """A freely reduced word in F_n, immutable after construction."""

    __slots__ = ("rank", "letters")

    def __init__(self, rank, letters=()):
        letters = tuple((int(i), int(s)) for i, s in letters)
        for i, s in letters:
            if not 1 <= i <= rank:
                raise ValueError(f"letter index {i} out of range 1..{rank}")
            if s not in (1, -1):
                raise ValueError(f"letter sign must be +1 or -1, got {s}")
        object.__setattr__(self, "rank", rank)
        object.__setattr__(self, "letters", reduce_letters(letters))

    def __setattr__(self, name, value):
        raise AttributeError("FreeWord is immutable")

    @classmethod
    def generator(cls, rank, i, sign=1):
        return cls(rank, ((i, sign),))

    @classmethod
    def identity(cls, rank):
        return cls(rank)

    @property
    def is_identity(self):
        return not self.letters

    def __len__(self):
        return len(self.letters)

    def __mul__(self, other):
        if self.rank != other.rank:
            raise ValueError("rank mismatch")
        return FreeWord(self.rank, self.letters + other.letters)

    def inverse(self):
        return FreeWord(self.rank, tuple((i, -s) for i, s in reversed(self.letters)))

    def __eq__(self, other):
        return (
            isinstance(other, FreeWord)
            and self.rank == other.rank
            and self.letters == other.letters
        )

    def __hash__(self):
        return hash((self.rank, self.letters))

    def __repr__(self):
        return f"FreeWord({self.rank}, {self.tokens()!r})"

    def tokens(self):
        return " ".join(f"x{i}" if s == 1 else f"x{i}^-1" for i, s in self.letters)


def word(rank, *signed_indices):
    """Build a word from signed indices, e.g. word(3, 1, -2) = x1 x2^-1."""
    return FreeWord(rank, tuple((abs(v), 1 if v > 0 else -1) for v in signed_indices))


def word_commutator(u, v):
    """[u, v] = u^-1 v^-1 u v as a reduced word."""
    return u.inverse() * v.inverse() * u * v


def left_normed_word_commutator(words):
    """[w1, w2, ..., wk] = [[[w1, w2], w3], ..., wk]."""
    words = list(words)
    if not words:
        raise ValueError("need at least one word")
    acc = words[0]
    for w in words[1:]:
        acc = word_commutator(acc, w)
    return acc


def _apply_images(images, w):
    """Substitute images[i-1] for x_i in the word w."""
    rank = images[0].rank if images else w.rank
    out = []
    for i, s in w.letters:
        img = images[i - 1].letters
        if s == 1:
            out.extend(img)
        else:
            out.extend((j, -t) for j, t in reversed(img))
    return FreeWord(rank, out)


class FreeAutomorphism:
    """An automorphism of F_n with a mandatory inverse witness.

    The constructor verifies that the witness really inverts the map on
    every basis element, so values of this type are automorphisms by
    construction, not merely endomorphisms.
    """

    __slots__ = ("rank", "images", "inverse_images")

    def __init__(self, rank, images, inverse_images, check=True):
        images = tuple(images)
        inverse_images = tuple(inverse_images)
        if len(images) != rank or len(inverse_images) != rank:
            raise ValueError("need exactly one image per basis element")
        for w in images + inverse_images:
            if w.rank != rank:
                raise ValueError("rank mismatch among images")
        if check:
            for i in range(1, rank + 1):
                xi = FreeWord.generator(rank, i)
                if _apply_images(images, inverse_images[i - 1]) != xi:
                    raise ValueError("inverse witness fails on x%d (forward)" % i)
                if _apply_images(inverse_images, images[i - 1]) != xi:
                    raise ValueError("inverse witness fails on x%d (backward)" % i)
        object.__setattr__(self, "rank", rank)
        object.__setattr__(self, "images", images)
        object.__setattr__(self, "inverse_images", inverse_images)

    def __setattr__(self, name, value):
        raise AttributeError("FreeAutomorphism is immutable")

    def apply(self, w):
        if w.rank != self.rank:
            raise ValueError("rank mismatch")
        return _apply_images(self.images, w)

    __call__ = apply

    def compose(self, other):
        """self after other: (self.compose(other))(w) = self(other(w))."""
        if self.rank != other.rank:
            raise ValueError("rank mismatch")
        images = tuple(_apply_images(self.images, w) for w in other.images)
        inverse_images = tuple(
            _apply_images(other.inverse_images, w) for w in self.inverse_images
        )
        return FreeAutomorphism(self.rank, images, inverse_images, check=False)

    __mul__ = compose

    def inverse(self):
        return FreeAutomorphism(self.rank, self.inverse_images, self.images, check=False)

    def conjugate(self, g):
        """self ** g = g^-1 * self * g (apply g first)."""
        return g.inverse().compose(self).compose(g)

    __pow__ = None  # use .conjugate to avoid sign confusion with integer powers

    def __eq__(self, other):
        return (
            isinstance(other, FreeAutomorphism)
            and self.rank == other.rank
            and self.images == other.images
        )

    def __hash__(self):
        return hash((self.rank, self.images))

    @property
    def is_identity(self):
        return all(
            w.letters == ((i + 1, 1),) for i, w in enumerate(self.images)
        )

    def __repr__(self):
        return f"FreeAutomorphism({format_automorphism(self)!r})"


def identity_automorphism(n):
    gens = tuple(FreeWord.generator(n, i) for i in range(1, n + 1))
    return FreeAutomorphism(n, gens, gens, check=False)


def compose(phi, psi):
    return phi.compose(psi)


def inverse(phi):
    return phi.inverse()


def equals(phi, psi):
    return phi == psi


def apply(phi, w):
    return phi.apply(w)


def group_commutator(phi, psi):
    """[phi, psi] = phi^-1 psi^-1 phi psi."""
    return phi.inverse().compose(psi.inverse()).compose(phi).compose(psi)


def left_normed_group_commutator(autos):
    autos = list(autos)
    if not autos:
        raise ValueError("need at least one automorphism")
    acc = autos[0]
    for a in autos[1:]:
        acc = group_commutator(acc, a)
    return acc


# ---------------------------------------------------------------------------
# named generator families
# ---------------------------------------------------------------------------

def make_nielsen(side, i, j, exponent=1, n=None):
    """L_ij sends x_i to x_j x_i, R_ij sends x_i to x_i x_j.

    exponent -1 returns the inverse transformation.
    """
    if n is None:
        raise ValueError("rank n is required")
    if i == j:
        raise ValueError("Nielsen transformation needs i != j")
    if not (1 <= i <= n and 1 <= j <= n):
        raise ValueError("indices out of range")
    if side not in ("L", "R"):
        raise ValueError("side must be 'L' or 'R'")
    if exponent not in (1, -1):
        raise ValueError("exponent must be +1 or -1")
    images = [FreeWord.generator(n, a) for a in range(1, n + 1)]
    inv_images = [FreeWord.generator(n, a) for a in range(1, n + 1)]
    xi = FreeWord.generator(n, i)
    xj = FreeWord.generator(n, j)
    if side == "L":
        fwd, bwd = xj * xi, xj.inverse() * xi
    else:
        fwd, bwd = xi * xj, xi * xj.inverse()
    if exponent == -1:
        fwd, bwd = bwd, fwd
    images[i - 1] = fwd
    inv_images[i - 1] = bwd
    return FreeAutomorphism(n, images, inv_images, check=False)


def make_magnus_C(i, j, n):
    """C_ij sends x_i to x_j^-1 x_i x_j and fixes the other basis elements."""
    if len({i, j}) != 2:
        raise ValueError("C_ij needs distinct indices")
    images = [FreeWord.generator(n, a) for a in range(1, n + 1)]
    inv_images = [FreeWord.generator(n, a) for a in range(1, n + 1)]
    xi, xj = FreeWord.generator(n, i), FreeWord.generator(n, j)
    images[i - 1] = xj.inverse() * xi * xj
    inv_images[i - 1] = xj * xi * xj.inverse()
    return FreeAutomorphism(n, images, inv_images, check=False)


def make_magnus_M(i, j, k, n):
    """M_ijk sends x_i to x_i [x_j, x_k] and fixes the other basis elements."""
    if len({i, j, k}) != 3:
        raise ValueError("M_ijk needs distinct indices")
    images = [FreeWord.generator(n, a) for a in range(1, n + 1)]
    inv_images = [FreeWord.generator(n, a) for a in range(1, n + 1)]
    xi = FreeWord.generator(n, i)
    c = word_commutator(FreeWord.generator(n, j), FreeWord.generator(n, k))
    images[i - 1] = xi * c
    inv_images[i - 1] = xi * c.inverse()
    return FreeAutomorphism(n, images, inv_images, check=False)


def make_T(i, omega, n):
    """x_i maps to x_i times the left-normed commutator of the x_w, w in omega."""
    omega = tuple(omega)
    if i in omega:
        raise ValueError("the moved index may not occur in the commutator tail")
    if len(omega) < 2:
        raise ValueError("need a tail of length at least 2")
    for w in omega:
        if not 1 <= w <= n:
            raise ValueError("tail index out of range")
    images = [FreeWord.generator(n, a) for a in range(1, n + 1)]
    inv_images = [FreeWord.generator(n, a) for a in range(1, n + 1)]
    xi = FreeWord.generator(n, i)
    c = left_normed_word_commutator([FreeWord.generator(n, w) for w in omega])
    images[i - 1] = xi * c
    inv_images[i - 1] = xi * c.inverse()
    return FreeAutomorphism(n, images, inv_images, check=False)


def make_S(mu, i, j, n):
    """Left-normed commutator [M_ij(mu1), C_i(mu2), .., C_i(mu_{k-1}), M_ji(mu_k)].

    mu is a sequence of length k >= 2 avoiding both i and j; for k = 2 the
    middle conjugation factors are absent and the result is
    [M_ij(mu1), M_ji(mu2)].  The indices i and j are explicit parameters;
    callers that report results should record them.
    """
    mu = tuple(mu)
    k = len(mu)
    if k < 2:
        raise ValueError("mu must have length at least 2")
    if k > n - 2:
        raise ValueError("mu too long: need len(mu) <= n - 2")
    if i == j:
        raise ValueError("i and j must be distinct")
    if i in mu or j in mu:
        raise ValueError("i and j may not occur in mu")
    factors = [make_magnus_M(i, j, mu[0], n)]
    for t in range(1, k - 1):
        factors.append(make_magnus_C(i, mu[t], n))
    factors.append(make_magnus_M(j, i, mu[k - 1], n))
    return left_normed_group_commutator(factors)


def make_signed_permutation(n, perm, signs=None):
    """Automorphism x_i -> x_{perm[i]}^{signs[i]} for a permutation of 1..n."""
    signs = dict(signs or {})
    if sorted(perm.values()) != list(range(1, n + 1)):
        raise ValueError("perm must be a permutation of 1..n")
    images = [None] * n
    inv_images = [None] * n
    for i in range(1, n + 1):
        s = signs.get(i, 1)
        images[i - 1] = FreeWord.generator(n, perm[i], s)
        inv_images[perm[i] - 1] = FreeWord.generator(n, i, s)
    return FreeAutomorphism(n, images, inv_images, check=False)


# ---------------------------------------------------------------------------
# abelianization, support, complexity
# ---------------------------------------------------------------------------

def abelianized_matrix(phi):
    """Integer matrix of the induced map on Z^n; column b is the image of x_b."""
    n = phi.rank
    mat = [[0] * n for _ in range(n)]
    for b in range(1, n + 1):
        for i, s in phi.images[b - 1].letters:
            mat[i - 1][b - 1] += s
    return tuple(tuple(row) for row in mat)


def _det(mat):
    rows = [[Fraction(v) for v in row] for row in mat]
    n = len(rows)
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if rows[r][c] != 0), None)
        if piv is None:
            return 0
        if piv != c:
            rows[c], rows[piv] = rows[piv], rows[c]
            det = -det
        det *= rows[c][c]
        for r in range(c + 1, n):
            f = rows[r][c] / rows[c][c]
            if f:
                for cc in range(c, n):
                    rows[r][cc] -= f * rows[c][cc]
    return int(det)


def is_IA(phi):
    n = phi.rank
    return abelianized_matrix(phi) == tuple(
        tuple(1 if a == b else 0 for b in range(n)) for a in range(n)
    )


def is_SAut(phi):
    return _det(abelianized_matrix(phi)) == 1


def minimal_support(phi):
    """Smallest I such that phi moves only generators in I into F_I.

    Equal to (moved indices) together with every index occurring in the
    image of a moved generator; this set is minimal and unique.
    """
    moved = {
        i
        for i in range(1, phi.rank + 1)
        if phi.images[i - 1].letters != ((i, 1),)
    }
    support = set(moved)
    for i in moved:
        support.update(a for a, _ in phi.images[i - 1].letters)
    return frozenset(support)


def complexity(phi):
    return len(minimal_support(phi))


# ---------------------------------------------------------------------------
# Nielsen letter words (used by the subgroup-graph and certificate layers)
# ---------------------------------------------------------------------------

def nielsen_automorphism(letter, n):
    side, i, j, exp = letter
    return make_nielsen(side, i, j, exp, n)


def eval_nielsen_word(letters, n):
    """Compose a Nielsen word left to right; the last letter acts first."""
    acc = identity_automorphism(n)
    for letter in letters:
        acc = acc.compose(nielsen_automorphism(letter, n))
    return acc


def invert_nielsen_word(letters):
    return tuple((side, i, j, -exp) for side, i, j, exp in reversed(letters))


def nielsen_word_support(letters):
    s = set()
    for _, i, j, _ in letters:
        s.update((i, j))
    return frozenset(s)


def c_nielsen_word(i, j):
    """C_ij written in Nielsen letters: C_ij = R_ij L_ij^-1."""
    return (("R", i, j, 1), ("L", i, j, -1))


def m_nielsen_word(i, j, k):
    """M_ijk written in Nielsen letters: M_ijk = [R_ij, R_ik]."""
    return (("R", i, j, -1), ("R", i, k, -1), ("R", i, j, 1), ("R", i, k, 1))


# ---------------------------------------------------------------------------
# text format
# ---------------------------------------------------------------------------

_TOKEN = re.compile(r"^x(\d+)(\^-1)?$")


def format_word(w):
    return w.tokens() if w.letters else "1"


def format_automorphism(phi):
    parts = [f"rank={phi.rank}"]
    for i in range(1, phi.rank + 1):
        parts.append(f"x{i} -> {format_word(phi.images[i - 1])}")
    return "; ".join(parts)


def parse_word(text, rank):
    text = text.strip()
    if text in ("", "1"):
        return FreeWord.identity(rank)
    letters = []
    for tok in text.split():
        m = _TOKEN.match(tok)
        if not m:
            raise ValueError(f"bad word token {tok!r}")
        letters.append((int(m.group(1)), -1 if m.group(2) else 1))
    return FreeWord(rank, letters)


def _named_family_catalog(n, max_tail=4):
    """Yield (automorphism, inverse) pairs over the named generator families."""
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i == j:
                continue
            for side in ("L", "R"):
                for exp in (1, -1):
                    a = make_nielsen(side, i, j, exp, n)
                    yield a
            c = make_magnus_C(i, j, n)
            yield c
            yield c.inverse()
            for k in range(1, n + 1):
                if k in (i, j):
                    continue
                m = make_magnus_M(i, j, k, n)
                yield m
                yield m.inverse()
    import itertools

    for i in range(1, n + 1):
        rest = [a for a in range(1, n + 1) if a != i]
        for length in range(2, max_tail + 1):
            for omega in itertools.product(rest, repeat=length):
                t = make_T(i, omega, n)
                yield t
                yield t.inverse()


def _parse_images(text):
    pieces = [p.strip() for p in text.strip().split(";") if p.strip()]
    if not pieces or not pieces[0].startswith("rank="):
        raise ValueError("automorphism text must start with rank=n")
    rank = int(pieces[0][len("rank="):])
    images = [None] * rank
    for piece in pieces[1:]:
        lhs, _, rhs = piece.partition("->")
        m = _TOKEN.match(lhs.strip())
        if not m or m.group(2):
            raise ValueError(f"bad left-hand side {lhs!r}")
        i = int(m.group(1))
        images[i - 1] = parse_word(rhs, rank)
    for i, img in enumerate(images):
        if img is None:
            images[i] = FreeWord.generator(rank, i + 1)
    return rank, tuple(images)


def parse_automorphism(text, inverse_text=None):
    """Parse the `rank=n; x1 -> ...` format, reducing unreduced input.

    When no inverse is supplied the parser searches the named generator
    families (Nielsen, conjugation, commutator-multiplier families with
    bounded tail) for a match; anything else needs an explicit inverse.
    """
    rank, images = _parse_images(text)
    if inverse_text is not None:
        inv_rank, inv_images = _parse_images(inverse_text)
        if inv_rank != rank:
            raise ValueError("inverse text has a different rank")
        return FreeAutomorphism(rank, images, inv_images)
    if images == tuple(FreeWord.generator(rank, i) for i in range(1, rank + 1)):
        return identity_automorphism(rank)
    for candidate in _named_family_catalog(rank):
        if candidate.images == images:
            return candidate
    raise ValueError(
        "images do not match a named generator family; supply an inverse witness"
    )
