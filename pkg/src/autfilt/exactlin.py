"""Exact rational linear algebra on labeled tensor spaces.

Vectors are sparse maps from basis labels to rationals; every space
carries an explicit label set with a fixed total order, so spans,
kernels and subspace comparisons are deterministic.  Internally the
elimination keeps integer rows with content stripped, which avoids
fraction blowup during the larger orbit saturations.

The structured spaces are the ones the computations need: plain tensor
powers of V = Q^n, the dual, the space of dual-vector (x) degree-(k+1)
free-Lie values (basis e_i^* (x) Lyndon bracketing), Hom(V, wedge^2 V),
and wedge powers of a symplectic Q^{2g}.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from . import lie

# ---------------------------------------------------------------------------
# spaces
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class VSpace:
    n: int

    @property
    def descriptor(self):
        return f"V(n={self.n})"

    def labels(self):
        return list(range(1, self.n + 1))

    def sort_key(self, label):
        return label

    @property
    def dimension(self):
        return self.n


@dataclass(frozen=True)
class DualSpace:
    n: int

    @property
    def descriptor(self):
        return f"V*(n={self.n})"

    def labels(self):
        return list(range(1, self.n + 1))

    def sort_key(self, label):
        return label

    @property
    def dimension(self):
        return self.n


@dataclass(frozen=True)
class TensorSpace:
    """V^(x)m with basis labels the length-m index tuples."""

    n: int
    m: int

    @property
    def descriptor(self):
        return f"T(n={self.n},m={self.m})"

    def labels(self):
        return [t for t in itertools.product(range(1, self.n + 1), repeat=self.m)]

    def sort_key(self, label):
        return label

    @property
    def dimension(self):
        return self.n ** self.m


@dataclass(frozen=True)
class DualTensorSpace:
    """V* (x) V^(x)m with labels (dual index, index tuple)."""

    n: int
    m: int

    @property
    def descriptor(self):
        return f"V*T(n={self.n},m={self.m})"

    def labels(self):
        return [
            (i, t)
            for i in range(1, self.n + 1)
            for t in itertools.product(range(1, self.n + 1), repeat=self.m)
        ]

    def sort_key(self, label):
        return label

    @property
    def dimension(self):
        return self.n ** (self.m + 1)


@dataclass(frozen=True)
class MkSpace:
    """V* (x) Lie_{k+1}(V) with labels (dual index, Lyndon word of length k+1)."""

    n: int
    k: int

    @property
    def descriptor(self):
        return f"Mk(n={self.n},k={self.k})"

    def labels(self):
        words = lie.lyndon_words(self.n, self.k + 1)
        return [(i, w) for i in range(1, self.n + 1) for w in words]

    def sort_key(self, label):
        return label

    @property
    def dimension(self):
        return self.n * lie.witt_dimension(self.n, self.k + 1)


@dataclass(frozen=True)
class HomWedgeSpace:
    """Hom(V, wedge^2 V) with labels (i, (a, b)) for a < b."""

    n: int

    @property
    def descriptor(self):
        return f"Hom(V,w2V)(n={self.n})"

    def labels(self):
        pairs = list(itertools.combinations(range(1, self.n + 1), 2))
        return [(i, p) for i in range(1, self.n + 1) for p in pairs]

    def sort_key(self, label):
        return label

    @property
    def dimension(self):
        return self.n * self.n * (self.n - 1) // 2


def symp_symbol_key(sym):
    letter, i = sym
    return (i, 0 if letter == "a" else 1)


@dataclass(frozen=True)
class SympVSpace:
    """Q^{2g} with symplectic basis labels ('a', i) and ('b', i)."""

    g: int

    @property
    def descriptor(self):
        return f"Vsymp(g={self.g})"

    def labels(self):
        out = []
        for i in range(1, self.g + 1):
            out.append(("a", i))
            out.append(("b", i))
        return out

    def sort_key(self, label):
        return symp_symbol_key(label)

    @property
    def dimension(self):
        return 2 * self.g


@dataclass(frozen=True)
class SympWedgeSpace:
    """wedge^m of the symplectic space; labels are strictly sorted tuples."""

    g: int
    m: int = 3

    @property
    def descriptor(self):
        return f"w{self.m}Vsymp(g={self.g})"

    def labels(self):
        syms = SympVSpace(self.g).labels()
        return [t for t in itertools.combinations(syms, self.m)]

    def sort_key(self, label):
        return tuple(symp_symbol_key(s) for s in label)

    @property
    def dimension(self):
        from math import comb

        return comb(2 * self.g, self.m)


def sort_symplectic_label(symbols):
    """Sort wedge factors, returning (sign, tuple) or (0, None) on repeats."""
    symbols = list(symbols)
    keys = [symp_symbol_key(s) for s in symbols]
    if len(set(keys)) != len(keys):
        return 0, None
    sign = 1
    for i in range(1, len(keys)):
        j = i
        while j > 0 and keys[j - 1] > keys[j]:
            keys[j - 1], keys[j] = keys[j], keys[j - 1]
            symbols[j - 1], symbols[j] = symbols[j], symbols[j - 1]
            sign = -sign
            j -= 1
    return sign, tuple(symbols)


# ---------------------------------------------------------------------------
# vectors and operators
# ---------------------------------------------------------------------------


class TensorVector:
    """Sparse exact-rational vector over a labeled space."""

    __slots__ = ("space", "coords")

    def __init__(self, space, coords=()):
        coords = {k: Fraction(v) for k, v in dict(coords).items() if v}
        object.__setattr__(self, "space", space)
        object.__setattr__(self, "coords", coords)

    def __setattr__(self, name, value):
        raise AttributeError("TensorVector is immutable")

    @classmethod
    def unit(cls, space, label):
        return cls(space, {label: Fraction(1)})

    @classmethod
    def zero(cls, space):
        return cls(space)

    def __bool__(self):
        return bool(self.coords)

    def __eq__(self, other):
        return (
            isinstance(other, TensorVector)
            and self.space == other.space
            and self.coords == other.coords
        )

    def __hash__(self):
        return hash((self.space, frozenset(self.coords.items())))

    def __add__(self, other):
        self._check(other)
        out = dict(self.coords)
        for k, v in other.coords.items():
            s = out.get(k, 0) + v
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return TensorVector(self.space, out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        c = Fraction(c)
        if not c:
            return TensorVector(self.space)
        return TensorVector(self.space, {k: c * v for k, v in self.coords.items()})

    def _check(self, other):
        if self.space != other.space:
            raise ValueError(
                f"space mismatch: {self.space.descriptor} vs {other.space.descriptor}"
            )

    def to_json_obj(self):
        key = self.space.sort_key
        return {
            "space": self.space.descriptor,
            "coords": [
                [_label_str(k), str(v)]
                for k, v in sorted(self.coords.items(), key=lambda kv: key(kv[0]))
            ],
        }

    def __repr__(self):
        return f"TensorVector({self.space.descriptor}, {len(self.coords)} terms)"


def _label_str(label):
    if isinstance(label, tuple):
        return "|".join(_label_str(p) for p in label)
    return str(label)


class LinearOperator:
    """Linear map given on basis labels, with cached images.

    An inverse witness, when present, is another LinearOperator; orbit
    saturation refuses generators without one.
    """

    def __init__(self, space_in, space_out, fn, name="", inverse=None):
        self.space_in = space_in
        self.space_out = space_out
        self._fn = fn
        self.name = name
        self.inverse = inverse
        self._cache = {}
        self._induced = {}

    def image_of(self, label):
        vec = self._cache.get(label)
        if vec is None:
            vec = self._fn(label)
            if not isinstance(vec, TensorVector):
                vec = TensorVector(self.space_out, vec)
            self._cache[label] = vec
        return vec

    def apply(self, vec):
        if vec.space != self.space_in:
            raise ValueError(
                f"operator {self.name or '?'} expects {self.space_in.descriptor}, "
                f"got {vec.space.descriptor}"
            )
        out = {}
        for label, c in vec.coords.items():
            for k, v in self.image_of(label).coords.items():
                s = out.get(k, 0) + c * v
                if s:
                    out[k] = s
                else:
                    out.pop(k, None)
        return TensorVector(self.space_out, out)

    __call__ = apply

    def __repr__(self):
        return (
            f"LinearOperator({self.name or 'anonymous'}: "
            f"{self.space_in.descriptor} -> {self.space_out.descriptor})"
        )


def _pair_inverses(fwd, bwd):
    fwd.inverse = bwd
    bwd.inverse = fwd
    return fwd


# ---------------------------------------------------------------------------
# spans, kernels, saturation
# ---------------------------------------------------------------------------


def _int_row(coords):
    """Clear denominators and strip content; leading sign handled by caller."""
    if not coords:
        return {}
    den = 1
    for v in coords.values():
        f = Fraction(v)
        den = den * f.denominator // gcd(den, f.denominator)
    row = {k: int(Fraction(v) * den) for k, v in coords.items()}
    g = 0
    for v in row.values():
        g = gcd(g, abs(v))
    if g > 1:
        row = {k: v // g for k, v in row.items()}
    return row


class SubspaceBasis:
    """Integer echelon basis of a subspace, rows keyed by pivot label."""

    def __init__(self, space):
        self.space = space
        self._key = space.sort_key
        self.rows = {}

    @property
    def dim(self):
        return len(self.rows)

    def reduce(self, coords):
        """Reduce a coordinate dict against the basis; returns an int row."""
        v = _int_row(coords)
        while v:
            p = min(v, key=self._key)
            row = self.rows.get(p)
            if row is None:
                return v
            a, b = row[p], v[p]
            g = gcd(a, b)
            ca, cb = a // g, b // g
            new = {k: ca * val for k, val in v.items()}
            for k, val in row.items():
                s = new.get(k, 0) - cb * val
                if s:
                    new[k] = s
                else:
                    new.pop(k, None)
            v = new
        return v

    def insert(self, vec):
        """Add a vector; returns the inserted residue row or None if dependent."""
        coords = vec.coords if isinstance(vec, TensorVector) else vec
        residue = self.reduce(coords)
        if not residue:
            return None
        g = 0
        for v in residue.values():
            g = gcd(g, abs(v))
        if g > 1:
            residue = {k: v // g for k, v in residue.items()}
        p = min(residue, key=self._key)
        if residue[p] < 0:
            residue = {k: -v for k, v in residue.items()}
        self.rows[p] = residue
        return residue

    def contains(self, vec):
        coords = vec.coords if isinstance(vec, TensorVector) else vec
        return not self.reduce(coords)

    def vectors(self):
        out = []
        for p in sorted(self.rows, key=self._key):
            out.append(TensorVector(self.space, self.rows[p]))
        return out

    def to_json_obj(self):
        return {
            "space": self.space.descriptor,
            "dimension": self.dim,
            "rows": [v.to_json_obj()["coords"] for v in self.vectors()],
        }


def span_basis(vectors):
    vectors = list(vectors)
    if not vectors:
        raise ValueError("need at least one vector to infer the space")
    basis = SubspaceBasis(vectors[0].space)
    for v in vectors:
        if v.space != basis.space:
            raise ValueError("vectors live in different spaces")
        basis.insert(v)
    return basis


def subspace_equal(a, b):
    if a.space != b.space:
        raise ValueError("space mismatch")
    if a.dim != b.dim:
        return False
    return all(b.contains(TensorVector(a.space, row)) for row in a.rows.values())


def kernel_basis(op):
    """Exact kernel of a LinearOperator, as a basis in its domain."""
    space = op.space_in
    labels = sorted(space.labels(), key=space.sort_key)
    out_key = op.space_out.sort_key
    pivots = {}  # out-label -> (image row, combo row)
    kernel = SubspaceBasis(space)
    for lab in labels:
        img = _int_row(op.image_of(lab).coords)
        combo = {lab: 1}
        while img:
            p = min(img, key=out_key)
            if p not in pivots:
                pivots[p] = (img, combo)
                img = None
                break
            prow, pcombo = pivots[p]
            a, b = prow[p], img[p]
            g = gcd(a, b)
            ca, cb = a // g, b // g
            img = _combine(ca, img, -cb, prow)
            combo = _combine(ca, combo, -cb, pcombo)
        if img is not None and not img:
            kernel.insert(combo)
    return kernel


def _combine(ca, a, cb, b):
    out = {k: ca * v for k, v in a.items()}
    for k, v in b.items():
        s = out.get(k, 0) + cb * v
        if s:
            out[k] = s
        else:
            out.pop(k, None)
    return out


@dataclass
class SaturationResult:
    basis: SubspaceBasis
    closed: bool
    rounds: int
    applications: int


def orbit_saturate(generators, seeds, stop_at_dim=None):
    """Smallest subspace containing the seeds and stable under the generators.

    Every generator must carry an inverse witness; both directions are
    applied.  Termination: the dimension grows strictly or the queue
    drains.  With stop_at_dim the search stops once that dimension is
    reached and the result is marked not-closed; callers use this when an
    upper bound is known and containment is being certified separately.
    """
    seeds = list(seeds)
    if not seeds:
        raise ValueError("need at least one seed")
    space = seeds[0].space
    ops = []
    for g in generators:
        if g.space_in != space or g.space_out != space:
            raise ValueError("generators must be endomorphisms of the seed space")
        if g.inverse is None:
            raise ValueError(f"generator {g.name or '?'} has no inverse witness")
        ops.append(g)
        ops.append(g.inverse)
    basis = SubspaceBasis(space)
    queue = []
    for s in seeds:
        residue = basis.insert(s)
        if residue is not None:
            queue.append(residue)
    applications = 0
    rounds = 0
    closed = True
    while queue:
        rounds += 1
        next_queue = []
        for row in queue:
            vec = TensorVector(space, row)
            for op in ops:
                applications += 1
                residue = basis.insert(op.apply(vec))
                if residue is not None:
                    next_queue.append(residue)
                    if stop_at_dim is not None and basis.dim >= stop_at_dim:
                        return SaturationResult(basis, False, rounds, applications)
        queue = next_queue
    return SaturationResult(basis, closed, rounds, applications)


# ---------------------------------------------------------------------------
# the contraction map, cyclic shift, and the shift-difference space
# ---------------------------------------------------------------------------

_PHI_CACHE = {}


def phi_operator(n, k):
    """Contraction of the dual slot with the first tensor factor."""
    key = (n, k)
    if key not in _PHI_CACHE:
        space_in = MkSpace(n, k)
        space_out = TensorSpace(n, k)

        def fn(label):
            d, w = label
            out = {}
            for mono, c in lie.lyndon_word_tensor(w).items():
                if mono[0] == d:
                    tail = mono[1:]
                    s = out.get(tail, 0) + c
                    if s:
                        out[tail] = s
                    else:
                        out.pop(tail, None)
            return TensorVector(space_out, out)

        _PHI_CACHE[key] = LinearOperator(space_in, space_out, fn, name=f"Phi({n},{k})")
    return _PHI_CACHE[key]


def phi_map(t):
    """Apply the contraction; accepts Mk vectors or raw V* (x) V^(x)(k+1) ones."""
    if isinstance(t.space, MkSpace):
        return phi_operator(t.space.n, t.space.k).apply(t)
    if isinstance(t.space, DualTensorSpace):
        out_space = TensorSpace(t.space.n, t.space.m - 1)
        out = {}
        for (d, mono), c in t.coords.items():
            if mono[0] == d:
                tail = mono[1:]
                s = out.get(tail, 0) + c
                if s:
                    out[tail] = s
                else:
                    out.pop(tail, None)
        return TensorVector(out_space, out)
    raise ValueError(f"phi_map does not apply to {t.space.descriptor}")


def tau_map(x):
    """Contraction of a degree-k invariant; accepts JohnsonImage or Mk vector."""
    vec = x.to_mk_vector() if hasattr(x, "to_mk_vector") else x
    return phi_map(vec)


def cyclic_shift(t):
    """v1 (x) ... (x) vk maps to v2 (x) ... (x) vk (x) v1."""
    if not isinstance(t.space, TensorSpace):
        raise ValueError("cyclic_shift needs a plain tensor power")
    return TensorVector(
        t.space, {mono[1:] + mono[:1]: c for mono, c in t.coords.items()}
    )


def _euler_phi(d):
    out, m, p = d, d, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            out -= out // p
        p += 1
    if m > 1:
        out -= out // m
    return out


def necklace_count(n, k):
    """Number of cyclic-shift orbits of index tuples: (1/k) sum phi(d) n^{k/d}."""
    total = sum(_euler_phi(d) * n ** (k // d) for d in range(1, k + 1) if k % d == 0)
    assert total % k == 0
    return total // k


def cyclic_invariant_basis(n, k):
    """Orbit-sum basis of the pointwise shift-invariant subspace."""
    space = TensorSpace(n, k)
    seen = set()
    out = []
    for mono in space.labels():
        orbit = {mono[r:] + mono[:r] for r in range(k)}
        rep = min(orbit)
        if rep in seen:
            continue
        seen.add(rep)
        out.append(TensorVector(space, {m: Fraction(1) for m in orbit}))
    return out


def w_basis(n, k):
    """Span of all differences (monomial - its cyclic shift).

    This is the target space of the contraction on degree-k invariants:
    it is stable (setwise) under the shift, complementary to the
    pointwise-invariant subspace, and has dimension n^k minus the
    necklace count.
    """
    space = TensorSpace(n, k)
    basis = SubspaceBasis(space)
    for mono in space.labels():
        shifted = mono[1:] + mono[:1]
        if shifted == mono:
            continue
        basis.insert(TensorVector(space, {mono: 1, shifted: -1}))
    return basis


# ---------------------------------------------------------------------------
# induced actions of elementary matrices
# ---------------------------------------------------------------------------


def elementary_sl(i, j, n):
    """Transvection sending e_j to e_j + e_i, all other basis vectors fixed.

    The dual representation acts by the inverse transpose, so e_i^* maps
    to e_i^* - e_j^*.  Use induced_on to lift to the structured spaces.
    """
    if i == j:
        raise ValueError("need i != j")
    if not (1 <= i <= n and 1 <= j <= n):
        raise ValueError("index out of range")
    space = VSpace(n)

    def fwd(label):
        if label == j:
            return TensorVector(space, {j: 1, i: 1})
        return TensorVector.unit(space, label)

    def bwd(label):
        if label == j:
            return TensorVector(space, {j: 1, i: -1})
        return TensorVector.unit(space, label)

    return _pair_inverses(
        LinearOperator(space, space, fwd, name=f"E({i},{j})"),
        LinearOperator(space, space, bwd, name=f"E({i},{j})^-1"),
    )


def operator_from_matrix(mat, n, name=""):
    """Invertible integer matrix (columns are images) as an operator on V."""
    space = VSpace(n)
    inv = _invert_rational_matrix(mat)

    def fn_of(m):
        def fn(label):
            return TensorVector(
                space, {a + 1: m[a][label - 1] for a in range(n) if m[a][label - 1]}
            )

        return fn

    return _pair_inverses(
        LinearOperator(space, space, fn_of(mat), name=name),
        LinearOperator(space, space, fn_of(inv), name=name + "^-1"),
    )


def _invert_rational_matrix(mat):
    n = len(mat)
    aug = [
        [Fraction(mat[r][c]) for c in range(n)]
        + [Fraction(1 if c == r else 0) for c in range(n)]
        for r in range(n)
    ]
    for c in range(n):
        piv = next((r for r in range(c, n) if aug[r][c]), None)
        if piv is None:
            raise ValueError("matrix is singular")
        aug[c], aug[piv] = aug[piv], aug[c]
        f = aug[c][c]
        aug[c] = [v / f for v in aug[c]]
        for r in range(n):
            if r != c and aug[r][c]:
                g = aug[r][c]
                aug[r] = [v - g * w for v, w in zip(aug[r], aug[c])]
    return [[aug[r][n + c] for c in range(n)] for r in range(n)]


def _dual_images(base):
    """Dual action labels from the inverse: e_d^* -> sum_c <e_d, g^-1 e_c> e_c^*."""
    n = base.space_in.n
    cols = {c: base.inverse.image_of(c).coords for c in range(1, n + 1)}

    def images(d):
        return {c: cols[c][d] for c in cols if d in cols[c]}

    return images


def _product_expand(base, mono, start=()):
    """Diagonal action on one tensor monomial, as a dict of label tuples."""
    partial = {tuple(start): Fraction(1)}
    for a in mono:
        img = base.image_of(a).coords
        new = {}
        for k, v in partial.items():
            for b, cb in img.items():
                kk = k + (b,)
                s = new.get(kk, 0) + v * cb
                if s:
                    new[kk] = s
                else:
                    new.pop(kk, None)
        partial = new
    return partial


def _act_on_lyndon_word(base, w):
    """Diagonal action on the bracketing of w, back in Lyndon coordinates."""
    out = {}
    for mono, c in lie.lyndon_word_tensor(w).items():
        for kk, v in _product_expand(base, mono).items():
            s = out.get(kk, 0) + c * v
            if s:
                out[kk] = s
            else:
                out.pop(kk, None)
    if not out:
        return {}
    return lie._coords_from_lie_tensor(out)


def induced_on(base, space):
    """Functorial lift of an invertible operator on V to a structured space."""
    desc = space.descriptor
    if desc in base._induced:
        return base._induced[desc]
    fwd = _induce_one(base, space)
    bwd = _induce_one(base.inverse, space)
    _pair_inverses(fwd, bwd)
    base._induced[desc] = fwd
    base.inverse._induced[desc] = bwd
    return fwd


def _induce_one(base, space):
    name = f"{base.name} on {space.descriptor}"
    if isinstance(space, VSpace):
        return base
    if isinstance(space, DualSpace):
        dual = _dual_images(base)
        return LinearOperator(
            space, space, lambda d: TensorVector(space, dual(d)), name=name
        )
    if isinstance(space, TensorSpace):
        return LinearOperator(
            space,
            space,
            lambda mono: TensorVector(space, _product_expand(base, mono)),
            name=name,
        )
    if isinstance(space, MkSpace):
        dual = _dual_images(base)

        def fn(label):
            d, w = label
            lie_coords = _act_on_lyndon_word(base, w)
            out = {}
            for c, dc in dual(d).items():
                for ww, cw in lie_coords.items():
                    s = out.get((c, ww), 0) + dc * cw
                    if s:
                        out[(c, ww)] = s
                    else:
                        out.pop((c, ww), None)
            return TensorVector(space, out)

        return LinearOperator(space, space, fn, name=name)
    if isinstance(space, HomWedgeSpace):
        dual = _dual_images(base)

        def fn(label):
            d, (a, b) = label
            wedge = {}
            ia = base.image_of(a).coords
            ib = base.image_of(b).coords
            for x, cx in ia.items():
                for y, cy in ib.items():
                    if x == y:
                        continue
                    key, sgn = ((x, y), 1) if x < y else ((y, x), -1)
                    s = wedge.get(key, 0) + sgn * cx * cy
                    if s:
                        wedge[key] = s
                    else:
                        wedge.pop(key, None)
            out = {}
            for c, dc in dual(d).items():
                for p, cp in wedge.items():
                    s = out.get((c, p), 0) + dc * cp
                    if s:
                        out[(c, p)] = s
                    else:
                        out.pop((c, p), None)
            return TensorVector(space, out)

        return LinearOperator(space, space, fn, name=name)
    raise ValueError(f"no induced action on {desc}")


# ---------------------------------------------------------------------------
# symplectic generators and wedge lifts
# ---------------------------------------------------------------------------


def sp_generator(kind, i, j=None, g=None):
    """The rotation sigma_i (a_i -> b_i, b_i -> -a_i) or the transvection
    tau_ij (b_i -> b_i + a_j, b_j -> b_j + a_i); all other basis vectors fixed."""
    if g is None:
        raise ValueError("genus g is required")
    if not 1 <= i <= g:
        raise ValueError("index out of range")
    space = SympVSpace(g)
    if kind == "sigma":
        moves_fwd = {("a", i): {("b", i): 1}, ("b", i): {("a", i): -1}}
        moves_bwd = {("b", i): {("a", i): 1}, ("a", i): {("b", i): -1}}
        name = f"sigma({i})"
    elif kind == "tau":
        if j is None or j == i or not 1 <= j <= g:
            raise ValueError("tau needs a second index distinct from the first")
        moves_fwd = {
            ("b", i): {("b", i): 1, ("a", j): 1},
            ("b", j): {("b", j): 1, ("a", i): 1},
        }
        moves_bwd = {
            ("b", i): {("b", i): 1, ("a", j): -1},
            ("b", j): {("b", j): 1, ("a", i): -1},
        }
        name = f"tau({i},{j})"
    else:
        raise ValueError("kind must be 'sigma' or 'tau'")

    def fn_of(moves):
        def fn(label):
            if label in moves:
                return TensorVector(space, moves[label])
            return TensorVector.unit(space, label)

        return fn

    return _pair_inverses(
        LinearOperator(space, space, fn_of(moves_fwd), name=name),
        LinearOperator(space, space, fn_of(moves_bwd), name=name + "^-1"),
    )


def sp_transvection(v_coords, g):
    """Symplectic transvection x -> x + <x, v> v about the vector v.

    Preserves the symplectic form for every v; the inverse subtracts.
    Used as the documented extended generating set when the rotation and
    double transvection generators alone are suspected of stalling.
    """
    space = SympVSpace(g)
    vvec = TensorVector(space, v_coords)

    def fn_of(sign):
        def fn(label):
            x = TensorVector.unit(space, label)
            return x + vvec.scale(sign * symplectic_pairing(x, vvec))

        return fn

    tag = "+".join(f"{l}{i}" for (l, i) in sorted(vvec.coords, key=symp_symbol_key))
    return _pair_inverses(
        LinearOperator(space, space, fn_of(1), name=f"transvection({tag})"),
        LinearOperator(space, space, fn_of(-1), name=f"transvection({tag})^-1"),
    )


def extended_sp_generators(g):
    """Transvections about a_i, b_i, a_i + a_j and a_i + b_j for all pairs."""
    out = []
    for i in range(1, g + 1):
        out.append(sp_transvection({("a", i): 1}, g))
        out.append(sp_transvection({("b", i): 1}, g))
        for j in range(1, g + 1):
            if i == j:
                continue
            out.append(sp_transvection({("a", i): 1, ("a", j): 1}, g))
            out.append(sp_transvection({("a", i): 1, ("b", j): 1}, g))
    return out


def wedge_lift(op, m=3):
    """Multilinear lift to wedge^m with sorted labels and sign bookkeeping."""
    if not isinstance(op.space_in, SympVSpace):
        raise ValueError("wedge_lift expects an operator on the symplectic space")
    g = op.space_in.g
    space = SympWedgeSpace(g, m)

    def lift_of(base):
        def fn(label):
            out = {}
            for combo, c in _product_expand(base, label).items():
                sgn, key = sort_symplectic_label(combo)
                if sgn == 0:
                    continue
                s = out.get(key, 0) + sgn * c
                if s:
                    out[key] = s
                else:
                    out.pop(key, None)
            return TensorVector(space, out)

        return fn

    return _pair_inverses(
        LinearOperator(space, space, lift_of(op), name=f"w{m} {op.name}"),
        LinearOperator(space, space, lift_of(op.inverse), name=f"w{m} {op.name}^-1"),
    )


def symplectic_pairing(u, v):
    """<a_i, b_i> = 1 = -<b_i, a_i>, zero on all other basis pairs."""
    total = Fraction(0)
    for (lu, iu), cu in u.coords.items():
        for (lv, iv), cv in v.coords.items():
            if iu == iv and lu == "a" and lv == "b":
                total += cu * cv
            elif iu == iv and lu == "b" and lv == "a":
                total -= cu * cv
    return total


def preserves_symplectic_form(op):
    space = op.space_in
    labels = space.labels()
    for u in labels:
        for v in labels:
            lhs = symplectic_pairing(op.image_of(u), op.image_of(v))
            rhs = symplectic_pairing(TensorVector.unit(space, u), TensorVector.unit(space, v))
            if lhs != rhs:
                return False
    return True


# ---------------------------------------------------------------------------
# single-row family vectors and the reduction identities
# ---------------------------------------------------------------------------


def e_delta(n, k, dual_index, tail):
    """e_d^* (x) [e_t1, ..., e_t(k+1)] as an Mk vector (left-normed bracket)."""
    tail = tuple(tail)
    if len(tail) != k + 1:
        raise ValueError("tail must have length k+1")
    value = lie.left_normed_of_generators(n, tail)
    return TensorVector(
        MkSpace(n, k), {(dual_index, w): c for w, c in value.coords.items()}
    )


def c_count(delta):
    """Occurrences of the dual index in the tail of delta = (i, tail)."""
    dual_index, tail = delta
    return sum(1 for a in tail if a == dual_index)


def elementary_formal_action(i, j, p, delta):
    """Formal expansion of E_ij^p applied to a single-row symbol e_delta.

    The dual slot e_i^* branches into e_i^* - p e_j^*; every occurrence of
    j in the tail branches into e_j + p e_i.  Returns a dict mapping symbols
    (d, tail) to integer coefficients, without collapsing to a basis.
    """
    d, tail = delta
    dual_choices = [(1, d)]
    if d == i:
        dual_choices.append((-p, j))
    slot_choices = []
    for a in tail:
        if a == j:
            slot_choices.append(((1, j), (p, i)))
        else:
            slot_choices.append(((1, a),))
    out = {}
    for dc, dd in dual_choices:
        for combo in itertools.product(*slot_choices):
            coeff = dc
            letters = []
            for c, a in combo:
                coeff *= c
                letters.append(a)
            sym = (dd, tuple(letters))
            s = out.get(sym, 0) + coeff
            if s:
                out[sym] = s
            else:
                out.pop(sym, None)
    return out


def _formal_sum(terms, n, k):
    vec = TensorVector.zero(MkSpace(n, k))
    for (d, tail), c in terms.items():
        vec = vec + e_delta(n, k, d, tail).scale(c)
    return vec


@dataclass
class ZReductionReport:
    delta: tuple
    fresh_index: int
    c_value: int
    leading_coefficient: int
    lower_terms_ok: bool
    vector_match: bool

    @property
    def ok(self):
        return (
            self.leading_coefficient == 2 ** self.c_value - 2
            and self.lower_terms_ok
            and self.vector_match
        )


def z_reduction_check(n, k, delta, fresh_index):
    """Check z = E^2 e' - 2 E e' = (2^c - 2) e_delta + (lower c terms).

    delta = (i, tail) must have c(delta) >= 2 and fresh_index must avoid
    delta entirely; e' is delta with tail occurrences of i renamed to the
    fresh index.  The structural claim is about the formal expansion; the
    vector-level equality pins it against the honest induced action.
    """
    i, tail = delta
    j = fresh_index
    if j == i or j in tail:
        raise ValueError("fresh index must avoid delta")
    c = c_count(delta)
    if c < 2:
        raise ValueError("need c(delta) >= 2")
    tail_fresh = tuple(j if a == i else a for a in tail)
    base = (i, tail_fresh)
    z_terms = {}
    for p, scale in ((2, 1), (1, -2)):
        for sym, coeff in elementary_formal_action(i, j, p, base).items():
            s = z_terms.get(sym, 0) + scale * coeff
            if s:
                z_terms[sym] = s
            else:
                z_terms.pop(sym, None)
    leading = z_terms.get(delta, 0)
    lower_ok = all(
        c_count(sym) < c for sym in z_terms if sym != delta
    )
    op = induced_on(elementary_sl(i, j, n), MkSpace(n, k))
    e_fresh = e_delta(n, k, *base)
    z_vec = op.apply(op.apply(e_fresh)) - op.apply(e_fresh).scale(2)
    match = _formal_sum(z_terms, n, k) == z_vec
    return ZReductionReport(delta, j, c, leading, lower_ok, match)


def closing_identity_check(n, k, i, j, eps, mutate_sign=False):
    """Exact identity e_(i;i,eps) - e_(j;j,eps) = E_ij e_(i;j,eps) - e_(i;j,eps) + e_(j;i,eps).

    mutate_sign flips one sign on the right-hand side and is the negative
    control: the mutated identity must fail.
    """
    eps = tuple(eps)
    if i == j or i in eps or j in eps or len(eps) != k:
        raise ValueError("need distinct i, j avoiding eps with len(eps) = k")
    lhs = e_delta(n, k, i, (i,) + eps) - e_delta(n, k, j, (j,) + eps)
    op = induced_on(elementary_sl(i, j, n), MkSpace(n, k))
    mid = e_delta(n, k, i, (j,) + eps)
    last = e_delta(n, k, j, (i,) + eps)
    if mutate_sign:
        last = last.scale(-1)
    rhs = op.apply(mid) - mid + last
    return lhs == rhs


# ---------------------------------------------------------------------------
# the kernel claim
# ---------------------------------------------------------------------------


@dataclass
class KernelClaimReport:
    n: int
    k: int
    ambient_dimension: int
    seed_count: int
    seeds_in_kernel: bool
    orbit_dimension: int
    kernel_dimension: int
    orbit_inside_kernel: bool
    saturation_closed: bool
    equal: bool

    def to_json_obj(self):
        return {
            "n": self.n,
            "k": self.k,
            "ambient_dimension": self.ambient_dimension,
            "seed_count": self.seed_count,
            "seeds_in_kernel": self.seeds_in_kernel,
            "orbit_dimension": self.orbit_dimension,
            "kernel_dimension": self.kernel_dimension,
            "orbit_inside_kernel": self.orbit_inside_kernel,
            "saturation_closed": self.saturation_closed,
            "equal": self.equal,
        }


def kernel_claim_check(n, k, full_closure=None):
    """Compare the transvection-orbit span of the single-row family vectors
    with the kernel of the contraction inside the dual-Lie space.

    Seeds are the unit vectors e_i^* (x) (Lyndon bracketing avoiding i).
    When full_closure is false the saturation stops as soon as the kernel
    dimension is reached; equality is then certified by the verified
    containment (every orbit basis vector is checked to lie in the kernel)
    plus the dimension count, which is exact.
    """
    if not 2 <= k <= n - 2:
        raise ValueError("need 2 <= k <= n - 2")
    space = MkSpace(n, k)
    if full_closure is None:
        full_closure = True
    phi = phi_operator(n, k)
    seeds = [
        TensorVector.unit(space, (d, w))
        for (d, w) in space.labels()
        if d not in w
    ]
    seeds_ok = all(not phi.apply(s) for s in seeds)
    kernel = kernel_basis(phi)
    generators = [
        induced_on(elementary_sl(a, b, n), space)
        for a in range(1, n + 1)
        for b in range(1, n + 1)
        if a != b
    ]
    result = orbit_saturate(
        generators,
        seeds,
        stop_at_dim=None if full_closure else kernel.dim,
    )
    orbit = result.basis
    inside = all(
        not phi.apply(TensorVector(space, row)) for row in orbit.rows.values()
    )
    equal = inside and orbit.dim == kernel.dim
    if full_closure:
        equal = equal and subspace_equal(orbit, kernel)
    return KernelClaimReport(
        n=n,
        k=k,
        ambient_dimension=space.dimension,
        seed_count=len(seeds),
        seeds_in_kernel=seeds_ok,
        orbit_dimension=orbit.dim,
        kernel_dimension=kernel.dim,
        orbit_inside_kernel=inside,
        saturation_closed=result.closed,
        equal=equal,
    )
