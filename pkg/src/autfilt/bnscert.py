"""Finite-generation certificates in the commuting-generator format.

A certificate is an ordered list x_1..x_r of automorphisms, a rational
character value for each, and for each i >= 2 a witness (j, w) with
j < i, nonzero character at x_j, and [x_j, x_i] equal to the word w over
the earlier elements.  The checker verifies all of that exactly.  The
verdict is scoped to the group generated by the listed elements, for
which the generation condition holds by definition; deciding generation
of an abstractly given group is out of scope and the report says so.

The assembler builds such a certificate from a target list T of
commutator-trivial automorphisms given as Nielsen words: it connects the
base parabolic to its T-conjugates through the commuting graph, orders
the collected vertices by distance from the base vertex, picks one
element with nonzero character per vertex (the vertex at a T-conjugate
is forced to be the conjugate of the first element), and appends T
itself with commutator witnesses of the form x_1^-1 * (x_1 conjugated).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from . import autf, commgraph

SCOPE_NOTE = (
    "verdict is scoped to the subgroup generated by the listed elements; "
    "generation of that subgroup by the list holds by definition"
)


@dataclass(frozen=True)
class Character:
    """Rational values keyed by element identifier (serialized map text)."""

    assignments: tuple

    @classmethod
    def from_dict(cls, d):
        return cls(tuple(sorted((k, Fraction(v)) for k, v in d.items())))

    def value_of(self, phi):
        key = autf.format_automorphism(phi)
        for k, v in self.assignments:
            if k == key:
                return v
        return Fraction(0)


@dataclass(frozen=True)
class Witness:
    index: int  # i, position of the witnessed element (1-based)
    earlier: int  # j < i with nonzero character
    word: tuple  # signed 1-based positions into the element list


@dataclass(frozen=True)
class BnsCertificate:
    elements: tuple  # FreeAutomorphisms
    chi: tuple  # Fractions, aligned with elements
    witnesses: tuple  # Witness entries, one per element index >= 2

    def to_json(self):
        return json.dumps(
            {
                "elements": [autf.format_automorphism(x) for x in self.elements],
                "inverses": [
                    autf.format_automorphism(x.inverse()) for x in self.elements
                ],
                "chi": [str(c) for c in self.chi],
                "witnesses": [
                    {"i": w.index, "j": w.earlier, "word": list(w.word)}
                    for w in self.witnesses
                ],
            },
            sort_keys=True,
        )

    @classmethod
    def from_json(cls, text):
        data = json.loads(text)
        inverses = data.get("inverses")
        elements = []
        for pos, t in enumerate(data["elements"]):
            inv = inverses[pos] if inverses else None
            elements.append(autf.parse_automorphism(t, inverse_text=inv))
        chi = tuple(Fraction(c) for c in data["chi"])
        witnesses = tuple(
            Witness(w["i"], w["j"], tuple(w["word"])) for w in data["witnesses"]
        )
        return cls(tuple(elements), chi, witnesses)


@dataclass(frozen=True)
class Verdict:
    valid: bool
    failed_condition: str | None = None
    failed_index: int | None = None
    detail: str = ""
    scope_note: str = SCOPE_NOTE

    def to_json_obj(self):
        return {
            "valid": self.valid,
            "failed_condition": self.failed_condition,
            "failed_index": self.failed_index,
            "detail": self.detail,
            "scope_note": self.scope_note,
        }


def _eval_word(elements, word):
    """Evaluate signed positions left to right; the last entry acts first."""
    if not elements:
        raise ValueError("empty element list")
    n = elements[0].rank
    acc = autf.identity_automorphism(n)
    for v in word:
        x = elements[abs(v) - 1]
        acc = acc.compose(x if v > 0 else x.inverse())
    return acc


def check_certificate(cert):
    """Exact verification; reports the first failing condition and index."""
    r = len(cert.elements)
    if r == 0:
        return Verdict(False, "shape", None, "certificate has no elements")
    if len(cert.chi) != r:
        return Verdict(False, "shape", None, "chi length differs from element count")
    by_index = {w.index: w for w in cert.witnesses}
    for w in cert.witnesses:
        if not 2 <= w.index <= r or not 1 <= w.earlier < w.index:
            return Verdict(
                False,
                "witness-indices",
                w.index,
                f"witness cites j={w.earlier} for i={w.index}",
            )
        if any(abs(v) >= w.index or v == 0 for v in w.word):
            return Verdict(
                False,
                "witness-indices",
                w.index,
                "witness word uses an element at or after position i",
            )
    if cert.chi[0] == 0:
        return Verdict(False, "nonzero-at-first", 1, "character vanishes on x1")
    for i in range(2, r + 1):
        w = by_index.get(i)
        if w is None:
            return Verdict(False, "witness-missing", i, f"no witness for i={i}")
        if cert.chi[w.earlier - 1] == 0:
            return Verdict(
                False,
                "nonzero-at-cited",
                i,
                f"character vanishes on cited x{w.earlier}",
            )
        lhs = autf.group_commutator(cert.elements[w.earlier - 1], cert.elements[i - 1])
        rhs = _eval_word(cert.elements, w.word)
        if lhs != rhs:
            return Verdict(
                False,
                "commutator-word",
                i,
                f"[x{w.earlier}, x{i}] differs from the witness word",
            )
        total = sum(
            (cert.chi[abs(v) - 1] if v > 0 else -cert.chi[abs(v) - 1])
            for v in w.word
        )
        if total != 0:
            return Verdict(
                False,
                "character-consistency",
                i,
                "character does not vanish on a commutator witness word",
            )
    return Verdict(True)


class AssemblyError(RuntimeError):
    pass


def default_element_chooser(chi_value=Fraction(1)):
    """Chooser returning a conjugated commutator-trivial parabolic element.

    For a handle on index set I it conjugates C_{ab} (a, b the two lowest
    indices of I) by the handle's conjugator and assigns the fixed nonzero
    character value.
    """

    def choose(h):
        a, b = sorted(h.indices)[:2]
        base = autf.make_magnus_C(a, b, h.rank)
        return base.conjugate(h.conjugator_automorphism()), Fraction(chi_value)

    return choose


@dataclass
class AssemblyReport:
    vertex_order: list = field(default_factory=list)
    forced_positions: list = field(default_factory=list)
    note: str = "vertices deduplicated by first occurrence, ordered by BFS distance"


def assemble_certificate(n, m, targets, chi_seed=None, element_chooser=None):
    """Build a certificate from commutator-trivial targets given as Nielsen words.

    targets: list of (label, nielsen word).  Returns (certificate, report).
    Raises AssemblyError when a path cannot be built or the chooser fails
    to supply an element with nonzero character.
    """
    if element_chooser is None:
        element_chooser = default_element_chooser()
    chi_seed = chi_seed or Character(())
    I = frozenset(range(1, m + 1))
    root = commgraph.handle(n, I)
    target_autos = []
    for label, word in targets:
        phi = autf.eval_nielsen_word(word, n)
        if not autf.is_IA(phi):
            raise AssemblyError(f"target {label} is not commutator-trivial on Z^n")
        target_autos.append((label, word, phi))

    # vertex records: (handle, forced automorphism or None, target label or None);
    # intermediates deduplicate by exact handle value, target endpoints are
    # always kept as dedicated vertices with a forced element choice
    vertices = [(root, None, None)]
    seen = {(root.indices, root.conjugator)}
    endpoint_vertex = {}
    for label, word, phi in target_autos:
        path = commgraph.conjugate_path(n, I, word)
        if not commgraph.verify_path(path):
            raise AssemblyError(f"path for target {label} fails verification")
        for h in path.handles[:-1]:
            key = (h.indices, h.conjugator)
            if key not in seen:
                seen.add(key)
                vertices.append((h, None, None))
        endpoint_vertex[label] = len(vertices)
        vertices.append((path.handles[-1], phi, label))

    # BFS distances over the elementwise-commutation relation
    adjacency = {v: set() for v in range(len(vertices))}
    for a in range(len(vertices)):
        for b in range(a + 1, len(vertices)):
            if commgraph.commutes(vertices[a][0], vertices[b][0]):
                adjacency[a].add(b)
                adjacency[b].add(a)
    dist = {0: 0}
    frontier = [0]
    while frontier:
        nxt = []
        for v in frontier:
            for u in adjacency[v]:
                if u not in dist:
                    dist[u] = dist[v] + 1
                    nxt.append(u)
        frontier = nxt
    if len(dist) != len(vertices):
        raise AssemblyError("collected vertices do not form a connected subgraph")
    order = sorted(range(len(vertices)), key=lambda v: (dist[v], v))

    elements = []
    chi = []
    witnesses = []
    report = AssemblyReport()
    position_of_vertex = {}
    for rank_pos, v in enumerate(order):
        h, forced, label = vertices[v]
        position = rank_pos + 1
        position_of_vertex[v] = position
        if forced is not None:
            g = elements[0].conjugate(forced)
            value = chi[0]
            report.forced_positions.append(position)
        else:
            chosen = element_chooser(h)
            if chosen is None:
                raise AssemblyError(f"chooser failed at vertex {h.to_json_obj()}")
            g, value = chosen
            if value == 0:
                raise AssemblyError("chooser supplied a vanishing character value")
            base = g.conjugate(h.conjugator_automorphism().inverse())
            if not autf.minimal_support(base) <= h.indices:
                raise AssemblyError("chooser element is outside the handle parabolic")
        elements.append(g)
        chi.append(Fraction(value))
        report.vertex_order.append(h.to_json_obj())
        if position > 1:
            parent = min(
                (u for u in adjacency[v] if dist[u] < dist[v]),
                key=lambda u: (dist[u], u),
                default=None,
            )
            if parent is None:
                raise AssemblyError("vertex has no earlier neighbor")
            witnesses.append(Witness(position, position_of_vertex[parent], ()))

    # append the targets with conjugation witnesses [x1, t] = x1^-1 * x1^t
    for label, word, phi in target_autos:
        position = len(elements) + 1
        conj_pos = position_of_vertex[endpoint_vertex[label]]
        elements.append(phi)
        chi.append(chi_seed.value_of(phi))
        witnesses.append(Witness(position, 1, (-1, conj_pos)))
    cert = BnsCertificate(tuple(elements), tuple(chi), tuple(witnesses))
    return cert, report
