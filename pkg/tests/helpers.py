"""Shared test helpers and independent oracles.

The derivation oracle computes degree-k images of nested group
commutators without any Magnus expansion: generator images act as
substitution derivations on tensors and nested commutators map to
nested derivation brackets.  It shares no code path with the library's
expansion route, so agreement is a genuine dual-route check.
"""

import random

from autfilt import autf


def derivation_apply(D, tensor):
    """Extend D: {i: tensor dict} to a derivation and apply to a tensor."""
    out = {}
    for mono, c in tensor.items():
        for p, letter in enumerate(mono):
            img = D.get(letter)
            if not img:
                continue
            for m2, c2 in img.items():
                key = mono[:p] + m2 + mono[p + 1:]
                s = out.get(key, 0) + c * c2
                if s:
                    out[key] = s
                else:
                    out.pop(key, None)
    return out


def derivation_bracket(D1, D2, n):
    """[D1, D2] restricted to generators: i -> D1(D2 e_i) - D2(D1 e_i)."""
    out = {}
    for i in range(1, n + 1):
        t = {}
        if i in D2:
            t = derivation_apply(D1, D2[i])
        if i in D1:
            for k, v in derivation_apply(D2, D1[i]).items():
                s = t.get(k, 0) - v
                if s:
                    t[k] = s
                else:
                    t.pop(k, None)
        if t:
            out[i] = t
    return out


def generator_derivation(phi, n):
    """Derivation of a degree-1 generator: i -> tensor of its deviation."""
    out = {}
    for i in range(1, n + 1):
        img = phi.images[i - 1]
        if img.letters == ((i, 1),):
            continue
        # deviation must be a single bracket of two letters for this oracle
        from autfilt.magnus import magnus_expand
        from autfilt.autf import FreeWord

        dev = magnus_expand(FreeWord.generator(n, i).inverse() * img, 2)
        part = dev.homogeneous_part(2)
        if part:
            out[i] = part
    return out


def left_normed_derivation(phis, n):
    """Derivation image of a left-normed group commutator of generators."""
    acc = generator_derivation(phis[0], n)
    for phi in phis[1:]:
        acc = derivation_bracket(acc, generator_derivation(phi, n), n)
    return acc


def random_nielsen_word(rng, n, length):
    word = []
    for _ in range(length):
        i = rng.randrange(1, n + 1)
        j = rng.choice([a for a in range(1, n + 1) if a != i])
        word.append((rng.choice(("L", "R")), i, j, rng.choice((1, -1))))
    return tuple(word)


def random_word(rng, n, length):
    letters = [
        (rng.randrange(1, n + 1), rng.choice((1, -1))) for _ in range(length)
    ]
    return autf.FreeWord(n, letters)


def random_generator(rng, n):
    """A random member of the named degree-1 generator families."""
    kind = rng.choice(("L", "R", "C", "M"))
    i, j = rng.sample(range(1, n + 1), 2)
    if kind in ("L", "R"):
        return autf.make_nielsen(kind, i, j, rng.choice((1, -1)), n)
    if kind == "C":
        return autf.make_magnus_C(i, j, n)
    k = rng.choice([a for a in range(1, n + 1) if a not in (i, j)])
    return autf.make_magnus_M(i, j, k, n)


def random_automorphism(rng, n, length=4):
    acc = autf.identity_automorphism(n)
    for _ in range(length):
        acc = acc.compose(random_generator(rng, n))
    return acc


def brute_lyndon_count(n, m):
    """Count Lyndon words by direct rotation-minimality over all n^m words."""
    import itertools

    count = 0
    for w in itertools.product(range(1, n + 1), repeat=m):
        if all(w < w[r:] + w[:r] for r in range(1, m)):
            count += 1
    return count


def brute_necklace_count(n, m):
    import itertools

    reps = set()
    for w in itertools.product(range(1, n + 1), repeat=m):
        reps.add(min(w[r:] + w[:r] for r in range(m)))
    return len(reps)
