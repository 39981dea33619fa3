"""Brute-force oracles, written independently of the library code paths.

They share only the input data structures (quivers, forms) with the
library; the algorithms are deliberately naive.
"""
from __future__ import annotations

import itertools
from collections import Counter
from fractions import Fraction


# --- necklace bracket on arrow *names* ------------------------------------


def _min_rotation_names(names, order):
    rots = [tuple(names[i:] + names[:i]) for i in range(len(names))]
    return min(rots, key=lambda r: [order[x] for x in r])


def bracket_by_enumeration(dq, w1: list[str], w2: list[str]) -> dict:
    """Bracket computed occurrence by occurrence on name lists.

    Returns ``{canonical name tuple or ('e_<v>',): coefficient}``.
    """
    order = {a.id: n for n, a in enumerate(dq.arrows)}
    out: Counter = Counter()
    for base in dq.base.arrows:
        a, s = base.id, base.id + "*"
        for sign, x, y in ((1, a, s), (-1, s, a)):
            for i, n1 in enumerate(w1):
                if n1 != x:
                    continue
                for j, n2 in enumerate(w2):
                    if n2 != y:
                        continue
                    u = w1[i + 1:] + w1[:i]
                    v = w2[j + 1:] + w2[:j]
                    glued = u + v
                    if glued:
                        key = _min_rotation_names(glued, order)
                    else:
                        key = ("e_" + base.tail,)
                    out[key] += sign
    return {k: Fraction(c) for k, c in out.items() if c}


def lie_to_names(dq, elt) -> dict:
    out = {}
    for w, c in elt.items():
        if w.arrows:
            out[tuple(dq.name(x) for x in w.arrows)] = c
        else:
            out[("e_" + dq.vertices[w.vertex],)] = c
    return out


# --- roots by descent ---------------------------------------------------------


def _tits(quiver, a, b):
    k = quiver.k
    m = [[2 * int(i == j) for j in range(k)] for i in range(k)]
    for arrow in quiver.arrows:
        t, h = quiver.vertex_index(arrow.tail), quiver.vertex_index(arrow.head)
        m[t][h] -= 1
        m[h][t] -= 1
    return sum(a[i] * m[i][j] * b[j] for i in range(k) for j in range(k))


def _connected(quiver, a):
    supp = {i for i, x in enumerate(a) if x}
    if not supp:
        return False
    edges = [(quiver.vertex_index(x.tail), quiver.vertex_index(x.head)) for x in quiver.arrows]
    comp = {min(supp)}
    changed = True
    while changed:
        changed = False
        for t, h in edges:
            if t in supp and h in supp and (t in comp) != (h in comp):
                comp |= {t, h}
                changed = True
    return comp == supp


def root_kind(quiver, a) -> str | None:
    """'real', 'imaginary' or None, by reflecting downwards until stuck."""
    k = quiver.k
    loops = [sum(1 for x in quiver.arrows if x.tail == x.head == quiver.vertices[i])
             for i in range(k)]
    loop_free = [i for i in range(k) if loops[i] == 0]
    a = list(a)
    if not any(a) or min(a) < 0:
        return None
    while True:
        if sum(a) == 1 and loops[a.index(1)] == 0:
            return "real"
        unit = lambda j: [int(i == j) for i in range(k)]  # noqa: E731
        if _connected(quiver, a) and all(_tits(quiver, a, unit(j)) <= 0 for j in loop_free):
            return "imaginary"
        for i in loop_free:
            t = _tits(quiver, a, unit(i))
            if t > 0:
                a[i] -= t
                break
        else:
            return None
        if min(a) < 0:
            return None


# --- Sigma_lambda by explicit decompositions ---------------------------------


def p_value(quiver, a) -> int:
    return 1 - _tits(quiver, a, a) // 2


def all_vectors(box):
    for v in itertools.product(*(range(b + 1) for b in box)):
        if any(v):
            yield v


def decompositions(parts, target):
    """All multisets from ``parts`` (sorted list) summing to ``target``."""
    def rec(start, rem, acc):
        if not any(rem):
            yield list(acc)
            return
        for n in range(start, len(parts)):
            r = parts[n]
            if all(x <= y for x, y in zip(r, rem)):
                acc.append(r)
                yield from rec(n, tuple(y - x for x, y in zip(r, rem)), acc)
                acc.pop()
    yield from rec(0, tuple(target), [])


def sigma_by_brute_force(quiver, lam, box) -> list[tuple[int, ...]]:
    lam_roots = sorted(v for v in all_vectors(box)
                       if root_kind(quiver, v) and sum(Fraction(l) * x for l, x in zip(lam, v)) == 0)
    out = []
    for b in lam_roots:
        pb = p_value(quiver, b)
        ok = True
        for dec in decompositions([r for r in lam_roots if all(x <= y for x, y in zip(r, b))], b):
            if len(dec) >= 2 and pb <= sum(p_value(quiver, r) for r in dec):
                ok = False
                break
        if ok:
            out.append(b)
    return out


def types_by_brute_force(quiver, sigma_set, alpha) -> set:
    """Representation types as frozensets of Counter items (e, beta)."""
    alpha = tuple(alpha)
    cands = [(e, b) for b in sigma_set for e in range(1, max(alpha) + 1)
             if all(e * x <= y for x, y in zip(b, alpha))]
    found = set()
    for size in range(1, sum(alpha) + 1):
        for combo in itertools.combinations_with_replacement(cands, size):
            total = tuple(sum(e * b[i] for e, b in combo) for i in range(len(alpha)))
            if total != alpha:
                continue
            betas = Counter(b for _, b in combo)
            if any(n > 1 and p_value(quiver, b) == 0 for b, n in betas.items()):
                continue
            found.add(tuple(sorted(combo)))
    return found


def minimal_by_brute_force(sigma_set, alpha) -> bool:
    """alpha is not a sum of two or more (not necessarily distinct) members."""
    parts = sorted(b for b in sigma_set if all(x <= y for x, y in zip(b, alpha)))
    return not any(len(d) >= 2 for d in decompositions(parts, tuple(alpha)))
