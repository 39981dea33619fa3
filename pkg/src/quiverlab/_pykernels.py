"""Pure-Python necklace kernels (fallback for ``_ckernels``).

Words are tuples of double-quiver arrow indices where ``c ^ 1`` is the
dual of ``c`` and even indices are base arrows.
"""
from __future__ import annotations


def least_rotation_start(s) -> int:
    """Start index of the lexicographically least rotation (Booth)."""
    n = len(s)
    if n == 0:
        return 0
    f = [-1] * (2 * n)
    k = 0
    for j in range(1, 2 * n):
        sj = s[j % n]
        i = f[j - k - 1]
        while i != -1 and sj != s[(k + i + 1) % n]:
            if sj < s[(k + i + 1) % n]:
                k = j - i - 1
            i = f[i]
        if sj != s[(k + i + 1) % n]:
            if sj < s[k % n]:
                k = j
            f[j - k] = -1
        else:
            f[j - k] = i + 1
    return k % n


def least_rotation(s) -> tuple:
    s = tuple(s)
    k = least_rotation_start(s)
    return s[k:] + s[:k]


def bracket_counts(w1, w2) -> dict:
    """Signed counts of glued necklaces for one pair of words.

    Every position of ``c`` in ``w1`` paired with a position of ``c ^ 1`` in
    ``w2`` contributes the rotation class of (rest of w1 after c) followed
    by (rest of w2 after c ^ 1), with sign + when c is a base arrow.
    Keys are least rotations; a key ``()`` means the vertex necklace.
    """
    w1 = tuple(w1)
    w2 = tuple(w2)
    out: dict = {}
    for i, c in enumerate(w1):
        d = c ^ 1
        sign = -1 if c & 1 else 1
        u = w1[i + 1:] + w1[:i]
        for j, x in enumerate(w2):
            if x != d:
                continue
            key = least_rotation(u + w2[j + 1:] + w2[:j])
            n = out.get(key, 0) + sign
            if n:
                out[key] = n
            else:
                del out[key]
    return out
