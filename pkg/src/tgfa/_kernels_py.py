"""Pure-Python Levenshtein kernel; fallback when the extension is absent.

Must stay behaviorally identical to tgfa._speedups.levenshtein.
"""

from __future__ import annotations

__all__ = ["levenshtein"]


def levenshtein(a: str, b: str) -> int:
    """Unit-cost edit distance over Unicode scalar values (two-row DP)."""
    if a == b:
        return 0
    # Trim the common prefix and suffix; they never contribute edits.
    lo = 0
    hi_a, hi_b = len(a), len(b)
    while lo < hi_a and lo < hi_b and a[lo] == b[lo]:
        lo += 1
    while hi_a > lo and hi_b > lo and a[hi_a - 1] == b[hi_b - 1]:
        hi_a -= 1
        hi_b -= 1
    a, b = a[lo:hi_a], b[lo:hi_b]
    if not a:
        return len(b)
    if not b:
        return len(a)
    if len(b) > len(a):
        a, b = b, a
    row = list(range(len(b) + 1))
    for i, ca in enumerate(a, start=1):
        prev = row[0]
        row[0] = i
        for j, cb in enumerate(b, start=1):
            cur = row[j]
            if ca == cb:
                row[j] = prev
            else:
                x = row[j - 1]
                if cur < x:
                    x = cur
                if prev < x:
                    x = prev
                row[j] = x + 1
            prev = cur
    return row[-1]
