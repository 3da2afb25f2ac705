"""Pure-Python exhaustive enumeration of GF(2) assignments.

Gray-code walk over all 2^n assignments of the edge bits; each step flips a
single bit, so the tracked (key value, transcript value) pair is updated
with two table lookups instead of re-evaluating every linear form. The
compiled twin in _exhaustive.pyx implements the identical walk.
"""

from __future__ import annotations

DENSE_VALUE_BITS = 22


def _flip_tables(key_masks, msg_masks, n_bits):
    flips_k = [0] * n_bits
    flips_f = [0] * n_bits
    for b in range(n_bits):
        bit = 1 << b
        for i, mask in enumerate(key_masks):
            if mask & bit:
                flips_k[b] |= 1 << i
        for i, mask in enumerate(msg_masks):
            if mask & bit:
                flips_f[b] |= 1 << i
    return flips_k, flips_f


def joint_value_counts(key_masks, msg_masks, n_bits):
    """Histogram of (key bits, transcript bits) over all 2^n_bits assignments.

    Returns {(key_value, transcript_value): count} with every assignment
    counted exactly once.
    """
    if n_bits < 0:
        raise ValueError("n_bits must be nonnegative")
    kb, fb = len(key_masks), len(msg_masks)
    for mask in list(key_masks) + list(msg_masks):
        if mask < 0 or mask >> n_bits:
            raise ValueError("form touches bits outside the assignment space")
    flips_k, flips_f = _flip_tables(key_masks, msg_masks, n_bits)
    total = 1 << n_bits
    kval = fval = 0
    if kb + fb <= DENSE_VALUE_BITS:
        counts = [0] * (1 << (kb + fb))
        counts[0] += 1
        for g in range(1, total):
            b = (g & -g).bit_length() - 1
            kval ^= flips_k[b]
            fval ^= flips_f[b]
            counts[(kval << fb) | fval] += 1
        return {
            (idx >> fb, idx & ((1 << fb) - 1)): c
            for idx, c in enumerate(counts)
            if c
        }
    counts: dict[tuple[int, int], int] = {(0, 0): 1}
    for g in range(1, total):
        b = (g & -g).bit_length() - 1
        kval ^= flips_k[b]
        fval ^= flips_f[b]
        key = (kval, fval)
        counts[key] = counts.get(key, 0) + 1
    return counts
