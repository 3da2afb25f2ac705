# cython: language_level=3
"""Compiled twin of _exhaustive_py: Gray-code walk over all assignments.

Handles the dense case only (key bits + message bits <= 22, n_bits <= 30);
the dispatcher falls back to the pure-Python module outside that envelope.
"""

from libc.stdlib cimport calloc, free


def joint_value_counts(list key_masks, list msg_masks, int n_bits):
    cdef int kb = len(key_masks)
    cdef int fb = len(msg_masks)
    if n_bits < 0 or n_bits > 30:
        raise ValueError("compiled kernel handles n_bits <= 30")
    if kb + fb > 22:
        raise ValueError("compiled kernel handles <= 22 tracked forms")
    cdef unsigned long long mask
    for mask_obj in key_masks + msg_masks:
        mask = mask_obj
        if mask >> n_bits:
            raise ValueError("form touches bits outside the assignment space")

    cdef unsigned int *flips = <unsigned int *> calloc(max(n_bits, 1), sizeof(unsigned int))
    cdef unsigned long long *counts = <unsigned long long *> calloc(
        1ULL << (kb + fb), sizeof(unsigned long long))
    if flips == NULL or counts == NULL:
        free(flips)
        free(counts)
        raise MemoryError()

    cdef int b, i
    cdef unsigned int packed
    # packed value layout: key bits above, transcript bits below
    for b in range(n_bits):
        packed = 0
        for i in range(kb):
            if (<unsigned long long> key_masks[i]) >> b & 1:
                packed |= 1u << (fb + i)
        for i in range(fb):
            if (<unsigned long long> msg_masks[i]) >> b & 1:
                packed |= 1u << i
        flips[b] = packed

    cdef unsigned long long g, total = 1ULL << n_bits
    cdef unsigned long long low
    cdef unsigned int val = 0
    counts[0] += 1
    for g in range(1, total):
        low = g & (~g + 1)
        b = 0
        while low > 1:
            low >>= 1
            b += 1
        val ^= flips[b]
        counts[val] += 1

    cdef dict out = {}
    cdef unsigned long long idx
    for idx in range(1ULL << (kb + fb)):
        if counts[idx]:
            out[(idx >> fb, idx & ((1u << fb) - 1))] = counts[idx]
    free(flips)
    free(counts)
    return out
