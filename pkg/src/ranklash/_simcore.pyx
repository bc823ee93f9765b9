# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled episode kernel for the repeated ranking contest.

Mirrors the numpy fallback operation for operation: the same
counter-based uniform stream, the same share selection, and the same
unfused multiply-add order, so totals are bit-identical across engines.
"""

from libc.stdint cimport uint64_t


cdef uint64_t GOLDEN = 0x9E3779B97F4A7C15u
cdef uint64_t MIX_A = 0xBF58476D1CE4E5B9u
cdef uint64_t MIX_B = 0x94D049BB133111EBu
cdef double INV_2_53 = 1.0 / 9007199254740992.0


cdef inline uint64_t mix64(uint64_t z) nogil:
    z = (z ^ (z >> 30)) * MIX_A
    z = (z ^ (z >> 27)) * MIX_B
    return z ^ (z >> 31)


cdef inline double uniform01(uint64_t base, uint64_t offset) nogil:
    return <double> (mix64(base + offset) >> 11) * INV_2_53


def run_pair_batch(
    long long e_start,
    long long e_stop,
    uint64_t seed,
    const unsigned char[::1] actions1,
    const unsigned char[::1] actions2,
    const double[::1] cost1,
    const double[::1] cost2,
    double p1,
    double p2,
    double beta,
    double delta1,
    double delta2,
    double[::1] out1,
    double[::1] out2,
):
    """Simulate episodes [e_start, e_stop) and write discounted totals."""
    cdef Py_ssize_t rounds = actions1.shape[0]
    cdef Py_ssize_t count = e_stop - e_start
    cdef double half = 0.5
    cdef double beta_half = 0.5 * beta
    cdef double acc1, acc2, w1, w2, m1, m2, u1, u2
    cdef uint64_t base, off1, off2
    cdef Py_ssize_t i, t
    cdef long long episode
    cdef bint a1, a2, s1, s2

    with nogil:
        for i in range(count):
            episode = e_start + i
            base = mix64(seed + GOLDEN * (<uint64_t> episode + 1u))
            acc1 = 0.0
            acc2 = 0.0
            w1 = 1.0
            w2 = 1.0
            for t in range(rounds):
                a1 = actions1[t]
                a2 = actions2[t]
                if a1 and a2:
                    off1 = GOLDEN * (<uint64_t> (2 * t + 1))
                    off2 = GOLDEN * (<uint64_t> (2 * t + 2))
                    u1 = uniform01(base, off1)
                    u2 = uniform01(base, off2)
                    s1 = u1 < p1
                    s2 = u2 < p2
                    if s1 and s2:
                        m1 = beta_half
                        m2 = beta_half
                    elif s1:
                        m1 = 1.0
                        m2 = 0.0
                    elif s2:
                        m1 = 0.0
                        m2 = 1.0
                    else:
                        m1 = half
                        m2 = half
                elif a1:
                    off1 = GOLDEN * (<uint64_t> (2 * t + 1))
                    u1 = uniform01(base, off1)
                    s1 = u1 < p1
                    if s1:
                        m1 = 1.0
                        m2 = 0.0
                    else:
                        m1 = half
                        m2 = half
                elif a2:
                    off2 = GOLDEN * (<uint64_t> (2 * t + 2))
                    u2 = uniform01(base, off2)
                    s2 = u2 < p2
                    if s2:
                        m1 = 0.0
                        m2 = 1.0
                    else:
                        m1 = half
                        m2 = half
                else:
                    m1 = half
                    m2 = half
                acc1 = acc1 + w1 * (m1 - cost1[t])
                acc2 = acc2 + w2 * (m2 - cost2[t])
                w1 = w1 * delta1
                w2 = w2 * delta2
            out1[i] = acc1
            out2[i] = acc2
