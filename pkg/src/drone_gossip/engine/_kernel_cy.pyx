# cython: language_level=3, boundscheck=False, wraparound=False, initializedcheck=False, cdivision=True
"""Compiled event loop; C translation of ``_kernel_py.simulate``.

Mirrors the pure kernel exactly: same xoshiro256++ recurrence, same draw
order, same floating-point expression shapes.  Given a seed, both kernels
produce bit-identical results (asserted by the kernel-equivalence tests).
Keep the two files in lockstep.
"""

from libc.stdint cimport uint64_t, int64_t
from libc.math cimport log

import numpy as np

cdef double TWO_NEG53 = 1.0 / 9007199254740992.0

cdef int MODE_FULLY_CONNECTED = 0
cdef int MODE_GENERAL = 1


cdef inline uint64_t _rotl(uint64_t x, int k) noexcept nogil:
    return (x << k) | (x >> (64 - k))


cdef inline uint64_t _next_u64(uint64_t* s) noexcept nogil:
    cdef uint64_t x = s[0] + s[3]
    cdef uint64_t result = _rotl(x, 23) + s[0]
    cdef uint64_t t = s[1] << 17
    s[2] ^= s[0]
    s[3] ^= s[1]
    s[1] ^= s[2]
    s[0] ^= s[3]
    s[2] ^= t
    s[3] = _rotl(s[3], 45)
    return result


cdef inline double _next_double(uint64_t* s) noexcept nogil:
    return ((_next_u64(s) >> 11) + 0.5) * TWO_NEG53


cdef inline void _bump_node(
    Py_ssize_t j, Py_ssize_t c, int64_t new_v, double t, bint crossed, int m,
    int64_t[:] node_v, double[:] acc_node, double[:] last_node_t,
    int64_t[:] cell_max, double[:] acc_cell, double[:] last_cell_t,
    int64_t[:] tracker_ver, double[:] tracker_t0, int64_t[:] tracker_cnt,
    list lag,
):
    cdef int64_t old = node_v[j]
    cdef int64_t tv
    if crossed:
        acc_node[j] += old * (t - last_node_t[j])
        last_node_t[j] = t
    node_v[j] = new_v
    if new_v > cell_max[c]:
        if crossed:
            acc_cell[c] += cell_max[c] * (t - last_cell_t[c])
            last_cell_t[c] = t
        cell_max[c] = new_v
    tv = tracker_ver[c]
    if tv >= 0 and old < tv and tv <= new_v:
        tracker_cnt[c] += 1
        if tracker_cnt[c] == m:
            (<list>lag[c]).append(t - tracker_t0[c])
            tracker_ver[c] = -1


def simulate(
    int n,
    int f,
    int m,
    double lam_total,
    double c_e,
    double c_s,
    double c_m,
    double c_d,
    double horizon,
    double t_burn,
    int mobility_mode,
    double[:, :] jump_cum,
    unsigned long long s0,
    unsigned long long s1,
    unsigned long long s2,
    unsigned long long s3,
):
    cdef uint64_t s[4]
    s[0] = s0
    s[1] = s1
    s[2] = s2
    s[3] = s3

    node_v_arr = np.zeros(n, dtype=np.int64)
    acc_node_arr = np.zeros(n, dtype=np.float64)
    last_node_t_arr = np.zeros(n, dtype=np.float64)
    cell_max_arr = np.zeros(f, dtype=np.int64)
    acc_cell_arr = np.zeros(f, dtype=np.float64)
    last_cell_t_arr = np.zeros(f, dtype=np.float64)
    last_delivery_arr = np.full(f, -1.0)
    last_exit_arr = np.full(f, -1.0)
    tracker_ver_arr = np.full(f, -1, dtype=np.int64)
    tracker_t0_arr = np.zeros(f, dtype=np.float64)
    tracker_cnt_arr = np.zeros(f, dtype=np.int64)

    cdef int64_t[:] node_v = node_v_arr
    cdef double[:] acc_node = acc_node_arr
    cdef double[:] last_node_t = last_node_t_arr
    cdef int64_t[:] cell_max = cell_max_arr
    cdef double[:] acc_cell = acc_cell_arr
    cdef double[:] last_cell_t = last_cell_t_arr
    cdef double[:] last_delivery = last_delivery_arr
    cdef double[:] last_exit = last_exit_arr
    cdef int64_t[:] tracker_ver = tracker_ver_arr
    cdef double[:] tracker_t0 = tracker_t0_arr
    cdef int64_t[:] tracker_cnt = tracker_cnt_arr

    renewal = [[] for _ in range(f)]
    return_time = [[] for _ in range(f)]
    lag = [[] for _ in range(f)]
    hist = {}
    cdef int64_t counts[5]
    counts[0] = counts[1] = counts[2] = counts[3] = counts[4] = 0

    cdef int64_t src_v = 0
    cdef int64_t drone_v = 0
    cdef Py_ssize_t cell = 0
    cdef double now = 0.0
    cdef double acc_src = 0.0
    cdef double last_src_t = 0.0
    cdef double last_age_t = 0.0
    cdef bint crossed = t_burn <= 0.0
    cdef int64_t num_events = 0
    cdef int f1 = f - 1
    cdef int m1 = m - 1

    cdef double u, u2, dt, t
    cdef Py_ssize_t i, c, j, dest, base, sender, off, r
    cdef int64_t k, sv

    while True:
        u = _next_double(s)
        dt = -log(u) / lam_total
        t = now + dt
        if t > horizon:
            break
        if not crossed and t >= t_burn:
            crossed = True
            last_src_t = t_burn
            last_age_t = t_burn
            for i in range(n):
                last_node_t[i] = t_burn
            for c in range(f):
                last_cell_t[c] = t_burn
        now = t
        num_events += 1
        u = _next_double(s)

        if u < c_e:
            counts[0] += 1
            if crossed:
                acc_src += src_v * (t - last_src_t)
                last_src_t = t
                k = src_v - drone_v
                hist[k] = hist.get(k, 0.0) + (t - last_age_t)
                last_age_t = t
            src_v += 1

        elif u < c_s:
            counts[1] += 1
            if crossed:
                k = src_v - drone_v
                hist[k] = hist.get(k, 0.0) + (t - last_age_t)
                last_age_t = t
            drone_v = src_v

        elif u < c_m:
            counts[2] += 1
            if mobility_mode == MODE_FULLY_CONNECTED:
                r = <Py_ssize_t>(_next_u64(s) % <uint64_t>f1)
                dest = r + 1 if r >= cell else r
            elif mobility_mode == MODE_GENERAL:
                u2 = _next_double(s)
                dest = cell
                for j in range(f):
                    if u2 < jump_cum[cell, j]:
                        dest = j
                        break
            else:
                dest = cell
            if dest != cell:
                if crossed:
                    last_exit[cell] = t
                    if last_exit[dest] >= 0.0:
                        (<list>return_time[dest]).append(t - last_exit[dest])
                cell = dest

        elif u < c_d:
            counts[3] += 1
            j = cell * m + <Py_ssize_t>(_next_u64(s) % <uint64_t>m)
            if drone_v > node_v[j]:
                _bump_node(
                    j, cell, drone_v, t, crossed, m,
                    node_v, acc_node, last_node_t,
                    cell_max, acc_cell, last_cell_t,
                    tracker_ver, tracker_t0, tracker_cnt, lag,
                )
            if crossed:
                if last_delivery[cell] >= 0.0:
                    (<list>renewal[cell]).append(t - last_delivery[cell])
                last_delivery[cell] = t
                if tracker_ver[cell] < 0:
                    base = cell * m
                    k = 0
                    for i in range(base, base + m):
                        if node_v[i] >= drone_v:
                            k += 1
                    if k == m:
                        (<list>lag[cell]).append(0.0)
                    else:
                        tracker_ver[cell] = drone_v
                        tracker_t0[cell] = t
                        tracker_cnt[cell] = k

        else:
            counts[4] += 1
            if m1 > 0:
                sender = <Py_ssize_t>(_next_u64(s) % <uint64_t>n)
                r = <Py_ssize_t>(_next_u64(s) % <uint64_t>m1)
                base = (sender // m) * m
                off = sender - base
                j = base + (r + 1 if r >= off else r)
                sv = node_v[sender]
                if sv > node_v[j]:
                    _bump_node(
                        j, sender // m, sv, t, crossed, m,
                        node_v, acc_node, last_node_t,
                        cell_max, acc_cell, last_cell_t,
                        tracker_ver, tracker_t0, tracker_cnt, lag,
                    )

    if not crossed:
        crossed = True
        last_src_t = t_burn
        last_age_t = t_burn
        for i in range(n):
            last_node_t[i] = t_burn
        for c in range(f):
            last_cell_t[c] = t_burn
    acc_src += src_v * (horizon - last_src_t)
    k = src_v - drone_v
    hist[k] = hist.get(k, 0.0) + (horizon - last_age_t)
    for i in range(n):
        acc_node[i] += node_v[i] * (horizon - last_node_t[i])
    for c in range(f):
        acc_cell[c] += cell_max[c] * (horizon - last_cell_t[c])

    return {
        "acc_source": acc_src,
        "acc_node": acc_node_arr,
        "acc_cell_max": acc_cell_arr,
        "hist": hist,
        "renewal": renewal,
        "return_time": return_time,
        "lag": lag,
        "counts": [counts[0], counts[1], counts[2], counts[3], counts[4]],
        "num_events": num_events,
        "source_version": src_v,
        "drone_version": drone_v,
        "drone_cell": cell,
        "node_versions": node_v_arr,
        "rng_state": (s[0], s[1], s[2], s[3]),
        "trace": None,
    }
