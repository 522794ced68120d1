"""Pure-Python event loop; reference implementation of the simulation kernel.

The compiled kernel (`_kernel_cy`) is a direct C translation of this loop:
same xoshiro256++ recurrence, same draw order, same floating-point
expression shapes, so the two produce bit-identical results for a given
seed.  Any change here must be mirrored there.

Event scheduling is exact superposition sampling: inter-event times are
exponential with the constant total rate, the event kind is chosen
categorically from precomputed cumulative thresholds.  Per-event work is
O(1); time-averaged ages are maintained lazily as counter integrals updated
only when the counter changes.

Draw order per event: one double for the gap, one double for the kind, then
kind-specific draws (move: one u64 in fully-connected mode or one double in
general mode; delivery: one u64; gossip in cells of >= 2 nodes: two u64).
"""

from __future__ import annotations

from math import log

from ..rng import MASK64, TWO_NEG53

# Event kind codes, also used in trace records and count vectors.
SOURCE_UPDATE = 0
SOURCE_TO_DRONE = 1
DRONE_MOVE = 2
DRONE_DISSEMINATE = 3
GOSSIP = 4

# Mobility modes.
MODE_FULLY_CONNECTED = 0
MODE_GENERAL = 1
MODE_SINGLE_CELL = 2


def simulate(
    n: int,
    f: int,
    m: int,
    lam_total: float,
    c_e: float,
    c_s: float,
    c_m: float,
    c_d: float,
    horizon: float,
    t_burn: float,
    mobility_mode: int,
    jump_cum,
    s0: int,
    s1: int,
    s2: int,
    s3: int,
    collect_trace: bool = False,
) -> dict:
    node_v = [0] * n
    acc_node = [0.0] * n
    last_node_t = [0.0] * n
    cell_max = [0] * f
    acc_cell = [0.0] * f
    last_cell_t = [0.0] * f
    last_delivery = [-1.0] * f
    last_exit = [-1.0] * f
    tracker_ver = [-1] * f
    tracker_t0 = [0.0] * f
    tracker_cnt = [0] * f
    renewal = [[] for _ in range(f)]
    return_time = [[] for _ in range(f)]
    lag = [[] for _ in range(f)]
    hist: dict[int, float] = {}
    counts = [0, 0, 0, 0, 0]
    trace = [] if collect_trace else None

    jump_rows = jump_cum.tolist() if mobility_mode == MODE_GENERAL else None

    src_v = 0
    drone_v = 0
    cell = 0
    now = 0.0
    acc_src = 0.0
    last_src_t = 0.0
    last_age_t = 0.0
    crossed = t_burn <= 0.0
    num_events = 0
    f1 = f - 1
    m1 = m - 1

    def next_u64() -> int:
        nonlocal s0, s1, s2, s3
        x = (s0 + s3) & MASK64
        result = (((x << 23) | (x >> 41)) + s0) & MASK64
        t_ = (s1 << 17) & MASK64
        s2 ^= s0
        s3 ^= s1
        s1 ^= s2
        s0 ^= s3
        s2 ^= t_
        s3 = ((s3 << 45) | (s3 >> 19)) & MASK64
        return result

    def start_window() -> None:
        # Metrics epoch begins at t_burn; version state carries over.
        nonlocal last_src_t, last_age_t
        last_src_t = t_burn
        last_age_t = t_burn
        for i in range(n):
            last_node_t[i] = t_burn
        for c in range(f):
            last_cell_t[c] = t_burn

    def bump_node(j: int, c: int, new_v: int, t: float) -> None:
        # Raise node j's version; caller guarantees new_v > node_v[j].
        old = node_v[j]
        if crossed:
            acc_node[j] += old * (t - last_node_t[j])
            last_node_t[j] = t
        node_v[j] = new_v
        assert new_v <= drone_v <= src_v
        if new_v > cell_max[c]:
            if crossed:
                acc_cell[c] += cell_max[c] * (t - last_cell_t[c])
                last_cell_t[c] = t
            cell_max[c] = new_v
        tv = tracker_ver[c]
        if tv >= 0 and old < tv <= new_v:
            tracker_cnt[c] += 1
            if tracker_cnt[c] == m:
                lag[c].append(t - tracker_t0[c])
                tracker_ver[c] = -1

    while True:
        u = ((next_u64() >> 11) + 0.5) * TWO_NEG53
        dt = -log(u) / lam_total
        t = now + dt
        if t > horizon:
            break
        if not crossed and t >= t_burn:
            crossed = True
            start_window()
        now = t
        num_events += 1
        u = ((next_u64() >> 11) + 0.5) * TWO_NEG53

        if u < c_e:
            counts[SOURCE_UPDATE] += 1
            if crossed:
                acc_src += src_v * (t - last_src_t)
                last_src_t = t
                k = src_v - drone_v
                hist[k] = hist.get(k, 0.0) + (t - last_age_t)
                last_age_t = t
            src_v += 1
            if collect_trace:
                trace.append((SOURCE_UPDATE, t, -1, -1))

        elif u < c_s:
            counts[SOURCE_TO_DRONE] += 1
            if crossed:
                k = src_v - drone_v
                hist[k] = hist.get(k, 0.0) + (t - last_age_t)
                last_age_t = t
            drone_v = src_v
            if collect_trace:
                trace.append((SOURCE_TO_DRONE, t, -1, -1))

        elif u < c_m:
            counts[DRONE_MOVE] += 1
            if mobility_mode == MODE_FULLY_CONNECTED:
                r = next_u64() % f1
                dest = r + 1 if r >= cell else r
            elif mobility_mode == MODE_GENERAL:
                u2 = ((next_u64() >> 11) + 0.5) * TWO_NEG53
                row = jump_rows[cell]
                dest = cell  # self-loop when u2 exceeds the row's total mass
                for j in range(f):
                    if u2 < row[j]:
                        dest = j
                        break
            else:
                dest = cell
            if dest != cell:
                if crossed:
                    last_exit[cell] = t
                    if last_exit[dest] >= 0.0:
                        return_time[dest].append(t - last_exit[dest])
                cell = dest
            if collect_trace:
                trace.append((DRONE_MOVE, t, dest, -1))

        elif u < c_d:
            counts[DRONE_DISSEMINATE] += 1
            j = cell * m + (next_u64() % m)
            if drone_v > node_v[j]:
                bump_node(j, cell, drone_v, t)
            if crossed:
                if last_delivery[cell] >= 0.0:
                    renewal[cell].append(t - last_delivery[cell])
                last_delivery[cell] = t
                if tracker_ver[cell] < 0:
                    base = cell * m
                    cnt = 0
                    for i in range(base, base + m):
                        if node_v[i] >= drone_v:
                            cnt += 1
                    if cnt == m:
                        lag[cell].append(0.0)
                    else:
                        tracker_ver[cell] = drone_v
                        tracker_t0[cell] = t
                        tracker_cnt[cell] = cnt
            if collect_trace:
                trace.append((DRONE_DISSEMINATE, t, j, -1))

        else:
            counts[GOSSIP] += 1
            if m1 > 0:
                sender = next_u64() % n
                r = next_u64() % m1
                base = (sender // m) * m
                off = sender - base
                j = base + (r + 1 if r >= off else r)
                sv = node_v[sender]
                if sv > node_v[j]:
                    bump_node(j, sender // m, sv, t)
                if collect_trace:
                    trace.append((GOSSIP, t, sender, j))
            elif collect_trace:
                trace.append((GOSSIP, t, -1, -1))

    if not crossed:
        crossed = True
        start_window()
    acc_src += src_v * (horizon - last_src_t)
    k = src_v - drone_v
    hist[k] = hist.get(k, 0.0) + (horizon - last_age_t)
    for i in range(n):
        acc_node[i] += node_v[i] * (horizon - last_node_t[i])
    for c in range(f):
        acc_cell[c] += cell_max[c] * (horizon - last_cell_t[c])

    return {
        "acc_source": acc_src,
        "acc_node": acc_node,
        "acc_cell_max": acc_cell,
        "hist": hist,
        "renewal": renewal,
        "return_time": return_time,
        "lag": lag,
        "counts": counts,
        "num_events": num_events,
        "source_version": src_v,
        "drone_version": drone_v,
        "drone_cell": cell,
        "node_versions": node_v,
        "rng_state": (s0, s1, s2, s3),
        "trace": trace,
    }
