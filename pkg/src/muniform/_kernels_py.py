"""Pure-Python scan kernels (fallback when the compiled module is absent).

Both backends share these contracts:

min_weight_scan(gx, gz, n, seed_x, seed_z, start, stop, early_stop)
    Walk the Gray-code sequence of generator subsets for counter values
    ``start <= i < stop``. The element visited at counter i has bit mask
    ``gray(i) = i ^ (i >> 1)`` and bits ``seed XOR (XOR of selected
    rows)``. Returns ``(best_weight, best_mask, scanned)`` where ties
    prefer the numerically smallest mask; ``scanned`` counts evaluated
    elements. A positive ``early_stop`` ends the walk at the first
    element of weight <= early_stop.

windowed_scan(gx, gz, n, balls, max_size, early_stop, init_best)
    Depth-first search over generator subsets whose index sets are
    cliques of the ball graph (``balls[i]`` = bitmask of generators
    allowed together with i, including i). Subsets of size 1..max_size
    are scored by the weight of their product; only subsets that could
    beat the current best are expanded. Same return convention.

Masks index generators: bit i of a mask selects row i. Weights are
popcounts of x|z, so phases never matter here.
"""

from __future__ import annotations

__all__ = ["min_weight_scan", "windowed_scan"]


def min_weight_scan(gx, gz, n, seed_x=0, seed_z=0, start=1, stop=None,
                    early_stop=0):
    q = len(gx)
    total = 1 << q
    if stop is None:
        stop = total
    if not (0 <= start <= stop <= total):
        raise ValueError("bad scan range")
    best_w = n + 1
    best_mask = -1
    scanned = 0
    if start >= stop:
        return best_w, best_mask, scanned

    mask = start ^ (start >> 1)
    cx, cz = seed_x, seed_z
    m = mask
    while m:
        low = m & -m
        j = low.bit_length() - 1
        cx ^= gx[j]
        cz ^= gz[j]
        m ^= low

    w = (cx | cz).bit_count()
    scanned = 1
    if w < best_w or (w == best_w and mask < best_mask):
        best_w, best_mask = w, mask
    if early_stop and w <= early_stop:
        return best_w, best_mask, scanned

    for i in range(start + 1, stop):
        j = (i & -i).bit_length() - 1
        mask ^= 1 << j
        cx ^= gx[j]
        cz ^= gz[j]
        w = (cx | cz).bit_count()
        scanned += 1
        if w < best_w or (w == best_w and mask < best_mask):
            best_w, best_mask = w, mask
            if early_stop and w <= early_stop:
                break
    return best_w, best_mask, scanned


def windowed_scan(gx, gz, n, balls, max_size, early_stop, init_best):
    q = len(gx)
    supports = [(gx[i] | gz[i]).bit_count() for i in range(q)]
    max_drop = max(supports) if supports else 0
    state = {
        "best_w": init_best,
        "best_mask": -1,
        "scanned": 0,
        "stop": False,
    }

    def consider(w, mask):
        if w < state["best_w"] or (w == state["best_w"] and
                                   (state["best_mask"] < 0 or mask < state["best_mask"])):
            state["best_w"] = w
            state["best_mask"] = mask
            if early_stop and w <= early_stop:
                state["stop"] = True

    def dfs(cx, cz, mask, size, cands):
        if state["stop"]:
            return
        w = (cx | cz).bit_count()
        state["scanned"] += 1
        consider(w, mask)
        if state["stop"] or size >= max_size:
            return
        # every added generator keeps its own site occupied, so any
        # extension by k rows weighs at least size + k; and one row can
        # clear at most max_drop sites
        budget = state["best_w"] - 1 - size
        if budget < 1:
            return
        if w >= state["best_w"]:
            need = -(-(w - state["best_w"] + 1) // max_drop) if max_drop else budget + 1
            if need > budget:
                return
        rest = cands
        while rest:
            low = rest & -rest
            rest ^= low
            if state["stop"]:
                return
            j = low.bit_length() - 1
            dfs(cx ^ gx[j], cz ^ gz[j], mask | low, size + 1, rest & balls[j])
            if state["best_w"] - 1 - size < 1:
                return
        return

    above = (1 << q) - 1
    for v in range(q):
        if state["stop"]:
            break
        above ^= 1 << v
        dfs(gx[v], gz[v], 1 << v, 1, balls[v] & above)
    return state["best_w"], state["best_mask"], state["scanned"]
