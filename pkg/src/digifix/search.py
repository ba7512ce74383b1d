"""Backtracking cores shared by the spectrum, homotopy, and retract modules.

Every search assigns vertices in a BFS order so that each new vertex already
has an assigned neighbor; the candidate set of a vertex is then the bitmask
intersection of the closed neighborhoods of the images of its assigned
neighbors.  Continuity is enforced incrementally and never re-checked on
complete maps.
"""

from __future__ import annotations

import os

from .errors import BudgetExceededError

DEFAULT_NODE_BUDGET = 10**9


def default_node_budget() -> int:
    """Node budget for exact searches; DIGIFIX_BUDGET overrides the default."""
    raw = os.environ.get("DIGIFIX_BUDGET")
    if raw:
        try:
            return int(raw)
        except ValueError as exc:
            raise ValueError(f"DIGIFIX_BUDGET={raw!r} is not an integer") from exc
    return DEFAULT_NODE_BUDGET


class SearchContext:
    """Per-image data for the backtracking cores."""

    __slots__ = ("n", "nstar", "order", "prior", "full_mask")

    def __init__(self, n, nstar, order, prior):
        self.n = n
        self.nstar = nstar
        self.order = order
        self.prior = prior
        self.full_mask = (1 << n) - 1


def build_context(image, root: int = 0) -> SearchContext:
    """BFS assignment order from `root`, then from each unreached component."""
    n = image.n
    nstar = [image.nstar_mask(i) for i in range(n)]
    order = []
    pos = [-1] * n
    seen = 0
    starts = [root] + [v for v in range(n) if v != root]
    for start in starts:
        if (seen >> start) & 1:
            continue
        queue = [start]
        seen |= 1 << start
        while queue:
            nxt = []
            for v in queue:
                pos[v] = len(order)
                order.append(v)
            for v in queue:
                for w in image.neighbors(v):
                    if not (seen >> w) & 1:
                        seen |= 1 << w
                        nxt.append(w)
            queue = nxt
    prior = []
    for p, v in enumerate(order):
        prior.append(tuple(u for u in image.neighbors(v) if pos[u] < p))
    return SearchContext(n, nstar, order, prior)


def context_for(image) -> SearchContext:
    """Cached root-0 context for an image."""
    ctx = image._ctx
    if ctx is None:
        ctx = build_context(image, 0)
        object.__setattr__(image, "_ctx", ctx)
    return ctx


def enumerate_maps(ctx, base, visit, limit=None, node_limit=None):
    """Visit every continuous map f with f(v) in base[v], exactly once.

    `visit` receives the target list (do not retain it without copying) and
    may return truthy to stop the search.  Returns
    (maps_visited, nodes_visited, truncated).
    """
    n = ctx.n
    if n == 0:
        visit([])
        return 1, 1, False
    nstar = ctx.nstar
    order = ctx.order
    prior = ctx.prior
    f = [0] * n
    nodes = 0
    maps_count = 0
    truncated = False

    def rec(p):
        nonlocal nodes, maps_count, truncated
        v = order[p]
        m = base[v]
        for u in prior[p]:
            m &= nstar[f[u]]
        last = p == n - 1
        while m:
            b = m & -m
            m ^= b
            f[v] = b.bit_length() - 1
            nodes += 1
            if node_limit is not None and nodes > node_limit:
                raise BudgetExceededError("search node budget exceeded", nodes=nodes)
            if last:
                maps_count += 1
                if visit(f):
                    truncated = True
                    return True
                if limit is not None and maps_count >= limit:
                    truncated = True
                    return True
            elif rec(p + 1):
                return True
        return False

    rec(0)
    return maps_count, nodes, truncated


def exists_other_map(ctx, base, ref, node_limit=None):
    """Find a continuous map with f(v) in base[v] that differs from `ref`.

    Candidates differing from ref are tried first so a witness surfaces
    quickly when one exists.  Returns (witness tuple or None, nodes).
    """
    n = ctx.n
    if n == 0:
        return None, 0
    nstar = ctx.nstar
    order = ctx.order
    prior = ctx.prior
    f = [0] * n
    nodes = 0
    found = None

    def rec(p, differs):
        nonlocal nodes, found
        v = order[p]
        m = base[v]
        for u in prior[p]:
            m &= nstar[f[u]]
        rbit = 1 << ref[v]
        has_ref = m & rbit
        m &= ~rbit
        last = p == n - 1
        while True:
            if m:
                b = m & -m
                m ^= b
                t = b.bit_length() - 1
                d = True
            elif has_ref:
                has_ref = 0
                t = ref[v]
                d = differs
            else:
                return False
            if last and not d:
                continue
            f[v] = t
            nodes += 1
            if node_limit is not None and nodes > node_limit:
                raise BudgetExceededError("search node budget exceeded", nodes=nodes)
            if last:
                found = tuple(f)
                return True
            if rec(p + 1, d):
                return True

    rec(0, False)
    return found, nodes


def exists_fix_count(ctx, k, node_limit=None):
    """Find a continuous self-map with exactly k fixed points, or prove
    there is none.  Returns (witness tuple or None, nodes)."""
    n = ctx.n
    if n == 0:
        return ((), 0) if k == 0 else (None, 0)
    if not 0 <= k <= n:
        return None, 0
    nstar = ctx.nstar
    order = ctx.order
    prior = ctx.prior
    full = ctx.full_mask
    f = [0] * n
    nodes = 0
    found = None

    def rec(p, fixed):
        nonlocal nodes, found
        v = order[p]
        m = full
        for u in prior[p]:
            m &= nstar[f[u]]
        rem_after = n - p - 1
        need = k - fixed
        vbit = 1 << v
        can_fix = (m & vbit) and 1 <= need <= rem_after + 1
        others = m & ~vbit if 0 <= need <= rem_after else 0
        last = p == n - 1
        # Steer toward the quota: fix first when many fixes are still needed.
        fix_first = 2 * need >= rem_after + 1
        for phase in (0, 1):
            if (phase == 0) == fix_first:
                if not can_fix:
                    continue
                can_fix = False
                f[v] = v
                nodes += 1
                if node_limit is not None and nodes > node_limit:
                    raise BudgetExceededError("search node budget exceeded", nodes=nodes)
                if last:
                    found = tuple(f)
                    return True
                if rec(p + 1, fixed + 1):
                    return True
            else:
                mm = others
                while mm:
                    b = mm & -mm
                    mm ^= b
                    f[v] = b.bit_length() - 1
                    nodes += 1
                    if node_limit is not None and nodes > node_limit:
                        raise BudgetExceededError("search node budget exceeded",
                                                  nodes=nodes)
                    if last:
                        found = tuple(f)
                        return True
                    if rec(p + 1, fixed):
                        return True
        return False

    rec(0, 0)
    return found, nodes


def discover_fix_counts(ctx, found_mask, cap):
    """Best-effort sweep collecting achievable fixed-point counts.

    Runs the full backtracking search but prunes any branch whose entire
    range of reachable counts is already known, and stops after `cap`
    nodes.  Returns (found_mask, nodes, maps).  Purely an accelerator: the
    result may miss counts, never contains a wrong one.
    """
    n = ctx.n
    if n == 0:
        return found_mask | 1, 0, 1
    nstar = ctx.nstar
    order = ctx.order
    prior = ctx.prior
    full = ctx.full_mask
    f = [0] * n
    nodes = 0
    maps_count = 0

    class _Cap(Exception):
        pass

    def rec(p, fixed):
        nonlocal nodes, maps_count, found_mask
        v = order[p]
        m = full
        for u in prior[p]:
            m &= nstar[f[u]]
        rem_after = n - p - 1
        vbit = 1 << v
        last = p == n - 1
        # Identity-leaning order discovers high counts early.
        if m & vbit:
            m &= ~vbit
            cands = [v] + [b.bit_length() - 1 for b in _bit_items(m)]
        else:
            cands = [b.bit_length() - 1 for b in _bit_items(m)]
        for t in cands:
            fx = fixed + (1 if t == v else 0)
            window = (((1 << (rem_after + 1)) - 1) << fx)
            if window & ~found_mask == 0:
                continue
            f[v] = t
            nodes += 1
            if nodes > cap:
                raise _Cap
            if last:
                maps_count += 1
                found_mask |= 1 << fx
            else:
                rec(p + 1, fx)

    try:
        rec(0, 0)
    except _Cap:
        pass
    return found_mask, nodes, maps_count


def min_moved(ctx, moved_vertex, node_limit=None):
    """Branch-and-bound minimum of #moved over continuous maps moving one
    designated vertex.  The context must be rooted at that vertex.
    Returns (best, witness, nodes); best is None when no map qualifies."""
    n = ctx.n
    nstar = ctx.nstar
    order = ctx.order
    prior = ctx.prior
    full = ctx.full_mask
    assert order[0] == moved_vertex
    f = [0] * n
    nodes = 0
    best = n + 1
    witness = None

    def rec(p, moved):
        nonlocal nodes, best, witness
        v = order[p]
        m = full
        for u in prior[p]:
            m &= nstar[f[u]]
        if p == 0:
            m &= ~(1 << v)
        vbit = 1 << v
        last = p == n - 1
        if m & vbit:
            m &= ~vbit
            cands = [v] + [b.bit_length() - 1 for b in _bit_items(m)]
        else:
            cands = [b.bit_length() - 1 for b in _bit_items(m)]
        for t in cands:
            mv = moved + (1 if t != v else 0)
            if mv >= best:
                continue
            f[v] = t
            nodes += 1
            if node_limit is not None and nodes > node_limit:
                raise BudgetExceededError("search node budget exceeded", nodes=nodes)
            if last:
                best = mv
                witness = tuple(f)
            else:
                rec(p + 1, mv)

    rec(0, 0)
    if witness is None:
        return None, None, nodes
    return best, witness, nodes


def _bit_items(m):
    items = []
    while m:
        b = m & -m
        m ^= b
        items.append(b)
    return items
