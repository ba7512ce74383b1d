"""Lasso certificates: a search-free sufficient criterion for rigidity.

A lasso is a simple (induced) loop of length at least 5 together with a
simple attaching path whose last vertex is the loop's basepoint, subject to
endpoint and no-right-angle conditions.  The path may revisit loop vertices
but may not travel along a loop edge; without that restriction the bare
cycle C_n would certify itself, and with full path/loop disjointness the
criterion misses images whose every cycle passes through a junction vertex.
If every ordered adjacent pair (x, x') starts the path of some
right-angle-free lasso, the image is rigid.  A failed search is
inconclusive: the criterion is sufficient, not necessary.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .errors import BudgetExceededError
from .image import DigitalImage

DEFAULT_LASSO_BUDGET = 5_000_000


@dataclass(frozen=True)
class Lasso:
    """loop lists the simple loop from its basepoint; path runs from r(0)
    to r(k) = loop[0]."""

    loop: tuple[int, ...]
    path: tuple[int, ...]


def right_angle(image: DigitalImage, a: int, b: int, c: int) -> bool:
    """Do the edges (a,b) and (b,c) lie on a common simple 4-cycle?

    True iff some fourth vertex d closes the cycle a-b-c-d.  Degenerate
    back-and-forth loops do not count; chords are allowed.
    """
    if a == c:
        raise ValueError("endpoints of the two edges must differ")
    if not image.adjacent(a, b) or not image.adjacent(b, c):
        raise ValueError(f"({a},{b}) and ({b},{c}) must both be edges")
    return bool(image.adj[a] & image.adj[c] & ~(1 << b))


def _lasso_error(image: DigitalImage, lasso: Lasso):
    """Reason the certificate is invalid, or None if it checks out."""
    adj = image.adj
    loop, path = lasso.loop, lasso.path
    m, k = len(loop), len(path) - 1
    if m < 5:
        return f"loop has {m} < 5 vertices"
    if k < 1:
        return "attaching path needs at least one edge"
    for v in loop + path:
        if not 0 <= v < image.n:
            return f"vertex {v} out of range"
    if len(set(loop)) != m:
        return "loop revisits a vertex"
    if len(set(path)) != len(path):
        return "path revisits a vertex"
    if path[-1] != loop[0]:
        return "path does not end at the loop basepoint"
    loop_edges = {frozenset((loop[i - 1], loop[i])) for i in range(m)}
    path_edges = {frozenset(e) for e in zip(path, path[1:])}
    if loop_edges & path_edges:
        return "a path edge lies on the loop"
    # Simple loop: induced cycle (consecutive pairs adjacent, nothing else).
    for i in range(m):
        for j in range(i + 1, m):
            want = j - i == 1 or (i == 0 and j == m - 1)
            if bool((adj[loop[i]] >> loop[j]) & 1) != want:
                return f"loop is not an induced cycle at ({i},{j})"
    # Simple path: induced.
    for i in range(len(path)):
        for j in range(i + 1, len(path)):
            want = j - i == 1
            if bool((adj[path[i]] >> path[j]) & 1) != want:
                return f"path is not an induced path at ({i},{j})"
    hook = path[-2]
    if (adj[hook] >> loop[1]) & 1 or (adj[hook] >> loop[-1]) & 1:
        return "a loop neighbor of the basepoint touches the path end"

    def ra(a, b, c):
        return bool(adj[a] & adj[c] & ~(1 << b))

    for i in range(1, len(path) - 1):
        if ra(path[i - 1], path[i], path[i + 1]):
            return f"right angle on the path at {path[i]}"
    for i in range(m):
        if ra(loop[i - 1], loop[i], loop[(i + 1) % m]):
            return f"right angle on the loop at {loop[i]}"
    if ra(hook, loop[0], loop[1]) or ra(hook, loop[0], loop[-1]):
        return "right angle where the path meets the loop"
    return None


def verify_lasso(image: DigitalImage, lasso: Lasso) -> bool:
    """Re-validate a lasso certificate independently of any search."""
    return _lasso_error(image, lasso) is None


def find_lasso(image: DigitalImage, x: int, x_prime: int,
               max_loop: int | None = None,
               node_budget: int = DEFAULT_LASSO_BUDGET):
    """First right-angle-free lasso whose path starts x, x_prime, or None.

    Deterministic depth-first order: at each simple path the loop search is
    attempted before the path is extended, candidates ascending.
    """
    if not image.adjacent(x, x_prime):
        raise ValueError(f"{x} and {x_prime} must be adjacent")
    if max_loop is None:
        max_loop = image.n
    adj = image.adj
    n = image.n
    nodes = 0

    def spend():
        nonlocal nodes
        nodes += 1
        if nodes > node_budget:
            raise BudgetExceededError("lasso search budget exceeded", nodes=nodes)

    def ra(a, b, c):
        return bool(adj[a] & adj[c] & ~(1 << b))

    def close_loop(path, path_mask):
        """Search a valid loop based at path[-1]; returns the loop or None."""
        base = path[-1]
        hook = path[-2]
        # Loop vertices may lie on the path, loop edges may not.
        path_edge = {}
        for a, b in zip(path, path[1:]):
            path_edge[a] = path_edge.get(a, 0) | (1 << b)
            path_edge[b] = path_edge.get(b, 0) | (1 << a)
        loop = [base]
        loop_mask = 1 << base

        def rec():
            nonlocal loop_mask
            cur = loop[-1]
            blocked = loop_mask | path_edge.get(cur, 0)
            for w in range(n):
                if not (adj[cur] >> w) & 1:
                    continue
                if (blocked >> w) & 1:
                    continue
                spend()
                if len(loop) == 1:
                    # w will be loop[1]: endpoint and junction conditions;
                    # its adjacency to the basepoint is the first loop edge.
                    if (adj[hook] >> w) & 1 or ra(hook, base, w):
                        continue
                    loop.append(w)
                    loop_mask |= 1 << w
                    if rec():
                        return True
                    loop.pop()
                    loop_mask ^= 1 << w
                    continue
                if ra(loop[-2], cur, w):
                    continue
                # Induced: w may touch the loop only at its predecessor,
                # except the basepoint, which signals closure.
                inner = loop_mask & ~(1 << cur) & ~(1 << base)
                if adj[w] & inner:
                    continue
                if (adj[w] >> base) & 1:
                    if len(loop) + 1 < 5:
                        continue
                    if (path_edge.get(w, 0) >> base) & 1:
                        continue
                    if (adj[hook] >> w) & 1:
                        continue
                    if ra(cur, w, base) or ra(w, base, loop[1]) or ra(hook, base, w):
                        continue
                    loop.append(w)
                    return True
                if len(loop) + 1 < max_loop:
                    loop.append(w)
                    loop_mask |= 1 << w
                    if rec():
                        return True
                    loop.pop()
                    loop_mask ^= 1 << w
            return False

        if rec():
            return tuple(loop)
        return None

    path = [x, x_prime]
    path_mask = (1 << x) | (1 << x_prime)

    def extend():
        nonlocal path_mask
        loop = close_loop(path, path_mask)
        if loop is not None:
            return Lasso(loop, tuple(path))
        cur = path[-1]
        for w in range(n):
            if not (adj[cur] >> w) & 1:
                continue
            if (path_mask >> w) & 1:
                continue
            spend()
            # Induced path: w may touch only its predecessor.
            if adj[w] & path_mask & ~(1 << cur):
                continue
            if ra(path[-2], cur, w):
                continue
            path.append(w)
            path_mask |= 1 << w
            got = extend()
            if got is not None:
                return got
            path.pop()
            path_mask ^= 1 << w
        return None

    return extend()


@dataclass(frozen=True)
class CertificateResult:
    certified: bool
    lassos: dict  # (x, x') -> Lasso for every ordered adjacent pair
    missing: tuple[tuple[int, int], ...]


def lasso_rigidity_certificate(image: DigitalImage, max_loop: int | None = None,
                               node_budget: int = DEFAULT_LASSO_BUDGET,
                               threads: int = 1) -> CertificateResult:
    """Certified iff every ordered adjacent pair starts some lasso.

    Certified implies the image is rigid; NotCertified is inconclusive.
    """
    pairs = [(x, w) for x in range(image.n) for w in image.neighbors(x)]

    def work(pair):
        return find_lasso(image, pair[0], pair[1], max_loop=max_loop,
                          node_budget=node_budget)

    if threads > 1 and pairs:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(work, pairs))
    else:
        results = [work(p) for p in pairs]
    lassos = {}
    missing = []
    for pair, lasso in zip(pairs, results):
        if lasso is None:
            missing.append(pair)
        else:
            lassos[pair] = lasso
    return CertificateResult(not missing, lassos, tuple(missing))
