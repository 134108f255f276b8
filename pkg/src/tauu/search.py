"""Index-level search machinery shared by the factorization, classification and
property modules.

A partial tau-factorization is summarised by the state ``(p, K)``: ``p`` is the
product of the factors chosen so far and ``K`` the bitmask of elements still
tau-compatible with every one of them (an element stays in ``K`` after being
chosen only if it is tau-related to itself, which is exactly the condition for
repeating it).  Appending factor ``x in K`` moves to ``(p*x, K & nbr[x])``.
Because the state space is finite, breadth-first search over it decides
existence questions exactly and yields shortest witnesses.
"""

from __future__ import annotations

import functools
import os
from collections import deque

from .rings import assoc_idx, bits, class_reps, ideal_chain_height

CAP_ENV = "TAUU_CAP"


def default_cap(R):
    """Pumping cap |R|+2, unless overridden by the TAUU_CAP environment variable."""
    env = os.environ.get(CAP_ENV)
    if env:
        return int(env)
    return len(R) + 2


class StateGraph:
    """Every state reachable from ``(start_p, start_K)``, explored breadth first."""

    def __init__(self, R, T, start_p, start_K, max_depth=None):
        self.R = R
        mul, nbr = R.mul_table, T.nbr
        start = (start_p, start_K)
        self.states = [start]
        self.ids = {start: 0}
        self.succ = [[]]
        self.dist = [0]
        self.parent = [None]
        queue = deque([0])
        while queue:
            u = queue.popleft()
            p, K = self.states[u]
            if max_depth is not None and self.dist[u] >= max_depth:
                continue
            for x in bits(K):
                s = (mul[p][x], K & nbr[x])
                v = self.ids.get(s)
                if v is None:
                    v = len(self.states)
                    self.ids[s] = v
                    self.states.append(s)
                    self.succ.append([])
                    self.dist.append(self.dist[u] + 1)
                    self.parent.append((u, x))
                    queue.append(v)
                self.succ[u].append((x, v))
        self._pred = None

    def __len__(self):
        return len(self.states)

    @property
    def pred(self):
        if self._pred is None:
            pred = [[] for _ in self.states]
            for u, out in enumerate(self.succ):
                for x, v in out:
                    pred[v].append((x, u))
            self._pred = pred
        return self._pred

    def path(self, v):
        out = []
        while self.parent[v] is not None:
            u, x = self.parent[v]
            out.append(x)
            v = u
        return out[::-1]

    def accepting(self, target, min_depth=1):
        orbit = self.R.orbit_mask
        return [
            v for v, (p, _) in enumerate(self.states)
            if (orbit[p] >> target) & 1 and self.dist[v] >= min_depth
        ]

    def coreach(self, targets):
        seen = set(targets)
        queue = deque(targets)
        pred = self.pred
        while queue:
            v = queue.popleft()
            for _, u in pred[v]:
                if u not in seen:
                    seen.add(u)
                    queue.append(u)
        return seen

    def useful_labels(self, targets):
        """Bitmask of factors on some edge that still leads to a target state."""
        co = self.coreach(targets)
        mask = 0
        for u, out in enumerate(self.succ):
            for x, v in out:
                if v in co:
                    mask |= 1 << x
        return mask

    def cyclic_nodes(self):
        """Nodes lying on a directed cycle (iterative Tarjan)."""
        n = len(self.states)
        index = [None] * n
        low = [0] * n
        on_stack = [False] * n
        stack, comps = [], []
        counter = 0
        for root in range(n):
            if index[root] is not None:
                continue
            work = [(root, 0)]
            while work:
                v, i = work.pop()
                if i == 0:
                    index[v] = low[v] = counter
                    counter += 1
                    stack.append(v)
                    on_stack[v] = True
                recurse = False
                out = self.succ[v]
                while i < len(out):
                    w = out[i][1]
                    i += 1
                    if index[w] is None:
                        work.append((v, i))
                        work.append((w, 0))
                        recurse = True
                        break
                    if on_stack[w]:
                        low[v] = min(low[v], index[w])
                if recurse:
                    continue
                if low[v] == index[v]:
                    comp = []
                    while True:
                        w = stack.pop()
                        on_stack[w] = False
                        comp.append(w)
                        if w == v:
                            break
                    comps.append(comp)
                if work:
                    parent = work[-1][0]
                    low[parent] = min(low[parent], low[v])
        cyclic = set()
        for comp in comps:
            if len(comp) > 1 or any(w == comp[0] for _, w in self.succ[comp[0]]):
                cyclic.update(comp)
        return cyclic

    def shortest_cycle(self, v):
        """Labels of a shortest closed walk from ``v`` back to ``v``."""
        parent = {}
        queue = deque()
        for x, w in self.succ[v]:
            if w == v:
                return [x]
            if w not in parent:
                parent[w] = (v, x)
                queue.append(w)
        while queue:
            u = queue.popleft()
            for x, w in self.succ[u]:
                if w == v:
                    out = [x]
                    while u != v:
                        pu, px = parent[u]
                        out.append(px)
                        u = pu
                    return out[::-1]
                if w not in parent:
                    parent[w] = (u, x)
                    queue.append(w)
        return None

    def shortest_path_between(self, v, targets):
        targets = set(targets)
        if v in targets:
            return []
        parent = {v: None}
        queue = deque([v])
        while queue:
            u = queue.popleft()
            for x, w in self.succ[u]:
                if w in parent:
                    continue
                parent[w] = (u, x)
                if w in targets:
                    out = []
                    while parent[w] is not None:
                        pu, px = parent[w]
                        out.append(px)
                        w = pu
                    return out[::-1]
                queue.append(w)
        return None

    def longest_path(self, nodes, targets):
        """Longest path from the start to a target, inside an acyclic node set."""
        targets = set(targets)
        memo = {}

        def best(v):
            # iterative post-order to avoid deep recursion
            stack = [(v, False)]
            while stack:
                u, done = stack.pop()
                if u in memo:
                    continue
                if done:
                    vals = [memo[w] + 1 for _, w in self.succ[u] if w in nodes and memo.get(w, -1) >= 0]
                    memo[u] = max(vals + ([0] if u in targets else []), default=-1)
                    continue
                stack.append((u, True))
                for _, w in self.succ[u]:
                    if w in nodes and w not in memo:
                        stack.append((w, False))
            return memo[v]

        return best(0)


def bfs_find(R, T, accept, start_p, start_K, step, tag0, cap=None):
    """Shortest factor sequence from ``(start_p, start_K)`` reaching an accepted state.

    ``step(tag, x)`` returns the new tag (or ``None`` to forbid ``x``);
    ``accept(p, tag)`` decides acceptance.  Returns the list of appended
    factor indices or ``None``.
    """
    mul, nbr = R.mul_table, T.nbr
    start = (start_p, start_K, tag0)
    if accept(start_p, tag0):
        return []
    parent = {start: None}
    queue = deque([(start, 0)])
    while queue:
        s, d = queue.popleft()
        if cap is not None and d >= cap:
            continue
        p, K, tag = s
        for x in bits(K):
            t = step(tag, x)
            if t is None:
                continue
            ns = (mul[p][x], K & nbr[x], t)
            if ns in parent:
                continue
            parent[ns] = (s, x)
            if accept(ns[0], t):
                out = []
                while parent[ns] is not None:
                    ns, x2 = parent[ns]
                    out.append(x2)
                return out[::-1]
            queue.append((ns, d + 1))
    return None


class Context:
    """Cached index-level analyses of one (ring, relation) pair."""

    def __init__(self, R, T):
        self.R = R
        self.T = T
        self.height = ideal_chain_height(R)

    # -- helpers -------------------------------------------------------------
    def compat(self, idxs):
        K = self.R.sharp_mask
        for i in idxs:
            K &= self.T.nbr[i]
        return K

    def is_clique(self, idxs):
        """Pairwise tau over distinct positions (repeats need self-relation)."""
        idxs = list(idxs)
        for k, i in enumerate(idxs):
            for j in idxs[k + 1:]:
                if not self.T.holds_idx(i, j):
                    return False
        return True

    def approx(self, p, a):
        return (self.R.orbit_mask[p] >> a) & 1 == 1

    def assoc_mask(self, a, mode):
        R = self.R
        return sum(1 << j for j in R.sharp_idx if assoc_idx(R, a, j, mode))

    def class_rep(self, mode):
        return class_reps(self.R, mode)

    def canon(self, idxs, mode):
        rep = self.class_rep(mode)
        return tuple(sorted(rep[i] for i in idxs))

    # -- plain tau-factorizations ------------------------------------------------
    @functools.cached_property
    def plain_graph(self):
        return StateGraph(self.R, self.T, self.R.one_i, self.R.sharp_mask)

    @functools.cached_property
    def cyclic(self):
        return self.plain_graph.cyclic_nodes()

    def find_factorization(self, target, allowed=None, need=0, min_len=1, prefix=(), cap=None):
        """Shortest tau-factorization of ``target`` (as factor indices) or ``None``.

        Factors come from ``allowed``; at least one must lie in ``need`` when it
        is nonzero; the factorization starts with ``prefix`` and has at least
        ``min_len`` factors in total.
        """
        R = self.R
        allowed = R.sharp_mask if allowed is None else allowed
        prefix = tuple(prefix)
        if not self.is_clique(prefix):
            return None
        start_p = R.prod_idx(prefix)
        start_K = allowed & self.compat(prefix)
        n0 = min(len(prefix), min_len)
        h0 = any((need >> i) & 1 for i in prefix) if need else True
        orbit = R.orbit_mask

        def step(tag, x):
            n, h = tag
            return (min(n + 1, min_len), h or bool((need >> x) & 1))

        def accept(p, tag):
            return tag[0] >= min_len and tag[1] and (orbit[p] >> target) & 1 == 1

        cap_left = None if cap is None else cap - len(prefix)
        if cap_left is not None and cap_left < 0:
            return None
        path = bfs_find(R, self.T, accept, start_p, start_K, step, (n0, h0), cap=cap_left)
        return None if path is None else list(prefix) + path

    def divisors(self, target):
        """Mask of elements occurring in some tau-factorization of ``target``."""
        g = self.plain_graph
        return g.useful_labels(g.accepting(target))

    def pump(self, target):
        """``(prefix, cycle, suffix)`` witnessing unbounded length, or ``None``."""
        g = self.plain_graph
        acc = g.accepting(target)
        if not acc:
            return None
        co = g.coreach(acc)
        hits = sorted((v for v in self.cyclic if v in co), key=lambda v: (v not in acc, g.dist[v], v))
        if not hits:
            return None
        v = hits[0]
        return g.path(v), g.shortest_cycle(v), g.shortest_path_between(v, acc)

    def max_length(self, target):
        """Longest tau-factorization length, assuming ``pump(target)`` is None."""
        g = self.plain_graph
        acc = g.accepting(target)
        if not acc:
            return 0
        co = g.coreach(acc)
        return g.longest_path(co, acc)

    # -- U-factorizations ------------------------------------------------------------
    def essential_ok(self, E):
        """Condition (2) for every member of the multiset ``E``."""
        R = self.R
        full_ideal = R.ideal_mask[R.prod_idx(E)]
        for k in range(len(E)):
            if k and E[k] == E[k - 1]:
                continue
            rest = R.prod_idx(E[:k] + E[k + 1:])
            if R.ideal_mask[rest] == full_ideal:
                return False
        return True

    def inessential_ok(self, x, e):
        R = self.R
        return R.ideal_mask[R.mul_table[x][e]] == R.ideal_mask[e]

    @functools.cached_property
    def valid_essentials(self):
        """All tau-compatible multisets satisfying condition (2), as sorted index tuples.

        The family is closed under taking sub-multisets, so depth-first growth
        with pruning finds all of them.
        """
        R, nbr = self.R, self.T.nbr
        out = []

        def grow(E, K):
            for x in bits(K):
                if E and x < E[-1]:
                    continue
                E2 = E + (x,)
                if self.essential_ok(E2):
                    out.append(E2)
                    grow(E2, K & nbr[x])

        grow((), R.sharp_mask)
        return out

    @functools.cached_property
    def essentials_by_ideal(self):
        R = self.R
        groups = {}
        for E in self.valid_essentials:
            groups.setdefault(R.ideal_mask[R.prod_idx(E)], []).append(E)
        return groups

    def inessential_mask(self, E):
        R = self.R
        e = R.prod_idx(E)
        return sum(1 << x for x in R.sharp_idx if self.inessential_ok(x, e))

    @functools.lru_cache(maxsize=None)
    def completion_graph(self, E):
        R = self.R
        return StateGraph(R, self.T, R.prod_idx(E), self.compat(E) & self.inessential_mask(E))

    def completion(self, E, target, cap=None):
        """Shortest inessential list completing essential ``E`` to ``target``, or None."""
        g = self.completion_graph(E)
        best = None
        orbit = self.R.orbit_mask
        for v, (p, _) in enumerate(g.states):
            if (orbit[p] >> target) & 1 and (cap is None or g.dist[v] <= cap):
                if best is None or g.dist[v] < g.dist[best]:
                    best = v
        return None if best is None else g.path(best)

    def u_factorizations(self, target, cap=None, allowed=None):
        """``[(E, A)]``: every realizable essential multiset with one completion."""
        R = self.R
        out = []
        for E in self.essentials_by_ideal.get(R.ideal_mask[target], ()):
            if allowed is not None and any(not (allowed >> b) & 1 for b in E):
                continue
            A = self.completion(E, target, cap)
            if A is not None:
                out.append((E, A))
        return out

    # -- relation flags needing factorization data ---------------------------------
    def refinable_witness(self):
        R, T = self.R, self.T
        div = {x: self.divisors(x) for x in R.sharp_idx}
        for x in R.sharp_idx:
            for y in bits(T.nbr[x]):
                if y < x:
                    continue
                for b in bits(div[x]):
                    bad = div[y] & ~T.nbr[b]
                    if bad:
                        b2 = bits(bad)[0]
                        return {
                            "outer": [R.val(x), R.val(y)],
                            "refined_pair": [R.val(b), R.val(b2)],
                        }
        return None

    @functools.cached_property
    def inner_realizations(self):
        """For every b in R#: ``[(D, mask of D, mask of usable inessentials)]``."""
        R = self.R
        out = {b: [] for b in R.sharp_idx}
        for b in R.sharp_idx:
            for D in self.essentials_by_ideal.get(R.ideal_mask[b], ()):
                g = self.completion_graph(D)
                acc = g.accepting(b, min_depth=0)
                if not acc:
                    continue
                cmask = g.useful_labels(acc)
                dmask = 0
                for d in D:
                    dmask |= 1 << d
                out[b].append((D, dmask, cmask))
        return out

    def tau_u_refinable_witness(self):
        """Exact search for a composite refinement that is not a tau-U-factorization.

        Inessential condition (1) always survives the composite; what can fail
        is tau-compatibility between the outer and inner factors, or condition
        (2) for an inner essential divisor.  A single outer inessential factor
        and outer factorizations with their essential part alone cover every
        failure pattern.
        """
        R, T = self.R, self.T
        mul = R.mul_table
        inner = self.inner_realizations
        for B in self.valid_essentials:
            KB = self.compat(B)
            outer_iness = KB & self.inessential_mask(B)
            for k, b in enumerate(B):
                if k and B[k - 1] == b:
                    continue
                rest = B[:k] + B[k + 1:]
                c = R.prod_idx(rest)
                umask = outer_iness
                for u in rest:
                    umask |= 1 << u
                for D, dmask, cmask in inner[b]:
                    vmask = dmask | cmask
                    for u in bits(umask):
                        bad = vmask & ~T.nbr[u]
                        if bad:
                            v = bits(bad)[0]
                            return self._uref_witness(B, b, D, "tau", (u, v))
                    if rest:
                        for j, d in enumerate(D):
                            others = R.prod_idx(D[:j] + D[j + 1:], start=c)
                            if R.ideal_mask[mul[d][others]] == R.ideal_mask[others]:
                                return self._uref_witness(B, b, D, "inessential", (d,))
        return None

    def _uref_witness(self, B, b, D, kind, detail):
        R = self.R
        return {
            "outer_essential": [R.val(x) for x in B],
            "target": R.val(b),
            "inner_essential": [R.val(x) for x in D],
            "failure": kind,
            "detail": [R.val(x) for x in detail],
        }


@functools.lru_cache(maxsize=256)
def context(R, T):
    return Context(R, T)
