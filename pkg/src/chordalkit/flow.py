"""Dinic max-flow with unbounded arcs, and minimum s-t arc cuts.

Capacities are non-negative integers or ``math.inf``.  Unbounded arcs keep
their residual capacity forever, so the only way for the flow value to be
unbounded is an s-t path made entirely of such arcs; that case is detected
up front and reported as ``math.inf`` without running augmentations.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from typing import Hashable

INF = math.inf


@dataclass
class FlowNetwork:
    _index: dict = field(default_factory=dict)
    _names: list = field(default_factory=list)
    _head: list = field(default_factory=list)
    _cap: list = field(default_factory=list)
    _out: list = field(default_factory=list)
    _orig: list = field(default_factory=list)

    def node(self, name: Hashable) -> int:
        idx = self._index.get(name)
        if idx is None:
            idx = len(self._names)
            self._index[name] = idx
            self._names.append(name)
            self._out.append([])
        return idx

    def add_arc(self, u: Hashable, v: Hashable, cap: float) -> int:
        """Add arc u->v; returns an arc id usable with :meth:`cut_arcs`."""
        if cap < 0:
            raise ValueError("negative capacity")
        a, b = self.node(u), self.node(v)
        arc = len(self._head)
        self._head += [b, a]
        self._cap += [cap, 0]
        self._orig += [cap, 0]
        self._out[a].append(arc)
        self._out[b].append(arc + 1)
        return arc

    def arc_ends(self, arc: int) -> tuple[Hashable, Hashable]:
        return self._names[self._head[arc ^ 1]], self._names[self._head[arc]]

    def capacity(self, arc: int) -> float:
        return self._orig[arc]

    def _unbounded_path(self, s: int, t: int) -> bool:
        seen, stack = {s}, [s]
        while stack:
            x = stack.pop()
            if x == t:
                return True
            for arc in self._out[x]:
                y = self._head[arc]
                if self._orig[arc] == INF and y not in seen:
                    seen.add(y)
                    stack.append(y)
        return False

    def max_flow(self, source: Hashable, sink: Hashable) -> float:
        s, t = self.node(source), self.node(sink)
        self._src = s
        if s == t or self._unbounded_path(s, t):
            self._value = INF
            return INF
        total = 0
        n = len(self._names)
        while True:
            level = [-1] * n
            level[s] = 0
            queue = deque([s])
            while queue:
                x = queue.popleft()
                for arc in self._out[x]:
                    y = self._head[arc]
                    if self._cap[arc] > 0 and level[y] < 0:
                        level[y] = level[x] + 1
                        queue.append(y)
            if level[t] < 0:
                break
            it = [0] * n

            def push(x: int, limit: float) -> float:
                if x == t:
                    return limit
                outs = self._out[x]
                while it[x] < len(outs):
                    arc = outs[it[x]]
                    y = self._head[arc]
                    if self._cap[arc] > 0 and level[y] == level[x] + 1:
                        got = push(y, min(limit, self._cap[arc]))
                        if got > 0:
                            self._cap[arc] -= got
                            self._cap[arc ^ 1] += got
                            return got
                    it[x] += 1
                return 0

            while True:
                got = push(s, INF)
                if got <= 0:
                    break
                total += got
        self._value = total
        return total

    def source_side(self) -> set:
        """Nodes reachable from the source in the final residual network."""
        seen, stack = {self._src}, [self._src]
        while stack:
            x = stack.pop()
            for arc in self._out[x]:
                y = self._head[arc]
                if self._cap[arc] > 0 and y not in seen:
                    seen.add(y)
                    stack.append(y)
        return seen

    def cut_arcs(self) -> list[int]:
        """Arc ids of a minimum cut (only meaningful for a finite flow value)."""
        if self._value == INF:
            raise ValueError("no finite cut exists")
        side = self.source_side()
        out = []
        for x in side:
            for arc in self._out[x]:
                if arc % 2 == 0 and self._head[arc] not in side:
                    out.append(arc)
        return sorted(out)


def min_st_cut(arcs: list[tuple[Hashable, Hashable, float]], source: Hashable, sink: Hashable):
    """Minimum weight arc set separating ``source`` from ``sink``.

    Returns ``(weight, chosen)`` where ``chosen`` lists indices into ``arcs``;
    ``chosen`` is empty when the weight is infinite.
    """
    net = FlowNetwork()
    net.node(source)
    net.node(sink)
    ids = [net.add_arc(u, v, w) for u, v, w in arcs]
    value = net.max_flow(source, sink)
    if value == INF:
        return INF, []
    by_id = {a: i for i, a in enumerate(ids)}
    return value, sorted(by_id[a] for a in net.cut_arcs())
