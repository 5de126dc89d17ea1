"""Adaptive MBQC as a scheduled DAG of non-adaptive components.

Each node is a deterministic MeasurementScheme whose inputs are wired either to
global input bits (1-based: bit k is x_k) or to the output of another node.
Feed-forward is classical: a node runs once all of its producers have run.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from graphlib import CycleError, TopologicalSorter
from typing import Sequence

from .boolfn import BoolFn, and_n
from .compiler import MeasurementScheme, NonDeterministic, compile_general, oracle_values


class ScheduleError(ValueError):
    def __init__(self, src: int, dst: int, labels):
        super().__init__(f"edge {src} -> {dst} has labels {labels[0]} -> {labels[1]}, not increasing")
        self.edge = (src, dst)


@dataclass(frozen=True)
class Wire:
    src: str      # "global" or "node"
    ref: int      # global bit (1-based) or node id

    def to_json(self) -> dict:
        return {"src": "global", "bit": self.ref} if self.src == "global" else {"src": "node", "id": self.ref}

    @classmethod
    def from_json(cls, d: dict) -> "Wire":
        if d["src"] == "global":
            return cls("global", int(d["bit"]))
        if d["src"] == "node":
            return cls("node", int(d["id"]))
        raise ValueError(f"unknown wire source {d['src']!r}")


def g(k: int) -> Wire:
    return Wire("global", k)


def node(j: int) -> Wire:
    return Wire("node", j)


@dataclass(frozen=True)
class Node:
    scheme: MeasurementScheme
    inputs: tuple
    label: int


@dataclass
class AdaptiveGraph:
    nodes: list
    output: int
    n_inputs: int

    def edges(self):
        for j, nd in enumerate(self.nodes):
            for w in nd.inputs:
                if w.src == "node":
                    yield w.ref, j

    def to_json(self) -> dict:
        return {"n": self.n_inputs, "output": self.output,
                "nodes": [{"scheme": nd.scheme.to_json(), "inputs": [w.to_json() for w in nd.inputs],
                           "label": nd.label} for nd in self.nodes]}

    @classmethod
    def from_json(cls, d: dict) -> "AdaptiveGraph":
        nodes = [Node(MeasurementScheme.from_json(x["scheme"]),
                      tuple(Wire.from_json(w) for w in x["inputs"]), int(x["label"]))
                 for x in d["nodes"]]
        n = int(d.get("n", max((w.ref for nd in nodes for w in nd.inputs if w.src == "global"), default=0)))
        return cls(nodes, int(d["output"]), n)


@dataclass(frozen=True)
class CostMetrics:
    depth: int
    width: int
    volume: int
    qubit_reuse_count: int

    def to_json(self) -> dict:
        return {"depth": self.depth, "width": self.width, "volume": self.volume,
                "qubit_reuse_count": self.qubit_reuse_count}


def _order(gr: AdaptiveGraph) -> list[int]:
    ts = TopologicalSorter({j: set() for j in range(len(gr.nodes))})
    for a, b in gr.edges():
        ts.add(b, a)
    return list(ts.static_order())


def validate(gr: AdaptiveGraph) -> CostMetrics:
    """Check wiring, acyclicity and label monotonicity; return depth/width/volume."""
    if not gr.nodes:
        raise ValueError("graph has no nodes")
    if not 0 <= gr.output < len(gr.nodes):
        raise ValueError("output node out of range")
    for j, nd in enumerate(gr.nodes):
        if len(nd.inputs) != nd.scheme.n:
            raise ValueError(f"node {j} has {len(nd.inputs)} wires for arity {nd.scheme.n}")
        if nd.label < 1:
            raise ValueError(f"node {j} label must be positive")
        for w in nd.inputs:
            if w.src == "global" and not 1 <= w.ref <= gr.n_inputs:
                raise ValueError(f"node {j} reads missing global bit {w.ref}")
            if w.src == "node" and not 0 <= w.ref < len(gr.nodes):
                raise ValueError(f"node {j} reads missing node {w.ref}")
    _order(gr)      # raises CycleError
    for a, b in gr.edges():
        la, lb = gr.nodes[a].label, gr.nodes[b].label
        if lb <= la:
            raise ScheduleError(a, b, (la, lb))
    per_label: dict[int, int] = {}
    for nd in gr.nodes:
        per_label[nd.label] = per_label.get(nd.label, 0) + nd.scheme.N
    width = max(per_label.values())
    return CostMetrics(depth=max(per_label), width=width,
                       volume=sum(nd.scheme.N for nd in gr.nodes), qubit_reuse_count=width)


def _component_bit(s: MeasurementScheme, x: int) -> int:
    K = max((t.log2den for t in s.thetas), default=0)
    acc = s.m0 << K
    for a, t in s.qubits:
        if (a & x).bit_count() & 1:
            acc += t.num << (K - t.log2den)
    acc %= 2 << K
    if acc % (1 << K):
        raise NonDeterministic(x, Fraction(acc, 1 << K))
    return acc >> K


def execute(gr: AdaptiveGraph, i) -> int:
    """Run the components in schedule order and return the output node's bit."""
    validate(gr)
    if not isinstance(i, int):
        i = sum(int(b) << k for k, b in enumerate(i))
    out: dict[int, int] = {}
    order = sorted(range(len(gr.nodes)), key=lambda j: gr.nodes[j].label)
    for j in order:
        nd = gr.nodes[j]
        x = 0
        for pos, w in enumerate(nd.inputs):
            bit = (i >> (w.ref - 1)) & 1 if w.src == "global" else out[w.ref]
            x |= bit << pos
        out[j] = _component_bit(nd.scheme, x)
    return out[gr.output]


def output_function(gr: AdaptiveGraph) -> BoolFn:
    return BoolFn.from_callable(gr.n_inputs, lambda x: execute(gr, x))


def and_box() -> MeasurementScheme:
    """Three-qubit level-2 scheme for i1 i2."""
    return compile_general(and_n(2))


def chain_and(n: int) -> AdaptiveGraph:
    """n-1 AND boxes in a line, box t consuming the previous product and x_{t+2}."""
    if n < 2:
        raise ValueError("fan-in must be at least 2")
    box = and_box()
    nodes = [Node(box, (g(1), g(2)), 1)]
    for t in range(1, n - 1):
        nodes.append(Node(box, (node(t - 1), g(t + 2)), t + 1))
    return AdaptiveGraph(nodes, len(nodes) - 1, n)


def tree_and(n: int) -> AdaptiveGraph:
    """Balanced binary tree of AND boxes; depth ceil(log2 n)."""
    if n < 2:
        raise ValueError("fan-in must be at least 2")
    box = and_box()
    nodes: list[Node] = []
    layer = [(g(k), 0) for k in range(1, n + 1)]    # (wire, label of producer)
    while len(layer) > 1:
        nxt = []
        for t in range(0, len(layer) - 1, 2):
            (w1, l1), (w2, l2) = layer[t], layer[t + 1]
            lab = max(l1, l2) + 1
            nodes.append(Node(box, (w1, w2), lab))
            nxt.append((node(len(nodes) - 1), lab))
        if len(layer) % 2:
            nxt.append(layer[-1])
        layer = nxt
    gr = AdaptiveGraph(nodes, len(nodes) - 1, n)
    assert validate(gr).depth == math.ceil(math.log2(n))
    return gr
