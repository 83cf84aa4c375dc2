"""Oriented wiring diagrams in matching form.

A wiring diagram is a boundary interface (box 0), an ordered list of input
interfaces (boxes 1..r), a perfect matching between all out-endpoints and all
in-endpoints, and a count of closed circles.  Endpoints are
``(box, polarity, label)`` triples, which keeps non-disjoint label sets safe.

Composition glues one diagram into an input box of another and resolves the
resulting strands by chain-following; chains that close up contribute to the
circle count.
"""
from __future__ import annotations

import json
from typing import Dict, Iterable, Mapping, Tuple

from .errors import (
    EndpointSetMismatch,
    IndexOutOfRange,
    InterfaceMismatch,
    NegativeCircles,
    NonBijectiveMatching,
)

OUT = "out"
IN = "in"

#: An endpoint is (box, polarity, label).
Endpoint = Tuple[int, str, str]


class Interface:
    """A pair of duplicate-free label sets: outgoing and incoming."""

    __slots__ = ("out_labels", "in_labels")

    def __init__(self, out_labels: Iterable[str] = (), in_labels: Iterable[str] = ()):
        self.out_labels = frozenset(out_labels)
        self.in_labels = frozenset(in_labels)

    def flip(self) -> "Interface":
        return Interface(self.in_labels, self.out_labels)

    def key(self):
        return (tuple(sorted(self.out_labels, key=repr)),
                tuple(sorted(self.in_labels, key=repr)))

    def __eq__(self, other):
        return isinstance(other, Interface) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return "Interface(out=%r, in=%r)" % (sorted(self.out_labels), sorted(self.in_labels))


class WiringDiagram:
    """An immutable wiring diagram; equality is structural.

    ``matching`` maps every out-endpoint to an in-endpoint, bijectively.
    """

    __slots__ = ("output", "inputs", "matching", "circles", "_key")

    def __init__(self, output: Interface, inputs: Iterable[Interface],
                 matching: Mapping[Endpoint, Endpoint], circles: int = 0):
        self.output = output
        self.inputs = tuple(inputs)
        self.matching: Dict[Endpoint, Endpoint] = dict(matching)
        self.circles = circles
        self._validate()
        self._key = (
            self.output.key(),
            tuple(i.key() for i in self.inputs),
            tuple(sorted(self.matching.items(), key=repr)),
            self.circles,
        )

    # -- construction checks --

    def _validate(self):
        if self.circles < 0:
            raise NegativeCircles("circles = %d" % self.circles)
        expected_out = set(self.out_endpoints())
        expected_in = set(self.in_endpoints())
        for src, dst in self.matching.items():
            if src not in expected_out:
                raise EndpointSetMismatch("unknown out-endpoint %r" % (src,))
            if dst not in expected_in:
                raise EndpointSetMismatch("unknown in-endpoint %r" % (dst,))
        if len(self.matching) != len(expected_out):
            missing = sorted(expected_out - set(self.matching))
            raise NonBijectiveMatching("unmatched out-endpoints %r" % (missing,))
        values = set(self.matching.values())
        if len(values) != len(self.matching) or values != expected_in:
            raise NonBijectiveMatching("in-endpoints not hit exactly once")

    # -- structure --

    @property
    def r(self) -> int:
        return len(self.inputs)

    def interface(self, box: int) -> Interface:
        return self.output if box == 0 else self.inputs[box - 1]

    def out_endpoints(self):
        for box in range(self.r + 1):
            for a in self.interface(box).out_labels:
                yield (box, OUT, a)

    def in_endpoints(self):
        for box in range(self.r + 1):
            for a in self.interface(box).in_labels:
                yield (box, IN, a)

    def __eq__(self, other):
        return isinstance(other, WiringDiagram) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return "WiringDiagram(r=%d, circles=%d)" % (self.r, self.circles)

    # -- operad structure --

    def compose(self, i: int, other: "WiringDiagram") -> "WiringDiagram":
        """Glue ``other`` into input box ``i`` (1-based) of this diagram.

        The inner interface must equal the flipped boundary of ``other``:
        outgoing labels of box ``i`` meet incoming labels of the boundary of
        ``other`` and vice versa.
        """
        if not 1 <= i <= self.r:
            raise IndexOutOfRange("box %d of %d" % (i, self.r))
        inner = self.inputs[i - 1]
        if (inner.out_labels != other.output.in_labels
                or inner.in_labels != other.output.out_labels):
            raise InterfaceMismatch(
                "box %d is %r; boundary of inner diagram flips to %r"
                % (i, inner, other.output.flip()))

        # Tagged endpoints: ('L', e) lives in self, ('R', e) in other.
        glue = {}
        for a in inner.out_labels:
            glue[("L", (i, OUT, a))] = ("R", (0, IN, a))
            glue[("R", (0, IN, a))] = ("L", (i, OUT, a))
        for a in inner.in_labels:
            glue[("L", (i, IN, a))] = ("R", (0, OUT, a))
            glue[("R", (0, OUT, a))] = ("L", (i, IN, a))

        match = {("L", e): ("L", f) for e, f in self.matching.items()}
        match.update({("R", e): ("R", f) for e, f in other.matching.items()})

        s = other.r

        def renumber(tagged: Tuple[str, Endpoint]) -> Endpoint:
            side, (box, pol, label) = tagged
            if side == "L":
                new = box if box < i else box + s - 1
            else:
                new = i - 1 + box
            return (new, pol, label)

        new_matching: Dict[Endpoint, Endpoint] = {}
        crossed = set()
        for start in sorted(match, key=repr):
            if start in glue:
                continue
            cur = match[start]
            while cur in glue:
                hop = glue[cur]
                crossed.add(hop)
                cur = match[hop]
            new_matching[renumber(start)] = renumber(cur)

        closed = 0
        remaining = {e for e in match if e in glue and e not in crossed}
        while remaining:
            closed += 1
            start = remaining.pop()
            cur = match[start]
            while True:
                hop = glue[cur]
                if hop == start:
                    break
                remaining.discard(hop)
                cur = match[hop]

        new_inputs = self.inputs[:i - 1] + other.inputs + self.inputs[i:]
        return WiringDiagram(self.output, new_inputs, new_matching,
                             self.circles + other.circles + closed)


def compose(d: WiringDiagram, i: int, d2: WiringDiagram) -> WiringDiagram:
    return d.compose(i, d2)


def identity_diagram(s: Iterable[str], t: Iterable[str]) -> WiringDiagram:
    """The left identity with boundary (S, T) and one input box (T, S).

    The right identity is ``identity_diagram(t, s)``.
    """
    s, t = frozenset(s), frozenset(t)
    matching = {(0, OUT, a): (1, IN, a) for a in s}
    matching.update({(1, OUT, b): (0, IN, b) for b in t})
    return WiringDiagram(Interface(s, t), [Interface(t, s)], matching, 0)


def permutation_diagram(sigma: Mapping[str, str], tau: Mapping[str, str]) -> WiringDiagram:
    """The one-box diagram whose left composition permutes boundary labels.

    ``sigma`` is a bijection of the outgoing boundary set S (read as: inner
    label s wires to boundary label sigma(s)); ``tau`` likewise on the
    incoming boundary set T.
    """
    s = frozenset(sigma)
    t = frozenset(tau)
    if frozenset(sigma.values()) != s or frozenset(tau.values()) != t:
        raise NotABijectionError(sigma, tau)
    matching = {(0, OUT, sigma[a]): (1, IN, a) for a in s}
    matching.update({(1, OUT, b): (0, IN, tau[b]) for b in t})
    return WiringDiagram(Interface(s, t), [Interface(t, s)], matching, 0)


def NotABijectionError(sigma, tau):
    from .errors import NotABijection
    return NotABijection("sigma=%r tau=%r" % (sigma, tau))


def renumber_inputs(d: WiringDiagram, sigma: Mapping[int, int]) -> WiringDiagram:
    """Re-number input boxes; ``sigma`` maps old index to new index (1-based)."""
    if sorted(sigma) != list(range(1, d.r + 1)) or sorted(sigma.values()) != list(range(1, d.r + 1)):
        from .errors import NotABijection
        raise NotABijection("not a permutation of 1..%d: %r" % (d.r, sigma))
    new_inputs = [None] * d.r
    for old, new in sigma.items():
        new_inputs[new - 1] = d.inputs[old - 1]

    def move(e: Endpoint) -> Endpoint:
        box, pol, label = e
        return (sigma.get(box, box) if box else 0, pol, label)

    matching = {move(src): move(dst) for src, dst in d.matching.items()}
    return WiringDiagram(d.output, new_inputs, matching, d.circles)


# -- serialization -----------------------------------------------------------

def _interface_to_obj(i: Interface):
    return {"out": sorted(i.out_labels), "in": sorted(i.in_labels)}


def _interface_from_obj(obj) -> Interface:
    return Interface(obj.get("out", ()), obj.get("in", ()))


def to_obj(d: WiringDiagram):
    return {
        "output": _interface_to_obj(d.output),
        "inputs": [_interface_to_obj(i) for i in d.inputs],
        "matching": [[list(src), list(dst)] for src, dst in sorted(d.matching.items())],
        "circles": d.circles,
    }


def from_obj(obj) -> WiringDiagram:
    matching = {tuple(src): tuple(dst) for src, dst in obj.get("matching", [])}
    return WiringDiagram(
        _interface_from_obj(obj["output"]),
        [_interface_from_obj(i) for i in obj.get("inputs", [])],
        matching,
        obj.get("circles", 0),
    )


def to_json(d: WiringDiagram) -> str:
    return json.dumps(to_obj(d), sort_keys=True, separators=(",", ":"))


def from_json(text: str) -> WiringDiagram:
    return from_obj(json.loads(text))
