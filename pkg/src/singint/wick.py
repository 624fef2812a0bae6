"""Vacuum-diagram generation for the transformed oscillator.

The anharmonic content comes from the coordinate change

    x = f(q) = q - g q^3/3 + g^2 a q^5/5

applied to the Gaussian action with frequency w.  Expanding the transformed
action and the exp(-delta(0) * integral log f'(q)) measure factor to second
order in g yields six local vertices; `action_vertices` returns them with
their exact couplings.  The free-energy shift per unit time is

    first cumulant of the order-g^n vertices
    - (1/2!) * connected second cumulant of the order-g vertices   (n = 2)

and `order_contribution` assembles exactly that, with the second vertex of
every two-vertex contraction pinned at time 0 (the shared time volume is
divided out).

Contractions are enumerated as raw perfect matchings of the vertex legs,
nothing is skipped: matchings whose equal-time dD(0) factor kills them are
produced and carry a zero coefficient, and disconnected matchings are
flagged rather than suppressed.  Cross-pair line values:

    q(t)  q(0)   ->  D
    q.(t) q(0)   ->  +dD      (derivative on the unpinned vertex)
    q(t)  q.(0)  ->  -dD
    q.(t) q.(0)  ->  -ddD

Same-vertex pairs fold to D(0), dD(0) = 0, or -ddD(0) ring values.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from .integrand import (D_AT_ZERO, DDDOT_AT_ZERO, DDOT_AT_ZERO,
                        IntegrandMonomial, IntegrandSum, mono)
from .ring import A, D0, G, ONE, W, ZERO, ValuePoly

Q = "q"
QDOT = "qdot"

# leg as seen by the matcher: (vertex slot 0|1, leg index, kind)
Leg = tuple[int, int, str]


@dataclass(frozen=True)
class Vertex:
    label: str
    legs: tuple[str, ...]
    coupling: ValuePoly
    jacobian: bool

    @property
    def signature(self) -> str:
        nd = self.legs.count(QDOT)
        nq = self.legs.count(Q)
        parts = []
        if nd:
            parts.append(f"qdot^{nd}" if nd > 1 else "qdot")
        if nq:
            parts.append(f"q^{nq}" if nq > 1 else "q")
        return " ".join(parts)


def action_vertices(order: int) -> list[Vertex]:
    """The interaction and measure vertices carrying g^order, exact couplings."""
    half = Fraction(1, 2)
    if order == 1:
        return [
            Vertex("qd2q2", (QDOT, QDOT, Q, Q), -G, jacobian=False),
            Vertex("q4", (Q, Q, Q, Q), -G * W * W * Fraction(1, 3), jacobian=False),
            Vertex("jq2", (Q, Q), G * D0, jacobian=True),
        ]
    if order == 2:
        g2 = G * G
        return [
            Vertex("qd2q4", (QDOT, QDOT, Q, Q, Q, Q),
                   g2 * (ONE + 2 * A) * half, jacobian=False),
            Vertex("q6", (Q,) * 6,
                   g2 * W * W * (ValuePoly.rational(Fraction(1, 9)) + A * Fraction(2, 5)) * half,
                   jacobian=False),
            Vertex("jq4", (Q, Q, Q, Q),
                   -g2 * (A - half) * D0, jacobian=True),
        ]
    raise ValueError("vertices are expanded to second order only")


def perfect_matchings(items: Sequence[Leg]) -> Iterator[tuple[tuple[Leg, Leg], ...]]:
    """All ways to split the legs into unordered pairs, (2k-1)!! of them."""
    if not items:
        yield ()
        return
    first = items[0]
    rest = items[1:]
    for i, partner in enumerate(rest):
        remaining = rest[:i] + rest[i + 1:]
        for tail in perfect_matchings(remaining):
            yield ((first, partner),) + tail


@dataclass(frozen=True)
class Contraction:
    pairing: tuple[tuple[Leg, Leg], ...]
    connected: bool
    integrand: IntegrandSum          # empty when the contraction is fully local
    local_factor: ValuePoly          # equal-time pair values, couplings excluded
    self_pairs: tuple[tuple[str, str], ...]  # (vertex label, pair kind), sorted
    orientation_sign: int


_SELF_VALUES = {
    (Q, Q): D_AT_ZERO,
    (QDOT, Q): DDOT_AT_ZERO,
    (QDOT, QDOT): -DDDOT_AT_ZERO,
}
_SELF_KIND = {(Q, Q): "qq", (QDOT, Q): "qdot q", (QDOT, QDOT): "qdot qdot"}


def enumerate_contractions(v1: Vertex, v2: Vertex | None = None) -> list[Contraction]:
    """Every perfect matching of the legs of one vertex or of a pinned pair."""
    legs: list[Leg] = [(0, i, kind) for i, kind in enumerate(v1.legs)]
    if v2 is not None:
        legs += [(1, i, kind) for i, kind in enumerate(v2.legs)]
    if len(legs) % 2:
        raise ValueError("odd leg total admits no perfect matching")

    labels = (v1.label, v2.label if v2 is not None else v1.label)
    out: list[Contraction] = []
    for matching in perfect_matchings(tuple(legs)):
        local = ONE
        sign = 1
        m = n = p = 0
        cross = 0
        selfs: list[tuple[str, str]] = []
        for (va, _, ka), (vb, _, kb) in matching:
            kinds = (ka, kb) if (ka, kb) in _SELF_VALUES else (kb, ka)
            if va == vb:
                local = local * _SELF_VALUES[kinds]
                selfs.append((labels[va], _SELF_KIND[kinds]))
            else:
                cross += 1
                if kinds == (Q, Q):
                    m += 1
                elif kinds == (QDOT, QDOT):
                    p += 1
                    sign = -sign
                else:
                    n += 1
                    # dotted leg on the pinned vertex flips the line
                    dotted_slot = va if ka == QDOT else vb
                    if dotted_slot == 1:
                        sign = -sign
        if cross:
            integrand = IntegrandSum([mono(m, n, p, 0, Fraction(sign))])
        else:
            integrand = IntegrandSum()
        connected = True if v2 is None else cross > 0
        out.append(Contraction(pairing=matching, connected=connected,
                               integrand=integrand, local_factor=local,
                               self_pairs=tuple(sorted(selfs)),
                               orientation_sign=sign))
    return out


@dataclass(frozen=True)
class DiagramClass:
    """Contractions sharing vertices, self-pair pattern, line shape and sign.

    coefficient = cumulant prefactor * couplings * number of matchings; the
    equal-time value and the signed line monomial are kept separate so the
    generated tables can be read off directly.
    """

    order: int
    family: str                       # local | watermelon | bubble | jacobian_bubble
    vertices: tuple[str, ...]
    self_pairs: tuple[tuple[str, str], ...]
    shape: tuple[int, int, int, int]
    sign: int
    multiplicity: int
    coefficient: ValuePoly
    local_value: ValuePoly

    @property
    def vanishes(self) -> bool:
        return self.local_value.is_zero or self.coefficient.is_zero

    def term(self) -> tuple[ValuePoly, IntegrandMonomial | None]:
        """(local scalar part, signed integrand monomial or None if local)."""
        weight = self.coefficient * self.local_value
        if self.shape == (0, 0, 0, 0):
            return weight, None
        return weight, mono(*self.shape, coeff=Fraction(self.sign))


def _family(v1: Vertex, v2: Vertex | None, c: Contraction) -> str:
    if v2 is None:
        return "local"
    if v1.jacobian or v2.jacobian:
        return "jacobian_bubble"
    return "bubble" if c.self_pairs else "watermelon"


def _classify(groups: dict, prefactor: ValuePoly,
              v1: Vertex, v2: Vertex | None) -> None:
    pair_coupling = v1.coupling * (v2.coupling if v2 is not None else ONE)
    vertices = tuple(sorted([v1.label] + ([v2.label] if v2 is not None else [])))
    for c in enumerate_contractions(v1, v2):
        if not c.connected:
            continue
        shape = c.integrand.terms[0].shape if c.integrand.terms else (0, 0, 0, 0)
        key = (vertices, c.self_pairs, shape, c.orientation_sign)
        entry = groups.get(key)
        if entry is None:
            groups[key] = [1, prefactor * pair_coupling, c.local_factor,
                           _family(v1, v2, c)]
        else:
            entry[0] += 1
            entry[1] = entry[1] + prefactor * pair_coupling


def diagram_classes(order: int) -> list[DiagramClass]:
    """All connected diagram classes contributing at g^order, vanishing included."""
    if order not in (1, 2):
        raise ValueError("diagrams are generated to second order only")
    groups: dict = {}
    for v in action_vertices(order):
        _classify(groups, ONE, v, None)
    if order == 2:
        first = action_vertices(1)
        prefactor = ValuePoly.rational(Fraction(-1, 2))
        for v1 in first:
            for v2 in first:
                _classify(groups, prefactor, v1, v2)
    classes = []
    for (vertices, selfs, shape, sign), (mult, coeff, local, family) in sorted(
            groups.items(), key=lambda kv: (kv[0][0], kv[0][2], kv[0][1], kv[0][3])):
        classes.append(DiagramClass(order=order, family=family, vertices=vertices,
                                    self_pairs=selfs, shape=shape, sign=sign,
                                    multiplicity=mult, coefficient=coeff,
                                    local_value=local))
    return classes


def order_contribution(order: int,
                       families: tuple[str, ...] | None = None
                       ) -> tuple[ValuePoly, IntegrandSum]:
    """(local scalar part, nonlocal integrand) of the g^order free-energy shift.

    `families` restricts the sum to the named diagram families; by default
    every connected class contributes.
    """
    local_total = ZERO
    nonlocal_terms: list[IntegrandMonomial] = []
    for cls in diagram_classes(order):
        if families is not None and cls.family not in families:
            continue
        weight, monomial = cls.term()
        if monomial is None:
            local_total = local_total + weight
        else:
            nonlocal_terms.append(monomial.scaled(weight))
    return local_total, IntegrandSum(nonlocal_terms).normalize()
