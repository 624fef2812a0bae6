"""Symbolic integrands: products of propagator-line factors under one integral.

An IntegrandMonomial records coeff * integral dt of

    D(t)^m * dD(t)^n * ddD(t)^p * delta(t)^q

where D is the oscillator propagator exp(-w|t|)/(2w), dD and ddD its first
and second distributional derivatives, and delta the Dirac factor.  The
shape (0, 0, 0, 0) stands for coeff times the divergent bare measure
integral dt * 1 and is never a valid reduction input.

Equal-time (local) factors are never stored as integrand factors: they are
folded into coefficients at construction time through the constants below,

    D_AT_ZERO     = w^-1 / 2
    DDOT_AT_ZERO  = 0            (the sign function vanishes at the origin)
    DDDOT_AT_ZERO = -d0 + w/2    (second derivative at coincident times)

so an IntegrandSum always describes genuinely nonlocal content plus exact
ring coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .ring import D0, ONE, ZERO, RationalLike, ValuePoly

Shape = tuple[int, int, int, int]

D_AT_ZERO = ValuePoly.monomial(Fraction(1, 2), w=-1)
DDOT_AT_ZERO = ZERO
DDDOT_AT_ZERO = ValuePoly.monomial(Fraction(1, 2), w=1) - D0

# factor spellings shared by the renderer and the parser
FACTOR_NAMES = ("D", "dD", "ddD", "delta")


@dataclass(frozen=True)
class IntegrandMonomial:
    m: int
    n: int
    p: int
    q: int
    coeff: ValuePoly

    def __post_init__(self) -> None:
        if min(self.m, self.n, self.p, self.q) < 0:
            raise ValueError("factor powers must be nonnegative")

    @property
    def shape(self) -> Shape:
        return (self.m, self.n, self.p, self.q)

    @property
    def is_bare_measure(self) -> bool:
        return self.shape == (0, 0, 0, 0)

    def scaled(self, factor: ValuePoly | RationalLike) -> "IntegrandMonomial":
        return IntegrandMonomial(self.m, self.n, self.p, self.q, self.coeff * factor)

    def __mul__(self, other: "IntegrandMonomial") -> "IntegrandMonomial":
        return IntegrandMonomial(self.m + other.m, self.n + other.n,
                                 self.p + other.p, self.q + other.q,
                                 self.coeff * other.coeff)

    def factors_text(self) -> str:
        """Render the factor part, unit powers elided, e.g. 'D^2 ddD'."""
        pieces = []
        for name, power in zip(FACTOR_NAMES, self.shape):
            if power == 1:
                pieces.append(name)
            elif power > 1:
                pieces.append(f"{name}^{power}")
        return " ".join(pieces)

    def __repr__(self) -> str:
        return f"IntegrandMonomial({self.coeff.render()!r} * {self.factors_text() or '1'!r})"


def mono(m: int = 0, n: int = 0, p: int = 0, q: int = 0,
         coeff: ValuePoly | RationalLike = 1) -> IntegrandMonomial:
    if not isinstance(coeff, ValuePoly):
        coeff = ValuePoly.rational(coeff)
    return IntegrandMonomial(m, n, p, q, coeff)


def mul_monomials(x: IntegrandMonomial, y: IntegrandMonomial) -> IntegrandMonomial:
    return x * y


class IntegrandSum:
    """A finite sum of integrand monomials.

    normalize() produces the canonical form: monomials of equal shape merged,
    zero-coefficient terms dropped, terms sorted lexicographically by
    (m, n, p, q).  Two sums compare equal when their canonical forms match.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Iterable[IntegrandMonomial] = ()):
        self.terms: tuple[IntegrandMonomial, ...] = tuple(terms)

    def normalize(self) -> "IntegrandSum":
        acc: dict[Shape, ValuePoly] = {}
        for term in self.terms:
            acc[term.shape] = acc.get(term.shape, ZERO) + term.coeff
        kept = [IntegrandMonomial(*shape, coeff)
                for shape, coeff in sorted(acc.items()) if not coeff.is_zero]
        return IntegrandSum(kept)

    @property
    def is_zero(self) -> bool:
        return not self.normalize().terms

    def __add__(self, other: "IntegrandSum") -> "IntegrandSum":
        return IntegrandSum(self.terms + other.terms).normalize()

    def __neg__(self) -> "IntegrandSum":
        return self.scale(-1)

    def __sub__(self, other: "IntegrandSum") -> "IntegrandSum":
        return self + (-other)

    def scale(self, factor: ValuePoly | RationalLike) -> "IntegrandSum":
        return IntegrandSum(t.scaled(factor) for t in self.terms).normalize()

    def substitute(self, bindings) -> "IntegrandSum":
        """Apply a ring substitution to every coefficient."""
        return IntegrandSum(
            IntegrandMonomial(t.m, t.n, t.p, t.q, t.coeff.substitute(bindings))
            for t in self.terms).normalize()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IntegrandSum):
            return NotImplemented
        return self.normalize().terms == other.normalize().terms

    def __hash__(self) -> int:
        return hash(self.normalize().terms)

    def __iter__(self):
        return iter(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __repr__(self) -> str:
        return f"IntegrandSum({list(self.terms)!r})"


def integrand_sum(*terms: IntegrandMonomial) -> IntegrandSum:
    return IntegrandSum(terms).normalize()


def local_value(m: int = 0, n: int = 0, p: int = 0) -> ValuePoly:
    """Equal-time value D(0)^m * dD(0)^n * ddD(0)^p as a ring element."""
    if n > 0:
        return ZERO
    return D_AT_ZERO ** m * DDDOT_AT_ZERO ** p if (m or p) else ONE
