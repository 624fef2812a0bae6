"""Fixed-order rewrite system that evaluates singular propagator integrals.

Every integral of the form  integral dt  D^m dD^n ddD^p delta^q  over the
whole line is reduced to an exact ring value by six rules applied in a fixed
order.  The rules extend the Lebesgue integral: wherever the integrand is
absolutely integrable in the ordinary sense they agree with it, and on the
genuinely ambiguous products (for example dD^4) they pick the unique values
compatible with integration by parts without boundary terms, with the
propagator's equation of motion

    ddD(t) = -delta(t) + w^2 D(t),

and with the two delta evaluation rules

    integral f delta      -> f(0)
    integral f delta^2    -> f(0) * d0,

where f(0) folds D(0) = w^-1/2 and dD(0) = 0.  Applied in pipeline order
(equation of motion, delta^2, delta, parity, integration by parts, base
integral) the system is confluent by construction: each stage eliminates one
factor kind and never reintroduces an earlier one.

The reduction state is a pair (accumulated ring value, residual integrand
sum); the trace records every state change for replay and display.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .integrand import D_AT_ZERO, IntegrandMonomial, IntegrandSum, mono
from .ring import D0, ZERO, ValuePoly


class RuleError(ValueError):
    """An input or intermediate term has no rule in the system."""


# (accumulated value, residual integrand) at one point of the pipeline
State = tuple[ValuePoly, IntegrandSum]


@dataclass(frozen=True)
class TraceStep:
    rule: str
    before: State
    after: State


@dataclass(frozen=True)
class ReductionTrace:
    steps: tuple[TraceStep, ...]

    def replay(self, start: IntegrandSum) -> State:
        """Walk the recorded chain from `start`, checking step contiguity."""
        state: State = (ZERO, start.normalize())
        for step in self.steps:
            if step.before != state:
                raise RuleError(f"trace break at rule {step.rule!r}")
            state = step.after
        return state


def substitute_field_equation(s: IntegrandSum) -> IntegrandSum:
    """Eliminate all ddD factors via ddD = -delta + w^2 D (binomial expansion)."""
    out: list[IntegrandMonomial] = []
    for t in s:
        if t.p == 0:
            out.append(t)
            continue
        # (-delta + w^2 D)^p = sum_j C(p,j) (-1)^j delta^j (w^2 D)^(p-j)
        binom = 1
        for j in range(t.p + 1):
            coef = t.coeff * Fraction((-1) ** j * binom) * ValuePoly.monomial(1, w=2 * (t.p - j))
            out.append(mono(t.m + t.p - j, t.n, 0, t.q + j, coef))
            binom = binom * (t.p - j) // (j + 1)
    return IntegrandSum(out).normalize()


def _point_value(t: IntegrandMonomial) -> ValuePoly:
    # value at the origin of the non-delta factors D^m dD^n (p must be 0)
    if t.n >= 1:
        return ZERO
    return D_AT_ZERO ** t.m


def eval_dirac_squared(s: IntegrandSum) -> tuple[ValuePoly, IntegrandSum]:
    """Evaluate every delta^2 term to f(0) * d0; reject delta^3 and higher."""
    value = ZERO
    rest: list[IntegrandMonomial] = []
    for t in s:
        if t.q >= 3:
            raise RuleError(f"no rule for delta^{t.q}")
        if t.q == 2:
            if t.p:
                raise RuleError("delta^2 evaluation requires ddD-free terms")
            value = value + t.coeff * _point_value(t) * D0
        else:
            rest.append(t)
    return value, IntegrandSum(rest).normalize()


def eval_dirac(s: IntegrandSum) -> tuple[ValuePoly, IntegrandSum]:
    """Evaluate every single-delta term to the point value of its cofactor."""
    value = ZERO
    rest: list[IntegrandMonomial] = []
    for t in s:
        if t.q >= 2:
            raise RuleError("delta^2 terms must go through eval_dirac_squared first")
        if t.q == 1:
            if t.p:
                raise RuleError("delta evaluation requires ddD-free terms")
            value = value + t.coeff * _point_value(t)
        else:
            rest.append(t)
    return value, IntegrandSum(rest).normalize()


def drop_odd_orientation(s: IntegrandSum) -> IntegrandSum:
    """Drop D^m dD^n terms with odd n: the integrand is odd under t -> -t."""
    kept = []
    for t in s:
        if t.p or t.q:
            raise RuleError("parity rule applies after delta elimination")
        if t.n % 2 == 0:
            kept.append(t)
    return IntegrandSum(kept).normalize()


def ibp_step(t: IntegrandMonomial) -> IntegrandSum:
    """One integration-by-parts move on a dD^n D^m term, n even and >= 2.

    Moving one derivative off dD^n and using the equation of motion gives

        (1+m) integral dD^n D^m = (n-1) [dD^(n-2) D^(m+1)](0)
                                  - (n-1) w^2 integral dD^(n-2) D^(m+2)

    with no boundary terms.  The pointwise bracket is emitted as the
    equivalent single-delta term when n = 2 and omitted when n >= 4, where
    dD(0) = 0 makes it vanish.
    """
    if t.p or t.q:
        raise RuleError("integration by parts applies to pure D/dD terms")
    if t.n < 2 or t.n % 2:
        raise RuleError("integration by parts needs an even dD power >= 2")
    ratio = Fraction(t.n - 1, t.m + 1)
    out = []
    if t.n == 2:
        out.append(mono(t.m + 1, 0, 0, 1, t.coeff * ratio))
    out.append(mono(t.m + 2, t.n - 2, 0, 0,
                    t.coeff * (-ratio) * ValuePoly.monomial(1, w=2)))
    return IntegrandSum(out).normalize()


def base_integral(m: int) -> ValuePoly:
    """integral dt D^m = 2^(1-m) m^-1 w^-(m+1) for m >= 1."""
    if m < 1:
        raise RuleError("base integral needs at least one propagator factor")
    return ValuePoly.monomial(Fraction(2, m * 2 ** m), w=-(m + 1))


def reduce(s: IntegrandSum) -> tuple[ValuePoly, ReductionTrace]:
    """Reduce an integrand sum to its exact ring value.

    Raises RuleError for the divergent bare-measure term (0,0,0,0), for
    delta powers above 2 in the input, and for delta^3 products arising
    from the equation-of-motion expansion.  Linear in the input by
    construction: every rule rewrites terms independently.
    """
    pending = s.normalize()
    for t in pending:
        if t.is_bare_measure:
            raise RuleError("divergent bare measure: term without any factor")
        if t.q > 2:
            raise RuleError(f"no rule for delta^{t.q}")

    steps: list[TraceStep] = []
    value = ZERO

    def advance(rule: str, new_value: ValuePoly, new_pending: IntegrandSum) -> None:
        nonlocal value, pending
        new_pending = new_pending.normalize()
        if new_value != value or new_pending != pending:
            steps.append(TraceStep(rule, (value, pending), (new_value, new_pending)))
            value, pending = new_value, new_pending

    advance("field_equation", value, substitute_field_equation(pending))
    got, rest = eval_dirac_squared(pending)
    advance("delta_squared", value + got, rest)
    got, rest = eval_dirac(pending)
    advance("delta", value + got, rest)
    advance("parity", value, drop_odd_orientation(pending))

    while any(t.n for t in pending):
        rewritten: list[IntegrandMonomial] = []
        for t in pending:
            if t.n >= 2:
                rewritten.extend(ibp_step(t))
            else:
                rewritten.append(t)
        advance("ibp", value, IntegrandSum(rewritten))
        got, rest = eval_dirac(pending)
        advance("delta", value + got, rest)

    got = ZERO
    for t in pending:
        got = got + t.coeff * base_integral(t.m)
    advance("base", value + got, IntegrandSum())

    return value, ReductionTrace(tuple(steps))
