"""Monomial orders for polynomial rings and free modules.

An order is compiled, for a fixed number of variables, into a key function
``exp -> tuple[int, ...]`` that is *additive*: ``key(a + b) = key(a) + key(b)``
componentwise.  Additivity lets the Groebner engine shift cached keys when
multiplying by a monomial instead of recomputing them.

Module terms ``(component, exp)`` are keyed by prepending (position-over-term)
or appending (term-over-position) a ``-component`` slot, so larger keys always
mean larger terms and key addition still matches multiplication by ring
monomials.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional, Tuple

Exp = Tuple[int, ...]

POSITION_OVER_TERM = "position-over-term"
TERM_OVER_POSITION = "term-over-position"


@dataclass(frozen=True)
class MonomialOrder:
    """degrevlex, lex, or a two-block elimination order.

    A block order eliminates its first block: any monomial involving a
    variable from the first ``split`` variables exceeds every monomial free of
    them.
    """

    kind: str = "degrevlex"
    split: Optional[int] = None
    inner: Tuple[str, str] = ("degrevlex", "degrevlex")
    module_extension: str = POSITION_OVER_TERM

    def __post_init__(self):
        if self.kind not in ("degrevlex", "lex", "block"):
            raise ValueError(f"unknown order kind {self.kind!r}")
        if self.kind == "block" and (self.split is None or self.split < 1):
            raise ValueError("block order needs a positive split index")
        if self.module_extension not in (POSITION_OVER_TERM, TERM_OVER_POSITION):
            raise ValueError(f"unknown module extension {self.module_extension!r}")

    def with_extension(self, module_extension: str) -> "MonomialOrder":
        return MonomialOrder(self.kind, self.split, self.inner, module_extension)

    def key_function(self, nvars: int) -> Callable[[Exp], tuple]:
        """Compile the ring-monomial key for ``nvars`` variables."""
        return _compile(self.kind, self.split, self.inner, nvars)

    def module_key_function(self, nvars: int):
        """Compile ``(component, exp) -> key`` plus the shift used when
        multiplying a module term by a ring monomial."""
        ring_key = self.key_function(nvars)
        if self.module_extension == POSITION_OVER_TERM:
            def mkey(comp: int, exp: Exp):
                return (-comp,) + ring_key(exp)
        else:
            def mkey(comp: int, exp: Exp):
                return ring_key(exp) + (-comp,)

        def shift(exp: Exp):
            return mkey(0, exp)

        return mkey, shift

    def __str__(self):
        if self.kind == "block":
            return f"block({self.split}; {self.inner[0]}, {self.inner[1]})"
        return self.kind


def degrevlex(module_extension: str = POSITION_OVER_TERM) -> MonomialOrder:
    return MonomialOrder("degrevlex", module_extension=module_extension)


def lex(module_extension: str = POSITION_OVER_TERM) -> MonomialOrder:
    return MonomialOrder("lex", module_extension=module_extension)


def elimination_order(split: int, module_extension: str = POSITION_OVER_TERM) -> MonomialOrder:
    """Block order whose first ``split`` variables get eliminated."""
    return MonomialOrder("block", split, ("degrevlex", "degrevlex"), module_extension)


def _compile(kind, split, inner, nvars):
    if kind == "lex":
        return lambda e: e
    if kind == "degrevlex":
        rng = tuple(range(nvars - 1, -1, -1))

        def key(e, _rng=rng):
            return (sum(e),) + tuple(-e[i] for i in _rng)

        return key
    # block: first `split` variables dominate
    k1 = _compile(inner[0], None, None, split)
    k2 = _compile(inner[1], None, None, nvars - split)

    def key(e, _s=split, _k1=k1, _k2=k2):
        return _k1(e[:_s]) + _k2(e[_s:])

    return key


# -- exponent-tuple helpers used throughout the engine -----------------------

def mul_exp(a: Exp, b: Exp) -> Exp:
    return tuple(x + y for x, y in zip(a, b))


def divides_exp(a: Exp, b: Exp) -> bool:
    """True when the monomial with exponents ``a`` divides the one with ``b``."""
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def quot_exp(a: Exp, b: Exp) -> Exp:
    return tuple(x - y for x, y in zip(a, b))


def lcm_exp(a: Exp, b: Exp) -> Exp:
    return tuple(x if x > y else y for x, y in zip(a, b))


def deg_exp(e: Exp) -> int:
    return sum(e)


def coprime_exp(a: Exp, b: Exp) -> bool:
    for x, y in zip(a, b):
        if x and y:
            return False
    return True
