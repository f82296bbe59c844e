"""Sparse exact multivariate polynomials and free-module vectors.

A polynomial is a tuple of ``(key, exp, coeff)`` terms, strictly decreasing in
the ring order's compiled key; ``exp`` is the exponent tuple and ``coeff`` a
raw field value (int mod p, or Fraction).  The empty tuple is zero.  Values
are immutable after construction and safe to share between threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, Optional, Sequence, Tuple

from .errors import RingMismatchError, ZeroInputError
from .field import QQ, CoefficientField
from .orders import MonomialOrder, degrevlex, deg_exp

Exp = Tuple[int, ...]


@dataclass(frozen=True)
class Monomial:
    """Exponent vector of a power product, order-agnostic."""

    exponents: Exp

    @property
    def total_degree(self) -> int:
        return sum(self.exponents)

    def divides(self, other: "Monomial") -> bool:
        return all(a <= b for a, b in zip(self.exponents, other.exponents))

    def __mul__(self, other: "Monomial") -> "Monomial":
        return Monomial(tuple(a + b for a, b in zip(self.exponents, other.exponents)))


class PolyRing:
    """Polynomial ring over an exact field with a fixed monomial order.

    ``parameter_vars`` marks the deformation parameters of a family; they are
    ordinary variables as far as arithmetic is concerned.
    """

    def __init__(self, variables: Sequence[str], field: CoefficientField = QQ,
                 order: Optional[MonomialOrder] = None,
                 parameter_vars: Sequence[str] = ()):
        variables = tuple(variables)
        if len(set(variables)) != len(variables):
            raise ValueError("variable names must be unique")
        unknown = set(parameter_vars) - set(variables)
        if unknown:
            raise ValueError(f"parameter vars {sorted(unknown)} not among variables")
        self.variables = variables
        self.field = field
        self.order = order if order is not None else degrevlex()
        self.parameter_vars = tuple(v for v in variables if v in set(parameter_vars))
        self.nvars = len(variables)
        self.var_index = {v: i for i, v in enumerate(variables)}
        self.key = self.order.key_function(self.nvars)
        self._zero_exp = (0,) * self.nvars

    # -- constructors ---------------------------------------------------

    @property
    def zero(self) -> "Polynomial":
        return Polynomial(self, ())

    @property
    def one(self) -> "Polynomial":
        return self.constant(self.field.one)

    def constant(self, value) -> "Polynomial":
        if value == 0:
            return self.zero
        e = self._zero_exp
        return Polynomial(self, ((self.key(e), e, value),))

    def from_int(self, n: int) -> "Polynomial":
        return self.constant(self.field.of_int(n))

    def var(self, name: str) -> "Polynomial":
        i = self.var_index[name]
        e = tuple(1 if j == i else 0 for j in range(self.nvars))
        return self.monomial(e)

    def gens(self) -> Tuple["Polynomial", ...]:
        return tuple(self.var(v) for v in self.variables)

    def monomial(self, exp: Exp, coeff=None) -> "Polynomial":
        if coeff is None:
            coeff = self.field.one
        if coeff == 0:
            return self.zero
        exp = tuple(exp)
        return Polynomial(self, ((self.key(exp), exp, coeff),))

    def from_terms(self, pairs: Iterable[Tuple[Exp, object]]) -> "Polynomial":
        acc: Dict[Exp, object] = {}
        add = self.field.add
        for exp, c in pairs:
            exp = tuple(exp)
            if exp in acc:
                acc[exp] = add(acc[exp], c)
            else:
                acc[exp] = c
        terms = [(self.key(e), e, c) for e, c in acc.items() if c != 0]
        terms.sort(reverse=True)
        return Polynomial(self, tuple(terms))

    def parse(self, text: str) -> "Polynomial":
        from .parsing import parse_polynomial
        return parse_polynomial(self, text)

    # -- structure ------------------------------------------------------

    def restricted(self, keep: Sequence[str]) -> "PolyRing":
        """Subring on a subset of the variables (same field, same order kind)."""
        keep = [v for v in self.variables if v in set(keep)]
        kind = self.order.kind if self.order.kind != "block" else "degrevlex"
        return PolyRing(keep, self.field,
                        MonomialOrder(kind, module_extension=self.order.module_extension),
                        [v for v in self.parameter_vars if v in set(keep)])

    def with_order(self, order: MonomialOrder) -> "PolyRing":
        return PolyRing(self.variables, self.field, order, self.parameter_vars)

    def with_variables(self, variables: Sequence[str],
                       order: Optional[MonomialOrder] = None) -> "PolyRing":
        return PolyRing(variables, self.field,
                        order if order is not None else self.order,
                        [v for v in self.parameter_vars if v in variables])

    def same_structure(self, other: "PolyRing") -> bool:
        return (self.variables == other.variables and self.field == other.field
                and self.order == other.order)

    def __eq__(self, other):
        return isinstance(other, PolyRing) and self.same_structure(other) \
            and self.parameter_vars == other.parameter_vars

    def __hash__(self):
        return hash((self.variables, self.field, self.order, self.parameter_vars))

    def __repr__(self):
        return f"PolyRing({','.join(self.variables)}; {self.field}; {self.order})"


def _check_same_ring(a: "Polynomial", b: "Polynomial"):
    if a.ring is not b.ring and not a.ring.same_structure(b.ring):
        raise RingMismatchError(f"{a.ring!r} vs {b.ring!r}")


class Polynomial:
    """Immutable sparse polynomial; ``terms`` strictly decreasing in the order."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: PolyRing, terms: Tuple[tuple, ...]):
        self.ring = ring
        self.terms = terms

    # -- queries ----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def leading(self) -> tuple:
        if not self.terms:
            raise ZeroInputError("zero polynomial has no leading term")
        return self.terms[0]

    @property
    def lt_exp(self) -> Exp:
        return self.leading()[1]

    @property
    def lt_coeff(self):
        return self.leading()[2]

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(deg_exp(t[1]) for t in self.terms)

    def min_degree(self) -> int:
        if not self.terms:
            return -1
        return min(deg_exp(t[1]) for t in self.terms)

    def constant_coefficient(self):
        zero_exp = self.ring._zero_exp
        for _, e, c in self.terms:
            if e == zero_exp:
                return c
        return self.ring.field.zero

    def monomials(self) -> Tuple[Monomial, ...]:
        return tuple(Monomial(t[1]) for t in self.terms)

    def coefficient_of(self, exp: Exp):
        exp = tuple(exp)
        for _, e, c in self.terms:
            if e == exp:
                return c
        return self.ring.field.zero

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        _check_same_ring(self, other)
        return _merge(self.ring, self.terms, other.terms, 1)

    def __radd__(self, other):
        return self.__add__(other)

    def __sub__(self, other):
        other = self._coerce(other)
        _check_same_ring(self, other)
        return _merge(self.ring, self.terms, other.terms, -1)

    def __rsub__(self, other):
        return self._coerce(other).__sub__(self)

    def __neg__(self):
        neg = self.ring.field.neg
        return Polynomial(self.ring, tuple((k, e, neg(c)) for k, e, c in self.terms))

    def __mul__(self, other):
        other = self._coerce(other)
        _check_same_ring(self, other)
        if not self.terms or not other.terms:
            return self.ring.zero
        ring = self.ring
        mul = ring.field.mul
        add = ring.field.add
        a, b = self.terms, other.terms
        if len(a) > len(b):
            a, b = b, a
        acc: Dict[Exp, object] = {}
        for _, ea, ca in a:
            for _, eb, cb in b:
                e = tuple(x + y for x, y in zip(ea, eb))
                c = mul(ca, cb)
                if e in acc:
                    acc[e] = add(acc[e], c)
                else:
                    acc[e] = c
        key = ring.key
        terms = [(key(e), e, c) for e, c in acc.items() if c != 0]
        terms.sort(reverse=True)
        return Polynomial(ring, tuple(terms))

    def __rmul__(self, other):
        return self.__mul__(other)

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = self.ring.one
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def scale(self, c) -> "Polynomial":
        if c == 0:
            return self.ring.zero
        mul = self.ring.field.mul
        return Polynomial(self.ring, tuple((k, e, mul(cc, c)) for k, e, cc in self.terms))

    def monic(self) -> "Polynomial":
        if not self.terms:
            return self
        return self.scale(self.ring.field.inv(self.lt_coeff))

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            return other
        if isinstance(other, int):
            return self.ring.from_int(other)
        if isinstance(other, Fraction):
            return self.ring.constant(self.ring.field.of_fraction(other))
        return NotImplemented

    # -- calculus / substitution ------------------------------------------

    def derivative(self, var: str) -> "Polynomial":
        i = self.ring.var_index[var]
        of_int = self.ring.field.of_int
        mul = self.ring.field.mul
        pairs = []
        for _, e, c in self.terms:
            if e[i]:
                de = e[:i] + (e[i] - 1,) + e[i + 1:]
                pairs.append((de, mul(c, of_int(e[i]))))
        return self.ring.from_terms(pairs)

    def specialize(self, assignment: Dict[str, object]) -> "Polynomial":
        """Substitute field values for variables; result lives in the ring on
        the remaining variables."""
        ring = self.ring
        for v in assignment:
            if v not in ring.var_index:
                raise KeyError(f"unknown variable {v!r}")
        values = {}
        for v, val in assignment.items():
            if isinstance(val, int):
                val = ring.field.of_int(val)
            elif isinstance(val, Fraction):
                val = ring.field.of_fraction(val)
            values[ring.var_index[v]] = val
        target = ring.restricted([v for v in ring.variables if v not in assignment])
        keep_idx = [ring.var_index[v] for v in target.variables]
        mul = ring.field.mul
        pairs = []
        for _, e, c in self.terms:
            for i, val in values.items():
                if e[i]:
                    c = mul(c, val ** e[i] if not ring.field.char
                            else pow(val, e[i], ring.field.char))
            if c != 0:
                pairs.append((tuple(e[i] for i in keep_idx), c))
        return target.from_terms(pairs)

    def evaluate(self, point: Dict[str, object]):
        """Value at a full point; every variable must be assigned."""
        if set(point) != set(self.ring.variables):
            raise KeyError("evaluate needs every variable assigned")
        return self.specialize(point).constant_coefficient()

    # -- comparisons / hashing ---------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self._coerce(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring.same_structure(other.ring) and \
            tuple((e, c) for _, e, c in self.terms) == tuple((e, c) for _, e, c in other.terms)

    def __hash__(self):
        return hash(tuple((e, c) for _, e, c in self.terms))

    def __str__(self):
        from .parsing import format_polynomial
        return format_polynomial(self)

    def __repr__(self):
        return f"<{self}>"


class FreeModuleElement:
    """Sparse vector of polynomials, indexed by component < rank."""

    __slots__ = ("ring", "rank", "entries")

    def __init__(self, ring: PolyRing, rank: int, entries: Dict[int, Polynomial]):
        if any(not 0 <= i < rank for i in entries):
            raise ValueError("component index out of range")
        self.ring = ring
        self.rank = rank
        self.entries = {i: p for i, p in sorted(entries.items()) if not p.is_zero()}

    @classmethod
    def from_list(cls, ring: PolyRing, polys: Sequence[Polynomial]) -> "FreeModuleElement":
        return cls(ring, len(polys), {i: p for i, p in enumerate(polys)})

    @classmethod
    def basis_vector(cls, ring: PolyRing, rank: int, i: int) -> "FreeModuleElement":
        return cls(ring, rank, {i: ring.one})

    def is_zero(self) -> bool:
        return not self.entries

    def __bool__(self):
        return bool(self.entries)

    def entry(self, i: int) -> Polynomial:
        return self.entries.get(i, self.ring.zero)

    def to_list(self) -> list:
        return [self.entry(i) for i in range(self.rank)]

    def _check(self, other: "FreeModuleElement"):
        if self.rank != other.rank:
            raise RingMismatchError(f"rank {self.rank} vs {other.rank}")
        if not self.ring.same_structure(other.ring):
            raise RingMismatchError(f"{self.ring!r} vs {other.ring!r}")

    def __add__(self, other: "FreeModuleElement"):
        self._check(other)
        entries = dict(self.entries)
        for i, p in other.entries.items():
            entries[i] = entries[i] + p if i in entries else p
        return FreeModuleElement(self.ring, self.rank, entries)

    def __sub__(self, other: "FreeModuleElement"):
        return self + (-other)

    def __neg__(self):
        return FreeModuleElement(self.ring, self.rank,
                                 {i: -p for i, p in self.entries.items()})

    def __rmul__(self, poly):
        if isinstance(poly, (int, Fraction)):
            poly = self.ring.zero._coerce(poly)
        return FreeModuleElement(self.ring, self.rank,
                                 {i: poly * p for i, p in self.entries.items()})

    def scale(self, c) -> "FreeModuleElement":
        return FreeModuleElement(self.ring, self.rank,
                                 {i: p.scale(c) for i, p in self.entries.items()})

    def total_degree(self) -> int:
        if not self.entries:
            return -1
        return max(p.total_degree() for p in self.entries.values())

    def __eq__(self, other):
        if not isinstance(other, FreeModuleElement):
            return NotImplemented
        return self.rank == other.rank and self.entries == other.entries

    def __hash__(self):
        return hash((self.rank, tuple(sorted((i, p) for i, p in self.entries.items()))))

    def __str__(self):
        parts = ", ".join(str(self.entry(i)) for i in range(self.rank))
        return f"[{parts}]"

    def __repr__(self):
        return f"<{self}>"


def leading_term(v, order: Optional[MonomialOrder] = None):
    """Order-maximal term of a polynomial or vector.

    Returns ``(coeff, Monomial, component)`` with ``component`` None for ring
    elements.  For vectors the order's module extension breaks ties between
    components.
    """
    if isinstance(v, Polynomial):
        if v.is_zero():
            raise ZeroInputError("zero polynomial has no leading term")
        if order is None or order == v.ring.order:
            _, e, c = v.terms[0]
            return c, Monomial(e), None
        key = order.key_function(v.ring.nvars)
        _, e, c = max((key(e), e, c) for _, e, c in v.terms)
        return c, Monomial(e), None
    if isinstance(v, FreeModuleElement):
        if v.is_zero():
            raise ZeroInputError("zero vector has no leading term")
        order = order if order is not None else v.ring.order
        mkey, _ = order.module_key_function(v.ring.nvars)
        best = None
        for i, p in v.entries.items():
            for _, e, c in p.terms:
                k = mkey(i, e)
                if best is None or k > best[0]:
                    best = (k, i, e, c)
        _, i, e, c = best
        return c, Monomial(e), i
    raise TypeError(f"unsupported operand {type(v)!r}")


def _merge(ring: PolyRing, a: tuple, b: tuple, sign: int) -> Polynomial:
    """Merge two sorted term tuples, adding (sign=+1) or subtracting."""
    fadd = ring.field.add
    fneg = ring.field.neg
    out = []
    i = j = 0
    na, nb = len(a), len(b)
    while i < na and j < nb:
        ka = a[i][0]
        kb = b[j][0]
        if ka > kb:
            out.append(a[i]); i += 1
        elif ka < kb:
            k, e, c = b[j]
            out.append((k, e, c if sign > 0 else fneg(c))); j += 1
        else:
            k, e, ca = a[i]
            cb = b[j][2]
            c = fadd(ca, cb) if sign > 0 else fadd(ca, fneg(cb))
            if c != 0:
                out.append((k, e, c))
            i += 1; j += 1
    out.extend(a[i:])
    if sign > 0:
        out.extend(b[j:])
    else:
        out.extend((k, e, fneg(c)) for k, e, c in b[j:])
    return Polynomial(ring, tuple(out))
