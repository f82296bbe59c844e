"""Numerical invariants: local lengths, Milnor number, Hilbert-Samuel and
Buchsbaum-Rim multiplicities, the saturation-defect multiplicity (epsilon),
projective degrees, and the deficient-conormal test.

All local lengths are measured at the origin by the truncation trick:
lambda(N/M) = vdim F/(M + m^k F) - vdim F/(N + m^k F) once consecutive
truncation levels agree.  Because the difference is non-decreasing in k
(the denominators shrink), equality across a gap certifies equality at every
level in between, so the evaluation schedule can be sparse.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .config import (DEFAULT_K_MAX, DEFAULT_N_MAX, DEFAULT_REDRAWS,
                     DEFAULT_WINDOW)
from .errors import EquimultError, StabilizationError, ZeroInputError
from .groebner import (Ideal, Submodule, buchberger, krull_dim, quotient_vdim,
                       truncated_vdim)
from .ops import (GenericSeed, fiber_cone_dim, free_power, generic_combination,
                  jacobian_columns, module_rank, rees_power, saturate)
from .ring import FreeModuleElement, Polynomial, PolyRing

ModLike = Union[Ideal, Submodule]


# ---------------------------------------------------------------------------
# length sequences and reports


def finite_differences(values: Sequence[int], depth: int) -> List[List[int]]:
    table = [list(values)]
    for _ in range(depth):
        prev = table[-1]
        table.append([prev[i + 1] - prev[i] for i in range(len(prev) - 1)])
    return table


@dataclass
class LengthSequence:
    """lambda_n for n = 1..n_max with stabilization diagnostics."""

    values: List[int]
    r: int
    window: int = DEFAULT_WINDOW
    finite_diffs: List[List[int]] = field(default_factory=list)
    stabilized: bool = False
    leading: Optional[int] = None

    @classmethod
    def build(cls, values: Sequence[int], r: int,
              window: int = DEFAULT_WINDOW) -> "LengthSequence":
        table = finite_differences(values, r)
        tail = table[r]
        ok = len(tail) >= window and len(set(tail[-window:])) == 1
        return cls(list(values), r, window, table, ok,
                   tail[-1] if ok else None)

    def normalized_max(self) -> Fraction:
        """max over n of r! * lambda_n / n^r, the achieved lower bound."""
        import math
        best = Fraction(0)
        for i, v in enumerate(self.values, start=1):
            best = max(best, Fraction(math.factorial(self.r) * v, i ** self.r))
        return best


@dataclass
class InvariantReport:
    """A named invariant value with the provenance needed to reproduce it."""

    name: str
    value: object
    exact: bool
    method: str
    characteristic: Tuple[int, ...]
    seed: Optional[int] = None
    n_max: Optional[int] = None
    k_max: Optional[int] = None
    stabilized: Optional[bool] = None
    notes: Tuple[str, ...] = ()
    details: Dict[str, object] = field(default_factory=dict)

    def to_json(self) -> dict:
        def enc(v):
            if isinstance(v, bool) or v is None:
                return v
            if isinstance(v, int):
                return str(v)  # decimal strings: lengths can exceed 2^53
            if isinstance(v, Fraction):
                return f"{v.numerator}/{v.denominator}"
            if isinstance(v, (list, tuple)):
                return [enc(x) for x in v]
            if isinstance(v, dict):
                return {k: enc(x) for k, x in v.items()}
            return str(v)

        return {
            "name": self.name,
            "value": enc(self.value),
            "exact": self.exact,
            "method": self.method,
            "characteristic": list(self.characteristic),
            "seed": self.seed,
            "n_max": self.n_max,
            "k_max": self.k_max,
            "stabilized": self.stabilized,
            "notes": list(self.notes),
            "details": enc(self.details),
        }


# ---------------------------------------------------------------------------
# local length via truncation


@dataclass
class LocalLength:
    value: int
    stabilized: bool
    k_used: int
    lower_bound: bool = False


def _truncation_schedule(k_max: int) -> List[int]:
    ks = [2, 3]
    step = 2
    while ks[-1] + step <= k_max:
        ks.append(ks[-1] + step)
        step += 1
    if ks[-1] != k_max:
        ks.append(k_max)
    return ks


def _tvdim(obj: ModLike, k: int, budget=None) -> int:
    gb = buchberger(obj, trunc=k, budget=budget)
    return truncated_vdim(gb, k)


def local_length(N: ModLike, M: ModLike, k_max: int = DEFAULT_K_MAX,
                 window: int = DEFAULT_WINDOW, budget=None) -> LocalLength:
    """Length of (N/M) localized at the origin, for M <= N with finite-length
    quotient there.  Reports a lower bound with a flag when the truncation
    difference never settles below k_max."""
    streak = 1
    prev = None
    last_k = 0
    for k in _truncation_schedule(k_max):
        d = _tvdim(M, k, budget) - _tvdim(N, k, budget)
        if prev is not None and d == prev:
            streak += 1
        else:
            streak = 1
        prev = d
        last_k = k
        if streak >= window:
            return LocalLength(d, True, k)
    return LocalLength(prev if prev is not None else 0, False, last_k, True)


def _unit_ideal(ring: PolyRing, modulo: Optional[Ideal] = None) -> Ideal:
    return Ideal(ring, [ring.one], modulo)


# ---------------------------------------------------------------------------
# Milnor number


def milnor(f: Polynomial, k_max: int = DEFAULT_K_MAX,
           window: int = DEFAULT_WINDOW, budget=None) -> int:
    """dim of the local algebra of the Jacobian ideal at the origin.

    The truncation trick measures the length locally at 0 even when the
    critical locus has components elsewhere."""
    ring = f.ring
    jac = Ideal(ring, [f.derivative(v) for v in ring.variables])
    if not jac.generators:
        raise ZeroInputError("zero Jacobian ideal")
    ll = local_length(_unit_ideal(ring), jac, k_max, window, budget)
    if not ll.stabilized:
        raise StabilizationError(
            f"Milnor truncation did not settle below k={k_max}: "
            f"critical locus is not isolated at the origin (>= {ll.value})")
    return ll.value


# ---------------------------------------------------------------------------
# Hilbert-Samuel multiplicity


def _tail_value(values: Sequence[int], depth: int, window: int) -> Optional[int]:
    seq = LengthSequence.build(values, depth, window)
    return seq.leading if seq.stabilized else None


def hs_mult(I: Ideal, ambient: Ideal, method: str = "colength-fit",
            n_max: int = DEFAULT_N_MAX, k_max: int = DEFAULT_K_MAX,
            window: int = DEFAULT_WINDOW, seed: Optional[GenericSeed] = None,
            redraws: int = DEFAULT_REDRAWS, budget=None) -> int:
    """Multiplicity of an m-primary ideal on the variety cut out by ``ambient``.

    colength-fit extracts d! times the leading coefficient of the local
    colengths of I^n; generic-reduction measures the colength of d generic
    combinations of the generators (Cohen-Macaulay callers only).  When both
    run they must agree.
    """
    ring = I.ring
    d = krull_dim(buchberger(ambient, budget=budget))
    if d < 0:
        raise ZeroInputError("ambient is the unit ideal")
    Iwork = Ideal(ring, I.generators, modulo=ambient)
    unit = _unit_ideal(ring)

    def by_fit() -> int:
        values = []
        for n in range(1, n_max + 1):
            power = rees_power(Iwork, n, budget=budget).submodule
            power_ideal = Ideal(ring, [v.entry(0) for v in power.generators],
                                modulo=ambient)
            ll = local_length(unit, power_ideal, k_max, window, budget)
            if not ll.stabilized:
                raise StabilizationError(f"colength of power {n} did not settle")
            values.append(ll.value)
            if n > d:
                got = _tail_value(values, d, window)
                if got is not None:
                    return got
        got = _tail_value(values, d, window)
        if got is None:
            raise StabilizationError(
                f"degree-{d} differences of colengths not constant by n={n_max}")
        return got

    def by_reduction() -> int:
        rng = seed if seed is not None else GenericSeed(0)
        for _ in range(redraws):
            combos = generic_combination(list(I.generators), d, rng)
            red = Ideal(ring, combos, modulo=ambient)
            ll = local_length(unit, red, k_max, window, budget)
            if ll.stabilized:
                return ll.value
        raise StabilizationError("no finite-colength reduction found "
                                 f"after {redraws} draws")

    if method == "colength-fit":
        return by_fit()
    if method == "generic-reduction":
        return by_reduction()
    if method == "both":
        a = by_fit()
        b = by_reduction()
        if a != b:
            raise EquimultError(
                f"colength-fit ({a}) and generic-reduction ({b}) disagree")
        return a
    raise ValueError(f"unknown method {method!r}")


# ---------------------------------------------------------------------------
# Buchsbaum-Rim multiplicity


def _with_modulo(M: ModLike, variety: Ideal) -> ModLike:
    if isinstance(M, Ideal):
        return Ideal(M.ring, M.generators, modulo=variety)
    return Submodule(M.ring, M.rank, M.generators, modulo=variety)


def br_mult(M: Submodule, N: Submodule, variety: Ideal,
            n_max: int = DEFAULT_N_MAX, k_max: int = DEFAULT_K_MAX,
            window: int = DEFAULT_WINDOW, budget=None,
            return_sequence: bool = False):
    """Buchsbaum-Rim multiplicity of the pair M <= N: r! times the leading
    coefficient of lambda(N^n / M^n), r = dim(variety) + rank - 1."""
    eM = module_rank(M, variety, budget)
    eN = module_rank(N, variety, budget)
    if eM != eN:
        raise EquimultError(f"generic ranks differ: {eM} vs {eN}")
    d = krull_dim(buchberger(variety, budget=budget))
    r = d + eM - 1
    Mw = _with_modulo(M, variety)
    Nw = _with_modulo(N, variety)
    from .ops import contains
    if not contains(Nw, Mw, budget):
        raise EquimultError("M is not contained in N over the variety")
    values = []
    for n in range(1, n_max + 1):
        Mn = rees_power(Mw, n, budget=budget).submodule
        Nn = rees_power(Nw, n, budget=budget).submodule
        ll = local_length(Nn, Mn, k_max, window, budget)
        if not ll.stabilized:
            raise StabilizationError(f"lambda(N^{n}/M^{n}) did not settle")
        values.append(ll.value)
        if n > r:
            got = _tail_value(values, r, window)
            if got is not None:
                seq = LengthSequence.build(values, r, window)
                return (got, seq) if return_sequence else got
    got = _tail_value(values, r, window)
    if got is None:
        raise StabilizationError(
            f"degree-{r} differences of lambda(N^n/M^n) not constant by n={n_max}")
    seq = LengthSequence.build(values, r, window)
    return (got, seq) if return_sequence else got


# ---------------------------------------------------------------------------
# epsilon multiplicity (restricted local volume of the module's blowup)


@dataclass
class EpsilonResult:
    sequence: LengthSequence
    report: InvariantReport

    @property
    def value(self):
        return self.report.value

    @property
    def stabilized(self) -> bool:
        return self.sequence.stabilized


def epsilon(M: ModLike, variety: Ideal, n_max: int = DEFAULT_N_MAX,
            k_max: int = DEFAULT_K_MAX, window: int = DEFAULT_WINDOW,
            budget=None, early_stop: bool = True,
            name: str = "epsilon") -> EpsilonResult:
    """Normalized growth of the m-torsion of Sym^n(ambient)/M^n.

    lambda_n is the local length of saturate(M^n, m)/M^n; the reported value
    is the stabilized r-th finite difference (r = dim + rank - 1).  Without a
    stabilization certificate the result is an interval estimate, never a
    silently claimed limit.
    """
    ring = M.ring
    e = module_rank(M, variety, budget)
    if e == 0:
        raise ZeroInputError("zero module")
    d = krull_dim(buchberger(variety, budget=budget))
    r = d + e - 1
    m_ideal = Ideal(ring, [ring.var(v) for v in ring.variables])
    Mw = _with_modulo(M, variety)
    values: List[int] = []
    sat_exponents: List[int] = []
    all_stable = True
    for n in range(1, n_max + 1):
        An = rees_power(Mw, n, budget=budget).submodule
        sat, expn = saturate(An, m_ideal, budget)
        sat_exponents.append(expn)
        ll = local_length(sat, An, k_max, window, budget)
        if not ll.stabilized:
            all_stable = False
        values.append(ll.value)
        if early_stop and all_stable and n >= r + window:
            if _tail_value(values, r, window) is not None:
                break
    seq = LengthSequence.build(values, r, window)
    stabilized = seq.stabilized and all_stable
    if stabilized:
        value: object = seq.leading
        exact = True
    else:
        value = {"lower": seq.normalized_max(), "upper": None}
        exact = False
    report = InvariantReport(
        name=name, value=value, exact=exact, method="rees-saturation-fit",
        characteristic=(ring.field.char,), n_max=len(values), k_max=k_max,
        stabilized=stabilized,
        details={"lengths": list(values), "r": r, "rank": e, "dim": d,
                 "saturation_exponents": sat_exponents},
    )
    return EpsilonResult(seq, report)


# ---------------------------------------------------------------------------
# projective degree


def proj_degree(graded_ideal: Ideal, proj_vars: Sequence[str], dim_r: int,
                n_max: int = DEFAULT_N_MAX + 4, window: int = DEFAULT_WINDOW,
                budget=None, slice_cap: int = 2_000_000) -> int:
    """r! times the leading coefficient of dim_k of the degree-n graded
    pieces, graded by total degree in the designated projective variables."""
    ring = graded_ideal.ring
    gb = buchberger(graded_ideal, budget=budget)
    if gb.is_unit():
        return 0
    leads = [e for _, e in gb.leading_exponents()] + gb.modulo_lead_exponents()
    proj = [ring.var_index[v] for v in proj_vars]
    proj_set = set(proj)
    other = [i for i in range(ring.nvars) if i not in proj_set]
    # a pure-power bound in every non-projective direction keeps slices finite
    bounds = {}
    for i in other:
        cands = [e[i] for e in leads
                 if e[i] and all(e[j] == 0 for j in range(ring.nvars) if j != i)]
        if not cands:
            raise StabilizationError(
                f"graded pieces are infinite-dimensional along {ring.variables[i]}")
        bounds[i] = min(cands)

    def count_slice(n: int) -> int:
        total = 0
        stack = [((0,) * ring.nvars, 0)]
        varorder = proj + other
        explored = 0

        def rec(exp: tuple, pos: int, proj_left: int) -> int:
            nonlocal explored
            explored += 1
            if explored > slice_cap:
                raise StabilizationError("graded-piece enumeration exploded")
            if any(all(x >= y for x, y in zip(exp, lead)) for lead in leads):
                return 0
            if pos == len(varorder):
                return 1 if proj_left == 0 else 0
            v = varorder[pos]
            if v in proj_set:
                limit = proj_left
            else:
                limit = bounds[v] - 1
            count = 0
            e = list(exp)
            for val in range(0, limit + 1):
                e[v] = val
                count += rec(tuple(e), pos + 1,
                             proj_left - val if v in proj_set else proj_left)
            return count

        return rec((0,) * ring.nvars, 0, n)

    values = [count_slice(n) for n in range(1, n_max + 1)]
    got = _tail_value(values, dim_r, window)
    if got is None:
        raise StabilizationError(
            f"graded dimensions did not reach a degree-{dim_r} polynomial "
            f"by n={n_max}")
    return got


# ---------------------------------------------------------------------------
# deficient-conormal test


@dataclass
class DcResult:
    codim: int
    dc: bool
    conormal_dim: int
    fiber_dim: int
    variety_dim: int
    jacobian_rank: int


def dc_check(variety: Ideal, budget=None) -> DcResult:
    """Codimension of the conormal fiber over the origin, and whether it is
    deficient (codim >= 2)."""
    ring = variety.ring
    if not variety.generators:
        raise ZeroInputError("dc test needs defining equations")
    origin = {v: 0 for v in ring.variables}
    for g in variety.generators:
        if g.specialize(origin).constant_coefficient() != 0:
            raise EquimultError("origin does not lie on the variety")
    cols = jacobian_columns(list(variety.generators), list(ring.variables))
    J = Submodule(ring, len(variety.generators), cols, modulo=variety)
    if not J.generators:
        raise ZeroInputError("Jacobian module vanishes: variety not reduced "
                             "at the origin")
    e = module_rank(J, variety, budget)
    d = krull_dim(buchberger(variety, budget=budget))
    conormal_dim = d + e - 1
    fdim = fiber_cone_dim(J, variety, budget) - 1
    codim = conormal_dim - fdim
    return DcResult(codim, codim >= 2, conormal_dim, fdim, d, e)
