"""Buchberger's algorithm for ideals and submodules of free modules.

The engine works on flattened vectors: lists of ``(key, comp, exp, coeff)``
terms sorted strictly decreasing in the compiled module key.  Pair selection
is the normal strategy (degree, then key, of the pair's lcm); pair elimination
uses Buchberger's product criterion (only where it is valid for modules: both
elements concentrated in one component) and the chain criterion.

Two engine features carry most of the package's weight:

* ``modulo``: computations over a quotient ring R/I take the ideal's Groebner
  basis as *diagonal* reducers that act in every component without being
  materialized per component.  S-pairs between two diagonal copies of the
  ideal basis lift ideal S-pairs and reduce to zero, so they are skipped;
  pairs between a module element and a diagonal reducer are formed in the
  element's lead component only.

* ``trunc``: a degree bound k makes the engine compute modulo m^k·F (m the
  ideal of all variables) without materializing the monomial generators.
  Every term of ring degree >= k is dropped on sight, pairs whose lcm has
  degree >= k are skipped, and each non-homogeneous basis element f spawns
  "boundary" elements: the truncations of x^a·f over all monomials x^a with
  deg(x^a · lt(f)) = k.  Any multiple of f crossing the degree-k wall factors
  through one of those truncations, which justifies the skipped pairs.
"""

from __future__ import annotations

import heapq
import itertools
import math
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .config import DEFAULT_BUDGET
from .errors import BudgetExceededError, RingMismatchError
from .orders import (MonomialOrder, coprime_exp, deg_exp, divides_exp, lcm_exp)
from .ring import FreeModuleElement, Polynomial, PolyRing

FlatVec = List[tuple]  # [(key, comp, exp, coeff), ...] sorted desc by key

INFINITE = "infinite"


# ---------------------------------------------------------------------------
# flattening between public objects and engine vectors


def _flatten_poly(p: Polynomial, mkey) -> FlatVec:
    return sorted(((mkey(0, e), 0, e, c) for _, e, c in p.terms), reverse=True)


def _flatten_vec(v: FreeModuleElement, mkey) -> FlatVec:
    out = []
    for comp, p in v.entries.items():
        for _, e, c in p.terms:
            out.append((mkey(comp, e), comp, e, c))
    out.sort(reverse=True)
    return out


def _unflatten(ring: PolyRing, rank: Optional[int], flat: FlatVec):
    if rank is None:
        return ring.from_terms([(e, c) for _, _, e, c in flat])
    entries: Dict[int, list] = {}
    for _, comp, e, c in flat:
        entries.setdefault(comp, []).append((e, c))
    return FreeModuleElement(ring, rank,
                             {i: ring.from_terms(pairs) for i, pairs in entries.items()})


def _compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


# ---------------------------------------------------------------------------
# the engine


class FlatGB:
    """One Buchberger run over flattened vectors."""

    def __init__(self, ring: PolyRing, rank: int, order: MonomialOrder, *,
                 modulo_flat: Optional[List[FlatVec]] = None,
                 trunc: Optional[int] = None,
                 budget: Optional[int] = None):
        self.ring = ring
        self.rank = rank
        self.order = order
        self.field = ring.field
        self.mkey, self.shift = order.module_key_function(ring.nvars)
        self.trunc = trunc
        self.budget = budget if budget is not None else DEFAULT_BUDGET
        self.steps = 0
        self.basis: List[FlatVec] = []
        self.lead: List[tuple] = []      # (comp, exp, deg, coeff)
        self.single_comp: List[bool] = []
        self.by_comp: Dict[int, list] = {}
        self.pairs: list = []
        self.done_pairs = set()
        self.ideal: List[FlatVec] = modulo_flat or []
        self.ideal_lead = [(v[0][2], deg_exp(v[0][2]), v[0][3]) for v in self.ideal]
        self._diag_cache: dict = {}
        self._p = self.field.char

    # -- term kernels --------------------------------------------------------

    def _truncate(self, v: FlatVec) -> FlatVec:
        if self.trunc is None:
            return list(v)
        t = self.trunc
        return [term for term in v if sum(term[2]) < t]

    def _comp_key_delta(self, comp: int):
        # key(comp, e) - key(0, e) is constant in e for our additive keys
        zero = self.ring._zero_exp
        base0 = self.mkey(0, zero)
        basec = self.mkey(comp, zero)
        return tuple(x - y for x, y in zip(basec, base0))

    def _diagonal_copy(self, ideal_index: int, comp: int) -> FlatVec:
        got = self._diag_cache.get((ideal_index, comp))
        if got is None:
            delta = self._comp_key_delta(comp)
            got = [(tuple(x + y for x, y in zip(k, delta)), comp, e, c)
                   for k, _, e, c in self.ideal[ideal_index]]
            self._diag_cache[(ideal_index, comp)] = got
        return got

    def _mono_multiple(self, v: FlatVec, qexp) -> FlatVec:
        if not any(qexp):
            return list(v)
        qkey = self.shift(qexp)
        trunc = self.trunc
        out = []
        for k, comp, e, c in v:
            e2 = tuple(x + y for x, y in zip(e, qexp))
            if trunc is not None and sum(e2) >= trunc:
                continue
            out.append((tuple(x + y for x, y in zip(k, qkey)), comp, e2, c))
        return out

    def _merge_sub(self, a: FlatVec, b: FlatVec, factor) -> FlatVec:
        """a - factor * b for sorted flat vectors."""
        p = self._p
        out = []
        append = out.append
        i = j = 0
        na, nb = len(a), len(b)
        while i < na and j < nb:
            ka, kb = a[i][0], b[j][0]
            if ka > kb:
                append(a[i]); i += 1
            elif ka < kb:
                t = b[j]
                c = (-t[3] * factor % p) if p else -t[3] * factor
                if c:
                    append((t[0], t[1], t[2], c))
                j += 1
            else:
                c = ((a[i][3] - b[j][3] * factor) % p) if p \
                    else a[i][3] - b[j][3] * factor
                if c:
                    append((ka, a[i][1], a[i][2], c))
                i += 1; j += 1
        out.extend(a[i:])
        while j < nb:
            t = b[j]
            c = (-t[3] * factor % p) if p else -t[3] * factor
            if c:
                append((t[0], t[1], t[2], c))
            j += 1
        return out

    def _find_reducer(self, comp: int, exp, deg: int):
        bucket = self.by_comp.get(comp)
        if bucket is not None:
            for le, ld, idx in bucket:
                if ld <= deg and divides_exp(le, exp):
                    return self.basis[idx], self.lead[idx]
        for i, (le, ld, coeff) in enumerate(self.ideal_lead):
            if ld <= deg and divides_exp(le, exp):
                return self._diagonal_copy(i, comp), (comp, le, ld, coeff)
        return None, None

    def reduce(self, v: FlatVec) -> FlatVec:
        """Full normal form against the basis and the diagonal reducers."""
        inv = self.field.inv
        mul = self.field.mul
        out = []
        work = self._truncate(v)
        i = 0
        while i < len(work):
            key, comp, exp, c = work[i]
            red, rlead = self._find_reducer(comp, exp, sum(exp))
            if red is None:
                out.append(work[i])
                i += 1
                continue
            self.steps += 1
            if self.steps > self.budget:
                raise BudgetExceededError("Groebner step budget exhausted", self.steps)
            _, rexp, _, rcoeff = rlead
            qexp = tuple(x - y for x, y in zip(exp, rexp))
            multiple = self._mono_multiple(red, qexp)
            work = self._merge_sub(work[i:] if i else work, multiple,
                                   mul(c, inv(rcoeff)))
            i = 0
        return out

    # -- pair management -------------------------------------------------------

    def _push_pairs_for(self, new_idx: int):
        ncomp, nexp, ndeg, _ = self.lead[new_idx]
        new_single = self.single_comp[new_idx]
        mkey = self.mkey
        for exp, deg, idx in self.by_comp.get(ncomp, ()):
            if idx == new_idx:
                continue
            lcm = lcm_exp(exp, nexp)
            ldeg = deg_exp(lcm)
            if self.trunc is not None and ldeg >= self.trunc:
                continue  # boundary elements stand in for these
            if new_single and self.single_comp[idx] and coprime_exp(exp, nexp):
                continue  # product criterion, valid in the single-component case
            heapq.heappush(self.pairs,
                           (ldeg, mkey(ncomp, lcm), idx, new_idx, -1))
        for j, (iexp, ideg, _) in enumerate(self.ideal_lead):
            lcm = lcm_exp(iexp, nexp)
            ldeg = deg_exp(lcm)
            if self.trunc is not None and ldeg >= self.trunc:
                continue
            if new_single and coprime_exp(iexp, nexp):
                continue
            heapq.heappush(self.pairs,
                           (ldeg, mkey(ncomp, lcm), new_idx, new_idx, j))
        if self.trunc is not None:
            self._maybe_push_boundary(new_idx)

    def _maybe_push_boundary(self, idx: int):
        comp, exp, deg, _ = self.lead[idx]
        if all(sum(t[2]) == deg for t in self.basis[idx]):
            return  # homogeneous: every boundary multiple truncates to zero
        gap = self.trunc - deg
        count = math.comb(gap + self.ring.nvars - 1, self.ring.nvars - 1)
        if count > 200_000:
            raise BudgetExceededError(
                f"truncation boundary blow-up ({count} multiples of degree {gap})")
        heapq.heappush(self.pairs, (self.trunc, self.mkey(comp, exp), idx, idx, -2))

    def _boundary_elements(self, idx: int):
        v = self.basis[idx]
        comp, exp, deg, _ = self.lead[idx]
        low = [t for t in v if sum(t[2]) < deg]
        if not low:
            return
        trunc = self.trunc
        shift = self.shift
        for mult in _compositions(trunc - deg, self.ring.nvars):
            qkey = shift(mult)
            shifted = []
            for k, cm, e, cc in low:
                e2 = tuple(x + y for x, y in zip(e, mult))
                if sum(e2) < trunc:
                    shifted.append((tuple(x + y for x, y in zip(k, qkey)), cm, e2, cc))
            if shifted:
                shifted.sort(reverse=True)
                yield shifted

    def add_generator(self, v: FlatVec) -> Optional[int]:
        r = self.reduce(v)
        if not r:
            return None
        key, comp, exp, c = r[0]
        idx = len(self.basis)
        self.basis.append(r)
        self.lead.append((comp, exp, sum(exp), c))
        self.single_comp.append(all(t[1] == comp for t in r))
        self.by_comp.setdefault(comp, []).append((exp, sum(exp), idx))
        self._push_pairs_for(idx)
        return idx

    def _chain_skip(self, i: int, j: int, comp: int, lcm) -> bool:
        for le, ld, idx in self.by_comp.get(comp, ()):
            if idx == i or idx == j:
                continue
            if divides_exp(le, lcm):
                a = (i, idx) if i < idx else (idx, i)
                b = (j, idx) if j < idx else (idx, j)
                if a in self.done_pairs and b in self.done_pairs:
                    return True
        return False

    def _step(self):
        self.steps += 1
        if self.steps > self.budget:
            raise BudgetExceededError("Groebner step budget exhausted", self.steps)

    def run(self):
        mul = self.field.mul
        inv = self.field.inv
        while self.pairs:
            ldeg, lkey, i, j, kind = heapq.heappop(self.pairs)
            if kind == -2:
                for elt in self._boundary_elements(i):
                    self._step()
                    self.add_generator(elt)
                continue
            if kind == -1:
                ci, ei, di, cci = self.lead[i]
                cj, ej, dj, ccj = self.lead[j]
                lcm = lcm_exp(ei, ej)
                pair_id = (i, j) if i < j else (j, i)
                if self._chain_skip(i, j, ci, lcm):
                    self.done_pairs.add(pair_id)
                    continue
                self.done_pairs.add(pair_id)
                a = self._mono_multiple(self.basis[i],
                                        tuple(x - y for x, y in zip(lcm, ei)))
                b = self._mono_multiple(self.basis[j],
                                        tuple(x - y for x, y in zip(lcm, ej)))
                spoly = self._merge_sub(a, b, mul(cci, inv(ccj)))
            else:
                ci, ei, di, cci = self.lead[i]
                iexp, ideg, icoeff = self.ideal_lead[kind]
                lcm = lcm_exp(ei, iexp)
                a = self._mono_multiple(self.basis[i],
                                        tuple(x - y for x, y in zip(lcm, ei)))
                b = self._mono_multiple(self._diagonal_copy(kind, ci),
                                        tuple(x - y for x, y in zip(lcm, iexp)))
                spoly = self._merge_sub(a, b, mul(cci, inv(icoeff)))
            self._step()
            self.add_generator(spoly)

    # -- final interreduction --------------------------------------------------

    def reduced_basis(self) -> List[FlatVec]:
        alive = []
        for idx in range(len(self.basis)):
            comp, exp, deg, _ = self.lead[idx]
            dominated = False
            for le, ld, odx in self.by_comp.get(comp, ()):
                if odx != idx and divides_exp(le, exp) and (le != exp or odx < idx):
                    dominated = True
                    break
            if not dominated:
                for le, ld, _ in self.ideal_lead:
                    if divides_exp(le, exp):
                        dominated = True
                        break
            if not dominated:
                alive.append(idx)
        survivors = [self.basis[idx] for idx in alive]
        leads = [self.lead[idx] for idx in alive]
        self.basis = []
        self.lead = []
        self.single_comp = []
        self.by_comp = {}
        self.pairs = []
        self.done_pairs = set()
        for v, ld in zip(survivors, leads):
            idx = len(self.basis)
            self.basis.append(v)
            self.lead.append(ld)
            self.single_comp.append(all(t[1] == ld[0] for t in v))
            self.by_comp.setdefault(ld[0], []).append((ld[1], ld[2], idx))
        inv = self.field.inv
        p = self._p
        out = []
        for idx in range(len(self.basis)):
            v = self.basis[idx]
            comp, exp, deg, c = self.lead[idx]
            bucket = self.by_comp[comp]
            self.by_comp[comp] = [t for t in bucket if t[2] != idx]
            tail = self.reduce(v[1:])
            self.by_comp[comp] = bucket
            w = [v[0]] + tail
            lc = inv(c)
            if p:
                w = [(k, cm, e, cc * lc % p) for k, cm, e, cc in w]
            else:
                w = [(k, cm, e, cc * lc) for k, cm, e, cc in w]
            self.basis[idx] = w
            out.append(w)
        order = sorted(range(len(out)), key=lambda t: out[t][0][0], reverse=True)
        return [out[t] for t in order]


# ---------------------------------------------------------------------------
# public objects


class Ideal:
    """Finitely generated ideal, optionally taken modulo another ideal.

    ``modulo`` (when present) means the object stands for I + modulo, i.e.
    the induced ideal of the quotient ring R/modulo; Groebner data then uses
    the modulo ideal's basis as diagonal reducers.
    """

    def __init__(self, ring: PolyRing, generators: Sequence[Polynomial],
                 modulo: Optional["Ideal"] = None):
        self.ring = ring
        self.generators = tuple(g for g in generators if not g.is_zero())
        self.modulo = modulo
        self._gb_cache: Dict[MonomialOrder, "GroebnerBasis"] = {}

    @property
    def rank(self):
        return None

    def groebner_basis(self, order: Optional[MonomialOrder] = None,
                       budget: Optional[int] = None) -> "GroebnerBasis":
        return buchberger(self, order=order, budget=budget)

    def __repr__(self):
        gens = ", ".join(str(g) for g in self.generators) or "0"
        return f"Ideal({gens})"


class Submodule:
    """Finitely generated submodule of R^rank, optionally modulo an ideal."""

    def __init__(self, ring: PolyRing, rank: int,
                 generators: Sequence[FreeModuleElement],
                 modulo: Optional[Ideal] = None):
        for g in generators:
            if g.rank != rank:
                raise RingMismatchError(f"generator rank {g.rank} != ambient {rank}")
        self.ring = ring
        self.rank = rank
        self.generators = tuple(g for g in generators if not g.is_zero())
        self.modulo = modulo
        self._gb_cache: Dict[MonomialOrder, "GroebnerBasis"] = {}

    @classmethod
    def from_columns(cls, ring: PolyRing, columns: Sequence[Sequence[Polynomial]],
                     modulo: Optional[Ideal] = None) -> "Submodule":
        rank = len(columns[0]) if columns else 1
        gens = [FreeModuleElement.from_list(ring, list(col)) for col in columns]
        return cls(ring, rank, gens, modulo)

    def groebner_basis(self, order: Optional[MonomialOrder] = None,
                       budget: Optional[int] = None) -> "GroebnerBasis":
        return buchberger(self, order=order, budget=budget)

    def __repr__(self):
        return f"Submodule(rank={self.rank}, gens={len(self.generators)})"


class GroebnerBasis:
    """Reduced Groebner basis with its order and leading data."""

    def __init__(self, ring: PolyRing, rank: Optional[int], order: MonomialOrder,
                 elements: Sequence, flat: List[FlatVec],
                 modulo_gb: Optional["GroebnerBasis"] = None):
        self.ring = ring
        self.rank = rank
        self.order = order
        self.elements = tuple(elements)
        self._flat = flat
        self.modulo_gb = modulo_gb
        self.mkey, self.shift = order.module_key_function(ring.nvars)
        self._nf_engine: Optional[FlatGB] = None

    def leading_exponents(self) -> List[Tuple[int, tuple]]:
        return [(v[0][1], v[0][2]) for v in self._flat]

    def modulo_lead_exponents(self) -> List[tuple]:
        if self.modulo_gb is None:
            return []
        return [e for _, e in self.modulo_gb.leading_exponents()]

    def _engine(self) -> FlatGB:
        if self._nf_engine is None:
            eng = FlatGB(self.ring, self.rank or 1, self.order,
                         modulo_flat=self.modulo_gb._flat if self.modulo_gb else None)
            for v in self._flat:
                idx = len(eng.basis)
                head = v[0]
                eng.basis.append(list(v))
                eng.lead.append((head[1], head[2], sum(head[2]), head[3]))
                eng.single_comp.append(all(t[1] == head[1] for t in v))
                eng.by_comp.setdefault(head[1], []).append(
                    (head[2], sum(head[2]), idx))
            self._nf_engine = eng
        self._nf_engine.steps = 0
        return self._nf_engine

    def normal_form(self, v: Union[Polynomial, FreeModuleElement]):
        if isinstance(v, Polynomial):
            if self.rank is not None:
                raise RingMismatchError("polynomial against a module basis")
            if v.ring.variables != self.ring.variables or v.ring.field != self.ring.field:
                raise RingMismatchError("different rings")
            flat = _flatten_poly(v, self.mkey)
        elif isinstance(v, FreeModuleElement):
            if self.rank is None or v.rank != self.rank:
                raise RingMismatchError(f"rank {v.rank} against basis rank {self.rank}")
            if v.ring.variables != self.ring.variables or v.ring.field != self.ring.field:
                raise RingMismatchError("different rings")
            flat = _flatten_vec(v, self.mkey)
        else:
            raise TypeError(f"cannot reduce {type(v)!r}")
        return _unflatten(self.ring, self.rank, self._engine().reduce(flat))

    def contains(self, v) -> bool:
        return self.normal_form(v).is_zero()

    def is_unit(self) -> bool:
        zero = self.ring._zero_exp
        return any(e == zero for _, e in self.leading_exponents())

    def __eq__(self, other):
        if not isinstance(other, GroebnerBasis):
            return NotImplemented
        return (self.order == other.order and self.rank == other.rank
                and self.elements == other.elements)

    def __hash__(self):
        return hash((self.order, self.rank, self.elements))

    def __repr__(self):
        return f"GroebnerBasis({len(self.elements)} elements, {self.order})"


def buchberger(obj: Union[Ideal, Submodule], order: Optional[MonomialOrder] = None,
               budget: Optional[int] = None,
               trunc: Optional[int] = None) -> GroebnerBasis:
    """Reduced Groebner basis of an ideal or submodule.

    Deterministic for a fixed input and order; cached on the object (except
    truncated runs, which depend on the truncation level).
    """
    if order is None:
        order = obj.ring.order
    if trunc is None and order in obj._gb_cache:
        return obj._gb_cache[order]
    modulo_gb = None
    if obj.modulo is not None:
        modulo_gb = buchberger(obj.modulo, order=order, budget=budget)
    rank = obj.rank
    eng = FlatGB(obj.ring, rank or 1, order,
                 modulo_flat=modulo_gb._flat if modulo_gb else None,
                 trunc=trunc, budget=budget)
    mkey = eng.mkey
    flats = []
    for g in obj.generators:
        if isinstance(g, Polynomial):
            flats.append(_flatten_poly(g, mkey))
        else:
            flats.append(_flatten_vec(g, mkey))
    flats.sort(key=lambda v: (v[0][0], len(v)) if v else ((), 0))
    for f in flats:
        eng.add_generator(f)
    eng.run()
    reduced = eng.reduced_basis()
    elements = [_unflatten(obj.ring, rank, v) for v in reduced]
    gb = GroebnerBasis(obj.ring, rank, order, elements, reduced, modulo_gb)
    if trunc is None:
        obj._gb_cache[order] = gb
    return gb


def normal_form(v, gb: GroebnerBasis):
    """Remainder of v against gb; zero iff v lies in the ideal/module."""
    return gb.normal_form(v)


# ---------------------------------------------------------------------------
# staircase counting


def _minimalize(exps: Sequence[tuple]) -> List[tuple]:
    exps = sorted(set(exps), key=lambda e: (deg_exp(e), e))
    out = []
    for e in exps:
        if not any(divides_exp(f, e) for f in out):
            out.append(e)
    return out


def _poly_mul(a: List[int], b: List[int]) -> List[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return out


def _hilbert_numerator(exps: List[tuple], cache: dict) -> List[int]:
    """Numerator K(t) with HS(R/monomial module) = K(t)/(1-t)^nvars."""
    exps = _minimalize(exps)
    key = tuple(exps)
    got = cache.get(key)
    if got is not None:
        return got
    if not exps:
        result = [1]
    elif any(deg_exp(e) == 0 for e in exps):
        result = [0]
    elif all(sum(1 for x in e if x) == 1 for e in exps):
        # pure powers of distinct variables
        result = [1]
        for e in exps:
            d = deg_exp(e)
            result = _poly_mul(result, [1] + [0] * (d - 1) + [-1])
    else:
        nvars = len(exps[0])
        counts = [sum(1 for e in exps if e[i]) for i in range(nvars)]
        var = max(range(nvars), key=lambda i: counts[i])
        powers = sorted(e[var] for e in exps if e[var])
        a = powers[len(powers) // 2]
        pivot = tuple(a if i == var else 0 for i in range(nvars))
        plus = _hilbert_numerator(exps + [pivot], cache)
        colon = [tuple(max(x - a, 0) if i == var else x for i, x in enumerate(e))
                 for e in exps]
        quot = _hilbert_numerator(colon, cache)
        shifted = [0] * a + quot
        result = [x + y for x, y in itertools.zip_longest(plus, shifted, fillvalue=0)]
    cache[key] = result
    return result


def _series_coeffs(numer: List[int], nvars: int, upto: int) -> List[int]:
    """First `upto` coefficients of numer(t) / (1-t)^nvars."""
    coeffs = list(numer[:upto]) + [0] * max(0, upto - len(numer))
    for _ in range(nvars):
        total = 0
        for i in range(upto):
            total += coeffs[i]
            coeffs[i] = total
    return coeffs


def _staircase_is_finite(exps: Sequence[tuple], nvars: int) -> bool:
    for i in range(nvars):
        if not any(e[i] and all(x == 0 for j, x in enumerate(e) if j != i)
                   for e in exps):
            return False
    return True


def _finite_count(exps: List[tuple], nvars: int, cache: dict) -> int:
    coeffs = _hilbert_numerator(exps, cache)
    for _ in range(nvars):
        # divide by (1 - t): quotient = prefix sums, remainder = K(1)
        q = []
        acc = 0
        for c in coeffs:
            acc += c
            q.append(acc)
        if q and q[-1] != 0:
            raise ArithmeticError("staircase is not finite")
        coeffs = q[:-1] if len(q) > 1 else [0]
    return sum(coeffs)


def _per_component_leads(gb: GroebnerBasis):
    per_comp: Dict[int, List[tuple]] = {}
    for comp, e in gb.leading_exponents():
        per_comp.setdefault(comp, []).append(e)
    return per_comp


def quotient_vdim(gb: GroebnerBasis):
    """k-dimension of the quotient by the leading module.

    Returns the exact count, or ``"infinite"`` when some variable direction
    is unbounded in some component.
    """
    nvars = gb.ring.nvars
    shared = gb.modulo_lead_exponents()
    per_comp = _per_component_leads(gb)
    comps = [0] if gb.rank is None else range(gb.rank)
    cache: dict = {}
    count_cache: dict = {}
    total = 0
    for comp in comps:
        exps = _minimalize(per_comp.get(comp, []) + list(shared))
        key = tuple(exps)
        got = count_cache.get(key)
        if got is None:
            if not _staircase_is_finite(exps, nvars):
                return INFINITE
            got = _finite_count(list(exps), nvars, cache)
            count_cache[key] = got
        total += got
    return total


def truncated_vdim(gb: GroebnerBasis, k: int) -> int:
    """Standard-monomial count below ring degree k, i.e. the k-dimension of
    the quotient by (leading module + m^k * ambient)."""
    if k <= 0:
        return 0
    nvars = gb.ring.nvars
    shared = gb.modulo_lead_exponents()
    per_comp = _per_component_leads(gb)
    comps = [0] if gb.rank is None else range(gb.rank)
    cache: dict = {}
    count_cache: dict = {}
    total = 0
    for comp in comps:
        exps = tuple(_minimalize(per_comp.get(comp, []) + list(shared)))
        got = count_cache.get(exps)
        if got is None:
            numer = _hilbert_numerator(list(exps), cache)
            got = sum(_series_coeffs(numer, nvars, k))
            count_cache[exps] = got
        total += got
    return total


# ---------------------------------------------------------------------------
# Krull dimension and elimination


def krull_dim(gb: GroebnerBasis):
    """Krull dimension of the quotient ring, computed as the largest size of
    a variable subset meeting no lead-monomial support.

    The unit ideal reports -1; callers attach the warning.
    """
    if gb.rank is not None:
        raise RingMismatchError("krull_dim expects an ideal basis")
    nvars = gb.ring.nvars
    exps = [e for _, e in gb.leading_exponents()] + gb.modulo_lead_exponents()
    supports = _minimalize([tuple(1 if x else 0 for x in e) for e in exps])
    if any(deg_exp(s) == 0 for s in supports):
        return -1
    best = [nvars]

    def search(removed: frozenset, nremoved: int):
        if nremoved >= best[0]:
            return
        uncovered = None
        for s in supports:
            if not any(s[v] for v in removed):
                uncovered = s
                break
        if uncovered is None:
            best[0] = nremoved
            return
        for v in range(nvars):
            if uncovered[v]:
                search(removed | {v}, nremoved + 1)

    search(frozenset(), 0)
    return nvars - best[0]


def eliminate(ideal: Ideal, drop_vars: Sequence[str],
              budget: Optional[int] = None) -> Ideal:
    """Contraction of the ideal to the subring on the remaining variables,
    via a block order eliminating ``drop_vars``."""
    unknown = set(drop_vars) - set(ideal.ring.variables)
    if unknown:
        raise KeyError(f"unknown variables {sorted(unknown)}")
    drop = [v for v in ideal.ring.variables if v in set(drop_vars)]
    if not drop:
        return Ideal(ideal.ring, ideal.generators, ideal.modulo)
    if ideal.modulo is not None:
        merged = Ideal(ideal.ring,
                       tuple(ideal.generators) + tuple(ideal.modulo.generators))
        return eliminate(merged, drop_vars, budget)
    ring = ideal.ring
    keep = [v for v in ring.variables if v not in set(drop)]
    from .orders import elimination_order
    work_ring = ring.with_variables(tuple(drop) + tuple(keep),
                                    elimination_order(len(drop)))
    perm = [ring.var_index[v] for v in work_ring.variables]
    work_gens = [work_ring.from_terms([(tuple(e[i] for i in perm), c)
                                       for _, e, c in g.terms])
                 for g in ideal.generators]
    gb = buchberger(Ideal(work_ring, work_gens), budget=budget)
    target = ring.restricted(keep)
    back = [work_ring.var_index[v] for v in target.variables]
    ndrop = len(drop)
    kept = []
    for g in gb.elements:
        if all(all(e[i] == 0 for i in range(ndrop)) for _, e, c in g.terms):
            kept.append(target.from_terms([(tuple(e[i] for i in back), c)
                                           for _, e, c in g.terms]))
    return Ideal(target, kept)
