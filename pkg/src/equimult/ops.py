"""Ideal and module operations the invariants are built from.

Quotient-ring semantics: an ``Ideal``/``Submodule`` carrying ``modulo=I``
stands for its sum with I (resp. I times the ambient free module), so every
operation here is an operation over R/I.  All constructions preserve the
``modulo`` field.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .config import DEFAULT_REDRAWS, DEFAULT_REES_RANK_CAP
from .errors import BudgetExceededError, GenericityError, ZeroInputError
from .groebner import (FlatGB, GroebnerBasis, Ideal, Submodule, _flatten_poly,
                       _flatten_vec, _unflatten, buchberger, normal_form)
from .orders import MonomialOrder, TERM_OVER_POSITION
from .ring import FreeModuleElement, Polynomial, PolyRing

ModLike = Union[Ideal, Submodule]


# ---------------------------------------------------------------------------
# seeded generic choices


class GenericSeed:
    """Deterministic stream of nonzero field elements; every draw is logged."""

    def __init__(self, seed: int):
        self.seed = int(seed)
        self._rng = random.Random(self.seed)
        self.draws: List[object] = []

    def draw(self, fld):
        if fld.char:
            v = self._rng.randrange(1, fld.char)
        else:
            v = Fraction(self._rng.randrange(1, 1 << 16))
        self.draws.append(v)
        return v

    def draw_count(self) -> int:
        return len(self.draws)

    def __repr__(self):
        return f"GenericSeed({self.seed}, {len(self.draws)} draws)"


def generic_combination(gens: Sequence, count: int, seed: GenericSeed) -> list:
    """``count`` random-coefficient combinations of ``gens`` drawn from the
    seeded stream.  Callers validate genericity and may redraw."""
    if count < 0:
        raise ValueError("count must be nonnegative")
    if not gens and count:
        raise ZeroInputError("no generators to combine")
    out = []
    for _ in range(count):
        combo = None
        for g in gens:
            c = seed.draw(g.ring.field if isinstance(g, Polynomial) else g.ring.field)
            piece = g.scale(c)
            combo = piece if combo is None else combo + piece
        out.append(combo)
    return out


# ---------------------------------------------------------------------------
# helpers shared by the constructions


def _as_columns(obj: ModLike) -> Tuple[int, List[FreeModuleElement]]:
    """View an ideal as a rank-1 module; modules pass through."""
    if isinstance(obj, Ideal):
        ring = obj.ring
        gens = [FreeModuleElement(ring, 1, {0: g}) for g in obj.generators]
        return 1, gens
    return obj.rank, list(obj.generators)


def _same_kind(template: ModLike, ring: PolyRing, rank: int,
               gens: List[FreeModuleElement], modulo) -> ModLike:
    if isinstance(template, Ideal):
        return Ideal(ring, [v.entry(0) for v in gens], modulo)
    return Submodule(ring, rank, gens, modulo)


def module_sum(a: ModLike, b: ModLike) -> ModLike:
    if isinstance(a, Ideal):
        return Ideal(a.ring, tuple(a.generators) + tuple(b.generators), a.modulo)
    return Submodule(a.ring, a.rank, tuple(a.generators) + tuple(b.generators),
                     a.modulo)


def module_scale(f: Polynomial, a: ModLike) -> ModLike:
    if isinstance(a, Ideal):
        return Ideal(a.ring, [f * g for g in a.generators], a.modulo)
    return Submodule(a.ring, a.rank, [f * g for g in a.generators], a.modulo)


def ideal_times_module(J: Ideal, a: ModLike) -> ModLike:
    gens = []
    if isinstance(a, Ideal):
        for j in J.generators:
            gens.extend(j * g for g in a.generators)
        return Ideal(a.ring, gens, a.modulo)
    for j in J.generators:
        gens.extend(j * g for g in a.generators)
    return Submodule(a.ring, a.rank, gens, a.modulo)


def contains(outer: ModLike, inner: ModLike, budget=None) -> bool:
    gb = buchberger(outer, budget=budget)
    return all(gb.normal_form(g).is_zero() for g in inner.generators)


def modules_equal(a: ModLike, b: ModLike, budget=None) -> bool:
    return contains(a, b, budget) and contains(b, a, budget)


# ---------------------------------------------------------------------------
# colon and saturation


def colon(M: ModLike, f: Polynomial, budget=None) -> ModLike:
    """{v in ambient : f*v in M}, the transporter of f into M.

    Realizes M : f as (M ∩ f·ambient)/f through one kernel-style Groebner
    run: track, for each candidate v, the combination f·v - (element of M)
    in a second block of components and read the result off the elements
    whose first block vanished.
    """
    if f.is_zero():
        raise ZeroInputError("colon by zero")
    rank, gens = _as_columns(M)
    ring = M.ring
    ext_rank = 2 * rank
    ext_gens = []
    for g in gens:
        ext_gens.append(FreeModuleElement(ring, ext_rank, dict(g.entries)))
    for alpha in range(rank):
        ext_gens.append(FreeModuleElement(
            ring, ext_rank, {alpha: f, rank + alpha: ring.one}))
    ext = Submodule(ring, ext_rank, ext_gens, M.modulo)
    gb = buchberger(ext, budget=budget)
    out = []
    for v in gb.elements:
        if all(i >= rank for i in v.entries):
            out.append(FreeModuleElement(
                ring, rank, {i - rank: p for i, p in v.entries.items()}))
    return _same_kind(M, ring, rank, out, M.modulo)


def saturate(M: ModLike, J: Ideal, budget=None) -> Tuple[ModLike, int]:
    """(M : J^infinity) together with the number of strict colon steps.

    Full passes over J's generators are iterated until a pass is a no-op;
    stabilization of each single-generator chain is certified by Groebner
    membership of two consecutive iterates.
    """
    if not J.generators:
        raise ZeroInputError("saturation by the zero ideal")
    current = M
    exponent = 0
    while True:
        grew = False
        for f in J.generators:
            while True:
                nxt = colon(current, f, budget)
                if contains(current, nxt, budget):
                    break
                current = nxt
                exponent += 1
                grew = True
        if not grew:
            return current, exponent


def intersect(M1: ModLike, M2: ModLike, budget=None) -> ModLike:
    """M1 ∩ M2 via the tag construction s·M1 + (1-s)·M2, eliminating s."""
    ring = M1.ring
    rank1, gens1 = _as_columns(M1)
    rank2, gens2 = _as_columns(M2)
    if rank1 != rank2:
        raise ZeroInputError("intersection needs a common ambient")
    order = MonomialOrder("block", split=1, inner=("degrevlex", "degrevlex"),
                          module_extension=TERM_OVER_POSITION)
    tag = "_s"
    while tag in ring.var_index:
        tag += "_"
    ext_ring = ring.with_variables((tag,) + ring.variables, order)

    def move_poly(p: Polynomial, s_extra: int = 0) -> Polynomial:
        return ext_ring.from_terms([((s_extra,) + e, c) for _, e, c in p.terms])

    def move_vec(v: FreeModuleElement, s_extra: int = 0) -> FreeModuleElement:
        return FreeModuleElement(ext_ring, rank1,
                                 {i: move_poly(p, s_extra)
                                  for i, p in v.entries.items()})

    ext_gens = []
    for g in gens1:
        ext_gens.append(move_vec(g, 1))
    for g in gens2:
        ext_gens.append(move_vec(g, 0) - move_vec(g, 1))
    modulo_ext = None
    if M1.modulo is not None:
        base_gb = buchberger(M1.modulo)
        modulo_ext = Ideal(ext_ring, [move_poly(p) for p in base_gb.elements])
    ext = Submodule(ext_ring, rank1, ext_gens, modulo_ext)
    gb = buchberger(ext, order=order, budget=budget)
    out = []
    for v in gb.elements:
        flat_ok = all(all(e[0] == 0 for _, e, c in p.terms)
                      for p in v.entries.values())
        if flat_ok:
            out.append(FreeModuleElement(
                ring, rank1,
                {i: ring.from_terms([(e[1:], c) for _, e, c in p.terms])
                 for i, p in v.entries.items()}))
    return _same_kind(M1, ring, rank1, out, M1.modulo)


# ---------------------------------------------------------------------------
# symmetric (Rees) powers


@dataclass
class ReesPower:
    """Degree-n piece of the subalgebra of Sym(R^p) generated by a module.

    ``components`` indexes the ambient Sym^n(R^p) basis by degree-n exponent
    multisets over the p ambient symbols.
    """

    base: Submodule
    degree: int
    components: Tuple[tuple, ...]
    submodule: Submodule

    @property
    def ambient_rank(self) -> int:
        return len(self.components)


def _sym_components(p: int, n: int) -> List[tuple]:
    out = []

    def rec(prefix, remaining, slots):
        if slots == 1:
            out.append(prefix + (remaining,))
            return
        for v in range(remaining, -1, -1):
            rec(prefix + (v,), remaining - v, slots - 1)

    rec((), n, p)
    return out


def _autoreduce(sub: Submodule, budget=None) -> List[FreeModuleElement]:
    """Mutual reduction of a generating list (no S-pairs)."""
    modulo_gb = buchberger(sub.modulo) if sub.modulo is not None else None
    eng = FlatGB(sub.ring, sub.rank, sub.ring.order,
                 modulo_flat=modulo_gb._flat if modulo_gb else None,
                 budget=budget)
    flats = [_flatten_vec(g, eng.mkey) for g in sub.generators]
    flats.sort(key=lambda v: v[0][0])
    kept = []
    for fv in flats:
        r = eng.reduce(fv)
        if r:
            idx = len(eng.basis)
            head = r[0]
            eng.basis.append(r)
            eng.lead.append((head[1], head[2], sum(head[2]), head[3]))
            eng.single_comp.append(True)
            eng.by_comp.setdefault(head[1], []).append((head[2], sum(head[2]), idx))
            kept.append(_unflatten(sub.ring, sub.rank, r))
    return kept


def rees_power(M: ModLike, n: int, budget=None,
               rank_cap: int = DEFAULT_REES_RANK_CAP) -> ReesPower:
    """All degree-n products of the generators, expanded in the multiset
    basis of Sym^n and interreduced.  rees_power(M, 1) is M itself."""
    if n < 1:
        raise ValueError("symmetric power degree must be >= 1")
    rank, gens = _as_columns(M)
    base = M if isinstance(M, Submodule) else Submodule(M.ring, 1, gens, M.modulo)
    ring = M.ring
    comps = _sym_components(rank, n)
    if len(comps) > rank_cap:
        raise BudgetExceededError(
            f"Sym^{n} ambient rank {len(comps)} exceeds cap {rank_cap}")
    if math.comb(len(gens) + n - 1, n) > rank_cap:
        raise BudgetExceededError(f"Sym^{n} generator count exceeds cap")
    comp_index = {c: i for i, c in enumerate(comps)}
    if n == 1:
        sub = Submodule(ring, rank, gens, M.modulo)
        return ReesPower(base, 1, tuple(comps), sub)

    # work in R[E_1..E_p]: a column becomes the linear form sum(entry * E_a),
    # and a degree-n product of columns expands into the multiset basis
    enames = []
    for a in range(rank):
        name = f"_e{a}"
        while name in ring.var_index:
            name += "_"
        enames.append(name)
    ext_ring = ring.with_variables(ring.variables + tuple(enames))
    nv = ring.nvars

    def to_linear(v: FreeModuleElement) -> Polynomial:
        pairs = []
        for a, p in v.entries.items():
            for _, e, c in p.terms:
                pairs.append((e + tuple(1 if i == a else 0 for i in range(rank)), c))
        return ext_ring.from_terms(pairs)

    modulo_gb = None
    reducer = None
    if M.modulo is not None:
        mgb = buchberger(M.modulo)
        ext_modulo = Ideal(ext_ring, [
            ext_ring.from_terms([(e + (0,) * rank, c) for _, e, c in p.terms])
            for p in mgb.elements])
        modulo_gb = buchberger(ext_modulo)
        reducer = modulo_gb

    linear = [to_linear(g) for g in gens]
    level: Dict[tuple, Polynomial] = {(): ext_ring.one}
    for _ in range(n):
        nxt: Dict[tuple, Polynomial] = {}
        for multiset, poly in level.items():
            start = multiset[-1] if multiset else 0
            for j in range(start, len(linear)):
                key = multiset + (j,)
                prod = poly * linear[j]
                if reducer is not None:
                    prod = reducer.normal_form(prod)
                if not prod.is_zero():
                    nxt[key] = prod
        level = nxt

    columns = []
    for multiset in sorted(level):
        poly = level[multiset]
        entries: Dict[int, list] = {}
        for _, e, c in poly.terms:
            comp = comp_index[tuple(e[nv:])]
            entries.setdefault(comp, []).append((e[:nv], c))
        vec = FreeModuleElement(ring, len(comps),
                                {i: ring.from_terms(pairs)
                                 for i, pairs in entries.items()})
        if not vec.is_zero():
            columns.append(vec)
    sub = Submodule(ring, len(comps), columns, M.modulo)
    reduced = _autoreduce(sub, budget)
    sub = Submodule(ring, len(comps), reduced, M.modulo)
    return ReesPower(base, n, tuple(comps), sub)


def free_power(rank: int, n: int, ring: PolyRing, modulo=None) -> Submodule:
    """Sym^n of the full free module R^rank: all multiset basis vectors."""
    comps = _sym_components(rank, n)
    gens = [FreeModuleElement(ring, len(comps), {i: ring.one})
            for i in range(len(comps))]
    return Submodule(ring, len(comps), gens, modulo)


# ---------------------------------------------------------------------------
# generic rank and the rank-e re-embedding


def _determinant(rows: List[List[Polynomial]], ring: PolyRing) -> Polynomial:
    n = len(rows)
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    det = ring.zero
    for j in range(n):
        entry = rows[0][j]
        if entry.is_zero():
            continue
        minor = [[row[k] for k in range(n) if k != j] for row in rows[1:]]
        term = entry * _determinant(minor, ring)
        det = det + term if j % 2 == 0 else det - term
    return det


def module_rank(M: ModLike, variety: Ideal, budget=None) -> int:
    """Generic rank over the variety: the largest t with some t x t minor of
    the generator matrix nonzero modulo the variety's (radical) ideal."""
    rank, gens = _as_columns(M)
    if not gens:
        return 0
    ring = M.ring
    vgb = buchberger(variety, budget=budget)
    matrix = [[vgb.normal_form(g.entry(i)) for g in gens] for i in range(rank)]
    import itertools as _it
    for t in range(min(rank, len(gens)), 0, -1):
        for rows in _it.combinations(range(rank), t):
            for cols in _it.combinations(range(len(gens)), t):
                sub = [[matrix[i][j] for j in cols] for i in rows]
                det = _determinant(sub, ring)
                if det.is_zero():
                    continue
                if not vgb.normal_form(det).is_zero():
                    return t
    return 0


def _coefficient_ideal(W_gens: List[FreeModuleElement],
                       targets: List[FreeModuleElement], ring: PolyRing,
                       rank: int, modulo, budget=None) -> Ideal:
    """{h in R : h * target_j in <W> for every j}, via one kernel run with a
    block of ambient copies (one per target) plus a tracking slot."""
    g = len(targets)
    ext_rank = rank * g + 1
    ext_gens = []
    for j in range(g):
        for w in W_gens:
            ext_gens.append(FreeModuleElement(
                ring, ext_rank,
                {j * rank + i: p for i, p in w.entries.items()}))
    entries: Dict[int, Polynomial] = {}
    for j, v in enumerate(targets):
        for i, p in v.entries.items():
            entries[j * rank + i] = p
    entries[ext_rank - 1] = ring.one
    ext_gens.append(FreeModuleElement(ring, ext_rank, entries))
    ext = Submodule(ring, ext_rank, ext_gens, modulo)
    gb = buchberger(ext, budget=budget)
    out = []
    for v in gb.elements:
        if set(v.entries) == {ext_rank - 1}:
            out.append(v.entry(ext_rank - 1))
    return Ideal(ring, out, modulo)


def lift_coordinates(W_gens: List[FreeModuleElement], target: FreeModuleElement,
                     ring: PolyRing, rank: int, modulo,
                     budget=None) -> Optional[List[Polynomial]]:
    """Coefficients c with target = sum c_i * W_i (modulo the ring ideal),
    or None when target does not lie in <W>."""
    e = len(W_gens)
    ext_rank = rank + e
    ext_gens = []
    for i, w in enumerate(W_gens):
        entries = dict(w.entries)
        entries[rank + i] = ring.one
        ext_gens.append(FreeModuleElement(ring, ext_rank, entries))
    ext = Submodule(ring, ext_rank, ext_gens, modulo)
    gb = buchberger(ext, budget=budget)
    probe = FreeModuleElement(ring, ext_rank, dict(target.entries))
    nf = gb.normal_form(probe)
    if any(i < rank for i in nf.entries):
        return None
    return [-nf.entry(rank + i) for i in range(e)]


@dataclass
class FreeEmbedding:
    """A rank-e free overmodule presentation of a module of generic rank e.

    The abstract basis is w_i / h; ``coordinates`` re-expresses the original
    generators inside R^e with respect to that basis.
    """

    basis: List[FreeModuleElement]
    scaling: Polynomial
    coordinates: Submodule
    seed: int
    redraws: int


def free_overmodule(M: Submodule, e: int, variety: Ideal, seed: GenericSeed,
                    components: Optional[List[Ideal]] = None,
                    redraws: int = DEFAULT_REDRAWS,
                    budget=None) -> FreeEmbedding:
    """Embed a generic-rank-e module into a free module of rank e.

    Draw e generic combinations w of the generators, find a scaling h in
    (<w> : M) that avoids every minimal component of the variety, and express
    h * (each generator) in terms of w.
    """
    rank, gens = _as_columns(M)
    ring = M.ring
    comps = components if components is not None else [variety]
    comp_gbs = [buchberger(c, budget=budget) for c in comps]
    last_error = None
    for attempt in range(redraws):
        w = generic_combination(gens, e, seed)
        W = Submodule(ring, rank, w, M.modulo)
        if module_rank(W, variety, budget=budget) != e:
            last_error = "degenerate generic combination"
            continue
        cid = _coefficient_ideal(w, gens, ring, rank, M.modulo, budget)
        h = None
        for cand in sorted(cid.generators, key=lambda p: (p.total_degree(), str(p))):
            if all(not g.normal_form(cand).is_zero() for g in comp_gbs):
                h = cand
                break
        if h is None and cid.generators:
            for _ in range(redraws):
                cand = generic_combination(list(cid.generators), 1, seed)[0]
                if all(not g.normal_form(cand).is_zero() for g in comp_gbs):
                    h = cand
                    break
        if h is None:
            last_error = "no scaling element off the variety"
            continue
        coords = []
        ok = True
        for v in gens:
            c = lift_coordinates(w, h * v, ring, rank, M.modulo, budget)
            if c is None:
                ok = False
                last_error = "lift failure"
                break
            coords.append(FreeModuleElement(ring, e,
                                            {i: p for i, p in enumerate(c)}))
        if not ok:
            continue
        coord_module = Submodule(ring, e, coords, M.modulo)
        return FreeEmbedding(w, h, coord_module, seed.seed, attempt)
    raise GenericityError(f"free embedding failed after {redraws} draws: {last_error}")


# ---------------------------------------------------------------------------
# fiber cone dimension


def fiber_cone_dim(M: ModLike, variety: Ideal, budget=None) -> int:
    """Dimension of the special fiber ring of the module's blowup algebra.

    Present the algebra with one tag per generator mapping to the generator's
    linear form in Sym(R^p), contract the relations to the tag ring, then cut
    by the origin's maximal ideal.  The projective fiber dimension is the
    returned value minus one.
    """
    from .groebner import eliminate, krull_dim
    rank, gens = _as_columns(M)
    if not gens:
        raise ZeroInputError("fiber cone of the zero module")
    ring = M.ring
    g = len(gens)
    enames = [f"_e{a}" for a in range(rank)]
    tnames = [f"_t{j}" for j in range(g)]
    ext = ring.with_variables(tuple(enames) + ring.variables + tuple(tnames))

    def move_poly(p: Polynomial) -> Polynomial:
        return ext.from_terms([((0,) * rank + e + (0,) * g, c)
                               for _, e, c in p.terms])

    rels = []
    for j, v in enumerate(gens):
        linear_pairs = []
        for a, p in v.entries.items():
            for _, e, c in p.terms:
                linear_pairs.append((tuple(1 if i == a else 0 for i in range(rank))
                                     + e + (0,) * g, c))
        lin = ext.from_terms(linear_pairs)
        tagvar = ext.var(tnames[j])
        rels.append(tagvar - lin)
    vg = list(variety.generators)
    if variety.modulo is not None:
        vg += list(variety.modulo.generators)
    rels.extend(move_poly(p) for p in vg)
    rees_relations = eliminate(Ideal(ext, rels), enames, budget=budget)
    mid = rees_relations.ring  # ring vars + tags
    cut = Ideal(mid, list(rees_relations.generators)
                + [mid.var(v) for v in ring.variables])
    fiber = eliminate(cut, ring.variables, budget=budget)
    gb = buchberger(fiber, budget=budget)
    return krull_dim(gb)
