"""Solving fault equation systems over GF(2^m).

Pipeline: Gaussian interreduction of the linear members eliminates most
variables, the substitution is pushed through the quadratics, and the
zero set of the small reduced system is computed.  Two routes exist for
that last step and are cross-validated in the tests:

* pruned product enumeration (small variable counts), and
* an algebraic engine: linear-closure loops, a Buchberger reduced
  Groebner basis (degree-graded order) on determined subsystems, Krylov
  minimal polynomials to pin single variables, and value branching as
  the fallback for underdetermined (positive-dimensional) remnants.

Solutions are exact and complete in both routes; rational points are
filtered during back-substitution rather than by adjoining field
equations.
"""

from __future__ import annotations

from heapq import heappop, heappush
from itertools import product
from typing import Dict, Iterable, List, Optional, Sequence, Set, Tuple

from .field import GF2m
from .attack import FaultEquationSystem, MultiPoly, Mono


class InconsistentLinear(ValueError):
    """Linear interreduction derived a nonzero constant."""


class SolverOverflow(RuntimeError):
    """More free variables than the configured cap."""


# ---------------------------------------------------------------------------
# linear interreduction
# ---------------------------------------------------------------------------


class SubstitutionMap:
    """Elimination of r pivot variables into affine images over the free ones."""

    __slots__ = ("field", "n", "images", "pivot_vars", "free_vars")

    def __init__(self, field: GF2m, n: int, images: Dict[int, MultiPoly], pivot_order: Sequence[int]) -> None:
        self.field = field
        self.n = n
        self.images = images
        self.pivot_vars = tuple(pivot_order)
        self.free_vars = tuple(v for v in range(n) if v not in images)

    @property
    def r(self) -> int:
        return len(self.pivot_vars)

    def apply(self, poly: MultiPoly) -> MultiPoly:
        return poly.substitute(self.images)

    def lift_point(self, assignment: Dict[int, int]) -> Tuple[int, ...]:
        """The point map: free coordinates from the assignment, pivots
        through their images."""
        vals = [0] * self.n
        for v in self.free_vars:
            vals[v] = assignment[v]
        for v, img in self.images.items():
            vals[v] = img.evaluate(vals)
        return tuple(vals)


def _to_affine(poly: MultiPoly) -> Tuple[int, Dict[int, int]]:
    const = 0
    terms: Dict[int, int] = {}
    for mono, c in poly.terms.items():
        if len(mono) == 0:
            const ^= c
        elif len(mono) == 1:
            terms[mono[0]] = terms.get(mono[0], 0) ^ c
        else:
            raise ValueError("polynomial is not affine")
    return const, {v: c for v, c in terms.items() if c}


def interreduce_linear(polys: Iterable[MultiPoly], field: GF2m, n: int) -> Tuple[List[MultiPoly], SubstitutionMap]:
    """Gauss-Jordan interreduction of degree <= 1 polynomials.

    Returns the reduced generators (each with a leading variable that
    occurs nowhere else in the set) and the substitution map sending
    every pivot variable to its affine image over the free variables.
    """
    mul = field.mul
    inv = field.inv
    images: Dict[int, Tuple[int, Dict[int, int]]] = {}
    used_in: Dict[int, Set[int]] = {}
    order: List[int] = []
    for poly in polys:
        const, terms = _to_affine(poly)
        # substitute current pivots
        reduced: Dict[int, int] = {}
        for v, c in terms.items():
            img = images.get(v)
            if img is None:
                reduced[v] = reduced.get(v, 0) ^ c
            else:
                ic, iterms = img
                const ^= mul(c, ic)
                for w, cw in iterms.items():
                    reduced[w] = reduced.get(w, 0) ^ mul(c, cw)
        reduced = {v: c for v, c in reduced.items() if c}
        if not reduced:
            if const:
                raise InconsistentLinear("derived a nonzero constant")
            continue
        pivot = min(reduced)
        pc = reduced.pop(pivot)
        ipc = inv(pc)
        img_const = mul(ipc, const)
        img_terms = {v: mul(ipc, c) for v, c in reduced.items()}
        # eliminate the new pivot from existing images
        for user in list(used_in.get(pivot, ())):
            uc, uterms = images[user]
            coeff = uterms.pop(pivot)
            uc ^= mul(coeff, img_const)
            for w, cw in img_terms.items():
                nxt = uterms.get(w, 0) ^ mul(coeff, cw)
                if nxt:
                    uterms[w] = nxt
                    used_in.setdefault(w, set()).add(user)
                else:
                    uterms.pop(w, None)
                    used_in.get(w, set()).discard(user)
            images[user] = (uc, uterms)
        used_in.pop(pivot, None)
        images[pivot] = (img_const, img_terms)
        for w in img_terms:
            used_in.setdefault(w, set()).add(pivot)
        order.append(pivot)
    image_polys = {
        v: MultiPoly(field, {(): ic, **{(w,): cw for w, cw in iterms.items()}})
        for v, (ic, iterms) in images.items()
    }
    ells = [
        MultiPoly.variable(field, v) + image_polys[v]
        for v in order
    ]
    return ells, SubstitutionMap(field, n, image_polys, order)


def reduce_system(system: FaultEquationSystem, submap: SubstitutionMap) -> List[MultiPoly]:
    """Apply the substitution to every member of the system, dropping zeros."""
    out = []
    for poly in system.all_polys():
        img = submap.apply(poly)
        if not img.is_zero:
            out.append(img)
    return out


# ---------------------------------------------------------------------------
# zero set: shared helpers
# ---------------------------------------------------------------------------


def _univariate_roots(poly: MultiPoly, var: int, field: GF2m) -> List[int]:
    """Roots of a polynomial known to involve only `var`."""
    coeffs: Dict[int, int] = {}
    for mono, c in poly.terms.items():
        coeffs[len(mono)] = coeffs.get(len(mono), 0) ^ c
    deg = max((d for d, c in coeffs.items() if c), default=-1)
    if deg <= 0:
        return []
    if deg == 1:
        return [field.div(coeffs.get(0, 0), coeffs[1])]
    if deg == 2:
        inv2 = field.inv(coeffs[2])
        roots = field.quad_roots_monic(
            field.mul(coeffs.get(1, 0), inv2), field.mul(coeffs.get(0, 0), inv2)
        )
        return sorted(set(roots))
    cs = [coeffs.get(d, 0) for d in range(deg + 1)]
    mul = field.mul
    out = []
    for a in range(field.order):
        acc = 0
        for c in reversed(cs):
            acc = mul(acc, a) ^ c
        if acc == 0:
            out.append(a)
    return out


def _split_constants(polys: List[MultiPoly]):
    """Drop zero polynomials; None signals a nonzero constant (no solutions)."""
    out = []
    for p in polys:
        if p.is_zero:
            continue
        if p.degree == 0:
            return None
        out.append(p)
    return out


# ---------------------------------------------------------------------------
# route 1: pruned enumeration
# ---------------------------------------------------------------------------


def _enumerate_pruned(polys: List[MultiPoly], variables: Tuple[int, ...], field: GF2m) -> List[Dict[int, int]]:
    order = field.order

    def rec(polys: List[MultiPoly], remaining: Tuple[int, ...]) -> List[Dict[int, int]]:
        polys = _split_constants(polys)
        if polys is None:
            return []
        if not remaining:
            return [{}]
        if not polys:
            return [dict(zip(remaining, vals)) for vals in product(range(order), repeat=len(remaining))]
        # prefer a variable from the poly with the fewest unassigned variables
        best = min(polys, key=lambda p: len(p.variables()))
        bvars = best.variables()
        var = min(bvars)
        if len(bvars) == 1:
            values = _univariate_roots(best, var, field)
        else:
            values = range(order)
        rest = tuple(v for v in remaining if v != var)
        out = []
        for val in values:
            sub = [p.assign(var, val) for p in polys]
            for sol in rec(sub, rest):
                sol[var] = val
                out.append(sol)
        return out

    return rec(list(polys), tuple(variables))


# ---------------------------------------------------------------------------
# route 2: algebraic engine (closure + Buchberger + eliminant + branching)
# ---------------------------------------------------------------------------


class _Order:
    """Degree-reverse-lexicographic term order over a fixed variable list."""

    def __init__(self, variables: Sequence[int]) -> None:
        self.pos = {v: i for i, v in enumerate(sorted(variables))}
        self.k = len(self.pos)
        self.cache: Dict[Mono, Tuple] = {}

    def key(self, mono: Mono) -> Tuple:
        got = self.cache.get(mono)
        if got is None:
            exps = [0] * self.k
            for v in mono:
                exps[self.pos[v]] += 1
            got = (len(mono), tuple(-e for e in reversed(exps)))
            self.cache[mono] = got
        return got


def _mono_divides(a: Mono, b: Mono) -> bool:
    # multiset containment of sorted tuples
    i = 0
    for x in a:
        while i < len(b) and b[i] < x:
            i += 1
        if i >= len(b) or b[i] != x:
            return False
        i += 1
    return True


def _mono_div(b: Mono, a: Mono) -> Mono:
    out = []
    i = 0
    for x in b:
        if i < len(a) and a[i] == x:
            i += 1
        else:
            out.append(x)
    return tuple(out)


def _mono_lcm(a: Mono, b: Mono) -> Mono:
    # multiset union
    out = []
    i = j = 0
    while i < len(a) and j < len(b):
        if a[i] == b[j]:
            out.append(a[i])
            i += 1
            j += 1
        elif a[i] < b[j]:
            out.append(a[i])
            i += 1
        else:
            out.append(b[j])
            j += 1
    out.extend(a[i:])
    out.extend(b[j:])
    return tuple(out)


def _mul_term(terms: Dict[Mono, int], mono: Mono, coeff: int, field: GF2m) -> Dict[Mono, int]:
    mul = field.mul
    out: Dict[Mono, int] = {}
    for mo, c in terms.items():
        out[tuple(sorted(mo + mono))] = mul(c, coeff)
    return out


def _nf(terms: Dict[Mono, int], basis: List[Tuple[Mono, int, Dict[Mono, int]]], order: _Order, field: GF2m) -> Dict[Mono, int]:
    """Full normal form of a term dict against (lm, inv_lc, terms) reducers."""
    mul = field.mul
    key = order.key
    work = dict(terms)
    result: Dict[Mono, int] = {}
    while work:
        lt = max(work, key=key)
        c = work.pop(lt)
        if not c:
            continue
        hit = None
        for lm, inv_lc, gterms in basis:
            if len(lm) <= len(lt) and _mono_divides(lm, lt):
                hit = (lm, inv_lc, gterms)
                break
        if hit is None:
            result[lt] = c
            continue
        lm, inv_lc, gterms = hit
        factor = _mono_div(lt, lm)
        scale = mul(c, inv_lc)
        for mo, gc in gterms.items():
            if mo == lm:
                continue
            tm = tuple(sorted(mo + factor)) if factor else mo
            nxt = work.get(tm, 0) ^ mul(scale, gc)
            if nxt:
                work[tm] = nxt
            else:
                work.pop(tm, None)
    return result


def _buchberger(polys: List[MultiPoly], order: _Order, field: GF2m) -> List[MultiPoly]:
    """Reduced Groebner basis under the degree-graded order."""
    key = order.key
    inv = field.inv
    mul = field.mul

    basis: List[Tuple[Mono, int, Dict[Mono, int]]] = []

    def add(terms: Dict[Mono, int]) -> None:
        lm = max(terms, key=key)
        basis.append((lm, inv(terms[lm]), terms))

    # seed with interreduced inputs
    for p in sorted(polys, key=lambda p: key(max(p.terms, key=key))):
        nf = _nf(p.terms, basis, order, field)
        if nf:
            add(nf)
    pairs: List[Tuple[Tuple, int, int]] = []
    for j in range(len(basis)):
        for i in range(j):
            heappush(pairs, (key(_mono_lcm(basis[i][0], basis[j][0])), i, j))
    while pairs:
        _, i, j = heappop(pairs)
        lmi, _, fi = basis[i]
        lmj, _, fj = basis[j]
        lcm = _mono_lcm(lmi, lmj)
        if len(lcm) == len(lmi) + len(lmj):
            continue  # coprime leading monomials
        s: Dict[Mono, int] = {}
        for mo, c in _mul_term(fi, _mono_div(lcm, lmi), basis[i][1], field).items():
            s[mo] = s.get(mo, 0) ^ c
        for mo, c in _mul_term(fj, _mono_div(lcm, lmj), basis[j][1], field).items():
            nxt = s.get(mo, 0) ^ c
            if nxt:
                s[mo] = nxt
            else:
                s.pop(mo, None)
        nf = _nf(s, basis, order, field)
        if nf:
            add(nf)
            new = len(basis) - 1
            for x in range(new):
                heappush(pairs, (key(_mono_lcm(basis[x][0], basis[new][0])), x, new))
    # interreduce into the reduced basis
    uniq: Dict[Tuple, MultiPoly] = {}
    for idx, (lm, inv_lc, terms) in enumerate(basis):
        others = [basis[x] for x in range(len(basis)) if x != idx]
        nf = _nf(terms, others, order, field)
        if not nf:
            continue
        ilc = inv(nf[max(nf, key=key)])
        mp = MultiPoly(field)
        mp.terms = {mo: mul(ilc, c) for mo, c in nf.items()}
        uniq[tuple(sorted(mp.terms.items()))] = mp
    return sorted(uniq.values(), key=lambda p: key(max(p.terms, key=key)))


def _eliminant(gb: List[MultiPoly], var: int, order: _Order, field: GF2m, cap: int) -> Optional[List[int]]:
    """Minimal univariate polynomial of `var` modulo the ideal, via Krylov
    iteration on Groebner normal forms; None when no dependence shows up
    within `cap` powers (positive-dimensional directions)."""
    key = order.key
    inv = field.inv
    mul = field.mul
    reducers = [(max(p.terms, key=key), inv(p.terms[max(p.terms, key=key)]), p.terms) for p in gb]
    ech: List[Tuple[Mono, Dict[Mono, int], Dict[int, int]]] = []
    cur: Dict[Mono, int] = _nf({(): 1}, reducers, order, field)
    xv: Mono = (var,)
    for power in range(cap + 1):
        vec = dict(cur)
        comb = {power: 1}
        for lead, evec, ecomb in ech:
            c = vec.get(lead)
            if not c:
                continue
            for mo, ec in evec.items():
                nxt = vec.get(mo, 0) ^ mul(c, ec)
                if nxt:
                    vec[mo] = nxt
                else:
                    vec.pop(mo, None)
            for pw, ec in ecomb.items():
                nxt = comb.get(pw, 0) ^ mul(c, ec)
                if nxt:
                    comb[pw] = nxt
                else:
                    comb.pop(pw, None)
        if not vec:
            mu = [0] * (power + 1)
            for pw, c in comb.items():
                mu[pw] = c
            return mu
        lead = max(vec, key=key)
        ilc = inv(vec[lead])
        vec = {mo: mul(ilc, c) for mo, c in vec.items()}
        comb = {pw: mul(ilc, c) for pw, c in comb.items()}
        ech.append((lead, vec, comb))
        nxt = {}
        for mo, c in cur.items():
            nxt[tuple(sorted(mo + xv))] = c
        cur = _nf(nxt, reducers, order, field)
    return None


def _poly_roots(coeffs: List[int], field: GF2m) -> List[int]:
    mul = field.mul
    out = []
    for a in range(field.order):
        acc = 0
        for c in reversed(coeffs):
            acc = mul(acc, a) ^ c
        if acc == 0:
            out.append(a)
    return out


# ---------------------------------------------------------------------------
# underdetermined quadric systems: F2-affine branching
# ---------------------------------------------------------------------------
#
# Every harvested quadric has a cross part of rank at most 2 and factors
# as A*B + L with A, B field-linear forms and L a sum of squares, linear
# terms and a constant.  In characteristic 2 both field-linear forms and
# x -> x^2 are F2-linear on the solution vector read as k*m bits, so once
# A is pinned to a value the whole constraint {A = a, a*B + L = 0} is
# F2-affine.  Sweeping the 2^m values of A per quadric enumerates the
# zero set with nothing but bit-matrix eliminations, which is what makes
# positive-dimensional systems (few quadrics) tractable.


def _quadric_factor(poly: MultiPoly, slot: Dict[int, int], field: GF2m):
    """Split a degree <= 2 polynomial into (avec, bvec, (c0, lin, sq)) with
    cross part = A*B; None when the cross part has rank > 2."""
    k = len(slot)
    cross: Dict[Tuple[int, int], int] = {}
    lin = [0] * k
    sq = [0] * k
    c0 = 0
    for mono, c in poly.terms.items():
        if len(mono) == 0:
            c0 ^= c
        elif len(mono) == 1:
            lin[slot[mono[0]]] ^= c
        elif mono[0] == mono[1]:
            sq[slot[mono[0]]] ^= c
        else:
            u, v = slot[mono[0]], slot[mono[1]]
            cross[(u, v) if u < v else (v, u)] = c
    avec = [0] * k
    bvec = [0] * k
    if cross:
        mul = field.mul
        (u0, v0), m0 = min(cross.items())
        inv0 = field.inv(m0)

        def M(u: int, v: int) -> int:
            if u == v:
                return 0
            return cross.get((u, v) if u < v else (v, u), 0)

        for w in range(k):
            avec[w] = M(v0, w)
            bvec[w] = mul(inv0, M(u0, w))
        for (u, v), c in cross.items():
            if mul(avec[u], bvec[v]) ^ mul(avec[v], bvec[u]) != c:
                return None  # cross rank exceeds 2
        for w in range(k):
            sq[w] ^= mul(avec[w], bvec[w])
    return avec, bvec, (c0, lin, sq)


def _affine_intersect(P: int, basis: List[int], eqs, m: int):
    """Intersect the space {P + span(basis)} with conditions h(x) = 0 given
    as (h(P), [h_add(direction)]) m-bit pairs; None when empty."""
    d = len(basis)
    rows = []
    for hP, hdirs in eqs:
        for b in range(m):
            row = 0
            for j in range(d):
                if (hdirs[j] >> b) & 1:
                    row |= 1 << j
            rows.append(row | (((hP >> b) & 1) << d))
    pivots: List[int] = []
    rank = 0
    for col in range(d):
        bit = 1 << col
        piv = next((r for r in range(rank, len(rows)) if rows[r] & bit), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        pr = rows[rank]
        for r in range(len(rows)):
            if r != rank and rows[r] & bit:
                rows[r] ^= pr
        pivots.append(col)
        rank += 1
    rhsbit = 1 << d
    for r in range(rank, len(rows)):
        if rows[r] & rhsbit:
            return None
    newP = P
    for r, col in enumerate(pivots):
        if rows[r] & rhsbit:
            newP ^= basis[col]
    pivset = set(pivots)
    newbasis = []
    for f in range(d):
        if f in pivset:
            continue
        vec = basis[f]
        fb = 1 << f
        for r, col in enumerate(pivots):
            if rows[r] & fb:
                vec ^= basis[col]
        newbasis.append(vec)
    return newP, newbasis


_LEAF_DIM_CAP = 22


def _solve_quadric_branch(polys: List[MultiPoly], variables: Tuple[int, ...], field: GF2m):
    """Zero set of rank <= 2 quadrics by value branching on the A-forms;
    None when some polynomial does not fit the shape."""
    variables = tuple(sorted(variables))
    k = len(variables)
    slot = {v: i for i, v in enumerate(variables)}
    factored = []
    for p in polys:
        if p.degree != 2:
            return None
        f = _quadric_factor(p, slot, field)
        if f is None:
            return None
        factored.append(f)
    m = field.m
    mask = field.order - 1
    mul = field.mul
    sqr = field.sqr

    def form_at(vec: List[int], X: int) -> int:
        acc = 0
        for i, c in enumerate(vec):
            if c:
                x = (X >> (i * m)) & mask
                if x:
                    acc ^= mul(c, x)
        return acc

    def lform_at(lf, X: int, with_const: bool) -> int:
        c0, lin, sq = lf
        acc = c0 if with_const else 0
        for i in range(k):
            x = (X >> (i * m)) & mask
            if x:
                if lin[i]:
                    acc ^= mul(lin[i], x)
                if sq[i]:
                    acc ^= mul(sq[i], sqr(x))
        return acc

    points: List[int] = []

    def rec(P: int, basis: List[int], idx: int) -> None:
        d = len(basis)
        done = idx == len(factored)
        if done and d > _LEAF_DIM_CAP:
            raise SolverOverflow(f"zero set has at least 2^{d} points; refusing to materialize")
        if done or d <= m:
            # few enough points: sweep them and evaluate the leftover quadrics
            rest = factored[idx:]
            for bits in range(1 << d):
                X = P
                bb = bits
                j = 0
                while bb:
                    if bb & 1:
                        X ^= basis[j]
                    bb >>= 1
                    j += 1
                if all(
                    mul(form_at(avec, X), form_at(bvec, X)) == lform_at(lf, X, True)
                    for avec, bvec, lf in rest
                ):
                    points.append(X)
            return
        avec, bvec, lf = factored[idx]
        if not any(avec):
            # no cross part: the quadric is a single F2-affine condition
            eq = (lform_at(lf, P, True), [lform_at(lf, u, False) for u in basis])
            nxt = _affine_intersect(P, basis, [eq], m)
            if nxt is not None:
                rec(nxt[0], nxt[1], idx + 1)
            return
        A_P = form_at(avec, P)
        B_P = form_at(bvec, P)
        L_P = lform_at(lf, P, True)
        A_dirs = [form_at(avec, u) for u in basis]
        B_dirs = [form_at(bvec, u) for u in basis]
        L_dirs = [lform_at(lf, u, False) for u in basis]
        nd = len(basis)
        for a in range(field.order):
            eqs = [
                (A_P ^ a, A_dirs),
                (mul(a, B_P) ^ L_P, [mul(a, B_dirs[j]) ^ L_dirs[j] for j in range(nd)]),
            ]
            nxt = _affine_intersect(P, basis, eqs, m)
            if nxt is not None:
                rec(nxt[0], nxt[1], idx + 1)

    basis0 = [1 << (i * m + b) for i in range(k) for b in range(m)]
    rec(0, basis0, 0)
    return [
        {v: (X >> (slot[v] * m)) & mask for v in variables}
        for X in points
    ]


_GB_MAX_VARS = 12
_ELIMINANT_CAP = 48


def _solve_algebraic(polys: List[MultiPoly], variables: Tuple[int, ...], field: GF2m) -> List[Dict[int, int]]:
    polys = _split_constants(polys)
    if polys is None:
        return []
    if not variables:
        return [{}]
    if not polys:
        return [dict(zip(variables, vals)) for vals in product(range(field.order), repeat=len(variables))]

    # linear closure: eliminate along any degree-1 members
    linear = [p for p in polys if p.degree == 1]
    if linear:
        try:
            _, submap = interreduce_linear(linear, field, max(variables) + 1)
        except InconsistentLinear:
            return []
        images = submap.images
        rest = []
        for p in polys:
            if p.degree == 1:
                continue
            q = p.substitute(images)
            if not q.is_zero:
                rest.append(q)
        remaining = tuple(v for v in variables if v not in images)
        dense_len = max(variables) + 1
        out = []
        for sol in _solve_algebraic(rest, remaining, field):
            dense = [0] * dense_len
            for v, a in sol.items():
                dense[v] = a
            for v in variables:
                if v in images:
                    sol[v] = images[v].evaluate(dense)
            out.append(sol)
        return out

    used: Set[int] = set()
    for p in polys:
        used |= p.variables()
    free = tuple(v for v in variables if v not in used)
    active = tuple(v for v in variables if v in used)

    def with_free(sols: List[Dict[int, int]]) -> List[Dict[int, int]]:
        if not free:
            return sols
        out = []
        for vals in product(range(field.order), repeat=len(free)):
            fill = dict(zip(free, vals))
            for sol in sols:
                merged = dict(sol)
                merged.update(fill)
                out.append(merged)
        return out

    k = len(active)
    if k <= 2:
        return with_free(_leaf_scan(polys, active, field))

    # underdetermined all-quadric systems (positive-dimensional zero sets)
    # go through the F2-affine branch engine
    if all(p.degree == 2 for p in polys) and (len(polys) < k or k > _GB_MAX_VARS):
        sols = _solve_quadric_branch(polys, active, field)
        if sols is not None:
            return with_free(sols)

    gb: Optional[List[MultiPoly]] = None
    branch_polys = polys
    values: Optional[List[int]] = None
    var = min(active)
    if len(polys) >= k and k <= _GB_MAX_VARS:
        order = _Order(active)
        gb = _buchberger(polys, order, field)
        if any(p.degree == 0 for p in gb):
            return []
        if any(p.degree == 1 for p in gb):
            return _solve_algebraic(gb, variables, field)
        branch_polys = gb
        mu = _eliminant(gb, var, order, field, _ELIMINANT_CAP)
        if mu is not None:
            values = _poly_roots(mu, field)
    if values is None:
        values = list(range(field.order))
    out = []
    rest = tuple(v for v in variables if v != var)
    for val in values:
        sub = [p.assign(var, val) for p in branch_polys]
        for sol in _solve_algebraic(sub, rest, field):
            sol[var] = val
            out.append(sol)
    return out


def _leaf_scan(polys: List[MultiPoly], variables: Tuple[int, ...], field: GF2m) -> List[Dict[int, int]]:
    """Exhaust one or two constrained variables with univariate root solving."""
    if len(variables) == 1:
        (v,) = variables
        roots = _univariate_roots(polys[0], v, field)
        out = []
        for a in roots:
            if all(p.assign(v, a).is_zero for p in polys):
                out.append({v: a})
        return out
    v1, v2 = variables
    out = []
    for a in range(field.order):
        sub = _split_constants([p.assign(v1, a) for p in polys])
        if sub is None:
            continue
        if not sub:
            out.extend({v1: a, v2: b} for b in range(field.order))
            continue
        for b in _univariate_roots(sub[0], v2, field):
            if all(p.assign(v2, b).is_zero for p in sub):
                out.append({v1: a, v2: b})
    return out


# ---------------------------------------------------------------------------
# public entry points
# ---------------------------------------------------------------------------


def zero_set(
    polys: Sequence[MultiPoly],
    variables: Sequence[int],
    field: GF2m,
    method: str = "auto",
    enum_cap: int = 3,
    var_cap: int = 24,
) -> List[Tuple[int, ...]]:
    """All common zeros with coordinates in GF(2^m), as tuples over
    `variables` order; `method` picks enumeration, the algebraic engine,
    or the size-based hybrid."""
    variables = tuple(variables)
    if len(variables) > var_cap:
        raise SolverOverflow(f"{len(variables)} free variables exceed the cap {var_cap}")
    for p in polys:
        extra = p.variables() - set(variables)
        if extra:
            raise ValueError(f"polynomial mentions non-free variables {sorted(extra)}")
    if method == "enumerate":
        sols = _enumerate_pruned(list(polys), variables, field)
    elif method == "groebner":
        sols = _solve_algebraic(list(polys), variables, field)
    elif method == "auto":
        if len(variables) <= enum_cap:
            sols = _enumerate_pruned(list(polys), variables, field)
        else:
            sols = _solve_algebraic(list(polys), variables, field)
    else:
        raise ValueError(f"unknown method {method!r}")
    return sorted(tuple(sol[v] for v in variables) for sol in sols)


class SupportCandidateSet:
    """Lifted zero-set points with pairwise-distinct coordinates."""

    __slots__ = ("candidates", "n_free", "n_equations")

    def __init__(self, candidates: List[Tuple[int, ...]], n_free: int, n_equations: int) -> None:
        self.candidates = candidates
        self.n_free = n_free
        self.n_equations = n_equations

    def __len__(self) -> int:
        return len(self.candidates)

    def __iter__(self):
        return iter(self.candidates)

    def to_json(self) -> Dict:
        return {
            "n_free": self.n_free,
            "n_equations": self.n_equations,
            "candidates": [list(c) for c in self.candidates],
        }


def support_candidates(
    system: FaultEquationSystem,
    method: str = "auto",
    enum_cap: int = 3,
    var_cap: int = 24,
) -> SupportCandidateSet:
    """Interreduce, substitute, solve, lift, and keep the support-shaped
    points (pairwise-distinct coordinates), in a deterministic order."""
    field = system.field
    n = system.n
    linear = [p for p in system.all_polys() if 0 <= p.degree <= 1]
    _, submap = interreduce_linear(linear, field, n)
    reduced = reduce_system(system, submap)
    sols = zero_set(reduced, submap.free_vars, field, method=method, enum_cap=enum_cap, var_cap=var_cap)
    candidates = []
    for sol in sols:
        point = submap.lift_point(dict(zip(submap.free_vars, sol)))
        if len(set(point)) == n:
            candidates.append(point)
    candidates.sort()
    return SupportCandidateSet(candidates, n_free=len(submap.free_vars), n_equations=len(reduced))
