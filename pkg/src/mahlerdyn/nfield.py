"""Arithmetic in a fixed number field Q(theta).

Certified embeddings, automorphism discovery with exact verification, unit
sublattices of Z[theta], and the conjugate-pattern search that produces units
with a prescribed distribution of conjugate absolute values.
"""

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import mpmath as mp

try:
    import numpy as _np
except ImportError:  # pragma: no cover - numpy is an optional accelerator
    _np = None

from .algnum import (
    AlgebraicNumber,
    _select_by_enclosure,
    an_from_rational,
    an_mul,
    an_pow,
)
from .errors import (
    NotFound,
    NotIrreducible,
    NotMonic,
    PrecisionExceeded,
    RankDeficient,
)
from .factor import is_irreducible
from .intpoly import IntPoly, cyclotomic_part, resultant, transform_resolvent
from .mahler import an_compare
from .roots import (
    IsolatingBox,
    _frac_from_mp,
    _sqrt_upper,
    isolate_roots,
    refine,
    signature,
)

_ZERO = Fraction(0)
_ONE = Fraction(1)

_H_CAP = 64  # coordinate-bound ladder limit for unit enumeration
_E_CAP = 8  # exponent-bound ladder limit for pattern search
_AUTO_PREC = (192, 384, 768, 1536)  # discovery ladder, bits


# ---------------------------------------------------------------------------
# types


@dataclass(frozen=True)
class FieldElement:
    """Power-basis coordinates (c0 + c1*theta + ... + c_{n-1}*theta^{n-1})."""

    coords: tuple[Fraction, ...]


@dataclass(frozen=True)
class NumberField:
    defining: IntPoly
    degree: int
    signature: tuple[int, int]
    embeddings: tuple[IsolatingBox, ...]
    automorphisms: Optional[tuple[FieldElement, ...]] = None


@dataclass(frozen=True)
class LogVector:
    """Certified intervals e_i*log|sigma_i(x)|, one per archimedean place."""

    entries: tuple[tuple[Fraction, Fraction], ...]
    weights: tuple[int, ...]


@dataclass(frozen=True)
class UnitSublattice:
    generators: tuple[FieldElement, ...]
    log_matrix: tuple[LogVector, ...]


@dataclass(frozen=True)
class ConjugatePattern:
    """Required layout of |sigma_i(x)| over the embedding indices.

    order: levels of embedding indices; every value in a level strictly
    exceeds every value in the next level. one_position: how many leading
    levels lie above 1 (all remaining levels lie below 1). extras: product
    constraints (indices, rel) meaning prod |sigma_i(x)| rel 1 with
    rel in {"<", ">", "!="}.
    """

    order: tuple[tuple[int, ...], ...]
    one_position: int
    extras: tuple[tuple[tuple[int, ...], str], ...] = ()


# ---------------------------------------------------------------------------
# construction and element arithmetic


def nf_new(defining: IntPoly) -> NumberField:
    if defining.is_zero or defining.degree < 1 or defining.lc != 1:
        raise NotMonic("defining polynomial must be monic of degree >= 1")
    if not is_irreducible(defining):
        raise NotIrreducible("defining polynomial must be irreducible")
    return NumberField(
        defining=defining,
        degree=defining.degree,
        signature=signature(defining),
        embeddings=tuple(isolate_roots(defining)),
    )


def nf_element(K: NumberField, coords: Sequence) -> FieldElement:
    cs = [Fraction(c) for c in coords]
    if len(cs) > K.degree:
        cs = _poly_mod(cs, K.defining)
    cs.extend([_ZERO] * (K.degree - len(cs)))
    return FieldElement(tuple(cs))


def fe_rational(K: NumberField, v) -> FieldElement:
    return nf_element(K, [Fraction(v)])


def fe_theta(K: NumberField) -> FieldElement:
    if K.degree == 1:
        # theta is the rational root itself
        return fe_rational(K, -Fraction(K.defining[0]))
    return nf_element(K, [0, 1])


def fe_is_zero(x: FieldElement) -> bool:
    return all(c == 0 for c in x.coords)


def fe_is_rational(x: FieldElement) -> bool:
    return all(c == 0 for c in x.coords[1:])


def _poly_mod(cs: list[Fraction], f: IntPoly) -> list[Fraction]:
    """Reduce a coefficient list mod the monic f, in place."""
    n = f.degree
    while len(cs) > n:
        top = cs.pop()
        if top:
            for k in range(n):
                cs[len(cs) - n + k] -= top * f[k]
    return cs


def fe_add(K: NumberField, x: FieldElement, y: FieldElement) -> FieldElement:
    return FieldElement(tuple(a + b for a, b in zip(x.coords, y.coords)))


def fe_sub(K: NumberField, x: FieldElement, y: FieldElement) -> FieldElement:
    return FieldElement(tuple(a - b for a, b in zip(x.coords, y.coords)))


def fe_neg(K: NumberField, x: FieldElement) -> FieldElement:
    return FieldElement(tuple(-a for a in x.coords))


def fe_mul(K: NumberField, x: FieldElement, y: FieldElement) -> FieldElement:
    n = K.degree
    prod = [_ZERO] * (2 * n - 1)
    for i, a in enumerate(x.coords):
        if not a:
            continue
        for j, b in enumerate(y.coords):
            if b:
                prod[i + j] += a * b
    return nf_element(K, _poly_mod(prod, K.defining))


def fe_inv(K: NumberField, x: FieldElement) -> FieldElement:
    """Inverse mod the defining polynomial by the extended Euclid algorithm."""
    if fe_is_zero(x):
        raise ZeroDivisionError("field element 0 has no inverse")
    if fe_is_rational(x):
        return fe_rational(K, 1 / x.coords[0])
    f = [Fraction(c) for c in K.defining.coeffs]
    g = list(x.coords)
    while g and g[-1] == 0:
        g.pop()
    # invariants: s*x = r mod f for each remainder r in the chain
    r0, r1 = f, g
    s0, s1 = [_ZERO], [_ONE]
    while True:
        if len(r1) == 1:
            inv = [c / r1[0] for c in s1]
            return nf_element(K, inv)
        q, r = _poly_divmod(r0, r1)
        s = _poly_sub(s0, _poly_mul(q, s1))
        r0, s0 = r1, s1
        r1, s1 = r, s
        assert r1, "defining polynomial must be irreducible"


def _poly_divmod(a: list[Fraction], b: list[Fraction]):
    a = list(a)
    q = [_ZERO] * max(1, len(a) - len(b) + 1)
    inv_lead = 1 / b[-1]
    while len(a) >= len(b) and any(a):
        if a[-1] == 0:
            a.pop()
            continue
        c = a[-1] * inv_lead
        d = len(a) - len(b)
        q[d] = c
        for i, bc in enumerate(b):
            a[d + i] -= c * bc
        a.pop()
    while len(a) > 1 and a[-1] == 0:
        a.pop()
    return q, (a if any(a) else [_ZERO])


def _poly_mul(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    out = [_ZERO] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return out


def _poly_sub(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    n = max(len(a), len(b))
    a = a + [_ZERO] * (n - len(a))
    b = b + [_ZERO] * (n - len(b))
    return [x - y for x, y in zip(a, b)]


def fe_pow(K: NumberField, x: FieldElement, e: int) -> FieldElement:
    if e < 0:
        return fe_pow(K, fe_inv(K, x), -e)
    out = fe_rational(K, 1)
    base = x
    while e:
        if e & 1:
            out = fe_mul(K, out, base)
        base = fe_mul(K, base, base)
        e >>= 1
    return out


def nf_apply(K: NumberField, g: FieldElement, x: FieldElement) -> FieldElement:
    """Image of x under the automorphism sending theta to g."""
    acc = fe_rational(K, 0)
    for c in reversed(x.coords):
        acc = fe_mul(K, acc, g)
        if c:
            acc = fe_add(K, acc, fe_rational(K, c))
    return acc


def nf_compose(K: NumberField, g: FieldElement, h: FieldElement) -> FieldElement:
    """Image of theta under sigma_g o sigma_h."""
    return nf_apply(K, g, h)


def nf_embedding_permutation(K: NumberField, g: FieldElement) -> tuple[int, ...]:
    """Permutation pi with sigma_g(x) at embedding i = x at embedding pi(i).

    pi(i) is the index of the root box that g evaluated on embedding i lands
    in, certified by shrinking the evaluation ball until it meets one box.
    """
    out = []
    boxes = list(K.embeddings)
    for i in range(K.degree):
        prec = 64
        while True:
            ball = nf_embed(K, g, i, prec)
            hits = [j for j, b in enumerate(boxes) if not _boxes_disjoint(ball, b)]
            if len(hits) == 1:
                out.append(hits[0])
                break
            prec *= 2
            boxes = [refine(b, K.defining, b.radius / 16) for b in boxes]
    return tuple(out)


# ---------------------------------------------------------------------------
# norms and embeddings


def nf_norm(K: NumberField, x: FieldElement) -> Fraction:
    if fe_is_zero(x):
        return _ZERO
    if fe_is_rational(x):
        return x.coords[0] ** K.degree
    den = math.lcm(*(c.denominator for c in x.coords))
    G = IntPoly([int(c * den) for c in x.coords])
    # N(x) = prod G(root_i)/den = Res(f, G)/den^n for monic f
    return Fraction(resultant(K.defining, G), den**K.degree)


def _eval_ball(coords: Sequence[Fraction], box: IsolatingBox) -> IsolatingBox:
    """Certified ball for the coordinate polynomial evaluated on box."""
    bx, by = box.center
    br = box.radius
    bmag = _sqrt_upper(bx * bx + by * by, 96) + br
    vx, vy, vr = _ZERO, _ZERO, _ZERO
    for c in reversed(coords):
        nx = vx * bx - vy * by
        ny = vx * by + vy * bx
        vmag = _sqrt_upper(vx * vx + vy * vy, 96)
        vr = vmag * br + bmag * vr
        vx, vy = nx + c, ny
    if vr == 0:
        vr = Fraction(1, 1 << 200)
    return IsolatingBox((vx, vy), vr, 1)


def nf_embed(K: NumberField, x: FieldElement, place: int, precision: int) -> IsolatingBox:
    """Certified ball of radius <= 2^-precision around sigma_place(x)."""
    target = Fraction(1, 1 << precision)
    box = K.embeddings[place]
    eps = min(box.radius, Fraction(1, 1 << max(32, precision)))
    for _ in range(24):
        box = refine(box, K.defining, eps)
        val = _eval_ball(x.coords, box)
        if val.radius <= target:
            return val
        eps /= Fraction(1 << 64)
    raise PrecisionExceeded(f"embedding of width 2^-{precision} not reached")


# ---------------------------------------------------------------------------
# conjugate pairing of embeddings


def _conjugate_pairs(K: NumberField) -> dict[int, int]:
    """Map each embedding index to the index of its complex conjugate."""
    boxes = list(K.embeddings)
    pairs: dict[int, int] = {}
    for i, b in enumerate(boxes):
        if b.center[1] == 0:
            pairs[i] = i
            continue
        mirror = IsolatingBox((b.center[0], -b.center[1]), b.radius, 1)
        hits = [
            j
            for j, other in enumerate(boxes)
            if other.center[1] != 0 and not _boxes_disjoint(mirror, other)
        ]
        while len(hits) > 1:
            boxes = [refine(bb, K.defining, bb.radius / 16) for bb in boxes]
            b = boxes[i]
            mirror = IsolatingBox((b.center[0], -b.center[1]), b.radius, 1)
            hits = [j for j in hits if not _boxes_disjoint(mirror, boxes[j])]
        assert hits, "conjugate root lost"
        pairs[i] = hits[0]
    return pairs


def _boxes_disjoint(a: IsolatingBox, b: IsolatingBox) -> bool:
    dx = a.center[0] - b.center[0]
    dy = a.center[1] - b.center[1]
    rr = a.radius + b.radius
    return dx * dx + dy * dy > rr * rr


def _places(K: NumberField) -> tuple[tuple[int, int], ...]:
    """(embedding index, weight) per archimedean place; complex pairs are
    represented by their lower embedding index with weight 2."""
    pairs = _conjugate_pairs(K)
    out = []
    for i in range(K.degree):
        if pairs[i] == i:
            out.append((i, 1))
        elif pairs[i] > i:
            out.append((i, 2))
    return tuple(out)


# ---------------------------------------------------------------------------
# automorphisms


def nf_automorphisms(K: NumberField) -> list[FieldElement]:
    """All roots of the defining polynomial that lie in K, exactly verified.

    Candidates are discovered by integer-relation (LLL) reconstruction from
    high-precision embeddings and accepted only when f(g) = 0 mod f holds in
    exact arithmetic, so a discovery failure can lose automorphisms but never
    invent one. For Galois K the returned list has size = degree and is
    closed under composition (verified).
    """
    n = K.degree
    if n == 1:
        return [fe_theta(K)]
    found: dict[tuple, FieldElement] = {}
    ident = fe_theta(K)
    found[ident.coords] = ident
    base = next((i for i, b in enumerate(K.embeddings) if b.center[1] == 0), 0)
    base_real = K.embeddings[base].center[1] == 0
    for j in range(n):
        if j == base:
            continue
        if base_real and K.embeddings[j].center[1] != 0:
            # the image of a root under a real embedding is a real root
            continue
        g = _root_in_field(K, base, j)
        if g is not None and g.coords not in found:
            found[g.coords] = g
    _close_under_composition(K, found)
    autos = list(found.values())
    if len(autos) == n:
        _verify_group_closure(K, autos)
    return autos


def _root_in_field(K: NumberField, base: int, j: int) -> Optional[FieldElement]:
    n = K.degree
    f = K.defining
    for prec in _AUTO_PREC:
        eps = Fraction(1, 1 << (prec + 16))
        try:
            b0 = refine(K.embeddings[base], f, eps)
            bj = refine(K.embeddings[j], f, eps)
        except PrecisionExceeded:
            return None
        rows = _relation_lattice(b0, bj, n, prec)
        for cand in _short_relations(rows, n):
            g = nf_element(K, cand)
            if _is_root_of_defining(K, g):
                return g
    return None


def _relation_lattice(b0: IsolatingBox, bj: IsolatingBox, n: int, prec: int):
    scale = 1 << prec
    # exact dyadic powers of the base-root center
    px, py = _ONE, _ZERO
    cols = []
    for _ in range(n):
        cols.append((px, py))
        px, py = (
            px * b0.center[0] - py * b0.center[1],
            px * b0.center[1] + py * b0.center[0],
        )
    cols.append((bj.center[0], bj.center[1]))
    rows = []
    for k in range(n + 1):
        unit = [0] * (n + 1)
        unit[k] = 1
        re, im = cols[k]
        rows.append(unit + [round(re * scale), round(im * scale)])
    return rows


def _short_relations(rows, n: int):
    from sympy import ZZ
    from sympy.polys.matrices import DomainMatrix

    m = DomainMatrix([[ZZ(int(v)) for v in row] for row in rows], (n + 1, n + 3), ZZ)
    try:
        red = m.lll()
    except Exception:
        return
    for row in red.to_list():
        vec = [int(v) for v in row[: n + 1]]
        a = vec[n]
        if a == 0:
            continue
        yield [Fraction(-vec[k], a) for k in range(n)]


def _is_root_of_defining(K: NumberField, g: FieldElement) -> bool:
    acc = fe_rational(K, 0)
    for c in reversed(K.defining.coeffs):
        acc = fe_mul(K, acc, g)
        if c:
            acc = fe_add(K, acc, fe_rational(K, c))
    return fe_is_zero(acc)


def _close_under_composition(K: NumberField, found: dict) -> None:
    n = K.degree
    while len(found) < n:
        new = []
        items = list(found.values())
        for g in items:
            for h in items:
                c = nf_compose(K, g, h)
                if c.coords not in found:
                    new.append(c)
        if not new:
            return
        for c in new:
            found[c.coords] = c


def _verify_group_closure(K: NumberField, autos: list[FieldElement]) -> None:
    keys = {g.coords for g in autos}
    assert fe_theta(K).coords in keys, "identity automorphism missing"
    for g in autos:
        for h in autos:
            assert nf_compose(K, g, h).coords in keys, "automorphisms not closed"


# ---------------------------------------------------------------------------
# log vectors and certified interval helpers


def _abs_interval(ball: IsolatingBox) -> tuple[Fraction, Fraction]:
    cx, cy = ball.center
    s = cx * cx + cy * cy
    hi = _sqrt_upper(s, 96) + ball.radius
    lo = (s / _sqrt_upper(s, 96) if s else _ZERO) - ball.radius
    return (max(lo, _ZERO), hi)


def _log_interval(lo: Fraction, hi: Fraction) -> tuple[Fraction, Fraction]:
    """Certified enclosure of [log lo, log hi] for 0 < lo <= hi."""
    assert lo > 0
    with mp.workprec(120):
        llo = _frac_from_mp(mp.log(mp.mpf(lo.numerator) / mp.mpf(lo.denominator)))
        lhi = _frac_from_mp(mp.log(mp.mpf(hi.numerator) / mp.mpf(hi.denominator)))
    pad = Fraction(1 + int(max(abs(llo), abs(lhi))), 1 << 100)
    return (llo - pad, lhi + pad)


def _log_vector(K: NumberField, x: FieldElement, prec: int) -> LogVector:
    entries = []
    weights = []
    for idx, w in _places(K):
        p = prec
        while True:
            lo, hi = _abs_interval(nf_embed(K, x, idx, p))
            if lo > 0:
                break
            p *= 2  # nonzero element; eventually 0 is excluded
        llo, lhi = _log_interval(lo, hi)
        entries.append((w * llo, w * lhi))
        weights.append(w)
    return LogVector(tuple(entries), tuple(weights))


def _embedding_log_table(K: NumberField, xs, prec: int):
    """Per-element, per-embedding certified log|sigma_j(x)| intervals."""
    pairs = _conjugate_pairs(K)
    table = []
    for x in xs:
        row: list = [None] * K.degree
        for j in range(K.degree):
            if row[j] is not None:
                continue
            p = prec
            while True:
                lo, hi = _abs_interval(nf_embed(K, x, j, p))
                if lo > 0:
                    break
                p *= 2
            row[j] = _log_interval(lo, hi)
            if pairs[j] != j:
                row[pairs[j]] = row[j]
        table.append(row)
    return table


# interval helpers over (lo, hi) Fraction pairs


def _iv_add(a, b):
    return (a[0] + b[0], a[1] + b[1])


def _iv_scale(a, k: int):
    return (k * a[0], k * a[1]) if k >= 0 else (k * a[1], k * a[0])


def _iv_mul(a, b):
    vals = (a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1])
    return (min(vals), max(vals))


def _iv_sub(a, b):
    return (a[0] - b[1], a[1] - b[0])


def _iv_div(a, b):
    assert b[0] > 0 or b[1] < 0, "interval division by interval containing 0"
    vals = (a[0] / b[0], a[0] / b[1], a[1] / b[0], a[1] / b[1])
    return (min(vals), max(vals))


def _interval_rank(rows) -> bool:
    """Whether the interval rows are certified linearly independent.

    Gaussian elimination where every pivot interval must exclude 0; the true
    matrix is one selection from the intervals, so k certified pivots prove
    rank >= k for it.
    """
    work = [list(r) for r in rows]
    cols = len(work[0])
    pivots: list[tuple[int, int]] = []
    for ri, row in enumerate(work):
        for pr, pc in pivots:
            factor = _iv_div(row[pc], work[pr][pc])
            for c in range(cols):
                row[c] = _iv_sub(row[c], _iv_mul(factor, work[pr][c]))
        pivot = None
        taken = {pc for _, pc in pivots}
        for c in range(cols):
            if c not in taken and (row[c][0] > 0 or row[c][1] < 0):
                pivot = c
                break
        if pivot is None:
            return False
        pivots.append((ri, pivot))
    return True


def _interval_det_excludes_zero(rows) -> bool:
    """Certified nonzero determinant of a square interval matrix."""
    n = len(rows)
    work = [list(r) for r in rows]
    det = (_ONE, _ONE)
    for i in range(n):
        pivot = None
        for r in range(i, n):
            if work[r][i][0] > 0 or work[r][i][1] < 0:
                pivot = r
                break
        if pivot is None:
            return False
        work[i], work[pivot] = work[pivot], work[i]
        det = _iv_mul(det, work[i][i])
        for r in range(i + 1, n):
            factor = _iv_div(work[r][i], work[i][i])
            for c in range(i, n):
                work[r][c] = _iv_sub(work[r][c], _iv_mul(factor, work[i][c]))
    return det[0] > 0 or det[1] < 0


# ---------------------------------------------------------------------------
# unit sublattice


def nf_unit_sublattice(K: NumberField, search_bound: Optional[int] = None) -> UnitSublattice:
    """A full-rank sublattice of unit log vectors from Z[theta] coordinates.

    Enumerates integer coordinate vectors by sup-norm rungs, keeps exact
    norm +-1 elements, discards torsion, and greedily collects generators
    until the log matrix has certified rank r1+r2-1.
    """
    r1, r2 = K.signature
    rank_target = r1 + r2 - 1
    if rank_target < 1:
        raise RankDeficient("unit rank r1+r2-1 is zero for this field")
    cap = search_bound if search_bound is not None else _H_CAP
    gens: list[FieldElement] = []
    picked_rows: list = []
    prec = 96
    h, prev = 1, 0
    while h <= cap:
        for coords in _coord_rung(K, prev, h):
            u = nf_element(K, coords)
            if _is_torsion_unit(K, u):
                continue
            rows = _rank_rows(K, gens + [u], prec)
            ok = _interval_rank(rows)
            if not ok:
                # dependent or precision-starved; one escalation then skip
                rows = _rank_rows(K, gens + [u], prec * 4)
                ok = _interval_rank(rows)
            if ok:
                gens.append(u)
                if len(gens) == rank_target:
                    vectors = tuple(_log_vector(K, g, prec) for g in gens)
                    square = [
                        [v.entries[c] for c in range(rank_target)] for v in vectors
                    ]
                    assert _interval_det_excludes_zero(square) or _rank_certified_hard(
                        K, gens, rank_target
                    ), "full-rank log matrix failed its determinant check"
                    return UnitSublattice(tuple(gens), vectors)
        prev, h = h, h * 2
    raise RankDeficient(f"unit search exhausted coordinate bound {cap}")


def _rank_certified_hard(K, gens, rank_target) -> bool:
    # retry the determinant at higher precision before declaring failure
    for prec in (384, 1536):
        vectors = [_log_vector(K, g, prec) for g in gens]
        square = [[v.entries[c] for c in range(rank_target)] for v in vectors]
        if _interval_det_excludes_zero(square):
            return True
    return False


def _rank_rows(K, elements, prec):
    vectors = [_log_vector(K, g, prec) for g in elements]
    return [list(v.entries) for v in vectors]


def _coord_rung(K: NumberField, prev: int, h: int):
    """Integer coordinate vectors with prev < sup-norm <= h, unit norm only."""
    n = K.degree
    refined = [refine(b, K.defining, Fraction(1, 1 << 64)) for b in K.embeddings]
    approx = [complex(float(b.center[0]), float(b.center[1])) for b in refined]
    if _np is not None:
        yield from _coord_rung_vec(K, approx, prev, h)
        return
    for coords in itertools.product(range(-h, h + 1), repeat=n):
        m = max(abs(c) for c in coords)
        if m <= prev or m > h:
            continue
        if all(c == 0 for c in coords[1:]):
            continue  # rational: unit only when torsion
        # cheap non-certified filter; false negatives only cost completeness
        prod = 1.0
        for z in approx:
            val = 0j
            for c in reversed(coords):
                val = val * z + c
            prod *= abs(val)
        if not (0.05 < prod < 20.0):
            continue
        if abs(resultant(K.defining, IntPoly(list(coords)))) == 1:
            yield coords


def _coord_rung_vec(K: NumberField, approx, prev: int, h: int):
    """Same candidate stream as the scalar loop, filtered in numpy blocks.

    The first k coordinates run in a python loop, the remaining n-k in one
    lexicographic grid, so survivors keep the scalar iteration order.
    """
    n = K.degree
    width = 2 * h + 1
    k, tail = n, 1
    while k > 0 and tail * width <= (1 << 18):
        tail *= width
        k -= 1
    d = n - k
    vals = _np.arange(-h, h + 1, dtype=_np.int64)
    grids = _np.meshgrid(*([vals] * d), indexing="ij")
    suffix = _np.stack([g.reshape(-1) for g in grids], axis=1)
    sufmax = _np.abs(suffix).max(axis=1)
    sufzero = (suffix == 0).all(axis=1)
    zs = [complex(z) for z in approx]
    if k == 0:
        rational = (suffix[:, 1:] == 0).all(axis=1)
    for prefix in itertools.product(range(-h, h + 1), repeat=k):
        pm = max((abs(c) for c in prefix), default=0)
        mask = _np.maximum(sufmax, pm) > prev
        if k == 0:
            mask &= ~rational
        elif not any(prefix[1:]):
            mask &= ~sufzero  # c0 free, every other coordinate zero
        if not mask.any():
            continue
        prod = _np.ones(suffix.shape[0])
        for z in zs:
            acc = _np.zeros(suffix.shape[0], dtype=_np.complex128)
            for col in range(d - 1, -1, -1):
                acc = acc * z + suffix[:, col]
            for c in reversed(prefix):
                acc = acc * z + c
            prod *= _np.abs(acc)
        mask &= (prod > 0.05) & (prod < 20.0)
        for row in _np.nonzero(mask)[0]:
            coords = prefix + tuple(int(v) for v in suffix[row])
            if abs(resultant(K.defining, IntPoly(list(coords)))) == 1:
                yield coords


def _is_torsion_unit(K: NumberField, u: FieldElement) -> bool:
    # quick negative: some |sigma(u)| certified away from 1
    for idx, _ in _places(K):
        lo, hi = _abs_interval(nf_embed(K, u, idx, 64))
        if lo > 1 or (hi < 1 and lo > 0):
            return False
    q = fe_to_algnum(K, u).minpoly
    return cyclotomic_part(q) == q


# ---------------------------------------------------------------------------
# field element -> algebraic number


def fe_to_algnum(K: NumberField, x: FieldElement, place: int = 0) -> AlgebraicNumber:
    """The algebraic number sigma_place(x), with exact minimal polynomial."""
    if fe_is_rational(x):
        return an_from_rational(x.coords[0])
    den = math.lcm(*(c.denominator for c in x.coords))
    G = IntPoly([int(c * den) for c in x.coords])
    res = transform_resolvent(K.defining, G, den)

    def enclosures():
        for p in (64, 128, 256, 512, 1024, 2048, 4096):
            yield nf_embed(K, x, place, p)

    return _select_by_enclosure(res, enclosures())


def _abs_squared_algnum(K: NumberField, x: FieldElement, place: int) -> AlgebraicNumber:
    """|sigma_place(x)|^2 as an exact algebraic number."""
    z = fe_to_algnum(K, x, place)
    box = z.box
    if box.center[1] == 0:
        # real embedding: z^2 via the power map, degree n instead of n^2
        return an_pow(z, 2)
    boxes = isolate_roots(z.minpoly)
    mirror = IsolatingBox((box.center[0], -box.center[1]), box.radius, 1)
    hits = [j for j, b in enumerate(boxes) if not _boxes_disjoint(mirror, b)]
    cur = box
    while len(hits) > 1:
        cur = refine(cur, z.minpoly, cur.radius / 16)
        mirror = IsolatingBox((cur.center[0], -cur.center[1]), cur.radius, 1)
        boxes = [refine(b, z.minpoly, b.radius / 16) for b in boxes]
        hits = [j for j in hits if not _boxes_disjoint(mirror, boxes[j])]
    zbar = AlgebraicNumber(z.minpoly, boxes[hits[0]])
    return an_mul(z, zbar)


# ---------------------------------------------------------------------------
# pattern search


def _pattern_indices(pattern: ConjugatePattern) -> list[int]:
    out = []
    for level in pattern.order:
        out.extend(level)
    return out


def _validate_pattern(K: NumberField, pattern: ConjugatePattern) -> None:
    seen = set()
    for level in pattern.order:
        for i in level:
            if not (0 <= i < K.degree) or i in seen:
                raise ValueError("pattern order must list distinct embedding indices")
            seen.add(i)
    if not (0 <= pattern.one_position <= len(pattern.order)):
        raise ValueError("one_position out of range")
    for indices, rel in pattern.extras:
        if rel not in ("<", ">", "!="):
            raise ValueError(f"unknown relation {rel!r}")
        for i in indices:
            if not (0 <= i < K.degree):
                raise ValueError("extras reference an invalid embedding index")


def _screen_candidate(logs, pattern: ConjugatePattern) -> bool:
    """Interval pre-check; '!=' extras are allowed to stay undecided here."""
    for t in range(len(pattern.order) - 1):
        hi_level = pattern.order[t]
        lo_level = pattern.order[t + 1]
        if not all(
            logs[a][0] > logs[b][1] for a in hi_level for b in lo_level
        ):
            return False
    for t, level in enumerate(pattern.order):
        if t < pattern.one_position:
            if not all(logs[j][0] > 0 for j in level):
                return False
        else:
            if not all(logs[j][1] < 0 for j in level):
                return False
    for indices, rel in pattern.extras:
        total = (_ZERO, _ZERO)
        for j in indices:
            total = _iv_add(total, logs[j])
        if rel == "<" and not total[1] < 0:
            return False
        if rel == ">" and not total[0] > 0:
            return False
        # "!=" is settled by the exact verifier
    return True


def _verify_pattern_exact(K: NumberField, u: FieldElement, pattern: ConjugatePattern) -> bool:
    """Exact re-verification of every constraint on the constructed unit."""
    one = an_from_rational(1)
    needed = set(_pattern_indices(pattern))
    for indices, _ in pattern.extras:
        needed.update(indices)
    sq = {j: _abs_squared_algnum(K, u, j) for j in needed}
    for t in range(len(pattern.order) - 1):
        for a in pattern.order[t]:
            for b in pattern.order[t + 1]:
                if an_compare(sq[a], sq[b]) <= 0:
                    return False
    for t, level in enumerate(pattern.order):
        want = 1 if t < pattern.one_position else -1
        for j in level:
            if an_compare(sq[j], one) != want:
                return False
    for indices, rel in pattern.extras:
        prod = an_from_rational(1)
        for j in indices:
            prod = an_mul(prod, sq[j])
        cmp = an_compare(prod, one)
        if rel == "<" and cmp != -1:
            return False
        if rel == ">" and cmp != 1:
            return False
        if rel == "!=" and cmp == 0:
            return False
    return True


def nf_pattern_search(
    K: NumberField,
    lattice: UnitSublattice,
    pattern: ConjugatePattern,
    exponent_bound: Optional[int] = None,
) -> FieldElement:
    """First unit (in sup-norm-then-lex exponent order) matching the pattern.

    Candidates are screened with certified interval log vectors; a screened
    hit is constructed exactly and every constraint is re-verified on the
    exact element before it is returned.
    """
    _validate_pattern(K, pattern)
    cap = exponent_bound if exponent_bound is not None else _E_CAP
    gens = list(lattice.generators)
    r = len(gens)
    prec = 96
    table = _embedding_log_table(K, gens, prec)
    needed = set(_pattern_indices(pattern))
    for indices, _ in pattern.extras:
        needed.update(indices)
    shell = 0
    while shell <= cap:
        for evec in itertools.product(range(-shell, shell + 1), repeat=r):
            if max((abs(e) for e in evec), default=0) != shell:
                continue
            logs = {}
            for j in needed:
                acc = (_ZERO, _ZERO)
                for i in range(r):
                    if evec[i]:
                        acc = _iv_add(acc, _iv_scale(table[i][j], evec[i]))
                logs[j] = acc
            if not _screen_candidate(logs, pattern):
                continue
            u = fe_rational(K, 1)
            for i in range(r):
                if evec[i]:
                    u = fe_mul(K, u, fe_pow(K, gens[i], evec[i]))
            if _verify_pattern_exact(K, u, pattern):
                return u
        shell += 1
    raise NotFound(f"no unit matched the pattern within exponent bound {cap}")
