"""The measure-iteration dynamical system: exact M, orbits, and verdicts.

M of an algebraic number is |lc| times the product of the conjugates outside
the unit circle. The orbit engine iterates M, stopping on an exact fixed
point, a wandering certificate, a budget limit, or a precision failure (the
last two report Inconclusive; the engine never guesses).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .algnum import (
    AlgebraicNumber,
    NumberClass,
    _mul_boxes,
    an_conjugates,
    an_equal,
    an_from_poly_root,
    an_from_rational,
    an_inv,
    an_mul,
    an_neg,
    an_pow,
    an_rational_value,
    classify_number,
)
from .errors import (
    BoxAmbiguous,
    InternalPrecisionExceeded,
    NotAFixedPoint,
    TrichotomyViolation,
    ZeroInput,
)
from .intpoly import IntPoly, cyclotomic_part, monicize
from .roots import IsolatingBox, circle_partition, isolate_roots, refine

_X = IntPoly((0, 1))

DEFAULT_BUDGET = {"max_iters": 12, "max_degree": 512, "max_coeff_bits": 20000}

_EXPONENT_CAP = 64

# products over subsets of conjugates live on a resolvent of degree C(n, s);
# past this size the engine reports failure instead of grinding
_SUBSET_CAP = 1024


@dataclass(frozen=True)
class PowerIdentity:
    """M^k(a) = (M^l(a))^n with k > l >= 1, n >= 2."""

    k: int
    l: int
    n: int


@dataclass(frozen=True)
class TorsionFreePower:
    """M^k(a) = a^n with n >= 2 and a torsion-free."""

    k: int
    n: int


@dataclass(frozen=True)
class CitedGrowth:
    """Wandering by a cited growth theorem; facts list the equalities and
    inequalities that were verified exactly."""

    tag: str
    facts: tuple[str, ...] = ()


WanderCert = Union[PowerIdentity, TorsionFreePower, CitedGrowth]


@dataclass(frozen=True)
class Preperiodic:
    fixed_point: AlgebraicNumber
    number_class: NumberClass


@dataclass(frozen=True)
class Wandering:
    certificate: WanderCert


@dataclass(frozen=True)
class Inconclusive:
    reason: str


@dataclass(frozen=True)
class OrbitResult:
    trace: tuple[AlgebraicNumber, ...]
    verdict: Union[Preperiodic, Wandering, Inconclusive]


# ---------------------------------------------------------------------------
# the measure
#
# The product of s conjugates is computed on the subset-product resolvent:
# the monic integer polynomial whose roots are all s-fold products of roots
# of the monicized minpoly. Its power sums come from Newton's identities, so
# the construction is exact integer arithmetic end to end, and the degree is
# C(n, s) instead of the n^s a repeated-resultant fold would pay. When more
# than half the roots are outside, the complement product is used instead.


def _power_sums(g: IntPoly, m: int) -> list:
    """Power sums p_1..p_m of the roots of monic g (index 0 unused)."""
    n = g.degree
    e = [((-1) ** k) * g[n - k] for k in range(n + 1)]
    p = [0] * (m + 1)
    for k in range(1, m + 1):
        acc = ((-1) ** (k - 1)) * k * e[k] if k <= n else 0
        for i in range(1, min(k - 1, n) + 1):
            acc += ((-1) ** (i - 1)) * e[i] * p[k - i]
        p[k] = acc
    return p


def _elem_from_power_sums(p: list, m: int) -> list:
    """e_0..e_m from power sums p[1..m]; divisions must be exact."""
    e = [1] + [0] * m
    for k in range(1, m + 1):
        acc = 0
        for i in range(1, k + 1):
            acc += ((-1) ** (i - 1)) * e[k - i] * p[i]
        q, r = divmod(acc, k)
        assert r == 0, "power sums of algebraic integers"
        e[k] = q
    return e


def _subset_product_poly(g: IntPoly, s: int) -> IntPoly:
    """Monic polynomial whose roots are the products over every size-s
    subset of the roots of monic g, with multiplicity."""
    n = g.degree
    cnt = math.comb(n, s)
    ps = _power_sums(g, s * cnt)
    big = [0] * (cnt + 1)
    for k in range(1, cnt + 1):
        pk = [0] + [ps[j * k] for j in range(1, s + 1)]
        big[k] = _elem_from_power_sums(pk, s)[s]
    e = _elem_from_power_sums(big, cnt)
    coeffs = [0] * (cnt + 1)
    for k in range(cnt + 1):
        coeffs[cnt - k] = ((-1) ** k) * e[k]
    return IntPoly(tuple(coeffs))


def _product_enclosure(cur, idx, lc: int) -> IsolatingBox:
    enc = None
    for i in idx:
        b = cur[i]
        sb = IsolatingBox((lc * b.center[0], lc * b.center[1]), lc * b.radius)
        enc = sb if enc is None else _mul_boxes(enc, sb)
    return enc


def _disk_excludes_zero(h: IntPoly, box: IsolatingBox) -> bool:
    """Certified: h has no root inside the disk.

    Horner in fixed-point ball arithmetic at scale 2^128; every truncation
    is absorbed into the radius, so a True answer is exact."""
    S = 128
    def fix(fr: Fraction) -> int:
        return (fr.numerator << S) // fr.denominator

    bx, by = fix(box.center[0]), fix(box.center[1])
    br = fix(box.radius) + 2
    bmag = math.isqrt(bx * bx + by * by) + 1
    d = h.degree
    vx, vy, vr = h[d] << S, 0, 0
    for k in range(d - 1, -1, -1):
        nx = vx * bx - vy * by
        ny = vx * by + vy * bx
        nr = (math.isqrt(vx * vx + vy * vy) + 1) * br + bmag * vr + vr * br
        vx = (nx >> S) + (h[k] << S)
        vy = ny >> S
        vr = (nr >> S) + 4
    return vx * vx + vy * vy > vr * vr


def _candidate_minpolys(p: IntPoly, boxes, idx, lc: int, prec: int):
    """Minpoly guesses for prod_{i in idx} lc*root_i(p) via integer relations
    on a high-precision numeric value. Guesses only; callers must verify."""
    import mpmath as mp

    with mp.workprec(prec + 64):
        try:
            rts = mp.polyroots([mp.mpf(c) for c in reversed(p.coeffs)],
                               maxsteps=200, extraprec=prec // 2)
        except Exception:
            return
        t = mp.mpc(lc) ** len(idx)
        for i in idx:
            c = mp.mpc(mp.mpf(boxes[i].center[0].numerator) / mp.mpf(boxes[i].center[0].denominator),
                       mp.mpf(boxes[i].center[1].numerator) / mp.mpf(boxes[i].center[1].denominator))
            t *= min(rts, key=lambda r: abs(r - c))
        if abs(t.imag) > mp.mpf(2) ** (-prec // 2) * (1 + abs(t.real)):
            return
        tr = t.real
        pows = [mp.mpf(1)]
        # relations in degree d need roughly d * (coeff bits) working bits;
        # skip degrees this precision level cannot support
        for d in range(1, min(64, max(4, prec // 24)) + 1):
            pows.append(pows[-1] * tr)
            try:
                rel = mp.pslq(pows, maxcoeff=int(2 ** max(prec // 4, 64)), maxsteps=4000 + 200 * d)
            except Exception:
                continue
            if not rel or all(c == 0 for c in rel):
                continue
            resid = mp.fsum(rel[k] * pows[k] for k in range(d + 1))
            scale = max(abs(c) for c in rel) * max(1, abs(pows[d]))
            if abs(resid) <= scale * mp.mpf(2) ** (-prec // 3):
                yield IntPoly(tuple(rel))


def _verified_candidate(q, res, p, boxes, idx, lc):
    """Exact proof that irreducible q is the minpoly of the subset product:
    q | res, and the cofactor has no root in a certified enclosure of the
    product, which therefore must be the (unique) q-root it contains."""
    from .intpoly import canonicalize, div_z
    from .factor import is_irreducible

    q = canonicalize(q)
    if q.degree < 1:
        return None
    h = div_z(res, q)
    if h is None or not is_irreducible(q):
        return None
    cur = {i: boxes[i] for i in idx}
    for _ in range(40):
        enc = _product_enclosure(cur, idx, lc)
        if h.degree < 1 or _disk_excludes_zero(h, enc):
            try:
                return an_from_poly_root(q, enc)
            except BoxAmbiguous:
                pass
        cur = {i: refine(b, p, b.radius / 16) for i, b in cur.items()}
    return None


_DIRECT_FACTOR_CAP = 24


def _select_product_root(res: IntPoly, p: IntPoly, boxes, idx, lc: int) -> AlgebraicNumber:
    """The root of res equal to prod_{i in idx} lc*root_i(p), identified by a
    shrinking certified enclosure.

    Large res is never factored: a relation-guessed minpoly is proven exactly
    instead (divisibility plus disk exclusion of the cofactor)."""
    if res.degree > _DIRECT_FACTOR_CAP:
        for prec in (256, 512, 1024, 2048, 4096):
            for q in _candidate_minpolys(p, boxes, idx, lc, prec):
                got = _verified_candidate(q, res, p, boxes, idx, lc)
                if got is not None:
                    return got
        if res.degree > 64:
            raise InternalPrecisionExceeded(
                f"no verified minpoly for a degree-{res.degree} subset product")
    cur = {i: boxes[i] for i in idx}
    while True:
        try:
            return an_from_poly_root(res, _product_enclosure(cur, idx, lc))
        except BoxAmbiguous:
            cur = {i: refine(b, p, b.radius / 16) for i, b in cur.items()}


_measure_cache: dict = {}


def mahler_measure(a: AlgebraicNumber) -> AlgebraicNumber:
    """|lc| times the product of all conjugates outside the unit circle."""
    if a.minpoly == _X:
        raise ZeroInput("measure of zero")
    got = _measure_cache.get(a.minpoly)
    if got is None:
        got = _measure_uncached(a.minpoly)
        if len(_measure_cache) < 4096:
            _measure_cache[a.minpoly] = got
    return got


def _measure_uncached(p: IntPoly) -> AlgebraicNumber:
    # the measure depends only on the minimal polynomial, never on which
    # root was handed in, so conjugates share one cache entry
    n = p.degree
    lc = p.lc
    part = circle_partition(p)
    s = len(part.outside)
    if s == 0:
        return an_from_rational(lc)
    if s == n:
        return an_from_rational(abs(p[0]))
    size = min(s, n - s)
    if math.comb(n, size) > _SUBSET_CAP:
        raise InternalPrecisionExceeded(f"subset resolvent degree {math.comb(n, size)} over cap")
    boxes = isolate_roots(p)
    g, _ = monicize(p)
    if s <= n - s:
        w = _select_product_root(_subset_product_poly(g, s), p, boxes, part.outside, lc)
        denom = lc ** (s - 1)
        z = w if denom == 1 else an_mul(w, an_from_rational(Fraction(1, denom)))
    else:
        comp = tuple(i for i in range(n) if i not in part.outside)
        w = _select_product_root(_subset_product_poly(g, n - s), p, boxes, comp, lc)
        z = an_mul(an_inv(w), an_from_rational(p[0] * lc ** (n - s)))
    assert z.box.center[1] == 0, "measure must be real"
    if an_sign(z) < 0:
        z = an_neg(z)
    return z


def an_sign(a: AlgebraicNumber) -> int:
    """Sign of a real algebraic number."""
    if a.box.center[1] != 0:
        raise ValueError("sign of a non-real value")
    if a.minpoly == _X:
        return 0
    box = a.box
    while True:
        if box.center[0] - box.radius > 0:
            return 1
        if box.center[0] + box.radius < 0:
            return -1
        box = refine(box, a.minpoly, box.radius / 16)


def an_compare(a: AlgebraicNumber, b: AlgebraicNumber) -> int:
    """Exact three-way comparison of two real algebraic numbers."""
    if a.box.center[1] != 0 or b.box.center[1] != 0:
        raise ValueError("comparison of non-real values")
    if an_equal(a, b):
        return 0
    ba, bb = a.box, b.box
    while True:
        if ba.center[0] + ba.radius < bb.center[0] - bb.radius:
            return -1
        if bb.center[0] + bb.radius < ba.center[0] - ba.radius:
            return 1
        ba = refine(ba, a.minpoly, ba.radius / 16)
        bb = refine(bb, b.minpoly, bb.radius / 16)


# ---------------------------------------------------------------------------
# certificates


def _log2_abs(a: AlgebraicNumber) -> float:
    """Approximate log2 |a| from a box refined to 60 bits."""
    box = refine(a.box, a.minpoly, Fraction(1, 1 << 60))
    sq = box.center[0] ** 2 + box.center[1] ** 2
    if sq == 0:
        return float("-inf")
    num, den = sq.numerator, sq.denominator
    shift = num.bit_length() - den.bit_length()
    if shift >= 0:
        den <<= shift
    else:
        num <<= -shift
    return (shift + math.log2(num / den)) / 2.0


def _exponent_candidates(log_num: float, log_den: float) -> list[int]:
    if log_den < 1e-12:
        return []
    ratio = log_num / log_den
    base = round(ratio)
    return [n for n in (base - 1, base, base + 1) if 2 <= n <= _EXPONENT_CAP and abs(ratio - n) < 0.5]


def _is_root_of_unity(a: AlgebraicNumber) -> bool:
    if a.degree == 1:
        return an_rational_value(a) in (1, -1)
    return cyclotomic_part(a.minpoly) == a.minpoly


def _torsion_free(a: AlgebraicNumber) -> Optional[bool]:
    """True/False when decided; None when out of scope (degree > 6, not
    Perron). Torsion-free: no ratio a/conjugate is a root of unity."""
    nc = classify_number(a)
    if nc.tag in ("Pisot", "Salem", "Perron"):
        return True
    if nc.tag == "RootOfUnity":
        return False
    if a.degree == 1:
        return True
    if a.degree > 6:
        return None
    inv_a = an_inv(a)
    for conj in an_conjugates(a):
        if conj.box == a.box:
            continue
        if _is_root_of_unity(an_mul(conj, inv_a)):
            return False
    return True


def wandering_certificate(trace) -> Optional[WanderCert]:
    """First power-identity certificate in scan order, if any."""
    if len(trace) < 2:
        return None
    logs = [_log2_abs(t) for t in trace]
    for k in range(2, len(trace)):
        for l in range(1, k):
            for n in _exponent_candidates(logs[k], logs[l]):
                if an_equal(trace[k], an_pow(trace[l], n)):
                    return PowerIdentity(k, l, n)
    alpha = trace[0]
    tf: Optional[bool] = None
    for k in range(1, len(trace)):
        for n in _exponent_candidates(logs[k], abs(logs[0])):
            if an_equal(trace[k], an_pow(alpha, n)):
                if tf is None:
                    tf = _torsion_free(alpha)
                if tf:
                    return TorsionFreePower(k, n)
    return None


# ---------------------------------------------------------------------------
# orbits


def _assert_trichotomy(nc: NumberClass) -> NumberClass:
    if nc.tag not in ("RationalInteger", "Pisot", "Salem"):
        raise TrichotomyViolation(f"fixed point classified as {nc.tag}")
    return nc


def fixed_point_class(a: AlgebraicNumber) -> NumberClass:
    if not an_equal(mahler_measure(a), a):
        raise NotAFixedPoint("not a fixed point of the measure")
    return _assert_trichotomy(classify_number(a))


def orbit(a: AlgebraicNumber, budget: Optional[dict] = None) -> OrbitResult:
    if a.minpoly == _X:
        raise ZeroInput("orbit of zero")
    b = {**DEFAULT_BUDGET, **(budget or {})}
    trace = [a]
    try:
        while True:
            last = trace[-1]
            if last.minpoly.degree > b["max_degree"]:
                return OrbitResult(tuple(trace), Inconclusive("budget: max_degree exceeded"))
            if last.minpoly.max_coeff_bits() > b["max_coeff_bits"]:
                return OrbitResult(tuple(trace), Inconclusive("budget: max_coeff_bits exceeded"))
            if len(trace) - 1 >= b["max_iters"]:
                return OrbitResult(tuple(trace), Inconclusive("budget: max_iters exhausted"))
            m = mahler_measure(last)
            trace.append(m)
            if an_equal(m, last):
                return OrbitResult(tuple(trace), Preperiodic(m, _assert_trichotomy(classify_number(m))))
            cert = wandering_certificate(trace)
            if cert is not None:
                return OrbitResult(tuple(trace), Wandering(cert))
    except InternalPrecisionExceeded as e:
        return OrbitResult(tuple(trace), Inconclusive(f"precision: {e}"))
