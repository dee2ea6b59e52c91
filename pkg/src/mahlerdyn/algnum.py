"""Exact algebraic numbers: a canonical minimal polynomial plus one certified
root box, with multiplicative arithmetic and Perron/Pisot/Salem
classification.

Every constructor funnels through factor selection against canonical root
boxes, so two equal values always carry identical (minpoly, box) pairs.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional

from .errors import (
    BoxAmbiguous,
    InternalPrecisionExceeded,
    NotIrreducible,
    ZeroInput,
    ZeroPolynomial,
)
from .factor import factor_z, is_irreducible
from .intpoly import (
    IntPoly,
    canonicalize,
    cyclotomic_part,
    from_rational,
    from_text,
    power_map,
    product_resolvent,
    ratio_resolvent,
    squarefree_part,
    to_text,
)
from .roots import (
    IsolatingBox,
    _disjoint,
    _sqrt_upper,
    circle_partition,
    isolate_roots,
    refine,
)

_ZERO = Fraction(0)
_X = IntPoly((0, 1))


@dataclass(frozen=True)
class AlgebraicNumber:
    minpoly: IntPoly  # canonical irreducible
    box: IsolatingBox  # certified for minpoly

    @property
    def degree(self) -> int:
        return self.minpoly.degree

    def __repr__(self) -> str:
        cx, cy = self.box.center
        return f"AlgebraicNumber({to_text(self.minpoly)!r} ~ {float(cx):.6g}{float(cy):+.6g}j)"


@dataclass(frozen=True)
class NumberClass:
    tag: str  # Rational | RationalInteger | RootOfUnity | Perron | Pisot | Salem | Other
    extra: Optional[dict] = None


# ---------------------------------------------------------------------------
# construction


def _canonical_at(q: IntPoly, idx: int) -> AlgebraicNumber:
    return AlgebraicNumber(q, isolate_roots(q)[idx])


def an_from_rational(v) -> AlgebraicNumber:
    v = Fraction(v)
    return _canonical_at(from_rational(v), 0)


def an_from_poly_root(p: IntPoly, box: IsolatingBox) -> AlgebraicNumber:
    """Canonical representative of the root of p isolated by box.

    Factors p, picks the irreducible factor owning the boxed root, and
    re-isolates within that factor.
    """
    if p.is_zero:
        raise ZeroPolynomial("an_from_poly_root of zero polynomial")
    sq = squarefree_part(p)
    if sq.degree < 1:
        raise BoxAmbiguous("polynomial has no roots")
    cands = []
    for q, _ in factor_z(sq).factors:
        for idx, qb in enumerate(isolate_roots(q)):
            cands.append((q, idx, qb))
    cur = box
    try:
        while True:
            cands = [(q, i, qb) for q, i, qb in cands if not _disjoint(cur, qb)]
            if len(cands) == 1:
                q, idx, _ = cands[0]
                return _canonical_at(q, idx)
            if not cands:
                raise BoxAmbiguous("box isolates no root of the polynomial")
            cur = refine(cur, sq, cur.radius / 16)
            cands = [(q, i, refine(qb, q, qb.radius / 16)) for q, i, qb in cands]
    except InternalPrecisionExceeded as e:
        raise BoxAmbiguous(f"certification failed at precision cap: {e}") from e


def root_index(a: AlgebraicNumber) -> int:
    """Index of a's root in the canonical ordering of its minpoly's roots."""
    boxes = isolate_roots(a.minpoly)
    if a.box in boxes:
        return boxes.index(a.box)
    hits = [i for i, b in enumerate(boxes) if not _disjoint(a.box, b)]
    cur = a.box
    while len(hits) > 1:
        cur = refine(cur, a.minpoly, cur.radius / 16)
        hits = [i for i in hits if not _disjoint(cur, boxes[i])]
    assert hits
    return hits[0]


def an_conjugates(a: AlgebraicNumber) -> list[AlgebraicNumber]:
    return [AlgebraicNumber(a.minpoly, b) for b in isolate_roots(a.minpoly)]


def an_serialize(a: AlgebraicNumber) -> dict:
    return {"minpoly": to_text(a.minpoly), "root_index": root_index(a)}


def an_deserialize(obj: dict) -> AlgebraicNumber:
    p = from_text(obj["minpoly"])
    if not is_irreducible(p):
        raise NotIrreducible("serialized minpoly must be canonical irreducible")
    boxes = isolate_roots(p)
    idx = int(obj["root_index"])
    if not 0 <= idx < len(boxes):
        raise ValueError("root_index out of range")
    return AlgebraicNumber(p, boxes[idx])


# ---------------------------------------------------------------------------
# rational views


def an_is_rational(a: AlgebraicNumber) -> bool:
    return a.degree == 1


def an_rational_value(a: AlgebraicNumber) -> Fraction:
    if a.degree != 1:
        raise ValueError("not a rational value")
    return Fraction(-a.minpoly[0], a.minpoly[1])


# ---------------------------------------------------------------------------
# enclosure plumbing


def _select_by_enclosure(p: IntPoly, enclosures: Iterator[IsolatingBox]) -> AlgebraicNumber:
    """Resolve the target value (a root of p) from a shrinking enclosure
    stream; the stream is advanced until the enclosure pins a single root."""
    sq = squarefree_part(p)
    pboxes = list(isolate_roots(sq))
    for box in enclosures:
        hits = [i for i, pb in enumerate(pboxes) if not _disjoint(box, pb)]
        assert hits, "enclosure lost its root"
        if len(hits) == 1:
            return an_from_poly_root(sq, pboxes[hits[0]])
        for i in hits:
            pboxes[i] = refine(pboxes[i], sq, pboxes[i].radius / 16)
    raise InternalPrecisionExceeded("enclosure stream exhausted")


def _abs_upper(box: IsolatingBox, bits: int = 64) -> Fraction:
    return _sqrt_upper(box.center[0] ** 2 + box.center[1] ** 2, bits) + box.radius


def _mul_boxes(a: IsolatingBox, b: IsolatingBox) -> IsolatingBox:
    ax, ay = a.center
    bx, by = b.center
    center = (ax * bx - ay * by, ax * by + ay * bx)
    amag = _sqrt_upper(ax * ax + ay * ay, 64)
    bmag = _sqrt_upper(bx * bx + by * by, 64)
    radius = amag * b.radius + bmag * a.radius + a.radius * b.radius
    if radius == 0:
        radius = Fraction(1, 1 << 80)
    return IsolatingBox(center, radius, 1)


def _inv_box(b: IsolatingBox) -> IsolatingBox:
    """Exact image of a disk not containing 0 under z -> 1/z."""
    cx, cy = b.center
    den = cx * cx + cy * cy - b.radius * b.radius
    assert den > 0
    return IsolatingBox((cx / den, -cy / den), b.radius / den, 1)


# ---------------------------------------------------------------------------
# arithmetic


def an_mul(a: AlgebraicNumber, b: AlgebraicNumber) -> AlgebraicNumber:
    if a.degree == 1:
        a, b = b, a
    if b.degree == 1:
        r = an_rational_value(b)
        if a.degree == 1:
            return an_from_rational(an_rational_value(a) * r)
        if r == 0:
            return an_from_rational(0)
        # scale: roots of h are r * (roots of minpoly)
        u, v = r.numerator, r.denominator
        d = a.degree
        h = canonicalize(IntPoly([a.minpoly[i] * v**i * u ** (d - i) for i in range(d + 1)]))
        cx, cy = a.box.center
        scaled = IsolatingBox((cx * r, cy * r), a.box.radius * abs(r), 1)
        return an_from_poly_root(h, scaled)
    res = product_resolvent(a.minpoly, b.minpoly)

    def stream() -> Iterator[IsolatingBox]:
        ab, bb = a.box, b.box
        while True:
            yield _mul_boxes(ab, bb)
            ab = refine(ab, a.minpoly, ab.radius / 16)
            bb = refine(bb, b.minpoly, bb.radius / 16)

    return _select_by_enclosure(res, stream())


def an_inv(a: AlgebraicNumber) -> AlgebraicNumber:
    if a.minpoly == _X:
        raise ZeroInput("inverse of zero")
    if a.degree == 1:
        return an_from_rational(1 / an_rational_value(a))
    rev = canonicalize(a.minpoly.reversal())
    box = a.box
    while box.center[0] ** 2 + box.center[1] ** 2 <= box.radius ** 2:
        box = refine(box, a.minpoly, box.radius / 16)
    return an_from_poly_root(rev, _inv_box(box))


def an_neg(a: AlgebraicNumber) -> AlgebraicNumber:
    return an_mul(a, an_from_rational(-1))


def an_pow(a: AlgebraicNumber, n: int) -> AlgebraicNumber:
    if n < 1:
        raise ValueError("exponent must be a positive integer")
    if n == 1:
        return a
    if a.degree == 1:
        return an_from_rational(an_rational_value(a) ** n)
    pn = power_map(a.minpoly, n)

    def stream() -> Iterator[IsolatingBox]:
        box = a.box
        while True:
            cx, cy = box.center
            px, py = Fraction(1), _ZERO
            for _ in range(n):
                px, py = px * cx - py * cy, px * cy + py * cx
            mag = _sqrt_upper(cx * cx + cy * cy, 64)
            radius = n * (mag + box.radius) ** (n - 1) * box.radius
            if radius == 0:
                radius = Fraction(1, 1 << 80)
            yield IsolatingBox((px, py), radius, 1)
            box = refine(box, a.minpoly, box.radius / 16)

    return _select_by_enclosure(pn, stream())


def an_equal(a: AlgebraicNumber, b: AlgebraicNumber) -> bool:
    if a.minpoly != b.minpoly:
        return False
    if a.box == b.box:
        return True
    # Mahler's root separation: sep^2 > 3 n^-(n+2) ||f||_2^-2(n-1)
    f = a.minpoly
    n = f.degree
    if n == 1:
        return True
    norm_sq = sum(c * c for c in f.coeffs)
    sep_sq = Fraction(3, n ** (n + 2) * norm_sq ** (n - 1))
    # dyadic eps with eps <= sep/4
    need = Fraction(16) / sep_sq  # (4/sep)^2
    bits = (need.numerator // need.denominator + 1).bit_length() // 2 + 2
    eps = Fraction(1, 1 << bits)
    ra = refine(a.box, f, eps)
    rb = refine(b.box, f, eps)
    return not _disjoint(ra, rb)


# ---------------------------------------------------------------------------
# classification


def _refine_sign(a: AlgebraicNumber) -> int:
    """Sign of a real algebraic number (box center on the real axis)."""
    box = a.box
    while True:
        c, r = box.center[0], box.radius
        if c - r > 0:
            return 1
        if c + r < 0:
            return -1
        box = refine(box, a.minpoly, box.radius / 16)


def _ratio_on_unit_circle(p: IntPoly, num: IsolatingBox, den: IsolatingBox) -> str:
    """Exact status of (root in num)/(root in den) against the unit circle,
    both roots of the irreducible p: 'in', 'on', or 'out'."""
    g = squarefree_part(ratio_resolvent(p, p))
    gboxes = list(isolate_roots(g))
    part = circle_partition(g)
    status = {}
    for i in part.outside:
        status[i] = "out"
    for i in part.on:
        status[i] = "on"
    for i in part.inside:
        status[i] = "in"
    nb, db = num, den
    while True:
        while db.center[0] ** 2 + db.center[1] ** 2 <= db.radius ** 2:
            db = refine(db, p, db.radius / 16)
        ratio = _mul_boxes(nb, _inv_box(db))
        hits = [i for i, gb in enumerate(gboxes) if not _disjoint(ratio, gb)]
        assert hits
        if len(hits) == 1:
            return status[hits[0]]
        for i in hits:
            gboxes[i] = refine(gboxes[i], g, gboxes[i].radius / 16)
        nb = refine(nb, p, nb.radius / 16)
        db = refine(db, p, db.radius / 16)


def _strictly_dominates(p: IntPoly, abox: IsolatingBox, bbox: IsolatingBox) -> bool:
    """Whether the positive real root in abox strictly exceeds |root in bbox|."""
    for _ in range(6):
        lower = abox.center[0] - abox.radius
        if lower > _abs_upper(bbox):
            return True
        bx, by = bbox.center
        mag_lo = _sqrt_upper(bx * bx + by * by, 64) - Fraction(1, 1 << 32) - bbox.radius
        if mag_lo > abox.center[0] + abox.radius:
            return False
        abox = refine(abox, p, abox.radius / 16)
        bbox = refine(bbox, p, bbox.radius / 16)
    # moduli may be exactly equal; settle it algebraically
    return _ratio_on_unit_circle(p, bbox, abox) == "in"


def _rou_order(p: IntPoly) -> int:
    """Multiplicative order for a cyclotomic minpoly: least k with x^k = 1."""
    rem = [0, 1]  # x^1 mod p, constant first
    d = p.degree
    for k in range(2, 8 * d * d + 8):
        rem = [0] + rem
        while len(rem) > d:
            lead = rem[-1]
            rem = [c - lead * p[i] for i, c in enumerate(rem[:-1])]
        if rem[0] == 1 and all(c == 0 for c in rem[1:]):
            return k
    raise AssertionError("unreachable: cyclotomic order out of bound")


def classify_number(a: AlgebraicNumber) -> NumberClass:
    p = a.minpoly
    if a.degree == 1:
        v = an_rational_value(a)
        tag = "RationalInteger" if v.denominator == 1 else "Rational"
        return NumberClass(tag, {"value": str(v)})
    if cyclotomic_part(p) == p:
        return NumberClass("RootOfUnity", {"order": _rou_order(p)})
    if a.box.center[1] != 0:
        return NumberClass("Other", {"reason": "not real"})
    if _refine_sign(a) < 0:
        return NumberClass("Other", {"reason": "negative"})
    if p.lc != 1:
        return NumberClass("Other", {"reason": "not an algebraic integer"})
    boxes = isolate_roots(p)
    idx = root_index(a)
    part = circle_partition(p)
    counts = {
        "root_index": idx,
        "outside": len(part.outside),
        "on": len(part.on),
        "inside": len(part.inside),
    }
    if idx not in part.outside:
        return NumberClass("Other", {"reason": "not dominant", **counts})
    for j in part.outside:
        if j == idx:
            continue
        if not _strictly_dominates(p, boxes[idx], boxes[j]):
            return NumberClass("Other", {"reason": "not dominant", **counts})
    if len(part.outside) > 1:
        return NumberClass("Perron", counts)
    if part.on:
        return NumberClass("Salem", counts)
    return NumberClass("Pisot", counts)
