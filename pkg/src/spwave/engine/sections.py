"""Associations between wavefront sections and boundary sections.

A wavefront section is an ordered list of bunches (``BHT``); a boundary
section is an ordered list of elements (``PointsLeaf``).  An element is
owned by the bunch that strikes it first.  ``assoc_a_to_b`` hands the
elements of A's run that B reaches first over to B, scanning from the
end of the run facing B; ``merge`` runs it for both sections and every
combination of orientations.
"""
import logging
from math import inf

from ..geom import make_bisector, GeomError
from ..hulltrees import min_strike, iintersect

log = logging.getLogger("spwave.engine")


class Association:
    """owner[i] = set of bunch ids owning element i of the boundary."""

    def __init__(self, elements):
        self.elements = list(elements)
        self.owner = {i: set() for i in range(len(self.elements))}
        self.stats = {"assoc_calls": 0, "binary_steps": 0, "monotone_violations": 0, "reassigned": 0}

    def rv(self, bid):
        return [i for i in range(len(self.elements)) if bid in self.owner[i]]

    def ws(self, i):
        return sorted(self.owner[i])

    def contiguous(self, bid):
        run = self.rv(bid)
        return all(b - a == 1 for a, b in zip(run, run[1:]))

    def exclusive(self):
        """At most one element is shared, and only between two bunches."""
        shared = [i for i, s in self.owner.items() if len(s) > 1]
        return all(len(self.owner[i]) <= 2 for i in shared)


def strike_radius(bunch, elem, d):
    delta, w = min_strike(bunch, elem, d)
    return d + delta if w is not None else inf


def _best(bunches, elem, d):
    best = (inf, None)
    for b in bunches:
        r = strike_radius(b, elem, d)
        if r < best[0]:
            best = (r, b)
    return best


def assoc_a_to_b(A, B, assoc, d, order=None, check=True):
    """Move to B the elements of A's run that B strikes no later than A.

    ``order`` lists element indices starting from the end of the run that
    faces B.  The first element that stays with A ends the scan; the
    position of that element is found by binary search (the ownership
    predicate is monotone along the run when both sections are
    contiguous), optionally verified by a linear pass.
    Returns the list of reassigned element indices.
    """
    assoc.stats["assoc_calls"] += 1
    if not A or not B:
        return []
    aid = {b.id for b in A}
    run = [i for i in (order if order is not None else range(len(assoc.elements)))
           if assoc.owner[i] & aid or not assoc.owner[i]]
    if not run:
        return []
    memo = {}

    def goes_to_b(k):
        if k not in memo:
            e = assoc.elements[run[k]]
            ra, _ = _best(A, e, d)
            rb, bb = _best(B, e, d)
            memo[k] = (rb < ra, bb, ra, rb)
        return memo[k][0]

    lo, hi = 0, len(run)
    while lo < hi:
        assoc.stats["binary_steps"] += 1
        mid = (lo + hi) // 2
        if goes_to_b(mid):
            lo = mid + 1
        else:
            hi = mid
    cut = lo
    if check:
        flags = [goes_to_b(k) for k in range(len(run))]
        if flags != [True] * cut + [False] * (len(run) - cut):
            assoc.stats["monotone_violations"] += 1
            log.debug("association predicate not monotone at d=%.6g; using a linear scan", d)
            cut = None
    moved = []
    if cut is None:
        ks = [k for k in range(len(run)) if goes_to_b(k)]
    else:
        ks = list(range(cut))
    for k in ks:
        i = run[k]
        bb = memo[k][1]
        assoc.owner[i] = {bb.id}
        moved.append(i)
    assoc.stats["reassigned"] += len(moved)
    # the first element kept by A may be shared along the I-curve
    if cut is not None and cut < len(run) and cut > 0:
        k = cut
        e = assoc.elements[run[k]]
        _, ba = _best(A, e, d)
        bb = memo[k - 1][1] if (k - 1) in memo else _best(B, assoc.elements[run[k - 1]], d)[1]
        if ba is not None and bb is not None and _crosses(ba, bb, e, d):
            assoc.owner[run[k]] = {ba.id, bb.id}
    return moved


def _crosses(ba, bb, elem, d):
    """Whether the bisector between the nearest sites of two bunches hits elem."""
    ra, wa = min_strike(ba, elem, d)
    rb, wb = min_strike(bb, elem, d)
    if wa is None or wb is None:
        return False
    la, lb = wa[0].arc, wb[0].arc
    try:
        bis = make_bisector((la.center, la.weight), (lb.center, lb.weight))
    except GeomError:
        return False
    return iintersect(bis, [elem]) is not None


def merge(SW1, SW2, assoc, d, check=True):
    """Combine two wavefront sections over one boundary section.

    Eight directed invocations (each section against the other, each
    possibly reversed) followed by a final proximity pass that catches
    anything the contiguity assumption missed.
    """
    n = len(assoc.elements)
    fwd, rev = list(range(n)), list(range(n - 1, -1, -1))
    for X, Y in ((SW1, SW2), (SW2, SW1)):
        for o in (fwd, rev):
            for Yo in (Y, list(reversed(Y))):
                assoc_a_to_b(X, Yo, assoc, d, order=o, check=check)
    # elements nobody owns yet and any residual disagreement
    everyone = list(SW1) + list(SW2)
    fixes = 0
    for i, e in enumerate(assoc.elements):
        r, b = _best(everyone, e, d)
        if b is None:
            continue
        cur = [x for x in everyone if x.id in assoc.owner[i]]
        if not cur or min(strike_radius(x, e, d) for x in cur) > r + 1e-9:
            assoc.owner[i] = {b.id}
            fixes += 1
    assoc.stats["final_fixes"] = assoc.stats.get("final_fixes", 0) + fixes
    return assoc
