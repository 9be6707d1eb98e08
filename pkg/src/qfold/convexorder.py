"""Convex orders on positive roots and a brute-force convexity checker.

Two constructions are provided: the slope order attached to an injective
linear functional h (alpha < beta iff h(alpha)/ht(alpha) < h(beta)/ht(beta))
and the order adapted to a reduced word, which puts the inversion chain
beta_1 < ... < beta_l first, the complement of the inversion set above it,
and orders the complement by a separating slope functional that is negative
exactly on the inversion set.

The checker verifies the two cone-separation axioms of a convex (pre)order
on a finite root set by exhaustive small-coefficient search; it is meant as
an independent oracle, not an efficient algorithm.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .rootdata import Root, apply_word, inversion_roots, is_reduced, positive_roots


class ConvexOrderError(ValueError):
    pass


class FunctionalTieError(ConvexOrderError):
    """The functional fails to separate two distinct roots."""


@dataclass(frozen=True)
class ConvexityViolation:
    condition: int
    pivot: Root
    multiple: int
    combination: tuple          # (root, coefficient) pairs forming x
    target_side: tuple          # generators of the cone that absorbed pivot*m + x

    def __str__(self):
        combo = " + ".join("%d*%s" % (c, r.coords) for r, c in self.combination)
        return ("condition %d fails at %s: %d*pivot + %s lies in the opposite cone"
                % (self.condition, self.pivot.coords, self.multiple, combo))


class ConvexOrder:
    """A total-order comparator on positive roots with provenance."""

    def __init__(self, datum, kind, slope_key=None, chain=None, functional=None):
        self.datum = datum
        self.kind = kind
        self._slope_key = slope_key
        self.chain = tuple(chain) if chain else None
        self.functional = tuple(functional) if functional is not None else None
        self._chain_pos = ({r: k for k, r in enumerate(chain)} if chain else {})

    def compare(self, a: Root, b: Root) -> int:
        if a == b:
            return 0
        in_a, in_b = a in self._chain_pos, b in self._chain_pos
        if in_a and in_b:
            return -1 if self._chain_pos[a] < self._chain_pos[b] else 1
        if in_a:
            return -1
        if in_b:
            return 1
        ka, kb = self._slope_key(a), self._slope_key(b)
        if ka == kb:
            raise FunctionalTieError(
                "functional not injective: roots %s and %s share slope %s"
                % (a.coords, b.coords, ka))
        return -1 if ka < kb else 1

    def sort(self, roots):
        import functools
        return sorted(roots, key=functools.cmp_to_key(self.compare))


def _slope(h, root):
    value = sum(Fraction(hc) * c for hc, c in zip(h, root.coords))
    return value / root.height()


def order_from_functional(datum, h) -> ConvexOrder:
    """Slope order from a rational functional given on the simple roots.

    Injectivity is checked lazily; a tie between distinct roots raises
    FunctionalTieError at comparison time.
    """
    h = tuple(Fraction(x) for x in h)
    if len(h) != datum.rank:
        raise ValueError("functional length does not match rank")
    return ConvexOrder(datum, "functional",
                       slope_key=lambda r: _slope(h, r), functional=h)


def order_from_word(datum, word) -> ConvexOrder:
    """The convex order adapted to a reduced word.

    Inside the inversion set the order is the beta-chain; the inversion set
    sits below its complement; the complement carries the slope order of a
    functional h with h < 0 on the inversion set and h > 0 on the rest.
    Such an h is found as g(w(.)) for a generic positive g, retrying the
    perturbation until the slopes separate all positive roots.
    """
    word = tuple(word)
    if not is_reduced(datum, word):
        raise ConvexOrderError("word %r is not reduced" % (word,))
    chain = inversion_roots(datum, word)
    allpos = positive_roots(datum)
    rng = random.Random(1729)
    for _ in range(50):
        g = [Fraction(1) + Fraction(rng.randint(1, 10 ** 6), 10 ** 7)
             for _ in range(datum.rank)]
        h = _pullback_through_word(datum, word, g)
        slopes = [_slope(h, r) for r in allpos]
        if len(set(slopes)) == len(allpos):
            return ConvexOrder(datum, "word",
                               slope_key=lambda r, h=h: _slope(h, r),
                               chain=chain, functional=h)
    raise ConvexOrderError("could not find an injective separating functional")


def _pullback_through_word(datum, word, g):
    """Coordinates of beta -> g(w^-1(beta)) as a functional on the simple roots.

    The chain roots beta_k = s_{i1}...s_{i_{k-1}} alpha_{i_k} are exactly the
    positive roots sent negative by w^-1, so this pullback of a positive
    generic g is negative precisely on the chain set.
    """
    inverse = tuple(reversed(tuple(word)))
    h = []
    for i in datum.indices:
        image = apply_word(inverse, datum.simple_root(i))
        h.append(sum(gc * c for gc, c in zip(g, image.coords)))
    return h


def order_from_chain(datum, roots) -> ConvexOrder:
    """An explicit order given by a full list (useful as a negative control)."""

    def missing(root):
        raise ConvexOrderError("root %s not in the explicit chain" % (root.coords,))

    return ConvexOrder(datum, "explicit", chain=list(roots), slope_key=missing)


def _in_nonneg_span(target, generators, memo):
    """Exact membership of an integer vector in the Z>=0-span of root vectors."""
    key = target
    if key in memo:
        return memo[key]
    if all(c == 0 for c in target):
        memo[key] = True
        return True
    if any(c < 0 for c in target):
        memo[key] = False
        return False
    for gen in generators:
        nxt = tuple(t - gc for t, gc in zip(target, gen))
        if all(c >= 0 for c in nxt) and _in_nonneg_span(nxt, generators, memo):
            memo[key] = True
            return True
    memo[key] = False
    return False


def _bounded_combinations(generators, bound):
    """Nonzero Z>=0-combinations of the generators with coefficient sum <= bound."""
    gens = list(generators)

    def rec(idx, remaining):
        if idx == len(gens):
            yield ()
            return
        for c in range(remaining + 1):
            for rest in rec(idx + 1, remaining - c):
                yield (c,) + rest

    for coeffs in rec(0, bound):
        if any(coeffs):
            vec = tuple(sum(c * g[k] for c, g in zip(coeffs, gens))
                        for k in range(len(gens[0]) if gens else 0))
            yield coeffs, vec


def check_convexity(order: ConvexOrder, roots, bound=None):
    """Search for a violation of the two convexity axioms on a finite root set.

    For every pivot root the integer cone of the roots strictly above it
    must not reach back (after adding a multiple of the pivot) into the cone
    of the roots below it, and symmetrically.  Coefficients are bounded by
    the maximal height in the test set (desk scale only).  Returns None if
    no violation is found, otherwise a ConvexityViolation witness.
    """
    roots = list(roots)
    if not roots:
        return None
    if bound is None:
        bound = max(r.height() for r in roots)
    for pivot in roots:
        above = [r for r in roots if order.compare(r, pivot) > 0]
        below_eq = [r for r in roots if order.compare(r, pivot) <= 0]
        below = [r for r in roots if order.compare(r, pivot) < 0]
        above_eq = [r for r in roots if order.compare(r, pivot) >= 0]
        for condition, x_side, cone_side in (
                (1, above, below_eq), (2, below, above_eq)):
            if not x_side:
                continue
            memo = {}
            cone_vecs = [r.coords for r in cone_side]
            for coeffs, vec in _bounded_combinations([r.coords for r in x_side],
                                                     bound):
                for mult in range(bound + 1):
                    total = tuple(v + mult * p
                                  for v, p in zip(vec, pivot.coords))
                    if _in_nonneg_span(total, cone_vecs, memo):
                        witness = tuple((r, c) for r, c in zip(x_side, coeffs) if c)
                        return ConvexityViolation(
                            condition, pivot, mult, witness,
                            tuple(r.coords for r in cone_side))
    return None
