"""Quantum cluster calculus: compatible pairs, the based quantum torus,
normalized monomials, seed mutation and exchange-graph enumeration.

A compatible pair is a skew-symmetric integer matrix Lambda over a vertex
set S together with an exchange matrix B (rows S, columns the exchangeable
vertices) with Lambda B = -2E for a diagonal E positive exactly on the
exchangeable diagonal.  Cluster variables live in the based quantum torus
of the *initial* Lambda throughout; mutation divides inside that torus, so
the Laurent phenomenon is exercised on every step.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .laurent import ONE, ZERO, LaurentScalar
from .rootdata import Root, bilinear_form


class CompatibilityError(ValueError):
    def __init__(self, message, entry=None, value=None):
        super().__init__(message)
        self.entry = entry
        self.value = value


@dataclass(frozen=True)
class CompatiblePair:
    """(Lambda, B) over ordered labels S with exchangeable subset ex."""

    labels: tuple
    exchangeable: tuple
    lam: tuple     # S x S skew-symmetric
    b: tuple       # S x ex

    def __post_init__(self):
        object.__setattr__(self, "labels", tuple(self.labels))
        object.__setattr__(self, "exchangeable", tuple(self.exchangeable))
        object.__setattr__(self, "lam", tuple(tuple(r) for r in self.lam))
        object.__setattr__(self, "b", tuple(tuple(r) for r in self.b))
        m = len(self.labels)
        if len(self.lam) != m or any(len(r) != m for r in self.lam):
            raise ValueError("Lambda shape does not match labels")
        if len(self.b) != m or any(len(r) != len(self.exchangeable)
                                   for r in self.b):
            raise ValueError("B shape does not match labels/exchangeables")
        if any(x not in self.labels for x in self.exchangeable):
            raise ValueError("exchangeable labels outside S")
        for r in range(m):
            for c in range(m):
                if self.lam[r][c] != -self.lam[c][r]:
                    raise ValueError("Lambda is not skew-symmetric")

    def pos(self, label):
        return self.labels.index(label)

    def ex_pos(self, label):
        return self.exchangeable.index(label)

    def lam_entry(self, s, t):
        return self.lam[self.pos(s)][self.pos(t)]

    def b_entry(self, s, t):
        return self.b[self.pos(s)][self.ex_pos(t)]


def check_compatible(pair: CompatiblePair):
    """Verify Lambda B = -2E; returns {exchangeable label: e > 0}.

    Raises CompatibilityError naming the first failing entry.
    """
    m = len(pair.labels)
    e = {}
    for r in range(m):
        for c, t in enumerate(pair.exchangeable):
            value = sum(pair.lam[r][i] * pair.b[i][c] for i in range(m))
            if pair.labels[r] == t:
                if value >= 0 or value % 2:
                    raise CompatibilityError(
                        "diagonal entry for %r is %d, expected negative even"
                        % (t, value), entry=(pair.labels[r], t), value=value)
                e[t] = -value // 2
            elif value != 0:
                raise CompatibilityError(
                    "off-diagonal entry (%r, %r) is %d, expected 0"
                    % (pair.labels[r], t, value),
                    entry=(pair.labels[r], t), value=value)
    return e


def mutate_pair(pair: CompatiblePair, k) -> CompatiblePair:
    """Mutation of a compatible pair in an exchangeable direction.

    B mutates by the standard matrix-mutation rule (the last factor is
    |b_kj|; the printed rule with |b_ij| fails involutivity).  Lambda
    mutates by lambda'_kt = -lambda_kt + sum_i max(b_ik, 0) lambda_it,
    extended by skew-symmetry; both preserve compatibility with the same E.
    """
    if k not in pair.exchangeable:
        raise KeyError("direction %r is not exchangeable" % (k,))
    m = len(pair.labels)
    kp = pair.pos(k)
    kc = pair.ex_pos(k)
    lam = [list(row) for row in pair.lam]
    new_row = []
    for t in range(m):
        if t == kp:
            new_row.append(0)
            continue
        value = -pair.lam[kp][t]
        for i in range(m):
            bik = pair.b[i][kc]
            if bik > 0:
                value += bik * pair.lam[i][t]
        new_row.append(value)
    for t in range(m):
        lam[kp][t] = new_row[t]
        lam[t][kp] = -new_row[t]
    b = [list(row) for row in pair.b]
    for i in range(m):
        for c in range(len(pair.exchangeable)):
            j = pair.pos(pair.exchangeable[c])
            if i == kp or j == kp:
                b[i][c] = -pair.b[i][c]
            else:
                bik = pair.b[i][kc]
                bkj = pair.b[kp][c]
                b[i][c] = pair.b[i][c] + (abs(bik) * bkj + bik * abs(bkj)) // 2
    return CompatiblePair(pair.labels, pair.exchangeable, lam, b)


# ---------------------------------------------------------------------------
# The based quantum torus
# ---------------------------------------------------------------------------


class TorusDivisionError(ArithmeticError):
    pass


@dataclass(frozen=True)
class QuantumTorus:
    """Ambient torus data: ordered labels, commutation matrix, and the
    degree pairing (d_i, d_j) of the generators in the ambient graded
    algebra (zero when the torus is used without a grading)."""

    labels: tuple
    lam: tuple
    degree_pairing: tuple = None

    def __post_init__(self):
        if self.degree_pairing is None:
            m = len(self.labels)
            object.__setattr__(self, "degree_pairing",
                               tuple((0,) * m for _ in range(m)))

    def sigma(self, a, b):
        """Reordering exponent: X^a X^b = q^sigma(a,b) X^(a+b)."""
        total = 0
        for i in range(len(self.labels)):
            if not a[i]:
                continue
            for j in range(i):
                if b[j]:
                    total += self.lam[i][j] * a[i] * b[j]
        return total

    def bar_twist(self, a):
        """Exponent of q picked up by the bar involution on X^a.

        The ambient bar satisfies bar(AB) = q^{(deg A, deg B)} bar(B) bar(A),
        so reversing the ordered monomial contributes the degree pairing of
        every factor pair, and restoring canonical order contributes
        sigma(a, a).
        """
        total = self.sigma(a, a)
        g = self.degree_pairing
        for i in range(len(a)):
            if not a[i]:
                continue
            total += g[i][i] * (a[i] * (a[i] - 1) // 2)
            for j in range(i):
                total += g[i][j] * a[i] * a[j]
        return total

    def element(self, terms) -> "TorusElement":
        return TorusElement(self, terms)

    def generator(self, label) -> "TorusElement":
        exp = [0] * len(self.labels)
        exp[self.labels.index(label)] = 1
        return TorusElement(self, {tuple(exp): ONE})

    def unit(self) -> "TorusElement":
        return TorusElement(self, {(0,) * len(self.labels): ONE})


@dataclass(frozen=True)
class TorusElement:
    """A Laurent element of the based quantum torus, stored on the ordered
    monomial basis X_1^{a_1} ... X_m^{a_m}."""

    torus: QuantumTorus
    terms: dict

    def __post_init__(self):
        object.__setattr__(
            self, "terms",
            {tuple(int(x) for x in k): v for k, v in self.terms.items() if v})

    def is_zero(self):
        return not self.terms

    def is_monomial(self):
        return len(self.terms) == 1

    def __add__(self, other):
        acc = dict(self.terms)
        for k, v in other.terms.items():
            s = acc.get(k, ZERO) + v
            if s:
                acc[k] = s
            else:
                acc.pop(k, None)
        return TorusElement(self.torus, acc)

    def __sub__(self, other):
        return self + other.scale(-ONE)

    def scale(self, scalar) -> "TorusElement":
        scalar = scalar if isinstance(scalar, LaurentScalar) \
            else LaurentScalar.from_rational(scalar)
        return TorusElement(self.torus,
                            {k: v * scalar for k, v in self.terms.items()})

    def __mul__(self, other) -> "TorusElement":
        acc = {}
        for a, ca in self.terms.items():
            for b, cb in other.terms.items():
                key = tuple(x + y for x, y in zip(a, b))
                c = ca * cb * LaurentScalar.q_power(self.torus.sigma(a, b))
                s = acc.get(key, ZERO) + c
                if s:
                    acc[key] = s
                else:
                    acc.pop(key, None)
        return TorusElement(self.torus, acc)

    def __pow__(self, n: int) -> "TorusElement":
        if n < 0:
            return self.inverse() ** (-n)
        result = self.torus.unit()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def inverse(self) -> "TorusElement":
        if not self.is_monomial():
            raise TorusDivisionError("only monomials invert inside the torus")
        (exp, coeff), = self.terms.items()
        neg = tuple(-x for x in exp)
        c = ONE.divexact(coeff) * LaurentScalar.q_power(-self.torus.sigma(exp, neg))
        return TorusElement(self.torus, {neg: c})

    def leading(self):
        exp = max(self.terms)
        return exp, self.terms[exp]

    def bar(self) -> "TorusElement":
        """The bar involution of the ambient graded algebra, restricted to
        the torus: bar(q) = q^{-1}, bar(X_i) = X_i, and the twisted
        anti-multiplicativity bar(AB) = q^{(deg A, deg B)} bar(B) bar(A).
        """
        return TorusElement(
            self.torus,
            {a: c.bar() * LaurentScalar.q_power(self.torus.bar_twist(a))
             for a, c in self.terms.items()})

    def __eq__(self, other):
        if not isinstance(other, TorusElement):
            return NotImplemented
        return self.torus == other.torus and self.terms == other.terms

    def __hash__(self):
        return hash((self.torus.labels, self.canonical_key()))

    def canonical_key(self):
        return tuple(sorted((k, str(v)) for k, v in self.terms.items()))

    def __str__(self):
        if not self.terms:
            return "0"
        bits = []
        for exp in sorted(self.terms, reverse=True):
            mono = "*".join("X%d^%d" % (i + 1, e)
                            for i, e in enumerate(exp) if e) or "1"
            bits.append("(%s)*%s" % (self.terms[exp], mono))
        return " + ".join(bits)


def left_divide(divisor: TorusElement, dividend: TorusElement,
                max_steps: int = 20000) -> TorusElement:
    """Solve divisor * Z = dividend exactly in the torus.

    Leading exponents (lex order) are multiplicative, so long division
    works; a non-exact division keeps producing lex-smaller leading terms
    and is cut off by max_steps.
    """
    torus = divisor.torus
    if divisor.is_zero():
        raise TorusDivisionError("division by zero")
    quotient = {}
    remainder = dividend
    v0, c0 = divisor.leading()
    steps = 0
    while not remainder.is_zero():
        steps += 1
        if steps > max_steps:
            raise TorusDivisionError("division does not terminate: not exact")
        u, cu = remainder.leading()
        t_exp = tuple(x - y for x, y in zip(u, v0))
        try:
            coeff = cu.divexact(
                c0 * LaurentScalar.q_power(torus.sigma(v0, t_exp)))
        except Exception as exc:
            raise TorusDivisionError("leading coefficient not divisible") from exc
        term = TorusElement(torus, {t_exp: coeff})
        quotient[t_exp] = quotient.get(t_exp, ZERO) + coeff
        remainder = remainder - divisor * term
    return TorusElement(torus, quotient)


def torus_qcommute(x: TorusElement, y: TorusElement):
    """The integer m with x y = q^m y x, or None."""
    xy = x * y
    yx = y * x
    if xy.is_zero() and yx.is_zero():
        return 0
    key = next(iter(yx.terms))
    target = xy.terms.get(key)
    if target is None:
        return None
    try:
        ratio = target.divexact(yx.terms[key])
    except Exception:
        return None
    if not ratio.is_monomial() or ratio.coefficient(ratio.monomial_exponent()) != 1:
        return None
    m = ratio.monomial_exponent()
    if xy == yx.scale(LaurentScalar.q_power(m)):
        return m
    return None


# ---------------------------------------------------------------------------
# Quantum seeds
# ---------------------------------------------------------------------------


class ParityError(ValueError):
    """lambda_st and (d_s, d_t) disagree mod 2: corrupted seed data."""


@dataclass(frozen=True)
class QuantumSeed:
    """A compatible pair with degree data and cluster variables realized in
    the initial quantum torus."""

    pair: CompatiblePair
    degrees: dict        # label -> Root (the weight of the cluster variable)
    variables: dict      # label -> TorusElement
    torus: QuantumTorus

    def __post_init__(self):
        for s in self.pair.labels:
            for t in self.pair.labels:
                ds, dt = self.degrees[s], self.degrees[t]
                if (self.pair.lam_entry(s, t) - bilinear_form(ds, dt)) % 2:
                    raise ParityError(
                        "lambda(%r,%r) and (d,d) parity mismatch" % (s, t))

    def variable(self, s) -> TorusElement:
        return self.variables[s]

    def lambda_from_variables(self):
        """Recompute the q-commutation matrix of the stored variables."""
        labels = self.pair.labels
        size = len(labels)
        out = [[0] * size for _ in range(size)]
        for i in range(size):
            for j in range(i + 1, size):
                m = torus_qcommute(self.variables[labels[i]],
                                   self.variables[labels[j]])
                if m is None:
                    return None
                out[i][j] = m
                out[j][i] = -m
        return tuple(tuple(r) for r in out)


def initial_seed(pair: CompatiblePair, degrees) -> QuantumSeed:
    """The seed whose variables are the torus generators themselves."""
    pairing = tuple(tuple(bilinear_form(degrees[s], degrees[t])
                          for t in pair.labels) for s in pair.labels)
    torus = QuantumTorus(pair.labels, pair.lam, pairing)
    variables = {s: torus.generator(s) for s in pair.labels}
    return QuantumSeed(pair, dict(degrees), variables, torus)


def normalized_monomial(a, seed: QuantumSeed) -> TorusElement:
    """The bar-invariant normalized monomial Y^a in the seed's variables.

    The q-power prefactor has exponent P/4 with
    P = (sum a_i d_i, sum a_i d_i) - sum a_i (d_i, d_i)
        + 2 sum_{i>j} a_i a_j lambda_ij;
    the parity condition lambda_ij = (d_i, d_j) mod 2 makes P divisible by 4,
    and the result does not depend on the ordering of S.
    """
    labels = seed.pair.labels
    a = {s: int(a[s]) if isinstance(a, dict) else int(a[labels.index(s)])
         for s in labels}
    if any(v < 0 for v in a.values()):
        raise ValueError("monomial exponents must be nonnegative")
    datum = next(iter(seed.degrees.values())).datum
    total = Root(datum, (0,) * datum.rank)
    for s in labels:
        total = total + a[s] * seed.degrees[s]
    p = bilinear_form(total, total)
    for s in labels:
        p -= a[s] * bilinear_form(seed.degrees[s], seed.degrees[s])
    for i in range(len(labels)):
        for j in range(i):
            p += 2 * a[labels[i]] * a[labels[j]] * seed.pair.lam[i][j]
    if p % 4:
        raise ParityError("prefactor exponent %d is not divisible by 4" % p)
    result = seed.torus.unit().scale(LaurentScalar.q_power(p // 4))
    for s in labels:
        if a[s]:
            result = result * seed.variables[s] ** a[s]
    return result


def bar_defect(x: TorusElement):
    """The integer m with bar(x) = q^m x, or None when x is not a q-power
    multiple of a self-dual element."""
    if x.is_zero():
        return 0
    barred = x.bar()
    exp, coeff = next(iter(x.terms.items()))
    other = barred.terms.get(exp)
    if other is None:
        return None
    try:
        ratio = other.divexact(coeff)
    except Exception:
        return None
    if not ratio.is_monomial() or ratio.coefficient(ratio.monomial_exponent()) != 1:
        return None
    m = ratio.monomial_exponent()
    if barred == x.scale(LaurentScalar.q_power(m)):
        return m
    return None


def mutate_seed(seed: QuantumSeed, k) -> QuantumSeed:
    """Quantum seed mutation.

    The raw exchange Y_k' = Y_k^{-1} (Y^{a+} + q^{e_k} Y^{a-}) is computed
    by exact division inside the initial torus, then renormalized by the
    unique power of q making the new variable self-dual.  That power is
    zero for the small instances where the printed exchange relation is on
    the nose; in general the relation acquires an overall q-shift (the
    categorified sequence carries a grading twist), and self-duality of
    cluster variables is the invariant that pins the normalization.
    """
    if k not in seed.pair.exchangeable:
        raise KeyError("direction %r is frozen" % (k,))
    e = check_compatible(seed.pair)
    labels = seed.pair.labels
    a_plus = {t: max(seed.pair.b_entry(t, k), 0) for t in labels}
    a_minus = {t: max(-seed.pair.b_entry(t, k), 0) for t in labels}
    rhs = normalized_monomial(a_plus, seed) \
        + normalized_monomial(a_minus, seed).scale(LaurentScalar.q_power(e[k]))
    new_var = left_divide(seed.variables[k], rhs)
    defect = bar_defect(new_var)
    if defect is None or defect % 2:
        raise CompatibilityError(
            "mutated variable at %r is not a q-power multiple of a "
            "self-dual element" % (k,))
    if defect:
        new_var = new_var.scale(LaurentScalar.q_power(defect // 2))
    datum = seed.degrees[k].datum
    new_degree = Root(datum, (0,) * datum.rank)
    for t in labels:
        new_degree = new_degree + a_plus[t] * seed.degrees[t]
    new_degree = new_degree - seed.degrees[k]
    degrees = dict(seed.degrees)
    degrees[k] = new_degree
    variables = dict(seed.variables)
    variables[k] = new_var
    return QuantumSeed(mutate_pair(seed.pair, k), degrees, variables,
                       seed.torus)


def specialize_classical(x: TorusElement) -> dict:
    """q = 1 specialization: a commutative Laurent polynomial as a dict."""
    out = {}
    for exp, coeff in x.terms.items():
        v = out.get(exp, Fraction(0)) + coeff.at_one()
        if v:
            out[exp] = v
        else:
            out.pop(exp, None)
    return out


# ---------------------------------------------------------------------------
# Exchange graph enumeration
# ---------------------------------------------------------------------------


@dataclass
class ExchangeGraph:
    seeds: list
    edges: list          # (source index, direction label, target index)
    complete: bool

    def cluster_variables(self):
        """All distinct cluster variables seen across seeds (as elements)."""
        seen = {}
        for seed in self.seeds:
            for s in seed.pair.labels:
                var = seed.variables[s]
                seen[var.canonical_key()] = var
        return [seen[k] for k in sorted(seen)]


def seed_canonical_key(seed: QuantumSeed):
    """Order-insensitive canonical form: exchangeable variables sorted by
    their canonical serialization, matrices permuted accordingly."""
    labels = seed.pair.labels
    ex = seed.pair.exchangeable
    keyed = sorted(ex, key=lambda s: seed.variables[s].canonical_key())
    frozen = [s for s in labels if s not in ex]
    order = keyed + frozen
    perm = [labels.index(s) for s in order]
    lam = tuple(tuple(seed.pair.lam[r][c] for c in perm) for r in perm)
    b = tuple(tuple(seed.pair.b[r][seed.pair.ex_pos(s)] for s in keyed)
              for r in perm)
    variables = tuple(seed.variables[s].canonical_key() for s in order)
    return (variables, lam, b)


def enumerate_exchange_graph(seed: QuantumSeed, bound: int = 1000) -> ExchangeGraph:
    """BFS over all mutation sequences with canonical-form deduplication.

    Stops when closed, or flags the graph incomplete once `bound` seeds
    have been expanded.
    """
    seeds = [seed]
    index = {seed_canonical_key(seed): 0}
    edges = []
    frontier = [0]
    complete = True
    while frontier:
        new_frontier = []
        for src in frontier:
            for k in seed.pair.exchangeable:
                mutated = mutate_seed(seeds[src], k)
                key = seed_canonical_key(mutated)
                if key not in index:
                    if len(seeds) >= bound:
                        complete = False
                        continue
                    index[key] = len(seeds)
                    seeds.append(mutated)
                    new_frontier.append(index[key])
                edges.append((src, k, index[key]))
        frontier = new_frontier
    return ExchangeGraph(seeds, edges, complete)


def seed_to_json(seed: QuantumSeed) -> dict:
    labels = seed.pair.labels
    return {
        "labels": [list(s) if isinstance(s, tuple) else s for s in labels],
        "exchangeable": [list(s) if isinstance(s, tuple) else s
                         for s in seed.pair.exchangeable],
        "lambda": [list(r) for r in seed.pair.lam],
        "b": [list(r) for r in seed.pair.b],
        "variables": [{"label": list(s) if isinstance(s, tuple) else s,
                       "degree": list(seed.degrees[s].coords),
                       "terms": [{"exponents": list(k), "coeff": str(v)}
                                 for k, v in sorted(
                                     seed.variables[s].terms.items())]}
                      for s in labels],
    }
