"""Truncated Weyl-Kac characters of standard modules for A1^(1) and B2^(1).

Affine weights are written in Dynkin labels ``(l_0, ..., l_r)`` with respect
to the fundamental weights ``Lambda_i``, plus a delta coefficient.  Simple
reflections act by ``s_i(mu) = mu - mu_i * alpha_i``; they are integer
operations, so the whole oracle runs in exact integer arithmetic except
for the invariant form used by the Freudenthal cross-check.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import sympy

from .counts import WeightedCount

Labels = Tuple[int, ...]
# truncated series: (finite labels relative to Lambda, depth) -> integer
TruncatedSeries = Dict[Tuple[Labels, int], int]


class CharacterError(RuntimeError):
    """Internal inconsistency in the character computation (a bug, not data)."""


@dataclass(frozen=True)
class AffineDatum:
    name: str
    cartan: Tuple[Tuple[int, ...], ...]  # a_ij = <alpha_i^vee, alpha_j>, node 0 affine
    to_output: Callable[[Labels], Tuple[int, ...]] = field(compare=False)
    marks: Tuple[int, ...] = field(init=False)
    comarks: Tuple[int, ...] = field(init=False)

    def __post_init__(self):
        A = sympy.Matrix(self.cartan)
        marks = _primitive_null_vector(A)
        comarks = _primitive_null_vector(A.T)
        object.__setattr__(self, "marks", marks)
        object.__setattr__(self, "comarks", comarks)
        # rho has all labels 1; check it against every simple coroot
        for i in range(self.size):
            if self.pair(self.rho, i) != 1:
                raise CharacterError("rho does not pair to 1 with every coroot")
        if self.simple_root(0)[1] != 1:
            raise CharacterError("alpha_0 must carry delta")
        # alpha_0 = delta - theta, with delta = sum marks * alpha
        theta = self.theta_labels
        for i in range(1, self.size):
            if self.simple_root(0)[0][i] != -theta[i - 1]:
                raise CharacterError("alpha_0 is not delta - theta")

    @property
    def size(self) -> int:
        return len(self.cartan)

    @property
    def rank(self) -> int:
        return self.size - 1

    @property
    def dual_coxeter(self) -> int:
        return sum(self.comarks)

    @property
    def rho(self) -> Labels:
        return (1,) * self.size

    @property
    def imaginary_multiplicity(self) -> int:
        return self.rank

    def pair(self, labels: Labels, i: int) -> int:
        return labels[i]

    def level(self, labels: Labels) -> int:
        return sum(a * l for a, l in zip(self.comarks, labels))

    def simple_root(self, j: int) -> Tuple[Labels, int]:
        """alpha_j as (affine labels, delta coefficient)."""
        return tuple(self.cartan[i][j] for i in range(self.size)), 1 if j == 0 else 0

    def finite_simple_root(self, j: int) -> Labels:
        return tuple(self.cartan[i][j] for i in range(1, self.size))

    @property
    def theta_labels(self) -> Labels:
        """Highest root in finite Dynkin labels: sum_{i>0} marks_i * alpha_i."""
        out = [0] * self.rank
        for j in range(1, self.size):
            for i, x in enumerate(self.finite_simple_root(j)):
                out[i] += self.marks[j] * x
        return tuple(out)

    def finite_cartan(self) -> sympy.Matrix:
        return sympy.Matrix([row[1:] for row in self.cartan[1:]])

    def root_coordinates(self, labels: Labels) -> Tuple[Fraction, ...]:
        """Finite labels -> coefficients in the finite simple roots."""
        c = self.finite_cartan().inv() * sympy.Matrix(labels)
        return tuple(Fraction(int(x.p), int(x.q)) for x in c)

    def root_length2(self, j: int) -> Fraction:
        # (alpha_j | alpha_j) with (theta | theta) = 2
        return Fraction(2 * self.comarks[j], self.marks[j])

    def finite_form(self, x: Labels, y: Labels) -> Fraction:
        cx = self.root_coordinates(x)
        return sum(
            (cx[j] * y[j] * self.root_length2(j + 1) / 2 for j in range(self.rank)),
            Fraction(0),
        )

    def finite_reflect(self, labels: Labels, i: int) -> Labels:
        """s_i on finite labels, i = 1..rank."""
        root = self.finite_simple_root(i)
        m = labels[i - 1]
        return tuple(l - m * r for l, r in zip(labels, root))

    def finite_weyl_group(self) -> List[Callable[[Labels], Labels]]:
        """Elements of the finite Weyl group as words of simple reflections."""
        words = {(): None}
        probe = tuple(1 for _ in range(self.rank))  # regular dominant
        seen = {probe: ()}
        frontier = [probe]
        while frontier:
            nxt = []
            for v in frontier:
                for i in range(1, self.size):
                    u = self.finite_reflect(v, i)
                    if u not in seen:
                        seen[u] = (i,) + seen[v]
                        nxt.append(u)
            frontier = nxt

        def make(word):
            def act(labels: Labels) -> Labels:
                for i in reversed(word):
                    labels = self.finite_reflect(labels, i)
                return labels

            return act

        return [make(w) for w in seen.values()]

    def finite_roots(self) -> List[Labels]:
        roots = set()
        for w in self.finite_weyl_group():
            for j in range(1, self.size):
                roots.add(w(self.finite_simple_root(j)))
        return sorted(roots)

    def finite_positive_roots(self) -> List[Labels]:
        return [r for r in self.finite_roots() if min(self.root_coordinates(r)) >= 0]


def _primitive_null_vector(A: sympy.Matrix) -> Tuple[int, ...]:
    null = A.nullspace()
    if len(null) != 1:
        raise CharacterError("affine Cartan matrix must have corank 1")
    v = null[0]
    den = sympy.ilcm(*[x.q for x in v])
    ints = [int(x * den) for x in v]
    g = sympy.igcd(*ints)
    ints = [x // g for x in ints]
    if ints[0] < 0:
        ints = [-x for x in ints]
    return tuple(ints)


def _b2_output(labels: Labels) -> Tuple[int, ...]:
    # l1*omega1 + l2*omega2 with omega1 = e1, omega2 = (e1+e2)/2, doubled
    l1, l2 = labels
    return (2 * l1 + l2, l2)


def _a1_output(labels: Labels) -> Tuple[int, ...]:
    return (labels[0],)


# node order 0, 1, 2 with alpha_1 = e1 - e2 (long) and alpha_2 = e2 (short)
B2_AFFINE = AffineDatum("B2", ((2, 0, -1), (0, 2, -1), (-2, -2, 2)), _b2_output)
A1_AFFINE = AffineDatum("A1", ((2, -2), (-2, 2)), _a1_output)
DATA = {"B2": B2_AFFINE, "A1": A1_AFFINE}


def _check_dominant(datum: AffineDatum, lam: Labels) -> Labels:
    lam = tuple(int(x) for x in lam)
    if len(lam) != datum.size or min(lam) < 0:
        raise ValueError(f"{lam} is not a dominant integral weight of {datum.name}")
    return lam


def _reflect(datum: AffineDatum, mu: Labels, delta: int, i: int) -> Tuple[Labels, int]:
    root, droot = datum.simple_root(i)
    m = mu[i]
    return tuple(x - m * r for x, r in zip(mu, root)), delta - m * droot


def numerator_orbit(datum: AffineDatum, lam: Labels, N: int) -> TruncatedSeries:
    """sum_w eps(w) e^{w(Lambda+rho) - (Lambda+rho)} truncated at depth N.

    Weight-keyed breadth-first search downward from Lambda + rho: every
    orbit element is reached by reflections that lower the weight, and the
    depth never decreases along such a chain.
    """
    lam = _check_dominant(datum, lam)
    top = tuple(l + 1 for l in lam)
    signs: Dict[Tuple[Labels, int], int] = {(top, 0): 1}
    frontier = [(top, 0)]
    while frontier:
        nxt = []
        for mu, delta in frontier:
            sign = signs[(mu, delta)]
            for i in range(datum.size):
                if mu[i] <= 0:
                    continue
                nu = _reflect(datum, mu, delta, i)
                if -nu[1] > N:
                    continue
                if nu in signs:
                    if signs[nu] != -sign:
                        raise CharacterError("inconsistent sign in Weyl orbit")
                    continue
                signs[nu] = -sign
                nxt.append(nu)
        frontier = nxt
    out: TruncatedSeries = {}
    for (mu, delta), s in signs.items():
        rel = tuple(a - b for a, b in zip(mu[1:], top[1:]))
        out[(rel, -delta)] = s
    return out


def numerator_orbit_by_words(datum: AffineDatum, lam: Labels, N: int) -> TruncatedSeries:
    """Second orbit enumeration via W = W_fin x translations.

    ``t_beta(mu) = mu + k*beta - ((mu|beta) + k|beta|^2/2) delta`` for beta
    in the lattice spanned by the long roots, with the sign of the finite
    part only.
    """
    lam = _check_dominant(datum, lam)
    top = tuple(l + 1 for l in lam)
    k = datum.level(top)
    fin = top[1:]
    theta = datum.theta_labels
    long_len = datum.finite_form(theta, theta)
    lattice_gens = [r for r in datum.finite_roots() if datum.finite_form(r, r) == long_len]
    group = datum.finite_weyl_group()
    # finite Weyl elements with their signs, via images of a regular weight
    elements = []
    probe = tuple(1 for _ in range(datum.rank))
    for w in group:
        # sign from the parity of a word: recompute by counting reflections
        elements.append(w)

    def sign_of(w) -> int:
        # det of the labels action: (-1)^{length}; compute from the image of probe
        v = w(probe)
        length = 0
        while True:
            for i in range(1, datum.size):
                if v[i - 1] < 0:
                    v = datum.finite_reflect(v, i)
                    length += 1
                    break
            else:
                return (-1) ** length

    fin_top_norm = datum.finite_form(fin, fin)
    out: TruncatedSeries = {}
    # translations: integer combinations of long roots, explored by BFS
    zero = tuple(0 for _ in range(datum.rank))
    seen = {zero}
    frontier = [zero]
    while frontier:
        nxt = []
        for beta in frontier:
            hit = False
            for w in elements:
                wl = w(fin)
                # t_beta w (Lambda+rho): finite part wl + k*beta
                newfin = tuple(a + k * b for a, b in zip(wl, beta))
                depth = datum.finite_form(wl, beta) + Fraction(k) * datum.finite_form(beta, beta) / 2
                if depth.denominator != 1:
                    raise CharacterError("non-integral depth in translation")
                depth = int(depth)
                if depth <= N:
                    hit = True
                    rel = tuple(a - b for a, b in zip(newfin, fin))
                    key = (rel, depth)
                    if key in out:
                        raise CharacterError("orbit element counted twice")
                    out[key] = sign_of(w)
            if hit or beta == zero:
                for g in lattice_gens:
                    nb = tuple(a + b for a, b in zip(beta, g))
                    if nb not in seen:
                        seen.add(nb)
                        nxt.append(nb)
        frontier = nxt
    return out


def denominator_factors(datum: AffineDatum, N: int) -> List[Tuple[Labels, int, int]]:
    """Factors (1 - e^{-alpha})^mult as (finite labels of -alpha, depth, mult)."""
    out = []
    for r in datum.finite_positive_roots():
        out.append((tuple(-x for x in r), 0, 1))
    zero = tuple(0 for _ in range(datum.rank))
    for n in range(1, N + 1):
        for r in datum.finite_roots():
            out.append((tuple(-x for x in r), n, 1))
        out.append((zero, n, datum.imaginary_multiplicity))
    return out


def _mul_series(a: TruncatedSeries, b: TruncatedSeries, N: int) -> TruncatedSeries:
    out: Dict[Tuple[Labels, int], int] = defaultdict(int)
    for (wa, da), ca in a.items():
        for (wb, db), cb in b.items():
            if da + db <= N:
                out[(tuple(x + y for x, y in zip(wa, wb)), da + db)] += ca * cb
    return {key: c for key, c in out.items() if c}


def denominator_series(datum: AffineDatum, N: int) -> TruncatedSeries:
    """prod over positive roots of (1 - e^{-alpha})^mult, truncated at depth N."""
    zero = tuple(0 for _ in range(datum.rank))
    series: TruncatedSeries = {(zero, 0): 1}
    for w, d, mult in denominator_factors(datum, N):
        for _ in range(mult):
            series = _mul_series(series, {(zero, 0): 1, (w, d): -1}, N)
    return series


def _divide_geometric(series: TruncatedSeries, w: Labels, d: int, N: int) -> TruncatedSeries:
    """series / (1 - e^{w} q^d) for d >= 1, truncated at depth N."""
    by_depth: Dict[int, Dict[Labels, int]] = defaultdict(lambda: defaultdict(int))
    for (mu, dd), c in series.items():
        by_depth[dd][mu] += c
    for dd in range(d, N + 1):
        for mu, c in list(by_depth[dd - d].items()):
            if c:
                by_depth[dd][tuple(x + y for x, y in zip(mu, w))] += c
    return {(mu, dd): c for dd, row in by_depth.items() for mu, c in row.items() if c}


def _order_key(datum: AffineDatum, labels: Labels):
    c = datum.root_coordinates(labels)
    return (sum(c),) + c


def _divide_finite(
    datum: AffineDatum, poly: Dict[Labels, int], fin_den: Dict[Labels, int]
) -> Dict[Labels, int]:
    """Exact division of Laurent polynomials by the finite Weyl denominator.

    The divisor has leading term 1 for a group order in which every
    negative root is below 0, so plain long division applies.
    """
    if not poly:
        return {}
    rem = {w: c for w, c in poly.items() if c}
    keys = {w: _order_key(datum, w) for w in rem}
    low = min(rem, key=lambda w: keys[w])
    two_rho = tuple(2 for _ in range(datum.rank))
    floor = _order_key(datum, tuple(x + y for x, y in zip(low, two_rho)))
    quotient: Dict[Labels, int] = {}
    while rem:
        top = max(rem, key=lambda w: _order_key(datum, w))
        if _order_key(datum, top) < floor:
            raise CharacterError("numerator is not divisible by the Weyl denominator")
        c = rem[top]
        quotient[top] = quotient.get(top, 0) + c
        for dw, dc in fin_den.items():
            w = tuple(x + y for x, y in zip(top, dw))
            v = rem.get(w, 0) - c * dc
            if v:
                rem[w] = v
            else:
                rem.pop(w, None)
    return quotient


def relative_character(datum: AffineDatum, lam: Labels, N: int) -> TruncatedSeries:
    """e^{-Lambda} ch L(Lambda) truncated at depth N."""
    numer = numerator_orbit(datum, lam, N)
    series = dict(numer)
    zero = tuple(0 for _ in range(datum.rank))
    for w, d, mult in denominator_factors(datum, N):
        if d == 0:
            continue
        for _ in range(mult):
            series = _divide_geometric(series, w, d, N)
    fin_den: TruncatedSeries = {(zero, 0): 1}
    for w, d, mult in denominator_factors(datum, 0):
        fin_den = _mul_series(fin_den, {(zero, 0): 1, (w, 0): -1}, 0)
    fin_poly = {w: c for (w, _), c in fin_den.items()}
    out: TruncatedSeries = {}
    for depth in range(N + 1):
        layer = {w: c for (w, d), c in series.items() if d == depth}
        for w, c in _divide_finite(datum, layer, fin_poly).items():
            if c:
                out[(w, depth)] = c
    return out


def weight_multiplicities(datum: AffineDatum, lam: Labels, N: int) -> WeightedCount:
    """Multiplicities of L(Lambda) by (absolute finite weight, depth <= N)."""
    lam = _check_dominant(datum, lam)
    fin = lam[1:]
    table = WeightedCount()
    for (rel, depth), c in relative_character(datum, lam, N).items():
        if c < 0:
            raise CharacterError(f"negative multiplicity {c} at {rel}, depth {depth}")
        absolute = tuple(a + b for a, b in zip(fin, rel))
        table.add(datum.to_output(absolute), depth, c)
    return table


def graded_dims(datum: AffineDatum, lam: Labels, N: int) -> List[int]:
    return weight_multiplicities(datum, lam, N).totals(N)


# --- Freudenthal cross-oracle ------------------------------------------------


def freudenthal_multiplicities(datum: AffineDatum, lam: Labels, N: int) -> WeightedCount:
    """Weight multiplicities by the affine Freudenthal recursion (small N)."""
    lam = _check_dominant(datum, lam)
    k = datum.level(lam)
    h = datum.dual_coxeter
    fin = lam[1:]
    rho_f = tuple(1 for _ in range(datum.rank))
    theta = datum.theta_labels
    roots = datum.finite_roots()
    pos = datum.finite_positive_roots()
    zero = tuple(0 for _ in range(datum.rank))
    group = datum.finite_weyl_group()
    simple = [datum.finite_simple_root(j) for j in range(1, datum.size)]

    def add(x, y, s=1):
        return tuple(a + s * b for a, b in zip(x, y))

    def nonneg_root_combo(labels) -> bool:
        return all(c >= 0 for c in datum.root_coordinates(labels))

    def norm_shift(mu_f, depth):
        # (mu + rho | mu + rho) with mu = mu_f + k Lambda0 - depth delta
        v = add(mu_f, rho_f)
        return datum.finite_form(v, v) - 2 * (k + h) * depth

    top_norm = norm_shift(fin, 0)
    mult: Dict[Tuple[Labels, int], int] = {}

    def m(mu_f, depth) -> int:
        if depth < 0:
            return 0
        return mult.get((mu_f, depth), 0)

    for depth in range(N + 1):
        ceiling = add(fin, tuple(depth * t for t in theta))
        # candidates: mu with every W_fin conjugate below ceiling
        span = datum.root_coordinates(add(ceiling, group_lowest(group, ceiling), -1))
        bounds = [int(x) for x in span]
        cands = []
        for coeffs in _box(bounds):
            mu_f = ceiling
            for c, r in zip(coeffs, simple):
                mu_f = add(mu_f, tuple(c * x for x in r), -1)
            if all(nonneg_root_combo(add(ceiling, w(mu_f), -1)) for w in group):
                cands.append((sum(coeffs), mu_f))
        cands.sort()
        for _, mu_f in cands:
            if depth == 0 and mu_f == fin:
                mult[(mu_f, 0)] = 1
                continue
            rhs = Fraction(0)
            # real roots alpha = r + n delta, imaginary n delta
            for n in range(0, depth + 1):
                for r in (pos if n == 0 else roots + [zero]):
                    mul = datum.imaginary_multiplicity if r == zero else 1
                    if r == zero and n == 0:
                        continue
                    r2 = datum.finite_form(r, r)
                    j = 1
                    while True:
                        nd = depth - j * n
                        if nd < 0:
                            break
                        nu = add(mu_f, tuple(j * x for x in r))
                        if n == 0 and not nonneg_root_combo(add(ceiling, nu, -1)):
                            break
                        mv = m(nu, nd)
                        if mv:
                            rhs += mul * mv * (datum.finite_form(mu_f, r) + k * n + j * r2)
                        j += 1
                        if n == 0 and j > 4 * (depth + 1) * (sum(fin) + 2) + 8:
                            break
            denom = top_norm - norm_shift(mu_f, depth)
            value = 2 * rhs
            if denom == 0:
                if value != 0:
                    raise CharacterError("Freudenthal denominator vanished")
                continue
            q = value / denom
            if q.denominator != 1 or q < 0:
                raise CharacterError(f"non-integral multiplicity {q}")
            if q:
                mult[(mu_f, depth)] = int(q)
    table = WeightedCount()
    for (mu_f, depth), c in mult.items():
        table.add(datum.to_output(mu_f), depth, c)
    return table


def group_lowest(group, labels: Labels) -> Labels:
    """The antidominant conjugate (lowest element of the W_fin orbit)."""
    best = None
    for w in group:
        v = w(labels)
        if all(x <= 0 for x in v):
            best = v
    if best is None:
        raise CharacterError("no antidominant conjugate found")
    return best


def _box(bounds: Sequence[int]):
    if not bounds:
        yield ()
        return
    for c in range(bounds[0] + 1):
        for rest in _box(bounds[1:]):
            yield (c,) + rest


def dynkin_labels_B2(lam) -> Labels:
    return tuple(lam.labels) if hasattr(lam, "labels") else tuple(lam)
