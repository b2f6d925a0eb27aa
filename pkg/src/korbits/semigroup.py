"""Order and semigroup machinery on (N-Delta, <=_Sigma).

Membership of a vector in N-Sigma is decided by exact linear solve: the
spherical-root rows are independent, so coordinates are unique and the test
is integrality plus nonnegativity.  Enumerations run over sigma-coordinate
boxes whose per-coordinate bounds come from an exact rational simplex on
the LP relaxation {c >= 0 : M^t c <= E}; the recession cone of a genuine
system is trivial, so the boxes are finite and the enumeration is complete.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .spherical import system_case_1_4, system_case_1_5, two_wing_structure


@dataclass(frozen=True)
class SemigroupTriple:
    n1: int
    n2: int
    E: tuple

    def key(self):
        return (self.n1, self.n2, self.E)

    def as_tuple(self):
        return (self.n1, self.n2) + self.E


class SigmaLattice:
    """Exact coordinate solver for Z-Sigma inside Z-Delta, with enumeration."""

    def __init__(self, system):
        self.system = system
        self.rows = [list(r) for r in system.sigma_in_colors]
        self.k = len(self.rows)
        self.ncol = len(system.colors)
        # Row-reduce the transpose once, tracking the transform T with
        # T A = rref(A); queries then cost one matrix-vector product.
        aug = [[Fraction(self.rows[j][i]) for j in range(self.k)]
               + [Fraction(1) if t == i else Fraction(0) for t in range(self.ncol)]
               for i in range(self.ncol)]
        r = 0
        for c in range(self.k):
            piv = next((i for i in range(r, self.ncol) if aug[i][c] != 0), None)
            if piv is None:
                continue
            aug[r], aug[piv] = aug[piv], aug[r]
            inv = 1 / aug[r][c]
            aug[r] = [x * inv for x in aug[r]]
            for i in range(self.ncol):
                if i != r and aug[i][c] != 0:
                    f = aug[i][c]
                    aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
            r += 1
        self._transform = []     # (target sigma index, T-row) for pivot rows
        self._checks = []        # T-rows that must annihilate the query
        for row in aug:
            lead = next((j for j, x in enumerate(row[:self.k]) if x != 0), None)
            if lead is not None:
                self._transform.append((lead, row[self.k:]))
            else:
                self._checks.append(row[self.k:])

    def colors_of(self, c):
        """Color coordinates of sum_i c_i sigma_i."""
        return tuple(sum(c[j] * self.rows[j][i] for j in range(self.k))
                     for i in range(self.ncol))

    def sigma_coords(self, vec):
        """Rational sigma-coordinates of a Z-Delta vector, or None."""
        if self.k == 0:
            return () if all(x == 0 for x in vec) else None
        out = [Fraction(0)] * self.k
        for lead, trow in self._transform:
            out[lead] = sum(t * v for t, v in zip(trow, vec) if v)
        for trow in self._checks:
            if sum(t * v for t, v in zip(trow, vec) if v) != 0:
                return None
        return tuple(out)

    def nsigma_coords(self, vec):
        """Nonnegative integer sigma-coordinates, or None if not in N-Sigma."""
        sol = self.sigma_coords(vec)
        if sol is None:
            return None
        if any(x.denominator != 1 or x < 0 for x in sol):
            return None
        return tuple(int(x) for x in sol)

    def box_bounds(self, E):
        """floor(max c_i) over the LP relaxation, per coordinate."""
        bounds = []
        a = [[self.rows[j][i] for j in range(self.k)] for i in range(self.ncol)]
        for i in range(self.k):
            obj = [1 if j == i else 0 for j in range(self.k)]
            status, val = linalg.simplex_max(a, list(E), obj)
            if status != "optimal":
                raise ValueError("N-Sigma has a recession direction; not a valid system")
            bounds.append(int(val))
        return bounds

    def enumerate_sub(self, E):
        """All c in N^Sigma with E - colors(c) >= 0, by pruned DFS."""
        if self.k == 0:
            return [()]
        bounds = self.box_bounds(E)
        minsuffix = [[0] * self.ncol for _ in range(self.k + 1)]
        for t in range(self.k - 1, -1, -1):
            for d in range(self.ncol):
                drop = self.rows[t][d] * bounds[t] if self.rows[t][d] < 0 else 0
                minsuffix[t][d] = minsuffix[t + 1][d] + drop
        out = []
        partial = [0] * self.ncol
        c = [0] * self.k

        def rec(t):
            if t == self.k:
                out.append(tuple(c))
                return
            row = self.rows[t]
            for v in range(bounds[t] + 1):
                c[t] = v
                if v:
                    for d in range(self.ncol):
                        partial[d] += row[d]
                ok = all(partial[d] + minsuffix[t + 1][d] <= E[d] for d in range(self.ncol))
                if ok:
                    rec(t + 1)
            for d in range(self.ncol):
                partial[d] -= row[d] * bounds[t]
            c[t] = 0

        rec(0)
        return out


_LATTICES = {}


def lattice(system):
    if system not in _LATTICES:
        _LATTICES[system] = SigmaLattice(system)
    return _LATTICES[system]


def leq_sigma(system, d_vec, e_vec):
    """d <=_Sigma e iff e - d is a nonnegative integer N-Sigma combination."""
    diff = tuple(b - a for a, b in zip(d_vec, e_vec))
    return lattice(system).nsigma_coords(diff) is not None


def positive_part_height(e_vec):
    """(positive part of e, height of e = sum of all coordinates)."""
    plus = tuple(x if x > 0 else 0 for x in e_vec)
    return plus, sum(e_vec)


def is_minuscule(system, e_vec):
    """No F in N-Delta with F <=_Sigma E and F != E."""
    return _dominated_witness(system, e_vec) is None


def _dominated_witness(system, e_vec):
    lat = lattice(system)
    for c in lat.enumerate_sub(e_vec):
        if any(c):
            return tuple(x - y for x, y in zip(e_vec, lat.colors_of(c)))
    return None


def sections_decomposition(system, e_vec):
    """The full list {F in N-Delta : F <=_Sigma E}, canonically ordered.

    Its length is the number of irreducible summands of the section module
    of the line bundle attached to E.
    """
    lat = lattice(system)
    out = [tuple(x - y for x, y in zip(e_vec, lat.colors_of(c)))
           for c in lat.enumerate_sub(e_vec)]
    return sorted(out, reverse=True)


def covering_differences(system, bound):
    """All gamma in N-Sigma with coordinates <= bound covering some pair.

    (D, D + gamma) is a cover for the smallest valid D = max(0, -gamma),
    and shrinking D preserves both validity and the absence of intermediate
    elements, so testing the minimal D decides whether any witness exists.
    """
    if bound < 1:
        raise ValueError("bound must be >= 1")
    lat = lattice(system)
    k = lat.k
    if k == 0:
        return []
    boxes = {}

    def colors_cached(c):
        if c not in boxes:
            boxes[c] = lat.colors_of(c)
        return boxes[c]

    out = []
    from itertools import product
    for c in product(range(bound + 1), repeat=k):
        if not any(c):
            continue
        gamma = colors_cached(c)
        d0 = tuple(-x if x < 0 else 0 for x in gamma)
        cover = True
        for sub in product(*(range(x + 1) for x in c)):
            if not any(sub) or sub == c:
                continue
            mid = colors_cached(sub)
            if all(d0[i] + mid[i] >= 0 for i in range(len(d0))):
                cover = False
                break
        if cover:
            out.append(c)
    return sorted(out)


def _hilbert_reduce(members):
    """Drop every member that is a sum of two nonzero members."""
    mset = set(members)
    gens = []
    for m in sorted(mset):
        if not any(m):
            continue
        decomposable = False
        for a in mset:
            if not any(a) or a == m:
                continue
            if all(x <= y for x, y in zip(a, m)):
                rest = tuple(y - x for x, y in zip(a, m))
                if any(rest) and rest in mset:
                    decomposable = True
                    break
        if not decomposable:
            gens.append(m)
    return gens


def _designated(system):
    if system.designated is None:
        raise ValueError("system has no designated colors")
    d1, d2 = system.designated
    zero = tuple([0] * len(system.colors))
    return (d1 if d1 is not None else zero), (d2 if d2 is not None else zero)


def gamma_semigroup(system, max_degree=4):
    """Hilbert basis of {(n1, n2, E) : E <=_Sigma n1 Dp1 + n2 Dp2} truncated
    at n1 + n2 <= max_degree, by enumeration plus pairwise-sum reduction.

    Degrees add and there are no nonzero degree-0 members, so truncation is
    exact for all generators of degree <= max_degree.
    """
    d1, d2 = _designated(system)
    lat = lattice(system)
    members = []
    for n1 in range(max_degree + 1):
        for n2 in range(max_degree + 1 - n1):
            target = tuple(n1 * a + n2 * b for a, b in zip(d1, d2))
            for c in lat.enumerate_sub(target):
                e_vec = tuple(x - y for x, y in zip(target, lat.colors_of(c)))
                members.append((n1, n2) + e_vec)
    gens = _hilbert_reduce(members)
    return [SemigroupTriple(g[0], g[1], g[2:]) for g in sorted(gens)]


def gamma_sigma_semigroup(system, bound=4):
    """Hilbert basis of {gamma in N-Sigma : supp(gamma+) inside the
    designated support}, within the coordinate box."""
    d1, d2 = _designated(system)
    allowed = {i for i, x in enumerate(d1) if x} | {i for i, x in enumerate(d2) if x}
    lat = lattice(system)
    from itertools import product
    members = []
    for c in product(range(bound + 1), repeat=lat.k):
        gamma = lat.colors_of(c)
        if all(x <= 0 for i, x in enumerate(gamma) if i not in allowed):
            members.append(c)
    return sorted(_hilbert_reduce(members))


def normality_check(system):
    """Minuscule test of the designated elements; the normality criterion."""
    result = {"normal": True, "witnesses": {}}
    if system.designated is None:
        return result
    for label, d in zip(("Dp1", "Dp2"), system.designated):
        if d is None or not any(d):
            continue
        witness = _dominated_witness(system, d)
        if witness is not None:
            result["normal"] = False
            result["witnesses"][label] = witness
    return result


def weight_semigroup(system, lam1, lam2, color_weights, max_degree=4):
    """Highest weights n1 lam1 + n2 lam2 - omega(n1 Dp1 + n2 Dp2 - E) over
    the computed generators; needs a weight for every color."""
    missing = [c for c in system.colors if c not in color_weights]
    if missing:
        raise ValueError(f"missing color weights: {missing}")
    d1, d2 = _designated(system)
    gens = gamma_semigroup(system, max_degree)
    wlen = len(lam1)
    out = []
    for g in gens:
        gamma = tuple(g.n1 * a + g.n2 * b - e for a, b, e in zip(d1, d2, g.E))
        corr = [0] * wlen
        for i, cname in enumerate(system.colors):
            for t in range(wlen):
                corr[t] += gamma[i] * color_weights[cname][t]
        out.append((g, tuple(g.n1 * lam1[t] + g.n2 * lam2[t] - corr[t] for t in range(wlen))))
    return out


# ---------------------------------------------------------------------------
# Closed-form generator families

def build_case_system(case_id, params):
    """Deterministic system for the cases with closed-form generators."""
    if case_id == "1.4":
        return system_case_1_4(params["p"])
    if case_id == "1.5":
        return system_case_1_5(params["q"])
    if case_id in ("1.6", "1.7"):
        return two_wing_structure(case_id, params["p"], params["q"],
                                  params["r"], params["s"]).system
    raise ValueError(f"no closed-form case {case_id!r}")


def closed_form_generators(case_id, params):
    """The closed-form generator families of the catalogued cases."""
    if case_id in ("1.4", "1.5"):
        sys_ = build_case_system(case_id, params)
        u = sys_.unit_color
        last = "D4" if len(sys_.colors) == 4 else "D5"
        gens = [SemigroupTriple(1, 0, u("D1")), SemigroupTriple(0, 1, u("D2")),
                SemigroupTriple(1, 1, u("D3")), SemigroupTriple(2, 0, u("D4")),
                SemigroupTriple(0, 2, u(last))]
        return sorted(gens, key=SemigroupTriple.key)
    if case_id not in ("1.6", "1.7"):
        raise ValueError(f"no closed-form case {case_id!r}")
    tw = two_wing_structure(case_id, params["p"], params["q"], params["r"], params["s"])
    gens = []
    for i in range(1, tw.r1 + 2):
        gens.append(SemigroupTriple(i, 0, tw.tilde(1, 2 * i)))
    for j in range(1, tw.r2 + 2):
        gens.append(SemigroupTriple(0, j, tw.tilde(2, 2 * j)))
    for i in range(1, tw.r1 + 2):
        for j in range(1, tw.r2 + 2):
            if tw.boundary and i + j >= tw.r1 + tw.r2 + 2:
                continue
            e_vec = tuple(a + b for a, b in zip(tw.tilde(1, 2 * i - 1), tw.tilde(2, 2 * j - 1)))
            gens.append(SemigroupTriple(i, j, e_vec))
    sys_ = tw.system
    lat = lattice(sys_)
    d1, d2 = _designated(sys_)
    for g in gens:
        target = tuple(g.n1 * a + g.n2 * b - e for a, b, e in zip(d1, d2, g.E))
        assert lat.nsigma_coords(target) is not None, (case_id, params, g)
    return sorted(gens, key=SemigroupTriple.key)


def _gamma_k_vec(tw, k, i):
    """sigma-coordinates of gamma^k_i in the system's sigma order."""
    names = tw.system.sigma_names
    c = [0] * len(names)
    for u in range(1, i):
        c[names.index(f"s{k}_{2 * u - 1}")] += i - u
        c[names.index(f"s{k}_{2 * u}")] += i - u
    return tuple(c)


def _gamma_ij_vec(tw, i, j):
    names = tw.system.sigma_names
    c = list(_gamma_k_vec(tw, 1, i))
    for t, v in enumerate(_gamma_k_vec(tw, 2, j)):
        c[t] += v
    for u in range(i, tw.r1 + 1):
        c[names.index(f"s1_{2 * u}")] += 1
    for v in range(j, tw.r2 + 1):
        c[names.index(f"s2_{2 * v}")] += 1
    if not tw.boundary:
        c[names.index("tau")] += 1
    return tuple(c)


def witness_decomposition(case_id, params, gamma_coords):
    """Constructive decomposition of gamma into closed-form generators.

    gamma is given in sigma-coordinates of the case system.  Returns
    (coefficients, internals) where coefficients maps generator tags
    ("g1", i), ("g2", j), ("gij", i, j) to nonnegative integers and the
    recombination is verified exactly; internals exposes the intermediate
    quantities of the construction (b, c1, c2 in the boundary regime).
    """
    if case_id in ("1.4", "1.5"):
        return _witness_14(case_id, params, gamma_coords)
    tw = two_wing_structure(case_id, params["p"], params["q"], params["r"], params["s"])
    sys_ = tw.system
    names = sys_.sigma_names
    lat = lattice(sys_)
    gamma_cols = lat.colors_of(gamma_coords)
    d1, d2 = _designated(sys_)
    allowed = {i for i, x in enumerate(d1) if x} | {i for i, x in enumerate(d2) if x}
    if any(x > 0 for i, x in enumerate(gamma_cols) if i not in allowed) or \
            any(x < 0 for x in gamma_coords):
        raise ValueError("gamma is not in the semigroup")

    def a(k, h):
        nm = f"s{k}_{h}"
        return gamma_coords[names.index(nm)] if nm in names else 0

    def d(k, h):
        j = tw.col(k, h)
        return gamma_cols[j] if j is not None else 0

    r1, r2 = tw.r1, tw.r2
    coeffs = {}
    internals = {}
    if not tw.boundary:
        b = gamma_coords[names.index("tau")]
        internals["b"] = b
        for k, rk in ((1, r1), (2, r2)):
            for i in range(2, rk + 2):
                td = d(k, 2 * i) if i <= rk else d(k, 2 * rk + 3)
                if td:
                    coeffs[(f"g{k}", i)] = -td
        n = {1: [0], 2: [0]}
        for k, rk in ((1, r1), (2, r2)):
            for i in range(1, rk + 1):
                n[k].append(n[k][-1] - d(k, 2 * i - 1))
            n[k].append(b)
            assert n[k][-2] <= b
        for i in range(1, r1 + 2):
            for j in range(1, r2 + 2):
                lo = max(n[1][i - 1], n[2][j - 1])
                hi = min(n[1][i], n[2][j])
                if hi > lo:
                    coeffs[("gij", i, j)] = hi - lo
    else:
        a1r, a2r = a(1, 2 * r1), a(2, 2 * r2)
        a1o, a2o = a(1, 2 * r1 - 1), a(2, 2 * r2 - 1)
        if r1 and r2:
            # c1 is attached to the overflow row (the gamma^1_{r1+1}
            # coefficient), c2 to the overflow column; the constraint system
            # forces c1 - c2 = a2r - a1r, and membership makes the stated b
            # satisfy every bound including the empty-corner condition.
            if a1r <= a2r:
                b = min(a2o, a1o + a2r - a1r)
                c1, c2 = a2r - a1r - b, -b
            else:
                b = min(a1o, a2o + a1r - a2r)
                c1, c2 = -b, a1r - a2r - b
            internals.update(b=b, c1=c1, c2=c2)
            for k, rk in ((1, r1), (2, r2)):
                for i in range(2, rk + 1):
                    if d(k, 2 * i):
                        coeffs[(f"g{k}", i)] = -d(k, 2 * i)
            if c1:
                coeffs[("g1", r1 + 1)] = -c1
            if c2:
                coeffs[("g2", r2 + 1)] = -c2
            rows = [-d(1, 2 * i - 1) for i in range(1, r1 + 1)] + [-(d(1, 2 * r1 + 1) - c2)]
            cols = [-d(2, 2 * j - 1) for j in range(1, r2 + 1)] + [-(d(2, 2 * r2 + 1) - c1)]
            assert all(x >= 0 for x in rows + cols) and sum(rows) == sum(cols)
            nr = [0]
            for x in rows:
                nr.append(nr[-1] + x)
            nc = [0]
            for x in cols:
                nc.append(nc[-1] + x)
            for i in range(1, r1 + 2):
                for j in range(1, r2 + 2):
                    hi = min(nr[i], nc[j])
                    lo = max(nr[i - 1], nc[j - 1])
                    if hi > lo:
                        assert i + j < r1 + r2 + 2, "corner cell must stay empty"
                        coeffs[("gij", i, j)] = hi - lo
        elif r1 and not r2:
            for i in range(2, r1 + 1):
                if d(1, 2 * i):
                    coeffs[("g1", i)] = -d(1, 2 * i)
            if d(1, 2 * r1 + 2):
                coeffs[("g1", r1 + 1)] = -d(1, 2 * r1 + 2)
            for i in range(1, r1 + 1):
                if d(1, 2 * i - 1):
                    coeffs[("gij", i, 1)] = -d(1, 2 * i - 1)
        elif r2 and not r1:
            for j in range(2, r2 + 1):
                if d(2, 2 * j):
                    coeffs[("g2", j)] = -d(2, 2 * j)
            if d(2, 2 * r2 + 2):
                coeffs[("g2", r2 + 1)] = -d(2, 2 * r2 + 2)
            for j in range(1, r2 + 1):
                if d(2, 2 * j - 1):
                    coeffs[("gij", 1, j)] = -d(2, 2 * j - 1)
        # r1 = r2 = 0 boundary: gamma = 0 and the decomposition is empty.

    total = [0] * len(names)
    for tag, mult in coeffs.items():
        assert mult >= 0
        if tag[0] == "g1":
            vec = _gamma_k_vec(tw, 1, tag[1])
        elif tag[0] == "g2":
            vec = _gamma_k_vec(tw, 2, tag[1])
        else:
            vec = _gamma_ij_vec(tw, tag[1], tag[2])
        for t, v in enumerate(vec):
            total[t] += mult * v
    if tuple(total) != tuple(gamma_coords):
        raise AssertionError("recombination identity failed")
    return coeffs, internals


def _witness_14(case_id, params, gamma_coords):
    """gamma = a1 s1 + a2 s2 + a3 s3 with a1 >= a2 + a3 decomposes on
    {s1, s1+s2, s1+s3} greedily; unique since the generators are free."""
    a1, a2, a3 = gamma_coords
    if a1 < a2 + a3 or min(a1, a2, a3) < 0:
        raise ValueError("gamma is not in the semigroup")
    coeffs = {}
    if a2:
        coeffs[("g12",)] = a2
    if a3:
        coeffs[("g13",)] = a3
    if a1 - a2 - a3:
        coeffs[("g1",)] = a1 - a2 - a3
    return coeffs, {}
