"""Luna spherical systems: data model plus the systems the toolkit encodes.

A system stores the ambient root system, the subset S^p, the ordered
spherical roots (in simple-root coordinates), the ordered colors, and the
embedding Z-Sigma -> Z-Delta as one integer row per spherical root.  The
designated pair (D_p1, D_p2), when present, consists of N-Delta elements
(possibly sums of two colors in the degenerate wings).

Encoded systems:

* a^x(1,1,1) for SL(2)^3 (the localization of the q=2 / p=2 cases);
* the five-color systems of the +-3^2 cases, for SL(p+2) and SL(2+q);
* the two-wing systems of the (+3, 2^r, -2^s, ...) cases and their mirrors,
  in both the generic and the tau-less boundary regime, including the
  degenerate wings r = 0 / s = 0 and the end-color identification at the
  minimal first parameter;
* a^y(r,r) + a(t) + a^y(s,s), with its catalogued distinguished quotient.

Row data for the two-wing systems is reconstructed from the coefficient
identities of the generator construction (the gamma^k_i and gamma_{i,j}
sums), which pin every row uniquely; the reconstruction is cross-checked in
the test suite against the full set of coefficient identities.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from . import linalg
from .rootlat import SIMPLE_ROOTS, LatticeVector, RootSystem


@dataclass(frozen=True)
class SphericalSystem:
    name: str
    ambient: RootSystem
    s_p: tuple                 # global simple-root indices (0-based)
    sigma_names: tuple
    sigma: tuple               # LatticeVector per spherical root
    colors: tuple              # color names
    sigma_in_colors: tuple     # one integer row per spherical root
    designated: tuple = None   # ((vec or None), (vec or None)) over colors

    def __post_init__(self):
        assert len(self.sigma) == len(self.sigma_names) == len(self.sigma_in_colors)
        for row in self.sigma_in_colors:
            assert len(row) == len(self.colors)
        if self.sigma_in_colors and linalg.rank(
                [list(r) for r in self.sigma_in_colors]) != len(self.sigma):
            raise ValueError("spherical roots are not independent in Z-Delta")

    def color_index(self, name):
        return self.colors.index(name)

    def unit_color(self, name):
        v = [0] * len(self.colors)
        v[self.color_index(name)] = 1
        return tuple(v)

    def color_sum(self, *names):
        v = [0] * len(self.colors)
        for name in names:
            v[self.color_index(name)] += 1
        return tuple(v)

    def sigma_row(self, i):
        return self.sigma_in_colors[i]

    def with_designated(self, d1, d2):
        return replace(self, designated=(d1, d2))

    def to_json(self):
        return {
            "name": self.name,
            "ambient": [[t, r] for t, r in self.ambient.components],
            "s_p": list(self.s_p),
            "sigma_names": list(self.sigma_names),
            "sigma": [list(v.coords) for v in self.sigma],
            "colors": list(self.colors),
            "sigma_in_colors": [list(r) for r in self.sigma_in_colors],
            "designated": None if self.designated is None else
                [None if d is None else list(d) for d in self.designated],
        }


# Quotient data is catalogued per system instance.
_QUOTIENTS = {}


def system_ax111():
    """The rank-3 system on SL(2)^3 with sigma_i = alpha^(i)."""
    ambient = RootSystem((("A", 1), ("A", 1), ("A", 1)))
    sigma = tuple(LatticeVector(SIMPLE_ROOTS, tuple(1 if j == i else 0 for j in range(3)))
                  for i in range(3))
    rows = ((-1, 1, 1), (1, -1, 1), (1, 1, -1))
    sys_ = SphericalSystem("ax111", ambient, (), ("s1", "s2", "s3"), sigma,
                           ("D1", "D2", "D3"), rows)
    return sys_.with_designated(sys_.unit_color("D1"), sys_.unit_color("D2"))


# T-weights of the a^x(1,1,1) line bundles, from the matrix-coefficient model.
AX111_COLOR_WEIGHTS = {"D1": (0, 1, 1), "D2": (1, 0, 1), "D3": (1, 1, 0)}


def _five_color_system(name, ambient, chain_comp, wing_comp, chain_rank):
    """Common core of the +-3^2 systems: colors D1..D5 (D4 = D5 if the
    chain has rank 3).  chain_comp indexes the long A-factor, wing_comp the
    A1 factor; chain_rank = p - 1."""
    merged = chain_rank == 3
    colors = ("D1", "D2", "D3", "D4") if merged else ("D1", "D2", "D3", "D4", "D5")

    def row(entries):
        v = [0] * len(colors)
        for name_, c in entries:
            v[colors.index("D4" if merged and name_ == "D5" else name_)] += c
        return tuple(v)

    rows = (row([("D1", 1), ("D2", 1), ("D3", -1)]),
            row([("D1", -1), ("D2", 1), ("D3", 1), ("D5", -1)]),
            row([("D1", 1), ("D2", -1), ("D3", 1), ("D4", -1)]))
    rs = RootSystem(ambient)
    sigma = (rs.simple_root(wing_comp, 1),
             rs.simple_root(chain_comp, 1),
             rs.simple_root(chain_comp, chain_rank))
    off = rs.offsets()[chain_comp]
    s_p = tuple(off + j - 1 for j in range(3, chain_rank - 1))
    sys_ = SphericalSystem(name, rs, s_p, ("s1", "s2", "s3"), sigma, colors, rows)
    return sys_.with_designated(sys_.unit_color("D1"), sys_.unit_color("D2"))


def system_case_1_4(p):
    """System of the (+3^2, +1^(p-4)) orbit of SL(p+2); needs p >= 4."""
    if p < 4:
        raise ValueError("case with two +3 parts needs p >= 4")
    return _five_color_system("case1.4", (("A", p - 1), ("A", 1)), 0, 1, p - 1)


def system_case_1_5(q):
    """Mirror system (-3^2, -1^(q-4)) for SL(2+q); needs q >= 4."""
    if q < 4:
        raise ValueError("case with two -3 parts needs q >= 4")
    return _five_color_system("case1.5", (("A", 1), ("A", q - 1)), 1, 0, q - 1)


class TwoWingSystem:
    """Structured view of a two-wing system (the +-3 single-part cases).

    Wing k in {1, 2} has r_k pairs of spherical roots s^k_1..s^k_{2 r_k} and
    a color chain D^k_1..D^k_{2 r_k + 3} (one shorter in the boundary
    regime, where additionally D^1_{2r+3} and D^2_{2s+3} cross over to the
    opposite wing).  tilde(k, h) implements the hat-combinations used by the
    closed-form generator families.
    """

    def __init__(self, case_id, p, q, r, s):
        self.case_id = case_id
        mirror = case_id == "1.7"
        if r < 0 or s < 0:
            raise ValueError("wing sizes must be nonnegative")
        if not mirror:
            if r + s + 2 > p or r + s + 1 > q:
                raise ValueError("parameters out of range: need r+s+2 <= p, r+s+1 <= q")
            self.boundary = r + s == q - 1
            merge = p == r + s + 2
        else:
            if r + s + 1 > p or r + s + 2 > q:
                raise ValueError("parameters out of range: need r+s+1 <= p, r+s+2 <= q")
            self.boundary = r + s == p - 1
            merge = q == r + s + 2
        self.p, self.q, self.r1, self.r2 = p, q, r, s

        # Color slots (k, h); absent slots are dropped, the boundary regime
        # crosses the last slot over, and the minimal first parameter glues
        # the two end colors together.
        slots = []
        for k, rk in ((1, r), (2, s)):
            top = 2 * rk + (2 if self.boundary else 3)
            for h in range(1, top + 1):
                if rk == 0 and h == 1:
                    continue
                slots.append((k, h))
        alias = {}
        if merge:
            alias[(2, 2 * s + 2)] = (1, 2 * r + 2)
        if self.boundary:
            alias[(1, 2 * r + 3)] = (2, 2 * s + 1)
            alias[(2, 2 * s + 3)] = (1, 2 * r + 1)
        self.slots = [sl for sl in slots if sl not in alias]
        self.alias = alias
        self.index = {sl: i for i, sl in enumerate(self.slots)}
        self.system = self._build_system(mirror)

    def col(self, k, h):
        """Column index of D^k_h, or None when the slot does not exist."""
        sl = (k, h)
        sl = self.alias.get(sl, sl)
        return self.index.get(sl)

    def _vec(self, entries):
        v = [0] * len(self.slots)
        for k, h, c in entries:
            j = self.col(k, h)
            if j is not None:
                v[j] += c
        return tuple(v)

    def wing_rank(self, k):
        return self.r1 if k == 1 else self.r2

    def _rows(self):
        rows, names = [], []
        for k in (1, 2):
            rk = self.wing_rank(k)
            for i in range(1, rk + 1):
                odd = [(k, 2 * i - 2, -1), (k, 2 * i - 1, 1), (k, 2 * i, 1), (k, 2 * i + 1, -1)]
                if i == rk:
                    odd.append((k, 2 * i + 2, -1))
                even = [(k, 2 * i - 1, -1), (k, 2 * i, 1), (k, 2 * i + 1, 1)]
                even.append((k, 2 * i + 2, -1) if i < rk else (k, 2 * rk + 3, -1))
                rows.extend([self._vec(odd), self._vec(even)])
                names.extend([f"s{k}_{2 * i - 1}", f"s{k}_{2 * i}"])
        if not self.boundary:
            rows.append(self._vec([(1, 2 * self.r1 + 1, -1), (1, 2 * self.r1 + 3, 1),
                                   (2, 2 * self.r2 + 1, -1), (2, 2 * self.r2 + 3, 1)]))
            names.append("tau")
        return rows, names

    def _build_system(self, mirror):
        p, q, r, s = self.p, self.q, self.r1, self.r2
        comps = tuple(c for c in (("A", p - 1), ("A", q - 1)) if c[1] >= 1)
        rs = RootSystem(comps)
        a_off = 0 if p >= 2 else None
        ap_off = (p - 1 if p >= 2 else 0) if q >= 2 else None

        def a_root(j):
            return a_off + j - 1

        def ap_root(j):
            return ap_off + j - 1

        n_amb = rs.total_rank

        def simple(idx_list):
            v = [0] * n_amb
            for j in idx_list:
                v[j] += 1
            return LatticeVector(SIMPLE_ROOTS, tuple(v))

        roots = {}
        if not mirror:
            for i in range(1, r + 1):
                roots[f"s1_{2 * i - 1}"] = simple([a_root(p - i)])
                roots[f"s1_{2 * i}"] = simple([ap_root(i)])
            for i in range(1, s + 1):
                roots[f"s2_{2 * i - 1}"] = simple([a_root(i)])
                roots[f"s2_{2 * i}"] = simple([ap_root(q - i)])
            if not self.boundary:
                roots["tau"] = simple([ap_root(j) for j in range(r + 1, q - s)])
            sp = ([a_root(j) for j in range(s + 2, p - r - 1)]
                  + ([ap_root(j) for j in range(r + 2, q - s - 1)] if not self.boundary else []))
        else:
            for i in range(1, r + 1):
                roots[f"s1_{2 * i - 1}"] = simple([ap_root(i)])
                roots[f"s1_{2 * i}"] = simple([a_root(p - i)])
            for i in range(1, s + 1):
                roots[f"s2_{2 * i - 1}"] = simple([ap_root(q - i)])
                roots[f"s2_{2 * i}"] = simple([a_root(i)])
            if not self.boundary:
                roots["tau"] = simple([a_root(j) for j in range(s + 1, p - r)])
            sp = ([ap_root(j) for j in range(r + 2, q - s - 1)]
                  + ([a_root(j) for j in range(s + 2, p - r - 1)] if not self.boundary else []))

        rows, names = self._rows()
        colors = tuple(f"D{k}_{h}" for k, h in self.slots)
        sigma = tuple(roots[nm] for nm in names)
        sys_ = SphericalSystem(f"case{self.case_id}", rs, tuple(sorted(sp)),
                               tuple(names), sigma, colors, tuple(rows))
        d1 = self._vec([(1, 2, 1)] + ([(1, 3, 1)] if r == 0 else []))
        d2 = self._vec([(2, 2, 1)] + ([(2, 3, 1)] if s == 0 else []))
        self.d1, self.d2 = d1, d2
        return sys_.with_designated(d1, d2)

    def tilde(self, k, h):
        """hat-D^k_h as a color vector (absent colors contribute zero)."""
        rk = self.wing_rank(k)
        if h < 2 * rk + 1:
            return self._vec([(k, h, 1)])
        return self._vec([(k, h, 1), (k, h + 1, 1)])


def system_case_1_6(p, q, r, s):
    """Two-wing system of the (+3, +2^r, -2^s, ...) orbits of SL(p+q)."""
    return TwoWingSystem("1.6", p, q, r, s).system


def system_case_1_7(p, q, r, s):
    """Mirror two-wing system of the (-3, +2^r, -2^s, ...) orbits."""
    return TwoWingSystem("1.7", p, q, r, s).system


def two_wing_structure(case_id, p, q, r, s):
    if case_id not in ("1.6", "1.7"):
        raise ValueError(f"not a two-wing case: {case_id}")
    return TwoWingSystem(case_id, p, q, r, s)


def system_ay_a_ay(r, t, s):
    """The localized system a^y(r,r) + a(t) + a^y(s,s) with its quotient."""
    if r < 1 or s < 1 or t < 1:
        raise ValueError("need r, s >= 1 and t >= 1")
    rs = RootSystem((("A", r), ("A", r + s + t), ("A", s)))
    off1, off2, off3 = rs.offsets()
    ncol = 2 * r + 2 * s + 4
    colors = tuple(f"D{i}" for i in range(1, ncol + 1))

    def row(entries):
        v = [0] * ncol
        for d, c in entries:
            v[d - 1] += c
        return tuple(v)

    def simple(idx_list):
        v = [0] * rs.total_rank
        for j in idx_list:
            v[j] += 1
        return LatticeVector(SIMPLE_ROOTS, tuple(v))

    names, sigma, rows = [], [], []
    names.append("a1")
    sigma.append(simple([off1]))
    rows.append(row([(1, 1), (2, 1), (3, -1)]))
    for i in range(2, r + 1):
        names.append(f"a{i}")
        sigma.append(simple([off1 + i - 1]))
        rows.append(row([(2 * i - 2, -1), (2 * i - 1, 1), (2 * i, 1), (2 * i + 1, -1)]))
    for i in range(1, r + 1):
        names.append(f"a'{i}")
        sigma.append(simple([off2 + i - 1]))
        rows.append(row([(2 * i - 1, -1), (2 * i, 1), (2 * i + 1, 1), (2 * i + 2, -1)]))
    names.append("tau")
    sigma.append(simple([off2 + j for j in range(r, r + t)]))
    rows.append(row([(2 * r + 1, -1), (2 * r + 2, 1), (2 * r + 3, 1), (2 * r + 4, -1)]))
    for i in range(1, s + 1):
        names.append(f"a'{r + t + i}")
        sigma.append(simple([off2 + r + t + i - 1]))
        rows.append(row([(2 * r + 2 * i + 1, -1), (2 * r + 2 * i + 2, 1),
                         (2 * r + 2 * i + 3, 1), (2 * r + 2 * i + 4, -1)]))
    for i in range(1, s):
        names.append(f"a''{i}")
        sigma.append(simple([off3 + i - 1]))
        rows.append(row([(2 * r + 2 * i + 2, -1), (2 * r + 2 * i + 3, 1),
                         (2 * r + 2 * i + 4, 1), (2 * r + 2 * i + 5, -1)]))
    names.append(f"a''{s}")
    sigma.append(simple([off3 + s - 1]))
    rows.append(row([(2 * r + 2 * s + 2, -1), (2 * r + 2 * s + 3, 1), (2 * r + 2 * s + 4, 1)]))

    s_p = tuple(off2 + j - 1 for j in range(r + 2, r + t))
    sys_ = SphericalSystem("ay_a_ay", rs, s_p, tuple(names), tuple(sigma), colors, tuple(rows))

    delta1 = [f"D{2 * i}" for i in range(1, r + 1)]
    delta2 = [f"D{2 * r + 2 * i + 3}" for i in range(1, s + 1)]
    quotient_sigma = []
    for i in range(2, r + 1):
        quotient_sigma.append((f"a{i}", f"a'{i - 1}"))
    quotient_sigma.append(("tau",))
    for i in range(1, s):
        quotient_sigma.append((f"a'{r + t + 1 + i}", f"a''{i}"))
    _QUOTIENTS[sys_] = (frozenset(delta1 + delta2), tuple(quotient_sigma))
    return sys_


def quotient_by_colors(system, delta_prime):
    """Quotient by a catalogued distinguished set of colors.

    Only the a^y + a + a^y quotient (and the trivial empty set) is
    supported; anything else raises.
    """
    delta_prime = frozenset(delta_prime)
    unknown = delta_prime - set(system.colors)
    if unknown:
        raise ValueError(f"not colors of the system: {sorted(unknown)}")
    if not delta_prime:
        return system
    cat = _QUOTIENTS.get(system)
    if cat is None or cat[0] != delta_prime:
        raise ValueError("color subset is not a catalogued distinguished set")
    _, combos = cat
    keep = [i for i, c in enumerate(system.colors) if c not in delta_prime]
    name_of = {nm: i for i, nm in enumerate(system.sigma_names)}
    new_rows, new_sigma, new_names = [], [], []
    for combo in combos:
        idxs = [name_of[nm] for nm in combo]
        full = [sum(system.sigma_in_colors[i][j] for i in idxs)
                for j in range(len(system.colors))]
        for j, x in enumerate(full):
            if x and system.colors[j] in delta_prime:
                raise ValueError("catalogued quotient data fails the projection check")
        new_rows.append(tuple(full[j] for j in keep))
        vec = system.sigma[idxs[0]]
        for i in idxs[1:]:
            vec = vec + system.sigma[i]
        new_sigma.append(vec)
        new_names.append("+".join(combo))
    return SphericalSystem(system.name + "/quotient", system.ambient, system.s_p,
                           tuple(new_names), tuple(new_sigma),
                           tuple(system.colors[j] for j in keep),
                           tuple(new_rows), None)
