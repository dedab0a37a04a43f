"""Angular-momentum algebra for Zeeman-degenerate optical transitions.

Conventions (Condon-Shortley throughout):

* spherical unit vectors  e_{+1} = -(x + iy)/sqrt(2),  e_0 = z,
  e_{-1} = (x - iy)/sqrt(2);
* a polarization vector is stored through its contravariant components
  c_q, defined by  e = sum_q c_q e_q;
* the spherical dot product with a rank-1 tensor T is
  e . T = sum_q (-1)^q c_q T^{-q}.

The dimensionless dipole operator Q couples the ground level (angular
momentum Fg) to the excited level (Fe).  Its lowering components are

    <Fg mg| Q^q |Fe me> = sqrt((2Fe+1)/(2Fg+1)) * <Fe me; 1 q | Fg mg>,

nonzero only for mg = me + q.  The sqrt prefactor normalizes Q so that
sum_q Qeg^q Qge^q equals the identity on the excited subspace, which makes
the spontaneous-emission feeding term trace preserving for branching
ratio 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np

# Largest angular momentum the floating-point Racah sums support before
# factorials degrade double precision.
MAX_J = 20.0


def _twice(value, name: str = "argument") -> int:
    """Doubled-integer representation of a half-integer quantum number."""
    doubled = 2.0 * float(value)
    rounded = round(doubled)
    if abs(doubled - rounded) > 1e-9:
        raise ValueError(f"{name} must be an integer or half-integer, got {value!r}")
    return int(rounded)


@lru_cache(maxsize=None)
def _fact(n: int) -> float:
    return float(math.factorial(n))


def _balanced_ratio(numerators, denominators) -> float:
    """prod(n!) / prod(d!) with multiplies and divides interleaved.

    Keeping the running product near unity avoids overflow/underflow for
    quantum numbers up to MAX_J, where individual factorials reach ~1e84.
    """
    nums = sorted((_fact(n) for n in numerators), reverse=True)
    dens = sorted((_fact(d) for d in denominators), reverse=True)
    out = 1.0
    i = j = 0
    while i < len(nums) or j < len(dens):
        if j == len(dens) or (i < len(nums) and out <= 1.0):
            out *= nums[i]
            i += 1
        else:
            out /= dens[j]
            j += 1
    return out


def _balanced_sqrt_ratio(numerators, denominators) -> float:
    """sqrt(prod(n!) / prod(d!)) via pairwise ratios of factorial roots."""
    nums = sorted((math.sqrt(_fact(n)) for n in numerators), reverse=True)
    dens = sorted((math.sqrt(_fact(d)) for d in denominators), reverse=True)
    out = 1.0
    i = j = 0
    while i < len(nums) or j < len(dens):
        if j == len(dens) or (i < len(nums) and out <= 1.0):
            out *= nums[i]
            i += 1
        else:
            out /= dens[j]
            j += 1
    return out


def _triangle_ok(a2: int, b2: int, c2: int) -> bool:
    """Triangle rule for doubled angular momenta, including integer perimeter."""
    if (a2 + b2 + c2) % 2 != 0:
        return False
    return abs(a2 - b2) <= c2 <= a2 + b2


def _check_range(*j2s: int) -> None:
    if any(j2 > 2 * MAX_J for j2 in j2s):
        raise ValueError(f"angular momentum exceeds supported range j <= {MAX_J:g}")
    if any(j2 < 0 for j2 in j2s):
        raise ValueError("angular momenta must be nonnegative")


def wigner3j(j1, j2, j3, m1, m2, m3) -> float:
    """Wigner 3-j symbol evaluated with the Racah single-sum formula.

    Returns exact zeros when the triangle rule or projection sum rule is
    violated; raises ValueError for non-half-integer arguments, for
    j + m combinations that are not integers, or for j above MAX_J.
    """
    tj1, tj2, tj3 = (_twice(j, "j") for j in (j1, j2, j3))
    tm1, tm2, tm3 = (_twice(m, "m") for m in (m1, m2, m3))
    _check_range(tj1, tj2, tj3)
    for tj, tm in ((tj1, tm1), (tj2, tm2), (tj3, tm3)):
        if (tj + tm) % 2 != 0:
            raise ValueError("j and m must differ by an integer")
    if tm1 + tm2 + tm3 != 0:
        return 0.0
    if not _triangle_ok(tj1, tj2, tj3):
        return 0.0
    if abs(tm1) > tj1 or abs(tm2) > tj2 or abs(tm3) > tj3:
        return 0.0

    # All factorial arguments below are integers (halved doubled values).
    a = (tj1 + tj2 - tj3) // 2
    b = (tj1 - tj2 + tj3) // 2
    c = (-tj1 + tj2 + tj3) // 2
    prefactor = _balanced_sqrt_ratio(
        [
            a,
            b,
            c,
            (tj1 + tm1) // 2,
            (tj1 - tm1) // 2,
            (tj2 + tm2) // 2,
            (tj2 - tm2) // 2,
            (tj3 + tm3) // 2,
            (tj3 - tm3) // 2,
        ],
        [(tj1 + tj2 + tj3) // 2 + 1],
    )

    k_min = max(0, (tj2 - tj3 - tm1) // 2, (tj1 - tj3 + tm2) // 2)
    k_max = min(a, (tj1 - tm1) // 2, (tj2 + tm2) // 2)
    total = 0.0
    for k in range(k_min, k_max + 1):
        term = _balanced_ratio(
            [],
            [
                k,
                a - k,
                (tj1 - tm1) // 2 - k,
                (tj2 + tm2) // 2 - k,
                (tj3 - tj2 + tm1) // 2 + k,
                (tj3 - tj1 - tm2) // 2 + k,
            ],
        )
        total += -term if k % 2 else term

    phase = -1.0 if ((tj1 - tj2 - tm3) // 2) % 2 else 1.0
    return phase * prefactor * total


def wigner6j(j1, j2, j3, j4, j5, j6) -> float:
    """Wigner 6-j symbol {j1 j2 j3; j4 j5 j6} via the Racah sum.

    Zero when any of the four triads violates the triangle rule.
    """
    t = tuple(_twice(j, "j") for j in (j1, j2, j3, j4, j5, j6))
    _check_range(*t)
    tj1, tj2, tj3, tj4, tj5, tj6 = t
    triads = (
        (tj1, tj2, tj3),
        (tj1, tj5, tj6),
        (tj4, tj2, tj6),
        (tj4, tj5, tj3),
    )
    if not all(_triangle_ok(*tri) for tri in triads):
        return 0.0

    prefactor_nums = []
    prefactor_dens = []
    for a2, b2, c2 in triads:
        prefactor_nums += [
            (a2 + b2 - c2) // 2,
            (a2 - b2 + c2) // 2,
            (-a2 + b2 + c2) // 2,
        ]
        prefactor_dens.append((a2 + b2 + c2) // 2 + 1)
    prefactor = _balanced_sqrt_ratio(prefactor_nums, prefactor_dens)

    t1 = (tj1 + tj2 + tj3) // 2
    t2 = (tj1 + tj5 + tj6) // 2
    t3 = (tj4 + tj2 + tj6) // 2
    t4 = (tj4 + tj5 + tj3) // 2
    q1 = (tj1 + tj2 + tj4 + tj5) // 2
    q2 = (tj2 + tj3 + tj5 + tj6) // 2
    q3 = (tj3 + tj1 + tj6 + tj4) // 2

    total = 0.0
    for k in range(max(t1, t2, t3, t4), min(q1, q2, q3) + 1):
        term = _balanced_ratio(
            [k + 1],
            [k - t1, k - t2, k - t3, k - t4, q1 - k, q2 - k, q3 - k],
        )
        total += -term if k % 2 else term
    return prefactor * total


def clebsch_gordan(j1, m1, j2, m2, j, m) -> float:
    """Clebsch-Gordan coefficient <j1 m1; j2 m2 | j m>."""
    three_j = wigner3j(j1, j2, j, m1, m2, -float(m))
    if three_j == 0.0:
        return 0.0
    exponent = (_twice(j1) - _twice(j2) + _twice(m)) // 2
    phase = -1.0 if exponent % 2 else 1.0
    return phase * math.sqrt(_twice(j) + 1.0) * three_j


def _sixj_squared_exact(j1, j2, j3, j4, j5, j6) -> Fraction:
    """Square of a 6-j symbol as an exact rational number.

    The Racah sum is rational and the prefactor enters squared, so the
    square of the symbol is exactly representable with integer factorials.
    Used where exact branching ratios are required.
    """
    t = tuple(_twice(j, "j") for j in (j1, j2, j3, j4, j5, j6))
    tj1, tj2, tj3, tj4, tj5, tj6 = t
    triads = (
        (tj1, tj2, tj3),
        (tj1, tj5, tj6),
        (tj4, tj2, tj6),
        (tj4, tj5, tj3),
    )
    if not all(_triangle_ok(*tri) for tri in triads):
        return Fraction(0)

    delta_sq = Fraction(1)
    for a2, b2, c2 in triads:
        delta_sq *= Fraction(
            math.factorial((a2 + b2 - c2) // 2)
            * math.factorial((a2 - b2 + c2) // 2)
            * math.factorial((-a2 + b2 + c2) // 2),
            math.factorial((a2 + b2 + c2) // 2 + 1),
        )

    t1 = (tj1 + tj2 + tj3) // 2
    t2 = (tj1 + tj5 + tj6) // 2
    t3 = (tj4 + tj2 + tj6) // 2
    t4 = (tj4 + tj5 + tj3) // 2
    q1 = (tj1 + tj2 + tj4 + tj5) // 2
    q2 = (tj2 + tj3 + tj5 + tj6) // 2
    q3 = (tj3 + tj1 + tj6 + tj4) // 2

    total = Fraction(0)
    for k in range(max(t1, t2, t3, t4), min(q1, q2, q3) + 1):
        term = Fraction(
            math.factorial(k + 1),
            math.factorial(k - t1)
            * math.factorial(k - t2)
            * math.factorial(k - t3)
            * math.factorial(k - t4)
            * math.factorial(q1 - k)
            * math.factorial(q2 - k)
            * math.factorial(q3 - k),
        )
        total += -term if k % 2 else term
    return delta_sq * total * total


def branching_ratio(je, jg, i_nuc, fe, fg) -> float:
    """Fraction of spontaneous decays from (Je, Fe) landing in (Jg, Fg).

    Proportional to (2Fg+1)(2Je+1) {Je Jg 1; Fg Fe I}^2 and normalized so
    the sum over all hyperfine ground levels Fg is exactly 1.  Evaluated
    in exact rational arithmetic, so closed-form values like 5/6 come out
    bit-exact after the final float conversion.  Returns 0.0 when (Fe, Fg)
    are not dipole-coupled.
    """
    tjg = _twice(jg, "jg")
    ti = _twice(i_nuc, "i_nuc")
    tfg = _twice(fg, "fg")

    def weight(tfg_prime: int) -> Fraction:
        fg_prime = Fraction(tfg_prime, 2)
        sixj_sq = _sixj_squared_exact(je, jg, 1, fg_prime, fe, i_nuc)
        return (tfg_prime + 1) * (_twice(je) + 1) * sixj_sq

    numerator = weight(tfg)
    denominator = Fraction(0)
    for tfg_prime in range(abs(tjg - ti), tjg + ti + 1, 2):
        denominator += weight(tfg_prime)
    if denominator == 0:
        return 0.0
    return float(numerator / denominator)


@dataclass(frozen=True)
class AngularState:
    """Level structure of one degenerate two-level transition.

    fg, fe : half-integer angular momenta of the ground and excited level
    gg, ge : gyromagnetic factors; the Zeeman shift of sublevel m is
             g * m in Larmor units (mu_B B / hbar folded into the field)
    """

    fg: float
    fe: float
    gg: float
    ge: float

    def __post_init__(self):
        tfg = _twice(self.fg, "fg")
        tfe = _twice(self.fe, "fe")
        if tfg < 0 or tfe < 0:
            raise ValueError("fg and fe must be nonnegative")
        if abs(tfg - tfe) > 2:
            raise ValueError("|fg - fe| must be <= 1 for a dipole transition")
        if tfg == 0 and tfe == 0:
            raise ValueError("fg = fe = 0 carries no dipole transition")

    @property
    def dg(self) -> int:
        return _twice(self.fg) + 1

    @property
    def de(self) -> int:
        return _twice(self.fe) + 1

    @property
    def n(self) -> int:
        return self.dg + self.de

    @property
    def ground_m(self) -> tuple[float, ...]:
        return tuple(-self.fg + k for k in range(self.dg))

    @property
    def excited_m(self) -> tuple[float, ...]:
        return tuple(-self.fe + k for k in range(self.de))


@dataclass(frozen=True)
class Polarization:
    """Spherical contravariant components (c_{-1}, c_0, c_{+1}) of a unit vector."""

    c_minus: complex
    c_zero: complex
    c_plus: complex

    def __post_init__(self):
        norm = abs(self.c_minus) ** 2 + abs(self.c_zero) ** 2 + abs(self.c_plus) ** 2
        if abs(norm - 1.0) > 1e-12:
            raise ValueError(f"polarization components must have unit norm, got {norm}")

    def component(self, q: int) -> complex:
        return (self.c_minus, self.c_zero, self.c_plus)[q + 1]


def linear_polarization_x() -> Polarization:
    """Linear polarization along x with the quantization axis z along B.

    No pi component; the two circular components carry equal weight, so a
    single beam acts as pump and probe of opposite circular polarizations.
    """
    inv_sqrt2 = 1.0 / math.sqrt(2.0)
    return Polarization(inv_sqrt2, 0.0, -inv_sqrt2)


def linear_polarization_z() -> Polarization:
    """Linear polarization along the quantization axis (pure pi coupling)."""
    return Polarization(0.0, 1.0, 0.0)


@dataclass(frozen=True)
class DipoleComponents:
    """Spherical components of the dimensionless dipole operator.

    lowering[q + 1] is the dg x de matrix <Fg mg|Q^q|Fe me>; the raising
    components are its adjoints.  Normalized so that
    sum_q Qeg^q Qge^q = identity on the excited subspace.
    """

    state: AngularState
    lowering: np.ndarray = field(repr=False)  # shape (3, dg, de)

    def ge(self, q: int) -> np.ndarray:
        return self.lowering[q + 1]

    def eg(self, q: int) -> np.ndarray:
        return self.lowering[q + 1].conj().T

    def ge_embedded(self, q: int) -> np.ndarray:
        """Q^q_ge placed in the full n x n basis [ground block, excited block]."""
        n, dg = self.state.n, self.state.dg
        out = np.zeros((n, n), dtype=complex)
        out[:dg, dg:] = self.lowering[q + 1]
        return out

    def eg_embedded(self, q: int) -> np.ndarray:
        n, dg = self.state.n, self.state.dg
        out = np.zeros((n, n), dtype=complex)
        out[dg:, :dg] = self.lowering[q + 1].conj().T
        return out


@lru_cache(maxsize=None)
def dipole_components(state: AngularState) -> DipoleComponents:
    """Build the spherical dipole components for a transition.

    Cached per state; treat the returned arrays as read-only.
    """
    dg, de = state.dg, state.de
    scale = math.sqrt(de / dg)
    lowering = np.zeros((3, dg, de))
    for qi, q in enumerate((-1, 0, 1)):
        for ie, me in enumerate(state.excited_m):
            mg = me + q
            if abs(mg) > state.fg + 1e-9:
                continue
            ig = round(mg + state.fg)
            lowering[qi, ig, ie] = scale * clebsch_gordan(state.fe, me, 1, q, state.fg, mg)
    lowering.setflags(write=False)
    return DipoleComponents(state=state, lowering=lowering)


def lowering_coupling(dip: DipoleComponents, pol: Polarization) -> np.ndarray:
    """e . Q restricted to the e -> g (lowering) block, embedded n x n.

    This is sum_q (-1)^q c_q Qge^{-q}; together with its adjoint it forms
    the interaction Hamiltonian for a real polarization vector.
    """
    n = dip.state.n
    out = np.zeros((n, n), dtype=complex)
    for q in (-1, 0, 1):
        c = pol.component(q)
        if c != 0:
            sign = -1.0 if q % 2 else 1.0
            out += sign * c * dip.ge_embedded(-q)
    return out


def raising_coupling(dip: DipoleComponents, pol: Polarization) -> np.ndarray:
    """e . Q restricted to the g -> e (raising) block, embedded n x n."""
    n = dip.state.n
    out = np.zeros((n, n), dtype=complex)
    for q in (-1, 0, 1):
        c = pol.component(q)
        if c != 0:
            sign = -1.0 if q % 2 else 1.0
            out += sign * c * dip.eg_embedded(-q)
    return out


def zeeman_operator(state: AngularState) -> np.ndarray:
    """Diagonal magnetic-moment operator in Larmor units.

    Entry gg*mg on ground sublevels and ge*me on excited sublevels, so that
    multiplying by a field B (given as mu_B B / hbar) yields the angular
    frequency shifts.  The overall minus sign of the Zeeman Hamiltonian is
    applied where the Liouvillian is assembled, not here.
    """
    diag = [state.gg * m for m in state.ground_m] + [state.ge * m for m in state.excited_m]
    return np.diag(np.asarray(diag, dtype=float))
