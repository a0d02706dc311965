"""Named potential families: five fully solvable, eight quasi-solvable.

Each entry bundles the coefficient data of the generating operator, the
coordinate branch, the closed-form potential / energies / wavefunctions,
parameter validation, and the defaults used by the numeric cross-check.

Conventions.  For the fully solvable (ES) entries the level index j selects
the representation: level j is produced with n = j, the shift d evaluated at
that n, and the closed-form energy E_j; the resulting potential is the same
for every j, which the tests assert.  For the quasi-solvable (QES) entries n
is fixed, d_j comes out of the algebraic-sector solve, and E_j = offset +
d_j.  The sign branch of periodic/hyperbolic families 1 and 2 selects the
wavefunction's trigonometric factor (plus branch: cos- resp. sinh-type); for
families 3 and 4 it is the sign that appears in the wavefunction exponent.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .algebra import AlgebraCoefficients, BPolynomials, as_fraction, b_polynomials
from .errors import InvalidParameterError, NoBoundStateError, NotApplicableError
from .mapping import (
    Branch,
    Mapping,
    PotentialModel,
    PrefactorTag,
    build_mapping,
    half_line_sqrt,
    identity_shift,
)
from .specfun import genlaguerre, hermite, jacobi, scaled_exp
from .spectral import SpectralResult, compose_energies, solve_algebraic_sector

__all__ = [
    "CatalogEntry",
    "make_entry",
    "closed_form_energy",
    "closed_form_wavefunction",
    "sector_count",
    "list_families",
    "FAMILY_NAMES",
]

ES_NAMES = ("harmonic", "morse", "poschl-teller", "scarf-ii", "coulomb")
QES_PERIODIC = ("periodic-v1", "periodic-v2", "periodic-v3", "periodic-v4")
QES_HYPERBOLIC = ("hyperbolic-v1", "hyperbolic-v2", "hyperbolic-v3",
                  "hyperbolic-v4")
FAMILY_NAMES = ES_NAMES + QES_PERIODIC + QES_HYPERBOLIC


@dataclass
class CatalogEntry:
    name: str
    kind: str                      # "es" | "qes-periodic" | "qes-hyperbolic"
    params: dict
    sign: int | None
    n: int
    algebra: AlgebraCoefficients
    bp: BPolynomials
    mapping: Mapping
    potential: PotentialModel
    domain: tuple[float, float]
    period: float | None
    prefactor: PrefactorTag
    gauge_log: object | None       # log of the closed-form gauge factor
    fd_defaults: dict
    plot_range: tuple[float, float]
    gauge_x0: float
    energy_offset: float | None = None       # QES
    sector_coefficient: Fraction | None = None
    max_j: int | None = None                 # ES bound-state cap (None: all j)
    _energy_fn: object | None = None         # ES closed-form E(j)
    _psi_fn: object | None = None            # ES closed-form psi builder
    _algebra_at: object | None = None        # ES: j -> AlgebraCoefficients
    _spectral: SpectralResult | None = field(default=None, repr=False)

    # -- spectra ---------------------------------------------------------

    def spectral(self) -> SpectralResult:
        """Algebraic-sector levels with energies composed (QES only)."""
        if self.kind == "es":
            raise NotApplicableError(
                "fully solvable entries take their spectra from closed forms"
            )
        if self._spectral is None:
            raw = solve_algebraic_sector(self.algebra)
            self._spectral = compose_energies(raw, self.energy_offset)
        return self._spectral

    def closed_form_energy(self, j: int) -> float:
        if j < 0 or int(j) != j:
            raise NoBoundStateError("level index must be a non-negative integer")
        j = int(j)
        if self.kind == "es":
            if self.max_j is not None and j > self.max_j:
                raise NoBoundStateError(
                    f"{self.name}: no bound state with index {j} "
                    f"(highest is {self.max_j})"
                )
            return float(self._energy_fn(j))
        if j > self.n:
            raise NoBoundStateError(
                f"algebraic sector holds {self.n + 1} levels; index {j} is out"
            )
        return float(self.spectral().levels[j].E)

    def closed_form_wavefunction(self, j: int):
        """Unnormalized psi_j as a vectorized callable."""
        if self.kind == "es":
            self.closed_form_energy(j)  # reuse the bound-state check
            return self._psi_fn(int(j))
        self.closed_form_energy(j)
        b = self.spectral().levels[int(j)].b
        rev = np.asarray(b, float)[::-1]
        pref = self.prefactor
        glog = self.gauge_log
        mapping = self.mapping

        def psi(x):
            xi = mapping.xi_of_x(x)
            out = scaled_exp(glog(x), pref(x) * np.polyval(rev, xi))
            return out

        return psi

    def sector_count(self) -> int:
        if self.kind == "es":
            raise NotApplicableError(
                "the algebraic-sector count applies to quasi-solvable entries"
            )
        return int(2 * abs(self.sector_coefficient))

    def operator_potential_data(self, j: int):
        """(bp, d, E, mapping) for the operator-route potential at level j."""
        if self.kind == "es":
            alg = self._algebra_at(int(j))
            return (b_polynomials(alg), float(alg.d),
                    self.closed_form_energy(j), self.mapping)
        lv = self.spectral().levels[int(j)]
        return (self.bp, lv.d, lv.E, self.mapping)

    def verification_levels(self, j_max: int | None = None):
        """(index, energy) pairs the numeric oracle should reproduce."""
        if self.kind == "es":
            top = 3 if j_max is None else j_max
            if self.max_j is not None:
                top = min(top, self.max_j)
            return [(j, self.closed_form_energy(j)) for j in range(top + 1)]
        return [(j, lv.E) for j, lv in enumerate(self.spectral().levels)]


# ---------------------------------------------------------------------------
# validation helpers

def _require(cond: bool, message: str):
    if not cond:
        raise InvalidParameterError(message)


def _frac_params(params: dict, names: tuple[str, ...]) -> dict:
    missing = [k for k in names if k not in params]
    if missing:
        raise InvalidParameterError(f"missing parameters: {', '.join(missing)}")
    out = {}
    for k in names:
        v = params[k]
        out[k] = int(v) if k == "l" else as_fraction(v)
    return out


def _norm_sign(sign) -> int:
    if sign in (1, "+", "+1", "plus"):
        return 1
    if sign in (-1, "-", "-1", "minus"):
        return -1
    raise InvalidParameterError(f"sign branch must be '+' or '-', got {sign!r}")


# ---------------------------------------------------------------------------
# fully solvable entries

def _build_harmonic(params, sign, n):
    p = _frac_params(params, ("omega",))
    w = p["omega"]
    _require(w > 0, "omega must be positive")
    wf = float(w)

    def algebra_at(j):
        return AlgebraCoefficients(c_mm=1, c_0=-w, d=Fraction(j) * w / 2, n=j)

    alg = algebra_at(n)
    bp = b_polynomials(alg)
    mapping = build_mapping(bp, Branch(-np.inf, np.inf, sign=1, xi0=0.0),
                            identity_shift(0.0))
    pot = PotentialModel(lambda x: 0.25 * wf ** 2 * np.asarray(x, float) ** 2,
                         domain=(-np.inf, np.inf))

    def psi_fn(j):
        def psi(x):
            x = np.asarray(x, float)
            return np.exp(-0.25 * wf * x ** 2) * hermite(j, math.sqrt(wf / 2.0) * x)
        return psi

    half = max(10.0, math.sqrt(4.0 * (2 * 3 + 1) / wf + 100.0 / wf))
    return CatalogEntry(
        name="harmonic", kind="es", params=p, sign=None, n=n,
        algebra=alg, bp=bp, mapping=mapping, potential=pot,
        domain=(-np.inf, np.inf), period=None,
        prefactor=PrefactorTag("none"),
        gauge_log=lambda x: -0.25 * wf * np.asarray(x, float) ** 2,
        fd_defaults={"x_min": -half, "x_max": half, "points": 2001,
                     "bc": "dirichlet", "base_tol": 1e-3},
        plot_range=(-5.0, 5.0), gauge_x0=0.0,
        max_j=None,
        _energy_fn=lambda j: (j + 0.5) * wf,
        _psi_fn=psi_fn,
        _algebra_at=algebra_at,
    )


def _build_morse(params, sign, n):
    p = _frac_params(params, ("alpha", "A", "B"))
    al, A, B = p["alpha"], p["A"], p["B"]
    _require(al > 0, "alpha must be positive")
    _require(B > 0, "B must be positive for a normalizable ground state")
    alf, Af, Bf = float(al), float(A), float(B)

    def algebra_at(j):
        return AlgebraCoefficients(
            c_00=al * al,
            c_0=al * (j * al - 2 * A),
            c_m=2 * B * al,
            d=A * j * al - Fraction(3 * j * j) * al * al / 4,
            n=j,
        )

    alg = algebra_at(n)
    bp = b_polynomials(alg)
    mapping = build_mapping(bp, Branch(0.0, np.inf, sign=1, xi0=1.0),
                            identity_shift(0.0))
    pot = PotentialModel(
        lambda x: Bf ** 2 * np.exp(-2 * alf * np.asarray(x, float))
        - Bf * (2 * Af + alf) * np.exp(-alf * np.asarray(x, float)),
        domain=(-np.inf, np.inf),
    )
    max_j = None
    if Af / alf > 0:
        max_j = int(math.ceil(Af / alf - 1e-12)) - 1
    else:
        max_j = -1

    def psi_fn(j):
        def psi(x):
            x = np.asarray(x, float)
            t = np.exp(-alf * x)
            expo = (j * alf - Af) * x - (Bf / alf) * t
            lag = genlaguerre(j, 2 * Af / alf - 2 * j, (2 * Bf / alf) * t)
            return scaled_exp(expo, lag)
        return psi

    return CatalogEntry(
        name="morse", kind="es", params=p, sign=None, n=n,
        algebra=alg, bp=bp, mapping=mapping, potential=pot,
        domain=(-np.inf, np.inf), period=None,
        prefactor=PrefactorTag("none"),
        gauge_log=lambda x: -Af * np.asarray(x, float)
        - (Bf / alf) * np.exp(-alf * np.asarray(x, float)),
        fd_defaults={"x_min": -2.8, "x_max": 22.0, "points": 4001,
                     "bc": "dirichlet", "base_tol": 1e-3},
        plot_range=(-2.5, 8.0), gauge_x0=0.0,
        max_j=max_j,
        _energy_fn=lambda j: -(Af - j * alf) ** 2,
        _psi_fn=psi_fn,
        _algebra_at=algebra_at,
    )


def _build_poschl_teller(params, sign, n):
    p = _frac_params(params, ("alpha", "A", "B"))
    al, A, B = p["alpha"], p["A"], p["B"]
    _require(al > 0, "alpha must be positive")
    alf, Af, Bf = float(al), float(A), float(B)

    def algebra_at(j):
        return AlgebraCoefficients(
            c_00=4 * al * al,
            c_mm=-4 * al * al,
            c_0=4 * al * (A + B + al * (j + 1)),
            c_m=4 * al * (B - A - al),
            d=(4 * A * B + al * al * (1 + 3 * j) * (1 - j)
               + 2 * j * al * (3 * A - B) + 2 * al * (A + B)),
            n=j,
        )

    alg = algebra_at(n)
    bp = b_polynomials(alg)
    mapping = build_mapping(bp, Branch(1.0, np.inf, sign=1, xi0=1.0),
                            identity_shift(0.0))

    def v(x):
        x = np.asarray(x, float)
        sh = np.sinh(alf * x)
        ch = np.cosh(alf * x)
        return Bf * (Bf - alf) / sh ** 2 - Af * (Af + alf) / ch ** 2

    # bound states need A - B - 2 j alpha > 0
    if (Af - Bf) / (2 * alf) > 0:
        max_j = int(math.ceil((Af - Bf) / (2 * alf) - 1e-12)) - 1
    else:
        max_j = -1

    def psi_fn(j):
        def psi(x):
            x = np.asarray(x, float)
            sh = np.sinh(alf * x)
            ch = np.cosh(alf * x)
            jac = jacobi(j, Bf / alf - 0.5, -Af / alf - 0.5, np.cosh(2 * alf * x))
            return sh ** (Bf / alf) * ch ** (-Af / alf) * jac
        return psi

    return CatalogEntry(
        name="poschl-teller", kind="es", params=p, sign=None, n=n,
        algebra=alg, bp=bp, mapping=mapping,
        potential=PotentialModel(v, domain=(0.0, np.inf)),
        domain=(0.0, np.inf), period=None,
        prefactor=PrefactorTag("none"),
        gauge_log=None,
        # Dirichlet at eps shifts levels by ~ eps * |psi'(0)|^2 / ||psi||^2
        # when B = alpha (no repulsive wall), so eps must sit well below the
        # 1e-3 energy tolerance.
        fd_defaults={"x_min": 1e-5, "x_max": 12.0, "points": 2401,
                     "bc": "dirichlet", "base_tol": 1e-3},
        plot_range=(0.02, 8.0), gauge_x0=1.0,
        max_j=max_j,
        _energy_fn=lambda j: -(Af - Bf - 2 * j * alf) ** 2,
        _psi_fn=psi_fn,
        _algebra_at=algebra_at,
    )


def _build_scarf_ii(params, sign, n):
    p = _frac_params(params, ("alpha", "A", "B"))
    al, A, B = p["alpha"], p["A"], p["B"]
    _require(al > 0, "alpha must be positive")
    alf, Af, Bf = float(al), float(A), float(B)

    def algebra_at(j):
        return AlgebraCoefficients(
            c_00=al * al,
            c_mm=al * al,
            c_0=al * al * (j + 2) + 2 * A * al,
            c_m=2 * B * al,
            d=(al * al + A * al * (3 * j + 2)
               + Fraction(j) * al * al * (4 - 3 * j) / 4),
            n=j,
        )

    alg = algebra_at(n)
    bp = b_polynomials(alg)
    mapping = build_mapping(bp, Branch(-np.inf, np.inf, sign=1, xi0=0.0),
                            identity_shift(0.0))

    def v(x):
        x = np.asarray(x, float)
        sech = 1.0 / np.cosh(alf * x)
        return ((Bf ** 2 - Af * (Af + alf)) * sech ** 2
                + Bf * (2 * Af + alf) * sech * np.tanh(alf * x))

    if Af / alf > 0:
        max_j = int(math.ceil(Af / alf - 1e-12)) - 1
    else:
        max_j = -1

    def psi_fn(j):
        a_par = -1j * Bf / alf - Af / alf - 0.5
        b_par = +1j * Bf / alf - Af / alf - 0.5
        phase = (1j) ** (-j)

        def psi(x):
            x = np.asarray(x, float)
            sh = np.sinh(alf * x)
            jac = phase * jacobi(j, a_par, b_par, 1j * sh)
            jac = np.asarray(jac)
            tol = 1e-10 * (1.0 + np.max(np.abs(jac.real)))
            if np.max(np.abs(jac.imag)) > tol:
                raise ArithmeticError(
                    "complex Jacobi composition failed to produce a real value"
                )
            real = jac.real
            return (np.cosh(alf * x) ** (-Af / alf)
                    * np.exp(-(Bf / alf) * np.arctan(sh)) * real)
        return psi

    return CatalogEntry(
        name="scarf-ii", kind="es", params=p, sign=None, n=n,
        algebra=alg, bp=bp, mapping=mapping,
        potential=PotentialModel(v, domain=(-np.inf, np.inf)),
        domain=(-np.inf, np.inf), period=None,
        prefactor=PrefactorTag("none"),
        gauge_log=None,
        fd_defaults={"x_min": -16.0, "x_max": 16.0, "points": 3201,
                     "bc": "dirichlet", "base_tol": 1e-3},
        plot_range=(-8.0, 8.0), gauge_x0=0.0,
        max_j=max_j,
        _energy_fn=lambda j: -(Af - j * alf) ** 2,
        _psi_fn=psi_fn,
        _algebra_at=algebra_at,
    )


def _build_coulomb(params, sign, n):
    p = _frac_params(params, ("e2", "l"))
    e2, l = p["e2"], p["l"]
    _require(e2 > 0, "e2 must be positive")
    _require(isinstance(l, int) and l >= 0, "l must be a non-negative integer")
    e2f = float(e2)

    def algebra_at(j):
        return AlgebraCoefficients(
            c_0m=2,
            c_0=e2 / (j + l + 1),
            c_m=2 * (4 * l + j + 3),
            d=e2 * (3 * j + 4 * l + 4) / (2 * (j + l + 1)),
            n=j,
        )

    alg = algebra_at(n)
    bp = b_polynomials(alg)
    mapping = build_mapping(bp, Branch(0.0, np.inf, sign=1, xi0=0.0),
                            half_line_sqrt())

    def v(x):
        x = np.asarray(x, float)
        return -e2f / x + l * (l + 1) / x ** 2

    def psi_fn(j):
        # radial solution: the polynomial index follows the level index
        kappa = e2f / (2.0 * (j + l + 1))

        def psi(x):
            x = np.asarray(x, float)
            return (x ** (l + 1) * np.exp(-kappa * x)
                    * genlaguerre(j, 2 * l + 1, 2.0 * kappa * x))
        return psi

    return CatalogEntry(
        name="coulomb", kind="es", params=p, sign=None, n=n,
        algebra=alg, bp=bp, mapping=mapping,
        potential=PotentialModel(v, domain=(0.0, np.inf)),
        domain=(0.0, np.inf), period=None,
        prefactor=PrefactorTag("none"),
        gauge_log=None,
        fd_defaults={"x_min": 1e-3, "x_max": 200.0, "points": 20001,
                     "bc": "dirichlet", "base_tol": 5e-3},
        plot_range=(0.05, 40.0), gauge_x0=1.0,
        max_j=None,
        _energy_fn=lambda j: -e2f ** 2 / (4.0 * (j + l + 1) ** 2),
        _psi_fn=psi_fn,
        _algebra_at=algebra_at,
    )


# ---------------------------------------------------------------------------
# quasi-solvable periodic entries
#
# Shared structure: B4 = beta^2 (1 - xi^2), xi = cos(beta (x - a)), and the
# potential -(alpha^2 / 8 beta^2) cos 2beta(x-a) + cc * cos beta(x-a)
# - beta^2/4 with a family-specific cosine coefficient cc.

def _periodic_common(p, n):
    al, be, a = p["alpha"], p["beta"], p["a"]
    _require(al != 0, "alpha must be nonzero")
    _require(be != 0, "beta must be nonzero")
    return al, be, a, float(al), float(be), float(a)


def _periodic_entry(name, p, s, n, c_p, c_0, c_m, cc, offset, prefactor,
                    exp_sign, m_coeff):
    al, be, a = p["alpha"], p["beta"], p["a"]
    alf, bef, af = float(al), float(be), float(a)
    alg = AlgebraCoefficients(
        c_00=-be * be, c_mm=be * be,
        c_p=c_p, c_0=c_0, c_m=c_m, d=None, n=n,
    )
    bp = b_polynomials(alg)
    mapping = build_mapping(bp, Branch(-1.0, 1.0, sign=-1, xi0=1.0),
                            identity_shift(af))
    period = 2.0 * math.pi / abs(bef)

    def v(x):
        u = np.asarray(x, float) - af
        return (-(alf ** 2 / (8.0 * bef ** 2)) * np.cos(2.0 * bef * u)
                + cc * np.cos(bef * u) - bef ** 2 / 4.0)

    def glog(x):
        u = np.asarray(x, float) - af
        return exp_sign * (alf / bef ** 2) * np.sin(bef * u / 2.0) ** 2

    return CatalogEntry(
        name=name, kind="qes-periodic", params=p, sign=s, n=n,
        algebra=alg, bp=bp, mapping=mapping,
        potential=PotentialModel(v, domain=(-np.inf, np.inf), period=period),
        domain=(-np.inf, np.inf), period=period,
        prefactor=prefactor, gauge_log=glog,
        fd_defaults={"x_min": af, "x_max": af + period, "points": 801,
                     "bc": "bands", "base_tol": 1e-3},
        plot_range=(af, af + period), gauge_x0=af + period / 4.0,
        energy_offset=offset, sector_coefficient=m_coeff,
    )


def _build_periodic_v1(params, sign, n):
    p = _frac_params(params, ("alpha", "beta", "a"))
    s = _norm_sign(sign)
    al, be, a, alf, bef, af = _periodic_common(p, n)
    pref = PrefactorTag("cos" if s > 0 else "sin", freq=bef / 2.0, center=af)
    return _periodic_entry(
        "periodic-v1", p, s, n,
        c_p=-al, c_0=-(n + 1) * be * be, c_m=s * be * be + al,
        cc=-alf * (n + 1),
        offset=(n * (n + 2) / 4.0) * bef ** 2 - alf ** 2 / (8.0 * bef ** 2)
        - s * alf / 2.0,
        prefactor=pref, exp_sign=-1.0, m_coeff=Fraction(n + 1),
    )


def _build_periodic_v2(params, sign, n):
    p = _frac_params(params, ("alpha", "beta", "a"))
    s = _norm_sign(sign)
    al, be, a, alf, bef, af = _periodic_common(p, n)
    pref = PrefactorTag("cos" if s > 0 else "sin", freq=bef / 2.0, center=af)
    return _periodic_entry(
        "periodic-v2", p, s, n,
        c_p=al, c_0=-(n + 1) * be * be, c_m=s * be * be - al,
        cc=alf * (n + 1),
        offset=(n * (n + 2) / 4.0) * bef ** 2 - alf ** 2 / (8.0 * bef ** 2)
        + s * alf / 2.0,
        prefactor=pref, exp_sign=+1.0, m_coeff=Fraction(n + 1),
    )


def _build_periodic_v3(params, sign, n):
    p = _frac_params(params, ("alpha", "beta", "a"))
    s = _norm_sign(sign)
    al, be, a, alf, bef, af = _periodic_common(p, n)
    pref = PrefactorTag("sin", freq=bef, center=af)
    return _periodic_entry(
        "periodic-v3", p, s, n,
        c_p=s * al, c_0=-(n + 2) * be * be, c_m=-s * al,
        cc=s * alf * (n + 1.5),
        offset=((n * (n + 4) + 3) / 4.0) * bef ** 2
        - alf ** 2 / (8.0 * bef ** 2),
        prefactor=pref, exp_sign=float(s), m_coeff=Fraction(2 * n + 3, 2),
    )


def _build_periodic_v4(params, sign, n):
    p = _frac_params(params, ("alpha", "beta", "a"))
    s = _norm_sign(sign)
    al, be, a, alf, bef, af = _periodic_common(p, n)
    return _periodic_entry(
        "periodic-v4", p, s, n,
        c_p=s * al, c_0=-n * be * be, c_m=-s * al,
        cc=s * alf * (n + 0.5),
        offset=((n * n - 1) / 4.0) * bef ** 2 - alf ** 2 / (8.0 * bef ** 2),
        prefactor=PrefactorTag("none"), exp_sign=float(s),
        m_coeff=Fraction(2 * n + 1, 2),
    )


# ---------------------------------------------------------------------------
# quasi-solvable hyperbolic (double-well) entries
#
# Shared structure: B4 = 4 gamma^2 (xi^2 - 1), xi = cosh(2 gamma (x - a)),
# potential (gamma^2 eta^2 / 8) cosh 4g(x-a) + hc * cosh 2g(x-a)
# - gamma^2 eta^2 / 8.

def _hyperbolic_entry(name, p, s, n, c_p, c_0, c_m, hc, offset, prefactor,
                      exp_sign, t_coeff):
    ga, eta, a = p["gamma"], p["eta"], p["a"]
    gaf, etf, af = float(ga), float(eta), float(a)
    alg = AlgebraCoefficients(
        c_00=4 * ga * ga, c_mm=-4 * ga * ga,
        c_p=c_p, c_0=c_0, c_m=c_m, d=None, n=n,
    )
    bp = b_polynomials(alg)
    mapping = build_mapping(bp, Branch(1.0, np.inf, sign=1, xi0=1.0),
                            identity_shift(af))

    def v(x):
        u = np.asarray(x, float) - af
        return ((gaf ** 2 * etf ** 2 / 8.0) * np.cosh(4.0 * gaf * u)
                + hc * np.cosh(2.0 * gaf * u) - gaf ** 2 * etf ** 2 / 8.0)

    def glog(x):
        u = np.asarray(x, float) - af
        return exp_sign * (etf / 4.0) * np.cosh(2.0 * gaf * u)

    return CatalogEntry(
        name=name, kind="qes-hyperbolic", params=p, sign=s, n=n,
        algebra=alg, bp=bp, mapping=mapping,
        potential=PotentialModel(v, domain=(-np.inf, np.inf)),
        domain=(-np.inf, np.inf), period=None,
        prefactor=prefactor, gauge_log=glog,
        fd_defaults={"x_min": af - 8.0, "x_max": af + 8.0, "points": 3201,
                     "bc": "dirichlet", "base_tol": 1e-3, "v_cap": 1e8},
        plot_range=(af - 3.0, af + 3.0), gauge_x0=af + 1.0,
        energy_offset=offset, sector_coefficient=t_coeff,
    )


def _hyperbolic_common(params):
    p = _frac_params(params, ("gamma", "eta", "a"))
    _require(p["gamma"] != 0, "gamma must be nonzero")
    _require(p["eta"] != 0, "eta must be nonzero")
    return p


def _build_hyperbolic_v1(params, sign, n):
    p = _hyperbolic_common(params)
    s = _norm_sign(sign)
    ga, eta = p["gamma"], p["eta"]
    _require(eta < 0, "eta must be negative for a decaying wavefunction")
    gaf, etf = float(ga), float(eta)
    pref = PrefactorTag("sinh" if s > 0 else "cosh", freq=gaf,
                        center=float(p["a"]))
    return _hyperbolic_entry(
        "hyperbolic-v1", p, s, n,
        c_p=2 * ga * ga * eta, c_0=4 * ga * ga * (n + 1),
        c_m=2 * ga * ga * (2 * s - eta),
        hc=2.0 * etf * gaf ** 2 * (n + 1),
        offset=-((n + 1) ** 2 + s * etf) * gaf ** 2,
        prefactor=pref, exp_sign=+1.0, t_coeff=Fraction(n + 1),
    )


def _build_hyperbolic_v2(params, sign, n):
    p = _hyperbolic_common(params)
    s = _norm_sign(sign)
    ga, eta = p["gamma"], p["eta"]
    _require(eta > 0, "eta must be positive for a decaying wavefunction")
    gaf, etf = float(ga), float(eta)
    pref = PrefactorTag("sinh" if s > 0 else "cosh", freq=gaf,
                        center=float(p["a"]))
    return _hyperbolic_entry(
        "hyperbolic-v2", p, s, n,
        c_p=-2 * ga * ga * eta, c_0=4 * ga * ga * (n + 1),
        c_m=2 * ga * ga * (eta + 2 * s),
        hc=-2.0 * etf * gaf ** 2 * (n + 1),
        offset=-((n + 1) ** 2 - s * etf) * gaf ** 2,
        prefactor=pref, exp_sign=-1.0, t_coeff=Fraction(n + 1),
    )


def _build_hyperbolic_v3(params, sign, n):
    p = _hyperbolic_common(params)
    s = _norm_sign(sign)  # the sign that appears in the wavefunction exponent
    ga, eta = p["gamma"], p["eta"]
    _require(s * float(eta) < 0,
             "the exponent sign times eta must be negative for normalizability")
    gaf, etf = float(ga), float(eta)
    return _hyperbolic_entry(
        "hyperbolic-v3", p, s, n,
        c_p=s * 2 * ga * ga * eta, c_0=4 * n * ga * ga,
        c_m=-s * 2 * ga * ga * eta,
        hc=s * 2.0 * etf * gaf ** 2 * (n + 0.5),
        offset=-(n ** 2) * gaf ** 2,
        prefactor=PrefactorTag("none"), exp_sign=float(s),
        t_coeff=Fraction(2 * n + 1, 2),
    )


def _build_hyperbolic_v4(params, sign, n):
    p = _hyperbolic_common(params)
    s = _norm_sign(sign)  # exponent-sign convention, as in family 3
    ga, eta = p["gamma"], p["eta"]
    _require(s * float(eta) < 0,
             "the exponent sign times eta must be negative for normalizability")
    gaf, etf = float(ga), float(eta)
    pref = PrefactorTag("sinh", freq=2.0 * gaf, center=float(p["a"]))
    return _hyperbolic_entry(
        "hyperbolic-v4", p, s, n,
        c_p=s * 2 * ga * ga * eta, c_0=4 * ga * ga * (n + 2),
        c_m=-s * 2 * ga * ga * eta,
        hc=s * 2.0 * etf * gaf ** 2 * (n + 1.5),
        offset=-((n + 2) ** 2) * gaf ** 2,
        prefactor=pref, exp_sign=float(s),
        t_coeff=Fraction(2 * n + 3, 2),
    )


# ---------------------------------------------------------------------------

_BUILDERS = {
    "harmonic": (_build_harmonic, ("omega",), False),
    "morse": (_build_morse, ("alpha", "A", "B"), False),
    "poschl-teller": (_build_poschl_teller, ("alpha", "A", "B"), False),
    "scarf-ii": (_build_scarf_ii, ("alpha", "A", "B"), False),
    "coulomb": (_build_coulomb, ("e2", "l"), False),
    "periodic-v1": (_build_periodic_v1, ("alpha", "beta", "a"), True),
    "periodic-v2": (_build_periodic_v2, ("alpha", "beta", "a"), True),
    "periodic-v3": (_build_periodic_v3, ("alpha", "beta", "a"), True),
    "periodic-v4": (_build_periodic_v4, ("alpha", "beta", "a"), True),
    "hyperbolic-v1": (_build_hyperbolic_v1, ("gamma", "eta", "a"), True),
    "hyperbolic-v2": (_build_hyperbolic_v2, ("gamma", "eta", "a"), True),
    "hyperbolic-v3": (_build_hyperbolic_v3, ("gamma", "eta", "a"), True),
    "hyperbolic-v4": (_build_hyperbolic_v4, ("gamma", "eta", "a"), True),
}


def make_entry(name: str, params: dict, sign=None, n: int = 0) -> CatalogEntry:
    """Construct a named family entry; rejects invalid parameters with the
    failing predicate spelled out."""
    key = name.lower().replace("_", "-")
    if key not in _BUILDERS:
        raise InvalidParameterError(
            f"unknown family {name!r}; known: {', '.join(FAMILY_NAMES)}"
        )
    if not isinstance(n, int) or n < 0:
        raise InvalidParameterError("n must be a non-negative integer")
    builder, names, needs_sign = _BUILDERS[key]
    if needs_sign and sign is None:
        raise InvalidParameterError(f"{key} needs a sign branch ('+' or '-')")
    return builder(params, sign, n)


def closed_form_energy(entry: CatalogEntry, j: int) -> float:
    return entry.closed_form_energy(j)


def closed_form_wavefunction(entry: CatalogEntry, j: int, x):
    return entry.closed_form_wavefunction(j)(x)


def sector_count(entry: CatalogEntry) -> int:
    return entry.sector_count()


_FAMILY_DOC = {
    "harmonic": {
        "params": {"omega": "omega > 0"},
        "domain": "(-inf, inf)",
        "energies": "E_j = (j + 1/2) omega for every j >= 0",
    },
    "morse": {
        "params": {"alpha": "alpha > 0", "A": "real", "B": "B > 0"},
        "domain": "(-inf, inf)",
        "energies": "E_j = -(A - j alpha)^2 for j < A/alpha",
    },
    "poschl-teller": {
        "params": {"alpha": "alpha > 0", "A": "real", "B": "real"},
        "domain": "(0, inf)",
        "energies": "E_j = -(A - B - 2 j alpha)^2 for j < (A-B)/(2 alpha)",
    },
    "scarf-ii": {
        "params": {"alpha": "alpha > 0", "A": "real", "B": "real"},
        "domain": "(-inf, inf)",
        "energies": "E_j = -(A - j alpha)^2 for j < A/alpha",
    },
    "coulomb": {
        "params": {"e2": "e2 > 0", "l": "integer l >= 0"},
        "domain": "(0, inf)",
        "energies": "E_j = -e2^2 / (4 (j + l + 1)^2) for every j >= 0",
    },
    "periodic-v1": {
        "params": {"alpha": "alpha != 0", "beta": "beta != 0", "a": "real"},
        "domain": "(-inf, inf), period 2 pi / |beta|",
        "sector_count": "2(n+1)",
    },
    "periodic-v2": {
        "params": {"alpha": "alpha != 0", "beta": "beta != 0", "a": "real"},
        "domain": "(-inf, inf), period 2 pi / |beta|",
        "sector_count": "2(n+1)",
    },
    "periodic-v3": {
        "params": {"alpha": "alpha != 0", "beta": "beta != 0", "a": "real"},
        "domain": "(-inf, inf), period 2 pi / |beta|",
        "sector_count": "2n+3",
    },
    "periodic-v4": {
        "params": {"alpha": "alpha != 0", "beta": "beta != 0", "a": "real"},
        "domain": "(-inf, inf), period 2 pi / |beta|",
        "sector_count": "2n+1",
    },
    "hyperbolic-v1": {
        "params": {"gamma": "gamma != 0", "eta": "eta < 0", "a": "real"},
        "domain": "(-inf, inf)",
        "sector_count": "2(n+1)",
    },
    "hyperbolic-v2": {
        "params": {"gamma": "gamma != 0", "eta": "eta > 0", "a": "real"},
        "domain": "(-inf, inf)",
        "sector_count": "2(n+1)",
    },
    "hyperbolic-v3": {
        "params": {"gamma": "gamma != 0", "eta": "sign * eta < 0", "a": "real"},
        "domain": "(-inf, inf)",
        "sector_count": "2n+1",
    },
    "hyperbolic-v4": {
        "params": {"gamma": "gamma != 0", "eta": "sign * eta < 0", "a": "real"},
        "domain": "(-inf, inf)",
        "sector_count": "2n+3",
    },
}


def list_families() -> list[dict]:
    """Machine-readable catalog description (also the list-families output)."""
    out = []
    for name in FAMILY_NAMES:
        _, param_names, needs_sign = _BUILDERS[name]
        doc = _FAMILY_DOC[name]
        item = {
            "name": name,
            "class": ("exactly-solvable" if name in ES_NAMES
                      else "quasi-solvable-periodic" if name in QES_PERIODIC
                      else "quasi-solvable-hyperbolic"),
            "params": {k: doc["params"][k] for k in param_names},
            "sign_branches": ["+", "-"] if needs_sign else [],
            "domain": doc["domain"],
        }
        if "period" in doc.get("domain", ""):
            item["period"] = "2*pi/|beta|"
        if name in ES_NAMES:
            item["energies"] = doc["energies"]
        else:
            item["sector_count"] = doc["sector_count"]
        out.append(item)
    return out
