import math
from fractions import Fraction as Q

import numpy as np
import pytest

from sl2qes.algebra import Polynomial, b_polynomials
from sl2qes.catalog import (
    list_families,
    make_entry,
    sector_count,
)
from sl2qes.errors import (
    InvalidParameterError,
    NoBoundStateError,
    NotApplicableError,
)
from sl2qes.fdsolve import Grid, count_nodes, residual
from sl2qes.mapping import assemble_wavefunction, build_gauge


def poly(*coeffs):
    return Polynomial.of(*coeffs)


# ----------------------------------------------- operator data round trips
# Expected B3 / B2 are written out independently from the published family
# data; the entries must reproduce them exactly in rational arithmetic.

def expected_es(name, p, n):
    if name == "harmonic":
        w = p["omega"]
        return (poly(1), poly(0, -w), poly(n * w))
    if name == "morse":
        al, A, B = p["alpha"], p["A"], p["B"]
        return (poly(0, 0, al * al),
                poly(2 * B * al, al * (al - 2 * A)),
                poly(-n * n * al * al + 2 * A * n * al))
    if name == "poschl-teller":
        al, A, B = p["alpha"], p["A"], p["B"]
        return (poly(-4 * al * al, 0, 4 * al * al),
                poly(4 * al * (B - A - al), 4 * al * (A + B + 2 * al)),
                poly(al * al * (1 - 4 * n * n)
                     + 2 * al * (2 * n * (A - B) + A + B) + 4 * A * B))
    if name == "scarf-ii":
        al, A, B = p["alpha"], p["A"], p["B"]
        return (poly(al * al, 0, al * al),
                poly(2 * B * al, al * (2 * A + 3 * al)),
                poly(al * (n + 1) * (al * (1 - n) + 2 * A)))
    if name == "coulomb":
        e2, l = p["e2"], p["l"]
        return (poly(0, 4),
                poly(8 * (l + 1), e2 / (n + l + 1)),
                poly(e2 * (n + 2 * l + 2) / (n + l + 1)))
    raise KeyError(name)


@pytest.mark.parametrize("name,params", [
    ("harmonic", {"omega": Q(2)}),
    ("harmonic", {"omega": Q(7, 3)}),
    ("morse", {"alpha": Q(1), "A": Q(3), "B": Q(1)}),
    ("morse", {"alpha": Q(2, 3), "A": Q(5, 2), "B": Q(2)}),
    ("poschl-teller", {"alpha": Q(1), "A": Q(3), "B": Q(1)}),
    ("poschl-teller", {"alpha": Q(3, 2), "A": Q(4), "B": Q(1, 2)}),
    ("scarf-ii", {"alpha": Q(1), "A": Q(2), "B": Q(1)}),
    ("scarf-ii", {"alpha": Q(2), "A": Q(7, 2), "B": Q(-1, 3)}),
    ("coulomb", {"e2": Q(2), "l": 0}),
    ("coulomb", {"e2": Q(3, 2), "l": 2}),
])
@pytest.mark.parametrize("n", [0, 1, 2, 3, 4])
def test_es_operator_data_round_trip(name, params, n):
    entry = make_entry(name, params, n=n)
    b4, b3, b2 = expected_es(name, params, n)
    bp = b_polynomials(entry.algebra)
    assert bp.b4 == b4
    assert bp.b3 == b3
    assert bp.b2(entry.algebra.d) == b2


def expected_qes(name, p, s, n):
    if name.startswith("periodic"):
        al, be = p["alpha"], p["beta"]
        b4 = poly(be * be, 0, -be * be)
        if name == "periodic-v1":
            return (b4, poly(al + s * be * be, -2 * be * be, -al),
                    poly(Q(n * (n + 2)) * be * be / 4, n * al))
        if name == "periodic-v2":
            return (b4, poly(-al + s * be * be, -2 * be * be, al),
                    poly(Q(n * (n + 2)) * be * be / 4, -n * al))
        if name == "periodic-v3":
            return (b4, poly(-s * al, -3 * be * be, s * al),
                    poly(Q(n * (n + 4)) * be * be / 4, -s * n * al))
        if name == "periodic-v4":
            return (b4, poly(-s * al, -be * be, s * al),
                    poly(Q(n * n) * be * be / 4, -s * n * al))
    ga, eta = p["gamma"], p["eta"]
    g2 = ga * ga
    b4 = poly(-4 * g2, 0, 4 * g2)
    if name == "hyperbolic-v1":
        return (b4, poly(2 * g2 * (2 * s - eta), 8 * g2, 2 * g2 * eta),
                poly(-n * (n + 2) * g2, -2 * n * g2 * eta))
    if name == "hyperbolic-v2":
        return (b4, poly(2 * g2 * (eta + 2 * s), 8 * g2, -2 * g2 * eta),
                poly(-n * (n + 2) * g2, 2 * n * g2 * eta))
    if name == "hyperbolic-v3":
        # s is the wavefunction-exponent sign; the published upper row
        # corresponds to s = -1
        return (b4, poly(-s * 2 * g2 * eta, 4 * g2, s * 2 * g2 * eta),
                poly(-n * n * g2, -s * 2 * n * g2 * eta))
    if name == "hyperbolic-v4":
        return (b4, poly(-s * 2 * g2 * eta, 12 * g2, s * 2 * g2 * eta),
                poly(-n * (n + 4) * g2, -s * 2 * n * g2 * eta))
    raise KeyError(name)


@pytest.mark.parametrize("name,params,signs", [
    ("periodic-v1", {"alpha": Q(1), "beta": Q(1), "a": Q(0)}, ("+", "-")),
    ("periodic-v2", {"alpha": Q(3, 2), "beta": Q(2), "a": Q(1)}, ("+", "-")),
    ("periodic-v3", {"alpha": Q(2), "beta": Q(1), "a": Q(0)}, ("+", "-")),
    ("periodic-v4", {"alpha": Q(1, 2), "beta": Q(1), "a": Q(0)}, ("+", "-")),
    ("hyperbolic-v1", {"gamma": Q(1), "eta": Q(-1), "a": Q(0)}, ("+", "-")),
    ("hyperbolic-v2", {"gamma": Q(2), "eta": Q(3, 2), "a": Q(0)}, ("+", "-")),
    ("hyperbolic-v3", {"gamma": Q(1), "eta": Q(2), "a": Q(0)}, ("-",)),
    ("hyperbolic-v3", {"gamma": Q(1), "eta": Q(-2), "a": Q(0)}, ("+",)),
    ("hyperbolic-v4", {"gamma": Q(1), "eta": Q(1), "a": Q(0)}, ("-",)),
])
@pytest.mark.parametrize("n", [0, 1, 2, 3, 4])
def test_qes_operator_data_round_trip(name, params, signs, n):
    for sgn in signs:
        s = 1 if sgn == "+" else -1
        entry = make_entry(name, params, sign=sgn, n=n)
        b4, b3, b2_base = expected_qes(name, params, s, n)
        bp = b_polynomials(entry.algebra)
        assert bp.b4 == b4
        assert bp.b3 == b3
        assert bp.b2_base == b2_base


def test_make_entry_harmonic_shift_value():
    entry = make_entry("harmonic", {"omega": 2}, n=3)
    assert entry.algebra.d == Q(3)
    assert b_polynomials(entry.algebra).b2(entry.algebra.d) == poly(6)


def test_make_entry_periodic_v1_example():
    entry = make_entry("periodic-v1", {"alpha": 1, "beta": 1, "a": 0},
                       sign="+", n=1)
    bp = entry.bp
    assert bp.b3 == poly(2, -2, -1)            # -xi^2 - 2 xi + 2
    assert bp.b2_base == poly(Q(3, 4), 1)      # xi + 3/4


def test_make_entry_hyperbolic_v1_example():
    entry = make_entry("hyperbolic-v1", {"gamma": 1, "eta": -1, "a": 0},
                       sign="+", n=0)
    assert entry.bp.b4 == poly(-4, 0, 4)
    assert entry.bp.b3 == poly(6, 8, -2)       # -2 xi^2 + 8 xi + 6


# ------------------------------------------------------------------ spectra

def test_closed_form_energies():
    morse = make_entry("morse", {"alpha": 1, "A": 3, "B": 1}, n=2)
    assert morse.closed_form_energy(1) == pytest.approx(-4.0)
    with pytest.raises(NoBoundStateError):
        morse.closed_form_energy(3)    # j < A/alpha
    coulomb = make_entry("coulomb", {"e2": 2, "l": 0}, n=0)
    assert coulomb.closed_form_energy(0) == pytest.approx(-1.0)
    assert coulomb.closed_form_energy(2) == pytest.approx(-1.0 / 9.0)
    pt_marginal = make_entry("poschl-teller", {"alpha": 1, "A": 2, "B": 2},
                             n=0)
    with pytest.raises(NoBoundStateError):
        pt_marginal.closed_form_energy(0)   # A = B: threshold, no bound state


def test_qes_energy_indexing():
    entry = make_entry("periodic-v1", {"alpha": 1, "beta": 1, "a": 0},
                       sign="+", n=1)
    assert entry.closed_form_energy(0) == pytest.approx(3 / 8 - math.sqrt(3))
    assert entry.closed_form_energy(1) == pytest.approx(3 / 8 + math.sqrt(3))
    with pytest.raises(NoBoundStateError):
        entry.closed_form_energy(2)


# ------------------------------------------------------------ wavefunctions

def test_harmonic_wavefunctions():
    entry = make_entry("harmonic", {"omega": 2}, n=1)
    psi0 = entry.closed_form_wavefunction(0)
    assert psi0(0.0) == pytest.approx(1.0)
    psi1 = entry.closed_form_wavefunction(1)
    xs = np.linspace(-2, 2, 7)
    assert np.allclose(psi1(xs), 2 * xs * np.exp(-xs ** 2 / 2), rtol=1e-12)


def test_scarf_wavefunction_is_real():
    entry = make_entry("scarf-ii", {"alpha": 1, "A": 2, "B": 1}, n=1)
    psi0 = entry.closed_form_wavefunction(0)
    assert psi0(0.0) == pytest.approx(1.0)
    psi1 = entry.closed_form_wavefunction(1)
    vals = psi1(np.linspace(-3, 3, 11))
    assert np.all(np.isreal(vals))


@pytest.mark.parametrize("name,params,sign,n,window", [
    ("harmonic", {"omega": 2}, None, 3, (-6, 6)),
    ("morse", {"alpha": 1, "A": 3, "B": 1}, None, 2, (-2, 12)),
    ("poschl-teller", {"alpha": 1, "A": 3, "B": 1}, None, 0, (0.05, 8)),
    ("scarf-ii", {"alpha": 1, "A": 2, "B": 1}, None, 1, (-8, 8)),
    ("coulomb", {"e2": 2, "l": 0}, None, 2, (0.1, 60)),
    ("periodic-v1", {"alpha": 1, "beta": 1, "a": 0}, "+", 1,
     (0.02, 2 * math.pi - 0.02)),
    ("periodic-v2", {"alpha": 1, "beta": 1, "a": 0}, "-", 1,
     (0.02, 2 * math.pi - 0.02)),
    ("periodic-v3", {"alpha": 1, "beta": 1, "a": 0}, "+", 1,
     (0.02, 2 * math.pi - 0.02)),
    ("periodic-v4", {"alpha": 1, "beta": 1, "a": 0}, "+", 0,
     (0.02, 2 * math.pi - 0.02)),
    ("hyperbolic-v1", {"gamma": 1, "eta": -1, "a": 0}, "-", 1, (-2.5, 2.5)),
    ("hyperbolic-v2", {"gamma": 1, "eta": 1, "a": 0}, "+", 1, (-2.5, 2.5)),
    ("hyperbolic-v3", {"gamma": 1, "eta": 2, "a": 0}, "-", 1, (-2.5, 2.5)),
    ("hyperbolic-v4", {"gamma": 1, "eta": 2, "a": 0}, "-", 1, (-2.5, 2.5)),
])
def test_closed_form_states_satisfy_schroedinger(name, params, sign, n,
                                                 window):
    entry = make_entry(name, params, sign=sign, n=n)
    grid = Grid(window[0], window[1], 4001)
    tops = (range(n + 1) if entry.kind != "es"
            else range(min(n, entry.max_j if entry.max_j is not None else n)
                       + 1))
    for j in tops:
        psi = entry.closed_form_wavefunction(j)
        e = entry.closed_form_energy(j)
        assert residual(entry.potential, psi, e, grid) <= 1e-5


def test_es_node_counts():
    cases = [
        ("harmonic", {"omega": 2}, (-8, 8), 3),
        ("morse", {"alpha": 1, "A": 3, "B": 1}, (-2.5, 14), 2),
        ("poschl-teller", {"alpha": 1, "A": 3, "B": 1}, (0.02, 10), 0),
        ("scarf-ii", {"alpha": 1, "A": 2, "B": 1}, (-10, 10), 1),
        ("coulomb", {"e2": 2, "l": 0}, (0.05, 80), 3),
    ]
    for name, params, window, top in cases:
        entry = make_entry(name, params, n=0)
        xs = np.linspace(window[0], window[1], 4001)
        for j in range(top + 1):
            vals = entry.closed_form_wavefunction(j)(xs)
            assert count_nodes(vals) == j, (name, j)


def test_spectral_states_match_assembled_wavefunctions():
    cases = [
        make_entry("periodic-v1", {"alpha": 1, "beta": 1, "a": 0}, "+", 1),
        make_entry("periodic-v4", {"alpha": 1, "beta": 1, "a": 0}, "-", 2),
        make_entry("hyperbolic-v3", {"gamma": 1, "eta": 2, "a": 0}, "-", 1),
        make_entry("hyperbolic-v1", {"gamma": 1, "eta": -1, "a": 0}, "+", 1),
    ]
    for entry in cases:
        if entry.kind == "qes-periodic":
            xs = np.linspace(0.4, math.pi - 0.4, 25)
        else:
            xs = np.linspace(0.3, 1.8, 25)
        gauge = build_gauge(entry.bp, entry.mapping, entry.gauge_x0,
                            epsrel=1e-13)
        for j in range(entry.n + 1):
            lv = entry.spectral().levels[j]
            numeric = assemble_wavefunction(gauge, lv.b, entry.mapping)(xs)
            closed = entry.closed_form_wavefunction(j)(xs)
            scale = numeric[0] / closed[0]
            assert np.max(np.abs(numeric - scale * closed)) <= \
                1e-10 * np.max(np.abs(numeric))


# ----------------------------------------------------------- sector counts

def test_sector_counts():
    assert sector_count(make_entry("periodic-v1",
                                   {"alpha": 1, "beta": 1, "a": 0},
                                   "+", 1)) == 4
    assert sector_count(make_entry("periodic-v4",
                                   {"alpha": 1, "beta": 1, "a": 0},
                                   "+", 2)) == 5
    assert sector_count(make_entry("hyperbolic-v3",
                                   {"gamma": 1, "eta": 2, "a": 0},
                                   "-", 0)) == 1
    assert sector_count(make_entry("hyperbolic-v4",
                                   {"gamma": 1, "eta": 2, "a": 0},
                                   "-", 1)) == 5
    with pytest.raises(NotApplicableError):
        sector_count(make_entry("harmonic", {"omega": 1}, n=2))


# -------------------------------------------------------------- validation

def test_parameter_validation_messages():
    with pytest.raises(InvalidParameterError, match="omega"):
        make_entry("harmonic", {"omega": -1})
    with pytest.raises(InvalidParameterError, match="B must be positive"):
        make_entry("morse", {"alpha": 1, "A": 3, "B": -1})
    with pytest.raises(InvalidParameterError, match="missing"):
        make_entry("morse", {"alpha": 1})
    with pytest.raises(InvalidParameterError, match="sign"):
        make_entry("periodic-v1", {"alpha": 1, "beta": 1, "a": 0})
    with pytest.raises(InvalidParameterError, match="eta"):
        make_entry("hyperbolic-v1", {"gamma": 1, "eta": 1, "a": 0}, sign="+")
    with pytest.raises(InvalidParameterError, match="eta"):
        make_entry("hyperbolic-v3", {"gamma": 1, "eta": 2, "a": 0}, sign="+")
    with pytest.raises(InvalidParameterError, match="unknown family"):
        make_entry("rosen-morse", {"alpha": 1})
    with pytest.raises(InvalidParameterError, match="integer"):
        make_entry("coulomb", {"e2": 2, "l": 0}, n=-1)


def test_list_families_shape():
    doc = list_families()
    assert len(doc) == 13
    names = {item["name"] for item in doc}
    assert "periodic-v1" in names and "scarf-ii" in names
    for item in doc:
        assert "params" in item and "domain" in item
        if item["class"] == "exactly-solvable":
            assert item["sign_branches"] == []
        else:
            assert item["sign_branches"] == ["+", "-"]
            assert "sector_count" in item


def test_periodic_potential_periodicity():
    entry = make_entry("periodic-v2", {"alpha": 1, "beta": 2, "a": 0.3},
                       sign="+", n=1)
    xs = np.linspace(-2, 2, 11)
    assert np.allclose(entry.potential(xs),
                       entry.potential(xs + entry.period), atol=1e-12)
