"""Right-hand side of the first-order evolution system and its integrator.

State u = (eta, Q, E, phi, phidot, Z, psi, psidot, S) in the adapted
orthonormal frame of a diagonal homogeneous background; Q is the spatial
Hodge dual of the magnetic field B, the reference connection is flat, and
d_k denotes the frame-scaled periodic stencil (1/b_k) * diff.

With kappa_i = II_ii (diagonal), H = sum(kappa)/3 and Scal the spacetime
scalar curvature, the evolution reads

  d eta_i /dtau   = kappa_i eta_i + E_i
  d Q_i /dtau     = eps_ijk (d_j E_k + [eta_j, E_k]) + 3H Q_i - kappa_i Q_i
  d E_i /dtau     = d_k B_ki + eps_jki [eta_k, Q_j] + 3H E_i - kappa_i E_i + J_i
  d phi /dtau     = phidot
  d phidot /dtau  = d_k Z_k + rho*(eta_k) Z_k + 3H phidot - (Scal/6) phi
                    - lam |phi|^2 phi - <psi, i Y^- psi>
  d Z_i /dtau     = d_i phidot + rho*(eta_i) phidot + rho*(E_i) phi + kappa_i Z_i
  d psi /dtau     = psidot
  d psidot /dtau  = D_k S_k + chi*(eta_k) S_k + 3H psidot - (Scal/4) psi
                    + g0 gk chi*(E_k) psi - (1/2) gi gj chi*(B_ij) psi
                    + g0 Y_phidot psi - gk Y_{Z_k} psi + Y_phi^2 psi
  d S_i /dtau     = D_i psidot + chi*(eta_i) psidot
                    + (1/2)(dkappa_i - kappa_i^2) g0 gi psi
                    + chi*(E_i) psi + kappa_i S_i

where D_k on spinors carries the spin-connection piece (1/2) kappa_k g0 gk
and J is the matter current
  J_i = -Re<Z_i, rho* phi> + (1/2) Im<gi psi, chi* psi>.
"""

from dataclasses import dataclass

import numpy as np

from . import algebra, lattice
from .clifford import G0G, GG, GAMMA, gamma_apply
from .lattice import EPS, FieldState, diff, hodge_dual_B


class BlowUpError(RuntimeError):
    pass


class InputError(ValueError):
    pass


@dataclass
class Couplings:
    model: "algebra.GaugeModel"
    lam: float = 0.0


@dataclass
class StepControl:
    dtau: float
    cfl: float = 0.5
    max_steps: int = 100000
    tau_end: float = 0.0

    def validate(self, grid, bg):
        if not (0 < self.cfl <= 1.5):
            raise InputError("CFL factor out of range (0, 1.5]")
        taus = np.linspace(0.0, self.tau_end, 33)
        bmin = min(bg.b(t).min() for t in taus)
        if self.dtau > self.cfl * grid.dx * bmin + 1e-15:
            raise InputError(
                "dtau = %g violates CFL bound %g" % (self.dtau, self.cfl * grid.dx * bmin)
            )


def _chi_apply(model, xi, psi):
    return algebra.chi_spinor_apply(model.chi, xi, psi)


def currents(u, bg=None):
    """Matter current J_i^a = -Re<Z_i, rho*(xi_a) phi> + (1/2) Im<g_i psi, chi*(xi_a) psi>."""
    model = u.model
    J = np.zeros_like(u.E)
    for i in range(3):
        J[i] -= np.real(algebra.current_pairing(model.rho, u.Z[i], u.phi))
        # <g_i psi, X> = psi^dag (g0 g_i) X and g0 g_i is Hermitian
        psi_rot = gamma_apply(G0G[i], u.psi)
        J[i] += 0.5 * np.imag(algebra.current_pairing(model.chi, psi_rot, u.psi))
    return J


def yukawa_source(u):
    """Higgs-equation source <psi, i Y^- psi> (complex W-vector field)."""
    return algebra.yukawa_antilinear_current(u.model.yukawa, u.psi)


def rhs(u, bg, couplings):
    """State derivative of the first-order system at u.tau."""
    model = couplings.model
    grid = u.grid
    bg.check_tau(u.tau)
    b = bg.b(u.tau)
    kappa = bg.II(u.tau)
    dkappa = bg.dII_dtau(u.tau)
    H = bg.H(u.tau)
    scal = bg.scal_h(u.tau)
    lam = couplings.lam
    lie = model.lie
    yuk = model.yukawa

    def d(fld, k):
        return diff(fld, k, grid) / b[k]

    out = FieldState.zeros(grid, model, tau=u.tau)
    B = hodge_dual_B(u.Q)

    J = currents(u)

    for i in range(3):
        out.eta[i] = kappa[i] * u.eta[i] + u.E[i]

        acc = 3.0 * H * u.Q[i] - kappa[i] * u.Q[i]
        for j in range(3):
            for k in range(3):
                e = EPS[i, j, k]
                if e:
                    acc = acc + e * (d(u.E[k], j) + algebra.bracket(lie, u.eta[j], u.E[k]))
        out.Q[i] = acc

        acc = 3.0 * H * u.E[i] - kappa[i] * u.E[i] + J[i]
        for k in range(3):
            if k != i:  # B[k, k] = 0
                acc = acc + d(B[k, i], k)
            for j in range(3):
                e = EPS[j, k, i]
                if e:
                    acc = acc + e * algebra.bracket(lie, u.eta[k], u.Q[j])
        out.E[i] = acc

    # Higgs triple
    out.phi[:] = u.phidot
    acc = 3.0 * H * u.phidot - (scal / 6.0) * u.phi \
        - lam * np.sum(np.abs(u.phi) ** 2, axis=0) * u.phi - yukawa_source(u)
    for k in range(3):
        acc = acc + d(u.Z[k], k) + algebra.rho_star_apply(model.rho, u.eta[k], u.Z[k])
    out.phidot[:] = acc
    for i in range(3):
        out.Z[i] = (d(u.phidot, i)
                    + algebra.rho_star_apply(model.rho, u.eta[i], u.phidot)
                    + algebra.rho_star_apply(model.rho, u.E[i], u.phi)
                    + kappa[i] * u.Z[i])

    # Dirac triple
    out.psi[:] = u.psidot
    acc = 3.0 * H * u.psidot - (scal / 4.0) * u.psi
    for k in range(3):
        acc = acc + d(u.S[k], k) + 0.5 * kappa[k] * gamma_apply(G0G[k], u.S[k]) \
            + _chi_apply(model, u.eta[k], u.S[k])
        acc = acc + gamma_apply(G0G[k], _chi_apply(model, u.E[k], u.psi))
    for i in range(3):
        for j in range(3):
            if i != j:
                acc = acc - 0.5 * gamma_apply(GG[i, j], _chi_apply(model, B[i, j], u.psi))
    acc = acc + gamma_apply(GAMMA[0], algebra.yukawa_spinor_apply(yuk, u.phidot, u.psi))
    for k in range(3):
        acc = acc - gamma_apply(GAMMA[k + 1], algebra.yukawa_spinor_apply(yuk, u.Z[k], u.psi))
    acc = acc + algebra.yukawa_spinor_apply(yuk, u.phi,
                                            algebra.yukawa_spinor_apply(yuk, u.phi, u.psi))
    out.psidot[:] = acc
    for i in range(3):
        out.S[i] = (d(u.psidot, i) + 0.5 * kappa[i] * gamma_apply(G0G[i], u.psidot)
                    + _chi_apply(model, u.eta[i], u.psidot)
                    + 0.5 * (dkappa[i] - kappa[i] ** 2) * gamma_apply(G0G[i], u.psi)
                    + _chi_apply(model, u.E[i], u.psi)
                    + kappa[i] * u.S[i])
    return out


# ---------------------------------------------------------------------------
# Principal symbol
# ---------------------------------------------------------------------------

SYMBOL_LABELS = (
    ["eta%d" % i for i in range(3)] + ["Q%d" % i for i in range(3)]
    + ["E%d" % i for i in range(3)] + ["phi", "phidot"]
    + ["Z%d" % i for i in range(3)] + ["psi", "psidot"] + ["S%d" % i for i in range(3)]
)


def principal_symbol(xi):
    """Structural principal symbol sigma_L(xi) of the spatial part.

    Returned as a 19x19 real symmetric matrix over one copy of each fiber
    factor (the Lie/W/V multiplicities act as identities and do not change
    symmetry or spectrum).  sigma_L(dtau) is the identity by construction.
    """
    xi = np.asarray(xi, dtype=float)
    if xi.shape != (3,):
        raise InputError("principal_symbol expects a spatial covector (3,)")
    M = np.zeros((19, 19))
    iQ, iE, iPd, iZ, iSd, iS = 3, 6, 10, 11, 15, 16
    for i in range(3):
        for j in range(3):
            for k in range(3):
                e = EPS[i, j, k]
                if e:
                    M[iQ + i, iE + k] += -e * xi[j]       # dQ_i ~ eps_ijk d_j E_k
                    M[iE + i, iQ + j] += -EPS[j, k, i] * xi[k]  # dE_i ~ eps_jki d_k Q_j
    for k in range(3):
        M[iPd, iZ + k] = -xi[k]
        M[iZ + k, iPd] = -xi[k]
        M[iSd, iS + k] = -xi[k]
        M[iS + k, iSd] = -xi[k]
    return M


def principal_symbol_dtau():
    return np.eye(19)


# ---------------------------------------------------------------------------
# Time stepping
# ---------------------------------------------------------------------------

def step(u, bg, couplings, dtau):
    """Classic RK4 update; raises BlowUpError on non-finite output."""
    k1 = rhs(u, bg, couplings)
    u2 = u.lincomb(1.0, [(dtau / 2, k1)])
    u2.tau = u.tau + dtau / 2
    k2 = rhs(u2, bg, couplings)
    u3 = u.lincomb(1.0, [(dtau / 2, k2)])
    u3.tau = u.tau + dtau / 2
    k3 = rhs(u3, bg, couplings)
    u4 = u.lincomb(1.0, [(dtau, k3)])
    u4.tau = u.tau + dtau
    k4 = rhs(u4, bg, couplings)
    out = u.lincomb(1.0, [(dtau / 6, k1), (dtau / 3, k2), (dtau / 3, k3), (dtau / 6, k4)])
    out.tau = u.tau + dtau
    for name in lattice.FIELDS:
        arr = getattr(out, name)
        if arr.size and not np.all(np.isfinite(arr)):
            bad = np.argwhere(~np.isfinite(arr))[0]
            raise BlowUpError(
                "non-finite %s at index %s, tau = %.6f" % (name, bad.tolist(), out.tau)
            )
    return out


def evolve(u, bg, couplings, dtau, n_steps, callback=None):
    """March n_steps RK4 steps; callback(step_index, state) after each."""
    if callback is not None:
        callback(0, u)
    for m in range(1, n_steps + 1):
        u = step(u, bg, couplings, dtau)
        if callback is not None:
            callback(m, u)
    return u
