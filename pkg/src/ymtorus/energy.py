"""Discrete Sobolev energies, sector energies and the a-priori-bound monitor.

sobolev_norm returns the squared H^k norm

    sum_{l <= k} sum_sites |D^l xi|^2 sqrt(g) dx^3

with D the covariant stencil of the requested fiber (see lattice.covariant_diff)
and the positive spinor pairing on fermion sectors.  Sector energies follow
the first-order formulation: temporal derivatives come from the evolution
variables (phidot, psidot) or from an rhs evaluation (E, B), never from
finite-differenced snapshots.

Magnetic-sector norms are computed on Q: the pointwise 2-form norm of
B = *Q equals the 1-form norm of Q, and the covariant stencil commutes with
the constant epsilon contraction, so every H^k norm agrees.
"""

from dataclasses import dataclass

import numpy as np

from .lattice import covariant_diff


class InputError(ValueError):
    pass


SECTOR_KINDS = {
    "eta": ("lie1", "adjoint"),
    "Q": ("lie1", "adjoint"),
    "E": ("lie1", "adjoint"),
    "phi": ("scalar", "higgs"),
    "phidot": ("scalar", "higgs"),
    "Z": ("form", "higgs"),
    "psi": ("scalar", "spinor"),
    "psidot": ("scalar", "spinor"),
    "S": ("form", "spinor"),
}


def _cov_D(fld, eta, model, grid, kind, bvec, II):
    """Covariant derivative acting on all slots; extra 1-form slots of the
    input are flat in the adapted frame, so D acts per component."""
    return covariant_diff(fld, eta, model, grid, kind, bvec=bvec, II=II)


def sobolev_norm(fld, k, eta, model, grid, kind="higgs", bvec=None, II=None,
                 weight=1.0):
    """Squared H^k norm of a field with fiber action `kind`.

    Pass eta=None for the flat reference connection.  `weight` is the volume
    element sqrt(g) dx^3 per site.
    """
    if k < 0 or k > 4:
        raise InputError("sobolev_norm supports 0 <= k <= 4")
    total = 0.0
    cur = fld
    total += np.sum(np.abs(cur) ** 2)
    for _ in range(k):
        nxt = _cov_D(cur, eta, model, grid, kind, bvec, II)
        total += np.sum(np.abs(nxt) ** 2)
        cur = nxt
    return float(total * weight)


def _bg_data(u, bg):
    if bg is None:
        return np.ones(3), None, 1.0
    return bg.b(u.tau), bg.II(u.tau), bg.sqrt_g(u.tau)


def sector_energy(u, sector, k, rhs_state=None, bg=None, connection="omega"):
    """k-th total energy of one sector of the state.

    sector in {"higgs", "yangmills", "dirac"}.  The Yang-Mills entry needs
    rhs_state (an rhs evaluation at u) for the temporal derivatives of E and
    Q; connection="reference" drops the eta terms from the covariant stencil
    (the modified energy used alongside the evolved-connection one).
    """
    b, II, sg = _bg_data(u, bg)
    w = sg * u.grid.cell_volume
    eta = u.eta if connection == "omega" else None
    model, grid = u.model, u.grid

    def H(fld, kk, kind):
        if kk < 0:
            return 0.0
        return sobolev_norm(fld, kk, eta, model, grid, kind, bvec=b,
                            II=II if kind == "spinor" else None, weight=w)

    if sector == "higgs":
        if k == 0:
            return H(u.phi, 0, "higgs")
        return H(u.phidot, k - 1, "higgs") + H(u.phi, k, "higgs")
    if sector == "yangmills":
        if k == 0:
            return H(u.E, 0, "adjoint") + H(u.Q, 0, "adjoint")
        if rhs_state is None:
            raise InputError("yangmills energy with k >= 1 needs an rhs evaluation")
        return (H(rhs_state.E, k - 1, "adjoint") + H(u.E, k, "adjoint")
                + H(rhs_state.Q, k - 1, "adjoint") + H(u.Q, k, "adjoint"))
    if sector == "dirac":
        if k == 0:
            return H(u.psi, 0, "spinor")
        return H(u.psidot, k - 1, "spinor") + H(u.psi, k, "spinor")
    raise InputError("unknown sector %r" % sector)


def sup_norms(u):
    """Pointwise fiber norms, maximized over the grid, per physical sector."""
    def mx(x, axes):
        return float(np.sqrt(np.sum(np.abs(x) ** 2, axis=axes).max()))

    return {
        "eta": mx(u.eta, (0, 1)),
        "E": mx(u.E, (0, 1)),
        "B": mx(u.Q, (0, 1)),  # |B| = |*Q| = |Q| pointwise
        "phi": mx(u.phi, (0,)),
        "psi": mx(u.psi, (0, 1)),
    }


@dataclass
class EnergyReport:
    tau: float
    k: int
    yangmills: dict
    higgs: dict
    dirac: dict
    total: float
    reference_total: float
    sup: dict

    def as_row(self):
        row = {"tau": self.tau}
        for kk in sorted(self.yangmills):
            row["E_ym_k%d" % kk] = self.yangmills[kk]
            row["E_higgs_k%d" % kk] = self.higgs[kk]
            row["E_dirac_k%d" % kk] = self.dirac[kk]
        row["E_total"] = self.total
        row["E_reference"] = self.reference_total
        for name, val in self.sup.items():
            row["sup_%s" % name] = val
        return row


def energy_report(u, rhs_state, bg=None, k=2, k_list=(0, 1, 2)):
    """Sector energies for each k in k_list plus the headline total at k and
    the reference-connection variant (which adds ||eta||^2_{H^k})."""
    ym, hg, dr = {}, {}, {}
    if k not in k_list:
        k_list = tuple(k_list) + (k,)
    for kk in k_list:
        ym[kk] = sector_energy(u, "yangmills", kk, rhs_state, bg)
        hg[kk] = sector_energy(u, "higgs", kk, rhs_state, bg)
        dr[kk] = sector_energy(u, "dirac", kk, rhs_state, bg)
    total = ym[k] + hg[k] + dr[k]
    b, II, sg = _bg_data(u, bg)
    w = sg * u.grid.cell_volume
    ref = (sector_energy(u, "yangmills", k, rhs_state, bg, "reference")
           + sector_energy(u, "higgs", k, rhs_state, bg, "reference")
           + sector_energy(u, "dirac", k, rhs_state, bg, "reference")
           + sobolev_norm(u.eta, k, None, u.model, u.grid, "adjoint", bvec=b, weight=w))
    return EnergyReport(tau=u.tau, k=k, yangmills=ym, higgs=hg, dirac=dr,
                        total=total, reference_total=ref, sup=sup_norms(u))


# ---------------------------------------------------------------------------
# Monitors
# ---------------------------------------------------------------------------

@dataclass
class EstimateVerdict:
    bounded: bool
    fitted_C: float
    max_energy: float
    exceeded_unity: bool
    initial: float

    def as_dict(self):
        return {
            "bounded": self.bounded,
            "fitted_C": self.fitted_C,
            "max_energy": self.max_energy,
            "exceeded_unity": self.exceeded_unity,
            "initial": self.initial,
        }


def estimate_monitor(taus, totals):
    """Fit the smallest C with E(tau) <= E(0) exp(C tau) and flag excursions
    of the total energy above 1 (outside the smallness regime)."""
    taus = np.asarray(taus, dtype=float)
    totals = np.asarray(totals, dtype=float)
    e0 = totals[0]
    if e0 <= 0:
        return EstimateVerdict(True, 0.0, float(totals.max(initial=0.0)),
                               bool((totals > 1).any()), 0.0)
    with np.errstate(divide="ignore"):
        rates = np.log(totals[1:] / e0) / taus[1:]
    C = float(max(0.0, np.max(rates))) if rates.size else 0.0
    return EstimateVerdict(
        bounded=bool(np.all(totals <= e0 * np.exp(C * taus) * (1 + 1e-12))),
        fitted_C=C,
        max_energy=float(totals.max()),
        exceeded_unity=bool((totals > 1.0).any()),
        initial=float(e0),
    )


def norm_evolution_ratio(taus, norms, rate_norms, ii_sup):
    """Discrete shadow of the H^k evolution bound: the ratio

        |d/dtau ||xi||^2| / ((||dxi/dtau|| + ||II||_Ck ||xi||) ||xi||)

    evaluated with centered differences; the max over the series is the
    fitted constant.  norms and rate_norms are time series of ||xi||_{H^k}
    and ||dxi/dtau||_{H^k}.
    """
    taus = np.asarray(taus, dtype=float)
    nrm = np.asarray(norms, dtype=float)
    rate = np.asarray(rate_norms, dtype=float)
    if len(taus) < 3:
        raise InputError("need at least 3 samples")
    dsq = (nrm[2:] ** 2 - nrm[:-2] ** 2) / (taus[2:] - taus[:-2])
    mid_n = nrm[1:-1]
    mid_r = rate[1:-1]
    denom = (mid_r + ii_sup * mid_n) * mid_n
    mask = denom > 1e-300
    if not mask.any():
        return 0.0
    return float(np.max(np.abs(dsq[mask]) / denom[mask]))
