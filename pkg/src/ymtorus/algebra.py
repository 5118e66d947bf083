"""Compact Lie algebra data, unitary representations and Yukawa maps.

Lie algebras are stored through their structure constants f[a,b,c] in a
basis xi_a orthonormal for the Ad-invariant inner product, so every inner
product on Lie-algebra values is Euclidean and Ad-invariance reduces to
total antisymmetry of f.  Shipped algebras: u(1), su(2) (Pauli basis,
f = Levi-Civita), su(3) (Gell-Mann basis).

A GaugeModel bundles the algebra with the Higgs representation rho on W,
the chiral fermion representation chi = chi_+ (+) chi_- on V = V_+ (+) V_-,
and a Yukawa map stored as its (w, conj w) coefficient blocks
Z_w = sum_k w_k A_k + conj(w_k) B_k, Z_w : V_+ -> V_-.

All operations broadcast over trailing grid axes.
"""

import numpy as np

from . import clifford


class InputError(ValueError):
    pass


# ---------------------------------------------------------------------------
# Lie algebra data
# ---------------------------------------------------------------------------

class LieData:
    """Structure constants plus the defining (matrix) basis.

    Parameters
    ----------
    f : (dim, dim, dim) array
        Structure constants, [xi_a, xi_b] = f[a,b,c] xi_c.
    defining : (dim, m, m) complex array or None
        Skew-Hermitian matrix basis of the defining representation, used for
        group elements in gauge transformations.  For u(1) this is [[i]].
    name : str
    """

    def __init__(self, f, defining=None, name=""):
        self.f = np.asarray(f, dtype=float)
        self.dim = self.f.shape[0]
        self.inner = np.eye(self.dim)
        self.name = name
        self.defining = None if defining is None else np.asarray(defining, dtype=complex)
        if self.defining is not None:
            # Frobenius norms used to project matrices back onto the basis
            self._def_norm = np.real(
                np.einsum("aij,aij->a", np.conj(self.defining), self.defining)
            )

    def to_matrix(self, X):
        """Lie vector(s) -> matrix in the defining representation."""
        return np.einsum("aij,a...->ij...", self.defining, X)

    def from_matrix(self, Y):
        """Project matrices back to basis coefficients (skew part is implicit)."""
        coeff = np.einsum("aij,ij...->a...", np.conj(self.defining), Y)
        return np.real(coeff) / self._def_norm.reshape((self.dim,) + (1,) * (Y.ndim - 2))


def bracket(lie, X, Y):
    """Componentwise Lie bracket, [X, Y]_c = f[a,b,c] X_a Y_b."""
    X = np.asarray(X)
    Y = np.asarray(Y)
    if X.shape[0] != lie.dim or Y.shape[0] != lie.dim:
        raise InputError("bracket: vectors do not match algebra dimension %d" % lie.dim)
    return np.einsum("abc,a...,b...->c...", lie.f, X, Y)


def structure_constants_from_defining(defining):
    """f[a,b,c] = <[xi_a, xi_b], xi_c> for a Frobenius-orthogonal matrix basis."""
    defining = np.asarray(defining, dtype=complex)
    dim = defining.shape[0]
    norm = np.real(np.einsum("aij,aij->a", np.conj(defining), defining))
    f = np.zeros((dim, dim, dim))
    for a in range(dim):
        for b in range(dim):
            comm = defining[a] @ defining[b] - defining[b] @ defining[a]
            f[a, b] = np.real(np.einsum("cij,ij->c", np.conj(defining), comm)) / norm
    return f


def u1():
    return LieData(np.zeros((1, 1, 1)), defining=np.array([[[1j]]]), name="u1")


def su2():
    defining = -0.5j * clifford.SIGMA
    return LieData(structure_constants_from_defining(defining), defining, name="su2")


def _gell_mann():
    lam = np.zeros((8, 3, 3), dtype=complex)
    lam[0][0, 1] = lam[0][1, 0] = 1
    lam[1][0, 1] = -1j
    lam[1][1, 0] = 1j
    lam[2][0, 0] = 1
    lam[2][1, 1] = -1
    lam[3][0, 2] = lam[3][2, 0] = 1
    lam[4][0, 2] = -1j
    lam[4][2, 0] = 1j
    lam[5][1, 2] = lam[5][2, 1] = 1
    lam[6][1, 2] = -1j
    lam[6][2, 1] = 1j
    lam[7][0, 0] = lam[7][1, 1] = 1 / np.sqrt(3.0)
    lam[7][2, 2] = -2 / np.sqrt(3.0)
    return lam


def su3():
    defining = -0.5j * _gell_mann()
    return LieData(structure_constants_from_defining(defining), defining, name="su3")


SHIPPED_ALGEBRAS = {"u1": u1, "su2": su2, "su3": su3}


def load_structure_constants(path):
    """Read structure constants from a plain-text file.

    Format: comment lines start with '#'; the first data token is the
    dimension d, followed by d^3 numbers, row-major in (a, b, c).
    """
    tokens = []
    with open(path) as fh:
        for line in fh:
            line = line.split("#", 1)[0].strip()
            if line:
                tokens.extend(line.split())
    if not tokens:
        raise InputError("empty structure-constant file %s" % path)
    dim = int(tokens[0])
    vals = np.array([float(t) for t in tokens[1:]])
    if vals.size != dim ** 3:
        raise InputError(
            "expected %d structure constants, found %d" % (dim ** 3, vals.size)
        )
    lie = LieData(vals.reshape(dim, dim, dim), name=path)
    report = check_lie(lie)
    worst = max(report.values())
    if worst > 1e-10:
        raise InputError("structure constants fail algebra checks: %r" % report)
    return lie


def check_lie(lie):
    """Residuals of antisymmetry, the Jacobi identity and Ad-invariance."""
    f = lie.f
    anti = np.abs(f + np.swapaxes(f, 0, 1)).max()
    jac = np.abs(
        np.einsum("abx,xcd->abcd", f, f)
        + np.einsum("bcx,xad->abcd", f, f)
        + np.einsum("cax,xbd->abcd", f, f)
    ).max()
    # <[xi_a, xi_b], xi_c> + <xi_b, [xi_a, xi_c]> = 0 in an orthonormal basis
    ad = np.abs(f[:, :, :] + np.swapaxes(f, 1, 2)).max()
    return {"antisymmetry": anti, "jacobi": jac, "ad_invariance": ad}


# ---------------------------------------------------------------------------
# Representations
# ---------------------------------------------------------------------------

class ReprData:
    """Unitary representation through its skew-Hermitian generators."""

    def __init__(self, generators, name=""):
        self.gen = np.asarray(generators, dtype=complex)
        self.dim_g = self.gen.shape[0]
        self.dim_W = self.gen.shape[1]
        self.name = name

    def skew_residual(self):
        return np.abs(self.gen + np.conj(np.swapaxes(self.gen, 1, 2))).max()

    def homomorphism_residual(self, lie):
        comm = np.einsum("aij,bjk->abik", self.gen, self.gen)
        comm = comm - np.swapaxes(comm, 0, 1)
        target = np.einsum("abc,cik->abik", lie.f, self.gen)
        return np.abs(comm - target).max()


def rho_star_apply(repr_data, xi, w):
    """Infinitesimal action sum_a xi_a rho*(xi_a) w."""
    xi = np.asarray(xi)
    w = np.asarray(w)
    if xi.shape[0] != repr_data.dim_g or w.shape[0] != repr_data.dim_W:
        raise InputError("rho_star_apply: dimension mismatch")
    M = np.tensordot(repr_data.gen, xi, axes=(0, 0))  # (v, w[, *grid])
    if M.ndim == 2:
        return np.tensordot(M, w, axes=(1, 0))
    if w.ndim == 1:
        return np.einsum("vw...,w->v...", M, w)
    d = repr_data.dim_W
    flat = np.einsum("vwx,wx->vx", M.reshape(d, d, -1), w.reshape(d, -1))
    return flat.reshape((d,) + w.shape[1:])


def chi_spinor_apply(repr_data, xi, psi):
    """Infinitesimal action on the internal index of a twisted spinor field."""
    M = np.tensordot(repr_data.gen, xi, axes=(0, 0))  # (v, w[, *grid])
    if M.ndim == 2:
        return np.einsum("vw,sw...->sv...", M, psi)
    d = repr_data.dim_W
    flat = np.einsum("vwx,swx->svx", M.reshape(d, d, -1), psi.reshape(4, d, -1))
    return flat.reshape(psi.shape)


def current_pairing(repr_data, left, right):
    """<left, rho*(xi_a) right> as a complex Lie-vector field.

    left and right share a shape (d, *grid) or (4, d, *grid); the fiber (and
    spin) indices are contracted, the Lie index a survives.
    """
    d = repr_data.dim_W
    grid = right.shape[right.ndim - 3:] if right.ndim >= 3 else ()
    l2 = np.conj(left).reshape(-1, d, int(np.prod(grid)) if grid else 1)
    r2 = right.reshape(l2.shape)
    C = np.einsum("svx,swx->vwx", l2, r2)
    out = np.tensordot(repr_data.gen, C, axes=([1, 2], [0, 1]))
    return out.reshape((repr_data.dim_g,) + grid)


def direct_sum(r1, r2):
    dg = r1.dim_g
    n1, n2 = r1.dim_W, r2.dim_W
    gen = np.zeros((dg, n1 + n2, n1 + n2), dtype=complex)
    gen[:, :n1, :n1] = r1.gen
    gen[:, n1:, n1:] = r2.gen
    return ReprData(gen, name="%s(+)%s" % (r1.name, r2.name))


# ---------------------------------------------------------------------------
# Yukawa maps
# ---------------------------------------------------------------------------

class YukawaData:
    """R-linear Yukawa map, stored through Z_w = sum_k w_k A_k + conj(w_k) B_k."""

    def __init__(self, a_lin, a_bar, name=""):
        self.a_lin = np.asarray(a_lin, dtype=complex)   # (dim_W, dim_Vm, dim_Vp)
        self.a_bar = np.asarray(a_bar, dtype=complex)
        self.dim_W = self.a_lin.shape[0]
        self.dim_Vm = self.a_lin.shape[1]
        self.dim_Vp = self.a_lin.shape[2]
        self.name = name

    @classmethod
    def zero(cls, dim_W, dim_Vp, dim_Vm):
        z = np.zeros((dim_W, dim_Vm, dim_Vp))
        return cls(z, z, name="zero")

    def z_block(self, w):
        """Z_w as a (dim_Vm, dim_Vp, *grid) array."""
        return (np.einsum("kvw,k...->vw...", self.a_lin, w)
                + np.einsum("kvw,k...->vw...", self.a_bar, np.conj(w)))

    def matrix(self, w):
        """Full skew-Hermitian Y_w on V = V_+ (+) V_-, shape (dV, dV, *grid)."""
        z = self.z_block(w)
        dp, dm = self.dim_Vp, self.dim_Vm
        out = np.zeros((dp + dm, dp + dm) + z.shape[2:], dtype=complex)
        out[dp:, :dp] = z
        out[:dp, dp:] = -np.conj(np.swapaxes(z, 0, 1))
        return out


def yukawa_apply(yuk, w, v):
    """Y_w v with v = (v_+, v_-) stacked on the first axis."""
    v = np.asarray(v)
    if v.shape[0] != yuk.dim_Vp + yuk.dim_Vm:
        raise InputError("yukawa_apply: V dimension mismatch")
    return np.einsum("VW...,W...->V...", yuk.matrix(np.asarray(w)), v)


def yukawa_spinor_apply(yuk, w, psi):
    """Y_w acting on the internal index of a twisted spinor (4, dV, ...)."""
    M = yuk.matrix(np.asarray(w))
    d = M.shape[0]
    if M.ndim == 2:
        return np.einsum("VW,sW...->sV...", M, psi)
    flat = np.einsum("VWx,sWx->sVx", M.reshape(d, d, -1), psi.reshape(4, d, -1))
    return flat.reshape(psi.shape)


def yukawa_antilinear_current(yuk, psi):
    """Higgs-equation source <psi, i Y^- psi>, a W-vector field.

    Expanded in an orthonormal basis W_k of W the coefficients are
    (1/2) <psi, (i Y_{W_k} - Y_{i W_k}) psi> with the indefinite spinor
    pairing; the defining property 2 Re<w, out> = <psi, i Y_w psi> holds for
    every w.
    """
    grid = psi.shape[2:]
    out = np.zeros((yuk.dim_W,) + grid, dtype=complex)
    eye = np.eye(yuk.dim_W)
    for k in range(yuk.dim_W):
        y1 = yuk.matrix(eye[k])
        y2 = yuk.matrix(1j * eye[k])
        op = 1j * y1 - y2
        out[k] = 0.5 * clifford.spin_inner(psi, np.einsum("VW,sW...->sV...", op, psi))
    return out


def check_equivariance(repr_W, repr_V, yuk, samples=100, seed=0):
    """Max residual of [chi*(xi), Y_w] - Y_{rho*(xi) w} on random inputs."""
    rng = np.random.default_rng(seed)
    dV = repr_V.dim_W
    worst = 0.0
    for _ in range(samples):
        xi = rng.standard_normal(repr_W.dim_g)
        w = rng.standard_normal(yuk.dim_W) + 1j * rng.standard_normal(yuk.dim_W)
        v = rng.standard_normal(dV) + 1j * rng.standard_normal(dV)
        chi_xi = np.einsum("a,avw->vw", xi, repr_V.gen)
        yw = yuk.matrix(w)
        lhs = chi_xi @ (yw @ v) - yw @ (chi_xi @ v)
        rhs = yuk.matrix(rho_star_apply(repr_W, xi, w)) @ v
        worst = max(worst, np.abs(lhs - rhs).max())
    return worst


# ---------------------------------------------------------------------------
# Gauge models (algebra + representations + Yukawa map, bundled)
# ---------------------------------------------------------------------------

class GaugeModel:
    def __init__(self, lie, rho, chi_plus, chi_minus, yukawa, name=""):
        self.lie = lie
        self.rho = rho
        self.chi_plus = chi_plus
        self.chi_minus = chi_minus
        self.chi = direct_sum(chi_plus, chi_minus)
        self.yukawa = yukawa
        self.name = name
        self.dim_g = lie.dim
        self.dim_W = rho.dim_W
        self.dim_Vp = chi_plus.dim_W
        self.dim_Vm = chi_minus.dim_W
        self.dim_V = self.dim_Vp + self.dim_Vm
        # chirality-consistent fiber mask: spin rows 0,1 carry V_+, rows 2,3 V_-
        mask = np.zeros((4, self.dim_V))
        mask[:2, : self.dim_Vp] = 1.0
        mask[2:, self.dim_Vp:] = 1.0
        self.fer_mask = mask

    def validate(self, tol=1e-12):
        report = check_lie(self.lie)
        report["rho_skew"] = self.rho.skew_residual()
        report["rho_hom"] = self.rho.homomorphism_residual(self.lie)
        report["chi_skew"] = self.chi.skew_residual()
        report["chi_hom"] = self.chi.homomorphism_residual(self.lie)
        report["yukawa_equivariance"] = check_equivariance(self.rho, self.chi, self.yukawa)
        worst = max(report.values())
        if worst > tol:
            raise InputError("gauge model %s fails checks: %r" % (self.name, report))
        return report


def u1_toy(q_w=1, q_plus=1, q_minus=None):
    """Abelian model with charges q_W + q_+ = q_- and Z_w(v) = w v."""
    if q_minus is None:
        q_minus = q_w + q_plus
    lie = u1()
    rho = ReprData(1j * q_w * np.ones((1, 1, 1)), name="u1_q%g" % q_w)
    chi_p = ReprData(1j * q_plus * np.ones((1, 1, 1)), name="u1_q%g" % q_plus)
    chi_m = ReprData(1j * q_minus * np.ones((1, 1, 1)), name="u1_q%g" % q_minus)
    yuk = YukawaData(np.ones((1, 1, 1)), np.zeros((1, 1, 1)), name="u1_linear")
    return GaugeModel(lie, rho, chi_p, chi_m, yuk, name="u1_toy")


def su2_toy():
    """SU(2) electroweak-style toy: W = C^2, V_+ = C^2 doublet, V_- = C singlet,
    Z_w(v) = w^dag v (antilinear in w)."""
    lie = su2()
    fund = ReprData(-0.5j * clifford.SIGMA, name="su2_fund")
    singlet = ReprData(np.zeros((3, 1, 1)), name="su2_singlet")
    a_bar = np.zeros((2, 1, 2), dtype=complex)
    a_bar[0, 0, 0] = 1.0
    a_bar[1, 0, 1] = 1.0
    yuk = YukawaData(np.zeros((2, 1, 2)), a_bar, name="su2_wdag")
    return GaugeModel(lie, fund, fund, singlet, yuk, name="su2_toy")


def u1_mismatched_toy():
    """Negative control: charges violating q_W + q_+ = q_-."""
    lie = u1()
    rho = ReprData(1j * np.ones((1, 1, 1)))
    chi_p = ReprData(1j * np.ones((1, 1, 1)))
    chi_m = ReprData(3j * np.ones((1, 1, 1)))
    yuk = YukawaData(np.ones((1, 1, 1)), np.zeros((1, 1, 1)))
    return GaugeModel(lie, rho, chi_p, chi_m, yuk, name="u1_mismatched")


def su3_pure():
    """SU(3) with trivial matter content (pure Yang-Mills runs)."""
    lie = su3()
    triv = ReprData(np.zeros((8, 1, 1)), name="su3_trivial")
    yuk = YukawaData.zero(1, 1, 1)
    return GaugeModel(lie, triv, triv, triv, yuk, name="su3_pure")


def custom_pure(lie, name="custom"):
    """Pure Yang-Mills model over a user-supplied algebra (trivial matter).

    Gauge-transformation experiments need a defining matrix basis, which a
    bare structure-constant file does not carry; evolution, constraints and
    energies only use the structure constants.
    """
    triv = ReprData(np.zeros((lie.dim, 1, 1)), name="%s_trivial" % name)
    yuk = YukawaData.zero(1, 1, 1)
    return GaugeModel(lie, triv, triv, triv, yuk, name=name)


SHIPPED_MODELS = {
    "u1_toy": u1_toy,
    "su2_toy": su2_toy,
    "su3_pure": su3_pure,
}
