"""
Galerkin assembly of the fractional stiffness and mass matrices for
piecewise-linear elements.

The double integral over ℝ^N×ℝ^N splits into Ω×Ω, handled element pair by
element pair, and the two mixed regions Ω×(ℝ^N∖Ω), which collapse onto a
single integral of φ_iφ_j against

    κ(x) = ∫_{ℝ^N∖Ω} |x−y|^{−(N+2s)} dy.

1D: self pairs are integrated in closed form, touching pairs with a Duffy
split of the reference square, separated pairs with tensor Gauss rules, and
κ-moments with exact power-law antiderivatives.

2D: pairs sharing a vertex are integrated with an outer Gauss rule in x and
an exact radial integral in polar coordinates around x; separated pairs use
tensor triangle rules; κ comes from an exact sector-by-sector formula over
the boundary edges of the mesh polygon.
"""

import json
import logging
import time
from dataclasses import dataclass
from typing import Tuple

import numpy as np
from scipy import sparse
from scipy.special import beta, betainc

from fraclab.error import AssemblyError
from fraclab.geometry import Mesh
from fraclab.geometry.quadrature import (
    element_quadrature, gauss_legendre, subdivided_triangle_rule, triangle_rule,
)
from fraclab.operator.kernel import KernelSpec

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class AssemblyOptions:
    """Quadrature orders used by :func:`assemble_form`."""
    far_order: int = 8          # Gauss points per segment for separated 1D pairs
    duffy_order: int = 20       # points of the 1D rule on the Duffy parameter
    far_degree: int = 4         # triangle rule degree for separated 2D pairs
    near_levels: int = 1        # subdivision levels of the outer rule for touching 2D pairs
    angular_order: int = 12     # Gauss points per angular sector (2D)


@dataclass(frozen=True, eq=False)
class StiffnessForm:
    """
    Discrete Gagliardo form on the interior nodes of ``mesh``.

    ``A`` and ``M`` are dense symmetric matrices indexed like
    ``mesh.interior``.
    """
    mesh: Mesh
    kernel: KernelSpec
    A: np.ndarray
    M: np.ndarray

    def __post_init__(self):
        self.A.flags.writeable = False
        self.M.flags.writeable = False

    @property
    def size(self) -> int:
        return self.A.shape[0]

    def to_json(self) -> str:
        """Dense export of both matrices."""
        return json.dumps({
            "N": self.kernel.N,
            "s": self.kernel.s,
            "normalization": self.kernel.normalization,
            "interior": self.mesh.interior.tolist(),
            "A": self.A.tolist(),
            "M": self.M.tolist(),
        })

    def to_triplets(self, tol: float = 0.0) -> str:
        """Coordinate-triplet text ``i j value`` of A, one entry per line."""
        coo = sparse.coo_matrix(np.where(np.abs(self.A) > tol, self.A, 0.0))
        return "\n".join(f"{i} {j} {v:.17g}" for i, j, v in zip(coo.row, coo.col, coo.data))


def _power_integral(lo: np.ndarray, hi: np.ndarray, p: float) -> np.ndarray:
    """∫_lo^hi u^p du for 0 <= lo < hi, elementwise."""
    if abs(p + 1.0) < 1e-13:
        return np.log(hi / lo)
    return (hi ** (p + 1.0) - lo ** (p + 1.0)) / (p + 1.0)


def _scaled(coef: np.ndarray, moment: np.ndarray) -> np.ndarray:
    # hats of interior nodes vanish at the boundary, so their divergent moments carry coefficient 0
    return np.where(coef == 0.0, 0.0, coef * moment)


def _kappa_moments_1d(mesh: Mesh, s: float) -> np.ndarray:
    """Local 2x2 matrices ∫_e φ_a φ_b κ for every segment, shape (m, 2, 2)."""
    a, b = mesh.domain.a, mesh.domain.b
    x = mesh.nodes[mesh.elements, 0]
    left, right = x[:, 0], x[:, 1]
    h = right - left
    out = np.zeros((len(h), 2, 2))
    # u = sigma·(x − c) measures the distance to the boundary point c
    for c, sigma, lo, hi in ((a, 1.0, left - a, right - a), (b, -1.0, b - right, b - left)):
        coef = np.stack([
            np.stack([(right - c) / h, -sigma / h], axis=1),   # φ_left
            np.stack([(c - left) / h, sigma / h], axis=1),     # φ_right
        ], axis=1)
        with np.errstate(divide="ignore", invalid="ignore"):
            J = [_power_integral(lo, hi, j - 2 * s) for j in range(3)]
            for i in range(2):
                for k in range(2):
                    f0, f1 = coef[:, i, 0], coef[:, i, 1]
                    g0, g1 = coef[:, k, 0], coef[:, k, 1]
                    out[:, i, k] += _scaled(f0 * g0, J[0]) + _scaled(f0 * g1 + f1 * g0, J[1]) + _scaled(f1 * g1, J[2])
    return out / (2.0 * s)


def _assemble_1d(mesh: Mesh, s: float, opts: AssemblyOptions) -> np.ndarray:
    n = mesh.n_nodes
    el = mesh.elements
    x = mesh.nodes[:, 0]
    h = mesh.element_measures
    m = len(h)
    S = np.zeros((n, n))
    stencil = np.array([[1.0, -1.0], [-1.0, 1.0]])

    # self pairs: ∫∫_{e×e} |x−y|^{1−2s} = 2h^{3−2s}/((2−2s)(3−2s))
    self_vals = 2.0 * h ** (1.0 - 2.0 * s) / ((2.0 - 2.0 * s) * (3.0 - 2.0 * s))
    np.add.at(S, (el[:, :, None], el[:, None, :]), self_vals[:, None, None] * stencil)

    # touching pairs (k, k+1), Duffy split along the diagonal of [0,h1]x[0,h2]
    v, wv = gauss_legendre(opts.duffy_order)
    h1, h2 = h[:-1], h[1:]
    c, d = h2 / h1, h1 / h2
    p = -1.0 - 2.0 * s

    def moment(i: int, j: int) -> np.ndarray:
        # ∫_0^{h1}∫_0^{h2} ξ^i η^j (ξ+η)^p dη dξ with i + j = 2
        r1 = np.sum(wv * v ** j * (1.0 + np.outer(c, v)) ** p, axis=1) * c ** (j + 1)
        r2 = np.sum(wv * v ** i * (1.0 + np.outer(d, v)) ** p, axis=1) * d ** (i + 1)
        return (h1 ** (3.0 - 2.0 * s) * r1 + h2 ** (3.0 - 2.0 * s) * r2) / (3.0 - 2.0 * s)

    I20, I11, I02 = moment(2, 0), moment(1, 1), moment(0, 2)
    alpha = np.stack([1.0 / h1, -1.0 / h1, np.zeros_like(h1)], axis=1)
    beta_ = np.stack([np.zeros_like(h2), 1.0 / h2, -1.0 / h2], axis=1)
    local = (I20[:, None, None] * alpha[:, :, None] * alpha[:, None, :]
             + I11[:, None, None] * (alpha[:, :, None] * beta_[:, None, :] + beta_[:, :, None] * alpha[:, None, :])
             + I02[:, None, None] * beta_[:, :, None] * beta_[:, None, :])
    trip = np.stack([el[:-1, 0], el[:-1, 1], el[1:, 1]], axis=1)
    np.add.at(S, (trip[:, :, None], trip[:, None, :]), 2.0 * local)

    # separated pairs, both orders at once
    t, w = gauss_legendre(opts.far_order)
    B = np.stack([1.0 - t, t], axis=1)
    for k in range(m - 2):
        ls = np.arange(k + 2, m)
        xq = x[el[k, 0]] + h[k] * t
        yq = x[el[ls, 0]][:, None] + h[ls][:, None] * t
        K = np.abs(xq[None, :, None] - yq[:, None, :]) ** p
        Kw = K * (h[k] * w)[None, :, None] * (h[ls][:, None] * w)[:, None, :]
        P = np.einsum("lij,ia,ib->ab", Kw, B, B)
        R = np.einsum("lij,ja,jb->lab", Kw, B, B)
        Q = np.einsum("lij,ia,jb->lab", Kw, B, B)
        kn, ln = el[k], el[ls]
        S[np.ix_(kn, kn)] += 2.0 * P
        np.add.at(S, (ln[:, :, None], ln[:, None, :]), 2.0 * R)
        np.add.at(S, (np.broadcast_to(kn[None, :, None], Q.shape), ln[:, None, :]), -2.0 * Q)
        np.add.at(S, (ln[:, :, None], np.broadcast_to(kn[None, None, :], Q.shape)), -2.0 * np.swapaxes(Q, 1, 2))

    np.add.at(S, (el[:, :, None], el[:, None, :]), 2.0 * _kappa_moments_1d(mesh, s))
    return S


def _barycentric(mesh: Mesh) -> Tuple[np.ndarray, np.ndarray]:
    """Affine barycentric maps: λ_a(x) = grads[e, a]·x + offsets[e, a]."""
    corners = mesh.nodes[mesh.elements]
    T = np.stack([corners[:, :, 0], corners[:, :, 1], np.ones(corners.shape[:2])], axis=1)
    Tinv = np.linalg.inv(T)
    return Tinv[:, :, :2], Tinv[:, :, 2]


def _boundary_edges(mesh: Mesh) -> np.ndarray:
    """Counter-clockwise boundary edges of the mesh polygon, shape (k, 2, 2)."""
    el = mesh.elements
    edges = np.concatenate([el[:, [0, 1]], el[:, [1, 2]], el[:, [2, 0]]])
    key = np.sort(edges, axis=1)
    _, idx, counts = np.unique(key, axis=0, return_index=True, return_counts=True)
    return mesh.nodes[edges[idx[counts == 1]]]


def _kappa_2d(points: np.ndarray, edges: np.ndarray, s: float) -> np.ndarray:
    """κ at points inside the convex mesh polygon, summed exactly over edge sectors."""
    p, q = edges[:, 0], edges[:, 1]
    t = (q - p) / np.linalg.norm(q - p, axis=1)[:, None]
    n = np.stack([t[:, 1], -t[:, 0]], axis=1)
    vp = p[None] - points[:, None]
    vq = q[None] - points[:, None]
    dist = np.einsum("xed,ed->xe", vp, n)
    psi_p = np.arctan2(np.einsum("xed,ed->xe", vp, t), dist)
    psi_q = np.arctan2(np.einsum("xed,ed->xe", vq, t), dist)
    half_beta = 0.5 * beta(0.5, s + 0.5)

    def cos_power_primitive(psi):
        # ∫_0^psi cos^{2s} for |psi| < π/2
        return np.sign(psi) * half_beta * betainc(0.5, s + 0.5, np.sin(psi) ** 2)

    sectors = dist ** (-2.0 * s) * (cos_power_primitive(psi_q) - cos_power_primitive(psi_p))
    return sectors.sum(axis=1) / (2.0 * s)


def _polar_sector_rule(x: np.ndarray, verts: np.ndarray, inside: bool, order: int):
    """
    Angular Gauss nodes around each x, split at the directions of the
    vertices so that every sector sees a smooth integrand.

    Returns (theta, weights), both of shape (P, Q).
    """
    ang = np.arctan2(verts[None, :, 1] - x[:, None, 1], verts[None, :, 0] - x[:, None, 0])
    if inside:
        ang = np.sort(ang, axis=1)
        bounds = np.concatenate([ang, ang[:, :1] + 2.0 * np.pi], axis=1)
    else:
        centroid = verts.mean(axis=0)
        ref = np.arctan2(centroid[1] - x[:, 1], centroid[0] - x[:, 0])
        rel = np.angle(np.exp(1j * (ang - ref[:, None])))
        bounds = np.sort(rel, axis=1) + ref[:, None]
    t, w = gauss_legendre(order)
    lo, hi = bounds[:, :-1], bounds[:, 1:]
    theta = lo[:, :, None] + (hi - lo)[:, :, None] * t
    weights = (hi - lo)[:, :, None] * w
    return theta.reshape(len(x), -1), weights.reshape(len(x), -1)


def _ray_interval(x: np.ndarray, theta: np.ndarray, verts: np.ndarray):
    """Entry and exit distances of the rays x + r·θ through a ccw triangle."""
    dirs = np.stack([np.cos(theta), np.sin(theta)], axis=-1)
    r_in = np.zeros(theta.shape)
    r_out = np.full(theta.shape, np.inf)
    empty = np.zeros(theta.shape, dtype=bool)
    for i in range(3):
        e = verts[(i + 1) % 3] - verts[i]
        normal = np.array([e[1], -e[0]]) / np.hypot(*e)
        num = normal @ verts[i] - x @ normal
        den = dirs @ normal
        with np.errstate(divide="ignore", invalid="ignore"):
            bound = num[:, None] / den
        r_out = np.where(den > 1e-15, np.minimum(r_out, bound), r_out)
        r_in = np.where(den < -1e-15, np.maximum(r_in, bound), r_in)
        empty |= (np.abs(den) <= 1e-15) & (num[:, None] < 0)
    empty |= r_out <= r_in
    return r_in, np.where(empty, r_in, r_out), empty


def _radial_moment(r_in, r_out, p, empty):
    with np.errstate(divide="ignore", invalid="ignore"):
        val = _power_integral(np.where(empty, 1.0, r_in), np.where(empty, 1.0, r_out), p)
    return np.where(empty, 0.0, val)


def _assemble_2d(mesh: Mesh, s: float, opts: AssemblyOptions) -> np.ndarray:
    n = mesh.n_nodes
    el = mesh.elements
    m = len(el)
    area = mesh.element_measures
    corners = mesh.nodes[el]
    grads, offsets = _barycentric(mesh)
    S = np.zeros((n, n))

    incidence = sparse.csr_matrix((np.ones(3 * m), (np.repeat(np.arange(m), 3), el.ravel())), shape=(m, n))
    touching = (incidence @ incidence.T).toarray() > 0

    # separated pairs: tensor triangle rules, both orders at once
    bary, w = triangle_rule(opts.far_degree)
    qpts = np.einsum("qa,mad->mqd", bary, corners)
    qw = area[:, None] * w[None, :]
    for e in range(m - 1):
        fs = np.arange(e + 1, m)
        fs = fs[~touching[e, fs]]
        if fs.size == 0:
            continue
        diff = qpts[e][None, :, None, :] - qpts[fs][:, None, :, :]
        K = np.sum(diff ** 2, axis=-1) ** (-1.0 - s)
        Kw = K * qw[e][None, :, None] * qw[fs][:, None, :]
        P = np.einsum("fij,ia,ib->ab", Kw, bary, bary)
        R = np.einsum("fij,ja,jb->fab", Kw, bary, bary)
        Q = np.einsum("fij,ia,jb->fab", Kw, bary, bary)
        en, fn = el[e], el[fs]
        S[np.ix_(en, en)] += 2.0 * P
        np.add.at(S, (fn[:, :, None], fn[:, None, :]), 2.0 * R)
        np.add.at(S, (np.broadcast_to(en[None, :, None], Q.shape), fn[:, None, :]), -2.0 * Q)
        np.add.at(S, (fn[:, :, None], np.broadcast_to(en[None, None, :], Q.shape)), -2.0 * np.swapaxes(Q, 1, 2))

    # touching pairs (ordered, self included): outer rule in x, exact radial integral
    sub_bary, sub_w = subdivided_triangle_rule(opts.far_degree, opts.near_levels)
    for e in range(m):
        x = sub_bary @ corners[e]
        wx = area[e] * sub_w
        lam_e = x @ grads[e].T + offsets[e]
        for f in np.flatnonzero(touching[e]):
            loc = list(el[e]) + [node for node in el[f] if node not in el[e]]
            L = len(loc)
            in_e = [loc.index(node) for node in el[e]]
            in_f = [loc.index(node) for node in el[f]]
            theta, wt = _polar_sector_rule(x, corners[f], inside=(f == e), order=opts.angular_order)
            dirs = np.stack([np.cos(theta), np.sin(theta)], axis=-1)
            c = np.zeros(theta.shape + (L,))
            c[..., in_f] = dirs @ grads[f].T
            if f == e:
                r_out = _ray_interval(x, theta, corners[f])[1]
                J3 = r_out ** (2.0 - 2.0 * s) / (2.0 - 2.0 * s)
                local = np.einsum("p,pq,pqa,pqb->ab", wx, wt * J3, c, c)
            else:
                r_in, r_out, empty = _ray_interval(x, theta, corners[f])
                d = np.zeros((len(x), L))
                d[:, in_e] = lam_e
                d[:, in_f] -= x @ grads[f].T + offsets[f]
                J1 = _radial_moment(r_in, r_out, -1.0 - 2.0 * s, empty)
                J2 = _radial_moment(r_in, r_out, -2.0 * s, empty)
                J3 = _radial_moment(r_in, r_out, 1.0 - 2.0 * s, empty)
                T1 = np.einsum("p,pq,pa,pb->ab", wx, wt * J1, d, d)
                T2 = np.einsum("p,pq,pa,pqb->ab", wx, wt * J2, d, c)
                T3 = np.einsum("p,pq,pqa,pqb->ab", wx, wt * J3, c, c)
                local = T1 - T2 - T2.T + T3
            idx = np.asarray(loc)
            S[np.ix_(idx, idx)] += local
            if not np.all(np.isfinite(local)):
                raise AssemblyError(f"non-finite near-field entry for elements ({e}, {f})", element_pair=(e, f))

    # mixed regions against the exterior of the mesh polygon
    kx = np.einsum("qa,mad->mqd", sub_bary, corners)
    kappa = _kappa_2d(kx.reshape(-1, 2), _boundary_edges(mesh), s).reshape(m, -1)
    kw = area[:, None] * sub_w[None, :] * kappa
    local = np.einsum("mq,qa,qb->mab", kw, sub_bary, sub_bary)
    np.add.at(S, (el[:, :, None], el[:, None, :]), 2.0 * local)
    return S


def mass_matrix(mesh: Mesh) -> np.ndarray:
    """Full-node P1 mass matrix (exact for piecewise-linear products)."""
    rule = element_quadrature(mesh, 2)
    local = np.einsum("mq,qa,qb->mab", rule.weights, rule.basis, rule.basis)
    M = np.zeros((mesh.n_nodes, mesh.n_nodes))
    np.add.at(M, (mesh.elements[:, :, None], mesh.elements[:, None, :]), local)
    return M


def assemble_form(mesh: Mesh, kernel: KernelSpec, options: AssemblyOptions = AssemblyOptions()) -> StiffnessForm:
    """
    Assemble the stiffness and mass matrices of ``mesh``.

    A[i][j] = (normalization/2)·∫∫_{ℝ^{2N}} (φ_i(x)−φ_i(y))(φ_j(x)−φ_j(y)) K(x,y) dx dy,
    so that A u = M f is the Galerkin form of normalization·PV∫(u(x)−u(y))K = f.

    Raises:
        ValueError: If mesh and kernel dimensions (or orders) disagree.
        AssemblyError: If an entry is not finite.
    """
    if mesh.dim != kernel.N:
        raise ValueError(f"mesh dimension {mesh.dim} does not match kernel dimension {kernel.N}")
    if abs(mesh.domain.s - kernel.s) > 1e-14:
        raise ValueError(f"mesh order s={mesh.domain.s} does not match kernel order s={kernel.s}")
    started = time.perf_counter()
    S = _assemble_1d(mesh, kernel.s, options) if mesh.dim == 1 else _assemble_2d(mesh, kernel.s, options)
    inner = mesh.interior
    A = 0.5 * kernel.normalization * S[np.ix_(inner, inner)]
    bad = np.argwhere(~np.isfinite(A))
    if bad.size:
        i, j = (int(v) for v in inner[bad[0]])
        logger.error(f"Non-finite stiffness entry at nodes ({i}, {j})")
        raise AssemblyError(f"non-finite stiffness entry at nodes ({i}, {j})", element_pair=(i, j))
    A = 0.5 * (A + A.T)
    M = mass_matrix(mesh)[np.ix_(inner, inner)]
    M = 0.5 * (M + M.T)
    logger.debug(f"Assembled {A.shape[0]}x{A.shape[0]} form (N={kernel.N}, s={kernel.s}) in {time.perf_counter() - started:.2f}s")
    return StiffnessForm(mesh=mesh, kernel=kernel, A=A, M=M)
