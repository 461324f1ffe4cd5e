"""Just 2-step nilpotent (JN2) p-groups.

A finite group is JN2 when it is nonabelian, 2-step nilpotent, and every
proper quotient is abelian; equivalently, its derived subgroup is cyclic of
prime order p, its center is cyclic of order p^j, and the central quotient
is elementary abelian of exponent p.  Each such group carries a class
(p^j, m) with 2m the dimension of V = G/ZG, and V carries a nondegenerate
alternating commutator pairing.  Up to isomorphism there are exactly two
JN2 groups per class, the central products

    I(p^j, m)  = M(p^j) central-product m copies,
    II(p^j, m) = N(p^j) central-product M(p^j)^(m-1),

where M has relations a^p = b^p = 1 and N has a^p = b^p = z.  This module
recognizes JN2 groups, builds the standard models from exact normal forms,
normalizes symplectic bases, and decides which standard model an arbitrary
JN2 group is, with an explicit verified isomorphism.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, replace
from functools import lru_cache
from typing import Mapping, Optional

import numpy as np

from . import fingroup
from .errors import (
    CenterMismatch,
    NotCentral,
    NotGenerator,
    NotJn2,
    SizeLimit,
    Unsupported,
)
from .fingroup import (
    FiniteGroup,
    GroupMap,
    Subgroup,
    is_prime,
    center,
    derived_subgroup,
    direct_product,
    from_table,
    is_isomorphic,
    quotient,
)


@dataclass(frozen=True)
class Jn2Spec:
    """Descriptor of a standard JN2 group: class (p^j, m) plus variant."""

    p: int
    j: int
    m: int
    variant: str  # "I" or "II"

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"p must be prime, got {self.p}")
        if self.j < 1 or self.m < 1:
            raise ValueError("j and m must be positive")
        if self.variant not in ("I", "II"):
            raise ValueError(f"variant must be 'I' or 'II', got {self.variant!r}")

    @property
    def order(self) -> int:
        return self.p ** (2 * self.m + self.j)

    @property
    def center_order(self) -> int:
        return self.p ** self.j

    def __str__(self) -> str:
        pj = str(self.p) if self.j == 1 else f"{self.p}^{self.j}"
        return f"{self.variant}({pj},{self.m})"


_SPEC_RE = re.compile(r"^(I|II)\((\d+)(?:\^(\d+))?,(\d+)\)$")


def parse_spec(text: str) -> Jn2Spec:
    """Parse the text form ``I(p^j,m)``; j = 1 may be written ``I(p,m)``."""
    m = _SPEC_RE.match(text.replace(" ", ""))
    if not m:
        raise ValueError(f"cannot parse spec {text!r}")
    variant, p, j, rank = m.group(1), int(m.group(2)), m.group(3), int(m.group(4))
    return Jn2Spec(p=p, j=1 if j is None else int(j), m=rank, variant=variant)


@dataclass(frozen=True)
class Jn2Element:
    """Normal form z^k * prod_i a_i^alpha_i b_i^beta_i of a standard group."""

    k: int
    alpha: tuple[int, ...]
    beta: tuple[int, ...]


def jn2_identity(spec: Jn2Spec) -> Jn2Element:
    return Jn2Element(0, (0,) * spec.m, (0,) * spec.m)


def jn2_multiply(spec: Jn2Spec, x: Jn2Element, y: Jn2Element) -> Jn2Element:
    """Collection formula for products of normal forms.

    Moving the left factor's b-powers past the right factor's a-powers costs
    z^(p^(j-1)) per swap ([a_i, b_i] = z^(p^(j-1)), distinct pairs commute);
    for variant II the first pair additionally carries a^p = b^p = z.
    """
    p, j = spec.p, spec.j
    pj = p ** j
    k = x.k + y.k - p ** (j - 1) * sum(bx * ay for bx, ay in zip(x.beta, y.alpha))
    alpha = []
    beta = []
    for i in range(spec.m):
        sa = x.alpha[i] + y.alpha[i]
        sb = x.beta[i] + y.beta[i]
        if spec.variant == "II" and i == 0:
            k += sa // p + sb // p
        alpha.append(sa % p)
        beta.append(sb % p)
    return Jn2Element(k % pj, tuple(alpha), tuple(beta))


def _encode(spec: Jn2Spec, el: Jn2Element) -> int:
    idx = el.k
    for a in el.alpha:
        idx = idx * spec.p + a
    for b in el.beta:
        idx = idx * spec.p + b
    return idx


def _decode(spec: Jn2Spec, idx: int) -> Jn2Element:
    p, m = spec.p, spec.m
    digits = []
    for _ in range(2 * m):
        digits.append(idx % p)
        idx //= p
    beta = tuple(reversed(digits[:m]))
    alpha = tuple(reversed(digits[m:]))
    return Jn2Element(idx, alpha, beta)


@dataclass(frozen=True)
class StandardJn2:
    """A materialized standard group with its distinguished generators."""

    spec: Jn2Spec
    group: FiniteGroup
    z: int
    a: tuple[int, ...]
    b: tuple[int, ...]


@lru_cache(maxsize=None)
def materialize(spec: Jn2Spec) -> StandardJn2:
    """Cayley table of the standard group, enumerated from normal forms in
    lexicographic (k, alpha, beta) order so the identity is element 0."""
    p, j, m = spec.p, spec.j, spec.m
    order = spec.order
    if order > fingroup.TABLE_CAP:
        raise SizeLimit(f"order {order} exceeds table cap {fingroup.TABLE_CAP}")
    pj = p ** j
    idx = np.arange(order, dtype=np.int64)
    digits = []
    rest = idx.copy()
    for _ in range(2 * m):
        digits.append(rest % p)
        rest //= p
    K = rest
    B = np.stack(list(reversed(digits[:m])), axis=1)
    A = np.stack(list(reversed(digits[m:])), axis=1)

    cross = B @ A.T  # cross[x, y] = sum_i beta_x[i] * alpha_y[i]
    k = K[:, None] + K[None, :] - p ** (j - 1) * cross
    if spec.variant == "II":
        k = k + (A[:, None, 0] + A[None, :, 0]) // p
        k = k + (B[:, None, 0] + B[None, :, 0]) // p
    k %= pj
    table = k
    for i in range(m):
        table = table * p + (A[:, None, i] + A[None, :, i]) % p
    for i in range(m):
        table = table * p + (B[:, None, i] + B[None, :, i]) % p

    names = {"z": p ** (2 * m)}
    a_idx, b_idx = [], []
    for i in range(m):
        ai = _encode(spec, Jn2Element(0, tuple(int(t == i) for t in range(m)), (0,) * m))
        bi = _encode(spec, Jn2Element(0, (0,) * m, tuple(int(t == i) for t in range(m))))
        names[f"a{i + 1}"] = ai
        names[f"b{i + 1}"] = bi
        a_idx.append(ai)
        b_idx.append(bi)
    group = from_table(order, table, label=str(spec), names=names)
    return StandardJn2(spec=spec, group=group, z=p ** (2 * m),
                       a=tuple(a_idx), b=tuple(b_idx))


# ---------------------------------------------------------------------------
# central products


@dataclass(frozen=True)
class CentralProduct:
    group: FiniteGroup
    embed_left: GroupMap
    embed_right: GroupMap
    projection: GroupMap


def center_identification(G: FiniteGroup, H: FiniteGroup,
                          zg: Optional[int] = None,
                          zh: Optional[int] = None) -> dict[int, int]:
    """The isomorphism ZG -> ZH matching chosen cyclic generators zg -> zh."""
    ZG, ZH = center(G), center(H)
    if ZG.order != ZH.order:
        raise CenterMismatch(f"centers have orders {ZG.order} != {ZH.order}")
    if zg is None:
        zg = min(x for x in ZG.elements if G.element_order(x) == ZG.order)
    if zh is None:
        zh = min(x for x in ZH.elements if H.element_order(x) == ZH.order)
    if G.element_order(zg) != ZG.order or not G.center_mask[zg]:
        raise CenterMismatch(f"{zg} does not generate the center of G")
    if H.element_order(zh) != ZH.order or not H.center_mask[zh]:
        raise CenterMismatch(f"{zh} does not generate the center of H")
    phi = {}
    x, y = 0, 0
    for _ in range(ZG.order):
        phi[x] = y
        x, y = G.mul(x, zg), H.mul(y, zh)
    return phi


def central_product(G: FiniteGroup, H: FiniteGroup,
                    phi: Mapping[int, int]) -> CentralProduct:
    """(G x H) / {(g, phi(g)^-1)} for an isomorphism phi of the full centers."""
    ZG, ZH = center(G), center(H)
    if set(phi) != ZG.element_set:
        raise CenterMismatch("phi is not defined exactly on the center of G")
    if set(phi.values()) != ZH.element_set:
        raise CenterMismatch("phi is not onto the center of H")
    for x in ZG.elements:
        for y in ZG.elements:
            if phi[G.mul(x, y)] != H.mul(phi[x], phi[y]):
                raise CenterMismatch(f"phi is not multiplicative at ({x},{y})")
    P = direct_product(G, H)
    nelems = sorted(g * H.order + H.inv(phi[g]) for g in ZG.elements)
    N = Subgroup(P, tuple(nelems))
    Q, proj = quotient(P, N)
    embed_left = GroupMap(G, Q, proj.images[np.arange(G.order) * H.order])
    embed_right = GroupMap(H, Q, proj.images[np.arange(H.order)])
    assert len(set(map(int, embed_left.images))) == G.order
    assert len(set(map(int, embed_right.images))) == H.order
    return CentralProduct(group=Q, embed_left=embed_left,
                          embed_right=embed_right, projection=proj)


# ---------------------------------------------------------------------------
# recognition


def is_jn2(G: FiniteGroup) -> Optional[tuple[int, int, int]]:
    """Class parameters (p, j, m) when G is JN2, else None.

    Checks the characterization directly: derived subgroup cyclic of prime
    order p, center cyclic of order p^j, central quotient elementary abelian
    of exponent p.
    """
    D = derived_subgroup(G)
    if not is_prime(D.order):
        return None
    p = D.order
    Z = center(G)
    zorder = Z.order
    j = 0
    while zorder % p == 0:
        zorder //= p
        j += 1
    if zorder != 1 or j < 1:
        return None
    if max(G.element_order(x) for x in Z.elements) != Z.order:
        return None  # center not cyclic
    if not D.element_set <= Z.element_set:
        return None  # central quotient not abelian
    zset = Z.element_set
    for x in range(G.order):
        if G.power(x, p) not in zset:
            return None  # central quotient not of exponent p
    v = G.order // Z.order
    e = 0
    while v % p == 0:
        v //= p
        e += 1
    if v != 1:
        return None
    assert e % 2 == 0, "commutator pairing forces even dimension"
    return (p, j, e // 2)


# ---------------------------------------------------------------------------
# symplectic machinery on V = G/ZG


@dataclass(frozen=True)
class SymplecticData:
    """V = G/ZG with its commutator pairing and p-th power functional.

    ``reps`` are lifted representatives whose cosets form the recorded basis
    of V, listed pairwise (a_1, b_1, ..., a_m, b_m) once normalized.  The
    Gram matrix stores pairing values as exponents of z^(p^(j-1)); ``nu``
    stores x -> x^p mod (ZG)^p as exponents of z.  ``basis_type`` is None
    before normalization and "I" or "II" after.
    """

    group: FiniteGroup
    p: int
    j: int
    m: int
    z: int
    reps: tuple[int, ...]
    gram: np.ndarray
    nu: tuple[int, ...]
    basis_type: Optional[str] = None


def _z_power_log(G: FiniteGroup, z: int) -> dict[int, int]:
    logs = {}
    x = 0
    t = 0
    while x not in logs:
        logs[x] = t
        x = G.mul(x, z)
        t += 1
    return logs


def _nu_value(G: FiniteGroup, z_log: dict[int, int], p: int, x: int) -> int:
    xp = G.power(x, p)
    if xp not in z_log:
        raise NotJn2("p-th power fell outside the center")
    return z_log[xp] % p


def symplectic_data(G: FiniteGroup, z: int) -> SymplecticData:
    """Compute a basis of V = G/ZG, the commutator Gram matrix and nu."""
    params = is_jn2(G)
    if params is None:
        raise NotJn2("group fails the JN2 characterization")
    p, j, m = params
    if not G.center_mask[z]:
        raise NotCentral(f"element {z} is not central")
    if G.element_order(z) != p ** j:
        raise NotGenerator(f"element {z} does not generate the center")

    z_log = _z_power_log(G, z)
    c = G.power(z, p ** (j - 1))  # generator of the derived subgroup
    c_log = {}
    x = 0
    for t in range(p):
        c_log[x] = t
        x = G.mul(x, c)

    # greedy coset basis: smallest-index representatives independent mod ZG
    zg = sorted(z_log)
    span = set(zg)
    reps: list[int] = []
    for x in range(G.order):
        if len(reps) == 2 * m:
            break
        if x in span:
            continue
        reps.append(x)
        span = set(int(e) for e in
                   fingroup.closure_indices(G.table, zg + reps))
    assert len(reps) == 2 * m

    def compute_gram(rr: list[int]) -> np.ndarray:
        g = np.zeros((2 * m, 2 * m), dtype=np.int64)
        for u in range(2 * m):
            for v in range(2 * m):
                comm = G.commutator(rr[u], rr[v])
                if comm not in c_log:
                    raise NotJn2("commutator fell outside the derived subgroup")
                g[u, v] = c_log[comm]
        return g

    gram = compute_gram(reps)
    # scale each later basis vector so its first nonzero pairing with an
    # earlier one equals 1 (a deterministic choice of basis direction)
    for u in range(1, 2 * m):
        for v in range(u):
            if gram[v, u] % p:
                t = pow(int(gram[v, u]), p - 2, p)
                if t != 1:
                    reps[u] = G.power(reps[u], t)
                    gram = compute_gram(reps)
                break
    assert (np.diagonal(gram) == 0).all()
    assert ((gram + gram.T) % p == 0).all()
    if _rank_mod_p(gram, p) != 2 * m:
        raise NotJn2("commutator pairing is degenerate")

    nu = tuple(_nu_value(G, z_log, p, r) for r in reps)
    return SymplecticData(group=G, p=p, j=j, m=m, z=z, reps=tuple(reps),
                          gram=gram, nu=nu, basis_type=None)


def _rank_mod_p(mat: np.ndarray, p: int) -> int:
    a = np.array(mat % p, dtype=np.int64)
    rows, cols = a.shape
    rank = 0
    for col in range(cols):
        piv = None
        for r in range(rank, rows):
            if a[r, col] % p:
                piv = r
                break
        if piv is None:
            continue
        a[[rank, piv]] = a[[piv, rank]]
        a[rank] = (a[rank] * pow(int(a[rank, col]), p - 2, p)) % p
        for r in range(rows):
            if r != rank and a[r, col] % p:
                a[r] = (a[r] - a[r, col] * a[rank]) % p
        rank += 1
    return rank


def _solve_mod_p(mat: np.ndarray, rhs: np.ndarray, p: int) -> np.ndarray:
    """One solution of mat @ x = rhs over F_p (mat assumed invertible)."""
    n = mat.shape[0]
    a = np.concatenate([mat % p, (rhs % p).reshape(n, 1)], axis=1).astype(np.int64)
    for col in range(n):
        piv = next(r for r in range(col, n) if a[r, col] % p)
        a[[col, piv]] = a[[piv, col]]
        a[col] = (a[col] * pow(int(a[col, col]), p - 2, p)) % p
        for r in range(n):
            if r != col and a[r, col] % p:
                a[r] = (a[r] - a[r, col] * a[col]) % p
    return a[:, n] % p


def _pairing(gram: np.ndarray, p: int, u: np.ndarray, v: np.ndarray) -> int:
    return int(u @ gram @ v) % p


def _symplectic_pairs(gram: np.ndarray, p: int,
                      vectors: list[np.ndarray]) -> list[np.ndarray]:
    """Greedy hyperbolic-pair extraction from a spanning set of coordinate
    vectors; returns (e1, f1, e2, f2, ...) with the standard Gram matrix."""
    out: list[np.ndarray] = []
    work = [v % p for v in vectors if (v % p).any()]
    while work:
        u = work[0]
        partner = None
        for w in work[1:]:
            val = _pairing(gram, p, u, w)
            if val:
                partner = (w * pow(val, p - 2, p)) % p
                break
        assert partner is not None, "restricted pairing must stay nondegenerate"
        out.append(u)
        out.append(partner)
        projected = []
        for v in work:
            vv = (v - _pairing(gram, p, v, partner) * u
                  + _pairing(gram, p, v, u) * partner) % p
            if vv.any() and not _in_span(projected + out, vv, p):
                projected.append(vv)
        work = projected
    return out


def _in_span(vecs: list[np.ndarray], v: np.ndarray, p: int) -> bool:
    if not vecs:
        return not v.any()
    mat = np.stack(vecs + [v], axis=0)
    return _rank_mod_p(mat, p) == _rank_mod_p(np.stack(vecs, axis=0), p)


def normalize_basis(data: SymplecticData) -> SymplecticData:
    """Symplectic basis on which nu is identically zero (type I) or
    (1, 1, 0, ..., 0) (type II), with representatives adjusted by central
    elements so that a_i^p = b_i^p = 1 exactly, except a_1^p = b_1^p = z in
    type II.  The postcondition is re-verified by direct group computation.

    Requires p^j != 2, where nu is linear.
    """
    G, p, j, m = data.group, data.p, data.j, data.m
    if p ** j == 2:
        raise Unsupported("normalization needs p^j != 2; use the order-profile path")
    gram = data.gram % p
    nu_vec = np.array(data.nu, dtype=np.int64) % p
    dim = 2 * m
    units = [np.eye(dim, dtype=np.int64)[i] for i in range(dim)]

    if not nu_vec.any():
        basis_type = "I"
        coords = _symplectic_pairs(gram, p, units)
    else:
        basis_type = "II"
        # dual vector u with nu(x) = <x, u>; then any first pair (e1, u + e1)
        # with <e1, u> = 1 confines nu to the first pair: the symplectic
        # complement of the pair is exactly the kernel of nu.
        u = _solve_mod_p(gram, nu_vec, p)
        vals = (gram @ u) % p
        t = int(np.flatnonzero(vals)[0])
        e1 = (units[t] * pow(int(vals[t]), p - 2, p)) % p
        f1 = (u + e1) % p
        rest = []
        for v in units:
            vv = (v - _pairing(gram, p, v, f1) * e1
                  + _pairing(gram, p, v, e1) * f1) % p
            if vv.any() and not _in_span(rest + [e1, f1], vv, p):
                rest.append(vv)
        coords = [e1, f1] + _symplectic_pairs(gram, p, rest)
    assert len(coords) == dim

    # lift coordinate vectors to group elements
    new_reps = []
    for vec in coords:
        g = 0
        for t, e in enumerate(vec):
            g = G.mul(g, G.power(data.reps[t], int(e)))
        new_reps.append(g)

    # adjust each representative by a central element so p-th powers are exact
    z_log = _z_power_log(G, data.z)
    pj = p ** j
    targets = [0] * dim
    if basis_type == "II":
        targets[0] = targets[1] = 1
    adjusted = []
    for g, t in zip(new_reps, targets):
        s = z_log[G.power(g, p)]
        delta = (t - s) % pj
        assert delta % p == 0, "nu value must match the normalized pattern"
        adjusted.append(G.mul(g, G.power(data.z, int(delta // p))))
    # recompute and verify the postcondition directly in the group
    c = G.power(data.z, p ** (j - 1))
    c_log = {G.power(c, t): t for t in range(p)}
    gram2 = np.zeros((dim, dim), dtype=np.int64)
    for uu in range(dim):
        for vv in range(dim):
            gram2[uu, vv] = c_log[G.commutator(adjusted[uu], adjusted[vv])]
    std = np.zeros((dim, dim), dtype=np.int64)
    for i in range(m):
        std[2 * i, 2 * i + 1] = 1
        std[2 * i + 1, 2 * i] = (p - 1) % p
    assert np.array_equal(gram2 % p, std), "normalized Gram must be standard"
    for g, t in zip(adjusted, targets):
        assert G.power(g, p) == G.power(data.z, t), "p-th power must be exact"
    nu2 = tuple(_nu_value(G, z_log, p, g) for g in adjusted)
    return replace(data, reps=tuple(adjusted), gram=gram2,
                   nu=nu2, basis_type=basis_type)


# ---------------------------------------------------------------------------
# classification


def classify(G: FiniteGroup) -> tuple[Jn2Spec, GroupMap]:
    """The standard model of a JN2 group plus a verified isomorphism onto it.

    For p^j != 2 the variant is read off a normalized symplectic basis and
    the isomorphism maps the lifted representatives to the standard
    generators; for p^j = 2 the variant comes from the order profile and
    the isomorphism from backtracking search.
    """
    params = is_jn2(G)
    if params is None:
        raise NotJn2("group fails the JN2 characterization")
    p, j, m = params

    if p ** j != 2:
        Z = center(G)
        z = min(x for x in Z.elements if G.element_order(x) == Z.order)
        data = normalize_basis(symplectic_data(G, z))
        spec = Jn2Spec(p=p, j=j, m=m, variant=data.basis_type)
        std = materialize(spec)
        S = std.group
        images_from_std = np.empty(S.order, dtype=np.int64)
        for idx in range(S.order):
            el = _decode(spec, idx)
            g = G.power(z, el.k)
            for i in range(m):
                g = G.mul(g, G.power(data.reps[2 * i], el.alpha[i]))
                g = G.mul(g, G.power(data.reps[2 * i + 1], el.beta[i]))
            images_from_std[idx] = g
        assert len(set(images_from_std.tolist())) == S.order, \
            "normal forms must enumerate the group"
        std_to_g = GroupMap(S, G, images_from_std)
        return spec, std_to_g.inverted()

    candidates = [Jn2Spec(p=p, j=j, m=m, variant=v) for v in ("I", "II")]
    matches = [s for s in candidates
               if materialize(s).group.order_profile == G.order_profile]
    assert len(matches) == 1, "order profile must decide the variant when p^j = 2"
    spec = matches[0]
    iso = is_isomorphic(G, materialize(spec).group)
    assert iso is not None, "profile match must come with an isomorphism"
    return spec, iso


def enumerate_specs(max_order: int) -> list[Jn2Spec]:
    """All spec descriptors with order <= max_order, deterministically
    ordered by (order, variant, p, j, m)."""
    out = []
    p = 2
    while p ** 3 <= max_order:
        if is_prime(p):
            m = 1
            while p ** (2 * m + 1) <= max_order:
                jj = 1
                while p ** (2 * m + jj) <= max_order:
                    for variant in ("I", "II"):
                        out.append(Jn2Spec(p=p, j=jj, m=m, variant=variant))
                    jj += 1
                m += 1
        p += 1
    out.sort(key=lambda s: (s.order, s.variant, s.p, s.j, s.m))
    return out
