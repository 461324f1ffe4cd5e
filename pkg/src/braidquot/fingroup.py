"""Dense finite-group engine backed by validated Cayley tables.

A group is a full multiplication table over element indices 0..order-1 with
the identity pinned at index 0.  Every constructor relabels to enforce this,
and every table is validated in full (identity, inverses, associativity) on
construction.  All values are immutable after construction; operations are
pure functions of their inputs.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Iterable, Mapping, Optional, Sequence

import numpy as np

from .errors import NotAGroup, NotNormal, SizeLimit

TABLE_CAP = 10_000

# Isomorphism backtracking refuses beyond this many elements.
ISO_SIZE_LIMIT = 2_000

# Table entries processed per block in the associativity sweep.
_ASSOC_BLOCK = 4_000_000


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def closure_indices(table: np.ndarray, seeds: Iterable[int]) -> np.ndarray:
    """Indices of the subgroup generated by ``seeds`` (identity included)."""
    cur = np.unique(np.concatenate([np.fromiter(seeds, dtype=np.int64, count=-1),
                                    np.zeros(1, dtype=np.int64)]))
    while True:
        nxt = np.unique(table[np.ix_(cur, cur)])
        if nxt.size == cur.size:
            return cur
        cur = nxt


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    """A finite group given by its full multiplication table.

    ``table[x, y]`` is the product x*y; element 0 is the identity.
    ``names`` optionally maps generator names to element indices.
    """

    order: int
    table: np.ndarray
    inverse: np.ndarray
    label: Optional[str] = None
    names: Mapping[str, int] = field(default_factory=dict, repr=False)

    @property
    def identity(self) -> int:
        return 0

    def elements(self) -> range:
        return range(self.order)

    def mul(self, x: int, y: int) -> int:
        return int(self.table[x, y])

    def inv(self, x: int) -> int:
        return int(self.inverse[x])

    def conjugate(self, x: int, by: int) -> int:
        return int(self.table[self.table[by, x], self.inverse[by]])

    def commutator(self, x: int, y: int) -> int:
        t = self.table
        return int(t[t[t[x, y], self.inverse[x]], self.inverse[y]])

    def power(self, x: int, k: int) -> int:
        if k < 0:
            x, k = self.inv(x), -k
        acc, base = 0, x
        while k:
            if k & 1:
                acc = int(self.table[acc, base])
            base = int(self.table[base, base])
            k >>= 1
        return acc

    def element_order(self, x: int) -> int:
        return int(self.element_orders[x])

    @cached_property
    def element_orders(self) -> np.ndarray:
        n = self.order
        orders = np.zeros(n, dtype=np.int64)
        orders[0] = 1
        cur = np.arange(n)
        k = 1
        while (orders == 0).any():
            k += 1
            cur = self.table[cur, np.arange(n)]
            hit = (cur == 0) & (orders == 0)
            orders[hit] = k
        return orders

    @cached_property
    def commutes(self) -> np.ndarray:
        """Boolean matrix: commutes[x, y] iff xy = yx."""
        return np.asarray(self.table == self.table.T)

    @cached_property
    def centralizer_sizes(self) -> np.ndarray:
        return self.commutes.sum(axis=1)

    @cached_property
    def center_mask(self) -> np.ndarray:
        return self.centralizer_sizes == self.order

    @cached_property
    def is_abelian(self) -> bool:
        return bool(self.center_mask.all())

    @cached_property
    def commutators(self) -> np.ndarray:
        """Matrix of commutators [x, y] = x y x^-1 y^-1."""
        t, inv = self.table, self.inverse
        c = t[t, inv[:, None]]
        return t[c, inv[None, :]]

    @cached_property
    def conjugacy_classes(self) -> tuple[tuple[int, ...], ...]:
        t, inv = self.table, self.inverse
        n = self.order
        seen = np.zeros(n, dtype=bool)
        classes = []
        ys = np.arange(n)
        for x in range(n):
            if seen[x]:
                continue
            cls = np.unique(t[t[ys, x], inv[ys]])
            seen[cls] = True
            classes.append(tuple(int(c) for c in cls))
        return tuple(classes)

    @cached_property
    def class_sizes(self) -> np.ndarray:
        sizes = np.zeros(self.order, dtype=np.int64)
        for cls in self.conjugacy_classes:
            for x in cls:
                sizes[x] = len(cls)
        return sizes

    @cached_property
    def order_profile(self) -> dict[int, int]:
        """Multiset of element orders, as {order: count}."""
        vals, counts = np.unique(self.element_orders, return_counts=True)
        return {int(v): int(c) for v, c in zip(vals, counts)}

    @cached_property
    def exponent(self) -> int:
        import math

        e = 1
        for v in self.order_profile:
            e = e * v // math.gcd(e, v)
        return e

    def __repr__(self) -> str:
        tag = f" {self.label!r}" if self.label else ""
        return f"<FiniteGroup{tag} order={self.order}>"


def _first_assoc_violation(t: np.ndarray) -> Optional[tuple[int, int, int]]:
    n = t.shape[0]
    rows = max(1, _ASSOC_BLOCK // max(1, n * n))
    for x0 in range(0, n, rows):
        x1 = min(n, x0 + rows)
        block = t[x0:x1]
        lhs = t[block, :]          # (c, n, n): (x*y)*z
        rhs = block[:, t]          # (c, n, n): x*(y*z)
        bad = lhs != rhs
        if bad.any():
            i, y, z = np.argwhere(bad)[0]
            return (int(x0 + i), int(y), int(z))
    return None


def from_table(order: int,
               table,
               label: Optional[str] = None,
               *,
               names: Optional[Mapping[str, int]] = None,
               cap: int = TABLE_CAP) -> FiniteGroup:
    """Validate a multiplication table and wrap it as a FiniteGroup.

    Raises :class:`NotAGroup` naming the first violated law, or
    :class:`SizeLimit` when the order exceeds the table cap.
    """
    if order < 1:
        raise NotAGroup(f"order must be >= 1, got {order}")
    if order > cap:
        raise SizeLimit(f"order {order} exceeds table cap {cap}")
    t = np.array(table, dtype=np.int32)
    if t.shape != (order, order):
        raise NotAGroup(f"table shape {t.shape} does not match order {order}")
    if t.min(initial=0) < 0 or t.max(initial=0) >= order:
        raise NotAGroup("table entries out of range")

    idx = np.arange(order, dtype=np.int32)
    if not np.array_equal(t[0], idx):
        x = int(np.argwhere(t[0] != idx)[0][0])
        raise NotAGroup(f"identity law fails: 0*{x} = {int(t[0, x])}")
    if not np.array_equal(t[:, 0], idx):
        x = int(np.argwhere(t[:, 0] != idx)[0][0])
        raise NotAGroup(f"identity law fails: {x}*0 = {int(t[x, 0])}")

    inv = np.full(order, -1, dtype=np.int32)
    for x in range(order):
        zeros = np.flatnonzero(t[x] == 0)
        if zeros.size == 0:
            raise NotAGroup(f"no inverse for {x}")
        y = int(zeros[0])
        if t[y, x] != 0:
            raise NotAGroup(f"inverse law fails: {x}*{y} = 0 but {y}*{x} = {int(t[y, x])}")
        inv[x] = y

    bad = _first_assoc_violation(t)
    if bad is not None:
        x, y, z = bad
        raise NotAGroup(f"associativity fails at ({x},{y},{z})")

    t.flags.writeable = False
    inv.flags.writeable = False
    return FiniteGroup(order=order, table=t, inverse=inv, label=label,
                       names=dict(names or {}))


# ---------------------------------------------------------------------------
# relabelings


def relabel(G: FiniteGroup, perm: Sequence[int]) -> tuple[FiniteGroup, "GroupMap"]:
    """Relabel elements by ``perm`` (which must fix 0); returns (H, iso G->H)."""
    p = np.asarray(perm, dtype=np.int32)
    if p.shape != (G.order,) or p[0] != 0 or len(set(int(v) for v in p)) != G.order:
        raise ValueError("perm must be a permutation of 0..order-1 fixing 0")
    t2 = np.empty_like(G.table)
    t2[p[:, None], p[None, :]] = p[G.table]
    H = from_table(G.order, t2, label=G.label)
    return H, GroupMap(G, H, p)


def random_relabeling(G: FiniteGroup, rng: random.Random) -> tuple[FiniteGroup, "GroupMap"]:
    rest = list(range(1, G.order))
    rng.shuffle(rest)
    return relabel(G, [0] + rest)


# ---------------------------------------------------------------------------
# standard constructors


@lru_cache(maxsize=None)
def cyclic(n: int) -> FiniteGroup:
    if n < 1:
        raise ValueError("n must be positive")
    if n > TABLE_CAP:
        raise SizeLimit(f"order {n} exceeds table cap {TABLE_CAP}")
    idx = np.arange(n)
    return from_table(n, (idx[:, None] + idx[None, :]) % n, label=f"C{n}")


@lru_cache(maxsize=None)
def elementary_abelian(p: int, k: int) -> FiniteGroup:
    if not is_prime(p):
        raise ValueError(f"p must be prime, got {p}")
    if k < 1:
        raise ValueError("k must be positive")
    n = p ** k
    if n > TABLE_CAP:
        raise SizeLimit(f"order {n} exceeds table cap {TABLE_CAP}")
    idx = np.arange(n)
    digits = np.stack([(idx // p ** i) % p for i in range(k)], axis=1)
    sums = (digits[:, None, :] + digits[None, :, :]) % p
    table = sum(sums[:, :, i] * p ** i for i in range(k))
    return from_table(n, table, label=f"E{p}^{k}")


def _perm_group(perms: list[tuple[int, ...]], label: str,
                names: Optional[dict[str, int]] = None) -> FiniteGroup:
    perms = sorted(perms)
    m = len(perms)
    npts = len(perms[0])
    P = np.array(perms, dtype=np.int64)
    pows = npts ** np.arange(npts - 1, -1, -1, dtype=np.int64)
    keys = P @ pows  # lex order of tuples == numeric order of big-endian keys
    table = np.empty((m, m), dtype=np.int32)
    for i in range(m):
        comp = P[i][P]           # (m, npts): (p_i o p_j)[t] = p_i[p_j[t]]
        table[i] = np.searchsorted(keys, comp @ pows)
    return from_table(m, table, label=label, names=names)


@lru_cache(maxsize=None)
def symmetric(n: int) -> FiniteGroup:
    """Symmetric group on n points; adjacent transpositions named s1..s{n-1}."""
    if n < 1:
        raise ValueError("n must be positive")
    import math

    if math.factorial(n) > TABLE_CAP:
        raise SizeLimit(f"order {math.factorial(n)} exceeds table cap {TABLE_CAP}")
    perms = [tuple(p) for p in itertools.permutations(range(n))]
    perms.sort()
    rank = {p: i for i, p in enumerate(perms)}
    names = {}
    for i in range(1, n):
        tr = list(range(n))
        tr[i - 1], tr[i] = tr[i], tr[i - 1]
        names[f"s{i}"] = rank[tuple(tr)]
    return _perm_group(perms, f"S{n}", names)


def _parity(p: tuple[int, ...]) -> int:
    inv = 0
    for i in range(len(p)):
        for j in range(i + 1, len(p)):
            if p[i] > p[j]:
                inv += 1
    return inv % 2


@lru_cache(maxsize=None)
def alternating(n: int) -> FiniteGroup:
    if n < 1:
        raise ValueError("n must be positive")
    import math

    order = math.factorial(n) // 2 if n > 1 else 1
    if order > TABLE_CAP:
        raise SizeLimit(f"order {order} exceeds table cap {TABLE_CAP}")
    perms = [tuple(p) for p in itertools.permutations(range(n)) if _parity(tuple(p)) == 0]
    return _perm_group(perms, f"A{n}")


@lru_cache(maxsize=None)
def dihedral(order: int) -> FiniteGroup:
    """Dihedral group of the given (even) order."""
    if order < 2 or order % 2:
        raise ValueError("dihedral order must be even and >= 2")
    if order > TABLE_CAP:
        raise SizeLimit(f"order {order} exceeds table cap {TABLE_CAP}")
    n = order // 2
    # element f*n + i  ~  s^f r^i;  s^f1 r^i1 * s^f2 r^i2 = s^(f1+f2) r^((-1)^f2 i1 + i2)
    table = np.empty((order, order), dtype=np.int32)
    for f1 in (0, 1):
        for i1 in range(n):
            x = f1 * n + i1
            for f2 in (0, 1):
                sign = -1 if f2 else 1
                for i2 in range(n):
                    table[x, f2 * n + i2] = ((f1 + f2) % 2) * n + (sign * i1 + i2) % n
    return from_table(order, table, label=f"D{order}")


@lru_cache(maxsize=None)
def dicyclic(order: int) -> FiniteGroup:
    """Dicyclic group <x, y | x^(2n)=1, y^2=x^n, y x y^-1 = x^-1> of order 4n."""
    if order < 4 or order % 4:
        raise ValueError("dicyclic order must be a positive multiple of 4")
    if order > TABLE_CAP:
        raise SizeLimit(f"order {order} exceeds table cap {TABLE_CAP}")
    n = order // 4
    m = 2 * n
    # element f*m + i  ~  x^i y^f
    table = np.empty((order, order), dtype=np.int32)
    for f1 in (0, 1):
        for i1 in range(m):
            x = f1 * m + i1
            for f2 in (0, 1):
                for i2 in range(m):
                    i = (i1 + (i2 if not f1 else -i2)) % m
                    f = f1 + f2
                    if f == 2:
                        i, f = (i + n) % m, 0
                    table[x, f2 * m + i2] = f * m + i
    label = "Q8" if order == 8 else f"Dic{order}"
    return from_table(order, table, label=label)


def direct_product(G: FiniteGroup, H: FiniteGroup) -> FiniteGroup:
    order = G.order * H.order
    if order > TABLE_CAP:
        raise SizeLimit(f"order {order} exceeds table cap {TABLE_CAP}")
    # index (g, h) -> g*|H| + h
    tg = np.repeat(np.repeat(G.table, H.order, axis=0), H.order, axis=1)
    th = np.tile(H.table, (G.order, G.order))
    table = tg.astype(np.int64) * H.order + th
    lg = G.label or "?"
    lh = H.label or "?"
    return from_table(order, table, label=f"{lg}x{lh}")


# ---------------------------------------------------------------------------
# subgroups, quotients, maps


@dataclass(frozen=True, eq=False)
class Subgroup:
    """A subgroup of ``parent`` given as a sorted index tuple containing 0."""

    parent: FiniteGroup
    elements: tuple[int, ...]

    def __post_init__(self):
        els = self.elements
        if not els or els[0] != 0 or list(els) != sorted(set(els)):
            raise ValueError("elements must be sorted, unique, and contain 0")
        t = self.parent.table
        arr = np.asarray(els)
        sub = t[np.ix_(arr, arr)]
        if not np.isin(sub, arr).all():
            raise ValueError("set is not closed under multiplication")

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def is_whole(self) -> bool:
        return self.order == self.parent.order

    @cached_property
    def element_set(self) -> frozenset[int]:
        return frozenset(self.elements)

    def normality_violation(self) -> Optional[tuple[int, int]]:
        """First (x, s) with x s x^-1 outside the subgroup, or None."""
        G = self.parent
        arr = np.asarray(self.elements)
        for x in range(G.order):
            conj = G.table[G.table[x, arr], G.inverse[x]]
            bad = ~np.isin(conj, arr)
            if bad.any():
                return (x, int(arr[np.argwhere(bad)[0][0]]))
        return None

    @cached_property
    def is_normal(self) -> bool:
        return self.normality_violation() is None

    def __repr__(self) -> str:
        return f"<Subgroup order={self.order} of {self.parent!r}>"


def subgroup_generated(G: FiniteGroup, gens: Iterable[int]) -> Subgroup:
    els = closure_indices(G.table, gens)
    return Subgroup(G, tuple(int(e) for e in els))


def center(G: FiniteGroup) -> Subgroup:
    return Subgroup(G, tuple(int(x) for x in np.flatnonzero(G.center_mask)))


def derived_subgroup(G: FiniteGroup) -> Subgroup:
    """Subgroup generated by all commutators, closed to its normal closure."""
    comm = np.unique(G.commutators)
    # close the generating set under conjugation before taking the closure
    gens = comm
    t, inv = G.table, G.inverse
    ys = np.arange(G.order)
    while True:
        conj = np.unique(t[t[ys[:, None], gens[None, :]], inv[ys][:, None]])
        merged = np.unique(np.concatenate([gens, conj]))
        if merged.size == gens.size:
            break
        gens = merged
    return subgroup_generated(G, gens)


def quotient(G: FiniteGroup, N: Subgroup) -> tuple[FiniteGroup, "GroupMap"]:
    """Quotient of G by the normal subgroup N, with canonical projection.

    Coset representatives are the minimal indices of each coset; the identity
    coset therefore maps to index 0.
    """
    if N.parent is not G:
        raise ValueError("N is not a subgroup of G")
    viol = N.normality_violation()
    if viol is not None:
        x, s = viol
        raise NotNormal(f"{x}*{s}*{x}^-1 lies outside the subgroup")
    arr = np.asarray(N.elements)
    reps = G.table[:, arr].min(axis=1)          # min of the left coset xN
    rep_list = np.unique(reps)
    coset_of = {int(r): i for i, r in enumerate(rep_list)}
    q = len(rep_list)
    qtable = np.empty((q, q), dtype=np.int32)
    for i, r in enumerate(rep_list):
        qtable[i] = [coset_of[int(reps[G.table[r, s]])] for s in rep_list]
    Q = from_table(q, qtable, label=f"{G.label or '?'}/N{N.order}")
    images = np.array([coset_of[int(reps[x])] for x in range(G.order)], dtype=np.int32)
    return Q, GroupMap(G, Q, images)


@dataclass(frozen=True, eq=False)
class GroupMap:
    """A homomorphism between table groups, validated on construction."""

    source: FiniteGroup
    target: FiniteGroup
    images: np.ndarray

    def __post_init__(self):
        img = np.asarray(self.images, dtype=np.int32)
        object.__setattr__(self, "images", img)
        if img.shape != (self.source.order,):
            raise ValueError("images must list one target index per source element")
        if img[0] != 0:
            raise ValueError("homomorphisms must send identity to identity")
        lhs = img[self.source.table]
        rhs = self.target.table[img[:, None], img[None, :]]
        if not np.array_equal(lhs, rhs):
            x, y = np.argwhere(lhs != rhs)[0]
            raise ValueError(f"not a homomorphism at ({int(x)},{int(y)})")

    def __call__(self, x: int) -> int:
        return int(self.images[x])

    @cached_property
    def is_bijective(self) -> bool:
        return len(set(int(v) for v in self.images)) == self.target.order == self.source.order

    @cached_property
    def is_surjective(self) -> bool:
        return len(set(int(v) for v in self.images)) == self.target.order

    def compose(self, then: "GroupMap") -> "GroupMap":
        if then.source is not self.target:
            raise ValueError("maps are not composable")
        return GroupMap(self.source, then.target, then.images[self.images])

    def inverted(self) -> "GroupMap":
        if not self.is_bijective:
            raise ValueError("map is not bijective")
        inv = np.empty_like(self.images)
        inv[self.images] = np.arange(self.source.order, dtype=np.int32)
        return GroupMap(self.target, self.source, inv)


# ---------------------------------------------------------------------------
# structural invariants


@dataclass(frozen=True)
class StructuralInvariants:
    order: int
    is_abelian: bool
    elementary_abelian_prime: Optional[int]
    exponent: int
    order_profile: dict[int, int]
    lower_central_series: tuple[Subgroup, ...]
    nilpotency_class: Optional[int]   # None means not nilpotent

    @property
    def is_nilpotent(self) -> bool:
        return self.nilpotency_class is not None

    def is_elementary_abelian(self, p: int) -> bool:
        return self.elementary_abelian_prime == p


def lower_central_series(G: FiniteGroup) -> tuple[Subgroup, ...]:
    """gamma_1 = G, gamma_{k+1} = [gamma_k, G], until the series stabilizes."""
    series = [Subgroup(G, tuple(range(G.order)))]
    t, inv = G.table, G.inverse
    ys = np.arange(G.order)
    while True:
        cur = np.asarray(series[-1].elements)
        a = t[t[cur[:, None], ys[None, :]], inv[cur][:, None]]
        comms = np.unique(t[a, inv[ys][None, :]])
        nxt = subgroup_generated(G, comms)
        if nxt.elements == series[-1].elements:
            break
        series.append(nxt)
        if nxt.order == 1:
            break
    return tuple(series)


def nilpotency_class(G: FiniteGroup) -> Optional[int]:
    series = lower_central_series(G)
    if series[-1].order != 1:
        return None
    return len(series) - 1


def structural_invariants(G: FiniteGroup) -> StructuralInvariants:
    profile = G.order_profile
    ab = G.is_abelian
    el_prime = None
    if ab and G.order > 1:
        ords = set(profile) - {1}
        if len(ords) == 1:
            p = ords.pop()
            if is_prime(p):
                el_prime = p
    series = lower_central_series(G)
    cls = len(series) - 1 if series[-1].order == 1 else None
    return StructuralInvariants(
        order=G.order,
        is_abelian=ab,
        elementary_abelian_prime=el_prime,
        exponent=G.exponent,
        order_profile=profile,
        lower_central_series=series,
        nilpotency_class=cls,
    )


# ---------------------------------------------------------------------------
# isomorphism testing


def _signatures(G: FiniteGroup) -> np.ndarray:
    """Per-element invariant tuples used to prune isomorphism candidates."""
    sq = G.table[np.arange(G.order), np.arange(G.order)]
    return np.stack([G.element_orders,
                     G.centralizer_sizes,
                     G.class_sizes,
                     G.element_orders[sq]], axis=1)


def generating_sequence(G: FiniteGroup) -> list[int]:
    """Greedy short generating sequence: high element order first, small
    centralizer next; deterministic for a fixed labeling."""
    orders = G.element_orders
    csz = G.centralizer_sizes
    cands = sorted(range(1, G.order), key=lambda x: (-orders[x], csz[x], x))
    seq: list[int] = []
    span = {0}
    for x in cands:
        if x in span:
            continue
        seq.append(x)
        span = set(int(e) for e in closure_indices(G.table, seq))
        if len(span) == G.order:
            break
    return seq


def is_isomorphic(G: FiniteGroup, H: FiniteGroup,
                  *, size_limit: int = ISO_SIZE_LIMIT) -> Optional[GroupMap]:
    """Explicit isomorphism G -> H, or None.

    Backtracks over images of a greedy generating sequence of G, pruning by
    element order, centralizer size, class size and square order, extending
    the partial map through products and rejecting on the first conflict.
    """
    if G.order != H.order:
        return None
    if G.order > size_limit:
        raise SizeLimit(f"order {G.order} exceeds isomorphism bound {size_limit}")
    sigG, sigH = _signatures(G), _signatures(H)
    if sorted(map(tuple, sigG.tolist())) != sorted(map(tuple, sigH.tolist())):
        return None

    n = G.order
    if n == 1:
        return GroupMap(G, H, np.zeros(1, dtype=np.int32))

    seq = generating_sequence(G)
    buckets: dict[tuple, list[int]] = {}
    for h in range(n):
        buckets.setdefault(tuple(sigH[h].tolist()), []).append(h)

    TG, TH = G.table, H.table
    gmap = np.full(n, -1, dtype=np.int32)
    hmap = np.full(n, -1, dtype=np.int32)
    gmap[0] = 0
    hmap[0] = 0
    dom: list[int] = [0]

    def extend(g: int, h: int) -> Optional[list[int]]:
        added: list[int] = []

        def assign(x: int, y: int) -> bool:
            if gmap[x] != -1:
                return gmap[x] == y
            if hmap[y] != -1:
                return False
            gmap[x] = y
            hmap[y] = x
            dom.append(x)
            added.append(x)
            queue.append(x)
            return True

        queue: list[int] = []
        if not assign(g, h):
            return None if not added else _rollback(added)
        qi = 0
        while qi < len(queue):
            x = queue[qi]
            qi += 1
            hx = gmap[x]
            for i in range(len(dom)):
                d = dom[i]
                hd = gmap[d]
                if not assign(int(TG[d, x]), int(TH[hd, hx])):
                    return _rollback(added)
                if not assign(int(TG[x, d]), int(TH[hx, hd])):
                    return _rollback(added)
        return added

    def _rollback(added: list[int]) -> None:
        for x in reversed(added):
            hmap[gmap[x]] = -1
            gmap[x] = -1
        del dom[len(dom) - len(added):]
        return None

    def backtrack(i: int) -> bool:
        if i == len(seq):
            return True
        g = seq[i]
        for h in buckets.get(tuple(sigG[g].tolist()), []):
            if hmap[h] != -1:
                continue
            added = extend(g, h)
            if added is not None:
                if backtrack(i + 1):
                    return True
                _rollback(added)
        return False

    if not backtrack(0):
        return None
    return GroupMap(G, H, gmap.copy())


# ---------------------------------------------------------------------------
# Cayley-table text format


def to_cayley_text(G: FiniteGroup) -> str:
    """Bit-exact text form: optional '# label:' line, order, then the rows."""
    lines = []
    if G.label:
        lines.append(f"# label: {G.label}")
    lines.append(str(G.order))
    for x in range(G.order):
        lines.append(" ".join(str(int(v)) for v in G.table[x]))
    return "\n".join(lines) + "\n"


def from_cayley_text(text: str) -> FiniteGroup:
    lines = text.splitlines()
    label = None
    pos = 0
    if lines and lines[0].startswith("#"):
        head = lines[0][1:].strip()
        if head.startswith("label:"):
            label = head[len("label:"):].strip()
        pos = 1
    if pos >= len(lines):
        raise NotAGroup("missing order line")
    order = int(lines[pos])
    rows = [[int(v) for v in lines[pos + 1 + i].split()] for i in range(order)]
    return from_table(order, rows, label=label)


def write_cayley(G: FiniteGroup, path) -> None:
    with open(path, "w", newline="") as fh:
        fh.write(to_cayley_text(G))


def read_cayley(path) -> FiniteGroup:
    with open(path, "r", newline="") as fh:
        return from_cayley_text(fh.read())
