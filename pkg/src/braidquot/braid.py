"""Surface braid group presentations and braid-reduced quotient search.

The full presentation (generators sigma_1..sigma_{n-1}, a_1..a_g, b_1..b_g)
carries the braid relations plus the mixed families R1-R4 and the single
surface relation TR.  Collapsing the braid generators to one central element
sigma yields the reduced families R1', R3', R4' and TR':

    R1'  [a_r, sigma] = [b_r, sigma] = 1
    R3'  [a_s, a_r] = [b_s, b_r] = [b_s, a_r] = [a_s, b_r] = 1   (s < r)
    R4'  [a_r, b_r] = sigma^2
    TR'  sigma^(2(g+n-1)) = 1

A witness is a tuple (sigma, a_1, b_1, ..., a_g, b_g) generating a finite
group and satisfying the reduced relations; its existence certifies the
group as a braid-reduced quotient.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Mapping, Optional

import numpy as np

from . import fingroup, jn2, oracle
from .errors import HypothesisFailed, ParamRange, SearchBudgetExceeded, SizeLimit
from .fingroup import FiniteGroup, closure_indices, derived_subgroup, subgroup_generated
from .jn2 import Jn2Spec, materialize, parse_spec

Word = tuple[tuple[str, int], ...]


@dataclass(frozen=True)
class Relator:
    label: str
    word: Word

    @property
    def family(self) -> str:
        return self.label.split("[", 1)[0]


@dataclass(frozen=True)
class Presentation:
    n: int
    g: int
    generators: tuple[str, ...]
    relators: tuple[Relator, ...]

    def families(self) -> tuple[str, ...]:
        seen = []
        for rel in self.relators:
            if rel.family not in seen:
                seen.append(rel.family)
        return tuple(seen)


def _inv_word(w: Word) -> Word:
    return tuple((gen, -e) for gen, e in reversed(w))


def _comm(x: Word, y: Word) -> Word:
    """[x, y] = x y x^-1 y^-1 as a word."""
    return x + y + _inv_word(x) + _inv_word(y)


def _gen(name: str, e: int = 1) -> Word:
    return ((name, e),)


def bellingeri_presentation(n: int, g: int) -> Presentation:
    """The full presentation of the genus-g surface braid group on n strands."""
    if n < 2 or g < 1:
        raise ParamRange(f"need n >= 2 and g >= 1, got n={n}, g={g}")
    gens = tuple(f"s{i}" for i in range(1, n)) + \
        tuple(f"a{r}" for r in range(1, g + 1)) + \
        tuple(f"b{r}" for r in range(1, g + 1))
    rels: list[Relator] = []
    for i in range(1, n):
        for jj in range(i + 2, n):
            rels.append(Relator(f"braid-comm[{i},{jj}]",
                                _comm(_gen(f"s{i}"), _gen(f"s{jj}"))))
    for i in range(1, n - 1):
        lhs = _gen(f"s{i}") + _gen(f"s{i+1}") + _gen(f"s{i}")
        rhs = _gen(f"s{i+1}") + _gen(f"s{i}") + _gen(f"s{i+1}")
        rels.append(Relator(f"braid[{i}]", lhs + _inv_word(rhs)))
    for r in range(1, g + 1):
        for i in range(2, n):
            rels.append(Relator(f"R1[a{r},s{i}]",
                                _comm(_gen(f"a{r}"), _gen(f"s{i}"))))
            rels.append(Relator(f"R1[b{r},s{i}]",
                                _comm(_gen(f"b{r}"), _gen(f"s{i}"))))
    for r in range(1, g + 1):
        for x in ("a", "b"):
            inner = _gen("s1", -1) + _gen(f"{x}{r}") + _gen("s1", -1)
            rels.append(Relator(f"R2[{x}{r}]", _comm(_gen(f"{x}{r}"), inner)))
    for s in range(1, g + 1):
        for r in range(s + 1, g + 1):
            conj_a = _gen("s1") + _gen(f"a{r}") + _gen("s1", -1)
            conj_b = _gen("s1") + _gen(f"b{r}") + _gen("s1", -1)
            rels.append(Relator(f"R3[a{s},a{r}]", _comm(_gen(f"a{s}"), conj_a)))
            rels.append(Relator(f"R3[b{s},b{r}]", _comm(_gen(f"b{s}"), conj_b)))
            rels.append(Relator(f"R3[b{s},a{r}]", _comm(_gen(f"b{s}"), conj_a)))
            rels.append(Relator(f"R3[a{s},b{r}]", _comm(_gen(f"a{s}"), conj_b)))
    for r in range(1, g + 1):
        inner = _gen("s1", -1) + _gen(f"b{r}") + _gen("s1", -1)
        rels.append(Relator(f"R4[{r}]",
                            _comm(_gen(f"a{r}"), inner) + _gen("s1", -2)))
    lhs: Word = ()
    for r in range(1, g + 1):
        lhs = lhs + _comm(_gen(f"a{r}"), _gen(f"b{r}", -1))
    rhs = tuple((f"s{i}", 1) for i in range(1, n - 1)) + ((f"s{n-1}", 2),) + \
        tuple((f"s{i}", 1) for i in range(n - 2, 0, -1))
    rels.append(Relator("TR", lhs + _inv_word(rhs)))
    return Presentation(n=n, g=g, generators=gens, relators=tuple(rels))


def reduced_relations(n: int, g: int) -> Presentation:
    """Single braid generator sigma plus a_r, b_r with the reduced families."""
    if n < 3 or g < 1:
        raise ParamRange(f"need n >= 3 and g >= 1, got n={n}, g={g}")
    gens = ("s",) + tuple(f"a{r}" for r in range(1, g + 1)) + \
        tuple(f"b{r}" for r in range(1, g + 1))
    rels: list[Relator] = []
    for r in range(1, g + 1):
        rels.append(Relator(f"R1'[a{r}]", _comm(_gen(f"a{r}"), _gen("s"))))
        rels.append(Relator(f"R1'[b{r}]", _comm(_gen(f"b{r}"), _gen("s"))))
    for s in range(1, g + 1):
        for r in range(s + 1, g + 1):
            rels.append(Relator(f"R3'[a{s},a{r}]", _comm(_gen(f"a{s}"), _gen(f"a{r}"))))
            rels.append(Relator(f"R3'[b{s},b{r}]", _comm(_gen(f"b{s}"), _gen(f"b{r}"))))
            rels.append(Relator(f"R3'[b{s},a{r}]", _comm(_gen(f"b{s}"), _gen(f"a{r}"))))
            rels.append(Relator(f"R3'[a{s},b{r}]", _comm(_gen(f"a{s}"), _gen(f"b{r}"))))
    for r in range(1, g + 1):
        rels.append(Relator(f"R4'[{r}]",
                            _comm(_gen(f"a{r}"), _gen(f"b{r}")) + _gen("s", -2)))
    rels.append(Relator("TR'", (("s", 2 * (g + n - 1)),)))
    return Presentation(n=n, g=g, generators=gens, relators=tuple(rels))


def evaluate_word(G: FiniteGroup, images: Mapping[str, int], word: Word) -> int:
    acc = 0
    for gen, e in word:
        acc = G.mul(acc, G.power(images[gen], e))
    return acc


# ---------------------------------------------------------------------------
# reports


@dataclass(frozen=True)
class QuotientReport:
    """Relator-by-relator evaluation of a presentation in a finite group."""

    presentation: Presentation
    relator_results: tuple[tuple[str, bool], ...]
    generates: bool

    @property
    def relators_ok(self) -> bool:
        return all(ok for _, ok in self.relator_results)

    @property
    def ok(self) -> bool:
        return self.relators_ok and self.generates

    def family_ok(self, family: str) -> bool:
        results = [ok for label, ok in self.relator_results
                   if label.split("[", 1)[0] == family]
        return bool(results) and all(results)

    def failures(self) -> tuple[str, ...]:
        return tuple(label for label, ok in self.relator_results if not ok)


@dataclass(frozen=True)
class Witness:
    """Candidate braid-reduced generating tuple inside a finite group."""

    group: FiniteGroup
    n: int
    g: int
    sigma: int
    a: tuple[int, ...]
    b: tuple[int, ...]

    def images(self) -> dict[str, int]:
        img = {"s": self.sigma}
        for r in range(self.g):
            img[f"a{r + 1}"] = self.a[r]
            img[f"b{r + 1}"] = self.b[r]
        return img

    def full_images(self) -> dict[str, int]:
        """Extension sigma_i := sigma, for evaluating the full presentation."""
        img = {f"s{i}": self.sigma for i in range(1, self.n)}
        for r in range(self.g):
            img[f"a{r + 1}"] = self.a[r]
            img[f"b{r + 1}"] = self.b[r]
        return img


@dataclass(frozen=True)
class WitnessReport:
    witness: Witness
    relator_results: tuple[tuple[str, bool], ...]
    generates: bool
    sigma_central: bool
    derived_identity_ok: bool   # [a_r, b_r^-1] = sigma^-2 for all r

    @property
    def relators_ok(self) -> bool:
        return all(ok for _, ok in self.relator_results)

    @property
    def ok(self) -> bool:
        return (self.relators_ok and self.generates
                and self.sigma_central and self.derived_identity_ok)

    def family_ok(self, family: str) -> bool:
        results = [ok for label, ok in self.relator_results
                   if label.split("[", 1)[0] == family]
        return bool(results) and all(results)

    def failures(self) -> tuple[str, ...]:
        return tuple(label for label, ok in self.relator_results if not ok)


def check_full_quotient(G: FiniteGroup, n: int, g: int,
                        images: Mapping[str, int]) -> QuotientReport:
    """Evaluate every relator of the full presentation; failures are data."""
    pres = bellingeri_presentation(n, g)
    missing = [gen for gen in pres.generators if gen not in images]
    if missing:
        raise ValueError(f"images missing for generators {missing}")
    results = tuple((rel.label, evaluate_word(G, images, rel.word) == 0)
                    for rel in pres.relators)
    gen_set = subgroup_generated(G, [images[gen] for gen in pres.generators])
    return QuotientReport(presentation=pres, relator_results=results,
                          generates=gen_set.is_whole)


def check_reduced_witness(w: Witness) -> WitnessReport:
    """Verify the reduced relations, generation, and the two consequences
    (sigma central; [a_r, b_r^-1] = sigma^-2)."""
    G = w.group
    pres = reduced_relations(w.n, w.g)
    images = w.images()
    results = tuple((rel.label, evaluate_word(G, images, rel.word) == 0)
                    for rel in pres.relators)
    gen_set = subgroup_generated(G, [w.sigma, *w.a, *w.b])
    central = bool(G.center_mask[w.sigma])
    sig_inv2 = G.power(w.sigma, -2)
    derived_ok = all(G.commutator(w.a[r], G.inv(w.b[r])) == sig_inv2
                     for r in range(w.g))
    return WitnessReport(witness=w, relator_results=results,
                         generates=gen_set.is_whole, sigma_central=central,
                         derived_identity_ok=derived_ok)


# ---------------------------------------------------------------------------
# witness search


def find_witness(G: FiniteGroup, n: int, g: int,
                 *, budget: Optional[int] = None) -> Optional[Witness]:
    """First witness in deterministic order (sigma, then pairs in increasing
    element index), or None after exhausting the search space.

    sigma ranges over central elements with sigma^(2(g+n-1)) = 1 (forced by
    R1' together with generation); sigma^2 must land in the derived subgroup
    (it is a commutator of witness elements), and for nonabelian G the case
    sigma^2 = 1 is skipped since a pairwise-commuting tuple cannot generate.
    """
    if n < 3 or g < 1:
        raise ParamRange(f"need n >= 3 and g >= 1, got n={n}, g={g}")
    N = G.order
    T = G.table
    tr_exp = 2 * (g + n - 1)
    comm = G.commutators
    commutes = G.commutes
    orders = G.element_orders
    derived = set(derived_subgroup(G).elements)
    nonabelian = not G.is_abelian
    explored = 0

    def bump() -> None:
        nonlocal explored
        explored += 1
        if budget is not None and explored > budget:
            raise SearchBudgetExceeded(
                f"witness search exceeded {budget} nodes", explored=explored)

    sigmas = [s for s in range(N)
              if G.center_mask[s] and tr_exp % int(orders[s]) == 0]

    def place(r: int, placed: list[int], mask: np.ndarray,
              sigma: int, s2: int) -> Optional[list[int]]:
        if r == g:
            gens = [sigma] + placed
            if closure_indices(T, gens).size == N:
                return placed
            return None
        for a in np.flatnonzero(mask):
            bump()
            b_mask = mask & (comm[a] == s2)
            for b in np.flatnonzero(b_mask):
                bump()
                nxt = mask & commutes[a] & commutes[b]
                if r + 1 < g:
                    # everything still to be placed commutes with the pairs
                    # so far; prune when even that cannot generate G
                    seeds = list(np.flatnonzero(nxt)) + placed + [sigma, int(a), int(b)]
                    if closure_indices(T, seeds).size < N:
                        continue
                res = place(r + 1, placed + [int(a), int(b)], nxt, sigma, s2)
                if res is not None:
                    return res
        return None

    for sigma in sigmas:
        s2 = int(T[sigma, sigma])
        if s2 not in derived:
            continue
        if nonabelian and s2 == 0:
            continue  # commuting tuple generates an abelian subgroup only
        found = place(0, [], np.ones(N, dtype=bool), sigma, s2)
        if found is not None:
            return Witness(group=G, n=n, g=g, sigma=sigma,
                           a=tuple(found[0::2]), b=tuple(found[1::2]))
    return None


def standard_witness(spec: Jn2Spec, n: int, g: int) -> Witness:
    """The explicit witness for a standard group: a_r, b_r the distinguished
    generators and sigma the central power prescribed by the variant."""
    if spec.m != g:
        raise HypothesisFailed(f"rank m={spec.m} differs from g={g}")
    if (g + n - 1) % spec.p != 0:
        raise HypothesisFailed(f"p={spec.p} does not divide g+n-1={g + n - 1}")
    std = materialize(spec)
    G, z = std.group, std.z
    p, j = spec.p, spec.j
    if spec.variant == "I":
        if p == 2 and j == 2:
            sigma = z
        elif p != 2 and j == 1:
            sigma = G.power(z, (p + 1) // 2)
        else:
            raise HypothesisFailed(
                f"variant I needs p^j = 4 or j = 1 with p odd, got p^j = {p}^{j}")
    else:
        if p == 2:
            if j < 2:
                raise HypothesisFailed("variant II with p = 2 needs j >= 2")
            sigma = G.power(z, 2 ** (j - 2))
        else:
            sigma = G.power(z, (p ** j + p ** (j - 1)) // 2)
    w = Witness(group=G, n=n, g=g, sigma=sigma, a=std.a, b=std.b)
    report = check_reduced_witness(w)
    assert report.ok, f"standard witness failed: {report.failures()}"
    return w


# ---------------------------------------------------------------------------
# minimal-quotient search


@dataclass(frozen=True)
class PredictedMinimum:
    p: int
    j: int
    order: int


def _least_prime_factor(n: int) -> int:
    d = 2
    while d * d <= n:
        if n % d == 0:
            return d
        d += 1
    return n


def predicted_minimum(n: int, g: int) -> PredictedMinimum:
    """Formula value p^(2g+j): p the least prime factor of g+n-1, j = 2 for
    p = 2 and j = 1 otherwise."""
    if n < 5 or g < 1:
        raise ParamRange(f"need n >= 5 and g >= 1, got n={n}, g={g}")
    p = _least_prime_factor(g + n - 1)
    j = 2 if p == 2 else 1
    return PredictedMinimum(p=p, j=j, order=p ** (2 * g + j))


@dataclass(frozen=True)
class CandidateVerdict:
    label: str
    order: int
    kind: str                  # "spec" or "catalog"
    spec: Optional[Jn2Spec]
    group: FiniteGroup
    witness: Optional[Witness]


@dataclass(frozen=True)
class SearchReport:
    n: int
    g: int
    bound: int
    predicted: PredictedMinimum
    candidates: tuple[CandidateVerdict, ...]
    minimum: Optional[int]
    attained: tuple[str, ...]
    provenance: str

    def found(self) -> tuple[CandidateVerdict, ...]:
        return tuple(c for c in self.candidates if c.witness is not None)


_PROVENANCE = ("orders <= 15: unconditional (order <= 8 exhaustively enumerated, "
               "9..15 from the classical nonabelian catalog); orders >= 16: "
               "JN2 candidates only, complete for minimal braid-reduced "
               "quotients by the classification of JN2 groups")


@lru_cache(maxsize=None)
def minimal_braid_reduced_search(n: int, g: int, bound: int,
                                 budget: Optional[int] = None) -> SearchReport:
    """Sweep all candidate groups of order <= bound and report the minimum
    order admitting a witness, together with every attaining group up to
    isomorphism.

    Candidates are all standard JN2 groups within the bound plus the
    oracle catalog of nonabelian groups through order 15, so minimality is
    unconditional below 16.
    """
    if n < 5 or g < 1:
        raise ParamRange(f"need n >= 5 and g >= 1, got n={n}, g={g}")
    if bound > fingroup.TABLE_CAP:
        raise SizeLimit(f"bound {bound} exceeds table cap {fingroup.TABLE_CAP}")
    cands: list[tuple[int, int, str, Optional[Jn2Spec], FiniteGroup]] = []
    catalog = oracle.nonabelian_catalog_upto(15)
    for entry in catalog.entries:
        if entry.order <= bound:
            cands.append((entry.order, 0, entry.group.label or "?", None, entry.group))
    for spec in jn2.enumerate_specs(bound):
        std = materialize(spec)
        cands.append((spec.order, 1, str(spec), spec, std.group))
    cands.sort(key=lambda c: (c[0], c[1], c[2]))

    verdicts = []
    for order, _, label, spec, group in cands:
        w = find_witness(group, n, g, budget=budget)
        if w is not None:
            rep = check_reduced_witness(w)
            assert rep.ok, f"witness for {label} failed re-verification"
        verdicts.append(CandidateVerdict(label=label, order=order,
                                         kind="spec" if spec else "catalog",
                                         spec=spec, group=group, witness=w))

    hits = [v for v in verdicts if v.witness is not None]
    minimum = min((v.order for v in hits), default=None)
    attained: list[str] = []
    if minimum is not None:
        winners = [v for v in hits if v.order == minimum]
        spec_winners = [v for v in winners if v.spec is not None]
        spec_winners.sort(key=lambda v: (v.spec.variant, v.spec.p, v.spec.j, v.spec.m))
        attained = [v.label for v in spec_winners]
        for v in winners:
            if v.spec is None:
                if not any(fingroup.is_isomorphic(v.group, s.group) is not None
                           for s in spec_winners):
                    attained.append(v.label)
    return SearchReport(n=n, g=g, bound=bound,
                        predicted=predicted_minimum(n, g),
                        candidates=tuple(verdicts), minimum=minimum,
                        attained=tuple(attained), provenance=_PROVENANCE)


def non_nilpotency_check(m: int) -> bool:
    """True iff the symmetric group on m points is not nilpotent."""
    if math.factorial(m) > fingroup.TABLE_CAP:
        raise SizeLimit(f"order {math.factorial(m)} exceeds table cap")
    return fingroup.nilpotency_class(fingroup.symmetric(m)) is None


def kolay_bound(n: int) -> int:
    """External lower bound n! for non-braid-reduced nonabelian quotients
    (Kolay); displayed as a constant, not re-derived here."""
    return math.factorial(n)


# ---------------------------------------------------------------------------
# witness files


def witness_to_text(w: Witness, group_ref: str) -> str:
    lines = [
        f"n {w.n}",
        f"g {w.g}",
        f"group {group_ref}",
        f"sigma {w.sigma}",
        "a " + " ".join(str(x) for x in w.a),
        "b " + " ".join(str(x) for x in w.b),
    ]
    return "\n".join(lines) + "\n"


def witness_from_text(text: str, *, base_dir=None) -> Witness:
    fields: dict[str, str] = {}
    for line in text.splitlines():
        if not line.strip():
            continue
        key, _, value = line.partition(" ")
        fields[key] = value.strip()
    for key in ("n", "g", "group", "sigma", "a", "b"):
        if key not in fields:
            raise ValueError(f"witness file missing field {key!r}")
    ref = fields["group"]
    try:
        group = materialize(parse_spec(ref)).group
    except ValueError:
        import os

        path = ref if base_dir is None else os.path.join(base_dir, ref)
        group = fingroup.read_cayley(path)
    n, g = int(fields["n"]), int(fields["g"])
    a = tuple(int(x) for x in fields["a"].split())
    b = tuple(int(x) for x in fields["b"].split())
    if len(a) != g or len(b) != g:
        raise ValueError("witness a/b lists must have g entries each")
    return Witness(group=group, n=n, g=g, sigma=int(fields["sigma"]), a=a, b=b)
