"""Morphisms on both sides of the duality and the translations between them.

Structure side: a SteinbergMorphism is an element map between two Steinberg
semigroups (or rings).  Bundle side: a PierceMorphism from rho: C -> G to
rho': C' -> G' is a pair (beta, phi) where phi is an etale morphism from a
subgroupoid of G' into G and beta maps the pullback of rho along phi into C'.

The functor U sends pi to (pi-bar, pi-underline) on ultrafilter bundles, the
functor S sends (beta, phi) to beta_* o phi^* on section structures, and eta
and epsilon compare each object with its double dual.
"""

from dataclasses import dataclass, field

from .axioms import require_profile
from .bundles import ultrafilter_bundle
from .core import UNDEFINED, FiniteBundle, FiniteCategory, FiniteGroupoid, FiniteRingoidBundle
from .errors import (
    DomainMismatch, IllDefined, NaturalitySquareFails, NotClosed, NotInjective,
    NotMorphism, NotSurjective, NotUltrafilter,
)
from .filters import ultrafilter_groupoid
from .laws import Law, run_laws, single
from .sections import sections_of


def _profile_of(ctx):
    return "steinberg-ring" if ctx.is_ring else "steinberg-semigroup"


# ============================================================ structure side


@dataclass(frozen=True, eq=False)
class SteinbergMorphism:
    """``values[a]`` is the image of carrier element a (UNDEFINED off the
    checked domain: S for semigroups, all of A for rings)."""

    source: object
    target: object
    values: tuple

    def __call__(self, a):
        return self.values[a]

    @property
    def domain(self):
        return range(self.source.n) if self.source.is_ring else self.source.S

    def __eq__(self, other):
        if not isinstance(other, SteinbergMorphism):
            return NotImplemented
        return (
            self.source is other.source and self.target is other.target
            and all(self.values[a] == other.values[a] for a in self.domain)
        )

    __hash__ = object.__hash__


def identity_morphism(ctx):
    return SteinbergMorphism(ctx, ctx, tuple(range(ctx.n)))


def compose_morphisms(second, first):
    """second o first."""
    if first.target is not second.source:
        raise DomainMismatch("the first morphism does not land where the second starts")
    values = tuple(
        UNDEFINED if v == UNDEFINED else second.values[v] for v in first.values
    )
    return SteinbergMorphism(first.source, second.target, values)


def _steinberg_morphism_laws(m):
    src, tgt = m.source, m.target
    ring = src.is_ring and tgt.is_ring

    def ones(m):
        return ((a,) for a in m.domain)

    def pairs(m):
        dom = list(m.domain)
        return ((a, b) for a in dom for b in dom)

    def orthogonal_pairs(m):
        rel = m.source.relations
        return ((a, b) for a in m.source.S for b in m.source.S if rel.orthogonal(a, b))

    def lands(m, a):
        return m.values[a] != UNDEFINED and 0 <= m.values[a] < m.target.n

    def s_into_s(m, a):
        return a not in m.source.S_set or m.values[a] in m.target.S_set

    def multiplicative(m, a, b):
        v = m.values
        return v[m.source.rows[a][b]] == m.target.rows[v[a]][v[b]]

    def additive(m, a, b):
        v = m.values
        return v[m.source.carrier.add_rows[a][b]] == m.target.carrier.add_rows[v[a]][v[b]]

    def zero(m):
        return m.values[m.source.zero] == m.target.zero

    def z_into_z(m, z):
        return m.values[z] in m.target.Z_set

    def joins(m, a, b):
        join = m.source.relations.orthosupremum(a, b)
        image_a, image_b = m.values[a], m.values[b]
        rel = m.target.relations
        if join is None or not rel.orthogonal(image_a, image_b):
            return False
        return m.values[join] == rel.orthosupremum(image_a, image_b)

    def phi_compatible(m, a):
        return m.values[m.source.phi[a]] == m.target.phi[m.values[a]]

    laws = [
        Law("defined on the domain", ones, lands),
        Law("maps S into S'", ones, s_into_s),
        Law("multiplicative", pairs, multiplicative),
    ]
    if ring:
        laws.append(Law("additive", pairs, additive))
    laws += [
        Law("preserves zero", single(), zero),
        Law("maps Z into Z'", lambda m: ((z,) for z in m.source.Z), z_into_z),
        Law("preserves orthogonal joins", orthogonal_pairs, joins),
        Law("commutes with Phi", ones, phi_compatible),
    ]
    return laws


def validate_steinberg_morphism(m, check_endpoints=True):
    """Exhaustive law check; the report names the first witness of each law."""
    if m.source.is_ring != m.target.is_ring:
        raise DomainMismatch("a ring can only be mapped to a ring")
    if check_endpoints:
        require_profile(m.source, _profile_of(m.source))
        require_profile(m.target, _profile_of(m.target))
    laws = _steinberg_morphism_laws(m)
    report = None
    for law in laws:
        # Later laws index tables with images, so stop at the first failure
        # among the totality laws.
        if law.name in ("defined on the domain", "maps S into S'"):
            witness = law.first_failure(m)
            if witness is not None:
                report = run_laws("steinberg-morphism", [law], m)
                return report
    return run_laws("steinberg-morphism", laws, m)


def require_steinberg_morphism(m):
    report = validate_steinberg_morphism(m)
    if not report.passed:
        bad = report.failures()[0]
        raise NotMorphism(bad.witness or (), law=bad.law)
    return m


# ============================================================== bundle side


@dataclass(frozen=True, eq=False)
class EtaleMorphism:
    """A functor from a subgroupoid of ``source`` into ``target``;
    ``values`` maps each domain arrow to its image."""

    source: FiniteGroupoid
    target: FiniteGroupoid
    values: dict = field(default_factory=dict)

    @property
    def domain(self):
        return tuple(sorted(self.values))

    def __call__(self, g):
        return self.values[g]

    def __eq__(self, other):
        if not isinstance(other, EtaleMorphism):
            return NotImplemented
        return (self.source is other.source and self.target is other.target
                and self.values == other.values)

    __hash__ = object.__hash__


def identity_etale(groupoid):
    return EtaleMorphism(groupoid, groupoid, {g: g for g in range(groupoid.size)})


def compose_etale(outer, inner):
    """outer o inner, defined where inner lands in the domain of outer."""
    if inner.target is not outer.source:
        raise DomainMismatch("etale morphisms do not compose")
    values = {g: outer.values[h] for g, h in inner.values.items() if h in outer.values}
    return EtaleMorphism(inner.source, outer.target, values)


def _etale_laws():
    def dom(phi):
        return ((g,) for g in phi.domain)

    def dom_pairs(phi):
        d = phi.domain
        return ((g, h) for g in d for h in d)

    def closed(phi, g):
        G, d = phi.source, phi.values
        return G.srcs[g] in d and G.rngs[g] in d and G.invs[g] in d

    def closed_products(phi, g, h):
        gh = phi.source.comp_rows[g][h]
        return gh == UNDEFINED or gh in phi.values

    def lands(phi, g):
        return 0 <= phi.values[g] < phi.target.size

    def units(phi, g):
        G, H, v = phi.source, phi.target, phi.values
        return v[G.srcs[g]] == H.srcs[v[g]] and v[G.rngs[g]] == H.rngs[v[g]]

    def products(phi, g, h):
        G, H, v = phi.source, phi.target, phi.values
        gh = G.comp_rows[g][h]
        return gh == UNDEFINED or H.comp_rows[v[g]][v[h]] == v[gh]

    def unit_cases(phi):
        return ((e,) for e in phi.domain if e in phi.source.unit_set)

    def star(phi, e, ends_source, ends_target):
        v = phi.values
        mine = [g for g in phi.domain if ends_source[g] == e]
        theirs = {h for h in range(phi.target.size) if ends_target[h] == v[e]}
        images = [v[g] for g in mine]
        return len(set(images)) == len(images) and set(images) == theirs

    def source_star(phi, e):
        return star(phi, e, phi.source.srcs, phi.target.srcs)

    def range_star(phi, e):
        return star(phi, e, phi.source.rngs, phi.target.rngs)

    return [
        Law("domain closed under source, range and inverse", dom, closed),
        Law("domain closed under products", dom_pairs, closed_products),
        Law("values are target arrows", dom, lands),
        Law("functor on units", dom, units),
        Law("functor on products", dom_pairs, products),
        Law("bijective on source stars", unit_cases, source_star),
        Law("bijective on range stars", unit_cases, range_star),
    ]


def validate_etale_morphism(phi):
    return run_laws("etale-morphism", _etale_laws(), phi)


def subgroupoid(groupoid, arrows):
    """The subgroupoid on ``arrows`` (re-indexed) and the list of original
    indices; raises NotClosed when the arrows do not form one."""
    arrows = sorted(arrows)
    pos = {g: k for k, g in enumerate(arrows)}

    def local(g, witness):
        if g not in pos:
            raise NotClosed(witness, "arrow set is not a subgroupoid")
        return pos[g]

    src = [local(groupoid.srcs[g], (g,)) for g in arrows]
    rng = [local(groupoid.rngs[g], (g,)) for g in arrows]
    inv = [local(groupoid.invs[g], (g,)) for g in arrows]
    compose = [
        [UNDEFINED if groupoid.comp_rows[g][h] == UNDEFINED
         else local(groupoid.comp_rows[g][h], (g, h)) for h in arrows]
        for g in arrows
    ]
    names = [groupoid.arrows[g] for g in arrows]
    return FiniteGroupoid(names, src, rng, compose, inv, check=False), arrows


class Pullback:
    """The pullback of rho along phi: arrows (g', c) with rho(c) = phi(g')."""

    def __init__(self, phi, rho):
        if phi.target is not rho.base:
            raise DomainMismatch("the etale morphism must land in the bundle's base")
        base, base_arrows = subgroupoid(phi.source, phi.domain)
        self.phi, self.rho = phi, rho
        self.base_arrows = base_arrows
        local = {g: k for k, g in enumerate(base_arrows)}
        pairs = [(g, c) for g in base_arrows for c in rho.fibers[phi.values[g]]]
        self.pairs = tuple(pairs)
        self.position = {p: i for i, p in enumerate(pairs)}
        total = rho.total
        G = phi.source
        names = [f"({G.arrows[g]},{total.arrows[c]})" for g, c in pairs]
        src = [self.position[(G.srcs[g], total.srcs[c])] for g, c in pairs]
        rng = [self.position[(G.rngs[g], total.rngs[c])] for g, c in pairs]
        n = len(pairs)
        compose = [[UNDEFINED] * n for _ in range(n)]
        for i, (f, b) in enumerate(pairs):
            for j, (g, c) in enumerate(pairs):
                fg = G.comp_rows[f][g]
                if fg != UNDEFINED:
                    compose[i][j] = self.position[(fg, total.comp_rows[b][c])]
        category = FiniteCategory(names, src, rng, compose, check=False)
        rho_map = [local[g] for g, _ in pairs]
        zero = [self.position[(g, rho.zeros[phi.values[g]])] for g in base_arrows]
        if rho.is_ringoid:
            fadd = [[UNDEFINED] * n for _ in range(n)]
            for i, (g, c) in enumerate(pairs):
                for d in rho.fibers[phi.values[g]]:
                    fadd[i][self.position[(g, d)]] = self.position[(g, rho.plus(c, d))]
            self.bundle = FiniteRingoidBundle(category, base, rho_map, zero, fadd, check=False)
        else:
            self.bundle = FiniteBundle(category, base, rho_map, zero, check=False)

    def local_base(self, g):
        """Index of the original base arrow g inside the pullback's base."""
        return self.base_arrows.index(g)


def pullback_bundle(phi, rho):
    return Pullback(phi, rho)


@dataclass(frozen=True, eq=False)
class PierceMorphism:
    """(beta, phi) from ``source`` (rho: C -> G) to ``target`` (rho': C' -> G').

    ``phi`` runs from a subgroupoid of the target's base into the source's
    base; ``beta[(g', c)]`` is the image in C' of the pullback arrow (g', c).
    """

    source: FiniteBundle
    target: FiniteBundle
    phi: EtaleMorphism
    beta: dict

    @property
    def pullback(self):
        cached = self.__dict__.get("_pullback")
        if cached is None:
            cached = Pullback(self.phi, self.source)
            object.__setattr__(self, "_pullback", cached)
        return cached

    def __eq__(self, other):
        if not isinstance(other, PierceMorphism):
            return NotImplemented
        return (self.source is other.source and self.target is other.target
                and self.phi == other.phi and self.beta == other.beta)

    __hash__ = object.__hash__


def identity_pierce(bundle):
    phi = identity_etale(bundle.base)
    beta = {(bundle.rhos[c], c): c for c in range(bundle.total.size)}
    return PierceMorphism(bundle, bundle, phi, beta)


def _pierce_laws(ringoid):
    def pairs_of(p):
        return ((g, c) for g, c in p.pullback.pairs)

    def pair_pairs(p):
        ps = p.pullback.pairs
        return ((x, y) for x in ps for y in ps)

    def defined(p):
        return set(p.beta) == set(p.pullback.pairs)

    def over_identity(p, g, c):
        return p.target.rhos[p.beta[(g, c)]] == g

    def zero(p, g):
        return p.beta[(g, p.source.zeros[p.phi.values[g]])] == p.target.zeros[g]

    def units(p, g, c):
        total = p.source.total
        if c not in total.unit_set or g not in p.phi.source.unit_set:
            return True
        return p.beta[(g, c)] in p.target.total.unit_set

    def products(p, x, y):
        (f, b), (g, c) = x, y
        fg = p.phi.source.comp_rows[f][g]
        if fg == UNDEFINED:
            return True
        bc = p.source.total.comp_rows[b][c]
        return p.target.total.comp_rows[p.beta[x]][p.beta[y]] == p.beta[(fg, bc)]

    def additive(p, x, y):
        (f, b), (g, c) = x, y
        if f != g:
            return True
        return p.beta[(f, p.source.plus(b, c))] == p.target.plus(p.beta[x], p.beta[y])

    laws = [
        Law("beta defined exactly on the pullback", single(), defined),
        Law("beta lies over the base arrow", pairs_of, over_identity),
        Law("beta preserves zeros", lambda p: ((g,) for g in p.phi.domain), zero),
        Law("beta preserves units", pairs_of, units),
        Law("beta preserves products", pair_pairs, products),
    ]
    if ringoid:
        laws.append(Law("beta additive on fibers", pair_pairs, additive))
    return laws


def validate_pierce_morphism(p):
    """Etale laws for phi followed by the bundle-morphism laws for beta."""
    if p.phi.source is not p.target.base or p.phi.target is not p.source.base:
        raise DomainMismatch("phi must run from the target's base to the source's base")
    etale = validate_etale_morphism(p.phi)
    if not etale.passed:
        return etale
    ringoid = p.source.is_ringoid and p.target.is_ringoid
    beta = run_laws("pierce-morphism", _pierce_laws(ringoid), p)
    return type(beta)("pierce-morphism", etale.checks + beta.checks, ())


def compose_pierce(second, first):
    """second . first, with beta' . beta (g'', b) = beta'(g'', beta(phi'(g''), b))."""
    if first.target is not second.source:
        raise DomainMismatch("the first Pierce morphism does not land where the second starts")
    phi = compose_etale(first.phi, second.phi)
    beta = {}
    for g2 in phi.domain:
        g1 = second.phi.values[g2]
        for b in first.source.fibers[phi.values[g2]]:
            beta[(g2, b)] = second.beta[(g2, first.beta[(g1, b)])]
    return PierceMorphism(first.source, second.target, phi, beta)


# ================================================================ functors


def induced_groupoid_map(m):
    """pi-underline: U' -> pi^-1[U']^< wherever the preimage meets S."""
    src, tgt = m.source, m.target
    G, H = ultrafilter_groupoid(src), ultrafilter_groupoid(tgt)
    rel = src.relations
    values = {}
    for j, U in enumerate(H.filters):
        pre = [a for a in src.S if m.values[a] in U]
        if not pre:
            continue
        i = G.index_of(rel.up(pre))
        if i is None:
            raise NotUltrafilter((j,), "preimage closure is not an ultrafilter")
        values[j] = i
    return EtaleMorphism(H.groupoid, G.groupoid, values)


def induced_bundle_morphism(m, phi=None):
    """pi-bar: (U', [a, pi-underline(U')]) -> [pi(a), U']."""
    UB, UB2 = ultrafilter_bundle(m.source), ultrafilter_bundle(m.target)
    if phi is None:
        phi = induced_groupoid_map(m)
    beta = {}
    for j, i in phi.values.items():
        for c in UB.bundle.fibers[i]:
            members = UB.members_of(c)
            images = {UB2.arrow(m.values[a], j) for a in members}
            if len(images) != 1:
                raise IllDefined((members[0], j), "image class depends on the representative")
            beta[(j, c)] = images.pop()
    return beta


def functor_U(m):
    """U(pi) = (pi-bar, pi-underline) between the ultrafilter bundles."""
    phi = induced_groupoid_map(m)
    beta = induced_bundle_morphism(m, phi)
    return PierceMorphism(ultrafilter_bundle(m.source).bundle,
                          ultrafilter_bundle(m.target).bundle, phi, beta)


def pullback_sections(phi, rho, pullback=None):
    """phi^*(a)(g) = (g, a(phi(g))) as a map of section structures."""
    pb = pullback if pullback is not None else Pullback(phi, rho)
    source, target = sections_of(rho), sections_of(pb.bundle)
    values = []
    for section in source.sections:
        image = tuple(pb.position[(g, section.values[phi.values[g]])] for g in pb.base_arrows)
        values.append(target.index_of(image))
    return SteinbergMorphism(source, target, tuple(
        UNDEFINED if v is None else v for v in values))


def pushforward_sections(p):
    """beta_*(a)(g') = beta(a(g')) on the domain of phi, 0 elsewhere."""
    pb = p.pullback
    source, target = sections_of(pb.bundle), sections_of(p.target)
    local = {g: k for k, g in enumerate(pb.base_arrows)}
    values = []
    for section in source.sections:
        image = tuple(
            p.beta[pb.pairs[section.values[local[g]]]] if g in local else p.target.zeros[g]
            for g in range(p.target.base.size)
        )
        values.append(target.index_of(image))
    return SteinbergMorphism(source, target, tuple(
        UNDEFINED if v is None else v for v in values))


def functor_S(p):
    """S(beta, phi) = beta_* o phi^* from sections of rho to sections of rho'."""
    pull = pullback_sections(p.phi, p.source, p.pullback)
    push = pushforward_sections(p)
    return compose_morphisms(push, pull)


# ====================================================== natural isomorphisms


def _bijective(values, domain, codomain_size):
    seen = {}
    for a in domain:
        v = values[a]
        if v in seen:
            raise NotInjective((seen[v], a), law="injectivity")
        seen[v] = a
    missing = next((b for b in range(codomain_size) if b not in seen), None)
    if missing is not None:
        raise NotSurjective((missing,), law="surjectivity")


def eta(ctx, check=True):
    """eta(a) = a-hat, a morphism from ctx onto the sections of its
    ultrafilter bundle; with ``check`` it is verified to be bijective."""
    UB = ultrafilter_bundle(ctx)
    structure = sections_of(UB.bundle)
    values = [UNDEFINED] * ctx.n
    domain = range(ctx.n) if ctx.is_ring else ctx.S
    for a in domain:
        image = tuple(UB.arrow(a, i) for i in range(len(UB.ultrafilters)))
        found = structure.index_of(image)
        values[a] = UNDEFINED if found is None else found
    m = SteinbergMorphism(ctx, structure, tuple(values))
    if check:
        _bijective(m.values, domain, structure.n)
    return m


def epsilon(bundle, check=True):
    """(epsilon^rho, epsilon_rho) from the ultrafilter bundle of the section
    structure back to ``bundle``."""
    structure = sections_of(bundle)
    UB = ultrafilter_bundle(structure)
    groupoid = UB.groupoid
    core_arrows = bundle.core
    values = {}
    for g in range(bundle.base.size):
        members = tuple(
            a for a in structure.S if structure.sections[a].values[g] in core_arrows
        )
        i = groupoid.index_of(members)
        if i is None:
            raise NotUltrafilter((g,), "sections invertible at g do not form an ultrafilter")
        values[g] = i
    phi = EtaleMorphism(bundle.base, UB.bundle.base, values)
    beta = {}
    for g, i in values.items():
        for c in UB.bundle.fibers[i]:
            images = {structure.sections[a].values[g] for a in UB.members_of(c)}
            if len(images) != 1:
                raise IllDefined((c, g), "evaluation depends on the representative")
            beta[(g, c)] = images.pop()
    p = PierceMorphism(UB.bundle, bundle, phi, beta)
    if check:
        _bijective(values, range(bundle.base.size), UB.bundle.base.size)
        _bijective(beta, list(beta), bundle.total.size)
    return p


def epsilon_low_matches_agreement(bundle):
    """First (g, a, b) where a(g) = b(g) disagrees with a ~ b over
    epsilon_rho(g), or None."""
    from .bundles import equivalent

    structure = sections_of(bundle)
    UB = ultrafilter_bundle(structure)
    p = epsilon(bundle, check=False)
    for g, i in p.phi.values.items():
        U = UB.ultrafilters[i]
        for a in structure.S:
            for b in structure.S:
                same = structure.sections[a].values[g] == structure.sections[b].values[g]
                if same != equivalent(structure, a, b, U):
                    return (g, a, b)
    return None


@dataclass(frozen=True)
class NaturalityReport:
    checks: tuple

    @property
    def passed(self):
        return all(ok for _, ok, _ in self.checks)

    def require(self):
        for name, ok, witness in self.checks:
            if not ok:
                raise NaturalitySquareFails(witness, law=name)
        return self


def _eta_naturality(m):
    left_eta, right_eta = eta(m.source), eta(m.target)
    translated = functor_S(functor_U(m))
    witness = None
    for a in m.domain:
        left = right_eta.values[m.values[a]]
        right = translated.values[left_eta.values[a]]
        if left != right:
            witness = (a,)
            break
    return NaturalityReport((("eta square", witness is None, witness),))


def _epsilon_naturality(p):
    eps_source, eps_target = epsilon(p.source), epsilon(p.target)
    translated = functor_S(p)
    lifted = functor_U(translated)

    low_left = compose_etale(eps_source.phi, p.phi).values
    low_right = compose_etale(lifted.phi, eps_target.phi).values
    low_witness = next(
        ((g,) for g in range(p.target.base.size) if low_left.get(g) != low_right.get(g)), None
    )
    checks = [("epsilon square on groupoids", low_witness is None, low_witness)]

    high_left = compose_pierce(p, eps_source).beta
    high_right = compose_pierce(eps_target, lifted).beta
    keys = sorted(set(high_left) | set(high_right))
    high_witness = next((k for k in keys if high_left.get(k) != high_right.get(k)), None)
    checks.append(("epsilon square on bundles", high_witness is None, high_witness))
    return NaturalityReport(tuple(checks))


def check_naturality(morphism):
    """Elementwise comparison of both composites in the naturality square of
    eta (for a SteinbergMorphism) or epsilon (for a PierceMorphism)."""
    if isinstance(morphism, SteinbergMorphism):
        return _eta_naturality(morphism)
    if isinstance(morphism, PierceMorphism):
        return _epsilon_naturality(morphism)
    raise TypeError(f"no naturality square for {type(morphism).__name__}")


# ================================================================ utilities


def groupoid_isomorphism(G, H):
    """An arrow bijection G -> H that is a functor with functorial inverse,
    found by backtracking; None when the groupoids are not isomorphic."""
    if G.size != H.size or len(G.units) != len(H.units):
        return None
    n = G.size
    order = list(G.units) + [g for g in range(n) if g not in G.unit_set]
    assignment = [UNDEFINED] * n
    used = set()

    def consistent(g):
        v = assignment[g]
        if (g in G.unit_set) != (v in H.unit_set):
            return False
        for end_g, end_h in ((G.srcs, H.srcs), (G.rngs, H.rngs)):
            e = end_g[g]
            if assignment[e] != UNDEFINED and assignment[e] != end_h[v]:
                return False
        return True

    def extend(k):
        if k == n:
            return True
        g = order[k]
        for v in range(H.size):
            if v in used:
                continue
            assignment[g] = v
            if consistent(g):
                used.add(v)
                if extend(k + 1):
                    return True
                used.discard(v)
            assignment[g] = UNDEFINED
        return False

    if not extend(0):
        return None
    for g in range(n):
        for h in range(n):
            gh = G.comp_rows[g][h]
            image = H.comp_rows[assignment[g]][assignment[h]]
            if (gh == UNDEFINED) != (image == UNDEFINED):
                return None
            if gh != UNDEFINED and image != assignment[gh]:
                return None
    return tuple(assignment)
