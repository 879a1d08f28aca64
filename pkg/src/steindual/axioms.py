"""Profile checkers: exhaustive law evaluation with re-evaluable witnesses.

Every profile is a list of :class:`~steindual.laws.Law` objects over a
StructuredData value (or a bundle).  Semigroup profiles quantify over S and
semimodule/ring profiles over the whole carrier A, so a witness is always a
tuple of carrier indices that can be handed back to :func:`reevaluate`.
"""

from itertools import product

from .core import FiniteBundle, FiniteRingoidBundle, bundle_laws
from .errors import ProfileFailure, ProfileMismatch
from .laws import Law, run_laws
from .structured import StructuredData

PROFILES = (
    "structured-semigroup",
    "well-structured-semigroup",
    "well-structured-semimodule",
    "steinberg-semigroup",
    "steinberg-ring",
    "quasi-cartan-pair",
    "ample-bundle",
    "ample-ringoid-bundle",
)

BUNDLE_PROFILES = ("ample-bundle", "ample-ringoid-bundle")


# ------------------------------------------------------------------ helpers


def _cached(data, key, compute):
    store = data.__dict__.setdefault("_axiom_cache", {})
    if key not in store:
        store[key] = compute()
    return store[key]


def _carrier(data):
    return range(data.n)


def _S(data):
    return data.S


def _ones(domain):
    return lambda data: ((a,) for a in domain(data))


def _pairs(left, right=None):
    right = right or left
    return lambda data: product(left(data), right(data))


def _triples(first, second, third):
    return lambda data: product(first(data), second(data), third(data))


def _Z(data):
    return data.Z


def _D(data):
    return data.D


def _nonzero_carrier(data):
    return [a for a in range(data.n) if a != data.zero]


def down_set(data):
    """S^> = {a in S : a < s for some s in S}."""
    def compute():
        dom = data.relations.dom_rows
        return tuple(a for a in data.S if any(dom[a][s] for s in data.S))

    return _cached(data, "S>", compute)


def orthogonal_pairs(data, domain):
    if data.zero is None:
        return []
    orth = data.relations.orth_rows
    items = list(domain(data))
    return [(a, b) for a in items for b in items if orth[a][b]]


def sum_closure(ring, generators):
    """All finite sums of ``generators`` (with 0), and the number of rounds of
    adding one more generator needed to reach the fixed point."""
    generators = sorted(set(generators))
    reached = {ring.zero}
    frontier = {ring.zero}
    rounds = 0
    while frontier:
        fresh = set()
        for x in frontier:
            for g in generators:
                y = ring.add_rows[x][g]
                if y not in reached:
                    fresh.add(y)
        if fresh:
            rounds += 1
        reached |= fresh
        frontier = fresh
    return frozenset(reached), rounds


def span(ring, scalars, generators):
    """span(B): finite sums of scalar multiples of elements of B."""
    multiples = {scalars.act(r, b) for b in generators for r in range(scalars.ring.size)}
    return sum_closure(ring, multiples)[0]


def normaliser_inverses(data, pool):
    """Elements of ``pool`` that normalise ran(Phi) setwise and have a
    Z-inverse in the carrier (the pair's Z^{N dagger})."""
    rows, D, Z = data.rows, data.D, data.Z_set
    out = []
    for a in pool:
        if {rows[a][d] for d in D} != {rows[d][a] for d in D}:
            continue
        for s in range(data.n):
            as_, sa = rows[a][s], rows[s][a]
            if as_ in Z and sa in Z and rows[as_][a] == a and rows[sa][s] == s:
                out.append(a)
                break
    return tuple(out)


# ------------------------------------------------------------- law builders


def expectation_laws(domain):
    """(Idempotent), (Homogeneous) and (Shiftable) with a over ``domain``."""

    def idempotent(data, a):
        phi = data.phi
        return phi[phi[a]] == phi[a]

    def homogeneous(data, a, b):
        phi, rows = data.phi, data.rows
        left = rows[phi[a]][phi[b]]
        return left == phi[rows[phi[a]][b]] == phi[rows[a][phi[b]]]

    def shiftable(data, a, s):
        phi, rows = data.phi, data.rows
        return rows[phi[rows[s][a]]][s] == rows[s][phi[rows[a][s]]]

    return [
        Law("(Idempotent)", _ones(domain), idempotent),
        Law("(Homogeneous)", _pairs(domain), homogeneous),
        Law("(Shiftable)", _pairs(domain, _S), shiftable),
    ]


def _z_subsemigroup_laws():
    def nonempty(data):
        return bool(data.Z)

    def closed(data, y, z):
        return data.rows[y][z] in data.Z_set

    return [
        Law("Z nonempty", lambda data: [()], nonempty),
        Law("Z subsemigroup", _pairs(_Z), closed),
    ]


def _binormal():
    def cases(data):
        rows, Z = data.rows, data.Z_set
        for s, t in product(data.S, repeat=2):
            if rows[s][t] in Z and rows[t][s] in Z:
                for z in data.Z:
                    yield (s, t, z)

    def holds(data, s, t, z):
        rows = data.rows
        if not (rows[s][t] in data.Z_set and rows[t][s] in data.Z_set):
            return True
        return rows[rows[s][z]][t] in data.Z_set

    return Law("(Binormal)", cases, holds)


def _bistable():
    def holds(data, s, t):
        rows, phi, Z = data.rows, data.phi, data.Z_set
        if rows[s][t] not in Z:
            return True
        return rows[phi[s]][t] in Z and rows[s][phi[t]] in Z

    return Law("(Bistable)", _pairs(_S), holds)


def _z_central_in_range():
    def inside(data, z):
        return z in data.D_set

    def central(data, z, r):
        return data.rows[z][r] == data.rows[r][z]

    return [
        Law("Z within ran(Phi)", _ones(_Z), inside),
        Law("Z central in ran(Phi)", _pairs(_Z, _D), central),
    ]


def structured_semigroup_laws():
    """(S, Z, ran(Phi)) as a structured semigroup."""

    def range_closed(data, r, q):
        return data.rows[r][q] in data.D_set

    def trinormal_cases(data):
        return product(data.S, data.S, data.D)

    def trinormal(data, s, t, n):
        rows, N = data.rows, data.D_set
        if not (rows[rows[t][s]][n] == n and rows[rows[n][t]][s] == n):
            return True
        if not (rows[s][t] in N and rows[t][s] in N):
            return True
        return rows[rows[s][n]][t] in N

    return [
        Law("ran(Phi) subsemigroup", _pairs(_D), range_closed),
        Law("(Trinormal)", trinormal_cases, trinormal),
        *_z_subsemigroup_laws(),
        _binormal(),
        *_z_central_in_range(),
    ]


def well_structured_laws(domain):
    return [
        *expectation_laws(domain),
        *_z_subsemigroup_laws(),
        _binormal(),
        _bistable(),
        *_z_central_in_range(),
    ]


def steinberg_semigroup_laws():
    def has_zero(data):
        return data.zero is not None

    def idempotent_z(data, z):
        return data.rows[z][z] == z

    def dominated(data, a):
        dom = data.relations.dom_rows
        return any(dom[a][s] for s in data.S)

    def orthosuprema(data, a, b):
        return data.relations.supremum(a, b) is not None

    def distributivity_cases(data):
        for y, z in orthogonal_pairs(data, _Z):
            for r in data.D:
                yield (y, z, r)

    def distributivity(data, y, z, r):
        rel, rows = data.relations, data.rows
        join = rel.supremum(y, z)
        if join is None or join not in data.Z_set:
            return False
        return rows[r][join] == rel.supremum(rows[r][y], rows[r][z])

    def complements_cases(data):
        leq = data.relations.leq_rows
        return ((y, z) for y, z in product(data.Z, repeat=2) if leq[y][z])

    def complements(data, y, z):
        rel = data.relations
        if data.zero is None:
            return False
        return rel.complement(y, z) is not None

    return [
        *well_structured_laws(_S),
        Law("has a zero", lambda data: [()], has_zero),
        Law("Z within E(S)", _ones(_Z), idempotent_z),
        Law("S = S^>", _ones(_S), dominated),
        Law("(Orthosuprema)", lambda data: orthogonal_pairs(data, _S), orthosuprema),
        Law("(Distributivity)", distributivity_cases, distributivity),
        Law("(Complements)", complements_cases, complements),
    ]


def _additive():
    def holds(data, a, b):
        ring, phi = data.carrier, data.phi
        return phi[ring.add_rows[a][b]] == ring.add_rows[phi[a]][phi[b]]

    return Law("(Additive)", _pairs(_carrier), holds)


def steinberg_ring_laws():
    def generated(data, a):
        closure = _cached(data, "S-sums", lambda: sum_closure(data.carrier, data.S))[0]
        return a in closure

    def orthodirected(data, s, t):
        dom = data.relations.dom_rows
        return any(dom[s][r] and dom[t][r] for r in data.S)

    def contains_zero(data):
        return data.zero in data.Z_set

    def orthoadditive(data, y, z):
        return data.carrier.add_rows[y][z] in data.Z_set

    def subtractive_cases(data):
        leq = data.relations.leq_rows
        return ((y, z) for y, z in product(data.Z, repeat=2) if leq[z][y])

    def subtractive(data, y, z):
        return data.carrier.minus(y, z) in data.Z_set

    def idempotent_z(data, z):
        return data.rows[z][z] == z

    return [
        Law("S generates A", _ones(_carrier), generated),
        Law("(Orthodirected)", lambda data: orthogonal_pairs(data, _S), orthodirected),
        *expectation_laws(_carrier),
        _additive(),
        Law("Z contains 0", lambda data: [()], contains_zero),
        *_z_subsemigroup_laws(),
        Law("(Orthoadditive)", lambda data: orthogonal_pairs(data, _Z), orthoadditive),
        Law("(Subtractive)", subtractive_cases, subtractive),
        _binormal(),
        _bistable(),
        Law("Z within E(A)", _ones(_Z), idempotent_z),
        *_z_central_in_range(),
    ]


def quasi_cartan_pair_laws():
    def scalars(data):
        return range(data.scalars.ring.size)

    def act(data, r, a):
        return data.scalars.act(r, a)

    def module_left(data, r, a, b):
        add = data.carrier.add_rows
        return act(data, r, add[a][b]) == add[act(data, r, a)][act(data, r, b)]

    def module_right(data, r, q, a):
        R, add = data.scalars.ring, data.carrier.add_rows
        summed = act(data, R.add_rows[r][q], a) == add[act(data, r, a)][act(data, q, a)]
        return summed and act(data, R.rows[r][q], a) == act(data, r, act(data, q, a))

    def unital_action(data, a):
        from .fixtures import ring_one

        one = ring_one(data.scalars.ring)
        return one is not None and act(data, one, a) == a

    def bilinear(data, r, a, b):
        rows = data.rows
        value = act(data, r, rows[a][b])
        return value == rows[act(data, r, a)][b] == rows[a][act(data, r, b)]

    def commutative_scalars(data, r, q):
        R = data.scalars.ring
        return R.rows[r][q] == R.rows[q][r]

    def normalisers(data):
        return _cached(data, "Z^N+", lambda: normaliser_inverses(data, range(data.n)))

    def spanned(data, a):
        closure = _cached(data, "span Z^N+",
                          lambda: span(data.carrier, data.scalars, normalisers(data)))
        return a in closure

    def commutative_z(data, y, z):
        return data.rows[y][z] == data.rows[z][y]

    def idempotent_range(data):
        return [r for r in data.D if data.rows[r][r] == r]

    def torsion_cases(data):
        return product(scalars(data), idempotent_range(data))

    def torsion_free(data, r, e):
        R = data.scalars.ring
        return act(data, r, e) != data.zero or r == R.zero or e == data.zero

    def z_spanned(data, z):
        closure = _cached(data, "span E(Z)",
                          lambda: span(data.carrier, data.scalars, idempotent_range(data)))
        return z in closure

    def span_inside(data, z):
        closure = _cached(data, "span E(Z)",
                          lambda: span(data.carrier, data.scalars, idempotent_range(data)))
        return z not in closure or z in data.D_set

    def marked_units(data):
        return set(data.Z) == set(idempotent_range(data))

    def linear(data, r, a):
        return data.phi[act(data, r, a)] == act(data, r, data.phi[a])

    def quasi_cartan(data, t):
        return data.relations.leq_rows[data.phi[t]][t]

    return [
        Law("R commutative", _pairs(scalars), commutative_scalars),
        Law("scalar action additive in A", _triples(scalars, _carrier, _carrier), module_left),
        Law("scalar action compatible with R", _triples(scalars, scalars, _carrier), module_right),
        Law("scalar action unital", _ones(_carrier), unital_action),
        Law("scalar action bilinear", _triples(scalars, _carrier, _carrier), bilinear),
        Law("A spanned by Z^N+", _ones(_carrier), spanned),
        Law("Z commutative", _pairs(_D), commutative_z),
        Law("(Torsion-Free)", torsion_cases, torsion_free),
        Law("Z spanned by E(Z)", _ones(_D), z_spanned),
        Law("span of E(Z) within Z", _ones(_carrier), span_inside),
        Law("marked units equal E(Z)", lambda data: [()], marked_units),
        *expectation_laws(_carrier)[:2],
        _additive(),
        Law("Phi R-linear", _pairs(scalars, _carrier), linear),
        Law("(Quasi-Cartan) on Z^N+", lambda data: ((t,) for t in normalisers(data)),
            quasi_cartan),
    ]


def expectation_report_laws(data):
    def quasi_cartan(data, t):
        return data.relations.leq_rows[data.phi[t]][t]

    def leech(data, t):
        rel = data.relations
        below = [r for r in data.D if rel.leq_rows[r][t]]
        largest = [m for m in below if all(rel.leq_rows[c][m] for c in below)]
        return bool(largest) and data.phi[t] == largest[0]

    def nondegenerate(data, a):
        rows, phi = data.rows, data.phi
        return any(phi[rows[a][s]] != data.zero for s in data.S)

    def zero_fixed(data):
        return data.zero is None or data.phi[data.zero] == data.zero

    on_down_set = lambda data: ((t,) for t in down_set(data))
    laws = [
        *expectation_laws(_carrier),
        _bistable(),
        Law("(Quasi-Cartan) on S^>", on_down_set, quasi_cartan),
        Law("(Leech) on S^>", on_down_set, leech),
        Law("(Nondegenerate)",
            lambda data: [] if data.zero is None else ((a,) for a in _nonzero_carrier(data)),
            nondegenerate),
        Law("Phi(0) = 0", lambda data: [()], zero_fixed),
    ]
    if data.is_ring:
        laws.append(_additive())
    return laws


# ----------------------------------------------------------------- profiles


def _family_error(profile, data):
    if profile not in PROFILES:
        return ProfileMismatch(f"unknown profile {profile!r}; choose one of {', '.join(PROFILES)}")
    if profile in BUNDLE_PROFILES:
        wanted = FiniteRingoidBundle if profile == "ample-ringoid-bundle" else FiniteBundle
        if not isinstance(data, wanted):
            return ProfileMismatch(f"{profile} needs a {wanted.__name__}")
        return None
    if not isinstance(data, StructuredData):
        return ProfileMismatch(f"{profile} needs structured data, got {type(data).__name__}")
    if profile == "steinberg-ring" and not data.is_ring:
        return ProfileMismatch("steinberg-ring needs a ring carrier (no addition tables)")
    if profile == "quasi-cartan-pair":
        if not data.is_ring:
            return ProfileMismatch("quasi-cartan-pair needs a ring carrier")
        if data.scalars is None:
            return ProfileMismatch("quasi-cartan-pair needs a declared scalar ring")
    return None


def profile_laws(profile, data=None):
    """The ordered law list for ``profile``."""
    if profile == "structured-semigroup":
        return structured_semigroup_laws()
    if profile == "well-structured-semigroup":
        return well_structured_laws(_S)
    if profile == "well-structured-semimodule":
        return well_structured_laws(_carrier)
    if profile == "steinberg-semigroup":
        return steinberg_semigroup_laws()
    if profile == "steinberg-ring":
        return steinberg_ring_laws()
    if profile == "quasi-cartan-pair":
        return quasi_cartan_pair_laws()
    if profile == "ample-bundle":
        return bundle_laws(False)
    if profile == "ample-ringoid-bundle":
        return bundle_laws(True)
    raise ProfileMismatch(f"unknown profile {profile!r}")


def _notes(data, profile):
    notes = []
    if profile == "steinberg-ring":
        rounds = _cached(data, "S-sums", lambda: sum_closure(data.carrier, data.S))[1]
        notes.append(f"sums of elements of S reach all of A after {rounds} rounds of addition")
    if profile == "quasi-cartan-pair":
        normal = _cached(data, "Z^N+", lambda: normaliser_inverses(data, range(data.n)))
        leq = data.relations.leq_rows
        failing = [t for t in data.S if not leq[data.phi[t]][t]]
        notes.append(f"|Z^N+| = {len(normal)}")
        if failing:
            notes.append(f"(Quasi-Cartan) does not extend to S: fails at {failing[0]}")
        else:
            notes.append("(Quasi-Cartan) extends to all of S")
    if profile in ("well-structured-semigroup", "steinberg-semigroup", "structured-semigroup"):
        if isinstance(data, StructuredData) and len(data.S) != data.n:
            notes.append("semigroup laws are quantified over S inside a larger carrier")
    return tuple(notes)


def check_profile(data, profile):
    """Run every law of ``profile`` on ``data`` and return an AxiomReport."""
    error = _family_error(profile, data)
    if error is not None:
        raise error
    laws = profile_laws(profile, data)
    notes = _notes(data, profile) if isinstance(data, StructuredData) else ()
    return run_laws(profile, laws, data, notes)


def check_expectation_laws(data):
    """Expectation-level laws, including (Leech) and (Nondegenerate)."""
    if not isinstance(data, StructuredData):
        raise ProfileMismatch("expectation laws need structured data")
    return run_laws("expectation", expectation_report_laws(data), data)


def find_law(profile, name, data=None):
    if profile == "expectation":
        laws = expectation_report_laws(data)
    else:
        laws = profile_laws(profile, data)
    for law in laws:
        if law.name == name:
            return law
    raise KeyError(name)


def reevaluate(data, profile, name, witness):
    """True when law ``name`` of ``profile`` holds at ``witness``."""
    return find_law(profile, name, data).reevaluate(data, witness)


def require_profile(data, profile):
    """Raise ProfileFailure unless ``data`` passes ``profile``; cached per value."""
    store = data.__dict__.setdefault("_profile_reports", {})
    if profile not in store:
        store[profile] = check_profile(data, profile)
    report = store[profile]
    if not report.passed:
        raise ProfileFailure(report)
    return report
