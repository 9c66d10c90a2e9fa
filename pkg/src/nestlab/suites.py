"""Property suites behind the proptest harness.

Each suite turns a family of algebraic laws into executable checks over
seeded random samples (see sampling) or exhaustive enumerations.  A suite
reports one outcome per property with the number of cases run and, on
failure, the smallest failing input encountered.

The chain sweep is exhaustive over a pinned annotation alphabet: jumps are
drawn from {1, inf} and limits on either side carry either cardinality mark.
The full space of chains is infinite, so the alphabet is the smallest one
that still exercises every branch of the calculus.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator

from . import sampling
from .chaincalc import (
    ATTAINED,
    COUNTABLE,
    INFINITE,
    LIMIT,
    UNCOUNTABLE,
    AbstractNest,
    AbstractSupportFn,
    ChainNode,
    SupportPair,
    check_essential,
    check_left_continuous,
    check_p_infinity,
    check_p_property,
    check_pair,
    lower_regularization,
    predict_m0,
    predict_m0_pair,
    predict_max_pair,
    predict_me_support,
    validate_chain,
)
from .errors import (
    NonzeroAtZeroError,
    NotEssentialError,
    PairAdmissibilityError,
    PInfinityError,
    PPropertyError,
    UnknownSuiteError,
)
from .nest import validate_nest
from .opspace import (
    RankOne,
    SupportFn,
    decompose,
    essential_support_of,
    generate_bimodule,
    is_bimodule,
    m_of,
    nest_algebra,
    rank_one_in_alg,
    rank_one_in_m,
    span_of_rank_ones,
    support_of,
)
from .ratlin import (
    Matrix,
    annihilator,
    join,
    meet,
    rank,
    span,
)


@dataclass
class PropertyOutcome:
    name: str
    cases: int
    failures: int
    minimal_failure: dict | None

    @property
    def passed(self) -> bool:
        return self.failures == 0


Case = tuple[bool, tuple, dict]


def _run(name: str, cases: Iterable[Case]) -> PropertyOutcome:
    total = 0
    failures = 0
    minimal: tuple | None = None
    minimal_desc: dict | None = None
    for ok, complexity, desc in cases:
        total += 1
        if not ok:
            failures += 1
            if minimal is None or complexity < minimal:
                minimal = complexity
                minimal_desc = desc
    return PropertyOutcome(name, total, failures, minimal_desc)


def _rng(seed: int, tag: str) -> random.Random:
    return random.Random(f"{seed}:{tag}")


def _mat_desc(m: Matrix) -> list[list[str]]:
    return [[str(x) for x in r] for r in m.entries]


def _nest_desc(nest) -> dict:
    return {
        "ambient_dim": nest.ambient_dim,
        "element_dims": [e.dim for e in nest.elements],
        "bases": [_mat_desc(e.basis) for e in nest.elements],
    }


# ---------------------------------------------------------------------------
# lattice suite
# ---------------------------------------------------------------------------

def _random_subspace(rng: random.Random, n: int):
    count = rng.randint(0, n)
    return span(
        [[sampling.random_entry(rng) for _ in range(n)] for _ in range(count)], n
    )


def suite_lattice(seed: int, cases: int) -> list[PropertyOutcome]:
    def samples(tag: str) -> Iterator[tuple]:
        rng = _rng(seed, tag)
        for _ in range(cases):
            n = rng.randint(*sampling.DIM_RANGE)
            yield n, _random_subspace(rng, n), _random_subspace(rng, n), rng

    def modular() -> Iterator[Case]:
        for n, a, b, _ in samples("modular"):
            ok = meet(a, b).dim + join(a, b).dim == a.dim + b.dim
            yield ok, (n, a.dim + b.dim), {"ambient": n, "a": _mat_desc(a.basis), "b": _mat_desc(b.basis)}

    def involution() -> Iterator[Case]:
        for n, a, _, _ in samples("involution"):
            ok = annihilator(annihilator(a)) == a and annihilator(a).dim == n - a.dim
            yield ok, (n, a.dim), {"ambient": n, "a": _mat_desc(a.basis)}

    def order_reversal() -> Iterator[Case]:
        for n, a, b, _ in samples("order"):
            big = join(a, b)
            ok = annihilator(a).contains(annihilator(big)) and annihilator(b).contains(
                annihilator(big)
            )
            yield ok, (n, big.dim), {"ambient": n, "a": _mat_desc(a.basis), "b": _mat_desc(b.basis)}

    def canonical() -> Iterator[Case]:
        for n, a, _, rng in samples("canonical"):
            rows = list(a.basis.entries)
            rng.shuffle(rows)
            if len(rows) >= 2:
                c = rng.randint(1, 2)
                rows[0] = tuple(x + c * y for x, y in zip(rows[0], rows[1]))
            scaled = []
            for r in rows:
                c = rng.choice((1, 2, 3, -1))
                scaled.append(tuple(c * x for x in r))
            ok = span(scaled, n) == a
            yield ok, (n, a.dim), {"ambient": n, "a": _mat_desc(a.basis)}

    return [
        _run("meet/join dimensions are modular", modular()),
        _run("annihilator is an involutive complement", involution()),
        _run("annihilator reverses inclusion", order_reversal()),
        _run("span canonicalizes any spanning set", canonical()),
    ]


# ---------------------------------------------------------------------------
# correspondence suite
# ---------------------------------------------------------------------------

def canonical_triangular_nest():
    """{0} < span(e1) < span(e1,e2) < Q^3, the workhorse fixture."""
    return validate_nest(
        [span([[1, 0, 0]], 3), span([[1, 0, 0], [0, 1, 0]], 3)], 3
    )


def monotone_tables(k: int) -> Iterator[tuple[int, ...]]:
    yield from itertools.combinations_with_replacement(range(k), k)


def zero_fixing_supports(nest) -> Iterator[SupportFn]:
    k = len(nest.elements)
    for tail in itertools.combinations_with_replacement(range(k), k - 1):
        yield SupportFn(nest, (0,) + tail)


def _dim_formula(nest, phi: SupportFn) -> int:
    return sum(
        nest.gap(i) * phi(i).dim for i in range(1, len(nest.elements))
    )


def suite_correspondence(seed: int, cases: int) -> list[PropertyOutcome]:
    nest = canonical_triangular_nest()

    def galois_exhaustive() -> Iterator[Case]:
        for phi in zero_fixing_supports(nest):
            ok = support_of(nest, m_of(nest, phi)) == phi
            yield ok, (phi.values,), {"phi": list(phi.values)}

    def injective_exhaustive() -> Iterator[Case]:
        seen: dict = {}
        for phi in zero_fixing_supports(nest):
            space = m_of(nest, phi)
            key = space.space
            ok = key not in seen
            seen[key] = phi
            yield ok, (phi.values,), {"phi": list(phi.values)}

    def dim_formula_exhaustive() -> Iterator[Case]:
        for phi in zero_fixing_supports(nest):
            ok = m_of(nest, phi).dim == _dim_formula(nest, phi)
            yield ok, (phi.values,), {"phi": list(phi.values)}

    def galois_random() -> Iterator[Case]:
        rng = _rng(seed, "galois")
        for _ in range(cases):
            rnest = sampling.random_nest(rng)
            phi = sampling.random_support(rng, rnest, fix_zero=True)
            ok = support_of(rnest, m_of(rnest, phi)) == phi
            yield ok, (rnest.ambient_dim, len(rnest)), {
                "nest": _nest_desc(rnest), "phi": list(phi.values),
            }

    def dim_formula_random() -> Iterator[Case]:
        rng = _rng(seed, "dimformula")
        for _ in range(cases):
            rnest = sampling.random_nest(rng)
            phi = sampling.random_support(rng, rnest)
            ok = m_of(rnest, phi).dim == _dim_formula(rnest, phi)
            yield ok, (rnest.ambient_dim, len(rnest)), {
                "nest": _nest_desc(rnest), "phi": list(phi.values),
            }

    return [
        _run("support of m_of(phi) returns phi (exhaustive)", galois_exhaustive()),
        _run("m_of is injective on zero-fixing supports (exhaustive)", injective_exhaustive()),
        _run("dimension formula (exhaustive)", dim_formula_exhaustive()),
        _run("support of m_of(phi) returns phi (random)", galois_random()),
        _run("dimension formula (random)", dim_formula_random()),
    ]


# ---------------------------------------------------------------------------
# closedcar suite
# ---------------------------------------------------------------------------

def bimodule_samples(seed: int, cases: int) -> Iterator[tuple]:
    rng = _rng(seed, "closedcar")
    for _ in range(cases):
        nest = sampling.random_nest(rng)
        j = sampling.random_bimodule(rng, nest)
        yield nest, j


def suite_closedcar(seed: int, cases: int) -> list[PropertyOutcome]:
    pairs = list(bimodule_samples(seed, cases))

    def reflexive() -> Iterator[Case]:
        for nest, j in pairs:
            ok = m_of(nest, support_of(nest, j)) == j
            yield ok, (nest.ambient_dim, j.dim), {
                "nest": _nest_desc(nest), "bimodule_dim": j.dim,
                "basis": [_mat_desc(m) for m in j.basis_matrices()],
            }

    def essential_zero() -> Iterator[Case]:
        for nest, j in pairs:
            ess = essential_support_of(nest, j)
            ok = all(v == 0 for v in ess.values)
            yield ok, (nest.ambient_dim, j.dim), {
                "nest": _nest_desc(nest), "essential": list(ess.values),
            }

    return [
        _run("generated bimodules are reflexive", reflexive()),
        _run("essential support collapses to zero", essential_zero()),
    ]


# ---------------------------------------------------------------------------
# decompose suite
# ---------------------------------------------------------------------------

def suite_decompose(seed: int, cases: int) -> list[PropertyOutcome]:
    def sound() -> Iterator[Case]:
        rng = _rng(seed, "decompose")
        for _ in range(cases):
            nest, phi, space = sampling.random_support_with_space(rng)
            t = sampling.random_member(rng, space)
            factors = decompose(nest, phi, t)
            ok = len(factors) == rank(t)
            total = Matrix.zero(nest.ambient_dim, nest.ambient_dim)
            for f in factors:
                member, _ = rank_one_in_m(nest, phi, f)
                ok = ok and member
                total = total + f.matrix()
            ok = ok and total == t
            yield ok, (nest.ambient_dim, rank(t)), {
                "nest": _nest_desc(nest), "phi": list(phi.values), "t": _mat_desc(t),
            }

    return [_run("decomposition is exact, rank-counted, and memberwise", sound())]


# ---------------------------------------------------------------------------
# rank-one suite
# ---------------------------------------------------------------------------

def suite_rankone(seed: int, cases: int) -> list[PropertyOutcome]:
    nest = canonical_triangular_nest()

    def grid() -> Iterator[Case]:
        vals = (-1, 0, 1)
        for f in itertools.product(vals, repeat=3):
            if not any(f):
                continue
            for w in itertools.product(vals, repeat=3):
                if not any(w):
                    continue
                try:
                    # rank_one_in_alg asserts that all membership criteria agree
                    member, witness = rank_one_in_alg(nest, RankOne.of(f, w))
                    ok = (not member) or witness is not None
                except AssertionError:
                    ok = False
                yield ok, (f, w), {"functional": list(f), "vector": list(w)}

    def density() -> Iterator[Case]:
        rng = _rng(seed, "density")
        yield (
            span_of_rank_ones(nest) == nest_algebra(nest),
            (3,),
            {"nest": _nest_desc(nest)},
        )
        for _ in range(cases):
            rnest = sampling.random_nest(rng)
            ok = span_of_rank_ones(rnest) == nest_algebra(rnest)
            yield ok, (rnest.ambient_dim, len(rnest)), {"nest": _nest_desc(rnest)}

    def random_m() -> Iterator[Case]:
        rng = _rng(seed, "rankone-m")
        for _ in range(cases):
            rnest = sampling.random_nest(rng)
            phi = sampling.random_support(rng, rnest)
            n = rnest.ambient_dim
            f = [sampling.random_entry(rng) for _ in range(n)]
            w = [sampling.random_entry(rng) for _ in range(n)]
            if not any(f) or not any(w):
                continue
            try:
                member, witness = rank_one_in_m(rnest, phi, RankOne.of(f, w))
                ok = (not member) or witness is not None
            except AssertionError:
                ok = False
            yield ok, (n,), {
                "nest": _nest_desc(rnest), "phi": list(phi.values),
                "functional": f, "vector": w,
            }

    return [
        _run("rank-one membership criteria agree on the grid", grid()),
        _run("rank-ones span the whole algebra", density()),
        _run("rank-one membership criteria agree in m_of spaces", random_m()),
    ]


# ---------------------------------------------------------------------------
# chaincalc suite
# ---------------------------------------------------------------------------

BELOW_OPTIONS = (
    (ATTAINED, 1, None),
    (ATTAINED, INFINITE, None),
    (LIMIT, None, COUNTABLE),
    (LIMIT, None, UNCOUNTABLE),
)
ABOVE_OPTIONS = (
    (ATTAINED, None),
    (LIMIT, COUNTABLE),
    (LIMIT, UNCOUNTABLE),
)


def sweep_chains(max_nodes: int = 4) -> Iterator[AbstractNest]:
    """Every chain with 2..max_nodes nodes over the pinned alphabet."""
    for k in range(2, max_nodes + 1):
        labels = ["0"] + [f"N{i}" for i in range(1, k - 1)] + ["X"]
        for belows in itertools.product(BELOW_OPTIONS, repeat=k - 1):
            for aboves in itertools.product(ABOVE_OPTIONS, repeat=k - 1):
                nodes = []
                for i in range(k):
                    below = belows[i - 1] if i > 0 else (None, None, None)
                    above = aboves[i] if i < k - 1 else (None, None)
                    nodes.append(ChainNode(
                        labels[i],
                        below=below[0], gap=below[1], cofinality=below[2],
                        above=above[0], coinitiality=above[1],
                    ))
                yield validate_chain(nodes)


def left_limit_tables(chain: AbstractNest, values: tuple[int, ...]) -> Iterator[tuple]:
    choices = []
    for i in range(len(chain)):
        if chain.limit_below(i):
            choices.append(range(values[i - 1], values[i] + 1))
        else:
            choices.append((None,))
    yield from itertools.product(*choices)


def sweep_maps(chain: AbstractNest) -> Iterator[AbstractSupportFn]:
    for values in monotone_tables(len(chain)):
        for lls in left_limit_tables(chain, values):
            yield AbstractSupportFn(chain, values, lls)


def oracle_greatest_lc_minorant(f: AbstractSupportFn) -> tuple[int, ...]:
    """Brute force over every monotone table: the pointwise maximum of all
    left-continuous tables dominated by f.

    A left-continuous candidate has its value at a limit node equal to its
    declared join there, and domination compares declared joins as well, so a
    candidate is admissible iff its values stay below f's values everywhere
    and below f's declared left limit at limit nodes.
    """
    chain = f.chain
    k = len(chain)
    best = None
    for values in monotone_tables(k):
        if any(values[i] > f.value[i] for i in range(k)):
            continue
        if any(
            chain.limit_below(i) and values[i] > f.left_limit[i] for i in range(k)
        ):
            continue
        best = values if best is None else tuple(map(max, best, values))
    assert best is not None  # the constant-zero table always qualifies
    return best


def _chain_desc(f: AbstractSupportFn) -> dict:
    value, left = f.as_tables()
    return {
        "labels": list(f.chain.labels()),
        "below": [
            None if node.below is None else [node.below, "inf" if node.gap == INFINITE else node.gap, node.cofinality]
            for node in f.chain.nodes
        ],
        "value": value,
        "left_limit": left,
    }


def suite_chaincalc(seed: int, cases: int) -> list[PropertyOutcome]:
    sweep = [(chain, f) for chain in sweep_chains() for f in sweep_maps(chain)]
    oracle_cache: dict = {}

    def oracle_for(f: AbstractSupportFn) -> tuple[int, ...]:
        key = (
            tuple(f.chain.limit_below(i) for i in range(len(f.chain))),
            f.value,
            f.left_limit,
        )
        if key not in oracle_cache:
            oracle_cache[key] = oracle_greatest_lc_minorant(f)
        return oracle_cache[key]

    def matches_oracle() -> Iterator[Case]:
        for chain, f in sweep:
            reg = lower_regularization(f)
            ok = reg.value == oracle_for(f)
            yield ok, (len(chain), f.value), _chain_desc(f)

    def idempotent_dominated() -> Iterator[Case]:
        for chain, f in sweep:
            reg = lower_regularization(f)
            ok = (
                lower_regularization(reg) == reg
                and all(r <= v for r, v in zip(reg.value, f.value))
                and check_left_continuous(reg)
            )
            yield ok, (len(chain), f.value), _chain_desc(f)

    def fixes_lc() -> Iterator[Case]:
        for chain, f in sweep:
            ok = (lower_regularization(f) == f) == check_left_continuous(f)
            yield ok, (len(chain), f.value), _chain_desc(f)

    def guards() -> Iterator[Case]:
        for ok, name in _guard_cases():
            yield ok, (name,), {"case": name}

    def predictions_validate() -> Iterator[Case]:
        for chain, f in sweep:
            if not check_p_infinity(chain) or f.value[0] != 0:
                continue
            pair = predict_m0(f)
            ok = (
                check_left_continuous(pair.phi)
                and pair.psi == pair.phi
                and check_pair(pair)
            )
            yield ok, (len(chain), f.value), _chain_desc(f)

    return [
        _run("regularization equals the enumerated greatest minorant", matches_oracle()),
        _run("regularization is idempotent, dominated, left continuous", idempotent_dominated()),
        _run("regularization fixes exactly the left-continuous maps", fixes_lc()),
        _run("prediction guards reject violated hypotheses", guards()),
        _run("predicted pairs pass their own validators", predictions_validate()),
    ]


def _guard_fixtures():
    """Hand-built chains and maps that each violate exactly one hypothesis."""
    uncountable = validate_chain([
        ChainNode("0", above=ATTAINED),
        ChainNode("M", below=LIMIT, cofinality=UNCOUNTABLE, above=ATTAINED),
        ChainNode("X", below=ATTAINED, gap=INFINITE),
    ])
    psi_unc = AbstractSupportFn(uncountable, (0, 1, 2), (None, 1, None))

    finite_gap = validate_chain([
        ChainNode("0", above=ATTAINED),
        ChainNode("A", below=ATTAINED, gap=1, above=LIMIT, coinitiality=COUNTABLE),
        ChainNode("X", below=LIMIT, cofinality=COUNTABLE),
    ])
    # constant at X: essential, left continuous
    psi_fin = AbstractSupportFn(finite_gap, (2, 2, 2), (None, None, 2))

    pcal = validate_chain([
        ChainNode("0", above=LIMIT, coinitiality=COUNTABLE),
        ChainNode("M", below=LIMIT, cofinality=COUNTABLE, above=ATTAINED),
        ChainNode("A", below=ATTAINED, gap=1, above=LIMIT, coinitiality=COUNTABLE),
        ChainNode("X", below=LIMIT, cofinality=COUNTABLE),
    ])
    # both send everything at or above M to A; A sits in the finite stratum
    psi_flat = AbstractSupportFn(pcal, (0, 2, 2, 2), (None, 2, None, 2))
    phi_flat = AbstractSupportFn(pcal, (0, 2, 2, 2), (None, 2, None, 2))
    phi_top = AbstractSupportFn(pcal, (0, 3, 3, 3), (None, 3, None, 3))

    pinf = validate_chain([
        ChainNode("0", above=ATTAINED),
        ChainNode("M", below=ATTAINED, gap=INFINITE, above=ATTAINED),
        ChainNode("X", below=ATTAINED, gap=INFINITE),
    ])
    psi_off_zero = AbstractSupportFn(pinf, (1, 1, 2), (None, None, None))
    return {
        "uncountable": (uncountable, psi_unc),
        "finite_gap": (finite_gap, psi_fin),
        "flat_pair": SupportPair(phi_flat, psi_flat),
        "good_pair": SupportPair(phi_top, psi_flat),
        "pinf_offzero": (pinf, psi_off_zero),
    }


def _guard_cases() -> list[tuple[bool, str]]:
    fx = _guard_fixtures()
    out: list[tuple[bool, str]] = []

    def expect(name: str, exc, thunk: Callable) -> None:
        try:
            thunk()
        except exc:
            out.append((True, name))
        except Exception:
            out.append((False, name))
        else:
            out.append((False, name))

    def expect_ok(name: str, thunk: Callable) -> None:
        try:
            thunk()
        except Exception:
            out.append((False, name))
        else:
            out.append((True, name))

    _, psi_unc = fx["uncountable"]
    expect("me rejects uncountable marks", PPropertyError,
           lambda: predict_me_support(psi_unc))

    chain_fin, psi_fin = fx["finite_gap"]
    nonessential = AbstractSupportFn(chain_fin, (0, 1, 1), (None, None, 1))
    expect("me rejects non-essential maps", NotEssentialError,
           lambda: predict_me_support(nonessential))
    expect_ok("me accepts an essential map on a countable chain",
              lambda: predict_me_support(psi_fin))

    expect("max-pair rejects non-strict pairs", PairAdmissibilityError,
           lambda: predict_max_pair(fx["flat_pair"]))
    expect_ok("max-pair accepts an admissible pair",
              lambda: predict_max_pair(fx["good_pair"]))

    expect("m0 rejects attained finite jumps", PInfinityError,
           lambda: predict_m0(psi_fin))
    chain_pinf, psi_off_zero = fx["pinf_offzero"]
    expect("m0 rejects maps that move node 0", NonzeroAtZeroError,
           lambda: predict_m0(psi_off_zero))
    good = AbstractSupportFn(chain_pinf, (0, 1, 2), (None, None, None))
    expect_ok("m0 accepts a zero-fixing map on an all-infinite chain",
              lambda: predict_m0(good))

    expect("m0-pair rejects attained finite jumps", PInfinityError,
           lambda: predict_m0_pair(fx["good_pair"]))
    pinf_pair = SupportPair(
        AbstractSupportFn(chain_pinf, (0, 2, 2), (None, None, None)),
        AbstractSupportFn(chain_pinf, (0, 1, 1), (None, None, None)),
    )
    expect_ok("m0-pair accepts a pair on an all-infinite chain",
              lambda: predict_m0_pair(pinf_pair))
    return out


# ---------------------------------------------------------------------------
# registry
# ---------------------------------------------------------------------------

SUITES: dict[str, Callable[[int, int], list[PropertyOutcome]]] = {
    "lattice": suite_lattice,
    "correspondence": suite_correspondence,
    "closedcar": suite_closedcar,
    "decompose": suite_decompose,
    "rankone": suite_rankone,
    "chaincalc": suite_chaincalc,
}


def run_suite(suite: str, seed: int, cases: int) -> list[PropertyOutcome]:
    if suite == "all":
        out: list[PropertyOutcome] = []
        for name in SUITES:
            out.extend(SUITES[name](seed, cases))
        return out
    if suite not in SUITES:
        raise UnknownSuiteError(
            f"unknown suite {suite!r}; pick one of {', '.join([*SUITES, 'all'])}"
        )
    return SUITES[suite](seed, cases)
