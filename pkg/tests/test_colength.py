import random
import time

import pytest

from fsignature.colength import (BACKENDS, binary_form_shape, colon_colength, grading_weights,
                                 in_frobenius_power_of_max, pair_colength,
                                 pair_colength_with_backend, resolve_backend)
from fsignature.errors import ResourceLimit, UnitElement
from fsignature.poly import Polynomial, RingContext, power

FORCED = ("rank", "groebner")


def staircase_colength(f: Polynomial, a: int, e: int) -> int:
    """Brute force for monomial f^a: count box monomials not divisible by it."""
    g = power(f, a, truncate=f.ring.p**e)
    q = f.ring.p**e
    if g.is_zero():
        return q**f.ring.d
    (lead,) = g.terms
    import itertools
    return sum(1 for m in itertools.product(range(q), repeat=f.ring.d)
               if not all(x >= y for x, y in zip(m, lead)))


def random_poly(rng, ring, terms, max_exp, homogeneous_degree=None):
    out = {}
    for _ in range(terms):
        if homogeneous_degree is None:
            e = tuple(rng.randint(0, max_exp) for _ in range(ring.d))
            if sum(e) == 0:
                continue
        else:
            i = rng.randint(0, homogeneous_degree)
            e = (i, homogeneous_degree - i)
        out[e] = rng.randint(1, ring.p - 1)
    return Polynomial(ring, out)


@pytest.mark.parametrize("backend", FORCED)
def test_examples(backend):
    R2, R3, R5 = (RingContext.make(p) for p in (2, 3, 5))
    assert pair_colength(R5.parse("x*y*(x+y)"), 0, 1, backend=backend) == 0
    assert pair_colength(R2.parse("x*y*(x+y)"), 1, 1, backend=backend) == 4
    assert pair_colength(R3.parse("x*y"), 1, 1, backend=backend) == 5
    assert colon_colength(R3.parse("x*y"), 1, 1, backend=backend) == 4
    assert colon_colength(R3.parse("x*y"), 0, 1, backend=backend) == 9
    assert colon_colength(R5.parse("x*y*(x+y)"), 3, 1, backend=backend) == 0
    assert pair_colength(R5.parse("x^2*y + x*y^2"), 1, 1, backend=backend) == 13


def test_euclid_examples():
    R5 = RingContext.make(5)
    assert pair_colength(R5.parse("x*y*(x+y)"), 1, 1, backend="euclid") == 13
    assert pair_colength(R5.parse("y^2-x^3"), 19, 2, backend="euclid") == 620


def test_monomials_match_staircase():
    rng = random.Random(1)
    for _ in range(40):
        ring = RingContext.make(rng.choice([2, 3, 5]), rng.choice(["x,y", "x,y,z", "x"]))
        e = rng.randint(0, 2 if ring.d < 3 else 1)
        exps = tuple(rng.randint(0, 3) for _ in range(ring.d))
        if sum(exps) == 0:
            continue
        f = ring.monomial(exps)
        a = rng.randint(0, 6)
        want = staircase_colength(f, a, e) if a else 0
        for backend in ("auto", *FORCED):
            assert pair_colength(f, a, e, backend=backend) == want


def test_ses_identity():
    rng = random.Random(3)
    for _ in range(40):
        ring = RingContext.make(rng.choice([2, 3, 5]), rng.choice(["x,y", "x,y,z"]))
        e = rng.randint(1, 2 if ring.d == 2 else 1)
        f = random_poly(rng, ring, rng.randint(1, 4), 3)
        if f.is_zero():
            continue
        a = rng.randint(0, ring.p**e)
        N = ring.p ** (e * ring.d)
        assert pair_colength(f, a, e) + colon_colength(f, a, e) == N


def test_rank_and_groebner_agree_on_100_random_bivariate_instances():
    rng = random.Random(20240)
    start = time.perf_counter()
    done = 0
    while done < 100:
        p = rng.choice([2, 3, 5])
        e = rng.choice([1, 1, 2]) if p < 5 else rng.choice([1, 1, 1, 2])
        ring = RingContext.make(p)
        f = random_poly(rng, ring, rng.randint(1, 4), 3)
        if f.is_zero():
            continue
        q = p**e
        a = rng.randint(1, q)
        r = pair_colength(f, a, e, backend="rank")
        g = pair_colength(f, a, e, backend="groebner")
        assert r == g, (str(f), a, e)
        done += 1
    assert time.perf_counter() - start < 120


def test_euclid_matches_rank_on_binary_forms():
    rng = random.Random(77)
    for _ in range(60):
        p = rng.choice([2, 3, 5, 7])
        e = rng.randint(1, 2 if p <= 5 else 1)
        ring = RingContext.make(p)
        f = random_poly(rng, ring, rng.randint(1, 4), 0, homogeneous_degree=rng.randint(1, 5))
        if f.is_zero():
            continue
        a = rng.randint(1, 2 * p**e)
        assert pair_colength(f, a, e, backend="euclid") == pair_colength(f, a, e, backend="rank")


def test_euclid_matches_rank_on_weighted_forms():
    rng = random.Random(99)
    checked = 0
    while checked < 60:
        p = rng.choice([2, 3, 5, 7])
        e = rng.randint(1, 2 if p <= 5 else 1)
        u, v = rng.randint(1, 3), rng.randint(1, 3)
        r = rng.randint(1, 4)
        ring = RingContext.make(p)
        terms = {(v * i, u * (r - i)): rng.randint(1, p - 1)
                 for i in {rng.randint(0, r) for _ in range(3)}}
        f = Polynomial(ring, terms)
        if binary_form_shape(f) is None:
            continue
        a = rng.randint(1, p**e)
        assert pair_colength(f, a, e, backend="euclid") == pair_colength(f, a, e, backend="rank")
        checked += 1


def test_grading_detection():
    R = RingContext.make(5)
    assert grading_weights(R.parse("y^2-x^3")) == (2, 3)
    assert grading_weights(R.parse("x*y*(x+y)")) == (1, 1)
    assert grading_weights(R.parse("x + y^2 + x*y")) is None
    shape = binary_form_shape(R.parse("y^2-x^3"))
    assert (shape.u, shape.v, shape.r) == (2, 3, 1)
    assert binary_form_shape(R.parse("x^2*y + x*y^3")) is None


def test_backend_resolution():
    R5 = RingContext.make(5)
    R17 = RingContext.make(17)
    assert resolve_backend(R5.parse("y^2-x^3"), 2) == "rank"
    assert resolve_backend(R17.parse("y^2-x^3"), 3) == "euclid"
    assert resolve_backend(R17.parse("y^2-x^3+x*y"), 3) == "groebner"
    assert resolve_backend(R5.parse("y^2-x^3"), 2, rank_cutoff=10) == "euclid"
    with pytest.raises(ValueError):
        resolve_backend(R5.parse("x+y^2+x*y"), 1, "euclid")
    with pytest.raises(ValueError):
        resolve_backend(R5.parse("x"), 1, "magic")
    assert set(BACKENDS) >= {"auto", "rank", "groebner"}


def test_resource_guard_and_units():
    R = RingContext.make(29)
    f = R.parse("x*y")
    with pytest.raises(ResourceLimit):
        pair_colength(f, 1, 3)
    assert pair_colength(f, 1, 3, limit=None) == 29**6 - (29**3 - 1) ** 2
    with pytest.raises(UnitElement):
        pair_colength(R.parse("1 + x"), 1, 1)
    assert pair_colength(R.parse("1 + x"), 0, 1) == 0


def test_frobenius_membership():
    R = RingContext.make(5)
    f = R.parse("x*y*(x+y)")
    assert in_frobenius_power_of_max(f, 3, 1)
    assert not in_frobenius_power_of_max(f, 2, 1)
    value, used = pair_colength_with_backend(f, 3, 1)
    assert value == 25 and used == "rank"
