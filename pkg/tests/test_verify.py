from legtorus.verify import ALL_CHECKS, rng_for, run_suites

SMALL = {"max_m": 2, "max_n": 1, "primes": (2, 3), "samples": 4,
         "pairs_per_config": 1}


def test_all_suites_pass_at_small_scale():
    ok, results = run_suites(SMALL, seed=0)
    assert ok, [r for r in results if not r["ok"]]
    assert {r["name"] for r in results} == {name for name, _ in ALL_CHECKS}


def test_corrupt_sign_is_caught():
    ok, results = run_suites({**SMALL, "samples": 6}, seed=0, corrupt_sign=True)
    assert not ok
    failing = {r["name"] for r in results if not r["ok"]}
    assert "ainfty.relations" in failing and "oracle.mu2" in failing
    detail = next(r["detail"] for r in results if r["name"] == "ainfty.relations")
    assert "relation violated" in detail


def test_zero_samples_vacuous():
    ok, results = run_suites({**SMALL, "samples": 0}, seed=0)
    assert ok and all("vacuous" in r["detail"] for r in results)


def test_rng_for_is_stable():
    a = rng_for(7, "x").random()
    b = rng_for(7, "x").random()
    c = rng_for(7, "y").random()
    assert a == b and a != c
