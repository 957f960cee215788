import json
import math
from fractions import Fraction

import pytest

from homeofind.harness import SweepSpec, gen_random_host, run_sweep
from homeofind.io import load_certificate
from homeofind.seeding import derive_seed
from homeofind.verify import verify_certificate


class TestGenRandomHost:
    def test_p_zero_and_one(self):
        assert gen_random_host(4, 4, 4, 0, seed=1).e == 0
        assert gen_random_host(4, 4, 4, 1, seed=1).e == 64

    def test_seed_determinism(self):
        a = gen_random_host(6, 6, 6, 0.3, seed=42)
        b = gen_random_host(6, 6, 6, 0.3, seed=42)
        c = gen_random_host(6, 6, 6, 0.3, seed=43)
        assert a == b
        assert a != c

    def test_binomial_mean_within_four_sigma(self):
        n, p, seeds = 10, 0.5, 100
        total = sum(gen_random_host(n, n, n, p, seed=s).e for s in range(seeds))
        cells = seeds * n ** 3
        mean = cells * p
        sigma = math.sqrt(cells * p * (1 - p))
        assert abs(total - mean) < 4 * sigma

    def test_rejects_bad_p(self):
        with pytest.raises(ValueError):
            gen_random_host(2, 2, 2, 1.5, seed=0)


class TestDeriveSeed:
    def test_deterministic_and_distinct(self):
        s1 = derive_seed(7, 10, 0)
        assert s1 == derive_seed(7, 10, 0)
        assert s1 != derive_seed(7, 10, 1)
        assert s1 != derive_seed(7, 11, 0)
        assert s1 != derive_seed(8, 10, 0)

    def test_order_sensitive(self):
        assert derive_seed(0, 1, 2) != derive_seed(0, 2, 1)

    def test_fits_in_64_bits(self):
        for parts in [(0,), (1, 2, 3), (2 ** 80, -5)]:
            assert 0 <= derive_seed(9, *parts) < 2 ** 64


class TestSweepSpec:
    def test_from_json(self):
        spec = SweepSpec.from_json(json.dumps({
            "target": "builtin:triangle",
            "n_values": [10, 20],
            "a": "1/2",
            "b": "1/5",
            "trials": 3,
            "seed": 5,
            "cfg": {"C": "2", "k_threshold": 3},
        }))
        assert spec.n_values == (10, 20)
        assert spec.a == Fraction(1, 2)
        assert spec.cfg_overrides["k_threshold"] == 3

    def test_density_rule(self):
        spec = SweepSpec("builtin:triangle", (32,), Fraction(1), Fraction(1, 5), 1, 0)
        assert spec.p_for(32) == pytest.approx(32 ** -0.2)

    def test_density_out_of_range(self):
        spec = SweepSpec("builtin:triangle", (2,), Fraction(3), Fraction(0), 1, 0)
        with pytest.raises(ValueError):
            spec.p_for(2)

    def test_trials_positive(self):
        with pytest.raises(ValueError):
            SweepSpec("builtin:triangle", (4,), Fraction(1), Fraction(0), 0, 0)


class TestRunSweep:
    def _spec(self, a, b="0", trials=3, n=12, seed=11):
        return SweepSpec(
            target="builtin:triangle",
            n_values=(n,),
            a=Fraction(a),
            b=Fraction(b),
            trials=trials,
            seed=seed,
            cfg_overrides={"C": "1", "k_threshold": 3},
        )

    def test_complete_hosts_always_succeed(self, tmp_path):
        rows = run_sweep(self._spec("1"), tmp_path)
        assert rows[0].successes == rows[0].trials
        assert rows[0].failure_stages == {}

    def test_empty_hosts_always_fail(self):
        rows = run_sweep(self._spec("0"))
        assert rows[0].successes == 0
        assert sum(rows[0].failure_stages.values()) == rows[0].trials
        assert "pick_link_vertex" in rows[0].failure_stages

    def test_rows_file_byte_determinism(self, tmp_path):
        d1, d2 = tmp_path / "r1", tmp_path / "r2"
        run_sweep(self._spec("1"), d1)
        run_sweep(self._spec("1"), d2)
        assert (d1 / "rows.tsv").read_bytes() == (d2 / "rows.tsv").read_bytes()
        for f in sorted(d1.glob("*.cert")):
            assert f.read_bytes() == (d2 / f.name).read_bytes()

    def test_certificates_reverify_from_disk(self, tmp_path):
        spec = self._spec("1", trials=2)
        rows = run_sweep(spec, tmp_path)
        n = spec.n_values[0]
        certs = sorted(tmp_path.glob("*.cert"))
        assert len(certs) == rows[0].successes == 2
        for trial, path in enumerate(certs):
            cert = load_certificate(str(path))
            host = gen_random_host(
                n, n, n, spec.p_for(n), derive_seed(spec.seed, n, trial)
            )
            assert verify_certificate(cert, host).passed

    def test_mean_faces_exact(self):
        spec = self._spec("1", trials=2)
        rows = run_sweep(spec)
        assert rows[0].mean_host_faces == Fraction(12 ** 3)
