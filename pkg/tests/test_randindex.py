import csv
import io

import numpy as np
import pytest

import reference_values as ref
from pcmri import (
    acceptance_ratio_for,
    canonical_form,
    classify,
    enumerate_missing_edge_graphs,
    naive_random_index,
    new_incomplete_pcm,
    random_index_exact,
    random_index_montecarlo,
    representing_graph,
    sample_pcm,
)
from pcmri import randindex as ri_mod
from pcmri.randindex import TABLE_COLUMNS, rows_to_csv, threshold_table
from test_catalog import complete_minus


def n4_class(kind):
    return classify(complete_minus(4, ref.TABLE_N4[kind]["missing"]))


@pytest.fixture(scope="module")
def exact_records():
    return {kind: random_index_exact(n4_class(kind)) for kind in ("independent", "shared")}


class TestSamplePcm:
    def test_deterministic_given_seed(self):
        cls = enumerate_missing_edge_graphs(4, 1)[0]
        a = sample_pcm(cls, np.random.Generator(np.random.Philox(key=7)))
        b = sample_pcm(cls, np.random.Generator(np.random.Philox(key=7)))
        assert a == b

    def test_golden_sequence(self):
        # first two draws under Philox key 7, frozen
        cls = enumerate_missing_edge_graphs(4, 1)[0]
        rng = np.random.Generator(np.random.Philox(key=7))
        first = sample_pcm(cls, rng)
        second = sample_pcm(cls, rng)
        known = cls.known_pairs()
        assert [first[i, j] for i, j in known] == [1 / 7, 7.0, 9.0, 0.25, 0.25]
        assert [second[i, j] for i, j in known] == [0.5, 4.0, 1 / 3, 1.0, 0.125]

    def test_graph_matches_class(self):
        rng = np.random.default_rng(3)
        for cls in enumerate_missing_edge_graphs(5, 3):
            for _ in range(5):
                pcm = sample_pcm(cls, rng)
                assert canonical_form(representing_graph(pcm)) == cls.canonical_code

    def test_uniform_value_frequencies(self):
        cls = n4_class("independent")
        rng = np.random.default_rng(12)
        slot = cls.known_pairs()[0]
        hits = 0
        draws = 170_000
        for _ in range(draws):
            if sample_pcm(cls, rng)[slot] == 9.0:
                hits += 1
        assert hits / draws == pytest.approx(1 / 17, abs=0.005)


class TestExactEnumeration:
    def test_independent_class_statistics(self, exact_records):
        rec = exact_records["independent"]
        want = ref.TABLE_N4["independent"]
        assert rec.mode == "EXACT"
        assert rec.sample_count == 17**4
        assert rec.random_index == pytest.approx(want["ri"], abs=1e-3)
        acceptable = round(rec.acceptance_ratio * rec.sample_count)
        assert abs(acceptable - want["acceptable"]) <= 20

    def test_shared_class_statistics(self, exact_records):
        rec = exact_records["shared"]
        want = ref.TABLE_N4["shared"]
        assert rec.random_index == pytest.approx(want["ri"], abs=1e-3)
        acceptable = round(rec.acceptance_ratio * rec.sample_count)
        assert abs(acceptable - want["acceptable"]) <= 20

    def test_pooled_mean_reproduces_graph_free_value(self, exact_records):
        pooled = 0.2 * exact_records["independent"].random_index \
            + 0.8 * exact_records["shared"].random_index
        assert pooled == pytest.approx(ref.NAIVE_N4["ri"], abs=1e-3)

    def test_naive_random_index_helper(self, exact_records):
        assert naive_random_index(4, 2) == pytest.approx(ref.NAIVE_N4["ri"], abs=1e-3)

    def test_cap_on_enumeration_size(self):
        cls = enumerate_missing_edge_graphs(5, 3)[0]  # 17^7 assignments
        with pytest.raises(ValueError, match="budget"):
            random_index_exact(cls)


class TestMonteCarlo:
    def test_bitwise_deterministic(self):
        cls = enumerate_missing_edge_graphs(5, 4)[0]
        a = random_index_montecarlo(cls, samples=8_000, seed=5)
        b = random_index_montecarlo(cls, samples=8_000, seed=5)
        assert a == b

    def test_seed_changes_result(self):
        cls = enumerate_missing_edge_graphs(5, 4)[0]
        a = random_index_montecarlo(cls, samples=8_000, seed=5)
        b = random_index_montecarlo(cls, samples=8_000, seed=6)
        assert a.random_index != b.random_index

    def test_parallel_equals_serial(self, monkeypatch):
        cls = enumerate_missing_edge_graphs(5, 4)[1]
        results = {}
        for threads in ("1", "3"):
            ri_mod._CI_CACHE._data.clear()
            monkeypatch.setenv("PCM_THREADS", threads)
            monkeypatch.setattr(ri_mod, "_block_size", lambda n: 7_000)
            results[threads] = random_index_montecarlo(cls, samples=30_000, seed=5)
        assert results["1"] == results["3"]

    def test_record_invariants(self):
        cls = enumerate_missing_edge_graphs(5, 5)[0]
        rec = random_index_montecarlo(cls, samples=6_000, seed=2)
        assert rec.mode == "MONTE_CARLO"
        assert rec.seed == 2
        assert rec.sample_count == 6_000
        assert rec.random_index > 0
        assert 0.0 <= rec.acceptance_ratio <= 1.0
        assert rec.ci_std > 0
        assert rec.spectral_radius == cls.spectral_radius

    def test_all_ci_nonnegative_and_positive_ri_for_nontrees(self):
        for cls in enumerate_missing_edge_graphs(5, 4):
            ci = ri_mod._ci_for(cls, "MONTE_CARLO", 4_000, 9)
            assert np.all(ci >= 0)
            assert ci.mean() > 0

    def test_rejects_empty_sample(self):
        cls = enumerate_missing_edge_graphs(5, 2)[0]
        with pytest.raises(ValueError):
            random_index_montecarlo(cls, samples=0)


class TestAcceptanceRatio:
    def test_exact_counts_against_own_threshold(self, exact_records):
        rec = exact_records["independent"]
        ratio = acceptance_ratio_for(n4_class("independent"), rec.random_index)
        assert ratio == pytest.approx(ref.TABLE_N4["independent"]["ratio_pct"] / 100, abs=3e-4)

    def test_exact_counts_against_pooled_threshold(self, exact_records):
        pooled = naive_random_index(4, 2)
        total = 17**4
        for kind in ("independent", "shared"):
            count = round(acceptance_ratio_for(n4_class(kind), pooled) * total)
            assert abs(count - ref.NAIVE_N4[kind]["acceptable"]) <= 20

    def test_huge_threshold_accepts_everything(self):
        cls = enumerate_missing_edge_graphs(5, 5)[0]
        assert acceptance_ratio_for(cls, 1e9, samples=3_000, seed=1) == 1.0

    def test_rejects_nonpositive_threshold(self):
        with pytest.raises(ValueError):
            acceptance_ratio_for(n4_class("shared"), 0.0)

    def test_exact_mode_respects_enumeration_cap(self):
        cls = enumerate_missing_edge_graphs(5, 3)[0]  # 17^7 assignments
        with pytest.raises(ValueError, match="budget"):
            acceptance_ratio_for(cls, 0.5)


class TestThresholdTable:
    def test_row_counts_and_layout(self, tmp_path):
        out = tmp_path / "table.csv"
        rows = threshold_table([5], range(1, 6), samples=2_000, seed=4, output_path=out)
        assert len(rows) == 17
        text = out.read_text(encoding="utf-8")
        header, *body = text.strip().split("\n")
        assert header == ",".join(TABLE_COLUMNS)
        assert len(body) == 17
        parsed = list(csv.DictReader(io.StringIO(text)))
        assert [int(r["m"]) for r in parsed] == sorted(int(r["m"]) for r in parsed)
        for row in parsed:
            assert row["mode"] == "MONTE_CARLO"
            assert float(row["random_index"]) > 0

    def test_byte_stable(self, tmp_path):
        a = tmp_path / "a.csv"
        b = tmp_path / "b.csv"
        threshold_table([5], [4], samples=2_000, seed=4, output_path=a)
        threshold_table([5], [4], samples=2_000, seed=4, output_path=b)
        assert a.read_bytes() == b.read_bytes()

    def test_empty_range_gives_header_only(self):
        rows = threshold_table([5], [], samples=100, seed=1)
        assert rows == []
        assert rows_to_csv(TABLE_COLUMNS, rows).strip() == ",".join(TABLE_COLUMNS)

    def test_ri_decreases_with_m(self, tmp_path):
        rows = threshold_table([5], range(1, 6), samples=2_000, seed=4)
        by_m = {}
        for row in rows:
            by_m.setdefault(row["m"], []).append(float(row["random_index"]))
        for m in range(1, 5):
            assert min(by_m[m]) > max(by_m[m + 1])
