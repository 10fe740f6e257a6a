"""Tests for the verification suites."""

import numpy as np
import pytest

from app.config import settings
from app.models import VerifyOptions, ZrmParams
from app.services.codes import zrm_log2_size
from app.services.verify import SUITE_ALIASES, SUITES, SuiteReport, resolve_suite, run_suite


def options(**fields) -> VerifyOptions:
    fields.setdefault("seed", 17)
    fields.setdefault("oversample", 16)
    return VerifyOptions(**fields)


class TestSuiteReport:
    """Tests for check bookkeeping."""

    def test_first_failure_keeps_witness(self):
        report = SuiteReport("demo")
        assert report.check(True, value=0)
        assert not report.check(False, value=1)
        report.check(False, value=2)
        assert report.passed is False
        assert report.checks == 3
        assert report.witness == {"value": 1}

    def test_witness_is_json_ready(self):
        report = SuiteReport("demo")
        report.check(False, word=np.array([0, 1]), shift=np.int64(3))
        assert report.to_dict()["witness"] == {"word": [0, 1], "shift": 3}


class TestRegistry:
    """Tests for suite lookup."""

    def test_all_suites_registered(self):
        assert set(SUITES) == {
            "restriction-identity",
            "golay-pairs",
            "complementary-sets",
            "pmepr-certificate",
            "zrm-distance",
            "class-pmepr",
            "counting",
            "davis-jedwab",
            "interleaving",
            "encoder",
        }

    def test_unknown_suite(self):
        with pytest.raises(ValueError):
            run_suite("no-such-suite", options())

    def test_workers_bounded_by_settings(self):
        assert options(workers=settings.MAX_WORKERS).workers == settings.MAX_WORKERS
        with pytest.raises(ValueError):
            options(workers=settings.MAX_WORKERS + 1)

    def test_short_names_resolve(self):
        assert set(SUITE_ALIASES.values()) <= set(SUITES)
        assert resolve_suite("thm3") == "complementary-sets"
        assert resolve_suite("lemma1") == "restriction-identity"
        assert resolve_suite("golay-pairs") == "golay-pairs"
        assert resolve_suite("thm9") is None

    def test_short_name_reports_full_name(self):
        report = run_suite("thm4", options(h=2, p=1, r=2, m=3))
        assert report.passed, report.witness
        assert report.name == "zrm-distance"


class TestCorrelationSuites:
    """Suites built on exact correlation."""

    def test_restriction_identity(self):
        report = run_suite("restriction-identity", options(h=2, m=4, trials=20))
        assert report.passed, report.witness
        assert report.checks == 20

    @pytest.mark.parametrize("m,expected", [(2, 8), (3, 48)])
    def test_golay_pairs(self, m, expected):
        report = run_suite("golay-pairs", options(h=1, m=m))
        assert report.passed, report.witness
        assert report.details["sequences"] == expected

    def test_complementary_sets(self):
        report = run_suite("complementary-sets", options(h=2, k=1, m=5, trials=5))
        assert report.passed, report.witness

    def test_complementary_sets_fixed_split(self):
        report = run_suite("complementary-sets", options(h=2, k=2, m=5, J=(0, 3), trials=3))
        assert report.passed, report.witness

    def test_pmepr_certificate(self):
        report = run_suite("pmepr-certificate", options(h=2, k=1, m=4, trials=3))
        assert report.passed, report.witness
        assert report.details["max_pmepr"] <= 4 + 1e-9

    def test_seeded_runs_repeat(self):
        first = run_suite("complementary-sets", options(h=2, k=1, m=4, trials=4))
        second = run_suite("complementary-sets", options(h=2, k=1, m=4, trials=4))
        assert first.to_dict() == second.to_dict()


class TestCodeSuites:
    """Suites over ZRM and Class I/II/III codes."""

    def test_zrm_distance(self):
        report = run_suite("zrm-distance", options(h=2, p=1, r=2, m=3))
        assert report.passed, report.witness
        assert (report.details["d_hamming"], report.details["d_lee"]) == (2, 4)

    def test_zrm_distance_first_order_binary(self):
        report = run_suite("zrm-distance", options(h=1, r=1, m=3))
        assert report.passed, report.witness
        assert report.details["d_hamming"] == 4

    def test_class_pmepr_davis_jedwab_code(self):
        report = run_suite("class-pmepr", options(h=1, k=0, m=3))
        assert report.passed, report.witness
        assert report.details["words"] == 48
        assert report.details["max_pmepr"] <= 2 + 1e-9

    def test_class_pmepr_restricted(self):
        report = run_suite("class-pmepr", options(h=2, p=1, k=1, r=2, m=4, trials=50, cap_log2=10))
        assert report.passed, report.witness

    def test_counting(self):
        report = run_suite("counting", options(h=2, p=1, k=1, r=2, m=4))
        assert report.passed, report.witness
        assert report.details["l_log2"] == 16
        assert report.details["a_log2"] == 13
        assert report.details["representatives"] == 9
        assert report.details["single_path_representatives"] == 3

    def test_davis_jedwab(self):
        report = run_suite("davis-jedwab", options(h=2, m=3))
        assert report.passed, report.witness
        assert report.details["cosets"] == 3

    def test_interleaving(self):
        report = run_suite("interleaving", options(h=2, k=1, m=4, trials=5))
        assert report.passed, report.witness
        assert report.details["interleaved"] == 2

    def test_encoder(self):
        report = run_suite("encoder", options(h=2, p=0, k=1, r=2, m=4, trials=10))
        assert report.passed, report.witness
        assert report.details["capacity"] == 17

    def test_invalid_construction(self):
        with pytest.raises(ValueError):
            run_suite("encoder", options(h=1, p=1, m=3))


def zrm_cases(max_log2: int = 20) -> list[tuple[int, int, int, int]]:
    """Every (h, p, r, m) with h <= 3, m <= 5 and at most 2^max_log2 codewords."""
    cases = []
    for h in range(1, 4):
        for p in range(h):
            for m in range(1, 6):
                for r in range(p, m + 1):
                    if zrm_log2_size(ZrmParams(h=h, p=p, r=r, m=m)) <= max_log2:
                        cases.append((h, p, r, m))
    return cases


def class_cases() -> list[dict]:
    """Class I/II/III constructions with h <= 2, m <= 5, k <= 2."""
    cases = []
    for h in (1, 2):
        for m in range(2, 6):
            for k in range(min(2, m - 2) + 1):
                for p in range(h):
                    cases.append({"class": "I", "h": h, "p": p, "k": k, "m": m})
                    cases.append({"class": "II", "h": h, "p": p, "k": k, "m": m})
                if h > 1:
                    cases.append({"class": "III", "h": h, "p": 1, "k": k, "m": m})
    return cases


def counting_cases() -> list[tuple[int, int, int, int, int]]:
    """(h, p, k, r, m) with h <= 2 and m <= 4."""
    return [
        (h, p, k, r, m)
        for h in (1, 2)
        for p in range(h)
        for m in range(2, 5)
        for k in range(m - 1)
        for r in range(p, m + 1)
    ]


def case_id(case) -> str:
    if isinstance(case, dict):
        return "-".join(f"{key}{value}" for key, value in case.items())
    if isinstance(case, (tuple, list)):
        return "-".join(map(str, case))
    return str(case)


class TestParameterSweeps:
    """Suites run across whole parameter ranges."""

    @pytest.mark.parametrize("h,p,r,m", zrm_cases(), ids=case_id)
    def test_zrm_distances(self, h, p, r, m):
        report = run_suite("zrm-distance", options(h=h, p=p, r=r, m=m))
        assert report.passed, report.witness
        assert report.details["d_hamming"] == 1 << (m - r)
        assert report.details["d_lee"] == 1 << (m - r + p)

    @pytest.mark.slow
    @pytest.mark.parametrize("h", [1, 2, 3])
    @pytest.mark.parametrize("m", [4, 5, 6])
    @pytest.mark.parametrize("k", [1, 2])
    def test_complementary_sets(self, h, m, k):
        report = run_suite("complementary-sets", options(h=h, m=m, k=k, trials=100))
        assert report.passed, report.witness
        assert report.checks == 200

    @pytest.mark.slow
    @pytest.mark.parametrize("construction", class_cases(), ids=case_id)
    def test_class_pmepr(self, construction):
        report = run_suite(
            "class-pmepr",
            options(**construction, oversample=4, cap_log2=16, trials=64),
        )
        assert report.passed, report.witness
        assert report.details["max_pmepr"] <= (1 << (construction["k"] + 1)) + 1e-9

    @pytest.mark.parametrize("construction", [
        {"class": "I", "h": 2, "p": 0, "k": 1, "r": 2, "m": 4, "rep_index": 3},
        {"class": "II", "h": 2, "p": 0, "k": 1, "r": 2, "m": 4},
        {"class": "III", "h": 2, "p": 1, "k": 1, "m": 4},
    ], ids=case_id)
    def test_encoder_thousand_payloads(self, construction):
        report = run_suite("encoder", options(**construction, trials=1000, oversample=8))
        assert report.passed, report.witness
        assert report.checks == 4000

    @pytest.mark.parametrize("h,p,k,r,m", counting_cases(), ids=case_id)
    def test_counting(self, h, p, k, r, m):
        report = run_suite("counting", options(h=h, p=p, k=k, r=r, m=m))
        assert report.passed, report.witness
        assert report.details["l_log2"] == h * (1 << k) * (m - k + 1)
