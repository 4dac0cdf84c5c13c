from fractions import Fraction

import pytest

import powerword as pw


def test_critical_exponent_and_runs():
    assert pw.critical_exponent("01010") == Fraction(5, 2)
    assert pw.critical_exponent("0110100110010110") == 2
    assert pw.critical_exponent([0, 0, 0]) == 3
    assert pw.brute_force_critical_exponent("0100101") == pw.critical_exponent("0100101")
    runs = pw.maximal_repetitions("00100")
    assert [(r["start"], r["length"], r["period"]) for r in runs] == [(0, 2, 1), (3, 2, 1)]
    assert pw.smallest_period("0110") == 3


def test_defects():
    assert pw.defect_to_periodic("0111", 2) == 1
    assert pw.approximate_power_defect("0110", Fraction(2)) == (2, 1)
    assert pw.approximate_power_defect("011", "4/1") is None
    assert pw.check_period_difference("010010", 5, 3)
    with pytest.raises(pw.PreconditionError):
        pw.check_period_difference("0110", 3, 1)


def test_pattern():
    rs = pw.enumerate_exponents(Fraction(3, 2), 3)
    assert rs == [Fraction(4, 3), Fraction(11, 8), Fraction(17, 12)]
    intervals = pw.layout_intervals(rs, 10)
    assert [iv["start"] for iv in intervals] == [40, 344, 1195]
    single = [{"start": 50, "length": 5, "period": 4}]
    assert pw.free_bit_count(single, 50, 60) == 9
    assert pw.min_free_density(single, 100, 5) == Fraction(4, 5)


def test_threshold():
    assert pw.threshold_n(Fraction(1, 2), Fraction(3, 4)) == 21
    assert pw.threshold_holds("1/2", "3/4", 21)
    assert not pw.threshold_holds("1/2", "3/4", 20)


def test_codecs():
    bits = pw.encode_power("010101", 2)
    assert len(bits) == 10
    assert str(pw.decode_power(bits, 2)) == "010101"
    approx = pw.encode_approx_power("0111", 2)
    assert len(approx) == 15
    assert str(pw.decode_approx_power(approx, 2)) == "0111"
    assert pw.binary_entropy(0.5) == pytest.approx(1.0)
    assert pw.lz_phrase_count("0") == 1


def test_synthesize_and_verify():
    out = pw.synthesize(alpha=Fraction(3, 2), beta=3, n=512, k=2, seed=4)
    assert out["clean"]
    assert out["report"].startswith("powerword-report v1\n")
    assert out["forbidden_runs"] == 0
    assert len(out["word"]) == 512
    again = pw.verify(out["word"], alpha=Fraction(3, 2), beta=3, n=512, k=2, seed=4)
    assert again == out["report"]
    assert pw.synthesize(alpha="3/2", beta=3, n=512, k=2, seed=4)["report"] == out["report"]


def test_resampling_failure():
    with pytest.raises(pw.ResampleExhausted):
        pw.synthesize(alpha="3/2", beta=3, n=300, p_min=1, max_rounds=3)
