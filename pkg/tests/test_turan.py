from fractions import Fraction

import pytest

from spextral import families as fam
from spextral.containment import ForestPattern, is_free, parse_pattern, star_path
from spextral.errors import UnsupportedPattern
from spextral.turan import (
    MAX_THRESHOLD_BITS,
    classify,
    predicted_spectral_extremal,
    spectral_transfer_threshold,
    star_path_spectral_threshold,
    star_path_threshold,
    turan_connected_path_bound,
    turan_for_pattern,
    turan_star_bound,
    turan_star_forest,
    turan_star_path,
    upbound_star_path,
)


class TestStarForest:
    @pytest.mark.parametrize("n, value", [(7, 21), (8, 21), (9, 22), (10, 24)])
    def test_two_claws(self, n, value):
        assert turan_star_forest(n, 2, 3).value == value

    def test_cases(self):
        assert turan_star_forest(7, 2, 3).case == "n<k(l+1)"
        assert turan_star_forest(8, 2, 3).case == "k(l+1)<=n<=(k+1)l+k-1"
        assert turan_star_forest(12, 2, 3).case == "(k+1)l+k<=n<(kl^2+2kl+2k-2)/2"
        assert turan_star_forest(100, 2, 3).case == "n>=(kl^2+2kl+2k-2)/2"

    def test_monotone_in_n(self):
        for k in range(2, 5):
            for l in range(3, 7):
                vals = [turan_star_forest(n, k, l).value for n in range(1, 301)]
                assert all(a <= b for a, b in zip(vals, vals[1:])), (k, l)

    def test_bad_arguments(self):
        with pytest.raises(ValueError):
            turan_star_forest(10, 1, 3)
        with pytest.raises(ValueError):
            turan_star_forest(10, 2, 2)


class TestStarPath:
    def test_threshold(self):
        assert star_path_threshold(1, 4) == 26
        assert star_path_threshold(2, 5) == 2 * 21 + 19

    def test_value_matches_construction(self):
        for k in range(1, 5):
            for l in range(4, 9):
                for n in range(k, 201):
                    value, pred = turan_star_path(n, k, l)
                    for f in pred.families:
                        assert f.build().num_edges == value.value, (n, k, l, f)
                    assert value.value <= upbound_star_path(n, k, l)

    def test_two_families_only_for_even_l(self):
        _, pred = turan_star_path(28, 1, 4)
        assert [type(f).__name__ for f in pred.families] == ["CliqueJoinCliques"]
        _, pred = turan_star_path(29, 1, 4)  # r = 1 = (l-2)/2
        assert [type(f).__name__ for f in pred.families] == ["CliqueJoinCliques", "Split"]
        _, pred = turan_star_path(31, 1, 5)
        assert len(pred.families) == 1

    def test_guaranteed_flag(self):
        assert not turan_star_path(25, 1, 4)[0].guaranteed
        assert turan_star_path(26, 1, 4)[0].guaranteed

    def test_upbound_is_exact_fraction(self):
        assert upbound_star_path(11, 1, 5) == Fraction(25)
        assert upbound_star_path(10, 0, 4) == Fraction(27, 2)


class TestOtherBounds:
    def test_connected_path_bound(self):
        assert turan_connected_path_bound(10, 4) == 10
        assert turan_connected_path_bound(20, 6) == max(10 + 15, 6 + 2 * 16)

    def test_star_bound(self):
        assert turan_star_bound(5, 3) == 5
        assert turan_star_bound(7, 4) == 10
        with pytest.raises(ValueError):
            turan_star_bound(3, 3)

    def test_transfer_threshold(self):
        assert spectral_transfer_threshold(2, 3) == 256
        assert spectral_transfer_threshold(1, 20) == 400
        with pytest.raises(OverflowError):
            spectral_transfer_threshold(MAX_THRESHOLD_BITS, 1)

    def test_star_path_spectral_threshold(self):
        assert star_path_spectral_threshold(1, 4) == 8 * 27 * 26**8


class TestShapes:
    @pytest.mark.parametrize(
        "text, kind",
        [
            ("1S3+1P4", "star_path"),
            ("2S4+1P5", "star_path"),
            ("2S3+2P4", "double_star_path"),
            ("1S4+2P5", "s4_2p5"),
            ("3P2", "matching"),
            ("2P3", "kP3"),
        ],
    )
    def test_classify(self, text, kind):
        assert [s for s, _ in classify(parse_pattern(text))] == [kind]

    def test_unsupported(self):
        with pytest.raises(UnsupportedPattern):
            predicted_spectral_extremal(parse_pattern("1S5"), 10)
        with pytest.raises(UnsupportedPattern):
            turan_for_pattern(parse_pattern("2P5"), 10)

    def test_star_path_prediction(self):
        p = predicted_spectral_extremal(star_path(1, 4), 40)
        assert p.families == (fam.Split(40, 2),)
        assert not p.guaranteed
        p = predicted_spectral_extremal(star_path(1, 5), 40)
        assert p.families == (fam.SplitPlus(40, 2),)

    def test_kp3_prediction(self):
        p = predicted_spectral_extremal(parse_pattern("2P3"), 26)
        assert p.families == (fam.LinearForestExtremal(26, 2),)
        assert p.guaranteed and p.threshold == 26

    def test_matching_readings_disagree(self):
        printed = predicted_spectral_extremal(parse_pattern("3P2"), 12)
        matching = predicted_spectral_extremal(parse_pattern("3P2"), 12, matching_reading="matching")
        assert printed.families == (fam.Split(12, 3),)
        assert matching.families == (fam.Split(12, 2),)
        # as printed, the predicted graph contains the very pattern it should avoid
        assert not is_free(printed.families[0].build(), parse_pattern("3P2"))
        assert is_free(matching.families[0].build(), parse_pattern("3P2"))
        assert "inconsistent" in printed.note

    def test_matching_small_n(self):
        p = predicted_spectral_extremal(parse_pattern("3P2"), 7, matching_reading="matching")
        assert p.families == (fam.CliqueUnionIsolated(7, 5),)
        p = predicted_spectral_extremal(parse_pattern("3P2"), 8, matching_reading="matching")
        assert len(p.families) == 2

    def test_dispatch(self):
        v, pred = turan_for_pattern(parse_pattern("2S3"), 9)
        assert v.value == 22 and pred is None
        v, pred = turan_for_pattern(parse_pattern("1S3+1P4"), 28)
        assert v.value == 54 and pred is not None
        v, _ = turan_for_pattern(ForestPattern(stars=(3,)), 6)
        assert v.value == 6
