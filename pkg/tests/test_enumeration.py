"""Counting and family enumeration against the published tables."""

import pytest

import app.config.common as config
from app.core.exceptions import (
    CountOverflowException,
    DataException,
    FamilyLengthException,
    MissingCountException,
    ParseException,
)
from app.core.words import is_palindrome, is_square_free, reverse
from app.services.enumeration import (
    SMALL_WORDS,
    Family,
    FamilyStats,
    check_subadditivity,
    count_profile,
    count_records,
    count_square_free,
    count_with_prefix,
    enumerate_family,
    family_profile,
    family_stats,
    format_counts,
    parse_counts,
)
from helpers.oracles import square_free_words

# a(0..12)
SMALL_COUNTS = [1, 3, 6, 12, 18, 30, 42, 60, 78, 108, 144, 204, 264]


class TestCounts:
    def test_small_counts(self):
        assert count_profile(12) == SMALL_COUNTS

    def test_small_words_listed_in_order(self):
        for n, ws in SMALL_WORDS.items():
            assert list(ws) == square_free_words(n)

    @pytest.mark.parametrize("n, expected", [(0, 1), (1, 3), (2, 6), (3, 12), (13, 342), (17, 1044)])
    def test_count_square_free(self, n, expected):
        assert count_square_free(n) == expected

    def test_counts_match_published_tables(self, count_table, reference):
        for row in reference.tables["A1"]:
            assert count_table[row["n"]] == row["a"], row["n"]
        assert count_table[29] == 26424
        assert count_table[45] == 1812876

    def test_counts_independent_of_workers_and_depth(self):
        assert count_profile(22, workers=1, prefix_depth=4) == count_profile(22, workers=2, prefix_depth=9)

    def test_prefix_uniformity(self, count_table):
        for n in range(2, 21):
            for a in "012":
                for b in "012":
                    if a != b:
                        assert 6 * count_with_prefix(a + b, n) == count_table[n], (a + b, n)

    def test_count_with_longer_prefix(self):
        assert count_with_prefix("0120", 3) == 0
        assert count_with_prefix("00", 5) == 0

    def test_subadditivity(self, count_table):
        for m in range(2, 21):
            for n in range(2, 21):
                assert check_subadditivity(m, n, count_table), (m, n)

    def test_growth_at_most_doubles(self, count_table):
        for n in range(1, 31):
            assert count_table[n + 1] <= 2 * count_table[n], n

    def test_subadditivity_needs_counts(self, count_table):
        with pytest.raises(MissingCountException):
            check_subadditivity(30, 30, count_table)

    def test_negative_length_rejected(self):
        with pytest.raises(DataException):
            count_profile(-1)

    def test_overflow(self, monkeypatch):
        monkeypatch.setattr(config, "MAX_COUNT", 100)
        with pytest.raises(CountOverflowException):
            count_profile(10)

    def test_count_records(self):
        assert count_records([1, 3, 6, 12], from_n=2) == [{"n": 2, "a": 6}, {"n": 3, "a": 12}]


class TestCountCache:
    def test_cached_profile_is_reused(self, disk_cache):
        first = count_profile(18, cache=disk_cache)
        assert disk_cache.get("counts", "a", 18) == format_counts(dict(enumerate(first)))
        assert count_profile(18, cache=disk_cache) == first

    def test_unreadable_entry_is_recomputed(self, disk_cache):
        disk_cache.set("counts", "not a count table\n", "a", 8)
        assert count_profile(8, cache=disk_cache) == SMALL_COUNTS[:9]
        assert parse_counts(disk_cache.get("counts", "a", 8))[8] == 78

    def test_parse_counts_rejects_bad_lines(self):
        with pytest.raises(ParseException):
            parse_counts("0 1\n1\n")

    def test_parse_counts_skips_comments(self):
        assert parse_counts("# a(n)\n0 1\n\n1 3\n") == {0: 1, 1: 3}


class TestFamilies:
    @pytest.mark.parametrize(
        "text, family",
        [("A1", Family.A1), ("a2", Family.A2), ("trip1", Family.A1), ("TRIP2", Family.A2), ("all", Family.ALL)],
    )
    def test_parse(self, text, family):
        assert Family.parse(text) is family

    def test_parse_rejects_unknown(self):
        with pytest.raises(ParseException):
            Family.parse("A3")

    def test_heads_and_tails(self):
        assert (Family.A1.head, Family.A1.tail) == ("012021", "120210")
        assert (Family.A2.head, Family.A2.tail) == ("012102", "201210")
        assert Family.ALL.contains("0")

    def test_short_lengths_rejected(self):
        with pytest.raises(FamilyLengthException):
            family_profile(12, 14, Family.A1)
        with pytest.raises(FamilyLengthException):
            enumerate_family(12, Family.A2)

    def test_family_words_have_the_form(self):
        for family in (Family.A1, Family.A2):
            for n, ws in family_profile(13, 30, family).items():
                assert ws == sorted(ws)
                for w in ws:
                    assert len(w) == n
                    assert family.contains(w)
                    assert is_square_free(w)

    @pytest.mark.parametrize("family", [Family.A1, Family.A2])
    def test_closed_under_reversal(self, family):
        for n, ws in family_profile(13, 30, family).items():
            assert {reverse(w) for w in ws} == set(ws), n

    @pytest.mark.parametrize("family", [Family.A1, Family.A2])
    def test_suffix_lookahead_keeps_every_word(self, family):
        everything = family_profile(13, 26, Family.ALL)
        for n, ws in family_profile(13, 26, family).items():
            assert ws == [w for w in everything[n] if family.contains(w)], n

    def test_profile_window_inside_long_lengths(self):
        profile = family_profile(20, 21, Family.A1)
        assert set(profile) == {20, 21}
        assert profile[21] == enumerate_family(21, Family.A1)

    def test_family_profile_matches_single_lengths(self):
        profile = family_profile(13, 24, Family.A2)
        for n in (13, 18, 24):
            assert enumerate_family(n, Family.A2) == profile[n]

    def test_g13_word_is_the_only_a2_word_of_length_13(self):
        assert enumerate_family(13, Family.A2) == ["0121021201210"]

    @pytest.mark.parametrize("family", [Family.A1, Family.A2])
    def test_stats_match_published_tables(self, family, reference):
        profile = family_profile(13, 45, family)
        for row in reference.tables[family.value]:
            stats = FamilyStats.from_words(row["n"], family, profile[row["n"]])
            assert (stats.total, stats.palindromes, stats.pairs) == (
                row["a_f"],
                row["a_fp"],
                row["a_fn"],
            ), row["n"]

    def test_stats_record(self):
        stats = family_stats(25, Family.A1)
        assert stats.to_record() == {"n": 25, "family": "A1", "total": 13, "palindromes": 3, "pairs": 5}

    def test_palindromes_only_at_odd_lengths(self):
        for n, ws in family_profile(13, 30, Family.A1).items():
            if n % 2 == 0:
                assert not any(is_palindrome(w) for w in ws)

    def test_inconsistent_stats_rejected(self):
        with pytest.raises(DataException):
            FamilyStats(13, Family.A1, 3, 0, 1)
        with pytest.raises(DataException):
            FamilyStats(14, Family.A1, 2, 2, 0)

    def test_word_list_cache_hit(self, disk_cache):
        words = enumerate_family(20, Family.A1, cache=disk_cache)
        assert disk_cache.get("words", "A1", 20) == "".join(f"{w}\n" for w in words)
        assert enumerate_family(20, Family.A1, cache=disk_cache) == words
