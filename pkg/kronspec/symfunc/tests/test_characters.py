"""Tests for Murnaghan-Nakayama characters and dimensions."""

import itertools
import threading
from collections import Counter
from math import factorial

import pytest

from kronspec.partitions.src.young import enumerate_partitions
from kronspec.shared.errors import InputError
from kronspec.shared.models import Partition
from kronspec.symfunc.src.characters import (
    CHARACTER_CACHE,
    CharacterCache,
    character,
    character_table,
    character_values,
    class_size,
    cycle_types,
    dim_gl,
    dim_sk,
)
from kronspec.symfunc.src.oracle import power_sum_oracle

P = Partition.of


def permutation_cycle_type(perm: tuple[int, ...]) -> tuple[int, ...]:
    """Cycle lengths of a permutation in one-line notation."""
    seen, lengths = set(), []
    for start in range(len(perm)):
        if start in seen:
            continue
        length, i = 0, start
        while i not in seen:
            seen.add(i)
            i = perm[i]
            length += 1
        lengths.append(length)
    return tuple(sorted(lengths, reverse=True))


class TestCharacterExamples:
    """Spot values of chi_lambda."""

    def test_identity_is_dimension(self):
        assert character(P(2, 1), P(1, 1, 1)) == 2

    def test_trivial_representation(self):
        for c in enumerate_partitions(5, 5):
            assert character(P(5), c) == 1

    def test_three_cycle(self):
        assert character(P(2, 1), P(3)) == -1

    def test_sign_representation(self):
        assert character(P(1, 1, 1), P(2, 1)) == -1
        assert character(P(1, 1, 1), P(3)) == 1

    def test_accepts_text(self):
        assert character("2,1", "3") == -1

    def test_size_mismatch(self):
        with pytest.raises(InputError):
            character(P(2, 1), P(2))

    def test_empty_class(self):
        assert character(Partition(), Partition()) == 1


class TestOracle:
    """MN characters agree with the power-sum expansion."""

    @pytest.mark.parametrize("k", range(1, 6))
    def test_agrees_with_power_sum_expansion(self, k):
        for c in enumerate_partitions(k, k):
            expected = power_sum_oracle(c)
            for lam, value in expected.items():
                assert character(lam, c) == value, (lam, c)


class TestOrthogonality:
    """Column orthogonality of the character table."""

    @pytest.mark.parametrize("k", range(1, 8))
    def test_first_orthogonality(self, k):
        classes = cycle_types(k)
        parts = enumerate_partitions(k, k)
        for mu, nu in itertools.combinations_with_replacement(parts, 2):
            total = sum(c.class_size * character(mu, c) * character(nu, c) for c in classes)
            assert total == (factorial(k) if mu == nu else 0)

    def test_character_table_shape(self):
        table = character_table(4)
        assert len(table) == 5
        assert all(len(row) == 5 for row in table.values())

    def test_character_values_row(self):
        row = character_values("2,1")
        assert [v.cycle_type.cycles for v in row] == [c.cycles for c in cycle_types(3)]
        assert [v.value for v in row] == [character(P(2, 1), c) for c in cycle_types(3)]
        assert all(v.lam == P(2, 1) for v in row)
        assert row[0].model_dump(by_alias=True)["lambda"] == {"rows": (2, 1)}

    def test_character_values_match_table(self):
        table = character_table(5)
        for lam, entries in table.items():
            assert {v.cycle_type.cycles: v.value for v in character_values(lam)} == entries


class TestClassSizes:
    """Class sizes against brute-force permutation counting."""

    @pytest.mark.parametrize("k", range(1, 7))
    def test_brute_force(self, k):
        counts = Counter(permutation_cycle_type(p) for p in itertools.permutations(range(k)))
        for ct in cycle_types(k):
            assert ct.class_size == counts[ct.cycles.rows]
            assert class_size(ct.cycles) == ct.class_size

    def test_sizes_sum_to_factorial(self):
        assert sum(c.class_size for c in cycle_types(7)) == factorial(7)


class TestDimensions:
    """Hook-length and GL(d) dimensions."""

    def test_dim_sk_examples(self):
        assert dim_sk(P(2, 2)) == 2
        assert dim_sk(P(6)) == 1
        assert dim_sk(P(1, 1, 1)) == 1

    @pytest.mark.parametrize("k", range(1, 9))
    def test_dim_is_identity_character(self, k):
        identity = Partition(rows=(1,) * k)
        for lam in enumerate_partitions(k, k):
            assert dim_sk(lam) == character(lam, identity)

    def test_dim_gl_examples(self):
        assert dim_gl(P(1), 2) == 2
        assert dim_gl(P(1, 1, 1), 2) == 0
        assert dim_gl(P(2), 2) == 3

    def test_dim_gl_symmetric_power(self):
        # Sym^k(C^d) has binomial(k+d-1, d-1) dimensions
        assert dim_gl(P(4), 3) == 15

    @pytest.mark.parametrize("k", range(1, 7))
    def test_schur_weyl_dimension_count(self, k):
        d = 3
        total = sum(dim_gl(lam, d) * dim_sk(lam) for lam in enumerate_partitions(k, d))
        assert total == d ** k


class TestCharacterCache:
    """Behaviour of the shared memo."""

    def test_private_cache_is_filled(self):
        cache = CharacterCache()
        character(P(3, 2), P(2, 2, 1), cache=cache)
        assert ((3, 2), (2, 2, 1)) in cache
        assert len(cache) > 1

    def test_load_does_not_overwrite(self):
        cache = CharacterCache({((1,), (1,)): 1})
        cache.load([(((1,), (1,)), 5)])
        assert cache.get(((1,), (1,))) == 1

    def test_concurrent_readers_agree(self):
        cache = CharacterCache()
        results: list[int] = []

        def work():
            results.append(character(P(4, 3, 1), P(3, 3, 2), cache=cache))

        threads = [threading.Thread(target=work) for _ in range(8)]
        for t in threads:
            t.start()
        for t in threads:
            t.join()
        assert len(set(results)) == 1
        assert results[0] == character(P(4, 3, 1), P(3, 3, 2), cache=CharacterCache())

    def test_default_cache_used(self):
        character(P(2, 1), P(2, 1))
        assert ((2, 1), (2, 1)) in CHARACTER_CACHE
