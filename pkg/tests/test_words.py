import pytest
from teichretract.holonomy import (
    WordGroup, parse_word, format_word, invert, free_reduce, cyclic_reduce,
    canonical_word, is_primitive
)


@pytest.mark.parametrize('text', ['', 'a', 'abAB', 'cCbaBA', 'abABcdCD'])
def test_parse_format(text):
    assert format_word(parse_word(text, 4), 4) == text


def test_letter_codes():
    assert parse_word('abAB', 2) == (0, 1, 2, 3)
    assert parse_word('aC', 3) == (0, 5)


@pytest.mark.parametrize('text, rank', [('a1', 2), ('ac', 2), ('a-b', 3)])
def test_parse_invalid(text, rank):
    with pytest.raises(ValueError):
        parse_word(text, rank)


@pytest.mark.parametrize('text, reduced', [
    ('aAb', 'b'),
    ('abBA', ''),
    ('abBc', 'ac'),
    ('aab', 'aab'),
])
def test_free_reduce(text, reduced):
    assert format_word(free_reduce(parse_word(text, 3), 3), 3) == reduced


@pytest.mark.parametrize('text, reduced', [
    ('abA', 'b'),
    ('BaabbAAb', 'bb'),
    ('aBAb', 'aBAb'),
])
def test_cyclic_reduce(text, reduced):
    word = cyclic_reduce(parse_word(text, 2), 2)
    assert format_word(word, 2) == reduced


def test_invert():
    assert format_word(invert(parse_word('abC', 3), 3), 3) == 'cBA'


@pytest.mark.parametrize('text, primitive', [
    ('a', True),
    ('aab', True),
    ('abab', False),
    ('aaa', False),
    ('abAB', True),
    ('', False),
])
def test_is_primitive(text, primitive):
    assert is_primitive(parse_word(text, 2)) == primitive


@pytest.mark.parametrize('variant', [
    'aab', 'aba', 'baa', 'BAA', 'ABA', 'AAB', 'cAABC',
])
def test_canonical_word_is_class_invariant(variant):
    expected = canonical_word(parse_word('aab', 3), 3)
    assert canonical_word(parse_word(variant, 3), 3) == expected


def test_canonical_word_is_least():
    assert format_word(canonical_word(parse_word('BAba', 2), 2), 2) == 'abAB'


class TestSurfaceGroup:

    @pytest.fixture
    def group(self):
        return WordGroup(4, 'abABcdCD')

    def test_free_group_has_no_relator(self):
        group = WordGroup(2)
        assert group.relator == ()
        assert not group.is_trivial(group.parse('abAB'))

    @pytest.mark.parametrize('text', [
        'abABcdCD', 'bABcdCDa', 'dcDCbaBA', 'cdCDabAB',
    ])
    def test_relator_is_trivial(self, group, text):
        assert group.is_trivial(group.parse(text))

    def test_dehn_reduce_shortens(self, group):
        reduced = group.dehn_reduce(group.parse('abABcdC'))
        assert group.format(reduced) == 'd'

    def test_half_relator_rewrite(self, group):
        first = group.canonical(group.parse('abAB'))
        second = group.canonical(group.parse('cdCD'))
        assert first == second

    def test_distinct_classes_stay_distinct(self, group):
        assert (
            group.canonical(group.parse('a'))
            != group.canonical(group.parse('c'))
        )
        assert (
            group.canonical(group.parse('ab'))
            != group.canonical(group.parse('cd'))
        )

    def test_canonical_is_idempotent(self, group):
        for text in ['abAB', 'aBcD', 'abcd', 'aacBd']:
            once = group.canonical(group.parse(text))
            assert group.canonical(once) == once

    def test_equality(self, group):
        assert group == WordGroup(4, 'abABcdCD')
        assert group != WordGroup(4)
        assert hash(group) == hash(WordGroup(4, 'abABcdCD'))
