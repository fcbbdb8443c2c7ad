"""
Words in the generators of a surface group.

Letters are integers: generator k is k and its inverse is k + rank.
The text form uses lowercase letters for generators and uppercase letters
for their inverses, so the commutator of the first two generators is
'abAB'.
"""
import string
from typing import Dict, Iterator, Optional, Set, Tuple

Word = Tuple[int, ...]

# Bound on the number of equal-length rewrites explored per class.
MAX_REWRITES = 512


def inverse_letter(letter: int, rank: int) -> int:
    return (letter + rank) % (2*rank)


def parse_word(text: str, rank: int) -> Word:
    """Convert text like 'abAB' to a tuple of letters."""
    letters = []
    for char in text:
        if char not in string.ascii_letters:
            raise ValueError(f'Invalid letter {char!r} in word {text!r}')
        generator = ord(char.lower()) - ord('a')
        if generator >= rank:
            raise ValueError(
                f'Letter {char!r} in {text!r} exceeds group rank {rank}'
            )
        letters.append(generator if char.islower() else generator + rank)
    return tuple(letters)


def format_word(word: Word, rank: int) -> str:
    """Convert a tuple of letters to text like 'abAB'."""
    return ''.join(
        string.ascii_lowercase[letter] if letter < rank
        else string.ascii_uppercase[letter - rank]
        for letter in word
    )


def invert(word: Word, rank: int) -> Word:
    return tuple(inverse_letter(letter, rank) for letter in reversed(word))


def free_reduce(word: Word, rank: int) -> Word:
    stack: list = []
    for letter in word:
        if stack and stack[-1] == inverse_letter(letter, rank):
            stack.pop()
        else:
            stack.append(letter)
    return tuple(stack)


def cyclic_reduce(word: Word, rank: int) -> Word:
    """Freely reduce, then cancel letters across the ends."""
    word = free_reduce(word, rank)
    start, stop = 0, len(word)
    while stop - start > 1 and word[stop - 1] == inverse_letter(
        word[start], rank
    ):
        start += 1
        stop -= 1
    return word[start:stop]


def rotations(word: Word) -> Iterator[Word]:
    for i in range(len(word)):
        yield word[i:] + word[:i]


def is_primitive(word: Word) -> bool:
    """True if the cyclic word is not a proper power."""
    n = len(word)
    if n == 0:
        return False
    for period in range(1, n):
        if n % period == 0 and word == word[period:] + word[:period]:
            return False
    return True


def canonical_word(word: Word, rank: int) -> Word:
    """Least rotation of the cyclically reduced word or its inverse."""
    word = cyclic_reduce(word, rank)
    if not word:
        return word
    return min(
        min(rotations(word)),
        min(rotations(invert(word, rank))),
    )


class WordGroup:
    """Finitely presented group with at most one relator.

    Free groups need only cyclic reduction. The closed genus-two surface
    group has a single relator satisfying small cancellation, so cyclic
    Dehn reduction followed by a search over equal-length half-relator
    rewrites brings every conjugacy class to a unique least word.
    """

    def __init__(self, rank: int, relator: Optional[str] = None):
        self.rank = rank
        self.relator: Word = ()
        self._longer: Dict[Word, Word] = {}
        self._half: Dict[Word, Word] = {}
        if relator is not None:
            self.relator = cyclic_reduce(parse_word(relator, rank), rank)
            self._build_rewrite_tables()

    def __repr__(self):
        relator = format_word(self.relator, self.rank)
        return f'WordGroup(rank={self.rank}, relator={relator!r})'

    def __eq__(self, other):
        return (
            isinstance(other, WordGroup)
            and self.rank == other.rank
            and self.relator == other.relator
        )

    def __hash__(self):
        return hash((self.rank, self.relator))

    def _build_rewrite_tables(self):
        n = len(self.relator)
        symmetrized: Set[Word] = set(rotations(self.relator)) | set(
            rotations(invert(self.relator, self.rank))
        )
        for cyclic in symmetrized:
            for size in range(n//2, n + 1):
                prefix, rest = cyclic[:size], cyclic[size:]
                replacement = invert(rest, self.rank)
                if 2*size > n:
                    self._longer[prefix] = replacement
                elif 2*size == n:
                    self._half[prefix] = replacement

    def parse(self, text: str) -> Word:
        return parse_word(text, self.rank)

    def format(self, word: Word) -> str:
        return format_word(word, self.rank)

    def invert(self, word: Word) -> Word:
        return invert(word, self.rank)

    def _rewrites(self, word: Word, table: Dict[Word, Word]) -> Iterator[Word]:
        """Apply one table rewrite at every cyclic position."""
        n = len(word)
        sizes = sorted({len(prefix) for prefix in table}, reverse=True)
        for size in sizes:
            if size > n:
                continue
            for start in range(n):
                rotated = word[start:] + word[:start]
                prefix = rotated[:size]
                if prefix in table:
                    yield cyclic_reduce(
                        table[prefix] + rotated[size:], self.rank
                    )

    def dehn_reduce(self, word: Word) -> Word:
        """Cyclic Dehn reduction against the symmetrized relator."""
        word = cyclic_reduce(word, self.rank)
        if not self.relator:
            return word
        while True:
            shorter = next(self._rewrites(word, self._longer), None)
            if shorter is None:
                return word
            word = shorter

    def canonical(self, word: Word) -> Word:
        """Unique representative of the unoriented conjugacy class."""
        word = self.dehn_reduce(word)
        if not self.relator or not word:
            return canonical_word(word, self.rank)
        seen = {canonical_word(word, self.rank)}
        frontier = [word]
        while frontier and len(seen) < MAX_REWRITES:
            current = frontier.pop()
            for rewritten in self._rewrites(current, self._half):
                reduced = self.dehn_reduce(rewritten)
                if len(reduced) < len(current):
                    return self.canonical(reduced)
                key = canonical_word(reduced, self.rank)
                if key not in seen:
                    seen.add(key)
                    frontier.append(reduced)
        return min(seen)

    def is_trivial(self, word: Word) -> bool:
        return len(self.canonical(word)) == 0


def substitute(
    word: Word, substitution: Dict[str, str], group: WordGroup
) -> Word:
    """Image of a word under a substitution of generators.

    Generators missing from the substitution are fixed.
    """
    images: Dict[int, Word] = {}
    for generator in range(group.rank):
        name = group.format((generator,))
        image = group.parse(substitution.get(name, name))
        images[generator] = image
        images[generator + group.rank] = group.invert(image)
    result: Tuple[int, ...] = ()
    for letter in word:
        result += images[letter]
    return free_reduce(result, group.rank)
