"""DNA string helpers and scaffold sources."""

from __future__ import annotations

import random
from enum import Enum
from importlib import resources

from .errors import BadAlphabet, MalformedFasta, ScaffoldTooShort

_COMPLEMENT = str.maketrans("ACGT", "TGCA")
BASES = frozenset("ACGT")

BUNDLED_M13 = "m13mp18_p7249.fasta"


def check_alphabet(seq: str) -> str:
    bad = set(seq) - BASES
    if bad:
        raise BadAlphabet(f"sequence contains non-ACGT symbols: {''.join(sorted(bad))}")
    return seq


def reverse_complement(seq: str) -> str:
    return check_alphabet(seq).translate(_COMPLEMENT)[::-1]


def parse_fasta(text: str) -> str:
    """Return the single record of a FASTA text, uppercased.

    The ``>`` header is optional, so bare sequence text is accepted too.
    Line wrapping and whitespace are ignored.
    """
    headers = 0
    chunks = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith(";"):
            continue
        if line.startswith(">"):
            headers += 1
            if headers > 1:
                raise MalformedFasta("FASTA input must contain exactly one record")
            continue
        chunks.append("".join(line.split()))
    seq = "".join(chunks).upper()
    if not seq:
        raise MalformedFasta("FASTA record is empty")
    return check_alphabet(seq)


class ScaffoldSource(str, Enum):
    BUNDLED_M13 = "bundled_m13"
    USER_FASTA = "user_fasta"
    SEEDED_RANDOM = "seeded_random"


def bundled_m13() -> str:
    text = resources.files("polyorigami.data").joinpath(BUNDLED_M13).read_text(encoding="ascii")
    return parse_fasta(text)


def random_sequence(length: int, seed: int) -> str:
    rng = random.Random(seed)
    return "".join(rng.choice("ACGT") for _ in range(length))


def load_scaffold(
    source: ScaffoldSource | str,
    required_length: int,
    fasta_text: str | None = None,
    seed: int | None = None,
    offset: int = 0,
) -> str:
    """First ``required_length`` nt of the chosen scaffold.

    ``offset`` rotates the (circular) source sequence before truncation.
    """
    source = ScaffoldSource(source)
    if source is ScaffoldSource.SEEDED_RANDOM:
        if seed is None:
            raise ValueError("seeded scaffold needs a seed")
        full = random_sequence(required_length + offset, seed)
    elif source is ScaffoldSource.USER_FASTA:
        if fasta_text is None:
            raise ValueError("user scaffold needs FASTA text")
        full = parse_fasta(fasta_text)
    else:
        full = bundled_m13()
    if len(full) < required_length:
        raise ScaffoldTooShort(f"scaffold has {len(full)} nt; design needs {required_length}")
    if offset:
        offset %= len(full)
        full = full[offset:] + full[:offset]
    return full[:required_length]
