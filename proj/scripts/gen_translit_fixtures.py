#!/usr/bin/env python3
"""Builds the frozen transliteration agreement fixtures.

For each of the five scripts this emits a ~10k-character text sample
(syllable-structured words drawn from offsets assigned in every supported
script, so the sample survives offset mapping into any target), plus the
expected output of an independent reference transliterator for all 20
ordered script pairs. The reference shifts every codepoint of the source
block by the difference of block bases, the classic offset rule.

Run once; outputs are committed under tests/fixtures/translit/.
"""
import random
import unicodedata
from pathlib import Path

BLOCKS = {
    "deva": 0x0900,
    "ta": 0x0B80,
    "te": 0x0C00,
    "kn": 0x0C80,
    "ml": 0x0D00,
}

OUT = Path(__file__).resolve().parent.parent / "tests" / "fixtures" / "translit"


def assigned_everywhere(off: int) -> bool:
    return all(unicodedata.category(chr(base + off)) != "Cn"
               for base in BLOCKS.values())


def reference_transliterate(text: str, src: str, tgt: str) -> str:
    sb, tb = BLOCKS[src], BLOCKS[tgt]
    return "".join(chr(ord(c) - sb + tb) if sb <= ord(c) < sb + 0x80 else c
                   for c in text)


def make_sample(script: str, rng: random.Random, target_chars: int) -> str:
    base = BLOCKS[script]
    consonants = [o for o in range(0x15, 0x3A) if assigned_everywhere(o)]
    vowels = [o for o in range(0x05, 0x15) if assigned_everywhere(o)]
    signs = [o for o in range(0x3E, 0x4D) if assigned_everywhere(o)]
    virama = 0x4D

    def syllable() -> str:
        r = rng.random()
        if r < 0.08:
            return chr(base + rng.choice(vowels))
        s = chr(base + rng.choice(consonants))
        r = rng.random()
        if r < 0.15:
            s += chr(base + virama) + chr(base + rng.choice(consonants))
        if rng.random() < 0.55:
            s += chr(base + rng.choice(signs))
        return s

    def word() -> str:
        if rng.random() < 0.03:
            return str(rng.randint(1, 2100))
        return "".join(syllable() for _ in range(rng.randint(1, 4)))

    lines = []
    total = 0
    while total < target_chars:
        n = rng.randint(4, 10)
        sent = " ".join(word() for _ in range(n)) + rng.choice(". . . ? !".split())
        lines.append(sent)
        total += len(sent) + 1
    return "\n".join(lines) + "\n"


def main() -> None:
    OUT.mkdir(parents=True, exist_ok=True)
    rng = random.Random(20210701)
    samples = {s: make_sample(s, rng, 10000) for s in BLOCKS}
    for s, text in samples.items():
        (OUT / f"sample_{s}.txt").write_text(text, encoding="utf-8")
        for t in BLOCKS:
            if t == s:
                continue
            expect = reference_transliterate(text, s, t)
            (OUT / f"expected_{s}_to_{t}.txt").write_text(expect,
                                                          encoding="utf-8")
    print("wrote", len(samples), "samples +", 5 * 4, "expected files to", OUT)


if __name__ == "__main__":
    main()
