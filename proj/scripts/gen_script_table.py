#!/usr/bin/env python3
"""Regenerates src/script_table.inc from the Python unicodedata snapshot.

Each of the five supported scripts gets one row of 128 booleans: entry o is
1 when codepoint (block_base + o) is an assigned character. The output is
committed so the C++ build never depends on a live Unicode library.
"""
import unicodedata
import sys

BLOCKS = [
    ("Devanagari", 0x0900),
    ("Tamil", 0x0B80),
    ("Telugu", 0x0C00),
    ("Kannada", 0x0C80),
    ("Malayalam", 0x0D00),
]


def assigned(cp: int) -> bool:
    return unicodedata.category(chr(cp)) != "Cn"


def main() -> None:
    out = sys.stdout
    out.write("// Generated by scripts/gen_script_table.py "
              f"(Unicode {unicodedata.unidata_version}). Do not edit.\n")
    out.write("// One row per script: offset o is true iff base+o is an "
              "assigned codepoint.\n")
    for name, base in BLOCKS:
        bits = [assigned(base + o) for o in range(128)]
        out.write(f"// {name} U+{base:04X}: {sum(bits)}/128 assigned\n")
        out.write("{")
        for i, b in enumerate(bits):
            if i % 32 == 0:
                out.write("\n    ")
            out.write("1," if b else "0,")
        out.write("\n},\n")


if __name__ == "__main__":
    main()
