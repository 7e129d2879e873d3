#!/usr/bin/env python3
"""Generate include/norma/unicode_data.hpp from Python's unicodedata.

Emits three sorted tables used by the NFC normalizer in unicode.hpp:
  - full canonical decompositions (Hangul excluded, handled algorithmically)
  - nonzero canonical combining classes
  - primary composition pairs (composition exclusions already filtered out)

Run from the repository root:  python3 tools/gen_unicode_tables.py
"""

import sys
import unicodedata

HANGUL_S_BASE = 0xAC00
HANGUL_S_COUNT = 11172


def canonical_decomposition(cp):
    d = unicodedata.decomposition(chr(cp))
    if not d or d.startswith("<"):
        return None
    return [int(x, 16) for x in d.split()]


def full_decomposition(cp, memo):
    if cp in memo:
        return memo[cp]
    d = canonical_decomposition(cp)
    if d is None:
        memo[cp] = [cp]
        return memo[cp]
    out = []
    for c in d:
        out.extend(full_decomposition(c, memo))
    memo[cp] = out
    return out


def main():
    memo = {}
    decomp = {}   # cp -> full canonical decomposition (list of cps)
    ccc = {}      # cp -> combining class
    pairs = []    # (a, b, composed)

    for cp in range(0x110000):
        if HANGUL_S_BASE <= cp < HANGUL_S_BASE + HANGUL_S_COUNT:
            continue
        ch = chr(cp)
        k = unicodedata.combining(ch)
        if k:
            ccc[cp] = k
        d = canonical_decomposition(cp)
        if d is None:
            continue
        decomp[cp] = full_decomposition(cp, memo)
        if len(d) == 2:
            a, b = d
            # A pair is a primary composite iff NFC maps it back; this
            # filters singleton and excluded compositions.
            if unicodedata.normalize("NFC", chr(a) + chr(b)) == ch:
                pairs.append((a, b, cp))

    pairs.sort()

    flat = []
    entries = []
    for cp in sorted(decomp):
        seq = decomp[cp]
        entries.append((cp, len(flat), len(seq)))
        flat.extend(seq)

    w = sys.stdout.write
    w("// Generated by tools/gen_unicode_tables.py (Unicode %s). Do not edit.\n"
      % unicodedata.unidata_version)
    w("#pragma once\n\n#include <cstdint>\n\nnamespace norma::ucd {\n\n")

    w("inline constexpr char32_t kDecompData[] = {\n")
    for i in range(0, len(flat), 12):
        w("    " + ", ".join("0x%X" % c for c in flat[i:i + 12]) + ",\n")
    w("};\n\n")

    w("struct DecompEntry { char32_t cp; std::uint32_t offset; std::uint8_t len; };\n")
    w("inline constexpr DecompEntry kDecomp[] = {\n")
    for cp, off, n in entries:
        w("    {0x%X, %d, %d},\n" % (cp, off, n))
    w("};\n\n")

    w("struct CccEntry { char32_t cp; std::uint8_t ccc; };\n")
    w("inline constexpr CccEntry kCcc[] = {\n")
    for cp in sorted(ccc):
        w("    {0x%X, %d},\n" % (cp, ccc[cp]))
    w("};\n\n")

    w("struct ComposePair { char32_t first; char32_t second; char32_t composed; };\n")
    w("inline constexpr ComposePair kCompose[] = {\n")
    for a, b, c in pairs:
        w("    {0x%X, 0x%X, 0x%X},\n" % (a, b, c))
    w("};\n\n")

    w("} // namespace norma::ucd\n")


if __name__ == "__main__":
    main()
