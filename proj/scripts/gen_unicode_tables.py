#!/usr/bin/env python3
"""Regenerates core/src/unicode_data.inc from the running Python's Unicode database.

The C++ lowercasing has to agree with Python's str.lower(), because that is
what the reference BLEU scorer applies for case-insensitive scoring. Python's
lower() also implements the context-dependent Final_Sigma rule, which needs
the "cased" and "case-ignorable" properties; neither is exposed directly, so
they are recovered by probing lower() on short strings.
"""
import sys
import unicodedata

SIGMA = "Σ"


def ranges(pred):
    out = []
    start = None
    for cp in range(0x110000):
        ok = not (0xD800 <= cp < 0xE000) and pred(cp)
        if ok and start is None:
            start = cp
        elif not ok and start is not None:
            out.append((start, cp - 1))
            start = None
    if start is not None:
        out.append((start, 0x10FFFF))
    return out


def cased_not_ignorable(cp):
    return (chr(cp) + SIGMA).lower()[-1] == "ς"


def case_ignorable(cp):
    if cased_not_ignorable(cp):
        return False
    return ("A" + chr(cp) + SIGMA).lower()[-1] == "ς"


def c_string(s):
    return '"' + "".join("\\x%02x" % b for b in s.encode("utf-8")) + '"'


def main(path):
    lines = [
        "// Generated by scripts/gen_unicode_tables.py from Python %s (Unicode %s). Do not edit."
        % (sys.version.split()[0], unicodedata.unidata_version),
        "",
        "struct LowerEntry {",
        "  char32_t code_point;",
        "  const char* utf8;",
        "};",
        "",
        "constexpr LowerEntry kLowerTable[] = {",
    ]
    for cp in range(0x110000):
        if 0xD800 <= cp < 0xE000:
            continue
        ch = chr(cp)
        low = ch.lower()
        if low != ch:
            lines.append("    {0x%04X, %s}," % (cp, c_string(low)))
    lines.append("};")
    lines.append("")
    lines.append("struct CodePointRange {")
    lines.append("  char32_t first;")
    lines.append("  char32_t last;")
    lines.append("};")
    for name, pred in (("kCasedNotIgnorable", cased_not_ignorable), ("kCaseIgnorable", case_ignorable)):
        lines.append("")
        lines.append("constexpr CodePointRange %s[] = {" % name)
        for a, b in ranges(pred):
            lines.append("    {0x%04X, 0x%04X}," % (a, b))
        lines.append("};")
    lines.append("")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines))


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "core/src/unicode_data.inc")
