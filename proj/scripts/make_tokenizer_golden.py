#!/usr/bin/env python3
"""Freezes sacreBLEU 1.4.12 tokenizations of a mixed English/German corpus."""
import os
import sys

import oracle_common as oc

FIXED_LINES = [
    "Hello, world!",
    "5,6 Punkte",
    "Er durchschnittlich 5,6 Punkte und 2,6 Rebounds ein Spiel in der vergangenen Saison.",
    "In der vergangenen Saison erzielte er im Schnitt 5,6 Punkte und 2,6 Rebounds pro Spiel.",
    "He averaged 5.6 points and 2.6 rebounds a game last season.",
    "Morgen ist ein anderes Biest.",
    "Sie müssen Ihre Kappe kippen.",
    "32 Prozent unterstützten einen solchen Lauf.",
    "Thirty-two percent supported such a run.",
    "Er sagte, dass",
    ", sagte er der",
    "&quot;Quoted&quot; &amp; &lt;tagged&gt; <skipped> text",
    "",
    "   ",
    "ΟΔΟΣ ΣΑΣ Σ ΑΣ. İstanbul",
    "Straße STRASSE ẞ",
]


def main(out_dir, n_lines=12000):
    rng = oc.seeded(20201016)
    lines = list(FIXED_LINES)
    while len(lines) < n_lines:
        lines.append(oc.random_line(rng))
    os.makedirs(out_dir, exist_ok=True)
    with open(os.path.join(out_dir, "corpus.txt"), "w", encoding="utf-8", newline="\n") as fh:
        for line in lines:
            fh.write(line + "\n")
    for tok in ("13a", "none"):
        for lc in (False, True):
            name = "expected_%s_%s.txt" % (tok, "lc" if lc else "mixed")
            with open(os.path.join(out_dir, name), "w", encoding="utf-8", newline="\n") as fh:
                for line in lines:
                    fh.write(" ".join(oc.sacre_tokens(line, tok, lc)) + "\n")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "../tests/data/tokenizer")
