#!/usr/bin/env python3
"""Golden `report grid` output: 7 synthetic systems x 4 reference sets.

System outputs are seeded perturbations of the standard reference of the
bundled BLEU corpus (tests/data/bleu). Cell scores come from sacreBLEU 1.4.12
and the table is laid out here independently of the C++ renderer.
"""
import json
import os
import sys

import oracle_common as oc
from make_bleu_golden import REF_NAMES, perturb

EVALSET = "newstest2019"
SYSTEMS = [("bitext", 0.7), ("bitext+BT", 0.55), ("bitext+tagged-BT", 0.5), ("APE", 0.6),
           ("rerank-S", 0.35), ("rerank-P", 0.45), ("ensemble", 0.3)]
SEPARATOR = "  "


def read_lines(path):
    with open(path, encoding="utf-8") as fh:
        return fh.read().split("\n")[:-1]


def signature(refset):
    return "BLEU+case.mixed+lang.ende+numrefs.1+smooth.exp+%s/%s+tok.13a+version.paratune-1.0.0" % (EVALSET, refset)


def render(rows):
    widths = [max(len(r[c]) for r in rows) for c in range(len(rows[0]))]
    out = []
    for r in rows:
        cells = [r[0].ljust(widths[0])] + [r[c].rjust(widths[c]) for c in range(1, len(r))]
        out.append(SEPARATOR.join(cells).rstrip())
    return "\n".join(out) + "\n"


def main(out_dir):
    bleu_dir = os.path.join(out_dir, "..", "bleu")
    refs = {name: read_lines(os.path.join(bleu_dir, "ref.%s.de" % name)) for name in REF_NAMES}
    os.makedirs(os.path.join(out_dir, "systems"), exist_ok=True)

    with open(os.path.join(out_dir, "evalset.json"), "w", encoding="utf-8") as fh:
        json.dump({"name": EVALSET, "source": "../bleu/source.en", "origin": "source-original",
                   "references": {n: "../bleu/ref.%s.de" % n for n in REF_NAMES}}, fh, indent=2)
        fh.write("\n")

    rng = oc.seeded(2019)
    manifest = {"metric": {"tokenize": "13a", "lowercase": False, "lang": "ende"},
                "seed": 12345, "trials": 1000,
                "evalsets": {EVALSET: "evalset.json"}, "systems": []}
    bleu = oc.make_bleu("13a", False)
    rows = [[""] + [EVALSET] + [""] * (len(REF_NAMES) - 1), ["system"] + REF_NAMES]
    scores = {}
    for idx, (name, strength) in enumerate(SYSTEMS):
        lines = [perturb(rng, ref, strength) for ref in refs["WMT" if idx % 2 == 0 else "AR"]]
        fname = "systems/%02d.de" % idx
        with open(os.path.join(out_dir, fname), "w", encoding="utf-8", newline="\n") as fh:
            fh.write("".join(line + "\n" for line in lines))
        manifest["systems"].append({"name": name, "outputs": {EVALSET: fname}})
        row = [name]
        scores[name] = {}
        for ref in REF_NAMES:
            s = bleu.corpus_score(lines, [refs[ref]]).score
            scores[name][ref] = s
            row.append("%.1f" % s)
        rows.append(row)
    manifest["h2h"] = {"a": "rerank-S", "b": "rerank-P", "evalset": EVALSET, "refsets": ["WMT", "WMT.p"],
                       "ratings": "ratings.tsv"}
    with open(os.path.join(out_dir, "ratings.tsv"), "w", encoding="utf-8", newline="\n") as fh:
        fh.write("item_id\tkind\tsystem\tscore\n")
        for item in range(100):
            fh.write("%d\tquality\trerank-S\t%d\n" % (item, rng.choice([2, 3, 4, 4, 5, 5, 6])))
            fh.write("%d\tquality\trerank-P\t%d\n" % (item, rng.choice([3, 4, 5, 5, 5, 6, 6])))
        for item in range(100, 200):
            fh.write("%d\tfluency\t%s\n" % (item, rng.choice(["A", "B", "B", "equal", "B"])))

    text = render(rows) + "\nSignatures:\n" + "".join("  %s\n" % signature(r) for r in REF_NAMES)
    with open(os.path.join(out_dir, "expected_grid.txt"), "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)
    with open(os.path.join(out_dir, "expected_scores.json"), "w", encoding="utf-8") as fh:
        json.dump({"oracle": "sacreBLEU " + oc.sacrebleu.__version__, "scores": scores}, fh, indent=1)
        fh.write("\n")
    with open(os.path.join(out_dir, "manifest.json"), "w", encoding="utf-8") as fh:
        json.dump(manifest, fh, indent=2)
        fh.write("\n")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "../tests/data/grid")
