#!/usr/bin/env python3
"""Synthetic reranking data where literal and paraphrase references disagree.

Each segment has a literal reference S and a paraphrased reference P that
shares meaning but mostly not wording. The 50 hypotheses mix the two
vocabularies in varying proportion; feature 0 rewards literal wording and
feature 1 rewards paraphrased wording (both noisy), feature 2 is the length,
and the remaining 20 features are noise. Tuning on S should therefore lean on
feature 0 and tuning on P on feature 1.
"""
import os
import sys

import oracle_common as oc

SEGMENTS = 200
NBEST = 50
FEATURES = 23


def main(out_dir):
    rng = oc.seeded(7)
    vocab_s = oc.DE_WORDS
    # paraphrase vocabulary: a disjoint, deterministic rewrite of every literal word
    vocab_p = {w: "p" + w.lower() + str(i % 7) for i, w in enumerate(vocab_s)}
    ref_s, ref_p, nbest = [], [], []
    for seg in range(SEGMENTS):
        n = rng.randint(8, 20)
        lit = [rng.choice(vocab_s) for _ in range(n)]
        par = [vocab_p[w] if rng.random() < 0.75 else w for w in lit]
        for _ in range(2):
            if n > 3:
                i = rng.randrange(n - 1)
                par[i], par[i + 1] = par[i + 1], par[i]
        ref_s.append(" ".join(lit))
        ref_p.append(" ".join(par))
        entries = []
        for _ in range(NBEST):
            alpha = rng.random()
            toks = []
            for a, b in zip(lit, par):
                r = rng.random()
                if r < 0.12:
                    toks.append(rng.choice(vocab_s))
                elif r < 0.16:
                    continue
                else:
                    toks.append(b if rng.random() < alpha else a)
            if rng.random() < 0.2:
                toks.append(rng.choice(vocab_s))
            if not toks:
                toks = [lit[0]]
            feats = [-alpha + rng.gauss(0, 0.15), -(1 - alpha) + rng.gauss(0, 0.15), -float(len(toks)) / 10]
            feats += [rng.gauss(0, 1) for _ in range(FEATURES - 3)]
            model = sum(feats[:3])
            entries.append((model, " ".join(toks), feats))
        entries.sort(key=lambda e: -e[0])
        for model, text, feats in entries:
            nbest.append("%d ||| %s ||| %s ||| %.4f" % (seg, text, " ".join("%.4f" % f for f in feats), model))

    os.makedirs(out_dir, exist_ok=True)
    for name, lines in (("nbest.txt", nbest), ("ref.S.de", ref_s), ("ref.P.de", ref_p)):
        with open(os.path.join(out_dir, name), "w", encoding="utf-8", newline="\n") as fh:
            fh.write("".join(line + "\n" for line in lines))


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "../tests/data/divergence")
