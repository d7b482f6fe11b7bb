#!/usr/bin/env python3
"""Freezes sacreBLEU 1.4.12 corpus scores for the bundled 200-segment corpus.

Writes the corpus (one hypothesis stream, four reference streams) and
golden.json with scores for every tokenizer x case x reference-count setting,
the 10-segment mini corpus, and 1,000 deterministic perturbations whose
recipe is re-implemented in tests/unit/bleu_test.cpp.
"""
import json
import os
import sys

import oracle_common as oc

N = 200
REF_NAMES = ["WMT", "AR", "WMT.p", "AR.p"]


def german_sentence(rng):
    n = rng.randint(3, 28)
    words = []
    for i in range(n):
        r = rng.random()
        if r < 0.78:
            w = rng.choice(oc.DE_WORDS)
        elif r < 0.86:
            w = rng.choice(["5,6", "2,6", "1.000", "32", "2019", "10:30", "3,5", "12-15", "Nr."])
        elif r < 0.93:
            w = rng.choice([",", ".", ":", "!", "?", "„", "“", "(", ")", "-", "–", "&quot;", "'s"])
        else:
            w = rng.choice(oc.ODD_WORDS + oc.GREEK_WORDS)
        if i == 0 or rng.random() < 0.08:
            w = w[:1].upper() + w[1:]
        words.append(w)
    sent = " ".join(words)
    # glue punctuation the way detokenized text looks
    for p in [" ,", " .", " :", " !", " ?"]:
        sent = sent.replace(p, p[1:])
    end = rng.choice([".", ".", ".", "!", "?", ""])
    return sent + end


def perturb(rng, sent, strength):
    toks = sent.split(" ")
    out = []
    for t in toks:
        r = rng.random()
        if r < strength * 0.3:
            continue
        if r < strength * 0.6:
            out.append(rng.choice(oc.DE_WORDS))
            continue
        out.append(t)
        if rng.random() < strength * 0.1:
            out.append(rng.choice(oc.DE_WORDS))
    if len(out) > 3 and rng.random() < strength:
        i = rng.randrange(len(out) - 1)
        out[i], out[i + 1] = out[i + 1], out[i]
    if rng.random() < 0.05:
        out = [t.upper() for t in out]
    s = " ".join(out)
    if rng.random() < 0.05:
        s = s.replace(" ", " ", 1)
    return s


def build_corpus(rng):
    source, hyp = [], []
    refs = {name: [] for name in REF_NAMES}
    for i in range(N):
        base = german_sentence(rng)
        source.append("source sentence %d ." % i)
        refs["WMT"].append(base)
        refs["AR"].append(perturb(rng, base, 0.35))
        refs["WMT.p"].append(perturb(rng, base, 0.8))
        refs["AR.p"].append(perturb(rng, base, 0.85))
        r = rng.random()
        if r < 0.02:
            hyp.append("")
        elif r < 0.06:
            hyp.append(" ".join(rng.choice(oc.DE_WORDS) for _ in range(rng.randint(1, 3))))
        else:
            hyp.append(perturb(rng, base, rng.choice([0.1, 0.3, 0.5, 0.7])))
    return source, hyp, refs


def score(hyps, ref_streams, tok, lc):
    bleu = oc.make_bleu(tok, lc)
    s = bleu.corpus_score(hyps, ref_streams)
    return {
        "score": s.score,
        "counts": list(s.counts),
        "totals": list(s.totals),
        "precisions": list(s.precisions),
        "bp": s.bp,
        "hyp_len": s.sys_len,
        "ref_len": s.ref_len,
    }


def perturbation(i, hyp):
    gen = oc.lcg(1000003 + i)
    start = next(gen) % (N - 10)
    out = []
    for j in range(10):
        toks = hyp[start + j].split(" ")
        op = next(gen) % 4
        k = next(gen) % max(1, len(toks))
        if op == 1:
            del toks[k]
        elif op == 2 and len(toks) > 1:
            toks[k], toks[(k + 1) % len(toks)] = toks[(k + 1) % len(toks)], toks[k]
        elif op == 3:
            toks.insert(k, toks[k])
        out.append(" ".join(toks))
    return start, out


def main(out_dir):
    rng = oc.seeded(4012)
    source, hyp, refs = build_corpus(rng)
    os.makedirs(out_dir, exist_ok=True)

    def write(name, lines):
        with open(os.path.join(out_dir, name), "w", encoding="utf-8", newline="\n") as fh:
            for line in lines:
                assert "\n" not in line and "\r" not in line
                fh.write(line + "\n")

    write("source.en", source)
    write("hyp.de", hyp)
    for name in REF_NAMES:
        write("ref.%s.de" % name, refs[name])

    golden = {"oracle": "sacreBLEU " + oc.sacrebleu.__version__, "full": [], "mini": [], "perturbations": []}
    for tok in ("13a", "none"):
        for lc in (False, True):
            for k in range(1, 5):
                streams = [refs[name] for name in REF_NAMES[:k]]
                entry = {"tok": tok, "lc": lc, "numrefs": k}
                entry.update(score(hyp, streams, tok, lc))
                golden["full"].append(entry)
                mini = {"tok": tok, "lc": lc, "numrefs": k}
                mini.update(score(hyp[:10], [s[:10] for s in streams], tok, lc))
                golden["mini"].append(mini)
    for i in range(1000):
        tok = ("13a", "none")[i % 2]
        lc = (i // 2) % 2 == 1
        k = 1 + (i // 4) % 4
        start, lines = perturbation(i, hyp)
        streams = [refs[name][start:start + 10] for name in REF_NAMES[:k]]
        golden["perturbations"].append({"i": i, "score": score(lines, streams, tok, lc)["score"]})
    with open(os.path.join(out_dir, "golden.json"), "w", encoding="utf-8") as fh:
        json.dump(golden, fh, indent=1, ensure_ascii=False)
        fh.write("\n")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "../tests/data/bleu")
