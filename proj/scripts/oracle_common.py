"""Shared helpers for the golden-file generators.

Everything here runs only when golden files are regenerated; the C++ test
suite reads the frozen outputs under tests/data/ and never needs Python.
"""
import random
import sys
import types

# sacreBLEU 1.4.12 imports MeCab unconditionally for its Japanese tokenizer.
sys.modules.setdefault("MeCab", types.ModuleType("MeCab"))

import sacrebleu  # noqa: E402
from sacrebleu.metrics.bleu import BLEU  # noqa: E402
from sacrebleu.tokenizers.tokenizer_13a import Tokenizer13a  # noqa: E402

assert sacrebleu.__version__ == "1.4.12", sacrebleu.__version__

EN_WORDS = """the a of to and in is was that for on with as by at from it he she they
said says noted government minister president company people year years week
police city state country market percent points game season team players last first
new old other more most about after before over under between against during
would could should will can must have has had been being do does did not no yes
report study found million billion dollars euros per day night morning children
school hospital court election vote party leader world football rebounds averaged
tomorrow different beast cap tip thirty-two supported such run Britain BBC Scotland
pay tax humans died""".split()

DE_WORDS = """der die das ein eine einer und in im ist war dass für auf mit als von bei aus
er sie es sagte sagt stellte fest Regierung Minister Präsident Unternehmen Menschen
Jahr Jahre Woche Polizei Stadt Staat Land Markt Prozent Punkte Spiel Saison Mannschaft
Spieler letzten ersten neue alte andere mehr meisten über nach vor unter zwischen gegen
während würde könnte sollte wird kann muss hat hatte worden nicht kein ja Bericht Studie
gefunden Millionen Milliarden Dollar Euro pro Tag Nacht Morgen Kinder Schule Krankenhaus
Gericht Wahl Stimme Partei Führer Welt Fußball Rebounds durchschnittlich erzielte Schnitt
Biest anders Kappe kippen Hut ziehen unterstützten solchen Lauf Ansturm Großbritannien
Grossbritanien keine Steuern zahlen ums Leben kamen Straße Größe Übersetzung Äpfel Öl
Fußgänger heißt groß weiß Maß""".split()

GREEK_WORDS = ["ΟΔΟΣ", "ΣΑΣ", "Σ", "ΑΘΗΝΑΣ", "Ἀθηνᾶς", "λόγος", "ΣΊΣΥΦΟΣ"]
ODD_WORDS = ["İstanbul", "ǅemal", "ẞTRASSE", "ΣΑΣ.", "café", "naïve", "Ĳssel", "Ⅻ", "Ａｂｃ", "ﬁnal",
             "ḰA", "Ω", "ꭰ", "𐐀𐐁", "Straße", "STRASSE", "É", "ÀÉÎÕÜ", "Ǆ", "ǈ"]
PUNCT = list(".,;:!?\"'()[]{}<>@#$%&*+=/\\|^_`~-") + ["...", "--", "„", "“", "”", "‚", "‘", "’", "«", "»",
                                                      "–", "—", "…", "·", "€", "£", "§", "°", "¿", "¡"]
ENTITIES = ["&quot;", "&amp;", "&lt;", "&gt;", "&amp;quot;", "&apos;", "&#39;", "&nbsp;"]
SPACES = [" ", " ", " ", " ", "\u00a0", "  ", "\t", "\u2009", "\u202f", "\u3000", "\u2002", "\u200a",
          "\x0b", "\x0c", "\x1c", "\x85", "\u200b", "\ufeff", "\u1680", "\u2028"]
SPECIAL = ["<skipped>", "-\n"[:-1], "<b>", "</b>", "http://www.example.com/a-b_c?d=1&e=2", "foo@bar.de",
           "U.S.", "z.B.", "d.h.", "Nr.", "3.", "1.000", "1,000", "5,6", "2.6", "2,6", "-5", "5-",
           "2019-10-01", "10:30", "3/4", "50%", "$5", "€5,50", "1.5.2019", "a.b.c", ".5", ",5", "5.",
           "5,", "-", "--5", "5--", "x-y", "100-200", "e-mail", "'s", "don't", "O'Neill", "#hashtag",
           "@user", "C++", "...", "a...b", "9.99.", "1,2,3", ",,", "..", ".,", ",."]


def random_word(rng):
    r = rng.random()
    if r < 0.42:
        w = rng.choice(EN_WORDS)
    elif r < 0.84:
        w = rng.choice(DE_WORDS)
    elif r < 0.88:
        w = rng.choice(GREEK_WORDS)
    elif r < 0.92:
        w = rng.choice(ODD_WORDS)
    elif r < 0.97:
        w = str(rng.choice([rng.randint(0, 9), rng.randint(10, 999), rng.randint(1000, 99999)]))
    else:
        w = rng.choice(ENTITIES)
    if rng.random() < 0.15:
        w = w.upper() if rng.random() < 0.5 else w.capitalize()
    return w


def random_line(rng):
    n = rng.randint(0, 30)
    parts = []
    for _ in range(n):
        r = rng.random()
        if r < 0.70:
            parts.append(random_word(rng))
        elif r < 0.85:
            parts.append(rng.choice(PUNCT))
        else:
            parts.append(rng.choice(SPECIAL))
        # glue without a space now and then so punctuation attaches to words
        parts.append("" if rng.random() < 0.25 else rng.choice(SPACES))
    line = "".join(parts)
    if rng.random() < 0.05:
        line = "  " + line
    return line.replace("\n", " ").replace("\r", " ")


def lcg(seed):
    """64-bit LCG shared bit-for-bit with the C++ tests."""
    state = seed & 0xFFFFFFFFFFFFFFFF
    while True:
        state = (state * 6364136223846793005 + 1442695040888963407) & 0xFFFFFFFFFFFFFFFF
        yield state >> 33


def sacre_tokens(line, tokenize, lc):
    """Token sequence exactly as sacreBLEU's corpus_score sees it."""
    if lc:
        line = line.lower()
    line = line.rstrip()
    if tokenize == "13a":
        line = Tokenizer13a()(line)
    return line.split()


def make_bleu(tokenize, lc):
    args = types.SimpleNamespace(force=True, lc=lc, smooth_value=None, smooth_method="exp",
                                 tokenize=tokenize, num_refs=1)
    return BLEU(args)


def seeded(seed):
    return random.Random(seed)
