#!/usr/bin/env python3
"""Builds fixtures/lexicon.tsv deterministically.

A hand-curated set of sentiment roots (valences on the conventional [-4, 4]
scale) is expanded with regular English morphology: inflectional suffixes
inherit the root valence exactly, derivational ones are damped by 0.9, the
privative forms (un-/dis-/-less) flip the sign at 0.85/0.9 strength.
Tokens that collide with the booster or negator rule tables are excluded so
every lexicon token is scored by exactly one rule path.
"""

import sys

# fmt: off
ROOTS = [
    # (root, tag, valence)  tag: a=adjective, v=verb, n=noun
    ("good", "a", 1.9), ("great", "a", 3.1), ("excellent", "a", 3.2),
    ("amazing", "a", 2.8), ("awesome", "a", 3.1), ("wonderful", "a", 2.7),
    ("fantastic", "a", 2.6), ("terrific", "a", 2.4), ("superb", "a", 2.9),
    ("happy", "a", 2.7), ("glad", "a", 2.0), ("joyful", "a", 2.9),
    ("cheerful", "a", 2.5), ("delighted", "a", 2.9), ("pleased", "a", 1.9),
    ("strong", "a", 2.3), ("solid", "a", 1.5), ("robust", "a", 1.7),
    ("healthy", "a", 1.8), ("stable", "a", 1.2), ("safe", "a", 1.8),
    ("secure", "a", 1.6), ("reliable", "a", 1.9), ("trustworthy", "a", 2.2),
    ("honest", "a", 2.3), ("fair", "a", 1.6), ("generous", "a", 2.3),
    ("kind", "a", 2.4), ("friendly", "a", 2.2), ("helpful", "a", 1.8),
    ("smart", "a", 1.7), ("clever", "a", 1.9), ("brilliant", "a", 2.8),
    ("wise", "a", 2.1), ("bright", "a", 1.9), ("talented", "a", 2.2),
    ("skilled", "a", 1.7), ("capable", "a", 1.6), ("confident", "a", 2.2),
    ("optimistic", "a", 1.9), ("hopeful", "a", 1.9), ("promising", "a", 1.6),
    ("bullish", "a", 1.8), ("profitable", "a", 2.1), ("lucrative", "a", 2.0),
    ("rich", "a", 2.0), ("wealthy", "a", 2.0), ("prosperous", "a", 2.4),
    ("valuable", "a", 1.9), ("cheap", "a", 0.6), ("free", "a", 1.9),
    ("efficient", "a", 1.5), ("effective", "a", 1.5), ("productive", "a", 1.6),
    ("innovative", "a", 1.8), ("creative", "a", 1.9), ("impressive", "a", 2.2),
    ("remarkable", "a", 1.9), ("spectacular", "a", 2.6), ("magnificent", "a", 2.9),
    ("beautiful", "a", 2.7), ("lovely", "a", 2.8), ("nice", "a", 1.8),
    ("pleasant", "a", 2.3), ("sweet", "a", 2.0), ("charming", "a", 2.4),
    ("elegant", "a", 2.1), ("graceful", "a", 2.2), ("perfect", "a", 2.7),
    ("ideal", "a", 2.0), ("super", "a", 2.9), ("best", "a", 3.2),
    ("better", "a", 1.9), ("positive", "a", 2.3), ("favorable", "a", 1.9),
    ("successful", "a", 2.8), ("victorious", "a", 2.5), ("winning", "a", 2.4),
    ("proud", "a", 2.1), ("grateful", "a", 2.6), ("thankful", "a", 2.4),
    ("excited", "a", 2.2), ("thrilled", "a", 2.9), ("eager", "a", 1.6),
    ("fun", "a", 2.3), ("funny", "a", 1.9), ("hilarious", "a", 2.3),
    ("calm", "a", 1.3), ("peaceful", "a", 2.2), ("relaxed", "a", 1.6),
    ("comfortable", "a", 1.6), ("satisfied", "a", 1.8), ("content", "a", 1.4),
    ("fresh", "a", 1.3), ("clean", "a", 1.7), ("pure", "a", 1.6),
    ("genuine", "a", 1.8), ("authentic", "a", 1.6), ("legitimate", "a", 1.3),
    ("popular", "a", 1.8), ("famous", "a", 1.7), ("renowned", "a", 2.0),
    ("glorious", "a", 2.8), ("epic", "a", 2.0), ("legendary", "a", 2.2),
    ("huge", "a", 1.6), ("big", "a", 1.0), ("grand", "a", 2.1),
    ("bad", "a", -2.5), ("terrible", "a", -2.1), ("horrible", "a", -2.5),
    ("awful", "a", -2.0), ("dreadful", "a", -2.3), ("atrocious", "a", -2.6),
    ("poor", "a", -1.9), ("lousy", "a", -2.1), ("mediocre", "a", -0.8),
    ("inferior", "a", -1.4), ("worst", "a", -3.1), ("worse", "a", -2.1),
    ("sad", "a", -2.1), ("unhappy", "a", -1.8), ("miserable", "a", -2.7),
    ("depressed", "a", -2.3), ("gloomy", "a", -1.9), ("grim", "a", -1.9),
    ("bleak", "a", -1.6), ("hopeless", "a", -2.6), ("desperate", "a", -1.9),
    ("weak", "a", -1.9), ("fragile", "a", -1.1), ("shaky", "a", -1.2),
    ("unstable", "a", -1.4), ("volatile", "a", -0.9), ("risky", "a", -1.1),
    ("dangerous", "a", -2.0), ("hazardous", "a", -1.9), ("toxic", "a", -2.4),
    ("harmful", "a", -2.1), ("damaging", "a", -1.9), ("destructive", "a", -2.4),
    ("angry", "a", -2.3), ("furious", "a", -2.7), ("outraged", "a", -2.4),
    ("annoyed", "a", -1.6), ("irritated", "a", -1.8), ("frustrated", "a", -2.1),
    ("disappointed", "a", -2.1), ("dissatisfied", "a", -1.7), ("upset", "a", -1.9),
    ("worried", "a", -1.6), ("anxious", "a", -1.5), ("nervous", "a", -1.4),
    ("afraid", "a", -1.9), ("scared", "a", -1.9), ("terrified", "a", -2.7),
    ("fearful", "a", -1.9), ("panicked", "a", -2.2), ("alarmed", "a", -1.4),
    ("ugly", "a", -2.2), ("disgusting", "a", -2.6), ("gross", "a", -2.0),
    ("nasty", "a", -2.3), ("vile", "a", -2.8), ("repulsive", "a", -2.6),
    ("boring", "a", -1.3), ("dull", "a", -1.2), ("tedious", "a", -1.3),
    ("stupid", "a", -2.4), ("foolish", "a", -1.9), ("idiotic", "a", -2.5),
    ("ridiculous", "a", -1.6), ("absurd", "a", -1.4), ("pathetic", "a", -2.3),
    ("useless", "a", -1.9), ("worthless", "a", -2.4), ("pointless", "a", -1.7),
    ("broken", "a", -1.6), ("damaged", "a", -1.7), ("flawed", "a", -1.4),
    ("defective", "a", -1.7), ("faulty", "a", -1.5), ("corrupt", "a", -2.6),
    ("dishonest", "a", -2.2), ("deceptive", "a", -2.0), ("fraudulent", "a", -2.7),
    ("illegal", "a", -2.1), ("criminal", "a", -2.4), ("guilty", "a", -1.9),
    ("bearish", "a", -1.6), ("overvalued", "a", -1.2), ("bankrupt", "a", -2.6),
    ("insolvent", "a", -2.1), ("unprofitable", "a", -1.8), ("costly", "a", -1.1),
    ("expensive", "a", -0.8), ("overpriced", "a", -1.5), ("cruel", "a", -2.6),
    ("brutal", "a", -2.3), ("vicious", "a", -2.4), ("evil", "a", -3.1),
    ("wicked", "a", -2.2), ("sick", "a", -1.6), ("painful", "a", -1.9),
    ("hurt", "a", -1.9), ("wounded", "a", -1.8), ("tragic", "a", -2.5),
    ("catastrophic", "a", -3.0), ("disastrous", "a", -2.9), ("devastating", "a", -2.8),
    ("win", "v", 2.8), ("succeed", "v", 2.4), ("achieve", "v", 1.9),
    ("accomplish", "v", 1.9), ("gain", "v", 1.7), ("earn", "v", 1.5),
    ("profit", "v", 2.0), ("prosper", "v", 2.4), ("thrive", "v", 2.3),
    ("flourish", "v", 2.3), ("grow", "v", 1.4), ("improve", "v", 1.9),
    ("increase", "v", 1.1), ("rise", "v", 1.1), ("surge", "v", 1.2),
    ("soar", "v", 1.6), ("rally", "v", 1.2), ("rebound", "v", 1.3),
    ("recover", "v", 1.5), ("advance", "v", 1.2), ("boost", "v", 1.7),
    ("strengthen", "v", 1.6), ("outperform", "v", 1.8), ("beat", "v", 1.2),
    ("exceed", "v", 1.5), ("surpass", "v", 1.7), ("deliver", "v", 1.1),
    ("reward", "v", 2.2), ("celebrate", "v", 2.6), ("enjoy", "v", 2.3),
    ("love", "v", 3.2), ("adore", "v", 2.9), ("admire", "v", 2.4),
    ("appreciate", "v", 2.0), ("praise", "v", 2.5), ("applaud", "v", 2.2),
    ("endorse", "v", 1.7), ("recommend", "v", 1.6), ("approve", "v", 1.9),
    ("support", "v", 1.7), ("trust", "v", 2.1), ("believe", "v", 1.3),
    ("inspire", "v", 2.3), ("encourage", "v", 2.0), ("motivate", "v", 1.9),
    ("delight", "v", 2.6), ("please", "v", 1.9), ("satisfy", "v", 1.8),
    ("impress", "v", 2.1), ("excite", "v", 2.0), ("attract", "v", 1.4),
    ("help", "v", 1.7), ("assist", "v", 1.5), ("benefit", "v", 1.9),
    ("heal", "v", 1.9), ("protect", "v", 1.7), ("save", "v", 2.1),
    ("rescue", "v", 2.0), ("create", "v", 1.4), ("build", "v", 1.1),
    ("innovate", "v", 1.6), ("launch", "v", 0.9), ("lose", "v", -1.7),
    ("fail", "v", -2.3), ("collapse", "v", -2.0), ("crash", "v", -2.1),
    ("plunge", "v", -1.6), ("plummet", "v", -1.7), ("tumble", "v", -1.2),
    ("sink", "v", -1.3), ("drop", "v", -0.9), ("decline", "v", -1.1),
    ("fall", "v", -1.0), ("slump", "v", -1.5), ("shrink", "v", -1.0),
    ("weaken", "v", -1.5), ("deteriorate", "v", -1.9), ("worsen", "v", -2.0),
    ("struggle", "v", -1.6), ("suffer", "v", -2.1), ("hurt", "v", -1.9),
    ("harm", "v", -2.2), ("damage", "v", -1.9), ("destroy", "v", -2.2),
    ("ruin", "v", -2.4), ("wreck", "v", -2.1), ("devastate", "v", -2.8),
    ("crush", "v", -1.8), ("break", "v", -1.2), ("hate", "v", -2.7),
    ("despise", "v", -2.5), ("loathe", "v", -2.6), ("dislike", "v", -1.6),
    ("resent", "v", -1.9), ("reject", "v", -1.6), ("refuse", "v", -1.2),
    ("deny", "v", -1.1), ("oppose", "v", -1.2), ("criticize", "v", -1.6),
    ("condemn", "v", -2.2), ("blame", "v", -1.7), ("accuse", "v", -1.6),
    ("attack", "v", -2.1), ("threaten", "v", -2.0), ("bully", "v", -2.4),
    ("cheat", "v", -2.4), ("deceive", "v", -2.2), ("betray", "v", -2.6),
    ("steal", "v", -2.2), ("rob", "v", -2.3), ("defraud", "v", -2.5),
    ("manipulate", "v", -1.9), ("exploit", "v", -1.9), ("abuse", "v", -2.8),
    ("waste", "v", -1.8), ("squander", "v", -1.9), ("disappoint", "v", -2.0),
    ("discourage", "v", -1.8), ("depress", "v", -2.1), ("annoy", "v", -1.7),
    ("irritate", "v", -1.8), ("anger", "v", -2.2), ("enrage", "v", -2.5),
    ("disturb", "v", -1.5), ("frighten", "v", -1.9), ("panic", "v", -2.0),
    ("worry", "v", -1.5), ("doubt", "v", -1.5), ("fear", "v", -1.9),
    ("regret", "v", -1.9), ("mourn", "v", -2.0), ("cry", "v", -1.6),
    ("complain", "v", -1.4), ("whine", "v", -1.5), ("quit", "v", -1.1),
    ("abandon", "v", -1.9), ("miss", "v", -1.0), ("delay", "v", -1.0),
    ("success", "n", 2.7), ("victory", "n", 2.6), ("triumph", "n", 2.6),
    ("achievement", "n", 2.1), ("progress", "n", 1.8), ("growth", "n", 1.4),
    ("opportunity", "n", 1.7), ("advantage", "n", 1.7), ("strength", "n", 1.9),
    ("miracle", "n", 2.9), ("fortune", "n", 2.1), ("bonus", "n", 1.9),
    ("dividend", "n", 1.1), ("upside", "n", 1.3), ("boom", "n", 1.4),
    ("breakthrough", "n", 2.1), ("innovation", "n", 1.6), ("quality", "n", 1.4),
    ("champion", "n", 2.4), ("winner", "n", 2.6), ("leader", "n", 1.6),
    ("friend", "n", 2.2), ("hero", "n", 2.5), ("joy", "n", 2.8),
    ("happiness", "n", 2.8), ("pleasure", "n", 2.4), ("comfort", "n", 1.8),
    ("hope", "n", 1.9), ("faith", "n", 1.9), ("confidence", "n", 2.2),
    ("failure", "n", -2.3), ("loss", "n", -1.3), ("defeat", "n", -2.0),
    ("disaster", "n", -3.1), ("catastrophe", "n", -3.0), ("crisis", "n", -2.3),
    ("collapse", "n", -2.0), ("downturn", "n", -1.5), ("recession", "n", -2.1),
    ("depression", "n", -2.7), ("bubble", "n", -0.7), ("selloff", "n", -1.3),
    ("downside", "n", -1.2), ("debt", "n", -1.4), ("deficit", "n", -1.5),
    ("penalty", "n", -1.7), ("fine", "n", -0.8), ("lawsuit", "n", -1.6),
    ("fraud", "n", -2.6), ("scandal", "n", -2.2), ("scam", "n", -2.6),
    ("corruption", "n", -2.7), ("crime", "n", -2.5), ("theft", "n", -2.3),
    ("threat", "n", -1.9), ("danger", "n", -2.1), ("risk", "n", -1.1),
    ("problem", "n", -1.5), ("trouble", "n", -1.8), ("mess", "n", -1.6),
    ("mistake", "n", -1.6), ("error", "n", -1.4), ("flaw", "n", -1.4),
    ("defect", "n", -1.6), ("damage", "n", -1.9), ("harm", "n", -2.2),
    ("pain", "n", -2.0), ("grief", "n", -2.3), ("sorrow", "n", -2.2),
    ("misery", "n", -2.7), ("despair", "n", -2.6), ("fear", "n", -1.9),
    ("panic", "n", -2.0), ("anger", "n", -2.2), ("rage", "n", -2.4),
    ("hatred", "n", -2.9), ("enemy", "n", -2.1), ("victim", "n", -1.7),
    ("garbage", "n", -2.2), ("junk", "n", -1.7), ("chaos", "n", -2.1),
    ("war", "n", -2.9), ("violence", "n", -2.9), ("death", "n", -2.9),
]

EMOTICONS = [
    (":)", 1.3), (":-)", 1.3), (":))", 1.6), (":D", 2.3), (":-D", 2.3),
    ("=)", 1.4), ("^_^", 1.8), (";)", 1.1), (";-)", 1.1), (":p", 1.2),
    (":-p", 1.2), ("<3", 2.6), (":*", 1.7), ("xd", 2.0), (":'-)", 1.5),
    (":(", -1.9), (":-(", -1.9), (":((", -2.2), (":/", -1.1), (":-/", -1.1),
    (":|", -0.6), (">:(", -2.4), ("D:", -2.0), (":'(", -2.3), (":'-(", -2.3),
    ("</3", -2.7), (":@", -2.1), (">_<", -1.5), ("-_-", -1.2), ("o_o", -0.4),
]

SLANG = [
    ("lol", 1.6), ("lmao", 1.9), ("rofl", 2.1), ("haha", 1.9), ("hahaha", 2.1),
    ("yay", 2.4), ("woohoo", 2.6), ("wow", 1.8), ("yes", 1.7), ("yeah", 1.2),
    ("thx", 1.5), ("thanks", 1.9), ("congrats", 2.4), ("moon", 1.5),
    ("mooning", 1.7), ("hodl", 0.9), ("stonks", 1.2), ("tendies", 1.8),
    ("meh", -0.9), ("ugh", -1.8), ("wtf", -2.2), ("smh", -1.4), ("rekt", -2.2),
    ("fml", -2.4), ("damn", -1.4), ("dammit", -1.8), ("sucks", -2.0),
    ("sux", -1.9), ("fud", -1.3), ("bagholder", -1.6), ("dump", -1.4),
    ("dumping", -1.5), ("shitcoin", -2.3), ("ponzi", -2.5), ("nope", -1.0),
]
# fmt: on

BOOSTERS = {
    "absolutely", "amazingly", "awfully", "completely", "considerably", "decidedly",
    "deeply", "effing", "enormously", "entirely", "especially", "exceptionally",
    "extremely", "fabulously", "flipping", "flippin", "fricking", "frickin",
    "frigging", "friggin", "fully", "fucking", "greatly", "hella", "highly",
    "hugely", "incredibly", "intensely", "majorly", "more", "most", "particularly",
    "purely", "quite", "really", "remarkably", "so", "substantially", "thoroughly",
    "totally", "tremendously", "uber", "unbelievably", "unusually", "utterly",
    "very", "almost", "barely", "hardly", "kinda", "kindof", "less", "little",
    "marginally", "occasionally", "partly", "scarcely", "slightly", "somewhat",
    "sorta", "sortof",
}

NEGATORS = {
    "aint", "arent", "cannot", "cant", "couldnt", "darent", "didnt", "doesnt",
    "ain't", "aren't", "can't", "couldn't", "daren't", "didn't", "doesn't",
    "dont", "hadnt", "hasnt", "havent", "isnt", "mightnt", "mustnt", "neither",
    "don't", "hadn't", "hasn't", "haven't", "isn't", "mightn't", "mustn't",
    "neednt", "needn't", "never", "no", "none", "nope", "nor", "not", "nothing",
    "nowhere", "oughtnt", "shant", "shouldnt", "uhuh", "wasnt", "werent",
    "oughtn't", "shan't", "shouldn't", "uh-uh", "wasn't", "weren't", "without",
    "wont", "wouldnt", "won't", "wouldn't", "rarely", "seldom", "despite",
}

VOWELS = "aeiou"


def ends_cvc(w):
    return (len(w) >= 3 and w[-1] not in VOWELS + "wxy" and w[-2] in VOWELS
            and w[-3] not in VOWELS)


def add_suffix(word, suffix):
    """Regular English orthography: e-drop, y->i, final consonant doubling."""
    if suffix.startswith(("e", "i")) and word.endswith("e") and not word.endswith("ee"):
        word = word[:-1]
    if suffix[0] not in VOWELS and word.endswith("y") and len(word) > 2 \
            and word[-2] not in VOWELS and suffix != "ly":
        word = word[:-1] + "i"
    if suffix in ("ed", "ing", "er", "est") and word.endswith("y") and word[-2] not in VOWELS:
        pass
    elif suffix in ("ed", "er", "est", "ing") and ends_cvc(word) and len(word) <= 5:
        word = word + word[-1]
    if suffix in ("ed", "er", "est") and word.endswith("y") and len(word) > 2 \
            and word[-2] not in VOWELS:
        word = word[:-1] + "i"
    return word + suffix


def plural(word):
    if word.endswith(("s", "x", "z", "ch", "sh")):
        return word + "es"
    if word.endswith("y") and word[-2] not in VOWELS:
        return word[:-1] + "ies"
    return word + "s"


def clamp(v):
    return max(-4.0, min(4.0, round(v, 1)))


def main(out_path):
    entries = {}

    def put(token, valence):
        token = token.lower()
        if " " in token or "\t" in token:
            return
        if token in BOOSTERS or token in NEGATORS:
            return
        if token not in entries:
            entries[token] = clamp(valence)

    for token, v in EMOTICONS:
        put(token, v)
    for token, v in SLANG:
        put(token, v)

    for root, tag, v in ROOTS:
        put(root, v)
        sign = 1.0 if v >= 0 else -1.0
        forms = []
        if tag == "v":
            forms = [
                (plural(root), v), (add_suffix(root, "ed"), v),
                (add_suffix(root, "ing"), v), (add_suffix(root, "er"), v * 0.9),
                (add_suffix(root, "ers"), v * 0.9), (add_suffix(root, "able"), v * 0.8),
                (add_suffix(root, "ingly"), v * 0.8),
            ]
        elif tag == "a":
            forms = [
                (add_suffix(root, "er"), v), (add_suffix(root, "est"), v * 1.1),
                (add_suffix(root, "ly"), v * 0.9), (add_suffix(root, "ness"), v * 0.9),
                (add_suffix(root, "ish"), v * 0.7),
            ]
            if not root.endswith(("ful", "less", "ing", "ed")):
                forms += [
                    (add_suffix(root, "fully"), v * 0.8),
                    (add_suffix(root, "fulness"), v * 0.8),
                ]
        elif tag == "n":
            forms = [(plural(root), v)]
        for form, fv in forms:
            put(form, fv)

        # privative / reversing forms
        if tag in ("a", "v") and not root.startswith(("un", "dis", "in")):
            for prefix, damp in (("un", 0.85), ("dis", 0.9)):
                neg_root = prefix + root
                put(neg_root, -v * damp)
                if tag == "a":
                    put(add_suffix(neg_root, "ly"), -v * damp * 0.9)
                    put(add_suffix(neg_root, "ness"), -v * damp * 0.9)
                    put(add_suffix(neg_root, "er"), -v * damp)
                    put(add_suffix(neg_root, "est"), -v * damp * 1.1)
                else:
                    put(plural(neg_root), -v * damp)
                    put(add_suffix(neg_root, "ed"), -v * damp)
                    put(add_suffix(neg_root, "ing"), -v * damp)
                    put(add_suffix(neg_root, "ingly"), -v * damp * 0.8)
        if tag == "a":
            put(root + "ful" if not root.endswith("ful") else root, sign * abs(v) * 0.9)
            base = root[:-3] if root.endswith("ful") else root
            put(add_suffix(base, "less"), -abs(v) * 0.9)
            put(add_suffix(base, "lessly"), -abs(v) * 0.8)
            put(add_suffix(base, "lessness"), -abs(v) * 0.8)
        if tag == "n":
            put(root + "ful", abs(v) * 0.8)
            put(add_suffix(root, "less"), -abs(v) * 0.8)
            put(add_suffix(root, "lessly"), -abs(v) * 0.7)
            if not root.startswith(("dis", "mis")):
                put("mis" + root, -abs(v) * 0.7)

    lines = [f"{tok}\t{val:.1f}" for tok, val in sorted(entries.items())]
    with open(out_path, "w") as f:
        f.write("\n".join(lines) + "\n")
    print(f"{len(lines)} lexicon entries -> {out_path}")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "fixtures/lexicon.tsv")
