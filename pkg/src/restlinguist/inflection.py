"""Rule-based English lemmatisation and plural analysis.

A deterministic suffix-rule cascade backed by embedded exception tables.
Verb de-inflection (-ing / -ed) is gated on a curated verb lexicon so that
resource nouns such as "heating" or "training" survive untouched while
"creating" and "deleted" normalise to their base verbs. The same cascade is
applied to URI node words and documentation tokens, which keeps both sides
of every similarity or lexicon lookup in the same normal form.
"""

from __future__ import annotations

__all__ = ["lemmatize", "singularize", "is_plural", "UNCOUNTABLE_NOUNS"]

# Nouns with no singular/plural distinction; kept verbatim and never
# reported as plural.
UNCOUNTABLE_NOUNS = frozenset({
    "data", "metadata", "media", "status", "info", "information", "news",
    "series", "species", "equipment", "software", "hardware", "firmware",
    "middleware", "feedback", "access", "music", "weather", "traffic",
    "analytics", "physics", "mathematics", "electronics", "economics",
    "wireless", "https", "http", "sms", "gps", "anything", "everything",
    "nothing", "something",
})

# Singular words that end in a bare "s" and must not be stripped.
SINGULAR_S_WORDS = frozenset({
    "alias", "canvas", "atlas", "bias", "lens", "chaos", "cosmos",
    "pancreas", "always", "perhaps", "whereas", "besides", "iris",
})

# Irregular plural -> singular. Consulted both by the lemmatiser and by the
# plural test. Includes f-mutation plurals (wolf -> wolves) because the
# surface form "-ves" is ambiguous with regular "-ve" nouns such as "moves".
IRREGULAR_PLURALS = {
    "children": "child", "people": "person", "men": "man", "women": "woman",
    "feet": "foot", "teeth": "tooth", "geese": "goose", "mice": "mouse",
    "lice": "louse", "oxen": "ox", "dice": "die", "indices": "index",
    "matrices": "matrix", "vertices": "vertex", "appendices": "appendix",
    "criteria": "criterion", "phenomena": "phenomenon", "analyses": "analysis",
    "theses": "thesis", "crises": "crisis", "diagnoses": "diagnosis",
    "hypotheses": "hypothesis", "parentheses": "parenthesis", "axes": "axis",
    "statuses": "status", "buses": "bus", "viruses": "virus",
    "campuses": "campus", "bonuses": "bonus", "lenses": "lens",
    "aliases": "alias", "atlases": "atlas", "canvases": "canvas",
    "biases": "bias", "gases": "gas", "menus": "menu", "apis": "api",
    "uris": "uri", "urls": "url", "ids": "id", "leaves": "leaf",
    "lives": "life", "knives": "knife", "wives": "wife", "shelves": "shelf",
    "wolves": "wolf", "halves": "half", "calves": "calf", "loaves": "loaf",
    "thieves": "thief", "scarves": "scarf", "selves": "self",
    "elves": "elf", "hooves": "hoof", "wharves": "wharf",
    "quizzes": "quiz", "echoes": "echo", "heroes": "hero",
    "potatoes": "potato", "tomatoes": "tomato", "volcanoes": "volcano",
    "torpedoes": "torpedo", "shoes": "shoe", "caches": "cache",
    "cacti": "cactus", "fungi": "fungus", "nuclei": "nucleus",
    "radii": "radius", "alumni": "alumnus", "syllabi": "syllabus",
    "stimuli": "stimulus", "foci": "focus", "errata": "erratum",
    "curricula": "curriculum", "bacteria": "bacterium",
    "memoranda": "memorandum", "schemata": "schema", "automata": "automaton",
    "movies": "movie", "cookies": "cookie", "zombies": "zombie",
    "rookies": "rookie", "selfies": "selfie", "goalies": "goalie",
    "calories": "calorie", "prairies": "prairie", "geniuses": "genius",
    "censuses": "census", "corpuses": "corpus", "corpora": "corpus",
    "premises": "premise",
}

# Irregular or otherwise rule-breaking verb forms -> base form.
IRREGULAR_VERBS = {
    "made": "make", "making": "make", "went": "go", "gone": "go",
    "goes": "go", "going": "go", "does": "do", "did": "do", "done": "do",
    "doing": "do", "took": "take", "taken": "take", "taking": "take",
    "got": "get", "gotten": "get", "found": "find", "gave": "give",
    "given": "give", "giving": "give", "saw": "see", "seen": "see",
    "seeing": "see", "came": "come", "coming": "come", "ran": "run",
    "sent": "send", "built": "build", "brought": "bring", "bought": "buy",
    "thought": "think", "taught": "teach", "caught": "catch", "held": "hold",
    "kept": "keep", "left": "leave", "lost": "lose", "losing": "lose",
    "meant": "mean", "met": "meet", "paid": "pay", "said": "say",
    "sold": "sell", "shown": "show", "wrote": "write", "written": "write",
    "began": "begin", "begun": "begin", "broke": "break",
    "broken": "break", "chose": "choose", "chosen": "choose",
    "choosing": "choose", "drew": "draw", "drawn": "draw", "drove": "drive",
    "driven": "drive", "driving": "drive", "ate": "eat", "eaten": "eat",
    "fell": "fall", "fallen": "fall", "felt": "feel", "fought": "fight",
    "flew": "fly", "flown": "fly", "forgot": "forget", "froze": "freeze",
    "frozen": "freeze", "grew": "grow", "grown": "grow", "hung": "hang",
    "heard": "hear", "hid": "hide", "hidden": "hide", "hiding": "hide",
    "knew": "know", "known": "know", "led": "lead", "lent": "lend",
    "lit": "light", "rode": "ride", "rose": "rise", "risen": "rise",
    "sought": "seek", "shook": "shake", "shot": "shoot", "sat": "sit",
    "slept": "sleep", "spoke": "speak", "spoken": "speak", "spent": "spend",
    "stood": "stand", "stole": "steal", "stuck": "stick", "struck": "strike",
    "told": "tell", "threw": "throw", "thrown": "throw",
    "understood": "understand", "woke": "wake", "wore": "wear", "won": "win",
    "wound": "wind", "has": "have", "having": "have", "had": "have",
}

# Verbs eligible for -ing / -ed stripping. Stems produced by the suffix
# rules are accepted only when they land on one of these bases, so
# gerund-derived resource names ("heating", "training") are not mangled.
VERB_BASES = frozenset({
    "create", "make", "add", "insert", "build", "generate", "register",
    "post", "read", "get", "fetch", "retrieve", "show", "view", "list",
    "search", "find", "query", "update", "modify", "edit", "change", "set",
    "put", "patch", "delete", "remove", "destroy", "erase", "clear",
    "purge", "return", "send", "receive", "accept", "reject", "enable",
    "disable", "start", "stop", "run", "execute", "apply", "assign",
    "attach", "detach", "upload", "download", "import", "export", "copy",
    "move", "rename", "restore", "validate", "verify", "check", "test",
    "load", "save", "store", "sync", "publish", "subscribe", "unsubscribe",
    "notify", "trigger", "invoke", "call", "request", "respond", "process",
    "handle", "filter", "sort", "group", "merge", "split", "parse",
    "format", "encode", "decode", "encrypt", "decrypt", "sign", "authorize",
    "authenticate", "login", "logout", "connect", "disconnect", "stream",
    "monitor", "track", "log", "report", "schedule", "cancel", "pause",
    "resume", "retry", "follow", "share", "like", "comment", "tag", "rate",
    "vote", "order", "pay", "ship", "deliver", "provide", "describe",
    "specify", "contain", "include", "exclude", "replace", "submit",
    "refresh", "reset", "configure", "install", "deploy", "manage",
    "lock", "unlock", "grant", "revoke", "activate", "deactivate",
    "use", "write",
})

_VOWELS = set("aeiou")
_DOUBLE_UNDO = {"bb", "dd", "gg", "mm", "nn", "pp", "rr", "tt"}


def _has_vowel(word: str) -> bool:
    return any(c in _VOWELS for c in word)


def singularize(word: str) -> str:
    """Singular form of a lowercase noun; returns the word unchanged when no
    plural rule applies."""
    if word in UNCOUNTABLE_NOUNS or word in SINGULAR_S_WORDS:
        return word
    if word in IRREGULAR_PLURALS:
        return IRREGULAR_PLURALS[word]
    n = len(word)
    if word.endswith("ies"):
        if n > 4:
            return word[:-3] + "y"
        if n == 4:
            return word[:-1]
        return word
    if word.endswith("sses") or word.endswith("xes") or word.endswith("ches") or word.endswith("shes") or word.endswith("zzes"):
        return word[:-2]
    if word.endswith("oes") and n > 4:
        return word[:-2]
    if word.endswith("s") and not word.endswith("ss") and not word.endswith("us") and not word.endswith("is"):
        if n >= 4:
            return word[:-1]
    return word


def is_plural(word: str) -> bool:
    """True when a lowercase noun is in plural form. Uncountable nouns are
    never plural."""
    if word in UNCOUNTABLE_NOUNS:
        return False
    if word in IRREGULAR_PLURALS:
        return True
    return singularize(word) != word


def _deinflect_verb(word: str) -> str | None:
    """Base verb for an -ing / -ed surface form, or None when the stem does
    not land on a known verb base."""
    stems: list[str] = []
    if word.endswith("ing") and len(word) >= 5:
        stems.append(word[:-3])
    elif word.endswith("ed") and len(word) >= 4:
        stems.append(word[:-2])
        stems.append(word[:-1])
    for stem in stems:
        if not _has_vowel(stem):
            continue
        options = [stem]
        if stem[-2:] in _DOUBLE_UNDO:
            options.append(stem[:-1])
        options.append(stem + "e")
        if stem.endswith("i"):
            options.append(stem[:-1] + "y")
        for option in options:
            if option in VERB_BASES:
                return option
    return None


def lemmatize(word: str) -> str:
    """Base form of a lowercase word via the exception tables and suffix
    cascade. Idempotent: applying it twice never changes the result again."""
    if word in IRREGULAR_VERBS:
        return IRREGULAR_VERBS[word]
    if word in UNCOUNTABLE_NOUNS:
        return word
    if word in IRREGULAR_PLURALS:
        return IRREGULAR_PLURALS[word]
    singular = singularize(word)
    if singular != word:
        return singular
    base = _deinflect_verb(word)
    if base is not None:
        return base
    return word
