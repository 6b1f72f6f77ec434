import string

from hypothesis import given, strategies as st

from restlinguist.inflection import (
    IRREGULAR_PLURALS,
    IRREGULAR_VERBS,
    UNCOUNTABLE_NOUNS,
    VERB_BASES,
    is_plural,
    lemmatize,
    singularize,
)

words = st.text(alphabet=string.ascii_lowercase, min_size=1, max_size=12)


class TestLemmatize:
    def test_regular_plurals(self):
        assert lemmatize("thermostats") == "thermostat"
        assert lemmatize("devices") == "device"
        assert lemmatize("players") == "player"
        assert lemmatize("structures") == "structure"
        assert lemmatize("queries") == "query"
        assert lemmatize("boxes") == "box"

    def test_irregular_nouns(self):
        assert lemmatize("children") == "child"
        assert lemmatize("people") == "person"
        assert lemmatize("indices") == "index"
        assert lemmatize("statuses") == "status"

    def test_already_base_form(self):
        assert lemmatize("device") == "device"
        assert lemmatize("locale") == "locale"

    def test_verb_forms_normalise_to_known_bases(self):
        assert lemmatize("creates") == "create"
        assert lemmatize("creating") == "create"
        assert lemmatize("created") == "create"
        assert lemmatize("deleted") == "delete"
        assert lemmatize("deleting") == "delete"
        assert lemmatize("updated") == "update"
        assert lemmatize("returns") == "return"
        assert lemmatize("listed") == "list"
        assert lemmatize("running") == "run"

    def test_gerund_nouns_survive(self):
        # no verb-base gate entry, so the surface form is kept
        assert lemmatize("heating") == "heating"
        assert lemmatize("conditioning") == "conditioning"
        assert lemmatize("training") == "training"
        assert lemmatize("string") == "string"
        assert lemmatize("everything") == "everything"

    def test_uncountables_stable(self):
        assert lemmatize("data") == "data"
        assert lemmatize("status") == "status"
        assert lemmatize("media") == "media"

    @given(words)
    def test_idempotent(self, word):
        once = lemmatize(word)
        assert lemmatize(once) == once

    def test_idempotent_over_all_table_entries(self):
        table_words = (
            set(IRREGULAR_PLURALS) | set(IRREGULAR_PLURALS.values())
            | set(IRREGULAR_VERBS) | set(IRREGULAR_VERBS.values())
            | set(VERB_BASES) | set(UNCOUNTABLE_NOUNS)
        )
        for word in table_words:
            once = lemmatize(word)
            assert lemmatize(once) == once, word


class TestIsPlural:
    def test_plural_nouns(self):
        assert is_plural("players")
        assert is_plural("children")
        assert is_plural("queries")

    def test_singular_nouns(self):
        assert not is_plural("player")
        assert not is_plural("child")
        assert not is_plural("alias")

    def test_uncountables_never_plural(self):
        assert not is_plural("status")
        assert not is_plural("data")
        assert not is_plural("media")
        assert not is_plural("info")

    @given(words)
    def test_plural_implies_lemma_differs(self, word):
        if is_plural(word):
            assert lemmatize(word) != word

    @given(words)
    def test_singularize_idempotent(self, word):
        once = singularize(word)
        assert singularize(once) == once
