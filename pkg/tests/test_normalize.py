import random
import string

from namecast.normalize import (DEFAULT_STOP_TOKENS, CleanName, clean_text,
                                cleaned_display_name, extract_first_name,
                                load_stop_tokens)


def test_prefix_punctuation_case():
    assert clean_text("Dr. John Smith") == ["john", "smith"]


def test_diacritics_stripped():
    assert clean_text("José") == ["jose"]


def test_degenerate_input_empty():
    assert clean_text("12345 !!!") == []
    assert clean_text("") == []
    assert extract_first_name("") is None


def test_mojibake_repair():
    assert clean_text("JosÃ© GarcÃ­a") == ["jose", "garcia"]


def test_glued_prefix_is_stripped():
    # stop matching happens on punctuation-delimited tokens
    assert clean_text("Mrs.Jane") == ["jane"]


def test_preceding_last_rule():
    got = extract_first_name("Lil John Doe")
    assert got == CleanName("john", "Lil John Doe", 2)
    # without the stop list the middle token still wins
    assert extract_first_name("Lil John Doe", frozenset()).token == "john"


def test_unigram_retained():
    assert extract_first_name("Anna").token == "anna"


def test_two_token_name_takes_first():
    assert extract_first_name("John Doe").token == "john"


def test_initial_behaves_like_bigram():
    assert extract_first_name("J. Doe").token == "j"


def test_underscores_and_digits_removed():
    assert clean_text("sarah_jane99") == ["sarah", "jane"]


def test_stop_tokens_case_insensitive():
    assert clean_text("MRS Jane DR smith") == ["jane", "smith"]


def test_cleaned_display_name_joins():
    assert cleaned_display_name("Dr. John Smith") == "john smith"
    assert cleaned_display_name("12345") == ""


def test_non_latin_scripts_drop_to_empty():
    assert clean_text("Иван Петров") == []
    assert clean_text("日本語の名前") == []


def test_stop_list_file(tmp_path):
    path = tmp_path / "stops.txt"
    path.write_text("# honorifics\nmr\nlady  # inline comment\n\nthe\n")
    tokens = load_stop_tokens(path)
    assert tokens == frozenset({"mr", "lady", "the"})
    assert clean_text("Lady Jane", tokens) == ["jane"]


def _fuzz_names(count, seed):
    rng = random.Random(seed)
    alphabet = (string.ascii_letters + string.digits + " .-_!@#$%^&*()'"
                + "éàüñçøß" + "́Ã©" + "🙂💥" + "数字")
    for _ in range(count):
        yield "".join(rng.choice(alphabet) for _ in range(rng.randint(0, 24)))


def test_fuzz_charset_closure_and_idempotence():
    for raw in _fuzz_names(2000, seed=1):
        tokens = clean_text(raw)
        for token in tokens:
            assert token and all("a" <= ch <= "z" for ch in token)
        first = extract_first_name(raw)
        if first is not None:
            again = extract_first_name(first.token)
            assert again is not None and again.token == first.token
        # determinism
        assert clean_text(raw) == tokens
