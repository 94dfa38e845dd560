import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ternlight.intent import (
    ActivateScene,
    Lexicon,
    ParseError,
    QueryState,
    SetBrightness,
    SetColorTemp,
    TurnOff,
    TurnOn,
    parse_command,
)


@pytest.fixture
def lex():
    return Lexicon.default()


@pytest.mark.parametrize(
    "text,expected",
    [
        ("Turn on kitchen lights", TurnOn("kitchen")),
        ("Dim to 40%", SetBrightness("all", 40)),
        ("dim to 37%", SetBrightness("all", 40)),
        ("turn off the living room lights", TurnOff("living room")),
        ("switch on the lounge", TurnOn("living room")),
        ("turn the office lights off", TurnOff("office")),
        ("turn on the lights", TurnOn("all")),
        ("brighten the bedroom to 80%", SetBrightness("bedroom", 80)),
        ("set the kitchen lights to 65", SetBrightness("kitchen", 70)),
        ("set the office to 4600k", SetColorTemp("office", 4600)),
        ("set bedroom color temperature to 5000", SetColorTemp("bedroom", 4600)),
        ("make the kitchen warmer", SetColorTemp("kitchen", 2700)),
        ("cooler", SetColorTemp("all", 6500)),
        ("activate evening scene", ActivateScene("evening")),
        ("activate movie", ActivateScene("movie")),
        ("status", QueryState(None)),
        ("status of the bedroom", QueryState("bedroom")),
        ("what is the status of the kitchen", QueryState("kitchen")),
        ("please turn on the kitchen lights now", TurnOn("kitchen")),
        ("set bedroom brightness to sixty percent", SetBrightness("bedroom", 60)),
        ("TURN ON THE KITCHEN LIGHTS!", TurnOn("kitchen")),
    ],
)
def test_parses(lex, text, expected):
    assert parse_command(text, lex) == expected


@pytest.mark.parametrize(
    "text,slot",
    [
        ("Turn on spaceship lights", "room"),
        ("do the thing", "verb"),
        ("dim to 150%", "percent"),
        ("dim the kitchen", "percent"),
        ("set the office to 12000k", "kelvin"),
        ("", "verb"),
        ("turn around", "verb"),
        ("activate", "scene"),
    ],
)
def test_structured_errors(lex, text, slot):
    with pytest.raises(ParseError) as exc:
        parse_command(text, lex)
    assert exc.value.slot == slot


def test_percent_rounds_to_grid(lex):
    assert parse_command("dim to 34%", lex).pct == 30
    assert parse_command("dim to 35%", lex).pct == 40
    assert parse_command("dim to 99%", lex).pct == 100


def test_kelvin_snaps_to_bins(lex):
    assert parse_command("set kitchen to 2800k", lex).kelvin == 2700
    assert parse_command("set kitchen to 3600k", lex).kelvin == 3650
    assert parse_command("set kitchen to 7000k", lex).kelvin == 6500


def test_lexicon_from_home_config():
    from ternlight.sim import HomeConfig

    cfg = HomeConfig.from_json("configs/home_family4.json")
    lex = Lexicon.from_home_config(cfg)
    assert parse_command("turn on the study", lex) == TurnOn("office")
    assert lex.scenes == ("evening", "focus", "movie")


@settings(max_examples=400, deadline=None)
@given(st.text(max_size=80))
def test_parser_total_over_arbitrary_text(text):
    # every input yields exactly one intent or one ParseError, never a crash
    lex = Lexicon.default()
    try:
        intent = parse_command(text, lex)
        assert intent is not None
    except ParseError as exc:
        assert exc.slot


@settings(max_examples=200, deadline=None)
@given(st.binary(max_size=60))
def test_parser_total_over_arbitrary_bytes(data):
    lex = Lexicon.default()
    text = data.decode("utf-8", errors="replace")
    try:
        parse_command(text, lex)
    except ParseError:
        pass
