#!/usr/bin/env python3
"""Generate the bundled 20-article sample corpus (tests/data/sample_news.jsonl).

Deterministic: a fixed seed drives every choice.  Articles cover the
fictional "riverton marathon" event with five recurring subtopics; each
article body is 2-3 contiguous theme runs so lexical-cohesion
segmentation has real valleys to find, and each theme carries signature
two-word phrases frequent enough to clear candidate-extraction thresholds.
"""

import json
import random
from pathlib import Path

TOPIC = "riverton marathon"

THEMES = {
    "route": {
        "phrase": ["race", "route"],
        "phrase2": ["bridge", "closure"],
        "nouns": ["route", "streets", "closure", "bridge", "avenue", "detour", "traffic", "marshals", "signage"],
        "verbs": ["announced", "published", "closes", "reroutes", "confirmed"],
    },
    "winners": {
        "phrase": ["finish", "line"],
        "phrase2": ["course", "record"],
        "nouns": ["finish", "line", "champion", "runner", "record", "sprint", "medal", "pace", "course"],
        "verbs": ["crossed", "won", "cheered", "clocked", "celebrated"],
    },
    "weather": {
        "phrase": ["weather", "forecast"],
        "phrase2": ["rain", "showers"],
        "nouns": ["weather", "forecast", "rain", "wind", "heat", "clouds", "temperature", "showers"],
        "verbs": ["predicted", "warned", "expected", "shifted", "cooled"],
    },
    "charity": {
        "phrase": ["charity", "fund"],
        "phrase2": ["donation", "drive"],
        "nouns": ["charity", "fund", "donation", "pledge", "hospital", "cause", "sponsor", "drive"],
        "verbs": ["raised", "donated", "pledged", "supported", "collected"],
    },
    "security": {
        "phrase": ["security", "plan"],
        "phrase2": ["bag", "check"],
        "nouns": ["security", "plan", "police", "barrier", "patrol", "checkpoint", "bag", "check"],
        "verbs": ["deployed", "screened", "guarded", "briefed", "prepared"],
    },
}

ADVERBS = ["officially", "quickly", "early", "safely"]
TIME_WORDS = ["yesterday", "today"]


def theme_sentence(rng: random.Random, theme: str, with_phrase: bool) -> list[list[str]]:
    """Token groups are shuffled, not tokens, so phrases stay contiguous."""
    spec = THEMES[theme]
    nouns = rng.sample(spec["nouns"], k=3)
    groups: list[list[list[str]]] = [
        [[nouns[0], "n"]],
        [[rng.choice(spec["verbs"]), "v"]],
        [[nouns[1], "n"]],
        [[rng.choice(spec["verbs"]), "v"]],
        [[nouns[2], "n"]],
    ]
    if with_phrase:
        phrase = spec["phrase"] if rng.random() < 0.7 else spec["phrase2"]
        groups.append([[w, "n"] for w in phrase])
    if rng.random() < 0.25:
        groups.append([[rng.choice(ADVERBS), "d"]])
    if rng.random() < 0.2:
        groups.append([[rng.choice(TIME_WORDS), "nt"]])
    if rng.random() < 0.3:
        groups.append([[rng.choice(spec["nouns"]), "n"]])
    rng.shuffle(groups)
    return [tok for group in groups for tok in group]


def make_article(rng: random.Random, idx: int) -> dict:
    theme_names = list(THEMES)
    k = rng.choice([2, 3, 3])
    start = idx % len(theme_names)
    picked = [theme_names[(start + j) % len(theme_names)] for j in range(k)]

    body_tokens = []
    for theme in picked:
        run_len = rng.choice([3, 3, 4])
        for j in range(run_len):
            body_tokens.append(theme_sentence(rng, theme, with_phrase=(j % 2 == 0)))

    lead = picked[0]
    title_tokens = [
        ["riverton", "n"],
        ["marathon", "n"],
        [THEMES[lead]["phrase"][0], "n"],
        [THEMES[lead]["phrase"][1], "n"],
        [rng.choice(THEMES[lead]["verbs"]), "v"],
    ]
    return {
        "id": f"a{idx:02d}",
        "title": " ".join(t for t, _ in title_tokens),
        "title_tokens": title_tokens,
        "body": [" ".join(t for t, _ in s) for s in body_tokens],
        "body_tokens": body_tokens,
        "published_at": 1700000000 + idx * 43200,
        "source": rng.choice(["riverton herald", "city wire", "daily ledger"]),
    }


def main() -> None:
    rng = random.Random(20240713)
    out = Path(__file__).resolve().parent.parent / "tests" / "data" / "sample_news.jsonl"
    out.parent.mkdir(parents=True, exist_ok=True)
    with out.open("w", encoding="utf-8") as fh:
        for i in range(1, 21):
            fh.write(json.dumps(make_article(rng, i), ensure_ascii=False) + "\n")
    print(f"wrote {out}")


if __name__ == "__main__":
    main()
