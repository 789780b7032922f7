from __future__ import annotations

import random

import pytest

from tgfa.corpus import ParallelPair

# Letters that sit in both default mapping tables, so synthetic corpora
# built from them never hit inventory gaps.
TAJIK_SAMPLE = "абвгдежзийклмнопрстуфхчшъэюяёғӣқӯҳҷ"
FARSI_SAMPLE = "ابپتثجچحخدذرزژسشصضطظعغفقکگلمنوهیء"


def random_words(rng: random.Random, alphabet: str, n_words: int, max_len: int = 8) -> str:
    words = [
        "".join(rng.choice(alphabet) for _ in range(rng.randint(1, max_len)))
        for _ in range(n_words)
    ]
    return " ".join(words)


def toy_corpus(n: int = 60, seed: int = 7, dataset: str = "Dictionary") -> list[ParallelPair]:
    rng = random.Random(seed)
    return [
        ParallelPair(
            fa=random_words(rng, FARSI_SAMPLE, rng.randint(1, 3)),
            tg=random_words(rng, TAJIK_SAMPLE, rng.randint(1, 3)),
            dataset=dataset,
        )
        for _ in range(n)
    ]


@pytest.fixture
def corpus_file(tmp_path):
    """Write a small mixed-domain JSONL corpus and return its path."""
    import json

    rng = random.Random(11)
    rows = []
    for dataset in ("Masnavi", "Dr Blog", "Places", "Dictionary"):
        for _ in range(6):
            rows.append(
                {
                    "fa": random_words(rng, FARSI_SAMPLE, rng.randint(1, 3)),
                    "tg": random_words(rng, TAJIK_SAMPLE, rng.randint(1, 3)),
                    "dataset": dataset,
                }
            )
    path = tmp_path / "corpus.jsonl"
    path.write_text(
        "".join(json.dumps(r, ensure_ascii=False) + "\n" for r in rows),
        encoding="utf-8",
    )
    return path
