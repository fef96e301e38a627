#!/usr/bin/env python3
# Copyright 2026 The Polyvocab Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Regenerates the bundled toy corpora (three scripts, skewed sizes)."""

import pathlib
import random

SCRIPTS = {
    "lat": ("ptkbdgmnslrvf", "aeiou", 1200),
    "cyr": ("пткбдгмнслрвж", "аеиоуы", 500),
    "grc": ("πτκβδγμνσλρφ", "αεηιου", 150),
}


def lexicon(rng, consonants, vowels, n):
    words = set()
    while len(words) < n:
        syllables = rng.randint(1, 4)
        words.add("".join(rng.choice(consonants) + rng.choice(vowels) for _ in range(syllables)))
    return sorted(words)


def main():
    out = pathlib.Path(__file__).parent
    for code, (consonants, vowels, lines) in SCRIPTS.items():
        rng = random.Random(code)
        words = lexicon(rng, consonants, vowels, 400)
        weights = [1.0 / (r + 1) ** 1.1 for r in range(len(words))]
        with open(out / f"{code}.txt", "w", encoding="utf-8") as f:
            for _ in range(lines):
                n = rng.randint(3, 10)
                f.write(" ".join(rng.choices(words, weights, k=n)) + "\n")


if __name__ == "__main__":
    main()
