#!/usr/bin/env python3
# Copyright 2026 The EMCO Authors.
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     https://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Generates data/minicorpus.jsonl, the small newswire-style test corpus.

Documents are short headlines built from "<head> <tail>" topic bigrams,
padded with stopwords, numbers and punctuation. A fraction of each document's phrases is
borrowed from other categories, so the vocabulary of a rare category also
shows up, in the same word order, inside the other classes.

Usage: make_minicorpus.py [--seed N] > data/minicorpus.jsonl
"""

import argparse
import json
import random

# Each category: (head words, tail words). Topic phrases are "head tail"
# bigrams; tails follow a Zipf law so a small training sample only sees the
# frequent ones.
TOPICS = {
    "grain": (["wheat", "corn", "grain", "crop"],
              ["harvest", "bushels", "farmers", "soybeans", "maize", "barley",
               "silos", "acreage", "sorghum", "elevators", "millers",
               "fertilizer", "drought", "yields", "planting"]),
    "coffee": (["coffee", "cocoa", "beans", "growers"],
               ["roasters", "arabica", "robusta", "plantations", "brazil",
                "colombia", "quotas", "espresso", "harvesters", "warehouses",
                "frost", "ico", "stockpiles", "grinders", "smuggling"]),
    "ship": (["ship", "vessels", "tanker", "port"],
             ["cargo", "freight", "shipping", "harbour", "crew", "dock",
              "seamen", "containers", "canal", "tonnage", "salvage",
              "insurers", "berths", "convoy", "pilots"]),
    "trade": (["trade", "exports", "imports", "tariffs"],
              ["deficit", "surplus", "sanctions", "protectionism",
               "negotiations", "customs", "dumping", "retaliation", "embargo",
               "partners", "quotas", "textiles", "semiconductors", "barriers",
               "legislation"]),
    "earn": (["earnings", "profit", "shares", "dividend"],
             ["quarter", "revenue", "net", "loss", "income", "payout",
              "stockholders", "splits", "results", "forecast", "cents",
              "writedown", "margins", "audit", "buyback"]),
}

# (category, train documents, test documents)
LAYOUT = [
    ("grain", 3, 3),
    ("coffee", 12, 6),
    ("ship", 18, 8),
    ("trade", 45, 18),
    ("earn", 72, 25),
]

STOPWORDS = ["the", "of", "and", "in", "to", "a", "for", "on", "by", "with"]

# Share of phrases drawn from the document's own category; the rest are
# borrowed from a uniformly chosen other category.
OWN_SHARE = 0.6


def zipf_choice(rng, words):
    weights = [1.0 / (rank + 1) for rank in range(len(words))]
    return rng.choices(words, weights=weights, k=1)[0]


def bigram(rng, category):
    heads, tails = TOPICS[category]
    return [rng.choice(heads), zipf_choice(rng, tails)]


def headline(rng, category):
    phrases = []
    others = [c for c in TOPICS if c != category]
    for _ in range(rng.randint(4, 6)):
        if rng.random() < OWN_SHARE:
            words = bigram(rng, category)
        else:
            words = bigram(rng, rng.choice(others))
        if rng.random() < 0.4:
            words.insert(0, rng.choice(STOPWORDS))
        phrases.append(" ".join(words))
    text = ", ".join(phrases)
    if rng.random() < 0.3:
        text = "U.S. " + text
    if rng.random() < 0.4:
        text += " %d pct" % rng.randint(1, 99)
    return text[0].upper() + text[1:] + "."


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--seed", type=int, default=1987)
    args = parser.parse_args()
    rng = random.Random(args.seed)
    rows = []
    for category, n_train, n_test in LAYOUT:
        for split, count in (("train", n_train), ("test", n_test)):
            for i in range(count):
                rows.append({
                    "id": "%s-%s-%03d" % (category, split, i),
                    "text": headline(rng, category),
                    "labels": [category],
                    "split": split,
                })
    rng.shuffle(rows)
    for row in rows:
        print(json.dumps(row))


if __name__ == "__main__":
    main()
