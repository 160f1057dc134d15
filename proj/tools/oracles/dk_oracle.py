#!/usr/bin/env python3
# Copyright 2026 The ScriptWriter Authors.
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
"""Brute-force dK window counts for a corpus directory.

Writes the frozen expectations consumed by the ontology tests:

    tools/oracles/dk_oracle.py data/lexicon tests/data/toy20 > tests/data/toy20_dk.json
"""

import itertools
import json
import pathlib
import re
import sys


def word_list(path, pairs=False):
    out = {}
    if not path.exists():
        return out
    for line in path.read_text().splitlines():
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        key, _, rest = line.partition(" ")
        out[key.lower()] = rest.strip() or key.lower()
    return out


def main(lexicon_dir, corpus_dir):
    lex = pathlib.Path(lexicon_dir)
    closed = set()
    for name in ["stopwords", "determiners", "prepositions", "pronouns", "be", "conjunctions"]:
        closed |= set(word_list(lex / f"{name}.txt"))
    lemmas = word_list(lex / "nouns.txt")
    lemmas.update(word_list(lex / "verbs.txt"))

    docs = []
    for f in sorted(pathlib.Path(corpus_dir).iterdir()):
        sentences = []
        for s in re.split(r"[.!?]", f.read_text()):
            words = [w for w in re.findall(r"[a-z0-9]+", s.lower()) if w not in closed]
            if words:
                sentences.append([lemmas.get(w, w) for w in words])
        docs.append(sentences)

    k1 = {}
    for doc in docs:
        for s in doc:
            for w in s:
                k1[w] = k1.get(w, 0) + 1

    def windows(width):
        for doc in docs:
            for start in range(max(1, len(doc) - width + 1)):
                yield set(itertools.chain.from_iterable(doc[start:start + width]))

    vocab = sorted(k1)
    w2, w3 = list(windows(2)), list(windows(3))
    k2 = {}
    for a, b in itertools.combinations(vocab, 2):
        c = sum(1 for w in w2 if a in w and b in w)
        if c:
            k2[(a, b)] = c
    k3 = {}
    for a, b, c in itertools.combinations(vocab, 3):
        if (a, b) in k2 and (a, c) in k2 and (b, c) in k2:
            n = sum(1 for w in w3 if a in w and b in w and c in w)
            if n:
                k3[(a, b, c)] = n

    json.dump({
        "k0": sum(k1.values()) / len(k1),
        "k1": k1,
        "k2": [[a, b, c] for (a, b), c in sorted(k2.items())],
        "k3": [[a, b, c, n] for (a, b, c), n in sorted(k3.items())],
    }, sys.stdout, indent=1, sort_keys=True)
    sys.stdout.write("\n")


if __name__ == "__main__":
    main(*sys.argv[1:3])
